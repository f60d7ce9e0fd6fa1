//! Comparison and equivalence modulo a universe, as bounded semi-decision
//! procedures: every verdict carries the bound it was tested at, and every
//! negative verdict carries a distinguishing element that can be re-checked
//! with two outcome computations.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::game::{constants, sum, Game};
use crate::outcome::{misere_outcome, Outcome};
use crate::universe::{Element, Universe};

#[derive(Debug, Error)]
pub enum CompareError {
    #[error("set is not option-closed: {game} has option {option} outside the set")]
    NotOptionClosed { game: Game, option: Game },
}

/// Which inequality a distinguishing element breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailedDirection {
    /// o(lhs + X) is not >= o(rhs + X).
    Forward,
    /// o(rhs + X) is not >= o(lhs + X); only reported by equivalence checks.
    Reverse,
}

#[derive(Debug, Clone, Serialize)]
pub struct Distinguisher {
    pub witness: Game,
    pub witness_text: String,
    pub lhs_outcome: Outcome,
    pub rhs_outcome: Outcome,
    pub direction: FailedDirection,
}

#[derive(Debug, Clone, Serialize)]
pub enum CompareVerdict {
    HoldsUpToBound(u32),
    DistinguishedBy(Distinguisher),
}

impl CompareVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CompareVerdict::HoldsUpToBound(_))
    }
}

fn distinguisher(
    u: &Universe,
    x: &Element,
    lhs_outcome: Outcome,
    rhs_outcome: Outcome,
    direction: FailedDirection,
) -> CompareVerdict {
    CompareVerdict::DistinguishedBy(Distinguisher {
        witness: x.game,
        witness_text: u.describe(&x.multiset),
        lhs_outcome,
        rhs_outcome,
        direction,
    })
}

/// Tests o(g + X) >= o(h + X) for every enumerated X up to the bound,
/// reporting the first (smallest) distinguishing X.
pub fn ge_mod(g: Game, h: Game, universe: &Universe, bound: u32) -> CompareVerdict {
    for x in universe.enumerate(bound) {
        let og = misere_outcome(sum(g, x.game));
        let oh = misere_outcome(sum(h, x.game));
        if !og.ge(oh) {
            return distinguisher(universe, &x, og, oh, FailedDirection::Forward);
        }
    }
    CompareVerdict::HoldsUpToBound(bound)
}

/// Both directions of [`ge_mod`] in one scan, so the reported witness is
/// the smallest element distinguishing the games in either direction.
pub fn equiv_mod(g: Game, h: Game, universe: &Universe, bound: u32) -> CompareVerdict {
    for x in universe.enumerate(bound) {
        let og = misere_outcome(sum(g, x.game));
        let oh = misere_outcome(sum(h, x.game));
        if !og.ge(oh) {
            return distinguisher(universe, &x, og, oh, FailedDirection::Forward);
        }
        if !oh.ge(og) {
            return distinguisher(universe, &x, og, oh, FailedDirection::Reverse);
        }
    }
    CompareVerdict::HoldsUpToBound(bound)
}

/// Is g + ḡ equivalent to zero modulo the universe, up to the bound?
pub fn is_invertible(g: Game, universe: &Universe, bound: u32) -> CompareVerdict {
    equiv_mod(sum(g, g.conjugate()), constants::zero(), universe, bound)
}

#[derive(Debug, Clone, Serialize)]
pub struct InverseCriterionViolation {
    pub game: Game,
    pub left_end: Game,
    pub left_end_text: String,
    pub outcome: Outcome,
}

/// Result of checking that o(G + Ḡ + X) is L or N for every G in the set
/// and every enumerated Left end X: the hypothesis under which every game
/// of the set is invertible with its conjugate as inverse.
#[derive(Debug, Clone, Serialize)]
pub struct InverseCriterionReport {
    pub bound: u32,
    pub games_checked: usize,
    pub left_ends_checked: usize,
    pub violations: Vec<InverseCriterionViolation>,
}

impl InverseCriterionReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the invertibility criterion for an option-closed set of games.
pub fn inverse_criterion_check(
    games: &[Game],
    universe: &Universe,
    bound: u32,
) -> Result<InverseCriterionReport, CompareError> {
    let set: HashSet<Game> = games.iter().copied().collect();
    for &g in games {
        for opt in g.left_options().iter().chain(g.right_options()) {
            if !set.contains(opt) {
                return Err(CompareError::NotOptionClosed {
                    game: g,
                    option: *opt,
                });
            }
        }
    }
    let left_ends = universe.left_ends(bound);
    let mut violations = Vec::new();
    for &g in games {
        let pair = sum(g, g.conjugate());
        for x in &left_ends {
            let outcome = misere_outcome(sum(pair, x.game));
            if !matches!(outcome, Outcome::L | Outcome::N) {
                violations.push(InverseCriterionViolation {
                    game: g,
                    left_end: x.game,
                    left_end_text: universe.describe(&x.multiset),
                    outcome,
                });
            }
        }
    }
    Ok(InverseCriterionReport {
        bound,
        games_checked: games.len(),
        left_ends_checked: left_ends.len(),
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CancellationWitness {
    pub h: Game,
    pub h_text: String,
    pub k: Game,
    pub k_text: String,
    pub x: Game,
    pub x_text: String,
    pub hx_outcome: Outcome,
    pub kx_outcome: Outcome,
}

/// Searches enumerated H, K, X with g+H equivalent to g+K up to the bound
/// while o(H+X) != o(K+X). Some such triple exists exactly when g fails to
/// be cancellative at this bound. Returns the first triple in enumeration
/// order (H before K, then smallest X).
pub fn cancellative_check(
    g: Game,
    universe: &Universe,
    bound: u32,
) -> Option<CancellationWitness> {
    let elements = universe.enumerate(bound);
    // Fingerprints over the same element list, with and without g added.
    let plain: Vec<Vec<Outcome>> = elements
        .iter()
        .map(|e| {
            elements
                .iter()
                .map(|x| misere_outcome(sum(e.game, x.game)))
                .collect()
        })
        .collect();
    let shifted: Vec<Vec<Outcome>> = elements
        .iter()
        .map(|e| {
            let ge = sum(g, e.game);
            elements
                .iter()
                .map(|x| misere_outcome(sum(ge, x.game)))
                .collect()
        })
        .collect();
    let mut groups: HashMap<&[Outcome], Vec<usize>> = HashMap::new();
    for (i, row) in shifted.iter().enumerate() {
        groups.entry(row.as_slice()).or_default().push(i);
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for indices in groups.values() {
        for (pos, &i) in indices.iter().enumerate() {
            for &j in &indices[pos + 1..] {
                if let Some(x) = plain[i].iter().zip(&plain[j]).position(|(a, b)| a != b) {
                    let candidate = (i, j, x);
                    if best.is_none() || candidate < best.unwrap() {
                        best = Some(candidate);
                    }
                }
            }
        }
    }
    best.map(|(i, j, x)| CancellationWitness {
        h: elements[i].game,
        h_text: universe.describe(&elements[i].multiset),
        k: elements[j].game,
        k_text: universe.describe(&elements[j].multiset),
        x: elements[x].game,
        x_text: universe.describe(&elements[x].multiset),
        hx_outcome: plain[i][x],
        kx_outcome: plain[j][x],
    })
}
