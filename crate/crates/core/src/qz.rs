//! Integer witness functions and the Q_Z quotient checks.
//!
//! A universe has the integer quotient when a surjective f: U -> Z exists
//! that is additive over sums and determines outcomes by sign (N at 0, L
//! negative, R positive). The witness value of a game is recovered by
//! padding: an R-position needs f copies of {.|0} to reach outcome N, an
//! L-position -f copies of {0|.}. All checks here are bounded and report
//! concrete counterexamples on failure.

use std::collections::{HashMap, HashSet};
use std::sync::LazyLock;

use dashmap::DashMap;
use serde::Serialize;
use thiserror::Error;

use crate::game::{constants, sum, Game};
use crate::notation::render;
use crate::outcome::{misere_outcome, Outcome};
use crate::universe::{Multiset, Universe, UniverseError};

/// Which requirement a refutation violates. The structural tags mirror
/// the option conditions: a) a positive game has a Left option one step
/// down and none further down; b) a non-negative game's Right options stay
/// at most one step up, with one landing in [1, n+1] when Right can move;
/// c) and d) are their conjugates.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QzCondition {
    #[serde(rename = "P-outcome")]
    POutcome,
    #[serde(rename = "padding-exhausted")]
    PaddingExhausted,
    #[serde(rename = "additivity")]
    Additivity,
    #[serde(rename = "surjectivity")]
    Surjectivity,
    #[serde(rename = "a")]
    CondA,
    #[serde(rename = "b")]
    CondB,
    #[serde(rename = "c")]
    CondC,
    #[serde(rename = "d")]
    CondD,
}

#[derive(Clone, Debug, Error, Serialize)]
#[error("condition {condition:?} refuted at {game}: {detail}")]
pub struct QzRefutation {
    pub condition: QzCondition,
    pub game: Game,
    pub detail: String,
}

impl QzRefutation {
    fn new(condition: QzCondition, game: Game, detail: impl Into<String>) -> QzRefutation {
        QzRefutation {
            condition,
            game,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum QzVerdict {
    QzUpToBound(u32),
    Refuted(QzRefutation),
}

impl QzVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, QzVerdict::QzUpToBound(_))
    }
}

static WITNESS_MEMO: LazyLock<DashMap<Game, i64>> = LazyLock::new(DashMap::new);

/// The witness value of a game, recovered by padding. The procedure only
/// inspects outcomes of the game plus end pads, so the value is the same
/// in every universe containing the game; the search is capped at `cap`
/// pads and fails honestly beyond.
pub fn witness_value(game: Game, cap: u32) -> Result<i64, QzRefutation> {
    if let Some(v) = WITNESS_MEMO.get(&game) {
        return Ok(*v);
    }
    let value = match misere_outcome(game) {
        Outcome::N => 0,
        Outcome::P => {
            return Err(QzRefutation::new(
                QzCondition::POutcome,
                game,
                "misère outcome is P, which no witness sign matches",
            ))
        }
        Outcome::R => pad_until_n(game, constants::one_bar(), cap)?,
        Outcome::L => -pad_until_n(game, constants::one(), cap)?,
    };
    WITNESS_MEMO.insert(game, value);
    Ok(value)
}

fn pad_until_n(game: Game, pad: Game, cap: u32) -> Result<i64, QzRefutation> {
    let mut acc = game;
    for k in 1..=cap {
        acc = sum(acc, pad);
        if misere_outcome(acc) == Outcome::N {
            return Ok(i64::from(k));
        }
    }
    Err(QzRefutation::new(
        QzCondition::PaddingExhausted,
        game,
        format!("no pad count up to {cap} reaches outcome N"),
    ))
}

/// Independent derivation of the witness value through a mixed padding:
/// the least k with o(G + offset·{0|.} + k·{.|0}) = N, minus the offset.
/// Agrees with [`witness_value`] on every game of a Q_Z universe.
pub fn witness_value_offset(game: Game, offset: u32, cap: u32) -> Result<i64, QzRefutation> {
    let mut acc = game;
    for _ in 0..offset {
        acc = sum(acc, constants::one());
    }
    for k in 0..=cap {
        if misere_outcome(acc) == Outcome::N {
            return Ok(i64::from(k) - i64::from(offset));
        }
        acc = sum(acc, constants::one_bar());
    }
    Err(QzRefutation::new(
        QzCondition::PaddingExhausted,
        game,
        format!("offset derivation found no outcome N within {cap} pads"),
    ))
}

/// Pad-search cap for elements of the universe up to `bound`: witness
/// values are bounded by descriptor size times the largest basis
/// birthday, with one pad of slack.
pub fn default_cap(universe: &Universe, bound: u32) -> u32 {
    let max_birthday = universe
        .basis()
        .iter()
        .map(|g| g.birthday())
        .max()
        .unwrap_or(0);
    bound * max_birthday + 1
}

fn distinct_elements(universe: &Universe, bound: u32) -> Vec<crate::universe::Element> {
    let mut seen = HashSet::new();
    universe
        .enumerate(bound)
        .into_iter()
        .filter(|e| seen.insert(e.game))
        .collect()
}

/// Checks the witness axioms on the enumeration up to `bound`: every
/// element has a value (no P-position in the way), values are additive on
/// all enumerated pairs, and they cover [-bound, bound].
pub fn verify_witness_axioms(universe: &Universe, bound: u32) -> QzVerdict {
    let cap = default_cap(universe, bound);
    let elements = distinct_elements(universe, bound);
    let mut values = HashMap::new();
    for e in &elements {
        match witness_value(e.game, cap) {
            Ok(v) => {
                values.insert(e.game, v);
            }
            Err(r) => return QzVerdict::Refuted(r),
        }
    }
    for (i, ei) in elements.iter().enumerate() {
        for ej in &elements[i..] {
            let total = sum(ei.game, ej.game);
            let f_total = match witness_value(total, cap * 2) {
                Ok(v) => v,
                Err(r) => return QzVerdict::Refuted(r),
            };
            let f_parts = values[&ei.game] + values[&ej.game];
            if f_total != f_parts {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::Additivity,
                    total,
                    format!(
                        "f({}) + f({}) = {} but f of the sum is {}",
                        render(ei.game),
                        render(ej.game),
                        f_parts,
                        f_total
                    ),
                ));
            }
        }
    }
    let reached: HashSet<i64> = values.values().copied().collect();
    for v in -i64::from(bound)..=i64::from(bound) {
        if !reached.contains(&v) {
            return QzVerdict::Refuted(QzRefutation::new(
                QzCondition::Surjectivity,
                constants::zero(),
                format!("no enumerated element has witness value {v}"),
            ));
        }
    }
    QzVerdict::QzUpToBound(bound)
}

/// Checks the option-structure conditions a) through d) on every
/// enumerated element, reporting the first violation with its tag.
pub fn verify_structural_conditions(universe: &Universe, bound: u32) -> QzVerdict {
    let cap = default_cap(universe, bound);
    for e in distinct_elements(universe, bound) {
        let game = e.game;
        let n = match witness_value(game, cap) {
            Ok(v) => v,
            Err(r) => return QzVerdict::Refuted(r),
        };
        let f_of = |options: &[Game]| -> Result<Vec<(Game, i64)>, QzRefutation> {
            options
                .iter()
                .map(|&o| witness_value(o, cap).map(|v| (o, v)))
                .collect()
        };
        let left = match f_of(game.left_options()) {
            Ok(v) => v,
            Err(r) => return QzVerdict::Refuted(r),
        };
        let right = match f_of(game.right_options()) {
            Ok(v) => v,
            Err(r) => return QzVerdict::Refuted(r),
        };
        if n > 0 {
            if !left.iter().any(|&(_, f)| f == n - 1) {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::CondA,
                    game,
                    format!("f = {n} but no Left option has value {}", n - 1),
                ));
            }
            if let Some((o, f)) = left.iter().find(|&&(_, f)| f < n - 1) {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::CondA,
                    game,
                    format!("Left option {} has value {f} < {}", render(*o), n - 1),
                ));
            }
        }
        if n >= 0 {
            if let Some((o, f)) = right.iter().find(|&&(_, f)| f > n + 1) {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::CondB,
                    game,
                    format!("Right option {} has value {f} > {}", render(*o), n + 1),
                ));
            }
            if !right.is_empty() && !right.iter().any(|&(_, f)| (1..=n + 1).contains(&f)) {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::CondB,
                    game,
                    format!("f = {n} but no Right option has value in [1, {}]", n + 1),
                ));
            }
        }
        if n < 0 {
            if !right.iter().any(|&(_, f)| f == n + 1) {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::CondC,
                    game,
                    format!("f = {n} but no Right option has value {}", n + 1),
                ));
            }
            if let Some((o, f)) = right.iter().find(|&&(_, f)| f > n + 1) {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::CondC,
                    game,
                    format!("Right option {} has value {f} > {}", render(*o), n + 1),
                ));
            }
        }
        if n <= 0 {
            if let Some((o, f)) = left.iter().find(|&&(_, f)| f < n - 1) {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::CondD,
                    game,
                    format!("Left option {} has value {f} < {}", render(*o), n - 1),
                ));
            }
            if !left.is_empty() && !left.iter().any(|&(_, f)| (n - 1..=-1).contains(&f)) {
                return QzVerdict::Refuted(QzRefutation::new(
                    QzCondition::CondD,
                    game,
                    format!("f = {n} but no Left option has value in [{}, -1]", n - 1),
                ));
            }
        }
    }
    QzVerdict::QzUpToBound(bound)
}

/// Bounded Q_Z detection: no P-position up to the bound, witness axioms
/// hold, and the structural conditions hold.
pub fn is_qz(universe: &Universe, bound: u32) -> QzVerdict {
    if let Some(e) = universe.find_p_position(bound) {
        return QzVerdict::Refuted(QzRefutation::new(
            QzCondition::POutcome,
            e.game,
            format!("{} is a P-position", universe.describe(&e.multiset)),
        ));
    }
    match verify_witness_axioms(universe, bound) {
        QzVerdict::QzUpToBound(_) => {}
        refuted => return refuted,
    }
    match verify_structural_conditions(universe, bound) {
        QzVerdict::QzUpToBound(_) => {}
        refuted => return refuted,
    }
    QzVerdict::QzUpToBound(bound)
}

#[derive(Debug, Error)]
pub enum QzError {
    #[error(transparent)]
    Refuted(#[from] QzRefutation),
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

/// A witness function tied to a universe: evaluates games by padding and
/// descriptors by decomposition when the universe is a sum.
#[derive(Clone)]
pub struct WitnessFunction {
    universe: Universe,
    cap: u32,
    parts: Vec<WitnessFunction>,
}

impl WitnessFunction {
    pub fn for_universe(universe: &Universe, bound: u32) -> WitnessFunction {
        WitnessFunction {
            universe: universe.clone(),
            cap: default_cap(universe, bound).max(1),
            parts: Vec::new(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn eval_game(&self, game: Game) -> Result<i64, QzRefutation> {
        witness_value(game, self.cap)
    }

    /// Value of a descriptor. For sum witnesses this decomposes the
    /// multiset and adds the component values.
    pub fn eval(&self, multiset: &Multiset) -> Result<i64, QzError> {
        if self.parts.is_empty() {
            let game = self.universe.realize(multiset)?;
            return Ok(self.eval_game(game)?);
        }
        let split = self.universe.decompose(multiset)?;
        let mut total = 0;
        for (part, m) in self.parts.iter().zip(&split) {
            total += part.eval(m)?;
        }
        Ok(total)
    }
}

/// The witness of the sum universe: f(G1 + G2) = f1(G1) + f2(G2).
pub fn sum_witness(f1: &WitnessFunction, f2: &WitnessFunction) -> WitnessFunction {
    let universe = Universe::sum_of(vec![f1.universe.clone(), f2.universe.clone()]);
    WitnessFunction {
        universe,
        cap: f1.cap.max(f2.cap) * 2,
        parts: vec![f1.clone(), f2.clone()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::constants::*;
    use crate::game::n_copies;
    use crate::universe::{NamedUniverse, UniverseSpec};

    fn mz() -> Universe {
        UniverseSpec::Named(NamedUniverse::Mz).resolve()
    }

    fn cl_a() -> Universe {
        UniverseSpec::Named(NamedUniverse::ClA).resolve()
    }

    #[test]
    fn witness_values_of_constants() {
        assert_eq!(witness_value(zero(), 4).unwrap(), 0);
        assert_eq!(witness_value(one(), 4).unwrap(), 1);
        assert_eq!(witness_value(one_bar(), 4).unwrap(), -1);
        assert_eq!(witness_value(two(), 4).unwrap(), 2);
        assert_eq!(witness_value(n_copies(one(), 3), 4).unwrap(), 3);
    }

    #[test]
    fn witness_value_rejects_p_positions() {
        let err = witness_value(star(), 4).unwrap_err();
        assert_eq!(err.condition, QzCondition::POutcome);
    }

    #[test]
    fn offset_derivation_agrees() {
        for e in mz().enumerate(6) {
            let direct = witness_value(e.game, 8).unwrap();
            let offset = witness_value_offset(e.game, 7, 20).unwrap();
            assert_eq!(direct, offset, "at {}", e.game);
        }
    }

    #[test]
    fn conjugate_antisymmetry_on_mz() {
        for e in mz().enumerate(6) {
            let f = witness_value(e.game, 8).unwrap();
            let f_conj = witness_value(e.game.conjugate(), 8).unwrap();
            assert_eq!(f_conj, -f);
        }
    }

    #[test]
    fn axioms_hold_for_mz() {
        assert!(verify_witness_axioms(&mz(), 6).passes());
    }

    #[test]
    fn axioms_refuted_for_cl_a() {
        match verify_witness_axioms(&cl_a(), 6) {
            QzVerdict::Refuted(r) => {
                assert_eq!(r.condition, QzCondition::Additivity);
            }
            v => panic!("expected refutation, got {v:?}"),
        }
    }

    #[test]
    fn axioms_refuted_for_star_closure_by_p_outcome() {
        let star_u = Universe::generated(&[star()]);
        match verify_witness_axioms(&star_u, 2) {
            QzVerdict::Refuted(r) => {
                assert_eq!(r.condition, QzCondition::POutcome);
                assert_eq!(r.game, star());
            }
            v => panic!("expected refutation, got {v:?}"),
        }
    }

    #[test]
    fn surjectivity_fails_for_the_zero_universe() {
        let zero_u = Universe::generated(&[zero()]);
        assert!(verify_structural_conditions(&zero_u, 1).passes());
        match verify_witness_axioms(&zero_u, 1) {
            QzVerdict::Refuted(r) => assert_eq!(r.condition, QzCondition::Surjectivity),
            v => panic!("expected refutation, got {v:?}"),
        }
    }

    #[test]
    fn structural_conditions_hold_for_mz() {
        assert!(verify_structural_conditions(&mz(), 6).passes());
    }

    #[test]
    fn structural_conditions_refuted_for_cl_a() {
        match verify_structural_conditions(&cl_a(), 6) {
            QzVerdict::Refuted(r) => {
                assert!(matches!(
                    r.condition,
                    QzCondition::CondA
                        | QzCondition::CondB
                        | QzCondition::CondC
                        | QzCondition::CondD
                ));
            }
            v => panic!("expected refutation, got {v:?}"),
        }
        // A concrete violation at a: f(a) = 0 while its lone Right option
        // 2 has value 2 > 1, breaking condition b there.
        assert_eq!(witness_value(a(), 8).unwrap(), 0);
        assert_eq!(a().right_options(), &[two()]);
        assert_eq!(witness_value(two(), 8).unwrap(), 2);
    }

    #[test]
    fn lemma_style_left_option_bound_on_mz() {
        // On a Q_Z universe every Left option loses at most one step:
        // f(G^L) >= f(G) - 1.
        for e in mz().enumerate(5) {
            let f = witness_value(e.game, 8).unwrap();
            for &gl in e.game.left_options() {
                assert!(witness_value(gl, 8).unwrap() >= f - 1);
            }
        }
    }

    #[test]
    fn is_qz_verdicts() {
        assert!(is_qz(&mz(), 6).passes());
        assert!(!is_qz(&cl_a(), 6).passes());
        assert!(is_qz(&Universe::generated(&[two()]), 6).passes());
        match is_qz(&Universe::generated(&[star()]), 2) {
            QzVerdict::Refuted(r) => assert_eq!(r.condition, QzCondition::POutcome),
            v => panic!("expected refutation, got {v:?}"),
        }
    }

    #[test]
    fn sum_witness_is_additive_over_parts() {
        let u1 = mz();
        let u2 = Universe::generated(&[two()]);
        let f1 = WitnessFunction::for_universe(&u1, 6);
        let f2 = WitnessFunction::for_universe(&u2, 6);
        let f = sum_witness(&f1, &f2);

        assert_eq!(f.eval_game(sum(one(), one())).unwrap(), 2);
        let g = sum(one(), one_bar());
        assert_eq!(f.eval_game(g).unwrap(), 0);
        assert_eq!(misere_outcome(g), Outcome::N);
        let h = sum(one_bar(), two());
        assert_eq!(f.eval_game(h).unwrap(), 1);
        assert_eq!(misere_outcome(h), Outcome::R);

        // Descriptor evaluation decomposes and agrees with direct padding.
        for e in f.universe().enumerate(4) {
            assert_eq!(
                f.eval(&e.multiset).unwrap(),
                f.eval_game(e.game).unwrap(),
                "decomposed value differs at {}",
                f.universe().describe(&e.multiset)
            );
        }
    }
}
