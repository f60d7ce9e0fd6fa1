//! Universes: sets of games closed under disjunctive sum, conjugation and
//! taking options, enumerated up to a bound.
//!
//! A universe is realized as the set of multisets over a finite basis (the
//! conjugate-closed follower set of its generators, zero excluded); the
//! empty multiset is the zero game. Distinct multisets may realize equal
//! interned games (1+1 and the follower 2, for instance); enumeration keeps
//! descriptors for reporting and callers deduplicate by interned id where
//! outcomes are involved.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;
use thiserror::Error;

use crate::game::{constants, n_copies, sum, Game};
use crate::notation::{self, render_key};
use crate::outcome::{misere_outcome, Outcome};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UniverseError {
    #[error("bad universe spec: {0}")]
    BadSpec(String),
    #[error("descriptor has {got} counts but the basis has {expected} games")]
    DescriptorLength { got: usize, expected: usize },
}

/// The structured universe families named throughout the crate.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NamedUniverse {
    /// {k1·1 + k2·~1}: sums of copies of 1 and its conjugate.
    Mz,
    /// Closure of a = {.|2} and its conjugate.
    ClA,
    /// Closure of 2#0.
    Cl2Sharp0,
    /// Closure of 2#20.
    Cl2Sharp20,
}

impl NamedUniverse {
    pub fn generators(self) -> Vec<Game> {
        match self {
            NamedUniverse::Mz => vec![constants::one()],
            NamedUniverse::ClA => vec![constants::a()],
            NamedUniverse::Cl2Sharp0 => vec![constants::two_sharp_zero()],
            NamedUniverse::Cl2Sharp20 => vec![constants::two_sharp_two_zero()],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NamedUniverse::Mz => "MZ",
            NamedUniverse::ClA => "CL_A",
            NamedUniverse::Cl2Sharp0 => "CL_2SHARP0",
            NamedUniverse::Cl2Sharp20 => "CL_2SHARP20",
        }
    }
}

/// Description of a universe: a named family, a generated closure, or a
/// sum of universes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniverseSpec {
    Named(NamedUniverse),
    Generated(Vec<Game>),
    SumOf(Vec<UniverseSpec>),
}

/// The sum of two universes: {u1 + u2 | u1 in U1, u2 in U2}.
pub fn sum_universe(u1: UniverseSpec, u2: UniverseSpec) -> UniverseSpec {
    UniverseSpec::SumOf(vec![u1, u2])
}

impl UniverseSpec {
    pub fn resolve(&self) -> Universe {
        match self {
            UniverseSpec::Named(named) => {
                Universe::generated_labeled(&named.generators(), named.label().to_string())
            }
            UniverseSpec::Generated(gens) => Universe::generated(gens),
            UniverseSpec::SumOf(specs) => {
                let parts: Vec<Universe> = specs.iter().map(|s| s.resolve()).collect();
                Universe::sum_of(parts)
            }
        }
    }
}

impl std::fmt::Display for UniverseSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UniverseSpec::Named(named) => f.write_str(named.label()),
            UniverseSpec::Generated(gens) => {
                write!(f, "gens:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            UniverseSpec::SumOf(specs) => {
                write!(f, "sum:")?;
                for (i, s) in specs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "({s})")?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for UniverseSpec {
    type Err = UniverseError;

    /// Mini-language: `MZ`, `CL_A`, `CL_2SHARP0`, `CL_2SHARP20`,
    /// `gens:{g1};{g2};...`, `sum:(spec)+(spec)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "MZ" => return Ok(UniverseSpec::Named(NamedUniverse::Mz)),
            "CL_A" => return Ok(UniverseSpec::Named(NamedUniverse::ClA)),
            "CL_2SHARP0" => return Ok(UniverseSpec::Named(NamedUniverse::Cl2Sharp0)),
            "CL_2SHARP20" => return Ok(UniverseSpec::Named(NamedUniverse::Cl2Sharp20)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("gens:") {
            let games = rest
                .split(';')
                .map(|part| notation::parse(part).map_err(|e| UniverseError::BadSpec(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if games.is_empty() {
                return Err(UniverseError::BadSpec("gens: needs at least one game".into()));
            }
            return Ok(UniverseSpec::Generated(games));
        }
        if let Some(rest) = s.strip_prefix("sum:") {
            let mut specs = Vec::new();
            let bytes = rest.as_bytes();
            let mut pos = 0;
            loop {
                if bytes.get(pos) != Some(&b'(') {
                    return Err(UniverseError::BadSpec(format!(
                        "expected '(' at byte {pos} of sum spec"
                    )));
                }
                let mut depth = 1;
                let start = pos + 1;
                let mut end = start;
                while depth > 0 {
                    match bytes.get(end) {
                        Some(b'(') => depth += 1,
                        Some(b')') => depth -= 1,
                        Some(_) => {}
                        None => {
                            return Err(UniverseError::BadSpec("unbalanced parentheses".into()))
                        }
                    }
                    end += 1;
                }
                specs.push(rest[start..end - 1].parse()?);
                pos = end;
                match bytes.get(pos) {
                    Some(b'+') => pos += 1,
                    None => break,
                    Some(&b) => {
                        return Err(UniverseError::BadSpec(format!(
                            "unexpected {:?} after ')' in sum spec",
                            b as char
                        )))
                    }
                }
            }
            if specs.len() < 2 {
                return Err(UniverseError::BadSpec("sum: needs at least two parts".into()));
            }
            return Ok(UniverseSpec::SumOf(specs));
        }
        Err(UniverseError::BadSpec(format!("unrecognized universe spec {s:?}")))
    }
}

/// Multiset of basis games, stored as one count per basis position.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Multiset(pub Vec<u32>);

impl Multiset {
    pub fn empty(len: usize) -> Multiset {
        Multiset(vec![0; len])
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn union(&self, other: &Multiset) -> Multiset {
        Multiset(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// One enumerated universe element: its descriptor and realized game.
#[derive(Clone, Debug, Serialize)]
pub struct Element {
    pub multiset: Multiset,
    pub game: Game,
}

/// A resolved universe: deterministic basis plus, for sums, the component
/// universes and an attribution of each basis game to the first component
/// containing it.
#[derive(Clone)]
pub struct Universe {
    label: String,
    basis: Vec<Game>,
    parts: Vec<Universe>,
    attribution: Vec<usize>,
    realize_cache: Arc<DashMap<Vec<u32>, Game>>,
}

fn sort_structurally(games: &mut Vec<Game>) {
    games.sort_by_key(|&g| (g.birthday(), render_key(g)));
    games.dedup();
}

impl Universe {
    /// Smallest universe containing the generators: closed under sum,
    /// conjugation and taking options. The basis is the conjugate-closed
    /// follower set of the generators, zero excluded.
    pub fn generated(generators: &[Game]) -> Universe {
        let spec = UniverseSpec::Generated(generators.to_vec());
        Universe::generated_labeled(generators, spec.to_string())
    }

    fn generated_labeled(generators: &[Game], label: String) -> Universe {
        let mut closure = BTreeSet::new();
        for &g in generators {
            closure.extend(g.followers());
            closure.extend(g.conjugate().followers());
        }
        closure.remove(&constants::zero());
        let mut basis: Vec<Game> = closure.into_iter().collect();
        sort_structurally(&mut basis);
        Universe::from_parts(label, basis, Vec::new())
    }

    /// A multiset family over the given basis as-is: no follower or
    /// conjugate closure is applied. Useful for exercising
    /// [`Universe::check_closure`] on sets that are not closed.
    pub fn from_raw_basis(basis: &[Game], label: &str) -> Universe {
        let mut basis: Vec<Game> = basis
            .iter()
            .copied()
            .filter(|&g| g != constants::zero())
            .collect();
        sort_structurally(&mut basis);
        Universe::from_parts(label.to_string(), basis, Vec::new())
    }

    /// The sum of the given universes; enumerates as multisets over the
    /// union of their bases (every universe contains zero, so any split
    /// of a union multiset is achievable).
    pub fn sum_of(parts: Vec<Universe>) -> Universe {
        let label = format!(
            "sum:{}",
            parts
                .iter()
                .map(|p| format!("({})", p.label))
                .collect::<Vec<_>>()
                .join("+")
        );
        let mut basis: Vec<Game> = parts.iter().flat_map(|p| p.basis.iter().copied()).collect();
        sort_structurally(&mut basis);
        Universe::from_parts(label, basis, parts)
    }

    fn from_parts(label: String, basis: Vec<Game>, parts: Vec<Universe>) -> Universe {
        let attribution = basis
            .iter()
            .map(|g| parts.iter().position(|p| p.basis.contains(g)).unwrap_or(0))
            .collect();
        Universe {
            label,
            basis,
            parts,
            attribution,
            realize_cache: Arc::new(DashMap::new()),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis(&self) -> &[Game] {
        &self.basis
    }

    pub fn parts(&self) -> &[Universe] {
        &self.parts
    }

    /// Number of multisets of size at most `bound`: C(bound + k, k) for a
    /// basis of k games.
    pub fn enumeration_size(&self, bound: u32) -> u128 {
        let k = self.basis.len() as u128;
        let b = bound as u128;
        let mut binom: u128 = 1;
        for i in 1..=k {
            binom = binom * (b + i) / i;
        }
        binom
    }

    /// Interned game for a descriptor over this universe's basis.
    pub fn realize(&self, multiset: &Multiset) -> Result<Game, UniverseError> {
        if multiset.0.len() != self.basis.len() {
            return Err(UniverseError::DescriptorLength {
                got: multiset.0.len(),
                expected: self.basis.len(),
            });
        }
        Ok(self.realize_counts(&multiset.0))
    }

    fn realize_counts(&self, counts: &[u32]) -> Game {
        if let Some(g) = self.realize_cache.get(counts) {
            return *g;
        }
        let game = match counts.iter().position(|&c| c > 0) {
            None => constants::zero(),
            Some(i) => {
                let mut smaller = counts.to_vec();
                smaller[i] -= 1;
                sum(self.realize_counts(&smaller), self.basis[i])
            }
        };
        self.realize_cache.insert(counts.to_vec(), game);
        game
    }

    /// All elements with descriptor size at most `bound`, in increasing
    /// size and then word-lexicographic order on the basis; each multiset
    /// appears exactly once, starting with zero for the empty multiset.
    pub fn enumerate(&self, bound: u32) -> Vec<Element> {
        let count = self.enumeration_size(bound);
        assert!(
            count <= 5_000_000,
            "enumeration of {} up to bound {bound} has {count} elements",
            self.label
        );
        let mut out = Vec::with_capacity(count as usize);
        let mut counts = vec![0u32; self.basis.len()];
        for size in 0..=bound {
            self.push_of_size(0, size, &mut counts, &mut out);
        }
        out
    }

    fn push_of_size(&self, pos: usize, left: u32, counts: &mut Vec<u32>, out: &mut Vec<Element>) {
        if self.basis.is_empty() {
            if left == 0 {
                out.push(Element {
                    multiset: Multiset(counts.clone()),
                    game: constants::zero(),
                });
            }
            return;
        }
        if pos == self.basis.len() - 1 {
            counts[pos] = left;
            let multiset = Multiset(counts.clone());
            let game = self.realize_counts(counts);
            out.push(Element { multiset, game });
            counts[pos] = 0;
            return;
        }
        for c in (0..=left).rev() {
            counts[pos] = c;
            self.push_of_size(pos + 1, left - c, counts, out);
        }
        counts[pos] = 0;
    }

    /// Left ends of the enumeration: elements whose game has no Left
    /// option (every basis game in the multiset is a Left end).
    pub fn left_ends(&self, bound: u32) -> Vec<Element> {
        self.enumerate(bound)
            .into_iter()
            .filter(|e| e.game.is_left_end())
            .collect()
    }

    /// First enumerated element with misère outcome P, if any up to the
    /// bound. Absence is a bounded verdict, not a proof.
    pub fn find_p_position(&self, bound: u32) -> Option<Element> {
        self.enumerate(bound)
            .into_iter()
            .find(|e| misere_outcome(e.game) == Outcome::P)
    }

    /// Checks that the enumeration up to `bound` is closed: conjugates
    /// re-occur, every option of every element re-occurs, and pairwise
    /// sums within the bound re-occur (cross-checking descriptor
    /// realization against the recursive game sum).
    pub fn check_closure(&self, bound: u32) -> ClosureReport {
        let elements = self.enumerate(bound);
        let ids: HashSet<Game> = elements.iter().map(|e| e.game).collect();
        let mut violations = Vec::new();
        let distinct: Vec<Game> = {
            let mut seen = HashSet::new();
            elements
                .iter()
                .map(|e| e.game)
                .filter(|g| seen.insert(*g))
                .collect()
        };
        for &g in &distinct {
            let conj = g.conjugate();
            if !ids.contains(&conj) {
                violations.push(ClosureViolation::ConjugateMissing {
                    element: g,
                    conjugate: conj,
                });
            }
            for opt in g.left_options().iter().chain(g.right_options()) {
                if !ids.contains(opt) {
                    violations.push(ClosureViolation::OptionMissing {
                        element: g,
                        option: *opt,
                    });
                }
            }
        }
        for (i, ei) in elements.iter().enumerate() {
            for ej in &elements[i..] {
                if ei.multiset.size() + ej.multiset.size() > bound {
                    continue;
                }
                let s = sum(ei.game, ej.game);
                if !ids.contains(&s) {
                    violations.push(ClosureViolation::SumMissing {
                        lhs: ei.game,
                        rhs: ej.game,
                        sum: s,
                    });
                }
            }
        }
        ClosureReport {
            bound,
            elements: elements.len(),
            violations,
        }
    }

    /// Splits a descriptor into one descriptor per component universe.
    /// Empty for universes that are not sums.
    pub fn decompose(&self, multiset: &Multiset) -> Result<Vec<Multiset>, UniverseError> {
        if multiset.0.len() != self.basis.len() {
            return Err(UniverseError::DescriptorLength {
                got: multiset.0.len(),
                expected: self.basis.len(),
            });
        }
        let mut split: Vec<Multiset> = self
            .parts
            .iter()
            .map(|p| Multiset::empty(p.basis.len()))
            .collect();
        for (idx, &count) in multiset.0.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let part = self.attribution[idx];
            let game = self.basis[idx];
            let pos = self.parts[part]
                .basis
                .iter()
                .position(|&g| g == game)
                .expect("attributed basis game present in part");
            split[part].0[pos] += count;
        }
        Ok(split)
    }

    /// Human-readable descriptor: basis games joined with `+`, e.g.
    /// `1+1+~1`. Parseable by the CLI expression layer.
    pub fn describe(&self, multiset: &Multiset) -> String {
        if multiset.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (idx, &count) in multiset.0.iter().enumerate() {
            let name = match notation::constant_name(self.basis[idx]) {
                Some(name) => name.to_string(),
                None => notation::render_pretty(self.basis[idx]),
            };
            for _ in 0..count {
                parts.push(name.clone());
            }
        }
        parts.join("+")
    }
}

#[derive(Debug, Serialize)]
pub struct ClosureReport {
    pub bound: u32,
    pub elements: usize,
    pub violations: Vec<ClosureViolation>,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Serialize)]
pub enum ClosureViolation {
    ConjugateMissing { element: Game, conjugate: Game },
    OptionMissing { element: Game, option: Game },
    SumMissing { lhs: Game, rhs: Game, sum: Game },
}

/// Coefficients of k1·a + k2·ā + k3·1 + k4·~1, the normal form of
/// elements of the closure of a = {.|2}.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct AVector {
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
    pub k4: u32,
}

impl AVector {
    pub const ZERO: AVector = AVector::new(0, 0, 0, 0);

    pub const fn new(k1: u32, k2: u32, k3: u32, k4: u32) -> AVector {
        AVector { k1, k2, k3, k4 }
    }

    pub fn is_zero(self) -> bool {
        self == AVector::ZERO
    }

    pub fn total(self) -> u32 {
        self.k1 + self.k2 + self.k3 + self.k4
    }

    /// Swapping players maps (k1,k2,k3,k4) to (k2,k1,k4,k3).
    pub fn conjugate(self) -> AVector {
        AVector::new(self.k2, self.k1, self.k4, self.k3)
    }

    /// The interned game k1·a + k2·ā + k3·1 + k4·~1.
    pub fn realize(self) -> Game {
        let mut g = n_copies(constants::a(), self.k1);
        g = sum(g, n_copies(constants::a_bar(), self.k2));
        g = sum(g, n_copies(constants::one(), self.k3));
        sum(g, n_copies(constants::one_bar(), self.k4))
    }
}

impl std::ops::Add for AVector {
    type Output = AVector;

    fn add(self, rhs: AVector) -> AVector {
        AVector::new(
            self.k1 + rhs.k1,
            self.k2 + rhs.k2,
            self.k3 + rhs.k3,
            self.k4 + rhs.k4,
        )
    }
}

impl std::fmt::Display for AVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a:{},{},{},{}", self.k1, self.k2, self.k3, self.k4)
    }
}

impl std::str::FromStr for AVector {
    type Err = UniverseError;

    /// Parses the CLI form `a:k1,k2,k3,k4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s
            .trim()
            .strip_prefix("a:")
            .ok_or_else(|| UniverseError::BadSpec(format!("expected a:k1,k2,k3,k4, got {s:?}")))?;
        let coords = rest
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| UniverseError::BadSpec(format!("bad coefficient in {s:?}: {e}")))?;
        match coords.as_slice() {
            [k1, k2, k3, k4] => Ok(AVector::new(*k1, *k2, *k3, *k4)),
            _ => Err(UniverseError::BadSpec(format!(
                "expected four coefficients, got {}",
                coords.len()
            ))),
        }
    }
}

/// The interned game for an AVector descriptor.
pub fn avector_game(v: AVector) -> Game {
    v.realize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::constants::*;

    fn mz() -> Universe {
        UniverseSpec::Named(NamedUniverse::Mz).resolve()
    }

    fn cl_a() -> Universe {
        UniverseSpec::Named(NamedUniverse::ClA).resolve()
    }

    #[test]
    fn mz_basis_is_one_and_its_conjugate() {
        assert_eq!(mz().basis(), &[one(), one_bar()]);
    }

    #[test]
    fn cl_a_basis_has_six_games_with_two_identified() {
        let u = cl_a();
        let mut basis = u.basis().to_vec();
        basis.sort();
        let mut expected = vec![a(), a_bar(), two(), two_bar(), one(), one_bar()];
        expected.sort();
        assert_eq!(basis, expected);
        // 2 = 1 + 1 as interned ids: the basis game and the size-2
        // multiset over {1} realize the same game.
        let mut counts = vec![0u32; u.basis().len()];
        let one_pos = u.basis().iter().position(|&g| g == one()).unwrap();
        counts[one_pos] = 2;
        assert_eq!(u.realize(&Multiset(counts)).unwrap(), two());
    }

    #[test]
    fn trivial_closure_is_just_zero() {
        let u = Universe::generated(&[zero()]);
        let elems = u.enumerate(5);
        assert_eq!(elems.len(), 1);
        assert_eq!(elems[0].game, zero());
        assert!(elems[0].multiset.is_empty());
    }

    #[test]
    fn mz_enumeration_order_and_size() {
        let elems = mz().enumerate(2);
        let descriptors: Vec<Vec<u32>> = elems.iter().map(|e| e.multiset.0.clone()).collect();
        assert_eq!(
            descriptors,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
        assert_eq!(elems[3].game, two());
    }

    #[test]
    fn sum_universe_of_mz_with_itself_enumerates_like_mz() {
        let single = mz();
        let summed = sum_universe(
            UniverseSpec::Named(NamedUniverse::Mz),
            UniverseSpec::Named(NamedUniverse::Mz),
        )
        .resolve();
        assert_eq!(summed.basis(), single.basis());
        let lhs: Vec<Game> = single.enumerate(4).iter().map(|e| e.game).collect();
        let rhs: Vec<Game> = summed.enumerate(4).iter().map(|e| e.game).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sum_universe_basis_is_union_of_follower_sets() {
        let summed = sum_universe(
            UniverseSpec::Named(NamedUniverse::Cl2Sharp0),
            UniverseSpec::Named(NamedUniverse::Cl2Sharp20),
        )
        .resolve();
        let mut basis = summed.basis().to_vec();
        basis.sort();
        let mut expected = vec![
            star(),
            star2(),
            two_sharp(),
            two_sharp_zero(),
            two_sharp_two_zero(),
        ];
        expected.sort();
        assert_eq!(basis, expected);
    }

    #[test]
    fn zero_sum_identity_universe() {
        let summed = sum_universe(
            UniverseSpec::Generated(vec![zero()]),
            UniverseSpec::Named(NamedUniverse::Mz),
        )
        .resolve();
        let lhs: Vec<Game> = summed.enumerate(3).iter().map(|e| e.game).collect();
        let rhs: Vec<Game> = mz().enumerate(3).iter().map(|e| e.game).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decompose_attributes_counts_to_parts() {
        let summed = sum_universe(
            UniverseSpec::Named(NamedUniverse::Mz),
            UniverseSpec::Generated(vec![two()]),
        )
        .resolve();
        let elems = summed.enumerate(3);
        let elem = elems
            .iter()
            .find(|e| e.multiset.size() == 3 && e.game == sum(sum(one(), one_bar()), two()))
            .expect("1 + ~1 + 2 enumerated");
        let split = summed.decompose(&elem.multiset).unwrap();
        assert_eq!(split.len(), 2);
        assert_eq!(
            summed.parts()[0].realize(&split[0]).unwrap(),
            sum(one(), one_bar())
        );
        assert_eq!(summed.parts()[1].realize(&split[1]).unwrap(), two());
    }

    #[test]
    fn p_position_searches() {
        assert!(mz().find_p_position(8).is_none());
        let star_u = Universe::generated(&[star()]);
        let found = star_u.find_p_position(1).expect("star is a P-position");
        assert_eq!(found.game, star());
    }

    #[test]
    fn closure_checks() {
        assert!(mz().check_closure(6).is_closed());
        let raw = Universe::from_raw_basis(&[one()], "raw:1");
        let report = raw.check_closure(3);
        assert!(!report.is_closed());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            ClosureViolation::ConjugateMissing { conjugate, .. } if *conjugate == one_bar()
        )));
        // Raw basis {2} misses the option 1.
        let raw2 = Universe::from_raw_basis(&[two()], "raw:2");
        let report2 = raw2.check_closure(2);
        assert!(report2.violations.iter().any(|v| matches!(
            v,
            ClosureViolation::OptionMissing { option, .. } if *option == one()
        )));
    }

    #[test]
    fn mz_identity_outcome_invariant() {
        // Outcome of (k1, k2) equals outcome of (k1-1, k2-1): 1 + ~1
        // acts like zero in MZ.
        let u = mz();
        for e in u.enumerate(8) {
            let (k1, k2) = (e.multiset.0[0], e.multiset.0[1]);
            if k1 >= 1 && k2 >= 1 {
                let smaller = u.realize(&Multiset(vec![k1 - 1, k2 - 1])).unwrap();
                assert_eq!(misere_outcome(e.game), misere_outcome(smaller));
            }
        }
    }

    #[test]
    fn conjugate_closure_of_enumeration() {
        for u in [mz(), cl_a(), Universe::generated(&[two_sharp_zero()])] {
            let elems = u.enumerate(4);
            let ids: HashSet<Game> = elems.iter().map(|e| e.game).collect();
            for e in &elems {
                assert!(ids.contains(&e.game.conjugate()));
            }
        }
    }

    #[test]
    fn left_ends_of_mz() {
        let ends = mz().left_ends(4);
        assert!(ends.iter().all(|e| e.game.is_left_end()));
        // 0 plus k·~1 for k = 1..4.
        assert_eq!(ends.len(), 5);
    }

    #[test]
    fn avector_realization() {
        assert_eq!(avector_game(AVector::ZERO), zero());
        assert_eq!(avector_game(AVector::new(0, 0, 2, 0)), two());
        assert_eq!(avector_game(AVector::new(1, 1, 0, 0)), sum(a(), a_bar()));
        assert_eq!(
            AVector::new(1, 2, 3, 4).conjugate(),
            AVector::new(2, 1, 4, 3)
        );
    }

    #[test]
    fn avector_round_trip() {
        let v = AVector::new(1, 0, 2, 3);
        assert_eq!(v.to_string(), "a:1,0,2,3");
        assert_eq!("a:1,0,2,3".parse::<AVector>().unwrap(), v);
        assert!("a:1,2".parse::<AVector>().is_err());
        assert!("b:1,2,3,4".parse::<AVector>().is_err());
    }

    #[test]
    fn spec_round_trip() {
        for text in [
            "MZ",
            "CL_A",
            "CL_2SHARP0",
            "CL_2SHARP20",
            "gens:{0|0};{{|}|}",
            "sum:(MZ)+(gens:2#0)",
            "sum:(sum:(MZ)+(MZ))+(CL_A)",
        ] {
            let spec: UniverseSpec = text.parse().unwrap();
            assert_eq!(spec.to_string().parse::<UniverseSpec>().unwrap(), spec);
        }
        assert!("bogus".parse::<UniverseSpec>().is_err());
        assert!("sum:(MZ)".parse::<UniverseSpec>().is_err());
    }

    #[test]
    fn describe_elements() {
        let u = mz();
        let elems = u.enumerate(2);
        assert_eq!(u.describe(&elems[0].multiset), "0");
        assert_eq!(u.describe(&elems[4].multiset), "1+~1");
    }

    #[test]
    fn enumeration_size_matches() {
        let u = cl_a();
        assert_eq!(u.enumeration_size(6) as usize, u.enumerate(6).len());
        assert_eq!(u.enumeration_size(0), 1);
    }
}
