//! Misère outcomes and their partial order.
//!
//! Under misère play the last player to move loses; equivalently a player
//! with no move on their turn wins. Outcomes are ordered with L on top,
//! R at the bottom, and N, P incomparable in between.

use std::sync::LazyLock;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::game::Game;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    L,
    N,
    P,
    R,
}

impl Outcome {
    /// `self >= other` in the outcome order (reflexive).
    pub fn ge(self, other: Outcome) -> bool {
        matches!(self.partial_cmp(&other), Some(std::cmp::Ordering::Greater | std::cmp::Ordering::Equal))
    }

    /// Swaps L and R; N and P are self-conjugate.
    pub fn conjugate(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            o => o,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Outcome::L => 'L',
            Outcome::N => 'N',
            Outcome::P => 'P',
            Outcome::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Outcome> {
        match c {
            'L' => Some(Outcome::L),
            'N' => Some(Outcome::N),
            'P' => Some(Outcome::P),
            'R' => Some(Outcome::R),
            _ => None,
        }
    }
}

impl PartialOrd for Outcome {
    fn partial_cmp(&self, other: &Outcome) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        use Outcome::*;
        match (self, other) {
            (x, y) if x == y => Some(Equal),
            (L, _) | (_, R) => Some(Greater),
            (_, L) | (R, _) => Some(Less),
            _ => None, // N and P are incomparable
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

static OUTCOME_MEMO: LazyLock<DashMap<Game, Outcome>> = LazyLock::new(DashMap::new);

/// The misère outcome of a game.
///
/// A player moving first wins when they have no move, or when some move
/// leaves a position the opponent loses moving first; a position is lost
/// for the opponent moving first exactly when its outcome favours us
/// (L or P from Left's view, R or P from Right's).
pub fn misere_outcome(game: Game) -> Outcome {
    if let Some(o) = OUTCOME_MEMO.get(&game) {
        return *o;
    }
    let left_wins_first = game.is_left_end()
        || game
            .left_options()
            .iter()
            .any(|&gl| matches!(misere_outcome(gl), Outcome::L | Outcome::P));
    let right_wins_first = game.is_right_end()
        || game
            .right_options()
            .iter()
            .any(|&gr| matches!(misere_outcome(gr), Outcome::R | Outcome::P));
    let outcome = match (left_wins_first, right_wins_first) {
        (true, true) => Outcome::N,
        (false, false) => Outcome::P,
        (true, false) => Outcome::L,
        (false, true) => Outcome::R,
    };
    OUTCOME_MEMO.insert(game, outcome);
    outcome
}

/// Seeds the outcome memo, e.g. from a persisted cache. The value is
/// trusted; a wrong entry corrupts every later computation.
pub fn preload_outcome(game: Game, outcome: Outcome) {
    OUTCOME_MEMO.insert(game, outcome);
}

/// Snapshot of all outcomes computed so far.
pub fn outcome_cache_entries() -> Vec<(Game, Outcome)> {
    OUTCOME_MEMO
        .iter()
        .map(|entry| (*entry.key(), *entry.value()))
        .collect()
}
