//! Canonical construction and structural algebra of finite game trees.
//!
//! Games are interned into a global append-only arena: two structurally
//! equal games always receive the same [`Game`] id, so structural identities
//! (commutativity of sums, conjugate involution) are exact id equalities and
//! every memo table can key on a plain `u32`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{LazyLock, Mutex, RwLock};

use dashmap::DashMap;

/// Interned handle to an immutable game node. Copyable, ordered by
/// insertion id. Id equality is structural equality.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Game(u32);

/// One node of the game DAG: the two option sets, duplicate-free and
/// sorted by id.
#[derive(PartialEq, Eq, Hash)]
struct GameNode {
    left: Box<[Game]>,
    right: Box<[Game]>,
}

/// Global interner. `index` is the single mutation point and its lock is
/// held for the whole get-or-insert, which makes interning linearizable.
/// Nodes are leaked so option slices can be handed out as `&'static`.
struct Interner {
    index: Mutex<HashMap<&'static GameNode, Game>>,
    nodes: RwLock<Vec<&'static GameNode>>,
}

static INTERNER: LazyLock<Interner> = LazyLock::new(|| Interner {
    index: Mutex::new(HashMap::new()),
    nodes: RwLock::new(Vec::new()),
});

static CONJUGATE_MEMO: LazyLock<DashMap<Game, Game>> = LazyLock::new(DashMap::new);
static SUM_MEMO: LazyLock<DashMap<(Game, Game), Game>> = LazyLock::new(DashMap::new);
static BIRTHDAY_MEMO: LazyLock<DashMap<Game, u32>> = LazyLock::new(DashMap::new);

fn intern(node: GameNode) -> Game {
    let mut index = INTERNER.index.lock().unwrap();
    if let Some(&id) = index.get(&node) {
        return id;
    }
    let node: &'static GameNode = Box::leak(Box::new(node));
    let mut nodes = INTERNER.nodes.write().unwrap();
    let id = Game(u32::try_from(nodes.len()).expect("arena overflow"));
    nodes.push(node);
    drop(nodes);
    index.insert(node, id);
    id
}

fn node(game: Game) -> &'static GameNode {
    INTERNER.nodes.read().unwrap()[game.0 as usize]
}

fn canonical_options(options: &[Game]) -> Box<[Game]> {
    let mut opts = options.to_vec();
    opts.sort_unstable();
    opts.dedup();
    opts.into_boxed_slice()
}

impl Game {
    /// Interns the game with the given Left and Right option sets.
    /// Idempotent: equal inputs (up to order and duplicates) yield the
    /// same id.
    pub fn make(left: &[Game], right: &[Game]) -> Game {
        intern(GameNode {
            left: canonical_options(left),
            right: canonical_options(right),
        })
    }

    pub fn left_options(self) -> &'static [Game] {
        &node(self).left
    }

    pub fn right_options(self) -> &'static [Game] {
        &node(self).right
    }

    fn options(self) -> impl Iterator<Item = Game> {
        let n = node(self);
        n.left.iter().chain(n.right.iter()).copied()
    }

    /// The game with Left's and Right's roles swapped throughout.
    /// Involution: `g.conjugate().conjugate() == g`.
    pub fn conjugate(self) -> Game {
        if let Some(c) = CONJUGATE_MEMO.get(&self) {
            return *c;
        }
        let n = node(self);
        let left: Vec<Game> = n.right.iter().map(|g| g.conjugate()).collect();
        let right: Vec<Game> = n.left.iter().map(|g| g.conjugate()).collect();
        let conj = Game::make(&left, &right);
        CONJUGATE_MEMO.insert(self, conj);
        CONJUGATE_MEMO.insert(conj, self);
        conj
    }

    /// Every position reachable by a (not necessarily alternating)
    /// sequence of moves, including the game itself. Sorted by id.
    pub fn followers(self) -> Vec<Game> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(g) = stack.pop() {
            if seen.insert(g) {
                stack.extend(g.options());
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_left_end(self) -> bool {
        node(self).left.is_empty()
    }

    pub fn is_right_end(self) -> bool {
        node(self).right.is_empty()
    }

    fn is_end(self) -> bool {
        self.is_left_end() || self.is_right_end()
    }

    /// A dead end is a Left (resp. Right) end all of whose followers are
    /// Left (resp. Right) ends.
    pub fn is_dead_end(self) -> bool {
        (self.is_left_end() && self.followers().iter().all(|f| f.is_left_end()))
            || (self.is_right_end() && self.followers().iter().all(|f| f.is_right_end()))
    }

    /// A game is dead-ending when every follower that is an end is a dead
    /// end. Follower-closed by construction.
    pub fn is_dead_ending(self) -> bool {
        self.followers()
            .iter()
            .all(|f| !f.is_end() || f.is_dead_end())
    }

    /// 0 for the empty game, otherwise 1 + the largest option birthday.
    pub fn birthday(self) -> u32 {
        if let Some(b) = BIRTHDAY_MEMO.get(&self) {
            return *b;
        }
        let b = self
            .options()
            .map(|g| g.birthday() + 1)
            .max()
            .unwrap_or(0);
        BIRTHDAY_MEMO.insert(self, b);
        b
    }

    /// A game is impartial when every follower has identical Left and
    /// Right option sets.
    pub fn is_impartial(self) -> bool {
        self.followers()
            .iter()
            .all(|f| f.left_options() == f.right_options())
    }

    pub(crate) fn index(self) -> u32 {
        self.0
    }
}

/// Disjunctive sum: a move in the sum is a move in exactly one component.
/// Memoized on the unordered pair, which is sound because the canonical
/// option ordering makes the sum commutative at the id level.
pub fn sum(g: Game, h: Game) -> Game {
    let key = (g.min(h), g.max(h));
    if let Some(s) = SUM_MEMO.get(&key) {
        return *s;
    }
    let (gn, hn) = (node(g), node(h));
    let mut left = Vec::with_capacity(gn.left.len() + hn.left.len());
    left.extend(gn.left.iter().map(|&gl| sum(gl, h)));
    left.extend(hn.left.iter().map(|&hl| sum(g, hl)));
    let mut right = Vec::with_capacity(gn.right.len() + hn.right.len());
    right.extend(gn.right.iter().map(|&gr| sum(gr, h)));
    right.extend(hn.right.iter().map(|&hr| sum(g, hr)));
    let s = Game::make(&left, &right);
    SUM_MEMO.insert(key, s);
    s
}

/// k-fold disjunctive sum; zero copies give the zero game.
pub fn n_copies(g: Game, k: u32) -> Game {
    let mut acc = constants::zero();
    for _ in 0..k {
        acc = sum(acc, g);
    }
    acc
}

impl std::ops::Add for Game {
    type Output = Game;

    fn add(self, rhs: Game) -> Game {
        sum(self, rhs)
    }
}

impl std::fmt::Debug for Game {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Game#{}({})", self.0, crate::notation::render(*self))
    }
}

/// The named games used throughout: 0, 1, 1̄ (written `~1`), 2, *, *2,
/// 2#, 2#0, 2#20, a = {.|2} and its conjugate.
pub mod constants {
    use super::{sum, Game};

    pub fn zero() -> Game {
        Game::make(&[], &[])
    }

    pub fn one() -> Game {
        Game::make(&[zero()], &[])
    }

    pub fn one_bar() -> Game {
        Game::make(&[], &[zero()])
    }

    pub fn two() -> Game {
        Game::make(&[one()], &[])
    }

    pub fn two_bar() -> Game {
        Game::make(&[], &[one_bar()])
    }

    pub fn star() -> Game {
        Game::make(&[zero()], &[zero()])
    }

    pub fn star2() -> Game {
        Game::make(&[zero(), star()], &[zero(), star()])
    }

    pub fn two_sharp() -> Game {
        Game::make(&[star2()], &[star2()])
    }

    pub fn two_sharp_zero() -> Game {
        Game::make(&[zero(), two_sharp()], &[zero(), two_sharp()])
    }

    pub fn two_sharp_two_zero() -> Game {
        Game::make(
            &[zero(), star2(), two_sharp()],
            &[zero(), star2(), two_sharp()],
        )
    }

    /// a = {.|2}: Right can move to 2, Left cannot move.
    pub fn a() -> Game {
        Game::make(&[], &[two()])
    }

    pub fn a_bar() -> Game {
        Game::make(&[two_bar()], &[])
    }

    /// 1 + 1 and {1|.} intern to the same node.
    pub fn two_is_one_plus_one() -> bool {
        two() == sum(one(), one())
    }
}

#[cfg(test)]
mod tests {
    use super::constants::*;
    use super::*;

    #[test]
    fn zero_has_no_options() {
        assert!(zero().left_options().is_empty());
        assert!(zero().right_options().is_empty());
    }

    #[test]
    fn interning_is_idempotent() {
        let g1 = Game::make(&[zero()], &[]);
        let g2 = Game::make(&[zero()], &[]);
        assert_eq!(g1, g2);
    }

    #[test]
    fn option_sets_are_deduplicated_and_sorted() {
        let g = Game::make(&[star(), zero(), star(), zero()], &[]);
        assert_eq!(g.left_options(), &[zero(), star()]);
    }

    #[test]
    fn star_is_zero_zero() {
        assert_eq!(Game::make(&[zero()], &[zero()]), star());
    }

    #[test]
    fn two_equals_one_plus_one() {
        assert!(two_is_one_plus_one());
        assert_eq!(n_copies(one(), 2), two());
    }

    #[test]
    fn sum_with_zero_is_identity() {
        for g in [zero(), one(), star(), a(), two_sharp_zero()] {
            assert_eq!(sum(g, zero()), g);
            assert_eq!(sum(zero(), g), g);
        }
    }

    #[test]
    fn sum_is_commutative_at_id_level() {
        assert_eq!(sum(a(), a_bar()), sum(a_bar(), a()));
        assert_eq!(sum(one(), star()), sum(star(), one()));
    }

    #[test]
    fn conjugate_involution_on_constants() {
        assert_eq!(zero().conjugate(), zero());
        assert_eq!(one().conjugate(), one_bar());
        assert_eq!(a().conjugate(), a_bar());
        for g in [zero(), one(), two(), star(), star2(), a(), two_sharp_zero()] {
            assert_eq!(g.conjugate().conjugate(), g);
        }
    }

    #[test]
    fn followers_of_a() {
        assert_eq!(a().followers(), {
            let mut v = vec![a(), two(), one(), zero()];
            v.sort();
            v
        });
    }

    #[test]
    fn followers_of_two_sharp_zero() {
        let mut expected = vec![two_sharp_zero(), two_sharp(), star2(), star(), zero()];
        expected.sort();
        assert_eq!(two_sharp_zero().followers(), expected);
    }

    #[test]
    fn ends() {
        assert!(zero().is_left_end() && zero().is_right_end());
        assert!(a().is_left_end());
        assert!(!a().is_right_end());
        assert!(one().is_right_end());
        assert!(!one().is_left_end());
    }

    #[test]
    fn dead_ending_examples() {
        assert!(zero().is_dead_ending());
        assert!(one().is_dead_ending());
        assert!(one().is_dead_end());
        // a's follower 2 is not a Left end, so the Left end a is not dead.
        assert!(!a().is_dead_end());
        assert!(!a().is_dead_ending());
        assert!(!a_bar().is_dead_ending());
    }

    #[test]
    fn dead_ending_is_follower_closed() {
        for g in [zero(), one(), two(), star(), star2(), a(), a_bar()] {
            if g.is_dead_ending() {
                assert!(g.followers().iter().all(|f| f.is_dead_ending()));
            }
        }
    }

    #[test]
    fn birthdays() {
        assert_eq!(zero().birthday(), 0);
        assert_eq!(star().birthday(), 1);
        assert_eq!(two().birthday(), 2);
        assert_eq!(a().birthday(), 3);
        assert_eq!(two_sharp_two_zero().birthday(), 4);
    }

    #[test]
    fn n_copies_basics() {
        assert_eq!(n_copies(one(), 0), zero());
        assert_eq!(n_copies(star(), 2), sum(star(), star()));
    }

    #[test]
    fn impartiality() {
        for g in [zero(), star(), star2(), two_sharp(), two_sharp_zero()] {
            assert!(g.is_impartial());
        }
        for g in [one(), a(), sum(one(), one_bar())] {
            assert!(!g.is_impartial());
        }
    }
}
