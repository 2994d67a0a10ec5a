//! Opponent ranges over all 1,326 two-card combos, the 169-class view, and
//! card removal.

mod book;
mod file;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::cards::{Card, CardSet, Hole, Rank};
use crate::error::{Error, Result};

pub use book::{chen_score, strength_order, Facing, PreflopContext, RangeBook, RangeChart};
pub use file::{format_range_file, parse_range_file, RangeEntry, RangeFile};

pub const NUM_COMBOS: usize = 1326;
pub const NUM_CLASSES: usize = 169;

/// One unordered two-card combination, indexed `0..1326`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combo(u16);

struct ComboTables {
    cards: Vec<(Card, Card)>,
    index: Vec<u16>,
}

fn tables() -> &'static ComboTables {
    static TABLES: OnceLock<ComboTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut cards = Vec::with_capacity(NUM_COMBOS);
        let mut index = vec![u16::MAX; 52 * 52];
        for hi in 1..52u8 {
            for lo in 0..hi {
                let (h, l) = (Card::from_index(hi).unwrap(), Card::from_index(lo).unwrap());
                index[hi as usize * 52 + lo as usize] = cards.len() as u16;
                index[lo as usize * 52 + hi as usize] = cards.len() as u16;
                cards.push((h, l));
            }
        }
        ComboTables { cards, index }
    })
}

impl Combo {
    pub fn new(a: Card, b: Card) -> Option<Combo> {
        if a == b {
            return None;
        }
        Some(Combo(tables().index[a.index() as usize * 52 + b.index() as usize]))
    }

    pub fn from_hole(h: Hole) -> Combo {
        Combo::new(h.high(), h.low()).unwrap()
    }

    pub fn from_index(i: usize) -> Option<Combo> {
        (i < NUM_COMBOS).then_some(Combo(i as u16))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Combo> {
        (0..NUM_COMBOS as u16).map(Combo)
    }

    pub fn cards(self) -> (Card, Card) {
        tables().cards[self.0 as usize]
    }

    pub fn hole(self) -> Hole {
        let (a, b) = self.cards();
        Hole::new(a, b).unwrap()
    }

    pub fn set(self) -> CardSet {
        let (a, b) = self.cards();
        CardSet::from_mask(a.mask() | b.mask())
    }

    pub fn class(self) -> HandClass {
        let (a, b) = self.cards();
        HandClass::of(a, b)
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.cards();
        write!(f, "{a}{b}")
    }
}

impl fmt::Debug for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Combo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Combo> {
        let h: Hole = s.parse()?;
        Ok(Combo::from_hole(h))
    }
}

/// A starting-hand class such as `AKs`, `QJo` or `99`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HandClass {
    high: Rank,
    low: Rank,
    suited: bool,
}

impl HandClass {
    pub fn new(high: Rank, low: Rank, suited: bool) -> Option<HandClass> {
        if high < low || (high == low && suited) {
            return None;
        }
        Some(HandClass { high, low, suited })
    }

    pub fn of(a: Card, b: Card) -> HandClass {
        let (hi, lo) = if a.rank() >= b.rank() { (a.rank(), b.rank()) } else { (b.rank(), a.rank()) };
        HandClass {
            high: hi,
            low: lo,
            suited: a.suit() == b.suit() && hi != lo,
        }
    }

    pub fn all() -> impl Iterator<Item = HandClass> {
        Rank::all().rev().flat_map(|hi| {
            Rank::all().rev().filter(move |lo| *lo <= hi).flat_map(move |lo| {
                let pair = lo == hi;
                let mut v = vec![HandClass {
                    high: hi,
                    low: lo,
                    suited: false,
                }];
                if !pair {
                    v.push(HandClass {
                        high: hi,
                        low: lo,
                        suited: true,
                    });
                }
                v
            })
        })
    }

    pub fn high(self) -> Rank {
        self.high
    }

    pub fn low(self) -> Rank {
        self.low
    }

    pub fn is_pair(self) -> bool {
        self.high == self.low
    }

    pub fn is_suited(self) -> bool {
        self.suited
    }

    pub fn combo_count(self) -> usize {
        if self.is_pair() {
            6
        } else if self.suited {
            4
        } else {
            12
        }
    }

    pub fn combos(self) -> impl Iterator<Item = Combo> {
        Combo::all().filter(move |c| c.class() == self)
    }

    /// Position in the 13x13 grid: row/column 0 is the ace. Pairs sit on the
    /// diagonal, suited classes above it, offsuit below.
    pub fn grid_cell(self) -> (usize, usize) {
        let hi = 12 - self.high.index() as usize;
        let lo = 12 - self.low.index() as usize;
        if self.suited {
            (hi, lo)
        } else {
            (lo, hi)
        }
    }

    pub fn from_grid_cell(row: usize, col: usize) -> HandClass {
        let r = Rank::new(12 - row as u8).unwrap();
        let c = Rank::new(12 - col as u8).unwrap();
        match row.cmp(&col) {
            std::cmp::Ordering::Equal => HandClass {
                high: r,
                low: r,
                suited: false,
            },
            std::cmp::Ordering::Less => HandClass { high: r, low: c, suited: true },
            std::cmp::Ordering::Greater => HandClass {
                high: c,
                low: r,
                suited: false,
            },
        }
    }

    pub fn index(self) -> usize {
        let (r, c) = self.grid_cell();
        r * 13 + c
    }
}

impl fmt::Display for HandClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pair() {
            write!(f, "{}{}", self.high, self.low)
        } else {
            write!(f, "{}{}{}", self.high, self.low, if self.suited { 's' } else { 'o' })
        }
    }
}

impl fmt::Debug for HandClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HandClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<HandClass> {
        let b: Vec<char> = s.chars().collect();
        let bad = || Error::invalid(format!("bad hand class {s:?}"));
        let (r1, r2) = match b.as_slice() {
            [a, b] | [a, b, _] => (Rank::from_char(*a).ok_or_else(bad)?, Rank::from_char(*b).ok_or_else(bad)?),
            _ => return Err(bad()),
        };
        let (hi, lo) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
        let suited = match b.get(2) {
            None if hi == lo => false,
            Some('s') if hi != lo => true,
            Some('o') if hi != lo => false,
            _ => return Err(bad()),
        };
        Ok(HandClass { high: hi, low: lo, suited })
    }
}

/// Cards known to be out of every opponent's hand.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeadCards(CardSet);

impl DeadCards {
    pub fn new(cards: &[Card]) -> Result<DeadCards> {
        if cards.len() > 7 {
            return Err(Error::invalid("more than 7 dead cards"));
        }
        Ok(DeadCards(CardSet::try_from_cards(cards)?))
    }

    pub fn from_set(set: CardSet) -> DeadCards {
        DeadCards(set)
    }

    pub fn set(self) -> CardSet {
        self.0
    }
}

/// Nonnegative weight for every combo.
#[derive(Clone, PartialEq)]
pub struct ComboGrid {
    weights: Vec<f64>,
}

impl fmt::Debug for ComboGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComboGrid(support={}, total={:.6})", self.support_size(), self.total())
    }
}

impl Default for ComboGrid {
    fn default() -> Self {
        ComboGrid::empty()
    }
}

/// Outcome of an operation that may leave no live combos.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Live,
    /// Every combo was removed; the grid fell back to uniform over live combos.
    Degenerate,
}

impl ComboGrid {
    pub fn empty() -> ComboGrid {
        ComboGrid {
            weights: vec![0.0; NUM_COMBOS],
        }
    }

    pub fn uniform() -> ComboGrid {
        ComboGrid {
            weights: vec![1.0 / NUM_COMBOS as f64; NUM_COMBOS],
        }
    }

    pub fn single(c: Combo) -> ComboGrid {
        let mut g = ComboGrid::empty();
        g.weights[c.index()] = 1.0;
        g
    }

    pub fn from_weights(it: impl IntoIterator<Item = (Combo, f64)>) -> ComboGrid {
        let mut g = ComboGrid::empty();
        for (c, w) in it {
            g.weights[c.index()] += w.max(0.0);
        }
        g
    }

    pub fn from_classes(it: impl IntoIterator<Item = (HandClass, f64)>) -> ComboGrid {
        let mut g = ComboGrid::empty();
        for (class, w) in it {
            for c in class.combos() {
                g.weights[c.index()] = w.max(0.0);
            }
        }
        g
    }

    pub fn weight(&self, c: Combo) -> f64 {
        self.weights[c.index()]
    }

    pub fn set_weight(&mut self, c: Combo, w: f64) {
        assert!(w >= 0.0 && w.is_finite(), "combo weight must be finite and nonnegative");
        self.weights[c.index()] = w;
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter_weighted(&self) -> impl Iterator<Item = (Combo, f64)> + '_ {
        self.weights.iter().enumerate().map(|(i, &w)| (Combo(i as u16), w))
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn support_size(&self) -> usize {
        self.weights.iter().filter(|w| **w > 0.0).count()
    }

    pub fn support(&self) -> impl Iterator<Item = Combo> + '_ {
        self.iter_weighted().filter(|(_, w)| *w > 0.0).map(|(c, _)| c)
    }

    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(|w| *w <= 0.0)
    }

    /// Scales weights to sum to one. Fails on an empty grid.
    pub fn normalized(&self) -> Result<ComboGrid> {
        let t = self.total();
        if t <= 0.0 {
            return Err(Error::DegenerateRange);
        }
        Ok(ComboGrid {
            weights: self.weights.iter().map(|w| w / t).collect(),
        })
    }

    /// Multiplies each weight by `f(combo)` (clamped at zero).
    pub fn map_weights(&self, mut f: impl FnMut(Combo, f64) -> f64) -> ComboGrid {
        ComboGrid {
            weights: self.weights.iter().enumerate().map(|(i, &w)| f(Combo(i as u16), w).max(0.0)).collect(),
        }
    }

    /// Zeroes every combo touching a dead card and renormalizes. If nothing
    /// survives, returns the uniform grid over live combos and flags it.
    pub fn strip(&self, dead: DeadCards) -> (ComboGrid, Support) {
        let stripped = self.map_weights(|c, w| if c.set().intersects(dead.set()) { 0.0 } else { w });
        match stripped.normalized() {
            Ok(g) => (g, Support::Live),
            Err(_) => (uniform_live(dead), Support::Degenerate),
        }
    }

    pub fn class_view(&self) -> ClassGrid169 {
        let mut w = [0.0; NUM_CLASSES];
        for (c, cw) in self.iter_weighted() {
            w[c.class().index()] += cw;
        }
        ClassGrid169 { weights: w }
    }
}

/// Uniform weights over combos avoiding `dead`.
pub fn uniform_live(dead: DeadCards) -> ComboGrid {
    let g = ComboGrid::empty().map_weights(|c, _| if c.set().intersects(dead.set()) { 0.0 } else { 1.0 });
    g.normalized().unwrap_or_else(|_| ComboGrid::empty())
}

/// The 13x13 starting-hand view of a [`ComboGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassGrid169 {
    weights: [f64; NUM_CLASSES],
}

impl ClassGrid169 {
    pub fn weight(&self, class: HandClass) -> f64 {
        self.weights[class.index()]
    }

    pub fn cell(&self, row: usize, col: usize) -> f64 {
        self.weights[row * 13 + col]
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combo_indexing_is_a_bijection() {
        let mut seen = vec![false; NUM_COMBOS];
        for a in Card::all() {
            for b in Card::all() {
                if let Some(c) = Combo::new(a, b) {
                    let (x, y) = c.cards();
                    assert!((x == a && y == b) || (x == b && y == a));
                    seen[c.index()] = true;
                }
            }
        }
        assert!(seen.iter().all(|s| *s));
    }

    #[test]
    fn class_member_counts() {
        let mut total = 0;
        for class in HandClass::all() {
            let n = class.combos().count();
            assert_eq!(n, class.combo_count(), "{class}");
            total += n;
        }
        assert_eq!(HandClass::all().count(), NUM_CLASSES);
        assert_eq!(total, NUM_COMBOS);
    }

    #[test]
    fn grid_cells_follow_layout() {
        let aa: HandClass = "AA".parse().unwrap();
        let aks: HandClass = "AKs".parse().unwrap();
        let ako: HandClass = "AKo".parse().unwrap();
        assert_eq!(aa.grid_cell(), (0, 0));
        assert_eq!(aks.grid_cell(), (0, 1));
        assert_eq!(ako.grid_cell(), (1, 0));
        for class in HandClass::all() {
            let (r, c) = class.grid_cell();
            assert_eq!(HandClass::from_grid_cell(r, c), class);
        }
    }

    #[test]
    fn offsuit_class_triple_suited_on_uniform_grid() {
        let v = ComboGrid::uniform().class_view();
        let qjo = v.weight("QJo".parse().unwrap());
        let qjs = v.weight("QJs".parse().unwrap());
        assert!((qjo - 3.0 * qjs).abs() < 1e-12);
        let pair = v.weight("99".parse().unwrap());
        assert!((pair - 6.0 / NUM_COMBOS as f64).abs() < 1e-12);
        assert_eq!(ComboGrid::empty().class_view().total(), 0.0);
    }

    #[test]
    fn strip_hand_six_dead_cards() {
        let dead = DeadCards::new(&crate::cards::parse_cards("9d5s2c9h9s").unwrap()).unwrap();
        let (g, s) = ComboGrid::uniform().strip(dead);
        assert_eq!(s, Support::Live);
        assert_eq!(g.support_size(), 1081);
        let nines: HandClass = "99".parse().unwrap();
        assert_eq!(nines.combos().filter(|c| g.weight(*c) > 0.0).count(), 0);
        let (again, _) = g.strip(dead);
        for (a, b) in g.weights().iter().zip(again.weights()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn strip_everything_is_degenerate() {
        let g = ComboGrid::single("AsAh".parse().unwrap());
        let dead = DeadCards::new(&crate::cards::parse_cards("As").unwrap()).unwrap();
        let (u, s) = g.strip(dead);
        assert_eq!(s, Support::Degenerate);
        assert_eq!(u.support_size(), 1275);
        assert!((u.total() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn class_parse() {
        assert_eq!("KAs".parse::<HandClass>().unwrap().to_string(), "AKs");
        assert!("AAs".parse::<HandClass>().is_err());
        assert!("AK".parse::<HandClass>().is_err());
    }
}
