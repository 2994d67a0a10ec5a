//! Relative strength: maps (hole cards, board) to an eleven-point scale that
//! reads a hand in the context of the board, with a learned additive overlay.

mod draws;
mod rules;
mod texture;

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cards::{evaluate_set, Board, Card, CardSet, Category, HandValue, Hole, Rank};
use crate::error::{Error, Result};
use crate::range::Combo;

pub use draws::{draw_tier, DrawTier};
pub use rules::{RsmRules, WeakPair, DEFAULT_RULES};
pub use texture::{BoardTexture, Connectivity, HighTier, Suitedness};

/// A point on the 0..=10 relative strength scale.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RsCategory(u8);

impl RsCategory {
    pub const NIENTE: RsCategory = RsCategory(0);
    pub const HARDLY_ANYTHING: RsCategory = RsCategory(1);
    pub const WEAK: RsCategory = RsCategory(2);
    pub const FAIR: RsCategory = RsCategory(3);
    pub const DECENT: RsCategory = RsCategory(4);
    pub const GOOD: RsCategory = RsCategory(5);
    pub const GREAT: RsCategory = RsCategory(6);
    pub const EXCELLENT: RsCategory = RsCategory(7);
    pub const MONSTER: RsCategory = RsCategory(8);
    pub const NUTS: RsCategory = RsCategory(9);
    pub const ALCATRAZ: RsCategory = RsCategory(10);

    pub const COUNT: usize = 11;

    const LABELS: [&'static str; 11] = [
        "Niente",
        "HardlyAnything",
        "Weak",
        "Fair",
        "Decent",
        "Good",
        "Great",
        "Excellent",
        "Monster",
        "Nuts",
        "Alcatraz",
    ];

    pub fn new(v: u8) -> Option<RsCategory> {
        (v <= 10).then_some(RsCategory(v))
    }

    pub fn from_score(score: f64) -> RsCategory {
        RsCategory(score.round().clamp(0.0, 10.0) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn label(self) -> &'static str {
        Self::LABELS[self.0 as usize]
    }

    pub fn all() -> impl DoubleEndedIterator<Item = RsCategory> {
        (0..=10).map(RsCategory)
    }
}

impl fmt::Debug for RsCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.label(), self.0)
    }
}

impl fmt::Display for RsCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KickerTier {
    /// Both hole cards pair the board or each other.
    None,
    Low,
    Mid,
    High,
}

/// Overlay key: the features a learned correction applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BucketKey {
    /// Made-hand level on the ladder after board adjustments, before draws.
    pub made: u8,
    pub kicker: KickerTier,
    pub draw: DrawTier,
    pub texture: u8,
}

impl fmt::Display for BucketKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}/{:?}/{:?}/t{}", self.made, self.kicker, self.draw, self.texture)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct OverlayEntry {
    bucket: BucketKey,
    delta: f64,
}

/// Learned additive corrections per bucket, each within `[-clamp, clamp]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<OverlayEntry>", into = "Vec<OverlayEntry>")]
pub struct Overlay {
    deltas: BTreeMap<BucketKey, f64>,
}

impl From<Vec<OverlayEntry>> for Overlay {
    fn from(v: Vec<OverlayEntry>) -> Self {
        Overlay {
            deltas: v.into_iter().map(|e| (e.bucket, e.delta)).collect(),
        }
    }
}

impl From<Overlay> for Vec<OverlayEntry> {
    fn from(o: Overlay) -> Self {
        o.deltas.into_iter().map(|(bucket, delta)| OverlayEntry { bucket, delta }).collect()
    }
}

impl Overlay {
    pub fn get(&self, bucket: &BucketKey) -> f64 {
        self.deltas.get(bucket).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BucketKey, &f64)> {
        self.deltas.iter()
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    /// Sum of absolute corrections.
    pub fn magnitude(&self) -> f64 {
        self.deltas.values().map(|d| d.abs()).sum()
    }
}

/// Everything the scale reads from one holding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HandFeatures {
    pub value: HandValue,
    pub made: u8,
    pub draw: DrawTier,
    pub kicker: KickerTier,
    /// Rule score before the overlay.
    pub base: f64,
    pub bucket: BucketKey,
}

/// The strength table: base rules plus learned overlay.
#[derive(Debug, Clone, Default)]
pub struct Rsm {
    rules: RsmRules,
    overlay: Overlay,
}

impl Rsm {
    pub fn new(rules: RsmRules) -> Rsm {
        Rsm {
            rules,
            overlay: Overlay::default(),
        }
    }

    pub fn rules(&self) -> &RsmRules {
        &self.rules
    }

    pub fn overlay(&self) -> &Overlay {
        &self.overlay
    }

    pub fn set_overlay(&mut self, overlay: Overlay) -> Result<()> {
        if let Some((_, d)) = overlay.iter().find(|(_, d)| d.abs() > self.rules.clamp + 1e-12) {
            return Err(Error::ClampViolation {
                delta: *d,
                clamp: self.rules.clamp,
            });
        }
        self.overlay = overlay;
        Ok(())
    }

    /// Adds `delta` to a bucket's overlay. The accumulated correction stays
    /// within the clamp.
    pub fn apply_delta(&mut self, bucket: BucketKey, delta: f64) -> Result<()> {
        let clamp = self.rules.clamp;
        if !delta.is_finite() || delta.abs() > clamp {
            return Err(Error::ClampViolation { delta, clamp });
        }
        let slot = self.overlay.deltas.entry(bucket).or_insert(0.0);
        *slot = (*slot + delta).clamp(-clamp, clamp);
        if *slot == 0.0 {
            self.overlay.deltas.remove(&bucket);
        }
        Ok(())
    }

    /// Precomputes board-dependent thresholds. Fails pre-flop.
    pub fn view(&self, board: &Board) -> Result<BoardView<'_>> {
        BoardView::new(self, board)
    }

    pub fn relative_strength(&self, hole: Hole, board: &Board) -> Result<RsCategory> {
        if hole.set().intersects(board.set()) {
            return Err(Error::invalid("hole cards collide with the board"));
        }
        Ok(self.view(board)?.category(hole))
    }
}

#[derive(Debug, Clone)]
enum Ladder {
    /// Minimum values for levels 1..=8.
    Thresholds([HandValue; 8]),
    /// Every live combo's value, ascending.
    Percentile(Vec<HandValue>),
}

/// Board-specific evaluation context for many relative strength queries.
#[derive(Debug, Clone)]
pub struct BoardView<'a> {
    rsm: &'a Rsm,
    cards: Vec<Card>,
    set: CardSet,
    texture: BoardTexture,
    ladder: Ladder,
    nut_floor: HandValue,
    categories: OnceCell<Vec<RsCategory>>,
}

fn pair_value(pair: Rank, kick: Option<Rank>) -> HandValue {
    match kick {
        Some(k) => HandValue::new(Category::Pair, &[pair, k]),
        None => HandValue::new(Category::Pair, &[pair]),
    }
}

fn two_pair_value(a: Rank, b: Rank, kick: Option<Rank>) -> HandValue {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    match kick {
        Some(k) => HandValue::new(Category::TwoPair, &[hi, lo, k]),
        None => HandValue::new(Category::TwoPair, &[hi, lo]),
    }
}

/// Smallest rank at least `want` that beats `floor` and avoids `taken`.
fn kicker_at_least(want: Rank, floor: Option<Rank>, taken: &[Rank]) -> Option<Rank> {
    let start = match floor {
        Some(f) => want.index().max(f.index() + 1),
        None => want.index(),
    };
    (start..13).map(|i| Rank::new(i).unwrap()).find(|r| !taken.contains(r))
}

impl<'a> BoardView<'a> {
    fn new(rsm: &'a Rsm, board: &Board) -> Result<BoardView<'a>> {
        if board.is_empty() {
            return Err(Error::Unsupported(
                "relative strength is post-flop only; pre-flop strength lives in range charts".into(),
            ));
        }
        let rules = &rsm.rules;
        let set = board.set();
        let mut values: Vec<HandValue> = Combo::all()
            .filter(|c| !c.set().intersects(set))
            .map(|c| evaluate_set(set.union(c.set())))
            .collect();
        values.sort_unstable();
        let mut distinct = values.iter().rev().copied().collect::<Vec<_>>();
        distinct.dedup();
        let nut_floor = distinct
            .get(rules.nut_values.saturating_sub(1))
            .or(distinct.last())
            .copied()
            .unwrap_or_default();

        let board_value = evaluate_set(set);
        let mut ranks: Vec<Rank> = board.cards().iter().map(|c| c.rank()).collect();
        ranks.sort_unstable_by(|a, b| b.cmp(a));
        ranks.dedup();

        let ladder = match board_value.category() {
            Category::HighCard => Ladder::Thresholds(unpaired_ladder(rules, &ranks)),
            Category::Pair => {
                let pair = board_value.primary().unwrap();
                let others: Vec<Rank> = ranks.iter().copied().filter(|r| *r != pair).collect();
                Ladder::Thresholds(paired_ladder(rules, pair, &others))
            }
            _ => Ladder::Percentile(values),
        };
        Ok(BoardView {
            rsm,
            cards: board.cards().to_vec(),
            set,
            texture: BoardTexture::of(board),
            ladder,
            nut_floor,
            categories: OnceCell::new(),
        })
    }

    pub fn texture(&self) -> BoardTexture {
        self.texture
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn board_set(&self) -> CardSet {
        self.set
    }

    /// Lowest value that still counts as the nuts here.
    pub fn nut_floor(&self) -> HandValue {
        self.nut_floor
    }

    fn made_level(&self, value: HandValue) -> u8 {
        let rules = &self.rsm.rules;
        if value.category() >= Category::Quads {
            return 10;
        }
        if value >= self.nut_floor {
            return 9;
        }
        let mut level = match &self.ladder {
            Ladder::Thresholds(t) => t.iter().rposition(|th| value >= *th).map_or(0, |i| i as u8 + 1),
            Ladder::Percentile(sorted) => {
                let better = sorted.len() - sorted.partition_point(|v| *v <= value);
                let share = better as f64 / sorted.len().max(1) as f64;
                rules.percentile.iter().position(|p| share >= *p).map_or(8, |i| i as u8)
            }
        };
        if self.texture.is_wet() && (3..=7).contains(&level) {
            level = level.saturating_sub(rules.wet_penalty).max(2);
        }
        level
    }

    pub fn features(&self, hole: Hole) -> HandFeatures {
        let rules = &self.rsm.rules;
        let value = evaluate_set(self.set.union(hole.set()));
        let made = self.made_level(value);
        let draw = draw_tier(hole, &self.cards);
        let kicker = self.kicker_tier(hole);
        let base = if made >= 9 {
            made as f64
        } else {
            let draw_score = rules.draw_scores[draw as usize];
            let bonus = if made >= 2 && draw >= DrawTier::Strong { rules.made_draw_bonus } else { 0.0 };
            ((made as f64).max(draw_score) + bonus).min(8.0)
        };
        HandFeatures {
            value,
            made,
            draw,
            kicker,
            base,
            bucket: BucketKey {
                made,
                kicker,
                draw,
                texture: self.texture.class_id(),
            },
        }
    }

    fn kicker_tier(&self, hole: Hole) -> KickerTier {
        let [a, b] = hole.cards();
        if a.rank() == b.rank() {
            return KickerTier::None;
        }
        let on_board = |r: Rank| self.cards.iter().any(|c| c.rank() == r);
        let free = [a.rank(), b.rank()].into_iter().filter(|r| !on_board(*r)).max();
        match free {
            None => KickerTier::None,
            Some(r) if r >= Rank::QUEEN => KickerTier::High,
            Some(r) if r >= Rank::TEN => KickerTier::Mid,
            Some(_) => KickerTier::Low,
        }
    }

    /// Score after the overlay, before rounding.
    pub fn score(&self, hole: Hole) -> f64 {
        let f = self.features(hole);
        (f.base + self.rsm.overlay.get(&f.bucket)).clamp(0.0, 10.0)
    }

    pub fn category(&self, hole: Hole) -> RsCategory {
        RsCategory::from_score(self.score(hole))
    }

    /// Category of a combo, cached for the whole grid on first use. Combos
    /// that collide with the board read as Niente.
    pub fn combo_category(&self, combo: Combo) -> RsCategory {
        let cats = self.categories.get_or_init(|| {
            Combo::all()
                .map(|c| {
                    if c.set().intersects(self.set) {
                        RsCategory::NIENTE
                    } else {
                        self.category(c.hole())
                    }
                })
                .collect()
        });
        cats[combo.index()]
    }
}

fn running_max(mut t: [HandValue; 8]) -> [HandValue; 8] {
    for i in 1..8 {
        if t[i] < t[i - 1] {
            t[i] = t[i - 1];
        }
    }
    t
}

/// Thresholds for a board without a pair. `ranks` is descending and distinct.
fn unpaired_ladder(rules: &RsmRules, ranks: &[Rank]) -> [HandValue; 8] {
    let top = ranks[0];
    let second = ranks.get(1).copied();
    let weak_floor = match rules.weak_pair {
        WeakPair::Bottom => *ranks.last().unwrap(),
        WeakPair::Second => second.unwrap_or(top),
    };
    let two_pair = HandValue::new(Category::TwoPair, &[]);
    let trips = HandValue::new(Category::Trips, &[]);
    let over = match Rank::new(top.index() + 1) {
        Some(r) => HandValue::new(Category::HighCard, &[r]),
        None => HandValue::new(Category::Pair, &[Rank::TWO]),
    };
    let kick = |want: Rank| kicker_at_least(want, second, &[top]).map_or(two_pair, |k| pair_value(top, Some(k)));
    let excellent = if top < rules.big_overpair {
        pair_value(rules.big_overpair, None)
    } else {
        two_pair
    };
    running_max([
        over,
        pair_value(weak_floor, None),
        pair_value(top, None),
        kick(rules.decent_kicker),
        kick(rules.good_kicker),
        kick(rules.great_kicker),
        excellent,
        trips,
    ])
}

/// Thresholds for a board holding exactly one pair of rank `pair`. `others`
/// are the remaining board ranks, descending.
fn paired_ladder(rules: &RsmRules, pair: Rank, others: &[Rank]) -> [HandValue; 8] {
    let trips = HandValue::new(Category::Trips, &[]);
    let full = HandValue::new(Category::FullHouse, &[]);
    let two_pair = HandValue::new(Category::TwoPair, &[]);
    let top = others[0];
    let second = others.get(1).copied();
    let weak_floor = match rules.weak_pair {
        WeakPair::Bottom => *others.last().unwrap(),
        WeakPair::Second => second.unwrap_or(top),
    };
    let over = match Rank::new(top.index() + 1).filter(|r| *r != pair) {
        Some(r) => pair_value(pair, Some(r)),
        None => match Rank::new(top.index() + 2) {
            Some(r) => pair_value(pair, Some(r)),
            None => two_pair,
        },
    };
    let kick = |want: Rank| kicker_at_least(want, second, &[pair, top]).map_or(trips, |k| two_pair_value(top, pair, Some(k)));
    let (excellent, monster) = if top < rules.big_overpair {
        (two_pair_value(rules.big_overpair, pair, None), trips)
    } else {
        (trips, full)
    };
    running_max([
        over,
        two_pair_value(weak_floor, pair, None),
        two_pair_value(top, pair, None),
        kick(rules.decent_kicker),
        kick(rules.good_kicker),
        kick(rules.great_kicker),
        excellent,
        monster,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(hole: &str, board: &str) -> RsCategory {
        Rsm::default().relative_strength(hole.parse().unwrap(), &board.parse().unwrap()).unwrap()
    }

    #[test]
    fn top_set_is_nuts() {
        assert_eq!(rs("9h9s", "9d5s2c"), RsCategory::NUTS);
        assert_eq!(rs("5h5d", "9d5s2c"), RsCategory::NUTS);
        assert_eq!(rs("2h2d", "9d5s2c"), RsCategory::NUTS);
        assert!(rs("9h5h", "9d5s2c") < RsCategory::NUTS);
    }

    #[test]
    fn busted_draw_on_river() {
        assert!(rs("4d3d", "9d5s2c2dKs") <= RsCategory::HARDLY_ANYTHING);
    }

    #[test]
    fn combo_draw_on_turn_is_at_least_fair() {
        assert!(rs("4d3d", "9d5s2c2d") >= RsCategory::FAIR);
    }

    #[test]
    fn quads_on_paired_board_is_alcatraz() {
        assert_eq!(rs("2h2s", "9d5s2c2d"), RsCategory::ALCATRAZ);
        assert_eq!(rs("2h2s", "9d5s2c2dKs"), RsCategory::ALCATRAZ);
    }

    #[test]
    fn overpairs_and_top_pair() {
        assert_eq!(rs("KhKd", "9d5s2c"), RsCategory::EXCELLENT);
        assert_eq!(rs("ThTd", "9d5s2c"), RsCategory::GREAT);
        assert_eq!(rs("Ah9c", "9d5s2c"), RsCategory::GREAT);
        assert_eq!(rs("9c3h", "9d5s2c"), RsCategory::FAIR);
        assert_eq!(rs("AhKd", "9d5s2c"), RsCategory::HARDLY_ANYTHING);
        assert_eq!(rs("8h7d", "Kd5s2c"), RsCategory::NIENTE);
    }

    #[test]
    fn preflop_is_unsupported() {
        let r = Rsm::default().relative_strength("AhAd".parse().unwrap(), &Board::preflop());
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn zero_delta_is_identity_and_clamp_enforced() {
        let mut rsm = Rsm::default();
        let board: Board = "9d5s2c".parse().unwrap();
        let hole: Hole = "Ah9c".parse().unwrap();
        let before = rsm.view(&board).unwrap().score(hole);
        let bucket = rsm.view(&board).unwrap().features(hole).bucket;
        rsm.apply_delta(bucket, 0.0).unwrap();
        assert_eq!(rsm.view(&board).unwrap().score(hole), before);
        assert!(matches!(rsm.apply_delta(bucket, 1.6), Err(Error::ClampViolation { .. })));
    }

    #[test]
    fn reinforcement_then_correction_cancels() {
        let mut rsm = Rsm::default();
        let bucket = BucketKey {
            made: 3,
            kicker: KickerTier::Low,
            draw: DrawTier::None,
            texture: 0,
        };
        rsm.apply_delta(bucket, 0.1).unwrap();
        rsm.apply_delta(bucket, -0.1).unwrap();
        assert!(rsm.overlay().get(&bucket).abs() < 1e-12);
    }

    #[test]
    fn repeated_deltas_cross_a_boundary_within_bound() {
        let mut rsm = Rsm::default();
        let board: Board = "9d5s2c".parse().unwrap();
        let hole: Hole = "9c3h".parse().unwrap();
        let start = rsm.relative_strength(hole, &board).unwrap();
        let bucket = rsm.view(&board).unwrap().features(hole).bucket;
        let delta: f64 = 0.1;
        let bound = (1.0 / delta).ceil() as usize;
        let mut crossed = None;
        for k in 1..=bound {
            rsm.apply_delta(bucket, delta).unwrap();
            if rsm.relative_strength(hole, &board).unwrap() != start {
                crossed = Some(k);
                break;
            }
        }
        assert!(crossed.is_some_and(|k| k <= bound));
    }

    #[test]
    fn overlay_json_round_trip() {
        let mut rsm = Rsm::default();
        let bucket = BucketKey {
            made: 2,
            kicker: KickerTier::High,
            draw: DrawTier::Gutshot,
            texture: 7,
        };
        rsm.apply_delta(bucket, -0.3).unwrap();
        let json = serde_json::to_string(rsm.overlay()).unwrap();
        let back: Overlay = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, rsm.overlay());
    }
}
