//! Range reshaping templates and the range-reading calculus built on them:
//! reshaping a grid after an observed action, the strength distribution of
//! a grid, and the chance the hero is currently beaten.

mod dispatch;

use std::collections::BTreeMap;
use std::fmt;

use crate::cards::{evaluate_set, Board, CardSet, Hole};
use crate::error::{Error, Result};
use crate::range::{ComboGrid, DeadCards};
use crate::rsm::{BoardView, RsCategory};

pub use dispatch::{parse_dispatch, ActorRole, DispatchRule, RetDispatch, RetKey, DEFAULT_DISPATCH};

pub const FLAT_ID: &str = "RET11";
pub const DEFAULT_RETS: &str = include_str!("../../data/rets.txt");

/// Likelihood weights per strength category for one observed action.
#[derive(Debug, Clone, PartialEq)]
pub struct Ret {
    pub id: String,
    pub label: String,
    pub weights: [f64; RsCategory::COUNT],
    pub description: String,
}

impl Ret {
    pub fn new(id: impl Into<String>, weights: [f64; RsCategory::COUNT]) -> Result<Ret> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid("template weights must be finite and nonnegative"));
        }
        if weights.iter().all(|w| *w == 0.0) {
            return Err(Error::invalid("template needs at least one positive weight"));
        }
        Ok(Ret {
            id: id.into(),
            label: String::new(),
            weights,
            description: String::new(),
        })
    }

    pub fn flat() -> Ret {
        Ret::new(FLAT_ID, [1.0; RsCategory::COUNT]).unwrap()
    }

    pub fn weight(&self, cat: RsCategory) -> f64 {
        self.weights[cat.index()]
    }

    pub fn is_flat(&self) -> bool {
        self.weights.iter().all(|w| *w == self.weights[0])
    }

    /// Same shape, every weight multiplied by `k > 0`.
    pub fn scaled(&self, k: f64) -> Ret {
        let mut r = self.clone();
        for w in &mut r.weights {
            *w *= k;
        }
        r
    }
}

/// Templates keyed by id.
#[derive(Debug, Clone)]
pub struct RetSet {
    rets: BTreeMap<String, Ret>,
}

impl RetSet {
    pub fn defaults() -> RetSet {
        load_ret_set(DEFAULT_RETS).expect("shipped template file parses")
    }

    pub fn get(&self, id: &str) -> Option<&Ret> {
        self.rets.get(id)
    }

    pub fn require(&self, id: &str) -> Result<&Ret> {
        self.get(id).ok_or_else(|| Error::Config(format!("unknown template {id}")))
    }

    pub fn flat(&self) -> &Ret {
        &self.rets[FLAT_ID]
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.rets.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.rets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rets.is_empty()
    }
}

/// Parses `id; label; w0 .. w10; description` lines (`#` comments).
pub fn load_ret_set(text: &str) -> Result<RetSet> {
    let mut rets = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.splitn(4, ';').map(str::trim).collect();
        let [id, label, weights, description] = fields.as_slice() else {
            return Err(Error::parse(n, "expected `id; label; w0 .. w10; description`"));
        };
        if id.is_empty() {
            return Err(Error::parse(n, "empty template id"));
        }
        let ws: Vec<f64> = weights
            .split_whitespace()
            .map(|w| w.parse::<f64>().map_err(|_| Error::parse(n, format!("bad weight {w:?}"))))
            .collect::<Result<_>>()?;
        let ws: [f64; RsCategory::COUNT] = ws
            .try_into()
            .map_err(|v: Vec<f64>| Error::parse(n, format!("expected 11 weights, got {}", v.len())))?;
        let mut ret = Ret::new(*id, ws).map_err(|e| Error::parse(n, e.to_string()))?;
        ret.label = label.to_string();
        ret.description = description.to_string();
        if rets.insert(id.to_string(), ret).is_some() {
            return Err(Error::parse(n, format!("duplicate template id {id}")));
        }
    }
    if rets.is_empty() {
        return Err(Error::parse(0, "no templates defined"));
    }
    match rets.get(FLAT_ID) {
        Some(r) if r.is_flat() => {}
        Some(_) => return Err(Error::Config(format!("{FLAT_ID} must be flat"))),
        None => return Err(Error::Config(format!("template set lacks the flat template {FLAT_ID}"))),
    }
    Ok(RetSet { rets })
}

/// Multiplies each combo's weight by the template weight of its strength
/// category on this board and renormalizes. Never adds support.
pub fn reshape(view: &BoardView<'_>, grid: &ComboGrid, ret: &Ret) -> Result<ComboGrid> {
    let board = view.board_set();
    grid.map_weights(|c, w| {
        if w <= 0.0 || c.set().intersects(board) {
            0.0
        } else {
            w * ret.weight(view.combo_category(c))
        }
    })
    .normalized()
}

/// Probability mass over the eleven strength categories.
#[derive(Clone, Copy, PartialEq)]
pub struct RsDistribution {
    pub mass: [f64; RsCategory::COUNT],
}

impl fmt::Debug for RsDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, m) in self.mass.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{:.3}", m)?;
        }
        f.write_str("]")
    }
}

impl RsDistribution {
    pub fn unit(cat: RsCategory) -> RsDistribution {
        let mut mass = [0.0; RsCategory::COUNT];
        mass[cat.index()] = 1.0;
        RsDistribution { mass }
    }

    pub fn get(&self, cat: RsCategory) -> f64 {
        self.mass[cat.index()]
    }

    pub fn at_least(&self, cat: RsCategory) -> f64 {
        self.mass[cat.index()..].iter().sum()
    }

    pub fn at_most(&self, cat: RsCategory) -> f64 {
        self.mass[..=cat.index()].iter().sum()
    }

    /// Categories sorted by descending mass; ties resolve to the lower category.
    pub fn ranked(&self) -> Vec<RsCategory> {
        let mut cats: Vec<RsCategory> = RsCategory::all().collect();
        cats.sort_by(|a, b| self.get(*b).total_cmp(&self.get(*a)).then(a.cmp(b)));
        cats
    }

    pub fn most_likely(&self) -> RsCategory {
        self.ranked()[0]
    }

    pub fn top_two(&self) -> [RsCategory; 2] {
        let r = self.ranked();
        [r[0], r[1]]
    }

    pub fn mean(&self) -> f64 {
        self.mass.iter().enumerate().map(|(i, m)| i as f64 * m).sum()
    }
}

/// Strength distribution of `grid` on the view's board. Combos touching the
/// board are ignored; an empty grid yields all-zero mass.
pub fn rs_distribution(view: &BoardView<'_>, grid: &ComboGrid) -> RsDistribution {
    let board = view.board_set();
    let mut mass = [0.0; RsCategory::COUNT];
    let mut total = 0.0;
    for (c, w) in grid.iter_weighted() {
        if w > 0.0 && !c.set().intersects(board) {
            mass[view.combo_category(c).index()] += w;
            total += w;
        }
    }
    if total > 0.0 {
        for m in &mut mass {
            *m /= total;
        }
    }
    RsDistribution { mass }
}

/// Chance the hero is beaten right now: normalized weight of live combos
/// whose current best hand outranks the hero's on this board.
pub fn chib(hero: Hole, grid: &ComboGrid, board: &Board) -> Result<f64> {
    let board_set = board.set();
    if hero.set().intersects(board_set) {
        return Err(Error::invalid("hero cards collide with the board"));
    }
    let dead: CardSet = board_set.union(hero.set());
    let hero_value = evaluate_set(board_set.union(hero.set()));
    let (mut beat, mut total) = (0.0, 0.0);
    for (c, w) in grid.iter_weighted() {
        if w <= 0.0 || c.set().intersects(dead) {
            continue;
        }
        total += w;
        if evaluate_set(board_set.union(c.set())) > hero_value {
            beat += w;
        }
    }
    if total <= 0.0 {
        return Err(Error::DegenerateRange);
    }
    Ok((beat / total).clamp(0.0, 1.0))
}

/// One opponent's evolving range within a hand.
#[derive(Debug, Clone)]
pub struct RangeTracker {
    grid: ComboGrid,
    applied: Vec<String>,
    degenerate: bool,
}

impl RangeTracker {
    pub fn new(grid: ComboGrid) -> RangeTracker {
        RangeTracker {
            grid,
            applied: Vec::new(),
            degenerate: false,
        }
    }

    pub fn grid(&self) -> &ComboGrid {
        &self.grid
    }

    /// Template ids applied so far, in order.
    pub fn applied(&self) -> &[String] {
        &self.applied
    }

    /// Whether a step emptied the range and it fell back to uniform.
    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn strip(&mut self, dead: DeadCards) {
        let (g, support) = self.grid.strip(dead);
        self.degenerate |= support == crate::range::Support::Degenerate;
        self.grid = g;
    }

    pub fn apply(&mut self, view: &BoardView<'_>, ret: &Ret, dead: DeadCards) {
        self.applied.push(ret.id.clone());
        match reshape(view, &self.grid, ret) {
            Ok(g) => self.grid = g,
            Err(_) => {
                self.degenerate = true;
                self.grid = crate::range::uniform_live(dead);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rsm::Rsm;

    #[test]
    fn shipped_set_has_case_templates() {
        let set = RetSet::defaults();
        for id in ["RET11", "RET18", "RET33", "RET73"] {
            assert!(set.get(id).is_some(), "{id}");
        }
        assert!(set.flat().is_flat());
    }

    #[test]
    fn loader_errors() {
        assert!(load_ret_set("").is_err());
        assert!(load_ret_set("# only comments\n").is_err());
        let flat = "RET11; flat; 1 1 1 1 1 1 1 1 1 1 1; baseline";
        let dup = format!("{flat}\n{flat}");
        assert!(matches!(load_ret_set(&dup), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_ret_set("RET11; flat; 1 1 1; short"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_ret_set("RET18; x; 1 1 1 1 1 1 1 1 1 1 1; no flat"), Err(Error::Config(_))));
        assert!(load_ret_set(flat).is_ok());
    }

    #[test]
    fn nuts_only_template_collapses_to_nut_combos() {
        let rsm = Rsm::default();
        let board: Board = "9d5s2c".parse().unwrap();
        let view = rsm.view(&board).unwrap();
        let (g, _) = ComboGrid::uniform().strip(DeadCards::from_set(board.set()));
        let mut w = [0.0; 11];
        w[9] = 1.0;
        let out = reshape(&view, &g, &Ret::new("N", w).unwrap()).unwrap();
        for c in out.support() {
            assert_eq!(view.combo_category(c), RsCategory::NUTS);
        }
        // 99 (3), 55 (3), 22 (3)
        assert_eq!(out.support_size(), 9);
    }

    #[test]
    fn single_combo_distribution_is_unit() {
        let rsm = Rsm::default();
        let board: Board = "9d5s2c".parse().unwrap();
        let view = rsm.view(&board).unwrap();
        let combo = "AhKd".parse().unwrap();
        let d = rs_distribution(&view, &ComboGrid::single(combo));
        assert_eq!(d, RsDistribution::unit(view.combo_category(combo)));
    }

    #[test]
    fn chib_edges() {
        let board: Board = "9d5s2c".parse().unwrap();
        let hero: Hole = "9h9s".parse().unwrap();
        let (g, _) = ComboGrid::uniform().strip(DeadCards::from_set(board.set().union(hero.set())));
        assert_eq!(chib(hero, &g, &board).unwrap(), 0.0);
        let weak: Hole = "4h3h".parse().unwrap();
        let beats = ComboGrid::single("AhAd".parse().unwrap());
        assert_eq!(chib(weak, &beats, &board).unwrap(), 1.0);
        let dead = ComboGrid::single("9h8h".parse().unwrap());
        assert!(matches!(chib(hero, &dead, &board), Err(Error::DegenerateRange)));
    }
}
