use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use super::file::parse_range_file;
use super::{Combo, ComboGrid, HandClass, NUM_COMBOS};
use crate::action::{ActionKind, Position};
use crate::error::{Error, Result};
use crate::profile::Archetype;

/// Pre-flop pressure a player faced when acting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Facing {
    Unopened,
    Limped,
    Raised,
    Reraised,
}

impl Facing {
    pub fn name(self) -> &'static str {
        match self {
            Facing::Unopened => "open",
            Facing::Limped => "limped",
            Facing::Raised => "raised",
            Facing::Reraised => "reraised",
        }
    }
}

impl fmt::Display for Facing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreflopContext {
    pub position: Position,
    pub facing: Facing,
    /// The player's own action: check, call, or an aggressive action.
    pub action: ActionKind,
    /// Call amount over pot-after-call, 0 when nothing to call.
    pub pot_odds: f64,
}

/// Play weights in `[0, 1]` per combo: the probability a player enters the
/// pot with that combo.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeChart {
    grid: ComboGrid,
}

impl RangeChart {
    pub fn new(grid: ComboGrid) -> Result<RangeChart> {
        if grid.weights().iter().any(|w| *w > 1.0) {
            return Err(Error::Config("chart play weights must lie in [0, 1]".into()));
        }
        Ok(RangeChart { grid })
    }

    pub fn parse(text: &str) -> Result<RangeChart> {
        RangeChart::new(parse_range_file(text)?.grid())
    }

    pub fn play_weight(&self, c: Combo) -> f64 {
        self.grid.weight(c)
    }

    pub fn grid(&self) -> &ComboGrid {
        &self.grid
    }

    /// Expected fraction of dealt hands entered.
    pub fn mass_fraction(&self) -> f64 {
        self.grid.total() / NUM_COMBOS as f64
    }

    pub fn support_fraction(&self) -> f64 {
        self.grid.support_size() as f64 / NUM_COMBOS as f64
    }

    /// The top `share` of the chart's mass, strongest hands first.
    pub fn top_share(&self, share: f64) -> ComboGrid {
        let mut budget = share.clamp(0.0, 1.0) * self.grid.total();
        let mut out = ComboGrid::empty();
        for c in strength_order() {
            let w = self.grid.weight(*c);
            if w <= 0.0 {
                continue;
            }
            if budget <= 0.0 {
                break;
            }
            let take = w.min(budget);
            out.set_weight(*c, take);
            budget -= take;
        }
        out
    }
}

/// Integer points of the Chen starting-hand formula.
pub fn chen_score(class: HandClass) -> i32 {
    let half_points = |r: u8| -> i32 {
        match r {
            12 => 20,
            11 => 16,
            10 => 14,
            9 => 12,
            r => r as i32 + 2,
        }
    };
    let (hi, lo) = (class.high().index(), class.low().index());
    let mut s = half_points(hi);
    if class.is_pair() {
        return ((s * 2).max(10) + 1).div_euclid(2);
    }
    if class.is_suited() {
        s += 4;
    }
    let gap = hi - lo - 1;
    s -= match gap {
        0 => 0,
        1 => 2,
        2 => 4,
        3 => 8,
        _ => 10,
    };
    if gap <= 1 && hi < 10 {
        s += 2;
    }
    (s + 1).div_euclid(2)
}

/// All combos ordered strongest first by Chen score, ties broken by class.
pub fn strength_order() -> &'static [Combo] {
    static ORDER: std::sync::OnceLock<Vec<Combo>> = std::sync::OnceLock::new();
    ORDER.get_or_init(|| {
        let mut combos: Vec<Combo> = Combo::all().collect();
        combos.sort_by_key(|c| {
            let k = c.class();
            (
                std::cmp::Reverse(chen_score(k)),
                std::cmp::Reverse(k.high()),
                std::cmp::Reverse(k.low()),
                !k.is_suited(),
                c.index(),
            )
        });
        combos
    })
}

const DEFAULT_CHARTS: &[(&str, &str)] = &[
    ("rock", include_str!("../../data/ranges/rock.range")),
    ("tightreg", include_str!("../../data/ranges/tightreg.range")),
    ("medreg", include_str!("../../data/ranges/medreg.range")),
    ("medreg.sb.raised", include_str!("../../data/ranges/medreg.sb.raised.range")),
    ("loosereg", include_str!("../../data/ranges/loosereg.range")),
    ("lag", include_str!("../../data/ranges/lag.range")),
    ("fish", include_str!("../../data/ranges/fish.range")),
    ("station", include_str!("../../data/ranges/station.range")),
    ("whale", include_str!("../../data/ranges/whale.range")),
    ("unknown", include_str!("../../data/ranges/unknown.range")),
    ("hero", include_str!("../../data/ranges/hero.range")),
];

/// Named charts keyed `archetype[.position][.facing]`.
#[derive(Debug, Clone, Default)]
pub struct RangeBook {
    charts: BTreeMap<String, RangeChart>,
}

impl RangeBook {
    pub fn new() -> RangeBook {
        RangeBook::default()
    }

    pub fn defaults() -> RangeBook {
        let mut book = RangeBook::new();
        for (name, text) in DEFAULT_CHARTS {
            book.insert(*name, RangeChart::parse(text).expect("shipped range file parses"));
        }
        book
    }

    /// Loads every `*.range` file in `dir`, named by file stem.
    pub fn load_dir(dir: &Path) -> Result<RangeBook> {
        let mut book = RangeBook::new();
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "range"))
            .collect();
        paths.sort();
        for p in paths {
            let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let text = std::fs::read_to_string(&p)?;
            let chart = RangeChart::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            book.insert(name, chart);
        }
        Ok(book)
    }

    pub fn insert(&mut self, name: impl Into<String>, chart: RangeChart) {
        self.charts.insert(name.into(), chart);
    }

    pub fn get(&self, name: &str) -> Option<&RangeChart> {
        self.charts.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.charts.keys().map(String::as_str)
    }

    /// Most specific chart for the archetype in this spot, and whether it was
    /// a spot-specific override.
    pub fn chart_for(&self, arch: Archetype, position: Position, facing: Facing) -> Result<(&RangeChart, bool)> {
        let a = arch.name();
        let keys = [
            (format!("{a}.{}.{}", position.name(), facing.name()), true),
            (format!("{a}.{}", facing.name()), true),
            (format!("{a}.{}", position.name()), false),
            (a.to_string(), false),
        ];
        keys.iter()
            .find_map(|(k, specific)| self.charts.get(k).map(|c| (c, *specific)))
            .ok_or_else(|| Error::Config(format!("no range chart for archetype {a}")))
    }

    /// Starting grid for a player of `arch` who took `ctx.action` in `ctx`.
    pub fn assign_preflop_range(&self, arch: Archetype, ctx: &PreflopContext) -> Result<ComboGrid> {
        let (chart, specific) = self.chart_for(arch, ctx.position, ctx.facing)?;
        let style = arch.style();
        let raise = chart.top_share(style.raise_share);
        let passive = |c: Combo, w: f64| w - (1.0 - style.trap) * raise.weight(c);
        let grid = match ctx.action {
            ActionKind::Bet | ActionKind::Raise | ActionKind::AllIn => raise,
            // spot-specific charts already hold the flatting range
            ActionKind::Call if specific => chart.grid.clone(),
            ActionKind::Call => {
                let base = chart.grid.map_weights(passive);
                if matches!(ctx.facing, Facing::Raised | Facing::Reraised) {
                    // worse prices trim the bottom of the flatting range
                    let keep = (0.4 + 2.0 * ctx.pot_odds).min(1.0);
                    let top = RangeChart { grid: base.clone() }.top_share(keep);
                    base.map_weights(|c, w| if top.weight(c) > 0.0 { w } else { 0.0 })
                } else {
                    base
                }
            }
            ActionKind::Check => ComboGrid::empty().map_weights(|c, _| 1.0 - (1.0 - style.trap) * raise.weight(c)),
            ActionKind::Fold => return Err(Error::invalid("a folded player has no range")),
        };
        grid.normalized().map_err(|_| Error::Config(format!("empty {} range for {arch}", ctx.action)))
    }
}
