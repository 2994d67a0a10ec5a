use std::fmt;

use crate::action::Street;

use super::stats::{PlayerStats, Stat};

/// Deviation at which conviction saturates before sample discounting.
pub const FULL_DEVIATION: f64 = 0.35;
pub const MAX_CONVICTION: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExploitKind {
    /// Continuation-bet the flop as a bluff.
    CbetBluff,
    /// Fire a second barrel on the turn.
    DoubleBarrel,
    TripleBarrel,
    /// Raise light from late position to take the blinds.
    StealRaise,
    /// Bet thin for value and stop bluffing.
    ValueOnly,
    /// Isolate a loose player with wider pre-flop raises.
    IsoRaise,
}

impl ExploitKind {
    pub fn name(self) -> &'static str {
        match self {
            ExploitKind::CbetBluff => "cbet-bluff",
            ExploitKind::DoubleBarrel => "double-barrel",
            ExploitKind::TripleBarrel => "triple-barrel",
            ExploitKind::StealRaise => "steal-raise",
            ExploitKind::ValueOnly => "value-only",
            ExploitKind::IsoRaise => "iso-raise",
        }
    }
}

impl fmt::Display for ExploitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKey {
    Vpip,
    FoldToCbet(Street),
    FoldToSteal,
}

impl StatKey {
    pub fn read(self, s: &PlayerStats) -> Stat {
        match self {
            StatKey::Vpip => s.vpip,
            StatKey::FoldToCbet(street) => s.fold_to_cbet(street),
            StatKey::FoldToSteal => s.fold_to_steal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExploitRule {
    pub kind: ExploitKind,
    pub stat: StatKey,
    /// Fires when the stat is at or above the threshold; below when false.
    pub above: bool,
    pub threshold: f64,
    /// Population mean the deviation is measured from.
    pub baseline: f64,
    pub min_sample: u32,
}

pub const MIN_EXPLOIT_SAMPLE: u32 = 20;

pub fn default_rules() -> Vec<ExploitRule> {
    let rule = |kind, stat, above, threshold, baseline| ExploitRule {
        kind,
        stat,
        above,
        threshold,
        baseline,
        min_sample: MIN_EXPLOIT_SAMPLE,
    };
    vec![
        rule(ExploitKind::CbetBluff, StatKey::FoldToCbet(Street::Flop), true, 0.60, 0.45),
        rule(ExploitKind::DoubleBarrel, StatKey::FoldToCbet(Street::Turn), true, 0.60, 0.45),
        rule(ExploitKind::TripleBarrel, StatKey::FoldToCbet(Street::River), true, 0.60, 0.45),
        rule(ExploitKind::StealRaise, StatKey::FoldToSteal, true, 0.70, 0.55),
        rule(ExploitKind::ValueOnly, StatKey::FoldToCbet(Street::Flop), false, 0.25, 0.45),
        rule(ExploitKind::IsoRaise, StatKey::Vpip, true, 0.40, 0.25),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Exploit {
    pub target: String,
    pub kind: ExploitKind,
    pub stat: StatKey,
    pub threshold: f64,
    pub observed: f64,
    pub sample: u32,
    pub min_sample: u32,
    pub conviction: f64,
}

/// `min(1, deviation / FULL_DEVIATION) * (1 - 1/sqrt(n))`, capped.
pub fn conviction(deviation: f64, n: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let base = (deviation.abs() / FULL_DEVIATION).min(1.0);
    (base * (1.0 - 1.0 / f64::from(n).sqrt())).min(MAX_CONVICTION)
}

/// Every rule whose stat crosses its threshold on enough sample, strongest
/// conviction first.
pub fn search_exploits(target: &str, stats: &PlayerStats, rules: &[ExploitRule]) -> Vec<Exploit> {
    let mut out: Vec<Exploit> = rules
        .iter()
        .filter_map(|r| {
            let stat = r.stat.read(stats);
            let observed = stat.rate()?;
            let crossed = if r.above { observed >= r.threshold } else { observed <= r.threshold };
            (crossed && stat.n >= r.min_sample).then(|| Exploit {
                target: target.to_string(),
                kind: r.kind,
                stat: r.stat,
                threshold: r.threshold,
                observed,
                sample: stat.n,
                min_sample: r.min_sample,
                conviction: conviction(observed - r.baseline, stat.n),
            })
        })
        .collect();
    out.sort_by(|a, b| b.conviction.total_cmp(&a.conviction).then(a.kind.cmp(&b.kind)));
    out
}
