use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cards::Hole;
use crate::range::{Combo, ComboGrid, HandClass, RangeChart};

use super::Archetype;

/// Multiplicative showdown factors, applied in log space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShowdownFactors {
    /// Widening of the revealed class for the player when it was outside
    /// the assigned range.
    pub player: f64,
    /// Same, for every player of the archetype.
    pub archetype: f64,
    /// Reinforcement for the player when the read was right.
    pub reinforce: f64,
    /// Play weight a multiplier of 2 grants to a class the chart omits.
    pub widen_floor: f64,
}

impl Default for ShowdownFactors {
    fn default() -> Self {
        ShowdownFactors {
            player: 1.5,
            archetype: 1.02,
            reinforce: 1.05,
            widen_floor: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub class: HandClass,
    pub inside: bool,
    /// Log-multiplier added for the player.
    pub player_delta: f64,
    /// Log-multiplier added for the archetype.
    pub archetype_delta: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
struct ClassLogs(BTreeMap<u8, f64>);

impl ClassLogs {
    fn get(&self, class: HandClass) -> f64 {
        self.0.get(&(class.index() as u8)).copied().unwrap_or(0.0)
    }

    fn add(&mut self, class: HandClass, delta: f64) {
        *self.0.entry(class.index() as u8).or_insert(0.0) += delta;
    }
}

/// Per-player and per-archetype range multipliers learned at showdown.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RangeAdjustments {
    factors: ShowdownFactors,
    player: BTreeMap<String, ClassLogs>,
    archetype: BTreeMap<Archetype, ClassLogs>,
}

impl RangeAdjustments {
    pub fn new(factors: ShowdownFactors) -> RangeAdjustments {
        RangeAdjustments {
            factors,
            ..RangeAdjustments::default()
        }
    }

    pub fn factors(&self) -> ShowdownFactors {
        self.factors
    }

    pub fn player_log(&self, player: &str, class: HandClass) -> f64 {
        self.player.get(player).map_or(0.0, |l| l.get(class))
    }

    pub fn archetype_log(&self, arch: Archetype, class: HandClass) -> f64 {
        self.archetype.get(&arch).map_or(0.0, |l| l.get(class))
    }

    pub fn multiplier(&self, player: &str, arch: Archetype, class: HandClass) -> f64 {
        (self.player_log(player, class) + self.archetype_log(arch, class)).exp()
    }

    /// Compares a revealed hand with the range assigned at showdown. A miss
    /// widens the player's chart substantially and the archetype's slightly;
    /// a hit reinforces the player's chart only.
    pub fn showdown_refine(&mut self, player: &str, arch: Archetype, revealed: Hole, assigned: &ComboGrid) -> Refinement {
        let class = Combo::from_hole(revealed).class();
        let inside = assigned.weight(Combo::from_hole(revealed)) > 0.0;
        let (player_delta, archetype_delta) = if inside {
            (self.factors.reinforce.ln(), 0.0)
        } else {
            (self.factors.player.ln(), self.factors.archetype.ln())
        };
        self.player.entry(player.to_string()).or_default().add(class, player_delta);
        if archetype_delta != 0.0 {
            self.archetype.entry(arch).or_default().add(class, archetype_delta);
        }
        Refinement {
            class,
            inside,
            player_delta,
            archetype_delta,
        }
    }

    /// Chart with the learned multipliers applied. A class the chart omits
    /// receives `(m - 1) * widen_floor` so widening can reach it.
    pub fn adjust_chart(&self, player: &str, arch: Archetype, chart: &RangeChart) -> RangeChart {
        let touched = self.player.contains_key(player) || self.archetype.contains_key(&arch);
        if !touched {
            return chart.clone();
        }
        let grid = chart.grid().map_weights(|c, w| {
            let m = self.multiplier(player, arch, c.class());
            let widened = if m > 1.0 { w * m + (m - 1.0) * self.factors.widen_floor } else { w * m };
            widened.min(1.0)
        });
        RangeChart::new(grid).expect("weights clamped to [0, 1]")
    }

    /// Same adjustment applied to an assigned grid, with weights read
    /// relative to its heaviest combo. The result is not normalized.
    pub fn adjust_grid(&self, player: &str, arch: Archetype, grid: &ComboGrid) -> ComboGrid {
        let touched = self.player.contains_key(player) || self.archetype.contains_key(&arch);
        let max = grid.weights().iter().copied().fold(0.0, f64::max);
        if !touched || max <= 0.0 {
            return grid.clone();
        }
        grid.map_weights(|c, w| {
            let m = self.multiplier(player, arch, c.class());
            let w = w / max;
            let widened = if m > 1.0 { w * m + (m - 1.0) * self.factors.widen_floor } else { w * m };
            widened.min(1.0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hole(s: &str) -> Hole {
        s.parse().unwrap()
    }

    #[test]
    fn hit_reinforces_player_only() {
        let mut adj = RangeAdjustments::default();
        let grid = ComboGrid::single(Combo::from_hole(hole("AhKh")));
        let r = adj.showdown_refine("v", Archetype::Fish, hole("AhKh"), &grid);
        assert!(r.inside);
        assert!((r.player_delta - 1.05f64.ln()).abs() < 1e-12);
        assert_eq!(adj.archetype_log(Archetype::Fish, r.class), 0.0);
    }

    #[test]
    fn miss_widens_player_and_archetype() {
        let mut adj = RangeAdjustments::default();
        let grid = ComboGrid::single(Combo::from_hole(hole("AhKh")));
        let r = adj.showdown_refine("v", Archetype::Fish, hole("7c2d"), &grid);
        assert!(!r.inside);
        let chart = RangeChart::parse("AKs 1").unwrap();
        let wide = adj.adjust_chart("v", Archetype::Fish, &chart);
        assert!(wide.play_weight(Combo::from_hole(hole("7c2d"))) > 0.0);
        assert!(wide.play_weight(Combo::from_hole(hole("7s2h"))) > 0.0);
        let other = adj.adjust_chart("w", Archetype::Fish, &chart);
        assert!(other.play_weight(Combo::from_hole(hole("7c2d"))) > 0.0);
        assert!(other.play_weight(Combo::from_hole(hole("7c2d"))) < wide.play_weight(Combo::from_hole(hole("7c2d"))));
    }
}
