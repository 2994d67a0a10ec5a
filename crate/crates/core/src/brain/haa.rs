use rand::Rng;

use crate::cards::DealRng;

/// Default trigger for tilt camouflage.
pub const TILT_TRIGGER: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    /// Tight, medium-aggressive.
    Tmag,
    /// Medium-aggressive.
    Mag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Normal,
    Lag,
    /// Looser, faster play after a run of bad beats, to look tilted.
    TiltCamouflage,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaaConfig {
    /// Per-hand perturbation bound on entry-range share.
    pub vpip_bound: f64,
    pub aggression_bound: f64,
    /// Probability a hand starts from the MAG baseline.
    pub mag_share: f64,
    /// Table profitability score above which LAG mode engages.
    pub lag_threshold: f64,
    pub tilt_trigger: u32,
}

impl Default for HaaConfig {
    fn default() -> Self {
        HaaConfig {
            vpip_bound: 0.02,
            aggression_bound: 0.1,
            mag_share: 0.25,
            lag_threshold: 0.6,
            tilt_trigger: TILT_TRIGGER,
        }
    }
}

impl HaaConfig {
    pub fn fixed() -> HaaConfig {
        HaaConfig {
            vpip_bound: 0.0,
            aggression_bound: 0.0,
            mag_share: 0.0,
            lag_threshold: f64::INFINITY,
            tilt_trigger: u32::MAX,
        }
    }
}

/// Style for one hand. Built only by [`haa_begin_hand`], so it never
/// changes mid-hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StyleState {
    pub baseline: Baseline,
    pub vpip_delta: f64,
    pub aggression_delta: f64,
    pub mode: Mode,
    pub bad_beats: u32,
}

impl Default for StyleState {
    fn default() -> Self {
        StyleState {
            baseline: Baseline::Tmag,
            vpip_delta: 0.0,
            aggression_delta: 0.0,
            mode: Mode::Normal,
            bad_beats: 0,
        }
    }
}

impl StyleState {
    /// Total shift applied to every entry-range share this hand.
    pub fn range_shift(&self) -> f64 {
        let base = match self.baseline {
            Baseline::Tmag => 0.0,
            Baseline::Mag => 0.03,
        };
        let mode = match self.mode {
            Mode::Normal => 0.0,
            Mode::Lag => 0.06,
            Mode::TiltCamouflage => 0.04,
        };
        base + mode + self.vpip_delta
    }

    /// Bonus added to the value of betting, as a share of the pot.
    pub fn aggression_shift(&self) -> f64 {
        let base = match self.baseline {
            Baseline::Tmag => 0.0,
            Baseline::Mag => 0.05,
        };
        let mode = if self.mode == Mode::Lag { 0.1 } else { 0.0 };
        base + mode + self.aggression_delta
    }
}

/// Inputs from outside the hand: never the bankroll.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TableRead {
    /// Consecutive bad beats suffered.
    pub bad_beats: u32,
    /// Share of seated opponents read as loose-passive targets.
    pub profitability: f64,
}

pub fn haa_begin_hand(cfg: &HaaConfig, read: &TableRead, rng: &mut DealRng) -> StyleState {
    let mut draw = |bound: f64| if bound > 0.0 { rng.random_range(-bound..=bound) } else { 0.0 };
    let vpip_delta = draw(cfg.vpip_bound);
    let aggression_delta = draw(cfg.aggression_bound);
    let baseline = if cfg.mag_share > 0.0 && rng.random::<f64>() < cfg.mag_share {
        Baseline::Mag
    } else {
        Baseline::Tmag
    };
    let mode = if read.bad_beats >= cfg.tilt_trigger {
        Mode::TiltCamouflage
    } else if read.profitability > cfg.lag_threshold {
        Mode::Lag
    } else {
        Mode::Normal
    };
    StyleState {
        baseline,
        vpip_delta,
        aggression_delta,
        mode,
        bad_beats: read.bad_beats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_bounds_keep_baseline() {
        let mut rng = DealRng::new(3, 0);
        for _ in 0..50 {
            let s = haa_begin_hand(&HaaConfig::fixed(), &TableRead::default(), &mut rng);
            assert_eq!(s, StyleState::default());
        }
    }

    #[test]
    fn three_bad_beats_trigger_camouflage() {
        let mut rng = DealRng::new(3, 0);
        let read = TableRead {
            bad_beats: 3,
            profitability: 0.0,
        };
        assert_eq!(haa_begin_hand(&HaaConfig::default(), &read, &mut rng).mode, Mode::TiltCamouflage);
        let calm = TableRead { bad_beats: 2, ..read };
        assert_eq!(haa_begin_hand(&HaaConfig::default(), &calm, &mut rng).mode, Mode::Normal);
    }

    #[test]
    fn profitable_table_goes_lag() {
        let mut rng = DealRng::new(3, 0);
        let read = TableRead {
            bad_beats: 0,
            profitability: 0.8,
        };
        assert_eq!(haa_begin_hand(&HaaConfig::default(), &read, &mut rng).mode, Mode::Lag);
    }

    #[test]
    fn perturbations_stay_in_bounds_and_repeat() {
        let cfg = HaaConfig::default();
        let run = |seed| {
            let mut rng = DealRng::new(seed, 0);
            (0..200).map(|_| haa_begin_hand(&cfg, &TableRead::default(), &mut rng)).collect::<Vec<_>>()
        };
        let a = run(11);
        assert_eq!(a, run(11));
        assert!(a
            .iter()
            .all(|s| s.vpip_delta.abs() <= cfg.vpip_bound && s.aggression_delta.abs() <= cfg.aggression_bound));
    }
}
