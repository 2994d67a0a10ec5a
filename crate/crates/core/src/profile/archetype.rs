use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Archetype {
    Rock,
    TightReg,
    MediumReg,
    LooseReg,
    Lag,
    Fish,
    CallingStation,
    Whale,
    Unknown,
}

/// Behavioural targets that define a simulated player of an archetype and the
/// shape of the pre-flop range assigned to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Style {
    /// Fraction of entered hands that are raised first in.
    pub raise_share: f64,
    /// Fraction of raising hands still played passively (slow-played).
    pub trap: f64,
    /// Post-flop aggression factor target.
    pub aggression: f64,
    pub fold_to_cbet: f64,
    pub donk_freq: f64,
    /// Whether the player reasons about what the hero holds.
    pub modeling_capable: bool,
}

impl Archetype {
    pub const KNOWN: [Archetype; 8] = [
        Archetype::Rock,
        Archetype::TightReg,
        Archetype::MediumReg,
        Archetype::LooseReg,
        Archetype::Lag,
        Archetype::Fish,
        Archetype::CallingStation,
        Archetype::Whale,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Archetype::Rock => "rock",
            Archetype::TightReg => "tightreg",
            Archetype::MediumReg => "medreg",
            Archetype::LooseReg => "loosereg",
            Archetype::Lag => "lag",
            Archetype::Fish => "fish",
            Archetype::CallingStation => "station",
            Archetype::Whale => "whale",
            Archetype::Unknown => "unknown",
        }
    }

    pub fn is_regular(self) -> bool {
        matches!(self, Archetype::TightReg | Archetype::MediumReg | Archetype::LooseReg | Archetype::Lag)
    }

    pub fn style(self) -> Style {
        let (raise_share, trap, aggression, fold_to_cbet, donk_freq) = match self {
            Archetype::Rock => (0.70, 0.10, 1.5, 0.65, 0.03),
            Archetype::TightReg => (0.75, 0.10, 2.5, 0.45, 0.05),
            Archetype::MediumReg => (0.65, 0.15, 2.2, 0.45, 0.06),
            Archetype::LooseReg => (0.55, 0.15, 2.0, 0.40, 0.08),
            Archetype::Lag => (0.80, 0.05, 4.0, 0.30, 0.10),
            Archetype::Fish => (0.25, 0.50, 1.3, 0.35, 0.15),
            Archetype::CallingStation => (0.10, 0.80, 0.5, 0.15, 0.05),
            Archetype::Whale => (0.08, 0.85, 0.6, 0.20, 0.25),
            Archetype::Unknown => (0.45, 0.30, 1.5, 0.40, 0.08),
        };
        Style {
            raise_share,
            trap,
            aggression,
            fold_to_cbet,
            donk_freq,
            modeling_capable: self.is_regular(),
        }
    }
}

impl fmt::Display for Archetype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Archetype {
    type Err = Error;

    fn from_str(s: &str) -> Result<Archetype> {
        let lower = s.to_ascii_lowercase();
        Archetype::KNOWN
            .into_iter()
            .chain([Archetype::Unknown])
            .find(|a| a.name() == lower)
            .ok_or_else(|| Error::Config(format!("unknown archetype {s:?}")))
    }
}

/// VPIP / aggression bands used by [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub min_hands: u32,
    pub rock_vpip: f64,
    pub tight_vpip: f64,
    pub medium_vpip: f64,
    pub loose_vpip: f64,
    pub whale_vpip: f64,
    pub passive_af: f64,
    pub lag_af: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            min_hands: 30,
            rock_vpip: 0.15,
            tight_vpip: 0.25,
            medium_vpip: 0.30,
            loose_vpip: 0.45,
            whale_vpip: 0.60,
            passive_af: 1.0,
            lag_af: 3.0,
        }
    }
}

/// Maps aggregate (hands, VPIP, AF) to an archetype.
pub fn classify_with(t: &Thresholds, hands: u32, vpip: f64, af: f64) -> Archetype {
    if hands < t.min_hands {
        return Archetype::Unknown;
    }
    if vpip < t.rock_vpip {
        return Archetype::Rock;
    }
    if af > t.lag_af && vpip >= t.tight_vpip {
        return Archetype::Lag;
    }
    if vpip < t.tight_vpip {
        Archetype::TightReg
    } else if vpip < t.medium_vpip {
        Archetype::MediumReg
    } else if vpip < t.loose_vpip {
        if af >= t.passive_af {
            Archetype::LooseReg
        } else {
            Archetype::Fish
        }
    } else if af < t.passive_af {
        if vpip >= t.whale_vpip {
            Archetype::Whale
        } else {
            Archetype::CallingStation
        }
    } else {
        Archetype::Fish
    }
}
