//! Decision layer: style control, the general algorithm, exploit search,
//! deception lines and the arbiter that picks one action.

mod context;
mod ga;
mod haa;
mod hero;
mod lawnmower;
mod ma;
mod reader;
mod sad;

use std::fmt;

use crate::action::ActionKind;
use crate::error::{Error, Result};

pub use context::{action_level_index, limpers, pot_odds, DecisionContext, OpponentView};
pub use ga::{ga_recommend, rs_req_call, rs_req_continue, GaParams};
pub use haa::{haa_begin_hand, Baseline, HaaConfig, Mode, StyleState, TableRead, TILT_TRIGGER};
pub use hero::{Hero, HeroConfig, HeroHand};
pub use lawnmower::{lawnmower_recommend, update_perceived_hero_range, PerceivedHeroRange};
pub use ma::{arbitrate, ma_decide, MaParams};
pub use reader::{preflop_facing, read_kind, HandReader, Models, ReadStep};
pub use sad::sad_recommend;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Ga,
    Sad,
    Lawnmower,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Ga => "GA",
            Source::Sad => "SAD",
            Source::Lawnmower => "Lawnmower",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A module's suggested action.
#[derive(Debug, Clone, PartialEq)]
pub struct Recommendation {
    pub action: ActionKind,
    /// Bet or raise-to amount in big blinds; 0 for every other action.
    pub size: f64,
    pub conviction: f64,
    pub source: Source,
    pub rationale: String,
    /// Metadata only: never slept on.
    pub think_ms: u32,
}

impl Recommendation {
    pub fn new(action: ActionKind, size: f64, conviction: f64, source: Source, rationale: impl Into<String>) -> Result<Recommendation> {
        let sized = matches!(action, ActionKind::Bet | ActionKind::Raise);
        if sized != (size > 0.0) || !size.is_finite() {
            return Err(Error::Contract(format!("{action} cannot carry size {size}")));
        }
        if !(0.0..=1.0).contains(&conviction) {
            return Err(Error::Contract(format!("conviction {conviction} outside [0, 1]")));
        }
        Ok(Recommendation {
            action,
            size,
            conviction,
            source,
            rationale: rationale.into(),
            think_ms: 0,
        })
    }

    /// An unsized action with conviction clamped into range.
    pub fn plain(action: ActionKind, conviction: f64, source: Source, rationale: impl Into<String>) -> Recommendation {
        debug_assert!(!matches!(action, ActionKind::Bet | ActionKind::Raise));
        Recommendation {
            action,
            size: 0.0,
            conviction: conviction.clamp(0.0, 1.0),
            source,
            rationale: rationale.into(),
            think_ms: 0,
        }
    }

    /// A bet or raise to `size` big blinds.
    pub fn sized(action: ActionKind, size: f64, conviction: f64, source: Source, rationale: impl Into<String>) -> Recommendation {
        debug_assert!(matches!(action, ActionKind::Bet | ActionKind::Raise));
        Recommendation {
            action,
            size: size.max(0.01),
            conviction: conviction.clamp(0.0, 1.0),
            source,
            rationale: rationale.into(),
            think_ms: 0,
        }
    }

    pub fn with_think(mut self, ms: u32) -> Recommendation {
        self.think_ms = ms;
        self
    }
}

impl fmt::Display for Recommendation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.source, self.action)?;
        if self.size > 0.0 {
            write!(f, "@{:.2}", self.size)?;
        }
        write!(f, "({:.2}) {}", self.conviction, self.rationale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_only_on_bets_and_raises() {
        assert!(Recommendation::new(ActionKind::Bet, 3.0, 0.5, Source::Ga, "").is_ok());
        assert!(Recommendation::new(ActionKind::Bet, 0.0, 0.5, Source::Ga, "").is_err());
        assert!(Recommendation::new(ActionKind::Call, 2.0, 0.5, Source::Ga, "").is_err());
        assert!(Recommendation::new(ActionKind::Call, 0.0, 1.5, Source::Ga, "").is_err());
    }
}
