use serde::{Deserialize, Serialize};

use super::Chips;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RakeModel {
    /// Share of the pot, in basis points.
    pub rate_bp: u32,
    /// Cap in big blinds.
    pub cap_bb: f64,
    pub no_flop_no_drop: bool,
}

impl Default for RakeModel {
    fn default() -> Self {
        RakeModel {
            rate_bp: 500,
            cap_bb: 3.0,
            no_flop_no_drop: true,
        }
    }
}

impl RakeModel {
    pub fn none() -> RakeModel {
        RakeModel {
            rate_bp: 0,
            cap_bb: 0.0,
            no_flop_no_drop: true,
        }
    }

    /// Rake on a pot, rounded down to whole chips.
    pub fn rake(&self, pot: Chips, flop_dealt: bool, bb: Chips) -> Chips {
        if pot <= 0 || (self.no_flop_no_drop && !flop_dealt) {
            return 0;
        }
        let raw = pot * Chips::from(self.rate_bp) / 10_000;
        let cap = (self.cap_bb * bb as f64).round() as Chips;
        raw.min(cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capped_and_dropped() {
        let r = RakeModel::default();
        assert_eq!(r.rake(1_000, true, 100), 50);
        assert_eq!(r.rake(100_000, true, 100), 300);
        assert_eq!(r.rake(1_000, false, 100), 0);
        assert_eq!(r.rake(19, true, 100), 0);
    }
}
