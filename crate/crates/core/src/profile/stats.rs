use serde::{Deserialize, Serialize};

use crate::action::Street;

/// A frequency with its sample count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stat {
    pub hits: u32,
    pub n: u32,
}

impl Stat {
    pub fn record(&mut self, hit: bool) {
        self.n += 1;
        self.hits += u32::from(hit);
    }

    /// Observed frequency, `None` before the first observation.
    pub fn rate(self) -> Option<f64> {
        (self.n > 0).then(|| f64::from(self.hits) / f64::from(self.n))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerStats {
    pub hands: u32,
    pub vpip: Stat,
    pub pfr: Stat,
    /// Post-flop bets and raises.
    pub aggressive: u32,
    /// Post-flop calls.
    pub calls: u32,
    /// Indexed flop, turn, river.
    pub fold_to_cbet: [Stat; 3],
    pub donk: Stat,
    pub fold_to_steal: Stat,
    pub showdown: Stat,
}

impl PlayerStats {
    pub fn vpip_rate(&self) -> f64 {
        self.vpip.rate().unwrap_or(0.0)
    }

    pub fn pfr_rate(&self) -> f64 {
        self.pfr.rate().unwrap_or(0.0)
    }

    /// Post-flop (bets + raises) / calls. With no calls the count of
    /// aggressive actions is returned so a pure aggressor still reads high.
    pub fn af(&self) -> f64 {
        if self.calls == 0 {
            f64::from(self.aggressive)
        } else {
            f64::from(self.aggressive) / f64::from(self.calls)
        }
    }

    pub fn fold_to_cbet(&self, street: Street) -> Stat {
        match street {
            Street::Preflop => Stat::default(),
            Street::Flop => self.fold_to_cbet[0],
            Street::Turn => self.fold_to_cbet[1],
            Street::River => self.fold_to_cbet[2],
        }
    }

    pub(crate) fn fold_to_cbet_mut(&mut self, street: Street) -> Option<&mut Stat> {
        match street {
            Street::Preflop => None,
            Street::Flop => Some(&mut self.fold_to_cbet[0]),
            Street::Turn => Some(&mut self.fold_to_cbet[1]),
            Street::River => Some(&mut self.fold_to_cbet[2]),
        }
    }
}
