use std::path::Path;
use std::str::FromStr;

use ini::Ini;

use crate::error::{Error, Result};
use crate::profile::Archetype;

use super::rake::RakeModel;
use super::{Chips, BB};

/// Default opponent pool composition by archetype.
pub const DEFAULT_MIX: [(Archetype, f64); 8] = [
    (Archetype::Rock, 0.12),
    (Archetype::TightReg, 0.15),
    (Archetype::MediumReg, 0.15),
    (Archetype::LooseReg, 0.10),
    (Archetype::Lag, 0.08),
    (Archetype::Fish, 0.15),
    (Archetype::CallingStation, 0.13),
    (Archetype::Whale, 0.12),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SessionConfig {
    pub seats: usize,
    pub sb: Chips,
    pub bb: Chips,
    pub rake: RakeModel,
    pub hands: u64,
    pub seed: u64,
    /// Distinct opponents in the fast-fold pool.
    pub pool_size: usize,
    pub mix: Vec<(Archetype, f64)>,
    pub hero_stack: Chips,
    pub bot_stack_min: Chips,
    pub bot_stack_max: Chips,
    /// Chance that any single hero decision fails and forfeits.
    pub failure_rate: f64,
    pub rakeback_bp: u32,
    pub segment: usize,
    /// Learning between hands.
    pub learning: bool,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            seats: 6,
            sb: BB / 2,
            bb: BB,
            rake: RakeModel::default(),
            hands: 10_000,
            seed: 1,
            pool_size: 600,
            mix: DEFAULT_MIX.to_vec(),
            hero_stack: 100 * BB,
            bot_stack_min: 50 * BB,
            bot_stack_max: 200 * BB,
            failure_rate: 0.0,
            rakeback_bp: 690,
            segment: 10_000,
            learning: true,
        }
    }
}

fn value<T: FromStr>(section: &str, key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Config(format!("[{section}] {key}: cannot parse {v:?}")))
}

fn bb_chips(section: &str, key: &str, v: &str) -> Result<Chips> {
    let bbs: f64 = value(section, key, v)?;
    if !(bbs.is_finite() && bbs >= 0.0) {
        return Err(Error::Config(format!("[{section}] {key} must be non-negative")));
    }
    Ok((bbs * BB as f64).round() as Chips)
}

impl SessionConfig {
    /// Parses an INI file; amounts are in big blinds, unknown keys are errors.
    pub fn parse(text: &str) -> Result<SessionConfig> {
        let ini = Ini::load_from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut c = SessionConfig::default();
        let mut mix: Vec<(Archetype, f64)> = Vec::new();
        for (section, props) in &ini {
            let name = section.unwrap_or("");
            for (key, v) in props.iter() {
                match (name, key) {
                    ("table", "seats") => c.seats = value(name, key, v)?,
                    ("table", "sb") => c.sb = bb_chips(name, key, v)?,
                    ("table", "bb") => c.bb = bb_chips(name, key, v)?,
                    ("rake", "rate") => {
                        let r: f64 = value(name, key, v)?;
                        c.rake.rate_bp = (r * 10_000.0).round() as u32;
                    }
                    ("rake", "cap_bb") => c.rake.cap_bb = value(name, key, v)?,
                    ("rake", "no_flop_no_drop") => c.rake.no_flop_no_drop = value(name, key, v)?,
                    ("session", "hands") => c.hands = value(name, key, v)?,
                    ("session", "seed") => c.seed = value(name, key, v)?,
                    ("session", "pool") => c.pool_size = value(name, key, v)?,
                    ("session", "failure_rate") => c.failure_rate = value(name, key, v)?,
                    ("session", "learning") => c.learning = value(name, key, v)?,
                    ("hero", "stack_bb") => c.hero_stack = bb_chips(name, key, v)?,
                    ("bots", "stack_min_bb") => c.bot_stack_min = bb_chips(name, key, v)?,
                    ("bots", "stack_max_bb") => c.bot_stack_max = bb_chips(name, key, v)?,
                    ("mix", arch) => mix.push((arch.parse()?, value(name, key, v)?)),
                    ("metrics", "rakeback") => {
                        let r: f64 = value(name, key, v)?;
                        c.rakeback_bp = (r * 10_000.0).round() as u32;
                    }
                    ("metrics", "segment") => c.segment = value(name, key, v)?,
                    _ => return Err(Error::Config(format!("unknown key [{name}] {key}"))),
                }
            }
        }
        if !mix.is_empty() {
            c.mix = mix;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<SessionConfig> {
        SessionConfig::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(2..=6).contains(&self.seats) {
            return bad("seats must be 2..=6");
        }
        if self.sb <= 0 || self.bb < self.sb {
            return bad("blinds must satisfy 0 < sb <= bb");
        }
        if self.pool_size < self.seats - 1 {
            return bad("pool must fill every opponent seat");
        }
        if self.mix.iter().any(|(_, w)| w.is_nan() || *w < 0.0) || self.mix.iter().map(|(_, w)| w).sum::<f64>() <= 0.0 {
            return bad("mix weights must be non-negative with a positive sum");
        }
        if !(0.0..=1.0).contains(&self.failure_rate) {
            return bad("failure_rate must lie in [0, 1]");
        }
        if self.hero_stack <= 0 || self.bot_stack_min <= 0 || self.bot_stack_max < self.bot_stack_min {
            return bad("stacks must be positive with min <= max");
        }
        if self.segment == 0 {
            return bad("segment must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections() {
        let c =
            SessionConfig::parse("[table]\nsb = 0.5\nbb = 1\n[rake]\nrate = 0.05\ncap_bb = 3\n[session]\nhands = 500\nseed = 9\n[mix]\nwhale = 1\n").unwrap();
        assert_eq!((c.sb, c.bb, c.hands, c.seed), (50, 100, 500, 9));
        assert_eq!(c.rake.rate_bp, 500);
        assert_eq!(c.mix, vec![(Archetype::Whale, 1.0)]);
    }

    #[test]
    fn unknown_keys_and_bad_values_fail() {
        assert!(matches!(SessionConfig::parse("[table]\nante = 1\n"), Err(Error::Config(_))));
        assert!(matches!(SessionConfig::parse("[session]\nhands = lots\n"), Err(Error::Config(_))));
        assert!(matches!(SessionConfig::parse("[mix]\nshark = 1\n"), Err(Error::Config(_))));
        assert!(matches!(SessionConfig::parse("[table]\nseats = 9\n"), Err(Error::Config(_))));
    }
}
