//! Base rule parameters for the strength ladder, loaded from a `key = value`
//! text file.

use crate::cards::Rank;
use crate::error::{Error, Result};

use super::draws::DrawTier;

/// Which board pair counts as the floor of the Weak level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakPair {
    /// Pairing the lowest board rank.
    Bottom,
    /// Pairing the second highest board rank.
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RsmRules {
    pub weak_pair: WeakPair,
    pub decent_kicker: Rank,
    pub good_kicker: Rank,
    pub great_kicker: Rank,
    pub big_overpair: Rank,
    /// A hand is Nuts when fewer than this many distinct values beat it.
    pub nut_values: usize,
    pub draw_scores: [f64; 5],
    /// Extra level for a made hand of at least Weak with a strong draw.
    pub made_draw_bonus: f64,
    /// Level loss for Fair..Excellent made hands on wet boards.
    pub wet_penalty: u8,
    /// Fallback ladder: minimum share of combos beating a hand for levels
    /// 0 through 7, strictly decreasing.
    pub percentile: [f64; 8],
    pub clamp: f64,
}

pub const DEFAULT_RULES: &str = include_str!("../../data/rsm.rules");

impl Default for RsmRules {
    fn default() -> Self {
        RsmRules::parse(DEFAULT_RULES).expect("shipped rule file parses")
    }
}

fn rank(line: usize, v: &str) -> Result<Rank> {
    let mut it = v.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Rank::from_char(c).ok_or_else(|| Error::parse(line, format!("bad rank {v:?}"))),
        _ => Err(Error::parse(line, format!("bad rank {v:?}"))),
    }
}

fn number(line: usize, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::parse(line, format!("bad number {v:?}")))
}

impl RsmRules {
    pub fn parse(text: &str) -> Result<RsmRules> {
        let mut r = RsmRules {
            weak_pair: WeakPair::Bottom,
            decent_kicker: Rank::TEN,
            good_kicker: Rank::QUEEN,
            great_kicker: Rank::ACE,
            big_overpair: Rank::QUEEN,
            nut_values: 3,
            draw_scores: [0.0, 1.0, 1.0, 3.0, 4.0],
            made_draw_bonus: 1.0,
            wet_penalty: 1,
            percentile: [0.9, 0.75, 0.6, 0.45, 0.35, 0.25, 0.15, 0.07],
            clamp: 1.5,
        };
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::parse(n, format!("expected key = value, got {line:?}")));
            };
            let (k, v) = (k.trim(), v.trim());
            match k {
                "weak_pair" => {
                    r.weak_pair = match v {
                        "bottom" => WeakPair::Bottom,
                        "second" => WeakPair::Second,
                        _ => return Err(Error::parse(n, format!("weak_pair must be bottom or second, got {v:?}"))),
                    }
                }
                "decent_kicker" => r.decent_kicker = rank(n, v)?,
                "good_kicker" => r.good_kicker = rank(n, v)?,
                "great_kicker" => r.great_kicker = rank(n, v)?,
                "big_overpair" => r.big_overpair = rank(n, v)?,
                "nut_values" => r.nut_values = number(n, v)? as usize,
                "draw.backdoor" => r.draw_scores[DrawTier::Backdoor as usize] = number(n, v)?,
                "draw.gutshot" => r.draw_scores[DrawTier::Gutshot as usize] = number(n, v)?,
                "draw.strong" => r.draw_scores[DrawTier::Strong as usize] = number(n, v)?,
                "draw.combo" => r.draw_scores[DrawTier::Combo as usize] = number(n, v)?,
                "made_draw_bonus" => r.made_draw_bonus = number(n, v)?,
                "wet_penalty" => r.wet_penalty = number(n, v)? as u8,
                "clamp" => r.clamp = number(n, v)?,
                "percentile" => {
                    let xs: Vec<f64> = v.split_whitespace().map(|x| number(n, x)).collect::<Result<_>>()?;
                    if xs.len() != 8 || xs.windows(2).any(|w| w[0] <= w[1]) {
                        return Err(Error::parse(n, "percentile needs 8 strictly decreasing shares"));
                    }
                    r.percentile.copy_from_slice(&xs);
                }
                _ => return Err(Error::parse(n, format!("unknown key {k:?}"))),
            }
        }
        if !(r.decent_kicker <= r.good_kicker && r.good_kicker <= r.great_kicker) {
            return Err(Error::Config("kicker tiers must be non-decreasing".into()));
        }
        if r.clamp <= 0.0 {
            return Err(Error::Config("clamp must be positive".into()));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_rules_parse() {
        let r = RsmRules::default();
        assert_eq!(r.clamp, 1.5);
        assert!(r.draw_scores[DrawTier::Combo as usize] >= 3.0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(RsmRules::parse("clamp = 1\nbogus = 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(RsmRules::parse("percentile = 0.1 0.2"), Err(Error::Parse { line: 1, .. })));
        assert!(RsmRules::parse("clamp = 0").is_err());
    }
}
