use rand::Rng;

use crate::action::{ActionKind, Street};
use crate::cards::DealRng;
use crate::error::{Error, Result};

use super::context::DecisionContext;
use super::{Recommendation, Source};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaParams {
    pub sad_weight: f64,
    pub lawnmower_weight: f64,
    pub ga_weight: f64,
    /// Conviction a non-GA source needs before its weight applies.
    pub exploit_threshold: f64,
    /// Below this SPR, bets and raises go all in.
    pub commit_spr: f64,
}

impl Default for MaParams {
    fn default() -> Self {
        MaParams {
            sad_weight: 1.3,
            lawnmower_weight: 1.1,
            ga_weight: 1.0,
            exploit_threshold: 0.7,
            commit_spr: 1.5,
        }
    }
}

impl MaParams {
    pub fn score(&self, r: &Recommendation) -> f64 {
        let weight = match r.source {
            Source::Ga => self.ga_weight,
            _ if r.conviction < self.exploit_threshold => 1.0,
            Source::Sad => self.sad_weight,
            Source::Lawnmower => self.lawnmower_weight,
        };
        r.conviction * weight
    }
}

/// Index of the highest score; exact ties go to a seeded draw.
pub fn arbitrate(scores: &[f64], rng: &mut DealRng) -> Option<usize> {
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<usize> = (0..scores.len()).filter(|&i| scores[i] == best).collect();
    match tied.len() {
        0 => None,
        1 => Some(tied[0]),
        n => Some(tied[rng.random_range(0..n)]),
    }
}

/// Picks the final action among the modules' recommendations and applies
/// the commitment policy for short stacks.
pub fn ma_decide(recs: &[Recommendation], ctx: &DecisionContext, params: &MaParams, rng: &mut DealRng) -> Result<Recommendation> {
    let scores: Vec<f64> = recs.iter().map(|r| params.score(r)).collect();
    let i = arbitrate(&scores, rng).ok_or_else(|| Error::Contract("no recommendation to arbitrate".into()))?;
    let mut chosen = recs[i].clone();
    if ctx.street != Street::Preflop && ctx.spr < params.commit_spr && matches!(chosen.action, ActionKind::Bet | ActionKind::Raise) {
        chosen.action = ActionKind::AllIn;
        chosen.size = 0.0;
        chosen.rationale.push_str("; committed");
    }
    Ok(chosen)
}
