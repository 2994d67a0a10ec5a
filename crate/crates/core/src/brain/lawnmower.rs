use crate::action::{ActionKind, Street};
use crate::error::{Error, Result};
use crate::profile::{Archetype, PlayerStats};
use crate::range::{ComboGrid, DeadCards};
use crate::ret::{rs_distribution, RangeTracker, RetKey};
use crate::rsm::{BoardView, RsCategory};

use super::context::{DecisionContext, OpponentView};
use super::reader::Models;
use super::{Recommendation, Source};

/// Fold rate at which a villain counts as a bluff target.
const FOLD_TARGET: f64 = 0.5;
/// Perceived share of Good-or-better hands that makes a story credible.
const STRONG_STORY: f64 = 0.35;
/// Perceived share of Fair-or-worse hands that makes a slow-play safe.
const WEAK_IMAGE: f64 = 0.5;
const SAMPLE_FOR_STAT: u32 = 10;

/// How one modeling-capable opponent reads the hero's line.
#[derive(Debug, Clone)]
pub struct PerceivedHeroRange {
    pub villain: Archetype,
    tracker: RangeTracker,
}

impl PerceivedHeroRange {
    pub fn new(villain: Archetype, grid: ComboGrid) -> Result<PerceivedHeroRange> {
        if !villain.style().modeling_capable {
            return Err(Error::Contract(format!("{villain} does not model the hero")));
        }
        Ok(PerceivedHeroRange {
            villain,
            tracker: RangeTracker::new(grid),
        })
    }

    pub fn grid(&self) -> &ComboGrid {
        self.tracker.grid()
    }

    pub fn applied(&self) -> &[String] {
        self.tracker.applied()
    }

    /// Removes combos touching the public board.
    pub fn strip(&mut self, dead: DeadCards) {
        self.tracker.strip(dead);
    }

    /// Reshapes the perceived grid after a public hero action, using the
    /// template the villain's reading assigns to it. Returns the template id.
    pub fn update(&mut self, models: &Models<'_>, view: &BoardView<'_>, key: &RetKey) -> Result<String> {
        let id = models.dispatch.select(key).unwrap_or(crate::ret::FLAT_ID).to_string();
        let ret = models.rets.require(&id)?;
        let dead = DeadCards::from_set(view.board_set());
        self.tracker.apply(view, ret, dead);
        Ok(id)
    }

    /// Share of the perceived range reading Good or better on `view`.
    pub fn strong_share(&self, view: &BoardView<'_>) -> f64 {
        rs_distribution(view, self.grid()).at_least(RsCategory::GOOD)
    }

    pub fn weak_share(&self, view: &BoardView<'_>) -> f64 {
        rs_distribution(view, self.grid()).at_most(RsCategory::FAIR)
    }
}

/// Functional form of [`PerceivedHeroRange::update`].
pub fn update_perceived_hero_range(perceived: &PerceivedHeroRange, models: &Models<'_>, view: &BoardView<'_>, key: &RetKey) -> Result<PerceivedHeroRange> {
    let mut next = perceived.clone();
    next.update(models, view, key)?;
    Ok(next)
}

fn fold_rate(villain: &OpponentView, stats: Option<&PlayerStats>, street: Street) -> f64 {
    stats
        .map(|s| s.fold_to_cbet(street))
        .filter(|s| s.n >= SAMPLE_FOR_STAT)
        .and_then(|s| s.rate())
        .unwrap_or(villain.archetype.style().fold_to_cbet)
}

/// Deception lines against one modeling-capable villain. `before` is the
/// previous street's board, used to judge whether the new card helps the
/// hero's story.
pub fn lawnmower_recommend(
    ctx: &DecisionContext,
    perceived: &PerceivedHeroRange,
    villain: &OpponentView,
    stats: Option<&PlayerStats>,
    now: &BoardView<'_>,
    before: Option<&BoardView<'_>>,
) -> Option<Recommendation> {
    if !villain.archetype.style().modeling_capable || ctx.street == Street::Preflop {
        return None;
    }
    let rs = ctx.strength?;
    if rs <= RsCategory::WEAK && ctx.can_check() && matches!(ctx.street, Street::Turn | Street::River) {
        let strong = perceived.strong_share(now);
        let improved = before.is_none_or(|b| strong >= perceived.strong_share(b));
        let folds = fold_rate(villain, stats, ctx.street);
        if strong >= STRONG_STORY && improved && folds >= FOLD_TARGET {
            let rec = Recommendation::sized(
                ActionKind::Bet,
                (0.66 * ctx.pot).max(1.0),
                folds.min(0.9),
                Source::Lawnmower,
                format!("story reads {:.0}% strong, villain folds {:.0}%", strong * 100.0, folds * 100.0),
            );
            return Some(rec.with_think(4_000));
        }
    }
    if rs >= RsCategory::NUTS && ctx.street != Street::River && perceived.weak_share(now) >= WEAK_IMAGE {
        let kind = if ctx.can_check() { ActionKind::Check } else { ActionKind::Call };
        let rec = Recommendation::plain(kind, 0.75, Source::Lawnmower, "slow-play behind a weak image");
        return Some(rec.with_think(6_000));
    }
    None
}
