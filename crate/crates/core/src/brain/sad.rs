use crate::action::{ActionKind, Position, Street};
use crate::profile::{default_rules, search_exploits, Archetype, Exploit, ExploitKind, ProfileStore};
use crate::range::Facing;
use crate::rsm::RsCategory;

use super::context::DecisionContext;
use super::{Recommendation, Source};

/// Conviction of the archetype-level value play against players who call
/// raises too often.
const STATION_VALUE_CONVICTION: f64 = 0.9;

fn exploits_for(profiles: &ProfileStore, player: &str) -> Vec<Exploit> {
    profiles.stats(player).map(|s| search_exploits(player, s, &default_rules())).unwrap_or_default()
}

fn find(exploits: &[Exploit], kind: ExploitKind) -> Option<&Exploit> {
    exploits.iter().find(|e| e.kind == kind)
}

fn bet(ctx: &DecisionContext, frac: f64, conviction: f64, why: String) -> Recommendation {
    Recommendation::sized(ActionKind::Bet, (frac * ctx.pot).max(1.0), conviction, Source::Sad, why)
}

/// Targeted plays against the live opponents' measured leaks.
pub fn sad_recommend(ctx: &DecisionContext, profiles: &ProfileStore) -> Vec<Recommendation> {
    let mut out = Vec::new();
    let rs = ctx.strength.unwrap_or(RsCategory::NIENTE);
    if ctx.street == Street::Preflop {
        preflop(ctx, profiles, &mut out);
        return out;
    }
    // value against players who pay off raises
    let callers = ctx
        .opponents
        .iter()
        .all(|o| matches!(o.archetype, Archetype::Whale | Archetype::CallingStation | Archetype::Fish));
    if !ctx.opponents.is_empty() && callers && rs >= RsCategory::MONSTER {
        let rec = if ctx.can_check() {
            bet(ctx, 1.0, STATION_VALUE_CONVICTION, "calling archetype pays big bets".into())
        } else if ctx.legal.min_to.is_some() {
            Recommendation::sized(
                ActionKind::Raise,
                ctx.current_bet * 3.0,
                STATION_VALUE_CONVICTION,
                Source::Sad,
                "calling archetype calls raises",
            )
        } else {
            Recommendation::plain(ActionKind::Call, STATION_VALUE_CONVICTION, Source::Sad, "calling archetype")
        };
        out.push(rec);
    }
    let Some(villain) = ctx.heads_up() else {
        return out;
    };
    if !ctx.can_check() {
        return out;
    }
    let exploits = exploits_for(profiles, &villain.player);
    let barrel = match ctx.street {
        Street::Flop if ctx.was_aggressor => Some((ExploitKind::CbetBluff, 0.5)),
        Street::Turn if ctx.was_aggressor => Some((ExploitKind::DoubleBarrel, 0.66)),
        Street::River if ctx.was_aggressor => Some((ExploitKind::TripleBarrel, 0.75)),
        _ => None,
    };
    if let Some((kind, frac)) = barrel {
        if let Some(e) = find(&exploits, kind) {
            if rs <= RsCategory::FAIR {
                out.push(bet(
                    ctx,
                    frac,
                    e.conviction,
                    format!("{} folds {:.0}% ({})", villain.player, e.observed * 100.0, kind.name()),
                ));
            }
        }
    }
    if let Some(e) = find(&exploits, ExploitKind::ValueOnly) {
        if rs <= RsCategory::WEAK {
            out.push(Recommendation::plain(
                ActionKind::Check,
                e.conviction,
                Source::Sad,
                format!("{} never folds: no bluff", villain.player),
            ));
        } else if rs >= RsCategory::DECENT {
            out.push(bet(ctx, 0.75, e.conviction, format!("{} calls light: thin value", villain.player)));
        }
    }
    out
}

fn preflop(ctx: &DecisionContext, profiles: &ProfileStore, out: &mut Vec<Recommendation>) {
    match ctx.facing {
        Facing::Unopened if matches!(ctx.position, Position::Co | Position::Btn | Position::Sb) && ctx.percentile < 0.55 => {
            // every player still to act must give up to steals
            let convictions: Option<Vec<f64>> = ctx
                .opponents
                .iter()
                .map(|o| find(&exploits_for(profiles, &o.player), ExploitKind::StealRaise).map(|e| e.conviction))
                .collect();
            if let Some(c) = convictions.filter(|c| !c.is_empty()) {
                let conviction = c.into_iter().fold(1.0, f64::min);
                let to = if ctx.position == Position::Sb { 3.0 } else { 2.5 };
                out.push(Recommendation::sized(
                    ActionKind::Raise,
                    to,
                    conviction,
                    Source::Sad,
                    "blinds over-fold to steals",
                ));
            }
        }
        Facing::Limped if ctx.percentile < 0.35 => {
            let best = ctx
                .opponents
                .iter()
                .filter_map(|o| find(&exploits_for(profiles, &o.player), ExploitKind::IsoRaise).map(|e| e.conviction))
                .fold(None, |m: Option<f64>, c| Some(m.map_or(c, |m| m.max(c))));
            if let Some(conviction) = best {
                out.push(Recommendation::sized(
                    ActionKind::Raise,
                    4.0 + ctx.limpers as f64,
                    conviction,
                    Source::Sad,
                    "isolate a loose limper",
                ));
            }
        }
        _ => {}
    }
}
