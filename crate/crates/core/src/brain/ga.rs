use rand::Rng;

use crate::action::{ActionKind, Position, Street};
use crate::cards::DealRng;
use crate::range::Facing;
use crate::rsm::RsCategory;

use super::context::DecisionContext;
use super::haa::StyleState;
use super::{Recommendation, Source};

/// Calibration constants of the general algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    /// EV gap, in big blinds, below which bet and check count as equal.
    pub epsilon: f64,
    /// Bet sizes as pot fractions; all-in is added when stacks are short.
    pub sizes: Vec<f64>,
    /// SPR at or below which all-in joins the size menu.
    pub jam_spr: f64,
    /// Opening share of the strength order by position, UTG first.
    pub open: [f64; 6],
    pub iso: f64,
    pub overlimp: f64,
    pub three_bet: f64,
    pub call_raise: f64,
    pub bb_defend: f64,
    pub four_bet: f64,
    pub call_three_bet: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            epsilon: 0.25,
            sizes: vec![0.33, 0.5, 0.75, 1.0],
            jam_spr: 2.5,
            open: [0.14, 0.18, 0.27, 0.45, 0.35, 0.0],
            iso: 0.20,
            overlimp: 0.25,
            three_bet: 0.035,
            call_raise: 0.12,
            bb_defend: 0.25,
            four_bet: 0.02,
            call_three_bet: 0.045,
        }
    }
}

/// Strength needed to call at pot odds `p_o`. Cheaper calls need less.
pub fn rs_req_call(p_o: f64) -> RsCategory {
    let v = if p_o < 0.10 {
        1
    } else if p_o < 0.20 {
        2
    } else if p_o < 0.30 {
        3
    } else if p_o < 0.40 {
        4
    } else {
        5
    };
    RsCategory::new(v).expect("in range")
}

/// Strength needed to continue after action level `ali`.
pub fn rs_req_continue(ali: f64) -> RsCategory {
    const STEPS: [(f64, u8); 6] = [(1.5, 0), (2.5, 2), (3.5, 3), (4.5, 4), (5.0, 5), (5.5, 6)];
    let v = STEPS.iter().find(|(limit, _)| ali < *limit).map_or(7, |(_, v)| *v);
    RsCategory::new(v).expect("in range")
}

fn position_index(p: Position) -> usize {
    Position::ALL.iter().position(|x| *x == p).expect("known position")
}

pub fn ga_recommend(ctx: &DecisionContext, style: &StyleState, params: &GaParams, rng: &mut DealRng) -> Recommendation {
    if ctx.street == Street::Preflop {
        preflop(ctx, style, params)
    } else {
        postflop(ctx, style, params, rng)
    }
}

fn fold_or_check(ctx: &DecisionContext, conviction: f64, why: &str) -> Recommendation {
    let kind = if ctx.can_check() { ActionKind::Check } else { ActionKind::Fold };
    Recommendation::plain(kind, conviction, Source::Ga, why)
}

fn raise_to(ctx: &DecisionContext, to: f64, conviction: f64, why: &str) -> Recommendation {
    let kind = if ctx.current_bet > 0.0 { ActionKind::Raise } else { ActionKind::Bet };
    Recommendation::sized(kind, to, conviction, Source::Ga, why)
}

fn preflop(ctx: &DecisionContext, style: &StyleState, p: &GaParams) -> Recommendation {
    let shift = style.range_shift();
    let pct = ctx.percentile;
    let conv = |share: f64| (0.5 + (share - pct).abs() * 2.0).min(0.9);
    match ctx.facing {
        Facing::Unopened => {
            let share = p.open[position_index(ctx.position)] + shift;
            if pct < share {
                let to = if ctx.position == Position::Sb { 3.0 } else { 2.5 };
                raise_to(ctx, to, conv(share), "open")
            } else {
                fold_or_check(ctx, conv(share), "below opening range")
            }
        }
        Facing::Limped => {
            let share = p.iso + shift;
            if pct < share {
                raise_to(ctx, 4.0 + ctx.limpers as f64, conv(share), "isolate limpers")
            } else if ctx.can_check() {
                Recommendation::plain(ActionKind::Check, 0.6, Source::Ga, "free flop")
            } else if pct < p.overlimp + shift && matches!(ctx.position, Position::Co | Position::Btn | Position::Sb) {
                Recommendation::plain(ActionKind::Call, conv(p.overlimp), Source::Ga, "overlimp in position")
            } else {
                fold_or_check(ctx, conv(share), "below limped-pot range")
            }
        }
        Facing::Raised => {
            let three = p.three_bet + shift / 4.0;
            if pct < three {
                let mult = if ctx.in_position { 3.0 } else { 3.5 };
                return raise_to(ctx, ctx.current_bet * mult, conv(three), "three-bet for value");
            }
            let base = if ctx.position == Position::Bb { p.bb_defend } else { p.call_raise };
            // tighten against oversized opens
            let share = (base + shift) * (0.3 / ctx.p_o.max(0.15)).min(1.0);
            if pct < share {
                Recommendation::plain(ActionKind::Call, conv(share), Source::Ga, "flat the raise")
            } else {
                fold_or_check(ctx, conv(share), "below calling range")
            }
        }
        Facing::Reraised => {
            if pct < p.four_bet {
                raise_to(ctx, ctx.current_bet * 2.3, conv(p.four_bet), "four-bet")
            } else if pct < p.call_three_bet {
                Recommendation::plain(ActionKind::Call, conv(p.call_three_bet), Source::Ga, "call the re-raise")
            } else {
                fold_or_check(ctx, conv(p.call_three_bet), "below re-raise range")
            }
        }
    }
}

fn postflop(ctx: &DecisionContext, style: &StyleState, p: &GaParams, rng: &mut DealRng) -> Recommendation {
    let rs = i32::from(ctx.strength.unwrap_or(RsCategory::NIENTE).value());
    if !ctx.can_check() {
        let req = i32::from(rs_req_call(ctx.p_o).value().max(rs_req_continue(ctx.ali).value()));
        let margin = rs - req;
        if margin < 0 && ctx.equity < ctx.p_o {
            return Recommendation::plain(ActionKind::Fold, 0.5 + 0.05 * f64::from(-margin), Source::Ga, format!("rS {rs} below {req}"));
        }
        let value_raise = rs >= 8.max(req + 2) || (rs >= 6 && margin >= 3 && ctx.equity > 0.6);
        if value_raise && ctx.legal.min_to.is_some() {
            return raise_to(ctx, ctx.current_bet * 3.0, (0.5 + 0.05 * f64::from(margin)).min(0.9), "raise for value");
        }
        let why = if margin >= 0 {
            format!("rS {rs} meets {req}")
        } else {
            "draw priced in".to_string()
        };
        return Recommendation::plain(ActionKind::Call, (0.5 + 0.05 * f64::from(margin.abs())).min(0.9), Source::Ga, why);
    }
    let pot = ctx.pot.max(1e-9);
    let fe_base = ctx.fold_equity();
    let bonus = style.aggression_shift() * pot;
    let ev_check = ctx.equity * pot;
    let mut options: Vec<f64> = p.sizes.iter().map(|f| f * pot).collect();
    if ctx.spr <= p.jam_spr {
        options.push(ctx.effective_stack);
    }
    let ev_bet = |s: f64| {
        let fe = (fe_base * (s / pot / 0.66).sqrt()).min(0.95);
        fe * pot + (1.0 - fe) * (ctx.equity_called * (pot + 2.0 * s) - s) + bonus
    };
    let best = options
        .iter()
        .filter(|s| **s > 0.0)
        .map(|&s| (s.min(ctx.effective_stack.max(1e-9)), ev_bet(s.min(ctx.effective_stack))))
        .max_by(|a, b| a.1.total_cmp(&b.1));
    let Some((size, ev)) = best else {
        return Recommendation::plain(ActionKind::Check, 0.5, Source::Ga, "nothing to bet");
    };
    let diff = ev - ev_check;
    let conviction = 0.5 + (diff.abs() / pot).min(0.4);
    let bet = if diff.abs() < p.epsilon { rng.random_bool(0.5) } else { diff > 0.0 };
    let why = format!("EV bet {ev:.2} vs check {ev_check:.2}");
    if bet {
        Recommendation::sized(ActionKind::Bet, size, conviction, Source::Ga, why)
    } else {
        Recommendation::plain(ActionKind::Check, conviction, Source::Ga, why)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_calls_need_little() {
        assert!(rs_req_call(0.05) <= RsCategory::FAIR);
    }

    #[test]
    fn heavy_action_needs_excellent() {
        // open 2.5 into 1.5, re-raise to 8 into 4, shove 92 into 12
        let ali = 2.5 / 1.5 + 8.0 / 4.0 + 92.0 / 12.0;
        assert!(rs_req_continue(ali) >= RsCategory::EXCELLENT);
        assert_eq!(rs_req_continue(0.0), RsCategory::NIENTE);
    }
}
