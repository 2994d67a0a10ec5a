use crate::action::Street;
use crate::brain::{action_level_index, limpers, pot_odds, preflop_facing, DecisionContext};
use crate::error::{Error, Result};
use crate::range::{strength_order, Combo};

use super::state::GameState;

fn percentile(hole: crate::cards::Hole) -> f64 {
    let c = Combo::from_hole(hole);
    let pos = strength_order().iter().position(|x| *x == c).unwrap_or(0);
    pos as f64 / strength_order().len() as f64
}

/// Decision variables for the seat to act. Opponent reads, strength and
/// equity are left empty for the caller to attach.
pub fn derive_context(g: &GameState, seat: usize) -> Result<DecisionContext> {
    let legal = g
        .legal()
        .filter(|l| l.seat == seat)
        .ok_or_else(|| Error::Contract(format!("seat {seat} is not to act")))?;
    let bb = g.bb as f64;
    let me = &g.seats[seat];
    let pot = g.pot() as f64 / bb;
    let to_call = legal.to_call as f64 / bb;
    let biggest_other = g
        .live_seats()
        .filter(|&s| s != seat)
        .map(|s| g.seats[s].stack + g.seats[s].street_bet)
        .max()
        .unwrap_or(0);
    let effective = (me.stack + me.street_bet).min(biggest_other) - me.street_bet;
    let effective_stack = effective.max(0) as f64 / bb;
    let in_position = g.order_from_button().into_iter().rfind(|&s| g.seats[s].live()) == Some(seat);
    let street_aggressor = g.actions.iter().any(|a| a.street == g.street && a.seat == seat && a.aggressive);
    Ok(DecisionContext {
        hand_id: g.hand_id,
        seat,
        hole: g.hole(seat),
        board: g.board(),
        street: g.street,
        position: g.position(seat),
        pot,
        to_call,
        stack: me.stack as f64 / bb,
        effective_stack,
        spr: if pot > 0.0 { effective_stack / pot } else { 0.0 },
        p_o: pot_odds(pot, to_call),
        ali: action_level_index(&g.actions),
        current_bet: g.current_bet as f64 / bb,
        facing: preflop_facing(&g.actions, g.actions.len()),
        limpers: limpers(&g.actions),
        was_aggressor: g.street != Street::Preflop && g.prev_aggressor == Some(seat),
        street_aggressor,
        in_position,
        legal,
        percentile: percentile(g.hole(seat)),
        strength: None,
        equity: 0.0,
        equity_called: 0.0,
        opponents: Vec::new(),
    })
}
