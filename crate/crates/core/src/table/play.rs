use crate::action::{ActionKind, Street};
use crate::cards::DealRng;
use crate::ret::ActorRole;

use super::history::HandRecord;
use super::state::{Action, ActionRecord, GameState, Legal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub action: Action,
    pub think_ms: u32,
}

impl From<Action> for Decision {
    fn from(action: Action) -> Decision {
        Decision { action, think_ms: 0 }
    }
}

/// Everyone seated at a table, addressed by seat.
pub trait Players {
    fn begin_hand(&mut self, _g: &GameState) {}
    fn act(&mut self, g: &GameState, seat: usize, rng: &mut DealRng) -> Decision;
    /// Sees every action after it is applied.
    fn observe(&mut self, _g: &GameState, _rec: &ActionRecord) {}
}

/// Plays `g` to completion. An illegal action aborts the hand: every
/// commitment is refunded and the record carries the reason.
pub fn play_hand(mut g: GameState, players: &mut dyn Players, rng: &mut DealRng, table: u32, labels: &[String]) -> (HandRecord, GameState) {
    players.begin_hand(&g);
    while let Some(seat) = g.to_act {
        let d = players.act(&g, seat, rng);
        match g.apply(d.action, d.think_ms) {
            Ok(rec) => players.observe(&g, &rec),
            Err(e) => {
                let record = HandRecord::from_state(&g, table, labels, Some(e.to_string()));
                return (record, g);
            }
        }
    }
    (HandRecord::from_state(&g, table, labels, None), g)
}

/// Nudges an intended action into the legal set: sizes are clamped, a
/// closed raise becomes a call, a free fold becomes a check.
pub fn legalize(want: Action, legal: &Legal) -> Action {
    match want.kind {
        ActionKind::Fold if legal.can_check => Action::check(),
        ActionKind::Check if !legal.can_check => Action::fold(),
        ActionKind::Call if legal.can_check => Action::check(),
        ActionKind::Bet | ActionKind::Raise | ActionKind::AllIn => {
            let Some(min_to) = legal.min_to else {
                return if legal.can_check { Action::check() } else { Action::call() };
            };
            if want.kind == ActionKind::AllIn || want.to >= legal.max_to {
                return Action::all_in();
            }
            let to = want.to.max(min_to);
            if to >= legal.max_to {
                Action::all_in()
            } else if legal.current_bet == 0 {
                Action::bet(to)
            } else {
                Action::raise(to)
            }
        }
        _ => want,
    }
}

/// How the action at `idx` relates to the betting before it.
pub fn actor_role(actions: &[ActionRecord], idx: usize) -> ActorRole {
    let rec = actions[idx];
    let prior = || actions[..idx].iter().filter(|a| a.street == rec.street);
    let blind = u32::from(rec.street == Street::Preflop);
    let bets_before = prior().filter(|a| a.aggressive).count() as u32 + blind;
    if rec.aggressive {
        if bets_before > 0 {
            return if bets_before >= 2 { ActorRole::FacingRaise } else { ActorRole::FacingBet };
        }
        let prev_street = actions[..idx].iter().rev().find(|a| a.street < rec.street).map(|a| a.street);
        let prev_aggressor = prev_street.and_then(|s| actions[..idx].iter().rev().find(|a| a.street == s && a.aggressive).map(|a| a.seat));
        return match prev_aggressor {
            Some(a) if a != rec.seat && !prior().any(|p| p.seat == a) => ActorRole::Donk,
            _ => ActorRole::Lead,
        };
    }
    match rec.kind {
        ActionKind::Call | ActionKind::AllIn if bets_before >= 2 => ActorRole::FacingRaise,
        ActionKind::Call | ActionKind::AllIn => ActorRole::FacingBet,
        _ => ActorRole::Passive,
    }
}
