use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::{ActionKind, Position, Street};
use crate::cards::{evaluate_set, Board, Card, CardSet, HandValue, Hole};
use crate::error::{Error, Result};

use super::pots::{award, build_pots, take_rake, uncalled, Pot};
use super::rake::RakeModel;
use super::Chips;

/// A policy's choice. `to` is the total street commitment for bets and
/// raises and is ignored otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Action {
    pub kind: ActionKind,
    pub to: Chips,
}

impl Action {
    pub fn fold() -> Action {
        Action { kind: ActionKind::Fold, to: 0 }
    }

    pub fn check() -> Action {
        Action {
            kind: ActionKind::Check,
            to: 0,
        }
    }

    pub fn call() -> Action {
        Action { kind: ActionKind::Call, to: 0 }
    }

    pub fn bet(to: Chips) -> Action {
        Action { kind: ActionKind::Bet, to }
    }

    pub fn raise(to: Chips) -> Action {
        Action { kind: ActionKind::Raise, to }
    }

    pub fn all_in() -> Action {
        Action {
            kind: ActionKind::AllIn,
            to: 0,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ActionKind::Bet | ActionKind::Raise => write!(f, "{} {}", self.kind, self.to),
            k => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub seq: u32,
    pub seat: usize,
    pub street: Street,
    pub kind: ActionKind,
    /// Chips moved from stack to pot by this action.
    pub added: Chips,
    /// Street commitment after the action.
    pub to: Chips,
    pub pot_before: Chips,
    pub to_call: Chips,
    /// Raised the price for the others.
    pub aggressive: bool,
    /// Decision-time hint, metadata only.
    pub think_ms: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeatState {
    pub player: String,
    pub start_stack: Chips,
    pub stack: Chips,
    pub street_bet: Chips,
    pub total: Chips,
    pub folded: bool,
    pub all_in: bool,
    /// Acted since the last full raise; such a seat may not re-raise.
    acted: bool,
    needs_action: bool,
}

impl SeatState {
    pub(crate) fn live(&self) -> bool {
        !self.folded
    }

    fn can_act(&self) -> bool {
        !self.folded && !self.all_in
    }
}

/// Everything dealt for one hand: a hole per seat and five board cards,
/// revealed street by street.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deal {
    pub holes: Vec<Hole>,
    pub board: [Card; 5],
}

impl Deal {
    pub fn new(holes: Vec<Hole>, board: [Card; 5]) -> Result<Deal> {
        let mut all: Vec<Card> = holes.iter().flat_map(|h| h.cards()).collect();
        all.extend(board);
        CardSet::try_from_cards(&all)?;
        Ok(Deal { holes, board })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Legal {
    pub seat: usize,
    pub to_call: Chips,
    pub can_check: bool,
    /// Smallest legal bet or raise total, `None` when aggression is closed.
    pub min_to: Option<Chips>,
    /// All-in street total.
    pub max_to: Chips,
    pub current_bet: Chips,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settlement {
    pub pots: Vec<Pot>,
    pub rake: Chips,
    pub returned: Option<(usize, Chips)>,
    /// Seats that showed at showdown, in seat order.
    pub shown: Vec<usize>,
    /// Chips collected per seat.
    pub won: Vec<Chips>,
    /// `final stack - start stack` per seat.
    pub net: Vec<Chips>,
}

#[derive(Debug, Clone)]
pub struct GameState {
    pub hand_id: u64,
    pub button: usize,
    pub sb: Chips,
    pub bb: Chips,
    pub seats: Vec<SeatState>,
    pub street: Street,
    deal: Deal,
    revealed: usize,
    pub current_bet: Chips,
    /// Size of the last full raise, the minimum increment for the next.
    pub min_raise: Chips,
    pub to_act: Option<usize>,
    pub actions: Vec<ActionRecord>,
    /// Last aggressor on the current street.
    pub street_aggressor: Option<usize>,
    /// Last aggressor on the previous street.
    pub prev_aggressor: Option<usize>,
    /// Bets and raises this street; the big blind counts as one pre-flop.
    pub street_raises: u32,
    pub rake_model: RakeModel,
    settlement: Option<Settlement>,
}

impl GameState {
    /// Seats players, posts blinds and sets the first player to act.
    /// `stacks` and `deal.holes` are indexed by seat.
    pub fn new(hand_id: u64, players: &[(String, Chips)], button: usize, sb: Chips, bb: Chips, deal: Deal, rake_model: RakeModel) -> Result<GameState> {
        let n = players.len();
        if !(2..=6).contains(&n) || deal.holes.len() != n || button >= n {
            return Err(Error::invalid("a hand needs 2 to 6 seats with one hole each"));
        }
        if players.iter().any(|(_, s)| *s <= 0) || sb <= 0 || bb < sb {
            return Err(Error::invalid("stacks and blinds must be positive"));
        }
        let seats = players
            .iter()
            .map(|(p, s)| SeatState {
                player: p.clone(),
                start_stack: *s,
                stack: *s,
                street_bet: 0,
                total: 0,
                folded: false,
                all_in: false,
                acted: false,
                needs_action: true,
            })
            .collect();
        let mut g = GameState {
            hand_id,
            button,
            sb,
            bb,
            seats,
            street: Street::Preflop,
            deal,
            revealed: 0,
            current_bet: 0,
            min_raise: bb,
            to_act: None,
            actions: Vec::new(),
            street_aggressor: None,
            prev_aggressor: None,
            street_raises: 1,
            rake_model,
            settlement: None,
        };
        let (sb_seat, bb_seat) = g.blind_seats();
        g.post(sb_seat, sb);
        g.post(bb_seat, bb);
        g.current_bet = bb;
        g.to_act = g.next_to_act(bb_seat);
        if g.to_act.is_none() {
            g.close_round();
        }
        Ok(g)
    }

    pub fn num_seats(&self) -> usize {
        self.seats.len()
    }

    pub fn blind_seats(&self) -> (usize, usize) {
        let n = self.seats.len();
        if n == 2 {
            (self.button, (self.button + 1) % n)
        } else {
            ((self.button + 1) % n, (self.button + 2) % n)
        }
    }

    pub fn position(&self, seat: usize) -> Position {
        let n = self.seats.len();
        Position::from_button_offset((seat + n - self.button) % n, n)
    }

    pub fn hole(&self, seat: usize) -> Hole {
        self.deal.holes[seat]
    }

    pub fn deal(&self) -> &Deal {
        &self.deal
    }

    pub fn board_cards(&self) -> &[Card] {
        &self.deal.board[..self.revealed]
    }

    pub fn board(&self) -> Board {
        Board::new(self.board_cards()).expect("dealt board is valid")
    }

    pub fn pot(&self) -> Chips {
        self.seats.iter().map(|s| s.total).sum()
    }

    pub fn is_finished(&self) -> bool {
        self.settlement.is_some()
    }

    pub fn settlement(&self) -> Option<&Settlement> {
        self.settlement.as_ref()
    }

    pub fn live_seats(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.seats.len()).filter(|&i| self.seats[i].live())
    }

    /// Whether the previous street's aggressor has acted on this street.
    pub fn prev_aggressor_acted(&self) -> bool {
        let Some(a) = self.prev_aggressor else { return false };
        self.actions.iter().rev().take_while(|r| r.street == self.street).any(|r| r.seat == a)
    }

    /// Seats clockwise starting left of the button.
    pub fn order_from_button(&self) -> Vec<usize> {
        let n = self.seats.len();
        (1..=n).map(|k| (self.button + k) % n).collect()
    }

    fn post(&mut self, seat: usize, amount: Chips) {
        let s = &mut self.seats[seat];
        let paid = amount.min(s.stack);
        s.stack -= paid;
        s.street_bet += paid;
        s.total += paid;
        if s.stack == 0 {
            s.all_in = true;
        }
    }

    fn next_to_act(&self, after: usize) -> Option<usize> {
        let n = self.seats.len();
        (1..=n)
            .map(|k| (after + k) % n)
            .find(|&i| self.seats[i].can_act() && self.seats[i].needs_action)
    }

    pub fn legal(&self) -> Option<Legal> {
        let seat = self.to_act?;
        let s = &self.seats[seat];
        let to_call = (self.current_bet - s.street_bet).max(0);
        let max_to = s.street_bet + s.stack;
        let others_can_act = self.seats.iter().enumerate().any(|(i, o)| i != seat && o.can_act());
        let min_to = if s.acted || max_to <= self.current_bet || !others_can_act {
            None
        } else if self.current_bet == 0 {
            Some(self.bb.min(max_to))
        } else {
            Some((self.current_bet + self.min_raise).min(max_to))
        };
        Some(Legal {
            seat,
            to_call: to_call.min(s.stack),
            can_check: to_call == 0,
            min_to,
            max_to,
            current_bet: self.current_bet,
        })
    }

    /// Applies the action of the seat to act. Illegal actions leave the
    /// state untouched and return a contract violation.
    pub fn apply(&mut self, action: Action, think_ms: u32) -> Result<ActionRecord> {
        let legal = self
            .legal()
            .ok_or_else(|| Error::Contract(format!("hand {}: nobody is to act", self.hand_id)))?;
        let seat = legal.seat;
        let illegal = |why: &str| Err(Error::Contract(format!("hand {} seat {seat}: {action} {why}", self.hand_id)));
        let street_bet = self.seats[seat].street_bet;
        let mut kind = action.kind;
        let to = match action.kind {
            ActionKind::Fold if legal.to_call == 0 => return illegal("when checking is free"),
            ActionKind::Fold => street_bet,
            ActionKind::Check if !legal.can_check => return illegal("facing a bet"),
            ActionKind::Check => street_bet,
            ActionKind::Call if legal.to_call == 0 => return illegal("with nothing to call"),
            ActionKind::Call => street_bet + legal.to_call,
            ActionKind::Bet | ActionKind::Raise => {
                let Some(min_to) = legal.min_to else {
                    return illegal("when raising is closed");
                };
                let wants_bet = self.current_bet == 0;
                if wants_bet != (action.kind == ActionKind::Bet) {
                    return illegal(if wants_bet { "with no bet to raise" } else { "facing a bet" });
                }
                if action.to > legal.max_to || action.to < min_to {
                    return illegal("out of range");
                }
                if action.to == legal.max_to {
                    kind = ActionKind::AllIn;
                }
                action.to
            }
            ActionKind::AllIn => {
                if legal.max_to > self.current_bet && legal.min_to.is_none() {
                    return illegal("when raising is closed");
                }
                legal.max_to
            }
        };
        if kind == ActionKind::Call && to == legal.max_to {
            // calling off the stack stays a call
        }
        let pot_before = self.pot();
        let old_bet = self.current_bet;
        let added = to - street_bet;
        let aggressive = to > old_bet;
        {
            let s = &mut self.seats[seat];
            s.stack -= added;
            s.street_bet = to;
            s.total += added;
            s.acted = true;
            s.needs_action = false;
            if kind == ActionKind::Fold {
                s.folded = true;
            }
            if s.stack == 0 {
                s.all_in = true;
            }
        }
        if aggressive {
            let full = to - old_bet >= self.min_raise || old_bet == 0 && to >= self.bb;
            if full {
                self.min_raise = (to - old_bet).max(self.bb);
            }
            self.current_bet = to;
            self.street_aggressor = Some(seat);
            self.street_raises += 1;
            for (i, o) in self.seats.iter_mut().enumerate() {
                if i != seat && o.can_act() {
                    o.needs_action = true;
                    if full {
                        o.acted = false;
                    }
                }
            }
        }
        let rec = ActionRecord {
            seq: self.actions.len() as u32 + 1,
            seat,
            street: self.street,
            kind,
            added,
            to,
            pot_before,
            to_call: legal.to_call,
            aggressive,
            think_ms,
        };
        self.actions.push(rec);
        self.to_act = self.next_to_act(seat);
        if self.to_act.is_none() || self.live_seats().count() == 1 {
            self.to_act = None;
            self.close_round();
        }
        Ok(rec)
    }

    /// Ends the betting round: settles, runs the board out, or opens the
    /// next street.
    fn close_round(&mut self) {
        loop {
            if self.live_seats().count() <= 1 || self.street == Street::River {
                self.finish();
                return;
            }
            let next = self.street.next().expect("below river");
            self.street = next;
            self.revealed = next.board_len();
            self.prev_aggressor = self.street_aggressor.take();
            self.street_raises = 0;
            self.current_bet = 0;
            self.min_raise = self.bb;
            for s in &mut self.seats {
                s.street_bet = 0;
                s.acted = false;
                s.needs_action = s.can_act();
            }
            let actors = self.seats.iter().filter(|s| s.can_act()).count();
            if actors >= 2 {
                self.to_act = self.next_to_act(self.button);
                return;
            }
            // at most one player has chips behind: run the board out
        }
    }

    fn finish(&mut self) {
        let mut totals: Vec<Chips> = self.seats.iter().map(|s| s.total).collect();
        let returned = uncalled(&totals);
        if let Some((seat, amount)) = returned {
            totals[seat] -= amount;
        }
        let folded: Vec<bool> = self.seats.iter().map(|s| s.folded).collect();
        let mut pots = build_pots(&totals, &folded);
        let pot_total: Chips = totals.iter().sum();
        let rake = self.rake_model.rake(pot_total, self.revealed >= 3, self.bb);
        take_rake(&mut pots, rake);

        let live: Vec<usize> = self.live_seats().collect();
        let shown = if live.len() >= 2 { live.clone() } else { Vec::new() };
        let board = CardSet::try_from_cards(self.board_cards()).expect("valid board");
        let strength: Vec<HandValue> = (0..self.seats.len())
            .map(|i| {
                if self.seats[i].folded || live.len() == 1 {
                    HandValue::default()
                } else {
                    evaluate_set(board.union(self.deal.holes[i].set()))
                }
            })
            .collect();
        let won = award(&pots, &strength, &self.order_from_button());
        let mut net = Vec::with_capacity(self.seats.len());
        for (i, s) in self.seats.iter_mut().enumerate() {
            if let Some((seat, amount)) = returned {
                if seat == i {
                    s.stack += amount;
                }
            }
            s.stack += won[i];
            net.push(s.stack - s.start_stack);
        }
        self.to_act = None;
        self.settlement = Some(Settlement {
            pots,
            rake,
            returned,
            shown,
            won,
            net,
        });
    }
}
