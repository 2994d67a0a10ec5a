use crate::action::{ActionKind, Position, Street};
use crate::cards::{Board, Hole};
use crate::profile::Archetype;
use crate::range::{ComboGrid, Facing};
use crate::ret::RsDistribution;
use crate::rsm::RsCategory;
use crate::table::{ActionRecord, Legal};

/// What the hero knows about one live opponent at a decision.
#[derive(Debug, Clone)]
pub struct OpponentView {
    pub seat: usize,
    pub player: String,
    /// Archetype read from the opponent's profile.
    pub archetype: Archetype,
    pub grid: ComboGrid,
    /// Post-flop only.
    pub distribution: Option<RsDistribution>,
    /// Mass of the grid that beats the hero right now; 0 pre-flop.
    pub chib: f64,
    /// Estimated chance this opponent folds to a bet.
    pub fold_rate: f64,
}

/// Everything a decision module reads. Amounts are in big blinds. There is
/// deliberately no bankroll or session result here.
#[derive(Debug, Clone)]
pub struct DecisionContext {
    pub hand_id: u64,
    pub seat: usize,
    pub hole: Hole,
    pub board: Board,
    pub street: Street,
    pub position: Position,
    pub pot: f64,
    pub to_call: f64,
    /// The hero's chips behind.
    pub stack: f64,
    pub effective_stack: f64,
    pub spr: f64,
    /// `to_call / (pot + to_call)`; 0 when checking is free.
    pub p_o: f64,
    pub ali: f64,
    /// Current bet level this street, in big blinds.
    pub current_bet: f64,
    pub facing: Facing,
    pub limpers: usize,
    /// Whether the hero made the last aggressive action of the previous street.
    pub was_aggressor: bool,
    /// Whether the hero has bet or raised this street.
    pub street_aggressor: bool,
    pub in_position: bool,
    pub legal: Legal,
    /// Percentile of the hole cards in the pre-flop strength order (0 = best).
    pub percentile: f64,
    pub strength: Option<RsCategory>,
    /// Equity against the live opponents' grids.
    pub equity: f64,
    /// Equity against the part of those grids that calls a bet.
    pub equity_called: f64,
    pub opponents: Vec<OpponentView>,
}

impl DecisionContext {
    pub fn heads_up(&self) -> Option<&OpponentView> {
        match self.opponents.as_slice() {
            [o] => Some(o),
            _ => None,
        }
    }

    /// Chance every live opponent folds to a bet.
    pub fn fold_equity(&self) -> f64 {
        self.opponents.iter().map(|o| o.fold_rate).product()
    }

    pub fn can_check(&self) -> bool {
        self.legal.can_check
    }
}

/// Action level index: the sum over aggressive actions so far of chips put
/// in divided by the pot before the action. Blinds do not count.
pub fn action_level_index(actions: &[ActionRecord]) -> f64 {
    actions
        .iter()
        .filter(|a| a.aggressive && a.pot_before > 0)
        .map(|a| a.added as f64 / a.pot_before as f64)
        .sum()
}

/// Pot odds of a call: `to_call / (pot + to_call)`.
pub fn pot_odds(pot: f64, to_call: f64) -> f64 {
    if to_call <= 0.0 {
        0.0
    } else {
        to_call / (pot + to_call)
    }
}

/// Count of players who limped before any raise this hand.
pub fn limpers(actions: &[ActionRecord]) -> usize {
    actions
        .iter()
        .take_while(|a| a.street == Street::Preflop && !a.aggressive)
        .filter(|a| matches!(a.kind, ActionKind::Call | ActionKind::AllIn))
        .count()
}
