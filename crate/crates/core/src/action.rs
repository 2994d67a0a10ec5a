//! Betting vocabulary shared by the table, the profiler and the brain.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Street {
    Preflop,
    Flop,
    Turn,
    River,
}

impl Street {
    pub const ALL: [Street; 4] = [Street::Preflop, Street::Flop, Street::Turn, Street::River];

    pub fn board_len(self) -> usize {
        match self {
            Street::Preflop => 0,
            Street::Flop => 3,
            Street::Turn => 4,
            Street::River => 5,
        }
    }

    pub fn from_board_len(n: usize) -> Option<Street> {
        match n {
            0 => Some(Street::Preflop),
            3 => Some(Street::Flop),
            4 => Some(Street::Turn),
            5 => Some(Street::River),
            _ => None,
        }
    }

    pub fn next(self) -> Option<Street> {
        match self {
            Street::Preflop => Some(Street::Flop),
            Street::Flop => Some(Street::Turn),
            Street::Turn => Some(Street::River),
            Street::River => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Street::Preflop => "preflop",
            Street::Flop => "flop",
            Street::Turn => "turn",
            Street::River => "river",
        }
    }
}

impl fmt::Display for Street {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Street {
    type Err = Error;

    fn from_str(s: &str) -> Result<Street> {
        Street::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown street {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ActionKind {
    Fold,
    Check,
    Call,
    Bet,
    Raise,
    AllIn,
}

impl ActionKind {
    pub const ALL: [ActionKind; 6] = [
        ActionKind::Fold,
        ActionKind::Check,
        ActionKind::Call,
        ActionKind::Bet,
        ActionKind::Raise,
        ActionKind::AllIn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActionKind::Fold => "fold",
            ActionKind::Check => "check",
            ActionKind::Call => "call",
            ActionKind::Bet => "bet",
            ActionKind::Raise => "raise",
            ActionKind::AllIn => "allin",
        }
    }

    /// Whether the action may put chips in beyond matching.
    pub fn is_aggressive(self) -> bool {
        matches!(self, ActionKind::Bet | ActionKind::Raise | ActionKind::AllIn)
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ActionKind> {
        ActionKind::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown action {s:?}")))
    }
}

/// Six-max seat positions in pre-flop acting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Position {
    Utg,
    Mp,
    Co,
    Btn,
    Sb,
    Bb,
}

impl Position {
    pub const ALL: [Position; 6] = [Position::Utg, Position::Mp, Position::Co, Position::Btn, Position::Sb, Position::Bb];

    pub fn name(self) -> &'static str {
        match self {
            Position::Utg => "utg",
            Position::Mp => "mp",
            Position::Co => "co",
            Position::Btn => "btn",
            Position::Sb => "sb",
            Position::Bb => "bb",
        }
    }

    pub fn is_blind(self) -> bool {
        matches!(self, Position::Sb | Position::Bb)
    }

    /// Position of the seat `offset` places left of the button in a table of
    /// `n` players (offset 0 is the button). Short tables drop early seats.
    pub fn from_button_offset(offset: usize, n: usize) -> Position {
        debug_assert!((2..=6).contains(&n) && offset < n);
        if n == 2 {
            // heads-up: button posts the small blind
            return if offset == 0 { Position::Sb } else { Position::Bb };
        }
        match offset {
            0 => Position::Btn,
            1 => Position::Sb,
            2 => Position::Bb,
            o => {
                let from_end = n - o; // 1 = cutoff
                [Position::Co, Position::Mp, Position::Utg][from_end - 1]
            }
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Position> {
        Position::ALL
            .into_iter()
            .find(|p| p.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::invalid(format!("unknown position {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_max_positions() {
        let got: Vec<Position> = (0..6).map(|o| Position::from_button_offset(o, 6)).collect();
        assert_eq!(got, vec![Position::Btn, Position::Sb, Position::Bb, Position::Utg, Position::Mp, Position::Co]);
        assert_eq!(Position::from_button_offset(3, 4), Position::Co);
        assert_eq!(Position::from_button_offset(0, 2), Position::Sb);
    }

    #[test]
    fn names_parse_back() {
        for a in ActionKind::ALL {
            assert_eq!(a.name().parse::<ActionKind>().unwrap(), a);
        }
        for s in Street::ALL {
            assert_eq!(s.name().parse::<Street>().unwrap(), s);
        }
    }
}
