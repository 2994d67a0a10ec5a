use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cards::{Board, Card};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Suitedness {
    Rainbow,
    TwoTone,
    /// Three or more cards of one suit.
    Monotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Connectivity {
    Dry,
    /// Some five-rank window holds three board ranks.
    Connected,
    /// A window holds four or more board ranks.
    Straighty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HighTier {
    Low,
    Mid,
    High,
}

/// Coarse description of the community cards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoardTexture {
    pub paired: bool,
    pub suitedness: Suitedness,
    pub connectivity: Connectivity,
    pub high: HighTier,
}

impl BoardTexture {
    pub fn of(board: &Board) -> BoardTexture {
        BoardTexture::of_cards(board.cards())
    }

    pub fn of_cards(cards: &[Card]) -> BoardTexture {
        let mut suit_counts = [0u8; 4];
        let mut rank_counts = [0u8; 13];
        let mut mask = 0u16;
        for c in cards {
            suit_counts[c.suit().index() as usize] += 1;
            rank_counts[c.rank().index() as usize] += 1;
            mask |= 1 << c.rank().index();
        }
        let max_suit = suit_counts.iter().copied().max().unwrap_or(0);
        let suitedness = match max_suit {
            0 | 1 => Suitedness::Rainbow,
            2 => Suitedness::TwoTone,
            _ => Suitedness::Monotone,
        };
        let window = max_window(mask);
        let connectivity = match window {
            0..=2 => Connectivity::Dry,
            3 => Connectivity::Connected,
            _ => Connectivity::Straighty,
        };
        let top = (0..13).rev().find(|r| mask & (1 << r) != 0).unwrap_or(0);
        let high = if top >= 10 {
            HighTier::High
        } else if top >= 7 {
            HighTier::Mid
        } else {
            HighTier::Low
        };
        BoardTexture {
            paired: rank_counts.iter().any(|&n| n >= 2),
            suitedness,
            connectivity,
            high,
        }
    }

    /// Boards where flushes or straights are live for many holdings.
    pub fn is_wet(self) -> bool {
        self.suitedness == Suitedness::Monotone || self.connectivity >= Connectivity::Connected
    }

    /// Compact index in `0..54`.
    pub fn class_id(self) -> u8 {
        (self.paired as u8) * 27 + (self.suitedness as u8) * 9 + (self.connectivity as u8) * 3 + self.high as u8
    }
}

impl fmt::Display for BoardTexture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{:?}/{:?}/{:?}",
            if self.paired { "paired/" } else { "" },
            self.suitedness,
            self.connectivity,
            self.high
        )
    }
}

/// Most board ranks inside any five-rank straight window (ace plays low too).
fn max_window(mask: u16) -> u32 {
    let ext = ((mask as u32) << 1) | ((mask as u32 >> 12) & 1);
    (0..10).map(|lo| ((ext >> lo) & 0x1F).count_ones()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tex(s: &str) -> BoardTexture {
        BoardTexture::of(&s.parse().unwrap())
    }

    #[test]
    fn wet_and_dry_examples() {
        let wet = tex("JsTs7c");
        assert_eq!(wet.suitedness, Suitedness::TwoTone);
        assert_eq!(wet.connectivity, Connectivity::Connected);
        assert!(wet.is_wet());
        let dry = tex("Kd8c2h");
        assert_eq!(dry.suitedness, Suitedness::Rainbow);
        assert_eq!(dry.connectivity, Connectivity::Dry);
        assert!(!dry.is_wet());
        assert_eq!(dry.high, HighTier::High);
    }

    #[test]
    fn hand_six_boards() {
        let flop = tex("9d5s2c");
        assert!(!flop.is_wet() && !flop.paired);
        let turn = tex("9d5s2c2d");
        assert!(turn.paired);
        assert_eq!(turn.suitedness, Suitedness::TwoTone);
    }

    #[test]
    fn class_ids_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for paired in [false, true] {
            for s in [Suitedness::Rainbow, Suitedness::TwoTone, Suitedness::Monotone] {
                for c in [Connectivity::Dry, Connectivity::Connected, Connectivity::Straighty] {
                    for h in [HighTier::Low, HighTier::Mid, HighTier::High] {
                        let t = BoardTexture {
                            paired,
                            suitedness: s,
                            connectivity: c,
                            high: h,
                        };
                        assert!(seen.insert(t.class_id()));
                    }
                }
            }
        }
    }
}
