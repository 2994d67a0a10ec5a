use serde::{Deserialize, Serialize};

use crate::cards::straight_top;
use crate::cards::{Card, Hole};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DrawTier {
    None,
    Backdoor,
    Gutshot,
    /// Flush draw or open-ended straight draw.
    Strong,
    /// Flush draw plus a straight draw.
    Combo,
}

impl DrawTier {
    pub const ALL: [DrawTier; 5] = [DrawTier::None, DrawTier::Backdoor, DrawTier::Gutshot, DrawTier::Strong, DrawTier::Combo];
}

/// Draw held by `hole` on a flop or turn board. Rivers never have draws.
/// Draws only count when a hole card contributes and the hand is not already
/// made in that dimension.
pub fn draw_tier(hole: Hole, board: &[Card]) -> DrawTier {
    if board.len() >= 5 || board.len() < 3 {
        return DrawTier::None;
    }
    let hole_cards = hole.cards();
    let mut suit_all = [0u8; 4];
    let mut suit_hole = [0u8; 4];
    let mut mask_all = 0u16;
    let mut mask_board = 0u16;
    for c in board {
        suit_all[c.suit().index() as usize] += 1;
        mask_board |= 1 << c.rank().index();
    }
    mask_all |= mask_board;
    for c in hole_cards {
        suit_all[c.suit().index() as usize] += 1;
        suit_hole[c.suit().index() as usize] += 1;
        mask_all |= 1 << c.rank().index();
    }
    let made_flush = suit_all.iter().any(|&n| n >= 5);
    let flush_draw = !made_flush && (0..4).any(|s| suit_all[s] == 4 && suit_hole[s] > 0);
    let backdoor = board.len() == 3 && !flush_draw && (0..4).any(|s| suit_all[s] == 3 && suit_hole[s] > 0);

    let (open, gut) = if straight_top(mask_all).is_some() {
        (false, false)
    } else {
        let completing = (0..13u8)
            .filter(|&r| mask_all & (1 << r) == 0)
            .filter(|&r| {
                let with = straight_top(mask_all | (1 << r));
                let board_only = straight_top(mask_board | (1 << r));
                matches!((with, board_only), (Some(a), b) if b.is_none_or(|b| a > b))
            })
            .count();
        (completing >= 2, completing == 1)
    };

    match (flush_draw, open, gut) {
        (true, true, _) | (true, _, true) => DrawTier::Combo,
        (true, false, false) | (false, true, _) => DrawTier::Strong,
        (false, false, true) => DrawTier::Gutshot,
        _ if backdoor => DrawTier::Backdoor,
        _ => DrawTier::None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::parse_cards;

    fn tier(hole: &str, board: &str) -> DrawTier {
        draw_tier(hole.parse().unwrap(), &parse_cards(board).unwrap())
    }

    #[test]
    fn hand_six_whale_draws() {
        assert_eq!(tier("4d3d", "9d5s2c"), DrawTier::Strong);
        assert_eq!(tier("4d3d", "9d5s2c2d"), DrawTier::Combo);
        assert_eq!(tier("4d3d", "9d5s2c2dKs"), DrawTier::None);
    }

    #[test]
    fn gutshot_and_backdoor() {
        assert_eq!(tier("8h7c", "9d5s2c"), DrawTier::Gutshot);
        assert_eq!(tier("KhQh", "9h5s2c"), DrawTier::Backdoor);
        assert_eq!(tier("KcQd", "9h5s2c"), DrawTier::None);
    }

    #[test]
    fn made_straight_is_not_a_draw() {
        assert_eq!(tier("4c3c", "5d6s2h"), DrawTier::None);
    }

    #[test]
    fn board_straight_draw_does_not_count() {
        // 6789 on board: any ten or five completes without hole help
        assert_eq!(tier("AcKd", "6h7s8d9c"), DrawTier::None);
    }
}
