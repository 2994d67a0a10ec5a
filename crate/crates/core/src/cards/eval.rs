use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Card, CardSet, Hole, Rank};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    HighCard = 0,
    Pair = 1,
    TwoPair = 2,
    Trips = 3,
    Straight = 4,
    Flush = 5,
    FullHouse = 6,
    Quads = 7,
    StraightFlush = 8,
}

impl Category {
    pub const ALL: [Category; 9] = [
        Category::HighCard,
        Category::Pair,
        Category::TwoPair,
        Category::Trips,
        Category::Straight,
        Category::Flush,
        Category::FullHouse,
        Category::Quads,
        Category::StraightFlush,
    ];

    fn from_u32(v: u32) -> Category {
        Self::ALL[v as usize]
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::HighCard => "high-card",
            Category::Pair => "pair",
            Category::TwoPair => "two-pair",
            Category::Trips => "trips",
            Category::Straight => "straight",
            Category::Flush => "flush",
            Category::FullHouse => "full-house",
            Category::Quads => "quads",
            Category::StraightFlush => "straight-flush",
        }
    }
}

/// Absolute strength of the best five-card hand.
///
/// Packed as `category << 20` followed by five 4-bit rank slots (rank index
/// plus one, zero for an absent card), so integer order is hand order. Fewer
/// than five cards leave trailing slots empty.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct HandValue(u32);

impl HandValue {
    /// Builds a value from a category and tiebreak ranks in significance order.
    /// Missing trailing ranks compare below every real rank, which makes this
    /// usable as a threshold ("pair of nines with any kicker").
    pub fn new(category: Category, ranks: &[Rank]) -> HandValue {
        debug_assert!(ranks.len() <= 5);
        let mut v = (category as u32) << 20;
        for (i, r) in ranks.iter().take(5).enumerate() {
            v |= (r.index() as u32 + 1) << (16 - 4 * i);
        }
        HandValue(v)
    }

    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn category(self) -> Category {
        Category::from_u32(self.0 >> 20)
    }

    /// Tiebreak ranks in significance order (absent slots omitted).
    pub fn ranks(self) -> Vec<Rank> {
        (0..5)
            .filter_map(|i| {
                let nib = (self.0 >> (16 - 4 * i)) & 0xF;
                (nib > 0).then(|| Rank::new(nib as u8 - 1).unwrap())
            })
            .collect()
    }

    /// First tiebreak rank (pair rank for pairs, top card for straights).
    pub fn primary(self) -> Option<Rank> {
        self.ranks().first().copied()
    }
}

impl fmt::Debug for HandValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.category().name())?;
        for r in self.ranks() {
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for HandValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Top rank index of a five-long run in `mask` (bit i = rank i), ace-low aware.
pub(crate) fn straight_top(mask: u16) -> Option<u8> {
    let ext = ((mask as u32) << 1) | ((mask as u32 >> 12) & 1);
    (4..=13u32).rev().find(|&top| (ext >> (top - 4)) & 0x1F == 0x1F).map(|top| top as u8 - 1)
}

fn top_ranks(mut mask: u16, n: usize, out: &mut [u8; 5], start: usize) -> usize {
    let mut k = start;
    while mask != 0 && k < start + n && k < 5 {
        let r = 15 - mask.leading_zeros() as u8;
        out[k] = r;
        k += 1;
        mask &= !(1 << r);
    }
    k
}

fn pack(category: Category, ranks: &[u8]) -> HandValue {
    let mut v = (category as u32) << 20;
    for (i, &r) in ranks.iter().enumerate() {
        v |= (r as u32 + 1) << (16 - 4 * i);
    }
    HandValue(v)
}

/// Best hand from any set of cards (1 to 7 cards; fewer than five yield
/// partial values with empty trailing slots).
pub fn evaluate_set(set: CardSet) -> HandValue {
    let mut suit_masks = [0u16; 4];
    let mut counts = [0u8; 13];
    for c in set.iter() {
        let (r, s) = (c.rank().index(), c.suit().index());
        suit_masks[s as usize] |= 1 << r;
        counts[r as usize] += 1;
    }
    let rank_mask = suit_masks[0] | suit_masks[1] | suit_masks[2] | suit_masks[3];
    let mut buf = [0u8; 5];

    let mut flush: Option<u16> = None;
    for &sm in &suit_masks {
        if sm.count_ones() >= 5 {
            if let Some(top) = straight_top(sm) {
                return pack(Category::StraightFlush, &[top]);
            }
            flush = Some(sm);
        }
    }

    let (mut quads, mut trips, mut pairs) = (0u16, 0u16, 0u16);
    for (r, n) in counts.iter().enumerate() {
        match n {
            4 => quads |= 1 << r,
            3 => trips |= 1 << r,
            2 => pairs |= 1 << r,
            _ => {}
        }
    }

    if quads != 0 {
        let q = 15 - quads.leading_zeros() as u8;
        buf[0] = q;
        let n = top_ranks(rank_mask & !(1 << q), 1, &mut buf, 1);
        return pack(Category::Quads, &buf[..n]);
    }
    if trips != 0 {
        let t = 15 - trips.leading_zeros() as u8;
        let rest = (trips & !(1 << t)) | pairs;
        if rest != 0 {
            let p = 15 - rest.leading_zeros() as u8;
            return pack(Category::FullHouse, &[t, p]);
        }
    }
    if let Some(sm) = flush {
        let n = top_ranks(sm, 5, &mut buf, 0);
        return pack(Category::Flush, &buf[..n]);
    }
    if let Some(top) = straight_top(rank_mask) {
        return pack(Category::Straight, &[top]);
    }
    if trips != 0 {
        let t = 15 - trips.leading_zeros() as u8;
        buf[0] = t;
        let n = top_ranks(rank_mask & !(1 << t), 2, &mut buf, 1);
        return pack(Category::Trips, &buf[..n]);
    }
    if pairs.count_ones() >= 2 {
        let hi = 15 - pairs.leading_zeros() as u8;
        let lo = 15 - (pairs & !(1 << hi)).leading_zeros() as u8;
        buf[0] = hi;
        buf[1] = lo;
        let n = top_ranks(rank_mask & !(1 << hi) & !(1 << lo), 1, &mut buf, 2);
        return pack(Category::TwoPair, &buf[..n]);
    }
    if pairs != 0 {
        let p = 15 - pairs.leading_zeros() as u8;
        buf[0] = p;
        let n = top_ranks(rank_mask & !(1 << p), 3, &mut buf, 1);
        return pack(Category::Pair, &buf[..n]);
    }
    let n = top_ranks(rank_mask, 5, &mut buf, 0);
    pack(Category::HighCard, &buf[..n])
}

/// Evaluates a slice of distinct cards.
pub fn evaluate(cards: &[Card]) -> Result<HandValue> {
    Ok(evaluate_set(CardSet::try_from_cards(cards)?))
}

/// Best five-of-seven value for two hole cards on a complete board.
pub fn evaluate7(hole: Hole, board: &[Card]) -> Result<HandValue> {
    if board.len() != 5 {
        return Err(Error::invalid(format!("evaluate7 needs a 5-card board, got {}", board.len())));
    }
    let mut cards = hole.cards().to_vec();
    cards.extend_from_slice(board);
    evaluate(&cards)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::parse_cards;

    fn eval(s: &str) -> HandValue {
        evaluate(&parse_cards(s).unwrap()).unwrap()
    }

    #[test]
    fn nines_full_of_twos() {
        let v = evaluate7("9h9s".parse().unwrap(), &parse_cards("9d5s2c2dKs").unwrap()).unwrap();
        assert_eq!(v.category(), Category::FullHouse);
        assert_eq!(v.ranks(), vec![Rank::new(7).unwrap(), Rank::TWO]);
    }

    #[test]
    fn busted_draw_is_board_pair() {
        let v = evaluate7("4d3d".parse().unwrap(), &parse_cards("9d5s2c2dKs").unwrap()).unwrap();
        assert_eq!(v.category(), Category::Pair);
        let names: String = v.ranks().iter().map(|r| r.to_char()).collect();
        assert_eq!(names, "2K95");
    }

    #[test]
    fn wheel_and_broadway() {
        assert_eq!(eval("As2d3c4h5s").ranks(), vec![Rank::FIVE]);
        assert_eq!(eval("AsKdQcJhTs").ranks(), vec![Rank::ACE]);
        assert!(eval("6s2d3c4h5s") > eval("As2d3c4h5s"));
        assert_eq!(eval("AsKsQsJsTs").category(), Category::StraightFlush);
    }

    #[test]
    fn two_trips_make_full_house() {
        let v = eval("9h9s9d2c2d2hKs");
        assert_eq!(v.category(), Category::FullHouse);
        assert_eq!(v.ranks(), vec![Rank::new(7).unwrap(), Rank::TWO]);
    }

    #[test]
    fn three_pairs_keep_best_kicker() {
        let v = eval("KhKs9d9c2d2hQs");
        assert_eq!(v.category(), Category::TwoPair);
        assert_eq!(v.ranks(), vec![Rank::KING, Rank::new(7).unwrap(), Rank::QUEEN]);
    }

    #[test]
    fn partial_hands() {
        assert_eq!(eval("9d5s2c").category(), Category::HighCard);
        assert_eq!(eval("9d9s2c").category(), Category::Pair);
        // fewer than five cards compare below a full kicker set
        assert!(eval("9d9s2c") < eval("9d9s2c3h4h"));
    }

    #[test]
    fn threshold_values_sit_below_real_hands() {
        let nine = Rank::new(7).unwrap();
        let t = HandValue::new(Category::Pair, &[nine]);
        assert!(eval("9d9s2c3h4h") > t);
        assert!(eval("8d8s2c3h4h") < t);
    }

    #[test]
    fn duplicate_rejected() {
        assert!(evaluate7("9h9s".parse().unwrap(), &parse_cards("9h5s2c2dKs").unwrap()).is_err());
        assert!(evaluate7("9h9s".parse().unwrap(), &parse_cards("5s2c2dKs").unwrap()).is_err());
    }
}
