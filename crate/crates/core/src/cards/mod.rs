//! Card primitives, hand evaluation and equity.
//!
//! Cards are totally ordered by `(rank, suit)` with ranks `2 < 3 < … < A` and
//! suits `c < d < h < s`. A card's index in `0..52` is `rank * 4 + suit`.

mod equity;
mod eval;
mod rng;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use equity::for_each_subset;
pub use equity::{equity_exhaustive, equity_multiway_sampled, equity_vs_range, equity_vs_range_with, pot_shares, EquityOptions, DEFAULT_PREFLOP_SAMPLES};
pub(crate) use eval::straight_top;
pub use eval::{evaluate, evaluate7, evaluate_set, Category, HandValue};
pub use rng::{DealRng, Deck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rank(u8);

impl Rank {
    pub const TWO: Rank = Rank(0);
    pub const FIVE: Rank = Rank(3);
    pub const TEN: Rank = Rank(8);
    pub const JACK: Rank = Rank(9);
    pub const QUEEN: Rank = Rank(10);
    pub const KING: Rank = Rank(11);
    pub const ACE: Rank = Rank(12);

    const CHARS: &'static [u8; 13] = b"23456789TJQKA";

    pub fn new(index: u8) -> Option<Rank> {
        (index < 13).then_some(Rank(index))
    }

    /// 0 for deuce through 12 for ace.
    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl DoubleEndedIterator<Item = Rank> {
        (0..13).map(Rank)
    }

    pub fn to_char(self) -> char {
        Self::CHARS[self.0 as usize] as char
    }

    pub fn from_char(c: char) -> Option<Rank> {
        let upper = c.to_ascii_uppercase() as u8;
        Self::CHARS.iter().position(|&b| b == upper).map(|i| Rank(i as u8))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Suit(u8);

impl Suit {
    pub const CLUBS: Suit = Suit(0);
    pub const DIAMONDS: Suit = Suit(1);
    pub const HEARTS: Suit = Suit(2);
    pub const SPADES: Suit = Suit(3);

    const CHARS: &'static [u8; 4] = b"cdhs";

    pub fn new(index: u8) -> Option<Suit> {
        (index < 4).then_some(Suit(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Suit> {
        (0..4).map(Suit)
    }

    pub fn to_char(self) -> char {
        Self::CHARS[self.0 as usize] as char
    }

    pub fn from_char(c: char) -> Option<Suit> {
        Self::CHARS.iter().position(|&b| b == c as u8).map(|i| Suit(i as u8))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Card(u8);

impl Card {
    pub fn new(rank: Rank, suit: Suit) -> Card {
        Card(rank.0 * 4 + suit.0)
    }

    pub fn from_index(index: u8) -> Option<Card> {
        (index < 52).then_some(Card(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn rank(self) -> Rank {
        Rank(self.0 / 4)
    }

    pub fn suit(self) -> Suit {
        Suit(self.0 % 4)
    }

    pub fn all() -> impl Iterator<Item = Card> {
        (0..52).map(Card)
    }

    pub fn mask(self) -> u64 {
        1u64 << self.0
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.rank().to_char(), self.suit().to_char())
    }
}

impl fmt::Debug for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Card {
    type Err = Error;

    fn from_str(s: &str) -> Result<Card> {
        let mut chars = s.chars();
        let (Some(r), Some(su), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(Error::invalid(format!("bad card {s:?}")));
        };
        let rank = Rank::from_char(r).ok_or_else(|| Error::invalid(format!("bad rank in {s:?}")))?;
        let suit = Suit::from_char(su).ok_or_else(|| Error::invalid(format!("bad suit in {s:?}")))?;
        Ok(Card::new(rank, suit))
    }
}

impl Serialize for Card {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Card {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of cards as a 52-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct CardSet(u64);

impl CardSet {
    pub const EMPTY: CardSet = CardSet(0);
    pub const FULL: CardSet = CardSet((1u64 << 52) - 1);

    pub fn from_mask(mask: u64) -> CardSet {
        CardSet(mask & Self::FULL.0)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, card: Card) -> bool {
        self.0 & card.mask() != 0
    }

    pub fn insert(&mut self, card: Card) -> bool {
        let fresh = !self.contains(card);
        self.0 |= card.mask();
        fresh
    }

    pub fn union(self, other: CardSet) -> CardSet {
        CardSet(self.0 | other.0)
    }

    pub fn intersects(self, other: CardSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Card> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as u8;
            m &= m - 1;
            Some(Card(i))
        })
    }

    /// Builds a set, failing on duplicates.
    pub fn try_from_cards(cards: &[Card]) -> Result<CardSet> {
        let mut set = CardSet::EMPTY;
        for &c in cards {
            if !set.insert(c) {
                return Err(Error::invalid(format!("duplicate card {c}")));
            }
        }
        Ok(set)
    }
}

impl FromIterator<Card> for CardSet {
    fn from_iter<I: IntoIterator<Item = Card>>(iter: I) -> Self {
        let mut s = CardSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// Community cards: 0 (pre-flop), 3, 4 or 5 distinct cards.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Board {
    cards: Vec<Card>,
}

impl Board {
    pub fn new(cards: &[Card]) -> Result<Board> {
        if !matches!(cards.len(), 0 | 3 | 4 | 5) {
            return Err(Error::invalid(format!("board must have 0, 3, 4 or 5 cards, got {}", cards.len())));
        }
        CardSet::try_from_cards(cards)?;
        Ok(Board { cards: cards.to_vec() })
    }

    pub fn preflop() -> Board {
        Board::default()
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    pub fn set(&self) -> CardSet {
        self.cards.iter().copied().collect()
    }

    /// Board truncated to the first `n` cards (n in {0,3,4,5}).
    pub fn prefix(&self, n: usize) -> Result<Board> {
        if n > self.cards.len() {
            return Err(Error::invalid("board prefix longer than board"));
        }
        Board::new(&self.cards[..n])
    }

    pub fn push(&mut self, card: Card) -> Result<()> {
        let mut next = self.cards.clone();
        next.push(card);
        *self = Board::new(&next)?;
        Ok(())
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cards.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Board {
    type Err = Error;

    /// Accepts `"9d5s2c"`, `"9d 5s 2c"` or `"-"` for an empty board.
    fn from_str(s: &str) -> Result<Board> {
        let cards = parse_cards(s)?;
        Board::new(&cards)
    }
}

/// Parses a run of cards, with or without separating whitespace.
pub fn parse_cards(s: &str) -> Result<Vec<Card>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
    if compact == "-" || compact.is_empty() {
        return Ok(Vec::new());
    }
    if !compact.len().is_multiple_of(2) {
        return Err(Error::invalid(format!("odd card string {s:?}")));
    }
    compact
        .as_bytes()
        .chunks(2)
        .map(|ch| std::str::from_utf8(ch).map_err(|_| Error::invalid("non-ascii card")).and_then(str::parse))
        .collect()
}

/// Two hole cards, stored high card first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hole(Card, Card);

impl Hole {
    pub fn new(a: Card, b: Card) -> Result<Hole> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => Err(Error::invalid(format!("duplicate card {a}"))),
            std::cmp::Ordering::Greater => Ok(Hole(a, b)),
            std::cmp::Ordering::Less => Ok(Hole(b, a)),
        }
    }

    pub fn high(self) -> Card {
        self.0
    }

    pub fn low(self) -> Card {
        self.1
    }

    pub fn cards(self) -> [Card; 2] {
        [self.0, self.1]
    }

    pub fn set(self) -> CardSet {
        CardSet(self.0.mask() | self.1.mask())
    }
}

impl fmt::Display for Hole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

impl FromStr for Hole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Hole> {
        match parse_cards(s)?.as_slice() {
            [a, b] => Hole::new(*a, *b),
            _ => Err(Error::invalid(format!("hole needs two cards: {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn card_text_round_trip() {
        for c in Card::all() {
            let s = c.to_string();
            assert_eq!(s.parse::<Card>().unwrap(), c);
        }
        assert_eq!("As".parse::<Card>().unwrap().to_string(), "As");
        assert_eq!("Td".parse::<Card>().unwrap().rank(), Rank::TEN);
        assert!("1s".parse::<Card>().is_err());
        assert!("AS".parse::<Card>().is_err());
    }

    #[test]
    fn ordering_is_rank_then_suit() {
        let c2 = "2s".parse::<Card>().unwrap();
        let c3 = "3c".parse::<Card>().unwrap();
        let ah = "Ah".parse::<Card>().unwrap();
        let as_ = "As".parse::<Card>().unwrap();
        assert!(c2 < c3);
        assert!(ah < as_);
        assert_eq!(Card::all().count(), 52);
    }

    #[test]
    fn board_lengths() {
        assert!("9d5s2c".parse::<Board>().is_ok());
        assert!("9d 5s".parse::<Board>().is_err());
        assert!("9d9d2c".parse::<Board>().is_err());
        assert_eq!("-".parse::<Board>().unwrap().len(), 0);
    }

    #[test]
    fn hole_orders_high_first() {
        let h: Hole = "3d4d".parse().unwrap();
        assert_eq!(h.to_string(), "4d3d");
        assert!("4d4d".parse::<Hole>().is_err());
    }
}
