//! Independent reference implementations shared by the integration tests
//! and the acceptance binary. They trade speed for obviousness.

#![allow(dead_code)]

use rangeread::cards::{Card, Category, Hole};
use rangeread::range::ComboGrid;
use rangeread::table::Chips;

/// Comparable rank of a five-card hand: category (0 = high card ... 8 =
/// straight flush) then tie-break ranks, highest significance first.
pub type NaiveRank = (u8, Vec<u8>);

pub fn naive_rank5(cards: &[Card]) -> NaiveRank {
    assert_eq!(cards.len(), 5);
    let mut counts = [0u8; 13];
    for c in cards {
        counts[c.rank().index() as usize] += 1;
    }
    let flush = cards.iter().all(|c| c.suit() == cards[0].suit());
    let mut distinct: Vec<u8> = (0..13u8).rev().filter(|&r| counts[r as usize] > 0).collect();
    let straight_high = if distinct.len() == 5 {
        if distinct[0] - distinct[4] == 4 {
            Some(distinct[0])
        } else if distinct == [12, 3, 2, 1, 0] {
            Some(3)
        } else {
            None
        }
    } else {
        None
    };
    // groups ordered by size, then rank
    distinct.sort_by(|a, b| counts[*b as usize].cmp(&counts[*a as usize]).then(b.cmp(a)));
    let shape: Vec<u8> = distinct.iter().map(|r| counts[*r as usize]).collect();
    let cat = match (straight_high, flush, shape.as_slice()) {
        (Some(_), true, _) => 8,
        (_, _, [4, 1]) => 7,
        (_, _, [3, 2]) => 6,
        (None, true, _) => 5,
        (Some(_), false, _) => 4,
        (_, _, [3, 1, 1]) => 3,
        (_, _, [2, 2, 1]) => 2,
        (_, _, [2, 1, 1, 1]) => 1,
        _ => 0,
    };
    let tiebreak = match straight_high {
        Some(h) => vec![h],
        None => distinct,
    };
    (cat, tiebreak)
}

/// Best five-card rank among all subsets of 5 to 7 cards.
pub fn naive_best(cards: &[Card]) -> NaiveRank {
    let n = cards.len();
    assert!((5..=7).contains(&n));
    let mut best: Option<NaiveRank> = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != 5 {
            continue;
        }
        let pick: Vec<Card> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| cards[i]).collect();
        let r = naive_rank5(&pick);
        if best.as_ref().is_none_or(|b| r > *b) {
            best = Some(r);
        }
    }
    best.unwrap()
}

pub fn category_of(cat: u8) -> Category {
    Category::ALL[cat as usize]
}

/// Textbook counts of five-card hands by category, high card first.
pub const FIVE_CARD_COUNTS: [u64; 9] = [1_302_540, 1_098_240, 123_552, 54_912, 10_200, 5_108, 3_744, 624, 40];

/// Chance-I'm-beat by direct comparison of every live combo.
pub fn chib_oracle(hero: Hole, grid: &ComboGrid, board: &[Card]) -> f64 {
    let mut hero_cards = board.to_vec();
    hero_cards.extend(hero.cards());
    let hero_rank = naive_best(&hero_cards);
    let dead: Vec<Card> = hero_cards.clone();
    let (mut beat, mut total) = (0.0, 0.0);
    for (c, w) in grid.iter_weighted() {
        let (a, b) = c.cards();
        if w <= 0.0 || dead.contains(&a) || dead.contains(&b) {
            continue;
        }
        let mut cards = board.to_vec();
        cards.extend([a, b]);
        total += w;
        if naive_best(&cards) > hero_rank {
            beat += w;
        }
    }
    beat / total
}

/// Settles contributions chip by chip. Every chip level forms its own
/// layer, contested by live seats that reached it; consecutive layers with
/// the same contestants form one pot. Chips above every live level join the
/// last contested pot. Odd chips go to winners in `order`.
pub fn side_pot_oracle(totals: &[Chips], folded: &[bool], strength: &[u32], order: &[usize]) -> Vec<Chips> {
    let n = totals.len();
    let top = totals.iter().copied().max().unwrap_or(0);
    let mut pots: Vec<(Vec<usize>, Chips)> = Vec::new();
    for level in 1..=top {
        let chips = totals.iter().filter(|&&t| t >= level).count() as Chips;
        let contest: Vec<usize> = (0..n).filter(|&i| !folded[i] && totals[i] >= level).collect();
        match pots.last_mut() {
            Some((c, amount)) if *c == contest || contest.is_empty() => *amount += chips,
            _ => pots.push((contest, chips)),
        }
    }
    let mut won = vec![0; n];
    for (contest, amount) in pots {
        let best = contest.iter().map(|&i| strength[i]).max().unwrap();
        let winners: Vec<usize> = order.iter().copied().filter(|i| contest.contains(i) && strength[*i] == best).collect();
        for k in 0..amount {
            won[winners[(k as usize) % winners.len()]] += 1;
        }
    }
    won
}

/// Random deal of `n` distinct cards.
pub fn deal(rng: &mut rangeread::cards::DealRng, n: usize) -> Vec<Card> {
    let mut deck = rng.shuffled_deck();
    (0..n).map(|_| deck.deal().unwrap()).collect()
}

/// Random grid over at most `max_support` combos avoiding `dead`.
pub fn random_grid(rng: &mut rangeread::cards::DealRng, max_support: usize, dead: &[Card]) -> ComboGrid {
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rangeread::range::Combo;
    let mut live: Vec<Combo> = Combo::all()
        .filter(|c| {
            let (a, b) = c.cards();
            !dead.contains(&a) && !dead.contains(&b)
        })
        .collect();
    live.shuffle(rng);
    let k = rng.random_range(1..=max_support.min(live.len()));
    ComboGrid::from_weights(live[..k].iter().map(|&c| (c, rng.random_range(0.01..1.0))))
}

/// A random all-in settlement: contributions, folds and showdown strengths,
/// always with a live seat holding the largest contribution.
pub fn random_all_in(rng: &mut rangeread::cards::DealRng) -> (Vec<Chips>, Vec<bool>, Vec<u32>, Vec<usize>) {
    use rand::Rng;
    let n = rng.random_range(2..=6);
    let totals: Vec<Chips> = (0..n).map(|_| rng.random_range(1..=300)).collect();
    let top = (0..n).max_by_key(|&i| totals[i]).unwrap();
    let folded: Vec<bool> = (0..n).map(|i| i != top && rng.random_bool(0.3)).collect();
    let strength: Vec<u32> = (0..n).map(|_| rng.random_range(0..4)).collect();
    let button = rng.random_range(0..n);
    let order: Vec<usize> = (1..=n).map(|k| (button + k) % n).collect();
    (totals, folded, strength, order)
}
