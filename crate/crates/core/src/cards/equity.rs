use rand::Rng;

use super::{evaluate_set, Board, Card, CardSet, Hole};
use crate::error::{Error, Result};
use crate::range::{Combo, ComboGrid};

/// Pre-flop range equity falls back to sampling with this many draws.
pub const DEFAULT_PREFLOP_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy)]
pub struct EquityOptions {
    pub preflop_samples: usize,
    pub seed: u64,
}

impl Default for EquityOptions {
    fn default() -> Self {
        EquityOptions {
            preflop_samples: DEFAULT_PREFLOP_SAMPLES,
            seed: 0x5eed,
        }
    }
}

/// Calls `f` with every `k`-subset of `cards` as a set.
pub(crate) fn for_each_subset(cards: &[Card], k: usize, mut f: impl FnMut(CardSet)) {
    let n = cards.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut s = CardSet::EMPTY;
        for &i in &idx {
            s.insert(cards[i]);
        }
        f(s);
        // advance to the next combination in lexicographic order
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_distinct(parts: &[CardSet]) -> Result<CardSet> {
    let mut all = CardSet::EMPTY;
    for p in parts {
        if all.intersects(*p) {
            return Err(Error::invalid("card collision between hands and board"));
        }
        all = all.union(*p);
    }
    Ok(all)
}

/// Exact share of the pot for each hand (win = 1, k-way tie = 1/k), averaged
/// over every completion of the board.
pub fn pot_shares(holes: &[Hole], board: &Board) -> Result<Vec<f64>> {
    let mut parts: Vec<CardSet> = holes.iter().map(|h| h.set()).collect();
    parts.push(board.set());
    let used = check_distinct(&parts)?;
    let live: Vec<Card> = Card::all().filter(|c| !used.contains(*c)).collect();
    let missing = 5 - board.len();
    let board_set = board.set();
    let mut shares = vec![0.0; holes.len()];
    let mut runs = 0u64;
    let mut values = vec![Default::default(); holes.len()];
    for_each_subset(&live, missing, |run| {
        let full = board_set.union(run);
        for (v, h) in values.iter_mut().zip(holes) {
            *v = evaluate_set(full.union(h.set()));
        }
        accumulate_shares(&values, &mut shares);
        runs += 1;
    });
    for s in &mut shares {
        *s /= runs as f64;
    }
    Ok(shares)
}

fn accumulate_shares(values: &[super::HandValue], shares: &mut [f64]) {
    let best = values.iter().max().copied().unwrap_or_default();
    let winners = values.iter().filter(|v| **v == best).count() as f64;
    for (s, v) in shares.iter_mut().zip(values) {
        if *v == best {
            *s += 1.0 / winners;
        }
    }
}

/// Hero's exact heads-up equity: P(win) + P(tie) / 2 over all runouts.
pub fn equity_exhaustive(hero: Hole, villain: Hole, board: &Board) -> Result<f64> {
    Ok(pot_shares(&[hero, villain], board)?[0])
}

/// Weighted average of heads-up equity against every live combo in `range`.
pub fn equity_vs_range(hero: Hole, range: &ComboGrid, board: &Board) -> Result<f64> {
    equity_vs_range_with(hero, range, board, EquityOptions::default())
}

pub fn equity_vs_range_with(hero: Hole, range: &ComboGrid, board: &Board, opts: EquityOptions) -> Result<f64> {
    let dead = hero.set().union(board.set());
    if hero.set().intersects(board.set()) {
        return Err(Error::invalid("hero cards collide with board"));
    }
    let live: Vec<(Combo, f64)> = range.iter_weighted().filter(|(c, w)| *w > 0.0 && !c.set().intersects(dead)).collect();
    let total: f64 = live.iter().map(|(_, w)| w).sum();
    if live.is_empty() || total <= 0.0 {
        return Err(Error::DegenerateRange);
    }
    if board.is_empty() {
        let mut rng = super::DealRng::new(opts.seed, 0);
        let grid = ComboGrid::from_weights(live.iter().map(|&(c, w)| (c, w)));
        return Ok(equity_multiway_sampled(hero, &[&grid], board, CardSet::EMPTY, opts.preflop_samples, &mut rng));
    }
    let mut acc = 0.0;
    for (c, w) in &live {
        acc += w * equity_exhaustive(hero, c.hole(), board)?;
    }
    Ok(acc / total)
}

/// Cumulative weight table for sampling combos from a grid.
struct Sampler {
    combos: Vec<Combo>,
    cumulative: Vec<f64>,
}

impl Sampler {
    fn new(grid: &ComboGrid, dead: CardSet) -> Option<Sampler> {
        let mut combos = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        for (c, w) in grid.iter_weighted() {
            if w > 0.0 && !c.set().intersects(dead) {
                acc += w;
                combos.push(c);
                cumulative.push(acc);
            }
        }
        (acc > 0.0).then_some(Sampler { combos, cumulative })
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Combo {
        let total = *self.cumulative.last().unwrap();
        let x = rng.random::<f64>() * total;
        let i = self.cumulative.partition_point(|&c| c <= x).min(self.combos.len() - 1);
        self.combos[i]
    }
}

/// Monte-Carlo equity of `hero` against one hand drawn from each range,
/// with the board completed at random. Draws that collide are rejected.
/// Returns 0.5-style shares for ties. Falls back to 0.0 if a range has no
/// live combos.
pub fn equity_multiway_sampled<R: Rng + ?Sized>(hero: Hole, ranges: &[&ComboGrid], board: &Board, dead: CardSet, samples: usize, rng: &mut R) -> f64 {
    let base_dead = dead.union(hero.set()).union(board.set());
    let samplers: Option<Vec<Sampler>> = ranges.iter().map(|g| Sampler::new(g, base_dead)).collect();
    let Some(samplers) = samplers else {
        return 0.0;
    };
    let live: Vec<Card> = Card::all().filter(|c| !base_dead.contains(*c)).collect();
    let missing = 5 - board.len();
    let mut total = 0.0;
    let mut done = 0usize;
    let mut attempts = 0usize;
    let mut values = vec![Default::default(); samplers.len() + 1];
    let board_set = board.set();
    while done < samples && attempts < samples * 20 {
        attempts += 1;
        let mut used = base_dead;
        let mut holes = Vec::with_capacity(samplers.len());
        let mut ok = true;
        for s in &samplers {
            let c = s.draw(rng);
            if c.set().intersects(used) {
                ok = false;
                break;
            }
            used = used.union(c.set());
            holes.push(c.hole());
        }
        if !ok {
            continue;
        }
        let mut run = board_set;
        let mut got = 0;
        while got < missing {
            let c = live[rng.random_range(0..live.len())];
            if !used.contains(c) {
                used.insert(c);
                run.insert(c);
                got += 1;
            }
        }
        values[0] = evaluate_set(run.union(hero.set()));
        for (v, h) in values[1..].iter_mut().zip(&holes) {
            *v = evaluate_set(run.union(h.set()));
        }
        let best = *values.iter().max().unwrap();
        if values[0] == best {
            let ties = values.iter().filter(|v| **v == best).count();
            total += 1.0 / ties as f64;
        }
        done += 1;
    }
    if done == 0 {
        0.0
    } else {
        total / done as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::parse_cards;

    fn hole(s: &str) -> Hole {
        s.parse().unwrap()
    }

    fn board(s: &str) -> Board {
        s.parse().unwrap()
    }

    #[test]
    fn subset_counts() {
        let cards: Vec<Card> = parse_cards("2c3c4c5c6c7c").unwrap();
        for (k, expect) in [(0, 1), (1, 6), (2, 15), (3, 20), (6, 1)] {
            let mut n = 0;
            for_each_subset(&cards, k, |_| n += 1);
            assert_eq!(n, expect, "k={k}");
        }
    }

    #[test]
    fn nuts_on_complete_board() {
        let e = equity_exhaustive(hole("AsKs"), hole("2h3d"), &board("QsJsTs4c9h")).unwrap();
        assert_eq!(e, 1.0);
    }

    #[test]
    fn board_plays_ties() {
        let e = equity_exhaustive(hole("2h3h"), hole("2d3d"), &board("AsKsQsJsTs")).unwrap();
        assert_eq!(e, 0.5);
    }

    #[test]
    fn collision_is_rejected() {
        assert!(equity_exhaustive(hole("9h9s"), hole("9h3d"), &board("9d5s2c")).is_err());
    }
}
