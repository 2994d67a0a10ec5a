//! Side-pot construction and settlement in integer chips.

use serde::{Deserialize, Serialize};

use super::Chips;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pot {
    pub amount: Chips,
    /// Seats that can win this pot, ascending.
    pub eligible: Vec<usize>,
}

/// Returns the uncalled part of the largest contribution, if any, as
/// `(seat, amount)`. That amount never forms a pot.
pub fn uncalled(totals: &[Chips]) -> Option<(usize, Chips)> {
    let (top, &max) = totals.iter().enumerate().max_by_key(|&(i, t)| (*t, std::cmp::Reverse(i)))?;
    let second = totals.iter().enumerate().filter(|&(i, _)| i != top).map(|(_, &t)| t).max().unwrap_or(0);
    (max > second).then_some((top, max - second))
}

/// Splits contributions into a main pot and side pots. Each layer is bounded
/// by the commitment of a live (non-folded) player; folded chips fall into
/// the layers they reach. Layers with identical eligibility are merged.
pub fn build_pots(totals: &[Chips], folded: &[bool]) -> Vec<Pot> {
    let mut levels: Vec<Chips> = totals.iter().zip(folded).filter(|(t, f)| !**f && **t > 0).map(|(t, _)| *t).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut pots: Vec<Pot> = Vec::new();
    let mut prev = 0;
    let top = levels.last().copied().unwrap_or(0);
    for (k, &level) in levels.iter().enumerate() {
        // the last layer also absorbs folded chips above every live level
        let cap = if k + 1 == levels.len() { Chips::MAX } else { level };
        let amount: Chips = totals.iter().map(|&t| t.min(cap) - t.min(prev)).sum();
        let eligible: Vec<usize> = (0..totals.len()).filter(|&i| !folded[i] && totals[i] >= level).collect();
        prev = level;
        if amount == 0 {
            continue;
        }
        match pots.last_mut() {
            Some(p) if p.eligible == eligible => p.amount += amount,
            _ => pots.push(Pot { amount, eligible }),
        }
    }
    debug_assert!(top == 0 || pots.iter().map(|p| p.amount).sum::<Chips>() == totals.iter().sum::<Chips>());
    pots
}

/// Removes `rake` from the pots, main pot first.
pub fn take_rake(pots: &mut [Pot], mut rake: Chips) {
    for p in pots.iter_mut() {
        let take = rake.min(p.amount);
        p.amount -= take;
        rake -= take;
    }
    debug_assert_eq!(rake, 0, "rake exceeds pot");
}

/// Pays each pot to its best eligible hands. `strength[i]` orders hands
/// (higher wins); `order` lists seats starting left of the button and
/// decides who receives odd chips. Returns chips won per seat.
pub fn award<S: Ord + Copy>(pots: &[Pot], strength: &[S], order: &[usize]) -> Vec<Chips> {
    let mut won = vec![0; strength.len()];
    for pot in pots {
        let Some(best) = pot.eligible.iter().map(|&i| strength[i]).max() else {
            continue;
        };
        let winners: Vec<usize> = order.iter().copied().filter(|i| pot.eligible.contains(i) && strength[*i] == best).collect();
        let n = winners.len() as Chips;
        let share = pot.amount / n;
        let mut odd = pot.amount - share * n;
        for w in winners {
            won[w] += share;
            if odd > 0 {
                won[w] += 1;
                odd -= 1;
            }
        }
    }
    won
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_way_all_in_layers() {
        // A 100 all-in, B 300 all-in, C 500 covers
        let pots = build_pots(&[100, 300, 500], &[false, false, false]);
        assert_eq!(
            pots,
            vec![
                Pot {
                    amount: 300,
                    eligible: vec![0, 1, 2]
                },
                Pot {
                    amount: 400,
                    eligible: vec![1, 2]
                },
                Pot {
                    amount: 200,
                    eligible: vec![2]
                },
            ]
        );
        assert_eq!(uncalled(&[100, 300, 500]), Some((2, 200)));
    }

    #[test]
    fn folded_chips_join_reached_layers() {
        let pots = build_pots(&[50, 200, 200, 0], &[true, false, false, true]);
        assert_eq!(
            pots,
            vec![Pot {
                amount: 450,
                eligible: vec![1, 2]
            }]
        );
    }

    #[test]
    fn odd_chip_goes_left_of_button() {
        let pots = vec![Pot {
            amount: 301,
            eligible: vec![0, 2],
        }];
        // button is seat 1, so seat 2 is first to its left
        let won = award(&pots, &[5, 0, 5], &[2, 0, 1]);
        assert_eq!(won, vec![150, 0, 151]);
    }

    #[test]
    fn rake_drains_main_pot_first() {
        let mut pots = vec![Pot { amount: 10, eligible: vec![0] }, Pot { amount: 10, eligible: vec![1] }];
        take_rake(&mut pots, 15);
        assert_eq!((pots[0].amount, pots[1].amount), (0, 5));
    }
}
