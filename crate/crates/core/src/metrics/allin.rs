use rand::seq::SliceRandom;

use crate::action::Street;
use crate::cards::{evaluate_set, for_each_subset, Card, CardSet, DealRng, HandValue};
use crate::error::Result;
use crate::table::{build_pots, take_rake, Chips, HandRecord, Pot};

/// Runouts are enumerated when at most this many board cards are missing
/// at the lock, and sampled otherwise.
pub const EXACT_MISSING_CARDS: usize = 2;
pub const LOCK_SAMPLES: usize = 4_000;
const SAMPLE_STREAM: u64 = 0xa111;

/// The moment a seat's chips were fully committed with the hand still
/// contested.
#[derive(Debug, Clone, PartialEq)]
pub struct LockPoint {
    /// Board cards visible at the lock.
    pub board: Vec<Card>,
    /// Pots after rake, as finally settled.
    pub pots: Vec<Pot>,
    /// Chips the seat put in, uncalled chips excluded.
    pub invested: Chips,
}

/// Finds where `seat` went all in, if it then reached a showdown with
/// cards still to come.
pub fn lock_point(record: &HandRecord, seat: usize) -> Result<Option<LockPoint>> {
    if record.aborted.is_some() || !record.shown.contains(&seat) {
        return Ok(None);
    }
    let g = record.replay()?;
    let Some(s) = g.settlement() else { return Ok(None) };
    let mut totals: Vec<Chips> = g.seats.iter().map(|x| x.total).collect();
    if let Some((who, amount)) = s.returned {
        totals[who] -= amount;
    }
    if g.seats[seat].total < g.seats[seat].start_stack {
        return Ok(None);
    }
    // an all-in seat cannot act again, so its last action committed it
    let street = record.actions.iter().rev().find(|a| a.seat == seat).map_or(Street::Preflop, |a| a.street);
    let board_len = street.board_len();
    if board_len >= 5 {
        return Ok(None);
    }
    let folded: Vec<bool> = g.seats.iter().map(|x| x.folded).collect();
    let mut pots = build_pots(&totals, &folded);
    take_rake(&mut pots, s.rake);
    Ok(Some(LockPoint {
        board: record.runout[..board_len].to_vec(),
        pots,
        invested: totals[seat],
    }))
}

/// Result for `seat` with the runout after its all-in replaced by the
/// expected share of the pots. Hands without such an all-in keep their
/// actual result. Rake is taken exactly as it was.
pub fn all_in_adjusted(record: &HandRecord, seat: usize) -> Result<Chips> {
    let actual = record.net[seat];
    let Some(lock) = lock_point(record, seat)? else {
        return Ok(actual);
    };
    let live: Vec<usize> = record.shown.clone();
    let mut known = CardSet::try_from_cards(&lock.board)?;
    for &s in &live {
        known = known.union(record.holes[s].set());
    }
    let deck: Vec<Card> = Card::all().filter(|c| !known.contains(*c)).collect();
    let board = CardSet::try_from_cards(&lock.board)?;
    let missing = 5 - lock.board.len();
    let n = record.seats.len();
    let order: Vec<usize> = (1..=n).map(|k| (record.button + k) % n).collect();
    let mut strength = vec![HandValue::default(); n];
    let mut total = 0.0;
    let mut runs = 0u64;
    let mut score = |run: CardSet| {
        let full = board.union(run);
        for &s in &live {
            strength[s] = evaluate_set(full.union(record.holes[s].set()));
        }
        total += crate::table::award(&lock.pots, &strength, &order)[seat] as f64;
        runs += 1;
    };
    if missing <= EXACT_MISSING_CARDS {
        for_each_subset(&deck, missing, &mut score);
    } else {
        let mut rng = DealRng::new(record.hand_id, SAMPLE_STREAM);
        let mut cards = deck.clone();
        for _ in 0..LOCK_SAMPLES {
            let (head, _) = cards.partial_shuffle(&mut rng, missing);
            score(CardSet::try_from_cards(head)?);
        }
    }
    let expected = total / runs as f64;
    Ok(expected.round() as Chips - lock.invested)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::{equity_exhaustive, Board, Hole};
    use crate::table::{Action, Deal, GameState, HandRecord, RakeModel, BB};

    fn heads_up(hero: &str, villain: &str, board: &str, script: &[(Action, bool)]) -> HandRecord {
        let holes: Vec<Hole> = vec![hero.parse().unwrap(), villain.parse().unwrap()];
        let b: Board = board.parse().unwrap();
        let runout: [Card; 5] = b.cards().try_into().unwrap();
        let players = vec![("hero".to_string(), 100 * BB), ("v".to_string(), 100 * BB)];
        let mut g = GameState::new(1, &players, 0, BB / 2, BB, Deal::new(holes, runout).unwrap(), RakeModel::none()).unwrap();
        for (a, _) in script {
            g.apply(*a, 0).unwrap();
        }
        assert!(g.is_finished());
        HandRecord::from_state(&g, 0, &["hero".into(), "v".into()], None)
    }

    // button is seat 0 and posts the small blind heads-up; it acts first
    // pre-flop and last after the flop
    fn turn_all_in(hero: &str, villain: &str, board: &str) -> HandRecord {
        let script = [
            (Action::call(), false),
            (Action::check(), false),
            (Action::check(), false),
            (Action::check(), false),
            (Action::check(), false),
            (Action::all_in(), false),
            (Action::call(), false),
        ];
        heads_up(hero, villain, board, &script)
    }

    #[test]
    fn no_all_in_keeps_actual() {
        let script = [
            (Action::call(), false),
            (Action::check(), false),
            (Action::check(), false),
            (Action::check(), false),
            (Action::check(), false),
            (Action::check(), false),
            (Action::check(), false),
            (Action::check(), false),
        ];
        let r = heads_up("9h9s", "4d3d", "9d5s2c2dKs", &script);
        assert_eq!(all_in_adjusted(&r, 0).unwrap(), r.net[0]);
    }

    #[test]
    fn turn_all_in_matches_river_enumeration() {
        let r = turn_all_in("4d3d", "9h9s", "9d5s2c2dKs");
        let eq = equity_exhaustive("4d3d".parse().unwrap(), "9h9s".parse().unwrap(), &"9d5s2c2d".parse().unwrap()).unwrap();
        let pot = 200 * BB;
        let want = (eq * pot as f64).round() as Chips - 100 * BB;
        assert_eq!(all_in_adjusted(&r, 0).unwrap(), want);
        assert!(r.net[0] < 0);
    }

    #[test]
    fn certain_winner_is_unchanged() {
        // quad aces on the turn cannot lose
        let r = turn_all_in("AhAs", "KhKs", "AdAc5s2d7h");
        assert_eq!(all_in_adjusted(&r, 0).unwrap(), r.net[0]);
    }
}
