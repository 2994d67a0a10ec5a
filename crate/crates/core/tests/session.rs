mod common;

use std::collections::BTreeMap;

use rand::Rng;

use rangeread::action::{ActionKind, Position, Street};
use rangeread::brain::{Hero, HeroConfig};
use rangeread::cards::{DealRng, Hole};
use rangeread::learning::Learner;
use rangeread::profile::{Archetype, ProfileStore};
use rangeread::range::{Facing, RangeBook};
use rangeread::rsm::Rsm;
use rangeread::table::{
    format_history, parse_history, play_hand, run_fastfold_session, BotBrain, Chips, Deal, Decision, GameState, HandOutput, Players, RakeModel, SessionConfig,
    BB,
};

fn session(hands: u64, seed: u64, trace: bool) -> Vec<HandOutput> {
    let config = SessionConfig {
        hands,
        seed,
        ..SessionConfig::default()
    };
    let mut hero = Hero::new(HeroConfig::default());
    let mut learner = Learner::default();
    let mut out = Vec::new();
    run_fastfold_session(&config, &mut hero, &mut learner, trace, &mut |h| {
        out.push(h);
        Ok(())
    })
    .unwrap();
    out
}

#[test]
fn chips_are_conserved_and_records_replay() {
    let hands = session(400, 77, false);
    for h in &hands {
        let r = &h.record;
        assert_eq!(r.net.iter().sum::<Chips>() + r.rake, 0, "hand {}", r.hand_id);
        let g = r.replay().unwrap();
        assert!(g.is_finished());
        assert_eq!(g.board_cards(), r.board.as_slice());
        let s = g.settlement().unwrap();
        assert_eq!(s.rake, r.rake);
        for (seat, st) in g.seats.iter().enumerate() {
            assert_eq!(st.stack - r.seats[seat].stack, r.net[seat], "hand {} seat {seat}", r.hand_id);
        }
    }
}

#[test]
fn same_seed_gives_identical_history_and_traces() {
    let a = session(150, 9, true);
    let b = session(150, 9, true);
    let records = |v: &[HandOutput]| v.iter().map(|h| h.record.clone()).collect::<Vec<_>>();
    assert_eq!(format_history(&records(&a)), format_history(&records(&b)));
    let traces = |v: &[HandOutput]| v.iter().flat_map(|h| h.trace.clone()).collect::<Vec<_>>();
    assert_eq!(traces(&a), traces(&b));
    assert!(!traces(&a).is_empty());
    let c = session(150, 10, false);
    assert_ne!(format_history(&records(&a)), format_history(&records(&c)));
}

#[test]
fn history_round_trips_byte_identically() {
    let records: Vec<_> = session(200, 3, false).into_iter().map(|h| h.record).collect();
    let text = format_history(&records);
    let parsed = parse_history(&text).unwrap();
    assert_eq!(parsed, records);
    assert_eq!(format_history(&parsed), text);
}

#[test]
fn incremental_stats_equal_a_batch_recount() {
    let config = SessionConfig {
        hands: 300,
        seed: 12,
        ..SessionConfig::default()
    };
    let mut hero = Hero::new(HeroConfig::default());
    let mut learner = Learner::default();
    run_fastfold_session(&config, &mut hero, &mut learner, false, &mut |_| Ok(())).unwrap();
    let recount = ProfileStore::replay(hero.profiles.events()).unwrap();
    let live: Vec<_> = hero.profiles.players().collect();
    let batch: Vec<_> = recount.players().collect();
    assert_eq!(live, batch);
    assert!(live.len() > 50);
}

struct BotsOnly<'a> {
    brain: BotBrain<'a>,
    archetypes: Vec<Archetype>,
}

impl Players for BotsOnly<'_> {
    fn act(&mut self, g: &GameState, seat: usize, rng: &mut DealRng) -> Decision {
        self.brain.act(g, seat, self.archetypes[seat], rng)
    }
}

/// Realized VPIP counts hands where the bot had a pre-flop decision; a big
/// blind that is folded to never gets one.
#[test]
fn bot_vpip_tracks_chart_mass() {
    let rsm = Rsm::default();
    let book = RangeBook::defaults();
    let mut table = BotsOnly {
        brain: BotBrain::new(&rsm, &book).unwrap(),
        archetypes: Vec::new(),
    };
    let mut seen: BTreeMap<&str, (u32, u32)> = BTreeMap::new();
    let mut rng = DealRng::new(20_000, 0);
    for hand_id in 1..=20_000u64 {
        table.archetypes = (0..6).map(|_| Archetype::KNOWN[rng.random_range(0..Archetype::KNOWN.len())]).collect();
        let mut deck = rng.shuffled_deck();
        let holes: Vec<Hole> = (0..6).map(|_| Hole::new(deck.deal().unwrap(), deck.deal().unwrap()).unwrap()).collect();
        let board = [(); 5].map(|_| deck.deal().unwrap());
        let players: Vec<(String, Chips)> = (0..6).map(|i| (format!("b{i}"), 100 * BB)).collect();
        let g = GameState::new(
            hand_id,
            &players,
            (hand_id % 6) as usize,
            BB / 2,
            BB,
            Deal::new(holes, board).unwrap(),
            RakeModel::default(),
        )
        .unwrap();
        let labels: Vec<String> = table.archetypes.iter().map(|a| a.name().to_string()).collect();
        let (record, _) = play_hand(g, &mut table, &mut rng, 0, &labels);
        assert!(record.aborted.is_none());
        for seat in 0..6 {
            let pre = record.actions.iter().filter(|a| a.seat == seat && a.street == Street::Preflop);
            let kinds: Vec<ActionKind> = pre.map(|a| a.kind).collect();
            if kinds.is_empty() {
                continue;
            }
            let entry = seen.entry(table.archetypes[seat].name()).or_default();
            entry.0 += 1;
            entry.1 += u32::from(kinds.iter().any(|k| !matches!(k, ActionKind::Fold | ActionKind::Check)));
        }
    }
    for arch in Archetype::KNOWN {
        let (chart, _) = book.chart_for(arch, Position::Utg, Facing::Unopened).unwrap();
        let target = chart.grid().total() / 1326.0;
        let (n, hits) = seen[arch.name()];
        let realized = f64::from(hits) / f64::from(n);
        assert!(n > 10_000);
        assert!((realized - target).abs() <= 0.02, "{arch}: realized {realized:.4} target {target:.4}");
    }
}
