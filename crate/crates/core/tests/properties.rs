//! Randomized invariants, 1,000 cases each.

mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use rangeread::brain::{arbitrate, rs_req_call, rs_req_continue, Hero, HeroConfig};
use rangeread::cards::{equity_exhaustive, evaluate7, Board, Card, DealRng, Hole};
use rangeread::learning::Learner;
use rangeread::metrics::{bb100, ResultLedger};
use rangeread::profile::{conviction, ProfileStore};
use rangeread::range::{Combo, ComboGrid, DeadCards, NUM_COMBOS};
use rangeread::ret::{chib, reshape, Ret, RetSet};
use rangeread::rsm::{RsCategory, Rsm};
use rangeread::table::{run_fastfold_session, SessionConfig};

const EPS: f64 = 1e-9;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 1_000,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn rsm() -> &'static Rsm {
    static RSM: OnceLock<Rsm> = OnceLock::new();
    RSM.get_or_init(Rsm::default)
}

fn card(i: u8) -> Card {
    Card::from_index(i).unwrap()
}

fn grid() -> impl Strategy<Value = ComboGrid> {
    prop::collection::vec((0..NUM_COMBOS, 0.001f64..10.0), 1..400)
        .prop_map(|v| ComboGrid::from_weights(v.into_iter().map(|(i, w)| (Combo::from_index(i).unwrap(), w))))
}

/// Distinct cards: the first `n` form the board, the rest are spare.
fn cards(n: impl Strategy<Value = usize>, extra: usize) -> impl Strategy<Value = (Vec<Card>, Vec<Card>)> {
    n.prop_flat_map(move |n| {
        Just((0u8..52).collect::<Vec<u8>>()).prop_shuffle().prop_map(move |deck| {
            let all: Vec<Card> = deck.into_iter().take(n + extra).map(card).collect();
            (all[..n].to_vec(), all[n..].to_vec())
        })
    })
}

fn board() -> impl Strategy<Value = Vec<Card>> {
    cards(3usize..=5, 0).prop_map(|(b, _)| b)
}

fn ret() -> impl Strategy<Value = Ret> {
    let shipped: Vec<Ret> = {
        let set = RetSet::defaults();
        set.ids().map(|id| set.get(id).unwrap().clone()).collect()
    };
    prop_oneof![
        prop::sample::select(shipped),
        prop::array::uniform11(0.0f64..2.0)
            .prop_filter("needs a positive weight", |w| w.iter().any(|x| *x > 0.0))
            .prop_map(|w| Ret::new("RND", w).unwrap()),
    ]
}

fn close(a: &ComboGrid, b: &ComboGrid) -> bool {
    a.weights().iter().zip(b.weights()).all(|(x, y)| (x - y).abs() <= EPS)
}

fn board_dead(board: &[Card]) -> DeadCards {
    DeadCards::new(board).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn normalization_sums_to_one(g in grid()) {
        let n = g.normalized().unwrap();
        prop_assert!((n.total() - 1.0).abs() <= EPS);
        prop_assert_eq!(n.support_size(), g.support_size());
    }

    #[test]
    fn class_view_keeps_mass(g in grid()) {
        prop_assert!((g.class_view().total() - g.total()).abs() <= EPS * g.total().max(1.0));
    }

    #[test]
    fn flat_template_is_identity(g in grid(), b in board()) {
        let view = rsm().view(&Board::new(&b).unwrap()).unwrap();
        let (live, _) = g.strip(board_dead(&b));
        let out = reshape(&view, &live, &Ret::flat()).unwrap();
        prop_assert!(close(&out, &live));
    }

    #[test]
    fn strip_is_idempotent_and_keeps_ratios(g in grid(), b in board()) {
        let dead = board_dead(&b);
        let (once, _) = g.strip(dead);
        let (twice, _) = once.strip(dead);
        prop_assert!(close(&once, &twice));
        let survivors: Vec<Combo> = g.support().filter(|c| once.weight(*c) > 0.0).collect();
        if let (Some(&a), Some(&z)) = (survivors.first(), survivors.last()) {
            let before = g.weight(a) / g.weight(z);
            let after = once.weight(a) / once.weight(z);
            prop_assert!((before - after).abs() <= EPS * before.max(1.0));
        }
    }

    #[test]
    fn template_scale_does_not_matter(g in grid(), b in board(), r in ret(), k in 1e-3f64..1e3) {
        let view = rsm().view(&Board::new(&b).unwrap()).unwrap();
        let base = reshape(&view, &g, &r);
        let scaled = reshape(&view, &g, &r.scaled(k));
        match (base, scaled) {
            (Ok(x), Ok(y)) => prop_assert!(close(&x, &y)),
            (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
        }
    }

    #[test]
    fn support_never_grows(g in grid(), b in board(), r1 in ret(), r2 in ret()) {
        let view = rsm().view(&Board::new(&b).unwrap()).unwrap();
        let (live, support) = g.strip(board_dead(&b));
        prop_assume!(support == rangeread::range::Support::Live);
        prop_assert!(live.support_size() <= g.support_size());
        let Ok(one) = reshape(&view, &live, &r1) else { return Ok(()) };
        prop_assert!(one.support().all(|c| live.weight(c) > 0.0));
        let Ok(two) = reshape(&view, &one, &r2) else { return Ok(()) };
        prop_assert!(two.support().all(|c| one.weight(c) > 0.0));
    }

    #[test]
    fn sequential_templates_commute(g in grid(), b in board(), r1 in ret(), r2 in ret()) {
        let view = rsm().view(&Board::new(&b).unwrap()).unwrap();
        let ab = reshape(&view, &g, &r1).and_then(|x| reshape(&view, &x, &r2));
        let ba = reshape(&view, &g, &r2).and_then(|x| reshape(&view, &x, &r1));
        match (ab, ba) {
            (Ok(x), Ok(y)) => prop_assert!(close(&x, &y)),
            (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
        }
    }

    #[test]
    fn chib_is_a_probability_and_zero_for_the_best_combo(seed in any::<u64>(), n in 3usize..=5) {
        let mut rng = DealRng::new(seed, 0);
        let dealt = common::deal(&mut rng, n + 2);
        let board = Board::new(&dealt[..n]).unwrap();
        let hero = Hole::new(dealt[n], dealt[n + 1]).unwrap();
        let g = common::random_grid(&mut rng, 300, &dealt);
        let c = chib(hero, &g, &board).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
        let best = g
            .support()
            .max_by_key(|c| rangeread::cards::evaluate_set(board.set().union(c.set())))
            .unwrap();
        match chib(best.hole(), &g, &board) {
            Ok(c) => prop_assert_eq!(c, 0.0),
            Err(e) => prop_assert!(matches!(e, rangeread::error::Error::DegenerateRange)),
        }
    }

    #[test]
    fn equity_is_symmetric((b, spare) in cards(4usize..=5, 4)) {
        let board = Board::new(&b).unwrap();
        let h = Hole::new(spare[0], spare[1]).unwrap();
        let v = Hole::new(spare[2], spare[3]).unwrap();
        let sum = equity_exhaustive(h, v, &board).unwrap() + equity_exhaustive(v, h, &board).unwrap();
        prop_assert!((sum - 1.0).abs() <= EPS);
    }

    #[test]
    fn stronger_river_hands_never_rank_lower((b, spare) in cards(Just(5usize), 4)) {
        let board = Board::new(&b).unwrap();
        let view = rsm().view(&board).unwrap();
        let h = Hole::new(spare[0], spare[1]).unwrap();
        let v = Hole::new(spare[2], spare[3]).unwrap();
        let (eh, ev) = (evaluate7(h, &b).unwrap(), evaluate7(v, &b).unwrap());
        if eh > ev {
            prop_assert!(view.category(h) >= view.category(v), "{:?} {:?} on {:?}", h, v, b);
        }
    }

    #[test]
    fn river_nuts_reach_the_top((b, _) in cards(Just(5usize), 0)) {
        let board = Board::new(&b).unwrap();
        let view = rsm().view(&board).unwrap();
        let best = Combo::all()
            .filter(|c| !c.set().intersects(board.set()))
            .max_by_key(|c| evaluate7(c.hole(), &b).unwrap())
            .unwrap();
        prop_assert!(view.category(best.hole()) >= RsCategory::NUTS);
    }

    #[test]
    fn arbitration_ignores_uniform_scale(scores in prop::collection::vec(0.0f64..2.0, 1..6), k in 1e-3f64..1e3, seed in any::<u64>()) {
        let scaled: Vec<f64> = scores.iter().map(|s| s * k).collect();
        // rounding may merge two distinct scores; those cases say nothing
        let ties = |v: &[f64]| v.iter().enumerate().flat_map(|(i, a)| v[i + 1..].iter().map(move |b| a == b)).filter(|t| *t).count();
        prop_assume!(ties(&scores) == ties(&scaled));
        let a = arbitrate(&scores, &mut DealRng::new(seed, 0));
        let b = arbitrate(&scaled, &mut DealRng::new(seed, 0));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn thresholds_are_monotone(p1 in 0.0f64..1.0, p2 in 0.0f64..1.0, a1 in 0.0f64..10.0, a2 in 0.0f64..10.0) {
        let (lo, hi) = if p1 < p2 { (p1, p2) } else { (p2, p1) };
        prop_assert!(rs_req_call(lo) <= rs_req_call(hi));
        let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
        prop_assert!(rs_req_continue(lo) <= rs_req_continue(hi));
    }

    #[test]
    fn conviction_grows_with_sample(dev in -1.0f64..1.0, n in 0u32..10_000, extra in 0u32..10_000) {
        let a = conviction(dev, n);
        let b = conviction(dev, n + extra);
        prop_assert!(a <= b);
        prop_assert!((0.0..=0.95).contains(&b));
    }

    #[test]
    fn win_rate_is_linear(amount in -1_000_000i64..1_000_000, k in 1i64..50, hands in 1u64..1_000_000, bb in 1i64..1_000) {
        let base = bb100(amount, hands, bb).unwrap();
        prop_assert!((bb100(amount * k, hands, bb).unwrap() - base * k as f64).abs() <= 1e-9 * (base * k as f64).abs().max(1.0));
        prop_assert!((bb100(amount, hands * k as u64, bb).unwrap() - base / k as f64).abs() <= 1e-9 * base.abs().max(1.0));
    }

    #[test]
    fn ledger_identity_is_exact(rows in prop::collection::vec((-50_000i64..50_000, 0i64..600), 1..200), bp in 0u32..5_000) {
        let mut l = ResultLedger::new(2, bp);
        for (i, (won, rake)) in rows.iter().enumerate() {
            l.push(i as u64, *won, *rake, *won);
        }
        for e in l.entries() {
            prop_assert_eq!(e.net(), e.pre_rake() - e.rake + e.rakeback);
        }
        let rake: i64 = rows.iter().map(|r| r.1).sum();
        prop_assert_eq!(l.total(|e| e.rakeback), rake * i64::from(bp) / 10_000);
        prop_assert_eq!(l.total(|e| e.net()), l.total(|e| e.pre_rake()) - rake + l.total(|e| e.rakeback));
    }
}

fn learned_store() -> &'static (ProfileStore, Rsm) {
    static STORE: OnceLock<(ProfileStore, Rsm)> = OnceLock::new();
    STORE.get_or_init(|| {
        let config = SessionConfig {
            hands: 150,
            seed: 31,
            ..SessionConfig::default()
        };
        let mut hero = Hero::new(HeroConfig::default());
        let mut learner = Learner::default();
        run_fastfold_session(&config, &mut hero, &mut learner, false, &mut |_| Ok(())).unwrap();
        (hero.profiles, hero.rsm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1_000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn persistence_round_trips(deltas in prop::collection::vec((any::<u64>(), -1.5f64..1.5), 0..8)) {
        let (store, learned) = learned_store();
        let mut rsm = learned.clone();
        for (seed, d) in deltas {
            let mut rng = DealRng::new(seed, 0);
            let dealt = common::deal(&mut rng, 5);
            let view = rsm.view(&Board::new(&dealt[2..]).unwrap()).unwrap();
            let bucket = view.features(Hole::new(dealt[0], dealt[1]).unwrap()).bucket;
            drop(view);
            rsm.apply_delta(bucket, d).unwrap();
        }
        let dir = tempfile::tempdir().unwrap();
        store.save(dir.path(), rsm.overlay()).unwrap();
        let (loaded, overlay) = ProfileStore::load(dir.path()).unwrap();
        prop_assert_eq!(&overlay, rsm.overlay());
        prop_assert_eq!(loaded.snapshot(&overlay), store.snapshot(rsm.overlay()));
        prop_assert_eq!(loaded.events(), store.events());
    }
}
