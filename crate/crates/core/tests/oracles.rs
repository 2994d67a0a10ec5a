mod common;

use rangeread::cards::{evaluate, evaluate7, Board, DealRng, Hole};
use rangeread::ret::chib;
use rangeread::table::{award, build_pots};

use common::{category_of, chib_oracle, deal, naive_best, random_all_in, random_grid, side_pot_oracle};

#[test]
fn evaluate7_matches_best_of_21() {
    let mut rng = DealRng::new(21, 0);
    let mut prev: Option<(Vec<rangeread::cards::Card>, _)> = None;
    for _ in 0..10_000 {
        let cards = deal(&mut rng, 7);
        let hole = Hole::new(cards[0], cards[1]).unwrap();
        let v = evaluate7(hole, &cards[2..]).unwrap();
        let oracle = naive_best(&cards);
        assert_eq!(v.category(), category_of(oracle.0), "{cards:?}");
        // the best subset under the oracle evaluates to the same value
        let best5 = (0u32..128)
            .filter(|m| m.count_ones() == 5)
            .map(|m| (0..7).filter(|i| m & (1 << i) != 0).map(|i| cards[i]).collect::<Vec<_>>())
            .max_by(|a, b| common::naive_rank5(a).cmp(&common::naive_rank5(b)))
            .unwrap();
        assert_eq!(evaluate(&best5).unwrap(), v);
        if let Some((pc, pv)) = &prev {
            assert_eq!(v.cmp(pv), oracle.cmp(&naive_best(pc)), "{cards:?} vs {pc:?}");
        }
        prev = Some((cards, v));
    }
}

#[test]
fn side_pots_match_chip_by_chip_settlement() {
    let mut rng = DealRng::new(1000, 1);
    for case in 0..1_000 {
        let (totals, folded, strength, order) = random_all_in(&mut rng);
        let pots = build_pots(&totals, &folded);
        let won = award(&pots, &strength, &order);
        let want = side_pot_oracle(&totals, &folded, &strength, &order);
        assert_eq!(won, want, "case {case}: totals {totals:?} folded {folded:?} strength {strength:?}");
        assert_eq!(won.iter().sum::<i64>(), totals.iter().sum::<i64>());
    }
}

#[test]
fn chib_matches_per_combo_comparison() {
    let mut rng = DealRng::new(5, 2);
    for case in 0..100 {
        let board_len = [3, 4, 5][case % 3];
        let cards = deal(&mut rng, board_len + 2);
        let hero = Hole::new(cards[0], cards[1]).unwrap();
        let board = &cards[2..];
        let grid = random_grid(&mut rng, 1081, &cards);
        let got = chib(hero, &grid, &Board::new(board).unwrap()).unwrap();
        let want = chib_oracle(hero, &grid, board);
        assert!((got - want).abs() <= 1e-9, "case {case}: {got} vs {want}");
    }
}
