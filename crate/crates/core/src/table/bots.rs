//! Archetype bots: a pre-flop chart layer plus a post-flop mixed policy
//! driven by hand strength category, aggression and fold tendencies.

use rand::Rng;

use crate::action::{ActionKind, Street};
use crate::cards::DealRng;
use crate::profile::{Archetype, Style};
use crate::range::{strength_order, Combo, ComboGrid, RangeBook, NUM_COMBOS};
use crate::rsm::{BoardView, RsCategory, Rsm};

use super::play::{legalize, Decision};
use super::state::{Action, GameState, Legal};
use super::Chips;

/// Per-archetype pre-flop tables derived from the range book.
#[derive(Debug, Clone)]
struct Charts {
    play: ComboGrid,
    raise: ComboGrid,
}

/// Continuation thresholds against re-raises, as strength percentiles.
fn reraise_bands(arch: Archetype) -> (f64, f64) {
    match arch {
        Archetype::Rock => (0.02, 0.04),
        Archetype::TightReg | Archetype::MediumReg => (0.025, 0.07),
        Archetype::LooseReg => (0.03, 0.09),
        Archetype::Lag => (0.04, 0.11),
        Archetype::Fish | Archetype::Unknown => (0.02, 0.20),
        Archetype::CallingStation | Archetype::Whale => (0.02, 0.30),
    }
}

/// Decision logic shared by every bot seat in a session.
#[derive(Debug)]
pub struct BotBrain<'a> {
    rsm: &'a Rsm,
    charts: Vec<Charts>,
    /// Percentile of each combo in the pre-flop strength order.
    percentile: Vec<f64>,
    view: Option<(u64, usize, BoardView<'a>)>,
}

impl<'a> BotBrain<'a> {
    pub fn new(rsm: &'a Rsm, book: &RangeBook) -> crate::Result<BotBrain<'a>> {
        let mut charts = Vec::new();
        for arch in Archetype::KNOWN.into_iter().chain([Archetype::Unknown]) {
            let (chart, _) = book.chart_for(arch, crate::action::Position::Utg, crate::range::Facing::Unopened)?;
            charts.push(Charts {
                play: chart.grid().clone(),
                raise: chart.top_share(arch.style().raise_share),
            });
        }
        let mut percentile = vec![0.0; NUM_COMBOS];
        for (i, c) in strength_order().iter().enumerate() {
            percentile[c.index()] = i as f64 / NUM_COMBOS as f64;
        }
        Ok(BotBrain {
            rsm,
            charts,
            percentile,
            view: None,
        })
    }

    fn charts(&self, arch: Archetype) -> &Charts {
        let i = Archetype::KNOWN.iter().position(|a| *a == arch).unwrap_or(Archetype::KNOWN.len());
        &self.charts[i]
    }

    fn category(&mut self, g: &GameState, seat: usize) -> RsCategory {
        let n = g.board_cards().len();
        let fresh = matches!(&self.view, Some((h, len, _)) if *h == g.hand_id && *len == n);
        if !fresh {
            let view = self.rsm.view(&g.board()).expect("post-flop board");
            self.view = Some((g.hand_id, n, view));
        }
        let (_, _, view) = self.view.as_ref().expect("view cached");
        view.combo_category(Combo::from_hole(g.hole(seat)))
    }

    pub fn act(&mut self, g: &GameState, seat: usize, arch: Archetype, rng: &mut DealRng) -> Decision {
        let legal = g.legal().expect("bot asked to act");
        let want = if g.street == Street::Preflop {
            self.preflop(g, seat, arch, &legal, rng)
        } else {
            self.postflop(g, seat, arch, &legal, rng)
        };
        Decision {
            action: legalize(want, &legal),
            think_ms: 0,
        }
    }

    fn preflop(&self, g: &GameState, seat: usize, arch: Archetype, legal: &Legal, rng: &mut DealRng) -> Action {
        let combo = Combo::from_hole(g.hole(seat));
        let style = arch.style();
        let acted = g.actions.iter().any(|a| a.seat == seat);
        let bb = g.bb;
        if !acted {
            let charts = self.charts(arch);
            let w = charts.play.weight(combo);
            if rng.random::<f64>() >= w {
                return Action::fold();
            }
            let raise_share = if w > 0.0 { charts.raise.weight(combo) / w } else { 0.0 };
            let raises = rng.random::<f64>() < raise_share * (1.0 - style.trap);
            // a big blind in a limped pot has to put money in to play
            if raises || legal.can_check {
                let limpers = g.actions.iter().filter(|a| a.kind == ActionKind::Call).count() as Chips;
                let to = if g.street_raises <= 1 { bb * 5 / 2 + limpers * bb } else { g.current_bet * 3 };
                return Action::raise(to);
            }
            return Action::call();
        }
        // facing a re-raise after entering
        let pct = self.percentile[combo.index()];
        let (jam, cont) = reraise_bands(arch);
        let pot = g.pot();
        if pct < jam {
            let to = g.current_bet * 22 / 10;
            return if to * 10 >= legal.max_to * 4 { Action::all_in() } else { Action::raise(to) };
        }
        if pct < cont || legal.to_call * 10 <= pot {
            return Action::call();
        }
        Action::fold()
    }

    fn postflop(&mut self, g: &GameState, seat: usize, arch: Archetype, legal: &Legal, rng: &mut DealRng) -> Action {
        let style: Style = arch.style();
        let s = f64::from(self.category(g, seat).value());
        let agg = style.aggression / (1.0 + style.aggression);
        let pot = g.pot();
        let u: f64 = rng.random();
        if legal.can_check {
            let street_actions = || g.actions.iter().filter(|a| a.street == g.street);
            let donk_spot = matches!(g.prev_aggressor, Some(a) if a != seat
                && !g.seats[a].folded
                && !street_actions().any(|r| r.seat == a));
            let p_bet = if donk_spot {
                if s >= 5.0 {
                    (3.0 * style.donk_freq).min(1.0)
                } else if s >= 3.0 {
                    style.donk_freq
                } else {
                    style.donk_freq / 2.0
                }
            } else if g.prev_aggressor == Some(seat) {
                if s >= 4.0 {
                    0.9 - 0.5 * style.trap
                } else {
                    0.3 + 0.3 * agg
                }
            } else if s >= 5.0 {
                0.4 + 0.4 * agg - 0.3 * style.trap
            } else if s >= 3.0 {
                0.15 + 0.3 * agg
            } else {
                0.05 + 0.1 * agg
            };
            if u < p_bet {
                let frac = if s >= 7.0 { 0.75 } else { 0.6 };
                return Action::bet(((pot as f64 * frac) as Chips).max(g.bb));
            }
            return Action::check();
        }
        let p_o = legal.to_call as f64 / (pot + legal.to_call) as f64;
        let sticky = match arch {
            Archetype::CallingStation | Archetype::Whale => 2.0,
            Archetype::Fish => 1.0,
            _ => 0.0,
        };
        let need = 2.0 + (4.0 * p_o).round() - sticky;
        if s >= need.max(1.0) {
            let p_raise = if s >= 8.0 {
                0.2 + 0.5 * agg
            } else if s >= 6.0 {
                0.15 * agg
            } else {
                0.0
            };
            if u < p_raise {
                let to = g.current_bet * 3;
                return if to * 10 >= legal.max_to * 4 { Action::all_in() } else { Action::raise(to) };
            }
            return Action::call();
        }
        let p_fold = (style.fold_to_cbet / 0.6).min(1.0);
        if u < p_fold {
            Action::fold()
        } else {
            Action::call()
        }
    }
}
