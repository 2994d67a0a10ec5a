//! Fast-fold session: the hero meets a fresh table drawn from a seeded
//! opponent pool every hand.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index::sample;
use rand::Rng;

use crate::action::ActionKind;
use crate::brain::{Hero, HeroHand};
use crate::cards::DealRng;
use crate::error::{Error, Result};
use crate::learning::{replay_with_perfect_info, Learner, Outcome};
use crate::profile::Archetype;
use crate::range::RangeBook;
use crate::rsm::Rsm;

use super::bots::BotBrain;
use super::config::SessionConfig;
use super::history::HandRecord;
use super::play::{play_hand, Decision, Players};
use super::state::{Action, Deal, GameState};
use super::Chips;

/// Label written for the hero's seat in histories.
pub const HERO_LABEL: &str = "hero";
pub const HERO_NAME: &str = "hero";
const HERO_SEAT: usize = 0;
const POOL_STREAM: u64 = u64::MAX;

/// Everything produced by one hand.
#[derive(Debug, Clone, PartialEq)]
pub struct HandOutput {
    pub record: HandRecord,
    /// Hero decision lines, filled only when tracing.
    pub trace: Vec<String>,
    pub hero_seat: usize,
    /// The hero hit a simulated failure during the hand.
    pub failed: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SessionSummary {
    pub hands: u64,
    pub hero_net: Chips,
    pub failures: u64,
    /// Times the hero stack was topped back up.
    pub resets: u64,
    pub showdowns: u64,
    pub deltas: usize,
}

/// The seeded opponent pool: player names with their true archetypes.
pub fn build_pool(config: &SessionConfig) -> Result<Vec<(String, Archetype)>> {
    let weights: Vec<f64> = config.mix.iter().map(|(_, w)| *w).collect();
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::Config(format!("archetype mix: {e}")))?;
    let mut rng = DealRng::new(config.seed, POOL_STREAM);
    Ok((0..config.pool_size)
        .map(|i| (format!("v{i:04}"), config.mix[dist.sample(&mut rng)].0))
        .collect())
}

struct Table<'a, 'b, 'h> {
    hero: HeroHand<'h>,
    bots: &'a mut BotBrain<'b>,
    archetypes: Vec<Archetype>,
    failure_rate: f64,
    failed: bool,
    trace: bool,
    error: Option<Error>,
}

impl Players for Table<'_, '_, '_> {
    fn act(&mut self, g: &GameState, seat: usize, rng: &mut DealRng) -> Decision {
        if seat != HERO_SEAT {
            return self.bots.act(g, seat, self.archetypes[seat], rng);
        }
        if !self.failed && self.failure_rate > 0.0 && rng.random::<f64>() < self.failure_rate {
            self.failed = true;
            if self.trace {
                self.hero.trace.push(format!("hand {} seat {seat} failure: hero forfeits", g.hand_id));
            }
        }
        if self.failed || self.error.is_some() {
            return forfeit(g).into();
        }
        match self.hero.decide(g, rng, self.trace) {
            Ok(d) => d,
            Err(e) => {
                self.error = Some(e);
                forfeit(g).into()
            }
        }
    }
}

fn forfeit(g: &GameState) -> Action {
    match g.legal() {
        Some(l) if l.can_check => Action::check(),
        _ => Action::fold(),
    }
}

/// Plays `config.hands` hands, handing each to `sink` as it finishes.
/// Between hands the hero learns from showdowns (when enabled) and
/// updates its opponent profiles.
pub fn run_fastfold_session(
    config: &SessionConfig,
    hero: &mut Hero,
    learner: &mut Learner,
    trace: bool,
    sink: &mut dyn FnMut(HandOutput) -> Result<()>,
) -> Result<SessionSummary> {
    config.validate()?;
    let pool = build_pool(config)?;
    // bots read strength from a fixed scale so the hero's learning never
    // changes their play
    let bot_rsm = Rsm::default();
    let bot_book = RangeBook::defaults();
    let mut bots = BotBrain::new(&bot_rsm, &bot_book)?;
    let mut hero_stack = config.hero_stack;
    let mut summary = SessionSummary::default();
    for hand_id in 1..=config.hands {
        let mut deal_rng = DealRng::new(config.seed, 2 * hand_id);
        let mut act_rng = DealRng::new(config.seed, 2 * hand_id + 1);
        let g = seat_table(config, &pool, hand_id, hero_stack, &mut deal_rng)?;
        let archetypes: Vec<Archetype> = g
            .seats
            .iter()
            .map(|s| pool.iter().find(|(p, _)| *p == s.player).map_or(Archetype::Unknown, |(_, a)| *a))
            .collect();
        let labels: Vec<String> = archetypes
            .iter()
            .enumerate()
            .map(|(s, a)| if s == HERO_SEAT { HERO_LABEL.to_string() } else { a.name().to_string() })
            .collect();
        let (record, hero_trace, failed, last_equity) = {
            let hand = hero.begin_hand(&g, HERO_SEAT, None, &mut act_rng);
            let mut table = Table {
                hero: hand,
                bots: &mut bots,
                archetypes,
                failure_rate: config.failure_rate,
                failed: false,
                trace,
                error: None,
            };
            let (record, _) = play_hand(g, &mut table, &mut act_rng, 0, &labels);
            if let Some(e) = table.error {
                return Err(Error::HandAborted {
                    hand_id,
                    reason: e.to_string(),
                });
            }
            if let Some(reason) = &record.aborted {
                return Err(Error::HandAborted {
                    hand_id,
                    reason: reason.clone(),
                });
            }
            (record, std::mem::take(&mut table.hero.trace), table.failed, table.hero.last_equity)
        };
        if config.learning && !record.shown.is_empty() {
            let seen: Vec<Archetype> = record.seats.iter().map(|s| hero.archetype_of(&s.player)).collect();
            let replay = replay_with_perfect_info(&record, Some(HERO_SEAT), hero.models(), &seen, Some(hero.profiles.adjustments()))?;
            if let Outcome::Applied(d) = learner.apply_learning(&replay, &mut hero.rsm, &mut hero.profiles)? {
                summary.deltas += d.len();
            }
        }
        hero.observe_record(&record, HERO_SEAT)?;
        hero.end_hand(&record, HERO_SEAT, last_equity);

        let net = record.net[HERO_SEAT];
        summary.hands += 1;
        summary.hero_net += net;
        summary.showdowns += u64::from(record.shown.contains(&HERO_SEAT));
        summary.failures += u64::from(failed);
        hero_stack += net;
        if hero_stack < config.bb || failed {
            hero_stack = config.hero_stack;
            summary.resets += 1;
        }
        sink(HandOutput {
            record,
            trace: hero_trace,
            hero_seat: HERO_SEAT,
            failed,
        })?;
    }
    Ok(summary)
}

/// Seats the hero and a fresh draw of opponents and deals the cards.
fn seat_table(config: &SessionConfig, pool: &[(String, Archetype)], hand_id: u64, hero_stack: Chips, rng: &mut DealRng) -> Result<GameState> {
    let n = config.seats;
    let button = rng.random_range(0..n);
    let mut players = vec![(HERO_NAME.to_string(), hero_stack)];
    for i in sample(rng, pool.len(), n - 1).into_iter() {
        let stack = rng.random_range(config.bot_stack_min..=config.bot_stack_max);
        players.push((pool[i].0.clone(), stack));
    }
    let mut deck = rng.shuffled_deck();
    let mut card = || deck.deal().ok_or_else(|| Error::Contract("deck ran out".into()));
    let mut holes = Vec::with_capacity(n);
    for _ in 0..n {
        holes.push(crate::cards::Hole::new(card()?, card()?)?);
    }
    let board = [card()?, card()?, card()?, card()?, card()?];
    GameState::new(hand_id, &players, button, config.sb, config.bb, Deal::new(holes, board)?, config.rake)
}

/// Whether the hero voluntarily put chips in pre-flop.
pub fn hero_vpip(record: &HandRecord, seat: usize) -> bool {
    record.actions.iter().any(|a| {
        a.seat == seat
            && a.street == crate::action::Street::Preflop
            && matches!(a.kind, ActionKind::Call | ActionKind::Raise | ActionKind::Bet | ActionKind::AllIn)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brain::HeroConfig;

    fn small(hands: u64, seed: u64) -> SessionConfig {
        SessionConfig {
            hands,
            seed,
            ..SessionConfig::default()
        }
    }

    fn run(config: &SessionConfig) -> (SessionSummary, Vec<HandOutput>) {
        let mut hero = Hero::new(HeroConfig::default());
        let mut learner = Learner::default();
        let mut out = Vec::new();
        let summary = run_fastfold_session(config, &mut hero, &mut learner, false, &mut |h| {
            out.push(h);
            Ok(())
        })
        .unwrap();
        (summary, out)
    }

    #[test]
    fn pool_is_seeded_and_named() {
        let c = small(1, 5);
        let a = build_pool(&c).unwrap();
        assert_eq!(a.len(), 600);
        assert_eq!(a[7].0, "v0007");
        assert_eq!(a, build_pool(&c).unwrap());
    }

    #[test]
    fn session_conserves_chips_and_replays() {
        let (summary, hands) = run(&small(60, 3));
        assert_eq!(summary.hands, 60);
        for h in &hands {
            let r = &h.record;
            assert_eq!(r.net.iter().sum::<Chips>() + r.rake, 0, "hand {}", r.hand_id);
            r.replay().unwrap();
        }
        assert_eq!(summary.hero_net, hands.iter().map(|h| h.record.net[0]).sum::<Chips>());
    }

    #[test]
    fn failures_forfeit_and_reset() {
        let c = SessionConfig {
            failure_rate: 1.0,
            ..small(20, 4)
        };
        let (summary, hands) = run(&c);
        assert!(summary.failures > 0);
        for h in hands.iter().filter(|h| h.failed) {
            assert!(h
                .record
                .actions
                .iter()
                .filter(|a| a.seat == 0)
                .all(|a| matches!(a.kind, ActionKind::Fold | ActionKind::Check)));
            assert_eq!(h.record.seats[0].stack, c.hero_stack);
        }
    }
}
