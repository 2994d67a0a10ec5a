use std::fmt::Write as _;

use crate::action::{ActionKind, Street};
use crate::cards::{equity_multiway_sampled, Board, CardSet, DealRng};
use crate::error::Result;
use crate::profile::{classify, ActionEvent, Archetype, PlayerStats, ProfileStore};
use crate::range::{uniform_live, ComboGrid, DeadCards, Facing, PreflopContext, RangeBook};
use crate::ret::{chib, reshape, rs_distribution, ActorRole, RetDispatch, RetKey, RetSet};
use crate::rsm::{BoardView, Rsm, RsmRules};
use crate::table::{derive_context, legalize, Action, Chips, Decision, GameState, HandRecord};

use super::context::{DecisionContext, OpponentView};
use super::ga::{ga_recommend, GaParams};
use super::haa::{haa_begin_hand, HaaConfig, StyleState, TableRead};
use super::lawnmower::{lawnmower_recommend, PerceivedHeroRange};
use super::ma::{ma_decide, MaParams};
use super::reader::{HandReader, Models};
use super::sad::sad_recommend;
use super::Recommendation;

/// Equity at the last decision above which a lost showdown is a bad beat.
const BAD_BEAT_EQUITY: f64 = 0.75;
const SAMPLE_FOR_STAT: u32 = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct HeroConfig {
    pub ga: GaParams,
    pub ma: MaParams,
    pub haa: HaaConfig,
    pub equity_samples: usize,
    /// How opponents are assumed to classify the hero.
    pub image: Archetype,
}

impl Default for HeroConfig {
    fn default() -> Self {
        HeroConfig {
            ga: GaParams::default(),
            ma: MaParams::default(),
            haa: HaaConfig::default(),
            equity_samples: 200,
            image: Archetype::TightReg,
        }
    }
}

/// The hero's long-lived state: models, opponent profiles and style memory.
#[derive(Debug)]
pub struct Hero {
    pub rsm: Rsm,
    pub book: RangeBook,
    pub rets: RetSet,
    pub dispatch: RetDispatch,
    pub profiles: ProfileStore,
    pub config: HeroConfig,
    /// Consecutive bad beats at showdown.
    pub bad_beats: u32,
}

impl Hero {
    pub fn new(config: HeroConfig) -> Hero {
        Hero {
            rsm: Rsm::new(RsmRules::default()),
            book: RangeBook::defaults(),
            rets: RetSet::defaults(),
            dispatch: RetDispatch::defaults(),
            profiles: ProfileStore::new(),
            config,
            bad_beats: 0,
        }
    }

    pub fn models(&self) -> Models<'_> {
        Models {
            rsm: &self.rsm,
            book: &self.book,
            rets: &self.rets,
            dispatch: &self.dispatch,
        }
    }

    /// Archetype read from a player's profile, `Unknown` until enough hands.
    pub fn archetype_of(&self, player: &str) -> Archetype {
        self.profiles.stats(player).map_or(Archetype::Unknown, classify)
    }

    /// Share of opponents read as loose-passive.
    pub fn table_read(&self, players: &[String], seat: usize) -> TableRead {
        let others: Vec<&String> = players.iter().enumerate().filter(|(i, _)| *i != seat).map(|(_, p)| p).collect();
        let soft = others
            .iter()
            .filter(|p| matches!(self.archetype_of(p), Archetype::Fish | Archetype::CallingStation | Archetype::Whale))
            .count();
        TableRead {
            bad_beats: self.bad_beats,
            profitability: if others.is_empty() { 0.0 } else { soft as f64 / others.len() as f64 },
        }
    }

    /// Starts a hand for the hero at `seat`. `labels` overrides the
    /// profile-based archetype per seat when given.
    pub fn begin_hand<'h>(&'h self, g: &GameState, seat: usize, labels: Option<&[Archetype]>, rng: &mut DealRng) -> HeroHand<'h> {
        let players: Vec<String> = g.seats.iter().map(|s| s.player.clone()).collect();
        let archetypes: Vec<Archetype> = match labels {
            Some(l) => l.to_vec(),
            None => players.iter().map(|p| self.archetype_of(p)).collect(),
        };
        let style = haa_begin_hand(&self.config.haa, &self.table_read(&players, seat), rng);
        let n = players.len();
        let tracked: Vec<bool> = (0..n).map(|s| s != seat).collect();
        let reader =
            HandReader::new(self.models(), Some(g.hole(seat)), archetypes.clone(), players.clone(), tracked).with_adjustments(self.profiles.adjustments());
        let mut image_labels = archetypes.clone();
        image_labels[seat] = self.config.image;
        let image = HandReader::new(self.models(), None, image_labels, players, (0..n).map(|s| s == seat).collect());
        HeroHand {
            hero: self,
            seat,
            style,
            archetypes,
            reader,
            image,
            trace: Vec::new(),
            last_equity: None,
        }
    }

    /// Feeds every non-hero action and showdown of a finished hand into the
    /// profile store.
    pub fn observe_record(&mut self, record: &HandRecord, hero_seat: usize) -> Result<()> {
        if record.aborted.is_some() {
            return Ok(());
        }
        let g = record.initial_state()?;
        let bb = record.bb as f64;
        for a in &record.actions {
            if a.seat == hero_seat {
                continue;
            }
            let action = if a.kind == ActionKind::AllIn && !a.aggressive {
                ActionKind::Call
            } else {
                a.kind
            };
            self.profiles.record_event(ActionEvent {
                hand_id: record.hand_id,
                player: record.seats[a.seat].player.clone(),
                street: a.street,
                action,
                amount: a.added as f64 / bb,
                pot_before: a.pot_before as f64 / bb,
                position: g.position(a.seat),
                seq: a.seq,
            })?;
        }
        let mut seq = record.actions.last().map_or(0, |a| a.seq);
        for &s in &record.shown {
            if s != hero_seat {
                seq += 1;
                self.profiles.record_showdown(record.hand_id, &record.seats[s].player, seq)?;
            }
        }
        Ok(())
    }

    /// Tracks consecutive bad beats from a finished hand.
    pub fn end_hand(&mut self, record: &HandRecord, hero_seat: usize, last_equity: Option<f64>) {
        if !record.shown.contains(&hero_seat) {
            return;
        }
        let net = record.net[hero_seat];
        if net > 0 {
            self.bad_beats = 0;
        } else if net < 0 && last_equity.is_some_and(|e| e >= BAD_BEAT_EQUITY) {
            self.bad_beats += 1;
        }
    }
}

/// The hero's working state for one hand.
#[derive(Debug)]
pub struct HeroHand<'h> {
    hero: &'h Hero,
    seat: usize,
    pub style: StyleState,
    archetypes: Vec<Archetype>,
    reader: HandReader<'h>,
    image: HandReader<'h>,
    /// One line per decision.
    pub trace: Vec<String>,
    /// Equity at the most recent post-flop decision.
    pub last_equity: Option<f64>,
}

fn stat_rate(stats: Option<&PlayerStats>, read: impl Fn(&PlayerStats) -> crate::profile::Stat) -> Option<f64> {
    stats.map(read).filter(|s| s.n >= SAMPLE_FOR_STAT).and_then(|s| s.rate())
}

impl<'h> HeroHand<'h> {
    pub fn reader(&self) -> &HandReader<'h> {
        &self.reader
    }

    /// Catches up with actions applied since the last call.
    pub fn observe(&mut self, g: &GameState) -> Result<()> {
        self.reader.sync(g)?;
        self.image.sync(g)
    }

    fn opponent_grid(&self, g: &GameState, seat: usize) -> ComboGrid {
        if let Some(grid) = self.reader.grid(seat) {
            return grid.clone();
        }
        // not yet acted pre-flop: whatever this player would open
        let ctx = PreflopContext {
            position: g.position(seat),
            facing: Facing::Unopened,
            action: ActionKind::Call,
            pot_odds: 0.0,
        };
        self.hero
            .book
            .assign_preflop_range(self.archetypes[seat], &ctx)
            .unwrap_or_else(|_| uniform_live(DeadCards::from_set(g.hole(self.seat).set())))
    }

    fn opponents(&self, g: &GameState, view: Option<&BoardView<'_>>) -> Result<Vec<OpponentView>> {
        let hole = g.hole(self.seat);
        let board = g.board();
        let mut out = Vec::new();
        for s in g.live_seats().filter(|&s| s != self.seat) {
            let player = g.seats[s].player.clone();
            let archetype = self.archetypes[s];
            let grid = self.opponent_grid(g, s);
            let stats = self.hero.profiles.stats(&player);
            let style = archetype.style();
            let fold_rate = if g.street == Street::Preflop {
                stat_rate(stats, |s| s.fold_to_steal).unwrap_or(0.5)
            } else {
                stat_rate(stats, |s| s.fold_to_cbet(g.street)).unwrap_or(style.fold_to_cbet)
            };
            let (distribution, chib) = match view {
                Some(v) => (Some(rs_distribution(v, &grid)), chib(hole, &grid, &board).unwrap_or(0.0)),
                None => (None, 0.0),
            };
            out.push(OpponentView {
                seat: s,
                player,
                archetype,
                grid,
                distribution,
                chib,
                fold_rate,
            });
        }
        Ok(out)
    }

    /// Reading of the calling part of each opponent's range.
    fn calling_grids(&self, g: &GameState, view: &BoardView<'_>, opponents: &[OpponentView]) -> Vec<ComboGrid> {
        opponents
            .iter()
            .map(|o| {
                let key = RetKey {
                    street: g.street,
                    archetype: o.archetype,
                    action: ActionKind::Call,
                    role: ActorRole::FacingBet,
                    position: g.position(o.seat),
                };
                self.hero
                    .dispatch
                    .select(&key)
                    .and_then(|id| self.hero.rets.get(id))
                    .and_then(|ret| reshape(view, &o.grid, ret).ok())
                    .unwrap_or_else(|| o.grid.clone())
            })
            .collect()
    }

    /// Full context for the hero's decision, with reads attached.
    pub fn context(&mut self, g: &GameState, rng: &mut DealRng) -> Result<DecisionContext> {
        self.observe(g)?;
        let mut ctx = derive_context(g, self.seat)?;
        let view = self.reader.view().filter(|_| g.street != Street::Preflop);
        ctx.opponents = self.opponents(g, view)?;
        if let Some(view) = view {
            ctx.strength = Some(view.category(ctx.hole));
            let grids: Vec<&ComboGrid> = ctx.opponents.iter().map(|o| &o.grid).collect();
            let samples = self.hero.config.equity_samples;
            ctx.equity = equity_multiway_sampled(ctx.hole, &grids, &ctx.board, CardSet::EMPTY, samples, rng);
            let calling = self.calling_grids(g, view, &ctx.opponents);
            let refs: Vec<&ComboGrid> = calling.iter().collect();
            ctx.equity_called = equity_multiway_sampled(ctx.hole, &refs, &ctx.board, CardSet::EMPTY, samples, rng);
            self.last_equity = Some(ctx.equity);
        }
        Ok(ctx)
    }

    /// All module recommendations for `ctx`, GA first.
    pub fn recommendations(&self, g: &GameState, ctx: &DecisionContext, rng: &mut DealRng) -> Result<Vec<Recommendation>> {
        let cfg = &self.hero.config;
        let mut recs = vec![ga_recommend(ctx, &self.style, &cfg.ga, rng)];
        recs.extend(sad_recommend(ctx, &self.hero.profiles));
        if let (Some(villain), Some(view)) = (ctx.heads_up(), self.reader.view()) {
            if villain.archetype.style().modeling_capable && ctx.street != Street::Preflop {
                if let Some(grid) = self.image.grid(self.seat) {
                    let perceived = PerceivedHeroRange::new(villain.archetype, grid.clone())?;
                    let prev_len = match ctx.street {
                        Street::Turn => Some(3),
                        Street::River => Some(4),
                        _ => None,
                    };
                    let before = match prev_len {
                        Some(n) => Some(self.hero.rsm.view(&Board::new(&g.board_cards()[..n])?)?),
                        None => None,
                    };
                    let stats = self.hero.profiles.stats(&villain.player);
                    recs.extend(lawnmower_recommend(ctx, &perceived, villain, stats, view, before.as_ref()));
                }
            }
        }
        Ok(recs)
    }

    /// Decides the hero's action at `g`.
    pub fn decide(&mut self, g: &GameState, rng: &mut DealRng, trace: bool) -> Result<Decision> {
        let ctx = self.context(g, rng)?;
        let recs = self.recommendations(g, &ctx, rng)?;
        let chosen = ma_decide(&recs, &ctx, &self.hero.config.ma, rng)?;
        let bb = g.bb as f64;
        let want = match chosen.action {
            ActionKind::Fold => Action::fold(),
            ActionKind::Check => Action::check(),
            ActionKind::Call => Action::call(),
            ActionKind::AllIn => Action::all_in(),
            ActionKind::Bet => Action::bet((chosen.size * bb).round() as Chips),
            ActionKind::Raise => Action::raise((chosen.size * bb).round() as Chips),
        };
        let action = legalize(want, &ctx.legal);
        if trace {
            self.trace.push(trace_line(&ctx, &recs, &chosen, action));
        }
        Ok(Decision {
            action,
            think_ms: chosen.think_ms,
        })
    }
}

fn trace_line(ctx: &DecisionContext, recs: &[Recommendation], chosen: &Recommendation, action: Action) -> String {
    let mut s = format!(
        "hand {} seat {} {} pot {:.2} call {:.2} spr {:.2} pO {:.3} ali {:.2}",
        ctx.hand_id, ctx.seat, ctx.street, ctx.pot, ctx.to_call, ctx.spr, ctx.p_o, ctx.ali
    );
    match ctx.strength {
        Some(rs) => write!(s, " rs {} eq {:.3}", rs.label(), ctx.equity).unwrap(),
        None => write!(s, " pct {:.3}", ctx.percentile).unwrap(),
    }
    for o in &ctx.opponents {
        write!(s, " | {}:{} chib {:.3}", o.player, o.archetype, o.chib).unwrap();
    }
    for r in recs {
        write!(s, " | {r}").unwrap();
    }
    write!(s, " => {} [{}]", action, chosen.source).unwrap();
    s
}
