use crate::action::{ActionKind, Street};
use crate::cards::{Board, CardSet, Hole};
use crate::error::Result;
use crate::profile::{Archetype, RangeAdjustments};
use crate::range::{ComboGrid, DeadCards, Facing, PreflopContext, RangeBook};
use crate::ret::{rs_distribution, ActorRole, RangeTracker, RetDispatch, RetKey, RetSet, RsDistribution, FLAT_ID};
use crate::rsm::{BoardView, Rsm};
use crate::table::{actor_role, ActionRecord, GameState};

/// One template application by the reader.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadStep {
    pub seat: usize,
    pub street: Street,
    /// Sequence number of the action that triggered it; `None` for the
    /// street-start step.
    pub seq: Option<u32>,
    pub ret: String,
    /// Grid right after the step, kept only when snapshots are on.
    pub grid: Option<ComboGrid>,
}

/// Shared models a reader consults.
#[derive(Debug, Clone, Copy)]
pub struct Models<'a> {
    pub rsm: &'a Rsm,
    pub book: &'a RangeBook,
    pub rets: &'a RetSet,
    pub dispatch: &'a RetDispatch,
}

/// Follows one hand from an observer's seat and keeps a range for every
/// tracked player: a pre-flop chart assignment at each voluntary action,
/// then one template per post-flop action.
#[derive(Debug)]
pub struct HandReader<'a> {
    models: Models<'a>,
    observer: Option<Hole>,
    archetypes: Vec<Archetype>,
    players: Vec<String>,
    adjustments: Option<&'a RangeAdjustments>,
    tracked: Vec<bool>,
    trackers: Vec<Option<RangeTracker>>,
    preflop: Vec<Option<ComboGrid>>,
    street: Street,
    board: Vec<crate::cards::Card>,
    view: Option<BoardView<'a>>,
    steps: Vec<ReadStep>,
    snapshots: bool,
    seen: usize,
}

/// Pre-flop pressure before action `idx`.
pub fn preflop_facing(actions: &[ActionRecord], idx: usize) -> Facing {
    let prior = actions[..idx].iter().filter(|a| a.street == Street::Preflop);
    let (mut raises, mut calls) = (0, 0);
    for a in prior {
        if a.aggressive {
            raises += 1;
        } else if matches!(a.kind, ActionKind::Call | ActionKind::AllIn) {
            calls += 1;
        }
    }
    match (raises, calls) {
        (0, 0) => Facing::Unopened,
        (0, _) => Facing::Limped,
        (1, _) => Facing::Raised,
        _ => Facing::Reraised,
    }
}

/// Action kind as the templates see it: an all-in that only calls is a call.
pub fn read_kind(rec: &ActionRecord) -> ActionKind {
    match rec.kind {
        ActionKind::AllIn if !rec.aggressive => ActionKind::Call,
        k => k,
    }
}

impl<'a> HandReader<'a> {
    /// `tracked[s]` selects the seats to read; `observer` holds the cards the
    /// observer can see and treats as dead.
    pub fn new(models: Models<'a>, observer: Option<Hole>, archetypes: Vec<Archetype>, players: Vec<String>, tracked: Vec<bool>) -> HandReader<'a> {
        let n = archetypes.len();
        HandReader {
            models,
            observer,
            archetypes,
            players,
            adjustments: None,
            tracked,
            trackers: vec![None; n],
            preflop: vec![None; n],
            street: Street::Preflop,
            board: Vec::new(),
            view: None,
            steps: Vec::new(),
            snapshots: false,
            seen: 0,
        }
    }

    /// Applies learned per-player chart adjustments to pre-flop assignments.
    pub fn with_adjustments(mut self, adj: &'a RangeAdjustments) -> HandReader<'a> {
        self.adjustments = Some(adj);
        self
    }

    /// Keeps a copy of the grid after every step.
    pub fn with_snapshots(mut self) -> HandReader<'a> {
        self.snapshots = true;
        self
    }

    pub fn archetype(&self, seat: usize) -> Archetype {
        self.archetypes[seat]
    }

    pub fn street(&self) -> Street {
        self.street
    }

    pub fn grid(&self, seat: usize) -> Option<&ComboGrid> {
        self.trackers[seat].as_ref().map(|t| t.grid())
    }

    pub fn tracker(&self, seat: usize) -> Option<&RangeTracker> {
        self.trackers[seat].as_ref()
    }

    /// Grid assigned at the player's last pre-flop action.
    pub fn preflop_grid(&self, seat: usize) -> Option<&ComboGrid> {
        self.preflop[seat].as_ref()
    }

    pub fn steps(&self) -> &[ReadStep] {
        &self.steps
    }

    pub fn view(&self) -> Option<&BoardView<'a>> {
        self.view.as_ref()
    }

    pub fn dead(&self) -> DeadCards {
        let mut set = CardSet::try_from_cards(&self.board).unwrap_or(CardSet::EMPTY);
        if let Some(h) = self.observer {
            set = set.union(h.set());
        }
        DeadCards::from_set(set)
    }

    pub fn distribution(&self, seat: usize) -> Option<RsDistribution> {
        Some(rs_distribution(self.view.as_ref()?, self.grid(seat)?))
    }

    /// Reads every action of `g` not yet seen and moves to the current
    /// street once its cards are out.
    pub fn sync(&mut self, g: &GameState) -> Result<()> {
        while self.seen < g.actions.len() {
            self.read(g, self.seen)?;
            self.seen += 1;
        }
        if g.street > self.street && g.board_cards().len() >= g.street.board_len() && !g.is_finished() {
            self.advance(g, g.street)?;
        }
        Ok(())
    }

    fn advance(&mut self, g: &GameState, street: Street) -> Result<()> {
        self.street = street;
        self.board = g.deal().board[..street.board_len()].to_vec();
        self.view = Some(self.models.rsm.view(&Board::new(&self.board)?)?);
        let dead = self.dead();
        let flat = self.models.rets.flat();
        let view = self.view.as_ref().expect("view set above");
        for (seat, slot) in self.trackers.iter_mut().enumerate() {
            if let Some(t) = slot {
                t.strip(dead);
                t.apply(view, flat, dead);
                self.steps.push(ReadStep {
                    seat,
                    street,
                    seq: None,
                    ret: FLAT_ID.to_string(),
                    grid: self.snapshots.then(|| t.grid().clone()),
                });
            }
        }
        Ok(())
    }

    fn read(&mut self, g: &GameState, idx: usize) -> Result<()> {
        let rec = g.actions[idx];
        if rec.street > self.street {
            self.advance(g, rec.street)?;
        }
        let seat = rec.seat;
        if !self.tracked[seat] {
            return Ok(());
        }
        if rec.kind == ActionKind::Fold {
            self.trackers[seat] = None;
            return Ok(());
        }
        let kind = read_kind(&rec);
        if rec.street == Street::Preflop {
            let ctx = PreflopContext {
                position: g.position(seat),
                facing: preflop_facing(&g.actions, idx),
                action: kind,
                pot_odds: if rec.to_call > 0 {
                    rec.to_call as f64 / (rec.pot_before + rec.to_call) as f64
                } else {
                    0.0
                },
            };
            let arch = self.archetypes[seat];
            let mut grid = self.models.book.assign_preflop_range(arch, &ctx)?;
            if let Some(adj) = self.adjustments {
                let player = &self.players[seat];
                if let Ok(g) = adj.adjust_grid(player, arch, &grid).normalized() {
                    grid = g;
                }
            }
            self.preflop[seat] = Some(grid.clone());
            self.trackers[seat] = Some(RangeTracker::new(grid));
            return Ok(());
        }
        let key = RetKey {
            street: rec.street,
            archetype: self.archetypes[seat],
            action: kind,
            role: match actor_role(&g.actions, idx) {
                ActorRole::FacingRaise if kind == ActionKind::Check => ActorRole::Passive,
                r => r,
            },
            position: g.position(seat),
        };
        let id = self.models.dispatch.select(&key).unwrap_or(FLAT_ID);
        let ret = self.models.rets.require(id)?;
        let dead = self.dead();
        let view = self.view.as_ref().expect("post-flop street has a view");
        if let Some(t) = self.trackers[seat].as_mut() {
            t.apply(view, ret, dead);
            self.steps.push(ReadStep {
                seat,
                street: rec.street,
                seq: Some(rec.seq),
                ret: id.to_string(),
                grid: self.snapshots.then(|| t.grid().clone()),
            });
        }
        Ok(())
    }
}
