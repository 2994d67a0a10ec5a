//! Post-showdown learning: replay a finished hand with the revealed cards,
//! score each prediction, and turn the misses into bounded corrections.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::action::{ActionKind, Street};
use crate::brain::{HandReader, Models};
use crate::cards::{evaluate_set, Board, Hole};
use crate::error::{Error, Result};
use crate::profile::{Archetype, ProfileStore, RangeAdjustments};
use crate::range::ComboGrid;
use crate::ret::{chib, rs_distribution, RsDistribution};
use crate::rsm::{BoardView, BucketKey, RsCategory, Rsm};
use crate::table::{Action, HandRecord};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningParams {
    /// Step toward the realized category after a correct prediction.
    pub delta_r: f64,
    /// Step after a wrong prediction; must exceed `delta_r`.
    pub delta_c: f64,
}

impl Default for LearningParams {
    fn default() -> Self {
        LearningParams { delta_r: 0.02, delta_c: 0.10 }
    }
}

impl LearningParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_r > 0.0 && self.delta_c > self.delta_r) {
            return Err(Error::Config(format!(
                "learning deltas need 0 < delta_r < delta_c, got {} and {}",
                self.delta_r, self.delta_c
            )));
        }
        Ok(())
    }
}

/// One prediction paired with the truth revealed at showdown.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRecord {
    pub hand_id: u64,
    pub seat: usize,
    pub player: String,
    pub street: Street,
    /// Template applied at this point.
    pub ret: String,
    pub grid: ComboGrid,
    pub distribution: RsDistribution,
    /// Chance the observer was beaten, when the observer's cards are known.
    pub chib: Option<f64>,
    pub predicted: RsCategory,
    pub revealed: Hole,
    /// Category of the revealed hand under the base rules.
    pub realized: RsCategory,
    /// Score of the revealed hand before the learned overlay.
    pub base: f64,
    pub bucket: BucketKey,
    /// Heaviest bucket inside the predicted category, with its rule score.
    pub predicted_bucket: Option<(BucketKey, f64)>,
    pub beat_observer: Option<bool>,
}

/// Where a prediction was made.
#[derive(Debug, Clone, PartialEq)]
pub struct StepId {
    pub hand_id: u64,
    pub seat: usize,
    pub player: String,
    pub street: Street,
    pub ret: String,
}

impl PredictionRecord {
    /// Pairs the grid held at `at` with the revealed hand on `board`.
    pub fn new(at: StepId, grid: ComboGrid, board: &Board, revealed: Hole, observer: Option<Hole>, rsm: &Rsm) -> Result<PredictionRecord> {
        PredictionRecord::on_view(at, grid, &rsm.view(board)?, revealed, observer)
    }

    /// As [`PredictionRecord::new`] with a prepared board view.
    pub fn on_view(at: StepId, grid: ComboGrid, view: &BoardView<'_>, revealed: Hole, observer: Option<Hole>) -> Result<PredictionRecord> {
        let board = &Board::new(view.cards())?;
        let features = view.features(revealed);
        let distribution = rs_distribution(view, &grid);
        let (chib_value, beat) = match observer {
            Some(h) => (
                chib(h, &grid, board).ok(),
                Some(evaluate_set(board.set().union(revealed.set())) > evaluate_set(board.set().union(h.set()))),
            ),
            None => (None, None),
        };
        let predicted = distribution.most_likely();
        let mut mass: BTreeMap<BucketKey, (f64, f64)> = BTreeMap::new();
        for (c, w) in grid.iter_weighted() {
            if w > 0.0 && !c.set().intersects(board.set()) && view.combo_category(c) == predicted {
                let f = view.features(c.hole());
                mass.entry(f.bucket).or_insert((0.0, f.base)).0 += w;
            }
        }
        let predicted_bucket = mass
            .into_iter()
            .fold(None, |best: Option<(BucketKey, f64, f64)>, (b, (w, base))| match best {
                Some((_, bw, _)) if bw >= w => best,
                _ => Some((b, w, base)),
            })
            .map(|(b, _, base)| (b, base));
        Ok(PredictionRecord {
            hand_id: at.hand_id,
            seat: at.seat,
            player: at.player,
            street: at.street,
            ret: at.ret,
            predicted,
            distribution,
            grid,
            chib: chib_value,
            revealed,
            realized: RsCategory::from_score(features.base),
            base: features.base,
            bucket: features.bucket,
            predicted_bucket,
            beat_observer: beat,
        })
    }

    /// Whether the realized category is among the two heaviest predicted
    /// ones that carry any mass.
    pub fn correct(&self) -> bool {
        self.distribution.top_two().contains(&self.realized) && self.distribution.get(self.realized) > 0.0
    }
}

/// A shown hand compared with the range assigned to it pre-flop.
#[derive(Debug, Clone, PartialEq)]
pub struct ShowdownRead {
    pub hand_id: u64,
    pub seat: usize,
    pub player: String,
    pub archetype: Archetype,
    pub revealed: Hole,
    pub preflop_grid: ComboGrid,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Replay {
    pub predictions: Vec<PredictionRecord>,
    pub showdowns: Vec<ShowdownRead>,
    /// Players skipped, with the reason.
    pub log: Vec<String>,
}

/// Re-runs `record` from `observer`'s seat, recomputing the grids held at
/// every step and pairing each with the revealed cards.
pub fn replay_with_perfect_info(
    record: &HandRecord,
    observer: Option<usize>,
    models: Models<'_>,
    archetypes: &[Archetype],
    adjustments: Option<&RangeAdjustments>,
) -> Result<Replay> {
    let mut out = Replay::default();
    if record.shown.is_empty() || record.aborted.is_some() {
        return Ok(out);
    }
    let n = record.seats.len();
    let players: Vec<String> = record.seats.iter().map(|s| s.player.clone()).collect();
    let tracked: Vec<bool> = (0..n).map(|s| Some(s) != observer && record.shown.contains(&s)).collect();
    let observer_hole = observer.map(|s| record.holes[s]);
    let mut reader = HandReader::new(models, observer_hole, archetypes.to_vec(), players.clone(), tracked.clone()).with_snapshots();
    if let Some(adj) = adjustments {
        reader = reader.with_adjustments(adj);
    }
    let mut g = record.initial_state()?;
    for a in &record.actions {
        let action = match a.kind {
            ActionKind::Bet | ActionKind::Raise => Action { kind: a.kind, to: a.to },
            k => Action { kind: k, to: 0 },
        };
        g.apply(action, a.think_ms)?;
        reader.sync(&g)?;
    }
    let mut views: Vec<BoardView<'_>> = Vec::new();
    for step in reader.steps() {
        let Some(grid) = step.grid.clone() else { continue };
        let len = step.street.board_len();
        let i = match views.iter().position(|v| v.cards().len() == len) {
            Some(i) => i,
            None => {
                views.push(models.rsm.view(&Board::new(&record.runout[..len])?)?);
                views.len() - 1
            }
        };
        let at = StepId {
            hand_id: record.hand_id,
            seat: step.seat,
            player: players[step.seat].clone(),
            street: step.street,
            ret: step.ret.clone(),
        };
        out.predictions
            .push(PredictionRecord::on_view(at, grid, &views[i], record.holes[step.seat], observer_hole)?);
    }
    for s in (0..n).filter(|&s| tracked[s]) {
        match reader.preflop_grid(s) {
            Some(grid) => out.showdowns.push(ShowdownRead {
                hand_id: record.hand_id,
                seat: s,
                player: players[s].clone(),
                archetype: archetypes[s],
                revealed: record.holes[s],
                preflop_grid: grid.clone(),
            }),
            None => out.log.push(format!("hand {} seat {}: no pre-flop read, skipped", record.hand_id, s)),
        }
    }
    Ok(out)
}

/// One overlay correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta {
    pub hand_id: u64,
    pub bucket: BucketKey,
    pub delta: f64,
    pub correct: bool,
}

/// Deltas the predictions call for, computed against `rsm` without
/// changing it. A correct prediction reinforces the revealed hand's bucket;
/// a wrong one corrects the bucket that carried the predicted category.
/// Either way the bucket's score steps toward the realized category and
/// never past it.
pub fn compute_deltas(records: &[PredictionRecord], rsm: &Rsm, params: &LearningParams) -> Result<Vec<Delta>> {
    params.validate()?;
    let mut scratch = rsm.clone();
    let mut out = Vec::new();
    for r in records {
        let correct = r.correct();
        let (bucket, base, step) = match (correct, r.predicted_bucket) {
            (true, _) => (r.bucket, r.base, params.delta_r),
            (false, Some((b, base))) => (b, base, params.delta_c),
            (false, None) => continue,
        };
        let score = (base + scratch.overlay().get(&bucket)).clamp(0.0, 10.0);
        let gap = f64::from(r.realized.value()) - score;
        if gap == 0.0 {
            continue;
        }
        let delta = gap.signum() * step.min(gap.abs());
        let before = scratch.overlay().get(&bucket);
        scratch.apply_delta(bucket, delta)?;
        let applied = scratch.overlay().get(&bucket) - before;
        if applied == 0.0 {
            continue;
        }
        out.push(Delta {
            hand_id: r.hand_id,
            bucket,
            delta: applied,
            correct,
        });
    }
    Ok(out)
}

/// Applies the learning from each replay once per hand id and keeps the
/// resulting deltas as an audit log.
#[derive(Debug, Clone, Default)]
pub struct Learner {
    pub params: LearningParams,
    learned: BTreeSet<u64>,
    log: Vec<Delta>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Applied(Vec<Delta>),
    /// The hand was learned before; nothing was applied.
    Duplicate,
}

impl Learner {
    pub fn new(params: LearningParams) -> Learner {
        Learner { params, ..Learner::default() }
    }

    pub fn log(&self) -> &[Delta] {
        &self.log
    }

    pub fn learned(&self) -> usize {
        self.learned.len()
    }

    pub fn apply_learning(&mut self, replay: &Replay, rsm: &mut Rsm, profiles: &mut ProfileStore) -> Result<Outcome> {
        let Some(hand_id) = replay_hand_id(replay) else {
            return Ok(Outcome::Applied(Vec::new()));
        };
        if !self.learned.insert(hand_id) {
            return Ok(Outcome::Duplicate);
        }
        let deltas = compute_deltas(&replay.predictions, rsm, &self.params)?;
        for d in &deltas {
            rsm.apply_delta(d.bucket, d.delta)?;
        }
        for s in &replay.showdowns {
            profiles.showdown_refine(&s.player, s.archetype, s.revealed, &s.preflop_grid);
        }
        self.log.extend_from_slice(&deltas);
        Ok(Outcome::Applied(deltas))
    }

    /// Replays the learning over `replays` on a scratch copy of `start`
    /// and compares every hand's deltas with the log. Returns the ids of
    /// hands whose deltas differ. Nothing is applied to live state.
    pub fn audit(&self, replays: &[Replay], start: &Rsm) -> Result<Vec<u64>> {
        let mut scratch = start.clone();
        let mut seen = BTreeSet::new();
        let mut mismatched = Vec::new();
        for replay in replays {
            let Some(hand_id) = replay_hand_id(replay) else { continue };
            if !seen.insert(hand_id) {
                continue;
            }
            let fresh = compute_deltas(&replay.predictions, &scratch, &self.params)?;
            for d in &fresh {
                scratch.apply_delta(d.bucket, d.delta)?;
            }
            let logged: Vec<Delta> = self.log.iter().filter(|d| d.hand_id == hand_id).copied().collect();
            if fresh != logged {
                mismatched.push(hand_id);
            }
        }
        Ok(mismatched)
    }
}

fn replay_hand_id(replay: &Replay) -> Option<u64> {
    replay.predictions.first().map(|p| p.hand_id).or(replay.showdowns.first().map(|s| s.hand_id))
}

/// One line per delta: hand id, bucket, sign and magnitude.
pub fn format_audit(deltas: &[Delta]) -> String {
    let mut s = String::new();
    for d in deltas {
        let sign = if d.delta >= 0.0 { '+' } else { '-' };
        writeln!(
            s,
            "hand {}\tbucket {}\t{}\t{:.4}\t{}",
            d.hand_id,
            d.bucket,
            sign,
            d.delta.abs(),
            if d.correct { "reinforce" } else { "correct" }
        )
        .unwrap();
    }
    s
}
