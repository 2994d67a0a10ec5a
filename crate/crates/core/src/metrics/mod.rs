//! Results accounting: per-hand ledger, win rates in big blinds per 100
//! hands, variance segments and the failure cost model.
//!
//! Amounts are integer units (cents for real-money ledgers, chips for
//! simulations) with `bb` units per big blind.

mod allin;
mod report;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::HandRecord;

pub use allin::{all_in_adjusted, lock_point, LockPoint, EXACT_MISSING_CARDS, LOCK_SAMPLES};
pub use report::{segment_analysis, SegmentReport, TrialReport, Z_95};

pub type Units = i64;

/// Win rate in big blinds per 100 hands.
pub fn bb100(amount: Units, hands: u64, bb: Units) -> Result<f64> {
    if hands == 0 {
        return Err(Error::invalid("win rate over zero hands is undefined"));
    }
    if bb <= 0 {
        return Err(Error::invalid("big blind must be positive"));
    }
    Ok(amount as f64 / bb as f64 / (hands as f64 / 100.0))
}

/// One hand from the hero's side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub hand_id: u64,
    /// Result after rake, as the stack saw it.
    pub won: Units,
    /// Rake taken from pots the hero won a share of.
    pub rake: Units,
    /// Result with all-in luck replaced by equity.
    pub adjusted: Units,
    pub rakeback: Units,
}

impl LedgerEntry {
    pub fn pre_rake(&self) -> Units {
        self.won + self.rake
    }

    pub fn net(&self) -> Units {
        self.won + self.rakeback
    }
}

/// Cumulative results with rakeback accrued at a fixed rate. Rakeback per
/// hand is the step in the floored cumulative amount, so the total equals
/// `floor(total rake × rate)` exactly.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultLedger {
    pub bb: Units,
    /// Rakeback rate in basis points.
    pub rakeback_bp: u32,
    entries: Vec<LedgerEntry>,
    rake_total: Units,
}

impl ResultLedger {
    pub fn new(bb: Units, rakeback_bp: u32) -> ResultLedger {
        ResultLedger {
            bb,
            rakeback_bp,
            ..ResultLedger::default()
        }
    }

    fn accrued(&self, rake: Units) -> Units {
        rake * Units::from(self.rakeback_bp) / 10_000
    }

    /// Adds a hand; rakeback is filled in from the rate.
    pub fn push(&mut self, hand_id: u64, won: Units, rake: Units, adjusted: Units) {
        let before = self.accrued(self.rake_total);
        self.rake_total += rake;
        let rakeback = self.accrued(self.rake_total) - before;
        self.entries.push(LedgerEntry {
            hand_id,
            won,
            rake,
            adjusted,
            rakeback,
        });
    }

    /// Adds a hand with its rakeback given explicitly.
    pub fn push_entry(&mut self, entry: LedgerEntry) {
        self.rake_total += entry.rake;
        self.entries.push(entry);
    }

    /// Records one simulated hand for `seat`.
    pub fn push_record(&mut self, record: &HandRecord, seat: usize) -> Result<()> {
        let rake = attributed_rake(record, seat)?;
        let adjusted = all_in_adjusted(record, seat)?;
        self.push(record.hand_id, record.net[seat], rake, adjusted);
        Ok(())
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn hands(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn total(&self, f: impl Fn(&LedgerEntry) -> Units) -> Units {
        self.entries.iter().map(f).sum()
    }

    /// Running sum of actual results.
    pub fn green_line(&self) -> Vec<Units> {
        running(self.entries.iter().map(|e| e.won))
    }

    /// Running sum of all-in adjusted results.
    pub fn yellow_line(&self) -> Vec<Units> {
        running(self.entries.iter().map(|e| e.adjusted))
    }
}

fn running(it: impl Iterator<Item = Units>) -> Vec<Units> {
    it.scan(0, |acc, x| {
        *acc += x;
        Some(*acc)
    })
    .collect()
}

/// Rake charged to `seat`: its share of the chips paid out of raked pots.
/// Rounds down, so attributed rake across seats never exceeds the rake.
pub fn attributed_rake(record: &HandRecord, seat: usize) -> Result<Units> {
    if record.rake == 0 || record.aborted.is_some() {
        return Ok(0);
    }
    let g = record.replay()?;
    let s = g
        .settlement()
        .ok_or_else(|| Error::Contract(format!("hand {} has no settlement", record.hand_id)))?;
    let paid: Units = s.won.iter().sum();
    if paid == 0 {
        return Ok(0);
    }
    Ok(record.rake * s.won[seat] / paid)
}

/// Expected cost per failure of the hero process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FailureCostModel {
    /// Share of failures where folding was the right action anyway.
    pub p_fold: f64,
    /// Mean equity lost when it was not, in big blinds.
    pub mean_loss: f64,
    /// Blinds and stack-reset cost per failure, in big blinds.
    pub secondary: f64,
}

impl Default for FailureCostModel {
    fn default() -> Self {
        FailureCostModel {
            p_fold: 0.8,
            mean_loss: 7.35,
            secondary: 0.45,
        }
    }
}

/// `(direct, total)` cost per failure in big blinds.
pub fn failure_cost(model: &FailureCostModel) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&model.p_fold) {
        return Err(Error::invalid(format!("fold share {} outside [0, 1]", model.p_fold)));
    }
    let direct = (1.0 - model.p_fold) * model.mean_loss;
    Ok((direct, direct + model.secondary))
}
