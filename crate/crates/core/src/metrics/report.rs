use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

use super::{bb100, ResultLedger, Units};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

/// Win rates of consecutive non-overlapping segments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentReport {
    pub segment: usize,
    /// BB/100 of each full segment.
    pub rates: Vec<f64>,
    /// Max minus min segment rate; `None` with fewer than one full segment.
    pub spread: Option<f64>,
    /// Hands left over after the last full segment.
    pub partial: usize,
    /// Sample standard deviation of the per-hand result, in big blinds.
    pub sd_per_hand: f64,
    /// 95% half-width of the whole-run BB/100, normal approximation.
    pub ci_half_width: f64,
}

/// Splits per-hand `amounts` into segments of `segment` hands.
pub fn segment_analysis(amounts: &[Units], bb: Units, segment: usize) -> Result<SegmentReport> {
    if segment == 0 {
        return Err(Error::invalid("segment size must be positive"));
    }
    let n = amounts.len();
    let rates = amounts
        .chunks_exact(segment)
        .map(|c| bb100(c.iter().sum(), segment as u64, bb))
        .collect::<Result<Vec<f64>>>()?;
    let spread = (!rates.is_empty()).then(|| {
        let max = rates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = rates.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    });
    let (sd, ci) = if n >= 2 {
        let xs: Vec<f64> = amounts.iter().map(|&a| a as f64 / bb as f64).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let sd = var.sqrt();
        (sd, Z_95 * sd / (n as f64).sqrt() * 100.0)
    } else {
        (0.0, f64::NAN)
    };
    Ok(SegmentReport {
        segment,
        rates,
        spread,
        partial: n % segment,
        sd_per_hand: sd,
        ci_half_width: ci,
    })
}

fn check_bb(bb: Units) -> Result<()> {
    if bb <= 0 {
        return Err(Error::invalid("big blind must be positive"));
    }
    Ok(())
}

/// Summary of a run in the layout of a results table: amounts and win
/// rates for each accounting line.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub hands: u64,
    pub bb: Units,
    pub pre_rake: Units,
    pub rake: Units,
    pub rakeback: Units,
    pub adjusted: Units,
    pub segments: Option<SegmentReport>,
}

#[derive(Debug, Serialize)]
struct CsvRow {
    hands: u64,
    bb: Units,
    pre_rake: Units,
    rake: Units,
    rakeback: Units,
    post_rake: Units,
    adjusted: Units,
    net: Units,
    pre_rake_bb100: f64,
    rake_bb100: f64,
    rakeback_bb100: f64,
    post_rake_bb100: f64,
    adjusted_bb100: f64,
    net_bb100: f64,
    segment_spread_bb100: Option<f64>,
    ci_half_width_bb100: Option<f64>,
}

impl TrialReport {
    /// Report from aggregate amounts; the all-in adjusted line equals the
    /// post-rake result when no adjusted total is known.
    pub fn from_totals(hands: u64, bb: Units, pre_rake: Units, rake: Units, rakeback: Units) -> Result<TrialReport> {
        check_bb(bb)?;
        Ok(TrialReport {
            hands,
            bb,
            pre_rake,
            rake,
            rakeback,
            adjusted: pre_rake - rake,
            segments: None,
        })
    }

    pub fn from_ledger(ledger: &ResultLedger, segment: usize) -> Result<TrialReport> {
        let hands = ledger.hands();
        check_bb(ledger.bb)?;
        let pre: Vec<Units> = ledger.entries().iter().map(|e| e.pre_rake()).collect();
        Ok(TrialReport {
            hands,
            bb: ledger.bb,
            pre_rake: ledger.total(|e| e.pre_rake()),
            rake: ledger.total(|e| e.rake),
            rakeback: ledger.total(|e| e.rakeback),
            adjusted: ledger.total(|e| e.adjusted),
            segments: Some(segment_analysis(&pre, ledger.bb, segment)?),
        })
    }

    pub fn post_rake(&self) -> Units {
        self.pre_rake - self.rake
    }

    pub fn net(&self) -> Units {
        self.pre_rake - self.rake + self.rakeback
    }

    /// Rates of an empty run are reported as zero.
    fn rate(&self, amount: Units) -> f64 {
        if self.hands == 0 {
            return 0.0;
        }
        bb100(amount, self.hands, self.bb).expect("big blind checked at construction")
    }

    pub fn pre_rake_bb100(&self) -> f64 {
        self.rate(self.pre_rake)
    }

    /// Negative: rake is a cost.
    pub fn rake_bb100(&self) -> f64 {
        0.0 - self.rate(self.rake)
    }

    pub fn rakeback_bb100(&self) -> f64 {
        self.rate(self.rakeback)
    }

    pub fn post_rake_bb100(&self) -> f64 {
        self.rate(self.post_rake())
    }

    pub fn adjusted_bb100(&self) -> f64 {
        self.rate(self.adjusted)
    }

    pub fn net_bb100(&self) -> f64 {
        self.rate(self.net())
    }

    /// Fixed-width text table.
    pub fn to_text(&self) -> String {
        let rows = [
            ("Pre-rake result", self.pre_rake, self.pre_rake_bb100()),
            ("Rake", -self.rake, self.rake_bb100()),
            ("Rakeback", self.rakeback, self.rakeback_bb100()),
            ("Post-rake, pre-rakeback", self.post_rake(), self.post_rake_bb100()),
            ("All-in adjusted", self.adjusted, self.adjusted_bb100()),
            ("Net result", self.net(), self.net_bb100()),
        ];
        let mut s = String::new();
        writeln!(s, "{:<26}{:>14}{:>12}{:>10}", "Line", "Units", "BB", "BB/100").unwrap();
        writeln!(s, "{:<26}{:>14}", "Hands", self.hands).unwrap();
        for (name, units, rate) in rows {
            writeln!(s, "{:<26}{:>14}{:>12.2}{:>10.2}", name, units, units as f64 / self.bb as f64, rate).unwrap();
        }
        if let Some(seg) = &self.segments {
            let spread = seg.spread.map_or("n/a".to_string(), |x| format!("{x:.2}"));
            writeln!(s, "{:<26}{:>14}", "Segment size", seg.segment).unwrap();
            writeln!(s, "{:<26}{:>14}", "Segment spread BB/100", spread).unwrap();
            let ci = if seg.ci_half_width.is_finite() {
                format!("{:.2}", seg.ci_half_width)
            } else {
                "n/a".to_string()
            };
            writeln!(s, "{:<26}{:>14}", "95% CI half-width BB/100", ci).unwrap();
            if seg.partial > 0 {
                writeln!(s, "{:<26}{:>14}", "Partial segment hands", seg.partial).unwrap();
            }
        }
        s
    }

    /// One header line and one data line.
    pub fn to_csv(&self) -> Result<String> {
        let row = CsvRow {
            hands: self.hands,
            bb: self.bb,
            pre_rake: self.pre_rake,
            rake: self.rake,
            rakeback: self.rakeback,
            post_rake: self.post_rake(),
            adjusted: self.adjusted,
            net: self.net(),
            pre_rake_bb100: self.pre_rake_bb100(),
            rake_bb100: self.rake_bb100(),
            rakeback_bb100: self.rakeback_bb100(),
            post_rake_bb100: self.post_rake_bb100(),
            adjusted_bb100: self.adjusted_bb100(),
            net_bb100: self.net_bb100(),
            segment_spread_bb100: self.segments.as_ref().and_then(|s| s.spread),
            ci_half_width_bb100: self.segments.as_ref().map(|s| s.ci_half_width).filter(|x| x.is_finite()),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(row).map_err(|e| Error::invalid(format!("csv: {e}")))?;
        let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::invalid(format!("csv: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_results_have_no_spread() {
        let r = segment_analysis(&[100; 50], 100, 10).unwrap();
        assert_eq!(r.rates.len(), 5);
        assert_eq!(r.spread, Some(0.0));
        assert_eq!(r.sd_per_hand, 0.0);
    }

    #[test]
    fn short_runs_flag_the_partial_segment() {
        let r = segment_analysis(&[1, 2, 3], 100, 10).unwrap();
        assert!(r.rates.is_empty() && r.spread.is_none());
        assert_eq!(r.partial, 3);
    }

    #[test]
    fn net_identity_holds_in_units() {
        let r = TrialReport::from_totals(1000, 2, 500, 300, 21).unwrap();
        assert_eq!(r.net(), 500 - 300 + 21);
        assert!((r.net_bb100() - (r.pre_rake_bb100() + r.rake_bb100() + r.rakeback_bb100())).abs() < 1e-9);
        assert!(TrialReport::from_totals(10, 0, 1, 1, 1).is_err());
        let empty = TrialReport::from_ledger(&ResultLedger::new(100, 690), 10).unwrap();
        assert_eq!((empty.hands, empty.net(), empty.net_bb100()), (0, 0, 0.0));
    }

    #[test]
    fn csv_has_header_and_row() {
        let csv = TrialReport::from_totals(100, 100, 250, 50, 3).unwrap().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("hands,bb,pre_rake"));
        assert!(lines[1].starts_with("100,100,250,50,3,200"));
    }
}
