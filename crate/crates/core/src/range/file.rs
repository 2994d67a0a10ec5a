//! Text range files: one `<class|combo> <weight>` per line, `#` comments.

use std::fmt::Write as _;

use super::{Combo, ComboGrid, HandClass};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RangeEntry {
    Class(HandClass, f64),
    Combo(Combo, f64),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RangeFile {
    pub entries: Vec<RangeEntry>,
}

impl RangeFile {
    /// Raw weights; later lines override earlier ones for the combos they name.
    pub fn grid(&self) -> ComboGrid {
        let mut g = ComboGrid::empty();
        for e in &self.entries {
            match *e {
                RangeEntry::Class(class, w) => {
                    for c in class.combos() {
                        g.set_weight(c, w);
                    }
                }
                RangeEntry::Combo(c, w) => g.set_weight(c, w),
            }
        }
        g
    }

    pub fn normalized(&self) -> Result<ComboGrid> {
        self.grid().normalized()
    }
}

pub fn parse_range_file(text: &str) -> Result<RangeFile> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(hand), Some(weight), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(line_no, format!("expected `<hand> <weight>`, got {line:?}")));
        };
        let w: f64 = weight.parse().map_err(|_| Error::parse(line_no, format!("bad weight {weight:?}")))?;
        if !w.is_finite() || w < 0.0 {
            return Err(Error::parse(line_no, format!("weight must be finite and nonnegative, got {w}")));
        }
        let entry = if hand.len() == 4 {
            RangeEntry::Combo(hand.parse().map_err(|e| Error::parse(line_no, format!("{e}")))?, w)
        } else {
            RangeEntry::Class(hand.parse().map_err(|e| Error::parse(line_no, format!("{e}")))?, w)
        };
        entries.push(entry);
    }
    Ok(RangeFile { entries })
}

/// Writes a grid as class lines where all members share a weight, combo
/// lines otherwise. Zero-weight classes are omitted.
pub fn format_range_file(grid: &ComboGrid) -> String {
    let mut out = String::new();
    for class in HandClass::all() {
        let ws: Vec<(Combo, f64)> = class.combos().map(|c| (c, grid.weight(c))).collect();
        if ws.iter().all(|(_, w)| *w == 0.0) {
            continue;
        }
        if ws.iter().all(|(_, w)| *w == ws[0].1) {
            let _ = writeln!(out, "{class} {}", ws[0].1);
        } else {
            for (c, w) in ws.into_iter().filter(|(_, w)| *w > 0.0) {
                let _ = writeln!(out, "{c} {w}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_classes_combos_and_comments() {
        let f = parse_range_file("# header\nAA 1\nAKs 0.5  # suited\n\nAsKd 0.25\n").unwrap();
        assert_eq!(f.entries.len(), 3);
        let g = f.grid();
        assert_eq!(g.support_size(), 6 + 4 + 1);
        assert_eq!(g.weight("AsKd".parse().unwrap()), 0.25);
        let n = f.normalized().unwrap();
        assert!((n.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_range_file("AA 1\nAK 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_range_file("AA -1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_range_file("AA"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn format_parses_back_to_same_grid() {
        let f = parse_range_file("QQ 1\nAKo 0.5\nAsKd 0.25\n72o 0.1").unwrap();
        let g = f.grid();
        let back = parse_range_file(&format_range_file(&g)).unwrap().grid();
        assert_eq!(g, back);
    }
}
