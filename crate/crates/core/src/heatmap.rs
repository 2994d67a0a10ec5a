//! Heatmap images of combo grids, as SVG or binary PPM. Darker cells carry
//! more weight.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::cards::Card;
use crate::error::{Error, Result};
use crate::range::{Combo, ComboGrid, HandClass};

/// Lightest shade, used for zero weight.
pub const MIN_SHADE: [u8; 3] = [255, 255, 255];
/// Darkest shade, used for the heaviest cell.
pub const MAX_SHADE: [u8; 3] = [128, 0, 38];
const LEGEND_STEPS: usize = 10;
const EMPTY_CELL: [u8; 3] = [224, 224, 224];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSource {
    /// 13x13 starting-hand classes; each cell shows the mean combo weight.
    Classes,
    /// 52x52 card matrix; each combo appears above and below the diagonal.
    Combos,
}

impl FromStr for GridSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<GridSource> {
        match s {
            "169" | "classes" => Ok(GridSource::Classes),
            "1326" | "combos" => Ok(GridSource::Combos),
            _ => Err(Error::Unsupported(format!("grid source {s:?}; expected 169 or 1326"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Svg,
    Ppm,
}

impl FromStr for ImageFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ImageFormat> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(ImageFormat::Svg),
            "ppm" => Ok(ImageFormat::Ppm),
            _ => Err(Error::Unsupported(format!("image format {s:?}; expected svg or ppm"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapSpec {
    pub source: GridSource,
    pub format: ImageFormat,
    /// Cell edge in pixels.
    pub cell: u32,
    pub title: Option<String>,
}

impl Default for HeatmapSpec {
    fn default() -> Self {
        HeatmapSpec {
            source: GridSource::Classes,
            format: ImageFormat::Svg,
            cell: 28,
            title: None,
        }
    }
}

/// Color for a weight as a fraction of the heaviest cell. Every channel is
/// non-increasing in `t`.
pub fn ramp(t: f64) -> [u8; 3] {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let mut out = [0u8; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let lo = f64::from(MIN_SHADE[i]);
        let hi = f64::from(MAX_SHADE[i]);
        *o = (lo + (hi - lo) * t).round() as u8;
    }
    out
}

/// Cell values laid out row by row; `None` marks cells with no combo.
#[derive(Debug, Clone, PartialEq)]
pub struct Cells {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<Option<f64>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl Cells {
    pub fn max(&self) -> f64 {
        self.values.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Shade of every cell, scaled to the heaviest one.
    pub fn shades(&self) -> Vec<[u8; 3]> {
        let max = self.max();
        self.values
            .iter()
            .map(|v| match v {
                None => EMPTY_CELL,
                Some(_) if max <= 0.0 => MIN_SHADE,
                Some(w) => ramp(w / max),
            })
            .collect()
    }
}

fn card_order() -> Vec<Card> {
    let mut cards: Vec<Card> = Card::all().collect();
    cards.sort_by(|a, b| b.rank().cmp(&a.rank()).then(a.suit().cmp(&b.suit())));
    cards
}

pub fn cells(grid: &ComboGrid, source: GridSource) -> Cells {
    match source {
        GridSource::Classes => {
            let view = grid.class_view();
            let mut values = Vec::with_capacity(169);
            for row in 0..13 {
                for col in 0..13 {
                    let class = HandClass::from_grid_cell(row, col);
                    values.push(Some(view.cell(row, col) / class.combo_count() as f64));
                }
            }
            let labels: Vec<String> = (0..13).map(|i| HandClass::from_grid_cell(i, i).high().to_string()).collect();
            Cells {
                rows: 13,
                cols: 13,
                values,
                row_labels: labels.clone(),
                col_labels: labels,
            }
        }
        GridSource::Combos => {
            let order = card_order();
            let mut values = Vec::with_capacity(52 * 52);
            for &a in &order {
                for &b in &order {
                    values.push(Combo::new(a, b).map(|c| grid.weight(c)));
                }
            }
            let labels: Vec<String> = order.iter().map(|c| c.to_string()).collect();
            Cells {
                rows: 52,
                cols: 52,
                values,
                row_labels: labels.clone(),
                col_labels: labels,
            }
        }
    }
}

/// Renders `grid` as an image file's bytes.
pub fn render(grid: &ComboGrid, spec: &HeatmapSpec) -> Result<Vec<u8>> {
    if spec.cell == 0 {
        return Err(Error::invalid("heatmap cell size must be positive"));
    }
    let c = cells(grid, spec.source);
    Ok(match spec.format {
        ImageFormat::Svg => svg(&c, spec).into_bytes(),
        ImageFormat::Ppm => ppm(&c, spec.cell as usize),
    })
}

fn hex(rgb: [u8; 3]) -> String {
    format!("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2])
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn svg(c: &Cells, spec: &HeatmapSpec) -> String {
    let cell = spec.cell as usize;
    let margin = cell;
    let top = if spec.title.is_some() { 2 * cell } else { cell };
    let grid_w = c.cols * cell;
    let grid_h = c.rows * cell;
    let legend_y = top + grid_h + cell / 2;
    let width = margin + grid_w + cell / 2;
    let height = legend_y + 2 * cell;
    let font = (cell as f64 * 0.4).max(6.0);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{width}" height="{height}" fill="{}"/>"#, hex(MIN_SHADE)).unwrap();
    if let Some(t) = &spec.title {
        writeln!(s, r#"<text x="{margin}" y="{}" font-size="{:.1}">{}</text>"#, cell, font * 1.4, escape(t)).unwrap();
    }
    for (i, l) in c.col_labels.iter().enumerate() {
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="{font:.1}" text-anchor="middle">{}</text>"#,
            margin + i * cell + cell / 2,
            top - cell / 4,
            escape(l)
        )
        .unwrap();
    }
    for (i, l) in c.row_labels.iter().enumerate() {
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="{font:.1}" text-anchor="end">{}</text>"#,
            margin - 2,
            top + i * cell + cell * 2 / 3,
            escape(l)
        )
        .unwrap();
    }
    let shades = c.shades();
    for (k, (v, shade)) in c.values.iter().zip(&shades).enumerate() {
        let (row, col) = (k / c.cols, k % c.cols);
        let title = match v {
            Some(w) => format!("{} {} {w:.6}", c.row_labels[row], c.col_labels[col]),
            None => String::new(),
        };
        writeln!(
            s,
            r#"<rect class="cell" x="{}" y="{}" width="{cell}" height="{cell}" fill="{}" stroke="{}" stroke-width="0.5"><title>{}</title></rect>"#,
            margin + col * cell,
            top + row * cell,
            hex(*shade),
            hex(EMPTY_CELL),
            escape(&title)
        )
        .unwrap();
    }
    let swatch = grid_w / LEGEND_STEPS;
    writeln!(s, r#"<g class="legend">"#).unwrap();
    for i in 0..LEGEND_STEPS {
        let t = i as f64 / (LEGEND_STEPS - 1) as f64;
        writeln!(
            s,
            r#"<rect x="{}" y="{legend_y}" width="{swatch}" height="{}" fill="{}"/>"#,
            margin + i * swatch,
            cell / 2,
            hex(ramp(t))
        )
        .unwrap();
    }
    let label_y = legend_y + cell / 2 + cell * 2 / 3;
    writeln!(s, r#"<text x="{margin}" y="{label_y}" font-size="{font:.1}">0</text>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="{label_y}" font-size="{font:.1}" text-anchor="end">{:.4}</text>"#,
        margin + LEGEND_STEPS * swatch,
        c.max()
    )
    .unwrap();
    writeln!(s, "</g>").unwrap();
    s.push_str("</svg>\n");
    s
}

/// Binary PPM: the grid, a blank row, then a legend strip running from the
/// lightest to the darkest shade.
fn ppm(c: &Cells, cell: usize) -> Vec<u8> {
    let width = c.cols * cell;
    let height = c.rows * cell + 2 * cell;
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    let shades = c.shades();
    for y in 0..c.rows * cell {
        for x in 0..width {
            out.extend_from_slice(&shades[(y / cell) * c.cols + x / cell]);
        }
    }
    for _ in 0..cell {
        for _ in 0..width {
            out.extend_from_slice(&MIN_SHADE);
        }
    }
    for _ in 0..cell {
        for x in 0..width {
            out.extend_from_slice(&ramp(x as f64 / (width - 1).max(1) as f64));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn luminance(rgb: [u8; 3]) -> u32 {
        rgb.iter().map(|&x| u32::from(x)).sum()
    }

    #[test]
    fn ramp_darkens_monotonically() {
        let mut prev = ramp(0.0);
        assert_eq!(prev, MIN_SHADE);
        for i in 1..=100 {
            let cur = ramp(i as f64 / 100.0);
            assert!((0..3).all(|k| cur[k] <= prev[k]));
            prev = cur;
        }
        assert_eq!(prev, MAX_SHADE);
    }

    #[test]
    fn zero_grid_is_uniform_minimum() {
        for source in [GridSource::Classes, GridSource::Combos] {
            let c = cells(&ComboGrid::empty(), source);
            assert!(c.shades().iter().zip(&c.values).filter(|(_, v)| v.is_some()).all(|(s, _)| *s == MIN_SHADE));
        }
        let img = render(
            &ComboGrid::empty(),
            &HeatmapSpec {
                format: ImageFormat::Ppm,
                cell: 2,
                ..HeatmapSpec::default()
            },
        )
        .unwrap();
        let header = b"P6\n26 30\n255\n";
        assert!(img.starts_with(header));
        let body = &img[header.len()..];
        assert_eq!(body.len(), 26 * 30 * 3);
        assert!(body[..26 * 26 * 3].iter().all(|&b| b == 255));
    }

    #[test]
    fn heavier_cells_are_darker() {
        let aa: Combo = "AhAs".parse().unwrap();
        let kq: Combo = "KdQd".parse().unwrap();
        let g = ComboGrid::from_weights([(aa, 0.7), (kq, 0.3)]);
        for source in [GridSource::Classes, GridSource::Combos] {
            let c = cells(&g, source);
            let shades = c.shades();
            let mut pairs: Vec<(f64, [u8; 3])> = c.values.iter().zip(&shades).filter_map(|(v, s)| v.map(|w| (w, *s))).collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            for w in pairs.windows(2) {
                assert!(luminance(w[1].1) <= luminance(w[0].1));
            }
        }
    }

    #[test]
    fn svg_has_cells_and_legend() {
        let svg = String::from_utf8(
            render(
                &ComboGrid::uniform(),
                &HeatmapSpec {
                    title: Some("a<b".into()),
                    ..HeatmapSpec::default()
                },
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(svg.matches(r#"class="cell""#).count(), 169);
        assert!(svg.contains(r#"class="legend""#) && svg.contains("a&lt;b"));
        assert!(svg.trim_end().ends_with("</svg>"));
        let combos = String::from_utf8(
            render(
                &ComboGrid::uniform(),
                &HeatmapSpec {
                    source: GridSource::Combos,
                    cell: 6,
                    ..HeatmapSpec::default()
                },
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(combos.matches(r#"class="cell""#).count(), 52 * 52);
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert!("gif".parse::<ImageFormat>().is_err());
        assert!("200".parse::<GridSource>().is_err());
        assert_eq!("SVG".parse::<ImageFormat>().unwrap(), ImageFormat::Svg);
    }
}
