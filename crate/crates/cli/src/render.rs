//! Barcode drawings: fixed-width text and SVG.
//!
//! Bars are sorted by `(birth, death)`, one row per bar counted with
//! multiplicity. Infinite bars run to the right edge and end in an arrow.

use std::fmt::Write;

use num_traits::ToPrimitive;

use dirhom_core::{DiagramKind, Extended, PersistenceDiagram, Rational};

use crate::format::format_rational;

const TEXT_WIDTH: usize = 40;
const SVG_WIDTH: f64 = 480.0;
const SVG_MARGIN: f64 = 40.0;
const ROW: f64 = 14.0;

/// Common horizontal range `[lo, hi]` of a set of diagrams.
fn range<'a>(diagrams: impl IntoIterator<Item = &'a PersistenceDiagram>) -> (Rational, Rational) {
    let mut values = Vec::new();
    for d in diagrams {
        for (b, _) in d.points() {
            values.push(b.birth.clone());
            if let Extended::Finite(x) = &b.death {
                values.push(x.clone());
            }
        }
    }
    let lo = values.iter().min().cloned().unwrap_or_else(|| Rational::from_integer(0.into()));
    let mut hi = values.iter().max().cloned().unwrap_or_else(|| lo.clone());
    if hi <= lo {
        hi = &lo + Rational::from_integer(1.into());
    }
    (lo, hi)
}

fn column(x: &Rational, lo: &Rational, hi: &Rational, width: usize) -> usize {
    let t = (x - lo) / (hi - lo) * Rational::from_integer(width.into());
    t.floor().to_integer().to_usize().unwrap_or(0).min(width)
}

fn label(d: &PersistenceDiagram, kind: DiagramKind) -> String {
    format!("Dgm{} ({kind})", d.dimension())
}

fn interval(b: &dirhom_core::Bar) -> String {
    let death = match &b.death {
        Extended::Finite(x) => format_rational(x),
        Extended::Infinite => "inf".into(),
    };
    format!("[{}, {death})", format_rational(&b.birth))
}

/// Text barcode of several diagrams sharing one horizontal scale.
pub fn render_text(diagrams: &[(PersistenceDiagram, DiagramKind)]) -> String {
    let (lo, hi) = range(diagrams.iter().map(|(d, _)| d));
    let labels: Vec<Vec<String>> = diagrams.iter().map(|(d, _)| d.bars().iter().map(interval).collect()).collect();
    let pad = labels.iter().flatten().map(String::len).max().unwrap_or(0).max(6);
    let mut out = String::new();
    for ((d, kind), labels) in diagrams.iter().zip(&labels) {
        writeln!(out, "{}", label(d, *kind)).unwrap();
        for (b, text) in d.bars().iter().zip(labels) {
            let start = column(&b.birth, &lo, &hi, TEXT_WIDTH);
            let line = match &b.death {
                Extended::Finite(x) => {
                    let end = column(x, &lo, &hi, TEXT_WIDTH).max(start + 1);
                    "=".repeat(end - start)
                }
                Extended::Infinite => format!("{}>", "=".repeat(TEXT_WIDTH - start)),
            };
            writeln!(out, "  {text:<pad$} |{}{line}", " ".repeat(start)).unwrap();
        }
        let lo_s = format_rational(&lo);
        let hi_s = format_rational(&hi);
        writeln!(out, "  {:<pad$} +{}", "", "-".repeat(TEXT_WIDTH)).unwrap();
        let gap = (TEXT_WIDTH + 1).saturating_sub(lo_s.len() + hi_s.len());
        writeln!(out, "  {:<pad$} {lo_s}{}{hi_s}", "", " ".repeat(gap)).unwrap();
    }
    out
}

/// SVG barcode with one panel per diagram.
pub fn render_svg(diagrams: &[(PersistenceDiagram, DiagramKind)]) -> String {
    let (lo, hi) = range(diagrams.iter().map(|(d, _)| d));
    let (lo_f, hi_f) = (lo.to_f64().unwrap_or(0.0), hi.to_f64().unwrap_or(1.0));
    let plot = SVG_WIDTH - 2.0 * SVG_MARGIN;
    let x_of = |r: &Rational| SVG_MARGIN + (r.to_f64().unwrap_or(0.0) - lo_f) / (hi_f - lo_f) * plot * 0.9;
    let right = SVG_WIDTH - SVG_MARGIN;

    let mut body = String::new();
    let mut y = 10.0;
    for (d, kind) in diagrams {
        y += ROW;
        writeln!(body, r#"  <text x="{SVG_MARGIN}" y="{y}" font-size="12">{}</text>"#, label(d, *kind)).unwrap();
        for b in d.bars() {
            y += ROW;
            let x1 = x_of(&b.birth);
            match &b.death {
                Extended::Finite(x) => {
                    writeln!(body, r#"  <line x1="{x1:.2}" y1="{y}" x2="{:.2}" y2="{y}" stroke="black" stroke-width="3"/>"#, x_of(x)).unwrap();
                }
                Extended::Infinite => {
                    writeln!(
                        body,
                        r#"  <line x1="{x1:.2}" y1="{y}" x2="{right:.2}" y2="{y}" stroke="black" stroke-width="3" marker-end="url(#arrow)"/>"#
                    )
                    .unwrap();
                }
            }
        }
        y += ROW;
        writeln!(body, r#"  <line x1="{SVG_MARGIN}" y1="{y}" x2="{right}" y2="{y}" stroke="gray"/>"#).unwrap();
        writeln!(body, r#"  <text x="{SVG_MARGIN}" y="{}" font-size="10">{}</text>"#, y + 12.0, format_rational(&lo)).unwrap();
        writeln!(body, r#"  <text x="{:.2}" y="{}" font-size="10">{}</text>"#, x_of(&hi), y + 12.0, format_rational(&hi)).unwrap();
        y += 12.0;
    }
    let height = y + 10.0;
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            "\n",
            r#"  <defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z"/></marker></defs>"#,
            "\n{body}</svg>\n"
        ),
        w = SVG_WIDTH,
        h = height,
        body = body
    )
}

/// Output format of a single barcode drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarcodeFormat {
    Text,
    Svg,
}

pub fn render_barcode(diagram: &PersistenceDiagram, kind: DiagramKind, format: BarcodeFormat) -> String {
    let one = [(diagram.clone(), kind)];
    match format {
        BarcodeFormat::Text => render_text(&one),
        BarcodeFormat::Svg => render_svg(&one),
    }
}
