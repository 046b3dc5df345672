//! Deterministic SVG rendering of web diagrams, drawn bottom to top.

use std::fmt::Write;

use super::{Gen, WebDiagram};

const SPACING: i64 = 40;
const BAND: i64 = 50;
const MARGIN: i64 = 30;

fn x(i: usize) -> i64 {
    MARGIN + SPACING * i as i64
}

fn line(out: &mut String, x1: i64, y1: i64, x2: i64, y2: i64) {
    writeln!(
        out,
        r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="2"/>"#
    )
    .unwrap();
}

fn label(out: &mut String, x: i64, y: i64, k: usize) {
    writeln!(
        out,
        r#"  <text x="{}" y="{}" font-size="11" font-family="monospace">{k}</text>"#,
        x + 3,
        y
    )
    .unwrap();
}

/// One SVG document per diagram: strands with their labels, generators as junctions,
/// X-crossings and arcs. The output depends only on the diagram.
pub fn render_svg(d: &WebDiagram) -> String {
    let levels = d.levels();
    let widest = levels.iter().map(|l| l.len()).max().unwrap_or(0).max(1);
    let bands = d.slices().len().max(1) as i64;
    let width = 2 * MARGIN + SPACING * (widest as i64 - 1);
    let height = 2 * MARGIN + BAND * bands;
    let y = |level: usize| height - MARGIN - BAND * level as i64;

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#).unwrap();
    writeln!(
        out,
        r#"  <rect x="0" y="0" width="{width}" height="{height}" fill="white" stroke="gray"/>"#
    )
    .unwrap();
    if d.is_empty() {
        // identity: vertical strands through a single band
        for (i, &k) in d.source().iter().enumerate() {
            line(&mut out, x(i), y(0), x(i), y(1));
            label(&mut out, x(i), y(0) - BAND / 2, k);
        }
    }
    for (lv, s) in d.slices().iter().enumerate() {
        let (lo, hi) = (y(lv), y(lv + 1));
        let mid = (lo + hi) / 2;
        let below = &levels[lv];
        let above = &levels[lv + 1];
        let n_in = s.gen.inputs().len();
        let n_out = s.gen.outputs().len();
        for i in 0..s.pos {
            line(&mut out, x(i), lo, x(i), hi);
        }
        for i in s.pos + n_in..below.len() {
            line(&mut out, x(i), lo, x(i - n_in + n_out), hi);
        }
        let p = s.pos;
        match s.gen {
            Gen::Merge { .. } => {
                line(&mut out, x(p), lo, x(p), mid);
                line(&mut out, x(p + 1), lo, x(p), mid);
                line(&mut out, x(p), mid, x(p), hi);
                label(&mut out, x(p), mid - BAND / 4, above[p]);
            }
            Gen::Split { .. } => {
                line(&mut out, x(p), lo, x(p), mid);
                line(&mut out, x(p), mid, x(p), hi);
                line(&mut out, x(p), mid, x(p + 1), hi);
                label(&mut out, x(p), mid + BAND / 4, below[p]);
            }
            Gen::Cross { .. } => {
                line(&mut out, x(p), lo, x(p + 1), hi);
                line(&mut out, x(p + 1), lo, x(p), hi);
            }
            Gen::Cap { .. } => {
                writeln!(out, r#"  <path d="M {} {lo} Q {} {} {} {lo}" fill="none" stroke="black" stroke-width="2"/>"#, x(p), (x(p) + x(p + 1)) / 2, lo - BAND, x(p + 1)).unwrap();
            }
            Gen::Cup { .. } => {
                writeln!(out, r#"  <path d="M {} {hi} Q {} {} {} {hi}" fill="none" stroke="black" stroke-width="2"/>"#, x(p), (x(p) + x(p + 1)) / 2, hi + BAND, x(p + 1)).unwrap();
            }
        }
    }
    for (i, &k) in d.source().iter().enumerate() {
        label(&mut out, x(i), y(0) + 14, k);
    }
    let top = if d.is_empty() { 1 } else { d.slices().len() };
    for (i, &k) in d.target().iter().enumerate() {
        label(&mut out, x(i), y(top) - 6, k);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::webcat::{ladder, LadderKind};

    #[test]
    fn ladder_snapshot() {
        let d = ladder(LadderKind::E, 1, 1, &[1, 2]).unwrap();
        let svg = render_svg(&d);
        if std::env::var_os("ORTHOWEB_BLESS").is_some() {
            std::fs::write(
                concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/e1_ladder.svg"),
                &svg,
            )
            .unwrap();
            return;
        }
        assert_eq!(svg, include_str!("../../tests/golden/e1_ladder.svg"));
        assert_eq!(svg, render_svg(&d));
    }
}
