//! Drawing strips: a plain-text raster for terminals and an SVG with the
//! recognised forms written under the entries.
//!
//! Both renderers draw the strip as a path of trivalent nodes with one
//! pendant leg per node, legs alternating below the spine (odd positions,
//! 1-based) and above it (even positions). Output is deterministic byte
//! for byte: same strip, same string.

use crate::scalar::Int;
use crate::trigraph::{PatternTag, VecSeq};
use std::fmt::Write;

fn label(term: &[Int]) -> String {
    let entries: Vec<String> = term.iter().map(Int::to_string).collect();
    format!("({})", entries.join(","))
}

/// Five-row text raster: top labels, top legs, spine, bottom legs, bottom
/// labels. Column pitch adapts to the widest label; trailing spaces are
/// trimmed and there is no trailing newline.
pub fn render_ascii(seq: &VecSeq) -> String {
    let labels: Vec<String> = seq.terms().iter().map(|t| label(t)).collect();
    let maxw = labels.iter().map(String::len).max().unwrap_or(1);
    let pitch = (maxw + 1).max(5);
    let c0 = 3.max(maxw.saturating_sub(1) / 2);
    let centers: Vec<usize> = (0..labels.len()).map(|i| c0 + i * pitch).collect();
    let last = *centers.last().expect("at least one seed term");
    let width = last + 4 + maxw;

    let mut rows = vec![vec![' '; width]; 5];
    for x in c0 - 3..=last + 3 {
        rows[2][x] = '-';
    }
    for (i, &c) in centers.iter().enumerate() {
        rows[2][c] = 'o';
        let (leg_row, label_row) = if (i + 1) % 2 == 0 { (1, 0) } else { (3, 4) };
        rows[leg_row][c] = '|';
        let start = c - (labels[i].len() - 1) / 2;
        for (k, ch) in labels[i].chars().enumerate() {
            rows[label_row][start + k] = ch;
        }
    }
    rows.iter()
        .map(|r| r.iter().collect::<String>().trim_end().to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

/// SVG of the strip, entries stacked at the end of each leg, with one
/// caption line per recognised entry (`273 = F7*F8`) beyond the stack.
/// `annotations` is indexed like the terms (typically the `tags` of a
/// strip report); missing rows or `None` forms just get no caption.
pub fn render_svg(seq: &VecSeq, annotations: &[Vec<PatternTag>]) -> String {
    const PITCH: i64 = 110;
    const X0: i64 = 80;
    const LEG: i64 = 60;
    const LINE: i64 = 16;
    const PAD: i64 = 20;
    const GAP: i64 = 8;
    const ASCENT: i64 = 12;
    const DESCENT: i64 = 4;

    let n = seq.len() as i64;
    let dim = seq.dim() as i64;
    let width = 2 * X0 + PITCH * (n - 1);
    let spine_y = PAD + LEG + 2 * GAP + ASCENT + DESCENT + 2 * LINE * dim;
    let height = 2 * spine_y;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        out,
        "<line x1=\"40\" y1=\"{spine_y}\" x2=\"{}\" y2=\"{spine_y}\" \
         stroke=\"black\" stroke-width=\"2\"/>",
        width - 40
    );
    let _ = writeln!(
        out,
        "<g font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">"
    );
    for (i, term) in seq.terms().iter().enumerate() {
        let x = X0 + PITCH * i as i64;
        let up = (i + 1) % 2 == 0;
        let leg_end = if up { spine_y - LEG } else { spine_y + LEG };
        let _ = writeln!(
            out,
            "<line x1=\"{x}\" y1=\"{spine_y}\" x2=\"{x}\" y2=\"{leg_end}\" \
             stroke=\"black\" stroke-width=\"2\"/>"
        );
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{spine_y}\" r=\"4\"/>");
        for (r, entry) in term.iter().enumerate() {
            let r = r as i64;
            let y = if up {
                spine_y - LEG - GAP - DESCENT - LINE * (dim - 1 - r)
            } else {
                spine_y + LEG + GAP + ASCENT + LINE * r
            };
            let _ = writeln!(out, "<text x=\"{x}\" y=\"{y}\">{entry}</text>");
        }
        let Some(tags) = annotations.get(i) else {
            continue;
        };
        let mut c = 0;
        for tag in tags.iter().take(term.len()) {
            if tag.form.is_none() {
                continue;
            }
            let y = if up {
                spine_y - LEG - GAP - DESCENT - LINE * (dim - 1) - GAP - LINE * (c + 1)
            } else {
                spine_y + LEG + GAP + ASCENT + LINE * (dim - 1) + GAP + LINE * (c + 1)
            };
            let _ = writeln!(out, "<text x=\"{x}\" y=\"{y}\">{} = {}</text>", tag.value, tag.form);
            c += 1;
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
