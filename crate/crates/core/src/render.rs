//! Text pictures of diagrams: caps above the number line, cups below.

use crate::basis::BasisDiagram;
use crate::coeff::Coefficient;
use crate::diagram::{ArcDiagram, End, Polarity};
use crate::element::Element;

/// Rows of one half diagram, nearest the number line first.
fn band<P: Polarity>(d: &ArcDiagram<P>, open: char, close: char) -> Vec<String> {
    let n = d.len();
    let arcs = d.arcs();
    let mut height = vec![0usize; n];
    // Arcs sorted by length so inner arcs are measured first.
    let mut by_len = arcs.clone();
    by_len.sort_by_key(|&(i, j)| j - i);
    for &(i, j) in &by_len {
        let inner = (i + 1..j).map(|k| height[k]).max().unwrap_or(0);
        height[i] = inner + 1;
        height[j] = inner + 1;
    }
    let rows = height.iter().copied().max().unwrap_or(0).max(usize::from(d.ends().contains(&End::Ray)));
    let width = if n == 0 { 0 } else { 2 * n - 1 };
    let mut out = Vec::with_capacity(rows);
    for r in 1..=rows {
        let mut line = vec![' '; width];
        for (v, e) in d.ends().iter().enumerate() {
            match *e {
                End::Ray => line[2 * v] = '│',
                End::Arc(j) if j > v => {
                    let h = height[v];
                    if r < h {
                        line[2 * v] = '│';
                        line[2 * j] = '│';
                    } else if r == h {
                        line[2 * v] = open;
                        line[2 * j] = close;
                        for c in line.iter_mut().take(2 * j).skip(2 * v + 1) {
                            *c = '─';
                        }
                    }
                }
                _ => {}
            }
        }
        out.push(line.into_iter().collect::<String>().trim_end().to_string());
    }
    out
}

/// Header line with the text form, then caps, the weight, and cups.
pub fn render_diagram(x: &BasisDiagram) -> String {
    let mut lines = vec![x.to_string()];
    let mut caps = band(x.cap(), '┌', '┐');
    caps.reverse();
    lines.extend(caps);
    let labels: Vec<String> = x.weight().labels().iter().map(|l| l.to_string()).collect();
    lines.push(labels.join(" "));
    lines.extend(band(x.cup(), '└', '┘'));
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

/// Each term as its coefficient followed by the picture of its diagram.
pub fn render_element<C: Coefficient>(x: &Element<C>) -> String {
    if x.is_zero() {
        return "0\n".to_string();
    }
    let mut out = String::new();
    for (b, c) in x.terms() {
        if c.is_negative() {
            out.push_str(&format!("{c}·\n"));
        } else {
            out.push_str(&format!("+{c}·\n"));
        }
        out.push_str(&render_diagram(b));
    }
    out
}
