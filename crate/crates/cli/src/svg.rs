//! Best-effort pictures. Layouts are for looking at, not for comparing.

use std::fmt::Write as _;

use topoglyph_core::arrangements::{DualMap, DualVertex};
use topoglyph_core::Label;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 24.0;

struct Canvas(String);

impl Canvas {
    fn new() -> Canvas {
        Canvas(format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
        ))
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64)) {
        let _ = writeln!(
            self.0,
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333\" stroke-width=\"1.5\"/>",
            a.0, a.1, b.0, b.1
        );
    }

    fn dot(&mut self, p: (f64, f64), fill: &str, label: &str) {
        let _ = writeln!(self.0, "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"{fill}\"/>", p.0, p.1);
        if !label.is_empty() {
            let _ = writeln!(
                self.0,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" font-family=\"sans-serif\">{label}</text>",
                p.0 + 7.0,
                p.1 - 7.0
            );
        }
    }

    fn finish(mut self) -> String {
        self.0.push_str("</svg>\n");
        self.0
    }
}

/// Tutte embedding: outer vertices on a circle, the rest at the average of
/// their neighbours.
pub fn dual(map: &DualMap) -> String {
    let n = map.vertices.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &map.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let center = SIZE / 2.0;
    let radius = SIZE / 2.0 - MARGIN;
    let mut pos = vec![(center, center); n];
    let mut fixed = vec![false; n];
    let outer = &map.outer.vertices;
    for (i, &v) in outer.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / outer.len().max(1) as f64;
        pos[v] = (center + radius * t.cos(), center + radius * t.sin());
        fixed[v] = true;
    }
    for _ in 0..500 {
        for v in 0..n {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let k = adj[v].len() as f64;
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |s, &w| (s.0 + pos[w].0, s.1 + pos[w].1));
            pos[v] = (sx / k, sy / k);
        }
    }
    let mut c = Canvas::new();
    for &(a, b) in &map.edges {
        c.line(pos[a], pos[b]);
    }
    for (v, kind) in map.vertices.iter().enumerate() {
        match kind {
            DualVertex::Arc { index } => c.dot(pos[v], "#c0392b", &index.to_string()),
            DualVertex::Cell { .. } => c.dot(pos[v], "#2c3e50", ""),
        }
    }
    c.finish()
}

/// Straight-line drawing of vertices `1..=n` at `points`.
pub fn straight_line(points: &[(f64, f64)], edges: &[[Label; 2]]) -> String {
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &(x, y) in points {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(f64::EPSILON);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let at = |v: Label| {
        let (x, y) = points[v as usize - 1];
        (MARGIN + (x - lo.0) * scale, SIZE - MARGIN - (y - lo.1) * scale)
    };
    let mut c = Canvas::new();
    for &[u, w] in edges {
        c.line(at(u), at(w));
    }
    for v in 1..=points.len() as Label {
        c.dot(at(v), "#2c3e50", &v.to_string());
    }
    c.finish()
}
