//! Drawings of webs: Graphviz DOT and a standalone SVG with the boundary on a horizontal line.

use std::fmt::Write;

use super::{VertexKind, Web};

/// Positions: boundary label `p` at `(p, 0)`; internal vertices at the mean depth of the faces
/// around them, spread horizontally by barycentric relaxation.
fn layout(w: &Web) -> Vec<(f64, f64)> {
    let nv = w.vertex_count();
    let faces = w.trace_faces();
    let depth = w.depths().map(|(_, d)| d).unwrap_or_else(|_| vec![Some(1); faces.count()]);
    let mut pos = vec![(0.0, 0.0); nv];
    let mut y = vec![0.0; nv];
    for v in w.boundary_count()..nv {
        let mut sum = 0.0;
        for &e in &w.rotation[v] {
            let d = if w.edges[e as usize].0 as usize == v { 2 * e } else { 2 * e + 1 };
            sum += depth[faces.face_of_dart[d as usize] as usize].unwrap_or(1) as f64;
        }
        y[v] = sum / 3.0 + 0.5;
    }
    let neighbours: Vec<Vec<usize>> =
        (0..nv).map(|v| w.rotation[v].iter().map(|&e| w.other_end(e, v as u32) as usize).collect()).collect();
    let centre = (w.boundary_count() as f64 + 1.0) / 2.0;
    for (v, p) in pos.iter_mut().enumerate() {
        *p = if v < w.boundary_count() { (v as f64 + 1.0, 0.0) } else { (centre, y[v]) };
    }
    for _ in 0..200 {
        for v in w.boundary_count()..nv {
            let x = neighbours[v].iter().map(|&u| pos[u].0).sum::<f64>() / neighbours[v].len() as f64;
            pos[v] = (x, y[v]);
        }
    }
    pos
}

pub fn to_dot(w: &Web) -> String {
    let pos = layout(w);
    let mut s = String::from("digraph web {\n  node [shape=circle, width=0.15, label=\"\"];\n");
    for (v, k) in w.kinds().iter().enumerate() {
        let (x, y) = pos[v];
        let attrs = match k {
            VertexKind::Boundary => format!("shape=plaintext, label=\"{}\"", v + 1),
            VertexKind::Source => "style=solid".to_string(),
            VertexKind::Sink => "style=filled, fillcolor=black".to_string(),
        };
        let _ = writeln!(s, "  v{v} [{attrs}, pos=\"{:.2},{:.2}!\"];", x, y);
    }
    for (a, b) in w.edges() {
        let _ = writeln!(s, "  v{a} -> v{b};");
    }
    s.push_str("}\n");
    s
}

pub fn to_svg(w: &Web) -> String {
    svg(w, false)
}

/// As [`to_svg`], with the depth of each face along the line written between boundary labels.
pub fn to_svg_with_depths(w: &Web) -> String {
    svg(w, true)
}

fn svg(w: &Web, depths: bool) -> String {
    let pos = layout(w);
    let scale = 60.0;
    let top = pos.iter().map(|p| p.1).fold(1.0, f64::max) + 0.5;
    let width = (w.boundary_count() as f64 + 1.0) * scale;
    let height = (top + 0.8) * scale;
    let at = |(x, y): (f64, f64)| (x * scale, (top - y) * scale);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    );
    s.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
    );
    let (_, ly) = at((0.0, 0.0));
    let _ = writeln!(s, "<line x1=\"0\" y1=\"{ly:.1}\" x2=\"{width:.1}\" y2=\"{ly:.1}\" stroke=\"#999\"/>");
    for (a, b) in w.edges() {
        let (x1, y1) = at(pos[a]);
        let (x2, y2) = at(pos[b]);
        // stop short of the head so the arrow stays visible
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let (x2, y2) = (x2 - dx / len * 6.0, y2 - dy / len * 6.0);
        let _ = writeln!(
            s,
            "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"black\" marker-end=\"url(#arrow)\"/>"
        );
    }
    for (v, k) in w.kinds().iter().enumerate() {
        let (x, y) = at(pos[v]);
        match k {
            VertexKind::Boundary => {
                let _ = writeln!(s, "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>", y + 20.0, v + 1);
            }
            VertexKind::Source => {
                let _ = writeln!(s, "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"5\" fill=\"white\" stroke=\"black\"/>");
            }
            VertexKind::Sink => {
                let _ = writeln!(s, "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"5\" fill=\"black\"/>");
            }
        }
    }
    if depths {
        for (k, d) in w.boundary_depths().unwrap_or_default().into_iter().enumerate() {
            let (x, y) = at((k as f64 + 0.5, 0.0));
            let _ = writeln!(s, "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\" fill=\"#666\" font-size=\"11\">{d}</text>", y - 6.0);
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drawings_mention_every_vertex() {
        let w = Web::tripod();
        let dot = to_dot(&w);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches(" -> ").count(), 3);
        let svg = to_svg(&w);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<text").count(), 3);
        // four faces meet the line: outside, two between the legs, outside again
        assert_eq!(to_svg_with_depths(&w).matches("<text").count(), 7);
    }
}
