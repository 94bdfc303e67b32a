//! `sl_3` webs on a line of source boundary vertices, stored as rotation systems.
//!
//! Boundary vertices are `0..3n` (labels `1..=3n` left to right) and each is a source with
//! one edge. Internal vertices are trivalent sources or sinks. Every edge is stored
//! tail→head, from a source side to a sink. `rotation[v]` lists the edges at `v` in
//! counterclockwise order, with the web drawn in the upper half-plane.

mod kk;
mod render;
mod search;
mod skein;

pub use kk::{all_reduced_webs, tableau_to_web, web_to_tableau, web_to_yamanouchi, MDiagram};
pub use render::{to_dot, to_svg, to_svg_with_depths};
pub use search::{find_negative_coefficients, NegativeTerm, SearchOptions};
pub use skein::{
    apply_generator, apply_word, f_web, generator_matrix, reduce, reduce_with, tau_web, Hecke, QuantumBraid,
    ReductionOrder, Skein, Symmetric, WebSum,
};

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tableaux::TableauError;

const FORMAT_HEADER: &str = "tauweb-web 1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WebError {
    #[error("invalid web: {0}")]
    Invalid(String),
    #[error("web is not reduced")]
    NotReduced,
    #[error("web has a component not attached to the boundary")]
    ClosedComponent,
    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("generators s_{0} and s_{1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("web is not in D_{{{i},{j}}}")]
    NotInDomain { i: usize, j: usize },
    #[error("expected exactly one reduced term in D_{{{j},{i}}} with coefficient 1, found {found}")]
    NotUnique { i: usize, j: usize, found: usize },
    #[error("cannot parse web: {0}")]
    Parse(String),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Boundary,
    Source,
    Sink,
}

impl VertexKind {
    fn name(self) -> &'static str {
        match self {
            VertexKind::Boundary => "boundary",
            VertexKind::Source => "source",
            VertexKind::Sink => "sink",
        }
    }
}

/// A web as a combinatorial map.
#[derive(Clone, PartialEq, Eq)]
pub struct Web {
    boundary: usize,
    kinds: Vec<VertexKind>,
    edges: Vec<(u32, u32)>,
    rotation: Vec<Vec<u32>>,
}

/// Faces of a web, traced on the graph augmented by the boundary line.
///
/// Darts are `2e` (tail→head) and `2e+1` (head→tail); edges `>= edge_count` are the
/// virtual line segments and the closing edge under the line.
#[derive(Clone, Debug)]
pub struct Faces {
    pub face_of_dart: Vec<u32>,
    pub cycles: Vec<Vec<u32>>,
    /// Face above the line outside the web, when the web has a boundary.
    pub infinite: Option<u32>,
    /// Face below the line.
    pub lower: Option<u32>,
    /// `segment[p]` is the face directly above the line segment from label `p+1` to `p+2`.
    pub segment: Vec<u32>,
    /// Whether a face is bounded by web edges only.
    pub internal: Vec<bool>,
    edge_count: usize,
}

impl Faces {
    pub fn count(&self) -> usize {
        self.cycles.len()
    }
}

impl Web {
    /// Builds and validates a web.
    pub fn new(
        boundary: usize,
        kinds: Vec<VertexKind>,
        edges: Vec<(usize, usize)>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self, WebError> {
        let w = Self {
            boundary,
            kinds,
            edges: edges.into_iter().map(|(a, b)| (a as u32, b as u32)).collect(),
            rotation: rotation.into_iter().map(|r| r.into_iter().map(|e| e as u32).collect()).collect(),
        };
        w.validate()?;
        Ok(w)
    }

    pub(crate) fn from_parts_unchecked(
        boundary: usize,
        kinds: Vec<VertexKind>,
        edges: Vec<(u32, u32)>,
        rotation: Vec<Vec<u32>>,
    ) -> Self {
        let w = Self { boundary, kinds, edges, rotation };
        debug_assert_eq!(w.validate(), Ok(()));
        w
    }

    /// The web with no vertices.
    pub fn empty() -> Self {
        Self { boundary: 0, kinds: Vec::new(), edges: Vec::new(), rotation: Vec::new() }
    }

    /// A single internal sink joined to boundary vertices 1, 2, 3.
    pub fn tripod() -> Self {
        Self::from_parts_unchecked(
            3,
            vec![VertexKind::Boundary, VertexKind::Boundary, VertexKind::Boundary, VertexKind::Sink],
            vec![(0, 3), (1, 3), (2, 3)],
            vec![vec![0], vec![1], vec![2], vec![0, 1, 2]],
        )
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    /// Edges as `(tail, head)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b)| (a as usize, b as usize)).collect()
    }

    pub fn rotation(&self, v: usize) -> Vec<usize> {
        self.rotation[v].iter().map(|&e| e as usize).collect()
    }

    /// The internal vertex (or boundary vertex) at the far end of boundary label `p`'s edge.
    pub fn boundary_neighbor(&self, p: usize) -> usize {
        let e = self.rotation[p - 1][0];
        self.edges[e as usize].1 as usize
    }

    fn other_end(&self, e: u32, v: u32) -> u32 {
        let (a, b) = self.edges[e as usize];
        if a == v {
            b
        } else {
            a
        }
    }

    /// The double-Y smoothing of a crossing inserted between labels `i` and `i+1`.
    pub fn double_y(&self, i: usize) -> Result<Web, WebError> {
        if i == 0 || i >= self.boundary {
            return Err(WebError::IndexOutOfRange { index: i, max: self.boundary.saturating_sub(1) });
        }
        Ok(skein::insert_h(self, i))
    }

    pub fn validate(&self) -> Result<(), WebError> {
        let bad = |m: String| Err(WebError::Invalid(m));
        let nv = self.kinds.len();
        if self.rotation.len() != nv || self.boundary > nv {
            return bad("vertex tables have inconsistent lengths".into());
        }
        for (v, k) in self.kinds.iter().enumerate() {
            if (v < self.boundary) != (*k == VertexKind::Boundary) {
                return bad(format!("vertex {v} has kind {k:?}"));
            }
        }
        let mut seen = vec![0u8; self.edges.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a as usize >= nv || b as usize >= nv {
                return bad(format!("edge {e} has an endpoint out of range"));
            }
            if self.kinds[a as usize] == VertexKind::Sink || self.kinds[b as usize] != VertexKind::Sink {
                return bad(format!("edge {e} is not oriented from a source to a sink"));
            }
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let want = if self.kinds[v] == VertexKind::Boundary { 1 } else { 3 };
            if rot.len() != want {
                return bad(format!("vertex {v} has degree {}", rot.len()));
            }
            for &e in rot {
                let Some(&(a, b)) = self.edges.get(e as usize) else {
                    return bad(format!("vertex {v} lists unknown edge {e}"));
                };
                if a as usize != v && b as usize != v {
                    return bad(format!("vertex {v} lists edge {e} that does not touch it"));
                }
                seen[e as usize] += 1;
            }
        }
        if let Some(e) = seen.iter().position(|&c| c != 2) {
            return bad(format!("edge {e} appears {} times in rotations", seen[e]));
        }
        // genus zero: V - E + F = 2 per component of the augmented graph
        let faces = self.trace_faces();
        let comps = self.augmented_components();
        let virt = if self.boundary > 0 { self.boundary } else { 0 };
        let euler = nv as i64 - (self.edges.len() + virt) as i64 + faces.count() as i64;
        if euler != 2 * comps as i64 {
            return bad(format!("rotation system is not planar (Euler characteristic {euler}, {comps} components)"));
        }
        Ok(())
    }

    fn augmented_components(&self) -> usize {
        let nv = self.kinds.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let nx = p[x];
                p[x] = r;
                x = nx;
            }
            r
        }
        let mut unions = self.edges.iter().map(|&(a, b)| (a as usize, b as usize)).collect::<Vec<_>>();
        for p in 1..self.boundary {
            unions.push((p - 1, p));
        }
        for (a, b) in unions {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..nv).filter(|&v| find(&mut parent, v) == v).count()
    }

    /// Connected components (of the web graph alone) as vertex lists, and whether each
    /// touches the boundary.
    pub(crate) fn components(&self) -> Vec<(Vec<u32>, bool)> {
        let nv = self.kinds.len();
        let mut comp = vec![u32::MAX; nv];
        let mut out = Vec::new();
        for s in 0..nv {
            if comp[s] != u32::MAX {
                continue;
            }
            let id = out.len() as u32;
            let mut members = vec![s as u32];
            comp[s] = id;
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                for &e in &self.rotation[v as usize] {
                    let o = self.other_end(e, v);
                    if comp[o as usize] == u32::MAX {
                        comp[o as usize] = id;
                        members.push(o);
                    }
                }
                k += 1;
            }
            let attached = members.iter().any(|&v| (v as usize) < self.boundary);
            members.sort_unstable();
            out.push((members, attached));
        }
        out
    }

    pub fn has_closed_component(&self) -> bool {
        self.components().iter().any(|(_, attached)| !attached)
    }

    /// Rotation lists including the virtual line edges.
    fn augmented_rotation(&self) -> (Vec<Vec<u32>>, Vec<(u32, u32)>) {
        let mut ends = self.edges.clone();
        let mut rot = self.rotation.clone();
        let b = self.boundary;
        if b == 0 {
            return (rot, ends);
        }
        let ne = self.edges.len() as u32;
        for p in 0..b.saturating_sub(1) {
            ends.push((p as u32, p as u32 + 1));
        }
        let closing = ne + b as u32 - 1;
        ends.push((b as u32 - 1, 0));
        for p in 0..b {
            let web = self.rotation[p][0];
            let right = if p + 1 < b { ne + p as u32 } else { closing };
            let left = if p > 0 { ne + p as u32 - 1 } else { closing };
            rot[p] = vec![right, web, left];
        }
        (rot, ends)
    }

    /// Traces the faces of the augmented rotation system, keeping each face on the left.
    pub fn trace_faces(&self) -> Faces {
        let (rot, ends) = self.augmented_rotation();
        let nd = 2 * ends.len();
        let next = |d: usize| -> usize {
            let e = d / 2;
            let v = if d % 2 == 0 { ends[e].1 } else { ends[e].0 };
            let r = &rot[v as usize];
            let pos = r.iter().position(|&x| x as usize == e).expect("edge in rotation");
            let e2 = r[(pos + r.len() - 1) % r.len()] as usize;
            if ends[e2].0 == v {
                2 * e2
            } else {
                2 * e2 + 1
            }
        };
        let mut face_of_dart = vec![u32::MAX; nd];
        let mut cycles = Vec::new();
        for d in 0..nd {
            if face_of_dart[d] != u32::MAX {
                continue;
            }
            let f = cycles.len() as u32;
            let mut cyc = Vec::new();
            let mut cur = d;
            loop {
                face_of_dart[cur] = f;
                cyc.push(cur as u32);
                cur = next(cur);
                if cur == d {
                    break;
                }
            }
            cycles.push(cyc);
        }
        let ne = self.edges.len();
        let b = self.boundary;
        let (infinite, lower, segment) = if b == 0 {
            (None, None, Vec::new())
        } else {
            let closing = ne + b - 1;
            let infinite = face_of_dart[2 * closing];
            let lower = face_of_dart[2 * closing + 1];
            let segment = (0..b - 1).map(|p| face_of_dart[2 * (ne + p)]).collect();
            (Some(infinite), Some(lower), segment)
        };
        let internal = cycles.iter().map(|c| c.iter().all(|&d| (d as usize) / 2 < ne)).collect();
        Faces { face_of_dart, cycles, infinite, lower, segment, internal, edge_count: ne }
    }

    /// Face depths: the least number of web edges crossed to reach the face from the
    /// infinite face. The face below the line gets `None`.
    pub fn depths(&self) -> Result<(Faces, Vec<Option<u32>>), WebError> {
        let faces = self.trace_faces();
        if self.boundary == 0 {
            if self.kinds.is_empty() {
                return Ok((faces, vec![Some(0)]));
            }
            return Err(WebError::ClosedComponent);
        }
        if self.has_closed_component() {
            return Err(WebError::ClosedComponent);
        }
        let depth = dual_bfs(&faces, faces.infinite.expect("boundary present"));
        Ok((faces, depth))
    }

    /// Depths of the faces directly above the line, from left of label 1 to right of label
    /// `3n` (so `3n + 1` values, both ends 0).
    pub fn boundary_depths(&self) -> Result<Vec<u32>, WebError> {
        let (faces, depth) = self.depths()?;
        if self.boundary == 0 {
            return Ok(vec![0]);
        }
        let mut out = vec![0];
        for &f in &faces.segment {
            out.push(depth[f as usize].expect("segment faces are reachable"));
        }
        out.push(0);
        Ok(out)
    }

    /// No closed component and no internal bigon or square face.
    pub fn is_reduced(&self) -> bool {
        if self.boundary == 0 {
            return self.kinds.is_empty();
        }
        if self.has_closed_component() {
            return false;
        }
        let faces = self.trace_faces();
        !faces.cycles.iter().zip(&faces.internal).any(|(c, &int)| int && c.len() <= 4)
    }

    /// Canonical key: equal exactly for webs isomorphic as boundary-anchored embedded graphs.
    ///
    /// Attached components are read by breadth-first traversal from the boundary in label
    /// order, reading each rotation from the edge of first arrival. Each closed component is
    /// encoded by its least traversal over all starting darts; the sorted list of these codes
    /// is appended, so the placement of closed components inside faces is not recorded.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut code: Vec<u32> = vec![self.boundary as u32];
        let starts: Vec<(u32, u32)> = (0..self.boundary).map(|p| (p as u32, self.rotation[p][0])).collect();
        let mut visited = vec![false; self.kinds.len()];
        self.traverse(&starts, &mut visited, &mut code);
        let mut closed: Vec<Vec<u32>> = Vec::new();
        for (members, attached) in self.components() {
            if attached {
                continue;
            }
            let mut best: Option<Vec<u32>> = None;
            for &v in &members {
                for &e in &self.rotation[v as usize] {
                    let mut vis = visited.clone();
                    let mut c = Vec::new();
                    self.traverse(&[(v, e)], &mut vis, &mut c);
                    if best.as_ref().is_none_or(|b| c < *b) {
                        best = Some(c);
                    }
                }
            }
            closed.push(best.expect("closed component has a vertex"));
        }
        closed.sort();
        for c in closed {
            code.push(u32::MAX);
            code.extend(c);
        }
        code.iter().flat_map(|x| x.to_le_bytes()).collect()
    }

    fn traverse(&self, starts: &[(u32, u32)], visited: &mut [bool], code: &mut Vec<u32>) {
        let mut label = vec![u32::MAX; self.edges.len()];
        let mut next_label = 0u32;
        let mut queue: VecDeque<(u32, u32)> = VecDeque::new();
        for &(v, e) in starts {
            visited[v as usize] = true;
            queue.push_back((v, e));
        }
        while let Some((v, entry)) = queue.pop_front() {
            let rot = &self.rotation[v as usize];
            let start = rot.iter().position(|&e| e == entry).expect("entry edge at vertex");
            code.push(self.kinds[v as usize] as u32);
            for k in 0..rot.len() {
                let e = rot[(start + k) % rot.len()];
                if label[e as usize] == u32::MAX {
                    label[e as usize] = next_label;
                    next_label += 1;
                    let o = self.other_end(e, v);
                    if !visited[o as usize] {
                        visited[o as usize] = true;
                        queue.push_back((o, e));
                    }
                }
                code.push(label[e as usize]);
            }
        }
    }

    /// Versioned text form: header, `boundary <3n>`, one `vertex` line per vertex with its
    /// counterclockwise edge list, then one `edge <id> <tail> <head>` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{FORMAT_HEADER}\nboundary {}\n", self.boundary);
        for (v, k) in self.kinds.iter().enumerate() {
            let rot: Vec<String> = self.rotation[v].iter().map(u32::to_string).collect();
            out.push_str(&format!("vertex {v} {} {}\n", k.name(), rot.join(" ")));
        }
        for (e, (a, b)) in self.edges.iter().enumerate() {
            out.push_str(&format!("edge {e} {a} {b}\n"));
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self, WebError> {
        let bad = |m: &str| WebError::Parse(m.to_string());
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some(FORMAT_HEADER) {
            return Err(bad("missing or unsupported header"));
        }
        let boundary: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("boundary "))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| bad("missing boundary line"))?;
        let mut kinds = Vec::new();
        let mut rotation = Vec::new();
        let mut edges = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |k: usize| -> Result<usize, WebError> {
                fields.get(k).and_then(|t| t.parse().ok()).ok_or_else(|| bad(line))
            };
            match fields[0] {
                "vertex" => {
                    if num(1)? != kinds.len() {
                        return Err(bad(line));
                    }
                    let kind = match fields.get(2) {
                        Some(&"boundary") => VertexKind::Boundary,
                        Some(&"source") => VertexKind::Source,
                        Some(&"sink") => VertexKind::Sink,
                        _ => return Err(bad(line)),
                    };
                    kinds.push(kind);
                    rotation.push((3..fields.len()).map(num).collect::<Result<Vec<_>, _>>()?);
                }
                "edge" => {
                    if num(1)? != edges.len() || fields.len() != 4 {
                        return Err(bad(line));
                    }
                    edges.push((num(2)?, num(3)?));
                }
                _ => return Err(bad(line)),
            }
        }
        Web::new(boundary, kinds, edges, rotation)
    }
}

/// Breadth-first search in the dual graph, crossing web edges only.
fn dual_bfs(faces: &Faces, root: u32) -> Vec<Option<u32>> {
    let nf = faces.count();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nf];
    for e in 0..faces.edge_count {
        let (a, b) = (faces.face_of_dart[2 * e], faces.face_of_dart[2 * e + 1]);
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut depth = vec![None; nf];
    depth[root as usize] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let d = depth[f as usize].expect("queued faces have depth");
        for &g in &adj[f as usize] {
            if depth[g as usize].is_none() {
                depth[g as usize] = Some(d + 1);
                queue.push_back(g);
            }
        }
    }
    depth
}

impl fmt::Debug for Web {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Web(boundary={}, vertices={}, edges={})", self.boundary, self.kinds.len(), self.edges.len())
    }
}

impl FromStr for Web {
    type Err = WebError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Web::from_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tripod_faces_and_depths() {
        let t = Web::tripod();
        let (faces, depth) = t.depths().unwrap();
        // infinite, two faces between legs, and the face below the line
        assert_eq!(faces.count(), 4);
        let inf = faces.infinite.unwrap();
        assert_eq!(depth[inf as usize], Some(0));
        assert_eq!(depth[faces.lower.unwrap() as usize], None);
        let seg: Vec<_> = faces.segment.iter().map(|&f| depth[f as usize]).collect();
        assert_eq!(seg, vec![Some(1), Some(1)]);
        assert_eq!(t.boundary_depths().unwrap(), vec![0, 1, 1, 0]);
        assert!(t.is_reduced());
    }

    #[test]
    fn empty_web_has_one_face() {
        let e = Web::empty();
        let (faces, depth) = e.depths().unwrap();
        assert!(faces.count() == 0 || faces.count() == 1);
        assert_eq!(depth, vec![Some(0)]);
        assert!(e.is_reduced());
        assert_eq!(e.boundary_depths().unwrap(), vec![0]);
    }

    #[test]
    fn validation_rejects_bad_input() {
        let k = vec![VertexKind::Boundary, VertexKind::Boundary, VertexKind::Boundary, VertexKind::Sink];
        // reversed edge
        assert!(Web::new(3, k.clone(), vec![(3, 0), (1, 3), (2, 3)], vec![vec![0], vec![1], vec![2], vec![0, 2, 1]])
            .is_err());
        // rotation that is not planar with the boundary line: clockwise order at the sink
        assert!(Web::new(3, k.clone(), vec![(0, 3), (1, 3), (2, 3)], vec![vec![0], vec![1], vec![2], vec![0, 2, 1]])
            .is_err());
        assert!(Web::new(3, k, vec![(0, 3), (1, 3), (2, 3)], vec![vec![0], vec![1], vec![2], vec![0, 1, 2]]).is_ok());
    }

    #[test]
    fn relabelled_tripods_share_a_key() {
        let a = Web::tripod();
        // same web with edges listed in a different order and the rotation started elsewhere
        let k = vec![VertexKind::Boundary, VertexKind::Boundary, VertexKind::Boundary, VertexKind::Sink];
        let b = Web::new(3, k, vec![(2, 3), (0, 3), (1, 3)], vec![vec![1], vec![2], vec![0], vec![2, 0, 1]]).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn text_round_trip() {
        let t = Web::tripod();
        let s = t.to_text();
        assert_eq!(Web::from_text(&s).unwrap(), t);
        assert_eq!(Web::from_text(&s).unwrap().to_text(), s);
        assert!(Web::from_text("tauweb-web 1\nboundary 3\n").is_err());
        assert!(Web::from_text("nonsense").is_err());
    }
}
