//! Tableaux to webs through M-diagrams, and webs back to Yamanouchi words through depths.

use std::cmp::Ordering;

use super::{VertexKind, Web, WebError};
use crate::tableaux::{StandardTableau, Sym, TableauError, YamanouchiWord};

/// Arcs of the M-diagram of a `[n,n,n]` tableau, as pairs of boundary labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MDiagram {
    pub size: usize,
    /// `(i, j)` with `i` in the top row and `j` in the middle row.
    pub left_arcs: Vec<(usize, usize)>,
    /// `(j, k)` with `j` in the middle row and `k` in the bottom row.
    pub right_arcs: Vec<(usize, usize)>,
}

impl MDiagram {
    pub fn from_tableau(t: &StandardTableau) -> Result<Self, WebError> {
        let word = YamanouchiWord::from_tableau(t)?;
        let size = word.len();
        let row: Vec<usize> = word.symbols().iter().map(|s| s.row()).collect();
        let mut top_used = vec![false; size + 1];
        let mut left_arcs = Vec::new();
        for j in 1..=size {
            if row[j - 1] != 1 {
                continue;
            }
            let i = (1..j).rev().find(|&i| row[i - 1] == 0 && !top_used[i]).expect("Yamanouchi prefix condition");
            top_used[i] = true;
            left_arcs.push((i, j));
        }
        let mut mid_used = vec![false; size + 1];
        let mut right_arcs = Vec::new();
        for k in 1..=size {
            if row[k - 1] != 2 {
                continue;
            }
            let j = (1..k).rev().find(|&j| row[j - 1] == 1 && !mid_used[j]).expect("Yamanouchi prefix condition");
            mid_used[j] = true;
            right_arcs.push((j, k));
        }
        Ok(Self { size, left_arcs, right_arcs })
    }
}

/// x-coordinate of the crossing of semicircles over `(a, b)` and `(c, d)`, `a < c < b < d`,
/// as a fraction with positive denominator.
fn crossing_x(a: usize, b: usize, c: usize, d: usize) -> (i64, i64) {
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    (c * d - a * b, c + d - a - b)
}

fn cmp_frac(x: (i64, i64), y: (i64, i64)) -> Ordering {
    (x.0 * y.1).cmp(&(y.0 * x.1))
}

/// The reduced web of a `[n,n,n]` tableau.
///
/// Each middle label becomes a sink fed by its two arcs. Each crossing of a left arc with
/// a right arc becomes a sink–source pair, the sink taking the two incoming strands.
pub fn tableau_to_web(t: &StandardTableau) -> Result<Web, WebError> {
    let m = MDiagram::from_tableau(t)?;
    let b = m.size;
    struct Crossing {
        x: (i64, i64),
        case_a: bool,
        s: u32,
        t: u32,
        l_in: u32,
        l_out: u32,
        r_in: u32,
        r_out: u32,
        link: u32,
    }
    let mut kinds = vec![VertexKind::Boundary; b];
    let mut sink_of = vec![u32::MAX; b + 1];
    for &(_, j) in &m.left_arcs {
        sink_of[j] = kinds.len() as u32;
        kinds.push(VertexKind::Sink);
    }
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut on_left: Vec<Vec<usize>> = vec![Vec::new(); m.left_arcs.len()];
    let mut on_right: Vec<Vec<usize>> = vec![Vec::new(); m.right_arcs.len()];
    for (li, &(i, j)) in m.left_arcs.iter().enumerate() {
        for (ri, &(jp, kp)) in m.right_arcs.iter().enumerate() {
            let (x, case_a) = if i < jp && jp < j && j < kp {
                (crossing_x(i, j, jp, kp), true)
            } else if jp < i && i < kp && kp < j {
                (crossing_x(jp, kp, i, j), false)
            } else {
                continue;
            };
            let s = kinds.len() as u32;
            kinds.push(VertexKind::Sink);
            kinds.push(VertexKind::Source);
            on_left[li].push(crossings.len());
            on_right[ri].push(crossings.len());
            crossings.push(Crossing { x, case_a, s, t: s + 1, l_in: 0, l_out: 0, r_in: 0, r_out: 0, link: 0 });
        }
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let add = |edges: &mut Vec<(u32, u32)>, a: u32, h: u32| {
        edges.push((a, h));
        edges.len() as u32 - 1
    };
    let mut rotation: Vec<Vec<u32>> = vec![Vec::new(); kinds.len()];
    // stubs of middle labels
    let mut sink_rot: Vec<[u32; 3]> = vec![[0; 3]; b + 1];
    for &(_, j) in &m.left_arcs {
        let e = add(&mut edges, j as u32 - 1, sink_of[j]);
        rotation[j - 1].push(e);
        sink_rot[j][0] = e;
    }
    for c in crossings.iter_mut() {
        c.link = add(&mut edges, c.t, c.s);
    }
    for (li, &(i, j)) in m.left_arcs.iter().enumerate() {
        let mut order = on_left[li].clone();
        order.sort_by(|&p, &q| cmp_frac(crossings[p].x, crossings[q].x));
        let mut tail = i as u32 - 1;
        let mut prev: Option<usize> = None;
        for &ci in &order {
            let e = add(&mut edges, tail, crossings[ci].s);
            if let Some(p) = prev {
                crossings[p].l_out = e;
            } else {
                rotation[i - 1].push(e);
            }
            crossings[ci].l_in = e;
            tail = crossings[ci].t;
            prev = Some(ci);
        }
        let e = add(&mut edges, tail, sink_of[j]);
        match prev {
            Some(p) => crossings[p].l_out = e,
            None => rotation[i - 1].push(e),
        }
        sink_rot[j][2] = e;
    }
    for (ri, &(jp, kp)) in m.right_arcs.iter().enumerate() {
        let mut order = on_right[ri].clone();
        order.sort_by(|&p, &q| cmp_frac(crossings[q].x, crossings[p].x));
        let mut tail = kp as u32 - 1;
        let mut prev: Option<usize> = None;
        for &ci in &order {
            let e = add(&mut edges, tail, crossings[ci].s);
            if let Some(p) = prev {
                crossings[p].r_out = e;
            } else {
                rotation[kp - 1].push(e);
            }
            crossings[ci].r_in = e;
            tail = crossings[ci].t;
            prev = Some(ci);
        }
        let e = add(&mut edges, tail, sink_of[jp]);
        match prev {
            Some(p) => crossings[p].r_out = e,
            None => rotation[kp - 1].push(e),
        }
        sink_rot[jp][1] = e;
    }
    for &(_, j) in &m.left_arcs {
        rotation[sink_of[j] as usize] = sink_rot[j].to_vec();
    }
    for c in &crossings {
        if c.case_a {
            rotation[c.s as usize] = vec![c.r_in, c.l_in, c.link];
            rotation[c.t as usize] = vec![c.r_out, c.l_out, c.link];
        } else {
            rotation[c.s as usize] = vec![c.l_in, c.r_in, c.link];
            rotation[c.t as usize] = vec![c.l_out, c.r_out, c.link];
        }
    }
    Ok(Web::from_parts_unchecked(b, kinds, edges, rotation))
}

/// Reads the word of a reduced web from the depths of the faces along the line: the
/// letter at `p` is `+`, `0` or `-` as the depth rises, stays level or falls across `p`.
pub fn web_to_yamanouchi(w: &Web) -> Result<YamanouchiWord, WebError> {
    if !w.is_reduced() {
        return Err(WebError::NotReduced);
    }
    let d = w.boundary_depths()?;
    let symbols = d
        .windows(2)
        .map(|p| match p[1].cmp(&p[0]) {
            Ordering::Greater => Sym::Plus,
            Ordering::Equal => Sym::Zero,
            Ordering::Less => Sym::Minus,
        })
        .collect();
    YamanouchiWord::new(symbols).map_err(|e| match e {
        TableauError::BadWord(s) => WebError::Invalid(format!("depth word {s} is not Yamanouchi")),
        other => other.into(),
    })
}

pub fn web_to_tableau(w: &Web) -> Result<StandardTableau, WebError> {
    Ok(web_to_yamanouchi(w)?.to_tableau())
}

/// All reduced webs with `3n` boundary vertices, in the order of
/// [`StandardTableau::all_of_shape`].
pub fn all_reduced_webs(n: usize) -> Vec<(StandardTableau, Web)> {
    StandardTableau::all_of_shape(&[n, n, n])
        .into_iter()
        .map(|t| {
            let w = tableau_to_web(&t).expect("three equal rows");
            (t, w)
        })
        .collect()
}
