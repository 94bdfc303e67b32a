//! Skein reduction and the braid generator action on formal sums of webs.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use super::{dual_bfs, kk, VertexKind, Web, WebError};
use crate::laurent::LaurentPoly;
use crate::symgroup::TauSet;

/// Coefficient ring and local relations.
pub trait Skein {
    type C: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;
    fn zero() -> Self::C;
    fn one() -> Self::C;
    fn add(a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(a: &Self::C, b: &Self::C) -> Self::C;
    fn is_zero(a: &Self::C) -> bool;
    /// Value of a closed loop.
    fn circle() -> Self::C;
    /// Factor picked up when a bigon collapses to an edge.
    fn bigon() -> Self::C;
    /// Coefficients of the identity smoothing and of the `H` smoothing of a generator.
    fn crossing() -> (Self::C, Self::C);
}

/// The symmetric group action: crossings at `q = -1`, loop 3, bigon -2.
#[derive(Clone, Copy, Debug)]
pub struct Symmetric;

/// The Hecke algebra action in `v`: `T_i = v + v^{1/2} H`, loop `v^{-1} + 1 + v`,
/// bigon `-(v^{1/2} + v^{-1/2})`.
#[derive(Clone, Copy, Debug)]
pub struct Hecke;

/// The braid action in `q`, stored as a Laurent polynomial whose variable stands for `q`:
/// crossing `q^2 - q^3 H`, loop `q^2 + 1 + q^{-2}`, bigon `q + q^{-1}`.
#[derive(Clone, Copy, Debug)]
pub struct QuantumBraid;

impl Skein for Symmetric {
    type C = i64;
    fn zero() -> i64 {
        0
    }
    fn one() -> i64 {
        1
    }
    fn add(a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn mul(a: &i64, b: &i64) -> i64 {
        a * b
    }
    fn is_zero(a: &i64) -> bool {
        *a == 0
    }
    fn circle() -> i64 {
        3
    }
    fn bigon() -> i64 {
        -2
    }
    fn crossing() -> (i64, i64) {
        (1, 1)
    }
}

macro_rules! laurent_ring {
    () => {
        type C = LaurentPoly;
        fn zero() -> LaurentPoly {
            LaurentPoly::zero()
        }
        fn one() -> LaurentPoly {
            LaurentPoly::one()
        }
        fn add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
            a + b
        }
        fn mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
            a * b
        }
        fn is_zero(a: &LaurentPoly) -> bool {
            a.is_zero()
        }
    };
}

impl Skein for Hecke {
    laurent_ring!();
    fn circle() -> LaurentPoly {
        LaurentPoly::from_terms([(-2, 1), (0, 1), (2, 1)])
    }
    fn bigon() -> LaurentPoly {
        LaurentPoly::from_terms([(-1, -1), (1, -1)])
    }
    fn crossing() -> (LaurentPoly, LaurentPoly) {
        (LaurentPoly::var(), LaurentPoly::sqrt_var())
    }
}

impl Skein for QuantumBraid {
    laurent_ring!();
    fn circle() -> LaurentPoly {
        LaurentPoly::from_terms([(-4, 1), (0, 1), (4, 1)])
    }
    fn bigon() -> LaurentPoly {
        LaurentPoly::from_terms([(-2, 1), (2, 1)])
    }
    fn crossing() -> (LaurentPoly, LaurentPoly) {
        (LaurentPoly::monomial(1, 4), LaurentPoly::monomial(-1, 6))
    }
}

/// A formal linear combination of webs with the same boundary, keyed canonically.
pub struct WebSum<S: Skein> {
    boundary: usize,
    terms: BTreeMap<Vec<u8>, (Web, S::C)>,
    _ring: PhantomData<S>,
}

impl<S: Skein> Clone for WebSum<S> {
    fn clone(&self) -> Self {
        Self { boundary: self.boundary, terms: self.terms.clone(), _ring: PhantomData }
    }
}

impl<S: Skein> fmt::Debug for WebSum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.values().map(|(w, c)| (c, w))).finish()
    }
}

impl<S: Skein> WebSum<S> {
    pub fn zero(boundary: usize) -> Self {
        Self { boundary, terms: BTreeMap::new(), _ring: PhantomData }
    }

    pub fn from_web(w: Web) -> Self {
        let mut s = Self::zero(w.boundary_count());
        s.add_term(w, S::one());
        s
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary
    }

    pub fn add_term(&mut self, w: Web, c: S::C) {
        assert_eq!(w.boundary_count(), self.boundary, "webs in a sum share their boundary");
        if S::is_zero(&c) {
            return;
        }
        let key = w.canonical_key();
        match self.terms.get_mut(&key) {
            Some((_, old)) => {
                let sum = S::add(old, &c);
                if S::is_zero(&sum) {
                    self.terms.remove(&key);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(key, (w, c));
            }
        }
    }

    pub fn add(&mut self, other: &WebSum<S>) {
        for (w, c) in other.terms.values() {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scale(&self, k: &S::C) -> Self {
        let mut out = Self::zero(self.boundary);
        for (w, c) in self.terms.values() {
            out.add_term(w.clone(), S::mul(c, k));
        }
        out
    }

    /// Terms in canonical-key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Web, &S::C)> {
        self.terms.values().map(|(w, c)| (w, c))
    }

    pub fn coeff(&self, w: &Web) -> S::C {
        self.terms.get(&w.canonical_key()).map_or_else(S::zero, |(_, c)| c.clone())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Skein> PartialEq for WebSum<S> {
    fn eq(&self, other: &Self) -> bool {
        self.boundary == other.boundary
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(k, (_, c))| other.terms.get(k).is_some_and(|(_, d)| d == c))
    }
}

/// Order in which local relations are applied. Loops and closed components always go first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReductionOrder {
    /// Bigons before squares, deepest face first, ties to the lowest vertex id.
    #[default]
    Innermost,
    /// Bigons before squares, shallowest face first.
    Outermost,
    /// Any bigon or square, chosen by a deterministic hash of the seed and step.
    Scrambled(u64),
}

/// Mutable web with tombstones, compacted back into a [`Web`].
struct Draft {
    boundary: usize,
    kinds: Vec<Option<VertexKind>>,
    edges: Vec<Option<(u32, u32)>>,
    rotation: Vec<Vec<u32>>,
}

impl Draft {
    fn of(w: &Web) -> Self {
        Self {
            boundary: w.boundary,
            kinds: w.kinds.iter().map(|&k| Some(k)).collect(),
            edges: w.edges.iter().map(|&e| Some(e)).collect(),
            rotation: w.rotation.clone(),
        }
    }

    fn other_end(&self, e: u32, v: u32) -> u32 {
        let (a, b) = self.edges[e as usize].expect("live edge");
        if a == v {
            b
        } else {
            a
        }
    }

    fn add_vertex(&mut self, k: VertexKind) -> u32 {
        self.kinds.push(Some(k));
        self.rotation.push(Vec::new());
        self.kinds.len() as u32 - 1
    }

    fn add_edge(&mut self, tail: u32, head: u32) -> u32 {
        self.edges.push(Some((tail, head)));
        self.edges.len() as u32 - 1
    }

    fn remove_vertex(&mut self, v: u32) {
        for e in std::mem::take(&mut self.rotation[v as usize]) {
            self.edges[e as usize] = None;
        }
        self.kinds[v as usize] = None;
    }

    fn finish(self) -> Web {
        let mut vmap = vec![u32::MAX; self.kinds.len()];
        let mut kinds = Vec::new();
        for (v, k) in self.kinds.iter().enumerate() {
            if let Some(k) = k {
                vmap[v] = kinds.len() as u32;
                kinds.push(*k);
            }
        }
        let mut emap = vec![u32::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, ends) in self.edges.iter().enumerate() {
            if let Some((a, b)) = ends {
                emap[e] = edges.len() as u32;
                edges.push((vmap[*a as usize], vmap[*b as usize]));
            }
        }
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .filter(|(v, _)| self.kinds[*v].is_some())
            .map(|(_, r)| r.iter().map(|&e| emap[e as usize]).collect())
            .collect();
        Web::from_parts_unchecked(self.boundary, kinds, edges, rotation)
    }
}

/// Removes the vertices of a face and joins their outer legs in the given pairs (indices into
/// `verts`). Returns the new web and the number of closed loops formed.
fn smooth(w: &Web, verts: &[u32], face_edges: &[u32], pairs: &[(usize, usize)]) -> (Web, usize) {
    let mut d = Draft::of(w);
    let k = verts.len();
    let leg: Vec<u32> = verts
        .iter()
        .map(|&v| *w.rotation[v as usize].iter().find(|e| !face_edges.contains(e)).expect("face vertex has a leg"))
        .collect();
    let mut partner = vec![usize::MAX; k];
    for &(a, b) in pairs {
        partner[a] = b;
        partner[b] = a;
    }
    let index_of = |v: u32| verts.iter().position(|&x| x == v);
    let mut visited = vec![false; k];
    let mut joins: Vec<((u32, u32), (u32, u32))> = Vec::new();
    for s in 0..k {
        let o = d.other_end(leg[s], verts[s]);
        if visited[s] || index_of(o).is_some() {
            continue;
        }
        let mut cur = s;
        visited[cur] = true;
        loop {
            let p = partner[cur];
            visited[p] = true;
            let o2 = d.other_end(leg[p], verts[p]);
            match index_of(o2) {
                None => {
                    joins.push(((o, leg[s]), (o2, leg[p])));
                    break;
                }
                Some(next) => {
                    cur = next;
                    visited[cur] = true;
                }
            }
        }
    }
    let mut loops = 0;
    for s in 0..k {
        if visited[s] {
            continue;
        }
        loops += 1;
        let mut cur = s;
        while !visited[cur] {
            visited[cur] = true;
            let p = partner[cur];
            visited[p] = true;
            cur = index_of(d.other_end(leg[p], verts[p])).expect("closed chain stays inside the face");
        }
    }
    for &v in verts {
        d.remove_vertex(v);
    }
    for ((a, la), (b, lb)) in joins {
        let (tail, head) = if d.kinds[b as usize] == Some(VertexKind::Sink) { (a, b) } else { (b, a) };
        let e = d.add_edge(tail, head);
        for (v, old) in [(a, la), (b, lb)] {
            let slot = d.rotation[v as usize].iter().position(|&x| x == old).expect("leg in rotation");
            d.rotation[v as usize][slot] = e;
        }
    }
    (d.finish(), loops)
}

/// Candidate faces of length 2 or 4 bounded only by web edges, as (vertices, edges).
fn small_faces(w: &Web) -> (Vec<(Vec<u32>, Vec<u32>)>, Vec<Option<u32>>) {
    let faces = w.trace_faces();
    let depth = match faces.infinite {
        Some(inf) => dual_bfs(&faces, inf),
        None => vec![None; faces.count()],
    };
    let mut out = Vec::new();
    let mut depths = Vec::new();
    for (f, cyc) in faces.cycles.iter().enumerate() {
        if !faces.internal[f] || cyc.len() > 4 {
            continue;
        }
        let verts = cyc
            .iter()
            .map(|&d| {
                let (a, b) = w.edges[d as usize / 2];
                if d % 2 == 0 {
                    a
                } else {
                    b
                }
            })
            .collect();
        let edges = cyc.iter().map(|&d| d / 2).collect();
        out.push((verts, edges));
        depths.push(depth[f]);
    }
    (out, depths)
}

/// One reduction step: `None` if no relation applies, else the resulting `(web, factor)`
/// terms with loops already evaluated.
fn step<S: Skein>(w: &Web, order: ReductionOrder, counter: u64) -> Option<Vec<(Web, S::C)>> {
    let (faces, depths) = small_faces(w);
    if faces.is_empty() {
        return None;
    }
    let has_bigon = faces.iter().any(|(v, _)| v.len() == 2);
    let pick = match order {
        ReductionOrder::Scrambled(seed) => {
            let h = seed ^ counter.wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let h = (h ^ (h >> 29)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            (h >> 17) as usize % faces.len()
        }
        _ => {
            let key = |k: usize| {
                let d = depths[k].map_or(0, |d| d as i64);
                let d = if order == ReductionOrder::Innermost { -d } else { d };
                (d, *faces[k].0.iter().min().expect("face has vertices"))
            };
            (0..faces.len())
                .filter(|&k| !has_bigon || faces[k].0.len() == 2)
                .min_by_key(|&k| key(k))
                .expect("candidate exists")
        }
    };
    let (verts, edges) = &faces[pick];
    let with_loops = |(web, loops): (Web, usize), mut c: S::C| {
        for _ in 0..loops {
            c = S::mul(&c, &S::circle());
        }
        (web, c)
    };
    Some(if verts.len() == 2 {
        vec![with_loops(smooth(w, verts, edges, &[(0, 1)]), S::bigon())]
    } else {
        vec![
            with_loops(smooth(w, verts, edges, &[(0, 1), (2, 3)]), S::one()),
            with_loops(smooth(w, verts, edges, &[(1, 2), (3, 0)]), S::one()),
        ]
    })
}

/// Splits off components that do not touch the boundary, each as a closed web.
fn split_closed(w: &Web) -> Option<(Web, Vec<Web>)> {
    let comps = w.components();
    let closed: Vec<&Vec<u32>> = comps.iter().filter(|(_, a)| !a).map(|(m, _)| m).collect();
    if closed.is_empty() || (w.boundary == 0 && comps.len() == 1) {
        return None;
    }
    let extract = |members: &[u32], boundary: usize| -> Web {
        let mut d = Draft::of(w);
        let keep: std::collections::HashSet<u32> = members.iter().copied().collect();
        for v in 0..w.kinds.len() as u32 {
            if !keep.contains(&v) {
                d.remove_vertex(v);
            }
        }
        d.boundary = boundary;
        d.finish()
    };
    let pieces = closed.iter().map(|m| extract(m, 0)).collect();
    let attached: Vec<u32> = comps.iter().filter(|(_, a)| *a).flat_map(|(m, _)| m.iter().copied()).collect();
    Some((extract(&attached, w.boundary), pieces))
}

fn evaluate_closed<S: Skein>(w: &Web, order: ReductionOrder) -> S::C {
    let r = reduce_with(&WebSum::<S>::from_web(w.clone()), order);
    r.coeff(&Web::empty())
}

pub fn reduce<S: Skein>(sum: &WebSum<S>) -> WebSum<S> {
    reduce_with(sum, ReductionOrder::default())
}

/// Rewrites a sum into reduced webs using the loop, bigon and square relations.
pub fn reduce_with<S: Skein>(sum: &WebSum<S>, order: ReductionOrder) -> WebSum<S> {
    let mut out = WebSum::zero(sum.boundary);
    let mut work: Vec<(Web, S::C)> = sum.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut counter = 0u64;
    while let Some((w, c)) = work.pop() {
        if S::is_zero(&c) {
            continue;
        }
        counter += 1;
        if let Some((rest, closed)) = split_closed(&w) {
            let mut c = c;
            for piece in &closed {
                c = S::mul(&c, &evaluate_closed::<S>(piece, order));
            }
            work.push((rest, c));
            continue;
        }
        match step::<S>(&w, order, counter) {
            None => out.add_term(w, c),
            Some(terms) => {
                for (web, k) in terms {
                    work.push((web, S::mul(&c, &k)));
                }
            }
        }
    }
    out
}

/// Inserts the `H` smoothing of a crossing between boundary labels `i` and `i+1`.
pub(crate) fn insert_h(w: &Web, i: usize) -> Web {
    let mut d = Draft::of(w);
    let (bi, bj) = (i as u32 - 1, i as u32);
    let (ei, ej) = (w.rotation[bi as usize][0], w.rotation[bj as usize][0]);
    let s = d.add_vertex(VertexKind::Sink);
    let t = d.add_vertex(VertexKind::Source);
    let ts = d.add_edge(t, s);
    let fi = d.add_edge(bi, s);
    let fj = d.add_edge(bj, s);
    for e in [ei, ej] {
        let (_, head) = d.edges[e as usize].expect("live edge");
        d.edges[e as usize] = Some((t, head));
    }
    d.rotation[bi as usize] = vec![fi];
    d.rotation[bj as usize] = vec![fj];
    d.rotation[s as usize] = vec![ts, fi, fj];
    d.rotation[t as usize] = vec![ts, ej, ei];
    d.finish()
}

fn check_index(i: usize, boundary: usize) -> Result<(), WebError> {
    if i == 0 || i + 1 > boundary {
        return Err(WebError::IndexOutOfRange { index: i, max: boundary.saturating_sub(1) });
    }
    Ok(())
}

/// The generator `s_i` (or `T_i`) applied to a sum and reduced.
pub fn apply_generator<S: Skein>(i: usize, sum: &WebSum<S>) -> Result<WebSum<S>, WebError> {
    check_index(i, sum.boundary)?;
    let (id, h) = S::crossing();
    let mut raw = WebSum::zero(sum.boundary);
    for (w, c) in sum.terms() {
        raw.add_term(w.clone(), S::mul(c, &id));
        raw.add_term(insert_h(w, i), S::mul(c, &h));
    }
    Ok(reduce(&raw))
}

/// `s_{a_1} ⋯ s_{a_k}` applied to a sum: the last letter acts first.
pub fn apply_word<S: Skein>(word: &[usize], sum: &WebSum<S>) -> Result<WebSum<S>, WebError> {
    let mut cur = reduce(sum);
    for &i in word.iter().rev() {
        cur = apply_generator(i, &cur)?;
    }
    Ok(cur)
}

/// `τ(W)`: the `i` whose boundary vertices `i`, `i+1` meet the same internal vertex.
pub fn tau_web(w: &Web) -> Result<TauSet, WebError> {
    if !w.is_reduced() {
        return Err(WebError::NotReduced);
    }
    let b = w.boundary_count();
    Ok(TauSet::from_indices((1..b).filter(|&i| w.boundary_neighbor(i) == w.boundary_neighbor(i + 1))))
}

/// For `W ∈ D_{i,j}`, the unique reduced web in `D_{j,i}` occurring in `s_j·W`.
pub fn f_web(i: usize, j: usize, w: &Web) -> Result<Web, WebError> {
    let b = w.boundary_count();
    check_index(i, b)?;
    check_index(j, b)?;
    if i.abs_diff(j) != 1 {
        return Err(WebError::NotAdjacent(i, j));
    }
    let tau = tau_web(w)?;
    if !tau.in_domain(i, j) {
        return Err(WebError::NotInDomain { i, j });
    }
    let image = apply_generator(j, &WebSum::<Symmetric>::from_web(w.clone()))?;
    let found: Vec<(&Web, &i64)> = image
        .terms()
        .filter(|(x, _)| tau_web(x).map(|t| t.in_domain(j, i)).unwrap_or(false))
        .collect();
    match found.as_slice() {
        [(x, 1)] => Ok((*x).clone()),
        _ => Err(WebError::NotUnique { i, j, found: found.len() }),
    }
}

/// Matrix of `s_i` at `q = -1` on the reduced webs of [`kk::all_reduced_webs`]; column `c`
/// holds the expansion of `s_i` applied to web `c`.
pub fn generator_matrix(n: usize, i: usize) -> Result<Vec<Vec<i64>>, WebError> {
    let basis = kk::all_reduced_webs(n);
    let index: BTreeMap<Vec<u8>, usize> =
        basis.iter().enumerate().map(|(k, (_, w))| (w.canonical_key(), k)).collect();
    let mut m = vec![vec![0i64; basis.len()]; basis.len()];
    for (c, (_, w)) in basis.iter().enumerate() {
        let image = apply_generator(i, &WebSum::<Symmetric>::from_web(w.clone()))?;
        for (x, k) in image.terms() {
            let r = index[&x.canonical_key()];
            m[r][c] = *k;
        }
    }
    Ok(m)
}
