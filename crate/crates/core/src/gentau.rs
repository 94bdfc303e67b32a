//! Generalized τ-invariants by partition refinement over families of objects carrying τ and
//! partial `f_{i,j}` maps.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::kl::{f_kl, tau_from_action, Cell, KlError, KlTable};
use crate::symgroup::{adjacent_pairs, Permutation, TauSet};
use crate::tableaux::StandardTableau;
use crate::webs::{all_reduced_webs, f_web, tau_web, WebError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GentauError {
    #[error("systems have ranks {0} and {1}")]
    RankMismatch(usize, usize),
    #[error("system {system}: {detail}")]
    BadSystem { system: String, detail: String },
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error(transparent)]
    Web(#[from] WebError),
}

/// A finite family of objects with τ-invariants in `S_rank` and maps `f_{i,j}` on `D_{i,j}`.
#[derive(Clone)]
pub struct TauSystem {
    name: String,
    rank: usize,
    labels: Vec<String>,
    tau: Vec<TauSet>,
    pairs: Vec<(usize, usize)>,
    /// `f[p][x]` for pair `p`, `u32::MAX` off `D_{i,j}`.
    f: Vec<Vec<u32>>,
}

impl fmt::Debug for TauSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TauSystem({}, rank {}, {} objects)", self.name, self.rank, self.labels.len())
    }
}

impl TauSystem {
    /// Builds a system from callbacks over object indices `0..count`. `f` is called exactly on
    /// `D_{i,j}` and must return an index; the result is checked to land in `D_{j,i}` and to be
    /// inverted by `f_{j,i}`.
    pub fn from_fn<T, F>(
        name: impl Into<String>,
        rank: usize,
        labels: Vec<String>,
        tau: T,
        f: F,
    ) -> Result<Self, GentauError>
    where
        T: Fn(usize) -> Result<TauSet, GentauError> + Sync,
        F: Fn(usize, usize, usize) -> Result<usize, GentauError> + Sync,
    {
        let name = name.into();
        let count = labels.len();
        let tau: Vec<TauSet> = (0..count).into_par_iter().map(&tau).collect::<Result<_, _>>()?;
        let pairs = adjacent_pairs(rank);
        let f: Vec<Vec<u32>> = pairs
            .iter()
            .map(|&(i, j)| {
                (0..count)
                    .into_par_iter()
                    .map(|x| if tau[x].in_domain(i, j) { f(i, j, x).map(|y| y as u32) } else { Ok(u32::MAX) })
                    .collect::<Result<Vec<u32>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let sys = Self { name, rank, labels, tau, pairs, f };
        sys.check()?;
        Ok(sys)
    }

    fn check(&self) -> Result<(), GentauError> {
        let bad = |detail: String| Err(GentauError::BadSystem { system: self.name.clone(), detail });
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            let back = self.pair_index(j, i).expect("pairs come in both orders");
            for x in 0..self.len() {
                let y = self.f[p][x];
                if y == u32::MAX {
                    continue;
                }
                let y = y as usize;
                if y >= self.len() || !self.tau[y].in_domain(j, i) {
                    return bad(format!("f({i},{j}) of {} leaves D_{{{j},{i}}}", self.labels[x]));
                }
                if self.f[back][y] as usize != x {
                    return bad(format!("f({j},{i}) does not invert f({i},{j}) at {}", self.labels[x]));
                }
            }
        }
        Ok(())
    }

    fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }

    /// All standard tableaux of the given shape.
    pub fn tableaux(shape: &[usize]) -> Result<Self, GentauError> {
        Self::tableau_family(format!("tableaux:{}", join(shape)), StandardTableau::all_of_shape(shape))
    }

    /// All standard tableaux with `n` boxes.
    pub fn all_tableaux(n: usize) -> Result<Self, GentauError> {
        Self::tableau_family(format!("tableaux:all{n}"), StandardTableau::all_with_boxes(n))
    }

    fn tableau_family(name: String, all: Vec<StandardTableau>) -> Result<Self, GentauError> {
        let rank = all.first().map_or(0, StandardTableau::n);
        let index: HashMap<&StandardTableau, usize> = all.iter().enumerate().map(|(k, t)| (t, k)).collect();
        Self::from_fn(
            name,
            rank,
            all.iter().map(|t| t.to_string()).collect(),
            |x| Ok(all[x].tau()),
            |i, j, x| {
                let y = all[x].f_yt(i, j).map_err(|e| GentauError::BadSystem {
                    system: "tableaux".into(),
                    detail: e.to_string(),
                })?;
                Ok(index[&y])
            },
        )
    }

    /// `S_n` in rank order, with `f_{i,j}` the dual Knuth move.
    pub fn permutations(n: usize) -> Result<Self, GentauError> {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        Self::from_fn(
            format!("perms:{n}"),
            n,
            all.iter().map(|w| w.to_string()).collect(),
            |x| Ok(all[x].tau()),
            |i, j, x| {
                let y = all[x].f_sn(i, j).map_err(|e| GentauError::BadSystem {
                    system: "perms".into(),
                    detail: e.to_string(),
                })?;
                Ok(y.rank())
            },
        )
    }

    /// Reduced webs on `3n` boundary vertices in the order of
    /// [`crate::webs::all_reduced_webs`], labelled by their tableaux under the KK bijection.
    pub fn webs(n: usize) -> Result<Self, GentauError> {
        let all = all_reduced_webs(n);
        let index: HashMap<Vec<u8>, usize> = all.iter().enumerate().map(|(k, (_, w))| (w.canonical_key(), k)).collect();
        Self::from_fn(
            format!("webs:{n}"),
            3 * n,
            all.iter().map(|(t, _)| format!("W[{t}]")).collect(),
            |x| Ok(tau_web(&all[x].1)?),
            |i, j, x| {
                let y = f_web(i, j, &all[x].1)?;
                index.get(&y.canonical_key()).copied().ok_or_else(|| GentauError::BadSystem {
                    system: "webs".into(),
                    detail: "f_web left the reduced basis".into(),
                })
            },
        )
    }

    /// The KL basis elements of one left cell, with τ read off the `T_{s_i}` action.
    pub fn kl_cell(table: &KlTable, cell: &Cell) -> Result<Self, GentauError> {
        let members = cell.members();
        let index: HashMap<&Permutation, usize> = members.iter().enumerate().map(|(k, w)| (w, k)).collect();
        Self::from_fn(
            format!("klcell:{},{}", table.n(), cell.right_tableau()),
            table.n(),
            members.iter().map(|w| format!("C[{w}]")).collect(),
            |x| Ok(tau_from_action(table, cell, &members[x])?),
            |i, j, x| Ok(index[&f_kl(table, cell, i, j, &members[x])?]),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn tau(&self, x: usize) -> TauSet {
        self.tau[x]
    }

    pub fn f(&self, i: usize, j: usize, x: usize) -> Option<usize> {
        let p = self.pair_index(i, j)?;
        let y = self.f[p][x];
        (y != u32::MAX).then_some(y as usize)
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// A partition of the disjoint union of several systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Start of each system's objects in `block`.
    offsets: Vec<usize>,
    /// Block id of every object; ids are `0..count` in order of sorted signatures.
    block: Vec<u32>,
    count: usize,
}

impl Partition {
    pub fn block_count(&self) -> usize {
        self.count
    }

    /// Block of object `x` of system `s`.
    pub fn block_of(&self, s: usize, x: usize) -> usize {
        self.block[self.offsets[s] + x] as usize
    }

    /// Members of each block as `(system, object)` pairs.
    pub fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.count];
        for s in 0..self.offsets.len() - 1 {
            for g in self.offsets[s]..self.offsets[s + 1] {
                out[self.block[g] as usize].push((s, g - self.offsets[s]));
            }
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.count == self.block.len()
    }
}

struct Union<'a> {
    systems: &'a [&'a TauSystem],
    offsets: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl<'a> Union<'a> {
    fn new(systems: &'a [&'a TauSystem]) -> Result<Self, GentauError> {
        let rank = systems.first().map_or(0, |s| s.rank);
        if let Some(s) = systems.iter().find(|s| s.rank != rank) {
            return Err(GentauError::RankMismatch(rank, s.rank));
        }
        let mut offsets = vec![0];
        for s in systems {
            offsets.push(offsets.last().unwrap() + s.len());
        }
        Ok(Self { systems, offsets, pairs: adjacent_pairs(rank) })
    }

    fn locate(&self, g: usize) -> (usize, usize) {
        let s = self.offsets.partition_point(|&o| o <= g) - 1;
        (s, g - self.offsets[s])
    }

    fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn order_zero(&self) -> Partition {
        let sigs: Vec<Vec<u64>> = (0..self.total())
            .map(|g| {
                let (s, x) = self.locate(g);
                vec![self.systems[s].tau[x].0]
            })
            .collect();
        self.assign(sigs)
    }

    /// One refinement round: the signature is the old block and the old blocks of all defined
    /// images under `f_{i,j}`.
    fn refine(&self, prev: &Partition) -> Partition {
        let sigs: Vec<Vec<u64>> = (0..self.total())
            .into_par_iter()
            .map(|g| {
                let (s, x) = self.locate(g);
                let sys = self.systems[s];
                let mut sig = vec![prev.block[g] as u64];
                for p in 0..self.pairs.len() {
                    let y = sys.f[p][x];
                    sig.push(if y == u32::MAX { u64::MAX } else { prev.block[self.offsets[s] + y as usize] as u64 });
                }
                sig
            })
            .collect();
        self.assign(sigs)
    }

    fn assign(&self, sigs: Vec<Vec<u64>>) -> Partition {
        let mut distinct: Vec<&Vec<u64>> = sigs.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let id: HashMap<&Vec<u64>, u32> = distinct.iter().enumerate().map(|(k, s)| (*s, k as u32)).collect();
        let block = sigs.iter().map(|s| id[s]).collect();
        Partition { offsets: self.offsets.clone(), block, count: distinct.len() }
    }
}

/// The order-`k` equivalence on the disjoint union of the systems.
pub fn order_k_partition(systems: &[&TauSystem], k: usize) -> Result<Partition, GentauError> {
    let u = Union::new(systems)?;
    let mut p = u.order_zero();
    for _ in 0..k {
        let next = u.refine(&p);
        if next.count == p.count {
            break;
        }
        p = next;
    }
    Ok(p)
}

/// The generalized τ-invariant partition and the least `k` with `≈_k = ≈_{k+1}`.
pub fn fixpoint_partition(systems: &[&TauSystem]) -> Result<(Partition, usize), GentauError> {
    let u = Union::new(systems)?;
    let mut p = u.order_zero();
    let mut k = 0;
    loop {
        let next = u.refine(&p);
        // refinement only splits blocks, so equal counts mean equal partitions
        if next.count == p.count {
            return Ok((p, k));
        }
        p = next;
        k += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    /// Every block holds exactly one object of each side.
    Bijection,
    /// Every block holding objects of `A` holds exactly one object of `B` (many-to-one).
    Function,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// `map[a]` is the object of `B` matched with object `a` of `A`.
    pub map: Vec<usize>,
    pub stabilized_at: usize,
}

/// A block that violates the matching mode, with its members' labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadBlock {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchError {
    #[error(transparent)]
    System(#[from] GentauError),
    #[error("{} blocks are ambiguous or unmatched", .0.len())]
    Unmatched(Vec<BadBlock>),
}

/// Matches `A` with `B` through the fixpoint partition of `A ⊔ B`.
pub fn match_across(a: &TauSystem, b: &TauSystem, mode: MatchMode) -> Result<Matching, MatchError> {
    let (p, k) = fixpoint_partition(&[a, b])?;
    let mut map = vec![usize::MAX; a.len()];
    let mut bad = Vec::new();
    for block in p.blocks() {
        let xs: Vec<usize> = block.iter().filter(|m| m.0 == 0).map(|m| m.1).collect();
        let ys: Vec<usize> = block.iter().filter(|m| m.0 == 1).map(|m| m.1).collect();
        let ok = match mode {
            MatchMode::Bijection => xs.len() == 1 && ys.len() == 1,
            MatchMode::Function => ys.len() == 1 || (xs.is_empty() && ys.is_empty()),
        };
        if !ok {
            bad.push(BadBlock {
                a: xs.iter().map(|&x| a.label(x).to_string()).collect(),
                b: ys.iter().map(|&y| b.label(y).to_string()).collect(),
            });
            continue;
        }
        for x in xs {
            map[x] = ys[0];
        }
    }
    if !bad.is_empty() {
        return Err(MatchError::Unmatched(bad));
    }
    Ok(Matching { map, stabilized_at: k })
}
