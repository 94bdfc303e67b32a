//! Permutations of `S_n` in one-line notation.
//!
//! Generators `s_1 .. s_{n-1}` are indexed from 1. The left action `s_i * x` swaps the
//! *values* `i` and `i+1` in the one-line notation of `x`; the right action swaps positions.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("permutations have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("{0:?} is not a permutation of 1..=n")]
    NotAPermutation(Vec<usize>),
    #[error("generator index {index} out of range for S_{n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("generators s_{0} and s_{1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("{x} is not in D_{{{i},{j}}}")]
    NotInDomain { x: String, i: usize, j: usize },
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
}

/// Set of generator indices, stored as a bitmask (bit `i` for `s_i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauSet(pub u64);

impl TauSet {
    pub const EMPTY: TauSet = TauSet(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = TauSet(0);
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < 64, "generator index {i} exceeds TauSet capacity");
        self.0 |= 1 << i;
    }

    pub fn is_subset(self, other: TauSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// True when the object lies in `D_{i,j}`: `i` in the set and `j` not.
    pub fn in_domain(self, i: usize, j: usize) -> bool {
        self.contains(i) && !self.contains(j)
    }
}

impl fmt::Display for TauSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The ordered pairs `(i, j)` of adjacent generator indices of `S_n`.
pub fn adjacent_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        out.push((i, i + 1));
        out.push((i + 1, i));
    }
    out.sort_unstable();
    out
}

/// An element of `S_n`, stored in one-line notation with values `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { one_line: (1..=n as u8).collect() }
    }

    pub fn from_one_line(values: &[usize]) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in values {
            if v == 0 || v > n || seen[v] || n > u8::MAX as usize {
                return Err(PermError::NotAPermutation(values.to_vec()));
            }
            seen[v] = true;
        }
        Ok(Self { one_line: values.iter().map(|&v| v as u8).collect() })
    }

    /// The simple transposition `s_i` in `S_n`.
    pub fn simple(i: usize, n: usize) -> Result<Self, PermError> {
        if i == 0 || i >= n {
            return Err(PermError::IndexOutOfRange { index: i, n });
        }
        let mut p = Self::identity(n);
        p.one_line.swap(i - 1, i);
        Ok(p)
    }

    /// The longest element `n n-1 ... 1`.
    pub fn longest(n: usize) -> Self {
        Self { one_line: (1..=n as u8).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.one_line.iter().map(|&v| v as usize).collect()
    }

    /// Image of `k` (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.one_line[k - 1] as usize
    }

    /// Position (1-based) holding value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.one_line.iter().position(|&x| x as usize == v).expect("value in range") + 1
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.n() != other.n() {
            return Err(PermError::SizeMismatch(self.n(), other.n()));
        }
        Ok(Self { one_line: other.one_line.iter().map(|&k| self.one_line[k as usize - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (pos, &v) in self.one_line.iter().enumerate() {
            inv[v as usize - 1] = pos as u8 + 1;
        }
        Self { one_line: inv }
    }

    /// Left multiplication `s_i * self`: swaps values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        assert!(i >= 1 && i < self.n(), "generator s_{i} out of range for S_{}", self.n());
        let mut p = self.clone();
        for v in &mut p.one_line {
            if *v as usize == i {
                *v += 1;
            } else if *v as usize == i + 1 {
                *v -= 1;
            }
        }
        p
    }

    /// Right multiplication `self * s_i`: swaps positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Permutation {
        assert!(i >= 1 && i < self.n(), "generator s_{i} out of range for S_{}", self.n());
        let mut p = self.clone();
        p.one_line.swap(i - 1, i);
        p
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.one_line;
        let mut inv = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Left descent set `{i : s_i x < x}`: `i+1` appears to the left of `i`.
    pub fn tau(&self) -> TauSet {
        let n = self.n();
        let mut pos = vec![0usize; n + 1];
        for (p, &v) in self.one_line.iter().enumerate() {
            pos[v as usize] = p;
        }
        TauSet::from_indices((1..n).filter(|&i| pos[i + 1] < pos[i]))
    }

    /// Bruhat order via the rank-matrix dominance criterion.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool, PermError> {
        if self.n() != other.n() {
            return Err(PermError::SizeMismatch(self.n(), other.n()));
        }
        Ok(bruhat_leq_slices(&self.one_line, &other.one_line))
    }

    /// A reduced word `[i_1, .., i_k]` with `self = s_{i_1} ... s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut x = self.clone();
        while let Some(i) = x.tau().iter().next() {
            word.push(i);
            x = x.left_mul_simple(i);
        }
        word
    }

    /// `f^{S_n}_{i,j}`: the unique element of `D_{j,i}` among `s_i x` and `s_j x`.
    pub fn f_sn(&self, i: usize, j: usize) -> Result<Permutation, PermError> {
        let n = self.n();
        if i.abs_diff(j) != 1 {
            return Err(PermError::NotAdjacent(i, j));
        }
        for k in [i, j] {
            if k == 0 || k >= n {
                return Err(PermError::IndexOutOfRange { index: k, n });
            }
        }
        if !self.tau().in_domain(i, j) {
            return Err(PermError::NotInDomain { x: self.to_string(), i, j });
        }
        let candidates = [self.left_mul_simple(i), self.left_mul_simple(j)];
        let mut hits = candidates.into_iter().filter(|y| y.tau().in_domain(j, i));
        let y = hits.next().expect("one of s_i x, s_j x lies in D_{j,i}");
        debug_assert!(hits.next().is_none());
        Ok(y)
    }

    /// Lexicographic rank of the one-line notation, in `0..n!`.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        let mut used = 0u32;
        for (k, &v) in self.one_line.iter().enumerate() {
            let smaller_unused = (1..v).filter(|&u| used >> u & 1 == 0).count();
            rank = rank * (n - k) + smaller_unused;
            used |= 1 << v;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0usize; n];
        for k in (0..n).rev() {
            let base = n - k;
            digits[k] = rank % base;
            rank /= base;
        }
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let one_line = digits.into_iter().map(|d| avail.remove(d)).collect();
        Permutation { one_line }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..factorial(n)).map(move |r| Permutation::unrank(n, r))
    }
}

pub(crate) fn bruhat_leq_slices(x: &[u8], y: &[u8]) -> bool {
    let n = x.len();
    // cx[k] = #{a <= i : x(a) >= k}
    let mut cx = vec![0i32; n + 2];
    let mut cy = vec![0i32; n + 2];
    for i in 0..n {
        for k in 1..=x[i] as usize {
            cx[k] += 1;
        }
        for k in 1..=y[i] as usize {
            cy[k] += 1;
        }
        if (1..=n).any(|k| cx[k] > cy[k]) {
            return false;
        }
    }
    true
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `x ↔_i y`: a dual Knuth step of type `i`.
pub fn dual_knuth_related(x: &Permutation, y: &Permutation, i: usize) -> bool {
    let n = x.n();
    if y.n() != n || i < 2 || i + 1 > n {
        return false;
    }
    let between = |a: usize, b: usize, c: usize| {
        let (pa, pb, pc) = (x.position_of(a), x.position_of(b), x.position_of(c));
        pc > pa.min(pb) && pc < pa.max(pb)
    };
    (between(i, i + 1, i - 1) && *y == x.left_mul_simple(i))
        || (between(i - 1, i, i + 1) && *y == x.left_mul_simple(i - 1))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.one_line {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let values: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let values = values.ok_or_else(|| PermError::Parse(s.to_string()))?;
        Permutation::from_one_line(&values).map_err(|_| PermError::Parse(s.to_string()))
    }
}
