//! Standard Young tableaux, their τ-invariants and `f_{i,j}` maps, and Yamanouchi words.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::symgroup::TauSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("rows {0:?} do not form a standard tableau")]
    NotStandard(Vec<Vec<usize>>),
    #[error("cannot parse tableau {0:?}")]
    Parse(String),
    #[error("expected shape [n,n,n], found {0:?}")]
    NotThreeEqualRows(Vec<usize>),
    #[error("generators s_{0} and s_{1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("generator index {index} out of range for a tableau with {n} boxes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("tableau {t} is not in D_{{{i},{j}}}")]
    NotInDomain { t: String, i: usize, j: usize },
    #[error("tableaux have different shapes")]
    ShapeMismatch,
    #[error("{0:?} is not a balanced Yamanouchi word")]
    BadWord(String),
}

/// A standard Young tableau of straight shape, rows listed top to bottom.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardTableau {
    rows: Vec<Vec<u8>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        let n: usize = rows.iter().map(Vec::len).sum();
        let bad = || TableauError::NotStandard(rows.clone());
        if n > u8::MAX as usize || rows.iter().any(Vec::is_empty) {
            return Err(bad());
        }
        let mut seen = vec![false; n + 1];
        for (r, row) in rows.iter().enumerate() {
            if r > 0 && row.len() > rows[r - 1].len() {
                return Err(bad());
            }
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > n || seen[v] {
                    return Err(bad());
                }
                seen[v] = true;
                if c > 0 && row[c - 1] >= v {
                    return Err(bad());
                }
                if r > 0 && rows[r - 1][c] >= v {
                    return Err(bad());
                }
            }
        }
        Ok(Self { rows: rows.iter().map(|r| r.iter().map(|&v| v as u8).collect()).collect() })
    }

    fn from_rows_unchecked(rows: Vec<Vec<u8>>) -> Self {
        Self { rows }
    }

    /// The single-row tableau `1 2 .. n` (empty for `n = 0`).
    pub fn single_row(n: usize) -> Self {
        if n == 0 {
            return Self { rows: Vec::new() };
        }
        Self { rows: vec![(1..=n as u8).collect()] }
    }

    /// The column superstandard tableau of the given shape.
    pub fn column_superstandard(shape: &[usize]) -> Self {
        let mut rows: Vec<Vec<u8>> = shape.iter().map(|&l| Vec::with_capacity(l)).collect();
        let width = shape.first().copied().unwrap_or(0);
        let mut next = 1u8;
        for c in 0..width {
            for (r, &l) in shape.iter().enumerate() {
                if c < l {
                    rows[r].push(next);
                    next += 1;
                }
            }
        }
        Self { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Transposed shape: column lengths left to right.
    pub fn column_lengths(&self) -> Vec<usize> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).map(|c| self.rows.iter().take_while(|r| r.len() > c).count()).collect()
    }

    /// `(row, column)` of each label, indexed by label (entry 0 unused).
    fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); self.n() + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                pos[v as usize] = (r, c);
            }
        }
        pos
    }

    /// Row (0-based) containing `label`.
    pub fn row_of(&self, label: usize) -> usize {
        self.rows
            .iter()
            .position(|r| r.contains(&(label as u8)))
            .expect("label present in tableau")
    }

    /// `{i : i+1 lies in a lower row than i}`.
    pub fn tau(&self) -> TauSet {
        let pos = self.positions();
        TauSet::from_indices((1..self.n()).filter(|&i| pos[i + 1].0 > pos[i].0))
    }

    /// `s_i · Y`: exchange `i` and `i+1`, returning `None` if the result is not standard.
    pub fn swap(&self, i: usize) -> Option<Self> {
        let pos = self.positions();
        let (a, b) = (pos[i], pos[i + 1]);
        // i and i+1 adjacent in a row or column means the swap breaks standardness
        if (a.0 == b.0 && a.1 + 1 == b.1) || (a.1 == b.1 && a.0 + 1 == b.0) {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[a.0][a.1] = i as u8 + 1;
        rows[b.0][b.1] = i as u8;
        Some(Self { rows })
    }

    /// `f^{YT}_{i,j}`: the unique standard tableau in `D_{j,i}` among `s_i·Y` and `s_j·Y`.
    pub fn f_yt(&self, i: usize, j: usize) -> Result<Self, TableauError> {
        let n = self.n();
        if i.abs_diff(j) != 1 {
            return Err(TableauError::NotAdjacent(i, j));
        }
        for k in [i, j] {
            if k == 0 || k >= n {
                return Err(TableauError::IndexOutOfRange { index: k, n });
            }
        }
        if !self.tau().in_domain(i, j) {
            return Err(TableauError::NotInDomain { t: self.to_string(), i, j });
        }
        let mut hits = [self.swap(i), self.swap(j)].into_iter().flatten().filter(|y| y.tau().in_domain(j, i));
        let y = hits.next().expect("one of s_i Y, s_j Y lies in D_{j,i}");
        debug_assert!(hits.next().is_none());
        Ok(y)
    }

    /// Applies `f_yt` along a list of index pairs.
    pub fn apply_path(&self, path: &[(usize, usize)]) -> Result<Self, TableauError> {
        path.iter().try_fold(self.clone(), |y, &(i, j)| y.f_yt(i, j))
    }

    pub fn is_column_superstandard(&self) -> bool {
        *self == Self::column_superstandard(&self.shape())
    }

    /// A sequence of `f_yt` moves carrying this tableau to the column superstandard one.
    ///
    /// Repeatedly applies `f_{k+1,k}` for the largest `k` with `s_k` not a descent until `n`
    /// leaves the first column, then recurses on the tableau without `n` and afterwards on
    /// the tableau without its first column. Sub-tableaux that are already column
    /// superstandard are left alone.
    pub fn to_superstandard_path(&self) -> Vec<(usize, usize)> {
        let mut path = Vec::new();
        superstandard_path(self.clone(), &mut path);
        path
    }

    /// The tableau restricted to labels `1..n-1`.
    fn without_max(&self) -> Self {
        let n = self.n() as u8;
        let mut rows = self.rows.clone();
        for r in &mut rows {
            r.retain(|&v| v != n);
        }
        rows.retain(|r| !r.is_empty());
        Self { rows }
    }

    /// Drops the first column, whose labels must be `1..=c`, and relabels the rest from 1.
    fn without_first_column(&self) -> Self {
        let c = self.rows.len() as u8;
        let mut rows: Vec<Vec<u8>> = self.rows.iter().map(|r| r[1..].iter().map(|&v| v - c).collect()).collect();
        rows.retain(|r| !r.is_empty());
        Self { rows }
    }

    /// All standard tableaux of the given shape, in lexicographic order of the row word.
    pub fn all_of_shape(shape: &[usize]) -> Vec<Self> {
        let shape: Vec<usize> = shape.iter().copied().filter(|&l| l > 0).collect();
        let shape = &shape[..];
        let n: usize = shape.iter().sum();
        let mut out = Vec::new();
        let mut rows: Vec<Vec<u8>> = shape.iter().map(|&l| Vec::with_capacity(l)).collect();
        fill_shape(shape, &mut rows, 1, n, &mut out);
        out
    }

    /// All standard tableaux with `n` boxes, grouped by shape.
    pub fn all_with_boxes(n: usize) -> Vec<Self> {
        partitions(n).iter().flat_map(|s| Self::all_of_shape(s)).collect()
    }

    /// Row word: the 0-based row of each label `1..=n`.
    pub fn row_word(&self) -> Vec<usize> {
        let pos = self.positions();
        pos[1..].iter().map(|p| p.0).collect()
    }

    /// Rebuilds a tableau from its row word. Fails if the result is not standard.
    pub fn from_row_word(word: &[usize]) -> Result<Self, TableauError> {
        let height = word.iter().max().map_or(0, |&m| m + 1);
        let mut rows = vec![Vec::new(); height];
        for (k, &r) in word.iter().enumerate() {
            rows[r].push(k + 1);
        }
        Self::new(rows)
    }
}

fn superstandard_path(mut y: StandardTableau, path: &mut Vec<(usize, usize)>) {
    if y.column_lengths().len() <= 1 || y.is_column_superstandard() {
        return;
    }
    let n = y.n();
    loop {
        let tau = y.tau();
        let k = (1..n).rev().find(|&k| !tau.contains(k)).expect("more than one column");
        if k == n - 1 {
            break;
        }
        y = y.f_yt(k + 1, k).expect("largest non-descent gives D_{k+1,k}");
        path.push((k + 1, k));
    }
    let mut sub = Vec::new();
    superstandard_path(y.without_max(), &mut sub);
    for &(i, j) in &sub {
        y = y.f_yt(i, j).expect("moves on labels below n lift");
    }
    path.extend(sub);
    let c = y.rows.len();
    let mut sub = Vec::new();
    superstandard_path(y.without_first_column(), &mut sub);
    path.extend(sub.into_iter().map(|(i, j)| (i + c, j + c)));
}

fn fill_shape(shape: &[usize], rows: &mut Vec<Vec<u8>>, next: usize, n: usize, out: &mut Vec<StandardTableau>) {
    if next > n {
        out.push(StandardTableau::from_rows_unchecked(rows.clone()));
        return;
    }
    for r in 0..shape.len() {
        let len = rows[r].len();
        if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
            rows[r].push(next as u8);
            fill_shape(shape, rows, next + 1, n, out);
            rows[r].pop();
        }
    }
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join("/"))
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StandardTableau({self})")
    }
}

impl FromStr for StandardTableau {
    type Err = TableauError;

    /// Accepts `1,3,5/2,4,7/6,8,9`, or `135/247/689` when no commas are present.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || TableauError::Parse(s.to_string());
        if s.is_empty() {
            return Ok(Self::single_row(0));
        }
        let digits_only = !s.contains(',');
        let rows: Option<Vec<Vec<usize>>> = s
            .split('/')
            .map(|row| {
                let row = row.trim();
                if digits_only {
                    row.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
                } else {
                    row.split(',').map(|t| t.trim().parse().ok()).collect()
                }
            })
            .collect();
        Self::new(rows.ok_or_else(err)?).map_err(|_| err())
    }
}

/// A letter of a Yamanouchi word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Plus,
    Zero,
    Minus,
}

impl Sym {
    pub fn as_char(self) -> char {
        match self {
            Sym::Plus => '+',
            Sym::Zero => '0',
            Sym::Minus => '-',
        }
    }

    /// Row of the tableau (0, 1 or 2) associated with the letter.
    pub fn row(self) -> usize {
        self as usize
    }
}

/// A word over `{+, 0, -}` whose prefixes satisfy `#(+) >= #(0) >= #(-)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YamanouchiWord {
    symbols: Vec<Sym>,
}

impl YamanouchiWord {
    /// Checks the prefix condition and balance.
    pub fn new(symbols: Vec<Sym>) -> Result<Self, TableauError> {
        let mut counts = [0usize; 3];
        for &s in &symbols {
            counts[s.row()] += 1;
            if counts[1] > counts[0] || counts[2] > counts[1] {
                return Err(TableauError::BadWord(render_word(&symbols)));
            }
        }
        if counts[0] != counts[1] || counts[1] != counts[2] {
            return Err(TableauError::BadWord(render_word(&symbols)));
        }
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The `[n,n,n]` tableau with `k` in the row named by the `k`-th letter.
    pub fn to_tableau(&self) -> StandardTableau {
        let rows: Vec<Vec<u8>> = (0..3)
            .map(|r| {
                (0..self.symbols.len())
                    .filter(|&k| self.symbols[k].row() == r)
                    .map(|k| k as u8 + 1)
                    .collect()
            })
            .filter(|r: &Vec<u8>| !r.is_empty())
            .collect();
        StandardTableau::from_rows_unchecked(rows)
    }

    /// The word of an `[n,n,n]` tableau.
    pub fn from_tableau(t: &StandardTableau) -> Result<Self, TableauError> {
        let shape = t.shape();
        if !(shape.is_empty() || (shape.len() == 3 && shape[0] == shape[1] && shape[1] == shape[2])) {
            return Err(TableauError::NotThreeEqualRows(shape));
        }
        let symbols = t.row_word().into_iter().map(|r| [Sym::Plus, Sym::Zero, Sym::Minus][r]).collect();
        Ok(Self { symbols })
    }
}

fn render_word(symbols: &[Sym]) -> String {
    symbols.iter().map(|s| s.as_char()).collect()
}

impl fmt::Display for YamanouchiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(&self.symbols))
    }
}

impl fmt::Debug for YamanouchiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YamanouchiWord({self})")
    }
}

impl FromStr for YamanouchiWord {
    type Err = TableauError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let symbols: Option<Vec<Sym>> = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Some(Sym::Plus),
                '0' => Some(Sym::Zero),
                '-' | '−' => Some(Sym::Minus),
                _ => None,
            })
            .collect();
        Self::new(symbols.ok_or_else(|| TableauError::BadWord(s.to_string()))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> StandardTableau {
        s.parse().unwrap()
    }

    fn ts(v: &[usize]) -> TauSet {
        TauSet::from_indices(v.iter().copied())
    }

    /// Hook-length count, used as an independent oracle for enumeration.
    fn hook_count(shape: &[usize]) -> u128 {
        let n: usize = shape.iter().sum();
        let num: u128 = (1..=n as u128).product();
        let mut den: u128 = 1;
        for (r, &len) in shape.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = shape[r + 1..].iter().filter(|&&l| l > c).count();
                den *= (arm + leg + 1) as u128;
            }
        }
        num / den
    }

    #[test]
    fn parse_and_display() {
        let y = t("1,3,5/2,4,7/6,8,9");
        assert_eq!(y.to_string(), "1,3,5/2,4,7/6,8,9");
        assert_eq!(t("135/247/689"), y);
        assert!("12/3,4".parse::<StandardTableau>().is_err());
        assert!("21".parse::<StandardTableau>().is_err());
        assert!("1/23".parse::<StandardTableau>().is_err());
        assert!("13/24/5".parse::<StandardTableau>().is_ok());
        assert!("12/4/3".parse::<StandardTableau>().is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(t("125/34/6").tau(), ts(&[2, 5]));
        assert_eq!(t("12345").tau(), TauSet::EMPTY);
        assert_eq!(t("135/247/689").tau(), ts(&[1, 3, 5, 7]));
    }

    #[test]
    fn f_yt_examples() {
        assert_eq!(t("125/34/6").f_yt(5, 4).unwrap(), t("126/34/5"));
        assert_eq!(t("136/25/4").f_yt(3, 4).unwrap(), t("146/25/3"));
        assert_eq!(t("135/247/689").f_yt(1, 2).unwrap(), t("125/347/689"));
        assert!(matches!(t("125/34/6").f_yt(4, 5), Err(TableauError::NotInDomain { .. })));
        assert!(matches!(t("125/34/6").f_yt(2, 4), Err(TableauError::NotAdjacent(2, 4))));
    }

    #[test]
    fn example_tableaux_tau_rows() {
        let rows = [
            ("1,3,5/2,4,7/6,8,9", &[1, 3, 5, 7][..]),
            ("1,2,5/3,4,7/6,8,9", &[2, 5, 7]),
            ("1,3,7,9/2,5,8,11/4,6,10,12", &[1, 3, 5, 7, 9, 11]),
            ("1,3,5,7/2,6,9,11/4,8,10,12", &[1, 3, 5, 7, 9, 11]),
            ("1,3,5,7/2,4,9,11/6,8,10,12", &[1, 3, 5, 7, 9, 11]),
            ("1,3,5,9/2,4,7,11/6,8,10,12", &[1, 3, 5, 7, 9, 11]),
            ("1,3,6,9/2,5,8,11/4,7,10,12", &[1, 3, 6, 9, 11]),
            ("1,3,5,8/2,6,9,11/4,7,10,12", &[1, 3, 5, 6, 8, 9, 11]),
            ("1,3,5,6/2,4,9,11/7,8,10,12", &[1, 3, 6, 9, 11]),
            ("1,3,5,9/2,4,6,11/7,8,10,12", &[1, 3, 5, 6, 9, 11]),
            ("1,2,6,9/3,5,8,11/4,7,10,12", &[2, 3, 6, 9, 11]),
            ("1,2,5,6/3,4,9,11/7,8,10,12", &[2, 6, 9, 11]),
        ];
        for (s, tau) in rows {
            assert_eq!(t(s).tau(), ts(tau), "{s}");
        }
        let t2 = t("1,3,7,9/2,5,8,11/4,6,10,12");
        let a = t2.f_yt(7, 6).unwrap();
        assert_eq!(a, t("1,3,6,9/2,5,8,11/4,7,10,12"));
        assert_eq!(a.f_yt(1, 2).unwrap(), t("1,2,6,9/3,5,8,11/4,7,10,12"));
        assert_eq!(t("1,3,5,7/2,6,9,11/4,8,10,12").f_yt(7, 6).unwrap(), t("1,3,5,8/2,6,9,11/4,7,10,12"));
        let b = t("1,3,5,7/2,4,9,11/6,8,10,12").f_yt(7, 6).unwrap();
        assert_eq!(b, t("1,3,5,6/2,4,9,11/7,8,10,12"));
        assert_eq!(b.f_yt(1, 2).unwrap(), t("1,2,5,6/3,4,9,11/7,8,10,12"));
        assert_eq!(t("1,3,5,9/2,4,7,11/6,8,10,12").f_yt(7, 6).unwrap(), t("1,3,5,9/2,4,6,11/7,8,10,12"));
    }

    #[test]
    fn superstandard_chain() {
        let y = t("125/34/6");
        let chain = [(5, 4), (4, 3), (2, 1), (3, 4)];
        let end = y.apply_path(&chain).unwrap();
        assert_eq!(end, t("146/25/3"));
        assert!(end.is_column_superstandard());
        assert!(!y.is_column_superstandard());
        assert!(t("1").is_column_superstandard());

        let path = y.to_superstandard_path();
        assert_eq!(&path[..3], &chain[..3]);
        // the last move is written f_{3,2} by the construction; on this tableau it agrees with f_{3,4}
        assert_eq!(path[3], (3, 2));
        assert_eq!(y.apply_path(&path).unwrap(), end);
        assert!(t("146/25/3").to_superstandard_path().is_empty());
        assert!(t("1/2/3/4").to_superstandard_path().is_empty());
    }

    #[test]
    fn superstandard_path_reaches_target() {
        for n in 1..=8 {
            for y in StandardTableau::all_with_boxes(n) {
                let end = y.apply_path(&y.to_superstandard_path()).unwrap();
                assert!(end.is_column_superstandard(), "{y} -> {end}");
            }
        }
    }

    #[test]
    fn enumeration_counts_match_hook_length() {
        for n in 0..=8 {
            for shape in partitions(n) {
                let all = StandardTableau::all_of_shape(&shape);
                assert_eq!(all.len() as u128, hook_count(&shape), "{shape:?}");
                let mut sorted = all.clone();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len());
            }
        }
        assert_eq!(StandardTableau::all_of_shape(&[4, 4, 4]).len(), 462);
    }

    #[test]
    fn column_superstandard_unique_for_its_tau() {
        for n in 1..=8 {
            for shape in partitions(n) {
                let gamma = StandardTableau::column_superstandard(&shape);
                let hits: Vec<_> =
                    StandardTableau::all_of_shape(&shape).into_iter().filter(|y| y.tau() == gamma.tau()).collect();
                assert_eq!(hits, vec![gamma]);
            }
        }
    }

    #[test]
    fn f_yt_is_bijection() {
        for n in 3..=7 {
            for y in StandardTableau::all_with_boxes(n) {
                for (i, j) in crate::symgroup::adjacent_pairs(n) {
                    if y.tau().in_domain(i, j) {
                        let z = y.f_yt(i, j).unwrap();
                        assert!(z.tau().in_domain(j, i));
                        assert_eq!(z.f_yt(j, i).unwrap(), y);
                    }
                }
            }
        }
    }

    #[test]
    fn yamanouchi_examples() {
        let t2 = t("1,3,7,9/2,5,8,11/4,6,10,12");
        let w = YamanouchiWord::from_tableau(&t2).unwrap();
        assert_eq!(w.to_string(), "+0+-0-+0+-0-");
        assert_eq!("+0+−0−+0+−0−".parse::<YamanouchiWord>().unwrap(), w);
        assert_eq!(YamanouchiWord::from_tableau(&t("1/2/3")).unwrap().to_string(), "+0-");
        assert!("0+-".parse::<YamanouchiWord>().is_err());
        assert!("+0".parse::<YamanouchiWord>().is_err());
        assert!(YamanouchiWord::from_tableau(&t("12/3")).is_err());
    }

    #[test]
    fn yamanouchi_round_trip() {
        for n in 0..=4 {
            for y in StandardTableau::all_of_shape(&[n, n, n]) {
                let w = YamanouchiWord::from_tableau(&y).unwrap();
                assert_eq!(w.len(), 3 * n);
                let reparsed: YamanouchiWord = w.to_string().parse().unwrap();
                assert_eq!(reparsed.to_tableau(), y);
            }
        }
    }

    proptest! {
        #[test]
        fn emitted_words_satisfy_prefix_condition(seed in 0usize..462) {
            let y = &StandardTableau::all_of_shape(&[4, 4, 4])[seed];
            let w = YamanouchiWord::from_tableau(y).unwrap();
            let mut c = [0usize; 3];
            for s in w.symbols() {
                c[s.row()] += 1;
                prop_assert!(c[0] >= c[1] && c[1] >= c[2]);
            }
        }

        #[test]
        fn row_word_round_trip(seed in 0usize..1000) {
            let all = StandardTableau::all_with_boxes(7);
            let y = &all[seed % all.len()];
            prop_assert_eq!(&StandardTableau::from_row_word(&y.row_word()).unwrap(), y);
        }
    }
}
