//! Robinson–Schensted row insertion and its inverse.

use crate::symgroup::Permutation;
use crate::tableaux::{StandardTableau, TableauError};

/// `w ↦ (P(w), Q(w))` by row insertion of `w_1, w_2, ..., w_n`.
pub fn rs(w: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, x) in w.one_line().into_iter().enumerate() {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![step + 1]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(c) => {
                    x = std::mem::replace(&mut p[r][c], x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(step + 1);
                    break;
                }
            }
        }
    }
    let p = StandardTableau::new(p).expect("insertion tableau is standard");
    let q = StandardTableau::new(q).expect("recording tableau is standard");
    (p, q)
}

/// Inverse of [`rs`] by reverse bumping from the largest recording label.
pub fn rs_inverse(p: &StandardTableau, q: &StandardTableau) -> Result<Permutation, TableauError> {
    if p.shape() != q.shape() {
        return Err(TableauError::ShapeMismatch);
    }
    let n = p.n();
    let mut pr = p.rows();
    let qr = q.rows();
    let mut qpos = vec![(0, 0); n + 1];
    for (r, row) in qr.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            qpos[v] = (r, c);
        }
    }
    let mut w = vec![0usize; n];
    for k in (1..=n).rev() {
        let (r, c) = qpos[k];
        debug_assert_eq!(c + 1, pr[r].len(), "recording label at a row end");
        let mut x = pr[r].pop().expect("corner cell");
        for rr in (0..r).rev() {
            let c = pr[rr].iter().rposition(|&y| y < x).expect("smaller entry exists above");
            x = std::mem::replace(&mut pr[rr][c], x);
        }
        w[k - 1] = x;
    }
    Ok(Permutation::from_one_line(&w).expect("reverse bumping yields a permutation"))
}
