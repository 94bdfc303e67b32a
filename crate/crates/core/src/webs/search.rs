//! Exhaustive search for negative coefficients in the symmetric group action on reduced webs.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use super::{apply_generator, tableau_to_web, tau_web, web_to_tableau, Symmetric, WebSum};
use crate::tableaux::StandardTableau;

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Stop once any hit is known. Which hit is returned may then depend on scheduling.
    pub stop_at_first: bool,
    /// Generators to try; all of `1..3n` when `None`.
    pub generators: Option<Vec<usize>>,
    /// Bumped once per web scanned.
    pub progress: Option<Arc<AtomicUsize>>,
}

/// `s_k·W` contains the reduced web of `term` with a negative coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeTerm {
    pub web: StandardTableau,
    pub generator: usize,
    pub term: StandardTableau,
    pub coefficient: i64,
}

/// Scans every reduced web with `3n` boundary vertices and every generator `s_k` with
/// `k ∉ τ(W)` (for `k ∈ τ(W)` the image is `-W`). Hits come back sorted by web, generator
/// and term.
pub fn find_negative_coefficients(n: usize, opts: &SearchOptions) -> Vec<NegativeTerm> {
    let tableaux = StandardTableau::all_of_shape(&[n, n, n]);
    let gens: Vec<usize> = opts.generators.clone().unwrap_or_else(|| (1..3 * n).collect());
    let done = AtomicBool::new(false);
    let mut hits: Vec<(usize, NegativeTerm)> = tableaux
        .par_iter()
        .enumerate()
        .flat_map_iter(|(idx, t)| {
            let mut found = Vec::new();
            if opts.stop_at_first && done.load(Ordering::Relaxed) {
                return found.into_iter();
            }
            let w = tableau_to_web(t).expect("three equal rows");
            let tau = tau_web(&w).expect("reduced");
            let start = WebSum::<Symmetric>::from_web(w);
            for &k in &gens {
                if tau.contains(k) {
                    continue;
                }
                let image = apply_generator(k, &start).expect("generator in range");
                for (x, &c) in image.terms() {
                    if c < 0 {
                        let term = web_to_tableau(x).expect("reduced term");
                        found.push((idx, NegativeTerm { web: t.clone(), generator: k, term, coefficient: c }));
                    }
                }
            }
            if !found.is_empty() {
                done.store(true, Ordering::Relaxed);
            }
            if let Some(c) = &opts.progress {
                c.fetch_add(1, Ordering::Relaxed);
            }
            found.into_iter()
        })
        .collect();
    hits.sort_by(|a, b| (a.0, a.1.generator, a.1.term.row_word()).cmp(&(b.0, b.1.generator, b.1.term.row_word())));
    if opts.stop_at_first {
        hits.truncate(1);
    }
    hits.into_iter().map(|(_, h)| h).collect()
}
