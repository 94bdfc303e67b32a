//! Named checks run by `tauweb verify`. Each returns a pass payload or, on failure, the
//! smallest failing input it met (checks scan in increasing size).

use std::time::Instant;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};

use tauweb::kl::{cell_matrices_at_one, f_kl, left_cells, KlTable};
use tauweb::rs::rs;
use tauweb::symgroup::{adjacent_pairs, Permutation, TauSet};
use tauweb::tableaux::StandardTableau;
use tauweb::webs::{
    all_reduced_webs, find_negative_coefficients, generator_matrix, web_to_tableau, SearchOptions,
};
use tauweb::gentau::{match_across, MatchMode, TauSystem};

pub const CHECKS: [&str; 10] = [
    "rs-example",
    "f-yt-chain",
    "tau-commute",
    "cells-equal-rs-fibers",
    "klexchange",
    "kk-roundtrip",
    "gentau-match",
    "s-squared",
    "negative-coefficient",
    "character-n2",
];

#[derive(clap::Args, Clone, Debug, Default)]
pub struct VerifyArgs {
    /// One of the registered checks.
    pub check: String,
    /// Largest size to scan (meaning depends on the check).
    #[arg(long)]
    pub n: Option<usize>,
    /// Web size for gentau-match.
    #[arg(long)]
    pub webs: Option<usize>,
    /// Generators for negative-coefficient (repeatable; default all).
    #[arg(long = "generator", short = 'k')]
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    pub payload: Value,
    pub duration_ms: u128,
}

type Outcome = std::result::Result<Value, Value>;

fn size(args: &VerifyArgs, default: usize, max: usize) -> Result<usize> {
    let n = args.n.unwrap_or(default);
    if n > max {
        bail!("{}: n = {n} is over budget (at most {max})", args.check);
    }
    Ok(n)
}

fn tau_list(t: TauSet) -> Vec<usize> {
    t.iter().collect()
}

pub fn run(args: &VerifyArgs) -> Result<VerifyReport> {
    let mut params = Map::new();
    let start = Instant::now();
    let outcome = match args.check.as_str() {
        "rs-example" => rs_example(),
        "f-yt-chain" => {
            let n = size(args, 6, 9)?;
            params.insert("n".into(), n.into());
            f_yt_chain(n)
        }
        "tau-commute" => {
            let n = size(args, 6, 8)?;
            params.insert("n".into(), n.into());
            tau_commute(n)
        }
        "cells-equal-rs-fibers" => {
            let n = size(args, 6, 7)?;
            params.insert("n".into(), n.into());
            cells_equal_fibers(n)?
        }
        "klexchange" => {
            let n = size(args, 6, 7)?;
            params.insert("n".into(), n.into());
            klexchange(n)?
        }
        "kk-roundtrip" => {
            let n = size(args, 4, 6)?;
            params.insert("n".into(), n.into());
            kk_roundtrip(n)
        }
        "gentau-match" => {
            let n = args.webs.or(args.n).unwrap_or(3);
            if n > 5 {
                bail!("gentau-match: webs = {n} is over budget (at most 5)");
            }
            params.insert("webs".into(), n.into());
            gentau_match(n)?
        }
        "s-squared" => {
            let n = size(args, 3, 4)?;
            params.insert("n".into(), n.into());
            s_squared(n)?
        }
        "negative-coefficient" => {
            let n = size(args, 6, 6)?;
            params.insert("n".into(), n.into());
            if let Some(&k) = args.generators.iter().find(|&&k| k == 0 || k >= 3 * n) {
                bail!("generator {k} out of range 1..{}", 3 * n - 1);
            }
            if !args.generators.is_empty() {
                params.insert("generators".into(), json!(args.generators));
            }
            negative_coefficient(n, &args.generators)
        }
        "character-n2" => character_n2()?,
        other => bail!("unknown check {other:?}; known: {}", CHECKS.join(", ")),
    };
    let (pass, payload) = match outcome {
        Ok(p) => (true, p),
        Err(p) => (false, p),
    };
    Ok(VerifyReport { check: args.check.clone(), params, pass, payload, duration_ms: start.elapsed().as_millis() })
}

fn rs_example() -> Outcome {
    let w: Permutation = "54312".parse().expect("literal");
    let (p, q) = rs(&w);
    let got = json!({ "w": "54312", "P": p.to_string(), "Q": q.to_string() });
    if p.to_string() == "1,2/3/4/5" && q.to_string() == "1,5/2/3/4" {
        Ok(got)
    } else {
        Err(got)
    }
}

fn f_yt_chain(n: usize) -> Outcome {
    let start: StandardTableau = "125/34/6".parse().expect("literal");
    let path = [(5, 4), (4, 3), (2, 1), (3, 4)];
    let end = start.apply_path(&path).map_err(|e| json!({ "example": e.to_string() }))?;
    if end.to_string() != "1,4,6/2,5/3" || !end.is_column_superstandard() {
        return Err(json!({ "example": end.to_string() }));
    }
    let mut count = 0;
    for k in 1..=n {
        for t in StandardTableau::all_with_boxes(k) {
            let path = t.to_superstandard_path();
            match t.apply_path(&path) {
                Ok(s) if s.is_column_superstandard() => count += 1,
                other => {
                    return Err(json!({ "tableau": t.to_string(), "path": path, "reached": format!("{other:?}") }));
                }
            }
        }
    }
    Ok(json!({ "example": end.to_string(), "tableaux_reduced": count }))
}

/// τ(w) = τ(P(w)), and the dual Knuth move on `w` is `f^YT` on `P` with `Q` fixed.
fn tau_commute(n: usize) -> Outcome {
    let mut checked = 0;
    for k in 1..=n {
        for w in Permutation::all(k) {
            let (p, q) = rs(&w);
            if w.tau() != p.tau() {
                return Err(json!({ "w": w.to_string(), "tau_w": tau_list(w.tau()), "tau_P": tau_list(p.tau()) }));
            }
            for (i, j) in adjacent_pairs(k) {
                if !w.tau().in_domain(i, j) {
                    continue;
                }
                let moved = w.f_sn(i, j).map_err(|e| json!({ "w": w.to_string(), "i": i, "j": j, "error": e.to_string() }))?;
                let (p2, q2) = rs(&moved);
                let want = p.f_yt(i, j).map_err(|e| json!({ "P": p.to_string(), "error": e.to_string() }))?;
                if p2 != want || q2 != q {
                    return Err(json!({ "w": w.to_string(), "i": i, "j": j, "f_w": moved.to_string() }));
                }
                checked += 1;
            }
        }
    }
    Ok(json!({ "moves_checked": checked }))
}

fn cells_equal_fibers(n: usize) -> Result<Outcome> {
    let mut summary = Vec::new();
    for k in 1..=n {
        let table = KlTable::compute(k)?;
        let cells = left_cells(&table)?;
        let syt = StandardTableau::all_with_boxes(k).len();
        if cells.len() != syt {
            return Ok(Err(json!({ "n": k, "cells": cells.len(), "tableaux": syt })));
        }
        let mut covered = 0;
        for c in &cells {
            let fiber: Vec<Permutation> = Permutation::all(k).filter(|w| rs(w).1 == *c.right_tableau()).collect();
            let mut members = c.members().to_vec();
            members.sort();
            let mut fiber = fiber;
            fiber.sort();
            if members != fiber {
                return Ok(Err(json!({ "n": k, "Q": c.right_tableau().to_string() })));
            }
            covered += members.len();
        }
        summary.push(json!({ "n": k, "cells": cells.len(), "elements": covered }));
    }
    Ok(Ok(Value::Array(summary)))
}

fn klexchange(n: usize) -> Result<Outcome> {
    let mut checked = 0;
    for k in 1..=n {
        let table = KlTable::compute(k)?;
        for c in left_cells(&table)? {
            for w in c.members() {
                for (i, j) in adjacent_pairs(k) {
                    if !w.tau().in_domain(i, j) {
                        continue;
                    }
                    let a = f_kl(&table, &c, i, j, w).map_err(|e| e.to_string());
                    let b = w.f_sn(i, j).map_err(|e| e.to_string());
                    if a != b {
                        return Ok(Err(json!({ "w": w.to_string(), "i": i, "j": j, "f_kl": format!("{a:?}"), "f_sn": format!("{b:?}") })));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(Ok(json!({ "pairs_checked": checked })))
}

fn kk_roundtrip(n: usize) -> Outcome {
    let mut counts = Vec::new();
    for k in 0..=n {
        let all = all_reduced_webs(k);
        for (t, w) in &all {
            match web_to_tableau(w) {
                Ok(back) if back == *t => {}
                other => return Err(json!({ "tableau": t.to_string(), "got": format!("{other:?}") })),
            }
        }
        counts.push(all.len());
    }
    Ok(json!({ "cases": counts }))
}

fn gentau_match(n: usize) -> Result<Outcome> {
    let tabs = TauSystem::tableaux(&[n, n, n])?;
    let webs = TauSystem::webs(n)?;
    let m = match match_across(&tabs, &webs, MatchMode::Bijection) {
        Ok(m) => m,
        Err(e) => return Ok(Err(json!({ "error": e.to_string() }))),
    };
    // webs are listed in tableau order, so the KK bijection is the identity on indices
    if let Some(x) = (0..tabs.len()).find(|&x| m.map[x] != x) {
        return Ok(Err(json!({ "tableau": tabs.label(x), "matched": webs.label(m.map[x]) })));
    }
    Ok(Ok(json!({ "matched_pairs": m.map.len(), "stabilized_at": m.stabilized_at })))
}

type Matrix = Vec<Vec<i64>>;

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect()).collect()
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect()
}

fn s_squared(n: usize) -> Result<Outcome> {
    let mut dims = Vec::new();
    for k in 1..=n {
        let gens: Vec<Matrix> = (1..3 * k).map(|i| generator_matrix(k, i)).collect::<Result<_, _>>()?;
        let dim = all_reduced_webs(k).len();
        for (a, g) in gens.iter().enumerate() {
            if matmul(g, g) != identity(dim) {
                return Ok(Err(json!({ "n": k, "relation": format!("s_{}^2", a + 1) })));
            }
            if let Some(h) = gens.get(a + 1) {
                if matmul(&matmul(g, h), g) != matmul(&matmul(h, g), h) {
                    return Ok(Err(json!({ "n": k, "relation": format!("braid s_{} s_{}", a + 1, a + 2) })));
                }
            }
            for (b, h) in gens.iter().enumerate().skip(a + 2) {
                if matmul(g, h) != matmul(h, g) {
                    return Ok(Err(json!({ "n": k, "relation": format!("commute s_{} s_{}", a + 1, b + 1) })));
                }
            }
        }
        dims.push(dim);
    }
    Ok(Ok(json!({ "dimensions": dims })))
}

fn negative_coefficient(n: usize, generators: &[usize]) -> Outcome {
    let opts = SearchOptions {
        generators: (!generators.is_empty()).then(|| generators.to_vec()),
        ..SearchOptions::default()
    };
    let hits = find_negative_coefficients(n, &opts);
    let minus_two: Vec<_> = hits.iter().filter(|h| h.coefficient == -2).collect();
    let show = |h: &&tauweb::webs::NegativeTerm| {
        json!({ "web": h.web.to_string(), "generator": h.generator, "term": h.term.to_string(), "coefficient": h.coefficient })
    };
    let summary = json!({
        "hits": hits.len(),
        "minus_two": minus_two.len(),
        "first": hits.first().map(|h| show(&h)),
        "first_minus_two": minus_two.first().map(show),
    });
    if minus_two.is_empty() {
        Err(summary)
    } else {
        Ok(summary)
    }
}

fn character_n2() -> Result<Outcome> {
    let dim = 5;
    let gens: Vec<Matrix> = (1..6).map(|i| generator_matrix(2, i)).collect::<Result<_, _>>()?;
    let table = KlTable::compute(6)?;
    let cells = left_cells(&table)?;
    let Some(cell) = cells.iter().find(|c| c.right_tableau().shape() == vec![2, 2, 2]) else {
        return Ok(Err(json!({ "error": "no [2,2,2] cell" })));
    };
    let kl_gens = cell_matrices_at_one(&table, cell)?;
    let trace = |word: &[usize], gens: &[Matrix]| -> i64 {
        let m = word.iter().fold(identity(dim), |acc, &i| matmul(&acc, &gens[i - 1]));
        (0..dim).map(|k| m[k][k]).sum()
    };
    for w in Permutation::all(6) {
        let word = w.reduced_word();
        let (a, b) = (trace(&word, &gens), trace(&word, &kl_gens));
        if a != b {
            return Ok(Err(json!({ "w": w.to_string(), "web_trace": a, "kl_trace": b })));
        }
    }
    Ok(Ok(json!({ "elements": 720, "dimension": dim, "cell": cell.right_tableau().to_string() })))
}
