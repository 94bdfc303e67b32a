use std::collections::{BTreeMap, HashMap, HashSet};

use proptest::prelude::*;
use tauweb::kl::{cell_matrices_at_one, left_cells, KlTable};
use tauweb::laurent::LaurentPoly;
use tauweb::symgroup::{adjacent_pairs, Permutation, TauSet};
use tauweb::tableaux::StandardTableau;
use tauweb::webs::*;

fn tab(s: &str) -> StandardTableau {
    s.parse().unwrap()
}

fn web(s: &str) -> Web {
    tableau_to_web(&tab(s)).unwrap()
}

fn tau(w: &Web) -> Vec<usize> {
    tau_web(w).unwrap().iter().collect()
}

fn sym(w: &Web) -> WebSum<Symmetric> {
    WebSum::from_web(w.clone())
}

/// #SYT of shape [n,n,n] by the hook-length formula.
fn hook_count(n: usize) -> u128 {
    let num: u128 = (1..=(3 * n) as u128).product();
    let hooks: u128 =
        (0..3).flat_map(|r| (0..n).map(move |c| ((n - c - 1) + (3 - r - 1) + 1) as u128)).product();
    num / hooks
}

/// Murnaghan–Nakayama rule on beta-sets.
fn mn_character(shape: &[usize], cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return if shape.iter().all(|&x| x == 0) { 1 } else { 0 };
    };
    let k = shape.len();
    let beta: Vec<usize> = (0..k).map(|i| shape[i] + (k - 1 - i)).collect();
    let mut total = 0;
    for i in 0..k {
        let b = beta[i];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let ns: Vec<usize> = (0..k).map(|i| nb[i] - (k - 1 - i)).collect();
        total += sign * mn_character(&ns, rest);
    }
    total
}

fn cycle_type(w: &Permutation) -> Vec<usize> {
    let n = w.n();
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for s in 1..=n {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = w.apply(x);
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect()).collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect()
}

fn trace_of(word: &[usize], gens: &[Vec<Vec<i64>>], dim: usize) -> i64 {
    let m = word.iter().fold(identity(dim), |acc, &i| matmul(&acc, &gens[i - 1]));
    (0..dim).map(|k| m[k][k]).sum()
}

#[test]
fn dimensions_match_hook_lengths() {
    for n in 0..=4 {
        let webs = all_reduced_webs(n);
        assert_eq!(webs.len() as u128, hook_count(n));
        let keys: HashSet<_> = webs.iter().map(|(_, w)| w.canonical_key()).collect();
        assert_eq!(keys.len(), webs.len());
    }
    assert_eq!([hook_count(2), hook_count(3), hook_count(4)], [5, 42, 462]);
}

#[test]
fn depth_labels_of_two_by_four_web() {
    let w = web("1,3,7,9/2,5,8,11/4,6,10,12");
    assert_eq!(web_to_yamanouchi(&w).unwrap().to_string(), "+0+-0-+0+-0-");
    // the eleven face depths of this web, as a multiset over all faces above the line
    let (faces, depth) = w.depths().unwrap();
    let mut all: Vec<u32> = (0..faces.count() as u32)
        .filter(|&f| Some(f) != faces.lower)
        .map(|f| depth[f as usize].unwrap())
        .collect();
    all.sort_unstable();
    let mut labels = vec![0, 1, 1, 1, 1, 1, 2, 1, 1, 2, 1];
    labels.sort_unstable();
    assert_eq!(all, labels);
    assert_eq!(w.boundary_depths().unwrap(), vec![0, 1, 1, 2, 1, 1, 0, 1, 1, 2, 1, 1, 0]);
}

#[test]
fn tripod_word_and_tau() {
    let t = Web::tripod();
    assert_eq!(web_to_yamanouchi(&t).unwrap().to_string(), "+0-");
    assert_eq!(tau(&t), vec![1, 2]);
    assert_eq!(web("1/2/3").canonical_key(), t.canonical_key());
    assert_eq!(MDiagram::from_tableau(&tab("1/2/3")).unwrap().left_arcs, vec![(1, 2)]);
}

#[test]
fn t2_m_diagram_matches_greedy_oracle() {
    // by hand: middle 2,5,8,11 take tops 1,3,7,9; bottoms 4,6,10,12 take middles 2,5,8,11
    let m = MDiagram::from_tableau(&tab("1,3,7,9/2,5,8,11/4,6,10,12")).unwrap();
    assert_eq!(m.left_arcs, vec![(1, 2), (3, 5), (7, 8), (9, 11)]);
    assert_eq!(m.right_arcs, vec![(2, 4), (5, 6), (8, 10), (11, 12)]);
}

#[test]
fn unreduced_input_is_rejected() {
    let w = Web::tripod().double_y(1).unwrap();
    assert_eq!(web_to_yamanouchi(&w), Err(WebError::NotReduced));
    assert_eq!(tau_web(&w), Err(WebError::NotReduced));
    assert!(Web::tripod().double_y(3).is_err());
    assert!(apply_generator(0, &sym(&Web::tripod())).is_err());
}

#[test]
fn tau_agrees_with_tableau() {
    for n in 1..=4 {
        for (t, w) in all_reduced_webs(n) {
            assert_eq!(tau_web(&w).unwrap(), t.tau(), "{t}");
        }
    }
}

#[test]
fn loop_and_bigon_values() {
    // a loop closed off by an H twice at the same place on the tripod: H(H(W)) = [2]^2 W
    let w = Web::tripod();
    let hh = w.double_y(2).unwrap().double_y(2).unwrap();
    let r = reduce(&WebSum::<QuantumBraid>::from_web(hh));
    let two = LaurentPoly::from_terms([(-2, 1), (2, 1)]);
    assert_eq!(r.coeff(&w), &two * &two);
    assert_eq!(r.len(), 1);
    let r = reduce(&WebSum::<Symmetric>::from_web(w.double_y(1).unwrap()));
    assert_eq!(r.coeff(&w), -2);
}

#[test]
fn involution_and_braid_matrices() {
    for n in 1..=3 {
        let dim = all_reduced_webs(n).len();
        let gens: Vec<_> = (1..3 * n).map(|i| generator_matrix(n, i).unwrap()).collect();
        for (k, g) in gens.iter().enumerate() {
            assert_eq!(matmul(g, g), identity(dim), "n={n} s_{}", k + 1);
        }
        for k in 0..gens.len().saturating_sub(1) {
            let (a, b) = (&gens[k], &gens[k + 1]);
            assert_eq!(matmul(&matmul(a, b), a), matmul(&matmul(b, a), b));
        }
        for a in 0..gens.len() {
            for b in a + 2..gens.len() {
                assert_eq!(matmul(&gens[a], &gens[b]), matmul(&gens[b], &gens[a]));
            }
        }
    }
}

#[test]
fn hecke_relations_on_webs() {
    let v = LaurentPoly::var();
    for n in 1..=2 {
        for (_, w) in all_reduced_webs(n) {
            let x = WebSum::<Hecke>::from_web(w.clone());
            for i in 1..3 * n {
                // T^2 = (v-1) T + v
                let t = apply_generator(i, &x).unwrap();
                let tt = apply_generator(i, &t).unwrap();
                let mut rhs = t.scale(&(&v - &LaurentPoly::one()));
                rhs.add(&x.scale(&v));
                assert_eq!(tt, rhs);
            }
            for i in 1..3 * n - 1 {
                let a = apply_word(&[i, i + 1, i], &x).unwrap();
                let b = apply_word(&[i + 1, i, i + 1], &x).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn character_matches_kl_cell_at_n2() {
    let dim = 5;
    let gens: Vec<_> = (1..6).map(|i| generator_matrix(2, i).unwrap()).collect();
    let table = KlTable::compute(6).unwrap();
    let cells = left_cells(&table).unwrap();
    let cell = cells.iter().find(|c| c.right_tableau().shape() == vec![2, 2, 2]).expect("a [2,2,2] cell");
    assert_eq!(cell.len(), dim);
    let kl_gens = cell_matrices_at_one(&table, cell).unwrap();
    for w in Permutation::all(6) {
        let word = w.reduced_word();
        let web_trace = trace_of(&word, &gens, dim);
        assert_eq!(web_trace, trace_of(&word, &kl_gens, dim), "{w}");
        assert_eq!(web_trace, mn_character(&[2, 2, 2], &cycle_type(&w)), "{w}");
    }
}

#[test]
fn character_matches_murnaghan_nakayama_at_n3() {
    let dim = 42;
    let gens: Vec<_> = (1..9).map(|i| generator_matrix(3, i).unwrap()).collect();
    let mut reps: BTreeMap<Vec<usize>, Permutation> = BTreeMap::new();
    for w in Permutation::all(9) {
        reps.entry(cycle_type(&w)).or_insert(w);
        if reps.len() == 30 {
            break;
        }
    }
    // every cycle type appears early except the long ones; fill those in directly
    for ct in tauweb::tableaux::partitions(9) {
        reps.entry(ct.clone()).or_insert_with(|| {
            let mut line = Vec::new();
            let mut next = 1;
            for &len in &ct {
                let block: Vec<usize> = (next..next + len).collect();
                for k in 0..len {
                    line.push(block[(k + 1) % len]);
                }
                next += len;
            }
            Permutation::from_one_line(&line).unwrap()
        });
    }
    assert_eq!(reps.len(), 30);
    for (ct, w) in reps {
        assert_eq!(cycle_type(&w), ct);
        assert_eq!(trace_of(&w.reduced_word(), &gens, dim), mn_character(&[3, 3, 3], &ct), "{ct:?}");
    }
}

#[test]
fn f_web_commutes_with_f_yt() {
    for n in 1..=4 {
        let lookup: HashMap<Vec<u8>, StandardTableau> =
            all_reduced_webs(n).into_iter().map(|(t, w)| (w.canonical_key(), t)).collect();
        for (t, w) in all_reduced_webs(n) {
            for (i, j) in adjacent_pairs(3 * n) {
                if !t.tau().in_domain(i, j) {
                    assert!(f_web(i, j, &w).is_err());
                    continue;
                }
                let image = f_web(i, j, &w).unwrap();
                assert_eq!(lookup[&image.canonical_key()], t.f_yt(i, j).unwrap(), "{t} ({i},{j})");
            }
        }
    }
}

#[test]
fn crossing_shape_and_word() {
    for n in 1..=3 {
        for (t, w) in all_reduced_webs(n) {
            let word = web_to_yamanouchi(&w).unwrap();
            for (i, j) in adjacent_pairs(3 * n) {
                if !t.tau().in_domain(i, j) {
                    continue;
                }
                // s_j W = W + W' + O with W' the only term in D_{j,i}
                let image = apply_generator(j, &sym(&w)).unwrap();
                assert_eq!(image.coeff(&w), 1);
                let x = f_web(i, j, &w).unwrap();
                assert_eq!(image.coeff(&x), 1);
                let in_target = image.terms().filter(|(y, _)| tau_web(y).unwrap().in_domain(j, i)).count();
                assert_eq!(in_target, 1);
                let xw = web_to_yamanouchi(&x).unwrap();
                let allowed = [i, i + 1, j, j + 1];
                for p in 1..=3 * n {
                    if !allowed.contains(&p) {
                        assert_eq!(word.symbols()[p - 1], xw.symbols()[p - 1], "{t} ({i},{j}) at {p}");
                    }
                }
                assert_eq!(f_web(j, i, &x).unwrap().canonical_key(), w.canonical_key());
            }
        }
    }
}

#[test]
fn keys_and_words_agree_on_reduced_terms() {
    let mut by_key: HashMap<Vec<u8>, String> = HashMap::new();
    let mut by_word: HashMap<String, Vec<u8>> = HashMap::new();
    for (_, w) in all_reduced_webs(3) {
        for i in 1..9 {
            for (x, _) in apply_generator(i, &sym(&w)).unwrap().terms() {
                assert!(x.is_reduced());
                let k = x.canonical_key();
                let word = web_to_yamanouchi(x).unwrap().to_string();
                assert_eq!(by_key.entry(k.clone()).or_insert_with(|| word.clone()), &word);
                assert_eq!(by_word.entry(word).or_insert(k.clone()), &k);
            }
        }
    }
}

#[test]
fn permutation_action_example() {
    // s_2 s_1 on the web of 13/25/46: s_1 acts first
    let w = web("13/25/46");
    let raw = [w.clone(), w.double_y(1).unwrap(), w.double_y(2).unwrap(), w.double_y(1).unwrap().double_y(2).unwrap()];
    assert_eq!(raw.iter().filter(|x| x.is_reduced()).count(), 1);
    let r = apply_word(&[2, 1], &sym(&w)).unwrap();
    let mut want = WebSum::<Symmetric>::zero(6);
    for s in ["13/25/46", "14/25/36", "12/35/46"] {
        want.add_term(web(s), -1);
    }
    assert_eq!(r, want);
    let mut direct = WebSum::<Symmetric>::zero(6);
    for x in raw {
        direct.add_term(x, 1);
    }
    assert_eq!(reduce(&direct), want);
}

#[test]
fn section_nine_table() {
    let w1 = web("135/247/689");
    assert_eq!(tau(&w1), vec![1, 3, 5, 7]);
    let same: Vec<Web> =
        all_reduced_webs(3).into_iter().map(|(_, w)| w).filter(|w| tau(w) == vec![1, 3, 5, 7]).collect();
    assert_eq!(same.len(), 2);
    let w2 = same.into_iter().find(|w| w.canonical_key() != w1.canonical_key()).unwrap();
    assert_eq!(tau(&f_web(1, 2, &w1).unwrap()), vec![2, 5, 7]);
    assert_eq!(tau(&f_web(1, 2, &w2).unwrap()), vec![2, 3, 5, 7]);
    let w3 = web("1,3,7,9/2,5,8,11/4,6,10,12");
    assert_eq!(tau(&w3), vec![1, 3, 5, 7, 9, 11]);
    let a = f_web(7, 6, &w3).unwrap();
    assert_eq!(tau(&a), vec![1, 3, 6, 9, 11]);
    assert_eq!(tau(&f_web(1, 2, &a).unwrap()), vec![2, 3, 6, 9, 11]);
}

#[test]
fn search_n1_is_empty_by_direct_reduction() {
    let w = Web::tripod();
    for k in 1..=2 {
        let r = apply_generator(k, &sym(&w)).unwrap();
        assert_eq!(r.coeff(&w), -1);
        assert_eq!(r.len(), 1);
    }
    assert!(find_negative_coefficients(1, &SearchOptions::default()).is_empty());
}

fn random_unreduced() -> impl Strategy<Value = Web> {
    (1usize..=3)
        .prop_flat_map(|n| {
            let count = all_reduced_webs(n).len();
            (Just(n), 0..count, prop::collection::vec(1..3 * n, 0..5))
        })
        .prop_map(|(n, idx, word)| {
            let mut w = all_reduced_webs(n).swap_remove(idx).1;
            for i in word {
                w = w.double_y(i).unwrap();
            }
            w
        })
}

/// Same web with internal vertices and edges renumbered and rotations started elsewhere.
fn relabel(w: &Web, seed: u64) -> Web {
    let nv = w.vertex_count();
    let b = w.boundary_count();
    let mut vperm: Vec<usize> = (0..nv).collect();
    let mut eperm: Vec<usize> = (0..w.edge_count()).collect();
    let mut state = seed | 1;
    let mut rnd = |m: usize| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % m as u64) as usize
    };
    for k in (b + 1..nv).rev() {
        let r = b + rnd(k - b + 1);
        vperm.swap(k, r);
    }
    for k in (1..eperm.len()).rev() {
        let r = rnd(k + 1);
        eperm.swap(k, r);
    }
    let mut kinds = vec![VertexKind::Boundary; nv];
    let mut rotation = vec![Vec::new(); nv];
    for v in 0..nv {
        kinds[vperm[v]] = w.kinds()[v];
        let mut rot: Vec<usize> = w.rotation(v).into_iter().map(|e| eperm[e]).collect();
        let len = rot.len();
        rot.rotate_left(rnd(len));
        rotation[vperm[v]] = rot;
    }
    let mut edges = vec![(0, 0); w.edge_count()];
    for (e, (a, h)) in w.edges().into_iter().enumerate() {
        edges[eperm[e]] = (vperm[a], vperm[h]);
    }
    Web::new(b, kinds, edges, rotation).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_confluent(w in random_unreduced(), seed in any::<u64>()) {
        let s = WebSum::<Symmetric>::from_web(w.clone());
        let base = reduce_with(&s, ReductionOrder::Innermost);
        prop_assert_eq!(&reduce_with(&s, ReductionOrder::Outermost), &base);
        prop_assert_eq!(&reduce_with(&s, ReductionOrder::Scrambled(seed)), &base);
        let q = WebSum::<QuantumBraid>::from_web(w);
        prop_assert_eq!(reduce_with(&q, ReductionOrder::Scrambled(seed)), reduce_with(&q, ReductionOrder::Innermost));
    }

    #[test]
    fn shared_vertices_persist(w in random_unreduced()) {
        let b = w.boundary_count();
        let shared: Vec<usize> = (1..b)
            .filter(|&p| w.boundary_neighbor(p) == w.boundary_neighbor(p + 1))
            .collect();
        for (x, _) in reduce(&WebSum::<Symmetric>::from_web(w.clone())).terms() {
            let t: TauSet = tau_web(x).unwrap();
            for &p in &shared {
                prop_assert!(t.contains(p));
            }
        }
    }

    #[test]
    fn keys_ignore_labelling(w in random_unreduced(), seed in any::<u64>()) {
        let r = relabel(&w, seed);
        prop_assert_eq!(r.canonical_key(), w.canonical_key());
    }

    #[test]
    fn text_round_trip(w in random_unreduced()) {
        let s = w.to_text();
        let back = Web::from_text(&s).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.to_text(), s);
    }

    #[test]
    fn kk_round_trip_random(n in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let all = StandardTableau::all_of_shape(&[n, n, n]);
        let t = all[pick.index(all.len())].clone();
        let w = tableau_to_web(&t).unwrap();
        prop_assert!(w.is_reduced());
        prop_assert_eq!(web_to_tableau(&w).unwrap(), t);
    }
}
