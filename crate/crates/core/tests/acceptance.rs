//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any of them fails unexpectedly.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use nesto::buildset::{full_mask, labels};
use nesto::families::{
    binary_tree_building, branched_tree, complete_graph, cycle_graph, fa_fh_ft_series, fa_series, g_polynomial,
    graph_h_polynomial, hedgehog, path_graph, path_like, plane_binary_trees, stanley_pitman, star_graph, t_series,
    tree_gamma_survey, zonotope_face_polys, MarkedGraph, ZonotopeFaces,
};
use nesto::gamma::gamma_chordal;
use nesto::nestcplx::{
    b_permutations, count_b_trees, enumerate_b_trees, f_recurrence_contraction, f_recurrence_contraction_cached,
    f_recurrence_restriction, f_tilde_from_f, h_via_descents, nested_complex_fvector, BTree, ContractionCache,
};
use nesto::poly::{gamma_from_h, h_from_f, multiset_eulerian};
use nesto::preposet::{count_linear_extensions, generalized_eulerian, h_of_poset_fan, is_complete_fan, poset_descents, Poset};
use nesto::series::{simon_newcomb_series, Truncation};
use nesto::{graphical_building, BuildingSet, Graph, IntPolynomial, SubsetMask};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

// ---------------------------------------------------------------------------
// oracles

fn p(cs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(cs)
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

fn fact(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Lexicographic successor; works for words with repeated letters.
fn next_perm(w: &mut [usize]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// All rearrangements of a sorted word.
fn arrangements(mut w: Vec<usize>) -> Vec<Vec<usize>> {
    let mut out = vec![w.clone()];
    while next_perm(&mut w) {
        out.push(w.clone());
    }
    out
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    arrangements((1..=n).collect())
}

fn descents(w: &[usize]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

fn weak_descents(w: &[usize]) -> usize {
    w.windows(2).filter(|p| p[0] >= p[1]).count()
}

fn count_poly(stats: impl Iterator<Item = usize>) -> IntPolynomial {
    let mut counts = Vec::new();
    for s in stats {
        if counts.len() <= s {
            counts.resize(s + 1, 0i64);
        }
        counts[s] += 1;
    }
    p(&counts)
}

fn eulerian(n: usize) -> IntPolynomial {
    count_poly(perms(n).iter().map(|w| descents(w)))
}

/// No double descent and a final ascent.
fn in_s_hat(w: &[usize]) -> bool {
    let n = w.len();
    let no_double = w.windows(3).all(|x| !(x[0] > x[1] && x[1] > x[2]));
    no_double && (n < 2 || w[n - 2] < w[n - 1])
}

fn narayana(n: usize) -> IntPolynomial {
    p(&(0..n).map(|k| binom(n, k) * binom(n, k + 1) / n as i64).collect::<Vec<_>>())
}

fn catalan(r: usize) -> i64 {
    binom(2 * r, r) / (r as i64 + 1)
}

fn d_of(b: &BuildingSet) -> usize {
    b.ground_size() - b.b_max().len()
}

fn gamma_poly(h: &IntPolynomial, d: usize) -> Result<IntPolynomial, String> {
    gamma_from_h(h, d).map(|g| g.gamma).map_err(err)
}

fn descent_pairs_of_word(w: &[usize]) -> BTreeSet<(usize, usize)> {
    w.windows(2).filter(|x| x[0] > x[1]).map(|x| (x[0], x[1])).collect()
}

/// `Σ_σ t^{#{edges c → parent p : σ(c) > σ(p)}}`.
fn tree_eulerian(t: &BTree) -> IntPolynomial {
    let n = t.n();
    let edges: Vec<(usize, usize)> = (1..=n).filter_map(|v| t.parent(v).map(|q| (v, q))).collect();
    count_poly(perms(n).iter().map(|s| edges.iter().filter(|&&(c, q)| s[c - 1] > s[q - 1]).count()))
}

fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in min..=total {
        for mut rest in compositions(total - first, parts - 1, min) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// random building sets

/// A subset with at least two elements (all of `[n]` when `n < 2`).
fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> SubsetMask {
    if n < 2 {
        return full_mask(n);
    }
    loop {
        let m = rng.gen_range(1..=full_mask(n));
        if m.count_ones() >= 2 {
            return m;
        }
    }
}

fn random_building(rng: &mut ChaCha8Rng, n: usize, connected: bool) -> BuildingSet {
    let k = rng.gen_range(0..=2 * n);
    let mut gens: Vec<SubsetMask> = (0..k).map(|_| random_subset(rng, n)).collect();
    if connected {
        gens.push(full_mask(n));
    }
    BuildingSet::generated_by(n, full_mask(n), gens).unwrap()
}

fn suffixes(m: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    // the bits at or above each member of `m`
    (0..64).filter(move |i| m >> i & 1 == 1).map(move |i| m & !((1u64 << i) - 1))
}

/// Connected and closed under suffixes: add generators, then close under
/// unions and suffixes until nothing changes.
fn random_chordal(rng: &mut ChaCha8Rng, n: usize) -> BuildingSet {
    let k = rng.gen_range(0..=n);
    let mut gens: Vec<SubsetMask> = (0..k).map(|_| random_subset(rng, n)).collect();
    gens.push(full_mask(n));
    loop {
        let b = BuildingSet::generated_by(n, full_mask(n), gens.iter().copied()).unwrap();
        let closed: HashSet<SubsetMask> = b.members().iter().flat_map(|&m| suffixes(m)).collect();
        if closed.iter().all(|&m| b.contains(m)) {
            return b;
        }
        gens = closed.into_iter().collect();
    }
}

fn is_graphical(b: &BuildingSet) -> bool {
    let edges: Vec<(usize, usize)> = b
        .members()
        .iter()
        .filter(|m| m.count_ones() == 2)
        .map(|&m| {
            let l = labels(m);
            (l[0], l[1])
        })
        .collect();
    let g = Graph::from_edges(b.n(), &edges).unwrap();
    graphical_building(&g).map(|gb| gb.members() == b.members()).unwrap_or(false)
}

fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .into_par_iter()
        .filter_map(|choice| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| choice >> k & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            g.is_connected().then_some(g)
        })
        .collect()
}

/// Every connected building set on `[n]`: start from the minimal one and
/// repeatedly close under adding one more subset.
fn all_connected_buildings(n: usize) -> Vec<BuildingSet> {
    let full = full_mask(n);
    let start = BuildingSet::generated_by(n, full, [full]).unwrap();
    let candidates: Vec<SubsetMask> = (1..full).filter(|m: &u64| m.count_ones() >= 2).collect();
    let mut seen: HashSet<Vec<SubsetMask>> = HashSet::new();
    seen.insert(start.members().to_vec());
    let mut frontier = vec![start];
    let mut out = Vec::new();
    while !frontier.is_empty() {
        let next: Vec<BuildingSet> = frontier
            .par_iter()
            .flat_map_iter(|b| {
                candidates
                    .iter()
                    .filter(|&&s| !b.contains(s))
                    .map(|&s| BuildingSet::generated_by(n, full, b.members().iter().copied().chain([s])).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        out.append(&mut frontier);
        for b in next {
            if seen.insert(b.members().to_vec()) {
                frontier.push(b);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// criteria

fn hexagonal_prism() -> Outcome {
    let g = Graph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (1, 4)]).map_err(err)?;
    let ZonotopeFaces::Simple { f, h, gamma } = zonotope_face_polys(&g) else {
        return Err("zonotope reported as not simple".into());
    };
    ensure!(f == p(&[12, 18, 8, 1]), "f = {f}");
    ensure!(h == p(&[1, 5, 5, 1]), "h = {h}");
    ensure!(gamma == p(&[1, 2]), "gamma = {gamma}");
    let listed: [(&str, usize); 12] = [
        ("2<3<1<4", 1),
        ("3<2<1<4", 2),
        ("4<1<2<3", 1),
        ("4<1<3<2", 2),
        ("1<2<3 and 1<4", 0),
        ("1<3<2 and 1<4", 1),
        ("2<3<1 and 4<1", 2),
        ("3<2<1 and 4<1", 3),
        ("2<1<3 and 1<4", 1),
        ("3<1<2 and 1<4", 1),
        ("3<1<2 and 4<1", 2),
        ("2<1<3 and 4<1", 2),
    ];
    let fan: Vec<Poset> = listed.iter().map(|(s, _)| Poset::from_chains(4, s)).collect::<Result<_, _>>().map_err(err)?;
    for ((s, d), q) in listed.iter().zip(&fan) {
        ensure!(poset_descents(q) == *d, "des({s}) = {}, expected {d}", poset_descents(q));
    }
    let hf = h_of_poset_fan(&fan).map_err(err)?;
    ensure!(hf == h, "h from posets = {hf}");
    // n!·h is the sum of the generalized Eulerian polynomials of the cones
    let eul: Vec<IntPolynomial> = fan.iter().map(generalized_eulerian).collect::<Result<_, _>>().map_err(err)?;
    let total: IntPolynomial = eul.iter().cloned().sum();
    ensure!(total == h.scale(&BigInt::from(24)), "Σ A_Q = {total}");
    // by type: 4 chains, then vee, wedge, wye, lambda
    let by_type = |range: std::ops::Range<usize>| -> Vec<IntPolynomial> { eul[range].to_vec() };
    ensure!(by_type(0..4).iter().all(|a| *a == eulerian(4)), "chains: {:?}", by_type(0..4));
    // vee and wedge are opposite posets, and every A_Q is palindromic
    let vee = &eul[4];
    ensure!(by_type(4..8).iter().all(|a| a == vee), "vee/wedge: {:?}", by_type(4..8));
    ensure!(*vee == p(&[3, 9, 9, 3]), "A_vee = {vee}");
    ensure!(vee + vee == p(&[3, 10, 8, 3]) + p(&[3, 8, 10, 3]), "A_vee + A_wedge = {}", vee + vee);
    ensure!(by_type(8..12).iter().all(|a| *a == p(&[2, 10, 10, 2])), "wye/lambda: {:?}", by_type(8..12));
    for (q, a) in fan.iter().zip(&eul) {
        let covers = q.covers();
        let brute = count_poly(perms(4).iter().map(|w| covers.iter().filter(|&&(i, j)| w[i - 1] > w[j - 1]).count()));
        ensure!(*a == brute, "A_Q = {a}, brute force {brute}");
    }
    Ok(format!("f = {f}, h = {h}, gamma = {gamma}"))
}

fn permutohedra() -> Outcome {
    for n in 1..=7 {
        let b = graphical_building(&complete_graph(n)).map_err(err)?;
        let h = h_via_descents(&b).map_err(err)?;
        ensure!(h == eulerian(n), "n = {n}: h = {h}");
        let g = gamma_chordal(&b).map_err(err)?;
        let want = count_poly(perms(n).iter().filter(|w| in_s_hat(w)).map(|w| descents(w)));
        ensure!(g == want, "n = {n}: gamma = {g}, expected {want}");
    }
    Ok("n = 1..7".into())
}

fn associahedra() -> Outcome {
    for n in 1..=9 {
        let b = graphical_building(&path_graph(n)).map_err(err)?;
        let h = h_via_descents(&b).map_err(err)?;
        ensure!(h == narayana(n), "n = {n}: h = {h}");
        let f = f_recurrence_restriction(&b).map_err(err)?;
        let want: Vec<i64> = (0..n).map(|k| binom(n - 1, k) * binom(2 * n - k, n) / (n as i64 + 1)).collect();
        ensure!(f == p(&want), "n = {n}: f = {f}");
        let want = p(&(0..=(n - 1) / 2).map(|r| catalan(r) * binom(n - 1, 2 * r)).collect::<Vec<_>>());
        let g = gamma_chordal(&b).map_err(err)?;
        ensure!(g == want, "n = {n}: gamma_chordal = {g}, expected {want}");
        let g = gamma_poly(&h, n - 1)?;
        ensure!(g == want, "n = {n}: gamma from h = {g}, expected {want}");
    }
    Ok("n = 1..9".into())
}

fn cycle_data(n: usize) -> Result<(IntPolynomial, IntPolynomial), String> {
    let b = graphical_building(&cycle_graph(n)).map_err(err)?;
    let h = h_via_descents(&b).map_err(err)?;
    let g = gamma_poly(&h, n - 1)?;
    Ok((h, g))
}

fn cyclohedron_h(m: usize) -> IntPolynomial {
    p(&(0..=m).map(|k| binom(m, k) * binom(m, k)).collect::<Vec<_>>())
}

fn cyclohedron_gamma(m: usize) -> IntPolynomial {
    p(&(0..=m / 2).map(|r| fact(m) / (fact(r) * fact(r) * fact(m - 2 * r))).collect::<Vec<_>>())
}

/// As stated: `h = Σ C(n,k)² t^k` and `γ_r = n!/(r! r! (n-2r)!)`.
fn cyclohedra() -> Outcome {
    for n in 3..=7 {
        let (h, g) = cycle_data(n)?;
        ensure!(h == cyclohedron_h(n), "n = {n}: h = {h}, expected {}", cyclohedron_h(n));
        ensure!(g == cyclohedron_gamma(n), "n = {n}: gamma = {g}, expected {}", cyclohedron_gamma(n));
    }
    Ok("n = 3..7".into())
}

/// The same identities with `n - 1` in place of `n`.
fn cyclohedra_shifted() -> Outcome {
    for n in 3..=7 {
        let (h, g) = cycle_data(n)?;
        ensure!(h == cyclohedron_h(n - 1), "n = {n}: h = {h}");
        ensure!(g == cyclohedron_gamma(n - 1), "n = {n}: gamma = {g}");
    }
    Ok("h = Σ C(n-1,k)² t^k and γ_r = (n-1)!/(r!² (n-1-2r)!) hold for n = 3..7".into())
}

fn stellohedra() -> Outcome {
    for m in 1..=7 {
        let b = graphical_building(&star_graph(m)).map_err(err)?;
        let want: i64 = (0..=m).map(|r| fact(m) / fact(r)).sum();
        let count = count_b_trees(&b).map_err(err)?;
        ensure!(count == want as u128, "m = {m}: {count} vertices, expected {want}");
        let mut hw = IntPolynomial::one();
        for r in 1..=m {
            hw += eulerian(r).mul_t_pow(1).scale(&BigInt::from(binom(m, r)));
        }
        let h = h_via_descents(&b).map_err(err)?;
        ensure!(h == hw, "m = {m}: h = {h}, expected {hw}");
    }
    Ok("m = 1..7".into())
}

fn cubes() -> Outcome {
    let check = |b: &BuildingSet, what: &str| -> Result<(), String> {
        let n = b.n();
        let cube_h = p(&[1, 1]).pow(n - 1);
        let h = h_via_descents(b).map_err(err)?;
        ensure!(h == cube_h, "{what}: h = {h}");
        let hf = h_from_f(&f_recurrence_restriction(b).map_err(err)?, n - 1).map_err(err)?;
        ensure!(hf == cube_h, "{what}: h from f = {hf}");
        let g = gamma_poly(&h, n - 1)?;
        ensure!(g.is_one(), "{what}: gamma = {g}");
        let f = nested_complex_fvector(b).map_err(err)?.f;
        ensure!(f == p(&[2, 1]).pow(n - 1), "{what}: f = {f}");
        Ok(())
    };
    for n in 1..=8 {
        check(&stanley_pitman(n), &format!("Stanley-Pitman n = {n}"))?;
    }
    let mut count = 0;
    for leaves in 1..=6 {
        for tau in plane_binary_trees(leaves) {
            check(&binary_tree_building(&tau), &format!("{tau:?}"))?;
            count += 1;
        }
    }
    Ok(format!("Stanley-Pitman n = 1..8, {count} plane binary trees"))
}

fn three_way(b: &BuildingSet, cache: &ContractionCache) -> Result<(), String> {
    let fe = nested_complex_fvector(b).map_err(err)?.f;
    let fr = f_recurrence_restriction(b).map_err(err)?;
    let fc = f_recurrence_contraction_cached(b, cache).map_err(err)?;
    ensure!(fe == fr && fr == fc, "{:?}: enumeration {fe}, restriction {fr}, contraction {fc}", b.member_labels());
    Ok(())
}

fn f_agreement() -> Outcome {
    let cache = ContractionCache::new();
    let mut graphs = 0;
    for n in 1..=6 {
        let gs = connected_graphs(n);
        graphs += gs.len();
        gs.par_iter().try_for_each(|g| three_way(&graphical_building(g).map_err(err)?, &cache))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut random = Vec::new();
    while random.len() < 200 {
        let n = rng.gen_range(3..=7);
        let connected = rng.gen_bool(0.75);
        let b = random_building(&mut rng, n, connected);
        if !is_graphical(&b) {
            random.push(b);
        }
    }
    random.par_iter().try_for_each(|b| three_way(b, &cache))?;
    Ok(format!("{graphs} connected graphs, {} non-graphical buildings", random.len()))
}

fn chordal_theory() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut seen: HashSet<Vec<SubsetMask>> = HashSet::new();
    let mut buildings: Vec<BuildingSet> = Vec::new();
    while buildings.len() < 200 {
        let n = rng.gen_range(1..=7);
        let b = random_chordal(&mut rng, n);
        if seen.insert(b.members().to_vec()) {
            buildings.push(b);
        }
    }
    buildings.par_iter().try_for_each(|b| -> Result<(), String> {
        let name = format!("{:?}", b.member_labels());
        ensure!(b.is_chordal(), "{name} is not chordal");
        let trees = enumerate_b_trees(b).map_err(err)?;
        let mut lex: Vec<Vec<usize>> = Vec::new();
        for t in &trees {
            let w = t.lex_min_extension();
            let tree_des: BTreeSet<(usize, usize)> = t.descent_pairs().into_iter().collect();
            ensure!(descent_pairs_of_word(&w) == tree_des, "{name}: Des({w:?}) differs from Des(T) = {tree_des:?}");
            lex.push(w);
        }
        lex.sort();
        let mut bp = b_permutations(b).map_err(err)?;
        bp.sort();
        ensure!(lex == bp, "{name}: B-permutations differ from lex-min extensions");
        let h = h_via_descents(b).map_err(err)?;
        let g = gamma_chordal(b).map_err(err)?;
        let gh = gamma_poly(&h, d_of(b))?;
        ensure!(g == gh, "{name}: gamma_chordal = {g}, gamma from h = {gh}");
        ensure!(g.is_nonnegative(), "{name}: gamma = {g}");
        Ok(())
    })?;
    Ok(format!("{} distinct chordal buildings", buildings.len()))
}

fn f_tilde(g: &Graph) -> Result<IntPolynomial, String> {
    let b = graphical_building(g).map_err(err)?;
    let f = f_recurrence_contraction(&b).map_err(err)?;
    f_tilde_from_f(&f, d_of(&b)).map_err(err)
}

fn series_identities() -> Outcome {
    let mut checked = 0;
    // T series against B-permutation descents
    for k in 1..=7 {
        let per = (9 - k) as u32;
        let s = t_series(k, &Truncation { per_var: vec![per; k], total: Some(7 + k as u32) }).map_err(err)?;
        for total in k..=7 {
            for a in compositions(total, k, 1) {
                let b = graphical_building(&branched_tree(&a)).map_err(err)?;
                let e: Vec<u32> = a.iter().map(|&x| x as u32 + 1).collect();
                let c = s.coeff(&e);
                let h = h_via_descents(&b).map_err(err)?;
                ensure!(c == h, "T_{a:?}: series {c}, descents {h}");
                let v = count_b_trees(&b).map_err(err)?;
                ensure!(c.total() == BigInt::from(v), "T_{a:?}: {} at t = 1, {v} B-trees", c.total());
                checked += 1;
            }
        }
    }
    let fa = fa_series(10).map_err(err)?;
    ensure!(fa.coeff(2) == p(&[1]), "F_A x^2: {}", fa.coeff(2));
    ensure!(fa.coeff(3) == p(&[1, 2]), "F_A x^3: {}", fa.coeff(3));
    ensure!(fa.coeff(4) == p(&[1, 5, 5]), "F_A x^4: {}", fa.coeff(4));
    for n in 1..=9 {
        let want = f_tilde(&path_graph(n))?;
        ensure!(fa.coeff(n + 1) == want, "F_A x^{}: {}, expected {want}", n + 1, fa.coeff(n + 1));
    }
    // F_T and F_H, zero parts allowed
    for k in 1..=4 {
        let (_, ft, fh) = fa_fh_ft_series(k, &Truncation::total(k, 8 + k as u32)).map_err(err)?;
        for total in 0..=8 {
            for a in compositions(total, k, 0) {
                if total <= 7 {
                    let e: Vec<u32> = a.iter().map(|&x| x as u32 + 1).collect();
                    let want = f_tilde(&branched_tree(&a))?;
                    ensure!(ft.coeff(&e) == want, "F_T at {a:?}: {}, expected {want}", ft.coeff(&e));
                }
                let e: Vec<u32> = a.iter().map(|&x| x as u32).collect();
                let want = match hedgehog(&a) {
                    Some(g) => f_tilde(&g)?,
                    None => IntPolynomial::zero(),
                };
                ensure!(fh.coeff(&e) == want, "F_H at {a:?}: {}, expected {want}", fh.coeff(&e));
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} coefficients"))
}

fn g_lists() -> Outcome {
    let point = MarkedGraph::point();
    let d_arm = MarkedGraph::new(path_graph(3), 2);
    let cases: Vec<(&str, MarkedGraph, MarkedGraph, Vec<Vec<i64>>)> = vec![
        ("D_n", d_arm.clone(), point.clone(), vec![vec![2], vec![-1, -1], vec![0, -1]]),
        (
            "affine D",
            d_arm.clone(),
            d_arm,
            vec![vec![4], vec![-4, -4], vec![1, -2, 1], vec![0, 2, 2], vec![0, 0, 1]],
        ),
        ("Kite_{n,3}", MarkedGraph::new(complete_graph(3), 1), point.clone(), vec![vec![2], vec![-1, -1]]),
        (
            "Daisy_{n,3}",
            MarkedGraph::new(star_graph(3), 4),
            point.clone(),
            vec![vec![6], vec![-6, -6], vec![1, -5, 1], vec![0, -1, -1]],
        ),
        (
            "Daisy_{n,4}",
            MarkedGraph::new(star_graph(4), 5),
            point,
            vec![vec![24], vec![-36, -36], vec![14, -16, 14], vec![-1, 3, 3, -1], vec![0, -1, -1, -1]],
        ),
    ];
    for (name, a, b, want) in cases {
        let g = g_polynomial(&a, &b).map_err(err)?;
        let mut got = g.g.clone();
        while got.last().is_some_and(IntPolynomial::is_zero) {
            got.pop();
        }
        let want: Vec<IntPolynomial> = want.iter().map(|c| p(c)).collect();
        ensure!(got == want, "{name}: g = {g}");
        // one more n beyond those the solver saw
        let n = 2 * g.n0 + 4;
        let h = graph_h_polynomial(&path_like(&a, &b, n).map_err(err)?).map_err(err)?;
        ensure!(g.expand(n) == h, "{name}: expansion at n = {n} gives {}, direct {h}", g.expand(n));
    }
    Ok("D_n, affine D, Kite_{n,3}, Daisy_{n,3}, Daisy_{n,4}".into())
}

fn simon_newcomb() -> Outcome {
    let mut checked = 0;
    for k in 1..=8 {
        let s = simon_newcomb_series(k, Truncation { per_var: vec![(9 - k) as u32; k], total: Some(8) }).map_err(err)?;
        for m in k..=8 {
            for c in compositions(m, k, 1) {
                let e: Vec<u32> = c.iter().map(|&x| x as u32).collect();
                let a = multiset_eulerian(&c).map_err(err)?;
                ensure!(s.coeff(&e) == a, "c = {c:?}: series {}, multiset_eulerian {a}", s.coeff(&e));
                let word: Vec<usize> = c.iter().enumerate().flat_map(|(i, &x)| std::iter::repeat(i).take(x)).collect();
                let words = arrangements(word);
                let brute = count_poly(words.iter().map(|w| descents(w)));
                ensure!(a == brute, "c = {c:?}: A_c = {a}, brute force {brute}");
                let dual = count_poly(words.iter().map(|w| weak_descents(w) + 1));
                let rev = a.reversed(m).map_err(err)?;
                ensure!(dual == rev, "c = {c:?}: dual {dual}, t^m A_c(1/t) = {rev}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} multisets"))
}

fn fan_checker() -> Outcome {
    let listed = [
        "1,2<3<4", "1,2<4<3", "3,4<1<2", "3,4<2<1", "1<4<2,3", "4<1<2,3", "2<3<1,4", "3<2<1,4", "1<3<2<4", "1<3<4<2",
        "3<1<2<4", "3<1<4<2", "2<4<1<3", "2<4<3<1", "4<2<1<3", "4<2<3<1",
    ];
    let fan: Vec<Poset> = listed.iter().map(|s| Poset::from_chains(4, s)).collect::<Result<_, _>>().map_err(err)?;
    ensure!(fan.iter().all(Poset::is_tree_poset), "not all tree-posets");
    let diag = is_complete_fan(&fan).map_err(err)?;
    ensure!(diag.is_complete(), "{diag:?}");
    for i in 0..fan.len() {
        let mut rest = fan.clone();
        rest.remove(i);
        let diag = is_complete_fan(&rest).map_err(err)?;
        ensure!(diag.gap.is_some(), "without {}: {diag:?}", listed[i]);
    }
    Ok("complete; each removal leaves a gap".into())
}

fn properties() -> Outcome {
    let mut corpus: Vec<BuildingSet> = Vec::new();
    for n in 1..=5 {
        corpus.extend(all_connected_buildings(n));
    }
    let exhaustive = corpus.len();
    for g in connected_graphs(6) {
        corpus.push(graphical_building(&g).map_err(err)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut seen: HashSet<Vec<SubsetMask>> = corpus.iter().filter(|b| b.n() == 6).map(|b| b.members().to_vec()).collect();
    for _ in 0..300 {
        let b = random_building(&mut rng, 6, true);
        if seen.insert(b.members().to_vec()) {
            corpus.push(b);
        }
    }
    // palindromic h and the linear-extension fibres
    corpus.par_iter().try_for_each(|b| -> Result<(), String> {
        let name = format!("{:?}", b.member_labels());
        let n = b.n();
        let h = h_from_f(&f_recurrence_restriction(b).map_err(err)?, n - 1).map_err(err)?;
        ensure!(h.is_palindromic(n - 1), "{name}: h = {h}");
        let trees = enumerate_b_trees(b).map_err(err)?;
        let fibres: u64 = trees.iter().map(|t| count_linear_extensions(&t.to_poset())).sum();
        ensure!(fibres == fact(n) as u64, "{name}: Σ|L(T)| = {fibres}");
        ensure!(h.total() == BigInt::from(trees.len()), "{name}: h(1) = {}, {} B-trees", h.total(), trees.len());
        Ok(())
    })?;
    // average identity: everything up to n = 4, a sample at n = 5 and 6
    let mut sample: Vec<&BuildingSet> = corpus.iter().filter(|b| b.n() <= 4).collect();
    sample.extend(corpus.iter().filter(|b| b.n() == 5).step_by(101));
    sample.extend(corpus.iter().filter(|b| b.n() == 6).step_by(97));
    sample.par_iter().try_for_each(|b| -> Result<(), String> {
        let n = b.n();
        let h = h_via_descents(b).map_err(err)?;
        let sum: IntPolynomial = enumerate_b_trees(b).map_err(err)?.iter().map(tree_eulerian).sum();
        ensure!(sum == h.scale(&BigInt::from(fact(n))), "{:?}: Σ A_T = {sum}, h = {h}", b.member_labels());
        Ok(())
    })?;
    // monotonicity on nested pairs
    for _ in 0..200 {
        let n = rng.gen_range(2..=7);
        let small = random_building(&mut rng, n, true);
        let extra: Vec<SubsetMask> = (0..rng.gen_range(1..=3)).map(|_| random_subset(&mut rng, n)).collect();
        let big = BuildingSet::generated_by(n, full_mask(n), small.members().iter().copied().chain(extra)).unwrap();
        let hs = h_from_f(&f_recurrence_restriction(&small).map_err(err)?, n - 1).map_err(err)?;
        let hb = h_from_f(&f_recurrence_restriction(&big).map_err(err)?, n - 1).map_err(err)?;
        ensure!(hs.le_coefficientwise(&hb), "{:?} ⊆ {:?}: {hs} vs {hb}", small.member_labels(), big.member_labels());
    }
    Ok(format!(
        "{} buildings ({exhaustive} exhaustive up to n = 5), {} for the average identity, 200 nested pairs",
        corpus.len(),
        sample.len()
    ))
}

fn survey() -> Outcome {
    let s7 = tree_gamma_survey(7).map_err(err)?;
    ensure!(s7.rows.len() == 11, "{} trees on 7 nodes", s7.rows.len());
    ensure!(s7.path_is_unique_min, "path is not the unique minimum");
    ensure!(s7.star_is_unique_max, "star is not the unique maximum");
    let s8 = tree_gamma_survey(8).map_err(err)?;
    ensure!(s8.rows.len() == 23, "{} trees on 8 nodes", s8.rows.len());
    ensure!(!s8.incomparable_pairs.is_empty(), "no incomparable pair on 8 nodes");
    let (i, j) = s8.incomparable_pairs[0];
    Ok(format!(
        "{} incomparable pairs on 8 nodes, e.g. {} {:?} vs {} {:?}",
        s8.incomparable_pairs.len(),
        s8.rows[i].degree_sequence,
        s8.rows[i].gamma,
        s8.rows[j].degree_sequence,
        s8.rows[j].gamma
    ))
}

// ---------------------------------------------------------------------------

struct Criterion {
    name: &'static str,
    run: fn() -> Outcome,
    budget: Option<Duration>,
    /// Stated identity that does not hold; see `note`.
    known_failure: bool,
    note: Option<fn() -> Outcome>,
}

fn criteria() -> Vec<Criterion> {
    let c = |name, run, secs: Option<u64>| Criterion {
        name,
        run,
        budget: secs.map(Duration::from_secs),
        known_failure: false,
        note: None,
    };
    vec![
        c("hexagonal prism", hexagonal_prism as fn() -> Outcome, Some(1)),
        c("permutohedra", permutohedra, Some(30)),
        c("associahedra", associahedra, Some(30)),
        Criterion {
            known_failure: true,
            note: Some(cyclohedra_shifted),
            ..c("cyclohedra", cyclohedra, None)
        },
        c("stellohedra", stellohedra, None),
        c("Stanley-Pitman and binary-tree cubes", cubes, None),
        c("three-way f agreement", f_agreement, Some(300)),
        c("chordal building sets", chordal_theory, None),
        c("series identities", series_identities, Some(120)),
        c("g-polynomials", g_lists, Some(300)),
        c("Simon Newcomb", simon_newcomb, None),
        c("fan checker", fan_checker, None),
        c("property suite", properties, None),
        c("tree survey", survey, None),
    ]
}

fn main() -> ExitCode {
    // numeric arguments select criteria; anything else (test-runner flags) is ignored
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (i, c) in criteria().into_iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let mut outcome = (c.run)();
        let took = start.elapsed();
        if let (Ok(_), Some(b)) = (&outcome, c.budget) {
            if took > b {
                outcome = Err(format!("took {took:.2?}, budget {b:?}"));
            }
        }
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        let tag = match (outcome.is_ok(), c.known_failure) {
            (false, true) => " (known failure)",
            (true, true) => " (expected to fail)",
            _ => "",
        };
        println!("{status} {:>2} {}{tag} [{took:.2?}]: {detail}", i + 1, c.name);
        if outcome.is_ok() == c.known_failure {
            unexpected += 1;
        }
        if let Some(note) = c.note {
            match note() {
                Ok(d) | Err(d) => println!("     info: {d}"),
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
