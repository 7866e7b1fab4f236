//! Cross-validation battery: every closed-form count, bound, and
//! construction in the library is checked against an independent oracle —
//! brute-force enumeration, a second solver, or a direct rank computation.
//! Each check produces a named pass/fail [`CheckOutcome`]; [`run_all_checks`]
//! drives the full battery in a fixed order and is shared by the CLI
//! verification subcommand and the acceptance test suite.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::{
    alpha_exact, alpha_montecarlo, brute_orthogonal_count, brute_rank_k_matrix_count,
    brute_symmetric_rank_census, brute_symplectic_count, census_report, count_bounds_hold,
    graph_total, mr_distribution, mr_le_k_graph_bound, n_rank_k_count, orth_order,
    product_bound_check, symmetric_total, symplectic_order, theta, theta_bounds_hold,
};
use crate::construct::{
    f3_counterexample_graph, k_n_minus_3_construction, large_prime_construction,
    nonprime_construction, verify_f3_counterexample, TrailingCase,
};
use crate::field::Field;
use crate::graph::{self, random_graph_from, Graph};
use crate::linalg::{canonical_rank_forms, symmetric_decompose, BlockSplit, FMatrix};
use crate::minrank::{
    certificate_minrank, exhaustive_minrank_guarded, rank_le_search, RankCertificate,
};

/// Default seed for the randomized portions of the battery. Every randomized
/// check derives its streams from this value plus a fixed offset, so a run is
/// reproducible end to end from one number.
pub const DEFAULT_VERIFY_SEED: u64 = 271_828;

/// Default Monte Carlo sample count for the average-rank trend check.
pub const DEFAULT_MC_SAMPLES: u64 = 200;

/// Pilot-calibrated floor for the n = 20 Monte Carlo estimate at the
/// default seed and sample count (observed value 0.741; the exact n <= 6
/// values are still rising at roughly 0.02 per vertex at that size).
pub const ALPHA_TERMINAL_THRESHOLD: f64 = 0.7;

/// One named verification result.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    /// Stable identifier used as the row key in the verification table.
    pub id: &'static str,
    /// Short human-readable description of what was checked.
    pub name: &'static str,
    pub passed: bool,
    /// Supporting detail: the values compared on success, or what
    /// disagreed on failure.
    pub details: String,
    /// Wall-clock time spent in this check.
    pub millis: u128,
}

/// Knobs for [`run_all_checks`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub mc_samples: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_VERIFY_SEED, mc_samples: DEFAULT_MC_SAMPLES }
    }
}

/// A check body's verdict: `Ok` with supporting detail, or `Err` with what
/// disagreed.
pub type CheckResult = Result<String, String>;

/// A deferred check body from [`check_catalog`].
pub type CheckFn = Box<dyn FnOnce() -> CheckResult>;

/// Runs one check body under a stopwatch and wraps the verdict.
pub fn run_check(id: &'static str, name: &'static str, f: impl FnOnce() -> CheckResult) -> CheckOutcome {
    let start = Instant::now();
    let result = f();
    let millis = start.elapsed().as_millis();
    match result {
        Ok(details) => CheckOutcome { id, name, passed: true, details, millis },
        Err(details) => CheckOutcome { id, name, passed: false, details, millis },
    }
}

/// The full battery as `(id, name, body)` rows in table order, not yet run.
pub fn check_catalog(opts: VerifyOptions) -> Vec<(&'static str, &'static str, CheckFn)> {
    vec![
        ("Lemma 2.1", "orthogonal group orders", Box::new(check_orthogonal_orders)),
        ("Lemma 2.2", "symmetric canonical forms", Box::new(check_canonical_forms)),
        ("Lemma 2.3", "symplectic group orders", Box::new(check_symplectic_orders)),
        ("Lemma 2.4", "independent-tuple counts and bounds", Box::new(check_tuple_counts)),
        ("Lemma 2.5", "binary Euler product band", Box::new(check_product_band)),
        ("Lemma 2.6", "symmetric rank census", Box::new(check_rank_census)),
        ("Theorem 2.7", "average minimum rank trend", {
            Box::new(move || check_alpha_trend(opts.seed, opts.mc_samples))
        }),
        ("Theorem A", "large-prime randomized completion", {
            Box::new(move || check_large_prime(opts.seed))
        }),
        ("Proposition 4.1", "two-vertex attachment witnesses", {
            Box::new(check_attachment_witnesses)
        }),
        ("Theorem 4.2", "ternary counterexample family", Box::new(check_counterexample)),
        ("Theorem 5.1", "non-prime field construction sweep", {
            Box::new(move || check_nonprime_sweep(opts.seed))
        }),
        ("Theorem 6.1", "near-clique rank-4 completion", Box::new(check_rank_four_cases)),
        ("Solvers", "certificate search vs exhaustive enumeration", {
            Box::new(move || check_solver_equivalence(opts.seed))
        }),
    ]
}

/// Runs the full battery in table order.
pub fn run_all_checks(opts: VerifyOptions) -> Vec<CheckOutcome> {
    check_catalog(opts).into_iter().map(|(id, name, body)| run_check(id, name, body)).collect()
}

fn parse_field(name: &str) -> Arc<Field> {
    Arc::new(Field::parse(name).expect("valid field name"))
}

// ============================================================================
// Counting checks
// ============================================================================

/// O(n) formula vs brute-force count of solutions of `Q Q^T = I` over `F_2`.
pub fn check_orthogonal_orders() -> CheckResult {
    let mut spots = String::new();
    for n in 1..=4 {
        let formula = orth_order(n);
        let brute =
            BigUint::from(brute_orthogonal_count(n).map_err(|e| e.to_string())?);
        if formula != brute {
            return Err(format!("O({n}) formula {formula} != brute {brute}"));
        }
        write!(spots, "O({n})={formula} ").expect("string write");
    }
    for (n, expected) in [(3usize, 6u64), (4, 48), (5, 720)] {
        if orth_order(n) != BigUint::from(expected) {
            return Err(format!("O({n}) != {expected}"));
        }
    }
    Ok(format!("formula = brute force for n <= 4: {}", spots.trim_end()))
}

/// |Sym(2n)| brute force vs the closed form O(2n+1), dims 2 and 4.
pub fn check_symplectic_orders() -> CheckResult {
    let mut details = String::new();
    for dim in [2usize, 4] {
        let formula = symplectic_order(dim).map_err(|e| e.to_string())?;
        let brute =
            BigUint::from(brute_symplectic_count(dim).map_err(|e| e.to_string())?);
        let odd = orth_order(dim + 1);
        if formula != brute {
            return Err(format!("Sym({dim}) formula {formula} != brute {brute}"));
        }
        if formula != odd {
            return Err(format!("Sym({dim}) = {formula} != O({}) = {odd}", dim + 1));
        }
        write!(details, "Sym({dim})={formula} ").expect("string write");
    }
    Ok(format!("brute force = O(dim+1): {}", details.trim_end()))
}

/// N(n, k) formula vs brute-force count of rank-k `n x k` matrices over
/// `F_2`, plus the strict two-sided count bounds for all 1 <= k <= n <= 8.
pub fn check_tuple_counts() -> CheckResult {
    let mut verified = 0usize;
    for n in 1..=5usize {
        for k in 1..=n {
            if n * k > 16 {
                continue;
            }
            let formula = n_rank_k_count(n, k);
            let brute =
                BigUint::from(brute_rank_k_matrix_count(n, k).map_err(|e| e.to_string())?);
            if formula != brute {
                return Err(format!("N({n},{k}) formula {formula} != brute {brute}"));
            }
            verified += 1;
        }
    }
    for (n, k, expected) in [(2usize, 1usize, 3u64), (2, 2, 6), (3, 2, 42)] {
        if n_rank_k_count(n, k) != BigUint::from(expected) {
            return Err(format!("N({n},{k}) != {expected}"));
        }
    }
    for n in 1..=8usize {
        for k in 1..=n {
            if !count_bounds_hold(n, k) {
                return Err(format!("count bounds fail at n={n}, k={k}"));
            }
        }
    }
    Ok(format!(
        "N(n,k) = brute force on {verified} pairs; strict bounds hold for 1 <= k <= n <= 8"
    ))
}

/// Partial products `prod (1 - 2^-j)` stay strictly inside (1/4, 1).
pub fn check_product_band() -> CheckResult {
    let mut last = BigRational::one();
    for n in 2..=64usize {
        let (quarter, prod) = product_bound_check(n);
        if prod <= quarter || prod >= BigRational::one() {
            return Err(format!("product escapes (1/4, 1) at n = {n}"));
        }
        if prod >= last {
            return Err(format!("product fails to decrease at n = {n}"));
        }
        last = prod;
    }
    let micro = (last.numer() * num_bigint::BigInt::from(1_000_000)) / last.denom();
    let approx = micro.to_u64().expect("value in (1/4, 1)") as f64 / 1e6;
    Ok(format!(
        "strictly decreasing and inside (1/4, 1) up to n = 64; final ~ {approx:.6}"
    ))
}

/// theta(n, k) formula vs the brute-force rank census for n <= 5, the spot
/// values, the census total, and the strict theta bounds for k <= n <= 8.
pub fn check_rank_census() -> CheckResult {
    for n in 1..=5usize {
        let brute = brute_symmetric_rank_census(n).map_err(|e| e.to_string())?;
        let mut total = BigUint::zero();
        for (k, &count) in brute.iter().enumerate() {
            let formula = theta(n, k).map_err(|e| e.to_string())?;
            if formula != BigUint::from(count) {
                return Err(format!("theta({n},{k}) = {formula} != brute {count}"));
            }
            total += formula;
        }
        if total != symmetric_total(n) {
            return Err(format!("census total mismatch at n = {n}"));
        }
        // The assembled report performs the same cross-checks internally.
        census_report(n, true).map_err(|e| e.to_string())?;
    }
    for (n, k, expected) in [(2usize, 1usize, 3u64), (2, 2, 4)] {
        let v = theta(n, k).map_err(|e| e.to_string())?;
        if v != BigUint::from(expected) {
            return Err(format!("theta({n},{k}) = {v} != {expected}"));
        }
    }
    let mut bound_pairs = 0usize;
    for n in 1..=8usize {
        for k in 1..=n {
            if !theta_bounds_hold(n, k).map_err(|e| e.to_string())? {
                return Err(format!("theta bounds fail at n={n}, k={k}"));
            }
            bound_pairs += 1;
        }
    }
    Ok(format!(
        "formula = brute census for n <= 5; strict bounds hold on {bound_pairs} (n,k) pairs"
    ))
}

/// Scaled average minimum rank: exact spot values for small n, a seeded
/// Monte Carlo trend over n in {8, 12, 16, 20}, dominance of the counting
/// bound over the true graph counts, and the vanishing bound ratio.
pub fn check_alpha_trend(seed: u64, samples: u64) -> CheckResult {
    // Exact values.
    let quarter = BigRational::new(1.into(), 4.into());
    let five_twelfths = BigRational::new(5.into(), 12.into());
    for (n, expected) in [(1usize, BigRational::zero()), (2, quarter), (3, five_twelfths)] {
        let report = alpha_exact(n).map_err(|e| e.to_string())?;
        let exact = report.exact.expect("exact mode");
        if exact != expected {
            return Err(format!("alpha_{n} = {exact} != {expected}"));
        }
    }
    for n in 4..=6usize {
        alpha_exact(n).map_err(|e| e.to_string())?;
    }

    // Monte Carlo trend. The terminal threshold was calibrated by a pilot
    // run at the default seed (alpha_20 ~ 0.741 with 200 samples).
    let ns = [8usize, 12, 16, 20];
    let mut estimates = Vec::new();
    for &n in &ns {
        let report = alpha_montecarlo(n, samples, seed).map_err(|e| e.to_string())?;
        let se = report.stderr.expect("sampled mode");
        estimates.push((n, report.estimate, se));
    }
    let shown: Vec<String> =
        estimates.iter().map(|(n, e, s)| format!("alpha_{n} ~ {e:.3} (se {s:.3})")).collect();
    let shown = shown.join(", ");
    for pair in estimates.windows(2) {
        let (n0, e0, s0) = pair[0];
        let (n1, e1, s1) = pair[1];
        let slack = 3.0 * (s0 * s0 + s1 * s1).sqrt();
        if e1 < e0 - slack {
            return Err(format!(
                "estimate drops beyond 3 SE from alpha_{n0} to alpha_{n1}: {shown}"
            ));
        }
    }
    let (_, last_estimate, _) = *estimates.last().expect("nonempty");
    if last_estimate <= ALPHA_TERMINAL_THRESHOLD {
        return Err(format!(
            "alpha_20 estimate {last_estimate:.4} <= {ALPHA_TERMINAL_THRESHOLD}: {shown}"
        ));
    }

    // The counting bound dominates the true number of graphs with mr <= k.
    for n in 2..=6usize {
        let dist = mr_distribution(n).map_err(|e| e.to_string())?;
        for k in 1..n {
            let cumulative: u64 = dist[..=k].iter().sum();
            if BigUint::from(cumulative) > mr_le_k_graph_bound(n, k) {
                return Err(format!("count bound undercounts at n={n}, k={k}"));
            }
        }
    }

    // The bound-to-total ratio k * bound / 2^C(n,2) eventually vanishes.
    for (num, den) in [(1usize, 2usize), (3, 4)] {
        let mut ratios = Vec::new();
        for n in (8..=60).step_by(4) {
            let k = (n * num / den).max(1);
            let ratio = BigRational::new(
                (BigUint::from(k) * mr_le_k_graph_bound(n, k)).into(),
                graph_total(n).into(),
            );
            ratios.push(ratio);
        }
        for pair in ratios[2..].windows(2) {
            if pair[1] >= pair[0] {
                return Err(format!("bound ratio stops decreasing for t = {num}/{den}"));
            }
        }
        let last = ratios.last().expect("nonempty");
        if *last >= BigRational::new(1.into(), (BigUint::one() << 30u32).into()) {
            return Err(format!("bound ratio stays above 2^-30 for t = {num}/{den}"));
        }
        if last >= ratios.first().expect("nonempty") {
            return Err(format!("bound ratio fails to drop overall for t = {num}/{den}"));
        }
    }

    Ok(format!("exact spots 0, 1/4, 5/12; MC trend with seed {seed}, {samples} samples: {shown}"))
}

// ============================================================================
// Canonical forms
// ============================================================================

/// Enumerates all symmetric matrices over `field` of order `n` and feeds
/// each to `visit`.
fn for_each_symmetric(
    field: &Arc<Field>,
    n: usize,
    mut visit: impl FnMut(&FMatrix) -> Result<(), String>,
) -> Result<(), String> {
    let q = field.order() as u32;
    let slots = n * (n + 1) / 2;
    let mut digits = vec![0u32; slots];
    let mut a = FMatrix::zeros(field, n, n);
    loop {
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                a.set(i, j, digits[idx]);
                a.set(j, i, digits[idx]);
                idx += 1;
            }
        }
        visit(&a)?;
        // Little-endian odometer over all upper-triangle assignments.
        let mut done = true;
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                done = false;
                break;
            }
            *d = 0;
        }
        if done {
            return Ok(());
        }
    }
}

/// Every symmetric matrix with n <= 4 over F_2 and F_3 factors as
/// `X S X^T` through exactly the advertised canonical forms, with
/// `rank X = rank A`.
pub fn check_canonical_forms() -> CheckResult {
    let mut summary = String::new();
    for name in ["2", "3"] {
        let f = parse_field(name);
        let mut matrices = 0u64;
        // Count of decompositions per (rank, form label).
        let mut seen: Vec<(usize, &'static str, u64)> = Vec::new();
        for n in 1..=4usize {
            for_each_symmetric(&f, n, |a| {
                matrices += 1;
                let rank = a.rank();
                let (form, x) =
                    symmetric_decompose(a).map_err(|e| format!("decompose: {e}"))?;
                if x.cols() != rank {
                    return Err(format!("rank-{rank} matrix got {} columns", x.cols()));
                }
                let s = form.matrix(&f, rank);
                let back = x.mul(&s).mul(&x.transpose());
                if back != *a {
                    return Err(format!("round trip fails over F_{name} at n = {n}"));
                }
                let advertised = canonical_rank_forms(&f, rank);
                if !advertised.contains(&form) {
                    return Err(format!(
                        "form {} not advertised at rank {rank} over F_{name}",
                        form.label()
                    ));
                }
                match seen.iter_mut().find(|(r, l, _)| *r == rank && *l == form.label()) {
                    Some(entry) => entry.2 += 1,
                    None => seen.push((rank, form.label(), 1)),
                }
                Ok(())
            })?;
        }
        // Completeness in the other direction: every advertised form at
        // every reachable rank actually occurs.
        for rank in 1..=4usize {
            for form in canonical_rank_forms(&f, rank) {
                if !seen.iter().any(|(r, l, _)| *r == rank && *l == form.label()) {
                    return Err(format!(
                        "advertised form {} never occurs at rank {rank} over F_{name}",
                        form.label()
                    ));
                }
            }
        }
        write!(summary, "F_{name}: {matrices} matrices; ").expect("string write");
    }
    Ok(format!("{}all round trips exact, forms exactly as advertised", summary))
}

// ============================================================================
// Construction checks
// ============================================================================

/// A random graph with a planted clique on `k` random vertices.
fn planted_clique_graph(n: usize, k: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = random_graph_from(&mut rng, n);
    let mut verts: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        verts.swap(i, j);
    }
    for a in 0..k {
        for b in (a + 1)..k {
            g.add_edge(verts[a], verts[b]);
        }
    }
    g
}

/// Non-prime construction sweep: exact rank `n - k + 1` over q in {4, 8, 9}
/// for every 4 <= k <= n-1 <= 11, on 50 seeded random graphs per triple.
pub fn check_nonprime_sweep(seed: u64) -> CheckResult {
    let mut instances = 0u64;
    for name in ["4", "8", "9"] {
        let f = parse_field(name);
        for n in 5..=12usize {
            for k in 4..n {
                for trial in 0..50u64 {
                    let stream = seed
                        .wrapping_add(trial)
                        .wrapping_add((n as u64) << 24)
                        .wrapping_add((k as u64) << 16)
                        .wrapping_add(u64::from(f.order() as u32) << 32);
                    let g = planted_clique_graph(n, k, stream);
                    let a = nonprime_construction(&g, k, &f)
                        .map_err(|e| format!("n={n}, k={k}, F_{name}: {e}"))?;
                    if !graph::pattern_matches(&a, &g).map_err(|e| e.to_string())? {
                        return Err(format!("pattern mismatch at n={n}, k={k}, F_{name}"));
                    }
                    if a.rank() != n - k + 1 {
                        return Err(format!(
                            "rank {} != {} at n={n}, k={k}, F_{name}",
                            a.rank(),
                            n - k + 1
                        ));
                    }
                    instances += 1;
                }
            }
        }
    }
    Ok(format!("{instances} seeded instances, all rank exactly n-k+1 (seed {seed})"))
}

/// A clique on `k` vertices, `trailing` edges among the three extra
/// vertices, and attachment columns prescribed by `masks` (bit t of
/// `masks[u]` attaches clique vertex `u` to extra vertex `t`).
fn trailing_pattern_graph(k: usize, trailing: &[(usize, usize)], masks: &[u8]) -> Graph {
    assert_eq!(masks.len(), k);
    let mut edges = Graph::complete(k).edges();
    for &(a, b) in trailing {
        edges.push((k + a, k + b));
    }
    for (u, &mask) in masks.iter().enumerate() {
        for t in 0..3 {
            if mask >> t & 1 == 1 {
                edges.push((u, k + t));
            }
        }
    }
    Graph::with_edges(k + 3, &edges)
}

/// Masks cycling over every nonzero pattern plus the zero pattern.
fn cycling_masks(k: usize) -> Vec<u8> {
    let wheel = [0b001u8, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111, 0b000];
    (0..k).map(|u| wheel[u % wheel.len()]).collect()
}

/// Each nonzero pattern twice, plus one unattached clique vertex (k = 15).
fn full_pattern_masks() -> Vec<u8> {
    let mut masks = Vec::new();
    for mask in 1u8..=7 {
        masks.push(mask);
        masks.push(mask);
    }
    masks.push(0);
    masks
}

const TRAILING_TOPOLOGIES: [(&[(usize, usize)], TrailingCase); 4] = [
    (&[], TrailingCase::Independent),
    (&[(0, 1)], TrailingCase::OneEdge),
    (&[(0, 2), (1, 2)], TrailingCase::TwoEdges),
    (&[(0, 1), (0, 2), (1, 2)], TrailingCase::Triangle),
];

/// Rank-4 completion across all four trailing-triple cases for q in
/// {5, 7, 9}, characteristic-2 delegation for q in {4, 8}, and the named
/// F_5 scalars on the full-pattern instance.
pub fn check_rank_four_cases() -> CheckResult {
    for name in ["5", "7", "9"] {
        let f = parse_field(name);
        for (trailing, case) in TRAILING_TOPOLOGIES {
            let g = trailing_pattern_graph(8, trailing, &cycling_masks(8));
            let done = k_n_minus_3_construction(&g, &f)
                .map_err(|e| format!("case {} over F_{name}: {e}", case.number()))?;
            if done.case != case {
                return Err(format!("misclassified trailing case over F_{name}"));
            }
            if done.delegated {
                return Err(format!("unexpected delegation over F_{name}"));
            }
            if done.matrix.rank() != 4 {
                return Err(format!(
                    "rank {} != 4 in case {} over F_{name}",
                    done.matrix.rank(),
                    case.number()
                ));
            }
            if !graph::pattern_matches(&done.matrix, &g).map_err(|e| e.to_string())? {
                return Err(format!("pattern mismatch in case {} over F_{name}", case.number()));
            }
        }
    }
    // Characteristic 2: the all-edges trailing case routes through the
    // non-prime construction; the others do not.
    for name in ["4", "8"] {
        let f = parse_field(name);
        let triangle: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2)];
        let g = trailing_pattern_graph(6, triangle, &cycling_masks(6));
        let done =
            k_n_minus_3_construction(&g, &f).map_err(|e| format!("F_{name} triangle: {e}"))?;
        if !done.delegated || done.matrix.rank() != 4 {
            return Err(format!("characteristic-2 triangle not delegated over F_{name}"));
        }
        let g1 = trailing_pattern_graph(6, &[(0, 1)], &cycling_masks(6));
        let done1 =
            k_n_minus_3_construction(&g1, &f).map_err(|e| format!("F_{name} one edge: {e}"))?;
        if done1.delegated {
            return Err(format!("one-edge case wrongly delegated over F_{name}"));
        }
    }
    // Named F_5 scalars on the full-pattern instance (every attachment
    // pattern present): the scan lands exactly on 3 (two-edge case) and 2
    // (triangle case).
    let f5 = parse_field("5");
    let masks = full_pattern_masks();
    let k = masks.len();
    let two_edge = trailing_pattern_graph(k, &[(0, 2), (1, 2)], &masks);
    let done = k_n_minus_3_construction(&two_edge, &f5).map_err(|e| e.to_string())?;
    if done.scalar != 3 {
        return Err(format!("two-edge scalar over F_5 is {}, expected 3", done.scalar));
    }
    let triangle = trailing_pattern_graph(k, &[(0, 1), (0, 2), (1, 2)], &masks);
    let done = k_n_minus_3_construction(&triangle, &f5).map_err(|e| e.to_string())?;
    if done.scalar != 2 {
        return Err(format!("triangle scalar over F_5 is {}, expected 2", done.scalar));
    }
    Ok("all four cases rank 4 over F_5/F_7/F_9; characteristic-2 triangle delegates; \
        F_5 scalars land on 3 and 2"
        .into())
}

/// All attachment patterns of two extra vertices to a clique on `n - 2`
/// vertices, up to swapping the two extras: unordered neighborhood pairs
/// plus the toggle of the edge between the extras.
pub fn attachment_graphs(n: usize) -> Vec<Graph> {
    assert!((3..=8).contains(&n), "attachment enumeration sized for 3 <= n <= 8");
    let k = n - 2;
    let base = Graph::complete(k).edges();
    let mut out = Vec::new();
    for mu in 0u64..1 << k {
        for mv in mu..1 << k {
            for uv in [false, true] {
                let mut edges = base.clone();
                for t in 0..k {
                    if mu >> t & 1 == 1 {
                        edges.push((t, k));
                    }
                    if mv >> t & 1 == 1 {
                        edges.push((t, k + 1));
                    }
                }
                if uv {
                    edges.push((k, k + 1));
                }
                out.push(Graph::with_edges(n, &edges));
            }
        }
    }
    out
}

/// Every attachment of two extra vertices to K_{n-2}, n <= 8, admits a
/// rank-3 witness over both F_4 and F_5.
pub fn check_attachment_witnesses() -> CheckResult {
    let fields = [parse_field("4"), parse_field("5")];
    let mut searched = 0u64;
    let mut graphs = 0u64;
    for n in 4..=8usize {
        for g in attachment_graphs(n) {
            graphs += 1;
            for f in &fields {
                let cert = rank_le_search(&g, f, 3).map_err(|e| e.to_string())?;
                searched += 1;
                if !cert.is_witness() {
                    return Err(format!(
                        "no rank-3 witness over F_{} for an attachment graph on {n} vertices",
                        f.order()
                    ));
                }
            }
        }
    }
    Ok(format!("{graphs} attachment graphs (n <= 8), {searched} witness searches, all found"))
}

/// The n = 10 family member: complete search at level 3 over F_3 comes back
/// empty (so the minimum rank exceeds 3), a witness exists at level 4, and
/// fields with more than three elements admit level-3 witnesses.
pub fn check_counterexample() -> CheckResult {
    let g = f3_counterexample_graph(10).map_err(|e| e.to_string())?;
    if g.edge_count() != 36 {
        return Err(format!("family graph has {} edges, expected 36", g.edge_count()));
    }
    let cert = verify_f3_counterexample(10).map_err(|e| e.to_string())?;
    let nodes = match cert {
        RankCertificate::Exhaustion { r: 3, ref stats } => stats.nodes,
        ref other => {
            return Err(format!("level-3 search returned {other:?} instead of exhaustion"))
        }
    };
    let f3 = parse_field("3");
    let witness = rank_le_search(&g, &f3, 4).map_err(|e| e.to_string())?;
    if !witness.is_witness() {
        return Err("no rank-4 witness over F_3".into());
    }
    for name in ["4", "5"] {
        let f = parse_field(name);
        let cert = rank_le_search(&g, &f, 3).map_err(|e| e.to_string())?;
        if !cert.is_witness() {
            return Err(format!("no rank-3 witness over F_{name}"));
        }
    }
    Ok(format!(
        "minimum rank 4 over F_3 (level-3 exhaustion: {nodes} nodes); rank 3 over F_4 and F_5"
    ))
}

/// Large-prime randomized completion: reproducible from the seed, exact
/// rank n - k + 1, and an exactly zero Schur complement at the split.
pub fn check_large_prime(seed: u64) -> CheckResult {
    let mut pendant_edges = Graph::complete(4).edges();
    pendant_edges.push((3, 4));
    let pendant = Graph::with_edges(5, &pendant_edges);

    let a1 = large_prime_construction(&pendant, 4, 1009, seed).map_err(|e| e.to_string())?;
    let a2 = large_prime_construction(&pendant, 4, 1009, seed).map_err(|e| e.to_string())?;
    if a1 != a2 {
        return Err("same seed produced different matrices".into());
    }
    let schur = a1.schur_complement(BlockSplit { head: 3 }).map_err(|e| e.to_string())?;
    let zero = FMatrix::zeros(a1.field(), 3, 3);
    if schur != zero {
        return Err("Schur complement at the split is not zero".into());
    }

    let mut instances = 0u64;
    for p in [1009u64, 65521] {
        for (n, k) in [(5usize, 4usize), (9, 5), (12, 8)] {
            for trial in 0..20u64 {
                let g = if (n, k) == (5, 4) {
                    pendant.clone()
                } else {
                    planted_clique_graph(n, k, seed ^ (trial << 8) ^ p)
                };
                let a = large_prime_construction(&g, k, p, seed.wrapping_add(trial))
                    .map_err(|e| format!("p={p}, n={n}, k={k}: {e}"))?;
                if !graph::pattern_matches(&a, &g).map_err(|e| e.to_string())? {
                    return Err(format!("pattern mismatch at p={p}, n={n}, k={k}"));
                }
                if a.rank() != n - k + 1 {
                    return Err(format!(
                        "rank {} != {} at p={p}, n={n}, k={k}",
                        a.rank(),
                        n - k + 1
                    ));
                }
                instances += 1;
            }
        }
    }
    Ok(format!(
        "reproducible; zero Schur complement; {instances} instances at rank n-k+1 (seed {seed})"
    ))
}

// ============================================================================
// Solver cross-validation
// ============================================================================

/// Certificate-search minimum rank equals exhaustive minimum rank on every
/// labeled graph with n <= 4 and on 200 seeded graphs at n = 5, for
/// q in {2, 3, 4, 5}.
pub fn check_solver_equivalence(seed: u64) -> CheckResult {
    let fields: Vec<Arc<Field>> =
        ["2", "3", "4", "5"].iter().map(|name| parse_field(name)).collect();
    let mut compared = 0u64;
    for f in &fields {
        for n in 1..=4usize {
            for g in graph::enumerate_labeled_graphs(n).map_err(|e| e.to_string())? {
                let exhaustive =
                    exhaustive_minrank_guarded(&g, f, u64::MAX).map_err(|e| e.to_string())?;
                let certificate = certificate_minrank(&g, f).map_err(|e| e.to_string())?;
                if exhaustive.mr != certificate.mr {
                    return Err(format!(
                        "solvers disagree ({} vs {}) on an n={n} graph over F_{}",
                        exhaustive.mr,
                        certificate.mr,
                        f.order()
                    ));
                }
                compared += 1;
            }
        }
        for trial in 0..200u64 {
            let g = graph::random_graph(5, seed.wrapping_add(trial));
            let exhaustive =
                exhaustive_minrank_guarded(&g, f, u64::MAX).map_err(|e| e.to_string())?;
            let certificate = certificate_minrank(&g, f).map_err(|e| e.to_string())?;
            if exhaustive.mr != certificate.mr {
                return Err(format!(
                    "solvers disagree ({} vs {}) at n=5, trial {trial}, over F_{}",
                    exhaustive.mr,
                    certificate.mr,
                    f.order()
                ));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} graphs agree across q in {{2,3,4,5}} (seed {seed})"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_runs_clean() {
        // A fast smoke pass over the cheap checks; the heavy ones run in the
        // acceptance suite.
        for outcome in [
            run_check("Lemma 2.1", "orders", check_orthogonal_orders),
            run_check("Lemma 2.3", "symplectic", check_symplectic_orders),
            run_check("Lemma 2.4", "tuples", check_tuple_counts),
            run_check("Lemma 2.5", "product", check_product_band),
        ] {
            assert!(outcome.passed, "{}: {}", outcome.id, outcome.details);
        }
    }

    #[test]
    fn catalog_is_complete_and_ordered() {
        let catalog = check_catalog(VerifyOptions::default());
        let ids: Vec<&str> = catalog.iter().map(|(id, _, _)| *id).collect();
        assert_eq!(
            ids,
            [
                "Lemma 2.1",
                "Lemma 2.2",
                "Lemma 2.3",
                "Lemma 2.4",
                "Lemma 2.5",
                "Lemma 2.6",
                "Theorem 2.7",
                "Theorem A",
                "Proposition 4.1",
                "Theorem 4.2",
                "Theorem 5.1",
                "Theorem 6.1",
                "Solvers",
            ]
        );
    }

    #[test]
    fn attachment_enumeration_counts() {
        // Unordered pairs of subsets of a k-set, doubled by the extra edge:
        // 2^{k-1} (2^k + 1) * 2 graphs.
        for (n, expected) in [(4usize, 20usize), (5, 72), (6, 272)] {
            assert_eq!(attachment_graphs(n).len(), expected);
        }
        let g = &attachment_graphs(4)[0];
        assert_eq!(g.n(), 4);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn planted_clique_is_present() {
        let g = planted_clique_graph(9, 5, 7);
        assert!(graph::find_clique(&g, 5).is_some());
        // Deterministic in the seed.
        let h = planted_clique_graph(9, 5, 7);
        assert_eq!(g.edges(), h.edges());
    }
}
