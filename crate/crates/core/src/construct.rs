//! Constructive low-rank completions for graphs with a large clique, and the
//! small-field family where no such completion exists.
//!
//! Everything here builds an explicit matrix `A` in the pattern class
//! `S(F, G)` and proves its rank by block structure: relabel a clique
//! first, pick the trailing block `A22` invertible, and arrange for the
//! Schur complement of `A22` to be the rank-one all-ones block `J`, so
//! `rank A = rank A22 + 1`. The four entry points:
//!
//! * [`nonprime_construction`] — over any non-prime field, a graph with a
//!   `k`-clique admits rank `n - k + 1`: an element `b` outside the prime
//!   subfield makes `1 + b c` automatically nonzero for prime-subfield `c`,
//!   which keeps the clique block's off-diagonal alive with no case analysis.
//! * [`k_n_minus_3_construction`] — when the clique covers all but three
//!   vertices and `|F| > 3`, rank 4 is always achievable. Four cases on the
//!   adjacency among the three leftover vertices, each with a scalar scanned
//!   over the field; characteristic 2 reroutes to the non-prime construction
//!   (every field of characteristic 2 with more than 3 elements is
//!   non-prime).
//! * [`f3_counterexample_graph`] — the family showing `|F| = 3` really is
//!   excluded: graphs with an `(n-2)`-clique whose minimum rank over `F_3`
//!   is 4, certified by [`verify_f3_counterexample`] through pure search
//!   with no reliance on this module's algebra.
//! * [`large_prime_construction`] — a randomized variant for large prime
//!   fields: sample the trailing block until invertible and accept when the
//!   induced clique block has fully nonzero off-diagonal.
//!
//! Every constructor re-verifies pattern membership and rank before
//! returning; a verification failure is reported as an error, never assumed
//! away.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FieldElement};
use crate::graph::{self, find_clique, invert_permutation, relabel_clique_first, Graph};
use crate::linalg::FMatrix;
use crate::minrank::{rank_le_search, MinRankError, RankCertificate};

/// Retry budget for the randomized large-prime constructor.
pub const LARGE_PRIME_MAX_TRIALS: u32 = 64;
/// Smallest prime accepted by [`large_prime_construction`].
pub const LARGE_PRIME_MIN: u64 = 1009;
/// Default size guard for [`verify_f3_counterexample`]'s exhaustive search.
pub const F3_VERIFY_MAX: usize = 12;
/// The counterexample family needs seven classified clique vertices.
pub const F3_FAMILY_MIN: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    /// The graph has no clique of the requested size.
    NoClique { k: usize },
    /// The construction needs an element outside the prime subfield.
    PrimeField,
    /// The rank-4 completion needs more than three field elements.
    FieldTooSmall { q: u64 },
    /// No scalar in the field satisfied the case constraints (would
    /// contradict the theory; signals an implementation bug).
    NoFeasibleScalar,
    /// A built matrix failed its own pattern or rank verification.
    VerificationFailed(String),
    /// Below the minimum size for the family.
    TooSmall { n: usize, min: usize },
    /// Above an exhaustive-verification guard.
    TooLarge { n: usize, max: usize },
    /// The randomized constructor ran out of retries.
    RetriesExhausted { trials: u32 },
    /// An underlying solver error.
    Solver(String),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::NoClique { k } => write!(f, "graph has no {k}-clique"),
            ConstructError::PrimeField => {
                write!(f, "construction requires a non-prime field")
            }
            ConstructError::FieldTooSmall { q } => {
                write!(f, "field with {q} elements is too small (need more than 3)")
            }
            ConstructError::NoFeasibleScalar => {
                write!(f, "no feasible scalar found (implementation bug)")
            }
            ConstructError::VerificationFailed(msg) => {
                write!(f, "construction failed verification: {msg}")
            }
            ConstructError::TooSmall { n, min } => {
                write!(f, "n = {n} is below the minimum {min}")
            }
            ConstructError::TooLarge { n, max } => {
                write!(f, "n = {n} exceeds the verification guard {max}")
            }
            ConstructError::RetriesExhausted { trials } => {
                write!(f, "no acceptable sample after {trials} trials")
            }
            ConstructError::Solver(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for ConstructError {}

impl From<MinRankError> for ConstructError {
    fn from(e: MinRankError) -> Self {
        ConstructError::Solver(e.to_string())
    }
}

// ============================================================================
// Clique-first partition
// ============================================================================

/// A graph relabeled so that vertices `0..k` form a clique, remembering how
/// to translate matrices back to the original labels.
#[derive(Debug, Clone)]
pub struct CliqueSplit {
    /// Relabeled graph with the clique annotated on `0..k`.
    pub graph: Graph,
    pub k: usize,
    /// `perm[new] = old` into the input graph's labels.
    pub perm: Vec<usize>,
}

impl CliqueSplit {
    /// Finds a `k`-clique and relabels it to the front.
    pub fn new(g: &Graph, k: usize) -> Result<CliqueSplit, ConstructError> {
        let clique = find_clique(g, k).ok_or(ConstructError::NoClique { k })?;
        let (graph, perm) =
            relabel_clique_first(g, &clique).expect("found clique must relabel cleanly");
        Ok(CliqueSplit { graph, k, perm })
    }

    /// The subgraph induced on the non-clique vertices `k..n` (in relabeled
    /// order).
    pub fn rest(&self) -> Graph {
        let vertices: Vec<usize> = (self.k..self.graph.n()).collect();
        self.graph.induced(&vertices)
    }

    /// Translates a matrix over the relabeled graph back to the original
    /// vertex labels.
    pub fn to_original(&self, a: &FMatrix) -> FMatrix {
        a.permute_symmetric(&invert_permutation(&self.perm))
    }
}

// ============================================================================
// Unit leading minors
// ============================================================================

/// A matrix in `S(F_p, H)` with every edge entry 1 and every leading
/// principal minor equal to 1 (hence invertible with determinant 1).
///
/// The diagonal is chosen sequentially: the order-`j` leading determinant is
/// affine in the `j`-th diagonal entry with unit coefficient (the previous
/// leading minor), so each equation `det = 1` has exactly one solution.
pub fn leading_minor_completion(h: &Graph, p: u64) -> FMatrix {
    assert!(h.n() >= 1, "needs at least one vertex");
    let field = Arc::new(Field::prime(p).expect("modulus must be prime"));
    let n = h.n();
    let mut b = h.adjacency_matrix(&field);
    b.set(0, 0, 1);
    for j in 1..n {
        // det(leading j+1 block) = 1 * b_jj + (det with b_jj = 0).
        let base = b.block(0, j + 1, 0, j + 1).det().expect("square block");
        b.set(j, j, field.sub(1, base));
    }
    for j in 0..n {
        debug_assert_eq!(
            b.block(0, j + 1, 0, j + 1).det().expect("square block"),
            1,
            "leading minor {j}"
        );
    }
    b
}

/// Re-encodes a prime-field matrix into an extension of the same
/// characteristic (prime-subfield encodings coincide by construction).
fn lift(b: &FMatrix, field: &Arc<Field>) -> FMatrix {
    assert_eq!(b.field().order(), field.p(), "lift goes from F_p into F_{{p^m}}");
    FMatrix::from_fn(field, b.rows(), b.cols(), |i, j| b.get(i, j))
}

// ============================================================================
// Non-prime fields: rank n - k + 1 from a k-clique
// ============================================================================

/// Builds `A` in `S(F, G)` of rank exactly `n - k + 1` from a `k`-clique,
/// for non-prime `F`. Requires `4 <= k < n` (the statement's range); see
/// [`k_n_minus_3_construction`] for how smaller cliques reuse the same core.
pub fn nonprime_construction(
    g: &Graph,
    k: usize,
    field: &Arc<Field>,
) -> Result<FMatrix, ConstructError> {
    assert!(k >= 4 && k < g.n(), "contract: 4 <= k < n");
    let split = CliqueSplit::new(g, k)?;
    let a = nonprime_on_relabeled(&split.graph, k, field)?;
    Ok(split.to_original(&a))
}

/// Core of the non-prime construction, on an already clique-first graph.
/// Works for any `1 <= k < n`; the public wrapper enforces the documented
/// `4 <= k < n` range.
fn nonprime_on_relabeled(
    h: &Graph,
    k: usize,
    field: &Arc<Field>,
) -> Result<FMatrix, ConstructError> {
    if field.is_prime_field() {
        return Err(ConstructError::PrimeField);
    }
    let n = h.n();
    let t = n - k;

    // B over the prime subfield: edge entries 1, unit leading minors.
    let rest: Vec<usize> = (k..n).collect();
    let b_prime = leading_minor_completion(&h.induced(&rest), field.p());
    let b = lift(&b_prime, field);
    let b_inv = b.inverse().expect("unit determinant");

    // First element outside the prime subfield.
    let beta = field
        .elements()
        .find(|&x| !field.in_prime_subfield(x))
        .expect("non-prime fields have one");

    // A22 = beta^{-1} B keeps the pattern of B; A12 is the 0/1 edge
    // indicator between clique and rest.
    let a22 = b.scale(field.inv(beta));
    let a12 = FMatrix::from_fn(field, k, t, |i, j| u32::from(h.has_edge(i, k + j)));

    // A11 = J + beta * A12 B^{-1} A12^T. Off-diagonal entries are
    // 1 + beta * c with c in the prime subfield, hence nonzero.
    let correction = a12.mul(&b_inv).mul(&a12.transpose()).scale(beta);
    let ones = FMatrix::from_fn(field, k, k, |_, _| 1);
    let a11 = ones.add(&correction);

    let a = FMatrix::assemble_symmetric(&a11, &a12, &a22);
    if !graph::pattern_matches(&a, h).expect("square matrix of matching order") {
        return Err(ConstructError::VerificationFailed(
            "pattern mismatch in non-prime construction".into(),
        ));
    }
    let rank = a.rank();
    if rank != t + 1 {
        return Err(ConstructError::VerificationFailed(format!(
            "rank {rank}, expected {}",
            t + 1
        )));
    }
    Ok(a)
}

// ============================================================================
// Clique on all but three vertices: rank 4 whenever |F| > 3
// ============================================================================

/// The adjacency among the three non-clique vertices, which selects the
/// construction case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrailingCase {
    /// No edges among the three: trailing block is diagonal.
    Independent,
    /// Exactly one edge.
    OneEdge,
    /// Exactly two edges.
    TwoEdges,
    /// All three edges.
    Triangle,
}

impl TrailingCase {
    pub fn number(&self) -> u8 {
        match self {
            TrailingCase::Independent => 1,
            TrailingCase::OneEdge => 2,
            TrailingCase::TwoEdges => 3,
            TrailingCase::Triangle => 4,
        }
    }
}

/// Classification of each clique vertex's adjacency to the three trailing
/// vertices into the eight 3-bit patterns (bit `t` set = adjacent to
/// trailing vertex `t`).
#[derive(Debug, Clone)]
pub struct ColumnPatternProfile {
    /// Pattern mask per clique vertex, in relabeled clique order.
    pub masks: Vec<u8>,
    /// How many clique vertices carry each of the eight patterns.
    pub counts: [usize; 8],
}

impl ColumnPatternProfile {
    /// Classifies a clique-first graph whose last three vertices are the
    /// trailing triple.
    pub fn classify(h: &Graph, k: usize) -> ColumnPatternProfile {
        assert_eq!(h.n(), k + 3, "trailing triple expected");
        let mut counts = [0usize; 8];
        let masks: Vec<u8> = (0..k)
            .map(|u| {
                let mask = (0..3).fold(0u8, |m, t| m | (u8::from(h.has_edge(u, k + t)) << t));
                counts[mask as usize] += 1;
                mask
            })
            .collect();
        ColumnPatternProfile { masks, counts }
    }
}

/// Nonzero-slot values for the twelve coefficients, one triple per pattern:
/// pattern `100 -> (c1, 0, 0)`, `010 -> (0, c2, 0)`, `001 -> (0, 0, c3)`,
/// `110 -> (c4, c5, 0)`, `101 -> (c6, 0, c7)`, `011 -> (0, c8, c9)`,
/// `111 -> (c10, c11, c12)`.
fn pattern_row(mask: u8, coeffs: &[FieldElement; 12]) -> [FieldElement; 3] {
    match mask {
        0b000 => [0, 0, 0],
        0b001 => [coeffs[0], 0, 0],
        0b010 => [0, coeffs[1], 0],
        0b100 => [0, 0, coeffs[2]],
        0b011 => [coeffs[3], coeffs[4], 0],
        0b101 => [coeffs[5], 0, coeffs[6]],
        0b110 => [0, coeffs[7], coeffs[8]],
        0b111 => [coeffs[9], coeffs[10], coeffs[11]],
        _ => unreachable!("3-bit mask"),
    }
}

/// Result of the rank-4 completion.
#[derive(Debug, Clone)]
pub struct RankFourCompletion {
    /// The completed matrix, in the input graph's labels.
    pub matrix: FMatrix,
    pub case: TrailingCase,
    /// The scanned scalar (the trailing-block scale, or the delegated
    /// construction's subfield-external element).
    pub scalar: FieldElement,
    /// True when characteristic 2 routed to the non-prime construction.
    pub delegated: bool,
}

/// Builds a rank-4 matrix in `S(F, G)` for a graph whose first `n - 3`
/// vertices (up to relabeling) form a clique, over any field with more than
/// three elements.
pub fn k_n_minus_3_construction(
    g: &Graph,
    field: &Arc<Field>,
) -> Result<RankFourCompletion, ConstructError> {
    let n = g.n();
    assert!(n >= 5, "needs n >= 5");
    if field.order() <= 3 {
        return Err(ConstructError::FieldTooSmall { q: field.order() });
    }
    let k = n - 3;
    let split = CliqueSplit::new(g, k)?;
    let h = &split.graph;

    // Case = number of edges among the trailing triple.
    let trailing_edges: Vec<(usize, usize)> = (0..3)
        .flat_map(|a| ((a + 1)..3).map(move |b| (a, b)))
        .filter(|&(a, b)| h.has_edge(k + a, k + b))
        .collect();
    let case = match trailing_edges.len() {
        0 => TrailingCase::Independent,
        1 => TrailingCase::OneEdge,
        2 => TrailingCase::TwoEdges,
        3 => TrailingCase::Triangle,
        _ => unreachable!(),
    };

    // The triangle case divides by 2; characteristic 2 reroutes to the
    // non-prime construction (char-2 fields above F_2 are never prime), which
    // also lands on rank n - k + 1 = 4.
    if case == TrailingCase::Triangle && field.char_two() {
        let a = nonprime_on_relabeled(h, k, field)?;
        let beta = field
            .elements()
            .find(|&x| !field.in_prime_subfield(x))
            .expect("non-prime");
        return Ok(RankFourCompletion {
            matrix: split.to_original(&a),
            case,
            scalar: beta,
            delegated: true,
        });
    }

    // Rearrange the trailing triple into the case's representative position.
    let trail_order: [usize; 3] = match case {
        TrailingCase::Independent | TrailingCase::Triangle => [0, 1, 2],
        // One edge {x, y}: representative has the edge on positions (1, 2).
        TrailingCase::OneEdge => {
            let (x, y) = trailing_edges[0];
            let z = (0..3).find(|v| *v != x && *v != y).expect("third vertex");
            [z, x, y]
        }
        // Two edges, one non-edge {x, y}: representative has the non-edge on
        // positions (0, 1).
        TrailingCase::TwoEdges => {
            let (x, y) = (0..3)
                .flat_map(|a| ((a + 1)..3).map(move |b| (a, b)))
                .find(|&(a, b)| !h.has_edge(k + a, k + b))
                .expect("one non-edge");
            let z = (0..3).find(|v| *v != x && *v != y).expect("third vertex");
            [x, y, z]
        }
    };
    let full_order: Vec<usize> = (0..k).chain(trail_order.iter().map(|&t| k + t)).collect();
    let h2 = h.induced(&full_order);
    let profile = ColumnPatternProfile::classify(&h2, k);

    let coeffs = case_coefficients(case, field);
    let (a, scalar) = scan_scalar(&h2, k, case, &coeffs, field)?;

    // Map back: first undo the trailing rearrangement, then the clique
    // relabeling.
    let total: Vec<usize> = full_order.iter().map(|&i| split.perm[i]).collect();
    let matrix = a.permute_symmetric(&invert_permutation(&total));
    if !graph::pattern_matches(&matrix, g).expect("matching order") {
        return Err(ConstructError::VerificationFailed(
            "pattern mismatch after relabeling".into(),
        ));
    }
    debug_assert_eq!(profile.counts.iter().sum::<usize>(), k);
    Ok(RankFourCompletion { matrix, case, scalar, delegated: false })
}

/// The twelve nonzero coefficients per case. All 1 except the two
/// five-element-field repairs.
fn case_coefficients(case: TrailingCase, field: &Arc<Field>) -> [FieldElement; 12] {
    let mut coeffs = [1; 12];
    if field.order() == 5 {
        match case {
            TrailingCase::TwoEdges => coeffs[6] = field.neg(1),
            TrailingCase::Triangle => {
                for slot in [4, 6, 8, 10] {
                    coeffs[slot] = field.neg(1);
                }
                coeffs[11] = field.embed(2);
            }
            _ => {}
        }
    }
    coeffs
}

/// The trailing 3x3 block for a case, given the scanned scalar. `None` when
/// the scalar is structurally unusable (zero, or `2a` not invertible).
fn case_trailing_block(
    case: TrailingCase,
    field: &Arc<Field>,
    scalar: FieldElement,
) -> Option<FMatrix> {
    if scalar == 0 {
        return None;
    }
    let inv = field.inv(scalar);
    let m = match case {
        TrailingCase::Independent => FMatrix::identity(field, 3),
        TrailingCase::OneEdge => {
            FMatrix::from_rows(field, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]])
        }
        TrailingCase::TwoEdges => {
            FMatrix::from_rows(field, vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 0]])
        }
        TrailingCase::Triangle => {
            let two_a = field.mul(field.embed(2), scalar);
            if two_a == 0 {
                return None;
            }
            let neg = field.neg(1);
            return Some(
                FMatrix::from_rows(
                    field,
                    vec![vec![neg, 1, 1], vec![1, neg, 1], vec![1, 1, neg]],
                )
                .scale(field.inv(two_a)),
            );
        }
    };
    Some(m.scale(inv))
}

/// Scans the field for the first scalar whose trailing block is invertible
/// and whose induced clique block has fully nonzero off-diagonal; returns
/// the verified assembled matrix.
fn scan_scalar(
    h2: &Graph,
    k: usize,
    case: TrailingCase,
    coeffs: &[FieldElement; 12],
    field: &Arc<Field>,
) -> Result<(FMatrix, FieldElement), ConstructError> {
    let profile = ColumnPatternProfile::classify(h2, k);
    let mut a12 = FMatrix::zeros(field, k, 3);
    for (u, &mask) in profile.masks.iter().enumerate() {
        let row = pattern_row(mask, coeffs);
        for t in 0..3 {
            a12.set(u, t, row[t]);
        }
    }
    let ones = FMatrix::from_fn(field, k, k, |_, _| 1);

    for scalar in field.elements().skip(1) {
        let Some(a22) = case_trailing_block(case, field, scalar) else {
            continue;
        };
        let Ok(a22_inv) = a22.inverse() else {
            continue;
        };
        let a11 = ones.add(&a12.mul(&a22_inv).mul(&a12.transpose()));
        let a = FMatrix::assemble_symmetric(&a11, &a12, &a22);
        if !graph::pattern_matches(&a, h2).expect("matching order") {
            continue;
        }
        let rank = a.rank();
        if rank != 4 {
            return Err(ConstructError::VerificationFailed(format!(
                "rank {rank} with invertible trailing block"
            )));
        }
        return Ok((a, scalar));
    }
    Err(ConstructError::NoFeasibleScalar)
}

// ============================================================================
// The F_3 family with minimum rank 4
// ============================================================================

/// A graph with an `(n-2)`-clique whose minimum rank over `F_3` exceeds 3.
///
/// Vertices `0..n-3` are a clique extended by vertex `n-3` (still in the
/// clique); the two trailing vertices `n-2`, `n-1` are non-adjacent to each
/// other and to `n-3`. Among the first clique vertices: vertex 0 sees
/// neither trailing vertex, 1 and 2 see only `n-2`, 3 and 4 see only `n-1`,
/// 5 and 6 see both, and the rest see neither — two distinct vertices per
/// mixed adjacency class, which is what defeats every rank-3 completion
/// over three elements.
pub fn f3_counterexample_graph(n: usize) -> Result<Graph, ConstructError> {
    if n < F3_FAMILY_MIN {
        return Err(ConstructError::TooSmall { n, min: F3_FAMILY_MIN });
    }
    let k = n - 2;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..k {
        for v in (u + 1)..k {
            edges.push((u, v));
        }
    }
    for &v in &[1usize, 2] {
        edges.push((v, n - 2));
    }
    for &v in &[3usize, 4] {
        edges.push((v, n - 1));
    }
    for &v in &[5usize, 6] {
        edges.push((v, n - 2));
        edges.push((v, n - 1));
    }
    let mut g = Graph::with_edges(n, &edges);
    g.set_clique((0..k).collect()).expect("built as a clique");
    Ok(g)
}

/// Certifies by exhaustive search that the family member on `n` vertices
/// has no rank-3 completion over `F_3`. Returns the exhaustion certificate
/// (search statistics included); the result depends only on the solver, not
/// on the construction reasoning in this module.
pub fn verify_f3_counterexample(n: usize) -> Result<RankCertificate, ConstructError> {
    if n > F3_VERIFY_MAX {
        return Err(ConstructError::TooLarge { n, max: F3_VERIFY_MAX });
    }
    let g = f3_counterexample_graph(n)?;
    let f3 = Arc::new(Field::prime(3).expect("3 is prime"));
    Ok(rank_le_search(&g, &f3, 3)?)
}

// ============================================================================
// Randomized large-prime construction
// ============================================================================

/// Randomized rank-`(n - k + 1)` completion over a large prime field from a
/// `k`-clique: split after the first `k - 1` clique vertices, sample the
/// trailing `(n - k + 1)`-block until invertible, sample nonzero edge
/// entries for the off-diagonal block, and set the head block to
/// `A12 A22^{-1} A12^T` exactly (zero Schur complement). A sample is
/// accepted when the head block's off-diagonal is fully nonzero; failures
/// resample from the same seeded stream.
pub fn large_prime_construction(
    g: &Graph,
    k: usize,
    p: u64,
    seed: u64,
) -> Result<FMatrix, ConstructError> {
    assert!(k >= 4 && k < g.n(), "contract: 4 <= k < n");
    assert!(p >= LARGE_PRIME_MIN, "contract: p >= {LARGE_PRIME_MIN}");
    let field = Arc::new(Field::prime(p).expect("p must be prime"));
    let split = CliqueSplit::new(g, k)?;
    let h = &split.graph;
    let n = h.n();
    let head = k - 1;
    let t = n - head;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order() as u32;

    for _ in 0..LARGE_PRIME_MAX_TRIALS {
        // Symmetric trailing block with the pattern of the last t vertices:
        // free diagonal, nonzero on edges.
        let mut a22 = FMatrix::zeros(&field, t, t);
        for i in 0..t {
            a22.set(i, i, rng.gen_range(0..q));
            for j in (i + 1)..t {
                if h.has_edge(head + i, head + j) {
                    let v = rng.gen_range(1..q);
                    a22.set(i, j, v);
                    a22.set(j, i, v);
                }
            }
        }
        let Ok(a22_inv) = a22.inverse() else {
            continue;
        };
        let mut a12 = FMatrix::zeros(&field, head, t);
        for i in 0..head {
            for j in 0..t {
                if h.has_edge(i, head + j) {
                    a12.set(i, j, rng.gen_range(1..q));
                }
            }
        }
        let a11 = a12.mul(&a22_inv).mul(&a12.transpose());
        let head_clique_ok = (0..head)
            .all(|i| (0..head).all(|j| i == j || a11.get(i, j) != 0));
        if !head_clique_ok {
            continue;
        }
        let a = FMatrix::assemble_symmetric(&a11, &a12, &a22);
        if !graph::pattern_matches(&a, h).expect("matching order") {
            continue;
        }
        if a.rank() != n - k + 1 {
            return Err(ConstructError::VerificationFailed(format!(
                "rank {} with zero Schur complement",
                a.rank()
            )));
        }
        return Ok(split.to_original(&a));
    }
    Err(ConstructError::RetriesExhausted { trials: LARGE_PRIME_MAX_TRIALS })
}

// ============================================================================
// Tests
// ============================================================================
