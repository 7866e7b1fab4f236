//! Exact minimum-rank solvers.
//!
//! `mr(F, G)` is the smallest rank over the matrix class `S(F, G)` of
//! symmetric matrices over `F` whose off-diagonal support is exactly the edge
//! set of `G` (free diagonal). Three independent solvers are provided:
//!
//! * [`exhaustive_minrank`] — iterates every matrix in `S(F, G)`
//!   (`(q-1)^|E| * q^n` of them) behind a search-space guard. Slow and
//!   unimpeachable; the oracle the others are tested against.
//! * [`f2_minrank`] — over `F_2` the class is `{A(G) + diag(d)}`, so the
//!   solver sweeps all `2^n` diagonals with bit-packed rank elimination.
//! * [`certificate_minrank`] — for increasing `r`, decides "does some matrix
//!   of rank <= r match the pattern?" by backtracking over factorizations
//!   `X * S * X^T` with `S` ranging over the canonical congruence forms of
//!   rank `r` and the rows of `X` assigned vertex by vertex
//!   ([`rank_le_search`]).
//!
//! Every result carries a [`RankCertificate`]. A `Witness` holds an explicit
//! factorization and the reconstructed matrix, re-verified against the graph
//! pattern on every return path. An `Exhaustion` certifies that a full
//! traversal at level `r` found nothing — which rules out every rank `<= r`,
//! not just `r` itself, because a rank-deficient `X` realizes the smaller
//! ranks inside the same form list (see [`canonical_rank_forms`]).

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::f2;
use crate::field::{Field, FieldElement};
use crate::graph::{self, Graph};
use crate::linalg::{canonical_rank_forms, symmetric_decompose, CanonicalForm, FMatrix};

/// Default cap on `(q-1)^|E| * q^n` for the exhaustive solver.
pub const DEFAULT_EXHAUSTIVE_GUARD: u64 = 100_000_000;

/// The diagonal sweep allocates one `u64` row per vertex and walks `2^n`
/// diagonals; past this it stops being a sensible tool.
pub const F2_DIAGONAL_MAX_VERTICES: usize = 24;

/// Pairwise dot-product masks are precomputed when the vector space has at
/// most this many elements (memory is `vcount^2` bits, so 8 MiB here).
const MASK_VECTOR_LIMIT: usize = 1 << 13;

/// `S * v` products are cached when `vcount * r` stays below this.
const SV_TABLE_LIMIT: usize = 1 << 22;

// ============================================================================
// Errors, results, certificates
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinRankError {
    /// The exhaustive solver would visit more matrices than its guard allows.
    SearchSpaceTooLarge { required: u128, guard: u64 },
    /// The `F_2` diagonal sweep is limited to [`F2_DIAGONAL_MAX_VERTICES`].
    TooManyVertices { n: usize, max: usize },
    /// A node budget was set and the backtracking search exceeded it.
    NodeBudgetExceeded { limit: u64 },
}

impl fmt::Display for MinRankError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinRankError::SearchSpaceTooLarge { required, guard } => {
                write!(f, "exhaustive search space {required} exceeds guard {guard}")
            }
            MinRankError::TooManyVertices { n, max } => {
                write!(f, "{n} vertices exceeds solver limit {max}")
            }
            MinRankError::NodeBudgetExceeded { limit } => {
                write!(f, "search node budget {limit} exceeded")
            }
        }
    }
}

impl std::error::Error for MinRankError {}

/// Which solver produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    F2Diagonal,
    CertificateSearch,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::F2Diagonal => "f2-diagonal",
            Method::CertificateSearch => "certificate-search",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Row-vector assignments made during backtracking.
    pub nodes: u64,
    /// Canonical forms whose search trees were (fully or partially) explored.
    pub forms_tried: usize,
}

/// Evidence attached to an answer about ranks at level `r`.
#[derive(Debug, Clone)]
pub enum RankCertificate {
    /// `matrix = x * S_form * x^T` matches the graph pattern and has rank at
    /// most `r`. Verified, not assumed, on every construction site.
    Witness { r: usize, form: CanonicalForm, x: FMatrix, matrix: FMatrix },
    /// A complete traversal at level `r` found no witness: every matrix in
    /// the pattern class has rank greater than `r`.
    Exhaustion { r: usize, stats: SearchStats },
}

impl RankCertificate {
    pub fn level(&self) -> usize {
        match self {
            RankCertificate::Witness { r, .. } | RankCertificate::Exhaustion { r, .. } => *r,
        }
    }

    pub fn is_witness(&self) -> bool {
        matches!(self, RankCertificate::Witness { .. })
    }

    pub fn witness_matrix(&self) -> Option<&FMatrix> {
        match self {
            RankCertificate::Witness { matrix, .. } => Some(matrix),
            RankCertificate::Exhaustion { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinRankResult {
    pub mr: usize,
    pub method: Method,
    pub certificate: RankCertificate,
    /// True when an exhaustive-solver cross-check was requested, admitted by
    /// its size guard, and agreed.
    pub cross_checked: bool,
}

/// Builds a witness certificate, re-verifying the factorization against the
/// graph. A failure here is an implementation bug, so it panics rather than
/// returning an error.
fn checked_witness(g: &Graph, r: usize, form: CanonicalForm, x: FMatrix) -> RankCertificate {
    let s = form.matrix(x.field(), x.cols());
    let matrix = x.mul(&s).mul(&x.transpose());
    assert!(
        graph::pattern_matches(&matrix, g).expect("witness dimensions match the graph"),
        "witness matrix does not match the graph pattern"
    );
    assert!(matrix.rank() <= r, "witness rank exceeds certificate level {r}");
    RankCertificate::Witness { r, form, x, matrix }
}

/// Wraps an already-minimal matrix from one of the enumerative solvers into
/// a witness certificate via congruence decomposition.
fn witness_from_matrix(g: &Graph, a: &FMatrix, mr: usize) -> RankCertificate {
    let (form, x) = symmetric_decompose(a).expect("solver produced a symmetric matrix");
    assert_eq!(x.cols(), mr, "decomposition rank disagrees with solver");
    checked_witness(g, mr, form, x)
}

// ============================================================================
// Exhaustive solver
// ============================================================================

pub fn exhaustive_minrank(g: &Graph, field: &Arc<Field>) -> Result<MinRankResult, MinRankError> {
    exhaustive_minrank_guarded(g, field, DEFAULT_EXHAUSTIVE_GUARD)
}

/// Exhaustive enumeration of `S(F, G)` with an explicit guard on the number
/// of matrices. Enumeration order: all edge values start at 1 and the
/// diagonal is swept fastest, so the reported witness is the first minimal
/// matrix in that fixed order.
pub fn exhaustive_minrank_guarded(
    g: &Graph,
    field: &Arc<Field>,
    guard: u64,
) -> Result<MinRankResult, MinRankError> {
    let n = g.n();
    let q = field.order() as u32;
    let edges = g.edges();

    let mut required: u128 = 1;
    for _ in 0..edges.len() {
        required = required.saturating_mul(u128::from(q - 1));
    }
    for _ in 0..n {
        required = required.saturating_mul(u128::from(q));
    }
    if required > u128::from(guard) {
        return Err(MinRankError::SearchSpaceTooLarge { required, guard });
    }

    let floor = rank_floor(g);
    let mut best: Option<FMatrix> = None;
    let mut best_rank = usize::MAX;

    let mut a = FMatrix::zeros(field, n, n);
    let mut edge_vals = vec![1u32; edges.len()];
    let mut diag = vec![0u32; n];
    'edges: loop {
        for (e, &(u, v)) in edges.iter().enumerate() {
            a.set(u, v, edge_vals[e]);
            a.set(v, u, edge_vals[e]);
        }
        diag.fill(0);
        loop {
            for (i, &d) in diag.iter().enumerate() {
                a.set(i, i, d);
            }
            let r = a.rank_capped(best_rank);
            if r < best_rank {
                best_rank = r;
                best = Some(a.clone());
                if best_rank <= floor {
                    break 'edges;
                }
            }
            if !increment_digits(&mut diag, 0, q) {
                break;
            }
        }
        if !increment_digits(&mut edge_vals, 1, q) {
            break;
        }
    }

    let best = best.expect("the enumeration is nonempty");
    Ok(MinRankResult {
        mr: best_rank,
        method: Method::Exhaustive,
        certificate: witness_from_matrix(g, &best, best_rank),
        cross_checked: false,
    })
}

/// Sharp generic lower bound: 0 without edges; 1 exactly when the edges form
/// a single clique on the non-isolated vertices (a symmetric rank-1 matrix is
/// `c vv^T`, whose off-diagonal support is complete on the support of `v`);
/// 2 otherwise.
fn rank_floor(g: &Graph) -> usize {
    if g.edge_count() == 0 {
        return 0;
    }
    let support: Vec<usize> = (0..g.n()).filter(|&v| g.neighbors(v) != 0).collect();
    let complete = support
        .iter()
        .enumerate()
        .all(|(idx, &u)| support[idx + 1..].iter().all(|&v| g.has_edge(u, v)));
    if complete {
        1
    } else {
        2
    }
}

/// Advances a little-endian odometer whose digits run over `lo..hi`;
/// returns false once it wraps around to the all-`lo` state.
fn increment_digits(digits: &mut [u32], lo: u32, hi: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < hi {
            return true;
        }
        *d = lo;
    }
    false
}

// ============================================================================
// F_2 diagonal sweep
// ============================================================================

/// Minimum rank over `F_2` by sweeping all `2^n` diagonals of the adjacency
/// matrix with word-parallel elimination.
pub fn f2_minrank(g: &Graph) -> Result<MinRankResult, MinRankError> {
    let n = g.n();
    if n > F2_DIAGONAL_MAX_VERTICES {
        return Err(MinRankError::TooManyVertices { n, max: F2_DIAGONAL_MAX_VERTICES });
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v)).collect();
    let floor = rank_floor(g);
    let mut rows = vec![0u64; n];
    let mut best_rank = usize::MAX;
    let mut best_diag = 0u64;
    for d in 0..1u64 << n {
        for (i, row) in rows.iter_mut().enumerate() {
            *row = adj[i] | (d >> i & 1) << i;
        }
        let r = f2::rank_capped_in_place(&mut rows, best_rank);
        if r < best_rank {
            best_rank = r;
            best_diag = d;
            if best_rank <= floor {
                break;
            }
        }
    }

    let f2_field = Arc::new(Field::prime(2).expect("2 is prime"));
    let a = FMatrix::from_fn(&f2_field, n, n, |i, j| {
        if i == j {
            (best_diag >> i & 1) as u32
        } else {
            u32::from(g.has_edge(i, j))
        }
    });
    Ok(MinRankResult {
        mr: best_rank,
        method: Method::F2Diagonal,
        certificate: witness_from_matrix(g, &a, best_rank),
        cross_checked: false,
    })
}

// ============================================================================
// Rank-level decision search
// ============================================================================

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Abort with [`MinRankError::NodeBudgetExceeded`] past this many
    /// assignments. `None` = run to completion (exhaustion certificates
    /// require a full traversal, so no budget is imposed by default).
    pub node_limit: Option<u64>,
    /// Worker threads for partitioning the first vertex's candidates.
    /// Results (including node counts) are identical for every value.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_limit: None, threads: 1 }
    }
}

pub fn rank_le_search(
    g: &Graph,
    field: &Arc<Field>,
    r: usize,
) -> Result<RankCertificate, MinRankError> {
    rank_le_search_opts(g, field, r, SearchOptions::default())
}

/// Decides whether some matrix in `S(F, G)` has rank at most `r`.
///
/// For each canonical form `S` of rank `r`, assigns a row vector
/// `x_v in F^r` to every vertex in a fixed order (annotated clique vertices
/// first, then by descending count of already-placed neighbors, ties by
/// label), requiring `x_u S x_v^T != 0` exactly on edges. The zero vector is
/// a legal row, so rank-deficient witnesses surface at level `r` too.
///
/// The single symmetry reduction is at the first vertex: its candidates are
/// restricted to one representative per orbit of the form's isometry group
/// (orbits computed from explicit generators, each checked to satisfy
/// `Q S Q^T = S`). Deeper symmetry pruning is deliberately omitted so the
/// traversal stays auditable.
pub fn rank_le_search_opts(
    g: &Graph,
    field: &Arc<Field>,
    r: usize,
    opts: SearchOptions,
) -> Result<RankCertificate, MinRankError> {
    let order = search_order(g);
    let forms = canonical_rank_forms(field, r);
    let mut nodes_total = 0u64;
    for &form in &forms {
        let ctx = SearchContext::new(g, field, r, form, &order);
        let budget = opts.node_limit.map(|l| l.saturating_sub(nodes_total));
        let (outcome, nodes) = ctx.run(budget, opts.threads)?;
        nodes_total += nodes;
        if let Some(assign) = outcome {
            // Rows of X in original vertex labels.
            let mut x = FMatrix::zeros(field, g.n(), r);
            for (t, &vertex) in order.iter().enumerate() {
                for (i, &c) in ctx.coords(assign[t]).iter().enumerate() {
                    x.set(vertex, i, c);
                }
            }
            return Ok(checked_witness(g, r, form, x));
        }
    }
    Ok(RankCertificate::Exhaustion {
        r,
        stats: SearchStats { nodes: nodes_total, forms_tried: forms.len() },
    })
}

/// Vertex placement order: annotated clique first, then greedily by placed
/// neighbors (ties by label).
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut order: Vec<usize> = g.clique().map(<[usize]>::to_vec).unwrap_or_default();
    let mut placed: u64 = order.iter().fold(0, |m, &v| m | 1 << v);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((g.neighbors(v) & placed).count_ones(), std::cmp::Reverse(v)))
            .expect("some vertex remains");
        order.push(next);
        placed |= 1 << next;
    }
    order
}

/// Immutable per-(graph, form, r) search state.
struct SearchContext<'a> {
    field: Arc<Field>,
    order: &'a [usize],
    /// `adjacent[t]` bit `s`: are order[t] and order[s] adjacent?
    adjacent: Vec<u64>,
    r: usize,
    vcount: usize,
    /// The canonical form matrix `S` (r x r).
    s: FMatrix,
    /// Base-q digits of every vector index, `vcount * r`.
    coord_table: Vec<FieldElement>,
    /// `S * v` for every vector, `vcount * r`, when within budget.
    sv_table: Option<Vec<FieldElement>>,
    /// Bit `w` of row `v`: `v S w^T != 0`. `words` u64s per row.
    masks: Option<Vec<u64>>,
    words: usize,
    /// First-vertex candidates: one representative per isometry orbit.
    roots: Vec<usize>,
}

impl<'a> SearchContext<'a> {
    fn new(g: &Graph, field: &Arc<Field>, r: usize, form: CanonicalForm, order: &'a [usize]) -> Self {
        let q = field.order() as usize;
        let vcount = q.pow(r as u32);
        let mut coord_table = vec![0u32; vcount * r];
        for v in 0..vcount {
            let mut rest = v;
            for i in 0..r {
                coord_table[v * r + i] = (rest % q) as u32;
                rest /= q;
            }
        }

        let s = form.matrix(field, r);
        let sv_table = (vcount.saturating_mul(r) <= SV_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; vcount * r];
            for v in 0..vcount {
                let coords = &coord_table[v * r..(v + 1) * r];
                for i in 0..r {
                    t[v * r + i] =
                        field.sum((0..r).map(|j| field.mul(s.get(i, j), coords[j])));
                }
            }
            t
        });

        let words = vcount.div_ceil(64).max(1);
        let masks = (vcount <= MASK_VECTOR_LIMIT && sv_table.is_some()).then(|| {
            let sv = sv_table.as_ref().unwrap();
            let mut m = vec![0u64; vcount * words];
            for v in 0..vcount {
                let coords = &coord_table[v * r..(v + 1) * r];
                for w in v..vcount {
                    let dot = field
                        .sum((0..r).map(|i| field.mul(coords[i], sv[w * r + i])));
                    if dot != 0 {
                        m[v * words + w / 64] |= 1 << (w % 64);
                        m[w * words + v / 64] |= 1 << (v % 64);
                    }
                }
            }
            m
        });

        let n = order.len();
        let mut adjacent = vec![0u64; n];
        for t in 0..n {
            for s_idx in 0..n {
                if g.has_edge(order[t], order[s_idx]) {
                    adjacent[t] |= 1 << s_idx;
                }
            }
        }

        let roots = orbit_representatives(field, &s, r, vcount, &coord_table);

        SearchContext {
            field: Arc::clone(field),
            order,
            adjacent,
            r,
            vcount,
            s,
            coord_table,
            sv_table,
            masks,
            words,
            roots,
        }
    }

    fn coords(&self, v: usize) -> &[FieldElement] {
        &self.coord_table[v * self.r..(v + 1) * self.r]
    }

    /// `u S v^T`.
    fn form_dot(&self, u: usize, v: usize) -> FieldElement {
        let f = &self.field;
        let uc = self.coords(u);
        if let Some(sv) = &self.sv_table {
            return f.sum((0..self.r).map(|i| f.mul(uc[i], sv[v * self.r + i])));
        }
        // Cache over budget: expand the bilinear form directly.
        let vc = self.coords(v);
        let mut acc = 0;
        for i in 0..self.r {
            if uc[i] == 0 {
                continue;
            }
            for j in 0..self.r {
                acc = f.add(acc, f.mul(f.mul(uc[i], self.s.get(i, j)), vc[j]));
            }
        }
        acc
    }

    /// Run the search; returns (witness assignment in order positions, nodes).
    fn run(
        &self,
        node_limit: Option<u64>,
        threads: usize,
    ) -> Result<(Option<Vec<usize>>, u64), MinRankError> {
        let n = self.order.len();
        if n == 0 {
            return Ok((Some(Vec::new()), 0));
        }
        // Budgeted searches run sequentially so the error is deterministic.
        let threads = if node_limit.is_some() { 1 } else { threads.max(1) };
        if threads == 1 || self.roots.len() <= 1 {
            let mut dfs = Dfs::new(self, node_limit);
            let witness = dfs.search_roots(&self.roots, None)?;
            return Ok((witness, dfs.nodes));
        }

        // Partition the first vertex's candidates into contiguous chunks.
        // Chunks run independently; a chunk that finds a witness cancels only
        // *later* chunks, so the merged answer and the node total both match
        // the sequential run exactly.
        let threads = threads.min(self.roots.len());
        let chunk_len = self.roots.len().div_ceil(threads);
        let winner = AtomicUsize::new(usize::MAX);
        let chunks: Vec<&[usize]> = self.roots.chunks(chunk_len).collect();
        let results: Vec<(Option<Vec<usize>>, u64)> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .enumerate()
                .map(|(idx, chunk)| {
                    let winner = &winner;
                    scope.spawn(move || {
                        let mut dfs = Dfs::new(self, None);
                        let witness = dfs
                            .search_roots(chunk, Some((winner, idx)))
                            .expect("no budget in threaded mode");
                        if witness.is_some() {
                            winner.fetch_min(idx, Ordering::SeqCst);
                        }
                        (witness, dfs.nodes)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        });

        let mut nodes = 0u64;
        for (witness, chunk_nodes) in results {
            nodes += chunk_nodes;
            if witness.is_some() {
                // Earlier chunks ran to completion without a witness, so this
                // is exactly the sequential outcome and node count.
                return Ok((witness, nodes));
            }
        }
        Ok((None, nodes))
    }
}

/// Backtracking state for one worker.
///
/// In mask mode the worker forward-checks: it keeps a live candidate bitmask
/// for every unplaced vertex and prunes as soon as one empties. This skips
/// only subtrees that contain no completions, so the first witness found (and
/// hence every reported answer) is the same as for plain backtracking.
struct Dfs<'c, 'a> {
    ctx: &'c SearchContext<'a>,
    assign: Vec<usize>,
    nodes: u64,
    node_limit: Option<u64>,
    cancel_poll: u64,
    /// Live candidate masks per order position (mask mode only).
    cand: Vec<Vec<u64>>,
    /// Undo stack of `cand` snapshots.
    saved: Vec<Vec<Vec<u64>>>,
}

impl<'c, 'a> Dfs<'c, 'a> {
    fn new(ctx: &'c SearchContext<'a>, node_limit: Option<u64>) -> Self {
        let n = ctx.order.len();
        let mut full = vec![u64::MAX; ctx.words];
        let tail_bits = ctx.vcount % 64;
        if tail_bits != 0 {
            full[ctx.words - 1] = (1u64 << tail_bits) - 1;
        }
        Dfs {
            ctx,
            assign: Vec::with_capacity(n),
            nodes: 0,
            node_limit,
            cancel_poll: 0,
            cand: vec![full; n],
            saved: Vec::with_capacity(n),
        }
    }

    fn search_roots(
        &mut self,
        roots: &[usize],
        cancel: Option<(&AtomicUsize, usize)>,
    ) -> Result<Option<Vec<usize>>, MinRankError> {
        for &root in roots {
            if let Some((winner, idx)) = cancel {
                if winner.load(Ordering::Relaxed) < idx {
                    return Ok(None); // a lower chunk already won; our work is discarded
                }
            }
            self.bump()?;
            if self.place(0, root, cancel)? {
                return Ok(Some(self.assign.clone()));
            }
        }
        Ok(None)
    }

    fn bump(&mut self) -> Result<(), MinRankError> {
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                return Err(MinRankError::NodeBudgetExceeded { limit });
            }
        }
        Ok(())
    }

    fn cancelled(&mut self, cancel: Option<(&AtomicUsize, usize)>) -> bool {
        if let Some((winner, idx)) = cancel {
            self.cancel_poll += 1;
            if self.cancel_poll % 4096 == 0 && winner.load(Ordering::Relaxed) < idx {
                return true;
            }
        }
        false
    }

    /// Assigns vector `v` (already counted and consistent) at `depth` and
    /// recurses. On success `assign` holds the full solution.
    fn place(
        &mut self,
        depth: usize,
        v: usize,
        cancel: Option<(&AtomicUsize, usize)>,
    ) -> Result<bool, MinRankError> {
        let ctx = self.ctx;
        let n = ctx.order.len();
        self.assign.push(v);
        if depth + 1 == n {
            return Ok(true);
        }
        if self.cancelled(cancel) {
            self.assign.pop();
            return Ok(false);
        }

        if let Some(masks) = &ctx.masks {
            let words = ctx.words;
            let row = &masks[v * words..(v + 1) * words];
            // Narrow every unplaced vertex's candidates by this assignment;
            // an empty set anywhere dooms the whole subtree.
            self.saved.push(self.cand.clone());
            let mut dead = false;
            for t in (depth + 1)..n {
                let adjacent = ctx.adjacent[t] >> depth & 1 == 1;
                let c = &mut self.cand[t];
                if adjacent {
                    for (a, &m) in c.iter_mut().zip(row) {
                        *a &= m;
                    }
                } else {
                    for (a, &m) in c.iter_mut().zip(row) {
                        *a &= !m;
                    }
                }
                if c.iter().all(|&w| w == 0) {
                    dead = true;
                    break;
                }
            }
            if !dead {
                let next: Vec<u64> = self.cand[depth + 1].clone();
                for (w, &word) in next.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let u = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        self.bump()?;
                        if self.place(depth + 1, u, cancel)? {
                            return Ok(true);
                        }
                    }
                }
            }
            self.cand = self.saved.pop().expect("matching snapshot");
        } else {
            // Large vector space: no masks, check placed constraints directly.
            for u in 0..ctx.vcount {
                let ok = self.assign.iter().enumerate().all(|(s, &xs)| {
                    let adjacent = ctx.adjacent[depth + 1] >> s & 1 == 1;
                    (ctx.form_dot(xs, u) != 0) == adjacent
                });
                if !ok {
                    continue;
                }
                self.bump()?;
                if self.place(depth + 1, u, cancel)? {
                    return Ok(true);
                }
            }
        }
        self.assign.pop();
        Ok(false)
    }
}

// ============================================================================
// Isometry orbits for the first-vertex reduction
// ============================================================================

/// One representative (the smallest index) per orbit of the subgroup of
/// isometries of `S` generated by [`isometry_generators`]. Subgroup orbits
/// refine the true orbits, so the representatives always form a covering
/// set — soundness never depends on the generator list being complete.
fn orbit_representatives(
    field: &Arc<Field>,
    s: &FMatrix,
    r: usize,
    vcount: usize,
    coord_table: &[FieldElement],
) -> Vec<usize> {
    let gens = isometry_generators(field, s, r);
    let mut parent: Vec<usize> = (0..vcount).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let q = field.order() as usize;
    for gen in &gens {
        for v in 0..vcount {
            // w = v * gen (row vector times matrix), re-encoded base q.
            let coords = &coord_table[v * r..(v + 1) * r];
            let mut w = 0usize;
            for j in (0..r).rev() {
                let entry =
                    field.sum((0..r).map(|i| field.mul(coords[i], gen.get(i, j))));
                w = w * q + entry as usize;
            }
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                // Union by smaller index so each root is its orbit's minimum.
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }
    let mut reps = Vec::new();
    for v in 0..vcount {
        if find(&mut parent, v) == v {
            reps.push(v);
        }
    }
    reps
}

/// Generators of (a subgroup of) the isometry group of the canonical form
/// `S`: coordinate permutations that fix `S`, sign flips in odd
/// characteristic, and hyperbolic scalings for the alternating form. Each
/// generator is asserted to satisfy `Q S Q^T = S`.
fn isometry_generators(field: &Arc<Field>, s: &FMatrix, r: usize) -> Vec<FMatrix> {
    let mut gens: Vec<FMatrix> = Vec::new();
    if r == 0 {
        return gens;
    }
    let mut push = |q: FMatrix| {
        assert!(
            q.mul(s).mul(&q.transpose()) == *s,
            "generator is not an isometry of the form"
        );
        gens.push(q);
    };

    let transposition = |i: usize, j: usize| {
        let mut m = FMatrix::identity(field, r);
        m.set(i, i, 0);
        m.set(j, j, 0);
        m.set(i, j, 1);
        m.set(j, i, 1);
        m
    };

    let diag_entries: Vec<FieldElement> = (0..r).map(|i| s.get(i, i)).collect();
    let is_alternating = (0..r).all(|i| s.get(i, i) == 0) && r % 2 == 0 && r > 0;

    if is_alternating {
        // Within-block swap, block transposition, and hyperbolic scalings.
        push(transposition(0, 1));
        if r >= 4 {
            let mut m = FMatrix::identity(field, r);
            for (a, b) in [(0, 2), (1, 3)] {
                m.set(a, a, 0);
                m.set(b, b, 0);
                m.set(a, b, 1);
                m.set(b, a, 1);
            }
            push(m);
        }
        for d in 2..field.order() as u32 {
            let mut m = FMatrix::identity(field, r);
            m.set(0, 0, d);
            m.set(1, 1, field.inv(d));
            push(m);
        }
    } else {
        // Transpositions between coordinates with equal diagonal weight.
        for i in 0..r.saturating_sub(1) {
            if diag_entries[i] == diag_entries[i + 1] {
                push(transposition(i, i + 1));
            }
        }
        // Sign flips (trivial in characteristic 2).
        if !field.char_two() {
            let mut m = FMatrix::identity(field, r);
            m.set(0, 0, field.neg(1));
            push(m);
            if r >= 2 {
                let mut m = FMatrix::identity(field, r);
                m.set(r - 1, r - 1, field.neg(1));
                push(m);
            }
        }
    }
    gens
}

// ============================================================================
// Top-level minimum rank
// ============================================================================

/// Minimum rank via the certificate search: tries `r = 0, 1, ..` until a
/// witness appears. Termination is guaranteed (the adjacency matrix itself
/// matches at `r = n`).
pub fn certificate_minrank(g: &Graph, field: &Arc<Field>) -> Result<MinRankResult, MinRankError> {
    certificate_minrank_opts(g, field, SearchOptions::default())
}

pub fn certificate_minrank_opts(
    g: &Graph,
    field: &Arc<Field>,
    opts: SearchOptions,
) -> Result<MinRankResult, MinRankError> {
    for r in 0..=g.n() {
        if let cert @ RankCertificate::Witness { .. } = rank_le_search_opts(g, field, r, opts)? {
            return Ok(MinRankResult {
                mr: r,
                method: Method::CertificateSearch,
                certificate: cert,
                cross_checked: false,
            });
        }
    }
    unreachable!("a witness exists at r = n for every graph")
}

#[derive(Debug, Clone, Copy)]
pub struct MinRankOptions {
    /// Also run the exhaustive solver (when its guard admits the instance)
    /// and panic on disagreement.
    pub cross_check: bool,
    pub exhaustive_guard: u64,
    pub search: SearchOptions,
}

impl Default for MinRankOptions {
    fn default() -> Self {
        MinRankOptions {
            cross_check: false,
            exhaustive_guard: DEFAULT_EXHAUSTIVE_GUARD,
            search: SearchOptions::default(),
        }
    }
}

/// Minimum rank with automatic solver choice: the diagonal sweep over `F_2`
/// (when `n` permits), otherwise the certificate search.
pub fn minrank(g: &Graph, field: &Arc<Field>) -> Result<MinRankResult, MinRankError> {
    minrank_opts(g, field, MinRankOptions::default())
}

pub fn minrank_opts(
    g: &Graph,
    field: &Arc<Field>,
    opts: MinRankOptions,
) -> Result<MinRankResult, MinRankError> {
    let result = if field.order() == 2 && g.n() <= F2_DIAGONAL_MAX_VERTICES {
        f2_minrank(g)?
    } else {
        certificate_minrank_opts(g, field, opts.search)?
    };
    if opts.cross_check {
        match exhaustive_minrank_guarded(g, field, opts.exhaustive_guard) {
            Ok(ex) => {
                assert_eq!(
                    ex.mr, result.mr,
                    "exhaustive and primary solvers disagree — implementation bug"
                );
                return Ok(MinRankResult { cross_checked: true, ..result });
            }
            Err(MinRankError::SearchSpaceTooLarge { .. }) => {} // cross-check skipped
            Err(e) => return Err(e),
        }
    }
    Ok(result)
}

// ============================================================================
// Tests
// ============================================================================
