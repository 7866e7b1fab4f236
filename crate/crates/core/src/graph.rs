//! Small labeled graphs and their matrix patterns.
//!
//! Graphs are simple and undirected, on at most 64 vertices (adjacency rows
//! are `u64` bitmasks). Two exchange formats are supported:
//!
//! * an edge list: header `n m`, then `m` lines `u v` with 1-based vertex
//!   labels;
//! * graph6 (short form, `n < 63`): one printable ASCII string per graph,
//!   with the upper triangle packed in column order, six bits per character,
//!   each character offset by 63.
//!
//! A graph may carry an optional *clique annotation* — a set of vertices
//! known to be pairwise adjacent — which the low-rank constructions and
//! searches use for vertex ordering. The annotation is advisory and is not
//! part of graph equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::RngCore;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg::FMatrix;

pub const MAX_VERTICES: usize = 64;

/// Largest `n` for which [`enumerate_labeled_graphs`] will iterate all
/// `2^(n(n-1)/2)` labeled graphs.
pub const MAX_ENUMERATE: usize = 7;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    BadHeader(String),
    VertexOutOfRange { v: usize, n: usize },
    DuplicateEdge { u: usize, v: usize },
    SelfLoop { u: usize },
    TooManyVertices { n: usize },
    BadGraph6(String),
    /// graph6 short form cannot encode graphs on 63 or more vertices.
    TooLargeForGraph6 { n: usize },
    NotAClique,
    DimensionMismatch { rows: usize, cols: usize, n: usize },
    TooLargeToEnumerate { n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::BadHeader(s) => write!(f, "bad edge-list header: {s}"),
            GraphError::VertexOutOfRange { v, n } => {
                write!(f, "vertex {v} out of range 1..={n}")
            }
            GraphError::DuplicateEdge { u, v } => write!(f, "edge {u}-{v} listed twice"),
            GraphError::SelfLoop { u } => write!(f, "self-loop at vertex {u}"),
            GraphError::TooManyVertices { n } => {
                write!(f, "{n} vertices exceeds the supported maximum {MAX_VERTICES}")
            }
            GraphError::BadGraph6(s) => write!(f, "bad graph6: {s}"),
            GraphError::TooLargeForGraph6 { n } => {
                write!(f, "graph6 short form is limited to n < 63, got n = {n}")
            }
            GraphError::NotAClique => write!(f, "listed vertices are not pairwise adjacent"),
            GraphError::DimensionMismatch { rows, cols, n } => {
                write!(f, "{rows}x{cols} matrix cannot match a graph on {n} vertices")
            }
            GraphError::TooLargeToEnumerate { n } => {
                write!(f, "refusing to enumerate all labeled graphs on {n} > {MAX_ENUMERATE} vertices")
            }
        }
    }
}

impl std::error::Error for GraphError {}

// ============================================================================
// Graph
// ============================================================================

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    clique: Option<Vec<usize>>,
}

/// Equality compares vertex count and adjacency only; the clique annotation
/// is a hint, not part of the graph.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}
impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl Graph {
    /// An edgeless graph on `n` vertices (0-based labels `0..n`).
    pub fn new(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices supported");
        Graph { n, adj: vec![0; n], clique: None }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v}) for n = {}", self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        u != v && self.adj[u] >> v & 1 == 1
    }

    /// Neighbor set of `u` as a bitmask.
    #[inline]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut rest = self.adj[u] >> (u + 1) << (u + 1);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// The clique annotation, if one has been attached.
    pub fn clique(&self) -> Option<&[usize]> {
        self.clique.as_deref()
    }

    /// Attaches a clique annotation after verifying pairwise adjacency.
    pub fn set_clique(&mut self, mut vertices: Vec<usize>) -> Result<(), GraphError> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.iter().any(|&v| v >= self.n) {
            return Err(GraphError::NotAClique);
        }
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if !self.has_edge(u, v) {
                    return Err(GraphError::NotAClique);
                }
            }
        }
        self.clique = Some(vertices);
        Ok(())
    }

    /// 0/1 adjacency matrix over the given field.
    pub fn adjacency_matrix(&self, field: &Arc<Field>) -> FMatrix {
        FMatrix::from_fn(field, self.n, self.n, |i, j| u32::from(self.has_edge(i, j)))
    }

    /// Induced subgraph on `vertices` (new label `i` = `vertices[i]`).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut h = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.add_edge(i, j);
                }
            }
        }
        h
    }
}

// ============================================================================
// Edge-list format
// ============================================================================

/// Parses `n m` followed by `m` lines `u v`, 1-based, ignoring blank lines.
/// Edges may be written in either order but each unordered pair at most once.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| GraphError::BadHeader("empty input".into()))?;
    let mut it = header.split_whitespace();
    let (Some(ns), Some(ms), None) = (it.next(), it.next(), it.next()) else {
        return Err(GraphError::BadHeader(format!("expected `n m`, got {header:?}")));
    };
    let n: usize = ns.parse().map_err(|_| GraphError::BadHeader(format!("bad vertex count {ns:?}")))?;
    let m: usize = ms.parse().map_err(|_| GraphError::BadHeader(format!("bad edge count {ms:?}")))?;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n });
    }
    let mut g = Graph::new(n);
    let mut count = 0;
    for line in lines {
        let mut it = line.split_whitespace();
        let (Some(us), Some(vs), None) = (it.next(), it.next(), it.next()) else {
            return Err(GraphError::BadHeader(format!("expected `u v`, got {line:?}")));
        };
        let u: usize = us.parse().map_err(|_| GraphError::BadHeader(format!("bad vertex {us:?}")))?;
        let v: usize = vs.parse().map_err(|_| GraphError::BadHeader(format!("bad vertex {vs:?}")))?;
        for w in [u, v] {
            if w < 1 || w > n {
                return Err(GraphError::VertexOutOfRange { v: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { u });
        }
        let (a, b) = (u.min(v) - 1, u.max(v) - 1);
        if g.has_edge(a, b) {
            return Err(GraphError::DuplicateEdge { u: a + 1, v: b + 1 });
        }
        g.add_edge(a, b);
        count += 1;
    }
    if count != m {
        return Err(GraphError::BadHeader(format!("header promised {m} edges, found {count}")));
    }
    Ok(g)
}

/// Renders the edge-list format (header plus 1-based `u v` lines).
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

// ============================================================================
// graph6 (short form)
// ============================================================================

/// Upper-triangle pairs in graph6 column order: (0,1), (0,2), (1,2), (0,3), ...
fn graph6_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |j| (0..j).map(move |i| (i, j)))
}

pub fn emit_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n >= 63 {
        return Err(GraphError::TooLargeForGraph6 { n });
    }
    let mut bytes = vec![(n + 63) as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, j) in graph6_pairs(n) {
        acc = acc << 1 | u8::from(g.has_edge(i, j));
        filled += 1;
        if filled == 6 {
            bytes.push(acc + 63);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are printable ASCII"))
}

pub fn parse_graph6(s: &str) -> Result<Graph, GraphError> {
    let bad = |msg: &str| GraphError::BadGraph6(format!("{msg} in {s:?}"));
    let bytes = s.trim_end_matches(['\r', '\n']).as_bytes();
    let [first, rest @ ..] = bytes else {
        return Err(bad("empty string"));
    };
    if !(63..126).contains(first) {
        return Err(bad("bad length byte (only short form, n < 63, is supported)"));
    }
    let n = (first - 63) as usize;
    let pair_count = n * n.saturating_sub(1) / 2;
    let expected = pair_count.div_ceil(6);
    if rest.len() != expected {
        return Err(bad(&format!("expected {expected} data characters, got {}", rest.len())));
    }
    if let Some(&b) = rest.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(&format!("byte {b} out of graph6 range")));
    }
    let mut g = Graph::new(n);
    let mut bit_index = 0;
    for (i, j) in graph6_pairs(n) {
        let byte = rest[bit_index / 6] - 63;
        if byte >> (5 - bit_index % 6) & 1 == 1 {
            g.add_edge(i, j);
        }
        bit_index += 1;
    }
    // Padding bits beyond the triangle must be zero.
    while bit_index < 6 * expected {
        if (rest[bit_index / 6] - 63) >> (5 - bit_index % 6) & 1 == 1 {
            return Err(bad("nonzero padding bits"));
        }
        bit_index += 1;
    }
    Ok(g)
}

// ============================================================================
// Matrix patterns
// ============================================================================

/// Whether the matrix belongs to the pattern class of `g`: symmetric, and its
/// off-diagonal entry `(i, j)` is nonzero exactly when `ij` is an edge.
/// Diagonal entries are unconstrained.
pub fn pattern_matches(a: &FMatrix, g: &Graph) -> Result<bool, GraphError> {
    if a.rows() != g.n() || a.cols() != g.n() {
        return Err(GraphError::DimensionMismatch { rows: a.rows(), cols: a.cols(), n: g.n() });
    }
    if !a.is_symmetric() {
        return Ok(false);
    }
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if (a.get(i, j) != 0) != g.has_edge(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ============================================================================
// Cliques
// ============================================================================

/// The lexicographically smallest `k`-clique, if any. Depth-first over
/// vertices in label order with candidate-set pruning; at the orders used
/// here (n <= ~20) this is instantaneous.
pub fn find_clique(g: &Graph, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if k > g.n() {
        return None;
    }
    let full: u64 = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut chosen = Vec::with_capacity(k);
    if extend_clique(g, k, full, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn extend_clique(g: &Graph, k: usize, candidates: u64, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    let need = k - chosen.len();
    let mut rest = candidates;
    while rest != 0 {
        if (rest.count_ones() as usize) < need {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        chosen.push(v);
        if extend_clique(g, k, rest & g.neighbors(v), chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Relabels so the given clique occupies vertices `0..k` (preserving relative
/// order within the clique and among the rest). Returns the relabeled graph,
/// annotated with its clique, and the permutation with `perm[new] = old`.
/// Matrices indexed by the new labels translate back to the original graph
/// via [`FMatrix::permute_symmetric`] with the inverse permutation.
pub fn relabel_clique_first(g: &Graph, clique: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != clique.len() {
        return Err(GraphError::NotAClique);
    }
    // set_clique re-validates adjacency below; check membership first.
    if sorted.iter().any(|&v| v >= g.n()) {
        return Err(GraphError::NotAClique);
    }
    let mut perm = sorted.clone();
    let in_clique: u64 = sorted.iter().fold(0, |m, &v| m | 1 << v);
    perm.extend((0..g.n()).filter(|&v| in_clique >> v & 1 == 0));
    let mut old_to_new = vec![0usize; g.n()];
    for (new, &old) in perm.iter().enumerate() {
        old_to_new[old] = new;
    }
    let mut h = Graph::new(g.n());
    for (u, v) in g.edges() {
        h.add_edge(old_to_new[u], old_to_new[v]);
    }
    h.set_clique((0..sorted.len()).collect()).map_err(|_| GraphError::NotAClique)?;
    Ok((h, perm))
}

/// Inverse of a relabeling permutation (`perm[new] = old` becomes
/// `inv[old] = new`).
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    inv
}

// ============================================================================
// Enumeration and sampling
// ============================================================================

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices, in upper-triangle
/// bitmask order: bit `t` of the mask is the `t`-th pair in row-major order
/// (0,1), (0,2), .., (0,n-1), (1,2), ...
pub fn enumerate_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    if n > MAX_ENUMERATE {
        return Err(GraphError::TooLargeToEnumerate { n });
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total: u64 = 1 << pairs.len();
    Ok((0..total).map(move |mask| {
        let mut g = Graph::new(n);
        for (t, &(i, j)) in pairs.iter().enumerate() {
            if mask >> t & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        g
    }))
}

/// One uniform labeled graph (each edge an independent fair coin) drawn from
/// an existing generator: one `next_u32` keystream draw per vertex pair, in
/// row-major upper-triangle order, low bit decides.
pub fn random_graph_from(rng: &mut impl RngCore, n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_u32() & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Seeded uniform labeled graph; fully determined by `(n, seed)`.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    use rand::SeedableRng;
    random_graph_from(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn basic_accessors() {
        let g = Graph::with_edges(4, &[(0, 1), (1, 2)]);
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert!(!g.has_edge(2, 2));
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.neighbors(3), 0);
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = parse_edge_list("3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g, Graph::with_edges(3, &[(0, 1), (1, 2)]));
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);

        // Order within a line is free.
        assert_eq!(parse_edge_list("3 1\n3 1\n").unwrap(), Graph::with_edges(3, &[(0, 2)]));

        assert!(matches!(parse_edge_list(""), Err(GraphError::BadHeader(_))));
        assert!(matches!(parse_edge_list("2 1\n1 1\n"), Err(GraphError::SelfLoop { u: 1 })));
        assert!(matches!(
            parse_edge_list("2 2\n1 2\n2 1\n"),
            Err(GraphError::DuplicateEdge { u: 1, v: 2 })
        ));
        assert!(matches!(
            parse_edge_list("2 1\n1 3\n"),
            Err(GraphError::VertexOutOfRange { v: 3, n: 2 })
        ));
        assert!(matches!(parse_edge_list("2 5\n1 2\n"), Err(GraphError::BadHeader(_))));
        assert!(matches!(parse_edge_list("99 0\n"), Err(GraphError::TooManyVertices { n: 99 })));
    }

    #[test]
    fn graph6_known_strings() {
        // Triangle: three edge bits then three padding zeros.
        assert_eq!(emit_graph6(&Graph::complete(3)).unwrap(), "Bw");
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));

        // Single vertex.
        assert_eq!(emit_graph6(&Graph::new(1)).unwrap(), "@");
        assert_eq!(parse_graph6("@").unwrap(), Graph::new(1));

        // Five vertices, edges (0,2) (0,4) (1,3) (3,4).
        let g = Graph::with_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(emit_graph6(&g).unwrap(), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn graph6_round_trip_exhaustive_small() {
        for n in 0..=5 {
            for g in enumerate_labeled_graphs(n).unwrap() {
                let s = emit_graph6(&g).unwrap();
                assert_eq!(parse_graph6(&s).unwrap(), g, "round trip failed for {s}");
            }
        }
    }

    #[test]
    fn graph6_rejects_malformed_input() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("B").is_err()); // missing data characters
        assert!(parse_graph6("Bww").is_err()); // too many
        assert!(parse_graph6("Bx").is_err()); // nonzero padding (x = 0b111001 + 63)
        assert!(parse_graph6("B\x1f").is_err()); // byte below 63
        assert!(parse_graph6("~??").is_err()); // long form / n >= 63 unsupported
        let g64 = Graph::new(64);
        assert!(matches!(emit_graph6(&g64), Err(GraphError::TooLargeForGraph6 { n: 64 })));
    }

    #[test]
    fn pattern_matching() {
        let f3 = Arc::new(Field::prime(3).unwrap());
        let path = Graph::with_edges(3, &[(0, 1), (1, 2)]);
        let a = FMatrix::from_rows(&f3, vec![vec![2, 1, 0], vec![1, 0, 2], vec![0, 2, 1]]);
        assert!(pattern_matches(&a, &path).unwrap());

        // Wrong zero pattern.
        let b = FMatrix::from_rows(&f3, vec![vec![2, 1, 1], vec![1, 0, 2], vec![1, 2, 1]]);
        assert!(!pattern_matches(&b, &path).unwrap());

        // Asymmetric matrices never match.
        let c = FMatrix::from_rows(&f3, vec![vec![0, 1, 0], vec![2, 0, 1], vec![0, 1, 0]]);
        assert!(!pattern_matches(&c, &path).unwrap());

        let k2 = Graph::complete(2);
        assert!(matches!(
            pattern_matches(&a, &k2),
            Err(GraphError::DimensionMismatch { .. })
        ));

        // The adjacency matrix always matches its own graph.
        assert!(pattern_matches(&path.adjacency_matrix(&f3), &path).unwrap());
    }

    #[test]
    fn clique_search_prefers_lexicographically_smallest() {
        // Two triangles sharing vertex 2; {0,1,2} comes first.
        let g = Graph::with_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(find_clique(&g, 3), Some(vec![0, 1, 2]));
        assert_eq!(find_clique(&g, 4), None);
        assert_eq!(find_clique(&g, 1), Some(vec![0]));
        assert_eq!(find_clique(&g, 0), Some(vec![]));
        assert_eq!(find_clique(&Graph::new(3), 2), None);
        assert_eq!(find_clique(&Graph::complete(6), 6), Some((0..6).collect()));
    }

    /// Brute-force cross-check on every labeled graph up to 5 vertices: the
    /// search agrees with subset enumeration on existence and returns the
    /// lexicographically smallest witness.
    #[test]
    fn clique_search_matches_brute_force() {
        for n in 0..=5usize {
            for g in enumerate_labeled_graphs(n).unwrap() {
                for k in 0..=n {
                    let brute = lex_subsets(n, k)
                        .into_iter()
                        .find(|s| s.iter().enumerate().all(|(i, &u)| {
                            s[i + 1..].iter().all(|&v| g.has_edge(u, v))
                        }));
                    assert_eq!(find_clique(&g, k), brute);
                }
            }
        }
    }

    fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(n, k, v + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut cur, &mut out);
        out
    }

    #[test]
    fn relabeling_puts_clique_first() {
        // Triangle on {1, 3, 4} inside a 5-vertex graph.
        let g = Graph::with_edges(5, &[(1, 3), (1, 4), (3, 4), (0, 4), (2, 3)]);
        let (h, perm) = relabel_clique_first(&g, &[4, 1, 3]).unwrap();
        assert_eq!(perm, vec![1, 3, 4, 0, 2]);
        assert_eq!(h.clique(), Some(&[0, 1, 2][..]));
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(h.has_edge(i, j), g.has_edge(perm[i], perm[j]));
            }
        }
        // {0,1,2} is now a clique.
        assert!(h.has_edge(0, 1) && h.has_edge(0, 2) && h.has_edge(1, 2));

        assert_eq!(relabel_clique_first(&g, &[0, 1]), Err(GraphError::NotAClique));
        assert_eq!(relabel_clique_first(&g, &[1, 1, 3]), Err(GraphError::NotAClique));
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        let all: Vec<Graph> = enumerate_labeled_graphs(4).unwrap().collect();
        assert_eq!(all.len(), 64);
        let distinct: HashSet<&Graph> = all.iter().collect();
        assert_eq!(distinct.len(), 64);
        assert!(enumerate_labeled_graphs(8).is_err());
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = random_graph(12, 2024);
        let b = random_graph(12, 2024);
        assert_eq!(a, b);
        // Not a proof, but seeds this far apart colliding would be alarming.
        assert_ne!(random_graph(12, 2024), random_graph(12, 2025));
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::with_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h, Graph::with_edges(3, &[(0, 1), (1, 2)]));
        let single = g.induced(&[2]);
        assert_eq!(single, Graph::new(1));
    }
}
