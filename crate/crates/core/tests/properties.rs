//! Randomized property tests tying the algebra, graph encodings, and
//! solvers together: invariants that must hold for every instance, checked
//! on generated ones.

use std::sync::Arc;

use proptest::collection::vec;
use proptest::prelude::*;

use mrff::field::Field;
use mrff::graph::{self, Graph};
use mrff::linalg::{symmetric_decompose, BlockSplit, FMatrix, LinAlgError};
use mrff::minrank::{
    certificate_minrank, exhaustive_minrank, minrank, rank_le_search_opts, SearchOptions,
};

fn named_field(name: &'static str) -> Arc<Field> {
    Arc::new(Field::parse(name).expect("valid field name"))
}

fn arb_field() -> impl Strategy<Value = Arc<Field>> {
    prop_oneof![
        Just("2"),
        Just("3"),
        Just("4"),
        Just("5"),
        Just("7"),
        Just("8"),
        Just("9"),
    ]
    .prop_map(named_field)
}

/// Arbitrary square matrix over an arbitrary small field.
fn arb_matrix(max_n: usize) -> impl Strategy<Value = FMatrix> {
    (arb_field(), 1..=max_n).prop_flat_map(|(f, n)| {
        let q = f.order() as u32;
        vec(0..q, n * n)
            .prop_map(move |data| FMatrix::from_fn(&f, n, n, |i, j| data[i * n + j]))
    })
}

/// Arbitrary symmetric matrix over an arbitrary small field.
fn arb_symmetric(max_n: usize) -> impl Strategy<Value = FMatrix> {
    (arb_field(), 1..=max_n).prop_flat_map(|(f, n)| {
        let q = f.order() as u32;
        vec(0..q, n * (n + 1) / 2).prop_map(move |upper| {
            let mut a = FMatrix::zeros(&f, n, n);
            let mut idx = 0;
            for i in 0..n {
                for j in i..n {
                    a.set(i, j, upper[idx]);
                    a.set(j, i, upper[idx]);
                    idx += 1;
                }
            }
            a
        })
    })
}

/// Arbitrary labeled graph on up to `max_n` vertices.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut idx = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if bits[idx] {
                        g.add_edge(i, j);
                    }
                    idx += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(a in arb_matrix(6)) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn rank_capped_truncates_exactly(a in arb_matrix(6), cap in 0usize..8) {
        prop_assert_eq!(a.rank_capped(cap), a.rank().min(cap));
    }

    #[test]
    fn rank_is_permutation_invariant(a in arb_symmetric(6), seed in any::<u64>()) {
        let n = a.rows();
        // Derive a permutation from the seed deterministically.
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let b = a.permute_symmetric(&perm);
        prop_assert_eq!(a.rank(), b.rank());
        prop_assert!(b.is_symmetric());
    }

    #[test]
    fn rank_is_diagonal_congruence_invariant(a in arb_symmetric(6), seed in any::<u64>()) {
        let f = Arc::clone(a.field());
        let q = f.order();
        let mut state = seed;
        let d: Vec<u32> = (0..a.rows())
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                1 + ((state >> 33) % (q - 1)) as u32
            })
            .collect();
        let b = a.congruence_diag(&d).expect("nonzero scales");
        prop_assert_eq!(a.rank(), b.rank());
    }

    #[test]
    fn schur_complement_is_rank_additive(a in arb_symmetric(6), head in 1usize..5) {
        let n = a.rows();
        prop_assume!(head < n);
        match a.schur_complement(BlockSplit { head }) {
            Ok(schur) => {
                let trailing = a.block(head, n, head, n);
                prop_assert_eq!(a.rank(), trailing.rank() + schur.rank());
            }
            Err(LinAlgError::SingularTrailingBlock) => {}
            Err(other) => prop_assert!(false, "unexpected error {other}"),
        }
    }

    #[test]
    fn decomposition_round_trips(a in arb_symmetric(5)) {
        let (form, x) = symmetric_decompose(&a).expect("symmetric input");
        prop_assert_eq!(x.cols(), a.rank());
        let s = form.matrix(a.field(), x.cols());
        prop_assert_eq!(x.mul(&s).mul(&x.transpose()), a);
    }

    #[test]
    fn graph6_round_trips(g in arb_graph(40)) {
        let s = graph::emit_graph6(&g).expect("n < 63");
        prop_assert_eq!(graph::parse_graph6(&s).expect("own output"), g);
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph(12)) {
        let text = graph::emit_edge_list(&g);
        prop_assert_eq!(graph::parse_edge_list(&text).expect("own output"), g);
    }
}

// Solver properties are costlier per case; run fewer.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solvers_agree_on_tiny_instances(g in arb_graph(4), f in arb_field()) {
        prop_assume!(f.order() <= 5);
        let a = exhaustive_minrank(&g, &f).expect("small space");
        let b = certificate_minrank(&g, &f).expect("small instance");
        prop_assert_eq!(a.mr, b.mr);
    }

    #[test]
    fn minrank_is_deterministic_and_witnessed(g in arb_graph(5), f in arb_field()) {
        let first = minrank(&g, &f).expect("small instance");
        let second = minrank(&g, &f).expect("small instance");
        prop_assert_eq!(first.mr, second.mr);
        prop_assert!(first.mr <= g.n());
        if g.edge_count() == 0 {
            prop_assert_eq!(first.mr, 0);
        } else {
            prop_assert!(first.mr >= 1);
        }
        let w = first.certificate.witness_matrix().expect("minimum is witnessed");
        prop_assert!(graph::pattern_matches(w, &g).expect("matching order"));
        prop_assert_eq!(w.rank(), first.mr);
    }

    #[test]
    fn thread_count_does_not_change_answers(g in arb_graph(5), r in 0usize..4) {
        let f = named_field("3");
        let seq = rank_le_search_opts(&g, &f, r, SearchOptions { node_limit: None, threads: 1 })
            .expect("in range");
        let par = rank_le_search_opts(&g, &f, r, SearchOptions { node_limit: None, threads: 4 })
            .expect("in range");
        prop_assert_eq!(seq.is_witness(), par.is_witness());
        prop_assert_eq!(seq.level(), par.level());
    }

    #[test]
    fn induced_subgraphs_never_need_more_rank(g in arb_graph(5), f in arb_field()) {
        prop_assume!(f.order() <= 4);
        let whole = minrank(&g, &f).expect("small instance").mr;
        for drop in 0..g.n() {
            let keep: Vec<usize> = (0..g.n()).filter(|&v| v != drop).collect();
            let sub = minrank(&g.induced(&keep), &f).expect("small instance").mr;
            prop_assert!(sub <= whole);
        }
    }
}
