//! Cross-module invariants, mostly property-based.

use isoperturb::engine::{
    self, inverse_columns_exact, partition, similar, verify_mapping, SigQuant,
};
use isoperturb::graph::{
    emit_edge_list, emit_graph6, generate, generate_permuted_pair, parse_edge_list, parse_graph6,
    Graph, GraphKind, Permutation,
};
use isoperturb::matrix::GraphMatrix;
use isoperturb::oracle;
use isoperturb::scalar::{Rat, ScalarOps};
use isoperturb::solve::{det_exact, invert_exact};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn arb_graph(max_n: u32) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.0..=1.0f64, any::<u64>())
        .prop_map(|(n, prob, seed)| generate(&GraphKind::Gnp { n, prob }, seed).unwrap())
}

fn arb_perm_for(n: u32) -> impl Strategy<Value = Permutation> {
    any::<u64>().prop_map(move |seed| Permutation::random(n, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(12)) {
        let text = emit_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        // The emitter is canonical: emitting the reparse is byte-identical.
        prop_assert_eq!(emit_edge_list(&back), text);
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(40)) {
        let enc = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn permute_inverse_restores(g in arb_graph(12), seed in any::<u64>()) {
        let p = Permutation::random(g.vertex_count(), seed);
        let there = g.permute(&p).unwrap();
        let back = there.permute(&p.inverse()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn permute_maps_degrees(g in arb_graph(12), seed in any::<u64>()) {
        let p = Permutation::random(g.vertex_count(), seed);
        let h = g.permute(&p).unwrap();
        let dg = g.degree_info().degrees;
        let dh = h.degree_info().degrees;
        // Vertex u of h corresponds to vertex p(u) of g.
        for u in 1..=g.vertex_count() {
            prop_assert_eq!(dh[u as usize - 1], dg[p.image(u) as usize - 1]);
        }
    }

    #[test]
    fn permuted_pairs_stay_similar(seed in any::<u64>(), n in 4..=8u32) {
        let (g, h, p) = generate_permuted_pair(&GraphKind::Gnp { n, prob: 0.5 }, seed).unwrap();
        prop_assert!(verify_mapping(&g, &h, &p));
        if g.edge_count() == 0 {
            return Ok(());
        }
        let cols_g = inverse_columns_exact(&GraphMatrix::build(&g).unwrap());
        let cols_h = inverse_columns_exact(&GraphMatrix::build(&h).unwrap());
        prop_assert!(similar(&cols_g, &cols_h, &SigQuant::exact()).unwrap());
    }

    #[test]
    fn oracle_counts_are_permutation_invariant(seed in any::<u64>(), n in 3..=6u32) {
        let (g, h, _) = generate_permuted_pair(&GraphKind::Gnp { n, prob: 0.5 }, seed).unwrap();
        let aut = oracle::aut_order(&g).unwrap();
        prop_assert_eq!(oracle::count_isos(&g, &h).unwrap(), aut);
        prop_assert_eq!(oracle::brute_force_iso(&g, &h).is_some(), aut > 0);
    }

    // Matched columns of a relabeled matrix stay equal under equal
    // perturbations, and the perturbed column only rescales by the
    // determinant ratio.
    #[test]
    fn equal_perturbations_preserve_matched_columns(
        seed in any::<u64>(), n in 3..=7u32, j in 1..=3u32, eps_num in 1..=9i64,
    ) {
        let (g, h, p) = generate_permuted_pair(&GraphKind::Gnp { n, prob: 0.6 }, seed).unwrap();
        prop_assume!(g.edge_count() > 0);
        let j = (j - 1) % n + 1;
        let k = p.image(j);
        let eps = BigRational::new(BigInt::from(eps_num), BigInt::from(10));

        let a = GraphMatrix::build(&g).unwrap();
        let b = GraphMatrix::build(&h).unwrap();
        let a1 = a.perturb(j, &eps).unwrap();
        let b1 = b.perturb(k, &eps).unwrap();

        let inv_a0 = invert_exact(&a);
        let inv_a1 = invert_exact(&a1);
        let inv_b1 = invert_exact(&b1);

        // Component map: entry i of A-column j equals entry p(i) of
        // B-column p(j), exactly.
        for i in 0..n as usize {
            let a_entry = &inv_a1.columns[j as usize - 1][i];
            let b_entry =
                &inv_b1.columns[k as usize - 1][p.image(i as u32 + 1) as usize - 1];
            prop_assert_eq!(a_entry, b_entry);
        }

        // The perturbed column rescales by det(A)/det(A'): its cofactors
        // are untouched by the diagonal bump at (j, j).
        let scale = &inv_a0.det / &inv_a1.det;
        for i in 0..n as usize {
            let expected = &inv_a0.columns[j as usize - 1][i] * &scale;
            prop_assert_eq!(&inv_a1.columns[j as usize - 1][i], &expected);
        }
    }

    // Exact backend: the solved columns truly invert the matrix.
    #[test]
    fn exact_inverse_solves_all_systems(g in arb_graph(9), eps_num in 0..=4i64) {
        prop_assume!(g.edge_count() > 0);
        let mut m = GraphMatrix::build(&g).unwrap();
        if eps_num > 0 {
            m = m.perturb(1, &BigRational::new(eps_num.into(), 10.into())).unwrap();
        }
        let n = m.n();
        let inv = invert_exact(&m);
        for jcol in 0..n {
            for i in 0..n {
                let mut acc = BigRational::from_integer(0.into());
                for kk in 0..n {
                    acc += m.entry(i, kk) * &inv.columns[jcol][kk];
                }
                let want = if i == jcol {
                    BigRational::from_integer(1.into())
                } else {
                    BigRational::from_integer(0.into())
                };
                prop_assert_eq!(acc, want);
            }
        }
        prop_assert!(det_exact(&m) == inv.det);
    }

    // Gauss-Seidel contraction never exceeds 1/2 on graph matrices.
    #[test]
    fn gamma_bounded_by_half(g in arb_graph(10)) {
        prop_assume!(g.edge_count() > 0);
        let m = GraphMatrix::build(&g).unwrap();
        prop_assert!(m.gamma() <= BigRational::new(1.into(), 2.into()));
    }
}

#[test]
fn torus_transpose_isomorphic_oracle_checked() {
    for (r, c) in [(3u32, 4u32), (4, 4), (3, 3)] {
        let a = generate(&GraphKind::Torus { rows: r, cols: c }, 0).unwrap();
        let b = generate(&GraphKind::Torus { rows: c, cols: r }, 0).unwrap();
        let perm = oracle::brute_force_iso(&a, &b).expect("transposed tori are isomorphic");
        assert!(verify_mapping(&a, &b, &perm));
    }
}

// Unperturbed simple partition implies a trivial automorphism group.
#[test]
fn simple_partition_implies_trivial_automorphisms() {
    let mut checked = 0;
    for seed in 0..40u64 {
        let g = generate(&GraphKind::Gnp { n: 7, prob: 0.45 }, seed).unwrap();
        if g.edge_count() == 0 {
            continue;
        }
        let cols = inverse_columns_exact(&GraphMatrix::build(&g).unwrap());
        let part = partition(&cols, &SigQuant::exact());
        if part.is_simple() {
            assert_eq!(oracle::aut_order(&g).unwrap(), 1, "seed {seed}");
            checked += 1;
        }
    }
    assert!(checked > 5, "expected several simple instances, got {checked}");
}

// Engine relabeling invariance across generated families.
#[test]
fn engine_relabeling_invariance() {
    let cfg = engine::EngineConfig::default();
    let kinds = [
        GraphKind::Gnp { n: 9, prob: 0.4 },
        GraphKind::Gnp { n: 10, prob: 0.6 },
        GraphKind::Torus { rows: 3, cols: 3 },
        GraphKind::Complete { n: 6 },
    ];
    for (i, kind) in kinds.iter().enumerate() {
        let (g, h, _) = generate_permuted_pair(kind, i as u64 + 1).unwrap();
        let outcome = engine::run(&g, &h, &cfg).unwrap();
        assert!(outcome.is_isomorphic(), "{kind:?}");
        let phi = outcome.mapping().unwrap();
        assert!(verify_mapping(&g, &h, &phi), "{kind:?}");
    }
}

// Splitting monotonicity: class counts never decrease along successful
// exact-backend runs.
#[test]
fn class_counts_monotone_on_successful_runs() {
    let cfg = engine::EngineConfig::default();
    for seed in 0..12u64 {
        let (g, h, _) =
            generate_permuted_pair(&GraphKind::Gnp { n: 8, prob: 0.5 }, seed).unwrap();
        if g.edge_count() == 0 {
            continue;
        }
        let outcome = engine::run(&g, &h, &cfg).unwrap();
        if !outcome.is_isomorphic() {
            continue;
        }
        let ms = outcome.m_sequence();
        for w in ms.windows(2) {
            assert!(w[1] >= w[0], "m sequence decreased: {ms:?} (seed {seed})");
        }
    }
}

// The float backend agrees with the exact backend on small inverses at
// the planned tolerance.
#[test]
fn backends_agree_within_tolerance() {
    use isoperturb::bounds::{precision_plan, sweep_budget};
    use isoperturb::engine::inverse_columns_gs;
    use num_traits::Signed;

    for seed in [1u64, 5, 9] {
        let g = generate(&GraphKind::Gnp { n: 8, prob: 0.5 }, seed).unwrap();
        if g.edge_count() == 0 {
            continue;
        }
        let m = GraphMatrix::build(&g)
            .unwrap()
            .perturb(1, &BigRational::new(1.into(), 10.into()))
            .unwrap();
        let n = m.n() as u32;
        let d = m.max_degree();
        let plan = precision_plan(n);
        let eps_min = BigRational::new(1.into(), 10.into());
        let tol = plan.compare_tolerance(d, &eps_min).unwrap();
        let budget = sweep_budget(n, 2, d, (n as f64).sqrt());
        let sweeps = budget.required.max(budget.cap);

        let exact = inverse_columns_exact(&m);
        let gs = inverse_columns_gs(&m, sweeps, plan.mantissa_bits);
        for j in 0..m.n() {
            for i in 0..m.n() {
                let diff = (gs.column(j)[i].to_rational()
                    - exact.column(j)[i].as_ref())
                .abs();
                assert!(diff < tol, "seed {seed} entry ({i},{j})");
            }
        }
    }
}

// Rank-one screening equals a fresh exact solve (the identity the
// candidate loop relies on).
#[test]
fn screening_is_exact_in_rational_arithmetic() {
    let g = generate(&GraphKind::Gnp { n: 7, prob: 0.5 }, 2).unwrap();
    let m = GraphMatrix::build(&g).unwrap();
    let cols = inverse_columns_exact(&m);
    let eps = BigRational::new(1.into(), 216.into());
    for l in 1..=7u32 {
        let screened = cols.rank_one_update(l, &Rat(eps.clone()));
        let fresh = inverse_columns_exact(&m.perturb(l, &eps).unwrap());
        for j in 0..7 {
            for i in 0..7 {
                assert_eq!(screened.column(j)[i], fresh.column(j)[i]);
            }
        }
    }
}
