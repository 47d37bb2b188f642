//! Round-trip and invariance tests for the orbit classifier: every golden
//! row is realized by its representative, classification is constant along
//! exact orbit moves, and the dimensional-reduction graph closes.

use rand::SeedableRng;
use twistkit_exact::Scalar;
use twistkit_susy::orbits::{golden_table, graph_edges, graph_nodes};
use twistkit_susy::reps::{
    family_4d_st, hodge_family_2d, hodge_family_4d, hodge_family_8d, kw_family, move_pool,
    random_move, representative, verify_reduction_graph,
};
use twistkit_susy::{classify, make_susy, orbit_invariants, SusyLabel};

#[test]
fn classify_round_trip_all_rows() {
    let mut failures = Vec::new();
    for row in golden_table() {
        if row.dim == 2 && row.susy == SusyLabel::Chiral(1, 0) {
            continue; // no square-zero supercharges with a single chiral one
        }
        match representative(&row) {
            Ok((alg, q)) => match classify(&alg, &q) {
                Ok(got) => {
                    if got != row {
                        failures.push(format!("{}: classified as {}", row.name(), got.name()));
                    }
                    let d = alg.invariant_directions(&q).unwrap();
                    if d != row.inv_dirs {
                        failures.push(format!("{}: {} dirs", row.name(), d));
                    }
                }
                Err(e) => failures.push(format!("{}: classify failed: {e}", row.name())),
            },
            Err(e) => failures.push(format!("{}: no representative: {e}", row.name())),
        }
    }
    assert!(failures.is_empty(), "round trip failures:\n{}", failures.join("\n"));
}

#[test]
fn classification_invariant_under_moves() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for row in golden_table() {
        if row.dim == 2 && row.susy == SusyLabel::Chiral(1, 0) {
            continue;
        }
        let (alg, q) = representative(&row).unwrap();
        let pool = move_pool(&alg);
        for _ in 0..10 {
            let moved = random_move(&pool, &mut rng, &q);
            let got = classify(&alg, &moved)
                .unwrap_or_else(|e| panic!("{}: moved charge unclassified: {e}", row.name()));
            assert_eq!(got, row, "move escaped the orbit of {}", row.name());
        }
    }
}

#[test]
fn lower_bound_on_invariant_directions() {
    // d >= n/2 on every sampled square-zero supercharge.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut samples = 0usize;
    for row in golden_table() {
        if row.dim == 2 && row.susy == SusyLabel::Chiral(1, 0) {
            continue;
        }
        let (alg, q) = representative(&row).unwrap();
        let pool = move_pool(&alg);
        for _ in 0..5 {
            let moved = random_move(&pool, &mut rng, &q);
            let d = alg.invariant_directions(&moved).unwrap();
            assert!(2 * d >= alg.n, "bound violated in {}d: d = {d}", alg.n);
            samples += 1;
        }
    }
    assert!(samples >= 200);
}

#[test]
fn reduction_graph_closes() {
    let checks = verify_reduction_graph().unwrap();
    assert_eq!(checks.len(), graph_edges().len());
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.ok)
        .map(|c| format!("{} -> {}: {}", c.source, c.target, c.detail))
        .collect();
    assert!(bad.is_empty(), "graph mismatches:\n{}", bad.join("\n"));
}

#[test]
fn graph_shape_matches_source() {
    // Counted from the orbit diagram: 25 orbit nodes and 31 reduction arrows.
    assert_eq!(graph_nodes().len(), 25);
    assert_eq!(graph_edges().len(), 31);
}

#[test]
fn families_are_square_zero_identically() {
    let alg8 = make_susy(8, SusyLabel::N(1)).unwrap();
    let f8 = hodge_family_8d(&alg8);
    assert!(f8.is_square_zero_identically(&alg8));

    let alg4 = make_susy(4, SusyLabel::N(4)).unwrap();
    let fst = family_4d_st(&alg4);
    assert!(fst.is_square_zero_identically(&alg4));

    let alg2 = make_susy(2, SusyLabel::Chiral(2, 2)).unwrap();
    let f2 = hodge_family_2d(&alg2);
    assert!(f2.is_square_zero_identically(&alg2));
}

#[test]
fn eight_d_family_pairing_and_flip() {
    let alg = make_susy(8, SusyLabel::N(1)).unwrap();
    let f = hodge_family_8d(&alg);
    for t in [0i64, 1, 2] {
        let q = f.eval(&[Scalar::from_int(t)]);
        let inv = orbit_invariants(&alg, &q).unwrap();
        // The residual scalar pairing equals t exactly.
        let purity = inv.purity.clone().unwrap_or_else(Scalar::zero);
        assert_eq!(purity, Scalar::from_int(t), "purity at t = {t}");
        let row = classify(&alg, &q).unwrap();
        if t == 0 {
            assert_eq!(row.orbit, "rank (1,0) pure");
        } else {
            assert_eq!(row.orbit, "rank (1,0) impure");
        }
    }
}

#[test]
fn four_d_s_invariant_values() {
    let alg = make_susy(4, SusyLabel::N(4)).unwrap();
    // s = -u^2/v^2 for the Kapustin-Witten family.
    for (u, v) in [(1i64, 1i64), (2, 1), (1, 3)] {
        let q = kw_family(&alg, &Scalar::from_int(u), &Scalar::from_int(v));
        let inv = orbit_invariants(&alg, &q).unwrap();
        let s = inv.s_invariant.clone().expect("rank (2,2) must carry s");
        let expect = -&Scalar::ratio(u * u, v * v);
        assert_eq!(s, expect, "s at (u,v) = ({u},{v})");
    }
    // s = (1+t)^2/(1-t)^2 along the degeneration family.
    for (num, den) in [(0i64, 1i64), (2, 1), (1, 2)] {
        let t = Scalar::ratio(num, den);
        let q = hodge_family_4d(&alg, &t);
        let inv = orbit_invariants(&alg, &q).unwrap();
        let s = inv.s_invariant.clone().unwrap();
        let one = Scalar::one();
        let expect = &(&(&one + &t) * &(&one + &t)) / &(&(&one - &t) * &(&one - &t));
        assert_eq!(s, expect, "s at t = {num}/{den}");
        let row = classify(&alg, &q).unwrap();
        if expect == Scalar::one() {
            assert_eq!(row.orbit, "rank (2,2) special");
        } else {
            assert_eq!(row.orbit, "rank (2,2) generic");
        }
    }
}

#[test]
fn two_d_family_flips_holomorphic_to_topological() {
    let alg = make_susy(2, SusyLabel::Chiral(2, 2)).unwrap();
    let f = hodge_family_2d(&alg);
    let q0 = f.eval(&[Scalar::zero()]);
    assert_eq!(classify(&alg, &q0).unwrap().orbit, "rank (1,0)");
    let q1 = f.eval(&[Scalar::one()]);
    assert_eq!(classify(&alg, &q1).unwrap().orbit, "rank (1,1) (A)");
}

#[test]
fn negative_controls_between_orbits() {
    // The stated discriminants genuinely separate the orbit pairs.
    use twistkit_susy::golden_row;
    let pairs = [
        (8, SusyLabel::N(1), "rank (1,0) pure", "rank (1,0) impure"),
        (6, SusyLabel::Chiral(1, 1), "rank (1,1) special", "rank (1,1) generic"),
        (5, SusyLabel::N(2), "rank 2 special", "rank 2 generic"),
        (3, SusyLabel::N(8), "rank 2 (B)", "rank 2 (A)"),
        (4, SusyLabel::N(4), "rank (2,2) special", "rank (2,2) generic"),
    ];
    for (dim, susy, a, b) in pairs {
        let ra = golden_row(dim, susy, a).unwrap();
        let rb = golden_row(dim, susy, b).unwrap();
        let (alg, qa) = representative(&ra).unwrap();
        let (_, qb) = representative(&rb).unwrap();
        let ia = orbit_invariants(&alg, &qa).unwrap();
        let ib = orbit_invariants(&alg, &qb).unwrap();
        match (dim, a) {
            (8, _) => {
                assert!(ia.purity.clone().unwrap().is_zero());
                assert!(!ib.purity.clone().unwrap().is_zero());
            }
            (6, _) => {
                assert!(ia.cross_pairing.clone().unwrap().is_zero());
                assert!(!ib.cross_pairing.clone().unwrap().is_zero());
            }
            (5, _) => {
                use twistkit_susy::orbits::IsotropyType;
                assert_eq!(ia.isotropy_type, Some(IsotropyType::Lagrangian));
                assert_eq!(ib.isotropy_type, Some(IsotropyType::Symplectic));
            }
            (3, _) => {
                use twistkit_susy::orbits::Orientation;
                assert_eq!(ia.orientation, Some(Orientation::B));
                assert_eq!(ib.orientation, Some(Orientation::A));
            }
            (4, _) => {
                assert_eq!(ia.s_invariant.clone().unwrap(), Scalar::one());
                assert_ne!(ib.s_invariant.clone().unwrap(), Scalar::one());
            }
            _ => unreachable!(),
        }
    }
}

#[test]
fn division_and_gamma_models_agree_on_statistics() {
    // Matched representatives in the two presentations produce the same
    // invariant-direction counts.
    use twistkit_susy::clifford::build_division_model;
    use twistkit_susy::composition::{AlgebraKind, CompositionAlgebra};
    // 10d: a rank-one column with a null octonion leg.
    let alg = CompositionAlgebra::new(AlgebraKind::O);
    let model = build_division_model(&alg);
    let gamma = model.gamma_pairing();
    // a = e0 + i e1 is null: N(a) = 1 + i^2 = 0.
    let mut a = vec![Scalar::zero(); 8];
    a[0] = Scalar::one();
    a[1] = Scalar::i();
    let mut q = vec![Scalar::zero(); 16];
    q[..8].clone_from_slice(&a);
    let g = gamma.gamma_sigma(&q, &q);
    assert!(g.iter().all(|c| c.is_zero()), "division-model charge is square-zero");
    assert_eq!(gamma.gamma_map(&q).rank(), 5);
    let gamma_alg = make_susy(10, SusyLabel::Chiral(1, 0)).unwrap();
    let qg = twistkit_susy::reps::pure_spinor_top(&gamma_alg);
    assert_eq!(gamma_alg.invariant_directions(&qg).unwrap(), 5);

    // 4d N=1: the division model of CxC against the gamma-model chain.
    let alg = CompositionAlgebra::new(AlgebraKind::CxC);
    let model = build_division_model(&alg);
    let gamma = model.gamma_pairing();
    let (ep, _) = alg.idempotents().unwrap();
    let mut q = vec![Scalar::zero(); 4];
    q[..2].clone_from_slice(&ep.coeffs);
    let g = gamma.gamma_sigma(&q, &q);
    assert!(g.iter().all(|c| c.is_zero()));
    assert_eq!(gamma.gamma_map(&q).rank(), 2);
    let gamma_alg = make_susy(4, SusyLabel::N(1)).unwrap();
    let (_, qg) = representative(&golden_table()[38]).unwrap();
    let _ = qg;
    let q4 = twistkit_susy::reps::pure_spinor_top(&gamma_alg);
    assert_eq!(gamma_alg.invariant_directions(&q4).unwrap(), 2);
}
