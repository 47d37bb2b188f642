//! Exhaustive structure checks for the finite-dimensional L-infinity layer:
//! Jacobi and pairing-invariance residuals, Hodge-family cohomology, cdga
//! functoriality, and the equality of translation-invariant reduction with
//! the shifted cotangent construction.

use twistkit_bv::linfty::*;
use twistkit_exact::{Matrix, Scalar};

fn assert_valid(alg: &LinftyAlgebra, label: &str) {
    alg.check_degrees().unwrap_or_else(|e| panic!("{label}: {e}"));
    let bad = alg.jacobi_residuals();
    assert!(bad.is_empty(), "{label}: Jacobi residuals at {bad:?}");
}

fn assert_invariant(alg: &LinftyAlgebra, pairing: &InvariantPairing, label: &str) {
    pairing.check_degree(&alg.space).unwrap_or_else(|e| panic!("{label}: {e}"));
    pairing
        .check_graded_symmetry(&alg.space)
        .unwrap_or_else(|e| panic!("{label}: {e}"));
    assert!(pairing.is_nondegenerate(), "{label}: degenerate pairing");
    let bad = pairing.invariance_residuals(alg);
    assert!(bad.is_empty(), "{label}: invariance residuals at {bad:?}");
}

#[test]
fn abelian_and_sl2_are_valid() {
    assert_valid(&abelian(3, 0), "abelian");
    let (alg, pairing) = sl2();
    assert_valid(&alg, "sl2");
    assert_invariant(&alg, &pairing, "sl2 Killing-type form");
}

#[test]
fn perturbed_sl2_fails_jacobi() {
    // Negative control: damage one structure constant.
    let (mut alg, _) = sl2();
    let mut v = vec![Scalar::zero(); 3];
    v[0] = Scalar::from_int(3);
    alg.set_bracket(&[1, 0], v); // [h, e] = 3e breaks Jacobi with [e, f] = h
    assert!(!alg.jacobi_residuals().is_empty());
}

#[test]
fn shifted_cotangent_structure() {
    let (g, _) = sl2();
    for n in [-1i64, 0, 1, 3] {
        let (t, pairing) = shifted_cotangent(&g, None, n);
        assert_eq!(t.dim(), 6);
        assert_valid(&t, &format!("T*[{n}] of sl2"));
        assert_invariant(&t, &pairing, &format!("T*[{n}] pairing"));
        assert_eq!(pairing.degree, n - 2);
        // Coadjoint bracket reproduces the structure constants transposed
        // with a sign: <[x, xi], y> = -<xi, [x, y]>.
        for x in 0..3 {
            for xi in 0..3 {
                for y in 0..3 {
                    let lhs = {
                        let v = t.eval_basis(2, &[x, 3 + xi]);
                        let mut acc = Scalar::zero();
                        for (m, c) in v.iter().enumerate() {
                            acc += &(c * pairing.value(m, y));
                        }
                        acc
                    };
                    let br = g.eval_basis(2, &[x, y]);
                    // The duality normalizes <xi*, xi> = 1, so the statement
                    // reduces to the xi-coefficient of [x, y].
                    assert_eq!(lhs, -&br[xi], "coadjoint mismatch at ({x},{xi},{y}) n={n}");
                }
            }
        }
    }
    // Abelian bookkeeping: one line in degree 0, its dual shifted.
    let (t, pairing) = shifted_cotangent(&abelian(1, 0), None, -1);
    assert_eq!(t.space.degrees, vec![0, 3]);
    assert_eq!(pairing.degree, -3);
}

#[test]
fn hamiltonian_reduction_sl2() {
    let (g, _) = sl2();
    // U = T*(C^2) with the fundamental action.
    let (udim, udeg, omega, action) = cotangent_representation(3, 2, sl2_fundamental);
    let (h, pairing) = hamiltonian_reduction(&g, udim, &udeg, &omega, action.as_ref(), 0).unwrap();
    assert_eq!(h.dim(), 3 + 4 + 3);
    assert_valid(&h, "U ham sl2");
    assert_invariant(&h, &pairing, "U ham sl2 pairing");
    assert_eq!(pairing.degree, -2);

    // Abelian g with U = 0 degenerates to g + g*[n-2], abelian.
    let a = abelian(2, 0);
    let (h, _) = hamiltonian_reduction(
        &a,
        0,
        &[],
        &Matrix::zero(0, 0),
        &|_, _| panic!("no U"),
        0,
    )
    .unwrap();
    assert_eq!(h.dim(), 4);
    for x in 0..4 {
        for y in 0..4 {
            assert!(h.eval_basis(2, &[x, y]).iter().all(|c| c.is_zero()));
        }
    }

    // Non-invariant form on U is rejected: pairing a vector with the dual
    // of the other basis vector fails h-weight balance.
    let mut bad = Matrix::zero(4, 4);
    bad.set(0, 3, Scalar::one());
    bad.set(3, 0, Scalar::from_int(-1));
    bad.set(1, 2, Scalar::one());
    bad.set(2, 1, Scalar::from_int(-1));
    let (_, _, _, action) = cotangent_representation(3, 2, sl2_fundamental);
    assert!(hamiltonian_reduction(&g, 4, &[0, 0, 0, 0], &bad, action.as_ref(), 0).is_err());
}

#[test]
fn hodge_family_cohomology() {
    let (g, pairing) = sl2();
    // t = 1: contractible.
    let at1 = hodge_family_at(&g, &Scalar::one());
    assert_valid(&at1, "Hodge at t=1");
    assert!(cohomology_dims(&at1).is_empty());
    // Generic nonzero t as well.
    let at2 = hodge_family_at(&g, &Scalar::ratio(3, 7));
    assert!(cohomology_dims(&at2).is_empty());
    // t = 0: dimension 2 * dim(g), split across degrees 0 and -1.
    let at0 = hodge_family_at(&g, &Scalar::zero());
    assert_valid(&at0, "Hodge at t=0");
    let dims = cohomology_dims(&at0);
    assert_eq!(dims.values().sum::<usize>(), 6);
    assert_eq!(dims.get(&0), Some(&3));
    assert_eq!(dims.get(&-1), Some(&3));

    // The t = 0 fiber is the shifted cotangent model transported through the
    // pairing: y[1] corresponds to the functional <y, -> placed in the dual
    // summand.
    let (cot, _) = shifted_cotangent(&g, None, 3);
    let transport = |k: usize| -> Vec<Scalar> {
        // Image of fiber basis k in the cotangent model.
        if k < 3 {
            let mut v = vec![Scalar::zero(); 6];
            v[k] = Scalar::one();
            v
        } else {
            let y = k - 3;
            let mut v = vec![Scalar::zero(); 6];
            for xi in 0..3 {
                // <y, e_xi> is the coefficient of xi* dual to e_xi.
                v[3 + xi] = pairing.value(y, xi).clone();
            }
            v
        }
    };
    for a in 0..6 {
        for b in 0..6 {
            let fiber = at0.eval_basis(2, &[a, b]);
            // Transport the result.
            let mut lhs = vec![Scalar::zero(); 6];
            for (m, c) in fiber.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (r, t) in transport(m).iter().enumerate() {
                    lhs[r] = &lhs[r] + &(c * t);
                }
            }
            // Bracket of the transported arguments.
            let ta = transport(a);
            let tb = transport(b);
            let mut rhs = vec![Scalar::zero(); 6];
            for (i, ca) in ta.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (j, cb) in tb.iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    let v = cot.eval_basis(2, &[i, j]);
                    for (r, c) in v.iter().enumerate() {
                        rhs[r] = &rhs[r] + &(&(ca * cb) * c);
                    }
                }
            }
            assert_eq!(lhs, rhs, "fiber bracket disagrees at ({a},{b})");
        }
    }
}

#[test]
fn hodge_cohomology_of_reduction_model() {
    let (g, _) = sl2();
    let (udim, udeg, omega, action) = cotangent_representation(3, 2, sl2_fundamental);
    let (h, _) = hamiltonian_reduction(&g, udim, &udeg, &omega, action.as_ref(), 0).unwrap();
    let at1 = hodge_family_at(&h, &Scalar::one());
    assert!(cohomology_dims(&at1).is_empty());
    let at0 = hodge_family_at(&h, &Scalar::zero());
    assert_eq!(cohomology_dims(&at0).values().sum::<usize>(), 20);
}

#[test]
fn cdga_tensoring() {
    let (g, _) = sl2();
    // Ground field: g itself.
    let same = tensor_with_cdga(&g, &FiniteCdga::ground()).unwrap();
    assert_eq!(same.dim(), 3);
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!(same.eval_basis(2, &[a, b]), g.eval_basis(2, &[a, b]));
        }
    }
    // Odd line: sl2[eps].
    let eps = FiniteCdga::odd_line();
    let ext = tensor_with_cdga(&g, &eps).unwrap();
    assert_eq!(ext.dim(), 6);
    assert_valid(&ext, "sl2[eps]");

    // Jacobi for (U ham sl2) tensored with C[eps].
    let (udim, udeg, omega, action) = cotangent_representation(3, 2, sl2_fundamental);
    let (h, _) = hamiltonian_reduction(&g, udim, &udeg, &omega, action.as_ref(), 0).unwrap();
    let ext = tensor_with_cdga(&h, &eps).unwrap();
    assert_valid(&ext, "(U ham sl2)[eps]");

    // Functoriality: tensoring with Omega1 then Omega2 equals tensoring with
    // the tensor product, up to the fixed basis reordering.
    let forms1 = FiniteCdga::invariant_forms(1);
    let lhs = tensor_with_cdga(&tensor_with_cdga(&g, &eps).unwrap(), &forms1).unwrap();
    let rhs = tensor_with_cdga(&g, &eps.tensor(&forms1)).unwrap();
    assert_eq!(lhs.dim(), rhs.dim());
    // Basis correspondence: lhs index = w2 * (dw1 * dg) + (w1 * dg + x);
    // rhs index = (w1 * dw2 + w2) * dg + x.
    let (dg, dw1, dw2) = (3, 2, 2);
    let map = |w2: usize, w1: usize, x: usize| (w1 * dw2 + w2) * dg + x;
    // Reordering the two cdga legs carries the Koszul sign of swapping them.
    let leg_sign = |w2: usize, w1: usize| -> i64 {
        if forms1.space.parity(w2) && eps.space.parity(w1) {
            -1
        } else {
            1
        }
    };
    for a in 0..lhs.dim() {
        for b in 0..lhs.dim() {
            let dec = |i: usize| (i / (dw1 * dg), (i % (dw1 * dg)) / dg, i % dg);
            let (a2, a1, ax) = dec(a);
            let (b2, b1, bx) = dec(b);
            let v = lhs.eval_basis(2, &[a, b]);
            let w = rhs.eval_basis(2, &[map(a2, a1, ax), map(b2, b1, bx)]);
            let in_sign = leg_sign(a2, a1) * leg_sign(b2, b1);
            for (m, c) in v.iter().enumerate() {
                let (m2, m1, mx) = dec(m);
                let expect = w[map(m2, m1, mx)].scale_int(in_sign * leg_sign(m2, m1));
                assert_eq!(*c, expect, "functoriality at ({a},{b})");
            }
        }
    }
}

#[test]
fn translation_invariant_reduction_matches_cotangent() {
    // The degree -2 paired sl2 model is its own 0-shifted cotangent; one
    // de Rham direction turns it into the (-1)-shifted cotangent of itself.
    let (g, _) = sl2();
    let (t0, p0) = shifted_cotangent(&g, None, 0);
    assert_eq!(p0.degree, -2);
    assert_invariant(&t0, &p0, "degree -2 sl2 model");
    let (red, pred) = translation_invariant_reduction(&t0, &p0, 1).unwrap();
    assert_valid(&red, "translation-invariant reduction");
    assert_invariant(&red, &pred, "reduced pairing");
    assert_eq!(pred.degree, -3);
    let (cot, pcot) = shifted_cotangent(&t0, Some(&p0), -1);
    assert_eq!(pcot.degree, -3);
    // Identify: reduction basis (w, x) with w in {1, dt}, x in t0; cotangent
    // basis x then x*. The map sends 1.x -> x and dt.x -> <x, ->* through p0.
    let d = t0.dim();
    let transport = |k: usize| -> Vec<Scalar> {
        let (w, x) = (k / d, k % d);
        let mut v = vec![Scalar::zero(); 2 * d];
        if w == 0 {
            v[x] = Scalar::one();
        } else {
            for xi in 0..d {
                v[d + xi] = p0.value(x, xi).clone();
            }
        }
        v
    };
    for a in 0..red.dim() {
        for b in 0..red.dim() {
            let v = red.eval_basis(2, &[a, b]);
            let mut lhs = vec![Scalar::zero(); 2 * d];
            for (m, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (r, t) in transport(m).iter().enumerate() {
                    lhs[r] = &lhs[r] + &(c * t);
                }
            }
            let ta = transport(a);
            let tb = transport(b);
            let mut rhs = vec![Scalar::zero(); 2 * d];
            for (i, ca) in ta.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (j, cb) in tb.iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    let v = cot.eval_basis(2, &[i, j]);
                    for (r, c) in v.iter().enumerate() {
                        rhs[r] = &rhs[r] + &(&(ca * cb) * c);
                    }
                }
            }
            assert_eq!(lhs, rhs, "reduction vs cotangent at ({a},{b})");
        }
    }
    // k = 0 is the identity.
    let (same, _) = translation_invariant_reduction(&t0, &p0, 0).unwrap();
    assert_eq!(same.dim(), t0.dim());
    // Iterating k = 1 twice matches k = 2 in total dimension and validity.
    let (once, ponce) = translation_invariant_reduction(&t0, &p0, 1).unwrap();
    let (twice, ptwice) = translation_invariant_reduction(&once, &ponce, 1).unwrap();
    let (direct, pdirect) = translation_invariant_reduction(&t0, &p0, 2).unwrap();
    assert_eq!(twice.dim(), direct.dim());
    assert_eq!(ptwice.degree, pdirect.degree);
    assert_valid(&twice, "iterated reduction");
    assert_valid(&direct, "direct reduction");
}
