//! Representative supercharges for every orbit row, exact orbit moves, the
//! named one-parameter families, and verification of the dimensional
//! reduction graph.

use crate::algebra::{reduction_chain, ReductionChain, Supercharge, SusyAlgebra, SusyLabel};
use crate::orbits::{chain_label, classify, golden_row, graph_nodes, OrbitLabel};
use crate::SusyError;
use twistkit_exact::poly::MultiPoly;
use twistkit_exact::{Matrix, Scalar};

// ---------------------------------------------------------------------------
// Pure spinors and basic building blocks.
// ---------------------------------------------------------------------------

/// Kernel of the Clifford action of the isotropic vectors e_a + sign*i*e_b
/// over the listed pairs; columns span the annihilated subspace of Sigma.
pub fn isotropic_kernel(alg: &SusyAlgebra, pairs: &[(usize, usize, i64)]) -> Matrix {
    let dim = alg.dim_sigma();
    let mut stacked = Matrix::zero(0, dim);
    for &(a, b, sign) in pairs {
        let mut v = vec![Scalar::zero(); alg.n];
        v[a] = Scalar::one();
        v[b] = if sign >= 0 { Scalar::i() } else { -Scalar::i() };
        let rho = alg.model.rho_vector_plus(&v);
        stacked = if stacked.rows() == 0 { rho } else { stacked.vstack(&rho) };
    }
    stacked.kernel_basis()
}

/// The standard aligned pure spinor: annihilated by e_1 + i e_2, e_3 + i e_4,
/// and so on through the first 2*floor(n/2) directions.
pub fn pure_spinor_top(alg: &SusyAlgebra) -> Supercharge {
    let pairs: Vec<(usize, usize, i64)> = (0..alg.n / 2).map(|j| (2 * j, 2 * j + 1, 1)).collect();
    let k = isotropic_kernel(alg, &pairs);
    assert!(k.cols() > 0, "no pure spinor found");
    k.column(0)
}

/// Pure spinor for an explicitly tilted complex structure.
fn tilted_pure(alg: &SusyAlgebra, pairs: &[(usize, usize, i64)], col: usize) -> Supercharge {
    let k = isotropic_kernel(alg, pairs);
    assert!(k.cols() > col, "kernel too small for the requested column");
    k.column(col)
}

fn basis_vec(dim: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[k] = Scalar::one();
    v
}

fn add_q(a: &Supercharge, b: &Supercharge) -> Supercharge {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale_q(a: &Supercharge, c: &Scalar) -> Supercharge {
    a.iter().map(|x| x * c).collect()
}

/// Coordinate of (block, s-position, w-position) in the Sigma layout.
fn coord(alg: &SusyAlgebra, block: usize, s: usize, w: usize) -> usize {
    alg.model.block_offset(block) + s * alg.model.blocks[block].w_dim + w
}

/// Sigma basis vector supported in one block at (s, w).
fn block_unit(alg: &SusyAlgebra, block: usize, s: usize, w: usize) -> Supercharge {
    basis_vec(alg.dim_sigma(), coord(alg, block, s, w))
}

// ---------------------------------------------------------------------------
// Orbit moves.
// ---------------------------------------------------------------------------

/// A pool of exact orbit-move generators: unipotent spin transformations from
/// isotropic 2-planes in the kept directions, the same in the dropped
/// directions (inside the R-symmetry), the stored multiplicity-side moves,
/// and half-turn spin rotations.
pub fn move_pool(alg: &SusyAlgebra) -> Vec<Matrix> {
    let dim = alg.dim_sigma();
    let mut pool = Vec::new();
    let id = Matrix::identity(dim);
    // Unipotent spin moves 1 + c * rho(u) rho(v) over isotropic pairs built
    // from quadruples of distinct coordinate directions.
    let mut quads: Vec<(usize, usize, usize, usize)> = Vec::new();
    if alg.n >= 4 {
        for shift in 0..alg.n - 3 {
            quads.push((shift, shift + 1, shift + 2, shift + 3));
        }
    }
    for (p, q, r, s) in quads {
        for (sp, sr) in [(1i64, 1i64), (1, -1), (-1, 1)] {
            let mut u = vec![Scalar::zero(); alg.n];
            u[p] = Scalar::one();
            u[q] = if sp >= 0 { Scalar::i() } else { -Scalar::i() };
            let mut v = vec![Scalar::zero(); alg.n];
            v[r] = Scalar::one();
            v[s] = if sr >= 0 { Scalar::i() } else { -Scalar::i() };
            let n = &alg.model.rho_vector_minus(&u) * &alg.model.rho_vector_plus(&v);
            if !n.is_zero() {
                pool.push(&id + &n);
                pool.push(&id + &n.scale(&Scalar::ratio(-1, 2)));
            }
        }
    }
    // Half-turn rotations rho(e_i) rho(e_j), exact elements of the spin group.
    for i in 0..alg.n {
        for j in (i + 1)..alg.n.min(i + 3) {
            pool.push(&alg.model.rho_minus[i] * &alg.model.rho_plus[j]);
        }
    }
    // R-symmetry: unipotent moves from isotropic 2-planes in the dropped
    // directions.
    let np = alg.perp_rho.len();
    if np >= 4 {
        for shift in 0..np - 3 {
            let (a, b, c, d) = (shift, shift + 1, shift + 2, shift + 3);
            for (sp, sr) in [(1i64, 1i64), (1, -1)] {
                let mk = |x: usize, y: usize, s: i64| -> (Matrix, Matrix) {
                    let i = if s >= 0 { Scalar::i() } else { -Scalar::i() };
                    (
                        &alg.perp_rho[x].0 + &alg.perp_rho[y].0.scale(&i),
                        &alg.perp_rho[x].1 + &alg.perp_rho[y].1.scale(&i),
                    )
                };
                let (up, _um) = mk(a, b, sp);
                let (_vp, vm) = mk(c, d, sr);
                let n = &vm * &up;
                if !n.is_zero() {
                    pool.push(&id + &n);
                }
            }
        }
    }
    // Stored multiplicity-side moves.
    pool.extend(alg.w_moves.iter().cloned());
    pool
}

/// Apply a deterministic pseudo-random product of pool moves and a scaling.
pub fn random_move(
    pool: &[Matrix],
    rng: &mut impl rand::Rng,
    q: &Supercharge,
) -> Supercharge {
    let mut v = q.clone();
    let count = rng.gen_range(1..4);
    for _ in 0..count {
        let g = &pool[rng.gen_range(0..pool.len())];
        v = g.mul_vec(&v);
    }
    let scale = Scalar::complex(rng.gen_range(1..4), rng.gen_range(0..3), 1);
    scale_q(&v, &scale)
}

// ---------------------------------------------------------------------------
// Named families.
// ---------------------------------------------------------------------------

/// A supercharge whose coordinates are polynomials in named parameters.
#[derive(Clone)]
pub struct SuperchargeFamily {
    pub params: Vec<String>,
    pub coeffs: Vec<MultiPoly>,
}

impl SuperchargeFamily {
    /// Gamma(Q, Q) with polynomial coefficients; the family is square-zero
    /// identically when every component is the zero polynomial.
    pub fn bracket_self(&self, alg: &SusyAlgebra) -> Vec<MultiPoly> {
        let nv = self.params.len();
        (0..alg.n)
            .map(|i| {
                let g = &alg.gamma.gamma_plus[i];
                let mut acc = MultiPoly::zero(nv);
                for a in 0..self.coeffs.len() {
                    if self.coeffs[a].is_zero() {
                        continue;
                    }
                    for b in 0..self.coeffs.len() {
                        let entry = g.get(a, b);
                        if entry.is_zero() || self.coeffs[b].is_zero() {
                            continue;
                        }
                        acc = acc.add(&self.coeffs[a].mul(&self.coeffs[b]).scale(entry));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_square_zero_identically(&self, alg: &SusyAlgebra) -> bool {
        self.bracket_self(alg).iter().all(|p| p.is_zero())
    }

    pub fn eval(&self, values: &[Scalar]) -> Supercharge {
        self.coeffs.iter().map(|p| p.eval(values)).collect()
    }

    fn from_parts(params: &[&str], parts: &[(usize, Supercharge)], dim: usize) -> Self {
        // parts: (parameter index or usize::MAX for the constant part, vector).
        let nv = params.len();
        let mut coeffs = vec![MultiPoly::zero(nv); dim];
        for (pk, vec) in parts {
            for (i, c) in vec.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = if *pk == usize::MAX {
                    MultiPoly::constant(nv, c.clone())
                } else {
                    MultiPoly::var(nv, *pk).scale(c)
                };
                coeffs[i] = coeffs[i].add(&term);
            }
        }
        SuperchargeFamily {
            params: params.iter().map(|s| s.to_string()).collect(),
            coeffs,
        }
    }
}

/// The two opposite aligned pure spinors of an even-dimensional algebra.
fn conjugate_pure_pair(alg: &SusyAlgebra) -> (Supercharge, Supercharge) {
    let plus: Vec<(usize, usize, i64)> = (0..alg.n / 2).map(|j| (2 * j, 2 * j + 1, 1)).collect();
    let minus: Vec<(usize, usize, i64)> = (0..alg.n / 2).map(|j| (2 * j, 2 * j + 1, -1)).collect();
    (tilted_pure(alg, &plus, 0), tilted_pure(alg, &minus, 0))
}

/// 8d family Q_t = Q_0 + t Qbar_0, normalized so the residual scalar pairing
/// (the first nonzero perpendicular moment) equals t exactly.
pub fn hodge_family_8d(alg: &SusyAlgebra) -> SuperchargeFamily {
    assert_eq!((alg.n, alg.label), (8, SusyLabel::N(1)));
    let (q0, qbar) = conjugate_pure_pair(alg);
    // Normalize: the purity of Q_0 + t Qbar scales linearly in t with slope
    // 2 * m(Q_0, Qbar); rescale Qbar so the slope is 1.
    let slope = {
        let sum = add_q(&q0, &qbar);
        let m = crate::orbits::perp_moments(alg, &sum);
        m.into_iter().find(|x| !x.is_zero()).expect("impure direction exists")
    };
    let qbar = scale_q(&qbar, &slope.recip());
    SuperchargeFamily::from_parts(
        &["t"],
        &[(usize::MAX, q0), (0, qbar)],
        alg.dim_sigma(),
    )
}

/// Kapustin-Witten supercharge u Q+ + i v Q- in the 4d N=4 algebra: the two
/// spin volume elements seated in multiplicity halves that annihilate each
/// other under the cross form, so the family is square-zero for all (u, v).
pub fn kw_family(alg: &SusyAlgebra, u: &Scalar, v: &Scalar) -> Supercharge {
    assert_eq!((alg.n, alg.label), (4, SusyLabel::N(4)));
    let dim = alg.dim_sigma();
    let mut q = vec![Scalar::zero(); dim];
    let iv = &Scalar::i() * v;
    // U+ = span(e0, e1) in W; U- = the annihilator of U+ in W- under hx.
    let hx = crate::orbits::w_cross_form(alg);
    let ann = Matrix::from_fn(2, hx.cols(), |r, c| hx.get(r, c).clone()).kernel_basis();
    assert_eq!(ann.cols(), 2, "annihilator of the W half must be 2-dimensional");
    for (a, b, sgn) in [(0usize, 1usize, 1i64), (1, 0, -1)] {
        let c = u.scale_int(sgn);
        let idx = coord(alg, 0, a, b);
        q[idx] = &q[idx] + &c;
        let c = iv.scale_int(sgn);
        for wm in 0..hx.cols() {
            let idx = coord(alg, 1, a, wm);
            q[idx] = &q[idx] + &(&c * ann.get(wm, b));
        }
    }
    q
}

/// 4d N=4 family Q_t = Q_0 + t Qbar_0 realized through the Kapustin-Witten
/// coordinates (u, iv) = (1 + t, 1 - t); its modulus is (1+t)^2/(1-t)^2.
pub fn hodge_family_4d(alg: &SusyAlgebra, t: &Scalar) -> Supercharge {
    let u = &Scalar::one() + t;
    // i v = 1 - t.
    let v = &(-Scalar::i()) * &(&Scalar::one() - t);
    kw_family(alg, &u, &v)
}

/// 4d N=4 two-parameter family Q_0 + t Q_1 + s Q_2 with Q_0, Q_1 of rank
/// (1,0) and Q_2 of rank (0,1); square-zero identically in (s, t).
pub fn family_4d_st(alg: &SusyAlgebra) -> SuperchargeFamily {
    assert_eq!((alg.n, alg.label), (4, SusyLabel::N(4)));
    let q0 = block_unit(alg, 0, 0, 0);
    let q1 = block_unit(alg, 0, 1, 1);
    // Q2 of rank (0,1): its W- leg must annihilate the W legs of Q0 and Q1.
    let hx = crate::orbits::w_cross_form(alg);
    let ann = Matrix::from_fn(2, hx.cols(), |r, c| hx.get(r, c).clone()).kernel_basis();
    let mut q2 = vec![Scalar::zero(); alg.dim_sigma()];
    for wm in 0..hx.cols() {
        q2[coord(alg, 1, 0, wm)] = ann.get(wm, 0).clone();
    }
    SuperchargeFamily::from_parts(
        &["t", "s"],
        &[(usize::MAX, q0), (0, q1), (1, q2)],
        alg.dim_sigma(),
    )
}

/// 2d N=(2,2) family Q_t = Q_0 + t Q': holomorphic at t = 0, topological
/// (A-type) at t nonzero.
pub fn hodge_family_2d(alg: &SusyAlgebra) -> SuperchargeFamily {
    assert_eq!((alg.n, alg.label), (2, SusyLabel::Chiral(2, 2)));
    let null_plus = null_block_vector(alg, 0, 0).expect("null vector in W+");
    // The deformation leg is picked on the null line that makes the t != 0
    // members topological of A type (nonvanishing residual brackets).
    let null_minus = (0..2)
        .filter_map(|line| null_block_vector(alg, 1, line))
        .find(|q| {
            let total = add_q(&null_plus, q);
            alg.is_square_zero(&total).0
                && crate::orbits::perp_moments(alg, &total)
                    .iter()
                    .any(|m| !m.is_zero())
        })
        .expect("A-type deformation leg");
    SuperchargeFamily::from_parts(
        &["t"],
        &[(usize::MAX, null_plus), (0, null_minus)],
        alg.dim_sigma(),
    )
}

/// A square-zero supercharge supported on one chirality block with a
/// one-dimensional spin leg: searches the standard null candidates of the
/// block's multiplicity form. `which` selects among the (at most two)
/// distinct null lines found.
pub fn null_block_vector(alg: &SusyAlgebra, block: usize, which: usize) -> Option<Supercharge> {
    let b = &alg.model.blocks[block];
    let mut found = Vec::new();
    let mut candidates: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for w in 0..b.w_dim {
        candidates.push(vec![(w, Scalar::one())]);
    }
    for w in 0..b.w_dim {
        for w2 in (w + 1)..b.w_dim {
            candidates.push(vec![(w, Scalar::one()), (w2, Scalar::i())]);
            candidates.push(vec![(w, Scalar::one()), (w2, -Scalar::i())]);
        }
    }
    for cand in candidates {
        let mut q = vec![Scalar::zero(); alg.dim_sigma()];
        for (w, c) in &cand {
            q[coord(alg, block, 0, *w)] = c.clone();
        }
        if alg.is_square_zero(&q).0 {
            // Deduplicate proportional lines.
            let dup = found.iter().any(|g: &Supercharge| {
                let m = Matrix::from_rows(vec![g.clone(), q.clone()]);
                m.rank() < 2
            });
            if !dup {
                found.push(q);
            }
        }
        if found.len() > which {
            return Some(found[which].clone());
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Representatives.
// ---------------------------------------------------------------------------

/// Construct a representative supercharge for a golden row, in the algebra
/// `make_susy(row.dim, row.susy)`. Panics on internal inconsistency (the
/// construction is validated against the row).
pub fn representative(row: &OrbitLabel) -> Result<(SusyAlgebra, Supercharge), SusyError> {
    let chain = reduction_chain(row.dim, row.susy)?;
    let alg = chain.bottom().clone();
    let q = representative_in(&chain, row)?;
    Ok((alg, q))
}

fn representative_in(
    chain: &ReductionChain,
    row: &OrbitLabel,
) -> Result<Supercharge, SusyError> {
    let alg = chain.bottom();
    let dim = alg.dim_sigma();
    let q: Supercharge = match (row.dim, row.susy, row.orbit) {
        // ----- 16 supercharges -----
        (10, _, "rank (1,0)") | (9, _, "rank 1") => pure_spinor_top(alg),
        (8, _, "rank (1,0) pure") => pure_spinor_top(alg),
        (8, _, "rank (1,0) impure") => {
            let (a, b) = conjugate_pure_pair(alg);
            add_q(&a, &b)
        }
        (8, _, "rank (1,1)") => {
            let qp = pure_spinor_top(alg);
            partner_in_block(alg, &qp, 1, 5)?
        }
        (7, _, "rank 1 pure") => pure_spinor_top(alg),
        (7, _, "rank 1 impure") => {
            // A rank-1 supercharge with non-null spin leg: combine the two
            // conjugate pure spinors on a shared multiplicity leg.
            rank_one_combined(alg, 7)?
        }
        (7, _, "rank 2") => rank_two_odd(alg, 5)?,
        (6, SusyLabel::Chiral(1, 1), "rank (1,0)") => pure_spinor_top(alg),
        (6, SusyLabel::Chiral(1, 1), "rank (1,1) special") => two_block_units(alg, 4)?,
        (6, SusyLabel::Chiral(1, 1), "rank (1,1) generic") => two_block_units(alg, 6)?,
        (6, SusyLabel::Chiral(1, 1), "rank (2,2)") => rank22_6d(alg)?,
        (5, SusyLabel::N(2), "rank 1") => pure_spinor_top(alg),
        (5, SusyLabel::N(2), "rank 2 special") => rank_two_odd(alg, 4)?,
        (5, SusyLabel::N(2), "rank 4") => {
            push_rep(chain, 6, SusyLabel::Chiral(1, 1), "rank (2,2)", row)?
        }
        (5, SusyLabel::N(2), "rank 2 generic") => rank_two_odd(alg, 5)?,
        (4, SusyLabel::N(4), "rank (1,0)") => pure_spinor_top(alg),
        (4, SusyLabel::N(4), "rank (1,1)") => two_block_units_cross(alg, 3)?,
        (4, SusyLabel::N(4), "rank (2,2) special") => hodge_family_4d(alg, &Scalar::zero()),
        (4, SusyLabel::N(4), "rank (2,2) generic") => hodge_family_4d(alg, &Scalar::from_int(2)),
        (4, SusyLabel::N(4), "rank (2,1)") => {
            let f = family_4d_st(alg);
            f.eval(&[Scalar::one(), Scalar::one()])
        }
        (4, SusyLabel::N(4), "rank (2,0)") => {
            let f = family_4d_st(alg);
            f.eval(&[Scalar::one(), Scalar::zero()])
        }
        (3, SusyLabel::N(8), "rank 1") => pure_spinor_top(alg),
        (3, SusyLabel::N(8), "rank 2 (B)") => {
            push_rep(chain, 4, SusyLabel::N(4), "rank (2,2) special", row)?
        }
        (3, SusyLabel::N(8), "rank 2 (A)") => {
            push_rep(chain, 4, SusyLabel::N(4), "rank (2,2) generic", row)?
        }
        (2, SusyLabel::Chiral(8, 8), "rank (1,0)") => pure_spinor_top(alg),
        (2, SusyLabel::Chiral(8, 8), "rank (1,1) (B)") => {
            push_rep(chain, 3, SusyLabel::N(8), "rank 2 (B)", row)?
        }
        (2, SusyLabel::Chiral(8, 8), "rank (1,1) (A)") => {
            push_rep(chain, 3, SusyLabel::N(8), "rank 2 (A)", row)?
        }
        // ----- 8 supercharges -----
        (6, SusyLabel::Chiral(1, 0), "rank (1,0)") => block_unit(alg, 0, 0, 0),
        (5, SusyLabel::N(1), "rank 1") => {
            push_rep(chain, 6, SusyLabel::Chiral(1, 0), "rank (1,0)", row)?
        }
        (4, SusyLabel::N(2), "rank (1,0)") => pure_spinor_top(alg),
        (4, SusyLabel::N(2), "rank (1,1)") => two_block_units_cross(alg, 3)?,
        (4, SusyLabel::N(2), "rank (2,0)") => {
            let q1 = block_unit(alg, 0, 0, 0);
            let q2 = block_unit(alg, 0, 1, 1);
            add_q(&q1, &q2)
        }
        (3, SusyLabel::N(4), "rank 1") => pure_spinor_top(alg),
        (3, SusyLabel::N(4), "rank 2 (B)") => rank_two_3d(alg, true)?,
        (3, SusyLabel::N(4), "rank 2 (A)") => rank_two_3d(alg, false)?,
        (2, SusyLabel::Chiral(4, 4), "rank (1,0)") => pure_spinor_top(alg),
        (2, SusyLabel::Chiral(4, 4), "rank (1,1) (B)") => {
            push_rep(chain, 3, SusyLabel::N(4), "rank 2 (B)", row)?
        }
        (2, SusyLabel::Chiral(4, 4), "rank (1,1) (A)") => {
            push_rep(chain, 3, SusyLabel::N(4), "rank 2 (A)", row)?
        }
        // ----- 4 supercharges -----
        (4, SusyLabel::N(1), "rank (1,0)") => block_unit(alg, 0, 0, 0),
        (3, SusyLabel::N(2), "rank 1") => {
            push_rep(chain, 4, SusyLabel::N(1), "rank (1,0)", row)?
        }
        (2, SusyLabel::Chiral(2, 2), "rank (1,0)") => {
            let f = hodge_family_2d(alg);
            f.eval(&[Scalar::zero()])
        }
        (2, SusyLabel::Chiral(2, 2), "rank (1,1) (A)") => {
            let f = hodge_family_2d(alg);
            f.eval(&[Scalar::one()])
        }
        (2, SusyLabel::Chiral(2, 2), "rank (1,1) (B)") => rank11_2d_b(alg)?,
        // ----- 2d chiral family -----
        (2, SusyLabel::Chiral(p, 0), "rank (1,0)") => {
            if p < 2 {
                return Err(SusyError::Unsupported(
                    "no square-zero supercharges for N+ = 1".into(),
                ));
            }
            null_block_vector(alg, 0, 0).ok_or(SusyError::Unclassified)?
        }
        _ => return Err(SusyError::Unclassified),
    };
    debug_assert_eq!(q.len(), dim);
    // Validate against the row.
    let got = classify(alg, &q)?;
    if got.orbit != row.orbit {
        return Err(SusyError::Unsupported(format!(
            "representative for {} classified as {}",
            row.name(),
            got.orbit
        )));
    }
    Ok(q)
}

/// Representative produced by pushing an upper-level representative one or
/// more steps down the chain.
fn push_rep(
    chain: &ReductionChain,
    upper_dim: usize,
    upper_susy: SusyLabel,
    upper_orbit: &str,
    _row: &OrbitLabel,
) -> Result<Supercharge, SusyError> {
    let upper_row = golden_row(upper_dim, upper_susy, upper_orbit).ok_or(SusyError::Unclassified)?;
    let top_dim = chain.levels[0].n;
    let from = top_dim - upper_dim;
    let to = chain.levels.len() - 1;
    let upper_q = representative_in(
        &ReductionChain {
            levels: chain.levels[..=from].to_vec(),
            steps: chain.steps[..from].to_vec(),
        },
        &upper_row,
    )?;
    Ok(chain.push_down(from, to, &upper_q))
}

/// Rank-1 supercharge with a non-null spin leg (odd dimensions with
/// symplectic multiplicity): a combination of the two conjugate kernels on a
/// shared multiplicity vector, validated by the invariant-direction count.
fn rank_one_combined(alg: &SusyAlgebra, want_dirs: usize) -> Result<Supercharge, SusyError> {
    let k = alg.n / 2;
    let plus: Vec<(usize, usize, i64)> = (0..k).map(|j| (2 * j, 2 * j + 1, 1)).collect();
    let minus: Vec<(usize, usize, i64)> = (0..k).map(|j| (2 * j, 2 * j + 1, -1)).collect();
    let ka = isotropic_kernel(alg, &plus);
    let kb = isotropic_kernel(alg, &minus);
    for ca in 0..ka.cols() {
        for cb in 0..kb.cols() {
            for phase in [Scalar::one(), Scalar::i(), Scalar::from_int(-1)] {
                let q = add_q(&ka.column(ca), &scale_q(&kb.column(cb), &phase));
                if alg.block_ranks(&q)[0] != 1 {
                    continue;
                }
                if let (true, _) = alg.is_square_zero(&q) {
                    if alg.invariant_directions(&q).ok() == Some(want_dirs) {
                        return Ok(q);
                    }
                }
            }
        }
    }
    Err(SusyError::Unclassified)
}

/// Rank-2 supercharge in an odd dimension: a pure leg plus a kernel partner
/// on an independent multiplicity vector.
fn rank_two_odd(alg: &SusyAlgebra, want_dirs: usize) -> Result<Supercharge, SusyError> {
    let q1 = pure_spinor_top(alg);
    let gmap = alg.gamma.gamma_map(&q1);
    let kern = gmap.kernel_basis();
    for c in 0..kern.cols() {
        let q = add_q(&q1, &kern.column(c));
        let (ok, _) = alg.is_square_zero(&q);
        if !ok || alg.block_ranks(&q)[0] != 2 {
            continue;
        }
        if alg.invariant_directions(&q).ok() == Some(want_dirs) {
            return Ok(q);
        }
    }
    // Try small combinations of kernel columns.
    for c1 in 0..kern.cols() {
        for c2 in (c1 + 1)..kern.cols() {
            let q = add_q(&q1, &add_q(&kern.column(c1), &kern.column(c2)));
            let (ok, _) = alg.is_square_zero(&q);
            if ok && alg.block_ranks(&q)[0] == 2 && alg.invariant_directions(&q).ok() == Some(want_dirs) {
                return Ok(q);
            }
        }
    }
    Err(SusyError::Unclassified)
}

/// Rank (1,1) supercharge with one unit leg per chirality block (diagonal
/// multiplicity pairing), selected by the invariant-direction count.
fn two_block_units(alg: &SusyAlgebra, want_dirs: usize) -> Result<Supercharge, SusyError> {
    let b1 = &alg.model.blocks[1];
    let qp = block_unit(alg, 0, 0, 0);
    for s in 0..b1.s_dim {
        for w in 0..b1.w_dim {
            let q = add_q(&qp, &block_unit(alg, 1, s, w));
            let (ok, _) = alg.is_square_zero(&q);
            if ok && alg.invariant_directions(&q).ok() == Some(want_dirs) {
                return Ok(q);
            }
        }
    }
    Err(SusyError::Unclassified)
}

/// Rank (1,1) in cross-paired algebras: unit legs on dual multiplicity
/// vectors that annihilate each other.
fn two_block_units_cross(alg: &SusyAlgebra, want_dirs: usize) -> Result<Supercharge, SusyError> {
    let b0 = &alg.model.blocks[0];
    let b1 = &alg.model.blocks[1];
    for s1 in 0..b1.s_dim {
        for w0 in 0..b0.w_dim {
            for w1 in 0..b1.w_dim {
                let q = add_q(&block_unit(alg, 0, 0, w0), &block_unit(alg, 1, s1, w1));
                let (ok, _) = alg.is_square_zero(&q);
                if ok && alg.invariant_directions(&q).ok() == Some(want_dirs) {
                    return Ok(q);
                }
            }
        }
    }
    Err(SusyError::Unclassified)
}

/// The B-class rank (1,1) supercharge in 2d N=(2,2): the null pair whose
/// perpendicular moments vanish.
fn rank11_2d_b(alg: &SusyAlgebra) -> Result<Supercharge, SusyError> {
    for upper_line in 0..2 {
        let Some(upper) = null_block_vector(alg, 0, upper_line) else { continue };
        for lower_line in 0..2 {
            let Some(lower) = null_block_vector(alg, 1, lower_line) else { continue };
            let q = add_q(&upper, &lower);
            let (ok, _) = alg.is_square_zero(&q);
            if !ok {
                continue;
            }
            if crate::orbits::perp_moments(alg, &q).iter().all(|m| m.is_zero()) {
                return Ok(q);
            }
        }
    }
    Err(SusyError::Unclassified)
}

/// Rank-2 supercharge in a 3d algebra with the requested orientation class
/// (special = B when the residual upper brackets vanish).
fn rank_two_3d(alg: &SusyAlgebra, want_b: bool) -> Result<Supercharge, SusyError> {
    let b = &alg.model.blocks[0];
    let phases = [Scalar::one(), Scalar::i(), -Scalar::one(), -Scalar::i()];
    for wa in 0..b.w_dim {
        for wb in 0..b.w_dim {
            if wa == wb {
                continue;
            }
            for ph in &phases {
                let q = add_q(
                    &block_unit(alg, 0, 0, wa),
                    &scale_q(&block_unit(alg, 0, 1, wb), ph),
                );
                let (ok, _) = alg.is_square_zero(&q);
                if !ok || alg.block_ranks(&q)[0] != 2 {
                    continue;
                }
                if alg.invariant_directions(&q).ok() != Some(3) {
                    continue;
                }
                let perp_zero = crate::orbits::perp_moments(alg, &q).iter().all(|m| m.is_zero());
                if perp_zero == want_b {
                    return Ok(q);
                }
            }
        }
    }
    // Wider search with two-term mixed legs.
    for wa in 0..b.w_dim {
        for wb in 0..b.w_dim {
            for wc in 0..b.w_dim {
                if wa == wb || wa == wc || wb == wc {
                    continue;
                }
                for ph in &phases {
                    let mut leg2 = add_q(
                        &block_unit(alg, 0, 1, wb),
                        &scale_q(&block_unit(alg, 0, 1, wc), ph),
                    );
                    leg2 = scale_q(&leg2, &Scalar::one());
                    let q = add_q(&block_unit(alg, 0, 0, wa), &leg2);
                    let (ok, _) = alg.is_square_zero(&q);
                    if !ok || alg.block_ranks(&q)[0] != 2 {
                        continue;
                    }
                    if alg.invariant_directions(&q).ok() != Some(3) {
                        continue;
                    }
                    let perp_zero =
                        crate::orbits::perp_moments(alg, &q).iter().all(|m| m.is_zero());
                    if perp_zero == want_b {
                        return Ok(q);
                    }
                }
            }
        }
    }
    Err(SusyError::Unclassified)
}

/// Rank (2,2) supercharge in the 6d N=(1,1) algebra: rank-2 legs in each
/// chirality block whose diagonal bracket contributions cancel.
fn rank22_6d(alg: &SusyAlgebra) -> Result<Supercharge, SusyError> {
    rank22_6d_all(alg).into_iter().next().ok_or(SusyError::Unclassified)
}

/// All rank (2,2) solutions found by the block-unit search in 6d N=(1,1).
fn rank22_6d_all(alg: &SusyAlgebra) -> Vec<Supercharge> {
    let mut out = Vec::new();
    let b0 = &alg.model.blocks[0];
    let b1 = &alg.model.blocks[1];
    let probes: Vec<(usize, usize)> = (0..b0.s_dim)
        .flat_map(|a| ((a + 1)..b0.s_dim).map(move |b| (a, b)))
        .collect();
    for &(s0, s1) in &probes {
        let qp = add_q(
            &block_unit(alg, 0, s0, 0),
            &block_unit(alg, 0, s1, 1),
        );
        let v = alg.bracket(&qp, &qp);
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        for &(t0, t1) in &probes {
            if (t0, t1) == (s0, s1) {
                continue;
            }
            let _ = b1;
            let qm = add_q(
                &block_unit(alg, 1, t0, 0),
                &block_unit(alg, 1, t1, 1),
            );
            let u = alg.bracket(&qm, &qm);
            // Need u = -c^2 v for some scalar c; then Q = qp-leg + c*qm works
            // since the minus-block bracket scales quadratically.
            let Some(k) = v.iter().position(|c| !c.is_zero()) else { continue };
            if u[k].is_zero() {
                continue;
            }
            let ratio = &(-&v[k]) / &u[k];
            // Proportionality check and an exact square root in Q(i) if one
            // exists among small candidates c with c^2 = ratio.
            let prop = v
                .iter()
                .zip(&u)
                .all(|(a, b)| *a == -&(b * &ratio));
            if !prop {
                continue;
            }
            for c in [
                Scalar::one(),
                Scalar::i(),
                -Scalar::one(),
                -Scalar::i(),
                Scalar::complex(1, 1, 1),
                Scalar::complex(1, -1, 1),
            ] {
                if &c * &c == ratio {
                    let q = add_q(&qp, &scale_q(&qm, &c));
                    let (ok, _) = alg.is_square_zero(&q);
                    if ok
                        && alg.block_ranks(&q) == vec![2, 2]
                        && alg.invariant_directions(&q).ok() == Some(5)
                    {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

/// Solve the linear square-zero completion: a partner x in `block` with
/// Gamma(q, x) = 0, picked so the total has the wanted invariant-direction
/// count.
fn partner_in_block(
    alg: &SusyAlgebra,
    q: &Supercharge,
    block: usize,
    want_dirs: usize,
) -> Result<Supercharge, SusyError> {
    let b = &alg.model.blocks[block];
    let off = alg.model.block_offset(block);
    let cols = b.s_dim * b.w_dim;
    // Gamma(q, e_{off+c}) as an n x cols matrix.
    let gmap = alg.gamma.gamma_map(q);
    let restricted = Matrix::from_fn(alg.n, cols, |r, c| gmap.get(r, off + c).clone());
    let kern = restricted.kernel_basis();
    for c in 0..kern.cols() {
        let mut x = vec![Scalar::zero(); alg.dim_sigma()];
        for r in 0..cols {
            x[off + r] = kern.get(r, c).clone();
        }
        let cand = add_q(q, &x);
        let (ok, _) = alg.is_square_zero(&cand);
        if ok && alg.invariant_directions(&cand).ok() == Some(want_dirs) {
            return Ok(cand);
        }
    }
    // Generic combination.
    if kern.cols() >= 2 {
        let mut x = vec![Scalar::zero(); alg.dim_sigma()];
        for c in 0..kern.cols() {
            for r in 0..cols {
                x[off + r] = &x[off + r] + &kern.get(r, c).scale_int(1 + c as i64);
            }
        }
        let cand = add_q(q, &x);
        let (ok, _) = alg.is_square_zero(&cand);
        if ok && alg.invariant_directions(&cand).ok() == Some(want_dirs) {
            return Ok(cand);
        }
    }
    Err(SusyError::Unclassified)
}

// ---------------------------------------------------------------------------
// Reduction graph.
// ---------------------------------------------------------------------------

/// Verification result for one graph arrow.
#[derive(Debug, Clone)]
pub struct ArrowCheck {
    pub source: String,
    pub target: String,
    pub ok: bool,
    pub detail: String,
}

/// Verify every arrow of the orbit graph: a witness supercharge in the
/// source orbit whose one-step reduction classifies as the target orbit.
pub fn verify_reduction_graph() -> Result<Vec<ArrowCheck>, SusyError> {
    let nodes = graph_nodes();
    let node = |id: &str| nodes.iter().find(|(n, _, _, _)| *n == id).cloned().unwrap();
    let mut out = Vec::new();
    for (src, dst) in crate::orbits::graph_edges() {
        let (_, sdim, scount, sorbit) = node(src);
        let (_, ddim, _dcount, dorbit) = node(dst);
        assert_eq!(ddim + 1, sdim);
        let slabel = chain_label(scount, sdim).unwrap();
        let dlabel = chain_label(scount, ddim).unwrap();
        let chain = reduction_chain(ddim, dlabel)?;
        let top_dim = chain.levels[0].n;
        let (sidx, didx) = (top_dim - sdim, top_dim - ddim);
        let salg = &chain.levels[sidx];
        let dalg = &chain.levels[didx];
        let witness = arrow_witness(&chain, sidx, salg, slabel, sorbit, dalg, dorbit);
        let check = match witness {
            Some(q) => {
                let lower = chain.push_down(sidx, didx, &q);
                let got_src = classify(salg, &q).map(|r| r.orbit.to_string());
                let got_dst = classify(dalg, &lower).map(|r| r.orbit.to_string());
                let ok = got_src.as_deref().ok() == Some(sorbit) && got_dst.as_deref().ok() == Some(dorbit);
                ArrowCheck {
                    source: format!("{sdim}d N={slabel} {sorbit}"),
                    target: format!("{ddim}d N={dlabel} {dorbit}"),
                    ok,
                    detail: format!("source -> {got_src:?}, target -> {got_dst:?}"),
                }
            }
            None => ArrowCheck {
                source: format!("{sdim}d N={slabel} {sorbit}"),
                target: format!("{ddim}d N={dlabel} {dorbit}"),
                ok: false,
                detail: "no witness found".into(),
            },
        };
        out.push(check);
    }
    Ok(out)
}

/// Find a supercharge in the source orbit whose reduction lands in the
/// target orbit: try the standard representative, tilted pure spinors, and a
/// pool of exact moves.
fn arrow_witness(
    chain: &ReductionChain,
    sidx: usize,
    salg: &SusyAlgebra,
    slabel: SusyLabel,
    sorbit: &str,
    dalg: &SusyAlgebra,
    dorbit: &str,
) -> Option<Supercharge> {
    let didx = sidx + 1;
    let matches = |q: &Supercharge| -> bool {
        let src_ok = classify(salg, q).map(|r| r.orbit == sorbit).unwrap_or(false);
        if !src_ok {
            return false;
        }
        let lower = chain.push_down(sidx, didx, q);
        classify(dalg, &lower).map(|r| r.orbit == dorbit).unwrap_or(false)
    };
    let mut candidates: Vec<Supercharge> = Vec::new();
    if let Some(row) = golden_row(salg.n, slabel, sorbit) {
        let sub = ReductionChain {
            levels: chain.levels[..=sidx].to_vec(),
            steps: chain.steps[..sidx].to_vec(),
        };
        if let Ok(q) = representative_in(&sub, &row) {
            candidates.push(q);
        }
    }
    // Structured candidates at the source level and every level above it,
    // pushed down: positions that are special at one level often reduce to
    // the orbit needed one dimension lower.
    for lev in (0..=sidx).rev() {
        for q in raw_candidates(&chain.levels[lev]) {
            candidates.push(chain.push_down(lev, sidx, &q));
        }
    }
    // Moved variants of everything collected so far.
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7157);
    let pool = move_pool(salg);
    let base = candidates.clone();
    for q in &base {
        for _ in 0..6 {
            candidates.push(random_move(&pool, &mut rng, q));
        }
    }
    candidates.into_iter().find(|q| matches(q))
}

/// Structured square-zero candidates in one algebra: tilted pure spinors,
/// kernel pairs, and small block-unit combinations.
fn raw_candidates(alg: &SusyAlgebra) -> Vec<Supercharge> {
    let mut out: Vec<Supercharge> = Vec::new();
    let n = alg.n;
    if n >= 4 {
        let k = n / 2;
        let mut pair_sets: Vec<Vec<(usize, usize, i64)>> = Vec::new();
        let std_pairs: Vec<(usize, usize, i64)> = (0..k).map(|j| (2 * j, 2 * j + 1, 1)).collect();
        pair_sets.push(std_pairs.clone());
        for flip in 0..k {
            let mut v = std_pairs.clone();
            v[flip].2 = -1;
            pair_sets.push(v);
        }
        if n % 2 == 1 {
            let mut tilted = std_pairs.clone();
            tilted[k - 1] = (2 * k - 2, n - 1, 1);
            pair_sets.push(tilted.clone());
            let mut tilted2 = tilted;
            tilted2[k - 1].2 = -1;
            pair_sets.push(tilted2);
        }
        let mut kernels: Vec<Matrix> = Vec::new();
        for ps in &pair_sets {
            kernels.push(isotropic_kernel(alg, ps));
        }
        for kern in &kernels {
            for c in 0..kern.cols().min(3) {
                out.push(kern.column(c));
            }
            if kern.cols() >= 2 {
                out.push(add_q(&kern.column(0), &kern.column(1)));
            }
        }
        // Cross-kernel sums reach mixed-alignment orbits.
        for a in 0..kernels.len() {
            for b in (a + 1)..kernels.len().min(a + 3) {
                if kernels[a].cols() > 0 && kernels[b].cols() > 0 {
                    out.push(add_q(&kernels[a].column(0), &kernels[b].column(0)));
                    for ph in [Scalar::i(), Scalar::from_int(2)] {
                        out.push(add_q(
                            &kernels[a].column(0),
                            &scale_q(&kernels[b].column(0), &ph),
                        ));
                    }
                }
            }
        }
        // Pure leg plus a partner from the kernel of its bracket map.
        if let Some(q1) = kernels.first().and_then(|kk| (kk.cols() > 0).then(|| kk.column(0))) {
            let gmap = alg.gamma.gamma_map(&q1);
            let kern = gmap.kernel_basis();
            for c in 0..kern.cols().min(6) {
                out.push(add_q(&q1, &kern.column(c)));
                out.push(add_q(&q1, &scale_q(&kern.column(c), &Scalar::i())));
            }
            if kern.cols() >= 2 {
                out.push(add_q(&q1, &add_q(&kern.column(0), &kern.column(1))));
            }
        }
    }
    // Odd dimensions with a single block: supercharges supported on an
    // isotropic pair of multiplicity slots carry free spin legs, which is
    // where the rank-2 orbits live.
    if alg.model.blocks.len() == 1 && alg.model.blocks[0].w_dim >= 2 {
        let b = &alg.model.blocks[0];
        let spin_legs: Vec<Vec<(usize, Scalar)>> = {
            let mut legs: Vec<Vec<(usize, Scalar)>> = Vec::new();
            for sidx in 0..b.s_dim {
                legs.push(vec![(sidx, Scalar::one())]);
            }
            for sa in 0..b.s_dim {
                for sb in (sa + 1)..b.s_dim {
                    legs.push(vec![(sa, Scalar::one()), (sb, Scalar::one())]);
                    legs.push(vec![(sa, Scalar::one()), (sb, Scalar::i())]);
                    legs.push(vec![(sa, Scalar::one()), (sb, -Scalar::one())]);
                }
            }
            legs
        };
        let mk = |leg: &Vec<(usize, Scalar)>, w: usize| -> Supercharge {
            let mut q = vec![Scalar::zero(); alg.dim_sigma()];
            for (sidx, c) in leg {
                q[coord(alg, 0, *sidx, w)] = c.clone();
            }
            q
        };
        for wa in 0..b.w_dim {
            for wb in (wa + 1)..b.w_dim {
                // Isotropic slot pair: unit legs there must bracket to zero.
                let test = add_q(&mk(&spin_legs[0], wa), &mk(&spin_legs[1 % spin_legs.len()], wb));
                if !alg.is_square_zero(&test).0 {
                    continue;
                }
                for (i1, l1) in spin_legs.iter().enumerate() {
                    for (i2, l2) in spin_legs.iter().enumerate() {
                        if i1 == i2 {
                            continue;
                        }
                        out.push(add_q(&mk(l1, wa), &mk(l2, wb)));
                    }
                }
            }
        }
    }
    // 6d N=(1,1): all block-unit rank (2,2) solutions.
    if alg.n == 6 && alg.label == SusyLabel::Chiral(1, 1) {
        out.extend(rank22_6d_all(alg));
    }
    // Keep only square-zero nonzero candidates.
    out.retain(|q| q.iter().any(|c| !c.is_zero()) && alg.is_square_zero(q).0);
    out
}
