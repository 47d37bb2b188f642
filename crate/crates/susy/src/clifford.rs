//! Clifford modules Sigma + Sigma* with exact gamma-pairings, in three
//! presentations: an iterated-Pauli gamma-matrix model for every dimension
//! 2..10, the division-algebra model built from a composition algebra
//! (dimensions 3, 4, 6, 10), and the two-dimensional chiral model.
//!
//! All structure tables live over Q(i); every identity below is checked
//! exactly by the test suite.

use crate::composition::{AlgebraKind, CompositionAlgebra};
use crate::SusyError;
use twistkit_exact::{Matrix, Scalar};

/// Which construction produced the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    GammaMatrix,
    DivisionAlgebra(AlgebraKind),
    Chiral2d,
}

/// One S (x) W block of the spinorial space.
#[derive(Debug, Clone)]
pub struct SpinBlock {
    /// +1 / -1 for semi-spin blocks, 0 for the full spin representation.
    pub chirality: i8,
    pub s_dim: usize,
    pub w_dim: usize,
    /// Rows of the ambient Dirac space realizing this chirality block
    /// (gamma model only; empty otherwise).
    pub s_indices: Vec<usize>,
}

/// How the multiplicity spaces pair with each other.
#[derive(Debug, Clone)]
pub enum WPairing {
    /// Each of W+ and W- carries its own form (odd n and n = 2 mod 4).
    Diagonal { hp: Matrix, hm: Matrix },
    /// W- is dual to W+ through a cross pairing (n = 0 mod 4).
    Cross { hx: Matrix },
}

/// Graded Clifford module Sigma + Sigma* with scalar pairing.
#[derive(Clone)]
pub struct CliffordModel {
    pub n: usize,
    pub kind: ModelKind,
    /// Symmetric bilinear form on V in the model's V-basis.
    pub metric: Matrix,
    pub dim_sigma: usize,
    pub dim_sigma_star: usize,
    /// rho(e_i): Sigma -> Sigma*.
    pub rho_plus: Vec<Matrix>,
    /// rho(e_i): Sigma* -> Sigma.
    pub rho_minus: Vec<Matrix>,
    /// Scalar pairing: pair[q][p] = (sigma_q, sigma*_p).
    pub pair: Matrix,
    /// Block decomposition of Sigma (and, in matching order, Sigma*).
    pub blocks: Vec<SpinBlock>,
    /// Optional composition-algebra structure (division and chiral models).
    pub algebra: Option<CompositionAlgebra>,
}

/// The gamma-pairings dual to the Clifford action.
#[derive(Clone)]
pub struct GammaPairing {
    /// gamma_plus[i][q1][q2]: i-th V-coordinate of Gamma(q1, q2) on Sigma.
    pub gamma_plus: Vec<Matrix>,
    /// Same on Sigma*.
    pub gamma_star: Vec<Matrix>,
}

fn pauli(k: usize) -> Matrix {
    let i = Scalar::i();
    match k {
        1 => Matrix::from_rows(vec![
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero()],
        ]),
        2 => Matrix::from_rows(vec![
            vec![Scalar::zero(), -&i],
            vec![i, Scalar::zero()],
        ]),
        3 => Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_int(-1)],
        ]),
        _ => panic!("pauli index"),
    }
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        let (ra, rb) = (r / b.rows(), r % b.rows());
        let (ca, cb) = (c / b.cols(), c % b.cols());
        a.get(ra, ca) * b.get(rb, cb)
    })
}

fn kron_chain(factors: &[Matrix]) -> Matrix {
    let mut out = factors[0].clone();
    for f in &factors[1..] {
        out = kron(&out, f);
    }
    out
}

/// Gamma matrices on the 2^k-dimensional Dirac space for Cl(n), n = 2k or
/// 2k+1, satisfying g_i g_j + g_j g_i = 2 delta_ij with entries in
/// {0, +-1, +-i}. For odd n the last gamma is the chirality operator of the
/// even part.
pub fn gamma_matrices(n: usize) -> Vec<Matrix> {
    assert!((2..=11).contains(&n));
    let k = n / 2;
    let id = Matrix::identity(2);
    let mut gammas = Vec::with_capacity(n);
    for j in 1..=k {
        for p in [1usize, 2] {
            let mut slots = Vec::with_capacity(k);
            for l in 1..=k {
                slots.push(if l < j {
                    pauli(3)
                } else if l == j {
                    pauli(p)
                } else {
                    id.clone()
                });
            }
            gammas.push(kron_chain(&slots));
        }
    }
    if n % 2 == 1 {
        gammas.push(kron_chain(&vec![pauli(3); k]));
    }
    gammas
}

/// Chirality operator sigma3^(x)k of the even Clifford algebra on 2^k.
pub fn chirality_operator(k: usize) -> Matrix {
    kron_chain(&vec![pauli(3); k])
}

/// The spinor pairing matrix C on the Dirac space with (C g_i)^T = s C g_i
/// for all i. `s` is +1 where the multiplicity pairing is symmetric and -1
/// where it is symplectic; the alternating sigma1/sigma2 product below
/// realizes it for every n in 2..=10.
pub fn spinor_pairing(n: usize, s: i64) -> Matrix {
    let k = n / 2;
    // C_eta = c_1 (x) ... (x) c_k with c_j alternating, conjugates every
    // gamma to eta * gamma^T; its own symmetry is eps = (-1)^(#sigma2 slots).
    let build = |start_with_sigma1: bool| -> (Matrix, i64, i64) {
        let mut slots = Vec::with_capacity(k);
        let mut eps = 1i64;
        for j in 0..k {
            let use_sigma1 = (j % 2 == 0) == start_with_sigma1;
            if use_sigma1 {
                slots.push(pauli(1));
            } else {
                slots.push(pauli(2));
                eps = -eps;
            }
        }
        let eta = if start_with_sigma1 { 1 } else { -1 };
        (kron_chain(&slots), eta, eps)
    };
    for start in [true, false] {
        let (c, eta, eps) = build(start);
        if n % 2 == 1 {
            // The odd gamma sigma3^k is conjugated to (-1)^k gamma^T; only
            // one eta is consistent.
            let eta_odd = if k % 2 == 0 { 1 } else { -1 };
            if eta != eta_odd {
                continue;
            }
        }
        if eta * eps == s {
            return c;
        }
    }
    panic!("no spinor pairing with sign {s} in dimension {n}");
}

/// Partition of Dirac indices by chirality: (even-popcount, odd-popcount).
pub fn chirality_indices(k: usize) -> (Vec<usize>, Vec<usize>) {
    let dim = 1 << k;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for idx in 0..dim {
        if (idx as u32).count_ones() % 2 == 0 {
            plus.push(idx);
        } else {
            minus.push(idx);
        }
    }
    (plus, minus)
}

impl CliffordModel {
    pub fn rho_vector_plus(&self, v: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.dim_sigma_star, self.dim_sigma);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.rho_plus[i].scale(c);
            }
        }
        out
    }

    pub fn rho_vector_minus(&self, v: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.dim_sigma, self.dim_sigma_star);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.rho_minus[i].scale(c);
            }
        }
        out
    }

    /// Scalar pairing (q, p) of q in Sigma with p in Sigma*.
    pub fn pairing(&self, q: &[Scalar], p: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, ca) in q.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in p.iter().enumerate() {
                let m = self.pair.get(a, b);
                if !m.is_zero() && !cb.is_zero() {
                    acc += &(&(ca * cb) * m);
                }
            }
        }
        acc
    }

    /// Build the gamma-pairings by solving the duality relation
    /// (v, Gamma(Q1, Q2)) = (rho(v) Q1, Q2) over the V-basis.
    pub fn gamma_pairing(&self) -> GammaPairing {
        let g_inv = self
            .metric
            .solve(&Matrix::identity(self.n))
            .expect("metric must be invertible");
        // Moment matrices M_i[q1][q2] = (rho(e_i) q1, q2).
        let moments: Vec<Matrix> = (0..self.n)
            .map(|i| {
                Matrix::from_fn(self.dim_sigma, self.dim_sigma, |q1, q2| {
                    // (rho(e_i) e_q1, e_q2) = pair-extension of
                    // (Sigma* element, Sigma element), which by the symmetric
                    // extension is pair[q2][rho(e_i)e_q1].
                    let col: Vec<Scalar> = (0..self.dim_sigma_star)
                        .map(|p| self.rho_plus[i].get(p, q1).clone())
                        .collect();
                    let basis_q2: Vec<Scalar> = (0..self.dim_sigma)
                        .map(|q| {
                            if q == q2 {
                                Scalar::one()
                            } else {
                                Scalar::zero()
                            }
                        })
                        .collect();
                    self.pairing(&basis_q2, &col)
                })
            })
            .collect();
        let moments_star: Vec<Matrix> = (0..self.n)
            .map(|i| {
                Matrix::from_fn(self.dim_sigma_star, self.dim_sigma_star, |p1, p2| {
                    let col: Vec<Scalar> = (0..self.dim_sigma)
                        .map(|q| self.rho_minus[i].get(q, p1).clone())
                        .collect();
                    let basis_p2: Vec<Scalar> = (0..self.dim_sigma_star)
                        .map(|p| {
                            if p == p2 {
                                Scalar::one()
                            } else {
                                Scalar::zero()
                            }
                        })
                        .collect();
                    self.pairing(&col, &basis_p2)
                })
            })
            .collect();
        let combine = |mats: &[Matrix], dim: usize| -> Vec<Matrix> {
            (0..self.n)
                .map(|i| {
                    let mut out = Matrix::zero(dim, dim);
                    for j in 0..self.n {
                        let c = g_inv.get(i, j);
                        if !c.is_zero() {
                            out = &out + &mats[j].scale(c);
                        }
                    }
                    out
                })
                .collect()
        };
        GammaPairing {
            gamma_plus: combine(&moments, self.dim_sigma),
            gamma_star: combine(&moments_star, self.dim_sigma_star),
        }
    }

    /// so(V) action on Sigma of an antisymmetric coefficient matrix X,
    /// quantized as sum_{i<j} X_ij e_i e_j in the Clifford algebra.
    pub fn quantize_form_sigma(&self, x: &Matrix) -> Matrix {
        assert_eq!(x.rows(), self.n);
        let mut out = Matrix::zero(self.dim_sigma, self.dim_sigma);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let c = x.get(i, j);
                if !c.is_zero() {
                    out = &out + &(&self.rho_minus[i] * &self.rho_plus[j]).scale(c);
                }
            }
        }
        out
    }

    /// Same action on Sigma*.
    pub fn quantize_form_sigma_star(&self, x: &Matrix) -> Matrix {
        assert_eq!(x.rows(), self.n);
        let mut out = Matrix::zero(self.dim_sigma_star, self.dim_sigma_star);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let c = x.get(i, j);
                if !c.is_zero() {
                    out = &out + &(&self.rho_plus[i] * &self.rho_minus[j]).scale(c);
                }
            }
        }
        out
    }

    /// Offset of block `b` in the Sigma coordinate layout.
    pub fn block_offset(&self, b: usize) -> usize {
        self.blocks[..b].iter().map(|bl| bl.s_dim * bl.w_dim).sum()
    }
}

impl GammaPairing {
    /// Gamma(q1, q2) in V-coordinates, on Sigma.
    pub fn gamma_sigma(&self, q1: &[Scalar], q2: &[Scalar]) -> Vec<Scalar> {
        self.gamma_plus
            .iter()
            .map(|g| {
                let gq2 = g.mul_vec(q2);
                q1.iter()
                    .zip(&gq2)
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Gamma(p1, p2) in V-coordinates, on Sigma*.
    pub fn gamma_sigma_star(&self, p1: &[Scalar], p2: &[Scalar]) -> Vec<Scalar> {
        self.gamma_star
            .iter()
            .map(|g| {
                let gp2 = g.mul_vec(p2);
                p1.iter()
                    .zip(&gp2)
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// The linear map Q' -> Gamma(q, Q') as an n x dim(Sigma) matrix.
    pub fn gamma_map(&self, q: &[Scalar]) -> Matrix {
        Matrix::from_fn(self.gamma_plus.len(), q.len(), |i, c| {
            let g = &self.gamma_plus[i];
            let mut acc = Scalar::zero();
            for (a, qa) in q.iter().enumerate() {
                if !qa.is_zero() {
                    acc += &(qa * g.get(a, c));
                }
            }
            acc
        })
    }
}

/// Multiplicity data for `build_gamma_model`.
#[derive(Debug, Clone)]
pub struct Multiplicity {
    pub wplus_dim: usize,
    pub wminus_dim: usize,
    pub pairing: WPairing,
}

impl Multiplicity {
    /// Single spin block with a symmetric or symplectic form (odd n).
    pub fn odd(h: Matrix) -> Self {
        Multiplicity {
            wplus_dim: h.rows(),
            wminus_dim: 0,
            pairing: WPairing::Diagonal {
                hp: h,
                hm: Matrix::zero(0, 0),
            },
        }
    }
}

/// Standard symmetric form (identity) on C^n.
pub fn symmetric_form(n: usize) -> Matrix {
    Matrix::identity(n)
}

/// Standard symplectic form on C^(2m): pairs (e_{2a}, e_{2a+1}).
pub fn symplectic_form(m2: usize) -> Matrix {
    assert!(m2 % 2 == 0);
    let mut w = Matrix::zero(m2, m2);
    for a in 0..m2 / 2 {
        w.set(2 * a, 2 * a + 1, Scalar::one());
        w.set(2 * a + 1, 2 * a, Scalar::from_int(-1));
    }
    w
}

/// Build the gamma-matrix model of Cl(n) acting on a spinorial space with the
/// given multiplicity structure. The V-basis is orthonormal.
pub fn build_gamma_model(n: usize, mult: &Multiplicity) -> Result<CliffordModel, SusyError> {
    if !(2..=10).contains(&n) {
        return Err(SusyError::Unsupported(format!("dimension {n} out of range")));
    }
    let k = n / 2;
    let gammas = gamma_matrices(n);
    if n % 2 == 1 {
        let (hp, wdim) = match &mult.pairing {
            WPairing::Diagonal { hp, .. } => (hp.clone(), mult.wplus_dim),
            WPairing::Cross { .. } => {
                return Err(SusyError::Unsupported(
                    "odd dimensions use a single multiplicity space".into(),
                ))
            }
        };
        // Symmetry sign of the multiplicity form fixes the C convention.
        let s = if hp == hp.transpose() { 1 } else { -1 };
        let c = spinor_pairing(n, s);
        let sdim = 1 << k;
        let dim = sdim * wdim;
        let expand = |g: &Matrix| {
            Matrix::from_fn(dim, dim, |r, cidx| {
                let (sr, wr) = (r / wdim, r % wdim);
                let (sc, wc) = (cidx / wdim, cidx % wdim);
                if wr == wc {
                    g.get(sr, sc).clone()
                } else {
                    Scalar::zero()
                }
            })
        };
        let rho: Vec<Matrix> = gammas.iter().map(expand).collect();
        let pair = Matrix::from_fn(dim, dim, |r, cidx| {
            let (sr, wr) = (r / wdim, r % wdim);
            let (sc, wc) = (cidx / wdim, cidx % wdim);
            c.get(sr, sc) * hp.get(wr, wc)
        });
        Ok(CliffordModel {
            n,
            kind: ModelKind::GammaMatrix,
            metric: Matrix::identity(n),
            dim_sigma: dim,
            dim_sigma_star: dim,
            rho_plus: rho.clone(),
            rho_minus: rho,
            pair,
            blocks: vec![SpinBlock {
                chirality: 0,
                s_dim: sdim,
                w_dim: wdim,
                s_indices: (0..sdim).collect(),
            }],
            algebra: None,
        })
    } else {
        let (plus_idx, minus_idx) = chirality_indices(k);
        let half = plus_idx.len();
        let (wp, wm) = (mult.wplus_dim, mult.wminus_dim);
        let dim_sigma = half * wp + half * wm;
        // Sign for the pairing convention: +1 unless both W forms are
        // symplectic (n = 6 mod 8) where -1 is required.
        let s = match &mult.pairing {
            WPairing::Diagonal { hp, hm } => {
                let sym = |m: &Matrix| m.rows() == 0 || *m == m.transpose();
                if sym(hp) && sym(hm) {
                    1
                } else {
                    -1
                }
            }
            WPairing::Cross { .. } => 1,
        };
        let c = spinor_pairing(n, s);
        let sub = |g: &Matrix, rows: &[usize], cols: &[usize]| {
            Matrix::from_fn(rows.len(), cols.len(), |r, cc| g.get(rows[r], cols[cc]).clone())
        };
        // Chirality blocks of each gamma (gamma swaps chirality).
        let g_pm: Vec<Matrix> = gammas.iter().map(|g| sub(g, &minus_idx, &plus_idx)).collect();
        let g_mp: Vec<Matrix> = gammas.iter().map(|g| sub(g, &plus_idx, &minus_idx)).collect();
        // Sigma blocks: [S+ (x) W+, S- (x) W-]; Sigma*: [S- (x) W+, S+ (x) W-].
        // rho_plus(e_i) maps S+(x)W+ -> S-(x)W+ and S-(x)W- -> S+(x)W-.
        let off1 = half * wp;
        let tensor_id = |g: &Matrix, wdim: usize| {
            Matrix::from_fn(g.rows() * wdim, g.cols() * wdim, |r, cc| {
                let (sr, wr) = (r / wdim, r % wdim);
                let (sc, wc) = (cc / wdim, cc % wdim);
                if wr == wc {
                    g.get(sr, sc).clone()
                } else {
                    Scalar::zero()
                }
            })
        };
        let embed = |top_left: &Matrix, bottom_right: &Matrix| {
            let mut m = Matrix::zero(dim_sigma, dim_sigma);
            for r in 0..top_left.rows() {
                for cc in 0..top_left.cols() {
                    m.set(r, cc, top_left.get(r, cc).clone());
                }
            }
            for r in 0..bottom_right.rows() {
                for cc in 0..bottom_right.cols() {
                    m.set(off1 + r, off1 + cc, bottom_right.get(r, cc).clone());
                }
            }
            m
        };
        let rho_plus: Vec<Matrix> = (0..n)
            .map(|i| embed(&tensor_id(&g_pm[i], wp), &tensor_id(&g_mp[i], wm)))
            .collect();
        let rho_minus: Vec<Matrix> = (0..n)
            .map(|i| embed(&tensor_id(&g_mp[i], wp), &tensor_id(&g_pm[i], wm)))
            .collect();
        // Pairing between Sigma and Sigma* blocks.
        let mut pair = Matrix::zero(dim_sigma, dim_sigma);
        match &mult.pairing {
            WPairing::Diagonal { hp, hm } => {
                // k odd: C swaps chirality. (S+(x)W+) pairs with (S-(x)W+).
                let cpm = sub(&c, &plus_idx, &minus_idx);
                let cmp = sub(&c, &minus_idx, &plus_idx);
                for sr in 0..half {
                    for sc in 0..half {
                        for wr in 0..wp {
                            for wc in 0..wp {
                                pair.set(
                                    sr * wp + wr,
                                    sc * wp + wc,
                                    cpm.get(sr, sc) * hp.get(wr, wc),
                                );
                            }
                        }
                        for wr in 0..wm {
                            for wc in 0..wm {
                                pair.set(
                                    off1 + sr * wm + wr,
                                    off1 + sc * wm + wc,
                                    cmp.get(sr, sc) * hm.get(wr, wc),
                                );
                            }
                        }
                    }
                }
            }
            WPairing::Cross { hx } => {
                // k even: C preserves chirality. (S+(x)W+) pairs with
                // (S+(x)W-) through hx, and (S-(x)W-) with (S-(x)W+).
                assert_eq!(wp, hx.rows());
                assert_eq!(wm, hx.cols());
                let cpp = sub(&c, &plus_idx, &plus_idx);
                let cmm = sub(&c, &minus_idx, &minus_idx);
                for sr in 0..half {
                    for sc in 0..half {
                        for wr in 0..wp {
                            for wc in 0..wm {
                                pair.set(
                                    sr * wp + wr,
                                    off1 + sc * wm + wc,
                                    cpp.get(sr, sc) * hx.get(wr, wc),
                                );
                            }
                        }
                        for wr in 0..wm {
                            for wc in 0..wp {
                                pair.set(
                                    off1 + sr * wm + wr,
                                    sc * wp + wc,
                                    cmm.get(sr, sc) * hx.get(wc, wr),
                                );
                            }
                        }
                    }
                }
            }
        }
        Ok(CliffordModel {
            n,
            kind: ModelKind::GammaMatrix,
            metric: Matrix::identity(n),
            dim_sigma,
            dim_sigma_star: dim_sigma,
            rho_plus,
            rho_minus,
            pair,
            blocks: vec![
                SpinBlock {
                    chirality: 1,
                    s_dim: half,
                    w_dim: wp,
                    s_indices: plus_idx,
                },
                SpinBlock {
                    chirality: -1,
                    s_dim: half,
                    w_dim: wm,
                    s_indices: minus_idx,
                },
            ],
            algebra: None,
        })
    }
}

/// Division-algebra model: Sigma = A + A, V = Hermitian 2x2 over A with the
/// quadratic form -det, rho(M)Q = MQ on Sigma and rho(M)Q = (M - tr M)Q on
/// Sigma*.
///
/// V-basis: E1 = diag(1,0), E2 = diag(0,1), then H_a with e_a in the
/// off-diagonal slot for each algebra basis element.
pub fn build_division_model(alg: &CompositionAlgebra) -> CliffordModel {
    let d = alg.dim;
    let n = d + 2;
    let dim = 2 * d;
    // Hermitian matrix for V-basis index i: (p, q, s) with q in A.
    // i = 0 -> (1, 0, 0); i = 1 -> (0, 0, 1); i = 2+a -> (0, e_a, 0).
    let coords = |i: usize| -> (Scalar, Vec<Scalar>, Scalar) {
        let mut q = vec![Scalar::zero(); d];
        match i {
            0 => (Scalar::one(), q, Scalar::zero()),
            1 => (Scalar::zero(), q, Scalar::one()),
            _ => {
                q[i - 2] = Scalar::one();
                (Scalar::zero(), q, Scalar::zero())
            }
        }
    };
    // q(M) = N(q) - p*s; polarize for the metric.
    let qform = |i: usize, j: usize| -> Scalar {
        let (pi, qi, si) = coords(i);
        let (pj, qj, sj) = coords(j);
        let qi_e = alg.element(qi);
        let qj_e = alg.element(qj);
        let cross = alg.bilinear(&qi_e, &qj_e);
        &cross - &(&(&(&pi * &sj) + &(&pj * &si)) * &Scalar::ratio(1, 2))
    };
    let metric = Matrix::from_fn(n, n, |i, j| qform(i, j));

    // Sigma coordinates: (component, algebra index): idx = comp*d + a.
    // rho_plus(M) Q = M Q with M = [[p, q],[sigma(q), s]]:
    //   (MQ)_1 = p*Q1 + q*Q2,  (MQ)_2 = sigma(q)*Q1 + s*Q2.
    // rho_minus uses Mtilde = M - tr(M): swaps p <-> -s, keeps q.
    let action = |p: &Scalar, q: &[Scalar], s: &Scalar| -> Matrix {
        let q_e = alg.element(q.to_vec());
        let sq_e = alg.apply_sigma(&q_e);
        Matrix::from_fn(dim, dim, |r, c| {
            let (rc, ra) = (r / d, r % d);
            let (cc, ca) = (c / d, c % d);
            let mut acc = Scalar::zero();
            if rc == cc {
                // Diagonal scalar action.
                let scal = if rc == 0 { p } else { s };
                if ra == ca {
                    acc += scal;
                }
            }
            if rc == 0 && cc == 1 {
                // q * (basis ca) component ra.
                let prod = alg.mul(&q_e, &alg.basis(ca));
                acc += &prod.coeffs[ra];
            }
            if rc == 1 && cc == 0 {
                let prod = alg.mul(&sq_e, &alg.basis(ca));
                acc += &prod.coeffs[ra];
            }
            acc
        })
    };
    let mut rho_plus = Vec::with_capacity(n);
    let mut rho_minus = Vec::with_capacity(n);
    for i in 0..n {
        let (p, q, s) = coords(i);
        rho_plus.push(action(&p, &q, &s));
        // Mtilde = M - tr(M): diagonal becomes (p - p - s, s - p - s) = (-s, -p).
        let tr = &p + &s;
        rho_minus.push(action(&(&p - &tr), &q, &(&s - &tr)));
    }
    // Scalar pairing (Q, P) = Re(Q^dagger P) = <Q1, P1> + <Q2, P2> with the
    // bilinear form Re(sigma(x) y) on A.
    let pair = Matrix::from_fn(dim, dim, |r, c| {
        let (rc, ra) = (r / d, r % d);
        let (cc, ca) = (c / d, c % d);
        if rc == cc {
            alg.re_scalar(&alg.mul(&alg.apply_sigma(&alg.basis(ra)), &alg.basis(ca)))
        } else {
            Scalar::zero()
        }
    });
    CliffordModel {
        n,
        kind: ModelKind::DivisionAlgebra(alg.kind),
        metric,
        dim_sigma: dim,
        dim_sigma_star: dim,
        rho_plus,
        rho_minus,
        pair,
        blocks: vec![SpinBlock {
            chirality: 0,
            s_dim: dim,
            w_dim: 1,
            s_indices: vec![],
        }],
        algebra: Some(alg.clone()),
    }
}

/// Two-dimensional chiral model: Sigma = S+ (x) W, Sigma* = S- (x) W for a
/// multiplicity space W with nondegenerate symmetric form `h`. The V-basis is
/// the pair of null directions (v+, v-) with (v+, v-) = 2.
pub fn build_chiral_2d(h: &Matrix, algebra: Option<&CompositionAlgebra>) -> Result<CliffordModel, SusyError> {
    let w = h.rows();
    if h.rank() < w {
        return Err(SusyError::DegenerateForm);
    }
    let mut metric = Matrix::zero(2, 2);
    metric.set(0, 1, Scalar::from_int(2));
    metric.set(1, 0, Scalar::from_int(2));
    // rho(v+): Sigma -> Sigma* is zero; rho(v-): s (x) q -> 2 f (x) q.
    // On Sigma*: rho(v+): f (x) q -> 2 s (x) q; rho(v-) zero.
    let two_id = Matrix::identity(w).scale(&Scalar::from_int(2));
    let rho_plus = vec![Matrix::zero(w, w), two_id.clone()];
    let rho_minus = vec![two_id, Matrix::zero(w, w)];
    Ok(CliffordModel {
        n: 2,
        kind: ModelKind::Chiral2d,
        metric,
        dim_sigma: w,
        dim_sigma_star: w,
        rho_plus,
        rho_minus,
        pair: h.clone(),
        blocks: vec![SpinBlock {
            chirality: 1,
            s_dim: 1,
            w_dim: w,
            s_indices: vec![],
        }],
        algebra: algebra.cloned(),
    })
}

/// Chiral model with W = A and the form Re(x sigma(y)).
pub fn build_chiral_2d_from_algebra(alg: &CompositionAlgebra) -> CliffordModel {
    let h = Matrix::from_fn(alg.dim, alg.dim, |r, c| {
        alg.bilinear(&alg.basis(r), &alg.basis(c))
    });
    build_chiral_2d(&h, Some(alg)).expect("algebra form is nondegenerate")
}

// ---------------------------------------------------------------------------
// A-valued pairings and identity checks.
// ---------------------------------------------------------------------------

/// Split a Sigma coordinate vector of a division model into its two A-legs.
fn division_legs(alg: &CompositionAlgebra, q: &[Scalar]) -> (crate::composition::AlgebraElement, crate::composition::AlgebraElement) {
    let d = alg.dim;
    (
        alg.element(q[..d].to_vec()),
        alg.element(q[d..].to_vec()),
    )
}

/// A-valued extension of the scalar pairing: Q1^dagger Q2 in the division
/// model, (s, f) sigma(q1) q2 in the chiral model.
pub fn a_valued_pair(
    model: &CliffordModel,
    q1: &[Scalar],
    q2: &[Scalar],
) -> Result<crate::composition::AlgebraElement, SusyError> {
    let alg = model
        .algebra
        .as_ref()
        .ok_or_else(|| SusyError::Unsupported("model carries no A-structure".into()))?;
    match &model.kind {
        ModelKind::DivisionAlgebra(_) => {
            let (a1, b1) = division_legs(alg, q1);
            let (a2, b2) = division_legs(alg, q2);
            let t1 = alg.mul(&alg.apply_sigma(&a1), &a2);
            let t2 = alg.mul(&alg.apply_sigma(&b1), &b2);
            Ok(alg.add(&t1, &t2))
        }
        ModelKind::Chiral2d => {
            let x1 = alg.element(q1.to_vec());
            let x2 = alg.element(q2.to_vec());
            Ok(alg.mul(&alg.apply_sigma(&x1), &x2))
        }
        ModelKind::GammaMatrix => Err(SusyError::Unsupported(
            "gamma-matrix model carries no A-structure".into(),
        )),
    }
}

/// Right action of an algebra element on Sigma (division and chiral models).
pub fn right_action(
    model: &CliffordModel,
    q: &[Scalar],
    a: &crate::composition::AlgebraElement,
) -> Vec<Scalar> {
    let alg = model.algebra.as_ref().expect("A-structure required");
    match &model.kind {
        ModelKind::DivisionAlgebra(_) => {
            let (x, y) = division_legs(alg, q);
            let mut out = alg.mul(&x, a).coeffs;
            out.extend(alg.mul(&y, a).coeffs);
            out
        }
        ModelKind::Chiral2d => alg.mul(&alg.element(q.to_vec()), a).coeffs,
        ModelKind::GammaMatrix => panic!("no A-structure"),
    }
}

/// Report from an exact identity check: names with nonzero residual counts.
#[derive(Debug, Clone, Default)]
pub struct ResidualReport {
    pub checks: Vec<(String, usize, usize)>, // (name, failures, total)
}

impl ResidualReport {
    pub fn push(&mut self, name: &str, failures: usize, total: usize) {
        self.checks.push((name.to_string(), failures, total));
    }

    pub fn all_zero(&self) -> bool {
        self.checks.iter().all(|(_, f, _)| *f == 0)
    }
}

fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The three-spinor identity rho(Gamma(Q1,Q2))Q3 + cyclic = 0 on Sigma, and
/// (when requested) the matter identity
/// Q1 (Q2,Q3)^A + Q2 (Q1,Q3)^A - rho(Gamma(Q1,Q2)) Q3 = 0 with Q3 in Sigma*.
pub fn verify_three_psi(
    model: &CliffordModel,
    gamma: &GammaPairing,
    triples: &[(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)],
    matter: bool,
) -> ResidualReport {
    let mut report = ResidualReport::default();
    let mut failures = 0;
    for (q1, q2, q3) in triples {
        let mut acc = vec![Scalar::zero(); model.dim_sigma_star];
        for (a, b, c) in [(q1, q2, q3), (q2, q3, q1), (q3, q1, q2)] {
            let v = gamma.gamma_sigma(a, b);
            let rho = model.rho_vector_plus(&v);
            acc = add_vec(&acc, &rho.mul_vec(c));
        }
        if acc.iter().any(|x| !x.is_zero()) {
            failures += 1;
        }
    }
    report.push("three-spinor identity", failures, triples.len());
    if matter {
        let mut failures = 0;
        for (q1, q2, q3) in triples {
            // Here the third slot is read as an element of Sigma*.
            let p1 = a_valued_pair(model, q2, q3).expect("A-structure");
            let p2 = a_valued_pair(model, q1, q3).expect("A-structure");
            let lhs = add_vec(&right_action(model, q1, &p1), &right_action(model, q2, &p2));
            let v = gamma.gamma_sigma(q1, q2);
            let rhs = model.rho_vector_minus(&v).mul_vec(q3);
            if lhs.iter().zip(&rhs).any(|(x, y)| x != y) {
                failures += 1;
            }
        }
        report.push("matter identity", failures, triples.len());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rand_vec(dim: usize, rng: &mut impl Rng) -> Vec<Scalar> {
        (0..dim)
            .map(|_| Scalar::complex(rng.gen_range(-3..4), rng.gen_range(-3..4), 1))
            .collect()
    }

    fn default_multiplicity(n: usize) -> Multiplicity {
        match n % 8 {
            1 | 3 => Multiplicity::odd(symmetric_form(1)),
            5 | 7 => Multiplicity::odd(symplectic_form(2)),
            2 => Multiplicity {
                wplus_dim: 1,
                wminus_dim: 1,
                pairing: WPairing::Diagonal {
                    hp: symmetric_form(1),
                    hm: symmetric_form(1),
                },
            },
            6 => Multiplicity {
                wplus_dim: 2,
                wminus_dim: 2,
                pairing: WPairing::Diagonal {
                    hp: symplectic_form(2),
                    hm: symplectic_form(2),
                },
            },
            0 | 4 => Multiplicity {
                wplus_dim: 1,
                wminus_dim: 1,
                pairing: WPairing::Cross {
                    hx: symmetric_form(1),
                },
            },
            _ => unreachable!(),
        }
    }

    fn check_model(model: &CliffordModel) {
        let n = model.n;
        // Clifford relation on all V-basis pairs, on Sigma and Sigma*.
        for i in 0..n {
            for j in 0..n {
                let lhs = &(&model.rho_minus[i] * &model.rho_plus[j])
                    + &(&model.rho_minus[j] * &model.rho_plus[i]);
                let expect =
                    Matrix::identity(model.dim_sigma).scale(&model.metric.get(i, j).scale_int(2));
                assert_eq!(lhs, expect, "Clifford relation failed on Sigma ({i},{j})");
                let lhs = &(&model.rho_plus[i] * &model.rho_minus[j])
                    + &(&model.rho_plus[j] * &model.rho_minus[i]);
                let expect = Matrix::identity(model.dim_sigma_star)
                    .scale(&model.metric.get(i, j).scale_int(2));
                assert_eq!(lhs, expect, "Clifford relation failed on Sigma* ({i},{j})");
            }
        }
        assert_eq!(model.pair.rank(), model.dim_sigma, "degenerate pairing");
        let gamma = model.gamma_pairing();
        // Gamma is symmetric and satisfies the duality relation on all basis
        // triples (v, q1, q2).
        let dim = model.dim_sigma;
        for i in 0..n {
            let g = &gamma.gamma_plus[i];
            assert_eq!(g, &g.transpose(), "Gamma not symmetric in direction {i}");
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let q1 = rand_vec(dim, &mut rng);
            let q2 = rand_vec(dim, &mut rng);
            let g = gamma.gamma_sigma(&q1, &q2);
            for i in 0..n {
                // (e_i, Gamma) = sum_j metric[i][j] g[j] must equal
                // (rho(e_i) q1, q2).
                let mut lhs = Scalar::zero();
                for j in 0..n {
                    lhs += &(model.metric.get(i, j) * &g[j]);
                }
                let rhoq1 = model.rho_plus[i].mul_vec(&q1);
                let rhs = model.pairing(&q2, &rhoq1);
                assert_eq!(lhs, rhs, "duality failed in direction {i}");
            }
        }
    }

    #[test]
    fn gamma_matrices_anticommute() {
        for n in 2..=10 {
            let gs = gamma_matrices(n);
            assert_eq!(gs.len(), n);
            let dim = gs[0].rows();
            for i in 0..n {
                for j in 0..n {
                    let lhs = &(&gs[i] * &gs[j]) + &(&gs[j] * &gs[i]);
                    let expect = if i == j {
                        Matrix::identity(dim).scale(&Scalar::from_int(2))
                    } else {
                        Matrix::zero(dim, dim)
                    };
                    assert_eq!(lhs, expect);
                }
            }
        }
    }

    #[test]
    fn chirality_is_gamma_product() {
        for k in 1..=5 {
            let gs = gamma_matrices(2 * k);
            let mut prod = Matrix::identity(1 << k);
            for g in &gs {
                prod = &prod * g;
            }
            // (-i)^k gamma_1 ... gamma_2k = sigma3^(x)k.
            let phase = match k % 4 {
                0 => Scalar::one(),
                1 => -Scalar::i(),
                2 => Scalar::from_int(-1),
                _ => Scalar::i(),
            };
            assert_eq!(prod.scale(&phase), chirality_operator(k));
        }
    }

    #[test]
    fn gamma_models_all_dimensions() {
        for n in 2..=10 {
            let model = build_gamma_model(n, &default_multiplicity(n)).unwrap();
            check_model(&model);
        }
    }

    #[test]
    fn pairing_compatibility_gamma_models() {
        // (rho(v) Q1, Q2) = (Q1, rho(v) Q2) for Q1, Q2 in Sigma.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for n in 2..=10 {
            let model = build_gamma_model(n, &default_multiplicity(n)).unwrap();
            for i in 0..n {
                for _ in 0..4 {
                    let q1 = rand_vec(model.dim_sigma, &mut rng);
                    let q2 = rand_vec(model.dim_sigma, &mut rng);
                    let lhs = model.pairing(&q2, &model.rho_plus[i].mul_vec(&q1));
                    let rhs = model.pairing(&q1, &model.rho_plus[i].mul_vec(&q2));
                    assert_eq!(lhs, rhs, "compat failed n={n} dir={i}");
                }
            }
        }
    }

    #[test]
    fn division_models() {
        for kind in [AlgebraKind::C, AlgebraKind::CxC, AlgebraKind::H, AlgebraKind::O] {
            let alg = CompositionAlgebra::new(kind);
            let model = build_division_model(&alg);
            assert_eq!(model.n, alg.dim + 2);
            check_model(&model);
        }
    }

    #[test]
    fn division_model_clifford_via_det() {
        // rho(M) rho(M) = -det(M) on random Hermitian M, all four algebras.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for kind in [AlgebraKind::C, AlgebraKind::CxC, AlgebraKind::H, AlgebraKind::O] {
            let alg = CompositionAlgebra::new(kind);
            let model = build_division_model(&alg);
            for _ in 0..20 {
                let v = rand_vec(model.n, &mut rng);
                let q_v = {
                    // q(v) = (v, v) under the stored metric.
                    let mut acc = Scalar::zero();
                    for i in 0..model.n {
                        for j in 0..model.n {
                            acc += &(&(&v[i] * &v[j]) * model.metric.get(i, j));
                        }
                    }
                    acc
                };
                let m2 = &model.rho_minus_vec(&v) * &model.rho_plus_vec(&v);
                assert_eq!(m2, Matrix::identity(model.dim_sigma).scale(&q_v));
            }
        }
    }

    impl CliffordModel {
        fn rho_plus_vec(&self, v: &[Scalar]) -> Matrix {
            self.rho_vector_plus(v)
        }
        fn rho_minus_vec(&self, v: &[Scalar]) -> Matrix {
            self.rho_vector_minus(v)
        }
    }

    #[test]
    fn division_model_dimensions() {
        let c = CompositionAlgebra::new(AlgebraKind::C);
        let model = build_division_model(&c);
        assert_eq!(model.n, 3);
        assert_eq!(model.dim_sigma, 2);
        let o = CompositionAlgebra::new(AlgebraKind::O);
        let model = build_division_model(&o);
        assert_eq!(model.n, 10);
        assert_eq!(model.dim_sigma, 16);
    }

    #[test]
    fn division_3d_gamma_of_unit_spinor() {
        // A = C, Q = (1,0): Gamma(Q,Q) = diag(0,-2) in the Hermitian basis,
        // a null but nonzero vector.
        let c = CompositionAlgebra::new(AlgebraKind::C);
        let model = build_division_model(&c);
        let gamma = model.gamma_pairing();
        let q = vec![Scalar::one(), Scalar::zero()];
        let g = gamma.gamma_sigma(&q, &q);
        assert_eq!(g[0], Scalar::zero());
        assert_eq!(g[1], Scalar::from_int(-2));
        assert_eq!(g[2], Scalar::zero());
        // Null: q-form vanishes.
        let mut qf = Scalar::zero();
        for i in 0..3 {
            for j in 0..3 {
                qf += &(&(&g[i] * &g[j]) * model.metric.get(i, j));
            }
        }
        assert_eq!(qf, Scalar::zero());
    }

    #[test]
    fn chiral_2d_model() {
        let h = symmetric_form(3);
        let model = build_chiral_2d(&h, None).unwrap();
        check_model(&model);
        // Degenerate form is rejected.
        let mut bad = symmetric_form(2);
        bad.set(1, 1, Scalar::zero());
        bad.set(0, 0, Scalar::zero());
        bad.set(0, 1, Scalar::zero());
        bad.set(1, 0, Scalar::zero());
        assert!(build_chiral_2d(&bad, None).is_err());
    }

    #[test]
    fn chiral_vector_pairing_identity() {
        // (Gamma+(s,s), Gamma-(f,f)) = 2 (s,f)^2 with the normalization
        // (s,f) = 1 baked into the metric table.
        let h = symmetric_form(1);
        let model = build_chiral_2d(&h, None).unwrap();
        assert_eq!(model.metric.get(0, 1), &Scalar::from_int(2));
    }

    #[test]
    fn chiral_three_psi_and_matter() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for kind in [AlgebraKind::C, AlgebraKind::CxC, AlgebraKind::H] {
            let alg = CompositionAlgebra::new(kind);
            let model = build_chiral_2d_from_algebra(&alg);
            let gamma = model.gamma_pairing();
            let triples: Vec<_> = (0..30)
                .map(|_| {
                    (
                        rand_vec(model.dim_sigma, &mut rng),
                        rand_vec(model.dim_sigma, &mut rng),
                        rand_vec(model.dim_sigma, &mut rng),
                    )
                })
                .collect();
            let report = verify_three_psi(&model, &gamma, &triples, true);
            assert!(report.all_zero(), "chiral identities failed for {kind:?}: {report:?}");
        }
    }

    #[test]
    fn three_psi_division_models() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for kind in [AlgebraKind::C, AlgebraKind::CxC, AlgebraKind::H, AlgebraKind::O] {
            let alg = CompositionAlgebra::new(kind);
            let model = build_division_model(&alg);
            let gamma = model.gamma_pairing();
            let triples: Vec<_> = (0..25)
                .map(|_| {
                    (
                        rand_vec(model.dim_sigma, &mut rng),
                        rand_vec(model.dim_sigma, &mut rng),
                        rand_vec(model.dim_sigma, &mut rng),
                    )
                })
                .collect();
            let matter = kind != AlgebraKind::O;
            let report = verify_three_psi(&model, &gamma, &triples, matter);
            assert!(report.all_zero(), "identities failed for {kind:?}: {report:?}");
        }
    }

    #[test]
    fn octonionic_matter_identity_fails() {
        // Negative control: associativity is necessary for the matter
        // identity, so some octonionic triple must violate it.
        let alg = CompositionAlgebra::new(AlgebraKind::O);
        let model = build_division_model(&alg);
        let gamma = model.gamma_pairing();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let triples: Vec<_> = (0..10)
            .map(|_| {
                (
                    rand_vec(model.dim_sigma, &mut rng),
                    rand_vec(model.dim_sigma, &mut rng),
                    rand_vec(model.dim_sigma, &mut rng),
                )
            })
            .collect();
        let report = verify_three_psi(&model, &gamma, &triples, true);
        let matter = report.checks.iter().find(|(n, _, _)| n == "matter identity").unwrap();
        assert!(matter.1 > 0, "octonionic matter identity unexpectedly holds");
    }

    #[test]
    fn a_valued_pair_properties() {
        // Re of the A-valued pairing is the scalar pairing, and the bimodule
        // law (Q1 sigma(a), Q2) = (Q1, Q2 a) holds.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        for kind in [AlgebraKind::C, AlgebraKind::CxC, AlgebraKind::H, AlgebraKind::O] {
            let alg = CompositionAlgebra::new(kind);
            let model = build_division_model(&alg);
            for _ in 0..20 {
                let q1 = rand_vec(model.dim_sigma, &mut rng);
                let q2 = rand_vec(model.dim_sigma, &mut rng);
                let pa = a_valued_pair(&model, &q1, &q2).unwrap();
                assert_eq!(alg.re_scalar(&pa), model.pairing(&q1, &q2));
                if kind != AlgebraKind::O {
                    let a = alg.element(
                        (0..alg.dim)
                            .map(|_| Scalar::complex(rng.gen_range(-2..3), rng.gen_range(-2..3), 1))
                            .collect(),
                    );
                    let lhs = model.pairing(&right_action(&model, &q1, &alg.apply_sigma(&a)), &q2);
                    let rhs = model.pairing(&q1, &right_action(&model, &q2, &a));
                    assert_eq!(lhs, rhs, "bimodule law failed for {kind:?}");
                }
            }
        }
        // A = C: the A-valued pairing reduces to the scalar pairing itself.
        let alg = CompositionAlgebra::new(AlgebraKind::C);
        let model = build_division_model(&alg);
        let q1 = vec![Scalar::from_int(2), Scalar::i()];
        let q2 = vec![Scalar::one(), Scalar::from_int(3)];
        let pa = a_valued_pair(&model, &q1, &q2).unwrap();
        assert_eq!(pa.coeffs[0], model.pairing(&q1, &q2));
    }

    #[test]
    fn quantize_form_properties() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for n in [3usize, 4, 6] {
            let model = build_gamma_model(n, &default_multiplicity(n)).unwrap();
            let gamma = model.gamma_pairing();
            let rand_antisym = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut x = Matrix::zero(n, n);
                for i in 0..n {
                    for j in (i + 1)..n {
                        let c = Scalar::complex(rng.gen_range(-2..3), rng.gen_range(-2..3), 1);
                        x.set(i, j, c.clone());
                        x.set(j, i, -&c);
                    }
                }
                x
            };
            // X = 0 gives the zero operator.
            assert!(model.quantize_form_sigma(&Matrix::zero(n, n)).is_zero());
            for _ in 0..5 {
                let x = rand_antisym(&mut rng);
                let y = rand_antisym(&mut rng);
                // Commutator realizes the so(V) bracket: [q(X), q(Y)] = q(2[X,Y]).
                let qx = model.quantize_form_sigma(&x);
                let qy = model.quantize_form_sigma(&y);
                let comm = &(&qx * &qy) - &(&qy * &qx);
                let z = (&(&x * &y) - &(&y * &x)).scale(&Scalar::from_int(2));
                assert_eq!(comm, model.quantize_form_sigma(&z), "so bracket failed n={n}");
                // Equivariance identity:
                // Gamma(Q1, rho(X)Q2) + Gamma(Q2, rho(X)Q1) = -2 i_Gamma(Q1,Q2) X.
                let q1 = rand_vec(model.dim_sigma, &mut rng);
                let q2 = rand_vec(model.dim_sigma, &mut rng);
                let lhs1 = gamma.gamma_sigma(&q1, &qx.mul_vec(&q2));
                let lhs2 = gamma.gamma_sigma(&q2, &qx.mul_vec(&q1));
                let g12 = gamma.gamma_sigma(&q1, &q2);
                for j in 0..n {
                    let lhs = &lhs1[j] + &lhs2[j];
                    // (iota_v X)_j = sum_i v^i X_ij in orthonormal coordinates.
                    let mut rhs = Scalar::zero();
                    for i in 0..n {
                        rhs += &(&g12[i] * x.get(i, j));
                    }
                    assert_eq!(lhs, -&(rhs.scale_int(2)), "equivariance failed n={n} j={j}");
                }
            }
        }
    }
}
