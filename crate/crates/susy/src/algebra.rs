//! Supertranslation algebras: spinorial representations with multiplicity,
//! square-zero testing, invariant-direction counts, and dimensional
//! reduction.
//!
//! Every supported algebra is produced by reducing one of five top models
//! (16, 8, 4 and 2 supercharges, plus the 2d chiral family) one dimension at
//! a time. A reduction step is a pure re-indexing of spinor coordinates, so
//! supercharges are carried across exactly and the gamma-pairing of the
//! lower algebra is the orthogonal projection of the upper one by
//! construction.

use crate::clifford::{
    build_gamma_model, chirality_indices, symmetric_form, symplectic_form, CliffordModel,
    GammaPairing, Multiplicity, SpinBlock, WPairing,
};
use crate::SusyError;
use twistkit_exact::poly::{describe_variety, MultiPoly, VarietyDescription};
use twistkit_exact::{Matrix, Scalar};

/// (N) or (N+, N-) supersymmetry label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SusyLabel {
    N(usize),
    Chiral(usize, usize),
}

impl std::fmt::Display for SusyLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SusyLabel::N(n) => write!(f, "{n}"),
            SusyLabel::Chiral(p, m) => write!(f, "({p},{m})"),
        }
    }
}

impl SusyLabel {
    pub fn parse(s: &str) -> Result<Self, SusyError> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let parts: Vec<&str> = body.split(',').map(str::trim).collect();
            if parts.len() == 2 {
                let p = parts[0].parse().map_err(|_| bad_label(s))?;
                let m = parts[1].parse().map_err(|_| bad_label(s))?;
                return Ok(SusyLabel::Chiral(p, m));
            }
            return Err(bad_label(s));
        }
        Ok(SusyLabel::N(s.parse().map_err(|_| bad_label(s))?))
    }
}

fn bad_label(s: &str) -> SusyError {
    SusyError::Unsupported(format!("cannot parse susy label {s:?}"))
}

/// A supertranslation algebra: Clifford model with multiplicity, the
/// gamma-pairing, and the exact R-symmetry data the classifier needs.
#[derive(Clone)]
pub struct SusyAlgebra {
    pub n: usize,
    pub label: SusyLabel,
    pub model: CliffordModel,
    pub gamma: GammaPairing,
    /// Name of the R-symmetry group, for reports.
    pub r_name: String,
    /// Clifford actions of the dropped directions, realizing Spin(V-perp)
    /// inside the R-symmetry: pairs (Sigma -> Sigma*, Sigma* -> Sigma).
    pub perp_rho: Vec<(Matrix, Matrix)>,
    /// Extra exact R-symmetry generators acting on the multiplicity side
    /// (invertible Sigma-endomorphisms preserving Gamma).
    pub w_moves: Vec<Matrix>,
}

/// A supercharge is a coordinate vector in the algebra's Sigma.
pub type Supercharge = Vec<Scalar>;

impl SusyAlgebra {
    pub fn dim_sigma(&self) -> usize {
        self.model.dim_sigma
    }

    /// The odd-odd bracket: Gamma(q1, q2) as a V-vector.
    pub fn bracket(&self, q1: &Supercharge, q2: &Supercharge) -> Vec<Scalar> {
        assert_eq!(q1.len(), self.dim_sigma(), "supercharge from another algebra");
        assert_eq!(q2.len(), self.dim_sigma(), "supercharge from another algebra");
        self.gamma.gamma_sigma(q1, q2)
    }

    /// Square-zero test; the witness is Gamma(Q, Q).
    pub fn is_square_zero(&self, q: &Supercharge) -> (bool, Vec<Scalar>) {
        let w = self.bracket(q, q);
        (w.iter().all(|c| c.is_zero()), w)
    }

    /// Number of invariant directions: the exact rank of Gamma(Q, -).
    pub fn invariant_directions(&self, q: &Supercharge) -> Result<usize, SusyError> {
        let (ok, _) = self.is_square_zero(q);
        if !ok || q.iter().all(|c| c.is_zero()) {
            return Err(SusyError::NotSquareZero);
        }
        Ok(self.gamma.gamma_map(q).rank())
    }

    /// Restriction of Q to the chirality blocks, as (rows = S, cols = W)
    /// matrices; one entry per block.
    pub fn block_matrices(&self, q: &Supercharge) -> Vec<Matrix> {
        let mut out = Vec::new();
        let mut off = 0;
        for b in &self.model.blocks {
            out.push(Matrix::from_fn(b.s_dim, b.w_dim, |s, w| {
                q[off + s * b.w_dim + w].clone()
            }));
            off += b.s_dim * b.w_dim;
        }
        out
    }

    /// Ranks of Q on the chirality blocks (one value for odd n).
    pub fn block_ranks(&self, q: &Supercharge) -> Vec<usize> {
        self.block_matrices(q).iter().map(|m| m.rank()).collect()
    }

    /// Solve Gamma(Q, Q) = 0 restricted to a linear ansatz: Q = sum x_k a_k.
    pub fn square_zero_variety(
        &self,
        ansatz: &[Supercharge],
    ) -> Result<VarietyDescription, SusyError> {
        if ansatz.len() > 8 {
            return Err(SusyError::Budget(format!(
                "ansatz dimension {} exceeds the solver budget of 8",
                ansatz.len()
            )));
        }
        let nv = ansatz.len();
        let mut system = Vec::new();
        for i in 0..self.n {
            let mut poly = MultiPoly::zero(nv);
            for k in 0..nv {
                for l in 0..nv {
                    let g = self.bracket(&ansatz[k], &ansatz[l]);
                    let xk = MultiPoly::var(nv, k);
                    let xl = MultiPoly::var(nv, l);
                    poly = poly.add(&xk.mul(&xl).scale(&g[i]));
                }
            }
            system.push(poly);
        }
        Ok(describe_variety(&system))
    }

    /// The full Sigma basis as an ansatz.
    pub fn full_ansatz(&self) -> Vec<Supercharge> {
        (0..self.dim_sigma())
            .map(|k| {
                let mut v = vec![Scalar::zero(); self.dim_sigma()];
                v[k] = Scalar::one();
                v
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Top models.
// ---------------------------------------------------------------------------

fn label_from_blocks(n: usize, blocks: &[SpinBlock]) -> SusyLabel {
    let wp = blocks.first().map_or(0, |b| b.w_dim);
    let wm = blocks.get(1).map_or(0, |b| b.w_dim);
    match n % 8 {
        0 | 4 => SusyLabel::N(wp),
        1 | 3 => SusyLabel::N(wp),
        2 => SusyLabel::Chiral(wp, wm),
        5 | 7 => SusyLabel::N(wp / 2),
        6 => SusyLabel::Chiral(wp / 2, wm / 2),
        _ => unreachable!(),
    }
}

/// Nilpotent endomorphisms of a multiplicity space preserving its form:
/// rank-one symplectic shears for antisymmetric forms, rank-two rotations
/// for symmetric ones, plus strictly triangular maps where no form
/// constrains the block (cross-paired W and W*).
fn w_form_nilpotents(h: &Matrix) -> Vec<Matrix> {
    let w = h.rows();
    let mut out = Vec::new();
    if w < 2 {
        return out;
    }
    let antisym = *h == h.transpose().scale(&Scalar::from_int(-1));
    if antisym {
        // N(x) = omega(v, x) v for a few basis v.
        for vi in 0..w.min(3) {
            let v: Vec<Scalar> = (0..w)
                .map(|k| if k == vi { Scalar::one() } else { Scalar::zero() })
                .collect();
            let m = Matrix::from_fn(w, w, |r, c| {
                // omega(v, e_c) * v_r.
                let om = h.get(vi, c);
                &v[r] * om
            });
            if !m.is_zero() {
                out.push(m);
            }
        }
    } else {
        // Isotropic pairs u, v with <u,u> = <v,v> = <u,v> = 0 give
        // N(x) = <u,x> v - <v,x> u in so(W); build them from base pairs.
        // For the identity form use u = e_a + i e_b, v = e_c + i e_d.
        if w >= 4 {
            let combos = [(0usize, 1usize, 2usize, 3usize), (0, 2, 1, 3)];
            for (a, b, c, d) in combos {
                let mk = |p: usize, q: usize| -> Vec<Scalar> {
                    (0..w)
                        .map(|k| {
                            if k == p {
                                Scalar::one()
                            } else if k == q {
                                Scalar::i()
                            } else {
                                Scalar::zero()
                            }
                        })
                        .collect()
                };
                let u = mk(a, b);
                let v = mk(c, d);
                let pair = |x: &[Scalar], y: &[Scalar]| {
                    let mut acc = Scalar::zero();
                    for r in 0..w {
                        for cc in 0..w {
                            acc += &(&(&x[r] * &y[cc]) * h.get(r, cc));
                        }
                    }
                    acc
                };
                if !pair(&u, &u).is_zero() || !pair(&v, &v).is_zero() || !pair(&u, &v).is_zero() {
                    continue;
                }
                let m = Matrix::from_fn(w, w, |r, c| {
                    let ec: Vec<Scalar> = (0..w)
                        .map(|k| if k == c { Scalar::one() } else { Scalar::zero() })
                        .collect();
                    &(&pair(&u, &ec) * &v[r]) - &(&pair(&v, &ec) * &u[r])
                });
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        // so(2, C) has no nonzero nilpotents; nothing to add for w < 4.
    }
    out
}

/// Lift block-diagonal W-endomorphisms (one per block) to Sigma.
fn lift_w_endo(blocks: &[SpinBlock], per_block: &[Matrix]) -> Matrix {
    let dim: usize = blocks.iter().map(|b| b.s_dim * b.w_dim).sum();
    let mut out = Matrix::zero(dim, dim);
    let mut off = 0;
    for (b, m) in blocks.iter().zip(per_block) {
        for s in 0..b.s_dim {
            for wr in 0..b.w_dim {
                for wc in 0..b.w_dim {
                    out.set(
                        off + s * b.w_dim + wr,
                        off + s * b.w_dim + wc,
                        m.get(wr, wc).clone(),
                    );
                }
            }
        }
        off += b.s_dim * b.w_dim;
    }
    out
}

/// exp of a nilpotent matrix as a finite sum.
pub fn exp_nilpotent(m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut out = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    let mut inv_fact = Scalar::one();
    for k in 1..=n {
        power = &power * m;
        if power.is_zero() {
            return out;
        }
        assert!(k < n, "generator is not nilpotent");
        inv_fact = &inv_fact * &Scalar::ratio(1, k as i64);
        out = &out + &power.scale(&inv_fact);
    }
    out
}

fn top_algebra(n: usize, mult: Multiplicity, r_name: &str) -> SusyAlgebra {
    let model = build_gamma_model(n, &mult).expect("top model dimensions are valid");
    let gamma = model.gamma_pairing();
    let label = label_from_blocks(n, &model.blocks);
    // W-side move generators from the block forms.
    let mut w_moves = Vec::new();
    match &mult.pairing {
        WPairing::Diagonal { hp, hm } => {
            let nil_p = w_form_nilpotents(hp);
            let nil_m = w_form_nilpotents(hm);
            for np in &nil_p {
                let per: Vec<Matrix> = model
                    .blocks
                    .iter()
                    .enumerate()
                    .map(|(k, b)| {
                        if k == 0 {
                            exp_nilpotent(np)
                        } else {
                            Matrix::identity(b.w_dim)
                        }
                    })
                    .collect();
                w_moves.push(lift_w_endo(&model.blocks, &per));
            }
            if model.blocks.len() > 1 {
                for nm in &nil_m {
                    let per: Vec<Matrix> = model
                        .blocks
                        .iter()
                        .enumerate()
                        .map(|(k, b)| {
                            if k == 1 {
                                exp_nilpotent(nm)
                            } else {
                                Matrix::identity(b.w_dim)
                            }
                        })
                        .collect();
                    w_moves.push(lift_w_endo(&model.blocks, &per));
                }
            }
        }
        WPairing::Cross { hx } => {
            // GL(W) acts by g on W+ and (g^-1)^T (through hx) on W-.
            let w = hx.rows();
            if w >= 1 {
                // Exact diagonal scaling by 2 on the first coordinate.
                let mut g = Matrix::identity(w);
                g.set(0, 0, Scalar::from_int(2));
                let mut ginv_t = Matrix::identity(w);
                ginv_t.set(0, 0, Scalar::ratio(1, 2));
                w_moves.push(lift_w_endo(&model.blocks, &[g, ginv_t]));
            }
            if w >= 2 {
                // Unipotent shear.
                let mut g = Matrix::identity(w);
                g.set(0, 1, Scalar::one());
                let mut ginv_t = Matrix::identity(w);
                ginv_t.set(1, 0, Scalar::from_int(-1));
                w_moves.push(lift_w_endo(&model.blocks, &[g, ginv_t]));
            }
        }
    }
    SusyAlgebra {
        n,
        label,
        model,
        gamma,
        r_name: r_name.to_string(),
        perp_rho: Vec::new(),
        w_moves,
    }
}

/// Names follow the R-symmetry groups of each family after reduction.
fn r_name_for(n: usize, label: SusyLabel) -> &'static str {
    match (n, label) {
        (10, SusyLabel::Chiral(1, 0)) => "trivial",
        (9, SusyLabel::N(1)) => "trivial",
        (8, SusyLabel::N(1)) => "Spin(2,C)",
        (7, SusyLabel::N(1)) => "Spin(3,C)",
        (6, SusyLabel::Chiral(1, 1)) => "Spin(4,C)",
        (6, SusyLabel::Chiral(1, 0)) => "SL(2,C)",
        (5, SusyLabel::N(2)) => "Spin(5,C)",
        (5, SusyLabel::N(1)) => "SL(2,C) x Spin(1)",
        (4, SusyLabel::N(4)) => "Spin(6,C) = SL(4,C)",
        (4, SusyLabel::N(2)) => "SL(2,C) x GL(1,C)",
        (4, SusyLabel::N(1)) => "GL(1,C)",
        (3, SusyLabel::N(8)) => "Spin(7,C)",
        (3, SusyLabel::N(4)) => "Spin(4,C)",
        (3, SusyLabel::N(2)) => "C^x",
        (3, SusyLabel::N(1)) => "trivial",
        (2, SusyLabel::Chiral(8, 8)) => "Spin(8,C)",
        (2, SusyLabel::Chiral(4, 4)) => "SU(2) x Spin(4,C)",
        (2, SusyLabel::Chiral(2, 2)) => "Z/2 x (Spin(2,C) x Spin(2,C))",
        (2, SusyLabel::Chiral(1, 1)) => "Z/2",
        (2, SusyLabel::Chiral(_, 0)) => "SO(N+,C)",
        _ => "R-symmetry",
    }
}

// ---------------------------------------------------------------------------
// Reduction steps.
// ---------------------------------------------------------------------------

/// One reduction step: the lower algebra plus the coordinate re-indexing
/// Sigma_upper -> Sigma_lower (a permutation matrix).
pub fn reduce_step(upper: &SusyAlgebra) -> Result<(SusyAlgebra, Matrix), SusyError> {
    let n = upper.n;
    if n <= 2 {
        return Err(SusyError::Unsupported("cannot reduce below dimension 2".into()));
    }
    let model = &upper.model;
    let dim = model.dim_sigma;
    let (perm_sigma, perm_sigma_star, blocks) = if n % 2 == 1 {
        // Odd -> even: re-block the single S (x) W by chirality.
        let k = n / 2;
        let b = &model.blocks[0];
        assert_eq!(b.chirality, 0);
        let (plus_idx, minus_idx) = chirality_indices(k);
        let w = b.w_dim;
        let mut order: Vec<usize> = Vec::with_capacity(dim);
        for &s in &plus_idx {
            for wi in 0..w {
                order.push(s * w + wi);
            }
        }
        for &s in &minus_idx {
            for wi in 0..w {
                order.push(s * w + wi);
            }
        }
        let perm = permutation_matrix(&order, dim);
        let blocks = vec![
            SpinBlock {
                chirality: 1,
                s_dim: plus_idx.len(),
                w_dim: w,
                s_indices: plus_idx,
            },
            SpinBlock {
                chirality: -1,
                s_dim: minus_idx.len(),
                w_dim: w,
                s_indices: minus_idx,
            },
        ];
        // Sigma* re-blocks to [S- (x) W, S+ (x) W] (rho flips chirality).
        let b = &model.blocks[0];
        let (plus_idx, minus_idx) = chirality_indices(k);
        let mut order_star: Vec<usize> = Vec::with_capacity(dim);
        for &s in &minus_idx {
            for wi in 0..b.w_dim {
                order_star.push(s * b.w_dim + wi);
            }
        }
        for &s in &plus_idx {
            for wi in 0..b.w_dim {
                order_star.push(s * b.w_dim + wi);
            }
        }
        (perm, permutation_matrix(&order_star, dim), blocks)
    } else {
        // Even -> odd: merge the two chirality blocks onto the half-size
        // Dirac space by dropping the last tensor slot.
        let k = n / 2;
        let half = 1 << (k - 1);
        let b0 = &model.blocks[0];
        let b1 = &model.blocks[1];
        let (wp, wm) = (b0.w_dim, b1.w_dim);
        let wtot = wp + wm;
        // Upper coordinate -> lower coordinate (s, w-slot).
        // drop_slot: Dirac index idx -> idx >> 1 keeps the FIRST k-1 slots
        // only if the last slot is the least significant bit. Our Kronecker
        // convention makes slot 1 most significant, so the last slot is the
        // least significant bit: lower index = idx >> 1.
        let mut order: Vec<usize> = vec![0; dim];
        let mut order_star: Vec<usize> = vec![0; dim];
        // Sigma layout upper: block0 (p over plus_idx, w+), block1 (m, w-).
        // Lower layout: (s in 0..half, w in 0..wtot) with w+ first.
        for (p, &idx) in b0.s_indices.iter().enumerate() {
            let s = idx >> 1;
            for wi in 0..wp {
                order[s * wtot + wi] = p * wp + wi;
            }
        }
        let off1 = b0.s_dim * wp;
        for (m, &idx) in b1.s_indices.iter().enumerate() {
            let s = idx >> 1;
            for wi in 0..wm {
                order[s * wtot + wp + wi] = off1 + m * wm + wi;
            }
        }
        // Sigma* upper layout: block0 = S- (x) W+, block1 = S+ (x) W-.
        for (m, &idx) in b1.s_indices.iter().enumerate() {
            let s = idx >> 1;
            for wi in 0..wp {
                order_star[s * wtot + wi] = m * wp + wi;
            }
        }
        let off1s = b1.s_dim * wp;
        for (p, &idx) in b0.s_indices.iter().enumerate() {
            let s = idx >> 1;
            for wi in 0..wm {
                order_star[s * wtot + wp + wi] = off1s + p * wm + wi;
            }
        }
        let perm = permutation_from_map(&order, dim);
        let perm_star = permutation_from_map(&order_star, dim);
        let blocks = vec![SpinBlock {
            chirality: 0,
            s_dim: half,
            w_dim: wtot,
            s_indices: (0..half).collect(),
        }];
        (perm, perm_star, blocks)
    };

    // Transport all structure tables.
    let lower_n = n - 1;
    let inv_sigma = perm_sigma.transpose();
    let inv_star = perm_sigma_star.transpose();
    let rho_plus: Vec<Matrix> = (0..lower_n)
        .map(|i| &(&perm_sigma_star * &model.rho_plus[i]) * &inv_sigma)
        .collect();
    let rho_minus: Vec<Matrix> = (0..lower_n)
        .map(|i| &(&perm_sigma * &model.rho_minus[i]) * &inv_star)
        .collect();
    let pair = &(&perm_sigma * &model.pair) * &inv_star;
    let mut perp_rho: Vec<(Matrix, Matrix)> = upper
        .perp_rho
        .iter()
        .map(|(a, b)| {
            (
                &(&perm_sigma_star * a) * &inv_sigma,
                &(&perm_sigma * b) * &inv_star,
            )
        })
        .collect();
    perp_rho.push((
        &(&perm_sigma_star * &model.rho_plus[lower_n]) * &inv_sigma,
        &(&perm_sigma * &model.rho_minus[lower_n]) * &inv_star,
    ));
    let w_moves: Vec<Matrix> = upper
        .w_moves
        .iter()
        .map(|g| &(&perm_sigma * g) * &inv_sigma)
        .collect();

    let lower_model = CliffordModel {
        n: lower_n,
        kind: model.kind.clone(),
        metric: Matrix::identity(lower_n),
        dim_sigma: dim,
        dim_sigma_star: dim,
        rho_plus,
        rho_minus,
        pair,
        blocks,
        algebra: None,
    };
    let gamma = lower_model.gamma_pairing();
    let label = label_from_blocks(lower_n, &lower_model.blocks);
    let lower = SusyAlgebra {
        n: lower_n,
        label,
        model: lower_model,
        gamma,
        r_name: r_name_for(lower_n, label).to_string(),
        perp_rho,
        w_moves,
    };
    Ok((lower, perm_sigma))
}

fn permutation_matrix(order: &[usize], dim: usize) -> Matrix {
    // Row r of the new basis is old index order[r]: P[new][old].
    let mut p = Matrix::zero(dim, dim);
    for (new, &old) in order.iter().enumerate() {
        p.set(new, old, Scalar::one());
    }
    p
}

fn permutation_from_map(order: &[usize], dim: usize) -> Matrix {
    // order[new] = old, same as permutation_matrix.
    permutation_matrix(order, dim)
}

// ---------------------------------------------------------------------------
// Chains and the public constructor.
// ---------------------------------------------------------------------------

/// The chain of algebras from a top model down to the requested dimension,
/// with the per-step coordinate maps.
pub struct ReductionChain {
    pub levels: Vec<SusyAlgebra>,
    /// steps[i]: Sigma of levels[i] -> Sigma of levels[i+1].
    pub steps: Vec<Matrix>,
}

impl ReductionChain {
    pub fn bottom(&self) -> &SusyAlgebra {
        self.levels.last().unwrap()
    }

    /// Map a supercharge at level `from` to level `to` (from <= to).
    pub fn push_down(&self, from: usize, to: usize, q: &Supercharge) -> Supercharge {
        let mut v = q.clone();
        for step in &self.steps[from..to] {
            v = step.mul_vec(&v);
        }
        v
    }
}

fn top_for(n: usize, label: SusyLabel) -> Result<(SusyAlgebra, usize), SusyError> {
    // Returns the top algebra and the number of reduction steps needed.
    let unsupported = || {
        SusyError::Unsupported(format!(
            "no supersymmetric Yang-Mills data for dimension {n} with N = {label}"
        ))
    };
    let top16 = || {
        top_algebra(
            10,
            Multiplicity {
                wplus_dim: 1,
                wminus_dim: 0,
                pairing: WPairing::Diagonal {
                    hp: symmetric_form(1),
                    hm: Matrix::zero(0, 0),
                },
            },
            r_name_for(10, SusyLabel::Chiral(1, 0)),
        )
    };
    let top8 = || {
        top_algebra(
            6,
            Multiplicity {
                wplus_dim: 2,
                wminus_dim: 0,
                pairing: WPairing::Diagonal {
                    hp: symplectic_form(2),
                    hm: Matrix::zero(0, 0),
                },
            },
            r_name_for(6, SusyLabel::Chiral(1, 0)),
        )
    };
    let top4 = || {
        top_algebra(
            4,
            Multiplicity {
                wplus_dim: 1,
                wminus_dim: 1,
                pairing: WPairing::Cross {
                    hx: symmetric_form(1),
                },
            },
            r_name_for(4, SusyLabel::N(1)),
        )
    };
    let top2 = || {
        top_algebra(
            3,
            Multiplicity::odd(symmetric_form(1)),
            r_name_for(3, SusyLabel::N(1)),
        )
    };
    match (n, label) {
        // 16 supercharges.
        (10, SusyLabel::Chiral(1, 0)) => Ok((top16(), 0)),
        (9, SusyLabel::N(1)) => Ok((top16(), 1)),
        (8, SusyLabel::N(1)) => Ok((top16(), 2)),
        (7, SusyLabel::N(1)) => Ok((top16(), 3)),
        (6, SusyLabel::Chiral(1, 1)) => Ok((top16(), 4)),
        (5, SusyLabel::N(2)) => Ok((top16(), 5)),
        (4, SusyLabel::N(4)) => Ok((top16(), 6)),
        (3, SusyLabel::N(8)) => Ok((top16(), 7)),
        (2, SusyLabel::Chiral(8, 8)) => Ok((top16(), 8)),
        // 8 supercharges.
        (6, SusyLabel::Chiral(1, 0)) => Ok((top8(), 0)),
        (5, SusyLabel::N(1)) => Ok((top8(), 1)),
        (4, SusyLabel::N(2)) => Ok((top8(), 2)),
        (3, SusyLabel::N(4)) => Ok((top8(), 3)),
        (2, SusyLabel::Chiral(4, 4)) => Ok((top8(), 4)),
        // 4 supercharges.
        (4, SusyLabel::N(1)) => Ok((top4(), 0)),
        (3, SusyLabel::N(2)) => Ok((top4(), 1)),
        (2, SusyLabel::Chiral(2, 2)) => Ok((top4(), 2)),
        // 2 supercharges.
        (3, SusyLabel::N(1)) => Ok((top2(), 0)),
        (2, SusyLabel::Chiral(1, 1)) => Ok((top2(), 1)),
        // 2d chiral family.
        (2, SusyLabel::Chiral(p, 0)) if (1..=8).contains(&p) => {
            let alg = top_algebra(
                2,
                Multiplicity {
                    wplus_dim: p,
                    wminus_dim: 0,
                    pairing: WPairing::Diagonal {
                        hp: symmetric_form(p),
                        hm: Matrix::zero(0, 0),
                    },
                },
                r_name_for(2, SusyLabel::Chiral(p, 0)),
            );
            Ok((alg, 0))
        }
        _ => Err(unsupported()),
    }
}

/// Build the reduction chain from the appropriate top model down to (n, label).
pub fn reduction_chain(n: usize, label: SusyLabel) -> Result<ReductionChain, SusyError> {
    let (top, steps) = top_for(n, label)?;
    let mut levels = vec![top];
    let mut maps = Vec::new();
    for _ in 0..steps {
        let (lower, step) = reduce_step(levels.last().unwrap())?;
        levels.push(lower);
        maps.push(step);
    }
    let bottom = levels.last().unwrap();
    assert_eq!(bottom.n, n);
    assert_eq!(bottom.label, label, "label mismatch after reduction");
    Ok(ReductionChain { levels, steps: maps })
}

/// The supported supertranslation algebra for dimension n with the given
/// amount of supersymmetry.
pub fn make_susy(n: usize, label: SusyLabel) -> Result<SusyAlgebra, SusyError> {
    Ok(reduction_chain(n, label)?.levels.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rand_q(alg: &SusyAlgebra, rng: &mut impl Rng) -> Supercharge {
        (0..alg.dim_sigma())
            .map(|_| Scalar::complex(rng.gen_range(-3..4), rng.gen_range(-3..4), 1))
            .collect()
    }

    #[test]
    fn all_supported_algebras_build() {
        let cases: Vec<(usize, SusyLabel)> = vec![
            (10, SusyLabel::Chiral(1, 0)),
            (9, SusyLabel::N(1)),
            (8, SusyLabel::N(1)),
            (7, SusyLabel::N(1)),
            (6, SusyLabel::Chiral(1, 1)),
            (6, SusyLabel::Chiral(1, 0)),
            (5, SusyLabel::N(2)),
            (5, SusyLabel::N(1)),
            (4, SusyLabel::N(4)),
            (4, SusyLabel::N(2)),
            (4, SusyLabel::N(1)),
            (3, SusyLabel::N(8)),
            (3, SusyLabel::N(4)),
            (3, SusyLabel::N(2)),
            (3, SusyLabel::N(1)),
            (2, SusyLabel::Chiral(8, 8)),
            (2, SusyLabel::Chiral(4, 4)),
            (2, SusyLabel::Chiral(2, 2)),
            (2, SusyLabel::Chiral(1, 1)),
            (2, SusyLabel::Chiral(2, 0)),
            (2, SusyLabel::Chiral(8, 0)),
        ];
        for (n, label) in cases {
            let alg = make_susy(n, label).unwrap_or_else(|e| panic!("({n},{label}): {e}"));
            assert_eq!(alg.n, n);
            // Expected dimensions of Sigma.
            let dim = alg.dim_sigma();
            let expected = match label {
                SusyLabel::N(nn) => {
                    let spin = 1 << (n / 2);
                    match n % 8 {
                        1 | 3 => spin * nn,
                        5 | 7 => spin * 2 * nn,
                        0 | 4 => spin * nn, // S+ (x) W + S- (x) W*: (spin/2)*N*2
                        _ => unreachable!(),
                    }
                }
                SusyLabel::Chiral(p, m) => {
                    let half = 1 << (n / 2 - 1);
                    match n % 8 {
                        2 => half * (p + m),
                        6 => half * 2 * (p + m),
                        _ => unreachable!(),
                    }
                }
            };
            assert_eq!(dim, expected, "Sigma dimension for ({n},{label})");
        }
    }

    #[test]
    fn reduced_gamma_is_projection() {
        // Reducing twice from the top: the lower Gamma of pushed-down
        // supercharges equals the first n coordinates of the upper Gamma.
        let chain = reduction_chain(8, SusyLabel::N(1)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let top = &chain.levels[0];
        for _ in 0..10 {
            let q1 = rand_q(top, &mut rng);
            let q2 = rand_q(top, &mut rng);
            let g_top = top.bracket(&q1, &q2);
            for (level, alg) in chain.levels.iter().enumerate().skip(1) {
                let p1 = chain.push_down(0, level, &q1);
                let p2 = chain.push_down(0, level, &q2);
                let g = alg.bracket(&p1, &p2);
                assert_eq!(&g_top[..alg.n], &g[..], "projection failed at level {level}");
            }
        }
    }

    #[test]
    fn square_zero_preserved_under_reduction() {
        let chain = reduction_chain(4, SusyLabel::N(4)).unwrap();
        // A pure spinor in 10d stays square-zero all the way down.
        let top = &chain.levels[0];
        let q = crate::reps::pure_spinor_top(top);
        assert!(top.is_square_zero(&q).0);
        for level in 1..chain.levels.len() {
            let ql = chain.push_down(0, level, &q);
            assert!(chain.levels[level].is_square_zero(&ql).0);
        }
    }

    #[test]
    fn bracket_symmetry_and_zero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        for (n, label) in [(10, SusyLabel::Chiral(1, 0)), (6, SusyLabel::Chiral(1, 1)), (3, SusyLabel::N(4))] {
            let alg = make_susy(n, label).unwrap();
            let zero = vec![Scalar::zero(); alg.dim_sigma()];
            for _ in 0..5 {
                let q1 = rand_q(&alg, &mut rng);
                let q2 = rand_q(&alg, &mut rng);
                assert_eq!(alg.bracket(&q1, &q2), alg.bracket(&q2, &q1));
                assert!(alg.bracket(&q1, &zero).iter().all(|c| c.is_zero()));
            }
        }
    }

    #[test]
    fn no_square_zero_in_3d_n1_and_2d_n11() {
        let alg = make_susy(3, SusyLabel::N(1)).unwrap();
        let desc = alg.square_zero_variety(&alg.full_ansatz()).unwrap();
        assert_eq!(desc, VarietyDescription::OnlyZero);

        let alg = make_susy(2, SusyLabel::Chiral(1, 1)).unwrap();
        let desc = alg.square_zero_variety(&alg.full_ansatz()).unwrap();
        assert_eq!(desc, VarietyDescription::OnlyZero);
    }

    #[test]
    fn w_moves_preserve_gamma() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for (n, label) in [
            (10, SusyLabel::Chiral(1, 0)),
            (6, SusyLabel::Chiral(1, 0)),
            (4, SusyLabel::N(1)),
            (2, SusyLabel::Chiral(4, 0)),
            (3, SusyLabel::N(8)),
        ] {
            let alg = make_susy(n, label).unwrap();
            for g in &alg.w_moves {
                for _ in 0..4 {
                    let q1 = rand_q(&alg, &mut rng);
                    let q2 = rand_q(&alg, &mut rng);
                    let lhs = alg.bracket(&g.mul_vec(&q1), &g.mul_vec(&q2));
                    let rhs = alg.bracket(&q1, &q2);
                    assert_eq!(lhs, rhs, "w-move breaks Gamma for ({n},{label})");
                }
            }
        }
    }
}
