//! Super Yang-Mills theories as jet densities: the BV action, the linear and
//! quadratic supersymmetry functionals with symbolic supercharge
//! coordinates, the translation Hamiltonian, and the component equations of
//! the classical master equation, all verified exactly modulo total
//! derivatives.

use crate::jet::{bv_bracket, is_total_derivative, JetPoly, JetRing};
use crate::BvError;
use twistkit_exact::{Matrix, Scalar};
use twistkit_susy::clifford::{
    build_gamma_model, symmetric_form, CliffordModel, GammaPairing, Multiplicity, WPairing,
};

/// Concrete Lie algebra with an invariant pairing.
#[derive(Clone)]
pub struct LieData {
    pub name: String,
    pub dim: usize,
    /// f[a][b] = coefficient vector of [e_a, e_b].
    pub f: Vec<Vec<Vec<Scalar>>>,
    pub kappa: Matrix,
}

pub fn lie_abelian() -> LieData {
    LieData {
        name: "abelian".into(),
        dim: 1,
        f: vec![vec![vec![Scalar::zero()]]],
        kappa: Matrix::identity(1),
    }
}

pub fn lie_sl2() -> LieData {
    // Basis (e, h, f); trace form of the fundamental representation.
    let dim = 3;
    let mut f = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
    let mut set = |a: usize, b: usize, c: usize, v: i64| {
        f[a][b][c] = Scalar::from_int(v);
        f[b][a][c] = Scalar::from_int(-v);
    };
    set(1, 0, 0, 2); // [h, e] = 2e
    set(1, 2, 2, -2); // [h, f] = -2f
    set(0, 2, 1, 1); // [e, f] = h
    let mut kappa = Matrix::zero(3, 3);
    kappa.set(0, 2, Scalar::one());
    kappa.set(2, 0, Scalar::one());
    kappa.set(1, 1, Scalar::from_int(2));
    LieData {
        name: "sl2".into(),
        dim,
        f,
        kappa,
    }
}

impl LieData {
    pub fn parse(s: &str) -> Result<LieData, BvError> {
        match s {
            "abelian" => Ok(lie_abelian()),
            "sl2" => Ok(lie_sl2()),
            _ => Err(BvError::Unsupported(format!("unknown Lie algebra {s:?}"))),
        }
    }
}

/// Matter content: a g-representation P with an invariant symmetric form and
/// (where the composition algebra is two-dimensional) the +-i eigenspace
/// split P = R + R*.
#[derive(Clone)]
pub struct MatterData {
    pub name: String,
    pub dim: usize,
    /// act[a]: matrix of the action of e_a on P.
    pub act: Vec<Matrix>,
    pub form: Matrix,
    /// Indices of the R-part (x = +i); empty when A = C.
    pub r_part: Vec<usize>,
}

/// Adjoint matter: P = g with the invariant pairing (trivial for abelian g).
pub fn matter_adjoint(lie: &LieData) -> MatterData {
    let dim = lie.dim;
    let act: Vec<Matrix> = (0..dim)
        .map(|a| Matrix::from_fn(dim, dim, |r, c| lie.f[a][c][r].clone()))
        .collect();
    MatterData {
        name: "adjoint".into(),
        dim,
        act,
        form: lie.kappa.clone(),
        r_part: Vec::new(),
    }
}

/// Chiral matter P = R + R* for the defining representation (sl2) or a
/// charge-one line (abelian).
pub fn matter_fundamental_pair(lie: &LieData) -> MatterData {
    let (rdim, rep): (usize, Vec<Matrix>) = if lie.name == "sl2" {
        let e = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let h = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let f = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        (2, vec![e, h, f])
    } else {
        (1, vec![Matrix::from_i64(&[&[1]])])
    };
    let dim = 2 * rdim;
    let act: Vec<Matrix> = rep
        .iter()
        .map(|m| {
            Matrix::from_fn(dim, dim, |r, c| {
                if r < rdim && c < rdim {
                    m.get(r, c).clone()
                } else if r >= rdim && c >= rdim {
                    -m.get(c - rdim, r - rdim)
                } else {
                    Scalar::zero()
                }
            })
        })
        .collect();
    let mut form = Matrix::zero(dim, dim);
    for k in 0..rdim {
        form.set(k, rdim + k, Scalar::one());
        form.set(rdim + k, k, Scalar::one());
    }
    MatterData {
        name: "fundamental".into(),
        dim,
        act,
        form,
        r_part: (0..rdim).collect(),
    }
}

/// Which supersymmetric Yang-Mills theory to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymConfig {
    /// 3d N=1 (A = C): optional orthogonal matter.
    ThreeD,
    /// 4d N=1 (A = C[x]/(x^2+1)): optional chiral matter R + R*.
    FourD,
    /// 2d chiral (N+, 0) for N+ = 1 or 2: optional matter.
    TwoDChiral(usize),
}

impl SymConfig {
    pub fn dim(self) -> usize {
        match self {
            SymConfig::ThreeD => 3,
            SymConfig::FourD => 4,
            SymConfig::TwoDChiral(_) => 2,
        }
    }
}

/// Slot filter for the A-valued matter contractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotFilter {
    All,
    Matched,
    Anti,
}

impl SlotFilter {
    fn keep(self, matched: bool) -> bool {
        match self {
            SlotFilter::All => true,
            SlotFilter::Matched => matched,
            SlotFilter::Anti => !matched,
        }
    }
}

/// Contraction-structure knobs for the matter terms (fixed constants in
/// production; exposed for the convention calibration harness).
#[derive(Debug, Clone, Copy)]
pub struct MatterTuning {
    pub f_lpp: SlotFilter,
    pub f_qpsi: SlotFilter,
    pub f_rdphi: SlotFilter,
}

impl Default for MatterTuning {
    fn default() -> Self {
        MatterTuning {
            f_lpp: SlotFilter::Matched,
            f_qpsi: SlotFilter::Matched,
            f_rdphi: SlotFilter::All,
        }
    }
}

/// The assembled theory: field handles, spinor tables, and the fixed
/// functionals of the supersymmetry action.
pub struct SymTheory {
    pub ring: JetRing,
    pub n: usize,
    pub config: SymConfig,
    pub lie: LieData,
    pub matter: Option<MatterData>,
    pub model: CliffordModel,
    pub gamma: GammaPairing,
    // Component ids.
    pub a: Vec<Vec<u32>>,
    pub a_star: Vec<Vec<u32>>,
    pub lam: Vec<Vec<u32>>,
    pub lam_star: Vec<Vec<u32>>,
    pub c: Vec<u32>,
    pub c_star: Vec<u32>,
    /// Matter components; empty without matter.
    pub phi: Vec<u32>,
    pub phi_star: Vec<u32>,
    /// psi over allowed (Sigma*-index, P-index) slots.
    pub psi_slots: Vec<(usize, usize)>,
    pub psi: Vec<u32>,
    /// Dual coordinates, one per psi slot.
    pub psi_star: Vec<u32>,
    /// Allowed (Sigma-index, P-index) slots of the natural psi* tensor.
    pub psi_nat_slots: Vec<(usize, usize)>,
    /// Inverse of the restricted pairing matrix: natural components from
    /// dual coordinates.
    psi_nat_from_dual: Matrix,
    /// Supercharge parameter symbols: q[set][alpha].
    pub q: Vec<Vec<u32>>,
    pub tuning: MatterTuning,
    inv_pair: Matrix,
    inv_kappa: Matrix,
}

fn var(ring: &mut JetRing, comp: u32) -> JetPoly {
    JetPoly::variable(ring.base_var(comp))
}

fn dvar(ring: &mut JetRing, comp: u32, dir: usize) -> JetPoly {
    let mut index = vec![0u8; ring.n];
    index[dir] = 1;
    JetPoly::variable(ring.var(comp, &index).expect("order one"))
}

/// Whether the matter slot (spinor block chirality, P index) is allowed by
/// the two-dimensional composition algebra structure. For sigma_star: the x
/// operator acts as +i on the block paired with R.
fn slot_allowed(r_part: &[usize], plus_block: bool, p: usize) -> bool {
    if r_part.is_empty() {
        return true;
    }
    let in_r = r_part.contains(&p);
    // Sigma*-block0 carries x = +i and tensors with R; block1 with R*.
    plus_block == in_r
}

impl SymTheory {
    /// Assemble the field content and structure tables for a configuration.
    pub fn new(
        config: SymConfig,
        lie: LieData,
        matter: Option<MatterData>,
        q_sets: usize,
    ) -> Result<SymTheory, BvError> {
        let n = config.dim();
        let model = match config {
            SymConfig::ThreeD => build_gamma_model(3, &Multiplicity::odd(symmetric_form(1))),
            SymConfig::FourD => build_gamma_model(
                4,
                &Multiplicity {
                    wplus_dim: 1,
                    wminus_dim: 1,
                    pairing: WPairing::Cross {
                        hx: symmetric_form(1),
                    },
                },
            ),
            SymConfig::TwoDChiral(np) => build_gamma_model(
                2,
                &Multiplicity {
                    wplus_dim: np,
                    wminus_dim: 0,
                    pairing: WPairing::Diagonal {
                        hp: symmetric_form(np),
                        hm: Matrix::zero(0, 0),
                    },
                },
            ),
        }
        .map_err(|e| BvError::Unsupported(e.to_string()))?;
        let gamma = model.gamma_pairing();
        if let (Some(m), SymConfig::TwoDChiral(np)) = (&matter, config) {
            if np > 2 {
                return Err(BvError::Unsupported(
                    "2d matter is supported for N+ <= 2".into(),
                ));
            }
            let _ = m;
        }
        let mut ring = JetRing::new(n, 6);
        let g = lie.dim;
        let ds = model.dim_sigma;
        let mut a = vec![vec![0u32; g]; n];
        let mut a_star = vec![vec![0u32; g]; n];
        for i in 0..n {
            for b in 0..g {
                let fld = ring.add_component(&format!("A{i}_{b}"), false, 0, false);
                let anti = ring.add_component(&format!("A{i}_{b}*"), true, 1, false);
                ring.set_partners(fld, anti);
                a[i][b] = fld;
                a_star[i][b] = anti;
            }
        }
        let mut lam = vec![vec![0u32; g]; ds];
        let mut lam_star = vec![vec![0u32; g]; ds];
        for alpha in 0..ds {
            for b in 0..g {
                let fld = ring.add_component(&format!("lam{alpha}_{b}"), true, 0, false);
                let anti = ring.add_component(&format!("lam{alpha}_{b}*"), false, 1, false);
                ring.set_partners(fld, anti);
                lam[alpha][b] = fld;
                lam_star[alpha][b] = anti;
            }
        }
        let mut c = vec![0u32; g];
        let mut c_star = vec![0u32; g];
        for b in 0..g {
            let fld = ring.add_component(&format!("c_{b}"), true, -1, false);
            let anti = ring.add_component(&format!("c_{b}*"), false, 2, false);
            ring.set_partners(fld, anti);
            c[b] = fld;
            c_star[b] = anti;
        }
        let mut phi = Vec::new();
        let mut phi_star = Vec::new();
        let mut psi_slots = Vec::new();
        let mut psi = Vec::new();
        let mut psi_star = Vec::new();
        let mut psi_nat_slots = Vec::new();
        let mut psi_nat_from_dual = Matrix::zero(0, 0);
        if let Some(m) = &matter {
            for p in 0..m.dim {
                let fld = ring.add_component(&format!("phi_{p}"), false, 0, false);
                let anti = ring.add_component(&format!("phi_{p}*"), true, 1, false);
                ring.set_partners(fld, anti);
                phi.push(fld);
                phi_star.push(anti);
            }
            // Sigma* slots of psi: block0 carries the positive x-eigenvalue.
            for beta in 0..model.dim_sigma_star {
                let plus_block = star_block_is_plus(&model, beta);
                for p in 0..m.dim {
                    if !slot_allowed(&m.r_part, plus_block, p) {
                        continue;
                    }
                    let fld = ring.add_component(&format!("psi{beta}_{p}"), true, 0, false);
                    let anti = ring.add_component(&format!("psi{beta}_{p}*"), false, 1, false);
                    ring.set_partners(fld, anti);
                    psi_slots.push((beta, p));
                    psi.push(fld);
                    psi_star.push(anti);
                }
            }
            // Natural psi* slots in Sigma (x) P.
            for alpha in 0..model.dim_sigma {
                let plus_block = sigma_block_is_plus(&model, alpha);
                for p in 0..m.dim {
                    if !slot_allowed(&m.r_part, plus_block, p) {
                        continue;
                    }
                    psi_nat_slots.push((alpha, p));
                }
            }
            assert_eq!(psi_slots.len(), psi_nat_slots.len());
            // Restricted pairing: dual_(beta q) = sum M[(beta q)][(alpha p)] nat^(alpha p)
            // with M = B (x) form on the allowed slots.
            let k = psi_slots.len();
            let restricted = Matrix::from_fn(k, k, |row, col| {
                let (beta, qq) = psi_slots[row];
                let (alpha, pp) = psi_nat_slots[col];
                model.pair.get(alpha, beta) * m.form.get(pp, qq)
            });
            psi_nat_from_dual = restricted
                .solve(&Matrix::identity(k))
                .expect("matter pairing nondegenerate on the allowed slots");
        }
        let mut q = Vec::new();
        for set in 0..q_sets {
            let mut row = Vec::new();
            for alpha in 0..ds {
                row.push(ring.add_component(&format!("Q{set}_{alpha}"), false, 0, true));
            }
            q.push(row);
        }
        let inv_pair = model
            .pair
            .solve(&Matrix::identity(model.dim_sigma))
            .expect("scalar pairing invertible");
        let inv_kappa = lie
            .kappa
            .solve(&Matrix::identity(g))
            .expect("Lie pairing invertible");
        Ok(SymTheory {
            ring,
            n,
            config,
            lie,
            matter,
            model,
            gamma,
            a,
            a_star,
            lam,
            lam_star,
            c,
            c_star,
            phi,
            phi_star,
            psi_slots,
            psi,
            psi_star,
            psi_nat_slots,
            psi_nat_from_dual,
            q,
            tuning: MatterTuning::default(),
            inv_pair,
            inv_kappa,
        })
    }

    // -- small accessors ---------------------------------------------------

    /// x-eigenvalue sign (+1 for +i) of a Sigma basis element, when the
    /// composition algebra is two-dimensional.
    fn x_sigma(&self, alpha: usize) -> i8 {
        if sigma_block_is_plus(&self.model, alpha) {
            1
        } else {
            -1
        }
    }

    /// x-eigenvalue sign of a P basis element; matters only when the R-part
    /// split is present.
    fn x_p(&self, p: usize) -> i8 {
        match &self.matter {
            Some(m) if !m.r_part.is_empty() => {
                if m.r_part.contains(&p) {
                    1
                } else {
                    -1
                }
            }
            _ => 0,
        }
    }

    /// Whether a Sigma (x) P slot survives the A-tensor projection.
    fn sigma_p_matched(&self, alpha: usize, p: usize) -> bool {
        let xp = self.x_p(p);
        xp == 0 || self.x_sigma(alpha) == xp
    }

    fn g(&self) -> usize {
        self.lie.dim
    }

    fn ds(&self) -> usize {
        self.model.dim_sigma
    }

    /// Field strength F_ij^a.
    fn field_strength(&mut self, i: usize, j: usize, aidx: usize) -> JetPoly {
        let mut out = dvar(&mut self.ring, self.a[j][aidx], i)
            .sub(&dvar(&mut self.ring, self.a[i][aidx], j));
        for b in 0..self.g() {
            for cc in 0..self.g() {
                let coef = self.lie.f[b][cc][aidx].clone();
                if coef.is_zero() {
                    continue;
                }
                let ab = var(&mut self.ring, self.a[i][b]);
                let ac = var(&mut self.ring, self.a[j][cc]);
                out.add_assign(&ab.mul(&ac, &self.ring).scale(&coef));
            }
        }
        out
    }

    /// Covariant derivative of the gaugino: (d_A lam)_i^{alpha a}.
    fn cov_lam(&mut self, i: usize, alpha: usize, aidx: usize) -> JetPoly {
        let mut out = dvar(&mut self.ring, self.lam[alpha][aidx], i);
        for b in 0..self.g() {
            for cc in 0..self.g() {
                let coef = self.lie.f[b][cc][aidx].clone();
                if coef.is_zero() {
                    continue;
                }
                let ab = var(&mut self.ring, self.a[i][b]);
                let lc = var(&mut self.ring, self.lam[alpha][cc]);
                out.add_assign(&ab.mul(&lc, &self.ring).scale(&coef));
            }
        }
        out
    }

    /// Covariant derivative of the ghost.
    fn cov_c(&mut self, i: usize, aidx: usize) -> JetPoly {
        let mut out = dvar(&mut self.ring, self.c[aidx], i);
        for b in 0..self.g() {
            for cc in 0..self.g() {
                let coef = self.lie.f[b][cc][aidx].clone();
                if coef.is_zero() {
                    continue;
                }
                let ab = var(&mut self.ring, self.a[i][b]);
                let cv = var(&mut self.ring, self.c[cc]);
                out.add_assign(&ab.mul(&cv, &self.ring).scale(&coef));
            }
        }
        out
    }

    /// Natural (upper-index) gaugino antifield components from the dual
    /// coordinates: lam*_nat^{beta b} = sum invB[beta][alpha] invK[b][a] lam*_{alpha a}.
    fn lam_star_nat(&mut self, beta: usize, bidx: usize) -> JetPoly {
        let mut out = JetPoly::zero();
        for alpha in 0..self.ds() {
            let ib = self.inv_pair.get(beta, alpha).clone();
            if ib.is_zero() {
                continue;
            }
            for aidx in 0..self.g() {
                let ik = self.inv_kappa.get(bidx, aidx).clone();
                if ik.is_zero() {
                    continue;
                }
                let v = var(&mut self.ring, self.lam_star[alpha][aidx]);
                out.add_assign(&v.scale(&(&ib * &ik)));
            }
        }
        out
    }

    /// Gamma(Q_x, Q_y) as a vector of parameter polynomials.
    pub fn gamma_qq(&mut self, x: usize, y: usize) -> Vec<JetPoly> {
        let ds = self.ds();
        (0..self.n)
            .map(|i| {
                let mut out = JetPoly::zero();
                for al in 0..ds {
                    for be in 0..ds {
                        let coef = self.gamma.gamma_plus[i].get(al, be).clone();
                        if coef.is_zero() {
                            continue;
                        }
                        let qa = var(&mut self.ring, self.q[x][al]);
                        let qb = var(&mut self.ring, self.q[y][be]);
                        out.add_assign(&qa.mul(&qb, &self.ring).scale(&coef));
                    }
                }
                out
            })
            .collect()
    }

    // -- the functionals ---------------------------------------------------

    /// The full BV action S (gauge plus matter).
    pub fn action(&mut self) -> JetPoly {
        let mut s = self.action_gauge();
        if self.matter.is_some() {
            s.add_assign(&self.action_matter());
        }
        s
    }

    fn action_gauge(&mut self) -> JetPoly {
        let (n, g, ds) = (self.n, self.g(), self.ds());
        let mut s = JetPoly::zero();
        // -1/4 (F, F).
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for aidx in 0..g {
                    for bidx in 0..g {
                        let k = self.lie.kappa.get(aidx, bidx).clone();
                        if k.is_zero() {
                            continue;
                        }
                        let fa = self.field_strength(i, j, aidx);
                        let fb = self.field_strength(i, j, bidx);
                        s.add_assign(
                            &fa.mul(&fb, &self.ring)
                                .scale(&(&k * &Scalar::ratio(-1, 4))),
                        );
                    }
                }
            }
        }
        // 1/2 (lam, Dslash_A lam).
        for alpha in 0..ds {
            for beta in 0..ds {
                let b = self.model.pair.get(alpha, beta).clone();
                if b.is_zero() {
                    continue;
                }
                for aidx in 0..g {
                    for bidx in 0..g {
                        let k = self.lie.kappa.get(aidx, bidx).clone();
                        if k.is_zero() {
                            continue;
                        }
                        for i in 0..n {
                            for gam in 0..ds {
                                let r = self.model.rho_plus[i].get(beta, gam).clone();
                                if r.is_zero() {
                                    continue;
                                }
                                let la = var(&mut self.ring, self.lam[alpha][aidx]);
                                let dl = self.cov_lam(i, gam, bidx);
                                let coef = &(&b * &k) * &(&r * &Scalar::ratio(1, 2));
                                s.add_assign(&la.mul(&dl, &self.ring).scale(&coef));
                            }
                        }
                    }
                }
            }
        }
        // (d_A c, A*).
        for i in 0..n {
            for aidx in 0..g {
                let dc = self.cov_c(i, aidx);
                let astar = var(&mut self.ring, self.a_star[i][aidx]);
                s.add_assign(&dc.mul(&astar, &self.ring));
            }
        }
        // ([c, lam], lam*).
        for alpha in 0..ds {
            for aidx in 0..g {
                let mut bracket = JetPoly::zero();
                for b in 0..g {
                    for cc in 0..g {
                        let coef = self.lie.f[b][cc][aidx].clone();
                        if coef.is_zero() {
                            continue;
                        }
                        let cv = var(&mut self.ring, self.c[b]);
                        let lv = var(&mut self.ring, self.lam[alpha][cc]);
                        bracket.add_assign(&cv.mul(&lv, &self.ring).scale(&coef));
                    }
                }
                let ls = var(&mut self.ring, self.lam_star[alpha][aidx]);
                s.add_assign(&bracket.mul(&ls, &self.ring).neg());
            }
        }
        // 1/2 ([c, c], c*).
        for aidx in 0..g {
            let mut bracket = JetPoly::zero();
            for b in 0..g {
                for cc in 0..g {
                    let coef = self.lie.f[b][cc][aidx].clone();
                    if coef.is_zero() {
                        continue;
                    }
                    let c1 = var(&mut self.ring, self.c[b]);
                    let c2 = var(&mut self.ring, self.c[cc]);
                    bracket.add_assign(&c1.mul(&c2, &self.ring).scale(&coef));
                }
            }
            let cs = var(&mut self.ring, self.c_star[aidx]);
            s.add_assign(&bracket.mul(&cs, &self.ring).scale(&Scalar::ratio(-1, 2)));
        }
        s
    }

    /// Covariant derivative of the scalar: (d_A phi)_i^p.
    fn cov_phi(&mut self, i: usize, p: usize) -> JetPoly {
        let m = self.matter.clone().expect("matter content");
        let mut out = dvar(&mut self.ring, self.phi[p], i);
        for aidx in 0..self.g() {
            for qq in 0..m.dim {
                let coef = m.act[aidx].get(p, qq).clone();
                if coef.is_zero() {
                    continue;
                }
                let av = var(&mut self.ring, self.a[i][aidx]);
                let pv = var(&mut self.ring, self.phi[qq]);
                out.add_assign(&av.mul(&pv, &self.ring).scale(&coef));
            }
        }
        out
    }

    fn psi_poly(&mut self, beta: usize, p: usize) -> JetPoly {
        match self.psi_slots.iter().position(|&(b, q)| (b, q) == (beta, p)) {
            Some(k) => var(&mut self.ring, self.psi[k]),
            None => JetPoly::zero(),
        }
    }

    /// Covariant derivative of psi: (d_A psi)_i^{beta p}.
    fn cov_psi(&mut self, i: usize, beta: usize, p: usize) -> JetPoly {
        let m = self.matter.clone().expect("matter content");
        let mut out = match self.psi_slots.iter().position(|&(b, q)| (b, q) == (beta, p)) {
            Some(k) => dvar(&mut self.ring, self.psi[k], i),
            None => JetPoly::zero(),
        };
        for aidx in 0..self.g() {
            for qq in 0..m.dim {
                let coef = m.act[aidx].get(p, qq).clone();
                if coef.is_zero() {
                    continue;
                }
                let av = var(&mut self.ring, self.a[i][aidx]);
                let pv = self.psi_poly(beta, qq);
                if !pv.is_zero() {
                    out.add_assign(&av.mul(&pv, &self.ring).scale(&coef));
                }
            }
        }
        out
    }

    fn action_matter(&mut self) -> JetPoly {
        let m = self.matter.clone().expect("matter content");
        let (n, g, ds) = (self.n, self.g(), self.ds());
        let mut s = JetPoly::zero();
        // 1/2 (d_A phi, d_A phi).
        for i in 0..n {
            for p in 0..m.dim {
                for qq in 0..m.dim {
                    let k = m.form.get(p, qq).clone();
                    if k.is_zero() {
                        continue;
                    }
                    let d1 = self.cov_phi(i, p);
                    let d2 = self.cov_phi(i, qq);
                    s.add_assign(&d1.mul(&d2, &self.ring).scale(&(&k * &Scalar::ratio(1, 2))));
                }
            }
        }
        // (psi, Dslash_A psi): psi in Sigma* (x) P, Dslash psi in Sigma (x) P,
        // paired through (pair (x) form) with the Sigma leg first.
        for alpha in 0..ds {
            for beta in 0..ds {
                let b = self.model.pair.get(alpha, beta).clone();
                if b.is_zero() {
                    continue;
                }
                for p in 0..m.dim {
                    for qq in 0..m.dim {
                        let k = m.form.get(p, qq).clone();
                        if k.is_zero() {
                            continue;
                        }
                        // (Dslash psi)^{alpha p} = rho_minus[i][alpha][gamma] d_i psi^{gamma p}.
                        for i in 0..n {
                            for gam in 0..ds {
                                let r = self.model.rho_minus[i].get(alpha, gam).clone();
                                if r.is_zero() {
                                    continue;
                                }
                                let psi1 = self.psi_poly(beta, qq);
                                if psi1.is_zero() {
                                    continue;
                                }
                                let dpsi = self.cov_psi(i, gam, p);
                                if dpsi.is_zero() {
                                    continue;
                                }
                                let coef = &(&(&b * &k) * &r) * &Scalar::ratio(1, 2);
                                s.add_assign(&psi1.mul(&dpsi, &self.ring).scale(&coef));
                            }
                        }
                    }
                }
            }
        }
        s.add_assign(&self.lam_phi_psi_term(false, false));
        // (c psi, psi*).
        for (k_idx, &(beta, p)) in self.psi_slots.clone().iter().enumerate() {
            let _ = k_idx;
            for aidx in 0..g {
                for qq in 0..m.dim {
                    let coef = m.act[aidx].get(p, qq).clone();
                    if coef.is_zero() {
                        continue;
                    }
                    let cv = var(&mut self.ring, self.c[aidx]);
                    let psiv = self.psi_poly(beta, qq);
                    if psiv.is_zero() {
                        continue;
                    }
                    let dual = self.psi_star_dual_for(beta, p);
                    if dual.is_zero() {
                        continue;
                    }
                    let term = cv.mul(&psiv, &self.ring).mul(&dual, &self.ring).scale(&(-&coef));
                    s.add_assign(&term);
                }
            }
        }
        // -(c phi, phi*).
        for p in 0..m.dim {
            for aidx in 0..g {
                for qq in 0..m.dim {
                    let coef = m.act[aidx].get(p, qq).clone();
                    if coef.is_zero() {
                        continue;
                    }
                    let cv = var(&mut self.ring, self.c[aidx]);
                    let pv = var(&mut self.ring, self.phi[qq]);
                    let dual = var(&mut self.ring, self.phi_star[p]);
                    s.add_assign(&cv.mul(&pv, &self.ring).mul(&dual, &self.ring).scale(&(-&coef)));
                }
            }
        }
        s
    }

    /// The (lam phi, psi) interaction with optional x-twists on the lambda
    /// and phi legs (used by the convention calibration harness).
    pub fn lam_phi_psi_term(&mut self, twist_lam: bool, twist_phi: bool) -> JetPoly {
        let m = self.matter.clone().expect("matter content");
        let (g, ds) = (self.g(), self.ds());
        let mut s = JetPoly::zero();
        for alpha in 0..ds {
            let lam_w = if twist_lam {
                &Scalar::i() * &Scalar::from_int(self.x_sigma(alpha) as i64)
            } else {
                Scalar::one()
            };
            for beta in 0..ds {
                let b = self.model.pair.get(alpha, beta).clone();
                if b.is_zero() {
                    continue;
                }
                for p in 0..m.dim {
                    if !self.tuning.f_lpp.keep(self.sigma_p_matched(alpha, p)) {
                        continue;
                    }
                    let phi_w = if twist_phi {
                        let xp = self.x_p(p);
                        if xp == 0 {
                            Scalar::one()
                        } else {
                            &Scalar::i() * &Scalar::from_int(xp as i64)
                        }
                    } else {
                        Scalar::one()
                    };
                    for qq in 0..m.dim {
                        let k = m.form.get(p, qq).clone();
                        if k.is_zero() {
                            continue;
                        }
                        for aidx in 0..g {
                            for pp in 0..m.dim {
                                let coef = m.act[aidx].get(p, pp).clone();
                                if coef.is_zero() {
                                    continue;
                                }
                                let lv = var(&mut self.ring, self.lam[alpha][aidx]);
                                let pv = var(&mut self.ring, self.phi[pp]);
                                let psiv = self.psi_poly(beta, qq);
                                if psiv.is_zero() {
                                    continue;
                                }
                                let w = &(&lam_w * &phi_w) * &(&(&b * &k) * &coef);
                                let term = lv
                                    .mul(&pv, &self.ring)
                                    .mul(&psiv, &self.ring)
                                    .scale(&w);
                                s.add_assign(&term);
                            }
                        }
                    }
                }
            }
        }
        s
    }

    /// The dual coordinate paired against the psi-component (beta, p): the
    /// omega-partner variable of psi^{beta p}.
    fn psi_star_dual_for(&mut self, beta: usize, p: usize) -> JetPoly {
        match self.psi_slots.iter().position(|&(b, q)| (b, q) == (beta, p)) {
            Some(k) => var(&mut self.ring, self.psi_star[k]),
            None => JetPoly::zero(),
        }
    }

    /// Natural psi* components in Sigma (x) P from the dual coordinates.
    fn psi_star_nat(&mut self, alpha: usize, p: usize) -> JetPoly {
        let Some(col) = self
            .psi_nat_slots
            .iter()
            .position(|&(a, q)| (a, q) == (alpha, p))
        else {
            return JetPoly::zero();
        };
        let mut out = JetPoly::zero();
        for k in 0..self.psi_star.len() {
            let coef = self.psi_nat_from_dual.get(col, k).clone();
            if coef.is_zero() {
                continue;
            }
            let v = var(&mut self.ring, self.psi_star[k]);
            out.add_assign(&v.scale(&coef));
        }
        out
    }

    /// ((Q, psi), phi*) with an optional x-twist on the Q leg.
    pub fn qpsi_phistar_term(&mut self, qvec: &[JetPoly], twist: bool) -> JetPoly {
        let m = self.matter.clone().expect("matter");
        let ds = self.ds();
        let mut s = JetPoly::zero();
        for al in 0..ds {
            let w = if twist {
                &Scalar::i() * &Scalar::from_int(self.x_sigma(al) as i64)
            } else {
                Scalar::one()
            };
            for be in 0..ds {
                let b = self.model.pair.get(al, be).clone();
                if b.is_zero() {
                    continue;
                }
                for qq in 0..m.dim {
                    let psiv = self.psi_poly(be, qq);
                    if psiv.is_zero() {
                        continue;
                    }
                    let qv = qvec[al].clone();
                    let fstar = var(&mut self.ring, self.phi_star[qq]);
                    s.add_assign(
                        &qv.mul(&psiv, &self.ring)
                            .mul(&fstar, &self.ring)
                            .scale(&(&b * &w)),
                    );
                }
            }
        }
        s
    }

    /// (rho(d_A phi) Q, psi*) with an optional x-twist on the Q leg.
    pub fn rdphi_psistar_term(&mut self, qvec: &[JetPoly], twist: bool) -> JetPoly {
        let m = self.matter.clone().expect("matter");
        let (n, ds) = (self.n, self.ds());
        let mut s = JetPoly::zero();
        for i in 0..n {
            for be in 0..ds {
                for al in 0..ds {
                    let r = self.model.rho_plus[i].get(be, al).clone();
                    if r.is_zero() {
                        continue;
                    }
                    let w = if twist {
                        &Scalar::i() * &Scalar::from_int(self.x_sigma(al) as i64)
                    } else {
                        Scalar::one()
                    };
                    for p in 0..m.dim {
                        let dphi = self.cov_phi(i, p);
                        let qv = qvec[al].clone();
                        let dual = self.psi_star_dual_for(be, p);
                        if dual.is_zero() {
                            continue;
                        }
                        let term = dphi
                            .mul(&qv, &self.ring)
                            .mul(&dual, &self.ring)
                            .scale(&(&r * &w));
                        s.add_assign(&term);
                    }
                }
            }
        }
        s
    }

    /// S^(1)(Q) with Q given as Sigma-indexed coefficient polynomials.
    pub fn s1_of(&mut self, qvec: &[JetPoly]) -> JetPoly {
        let (n, g, ds) = (self.n, self.g(), self.ds());
        let mut s = JetPoly::zero();
        // -(Gamma(Q, lam), A*).
        for i in 0..n {
            for al in 0..ds {
                for be in 0..ds {
                    let coef = self.gamma.gamma_plus[i].get(al, be).clone();
                    if coef.is_zero() {
                        continue;
                    }
                    for aidx in 0..g {
                        let qv = qvec[al].clone();
                        let lv = var(&mut self.ring, self.lam[be][aidx]);
                        let astar = var(&mut self.ring, self.a_star[i][aidx]);
                        let term = qv
                            .mul(&lv, &self.ring)
                            .mul(&astar, &self.ring)
                            .scale(&(-&coef));
                        s.add_assign(&term);
                    }
                }
            }
        }
        // +1/2 (rho(F_A) Q, lam*): rho(F) = sum_{i<j} F_ij rho_-(e_i) rho_+(e_j).
        for i in 0..n {
            for j in (i + 1)..n {
                let op = &self.model.rho_minus[i] * &self.model.rho_plus[j];
                for aidx in 0..g {
                    let f = self.field_strength(i, j, aidx);
                    if f.is_zero() {
                        continue;
                    }
                    for gam in 0..ds {
                        for al in 0..ds {
                            let r = op.get(gam, al).clone();
                            if r.is_zero() {
                                continue;
                            }
                            let qv = qvec[al].clone();
                            let ls = var(&mut self.ring, self.lam_star[gam][aidx]);
                            let term = f
                                .mul(&qv, &self.ring)
                                .mul(&ls, &self.ring)
                                .scale(&(-&r));
                            s.add_assign(&term);
                        }
                    }
                }
            }
        }
        if self.matter.is_some() {
            s.add_assign(&self.s1_matter_of(qvec));
        }
        s
    }

    fn s1_matter_of(&mut self, qvec: &[JetPoly]) -> JetPoly {
        let m = self.matter.clone().expect("matter");
        let (n, ds) = (self.n, self.ds());
        let mut s = JetPoly::zero();
        // ((Q, psi), phi*): the P-valued A-pairing restricts the Q-leg to
        // the x-matched Sigma slots.
        for al in 0..ds {
            for be in 0..ds {
                let b = self.model.pair.get(al, be).clone();
                if b.is_zero() {
                    continue;
                }
                for qq in 0..m.dim {
                    if !self.tuning.f_qpsi.keep(self.sigma_p_matched(al, qq)) {
                        continue;
                    }
                    let psiv = self.psi_poly(be, qq);
                    if psiv.is_zero() {
                        continue;
                    }
                    let qv = qvec[al].clone();
                    let fstar = var(&mut self.ring, self.phi_star[qq]);
                    s.add_assign(&qv.mul(&psiv, &self.ring).mul(&fstar, &self.ring).scale(&b));
                }
            }
        }
        // 1/2 (rho(d_A phi) Q, psi*): rho(v)Q in Sigma*, v = d_A phi.
        for i in 0..n {
            for be in 0..ds {
                let star_plus = star_block_is_plus(&self.model, be);
                for al in 0..ds {
                    let r = self.model.rho_plus[i].get(be, al).clone();
                    if r.is_zero() {
                        continue;
                    }
                    for p in 0..m.dim {
                        let xp = self.x_p(p);
                        let matched = xp == 0 || (star_plus == (xp > 0));
                        if !self.tuning.f_rdphi.keep(matched) {
                            continue;
                        }
                        let dphi = self.cov_phi(i, p);
                        let qv = qvec[al].clone();
                        // Pair the Sigma* (x) P element with psi* through the
                        // dual coordinate of psi at (be, p)... psi* is dual to
                        // psi, so (X, psi*) contracts X^{be p} with the
                        // partner variable of psi^{be p}.
                        let dual = self.psi_star_dual_for(be, p);
                        if dual.is_zero() {
                            continue;
                        }
                        let term = dphi
                            .mul(&qv, &self.ring)
                            .mul(&dual, &self.ring)
                            .scale(&(-&r));
                        s.add_assign(&term);
                    }
                }
            }
        }
        s
    }

    /// S^(2)(Q_x, Q_y) with both supercharges as coefficient polynomials.
    pub fn s2_of(&mut self, q1: &[JetPoly], q2: &[JetPoly]) -> JetPoly {
        let (n, g, ds) = (self.n, self.g(), self.ds());
        let mut s = JetPoly::zero();
        // Gamma(Q1, Q2) as polynomials.
        let gqq: Vec<JetPoly> = (0..n)
            .map(|i| {
                let mut out = JetPoly::zero();
                for al in 0..ds {
                    for be in 0..ds {
                        let coef = self.gamma.gamma_plus[i].get(al, be).clone();
                        if coef.is_zero() {
                            continue;
                        }
                        out.add_assign(&q1[al].clone().mul(&q2[be], &self.ring).scale(&coef));
                    }
                }
                out
            })
            .collect();
        // 1/4 (Gamma(Q1,Q2), Gamma(lam*, lam*)) with natural lam* components.
        for i in 0..n {
            let mut glam = JetPoly::zero();
            for be in 0..ds {
                for de in 0..ds {
                    let coef = self.gamma.gamma_star[i].get(be, de).clone();
                    if coef.is_zero() {
                        continue;
                    }
                    for aidx in 0..g {
                        for bidx in 0..g {
                            let k = self.lie.kappa.get(aidx, bidx).clone();
                            if k.is_zero() {
                                continue;
                            }
                            let l1 = self.lam_star_nat(be, aidx);
                            let l2 = self.lam_star_nat(de, bidx);
                            glam.add_assign(&l1.mul(&l2, &self.ring).scale(&(&coef * &k)));
                        }
                    }
                }
            }
            s.add_assign(
                &gqq[i]
                    .clone()
                    .mul(&glam, &self.ring)
                    .scale(&Scalar::ratio(1, 4)),
            );
        }
        // -1/2 (Q1, lam*)(Q2, lam*): g-valued pairings contracted with the
        // inverse Lie pairing.
        let mut q1l = vec![JetPoly::zero(); g];
        let mut q2l = vec![JetPoly::zero(); g];
        for aidx in 0..g {
            for al in 0..ds {
                let ls = var(&mut self.ring, self.lam_star[al][aidx]);
                q1l[aidx].add_assign(&q1[al].clone().mul(&ls, &self.ring));
                q2l[aidx].add_assign(&q2[al].clone().mul(&ls, &self.ring));
            }
        }
        for aidx in 0..g {
            for bidx in 0..g {
                let ik = self.inv_kappa.get(aidx, bidx).clone();
                if ik.is_zero() {
                    continue;
                }
                let term = q1l[aidx]
                    .clone()
                    .mul(&q2l[bidx], &self.ring)
                    .scale(&(&ik * &Scalar::ratio(-1, 2)));
                s.add_assign(&term);
            }
        }
        // -(iota_{Gamma(Q1,Q2)} A) c*.
        for i in 0..n {
            for aidx in 0..g {
                let av = var(&mut self.ring, self.a[i][aidx]);
                let cs = var(&mut self.ring, self.c_star[aidx]);
                let term = gqq[i].clone().mul(&av, &self.ring).mul(&cs, &self.ring);
                s.add_assign(&term);
            }
        }
        // Matter part: +1/4 (Gamma(Q1,Q2), Gamma(psi*, psi*)).
        if let Some(m) = self.matter.clone() {
            for i in 0..n {
                let mut gpsi = JetPoly::zero();
                for al in 0..ds {
                    for ga in 0..ds {
                        let coef = self.gamma.gamma_plus[i].get(al, ga).clone();
                        if coef.is_zero() {
                            continue;
                        }
                        for p in 0..m.dim {
                            for qq in 0..m.dim {
                                let k = m.form.get(p, qq).clone();
                                if k.is_zero() {
                                    continue;
                                }
                                let p1 = self.psi_star_nat(al, p);
                                if p1.is_zero() {
                                    continue;
                                }
                                let p2 = self.psi_star_nat(ga, qq);
                                if p2.is_zero() {
                                    continue;
                                }
                                gpsi.add_assign(&p1.mul(&p2, &self.ring).scale(&(&coef * &k)));
                            }
                        }
                    }
                }
                s.add_assign(
                    &gqq[i]
                        .clone()
                        .mul(&gpsi, &self.ring)
                        .scale(&Scalar::ratio(1, 4)),
                );
            }
        }
        s
    }

    /// Translation Hamiltonian at the vector v (components are parameter
    /// polynomials): (L_v A, A*) - (v.lam, lam*) - (v.c) c* plus the matter
    /// pieces.
    pub fn translation_ham(&mut self, v: &[JetPoly]) -> JetPoly {
        let (n, g, ds) = (self.n, self.g(), self.ds());
        let mut s = JetPoly::zero();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                for aidx in 0..g {
                    let da = dvar(&mut self.ring, self.a[j][aidx], i);
                    let astar = var(&mut self.ring, self.a_star[j][aidx]);
                    s.add_assign(&v[i].clone().mul(&da.mul(&astar, &self.ring), &self.ring));
                }
            }
            for al in 0..ds {
                for aidx in 0..g {
                    let dl = dvar(&mut self.ring, self.lam[al][aidx], i);
                    let ls = var(&mut self.ring, self.lam_star[al][aidx]);
                    s.add_assign(&v[i].clone().mul(&dl.mul(&ls, &self.ring), &self.ring));
                }
            }
            for aidx in 0..g {
                let dc = dvar(&mut self.ring, self.c[aidx], i);
                let cs = var(&mut self.ring, self.c_star[aidx]);
                s.add_assign(&v[i].clone().mul(&dc.mul(&cs, &self.ring), &self.ring));
            }
            if let Some(m) = self.matter.clone() {
                for p in 0..m.dim {
                    let dp = dvar(&mut self.ring, self.phi[p], i);
                    let ps = var(&mut self.ring, self.phi_star[p]);
                    s.add_assign(&v[i].clone().mul(&dp.mul(&ps, &self.ring), &self.ring));
                }
                for (k, _) in self.psi_slots.clone().iter().enumerate() {
                    let dpsi = dvar(&mut self.ring, self.psi[k], i);
                    let dual = var(&mut self.ring, self.psi_star[k]);
                    s.add_assign(&v[i].clone().mul(&dpsi.mul(&dual, &self.ring), &self.ring));
                }
            }
        }
        s
    }

    /// Symbolic supercharge vector for parameter set `k`.
    pub fn q_vec(&mut self, k: usize) -> Vec<JetPoly> {
        (0..self.ds())
            .map(|al| var(&mut self.ring, self.q[k][al]))
            .collect()
    }

    /// Numeric supercharge vector.
    pub fn q_const(&self, coeffs: &[Scalar]) -> Vec<JetPoly> {
        coeffs.iter().map(|c| JetPoly::constant(c.clone())).collect()
    }
}

/// Result of one master-equation component check.
#[derive(Debug, Clone)]
pub struct CmeCheck {
    pub name: String,
    pub residual_zero: bool,
    pub term_count: usize,
    pub seconds: f64,
}

/// Verify the component equations of the classical master equation with
/// symbolic supercharges. All four components must vanish modulo total
/// derivatives, identically in the supercharge coordinates.
pub fn verify_cme(theory: &mut SymTheory) -> Result<Vec<CmeCheck>, BvError> {
    verify_cme_with(theory, false)
}

/// Same, with an optional deliberate sign error in S^(2) as a negative
/// control.
pub fn verify_cme_with(theory: &mut SymTheory, flip_sign: bool) -> Result<Vec<CmeCheck>, BvError> {
    assert!(theory.q.len() >= 3, "three symbolic supercharge sets required");
    let mut out = Vec::new();
    let s = theory.action();
    let q1 = theory.q_vec(0);
    let q2 = theory.q_vec(1);
    let q3 = theory.q_vec(2);
    let s1_q1 = theory.s1_of(&q1);
    let s1_q2 = theory.s1_of(&q2);
    let mut s2_12 = theory.s2_of(&q1, &q2);
    if flip_sign {
        // Negative control: damage the quadratic functional.
        s2_12 = s2_12.neg();
    }
    let s2_23 = theory.s2_of(&q2, &q3);
    let s2_13 = theory.s2_of(&q1, &q3);

    let mut check = |name: &str, p: JetPoly, ring: &mut JetRing| -> Result<(), BvError> {
        let t0 = std::time::Instant::now();
        let terms = p.num_terms();
        let zero = is_total_derivative(&p, ring)?;
        out.push(CmeCheck {
            name: name.to_string(),
            residual_zero: zero,
            term_count: terms,
            seconds: t0.elapsed().as_secs_f64(),
        });
        Ok(())
    };

    // Equation 1: {S, S^(1)(Q)} = 0.
    let e1 = bv_bracket(&s, &s1_q1, &mut theory.ring)?;
    check("{S, S1(Q)}", e1, &mut theory.ring)?;

    // Equation 2: {S, S^(2)(Q1,Q2)} + S_P(Gamma(Q1,Q2)) - 1/2 {S^(1)(Q1), S^(1)(Q2)} = 0.
    let gqq = theory.gamma_qq(0, 1);
    let sp = theory.translation_ham(&gqq);
    let mut e2 = bv_bracket(&s, &s2_12, &mut theory.ring)?;
    e2.add_assign(&sp);
    let cross = bv_bracket(&s1_q1, &s1_q2, &mut theory.ring)?;
    e2.add_assign(&cross.scale(&Scalar::ratio(-1, 2)));
    check("{S, S2} + dCE S1 + 1/2 {S1, S1}", e2, &mut theory.ring)?;

    // Equation 3: cyclic sum of {S^(1)(Q_i), S^(2)(Q_j, Q_k)} = 0.
    let s1_q3 = theory.s1_of(&q3);
    let mut e3 = bv_bracket(&s1_q1, &s2_23, &mut theory.ring)?;
    e3.add_assign(&bv_bracket(&s1_q2, &s2_13, &mut theory.ring)?);
    e3.add_assign(&bv_bracket(&s1_q3, &s2_12, &mut theory.ring)?);
    check("dCE S2 + {S1, S2}", e3, &mut theory.ring)?;

    // Equation 4: {S^(2), S^(2)} = 0.
    let e4 = bv_bracket(&s2_12, &s2_23, &mut theory.ring)?;
    check("{S2, S2}", e4, &mut theory.ring)?;
    Ok(out)
}

// -- helpers on the spinor model --------------------------------------------

fn sigma_block_is_plus(model: &CliffordModel, alpha: usize) -> bool {
    // Sigma block 0 is the positive-chirality block.
    let b0 = model.blocks[0].s_dim * model.blocks[0].w_dim;
    alpha < b0
}

fn star_block_is_plus(model: &CliffordModel, beta: usize) -> bool {
    // Sigma*-block0 (S- (x) W+) carries the positive x-eigenvalue.
    if model.blocks.len() < 2 {
        return true;
    }
    let first = model.blocks[1].s_dim * model.blocks[0].w_dim;
    beta < first
}

/// Build a theory with the standard three symbolic supercharge sets.
pub fn build_sym(
    config: SymConfig,
    lie: LieData,
    matter: Option<MatterData>,
) -> Result<SymTheory, BvError> {
    SymTheory::new(config, lie, matter, 3)
}

/// Substitute a numeric supercharge into the supersymmetry functionals:
/// S^Q = S + S^(1)(Q) + S^(2)(Q, Q).
pub fn twist_functional(theory: &mut SymTheory, q: &[Scalar]) -> Result<JetPoly, BvError> {
    // The supercharge must be square-zero.
    let qpolys = theory.q_const(q);
    let ds = theory.ds();
    for i in 0..theory.n {
        let mut acc = Scalar::zero();
        for al in 0..ds {
            for be in 0..ds {
                let coef = theory.gamma.gamma_plus[i].get(al, be).clone();
                if !coef.is_zero() {
                    acc += &(&(&q[al] * &q[be]) * &coef);
                }
            }
        }
        if !acc.is_zero() {
            return Err(BvError::Unsupported(
                "supercharge is not square-zero".into(),
            ));
        }
    }
    let mut s = theory.action();
    s.add_assign(&theory.s1_of(&qpolys));
    s.add_assign(&theory.s2_of(&qpolys, &qpolys));
    Ok(s)
}
