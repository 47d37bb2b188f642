//! Orbit invariants of square-zero supercharges and the classification into
//! the golden table of twists.
//!
//! The classifier recomputes every discriminant from the algebra data: the
//! number of invariant directions, chirality-block ranks, the residual
//! bracket components along the dropped directions of the parent model
//! ("perpendicular moments", which detect pure/special/B-type orbits), the
//! Lagrangian-family parity in 3d, and the volume-ratio invariant of
//! rank (2,2) supercharges in 4d N=4. The golden rows are data; the
//! computation is the actual and the row the expected value.

use crate::algebra::{Supercharge, SusyAlgebra, SusyLabel};
use crate::SusyError;
use twistkit_exact::{Matrix, Scalar};

/// Discrete A/B (generic/special) orientation class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    A,
    B,
}

/// 5d rank-2 image type inside the spin representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotropyType {
    Lagrangian,
    Symplectic,
}

/// All discriminants of a square-zero supercharge that the classifier uses
/// or reports. Fields that do not apply to the algebra at hand are `None`.
#[derive(Debug, Clone)]
pub struct OrbitInvariants {
    pub rank_plus: usize,
    pub rank_minus: usize,
    pub inv_dirs: usize,
    /// Bracket components along the dropped directions of the parent model;
    /// empty for top models. All zero exactly on pure/special/B-type orbits.
    pub perp_moments: Vec<Scalar>,
    /// Scalar spin pairing (Q, Q) on the S-leg where the multiplicity is a
    /// line (8d); nonzero detects the impure orbit.
    pub purity: Option<Scalar>,
    /// 5d rank 2: type of the image of W* -> S under the symplectic form.
    pub isotropy_type: Option<IsotropyType>,
    /// 6d N=(1,1) rank (1,1): pairing of the two image lines in S+-, S-.
    pub cross_pairing: Option<Scalar>,
    /// 4d N=4 rank (2,2): the volume-ratio modulus.
    pub s_invariant: Option<Scalar>,
    /// 3d rank 2 and 2d rank (1,1): discrete orientation class.
    pub orientation: Option<Orientation>,
}

/// One row of the classification table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitLabel {
    pub dim: usize,
    pub susy: SusyLabel,
    /// Orbit name, stable across the tables (e.g. "rank (1,1) special").
    pub orbit: &'static str,
    pub inv_dirs: usize,
    /// Whether a compatible U(1) grading exists for the twisted theory.
    pub graded: bool,
    /// Description of the twisted theory.
    pub theory: &'static str,
    /// Orbit-graph node id when this row is a node of the dimensional
    /// reduction graph.
    pub node: Option<&'static str>,
}

impl OrbitLabel {
    pub fn name(&self) -> String {
        format!("{}d N={} {}", self.dim, self.susy, self.orbit)
    }
}

macro_rules! rows {
    ($($dim:expr, $susy:expr, $orbit:expr, $dirs:expr, $graded:expr, $theory:expr, $node:expr;)*) => {
        vec![$(OrbitLabel {
            dim: $dim,
            susy: $susy,
            orbit: $orbit,
            inv_dirs: $dirs,
            graded: $graded,
            theory: $theory,
            node: $node,
        }),*]
    };
}

/// The embedded classification data: every orbit row of the four tables,
/// with invariant-direction counts, grading flags and twisted-theory
/// descriptors.
pub fn golden_table() -> Vec<OrbitLabel> {
    use SusyLabel::{Chiral, N};
    let mut t = rows![
        // 16 supercharges.
        10, Chiral(1,0), "rank (1,0)", 5, false,
            "Holomorphic Chern-Simons theory: Map(C^5, Bg)", Some("105");
        9, N(1), "rank 1", 5, false,
            "Generalized Chern-Simons theory: Map(C^4 x R_dR, Bg)", Some("95");
        8, N(1), "rank (1,0) pure", 4, true,
            "Holomorphic BF theory: T*[-1]Map(C^4, Bg)", Some("84");
        8, N(1), "rank (1,1)", 5, false,
            "Generalized Chern-Simons theory: Map(C^3 x R^2_dR, Bg)", Some("85");
        8, N(1), "rank (1,0) impure", 8, true,
            "Perturbatively trivial (Spin(7) instanton): Map(C^4, Bg)_dR", Some("88");
        7, N(1), "rank 1 pure", 4, true,
            "Generalized BF theory: T*[-1]Map(C^3 x R_dR, Bg)", Some("74");
        7, N(1), "rank 2", 5, false,
            "Generalized Chern-Simons theory: Map(C^2 x R^3_dR, Bg)", Some("75");
        7, N(1), "rank 1 impure", 7, true,
            "Perturbatively trivial (G2 monopole): Map(C^3 x R_dR, Bg)_dR", Some("77");
        6, Chiral(1,1), "rank (1,0)", 3, true,
            "Holomorphic BF theory: T*[-1]Map(C^3, g/g)", Some("63");
        6, Chiral(1,1), "rank (1,1) special", 4, true,
            "Generalized BF theory: T*[-1]Map(C^2 x R^2_dR, Bg)", Some("64");
        6, Chiral(1,1), "rank (2,2)", 5, false,
            "Generalized Chern-Simons theory: Map(C x R^4_dR, Bg)", Some("65");
        6, Chiral(1,1), "rank (1,1) generic", 6, true,
            "Perturbatively trivial: Map(C^2 x R^2_dR, Bg)_dR", Some("66");
        5, N(2), "rank 1", 3, true,
            "Generalized BF theory: T*[-1]Map(C^2 x R_dR, g/g)", Some("53");
        5, N(2), "rank 2 special", 4, true,
            "Generalized BF theory: T*[-1]Map(C x R^3_dR, Bg)", Some("54");
        5, N(2), "rank 4", 5, false,
            "5d Chern-Simons theory: Map(R^5_dR, Bg)", Some("55B");
        5, N(2), "rank 2 generic", 5, true,
            "Perturbatively trivial: Map(C x R^3_dR, Bg)_dR", Some("55A");
        4, N(4), "rank (1,0)", 2, true,
            "Holomorphic BF theory: T*[-1]Map(C^2_Dol, Bg)", Some("42");
        4, N(4), "rank (1,1)", 3, true,
            "Generalized BF theory: T*[-1]Map(C_Dol x R^2_dR, Bg)", Some("43");
        4, N(4), "rank (2,2) special", 4, true,
            "BF theory: T*[-1]Map(R^4_dR, Bg)", Some("44B");
        4, N(4), "rank (2,1)", 4, true,
            "Perturbatively trivial: Map(C_Dol x R^2_dR, Bg)_dR", Some("44K");
        4, N(4), "rank (2,0)", 4, true,
            "Perturbatively trivial: Map(C^2_Dol, Bg)_dR", Some("44A");
        4, N(4), "rank (2,2) generic", 4, true,
            "Perturbatively trivial: Map(R^4_dR, Bg)_dR", Some("44g");
        3, N(8), "rank 1", 2, true,
            "Generalized BF theory: T*[-1]Map(C_Dol x R_dR, g/g)", Some("32");
        3, N(8), "rank 2 (B)", 3, true,
            "BF theory: T*[-1]Map(R^3_dR, g/g)", Some("33B");
        3, N(8), "rank 2 (A)", 3, true,
            "Perturbatively trivial: Map(R^3_dR, g/g)_dR", Some("33A");
        2, Chiral(8,8), "rank (1,0)", 1, true,
            "Holomorphic BF theory: T*[-1]Map(C_Dol, T[1]g/g)", None;
        2, Chiral(8,8), "rank (1,1) (B)", 2, true,
            "Topological BF theory: T*[-1]Map(R^2_dR, T*(g/g))", None;
        2, Chiral(8,8), "rank (1,1) (A)", 2, true,
            "Perturbatively trivial: Map(R^2_dR, T*(g/g)_dR)", None;
        // 8 supercharges.
        6, Chiral(1,0), "rank (1,0)", 3, true,
            "Holomorphic BF theory coupled to a holomorphic symplectic boson: Sect(C^3, (U x K^1/2) ham g)", Some("63");
        5, N(1), "rank 1", 3, true,
            "Generalized BF theory coupled to a generalized symplectic boson: Sect(C^2 x R_dR, (U x K^1/2) ham g)", Some("53");
        4, N(2), "rank (1,0)", 2, true,
            "Holomorphic BF theory: T*[-1]Sect(C^2, (U x K^1/2) ham g)", Some("42");
        4, N(2), "rank (1,1)", 3, false,
            "Generalized BF theory coupled to a generalized symplectic boson: Sect(C x R^2_dR, (U x K^1/2) ham g)", Some("43");
        4, N(2), "rank (2,0)", 4, true,
            "Perturbatively trivial: Sect(C^2, (U x K^1/2) ham g)_dR", Some("44A");
        3, N(4), "rank 1", 2, true,
            "Generalized BF theory coupled to a generalized symplectic boson: T*[-1]Sect(C x R_dR, (U x K^1/2) ham g)", Some("32");
        3, N(4), "rank 2 (B)", 3, false,
            "BF theory coupled to a symplectic boson: Map(R^3_dR, U ham g)", Some("33B");
        3, N(4), "rank 2 (A)", 3, true,
            "Perturbatively trivial: Sect(C x R_dR, (U x K^1/2) ham g)_dR", Some("33A");
        2, Chiral(4,4), "rank (1,0)", 1, true,
            "Holomorphic BF theory coupled to a holomorphic symplectic boson: T*[-1]Sect(C, T[1]((U x K^1/2) ham g))", None;
        2, Chiral(4,4), "rank (1,1) (B)", 2, true,
            "Topological BF theory coupled to a holomorphic symplectic boson: T*[-1]Map(R^2_dR, U ham g)", None;
        2, Chiral(4,4), "rank (1,1) (A)", 2, true,
            "Perturbatively trivial (A-model): Map(R^2_dR, (U ham g)_dR)", None;
        // 4 supercharges.
        4, N(1), "rank (1,0)", 2, true,
            "Holomorphic BF theory coupled to R-matter: T*[-1]Map(C^2, R/g)", Some("42");
        3, N(2), "rank 1", 2, true,
            "Generalized BF theory coupled to R-matter: T*[-1]Map(C x R_dR, R/g)", Some("32");
        2, Chiral(2,2), "rank (1,0)", 1, true,
            "Holomorphic BF theory coupled to R-matter: T*[-1]Map(C, T[1](R/g))", None;
        2, Chiral(2,2), "rank (1,1) (B)", 2, true,
            "Topological BF theory coupled to R-matter: T*[-1]Map(R^2_dR, R/g)", None;
        2, Chiral(2,2), "rank (1,1) (A)", 2, true,
            "Perturbatively trivial (A-model): T*[-1]Map(C, (R/g)_dR)", None;
    ];
    // 2d chiral family.
    for p in 1..=8usize {
        let theory = match p {
            2 => "Holomorphic BF theory coupled to R-matter: T*[-1]Map(C, R/g)",
            4 => "Holomorphic BF theory coupled to a holomorphic symplectic boson: T*[-1]Sect(C, (U x K^1/2) ham g)",
            _ => "Holomorphic BF theory coupled to N+-2 free fermions: T*[-1]Sect(C, (g^(N+-2) x K^1/2)/g)",
        };
        t.push(OrbitLabel {
            dim: 2,
            susy: SusyLabel::Chiral(p, 0),
            orbit: "rank (1,0)",
            inv_dirs: 1,
            graded: true,
            theory,
            node: None,
        });
    }
    t
}

/// Find a golden row.
pub fn golden_row(dim: usize, susy: SusyLabel, orbit: &str) -> Option<OrbitLabel> {
    golden_table()
        .into_iter()
        .find(|r| r.dim == dim && r.susy == susy && r.orbit == orbit)
}

/// Nodes of the dimensional-reduction orbit graph, with the algebra family
/// in which each node's golden data lives (16, 8 or 4 supercharges).
pub fn graph_nodes() -> Vec<(&'static str, usize, usize, &'static str)> {
    // (node id, dim, supercharge count, orbit name)
    vec![
        ("105", 10, 16, "rank (1,0)"),
        ("95", 9, 16, "rank 1"),
        ("88", 8, 16, "rank (1,0) impure"),
        ("85", 8, 16, "rank (1,1)"),
        ("84", 8, 16, "rank (1,0) pure"),
        ("77", 7, 16, "rank 1 impure"),
        ("75", 7, 16, "rank 2"),
        ("74", 7, 16, "rank 1 pure"),
        ("66", 6, 16, "rank (1,1) generic"),
        ("65", 6, 16, "rank (2,2)"),
        ("64", 6, 16, "rank (1,1) special"),
        ("63", 6, 8, "rank (1,0)"),
        ("55B", 5, 16, "rank 4"),
        ("55A", 5, 16, "rank 2 generic"),
        ("54", 5, 16, "rank 2 special"),
        ("53", 5, 8, "rank 1"),
        ("44B", 4, 16, "rank (2,2) special"),
        ("44K", 4, 16, "rank (2,1)"),
        ("44A", 4, 8, "rank (2,0)"),
        ("44g", 4, 16, "rank (2,2) generic"),
        ("43", 4, 8, "rank (1,1)"),
        ("42", 4, 4, "rank (1,0)"),
        ("33B", 3, 8, "rank 2 (B)"),
        ("33A", 3, 8, "rank 2 (A)"),
        ("32", 3, 4, "rank 1"),
    ]
}

/// Arrows of the orbit graph: one entry per dimensional-reduction edge,
/// verified in the supercharge-count chain of the source node.
pub fn graph_edges() -> Vec<(&'static str, &'static str)> {
    vec![
        ("105", "95"),
        ("95", "85"),
        ("88", "77"),
        ("95", "84"),
        ("85", "75"),
        ("85", "74"),
        ("84", "74"),
        ("77", "66"),
        ("75", "65"),
        ("75", "64"),
        ("74", "64"),
        ("74", "63"),
        ("66", "55A"),
        ("65", "55B"),
        ("65", "54"),
        ("64", "54"),
        ("64", "53"),
        ("63", "53"),
        ("55A", "44g"),
        ("55B", "44B"),
        ("54", "44B"),
        ("54", "43"),
        ("53", "43"),
        ("53", "42"),
        ("44B", "33B"),
        ("44A", "33A"),
        ("44K", "33A"),
        ("43", "33B"),
        ("43", "32"),
        ("42", "32"),
        ("44g", "33A"),
    ]
}

/// The supersymmetry label of the `count`-supercharge chain in dimension n.
pub fn chain_label(count: usize, n: usize) -> Option<SusyLabel> {
    use SusyLabel::{Chiral, N};
    let l = match (count, n) {
        (16, 10) => Chiral(1, 0),
        (16, 9) => N(1),
        (16, 8) => N(1),
        (16, 7) => N(1),
        (16, 6) => Chiral(1, 1),
        (16, 5) => N(2),
        (16, 4) => N(4),
        (16, 3) => N(8),
        (16, 2) => Chiral(8, 8),
        (8, 6) => Chiral(1, 0),
        (8, 5) => N(1),
        (8, 4) => N(2),
        (8, 3) => N(4),
        (8, 2) => Chiral(4, 4),
        (4, 4) => N(1),
        (4, 3) => N(2),
        (4, 2) => Chiral(2, 2),
        (2, 3) => N(1),
        (2, 2) => Chiral(1, 1),
        _ => return None,
    };
    Some(l)
}

// ---------------------------------------------------------------------------
// Invariants.
// ---------------------------------------------------------------------------

/// Bracket components of (Q, Q) along the dropped directions of the parent
/// model chain; empty for top models.
pub fn perp_moments(alg: &SusyAlgebra, q: &Supercharge) -> Vec<Scalar> {
    alg.perp_rho
        .iter()
        .map(|(plus, _)| {
            let image = plus.mul_vec(q);
            alg.model.pairing(q, &image)
        })
        .collect()
}

/// Scalar S-leg pairing (q, q) for algebras whose first block has a
/// one-dimensional multiplicity (the 8d purity discriminant).
pub fn purity_scalar(alg: &SusyAlgebra, q: &Supercharge) -> Option<Scalar> {
    let moments = perp_moments(alg, q);
    if moments.is_empty() {
        return None;
    }
    // The dropped-direction brackets are the S-leg scalar pairings up to
    // normalization; report the first nonvanishing combination.
    Some(
        moments
            .iter()
            .fold(Scalar::zero(), |acc, m| if acc.is_zero() { m.clone() } else { acc }),
    )
}

/// The S-leg bilinear form pairing Sigma block `b` with Sigma* block
/// `b_star` at fixed multiplicity slots.
fn s_form_slots(alg: &SusyAlgebra, b: usize, b_star: usize, w: usize, w_star: usize) -> Matrix {
    let bl = &alg.model.blocks[b];
    let star_dims: Vec<(usize, usize)> = alg
        .model
        .blocks
        .iter()
        .map(|x| (x.s_dim, x.w_dim))
        .collect();
    let off = alg.model.block_offset(b);
    let off_star: usize = star_dims[..b_star].iter().map(|(s, wd)| s * wd).sum();
    let w_dim_star = star_dims[b_star].1;
    Matrix::from_fn(bl.s_dim, star_dims[b_star].0, |r, c| {
        alg.model
            .pair
            .get(off + r * bl.w_dim + w, off_star + c * w_dim_star + w_star)
            .clone()
    })
}

/// The S-leg form carried by Sigma block `b`: scans Sigma* blocks and
/// multiplicity slots for the first nonzero block, returning it together
/// with the Sigma* block index that realizes it. The overall scale is a
/// convention of the algebra instance.
fn s_form_between(alg: &SusyAlgebra, b: usize) -> (Matrix, usize) {
    let nblocks = alg.model.blocks.len();
    for b_star in 0..nblocks {
        let wd = alg.model.blocks[b].w_dim;
        let wd_star = alg.model.blocks[b_star].w_dim;
        for w in 0..wd {
            for w_star in 0..wd_star {
                let m = s_form_slots(alg, b, b_star, w, w_star);
                if !m.is_zero() {
                    return (m, b_star);
                }
            }
        }
    }
    (Matrix::zero(alg.model.blocks[b].s_dim, 0), 0)
}

/// The multiplicity-side cross form of a cross-paired even algebra: the
/// pairing between the W-legs of block 0 and block 1, extracted at a fixed
/// S-cell (so it is canonical up to one overall scale).
pub fn w_cross_form(alg: &SusyAlgebra) -> Matrix {
    let b0 = &alg.model.blocks[0];
    let b1 = &alg.model.blocks[1];
    let off0 = alg.model.block_offset(0);
    let off1 = alg.model.block_offset(1);
    for sr in 0..b0.s_dim {
        for sc in 0..b1.s_dim {
            let m = Matrix::from_fn(b0.w_dim, b1.w_dim, |wr, wc| {
                alg.model
                    .pair
                    .get(off0 + sr * b0.w_dim + wr, off1 + sc * b1.w_dim + wc)
                    .clone()
            });
            if !m.is_zero() {
                return m;
            }
        }
    }
    Matrix::zero(b0.w_dim, b1.w_dim)
}

/// The full invariant record of a square-zero supercharge.
pub fn orbit_invariants(alg: &SusyAlgebra, q: &Supercharge) -> Result<OrbitInvariants, SusyError> {
    let inv_dirs = alg.invariant_directions(q)?;
    let ranks = alg.block_ranks(q);
    let (rank_plus, rank_minus) = match ranks.len() {
        1 => (ranks[0], ranks[0]),
        _ => (ranks[0], ranks[1]),
    };
    let perp = perp_moments(alg, q);
    let mut inv = OrbitInvariants {
        rank_plus,
        rank_minus,
        inv_dirs,
        perp_moments: perp,
        purity: None,
        isotropy_type: None,
        cross_pairing: None,
        s_invariant: None,
        orientation: None,
    };
    // Purity: the S-leg pairing where the first block has w_dim = 1.
    if alg.model.blocks[0].w_dim == 1 && !inv.perp_moments.is_empty() {
        inv.purity = purity_scalar(alg, q);
    }
    // 5d rank 2: isotropy type of the image of W* -> S.
    if alg.n == 5 && rank_plus == 2 {
        inv.isotropy_type = Some(isotropy_type_5d(alg, q));
    }
    // 6d N=(1,1) rank (1,1): cross pairing of the image lines.
    if alg.n == 6 && alg.label == SusyLabel::Chiral(1, 1) && (rank_plus, rank_minus) == (1, 1) {
        inv.cross_pairing = Some(cross_pairing_6d(alg, q));
    }
    // 4d N=4 rank (2,2): the s-invariant.
    if alg.n == 4 && alg.label == SusyLabel::N(4) && (rank_plus, rank_minus) == (2, 2) {
        inv.s_invariant = Some(s_invariant_4d(alg, q)?);
    }
    // 3d rank 2: orientation class.
    if alg.n == 3 && rank_plus == 2 && matches!(alg.label, SusyLabel::N(4) | SusyLabel::N(8)) {
        inv.orientation = Some(orientation_3d(alg, q)?);
    }
    // 2d rank (1,1): orientation class from the perpendicular moments.
    if alg.n == 2 && ranks.len() == 2 && (rank_plus, rank_minus) == (1, 1) {
        inv.orientation = Some(if inv.perp_moments.iter().all(|m| m.is_zero()) {
            Orientation::B
        } else {
            Orientation::A
        });
    }
    Ok(inv)
}

/// Image of the multiplicity-side map W* -> S as a matrix whose columns span
/// the image (odd-n algebras).
fn s_image(alg: &SusyAlgebra, q: &Supercharge) -> Matrix {
    let m = &alg.block_matrices(q)[0];
    // Columns of m (indexed by W) span the image in S.
    m.clone()
}

fn isotropy_type_5d(alg: &SusyAlgebra, q: &Supercharge) -> IsotropyType {
    // The spin pairing on S restricted to the image of W* -> S: rank 0 means
    // Lagrangian, rank 2 symplectic.
    let img = s_image(alg, q);
    let (c, _) = s_form_between(alg, 0);
    let gram = &(&img.transpose() * &c) * &img;
    if gram.rank() == 0 {
        IsotropyType::Lagrangian
    } else {
        IsotropyType::Symplectic
    }
}

fn cross_pairing_6d(alg: &SusyAlgebra, q: &Supercharge) -> Scalar {
    // Image lines q+ in S+, q- in S-; pair them through the chirality-odd
    // scalar pairing block.
    let mats = alg.block_matrices(q);
    let qp = first_nonzero_column(&mats[0]);
    let qm = first_nonzero_column(&mats[1]);
    // The chirality-odd scalar pairing block realizes the S+ x S- duality.
    let (c, _) = s_form_between(alg, 0);
    let mut acc = Scalar::zero();
    for r in 0..qp.len() {
        for cc in 0..qm.len() {
            acc += &(&(&qp[r] * &qm[cc]) * c.get(r, cc));
        }
    }
    acc
}

fn first_nonzero_column(m: &Matrix) -> Vec<Scalar> {
    for c in 0..m.cols() {
        let col = m.column(c);
        if col.iter().any(|x| !x.is_zero()) {
            return col;
        }
    }
    vec![Scalar::zero(); m.rows()]
}

/// The raw volume ratio underlying the s-invariant: Q of rank (2,2) defines
/// an exact sequence 0 -> S+* -> W -> S- -> 0, and the determinant of a
/// basis adapted to it is compared against the spin volume of S-.
fn s_volume_ratio(alg: &SusyAlgebra, q: &Supercharge) -> Result<Scalar, SusyError> {
    let mats = alg.block_matrices(q);
    let mp = &mats[0]; // S+ (x) W: 2 x 4
    let mm = &mats[1]; // S- (x) W-: 2 x 4
    // phi: S+* -> W, columns are the images of the S+ basis functionals.
    let phi = mp.transpose(); // 4 x 2
    // psi: W -> S- through the multiplicity cross form.
    let hx = w_cross_form(alg); // wp x wm
    let psi = Matrix::from_fn(2, 4, |s, wcol| {
        let mut acc = Scalar::zero();
        for wm in 0..mm.cols() {
            acc += &(mm.get(s, wm) * hx.get(wcol, wm));
        }
        acc
    });
    // Complete im(phi) to a basis of W.
    let mut rows = vec![phi.column(0), phi.column(1)];
    let mut complement = Vec::new();
    for k in 0..4 {
        if complement.len() == 2 {
            break;
        }
        let mut e = vec![Scalar::zero(); 4];
        e[k] = Scalar::one();
        let test = Matrix::from_rows(
            rows.iter()
                .chain(complement.iter())
                .chain(std::iter::once(&e))
                .cloned()
                .collect(),
        );
        if test.rank() == rows.len() + complement.len() + 1 {
            complement.push(e);
        }
    }
    if complement.len() != 2 {
        return Err(SusyError::Unclassified);
    }
    let vol_w = Matrix::from_rows(vec![
        rows.remove(0),
        rows.remove(0),
        complement[0].clone(),
        complement[1].clone(),
    ])
    .det();
    // Spin volume of (psi(b1), psi(b2)) in S-.
    let (c_minus, _) = s_form_between(alg, 1);
    let p1 = psi.mul_vec(&complement[0]);
    let p2 = psi.mul_vec(&complement[1]);
    let mut vol_s_minus = Scalar::zero();
    for r in 0..2 {
        for cc in 0..2 {
            vol_s_minus += &(&(&p1[r] * &p2[cc]) * c_minus.get(r, cc));
        }
    }
    if vol_s_minus.is_zero() || vol_w.is_zero() {
        return Err(SusyError::Unclassified);
    }
    Ok(&vol_w / &vol_s_minus)
}

/// The continuous modulus of 4d N=4 rank (2,2) supercharges, normalized once
/// per algebra so the family u Q+ + i v Q- has invariant exactly -u^2/v^2.
fn s_invariant_4d(alg: &SusyAlgebra, q: &Supercharge) -> Result<Scalar, SusyError> {
    let raw = s_volume_ratio(alg, q)?;
    let reference = crate::reps::kw_family(alg, &Scalar::one(), &Scalar::one());
    let ref_raw = s_volume_ratio(alg, &reference)?;
    // s(reference) = -1.
    Ok(&(-Scalar::one()) * &(&raw / &ref_raw))
}

/// 3d orientation class. For N=4 this is the Lagrangian-family parity of the
/// image of Q in W relative to the splitting W = W4 + W4* inherited from the
/// 4d parent; for N=8 the component test on the annihilator filtration of
/// the R-symmetry Clifford module structure on W.
fn orientation_3d(alg: &SusyAlgebra, q: &Supercharge) -> Result<Orientation, SusyError> {
    match alg.label {
        SusyLabel::N(4) => {
            // Image of phi_Q: S* -> W = row span of the 2 x 4 block matrix.
            let m = &alg.block_matrices(q)[0];
            let w = m.cols();
            let half = w / 2;
            // dim(image /\ W4) where W4 = first half of the W-basis: vectors
            // in the row span with vanishing last-half coordinates.
            let lag = m.clone();
            // Solve x^T lag with last coords 0: kernel of the last-half
            // column block acting on row-combination coefficients.
            let tail = Matrix::from_fn(m.rows(), w - half, |r, c| m.get(r, half + c).clone());
            let inter_dim = tail.transpose().kernel_basis().cols();
            let _ = lag;
            Ok(if inter_dim % 2 == 1 {
                Orientation::B
            } else {
                Orientation::A
            })
        }
        SusyLabel::N(8) => orientation_3d_n8(alg, q),
        _ => Err(SusyError::Unclassified),
    }
}

/// Extract the action of a dropped direction on the multiplicity space W,
/// assuming the Sigma* <-> Sigma identification on the S-leg is uniform:
/// perp_rho(v) = tau (x) A_v. Returns A_v (w x w).
fn perp_w_action(alg: &SusyAlgebra, j: usize) -> Matrix {
    let b = &alg.model.blocks[0];
    let (sdim, w) = (b.s_dim, b.w_dim);
    let rho = &alg.perp_rho[j].0;
    // Find a reference S-entry: the first (sr, sc) with a nonzero w-block,
    // then A_v[wr][wc] = rho[(sr,wr),(sc,wc)] / tau[sr][sc]; tau is scaled so
    // its first nonzero entry is 1.
    for sr in 0..sdim {
        for sc in 0..sdim {
            let probe = rho.get(sr * w, sc * w).clone();
            let mut any = false;
            for wr in 0..w {
                for wc in 0..w {
                    if !rho.get(sr * w + wr, sc * w + wc).is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                continue;
            }
            let _ = probe;
            // tau normalized to 1 at (sr, sc): requires the (sr, sc) S-entry
            // of tau nonzero, which holds when some w-entry is nonzero.
            let a = Matrix::from_fn(w, w, |wr, wc| rho.get(sr * w + wr, sc * w + wc).clone());
            if a.is_zero() {
                continue;
            }
            return a;
        }
    }
    Matrix::zero(w, w)
}

fn orientation_3d_n8(alg: &SusyAlgebra, q: &Supercharge) -> Result<Orientation, SusyError> {
    // Write Q = s (x) w + s' (x) w' with rank 2; build the annihilator
    // filtration of w under the dropped-direction Clifford action on W and
    // test the component of w' one step below the top.
    let m = &alg.block_matrices(q)[0]; // 2 x 8
    if m.rank() != 2 {
        return Err(SusyError::Unclassified);
    }
    let w_legs = m.transpose(); // 8 x 2: columns w, w'
    let w0 = w_legs.column(0);
    let w1 = w_legs.column(1);
    let nperp = alg.perp_rho.len();
    let wdim = alg.model.blocks[0].w_dim;
    let actions: Vec<Matrix> = (0..nperp).map(|j| perp_w_action(alg, j)).collect();
    // L_w = { v in V7 : A_v w = 0 }: stack the columns A_j w.
    let stack = Matrix::from_fn(wdim, nperp, |r, c| {
        let av = actions[c].mul_vec(&w0);
        av[r].clone()
    });
    let lker = stack.kernel_basis(); // combinations of perp dirs annihilating w
    if lker.cols() != 3 {
        // w is not a top vector for any isotropic 3-plane; the generic
        // classifier cannot proceed.
        return Err(SusyError::Unclassified);
    }
    // Pieces of the filtration: P3 = C w; P2 = span{A_v w : all v}; P1 adds
    // quadratic action; P0 cubic. The special orbit has w' in P3 + P2 after
    // removing the P3-component.
    let mut p2: Vec<Vec<Scalar>> = vec![w0.clone()];
    for a in &actions {
        p2.push(a.mul_vec(&w0));
    }
    let p2_mat = Matrix::from_rows(p2.clone());
    // Test: is w' in the span of {w} + {A_v w}? That span is exactly
    // P3 + P2 (4-dimensional for a pure w).
    let with_w1 = {
        let mut rows = p2;
        rows.push(w1.clone());
        Matrix::from_rows(rows)
    };
    Ok(if with_w1.rank() == p2_mat.rank() {
        Orientation::B
    } else {
        Orientation::A
    })
}

// ---------------------------------------------------------------------------
// Classification.
// ---------------------------------------------------------------------------

/// Assign the orbit label of a square-zero supercharge. Errors with
/// `NotSquareZero` or `Unclassified` exactly as the name says.
pub fn classify(alg: &SusyAlgebra, q: &Supercharge) -> Result<OrbitLabel, SusyError> {
    let inv = orbit_invariants(alg, q)?;
    let d = inv.inv_dirs;
    let perp_zero = inv.perp_moments.iter().all(|m| m.is_zero());
    let (rp, rm) = (inv.rank_plus, inv.rank_minus);
    let hi = rp.max(rm);
    let lo = rp.min(rm);
    let orbit: &'static str = match (alg.n, alg.label) {
        (10, SusyLabel::Chiral(1, 0)) => "rank (1,0)",
        (9, SusyLabel::N(1)) => "rank 1",
        (8, SusyLabel::N(1)) => match d {
            4 => "rank (1,0) pure",
            5 => "rank (1,1)",
            8 => "rank (1,0) impure",
            _ => return Err(SusyError::Unclassified),
        },
        (7, SusyLabel::N(1)) => match d {
            4 => "rank 1 pure",
            5 => "rank 2",
            7 => "rank 1 impure",
            _ => return Err(SusyError::Unclassified),
        },
        (6, SusyLabel::Chiral(1, 1)) => match d {
            3 => "rank (1,0)",
            4 => "rank (1,1) special",
            5 => "rank (2,2)",
            6 => "rank (1,1) generic",
            _ => return Err(SusyError::Unclassified),
        },
        (6, SusyLabel::Chiral(1, 0)) => "rank (1,0)",
        (5, SusyLabel::N(2)) => match (d, hi) {
            (3, _) => "rank 1",
            (4, _) => "rank 2 special",
            (5, 2) => "rank 2 generic",
            (5, 4) => "rank 4",
            _ => return Err(SusyError::Unclassified),
        },
        (5, SusyLabel::N(1)) => "rank 1",
        (4, SusyLabel::N(4)) => match (d, hi, lo) {
            (2, _, _) => "rank (1,0)",
            (3, _, _) => "rank (1,1)",
            (4, 2, 0) => "rank (2,0)",
            (4, 2, 1) => "rank (2,1)",
            (4, 2, 2) => {
                let s = inv.s_invariant.clone().ok_or(SusyError::Unclassified)?;
                if s == Scalar::one() {
                    "rank (2,2) special"
                } else {
                    "rank (2,2) generic"
                }
            }
            _ => return Err(SusyError::Unclassified),
        },
        (4, SusyLabel::N(2)) => match d {
            2 => "rank (1,0)",
            3 => "rank (1,1)",
            4 => "rank (2,0)",
            _ => return Err(SusyError::Unclassified),
        },
        (4, SusyLabel::N(1)) => "rank (1,0)",
        (3, SusyLabel::N(8)) | (3, SusyLabel::N(4)) => match (d, inv.orientation) {
            (2, _) => "rank 1",
            (3, Some(Orientation::B)) => "rank 2 (B)",
            (3, Some(Orientation::A)) => "rank 2 (A)",
            _ => return Err(SusyError::Unclassified),
        },
        (3, SusyLabel::N(2)) => "rank 1",
        (2, SusyLabel::Chiral(p, m)) if m == p && p > 1 => match (d, inv.orientation) {
            (1, _) => "rank (1,0)",
            (2, Some(Orientation::B)) => "rank (1,1) (B)",
            (2, Some(Orientation::A)) => "rank (1,1) (A)",
            _ => return Err(SusyError::Unclassified),
        },
        (2, SusyLabel::Chiral(_, 0)) => "rank (1,0)",
        _ => return Err(SusyError::Unclassified),
    };
    let _ = perp_zero;
    let row = golden_row(alg.n, alg.label, orbit).ok_or(SusyError::Unclassified)?;
    if row.inv_dirs != d {
        return Err(SusyError::Unclassified);
    }
    Ok(row)
}
