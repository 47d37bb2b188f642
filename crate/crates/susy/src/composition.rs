//! The four complexified composition algebras: C, C[x]/(x^2+1), the
//! quaternions and the octonions, each with its antiinvolution, real-part
//! projector and multiplicative norm.

use crate::SusyError;
use twistkit_exact::{Matrix, Scalar};

/// Which of the four algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// C itself, dimension 1.
    C,
    /// C[x]/(x^2+1) with sigma(x) = -x, dimension 2.
    CxC,
    /// Complexified quaternions, dimension 4.
    H,
    /// Complexified octonions, dimension 8.
    O,
}

impl AlgebraKind {
    pub fn dim(self) -> usize {
        match self {
            AlgebraKind::C => 1,
            AlgebraKind::CxC => 2,
            AlgebraKind::H => 4,
            AlgebraKind::O => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::C => "C",
            AlgebraKind::CxC => "CxC",
            AlgebraKind::H => "H",
            AlgebraKind::O => "O",
        }
    }

    pub fn parse(s: &str) -> Result<Self, SusyError> {
        match s {
            "C" => Ok(AlgebraKind::C),
            "CxC" => Ok(AlgebraKind::CxC),
            "H" => Ok(AlgebraKind::H),
            "O" => Ok(AlgebraKind::O),
            _ => Err(SusyError::Unsupported(format!("unknown algebra {s:?}"))),
        }
    }
}

/// Fano-plane triples fixing the octonion convention: for each cyclic triple
/// (a, b, c) we set e_a e_b = e_c, and e_i^2 = -1 for i = 1..7.
pub const FANO_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 7],
    [5, 6, 1],
    [6, 7, 2],
    [7, 1, 3],
];

/// A unital algebra with antiinvolution given by explicit structure constants.
#[derive(Clone)]
pub struct CompositionAlgebra {
    pub kind: AlgebraKind,
    pub dim: usize,
    /// `table[a][b]` is the coefficient vector of `e_a * e_b`.
    table: Vec<Vec<Vec<Scalar>>>,
    /// Matrix of the antiinvolution in the chosen basis.
    pub sigma: Matrix,
    pub unit_index: usize,
}

/// Element of a composition algebra: a coefficient vector over Q(i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    pub kind: AlgebraKind,
    pub coeffs: Vec<Scalar>,
}

impl CompositionAlgebra {
    /// Build one of the four algebras with the conventions fixed above.
    pub fn new(kind: AlgebraKind) -> Self {
        let dim = kind.dim();
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        let mut set = |a: usize, b: usize, c: usize, sign: i64| {
            table[a][b][c] = Scalar::from_int(sign);
        };
        match kind {
            AlgebraKind::C => set(0, 0, 0, 1),
            AlgebraKind::CxC => {
                set(0, 0, 0, 1);
                set(0, 1, 1, 1);
                set(1, 0, 1, 1);
                set(1, 1, 0, -1);
            }
            AlgebraKind::H => {
                // Basis (1, i, j, k) with ij = k, jk = i, ki = j.
                for a in 0..4 {
                    set(0, a, a, 1);
                    if a > 0 {
                        set(a, 0, a, 1);
                        set(a, a, 0, -1);
                    }
                }
                for [a, b, c] in [[1usize, 2, 3], [2, 3, 1], [3, 1, 2]] {
                    set(a, b, c, 1);
                    set(b, a, c, -1);
                }
            }
            AlgebraKind::O => {
                for a in 0..8 {
                    set(0, a, a, 1);
                    if a > 0 {
                        set(a, 0, a, 1);
                        set(a, a, 0, -1);
                    }
                }
                for tri in FANO_TRIPLES {
                    for r in 0..3 {
                        let a = tri[r];
                        let b = tri[(r + 1) % 3];
                        let c = tri[(r + 2) % 3];
                        set(a, b, c, 1);
                        set(b, a, c, -1);
                    }
                }
            }
        }
        // sigma fixes the unit and negates every other basis element.
        let sigma = Matrix::from_fn(dim, dim, |r, c| {
            if r == c {
                Scalar::from_int(if r == 0 { 1 } else { -1 })
            } else {
                Scalar::zero()
            }
        });
        CompositionAlgebra {
            kind,
            dim,
            table,
            sigma,
            unit_index: 0,
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            kind: self.kind,
            coeffs: vec![Scalar::zero(); self.dim],
        }
    }

    pub fn unit(&self) -> AlgebraElement {
        self.basis(self.unit_index)
    }

    pub fn basis(&self, k: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coeffs[k] = Scalar::one();
        e
    }

    pub fn element(&self, coeffs: Vec<Scalar>) -> AlgebraElement {
        assert_eq!(coeffs.len(), self.dim);
        AlgebraElement {
            kind: self.kind,
            coeffs,
        }
    }

    pub fn scalar(&self, c: Scalar) -> AlgebraElement {
        let mut e = self.zero();
        e.coeffs[self.unit_index] = c;
        e
    }

    /// Bilinear product in the fixed basis. Order matters for the octonions.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        assert_eq!(a.kind, self.kind, "element from a different algebra");
        assert_eq!(b.kind, self.kind, "element from a different algebra");
        let mut out = self.zero();
        for (p, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (q, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let coef = ca * cb;
                for (r, s) in self.table[p][q].iter().enumerate() {
                    if !s.is_zero() {
                        let v = &out.coeffs[r] + &(&coef * s);
                        out.coeffs[r] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            kind: self.kind,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            kind: self.kind,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, a: &AlgebraElement, s: &Scalar) -> AlgebraElement {
        AlgebraElement {
            kind: self.kind,
            coeffs: a.coeffs.iter().map(|x| x * s).collect(),
        }
    }

    /// The antiinvolution.
    pub fn apply_sigma(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            kind: self.kind,
            coeffs: self.sigma.mul_vec(&a.coeffs),
        }
    }

    /// Re(x) = (x + sigma(x))/2, landing on the unit line.
    pub fn re(&self, a: &AlgebraElement) -> AlgebraElement {
        let s = self.apply_sigma(a);
        let sum = self.add(a, &s);
        self.scale(&sum, &Scalar::ratio(1, 2))
    }

    /// Scalar coefficient of Re(x) on the unit.
    pub fn re_scalar(&self, a: &AlgebraElement) -> Scalar {
        self.re(a).coeffs[self.unit_index].clone()
    }

    /// N(x): the coefficient of x*sigma(x) on the unit. Panics if x*sigma(x)
    /// ever leaves the unit line, which would falsify the algebra data.
    pub fn norm(&self, a: &AlgebraElement) -> Scalar {
        let prod = self.mul(a, &self.apply_sigma(a));
        for (k, c) in prod.coeffs.iter().enumerate() {
            if k != self.unit_index {
                assert!(c.is_zero(), "norm left the unit line");
            }
        }
        prod.coeffs[self.unit_index].clone()
    }

    /// The symmetric bilinear form <x, y> = Re(x sigma(y)).
    pub fn bilinear(&self, a: &AlgebraElement, b: &AlgebraElement) -> Scalar {
        self.re_scalar(&self.mul(a, &self.apply_sigma(b)))
    }

    /// Associator (ab)c - a(bc).
    pub fn associator(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
        c: &AlgebraElement,
    ) -> AlgebraElement {
        let left = self.mul(&self.mul(a, b), c);
        let right = self.mul(a, &self.mul(b, c));
        self.sub(&left, &right)
    }

    /// Idempotent splitting of C[x]/(x^2+1): e_pm = (1 -+ i x)/2.
    pub fn idempotents(&self) -> Result<(AlgebraElement, AlgebraElement), SusyError> {
        if self.kind != AlgebraKind::CxC {
            return Err(SusyError::Unsupported(
                "idempotent splitting only defined for CxC".into(),
            ));
        }
        let half = Scalar::ratio(1, 2);
        let half_i = &half * &Scalar::i();
        let e_plus = self.element(vec![half.clone(), -&half_i]);
        let e_minus = self.element(vec![half, half_i]);
        Ok((e_plus, e_minus))
    }

    /// The 8x8 multiplication table as `(index, sign)` pairs, for audit.
    pub fn table_entries(&self) -> Vec<Vec<(usize, i64)>> {
        (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .map(|b| {
                        let row = &self.table[a][b];
                        let k = row.iter().position(|c| !c.is_zero()).expect("empty product");
                        let sign = if row[k] == Scalar::one() { 1 } else { -1 };
                        (k, sign)
                    })
                    .collect()
            })
            .collect()
    }
}

/// The quaternions presented as 2x2 matrices End(W+) over a symplectic W+:
/// returns the four images of (1, i, j, k) and checks nothing.
pub fn quaternion_matrix_presentation() -> [Matrix; 4] {
    let i = Scalar::i();
    let one = Matrix::identity(2);
    // i -> i*sigma3, j -> [[0,1],[-1,0]], k -> i*sigma1.
    let mi = Matrix::from_rows(vec![
        vec![i.clone(), Scalar::zero()],
        vec![Scalar::zero(), -&i],
    ]);
    let mj = Matrix::from_rows(vec![
        vec![Scalar::zero(), Scalar::one()],
        vec![Scalar::from_int(-1), Scalar::zero()],
    ]);
    let mk = Matrix::from_rows(vec![
        vec![Scalar::zero(), i.clone()],
        vec![i, Scalar::zero()],
    ]);
    [one, mi, mj, mk]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rand_elt(alg: &CompositionAlgebra, rng: &mut impl Rng) -> AlgebraElement {
        alg.element(
            (0..alg.dim)
                .map(|_| Scalar::complex(rng.gen_range(-3..4), rng.gen_range(-3..4), 1))
                .collect(),
        )
    }

    fn all_algebras() -> Vec<CompositionAlgebra> {
        [AlgebraKind::C, AlgebraKind::CxC, AlgebraKind::H, AlgebraKind::O]
            .into_iter()
            .map(CompositionAlgebra::new)
            .collect()
    }

    #[test]
    fn unit_law_and_sigma() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for alg in all_algebras() {
            let one = alg.unit();
            for _ in 0..10 {
                let x = rand_elt(&alg, &mut rng);
                assert_eq!(alg.mul(&one, &x), x);
                assert_eq!(alg.mul(&x, &one), x);
                assert_eq!(alg.apply_sigma(&alg.apply_sigma(&x)), x);
            }
            assert_eq!(alg.apply_sigma(&one), one);
            for k in 1..alg.dim {
                let e = alg.basis(k);
                assert_eq!(alg.apply_sigma(&e), alg.scale(&e, &Scalar::from_int(-1)));
                assert_eq!(alg.norm(&e), Scalar::one());
            }
        }
    }

    #[test]
    fn sigma_is_antiinvolution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for alg in all_algebras() {
            for _ in 0..15 {
                let x = rand_elt(&alg, &mut rng);
                let y = rand_elt(&alg, &mut rng);
                let lhs = alg.apply_sigma(&alg.mul(&x, &y));
                let rhs = alg.mul(&alg.apply_sigma(&y), &alg.apply_sigma(&x));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn re_is_projector_onto_unit_line() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for alg in all_algebras() {
            for _ in 0..10 {
                let x = rand_elt(&alg, &mut rng);
                let r = alg.re(&x);
                for (k, c) in r.coeffs.iter().enumerate() {
                    if k != alg.unit_index {
                        assert!(c.is_zero());
                    }
                }
                assert_eq!(alg.re(&r), r);
            }
        }
    }

    #[test]
    fn composition_law_random_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for alg in all_algebras() {
            for _ in 0..50 {
                let x = rand_elt(&alg, &mut rng);
                let y = rand_elt(&alg, &mut rng);
                let lhs = alg.norm(&alg.mul(&x, &y));
                let rhs = &alg.norm(&x) * &alg.norm(&y);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn associativity_and_alternativity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for alg in all_algebras() {
            if alg.dim < 8 {
                for _ in 0..10 {
                    let a = rand_elt(&alg, &mut rng);
                    let b = rand_elt(&alg, &mut rng);
                    let c = rand_elt(&alg, &mut rng);
                    assert!(alg.associator(&a, &b, &c).coeffs.iter().all(|x| x.is_zero()));
                }
            } else {
                // Alternator is totally antisymmetric: vanishing on equal
                // arguments in each slot pair, over all basis triples.
                for a in 0..8 {
                    for b in 0..8 {
                        let ea = alg.basis(a);
                        let eb = alg.basis(b);
                        assert!(alg
                            .associator(&ea, &ea, &eb)
                            .coeffs
                            .iter()
                            .all(|x| x.is_zero()));
                        assert!(alg
                            .associator(&ea, &eb, &eb)
                            .coeffs
                            .iter()
                            .all(|x| x.is_zero()));
                        assert!(alg
                            .associator(&ea, &eb, &ea)
                            .coeffs
                            .iter()
                            .all(|x| x.is_zero()));
                    }
                }
                // And a genuinely nonzero associator exists.
                let e1 = alg.basis(1);
                let e2 = alg.basis(2);
                let e3 = alg.basis(3);
                assert!(!alg.associator(&e1, &e2, &e3).coeffs.iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn quaternion_table_convention() {
        let h = CompositionAlgebra::new(AlgebraKind::H);
        let i = h.basis(1);
        let j = h.basis(2);
        let k = h.basis(3);
        assert_eq!(h.mul(&i, &j), k);
        assert_eq!(h.mul(&j, &i), h.scale(&k, &Scalar::from_int(-1)));
        assert_eq!(&h.norm(&h.mul(&i, &j)), &(&h.norm(&i) * &h.norm(&j)));
    }

    #[test]
    fn octonion_fano_convention() {
        let o = CompositionAlgebra::new(AlgebraKind::O);
        let e1 = o.basis(1);
        let e2 = o.basis(2);
        assert_eq!(o.mul(&e1, &e2), o.basis(4));
        assert_eq!(o.mul(&e2, &e1), o.scale(&o.basis(4), &Scalar::from_int(-1)));
    }

    #[test]
    fn bilinear_form_nondegenerate() {
        for alg in all_algebras() {
            let g = Matrix::from_fn(alg.dim, alg.dim, |r, c| {
                alg.bilinear(&alg.basis(r), &alg.basis(c))
            });
            assert_eq!(g.rank(), alg.dim);
            assert_eq!(g, g.transpose());
        }
    }

    #[test]
    fn cxc_idempotents() {
        let a = CompositionAlgebra::new(AlgebraKind::CxC);
        let (p, m) = a.idempotents().unwrap();
        assert_eq!(a.mul(&p, &p), p);
        assert_eq!(a.mul(&m, &m), m);
        assert!(a.mul(&p, &m).coeffs.iter().all(|x| x.is_zero()));
        assert_eq!(a.add(&p, &m), a.unit());
    }

    #[test]
    fn quaternions_match_matrix_presentation() {
        // The map (1,i,j,k) -> 2x2 matrices is an algebra isomorphism
        // respecting sigma (matrix sigma is M -> tr(M) - M).
        let h = CompositionAlgebra::new(AlgebraKind::H);
        let mats = quaternion_matrix_presentation();
        for a in 0..4 {
            for b in 0..4 {
                let prod = h.mul(&h.basis(a), &h.basis(b));
                let mut expect = Matrix::zero(2, 2);
                for (k, c) in prod.coeffs.iter().enumerate() {
                    expect = &expect + &mats[k].scale(c);
                }
                assert_eq!(&mats[a] * &mats[b], expect, "structure constants differ at ({a},{b})");
            }
            let sig = h.apply_sigma(&h.basis(a));
            let mut expect = Matrix::zero(2, 2);
            for (k, c) in sig.coeffs.iter().enumerate() {
                expect = &expect + &mats[k].scale(c);
            }
            let m = &mats[a];
            let tr_minus = &Matrix::identity(2).scale(&m.trace()) - m;
            assert_eq!(tr_minus, expect);
        }
    }

    #[test]
    fn norm_of_products_500_pairs_each() {
        // The acceptance-level sample count, kept here as well since it is
        // cheap: 500 random pairs per algebra.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for alg in all_algebras() {
            for _ in 0..500 {
                let x = rand_elt(&alg, &mut rng);
                let y = rand_elt(&alg, &mut rng);
                assert_eq!(alg.norm(&alg.mul(&x, &y)), &alg.norm(&x) * &alg.norm(&y));
            }
        }
    }
}
