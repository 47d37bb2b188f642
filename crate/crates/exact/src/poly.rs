//! Multivariate polynomials over Q(i) with a fixed graded-lexicographic
//! monomial order, plus the small Buchberger closure used to solve the
//! quadratic systems coming from square-zero constraints.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; index = variable, value = exponent.
pub type Exponents = Vec<u32>;

fn grlex_cmp(a: &Exponents, b: &Exponents) -> std::cmp::Ordering {
    let ta: u32 = a.iter().sum();
    let tb: u32 = b.iter().sum();
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

/// Polynomial in finitely many commuting variables with `GaussianRational`
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars);
        let mut e = vec![0; nvars];
        e[k] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(e, Scalar::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }

    /// Evaluate at a full point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t *= &point[k];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `k`.
    pub fn derivative(&self, k: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[k] -= 1;
            out.insert(e2, c.scale_int(e[k] as i64));
        }
        out
    }

    /// Leading term in graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (k, (e, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})")?;
                for (v, &exp) in e.iter().enumerate() {
                    if exp == 1 {
                        write!(f, "*{}", self.names[v])?;
                    } else if exp > 1 {
                        write!(f, "*{}^{}", self.names[v], exp)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|k| format!("x{k}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

/// Outcome of solving a small polynomial system exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyDescription {
    /// The only common zero is the origin.
    OnlyZero,
    /// Every point of the ambient space is a solution (zero system).
    WholeSpace,
    /// A positive-dimensional or otherwise nontrivial solution set, described
    /// by a reduced Groebner basis in graded-lex order.
    Positive { groebner_basis: Vec<MultiPoly> },
}

/// Divide `p` by the leading terms of `basis`, returning the remainder.
fn reduce(p: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut rem = MultiPoly::zero(p.nvars());
    let mut work = p.clone();
    'outer: while let Some((le, lc)) = work.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
        for g in basis {
            let Some((ge, gc)) = g.leading_term() else {
                continue;
            };
            if ge.iter().zip(&le).all(|(a, b)| a <= b) {
                let quot_exp: Exponents = le.iter().zip(ge).map(|(a, b)| a - b).collect();
                let mut mono = MultiPoly::zero(p.nvars());
                mono.terms.insert(quot_exp, &lc / gc);
                work = work.sub(&mono.mul(g));
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder.
        let mut mono = MultiPoly::zero(p.nvars());
        mono.terms.insert(le.clone(), lc.clone());
        rem = rem.add(&mono);
        work = work.sub(&mono);
    }
    rem
}

fn lcm_exp(a: &Exponents, b: &Exponents) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Buchberger's algorithm for the small quadratic systems arising from
/// square-zero constraints. Not intended for large ideals.
pub fn groebner_basis(gens: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return basis;
    }
    let nvars = basis[0].nvars();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (le_i, lc_i) = {
            let (e, c) = basis[i].leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let (le_j, lc_j) = {
            let (e, c) = basis[j].leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let lcm = lcm_exp(&le_i, &le_j);
        // Coprime leading monomials produce a reducible S-polynomial.
        if lcm.iter().zip(le_i.iter().zip(&le_j)).all(|(l, (a, b))| *l == a + b) {
            continue;
        }
        let mut mono_i = MultiPoly::zero(nvars);
        mono_i.terms.insert(
            lcm.iter().zip(&le_i).map(|(a, b)| a - b).collect(),
            Scalar::one() / lc_i,
        );
        let mut mono_j = MultiPoly::zero(nvars);
        mono_j.terms.insert(
            lcm.iter().zip(&le_j).map(|(a, b)| a - b).collect(),
            Scalar::one() / lc_j,
        );
        let s_poly = mono_i.mul(&basis[i]).sub(&mono_j.mul(&basis[j]));
        let rem = reduce(&s_poly, &basis);
        if !rem.is_zero() {
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(rem);
        }
    }
    // Autoreduce: repeatedly replace each element by its remainder against
    // the rest of the current basis, dropping elements that reduce to zero.
    loop {
        let mut changed = false;
        let mut k = 0;
        while k < basis.len() {
            let g = basis[k].clone();
            let others: Vec<MultiPoly> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, h)| h.clone())
                .collect();
            let r = reduce(&g, &others);
            if r.is_zero() {
                basis.remove(k);
                changed = true;
            } else {
                if r != g {
                    changed = true;
                }
                basis[k] = r;
                k += 1;
            }
        }
        if !changed {
            break;
        }
    }
    for g in &mut basis {
        let lc = g.leading_term().unwrap().1.clone();
        *g = g.scale(&lc.recip());
    }
    basis.sort_by(|a, b| grlex_cmp(a.leading_term().unwrap().0, b.leading_term().unwrap().0));
    basis.dedup();
    basis
}

/// Decide the shape of the solution set of a polynomial system.
///
/// For the homogeneous quadratic systems used here, the origin is the only
/// solution exactly when every variable appears as a pure power among the
/// leading terms of a Groebner basis.
pub fn describe_variety(gens: &[MultiPoly]) -> VarietyDescription {
    if gens.iter().all(|g| g.is_zero()) {
        return VarietyDescription::WholeSpace;
    }
    let nvars = gens[0].nvars();
    let gb = groebner_basis(gens);
    let mut covered = vec![false; nvars];
    for g in &gb {
        let (e, _) = g.leading_term().unwrap();
        let support: Vec<usize> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(k, _)| k)
            .collect();
        if support.len() == 1 {
            covered[support[0]] = true;
        }
    }
    if covered.iter().all(|&c| c) {
        VarietyDescription::OnlyZero
    } else {
        VarietyDescription::Positive { groebner_basis: gb }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rand_poly(rng: &mut impl Rng, nvars: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for _ in 0..rng.gen_range(1..6) {
            let e: Exponents = (0..nvars).map(|_| rng.gen_range(0..3)).collect();
            p.insert(e, Scalar::complex(rng.gen_range(-3..4), rng.gen_range(-3..4), 1));
        }
        p
    }

    #[test]
    fn ring_laws_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..25 {
            let a = rand_poly(&mut rng, 3);
            let b = rand_poly(&mut rng, 3);
            let c = rand_poly(&mut rng, 3);
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            // Evaluation is a ring homomorphism.
            let pt: Vec<Scalar> = (0..3)
                .map(|_| Scalar::complex(rng.gen_range(-2..3), rng.gen_range(-2..3), 1))
                .collect();
            assert_eq!(a.mul(&b).eval(&pt), &a.eval(&pt) * &b.eval(&pt));
            assert_eq!(a.add(&b).eval(&pt), &a.eval(&pt) + &b.eval(&pt));
        }
    }

    #[test]
    fn groebner_only_zero() {
        // x^2, x*y, y^2: origin only.
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let gens = vec![x.mul(&x), x.mul(&y), y.mul(&y)];
        assert_eq!(describe_variety(&gens), VarietyDescription::OnlyZero);
    }

    #[test]
    fn groebner_positive_dimensional() {
        // x*y alone: the two coordinate axes survive.
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let gens = vec![x.mul(&y)];
        assert!(matches!(
            describe_variety(&gens),
            VarietyDescription::Positive { .. }
        ));
    }

    #[test]
    fn groebner_whole_space() {
        let gens = vec![MultiPoly::zero(3), MultiPoly::zero(3)];
        assert_eq!(describe_variety(&gens), VarietyDescription::WholeSpace);
    }

    #[test]
    fn groebner_nontrivial_elimination() {
        // x + y and x^2: forces x = y = 0.
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let gens = vec![x.add(&y), x.mul(&x)];
        assert_eq!(describe_variety(&gens), VarietyDescription::OnlyZero);
    }
}
