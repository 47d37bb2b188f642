// Test: (Gamma(Q,lam) phi, X)_form = (lam phi, rho(X) Q)_mp for the correct
// matter-pairing variant mp. All quantities random; X in V (x) P.
use twistkit_exact::{Matrix, Scalar};
use twistkit_susy::clifford::{build_gamma_model, symmetric_form, Multiplicity, WPairing};
use rand::{Rng, SeedableRng};

fn main() {
    let model = build_gamma_model(4, &Multiplicity{
        wplus_dim: 1, wminus_dim: 1,
        pairing: WPairing::Cross { hx: symmetric_form(1) },
    }).unwrap();
    let gamma = model.gamma_pairing();
    let ds = model.dim_sigma;
    let pdim = 2usize; // P = R + R*, R = C charge 1
    let mut form = Matrix::zero(2, 2);
    form.set(0, 1, Scalar::one());
    form.set(1, 0, Scalar::one());
    let act = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
    let xp = |p: usize| -> i64 { if p == 0 { 1 } else { -1 } };
    let xs = |alpha: usize| -> i64 { if alpha < 2 { 1 } else { -1 } };
    let xstar = |beta: usize| -> i64 { if beta < 2 { 1 } else { -1 } };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut rv = |n: usize| -> Vec<Scalar> {
        (0..n).map(|_| Scalar::complex(rng.gen_range(-2..3), rng.gen_range(-2..3), 1)).collect()
    };
    // lam: Sigma-indexed (g = abelian, one component); phi: P; Q: Sigma; X: V x P.
    let lam = rv(ds);
    let phi = rv(pdim);
    let q = rv(ds);
    let xv: Vec<Vec<Scalar>> = (0..4).map(|_| rv(pdim)).collect();
    // LHS.
    let mut lhs = Scalar::zero();
    for i in 0..4 {
        let mut g = Scalar::zero();
        for ga in 0..ds { for al in 0..ds {
            let c = gamma.gamma_plus[i].get(ga, al);
            if !c.is_zero() { g += &(&(&q[ga] * &lam[al]) * c); }
        }}
        // form(act phi, X_i)
        let mut cur = Scalar::zero();
        for p in 0..pdim {
            let mut ap = Scalar::zero();
            for pp in 0..pdim { ap += &(act.get(p, pp) * &phi[pp]); }
            for qq in 0..pdim { cur += &(&(&ap * &xv[i][qq]) * form.get(p, qq)); }
        }
        lhs += &(&g * &cur);
    }
    // RHS variants: sum_i sum-slots w(al,p,be,qq) B[al][be] form[p][qq] (lam phi)^{al p} (rho_i[be][ga] Q^ga X_i^qq)
    // with weight variants.
    for variant in 0..6 {
        let mut rhs = Scalar::zero();
        for i in 0..4 {
            for al in 0..ds { for be in 0..ds {
                let b = model.pair.get(al, be);
                if b.is_zero() { continue; }
                for p in 0..pdim { for qq in 0..pdim {
                    let f = form.get(p, qq);
                    if f.is_zero() { continue; }
                    let w: Scalar = match variant {
                        0 => Scalar::one(),
                        1 => Scalar::from_int(((1 - xp(p) * xs(al)) / 1) as i64), // 1 - lam_p lam_al
                        2 => Scalar::from_int(((1 + xp(p) * xs(al)) / 1) as i64),
                        3 => Scalar::from_int((1 - xp(qq) * xstar(be)) as i64),
                        4 => Scalar::from_int((1 + xp(qq) * xstar(be)) as i64),
                        _ => &Scalar::i() * &Scalar::from_int(xp(p) as i64), // i * x_P twist
                    };
                    if w.is_zero() { continue; }
                    let mut rq = Scalar::zero();
                    for ga in 0..ds {
                        let r = model.rho_plus[i].get(be, ga);
                        if !r.is_zero() { rq += &(r * &q[ga]); }
                    }
                    let term = &(&(&(&lam[al] * &phi[p]) * &rq) * &xv[i][qq]) * &(&(b * f) * &w);
                    rhs += &term;
                }}
            }}
        }
        if rhs == lhs { println!("variant {variant}: EQUAL"); }
        else if !rhs.is_zero() {
            let r = &lhs / &rhs;
            println!("variant {variant}: ratio {r}");
        } else {
            println!("variant {variant}: rhs = 0");
        }
    }
}
