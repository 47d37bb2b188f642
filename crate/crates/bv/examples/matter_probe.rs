use std::collections::BTreeMap;
use twistkit_bv::jet::*;
use twistkit_bv::sym::*;
use twistkit_exact::{Matrix, Scalar};

fn euler_stack(th: &mut SymTheory, p: &JetPoly) -> BTreeMap<(u32, Vec<u32>), Scalar> {
    let mut col = BTreeMap::new();
    for comp in p.support_components(&th.ring) {
        let e = euler_left(p, comp, &mut th.ring).unwrap();
        for (mm, c) in e.terms() {
            col.insert((comp, mm.clone()), c.clone());
        }
    }
    col
}

fn main() {
    let l = lie_abelian();
    let m = matter_fundamental_pair(&l);
    let mut th = build_sym(SymConfig::FourD, l, Some(m)).unwrap();
    th.tuning = MatterTuning { f_lpp: SlotFilter::All, f_qpsi: SlotFilter::All, f_rdphi: SlotFilter::All };
    let base = th.action();
    let lpp00 = th.lam_phi_psi_term(false, false);
    let lpp01 = th.lam_phi_psi_term(false, true);
    let lpp10 = th.lam_phi_psi_term(true, false);
    let lpp11 = th.lam_phi_psi_term(true, true);
    let rest_plus_dirac = base.sub(&lpp00);
    // Separate dirac so its coefficient is adjustable.
    let mut dirac = JetPoly::zero();
    let mut rest = JetPoly::zero();
    for (mm, c) in rest_plus_dirac.terms() {
        let names: Vec<String> = mm.iter().map(|&v| th.ring.var_name(v)).collect();
        let n_psi = names.iter().filter(|n| n.starts_with("psi") && !n.contains('*')).count();
        let mut q = JetPoly::zero();
        q.insert_term(mm.clone(), c.clone());
        if n_psi == 2 && !names.iter().any(|n| n.contains('*')) { dirac.add_assign(&q); } else { rest.add_assign(&q); }
    }
    let q1 = th.q_vec(0);
    // Fixed gauge S1.
    let s1_full = th.s1_of(&q1);
    let mut s1_gauge = JetPoly::zero();
    for (mm, c) in s1_full.terms() {
        let names: Vec<String> = mm.iter().map(|&v| th.ring.var_name(v)).collect();
        if names.iter().any(|n| (n.starts_with("phi") || n.starts_with("psi")) && n.contains('*')) { continue; }
        let mut q = JetPoly::zero();
        q.insert_term(mm.clone(), c.clone());
        s1_gauge.add_assign(&q);
    }
    let t_terms = [
        th.qpsi_phistar_term(&q1, false),
        th.qpsi_phistar_term(&q1, true),
        th.rdphi_psistar_term(&q1, false),
        th.rdphi_psistar_term(&q1, true),
    ];
    let p_terms = [dirac, lpp00, lpp01, lpp10, lpp11];
    // Affine system: {rest, gauge} + sum z_l {rest, T_l} + sum y_k {P_k, gauge} + sum w_kl {P_k, T_l} = 0.
    let mut cols: Vec<BTreeMap<(u32, Vec<u32>), Scalar>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (lx, t) in t_terms.iter().enumerate() {
        let b = bv_bracket(&rest, t, &mut th.ring).unwrap();
        cols.push(euler_stack(&mut th, &b));
        labels.push(format!("z{lx}"));
    }
    for (k, pterm) in p_terms.iter().enumerate() {
        let b = bv_bracket(pterm, &s1_gauge, &mut th.ring).unwrap();
        cols.push(euler_stack(&mut th, &b));
        labels.push(format!("y{k}"));
    }
    for (k, pterm) in p_terms.iter().enumerate() {
        for (lx, t) in t_terms.iter().enumerate() {
            let b = bv_bracket(pterm, t, &mut th.ring).unwrap();
            cols.push(euler_stack(&mut th, &b));
            labels.push(format!("w{k}{lx}"));
        }
    }
    let b0 = bv_bracket(&rest, &s1_gauge, &mut th.ring).unwrap();
    let rhs_map = euler_stack(&mut th, &b0);
    let mut keys: Vec<(u32, Vec<u32>)> = rhs_map.keys().cloned().collect();
    for col in &cols { for k in col.keys() { if !keys.contains(k) { keys.push(k.clone()); } } }
    let a = Matrix::from_fn(keys.len(), cols.len(), |r, c| cols[c].get(&keys[r]).cloned().unwrap_or_else(Scalar::zero));
    let b = Matrix::from_fn(keys.len(), 1, |r, _| rhs_map.get(&keys[r]).map(|x| -x).unwrap_or_else(Scalar::zero));
    println!("system {} x {}", a.rows(), a.cols());
    match a.solve(&b) {
        Ok(x) => {
            for r in 0..a.cols() {
                let v = x.get(r, 0);
                if !v.is_zero() { println!("  {} = {}", labels[r], v); }
            }
            println!("solution found; kernel dim {}", a.kernel_basis().cols());
        }
        Err(e) => {
            println!("no solution: {e}");
            // Localize: rref of [A|b]; the pivot in the last column marks the
            // unsatisfiable combination. Reconstruct which monomial rows feed it.
            let aug = a.hstack(&b);
            let (r, pivots) = aug.rref();
            if let Some(bad_row) = pivots.iter().position(|&p| p == a.cols()) {
                println!("inconsistent constraint from rref row {bad_row}:");
                // Find original keys with nonzero weight in that rref row by
                // re-solving: too costly; instead list keys where b is nonzero
                // but all columns are zero.
                for (kidx, key) in keys.iter().enumerate() {
                    let all_zero = (0..a.cols()).all(|c| a.get(kidx, c).is_zero());
                    if all_zero && !b.get(kidx, 0).is_zero() {
                        let (comp, mono) = key;
                        let names: Vec<String> = mono.iter().map(|&v| th.ring.var_name(v)).collect();
                        println!("  unreachable: E_{} monomial {} coeff {}",
                            th.ring.components[*comp as usize].name, names.join("*"), b.get(kidx, 0));
                    }
                }
                let _ = r;
            }
        }
    }
}
