use twistkit_bv::sym::*;

fn run(tag: &str, config: SymConfig, lie: LieData, matter: Option<MatterData>) {
    let t0 = std::time::Instant::now();
    let mut th = match build_sym(config, lie, matter) {
        Ok(t) => t,
        Err(e) => { println!("{tag}: build error {e}"); return; }
    };
    match verify_cme(&mut th) {
        Ok(checks) => {
            let all = checks.iter().all(|c| c.residual_zero);
            let fails: Vec<&str> = checks.iter().filter(|c| !c.residual_zero).map(|c| c.name.as_str()).collect();
            println!("{tag}: all={all} fails={fails:?} {:.1}s", t0.elapsed().as_secs_f64());
        }
        Err(e) => println!("{tag}: error {e}"),
    }
}

fn main() {
    run("3d abelian pure", SymConfig::ThreeD, lie_abelian(), None);
    run("3d sl2 pure", SymConfig::ThreeD, lie_sl2(), None);
    let l = lie_abelian(); let m = matter_adjoint(&l);
    run("3d abelian adjoint", SymConfig::ThreeD, l, Some(m));
    let l = lie_sl2(); let m = matter_adjoint(&l);
    run("3d sl2 adjoint", SymConfig::ThreeD, l, Some(m));
    run("4d abelian pure", SymConfig::FourD, lie_abelian(), None);
    run("4d sl2 pure", SymConfig::FourD, lie_sl2(), None);
    let l = lie_abelian(); let m = matter_fundamental_pair(&l);
    run("4d abelian fund", SymConfig::FourD, l, Some(m));
    let l = lie_sl2(); let m = matter_fundamental_pair(&l);
    run("4d sl2 fund", SymConfig::FourD, l, Some(m));
    run("2d (2,0) abelian pure", SymConfig::TwoDChiral(2), lie_abelian(), None);
    run("2d (2,0) sl2 pure", SymConfig::TwoDChiral(2), lie_sl2(), None);
    for np in [1usize, 4, 8] {
        run(&format!("2d ({np},0) sl2 pure"), SymConfig::TwoDChiral(np), lie_sl2(), None);
    }
}
