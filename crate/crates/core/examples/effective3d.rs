//! The effective algorithm end to end, with its certificate replayed.
//!
//! Usage: `cargo run --release --example effective3d -- z1^2 z2^2 [seed]`

use kohn_core::kohn_effective3d::{run_effective3d, Effective3dConfig};
use kohn_core::multiplier_core::SpecialDomain;
use kohn_core::polyring::parse_in;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (gens, seed) = match args.as_slice() {
        [] => (vec!["z1^2".to_string(), "z2^2".to_string()], 0),
        [a, b] => (vec![a.clone(), b.clone()], 0),
        [a, b, s] => (vec![a.clone(), b.clone()], s.parse().expect("seed is an integer")),
        _ => panic!("expected two generators and an optional seed"),
    };
    let polys = gens.iter().map(|g| parse_in(g, &["z1", "z2"]).unwrap()).collect();
    let domain = SpecialDomain::with_default_names(polys).unwrap();
    let config = Effective3dConfig { seed, ..Effective3dConfig::default() };

    let run = run_effective3d(&domain, &config).unwrap();
    println!("route {:?}, q = {}", run.route, run.q);
    if let Some(s1) = &run.step_one {
        println!("h2* = {}, squarefree part {} (power {})", s1.h2_star, s1.h2_hat, s1.k1);
    }
    if let Some(s2) = &run.step_two {
        println!("h1 = {}, coordinates {} / {}", s2.h1, s2.w[0], s2.w[1]);
        let uv = ["u".to_string(), "v".to_string()];
        println!("Weierstrass polynomial T(u, v) = {}", s2.weierstrass.t.display(&uv));
    }
    println!("wedge identities: {:?}", run.wedge_checks);
    println!("final order {} (formula {})", run.final_order, run.formula_order);
    let report = run.cert.verify();
    println!("{} steps replayed, ok: {}", report.steps_checked, report.ok);
}
