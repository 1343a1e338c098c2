//! Gröbner bases and the ideal queries built on them.

use kohn_core::groebner::{
    buchberger, cofactors, eliminate, local_multiplicity, min_power_in_ideal, module_membership, multivariate_gcd,
    quotient_dimension, radical, radical_membership, squarefree_part, MonomialOrder,
};
use kohn_core::polyring::parse_in;

fn main() {
    let v = ["z1", "z2"];
    let p = |s: &str| parse_in(s, &v).unwrap();
    let ideal = [p("z1^2"), p("z2^3 + z2*z1^5")];

    let gb = buchberger(2, &ideal, MonomialOrder::DegLex);
    println!("reduced basis: {:?}", gb.basis().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("standard monomials: {:?}", gb.standard_monomials().map(|m| m.len()));
    println!("dim C[z]/I = {}", quotient_dimension(&ideal));
    println!("local multiplicity at 0 = {:?}", local_multiplicity(&ideal, 4096));

    let target = p("z1^3*z2 + z2^3*z1");
    match cofactors(&target, &ideal) {
        Some(c) => println!("{target} = ({})*f1 + ({})*f2", c[0], c[1]),
        None => println!("{target} is not in the ideal"),
    }

    println!("z2 in rad(I): {}", radical_membership(&p("z2"), &ideal));
    println!("least power of z2 in I: {:?}", min_power_in_ideal(&p("z2"), &ideal, 64));
    let rad = radical(&ideal, 6);
    println!("rad(I) = {:?} (complete: {})", rad.gens.iter().map(ToString::to_string).collect::<Vec<_>>(), rad.complete);

    println!("gcd(z1^2*z2 - z2^3, z1*z2 + z2^2) = {}", multivariate_gcd(&p("z1^2*z2 - z2^3"), &p("z1*z2 + z2^2")));
    println!("squarefree part of z1^3*z2^2 = {:?}", squarefree_part(&p("z1^3*z2^2")).map(|s| s.to_string()));

    // Implicitize the twisted parametrization (t^2, t^3): keep the last two variables.
    let w = ["t", "u", "v"];
    let q = |s: &str| parse_in(s, &w).unwrap();
    let image = eliminate(&[q("u - t^2"), q("v - t^3")], 2);
    println!("image curve: {:?}", image.iter().map(ToString::to_string).collect::<Vec<_>>());

    // Module membership over polynomial coefficients.
    let rows = vec![vec![p("z1"), p("z2")], vec![p("0"), p("z1")]];
    let vec_target = [p("z1^2"), p("z1*z2 + z1^2")];
    println!("row-module coefficients: {:?}", module_membership(&vec_target, &rows).map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>()));
}
