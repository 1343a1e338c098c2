//! Adjugate vector multiplier of a matrix against the differential of its determinant.

use kohn_core::matrix_lab::{compare_procedures, verify_three_variable_obstruction, verify_two_variable_identity};
use kohn_core::polyring::{parse_in, Poly};

fn matrix(rows: &[&[&str]], vars: &[&str]) -> Vec<Vec<Poly>> {
    rows.iter().map(|r| r.iter().map(|s| parse_in(s, vars).unwrap()).collect()).collect()
}

fn main() {
    let v2 = ["z1", "z2"];
    let a = matrix(&[&["z1^2 + z2", "z1*z2"], &["z2^3", "z1 - z2^2"]], &v2);
    let r = compare_procedures(&a);
    println!("2x2: b = {}, d(det) = {}", r.b_form, r.grad_det);
    println!("     difference = {}, verdict {:?}", r.difference, r.verdict);
    println!("     closed-form identity holds: {}", verify_two_variable_identity(&a));

    let v3 = ["z1", "z2", "z3"];
    let b = matrix(&[&["z1", "z3", "0"], &["0", "z2", "z1"], &["0", "0", "z3"]], &v3);
    let r = compare_procedures(&b);
    println!("3x3: difference = {}, verdict {:?}", r.difference, r.verdict);
    if let Some(c) = &r.decomposition {
        println!("     coefficients on the rows: {}, {}, {}", c[0], c[1], c[2]);
    }

    let p = |s: &str| parse_in(s, &v3).unwrap();
    println!(
        "slice obstruction a11*d3(eta^2) outside (a33) for (z1, z3^2, z3): {}",
        verify_three_variable_obstruction(&p("z1"), &p("z3^2"), &p("z3"))
    );
}
