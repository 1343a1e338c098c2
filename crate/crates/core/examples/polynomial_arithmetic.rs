//! Exact arithmetic over ℚ(i): parsing, derivatives, Jacobians, vanishing order.

use kohn_core::polyring::{jacobian_det, parse_in, OneForm};

fn main() {
    let vars = ["z1", "z2"];
    let f1 = parse_in("z1^2", &vars).unwrap();
    let f2 = parse_in("z2^3 + z2*z1^5 + (1/2 + i)*z1*z2", &vars).unwrap();

    println!("f1 = {f1}");
    println!("f2 = {f2}");
    println!("df2/dz1 = {}", f2.derivative(0));
    println!("d f2 = {}", OneForm::differential(&f2));
    println!("J(f1, f2) = {}", jacobian_det(&[f1.clone(), f2.clone()]).unwrap());
    println!("(f1 + f2)^2 = {}", (&f1 + &f2).pow(2));
    println!("vanishing order of f2 at 0: {:?}", f2.vanishing_order());

    // Coefficients stay exact through any amount of arithmetic.
    let third = parse_in("1/3*z1 - z2", &vars).unwrap();
    println!("(z1/3 - z2)^5 = {}", third.pow(5));
}
