//! Image-curve Weierstrass polynomials and the Skoda-type membership.

use kohn_core::kohn_effective3d::{skoda_verify, weierstrass_from_image};
use kohn_core::polyring::parse_in;

fn main() {
    let p = |s: &str| parse_in(s, &["z1", "z2"]).unwrap();

    let w = weierstrass_from_image(&p("z1*z2"), &p("z1^2 + 2*z2^2"), &p("z1 + 3*z2"), 16).unwrap();
    let uv = ["u".to_string(), "v".to_string()];
    println!("T(u, v) = {}  (degree {}, padding {})", w.t.display(&uv), w.degree, w.padding);
    for (nu, h) in w.chain.iter().enumerate() {
        println!("  d_v^{nu} T at the image = {h}");
    }

    for f in ["z1^2 + z2^3", "z1^2*z2 + z2^4", "z1^3*z2^2"] {
        let r = skoda_verify(&p(f));
        println!("f = {f}: f^3 in (df/dz1, df/dz2) at 0: {}", r.holds);
    }
}
