//! Building a derivation certificate rule by rule and replaying it.

use kohn_core::multiplier_core::{Certificate, SpecialDomain};
use kohn_core::polyring::parse_in;

fn main() {
    let v = ["z1", "z2"];
    let p = |s: &str| parse_in(s, &v).unwrap();
    let domain = SpecialDomain::with_default_names(vec![p("z1^2"), p("z2^2")]).unwrap();
    let mut cert = Certificate::new(domain);

    let pre = cert.init_premultipliers();
    let j = cert.jacobian(&[&pre[0], &pre[1]]).unwrap();
    println!("J(F1, F2) = {} at order {}", j.poly, j.order);

    // (z1*z2)^1 is a multiple of the Jacobian, so z1*z2 is a multiplier of the same order.
    let h = cert.root(&p("z1*z2"), 1, &[&j]).unwrap();
    let scaled = cert.combine(&[p("z1 + 1")], &[&h]).unwrap();
    println!("(z1 + 1)*z1*z2 at order {}", scaled.order);

    let dz = cert.differential(&h);
    println!("d(z1*z2) = {} at order {}", dz.form, dz.order);
    let dz1 = cert.differential(&pre[0]);
    let det = cert.det(&[&dz, &dz1]).unwrap();
    println!("det = {} at order {}", det.poly, det.order);

    let report = cert.verify();
    println!("{} steps, verifier ok: {}", cert.steps().len(), report.ok);
    println!("{}", serde_json::to_string_pretty(&cert.to_json()).unwrap());
}
