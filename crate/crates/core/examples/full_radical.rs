//! The full-real-radical loop on a few domains, with its caps echoed.

use kohn_core::kohn_full_radical::{run_full_radical, Caps};
use kohn_core::multiplier_core::SpecialDomain;
use kohn_core::polyring::parse_in;

fn main() {
    let cases: &[&[&str]] = &[&["z1", "z2"], &["z1^2", "z2^3"], &["z1^2", "z2^3 + z2*z1^4"], &["z1^2", "z2^3 + z2*z1^9"]];
    for gens in cases {
        let polys = gens.iter().map(|g| parse_in(g, &["z1", "z2"]).unwrap()).collect();
        let domain = SpecialDomain::with_default_names(polys).unwrap();
        for caps in [Caps::default(), Caps { power_cap: 8, ..Caps::default() }] {
            let out = run_full_radical(&domain, caps).unwrap();
            println!(
                "{gens:?} power_cap={:>2}: stages={} p={:?} order={} cap_exceeded={}",
                caps.power_cap,
                out.differentiation_stages(),
                out.p_list,
                out.order_bound.as_ref().map_or("none".to_string(), |o| o.to_string()),
                out.cap_exceeded()
            );
        }
    }
}
