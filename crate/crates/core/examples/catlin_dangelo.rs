//! The family z1^M, z2^N + z2*z1^K: growing radical exponents against a K-free effective chain.

use kohn_core::catlin_dangelo::{run_effective_chain, run_ineffective_trace, CdParams};

fn main() {
    println!("{:>2} {:>2} {:>2}  {:>4}  {:>9}  {:>14}  {}", "M", "N", "K", "p1", "order", "formula", "jacobians");
    for (m, n) in [(2, 3), (3, 4)] {
        for k in m + 1..=m + 6 {
            let params = CdParams::new(m, n, k).unwrap();
            let trace = run_ineffective_trace(params, 64);
            let chain = run_effective_chain(params).unwrap();
            assert!(chain.cert.verify().ok);
            println!(
                "{m:>2} {n:>2} {k:>2}  {:>4}  {:>9}  {:>14}  {}",
                trace.p1.map_or(format!(">{}", trace.power_cap), |p| p.to_string()),
                chain.final_multiplier.order.to_string(),
                params.final_order().to_string(),
                chain.jacobian_stages
            );
        }
    }
}
