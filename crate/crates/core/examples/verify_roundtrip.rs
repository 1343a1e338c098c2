//! Write a certificate to JSON, read it back, replay it, then tamper with it.

use kohn_core::catlin_dangelo::{build_domain, run_effective_chain, CdParams};
use kohn_core::multiplier_core::{verify_certificate, CertificateJson};

fn main() {
    let params = CdParams::new(2, 3, 5).unwrap();
    let domain = build_domain(params);
    let chain = run_effective_chain(params).unwrap();
    let text = serde_json::to_string(&chain.cert.to_json()).unwrap();

    let parsed: CertificateJson = serde_json::from_str(&text).unwrap();
    println!("round trip: {:?}", verify_certificate(&parsed, &domain));

    let mut tampered = parsed.clone();
    let last = tampered.steps.last_mut().unwrap();
    last.order = "1/512".into();
    println!("inflated final order: {:?}", verify_certificate(&tampered, &domain));

    let other = build_domain(CdParams::new(2, 3, 6).unwrap());
    println!("other domain: {:?}", verify_certificate(&parsed, &other));
}
