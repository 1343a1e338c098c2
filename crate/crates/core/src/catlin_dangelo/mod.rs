//! The two-variable family `F1 = z1^M`, `F2 = z2^N + z2·z1^K` with `K > M ≥ 2`, `N ≥ 3`.
//!
//! Its multiplicity is `MN` for every `K`, yet the first radical exponent of the
//! full-real-radical loop grows with `K`. The closed-form effective chain below
//! reaches `1` with an order depending on `(M, N)` only.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::groebner::{ideal_contains, quotient_dimension, radical_membership};
use crate::kohn_full_radical::{ineffectiveness_witness, jacobian_generators, run_full_radical, Caps};
use crate::multiplier_core::{
    Certificate, CertificateJson, PreMultiplier, Rule, RuleError, ScalarMultiplier, SpecialDomain, SubellOrder,
};
use crate::polyring::{jacobian_det, GaussRat, Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CdParams {
    pub m: u32,
    pub n: u32,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdError {
    #[error("parameters must satisfy K > M >= 2 and N >= 3 (got M={m}, N={n}, K={k})")]
    Params { m: u32, n: u32, k: u32 },
    #[error("rule rejected in the effective chain: {0}")]
    Rule(#[from] RuleError),
}

impl CdParams {
    pub fn new(m: u32, n: u32, k: u32) -> Result<Self, CdError> {
        if k > m && m >= 2 && n >= 3 {
            Ok(CdParams { m, n, k })
        } else {
            Err(CdError::Params { m, n, k })
        }
    }

    /// Recovers `(M, N, K)` when `domain` is literally this family in `z1, z2`.
    pub fn recognize(domain: &SpecialDomain) -> Option<Self> {
        if domain.nvars() != 2 || domain.generators().len() != 2 {
            return None;
        }
        let [f1, f2] = domain.generators() else { return None };
        let m = f1.degree_in(0)?;
        let n = f2.degree_in(1)?;
        let k = f2.degree_in(0)?;
        let params = CdParams::new(m, n, k).ok()?;
        (params.generators().as_slice() == domain.generators()).then_some(params)
    }

    pub fn generators(&self) -> [Poly; 2] {
        [z(self.m, 0), &z(0, self.n) + &z(self.k, 1)]
    }

    /// `2^{N+4}(N+1)(N−1)(M−1)`.
    pub fn final_order(&self) -> SubellOrder {
        let (m, n) = (BigInt::from(self.m), BigInt::from(self.n));
        let den = (BigInt::from(1u32) << (self.n + 4)) * (&n + 1u32) * (&n - 1u32) * (m - 1u32);
        SubellOrder::reciprocal(den)
    }

    /// `1/(2^{q+4}(q+1)(q−1)^2)` with `q = MN`.
    pub fn multiplicity_floor(&self) -> SubellOrder {
        let q = self.m * self.n;
        let qb = BigInt::from(q);
        let den = (BigInt::from(1u32) << (q + 4)) * (&qb + 1u32) * (&qb - 1u32) * (&qb - 1u32);
        SubellOrder::reciprocal(den)
    }
}

pub fn build_domain(params: CdParams) -> SpecialDomain {
    SpecialDomain::with_default_names(params.generators().to_vec()).expect("family vanishes at 0")
}

fn z(e1: u32, e2: u32) -> Poly {
    Poly::monomial(Monomial::from_exps(&[e1, e2]), GaussRat::from_int(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IneffectiveTrace {
    pub g: Poly,
    /// `g` and the Jacobians `∂(F_j, g)`.
    pub j1: Vec<Poly>,
    /// Ideal that must contain `J_1`, namely `(z1^{M+K−2}, z2)`.
    pub j1_envelope_holds: bool,
    pub z1_in_radical: bool,
    /// Least `p ≤ power_cap` with `z1^p ∈ J_1`.
    pub p1: Option<u32>,
    pub power_cap: u32,
}

impl IneffectiveTrace {
    /// Lower bound certified for `p_1`: the exact value when found, else `cap + 1`.
    pub fn p1_lower(&self) -> u32 {
        self.p1.unwrap_or(self.power_cap + 1)
    }
}

pub fn run_ineffective_trace(params: CdParams, power_cap: u32) -> IneffectiveTrace {
    let [f1, f2] = params.generators();
    let g = jacobian_det(&[f1.clone(), f2.clone()]).expect("two inputs");
    let j1 = jacobian_generators(&[f1, f2, g.clone()]);
    let envelope = [z(params.m + params.k - 2, 0), z(0, 1)];
    let j1_envelope_holds = ideal_contains(&envelope, &j1);
    let z1 = z(1, 0);
    let z1_in_radical = radical_membership(&z1, &j1);
    let p1 = ineffectiveness_witness(&z1, &j1, power_cap).ok().flatten();
    IneffectiveTrace {
        g,
        j1,
        j1_envelope_holds,
        z1_in_radical,
        p1,
        power_cap,
    }
}

/// Certificate of the closed-form chain plus its bookkeeping.
#[derive(Clone, Debug)]
pub struct EffectiveChain {
    pub cert: Certificate,
    /// `H_1..H_N`, `H_j = z1^{(j+1)(M−1)}·z2^{N−j}`.
    pub h_chain: Vec<ScalarMultiplier>,
    pub final_multiplier: ScalarMultiplier,
    pub jacobian_stages: usize,
}

/// `target` as a polynomial multiple of `m`, at the order of `m`.
fn rescale(cert: &mut Certificate, target: &Poly, m: &ScalarMultiplier) -> Result<ScalarMultiplier, RuleError> {
    let coeff = target.exact_div(&m.poly).expect("target is a multiple");
    cert.combine(&[coeff], &[m])
}

pub fn run_effective_chain(params: CdParams) -> Result<EffectiveChain, CdError> {
    let (m, n, k) = (params.m, params.n, params.k);
    let mut cert = Certificate::new(build_domain(params));
    let pre = cert.init_premultipliers();
    let (f1, f2): (&PreMultiplier, &PreMultiplier) = (&pre[0], &pre[1]);

    let g = cert.jacobian(&[f1, f2])?;
    // ∂(F1, g) is a unit times z1^{2(M−1)}·z2^{N−2}; H_1 is z2 times it.
    let dg = cert.jacobian(&[f1, &g])?;
    let mut h = rescale(&mut cert, &z(2 * (m - 1), n - 1), &dg)?;
    let mut h_chain = vec![h.clone()];
    for j in 1..n {
        let jac = cert.jacobian(&[f1, &h])?;
        h = rescale(&mut cert, &z((j + 2) * (m - 1), n - j - 1), &jac)?;
        h_chain.push(h.clone());
    }
    let z1 = cert.root(&z(1, 0), (n + 1) * (m - 1), &[&h])?;
    let z2z1k = rescale(&mut cert, &z(k, 1), &z1)?;
    let one = GaussRat::from_int(1);
    let z2n = cert.premultiplier_combine(&[one.clone(), -one], &[f2, &z2z1k])?;
    let jac = cert.jacobian(&[&z1, &z2n])?;
    let z2 = cert.root(&z(0, 1), n - 1, &[&jac])?;
    let final_multiplier = cert.jacobian(&[&z1, &z2])?;
    let jacobian_stages = cert
        .steps()
        .iter()
        .filter(|s| s.rule == Rule::Jacobian)
        .count();
    Ok(EffectiveChain {
        cert,
        h_chain,
        final_multiplier,
        jacobian_stages,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferentiationCounts {
    pub full_radical: Option<usize>,
    pub effective: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CdReport {
    pub schema: &'static str,
    pub params: CdParams,
    pub q: Option<u64>,
    pub p1: Option<u32>,
    pub p1_lower: Option<u32>,
    pub p1_analytic_floor: u32,
    pub power_cap: u32,
    pub final_order: Option<String>,
    pub formula_order: String,
    pub multiplicity_floor: String,
    pub floor_respected: bool,
    pub differentiation_counts: DifferentiationCounts,
    pub full_radical_order: Option<String>,
    pub effective_cert: Option<CertificateJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdMode {
    Effective,
    Ineffective,
    Both,
}

pub fn cd_report(params: CdParams, mode: CdMode, caps: Caps) -> Result<CdReport, CdError> {
    let domain = build_domain(params);
    let q = quotient_dimension(domain.generators()).finite();
    let ineffective = matches!(mode, CdMode::Ineffective | CdMode::Both);
    let effective = matches!(mode, CdMode::Effective | CdMode::Both);

    let trace = ineffective.then(|| run_ineffective_trace(params, caps.power_cap));
    let full = if ineffective {
        run_full_radical(&domain, caps).ok()
    } else {
        None
    };
    let chain = if effective { Some(run_effective_chain(params)?) } else { None };
    let final_order = chain.as_ref().map(|c| c.final_multiplier.order.clone());
    Ok(CdReport {
        schema: "kohn-report/1",
        params,
        q,
        p1: trace.as_ref().and_then(|t| t.p1),
        p1_lower: trace.as_ref().map(IneffectiveTrace::p1_lower),
        p1_analytic_floor: params.m + params.k - 2,
        power_cap: caps.power_cap,
        floor_respected: final_order.as_ref().map_or(true, |o| *o >= params.multiplicity_floor()),
        final_order: final_order.map(|o| o.to_string()),
        formula_order: params.final_order().to_string(),
        multiplicity_floor: params.multiplicity_floor().to_string(),
        differentiation_counts: DifferentiationCounts {
            full_radical: full.as_ref().map(|f| f.differentiation_stages()),
            effective: chain.as_ref().map(|c| c.jacobian_stages),
        },
        full_radical_order: full.and_then(|f| f.order_bound).map(|o| o.to_string()),
        effective_cert: chain.map(|c| c.cert.to_json()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation() {
        assert!(CdParams::new(2, 3, 5).is_ok());
        assert!(CdParams::new(2, 2, 3).is_err());
        assert!(CdParams::new(3, 3, 3).is_err());
        assert!(CdParams::new(1, 3, 5).is_err());
    }

    #[test]
    fn recognizes_its_own_domain() {
        let p = CdParams::new(3, 4, 7).unwrap();
        assert_eq!(CdParams::recognize(&build_domain(p)), Some(p));
        let other = SpecialDomain::with_default_names(vec![z(2, 0), z(0, 3)]).unwrap();
        assert_eq!(CdParams::recognize(&other), None);
    }

    #[test]
    fn chain_for_2_3_5() {
        let p = CdParams::new(2, 3, 5).unwrap();
        let chain = run_effective_chain(p).unwrap();
        assert!(chain.final_multiplier.poly.is_one());
        assert_eq!(chain.final_multiplier.order, SubellOrder::frac(1, 1024));
        assert_eq!(chain.final_multiplier.order, p.final_order());
        assert_eq!(chain.h_chain.len(), 3);
        assert_eq!(chain.h_chain[2].poly, z(4, 0));
        assert_eq!(chain.h_chain[2].order, SubellOrder::frac(1, 32));
        let report = chain.cert.verify();
        assert!(report.ok, "{report:?}");
    }

    #[test]
    fn ineffective_trace_for_2_3_5() {
        let t = run_ineffective_trace(CdParams::new(2, 3, 5).unwrap(), 64);
        assert!(t.z1_in_radical);
        assert!(t.j1_envelope_holds);
        assert!(t.p1_lower() >= 5);
    }
}
