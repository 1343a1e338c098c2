//! Effective multiplier algorithm for two defining variables (domains in ℂ³).
//!
//! Pipeline:
//! 1. two generic combinations `F̂1, F̂2` of the generators; their Jacobian `h2*`
//!    and its squarefree part `ĥ2`, certified by a root of order at most `q`;
//! 2. a generic combination `h1` and generic linear coordinates `(w1, w2)`,
//!    accepted only after the multiplicity conditions and the Skoda-type identity
//!    `h1^{3q²} = α·ĥ2 + β·∂h1/∂w1` are verified exactly;
//! 3. a Weierstrass polynomial `T(u, v)` with `T(h1, w2) ∈ (ĥ2)`, whose
//!    `v`-derivatives drive a chain of Jacobians down to `h1`, then `w1, w2`,
//!    and finally `1`.
//!
//! Domains of the Catlin-D'Angelo family are routed to their closed-form chain.

mod weierstrass;

pub use weierstrass::{weierstrass_from_image, WeierstrassData, WeierstrassError};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catlin_dangelo::{run_effective_chain, CdParams};
use crate::groebner::{
    cofactors, contains_maximal_power, local_membership, local_multiplicity, min_power_in_ideal, squarefree_part,
    LocalCofactors,
};
use crate::multiplier_core::{Certificate, RuleError, ScalarMultiplier, SpecialDomain, SubellOrder};
use crate::polyring::{jacobian_det, GaussRat, Poly};

/// Ceiling passed to local multiplicity searches.
const MULTIPLICITY_CAP: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Effective3dConfig {
    pub seed: u64,
    /// Attempts per genericity search.
    pub retries: u32,
    /// Refuse runs whose chain would carry payloads above this total degree.
    pub max_payload_degree: u32,
}

impl Default for Effective3dConfig {
    fn default() -> Self {
        Effective3dConfig {
            seed: 0,
            retries: 24,
            max_payload_degree: 1024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Effective3dError {
    #[error("the effective algorithm is implemented for two variables only (got {0})")]
    NotTwoDimensional(usize),
    #[error("the origin is not an isolated common zero of the generators")]
    NotIsolated,
    #[error("{0}")]
    Unsupported(String),
    #[error("genericity search in {stage} exhausted {attempts} attempts; last failure: {last}")]
    RetryBudget {
        stage: &'static str,
        attempts: u32,
        last: String,
    },
    #[error("payload degree {needed} exceeds the budget {budget}")]
    DegreeBudget { needed: u64, budget: u32 },
    #[error("rule rejected: {0}")]
    Rule(#[from] RuleError),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl Effective3dError {
    /// Failures caused by a search or size cap rather than by bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Effective3dError::RetryBudget { .. } | Effective3dError::DegreeBudget { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOneResult {
    pub q: u64,
    pub coeffs: [Vec<GaussRat>; 2],
    pub fhat: [Poly; 2],
    pub h2_star: Poly,
    pub h2_hat: Poly,
    /// Least `k` with `ĥ2^k ∈ (h2*)`.
    pub k1: u32,
    pub seed: u64,
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTwoResult {
    pub h1_coeffs: Vec<GaussRat>,
    pub h1: Poly,
    /// Rows give `w1, w2` as linear forms in `z1, z2`.
    pub coord_matrix: [[GaussRat; 2]; 2],
    pub w: [Poly; 2],
    /// `∂h1/∂w1`.
    pub h1_w1: Poly,
    pub alpha: Poly,
    pub beta: Poly,
    pub multiplicities: [u64; 3],
    pub weierstrass: WeierstrassData,
    pub seed: u64,
    pub attempts: u32,
}

#[derive(Clone, Debug)]
pub struct Effective3dRun {
    pub q: u64,
    pub step_one: Option<StepOneResult>,
    pub step_two: Option<StepTwoResult>,
    pub cert: Certificate,
    pub final_order: SubellOrder,
    /// `1/(3q^7·2^{q²+r+3})`.
    pub formula_order: SubellOrder,
    /// Exact wedge identity per chain index.
    pub wedge_checks: Vec<bool>,
    pub route: Route,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// The Jacobian of two combinations is already a nonzero constant.
    Immediate,
    General,
    CatlinDangelo,
}

/// Result of checking `f^{n+1} ∈ (∂_1 f, …, ∂_n f)` at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkodaResult {
    pub holds: bool,
    pub witness: Option<LocalCofactors>,
}

pub fn skoda_verify(f: &Poly) -> SkodaResult {
    let n = f.nvars();
    let witness = local_membership(&f.pow(n as u32 + 1), &f.gradient());
    SkodaResult {
        holds: witness.is_some(),
        witness,
    }
}

/// `1/(3q^7·2^{q²+r+3})`.
pub fn formula_order(q: u64, r: u32) -> SubellOrder {
    let qb = BigInt::from(q);
    let shift = q * q + r as u64 + 3;
    let den = BigInt::from(3u32) * qb.pow(7) * (BigInt::one() << shift);
    SubellOrder::reciprocal(den)
}

fn rng_for(seed: u64, stage: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stage);
    rng
}

fn nonzero_int(rng: &mut ChaCha8Rng, height: i64) -> GaussRat {
    loop {
        let x = rng.gen_range(-height..=height);
        if x != 0 {
            return GaussRat::from_int(x);
        }
    }
}

fn combination(gens: &[Poly], coeffs: &[GaussRat]) -> Poly {
    gens.iter()
        .zip(coeffs)
        .fold(Poly::zero(gens[0].nvars()), |acc, (g, c)| &acc + &g.scale(c))
}

fn constant(c: &GaussRat) -> Poly {
    Poly::constant(2, c.clone())
}

fn check_domain(domain: &SpecialDomain) -> Result<u64, Effective3dError> {
    if domain.nvars() != 2 {
        return Err(Effective3dError::NotTwoDimensional(domain.nvars()));
    }
    local_multiplicity(domain.generators(), MULTIPLICITY_CAP).ok_or(Effective3dError::NotIsolated)
}

pub fn step_one(domain: &SpecialDomain, config: &Effective3dConfig) -> Result<StepOneResult, Effective3dError> {
    let q = check_domain(domain)?;
    let gens = domain.generators();
    let mut rng = rng_for(config.seed, 1);
    let mut last = String::from("no attempt made");
    for attempt in 0..config.retries {
        let height = 3 + attempt as i64;
        let coeffs: [Vec<GaussRat>; 2] =
            std::array::from_fn(|_| gens.iter().map(|_| nonzero_int(&mut rng, height)).collect());
        let fhat = [combination(gens, &coeffs[0]), combination(gens, &coeffs[1])];
        let h2_star = jacobian_det(&fhat).expect("two inputs");
        match h2_star.vanishing_order() {
            None => {
                last = "Jacobian of the combinations vanishes identically".into();
                continue;
            }
            Some(v) if v as u64 > q => {
                last = format!("Jacobian vanishes to order {v} > q = {q}");
                continue;
            }
            Some(0) if !h2_star.is_constant() => {
                return Err(Effective3dError::Unsupported(
                    "the Jacobian is a unit germ but not a constant; a polynomial certificate cannot invert it".into(),
                ));
            }
            _ => {}
        }
        let (h2_hat, k1) = if h2_star.is_constant() {
            (h2_star.clone(), 1)
        } else {
            let hat = squarefree_part(&h2_star).expect("nonzero");
            let k1 = min_power_in_ideal(&hat, std::slice::from_ref(&h2_star), q as u32)
                .ok_or_else(|| Effective3dError::Invariant("squarefree part has no power ≤ q in (h2*)".into()))?;
            (hat, k1)
        };
        return Ok(StepOneResult {
            q,
            coeffs,
            fhat,
            h2_star,
            h2_hat,
            k1,
            seed: config.seed,
            attempts: attempt + 1,
        });
    }
    Err(Effective3dError::RetryBudget {
        stage: "step one",
        attempts: config.retries,
        last,
    })
}

fn det2(m: &[[GaussRat; 2]; 2]) -> GaussRat {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

/// Tries one draw of `(h1, G)`; `Err` carries the reason for rejection.
fn try_step_two(
    domain: &SpecialDomain,
    s1: &StepOneResult,
    rng: &mut ChaCha8Rng,
    height: i64,
) -> Result<StepTwoResult, String> {
    let q = s1.q;
    let gens = domain.generators();
    let h1_coeffs: Vec<GaussRat> = gens.iter().map(|_| nonzero_int(rng, height)).collect();
    let h1 = combination(gens, &h1_coeffs);
    let g: [[GaussRat; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| nonzero_int(rng, height)));
    let det = det2(&g);
    if det.is_zero() {
        return Err("singular coordinate change".into());
    }
    let w: [Poly; 2] = std::array::from_fn(|i| &Poly::var(2, 0).scale(&g[i][0]) + &Poly::var(2, 1).scale(&g[i][1]));
    // ∂/∂w1 = Σ_l (G⁻¹)_{l1} ∂/∂z_l, with G⁻¹ = adj(G)/det.
    let inv_det = det.inv().expect("nonzero");
    let h1_w1 = &h1.derivative(0).scale(&(&g[1][1] * &inv_det)) - &h1.derivative(1).scale(&(&g[1][0] * &inv_det));

    let m1 = local_multiplicity(&[w[0].clone(), h1.clone()], MULTIPLICITY_CAP)
        .ok_or("origin not isolated in V(w1, h1)")?;
    let m2 = local_multiplicity(&[h1.clone(), s1.h2_hat.clone()], MULTIPLICITY_CAP)
        .filter(|&m| m <= q * q)
        .ok_or("multiplicity of (h1, ĥ2) exceeds q²")?;
    let m3 = local_multiplicity(&[s1.h2_hat.clone(), h1_w1.clone()], MULTIPLICITY_CAP)
        .filter(|&m| m <= 3 * q * q)
        .ok_or("multiplicity of (ĥ2, ∂h1/∂w1) exceeds 3q²")?;
    let e = (3 * q * q) as u32;
    let ab = cofactors(&h1.pow(e), &[s1.h2_hat.clone(), h1_w1.clone()])
        .ok_or("h1^{3q²} has no polynomial cofactors over (ĥ2, ∂h1/∂w1)")?;
    if !contains_maximal_power(&[h1.clone(), s1.h2_hat.clone()], (q * q) as u32) {
        return Err("(h1, ĥ2) does not contain all monomials of degree q² polynomially".into());
    }
    let weierstrass = weierstrass_from_image(&s1.h2_hat, &h1, &w[1], (q * q) as u32).map_err(|e| e.to_string())?;
    if !weierstrass.division_exact {
        return Err("T(h1, w2) is not a polynomial multiple of ĥ2".into());
    }
    let [alpha, beta]: [Poly; 2] = ab.try_into().expect("two cofactors");
    Ok(StepTwoResult {
        h1_coeffs,
        h1,
        coord_matrix: g,
        w,
        h1_w1,
        alpha,
        beta,
        multiplicities: [m1, m2, m3],
        weierstrass,
        seed: 0,
        attempts: 0,
    })
}

pub fn step_two(
    domain: &SpecialDomain,
    s1: &StepOneResult,
    config: &Effective3dConfig,
) -> Result<StepTwoResult, Effective3dError> {
    let mut rng = rng_for(config.seed, 2);
    let mut last = String::from("no attempt made");
    for attempt in 0..config.retries {
        match try_step_two(domain, s1, &mut rng, 3 + attempt as i64) {
            Ok(mut s2) => {
                s2.seed = config.seed;
                s2.attempts = attempt + 1;
                return Ok(s2);
            }
            Err(reason) => last = reason,
        }
    }
    Err(Effective3dError::RetryBudget {
        stage: "step two",
        attempts: config.retries,
        last,
    })
}

/// Total degree the chain's last multiplier will reach.
fn chain_degree(s1: &StepOneResult, s2: &StepTwoResult) -> u64 {
    let q = s1.q;
    let wd = &s2.weierstrass;
    let h1_deg = s2.h1.total_degree().unwrap_or(0) as u64;
    h1_deg * (3 * q * q * wd.degree as u64 + wd.lead_power as u64)
}

/// Emits the whole certificate for a general (non-degenerate) run.
pub fn step_three(
    domain: &SpecialDomain,
    s1: &StepOneResult,
    s2: &StepTwoResult,
) -> Result<(Certificate, Vec<bool>), Effective3dError> {
    let q = s1.q;
    let a_step = (3 * q * q) as u32;
    let wd = &s2.weierstrass;
    let mut cert = Certificate::new(domain.clone());
    let pre = cert.init_premultipliers();
    let pre_refs: Vec<&dyn crate::multiplier_core::HasDifferential> =
        pre.iter().map(|p| p as &dyn crate::multiplier_core::HasDifferential).collect();

    let fhat1 = cert.premultiplier_combine(&s1.coeffs[0], &pre_refs)?;
    let fhat2 = cert.premultiplier_combine(&s1.coeffs[1], &pre_refs)?;
    let h2_star = cert.jacobian(&[&fhat1, &fhat2])?;
    let cof = s1
        .h2_hat
        .pow(s1.k1)
        .exact_div(&h2_star.poly)
        .ok_or_else(|| Effective3dError::Invariant("ĥ2^k1 is not a multiple of h2*".into()))?;
    let h2_hat = cert.root_with_cofactors(&s1.h2_hat, s1.k1, &[&h2_star], vec![cof])?;

    let h1_pre = cert.premultiplier_combine(&s2.h1_coeffs, &pre_refs)?;
    let det_g = det2(&s2.coord_matrix);
    let inv_det = det_g.inv().expect("nonzero");

    let q_factor = wd.h2.exact_div(&s1.h2_hat).expect("division checked in step two");
    let mut x = cert.combine(&[q_factor], &[&h2_hat])?;
    let mut wedge_checks = Vec::new();
    let mut h1_power = Poly::one(2);
    let h1_step = s2.h1.pow(a_step);
    for nu in 0..wd.degree as usize {
        let jac = cert.jacobian(&[&h1_pre, &x])?;
        let next = &wd.chain[nu + 1];
        let expected = &(&s2.h1_w1.scale(&det_g) * &h1_power) * next;
        let ok = jac.poly == expected;
        wedge_checks.push(ok);
        if !ok {
            return Err(Effective3dError::Invariant(format!("wedge identity fails at chain index {nu}")));
        }
        let c1 = &(&s2.alpha * &h1_power) * next;
        let c2 = s2.beta.scale(&inv_det);
        x = cert.combine(&[c1, c2], &[&h2_hat, &jac])?;
        h1_power = &h1_power * &h1_step;
    }
    // x = ℓ̃!·h1^{3q²ℓ̃ + r} after normalizing T's leading coefficient to u^r.
    let m = a_step * wd.degree + wd.lead_power;
    let fact = (1..=wd.degree as i64).fold(GaussRat::from_int(1), |acc, k| &acc * &GaussRat::from_int(k));
    let h1 = cert.root_with_cofactors(&s2.h1, m, &[&x], vec![constant(&fact.inv().expect("nonzero"))])?;

    let known = [&h1, &h2_hat];
    let mut ws: Vec<ScalarMultiplier> = Vec::new();
    for w in &s2.w {
        let k = min_power_in_ideal(w, &[s2.h1.clone(), s1.h2_hat.clone()], (q * q) as u32)
            .ok_or_else(|| Effective3dError::Invariant("coordinate has no power ≤ q² in (h1, ĥ2)".into()))?;
        ws.push(cert.root(w, k, &known)?);
    }
    let jac = cert.jacobian(&[&ws[0], &ws[1]])?;
    if jac.poly != constant(&det_g) {
        return Err(Effective3dError::Invariant("Jacobian of the coordinates is not det G".into()));
    }
    cert.combine(&[constant(&inv_det)], &[&jac])?;
    Ok((cert, wedge_checks))
}

fn immediate(domain: &SpecialDomain, s1: &StepOneResult) -> Result<Certificate, Effective3dError> {
    let mut cert = Certificate::new(domain.clone());
    let pre = cert.init_premultipliers();
    let refs: Vec<&dyn crate::multiplier_core::HasDifferential> =
        pre.iter().map(|p| p as &dyn crate::multiplier_core::HasDifferential).collect();
    let f1 = cert.premultiplier_combine(&s1.coeffs[0], &refs)?;
    let f2 = cert.premultiplier_combine(&s1.coeffs[1], &refs)?;
    let j = cert.jacobian(&[&f1, &f2])?;
    let c = j.poly.constant_term().inv().expect("nonzero constant");
    cert.combine(&[constant(&c)], &[&j])?;
    Ok(cert)
}

fn final_order_of(cert: &Certificate) -> Result<SubellOrder, Effective3dError> {
    let last = cert.last().ok_or_else(|| Effective3dError::Invariant("empty certificate".into()))?;
    if !last.payload[0].is_one() {
        return Err(Effective3dError::Invariant("certificate does not end in 1".into()));
    }
    Ok(last.order.clone())
}

/// Full pipeline with self-verification of the emitted certificate.
pub fn run_effective3d(domain: &SpecialDomain, config: &Effective3dConfig) -> Result<Effective3dRun, Effective3dError> {
    let q = check_domain(domain)?;
    if let Some(params) = CdParams::recognize(domain) {
        let chain = run_effective_chain(params).map_err(|e| Effective3dError::Invariant(e.to_string()))?;
        let final_order = chain.final_multiplier.order.clone();
        return Ok(Effective3dRun {
            q,
            step_one: None,
            step_two: None,
            cert: chain.cert,
            final_order,
            formula_order: formula_order(q, 0),
            wedge_checks: Vec::new(),
            route: Route::CatlinDangelo,
        });
    }
    let s1 = step_one(domain, config)?;
    if s1.h2_star.is_constant() {
        let cert = immediate(domain, &s1)?;
        let final_order = final_order_of(&cert)?;
        return Ok(Effective3dRun {
            q,
            step_one: Some(s1),
            step_two: None,
            cert,
            final_order,
            formula_order: formula_order(q, 0),
            wedge_checks: Vec::new(),
            route: Route::Immediate,
        });
    }
    let s2 = step_two(domain, &s1, config)?;
    let needed = chain_degree(&s1, &s2);
    if needed > config.max_payload_degree as u64 {
        return Err(Effective3dError::DegreeBudget {
            needed,
            budget: config.max_payload_degree,
        });
    }
    let (cert, wedge_checks) = step_three(domain, &s1, &s2)?;
    let final_order = final_order_of(&cert)?;
    let r = s2.weierstrass.lead_power;
    Ok(Effective3dRun {
        q,
        step_one: Some(s1),
        step_two: Some(s2),
        cert,
        final_order,
        formula_order: formula_order(q, r),
        wedge_checks,
        route: Route::General,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_in;

    fn p(s: &str) -> Poly {
        parse_in(s, &["z1", "z2"]).unwrap()
    }

    fn domain(gens: &[&str]) -> SpecialDomain {
        SpecialDomain::with_default_names(gens.iter().map(|g| p(g)).collect()).unwrap()
    }

    #[test]
    fn coordinate_domain_is_immediate() {
        let run = run_effective3d(&domain(&["z1", "z2"]), &Effective3dConfig::default()).unwrap();
        assert_eq!(run.route, Route::Immediate);
        assert_eq!(run.final_order, SubellOrder::quarter());
        assert!(run.cert.verify().ok);
    }

    #[test]
    fn skoda_examples() {
        assert!(skoda_verify(&p("z1")).holds);
        let r = skoda_verify(&p("z1^2*z2"));
        assert!(r.holds);
        let w = r.witness.unwrap();
        assert!(w.unit.is_one());
        let f = p("z1^2*z2");
        let sum = &(&w.cofactors[0] * &f.derivative(0)) + &(&w.cofactors[1] * &f.derivative(1));
        assert_eq!(sum, f.pow(3));
        assert!(skoda_verify(&p("z1^2 + z2^3")).holds);
        assert!(skoda_verify(&p("z1^2 - z1^3")).holds);
    }

    #[test]
    fn formula_instances() {
        assert_eq!(formula_order(1, 0), SubellOrder::frac(1, 48));
        assert_eq!(
            formula_order(4, 0),
            SubellOrder::reciprocal(BigInt::from(3u32) * BigInt::from(4u32).pow(7) * (BigInt::one() << 19u32))
        );
    }

    #[test]
    fn step_one_on_squares() {
        let s1 = step_one(&domain(&["z1^2", "z2^2"]), &Effective3dConfig::default()).unwrap();
        assert_eq!(s1.q, 4);
        assert_eq!(s1.h2_hat, p("z1*z2"));
        assert_eq!(s1.k1, 1);
        assert!(s1.h2_star.is_unit_multiple_of(&p("z1*z2")));
    }
}
