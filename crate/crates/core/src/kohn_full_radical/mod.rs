//! The full-real-radical multiplier loop.
//!
//! Round `ν` keeps a finite spanning list `V_ν` of pre-multipliers, forms
//! `J_ν` from the Jacobian determinants of all `n`-subsets of that list (taken
//! in lexicographic subset order), and replaces `J_ν` by its radical `I_ν`.
//! The loop stops once `1 ∈ I_ν`. The exponents `p_ν` (least `p` with
//! `I_ν^p ⊆ J_ν`) are what make this loop ineffective: they can grow without
//! bound across a family of domains of fixed multiplicity.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::groebner::{
    ideal_contains, min_power_in_ideal, min_power_of_ideal, origin_isolated, radical, radical_membership,
    GroebnerBasis, MonomialOrder,
};
use crate::multiplier_core::{DomainFile, SpecialDomain, SubellOrder};
use crate::polyring::{jacobian_det, Poly};

pub const TRACE_SCHEMA: &str = "kohn-trace/1";

/// Loop caps; each one that trips is reported, never hidden.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_rounds: u32,
    pub power_cap: u32,
    pub radical_degree_cap: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_rounds: 8,
            power_cap: 64,
            radical_degree_cap: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FullRadicalError {
    #[error("the origin is not an isolated common zero of the generators")]
    NotIsolated,
    #[error("probe is not in the radical of the given ideal")]
    NotInRadical,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundFlags {
    pub radical_incomplete: bool,
    pub cap_exceeded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalRoundState {
    pub nu: usize,
    pub v: Vec<Poly>,
    /// Nonzero Jacobians of `n`-subsets of `v`.
    pub j_gens: Vec<Poly>,
    /// Reduced graded-lex basis of `J_ν`.
    pub j_basis: Vec<Poly>,
    pub i_gens: Vec<Poly>,
    pub p_nu: Option<u32>,
    pub flags: RoundFlags,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullRadicalOutcome {
    pub caps: Caps,
    pub terminated: bool,
    pub nu_star: Option<usize>,
    pub p_list: Vec<Option<u32>>,
    pub order_bound: Option<SubellOrder>,
    pub trace: Vec<RadicalRoundState>,
}

impl FullRadicalOutcome {
    /// Rounds of Jacobian formation actually executed.
    pub fn differentiation_stages(&self) -> usize {
        self.trace.len()
    }

    /// Some cap tripped: rounds ran out, a power search hit `power_cap`, or a
    /// radical could only be certified partially.
    pub fn cap_exceeded(&self) -> bool {
        !self.terminated || self.trace.iter().any(|r| r.flags.cap_exceeded || r.flags.radical_incomplete)
    }

    pub fn to_json(&self, domain: &SpecialDomain) -> TraceJson {
        let show = |ps: &[Poly]| ps.iter().map(|p| domain.show(p)).collect::<Vec<_>>();
        TraceJson {
            schema: TRACE_SCHEMA,
            domain: domain.to_file(),
            caps: self.caps,
            terminated: self.terminated,
            nu_star: self.nu_star,
            p_list: self.p_list.clone(),
            order_bound: self.order_bound.as_ref().map(ToString::to_string),
            differentiation_stages: self.differentiation_stages(),
            jacobian_convention: "J_nu is generated by the Jacobian determinants of all n-subsets of a finite spanning list of V_nu",
            rounds: self
                .trace
                .iter()
                .map(|r| RoundJson {
                    nu: r.nu,
                    v: show(&r.v),
                    j: show(&r.j_gens),
                    j_basis: show(&r.j_basis),
                    i: show(&r.i_gens),
                    p_nu: r.p_nu,
                    flags: r.flags.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceJson {
    pub schema: &'static str,
    pub domain: DomainFile,
    pub caps: Caps,
    pub terminated: bool,
    pub nu_star: Option<usize>,
    pub p_list: Vec<Option<u32>>,
    pub order_bound: Option<String>,
    pub differentiation_stages: usize,
    pub jacobian_convention: &'static str,
    pub rounds: Vec<RoundJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundJson {
    pub nu: usize,
    pub v: Vec<String>,
    pub j: Vec<String>,
    pub j_basis: Vec<String>,
    pub i: Vec<String>,
    pub p_nu: Option<u32>,
    pub flags: RoundFlags,
}

/// Index sets `{i_1 < … < i_k} ⊆ 0..len` in lexicographic order.
pub(crate) fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// Nonzero Jacobians of all `n`-subsets of `v`, dropping scalar duplicates.
pub fn jacobian_generators(v: &[Poly]) -> Vec<Poly> {
    let Some(n) = v.first().map(Poly::nvars) else {
        return Vec::new();
    };
    let mut out: Vec<Poly> = Vec::new();
    for s in subsets(v.len(), n) {
        let fs: Vec<Poly> = s.iter().map(|&i| v[i].clone()).collect();
        let j = jacobian_det(&fs).expect("subset has n elements");
        if !j.is_zero() && !out.iter().any(|o| o.is_unit_multiple_of(&j)) {
            out.push(j);
        }
    }
    out
}

fn push_new(v: &mut Vec<Poly>, p: &Poly) {
    if !p.is_zero() && !v.iter().any(|o| o.is_unit_multiple_of(p)) {
        v.push(p.clone());
    }
}

pub fn run_full_radical(domain: &SpecialDomain, caps: Caps) -> Result<FullRadicalOutcome, FullRadicalError> {
    let n = domain.nvars();
    if !origin_isolated(domain.generators()) {
        return Err(FullRadicalError::NotIsolated);
    }
    let mut v: Vec<Poly> = Vec::new();
    for g in domain.generators() {
        push_new(&mut v, g);
    }
    let mut trace = Vec::new();
    let mut nu_star = None;
    for nu in 0..caps.max_rounds as usize {
        let j_gens = jacobian_generators(&v);
        let j_basis = GroebnerBasis::new(n, &j_gens, MonomialOrder::DegLex).basis().to_vec();
        let rad = radical(&j_gens, caps.radical_degree_cap);
        let p_nu = if j_gens.is_empty() {
            None
        } else {
            min_power_of_ideal(&rad.gens, &j_gens, caps.power_cap)
        };
        let unit = rad.gens.iter().any(Poly::is_unit);
        trace.push(RadicalRoundState {
            nu,
            v: v.clone(),
            j_gens,
            j_basis,
            i_gens: rad.gens.clone(),
            p_nu,
            flags: RoundFlags {
                radical_incomplete: !rad.complete,
                cap_exceeded: p_nu.is_none(),
            },
        });
        if unit {
            nu_star = Some(nu);
            break;
        }
        for g in &rad.gens {
            push_new(&mut v, g);
        }
    }
    let p_list: Vec<Option<u32>> = trace.iter().map(|r| r.p_nu).collect();
    let order_bound = nu_star.and_then(|nu| {
        let prod = p_list
            .iter()
            .try_fold(BigInt::from(1u32) << (nu + 2), |acc, p| p.map(|p| acc * BigInt::from(p)))?;
        Some(SubellOrder::reciprocal(prod))
    });
    Ok(FullRadicalOutcome {
        caps,
        terminated: nu_star.is_some(),
        nu_star,
        p_list,
        order_bound,
        trace,
    })
}

/// Least `s ≤ cap` with `probe^s ∈ (j_gens)`; the probe must lie in the radical.
pub fn ineffectiveness_witness(probe: &Poly, j_gens: &[Poly], cap: u32) -> Result<Option<u32>, FullRadicalError> {
    if !radical_membership(probe, j_gens) {
        return Err(FullRadicalError::NotInRadical);
    }
    Ok(min_power_in_ideal(probe, j_gens, cap))
}

/// `J_ν ⊆ J_{ν+1}` for consecutive rounds of a trace.
pub fn ascending_chain_holds(trace: &[RadicalRoundState]) -> bool {
    trace
        .windows(2)
        .all(|w| w[0].j_gens.is_empty() || (!w[1].j_gens.is_empty() && ideal_contains(&w[1].j_gens, &w[0].j_gens)))
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
    fn coordinate_domain_terminates_immediately() {
        let out = run_full_radical(&domain(&["z1", "z2"]), Caps::default()).unwrap();
        assert!(out.terminated);
        assert_eq!(out.nu_star, Some(0));
        assert_eq!(out.p_list, vec![Some(1)]);
        assert_eq!(out.order_bound, Some(SubellOrder::quarter()));
        assert!(!out.cap_exceeded());
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(subsets(1, 2).is_empty());
    }

    #[test]
    fn witness_on_principal_ideal() {
        assert_eq!(ineffectiveness_witness(&p("z1"), &[p("z1")], 4), Ok(Some(1)));
        assert_eq!(ineffectiveness_witness(&p("z1"), &[p("z1^3"), p("z2")], 4), Ok(Some(3)));
        assert_eq!(ineffectiveness_witness(&p("z1"), &[p("z2")], 4), Err(FullRadicalError::NotInRadical));
    }

    #[test]
    fn non_isolated_is_rejected() {
        let d = domain(&["z1"]);
        assert_eq!(run_full_radical(&d, Caps::default()), Err(FullRadicalError::NotIsolated));
    }

    #[test]
    fn cusp_domain_runs() {
        let out = run_full_radical(&domain(&["z1^2", "z2^3"]), Caps::default()).unwrap();
        assert!(out.terminated);
        assert!(ascending_chain_holds(&out.trace));
        assert!(out.order_bound.is_some());
    }
}
