use num_traits::Zero;

use crate::polyring::{Monomial, Poly};

use super::{ring_of, GroebnerBasis, MonomialOrder, QuotientDim};

pub fn ideal_membership(p: &Poly, gens: &[Poly]) -> bool {
    if p.is_zero() {
        return true;
    }
    GroebnerBasis::new(p.nvars(), gens, MonomialOrder::DegLex).contains(p)
}

/// `J ⊆ I` for `J = (sub)` and `I = (gens)`.
pub fn ideal_contains(gens: &[Poly], sub: &[Poly]) -> bool {
    if sub.iter().all(Poly::is_zero) {
        return true;
    }
    let gb = GroebnerBasis::new(ring_of(sub), gens, MonomialOrder::DegLex);
    gb.contains_all(sub)
}

/// `α` with `p = Σ α_j·gens_j`, replay-checked, or `None` if `p ∉ (gens)`.
pub fn cofactors(p: &Poly, gens: &[Poly]) -> Option<Vec<Poly>> {
    let gb = GroebnerBasis::with_cofactors(p.nvars(), gens, MonomialOrder::DegLex);
    let c = gb.cofactors_of(p)?;
    debug_assert_eq!(
        c.iter().zip(gens).fold(Poly::zero(p.nvars()), |acc, (a, g)| &acc + &(a * g)),
        *p
    );
    Some(c)
}

pub fn quotient_dimension(gens: &[Poly]) -> QuotientDim {
    GroebnerBasis::new(ring_of(gens), gens, MonomialOrder::DegLex).quotient_dimension()
}

/// Some power of `p` lies in `(gens)`, decided by `1 ∈ (gens, 1 − t·p)`.
pub fn radical_membership(p: &Poly, gens: &[Poly]) -> bool {
    if p.is_zero() {
        return true;
    }
    let n = p.nvars();
    let mut ext: Vec<Poly> = gens.iter().map(|g| g.extend_vars(1)).collect();
    let t = Poly::var(n + 1, n);
    ext.push(&Poly::one(n + 1) - &(&t * &p.extend_vars(1)));
    GroebnerBasis::new(n + 1, &ext, MonomialOrder::DegLex).is_unit_ideal()
}

/// Every variable lies in the radical, so the common zero set is at most the origin.
pub fn origin_isolated(gens: &[Poly]) -> bool {
    let n = ring_of(gens);
    (0..n).all(|v| radical_membership(&Poly::var(n, v), gens))
}

pub fn min_power_in_ideal(p: &Poly, gens: &[Poly], cap: u32) -> Option<u32> {
    GroebnerBasis::new(p.nvars(), gens, MonomialOrder::DegLex).min_power(p, cap)
}

/// Least `s ≤ cap` with `(ideal)^s ⊆ (gens)`, checked on all products of `s` generators.
pub fn min_power_of_ideal(ideal: &[Poly], gens: &[Poly], cap: u32) -> Option<u32> {
    let ideal: Vec<Poly> = ideal.iter().filter(|p| !p.is_zero()).cloned().collect();
    if ideal.is_empty() {
        return if cap >= 1 { Some(1) } else { None };
    }
    let gb = GroebnerBasis::new(ring_of(&ideal), gens, MonomialOrder::DegLex);
    // Products of s generators, reduced; rows indexed by non-decreasing index tuples.
    let mut layer: Vec<(usize, Poly)> = ideal
        .iter()
        .enumerate()
        .map(|(i, f)| (i, gb.normal_form(f)))
        .collect();
    for s in 1..=cap {
        if layer.iter().all(|(_, r)| r.is_zero()) {
            return Some(s);
        }
        if s == cap {
            break;
        }
        let mut next: Vec<(usize, Poly)> = Vec::new();
        for (last, r) in &layer {
            for (i, f) in ideal.iter().enumerate().skip(*last) {
                next.push((i, gb.normal_form(&(r * f))));
            }
        }
        // Identical residues add nothing; keep the run tractable on large caps.
        next.sort_by(|a, b| a.0.cmp(&b.0));
        layer = dedup_layer(next);
    }
    None
}

fn dedup_layer(layer: Vec<(usize, Poly)>) -> Vec<(usize, Poly)> {
    let mut out: Vec<(usize, Poly)> = Vec::with_capacity(layer.len());
    for (i, r) in layer {
        if !out.iter().any(|(j, s)| *j == i && *s == r) {
            out.push((i, r));
        }
    }
    out
}

/// Every monomial of total degree `k` lies in `(gens)`.
pub fn contains_maximal_power(gens: &[Poly], k: u32) -> bool {
    let n = ring_of(gens);
    let lms = GroebnerBasis::new(n, gens, MonomialOrder::DegLex).leading_monomials();
    monomials_of_degree(n, k)
        .iter()
        .all(|m| lms.iter().any(|l| l.divides(m)))
}

pub(crate) fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(Monomial::from_exps(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// Generators of `(gens) ∩ ℚ(i)[last keep variables]`, as polynomials in those `keep` variables.
pub fn eliminate(gens: &[Poly], keep: usize) -> Vec<Poly> {
    let n = ring_of(gens);
    assert!(keep <= n, "cannot keep more variables than exist");
    let block = n - keep;
    let gb = GroebnerBasis::new(n, gens, MonomialOrder::Elimination { block });
    let kept: Vec<usize> = (block..n).collect();
    gb.basis()
        .iter()
        .filter_map(|g| g.restrict(&kept))
        .map(|g| g.monic())
        .collect()
}

/// Generators of `(a) ∩ (b)`, via elimination of `t` from `t·a + (1 − t)·b`.
pub fn intersect(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = ring_of(a);
    // Prepend t as variable 0.
    let shift: Vec<usize> = (1..=n).collect();
    let t = Poly::var(n + 1, 0);
    let one_minus_t = &Poly::one(n + 1) - &t;
    let mut gens: Vec<Poly> = a.iter().map(|p| &t * &p.remap(n + 1, &shift)).collect();
    gens.extend(b.iter().map(|p| &one_minus_t * &p.remap(n + 1, &shift)));
    eliminate(&gens, n)
}

/// `dim R/(I + m^s)` for growing `s` until two consecutive values agree; that common
/// value is the multiplicity of `(gens)` at the origin. `None` past `cap`.
pub fn local_multiplicity(gens: &[Poly], cap: u64) -> Option<u64> {
    let n = ring_of(gens);
    let mut prev: Option<u64> = None;
    for s in 1u32.. {
        let mut ext = gens.to_vec();
        ext.extend(
            monomials_of_degree(n, s)
                .into_iter()
                .map(|m| Poly::monomial(m, crate::polyring::GaussRat::from_int(1))),
        );
        let d = quotient_dimension(&ext).finite()?;
        if prev == Some(d) {
            return Some(d);
        }
        if d > cap {
            return None;
        }
        prev = Some(d);
    }
    unreachable!()
}

/// Generators of `(gens) : p`.
pub fn ideal_quotient(gens: &[Poly], p: &Poly) -> Vec<Poly> {
    assert!(!p.is_zero(), "quotient by the zero polynomial");
    intersect(gens, std::slice::from_ref(p))
        .iter()
        .map(|g| g.exact_div(p).expect("element of (p)"))
        .collect()
}

/// Membership of `p` in the ideal of germs at the origin generated by `gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCofactors {
    /// Polynomial with `unit(0) ≠ 0`.
    pub unit: Poly,
    /// `unit·p = Σ cofactors_j·gens_j`.
    pub cofactors: Vec<Poly>,
}

/// `p ∈ (gens)·O_0`, witnessed by `u·p ∈ (gens)` with `u(0) ≠ 0`.
///
/// Such `u` exists iff `(gens) : p ⊄ m`, i.e. iff some generator of the
/// quotient has a nonzero constant term.
pub fn local_membership(p: &Poly, gens: &[Poly]) -> Option<LocalCofactors> {
    let n = p.nvars();
    if p.is_zero() {
        return Some(LocalCofactors {
            unit: Poly::one(n),
            cofactors: vec![Poly::zero(n); gens.len()],
        });
    }
    if let Some(c) = cofactors(p, gens) {
        return Some(LocalCofactors {
            unit: Poly::one(n),
            cofactors: c,
        });
    }
    let unit = ideal_quotient(gens, p)
        .into_iter()
        .filter(|u| !u.constant_term().is_zero())
        .min_by_key(|u| (u.total_degree(), u.len()))?;
    let cofactors = cofactors(&(&unit * p), gens).expect("quotient element");
    Some(LocalCofactors { unit, cofactors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_in;

    fn p(s: &str) -> Poly {
        parse_in(s, &["z1", "z2"]).unwrap()
    }

    fn ps(ss: &[&str]) -> Vec<Poly> {
        ss.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn membership_examples() {
        assert!(!ideal_membership(&p("z1"), &ps(&["z1^2", "z2"])));
        assert!(ideal_membership(&p("z1^2 + z2"), &ps(&["z1^2", "z2"])));
        assert_eq!(cofactors(&p("z1^2"), &ps(&["z1"])), Some(ps(&["z1"])));
        assert_eq!(cofactors(&p("z1 + z2"), &ps(&["z1", "z2"])), Some(ps(&["1", "1"])));
        assert_eq!(cofactors(&p("z1"), &ps(&["z2"])), None);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(quotient_dimension(&ps(&["z1", "z2"])), QuotientDim::Finite(1));
        assert_eq!(quotient_dimension(&ps(&["z1^2", "z2^3"])), QuotientDim::Finite(6));
        assert_eq!(quotient_dimension(&ps(&["z1^2", "z2^3 + z2*z1^5"])), QuotientDim::Finite(6));
        assert_eq!(quotient_dimension(&ps(&["z1"])), QuotientDim::Infinite);
        assert_eq!(quotient_dimension(&ps(&["1 + z1"])), QuotientDim::Infinite);
        assert_eq!(quotient_dimension(&ps(&["1"])), QuotientDim::Finite(0));
    }

    #[test]
    fn radical_examples() {
        assert!(radical_membership(&p("z1"), &ps(&["z1^3", "z2"])));
        assert!(!radical_membership(&p("z2"), &ps(&["z1"])));
        assert!(origin_isolated(&ps(&["z1", "z2"])));
        assert!(!origin_isolated(&ps(&["z1"])));
        assert!(origin_isolated(&ps(&["z1^2", "z2^3 + z2*z1^5"])));
    }

    #[test]
    fn power_searches() {
        assert_eq!(min_power_in_ideal(&p("z1"), &ps(&["z1^3"]), 64), Some(3));
        assert_eq!(min_power_in_ideal(&p("z1"), &ps(&["z2"]), 10), None);
        assert_eq!(min_power_in_ideal(&p("z1 + z2"), &ps(&["z1^2", "z2^5"]), 64), Some(6));
        assert_eq!(min_power_of_ideal(&ps(&["z1", "z2"]), &ps(&["z1^2", "z2^3"]), 64), Some(4));
        assert!(contains_maximal_power(&ps(&["z1", "z2"]), 1));
        assert!(!contains_maximal_power(&ps(&["z1^2", "z2^2"]), 2));
        assert!(contains_maximal_power(&ps(&["z1^2", "z2^2"]), 3));
    }

    #[test]
    fn elimination_examples() {
        let vars = ["z1", "z2", "u", "v"];
        let q = |s: &str| parse_in(s, &vars).unwrap();
        let uv = |s: &str| parse_in(s, &["u", "v"]).unwrap();
        let out = eliminate(&[q("z2 - z1^2"), q("u - z1"), q("v - z2")], 2);
        assert_eq!(out, vec![uv("u^2 - v")]);
        let out = eliminate(&[q("z1"), q("u - z1"), q("v - z2")], 2);
        assert_eq!(out, vec![uv("u")]);
        let out = eliminate(&[q("z2^2 - z1^3"), q("u - z1"), q("v - z2")], 2);
        assert_eq!(out, vec![uv("u^3 - v^2")]);
    }

    #[test]
    fn local_membership_ignores_far_zeros() {
        // (z1 - z1^2)^3 is not in (1 - 2 z1) globally, but 1 - 2 z1 is a unit at 0.
        let f = p("z1 - z1^2");
        let gens = ps(&["1 - 2*z1"]);
        assert!(local_membership(&f.pow(3), &gens).is_some());
        let w = local_membership(&p("z1"), &ps(&["z1 - z1^2"])).unwrap();
        assert!(!w.unit.constant_term().is_zero());
        assert_eq!(&w.unit * &p("z1"), &w.cofactors[0] * &p("z1 - z1^2"));
        assert!(local_membership(&p("z1"), &ps(&["z1^2", "z2"])).is_none());
        assert_eq!(ideal_quotient(&ps(&["z1^2", "z1*z2"]), &p("z1")), ps(&["z2", "z1"]));
    }

    #[test]
    fn intersection_of_axes() {
        let out = intersect(&ps(&["z1"]), &ps(&["z2"]));
        assert_eq!(out, ps(&["z1*z2"]));
    }

    #[test]
    fn local_multiplicity_ignores_far_points() {
        // z1 (z1 - 1) = 0, z2 = 0: two points, one of them the origin.
        let gens = ps(&["z1^2 - z1", "z2"]);
        assert_eq!(quotient_dimension(&gens), QuotientDim::Finite(2));
        assert_eq!(local_multiplicity(&gens, 100), Some(1));
        assert_eq!(local_multiplicity(&ps(&["z1^2", "z2^3"]), 100), Some(6));
        assert_eq!(local_multiplicity(&ps(&["z1"]), 20), None);
    }
}
