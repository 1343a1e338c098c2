//! Gröbner bases for polynomial ideals and free modules, and the ideal
//! queries built on them.

mod engine;
mod gcd;
mod ideal;
mod module;
mod radical;

pub use gcd::{multivariate_gcd, squarefree_part};
pub use ideal::{
    cofactors, contains_maximal_power, eliminate, ideal_contains, ideal_membership, ideal_quotient, intersect,
    local_membership, local_multiplicity, LocalCofactors, min_power_in_ideal, min_power_of_ideal, origin_isolated, quotient_dimension,
    radical_membership,
};
pub use module::{module_membership, ModuleBasis};
pub use radical::{radical, Radical};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::polyring::{Monomial, Poly};
use engine::{Engine, RawBasis};

/// Term orders. `Elimination { block }` compares the first `block` variables
/// by graded-lex and breaks ties by graded-lex on the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    DegLex,
    Lex,
    Elimination { block: usize },
}

/// Vector-space dimension of a quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

impl QuotientDim {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDim::Finite(d) => Some(d),
            QuotientDim::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDim::Finite(d) => write!(f, "{d}"),
            QuotientDim::Infinite => write!(f, "infinite"),
        }
    }
}

/// Reduced Gröbner basis of an ideal, optionally remembering how each basis
/// element is built from the generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    gens: Vec<Poly>,
    basis: Vec<Poly>,
    raw: RawBasis,
}

impl GroebnerBasis {
    pub fn new(nvars: usize, gens: &[Poly], order: MonomialOrder) -> Self {
        Self::build(nvars, gens, order, false)
    }

    /// Like [`GroebnerBasis::new`], also tracking cofactors for [`GroebnerBasis::cofactors_of`].
    pub fn with_cofactors(nvars: usize, gens: &[Poly], order: MonomialOrder) -> Self {
        Self::build(nvars, gens, order, true)
    }

    fn build(nvars: usize, gens: &[Poly], order: MonomialOrder, track: bool) -> Self {
        assert!(gens.iter().all(|g| g.nvars() == nvars), "generators live in different rings");
        let engine = Engine {
            order,
            nvars,
            rank: 1,
            ngens: gens.len(),
            track,
        };
        let elems: Vec<_> = gens
            .iter()
            .map(|g| engine.elem_from_components(std::slice::from_ref(g)))
            .collect();
        let raw = engine.run(&elems);
        let basis = raw
            .elems
            .iter()
            .map(|e| engine.elem_to_components(e).pop().expect("rank one"))
            .collect();
        GroebnerBasis {
            nvars,
            order,
            gens: gens.to_vec(),
            basis,
            raw,
        }
    }

    fn engine(&self) -> Engine {
        Engine {
            order: self.order,
            nvars: self.nvars,
            rank: 1,
            ngens: self.gens.len(),
            track: self.raw.cofs.is_some(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Basis elements, monic, in ascending order of leading term.
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    /// Leading monomials under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.raw.elems.iter().map(|e| e[0].mono.clone()).collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        let mut eng = self.engine();
        eng.track = false;
        let e = eng.elem_from_components(std::slice::from_ref(p));
        let (rem, _) = eng.normal_form(&e, &self.raw);
        eng.elem_to_components(&rem).pop().expect("rank one")
    }

    pub fn contains(&self, p: &Poly) -> bool {
        if p.is_zero() {
            return true;
        }
        if self.is_unit_ideal() {
            return true;
        }
        self.normal_form(p).is_zero()
    }

    /// Every element of `ps` is a member.
    pub fn contains_all(&self, ps: &[Poly]) -> bool {
        ps.iter().all(|p| self.contains(p))
    }

    /// `c` with `p = Σ c_j·gens_j`, or `None` when `p` is not a member.
    /// Requires a basis built by [`GroebnerBasis::with_cofactors`].
    pub fn cofactors_of(&self, p: &Poly) -> Option<Vec<Poly>> {
        assert!(self.raw.cofs.is_some(), "basis was built without cofactor tracking");
        let eng = self.engine();
        let e = eng.elem_from_components(std::slice::from_ref(p));
        let (rem, quot) = eng.normal_form(&e, &self.raw);
        if rem.is_empty() {
            quot
        } else {
            None
        }
    }

    /// Monomials outside the leading-term ideal, or `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let lms = self.leading_monomials();
        let mut bounds = vec![u32::MAX; self.nvars];
        for m in &lms {
            let nz: Vec<usize> = (0..self.nvars).filter(|&v| m.exp(v) > 0).collect();
            match nz.as_slice() {
                [] => return Some(Vec::new()),
                [v] => bounds[*v] = bounds[*v].min(m.exp(*v)),
                _ => {}
            }
        }
        if self.nvars == 0 {
            return Some(if lms.is_empty() { vec![Monomial::one(0)] } else { Vec::new() });
        }
        if bounds.iter().any(|&b| b == u32::MAX) {
            return None;
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars];
        loop {
            let m = Monomial::from_exps(&exps);
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            // Odometer over the bounding box of the staircase.
            let mut v = self.nvars - 1;
            loop {
                exps[v] += 1;
                if exps[v] < bounds[v] {
                    break;
                }
                exps[v] = 0;
                if v == 0 {
                    out.sort();
                    out.reverse();
                    return Some(out);
                }
                v -= 1;
            }
        }
    }

    pub fn quotient_dimension(&self) -> QuotientDim {
        match self.standard_monomials() {
            Some(s) => QuotientDim::Finite(s.len() as u64),
            None => QuotientDim::Infinite,
        }
    }

    /// Least `s ≤ cap` with `p^s` a member: doubling, then bisection.
    pub fn min_power(&self, p: &Poly, cap: u32) -> Option<u32> {
        if cap == 0 {
            return None;
        }
        if self.is_unit_ideal() {
            return Some(1);
        }
        // pows[k] = NF(p^(2^k)).
        let mut pows: Vec<Poly> = vec![self.normal_form(p)];
        let power_nf = |s: u32, pows: &mut Vec<Poly>| -> Poly {
            let mut acc: Option<Poly> = None;
            let mut k = 0;
            while (1u64 << k) <= s as u64 {
                if k >= pows.len() {
                    let last = pows.last().expect("nonempty");
                    let sq = self.normal_form(&(last * last));
                    pows.push(sq);
                }
                if s & (1 << k) != 0 {
                    acc = Some(match acc {
                        None => pows[k].clone(),
                        Some(a) => self.normal_form(&(&a * &pows[k])),
                    });
                }
                k += 1;
            }
            acc.expect("s ≥ 1")
        };
        // Invariant: p^lo is not a member (p^0 = 1 is not, the ideal being proper).
        let mut lo = 0u32;
        let mut hi = None;
        let mut s = 1u32;
        loop {
            let probe = s.min(cap);
            if power_nf(probe, &mut pows).is_zero() {
                hi = Some(probe);
                break;
            }
            lo = probe;
            if probe == cap {
                break;
            }
            s = s.saturating_mul(2);
        }
        let mut hi = hi?;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if power_nf(mid, &mut pows).is_zero() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(nvars: usize, gens: &[Poly], order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis::new(nvars, gens, order)
}

/// Normal form of `p` modulo `gb`.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    gb.normal_form(p)
}

pub(crate) fn ring_of(gens: &[Poly]) -> usize {
    gens.first().map(Poly::nvars).expect("at least one generator")
}
