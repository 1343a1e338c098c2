use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::MonomialDisplay;
use super::{GaussRat, Monomial, PolyError};

/// A sparse multivariate polynomial over ℚ(i).
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, GaussRat)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, GaussRat::one())
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        Poly::monomial(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Poly::constant(nvars, GaussRat::from_int(n))
    }

    /// The variable `z_{var+1}` (zero-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        Poly::monomial(Monomial::var(nvars, var), GaussRat::one())
    }

    pub fn monomial(mono: Monomial, c: GaussRat) -> Self {
        let nvars = mono.nvars();
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(mono, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut acc: HashMap<Monomial, GaussRat> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(e) => *e += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, GaussRat>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms }
    }

    /// Takes terms already sorted descending with no duplicates or zeros.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, GaussRat)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, GaussRat)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, GaussRat)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Nonzero constant, i.e. a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn constant_term(&self) -> GaussRat {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => GaussRat::zero(),
        }
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<&(Monomial, GaussRat)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Minimal total degree of a term; `None` stands for +∞ (the zero polynomial).
    pub fn vanishing_order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    /// True when every term has zero exponent in `var`.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.exp(var) == 0)
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    /// Scales so the leading graded-lex coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Poly::monomial(m.pow(e), c.pow(e));
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in the zero-based variable `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        assert!(var < self.nvars, "variable index out of range");
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                let mut m2 = m.clone();
                m2.exps_mut()[var] = e - 1;
                (m2, c * &GaussRat::from_int(e as i64))
            });
        // Lowering one exponent can reorder terms only across degree ties, so re-sort.
        let mut terms: Vec<_> = terms.collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    /// `∂/∂z_{var_index}` with a one-based index.
    pub fn differentiate(&self, var_index: usize) -> Result<Poly, PolyError> {
        if var_index == 0 || var_index > self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index: var_index,
                nvars: self.nvars,
            });
        }
        Ok(self.derivative(var_index - 1))
    }

    /// All first partials `(∂_1 p, …, ∂_n p)`.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|v| self.derivative(v)).collect()
    }

    /// Substitutes `images[j]` for `z_{j+1}`; all images share the target ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap() * &images[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-embeds into `new_nvars` variables; `mapping[j]` is the new index of old variable `j`.
    pub fn remap(&self, new_nvars: usize, mapping: &[usize]) -> Poly {
        assert_eq!(mapping.len(), self.nvars);
        Poly::from_terms(
            new_nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = smallvec::SmallVec::from_elem(0u32, new_nvars);
                for (j, &x) in m.exps().iter().enumerate() {
                    e[mapping[j]] += x;
                }
                (Monomial::with_exps(e), c.clone())
            }),
        )
    }

    /// Appends `extra` new variables after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Keeps only the listed variables, in the listed order. `None` if some term
    /// involves a dropped variable.
    pub fn restrict(&self, keep: &[usize]) -> Option<Poly> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let dropped: u32 = (0..self.nvars).filter(|v| !keep.contains(v)).map(|v| m.exp(v)).sum();
            if dropped > 0 {
                return None;
            }
            let e: Vec<u32> = keep.iter().map(|&v| m.exp(v)).collect();
            out.push((Monomial::from_exps(&e), c.clone()));
        }
        Some(Poly::from_terms(keep.len(), out))
    }

    /// Coefficients of `z_var^k` for `k = 0..=deg`, each with `var` removed (exponent zero).
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Monomial, GaussRat)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            let mut m2 = m.clone();
            m2.exps_mut()[var] = 0;
            buckets[e].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Poly::from_terms(self.nvars, t))
            .collect()
    }

    /// Reassembles `Σ coeffs[k]·z_var^k`.
    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(nvars, var).pow(k as u32);
            acc = &acc + &c.mul_monomial(&m, &GaussRat::one());
        }
        acc
    }

    /// Multivariate division with remainder by one divisor (graded-lex leading terms).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut quot: Vec<(Monomial, GaussRat)> = Vec::new();
        let mut rem: Vec<(Monomial, GaussRat)> = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c * &lc_inv;
                p = &p - &divisor.mul_monomial(&qm, &qc);
                quot.push((qm, qc));
            } else {
                rem.push((m, c));
                p.terms.remove(0);
            }
        }
        (
            Poly::from_terms(self.nvars, quot),
            Poly::from_sorted_terms(self.nvars, rem),
        )
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// True when `self = c·other` for a nonzero constant `c`.
    pub fn is_unit_multiple_of(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let c = &self.terms[0].1 / &other.terms[0].1;
        self == &other.scale(&c)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    /// Canonical text under the given variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }
}

/// Default variable names `z1, …, zn`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("z{i}")).collect()
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    assert_eq!(a.nvars, b.nvars, "polynomials live in different rings");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match ma.cmp(mb) {
            std::cmp::Ordering::Greater => {
                out.push((ma.clone(), ca.clone()));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((mb.clone(), if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((ma.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(
        b.terms[j..]
            .iter()
            .map(|(m, c)| (m.clone(), if negate_b { -c } else { c.clone() })),
    );
    Poly {
        nvars: a.nvars,
        terms: out,
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge(self, rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials live in different rings");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, GaussRat> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::from_map(self.nvars, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    /// Terms in descending graded-lex order, e.g. `3/2*z1^2*z2 - (1+2i)*z2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative_display();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = MonomialDisplay {
                mono: m,
                names: self.names,
            };
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.display(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{jacobian_det, parse_in};

    fn p(s: &str) -> Poly {
        parse_in(s, &["z1", "z2"]).unwrap()
    }

    #[test]
    fn power_rule_and_independent_variable() {
        assert_eq!(p("z1^2").differentiate(1).unwrap(), p("2*z1"));
        assert!(p("z1^7").differentiate(2).unwrap().is_zero());
        assert_eq!(p("z2^3 + z2*z1^5").differentiate(2).unwrap(), p("3*z2^2 + z1^5"));
        assert!(p("z1").differentiate(3).is_err());
        assert!(p("z1").differentiate(0).is_err());
    }

    #[test]
    fn jacobian_of_two_parameter_family() {
        // (M, N, K) = (2, 3, 5): det = M·(N·z1^{M-1}z2^{N-1} + z1^{K+M-1}).
        let j = jacobian_det(&[p("z1^2"), p("z2^3 + z2*z1^5")]).unwrap();
        assert_eq!(j, p("2*(3*z1*z2^2 + z1^6)"));
        assert!(jacobian_det(&[p("z1^2"), p("z1^2")]).unwrap().is_zero());
    }

    #[test]
    fn vanishing_orders() {
        assert_eq!(Poly::zero(2).vanishing_order(), None);
        assert_eq!(p("1 + z1").vanishing_order(), Some(0));
        assert_eq!(p("3*z1*z2^2 + z1^6").vanishing_order(), Some(3));
    }

    #[test]
    fn division_with_remainder() {
        let f = p("z1^3 + z1*z2 + 1");
        let g = p("z1 + z2");
        let (q, r) = f.div_rem(&g);
        assert_eq!(&(&q * &g) + &r, f);
        assert_eq!(p("(z1+z2)^2*(z1-z2)").exact_div(&g), Some(p("z1^2 - z2^2")));
        assert_eq!(f.exact_div(&g), None);
    }

    #[test]
    fn substitution_and_coefficients() {
        let f = p("z1^2*z2 + z2");
        let img = [p("z1 + z2"), p("z1")];
        assert_eq!(f.substitute(&img), p("(z1+z2)^2*z1 + z1"));
        let cs = f.coeffs_in(1);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1], p("z1^2 + 1"));
        assert_eq!(Poly::from_coeffs_in(2, 1, &cs), f);
    }

    #[test]
    fn pow_and_unit_multiples() {
        assert_eq!(p("z1 + z2").pow(3), p("z1^3 + 3*z1^2*z2 + 3*z1*z2^2 + z2^3"));
        assert!(p("2i*z1 + 4i").is_unit_multiple_of(&p("z1 + 2")));
        assert!(!p("z1 + 3").is_unit_multiple_of(&p("z1 + 2")));
    }
}
