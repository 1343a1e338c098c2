use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector `z_1^{a_1} ⋯ z_n^{a_n}`.
///
/// The derived order is graded-lex: total degree first, then the exponent of
/// `z_1`, then `z_2`, and so on. This is the canonical term order of [`Poly`].
///
/// [`Poly`]: super::Poly
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    /// The single variable `z_{var+1}` (zero-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }

    /// Same exponents with `extra` zero exponents appended.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(extra));
        Monomial { exps }
    }

    pub(crate) fn with_exps(exps: SmallVec<[u32; 4]>) -> Monomial {
        Monomial { exps }
    }

    pub(crate) fn exps_mut(&mut self) -> &mut SmallVec<[u32; 4]> {
        &mut self.exps
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders a monomial against a list of variable names; `1` for the empty product.
pub(crate) struct MonomialDisplay<'a> {
    pub mono: &'a Monomial,
    pub names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &e) in self.mono.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[v])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exps(&[2, 0]);
        let b = Monomial::from_exps(&[1, 1]);
        let c = Monomial::from_exps(&[0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::one(2) < b);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exps(&[2, 1]);
        let b = Monomial::from_exps(&[1, 3]);
        assert_eq!(a.lcm(&b), Monomial::from_exps(&[2, 3]));
        assert!(Monomial::from_exps(&[1, 1]).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(Monomial::from_exps(&[1, 1]).quotient_of(&a), Monomial::from_exps(&[1, 0]));
    }
}
