use thiserror::Error;

use crate::groebner::{eliminate, local_membership, local_multiplicity, multivariate_gcd, radical_membership};
use crate::polyring::{OneForm, Poly};

use super::MULTIPLICITY_CAP;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeierstrassError {
    #[error("the origin is not isolated in V({0})")]
    NotIsolated(&'static str),
    #[error("zeta2^{0} is not in the ideal (H, zeta1) at the origin")]
    PowerNotInIdeal(u32),
    #[error("elimination produced no image curve")]
    NoImage,
    #[error("leading coefficient in v is not a monomial in u: {0}")]
    NotWeierstrass(String),
    #[error("image degree {found} in v exceeds the requested degree {ell}")]
    DegreeTooLarge { found: u32, ell: u32 },
    #[error("chain identity fails at index {0}")]
    Chain(usize),
}

/// Image-curve polynomial `T(u, v)` of `V(H)` under `(ζ1, ζ2)` and its `v`-derivative chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassData {
    /// In the ring `(u, v)`, with leading `v`-coefficient `u^r`.
    pub t: Poly,
    /// `v`-degree `ℓ̃` of `t`.
    pub degree: u32,
    /// Requested degree `ℓ`; padding to it multiplies `T` by `v^{ℓ − ℓ̃}`.
    pub requested: u32,
    pub padding: u32,
    pub lead_power: u32,
    /// `T(ζ1, ζ2)`.
    pub h2: Poly,
    /// `h_{2,ν} = (∂_v^ν T)(ζ1, ζ2)` for `ν = 0..=ℓ̃`.
    pub chain: Vec<Poly>,
    /// `η_ν = (∂_u ∂_v^ν T)(ζ1, ζ2)` for `ν = 0..ℓ̃`.
    pub etas: Vec<Poly>,
    /// `H` divides `T(ζ1, ζ2)` exactly.
    pub division_exact: bool,
    /// Only the weaker `T(ζ1, ζ2) ∈ rad(H)` could be certified.
    pub radical_fallback: bool,
}

/// Builds `T` by eliminating `z` from `(H, u − ζ1, v − ζ2)` and checks the chain
/// identities `dh_{2,ν} = η_ν·dζ1 + h_{2,ν+1}·dζ2` exactly.
pub fn weierstrass_from_image(h: &Poly, zeta1: &Poly, zeta2: &Poly, ell: u32) -> Result<WeierstrassData, WeierstrassError> {
    let n = h.nvars();
    if local_multiplicity(&[zeta1.clone(), zeta2.clone()], MULTIPLICITY_CAP).is_none() {
        return Err(WeierstrassError::NotIsolated("zeta1, zeta2"));
    }
    if local_multiplicity(&[h.clone(), zeta1.clone()], MULTIPLICITY_CAP).is_none() {
        return Err(WeierstrassError::NotIsolated("H, zeta1"));
    }
    if local_membership(&zeta2.pow(ell), &[h.clone(), zeta1.clone()]).is_none() {
        return Err(WeierstrassError::PowerNotInIdeal(ell));
    }

    let big = n + 2;
    let embed = |p: &Poly| p.remap(big, &(0..n).collect::<Vec<_>>());
    let u = Poly::var(big, n);
    let v = Poly::var(big, n + 1);
    let gens = [embed(h), &u - &embed(zeta1), &v - &embed(zeta2)];
    let image = eliminate(&gens, 2);
    let t = image
        .iter()
        .filter(|g| !g.is_zero())
        .fold(Poly::zero(2), |acc, g| multivariate_gcd(&acc, g));
    if t.is_zero() || t.is_constant() {
        return Err(WeierstrassError::NoImage);
    }
    let degree = t.degree_in(1).unwrap_or(0);
    if degree > ell {
        return Err(WeierstrassError::DegreeTooLarge { found: degree, ell });
    }
    let lead = t.coeffs_in(1).pop().expect("nonzero");
    let (lead_mono, lead_c) = match lead.terms() {
        [(m, c)] if m.exp(1) == 0 => (m.clone(), c.clone()),
        _ => return Err(WeierstrassError::NotWeierstrass(lead.to_string_with(&["u".into(), "v".into()]))),
    };
    let t = t.scale(&lead_c.inv().expect("nonzero"));
    let lead_power = lead_mono.exp(0);

    let images = [zeta1.clone(), zeta2.clone()];
    let mut chain = Vec::with_capacity(degree as usize + 1);
    let mut etas = Vec::with_capacity(degree as usize);
    let mut d = t.clone();
    for nu in 0..=degree {
        chain.push(d.substitute(&images));
        if nu < degree {
            etas.push(d.derivative(0).substitute(&images));
            d = d.derivative(1);
        }
    }
    let dz1 = OneForm::differential(zeta1);
    let dz2 = OneForm::differential(zeta2);
    for nu in 0..degree as usize {
        let lhs = OneForm::differential(&chain[nu]);
        let rhs = dz1.scale(&etas[nu]).add(&dz2.scale(&chain[nu + 1]));
        if lhs != rhs {
            return Err(WeierstrassError::Chain(nu));
        }
    }
    let h2 = chain[0].clone();
    let division_exact = h2.exact_div(h).is_some();
    let radical_fallback = !division_exact && radical_membership(&h2, std::slice::from_ref(h));
    Ok(WeierstrassData {
        t,
        degree,
        requested: ell,
        padding: ell - degree,
        lead_power,
        h2,
        chain,
        etas,
        division_exact,
        radical_fallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_in;

    fn p(s: &str) -> Poly {
        parse_in(s, &["z1", "z2"]).unwrap()
    }

    fn uv(s: &str) -> Poly {
        parse_in(s, &["u", "v"]).unwrap()
    }

    #[test]
    fn parabola() {
        let w = weierstrass_from_image(&p("z2 - z1^2"), &p("z1"), &p("z2"), 1).unwrap();
        assert_eq!(w.t, uv("v - u^2"));
        assert!(w.division_exact);
        assert_eq!(w.degree, 1);
        assert_eq!(w.padding, 0);
    }

    #[test]
    fn cusp() {
        let w = weierstrass_from_image(&p("z2^2 - z1^3"), &p("z1"), &p("z2"), 2).unwrap();
        assert_eq!(w.t, uv("v^2 - u^3"));
        assert_eq!(w.chain.len(), 3);
        assert_eq!(w.chain[2], p("2"));
    }

    #[test]
    fn crossing_lines_in_generic_coordinates() {
        let w = weierstrass_from_image(&p("z1*z2"), &p("z1^2 + 2*z2^2"), &p("z1 + 3*z2"), 16).unwrap();
        assert_eq!(w.degree, 4);
        assert_eq!(w.lead_power, 0);
        assert!(w.division_exact);
        assert_eq!(w.padding, 12);
    }

    #[test]
    fn rejects_missing_power() {
        let e = weierstrass_from_image(&p("z2 - z1^2"), &p("z1"), &p("z2"), 0);
        assert!(matches!(e, Err(WeierstrassError::PowerNotInIdeal(0))));
    }
}
