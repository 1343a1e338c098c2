use crate::polyring::{GaussRat, Poly};

use super::gcd::{multivariate_gcd, squarefree_part};
use super::ideal::{eliminate, intersect, monomials_of_degree, radical_membership};
use super::{GroebnerBasis, MonomialOrder, QuotientDim};

/// Certified generators of a radical ideal.
///
/// Every generator lies in the radical of the input and the input lies in the
/// ideal they generate. `complete` means the generated ideal is the full radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    pub gens: Vec<Poly>,
    pub complete: bool,
}

/// Radical of `(gens)`.
///
/// Exact whenever the ideal factors as `(d)·I'` with `I'` zero-dimensional, which
/// covers every ideal in two variables. Otherwise candidates (variables, squarefree
/// parts, monomials up to `degree_cap`) are certified one by one and the result is
/// marked incomplete.
pub fn radical(gens: &[Poly], degree_cap: u32) -> Radical {
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(n) = gens.first().map(Poly::nvars) else {
        return Radical {
            gens: Vec::new(),
            complete: true,
        };
    };
    if nonzero.is_empty() {
        return Radical {
            gens: Vec::new(),
            complete: true,
        };
    }
    let gb = GroebnerBasis::new(n, &nonzero, MonomialOrder::DegLex);
    if gb.is_unit_ideal() {
        return Radical {
            gens: vec![Poly::one(n)],
            complete: true,
        };
    }

    let d = nonzero
        .iter()
        .fold(Poly::zero(n), |acc, g| multivariate_gcd(&acc, g));
    let reduced: Vec<Poly> = nonzero
        .iter()
        .map(|g| g.exact_div(&d).expect("gcd divides"))
        .collect();
    let red_gb = GroebnerBasis::new(n, &reduced, MonomialOrder::DegLex);
    let sq_d = squarefree_part(&d).expect("nonzero");

    let exact = if red_gb.is_unit_ideal() {
        Some(vec![sq_d.clone()])
    } else if let QuotientDim::Finite(_) = red_gb.quotient_dimension() {
        let rad_red = zero_dim_radical(&red_gb);
        if d.is_unit() {
            Some(rad_red)
        } else {
            Some(intersect(&[sq_d.clone()], &rad_red))
        }
    } else {
        None
    };

    match exact {
        Some(rad) => Radical {
            gens: GroebnerBasis::new(n, &rad, MonomialOrder::DegLex).basis().to_vec(),
            complete: true,
        },
        None => heuristic_radical(&nonzero, &sq_d, degree_cap),
    }
}

/// Seidenberg: for zero-dimensional `I`, `rad I = I + (sqfree(μ_1), …, sqfree(μ_n))`
/// where `μ_v` generates `I ∩ ℚ(i)[z_v]`.
fn zero_dim_radical(gb: &GroebnerBasis) -> Vec<Poly> {
    let n = gb.nvars();
    let mut out = gb.basis().to_vec();
    for v in 0..n {
        // Move z_v to the last slot, eliminate the others, move back.
        let to_last: Vec<usize> = (0..n)
            .map(|j| match j.cmp(&v) {
                std::cmp::Ordering::Less => j,
                std::cmp::Ordering::Equal => n - 1,
                std::cmp::Ordering::Greater => j - 1,
            })
            .collect();
        let moved: Vec<Poly> = gb.basis().iter().map(|g| g.remap(n, &to_last)).collect();
        let uni = eliminate(&moved, 1);
        let mu = uni
            .into_iter()
            .find(|p| !p.is_zero())
            .expect("zero-dimensional ideal has a univariate element");
        let mu_n = mu.remap(n, &[v]);
        out.push(squarefree_part(&mu_n).expect("nonzero"));
    }
    out
}

fn heuristic_radical(gens: &[Poly], sq_d: &Poly, degree_cap: u32) -> Radical {
    let n = gens[0].nvars();
    let mut cands: Vec<Poly> = Vec::new();
    cands.push(sq_d.clone());
    cands.extend((0..n).map(|v| Poly::var(n, v)));
    cands.extend(gens.iter().filter_map(squarefree_part));
    for k in 1..=degree_cap {
        cands.extend(
            monomials_of_degree(n, k)
                .into_iter()
                .map(|m| Poly::monomial(m, GaussRat::from_int(1))),
        );
    }
    let mut accepted: Vec<Poly> = gens.to_vec();
    for c in cands {
        if c.is_unit() {
            continue;
        }
        let already = GroebnerBasis::new(n, &accepted, MonomialOrder::DegLex).contains(&c);
        if !already && radical_membership(&c, gens) {
            accepted.push(c);
        }
    }
    Radical {
        gens: GroebnerBasis::new(n, &accepted, MonomialOrder::DegLex).basis().to_vec(),
        complete: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_in;

    fn p(s: &str) -> Poly {
        parse_in(s, &["z1", "z2"]).unwrap()
    }

    fn same_ideal(a: &[Poly], b: &[Poly]) -> bool {
        let ga = GroebnerBasis::new(2, a, MonomialOrder::DegLex);
        let gb = GroebnerBasis::new(2, b, MonomialOrder::DegLex);
        ga.basis() == gb.basis()
    }

    #[test]
    fn principal_and_zero_dimensional() {
        let r = radical(&[p("z1^3*z2^2")], 6);
        assert!(r.complete);
        assert!(same_ideal(&r.gens, &[p("z1*z2")]));
        let r = radical(&[p("z1^2"), p("z2^3 + z2*z1^5")], 6);
        assert!(same_ideal(&r.gens, &[p("z1"), p("z2")]));
        let r = radical(&[p("(z1 - 1)^2"), p("z2^2")], 6);
        assert!(same_ideal(&r.gens, &[p("z1 - 1"), p("z2")]));
    }

    #[test]
    fn mixed_component() {
        // (z1^2·z2, z1^3) = z1^2·(z2, z1): radical (z1).
        let r = radical(&[p("z1^2*z2"), p("z1^3")], 6);
        assert!(r.complete);
        assert!(same_ideal(&r.gens, &[p("z1")]));
        // z1·(z2, z1 - 1): radical (z1) ∩ (z2, z1 - 1) = (z1·z2, z1^2 - z1).
        let r = radical(&[p("z1*z2^2"), p("z1*(z1 - 1)")], 6);
        assert!(same_ideal(&r.gens, &[p("z1*z2"), p("z1^2 - z1")]));
    }
}
