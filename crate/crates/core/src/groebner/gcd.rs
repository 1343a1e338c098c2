//! Multivariate gcd by subresultant remainder sequences, recursing on the
//! coefficient ring.

use crate::polyring::Poly;

/// Highest-index variable occurring in either polynomial.
fn main_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&v| !a.is_free_of(v) || !b.is_free_of(v))
}

fn lc_in(p: &Poly, v: usize) -> Poly {
    p.coeffs_in(v).pop().expect("nonzero polynomial")
}

fn deg_in(p: &Poly, v: usize) -> u32 {
    p.degree_in(v).unwrap_or(0)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.nvars());
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = multivariate_gcd(&g, &c);
        if g.is_unit() {
            break;
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` in `v`: `lc(b)^(da−db+1)·a mod b`. Requires `deg_v b ≥ 1`.
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = deg_in(b, v);
    debug_assert!(db >= 1);
    let lb = lc_in(b, v);
    let xv = Poly::var(a.nvars(), v);
    let mut r = a.clone();
    let mut e = (deg_in(a, v) + 1).saturating_sub(db);
    while !r.is_zero() && deg_in(&r, v) >= db {
        let shift = xv.pow(deg_in(&r, v) - db);
        r = &(&lb * &r) - &(&(&lc_in(&r, v) * &shift) * b);
        e -= 1;
    }
    &lb.pow(e) * &r
}

/// A greatest common divisor, normalized monic (leading graded-lex coefficient 1).
/// `gcd(p, 0) = p` up to that normalization.
pub fn multivariate_gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars(), "polynomials live in different rings");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let Some(v) = main_var(a, b) else {
        return Poly::one(a.nvars());
    };
    if a.is_free_of(v) {
        return multivariate_gcd(a, &content_in(b, v));
    }
    if b.is_free_of(v) {
        return multivariate_gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = multivariate_gcd(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if deg_in(&p, v) < deg_in(&q, v) {
        std::mem::swap(&mut p, &mut q);
    }
    // Subresultant PRS: p, q, then prem(p, q)/(g·h^δ) with g, h updated as in Brown–Collins.
    let mut g = Poly::one(a.nvars());
    let mut h = Poly::one(a.nvars());
    loop {
        let delta = deg_in(&p, v) - deg_in(&q, v);
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.is_free_of(v) {
            return c.monic();
        }
        let denom = &g * &h.pow(delta);
        p = q;
        q = r.exact_div(&denom).expect("subresultant division is exact");
        g = lc_in(&p, v);
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            num.exact_div(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
    let cq = content_in(&q, v);
    let pp = q.exact_div(&cq).expect("content divides");
    (&c * &pp).monic()
}

/// `p / gcd(p, ∂_1 p, …, ∂_n p)`, monic: the product of the distinct irreducible factors.
pub fn squarefree_part(p: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return None;
    }
    let mut g = p.clone();
    for d in p.gradient() {
        g = multivariate_gcd(&g, &d);
        if g.is_unit() {
            break;
        }
    }
    Some(p.exact_div(&g).expect("gcd divides").monic())
}
