//! Independent oracles and helpers shared by the integration suites.
#![allow(dead_code)]

use std::io::Write;
use std::time::Duration;

use kohn_core::polyring::{GaussRat, Monomial, Poly};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Monomials of total degree `< s` in `n` variables.
fn monomials_below(n: usize, s: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial::from_exps(prefix));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if s > 0 {
        rec(n, s - 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Rank of a dense matrix over ℚ(i) by row reduction.
fn rank(mut rows: Vec<Vec<GaussRat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let pivot_row: Vec<GaussRat> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

/// `dim C[z]/(I + m^s)` from the truncated jets of `m·g`, `deg m < s`.
pub fn jet_colength(gens: &[Poly], s: u32) -> usize {
    let n = gens[0].nvars();
    let basis = monomials_below(n, s);
    let index = |m: &Monomial| basis.iter().position(|b| b == m);
    let mut rows = Vec::new();
    for g in gens {
        for m in &basis {
            let mut row = vec![GaussRat::zero(); basis.len()];
            for (t, c) in g.mul_monomial(m, &GaussRat::from_int(1)).terms() {
                if let Some(k) = index(t) {
                    row[k] = c.clone();
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    basis.len() - rank(rows)
}

/// Local multiplicity at the origin by truncated jets: grows `s` until two
/// consecutive truncations agree, which forces `m^s ⊆ I` locally.
pub fn jet_multiplicity(gens: &[Poly], max_s: u32) -> Option<usize> {
    let mut prev = jet_colength(gens, 1);
    for s in 2..=max_s {
        let cur = jet_colength(gens, s);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

/// Standard monomials of a monomial ideal in two variables, counted by brute force.
pub fn staircase_count(gens: &[(u32, u32)]) -> Option<u64> {
    let a = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min()?;
    let b = gens.iter().filter(|g| g.0 == 0).map(|g| g.1).min()?;
    let mut count = 0;
    for i in 0..a {
        for j in 0..b {
            if !gens.iter().any(|&(x, y)| x <= i && y <= j) {
                count += 1;
            }
        }
    }
    Some(count)
}

pub fn mono(exps: &[u32]) -> Poly {
    Poly::monomial(Monomial::from_exps(exps), GaussRat::from_int(1))
}

/// Polynomial with up to `terms` terms of degree `≤ deg` and small integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let total = rng.gen_range(0..=deg);
        let mut exps = vec![0u32; nvars];
        let mut left = total;
        for e in exps.iter_mut().take(nvars - 1) {
            let x = rng.gen_range(0..=left);
            *e = x;
            left -= x;
        }
        exps[nvars - 1] = left;
        let c = rng.gen_range(-5i64..=5);
        p = &p + &Poly::monomial(Monomial::from_exps(&exps), GaussRat::from_int(c));
    }
    p
}

/// One acceptance line, written around the harness's output capture.
pub fn report(criterion: u32, name: &str, pass: bool, elapsed: Duration, limit: Duration, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!(
        "[acceptance {criterion}] {verdict} {name} ({:.2}s, limit {}s) {detail}\n",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}
