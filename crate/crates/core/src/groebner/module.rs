use crate::polyring::Poly;

use super::engine::{Engine, RawBasis};
use super::MonomialOrder;

/// Submodule of `R^rank` generated by `gens`, with a reduced position-over-term
/// Gröbner basis (graded-lex within each position).
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    nvars: usize,
    rank: usize,
    gens: Vec<Vec<Poly>>,
    raw: RawBasis,
}

impl ModuleBasis {
    pub fn new(nvars: usize, rank: usize, gens: &[Vec<Poly>]) -> Self {
        assert!(gens.iter().all(|g| g.len() == rank), "inconsistent module rank");
        let engine = Self::engine_for(nvars, rank, gens.len());
        let elems: Vec<_> = gens.iter().map(|g| engine.elem_from_components(g)).collect();
        let raw = engine.run(&elems);
        ModuleBasis {
            nvars,
            rank,
            gens: gens.to_vec(),
            raw,
        }
    }

    fn engine_for(nvars: usize, rank: usize, ngens: usize) -> Engine {
        Engine {
            order: MonomialOrder::DegLex,
            nvars,
            rank,
            ngens,
            track: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vec<Poly>] {
        &self.gens
    }

    /// Basis elements as `rank`-tuples.
    pub fn basis(&self) -> Vec<Vec<Poly>> {
        let eng = Self::engine_for(self.nvars, self.rank, self.gens.len());
        self.raw.elems.iter().map(|e| eng.elem_to_components(e)).collect()
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vec<Poly> {
        let mut eng = Self::engine_for(self.nvars, self.rank, self.gens.len());
        eng.track = false;
        let (rem, _) = eng.normal_form(&eng.elem_from_components(v), &self.raw);
        eng.elem_to_components(&rem)
    }

    /// `c` with `v = Σ c_j·gens_j`, or `None` if `v` is outside the submodule.
    pub fn express(&self, v: &[Poly]) -> Option<Vec<Poly>> {
        assert_eq!(v.len(), self.rank, "inconsistent module rank");
        let eng = Self::engine_for(self.nvars, self.rank, self.gens.len());
        let (rem, quot) = eng.normal_form(&eng.elem_from_components(v), &self.raw);
        if rem.is_empty() {
            quot
        } else {
            None
        }
    }
}

/// Polynomial coefficients `c` with `v = Σ c_j·rows_j`, when they exist.
pub fn module_membership(v: &[Poly], rows: &[Vec<Poly>]) -> Option<Vec<Poly>> {
    let nvars = v
        .iter()
        .chain(rows.iter().flatten())
        .map(Poly::nvars)
        .next()
        .unwrap_or(0);
    if v.iter().all(Poly::is_zero) {
        return Some(vec![Poly::zero(nvars); rows.len()]);
    }
    let mb = ModuleBasis::new(nvars, v.len(), rows);
    let c = mb.express(v)?;
    debug_assert!((0..v.len()).all(|k| {
        let s = rows
            .iter()
            .zip(&c)
            .fold(Poly::zero(nvars), |acc, (r, cj)| &acc + &(cj * &r[k]));
        s == v[k]
    }));
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_in;

    fn p(s: &str) -> Poly {
        parse_in(s, &["z1", "z2"]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let rows = vec![vec![p("z1"), p("z2")], vec![p("z2^2"), p("1 + z1")]];
        let zero = vec![Poly::zero(2), Poly::zero(2)];
        assert_eq!(module_membership(&zero, &rows), Some(vec![Poly::zero(2), Poly::zero(2)]));
        let v: Vec<Poly> = (0..2).map(|k| &rows[0][k] + &(&p("z1") * &rows[1][k])).collect();
        let c = module_membership(&v, &rows).unwrap();
        let back: Vec<Poly> = (0..2).map(|k| &(&c[0] * &rows[0][k]) + &(&c[1] * &rows[1][k])).collect();
        assert_eq!(back, v);
        assert_eq!(module_membership(&[p("1"), p("0")], &[vec![p("z1"), p("0")]]), None);
    }

    #[test]
    fn syzygy_heavy_membership() {
        // rows (z1, z2) and (z2, -z1)·z1; (0, z1^2 + z2^2) = z2·r1 − r2.
        let rows = vec![vec![p("z1"), p("z2")], vec![p("z1*z2"), p("-z1^2")]];
        let v = vec![p("0"), p("z1^2 + z2^2")];
        let c = module_membership(&v, &rows).unwrap();
        let back: Vec<Poly> = (0..2).map(|k| &(&c[0] * &rows[0][k]) + &(&c[1] * &rows[1][k])).collect();
        assert_eq!(back, v);
    }
}
