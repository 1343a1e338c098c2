use std::fmt;

use super::{Poly, PolyError};

/// A holomorphic 1-form `Σ coeffs[j]·dz_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneForm {
    coeffs: Vec<Poly>,
}

impl OneForm {
    pub fn new(coeffs: Vec<Poly>) -> Self {
        debug_assert!(coeffs.windows(2).all(|w| w[0].nvars() == w[1].nvars()));
        OneForm { coeffs }
    }

    pub fn zero(nvars: usize) -> Self {
        OneForm {
            coeffs: vec![Poly::zero(nvars); nvars],
        }
    }

    /// The differential `df = Σ ∂_j f dz_j`.
    pub fn differential(f: &Poly) -> Self {
        OneForm {
            coeffs: f.gradient(),
        }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, f: &Poly) -> OneForm {
        OneForm::new(self.coeffs.iter().map(|a| a * f).collect())
    }

    pub fn to_strings(&self, names: &[String]) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string_with(names)).collect()
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*dz{}", j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Square matrix of polynomials, row-major.
pub type PolyMatrix = Vec<Vec<Poly>>;

pub fn is_square(a: &[Vec<Poly>]) -> bool {
    a.iter().all(|row| row.len() == a.len())
}

/// Determinant by cofactor expansion along the first row. The 0×0 determinant is 1.
pub fn det(a: &[Vec<Poly>], nvars: usize) -> Poly {
    assert!(is_square(a), "determinant of a non-square matrix");
    let cols: Vec<usize> = (0..a.len()).collect();
    det_minor(a, 0, &cols, nvars)
}

fn det_minor(a: &[Vec<Poly>], row: usize, cols: &[usize], nvars: usize) -> Poly {
    match cols.len() {
        0 => Poly::one(nvars),
        1 => a[row][cols[0]].clone(),
        2 => &(&a[row][cols[0]] * &a[row + 1][cols[1]]) - &(&a[row][cols[1]] * &a[row + 1][cols[0]]),
        _ => {
            let mut acc = Poly::zero(nvars);
            for (k, &c) in cols.iter().enumerate() {
                if a[row][c].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = &a[row][c] * &det_minor(a, row + 1, &rest, nvars);
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Classical adjugate: `adj(a)·a = a·adj(a) = det(a)·I`.
pub fn adjugate(a: &[Vec<Poly>], nvars: usize) -> PolyMatrix {
    assert!(is_square(a), "adjugate of a non-square matrix");
    let n = a.len();
    if n == 1 {
        return vec![vec![Poly::one(nvars)]];
    }
    let mut out = vec![vec![Poly::zero(nvars); n]; n];
    for i in 0..n {
        for j in 0..n {
            // adj[j][i] is the (i, j) cofactor.
            let minor: PolyMatrix = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c].clone()).collect())
                .collect();
            let d = det(&minor, nvars);
            out[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    out
}

pub fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>], nvars: usize) -> PolyMatrix {
    let n = a.len();
    let m = b.first().map(Vec::len).unwrap_or(0);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Poly::zero(nvars);
                    for (k, brow) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !brow[j].is_zero() {
                            acc = &acc + &(&a[i][k] * &brow[j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize, nvars: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one(nvars) } else { Poly::zero(nvars) })
                .collect()
        })
        .collect()
}

/// `det(∂f_i/∂z_j)` for exactly `nvars` functions.
pub fn jacobian_det(fs: &[Poly]) -> Result<Poly, PolyError> {
    let nvars = match fs.first() {
        Some(f) => f.nvars(),
        None => {
            return Err(PolyError::Arity {
                expected: 0,
                got: 0,
            })
        }
    };
    if fs.len() != nvars {
        return Err(PolyError::Arity {
            expected: nvars,
            got: fs.len(),
        });
    }
    let rows: PolyMatrix = fs.iter().map(Poly::gradient).collect();
    Ok(det(&rows, nvars))
}

/// Determinant of the coefficient matrix of `n` one-forms (row `i` is form `i`).
pub fn forms_det(forms: &[OneForm]) -> Result<Poly, PolyError> {
    let nvars = forms.first().map(|f| f.dim()).unwrap_or(0);
    if forms.len() != nvars || forms.iter().any(|f| f.dim() != nvars) {
        return Err(PolyError::Arity {
            expected: nvars,
            got: forms.len(),
        });
    }
    let rows: PolyMatrix = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    Ok(det(&rows, nvars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_in;

    fn p(s: &str) -> Poly {
        parse_in(s, &["z1", "z2", "z3"]).unwrap()
    }

    #[test]
    fn adjugate_times_matrix_is_det() {
        let a = vec![
            vec![p("z1"), p("z3"), p("0")],
            vec![p("0"), p("z2"), p("z1^2")],
            vec![p("z2*z3"), p("1"), p("z3")],
        ];
        let d = det(&a, 3);
        let adj = adjugate(&a, 3);
        let prod = mat_mul(&adj, &a, 3);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &d);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn jacobian_of_coordinates() {
        let fs = [p("z1"), p("z2"), p("z3")];
        assert!(jacobian_det(&fs).unwrap().is_one());
        assert!(jacobian_det(&fs[..2]).is_err());
    }
}
