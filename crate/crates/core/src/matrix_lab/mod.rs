//! Matrix-multiplier laboratory: the adjugate-based vector multiplier of a matrix
//! multiplier versus the classical `∂(det a)`, and whether their difference is
//! already a polynomial combination of the rows.
//!
//! In two variables the difference always is such a combination; in three it
//! need not be.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::{ideal_membership, module_membership};
use crate::multiplier_core::matrix_to_vector_form;
use crate::polyring::{det, parse_poly, OneForm, Poly, PolyError, PolyMatrix};

pub const REPORT_SCHEMA: &str = "kohn-report/1";

/// On-disk form: `{"vars": [...], "entries": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub vars: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must be square with one row per variable ({vars} variables, row {row} has {len} entries, {rows} rows)")]
    Shape { vars: usize, rows: usize, row: usize, len: usize },
    #[error("entry ({row}, {col}): {source}")]
    Parse { row: usize, col: usize, source: PolyError },
}

impl MatrixFile {
    pub fn parse(&self) -> Result<PolyMatrix, MatrixError> {
        let n = self.vars.len();
        let shape_err = |row: usize, len: usize| MatrixError::Shape {
            vars: n,
            rows: self.entries.len(),
            row,
            len,
        };
        if self.entries.len() != n || n == 0 {
            return Err(shape_err(0, self.entries.first().map_or(0, Vec::len)));
        }
        self.entries
            .iter()
            .enumerate()
            .map(|(row, r)| {
                if r.len() != n {
                    return Err(shape_err(row, r.len()));
                }
                r.iter()
                    .enumerate()
                    .map(|(col, s)| parse_poly(s, &self.vars).map_err(|source| MatrixError::Parse { row, col, source }))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The difference lies in the polynomial row module.
    Reducible,
    /// It does not: a symbolic verdict over polynomial coefficients.
    New,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub b_form: OneForm,
    pub grad_det: OneForm,
    pub difference: OneForm,
    /// `difference = Σ c_k·row_k`.
    pub decomposition: Option<Vec<Poly>>,
    pub verdict: Verdict,
    /// For 3×3 upper-triangular input: `Σ_ν (−a33·ξ·∂_ν ξ − a11·η·∂_ν η) dz_ν`.
    pub displayed_difference: Option<OneForm>,
}

impl ComparisonReport {
    /// The displayed closed form agrees with the computed difference up to a constant factor.
    pub fn display_agrees(&self) -> Option<bool> {
        let shown = self.displayed_difference.as_ref()?;
        let a = self.difference.coeffs();
        let b = shown.coeffs();
        if a.iter().all(Poly::is_zero) || b.iter().all(Poly::is_zero) {
            return Some(a == b);
        }
        // Same constant ratio in every component.
        let (k, _) = a.iter().enumerate().find(|(_, p)| !p.is_zero())?;
        if b[k].is_zero() || !a[k].is_unit_multiple_of(&b[k]) {
            return Some(false);
        }
        let c = &a[k].leading()?.1 / &b[k].leading()?.1;
        Some(a.iter().zip(b).all(|(x, y)| *x == y.scale(&c)))
    }

    pub fn to_json(&self, names: &[String]) -> ReportJson {
        let form = |f: &OneForm| f.to_strings(names);
        let agrees = self.display_agrees();
        ReportJson {
            schema: REPORT_SCHEMA,
            vars: names.to_vec(),
            b_form: form(&self.b_form),
            grad_det: form(&self.grad_det),
            difference: form(&self.difference),
            decomposition: self
                .decomposition
                .as_ref()
                .map(|c| c.iter().map(|p| p.to_string_with(names)).collect()),
            verdict: self.verdict,
            verdict_basis: "membership of the difference in the row module over polynomial coefficients",
            displayed_difference: self.displayed_difference.as_ref().map(form),
            displayed_difference_agrees: agrees,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub schema: &'static str,
    pub vars: Vec<String>,
    pub b_form: Vec<String>,
    pub grad_det: Vec<String>,
    pub difference: Vec<String>,
    pub decomposition: Option<Vec<String>>,
    pub verdict: Verdict,
    pub verdict_basis: &'static str,
    pub displayed_difference: Option<Vec<String>>,
    pub displayed_difference_agrees: Option<bool>,
}

fn is_upper_triangular_3(a: &[Vec<Poly>]) -> bool {
    a.len() == 3 && a[1][0].is_zero() && a[2][0].is_zero() && a[2][1].is_zero() && a[0][2].is_zero()
}

/// `a` is `n×n` over `n` variables.
pub fn compare_procedures(a: &[Vec<Poly>]) -> ComparisonReport {
    let n = a.len();
    let nvars = a[0][0].nvars();
    assert!(a.iter().all(|r| r.len() == n) && nvars == n, "square matrix over its own variables");
    let b_form = matrix_to_vector_form(a, n);
    let grad_det = OneForm::differential(&det(a, nvars));
    let difference = b_form.sub(&grad_det);
    let decomposition = module_membership(difference.coeffs(), a);
    let verdict = if decomposition.is_some() {
        Verdict::Reducible
    } else {
        Verdict::New
    };
    let displayed_difference = is_upper_triangular_3(a).then(|| {
        let (a11, xi, eta, a33) = (&a[0][0], &a[0][1], &a[1][2], &a[2][2]);
        OneForm::new(
            (0..3)
                .map(|v| {
                    let t1 = &(a33 * xi) * &xi.derivative(v);
                    let t2 = &(a11 * eta) * &eta.derivative(v);
                    -(&t1 + &t2)
                })
                .collect(),
        )
    });
    ComparisonReport {
        b_form,
        grad_det,
        difference,
        decomposition,
        verdict,
        displayed_difference,
    }
}

/// Closed form of the two-variable difference:
/// `(∂₂a₂₁ − ∂₁a₂₂)·row₁ + (∂₁a₁₂ − ∂₂a₁₁)·row₂`.
pub fn two_by_two_coefficients(a: &[Vec<Poly>]) -> [Poly; 2] {
    [
        &a[1][0].derivative(1) - &a[1][1].derivative(0),
        &a[0][1].derivative(0) - &a[0][0].derivative(1),
    ]
}

/// Checks the closed-form two-variable identity exactly.
pub fn verify_two_variable_identity(a: &[Vec<Poly>]) -> bool {
    assert!(a.len() == 2 && a.iter().all(|r| r.len() == 2));
    let n = a[0][0].nvars();
    let diff = matrix_to_vector_form(a, n).sub(&OneForm::differential(&det(a, n)));
    let [c1, c2] = two_by_two_coefficients(a);
    let combo = OneForm::new(a[0].clone())
        .scale(&c1)
        .add(&OneForm::new(a[1].clone()).scale(&c2));
    diff == combo
}

/// `a11·∂₃(η²) ∉ (a33)`: on the slice `φ1 = φ2 = 0` the new form is not
/// a multiple of the third row.
pub fn verify_three_variable_obstruction(a11: &Poly, a33: &Poly, eta: &Poly) -> bool {
    let target = a11 * &eta.pow(2).derivative(2);
    !ideal_membership(&target, std::slice::from_ref(a33))
}
