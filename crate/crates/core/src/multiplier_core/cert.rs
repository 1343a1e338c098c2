use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::domain::{DomainFile, SpecialDomain};
use super::order::SubellOrder;
use super::verify::{matrix_to_vector_form, verify_certificate, VerifyReport};
use super::Rule;
use crate::groebner::cofactors;
use crate::polyring::{forms_det, jacobian_det, mat_mul, GaussRat, OneForm, Poly, PolyMatrix};

pub const CERT_SCHEMA: &str = "kohn-cert/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("expected {expected} inputs, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("coefficient count {coeffs} does not match input count {inputs}")]
    LengthMismatch { coeffs: usize, inputs: usize },
    #[error("f^{m} is not in the ideal of the known multipliers")]
    NotMember { m: u32 },
    #[error("supplied cofactors do not reproduce f^{m}")]
    BadCofactors { m: u32 },
    #[error("pre-multiplier combinations need constant coefficients")]
    NonConstantCoefficient,
    #[error("A*a is not alpha times the identity")]
    GammaHypothesis,
    #[error("root exponent must be at least 1")]
    ZeroExponent,
}

/// One rule application. `order` is the differential order for pre-multiplier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: usize,
    pub rule: Rule,
    pub inputs: Vec<usize>,
    pub payload: Vec<Poly>,
    pub order: SubellOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMultiplier {
    pub poly: Poly,
    pub order: SubellOrder,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorMultiplier {
    pub form: OneForm,
    pub order: SubellOrder,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMultiplier {
    pub poly: Poly,
    pub differential_order: SubellOrder,
    pub step: usize,
}

/// Square matrix whose rows are vector multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixMultiplier {
    pub rows: Vec<VectorMultiplier>,
}

impl MatrixMultiplier {
    pub fn entries(&self) -> PolyMatrix {
        self.rows.iter().map(|r| r.form.coeffs().to_vec()).collect()
    }

    pub fn row_orders(&self) -> Vec<SubellOrder> {
        self.rows.iter().map(|r| r.order.clone()).collect()
    }

    pub fn min_order(&self) -> SubellOrder {
        SubellOrder::min_of(self.rows.iter().map(|r| &r.order)).expect("nonempty matrix")
    }
}

/// Anything whose differential is a certified vector multiplier.
pub trait HasDifferential {
    fn poly(&self) -> &Poly;
    fn d_order(&self) -> SubellOrder;
    fn step(&self) -> usize;
}

impl HasDifferential for ScalarMultiplier {
    fn poly(&self) -> &Poly {
        &self.poly
    }
    fn d_order(&self) -> SubellOrder {
        self.order.half()
    }
    fn step(&self) -> usize {
        self.step
    }
}

impl HasDifferential for PreMultiplier {
    fn poly(&self) -> &Poly {
        &self.poly
    }
    fn d_order(&self) -> SubellOrder {
        self.differential_order.clone()
    }
    fn step(&self) -> usize {
        self.step
    }
}

/// Append-only derivation over a fixed domain.
#[derive(Clone, Debug)]
pub struct Certificate {
    domain: SpecialDomain,
    steps: Vec<Step>,
}

impl Certificate {
    pub fn new(domain: SpecialDomain) -> Self {
        Certificate {
            domain,
            steps: Vec::new(),
        }
    }

    pub fn domain(&self) -> &SpecialDomain {
        &self.domain
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn last(&self) -> Option<&Step> {
        self.steps.last()
    }

    fn nvars(&self) -> usize {
        self.domain.nvars()
    }

    fn push(&mut self, rule: Rule, inputs: Vec<usize>, payload: Vec<Poly>, order: SubellOrder) -> usize {
        let id = self.steps.len();
        debug_assert!(inputs.iter().all(|&i| i < id));
        self.steps.push(Step {
            id,
            rule,
            inputs,
            payload,
            order,
        });
        id
    }

    /// Every defining function as a pre-multiplier with differential order 1/4.
    pub fn init_premultipliers(&mut self) -> Vec<PreMultiplier> {
        let gens = self.domain.generators().to_vec();
        gens.into_iter()
            .map(|g| {
                let step = self.push(Rule::PremultiplierInit, vec![], vec![g.clone()], SubellOrder::quarter());
                PreMultiplier {
                    poly: g,
                    differential_order: SubellOrder::quarter(),
                    step,
                }
            })
            .collect()
    }

    /// `Σ c_i·g_i` with constant `c_i`, a pre-multiplier of the minimum differential order.
    pub fn premultiplier_combine(
        &mut self,
        coeffs: &[GaussRat],
        parts: &[&dyn HasDifferential],
    ) -> Result<PreMultiplier, RuleError> {
        if coeffs.len() != parts.len() || parts.is_empty() {
            return Err(RuleError::LengthMismatch {
                coeffs: coeffs.len(),
                inputs: parts.len(),
            });
        }
        let mut out = Poly::zero(self.nvars());
        for (c, g) in coeffs.iter().zip(parts) {
            out = &out + &g.poly().scale(c);
        }
        let order = parts.iter().map(|g| g.d_order()).min().expect("nonempty");
        let mut payload = vec![out.clone()];
        payload.extend(coeffs.iter().map(|c| Poly::constant(self.nvars(), c.clone())));
        let step = self.push(
            Rule::PremultiplierCombine,
            parts.iter().map(|g| g.step()).collect(),
            payload,
            order.clone(),
        );
        Ok(PreMultiplier {
            poly: out,
            differential_order: order,
            step,
        })
    }

    /// `df`, at half the order of a scalar multiplier or at the d-order of a pre-multiplier.
    pub fn differential(&mut self, f: &dyn HasDifferential) -> VectorMultiplier {
        let form = OneForm::differential(f.poly());
        let order = f.d_order();
        let step = self.push(Rule::Differential, vec![f.step()], form.coeffs().to_vec(), order.clone());
        VectorMultiplier { form, order, step }
    }

    pub fn det(&mut self, thetas: &[&VectorMultiplier]) -> Result<ScalarMultiplier, RuleError> {
        let n = self.nvars();
        if thetas.len() != n {
            return Err(RuleError::Arity {
                expected: n,
                got: thetas.len(),
            });
        }
        let forms: Vec<OneForm> = thetas.iter().map(|t| t.form.clone()).collect();
        let poly = forms_det(&forms).expect("arity checked");
        let order = SubellOrder::min_of(thetas.iter().map(|t| &t.order)).expect("nonempty");
        let step = self.push(
            Rule::Det,
            thetas.iter().map(|t| t.step).collect(),
            vec![poly.clone()],
            order.clone(),
        );
        Ok(ScalarMultiplier { poly, order, step })
    }

    /// Jacobian determinant: the determinant of the differentials, in one step.
    pub fn jacobian(&mut self, gs: &[&dyn HasDifferential]) -> Result<ScalarMultiplier, RuleError> {
        let n = self.nvars();
        if gs.len() != n {
            return Err(RuleError::Arity {
                expected: n,
                got: gs.len(),
            });
        }
        let polys: Vec<Poly> = gs.iter().map(|g| g.poly().clone()).collect();
        let poly = jacobian_det(&polys).expect("arity checked");
        let order = gs.iter().map(|g| g.d_order()).min().expect("nonempty");
        let step = self.push(
            Rule::Jacobian,
            gs.iter().map(|g| g.step()).collect(),
            vec![poly.clone()],
            order.clone(),
        );
        Ok(ScalarMultiplier { poly, order, step })
    }

    /// `f` at `min(known)/m`, given `f^m ∈ (known)`; cofactors found by Gröbner reduction.
    pub fn root(&mut self, f: &Poly, m: u32, known: &[&ScalarMultiplier]) -> Result<ScalarMultiplier, RuleError> {
        if m == 0 {
            return Err(RuleError::ZeroExponent);
        }
        let gens: Vec<Poly> = known.iter().map(|k| k.poly.clone()).collect();
        let cofs = cofactors(&f.pow(m), &gens).ok_or(RuleError::NotMember { m })?;
        self.root_with_cofactors(f, m, known, cofs)
    }

    /// Like [`Certificate::root`] with caller-supplied cofactors, checked exactly.
    pub fn root_with_cofactors(
        &mut self,
        f: &Poly,
        m: u32,
        known: &[&ScalarMultiplier],
        cofs: Vec<Poly>,
    ) -> Result<ScalarMultiplier, RuleError> {
        if m == 0 {
            return Err(RuleError::ZeroExponent);
        }
        if cofs.len() != known.len() || known.is_empty() {
            return Err(RuleError::LengthMismatch {
                coeffs: cofs.len(),
                inputs: known.len(),
            });
        }
        let sum = known
            .iter()
            .zip(&cofs)
            .fold(Poly::zero(self.nvars()), |acc, (k, c)| &acc + &(c * &k.poly));
        if sum != f.pow(m) {
            return Err(RuleError::BadCofactors { m });
        }
        let order = SubellOrder::min_of(known.iter().map(|k| &k.order))
            .expect("nonempty")
            .div_int(m as u64);
        let mut payload = vec![f.clone(), Poly::from_int(self.nvars(), m as i64)];
        payload.extend(cofs);
        let step = self.push(Rule::Root, known.iter().map(|k| k.step).collect(), payload, order.clone());
        Ok(ScalarMultiplier {
            poly: f.clone(),
            order,
            step,
        })
    }

    /// `Σ c_i·m_i` at the minimum order.
    pub fn combine(&mut self, coeffs: &[Poly], ms: &[&ScalarMultiplier]) -> Result<ScalarMultiplier, RuleError> {
        if coeffs.len() != ms.len() || ms.is_empty() {
            return Err(RuleError::LengthMismatch {
                coeffs: coeffs.len(),
                inputs: ms.len(),
            });
        }
        let poly = ms
            .iter()
            .zip(coeffs)
            .fold(Poly::zero(self.nvars()), |acc, (m, c)| &acc + &(c * &m.poly));
        let order = SubellOrder::min_of(ms.iter().map(|m| &m.order)).expect("nonempty");
        let mut payload = vec![poly.clone()];
        payload.extend(coeffs.iter().cloned());
        let step = self.push(Rule::Combine, ms.iter().map(|m| m.step).collect(), payload, order.clone());
        Ok(ScalarMultiplier { poly, order, step })
    }

    /// `b_j = Σ_{p,l} adj(a)_{pl}·∂_p a_{lj}` at half the minimum row order.
    pub fn matrix_to_vector(&mut self, a: &MatrixMultiplier) -> Result<VectorMultiplier, RuleError> {
        let n = self.nvars();
        if a.rows.len() != n {
            return Err(RuleError::Arity {
                expected: n,
                got: a.rows.len(),
            });
        }
        let form = matrix_to_vector_form(&a.entries(), n);
        let order = a.min_order().half();
        let step = self.push(
            Rule::MatrixToVector,
            a.rows.iter().map(|r| r.step).collect(),
            form.coeffs().to_vec(),
            order.clone(),
        );
        Ok(VectorMultiplier { form, order, step })
    }

    /// `b_j = Σ_{p,k,l} Γ_{pk}·A_{kl}·∂_p a_{lj}`, given `A·a = α·I`.
    pub fn general_gamma(
        &mut self,
        gamma: &[Vec<Poly>],
        a_left: &[Vec<Poly>],
        a: &MatrixMultiplier,
        alpha: &ScalarMultiplier,
    ) -> Result<VectorMultiplier, RuleError> {
        let n = self.nvars();
        if a.rows.len() != n || gamma.len() != n || a_left.len() != n {
            return Err(RuleError::Arity {
                expected: n,
                got: a.rows.len(),
            });
        }
        let entries = a.entries();
        if !is_scalar_identity(&mat_mul(a_left, &entries, n), &alpha.poly) {
            return Err(RuleError::GammaHypothesis);
        }
        let form = super::verify::general_gamma_form(gamma, a_left, &entries, n);
        let order = a.min_order().lesser(&alpha.order).half();
        let mut payload: Vec<Poly> = gamma.iter().flatten().cloned().collect();
        payload.extend(a_left.iter().flatten().cloned());
        payload.extend(form.coeffs().iter().cloned());
        let mut inputs: Vec<usize> = a.rows.iter().map(|r| r.step).collect();
        inputs.push(alpha.step);
        let step = self.push(Rule::GeneralGamma, inputs, payload, order.clone());
        Ok(VectorMultiplier { form, order, step })
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            schema: CERT_SCHEMA.to_string(),
            domain: self.domain.to_file(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    id: s.id,
                    rule: s.rule.tag().to_string(),
                    inputs: s.inputs.clone(),
                    payload: s.payload.iter().map(|p| self.domain.show(p)).collect(),
                    order: s.order.to_string(),
                    paper_ref: s.rule.citation().to_string(),
                })
                .collect(),
        }
    }

    /// Replays this certificate through the independent verifier.
    pub fn verify(&self) -> VerifyReport {
        verify_certificate(&self.to_json(), &self.domain)
    }
}

pub(crate) fn is_scalar_identity(m: &[Vec<Poly>], alpha: &Poly) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x == alpha } else { x.is_zero() })
    })
}

/// Serialized certificate, schema `kohn-cert/1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub domain: DomainFile,
    pub steps: Vec<StepJson>,
}

fn default_schema() -> String {
    CERT_SCHEMA.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub id: usize,
    pub rule: String,
    pub inputs: Vec<usize>,
    pub payload: Vec<String>,
    pub order: String,
    pub paper_ref: String,
}
