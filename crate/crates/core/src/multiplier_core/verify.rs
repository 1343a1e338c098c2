//! Independent replay of a serialized certificate.

use serde::Serialize;

use super::cert::{is_scalar_identity, CertificateJson, CERT_SCHEMA};
use super::domain::SpecialDomain;
use super::order::SubellOrder;
use super::{Kind, Rule};
use crate::polyring::{adjugate, forms_det, jacobian_det, mat_mul, OneForm, Poly, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub steps_checked: usize,
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
}

impl VerifyReport {
    fn pass(steps: usize) -> Self {
        VerifyReport {
            ok: true,
            steps_checked: steps,
            failing_step: None,
            reason: None,
        }
    }

    fn fail(step: Option<usize>, checked: usize, reason: impl Into<String>) -> Self {
        VerifyReport {
            ok: false,
            steps_checked: checked,
            failing_step: step,
            reason: Some(reason.into()),
        }
    }
}

/// `b_j = Σ_{p,l} adj(a)_{pl}·∂_p a_{lj}`.
pub(crate) fn matrix_to_vector_form(a: &[Vec<Poly>], nvars: usize) -> OneForm {
    let n = a.len();
    let adj = adjugate(a, nvars);
    let coeffs = (0..n)
        .map(|j| {
            let mut acc = Poly::zero(nvars);
            for (p, adj_row) in adj.iter().enumerate().take(nvars) {
                for (l, adj_pl) in adj_row.iter().enumerate() {
                    if adj_pl.is_zero() {
                        continue;
                    }
                    acc = &acc + &(adj_pl * &a[l][j].derivative(p));
                }
            }
            acc
        })
        .collect();
    OneForm::new(coeffs)
}

/// `b_j = Σ_{p,k,l} Γ_{pk}·A_{kl}·∂_p a_{lj}`.
pub(crate) fn general_gamma_form(gamma: &[Vec<Poly>], a_left: &[Vec<Poly>], a: &[Vec<Poly>], nvars: usize) -> OneForm {
    let n = a.len();
    let ga: PolyMatrix = mat_mul(gamma, a_left, nvars);
    let coeffs = (0..n)
        .map(|j| {
            let mut acc = Poly::zero(nvars);
            for (p, ga_row) in ga.iter().enumerate().take(nvars) {
                for (l, ga_pl) in ga_row.iter().enumerate() {
                    if ga_pl.is_zero() {
                        continue;
                    }
                    acc = &acc + &(ga_pl * &a[l][j].derivative(p));
                }
            }
            acc
        })
        .collect();
    OneForm::new(coeffs)
}

#[derive(Clone, Debug)]
enum Value {
    Pre(Poly, SubellOrder),
    Scalar(Poly, SubellOrder),
    Vector(Vec<Poly>, SubellOrder),
}

impl Value {
    fn kind(&self) -> Kind {
        match self {
            Value::Pre(..) => Kind::Pre,
            Value::Scalar(..) => Kind::Scalar,
            Value::Vector(..) => Kind::Vector,
        }
    }
}

type Check<T> = Result<T, String>;

fn need(cond: bool, msg: impl FnOnce() -> String) -> Check<()> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scalar(v: &Value) -> Check<(&Poly, &SubellOrder)> {
    match v {
        Value::Scalar(p, o) => Ok((p, o)),
        _ => Err(format!("expected a scalar multiplier input, found {:?}", v.kind())),
    }
}

fn vector(v: &Value) -> Check<(&[Poly], &SubellOrder)> {
    match v {
        Value::Vector(p, o) => Ok((p, o)),
        _ => Err(format!("expected a vector multiplier input, found {:?}", v.kind())),
    }
}

/// Polynomial together with the order of its differential.
fn differentiable(v: &Value) -> Check<(&Poly, SubellOrder)> {
    match v {
        Value::Pre(p, o) => Ok((p, o.clone())),
        Value::Scalar(p, o) => Ok((p, o.half())),
        Value::Vector(..) => Err("expected a scalar or pre-multiplier input".into()),
    }
}

fn min_order<'a>(it: impl IntoIterator<Item = &'a SubellOrder>) -> Check<SubellOrder> {
    SubellOrder::min_of(it).ok_or_else(|| "rule needs at least one input".to_string())
}

fn replay_step(
    rule: Rule,
    inputs: &[&Value],
    payload: &[Poly],
    domain: &SpecialDomain,
) -> Check<Value> {
    let n = domain.nvars();
    let count = |k: usize| need(payload.len() == k, || format!("payload has {} entries, expected {k}", payload.len()));
    match rule {
        Rule::PremultiplierInit => {
            need(inputs.is_empty(), || "initial pre-multipliers take no inputs".into())?;
            count(1)?;
            need(domain.generators().contains(&payload[0]), || {
                format!("'{}' is not a defining function", domain.show(&payload[0]))
            })?;
            Ok(Value::Pre(payload[0].clone(), SubellOrder::quarter()))
        }
        Rule::PremultiplierCombine => {
            need(!inputs.is_empty(), || "no inputs".into())?;
            count(inputs.len() + 1)?;
            let mut sum = Poly::zero(n);
            let mut orders = Vec::new();
            for (v, c) in inputs.iter().zip(&payload[1..]) {
                need(c.is_constant(), || "coefficient is not a constant".into())?;
                let (p, o) = differentiable(v)?;
                sum = &sum + &p.scale(&c.constant_term());
                orders.push(o);
            }
            need(sum == payload[0], || "combination does not match its output".into())?;
            Ok(Value::Pre(sum, min_order(&orders)?))
        }
        Rule::Differential => {
            need(inputs.len() == 1, || "differential takes one input".into())?;
            let (p, o) = differentiable(inputs[0])?;
            let grad = p.gradient();
            need(grad.as_slice() == payload, || "payload is not the differential".into())?;
            Ok(Value::Vector(grad, o))
        }
        Rule::Det => {
            need(inputs.len() == n, || format!("det takes {n} inputs"))?;
            let mut forms = Vec::new();
            let mut orders = Vec::new();
            for v in inputs {
                let (f, o) = vector(v)?;
                forms.push(OneForm::new(f.to_vec()));
                orders.push(o.clone());
            }
            count(1)?;
            let d = forms_det(&forms).map_err(|e| e.to_string())?;
            need(d == payload[0], || "determinant mismatch".into())?;
            Ok(Value::Scalar(d, min_order(&orders)?))
        }
        Rule::Jacobian => {
            need(inputs.len() == n, || format!("jacobian takes {n} inputs"))?;
            let mut polys = Vec::new();
            let mut orders = Vec::new();
            for v in inputs {
                let (p, o) = differentiable(v)?;
                polys.push(p.clone());
                orders.push(o);
            }
            count(1)?;
            let j = jacobian_det(&polys).map_err(|e| e.to_string())?;
            need(j == payload[0], || "Jacobian determinant mismatch".into())?;
            Ok(Value::Scalar(j, min_order(&orders)?))
        }
        Rule::Root => {
            need(!inputs.is_empty(), || "no inputs".into())?;
            count(inputs.len() + 2)?;
            let m = &payload[1];
            need(m.is_constant() && !m.is_zero(), || "root exponent is not a constant".into())?;
            let mc = m.constant_term();
            need(mc.is_real() && mc.re().is_integer(), || "root exponent is not an integer".into())?;
            let m: u32 = mc
                .re()
                .numer()
                .try_into()
                .map_err(|_| "root exponent out of range".to_string())?;
            need(m >= 1, || "root exponent must be positive".into())?;
            let mut sum = Poly::zero(n);
            let mut orders = Vec::new();
            for (v, c) in inputs.iter().zip(&payload[2..]) {
                let (p, o) = scalar(v)?;
                sum = &sum + &(c * p);
                orders.push(o.clone());
            }
            need(sum == payload[0].pow(m), || format!("cofactors do not reproduce f^{m}"))?;
            Ok(Value::Scalar(payload[0].clone(), min_order(&orders)?.div_int(m as u64)))
        }
        Rule::Combine => {
            need(!inputs.is_empty(), || "no inputs".into())?;
            count(inputs.len() + 1)?;
            let mut sum = Poly::zero(n);
            let mut orders = Vec::new();
            for (v, c) in inputs.iter().zip(&payload[1..]) {
                let (p, o) = scalar(v)?;
                sum = &sum + &(c * p);
                orders.push(o.clone());
            }
            need(sum == payload[0], || "combination does not match its output".into())?;
            Ok(Value::Scalar(sum, min_order(&orders)?))
        }
        Rule::MatrixToVector => {
            need(inputs.len() == n, || format!("matrix rule takes {n} rows"))?;
            let mut rows: PolyMatrix = Vec::new();
            let mut orders = Vec::new();
            for v in inputs {
                let (f, o) = vector(v)?;
                rows.push(f.to_vec());
                orders.push(o.clone());
            }
            let b = matrix_to_vector_form(&rows, n);
            need(b.coeffs() == payload, || "matrix-to-vector output mismatch".into())?;
            Ok(Value::Vector(b.into_coeffs(), min_order(&orders)?.half()))
        }
        Rule::GeneralGamma => {
            need(inputs.len() == n + 1, || format!("general rule takes {n} rows and a scalar"))?;
            count(2 * n * n + n)?;
            let mut rows: PolyMatrix = Vec::new();
            let mut orders = Vec::new();
            for v in &inputs[..n] {
                let (f, o) = vector(v)?;
                rows.push(f.to_vec());
                orders.push(o.clone());
            }
            let (alpha, ao) = scalar(inputs[n])?;
            orders.push(ao.clone());
            let gamma: PolyMatrix = payload[..n * n].chunks(n).map(<[Poly]>::to_vec).collect();
            let a_left: PolyMatrix = payload[n * n..2 * n * n].chunks(n).map(<[Poly]>::to_vec).collect();
            need(is_scalar_identity(&mat_mul(&a_left, &rows, n), alpha), || {
                "A*a is not alpha times the identity".into()
            })?;
            let b = general_gamma_form(&gamma, &a_left, &rows, n);
            need(b.coeffs() == &payload[2 * n * n..], || "general rule output mismatch".into())?;
            Ok(Value::Vector(b.into_coeffs(), min_order(&orders)?.half()))
        }
    }
}

/// Replays every step of `cert` against `domain`; stops at the first failure.
pub fn verify_certificate(cert: &CertificateJson, domain: &SpecialDomain) -> VerifyReport {
    if cert.schema != CERT_SCHEMA {
        return VerifyReport::fail(None, 0, format!("unknown schema '{}'", cert.schema));
    }
    match SpecialDomain::from_file(&cert.domain) {
        Ok(d) if d == *domain => {}
        Ok(_) => return VerifyReport::fail(None, 0, "certificate was issued for a different domain"),
        Err(e) => return VerifyReport::fail(None, 0, format!("certificate domain is invalid: {e}")),
    }
    let mut values: Vec<Value> = Vec::with_capacity(cert.steps.len());
    for (k, s) in cert.steps.iter().enumerate() {
        let fail = |reason: String| VerifyReport::fail(Some(s.id), k, reason);
        if s.id != k {
            return fail(format!("step id {} out of sequence (expected {k})", s.id));
        }
        let Some(rule) = Rule::from_tag(&s.rule) else {
            return fail(format!("unknown rule tag '{}'", s.rule));
        };
        if let Some(&bad) = s.inputs.iter().find(|&&i| i >= k) {
            return fail(format!("dangling or forward reference to step {bad}"));
        }
        let payload: Result<Vec<Poly>, _> = s.payload.iter().map(|t| domain.parse(t)).collect();
        let payload = match payload {
            Ok(p) => p,
            Err(e) => return fail(format!("payload does not parse: {e}")),
        };
        let claimed: SubellOrder = match s.order.parse() {
            Ok(o) => o,
            Err(e) => return fail(e),
        };
        let inputs: Vec<&Value> = s.inputs.iter().map(|&i| &values[i]).collect();
        let value = match replay_step(rule, &inputs, &payload, domain) {
            Ok(v) => v,
            Err(reason) => return fail(reason),
        };
        let derived = match &value {
            Value::Pre(_, o) | Value::Scalar(_, o) | Value::Vector(_, o) => o,
        };
        if *derived != claimed {
            return fail(format!("claimed order {claimed} but the rule gives {derived}"));
        }
        values.push(value);
    }
    VerifyReport::pass(cert.steps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplier_core::{Certificate, MatrixMultiplier};
    use crate::polyring::{identity, parse_in};

    fn p(s: &str) -> Poly {
        parse_in(s, &["z1", "z2"]).unwrap()
    }

    fn domain(gens: &[&str]) -> SpecialDomain {
        SpecialDomain::with_default_names(gens.iter().map(|g| p(g)).collect()).unwrap()
    }

    #[test]
    fn init_alone_verifies() {
        let mut c = Certificate::new(domain(&["z1^2", "z2^3"]));
        let pre = c.init_premultipliers();
        assert_eq!(pre.len(), 2);
        assert!(pre.iter().all(|m| m.differential_order == SubellOrder::quarter()));
        assert!(c.verify().ok);
    }

    #[test]
    fn scalar_rules() {
        let mut c = Certificate::new(domain(&["z1", "z2"]));
        let pre = c.init_premultipliers();
        let one = c.jacobian(&[&pre[0], &pre[1]]).unwrap();
        assert!(one.poly.is_one());
        assert_eq!(one.order, SubellOrder::quarter());
        let d1 = c.differential(&pre[0]);
        let d2 = c.differential(&pre[1]);
        let det = c.det(&[&d1, &d2]).unwrap();
        assert!(det.poly.is_one());
        assert!(c.det(&[&d1, &d1]).unwrap().poly.is_zero());
        let z1sq = c.combine(&[p("z1^2")], &[&one]).unwrap();
        let root = c.root(&p("z1"), 2, &[&z1sq]).unwrap();
        assert_eq!(root.order, SubellOrder::frac(1, 8));
        assert_eq!(c.differential(&root).order, SubellOrder::frac(1, 16));
        assert!(c.root(&p("z2"), 3, &[&z1sq]).is_err());
        let report = c.verify();
        assert!(report.ok, "{report:?}");
    }

    #[test]
    fn matrix_rules() {
        let mut c = Certificate::new(domain(&["z1^2", "z2^2"]));
        let pre = c.init_premultipliers();
        let rows = vec![c.differential(&pre[0]), c.differential(&pre[1])];
        let a = MatrixMultiplier { rows };
        let b = c.matrix_to_vector(&a).unwrap();
        assert_eq!(b.form, OneForm::new(vec![p("4*z2"), p("4*z1")]));
        assert_eq!(b.order, SubellOrder::frac(1, 8));
        let alpha = c.jacobian(&[&pre[0], &pre[1]]).unwrap();
        let adj = adjugate(&a.entries(), 2);
        let g = c.general_gamma(&identity(2, 2), &adj, &a, &alpha).unwrap();
        assert_eq!(g.form, b.form);
        assert!(c.general_gamma(&identity(2, 2), &identity(2, 2), &a, &alpha).is_err());
        let report = c.verify();
        assert!(report.ok, "{report:?}");
    }

    #[test]
    fn matrix_to_vector_on_diagonal() {
        let a = vec![vec![p("z1"), p("0")], vec![p("0"), p("z2")]];
        assert_eq!(matrix_to_vector_form(&a, 2), OneForm::new(vec![p("z2"), p("z1")]));
        assert!(matrix_to_vector_form(&identity(2, 2), 2).is_zero());
        let adj = adjugate(&a, 2);
        assert_eq!(general_gamma_form(&identity(2, 2), &adj, &a, 2), OneForm::new(vec![p("z2"), p("z1")]));
    }

    #[test]
    fn tampering_is_detected() {
        let mut c = Certificate::new(domain(&["z1^2", "z2^3"]));
        let pre = c.init_premultipliers();
        let j = c.jacobian(&[&pre[0], &pre[1]]).unwrap();
        c.root(&p("z1*z2"), 2, &[&j]).unwrap();
        let good = c.to_json();
        assert!(verify_certificate(&good, c.domain()).ok);

        let mut bad = good.clone();
        bad.steps[2].payload[0] = bad.steps[2].payload[0].replace("z2^2", "z2^3");
        let r = verify_certificate(&bad, c.domain());
        assert!(!r.ok);
        assert_eq!(r.failing_step, Some(2));

        let mut bad = good.clone();
        bad.steps[3].order = "1/4".into();
        assert_eq!(verify_certificate(&bad, c.domain()).failing_step, Some(3));

        let mut bad = good.clone();
        bad.steps[3].inputs = vec![7];
        assert_eq!(verify_certificate(&bad, c.domain()).failing_step, Some(3));

        let mut bad = good.clone();
        bad.steps[1].rule = "mystery".into();
        assert_eq!(verify_certificate(&bad, c.domain()).failing_step, Some(1));

        assert!(!verify_certificate(&good, &domain(&["z1^2", "z2^4"])).ok);
    }
}
