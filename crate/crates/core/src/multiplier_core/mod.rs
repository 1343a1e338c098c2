//! Multipliers with exact subellipticity orders, the generation rules as
//! certificate steps, and a replaying verifier.

mod cert;
mod domain;
mod order;
mod verify;

pub use cert::{
    Certificate, CertificateJson, HasDifferential, MatrixMultiplier, PreMultiplier, RuleError,
    ScalarMultiplier, Step, StepJson, VectorMultiplier, CERT_SCHEMA,
};
pub use domain::{DomainError, DomainFile, SpecialDomain};
pub use order::SubellOrder;
pub(crate) use verify::matrix_to_vector_form;
pub use verify::{verify_certificate, VerifyReport};

/// Rule tags as they appear in certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    PremultiplierInit,
    PremultiplierCombine,
    Differential,
    Det,
    Jacobian,
    Root,
    Combine,
    MatrixToVector,
    GeneralGamma,
}

/// What a step produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Pre,
    Scalar,
    Vector,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::PremultiplierInit,
        Rule::PremultiplierCombine,
        Rule::Differential,
        Rule::Det,
        Rule::Jacobian,
        Rule::Root,
        Rule::Combine,
        Rule::MatrixToVector,
        Rule::GeneralGamma,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::PremultiplierInit => "premultiplier_init",
            Rule::PremultiplierCombine => "premultiplier_combine",
            Rule::Differential => "differential",
            Rule::Det => "det",
            Rule::Jacobian => "jacobian",
            Rule::Root => "root",
            Rule::Combine => "combine",
            Rule::MatrixToVector => "matrix_to_vector",
            Rule::GeneralGamma => "general_gamma",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.tag() == tag)
    }

    pub fn kind(self) -> Kind {
        match self {
            Rule::PremultiplierInit | Rule::PremultiplierCombine => Kind::Pre,
            Rule::Det | Rule::Jacobian | Rule::Root | Rule::Combine => Kind::Scalar,
            Rule::Differential | Rule::MatrixToVector | Rule::GeneralGamma => Kind::Vector,
        }
    }

    /// Human-readable statement of the rule, stored with each step.
    pub fn citation(self) -> &'static str {
        match self {
            Rule::PremultiplierInit => {
                "defining function of the domain is a pre-multiplier; its differential has order 1/4"
            }
            Rule::PremultiplierCombine => {
                "constant-coefficient combination of pre-multipliers and scalar multipliers (d-order of a scalar is half its order); d-order is the minimum"
            }
            Rule::Differential => {
                "differential of a scalar multiplier is a vector multiplier of half the order; of a pre-multiplier, of its d-order"
            }
            Rule::Det => "determinant of n vector multipliers is a scalar multiplier of the minimum order",
            Rule::Jacobian => {
                "Jacobian determinant of n pre-multipliers or scalars: determinant of their differentials"
            }
            Rule::Root => "if f^m lies in the ideal of known scalar multipliers then f has order min/m",
            Rule::Combine => "polynomial combination of scalar multipliers has the minimum order",
            Rule::MatrixToVector => {
                "b_j = sum over p, l of adj(a)_pl * d_p a_lj is a vector multiplier of half the minimum row order"
            }
            Rule::GeneralGamma => {
                "with A*a = alpha*I, b_j = sum of Gamma_pk A_kl d_p a_lj has half the minimum of the row and alpha orders"
            }
        }
    }
}
