use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{parse_poly, Poly, PolyError};

/// On-disk form: `{"variables": [...], "generators": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainFile {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("generator {index}: {source}")]
    Parse { index: usize, source: PolyError },
    #[error("a domain needs at least one generator")]
    NoGenerators,
    #[error("a domain needs at least one variable")]
    NoVariables,
    #[error("invalid or duplicate variable name '{0}'")]
    BadVariable(String),
    #[error("generator {0} does not vanish at the origin")]
    NonVanishing(usize),
}

/// Germs `F_1..F_N` at the origin of `ℂ^n`, each vanishing there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialDomain {
    names: Vec<String>,
    generators: Vec<Poly>,
}

impl SpecialDomain {
    pub fn new(names: Vec<String>, generators: Vec<Poly>) -> Result<Self, DomainError> {
        if names.is_empty() {
            return Err(DomainError::NoVariables);
        }
        for (k, n) in names.iter().enumerate() {
            let ident = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ident || n == "i" || names[..k].contains(n) {
                return Err(DomainError::BadVariable(n.clone()));
            }
        }
        if generators.is_empty() {
            return Err(DomainError::NoGenerators);
        }
        for (k, g) in generators.iter().enumerate() {
            assert_eq!(g.nvars(), names.len(), "generator in the wrong ring");
            if !g.constant_term().is_zero() {
                return Err(DomainError::NonVanishing(k));
            }
        }
        Ok(SpecialDomain { names, generators })
    }

    /// Domain in `z1, …, zn`.
    pub fn with_default_names(generators: Vec<Poly>) -> Result<Self, DomainError> {
        let n = generators.first().map(Poly::nvars).ok_or(DomainError::NoGenerators)?;
        Self::new(crate::polyring::default_names(n), generators)
    }

    pub fn from_file(file: &DomainFile) -> Result<Self, DomainError> {
        let gens = file
            .generators
            .iter()
            .enumerate()
            .map(|(index, s)| parse_poly(s, &file.variables).map_err(|source| DomainError::Parse { index, source }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(file.variables.clone(), gens)
    }

    pub fn to_file(&self) -> DomainFile {
        DomainFile {
            variables: self.names.clone(),
            generators: self.generators.iter().map(|g| self.show(g)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Canonical text of `p` under this domain's variable names.
    pub fn show(&self, p: &Poly) -> String {
        p.to_string_with(&self.names)
    }

    pub fn parse(&self, text: &str) -> Result<Poly, PolyError> {
        parse_poly(text, &self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip_and_validation() {
        let f = DomainFile {
            variables: vec!["z1".into(), "z2".into()],
            generators: vec!["z1^2".into(), "z2^3 + z2*z1^5".into()],
        };
        let d = SpecialDomain::from_file(&f).unwrap();
        assert_eq!(d.to_file().generators, vec!["z1^2", "z1^5*z2 + z2^3"]);
        let bad = DomainFile {
            variables: vec!["z1".into()],
            generators: vec!["1 + z1".into()],
        };
        assert_eq!(SpecialDomain::from_file(&bad), Err(DomainError::NonVanishing(0)));
        let unknown = DomainFile {
            variables: vec!["z1".into()],
            generators: vec!["w".into()],
        };
        assert!(matches!(SpecialDomain::from_file(&unknown), Err(DomainError::Parse { .. })));
        let reserved = DomainFile {
            variables: vec!["i".into()],
            generators: vec!["i".into()],
        };
        assert!(matches!(SpecialDomain::from_file(&reserved), Err(DomainError::BadVariable(_))));
    }
}
