use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Certified lower bound `ε ∈ (0, 1]` on the order of subellipticity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubellOrder(BigRational);

impl SubellOrder {
    pub fn new(value: BigRational) -> Option<Self> {
        if value.is_positive() && value <= BigRational::one() {
            Some(SubellOrder(value))
        } else {
            None
        }
    }

    /// `num/den`; panics outside `(0, 1]`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into())).expect("order in (0, 1]")
    }

    /// `1/den` for an arbitrary-size denominator.
    pub fn reciprocal(den: BigInt) -> Self {
        Self::new(BigRational::new(BigInt::one(), den)).expect("positive denominator")
    }

    pub fn quarter() -> Self {
        Self::frac(1, 4)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn half(&self) -> Self {
        self.div_int(2)
    }

    pub fn div_int(&self, m: u64) -> Self {
        assert!(m >= 1);
        SubellOrder(&self.0 / BigRational::from_integer(BigInt::from(m)))
    }

    pub fn lesser(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min_of<'a>(orders: impl IntoIterator<Item = &'a SubellOrder>) -> Option<SubellOrder> {
        orders.into_iter().min().cloned()
    }
}

impl fmt::Display for SubellOrder {
    /// Always `p/q`, e.g. `1/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for SubellOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        SubellOrder::new(BigRational::new(n, d)).ok_or_else(|| format!("order '{s}' outside (0, 1]"))
    }
}

impl Serialize for SubellOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SubellOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_text() {
        let q = SubellOrder::quarter();
        assert_eq!(q.half().to_string(), "1/8");
        assert_eq!(q.div_int(3).to_string(), "1/12");
        assert_eq!("2/8".parse::<SubellOrder>().unwrap(), q);
        assert!("0/1".parse::<SubellOrder>().is_err());
        assert!("3/2".parse::<SubellOrder>().is_err());
        assert_eq!(q.lesser(&q.half()), q.half());
    }
}
