use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Coefficient ring of every module in the crate.
///
/// `TruncatedPoly { p, m }` is `GF(p)[x]/(x^m)`. Construct it through
/// [`CoeffRing::truncated_poly`], which collapses `m = 1` to the prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    PrimeField { p: u64 },
    Rationals,
    TruncatedPoly { p: u64, m: usize },
}

/// The field that all row reduction actually happens over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroundField {
    Prime(u64),
    Rationals,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

impl CoeffRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not a prime below 2^31")));
        }
        Ok(CoeffRing::PrimeField { p })
    }

    pub fn rationals() -> Self {
        CoeffRing::Rationals
    }

    pub fn truncated_poly(p: u64, m: usize) -> Result<Self> {
        let field = Self::prime_field(p)?;
        match m {
            0 => Err(Error::InvalidRing("truncation order must be at least 1".into())),
            1 => Ok(field),
            _ => Ok(CoeffRing::TruncatedPoly { p, m }),
        }
    }

    /// GF(p) dimension of the ring itself (the truncation order, 1 for fields).
    pub fn degree(&self) -> usize {
        match *self {
            CoeffRing::TruncatedPoly { m, .. } => m,
            _ => 1,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffRing::TruncatedPoly { .. })
    }

    pub fn ground(&self) -> GroundField {
        match *self {
            CoeffRing::PrimeField { p } | CoeffRing::TruncatedPoly { p, .. } => GroundField::Prime(p),
            CoeffRing::Rationals => GroundField::Rationals,
        }
    }

    /// The ground field viewed as a coefficient ring.
    pub fn ground_ring(&self) -> CoeffRing {
        match self.ground() {
            GroundField::Prime(p) => CoeffRing::PrimeField { p },
            GroundField::Rationals => CoeffRing::Rationals,
        }
    }

    pub(crate) fn characteristic(&self) -> Option<u64> {
        match self.ground() {
            GroundField::Prime(p) => Some(p),
            GroundField::Rationals => None,
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::PrimeField { p } => write!(f, "GF({p})"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::TruncatedPoly { p, m } => write!(f, "GF({p})[x]/(x^{m})"),
        }
    }
}

/// Accepts the display form (`GF(2)`, `Q`, `GF(2)[x]/(x^3)`) and the short
/// forms `gf2`, `q`, `gf2x3`.
impl FromStr for CoeffRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if t == "q" || t == "qq" || t == "rationals" {
            return Ok(CoeffRing::Rationals);
        }
        let bad = || Error::InvalidRing(format!("unrecognised ring descriptor `{s}`"));
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad());
        if let Some(rest) = t.strip_prefix("gf(") {
            let (p, tail) = rest.split_once(')').ok_or_else(bad)?;
            let p = num(p)?;
            if tail.is_empty() {
                return CoeffRing::prime_field(p);
            }
            let m = tail
                .strip_prefix("[x]/(x^")
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(bad)?;
            return CoeffRing::truncated_poly(p, num(m)? as usize);
        }
        if let Some(rest) = t.strip_prefix("gf") {
            return match rest.split_once('x') {
                Some((p, m)) => CoeffRing::truncated_poly(num(p)?, num(m)? as usize),
                None => CoeffRing::prime_field(num(rest)?),
            };
        }
        Err(bad())
    }
}

/// A single ring element, used at the API boundary (I/O, inspection).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Prime(u64),
    Rational(BigRational),
    /// Coefficients of `1, x, ..., x^{m-1}`.
    Poly(Vec<u64>),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_descriptors() {
        assert_eq!("GF(2)".parse::<CoeffRing>().unwrap(), CoeffRing::PrimeField { p: 2 });
        assert_eq!("gf3".parse::<CoeffRing>().unwrap(), CoeffRing::PrimeField { p: 3 });
        assert_eq!("Q".parse::<CoeffRing>().unwrap(), CoeffRing::Rationals);
        assert_eq!(
            "GF(2)[x]/(x^3)".parse::<CoeffRing>().unwrap(),
            CoeffRing::TruncatedPoly { p: 2, m: 3 }
        );
        assert_eq!("gf2x3".parse::<CoeffRing>().unwrap(), CoeffRing::TruncatedPoly { p: 2, m: 3 });
        assert!("gf4".parse::<CoeffRing>().is_err());
        assert!("Z".parse::<CoeffRing>().is_err());
    }

    #[test]
    fn order_one_truncation_is_the_field() {
        assert_eq!(CoeffRing::truncated_poly(5, 1).unwrap(), CoeffRing::PrimeField { p: 5 });
        assert!(CoeffRing::truncated_poly(5, 0).is_err());
    }

    #[test]
    fn display_round_trips() {
        for r in [
            CoeffRing::PrimeField { p: 7 },
            CoeffRing::Rationals,
            CoeffRing::TruncatedPoly { p: 3, m: 4 },
        ] {
            assert_eq!(r.to_string().parse::<CoeffRing>().unwrap(), r);
        }
    }
}
