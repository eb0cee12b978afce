use std::fmt;

use num_bigint::BigInt;

use super::Rational;
use crate::error::{Error, Result};

/// Absolute width target for an enclosure. Always strictly positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Precision {
    eps: Rational,
}

impl Precision {
    pub fn new(eps: Rational) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::InvalidPrecision(eps.to_string()));
        }
        Ok(Precision { eps })
    }

    /// `10^-digits`.
    pub fn from_digits(digits: u32) -> Self {
        let denom = num_traits::Pow::pow(BigInt::from(10), digits);
        Precision { eps: Rational::new(1, denom).expect("nonzero power of ten") }
    }

    /// `2^-bits`.
    pub fn from_bits(bits: u64) -> Self {
        Precision { eps: Rational::pow2(-(bits as i64)) }
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    /// Smallest `b >= 0` with `2^-b <= eps`.
    pub fn bits(&self) -> u64 {
        // 2^-b <= n/d  <=>  d <= n * 2^b
        let n = self.eps.numer();
        let d = self.eps.denom();
        let mut b = d.bits().saturating_sub(n.bits());
        while (n << b) < *d {
            b += 1;
        }
        while b > 0 && (n << (b - 1)) >= *d {
            b -= 1;
        }
        b
    }

    /// `eps · factor`; `factor` must be positive.
    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(factor.is_positive(), "precision scale factor must be positive");
        Precision { eps: &self.eps * factor }
    }

    /// `eps · 2^-k`.
    pub fn tightened(&self, k: u64) -> Self {
        self.scaled(&Rational::pow2(-(k as i64)))
    }

    pub fn min(&self, other: &Precision) -> Self {
        if self.eps <= other.eps {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.eps)
    }
}

impl fmt::Debug for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Precision({})", self.eps)
    }
}
