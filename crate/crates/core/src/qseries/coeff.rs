use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator (guaranteed by `num_rational`).
pub type Coeff = BigRational;

/// Exact coefficient ring for truncated series.
///
/// Implemented for [`BigInt`] (integer q-expansions, the fast path) and for
/// [`BigRational`] (general exact coefficients). No floating point type
/// implements it.
pub trait Coefficient: Num + Clone + Eq + fmt::Debug + fmt::Display + Send + Sync {
    /// `self += a * b` without an intermediate clone of `self`.
    fn add_mul(&mut self, a: &Self, b: &Self);

    /// Multiplicative inverse if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn from_bigint(n: BigInt) -> Self;

    fn neg_ref(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }
}

impl Coefficient for BigInt {
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn from_bigint(n: BigInt) -> Self {
        n
    }

    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Coefficient for BigRational {
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Renders a rational as `n` when integral and `n/d` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders a rational always as `n/d`, the form used for point coordinates.
pub fn format_rational_full(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `n`, `-n` or `n/d` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub(crate) fn is_unit_int(n: &BigInt) -> bool {
    n.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational_full(&BigRational::from_integer(5.into())), "5/1");
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn integer_units() {
        assert_eq!(BigInt::from(-1).unit_inverse(), Some(BigInt::from(-1)));
        assert_eq!(BigInt::from(2).unit_inverse(), None);
        assert!(is_unit_int(&BigInt::from(-1)));
    }
}
