use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::Coefficient;
use super::SeriesError;

/// A truncated Laurent series `sum_{e >= valuation} c_e q^e + O(q^trunc)`.
///
/// `trunc` is the first exponent whose coefficient is *unknown*. Asking for a
/// coefficient at or beyond it is an error rather than an implicit zero.
///
/// Storage is dense: `coeffs[i]` is the coefficient of `q^(valuation + i)`
/// and `coeffs.len() == trunc - valuation`. The stored leading coefficient is
/// nonzero. The zero series keeps an empty vector and `valuation == trunc`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries<C> {
    valuation: i64,
    coeffs: Vec<C>,
    trunc: i64,
}

pub type IntSeries = LaurentSeries<BigInt>;
pub type RatSeries = LaurentSeries<BigRational>;

impl<C: Coefficient> LaurentSeries<C> {
    /// Series with the given coefficients starting at `valuation`, known
    /// exactly through the last supplied coefficient.
    pub fn from_coeffs(valuation: i64, coeffs: Vec<C>) -> Self {
        let trunc = valuation + coeffs.len() as i64;
        Self::with_trunc(valuation, coeffs, trunc)
    }

    /// Series with explicit truncation order. Missing coefficients inside the
    /// window are zero; supplied coefficients at or past `trunc` are dropped.
    pub fn with_trunc(valuation: i64, mut coeffs: Vec<C>, trunc: i64) -> Self {
        let len = (trunc - valuation).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, C::zero());
        let mut s = Self {
            valuation,
            coeffs,
            trunc,
        };
        s.canonicalize();
        s
    }

    /// Builds a series from sparse `(exponent, coefficient)` terms.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I, trunc: i64) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().filter(|(e, _)| *e < trunc).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(trunc);
        };
        let mut coeffs = vec![C::zero(); (trunc - lo) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] = coeffs[(e - lo) as usize].clone() + c;
        }
        Self::with_trunc(lo, coeffs, trunc)
    }

    pub fn zero(trunc: i64) -> Self {
        Self {
            valuation: trunc,
            coeffs: Vec::new(),
            trunc,
        }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(0, C::one(), trunc)
    }

    /// `coeff * q^exponent + O(q^trunc)`.
    pub fn monomial(exponent: i64, coeff: C, trunc: i64) -> Self {
        Self::from_terms([(exponent, coeff)], trunc)
    }

    fn canonicalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.trunc;
            }
        }
    }

    /// Exponent of the lowest nonzero retained term; equals `trunc()` for the
    /// zero series.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// True when every coefficient below `trunc` is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^exponent`.
    pub fn coeff(&self, exponent: i64) -> Result<C, SeriesError> {
        if exponent >= self.trunc {
            return Err(SeriesError::BeyondTruncation {
                exponent,
                trunc: self.trunc,
            });
        }
        if exponent < self.valuation {
            return Ok(C::zero());
        }
        Ok(self.coeffs[(exponent - self.valuation) as usize].clone())
    }

    /// Stored `(exponent, coefficient)` pairs, from `valuation` to `trunc - 1`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Coefficients for exponents `from..trunc`, zeros included.
    pub fn coeffs_from(&self, from: i64) -> Result<Vec<C>, SeriesError> {
        (from..self.trunc).map(|e| self.coeff(e)).collect()
    }

    /// Restricts to the window below `trunc`. Never extends precision.
    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        Self::with_trunc(self.valuation, self.coeffs.clone(), trunc)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.clone() * c.clone()).collect();
        Self::with_trunc(self.valuation, coeffs, self.trunc)
    }

    /// Applies `f` to every coefficient, changing the coefficient ring.
    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries::with_trunc(self.valuation, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    /// Same as `map_coeffs` but fails on the first `None`.
    pub fn try_map_coeffs<D: Coefficient>(
        &self,
        f: impl Fn(&C) -> Option<D>,
    ) -> Option<LaurentSeries<D>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(LaurentSeries::with_trunc(self.valuation, coeffs, self.trunc))
    }

    pub fn add_series(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let lo = self.valuation.min(other.valuation).min(trunc);
        let mut coeffs = vec![C::zero(); (trunc - lo) as usize];
        for s in [self, other] {
            for (e, c) in s.terms().take_while(|(e, _)| *e < trunc) {
                let slot = &mut coeffs[(e - lo) as usize];
                *slot = slot.clone() + c.clone();
            }
        }
        Self::with_trunc(lo, coeffs, trunc)
    }

    pub fn neg_series(&self) -> Self {
        Self {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(C::neg_ref).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub_series(&self, other: &Self) -> Self {
        self.add_series(&other.neg_series())
    }

    /// Cauchy product. The result is known on
    /// `[va + vb, min(ta + vb, tb + va))`, the largest window fully determined
    /// by both operands (a zero operand counts its valuation as its trunc).
    pub fn mul_series(&self, other: &Self) -> Self {
        let valuation = self.valuation + other.valuation;
        let trunc = (self.trunc + other.valuation).min(other.trunc + self.valuation);
        if trunc <= valuation {
            return Self::zero(trunc);
        }
        let len = (trunc - valuation) as usize;
        let mut out = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j].add_mul(a, b);
            }
        }
        Self::with_trunc(valuation, out, trunc)
    }

    /// Multiplicative inverse. Requires the leading coefficient to be a unit
    /// of the coefficient ring; the result has valuation `-valuation` and the
    /// same relative precision.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let Some(lead) = self.coeffs.first() else {
            return Err(SeriesError::ZeroLeadingCoefficient);
        };
        let lead_inv = lead
            .unit_inverse()
            .ok_or_else(|| SeriesError::NonUnitLeadingCoefficient(lead.to_string()))?;
        let len = self.coeffs.len();
        let mut inv: Vec<C> = Vec::with_capacity(len);
        inv.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = C::zero();
            for k in 1..=n {
                acc.add_mul(&self.coeffs[k], &inv[n - k]);
            }
            inv.push((acc * lead_inv.clone()).neg_ref());
        }
        Ok(Self::with_trunc(-self.valuation, inv, -self.valuation + len as i64))
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// [`invert`](Self::invert). `a^0` is the constant 1 carrying the relative
    /// precision of `a` (at least one known term).
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        let rel = (self.trunc - self.valuation).max(1);
        let mut result = Self::one(rel);
        if e == 0 {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first {
                    base.clone()
                } else {
                    result.mul_series(&base)
                };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        Ok(result)
    }
}

impl IntSeries {
    /// Exact division of every coefficient by `d`; `None` when some
    /// coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntSeries> {
        use num_integer::Integer;
        use num_traits::Zero;
        self.try_map_coeffs(|c| {
            let (q, r) = c.div_rem(d);
            r.is_zero().then_some(q)
        })
    }

    pub fn to_rational(&self) -> RatSeries {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }
}

impl RatSeries {
    /// Integer view of the series, if every coefficient has denominator 1.
    pub fn to_integer(&self) -> Option<IntSeries> {
        self.try_map_coeffs(|c| c.is_integer().then(|| c.numer().clone()))
    }
}

impl<C: Coefficient> Add for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn add(self, rhs: Self) -> LaurentSeries<C> {
        self.add_series(rhs)
    }
}

impl<C: Coefficient> Sub for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn sub(self, rhs: Self) -> LaurentSeries<C> {
        self.sub_series(rhs)
    }
}

impl<C: Coefficient> Mul for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn mul(self, rhs: Self) -> LaurentSeries<C> {
        self.mul_series(rhs)
    }
}

impl<C: Coefficient> Neg for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn neg(self) -> LaurentSeries<C> {
        self.neg_series()
    }
}

impl<C: Coefficient> fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{e}")?,
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(q^{})", self.trunc)
    }
}

impl<C: Coefficient> fmt::Debug for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64, cs: &[i64]) -> IntSeries {
        IntSeries::from_coeffs(v, cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn int_t(v: i64, cs: &[i64], t: i64) -> IntSeries {
        IntSeries::with_trunc(v, cs.iter().map(|&c| BigInt::from(c)).collect(), t)
    }

    #[test]
    fn add_disjoint_supports() {
        let a = int_t(-1, &[1, 744], 2);
        let b = int_t(1, &[196884], 2);
        let s = &a + &b;
        assert_eq!(s, int(-1, &[1, 744, 196884]));
    }

    #[test]
    fn add_inverse_is_zero_with_trunc() {
        let a = int(-1, &[1, 744, 196884]);
        let z = &a + &(-&a);
        assert!(z.is_zero());
        assert_eq!(z.trunc(), 2);
        assert_eq!(z.coeff(1).unwrap(), BigInt::from(0));
        assert!(z.coeff(2).is_err());
    }

    #[test]
    fn add_takes_min_trunc() {
        let a = int_t(0, &[1, 1], 5);
        let b = int_t(0, &[1, 0, 1], 3);
        let s = &a + &b;
        assert_eq!(s, int(0, &[2, 1, 1]));
        assert_eq!(s.trunc(), 3);
    }

    #[test]
    fn mul_geometric() {
        let a = int_t(0, &[1, -1], 8);
        let g = int(0, &[1; 8]);
        let p = &a * &g;
        assert_eq!(p, IntSeries::one(8));
    }

    #[test]
    fn mul_monomials_and_binomial() {
        let qi = int_t(-1, &[1], 3);
        let q = int_t(1, &[1], 5);
        let p = &qi * &q;
        assert_eq!(p.valuation(), 0);
        assert_eq!(p.coeff(0).unwrap(), BigInt::from(1));
        assert_eq!(p.trunc(), 4);
        let a = int_t(0, &[1, 1], 6);
        assert_eq!(&a * &a, int_t(0, &[1, 2, 1], 6));
    }

    #[test]
    fn mul_window_rule() {
        let a = int_t(-1, &[1, 2], 3);
        let b = int_t(2, &[5], 6);
        let p = &a * &b;
        assert_eq!(p.valuation(), 1);
        assert_eq!(p.trunc(), 6 - 1);
    }

    #[test]
    fn invert_geometric_and_monomial() {
        let a = int_t(0, &[1, -1], 6);
        assert_eq!(a.invert().unwrap(), int(0, &[1; 6]));
        let q = int_t(1, &[1], 4);
        let inv = q.invert().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.coeff(-1).unwrap(), BigInt::from(1));
        assert_eq!(inv.trunc(), 2);
    }

    #[test]
    fn invert_discriminant_head() {
        // q - 24 q^2 + 252 q^3 - 1472 q^4
        let d = int(1, &[1, -24, 252, -1472]);
        let inv = d.invert().unwrap();
        // long division by hand: 1, 24, 24*24-252 = 324, 24*324 - 252*24 + 1472 = 3200
        assert_eq!(inv, int(-1, &[1, 24, 324, 3200]));
        let prod = &d * &inv;
        assert_eq!(prod, IntSeries::one(4));
    }

    #[test]
    fn invert_errors() {
        let z = IntSeries::zero(5);
        assert_eq!(z.invert(), Err(SeriesError::ZeroLeadingCoefficient));
        let two = int(0, &[2, 1]);
        assert!(matches!(
            two.invert(),
            Err(SeriesError::NonUnitLeadingCoefficient(_))
        ));
        assert!(two.to_rational().invert().is_ok());
    }

    #[test]
    fn powers() {
        let a = int_t(0, &[1, 1], 10);
        assert_eq!(a.pow(3).unwrap(), int_t(0, &[1, 3, 3, 1], 10));
        assert_eq!(a.pow(0).unwrap(), IntSeries::one(10));
        let b = int_t(0, &[1, -1], 5);
        assert_eq!(b.pow(-2).unwrap(), int(0, &[1, 2, 3, 4, 5]));
        assert_eq!(IntSeries::zero(3).pow(-1), Err(SeriesError::ZeroLeadingCoefficient));
    }

    #[test]
    fn query_semantics() {
        let a = int_t(-1, &[1, 744], 3);
        assert_eq!(a.coeff(-5).unwrap(), BigInt::from(0));
        assert_eq!(a.coeff(2).unwrap(), BigInt::from(0));
        assert_eq!(
            a.coeff(3),
            Err(SeriesError::BeyondTruncation { exponent: 3, trunc: 3 })
        );
    }

    #[test]
    fn canonical_form_strips_leading_zeros() {
        let a = int(-2, &[0, 0, 5, 1]);
        assert_eq!(a.valuation(), 0);
        assert_eq!(a.trunc(), 2);
        assert_eq!(format!("{a}"), "5 + 1*q + O(q^2)");
    }

    #[test]
    fn div_exact_and_rational_round_trip() {
        let a = int(0, &[1728, -3456]);
        assert_eq!(a.div_exact(&BigInt::from(1728)).unwrap(), int(0, &[1, -2]));
        assert!(a.div_exact(&BigInt::from(5)).is_none());
        assert_eq!(a.to_rational().to_integer().unwrap(), a);
    }
}
