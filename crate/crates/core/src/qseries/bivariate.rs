use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coeff::Coefficient;
use super::SeriesError;

/// Exponent window `[p_min, p_max] x [q_min, q_max]`, inclusive on both ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub p_min: i64,
    pub p_max: i64,
    pub q_min: i64,
    pub q_max: i64,
}

impl Rectangle {
    pub fn new(p_min: i64, p_max: i64, q_min: i64, q_max: i64) -> Self {
        Self {
            p_min,
            p_max,
            q_min,
            q_max,
        }
    }

    /// The square `[lo, hi]^2`.
    pub fn square(lo: i64, hi: i64) -> Self {
        Self::new(lo, hi, lo, hi)
    }

    pub fn contains(&self, p: i64, q: i64) -> bool {
        (self.p_min..=self.p_max).contains(&p) && (self.q_min..=self.q_max).contains(&q)
    }

    /// Rectangle with the roles of `p` and `q` exchanged.
    pub fn transposed(&self) -> Self {
        Self::new(self.q_min, self.q_max, self.p_min, self.p_max)
    }
}

/// Sparse truncated series in two variables: `(m, n) -> coefficient of p^m q^n`.
///
/// Only keys inside the rectangle are ever stored, and zero coefficients are
/// never stored. Products drop every term that lands outside the rectangle, so
/// a product is exact on the rectangle only when no discarded term could be
/// brought back inside by a later factor (true when all later factors have
/// nonnegative exponents in both variables).
#[derive(Clone, PartialEq, Eq)]
pub struct BiLaurentSeries<C> {
    rect: Rectangle,
    terms: BTreeMap<(i64, i64), C>,
}

impl<C: Coefficient> BiLaurentSeries<C> {
    pub fn zero(rect: Rectangle) -> Self {
        Self {
            rect,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rect: Rectangle) -> Self {
        Self::monomial(rect, 0, 0, C::one())
    }

    pub fn monomial(rect: Rectangle, p: i64, q: i64, c: C) -> Self {
        Self::from_terms(rect, [((p, q), c)])
    }

    /// Collects terms, summing duplicates and dropping anything outside the
    /// rectangle.
    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), C)>>(rect: Rectangle, terms: I) -> Self {
        let mut s = Self::zero(rect);
        for ((p, q), c) in terms {
            s.accumulate(p, q, c);
        }
        s
    }

    fn accumulate(&mut self, p: i64, q: i64, c: C) {
        if !self.rect.contains(p, q) || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((p, q)).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn rect(&self) -> Rectangle {
        self.rect
    }

    /// Coefficient of `p^m q^n`; an error outside the rectangle.
    pub fn coeff(&self, m: i64, n: i64) -> Result<C, SeriesError> {
        if !self.rect.contains(m, n) {
            return Err(SeriesError::OutsideRectangle { p: m, q: n });
        }
        Ok(self.terms.get(&(m, n)).cloned().unwrap_or_else(C::zero))
    }

    /// Nonzero terms in `(p, q)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_rect(other)?;
        let mut out = self.clone();
        for (&(p, q), c) in &other.terms {
            out.accumulate(p, q, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            rect: self.rect,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    fn check_rect(&self, other: &Self) -> Result<(), SeriesError> {
        if self.rect == other.rect {
            Ok(())
        } else {
            Err(SeriesError::RectangleMismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_rect(other)?;
        let mut out = Self::zero(self.rect);
        for (&(p1, q1), a) in &self.terms {
            for (&(p2, q2), b) in &other.terms {
                let (p, q) = (p1 + p2, q1 + q2);
                if !self.rect.contains(p, q) {
                    continue;
                }
                let slot = out.terms.entry((p, q)).or_insert_with(C::zero);
                slot.add_mul(a, b);
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Nonnegative power by repeated squaring inside the rectangle.
    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::one(self.rect);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same rectangle");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same rectangle");
            }
        }
        result
    }

    /// `(1 - p^m q^n)^e` expanded by the binomial theorem, for `m >= 1` so that
    /// the expansion leaves the rectangle after finitely many terms. The
    /// exponent may be arbitrarily large.
    pub fn one_minus_monomial_pow(
        rect: Rectangle,
        m: i64,
        n: i64,
        e: &BigInt,
    ) -> Result<Self, SeriesError> {
        if m < 1 {
            return Err(SeriesError::NonPositivePStep(m));
        }
        if e.is_negative() {
            return Err(SeriesError::NegativeExponent(e.to_string()));
        }
        let mut out = Self::zero(rect);
        // binom(e, k) built incrementally: binom(e, k+1) = binom(e, k) (e - k) / (k + 1)
        let mut binom = BigInt::one();
        let mut k: i64 = 0;
        while m * k <= rect.p_max && BigInt::from(k) <= *e {
            let sign_neg = k % 2 == 1;
            let c = if sign_neg { -binom.clone() } else { binom.clone() };
            out.accumulate(m * k, n * k, C::from_bigint(c));
            let next = &binom * (e - BigInt::from(k));
            let (quot, rem) = next.div_rem(&BigInt::from(k + 1));
            debug_assert!(rem.is_zero());
            binom = quot;
            k += 1;
        }
        Ok(out)
    }

    /// Drops every term outside `rect` (which must lie inside the current
    /// rectangle) and adopts it.
    pub fn restrict(&self, rect: Rectangle) -> Self {
        Self::from_terms(rect, self.terms.iter().map(|(k, c)| (*k, c.clone())))
    }

    /// Multiplies by `p^k`, moving the rectangle along with the terms.
    pub fn shift_p(&self, k: i64) -> Self {
        let r = self.rect;
        Self {
            rect: Rectangle::new(r.p_min + k, r.p_max + k, r.q_min, r.q_max),
            terms: self.terms.iter().map(|(&(p, q), c)| ((p + k, q), c.clone())).collect(),
        }
    }

    /// Exchanges the roles of `p` and `q`.
    pub fn swap_variables(&self) -> Self {
        Self {
            rect: self.rect.transposed(),
            terms: self.terms.iter().map(|(&(p, q), c)| ((q, p), c.clone())).collect(),
        }
    }

    /// Monomials where the two series differ, with both coefficients.
    pub fn differences(&self, other: &Self) -> Vec<((i64, i64), C, C)> {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter()
            .filter_map(|k| {
                let a = self.terms.get(&k).cloned().unwrap_or_else(C::zero);
                let b = other.terms.get(&k).cloned().unwrap_or_else(C::zero);
                (a != b).then_some((k, a, b))
            })
            .collect()
    }
}

impl<C: Coefficient> fmt::Display for BiLaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(p, q), c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}*p^{p}*q^{q}")?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for BiLaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiLaurentSeries({:?}, {})", self.rect, self)
    }
}
