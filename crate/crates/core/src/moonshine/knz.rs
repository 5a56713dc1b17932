//! Truncated check of the product formula
//! `p^-1 prod_{m>0, n in Z} (1 - p^m q^n)^{c(mn)} = J(p) - J(q)`.
//!
//! Both sides are compared on the square `p, q in [-1, N]`. Since
//! `c(k) = 0` for `k < -1`, the only factor with a negative `q` exponent is
//! `(1 - p q^-1)^{c(-1)} = 1 - p q^-1`. It is multiplied in first; every
//! later factor has `m >= 1, n >= 0`, so exponents of the running product
//! only grow and discarding its terms outside the working window after each
//! step is exact. The factors themselves must keep `q^(N+1)`, which the
//! earlier `q^-1` brings back to `q^N`, so the working window reaches
//! `q^(N+1)` and is cut to `q^N` at the end. Factors with `m > N + 1` or
//! `n > N + 1` cannot reach the window.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CoeffTable, MoonshineError};
use crate::modular::j_normalized;
use crate::qseries::{BiLaurentSeries, Rectangle};

/// Which value feeds the exponent `c(0)` of the `(1 - p^m)` factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantTerm {
    /// `c(0) = 0`, the coefficients of `J - 744`. The identity holds.
    Normalized,
    /// `c(0) = 744`. Kept as a negative control; the identity fails.
    Unnormalized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnzOutcome {
    pub order: u32,
    pub lhs: BiLaurentSeries<BigInt>,
    pub rhs: BiLaurentSeries<BigInt>,
    pub equal: bool,
    /// `(p exponent, q exponent), lhs coefficient, rhs coefficient`.
    pub mismatches: Vec<((i64, i64), BigInt, BigInt)>,
}

/// Largest table index the check at `order` reads.
pub fn required_index(order: u32) -> i64 {
    let k = order as i64 + 1;
    k * k
}

/// Runs the check with coefficients computed from the `J` expansion.
pub fn knz_verify(order: u32) -> Result<KnzOutcome, MoonshineError> {
    knz_verify_with(order, ConstantTerm::Normalized)
}

pub fn knz_verify_with(order: u32, constant: ConstantTerm) -> Result<KnzOutcome, MoonshineError> {
    let j = j_normalized(required_index(order) + 1)?;
    let table = CoeffTable::from_series(&j.series, "J-744")?;
    knz_verify_table(order, &table, constant)
}

/// Runs the check on a caller-supplied table of `c(n)`, `n >= -1`. The table
/// value at index 0 is ignored in favour of `constant`.
pub fn knz_verify_table(
    order: u32,
    table: &CoeffTable,
    constant: ConstantTerm,
) -> Result<KnzOutcome, MoonshineError> {
    let need = required_index(order);
    if table.max_index() < need {
        return Err(MoonshineError::InsufficientCoefficients {
            needed: need,
            available: table.max_index(),
        });
    }
    let c = |k: i64| -> BigInt {
        match k {
            0 => match constant {
                ConstantTerm::Normalized => BigInt::zero(),
                ConstantTerm::Unnormalized => BigInt::from(744),
            },
            k if k < -1 => BigInt::zero(),
            k => table.get(k).cloned().expect("index checked above"),
        }
    };
    let n_max = order as i64;
    let window = Rectangle::square(-1, n_max);

    // work with p * LHS so every p exponent is >= 0
    let shifted = Rectangle::new(0, n_max + 1, -1, n_max + 1);
    let mut product = BiLaurentSeries::one_minus_monomial_pow(shifted, 1, -1, &c(-1))?;
    for m in 1..=n_max + 1 {
        for n in 0..=n_max + 1 {
            let e = c(m * n);
            if e.is_zero() {
                continue;
            }
            let factor = BiLaurentSeries::one_minus_monomial_pow(shifted, m, n, &e)?;
            product = product.mul(&factor)?;
        }
    }
    let lhs = product.shift_p(-1).restrict(window);
    debug_assert_eq!(lhs.rect(), window);

    let rhs = BiLaurentSeries::from_terms(
        window,
        (-1..=n_max).flat_map(|n| {
            let v = c(n);
            [((n, 0), v.clone()), ((0, n), -v)]
        }),
    );
    let mismatches = lhs.differences(&rhs);
    Ok(KnzOutcome {
        order,
        equal: mismatches.is_empty(),
        lhs,
        rhs,
        mismatches,
    })
}
