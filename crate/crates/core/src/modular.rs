//! Classical level-one modular objects as exact q-expansions.
//!
//! Eisenstein series are normalized to constant term 1:
//! `E_w = 1 - (2w / B_w) * sum sigma_{w-1}(n) q^n`. The discriminant is
//! `(E_4^3 - E_6^2) / 1728 = q - 24 q^2 + ...` and Klein's invariant is
//! `J = E_4^3 / Delta = q^-1 + 744 + 196884 q + ...`. The transcendental
//! scalars of the lattice-sum normalization cancel in `J`, so nothing here
//! leaves exact arithmetic.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::qseries::{Coefficient, IntSeries, LaurentSeries, RatSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("weight {0} Eisenstein series has non-integral coefficients")]
    NonIntegral(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Weight of a level-one Eisenstein series: even and at least 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinId(u32);

impl EisensteinId {
    pub fn new(weight: u32) -> Result<Self, ModularError> {
        if weight < 4 || !weight.is_multiple_of(2) {
            return Err(ModularError::Domain(format!(
                "Eisenstein weight must be even and >= 4, got {weight}"
            )));
        }
        Ok(Self(weight))
    }

    pub fn weight(self) -> u32 {
        self.0
    }
}

/// A labelled q-expansion together with its weight (0 for modular functions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularFormExpansion<C: Coefficient = BigInt> {
    pub label: String,
    pub weight: u32,
    pub series: LaurentSeries<C>,
}

/// `sigma_k(n) = sum_{d | n} d^k` by trial division.
pub fn sigma(k: u32, n: u64) -> Result<BigInt, ModularError> {
    if n < 1 {
        return Err(ModularError::Domain(format!("sigma needs n >= 1, got {n}")));
    }
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    Ok(total)
}

/// `sigma_k(n)` for every `0 <= n < len` via a divisor sieve; entry 0 is 0.
pub fn sigma_table(k: u32, len: usize) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); len];
    for d in 1..len {
        let dk = BigInt::from(d).pow(k);
        for m in (d..len).step_by(d) {
            table[m] += &dk;
        }
    }
    table
}

fn bernoulli_cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
    }
    row
}

/// Bernoulli number `B_n` for even `n >= 2` (so `B_2 = 1/6`, `B_4 = -1/30`).
///
/// Computed from `sum_{k=0}^{n} C(n+1, k) B_k = 0` and memoized behind a mutex.
pub fn bernoulli(n: u32) -> Result<BigRational, ModularError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(ModularError::Domain(format!(
            "Bernoulli index must be even and >= 2, got {n}"
        )));
    }
    let n = n as usize;
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        let row = binomial_row(m + 1);
        let mut acc = BigRational::zero();
        for (k, b) in cache.iter().enumerate() {
            acc += BigRational::from_integer(row[k].clone()) * b;
        }
        let b_m = -acc / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(b_m);
    }
    Ok(cache[n].clone())
}

/// Normalized Eisenstein series `E_weight` known through `q^(order-1)`.
pub fn eisenstein_normalized(
    weight: u32,
    order: i64,
) -> Result<ModularFormExpansion<BigRational>, ModularError> {
    let id = EisensteinId::new(weight)?;
    if order < 1 {
        return Err(ModularError::Domain(format!("order must be >= 1, got {order}")));
    }
    let factor = -BigRational::from_integer(BigInt::from(2 * id.weight())) / bernoulli(id.weight())?;
    let sigmas = sigma_table(id.weight() - 1, order as usize);
    let coeffs = sigmas
        .into_iter()
        .enumerate()
        .map(|(n, s)| {
            if n == 0 {
                BigRational::one()
            } else {
                &factor * BigRational::from_integer(s)
            }
        })
        .collect();
    Ok(ModularFormExpansion {
        label: format!("E{weight}"),
        weight,
        series: RatSeries::from_coeffs(0, coeffs),
    })
}

/// Integer-coefficient Eisenstein series; fails for weights such as 12 whose
/// normalization introduces a denominator.
pub fn eisenstein_integral(weight: u32, order: i64) -> Result<ModularFormExpansion, ModularError> {
    let e = eisenstein_normalized(weight, order)?;
    let series = e.series.to_integer().ok_or(ModularError::NonIntegral(weight))?;
    Ok(ModularFormExpansion {
        label: e.label,
        weight,
        series,
    })
}

/// `Delta = (E_4^3 - E_6^2) / 1728`, known through `q^(order-1)`.
pub fn discriminant(order: i64) -> Result<ModularFormExpansion, ModularError> {
    if order < 2 {
        return Err(ModularError::Domain(format!(
            "discriminant order must be >= 2, got {order}"
        )));
    }
    let e4 = eisenstein_integral(4, order)?.series;
    let e6 = eisenstein_integral(6, order)?.series;
    let diff = &e4.pow(3)? - &e6.pow(2)?;
    let series = diff
        .div_exact(&BigInt::from(1728))
        .expect("E4^3 - E6^2 is divisible by 1728");
    Ok(ModularFormExpansion {
        label: "Delta".into(),
        weight: 12,
        series,
    })
}

/// `q * prod_{n>=1} (1 - q^n)^24`, known through `q^(order-1)`.
pub fn eta_product_delta(order: i64) -> Result<IntSeries, ModularError> {
    if order < 2 {
        return Err(ModularError::Domain(format!(
            "eta product order must be >= 2, got {order}"
        )));
    }
    let len = (order - 1) as usize;
    let mut prod = vec![BigInt::zero(); len];
    prod[0] = BigInt::one();
    // multiply in place by (1 - q^n), highest index first
    for n in 1..len {
        for i in (n..len).rev() {
            let t = prod[i - n].clone();
            prod[i] -= t;
        }
    }
    let euler = IntSeries::from_coeffs(0, prod);
    Ok(euler.pow(24)?.shift(1))
}

/// Klein's `J = E_4^3 / Delta`, coefficients `c(-1) .. c(order-1)`.
pub fn j_expansion(order: i64) -> Result<ModularFormExpansion, ModularError> {
    if order < 0 {
        return Err(ModularError::Domain(format!("order must be >= 0, got {order}")));
    }
    let delta_over_q = discriminant(order + 2)?.series.shift(-1);
    let e4 = eisenstein_integral(4, order + 1)?.series;
    let series = (&e4.pow(3)? * &delta_over_q.invert()?).shift(-1);
    debug_assert_eq!(series.trunc(), order);
    Ok(ModularFormExpansion {
        label: "J".into(),
        weight: 0,
        series,
    })
}

/// `J - 744`: same expansion with the constant term removed.
pub fn j_normalized(order: i64) -> Result<ModularFormExpansion, ModularError> {
    let j = j_expansion(order)?;
    let trunc = j.series.trunc();
    let series = if trunc > 0 {
        &j.series - &IntSeries::monomial(0, BigInt::from(744), trunc)
    } else {
        j.series
    };
    Ok(ModularFormExpansion {
        label: "J-744".into(),
        weight: 0,
        series,
    })
}

/// Exponent pairs `(a, b)` with `4a + 6b = weight`, ordered by increasing `a`.
pub fn weight_monomials(weight: u32) -> Vec<(u32, u32)> {
    if !weight.is_multiple_of(2) {
        return Vec::new();
    }
    (0..=weight / 4)
        .filter_map(|a| {
            let rest = weight - 4 * a;
            rest.is_multiple_of(6).then_some((a, rest / 6))
        })
        .collect()
}

/// q-expansions of all monomials `E_4^a E_6^b` of the given weight.
pub fn weight_space_basis(weight: u32, order: i64) -> Result<Vec<ModularFormExpansion>, ModularError> {
    if !weight.is_multiple_of(2) {
        return Err(ModularError::Domain(format!("weight must be even, got {weight}")));
    }
    if order < 1 {
        return Err(ModularError::Domain(format!("order must be >= 1, got {order}")));
    }
    let e4 = eisenstein_integral(4, order)?.series;
    let e6 = eisenstein_integral(6, order)?.series;
    weight_monomials(weight)
        .into_iter()
        .map(|(a, b)| {
            let series = &e4.pow(a as i64)? * &e6.pow(b as i64)?;
            Ok(ModularFormExpansion {
                label: format!("E4^{a}*E6^{b}"),
                weight,
                series: series.truncate(order),
            })
        })
        .collect()
}
