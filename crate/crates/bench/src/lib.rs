//! Criterion benchmarks for `moonshine-core`; see `benches/`.
//!
//! The library target only hosts shared inputs.

use moonshine_core::sl2z::UpperHalfPoint;

/// Deterministic points deep in the lower part of the upper half plane,
/// which need many reduction steps.
pub fn hard_points(count: usize) -> Vec<UpperHalfPoint> {
    (1..=count as i64)
        .map(|k| {
            UpperHalfPoint::from_fractions(k * 7919 % 100_003, 997, 1, 10_000 + k)
                .expect("positive imaginary part")
        })
        .collect()
}
