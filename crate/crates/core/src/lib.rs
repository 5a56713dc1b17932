//! Exact computations around the monster group and the modular `J` function.
//!
//! - [`qseries`]: truncated Laurent series with exact integer/rational
//!   coefficients, one and two variables.
//! - [`modular`]: divisor sums, Bernoulli numbers, Eisenstein series, the
//!   discriminant and Klein's `J` as exact q-expansions.
//! - [`sl2z`]: the modular group acting on the upper half plane, reduction
//!   to the fundamental domain, lattice bases.
//! - [`groups`]: small permutation groups, conjugacy classes, normal
//!   subgroups, composition series and Jordan–Hölder factors.
//! - [`moonshine`]: embedded coefficient datasets, McKay–Thompson
//!   decomposition checks and the truncated Koike–Norton–Zagier product.

pub mod groups;
pub mod modular;
pub mod moonshine;
pub mod qseries;
pub mod sl2z;

pub use groups::{FactorDescriptor, GroupError, Perm, PermGroup};
pub use modular::{ModularError, ModularFormExpansion};
pub use moonshine::{CoeffTable, IrrepDims, MoonshineError};
pub use qseries::{BiLaurentSeries, Coeff, IntSeries, LaurentSeries, RatSeries, Rectangle, SeriesError};
pub use sl2z::{Mat2Z, PSLElement, UpperHalfPoint};
