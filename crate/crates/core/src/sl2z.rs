//! The modular group acting on the upper half plane by Möbius transformations.
//!
//! All points have rational coordinates so every comparison is exact. The
//! translation generator is `T = (1 1; 0 1)` and the inversion is
//! `S = (0 -1; 1 0)`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::qseries::{format_rational_full, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2zError {
    /// The matrix entries `a b c d` and the determinant, rendered in decimal.
    #[error("matrix ({matrix}) has determinant {det}, expected 1")]
    NotUnimodular { matrix: String, det: String },
    #[error("imaginary part must be positive, got {0}")]
    NotInUpperHalfPlane(String),
    #[error("basis vectors are real-proportional (degenerate lattice)")]
    DegenerateBasis,
    #[error("cannot parse {0:?}; expected `x,y` with rationals like -3/7")]
    Parse(String),
}

/// An integer matrix `(a b; c d)` with `ad - bc = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2Z {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Mat2Z {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, Sl2zError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Sl2zError::NotUnimodular {
                matrix: format!("{a} {b}; {c} {d}"),
                det: det.to_string(),
            });
        }
        Ok(Self { a, b, c, d })
    }

    fn from_parts(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::from_parts(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn s() -> Self {
        Self::from_parts(BigInt::zero(), -BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// `T^k = (1 k; 0 1)`.
    pub fn t_pow(k: impl Into<BigInt>) -> Self {
        Self::from_parts(BigInt::one(), k.into(), BigInt::zero(), BigInt::one())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_parts(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::from_parts(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn negate(&self) -> Self {
        Self::from_parts(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.c, self.d)
    }
}

/// An element of `PSL2(Z)`, stored as the representative of `{M, -M}` with
/// `c > 0`, or `c == 0` and `a > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PSLElement(Mat2Z);

impl PSLElement {
    pub fn new(m: Mat2Z) -> Self {
        let flip = m.c.is_negative() || (m.c.is_zero() && m.a.is_negative());
        Self(if flip { m.negate() } else { m })
    }

    pub fn identity() -> Self {
        Self(Mat2Z::identity())
    }

    pub fn s() -> Self {
        Self::new(Mat2Z::s())
    }

    pub fn t_pow(k: impl Into<BigInt>) -> Self {
        Self(Mat2Z::t_pow(k))
    }

    pub fn t() -> Self {
        Self::t_pow(1)
    }

    pub fn matrix(&self) -> &Mat2Z {
        &self.0
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.0.mul(&o.0))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.0.inverse())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

impl fmt::Display for PSLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A point `x + iy` of the upper half plane with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpperHalfPoint {
    x: BigRational,
    y: BigRational,
}

impl UpperHalfPoint {
    pub fn new(x: BigRational, y: BigRational) -> Result<Self, Sl2zError> {
        if !y.is_positive() {
            return Err(Sl2zError::NotInUpperHalfPlane(format_rational_full(&y)));
        }
        Ok(Self { x, y })
    }

    /// Convenience constructor from integer fractions `xn/xd + i yn/yd`.
    pub fn from_fractions(xn: i64, xd: i64, yn: i64, yd: i64) -> Result<Self, Sl2zError> {
        Self::new(
            BigRational::new(xn.into(), xd.into()),
            BigRational::new(yn.into(), yd.into()),
        )
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn abs_squared(&self) -> BigRational {
        &self.x * &self.x + &self.y * &self.y
    }
}

impl fmt::Display for UpperHalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", format_rational_full(&self.x), format_rational_full(&self.y))
    }
}

impl std::str::FromStr for UpperHalfPoint {
    type Err = Sl2zError;

    /// Parses `x,y`.
    fn from_str(s: &str) -> Result<Self, Sl2zError> {
        let (x, y) = s.split_once(',').ok_or_else(|| Sl2zError::Parse(s.into()))?;
        let x = parse_rational(x).ok_or_else(|| Sl2zError::Parse(s.into()))?;
        let y = parse_rational(y).ok_or_else(|| Sl2zError::Parse(s.into()))?;
        Self::new(x, y)
    }
}

/// `M . tau = (a tau + b) / (c tau + d)`, computed exactly. The imaginary part
/// of the image is `y / |c tau + d|^2`.
pub fn moebius(m: &PSLElement, tau: &UpperHalfPoint) -> UpperHalfPoint {
    let [a, b, c, d] = m.matrix().entries().map(|e| BigRational::from_integer(e.clone()));
    let (x, y) = (&tau.x, &tau.y);
    let den_re = &c * x + &d;
    let den_im = &c * y;
    let norm = &den_re * &den_re + &den_im * &den_im;
    let num_re = &a * x + &b;
    let num_im = &a * y;
    let re = (&num_re * &den_re + &num_im * &den_im) / &norm;
    let im = y / &norm;
    UpperHalfPoint { x: re, y: im }
}

/// Closed fundamental domain: `|tau| >= 1` and `-1/2 <= Re(tau) <= 1/2`.
pub fn in_fundamental_domain(tau: &UpperHalfPoint) -> bool {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    tau.abs_squared() >= BigRational::one() && tau.x.abs() <= half
}

/// Generator letters. `T(k)` stands for `k` consecutive `T` letters (or `-k`
/// letters `T^-1` when `k < 0`), so long translations stay compact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Syllable {
    S,
    T(BigInt),
}

/// Single letters of the alphabet `{S, T, T^-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    S,
    T,
    TInv,
}

/// A word in `S` and powers of `T`, read left to right as a matrix product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneratorWord(Vec<Syllable>);

impl GeneratorWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends on the right, merging adjacent `T` powers and cancelling `S S`
    /// (which is the identity in PSL).
    pub fn push(&mut self, s: Syllable) {
        match (self.0.last_mut(), s) {
            (_, Syllable::T(k)) if k.is_zero() => {}
            (Some(Syllable::T(prev)), Syllable::T(k)) => {
                *prev += k;
                if prev.is_zero() {
                    self.0.pop();
                }
            }
            (Some(Syllable::S), Syllable::S) => {
                self.0.pop();
            }
            (_, s) => self.0.push(s),
        }
    }

    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(it: I) -> Self {
        let mut w = Self::empty();
        for s in it {
            w.push(s);
        }
        w
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        Self::from_syllables(it.into_iter().map(|l| match l {
            Letter::S => Syllable::S,
            Letter::T => Syllable::T(BigInt::one()),
            Letter::TInv => Syllable::T(-BigInt::one()),
        }))
    }

    /// Expands into single letters. The length equals the sum of `|k|` over
    /// `T` syllables, which can be large.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for s in &self.0 {
            match s {
                Syllable::S => out.push(Letter::S),
                Syllable::T(k) => {
                    let n: usize = k.magnitude().try_into().expect("T power fits in memory");
                    let l = if k.is_positive() { Letter::T } else { Letter::TInv };
                    out.extend(std::iter::repeat_n(l, n));
                }
            }
        }
        out
    }

    pub fn evaluate(&self) -> PSLElement {
        self.0.iter().fold(PSLElement::identity(), |acc, s| {
            let g = match s {
                Syllable::S => PSLElement::s(),
                Syllable::T(k) => PSLElement::t_pow(k.clone()),
            };
            acc.mul(&g)
        })
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| match s {
                Syllable::S => "S".to_string(),
                Syllable::T(k) if k.is_one() => "T".to_string(),
                Syllable::T(k) => format!("T^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Result of reducing a point into the fundamental domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub point: UpperHalfPoint,
    pub element: PSLElement,
    pub word: GeneratorWord,
}

/// `floor(x + 1/2)`, the translation that moves `x` into `[-1/2, 1/2)`.
fn nearest_shift(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

/// Moves `tau` into the closed fundamental domain.
///
/// Loop: translate the real part into `[-1/2, 1/2)`; if `|tau| < 1` apply `S`
/// and repeat. Each `S` step strictly increases the imaginary part and the
/// imaginary parts along an orbit with rational coordinates are bounded with
/// bounded denominators, so the loop terminates.
pub fn reduce_to_fundamental(tau: &UpperHalfPoint) -> Reduction {
    let mut point = tau.clone();
    let mut steps: Vec<Syllable> = Vec::new();
    loop {
        let k = nearest_shift(&point.x);
        if !k.is_zero() {
            point.x -= BigRational::from_integer(k.clone());
            steps.push(Syllable::T(-k));
        }
        if point.abs_squared() < BigRational::one() {
            point = moebius(&PSLElement::s(), &point);
            steps.push(Syllable::S);
        } else {
            break;
        }
    }
    // applied first = rightmost factor
    let word = GeneratorWord::from_syllables(steps.into_iter().rev());
    Reduction {
        point,
        element: word.evaluate(),
        word,
    }
}

/// Reduction followed by boundary normalization: points on a vertical edge
/// end up with `Re = -1/2`, points on the unit arc with `Re <= 0`.
pub fn canonical_representative(tau: &UpperHalfPoint) -> Reduction {
    let mut r = reduce_to_fundamental(tau);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if r.point.x == half {
        let g = PSLElement::t_pow(-1);
        r.point = moebius(&g, &r.point);
        r.element = g.mul(&r.element);
        let mut word = GeneratorWord::from_syllables([Syllable::T(-BigInt::one())]);
        for s in r.word.syllables() {
            word.push(s.clone());
        }
        r.word = word;
    }
    if r.point.abs_squared().is_one() && r.point.x.is_positive() {
        let g = PSLElement::s();
        r.point = moebius(&g, &r.point);
        r.element = g.mul(&r.element);
        let mut word = GeneratorWord::from_syllables([Syllable::S]);
        for s in r.word.syllables() {
            word.push(s.clone());
        }
        r.word = word;
    }
    r
}

/// Some `M` with `M . tau1 = tau2`, if the two points lie in the same orbit.
pub fn tau_equivalent(tau1: &UpperHalfPoint, tau2: &UpperHalfPoint) -> Option<PSLElement> {
    let r1 = canonical_representative(tau1);
    let r2 = canonical_representative(tau2);
    (r1.point == r2.point).then(|| r2.element.inverse().mul(&r1.element))
}

/// Writes `M` as a word in `S` and powers of `T` (equal to `M` in PSL).
///
/// Euclid on the first column: strip `T^k` until `|a| < |c|`, swap with `S`,
/// repeat; once `c = 0` what is left is a pure translation.
pub fn word_decompose(m: &PSLElement) -> GeneratorWord {
    let [a, b, c, d] = m.matrix().entries().map(Clone::clone);
    let mut cur = Mat2Z::from_parts(a, b, c, d);
    let mut word = GeneratorWord::empty();
    while !cur.c.is_zero() {
        let k = cur.a.div_floor(&cur.c);
        if !k.is_zero() {
            cur = Mat2Z::t_pow(-k.clone()).mul(&cur);
            word.push(Syllable::T(k));
        }
        if !cur.c.is_zero() {
            // S^-1 = -S, equal to S in PSL
            cur = Mat2Z::s().inverse().mul(&cur);
            word.push(Syllable::S);
        }
    }
    // cur = ±(1 b; 0 1)
    let shift = if cur.a.is_one() { cur.b.clone() } else { -cur.b.clone() };
    word.push(Syllable::T(shift));
    word
}

/// Complex number with rational parts.
pub type QComplex = Complex<BigRational>;

/// Parses `re,im` into a complex number with rational parts.
pub fn parse_qcomplex(s: &str) -> Result<QComplex, Sl2zError> {
    let (re, im) = s.split_once(',').ok_or_else(|| Sl2zError::Parse(s.into()))?;
    let re = parse_rational(re).ok_or_else(|| Sl2zError::Parse(s.into()))?;
    let im = parse_rational(im).ok_or_else(|| Sl2zError::Parse(s.into()))?;
    Ok(Complex::new(re, im))
}

/// Ordered basis `(w1, w2)` of a lattice in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    w1: QComplex,
    w2: QComplex,
}

impl LatticeBasis {
    pub fn new(w1: QComplex, w2: QComplex) -> Result<Self, Sl2zError> {
        // Im(conj(w1) * w2) vanishes iff w1 / w2 is real
        let cross = &w1.re * &w2.im - &w1.im * &w2.re;
        if cross.is_zero() {
            return Err(Sl2zError::DegenerateBasis);
        }
        Ok(Self { w1, w2 })
    }

    pub fn w1(&self) -> &QComplex {
        &self.w1
    }

    pub fn w2(&self) -> &QComplex {
        &self.w2
    }
}

/// `tau = w1 / w2` if it lies in the upper half plane, otherwise `w2 / w1`.
pub fn tau_from_basis(basis: &LatticeBasis) -> Result<UpperHalfPoint, Sl2zError> {
    let z = &basis.w1 / &basis.w2;
    if z.im.is_positive() {
        return UpperHalfPoint::new(z.re, z.im);
    }
    if z.im.is_zero() {
        return Err(Sl2zError::DegenerateBasis);
    }
    let z = &basis.w2 / &basis.w1;
    UpperHalfPoint::new(z.re, z.im)
}

/// Integer change of basis `(A B; C D)` with `W1 = A w1 + B w2`,
/// `W2 = C w1 + D w2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl BasisChange {
    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }
}

impl fmt::Display for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.c, self.d)
    }
}

/// Solves `target = x w1 + y w2` over the rationals (Cramer on real and
/// imaginary parts).
fn coordinates(basis: &LatticeBasis, target: &QComplex) -> (BigRational, BigRational) {
    let (w1, w2) = (&basis.w1, &basis.w2);
    let det = &w1.re * &w2.im - &w2.re * &w1.im;
    let x = (&target.re * &w2.im - &w2.re * &target.im) / &det;
    let y = (&w1.re * &target.im - &target.re * &w1.im) / &det;
    (x, y)
}

/// The change of basis from `b1` to `b2` when both span the same lattice.
///
/// Returns `None` when some coordinate is non-integral or the determinant is
/// not `±1` (then `b2` spans a proper sublattice or a different lattice).
pub fn lattice_same(b1: &LatticeBasis, b2: &LatticeBasis) -> Option<BasisChange> {
    let (a, b) = coordinates(b1, &b2.w1);
    let (c, d) = coordinates(b1, &b2.w2);
    if ![&a, &b, &c, &d].iter().all(|q| q.is_integer()) {
        return None;
    }
    let m = BasisChange {
        a: a.to_integer(),
        b: b.to_integer(),
        c: c.to_integer(),
        d: d.to_integer(),
    };
    crate::qseries::is_unit_int(&m.det()).then_some(m)
}
