//! Quaternion scalars and imaginary units.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real quaternion `w + x i + y j + z k`.
///
/// Serialized as the 4-array `[w, x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const ONE: Quaternion = Quaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Quaternion = Quaternion { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion { w, x: 0.0, y: 0.0, z: 0.0 }
    }

    /// Builds `c1 + c2 j` from the two i-complex parts.
    #[inline]
    pub fn from_complex_parts(c1: Complex64, c2: Complex64) -> Self {
        // c2 j = (a + b i) j = a j + b k
        Quaternion::new(c1.re, c1.im, c2.re, c2.im)
    }

    /// The i-complex parts `(c1, c2)` with `self = c1 + c2 j`.
    #[inline]
    pub fn complex_parts(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real part `Re(q)`.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part `Im(q)` as a quaternion with zero real part.
    #[inline]
    pub fn im(self) -> Self {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse, `conj(q) / |q|²`. Returns `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            None
        } else {
            Some(self.conj().scale(1.0 / n2))
        }
    }

    /// Euclidean inner product on R⁴.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn powi(self, n: u32) -> Self {
        let mut acc = Quaternion::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute component, used for tolerance scaling.
    #[inline]
    pub fn max_abs(self) -> f64 {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }
}

/// Hamilton product.
#[inline]
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: f64) -> Quaternion {
        self.scale(rhs)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        rhs.scale(self)
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, rhs: Quaternion) {
        *self = qmul(*self, rhs);
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, rhs: f64) -> Quaternion {
        self.scale(1.0 / rhs)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Add<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, r: f64) -> Quaternion {
        Quaternion::new(self.w + r, self.x, self.y, self.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Quaternion) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, r: Quaternion) {
        *self = *self - r;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

/// A purely imaginary unit quaternion, i.e. a point of the unit sphere `S`.
///
/// Every such `I` satisfies `I² = -1` and spans the complex plane `C_I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[f64; 4]")]
pub struct ImaginaryUnit(Quaternion);

impl From<ImaginaryUnit> for [f64; 4] {
    fn from(u: ImaginaryUnit) -> Self {
        u.0.into()
    }
}

impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = Quaternion::deserialize(d)?;
        ImaginaryUnit::new(q).map_err(serde::de::Error::custom)
    }
}

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit(Quaternion::I);
    pub const J: ImaginaryUnit = ImaginaryUnit(Quaternion::J);
    pub const K: ImaginaryUnit = ImaginaryUnit(Quaternion::K);

    /// Normalizes the imaginary part of `q`. Fails if `q` has a real part
    /// beyond round-off or a vanishing imaginary part.
    pub fn new(q: Quaternion) -> Result<Self> {
        let n = q.im().norm();
        if !q.is_finite() || n <= 1e-300 {
            return Err(Error::Frame(format!("{q} has no imaginary direction")));
        }
        if q.w.abs() > 1e-10 * n.max(1.0) {
            return Err(Error::Frame(format!("{q} is not purely imaginary")));
        }
        Ok(ImaginaryUnit(q.im().scale(1.0 / n)))
    }

    /// Direction of an arbitrary nonzero 3-vector `(x, y, z)`.
    pub fn from_vector(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(Quaternion::new(0.0, x, y, z))
    }

    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        self.0
    }

    /// `x + I y` in the plane `C_I`.
    #[inline]
    pub fn lift(self, c: Complex64) -> Quaternion {
        Quaternion::real(c.re) + self.0.scale(c.im)
    }

    /// Component along `I` of a quaternion known to lie in `C_I`.
    #[inline]
    pub fn project(self, q: Quaternion) -> Complex64 {
        Complex64::new(q.w, q.dot(self.0))
    }
}

impl From<ImaginaryUnit> for Quaternion {
    fn from(u: ImaginaryUnit) -> Self {
        u.0
    }
}

/// Completes `I` to an orthonormal frame `(I, J, K = I J)`.
///
/// `J` is the normalized component orthogonal to `I` of the first basis
/// vector among `j, k, i` with the smallest overlap with `I`, so the result
/// is deterministic.
pub fn frame_complete(unit: ImaginaryUnit) -> (ImaginaryUnit, ImaginaryUnit) {
    let i = unit.as_quaternion();
    let candidates = [Quaternion::J, Quaternion::K, Quaternion::I];
    let mut best = candidates[0];
    let mut best_overlap = f64::INFINITY;
    for c in candidates {
        let overlap = c.dot(i).abs();
        // strict comparison keeps the earliest candidate on ties
        if overlap < best_overlap - 1e-15 {
            best = c;
            best_overlap = overlap;
        }
    }
    let v = best - i.scale(best.dot(i));
    let j = ImaginaryUnit(v.scale(1.0 / v.norm()));
    let k = ImaginaryUnit::new(i * j.0).expect("product of orthogonal units is a unit");
    (j, k)
}

/// Checks that `I` and `J` are orthonormal imaginary units.
pub fn check_frame(i: Quaternion, j: Quaternion) -> Result<()> {
    let tol = 1e-10;
    if i.w.abs() > tol || j.w.abs() > tol {
        return Err(Error::Frame("units must be purely imaginary".into()));
    }
    if (i.norm() - 1.0).abs() > tol || (j.norm() - 1.0).abs() > tol {
        return Err(Error::Frame("units must have modulus one".into()));
    }
    if i.dot(j).abs() > tol {
        return Err(Error::Frame(format!("I·J overlap {:.3e}", i.dot(j))));
    }
    Ok(())
}

/// Splits `a = α + β J` with `α, β` in the plane `C_I`.
///
/// The returned complex numbers hold the components along `1` and `I`.
pub fn split_coefficient(
    a: Quaternion,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
) -> Result<(Complex64, Complex64)> {
    let (iq, jq) = (i.as_quaternion(), j.as_quaternion());
    check_frame(iq, jq)?;
    let kq = iq * jq;
    let alpha = Complex64::new(a.w, a.dot(iq));
    // (b0 + b1 I) J = b0 J + b1 K
    let beta = Complex64::new(a.dot(jq), a.dot(kq));
    Ok((alpha, beta))
}

/// Inverse of [`split_coefficient`]: `α + β J`.
pub fn join_coefficient(
    alpha: Complex64,
    beta: Complex64,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
) -> Quaternion {
    i.lift(alpha) + i.lift(beta) * j.as_quaternion()
}
