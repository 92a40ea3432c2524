//! Slice power series, the Representation Formula and Herglotz-type kernels
//! on the quaternionic unit ball.
//!
//! A left slice series is `f(p) = Σ pⁿ aₙ` with coefficients on the right.
//! On each plane `C_I = {x + I y}` it restricts to a holomorphic function,
//! and its values on one plane determine it everywhere through
//!
//! ```text
//! f(x + I y) = ½[f(x + J y) + f(x - J y)] + I ½[J (f(x - J y) - f(x + J y))].
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::HermitianSequence;
use crate::qlinalg::{hermitian_eigen, Inertia};
use crate::qmatrix::QMatrix;
use crate::quat::{check_frame, ImaginaryUnit, Quaternion};

/// Required tail bound for a truncated series to count as converged.
pub const CONVERGENCE_TOL: f64 = 1e-10;
/// Agreement required between the two forms of the global kernel.
pub const KERNEL_AGREEMENT_TOL: f64 = 1e-10;

/// A value together with a certified bound on the truncation error.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncated<T> {
    pub value: T,
    pub tail: f64,
}

/// Truncated left series `Σ_{n=0}^{M} pⁿ aₙ`.
///
/// `radius` is the validity radius and `coeff_bound` a constant with
/// `‖aₙ‖ ≤ coeff_bound · radius^{-n}` for all `n`, including the ones that
/// were truncated away. It defaults to the maximum over the stored terms.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicePowerSeries {
    coeffs: Vec<QMatrix>,
    radius: f64,
    coeff_bound: f64,
}

impl SlicePowerSeries {
    pub fn new(coeffs: Vec<QMatrix>, radius: f64) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::Invalid("series needs a₀".into()))?;
        let shape = first.shape();
        if coeffs.iter().any(|a| a.shape() != shape) {
            return Err(Error::Shape("series coefficients differ in shape".into()));
        }
        if radius.is_nan() || radius <= 0.0 {
            return Err(Error::Invalid(format!("radius {radius} must be positive")));
        }
        let coeff_bound = coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a.frobenius_norm() * radius.powi(n as i32))
            .fold(0.0, f64::max);
        Ok(SlicePowerSeries { coeffs, radius, coeff_bound })
    }

    /// Scalar series from quaternion coefficients.
    pub fn scalar(coeffs: &[Quaternion], radius: f64) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| QMatrix::scalar(a)).collect(), radius)
    }

    /// Overrides the coefficient bound used for the tail estimate.
    pub fn with_coeff_bound(mut self, bound: f64) -> Self {
        self.coeff_bound = bound;
        self
    }

    pub fn coeffs(&self) -> &[QMatrix] {
        &self.coeffs
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Horner evaluation `a₀ + p(a₁ + p(a₂ + …))` with the reported geometric tail.
pub fn eval_series(f: &SlicePowerSeries, p: Quaternion) -> Result<Truncated<QMatrix>> {
    let ratio = p.norm() / f.radius;
    if ratio >= 1.0 {
        return Err(Error::OutOfDomain(format!("|p| = {} not below radius {}", p.norm(), f.radius)));
    }
    let mut acc = f.coeffs.last().expect("series is non-empty").clone();
    for a in f.coeffs.iter().rev().skip(1) {
        acc = &acc.left_mul(p) + a;
    }
    let tail = f.coeff_bound * ratio.powi(f.coeffs.len() as i32) / (1.0 - ratio);
    Ok(Truncated { value: acc, tail })
}

/// Reconstructs `f(x + I y)` from `f_plus = f(x + J y)` and `f_minus = f(x - J y)`.
pub fn representation_formula(f_plus: &QMatrix, f_minus: &QMatrix, i: ImaginaryUnit, j: ImaginaryUnit) -> QMatrix {
    let (iq, jq) = (i.as_quaternion(), j.as_quaternion());
    let mean = (f_plus + f_minus).scale(0.5);
    let twist = (f_minus - f_plus).left_mul(jq).left_mul(iq).scale(0.5);
    &mean + &twist
}

/// A point `x + I y` of the slice `C_I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePoint {
    pub x: f64,
    pub y: f64,
    pub unit: ImaginaryUnit,
}

impl SlicePoint {
    pub fn new(x: f64, y: f64, unit: ImaginaryUnit) -> Self {
        SlicePoint { x, y, unit }
    }

    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn to_quaternion(&self) -> Quaternion {
        self.unit.lift(self.complex())
    }
}

fn lambda(z: Complex64, t: f64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::OutOfDomain(format!("|z| = {} not below 1", z.norm())));
    }
    let e = Complex64::from_polar(1.0, t);
    Ok((e + z) / (e - z))
}

/// `Λ_I(z, t) = (e^{It} + z)/(e^{It} - z)` as a `C_I` value (components
/// along `1` and `I`).
pub fn herglotz_kernel_slice(z: &SlicePoint, t: f64) -> Result<Complex64> {
    lambda(z.complex(), t)
}

/// Both evaluations of the global kernel at `(q, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalKernel {
    /// `(1 + q² - 2q cos t)^{-1} (1 - q² - 2q I sin t)`.
    pub closed_form: Quaternion,
    /// Representation-Formula extension of `Λ_I(·, t)` to `q`.
    pub rep_formula: Quaternion,
    pub discrepancy: f64,
}

/// Slice-regular extension of `z ↦ Λ_I(z, t)` to a quaternion `q`.
///
/// The closed form is the star-quotient `(e^{It} - q)^{-*} * (e^{It} + q)`
/// expanded with real-coefficient denominator. The second path splits
/// `q = x + I_q y` (`y = |Im q|`), evaluates `Λ_I` at `z = x + I y` and its
/// conjugate and recombines with the Representation Formula; for real `q`
/// the `I_q` term vanishes. The two must agree to `KERNEL_AGREEMENT_TOL`.
pub fn herglotz_kernel_global(q: Quaternion, t: f64, i: ImaginaryUnit) -> Result<GlobalKernel> {
    if q.norm() >= 1.0 {
        return Err(Error::OutOfDomain(format!("|q| = {} not below 1", q.norm())));
    }
    let iq = i.as_quaternion();
    let q2 = q * q;
    let den = Quaternion::ONE + q2 - q.scale(2.0 * t.cos());
    let num = Quaternion::ONE - q2 - (q * iq).scale(2.0 * t.sin());
    let closed_form = den.inverse().ok_or_else(|| Error::OutOfDomain("kernel denominator vanishes".into()))? * num;

    let x = q.re();
    let y = q.im().norm();
    let z = Complex64::new(x, y);
    let l_z = i.lift(lambda(z, t)?);
    let l_zbar = i.lift(lambda(z.conj(), t)?);
    let mut rep_formula = (l_z + l_zbar).scale(0.5);
    if y > 0.0 {
        let unit_q = q.im().scale(1.0 / y);
        rep_formula += unit_q * iq * (l_zbar - l_z).scale(0.5);
    }
    let discrepancy = (closed_form - rep_formula).norm();
    if discrepancy > KERNEL_AGREEMENT_TOL * closed_form.norm().max(1.0) {
        return Err(Error::KernelMismatch(discrepancy));
    }
    Ok(GlobalKernel { closed_form, rep_formula, discrepancy })
}

/// One atom `(t, μ₁, μ₂)` of a slice measure `μ_J = μ₁ + μ₂ J`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceAtom {
    pub t: f64,
    pub mu1: f64,
    pub mu2: f64,
}

/// Discrete `C_J`-valued measure on `[0, 2π)` with the constants
/// `Im F(0)`, `Im G(0)` of a Herglotz slice representation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceMeasure {
    #[serde(rename = "I")]
    i: ImaginaryUnit,
    #[serde(rename = "J")]
    j: ImaginaryUnit,
    #[serde(rename = "imag0F")]
    imag0_f: f64,
    #[serde(rename = "imag0G")]
    imag0_g: f64,
    atoms: Vec<SliceAtom>,
}

impl SliceMeasure {
    pub fn new(i: ImaginaryUnit, j: ImaginaryUnit, imag0_f: f64, imag0_g: f64, atoms: Vec<SliceAtom>) -> Result<Self> {
        let m = SliceMeasure { i, j, imag0_f, imag0_g, atoms };
        m.validate()?;
        Ok(m)
    }

    /// Checks the frame and that every `μ₁` is nonnegative.
    pub fn validate(&self) -> Result<()> {
        check_frame(self.i.as_quaternion(), self.j.as_quaternion())?;
        if let Some(a) = self.atoms.iter().find(|a| a.mu1.is_nan() || a.mu1 < 0.0) {
            return Err(Error::Invalid(format!("negative mu1 = {} at t = {}", a.mu1, a.t)));
        }
        Ok(())
    }

    pub fn units(&self) -> (ImaginaryUnit, ImaginaryUnit) {
        (self.i, self.j)
    }

    pub fn atoms(&self) -> &[SliceAtom] {
        &self.atoms
    }

    /// Total variation `Σ |μ₁ + μ₂ J|`.
    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mu1.hypot(a.mu2)).sum()
    }

    fn weight(&self, a: &SliceAtom) -> Quaternion {
        Quaternion::real(a.mu1) + self.j.as_quaternion().scale(a.mu2)
    }
}

/// `f_I(z) = I(Im F(0) + Im G(0) J) + Σ Λ_I(z, t_q)(μ₁ + μ₂ J)` at `z = x + I y`.
pub fn synthesize_slice(m: &SliceMeasure, x: f64, y: f64) -> Result<Quaternion> {
    let z = Complex64::new(x, y);
    let jq = m.j.as_quaternion();
    let mut acc = m.i.as_quaternion() * (Quaternion::real(m.imag0_f) + jq.scale(m.imag0_g));
    for a in &m.atoms {
        acc += m.i.lift(lambda(z, a.t)?) * m.weight(a);
    }
    Ok(acc)
}

/// Taylor coefficient `aₙ = 2 Σ e^{-I n t_q}(μ₁ + μ₂ J)`, `n ≥ 1`.
pub fn coefficient_from_measure(m: &SliceMeasure, n: u32) -> Result<Quaternion> {
    if n == 0 {
        return Err(Error::Invalid("coefficients are defined for n ≥ 1 only".into()));
    }
    let mut acc = Quaternion::ZERO;
    for a in &m.atoms {
        let phase = m.i.lift(Complex64::from_polar(1.0, -(n as f64) * a.t));
        acc += phase * m.weight(a);
    }
    Ok(acc.scale(2.0))
}

/// A priori growth bound `‖r(n)‖ ≤ K Cⁿ` used to certify truncations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBound {
    /// `‖r(n)‖ ≤ mass` for all `n` (measure-generated sequences).
    Mass(f64),
    Geometric { k: f64, c: f64 },
}

impl TailBound {
    fn constants(self) -> (f64, f64) {
        match self {
            TailBound::Mass(m) => (m, 1.0),
            TailBound::Geometric { k, c } => (k, c),
        }
    }

    /// `2 Σ_{n > m} Kⁿ Cⁿ |p|ⁿ`, or `None` when the series diverges.
    pub fn phi_tail(self, p_norm: f64, m: usize) -> Option<f64> {
        let (k, c) = self.constants();
        let ratio = p_norm * c;
        (ratio < 1.0).then(|| 2.0 * k * ratio.powi(m as i32 + 1) / (1.0 - ratio))
    }
}

/// `φ(p) = r(0) + 2 Σ_{n≥1} pⁿ r(n)` built from a Hermitian sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CaratheodoryFunction {
    seq: HermitianSequence,
    bound: TailBound,
}

impl CaratheodoryFunction {
    pub fn new(seq: HermitianSequence, bound: TailBound) -> Self {
        CaratheodoryFunction { seq, bound }
    }

    pub fn sequence(&self) -> &HermitianSequence {
        &self.seq
    }

    pub fn bound(&self) -> TailBound {
        self.bound
    }

    /// Coefficients `r(0), 2r(1), …, 2r(N)` as a slice series.
    pub fn as_series(&self) -> SlicePowerSeries {
        let coeffs = self
            .seq
            .values()
            .iter()
            .enumerate()
            .map(|(n, r)| if n == 0 { r.clone() } else { r.scale(2.0) })
            .collect();
        let (k, c) = self.bound.constants();
        SlicePowerSeries::new(coeffs, 1.0 / c).expect("sequence is non-empty").with_coeff_bound(2.0 * k)
    }

    /// `φ(p)` truncated at `M` terms (or the sequence support, if smaller).
    pub fn eval(&self, p: Quaternion, m: usize) -> Result<Truncated<QMatrix>> {
        phi_from_sequence(&self.seq, p, m, self.bound)
    }
}

/// Truncated `φ(p)` with a convergence certificate from `bound`.
///
/// The sequence vanishes beyond its support, so when `m` reaches the support
/// the sum is exact and `bound` is not consulted.
pub fn phi_from_sequence(r: &HermitianSequence, p: Quaternion, m: usize, bound: TailBound) -> Result<Truncated<QMatrix>> {
    let terms = m.min(r.support());
    let tail = if m >= r.support() {
        0.0
    } else {
        bound
            .phi_tail(p.norm(), terms)
            .filter(|&t| t <= CONVERGENCE_TOL)
            .ok_or_else(|| Error::OutOfDomain(format!("no convergence certificate at |p| = {}", p.norm())))?
    };
    let values = r.values();
    let mut acc = values[terms].scale(2.0);
    for n in (1..terms).rev() {
        acc = &acc.left_mul(p) + &values[n].scale(2.0);
    }
    let value = if terms == 0 { values[0].clone() } else { &acc.left_mul(p) + &values[0] };
    Ok(Truncated { value, tail })
}

/// `K_φ(p, q) = Σ_{n=0}^{M} pⁿ ((φ(p) + φ(q)^*)/2) q̄ⁿ`.
///
/// The reported tail covers both the kernel truncation and the error of the
/// two `φ` evaluations.
pub fn caratheodory_kernel(phi: &CaratheodoryFunction, p: Quaternion, q: Quaternion, m: usize) -> Result<Truncated<QMatrix>> {
    if let Some(z) = [p, q].into_iter().find(|z| z.norm() >= 1.0) {
        return Err(Error::OutOfDomain(format!("|p| = {} not below 1", z.norm())));
    }
    let fp = phi.eval(p, m)?;
    let fq = phi.eval(q, m)?;
    let h = (&fp.value + &fq.value.adjoint()).scale(0.5);
    let ratio = p.norm() * q.norm();
    let qbar = q.conj();
    let mut acc = h.clone();
    for _ in 0..m {
        acc = &h + &acc.left_mul(p).right_mul(qbar);
    }
    let h_norm = h.frobenius_norm() + 0.5 * (fp.tail + fq.tail);
    let tail = h_norm * ratio.powi(m as i32 + 1) / (1.0 - ratio) + 0.5 * (fp.tail + fq.tail) / (1.0 - ratio);
    Ok(Truncated { value: acc, tail })
}

/// `‖K - p K q̄ - (φ(p) + φ(q)^*)/2‖_F` for a kernel value from
/// [`caratheodory_kernel`].
pub fn kernel_identity_residual(phi: &CaratheodoryFunction, p: Quaternion, q: Quaternion, m: usize) -> Result<f64> {
    let k = caratheodory_kernel(phi, p, q, m)?.value;
    let fp = phi.eval(p, m)?.value;
    let fq = phi.eval(q, m)?.value;
    let h = (&fp + &fq.adjoint()).scale(0.5);
    let lhs = &k - &k.left_mul(p).right_mul(q.conj());
    Ok((&lhs - &h).frobenius_norm())
}

/// Inertia of the Gram matrix `[K_φ(p_i, p_j)]`.
pub fn kernel_negative_squares(phi: &CaratheodoryFunction, points: &[Quaternion], m: usize) -> Result<Inertia> {
    for (a, pa) in points.iter().enumerate() {
        if points[..a].iter().any(|pb| (*pa - *pb).norm() < 1e-12) {
            return Err(Error::Invalid(format!("point {a} repeats an earlier point")));
        }
    }
    let s = phi.seq.block_size();
    let n = points.len();
    let mut gram = QMatrix::zeros(n * s, n * s);
    for (a, &pa) in points.iter().enumerate() {
        for (b, &pb) in points.iter().enumerate().skip(a) {
            let k = caratheodory_kernel(phi, pa, pb, m)?.value;
            gram.set_block(a * s, b * s, &k);
            if a != b {
                gram.set_block(b * s, a * s, &k.adjoint());
            }
        }
    }
    let diag = gram.clone();
    let gram = (&diag + &diag.adjoint()).scale(0.5);
    hermitian_eigen(&gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn scalar_seq(f: impl Fn(usize) -> f64, n: usize) -> HermitianSequence {
        HermitianSequence::from_fn(n, |k| QMatrix::scalar(Quaternion::real(f(k)))).unwrap()
    }

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn series_examples() {
        let a0 = q(1.0, 2.0, -1.0, 0.5);
        let f = SlicePowerSeries::scalar(&[a0], 1.0).unwrap();
        assert_eq!(eval_series(&f, q(0.1, 0.2, 0.3, 0.0)).unwrap().value, QMatrix::scalar(a0));

        let mut coeffs = vec![Quaternion::ONE];
        coeffs.extend(std::iter::repeat_n(Quaternion::real(2.0), 80));
        let f = SlicePowerSeries::scalar(&coeffs, 1.0).unwrap();
        let v = eval_series(&f, Quaternion::real(0.5)).unwrap();
        assert!((v.value[(0, 0)] - Quaternion::real(3.0)).norm() < 1e-12);
        assert!(v.tail < 1e-20);

        let g = SlicePowerSeries::scalar(&[q(0.0, 1.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0), q(1.0, 0.0, 0.0, 1.0)], 1.0).unwrap();
        let x = 0.4;
        let direct = q(0.0, 1.0, 0.0, 0.0) + q(0.0, 0.0, 1.0, 0.0).scale(x) + q(1.0, 0.0, 0.0, 1.0).scale(x * x);
        assert!((eval_series(&g, Quaternion::real(x)).unwrap().value[(0, 0)] - direct).norm() < 1e-15);
        assert!(matches!(eval_series(&g, Quaternion::real(1.0)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn representation_formula_examples() {
        let i = ImaginaryUnit::K;
        let j = ImaginaryUnit::J;
        let a = QMatrix::scalar(q(0.3, 1.0, -2.0, 0.5));
        assert!(representation_formula(&a, &QMatrix::scalar(Quaternion::ONE), j, j).max_diff(&a) < 1e-15);
        assert!(representation_formula(&a, &a, i, j).max_diff(&a) < 1e-15);

        let (x, y) = (0.3, 0.7);
        let fp = q(x, 0.0, y, 0.0) * q(x, 0.0, y, 0.0);
        let fm = q(x, 0.0, -y, 0.0) * q(x, 0.0, -y, 0.0);
        let out = representation_formula(&QMatrix::scalar(fp), &QMatrix::scalar(fm), i, j);
        let direct = q(x, 0.0, 0.0, y) * q(x, 0.0, 0.0, y);
        assert!((out[(0, 0)] - direct).norm() < 1e-15);
    }

    #[test]
    fn slice_kernel_examples() {
        let i = ImaginaryUnit::I;
        for t in [0.0, 1.0, 4.0] {
            assert!((herglotz_kernel_slice(&SlicePoint::new(0.0, 0.0, i), t).unwrap() - 1.0).norm() < 1e-15);
        }
        let x = 0.35;
        let v = herglotz_kernel_slice(&SlicePoint::new(x, 0.0, i), 0.0).unwrap();
        assert!((v - (1.0 + x) / (1.0 - x)).norm() < 1e-14);
        assert!(herglotz_kernel_slice(&SlicePoint::new(0.6, 0.8, i), 0.0).is_err());
    }

    #[test]
    fn global_kernel_examples() {
        let i = ImaginaryUnit::I;
        let k = herglotz_kernel_global(Quaternion::ZERO, 2.0, i).unwrap();
        assert!((k.closed_form - Quaternion::ONE).norm() < 1e-15);
        let x = 0.4;
        let k = herglotz_kernel_global(Quaternion::real(x), PI, i).unwrap();
        assert!((k.closed_form - Quaternion::real((1.0 - x) / (1.0 + x))).norm() < 1e-14);
        let k = herglotz_kernel_global(q(0.0, 0.0, 0.4, 0.0), PI / 3.0, i).unwrap();
        assert!(k.discrepancy < 1e-10);
        // independently computed value of the slice extension at 0.4j, t = π/3
        let want = q(1.12569316, 0.32015727, 0.53604436, 0.67233026);
        assert!((k.closed_form - want).norm() < 1e-7);
        assert!(herglotz_kernel_global(q(0.0, 1.0, 0.0, 0.0), 0.0, i).is_err());
    }

    #[test]
    fn slice_measure_examples() {
        let (i, j) = (ImaginaryUnit::I, ImaginaryUnit::J);
        let m = SliceMeasure::new(i, j, 0.0, 0.0, vec![SliceAtom { t: 0.0, mu1: 1.0, mu2: 0.0 }]).unwrap();
        assert!((synthesize_slice(&m, 0.0, 0.0).unwrap() - Quaternion::ONE).norm() < 1e-15);
        let x = 0.3;
        let v = synthesize_slice(&m, x, 0.0).unwrap();
        assert!((v - Quaternion::real((1.0 + x) / (1.0 - x))).norm() < 1e-14);
        let m2 = SliceMeasure::new(i, j, 0.0, 0.0, vec![SliceAtom { t: 0.0, mu1: 1.0, mu2: 0.5 }]).unwrap();
        assert!((synthesize_slice(&m2, 0.0, 0.0).unwrap() - q(1.0, 0.0, 0.5, 0.0)).norm() < 1e-15);
        assert!(SliceMeasure::new(i, j, 0.0, 0.0, vec![SliceAtom { t: 0.0, mu1: -1.0, mu2: 0.0 }]).is_err());
        assert!(SliceMeasure::new(i, i, 0.0, 0.0, vec![]).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let (i, j) = (ImaginaryUnit::I, ImaginaryUnit::J);
        let m = SliceMeasure::new(i, j, 0.0, 0.0, vec![SliceAtom { t: 0.0, mu1: 1.0, mu2: 0.0 }]).unwrap();
        for n in 1..6 {
            assert!((coefficient_from_measure(&m, n).unwrap() - Quaternion::real(2.0)).norm() < 1e-15);
        }
        let empty = SliceMeasure::new(i, j, 0.0, 0.0, vec![]).unwrap();
        assert_eq!(coefficient_from_measure(&empty, 3).unwrap(), Quaternion::ZERO);
        let m = SliceMeasure::new(i, j, 0.0, 0.0, vec![SliceAtom { t: PI, mu1: 1.0, mu2: 0.0 }]).unwrap();
        for n in 1..6u32 {
            let want = 2.0 * if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((coefficient_from_measure(&m, n).unwrap() - Quaternion::real(want)).norm() < 1e-14);
        }
        assert!(coefficient_from_measure(&m, 0).is_err());
    }

    #[test]
    fn phi_examples() {
        let id = HermitianSequence::new(vec![QMatrix::identity(2)]).unwrap();
        let v = phi_from_sequence(&id, q(0.1, 0.2, 0.0, 0.1), 10, TailBound::Mass(1.0)).unwrap();
        assert_eq!(v.value, QMatrix::identity(2));

        let alt = scalar_seq(|n| if n % 2 == 0 { 1.0 } else { -1.0 }, 40);
        let x = 0.3;
        let v = phi_from_sequence(&alt, Quaternion::real(x), 40, TailBound::Mass(1.0)).unwrap();
        assert!((v.value[(0, 0)] - Quaternion::real((1.0 - x) / (1.0 + x))).norm() < 1e-10);

        let ones = scalar_seq(|_| 1.0, 30);
        let v = phi_from_sequence(&ones, Quaternion::real(0.2), 30, TailBound::Mass(1.0)).unwrap();
        assert!((v.value[(0, 0)] - Quaternion::real(1.5)).norm() < 1e-10);

        let err = phi_from_sequence(&ones, Quaternion::real(0.9), 20, TailBound::Mass(1.0));
        assert!(matches!(err, Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn kernel_examples() {
        let one = CaratheodoryFunction::new(scalar_seq(|n| if n == 0 { 1.0 } else { 0.0 }, 0), TailBound::Mass(1.0));
        let k = caratheodory_kernel(&one, Quaternion::ZERO, Quaternion::ZERO, 10).unwrap();
        assert_eq!(k.value, QMatrix::scalar(Quaternion::ONE));
        let k = caratheodory_kernel(&one, Quaternion::real(0.5), Quaternion::real(0.5), 80).unwrap();
        assert!((k.value[(0, 0)].w - 4.0 / 3.0).abs() < 1e-14);
        assert!(kernel_identity_residual(&one, Quaternion::real(0.5), Quaternion::real(0.5), 80).unwrap() < 1e-14);

        let alt = CaratheodoryFunction::new(scalar_seq(|n| if n % 2 == 0 { 1.0 } else { -1.0 }, 60), TailBound::Mass(1.0));
        let res = kernel_identity_residual(&alt, q(0.0, 0.3, 0.0, 0.0), q(0.0, 0.0, 0.2, 0.0), 60).unwrap();
        assert!(res <= 1e-8);
    }

    #[test]
    fn kernel_inertia_examples() {
        let one = CaratheodoryFunction::new(scalar_seq(|n| if n == 0 { 1.0 } else { 0.0 }, 0), TailBound::Mass(1.0));
        let pts = [Quaternion::real(-0.2), Quaternion::real(0.0), Quaternion::real(0.3)];
        assert_eq!(kernel_negative_squares(&one, &pts, 60).unwrap().neg, 0);

        let a = scalar_seq(|n| 2.0 - if n % 2 == 0 { 1.0 } else { -1.0 }, 60);
        let phi = CaratheodoryFunction::new(a, TailBound::Mass(3.0));
        let pts: Vec<Quaternion> = (0..6).map(|k| Quaternion::real(-0.25 + 0.1 * k as f64)).collect();
        assert_eq!(kernel_negative_squares(&phi, &pts, 60).unwrap().neg, 1);

        let single = kernel_negative_squares(&phi, &[Quaternion::real(0.1)], 60).unwrap();
        let k = caratheodory_kernel(&phi, Quaternion::real(0.1), Quaternion::real(0.1), 60).unwrap().value;
        assert_eq!(single.pos, usize::from(k[(0, 0)].w > 0.0));
        assert!(kernel_negative_squares(&phi, &[Quaternion::ZERO, Quaternion::ZERO], 10).is_err());
        assert!(matches!(caratheodory_kernel(&phi, Quaternion::real(1.0), Quaternion::ZERO, 10), Err(Error::OutOfDomain(_))));
    }
}
