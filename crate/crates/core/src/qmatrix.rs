//! Dense quaternionic matrices and the complex embedding χ.
//!
//! Writing `P = P₁ + P₂ j` with `P₁, P₂` complex (with respect to the unit `i`),
//! the embedding is
//!
//! ```text
//! χ(P) = [  P₁        P₂      ]
//!        [ -conj(P₂)  conj(P₁) ]
//! ```
//!
//! χ is an injective real-algebra homomorphism that intertwines adjoints, so
//! spectral questions about Hermitian quaternionic matrices reduce to complex
//! Hermitian ones with every eigenvalue doubled.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Row-major dense matrix of quaternions.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag_real(&vec![1.0; n])
    }

    pub fn diag_real(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = Quaternion::real(v);
        }
        m
    }

    /// 1×1 matrix holding `q`.
    pub fn scalar(q: Quaternion) -> Self {
        QMatrix { rows: 1, cols: 1, data: vec![q] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != nc) {
            return Err(Error::Shape("ragged quaternion matrix rows".into()));
        }
        Ok(QMatrix { rows: nr, cols: nc, data: rows.concat() })
    }

    /// Builds `P₁ + P₂ j` from its two complex parts.
    pub fn from_complex_parts(p1: &ComplexMatrix, p2: &ComplexMatrix) -> Result<Self> {
        if (p1.rows(), p1.cols()) != (p2.rows(), p2.cols()) {
            return Err(Error::Shape("complex parts differ in shape".into()));
        }
        Ok(Self::from_fn(p1.rows(), p1.cols(), |r, c| Quaternion::from_complex_parts(p1[(r, c)], p2[(r, c)])))
    }

    /// The complex parts `(P₁, P₂)` with `self = P₁ + P₂ j`.
    pub fn complex_parts(&self) -> (ComplexMatrix, ComplexMatrix) {
        let p1 = ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].complex_parts().0);
        let p2 = ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].complex_parts().1);
        (p1, p2)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<Quaternion>> {
        self.data.chunks(self.cols.max(1)).map(<[Quaternion]>::to_vec).take(self.rows).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q.scale(s))
    }

    /// `q · self` (scalar acting from the left on every entry).
    pub fn left_mul(&self, q: Quaternion) -> Self {
        self.map(|e| q * e)
    }

    /// `self · q` (scalar acting from the right on every entry).
    pub fn right_mul(&self, q: Quaternion) -> Self {
        self.map(|e| e * q)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&q| f(q)).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// `max(1, largest entry modulus)`, the scale all tolerances are taken against.
    pub fn scale_factor(&self) -> f64 {
        self.max_abs().max(1.0)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_diff(&self, other: &QMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "quaternion matrix shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max)
    }

    /// Hermitian defect `max |A - A^*|` entrywise; infinite for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut d: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                d = d.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        d
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &QMatrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)];
            }
        }
    }

    /// Stacks `blocks` horizontally. All blocks need the same row count.
    pub fn hstack(blocks: &[QMatrix]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::Shape("hstack row counts differ".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Stacks `blocks` vertically. All blocks need the same column count.
    pub fn vstack(blocks: &[QMatrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Shape("vstack column counts differ".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        Ok(out)
    }

    pub fn matmul(&self, rhs: &QMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * *b;
                }
            }
        }
        Ok(out)
    }

    /// `selfⁿ` for square matrices, by repeated squaring.
    pub fn pow(&self, n: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Inverse through the complex embedding.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let inv = chi_embed(self).inverse()?;
        Ok(chi_project(&inv))
    }

    /// Operator (spectral) norm, computed as the largest singular value of χ(self).
    pub fn operator_norm(&self) -> Result<f64> {
        let m = chi_embed(self);
        let gram = &m.adjoint() * &m;
        let eig = crate::qlinalg::eigh_complex(&gram)?;
        Ok(eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.cols + c]
    }
}

fn zip_with(a: &QMatrix, b: &QMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> QMatrix {
    assert_eq!(a.shape(), b.shape(), "quaternion matrix shape mismatch");
    QMatrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f(*x, *y)).collect() }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(-1.0)
    }
}

/// Panics on shape mismatch; use [`QMatrix::matmul`] for a checked product.
impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.matmul(rhs).expect("quaternion matrix shape mismatch")
    }
}

/// Conjugate transpose.
pub fn adjoint(p: &QMatrix) -> QMatrix {
    p.adjoint()
}

/// The complex embedding `χ: H^{s×t} → C^{2s×2t}`.
pub fn chi_embed(p: &QMatrix) -> ComplexMatrix {
    let (s, t) = p.shape();
    let mut m = ComplexMatrix::zeros(2 * s, 2 * t);
    for r in 0..s {
        for c in 0..t {
            let (p1, p2) = p[(r, c)].complex_parts();
            m[(r, c)] = p1;
            m[(r, t + c)] = p2;
            m[(s + r, c)] = -p2.conj();
            m[(s + r, t + c)] = p1.conj();
        }
    }
    m
}

/// Largest violation of the χ-image block symmetry, or `None` for odd shapes.
pub fn chi_defect(m: &ComplexMatrix) -> Option<f64> {
    if !m.rows().is_multiple_of(2) || !m.cols().is_multiple_of(2) {
        return None;
    }
    let (s, t) = (m.rows() / 2, m.cols() / 2);
    let mut d: f64 = 0.0;
    for r in 0..s {
        for c in 0..t {
            d = d.max((m[(s + r, t + c)] - m[(r, c)].conj()).norm());
            d = d.max((m[(s + r, c)] + m[(r, t + c)].conj()).norm());
        }
    }
    Some(d)
}

/// Inverse of [`chi_embed`]. Rejects matrices outside the image of χ
/// (tolerance `1e-10 · scale`).
pub fn chi_inverse(m: &ComplexMatrix) -> Result<QMatrix> {
    let defect = chi_defect(m).ok_or_else(|| {
        Error::Shape(format!("{}x{} has odd dimension, not a χ image", m.rows(), m.cols()))
    })?;
    if defect > 1e-10 * m.scale_factor() {
        return Err(Error::SymmetryViolation { defect });
    }
    let (s, t) = (m.rows() / 2, m.cols() / 2);
    Ok(QMatrix::from_fn(s, t, |r, c| Quaternion::from_complex_parts(m[(r, c)], m[(r, t + c)])))
}

/// Nearest χ image, read back as a quaternionic matrix.
///
/// Averages the two redundant copies of each complex part. Used internally
/// for results that are in the image up to accumulated round-off.
pub(crate) fn chi_project(m: &ComplexMatrix) -> QMatrix {
    let (s, t) = (m.rows() / 2, m.cols() / 2);
    QMatrix::from_fn(s, t, |r, c| {
        let p1 = (m[(r, c)] + m[(s + r, t + c)].conj()) * 0.5;
        let p2 = (m[(r, t + c)] - m[(s + r, c)].conj()) * 0.5;
        Quaternion::from_complex_parts(p1, p2)
    })
}

#[derive(Serialize, Deserialize)]
struct QMatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Quaternion>>,
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QMatrixRepr { rows: self.rows, cols: self.cols, data: self.row_vecs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = QMatrixRepr::deserialize(d)?;
        if repr.data.len() != repr.rows || repr.data.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom(format!(
                "matrix data does not match declared shape {}x{}",
                repr.rows, repr.cols
            )));
        }
        QMatrix::from_rows(repr.data).map_err(D::Error::custom)
    }
}

/// Complex scalar as a 1×1 quaternion matrix entry `c + 0 j`.
pub fn complex_scalar(c: Complex64) -> Quaternion {
    Quaternion::from_complex_parts(c, Complex64::new(0.0, 0.0))
}
