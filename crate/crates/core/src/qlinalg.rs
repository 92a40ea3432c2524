//! Hermitian quaternionic eigenanalysis and positive-semidefinite primitives.
//!
//! Everything spectral goes through the complex embedding: a Hermitian
//! `A ∈ H^{n×n}` maps to a Hermitian `χ(A) ∈ C^{2n×2n}` whose eigenvalues are
//! those of `A`, each repeated twice. Matrix functions of `χ(A)` (square
//! roots, pseudoinverses) stay inside the image of χ, so they are read back
//! with [`chi_project`](crate::qmatrix).

use num_complex::Complex64;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::qmatrix::{chi_embed, chi_project, QMatrix};

/// Off-diagonal Frobenius threshold for the Jacobi sweeps, relative to scale.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues within `ZERO_TOL · scale` of zero count as zero in an inertia.
pub const ZERO_TOL: f64 = 1e-10;
/// Relative rank cut for pseudoinverses, against the largest eigenvalue.
pub const RANK_TOL: f64 = 1e-10;
/// Tolerated Hermitian defect, relative to scale.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Negative eigenvalues down to `-PSD_TOL · scale` are treated as round-off.
pub const PSD_TOL: f64 = 1e-10;
/// Block-positivity tolerance for the contraction lemma.
pub const BLOCK_PSD_TOL: f64 = 1e-8;

/// Eigen-decomposition of a complex Hermitian matrix.
#[derive(Debug, Clone)]
pub struct ComplexEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

/// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
///
/// Sweeps the upper triangle in row order with one unitary plane rotation
/// per pair until the off-diagonal Frobenius norm drops below
/// `JACOBI_OFF_TOL · scale`.
pub fn eigh_complex(m: &ComplexMatrix) -> Result<ComplexEigen> {
    let n = m.rows();
    let scale = m.scale_factor();
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { defect });
    }
    // symmetrize so round-off in the input cannot bias the sweep
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let tol = JACOBI_OFF_TOL * scale;

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a[(r, c)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut off = off_norm(&a);
    while off > tol {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / mag;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = [[c, s·e^{iφ}], [-s·e^{-iφ}, c]] on the (p, q) plane
                let gpq = phase * s;
                let gqp = -phase.conj() * s;
                // A ← A G
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * c + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * c;
                }
                // A ← G^* A
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * c + aqk * gqp.conj();
                    a[(q, k)] = apk * gpq.conj() + aqk * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                // V ← V G
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * c + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * c;
                }
            }
        }
        sweeps += 1;
        off = off_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(ComplexEigen { values, vectors })
}

/// Inertia of a Hermitian quaternionic matrix, in quaternionic units.
#[derive(Debug, Clone, PartialEq)]
pub struct Inertia {
    pub neg: usize,
    pub zero: usize,
    pub pos: usize,
    /// Ascending quaternionic eigenvalues, each listed once.
    pub eigenvalues: Vec<f64>,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.neg + self.zero + self.pos
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Rank: the number of eigenvalues away from zero.
    pub fn rank(&self) -> usize {
        self.neg + self.pos
    }
}

fn check_hermitian(a: &QMatrix) -> Result<()> {
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * a.scale_factor() {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Spectral decomposition of a Hermitian quaternionic matrix, kept in the
/// embedded form so matrix functions can be applied.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    embedded: ComplexEigen,
    scale: f64,
}

impl HermitianEigen {
    pub fn new(a: &QMatrix) -> Result<Self> {
        check_hermitian(a)?;
        let embedded = eigh_complex(&chi_embed(a))?;
        Ok(HermitianEigen { embedded, scale: a.scale_factor() })
    }

    /// Quaternionic eigenvalues (each χ pair averaged into one value).
    pub fn values(&self) -> Vec<f64> {
        self.embedded.values.chunks(2).map(|p| p.iter().sum::<f64>() / p.len() as f64).collect()
    }

    /// Eigenvalues of the embedding, every quaternionic one twice.
    pub fn embedded_values(&self) -> &[f64] {
        &self.embedded.values
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn inertia(&self) -> Inertia {
        let eigenvalues = self.values();
        let thr = ZERO_TOL * self.scale;
        let neg = eigenvalues.iter().filter(|&&l| l < -thr).count();
        let pos = eigenvalues.iter().filter(|&&l| l > thr).count();
        Inertia { neg, zero: eigenvalues.len() - neg - pos, pos, eigenvalues }
    }

    /// `f(A)` for a real function applied to the spectrum.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> QMatrix {
        let v = &self.embedded.vectors;
        let n = v.rows();
        let fd: Vec<f64> = self.embedded.values.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &d) in fd.iter().enumerate() {
            if d == 0.0 {
                continue;
            }
            for r in 0..n {
                let vr = v[(r, k)] * d;
                for c in 0..n {
                    out[(r, c)] += vr * v[(c, k)].conj();
                }
            }
        }
        chi_project(&out)
    }

    fn ensure_psd(&self) -> Result<()> {
        let min = self.embedded.values.first().copied().unwrap_or(0.0);
        if min < -PSD_TOL * self.scale {
            return Err(Error::NotPsd { min_eig: min });
        }
        Ok(())
    }

    fn rank_cut(&self) -> f64 {
        RANK_TOL * self.embedded.values.last().copied().unwrap_or(0.0).max(0.0)
    }

    /// PSD square root; negative round-off dust is clamped to zero.
    pub fn sqrt(&self) -> Result<QMatrix> {
        self.ensure_psd()?;
        Ok(self.apply(|l| l.max(0.0).sqrt()))
    }

    /// Pseudoinverse with the relative rank cut.
    pub fn pinv(&self) -> Result<QMatrix> {
        self.ensure_psd()?;
        let cut = self.rank_cut();
        Ok(self.apply(|l| if l > cut { 1.0 / l } else { 0.0 }))
    }

    /// Pseudoinverse of the square root. Rank is decided on the eigenvalues
    /// of `A` itself, not of `A^{1/2}`, so round-off dust never gets inverted.
    pub fn pinv_sqrt(&self) -> Result<QMatrix> {
        self.ensure_psd()?;
        let cut = self.rank_cut();
        Ok(self.apply(|l| if l > cut { 1.0 / l.sqrt() } else { 0.0 }))
    }
}

/// Inertia of a Hermitian quaternionic matrix.
pub fn hermitian_eigen(a: &QMatrix) -> Result<Inertia> {
    Ok(HermitianEigen::new(a)?.inertia())
}

/// Smallest eigenvalue of a Hermitian quaternionic matrix.
pub fn min_eigenvalue(a: &QMatrix) -> Result<f64> {
    if a.rows() == 0 {
        return Ok(0.0);
    }
    check_hermitian(a)?;
    Ok(eigh_complex(&chi_embed(a))?.values[0])
}

/// Unique PSD square root `S` with `S² = A`.
pub fn psd_sqrt(a: &QMatrix) -> Result<QMatrix> {
    HermitianEigen::new(a)?.sqrt()
}

/// Moore–Penrose pseudoinverse of a PSD matrix.
pub fn pinv_psd(a: &QMatrix) -> Result<QMatrix> {
    HermitianEigen::new(a)?.pinv()
}

fn block2(a: &QMatrix, b: &QMatrix, c: &QMatrix) -> Result<QMatrix> {
    let top = QMatrix::hstack(&[a.clone(), b.clone()])?;
    let bottom = QMatrix::hstack(&[b.adjoint(), c.clone()])?;
    QMatrix::vstack(&[top, bottom])
}

/// Contraction `G` with `B = A^{1/2} G C^{1/2}`, given `[[A, B], [B^*, C]] ⪰ 0`.
///
/// `G = pinv(A^{1/2}) · B · pinv(C^{1/2})`, which is zero off the numerical
/// ranges of `A` and `C`.
pub fn extract_contraction(a: &QMatrix, b: &QMatrix, c: &QMatrix) -> Result<QMatrix> {
    let ea = HermitianEigen::new(a)?;
    let ec = HermitianEigen::new(c)?;
    ea.ensure_psd()?;
    ec.ensure_psd()?;
    if b.shape() != (a.rows(), c.rows()) {
        return Err(Error::Shape(format!(
            "off-diagonal block is {}x{}, expected {}x{}",
            b.rows(),
            b.cols(),
            a.rows(),
            c.rows()
        )));
    }
    if b.rows() == 0 || b.cols() == 0 {
        return Ok(QMatrix::zeros(b.rows(), b.cols()));
    }
    let block = block2(a, b, c)?;
    let min_eig = min_eigenvalue(&block)?;
    if min_eig < -BLOCK_PSD_TOL * block.scale_factor() {
        return Err(Error::BlockNotPsd { min_eig });
    }
    Ok(&(&ea.pinv_sqrt()? * b) * &ec.pinv_sqrt()?)
}

/// Fills the (1,3) block of a partially positive 3×3 block matrix
///
/// ```text
/// [ A   B   X ]
/// [ B^* C   D ]
/// [ X^* D^* E ]
/// ```
///
/// with `X = A^{1/2} G₁ G₂ E^{1/2}`, where `G₁, G₂` are the contractions of
/// the two specified principal blocks. The completed matrix is PSD.
pub fn psd_complete_3x3(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix, e: &QMatrix) -> Result<QMatrix> {
    let g1 = extract_contraction(a, b, c)?;
    let g2 = extract_contraction(c, d, e)?;
    let a_half = psd_sqrt(a)?;
    let e_half = psd_sqrt(e)?;
    if c.rows() == 0 {
        // nothing links the corners; the zero map is the minimal contraction
        return Ok(QMatrix::zeros(a.rows(), e.rows()));
    }
    Ok(&(&(&a_half * &g1) * &g2) * &e_half)
}

/// Assembles the full 3×3 block matrix around a completion `x`.
pub fn assemble_3x3(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix, e: &QMatrix, x: &QMatrix) -> Result<QMatrix> {
    let r1 = QMatrix::hstack(&[a.clone(), b.clone(), x.clone()])?;
    let r2 = QMatrix::hstack(&[b.adjoint(), c.clone(), d.clone()])?;
    let r3 = QMatrix::hstack(&[x.adjoint(), d.adjoint(), e.clone()])?;
    QMatrix::vstack(&[r1, r2, r3])
}
