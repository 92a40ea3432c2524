//! Hermitian quaternionic sequences and their block Toeplitz matrices.

use crate::error::{Error, Result};
use crate::qlinalg::{self, HermitianEigen};
use crate::qmatrix::QMatrix;

/// Positive-definiteness tolerance on the smallest Toeplitz eigenvalue.
pub const PD_TOL: f64 = 1e-9;
/// Tolerance for each intermediate Toeplitz matrix of an extension.
pub const EXTENSION_TOL: f64 = 1e-7;

/// A finitely supported map `n ↦ r(n) ∈ H^{s×s}` with `r(-n) = r(n)^*`.
///
/// Only `r(0), …, r(N)` are stored; negative indices are derived and indices
/// beyond the support radius read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSequence {
    s: usize,
    values: Vec<QMatrix>,
}

impl HermitianSequence {
    /// Builds a sequence from `r(0), …, r(N)`. `r(0)` must be Hermitian.
    pub fn new(values: Vec<QMatrix>) -> Result<Self> {
        let first = values.first().ok_or_else(|| Error::Invalid("sequence needs r(0)".into()))?;
        let s = first.rows();
        if s == 0 {
            return Err(Error::Invalid("block size must be positive".into()));
        }
        for (n, v) in values.iter().enumerate() {
            if v.shape() != (s, s) {
                return Err(Error::Shape(format!("r({n}) is {}x{}, expected {s}x{s}", v.rows(), v.cols())));
            }
        }
        let defect = first.hermitian_defect();
        if defect > qlinalg::HERMITIAN_TOL * first.scale_factor() {
            return Err(Error::NotHermitian { defect });
        }
        Ok(HermitianSequence { s, values })
    }

    /// Sequence defined by a closure on `0..=support`.
    pub fn from_fn(support: usize, f: impl FnMut(usize) -> QMatrix) -> Result<Self> {
        Self::new((0..=support).map(f).collect())
    }

    /// The zero sequence of block size `s` with support `{0}`.
    pub fn zero(s: usize) -> Self {
        HermitianSequence { s, values: vec![QMatrix::zeros(s, s)] }
    }

    pub fn block_size(&self) -> usize {
        self.s
    }

    /// Support radius `N`.
    pub fn support(&self) -> usize {
        self.values.len() - 1
    }

    /// Stored blocks `r(0), …, r(N)`.
    pub fn values(&self) -> &[QMatrix] {
        &self.values
    }

    /// `r(n)` for any integer `n`.
    pub fn get(&self, n: i64) -> QMatrix {
        let k = n.unsigned_abs() as usize;
        match self.values.get(k) {
            None => QMatrix::zeros(self.s, self.s),
            Some(v) if n < 0 => v.adjoint(),
            Some(v) => v.clone(),
        }
    }

    /// Restriction to `{-n, …, n}`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        self.check_order(n)?;
        Ok(HermitianSequence { s: self.s, values: self.values[..=n].to_vec() })
    }

    /// Largest operator-norm bound `max_n ‖r(n)‖_F` over the stored blocks.
    pub fn max_block_norm(&self) -> f64 {
        self.values.iter().map(QMatrix::frobenius_norm).fold(0.0, f64::max)
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.support() {
            return Err(Error::SupportExceeded { requested: n, support: self.support() });
        }
        Ok(())
    }

    fn push(&mut self, v: QMatrix) {
        self.values.push(v);
    }
}

/// The `(N+1)s × (N+1)s` block Toeplitz matrix `T_N` with `(j, ℓ)` block `r(ℓ - j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockToeplitz {
    order: usize,
    s: usize,
    matrix: QMatrix,
}

impl BlockToeplitz {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn block_size(&self) -> usize {
        self.s
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> QMatrix {
        self.matrix
    }
}

/// Builds `T_N` from `r(0), …, r(N)`.
pub fn build_toeplitz(seq: &HermitianSequence, order: usize) -> Result<BlockToeplitz> {
    seq.check_order(order)?;
    let s = seq.s;
    let mut t = QMatrix::zeros((order + 1) * s, (order + 1) * s);
    for j in 0..=order {
        for l in 0..=order {
            let block = if l >= j { seq.values[l - j].clone() } else { seq.values[j - l].adjoint() };
            t.set_block(j * s, l * s, &block);
        }
    }
    Ok(BlockToeplitz { order, s, matrix: t })
}

/// Result of a positive-definiteness test on `T_N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdCheck {
    pub ok: bool,
    pub min_eig: f64,
}

/// Is `T_N ⪰ 0` (smallest eigenvalue at least `-PD_TOL · scale`)?
pub fn is_positive_definite(seq: &HermitianSequence, order: usize) -> Result<PdCheck> {
    let t = build_toeplitz(seq, order)?;
    let min_eig = qlinalg::min_eigenvalue(t.matrix())?;
    Ok(PdCheck { ok: min_eig >= -PD_TOL * t.matrix().scale_factor(), min_eig })
}

/// Negative-eigenvalue counts of `T_0, …, T_{N_max}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeSquares {
    /// Largest count seen; a lower bound for the number of negative squares.
    pub kappa: usize,
    pub profile: Vec<usize>,
    /// True when the last three profile entries agree.
    pub stabilized: bool,
}

pub fn negative_squares(seq: &HermitianSequence, n_max: usize) -> Result<NegativeSquares> {
    seq.check_order(n_max)?;
    let profile = (0..=n_max)
        .map(|n| {
            let t = build_toeplitz(seq, n)?;
            Ok(HermitianEigen::new(t.matrix())?.inertia().neg)
        })
        .collect::<Result<Vec<_>>>()?;
    let kappa = profile.iter().copied().max().unwrap_or(0);
    let stabilized = profile.len() >= 3 && profile[profile.len() - 3..].windows(2).all(|w| w[0] == w[1]);
    Ok(NegativeSquares { kappa, profile, stabilized })
}

/// Extends a positive definite sequence on `{-N, …, N}` by `steps` further
/// lags, keeping every Toeplitz matrix positive semidefinite.
///
/// Step `N → N+1` partitions `T_{N+1}` as
///
/// ```text
/// [ A    B    X ]
/// [ B^*  C    D ]
/// [ X^*  D^*  E ]
/// ```
///
/// with `A = E = r(0)`, `B = [r(1) … r(N)]`, `C = T_{N-1}` and `D` the block
/// column `r(N), …, r(1)`. Both specified principal parts equal `T_N`, so
/// [`qlinalg::psd_complete_3x3`] applies and `r(N+1) = X`. From `N = 0` there is nothing to link,
/// so `r(1) = 0`.
pub fn caratheodory_extend(seq: &HermitianSequence, steps: usize) -> Result<HermitianSequence> {
    let n0 = seq.support();
    let check = is_positive_definite(seq, n0)?;
    if !check.ok {
        return Err(Error::NotPd { order: n0, min_eig: check.min_eig });
    }
    let s = seq.s;
    let mut out = seq.clone();
    for step in 0..steps {
        let n = out.support();
        let r0 = out.values[0].clone();
        let x = if n == 0 {
            QMatrix::zeros(s, s)
        } else {
            let b = QMatrix::hstack(&out.values[1..=n])?;
            let d_blocks: Vec<QMatrix> = (1..=n).rev().map(|k| out.values[k].clone()).collect();
            let d = QMatrix::vstack(&d_blocks)?;
            let c = build_toeplitz(&out, n - 1)?.into_matrix();
            qlinalg::psd_complete_3x3(&r0, &b, &c, &d, &r0).map_err(|e| match e {
                Error::BlockNotPsd { min_eig } | Error::NotPsd { min_eig } => {
                    Error::CompletionFailure { step, min_eig }
                }
                other => other,
            })?
        };
        out.push(x);
        let t = build_toeplitz(&out, n + 1)?;
        let min_eig = qlinalg::min_eigenvalue(t.matrix())?;
        if min_eig < -EXTENSION_TOL * t.matrix().scale_factor() {
            return Err(Error::CompletionFailure { step, min_eig });
        }
    }
    Ok(out)
}
