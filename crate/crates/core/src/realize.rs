//! Finite-dimensional quaternionic Pontryagin realizations.
//!
//! The Pontryagin space is modeled as `H^d` with the indefinite inner product
//! `[a, b] = b^* J a`, `J = diag(±1)`. An operator `C: H^s → H^d` then has
//! Pontryagin adjoint `C^* J`, and a realization `(J, U, C)` with `U`
//! J-unitary produces the Hermitian sequence
//!
//! ```text
//! r(n) = C^* J Uⁿ C,      U^{-1} = J U^* J.
//! ```
//!
//! Its Toeplitz matrices are Gram matrices `W^* J W` of the orbit
//! `W = [C, UC, …, U^N C]`, so they never have more than `κ` negative
//! eigenvalues, where `κ` is the number of `-1` entries of `J`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{self, HermitianSequence};
use crate::qlinalg::HermitianEigen;
use crate::qmatrix::QMatrix;
use crate::random;

/// J-unitarity tolerance for validated realizations.
pub const J_UNITARY_TOL: f64 = 1e-10;
/// Relative eigenvalue cut deciding the rank of an orbit span.
pub const SPAN_RANK_TOL: f64 = 1e-8;

/// Diagonal signature matrix `J = diag(±1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignatureGram {
    signs: Vec<i32>,
}

impl TryFrom<Vec<i32>> for SignatureGram {
    type Error = Error;
    fn try_from(signs: Vec<i32>) -> Result<Self> {
        SignatureGram::new(signs)
    }
}

impl From<SignatureGram> for Vec<i32> {
    fn from(j: SignatureGram) -> Self {
        j.signs
    }
}

impl SignatureGram {
    pub fn new(signs: Vec<i32>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::Invalid("signature must be non-empty".into()));
        }
        if let Some(bad) = signs.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::Invalid(format!("signature entry {bad} is not ±1")));
        }
        Ok(SignatureGram { signs })
    }

    /// `diag(1, …, 1, -1, …, -1)` with `kappa` negative entries.
    pub fn with_index(dim: usize, kappa: usize) -> Result<Self> {
        if kappa > dim {
            return Err(Error::Invalid(format!("index {kappa} exceeds dimension {dim}")));
        }
        Self::new((0..dim).map(|i| if i < dim - kappa { 1 } else { -1 }).collect())
    }

    pub fn identity(dim: usize) -> Self {
        SignatureGram { signs: vec![1; dim] }
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    /// Number of `-1` entries: the index of the space.
    pub fn kappa(&self) -> usize {
        self.signs.iter().filter(|&&v| v < 0).count()
    }

    pub fn signs(&self) -> &[i32] {
        &self.signs
    }

    pub fn matrix(&self) -> QMatrix {
        QMatrix::diag_real(&self.signs.iter().map(|&v| v as f64).collect::<Vec<_>>())
    }

    /// `J · m` (row scaling).
    pub fn apply_left(&self, m: &QMatrix) -> QMatrix {
        QMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)].scale(self.signs[r] as f64))
    }

    /// `m · J` (column scaling).
    pub fn apply_right(&self, m: &QMatrix) -> QMatrix {
        QMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)].scale(self.signs[c] as f64))
    }
}

/// `‖U^* J U - J‖_max`.
pub fn j_unitary_defect(j: &SignatureGram, u: &QMatrix) -> f64 {
    if u.shape() != (j.dim(), j.dim()) {
        return f64::INFINITY;
    }
    (&u.adjoint() * &j.apply_left(u)).max_diff(&j.matrix())
}

fn j_unitary_scale(u: &QMatrix) -> f64 {
    let s = u.scale_factor();
    s * s
}

/// A realization `(J, U, C)` with `U` J-unitary on `H^d` and `C: H^s → H^d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PontryaginRealization {
    #[serde(rename = "J")]
    j: SignatureGram,
    #[serde(rename = "U")]
    u: QMatrix,
    #[serde(rename = "C")]
    c: QMatrix,
}

impl PontryaginRealization {
    pub fn new(j: SignatureGram, u: QMatrix, c: QMatrix) -> Result<Self> {
        let d = j.dim();
        if u.shape() != (d, d) {
            return Err(Error::Shape(format!("U is {}x{}, expected {d}x{d}", u.rows(), u.cols())));
        }
        if c.rows() != d || c.cols() == 0 {
            return Err(Error::Shape(format!("C is {}x{}, expected {d}xs", c.rows(), c.cols())));
        }
        let defect = j_unitary_defect(&j, &u);
        if defect > J_UNITARY_TOL * j_unitary_scale(&u) {
            return Err(Error::NotJUnitary { defect });
        }
        Ok(PontryaginRealization { j, u, c })
    }

    pub fn gram(&self) -> &SignatureGram {
        &self.j
    }

    pub fn u(&self) -> &QMatrix {
        &self.u
    }

    pub fn c(&self) -> &QMatrix {
        &self.c
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn block_size(&self) -> usize {
        self.c.cols()
    }

    /// `U^{-1} = J U^* J`.
    pub fn u_inverse(&self) -> QMatrix {
        self.j.apply_left(&self.j.apply_right(&self.u.adjoint()))
    }

    /// Orbit `[C, UC, …, U^{n_max} C]` as a `d × (n_max+1)s` matrix.
    pub fn orbit(&self, n_max: u32) -> QMatrix {
        let mut blocks = Vec::with_capacity(n_max as usize + 1);
        let mut v = self.c.clone();
        for n in 0..=n_max {
            if n > 0 {
                v = &self.u * &v;
            }
            blocks.push(v.clone());
        }
        QMatrix::hstack(&blocks).expect("orbit blocks share a row count")
    }
}

/// `r(n) = C^* J Uⁿ C`, using `U^{-1} = J U^* J` for negative `n`.
pub fn moment(r: &PontryaginRealization, n: i64) -> QMatrix {
    let base = if n >= 0 { r.u.clone() } else { r.u_inverse() };
    let un = base.pow(n.unsigned_abs() as u32).expect("U is square");
    &r.c.adjoint() * &r.j.apply_left(&(&un * &r.c))
}

/// `r(0), …, r(n_max)` as a Hermitian sequence.
pub fn moment_sequence(r: &PontryaginRealization, n_max: usize) -> Result<HermitianSequence> {
    let orbit: Vec<QMatrix> = {
        let mut v = r.c.clone();
        (0..=n_max)
            .map(|n| {
                if n > 0 {
                    v = &r.u * &v;
                }
                v.clone()
            })
            .collect()
    };
    let cj = r.j.apply_right(&r.c.adjoint());
    let mut values: Vec<QMatrix> = orbit.iter().map(|v| &cj * v).collect();
    values[0] = (&values[0] + &values[0].adjoint()).scale(0.5);
    HermitianSequence::new(values)
}

/// Negative-square count of a realized sequence against the index of `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaBound {
    pub kappa_seq: usize,
    pub kappa_gram: usize,
    pub profile: Vec<usize>,
    pub ok: bool,
}

/// Runs the negative-squares count on `r(0..=N_max)` and checks it is at
/// most `J.kappa`.
pub fn verify_negative_squares_bound(r: &PontryaginRealization, n_max: usize) -> Result<KappaBound> {
    let seq = moment_sequence(r, n_max)?;
    let ns = moments::negative_squares(&seq, n_max)?;
    let kappa_gram = r.j.kappa();
    Ok(KappaBound { kappa_seq: ns.kappa, kappa_gram, profile: ns.profile, ok: ns.kappa <= kappa_gram })
}

/// Unitary dilation `U = [[V^*, I - V^*V], [0, V]]` of a square coisometry.
///
/// `Vⁿ` is the lower-right compression of `Uⁿ` for every `n ≥ 0`.
pub fn dilate_coisometry(v: &QMatrix) -> Result<QMatrix> {
    if !v.is_square() {
        return Err(Error::Shape(format!("dilation needs a square operator, got {}x{}", v.rows(), v.cols())));
    }
    let d = v.rows();
    let vs = v.adjoint();
    let defect = (v * &vs).max_diff(&QMatrix::identity(d));
    if defect > 1e-10 * v.scale_factor() {
        return Err(Error::NotCoisometry { defect });
    }
    let defect_op = &QMatrix::identity(d) - &(&vs * v);
    let mut u = QMatrix::zeros(2 * d, 2 * d);
    u.set_block(0, 0, &vs);
    u.set_block(0, d, &defect_op);
    u.set_block(d, d, v);
    Ok(u)
}

/// `[0 I] Uⁿ [0; I]`: the lower-right `d×d` block of `Uⁿ`.
pub fn compress(u: &QMatrix, n: u32) -> Result<QMatrix> {
    let d = u.rows() / 2;
    Ok(u.pow(n)?.block(d, d, d, d))
}

/// Cayley transform `(I - S)^{-1}(I + S)`.
pub fn cayley(s: &QMatrix) -> Result<QMatrix> {
    let id = QMatrix::identity(s.rows());
    let inv = (&id - s).inverse()?;
    Ok(&inv * &(&id + s))
}

/// Maximum attempts before [`random_j_unitary`] gives up.
pub const CAYLEY_ATTEMPTS: usize = 100;

/// Random J-unitary matrix from the Cayley transform of a J-skew
/// `S = J A` (`A` skew-Hermitian, so `S^* J + J S = 0`).
///
/// `skew_scale` controls how far the result strays from the identity.
pub fn random_j_unitary_with<R: rand::Rng>(j: &SignatureGram, rng: &mut R, skew_scale: f64) -> Result<QMatrix> {
    for _ in 0..CAYLEY_ATTEMPTS {
        let a = random::skew_hermitian(rng, j.dim(), skew_scale);
        let s = j.apply_left(&a);
        let Ok(u) = cayley(&s) else { continue };
        if !u.as_slice().iter().all(|q| q.is_finite()) || u.max_abs() > 1e6 {
            continue;
        }
        if j_unitary_defect(j, &u) <= 1e-9 * j_unitary_scale(&u) {
            return Ok(u);
        }
    }
    Err(Error::DegenerateSeed { attempts: CAYLEY_ATTEMPTS })
}

/// [`random_j_unitary_with`] seeded from `seed`, with unit skew scale.
pub fn random_j_unitary(j: &SignatureGram, seed: u64) -> Result<QMatrix> {
    random_j_unitary_with(j, &mut random::rng(seed), 1.0)
}

/// Numerical rank of the span of the columns of `w`, in quaternionic units.
fn span_rank(w: &QMatrix) -> Result<usize> {
    let gram = w * &w.adjoint();
    let gram = (&gram + &gram.adjoint()).scale(0.5);
    let eig = HermitianEigen::new(&gram)?;
    let vals = eig.values();
    let top = vals.last().copied().unwrap_or(0.0);
    Ok(vals.iter().filter(|&&l| l > SPAN_RANK_TOL * top).count())
}

/// Finds `S` with `S U₁ⁿ C₁ = U₂ⁿ C₂` for `n = 0..=n_max`.
///
/// Both orbits must span their whole space; otherwise the intertwiner is not
/// determined and [`Error::SpanDeficient`] is returned. The least-squares
/// solution `S = Y X^* (X X^*)^+` is then checked for residual, J-isometry
/// `S^* J₂ S = J₁` and the intertwining `S U₁ = U₂ S`.
pub fn align_realizations(r1: &PontryaginRealization, r2: &PontryaginRealization, n_max: u32) -> Result<QMatrix> {
    if r1.block_size() != r2.block_size() {
        return Err(Error::Shape(format!(
            "block sizes differ: {} vs {}",
            r1.block_size(),
            r2.block_size()
        )));
    }
    let x = r1.orbit(n_max);
    let y = r2.orbit(n_max);
    for (w, d) in [(&x, r1.dim()), (&y, r2.dim())] {
        let rank = span_rank(w)?;
        if rank < d {
            return Err(Error::SpanDeficient { rank, dim: d });
        }
    }
    if r1.dim() != r2.dim() {
        return Err(Error::NoUnitaryAlignment(format!("dimensions differ: {} vs {}", r1.dim(), r2.dim())));
    }
    let xx = &x * &x.adjoint();
    let xx = (&xx + &xx.adjoint()).scale(0.5);
    let s = &(&y * &x.adjoint()) * &HermitianEigen::new(&xx)?.pinv()?;

    let scale = x.scale_factor().max(y.scale_factor());
    let residual = (&s * &x).max_diff(&y);
    if residual > 1e-7 * scale {
        return Err(Error::NoUnitaryAlignment(format!("residual {residual:.3e}")));
    }
    let iso = (&s.adjoint() * &r2.j.apply_left(&s)).max_diff(&r1.j.matrix());
    if iso > 1e-6 * s.scale_factor().powi(2) {
        return Err(Error::NoUnitaryAlignment(format!("J-isometry defect {iso:.3e}")));
    }
    let inter = (&s * &r1.u).max_diff(&(&r2.u * &s));
    if inter > 1e-6 * s.scale_factor() * r1.u.scale_factor().max(r2.u.scale_factor()) {
        return Err(Error::NoUnitaryAlignment(format!("intertwining defect {inter:.3e}")));
    }
    Ok(s)
}

/// Conjugates a realization by a J-unitary `w`: `(J, W U W^{-1}, W C)`.
pub fn conjugate(r: &PontryaginRealization, w: &QMatrix) -> Result<PontryaginRealization> {
    let w_inv = r.j.apply_left(&r.j.apply_right(&w.adjoint()));
    PontryaginRealization::new(r.j.clone(), &(w * &r.u) * &w_inv, w * &r.c)
}
