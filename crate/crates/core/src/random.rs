//! Seeded generators for quaternionic test data.
//!
//! Every generator takes an explicit RNG so runs are reproducible from a seed.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cmatrix::ComplexMatrix;
use crate::measures::{DiscreteQPositiveMeasure, MeasureAtom, MixedMeasurePair};
use crate::qmatrix::QMatrix;
use crate::quat::{frame_complete, ImaginaryUnit, Quaternion};
use crate::slicefn::{SliceAtom, SliceMeasure};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

/// Uniformly distributed point of the sphere of imaginary units.
pub fn imaginary_unit<R: Rng>(rng: &mut R) -> ImaginaryUnit {
    loop {
        let q = quaternion(rng).im();
        if let Ok(u) = ImaginaryUnit::new(q) {
            return u;
        }
    }
}

pub fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn qmatrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| quaternion(rng))
}

pub fn cmatrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

/// `(M + M^*) / 2` for a Gaussian `M`.
pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    let m = qmatrix(rng, n, n);
    (&m + &m.adjoint()).scale(0.5)
}

/// Skew-Hermitian `(M - M^*) / 2` scaled by `scale`.
pub fn skew_hermitian<R: Rng>(rng: &mut R, n: usize, scale: f64) -> QMatrix {
    let m = qmatrix(rng, n, n);
    (&m - &m.adjoint()).scale(0.5 * scale)
}

/// `M^* M / k` for a Gaussian `k×n` matrix `M`, so the rank is `min(k, n)`.
pub fn psd<R: Rng>(rng: &mut R, n: usize, k: usize) -> QMatrix {
    let m = qmatrix(rng, k.max(1), n);
    (&m.adjoint() * &m).scale(1.0 / k.max(1) as f64)
}

/// Complex PSD matrix of the given rank, `V V^* / rank`.
pub fn complex_psd<R: Rng>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    let v = cmatrix(rng, n, rank);
    (&v * &v.adjoint()).scale_real(1.0 / rank.max(1) as f64)
}

/// `Φ(M) = [[conj D, -Bᵀ], [-conj B, conj A]]` for `M = [[A, B], [B^*, D]]`.
///
/// Φ maps PSD to PSD; its fixed points are exactly the admissible paired
/// blocks at a self-partnered point (`t = 0` or `t = π`).
fn reflect_block(m: &ComplexMatrix) -> ComplexMatrix {
    let s = m.rows() / 2;
    let a = m.block(0, 0, s, s);
    let b = m.block(0, s, s, s);
    let d = m.block(s, s, s, s);
    let mut out = ComplexMatrix::zeros(2 * s, 2 * s);
    out.set_block(0, 0, &d.conj());
    out.set_block(0, s, &(-&b.transpose()));
    out.set_block(s, 0, &(-&b.conj()));
    out.set_block(s, s, &a.conj());
    out
}

/// Atoms realizing a PSD paired block `m` at `t` (and at its partner).
///
/// For `t ∈ (0, π)` any PSD `m` works: `ν₁(t) = A`, `ν₂(t) = B`,
/// `ν₁(t') = conj D`, `ν₂(t') = -Bᵀ`. At `t ∈ {0, π}` the block is first
/// symmetrized under Φ.
pub fn atoms_from_block(t: f64, m: &ComplexMatrix) -> Vec<MeasureAtom> {
    let s = m.rows() / 2;
    let self_paired = t == 0.0 || t == PI;
    if self_paired {
        let sym = (m + &reflect_block(m)).scale_real(0.5);
        return vec![MeasureAtom::new(t, sym.block(0, 0, s, s), sym.block(0, s, s, s))];
    }
    let b = m.block(0, s, s, s);
    vec![
        MeasureAtom::new(t, m.block(0, 0, s, s), b.clone()),
        MeasureAtom::new(TAU - t, m.block(s, s, s, s).conj(), -&b.transpose()),
    ]
}

fn spread_points<R: Rng>(rng: &mut R, count: usize, taken: &[f64], min_gap: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = Vec::with_capacity(count);
    let mut guard = 0;
    while pts.len() < count {
        guard += 1;
        let t = rng.random_range(0.15..(PI - 0.15));
        let gap_ok = taken.iter().chain(&pts).all(|&u| (u - t).abs() >= min_gap && (TAU - u - t).abs() >= min_gap);
        if gap_ok || guard > 10_000 {
            pts.push(t);
        }
    }
    pts
}

/// Random q-positive measure with `pairs` support pairs; with probability
/// one half one of them sits at the self-partnered point `π` instead.
pub fn q_positive_measure<R: Rng>(rng: &mut R, s: usize, pairs: usize) -> DiscreteQPositiveMeasure {
    let mut atoms = Vec::new();
    let mut generic = pairs;
    if pairs > 0 && rng.random_bool(0.5) {
        let m = complex_psd(rng, 2 * s, 2 * s);
        atoms.extend(atoms_from_block(PI, &m));
        generic -= 1;
    }
    for t in spread_points(rng, generic, &[], 0.2) {
        let rank = rng.random_range(1..=2 * s);
        let m = complex_psd(rng, 2 * s, rank);
        atoms.extend(atoms_from_block(t, &m));
    }
    DiscreteQPositiveMeasure::new(s, atoms).expect("generated atoms are well formed")
}

/// Mixed pair whose negative part has support cardinality exactly `kappa`.
///
/// Each unit of `kappa` is one generic pair `(t, 2π - t)` carrying a
/// rank-one paired block (total μ rank 2). The positive part uses
/// `plus_pairs` generic pairs placed away from the negative atoms.
pub fn kappa_pair<R: Rng>(rng: &mut R, s: usize, kappa: usize, plus_pairs: usize) -> MixedMeasurePair {
    let minus_pts = spread_points(rng, kappa, &[], 0.5);
    let mut minus_atoms = Vec::new();
    for &t in &minus_pts {
        let m = complex_psd(rng, 2 * s, 1);
        minus_atoms.extend(atoms_from_block(t, &m));
    }
    let plus_pts = spread_points(rng, plus_pairs, &minus_pts, 0.4);
    let mut plus_atoms = Vec::new();
    for &t in &plus_pts {
        let rank = rng.random_range(1..=2 * s);
        let m = complex_psd(rng, 2 * s, rank);
        plus_atoms.extend(atoms_from_block(t, &m));
    }
    let plus = DiscreteQPositiveMeasure::new(s, plus_atoms).expect("generated atoms are well formed");
    let minus = DiscreteQPositiveMeasure::new(s, minus_atoms).expect("generated atoms are well formed");
    MixedMeasurePair::new(plus, minus).expect("generated supports are disjoint")
}

/// Slice measure with `atoms` atoms, `μ₁ ∈ [0, 1)`, `μ₂ ∈ [-1, 1)` and a
/// random frame.
pub fn slice_measure<R: Rng>(rng: &mut R, atoms: usize) -> SliceMeasure {
    let i = imaginary_unit(rng);
    let iq = i.as_quaternion();
    let v = quaternion(rng).im();
    let j = ImaginaryUnit::new(v - iq.scale(v.dot(iq))).unwrap_or_else(|_| frame_complete(i).0);
    let atoms = (0..atoms)
        .map(|_| SliceAtom { t: rng.random_range(0.0..TAU), mu1: rng.random(), mu2: rng.random_range(-1.0..1.0) })
        .collect();
    let (f0, g0) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
    SliceMeasure::new(i, j, f0, g0, atoms).expect("generated frame is orthonormal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{card_supp, validate_q_positive};

    #[test]
    fn generated_measures_are_q_positive() {
        let mut r = rng(7);
        for s in 1..=2 {
            for pairs in 0..=4 {
                let nu = q_positive_measure(&mut r, s, pairs);
                assert!(validate_q_positive(&nu).is_empty(), "s={s} pairs={pairs}");
            }
        }
    }

    #[test]
    fn kappa_pairs_have_requested_card() {
        let mut r = rng(11);
        for s in 1..=2 {
            for kappa in 1..=2 {
                let p = kappa_pair(&mut r, s, kappa, 2);
                assert_eq!(card_supp(p.minus()), kappa);
                assert!(validate_q_positive(p.plus()).is_empty());
                assert!(validate_q_positive(p.minus()).is_empty());
            }
        }
    }

    #[test]
    fn seeds_reproduce() {
        assert_eq!(qmatrix(&mut rng(3), 2, 2), qmatrix(&mut rng(3), 2, 2));
    }
}
