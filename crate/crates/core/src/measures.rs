//! Discrete q-positive measures on `[0, 2π)` and moment synthesis.
//!
//! A quaternionic matrix measure is written `ν = ν₁ + ν₂ j` with complex
//! `s×s` weights. At every support point `t` with reflected partner
//! `t' = (2π - t) mod 2π` the paired block
//!
//! ```text
//! μ(t) = [ ν₁(t)     ν₂(t)       ]
//!        [ ν₂(t)^*   conj ν₁(t') ]
//! ```
//!
//! must be positive semidefinite and `ν₂(t) = -ν₂(t')ᵀ`. Atoms whose partner
//! is not listed get an implicit zero-weight partner. Under these two
//! conditions `χ(r(n)) = Σ_t e^{int} μ(t)`, which is how synthesis is
//! computed, and the resulting sequence is positive definite.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::moments::HermitianSequence;
use crate::qlinalg::{self, eigh_complex};
use crate::qmatrix::{chi_inverse, QMatrix};

/// Minimal separation between distinct atoms.
pub const SPACING_TOL: f64 = 1e-9;
/// Tolerance for the pairing and antisymmetry conditions, relative to scale.
pub const Q_POSITIVE_TOL: f64 = 1e-10;

/// One atom `(t, ν₁, ν₂)` of a discrete measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureAtom {
    pub t: f64,
    pub nu1: ComplexMatrix,
    pub nu2: ComplexMatrix,
}

impl MeasureAtom {
    pub fn new(t: f64, nu1: ComplexMatrix, nu2: ComplexMatrix) -> Self {
        MeasureAtom { t, nu1, nu2 }
    }

    /// Scalar atom with real `ν₁ = w` and `ν₂ = 0`.
    pub fn scalar(t: f64, w: f64) -> Self {
        MeasureAtom::new(t, ComplexMatrix::from_real_diag(&[w]), ComplexMatrix::zeros(1, 1))
    }

    /// The quaternionic weight `ν₁ + ν₂ j`.
    pub fn weight(&self) -> QMatrix {
        QMatrix::from_complex_parts(&self.nu1, &self.nu2).expect("atom parts share a shape")
    }

    fn is_zero(&self) -> bool {
        self.nu1.max_abs() == 0.0 && self.nu2.max_abs() == 0.0
    }
}

/// Reflected partner `(2π - t) mod 2π`.
pub fn partner_point(t: f64) -> f64 {
    let p = (TAU - t).rem_euclid(TAU);
    if p >= TAU { 0.0 } else { p }
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// A finitely supported quaternionic matrix measure on `[0, 2π)`.
///
/// Construction checks shapes, the range of `t` and atom spacing;
/// q-positivity is reported separately by [`validate_q_positive`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteQPositiveMeasure {
    s: usize,
    atoms: Vec<MeasureAtom>,
}

impl DiscreteQPositiveMeasure {
    pub fn new(s: usize, atoms: Vec<MeasureAtom>) -> Result<Self> {
        if s == 0 {
            return Err(Error::Invalid("block size must be positive".into()));
        }
        for a in &atoms {
            if !(0.0..TAU).contains(&a.t) {
                return Err(Error::Invalid(format!("atom point {} outside [0, 2π)", a.t)));
            }
            for (name, m) in [("nu1", &a.nu1), ("nu2", &a.nu2)] {
                if (m.rows(), m.cols()) != (s, s) {
                    return Err(Error::Shape(format!(
                        "{name} at t={} is {}x{}, expected {s}x{s}",
                        a.t,
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i + 1..] {
                if circular_distance(a.t, b.t) <= SPACING_TOL {
                    return Err(Error::Invalid(format!("atoms at {} and {} coincide", a.t, b.t)));
                }
            }
        }
        Ok(DiscreteQPositiveMeasure { s, atoms })
    }

    pub fn empty(s: usize) -> Self {
        DiscreteQPositiveMeasure { s, atoms: Vec::new() }
    }

    pub fn block_size(&self) -> usize {
        self.s
    }

    pub fn atoms(&self) -> &[MeasureAtom] {
        &self.atoms
    }

    fn find(&self, t: f64) -> Option<&MeasureAtom> {
        self.atoms.iter().find(|a| circular_distance(a.t, t) <= SPACING_TOL)
    }

    /// Listed atoms plus a zero atom at every missing partner point.
    pub fn support_points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.atoms.iter().map(|a| a.t).collect();
        for a in &self.atoms {
            let p = partner_point(a.t);
            if !pts.iter().any(|&x| circular_distance(x, p) <= SPACING_TOL) {
                pts.push(p);
            }
        }
        pts
    }

    /// `(ν₁(t), ν₂(t))`, zero when `t` carries no atom.
    pub fn weights_at(&self, t: f64) -> (ComplexMatrix, ComplexMatrix) {
        match self.find(t) {
            Some(a) => (a.nu1.clone(), a.nu2.clone()),
            None => (ComplexMatrix::zeros(self.s, self.s), ComplexMatrix::zeros(self.s, self.s)),
        }
    }

    /// The paired `2s×2s` block `μ(t)`.
    pub fn mu_block(&self, t: f64) -> ComplexMatrix {
        let s = self.s;
        let (nu1, nu2) = self.weights_at(t);
        let (nu1_partner, _) = self.weights_at(partner_point(t));
        let mut mu = ComplexMatrix::zeros(2 * s, 2 * s);
        mu.set_block(0, 0, &nu1);
        mu.set_block(0, s, &nu2);
        mu.set_block(s, 0, &nu2.adjoint());
        mu.set_block(s, s, &nu1_partner.conj());
        mu
    }

    fn scale_factor(&self) -> f64 {
        self.atoms.iter().map(|a| a.nu1.max_abs().max(a.nu2.max_abs())).fold(1.0, f64::max)
    }
}

/// Which defining condition an atom fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    /// `μ(t)` is not Hermitian (so `ν₁(t)` is not).
    PairingNotHermitian { defect: f64 },
    /// `μ(t)` has a negative eigenvalue.
    PairingNotPsd { min_eig: f64 },
    /// `ν₂(t) + ν₂(t')ᵀ ≠ 0`.
    Nu2NotAntisymmetric { defect: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub t: f64,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

/// Checks the pairing positivity and `ν₂` reflection antisymmetry at every
/// support point. An empty list means the measure is q-positive.
pub fn validate_q_positive(nu: &DiscreteQPositiveMeasure) -> Vec<Violation> {
    let tol = Q_POSITIVE_TOL * nu.scale_factor();
    let mut out = Vec::new();
    for t in nu.support_points() {
        let mu = nu.mu_block(t);
        let defect = mu.hermitian_defect();
        if defect > tol {
            out.push(Violation { t, kind: ViolationKind::PairingNotHermitian { defect } });
        } else {
            let sym = ComplexMatrix::from_fn(mu.rows(), mu.cols(), |r, c| (mu[(r, c)] + mu[(c, r)].conj()) * 0.5);
            match eigh_complex(&sym) {
                Ok(e) if e.values[0] < -tol => {
                    out.push(Violation { t, kind: ViolationKind::PairingNotPsd { min_eig: e.values[0] } })
                }
                Ok(_) => {}
                Err(_) => out.push(Violation { t, kind: ViolationKind::PairingNotPsd { min_eig: f64::NAN } }),
            }
        }
        let (_, nu2) = nu.weights_at(t);
        let (_, nu2_partner) = nu.weights_at(partner_point(t));
        let defect = (&nu2 + &nu2_partner.transpose()).max_abs();
        if defect > tol {
            out.push(Violation { t, kind: ViolationKind::Nu2NotAntisymmetric { defect } });
        }
    }
    out
}

fn ensure_q_positive(nu: &DiscreteQPositiveMeasure) -> Result<()> {
    let v = validate_q_positive(nu);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::NotQPositive(v))
    }
}

fn synthesize_unchecked(nu: &DiscreteQPositiveMeasure, n: i64) -> Result<QMatrix> {
    let s = nu.s;
    let mut acc = ComplexMatrix::zeros(2 * s, 2 * s);
    for t in nu.support_points() {
        let phase = Complex64::from_polar(1.0, n as f64 * t);
        acc = &acc + &nu.mu_block(t).scale(phase);
    }
    chi_inverse(&acc)
}

/// `r(n) = Σ_atoms e^{int}(ν₁ + ν₂ j)` for a q-positive measure.
pub fn herglotz_synthesize(nu: &DiscreteQPositiveMeasure, n: i64) -> Result<QMatrix> {
    ensure_q_positive(nu)?;
    synthesize_unchecked(nu, n)
}

/// `r(0), …, r(n_max)` as a Hermitian sequence (validates once).
pub fn synthesize_sequence(nu: &DiscreteQPositiveMeasure, n_max: usize) -> Result<HermitianSequence> {
    ensure_q_positive(nu)?;
    let mut values = (0..=n_max as i64).map(|n| synthesize_unchecked(nu, n)).collect::<Result<Vec<_>>>()?;
    // r(0) is Hermitian in exact arithmetic; drop the round-off
    values[0] = (&values[0] + &values[0].adjoint()).scale(0.5);
    HermitianSequence::new(values)
}

/// A positive and a negative q-positive measure with disjoint atoms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixedMeasurePair {
    plus: DiscreteQPositiveMeasure,
    minus: DiscreteQPositiveMeasure,
}

impl MixedMeasurePair {
    pub fn new(plus: DiscreteQPositiveMeasure, minus: DiscreteQPositiveMeasure) -> Result<Self> {
        if plus.s != minus.s {
            return Err(Error::Shape(format!("block sizes differ: {} vs {}", plus.s, minus.s)));
        }
        for a in minus.atoms.iter().filter(|a| !a.is_zero()) {
            if plus.find(a.t).is_some_and(|b| !b.is_zero()) {
                return Err(Error::SupportOverlap { t: a.t });
            }
        }
        Ok(MixedMeasurePair { plus, minus })
    }

    pub fn plus(&self) -> &DiscreteQPositiveMeasure {
        &self.plus
    }

    pub fn minus(&self) -> &DiscreteQPositiveMeasure {
        &self.minus
    }
}

/// `a(n) = ∫ e^{int} dν₊ - ∫ e^{int} dν₋`.
pub fn synthesize_indefinite(pair: &MixedMeasurePair, n: i64) -> Result<QMatrix> {
    Ok(&herglotz_synthesize(&pair.plus, n)? - &herglotz_synthesize(&pair.minus, n)?)
}

/// `a(0), …, a(n_max)` for a mixed pair.
pub fn synthesize_indefinite_sequence(pair: &MixedMeasurePair, n_max: usize) -> Result<HermitianSequence> {
    let plus = synthesize_sequence(&pair.plus, n_max)?;
    let minus = synthesize_sequence(&pair.minus, n_max)?;
    HermitianSequence::new(plus.values().iter().zip(minus.values()).map(|(a, b)| a - b).collect())
}

/// Support cardinality: half the summed ranks of the paired blocks `μ(t)`.
pub fn card_supp(nu: &DiscreteQPositiveMeasure) -> usize {
    let thr = qlinalg::RANK_TOL * nu.scale_factor();
    let total: usize = nu
        .support_points()
        .into_iter()
        .map(|t| {
            let mu = nu.mu_block(t);
            let sym = ComplexMatrix::from_fn(mu.rows(), mu.cols(), |r, c| (mu[(r, c)] + mu[(c, r)].conj()) * 0.5);
            eigh_complex(&sym).map_or(0, |e| e.values.iter().filter(|l| l.abs() > thr).count())
        })
        .sum();
    total / 2
}

/// `Σ_atoms ‖ν₁ + ν₂ j‖`, an upper bound for every `‖r(n)‖`.
pub fn total_mass_bound(nu: &DiscreteQPositiveMeasure) -> Result<f64> {
    ensure_q_positive(nu)?;
    nu.atoms.iter().map(|a| a.weight().operator_norm()).sum()
}
