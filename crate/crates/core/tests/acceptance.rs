//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every case is generated from a fixed seed.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;
use rand::Rng;

use qmoment_core::measures::{synthesize_indefinite_sequence, synthesize_sequence, total_mass_bound};
use qmoment_core::moments::{build_toeplitz, caratheodory_extend, negative_squares};
use qmoment_core::qlinalg::hermitian_eigen;
use qmoment_core::random::{self, TestRng};
use qmoment_core::realize::{
    align_realizations, compress, conjugate, dilate_coisometry, random_j_unitary, random_j_unitary_with,
    verify_negative_squares_bound,
};
use qmoment_core::slicefn::{
    coefficient_from_measure, herglotz_kernel_global, kernel_identity_residual, synthesize_slice, TailBound,
};
use qmoment_core::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn rel(err: f64, scale: f64) -> f64 {
    err / scale.max(1.0)
}

fn chi_homomorphism() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(1);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let a = random::qmatrix(&mut rng, 3, 3);
        let b = random::qmatrix(&mut rng, 3, 3);
        let ab = &a * &b;
        let mult = (&chi_embed(&ab) - &(&chi_embed(&a) * &chi_embed(&b))).max_abs();
        let star = (&chi_embed(&a.adjoint()) - &chi_embed(&a).adjoint()).max_abs();
        let trip = chi_inverse(&chi_embed(&a)).map(|x| x.max_diff(&a)).unwrap_or(f64::INFINITY);
        worst = worst
            .max(rel(mult, ab.scale_factor()))
            .max(rel(star, a.scale_factor()))
            .max(rel(trip, a.scale_factor()));
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        ok: worst <= 1e-10 && secs < 5.0,
        detail: format!("500 pairs, max rel err {worst:.3e}, {secs:.2}s"),
    }
}

fn embedded_negatives(m: &ComplexMatrix) -> usize {
    let n = m.rows();
    let a = DMatrix::from_fn(n, n, |i, j| Complex::new(m[(i, j)].re, m[(i, j)].im));
    let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
    a.symmetric_eigenvalues().iter().filter(|&&l| l < -1e-10 * scale).count()
}

fn inertia_halving() -> Outcome {
    let mut rng = random::rng(2);
    let mut failures = 0;
    for _ in 0..200 {
        let h = random::hermitian(&mut rng, 4);
        let q = hermitian_eigen(&h).map(|i| i.neg);
        if q.map_or(true, |neg| 2 * neg != embedded_negatives(&chi_embed(&h))) {
            failures += 1;
        }
    }
    Outcome { ok: failures == 0, detail: format!("200 matrices, {failures} failures") }
}

fn synthesis_positivity() -> Outcome {
    let mut rng = random::rng(3);
    let (mut worst_eig, mut worst_herm, mut errors) = (f64::INFINITY, 0.0f64, 0);
    for case in 0..50 {
        let s = 1 + case % 2;
        let pairs = rng.random_range(1..=4);
        let nu = random::q_positive_measure(&mut rng, s, pairs);
        let Ok(seq) = synthesize_sequence(&nu, 8) else {
            errors += 1;
            continue;
        };
        for n in 0..=8 {
            let t = build_toeplitz(&seq, n).expect("order within support");
            let m = t.matrix();
            let scale = m.scale_factor();
            worst_herm = worst_herm.max(m.hermitian_defect() / scale);
            match hermitian_eigen(m) {
                Ok(i) => worst_eig = worst_eig.min(i.min_eigenvalue() / scale),
                Err(_) => errors += 1,
            }
        }
    }
    Outcome {
        ok: errors == 0 && worst_eig >= -1e-8 && worst_herm <= 1e-12,
        detail: format!("50 measures, min eig/scale {worst_eig:.3e}, hermitian defect {worst_herm:.3e}"),
    }
}

fn caratheodory_extension() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(4);
    let (mut worst, mut changed, mut errors) = (f64::INFINITY, 0, 0);
    for case in 0..50 {
        let s = 1 + case % 2;
        let pairs = rng.random_range(1..=4);
        let support = rng.random_range(1..=3);
        let nu = random::q_positive_measure(&mut rng, s, pairs);
        let seed = synthesize_sequence(&nu, support).expect("valid measure");
        let Ok(ext) = caratheodory_extend(&seed, 4) else {
            errors += 1;
            continue;
        };
        if ext.values()[..=support] != *seed.values() {
            changed += 1;
        }
        for n in 0..=ext.support() {
            let t = build_toeplitz(&ext, n).expect("order within support");
            let scale = t.matrix().scale_factor();
            worst = worst.min(hermitian_eigen(t.matrix()).map_or(f64::NEG_INFINITY, |i| i.min_eigenvalue()) / scale);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        ok: errors == 0 && changed == 0 && worst >= -1e-7 && secs < 30.0,
        detail: format!("50 seeds x 4 steps, min eig/scale {worst:.3e}, {changed} altered, {errors} errors, {secs:.2}s"),
    }
}

fn krein_iohvidov() -> Outcome {
    let mut rng = random::rng(5);
    let mut miscounts = Vec::new();
    for case in 0..20 {
        let kappa = 1 + case % 2;
        let s = 1 + (case / 2) % 2;
        let pair = random::kappa_pair(&mut rng, s, kappa, 2);
        let n_max = 8 + 2 * kappa;
        let got = synthesize_indefinite_sequence(&pair, n_max).and_then(|seq| negative_squares(&seq, n_max));
        match got {
            Ok(ns) if ns.kappa == kappa && ns.stabilized => {}
            Ok(ns) => miscounts.push(format!("case {case}: kappa {kappa} got {:?}", ns.profile)),
            Err(e) => miscounts.push(format!("case {case}: {e}")),
        }
    }
    Outcome {
        ok: miscounts.is_empty(),
        detail: if miscounts.is_empty() { "20 pairs, 0 miscounts".into() } else { miscounts.join("; ") },
    }
}

/// `U = W D W⁻¹`, `C = W 1`: the moments are `Σ ±e^{inθ_k}` with `kappa`
/// negative atoms at distinct phases, so the count is exactly `kappa`.
fn equality_case(rng: &mut TestRng, d: usize, kappa: usize) -> Result<PontryaginRealization> {
    let j = SignatureGram::with_index(d, kappa)?;
    let w = random_j_unitary_with(&j, rng, 0.3)?;
    let phases: Vec<f64> = (0..d).map(|k| 0.3 + k as f64 * 2.6 / d as f64).collect();
    let diag = QMatrix::from_fn(d, d, |a, b| if a == b { ImaginaryUnit::I.lift(Complex64::from_polar(1.0, phases[a])) } else { Quaternion::ZERO });
    let ones = QMatrix::from_fn(d, 1, |_, _| Quaternion::ONE);
    let base = PontryaginRealization::new(j, diag, ones)?;
    conjugate(&base, &w)
}

fn realization_sufficiency() -> Outcome {
    let mut rng = random::rng(6);
    let mut violations = 0;
    let mut equal = [false; 3];
    for case in 0..100 {
        let kappa = case % 3;
        let d = kappa + rng.random_range(1..=3);
        let r = if case < 15 {
            equality_case(&mut rng, d, kappa)
        } else {
            let j = SignatureGram::with_index(d, kappa).expect("kappa <= d");
            let seed = rng.random();
            random_j_unitary(&j, seed)
                .and_then(|u| PontryaginRealization::new(j, u, random::qmatrix(&mut rng, d, 1 + case % 2)))
        };
        match r.and_then(|r| verify_negative_squares_bound(&r, d + 3)) {
            Ok(b) => {
                violations += usize::from(!b.ok);
                if case < 15 && b.kappa_seq == kappa {
                    equal[kappa] = true;
                }
            }
            Err(_) => violations += 1,
        }
    }
    Outcome {
        ok: violations == 0 && equal.iter().all(|&e| e),
        detail: format!("100 realizations, {violations} bound violations, equality reached for kappa 0/1/2: {equal:?}"),
    }
}

fn realization_uniqueness() -> Outcome {
    let mut rng = random::rng(7);
    let (mut worst_res, mut worst_int, mut errors, mut redrawn) = (0.0f64, 0.0f64, 0, 0);
    let mut case = 0;
    while case < 20 {
        let d = 2 + case % 3;
        let kappa = case % 2;
        let j = SignatureGram::with_index(d, kappa).expect("kappa <= d");
        let u = random_j_unitary(&j, rng.random()).expect("Cayley seed");
        let w = random_j_unitary(&j, rng.random()).expect("Cayley seed");
        let r1 = PontryaginRealization::new(j, u, random::qmatrix(&mut rng, d, 1)).expect("J-unitary");
        let r2 = conjugate(&r1, &w).expect("conjugate of J-unitary");
        match align_realizations(&r1, &r2, 2 * d as u32) {
            Ok(s) => {
                worst_res = worst_res.max(rel(s.max_diff(&w), w.scale_factor()));
                let inter = (&s * r1.u()).max_diff(&(r2.u() * &s));
                worst_int = worst_int.max(rel(inter, s.scale_factor()));
            }
            // uniqueness needs a minimal realization; redraw non-minimal ones
            Err(Error::SpanDeficient { .. }) if redrawn < 20 => {
                redrawn += 1;
                continue;
            }
            Err(_) => errors += 1,
        }
        case += 1;
    }
    Outcome {
        ok: errors == 0 && worst_res <= 1e-6 && worst_int <= 1e-6,
        detail: format!(
            "20 pairs ({redrawn} non-minimal redrawn), conjugator err {worst_res:.3e}, intertwining err {worst_int:.3e}, {errors} errors"
        ),
    }
}

fn dilation() -> Outcome {
    let mut rng = random::rng(8);
    let (mut worst_unit, mut worst_comp) = (0.0f64, 0.0f64);
    for case in 0..50 {
        let d = 1 + case % 4;
        let v = random_j_unitary(&SignatureGram::identity(d), rng.random()).expect("Cayley seed");
        let u = dilate_coisometry(&v).expect("unitary is a coisometry");
        worst_unit = worst_unit.max((&u.adjoint() * &u).max_diff(&QMatrix::identity(2 * d)));
        let mut vn = QMatrix::identity(d);
        for n in 0..=10 {
            worst_comp = worst_comp.max(compress(&u, n).expect("square dilation").max_diff(&vn));
            vn = &vn * &v;
        }
    }
    Outcome {
        ok: worst_unit <= 1e-9 && worst_comp <= 1e-9,
        detail: format!("50 matrices, unitarity err {worst_unit:.3e}, compression err {worst_comp:.3e}"),
    }
}

fn ball_point(rng: &mut TestRng, radius: f64) -> Quaternion {
    let q = random::quaternion(rng);
    q.scale(radius * rng.random::<f64>() / q.norm().max(1e-300))
}

fn kernel_identities() -> Outcome {
    let mut rng = random::rng(9);
    let nu = random::q_positive_measure(&mut rng, 2, 3);
    let mass = total_mass_bound(&nu).expect("valid measure");
    let seq = synthesize_sequence(&nu, 80).expect("valid measure");
    let phi = CaratheodoryFunction::new(seq, TailBound::Mass(mass));
    let mut worst_res = 0.0f64;
    for _ in 0..200 {
        let (p, q) = (ball_point(&mut rng, 0.5), ball_point(&mut rng, 0.5));
        worst_res = worst_res.max(kernel_identity_residual(&phi, p, q, 60).unwrap_or(f64::INFINITY));
    }
    let mut worst_gap = 0.0f64;
    for _ in 0..200 {
        let q = ball_point(&mut rng, 0.9);
        let t = rng.random_range(0.0..TAU);
        let i = random::imaginary_unit(&mut rng);
        worst_gap = worst_gap.max(herglotz_kernel_global(q, t, i).map_or(f64::INFINITY, |k| k.discrepancy));
    }
    Outcome {
        ok: worst_res <= 1e-8 && worst_gap <= 1e-10,
        detail: format!("200+200 samples, identity residual {worst_res:.3e}, dual-path gap {worst_gap:.3e}"),
    }
}

fn slice_positivity() -> Outcome {
    let mut rng = random::rng(10);
    let (mut worst_re, mut worst_ratio) = (f64::INFINITY, 0.0f64);
    for _ in 0..20 {
        let atoms = rng.random_range(1..=6);
        let m = random::slice_measure(&mut rng, atoms);
        for a in 0..50 {
            let radius = 0.98 * a as f64 / 49.0;
            for b in 0..50 {
                let theta = TAU * b as f64 / 50.0;
                let z = Complex64::from_polar(radius, theta);
                let f = synthesize_slice(&m, z.re, z.im).map_or(f64::NEG_INFINITY, |f| f.w);
                worst_re = worst_re.min(f);
            }
        }
        let bound = 2.0 * m.mass();
        for n in 1..=30 {
            let a = coefficient_from_measure(&m, n).expect("n >= 1");
            worst_ratio = worst_ratio.max(a.norm() / bound.max(f64::MIN_POSITIVE));
        }
    }
    Outcome {
        ok: worst_re >= -1e-12 && worst_ratio <= 1.0 + 1e-12,
        detail: format!("20 measures x 2500 points, min Re f {worst_re:.3e}, max |a_n|/(2 mass) {worst_ratio:.6}"),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("chi homomorphism", chi_homomorphism),
        ("inertia halving", inertia_halving),
        ("synthesis positivity", synthesis_positivity),
        ("positive extension", caratheodory_extension),
        ("negative-square count", krein_iohvidov),
        ("realization bound", realization_sufficiency),
        ("realization uniqueness", realization_uniqueness),
        ("unitary dilation", dilation),
        ("kernel identities", kernel_identities),
        ("slice positivity", slice_positivity),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        failed += usize::from(!out.ok);
        println!("{} {:>2} {name}: {}", if out.ok { "PASS" } else { "FAIL" }, k + 1, out.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
