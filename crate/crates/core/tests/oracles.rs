use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use qmoment_core::measures::{card_supp, synthesize_indefinite_sequence, synthesize_sequence};
use qmoment_core::moments::negative_squares;
use qmoment_core::random;
use qmoment_core::slicefn::{
    caratheodory_kernel, coefficient_from_measure, herglotz_kernel_global, synthesize_slice, SliceAtom, TailBound,
};
use qmoment_core::*;

fn real_seq(f: impl Fn(usize) -> f64, n: usize) -> HermitianSequence {
    HermitianSequence::from_fn(n, |k| QMatrix::scalar(Quaternion::real(f(k)))).unwrap()
}

// Σ_{n,m ≥ 0} pⁿ r(n - m) q̄^m, summed directly.
fn kernel_double_sum(seq: &HermitianSequence, p: Quaternion, q: Quaternion, terms: usize) -> QMatrix {
    let s = seq.block_size();
    let mut acc = QMatrix::zeros(s, s);
    for n in 0..terms {
        for m in 0..terms {
            let r = seq.get(n as i64 - m as i64);
            acc = &acc + &r.left_mul(p.powi(n as u32)).right_mul(q.conj().powi(m as u32));
        }
    }
    acc
}

#[test]
fn kernel_matches_double_sum() {
    let mut rng = random::rng(21);
    let nu = random::q_positive_measure(&mut rng, 2, 3);
    let mass = measures::total_mass_bound(&nu).unwrap();
    let seq = synthesize_sequence(&nu, 70).unwrap();
    let phi = CaratheodoryFunction::new(seq.clone(), TailBound::Mass(mass));
    for k in 0..5 {
        let p = random::quaternion(&mut rng);
        let q = random::quaternion(&mut rng);
        let (p, q) = (p.scale(0.4 / p.norm()), q.scale((0.1 + 0.07 * k as f64) / q.norm()));
        let fast = caratheodory_kernel(&phi, p, q, 60).unwrap().value;
        let slow = kernel_double_sum(&seq, p, q, 60);
        assert!(fast.max_diff(&slow) < 1e-9 * slow.scale_factor(), "case {k}");
    }
}

#[test]
fn global_kernel_matches_its_power_series() {
    let mut rng = random::rng(4);
    for _ in 0..20 {
        let i = ImaginaryUnit::new(random::quaternion(&mut rng).im()).unwrap();
        let q = random::quaternion(&mut rng);
        let q = q.scale(0.6 / q.norm());
        let t = 6.0 * (q.w.abs() + 0.1) % TAU;
        let k = herglotz_kernel_global(q, t, i).unwrap();
        // (e^{It} + q)/(e^{It} - q) = 1 + 2 Σ qⁿ e^{-Int}
        let mut series = Quaternion::ONE;
        for n in 1..120u32 {
            series += q.powi(n) * i.lift(Complex64::from_polar(2.0, -(n as f64) * t));
        }
        assert!((k.closed_form - series).norm() < 1e-12);
    }
}

#[test]
fn trapezoid_rule_recovers_measure_coefficients() {
    let (i, j) = (ImaginaryUnit::K, ImaginaryUnit::I);
    let atoms = vec![
        SliceAtom { t: 0.3, mu1: 1.0, mu2: 0.4 },
        SliceAtom { t: 2.0, mu1: 0.5, mu2: -0.2 },
        SliceAtom { t: 5.1, mu1: 0.25, mu2: 0.0 },
    ];
    let m = SliceMeasure::new(i, j, 0.3, -0.1, atoms).unwrap();
    let (rho, nodes) = (0.5, 256);
    for n in 1..=12u32 {
        let mut acc = Quaternion::ZERO;
        for k in 0..nodes {
            let theta = TAU * k as f64 / nodes as f64;
            let z = Complex64::from_polar(rho, theta);
            let f = synthesize_slice(&m, z.re, z.im).unwrap();
            acc += i.lift(z.powi(-(n as i32))) * f;
        }
        let numeric = acc.scale(1.0 / nodes as f64);
        let exact = coefficient_from_measure(&m, n).unwrap();
        assert!((numeric - exact).norm() < 1e-10, "n = {n}");
    }
}

#[test]
fn indefinite_example_counts_one_negative_square() {
    let plus = DiscreteQPositiveMeasure::new(1, vec![MeasureAtom::scalar(0.0, 2.0)]).unwrap();
    let minus = DiscreteQPositiveMeasure::new(1, vec![MeasureAtom::scalar(PI, 1.0)]).unwrap();
    assert_eq!(card_supp(&minus), 1);
    let pair = MixedMeasurePair::new(plus, minus).unwrap();
    let seq = synthesize_indefinite_sequence(&pair, 6).unwrap();
    let brute = real_seq(|n| 2.0 - if n % 2 == 0 { 1.0 } else { -1.0 }, 6);
    assert!(seq.values().iter().zip(brute.values()).all(|(a, b)| a.max_diff(b) < 1e-14));
    let ns = negative_squares(&seq, 6).unwrap();
    assert_eq!(ns.profile, vec![0, 1, 1, 1, 1, 1, 1]);
    assert!(ns.stabilized);
}
