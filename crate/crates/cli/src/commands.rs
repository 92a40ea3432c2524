use std::fs;
use std::path::Path;

use rand::Rng;

use qmoment_core::formats::{self, SequenceFile};
use qmoment_core::measures::{
    card_supp, synthesize_indefinite_sequence, synthesize_sequence, validate_q_positive,
};
use qmoment_core::moments::{build_toeplitz, caratheodory_extend, is_positive_definite, negative_squares};
use qmoment_core::random;
use qmoment_core::realize::verify_negative_squares_bound;
use qmoment_core::slicefn::{kernel_identity_residual, TailBound};
use qmoment_core::{CaratheodoryFunction, Error, HermitianSequence, Quaternion, Result};

use crate::report::{RunReport, EXIT_NEGATIVE};

/// Default residual threshold for `kernel-check`.
pub const KERNEL_RESIDUAL_TOL: f64 = 1e-8;

pub struct Globals<'a> {
    pub seed: u64,
    pub tol: Option<f64>,
    pub out: Option<&'a Path>,
}

fn read_input(path: &Path, report: &mut RunReport) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    report.inputs_digest = crate::report::digest(&bytes);
    String::from_utf8(bytes).map_err(|_| Error::Invalid(format!("{} is not UTF-8", path.display())))
}

fn emit_sequence(seq: &HermitianSequence, g: &Globals, report: &mut RunReport) -> Result<()> {
    let file = SequenceFile::from(seq);
    match g.out {
        Some(path) => {
            fs::write(path, formats::to_json(&file) + "\n")
                .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            report.set("written", path.display().to_string());
        }
        None => report.set("sequence", file),
    }
    Ok(())
}

pub fn check_pd(path: &Path, order: Option<usize>, g: &Globals, report: &mut RunReport) -> Result<()> {
    let seq = formats::parse_sequence(&read_input(path, report)?)?;
    let order = order.unwrap_or(seq.support());
    let check = is_positive_definite(&seq, order)?;
    let ok = match g.tol {
        Some(tol) => check.min_eig >= -tol * build_toeplitz(&seq, order)?.matrix().scale_factor(),
        None => check.ok,
    };
    report.set("order", order);
    report.set("ok", ok);
    report.set("min_eig", check.min_eig);
    if !ok {
        report.exit_status = EXIT_NEGATIVE;
    }
    Ok(())
}

pub fn neg_squares(path: &Path, n_max: usize, g: &Globals, report: &mut RunReport) -> Result<()> {
    let seq = formats::parse_sequence(&read_input(path, report)?)?;
    let ns = negative_squares(&seq, n_max)?;
    report.set("kappa", ns.kappa);
    report.set("profile", &ns.profile);
    report.set("stabilized", ns.stabilized);
    if let Some(path) = g.out {
        let mut csv = String::from("N,negative\n");
        for (n, k) in ns.profile.iter().enumerate() {
            csv += &format!("{n},{k}\n");
        }
        fs::write(path, csv).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
        report.set("written", path.display().to_string());
    }
    Ok(())
}

pub fn extend(path: &Path, steps: usize, g: &Globals, report: &mut RunReport) -> Result<()> {
    let seq = formats::parse_sequence(&read_input(path, report)?)?;
    let ext = caratheodory_extend(&seq, steps)?;
    let check = is_positive_definite(&ext, ext.support())?;
    if !check.ok {
        return Err(Error::NotPd { order: ext.support(), min_eig: check.min_eig });
    }
    report.set("support", ext.support());
    report.set("min_eig", check.min_eig);
    emit_sequence(&ext, g, report)
}

pub fn synth(path: &Path, n_max: usize, g: &Globals, report: &mut RunReport) -> Result<()> {
    let nu = formats::parse_measure(&read_input(path, report)?)?;
    let violations = validate_q_positive(&nu);
    if !violations.is_empty() {
        return Err(Error::NotQPositive(violations));
    }
    let seq = synthesize_sequence(&nu, n_max)?;
    report.set("support_points", nu.support_points().len());
    report.set("card_supp", card_supp(&nu));
    emit_sequence(&seq, g, report)
}

pub fn synth_indef(path: &Path, n_max: usize, g: &Globals, report: &mut RunReport) -> Result<()> {
    let pair = formats::parse_pair(&read_input(path, report)?)?;
    let mut violations = validate_q_positive(pair.plus());
    violations.extend(validate_q_positive(pair.minus()));
    if !violations.is_empty() {
        return Err(Error::NotQPositive(violations));
    }
    let seq = synthesize_indefinite_sequence(&pair, n_max)?;
    report.set("card_supp_minus", card_supp(pair.minus()));
    emit_sequence(&seq, g, report)
}

pub fn realize_check(path: &Path, n_max: usize, g: &Globals, report: &mut RunReport) -> Result<()> {
    let r = formats::parse_realization(&read_input(path, report)?)?;
    let bound = verify_negative_squares_bound(&r, n_max)?;
    report.set("kappa_seq", bound.kappa_seq);
    report.set("kappa_gram", bound.kappa_gram);
    report.set("profile", &bound.profile);
    report.set("bound_holds", bound.ok);
    emit_sequence(&qmoment_core::realize::moment_sequence(&r, n_max)?, g, report)?;
    if !bound.ok {
        report.exit_status = EXIT_NEGATIVE;
    }
    Ok(())
}

fn ball_point<R: Rng>(rng: &mut R, radius: f64) -> Quaternion {
    let q = random::quaternion(rng);
    q.scale(radius * rng.random::<f64>() / q.norm().max(f64::MIN_POSITIVE))
}

pub struct KernelArgs {
    pub samples: usize,
    pub terms: usize,
    pub radius: f64,
    pub bound: Option<f64>,
}

pub fn kernel_check(path: &Path, args: &KernelArgs, g: &Globals, report: &mut RunReport) -> Result<()> {
    let seq = formats::parse_sequence(&read_input(path, report)?)?;
    if !(0.0..1.0).contains(&args.radius) {
        return Err(Error::OutOfDomain(format!("sample radius {} must lie in [0, 1)", args.radius)));
    }
    let bound = args.bound.unwrap_or_else(|| seq.max_block_norm());
    let phi = CaratheodoryFunction::new(seq, TailBound::Mass(bound));
    let mut rng = random::rng(g.seed);
    let mut worst = 0.0f64;
    for _ in 0..args.samples {
        let (p, q) = (ball_point(&mut rng, args.radius), ball_point(&mut rng, args.radius));
        worst = worst.max(kernel_identity_residual(&phi, p, q, args.terms)?);
    }
    let threshold = g.tol.unwrap_or(KERNEL_RESIDUAL_TOL);
    report.set("samples", args.samples);
    report.set("terms", args.terms);
    report.set("max_residual", worst);
    report.set("threshold", threshold);
    if worst > threshold {
        report.exit_status = EXIT_NEGATIVE;
    }
    Ok(())
}
