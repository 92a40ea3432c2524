use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not in the image of the complex embedding (block defect {defect:.3e})")]
    SymmetryViolation { defect: f64 },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("imaginary units do not form an orthonormal frame: {0}")]
    Frame(String),
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.6e})")]
    NotPsd { min_eig: f64 },
    #[error("2x2 block matrix is not positive semidefinite (min eigenvalue {min_eig:.6e})")]
    BlockNotPsd { min_eig: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("requested order {requested} exceeds sequence support {support}")]
    SupportExceeded { requested: usize, support: usize },
    #[error("sequence is not positive definite at order {order} (min eigenvalue {min_eig:.6e})")]
    NotPd { order: usize, min_eig: f64 },
    #[error("completion step {step} lost positivity (min eigenvalue {min_eig:.6e})")]
    CompletionFailure { step: usize, min_eig: f64 },
    #[error("measure is not q-positive ({} violation(s))", .0.len())]
    NotQPositive(Vec<crate::measures::Violation>),
    #[error("supports of the positive and negative measures overlap at t = {t}")]
    SupportOverlap { t: f64 },
    #[error("operator is not J-unitary (defect {defect:.3e})")]
    NotJUnitary { defect: f64 },
    #[error("operator is not a coisometry (defect {defect:.3e})")]
    NotCoisometry { defect: f64 },
    #[error("could not draw a nonsingular Cayley parameter after {attempts} attempts")]
    DegenerateSeed { attempts: usize },
    #[error("orbit span has rank {rank}, expected {dim}")]
    SpanDeficient { rank: usize, dim: usize },
    #[error("realizations are not unitarily equivalent: {0}")]
    NoUnitaryAlignment(String),
    #[error("point outside the domain of convergence: {0}")]
    OutOfDomain(String),
    #[error("closed-form and representation-formula kernels disagree by {0:.3e}")]
    KernelMismatch(f64),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
