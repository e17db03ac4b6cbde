//! Simple-and-dominant criterion via the explicit conjugate `Z`.

mod conjugate;
mod pipeline;
mod positivity;

pub use conjugate::{build_conjugate, conjugate_matrix, power_identity_check, ConjugateWitness};
pub use pipeline::{analyze, analyze_exact, analyze_pair, analyze_with_eigendata, AnyVerdict};
pub use positivity::{
    condition_vi_check, eventual_positivity, ConditionVi, NeverCertificate, Positivity,
    PositivityOptions, MAX_CYCLE_PERIOD,
};

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{Matrix, MatrixError, Scalar, SignatureMatrix};
use crate::spectral::{NormalizeOptions, PowerOptions, SpectralError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriterionError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("normalization {what} = 1 violated (got {value})")]
    Normalization { what: &'static str, value: f64 },
    #[error("k_max must be at least 2, got {0}")]
    BadKMax(usize),
    #[error("row {row} sums to {sum}, not 1")]
    RowSumsNotOne { row: usize, sum: f64 },
    #[error("v must be positive; entry {index} is not")]
    VNotPositive { index: usize },
    #[error("entries of v must sum to 1 (got {sum})")]
    VNotNormalized { sum: f64 },
    #[error("supplied eigendata do not satisfy A v = lambda v and u A = lambda u (residuals {residual_right:e}, {residual_left:e})")]
    EigendataMismatch { residual_right: f64, residual_left: f64 },
}

pub(crate) fn check_positive_unit_sum<T: Scalar>(v: &Matrix<T>, tol: f64) -> Result<(), CriterionError> {
    if let Some(index) = v.entries().iter().position(|x| !x.is_positive_tol(0.0)) {
        return Err(CriterionError::VNotPositive { index });
    }
    let sum = v.entries().iter().fold(T::zero(), |acc, x| acc + x.clone());
    if !crate::spectral::is_one(&sum, tol) {
        return Err(CriterionError::VNotNormalized { sum: sum.to_f64() });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    SimpleDominant,
    MultiplicityAtLeastTwo,
    NotSimpleDominantCertified,
    WeakPerron,
    SemisimpleDominant,
    NoRealDominantCandidate,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::SimpleDominant => "simple_dominant",
            VerdictKind::MultiplicityAtLeastTwo => "multiplicity_at_least_two",
            VerdictKind::NotSimpleDominantCertified => "not_simple_dominant_certified",
            VerdictKind::WeakPerron => "weak_perron",
            VerdictKind::SemisimpleDominant => "semisimple_dominant",
            VerdictKind::NoRealDominantCandidate => "no_real_dominant_candidate",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }

    /// 0 for a positive answer, 2 for a certified negative one, 3 when
    /// no definite answer about simplicity and dominance was reached.
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictKind::SimpleDominant => 0,
            VerdictKind::MultiplicityAtLeastTwo
            | VerdictKind::NotSimpleDominantCertified
            | VerdictKind::SemisimpleDominant => 2,
            VerdictKind::WeakPerron
            | VerdictKind::NoRealDominantCandidate
            | VerdictKind::Inconclusive => 3,
        }
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<T> {
    /// Left and right eigenvectors are orthogonal.
    Orthogonal { uv: T, uv_unit: f64 },
    /// The eigenvalue has a multi-dimensional eigenspace.
    GeometricMultiplicity { right_dim: usize, left_dim: usize },
    /// No power of `Z` is positive.
    Never(NeverCertificate),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<T> {
    pub kind: VerdictKind,
    pub lambda: Option<T>,
    /// Right eigenvector scaled so that its absolute entries sum to 1.
    pub v: Option<Matrix<T>>,
    /// Left eigenvector scaled so that `u v = 1`.
    pub u: Option<Matrix<T>>,
    /// `S` with `S v > 0`; `Z` is built from `S A S`.
    pub signature: Option<SignatureMatrix>,
    pub k_positive: Option<usize>,
    pub z: Option<Matrix<T>>,
    /// Limit of `(A / lambda)^k` when the probe converged.
    pub limit: Option<Matrix<T>>,
    pub multiplicity_estimate: Option<f64>,
    pub certificate: Option<Certificate<T>>,
    pub k_max_reached: bool,
    pub diagnostics: Vec<String>,
}

impl<T> Verdict<T> {
    pub fn new(kind: VerdictKind) -> Self {
        Self {
            kind,
            lambda: None,
            v: None,
            u: None,
            signature: None,
            k_positive: None,
            z: None,
            limit: None,
            multiplicity_estimate: None,
            certificate: None,
            k_max_reached: false,
            diagnostics: Vec::new(),
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.diagnostics.push(msg.into());
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub power: PowerOptions,
    pub normalize: NormalizeOptions,
    pub positivity: PositivityOptions,
    /// Step bound for the semisimplicity probe.
    pub probe_k_max: usize,
    pub probe_tol: f64,
    /// Residual bound for user-supplied float eigendata.
    pub eigen_tol: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            power: PowerOptions::default(),
            normalize: NormalizeOptions::default(),
            positivity: PositivityOptions::default(),
            probe_k_max: 10_000,
            probe_tol: 1e-12,
            eigen_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NonnegativeOutcome<T> {
    /// `Z >= 0`: the spectral radius is an eigenvalue of modulus at least
    /// that of every other eigenvalue. Nothing is said about simplicity.
    WeakPerron { z: Matrix<T> },
    NotApplicable { z: Matrix<T> },
}

/// Forms `Z = lambda v 1^T + (I - v 1^T) A` and checks `Z >= 0`.
pub fn nonnegative_proposition<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    v: &Matrix<T>,
    eps: f64,
) -> Result<NonnegativeOutcome<T>, CriterionError> {
    let n = a.ensure_square()?;
    check_positive_unit_sum(v, eps.max(1e-12))?;
    let z = conjugate_matrix(a, lambda, v, &Matrix::ones_row(n), eps.max(1e-12))?;
    Ok(if z.is_nonnegative(eps) {
        NonnegativeOutcome::WeakPerron { z }
    } else {
        NonnegativeOutcome::NotApplicable { z }
    })
}

/// Row sums of `a` equal 1 (exactly, or within `tol` in the float regime).
pub fn check_row_stochastic<T: Scalar>(a: &Matrix<T>, tol: f64) -> Result<(), CriterionError> {
    a.ensure_square()?;
    for row in 0..a.rows() {
        let sum = a.row_vec(row).into_iter().fold(T::zero(), |acc, x| acc + x);
        if !crate::spectral::is_one(&sum, tol) {
            return Err(CriterionError::RowSumsNotOne {
                row,
                sum: sum.to_f64(),
            });
        }
    }
    Ok(())
}

/// Decides whether 1 is a simple and dominant eigenvalue of a matrix with
/// unit row sums, using `v = 1/n` and the column inequalities.
pub fn stochastic_check<T: Scalar>(a: &Matrix<T>, cfg: &AnalysisConfig) -> Result<Verdict<T>, CriterionError> {
    let n = a.ensure_square()?;
    check_row_stochastic(a, cfg.eigen_tol)?;
    let lambda = T::one();
    let v = Matrix::column(vec![T::from_ratio(1, n as i64); n])?;
    let eps = cfg.positivity.eps;
    let z = conjugate_matrix(a, &lambda, &v, &Matrix::ones_row(n), eps.max(1e-12))?;
    let columns = condition_vi_check(a, &lambda, &v, cfg.positivity.k_max, eps)?;
    let positivity = eventual_positivity(&z, &cfg.positivity)?;

    let mut verdict = Verdict::new(VerdictKind::Inconclusive);
    verdict.lambda = Some(lambda.clone());
    verdict.v = Some(v.clone());
    verdict.signature = Some(SignatureMatrix::identity(n));
    match (&columns, &positivity) {
        (ConditionVi::Holds { k }, _) => {
            verdict.kind = VerdictKind::SimpleDominant;
            verdict.k_positive = Some(*k);
            if positivity != (Positivity::Positive { k: *k }) {
                verdict.note(format!(
                    "column inequalities hold at k={k} but the power scan reported {positivity:?}"
                ));
            }
        }
        (_, Positivity::CertifiedNever(cert)) => {
            verdict.kind = VerdictKind::NotSimpleDominantCertified;
            verdict.certificate = Some(Certificate::Never(cert.clone()));
        }
        (_, Positivity::Positive { k }) => {
            verdict.kind = VerdictKind::SimpleDominant;
            verdict.k_positive = Some(*k);
            verdict.note(format!(
                "power scan found Z^{k} > 0 while the column inequalities reported {columns:?}"
            ));
        }
        (_, Positivity::Inconclusive { .. }) => {
            if z.is_nonnegative(eps) {
                verdict.kind = VerdictKind::WeakPerron;
            } else {
                verdict.k_max_reached = true;
            }
        }
    }
    if let ConditionVi::FailsAt { k, i, j } = columns {
        verdict.note(format!(
            "column inequality a_ij^(k) > v_i (colsum_j(A^k) - lambda^k) first fails at k={k}, i={i}, j={j}"
        ));
    }
    verdict.z = Some(z);
    Ok(verdict)
}
