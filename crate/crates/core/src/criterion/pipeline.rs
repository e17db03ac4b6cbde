//! End-to-end analysis: eigenpair, normalization, signature, `Z`, verdict.

use crate::criterion::{
    build_conjugate, eventual_positivity, AnalysisConfig, Certificate, CriterionError, Positivity,
    Verdict, VerdictKind,
};
use crate::matrix::{Matrix, Rational, Regime, Scalar};
use crate::spectral::{
    dominant_eigenpair, exact_candidate, locate_exact, normalize_pair, semisimplicity_probe, signed, EigenPair,
    ExactCandidate, NormalizeError, ProbeOutcome, SpectralError, CONVERGED_WINDOW, STALLED_WINDOW,
};

/// Limit-matrix traces at or above this count as multiplicity two or more.
const MULTIPLE_TRACE: f64 = 1.5;

/// Step cap for the probe in exact arithmetic; past it the float probe runs.
const EXACT_PROBE_STEPS: usize = 400;

/// Largest dimension for which float analysis looks for an exact rational
/// eigenvalue at the power-iteration estimate.
const SNAP_MAX_DIM: usize = 16;

/// Verdict in whichever regime the analysis could be carried out.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyVerdict {
    Exact(Verdict<Rational>),
    Float(Verdict<f64>),
}

impl AnyVerdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            AnyVerdict::Exact(v) => v.kind,
            AnyVerdict::Float(v) => v.kind,
        }
    }

    pub fn regime(&self) -> Regime {
        match self {
            AnyVerdict::Exact(_) => Regime::Exact,
            AnyVerdict::Float(_) => Regime::Float,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }

    pub fn diagnostics(&self) -> &[String] {
        match self {
            AnyVerdict::Exact(v) => &v.diagnostics,
            AnyVerdict::Float(v) => &v.diagnostics,
        }
    }
}

struct ProbeSummary<T> {
    limit: Option<Matrix<T>>,
    multiplicity: Option<f64>,
    note: String,
}

fn probe<T: Scalar>(a: &Matrix<T>, rho: &T, cfg: &AnalysisConfig) -> ProbeSummary<T> {
    if !T::is_exact() || cfg.probe_k_max <= EXACT_PROBE_STEPS {
        return summarize(semisimplicity_probe(a, rho, cfg.probe_k_max, cfg.probe_tol), "");
    }
    match semisimplicity_probe(a, rho, EXACT_PROBE_STEPS, cfg.probe_tol) {
        Ok(ProbeOutcome::Undetermined { .. }) => {
            let f = summarize(
                semisimplicity_probe(&a.to_f64(), &rho.to_f64(), cfg.probe_k_max, cfg.probe_tol),
                " in floating point",
            );
            ProbeSummary {
                limit: None,
                multiplicity: f.multiplicity,
                note: f.note,
            }
        }
        other => summarize(other, ""),
    }
}

fn summarize<T>(outcome: Result<ProbeOutcome<T>, SpectralError>, how: &str) -> ProbeSummary<T> {
    let (limit, multiplicity, note) = match outcome {
        Ok(ProbeOutcome::Converged {
            limit,
            multiplicity_estimate,
            steps,
        }) => (
            Some(limit),
            Some(multiplicity_estimate),
            format!("(A/lambda)^k converged{how} after {steps} steps; trace of limit {multiplicity_estimate:.6}"),
        ),
        Ok(ProbeOutcome::Diverged { steps }) => (
            None,
            None,
            format!("(A/lambda)^k grows without bound{how} (detected at step {steps}); lambda is not semisimple or not dominant"),
        ),
        Ok(ProbeOutcome::Undetermined { steps }) => (
            None,
            None,
            format!("(A/lambda)^k neither converged nor diverged{how} within {steps} steps"),
        ),
        Err(e) => (None, None, format!("semisimplicity probe not run: {e}")),
    };
    ProbeSummary {
        limit,
        multiplicity,
        note,
    }
}

fn is_multiple(p: &ProbeSummary<impl Sized>) -> bool {
    p.multiplicity.is_some_and(|m| m >= MULTIPLE_TRACE)
}

fn attach_probe<T>(verdict: &mut Verdict<T>, p: ProbeSummary<T>) {
    verdict.multiplicity_estimate = p.multiplicity;
    verdict.limit = p.limit;
    verdict.note(p.note);
}

/// Runs the criterion on a candidate eigenpair of `a`.
///
/// Steps: normalize (orthogonal `u`, `v` short-circuits to
/// multiplicity >= 2); reject non-positive `lambda`; choose `S` with
/// `S v > 0` and build `Z` from `S A S` with `u' = 1^T`; scan powers of `Z`.
/// When the scan does not find a positive power, the semisimplicity probe and
/// the nonnegativity test supply partial verdicts.
pub fn analyze_pair<T: Scalar>(
    a: &Matrix<T>,
    pair: &EigenPair<T>,
    cfg: &AnalysisConfig,
) -> Result<Verdict<T>, CriterionError> {
    let n = a.ensure_square()?;
    let lambda = pair.lambda.clone();
    let mut verdict = Verdict::new(VerdictKind::Inconclusive);
    verdict.lambda = Some(lambda.clone());
    let normalized = match normalize_pair(pair, &cfg.normalize) {
        Ok(p) => p,
        Err(NormalizeError::MultiplicityAtLeastTwo { uv, uv_unit }) => {
            verdict.kind = VerdictKind::MultiplicityAtLeastTwo;
            verdict.v = Some(pair.v.clone());
            verdict.u = Some(pair.u.clone());
            verdict.certificate = Some(Certificate::Orthogonal { uv, uv_unit });
            verdict.note("left and right eigenvectors are orthogonal, so the eigenvalue is not simple");
            return Ok(verdict);
        }
        Err(NormalizeError::VHasZeroEntry { index }) => {
            verdict.v = Some(pair.v.clone());
            verdict.u = Some(pair.u.clone());
            verdict.note(format!(
                "right eigenvector has a zero entry at index {}; no signature makes it positive",
                index + 1
            ));
            if lambda.is_positive_tol(0.0) {
                let p = probe(a, &lambda, cfg);
                if is_multiple(&p) {
                    verdict.kind = VerdictKind::SemisimpleDominant;
                }
                attach_probe(&mut verdict, p);
            } else {
                verdict.kind = VerdictKind::NoRealDominantCandidate;
            }
            return Ok(verdict);
        }
    };
    verdict.v = Some(normalized.v.clone());
    verdict.u = Some(normalized.u.clone());
    verdict.signature = Some(normalized.signature.clone());
    if !lambda.is_positive_tol(0.0) {
        verdict.kind = VerdictKind::NoRealDominantCandidate;
        verdict.note("candidate eigenvalue is not positive; the criterion needs a positive eigenvalue");
        return Ok(verdict);
    }

    let s = &normalized.signature;
    let b = s.conjugate(a)?;
    let vb = signed(s, &normalized.v);
    let ub = signed(s, &normalized.u);
    let tol = if T::is_exact() { 0.0 } else { cfg.eigen_tol };
    let witness = build_conjugate(&b, &lambda, &vb, &ub, &Matrix::ones_row(n), tol)?;
    if !s.is_identity() {
        verdict.note("v has mixed signs; Z is built from S A S");
    }
    let positivity = eventual_positivity(&witness.z, &cfg.positivity)?;
    let nonnegative = witness.z.is_nonnegative(cfg.positivity.eps);
    verdict.z = Some(witness.z);
    match positivity {
        Positivity::Positive { k } => {
            verdict.kind = VerdictKind::SimpleDominant;
            verdict.k_positive = Some(k);
        }
        Positivity::CertifiedNever(cert) => {
            let p = probe(a, &lambda, cfg);
            verdict.kind = if is_multiple(&p) {
                VerdictKind::SemisimpleDominant
            } else {
                VerdictKind::NotSimpleDominantCertified
            };
            verdict.certificate = Some(Certificate::Never(cert));
            attach_probe(&mut verdict, p);
        }
        Positivity::Inconclusive { k_max } => {
            let p = probe(a, &lambda, cfg);
            if is_multiple(&p) {
                verdict.kind = VerdictKind::SemisimpleDominant;
            } else if nonnegative {
                verdict.kind = VerdictKind::WeakPerron;
                verdict.note("Z is nonnegative: the spectral radius is an eigenvalue of maximal modulus");
            } else {
                verdict.k_max_reached = true;
                verdict.note(format!("no positive pair of powers Z^k, Z^(k+1) with k <= {k_max}"));
            }
            attach_probe(&mut verdict, p);
        }
    }
    Ok(verdict)
}

fn multiple_verdict<T: Scalar>(
    a: &Matrix<T>,
    lambda: T,
    right_dim: usize,
    left_dim: usize,
    cfg: &AnalysisConfig,
) -> Verdict<T> {
    let mut verdict = Verdict::new(VerdictKind::MultiplicityAtLeastTwo);
    verdict.certificate = Some(Certificate::GeometricMultiplicity { right_dim, left_dim });
    verdict.note(format!(
        "eigenspaces of the candidate eigenvalue have dimensions {right_dim} (right) and {left_dim} (left)"
    ));
    if lambda.is_positive_tol(0.0) {
        let p = probe(a, &lambda, cfg);
        if is_multiple(&p) {
            verdict.kind = VerdictKind::SemisimpleDominant;
        }
        attach_probe(&mut verdict, p);
    }
    verdict.lambda = Some(lambda);
    verdict
}

fn failed<T>(kind: VerdictKind, msg: String) -> Verdict<T> {
    let mut v = Verdict::new(kind);
    v.note(msg);
    v
}

/// Float analysis of an exactly confirmed candidate. `fallback` is used if
/// the rounded exact pair cannot be rebuilt.
fn float_from_exact(
    a: &Matrix<f64>,
    found: ExactCandidate,
    fallback: Option<EigenPair<f64>>,
    cfg: &AnalysisConfig,
) -> Verdict<f64> {
    match found {
        ExactCandidate::Multiple {
            lambda,
            right_dim,
            left_dim,
        } => multiple_verdict(a, lambda.to_f64(), right_dim, left_dim, cfg),
        ExactCandidate::Simple(exact) => {
            match EigenPair::new(a, exact.lambda.to_f64(), exact.v.to_f64(), exact.u.to_f64()).ok().or(fallback) {
                Some(pair) => analyze_pair(a, &pair, cfg)
                    .unwrap_or_else(|e| failed(VerdictKind::Inconclusive, e.to_string())),
                None => failed(VerdictKind::Inconclusive, "rounded eigenpair is degenerate".into()),
            }
        }
    }
}

/// Floating-point analysis: finds the dominant eigenpair by power iteration
/// and runs [`analyze_pair`].
pub fn analyze(a: &Matrix<f64>, cfg: &AnalysisConfig) -> Verdict<f64> {
    if a.rows() <= SNAP_MAX_DIM {
        if let Ok(Some(found)) = locate_exact(&a.to_exact()) {
            return float_from_exact(a, found, None, cfg);
        }
    }
    match dominant_eigenpair(a, &cfg.power) {
        Ok(pair) => {
            let snapped = if a.rows() <= SNAP_MAX_DIM {
                exact_candidate(&a.to_exact(), pair.lambda, CONVERGED_WINDOW).ok().flatten()
            } else {
                None
            };
            match snapped {
                Some(found) => float_from_exact(a, found, Some(pair), cfg),
                None => analyze_pair(a, &pair, cfg)
                    .unwrap_or_else(|e| failed(VerdictKind::Inconclusive, e.to_string())),
            }
        }
        Err(SpectralError::NoRealDominantCandidate {
            estimate: Some(estimate),
            ..
        }) => match exact_candidate(&a.to_exact(), estimate, STALLED_WINDOW) {
            Ok(Some(ExactCandidate::Multiple {
                lambda,
                right_dim,
                left_dim,
            })) => multiple_verdict(a, lambda.to_f64(), right_dim, left_dim, cfg),
            _ => failed(
                VerdictKind::NoRealDominantCandidate,
                format!("power iteration stalled near {estimate}; no eigenvalue confirmed there"),
            ),
        },
        Err(e) => failed(VerdictKind::NoRealDominantCandidate, e.to_string()),
    }
}

fn exact_verdict(a: &Matrix<Rational>, found: ExactCandidate, cfg: &AnalysisConfig) -> Verdict<Rational> {
    match found {
        ExactCandidate::Simple(pair) => {
            analyze_pair(a, &pair, cfg).unwrap_or_else(|e| failed(VerdictKind::Inconclusive, e.to_string()))
        }
        ExactCandidate::Multiple {
            lambda,
            right_dim,
            left_dim,
        } => multiple_verdict(a, lambda, right_dim, left_dim, cfg),
    }
}

/// Exact analysis when the dominant eigenvalue is rational; otherwise falls
/// back to [`analyze`] on the float image of `a`. Candidates come from the
/// Schur form, then from power iteration, and are confirmed exactly.
pub fn analyze_exact(a: &Matrix<Rational>, cfg: &AnalysisConfig) -> AnyVerdict {
    if let Ok(Some(found)) = locate_exact(a) {
        return AnyVerdict::Exact(exact_verdict(a, found, cfg));
    }
    let af = a.to_f64();
    let located = match dominant_eigenpair(&af, &cfg.power) {
        Ok(p) => Some((p.lambda, CONVERGED_WINDOW)),
        Err(SpectralError::NoRealDominantCandidate {
            estimate: Some(e), ..
        }) => Some((e, STALLED_WINDOW)),
        Err(_) => None,
    };
    if let Some((estimate, window)) = located {
        if let Ok(Some(found)) = exact_candidate(a, estimate, window) {
            return AnyVerdict::Exact(exact_verdict(a, found, cfg));
        }
    }
    let mut v = analyze(&af, cfg);
    v.note("dominant eigenvalue is not rational; analysed in floating point");
    AnyVerdict::Float(v)
}

/// Runs the criterion on user-supplied eigendata after checking
/// `A v = lambda v` and `u A = lambda u` (exactly, or within
/// `cfg.eigen_tol` in the float regime).
pub fn analyze_with_eigendata<T: Scalar>(
    a: &Matrix<T>,
    lambda: T,
    v: Matrix<T>,
    u: Matrix<T>,
    cfg: &AnalysisConfig,
) -> Result<Verdict<T>, CriterionError> {
    let pair = EigenPair::new(a, lambda, v, u)?;
    if !pair.satisfies(cfg.eigen_tol) {
        return Err(CriterionError::EigendataMismatch {
            residual_right: pair.residual_right,
            residual_left: pair.residual_left,
        });
    }
    analyze_pair(a, &pair, cfg)
}
