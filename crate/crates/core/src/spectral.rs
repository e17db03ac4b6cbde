//! Candidate dominant eigendata, the characteristic polynomial, and the
//! normalized-power semisimplicity probe.

use nalgebra::DMatrix;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matrix::{Matrix, MatrixError, Rational, Scalar, SignatureMatrix};

/// Float char-poly coefficients are flagged as unreliable above this size.
pub const CHAR_POLY_FLOAT_LIMIT: usize = 30;

const RESTARTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    /// `estimate` is the stalled Rayleigh quotient when it agreed with the
    /// observed growth rate of the iterates.
    #[error("no real dominant eigenvalue candidate after {iterations} iterations per start")]
    NoRealDominantCandidate {
        iterations: usize,
        best_residual: f64,
        estimate: Option<f64>,
    },
    #[error("eigenvector must be nonzero")]
    ZeroVector,
    #[error("spectral radius must be positive")]
    NonPositiveRho,
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// Monic characteristic polynomial `det(xI - A)`, highest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly<T> {
    pub coefficients: Vec<T>,
    /// Set for float input larger than [`CHAR_POLY_FLOAT_LIMIT`].
    pub accuracy_warning: bool,
}

impl<T: Scalar> CharPoly<T> {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coefficients
            .iter()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Largest coefficient magnitude, as f64.
    pub fn scale(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// Faddeev–LeVerrier recurrence. Only divides by the integers `1..=n`, so the
/// exact regime yields exact coefficients.
pub fn char_poly<T: Scalar>(a: &Matrix<T>) -> Result<CharPoly<T>, MatrixError> {
    let n = a.ensure_square()?;
    let mut coefficients = Vec::with_capacity(n + 1);
    coefficients.push(T::one());
    let mut m = Matrix::<T>::zeros(n, n);
    let identity = Matrix::<T>::identity(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let last = coefficients[k - 1].clone();
        m = a.matmul(&m)?.add(&identity.scale(&last))?;
        let am = a.matmul(&m)?;
        coefficients.push(-(am.trace() / T::from_i64(k as i64)));
    }
    Ok(CharPoly {
        coefficients,
        accuracy_warning: !T::is_exact() && n > CHAR_POLY_FLOAT_LIMIT,
    })
}

/// Candidate eigenvalue with right (`n x 1`) and left (`1 x n`) eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    pub lambda: T,
    pub v: Matrix<T>,
    pub u: Matrix<T>,
    /// `|A v - lambda v|_max / (|A|_inf |v|_max)`.
    pub residual_right: f64,
    /// Same for `u A - lambda u`.
    pub residual_left: f64,
    /// Signature `S` with `S v > 0`; the identity until normalized.
    pub signature: SignatureMatrix,
    pub normalized: bool,
}

impl<T: Scalar> EigenPair<T> {
    /// Builds an un-normalized pair and records its residuals against `a`.
    pub fn new(a: &Matrix<T>, lambda: T, v: Matrix<T>, u: Matrix<T>) -> Result<Self, SpectralError> {
        let n = a.ensure_square()?;
        let v = if v.shape() == (1, n) { v.transpose() } else { v };
        let u = if u.shape() == (n, 1) { u.transpose() } else { u };
        if v.shape() != (n, 1) || u.shape() != (1, n) {
            return Err(MatrixError::DimensionMismatch {
                left: (n, n),
                right: v.shape(),
            }
            .into());
        }
        if v.max_abs() == 0.0 || u.max_abs() == 0.0 {
            return Err(SpectralError::ZeroVector);
        }
        let residual_right = residual(a, &lambda, &v)?;
        let residual_left = residual(&a.transpose(), &lambda, &u.transpose())?;
        Ok(Self {
            lambda,
            v,
            u,
            residual_right,
            residual_left,
            signature: SignatureMatrix::identity(n),
            normalized: false,
        })
    }

    pub fn n(&self) -> usize {
        self.v.rows()
    }

    /// Exact regime: both residuals vanish. Float regime: both are `<= tol`.
    pub fn satisfies(&self, tol: f64) -> bool {
        if T::is_exact() {
            self.residual_right == 0.0 && self.residual_left == 0.0
        } else {
            self.residual_right <= tol && self.residual_left <= tol
        }
    }
}

fn inf_norm<T: Scalar>(a: &Matrix<T>) -> f64 {
    (0..a.rows())
        .map(|i| a.row_vec(i).iter().map(|x| x.to_f64().abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Relative residual of `A v = lambda v`. Exact input gives exactly `0.0`
/// when the relation holds.
fn residual<T: Scalar>(a: &Matrix<T>, lambda: &T, v: &Matrix<T>) -> Result<f64, MatrixError> {
    let r = a.matmul(v)?.sub(&v.scale(lambda))?;
    if T::is_exact() {
        return Ok(if r.entries().iter().all(Zero::is_zero) {
            0.0
        } else {
            r.max_abs().max(f64::MIN_POSITIVE)
        });
    }
    let denom = inf_norm(a).max(lambda.to_f64().abs()) * v.max_abs();
    Ok(if denom == 0.0 { 0.0 } else { r.max_abs() / denom })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 100_000,
            seed: 0,
        }
    }
}

struct PowerRun {
    lambda: f64,
    x: Matrix<f64>,
    residual: f64,
}

enum PowerStep {
    Converged(PowerRun),
    /// Best estimate at the end, with the geometric growth rate of the iterates.
    Stalled { lambda: f64, residual: f64, growth: f64 },
}

fn normalize_inf(x: &Matrix<f64>) -> Option<Matrix<f64>> {
    let m = x.max_abs();
    (m > 0.0 && m.is_finite()).then(|| x.scale(&(1.0 / m)))
}

fn power_run(a: &Matrix<f64>, start: &Matrix<f64>, tol: f64, max_iter: usize) -> Result<PowerStep, MatrixError> {
    let norm_a = inf_norm(a);
    let Some(mut x) = normalize_inf(start) else {
        return Ok(PowerStep::Stalled {
            lambda: 0.0,
            residual: f64::INFINITY,
            growth: 0.0,
        });
    };
    if norm_a == 0.0 {
        return Ok(PowerStep::Converged(PowerRun { lambda: 0.0, x, residual: 0.0 }));
    }
    let mut log_growth = Vec::with_capacity(max_iter.min(1 << 20));
    let mut last = (0.0, f64::INFINITY);
    for _ in 0..max_iter {
        let y = a.matmul(&x)?;
        let lambda = x.dot(&y)? / x.dot(&x)?;
        let res = y.sub(&x.scale(&lambda))?.max_abs() / (norm_a.max(lambda.abs()) * x.max_abs());
        if res <= tol {
            return Ok(PowerStep::Converged(PowerRun { lambda, x, residual: res }));
        }
        last = (lambda, res);
        let ny = y.max_abs();
        if ny == 0.0 {
            // A x = 0: x is an eigenvector for 0.
            return Ok(PowerStep::Converged(PowerRun { lambda: 0.0, x, residual: 0.0 }));
        }
        log_growth.push(ny.ln());
        x = y.scale(&(1.0 / ny));
    }
    let tail = &log_growth[log_growth.len() / 2..];
    let growth = if tail.is_empty() {
        0.0
    } else {
        (tail.iter().sum::<f64>() / tail.len() as f64).exp()
    };
    Ok(PowerStep::Stalled {
        lambda: last.0,
        residual: last.1,
        growth,
    })
}

fn start_vectors(n: usize, seed: u64) -> Vec<Matrix<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = vec![Matrix::ones_column(n)];
    for _ in 0..RESTARTS {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        starts.push(Matrix::column(v).expect("n >= 1"));
    }
    starts
}

/// Outcome of one power-iteration sweep over the start vectors.
enum Sweep {
    Converged(PowerRun),
    Stalled { lambda: f64, residual: f64, growth: f64 },
}

fn sweep(a: &Matrix<f64>, opts: &PowerOptions) -> Result<Sweep, MatrixError> {
    let n = a.ensure_square()?;
    let mut best: Option<(f64, f64, f64)> = None;
    let mut converged: Option<PowerRun> = None;
    for start in start_vectors(n, opts.seed) {
        match power_run(a, &start, opts.tol, opts.max_iter)? {
            // a start can be an exact eigenvector of a smaller eigenvalue,
            // so keep the converged run of largest modulus
            PowerStep::Converged(run) => {
                if converged.as_ref().is_none_or(|c| run.lambda.abs() > c.lambda.abs() * (1.0 + 1e-9)) {
                    converged = Some(run);
                }
            }
            PowerStep::Stalled { lambda, residual, growth, .. } => {
                if best.is_none_or(|b| residual < b.1) {
                    best = Some((lambda, residual, growth));
                }
            }
        }
    }
    if let Some(run) = converged {
        if best.is_none_or(|b| run.lambda.abs() >= b.2 * (1.0 - 1e-6)) {
            return Ok(Sweep::Converged(run));
        }
    }
    let (lambda, residual, growth) = best.unwrap_or((0.0, f64::INFINITY, 0.0));
    Ok(Sweep::Stalled { lambda, residual, growth })
}

/// `u A v / u v`, whose error is the product of the two vector errors.
/// `None` when `u` and `v` are too close to orthogonal.
fn two_sided_rayleigh(a: &Matrix<f64>, v: &Matrix<f64>, u: &Matrix<f64>) -> Option<f64> {
    let uv = u.dot(v).ok()?;
    let norms = u.max_abs() * v.max_abs() * v.rows() as f64;
    if !(uv.abs() > 1e-6 * norms) {
        return None;
    }
    Some(u.matmul(a).ok()?.dot(v).ok()? / uv)
}

/// Power iteration on `A` and `A^T` for the eigenvalue of largest modulus.
///
/// Starts from the all-ones vector, then up to three seeded random restarts.
/// The returned pair is un-normalized. When neither side converges to `tol`
/// the dominant structure is complex, tied, or defective; for the defective
/// case a rational eigenvalue near the stalled estimate is recovered exactly
/// (see [`exact_candidate`]) before giving up.
pub fn dominant_eigenpair(a: &Matrix<f64>, opts: &PowerOptions) -> Result<EigenPair<f64>, SpectralError> {
    if !(opts.tol > 0.0) {
        return Err(SpectralError::BadTolerance);
    }
    a.ensure_square()?;
    let right = sweep(a, opts)?;
    let left = sweep(&a.transpose(), opts)?;
    match (right, left) {
        (Sweep::Converged(r), Sweep::Converged(l)) => {
            let scale = r.lambda.abs().max(inf_norm(a)).max(f64::MIN_POSITIVE);
            if (r.lambda - l.lambda).abs() > 1e-6 * scale {
                return Err(SpectralError::NoRealDominantCandidate {
                    iterations: opts.max_iter,
                    best_residual: r.residual.max(l.residual),
                    estimate: None,
                });
            }
            let u = l.x.transpose();
            let lambda = two_sided_rayleigh(a, &r.x, &u)
                .filter(|q| (q - r.lambda).abs() <= 1e-6 * scale)
                .unwrap_or(r.lambda);
            Ok(EigenPair::new(a, lambda, r.x, u)?)
        }
        (r, l) => {
            let (estimate, growth, best) = match (&r, &l) {
                (Sweep::Converged(run), Sweep::Stalled { growth, .. }) => (run.lambda, *growth, run.residual),
                (Sweep::Stalled { lambda, growth, residual }, _) => (*lambda, *growth, *residual),
                _ => unreachable!(),
            };
            let fail = |estimate| SpectralError::NoRealDominantCandidate {
                iterations: opts.max_iter,
                best_residual: best,
                estimate,
            };
            if !(growth > 0.0) {
                return Err(fail(None));
            }
            // The growth rate is the dominant modulus even when +rho and
            // -rho tie, so +growth is tried first. The Rayleigh estimate only
            // counts when it matches the growth rate.
            let consistent = (estimate.abs() - growth).abs() <= 1e-2 * growth;
            let exact = a.to_exact();
            for candidate in [Some(growth), consistent.then_some(estimate)].into_iter().flatten() {
                match exact_candidate(&exact, candidate, STALLED_WINDOW)? {
                    Some(ExactCandidate::Simple(pair)) => {
                        return EigenPair::new(a, pair.lambda.to_f64(), pair.v.to_f64(), pair.u.to_f64())
                    }
                    Some(ExactCandidate::Multiple { .. }) => return Err(fail(Some(candidate))),
                    None => {}
                }
            }
            Err(fail(consistent.then_some(estimate)))
        }
    }
}

/// Continued-fraction convergents of `x` with denominator at most `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (1i128, x.floor() as i128);
    let (mut k0, mut k1) = (0i128, 1i128);
    let mut frac = x - x.floor();
    out.push(Rational::from_integer(h1.into()));
    for _ in 0..40 {
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        out.push(Rational::new(h2.into(), k2.into()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    out
}

/// Relative window for snapping a stalled power-iteration estimate.
pub const STALLED_WINDOW: f64 = 1e-2;

/// Relative window for snapping a converged power-iteration estimate.
pub const CONVERGED_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum ExactCandidate {
    /// One-dimensional left and right eigenspaces; exact un-normalized pair.
    Simple(EigenPair<Rational>),
    /// Geometric multiplicity at least two on one side.
    Multiple {
        lambda: Rational,
        right_dim: usize,
        left_dim: usize,
    },
}

/// Looks for an exact rational eigenvalue within `rel_window` (relative) of
/// `estimate`, verified by `chi_A(lambda) = 0`, among the continued-fraction
/// convergents of `estimate`. This only confirms a candidate; it never
/// searches for roots of the characteristic polynomial.
pub fn exact_candidate(
    a: &Matrix<Rational>,
    estimate: f64,
    rel_window: f64,
) -> Result<Option<ExactCandidate>, SpectralError> {
    a.ensure_square()?;
    candidate_with(a, &char_poly(a)?, estimate, rel_window)
}

fn candidate_with(
    a: &Matrix<Rational>,
    chi: &CharPoly<Rational>,
    estimate: f64,
    rel_window: f64,
) -> Result<Option<ExactCandidate>, SpectralError> {
    let n = a.rows();
    let window = rel_window * estimate.abs().max(1.0);
    for lambda in convergents(estimate, 1_000_000) {
        if (lambda.to_f64() - estimate).abs() > window || !chi.eval(&lambda).is_zero() {
            continue;
        }
        let shifted = a.sub(&Matrix::identity(n).scale(&lambda))?;
        let right = shifted.kernel();
        let left = shifted.transpose().kernel();
        if right.len() != 1 || left.len() != 1 {
            return Ok(Some(ExactCandidate::Multiple {
                lambda,
                right_dim: right.len(),
                left_dim: left.len(),
            }));
        }
        let v = right.into_iter().next().expect("len 1");
        let u = left.into_iter().next().expect("len 1").transpose();
        return Ok(Some(ExactCandidate::Simple(EigenPair::new(a, lambda, v, u)?)));
    }
    Ok(None)
}

/// Real numbers worth testing as the dominant eigenvalue, from the real
/// Schur form: `+rho` first, then the real parts of the other eigenvalues of
/// modulus close to `rho` with small imaginary part. Defective eigenvalues
/// are only located to about `eps^(1/m)`, hence the loose band.
pub fn dominant_estimates(a: &Matrix<f64>) -> Vec<f64> {
    let n = a.rows();
    if n == 0 || !a.entries().iter().all(|x| x.is_finite()) {
        return Vec::new();
    }
    let eigs = DMatrix::from_row_slice(n, n, a.entries()).complex_eigenvalues();
    let rho = eigs.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    if rho == 0.0 {
        return vec![0.0];
    }
    let band = 1e-3 * rho;
    let mut out = vec![rho];
    for z in eigs.iter() {
        if z.norm() >= rho - band && z.im.abs() <= band && (z.re - rho).abs() > band {
            out.push(z.re);
        }
    }
    out
}

/// Exact eigenvalue of largest modulus among [`dominant_estimates`],
/// confirmed by [`exact_candidate`]. Tight windows are tried first so that a
/// nearby smaller root is not picked up by the loose one.
pub fn locate_exact(a: &Matrix<Rational>) -> Result<Option<ExactCandidate>, SpectralError> {
    a.ensure_square()?;
    let estimates = dominant_estimates(&a.to_f64());
    let chi = char_poly(a)?;
    for window in [CONVERGED_WINDOW, STALLED_WINDOW] {
        for &estimate in &estimates {
            if let Some(found) = candidate_with(a, &chi, estimate, window)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizeOptions {
    /// `|u.v| / (|u|_2 |v|_2)` below this means `u` and `v` are orthogonal.
    pub tol_orth: f64,
    /// `|v_i| < tol_zero * max|v|` counts as a zero entry.
    pub tol_zero: f64,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        Self {
            tol_orth: 1e-9,
            tol_zero: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormalizeError<T: std::fmt::Debug> {
    /// `u v = 0`, so the eigenvalue has algebraic multiplicity at least two.
    #[error("left and right eigenvectors are orthogonal (u.v = {uv:?}); multiplicity is at least 2")]
    MultiplicityAtLeastTwo { uv: T, uv_unit: f64 },
    #[error("right eigenvector has a zero entry at index {index}")]
    VHasZeroEntry { index: usize },
}

fn euclid(v: &Matrix<f64>) -> f64 {
    v.entries().iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Rescales so that `1^T (S v) = 1` for the signature `S` making `S v`
/// positive, and `u v = 1`.
pub fn normalize_pair<T: Scalar>(
    p: &EigenPair<T>,
    opts: &NormalizeOptions,
) -> Result<EigenPair<T>, NormalizeError<T>> {
    let uv = p.u.dot(&p.v).expect("shapes checked at construction");
    let (uf, vf) = (p.u.to_f64(), p.v.to_f64());
    let uv_unit = uf.dot(&vf).expect("same length") / (euclid(&uf) * euclid(&vf));
    let orthogonal = if T::is_exact() {
        uv.is_zero()
    } else {
        !(uv_unit.abs() >= opts.tol_orth)
    };
    if orthogonal {
        return Err(NormalizeError::MultiplicityAtLeastTwo { uv, uv_unit });
    }
    let zero_tol = p.v.abs_threshold(opts.tol_zero);
    if let Some(index) = p.v.entries().iter().position(|x| x.is_zero_tol(zero_tol)) {
        return Err(NormalizeError::VHasZeroEntry { index });
    }
    let signature = SignatureMatrix::from_signs_of(&p.v);
    let l1 = p
        .v
        .entries()
        .iter()
        .fold(T::zero(), |acc, x| acc + x.abs());
    let v = p.v.scale(&(T::one() / l1));
    let uv_new = p.u.dot(&v).expect("same length");
    let u = p.u.scale(&(T::one() / uv_new));
    Ok(EigenPair {
        lambda: p.lambda.clone(),
        v,
        u,
        residual_right: p.residual_right,
        residual_left: p.residual_left,
        signature,
        normalized: true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeOutcome<T> {
    /// `rho^-k A^k` converged; `multiplicity_estimate` is the trace of the limit.
    Converged {
        limit: Matrix<T>,
        multiplicity_estimate: f64,
        steps: usize,
    },
    /// Norms kept growing without slowing down.
    Diverged { steps: usize },
    Undetermined { steps: usize },
}

impl<T> ProbeOutcome<T> {
    pub fn is_converged(&self) -> bool {
        matches!(self, ProbeOutcome::Converged { .. })
    }
}

/// Consecutive non-decelerating growth steps that count as divergence.
pub const DIVERGENCE_STREAK: usize = 10;

/// Iterates `M_{k+1} = A M_k / rho` from `M_0 = I`.
///
/// Converged when successive iterates differ by less than
/// `conv_tol * max(1, |M_k|)`. Diverged when, for [`DIVERGENCE_STREAK`]
/// consecutive steps, the max-norm increased and each increase was at least
/// as large as the previous one (polynomial or exponential growth; a
/// converging sequence has shrinking increments).
pub fn semisimplicity_probe<T: Scalar>(
    a: &Matrix<T>,
    rho: &T,
    k_max: usize,
    conv_tol: f64,
) -> Result<ProbeOutcome<T>, SpectralError> {
    let n = a.ensure_square()?;
    if !(rho.clone() > T::zero()) {
        return Err(SpectralError::NonPositiveRho);
    }
    let scaled = a.scale(&(T::one() / rho.clone()));
    let mut m = Matrix::<T>::identity(n);
    let mut prev_norm = m.max_abs();
    let mut prev_increment = f64::NAN;
    let mut streak = 0usize;
    for k in 1..=k_max {
        let next = scaled.matmul(&m)?;
        let norm = next.max_abs();
        let diff = next.max_abs_diff(&m)?;
        if diff < conv_tol * norm.max(1.0) {
            let multiplicity_estimate = next.trace().to_f64();
            return Ok(ProbeOutcome::Converged {
                limit: next,
                multiplicity_estimate,
                steps: k,
            });
        }
        let increment = norm - prev_norm;
        let accelerating = increment > 0.0
            && (prev_increment.is_nan() || increment >= prev_increment * (1.0 - 1e-9));
        streak = if accelerating { streak + 1 } else { 0 };
        if streak >= DIVERGENCE_STREAK {
            return Ok(ProbeOutcome::Diverged { steps: k });
        }
        prev_norm = norm;
        prev_increment = increment;
        m = next;
    }
    Ok(ProbeOutcome::Undetermined { steps: k_max })
}

/// Gelfand estimate `|A^(2^j)|^(2^-j)` in the max-norm, computed in logs.
pub fn spectral_radius_estimate(a: &Matrix<f64>, doublings: u32) -> Result<f64, MatrixError> {
    a.ensure_square()?;
    let mut m = a.clone();
    let mut log_scale = 0.0f64;
    for _ in 0..doublings {
        let s = m.max_abs();
        if s == 0.0 {
            return Ok(0.0);
        }
        m = m.scale(&(1.0 / s));
        log_scale += s.ln();
        m = m.matmul(&m)?;
        log_scale *= 2.0;
    }
    let s = m.max_abs();
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(((s.ln() + log_scale) / 2f64.powi(doublings as i32)).exp())
}

/// Unit-free check used by tests and the CLI: does `chi(lambda)` vanish
/// relative to the coefficient scale?
pub fn char_poly_residual(chi: &CharPoly<f64>, lambda: f64) -> f64 {
    let n = chi.degree() as i32;
    let denom = chi
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs() * lambda.abs().powi(n - i as i32))
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    chi.eval(&lambda).abs() / denom
}

/// Sign-corrected copy of a vector: `S v` / `u S`.
pub fn signed<T: Scalar>(s: &SignatureMatrix, v: &Matrix<T>) -> Matrix<T> {
    s.apply_to_vector(v).expect("matching length")
}

pub(crate) fn is_one<T: Scalar>(x: &T, tol: f64) -> bool {
    (x.clone() - T::one()).is_zero_tol(tol)
}
