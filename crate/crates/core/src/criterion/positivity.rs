//! Eventual positivity of `Z` and the entrywise column inequalities on
//! powers of `A` that express the same condition without forming `Z`.

use num_traits::Zero;

use crate::criterion::CriterionError;
use crate::matrix::{Matrix, Scalar};

/// Longest power cycle `Z^(k+p) = c Z^k` looked for.
pub const MAX_CYCLE_PERIOD: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityOptions {
    /// Highest power scanned. Must be at least 2.
    pub k_max: usize,
    /// Relative positivity threshold (float regime only).
    pub eps: f64,
    /// Successive normalized powers closer than this count as converged.
    pub conv_tol: f64,
}

impl Default for PositivityOptions {
    fn default() -> Self {
        Self {
            k_max: 256,
            eps: crate::matrix::DEFAULT_EPS,
            conv_tol: 1e-12,
        }
    }
}

/// Proof that no power of `Z` beyond the scanned range is positive.
#[derive(Debug, Clone, PartialEq)]
pub enum NeverCertificate {
    /// Exact regime: `Z^k = c Z^(k - period)` with `c > 0`, so the sign
    /// pattern of the scanned powers repeats forever.
    PowerCycle { k: usize, period: usize },
    /// The normalized powers `Z^k / max|Z^k|` along residues mod `period`
    /// converged to a matrix whose `(row, col)` entry is `value < 0`.
    NegativeLimit {
        k: usize,
        period: usize,
        row: usize,
        col: usize,
        value: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Positivity {
    /// `Z^k > 0` and `Z^(k+1) > 0` for the smallest such `k`.
    Positive { k: usize },
    CertifiedNever(NeverCertificate),
    Inconclusive { k_max: usize },
}

/// Scans `Z, Z^2, ...` for two consecutive strictly positive powers.
///
/// Powers are renormalized by their largest absolute entry (exact in the
/// exact regime), which leaves signs untouched. The scan stops early with a
/// certificate when it can prove that no later power is positive; see
/// [`NeverCertificate`]. Cycle detection is exact-only because rounding can
/// fake a fixed point; the limit certificate applies in both regimes.
pub fn eventual_positivity<T: Scalar>(
    z: &Matrix<T>,
    opts: &PositivityOptions,
) -> Result<Positivity, CriterionError> {
    z.ensure_square()?;
    if opts.k_max < 2 {
        return Err(CriterionError::BadKMax(opts.k_max));
    }
    let neg_threshold = 10.0 * opts.eps;
    // history[i] holds the normalized power Z^(k - i), most recent first
    let mut history: Vec<Matrix<T>> = Vec::with_capacity(MAX_CYCLE_PERIOD + 1);
    let mut history_f: Vec<Matrix<f64>> = Vec::with_capacity(MAX_CYCLE_PERIOD + 1);
    let mut power = z.clone();
    let mut prev_positive = false;
    for k in 1..=opts.k_max + 1 {
        if k > 1 {
            power = z.matmul(&power)?;
            if !T::is_exact() {
                power = power.normalize_max_abs();
            }
        }
        let normalized = if T::is_exact() {
            power.normalize_max_abs()
        } else {
            power.clone()
        };
        let positive = normalized.is_strictly_positive(opts.eps);
        if prev_positive && positive {
            return Ok(Positivity::Positive { k: k - 1 });
        }
        prev_positive = positive;
        if normalized.entries().iter().all(Zero::is_zero) {
            // nilpotent: every later power is zero
            return Ok(Positivity::CertifiedNever(NeverCertificate::PowerCycle {
                k,
                period: 1,
            }));
        }
        let nf = normalized.to_f64();
        if T::is_exact() {
            if let Some(p) = history.iter().position(|h| *h == normalized) {
                return Ok(Positivity::CertifiedNever(NeverCertificate::PowerCycle {
                    k,
                    period: p + 1,
                }));
            }
        }
        for (p, h) in history_f.iter().enumerate() {
            if nf.max_abs_diff(h)? < opts.conv_tol {
                let (idx, value) = nf
                    .entries()
                    .iter()
                    .copied()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("non-empty");
                if value < -neg_threshold {
                    let n = z.cols();
                    return Ok(Positivity::CertifiedNever(NeverCertificate::NegativeLimit {
                        k,
                        period: p + 1,
                        row: idx / n,
                        col: idx % n,
                        value,
                    }));
                }
            }
        }
        if T::is_exact() {
            history.insert(0, normalized);
            history.truncate(MAX_CYCLE_PERIOD);
        }
        history_f.insert(0, nf);
        history_f.truncate(MAX_CYCLE_PERIOD);
    }
    Ok(Positivity::Inconclusive { k_max: opts.k_max })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionVi {
    /// The inequalities hold at `k` and `k + 1`; `k` is the smallest such.
    Holds { k: usize },
    /// No `k <= k_max` works; the first violation found, 1-based, scanning
    /// powers in order and each power column by column.
    FailsAt { k: usize, i: usize, j: usize },
    /// Float regime: some power is within the tolerance band of passing.
    Inconclusive { k: usize },
}

enum Level {
    Pass,
    Ambiguous,
    Fail { i: usize, j: usize },
}

/// Tests `a_ij^(k) > v_i (sum_l a_lj^(k) - lambda^k)` for every entry.
///
/// This is the entrywise form of `Z^k > 0` for
/// `Z = lambda v 1^T + (I - v 1^T) A`, so the scan mirrors
/// [`eventual_positivity`]: it asks for two consecutive powers.
/// Requires `1^T v = 1` and `v > 0`.
pub fn condition_vi_check<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    v: &Matrix<T>,
    k_max: usize,
    eps: f64,
) -> Result<ConditionVi, CriterionError> {
    let n = a.ensure_square()?;
    let v = if v.rows() == 1 { v.transpose() } else { v.clone() };
    if v.shape() != (n, 1) {
        return Err(crate::matrix::MatrixError::DimensionMismatch {
            left: (n, 1),
            right: v.shape(),
        }
        .into());
    }
    super::check_positive_unit_sum(&v, eps.max(1e-12))?;
    // power / lam_k are A^k and lambda^k up to a common positive factor
    let mut power = a.clone();
    let mut lam_k = lambda.clone();
    let mut prev_pass = false;
    let mut first_fail: Option<(usize, usize, usize)> = None;
    let mut ambiguous_at: Option<usize> = None;
    for k in 1..=k_max + 1 {
        if k > 1 {
            power = a.matmul(&power)?;
            lam_k = lam_k * lambda.clone();
            if !T::is_exact() {
                let s = power.max_abs().max(lam_k.to_f64().abs());
                if s > 0.0 {
                    let inv = T::one() / from_f64::<T>(s);
                    power = power.scale(&inv);
                    lam_k = lam_k * inv;
                }
            }
        }
        let level = level_at(&power, &lam_k, &v, eps);
        let pass = matches!(level, Level::Pass);
        if prev_pass && pass {
            return Ok(ConditionVi::Holds { k: k - 1 });
        }
        prev_pass = pass;
        if k <= k_max {
            match level {
                Level::Fail { i, j } => {
                    first_fail.get_or_insert((k, i + 1, j + 1));
                }
                Level::Ambiguous => {
                    ambiguous_at.get_or_insert(k);
                }
                Level::Pass => {}
            }
        }
    }
    if let Some(k) = ambiguous_at {
        return Ok(ConditionVi::Inconclusive { k });
    }
    let (k, i, j) = first_fail.unwrap_or((k_max, 1, 1));
    Ok(ConditionVi::FailsAt { k, i, j })
}

fn from_f64<T: Scalar>(x: f64) -> T {
    // only used in the float regime, where T = f64
    T::parse(&format!("{x:e}")).expect("finite float")
}

fn level_at<T: Scalar>(power: &Matrix<T>, lam_k: &T, v: &Matrix<T>, eps: f64) -> Level {
    let n = power.rows();
    let scale = power.max_abs().max(lam_k.to_f64().abs());
    let tol = if T::is_exact() { 0.0 } else { eps * scale };
    let mut ambiguous = false;
    for j in 0..n {
        let col_sum = (0..n).fold(T::zero(), |acc, l| acc + power.get(l, j).clone());
        let excess = col_sum - lam_k.clone();
        for i in 0..n {
            let margin = power.get(i, j).clone() - v.get(i, 0).clone() * excess.clone();
            if margin.is_positive_tol(tol) {
                continue;
            }
            if !T::is_exact() && margin.is_zero_tol(tol) {
                ambiguous = true;
                continue;
            }
            return Level::Fail { i, j };
        }
    }
    if ambiguous {
        Level::Ambiguous
    } else {
        Level::Pass
    }
}
