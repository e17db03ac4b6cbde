//! Dense matrices over two scalar regimes.
//!
//! Every matrix in the crate, including row and column vectors, is a
//! [`Matrix<T>`] stored row-major. The scalar type decides the regime:
//! [`Rational`] entries are exact, `f64` entries are floating point. Code that
//! must handle either regime at runtime (file input, reports) goes through
//! [`AnyMatrix`] and [`Number`], which reject mixed-regime arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational used by the exact regime.
pub type Rational = BigRational;

/// Relative positivity threshold used in the float regime unless overridden.
pub const DEFAULT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Exact,
    Float,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Exact => f.write_str("exact"),
            Regime::Float => f.write_str("float"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("regime mismatch: {left} vs {right}")]
    RegimeMismatch { left: Regime, right: Regime },
    #[error("matrix is singular")]
    Singular,
    #[error("signature entries must be +1 or -1, got {0}")]
    BadSignature(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as {regime} scalar: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub regime: Regime,
    pub reason: String,
}

/// A field element usable as a matrix entry.
///
/// The positivity helpers take an absolute threshold that only the float
/// regime honours; exact scalars compare against zero.
pub trait Scalar: Signed + Clone + fmt::Debug + PartialOrd + Send + Sync + 'static {
    const REGIME: Regime;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn parse(s: &str) -> Result<Self, ParseScalarError>;

    /// Canonical text: `p/q` (or `p`) for rationals, 12 significant digits for floats.
    fn render(&self) -> String;

    fn is_positive_tol(&self, tol: f64) -> bool;

    fn is_nonnegative_tol(&self, tol: f64) -> bool;

    fn is_zero_tol(&self, tol: f64) -> bool;

    fn is_exact() -> bool {
        Self::REGIME == Regime::Exact
    }
}

impl Scalar for Rational {
    const REGIME: Regime = Regime::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles huge numerators/denominators without overflow.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse(s: &str) -> Result<Self, ParseScalarError> {
        parse_rational(s)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn is_positive_tol(&self, _tol: f64) -> bool {
        self.is_positive()
    }

    fn is_nonnegative_tol(&self, _tol: f64) -> bool {
        !self.is_negative()
    }

    fn is_zero_tol(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const REGIME: Regime = Regime::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse(s: &str) -> Result<Self, ParseScalarError> {
        let t = s.trim();
        let err = |reason: &str| ParseScalarError {
            input: s.to_string(),
            regime: Regime::Float,
            reason: reason.to_string(),
        };
        // Accept "p/q" in float files too, evaluated exactly then rounded once.
        if t.contains('/') {
            let r = parse_rational(t).map_err(|e| err(&e.reason))?;
            return Ok(Scalar::to_f64(&r));
        }
        let x: f64 = t.parse().map_err(|_| err("not a decimal number"))?;
        if !x.is_finite() {
            return Err(err("not finite"));
        }
        Ok(x)
    }

    fn render(&self) -> String {
        render_float(*self)
    }

    fn is_positive_tol(&self, tol: f64) -> bool {
        *self > tol
    }

    fn is_nonnegative_tol(&self, tol: f64) -> bool {
        *self >= -tol
    }

    fn is_zero_tol(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.11e}", x).parse().unwrap_or(x)
}

pub fn render_float(x: f64) -> String {
    let r = round_sig12(x);
    if r == 0.0 {
        return "0".to_string();
    }
    let s = format!("{}", r);
    // Very large or small magnitudes print as long digit runs; fall back to scientific.
    if s.len() > 20 {
        format!("{:.11e}", r)
    } else {
        s
    }
}

/// Parses `"p/q"`, an integer, or an exact decimal such as `"-0.125"` / `"1e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let t = s.trim();
    let err = |reason: &str| ParseScalarError {
        input: s.to_string(),
        regime: Regime::Exact,
        reason: reason.to_string(),
    };
    if t.is_empty() {
        return Err(err("empty"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("not a number"));
    }
    let all: BigInt = format!("{}{}", int_part, frac_part)
        .parse()
        .map_err(|_| err("not a number"))?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = Rational::from_integer(all);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Dense row-major matrix. Column vectors are `n x 1`, row vectors `1 x n`.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in self.data.chunks(self.cols.max(1)) {
            list.entry(&r);
        }
        list.finish()
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(Scalar::render).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j], width = width)?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch {
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch {
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer literal helper, mostly for tests and built-in examples.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn column(entries: Vec<T>) -> Result<Self, MatrixError> {
        let n = entries.len();
        Self::new(n, 1, entries)
    }

    pub fn row(entries: Vec<T>) -> Result<Self, MatrixError> {
        let n = entries.len();
        Self::new(1, n, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// All-ones column vector.
    pub fn ones_column(n: usize) -> Self {
        Self {
            rows: n,
            cols: 1,
            data: vec![T::one(); n],
        }
    }

    /// All-ones row vector.
    pub fn ones_row(n: usize) -> Self {
        Self {
            rows: 1,
            cols: n,
            data: vec![T::one(); n],
        }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ensure_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn row_vec(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Exact rational copy; binary floats convert without rounding.
    pub fn to_exact(&self) -> Matrix<Rational> {
        self.map(|x| {
            let f = x.to_f64();
            Rational::from_float(f).unwrap_or_else(|| panic!("non-finite entry {f}"))
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut data = vec![T::zero(); n * p];
        for i in 0..n {
            for k in 0..m {
                let a = &self.data[i * m + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..p {
                    let prod = a.clone() * other.data[k * p + j].clone();
                    let slot = &mut data[i * p + j];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Ok(Self {
            rows: n,
            cols: p,
            data,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self, MatrixError> {
        if self.shape() != other.shape() {
            return Err(MatrixError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `self^k` by repeated squaring; `self^0 = I`.
    pub fn pow(&self, k: u32) -> Result<Self, MatrixError> {
        let n = self.ensure_square()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn trace(&self) -> T {
        let n = self.rows.min(self.cols);
        (0..n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Dot product of two vectors of equal length, in any orientation.
    pub fn dot(&self, other: &Self) -> Result<T, MatrixError> {
        if self.data.len() != other.data.len() || (self.rows != 1 && self.cols != 1) {
            return Err(MatrixError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Largest entry in absolute value, in the matrix's own regime.
    pub fn max_abs_entry(&self) -> T {
        self.data
            .iter()
            .map(Signed::abs)
            .fold(T::zero(), |acc, x| if x > acc { x } else { acc })
    }

    /// Float regime: `tol_rel * max|entry|`; exact regime: zero.
    pub fn abs_threshold(&self, tol_rel: f64) -> f64 {
        if T::is_exact() {
            0.0
        } else {
            tol_rel * self.max_abs()
        }
    }

    /// Every entry is `> eps * max|a|` (float) or `> 0` (exact).
    pub fn is_strictly_positive(&self, eps: f64) -> bool {
        let t = self.abs_threshold(eps);
        self.data.iter().all(|x| x.is_positive_tol(t))
    }

    /// Every entry is `>= -eps * max|a|` (float) or `>= 0` (exact).
    pub fn is_nonnegative(&self, eps: f64) -> bool {
        let t = self.abs_threshold(eps);
        self.data.iter().all(|x| x.is_nonnegative_tol(t))
    }

    /// Divides by the largest absolute entry; the zero matrix is returned unchanged.
    pub fn normalize_max_abs(&self) -> Self {
        let m = self.max_abs_entry();
        if m.is_zero() {
            self.clone()
        } else {
            self.map(|x| x.clone() / m.clone())
        }
    }

    /// Max-norm of `self - other`, as f64.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, MatrixError> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Solves `self * X = rhs` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self, MatrixError> {
        let n = self.ensure_square()?;
        if rhs.rows != n {
            return Err(MatrixError::DimensionMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let m = rhs.cols;
        let mut a = self.data.clone();
        let mut b = rhs.data.clone();
        let singular_tol = if T::is_exact() {
            0.0
        } else {
            f64::EPSILON * self.max_abs() * n as f64
        };
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| {
                    a[x * n + col]
                        .abs()
                        .partial_cmp(&a[y * n + col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty range");
            if a[pivot * n + col].is_zero_tol(singular_tol) {
                return Err(MatrixError::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                for j in 0..m {
                    b.swap(col * m + j, pivot * m + j);
                }
            }
            let p = a[col * n + col].clone();
            for r in col + 1..n {
                let f = a[r * n + col].clone() / p.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = f.clone() * a[col * n + j].clone();
                    a[r * n + j] = a[r * n + j].clone() - t;
                }
                for j in 0..m {
                    let t = f.clone() * b[col * m + j].clone();
                    b[r * m + j] = b[r * m + j].clone() - t;
                }
            }
        }
        for col in (0..n).rev() {
            let p = a[col * n + col].clone();
            for j in 0..m {
                let mut acc = b[col * m + j].clone();
                for k in col + 1..n {
                    acc = acc - a[col * n + k].clone() * b[k * m + j].clone();
                }
                b[col * m + j] = acc / p.clone();
            }
        }
        Self::new(n, m, b)
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let n = self.ensure_square()?;
        self.solve(&Self::identity(n))
    }

    /// Basis of the right null space, from the reduced row echelon form.
    ///
    /// Intended for the exact regime; in the float regime pivots below
    /// `f64::EPSILON * max|a| * n` are treated as zero.
    pub fn kernel(&self) -> Vec<Self> {
        let (rows, cols) = self.shape();
        let mut a = self.data.clone();
        let tol = if T::is_exact() {
            0.0
        } else {
            f64::EPSILON * self.max_abs() * rows.max(cols) as f64
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let pivot = (r..rows)
                .filter(|&i| !a[i * cols + c].is_zero_tol(tol))
                .max_by(|&x, &y| {
                    a[x * cols + c]
                        .abs()
                        .partial_cmp(&a[y * cols + c].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(p) = pivot else { continue };
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
            let pv = a[r * cols + c].clone();
            for j in 0..cols {
                a[r * cols + j] = a[r * cols + j].clone() / pv.clone();
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let t = f.clone() * a[r * cols + j].clone();
                    a[i * cols + j] = a[i * cols + j].clone() - t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![T::zero(); cols];
                v[free] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[row * cols + free].clone();
                }
                Matrix {
                    rows: cols,
                    cols: 1,
                    data: v,
                }
            })
            .collect()
    }
}

/// Diagonal matrix with `+1`/`-1` entries, stored as its sign vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignatureMatrix {
    signs: Vec<i8>,
}

impl SignatureMatrix {
    pub fn new(signs: Vec<i64>) -> Result<Self, MatrixError> {
        let signs = signs
            .into_iter()
            .map(|s| match s {
                1 => Ok(1i8),
                -1 => Ok(-1i8),
                other => Err(MatrixError::BadSignature(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if signs.is_empty() {
            return Err(MatrixError::Empty);
        }
        Ok(Self { signs })
    }

    pub fn identity(n: usize) -> Self {
        Self { signs: vec![1; n] }
    }

    /// Signs of the entries of `v`; zero entries map to `+1`.
    pub fn from_signs_of<T: Scalar>(v: &Matrix<T>) -> Self {
        Self {
            signs: v
                .entries()
                .iter()
                .map(|x| if x.is_negative() { -1 } else { 1 })
                .collect(),
        }
    }

    /// All `2^n` signatures of size `n`, in binary counting order.
    pub fn all(n: usize) -> impl Iterator<Item = SignatureMatrix> {
        (0u64..(1u64 << n)).map(move |mask| Self {
            signs: (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        Matrix::diagonal(self.signs.iter().map(|&s| T::from_i64(s as i64)).collect())
    }

    /// `S * A * S`: entry `(i, j)` becomes `s_i * s_j * a_ij`.
    pub fn conjugate<T: Scalar>(&self, a: &Matrix<T>) -> Result<Matrix<T>, MatrixError> {
        if a.rows() != self.len() || a.cols() != self.len() {
            return Err(MatrixError::DimensionMismatch {
                left: (self.len(), self.len()),
                right: a.shape(),
            });
        }
        let mut out = a.clone();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if self.signs[i] != self.signs[j] {
                    let x = -out.get(i, j).clone();
                    out.set(i, j, x);
                }
            }
        }
        Ok(out)
    }

    /// `S * v` for a column vector or `u * S` for a row vector.
    pub fn apply_to_vector<T: Scalar>(&self, v: &Matrix<T>) -> Result<Matrix<T>, MatrixError> {
        if v.entries().len() != self.len() || (v.rows() != 1 && v.cols() != 1) {
            return Err(MatrixError::DimensionMismatch {
                left: (self.len(), 1),
                right: v.shape(),
            });
        }
        let data = v
            .entries()
            .iter()
            .zip(&self.signs)
            .map(|(x, &s)| if s < 0 { -x.clone() } else { x.clone() })
            .collect();
        Matrix::new(v.rows(), v.cols(), data)
    }
}

/// A scalar tagged with its regime.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    pub fn regime(&self) -> Regime {
        match self {
            Number::Exact(_) => Regime::Exact,
            Number::Float(_) => Regime::Float,
        }
    }

    pub fn parse(s: &str, regime: Regime) -> Result<Self, ParseScalarError> {
        Ok(match regime {
            Regime::Exact => Number::Exact(Rational::parse(s)?),
            Regime::Float => Number::Float(f64::parse(s)?),
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => Scalar::to_f64(r),
            Number::Float(x) => *x,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Number::Exact(r) => r.render(),
            Number::Float(x) => x.render(),
        }
    }
}

/// A matrix whose regime is only known at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Exact(Matrix<Rational>),
    Float(Matrix<f64>),
}

impl AnyMatrix {
    pub fn regime(&self) -> Regime {
        match self {
            AnyMatrix::Exact(_) => Regime::Exact,
            AnyMatrix::Float(_) => Regime::Float,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Exact(m) => m.shape(),
            AnyMatrix::Float(m) => m.shape(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        match self {
            AnyMatrix::Exact(m) => m.to_f64(),
            AnyMatrix::Float(m) => m.clone(),
        }
    }

    pub fn matmul(&self, other: &AnyMatrix) -> Result<AnyMatrix, MatrixError> {
        match (self, other) {
            (AnyMatrix::Exact(a), AnyMatrix::Exact(b)) => Ok(AnyMatrix::Exact(a.matmul(b)?)),
            (AnyMatrix::Float(a), AnyMatrix::Float(b)) => Ok(AnyMatrix::Float(a.matmul(b)?)),
            _ => Err(MatrixError::RegimeMismatch {
                left: self.regime(),
                right: other.regime(),
            }),
        }
    }

    pub fn pow(&self, k: u32) -> Result<AnyMatrix, MatrixError> {
        Ok(match self {
            AnyMatrix::Exact(m) => AnyMatrix::Exact(m.pow(k)?),
            AnyMatrix::Float(m) => AnyMatrix::Float(m.pow(k)?),
        })
    }

    pub fn is_strictly_positive(&self, eps: f64) -> bool {
        match self {
            AnyMatrix::Exact(m) => m.is_strictly_positive(eps),
            AnyMatrix::Float(m) => m.is_strictly_positive(eps),
        }
    }

    pub fn is_nonnegative(&self, eps: f64) -> bool {
        match self {
            AnyMatrix::Exact(m) => m.is_nonnegative(eps),
            AnyMatrix::Float(m) => m.is_nonnegative(eps),
        }
    }
}
