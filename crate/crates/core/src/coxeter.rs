//! Geometric representations of Coxeter groups.
//!
//! Generator `i` acts on column coordinate vectors in the basis of simple
//! roots as `I - 2 e_i b_i`, where `b_i` is row `i` of the form matrix.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::criterion::{analyze, analyze_exact, AnalysisConfig, AnyVerdict, VerdictKind};
use crate::matrix::{AnyMatrix, Matrix, MatrixError, Rational, Scalar};
use crate::spectral::char_poly;

/// Lehmer's number, the smallest known Salem number.
pub const LEHMER: f64 = 1.176_280_818_259_917;

/// Float spectral radii within this distance of 1 count as equal to 1.
/// Eigenvalue solvers resolve a defective eigenvalue only to about
/// `eps^(1/size)`, so this is loose; exact elements use an exact test.
pub const RHO_ONE_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoxeterError {
    #[error("rank must be at least 1 and every row must have length {n}")]
    BadShape { n: usize },
    #[error("exponent m[{i}][{j}] differs from m[{j}][{i}]")]
    AsymmetricExponent { i: usize, j: usize },
    #[error("weight c[{i}][{j}] differs from c[{j}][{i}]")]
    AsymmetricWeight { i: usize, j: usize },
    #[error("diagonal exponent m[{i}][{i}] must be 1")]
    BadDiagonal { i: usize },
    #[error("off-diagonal exponent m[{i}][{j}] must be at least 2 or inf")]
    BadExponent { i: usize, j: usize },
    #[error("infinite bond ({i}, {j}) has no weight")]
    MissingWeight { i: usize, j: usize },
    #[error("weight c[{i}][{j}] = {value} is below 1")]
    WeightBelowOne { i: usize, j: usize, value: String },
    #[error("weight c[{i}][{j}] is given for a finite bond")]
    WeightOnFiniteBond { i: usize, j: usize },
    #[error("generator index {index} is out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot parse word {0:?}")]
    BadWord(String),
    #[error("form matrix is not symmetric")]
    AsymmetricForm,
    #[error("representation check failed: {0}")]
    SanityGate(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Coxeter matrix with weights for the infinite bonds. Indices are 0-based
/// internally; words and reports use 1-based generator names.
#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterDatum {
    n: usize,
    m: Vec<Vec<Bond>>,
    c: Vec<Vec<Option<Rational>>>,
}

impl CoxeterDatum {
    /// `weights = None` gives the classical form (every infinite bond has
    /// weight 1). Otherwise `weights[i][j]` must be present exactly on
    /// infinite bonds.
    pub fn new(
        m: Vec<Vec<Bond>>,
        weights: Option<Vec<Vec<Option<Rational>>>>,
    ) -> Result<Self, CoxeterError> {
        let n = m.len();
        if n == 0 || m.iter().any(|r| r.len() != n) {
            return Err(CoxeterError::BadShape { n });
        }
        let c = match weights {
            Some(w) => {
                if w.len() != n || w.iter().any(|r| r.len() != n) {
                    return Err(CoxeterError::BadShape { n });
                }
                w
            }
            None => (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (m[i][j] == Bond::Infinite).then(Rational::one))
                        .collect()
                })
                .collect(),
        };
        for i in 0..n {
            if m[i][i] != Bond::Finite(1) {
                return Err(CoxeterError::BadDiagonal { i: i + 1 });
            }
            for j in 0..n {
                let (bi, bj) = (i + 1, j + 1);
                if m[i][j] != m[j][i] {
                    return Err(CoxeterError::AsymmetricExponent { i: bi, j: bj });
                }
                if c[i][j] != c[j][i] {
                    return Err(CoxeterError::AsymmetricWeight { i: bi, j: bj });
                }
                if i == j {
                    if c[i][j].is_some() {
                        return Err(CoxeterError::WeightOnFiniteBond { i: bi, j: bj });
                    }
                    continue;
                }
                match (m[i][j], &c[i][j]) {
                    (Bond::Finite(k), _) if k < 2 => {
                        return Err(CoxeterError::BadExponent { i: bi, j: bj })
                    }
                    (Bond::Finite(_), Some(_)) => {
                        return Err(CoxeterError::WeightOnFiniteBond { i: bi, j: bj })
                    }
                    (Bond::Infinite, None) => return Err(CoxeterError::MissingWeight { i: bi, j: bj }),
                    (Bond::Infinite, Some(w)) if *w < Rational::one() => {
                        return Err(CoxeterError::WeightBelowOne {
                            i: bi,
                            j: bj,
                            value: w.render(),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(Self { n, m, c })
    }

    /// Every pair of generators joined by an infinite bond of weight `weight`.
    pub fn free(n: usize, weight: Rational) -> Result<Self, CoxeterError> {
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Bond::Finite(1) } else { Bond::Infinite }).collect())
            .collect();
        let c = (0..n)
            .map(|i| (0..n).map(|j| (i != j).then(|| weight.clone())).collect())
            .collect();
        Self::new(m, Some(c))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.m[i][j]
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<&Rational> {
        self.c[i][j].as_ref()
    }

    pub fn exponents(&self) -> &[Vec<Bond>] {
        &self.m
    }

    pub fn weights(&self) -> &[Vec<Option<Rational>>] {
        &self.c
    }

    /// Finite exponents are all 2 or 3, so every form entry is rational.
    pub fn is_exact(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|b| matches!(b, Bond::Finite(1..=3) | Bond::Infinite))
    }

    /// Every infinite bond has weight 1.
    pub fn is_classical(&self) -> bool {
        self.c.iter().flatten().flatten().all(One::is_one)
    }
}

/// Finite sequence of 1-based generator indices; empty is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    /// Accepts `"1,2,3,2"`, `"s1 s2 s3 s2"`, `"s1s2s3s2"`, and `""` or `"e"`
    /// for the identity.
    pub fn parse(s: &str) -> Result<Self, CoxeterError> {
        let bad = || CoxeterError::BadWord(s.to_string());
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Ok(Word(Vec::new()));
        }
        let mut letters = Vec::new();
        for token in trimmed.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            if token.contains(['s', 'S']) {
                let mut parts = token.split(['s', 'S']);
                if parts.next() != Some("") {
                    return Err(bad());
                }
                for p in parts {
                    letters.push(p.parse().map_err(|_| bad())?);
                }
            } else {
                letters.push(token.parse().map_err(|_| bad())?);
            }
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn validate(&self, n: usize) -> Result<(), CoxeterError> {
        match self.0.iter().find(|&&i| i == 0 || i > n) {
            Some(&index) => Err(CoxeterError::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for i in &self.0 {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

fn exact_entry(bond: Bond, weight: Option<&Rational>) -> Rational {
    match bond {
        Bond::Finite(1) => Rational::one(),
        Bond::Finite(2) => Rational::zero(),
        Bond::Finite(3) => Rational::from_ratio(-1, 2),
        Bond::Finite(m) => unreachable!("exponent {m} has no rational cosine"),
        Bond::Infinite => -weight.expect("validated").clone(),
    }
}

fn float_entry(bond: Bond, weight: Option<&Rational>) -> f64 {
    match bond {
        Bond::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
        Bond::Infinite => -weight.expect("validated").to_f64(),
    }
}

/// Symmetric form with unit diagonal, `-cos(pi/m)` on finite bonds and
/// `-c` on infinite ones. Exact when [`CoxeterDatum::is_exact`].
pub fn bilinear_form(d: &CoxeterDatum) -> AnyMatrix {
    let n = d.rank();
    if d.is_exact() {
        let data = (0..n * n)
            .map(|k| exact_entry(d.bond(k / n, k % n), d.weight(k / n, k % n)))
            .collect();
        AnyMatrix::Exact(Matrix::new(n, n, data).expect("n x n"))
    } else {
        let data = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    1.0
                } else {
                    float_entry(d.bond(k / n, k % n), d.weight(k / n, k % n))
                }
            })
            .collect();
        AnyMatrix::Float(Matrix::new(n, n, data).expect("n x n"))
    }
}

/// `I - 2 e_i b_i` for a 0-based index `i` and form `b`.
pub fn reflection<T: Scalar>(b: &Matrix<T>, i: usize) -> Matrix<T> {
    let n = b.rows();
    let mut m = Matrix::<T>::identity(n);
    let two = T::from_i64(2);
    for j in 0..n {
        let value = m.get(i, j).clone() - two.clone() * b.get(i, j).clone();
        m.set(i, j, value);
    }
    m
}

/// Matrix of generator `i` (1-based).
pub fn generator_matrix(d: &CoxeterDatum, i: usize) -> Result<AnyMatrix, CoxeterError> {
    Word::new(vec![i]).validate(d.rank())?;
    Ok(match bilinear_form(d) {
        AnyMatrix::Exact(b) => AnyMatrix::Exact(reflection(&b, i - 1)),
        AnyMatrix::Float(b) => AnyMatrix::Float(reflection(&b, i - 1)),
    })
}

/// How the letters of a word map to matrix factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorOrder {
    /// `phi(s_a s_b) = M_a M_b`.
    LeftToRight,
    /// `phi(s_a s_b) = M_b M_a`.
    RightToLeft,
}

/// Order used by [`evaluate_word`]. Pinned by the golden tests on the
/// published rank-2, rank-3, rank-4 and rank-5 elements, which the reverse
/// order does not reproduce.
pub const FACTOR_ORDER: FactorOrder = FactorOrder::LeftToRight;

pub fn evaluate_word_in<T: Scalar>(
    b: &Matrix<T>,
    w: &Word,
    order: FactorOrder,
) -> Result<Matrix<T>, CoxeterError> {
    let n = b.ensure_square()?;
    w.validate(n)?;
    let gens: Vec<Matrix<T>> = (0..n).map(|i| reflection(b, i)).collect();
    let mut acc = Matrix::identity(n);
    let letters: Box<dyn Iterator<Item = &usize>> = match order {
        FactorOrder::LeftToRight => Box::new(w.letters().iter()),
        FactorOrder::RightToLeft => Box::new(w.letters().iter().rev()),
    };
    for &i in letters {
        acc = acc.matmul(&gens[i - 1])?;
    }
    Ok(acc)
}

/// `phi(w)`, in the regime of the form.
pub fn evaluate_word(d: &CoxeterDatum, w: &Word) -> Result<AnyMatrix, CoxeterError> {
    Ok(match bilinear_form(d) {
        AnyMatrix::Exact(b) => AnyMatrix::Exact(evaluate_word_in(&b, w, FACTOR_ORDER)?),
        AnyMatrix::Float(b) => AnyMatrix::Float(evaluate_word_in(&b, w, FACTOR_ORDER)?),
    })
}

/// `m^T b m == b`; exact in the exact regime, otherwise within
/// `tol * max(1, |b|, |m^T b m|)`.
pub fn check_form_invariance<T: Scalar>(m: &Matrix<T>, b: &Matrix<T>, tol: f64) -> Result<bool, CoxeterError> {
    let image = m.transpose().matmul(b)?.matmul(m)?;
    if image.shape() != b.shape() {
        return Err(MatrixError::DimensionMismatch {
            left: image.shape(),
            right: b.shape(),
        }
        .into());
    }
    if T::is_exact() {
        return Ok(image == *b);
    }
    let scale = 1f64.max(b.max_abs()).max(image.max_abs());
    Ok(image.max_abs_diff(b)? <= tol * scale)
}

/// Every column is entrywise `>= 0` or entrywise `<= 0`. In the float regime
/// entries within `tol * max|m|` of zero count as zero.
pub fn column_sign_check<T: Scalar>(m: &Matrix<T>, tol: f64) -> bool {
    let threshold = m.abs_threshold(tol);
    (0..m.cols()).all(|j| {
        let col = (0..m.rows()).map(|i| m.get(i, j));
        let (mut pos, mut neg) = (false, false);
        for x in col {
            if x.is_zero_tol(threshold) {
                continue;
            }
            if x.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
        }
        !(pos && neg)
    })
}

/// Inertia `(p, q, r)` of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormSignature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl fmt::Display for FormSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.r)
    }
}

fn sign_changes(coeffs: impl Iterator<Item = Rational>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for c in coeffs.filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

/// Exact inertia: the characteristic polynomial of a symmetric matrix is
/// real-rooted, so Descartes' rule of signs counts its positive and negative
/// roots exactly, with multiplicity.
fn exact_signature(b: &Matrix<Rational>) -> Result<FormSignature, CoxeterError> {
    let chi = char_poly(b)?;
    let n = chi.degree();
    let coeffs = &chi.coefficients;
    let r = coeffs.iter().rev().take_while(|c| c.is_zero()).count();
    let p = sign_changes(coeffs.iter().cloned());
    let q = sign_changes(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (n - i) % 2 == 1 { -c.clone() } else { c.clone() }),
    );
    Ok(FormSignature { p, q, r })
}

fn float_signature(b: &Matrix<f64>, tol: f64) -> FormSignature {
    let n = b.rows();
    let m = DMatrix::from_row_slice(n, n, b.entries());
    let eig = SymmetricEigen::new(m).eigenvalues;
    let scale = eig.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let zero = tol * scale;
    let (mut p, mut q, mut r) = (0, 0, 0);
    for &x in eig.iter() {
        if x.abs() <= zero {
            r += 1;
        } else if x > 0.0 {
            p += 1;
        } else {
            q += 1;
        }
    }
    FormSignature { p, q, r }
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
/// Float eigenvalues with `|x| <= tol * max|eigenvalue|` count as zero.
pub fn form_signature(b: &AnyMatrix, tol: f64) -> Result<FormSignature, CoxeterError> {
    let (rows, cols) = b.shape();
    if rows != cols {
        return Err(MatrixError::NotSquare { rows, cols }.into());
    }
    match b {
        AnyMatrix::Exact(m) => {
            if *m != m.transpose() {
                return Err(CoxeterError::AsymmetricForm);
            }
            exact_signature(m)
        }
        AnyMatrix::Float(m) => {
            if m.max_abs_diff(&m.transpose())? > tol * m.max_abs().max(1.0) {
                return Err(CoxeterError::AsymmetricForm);
            }
            Ok(float_signature(m, tol))
        }
    }
}

/// Largest modulus among the eigenvalues, from the real Schur form.
pub fn spectral_radius(m: &Matrix<f64>) -> f64 {
    let n = m.rows();
    DMatrix::from_row_slice(n, n, m.entries())
        .complex_eigenvalues()
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.norm()))
}

const GRAEFFE_STEPS: usize = 256;

/// Exact test of `rho = 1` for a matrix with integer characteristic
/// polynomial and nonzero determinant.
///
/// Root-squaring (Graeffe) steps keep the polynomial integral. If every root
/// lies in the closed unit disc the coefficients stay within binomial bounds
/// and, by Kronecker's theorem, the roots are roots of unity, so the sequence
/// cycles. A coefficient above its bound proves a root outside the disc.
/// `None` when the polynomial is not integral, the determinant vanishes, or
/// neither outcome occurs within the step limit.
pub fn spectral_radius_is_one(m: &Matrix<Rational>) -> Option<bool> {
    let chi = char_poly(m).ok()?;
    let n = chi.degree();
    if chi.coefficients.iter().any(|c| !c.is_integer()) || chi.coefficients[n].is_zero() {
        return None;
    }
    // ascending coefficients
    let mut p: Vec<BigInt> = chi.coefficients.iter().rev().map(|c| c.to_integer()).collect();
    let mut binom = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        binom[i] = &binom[i - 1] * BigInt::from(n - i + 1) / BigInt::from(i);
    }
    let mut seen = vec![p.clone()];
    for _ in 0..GRAEFFE_STEPS {
        let mut sq = vec![BigInt::zero(); n + 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in p.iter().enumerate() {
                if (i + j) % 2 == 0 {
                    let term = a * b;
                    if j % 2 == 0 {
                        sq[(i + j) / 2] += term;
                    } else {
                        sq[(i + j) / 2] -= term;
                    }
                }
            }
        }
        if n % 2 == 1 {
            sq.iter_mut().for_each(|c| *c = -c.clone());
        }
        if sq.iter().zip(&binom).any(|(c, b)| c.abs() > *b) {
            return Some(false);
        }
        if seen.contains(&sq) {
            return Some(true);
        }
        seen.push(sq.clone());
        p = sq;
    }
    None
}

/// Where the spectral radius of a classical-form element sits relative to
/// the gap `(1, LEHMER)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LehmerFlag {
    RhoOne,
    AtLeastLehmer,
    /// Inside the gap; not expected for the classical form.
    InGap,
}

impl LehmerFlag {
    pub fn classify(rho: f64) -> Self {
        if (rho - 1.0).abs() <= RHO_ONE_TOL {
            LehmerFlag::RhoOne
        } else if rho >= LEHMER - RHO_ONE_TOL {
            LehmerFlag::AtLeastLehmer
        } else {
            LehmerFlag::InGap
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LehmerFlag::RhoOne => "rho_one",
            LehmerFlag::AtLeastLehmer => "at_least_lehmer",
            LehmerFlag::InGap => "in_gap",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterReport {
    pub datum: CoxeterDatum,
    pub word: Word,
    pub form: AnyMatrix,
    pub signature: FormSignature,
    pub element: AnyMatrix,
    pub column_signs_ok: bool,
    pub form_preserved: bool,
    pub verdict: AnyVerdict,
    pub spectral_radius: f64,
    /// Only for the classical form.
    pub lehmer: Option<LehmerFlag>,
}

impl CoxeterReport {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

/// Tolerance for the float-regime representation checks and the signature.
pub const GATE_TOL: f64 = 1e-9;

/// Evaluates `phi(w)`, checks that it preserves the form and has
/// sign-coherent columns, then runs the criterion on it.
pub fn analyze_element(d: &CoxeterDatum, w: &Word, cfg: &AnalysisConfig) -> Result<CoxeterReport, CoxeterError> {
    w.validate(d.rank())?;
    let form = bilinear_form(d);
    let element = evaluate_word(d, w)?;
    let (column_signs_ok, form_preserved) = match (&element, &form) {
        (AnyMatrix::Exact(h), AnyMatrix::Exact(b)) => (column_sign_check(h, 0.0), check_form_invariance(h, b, 0.0)?),
        (AnyMatrix::Float(h), AnyMatrix::Float(b)) => {
            (column_sign_check(h, GATE_TOL), check_form_invariance(h, b, GATE_TOL)?)
        }
        _ => unreachable!("element and form share a regime"),
    };
    if !form_preserved {
        return Err(CoxeterError::SanityGate(format!("phi({w}) does not preserve the form")));
    }
    if !column_signs_ok {
        return Err(CoxeterError::SanityGate(format!("phi({w}) has a column with mixed signs")));
    }
    let signature = form_signature(&form, GATE_TOL)?;
    let mut verdict = match &element {
        AnyMatrix::Exact(h) => analyze_exact(h, cfg),
        AnyMatrix::Float(h) => AnyVerdict::Float(analyze(h, cfg)),
    };
    let exact_rho_one = match &element {
        AnyMatrix::Exact(h) => spectral_radius_is_one(h),
        AnyMatrix::Float(_) => None,
    };
    let spectral_radius = match exact_rho_one {
        Some(true) => 1.0,
        _ => spectral_radius(&element.to_f64()),
    };
    let lehmer = d.is_classical().then(|| match exact_rho_one {
        Some(true) => LehmerFlag::RhoOne,
        Some(false) if spectral_radius >= LEHMER - RHO_ONE_TOL => LehmerFlag::AtLeastLehmer,
        Some(false) => LehmerFlag::InGap,
        None => LehmerFlag::classify(spectral_radius),
    });
    let positive_at_one = match &verdict {
        AnyVerdict::Exact(v) => v.k_positive == Some(1),
        AnyVerdict::Float(v) => v.k_positive == Some(1),
    };
    if verdict.kind() == VerdictKind::SimpleDominant && positive_at_one {
        let note = "Z is already positive at k = 1".to_string();
        match &mut verdict {
            AnyVerdict::Exact(v) => v.note(note),
            AnyVerdict::Float(v) => v.note(note),
        }
    }
    Ok(CoxeterReport {
        datum: d.clone(),
        word: w.clone(),
        form,
        signature,
        element,
        column_signs_ok,
        form_preserved,
        verdict,
        spectral_radius,
        lehmer,
    })
}
