//! File formats, run configuration, report rendering and the two commands.
//!
//! Matrix file:
//! `{"n":2, "mode":"exact", "entries":[["-11","14"],["-26","29"]],
//!   "eigendata":{"lambda":"15","v":["7/20","13/20"],"u":["-10/3","10/3"]}}`
//!
//! Coxeter datum file (`"inf"` marks an infinite bond, `c` is optional and
//! defaults to weight 1 on every infinite bond):
//! `{"n":3, "m":[[1,"inf","inf"],["inf",1,"inf"],["inf","inf",1]],
//!   "c":[[null,"2","2"],["2",null,"2"],["2","2",null]]}`

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::coxeter::{analyze_element, Bond, CoxeterDatum, CoxeterError, CoxeterReport, Word};
use crate::criterion::{
    analyze, analyze_exact, analyze_with_eigendata, check_row_stochastic, stochastic_check,
    AnalysisConfig, AnyVerdict, Certificate, CriterionError, NeverCertificate, PositivityOptions,
    Verdict,
};
use crate::matrix::{
    parse_rational, round_sig12, AnyMatrix, Matrix, MatrixError, ParseScalarError, Rational, Regime,
    Scalar, DEFAULT_EPS,
};
use crate::spectral::{NormalizeOptions, PowerOptions};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid input: {0}")]
    Format(String),
    #[error(transparent)]
    Parse(#[from] ParseScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("file is in {file} mode but {requested} mode was requested")]
    RegimeMismatch { file: Regime, requested: Regime },
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Command-line settings. Tolerances left as `None` take their defaults.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub tol: Option<f64>,
    pub tol_orth: Option<f64>,
    pub tol_zero: Option<f64>,
    pub eps_pos: Option<f64>,
    pub k_max: Option<usize>,
    pub max_iter: Option<usize>,
    pub seed: u64,
    pub mode: Option<Regime>,
    pub output: OutputFormat,
    /// Analyse the spectral radius even when every row sums to 1.
    pub ignore_row_sums: bool,
}

impl RunConfig {
    fn check(&self) -> Result<(), IoError> {
        for (name, value) in [
            ("tol", self.tol),
            ("tol-orth", self.tol_orth),
            ("tol-zero", self.tol_zero),
            ("eps-pos", self.eps_pos),
        ] {
            if let Some(x) = value {
                if !(x > 0.0 && x.is_finite()) {
                    return Err(IoError::Format(format!("--{name} must be a positive number")));
                }
            }
        }
        if self.k_max.is_some_and(|k| k < 2) {
            return Err(IoError::Format("--k-max must be at least 2".into()));
        }
        if self.max_iter == Some(0) {
            return Err(IoError::Format("--max-iter must be positive".into()));
        }
        Ok(())
    }

    /// Tolerance flags have no effect on exact arithmetic.
    fn exact_mode_warnings(&self) -> Vec<String> {
        [
            ("tol-orth", self.tol_orth.is_some()),
            ("tol-zero", self.tol_zero.is_some()),
            ("eps-pos", self.eps_pos.is_some()),
        ]
        .iter()
        .filter(|(_, set)| *set)
        .map(|(name, _)| format!("warning: --{name} is ignored by exact arithmetic"))
        .collect()
    }

    pub fn analysis_config(&self) -> AnalysisConfig {
        let defaults = AnalysisConfig::default();
        let tol = self.tol.unwrap_or(defaults.power.tol);
        AnalysisConfig {
            power: PowerOptions {
                tol,
                max_iter: self.max_iter.unwrap_or(defaults.power.max_iter),
                seed: self.seed,
            },
            normalize: NormalizeOptions {
                tol_orth: self.tol_orth.unwrap_or(defaults.normalize.tol_orth),
                tol_zero: self.tol_zero.unwrap_or(defaults.normalize.tol_zero),
            },
            positivity: PositivityOptions {
                k_max: self.k_max.unwrap_or(defaults.positivity.k_max),
                eps: self.eps_pos.unwrap_or(DEFAULT_EPS),
                conv_tol: tol,
            },
            probe_tol: tol,
            eigen_tol: tol.max(defaults.eigen_tol),
            ..defaults
        }
    }
}

/// Eigendata supplied with a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigendata<T> {
    pub lambda: T,
    pub v: Matrix<T>,
    pub u: Matrix<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixInput {
    Exact {
        a: Matrix<Rational>,
        eigendata: Option<Eigendata<Rational>>,
    },
    Float {
        a: Matrix<f64>,
        eigendata: Option<Eigendata<f64>>,
    },
}

impl MatrixInput {
    pub fn regime(&self) -> Regime {
        match self {
            MatrixInput::Exact { .. } => Regime::Exact,
            MatrixInput::Float { .. } => Regime::Float,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            MatrixInput::Exact { a, .. } => a.rows(),
            MatrixInput::Float { a, .. } => a.rows(),
        }
    }

    pub fn to_float(&self) -> MatrixInput {
        match self {
            MatrixInput::Exact { a, eigendata } => MatrixInput::Float {
                a: a.to_f64(),
                eigendata: eigendata.as_ref().map(|e| Eigendata {
                    lambda: e.lambda.to_f64(),
                    v: e.v.to_f64(),
                    u: e.u.to_f64(),
                }),
            },
            other => other.clone(),
        }
    }
}

fn scalar_text(v: &Value) -> Result<String, IoError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(IoError::Format(format!("expected a number or string, got {other}"))),
    }
}

fn parse_scalar<T: Scalar>(v: &Value) -> Result<T, IoError> {
    Ok(T::parse(&scalar_text(v)?)?)
}

fn parse_vector<T: Scalar>(v: &Value, n: usize, what: &str) -> Result<Vec<T>, IoError> {
    let items = v
        .as_array()
        .ok_or_else(|| IoError::Format(format!("{what} must be an array")))?;
    if items.len() != n {
        return Err(IoError::Format(format!("{what} must have {n} entries, got {}", items.len())));
    }
    items.iter().map(parse_scalar).collect()
}

fn parse_rows<T: Scalar>(v: &Value, n: usize) -> Result<Matrix<T>, IoError> {
    let rows = v
        .as_array()
        .ok_or_else(|| IoError::Format("entries must be an array of rows".into()))?;
    if rows.len() != n {
        return Err(IoError::Format(format!("expected {n} rows, got {}", rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, n, &format!("row {}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn parse_eigendata<T: Scalar>(v: &Value, n: usize) -> Result<Eigendata<T>, IoError> {
    let field = |name: &str| {
        v.get(name)
            .ok_or_else(|| IoError::Format(format!("eigendata is missing \"{name}\"")))
    };
    Ok(Eigendata {
        lambda: parse_scalar(field("lambda")?)?,
        v: Matrix::column(parse_vector(field("v")?, n, "eigendata.v")?)?,
        u: Matrix::row(parse_vector(field("u")?, n, "eigendata.u")?)?,
    })
}

fn object(text: &str) -> Result<Map<String, Value>, IoError> {
    match serde_json::from_str::<Value>(text).map_err(|e| IoError::Json(e.to_string()))? {
        Value::Object(m) => Ok(m),
        _ => Err(IoError::Format("top level must be an object".into())),
    }
}

fn dimension(doc: &Map<String, Value>) -> Result<usize, IoError> {
    match doc.get("n").and_then(Value::as_u64) {
        Some(n) if n > 0 => Ok(n as usize),
        _ => Err(IoError::Format("\"n\" must be a positive integer".into())),
    }
}

/// Parses a matrix file. Exact mode reads decimals exactly.
pub fn parse_matrix_file(text: &str) -> Result<MatrixInput, IoError> {
    let doc = object(text)?;
    let n = dimension(&doc)?;
    let mode = match doc.get("mode") {
        None => Regime::Exact,
        Some(m) => serde_json::from_value(m.clone())
            .map_err(|_| IoError::Format("\"mode\" must be \"exact\" or \"float\"".into()))?,
    };
    let entries = doc
        .get("entries")
        .ok_or_else(|| IoError::Format("missing \"entries\"".into()))?;
    let eig = doc.get("eigendata").filter(|v| !v.is_null());
    Ok(match mode {
        Regime::Exact => MatrixInput::Exact {
            a: parse_rows(entries, n)?,
            eigendata: eig.map(|e| parse_eigendata(e, n)).transpose()?,
        },
        Regime::Float => MatrixInput::Float {
            a: parse_rows(entries, n)?,
            eigendata: eig.map(|e| parse_eigendata(e, n)).transpose()?,
        },
    })
}

fn scalar_json<T: Scalar>(x: &T) -> Value {
    if T::is_exact() {
        Value::String(x.render())
    } else {
        json_float(x.to_f64())
    }
}

fn json_float(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig12(x)).map_or(Value::Null, Value::Number)
}

/// Rows of the matrix; rationals as `"p/q"` strings, floats as numbers.
pub fn matrix_json<T: Scalar>(m: &Matrix<T>) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(scalar_json).collect()))
            .collect(),
    )
}

fn vector_json<T: Scalar>(m: &Matrix<T>) -> Value {
    Value::Array(m.entries().iter().map(scalar_json).collect())
}

fn any_matrix_json(m: &AnyMatrix) -> Value {
    match m {
        AnyMatrix::Exact(m) => matrix_json(m),
        AnyMatrix::Float(m) => matrix_json(m),
    }
}

/// Serializes a matrix as a matrix file. Exact files round-trip exactly.
pub fn render_matrix_file(input: &MatrixInput) -> String {
    let mut doc = Map::new();
    doc.insert("n".into(), json!(input.n()));
    doc.insert("mode".into(), json!(input.regime()));
    let (entries, eig) = match input {
        MatrixInput::Exact { a, eigendata } => (
            matrix_json(a),
            eigendata
                .as_ref()
                .map(|e| json!({"lambda": scalar_json(&e.lambda), "v": vector_json(&e.v), "u": vector_json(&e.u)})),
        ),
        MatrixInput::Float { a, eigendata } => (
            Value::Array(
                a.to_rows()
                    .iter()
                    .map(|r| Value::Array(r.iter().map(|x| json!(format!("{x:e}"))).collect()))
                    .collect(),
            ),
            eigendata.as_ref().map(|e| {
                let full = |m: &Matrix<f64>| Value::Array(m.entries().iter().map(|x| json!(format!("{x:e}"))).collect());
                json!({"lambda": format!("{:e}", e.lambda), "v": full(&e.v), "u": full(&e.u)})
            }),
        ),
    };
    doc.insert("entries".into(), entries);
    if let Some(e) = eig {
        doc.insert("eigendata".into(), e);
    }
    serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable")
}

fn parse_bond(v: &Value) -> Result<Bond, IoError> {
    match v {
        Value::String(s) if matches!(s.trim(), "inf" | "infinity" | "∞") => Ok(Bond::Infinite),
        Value::Number(n) => n
            .as_u64()
            .and_then(|k| u32::try_from(k).ok())
            .map(Bond::Finite)
            .ok_or_else(|| IoError::Format(format!("bad exponent {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map(Bond::Finite)
            .map_err(|_| IoError::Format(format!("bad exponent {s:?}"))),
        other => Err(IoError::Format(format!("bad exponent {other}"))),
    }
}

fn square_table<'a>(v: &'a Value, n: usize, what: &str) -> Result<Vec<&'a Vec<Value>>, IoError> {
    let rows = v
        .as_array()
        .ok_or_else(|| IoError::Format(format!("\"{what}\" must be an array of rows")))?;
    if rows.len() != n {
        return Err(IoError::Format(format!("\"{what}\" must have {n} rows")));
    }
    rows.iter()
        .map(|r| match r.as_array() {
            Some(r) if r.len() == n => Ok(r),
            _ => Err(IoError::Format(format!("every row of \"{what}\" must have {n} entries"))),
        })
        .collect()
}

pub fn parse_coxeter_datum(text: &str) -> Result<CoxeterDatum, IoError> {
    let doc = object(text)?;
    let n = dimension(&doc)?;
    let m = square_table(
        doc.get("m").ok_or_else(|| IoError::Format("missing \"m\"".into()))?,
        n,
        "m",
    )?
    .into_iter()
    .map(|r| r.iter().map(parse_bond).collect::<Result<Vec<_>, _>>())
    .collect::<Result<Vec<_>, _>>()?;
    let c = match doc.get("c").filter(|v| !v.is_null()) {
        None => None,
        Some(c) => Some(
            square_table(c, n, "c")?
                .into_iter()
                .map(|r| {
                    r.iter()
                        .map(|x| match x {
                            Value::Null => Ok(None),
                            other => Ok(Some(parse_rational(&scalar_text(other)?)?)),
                        })
                        .collect::<Result<Vec<_>, IoError>>()
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(CoxeterDatum::new(m, c)?)
}

pub fn datum_json(d: &CoxeterDatum) -> Value {
    let m = d
        .exponents()
        .iter()
        .map(|r| {
            r.iter()
                .map(|b| match b {
                    Bond::Finite(k) => json!(k),
                    Bond::Infinite => json!("inf"),
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let c = d
        .weights()
        .iter()
        .map(|r| r.iter().map(|w| w.as_ref().map(|w| w.render())).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    json!({"n": d.rank(), "m": m, "c": c})
}

fn certificate_json<T: Scalar>(c: &Certificate<T>) -> Value {
    match c {
        Certificate::Orthogonal { uv, uv_unit } => json!({
            "type": "orthogonal_eigenvectors",
            "uv": scalar_json(uv),
            "uv_normalized": json_float(*uv_unit),
        }),
        Certificate::GeometricMultiplicity { right_dim, left_dim } => json!({
            "type": "geometric_multiplicity",
            "right_dim": right_dim,
            "left_dim": left_dim,
        }),
        Certificate::Never(NeverCertificate::PowerCycle { k, period }) => json!({
            "type": "power_cycle",
            "k": k,
            "period": period,
        }),
        Certificate::Never(NeverCertificate::NegativeLimit {
            k,
            period,
            row,
            col,
            value,
        }) => json!({
            "type": "negative_limit",
            "k": k,
            "period": period,
            "row": row + 1,
            "col": col + 1,
            "value": json_float(*value),
        }),
    }
}

fn verdict_json<T: Scalar>(v: &Verdict<T>) -> Value {
    let mut o = Map::new();
    o.insert("regime".into(), json!(T::REGIME));
    o.insert("kind".into(), json!(v.kind));
    o.insert("exit_code".into(), json!(v.kind.exit_code()));
    o.insert("lambda".into(), v.lambda.as_ref().map_or(Value::Null, scalar_json));
    o.insert("v".into(), v.v.as_ref().map_or(Value::Null, vector_json));
    o.insert("u".into(), v.u.as_ref().map_or(Value::Null, vector_json));
    o.insert(
        "signature".into(),
        v.signature
            .as_ref()
            .map_or(Value::Null, |s| json!(s.signs())),
    );
    o.insert("k_positive".into(), json!(v.k_positive));
    o.insert("z".into(), v.z.as_ref().map_or(Value::Null, matrix_json));
    o.insert("limit".into(), v.limit.as_ref().map_or(Value::Null, matrix_json));
    o.insert(
        "multiplicity_estimate".into(),
        v.multiplicity_estimate.map_or(Value::Null, json_float),
    );
    o.insert(
        "certificate".into(),
        v.certificate.as_ref().map_or(Value::Null, certificate_json),
    );
    o.insert("k_max_reached".into(), json!(v.k_max_reached));
    o.insert("diagnostics".into(), json!(v.diagnostics));
    Value::Object(o)
}

pub fn any_verdict_json(v: &AnyVerdict) -> Value {
    match v {
        AnyVerdict::Exact(v) => verdict_json(v),
        AnyVerdict::Float(v) => verdict_json(v),
    }
}

/// Analysis report: the verdict fields at top level plus input metadata.
pub fn analyze_report_json(input: &MatrixInput, verdict: &AnyVerdict) -> Value {
    let mut o = match any_verdict_json(verdict) {
        Value::Object(o) => o,
        _ => unreachable!(),
    };
    o.insert("schema_version".into(), json!(SCHEMA_VERSION));
    o.insert("command".into(), json!("analyze"));
    o.insert("n".into(), json!(input.n()));
    o.insert("input_mode".into(), json!(input.regime()));
    Value::Object(o)
}

pub fn coxeter_report_json(r: &CoxeterReport) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": "coxeter",
        "datum": datum_json(&r.datum),
        "word": r.word.to_string(),
        "letters": r.word.letters(),
        "form_regime": r.form.regime(),
        "form": any_matrix_json(&r.form),
        "signature": {"p": r.signature.p, "q": r.signature.q, "r": r.signature.r},
        "element": any_matrix_json(&r.element),
        "gates": {"column_signs": r.column_signs_ok, "form_preserved": r.form_preserved},
        "spectral_radius": json_float(r.spectral_radius),
        "lehmer": r.lehmer.map(|f| f.as_str()),
        "kind": r.verdict.kind(),
        "exit_code": r.exit_code(),
        "verdict": any_verdict_json(&r.verdict),
    })
}

fn render_matrix_text<T: Scalar>(m: &Matrix<T>, indent: &str) -> String {
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.render()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}[{}]", line.join("  "));
    }
    out
}

fn render_any_matrix_text(m: &AnyMatrix, indent: &str) -> String {
    match m {
        AnyMatrix::Exact(m) => render_matrix_text(m, indent),
        AnyMatrix::Float(m) => render_matrix_text(m, indent),
    }
}

fn render_vector<T: Scalar>(m: &Matrix<T>) -> String {
    let parts: Vec<String> = m.entries().iter().map(|x| x.render()).collect();
    format!("({})", parts.join(", "))
}

fn verdict_text<T: Scalar>(v: &Verdict<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {} ({} arithmetic)", v.kind, T::REGIME);
    if let Some(l) = &v.lambda {
        let _ = writeln!(out, "lambda: {}", l.render());
    }
    if let Some(x) = &v.v {
        let _ = writeln!(out, "v: {}", render_vector(x));
    }
    if let Some(x) = &v.u {
        let _ = writeln!(out, "u: {}", render_vector(x));
    }
    if let Some(s) = v.signature.as_ref().filter(|s| !s.is_identity()) {
        let _ = writeln!(out, "signature: {:?}", s.signs());
    }
    if let Some(k) = v.k_positive {
        let _ = writeln!(out, "Z^{k} and Z^{} are positive", k + 1);
    }
    if let Some(z) = &v.z {
        let _ = writeln!(out, "Z:");
        out.push_str(&render_matrix_text(z, "  "));
    }
    if let Some(m) = v.multiplicity_estimate {
        let _ = writeln!(out, "multiplicity estimate: {}", m.render());
    }
    if let Some(l) = &v.limit {
        let _ = writeln!(out, "limit of (A/lambda)^k:");
        out.push_str(&render_matrix_text(l, "  "));
    }
    if let Some(c) = &v.certificate {
        let line = match c {
            Certificate::Orthogonal { uv, .. } => format!("u.v = {}", uv.render()),
            Certificate::GeometricMultiplicity { right_dim, left_dim } => {
                format!("eigenspace dimensions {right_dim} (right), {left_dim} (left)")
            }
            Certificate::Never(NeverCertificate::PowerCycle { k, period }) => {
                format!("Z^{k} is a positive multiple of Z^{}", k - period)
            }
            Certificate::Never(NeverCertificate::NegativeLimit {
                period, row, col, value, ..
            }) => format!(
                "normalized powers of Z (period {period}) converge with entry ({}, {}) = {}",
                row + 1,
                col + 1,
                value.render()
            ),
        };
        let _ = writeln!(out, "certificate: {line}");
    }
    if v.k_max_reached {
        let _ = writeln!(out, "k_max reached");
    }
    for d in &v.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
    out
}

pub fn any_verdict_text(v: &AnyVerdict) -> String {
    match v {
        AnyVerdict::Exact(v) => verdict_text(v),
        AnyVerdict::Float(v) => verdict_text(v),
    }
}

pub fn coxeter_report_text(r: &CoxeterReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "rank: {}", r.datum.rank());
    let _ = writeln!(out, "word: {}", r.word);
    let _ = writeln!(out, "form ({}):", r.form.regime());
    out.push_str(&render_any_matrix_text(&r.form, "  "));
    let _ = writeln!(out, "form signature: {}", r.signature);
    let _ = writeln!(out, "phi(w):");
    out.push_str(&render_any_matrix_text(&r.element, "  "));
    let _ = writeln!(
        out,
        "checks: form preserved = {}, column signs = {}",
        r.form_preserved, r.column_signs_ok
    );
    let _ = writeln!(out, "spectral radius: {}", r.spectral_radius.render());
    if let Some(f) = r.lehmer {
        let _ = writeln!(out, "lehmer: {}", f.as_str());
    }
    out.push_str(&any_verdict_text(&r.verdict));
    out
}

fn render(value: Value, text: String, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Text => text,
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn failure(e: IoError) -> Self {
        Self {
            exit_code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Reads, parses and analyses a matrix file.
pub fn run_analyze(path: &Path, cfg: &RunConfig) -> Result<(MatrixInput, AnyVerdict, Vec<String>), IoError> {
    cfg.check()?;
    let mut input = parse_matrix_file(&read(path)?)?;
    match (input.regime(), cfg.mode) {
        (Regime::Float, Some(Regime::Exact)) => {
            return Err(IoError::RegimeMismatch {
                file: Regime::Float,
                requested: Regime::Exact,
            })
        }
        (Regime::Exact, Some(Regime::Float)) => input = input.to_float(),
        _ => {}
    }
    let ac = cfg.analysis_config();
    let mut warnings = Vec::new();
    let verdict = match &input {
        MatrixInput::Exact { a, eigendata } => {
            warnings = cfg.exact_mode_warnings();
            match eigendata {
                Some(e) => AnyVerdict::Exact(analyze_with_eigendata(
                    a,
                    e.lambda.clone(),
                    e.v.clone(),
                    e.u.clone(),
                    &ac,
                )?),
                None => {
                    let general = analyze_exact(a, &ac);
                    if row_sums_route(a, &general, cfg, &ac) {
                        AnyVerdict::Exact(stochastic(a, &general, &ac)?)
                    } else {
                        general
                    }
                }
            }
        }
        MatrixInput::Float { a, eigendata } => AnyVerdict::Float(match eigendata {
            Some(e) => analyze_with_eigendata(a, e.lambda, e.v.clone(), e.u.clone(), &ac)?,
            None => {
                let general = AnyVerdict::Float(analyze(a, &ac));
                if row_sums_route(a, &general, cfg, &ac) {
                    stochastic(a, &general, &ac)?
                } else {
                    let AnyVerdict::Float(v) = general else { unreachable!() };
                    v
                }
            }
        }),
    };
    Ok((input, verdict, warnings))
}

/// Unit row sums make 1 an eigenvalue with `v = 1/n`. When the general
/// analysis settled on a different eigenvalue, the question asked is about 1.
fn row_sums_route<T: Scalar>(a: &Matrix<T>, general: &AnyVerdict, cfg: &RunConfig, ac: &AnalysisConfig) -> bool {
    if cfg.ignore_row_sums || check_row_stochastic(a, ac.eigen_tol).is_err() {
        return false;
    }
    let lambda = match general {
        AnyVerdict::Exact(v) => v.lambda.as_ref().map(|l| (l.to_f64(), crate::spectral::is_one(l, 0.0))),
        AnyVerdict::Float(v) => v.lambda.map(|l| (l, (l - 1.0).abs() <= ac.eigen_tol)),
    };
    !matches!(lambda, Some((_, true)))
}

fn stochastic<T: Scalar>(a: &Matrix<T>, general: &AnyVerdict, ac: &AnalysisConfig) -> Result<Verdict<T>, IoError> {
    let mut v = stochastic_check(a, ac)?;
    let found = match general {
        AnyVerdict::Exact(g) => g.lambda.as_ref().map(Scalar::render),
        AnyVerdict::Float(g) => g.lambda.map(|l| l.render()),
    };
    v.note(match found {
        Some(l) => format!("every row sums to 1: testing the eigenvalue 1 with v = 1/n (the dominant candidate is {l})"),
        None => "every row sums to 1: testing the eigenvalue 1 with v = 1/n".to_string(),
    });
    Ok(v)
}

/// `analyze` command: exit 0 for a simple dominant eigenvalue, 2 for a
/// certified negative answer, 3 when undecided, 1 on input errors.
pub fn cmd_analyze(path: &Path, cfg: &RunConfig) -> CommandOutput {
    match run_analyze(path, cfg) {
        Ok((input, verdict, warnings)) => CommandOutput {
            exit_code: verdict.exit_code(),
            stdout: render(
                analyze_report_json(&input, &verdict),
                any_verdict_text(&verdict),
                cfg.output,
            ),
            stderr: warnings.iter().map(|w| format!("{w}\n")).collect(),
        },
        Err(e) => CommandOutput::failure(e),
    }
}

pub fn run_coxeter(group_path: &Path, word: &str, cfg: &RunConfig) -> Result<CoxeterReport, IoError> {
    cfg.check()?;
    let datum = parse_coxeter_datum(&read(group_path)?)?;
    let word = Word::parse(word)?;
    word.validate(datum.rank())?;
    Ok(analyze_element(&datum, &word, &cfg.analysis_config())?)
}

/// `coxeter` command; exit codes as for [`cmd_analyze`].
pub fn cmd_coxeter(group_path: &Path, word: &str, cfg: &RunConfig) -> CommandOutput {
    match run_coxeter(group_path, word, cfg) {
        Ok(report) => CommandOutput {
            exit_code: report.exit_code(),
            stdout: render(coxeter_report_json(&report), coxeter_report_text(&report), cfg.output),
            stderr: String::new(),
        },
        Err(e) => CommandOutput::failure(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::VerdictKind;

    const LAMBDA_15: &str = r#"{"n":2, "mode":"exact", "entries":[["-11","14"],["-26","29"]],
        "eigendata":{"lambda":"15","v":["7/20","13/20"],"u":["-10/3","10/3"]}}"#;

    #[test]
    fn parses_matrix_file() {
        let MatrixInput::Exact { a, eigendata } = parse_matrix_file(LAMBDA_15).unwrap() else {
            panic!("expected exact")
        };
        assert_eq!(a, Matrix::from_i64_rows(&[&[-11, 14], &[-26, 29]]).unwrap());
        let e = eigendata.unwrap();
        assert_eq!(e.lambda, Rational::from_i64(15));
        assert_eq!(e.u.shape(), (1, 2));
    }

    #[test]
    fn numbers_and_decimals_parse_exactly() {
        let input = parse_matrix_file(r#"{"n":1,"mode":"exact","entries":[[0.1]]}"#).unwrap();
        let MatrixInput::Exact { a, .. } = input else { panic!() };
        assert_eq!(*a.get(0, 0), Rational::from_ratio(1, 10));
    }

    #[test]
    fn rejects_bad_files() {
        for bad in [
            r#"{"n":2,"mode":"exact","entries":[["1","1/0"],["0","1"]]}"#,
            r#"{"n":2,"mode":"exact","entries":[["1","2"]]}"#,
            r#"{"n":2,"mode":"complex","entries":[["1","2"],["3","4"]]}"#,
            r#"{"mode":"exact","entries":[["1"]]}"#,
            "not json",
        ] {
            assert!(parse_matrix_file(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_round_trip() {
        let input = parse_matrix_file(LAMBDA_15).unwrap();
        assert_eq!(parse_matrix_file(&render_matrix_file(&input)).unwrap(), input);
        let float = input.to_float();
        assert_eq!(parse_matrix_file(&render_matrix_file(&float)).unwrap(), float);
    }

    #[test]
    fn datum_file() {
        let d = parse_coxeter_datum(
            r#"{"n":3, "m":[[1,"inf","inf"],["inf",1,"inf"],["inf","inf",1]],
                "c":[[null,"2","2"],["2",null,"2"],["2","2",null]]}"#,
        )
        .unwrap();
        assert_eq!(d, CoxeterDatum::free(3, Rational::from_i64(2)).unwrap());
        assert_eq!(parse_coxeter_datum(&datum_json(&d).to_string()).unwrap(), d);
        let classical = parse_coxeter_datum(r#"{"n":2,"m":[[1,"inf"],["inf",1]]}"#).unwrap();
        assert!(classical.is_classical());
        let err = parse_coxeter_datum(r#"{"n":2,"m":[[1,"inf"],["inf",1]],"c":[[null,null],[null,null]]}"#);
        assert!(matches!(err, Err(IoError::Coxeter(CoxeterError::MissingWeight { .. }))));
        let err = parse_coxeter_datum(r#"{"n":2,"m":[[1,3],[4,1]]}"#);
        assert!(matches!(err, Err(IoError::Coxeter(CoxeterError::AsymmetricExponent { .. }))));
    }

    #[test]
    fn report_schema() {
        let input = parse_matrix_file(LAMBDA_15).unwrap();
        let MatrixInput::Exact { a, eigendata: Some(e) } = &input else { panic!() };
        let v = analyze_with_eigendata(a, e.lambda.clone(), e.v.clone(), e.u.clone(), &AnalysisConfig::default())
            .unwrap();
        let verdict = AnyVerdict::Exact(v);
        let j = analyze_report_json(&input, &verdict);
        assert_eq!(j["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(j["kind"], json!("simple_dominant"));
        assert_eq!(j["k_positive"], json!(1));
        assert_eq!(j["z"], json!([["36/5", "21/5"], ["39/5", "54/5"]]));
        assert_eq!(j["k_max_reached"], json!(false));
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains(r#""kind":"simple_dominant""#));
        assert!(text.contains(r#""k_positive":1"#));
        assert!(any_verdict_text(&verdict).contains("simple_dominant"));
    }

    #[test]
    fn orthogonal_certificate_in_report() {
        let a = Matrix::from_i64_rows(&[&[-1, 2, 0], &[-2, 2, 1], &[-2, 3, 0]]).unwrap();
        let verdict = analyze_exact(&a, &AnalysisConfig::default());
        assert_eq!(verdict.kind(), VerdictKind::MultiplicityAtLeastTwo);
        let j = any_verdict_json(&verdict);
        assert_eq!(j["certificate"]["type"], json!("orthogonal_eigenvectors"));
        assert_eq!(j["certificate"]["uv"], json!("0"));
    }

    #[test]
    fn inconclusive_report_flags_k_max() {
        let mut v: Verdict<f64> = Verdict::new(VerdictKind::Inconclusive);
        v.k_max_reached = true;
        let j = any_verdict_json(&AnyVerdict::Float(v));
        assert_eq!(j["k_max_reached"], json!(true));
        assert_eq!(j["exit_code"], json!(3));
    }

    #[test]
    fn floats_render_to_twelve_digits() {
        assert_eq!(json_float(397.99748742132397), json!(397.997487421));
        assert_eq!(json_float(f64::NAN), Value::Null);
    }

    #[test]
    fn config_validation() {
        let cfg = RunConfig {
            tol: Some(-1.0),
            ..RunConfig::default()
        };
        assert!(cfg.check().is_err());
        let cfg = RunConfig {
            k_max: Some(1),
            ..RunConfig::default()
        };
        assert!(cfg.check().is_err());
        let cfg = RunConfig {
            tol_orth: Some(1e-6),
            ..RunConfig::default()
        };
        assert_eq!(cfg.exact_mode_warnings().len(), 1);
        assert_eq!(cfg.analysis_config().normalize.tol_orth, 1e-6);
    }
}
