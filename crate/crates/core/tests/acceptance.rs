//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::time::{Duration, Instant};

use spectral_dominance::coxeter::{
    analyze_element, bilinear_form, evaluate_word, generator_matrix, Bond, CoxeterDatum, FormSignature, Word,
};
use spectral_dominance::criterion::{
    analyze, analyze_exact, analyze_with_eigendata, build_conjugate, condition_vi_check, conjugate_matrix,
    eventual_positivity, nonnegative_proposition, power_identity_check, stochastic_check, AnalysisConfig,
    AnyVerdict, Certificate, ConditionVi, NonnegativeOutcome, Positivity, PositivityOptions, Verdict, VerdictKind,
};
use spectral_dominance::matrix::{AnyMatrix, Matrix, Rational, Scalar};
use spectral_dominance::spectral::{char_poly, semisimplicity_probe, ProbeOutcome};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Check {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn q(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_i64_rows(rows).unwrap()
}

fn r(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

fn qcol(entries: &[(i64, i64)]) -> Matrix<Rational> {
    Matrix::column(entries.iter().map(|&(a, b)| r(a, b)).collect()).unwrap()
}

fn f(rows: &[&[f64]]) -> Matrix<f64> {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn close(a: &Matrix<f64>, b: &Matrix<f64>, tol: f64) -> Check {
    let d = a.max_abs_diff(b).map_err(|e| e.to_string())?;
    ensure(d <= tol, || format!("max difference {d:e} exceeds {tol:e}"))
}

fn exact(m: &AnyMatrix) -> Result<&Matrix<Rational>, String> {
    match m {
        AnyMatrix::Exact(m) => Ok(m),
        AnyMatrix::Float(_) => Err("expected an exact matrix".into()),
    }
}

fn float_verdict(v: &AnyVerdict) -> Result<&Verdict<f64>, String> {
    match v {
        AnyVerdict::Float(v) => Ok(v),
        AnyVerdict::Exact(_) => Err("expected a float verdict".into()),
    }
}

fn free_with(n: usize, weights: &[((usize, usize), i64)]) -> CoxeterDatum {
    let m = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Bond::Finite(1) } else { Bond::Infinite }).collect())
        .collect();
    let mut c: Vec<Vec<Option<Rational>>> = (0..n)
        .map(|i| (0..n).map(|j| (i != j).then(|| r(1, 1))).collect())
        .collect();
    for &((i, j), w) in weights {
        c[i - 1][j - 1] = Some(r(w, 1));
        c[j - 1][i - 1] = Some(r(w, 1));
    }
    CoxeterDatum::new(m, Some(c)).unwrap()
}

fn pentagon() -> CoxeterDatum {
    let n = 5;
    let cycle = |i: usize, j: usize| (i + 1) % n == j || (j + 1) % n == i;
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, cycle(i, j)) {
                    (true, _) => Bond::Finite(1),
                    (false, true) => Bond::Infinite,
                    (false, false) => Bond::Finite(2),
                })
                .collect()
        })
        .collect();
    let c = (0..n)
        .map(|i| (0..n).map(|j| (i != j && cycle(i, j)).then(|| r(2, 1))).collect())
        .collect();
    CoxeterDatum::new(m, Some(c)).unwrap()
}

fn coxeter_case(
    d: &CoxeterDatum,
    word: &str,
    generators: &[&[&[i64]]],
    element: &[&[i64]],
    signature: (usize, usize, usize),
    z_printed: &[&[f64]],
    lambda_ok: impl Fn(f64) -> bool,
) -> Check {
    for (i, g) in generators.iter().enumerate() {
        let got = generator_matrix(d, i + 1).map_err(|e| e.to_string())?;
        ensure(exact(&got)? == &q(g), || format!("generator {} differs", i + 1))?;
    }
    let w = Word::parse(word).map_err(|e| e.to_string())?;
    let h = evaluate_word(d, &w).map_err(|e| e.to_string())?;
    ensure(exact(&h)? == &q(element), || "element differs".into())?;
    let report = analyze_element(d, &w, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    let (p, qn, z0) = signature;
    ensure(report.signature == FormSignature { p, q: qn, r: z0 }, || {
        format!("signature {}", report.signature)
    })?;
    let v = float_verdict(&report.verdict)?;
    ensure(v.kind == VerdictKind::SimpleDominant, || format!("verdict {:?}", v.kind))?;
    let lambda = v.lambda.ok_or("no lambda")?;
    ensure(lambda_ok(lambda), || format!("lambda {lambda}"))?;
    ensure(v.k_positive == Some(1), || format!("k = {:?}", v.k_positive))?;
    let z = v.z.as_ref().ok_or("no Z")?;
    ensure(z.is_strictly_positive(0.0), || "Z is not positive".into())?;
    close(z, &f(z_printed), 1e-3)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let z = q(&[&[11, 29], &[14, -1]]);
    let sq = z.pow(2).map_err(|e| e.to_string())?;
    let pos = eventual_positivity(&z, &PositivityOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(sq == q(&[&[527, 290], &[140, 407]]), || "square differs".into())?;
    ensure(pos == Positivity::Positive { k: 2 }, || format!("{pos:?}"))?;
    within(elapsed, Duration::from_millis(1))
}

fn criterion_2() -> Check {
    let cfg = AnalysisConfig::default();
    let start = Instant::now();
    let a = q(&[&[-11, 14], &[-26, 29]]);
    let v = qcol(&[(7, 20), (13, 20)]);
    let u = Matrix::row(vec![r(-10, 3), r(10, 3)]).unwrap();
    let ex = analyze_with_eigendata(&a, r(15, 1), v, u, &cfg).map_err(|e| e.to_string())?;
    let fl = analyze(&a.to_f64(), &cfg);
    let elapsed = start.elapsed();
    ensure(ex.kind == VerdictKind::SimpleDominant, || format!("exact {:?}", ex.kind))?;
    ensure(ex.lambda == Some(r(15, 1)), || "exact lambda".into())?;
    let z = Matrix::from_rows(vec![vec![r(36, 5), r(21, 5)], vec![r(39, 5), r(54, 5)]]).unwrap();
    ensure(ex.z.as_ref() == Some(&z), || format!("exact Z {:?}", ex.z))?;
    ensure(fl.kind == VerdictKind::SimpleDominant, || format!("float {:?}", fl.kind))?;
    let lf = fl.lambda.ok_or("float lambda missing")?;
    ensure((lf - 15.0).abs() <= 1e-9, || format!("float lambda {lf}"))?;
    within(elapsed, Duration::from_millis(10))
}

fn criterion_3() -> Check {
    let cfg = AnalysisConfig::default();
    let good = q(&[&[-11, 26], &[-14, 29]]).scale(&r(1, 15));
    let v = stochastic_check(&good, &cfg).map_err(|e| e.to_string())?;
    ensure(v.kind == VerdictKind::SimpleDominant, || format!("example {:?}", v.kind))?;
    let z = Matrix::from_rows(vec![vec![r(3, 5), r(2, 5)], vec![r(2, 5), r(3, 5)]]).unwrap();
    ensure(v.z.as_ref() == Some(&z), || format!("example Z {:?}", v.z))?;

    let bad = q(&[&[-11, 14], &[-26, 29]]).scale(&r(1, 3));
    let v = stochastic_check(&bad, &cfg).map_err(|e| e.to_string())?;
    ensure(v.kind == VerdictKind::NotSimpleDominantCertified, || format!("nonexample {:?}", v.kind))?;
    ensure(v.z.as_ref() == Some(&q(&[&[3, -2], &[-2, 3]])), || format!("nonexample Z {:?}", v.z))?;
    ensure(matches!(v.certificate, Some(Certificate::Never(_))), || {
        format!("certificate {:?}", v.certificate)
    })
}

fn criterion_4() -> Check {
    let a = q(&[&[-1, 2, 0], &[-2, 2, 1], &[-2, 3, 0]]);
    let chi = char_poly(&a).map_err(|e| e.to_string())?;
    let expected: Vec<Rational> = [1, -1, -1, 1].iter().map(|&c| r(c, 1)).collect();
    ensure(chi.coefficients == expected, || format!("char poly {:?}", chi.coefficients))?;
    let v = analyze_exact(&a, &AnalysisConfig::default());
    ensure(v.kind() == VerdictKind::MultiplicityAtLeastTwo, || format!("{:?}", v.kind()))
}

fn criterion_5() -> Check {
    let a = f(&[&[-1.0, 1.0, 1.0], &[-3.0, 3.0, 1.0], &[-3.0, 1.0, 3.0]]);
    match semisimplicity_probe(&a, &2.0, 10_000, 1e-12).map_err(|e| e.to_string())? {
        ProbeOutcome::Converged {
            limit,
            multiplicity_estimate,
            ..
        } => {
            close(&limit, &f(&[&[-2.0, 1.0, 1.0], &[-3.0, 2.0, 1.0], &[-3.0, 1.0, 2.0]]), 1e-9)?;
            ensure((multiplicity_estimate - 2.0).abs() <= 1e-9, || {
                format!("trace {multiplicity_estimate}")
            })?;
        }
        other => return Err(format!("first matrix: {other:?}")),
    }
    let b = f(&[&[-1.0, 1.0, 1.0], &[-2.0, 2.0, 1.0], &[-2.0, 1.0, 2.0]]);
    match semisimplicity_probe(&b, &1.0, 200, 1e-12).map_err(|e| e.to_string())? {
        ProbeOutcome::Diverged { .. } => Ok(()),
        other => Err(format!("second matrix: {other:?}")),
    }
}

fn criterion_6() -> Check {
    let a = q(&[&[-4, 5], &[-3, 4]]);
    let v = qcol(&[(1, 2), (1, 2)]);
    match nonnegative_proposition(&a, &r(1, 1), &v, 0.0).map_err(|e| e.to_string())? {
        NonnegativeOutcome::WeakPerron { z } => ensure(z == q(&[&[0, 1], &[1, 0]]), || format!("Z {z:?}")),
        other => Err(format!("{other:?}")),
    }
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let d = CoxeterDatum::free(3, r(2, 1)).map_err(|e| e.to_string())?;
    coxeter_case(
        &d,
        "s1 s2 s3 s2",
        &[
            &[&[-1, 4, 4], &[0, 1, 0], &[0, 0, 1]],
            &[&[1, 0, 0], &[4, -1, 4], &[0, 0, 1]],
            &[&[1, 0, 0], &[0, 1, 0], &[4, 4, -1]],
        ],
        &[&[399, -76, 284], &[80, -15, 56], &[20, -4, 15]],
        (2, 1, 0),
        &[
            &[318.23857, 318.19990, 318.38071],
            &[63.807131, 64.038071, 62.893420],
            &[15.951783, 15.759518, 16.723355],
        ],
        |l| (l - 397.9974).abs() <= 1e-3,
    )?;
    within(start.elapsed(), Duration::from_secs(1))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    coxeter_case(
        &free_with(4, &[((1, 2), 2), ((3, 4), 6)]),
        "s1 s3 s2 s4 s2 s3",
        &[
            &[&[-1, 4, 2, 2], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 0, 0, 0], &[4, -1, 2, 2], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[2, 2, -1, 12], &[0, 0, 0, 1]],
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[2, 2, 12, -1]],
        ],
        &[&[1763, 1264, -670, 8150], &[84, 61, -32, 388], &[672, 480, -255, 3104], &[42, 30, -16, 195]],
        (2, 2, 0),
        &[
            &[1212.9657, 1213.7462, 1212.7815, 1214.3404],
            &[57.793025, 58.605604, 57.707147, 57.543055],
            &[462.34420, 460.84483, 462.65718, 460.34444],
            &[28.896513, 28.802802, 28.853573, 29.771528],
        ],
        |l| (l - 1761.9994).abs() <= 1e-3,
    )
    .map_err(|e| format!("rank 4: {e}"))?;
    within(start.elapsed(), Duration::from_secs(5)).map_err(|e| format!("rank 4: {e}"))?;

    let start = Instant::now();
    coxeter_case(
        &pentagon(),
        "s1 s2 s3 s4 s5 s1 s2",
        &[
            &[&[-1, 4, 0, 0, 4], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]],
            &[&[1, 0, 0, 0, 0], &[4, -1, 4, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]],
            &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 4, -1, 4, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]],
            &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 4, -1, 4], &[0, 0, 0, 0, 1]],
            &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[4, 0, 0, 4, -1]],
        ],
        &[
            &[16065, -4280, 17360, 976, 3960],
            &[3960, -1055, 4280, 240, 976],
            &[976, -260, 1055, 60, 240],
            &[240, -64, 260, 15, 60],
            &[60, -16, 64, 4, 15],
        ],
        (2, 3, 0),
        &[
            &[12137.980, 12137.949, 12137.286, 12137.261, 12137.694],
            &[2991.9849, 2992.0443, 2992.5946, 2991.2642, 2991.8114],
            &[737.41275, 737.47739, 737.69244, 738.10571, 736.83822],
            &[181.32465, 181.30789, 181.96510, 181.76536, 182.18656],
            &[45.345076, 45.268805, 44.509779, 45.651798, 45.517668],
        ],
        |l| ((l - 16094.04766330161) / 16094.04766330161).abs() <= 1e-6,
    )
    .map_err(|e| format!("rank 5: {e}"))?;
    within(start.elapsed(), Duration::from_secs(5)).map_err(|e| format!("rank 5: {e}"))
}

fn criterion_9() -> Check {
    let d = CoxeterDatum::free(2, r(1, 1)).map_err(|e| e.to_string())?;
    let w = Word::parse("s1 s2").map_err(|e| e.to_string())?;
    let report = analyze_element(&d, &w, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    ensure(exact(&report.element)? == &q(&[&[3, -2], &[2, -1]]), || "element differs".into())?;
    ensure(report.signature == FormSignature { p: 1, q: 0, r: 1 }, || {
        format!("signature {}", report.signature)
    })?;
    ensure(report.verdict.kind() == VerdictKind::MultiplicityAtLeastTwo, || {
        format!("{:?}", report.verdict.kind())
    })?;
    let AnyVerdict::Exact(v) = &report.verdict else {
        return Err("expected an exact verdict".into());
    };
    match &v.certificate {
        Some(Certificate::Orthogonal { uv, .. }) if uv == &r(0, 1) => Ok(()),
        other => Err(format!("certificate {other:?}")),
    }
}

const CASES: usize = 200;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    r(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    Matrix::new(n, n, (0..n * n).map(|_| random_rational(rng)).collect()).unwrap()
}

/// A with a known exact right eigenvector `v` (eigenvalue `lambda`) and left
/// eigenvector `u`, built as `P D P^-1` from a random invertible `P`.
fn random_pair(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> (Matrix<Rational>, Rational, Matrix<Rational>, Matrix<Rational>) {
    loop {
        let p = random_matrix(rng, n);
        let Ok(p_inv) = p.inverse() else { continue };
        let diag: Vec<Rational> = (0..n).map(|_| random_rational(rng)).collect();
        let lambda = diag[0].clone();
        if diag[1..].contains(&lambda) {
            continue;
        }
        let a = p.matmul(&Matrix::diagonal(diag)).unwrap().matmul(&p_inv).unwrap();
        let v = Matrix::column((0..n).map(|i| p.get(i, 0).clone()).collect()).unwrap();
        let u = Matrix::row(p_inv.row_vec(0)).unwrap();
        return (a, lambda, v, u);
    }
}

fn random_row(rng: &mut ChaCha8Rng, v: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let n = v.rows();
    let w = Matrix::row((0..n).map(|_| random_rational(rng)).collect()).unwrap();
    let wv = w.dot(v).unwrap();
    (wv != r(0, 1)).then(|| w.scale(&(Rational::from_i64(1) / wv)))
}

fn random_datum(rng: &mut ChaCha8Rng, n: usize) -> CoxeterDatum {
    let mut m = vec![vec![Bond::Finite(1); n]; n];
    let mut c = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let bond = match rng.gen_range(0..4) {
                0 => Bond::Finite(2),
                1 => Bond::Finite(3),
                _ => Bond::Infinite,
            };
            if bond == Bond::Infinite {
                let w = Some(r(rng.gen_range(2..=8), 2));
                c[i][j] = w.clone();
                c[j][i] = w;
            }
            m[i][j] = bond;
            m[j][i] = bond;
        }
    }
    CoxeterDatum::new(m, Some(c)).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..=n)).collect())
}

fn golden_pairs() -> Vec<(String, Matrix<f64>, f64, Matrix<f64>)> {
    let mut out = Vec::new();
    let exact_cases: [(&str, Matrix<Rational>, Rational, Matrix<Rational>); 4] = [
        ("lambda 15", q(&[&[-11, 14], &[-26, 29]]), r(15, 1), qcol(&[(7, 20), (13, 20)])),
        (
            "stochastic example",
            q(&[&[-11, 26], &[-14, 29]]).scale(&r(1, 15)),
            r(1, 1),
            qcol(&[(1, 2), (1, 2)]),
        ),
        (
            "stochastic nonexample",
            q(&[&[-11, 14], &[-26, 29]]).scale(&r(1, 3)),
            r(1, 1),
            qcol(&[(1, 2), (1, 2)]),
        ),
        ("weak Perron", q(&[&[-4, 5], &[-3, 4]]), r(1, 1), qcol(&[(1, 2), (1, 2)])),
    ];
    for (name, a, lambda, v) in exact_cases {
        out.push((name.to_string(), a.to_f64(), lambda.to_f64(), v.to_f64()));
    }
    let cox = [
        ("rank 3", CoxeterDatum::free(3, r(2, 1)).unwrap(), "s1 s2 s3 s2"),
        ("rank 4", free_with(4, &[((1, 2), 2), ((3, 4), 6)]), "s1 s3 s2 s4 s2 s3"),
        ("rank 5", pentagon(), "s1 s2 s3 s4 s5 s1 s2"),
    ];
    for (name, d, word) in cox {
        let w = Word::parse(word).unwrap();
        let report = analyze_element(&d, &w, &AnalysisConfig::default()).unwrap();
        let v = float_verdict(&report.verdict).unwrap();
        out.push((name.to_string(), report.element.to_f64(), v.lambda.unwrap(), v.v.clone().unwrap()));
    }
    out
}

fn exact_golden_pairs() -> Vec<(Matrix<Rational>, Rational, Matrix<Rational>)> {
    vec![
        (q(&[&[-11, 14], &[-26, 29]]), r(15, 1), qcol(&[(7, 20), (13, 20)])),
        (q(&[&[-11, 26], &[-14, 29]]).scale(&r(1, 15)), r(1, 1), qcol(&[(1, 2), (1, 2)])),
        (q(&[&[-11, 14], &[-26, 29]]).scale(&r(1, 3)), r(1, 1), qcol(&[(1, 2), (1, 2)])),
        (q(&[&[-4, 5], &[-3, 4]]), r(1, 1), qcol(&[(1, 2), (1, 2)])),
    ]
}

fn minimal_k_agree<T: Scalar>(a: &Matrix<T>, lambda: &T, v: &Matrix<T>, eps: f64) -> Result<(), String> {
    let n = a.rows();
    let opts = PositivityOptions {
        k_max: 64,
        eps,
        ..PositivityOptions::default()
    };
    let z = conjugate_matrix(a, lambda, v, &Matrix::ones_row(n), 1e-9).map_err(|e| e.to_string())?;
    let pos = eventual_positivity(&z, &opts).map_err(|e| e.to_string())?;
    let cols = condition_vi_check(a, lambda, v, opts.k_max, eps).map_err(|e| e.to_string())?;
    match (&pos, &cols) {
        (Positivity::Positive { k }, ConditionVi::Holds { k: k2 }) if k == k2 => Ok(()),
        (
            Positivity::CertifiedNever(_) | Positivity::Inconclusive { .. },
            ConditionVi::FailsAt { .. } | ConditionVi::Inconclusive { .. },
        ) => Ok(()),
        _ => Err(format!("{pos:?} vs {cols:?}")),
    }
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    for case in 0..CASES {
        let n = 2 + case % 4;
        let (a, lambda, v, u) = random_pair(&mut rng, n);
        let uv = u.dot(&v).unwrap();
        let u = u.scale(&(Rational::from_i64(1) / uv));
        let Some(u_prime) = random_row(&mut rng, &v) else { continue };
        let w = build_conjugate(&a, &lambda, &v, &u, &u_prime, 0.0).map_err(|e| format!("case {case}: {e}"))?;
        let prod = w.q.matmul(&w.q_inv).unwrap();
        ensure(prod == Matrix::identity(n), || format!("Q Q^-1 != I in case {case}"))?;
        for k in 1..=6 {
            let ok = power_identity_check(&w, &a, k, 0.0).map_err(|e| e.to_string())?;
            ensure(ok, || format!("power identity fails at k = {k} in case {case}"))?;
        }
        let similar = w.q_inv.matmul(&a).unwrap().matmul(&w.q).unwrap();
        ensure(similar == w.z, || format!("Z != Q^-1 A Q in case {case}"))?;
        let (ca, cz) = (char_poly(&a).unwrap(), char_poly(&w.z).unwrap());
        ensure(ca == cz, || format!("char poly differs in case {case}"))?;
    }

    for case in 0..CASES {
        let n = 2 + case % 4;
        let d = random_datum(&mut rng, n);
        let b = match bilinear_form(&d) {
            AnyMatrix::Exact(b) => b,
            AnyMatrix::Float(_) => return Err("random datum should be exact".into()),
        };
        for i in 1..=n {
            let g = exact(&generator_matrix(&d, i).unwrap())?.clone();
            ensure(g.matmul(&g).unwrap() == Matrix::identity(n), || {
                format!("generator {i} is not an involution in case {case}")
            })?;
        }
        let w = random_word(&mut rng, n, 12);
        let h = exact(&evaluate_word(&d, &w).unwrap())?.clone();
        let image = h.transpose().matmul(&b).unwrap().matmul(&h).unwrap();
        ensure(image == b, || format!("word {w} does not preserve the form in case {case}"))?;
    }

    for (a, lambda, v) in exact_golden_pairs() {
        minimal_k_agree(&a, &lambda, &v, 0.0)?;
    }
    for (name, a, lambda, v) in golden_pairs() {
        minimal_k_agree(&a, &lambda, &v, 1e-12).map_err(|e| format!("{name}: {e}"))?;
    }

    within(start.elapsed(), Duration::from_secs(60))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 exact square and positivity index of a 2x2 matrix", criterion_1),
        ("2 simple dominant eigenvalue 15", criterion_2),
        ("3 unit-row-sum example and nonexample", criterion_3),
        ("4 orthogonal eigenvectors and characteristic polynomial", criterion_4),
        ("5 semisimplicity probe converges and diverges", criterion_5),
        ("6 nonnegative conjugate", criterion_6),
        ("7 Coxeter rank 3", criterion_7),
        ("8 Coxeter ranks 4 and 5", criterion_8),
        ("9 affine rank 2", criterion_9),
        ("10 seeded property suites", criterion_10),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS criterion {name}"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
