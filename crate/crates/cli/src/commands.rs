use crate::error::CliError;
use crate::input::{InputDocument, Loaded, Source};
use crate::report::*;
use crate::{Command, Common, ExampleArgs, Outcome, PerturbArgs};
use nilrigid::analysis::{compute_grading, compute_spectrum, rigidity_verdict, Automorphism, Verdict};
use nilrigid::examples;
use nilrigid::geometry::{
    escape_experiment, real_eigenpairs, stable_unstable_bracket_defect, weak_distance_scaling_check, SpectralFrame,
    WeakStrongFrame,
};
use nilrigid::rational::{rat, RootConfig, Rational, Scalar};
use nilrigid::shear::{find_shear_data, frequency, lipschitz_pairing_test, PairingResult, ShearData, TrigPoly};
use nilrigid::Error;
use num_complex::Complex64;
use serde::Serialize;
use std::fmt::Write;

/// Environment variable overriding the refinement precision cap in bits.
pub const PRECISION_ENV: &str = "NILRIGID_PRECISION_BITS";

/// Precision of eigenvectors used by the geometry checks.
const FRAME_BITS: u32 = 200;

pub fn dispatch(cmd: &Command) -> Outcome {
    let result = match cmd {
        Command::Validate(c) => validate(c),
        Command::Analyze(c) => analyze(c),
        Command::Verdict(c) => verdict(c),
        Command::Grading(c) => grading(c),
        Command::GeometryCheck(c) => geometry_check(c),
        Command::PerturbWitness(p) => perturb_witness(p),
        Command::Example(e) => example(e),
    };
    match result {
        Ok(out) => out,
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

fn source(c: &Common) -> Result<Source<'_>, CliError> {
    match (&c.input, &c.example) {
        (Some(_), Some(_)) => Err(CliError::Parse("give either an input file or --example, not both".into())),
        (Some(p), None) => Ok(Source::File(p)),
        (None, Some(n)) => Ok(Source::Example(n)),
        (None, None) => Err(CliError::Parse("missing input file or --example <name>".into())),
    }
}

pub fn root_config(tol: f64) -> Result<RootConfig, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Parse(format!("--tol must be positive, got {tol}")));
    }
    let mut cfg = RootConfig::with_tol(tol);
    if let Ok(bits) = std::env::var(PRECISION_ENV) {
        cfg.max_bits = bits
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{PRECISION_ENV} must be a positive integer, got {bits:?}")))?;
    }
    Ok(cfg)
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_valid(c: &Common) -> Result<(Loaded, Automorphism), CliError> {
    let loaded = Loaded::load(source(c)?)?;
    let a = loaded.automorphism()?;
    Ok((loaded, a))
}

fn validation_block(loaded: &Loaded) -> Result<ValidationBlock, CliError> {
    let v = loaded.algebra.validate();
    let algebra = AlgebraValidation::new(&loaded.algebra, &v);
    let automorphism = if v.is_valid() { Some(AutomorphismValidation::new(&loaded.algebra, &loaded.check()?)) } else { None };
    let valid = v.is_valid() && automorphism.as_ref().is_some_and(AutomorphismValidation::is_valid);
    Ok(ValidationBlock { algebra, automorphism, valid })
}

fn validate(c: &Common) -> Result<Outcome, CliError> {
    let loaded = Loaded::load(source(c)?)?;
    let block = validation_block(&loaded)?;
    let code = if block.valid { 0 } else { 2 };
    let stdout = if c.json {
        json(&ValidateDocument { version: VERSION.into(), input: loaded.name.clone(), validation: block })
    } else {
        let mut s = String::new();
        let a = &block.algebra;
        writeln!(s, "{}: {}", loaded.name, if block.valid { "VALID" } else { "INVALID" }).unwrap();
        writeln!(s, "  algebra: dim {}, antisymmetric {}, Jacobi {}", a.dim, yes(a.antisymmetric), yes(a.jacobi)).unwrap();
        match a.nilpotency_step {
            Some(k) => writeln!(s, "  nilpotent of step {k}").unwrap(),
            None => writeln!(s, "  not nilpotent").unwrap(),
        }
        if let Some(v) = &a.first_violation {
            writeln!(s, "  violation: {v}").unwrap();
        }
        if let Some(m) = &block.automorphism {
            writeln!(s, "  determinant {}", m.determinant).unwrap();
            writeln!(s, "  bracket preserving: {}", yes(m.bracket_preserving)).unwrap();
            if let Some([x, y]) = &m.bracket_violation {
                writeln!(s, "  witness: A[{x}, {y}] != [A{x}, A{y}]").unwrap();
            }
            writeln!(s, "  integral: {}, unimodular: {}", yes(m.integral), yes(m.unimodular)).unwrap();
        }
        s
    };
    Ok(Outcome { stdout, stderr: String::new(), code })
}

fn grading(c: &Common) -> Result<Outcome, CliError> {
    let (loaded, a) = load_valid(c)?;
    let g = GradingBlock::new(&compute_grading(&a)?);
    let stdout = if c.json {
        json(&GradingDocument { version: VERSION.into(), input: loaded.name.clone(), grading: g })
    } else {
        let mut s = String::new();
        writeln!(s, "{}: lower central series dims {:?}", loaded.name, g.lcs_dims).unwrap();
        for (i, (d, p)) in g.grade_dims.iter().zip(&g.grade_polys).enumerate() {
            writeln!(s, "  grade {} (dim {d}): {}", i + 1, p.text).unwrap();
        }
        writeln!(s, "  Carnot: {}", yes(g.carnot_verified)).unwrap();
        s
    };
    Ok(Outcome::ok(stdout))
}

fn analyze(c: &Common) -> Result<Outcome, CliError> {
    let cfg = root_config(c.tol)?;
    let (loaded, a) = load_valid(c)?;
    let grading = compute_grading(&a)?;
    let spectrum = compute_spectrum(&grading, cfg)?;
    let doc = AnalyzeDocument {
        version: VERSION.into(),
        input: loaded.name.clone(),
        grading: GradingBlock::new(&grading),
        spectrum: SpectrumBlock {
            simple_spectrum: spectrum.simple_spectrum,
            hyperbolic: spectrum.hyperbolic,
            eigenvalues: spectrum.eigenvalues().map(EigenvalueReport::new).collect(),
        },
    };
    let stdout = if c.json {
        json(&doc)
    } else {
        let mut s = String::new();
        writeln!(s, "{}: simple spectrum {}, hyperbolic {}", loaded.name, yes(doc.spectrum.simple_spectrum), yes(doc.spectrum.hyperbolic)).unwrap();
        write_grades(&mut s, &doc.grading, &doc.spectrum.eigenvalues);
        s
    };
    Ok(Outcome::ok(stdout))
}

fn write_grades(s: &mut String, g: &GradingBlock, eigs: &[EigenvalueReport]) {
    for (i, p) in g.grade_polys.iter().enumerate() {
        writeln!(s, "  grade {} (dim {}): {}", i + 1, g.grade_dims[i], p.text).unwrap();
        for e in eigs.iter().filter(|e| e.grade == i + 1) {
            let v = &e.value;
            let value = if v.im.value == 0.0 {
                v.re.decimal.clone()
            } else {
                format!("{} {:+e}i  |λ| = {}", v.re.decimal, v.im.value, e.modulus.decimal)
            };
            writeln!(s, "    {value}  ±{:.1e}  {}  escape speed {:.6e}", e.modulus.radius, e.stability, e.escape_speed).unwrap();
        }
    }
}

fn verdict(c: &Common) -> Result<Outcome, CliError> {
    let cfg = root_config(c.tol)?;
    let (loaded, a) = load_valid(c)?;
    let v = rigidity_verdict(&a, cfg);
    let report = VerdictReport::new(&loaded.name, validation_block(&loaded)?, &v);
    let code = if v.verdict == Verdict::Undecided { 3 } else { 0 };
    let stdout = if c.json {
        json(&report)
    } else {
        let mut s = String::new();
        writeln!(s, "{}: {}", loaded.name, report.verdict).unwrap();
        writeln!(s, "  simple spectrum: {}, hyperbolic: {}", yes(report.simple_spectrum), yes(report.hyperbolic)).unwrap();
        if let (Some(g), Some(sp)) = (&report.grading, &report.spectrum) {
            write_grades(&mut s, g, &sp.eigenvalues);
        }
        if report.sortedness.is_some() {
            writeln!(s, "  sorted unstable: {}, sorted stable: {}", yes(report.sorted_unstable), yes(report.sorted_stable)).unwrap();
        }
        if let Some(irr) = &report.irreducibility {
            for q in &irr.quotients {
                writeln!(s, "  N_{0}/[N_{0},N_{0}]: {1}, irreducible: {2}", q.k, q.charpoly.text, yes(q.irreducible)).unwrap();
            }
            for w in &irr.warnings {
                writeln!(s, "  warning: {w}").unwrap();
            }
        }
        for w in &report.witnesses {
            writeln!(s, "  witness: {w}").unwrap();
        }
        s
    };
    let stderr = if code == 3 { format!("undecided: {}\n", report.witnesses.join("; ")) } else { String::new() };
    Ok(Outcome { stdout, stderr, code })
}

/// Deterministic base point with all coordinates nonzero.
fn base_point(n: usize) -> Vec<Rational> {
    (0..n).map(|k| rat(if k % 2 == 0 { 1 } else { -1 } * (k as i64 + 1), k as i64 + 3)).collect()
}

fn scaling_entry(a: &Automorphism, index: usize) -> Result<ScalingEntry, Error> {
    let frame = WeakStrongFrame::unstable(a, index, FRAME_BITS)?;
    let g = frame.group().clone();
    let q = g.element(base_point(a.dim()))?;
    let w: Vec<Rational> = frame.weak().iter().map(|c| c * rat(5, 2)).collect();
    let mut shift = g.element(w)?;
    for (k, s) in frame.strong().iter().enumerate() {
        let coeff = rat(if k % 2 == 0 { -3 } else { 7 }, k as i64 + 2);
        shift = &shift * &g.element(s.iter().map(|x| x * &coeff).collect())?;
    }
    let r = &shift * &q;
    let report = weak_distance_scaling_check(a, &q, &r, &frame, 5)?;
    Ok(ScalingEntry {
        index,
        eigenvalue: frame.eigenvalue().map(Scalar::to_f64).unwrap_or(f64::NAN),
        distances: report.distances,
        expected: report.expected,
        max_relative_error: report.max_relative_error,
        passed: report.passed,
    })
}

fn geometry_check(c: &Common) -> Result<Outcome, CliError> {
    let (loaded, a) = load_valid(c)?;
    let grading = compute_grading(&a)?;
    let pairs = real_eigenpairs(&a, FRAME_BITS)?;
    let unstable = pairs.iter().filter(|p| p.stability == nilrigid::analysis::Stability::Unstable).count();
    let scaling = (1..=unstable).map(|i| scaling_entry(&a, i)).collect::<Result<Vec<_>, _>>()?;
    let frame = SpectralFrame::unstable(&a, &grading)?;
    let mut escape = Vec::new();
    if !frame.is_empty() {
        let n = frame.len();
        let mut slow = vec![0.0; n];
        slow[0] = 1.0;
        for (label, coeffs) in [("slowest direction", slow), ("all directions", vec![1.0; n])] {
            let r = escape_experiment(&frame, &coeffs, 40, 1e-2)?;
            escape.push(EscapeEntry {
                label: label.into(),
                final_rate: r.final_rate(),
                fitted_rate: r.fitted_rate(),
                dominant_log_speed: r.dominant_log_speed,
                slowest_log_speed: r.slowest_log_speed,
                in_slow_subgroup: r.in_slow_subgroup,
                converged_to_dominant: r.converged_to_dominant,
                coefficients: coeffs,
            });
        }
    }
    let doc = GeometryDocument {
        version: VERSION.into(),
        input: loaded.name.clone(),
        passed: scaling.iter().all(|s| s.passed),
        scaling,
        escape,
        stable_unstable_bracket_defect: stable_unstable_bracket_defect(&a, &pairs),
    };
    let stdout = if c.json {
        json(&doc)
    } else {
        let mut s = String::new();
        writeln!(s, "{}: weak-distance scaling {}", loaded.name, if doc.passed { "passed" } else { "FAILED" }).unwrap();
        for e in &doc.scaling {
            writeln!(s, "  unstable #{} (λ = {:.6e}): max relative error {:.2e}", e.index, e.eigenvalue, e.max_relative_error).unwrap();
        }
        for e in &doc.escape {
            writeln!(
                s,
                "  escape along {}: rate {:.6} (fitted {:.6}), slowest log speed {:.6}, dominant {:.6}",
                e.label, e.final_rate, e.fitted_rate, e.slowest_log_speed, e.dominant_log_speed
            )
            .unwrap();
        }
        writeln!(s, "  stable/unstable bracket defect: {:.3e}", doc.stable_unstable_bracket_defect).unwrap();
        s
    };
    Ok(Outcome::ok(stdout))
}

/// `cos 2π⟨m, x⟩`.
pub fn cosine_mode(m: &[i64]) -> TrigPoly<f64> {
    TrigPoly::real_mode(frequency(m), Complex64::new(0.5, 0.0))
}

/// Unit vectors, then sums and differences of two of them.
fn candidate_modes(d: usize) -> Vec<Vec<i64>> {
    let unit = |i: usize| (0..d).map(|k| i64::from(k == i)).collect::<Vec<_>>();
    let mut out: Vec<Vec<i64>> = (0..d).map(unit).collect();
    for i in 0..d {
        for j in i + 1..d {
            for sign in [1, -1] {
                out.push((0..d).map(|k| i64::from(k == i) + sign * i64::from(k == j)).collect());
            }
        }
    }
    out
}

/// Pairing for `mode`, or for the first candidate mode that passes the
/// free-orbit and visibility checks.
pub fn pairing(data: &ShearData, mode: Option<&[i64]>, k: usize) -> Result<(Vec<i64>, PairingResult), CliError> {
    if let Some(m) = mode {
        if m.len() != data.base_dim() {
            return Err(CliError::Parse(format!("--mode needs {} entries, got {}", data.base_dim(), m.len())));
        }
        return Ok((m.to_vec(), lipschitz_pairing_test(&cosine_mode(m), data, k)?));
    }
    for m in candidate_modes(data.base_dim()) {
        match lipschitz_pairing_test(&cosine_mode(&m), data, k) {
            Ok(r) => return Ok((m, r)),
            Err(Error::PeriodicFrequency(_) | Error::ModeInvisible(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(CliError::Invalid("no candidate mode has a free, visible orbit; pass --mode".into()))
}

fn perturb_witness(p: &PerturbArgs) -> Result<Outcome, CliError> {
    let cfg = root_config(p.common.tol)?;
    let (loaded, a) = load_valid(&p.common)?;
    let data = find_shear_data(&a, cfg, p.invert)?;
    let mut doc = PerturbDocument {
        version: VERSION.into(),
        input: loaded.name.clone(),
        shear_data: None,
        mode: None,
        k: p.k,
        left: None,
        right: None,
        witness: false,
    };
    if let Some(data) = &data {
        let (m, r) = pairing(data, p.mode.as_deref(), p.k)?;
        doc.shear_data = Some(ShearDataReport {
            b: data.b.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect(),
            lambda_w: data.lambda_w,
            lambda_u: data.lambda_u,
            u: data.u.clone(),
            w: data.w.clone(),
            inverted: data.inverted,
        });
        doc.mode = Some(m);
        doc.left = Some(ComplexNumber { re: r.left.re + 0.0, im: r.left.im + 0.0 });
        doc.right = Some(ComplexNumber { re: r.right.re + 0.0, im: r.right.im + 0.0 });
        doc.witness = r.witness;
    }
    let stdout = if p.common.json {
        json(&doc)
    } else {
        let mut s = String::new();
        match (&doc.shear_data, &doc.left, &doc.right) {
            (Some(d), Some(l), Some(r)) => {
                writeln!(s, "{}: shear data found{}", loaded.name, if d.inverted { " for the inverse" } else { "" }).unwrap();
                writeln!(s, "  λ_w = {:.6}, λ_u = {:.6}", d.lambda_w, d.lambda_u).unwrap();
                writeln!(s, "  mode m = {:?}, K = {}", doc.mode.as_deref().unwrap_or_default(), doc.k).unwrap();
                writeln!(s, "  left = {:.6e} {:+.6e}i", l.re, l.im).unwrap();
                writeln!(s, "  right = {:.6e} {:+.6e}i", r.re, r.im).unwrap();
                writeln!(s, "  witness: {}", yes(doc.witness)).unwrap();
            }
            _ => writeln!(s, "{}: none (no shear data)", loaded.name).unwrap(),
        }
        s
    };
    Ok(Outcome::ok(stdout))
}

fn example(e: &ExampleArgs) -> Result<Outcome, CliError> {
    let a = examples::example(&e.name).map_err(|err| CliError::Parse(err.to_string()))?;
    let notes = Some("matrix is row-major; column j is the image of basis vector j".to_string());
    let doc = InputDocument::from_automorphism(&a, Some(e.name.clone()), notes);
    Ok(Outcome::ok(if e.json { doc.to_json() + "\n" } else { doc.to_toml() }))
}

