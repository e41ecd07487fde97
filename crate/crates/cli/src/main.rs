//! File-driven command line front end: parse space/element/ideal/map
//! descriptions, dispatch the toolkit operations, and emit machine-readable
//! reports with re-verifiable certificates.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition violation,
//! 4 capability limit, 5 tolerance unmet.

mod format;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ordunit_core::arch::{self, LinearMap, OrderIdeal};
use ordunit_core::linalg::Matrix;
use ordunit_core::norms::{self, NormOptions};
use ordunit_core::scalar::{parse_scalar, ScalarMode};
use ordunit_core::vector::{ComplexElement, RealVector};
use ordunit_core::{funcsys, order, Error as CoreError, OrderedSpace, Scalar};
use serde_json::{json, Value};

use format::{
    element_to_file, matrix_from_rows, parse_element_arg, rational_to_string,
    rationals_to_strings, space_to_file, vector_to_strings, SpaceFile,
};
use report::{
    cert_side, digest_of, interval_json, lower_cert_from_json, lower_cert_json,
    upper_cert_from_json, upper_cert_json, Certificate, Flags, Inputs, Report,
};

#[derive(Parser)]
#[command(
    name = "ordunit",
    about = "Ordered *-vector spaces with an order unit: states, order norms, Archimedeanization, quotients",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Tolerance for certified intervals and approximate comparisons.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Refinement rounds for grid-based norms.
    #[arg(long, global = true, default_value_t = 6)]
    max_rounds: u32,
    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the ordered-space axioms and report each one.
    Validate { space: PathBuf },
    /// Is the order unit Archimedean (equivalently, is the cone closed)?
    ArchimedeanCheck { space: PathBuf },
    /// Order seminorm and state interval of a hermitian element.
    Seminorm {
        space: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Enumerate the state polytope (constraints and extreme states).
    States { space: PathBuf },
    /// Minimal/maximal/decomposition/convex-combination norm of an element.
    Norm {
        space: PathBuf,
        #[arg(long, value_parser = ["m", "M", "dec", "t"])]
        kind: String,
        #[arg(long)]
        element: String,
        /// Convex-combination weight for --kind t (rational, e.g. 1/2).
        #[arg(long)]
        t: Option<String>,
    },
    /// Quotient by the null subspace N; the result is Archimedean.
    Archimedeanize { space: PathBuf },
    /// Quotient by an order ideal.
    Quotient {
        space: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// One-step Archimedean quotient V / N_J.
    ArchQuotient {
        space: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Function-system embedding into functions on the extreme states.
    Embed {
        space: PathBuf,
        /// Random elements exercised by the embedding checks.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Extend a positive functional from a subspace containing the unit.
    ExtendFunctional {
        space: PathBuf,
        #[arg(long)]
        functional: String,
    },
    /// First-isomorphism analysis of a positive unital map.
    FirstIso {
        space: PathBuf,
        #[arg(long)]
        map: String,
        /// Override the target space path recorded in the map block.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Re-verify the certificates and result of a previously written report.
    Verify { report: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_class(&err))
        }
    }
}

fn exit_class(err: &CoreError) -> u8 {
    match err {
        CoreError::Parse(_)
        | CoreError::MalformedElement(_)
        | CoreError::DimensionMismatch { .. } => 2,
        CoreError::Precondition(_) => 3,
        CoreError::Capability(_) => 4,
        CoreError::ToleranceUnmet(_) => 5,
        CoreError::Internal(_) => 1,
    }
}

struct Resolved {
    operation: String,
    file: SpaceFile,
    space: OrderedSpace,
    element: Option<ComplexElement>,
    ideal: Option<Vec<RealVector>>,
    map: Option<Matrix>,
    target: Option<(SpaceFile, OrderedSpace)>,
    functional: Option<(Vec<RealVector>, Vec<Scalar>)>,
    flags: Flags,
}

fn load_space_file(path: &Path) -> Result<SpaceFile, CoreError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CoreError::parse(format!("invalid space file {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<ExitCode, CoreError> {
    if let Command::Verify { report } = &cli.command {
        return verify_report(report);
    }
    let started = Instant::now();
    let resolved = resolve(&cli)?;
    let (result, certificates, warnings) = execute(&resolved)?;
    let digest = digest_of(&json!({
        "operation": resolved.operation,
        "space": resolved.file,
        "element": resolved.element.as_ref().map(element_to_file),
        "ideal": resolved.ideal.as_ref().map(|b| b.iter().map(vector_to_strings).collect::<Vec<_>>()),
        "map": resolved.map.as_ref().map(matrix_to_strings),
        "target": resolved.target.as_ref().map(|(f, _)| f),
        "functional": resolved.functional.as_ref().map(func_to_strings),
        "flags": resolved.flags,
    }));
    // a norm answer that could not be certified to the requested tolerance
    // still reports valid bounds, but exits with the tolerance-unmet code
    let tolerance_unmet = result
        .get("status")
        .and_then(Value::as_str)
        .is_some_and(|s| s != "certified")
        && result.get("lower").and_then(Value::as_f64).zip(
            result.get("upper").and_then(Value::as_f64),
        ).is_some_and(|(lo, hi)| {
            result.get("tol").and_then(Value::as_f64).is_some_and(|t| hi - lo > t)
        });
    let report = Report {
        schema_version: 1,
        operation: resolved.operation.clone(),
        inputs: Inputs {
            digest,
            space: resolved.file,
            element: resolved.element.as_ref().map(element_to_file),
            ideal: resolved
                .ideal
                .as_ref()
                .map(|b| b.iter().map(vector_to_strings).collect()),
            map: resolved.map.as_ref().map(matrix_to_strings),
            target_space: resolved.target.map(|(f, _)| f),
            functional: resolved.functional.as_ref().map(func_to_strings),
            flags: resolved.flags,
        },
        result,
        certificates,
        warnings,
        timing_ms: started.elapsed().as_millis(),
    };
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| CoreError::internal(format!("report serialization failed: {e}")))?;
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CoreError::parse(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(if tolerance_unmet {
        ExitCode::from(5)
    } else {
        ExitCode::SUCCESS
    })
}

fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows).map(|i| rationals_to_strings(m.row(i))).collect()
}

fn func_to_strings(f: &(Vec<RealVector>, Vec<Scalar>)) -> (Vec<Vec<String>>, Vec<String>) {
    (
        f.0.iter().map(vector_to_strings).collect(),
        f.1.iter().map(format::scalar_to_string).collect(),
    )
}

fn resolve(cli: &Cli) -> Result<Resolved, CoreError> {
    let (operation, space_path) = match &cli.command {
        Command::Validate { space } => ("validate", space),
        Command::ArchimedeanCheck { space } => ("archimedean-check", space),
        Command::Seminorm { space, .. } => ("seminorm", space),
        Command::States { space } => ("states", space),
        Command::Norm { space, .. } => ("norm", space),
        Command::Archimedeanize { space } => ("archimedeanize", space),
        Command::Quotient { space, .. } => ("quotient", space),
        Command::ArchQuotient { space, .. } => ("arch-quotient", space),
        Command::Embed { space, .. } => ("embed", space),
        Command::ExtendFunctional { space, .. } => ("extend-functional", space),
        Command::FirstIso { space, .. } => ("first-iso", space),
        Command::Verify { .. } => unreachable!("verify handled earlier"),
    };
    let file = load_space_file(space_path)?;
    let mode: ScalarMode = file.scalar_mode.into();
    let space = file.to_space()?;
    let mut resolved = Resolved {
        operation: operation.to_string(),
        space,
        element: None,
        ideal: None,
        map: None,
        target: None,
        functional: None,
        flags: Flags {
            kind: None,
            t: None,
            tol: format!("{}", cli.tol),
            max_rounds: cli.max_rounds,
            samples: None,
        },
        file,
    };
    match &cli.command {
        Command::Seminorm { element, .. } => {
            resolved.element = Some(parse_element_arg(&resolved.file, element, mode)?);
        }
        Command::Norm {
            kind, element, t, ..
        } => {
            resolved.flags.kind = Some(kind.clone());
            resolved.flags.t = t.clone();
            resolved.element = Some(parse_element_arg(&resolved.file, element, mode)?);
        }
        Command::Quotient { ideal, .. } | Command::ArchQuotient { ideal, .. } => {
            resolved.ideal = Some(resolved.file.ideal(ideal, mode)?);
        }
        Command::Embed { samples, .. } => {
            resolved.flags.samples = Some(*samples);
        }
        Command::ExtendFunctional { functional, .. } => {
            resolved.functional = Some(resolved.file.functional(functional, mode)?);
        }
        Command::FirstIso {
            space: space_path,
            map,
            target,
        } => {
            let mf = resolved.file.map(map)?.clone();
            let matrix = matrix_from_rows(&mf.matrix, mode)?;
            let target_path = match target {
                Some(p) => p.clone(),
                None => space_path
                    .parent()
                    .unwrap_or_else(|| Path::new("."))
                    .join(&mf.target),
            };
            let tf = load_space_file(&target_path)?;
            let tspace = tf.to_space()?;
            resolved.map = Some(matrix);
            resolved.target = Some((tf, tspace));
        }
        _ => {}
    }
    Ok(resolved)
}

fn execute(r: &Resolved) -> Result<(Value, Vec<Certificate>, Vec<String>), CoreError> {
    let space = &r.space;
    let tol: f64 = r
        .flags
        .tol
        .parse()
        .map_err(|_| CoreError::parse("invalid --tol"))?;
    let opts = NormOptions {
        tol,
        start_k: 16,
        max_rounds: r.flags.max_rounds,
    };
    let mut warnings: Vec<String> = Vec::new();
    match r.operation.as_str() {
        "validate" => {
            let rep = order::validate_space(space)?;
            Ok((
                json!({
                    "valid": rep.is_valid(),
                    "pointed": rep.pointed,
                    "unit_in_cone": rep.unit_in_cone,
                    "order_unit_on_basis": rep.order_unit_on_basis,
                    "archimedean": rep.archimedean,
                    "messages": rep.messages,
                }),
                Vec::new(),
                warnings,
            ))
        }
        "archimedean-check" => {
            order::ensure_valid(space)?;
            let arch = order::is_archimedean(space)?;
            Ok((json!({ "archimedean": arch }), Vec::new(), warnings))
        }
        "seminorm" => {
            order::ensure_valid(space)?;
            push_closure_warning(space, &mut warnings)?;
            let v = r
                .element
                .as_ref()
                .ok_or_else(|| CoreError::parse("missing --element"))?;
            if !v.is_hermitian() {
                return Err(CoreError::precondition(
                    "the order seminorm applies to hermitian elements; use `norm` for complex ones",
                ));
            }
            let iv = order::state_interval(space, &v.re)?;
            let value = order::order_seminorm(space, &v.re)?;
            Ok((
                json!({
                    "value": format::scalar_to_string(&value),
                    "alpha": format::scalar_to_string(&iv.alpha),
                    "beta": format::scalar_to_string(&iv.beta),
                }),
                Vec::new(),
                warnings,
            ))
        }
        "states" => {
            order::ensure_valid(space)?;
            push_closure_warning(space, &mut warnings)?;
            let sp = order::state_polytope(space)?;
            Ok((
                json!({
                    "constraint_generators": sp.constraint_generators.iter().map(vector_to_strings).collect::<Vec<_>>(),
                    "extreme_states": sp.extreme_states.iter().map(|f| vector_to_strings(&f.coeffs)).collect::<Vec<_>>(),
                }),
                Vec::new(),
                warnings,
            ))
        }
        "norm" => {
            order::ensure_valid(space)?;
            push_closure_warning(space, &mut warnings)?;
            let v = r
                .element
                .as_ref()
                .ok_or_else(|| CoreError::parse("missing --element"))?;
            let kind = r.flags.kind.as_deref().unwrap_or("m");
            let mut certs = Vec::new();
            let result = match kind {
                "m" => {
                    let m = norms::minimal_norm(space, v, tol)?;
                    if let (Some(state), Some(sq)) = (&m.witness_state, &m.value_sq) {
                        certs.push(Certificate::StateModulus {
                            side: "lower".into(),
                            state: rationals_to_strings(state),
                            value_sq: rational_to_string(sq),
                        });
                    }
                    json!({
                        "kind": "m",
                        "value": format::scalar_to_string(&m.value),
                        "value_sq": m.value_sq.as_ref().map(rational_to_string),
                        "lower": m.lower,
                        "upper": m.upper,
                        "status": "certified",
                        "via_arch_quotient": m.via_arch_quotient,
                    })
                }
                "M" | "dec" => {
                    let iv = if kind == "M" {
                        norms::maximal_norm(space, v, &opts)?
                    } else {
                        norms::decomposition_norm(space, v, &opts)?
                    };
                    if let Some(c) = &iv.lower_cert {
                        certs.push(lower_cert_json(c));
                    }
                    if let Some(c) = &iv.upper_cert {
                        certs.push(upper_cert_json(c));
                    }
                    let mut out = interval_json(&iv);
                    out["kind"] = json!(kind);
                    out
                }
                "t" => {
                    let t_str = r
                        .flags
                        .t
                        .as_deref()
                        .ok_or_else(|| CoreError::parse("--kind t needs --t"))?;
                    let t = parse_scalar(t_str, ScalarMode::Exact)?.to_rational()?;
                    let iv = norms::convex_combination_norm(space, v, &t, &opts)?;
                    let mut out = interval_json(&iv);
                    out["kind"] = json!("t");
                    out["t"] = json!(rational_to_string(&t));
                    out
                }
                other => return Err(CoreError::parse(format!("unknown norm kind `{other}`"))),
            };
            Ok((result, certs, warnings))
        }
        "archimedeanize" => {
            order::ensure_valid(space)?;
            let q = arch::archimedeanize(space)?;
            Ok((quotient_json(&q), Vec::new(), warnings))
        }
        "quotient" | "arch-quotient" => {
            order::ensure_valid(space)?;
            let basis = r
                .ideal
                .clone()
                .ok_or_else(|| CoreError::parse("missing --ideal"))?;
            let ideal = OrderIdeal::new(basis);
            let q = if r.operation == "quotient" {
                arch::quotient(space, &ideal)?
            } else {
                let q = arch::arch_quotient(space, &ideal)?;
                if !arch::r_grid_spot_check(space, &q, 8)? {
                    warnings
                        .push("r-grid spot check of the closed-cone collapse failed".to_string());
                }
                q
            };
            let mut out = quotient_json(&q);
            out["archimedean"] = json!(order::is_archimedean(&q.space)?);
            Ok((out, Vec::new(), warnings))
        }
        "embed" => {
            order::ensure_valid(space)?;
            let emb = funcsys::kadison_embed(space)?;
            let samples = r.flags.samples.unwrap_or(100);
            let rep = funcsys::verify_embedding(space, &emb, samples, 7)?;
            if !rep.all_passed() {
                for f in &rep.failures {
                    warnings.push(format!("embedding check failed: {}", f.check));
                }
            }
            Ok((
                json!({
                    "extreme_states": emb.extreme_states.iter().map(|s| rationals_to_strings(s)).collect::<Vec<_>>(),
                    "matrix": matrix_to_strings(&emb.matrix),
                    "checks": {
                        "isometry": rep.isometry,
                        "order_isomorphism": rep.order_isomorphism,
                        "unit_to_one": rep.unit_to_one,
                        "star_compatible": rep.star_compatible,
                        "samples": rep.samples,
                    },
                }),
                Vec::new(),
                warnings,
            ))
        }
        "extend-functional" => {
            order::ensure_valid(space)?;
            let (basis, values) = r
                .functional
                .clone()
                .ok_or_else(|| CoreError::parse("missing --functional"))?;
            let res = order::extend_positive_functional(space, &basis, &values)?;
            Ok((
                json!({
                    "functional": vector_to_strings(&res.functional.coeffs),
                    "steps": res.steps.iter().map(|s| json!({
                        "direction": rationals_to_strings(&s.direction),
                        "lower": rational_to_string(&s.lower),
                        "upper": rational_to_string(&s.upper),
                        "gamma": rational_to_string(&s.gamma),
                    })).collect::<Vec<_>>(),
                }),
                Vec::new(),
                warnings,
            ))
        }
        "first-iso" => {
            order::ensure_valid(space)?;
            let matrix = r
                .map
                .clone()
                .ok_or_else(|| CoreError::parse("missing --map"))?;
            let (_, target) = r
                .target
                .as_ref()
                .ok_or_else(|| CoreError::parse("missing target space"))?;
            order::ensure_valid(target)?;
            let phi = LinearMap::new(matrix);
            let rep = arch::first_isomorphism(space, &phi, target)?;
            Ok((
                json!({
                    "kernel_basis": rep.kernel_basis.iter().map(|b| rationals_to_strings(b)).collect::<Vec<_>>(),
                    "kernel_is_order_ideal": rep.kernel_is_order_ideal,
                    "quotient": quotient_json(&rep.quotient),
                    "induced_matrix": matrix_to_strings(&rep.induced.matrix),
                    "cone_condition": rep.cone_condition,
                    "order_isomorphism": rep.order_isomorphism,
                }),
                Vec::new(),
                warnings,
            ))
        }
        other => Err(CoreError::parse(format!("unknown operation `{other}`"))),
    }
}

/// State and seminorm values are computed against the closed cone; on
/// non-Archimedean spaces this matches the sup-over-states semantics and is
/// surfaced as a warning.
fn push_closure_warning(space: &OrderedSpace, warnings: &mut Vec<String>) -> Result<(), CoreError> {
    if !order::is_archimedean(space)? {
        warnings.push(
            "space is not Archimedean: state and seminorm values are taken against the closure of the cone"
                .to_string(),
        );
    }
    Ok(())
}

fn quotient_json(q: &arch::QuotientResult) -> Value {
    json!({
        "identity": q.is_identity(),
        "kernel_basis": q.kernel_basis.iter().map(|b| rationals_to_strings(b)).collect::<Vec<_>>(),
        "projection": matrix_to_strings(&q.projection.matrix),
        "section": matrix_to_strings(&q.section.matrix),
        "quotient_space": space_to_file(&q.space),
    })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn verify_report(path: &Path) -> Result<ExitCode, CoreError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::parse(format!("cannot read {}: {e}", path.display())))?;
    let report: Report = serde_json::from_str(&text)
        .map_err(|e| CoreError::parse(format!("invalid report: {e}")))?;
    let mut ok = true;
    let mut check = |name: &str, passed: bool| {
        println!("{} {}", if passed { "PASS" } else { "FAIL" }, name);
        ok &= passed;
    };

    let recomputed = digest_of(&json!({
        "operation": report.operation,
        "space": report.inputs.space,
        "element": report.inputs.element,
        "ideal": report.inputs.ideal,
        "map": report.inputs.map,
        "target": report.inputs.target_space,
        "functional": report.inputs.functional,
        "flags": report.inputs.flags,
    }));
    check("inputs digest", recomputed == report.inputs.digest);

    let space = report.inputs.space.to_space()?;
    let mode: ScalarMode = report.inputs.space.scalar_mode.into();
    let element = report
        .inputs
        .element
        .as_ref()
        .map(|e| format::element_from_file(e, mode))
        .transpose()?;

    // certificates re-verify against the claimed bounds
    if report.operation == "norm" {
        let v = element
            .clone()
            .ok_or_else(|| CoreError::parse("norm report without an element"))?;
        let lower_claim = report.result.get("lower").and_then(Value::as_f64);
        let upper_claim = report.result.get("upper").and_then(Value::as_f64);
        for cert in &report.certificates {
            if cert_side(cert) == "lower" {
                match lower_cert_from_json(cert).and_then(|c| norms::verify_lower_cert(&space, &v, &c)) {
                    Ok(bound) => {
                        let claim_ok = lower_claim.is_none_or(|l| bound >= l - 1e-9);
                        check("lower certificate", claim_ok);
                    }
                    Err(e) => check(&format!("lower certificate ({e})"), false),
                }
            } else {
                match upper_cert_from_json(cert).and_then(|c| norms::verify_upper_cert(&space, &v, &c)) {
                    Ok(bound) => {
                        let claim_ok = upper_claim.is_none_or(|u| bound <= u + 1e-9);
                        check("upper certificate", claim_ok);
                    }
                    Err(e) => check(&format!("upper certificate ({e})"), false),
                }
            }
        }
    }

    // deterministic re-execution must reproduce the result block
    let resolved = Resolved {
        operation: report.operation.clone(),
        space,
        element,
        ideal: report
            .inputs
            .ideal
            .as_ref()
            .map(|b| {
                b.iter()
                    .map(|v| format::parse_vector(v, mode))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?,
        map: report
            .inputs
            .map
            .as_ref()
            .map(|m| matrix_from_rows(m, mode))
            .transpose()?,
        target: report
            .inputs
            .target_space
            .as_ref()
            .map(|f| Ok::<_, CoreError>((f.clone(), f.to_space()?)))
            .transpose()?,
        functional: report
            .inputs
            .functional
            .as_ref()
            .map(|(basis, values)| {
                let b = basis
                    .iter()
                    .map(|v| format::parse_vector(v, mode))
                    .collect::<Result<Vec<_>, _>>()?;
                let vals = values
                    .iter()
                    .map(|s| parse_scalar(s, mode))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok::<_, CoreError>((b, vals))
            })
            .transpose()?,
        flags: report.inputs.flags,
        file: report.inputs.space.clone(),
    };
    match execute(&resolved) {
        Ok((result, _, _)) => check("result reproduces", result == report.result),
        Err(e) => check(&format!("re-execution ({e})"), false),
    }

    Ok(if ok {
        println!("report verified");
        ExitCode::SUCCESS
    } else {
        eprintln!("report verification failed");
        ExitCode::FAILURE
    })
}
