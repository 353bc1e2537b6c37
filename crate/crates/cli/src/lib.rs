//! Report model and command implementations behind the `superpds` binary.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use superpds::coeff::Coefficient;
use superpds::contact::{contact_bracket, k4_field, s2_field, s_alpha_field, HMode, K4Label, S2Label, SaLabel, SuperFunction};
use superpds::gamma::{
    build_gamma, gamma_alpha_generators, hom_check, phi_images, psl_check, sigma_of_alpha,
    DeformedTarget, GammaBasis, GammaVariant, MatrixTarget, PoissonTarget,
};
use superpds::parse::{parse_coefficient, parse_superfunction, parse_symbol, parse_weyl, ParseError};
use superpds::poly::Param;
use superpds::scalar::Scalar;
use superpds::suites::{run_suite, CheckResult, ParamValue, SuiteName, SuiteParams, ALL_SUITES};
use superpds::weyl::{gamma_matrix, GammaLabel};

pub const SCHEMA_VERSION: u32 = 1;

/// Machine-readable verification report. Field order is fixed; the JSON
/// rendering is byte-identical for identical configurations.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub suite: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ConfigEcho {
    pub alpha: String,
    pub h: String,
    pub mu: String,
    pub range: i64,
    pub cutoff: i64,
    pub seed: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Operation(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Operation(m) => write!(f, "{m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

fn tool_version() -> String {
    format!("superpds {}", env!("CARGO_PKG_VERSION"))
}

/// Parses a parameter value: `symbolic` or an exact rational.
pub fn parse_param_value(text: &str) -> Result<ParamValue, CliError> {
    if text == "symbolic" {
        return Ok(ParamValue::Symbolic);
    }
    let c = parse_coefficient(text)?;
    let s = c
        .as_scalar()
        .ok_or_else(|| CliError::Usage(format!("parameter value must be a constant: {text}")))?;
    Ok(ParamValue::Assigned(s))
}

fn param_text(v: &ParamValue) -> String {
    match v {
        ParamValue::Symbolic => "symbolic".to_string(),
        ParamValue::Assigned(s) => s.to_string(),
    }
}

pub fn config_echo(params: &SuiteParams) -> ConfigEcho {
    ConfigEcho {
        alpha: param_text(&params.alpha),
        h: param_text(&params.h),
        mu: param_text(&params.mu),
        range: params.range,
        cutoff: params.cutoff,
        seed: params.seed,
    }
}

pub fn validate_params(params: &SuiteParams) -> Result<(), CliError> {
    if params.range < 1 {
        return Err(CliError::Usage("--range must be at least 1".into()));
    }
    if params.cutoff > -4 {
        return Err(CliError::Usage("--cutoff must be at most -4".into()));
    }
    Ok(())
}

pub fn build_report(
    suite: &str,
    params: &SuiteParams,
    checks: Vec<CheckResult>,
    elapsed_ms: Option<u64>,
) -> Report {
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    Report {
        schema_version: SCHEMA_VERSION,
        tool: tool_version(),
        suite: suite.to_string(),
        config: config_echo(params),
        checks: checks
            .into_iter()
            .map(|c| CheckRecord {
                id: c.id,
                status: if c.passed { "pass" } else { "fail" }.to_string(),
                residual: c.residual,
                millis: None,
            })
            .collect(),
        passed,
        failed,
        verdict: if failed == 0 { "pass" } else { "fail" }.to_string(),
        elapsed_ms,
    }
}

/// Renders the report; JSON is versioned and stable, text is an aligned
/// table with failures carrying their residuals.
pub fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "suite: {}  ({})", report.suite, report.tool);
            let _ = writeln!(
                out,
                "config: alpha={} h={} mu={} range={} cutoff={} seed={}",
                report.config.alpha,
                report.config.h,
                report.config.mu,
                report.config.range,
                report.config.cutoff,
                report.config.seed
            );
            let width = report
                .checks
                .iter()
                .map(|c| c.id.len())
                .max()
                .unwrap_or(0);
            for c in &report.checks {
                let _ = match (&c.residual, c.status.as_str()) {
                    (Some(r), _) => writeln!(out, "{:<width$}  {}  {r}", c.id, c.status),
                    (None, _) => writeln!(out, "{:<width$}  {}", c.id, c.status),
                };
            }
            let _ = writeln!(
                out,
                "verdict: {} ({} passed, {} failed)",
                report.verdict, report.passed, report.failed
            );
            if let Some(ms) = report.elapsed_ms {
                let _ = writeln!(out, "elapsed: {ms} ms");
            }
            out
        }
    }
}

/// Runs one named suite (or all of them) into a single report.
pub fn run_suites(name: &str, params: &SuiteParams, timings: bool) -> Result<Report, CliError> {
    validate_params(params)?;
    let started = std::time::Instant::now();
    let checks: Vec<CheckResult> = if name == "all" {
        ALL_SUITES
            .into_iter()
            .flat_map(|s| run_suite(s, params))
            .collect()
    } else {
        let suite: SuiteName = name
            .parse()
            .map_err(|e: superpds::suites::UnknownSuite| CliError::Usage(e.to_string()))?;
        run_suite(suite, params)
    };
    let elapsed = timings.then(|| started.elapsed().as_millis() as u64);
    Ok(build_report(name, params, checks, elapsed))
}

/// The bracket surface: calculi over the parsed grammars.
pub fn compute_bracket(
    calculus: &str,
    expr1: &str,
    expr2: &str,
    cutoff: i64,
) -> Result<String, CliError> {
    match calculus {
        "poisson" => {
            let a = parse_symbol(expr1)?;
            let b = parse_symbol(expr2)?;
            let r = a
                .poisson_bracket(&b)
                .map_err(|e| CliError::Operation(e.to_string()))?;
            Ok(r.to_text())
        }
        "circ-h" | "circ_h" => {
            let a = parse_symbol(expr1)?;
            let b = parse_symbol(expr2)?;
            let r = a
                .super_commutator_h(&b, cutoff)
                .map_err(|e| CliError::Operation(e.to_string()))?;
            Ok(r.to_text())
        }
        "contact" => {
            let a = to_superfunction(&parse_superfunction(expr1)?);
            let b = to_superfunction(&parse_superfunction(expr2)?);
            let r = contact_bracket(&a, &b).map_err(|e| CliError::Operation(e.to_string()))?;
            Ok(r.to_text())
        }
        "weyl" => {
            // the normal-ordered product: the relation the grammar exposes
            let a = parse_weyl(expr1)?;
            let b = parse_weyl(expr2)?;
            Ok(a.mul(&b).to_text())
        }
        other => Err(CliError::Usage(format!(
            "unknown calculus {other} (expected poisson, circ-h, contact, weyl)"
        ))),
    }
}

fn to_superfunction(p: &superpds::psymbols::PSymbol) -> SuperFunction {
    let mut out = SuperFunction::zero();
    for (k, c) in p.iter() {
        debug_assert_eq!(k.tau_exp, 0);
        out.add_term(k.t_exp, k.odd, c.clone());
    }
    out
}

/// Looks up a labeled field: `K4:G3[2]`, `S2:h[-1]`, `Sa1:D1[0]`,
/// `Ga:F1`.
pub fn field_text(
    spec: &str,
    alpha: &ParamValue,
    h_mode: &str,
    variant: &str,
    cutoff: i64,
) -> Result<String, CliError> {
    let (family, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("expected FAMILY:LABEL[mode], got {spec}")))?;
    let (label, mode) = match rest.split_once('[') {
        Some((l, tail)) => {
            let m = tail
                .strip_suffix(']')
                .ok_or_else(|| CliError::Usage("missing ] after mode".into()))?;
            let m: i64 = m
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid mode: {m}")))?;
            (l, Some(m))
        }
        None => (rest, None),
    };
    let alpha_c = match alpha {
        ParamValue::Symbolic => Coefficient::alpha(),
        ParamValue::Assigned(s) => Coefficient::from_scalar(s.clone()),
    };
    let need_mode =
        || mode.ok_or_else(|| CliError::Usage(format!("{family}:{label} needs a [mode]")));
    match family {
        "K4" => {
            let l = K4Label::parse(label)
                .ok_or_else(|| CliError::Usage(format!("unknown big-family label {label}")))?;
            let hm = match h_mode {
                "zero" => HMode::Zero,
                "formal" => HMode::Formal,
                other => return Err(CliError::Usage(format!("--h must be zero or formal, got {other}"))),
            };
            let f = k4_field(l, need_mode()?, hm, cutoff)
                .map_err(|e| CliError::Operation(e.to_string()))?;
            Ok(f.to_text())
        }
        "S2" => {
            let l = S2Label::parse(label)
                .ok_or_else(|| CliError::Usage(format!("unknown small-family label {label}")))?;
            Ok(s2_field(l, need_mode()?).to_text())
        }
        "Sa1" | "Sa2" => {
            let copy = if family == "Sa1" { 1 } else { 2 };
            let l = SaLabel::parse(label)
                .ok_or_else(|| CliError::Usage(format!("unknown twisted-family label {label}")))?;
            let deformed = h_mode == "formal";
            let f = s_alpha_field(copy, l, need_mode()?, &alpha_c, deformed)
                .map_err(|e| CliError::Operation(e.to_string()))?;
            Ok(f.to_text())
        }
        "Ga" => {
            let l = GammaLabel::parse(label)
                .ok_or_else(|| CliError::Usage(format!("unknown generator label {label}")))?;
            if variant == "matrices" {
                return Ok(gamma_matrix(l, &alpha_c).to_text());
            }
            let v = GammaVariant::parse(variant)
                .ok_or_else(|| CliError::Usage(format!("unknown variant {variant}")))?;
            let gens = gamma_alpha_generators(&alpha_c, v, cutoff);
            let (_, f) = gens.into_iter().find(|(gl, _)| *gl == l).expect("label set");
            Ok(f.to_text())
        }
        other => Err(CliError::Usage(format!(
            "unknown family {other} (expected K4, S2, Sa1, Sa2, Ga)"
        ))),
    }
}

/// Structure table of the 17-dimensional family at given parameters, plus
/// a Jacobi summary.
pub fn gamma_table_text(sigma_spec: &str) -> Result<String, CliError> {
    let parts: Vec<&str> = sigma_spec.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(
            "--sigma expects three comma-separated coefficients".into(),
        ));
    }
    let sigma = [
        parse_coefficient(parts[0])?,
        parse_coefficient(parts[1])?,
        parse_coefficient(parts[2])?,
    ];
    let g = build_gamma(sigma.clone());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "structure table at sigma = ({}, {}, {})",
        sigma[0], sigma[1], sigma[2]
    );
    let basis = GammaBasis::all();
    for a in &basis {
        for b in &basis {
            let br = g.bracket_basis(*a, *b);
            if br.is_empty() {
                continue;
            }
            let text = br
                .iter()
                .map(|(k, c)| {
                    if c.is_one() {
                        format!("{k}")
                    } else {
                        format!("({c})*{k}")
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ");
            let _ = writeln!(out, "[{a}, {b}] = {text}");
        }
    }
    let violations = g.jacobi_check();
    let _ = writeln!(
        out,
        "jacobi: {} violating triples{}",
        violations.len(),
        if violations.is_empty() { " (identity holds)" } else { "" }
    );
    Ok(out)
}

/// Per-pair verification of one realization against the abstract family.
pub fn gamma_verify(variant_name: &str, params: &SuiteParams) -> Result<Report, CliError> {
    validate_params(params)?;
    let alpha = params.alpha.coefficient(Param::Alpha);
    let source = build_gamma(sigma_of_alpha(&alpha));
    let checks: Vec<CheckResult> = if variant_name == "matrices" {
        let gens = superpds::gamma::gamma_matrix_generators(&alpha);
        let images = phi_images(&gens, |e, c| e.scale(c));
        hom_to_checks(&source, &images, &MatrixTarget, variant_name)
    } else {
        let variant = GammaVariant::parse(variant_name)
            .ok_or_else(|| CliError::Usage(format!("unknown variant {variant_name}")))?;
        let gens = gamma_alpha_generators(&alpha, variant, params.cutoff);
        let images = phi_images(&gens, |e, c| e.scale(c));
        match variant {
            GammaVariant::Poisson | GammaVariant::PseudoLimit => {
                hom_to_checks(&source, &images, &PoissonTarget, variant_name)
            }
            _ => {
                let h_value = match &params.h {
                    ParamValue::Assigned(v) if !v.is_zero() => Some(v.clone()),
                    _ => None,
                };
                let images = match &h_value {
                    None => images,
                    Some(v) => {
                        let mut assign = std::collections::BTreeMap::new();
                        assign.insert(Param::H, v.clone());
                        images
                            .into_iter()
                            .map(|(b, e)| (b, e.evaluate(&assign).expect("h substitution")))
                            .collect()
                    }
                };
                hom_to_checks(
                    &source,
                    &images,
                    &DeformedTarget {
                        cutoff: params.cutoff,
                        h_value,
                    },
                    variant_name,
                )
            }
        }
    };
    Ok(build_report(
        &format!("gamma-verify-{variant_name}"),
        params,
        checks,
        None,
    ))
}

fn hom_to_checks<T: superpds::gamma::TargetAlgebra>(
    source: &superpds::gamma::GammaAlgebra,
    images: &[(GammaBasis, T::Elem)],
    target: &T,
    prefix: &str,
) -> Vec<CheckResult> {
    let report = hom_check(source, images, target);
    let basis = GammaBasis::all();
    let mut out = Vec::new();
    for a in &basis {
        for b in &basis {
            let id = format!("{prefix}/{a},{b}");
            match report.failures.iter().find(|f| f.a == *a && f.b == *b) {
                None => out.push(CheckResult {
                    id,
                    passed: true,
                    residual: None,
                }),
                Some(f) => out.push(CheckResult {
                    id,
                    passed: false,
                    residual: Some(f.residual.clone()),
                }),
            }
        }
    }
    out.push(CheckResult {
        id: format!("{prefix}/images-independent"),
        passed: report.images_independent,
        residual: None,
    });
    out
}

/// Degenerate-value report at one assigned parameter value.
pub fn gamma_psl(alpha_text: &str, params: &SuiteParams) -> Result<Report, CliError> {
    let alpha = parse_coefficient(alpha_text)?;
    let r = psl_check(&alpha);
    let checks = vec![
        CheckResult {
            id: "psl/closes".into(),
            passed: r.closes,
            residual: r.detail.first().cloned(),
        },
        CheckResult {
            id: "psl/dimension-14".into(),
            passed: r.dimension == 14,
            residual: (r.dimension != 14).then(|| format!("dimension {}", r.dimension)),
        },
        CheckResult {
            id: "psl/centerless".into(),
            passed: r.centerless,
            residual: None,
        },
        CheckResult {
            id: "psl/quotient-sl2".into(),
            passed: r.quotient_sl2,
            residual: None,
        },
    ];
    Ok(build_report(
        &format!("gamma-psl-alpha={alpha_text}"),
        params,
        checks,
        None,
    ))
}

/// Convenience used by tests: a scalar parameter value.
pub fn assigned(v: i64) -> ParamValue {
    ParamValue::Assigned(Scalar::from_int(v))
}
