use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::build::{build_ring, BuiltRing};
use super::spec::{parse_spec, SpecAst, SpecError};
use super::suite::run_suite;
use crate::error::AlgebraError;
use crate::matrix::{diagonalize_trivext, matrix_morphic_witness, smith_normal_form, Base, Matrix, TrivExtMatrix};
use crate::morphic::{morphic_witness, quasi_morphic_witness, regularity, ring_properties};
use crate::structure::{build_lattice_map, lattice_map_unchecked, reconcile};
use crate::torsion::{
    annihilator_shape, morphic_partner, principal_shape, verify_partner, Euclidean, FpPoly, FractionModOne, Integer,
    PrimeField, QTrivExtElement,
};
use crate::{Limits, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(CliError::Usage(format!("unknown format {s:?}; expected text or json"))),
        }
    }
}

/// Caps, sampling parameters and output format for one run.
///
/// Every sampled check draws from a ChaCha8 stream seeded with `seed`, so a
/// fixed `(spec, config)` pair always produces byte-identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub order_cap: usize,
    pub scan_cap: usize,
    pub samples: usize,
    /// Samples per annihilator equality in matrix certification; each one
    /// costs several matrix products, so the budget is smaller.
    pub matrix_samples: usize,
    pub seed: u64,
    /// Size bound for sampled integers and denominators.
    pub denominator_bound: u64,
    /// Degree bound for sampled polynomials.
    pub degree_bound: u64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order_cap: Limits::default().order_cap,
            scan_cap: 4096,
            samples: 100_000,
            matrix_samples: 1_000,
            seed: 0,
            denominator_bound: 1_000_000,
            degree_bound: 12,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            order_cap: self.order_cap,
            scan_cap: self.scan_cap,
            samples: self.samples,
            seed: self.seed,
            ..Limits::default()
        }
    }

    /// Applies `key=value` pairs separated by commas. Keys: `order`, `scan`,
    /// `samples`, `matrix_samples`, `denominator`, `degree`.
    pub fn apply_caps(&mut self, text: &str) -> Result<(), CliError> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("cap {item:?} is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| CliError::Usage(format!("cap {key} must be a positive integer")))?;
            let as_usize = || usize::try_from(value).map_err(|_| CliError::Usage(format!("cap {key} is too large")));
            match key.trim() {
                "order" => self.order_cap = as_usize()?,
                "scan" => self.scan_cap = as_usize()?,
                "samples" => self.samples = as_usize()?,
                "matrix_samples" => self.matrix_samples = as_usize()?,
                "denominator" => self.denominator_bound = value,
                "degree" => self.degree_bound = value,
                other => return Err(CliError::Usage(format!("unknown cap {other:?}"))),
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for alarms, 3 for exceeded caps, 2 for every input error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(AlgebraError::Alarm(_)) => 1,
            CliError::Algebra(AlgebraError::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Analyze,
    Classify,
    Witness,
    Lattice,
    Qtriv,
    Snf,
    Diag,
    Verify,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Analyze,
        Command::Classify,
        Command::Witness,
        Command::Lattice,
        Command::Qtriv,
        Command::Snf,
        Command::Diag,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Classify => "classify",
            Command::Witness => "witness",
            Command::Lattice => "lattice",
            Command::Qtriv => "qtriv",
            Command::Snf => "snf",
            Command::Diag => "diag",
            Command::Verify => "verify",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown command {s:?}")))
    }
}

/// Text inputs of a command.
#[derive(Debug, Clone, Default)]
pub struct CommandInput {
    /// Ring spec, or the element for `qtriv`.
    pub spec: Option<String>,
    /// Element for `witness`, proposed partner for `qtriv`.
    pub element: Option<String>,
    /// Contents of the matrix file for `snf` and `diag`.
    pub matrix: Option<String>,
}

/// A finished report: `passed` decides between exit codes 0 and 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Command,
    pub value: Value,
    pub passed: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut lines = Vec::new();
                flatten("", &self.value, &mut lines);
                let mut s = lines.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

fn flatten(path: &str, value: &Value, out: &mut Vec<String>) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&p, v, out);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), v, out);
            }
        }
        Value::String(s) => out.push(format!("{path}: {s}")),
        other => out.push(format!("{path}: {other}")),
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn with(mut value: Value, extra: &[(&str, Value)]) -> Value {
    if let Value::Object(map) = &mut value {
        for (k, v) in extra {
            map.insert(k.to_string(), v.clone());
        }
    }
    value
}

fn require<'a>(field: &'a Option<String>, what: &str, command: Command) -> Result<&'a str, CliError> {
    field
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("{command} needs {what}")))
}

fn built_spec(input: &CommandInput, command: Command, limits: &Limits) -> Result<(SpecAst, BuiltRing), CliError> {
    let ast = parse_spec(require(&input.spec, "--spec", command)?)?;
    let built = build_ring(&ast, limits)?;
    Ok((ast, built))
}

pub fn run_command(command: Command, input: &CommandInput, config: &RunConfig) -> Result<Report, CliError> {
    let limits = config.limits();
    let (value, passed) = match command {
        Command::Analyze => {
            let (ast, built) = built_spec(input, command, &limits)?;
            let report = ring_properties(&built.ring, &limits)?;
            (with(to_value(&report), &[("spec", json!(ast.to_string()))]), true)
        }
        Command::Classify => {
            let (ast, built) = built_spec(input, command, &limits)?;
            let s = extension_of(&built, command)?;
            let rec = reconcile(s.base(), s.bimodule(), &limits)?;
            let agrees = rec.agrees();
            (
                with(to_value(&rec), &[("agrees", json!(agrees)), ("spec", json!(ast.to_string()))]),
                agrees,
            )
        }
        Command::Witness => {
            let (ast, built) = built_spec(input, command, &limits)?;
            let a = parse_ring_element(require(&input.element, "--element", command)?, &built)?;
            let ring = &built.ring;
            let value = json!({
                "element": a,
                "label": ring.label(a),
                "left": to_value(morphic_witness(ring, a, Side::Left)?),
                "right": to_value(morphic_witness(ring, a, Side::Right)?),
                "left_quasi": to_value(quasi_morphic_witness(ring, a, Side::Left)?),
                "right_quasi": to_value(quasi_morphic_witness(ring, a, Side::Right)?),
                "regularity": to_value(regularity(ring, a)?),
                "spec": ast.to_string(),
            });
            (value, true)
        }
        Command::Lattice => {
            let (ast, built) = built_spec(input, command, &limits)?;
            let s = extension_of(&built, command)?;
            let (map, morphic) = match build_lattice_map(s) {
                Ok(map) => (map, true),
                Err(AlgebraError::Precondition(_)) => (lattice_map_unchecked(s), false),
                Err(e) => return Err(e.into()),
            };
            let value = with(
                to_value(&map),
                &[
                    ("injective", json!(map.is_injective())),
                    ("inclusion_reversing", json!(map.is_inclusion_reversing())),
                    ("morphic", json!(morphic)),
                    ("spec", json!(ast.to_string())),
                ],
            );
            (value, true)
        }
        Command::Qtriv => {
            let text = require(&input.spec, "--spec", command)?;
            let (domain, element) = split_domain(text)?;
            let partner = input.element.as_deref();
            match domain {
                Domain::Integers => qtriv::<Integer>(&(), "Z", element, partner, config, config.denominator_bound)?,
                Domain::Poly(f) => {
                    qtriv::<FpPoly>(&f, &domain.name(), element, partner, config, config.degree_bound)?
                }
            }
        }
        Command::Snf | Command::Diag => {
            let text = require(&input.matrix, "--matrix-file", command)?;
            let file: Value = serde_json::from_str(text)
                .map_err(|e| CliError::Usage(format!("matrix file is not JSON: {e}")))?;
            let domain_text = file
                .get("domain")
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::Usage("matrix file needs a \"domain\" string".into()))?;
            let domain = parse_domain(domain_text)?;
            let matrix = file
                .get("matrix")
                .ok_or_else(|| CliError::Usage("matrix file needs a \"matrix\" array".into()))?;
            let name = domain.name();
            match (command, domain) {
                (Command::Snf, Domain::Integers) => snf::<Integer>(&(), &name, matrix)?,
                (Command::Snf, Domain::Poly(f)) => snf::<FpPoly>(&f, &name, matrix)?,
                (_, Domain::Integers) => diag::<Integer>(&(), &name, matrix, config, config.denominator_bound)?,
                (_, Domain::Poly(f)) => diag::<FpPoly>(&f, &name, matrix, config, config.degree_bound)?,
            }
        }
        Command::Verify => {
            let suite = run_suite(config);
            let passed = suite.passed;
            (to_value(&suite), passed)
        }
    };
    Ok(Report { command, value, passed })
}

fn extension_of(built: &BuiltRing, command: Command) -> Result<&crate::trivext::TrivialExtensionRing, CliError> {
    built
        .extension
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("{command} needs a TrivExt(...) spec")))
}

/// An index, or `(r, m)` component indices for a trivial extension.
fn parse_ring_element(text: &str, built: &BuiltRing) -> Result<usize, CliError> {
    let text = text.trim();
    let order = built.ring.order();
    let index = if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let s = built
            .extension
            .as_ref()
            .ok_or_else(|| CliError::Usage("pair elements need a TrivExt(...) spec".into()))?;
        let (r, m) = inner
            .split_once(',')
            .ok_or_else(|| CliError::Usage(format!("element {text:?} is not (r, m)")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad component {v:?}")))
        };
        let (r, m) = (parse(r)?, parse(m)?);
        if r >= s.base().order() || m >= s.bimodule().order() {
            return Err(AlgebraError::OutOfRange { index: r.max(m), order }.into());
        }
        s.encode(r, m)
    } else {
        text.parse::<usize>()
            .map_err(|_| CliError::Usage(format!("element {text:?} is not an index")))?
    };
    if index >= order {
        return Err(AlgebraError::OutOfRange { index, order }.into());
    }
    Ok(index)
}

#[derive(Debug, Clone, Copy)]
enum Domain {
    Integers,
    Poly(PrimeField),
}

impl Domain {
    fn name(&self) -> String {
        match self {
            Domain::Integers => "Z".into(),
            Domain::Poly(f) => format!("F{}[x]", f.p()),
        }
    }
}

/// `Z`, `ℤ` or `F<p>[x]`.
fn parse_domain(text: &str) -> Result<Domain, CliError> {
    let text = text.trim();
    if text == "Z" || text == "ℤ" {
        return Ok(Domain::Integers);
    }
    let p = text
        .strip_prefix('F')
        .and_then(|t| t.strip_suffix("[x]"))
        .map(|t| t.trim_start_matches('_'))
        .and_then(|t| t.parse::<u64>().ok())
        .ok_or_else(|| CliError::Usage(format!("unknown domain {text:?}; expected Z or F<p>[x]")))?;
    Ok(Domain::Poly(PrimeField::new(p)?))
}

/// Splits an optional `domain:` prefix; the default domain is `Z`.
fn split_domain(text: &str) -> Result<(Domain, &str), CliError> {
    match text.split_once(':') {
        Some((d, rest)) => Ok((parse_domain(d)?, rest.trim())),
        None => Ok((Domain::Integers, text.trim())),
    }
}

/// Parses `(a, p/q)`.
pub fn parse_qtriv_element<E: Euclidean>(domain: &E::Domain, text: &str) -> Result<QTrivExtElement<E>, CliError> {
    let bad = || CliError::Usage(format!("element {text:?} is not (a, p/q)"));
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    let mut depth = 0i32;
    let split = inner
        .char_indices()
        .find(|&(_, c)| {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            c == ',' && depth == 0
        })
        .map(|(i, _)| i)
        .ok_or_else(bad)?;
    let r = E::parse(domain, &inner[..split])?;
    let m = FractionModOne::parse(domain, &inner[split + 1..])?;
    Ok(QTrivExtElement { r, m })
}

fn qtriv<E: Euclidean>(
    domain: &E::Domain,
    name: &str,
    element: &str,
    partner: Option<&str>,
    config: &RunConfig,
    bound: u64,
) -> Result<(Value, bool), CliError> {
    let e = parse_qtriv_element::<E>(domain, element)?;
    let w = match partner {
        Some(p) => parse_qtriv_element::<E>(domain, p)?,
        None => morphic_partner(&e),
    };
    let report = verify_partner(&e, &w, config.samples, bound, config.seed)?;
    let passed = report.passed;
    let value = with(
        to_value(&report),
        &[
            ("annihilator_of_element", json!(annihilator_shape(&e).describe())),
            ("principal_of_partner", json!(principal_shape(&w).describe())),
            ("domain", json!(name)),
        ],
    );
    Ok((value, passed))
}

fn snf<E: Base>(domain: &E::Domain, name: &str, matrix: &Value) -> Result<(Value, bool), CliError> {
    let a: Matrix<E> = Matrix::from_json(domain, matrix)?;
    let s = smith_normal_form(&a);
    s.verify(&a)?;
    let invariants: Vec<Value> = s.invariants().iter().map(Euclidean::to_json).collect();
    let value = with(
        to_value(&s),
        &[
            ("domain", json!(name)),
            ("invariants", Value::Array(invariants)),
            ("rank", json!(s.rank())),
        ],
    );
    Ok((value, true))
}

fn diag<E: Base>(
    domain: &E::Domain,
    name: &str,
    matrix: &Value,
    config: &RunConfig,
    bound: u64,
) -> Result<(Value, bool), CliError> {
    let b: TrivExtMatrix<E> = Matrix::from_json(domain, matrix)?;
    let d = diagonalize_trivext(&b)?;
    d.verify(&b)?;
    let w = matrix_morphic_witness(&b, config.matrix_samples, bound, config.seed)?;
    let value = json!({
        "domain": name,
        "diagonalization": to_value(&d),
        "witness": w.witness,
        "diagonal_partner": w.diagonal_partner,
        "left": to_value(&w.left),
        "right": to_value(&w.right),
    });
    Ok((value, w.certified()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(command: Command, spec: &str, element: Option<&str>) -> Result<Report, CliError> {
        let input = CommandInput {
            spec: Some(spec.into()),
            element: element.map(String::from),
            matrix: None,
        };
        run_command(command, &input, &RunConfig { samples: 200, ..RunConfig::default() })
    }

    #[test]
    fn analyze_z4() {
        let r = run(Command::Analyze, "Z(4)", None).unwrap();
        assert_eq!(r.value["morphic"], json!(true));
        assert_eq!(r.value["unit_regular"], json!(false));
        assert_eq!(r.exit_code(), 0);
        let again = run(Command::Analyze, "Z(4)", None).unwrap();
        assert_eq!(r.render(OutputFormat::Json), again.render(OutputFormat::Json));
        assert!(r.render(OutputFormat::Text).contains("morphic: true"));
    }

    #[test]
    fn classify_conjugation_twist() {
        let r = run(Command::Classify, "TrivExt(Mat(2,Z(2)), Twist(Mat(2,Z(2)), conj([[1,1],[0,1]])))", None).unwrap();
        assert_eq!(r.value["predicted_morphic"], json!(true));
        assert_eq!(r.value["brute_force_morphic"], json!(true));
        assert!(r.passed);
    }

    #[test]
    fn witness_and_lattice() {
        let r = run(Command::Witness, "TrivExt(Z(4), Reg(Z(4)))", Some("(0, 2)")).unwrap();
        assert_eq!(r.value["left"], Value::Null);
        let r = run(Command::Lattice, "TrivExt(Prod(Z(2),Z(2)), Reg(Prod(Z(2),Z(2))))", None).unwrap();
        assert_eq!(r.value["morphic"], json!(true));
        assert_eq!(r.value["entries"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn qtriv_partner_and_negative_control() {
        let r = run(Command::Qtriv, "(3, 1/2)", None).unwrap();
        assert!(r.passed);
        let r = run(Command::Qtriv, "F2[x]: (x, (1)/(x+1))", None).unwrap();
        assert!(r.passed, "{}", r.render(OutputFormat::Text));
        let r = run(Command::Qtriv, "(0, 1/2)", Some("(3, 0)")).unwrap();
        assert!(!r.passed);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn matrix_jobs() {
        let input = CommandInput {
            matrix: Some(r#"{"domain": "Z", "matrix": [[2, 4], [6, 8]]}"#.into()),
            ..CommandInput::default()
        };
        let r = run_command(Command::Snf, &input, &RunConfig::default()).unwrap();
        assert_eq!(r.value["invariants"], json!(["2", "4"]));
        let input = CommandInput {
            matrix: Some(r#"{"domain": "Z", "matrix": [[{"r": "2", "m": "1/3"}, {"r": "0", "m": "1/2"}], [{"r": "4", "m": "0"}, {"r": "6", "m": "1/5"}]]}"#.into()),
            ..CommandInput::default()
        };
        let r = run_command(Command::Diag, &input, &RunConfig { matrix_samples: 50, ..RunConfig::default() }).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn exit_codes() {
        let e = run(Command::Analyze, "GF(4, x^2+x+1)", None).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(Command::Analyze, "Mat(3, Z(4))", None).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = run(Command::Classify, "Z(4)", None).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn caps() {
        let mut c = RunConfig::default();
        c.apply_caps("order=1024, samples=10,degree=4").unwrap();
        assert_eq!((c.order_cap, c.samples, c.degree_bound), (1024, 10, 4));
        assert!(c.apply_caps("order=0").is_err());
        assert!(c.apply_caps("colour=3").is_err());
    }
}
