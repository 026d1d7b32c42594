use std::path::PathBuf;

use e3calc::fixtures::{
    contractible_triangles, embracing_circle, frame_names, load_fixture, BASE_POINT,
};
use e3calc::integration::Curve3;
use e3calc::io::{read_algebra, read_frame};
use e3calc::lambda::{
    cauchy_formula_residual_field, cauchy_theorem_residual_field, default_lambda_circle,
    exactness_conditions, lambda_numeric, product_conditions, LambdaOptions, DEFAULT_LAMBDA_TOL,
};
use e3calc::monogenic::RepresentationField;
use e3calc::resolvent::zeta_inverse_closed;
use e3calc::{
    AlgElement, AlgebraSpec, E3Frame, Field, MonogenicSpec, Point3, ValidationReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::Command;

const TOL_INVERT: f64 = 1e-9;
const TOL_CAUCHY: f64 = 1e-7;
const TOL_FORMULA: f64 = 1e-6;
const DEFAULT_LAMBDA_RADIUS: f64 = 1.0;
const DEFAULT_FORMULA_RADIUS: f64 = 0.2;
const LOOP_SIZE: f64 = 0.3;
const RANDOM_POINTS: usize = 16;

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub fixture: Option<String>,
    pub algebra: Option<PathBuf>,
    pub frame: Option<PathBuf>,
    pub nodes: usize,
    pub radius: Option<f64>,
    pub tol: Option<f64>,
    pub seed: u64,
}

pub struct Outcome {
    pub code: u8,
    pub summary: Vec<String>,
    pub error: Option<String>,
    pub result: Value,
}

impl Outcome {
    pub fn bad_input(error: String) -> Self {
        Outcome {
            code: 2,
            summary: Vec::new(),
            error: Some(error),
            result: Value::Null,
        }
    }
}

/// One asserted tolerance.
#[derive(Debug, Clone, Serialize)]
struct Check {
    name: String,
    value: f64,
    tolerance: f64,
    pass: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

struct Inputs {
    label: String,
    spec: AlgebraSpec,
    frame: Option<E3Frame>,
    validation: ValidationReport,
}

impl Inputs {
    fn frame(&self) -> Result<&E3Frame, String> {
        self.frame
            .as_ref()
            .ok_or_else(|| "this command needs a frame (--frame or --fixture)".to_string())
    }
}

fn load(s: &Settings) -> Result<Inputs, String> {
    let (label, spec, frame) = match (&s.fixture, &s.algebra) {
        (Some(name), None) => {
            let f = load_fixture(name).map_err(|e| e.to_string())?;
            (f.name, f.spec, Some(f.frame))
        }
        (None, Some(path)) => {
            let spec = read_algebra(path).map_err(|e| e.to_string())?;
            (path.display().to_string(), spec, None)
        }
        _ => return Err("one of --fixture or --algebra is required".into()),
    };
    let frame = match &s.frame {
        Some(path) => Some(read_frame(path, &spec).map_err(|e| e.to_string())?),
        None => frame,
    };
    let validation = spec.validate();
    Ok(Inputs {
        label,
        spec,
        frame,
        validation,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

struct Section {
    result: Value,
    checks: Vec<Check>,
    notes: Vec<String>,
}

pub fn run(command: Command, s: &Settings) -> Outcome {
    if command == Command::VerifyAll {
        return verify_all(s);
    }
    let inputs = match load(s) {
        Ok(i) => i,
        Err(e) => return Outcome::bad_input(e),
    };
    single(command, &inputs, s)
}

fn single(command: Command, inputs: &Inputs, s: &Settings) -> Outcome {
    if !inputs.validation.is_valid() {
        let count = inputs.validation.violations.len();
        return Outcome {
            code: 2,
            summary: inputs
                .validation
                .violations
                .iter()
                .map(|v| format!("violation: {v}"))
                .collect(),
            error: Some(format!("algebra '{}' has {count} violation(s)", inputs.label)),
            result: json!({
                "algebra": inputs.label,
                "valid": false,
                "violations": to_value(&inputs.validation.violations),
            }),
        };
    }
    let section = match command {
        Command::Validate => Ok(validate(inputs)),
        Command::Invert => invert(inputs, s),
        Command::Lambda => lambda(inputs, s),
        Command::Classify => classify(inputs),
        Command::VerifyCauchy => verify_cauchy(inputs, s),
        Command::VerifyFormula => verify_formula(inputs, s),
        Command::VerifyAll => unreachable!("handled by run"),
    };
    match section {
        Ok(sec) => finish(&inputs.label, sec),
        Err(e) => Outcome::bad_input(format!("{}: {e}", inputs.label)),
    }
}

fn finish(label: &str, sec: Section) -> Outcome {
    let mut summary: Vec<String> = sec.notes.iter().map(|n| format!("{label}: {n}")).collect();
    for c in &sec.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        summary.push(format!(
            "{label}: {tag} {} = {:.3e} (tol {:e})",
            c.name, c.value, c.tolerance
        ));
    }
    let code = if sec.checks.iter().all(|c| c.pass) { 0 } else { 1 };
    let mut result = sec.result;
    if let Value::Object(map) = &mut result {
        map.insert("checks".into(), to_value(&sec.checks));
    }
    Outcome {
        code,
        summary,
        error: None,
        result,
    }
}

fn validate(inputs: &Inputs) -> Section {
    let spec = &inputs.spec;
    Section {
        result: json!({
            "algebra": inputs.label,
            "n": spec.n(),
            "m": spec.m(),
            "valid": true,
            "violations": [],
            "propositions": to_value(&spec.check_propositions()),
        }),
        checks: Vec::new(),
        notes: vec![format!("n = {}, m = {}, table valid", spec.n(), spec.m())],
    }
}

fn sample_points(frame: &E3Frame, seed: u64) -> Vec<Point3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = vec![BASE_POINT];
    while points.len() <= RANDOM_POINTS {
        let p = Point3::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        if frame.xi_values(p).iter().all(|x| x.norm() >= 0.05) {
            points.push(p);
        }
    }
    points
}

fn invert(inputs: &Inputs, s: &Settings) -> Result<Section, String> {
    let (spec, frame) = (&inputs.spec, inputs.frame()?);
    let tol = s.tol.unwrap_or(TOL_INVERT);
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for p in sample_points(frame, s.seed) {
        let direct = spec.invert_direct(&frame.zeta(p)).map_err(|e| e.to_string())?;
        let closed = zeta_inverse_closed(frame, p, spec).map_err(|e| e.to_string())?;
        let rel = (&closed - &direct).norm() / direct.norm();
        worst = worst.max(rel);
        rows.push(json!({
            "point": p,
            "direct": direct,
            "recurrence": closed,
            "relative_difference": rel,
        }));
    }
    Ok(Section {
        result: json!({ "algebra": inputs.label, "points": rows }),
        checks: vec![Check::at_most("max relative difference", worst, tol)],
        notes: Vec::new(),
    })
}

fn lambda(inputs: &Inputs, s: &Settings) -> Result<Section, String> {
    let (spec, frame) = (&inputs.spec, inputs.frame()?);
    let radius = s.radius.unwrap_or(DEFAULT_LAMBDA_RADIUS);
    let tol = s.tol.unwrap_or(DEFAULT_LAMBDA_TOL);
    let circle = default_lambda_circle(radius, s.nodes).map_err(|e| e.to_string())?;
    let r = lambda_numeric(frame, &circle, spec, LambdaOptions { tol }).map_err(|e| e.to_string())?;
    let report = exactness_conditions(frame, spec);
    let mut check = Check::at_most(
        "lambda - 2 pi i where predicted",
        r.deviation,
        tol * (1.0 + r.lambda.norm()),
    );
    check.pass = !report.predicted_2pi_i || r.is_2pi_i;
    Ok(Section {
        notes: vec![format!(
            "||lambda - 2 pi i|| = {:.3e}, is_2pi_i = {}, predicted = {}",
            r.deviation, r.is_2pi_i, report.predicted_2pi_i
        )],
        result: json!({
            "algebra": inputs.label,
            "lambda": to_value(&r),
            "exactness": to_value(&report),
        }),
        checks: vec![check],
    })
}

fn classify(inputs: &Inputs) -> Result<Section, String> {
    let (spec, frame) = (&inputs.spec, inputs.frame()?);
    let report = exactness_conditions(frame, spec);
    let products = if spec.n() - spec.m() == 4 {
        to_value(&product_conditions(spec))
    } else {
        Value::Null
    };
    Ok(Section {
        notes: vec![format!(
            "theorem8 = {}, predicted_2pi_i = {}",
            report.theorem8, report.predicted_2pi_i
        )],
        result: json!({
            "algebra": inputs.label,
            "exactness": to_value(&report),
            "product_conditions": products,
            "frame_warnings": to_value(&frame.warnings()),
        }),
        checks: Vec::new(),
    })
}

fn exp_data(spec: &AlgebraSpec) -> Result<MonogenicSpec, String> {
    let exp = e3calc::fixtures::load_function("exp").map_err(|e| e.to_string())?;
    Ok(MonogenicSpec::uniform(spec.m(), exp))
}

fn power<'a>(
    frame: &'a E3Frame,
    spec: &'a AlgebraSpec,
    k: usize,
) -> impl Fn(Point3) -> e3calc::Result<AlgElement> + Sync + 'a {
    move |p| {
        let z = frame.zeta(p);
        Ok((0..k).fold(spec.unit(), |acc, _| spec.mul(&acc, &z)))
    }
}

fn verify_cauchy(inputs: &Inputs, s: &Settings) -> Result<Section, String> {
    let (spec, frame) = (&inputs.spec, inputs.frame()?);
    let tol = s.tol.unwrap_or(TOL_CAUCHY);
    let data = exp_data(spec)?;
    let rep = RepresentationField::new(&data, frame, spec);
    let (zeta, square) = (power(frame, spec, 1), power(frame, spec, 2));
    let fields: [(&str, &dyn Field); 3] = [("zeta", &zeta), ("zeta^2", &square), ("exp", &rep)];
    let per_edge = s.nodes.div_ceil(3);
    let loops = contractible_triangles(LOOP_SIZE)
        .into_iter()
        .map(|[a, b, c]| Curve3::triangle(a, b, c, per_edge))
        .collect::<e3calc::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    for (label, phi) in fields {
        for (i, curve) in loops.iter().enumerate() {
            let r = cauchy_theorem_residual_field(phi, frame, curve, spec).map_err(|e| e.to_string())?;
            checks.push(Check::at_most(format!("{label} on loop {i}"), r, tol));
        }
    }
    // a loop around every L_u: the theorem does not apply and the integral is lambda
    let inverse = |p: Point3| spec.invert_direct(&frame.zeta(p));
    let circle = default_lambda_circle(DEFAULT_LAMBDA_RADIUS, s.nodes).map_err(|e| e.to_string())?;
    let around = cauchy_theorem_residual_field(&inverse, frame, &circle, spec).map_err(|e| e.to_string())?;
    Ok(Section {
        notes: vec![format!("zeta^-1 around the origin: {around:.6e} (non-contractible)")],
        result: json!({
            "algebra": inputs.label,
            "nodes_per_loop": 3 * per_edge,
            "non_contractible_inverse": around,
        }),
        checks,
    })
}

fn verify_formula(inputs: &Inputs, s: &Settings) -> Result<Section, String> {
    let (spec, frame) = (&inputs.spec, inputs.frame()?);
    let tol = s.tol.unwrap_or(TOL_FORMULA);
    let radius = s.radius.unwrap_or(DEFAULT_FORMULA_RADIUS);
    let data = exp_data(spec)?;
    let rep = RepresentationField::new(&data, frame, spec);
    let (zeta, square) = (power(frame, spec, 1), power(frame, spec, 2));
    let fields: [(&str, &dyn Field); 3] = [("zeta", &zeta), ("zeta^2", &square), ("exp", &rep)];
    let circle = embracing_circle(BASE_POINT, radius, s.nodes).map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    let mut lambda = Value::Null;
    for (label, phi) in fields {
        let r = cauchy_formula_residual_field(phi, frame, BASE_POINT, &circle, spec)
            .map_err(|e| e.to_string())?;
        lambda = to_value(&r.lambda);
        checks.push(Check::at_most(label, r.residual, tol));
    }
    Ok(Section {
        result: json!({
            "algebra": inputs.label,
            "center": BASE_POINT,
            "radius": radius,
            "lambda": lambda,
        }),
        checks,
        notes: Vec::new(),
    })
}

const SUITE: [Command; 6] = [
    Command::Validate,
    Command::Invert,
    Command::Classify,
    Command::Lambda,
    Command::VerifyCauchy,
    Command::VerifyFormula,
];

fn verify_all(s: &Settings) -> Outcome {
    if s.algebra.is_some() || s.frame.is_some() {
        return Outcome::bad_input("verify-all runs the bundled fixtures; drop --algebra/--frame".into());
    }
    let names: Vec<&str> = match &s.fixture {
        Some(name) => vec![name.as_str()],
        None => {
            let mut all = frame_names();
            all.sort_unstable();
            all
        }
    };
    let runs: Vec<(String, Vec<(Command, Outcome)>)> = names
        .par_iter()
        .map(|&name| {
            let mut local = s.clone();
            local.fixture = Some(name.to_string());
            let outcomes = match load(&local) {
                Ok(inputs) => SUITE.iter().map(|&c| (c, single(c, &inputs, &local))).collect(),
                Err(e) => vec![(Command::Validate, Outcome::bad_input(e))],
            };
            (name.to_string(), outcomes)
        })
        .collect();

    let mut code = 0;
    let mut summary = Vec::new();
    let mut fixtures = serde_json::Map::new();
    for (name, outcomes) in runs {
        let mut entry = serde_json::Map::new();
        for (command, o) in outcomes {
            code = code.max(o.code);
            summary.extend(o.summary);
            if let Some(e) = &o.error {
                summary.push(format!("{name}: {} error: {e}", command.name()));
            }
            entry.insert(
                command.name().into(),
                json!({ "code": o.code, "error": o.error, "result": o.result }),
            );
        }
        fixtures.insert(name, Value::Object(entry));
    }
    Outcome {
        code,
        summary,
        error: None,
        result: json!({ "fixtures": fixtures }),
    }
}
