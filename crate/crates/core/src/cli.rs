//! Command-line entry points and their JSON reports.
//!
//! A report depends only on the model, the command and the seed, so equal
//! inputs give byte-identical output. Wall-clock timing is kept out of the
//! report and printed as a diagnostic instead.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::Complex;
use crate::complex::{brace, cup, differential, differential_via_braces, pre_jacobi_defect};
use crate::deformation::{
    are_equivalent, first_order_classes, lift_to_order, LiftOutcome, ObstructionResult,
};
use crate::io::{
    cochain_value, field_value, jet_value, parse_cochain, parse_deformation_jet, parse_model,
};
use crate::models::{CochainModel, Placement};
use crate::poisson::{check_poisson, quasiclassical_limit, PoissonReport};
use crate::sampling::{random_cochain, rng, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "hochschild",
    version,
    about = "Hochschild complexes of monoidal functors, exactly"
)]
pub struct Cli {
    /// Model document (JSON).
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the randomized identity suites.
    Verify,
    /// Cohomology dimensions and representatives.
    Cohomology {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Lift every second-cohomology class as far as possible.
    Deform {
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Extend a deformation jet.
    Lift {
        jet: PathBuf,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Search for a gauge equivalence between two jets.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check the Poisson axioms for a 2-cochain.
    PoissonCheck { pi: PathBuf },
    /// Quasi-classical limit of a jet of order at least 2.
    ClassicalLimit { jet: PathBuf },
    /// Evaluate a cochain at the monoidal unit.
    EvalUnit { cochain: PathBuf },
}

impl Command {
    fn echo(&self) -> Vec<String> {
        let path = |p: &Path| p.display().to_string();
        match self {
            Command::Verify => vec!["verify".into()],
            Command::Cohomology { max_degree } => {
                vec![
                    "cohomology".into(),
                    "--max-degree".into(),
                    max_degree.to_string(),
                ]
            }
            Command::Deform { order } => vec!["deform".into(), "--order".into(), order.to_string()],
            Command::Lift { jet, order } => vec![
                "lift".into(),
                path(jet),
                "--order".into(),
                order.to_string(),
            ],
            Command::Equiv { a, b, order } => {
                let mut v = vec!["equiv".into(), path(a), path(b)];
                if let Some(n) = order {
                    v.extend(["--order".into(), n.to_string()]);
                }
                v
            }
            Command::PoissonCheck { pi } => vec!["poisson-check".into(), path(pi)],
            Command::ClassicalLimit { jet } => vec!["classical-limit".into(), path(jet)],
            Command::EvalUnit { cochain } => vec!["eval-unit".into(), path(cochain)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    InputError,
    IdentityViolation,
    NegativeResult,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 2,
            Status::IdentityViolation => 3,
            Status::NegativeResult => 4,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Ok => "ok",
            Status::InputError => "input-error",
            Status::IdentityViolation => "identity-violation",
            Status::NegativeResult => "negative-result",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub model: Option<Value>,
    pub seed: u64,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub results: Value,
    #[serde(skip)]
    pub timing: Duration,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        crate::io::to_canonical_json(&serde_json::to_value(self).expect("report serializes"))
    }
}

struct Failure {
    status: Status,
    message: String,
    results: Value,
}

fn input_error(e: impl fmt::Display) -> Failure {
    Failure {
        status: Status::InputError,
        message: e.to_string(),
        results: Value::Null,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn model_summary(model: &CochainModel) -> Value {
    json!({
        "fingerprint": model.fingerprint(),
        "kind": model.kind().to_string(),
        "field": field_value(model.field()),
        "dim": model.dim(),
        "basis": model.basis_names(),
    })
}

/// Runs one command. `model_path` is required by every command.
pub fn run(model_path: Option<&Path>, command: &Command, seed: u64) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport {
        command: command.echo(),
        model: None,
        seed,
        status: Status::Ok,
        exit_code: 0,
        error: None,
        results: Value::Null,
        timing: Duration::ZERO,
    };
    let outcome = (|| {
        let path = model_path.ok_or_else(|| input_error("--model PATH is required"))?;
        let model = parse_model(&read(path)?).map_err(input_error)?;
        report.model = Some(model_summary(&model));
        execute(&model, command, seed)
    })();
    match outcome {
        Ok((status, results)) => {
            report.status = status;
            report.results = results;
        }
        Err(f) => {
            report.status = f.status;
            report.error = Some(f.message);
            report.results = f.results;
        }
    }
    report.exit_code = report.status.exit_code();
    report.timing = start.elapsed();
    report
}

fn execute(model: &CochainModel, command: &Command, seed: u64) -> Result<(Status, Value), Failure> {
    let complex = Complex::new(model.clone());
    match command {
        Command::Verify => Ok(verify(model, seed)),
        Command::Cohomology { max_degree } => {
            let degrees: Vec<Value> = (0..=*max_degree)
                .map(|k| {
                    let r = complex.cohomology(k);
                    json!({
                        "degree": k,
                        "dim_cocycles": r.dim_cocycles,
                        "dim_coboundaries": r.dim_coboundaries,
                        "dim_h": r.dim_h,
                        "representatives": r.representatives.iter().map(cochain_value).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let dims: Vec<usize> = degrees
                .iter()
                .map(|d| d["dim_h"].as_u64().unwrap_or(0) as usize)
                .collect();
            Ok((
                Status::Ok,
                json!({ "max_degree": max_degree, "dims": dims, "degrees": degrees }),
            ))
        }
        Command::Deform { order } => {
            let classes = first_order_classes(&complex).map_err(input_error)?;
            let mut out = Vec::new();
            for (index, jet) in classes.jets.iter().enumerate() {
                let entry = match lift_to_order(&complex, jet, *order).map_err(internal)? {
                    LiftOutcome::Lifted(j) => json!({
                        "index": index,
                        "outcome": "lifted",
                        "reached_order": j.order(),
                        "jet": jet_value(j.terms()),
                    }),
                    LiftOutcome::Blocked {
                        reached,
                        obstruction,
                    } => json!({
                        "index": index,
                        "outcome": "blocked",
                        "reached_order": reached.order(),
                        "jet": jet_value(reached.terms()),
                        "obstruction": obstruction_value(&obstruction),
                    }),
                };
                out.push(entry);
            }
            Ok((
                Status::Ok,
                json!({ "order": order, "h2_dim": classes.report.dim_h, "classes": out }),
            ))
        }
        Command::Lift { jet, order } => {
            let jet = parse_deformation_jet(model, &read(jet)?).map_err(input_error)?;
            match lift_to_order(&complex, &jet, *order).map_err(jet_failure)? {
                LiftOutcome::Lifted(j) => Ok((
                    Status::Ok,
                    json!({ "target_order": order, "outcome": "lifted", "jet": jet_value(j.terms()) }),
                )),
                LiftOutcome::Blocked {
                    reached,
                    obstruction,
                } => Ok((
                    Status::NegativeResult,
                    json!({
                        "target_order": order,
                        "outcome": "blocked",
                        "reached_order": reached.order(),
                        "jet": jet_value(reached.terms()),
                        "obstruction": obstruction_value(&obstruction),
                    }),
                )),
            }
        }
        Command::Equiv { a, b, order } => {
            let a = parse_deformation_jet(model, &read(a)?).map_err(input_error)?;
            let b = parse_deformation_jet(model, &read(b)?).map_err(input_error)?;
            let n = order.unwrap_or(a.order().min(b.order()));
            match are_equivalent(&complex, &a, &b, n).map_err(jet_failure)? {
                Some(g) => Ok((
                    Status::Ok,
                    json!({ "order": n, "equivalent": true, "gauge": jet_value(g.terms()) }),
                )),
                None => Ok((
                    Status::NegativeResult,
                    json!({ "order": n, "equivalent": false }),
                )),
            }
        }
        Command::PoissonCheck { pi } => {
            let pi = parse_cochain(model, &read(pi)?).map_err(input_error)?;
            let r = check_poisson(model, &pi).map_err(input_error)?;
            let status = if r.all_ok() {
                Status::Ok
            } else {
                Status::NegativeResult
            };
            Ok((status, poisson_value(&r)))
        }
        Command::ClassicalLimit { jet } => {
            let jet = parse_deformation_jet(model, &read(jet)?).map_err(input_error)?;
            let pi = quasiclassical_limit(model, &jet).map_err(input_error)?;
            let r = check_poisson(model, &pi).map_err(input_error)?;
            let results = json!({ "pi": cochain_value(&pi), "poisson": poisson_value(&r) });
            if r.all_ok() {
                Ok((Status::Ok, results))
            } else {
                Err(Failure {
                    status: Status::IdentityViolation,
                    message: "quasi-classical limit fails the Poisson axioms".into(),
                    results,
                })
            }
        }
        Command::EvalUnit { cochain } => {
            let c = parse_cochain(model, &read(cochain)?).map_err(input_error)?;
            let v = model.evaluate_at_unit(&c).map_err(input_error)?;
            Ok((
                Status::Ok,
                json!({ "unit_basis": model.unit_monoid().basis_names(), "value": cochain_value(&v) }),
            ))
        }
    }
}

fn internal(e: impl fmt::Display) -> Failure {
    Failure {
        status: Status::IdentityViolation,
        message: e.to_string(),
        results: Value::Null,
    }
}

fn jet_failure(e: crate::deformation::DeformationError) -> Failure {
    use crate::deformation::DeformationError as E;
    match e {
        E::InternalCocycleFailure { .. } | E::GaugeVerificationFailed => internal(e),
        e => input_error(e),
    }
}

fn obstruction_value(o: &ObstructionResult) -> Value {
    json!({
        "cocycle": cochain_value(&o.cocycle),
        "is_cocycle_verified": o.is_cocycle_verified,
        "class_coordinates": o.class_coordinates.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "liftable": o.liftable,
    })
}

fn poisson_value(r: &PoissonReport) -> Value {
    json!({
        "skew_ok": r.skew_ok,
        "jacobi_ok": r.jacobi_ok,
        "derivation_ok": r.derivation_ok,
        "defects": {
            "skew": cochain_value(&r.skew_defect),
            "jacobi": cochain_value(&r.jacobi_defect),
            "derivation": cochain_value(&r.derivation_defect),
        },
    })
}

const SAMPLES: usize = 10;

struct Suite {
    name: &'static str,
    cases: usize,
    failures: usize,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: 0,
            failures: 0,
        }
    }

    fn record(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

/// Unit and associativity laws, `d² = 0`, agreement of the two forms of the
/// differential, cup/brace coherence, the pre-Jacobi identity, evaluation at
/// the unit, and symmetry of `μ` where applicable.
fn verify(model: &CochainModel, seed: u64) -> (Status, Value) {
    let mut r = rng(seed);
    let m = model;
    let (mu, eta, id) = (m.mu(), m.eta(), m.identity());
    let mut suites = Vec::new();
    let ok = |x: Result<bool, crate::models::ModelError>| x.unwrap_or(false);

    let mut s = Suite::new("unit and associativity");
    s.record(ok(m
        .substitute(&mu, &[Placement::new(0, &eta)])
        .map(|c| c == id)));
    s.record(ok(m
        .substitute(&mu, &[Placement::new(1, &eta)])
        .map(|c| c == id)));
    s.record(ok(m.substitute(&mu, &[Placement::new(0, &mu)]).and_then(
        |l| Ok(l == m.substitute(&mu, &[Placement::new(1, &mu)])?),
    )));
    suites.push(s);

    let mut sq = Suite::new("differential squares to zero");
    let mut dual = Suite::new("differential equals brace form");
    for k in 0..4 {
        for _ in 0..SAMPLES {
            let c = random_cochain(m, k, &mut r);
            let dc = differential(m, &c).expect("own cochain");
            sq.record(differential(m, &dc).map(|x| x.is_zero()).unwrap_or(false));
            if k >= 1 {
                dual.record(
                    differential_via_braces(m, &c)
                        .map(|x| x == dc)
                        .unwrap_or(false),
                );
            }
        }
    }
    suites.push(sq);
    suites.push(dual);

    let mut cups = Suite::new("cup equals signed brace with mu");
    for (i, j) in [(0, 1), (1, 1), (1, 2), (2, 1), (0, 2)] {
        for _ in 0..SAMPLES {
            let a = random_cochain(m, i, &mut r);
            let b = random_cochain(m, j, &mut r);
            let lhs = cup(m, &a, &b).expect("own cochains");
            let rhs = brace(m, &mu, &[&a, &b]).expect("own cochains");
            cups.record(lhs == rhs.scale(&m.field().one().signed(i as i64)));
        }
    }
    suites.push(cups);

    let mut jac = Suite::new("pre-Jacobi identity");
    let patterns: [(usize, &[usize], &[usize]); 4] = [
        (2, &[2], &[1]),
        (2, &[1], &[2]),
        (2, &[1, 1], &[2]),
        (2, &[2], &[1, 1]),
    ];
    for (ad, bds, cds) in patterns {
        for _ in 0..SAMPLES {
            let a = random_cochain(m, ad, &mut r);
            let bs: Vec<_> = bds.iter().map(|&d| random_cochain(m, d, &mut r)).collect();
            let cs: Vec<_> = cds.iter().map(|&d| random_cochain(m, d, &mut r)).collect();
            let b_refs: Vec<_> = bs.iter().collect();
            let c_refs: Vec<_> = cs.iter().collect();
            jac.record(
                pre_jacobi_defect(m, &a, &b_refs, &c_refs)
                    .map(|x| x.is_zero())
                    .unwrap_or(false),
            );
        }
    }
    suites.push(jac);

    let mut unit = Suite::new("evaluation at the unit is a homomorphism");
    let target = m.unit_monoid();
    let eval = |c: &crate::models::Cochain| m.evaluate_at_unit(c).expect("own cochain");
    for _ in 0..SAMPLES {
        let a = random_cochain(m, 1, &mut r);
        let b = random_cochain(m, 2, &mut r);
        let d_ok = eval(&differential(m, &b).expect("own"))
            == differential(&target, &eval(&b)).expect("own");
        let cup_ok =
            eval(&cup(m, &a, &b).expect("own")) == cup(&target, &eval(&a), &eval(&b)).expect("own");
        let brace_ok = eval(&brace(m, &b, &[&a]).expect("own"))
            == brace(&target, &eval(&b), &[&eval(&a)]).expect("own");
        unit.record(d_ok && cup_ok && brace_ok);
    }
    suites.push(unit);

    if m.is_symmetric_capable() {
        let mut sym = Suite::new("mu commutes with the symmetry");
        sym.record(crate::poisson::check_symmetric(m).unwrap_or(false));
        suites.push(sym);
    }

    let all = suites.iter().all(|s| s.failures == 0);
    let results = json!({
        "all_passed": all,
        "suites": suites.iter().map(|s| json!({ "name": s.name, "cases": s.cases, "failures": s.failures })).collect::<Vec<_>>(),
    });
    (
        if all {
            Status::Ok
        } else {
            Status::IdentityViolation
        },
        results,
    )
}

/// Runs a parsed command line, writing the report and returning the exit
/// code.
pub fn main_with(cli: Cli) -> i32 {
    let report = run(cli.model.as_deref(), &cli.command, cli.seed);
    let text = report.to_json();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return Status::InputError.exit_code();
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    eprintln!("{} in {:.3}s", report.status, report.timing.as_secs_f64());
    report.exit_code
}
