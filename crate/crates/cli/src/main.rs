use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use graded_exp::algebra::GradedAlgebra;
use graded_exp::codim::{self, CodimMode};
use graded_exp::generators::{self, ChainPlan};
use graded_exp::group::{make_group, GroupSpec, Subgroup};
use graded_exp::instance::Instance;
use graded_exp::proof;
use graded_exp::{arith::CyclotomicField, Error};

#[derive(Parser)]
#[command(name = "gexp", version, about = "Exponents of finite-dimensional G-graded algebras")]
struct Cli {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    /// Print the JSON report (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Instance file.
    instance: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity, grading, the radical and Peirce labels.
    Validate(Input),
    /// The graded chain exponent over G-simple components.
    ExpConj(Input),
    /// The ordinary exponent of the identity component.
    ExpE(Input),
    /// The ordinary exponent of the whole algebra.
    ExpFull(Input),
    /// Check exp_conj ≤ |G|²·exp(A_e) together with its census.
    VerifyBz(Input),
    /// The string monomial Z and its enhanced form for one component.
    StringMonomial {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        component: usize,
        /// 0-based diagonal index.
        #[arg(long)]
        k: usize,
    },
    /// The padded monomial built from the chain witness.
    Omega(Input),
    /// Decompositions and e-stop fibers for every group element.
    Census(Input),
    /// The codimension c_n by exhaustive or sampled evaluation.
    Codim {
        #[command(flatten)]
        input: Input,
        /// Number of variables
        #[arg(long)]
        n: usize,
        /// Evaluate on all basis tuples (the default).
        #[arg(long, conflicts_with = "sample")]
        full: bool,
        /// Evaluate on this many random tuples; gives a lower bound.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = codim::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Compare the declared radical with the trace-form radical.
    RadicalCheck(Input),
    /// Regrade by G/N for a normal subgroup N.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Comma-separated element indices of N.
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<usize>,
    },
    /// Write a generated instance.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Group such as `cyclic:4`, `klein` or `symmetric:3`.
        #[arg(long)]
        group: Option<String>,
        /// Grading tuple for `elementary`.
        #[arg(long, value_delimiter = ',')]
        tuple: Vec<usize>,
        /// Chain plan file for `chain`.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Seed for `suite`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cyclotomic order of the scalar field; |G| when absent
        #[arg(long)]
        field_order: Option<usize>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    GroupAlgebra,
    Elementary,
    Chain,
    Suite,
}

/// A failed command: the exit code and the error to report.
struct Failure {
    code: u8,
    error: Value,
}

fn error_kind(e: &Error) -> &'static str {
    match e.root() {
        Error::DivisionByZero => "DivisionByZero",
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::InvalidGroup(_) => "InvalidGroup",
        Error::InvalidSubgroup(_) => "InvalidSubgroup",
        Error::NotNormal { .. } => "NotNormal",
        Error::ZeroCocycleValue { .. } => "ZeroCocycleValue",
        Error::CocycleViolation { .. } => "CocycleViolation",
        Error::NotNormalized { .. } => "NotNormalized",
        Error::InvalidComponent { .. } => "InvalidComponent",
        Error::Validation(_) => "Validation",
        Error::MismatchWithDeclaredRadical { .. } => "MismatchWithDeclaredRadical",
        Error::UnsupportedSplit { .. } => "UnsupportedSplit",
        Error::WitnessExtractionFailed(_) => "WitnessExtractionFailed",
        Error::PeirceUndetermined { .. } => "PeirceUndetermined",
        Error::CensusViolation(_) => "CensusViolation",
        Error::InequalityViolated { .. } => "InequalityViolated",
        Error::BudgetExceeded { .. } => "BudgetExceeded",
        Error::Schema { .. } => "SchemaError",
        Error::Io(_) => "Io",
        Error::AtPath { .. } => unreachable!("root is never a path wrapper"),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let path = match &e {
            Error::AtPath { path, .. } => Some(path.clone()),
            Error::Schema { path, .. } => Some(path.clone()),
            _ => None,
        };
        let code = match e.root() {
            Error::Schema { .. } | Error::Io(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            error: json!({ "kind": error_kind(&e), "path": path, "message": e.to_string() }),
        }
    }
}

struct Loaded {
    instance: Instance,
    algebra: GradedAlgebra,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let instance = Instance::load(path)?;
    let algebra = instance.build()?;
    Ok(Loaded { instance, algebra })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports always serialize")
}

/// Runs one command. `Ok` carries the results and whether every check
/// passed; the digest and field order are filled in once the instance is read.
fn run(command: &Command, meta: &mut Value) -> Result<(Value, bool), Failure> {
    let mut loaded = |path: &Path| -> Result<Loaded, Failure> {
        let l = load(path)?;
        meta["instance_digest"] = json!(l.instance.digest());
        meta["field_order"] = json!(l.algebra.field().order());
        Ok(l)
    };
    match command {
        Command::Validate(i) => {
            let l = loaded(&i.instance)?;
            let report = l.algebra.validate();
            let radical = match (report.is_valid(), l.algebra.radical_check()) {
                (false, _) => json!({ "status": "skipped" }),
                (true, Ok(())) => json!({ "status": "agrees" }),
                (true, Err(e)) => json!({ "status": "disagrees", "message": e.to_string() }),
            };
            let ok = report.is_valid() && radical["status"] == "agrees";
            Ok((
                json!({
                    "valid": ok,
                    "dim": l.algebra.dim(),
                    "violations": to_value(&report.violations),
                    "radical": radical,
                }),
                ok,
            ))
        }
        Command::ExpConj(i) => {
            let l = loaded(&i.instance)?;
            l.algebra.validate().into_result()?;
            let r = l.algebra.exp_conj_graded()?;
            Ok((to_value(&r), true))
        }
        Command::ExpE(i) => {
            let l = loaded(&i.instance)?;
            l.algebra.validate().into_result()?;
            let (part, r) = l.algebra.exp_e()?;
            Ok((json!({ "e_part": to_value(&part), "exponent": to_value(&r) }), true))
        }
        Command::ExpFull(i) => {
            let l = loaded(&i.instance)?;
            l.algebra.validate().into_result()?;
            let s = l.algebra.exp_ungraded_full()?;
            let conj = l.algebra.exp_conj_graded()?;
            Ok((
                json!({
                    "value": s.report.value,
                    "exp_conj": conj.value,
                    "at_most_exp_conj": s.report.value <= conj.value,
                    "split": to_value(&s),
                }),
                s.report.value <= conj.value,
            ))
        }
        Command::VerifyBz(i) => {
            let l = loaded(&i.instance)?;
            l.algebra.validate().into_result()?;
            let r = proof::verify_bz(&l.algebra)?;
            Ok((
                json!({
                    "L": r.lhs,
                    "R": r.rhs,
                    "slack": r.slack,
                    "equality": r.equality,
                    "report": to_value(&r),
                }),
                true,
            ))
        }
        Command::StringMonomial { input, component, k } => {
            let l = loaded(&input.instance)?;
            let comp = l.algebra.components().get(*component).ok_or_else(|| Error::InvalidComponent {
                component: *component,
                reason: "no such component".into(),
            })?;
            if *k >= comp.r() {
                return Err(Error::Validation(format!("k = {k} but the component has r = {}", comp.r())).into());
            }
            Ok((
                json!({
                    "z": to_value(&comp.string_monomial(*k)),
                    "z_hat": to_value(&comp.enhanced_string_monomial(*k)),
                }),
                true,
            ))
        }
        Command::Omega(i) => {
            let l = loaded(&i.instance)?;
            l.algebra.validate().into_result()?;
            let conj = l.algebra.exp_conj_graded()?;
            let omega = proof::omega_construct(&l.algebra, &conj)?;
            Ok((to_value(&omega), true))
        }
        Command::Census(i) => {
            let l = loaded(&i.instance)?;
            l.algebra.validate().into_result()?;
            let conj = l.algebra.exp_conj_graded()?;
            let omega = proof::omega_construct(&l.algebra, &conj)?;
            let table = proof::estop_census(&l.algebra, &omega)?;
            Ok((to_value(&table), true))
        }
        Command::Codim {
            input,
            n,
            full: _,
            sample,
            seed,
            budget,
        } => {
            let l = loaded(&input.instance)?;
            let mode = match sample {
                Some(count) => CodimMode::Sample {
                    count: *count,
                    seed: *seed,
                },
                None => CodimMode::Full,
            };
            let r = codim::codimension(l.algebra.table(), *n, &mode, *budget)?;
            Ok((to_value(&r), true))
        }
        Command::RadicalCheck(i) => {
            let l = loaded(&i.instance)?;
            let oracle = l.algebra.radical_oracle();
            let declared = l.algebra.radical_subspace();
            let agrees = oracle == declared;
            Ok((
                json!({
                    "agrees": agrees,
                    "declared_dim": declared.dim(),
                    "oracle_dim": oracle.dim(),
                }),
                agrees,
            ))
        }
        Command::Quotient { input, subgroup } => {
            let l = loaded(&input.instance)?;
            let n = Subgroup::new(l.algebra.group(), subgroup.clone()).map_err(|e| e.at("--subgroup"))?;
            let r = l.algebra.quotient_regrade(&n)?;
            let ok = r.identity_component_matches() && r.grading_compatible && r.order_arithmetic_holds();
            Ok((
                json!({
                    "identity_component_matches": r.identity_component_matches(),
                    "order_arithmetic_holds": r.order_arithmetic_holds(),
                    "regrading": to_value(&r),
                }),
                ok,
            ))
        }
        Command::Gen {
            kind,
            group,
            tuple,
            plan,
            seed,
            field_order,
            out,
        } => {
            let (spec, algebra) = generate(*kind, group.as_deref(), tuple, plan.as_deref(), *seed, *field_order)?;
            let inst = Instance::from_algebra(&spec, &algebra)?;
            meta["instance_digest"] = json!(inst.digest());
            meta["field_order"] = json!(algebra.field().order());
            match out {
                Some(path) => {
                    std::fs::write(path, inst.to_json()).map_err(Error::from)?;
                    Ok((json!({ "written": path, "dim": algebra.dim() }), true))
                }
                None => Ok((to_value(&inst), true)),
            }
        }
    }
}

fn generate(
    kind: GenKind,
    group: Option<&str>,
    tuple: &[usize],
    plan: Option<&Path>,
    seed: u64,
    field_order: Option<usize>,
) -> Result<(GroupSpec, GradedAlgebra), Error> {
    if let GenKind::Suite = kind {
        let case = generators::suite_case(seed)?;
        return Ok((case.group, case.algebra));
    }
    let spec = GroupSpec::parse(group.ok_or_else(|| Error::Schema {
        path: "--group".into(),
        message: "required for this kind".into(),
    })?)?;
    let g = Arc::new(make_group(&spec)?);
    let field = CyclotomicField::new(field_order.unwrap_or(g.order()));
    let algebra = match kind {
        GenKind::GroupAlgebra => generators::gen_group_algebra(g, field)?,
        GenKind::Elementary => generators::gen_elementary(g, field, tuple.to_vec())?,
        GenKind::Chain => {
            let path = plan.ok_or_else(|| Error::Schema {
                path: "--plan".into(),
                message: "required for chain".into(),
            })?;
            let text = std::fs::read_to_string(path)?;
            let de = &mut serde_json::Deserializer::from_str(&text);
            let plan: ChainPlan = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })?;
            generators::gen_chain(g, field, &plan)?
        }
        GenKind::Suite => unreachable!(),
    };
    Ok((spec, algebra))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::ExpConj(_) => "exp-conj",
        Command::ExpE(_) => "exp-e",
        Command::ExpFull(_) => "exp-full",
        Command::VerifyBz(_) => "verify-bz",
        Command::StringMonomial { .. } => "string-monomial",
        Command::Omega(_) => "omega",
        Command::Census(_) => "census",
        Command::Codim { .. } => "codim",
        Command::RadicalCheck(_) => "radical-check",
        Command::Quotient { .. } => "quotient",
        Command::Gen { .. } => "gen",
    }
}

fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let mut section = |title: &str, v: &Value| {
        if let Value::Object(map) = v {
            for (k, x) in map {
                let shown = match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{title}{k}: {shown}\n"));
            }
        }
    };
    section("", &json!({ "command": report["command"], "version": report["version"] }));
    if !report["instance_digest"].is_null() {
        section("", &json!({ "instance_digest": report["instance_digest"], "field_order": report["field_order"] }));
    }
    section("", &report["results"]);
    section("error.", &report["error"]);
    section("", &json!({ "elapsed_ms": report["timings"]["elapsed_ms"] }));
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = json!({
        "command": command_name(&cli.command),
        "version": env!("CARGO_PKG_VERSION"),
        "instance_digest": null,
        "field_order": null,
    });
    let code = match run(&cli.command, &mut report) {
        Ok((results, ok)) => {
            report["results"] = results;
            report["ok"] = json!(ok);
            if ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            report["ok"] = json!(false);
            report["error"] = f.error;
            f.code
        }
    };
    report["timings"] = json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 });
    let rendered = if cli.text {
        render_text(&report)
    } else {
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    };
    // a closed pipe downstream is not an error of the command
    let _ = std::io::stdout().write_all(rendered.as_bytes());
    ExitCode::from(code)
}
