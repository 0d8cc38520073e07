//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (the report carries a
//! witness), 2 on input errors (one line on stderr naming the file or flag).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use semicover_core::cover::{self, minimal_pair_descent, reduce_cover};
use semicover_core::covering::{self, CENSUS_CAP, SUBGROUP_CAP};
use semicover_core::presentation::{AbelianVerdict, PresentationData};
use semicover_core::snf::DEFAULT_MATRIX_CAP;
use semicover_core::{ConeSet, CoverPair, DescentOutcome, Error, FiniteGroup, GroupModel};
use serde_json::{json, Value};

use crate::certificate::{self, elements};
use crate::fixtures;
use crate::formats::{self, format_word, FormatError, Presentation};
use crate::suites;

#[derive(Debug, Parser)]
#[command(name = "semicover", version, about = "Two-subsemigroup covers and left-orderable quotients")]
pub struct Cli {
    /// Radius of the Cayley ball used for ball-local checks.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub radius: u32,
    /// Step budget for the descent to a normal subgroup.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_depth: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Roundtrip,
    Finite,
}

#[derive(Debug, clap::Args)]
pub struct CoverArgs {
    /// Model selector: finite:<path>, z^r[xCn..], free:k, heisenberg,
    /// klein_bottle, or a bundled group name.
    #[arg(long)]
    pub model: String,
    /// Cone spec file for the A side.
    #[arg(long = "A")]
    pub a: PathBuf,
    /// Cone spec file for the B side.
    #[arg(long = "B")]
    pub b: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Abelianize a presentation and emit a cover when the free rank is positive.
    Analyze {
        /// Presentation file, or the name of a bundled presentation.
        #[arg(long)]
        presentation: String,
        /// Model the cover is checked on; inferred from the relators by default.
        #[arg(long)]
        model: Option<String>,
    },
    /// Check a candidate cover pair.
    CheckCover {
        #[command(flatten)]
        cover: CoverArgs,
        /// Normalize the pair before checking.
        #[arg(long)]
        reduce: bool,
    },
    /// Normalize a cover pair.
    Reduce {
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Normalize, then descend to a pair whose maximal subgroup is normal.
    Descend {
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Extract a left-order witness from a cover pair.
    Witness {
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Covering numbers of a finite group.
    Sigma {
        /// Bundled group name.
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        fixture: Option<String>,
        /// Cayley table file.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Require the full subsemigroup census.
        #[arg(long)]
        exhaustive: bool,
        /// Largest order for the exhaustive census; overrides SEMICOVER_CAP.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run a bundled verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest order for the exhaustive census; overrides SEMICOVER_CAP.
        #[arg(long)]
        cap: Option<usize>,
    },
}

/// An input problem, reported on one line.
#[derive(Debug, thiserror::Error)]
#[error("{origin}: {source}")]
pub struct InputError {
    pub origin: String,
    #[source]
    pub source: FormatError,
}

fn input<T>(origin: impl std::fmt::Display, r: Result<T, impl Into<FormatError>>) -> Result<T, InputError> {
    r.map_err(|e| InputError { origin: origin.to_string(), source: e.into() })
}

/// A finished report and its exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub report: Value,
}

impl Outcome {
    fn new(ok: bool, report: Value) -> Self {
        Outcome { code: if ok { 0 } else { 1 }, report }
    }
}

/// Whether a core error describes bad input rather than a negative result.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::MalformedTable(_)
            | Error::NotAGroup { .. }
            | Error::InvalidElement(_)
            | Error::BallTooLarge { .. }
            | Error::ModelMismatch(_)
            | Error::NotAHomomorphism(_)
            | Error::UnsupportedPullback(_)
            | Error::MatrixTooLarge { .. }
            | Error::Overflow(_)
            | Error::GroupTooLarge { .. }
    )
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::MalformedTable(_) => "MalformedTable",
        Error::NotAGroup { .. } => "NotAGroup",
        Error::InvalidElement(_) => "InvalidElement",
        Error::BallTooLarge { .. } => "BallTooLarge",
        Error::NotASubgroup => "NotASubgroup",
        Error::NotNormal { .. } => "NotNormal",
        Error::ModelMismatch(_) => "ModelMismatch",
        Error::NotAHomomorphism(_) => "NotAHomomorphism",
        Error::NotACone { .. } => "NotACone",
        Error::TrivialQuotient => "TrivialQuotient",
        Error::UnsupportedPullback(_) => "UnsupportedPullback",
        Error::MatrixTooLarge { .. } => "MatrixTooLarge",
        Error::Overflow(_) => "Overflow",
        Error::NotACover { .. } => "NotACover",
        Error::NotNormalized(_) => "NotNormalized",
        Error::LemmaViolation { .. } => "LemmaViolation",
        Error::IdentityOnlyH => "IdentityOnlyH",
        Error::NothingToRefine => "NothingToRefine",
        Error::ClosureViolation { .. } => "ClosureViolation",
        Error::DepthExceeded(_) => "DepthExceeded",
        Error::GroupTooLarge { .. } => "GroupTooLarge",
    }
}

/// The machine-readable report for a negative result.
pub fn error_report(model: &GroupModel, e: &Error, radius: u32) -> Value {
    let mut r = json!({"error": error_kind(e), "message": e.to_string(), "radius": radius});
    let extra = match e {
        Error::NotACover { check, witness, radius } => {
            json!({"check": check, "witness": elements(model, witness), "radius": radius})
        }
        Error::LemmaViolation { lemma, witness } => json!({"lemma": lemma.to_string(), "witness": elements(model, witness)}),
        Error::ClosureViolation { side, witness } => json!({"side": side, "witness": elements(model, witness)}),
        Error::NotACone { reason, witness } => json!({"reason": reason, "witness": elements(model, witness)}),
        Error::NotNormal { element, by } => json!({"witness": elements(model, &[(**element).clone(), (**by).clone()])}),
        Error::DepthExceeded(state) => json!({"descent": certificate::descent(model, state)}),
        _ => json!({}),
    };
    if let (Value::Object(r), Value::Object(extra)) = (&mut r, extra) {
        r.extend(extra);
    }
    r
}

/// Splits a core result into a value, a negative outcome, or an input error.
fn semantic<T>(model: &GroupModel, radius: u32, origin: &str, r: semicover_core::Result<T>) -> Result<Result<T, Outcome>, InputError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e) if is_input_error(&e) => Err(InputError { origin: origin.into(), source: e.into() }),
        Err(e) => Ok(Err(Outcome { code: 1, report: error_report(model, &e, radius) })),
    }
}

macro_rules! try_semantic {
    ($model:expr, $radius:expr, $origin:expr, $r:expr) => {
        match semantic($model, $radius, $origin, $r)? {
            Ok(v) => v,
            Err(outcome) => return Ok(outcome),
        }
    };
}

fn load_cover(args: &CoverArgs) -> Result<(GroupModel, ConeSet, ConeSet), InputError> {
    let model = input("--model", formats::parse_model(&args.model))?;
    let a = input(format!("--A {}", args.a.display()), formats::load_cone(&model, &args.a))?;
    let b = input(format!("--B {}", args.b.display()), formats::load_cone(&model, &args.b))?;
    Ok((model, a, b))
}

/// The census cap: the flag, else `SEMICOVER_CAP`, else the default.
pub fn census_cap(flag: Option<usize>) -> Result<usize, InputError> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("SEMICOVER_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| InputError {
            origin: "SEMICOVER_CAP".into(),
            source: FormatError::Invalid(format!("expected a nonnegative integer, got '{v}'")),
        }),
        Err(_) => Ok(CENSUS_CAP),
    }
}

fn load_presentation(arg: &str) -> Result<Presentation, InputError> {
    let path = Path::new(arg);
    if !path.exists() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        if let Some(p) = fixtures::presentation(stem) {
            return Ok(p);
        }
    }
    let text = input(format!("--presentation {arg}"), std::fs::read_to_string(path))?;
    input(format!("--presentation {arg}"), formats::parse_presentation(&text))
}

fn abelianization_name(free_rank: usize, torsion: &[num_bigint::BigInt]) -> String {
    let mut parts = Vec::new();
    match free_rank {
        0 => {}
        1 => parts.push("ℤ".to_string()),
        r => parts.push(format!("ℤ^{r}")),
    }
    parts.extend(torsion.iter().map(|d| format!("ℤ/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("⊕")
    }
}

fn analyze(cli: &Cli, presentation: &str, model: Option<&str>) -> Result<Outcome, InputError> {
    let p = load_presentation(presentation)?;
    let model = match model {
        Some(m) => input("--model", formats::parse_model(m))?,
        None => formats::model_for(&p),
    };
    if model.num_generators() != p.generators.len() {
        return Err(InputError {
            origin: "--model".into(),
            source: Error::ModelMismatch(format!(
                "{} has {} generators, the presentation {}",
                model.name(),
                model.num_generators(),
                p.generators.len()
            ))
            .into(),
        });
    }
    // Covers on the free group descend to every quotient; any other model
    // must satisfy the relators.
    if !matches!(model, GroupModel::Free { .. }) {
        for rel in &p.relators {
            let holds = model.eval_word(rel).is_ok_and(|x| model.is_identity(&x));
            if !holds {
                return Err(InputError {
                    origin: "--model".into(),
                    source: Error::ModelMismatch(format!(
                        "relator {} does not hold in {}",
                        format_word(rel, &p.generators),
                        model.name()
                    ))
                    .into(),
                });
            }
        }
    }
    let origin = format!("--presentation {presentation}");
    let data = input(&origin, PresentationData::analyze(p.generators.clone(), p.relators.clone(), DEFAULT_MATRIX_CAP))?;
    let matrix = data.exponent_matrix.to_i64_rows().map(Value::from).unwrap_or(Value::Null);
    let invariants: Vec<Value> = data.snf.invariants().iter().map(certificate::big).collect();
    let torsion: Vec<Value> = data.torsion.iter().map(certificate::big).collect();
    let mut report = json!({
        "generators": p.generators,
        "relators": p.relators.iter().map(|w| format_word(w, &p.generators)).collect::<Vec<_>>(),
        "model": model.name(),
        "exponent_matrix": matrix,
        "invariant_factors": invariants,
        "free_rank": data.free_rank,
        "torsion": torsion,
        "abelianization": abelianization_name(data.free_rank, &data.torsion),
    });
    let ok = match data.verdict() {
        AbelianVerdict::Inconclusive => {
            report["verdict"] = "inconclusive by abelian test".into();
            true
        }
        AbelianVerdict::Witness { rank } => {
            report["verdict"] = "nontrivial left-orderable quotient".into();
            report["quotient_rank"] = rank.into();
            report["surjection"] = data.z_surjection.clone().into();
            let c = try_semantic!(&model, cli.radius, &origin, data.witness_cover(&model, cli.radius));
            let c = c.expect("positive free rank yields a cover");
            let ok = c.flags.all_verified();
            report["cover"] = certificate::cover(&c);
            ok
        }
    };
    Ok(Outcome::new(ok, report))
}

fn failure(c: &CoverPair) -> Value {
    match c.flags.first_failure() {
        Some((name, v)) => json!({"check": name, "witness": elements(&c.model, &v.witness), "radius": v.radius_checked}),
        None => Value::Null,
    }
}

fn check_cover(cli: &Cli, args: &CoverArgs, reduce: bool) -> Result<Outcome, InputError> {
    let (model, a, b) = load_cover(args)?;
    if reduce {
        return reduce_cmd(cli, &model, &a, &b);
    }
    let c = try_semantic!(&model, cli.radius, "--A/--B", CoverPair::verify(model.clone(), a, b, cli.radius));
    let ok = c.flags.all_verified();
    Ok(Outcome::new(ok, json!({"cover": certificate::cover(&c), "failure": failure(&c)})))
}

fn reduce_cmd(cli: &Cli, model: &GroupModel, a: &ConeSet, b: &ConeSet) -> Result<Outcome, InputError> {
    let r = try_semantic!(model, cli.radius, "--A/--B", reduce_cover(model, a, b, cli.radius));
    let ok = r.cover.flags.all_verified() && r.coset_saturation.is_verified() && r.difference_closure.is_verified();
    Ok(Outcome::new(ok, json!({"reduction": certificate::reduction(model, &r), "failure": failure(&r.cover)})))
}

fn descend(cli: &Cli, args: &CoverArgs) -> Result<Outcome, InputError> {
    let (model, a, b) = load_cover(args)?;
    let r = try_semantic!(&model, cli.radius, "--A/--B", reduce_cover(&model, &a, &b, cli.radius));
    let d = try_semantic!(&model, cli.radius, "--A/--B", minimal_pair_descent(&r.cover, cli.max_depth, cli.radius));
    let ok = matches!(d.outcome, DescentOutcome::NormalFound(_));
    Ok(Outcome::new(
        ok,
        json!({"reduction": certificate::reduction(&model, &r), "descent": certificate::descent(&model, &d), "max_depth": cli.max_depth}),
    ))
}

fn witness(cli: &Cli, args: &CoverArgs) -> Result<Outcome, InputError> {
    let (model, a, b) = load_cover(args)?;
    let d = try_semantic!(
        &model,
        cli.radius,
        "--A/--B",
        cover::order_witness_from_cover(&model, &a, &b, cli.radius, cli.max_depth)
    );
    let checks = certificate::witness_report(&model, &d.report);
    let ok = certificate::all_pass(&checks);
    Ok(Outcome::new(
        ok,
        json!({
            "reduction": certificate::reduction(&model, &d.reduction),
            "descent": certificate::descent(&model, &d.descent),
            "witness": {
                "kernel": certificate::cone(&model, d.witness.kernel()),
                "cone": certificate::cone(&model, d.witness.cone()),
                "checks": checks,
            },
        }),
    ))
}

fn sigma(fixture: Option<&str>, table: Option<&Path>, exhaustive: bool, cap: usize) -> Result<Outcome, InputError> {
    let (name, origin, group): (String, String, FiniteGroup) = match (fixture, table) {
        (Some(f), _) => {
            let g = fixtures::group(f).ok_or_else(|| InputError {
                origin: format!("--fixture {f}"),
                source: FormatError::Invalid("no bundled group by that name".into()),
            })?;
            (f.to_string(), format!("--fixture {f}"), g)
        }
        (None, Some(path)) => {
            let origin = format!("--table {}", path.display());
            let g = input(&origin, formats::load_finite_group(path))?;
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table").to_string();
            (name, origin, g)
        }
        (None, None) => unreachable!("clap requires one of --fixture and --table"),
    };
    let within = group.order() <= cap;
    let r = input(&origin, covering::sigma_s_finite(&group, SUBGROUP_CAP, exhaustive || within, cap))?.named(&name);
    let scorza = input(&origin, covering::scorza_check(&group, SUBGROUP_CAP))?;
    let mut checks = vec![json!({"check": "scorza_agreement", "passed": scorza.agrees()})];
    if let Some(agree) = r.methods_agree() {
        checks.push(json!({"check": "sigma_s_equals_sigma_g", "passed": agree}));
    }
    let mut report = json!({
        "covering_number": certificate::covering_number(&r),
        "order": group.order(),
        "cyclic": covering::is_cyclic(&group),
        "scorza": {
            "sigma_is_three": scorza.sigma_is_three,
            "klein_four_quotient": scorza.klein_four_quotient,
            "kernel": scorza.kernel.as_ref().map(certificate::bits),
        },
        "census_cap": cap,
        "evidence_only": "σ_s = σ_g on this group is evidence for the corpus, not a general result",
    });
    if within {
        let census = input(&origin, covering::subsemigroups_are_subgroups(&group, cap, true))?;
        let search = input(&origin, covering::two_cover_search(&group, cap))?;
        checks.push(json!({"check": "subsemigroups_are_subgroups", "passed": census.holds()}));
        checks.push(json!({"check": "no_two_cover", "passed": search.covers.is_empty()}));
        report["census"] = json!({
            "closed_subsets": census.census.closed.len(),
            "counterexample": census.counterexample.as_ref().map(certificate::bits),
        });
        report["two_cover_search"] = json!({
            "pairs_checked": search.pairs_checked,
            "covers": search.covers.iter().map(|(a, b)| json!([certificate::bits(a), certificate::bits(b)])).collect::<Vec<_>>(),
        });
        let model = GroupModel::finite(group.clone());
        let t = input(&origin, cover::torsion_obstruction(&model, cap))?;
        report["torsion_obstruction"] = certificate::torsion(&model, &t);
    }
    let ok = checks.iter().all(|c| c["passed"] == true);
    report["checks"] = checks.into();
    Ok(Outcome::new(ok, report))
}

fn verify(cli: &Cli, suite: Suite, cap: usize) -> Outcome {
    let report = match suite {
        Suite::Lemmas => suites::lemmas(cli.seed, cli.radius),
        Suite::Roundtrip => suites::roundtrip(cli.radius),
        Suite::Finite => suites::finite(cap),
    };
    Outcome::new(report.all_passed(), serde_json::to_value(&report).expect("reports serialize"))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Analyze { presentation, model } => analyze(cli, presentation, model.as_deref()),
        Command::CheckCover { cover, reduce } => check_cover(cli, cover, *reduce),
        Command::Reduce { cover } => {
            let (model, a, b) = load_cover(cover)?;
            reduce_cmd(cli, &model, &a, &b)
        }
        Command::Descend { cover } => descend(cli, cover),
        Command::Witness { cover } => witness(cli, cover),
        Command::Sigma { fixture, table, exhaustive, cap } => {
            sigma(fixture.as_deref(), table.as_deref(), *exhaustive, census_cap(*cap)?)
        }
        Command::Verify { suite, cap } => Ok(verify(cli, *suite, census_cap(*cap)?)),
    }
}

/// Renders a report in the requested format.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Text => certificate::render_text(report),
    }
}

/// Runs the command, writes the report and returns the exit code.
pub fn execute(cli: &Cli) -> Result<u8, InputError> {
    let outcome = run(cli)?;
    let text = render(&outcome.report, cli.format);
    match &cli.output {
        Some(path) => input(format!("--output {}", path.display()), std::fs::write(path, text))?,
        None => print!("{text}"),
    }
    Ok(outcome.code)
}
