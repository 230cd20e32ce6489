//! The `omact` command line.
//!
//! Exit status: 0 success, 1 a failed identity or an invalid perspective,
//! 2 unreadable input or mismatched ground sets, 3 an oriented computation
//! asked of unoriented input, 4 a ground set beyond the size guard.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::corpus::{self, NamedPerspective, DEFAULT_RANDOM_COUNT};
use crate::error::{Error, Result};
use crate::ground::{ElementSet, GroundSet};
use crate::guard::SizeGuard;
use crate::io::{self, ClassJson, DawsonJson, Instance, PartitionJson, Perspective, SignedJson};
use crate::matroid::is_matroid_perspective;
use crate::orientation;
use crate::oriented::is_om_perspective;
use crate::subsets;
use crate::tutte::{self, CensusRow, Poly, Report};
use crate::Rational;

#[derive(Parser, Debug)]
#[command(name = "omact", version, about = "Activities and Tutte polynomials of oriented matroid perspectives")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    /// Rank-function definition.
    Rank,
    /// Orientation activities.
    Orient,
    /// Four-variable orientation activity expansion.
    Orient4,
    /// Independent/spanning subset activities.
    Subset,
    /// Five-variable subset activity expansion.
    Subset5,
}

#[derive(Args, Debug)]
pub struct InstanceArgs {
    /// M: `KIND:PATH` (digraph, om, matroid, matrix, corpus), a corpus name,
    /// or a file. A corpus perspective such as PERSP1 stands alone.
    pub first: String,

    /// N; defaults to M.
    pub second: Option<String>,

    /// Comma-separated element order applied to every instance.
    #[arg(long)]
    pub order: Option<String>,

    /// Comma-separated elements F: use the minor perspective M\F → M/F.
    #[arg(long)]
    pub contract: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test whether M → N is a perspective.
    Check(InstanceArgs),
    /// Print the Tutte polynomial t(M,N;x,y,z).
    Tutte {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = Formula::Rank)]
        formula: Formula,
        /// Also run every identity check.
        #[arg(long)]
        verify: bool,
    },
    /// Partition the reorientations into activity classes.
    Classes(InstanceArgs),
    /// Active partition of the reorientation by A.
    Partition {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Comma-separated set A to reorient first.
        #[arg(long, default_value = "")]
        reorient: String,
    },
    /// Count reorientations by activity conditions beside Tutte evaluations.
    Census(InstanceArgs),
    /// Boolean interval partition of 2^E.
    Dawson(InstanceArgs),
    /// Run every identity check on one instance or on the corpus.
    Verify {
        /// Instance to check; omit with --corpus.
        first: Option<String>,
        second: Option<String>,
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        contract: Option<String>,
        /// Check the built-in instances and seeded random minors.
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RANDOM_COUNT)]
        count: usize,
    },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAPerspective { .. } | Error::IdentityFailure(_) | Error::Inconsistent(_) => 1,
        Error::Unsupported(_) => 3,
        Error::SizeGuard { .. } => 4,
        _ => 2,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(spec: &str, order: Option<&str>) -> Result<Instance> {
    let instance = io::load_instance(spec)?;
    match order {
        Some(o) => instance.with_order(&io::parse_labels(o)),
        None => Ok(instance),
    }
}

fn perspective(args: &InstanceArgs) -> Result<Perspective> {
    let first = load(&args.first, args.order.as_deref())?;
    let second = args.second.as_deref().map(|s| load(s, args.order.as_deref())).transpose()?;
    let contract = args.contract.as_deref().map(io::parse_labels);
    io::assemble(first, second, contract.as_deref())
}

fn json_line(out: &mut String, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{text}").expect("writing to a String");
    Ok(())
}

fn execute(cli: &Cli, out: &mut String) -> Result<i32> {
    let guard = SizeGuard::from_env()?;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Check(args) => check(args, json, out),
        Command::Tutte { instance, formula, verify } => {
            let p = perspective(instance)?;
            let t = compute(&p, *formula, guard)?;
            let report = if *verify {
                Some(tutte::verify_identities(p.oriented()?, guard)?)
            } else {
                None
            };
            if json {
                json_line(
                    out,
                    &json!({
                        "formula": formula_name(*formula),
                        "polynomial": t,
                        "verification": report.as_ref().map(report_json),
                    }),
                )?;
            } else {
                writeln!(out, "{t}").unwrap();
                if let Some(r) = &report {
                    write_report(out, r);
                }
            }
            Ok(report.map_or(0, |r| if r.holds() { 0 } else { 1 }))
        }
        Command::Classes(args) => {
            let p = perspective(args)?;
            let p = p.oriented()?;
            let classes = orientation::classify_reorientations(p, guard)?;
            let g = p.ground();
            if json {
                let list: Vec<ClassJson> = classes.iter().map(|c| ClassJson::new(g, c)).collect();
                json_line(out, &list)?;
            } else {
                writeln!(out, "{} activity classes", classes.len()).unwrap();
                for c in &classes {
                    let members: Vec<String> = c.members.iter().map(|&m| g.fmt_set(m)).collect();
                    writeln!(
                        out,
                        "{} iota={} epsilon={}: {}",
                        g.fmt_set(c.representative),
                        c.iota,
                        c.epsilon,
                        members.join(" ")
                    )
                    .unwrap();
                }
            }
            Ok(0)
        }
        Command::Partition { instance, reorient } => {
            let p = perspective(instance)?;
            let p = p.oriented()?;
            let g = p.ground();
            let a = g.set_of(io::parse_labels(reorient))?;
            let part = orientation::partition_at(p, a)?;
            if json {
                json_line(out, &PartitionJson::new(g, &part))?;
            } else {
                let list = |sets: &[ElementSet]| {
                    if sets.is_empty() {
                        "none".to_string()
                    } else {
                        sets.iter().map(|&s| g.fmt_set(s)).collect::<Vec<_>>().join(" ")
                    }
                };
                writeln!(out, "cyclic: {}", list(&part.cyclic)).unwrap();
                writeln!(out, "hybrid: {}", g.fmt_set(part.hybrid)).unwrap();
                writeln!(out, "acyclic: {}", list(&part.acyclic)).unwrap();
            }
            Ok(0)
        }
        Command::Census(args) => {
            let p = perspective(args)?;
            let rows = tutte::reorientation_census(p.oriented()?, guard)?;
            if json {
                let list: Vec<_> = rows.iter().map(census_json).collect();
                json_line(out, &list)?;
            } else {
                writeln!(out, "{:<38} {:>8} {:>8}  evaluation", "reorientations with", "count", "classes").unwrap();
                for r in &rows {
                    let (x, y) = r.condition.point();
                    let classes = r.classes.map_or("-".to_string(), |c| c.to_string());
                    writeln!(
                        out,
                        "{:<38} {:>8} {:>8}  t({x},{y},1) = {} {}",
                        r.condition.describe(),
                        r.reorientations,
                        classes,
                        r.evaluation,
                        if r.holds() { "ok" } else { "MISMATCH" }
                    )
                    .unwrap();
                }
            }
            Ok(if rows.iter().all(CensusRow::holds) { 0 } else { 1 })
        }
        Command::Dawson(args) => {
            let p = perspective(args)?;
            let up = p.underlying();
            guard.check_enumeration(up.len())?;
            let intervals = subsets::dawson_partition(up)?;
            let g = p.ground();
            if json {
                json_line(out, &DawsonJson::new(g, &intervals))?;
            } else {
                for iv in &intervals {
                    writeln!(
                        out,
                        "[{}, {}] base {} rcd {}",
                        g.fmt_set(iv.lower),
                        g.fmt_set(iv.upper),
                        g.fmt_set(iv.base),
                        iv.rcd
                    )
                    .unwrap();
                }
            }
            Ok(0)
        }
        Command::Verify {
            first,
            second,
            order,
            contract,
            corpus,
            seed,
            count,
        } => {
            let instances = match (first, corpus) {
                (Some(_), true) => return Err(Error::Parse("give an instance or --corpus, not both".into())),
                (None, false) => return Err(Error::Parse("give an instance or --corpus".into())),
                (None, true) => corpus::corpus(*seed, *count),
                (Some(f), false) => {
                    let args = InstanceArgs {
                        first: f.clone(),
                        second: second.clone(),
                        order: order.clone(),
                        contract: contract.clone(),
                    };
                    let p = perspective(&args)?;
                    vec![NamedPerspective {
                        name: f.clone(),
                        perspective: p.oriented()?.clone(),
                    }]
                }
            };
            verify_all(&instances, guard, json, out)
        }
    }
}

fn formula_name(f: Formula) -> &'static str {
    match f {
        Formula::Rank => "rank",
        Formula::Orient => "orient",
        Formula::Orient4 => "orient4",
        Formula::Subset => "subset",
        Formula::Subset5 => "subset5",
    }
}

fn compute(p: &Perspective, formula: Formula, guard: SizeGuard) -> Result<Poly> {
    match formula {
        Formula::Rank => tutte::tutte_rank_def::<Rational>(p.underlying(), guard),
        Formula::Orient => tutte::tutte_orientation_activity::<Rational>(p.oriented()?, guard),
        Formula::Orient4 => tutte::tutte_orientation_4var::<Rational>(p.oriented()?, guard),
        Formula::Subset => tutte::tutte_subset_activity::<Rational>(p.underlying(), guard),
        Formula::Subset5 => tutte::tutte_subset_5var::<Rational>(p.underlying(), guard),
    }
}

fn check(args: &InstanceArgs, json: bool, out: &mut String) -> Result<i32> {
    if args.contract.is_some() {
        return Err(Error::Parse("check takes no --contract".into()));
    }
    let order = args.order.as_deref();
    let first = load(&args.first, order)?;
    let second = args.second.as_deref().map(|s| load(s, order)).transpose()?;
    let (m, n) = match (first, second) {
        (Instance::Perspective(p), None) => (Instance::Oriented(p.m().clone()), Instance::Oriented(p.n().clone())),
        (Instance::Perspective(_), Some(_)) | (_, Some(Instance::Perspective(_))) => {
            return Err(Error::Parse("check compares two single instances".into()))
        }
        (m, None) => (m.clone(), m),
        (m, Some(n)) => (m, n),
    };
    let g: &GroundSet = m.ground();
    let witness = match (&m, &n) {
        (Instance::Oriented(a), Instance::Oriented(b)) => is_om_perspective(a, b)?.witness.map(|(c, d)| {
            (
                serde_json::to_value(SignedJson::new(g, c)).expect("serializable"),
                serde_json::to_value(SignedJson::new(g, d)).expect("serializable"),
                g.fmt_signed(c),
                g.fmt_signed(d),
            )
        }),
        _ => {
            let under = |i: &Instance| match i {
                Instance::Oriented(x) => x.underlying().clone(),
                Instance::Unoriented(x) => x.clone(),
                Instance::Perspective(_) => unreachable!("rejected above"),
            };
            is_matroid_perspective(&under(&m), &under(&n))?.witness.map(|(c, d)| {
                (json!(g.labels_of(c)), json!(g.labels_of(d)), g.fmt_set(c), g.fmt_set(d))
            })
        }
    };
    if json {
        let w = witness.as_ref().map(|(c, d, _, _)| json!({"circuit": c, "cocircuit": d}));
        json_line(out, &json!({"perspective": witness.is_none(), "witness": w}))?;
    } else {
        match &witness {
            None => writeln!(out, "perspective").unwrap(),
            Some((_, _, c, d)) => writeln!(out, "not a perspective: circuit {c} of M, cocircuit {d} of N").unwrap(),
        }
    }
    Ok(if witness.is_none() { 0 } else { 1 })
}

fn census_json(r: &CensusRow) -> serde_json::Value {
    let (x, y) = r.condition.point();
    json!({
        "condition": r.condition.describe(),
        "point": [x, y, 1],
        "reorientations": r.reorientations,
        "classes": r.classes,
        "evaluation": r.evaluation.to_string(),
        "holds": r.holds(),
    })
}

fn report_json(r: &Report) -> serde_json::Value {
    json!({
        "holds": r.holds(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "holds": c.holds,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

fn write_report(out: &mut String, r: &Report) {
    for c in &r.checks {
        match &c.detail {
            None if c.holds => writeln!(out, "pass  {}", c.name).unwrap(),
            None => writeln!(out, "FAIL  {}", c.name).unwrap(),
            Some(d) => writeln!(out, "FAIL  {}: {d}", c.name).unwrap(),
        }
    }
}

fn verify_all(instances: &[NamedPerspective], guard: SizeGuard, json: bool, out: &mut String) -> Result<i32> {
    let mut results = Vec::new();
    for np in instances {
        results.push((np, tutte::verify_identities(&np.perspective, guard)?));
    }
    let failing = results.iter().filter(|(_, r)| !r.holds()).count();
    if json {
        let list: Vec<_> = results
            .iter()
            .map(|(np, r)| {
                let mut v = report_json(r);
                v["name"] = json!(np.name);
                v["elements"] = json!(np.perspective.len());
                v
            })
            .collect();
        json_line(out, &json!({"holds": failing == 0, "instances": list}))?;
    } else {
        for (np, r) in &results {
            writeln!(out, "== {} ({} elements)", np.name, np.perspective.len()).unwrap();
            write_report(out, r);
        }
        writeln!(out, "{} instances, {} failing", results.len(), failing).unwrap();
    }
    Ok(if failing == 0 { 0 } else { 1 })
}

