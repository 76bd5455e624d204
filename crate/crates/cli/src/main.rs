use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use superder::almostinner::{classify_derivation, random_element, seeded_rng, AIStatus, ClassifyConfig, Field, SelectorCertificate};
use superder::catalog::{self, Built, PairGV};
use superder::derivations::{euler_derivation, outer_data, Derivation};
use superder::supercore::Parity;
use superder::{io, prehom, quasired, report};

#[derive(Parser)]
#[command(name = "superder", version, about = "Exact derivations and almost inner derivations of Lie superalgebras")]
struct Cli {
    /// seed for random witness samples
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// random samples per homogeneous component
    #[arg(long, global = true, default_value_t = 64)]
    samples: usize,
    /// scalar field for samples: `q` or `qsqrt:<d>`
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog spec syntax
    List,
    /// Build an algebra and print its basis, or its JSON form with --json
    Build { spec: String },
    /// Check the superalgebra axioms exactly
    Validate { spec: String },
    /// Dimensions of Der, inner derivations, center and outer derivations
    Der { spec: String },
    /// Outer derivation dimensions and representatives
    Outer { spec: String },
    /// Classify one derivation: `outer:<k>`, `euler`, `inner:random[:odd]`,
    /// a named derivation of the example, or a derivation JSON file
    Classify { spec: String, selector: String },
    /// Reproduce the classification table
    Report {
        #[arg(long)]
        max_rank: Option<usize>,
    },
    /// Prehomogeneous pairs
    Prehom {
        #[command(subcommand)]
        command: PrehomCommand,
    },
    /// Quasireductive checks
    Quasired {
        #[command(subcommand)]
        command: QuasiredCommand,
    },
}

#[derive(Subcommand)]
enum PrehomCommand {
    /// Test `v ∈ g·v` on basis vectors and random points
    Scan { g: String, v: String },
    /// Classify the Euler derivation of `g ⊕ V`
    Euler { g: String, v: String },
}

#[derive(Subcommand)]
enum QuasiredCommand {
    Probe { spec: String },
}

struct Output {
    value: Value,
    text: String,
    ok: bool,
}

fn status_text(s: &AIStatus) -> String {
    match s {
        AIStatus::Inner(a) => format!("inner, a = {}", vector(a)),
        AIStatus::CertifiedAlmostInner(c) => format!("certified almost inner ({} pieces)", c.pieces.len()),
        AIStatus::NotAlmostInner(r) => {
            format!("not almost inner, witness {} (ranks {} < {})", vector(&r.witness), r.coefficient_rank, r.augmented_rank)
        }
        AIStatus::Undetermined(n) => format!("undetermined after {n} points"),
    }
}

fn vector(v: &[superder::exactmath::Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn resolve(built: &Built, selector: &str, cfg: &ClassifyConfig) -> Result<(Derivation, Vec<SelectorCertificate>)> {
    let l = &built.algebra;
    if let Some(k) = selector.strip_prefix("outer:") {
        let k: usize = k.parse().with_context(|| format!("bad index in `{selector}`"))?;
        let data = outer_data(l)?;
        let d = data.outer_reps.get(k).with_context(|| format!("only {} outer representatives", data.outer_reps.len()))?;
        return Ok((d.clone(), Vec::new()));
    }
    if selector == "euler" {
        if let Some(d) = built.derivation("euler") {
            return Ok((d.derivation.clone(), d.certificates.clone()));
        }
        return Ok((euler_derivation(l)?, Vec::new()));
    }
    if let Some(rest) = selector.strip_prefix("inner:random") {
        let parity = match rest {
            "" | ":even" => Parity::Even,
            ":odd" => Parity::Odd,
            _ => bail!(superder::Error::Unresolvable(selector.into())),
        };
        let mut rng = seeded_rng(cfg.seed);
        let a = random_element(l, parity, &mut rng, cfg);
        return Ok((Derivation::inner(l, &a)?, Vec::new()));
    }
    if selector.ends_with(".json") {
        let text = std::fs::read_to_string(selector).with_context(|| format!("reading {selector}"))?;
        let v: Value = serde_json::from_str(&text)?;
        return Ok((io::derivation_from_json(l, &v)?, Vec::new()));
    }
    if let Some(d) = built.derivation(selector) {
        return Ok((d.derivation.clone(), d.certificates.clone()));
    }
    bail!(superder::Error::Unresolvable(selector.into()))
}

fn run(cli: &Cli) -> Result<Output> {
    let cfg = ClassifyConfig { seed: cli.seed, samples: cli.samples, field: Field::parse(&cli.field)?, ..Default::default() };
    let envelope =
        |command: String, spec: &str, result: Value| json!({"command": command, "seed": cli.seed, "spec": spec, "result": result});
    Ok(match &cli.command {
        Command::List => {
            let entries = catalog::list();
            let text = entries.iter().map(|e| format!("{:<36} {:<12} {}", e.syntax, e.range, e.description)).collect::<Vec<_>>().join("\n");
            let value =
                Value::Array(entries.iter().map(|e| json!({"syntax": e.syntax, "range": e.range, "description": e.description})).collect());
            Output { value, text, ok: true }
        }
        Command::Build { spec } => {
            let l = catalog::build(spec)?.algebra;
            let mut text = format!("{spec}: dims {}\n", l.dims());
            for i in 0..l.dim() {
                let grade = l.zgrade(i).map(|g| format!(" grade {g}")).unwrap_or_default();
                text.push_str(&format!("  {i:>3} {:<12} {}{grade}\n", l.name(i), l.parity(i)));
            }
            Output { value: io::algebra_to_json(&l), text: text.trim_end().into(), ok: true }
        }
        Command::Validate { spec } => {
            let l = catalog::build(spec)?.algebra;
            let r = l.validate();
            let text = if r.is_empty() { format!("{spec}: valid") } else { format!("{spec}: {} violations", r.violations.len()) };
            Output { value: envelope(format!("validate {spec}"), spec, serde_json::to_value(&r)?), text, ok: r.is_empty() }
        }
        Command::Der { spec } => {
            let l = catalog::build(spec)?.algebra;
            let d = outer_data(&l)?;
            let result = json!({"dims": l.dims(), "der": d.der_dims, "inner": d.ider_dims, "center": d.center_dims, "outer": d.outer_dims});
            let text = format!(
                "{spec}: dims {}, Der {}, inner {}, center {}, outer {}",
                l.dims(),
                d.der_dims,
                d.ider_dims,
                d.center_dims,
                d.outer_dims
            );
            Output { value: envelope(format!("der {spec}"), spec, result), text, ok: true }
        }
        Command::Outer { spec } => {
            let l = catalog::build(spec)?.algebra;
            let d = outer_data(&l)?;
            let reps: Vec<Value> = d
                .outer_reps
                .iter()
                .map(|r| {
                    let mut v = io::derivation_to_json(r);
                    v["shift"] = json!(r.shift(&l));
                    v
                })
                .collect();
            let mut text = format!("{spec}: outer {}", d.outer_dims);
            for (k, r) in d.outer_reps.iter().enumerate() {
                let shift = r.shift(&l).map(|s| format!(", shift {s}")).unwrap_or_default();
                text.push_str(&format!("\n  outer:{k} {}{shift}", r.degree()));
            }
            let result = json!({"outer": d.outer_dims, "representatives": reps});
            Output { value: envelope(format!("outer {spec}"), spec, result), text, ok: true }
        }
        Command::Classify { spec, selector } => {
            let built = catalog::build(spec)?;
            let (d, certs) = resolve(&built, selector, &cfg)?;
            let status = classify_derivation(&built.algebra, &d, &certs, built.structured.clone(), &cfg);
            let text = format!("{spec} {selector}: {}", status_text(&status));
            let result = json!({"selector": selector, "degree": d.degree(), "classification": status});
            Output { value: envelope(format!("classify {spec} {selector}"), spec, result), text, ok: true }
        }
        Command::Report { max_rank } => {
            let r = report::classification_table(&cfg, *max_rank)?;
            let mut text = String::new();
            for row in &r.rows {
                let verdicts: Vec<&str> = row.outer_reps.iter().map(|o| o.status.label()).collect();
                text.push_str(&format!(
                    "{:<4} {:<10} dims {:<8} center {:<6} outer {:<6} expected {:<6} ({:?}) [{}]\n",
                    if row.pass { "ok" } else { "FAIL" },
                    row.label,
                    row.dims.to_string(),
                    row.center.to_string(),
                    row.outer.to_string(),
                    row.expected_outer.to_string(),
                    row.source,
                    verdicts.join(", ")
                ));
            }
            for c in &r.euler_checks {
                text.push_str(&format!("{:<4} Euler of {} is {}\n", if c.pass { "ok" } else { "FAIL" }, c.spec, c.status));
            }
            text.push_str(if r.pass { "all rows pass" } else { "some rows fail" });
            let ok = r.pass;
            Output { value: serde_json::to_value(&r)?, text, ok }
        }
        Command::Prehom { command } => match command {
            PrehomCommand::Scan { g, v } => {
                let pair = PairGV::parse(g, v)?;
                let r = prehom::conical_scan(&pair, &cfg)?;
                let text = match r.failures.first() {
                    None => format!("{}: all {} sampled points conical", r.pair, r.samples),
                    Some(f) => format!("{}: refuted at {} after {} points", r.pair, vector(&f.witness), r.samples),
                };
                let spec = format!("{g} {v}");
                Output { value: envelope(format!("prehom scan {spec}"), &spec, serde_json::to_value(&r)?), text, ok: true }
            }
            PrehomCommand::Euler { g, v } => {
                let pair = PairGV::parse(g, v)?;
                let s = prehom::euler_prehom_classify(&pair, &cfg)?;
                let text = format!("{}: Euler derivation {}", pair.label, status_text(&s));
                let spec = format!("{g} {v}");
                Output { value: envelope(format!("prehom euler {spec}"), &spec, serde_json::to_value(&s)?), text, ok: true }
            }
        },
        Command::Quasired { command: QuasiredCommand::Probe { spec } } => {
            let built = catalog::build(spec)?;
            let r = quasired::probe(&built, &cfg)?;
            let mut text = format!(
                "{spec}: quasireductive {}, center {}, odd outer/named candidates {}",
                r.quasireductive.is_quasireductive,
                r.center,
                r.odd_probe.entries.len()
            );
            for e in &r.odd_probe.entries {
                text.push_str(&format!("\n  {}: {}", e.name, status_text(&e.status)));
            }
            if r.odd_probe.conflicts_with_conjecture {
                text.push_str("\n  certified odd almost inner derivation in a quasireductive algebra");
            }
            Output { value: envelope(format!("quasired probe {spec}"), spec, serde_json::to_value(&r)?), text, ok: true }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json { serde_json::to_string_pretty(&out.value).expect("serializable") } else { out.text };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
