//! `addtop`: command-line front end. Every subcommand prints one JSON
//! run report on stdout.

mod report;
mod suites;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use addtop::corpus::bundled;
use addtop::lincat::{category_from_json, category_to_json, FinLinearCategory};
use addtop::monoidal::proj_hom;
use addtop::presheaf::Presheaf;
use addtop::pretop::{check_pta, check_ptb, is_sheaf_via, top_of, Pretopology, Verdict};
use addtop::properties::topology_report;
use addtop::sheafify::{is_separated, is_sheaf, sheafify};
use addtop::topology::{axiom_check, enumerate_topologies, Topology};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use report::{Failure, RunReport};
use suites::{Caps, SUITES};

#[derive(Parser, Debug)]
#[command(name = "addtop", version, about = "Topologies, pretopologies and sheaves on finite linear categories")]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CapArgs {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest presheaf value dimension in exhaustive checks.
    #[arg(long, global = true, default_value_t = 2)]
    max_dim: usize,
    /// Cap on sieves enumerated per object.
    #[arg(long, global = true, default_value_t = 4096)]
    max_sieves: usize,
    /// Composite-cover search depth, or colimit stages for `proj-hom`.
    #[arg(long, global = true)]
    depth: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the category axioms of a category file.
    Validate { category: PathBuf },
    /// Check a pretopology and compute the topology it generates.
    Top {
        #[arg(long)]
        pretopology: PathBuf,
        category: PathBuf,
    },
    /// Sheafify a presheaf.
    Sheafify {
        #[arg(long)]
        topology: PathBuf,
        #[arg(long)]
        presheaf: PathBuf,
        category: PathBuf,
    },
    /// Decide the sheaf condition for a topology or a pretopology.
    CheckSheaf {
        #[arg(long, required_unless_present = "pretopology", conflicts_with = "pretopology")]
        topology: Option<PathBuf>,
        #[arg(long)]
        pretopology: Option<PathBuf>,
        #[arg(long)]
        presheaf: PathBuf,
        category: PathBuf,
    },
    /// List every topology on a category over a prime field.
    EnumerateTopologies { category: PathBuf },
    /// Subcanonicity, bounded generation and monoidality of a topology.
    Props {
        #[arg(long)]
        topology: PathBuf,
        category: PathBuf,
    },
    /// Dimension of hom(O, O(d)) on projective n-space.
    ProjHom {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value_t = 10)]
        window: i64,
    },
    /// Run a bundled verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Print a bundled instance (category and pretopologies), or list them.
    Corpus { name: Option<String> },
}

fn load_category(report: &mut RunReport, path: &Path) -> Result<FinLinearCategory, Failure> {
    let c = category_from_json(&report.read_input("category", path)?)?;
    let v = c.validate();
    if !v.ok() {
        return Err(Failure::input(format!("{}: {}", path.display(), v.violations.join("; "))));
    }
    Ok(c)
}

fn load_topology(report: &mut RunReport, c: &FinLinearCategory, path: &Path) -> Result<Topology, Failure> {
    Ok(Topology::from_json(c, &report.read_input("topology", path)?)?)
}

fn load_pretopology(report: &mut RunReport, c: &FinLinearCategory, path: &Path, depth: Option<usize>) -> Result<Pretopology, Failure> {
    let mut s = Pretopology::from_json(c, &report.read_input("pretopology", path)?)?;
    if let Some(d) = depth {
        s.search_depth = d;
    }
    Ok(s)
}

fn load_presheaf(report: &mut RunReport, c: &FinLinearCategory, path: &Path) -> Result<Presheaf, Failure> {
    Ok(Presheaf::from_json(c, &report.read_input("presheaf", path)?)?)
}

fn note_verdict(report: &mut RunReport, axiom: &str, v: &Verdict) {
    match v {
        Verdict::Verified { .. } => {}
        Verdict::Unknown { reason } => report.warnings.push(format!("{axiom} Unknown: {reason}")),
        Verdict::Violated { .. } => report.fail_check(),
    }
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<Value, Failure> {
    let caps = Caps { seed: cli.caps.seed, max_dim: cli.caps.max_dim, max_sieves: cli.caps.max_sieves, depth: cli.caps.depth };
    report.record_args(&json!({
        "seed": caps.seed, "maxDim": caps.max_dim, "maxSieves": caps.max_sieves, "depth": caps.depth,
        "command": format!("{:?}", cli.command),
    }));
    match &cli.command {
        Command::Validate { category } => {
            let c = load_category(report, category)?;
            Ok(json!({"valid": true, "objects": c.object_labels(), "field": c.field().to_string()}))
        }
        Command::Top { pretopology, category } => {
            let c = load_category(report, category)?;
            let s = load_pretopology(report, &c, pretopology, caps.depth)?;
            let pta = check_pta(&c, &s)?;
            let ptb = check_ptb(&c, &s)?;
            note_verdict(report, "PTa", &pta);
            note_verdict(report, "PTb", &ptb.verdict);
            Ok(json!({
                "PTa": pta.to_json(&c),
                "PTb": ptb.verdict.to_json(&c),
                "PTbStrong": ptb.strong_form,
                "topology": top_of(&c, &s)?.to_json(&c),
            }))
        }
        Command::Sheafify { topology, presheaf, category } => {
            let c = load_category(report, category)?;
            let t = load_topology(report, &c, topology)?;
            let f = load_presheaf(report, &c, presheaf)?;
            let sh = sheafify(&c, &t, &f)?;
            Ok(json!({
                "sheaf": sh.sheaf.to_json(&c),
                "inputIsSheaf": sh.unit.is_iso(),
                "unitInjective": sh.unit.is_mono(),
            }))
        }
        Command::CheckSheaf { topology, pretopology, presheaf, category } => {
            let c = load_category(report, category)?;
            let f = load_presheaf(report, &c, presheaf)?;
            let mut out = Map::new();
            let t = match (topology, pretopology) {
                (Some(path), _) => load_topology(report, &c, path)?,
                (None, Some(path)) => {
                    let s = load_pretopology(report, &c, path, caps.depth)?;
                    out.insert("sheafVia".into(), json!(is_sheaf_via(&c, &s, &f)?));
                    top_of(&c, &s)?
                }
                (None, None) => return Err(Failure::input("one of --topology or --pretopology is required")),
            };
            out.insert("sheaf".into(), json!(is_sheaf(&c, &t, &f)?));
            out.insert("separated".into(), json!(is_separated(&c, &t, &f)?));
            Ok(Value::Object(out))
        }
        Command::EnumerateTopologies { category } => {
            let c = load_category(report, category)?;
            let all = enumerate_topologies(&c, caps.max_sieves)?;
            Ok(json!({"count": all.len(), "topologies": all.iter().map(|t| t.to_json(&c)).collect::<Vec<_>>()}))
        }
        Command::Props { topology, category } => {
            let c = load_category(report, category)?;
            let t = load_topology(report, &c, topology)?;
            let axioms = axiom_check(&c, &t, &[], caps.max_sieves)?;
            if !axioms.ok() {
                report.fail_check();
            }
            if !axioms.exhaustive {
                report.warnings.push("axiom check sampled candidate sieves only".into());
            }
            let mut out = topology_report(&c, &t, caps.max_sieves)?.to_json(&c);
            out["axioms"] = json!(axioms.ok());
            Ok(out)
        }
        Command::ProjHom { n, d, window } => {
            let stages = caps.depth.unwrap_or(3);
            let r = proj_hom(*n, *d, *window, stages)?;
            Ok(json!({"dim": r.dim, "stageDims": r.stage_dims, "stableAt": r.stable_at}))
        }
        Command::Verify { suite } => {
            let chosen: Vec<_> = if suite == "all" {
                SUITES.to_vec()
            } else {
                let f = suites::lookup(suite).ok_or_else(|| {
                    let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
                    Failure::input(format!("unknown suite {suite:?}; known: all, {}", names.join(", ")))
                })?;
                vec![(SUITES.iter().find(|(n, _)| n == suite).expect("looked up").0, f)]
            };
            let outcomes: Vec<_> = std::thread::scope(|scope| {
                let handles: Vec<_> = chosen.iter().map(|(name, f)| (*name, scope.spawn(move || f(&caps)))).collect();
                handles.into_iter().map(|(name, h)| (name, h.join().expect("suite thread panicked"))).collect()
            });
            let mut out = Map::new();
            for (name, outcome) in outcomes {
                let outcome = outcome?;
                if !outcome.passed() {
                    report.fail_check();
                }
                report.warnings.extend(outcome.warnings.iter().map(|w| format!("{name}: {w}")));
                out.insert(name.into(), outcome.to_json());
            }
            Ok(Value::Object(out))
        }
        Command::Corpus { name } => {
            let all = bundled();
            match name {
                None => Ok(json!({"instances": all.iter().map(|i| i.name).collect::<Vec<_>>()})),
                Some(n) => {
                    let inst = all.iter().find(|i| i.name == n).ok_or_else(|| Failure::input(format!("unknown instance {n:?}")))?;
                    let c = &inst.category;
                    let pts: Map<String, Value> = inst.pretopologies.iter().map(|(k, s)| (k.clone(), s.to_json(c))).collect();
                    Ok(json!({"name": inst.name, "category": category_to_json(c), "pretopologies": pts}))
                }
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Top { .. } => "top",
        Command::Sheafify { .. } => "sheafify",
        Command::CheckSheaf { .. } => "check-sheaf",
        Command::EnumerateTopologies { .. } => "enumerate-topologies",
        Command::Props { .. } => "props",
        Command::ProjHom { .. } => "proj-hom",
        Command::Verify { .. } => "verify",
        Command::Corpus { .. } => "corpus",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(report::EXIT_INPUT);
        }
    };
    let mut report = RunReport::new(command_name(&cli.command));
    match run(&cli, &mut report) {
        Ok(results) => report.results = results,
        Err(f) => {
            eprintln!("addtop: {}", f.message);
            report.results = json!({"error": f.message});
            report.exit_code = f.code;
        }
    }
    let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(report.exit_code)
}
