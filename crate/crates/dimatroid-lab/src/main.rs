//! Thin command-line shell over the `dimatroid` library.
//!
//! Exit codes: 0 completed, 1 usage or input error, 2 fatal invariant
//! violation (a proven statement failed), 3 counterexample found by
//! `search`.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use dimatroid::covers::{
    beta_exact, beta_matroid, beta_star, minimal_fractional_cover, zeta,
};
use dimatroid::fair::{fair_rep_matroid, fair_rep_two_blocks, Partition};
use dimatroid::lab::checks::{self, Conjecture, SearchConfig, Verdict};
use dimatroid::lab::Instance;
use dimatroid::matroid::MatroidSpec;
use dimatroid::rat;
use dimatroid::{ElementSet, Error};

#[derive(Parser)]
#[command(name = "dimatroid-lab", version, about = "matroid-intersection cover and fairness lab")]
struct Cli {
    /// Write a machine-readable report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of a set (default: the whole ground set) in P, and in Q if present.
    Rank {
        instance: PathBuf,
        /// Comma-separated elements, e.g. "0,2,5".
        #[arg(long)]
        set: Option<String>,
    },
    /// Density of P (and Q if present), exact.
    Zeta { instance: PathBuf },
    /// Cover number: of the matroid P, or of the dimatroid when Q is present.
    Beta { instance: PathBuf },
    /// Fractional cover number.
    BetaStar { instance: PathBuf },
    /// Optimal fractional cover of the dimatroid truncated at g.
    FracCover {
        instance: PathBuf,
        /// Truncation level; defaults to ⌊n/ζ⌋.
        #[arg(long)]
        g: Option<usize>,
    },
    /// Maximum (optionally marked) common independent set.
    Intersect {
        instance: PathBuf,
        /// Maximize overlap with this comma-separated set.
        #[arg(long)]
        marked: Option<String>,
        /// Size of the requested set (with --marked); defaults to the maximum.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Exchange walk between two equal-size common independent sets.
    ExchangeWalk {
        instance: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Fair representation: single matroid against its partition, or
    /// almost-fair two-block representation when Q is present.
    FairRep { instance: PathBuf },
    /// Run one named check.
    Check {
        name: CheckName,
        instance: Option<PathBuf>,
        /// Path length for the path checks.
        #[arg(long)]
        n: Option<usize>,
        /// Blocks as semicolon-separated member lists, e.g. "0,1;2,3".
        #[arg(long)]
        blocks: Option<String>,
        /// Marked edge set for two-trees.
        #[arg(long)]
        set: Option<String>,
        /// First common independent set for balanced-union.
        #[arg(long)]
        c: Option<String>,
        /// Second common independent set for balanced-union.
        #[arg(long)]
        e: Option<String>,
        /// Override the check's default size cap.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Reproduce the built-in reference examples.
    Examples,
    /// Randomized counterexample search; exits 3 if anything is found.
    Search {
        conjecture: ConjectureName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckName {
    Betaint,
    Fair,
    Konig,
    TwoTrees,
    Path,
    PathStrong,
    BalancedUnion,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjectureName {
    Betaint,
    Fair,
    PathStrong,
    BalancedUnion,
}

impl From<ConjectureName> for Conjecture {
    fn from(c: ConjectureName) -> Self {
        match c {
            ConjectureName::Betaint => Conjecture::BetaIntersection,
            ConjectureName::Fair => Conjecture::FairRepresentation,
            ConjectureName::PathStrong => Conjecture::PathStrong,
            ConjectureName::BalancedUnion => Conjecture::BalancedUnion,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's default exit code disagrees with ours; print and map.
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_invariant_violation() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let mut exit = ExitCode::SUCCESS;
    let report: Value = match &cli.command {
        Command::Rank { instance, set } => {
            let inst = load(instance)?;
            let p = inst.matroid_p()?;
            let s = match set {
                Some(text) => ElementSet::from_members(p.ground_size(), parse_members(text)?)?,
                None => p.ground_set(),
            };
            let rank_p = p.rank(&s)?;
            println!("rank_P({s}) = {rank_p}");
            let mut payload = json!({ "set": s.members(), "rank_p": rank_p });
            if let Some(q) = inst.matroid_q()? {
                let rank_q = q.rank(&s)?;
                println!("rank_Q({s}) = {rank_q}");
                payload["rank_q"] = json!(rank_q);
            }
            payload
        }
        Command::Zeta { instance } => {
            let inst = load(instance)?;
            let zp = zeta(&inst.matroid_p()?)?;
            println!("zeta(P) = {}", rat::display(&zp));
            let mut payload = json!({ "zeta_p": rat::format_pq(&zp) });
            if let Some(q) = inst.matroid_q()? {
                let zq = zeta(&q)?;
                println!("zeta(Q) = {}", rat::display(&zq));
                payload["zeta_q"] = json!(rat::format_pq(&zq));
            }
            payload
        }
        Command::Beta { instance } => {
            let inst = load(instance)?;
            let report = match inst.matroid_q()? {
                None => beta_matroid(&inst.matroid_p()?)?,
                Some(q) => {
                    let d = dimatroid::Dimatroid::new(inst.matroid_p()?, q)?;
                    beta_exact(&d)?
                }
            };
            println!("beta = {} ({})", report.value, report.method);
            for w in &report.witness {
                println!("  cover set {w}");
            }
            serde_json::to_value(&report).expect("report serializes")
        }
        Command::BetaStar { instance } => {
            let inst = load(instance)?;
            let value = match inst.matroid_q()? {
                None => zeta(&inst.matroid_p()?)?,
                Some(q) => beta_star(&dimatroid::Dimatroid::new(inst.matroid_p()?, q)?)?,
            };
            println!("beta* = {}", rat::display(&value));
            json!({ "beta_star": rat::format_pq(&value) })
        }
        Command::FracCover { instance, g } => {
            let inst = load(instance)?;
            let d = inst.dimatroid()?;
            let g = match g {
                Some(g) => *g,
                None => {
                    let z = beta_star(&d)?;
                    rat::floor_to_i64(&(rat::from_usize(d.ground_size()) / z)) as usize
                }
            };
            let cover = minimal_fractional_cover(&d, g)?;
            println!("fractional cover of the g={g} truncation, total {}", rat::display(&cover.total));
            for entry in &cover.entries {
                println!("  {} -> {}", entry.edge, rat::format_pq(&entry.weight));
            }
            json!({ "g": g, "cover": serde_json::to_value(&cover).expect("cover serializes") })
        }
        Command::Intersect { instance, marked, size } => {
            let inst = load(instance)?;
            let d = inst.dimatroid()?;
            let payload = match marked {
                None => {
                    let s = d.max_common_independent();
                    println!("maximum common independent set: {s} (size {})", s.len());
                    json!({ "set": s.members(), "size": s.len() })
                }
                Some(text) => {
                    let a = ElementSet::from_members(d.ground_size(), parse_members(text)?)?;
                    let g = match size {
                        Some(g) => *g,
                        None => d.max_common_independent().len(),
                    };
                    let s = d.max_marked_common_independent(&a, g)?;
                    println!(
                        "size-{g} common independent set with |S ∩ {a}| = {}: {s}",
                        s.intersection(&a).len()
                    );
                    json!({ "set": s.members(), "marked": a.members(),
                            "overlap": s.intersection(&a).len() })
                }
            };
            payload
        }
        Command::ExchangeWalk { instance, s, t } => {
            let inst = load(instance)?;
            let d = inst.dimatroid()?;
            let s = ElementSet::from_members(d.ground_size(), parse_members(s)?)?;
            let t = ElementSet::from_members(d.ground_size(), parse_members(t)?)?;
            let walk = d.exchange_walk(&s, &t)?;
            walk.verify(&d)?;
            println!("s-order: {:?}", walk.s_order);
            println!("t-order: {:?}", walk.t_order);
            for (i, r) in walk.intermediates.iter().enumerate() {
                println!("  R_{} = {r}", i + 1);
            }
            serde_json::to_value(&walk).expect("walk serializes")
        }
        Command::FairRep { instance } => {
            let inst = load(instance)?;
            let part = inst.partition()?.ok_or_else(|| {
                Error::InvalidSpec("fair-rep needs a \"partition\" in the instance".into())
            })?;
            match inst.matroid_q()? {
                None => {
                    let s = fair_rep_matroid(&inst.matroid_p()?, &part)?;
                    println!("fair representative: {s}");
                    json!({ "set": s.members() })
                }
                Some(q) => {
                    if part.num_blocks() != 2 {
                        return Err(Error::InvalidSpec(format!(
                            "two-block fair representation needs exactly 2 blocks, got {}",
                            part.num_blocks()
                        )));
                    }
                    let d = dimatroid::Dimatroid::new(inst.matroid_p()?, q)?;
                    let trace = fair_rep_two_blocks(&d, &part.blocks()[0])?;
                    println!(
                        "almost delta-fair set (delta = {}): {} at chain index {}",
                        rat::display(&trace.delta),
                        trace.chosen,
                        trace.chain_index
                    );
                    serde_json::to_value(&trace).expect("trace serializes")
                }
            }
        }
        Command::Check { name, instance, n, blocks, set, c, e, max_n } => {
            let result = run_check(*name, instance.as_deref(), *n, blocks, set, c, e, *max_n)?;
            print_check(&result);
            serde_json::to_value(&result).expect("check serializes")
        }
        Command::Examples => {
            let results = checks::reference_examples()?;
            for r in &results {
                print_check(r);
            }
            if results.iter().any(|r| r.verdict != Verdict::Holds) {
                exit = ExitCode::from(2);
            }
            serde_json::to_value(&results).expect("results serialize")
        }
        Command::Search { conjecture, seed, count, max_n } => {
            let cfg = SearchConfig { seed: *seed, count: *count, max_n: *max_n };
            let report = checks::search((*conjecture).into(), &cfg)?;
            println!(
                "search {}: {} instances, {} counterexamples",
                report.conjecture, report.count, report.counterexamples
            );
            for r in report.results.iter().filter(|r| r.is_counterexample()) {
                println!("COUNTEREXAMPLE {}", r.instance);
                println!("  certificate: {}", r.certificate);
            }
            if report.counterexamples > 0 {
                exit = ExitCode::from(3);
            }
            serde_json::to_value(&report).expect("report serializes")
        }
    };
    if let Some(path) = &cli.json {
        let wrapped = json!({ "command": command_name(&cli.command), "report": report });
        let text = serde_json::to_string_pretty(&wrapped).expect("report serializes");
        std::fs::write(path, text + "\n").map_err(|e| Error::Json(e.to_string()))?;
    }
    Ok(exit)
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    name: CheckName,
    instance: Option<&Path>,
    n: Option<usize>,
    blocks: &Option<String>,
    set: &Option<String>,
    c: &Option<String>,
    e: &Option<String>,
    max_n: Option<usize>,
) -> Result<checks::CheckResult, Error> {
    let need_instance = || -> Result<Instance, Error> {
        load(instance.ok_or_else(|| Error::InvalidSpec("this check needs an instance file".into()))?)
    };
    match name {
        CheckName::Betaint => {
            let inst = need_instance()?;
            let q = inst
                .matroid_q()?
                .ok_or_else(|| Error::InvalidSpec("betaint needs a \"q\" spec".into()))?;
            checks::check_betaint(
                &inst.label,
                &inst.matroid_p()?,
                &q,
                max_n.unwrap_or(checks::DEFAULT_BETAINT_CAP),
            )
        }
        CheckName::Fair => {
            let inst = need_instance()?;
            let d = inst.dimatroid()?;
            let part = inst.partition()?.ok_or_else(|| {
                Error::InvalidSpec("the fair check needs a \"partition\"".into())
            })?;
            checks::check_fair_conjecture(
                &inst.label,
                &d,
                &part,
                max_n.unwrap_or(checks::DEFAULT_FAIR_CAP),
            )
        }
        CheckName::Konig => {
            let inst = need_instance()?;
            let (vertices, edges) = graphic_parts(&inst)?;
            checks::check_konig(
                &inst.label,
                vertices,
                &edges,
                max_n.unwrap_or(checks::DEFAULT_KONIG_CAP),
            )
        }
        CheckName::TwoTrees => {
            let inst = need_instance()?;
            let (vertices, edges) = graphic_parts(&inst)?;
            let a = match set {
                Some(text) => ElementSet::from_members(edges.len(), parse_members(text)?)?,
                None => ElementSet::empty(edges.len()),
            };
            checks::check_two_trees(
                &inst.label,
                vertices,
                &edges,
                &a,
                max_n.unwrap_or(checks::DEFAULT_TWO_TREES_CAP),
            )
        }
        CheckName::Path | CheckName::PathStrong => {
            let n = n.ok_or_else(|| Error::InvalidSpec("path checks need --n".into()))?;
            let blocks = blocks
                .as_ref()
                .ok_or_else(|| Error::InvalidSpec("path checks need --blocks".into()))?;
            let part = parse_partition(n, blocks)?;
            match name {
                CheckName::Path => checks::check_path_theorem(
                    "path",
                    n,
                    &part,
                    max_n.unwrap_or(checks::DEFAULT_PATH_CAP),
                ),
                _ => checks::check_path_strong_conjecture(
                    "path-strong",
                    n,
                    &part,
                    max_n.unwrap_or(checks::DEFAULT_PATH_STRONG_CAP),
                ),
            }
        }
        CheckName::BalancedUnion => {
            let inst = need_instance()?;
            let d = inst.dimatroid()?;
            let parse = |field: &Option<String>, what: &str| -> Result<ElementSet, Error> {
                let text = field
                    .as_ref()
                    .ok_or_else(|| Error::InvalidSpec(format!("balanced-union needs {what}")))?;
                ElementSet::from_members(d.ground_size(), parse_members(text)?)
            };
            let c = parse(c, "--c")?;
            let e = parse(e, "--e")?;
            checks::check_balanced_union(
                &inst.label,
                &d,
                &c,
                &e,
                max_n.unwrap_or(checks::DEFAULT_BALANCED_CAP),
            )
        }
    }
}

fn graphic_parts(inst: &Instance) -> Result<(usize, Vec<(usize, usize)>), Error> {
    match &inst.p {
        MatroidSpec::Graphic { vertices, edges } => Ok((*vertices, edges.clone())),
        _ => Err(Error::InvalidSpec("this check needs a graphic \"p\" spec".into())),
    }
}

fn print_check(r: &checks::CheckResult) {
    let verdict = match &r.verdict {
        Verdict::Holds => "holds".to_string(),
        Verdict::Counterexample => "COUNTEREXAMPLE".to_string(),
        Verdict::Skipped { reason } => format!("skipped ({reason})"),
    };
    println!("[{}] {}: {} ({} ms)", r.check, r.instance, verdict, r.elapsed.as_millis());
    println!("  certificate: {}", r.certificate);
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Rank { .. } => "rank",
        Command::Zeta { .. } => "zeta",
        Command::Beta { .. } => "beta",
        Command::BetaStar { .. } => "beta-star",
        Command::FracCover { .. } => "frac-cover",
        Command::Intersect { .. } => "intersect",
        Command::ExchangeWalk { .. } => "exchange-walk",
        Command::FairRep { .. } => "fair-rep",
        Command::Check { .. } => "check",
        Command::Examples => "examples",
        Command::Search { .. } => "search",
    }
}

fn load(path: &Path) -> Result<Instance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
    Instance::from_json(&text)
}

fn parse_members(text: &str) -> Result<Vec<usize>, Error> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| Error::InvalidSpec(format!("bad element {part:?}: {e}")))
        })
        .collect()
}

fn parse_partition(n: usize, text: &str) -> Result<Partition, Error> {
    let blocks: Result<Vec<ElementSet>, Error> = text
        .split(';')
        .map(|b| ElementSet::from_members(n, parse_members(b)?))
        .collect();
    Partition::new(n, blocks?)
}
