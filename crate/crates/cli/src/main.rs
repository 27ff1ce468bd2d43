use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use domred_core::domset::{self, Domination};
use domred_core::perturb::{self, MaxK};
use domred_core::reduction;
use domred_core::verify::{self, FuzzSummary};
use domred_core::{CnfInstance, Graph, Label, Parameter};

#[derive(Parser)]
#[command(
    name = "domred",
    version,
    about = "Domination parameters and 3SAT gadget reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Domination number with a witness set
    Gamma(SolveArgs),
    /// Total domination number with a witness set
    GammaT(SolveArgs),
    /// Bondage number b(G)
    Bondage(PerturbArgs),
    /// Total bondage number b_t(G)
    TotalBondage(PerturbArgs),
    /// Reinforcement number r(G)
    Reinforcement(PerturbArgs),
    /// Total reinforcement number r_t(G)
    TotalReinforcement(PerturbArgs),
    /// Decide a 3-CNF instance
    Sat {
        /// DIMACS file, or - for stdin
        cnf: String,
    },
    /// Build the gadget graph for a 3-CNF instance
    Reduce {
        #[arg(long, value_parser = parse_kind)]
        kind: Parameter,
        /// DIMACS file, or - for stdin
        cnf: String,
        /// Graph output path (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Role sidecar path (defaults to <output>.roles when -o is given)
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Check every claim of a reduction on one instance
    Verify {
        #[arg(long, value_parser = parse_kind)]
        kind: Parameter,
        /// DIMACS file, or - for stdin
        cnf: String,
        #[command(flatten)]
        format: Format,
        /// Also check the structure of every minimum set
        #[arg(long)]
        deep: bool,
        /// Largest perturbation size searched
        #[arg(long, default_value_t = verify::VERIFY_MAX_K, value_parser = clap::value_parser!(usize))]
        max_k: usize,
    },
    /// Verify a reduction on seeded random instances
    Fuzz {
        #[arg(long, value_parser = parse_kind)]
        kind: Parameter,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Variables per instance
        #[arg(short, default_value_t = 3)]
        n: usize,
        /// Clauses per instance
        #[arg(short, default_value_t = 4)]
        m: usize,
        /// Worker threads (0 picks one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        deep: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Write a graph in Graphviz DOT syntax
    ExportDot {
        /// Graph file, or - for stdin
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file, or - for stdin
    graph: String,
    /// List every minimum set instead of one witness
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct PerturbArgs {
    /// Graph file, or - for stdin
    graph: String,
    /// Largest edge set searched, or "all" for no limit
    #[arg(long, value_parser = parse_max_k)]
    max_k: Option<MaxK>,
}

#[derive(Args)]
struct Format {
    /// JSON report
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Line-oriented report (default)
    #[arg(long)]
    text: bool,
}

fn parse_kind(s: &str) -> Result<Parameter, String> {
    verify::parse_kind(s).ok_or_else(|| {
        format!("unknown kind '{s}' (bondage, total-bondage, reinforcement, total-reinforcement)")
    })
}

fn parse_max_k(s: &str) -> Result<MaxK, String> {
    if s == "all" {
        return Ok(MaxK::Unbounded);
    }
    match s.parse::<usize>() {
        Ok(k) if k > 0 => Ok(MaxK::Limit(k)),
        _ => Err(format!("expected a positive integer or 'all', got '{s}'")),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_graph(path: &str) -> Result<Graph> {
    Graph::parse_text(&read_input(path)?).with_context(|| format!("parsing graph {path}"))
}

fn read_cnf(path: &str) -> Result<CnfInstance> {
    CnfInstance::parse_dimacs(&read_input(path)?).with_context(|| format!("parsing CNF {path}"))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn join(set: &[Label]) -> String {
    set.iter().map(Label::as_str).collect::<Vec<_>>().join(" ")
}

fn solve(args: &SolveArgs, mode: Domination) -> Result<String> {
    let g = read_graph(&args.graph)?;
    let name = match mode {
        Domination::Plain => "gamma",
        Domination::Total => "gamma_t",
    };
    let best = domset::minimum(&g, mode)?;
    let mut out = format!("{name} {}\n", best.value);
    if args.all {
        let sets = domset::enumerate_minimum_sets(&g, mode)?;
        out += &format!("sets {}\n", sets.len());
        for s in sets {
            out += &format!("set {}\n", join(&s));
        }
    } else {
        out += &format!("witness {}\n", join(&best.witness));
    }
    Ok(out)
}

fn perturbation(args: &PerturbArgs, param: Parameter) -> Result<String> {
    let g = read_graph(&args.graph)?;
    let r = perturb::compute(&g, param, args.max_k.unwrap_or_default())?;
    let base = match param.domination() {
        Domination::Plain => "gamma",
        Domination::Total => "gamma_t",
    };
    let mut out = format!("{} {}\n{base} {}\n", param.symbol(), r.value, r.base);
    for (a, b) in &r.witness {
        out += &format!("edge {a} {b}\n");
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let text = match cli.command {
        Command::Gamma(a) => solve(&a, Domination::Plain)?,
        Command::GammaT(a) => solve(&a, Domination::Total)?,
        Command::Bondage(a) => perturbation(&a, Parameter::Bondage)?,
        Command::TotalBondage(a) => perturbation(&a, Parameter::TotalBondage)?,
        Command::Reinforcement(a) => perturbation(&a, Parameter::Reinforcement)?,
        Command::TotalReinforcement(a) => perturbation(&a, Parameter::TotalReinforcement)?,
        Command::Sat { cnf } => match read_cnf(&cnf)?.solve() {
            Some(t) => {
                let lits: Vec<String> = (1..=t.len() as u32)
                    .map(|v| {
                        if t.value(v) {
                            v.to_string()
                        } else {
                            format!("-{v}")
                        }
                    })
                    .collect();
                format!("s SATISFIABLE\nv {} 0\n", lits.join(" "))
            }
            None => "s UNSATISFIABLE\n".to_string(),
        },
        Command::Reduce {
            kind,
            cnf,
            output,
            roles,
        } => {
            let out = reduction::build(kind, &read_cnf(&cnf)?);
            write_output(output.as_deref(), &out.graph.to_text())?;
            let roles = roles.or_else(|| {
                output.as_ref().map(|p| {
                    let mut s = p.clone().into_os_string();
                    s.push(".roles");
                    PathBuf::from(s)
                })
            });
            if let Some(r) = roles {
                write_output(Some(&r), &out.role_map_text())?;
            }
            if output.is_none() {
                return Ok(ExitCode::SUCCESS);
            }
            format!(
                "vertices {} edges {}\n",
                out.graph.vertex_count(),
                out.graph.edge_count()
            )
        }
        Command::Verify {
            kind,
            cnf,
            format,
            deep,
            max_k,
        } => {
            if max_k == 0 {
                bail!("--max-k must be at least 1");
            }
            let report = verify::verify_with_max_k(kind, &read_cnf(&cnf)?, deep, max_k);
            let body = if format.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            write_output(None, &body)?;
            return Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Fuzz {
            kind,
            seed,
            trials,
            n,
            m,
            jobs,
            deep,
            format,
        } => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
            let reports = pool.install(|| verify::fuzz(kind, n, m, trials, seed, deep))?;
            let summary = FuzzSummary::of(&reports);
            let body = if format.json {
                let doc = serde_json::json!({ "summary": summary, "reports": reports });
                serde_json::to_string_pretty(&doc)? + "\n"
            } else {
                let mut s = String::new();
                for (i, r) in reports.iter().enumerate() {
                    s += &format!(
                        "trial {i} seed {} sat={} {}={} {}\n",
                        r.seed.unwrap_or_default(),
                        r.sat,
                        kind.symbol(),
                        r.perturbation,
                        if r.pass { "PASS" } else { "FAIL" }
                    );
                    if !r.pass {
                        s += &r.to_text();
                    }
                }
                s + &format!("summary {summary}\n")
            };
            write_output(None, &body)?;
            return Ok(if summary.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::ExportDot { graph, output } => {
            write_output(output.as_deref(), &read_graph(&graph)?.to_dot())?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    write_output(None, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
