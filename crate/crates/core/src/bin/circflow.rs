use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use circflow::coloring::{
    bipartizing_one_factor, check_bipartizing_flow_equivalence, chromatic_index, classify,
    Agreement, ChromaticIndex, ClassWitness, EdgeClass,
};
use circflow::constructions::{glue_gadgets, h_gadget, k2_multi, petersen_data, petersen_family};
use circflow::flows::{circular_flow_number, has_nwz_flow, Budget, FcStatus, Verdict};
use circflow::graph::{parse_graph_file, serialize, DEFAULT_SUBSET_BOUND};
use circflow::harness::{render_table, scan_catalog, AnalyzeOptions};
use circflow::rational::{parse_rational, Rational};
use circflow::valuations::{
    is_balanced_brute, is_balanced_mincut, refute_flow_by_valuation, Balance, BalancedValuation,
    Refutation, DEFAULT_REFUTE_BOUND,
};
use circflow::{Error, Multigraph};

const EXIT_INPUT: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "circflow", version, about = "Circular flows and edge-colorings of multigraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone, Copy)]
struct BudgetArgs {
    /// Search-node budget per flow decision.
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
    /// Wall-clock limit per flow decision, in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget {
            max_nodes: self.budget,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Mincut,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    K2,
    HGadget,
    Glue,
    PetersenFamily,
}

#[derive(Subcommand)]
enum Cmd {
    /// Circular flow number over the ladder of p/q with q <= Q.
    Fc {
        file: PathBuf,
        /// Largest ladder denominator (default: number of vertices).
        #[arg(long)]
        denom_bound: Option<i64>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a nowhere-zero r-flow exists and print a certificate.
    Decide {
        file: PathBuf,
        #[arg(long, value_parser = parse_r)]
        r: Rational,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exact chromatic index with an optimal coloring.
    Chi {
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
    },
    /// Class 1 or class 2 with its witness.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
    },
    /// Bipartizing 1-factor and its agreement with the flow bound.
    Bipartizing {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a vertex valuation for balance.
    Valuation {
        file: PathBuf,
        /// A file of `<v> <p>/<q>` lines, or a comma-separated list.
        #[arg(long)]
        weights: String,
        #[arg(long, value_enum, default_value_t = Method::Mincut)]
        method: Method,
    },
    /// Try to refute an r-flow by exhausting balanced Jaeger-form valuations.
    Refute {
        file: PathBuf,
        #[arg(long, value_parser = parse_r)]
        r: Rational,
        #[arg(long, default_value_t = DEFAULT_REFUTE_BOUND)]
        bound: usize,
    },
    /// Build a gadget or family member; writes OUT and OUT.json.
    Construct {
        #[arg(value_enum)]
        family: Construction,
        #[arg(long)]
        t: usize,
        /// Base graph for `glue`.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Analyse every (2t+1)-regular bridgeless graph in a directory.
    Scan {
        dir: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        denom_bound: Option<i64>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn parse_r(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e @ Error::Internal(_)) => {
            eprintln!("internal error: {e}");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read_graph(path: &Path) -> Result<Multigraph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })?;
    let mut graphs = parse_graph_file(&text)?;
    match graphs.len() {
        1 => Ok(graphs.pop().unwrap().1),
        k => Err(Error::Parse {
            line: 0,
            msg: format!("expected one graph, found {k}"),
        }),
    }
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Fc {
            file,
            denom_bound,
            budget,
            json,
        } => {
            let g = read_graph(&file)?;
            let q = denom_bound.unwrap_or(g.n().max(1) as i64);
            let fc = circular_flow_number(&g, q, &budget.budget())?;
            let status = match fc.status {
                FcStatus::ExactWithinBound => "exact",
                FcStatus::LowerBoundOnly => "lower-bound-only",
                FcStatus::UndefinedBridge => "undefined-bridge",
            };
            if json {
                let r = |v: Option<Rational>| v.map(|v| json!({"num": v.numer(), "den": v.denom()}));
                let out = json!({
                    "fc": r(fc.value),
                    "status": status,
                    "denom_bound": q,
                    "refused": r(fc.refused),
                    "upper": r(fc.upper),
                    "nodes": fc.stats.nodes,
                    "witness": fc.witness.as_ref().map(|w| w.to_text()),
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            } else {
                match fc.value {
                    Some(v) => println!("F_c = {v} ({status}, Q = {q})"),
                    None => println!("F_c undefined ({status})"),
                }
                if let Some(r) = fc.refused {
                    println!("refused {}", r);
                }
                if let Some(u) = fc.upper {
                    println!("upper {}", u);
                }
                if let Some(w) = &fc.witness {
                    print!("{}", w.to_text());
                }
            }
            Ok(if fc.status == FcStatus::LowerBoundOnly { EXIT_BUDGET } else { 0 })
        }
        Cmd::Decide { file, r, budget } => {
            let g = read_graph(&file)?;
            let d = has_nwz_flow(&g, r, &budget.budget());
            match d.verdict {
                Verdict::Yes => {
                    println!("yes");
                    if let Some(c) = &d.certificate {
                        print!("{}", c.to_text());
                    }
                }
                Verdict::No => println!("no"),
                Verdict::Unknown => println!("unknown (budget exhausted after {} nodes)", d.stats.nodes),
            }
            Ok(if d.verdict == Verdict::Unknown { EXIT_BUDGET } else { 0 })
        }
        Cmd::Chi { file, budget } => {
            let g = read_graph(&file)?;
            match chromatic_index(&g, budget)?.0 {
                ChromaticIndex::Exact { chi, coloring } => {
                    println!("chi' = {chi}");
                    print!("{}", coloring.to_text());
                    Ok(0)
                }
                ChromaticIndex::Unknown { lower, upper } => {
                    println!("chi' in [{lower}, {upper}] (budget exhausted)");
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Cmd::Classify { file, budget } => {
            let g = read_graph(&file)?;
            let c = classify(&g, budget, DEFAULT_SUBSET_BOUND)?;
            let class = match c.class {
                EdgeClass::Class1 => "class 1",
                EdgeClass::Class2 => "class 2",
                EdgeClass::Unknown => "unknown",
            };
            println!("{class}");
            match &c.witness {
                ClassWitness::Coloring(col) => print!("{}", col.to_text()),
                ClassWitness::OddCut(cut) => println!(
                    "odd cut X = {:?}, |boundary| = {}",
                    cut.source.to_vec(),
                    cut.size()
                ),
                ClassWitness::Exhausted => println!("no Δ-coloring exists (exhaustive search)"),
                ClassWitness::Budget => println!("budget exhausted"),
            }
            Ok(if c.class == EdgeClass::Unknown { EXIT_BUDGET } else { 0 })
        }
        Cmd::Bipartizing { file, budget } => {
            let g = read_graph(&file)?;
            match bipartizing_one_factor(&g)? {
                Some((m, _)) => print!("{}", m.to_text()),
                None => println!("no bipartizing 1-factor"),
            }
            let rep = check_bipartizing_flow_equivalence(&g, &budget.budget())?;
            println!("flow at {}: {:?}", rep.bound, rep.flow_at_bound);
            match rep.agreement {
                Agreement::Agree => {
                    println!("consistent");
                    Ok(0)
                }
                Agreement::Disagree(msg) => Err(Error::Internal(msg)),
                Agreement::Undetermined => {
                    println!("undetermined (budget exhausted)");
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Cmd::Valuation {
            file,
            weights,
            method,
        } => {
            let g = read_graph(&file)?;
            let w = if Path::new(&weights).is_file() {
                let text = std::fs::read_to_string(&weights).map_err(|e| Error::Parse {
                    line: 0,
                    msg: e.to_string(),
                })?;
                BalancedValuation::from_text(&text)?.0
            } else {
                weights
                    .split(',')
                    .map(|s| parse_rational(s.trim()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let verdict = match method {
                Method::Brute => is_balanced_brute(&g, &w, DEFAULT_SUBSET_BOUND)?,
                Method::Mincut => is_balanced_mincut(&g, &w)?,
            };
            match verdict {
                Balance::Balanced => println!("balanced"),
                Balance::Violated(x) => println!("violated by X = {:?}", x.to_vec()),
            }
            Ok(0)
        }
        Cmd::Refute { file, r, bound } => {
            let g = read_graph(&file)?;
            match refute_flow_by_valuation(&g, r, bound)? {
                Refutation::Refuted => println!("refuted: no balanced valuation at {}", r),
                Refutation::NotRefuted(form) => {
                    println!("not refuted: k = {:?}", form.k);
                    print!("{}", form.valuation()?.to_text());
                }
            }
            Ok(0)
        }
        Cmd::Construct { family, t, base, out } => {
            let (g, sidecar) = match family {
                Construction::K2 => (k2_multi(t)?, json!({"family": "k2", "t": t})),
                Construction::HGadget => {
                    let (g, l) = h_gadget(t)?;
                    (g, json!({"family": "h-gadget", "t": t, "labels": l}))
                }
                Construction::Glue => {
                    let base = base.ok_or_else(|| Error::Domain("glue needs --base FILE".into()))?;
                    let (g, l) = glue_gadgets(&read_graph(&base)?, t)?;
                    (g, json!({"family": "glue", "t": t, "base": base, "gadgets": l}))
                }
                Construction::PetersenFamily => {
                    let g = petersen_family(t)?;
                    let d = petersen_data();
                    let extra: Vec<usize> = (15..g.m()).collect();
                    (
                        g,
                        json!({"family": "petersen-family", "t": t, "petersen": d, "added_edges": extra}),
                    )
                }
            };
            write(&out, &serialize(&g))?;
            let mut side = out.clone().into_os_string();
            side.push(".json");
            let mut text = serde_json::to_string_pretty(&sidecar).expect("json");
            text.push('\n');
            write(Path::new(&side), &text)?;
            println!("wrote {} ({} vertices, {} edges)", out.display(), g.n(), g.m());
            Ok(0)
        }
        Cmd::Scan {
            dir,
            t,
            report,
            denom_bound,
            budget,
            jobs,
        } => {
            let opts = AnalyzeOptions {
                denom_bound,
                flow_budget: budget.budget(),
                ..Default::default()
            };
            let workers = jobs.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let rep = scan_catalog(&dir, t, &opts, workers)?;
            write(&report, &rep.to_json())?;
            print!("{}", render_table(&rep.reports));
            for s in &rep.skipped {
                println!("skipped {}: {}", s.id, s.reason);
            }
            if !rep.summary.inconsistent.is_empty() {
                eprintln!("INCONSISTENT reports: {:?}", rep.summary.inconsistent);
                return Err(Error::Internal("theory checks failed".into()));
            }
            let unknown = rep.reports.iter().any(|r| r.exact_fc().is_none());
            Ok(if unknown { EXIT_BUDGET } else { 0 })
        }
    }
}
