//! `rfl`: batch verification driver for the rainbow k-factor workbench.

use std::cmp::Ordering;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rfl_core::exec::{configure_threads, Exec};
use rfl_core::experiments::generate::{colliding_instance, instance_rng};
use rfl_core::experiments::runs::hub_pipeline;
use rfl_core::experiments::{
    check_lemma36, check_theorem, hnk_table, ExperimentReport, LemmaScan, TheoremCase, TheoremRun,
};
use rfl_core::factors::{find_rainbow_k_factor, verify_rainbow, SearchLimits, SearchOutcome, DEFAULT_NODE_CAP};
use rfl_core::graph::{hnk, parse_collection, parse_graph, GraphFormat, LabeledGraph};
use rfl_core::kelmans::{ko_full, ko_pair};
use rfl_core::schedules::{disjointify_repair, even_schedule, odd_schedule, RepairTag};
use rfl_core::spectral::{
    char_poly, compare_radius, compare_radius_exact, isolate_largest_root, parse_rational, rational_from_f64,
    rational_string, spectral_radius, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(name = "rfl", version, about = "Rainbow k-factor workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for sampled experiments.
    #[arg(long, global = true, default_value_t = 0x5eed_2024)]
    seed: u64,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Width of printed spectral enclosures.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Output format; tables default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Node cap for exact searches.
    #[arg(long, global = true, env = "RFL_NODE_CAP", default_value_t = DEFAULT_NODE_CAP)]
    node_cap: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    A,
    B,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    /// Two perfect matchings sharing an edge (even n).
    CollidingMatchings,
    /// A Hamiltonian cycle with one doubled edge (odd n).
    CollidingCycle,
}

#[derive(Subcommand)]
enum Command {
    /// Certified spectral radius of a graph, or a comparison of two.
    Radius {
        /// graph6 or edge-list JSON; stdin when absent.
        input: Option<PathBuf>,
        /// Use H_{n,k} with hub n and clique part 1..k-1 instead of an input.
        #[arg(long, num_args = 2, value_names = ["N", "K"], conflicts_with_all = ["input", "compare"])]
        hnk: Option<Vec<usize>>,
        /// Compare the radii of two graph files.
        #[arg(long, num_args = 2, value_names = ["G", "H"], conflicts_with = "input")]
        compare: Option<Vec<PathBuf>>,
        /// Enclose the largest characteristic root only, or compare without
        /// the floating fast path.
        #[arg(long)]
        exact: bool,
    },
    /// Enclosures of rho(H_{n,k}) for all k <= k-max and k < n <= n-max.
    HnkTable {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Enclosure width as a rational, e.g. 1/10000000000.
        #[arg(long, default_value = "1/10000000000")]
        precision: String,
    },
    /// Certifies the lemma family below H_{n,k} over a parameter scan.
    CheckLemma36 {
        /// Inclusive range, written a..=b, a-b or a single value.
        #[arg(long, default_value = "2..=4", value_parser = parse_range)]
        k_range: RangeInclusive<usize>,
        #[arg(long, default_value = "7..=20", value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        p_range: Option<RangeInclusive<usize>>,
    },
    /// Samples collections and checks rainbow k-factors two ways.
    CheckTheorem {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        case: Case,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Prints the colour schedule for (n, k).
    Schedule { n: usize, k: usize },
    /// Repairs a seeded colliding-layer instance and prints each move.
    RepairDemo {
        #[arg(long, value_enum, default_value = "colliding-matchings")]
        scenario: Scenario,
        /// Order; defaults to 8 for matchings and 7 for cycles.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Kelmans shift of one pair, or shift to a fixed point.
    Ko {
        input: Option<PathBuf>,
        #[arg(long, requires = "v", conflicts_with = "full")]
        u: Option<usize>,
        #[arg(long, requires = "u")]
        v: Option<usize>,
        #[arg(long)]
        full: bool,
    },
    /// Exact rainbow k-factor search on a collection in JSON.
    FindRainbow {
        input: Option<PathBuf>,
        /// Use the hub pipeline; every member must be a labeled H_{n,k}.
        #[arg(long)]
        hub: bool,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let a = num(s)?;
        (a, a)
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&PathBuf>) -> Result<LabeledGraph> {
    let text = read_input(path)?;
    parse_graph(text.trim(), GraphFormat::sniff(&text)).map_err(|e| anyhow!("{e}"))
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "Less",
        Ordering::Equal => "Equal",
        Ordering::Greater => "Greater",
    }
}

fn csv_writer() -> csv::Writer<io::Stdout> {
    csv::Writer::from_writer(io::stdout())
}

fn print_json(v: &Value) {
    println!("{v}");
}

/// Emits a report and maps it to the exit status: success iff no Fail.
fn emit_report(r: &ExperimentReport, format: Format) -> Result<ExitCode> {
    match format {
        Format::Json => print!("{}", r.to_json_lines()),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["experiment", "id", "status", "params", "diagnostics", "witness"])?;
            for i in &r.instances {
                w.write_record([
                    r.experiment.clone(),
                    i.id.to_string(),
                    serde_json::to_value(i.status)?.as_str().unwrap_or_default().to_string(),
                    i.params.to_string(),
                    i.diagnostics.to_string(),
                    i.witness.as_ref().map(Value::to_string).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn radius(
    g: &Global,
    input: Option<PathBuf>,
    hnk_args: Option<Vec<usize>>,
    compare: Option<Vec<PathBuf>>,
    exact: bool,
) -> Result<ExitCode> {
    if !(g.tol.is_finite() && g.tol > 0.0) {
        bail!("--tol must be positive");
    }
    if let Some(paths) = compare {
        let a = read_graph(Some(&paths[0]))?;
        let b = read_graph(Some(&paths[1]))?;
        let o = if exact {
            compare_radius_exact(&a, &b)
        } else {
            compare_radius(&a, &b)
        };
        match g.format.unwrap_or(Format::Json) {
            Format::Json => print_json(&json!({ "ordering": ordering_name(o) })),
            Format::Csv => println!("{}", ordering_name(o)),
        }
        return Ok(ExitCode::SUCCESS);
    }
    let graph = match hnk_args {
        Some(v) => {
            let (n, k) = (v[0], v[1]);
            if k == 0 || k >= n {
                bail!("--hnk needs 1 <= k < n");
            }
            hnk(n, k, n, &(1..k).collect::<Vec<_>>())?
        }
        None => read_graph(input.as_ref())?,
    };
    let (value, lo, hi) = if exact {
        let p = char_poly(&graph.adjacency_matrix())?;
        let root = isolate_largest_root(p.poly(), &rational_from_f64(g.tol))?;
        let v = json!({
            "lo": rational_string(&root.lo),
            "hi": rational_string(&root.hi),
            "method": "sturm-isolated",
            "poly": p.poly(),
        });
        (v, root.lo_f64(), root.hi_f64())
    } else {
        let cert = spectral_radius(&graph, g.tol);
        let (lo, hi) = (cert.enclosure.lo_f64(), cert.enclosure.hi_f64());
        (serde_json::to_value(&cert)?, lo, hi)
    };
    match g.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&value),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["lo", "hi", "lo_f64", "hi_f64", "method"])?;
            w.write_record([
                value["lo"].as_str().unwrap_or_default().to_string(),
                value["hi"].as_str().unwrap_or_default().to_string(),
                lo.to_string(),
                hi.to_string(),
                value["method"].as_str().unwrap_or_default().to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn hnk_table_cmd(g: &Global, exec: Exec, n_max: usize, k_max: usize, precision: &str) -> Result<ExitCode> {
    let precision = parse_rational(precision).map_err(|e| anyhow!("--precision: {e}"))?;
    let rows = hnk_table(n_max, k_max, &precision, exec)?;
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv_writer();
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            for r in &rows {
                print_json(&serde_json::to_value(r)?);
            }
        }
    }
    Ok(if rows.iter().all(|r| r.sandwich) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn schedule_cmd(g: &Global, n: usize, k: usize) -> Result<ExitCode> {
    let s = if n % 2 == 0 {
        even_schedule(n, k)?
    } else {
        odd_schedule(n, k)?
    };
    match g.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&serde_json::to_value(&s)?),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["i", "j", "a", "b"])?;
            for e in &s.entries {
                w.write_record([e.i, e.j, e.edge.lo(), e.edge.hi()].map(|x| x.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tag_name(t: RepairTag) -> &'static str {
    match t {
        RepairTag::Case1 => "case 1",
        RepairTag::Subcase21 => "subcase 2.1",
        RepairTag::Subcase22 => "subcase 2.2",
        RepairTag::Fallback => "fallback",
    }
}

fn repair_demo(g: &Global, scenario: Scenario, n: Option<usize>) -> Result<ExitCode> {
    let n = match (scenario, n) {
        (Scenario::CollidingMatchings, None) => 8,
        (Scenario::CollidingCycle, None) => 7,
        (Scenario::CollidingMatchings, Some(n)) if n % 2 == 0 && n >= 6 => n,
        (Scenario::CollidingCycle, Some(n)) if n % 2 == 1 && n >= 5 => n,
        (_, Some(n)) => bail!("n = {n} does not fit the scenario"),
    };
    let (hc, layers) = colliding_instance(&mut instance_rng(g.seed, 0), n);
    let out = disjointify_repair(&layers, &hc)?;
    let verified = out
        .factor
        .as_ref()
        .is_some_and(|f| verify_rainbow(f, hc.collection()).is_ok());
    match g.format.unwrap_or(Format::Json) {
        Format::Json => {
            for (i, s) in out.steps.iter().enumerate() {
                print_json(&json!({ "step": i + 1, "tag": s.tag, "collision": s.collision, "changes": s.changes }));
            }
            print_json(&json!({
                "n": n,
                "layers": layers,
                "cap_hit": out.cap_hit,
                "verify_rainbow": verified,
                "factor": out.factor,
            }));
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["step", "tag", "collision", "color", "from", "to"])?;
            for (i, s) in out.steps.iter().enumerate() {
                for c in &s.changes {
                    w.write_record([
                        (i + 1).to_string(),
                        tag_name(s.tag).to_string(),
                        s.collision.to_string(),
                        c.color.to_string(),
                        c.from.to_string(),
                        c.to.to_string(),
                    ])?;
                }
                if s.changes.is_empty() {
                    w.write_record(
                        [
                            (i + 1).to_string(),
                            tag_name(s.tag).to_string(),
                            s.collision.to_string(),
                        ]
                        .into_iter()
                        .chain(std::iter::repeat_n(String::new(), 3)),
                    )?;
                }
            }
            w.flush()?;
            println!("verify_rainbow,{verified}");
        }
    }
    Ok(if verified || out.used_fallback() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn ko_cmd(input: Option<PathBuf>, u: Option<usize>, v: Option<usize>, full: bool) -> Result<ExitCode> {
    let graph = read_graph(input.as_ref())?;
    let value = match (u, v, full) {
        (Some(u), Some(v), false) => serde_json::to_value(ko_pair(&graph, u, v)?)?,
        (None, None, true) => json!({ "before": graph.edges(), "after": ko_full(&graph).edges() }),
        _ => bail!("give either --u and --v, or --full"),
    };
    print_json(&value);
    Ok(ExitCode::SUCCESS)
}

fn find_rainbow(g: &Global, input: Option<PathBuf>, hub: bool) -> Result<ExitCode> {
    let gc = parse_collection(&read_input(input.as_ref())?).map_err(|e| anyhow!("{e}"))?;
    let limits = SearchLimits::capped(g.node_cap);
    if hub {
        print_json(&hub_pipeline(gc, limits)?);
        return Ok(ExitCode::SUCCESS);
    }
    let out = find_rainbow_k_factor(&gc, limits)?;
    let value = match &out {
        SearchOutcome::Found(f) => json!({
            "outcome": "found",
            "verify_rainbow": verify_rainbow(f, &gc).is_ok(),
            "factor": f,
        }),
        SearchOutcome::NotFound => json!({ "outcome": "not-found" }),
        SearchOutcome::Unknown => json!({ "outcome": "unknown", "node_cap": g.node_cap }),
    };
    print_json(&value);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let exec = match g.jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(1) => Exec::Sequential,
        Some(j) => {
            configure_threads(j);
            Exec::Parallel
        }
        None => Exec::default(),
    };
    let report_format = g.format.unwrap_or(Format::Json);
    match cli.command {
        Command::Radius {
            input,
            hnk,
            compare,
            exact,
        } => radius(g, input, hnk, compare, exact),
        Command::HnkTable {
            n_max,
            k_max,
            precision,
        } => hnk_table_cmd(g, exec, n_max, k_max, &precision),
        Command::CheckLemma36 {
            k_range,
            n_range,
            p_range,
        } => {
            let scan = LemmaScan {
                k: k_range,
                n: n_range,
                p: p_range,
            };
            emit_report(&check_lemma36(&scan, exec)?, report_format)
        }
        Command::CheckTheorem { n, k, case, samples } => {
            let run = TheoremRun {
                n,
                k,
                case: match case {
                    Case::A => TheoremCase::A,
                    Case::B => TheoremCase::B,
                    Case::C => TheoremCase::C,
                },
                samples,
                seed: g.seed,
                limits: SearchLimits::capped(g.node_cap),
            };
            emit_report(&check_theorem(&run, exec)?, report_format)
        }
        Command::Schedule { n, k } => schedule_cmd(g, n, k),
        Command::RepairDemo { scenario, n } => repair_demo(g, scenario, n),
        Command::Ko { input, u, v, full } => ko_cmd(input, u, v, full),
        Command::FindRainbow { input, hub } => find_rainbow(g, input, hub),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => {
            let _ = io::stdout().flush();
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
