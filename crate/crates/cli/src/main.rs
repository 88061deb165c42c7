use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use turan_cli::suite;
use turan_cli::{budget_override, parse_alpha_range};
use turan_core::constructions::{
    blowup_with_cap, count_extremal_profiles, crossed_blowup, extremal_blowup_search_with,
    feasible_limit, feasible_point, gamma, gamma_raw, k_crossed_blowup, BlowupSpec, SearchMode,
    SearchOptions, DEFAULT_BLOWUP_EDGE_CAP,
};
use turan_core::homomorphism::search_homomorphism;
use turan_core::hypergraph::{parse_text, to_text};
use turan_core::lagrangian::{maximize, MaximizeOptions};
use turan_core::rational::{format_significant, rat, to_f64};
use turan_core::{Error, GraphPair, Hypergraph, MultilinearPoly};

#[derive(Parser)]
#[command(
    name = "turan",
    version,
    about = "Lagrangians, blowups and crossed blowups of 3-graphs"
)]
struct Cli {
    /// Seed for every randomised component.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Search {
    Exhaustive,
    Local,
}

#[derive(Subcommand)]
enum Command {
    /// Maximise the edge polynomial of a hypergraph over the simplex.
    Lagrangian {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        starts: Option<usize>,
        /// Grid oracle resolution; 0 skips the oracle.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Blow each vertex up into a part of the given size.
    Blowup {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
    },
    /// Crossed blowup on a vertex pair.
    CrossBlowup {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        pair: Vec<usize>,
    },
    /// k-crossed blowup on a vertex pair.
    KCrossBlowup {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        pair: Vec<usize>,
        #[arg(long)]
        k: usize,
    },
    /// The template on t + 4 vertices.
    Gamma {
        #[arg(long)]
        t: usize,
        /// Keep the vertex order produced by the crossed blowup.
        #[arg(long)]
        raw: bool,
    },
    /// Search for a homomorphism from SOURCE into TARGET.
    Colorable {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Densities of balanced template blowups and their limits.
    FeasibleRegion {
        #[arg(long)]
        t: usize,
        /// `start:end:step` or a single value; decimals are read exactly.
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        n: u64,
    },
    /// Maximum template blowups on n vertices and the balanced extremal profiles.
    ExtremalCount {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "exhaustive")]
        search: Search,
    },
    /// Run acceptance checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

enum Failure {
    Domain(Error),
    Io(String),
    /// Checks ran but some failed; details are already in the output.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read_graph(path: &Path) -> Result<Hypergraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_text(&text)?)
}

fn graph_pair(v: &[usize]) -> Result<GraphPair, Failure> {
    match v {
        [a, b] => Ok(GraphPair::new(*a, *b)?),
        _ => Err(
            Error::InvalidArgument(format!("--pair takes two vertices, got {}", v.len())).into(),
        ),
    }
}

fn render_graph(h: &Hypergraph, format: Format) -> String {
    match format {
        Format::Text => to_text(h),
        Format::Json => json_line(&json!(h)),
        Format::Csv => {
            let mut out = String::new();
            for e in h.edges() {
                let row: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let budget = budget_override()?;
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Lagrangian {
            graph,
            starts,
            grid,
            tol,
        } => {
            let g = read_graph(graph)?;
            let mut opts = MaximizeOptions {
                starts: *starts,
                tol: *tol,
                grid_resolution: *grid,
                seed: cli.seed,
                ..MaximizeOptions::default()
            };
            if let Some(b) = budget {
                opts.grid_budget = b;
            }
            let res = maximize(&MultilinearPoly::from_hypergraph(&g), &opts)?;
            let exact_x = res
                .exact_maximizer
                .as_ref()
                .map(|x| x.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>());
            Ok(match fmt(Format::Json) {
                Format::Json => {
                    let mut v = json!(res);
                    v["exact_maximizer"] = json!(exact_x);
                    v["starts"] = json!(res.starts_used);
                    json_line(&v)
                }
                Format::Text => {
                    let xs: Vec<String> = res
                        .maximizer
                        .coords()
                        .iter()
                        .map(|c| format!("{c:.12}"))
                        .collect();
                    format!(
                        "lagrangian {:.15}\nexact {}\nmaximizer {}\nkkt_residual {:e}\n",
                        res.value,
                        res.exact
                            .map(|q| q.to_string())
                            .unwrap_or_else(|| "-".into()),
                        xs.join(" "),
                        res.kkt_residual
                    )
                }
                Format::Csv => {
                    let mut out = String::from("value,exact,kkt_residual,grid_lower_bound");
                    for i in 0..res.maximizer.dim() {
                        out.push_str(&format!(",x{i}"));
                    }
                    out.push('\n');
                    out.push_str(&format!(
                        "{},{},{},{}",
                        res.value,
                        res.exact.map(|q| q.to_string()).unwrap_or_default(),
                        res.kkt_residual,
                        res.grid_lower_bound
                    ));
                    for c in res.maximizer.coords() {
                        out.push_str(&format!(",{c}"));
                    }
                    out.push('\n');
                    out
                }
            })
        }
        Command::Blowup { graph, sizes } => {
            let g = read_graph(graph)?;
            let spec = BlowupSpec::new(g, sizes.clone())?;
            let h = blowup_with_cap(&spec, budget.unwrap_or(DEFAULT_BLOWUP_EDGE_CAP))?;
            Ok(render_graph(&h, fmt(Format::Text)))
        }
        Command::CrossBlowup { graph, pair } => {
            let h = crossed_blowup(&read_graph(graph)?, graph_pair(pair)?)?;
            Ok(render_graph(&h, fmt(Format::Text)))
        }
        Command::KCrossBlowup { graph, pair, k } => {
            let h = k_crossed_blowup(&read_graph(graph)?, graph_pair(pair)?, *k)?;
            Ok(render_graph(&h, fmt(Format::Text)))
        }
        Command::Gamma { t, raw } => {
            let h = if *raw { gamma_raw(*t)? } else { gamma(*t)? };
            Ok(render_graph(&h, fmt(Format::Text)))
        }
        Command::Colorable { source, target } => {
            let f = read_graph(source)?;
            let g = read_graph(target)?;
            let res = search_homomorphism(&f, &g);
            Ok(match fmt(Format::Json) {
                Format::Json => json_line(&json!({
                    "colorable": res.found,
                    "map": res.map,
                    "nodes_expanded": res.nodes_expanded,
                })),
                Format::Text | Format::Csv => match &res.map {
                    Some(m) => {
                        let images: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                        format!("colorable\nmap {}\n", images.join(" "))
                    }
                    None => "not colorable\n".to_string(),
                },
            })
        }
        Command::FeasibleRegion { t, alphas, n } => {
            let alphas = parse_alpha_range(alphas)?;
            let mut rows = Vec::new();
            for a in &alphas {
                if *a > rat(1, 1) || *a < rat(0, 1) {
                    return Err(Error::InvalidArgument(format!("alpha {a} outside [0, 1]")).into());
                }
                rows.push((
                    a.clone(),
                    feasible_point(*t, a, *n)?,
                    feasible_limit(*t, a)?,
                ));
            }
            Ok(match fmt(Format::Csv) {
                Format::Csv | Format::Text => {
                    let mut out =
                        String::from("alpha,shadow_density,edge_density,shadow_limit,edge_limit\n");
                    for (a, p, l) in &rows {
                        let cells = [
                            a,
                            &p.shadow_density,
                            &p.edge_density,
                            &l.shadow_density,
                            &l.edge_density,
                        ];
                        let cells: Vec<String> =
                            cells.iter().map(|x| format_significant(x, 12)).collect();
                        out.push_str(&cells.join(","));
                        out.push('\n');
                    }
                    out
                }
                Format::Json => {
                    let v: Vec<Value> = rows
                        .iter()
                        .map(|(a, p, l)| {
                            json!({
                                "alpha": a.to_string(),
                                "shadow_density": to_f64(&p.shadow_density),
                                "edge_density": to_f64(&p.edge_density),
                                "shadow_limit": to_f64(&l.shadow_density),
                                "edge_limit": to_f64(&l.edge_density),
                                "exact": {
                                    "shadow_density": p.shadow_density.to_string(),
                                    "edge_density": p.edge_density.to_string(),
                                    "shadow_limit": l.shadow_density.to_string(),
                                    "edge_limit": l.edge_density.to_string(),
                                },
                            })
                        })
                        .collect();
                    json_line(&Value::Array(v))
                }
            })
        }
        Command::ExtremalCount { t, n, search } => {
            let g = gamma(*t)?;
            let mut opts = SearchOptions {
                seed: cli.seed,
                ..SearchOptions::default()
            };
            if let Some(b) = budget {
                opts.budget = b;
            }
            let mode = match search {
                Search::Exhaustive => SearchMode::Exhaustive,
                Search::Local => SearchMode::Local,
            };
            let best = extremal_blowup_search_with(&g, *n, mode, &opts)?;
            let profiles = count_extremal_profiles(*t, *n)?;
            Ok(match fmt(Format::Json) {
                Format::Json => json_line(&json!({
                    "t": t,
                    "n": n,
                    "max_edges": best.count.to_string(),
                    "best_sizes": best.sizes,
                    "profile_count": profiles.count,
                    "profiles": profiles
                        .alphas
                        .iter()
                        .zip(&profiles.sizes)
                        .map(|(a, s)| json!({"alpha": a.to_string(), "sizes": s}))
                        .collect::<Vec<_>>(),
                })),
                Format::Text => format!(
                    "max_edges {}\nbest_sizes {:?}\nprofiles {}\n",
                    best.count, best.sizes, profiles.count
                ),
                Format::Csv => {
                    let mut out = String::from("alpha,sizes\n");
                    for (a, s) in profiles.alphas.iter().zip(&profiles.sizes) {
                        let s: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                        out.push_str(&format!("{a},{}\n", s.join(" ")));
                    }
                    out
                }
            })
        }
        Command::Verify { suite: name } => {
            let outcomes = suite::run_suite(name, cli.seed).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown suite `{name}`; expected one of {}",
                    suite::SUITES.join(", ")
                ))
            })?;
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let out = match fmt(Format::Text) {
                Format::Json => json_line(&Value::Array(
                    outcomes
                        .iter()
                        .map(|o| {
                            json!({
                                "criterion": o.criterion,
                                "name": o.name,
                                "passed": o.passed,
                                "detail": o.detail,
                                "seconds": o.elapsed.as_secs_f64(),
                            })
                        })
                        .collect(),
                )),
                _ => outcomes.iter().map(|o| o.line() + "\n").collect(),
            };
            if failed > 0 {
                // still emit the report before failing
                emit(cli.out.as_deref(), &out)?;
                return Err(Failure::Verification(format!(
                    "{failed} of {} criteria failed",
                    outcomes.len()
                )));
            }
            Ok(out)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!(
                "{}",
                json!({"kind": "invalid-argument", "message": e.to_string()})
            );
            return ExitCode::from(1);
        }
    }
    let result = run(&cli).and_then(|text| emit(cli.out.as_deref(), &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({"kind": e.kind(), "message": e.to_string()}));
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{}", json!({"kind": "verification", "message": msg}));
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("{}", json!({"kind": "io", "message": msg}));
            ExitCode::from(2)
        }
    }
}
