//! Thin command-line shell over the library: every subcommand parses its
//! input, calls one library entry point, and prints the result. Identical
//! inputs give byte-identical outputs.

use clap::{Parser, Subcommand};
use dehn::adjacency::NecessaryOptions;
use dehn::chain::ChainPresentation;
use dehn::corpus;
use dehn::homology::{h1, h1_order};
use dehn::link::{FramedLink, SublinkSelector};
use dehn::pd::parse_pd;
use dehn::slope::Slope;
use dehn::verify::{check_names, run_all, VerifyContext};
use serde_json::json;
use std::process::ExitCode;

/// Prints a line to stdout, exiting quietly when the reader hangs up (for
/// example `dehn corpus | head -3`) instead of panicking on a broken pipe.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }};
}

/// As `outln!` without the trailing newline.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "dehn",
    version,
    about = "Exact arithmetic for rational Dehn surgery on links",
    long_about = "Exact arithmetic for rational Dehn surgery on links: first homology of \
surgered manifolds, necessary conditions for n-adjacency, chain-presentation calculus, \
dual slopes, and bounded slope searches. LINK arguments name a file or a built-in corpus \
entry (see `dehn corpus`)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// First homology of the surgered manifold described by a link spec
    H1 {
        /// JSON link spec or signed PD code: a file path or corpus name
        link: String,
        /// Also print every proper nonempty sublink
        #[arg(long)]
        sublinks: bool,
        /// Surgery slopes for PD input, comma-separated (e.g. "1,1,1")
        #[arg(long)]
        slopes: Option<String>,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Necessary conditions for the link to be n-adjacent to the three-sphere
    CheckAdjacency {
        /// JSON link spec or signed PD code: a file path or corpus name
        link: String,
        /// Run the integral check (slopes must be integers)
        #[arg(long)]
        integral: bool,
        /// Additionally require the full surgery to be a homology sphere
        #[arg(long)]
        assume_sphere: bool,
        /// Surgery slopes for PD input, comma-separated
        #[arg(long)]
        slopes: Option<String>,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Chain-presentation calculus on comma-separated coefficients
    Chain {
        /// Chain coefficients, e.g. "1/2,1,1/2"
        coeffs: String,
        /// Identify the surgered manifold as a lens space
        #[arg(long)]
        lens: bool,
        /// Reduce by slam-dunks and blow-downs, printing the move script
        #[arg(long)]
        reduce: bool,
        /// Slopes of the dual link undoing the surgery
        #[arg(long)]
        dual: bool,
    },
    /// Bounded exhaustive searches over surgery coefficients
    Enumerate {
        #[command(subcommand)]
        what: EnumerateCommand,
    },
    /// Run the frozen reference checks
    Verify {
        /// Print check names without running them
        #[arg(long)]
        list: bool,
        /// Negative control: flip the lens orientation convention
        #[arg(long)]
        corrupt_convention: bool,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// List built-in corpus entries, or print one
    Corpus {
        /// Print the named entry instead of listing
        #[arg(long)]
        show: Option<String>,
    },
}

#[derive(Subcommand)]
enum EnumerateCommand {
    /// Solutions of |q1*q2*l^2 - 1| = 1 with reciprocal slopes 1/q1, 1/q2
    Pairs {
        /// Largest |linking number| searched
        #[arg(long, default_value_t = 10)]
        bound_l: i64,
        /// Largest |q| searched
        #[arg(long, default_value_t = 10)]
        bound_q: i64,
        /// JSON-lines output instead of CSV
        #[arg(long)]
        json: bool,
    },
    /// Three-component configurations passing all pairwise checks yet not
    /// homology spheres
    Triples {
        /// Largest |k| searched in slopes 1/k
        #[arg(long, default_value_t = 2)]
        bound_q: i64,
        /// JSON-lines output instead of CSV
        #[arg(long)]
        json: bool,
    },
    /// Multi-slopes certified on a split union of Hopf links and unknots
    Hopf {
        /// Number of components
        #[arg(long)]
        n: usize,
        /// Hopf pairs as 0-based index pairs, e.g. "0-1,2-3"
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
        /// Largest |k| searched in singleton slopes 1/k
        #[arg(long, default_value_t = 2)]
        bound_k: i64,
        /// JSON-lines output instead of CSV
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::H1 {
            link,
            sublinks,
            slopes,
            json,
        } => cmd_h1(&link, sublinks, slopes.as_deref(), json),
        Command::CheckAdjacency {
            link,
            integral,
            assume_sphere,
            slopes,
            json,
        } => cmd_check_adjacency(&link, integral, assume_sphere, slopes.as_deref(), json),
        Command::Chain {
            coeffs,
            lens,
            reduce,
            dual,
        } => cmd_chain(&coeffs, lens, reduce, dual),
        Command::Enumerate { what } => cmd_enumerate(what),
        Command::Verify {
            list,
            corrupt_convention,
            json,
        } => cmd_verify(list, corrupt_convention, json),
        Command::Corpus { show } => cmd_corpus(show.as_deref()),
    }
}

fn parse_slope_list(text: &str) -> Result<Vec<Slope>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<Slope>()
                .map_err(|e| format!("slope `{}`: {e}", part.trim()))
        })
        .collect()
}

/// Resolves a LINK argument to a framed link. JSON specs carry their own
/// slopes; PD codes need `--slopes`.
fn load_framed(spec: &str, slopes: Option<&str>) -> Result<FramedLink, String> {
    let (name, text) = corpus::resolve(spec).map_err(|e| e.to_string())?;
    if text.trim_start().starts_with('{') {
        if slopes.is_some() {
            return Err(format!(
                "`{name}` is a JSON link spec and already carries slopes; drop --slopes"
            ));
        }
        FramedLink::from_json_str(&text).map_err(|e| e.to_string())
    } else {
        let slopes_text = slopes.ok_or_else(|| {
            format!("`{name}` is a PD code without slopes; pass --slopes, e.g. --slopes \"1,1,1\"")
        })?;
        let diagram = parse_pd(&text).map_err(|e| format!("{name}: {e}"))?;
        diagram
            .to_framed_link(parse_slope_list(slopes_text)?)
            .map_err(|e| e.to_string())
    }
}

fn cmd_h1(spec: &str, sublinks: bool, slopes: Option<&str>, json: bool) -> Result<ExitCode, String> {
    let link = load_framed(spec, slopes)?;
    let group = h1(&link).map_err(|e| e.to_string())?;
    let order = h1_order(&link).map_err(|e| e.to_string())?;
    let proper: Vec<(Vec<String>, _, _)> = if sublinks {
        SublinkSelector::proper_nonempty(link.len())
            .map(|sel| {
                let sub = link.sublink(&sel).map_err(|e| e.to_string())?;
                let labels = sub.labels().to_vec();
                let g = h1(&sub).map_err(|e| e.to_string())?;
                let o = h1_order(&sub).map_err(|e| e.to_string())?;
                Ok((labels, g, o))
            })
            .collect::<Result<_, String>>()?
    } else {
        Vec::new()
    };
    if json {
        let mut payload = json!({ "h1": group, "order": order });
        if sublinks {
            payload["sublinks"] = proper
                .iter()
                .map(|(labels, g, o)| json!({ "components": labels, "h1": g, "order": o }))
                .collect();
        }
        outln!("{payload}");
    } else {
        outln!("H1 = {group} (order {order})");
        for (labels, g, o) in &proper {
            outln!("sublink [{}]: H1 = {g} (order {o})", labels.join(", "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_adjacency(
    spec: &str,
    integral: bool,
    assume_sphere: bool,
    slopes: Option<&str>,
    json: bool,
) -> Result<ExitCode, String> {
    let link = load_framed(spec, slopes)?;
    let report = if integral {
        if assume_sphere {
            return Err(
                "--assume-sphere applies to the rational check only; drop it with --integral"
                    .to_string(),
            );
        }
        dehn::adjacency::integral_adjacency_check(&link).map_err(|e| e.to_string())?
    } else {
        dehn::adjacency::necessary_conditions_with(&link, &NecessaryOptions { assume_sphere })
    };
    if json {
        outln!("{}", report.to_json_string());
    } else {
        outln!("{report}");
    }
    Ok(ExitCode::from(report.verdict.exit_code()))
}

fn cmd_chain(coeffs: &str, lens: bool, reduce: bool, dual: bool) -> Result<ExitCode, String> {
    if usize::from(lens) + usize::from(reduce) + usize::from(dual) != 1 {
        return Err("choose exactly one of --lens, --reduce, --dual".to_string());
    }
    let chain: ChainPresentation = coeffs.parse().map_err(|e: dehn::chain::ChainError| e.to_string())?;
    if lens {
        let space = chain.to_lens().map_err(|e| e.to_string())?;
        if space.p() >= &num_bigint::BigInt::from(2) {
            outln!("{space} = -{}", space.orientation_reversed());
        } else {
            outln!("{space}");
        }
    } else if reduce {
        let (reduced, moves) = chain.reduce();
        let rendered = if reduced.is_empty() {
            "(empty)".to_string()
        } else {
            reduced.to_string()
        };
        if moves.is_empty() {
            outln!("{rendered} (irreducible)");
        } else {
            outln!("{rendered}");
            let script: Vec<String> = moves.iter().map(|m| m.to_string()).collect();
            outln!("via: {}", script.join("; "));
        }
    } else {
        let link = chain.to_framed_link().map_err(|e| e.to_string())?;
        let data = dehn::dual::dual_slopes_by_moves(&link).map_err(|e| e.to_string())?;
        let rendered: Vec<String> = data.slopes.iter().map(|s| s.to_string()).collect();
        outln!("{}", rendered.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_index_pair(item: &str) -> Result<(usize, usize), String> {
    let (a, b) = item
        .split_once('-')
        .ok_or_else(|| format!("pair `{item}` must look like `0-1`"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("pair `{item}`: `{s}` is not a component index"))
    };
    Ok((parse(a)?, parse(b)?))
}

fn cmd_enumerate(what: EnumerateCommand) -> Result<ExitCode, String> {
    match what {
        EnumerateCommand::Pairs {
            bound_l,
            bound_q,
            json,
        } => {
            let found = dehn::enumerate::enumerate_pair_solutions(bound_l, bound_q)
                .map_err(|e| e.to_string())?;
            for (family, solutions) in [
                ("zero-linking", &found.zero_linking),
                ("exceptional", &found.exceptional),
            ] {
                for s in solutions {
                    if json {
                        outln!(
                            "{}",
                            json!({ "linking": s.linking, "q1": s.q1, "q2": s.q2, "family": family })
                        );
                    } else {
                        outln!("{},{family}", s.csv_line());
                    }
                }
            }
        }
        EnumerateCommand::Triples { bound_q, json } => {
            let found = dehn::enumerate::enumerate_triple_obstructions(bound_q)
                .map_err(|e| e.to_string())?;
            for obstruction in &found {
                if json {
                    outln!(
                        "{}",
                        serde_json::to_string(obstruction).map_err(|e| e.to_string())?
                    );
                } else {
                    outln!("{}", obstruction.csv_line());
                }
            }
        }
        EnumerateCommand::Hopf {
            n,
            pairs,
            bound_k,
            json,
        } => {
            let parsed: Vec<(usize, usize)> = pairs
                .iter()
                .map(|item| parse_index_pair(item))
                .collect::<Result<_, _>>()?;
            let stream = dehn::enumerate::enumerate_hopf_brunnian_slopes(n, &parsed, bound_k)
                .map_err(|e| e.to_string())?;
            for multi in stream {
                if json {
                    outln!("{}", json!({ "slopes": multi }));
                } else {
                    let rendered: Vec<String> = multi.iter().map(|s| s.to_string()).collect();
                    outln!("{}", rendered.join(","));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(list: bool, corrupt_convention: bool, json: bool) -> Result<ExitCode, String> {
    if list {
        for name in check_names() {
            outln!("{name}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let summary = run_all(&VerifyContext { corrupt_convention });
    if json {
        let results: Vec<_> = summary
            .results
            .iter()
            .map(|r| json!({ "name": r.name, "passed": r.passed(), "failure": r.failure }))
            .collect();
        outln!(
            "{}",
            json!({ "results": results, "summary": summary.summary_line() })
        );
    } else {
        outln!("{summary}");
    }
    Ok(if summary.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_corpus(show: Option<&str>) -> Result<ExitCode, String> {
    match show {
        Some(name) => {
            let text = corpus::load(name).map_err(|e| e.to_string())?;
            out!("{text}");
        }
        None => {
            for name in corpus::names() {
                outln!("{name}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
