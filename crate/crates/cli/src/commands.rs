use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use zol_core::{
    classify_rooted, closure_t, construct_strictly_balanced, format_rational,
    is_strictly_balanced, max_density, play_match, run_experiment, run_tournament,
    DensityTarget, EdgeSampler, Error as CoreError, Exponent, GreedyDegreeSpoiler, Hypergraph,
    HumanSpoiler, PolicyKind, RandomSpoiler, Rational, RootedHypergraph, SpoilerPolicy, Status,
    TournamentConfig,
};

use crate::config;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::internal(e.to_string())
    }
}

pub enum Outcome {
    Pass,
    VerdictFail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpoilerArg {
    Random,
    Greedy,
    Human,
}

#[derive(Parser, Debug)]
#[command(name = "zol", version, about = "Strictly balanced hypergraphs, closures and the vertex game")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Master seed for anything randomized.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for the experiment and tournament harnesses.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Result rendering for the verdict-style commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a strictly balanced hypergraph of the given density.
    Construct {
        /// Edge size of the output.
        #[arg(long)]
        arity: usize,
        /// Target density as M/N.
        #[arg(long)]
        rho: String,
        /// Vertex cap for the graph search behind densities >= 1.
        #[arg(long, default_value_t = 12)]
        max_search_vertices: usize,
    },
    /// Decide strict balance of a hypergraph file, with certificate.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Maximum induced sub-hypergraph density and an attaining set.
    Maxdensity {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Classify a rooted hypergraph relative to an exponent.
    Classify {
        /// Rooted hypergraph file (hypergraph format plus `roots:` line).
        #[arg(long = "in")]
        input: PathBuf,
        /// Exponent as NUM/DEN.
        #[arg(long)]
        alpha: String,
        /// Genericity bound (defaults to 64, capped by the exponent guard).
        #[arg(long)]
        generic_bound: Option<u64>,
    },
    /// t-closure of a vertex tuple, with the rigid chain.
    Closure {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long)]
        x: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        generic_bound: Option<u64>,
    },
    /// Sample the binomial random hypergraph.
    Sample {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        n: usize,
        /// Edge probability; alternatively derive it from --alpha.
        #[arg(long)]
        p: Option<f64>,
        /// Exponent NUM/DEN (or decimal) giving p = n^-alpha.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Run a Monte Carlo experiment from a config file.
    Experiment {
        /// poisson | threshold | extensions | closure_bound
        kind: String,
        /// Config file, flat key=value lines or JSON.
        #[arg(long)]
        config: PathBuf,
    },
    /// Play one game: Spoiler policy against the look-ahead Duplicator.
    Play {
        /// Vertices per sampled hypergraph.
        #[arg(long)]
        n: usize,
        /// Edges per sampled hypergraph.
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        rounds: usize,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, value_enum, default_value_t = SpoilerArg::Random)]
        spoiler: SpoilerArg,
        #[arg(long)]
        generic_bound: Option<u64>,
    },
    /// Aggregate win rates over many games.
    Tournament {
        #[arg(long)]
        games: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        rounds: usize,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, value_enum, default_value_t = SpoilerArg::Random)]
        spoiler: SpoilerArg,
        #[arg(long)]
        generic_bound: Option<u64>,
    },
}

fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let parts: Vec<&str> = text.split('/').collect();
    if parts.len() != 2 {
        return Err(CliError::usage(format!(
            "rationals are written M/N, got {text:?}"
        )));
    }
    let num: i64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid numerator in {text:?}")))?;
    let den: i64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid denominator in {text:?}")))?;
    if den == 0 {
        return Err(CliError::usage("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn parse_exponent(text: &str, bound: Option<u64>) -> Result<Exponent, CliError> {
    let parts: Vec<&str> = text.split('/').collect();
    if parts.len() != 2 {
        return Err(CliError::usage(format!(
            "exponents are written NUM/DEN, got {text:?}"
        )));
    }
    let num: u64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid numerator in {text:?}")))?;
    let den: u64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid denominator in {text:?}")))?;
    let exp = match bound {
        Some(b) => Exponent::new(num, den, b),
        None => Exponent::with_default_bound(num, den),
    }?;
    Ok(exp)
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, content)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn resolved(cli: &Cli, verb: &str, extra: serde_json::Value) -> serde_json::Value {
    json!({
        "verb": verb,
        "seed": cli.seed,
        "jobs": cli.jobs,
        "out": cli.out.as_ref().map(|p| p.display().to_string()),
        "format": match cli.format { Format::Json => "json", Format::Text => "text" },
        "options": extra,
    })
}

fn announce(options: &serde_json::Value) {
    eprintln!("resolved-options: {options}");
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Construct {
            arity,
            rho,
            max_search_vertices,
        } => {
            let opts = resolved(
                &cli,
                "construct",
                json!({"arity": arity, "rho": rho, "max_search_vertices": max_search_vertices}),
            );
            announce(&opts);
            let target = DensityTarget::new(*arity, parse_rational(rho)?)
                .map_err(|e| CliError::usage(e.to_string()))?;
            match construct_strictly_balanced(&target, *max_search_vertices) {
                Ok(g) => {
                    emit(&cli.out, &g.to_text())?;
                    Ok(Outcome::Pass)
                }
                Err(e @ CoreError::InfeasibleDensity(_))
                | Err(e @ CoreError::SearchCapExceeded { .. }) => {
                    eprintln!("error: {e}");
                    Ok(Outcome::VerdictFail)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { input } => {
            let opts = resolved(&cli, "verify", json!({"in": input.display().to_string()}));
            announce(&opts);
            let g = Hypergraph::parse_text(&read_file(input)?)?;
            let verdict = is_strictly_balanced(&g)?;
            let density = format_rational(g.density()?);
            let witness = verdict.witness.clone().unwrap_or_default();
            let content = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "strictly_balanced": verdict.strictly_balanced,
                    "density": density,
                    "witness": witness,
                }))
                .unwrap(),
                Format::Text => format!(
                    "strictly balanced: {}\ndensity: {density}\nwitness: {witness:?}",
                    verdict.strictly_balanced
                ),
            };
            emit(&cli.out, &content)?;
            Ok(if verdict.strictly_balanced {
                Outcome::Pass
            } else {
                Outcome::VerdictFail
            })
        }
        Command::Maxdensity { input } => {
            let opts = resolved(&cli, "maxdensity", json!({"in": input.display().to_string()}));
            announce(&opts);
            let g = Hypergraph::parse_text(&read_file(input)?)?;
            let (density, witness) = max_density(&g)?;
            let content = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "max_density": format_rational(density),
                    "witness": witness,
                }))
                .unwrap(),
                Format::Text => format!(
                    "max density: {}\nwitness: {witness:?}",
                    format_rational(density)
                ),
            };
            emit(&cli.out, &content)?;
            Ok(Outcome::Pass)
        }
        Command::Classify {
            input,
            alpha,
            generic_bound,
        } => {
            let opts = resolved(
                &cli,
                "classify",
                json!({"in": input.display().to_string(), "alpha": alpha, "generic_bound": generic_bound}),
            );
            announce(&opts);
            let rh = RootedHypergraph::parse_text(&read_file(input)?)?;
            let exp = parse_exponent(alpha, *generic_bound)?;
            let tax = classify_rooted(&rh, &exp)?;
            let content = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "type": [tax.ext_type.0, tax.ext_type.1],
                    "polarity": tax.polarity,
                    "rigid": tax.rigid,
                    "safe": tax.safe,
                    "minimally_safe": tax.minimally_safe,
                    "generic_bound": exp.bound(),
                }))
                .unwrap(),
                Format::Text => format!(
                    "type: ({}, {})\npolarity: {:?}\nrigid: {}\nsafe: {}\nminimally safe: {}",
                    tax.ext_type.0, tax.ext_type.1, tax.polarity, tax.rigid, tax.safe,
                    tax.minimally_safe
                ),
            };
            emit(&cli.out, &content)?;
            Ok(Outcome::Pass)
        }
        Command::Closure {
            input,
            x,
            t,
            alpha,
            generic_bound,
        } => {
            let opts = resolved(
                &cli,
                "closure",
                json!({"in": input.display().to_string(), "x": x, "t": t, "alpha": alpha, "generic_bound": generic_bound}),
            );
            announce(&opts);
            let g = Hypergraph::parse_text(&read_file(input)?)?;
            let tuple: Vec<usize> = x
                .split(',')
                .map(|f| {
                    f.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::usage(format!("invalid vertex id {f:?}")))
                })
                .collect::<Result<_, _>>()?;
            let exp = parse_exponent(alpha, *generic_bound)?;
            let result = closure_t(&g, &tuple, *t, &exp)?;
            let chain: Vec<Vec<usize>> = result
                .chain
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect();
            let closure: Vec<usize> = result.closure.iter().copied().collect();
            let content = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "closure": closure,
                    "chain": chain,
                }))
                .unwrap(),
                Format::Text => format!("closure: {closure:?}\nchain: {chain:?}"),
            };
            emit(&cli.out, &content)?;
            Ok(Outcome::Pass)
        }
        Command::Sample { arity, n, p, alpha } => {
            let opts = resolved(
                &cli,
                "sample",
                json!({"arity": arity, "n": n, "p": p, "alpha": alpha}),
            );
            announce(&opts);
            let p = match (p, alpha) {
                (Some(p), None) => *p,
                (None, Some(a)) => {
                    let exponent = zol_core::randmodel::parse_grid_exponent(a)?;
                    (-exponent * (*n as f64).ln()).exp()
                }
                _ => {
                    return Err(CliError::usage(
                        "give exactly one of --p and --alpha",
                    ))
                }
            };
            let g = zol_core::sample(*arity, *n, p, cli.seed)?;
            emit(&cli.out, &g.to_text())?;
            Ok(Outcome::Pass)
        }
        Command::Experiment { kind, config } => {
            let mut cfg = config::load(kind, config)?;
            if cli.seed != 0 {
                cfg.set_seed(cli.seed);
            }
            let opts = resolved(
                &cli,
                "experiment",
                json!({"kind": cfg.kind(), "config": config.display().to_string(),
                       "effective": serde_json::to_value(&cfg).unwrap()}),
            );
            announce(&opts);
            let report = run_experiment(&cfg, cli.jobs)?;
            emit(&cli.out, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(if report.verdict {
                Outcome::Pass
            } else {
                Outcome::VerdictFail
            })
        }
        Command::Play {
            n,
            m,
            alpha,
            rounds,
            arity,
            spoiler,
            generic_bound,
        } => {
            let opts = resolved(
                &cli,
                "play",
                json!({"n": n, "m": m, "alpha": alpha, "rounds": rounds, "arity": arity,
                       "spoiler": format!("{spoiler:?}").to_lowercase(), "generic_bound": generic_bound}),
            );
            announce(&opts);
            let exp = parse_exponent(alpha, *generic_bound)?;
            let sampler = EdgeSampler::new(*arity, *n)?;
            let mut rng1 = zol_core::replicate_rng(cli.seed, 10, 0);
            let mut rng2 = zol_core::replicate_rng(cli.seed, 11, 0);
            let g1 = sampler.sample_edge_count(*m, &mut rng1)?;
            let g2 = sampler.sample_edge_count(*m, &mut rng2)?;
            let mut random_policy;
            let mut greedy_policy;
            let mut human_policy;
            let policy: &mut dyn SpoilerPolicy = match spoiler {
                SpoilerArg::Random => {
                    random_policy = RandomSpoiler {
                        rng: zol_core::replicate_rng(cli.seed, 12, 0),
                    };
                    &mut random_policy
                }
                SpoilerArg::Greedy => {
                    greedy_policy = GreedyDegreeSpoiler;
                    &mut greedy_policy
                }
                SpoilerArg::Human => {
                    human_policy = HumanSpoiler {
                        input: std::io::BufReader::new(std::io::stdin()),
                        output: std::io::stderr(),
                    };
                    &mut human_policy
                }
            };
            match play_match(&g1, &g2, *rounds, policy, &exp) {
                Ok(outcome) => {
                    let mut lines = String::new();
                    for record in &outcome.transcript {
                        lines.push_str(&serde_json::to_string(record).unwrap());
                        lines.push('\n');
                    }
                    lines.push_str(
                        &serde_json::to_string(&json!({
                            "status": outcome.state.status,
                            "resigned": outcome.resigned,
                            "schedule": outcome.schedule,
                            "history": outcome.state.history,
                        }))
                        .unwrap(),
                    );
                    emit(&cli.out, &lines)?;
                    Ok(Outcome::Pass)
                }
                Err(CoreError::InvalidParameter(msg)) if msg == "end of input" => {
                    // Interactive Spoiler walked away; that resigns the match.
                    emit(
                        &cli.out,
                        &serde_json::to_string(&json!({
                            "status": Status::DuplicatorWon,
                            "resigned": true,
                            "note": "spoiler resigned (end of input)",
                        }))
                        .unwrap(),
                    )?;
                    Ok(Outcome::Pass)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Tournament {
            games,
            n,
            m,
            alpha,
            rounds,
            arity,
            spoiler,
            generic_bound,
        } => {
            let opts = resolved(
                &cli,
                "tournament",
                json!({"games": games, "n": n, "m": m, "alpha": alpha, "rounds": rounds,
                       "arity": arity, "spoiler": format!("{spoiler:?}").to_lowercase(),
                       "generic_bound": generic_bound}),
            );
            announce(&opts);
            let policy = match spoiler {
                SpoilerArg::Random => PolicyKind::Random,
                SpoilerArg::Greedy => PolicyKind::GreedyDegree,
                SpoilerArg::Human => {
                    return Err(CliError::usage(
                        "tournaments need a scripted spoiler (random or greedy)",
                    ))
                }
            };
            let exp = parse_exponent(alpha, *generic_bound)?;
            let cfg = TournamentConfig {
                games: *games,
                arity: *arity,
                n: *n,
                m: *m,
                rounds: *rounds,
                alpha: exp,
                policy,
                seed: cli.seed,
            };
            let report = match cli.jobs {
                None => run_tournament(&cfg)?,
                Some(j) => {
                    let pool = rayon_pool(j)?;
                    pool.install(|| run_tournament(&cfg))?
                }
            };
            emit(&cli.out, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(Outcome::Pass)
        }
    }
}

fn rayon_pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::internal(format!("thread pool: {e}")))
}
