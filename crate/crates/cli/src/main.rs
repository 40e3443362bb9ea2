use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use whitehead::automorphism::{enumerate_whitehead, restricted_with_inverses};
use whitehead::classic::{orbit_min, type2_set, wc_oracle};
use whitehead::experiments::{write_csv, ExpParams, Experiment};
use whitehead::gwa::{self, Termination};
use whitehead::sampling::{gen_sf, gen_snmin, gen_sp, write_records, SampleSpec};
use whitehead::{dwa_type2, elr, Budget, Error, GwaConfig, SameOrbit, Word, WordTuple};

/// Whitehead minimization in free groups.
#[derive(Parser, Debug)]
#[command(name = "whitehead", version)]
struct Cli {
    /// Rank of the free group. Inferred from the input words when omitted.
    #[arg(long, global = true)]
    rank: Option<usize>,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true)]
    timeout_secs: Option<u64>,

    /// Vertex budget for the breadth-first searches.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget_vertices: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a word or comma-separated tuple to minimal length.
    Reduce(ReduceArgs),
    /// Test whether a word or tuple is Whitehead-minimal.
    Minimal { words: String },
    /// Print the minimal orbit as an edge list, or connect two tuples.
    Orbit {
        words: String,
        /// Decide whether this tuple lies in the same orbit.
        #[arg(long)]
        with: Option<String>,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Whitehead complexity of a word.
    Wc {
        word: String,
        /// Measure distance over the restricted set instead of all
        /// Whitehead automorphisms.
        #[arg(long)]
        restricted: bool,
    },
    /// Generate a sample set.
    Gen(GenArgs),
    /// Run one of the experiments and write CSV.
    Exp(ExpArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Method {
    Dwa,
    Gwa,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Stop {
    T1,
    T2,
    T3,
    T4,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    words: String,
    #[arg(long, value_enum, default_value_t = Method::Dwa)]
    method: Method,
    /// GWA termination condition.
    #[arg(long, value_enum, default_value_t = Stop::T4)]
    termination: Stop,
    /// Target length for `t2`. A run only stops once the target is
    /// reached, so pair it with a time or generation limit unless the
    /// target is known to be attainable.
    #[arg(long, default_value_t = 1)]
    target: usize,
    /// Score GWA members by cyclically reduced length.
    #[arg(long)]
    cyclic: bool,
    #[arg(long)]
    max_generations: Option<u64>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SampleKind {
    Sf,
    Snmin,
    Sp,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    kind: SampleKind,
    /// Length strata (walk lengths for `sp`).
    #[arg(long, value_delimiter = ',', required = true)]
    lengths: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    per_length: usize,
}

#[derive(Args, Debug)]
struct ExpArgs {
    name: Experiment,
    #[arg(long, value_delimiter = ',')]
    ranks: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    lengths: Option<Vec<usize>>,
    #[arg(long)]
    per_length: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    k_values: Option<Vec<usize>>,
    #[arg(long)]
    max_generations: Option<u64>,
}

/// A command either finished or stopped at a budget or time limit after
/// writing what it had.
#[derive(PartialEq)]
enum Outcome {
    Done,
    Partial,
}

impl Cli {
    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        })
    }

    fn budget(&self) -> Budget {
        Budget::vertices(self.budget_vertices)
    }

    fn timeout(&self) -> Option<Duration> {
        self.timeout_secs.map(Duration::from_secs)
    }

    fn rank_for(&self, words: &str) -> Result<usize> {
        if let Some(r) = self.rank {
            return Ok(r);
        }
        let mut r = 0;
        for w in words.split(',') {
            r = r.max(Word::infer_rank(w)?);
        }
        Ok(r.max(2))
    }

    fn tuple(&self, words: &str) -> Result<WordTuple> {
        Ok(WordTuple::parse(words, self.rank_for(words)?)?)
    }
}

fn reduce(cli: &Cli, args: &ReduceArgs, out: &mut dyn Write) -> Result<Outcome> {
    let u = cli.tuple(&args.words)?;
    match args.method {
        Method::Dwa => {
            let trace = dwa_type2(&u)?;
            let steps: Vec<String> = trace.autos().map(ToString::to_string).collect();
            writeln!(out, "{}\t{}\t{}", trace.input, trace.output, steps.join(", "))?;
            Ok(Outcome::Done)
        }
        Method::Gwa => {
            let termination = match args.termination {
                Stop::T1 => Termination::T1,
                Stop::T2 => Termination::T2 { target: args.target },
                Stop::T3 => Termination::t3_for_rank(u.rank()),
                Stop::T4 => Termination::t4_for_rank(u.rank()),
            };
            let mut cfg = GwaConfig::new(termination, cli.seed);
            cfg.cyclic_fitness = args.cyclic;
            cfg.max_generations = args.max_generations;
            cfg.time_limit = cli.timeout();
            let start = std::time::Instant::now();
            let res = gwa::run(&u, &cfg)?;
            writeln!(out, "{}", res.record(start.elapsed().as_secs_f64()))?;
            Ok(if res.timed_out { Outcome::Partial } else { Outcome::Done })
        }
    }
}

fn minimal(cli: &Cli, words: &str, out: &mut dyn Write) -> Result<Outcome> {
    let u = cli.tuple(words)?;
    let autos = type2_set(u.rank())?;
    match elr(&u, &autos)? {
        None => writeln!(out, "minimal")?,
        Some((t, v)) => writeln!(out, "not minimal\t{t}\t{v}")?,
    }
    Ok(Outcome::Done)
}

fn orbit(cli: &Cli, words: &str, with: Option<&str>, max_depth: Option<usize>, out: &mut dyn Write) -> Result<Outcome> {
    let u = cli.tuple(words)?;
    let budget = Budget {
        max_depth,
        ..cli.budget()
    };
    if let Some(v) = with {
        let v = WordTuple::parse(v, u.rank())?;
        return Ok(match whitehead::same_orbit(&u, &v, &budget)? {
            SameOrbit::Connected(path) => {
                let path: Vec<String> = path.iter().map(ToString::to_string).collect();
                writeln!(out, "connected\t{}", path.join(", "))?;
                Outcome::Done
            }
            SameOrbit::Disconnected => {
                writeln!(out, "disconnected")?;
                Outcome::Done
            }
            SameOrbit::Undecided => {
                writeln!(out, "undecided")?;
                Outcome::Partial
            }
        });
    }
    let g = orbit_min(&u, &budget)?;
    write!(out, "{}", g.edge_list())?;
    eprintln!("{} vertices, {} edges", g.len(), g.edges().len());
    Ok(if g.is_complete() { Outcome::Done } else { Outcome::Partial })
}

fn wc(cli: &Cli, word: &str, restricted: bool, out: &mut dyn Write) -> Result<Outcome> {
    let rank = cli.rank_for(word)?;
    let w = Word::parse(word, rank)?;
    let gens = if restricted {
        restricted_with_inverses(rank)?
    } else {
        enumerate_whitehead(rank)?
    };
    writeln!(out, "{}", wc_oracle(&w, &gens, &cli.budget())?)?;
    Ok(Outcome::Done)
}

fn generate(cli: &Cli, args: &GenArgs, out: &mut dyn Write) -> Result<Outcome> {
    let rank = cli.rank.unwrap_or(2);
    let spec = SampleSpec::new(rank, args.lengths.clone(), args.per_length, cli.seed)?;
    match args.kind {
        SampleKind::Sf => {
            let records: Vec<Vec<String>> = gen_sf(&spec)?.iter().map(|w| vec![w.to_string()]).collect();
            write_records(out, &spec.header("sf"), &records)?;
        }
        SampleKind::Snmin => {
            let (samples, skipped) = gen_snmin(&spec)?;
            let records: Vec<Vec<String>> = samples.iter().map(|s| s.record()).collect();
            write_records(out, &format!("{} skipped={skipped}", spec.header("snmin")), &records)?;
        }
        SampleKind::Sp => {
            let records: Vec<Vec<String>> = gen_sp(&spec)?.iter().map(|s| s.record()).collect();
            write_records(out, &spec.header("sp"), &records)?;
        }
    }
    Ok(Outcome::Done)
}

fn experiment(cli: &Cli, args: &ExpArgs, out: &mut dyn Write) -> Result<Outcome> {
    let defaults = args.name.defaults();
    let params = ExpParams {
        ranks: args
            .ranks
            .clone()
            .or_else(|| cli.rank.map(|r| vec![r]))
            .unwrap_or(defaults.ranks),
        lengths: args.lengths.clone().unwrap_or(defaults.lengths),
        per_length: args.per_length.unwrap_or(defaults.per_length),
        k_values: args.k_values.clone().unwrap_or(defaults.k_values),
        seed: cli.seed,
        timeout: cli.timeout().or(defaults.timeout),
        max_generations: args.max_generations.unwrap_or(defaults.max_generations),
    };
    let records = args.name.run(&params)?;
    write_csv(&mut *out, &records)?;
    // `na` values only come from runs that hit the time limit
    Ok(if records.iter().any(|r| r.value.is_none()) {
        Outcome::Partial
    } else {
        Outcome::Done
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let mut out = cli.output()?;
    let outcome = match &cli.command {
        Command::Reduce(args) => reduce(cli, args, &mut out)?,
        Command::Minimal { words } => minimal(cli, words, &mut out)?,
        Command::Orbit { words, with, max_depth } => orbit(cli, words, with.as_deref(), *max_depth, &mut out)?,
        Command::Wc { word, restricted } => wc(cli, word, *restricted, &mut out)?,
        Command::Gen(args) => generate(cli, args, &mut out)?,
        Command::Exp(args) => experiment(cli, args, &mut out)?,
    };
    out.flush()?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => {
            eprintln!("whitehead: stopped at a budget or time limit; partial results written");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("whitehead: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
