use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixcirc::characterization::{count_bound, decompose, enumerate_integral};
use mixcirc::dot::export_dot;
use mixcirc::gaussian::{cyclotomic, cyclotomic_factor, HalfClass};
use mixcirc::ramanujan::{c_sum, s_closed, s_sum};
use mixcirc::report::{parse_symbol_set, DecompositionRecord, SpectrumReport};
use mixcirc::{is_integral, SuiteRegistry, SymbolSet};

/// Exit status for a semantic "no" (not integral, verification failed).
const EXIT_FALSE: u8 = 1;
/// Exit status for usage and precondition errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "mixcirc", version, about = "Integral spectra of mixed circulant graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SetArgs {
    /// Number of vertices.
    #[arg(long, allow_hyphen_values = true)]
    n: String,
    /// Comma-separated connection set; may be empty.
    #[arg(long, num_args = 0..=1, default_value = "", default_missing_value = "", allow_hyphen_values = true)]
    set: String,
}

impl SetArgs {
    fn parse(&self) -> Result<SymbolSet, String> {
        parse_symbol_set(&self.n, &self.set).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    C,
    S,
}

#[derive(Subcommand)]
enum Command {
    /// Numeric and exact spectrum of a mixed circulant graph.
    Spectrum {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Exit 0 if the graph is integral, 1 otherwise.
    Check {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Print the orbit decomposition of an integral symbol set.
    Decompose {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        json: bool,
    },
    /// List or count every integral symbol set on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Cyclotomic polynomial, or one of its two factors over Q(i).
    Cyclo {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        factor: Option<u8>,
    },
    /// Ramanujan sum c_n(t) or its sine analogue s_n(t).
    Rsum {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Use the closed form (sine sums only).
        #[arg(long)]
        closed: bool,
    },
    /// Graphviz DOT rendering of the graph.
    ExportDot {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Run the property suites up to a modulus bound.
    Verify {
        #[arg(long)]
        max_n: usize,
        /// Suite names, comma-separated; all suites when omitted.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Spectrum { set, json } => {
            let report = SpectrumReport::build(&set.parse()?).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
            } else {
                print!("{}", report.to_table());
            }
            Ok(0)
        }
        Command::Check { set } => {
            let verdict = is_integral(&set.parse()?);
            match verdict.witness {
                None => {
                    println!("integral");
                    Ok(0)
                }
                Some(j) => {
                    println!("not integral: witness j={j}");
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Decompose { set, json } => {
            let Some(dec) = decompose(&set.parse()?) else {
                println!("not integral");
                return Ok(EXIT_FALSE);
            };
            let record = DecompositionRecord::from(&dec);
            if json {
                println!("{}", serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?);
            } else {
                let d1: Vec<String> = record.d1.iter().map(ToString::to_string).collect();
                let d2: Vec<String> = record.d2.iter().map(|(d, tag)| format!("{d}:{tag}")).collect();
                println!("D1: {{{}}}", d1.join(","));
                println!("D2: {{{}}}", d2.join(","));
            }
            Ok(0)
        }
        Command::Enumerate { n, count_only } => {
            let sets = enumerate_integral(n).map_err(|e| e.to_string())?;
            if count_only {
                println!("{}", sets.count());
            } else {
                for c in sets {
                    println!("{c}");
                }
                eprintln!("bound k({n}) = {}", count_bound(n).map_err(|e| e.to_string())?);
            }
            Ok(0)
        }
        Command::Cyclo { n, factor } => {
            let poly = match factor {
                None => cyclotomic(n),
                Some(r) => {
                    let class = HalfClass::from_residue(r.into()).ok_or("--factor must be 1 or 3")?;
                    cyclotomic_factor(n, class)
                }
            }
            .map_err(|e| e.to_string())?;
            println!("{}", poly.coefficient_string());
            println!("{poly}");
            Ok(0)
        }
        Command::Rsum { kind, n, t, closed } => {
            let value = match (kind, closed) {
                (Kind::C, false) => c_sum(n, t),
                (Kind::C, true) => return Err("--closed is only available for --kind s".into()),
                (Kind::S, false) => s_sum(n, t),
                (Kind::S, true) => s_closed(n, t),
            }
            .map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(0)
        }
        Command::ExportDot { set } => {
            print!("{}", export_dot(&set.parse()?));
            Ok(0)
        }
        Command::Verify { max_n, suite } => {
            let registry = SuiteRegistry::with_builtin();
            let reports = registry
                .run(&suite, max_n)
                .map_err(|name| format!("unknown suite {name:?}; known: {}", registry.names().join(", ")))?;
            let mut all = true;
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                println!("{status} {} ({} checks, {} failures)", r.name, r.checks, r.failure_count);
                for f in &r.failures {
                    println!("    {f}");
                }
                all &= r.passed();
            }
            Ok(if all { 0 } else { EXIT_FALSE })
        }
    }
}
