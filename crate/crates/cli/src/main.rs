use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use runsubseq::bounds::bounds_report;
use runsubseq::exact::{count_all_t, count_subsequences, enumerate_subsequences};
use runsubseq::transforms::{balance_trace, unbalance_trace, verify_monotone, MonotoneVerdict};
use runsubseq::{Count, Error, RunString};
use runsubseq_cli::sweep::{sweep, write_csv};
use runsubseq_cli::verify::{self, Suite, VerifyOptions};
use runsubseq_cli::{format_runs, CliError};

#[derive(Parser)]
#[command(name = "runsubseq", version, about = "Subsequence counts of binary strings under deletions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of distinct subsequences left after deleting t symbols.
    Count {
        #[command(flatten)]
        input: StringInput,
        /// Deletions; all t are printed when omitted.
        #[arg(long)]
        t: Option<usize>,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// All lower and upper bounds at one (n, r, t).
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        /// Optional witness string; adds the exact count.
        #[command(flatten)]
        witness: OptionalInput,
    },
    /// Prints a member of one of the extremal string families.
    Generate {
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Position of the long run in the unbalanced family (1-based).
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Print in run-list form instead of bits.
        #[arg(long)]
        as_runs: bool,
    },
    /// Bound table for t = 0..=n as CSV.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Run length of the balanced comparison string (default ceil(n/r)).
        #[arg(long)]
        k: Option<usize>,
        /// String whose exact counts fill the exact column.
        #[arg(long)]
        exact: Option<String>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Step-by-step balancing or unbalancing table.
    Trace {
        kind: TraceKind,
        #[command(flatten)]
        input: StringInput,
        #[arg(long)]
        t: usize,
    },
    /// Runs consistency suites; all of them when none is named.
    Verify {
        suites: Vec<Suite>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Random strings drawn by the sampling suites.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StringInput {
    /// Binary string, e.g. 0011100111100.
    #[arg(long)]
    bits: Option<String>,
    /// Run list FIRSTBIT:len,len,..., e.g. 0:3,7,2,1,2.
    #[arg(long)]
    runs: Option<String>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalInput {
    #[arg(long)]
    bits: Option<String>,
    #[arg(long)]
    runs: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Balanced,
    BalancedPrime,
    Unbalanced,
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceKind {
    Balance,
    Unbalance,
}

fn parse_input(bits: Option<&str>, runs: Option<&str>) -> Result<Option<RunString>, CliError> {
    match (bits, runs) {
        (Some(b), _) => Ok(Some(RunString::from_bits(b)?)),
        (None, Some(r)) if !r.contains(':') => {
            Err(Error::RunSyntax { input: r.to_string(), reason: "expected FIRSTBIT:len,len,...".into() }.into())
        }
        (None, Some(r)) => Ok(Some(r.parse()?)),
        (None, None) => Ok(None),
    }
}

fn required(v: Option<usize>, name: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| Error::InvalidParameters(format!("--{name} is required for this family")).into())
}

enum Outcome {
    Ok,
    Failed,
}

fn run(cmd: Command) -> Result<Outcome, CliError> {
    let mut out = BufWriter::new(io::stdout().lock());
    match cmd {
        Command::Count { input, t, oracle } => {
            let x = parse_input(input.bits.as_deref(), input.runs.as_deref())?.expect("clap requires one input");
            let single = t.is_some();
            let ts: Vec<usize> = match t {
                Some(t) => vec![t],
                None => (0..=x.len()).collect(),
            };
            let all = count_all_t::<Count>(&x);
            let mut ok = true;
            for t in ts {
                let c: Count = if t < all.len() { all[t].clone() } else { count_subsequences(&x, t) };
                if single {
                    writeln!(out, "{c}")?;
                } else {
                    writeln!(out, "{t} {c}")?;
                }
                if oracle {
                    let o = enumerate_subsequences(&x, t)?.len();
                    if Count::from(o) != c {
                        eprintln!("oracle mismatch at t={t}: dp={c} enumeration={o}");
                        ok = false;
                    }
                }
            }
            out.flush()?;
            return Ok(if ok { Outcome::Ok } else { Outcome::Failed });
        }
        Command::Bounds { n, r, t, witness } => {
            let w = parse_input(witness.bits.as_deref(), witness.runs.as_deref())?;
            let rep = bounds_report::<Count>(n, r, t, w.as_ref())?;
            writeln!(out, "n={}\nr={}\nt={}\nk_ceil={}", rep.n, rep.r, rep.t, rep.k_ceil)?;
            for (name, v) in [
                ("lev_lower", &rep.lev_lower),
                ("hr_lower", &rep.hr_lower),
                ("new_lower", &rep.new_lower),
                ("new_upper", &rep.new_upper),
                ("hr_upper", &rep.hr_upper),
                ("lev_upper", &rep.lev_upper),
                ("naive_upper", &rep.naive_upper),
            ] {
                writeln!(out, "{name}={v}")?;
            }
            if let Some(e) = &rep.exact {
                writeln!(out, "exact={e}")?;
            }
            let bad = rep.violations();
            out.flush()?;
            if !bad.is_empty() {
                eprintln!("violated: {}", bad.join(", "));
                return Ok(Outcome::Failed);
            }
        }
        Command::Generate { family, n, r, k, i, as_runs } => {
            let x = match family {
                Family::Balanced => RunString::balanced(required(r, "r")?, required(k, "k")?)?,
                Family::BalancedPrime => RunString::balanced_prime(required(r, "r")?, required(k, "k")?)?,
                Family::Unbalanced => RunString::unbalanced(required(n, "n")?, required(r, "r")?, i)?,
                Family::Cyclic => RunString::cyclic(required(n, "n")?)?,
            };
            writeln!(out, "{}", if as_runs { format_runs(&x) } else { x.to_bits() })?;
        }
        Command::Sweep { n, r, k, exact, out: path } => {
            let witness = exact.as_deref().map(str::parse::<RunString>).transpose()?;
            let rows = sweep(n, r, k, witness.as_ref())?;
            match path {
                Some(p) => write_csv(BufWriter::new(File::create(p)?), &rows)?,
                None => write_csv(&mut out, &rows)?,
            }
        }
        Command::Trace { kind, input, t } => {
            let x = parse_input(input.bits.as_deref(), input.runs.as_deref())?.expect("clap requires one input");
            let trace = match kind {
                TraceKind::Balance => balance_trace(&x, t)?,
                TraceKind::Unbalance => unbalance_trace(&x, t),
            };
            write!(out, "{}", trace.render::<Count>())?;
            out.flush()?;
            if let MonotoneVerdict::Violation { index, before, after } = verify_monotone::<Count>(&trace) {
                eprintln!("count moved the wrong way at row {index}: {before} -> {after}");
                return Ok(Outcome::Failed);
            }
        }
        Command::Verify { suites, seed, max_n, samples } => {
            let opts = VerifyOptions { max_n, seed, samples, sample_max_n: max_n.max(18) };
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
            let mut ok = true;
            for s in suites {
                let rep = verify::run(s, &opts)?;
                writeln!(out, "{rep}")?;
                out.flush()?;
                ok &= rep.passed();
            }
            return Ok(if ok { Outcome::Ok } else { Outcome::Failed });
        }
    }
    out.flush()?;
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
