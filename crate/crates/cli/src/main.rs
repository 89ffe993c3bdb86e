use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use frobsplit_cli::{run_command, ExperimentSpec, Report, UsageError};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "frobsplit",
    version,
    about = "Exact characteristic-p splitting checks: F-purity tests, splitting normalization, and lifts to double and hyperbolic covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report to a file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,

    /// Print only the JSON report on standard output.
    #[arg(long, global = true)]
    json_only: bool,

    /// Cap on processed S-pairs per basis computation.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_pairs: u64,

    /// Cap on basis size per basis computation.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_basis: usize,
}

#[derive(Args)]
struct CommonParams {
    /// The prime characteristic.
    #[arg(long)]
    p: u32,

    /// Seed for all randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Property suite for the trace operator and Frobenius decomposition.
    TraceCheck {
        #[command(flatten)]
        common: CommonParams,
        /// Number of variables.
        #[arg(long, default_value_t = 2)]
        vars: usize,
        /// Number of random samples per property.
        #[arg(long, default_value_t = 200)]
        samples: u32,
    },
    /// F-purity test at the origin, with optional splitting normalization.
    Fedder {
        #[command(flatten)]
        common: CommonParams,
        /// Builtin family: node | cusp | "det R S" | "sym-det N" | "so-cover N M".
        #[arg(long, conflicts_with = "ideal")]
        family: Option<String>,
        /// Raw ideal: semicolon-separated polynomials.
        #[arg(long)]
        ideal: Option<String>,
        /// Comma-separated variable names for --ideal (inferred if omitted).
        #[arg(long, requires = "ideal")]
        vars: Option<String>,
        /// Attempt to normalize the witness into a splitting element.
        #[arg(long)]
        normalize: bool,
    },
    /// Construct a splitting lift on a cover algebra and verify its axioms.
    Lift {
        #[command(subcommand)]
        kind: LiftKind,
    },
    /// Verify the transition cocycle of the special-linear family.
    Cocycle {
        #[command(flatten)]
        common: CommonParams,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: usize,
        /// Number of sampled triples (0 = exhaustive).
        #[arg(long, default_value_t = 0)]
        sample_triples: u32,
    },
    /// Generator identities and invariance checks for a family.
    Invariants {
        /// Group: so or sl.
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: Option<usize>,
        /// Prime characteristic (default 3).
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Allow the mixed regime min(m,q) < n <= max(m,q); its report is
        /// always inconclusive.
        #[arg(long)]
        experimental: bool,
    },
    /// Dimension and codimension formulas over parameter grids.
    Dims {
        /// n value or inclusive range a..b.
        #[arg(long)]
        n: String,
        /// m value or inclusive range a..b.
        #[arg(long)]
        m: String,
        /// q value or inclusive range a..b.
        #[arg(long)]
        q: String,
        /// Prime characteristic for the Groebner cross-check (default 3).
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
}

#[derive(Subcommand)]
enum LiftKind {
    /// Chart-by-chart lift over an orthogonal atlas with overlap checks.
    Chart {
        #[command(flatten)]
        common: CommonParams,
        /// Group (only `so` is supported).
        #[arg(long, default_value = "so")]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        samples: u32,
    },
    /// Quadratic-cover lift over the symmetric determinant.
    Hypersurface {
        #[command(flatten)]
        common: CommonParams,
        /// Family (only `sym-det` is supported).
        #[arg(long, default_value = "sym-det")]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: u32,
    },
    /// Hyperbolic-cover lift over the generic determinant.
    Hyperbolic {
        #[command(flatten)]
        common: CommonParams,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: u32,
    },
}

fn build_spec(cli: &Cli) -> ExperimentSpec {
    let mut spec = match &cli.command {
        Command::TraceCheck {
            common,
            vars,
            samples,
        } => {
            let mut s = ExperimentSpec::new("trace-check");
            s.p = Some(common.p);
            s.seed = Some(common.seed);
            s.n = Some(*vars);
            s.samples = Some(*samples);
            s
        }
        Command::Fedder {
            common,
            family,
            ideal,
            vars,
            normalize,
        } => {
            let mut s = ExperimentSpec::new("fedder");
            s.p = Some(common.p);
            s.seed = Some(common.seed);
            s.family = family.clone();
            s.ideal = ideal.clone();
            s.vars = vars.clone();
            s.normalize = *normalize;
            s
        }
        Command::Lift { kind } => match kind {
            LiftKind::Chart {
                common,
                group,
                n,
                m,
                samples,
            } => {
                let mut s = ExperimentSpec::new("lift-chart");
                s.p = Some(common.p);
                s.seed = Some(common.seed);
                s.group = Some(group.clone());
                s.n = Some(*n);
                s.m = Some(*m);
                s.samples = Some(*samples);
                s
            }
            LiftKind::Hypersurface {
                common,
                family,
                n,
                samples,
            } => {
                let mut s = ExperimentSpec::new("lift-hypersurface");
                s.p = Some(common.p);
                s.seed = Some(common.seed);
                s.family = Some(family.clone());
                s.n = Some(*n);
                s.samples = Some(*samples);
                s
            }
            LiftKind::Hyperbolic { common, n, samples } => {
                let mut s = ExperimentSpec::new("lift-hyperbolic");
                s.p = Some(common.p);
                s.seed = Some(common.seed);
                s.n = Some(*n);
                s.samples = Some(*samples);
                s
            }
        },
        Command::Cocycle {
            common,
            n,
            m,
            q,
            sample_triples,
        } => {
            let mut s = ExperimentSpec::new("cocycle");
            s.p = Some(common.p);
            s.seed = Some(common.seed);
            s.n = Some(*n);
            s.m = Some(*m);
            s.q = Some(*q);
            s.samples = Some(*sample_triples);
            s
        }
        Command::Invariants {
            group,
            n,
            m,
            q,
            p,
            experimental,
        } => {
            let mut s = ExperimentSpec::new("invariants");
            s.p = Some(*p);
            s.group = Some(group.clone());
            s.n = Some(*n);
            s.m = Some(*m);
            s.q = *q;
            s.experimental = *experimental;
            s
        }
        Command::Dims { n, m, q, p } => {
            let mut s = ExperimentSpec::new("dims");
            s.p = Some(*p);
            s.grid = Some(format!("{n}/{m}/{q}"));
            s
        }
    };
    spec.max_pairs = cli.max_pairs;
    spec.max_basis = cli.max_basis;
    spec
}

fn emit(report: &Report, cli: &Cli) -> std::io::Result<()> {
    if cli.json_only {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.human_summary());
    }
    if let Some(path) = &cli.out {
        fs::write(path, report.to_json())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests print and exit cleanly
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let spec = build_spec(&cli);
    match run_command(&spec) {
        Ok(report) => {
            if emit(&report, &cli).is_err() {
                eprintln!("failed to write report");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(UsageError(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
