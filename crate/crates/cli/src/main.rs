//! `sscode`: command-line front end for the subspace-coding library.
//!
//! Subcommands: `bounds`, `encode`, `decode`, `simulate`, `enumerate`,
//! `gvcode`. All randomized commands take a 64-bit `--seed` (default 24301)
//! and are bit-reproducible given the same flags. Output files are written
//! in one shot, never partially.
//!
//! Exit codes: 0 success, 1 I/O error, 2 usage or parameter error,
//! 3 file parse error, 4 enumeration cap exceeded, 5 decode failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sscode_core::bounds::{
    asymptotic_curves, bound_report, covering_bound, curves_to_csv, greedy_gv_code, unit_grid,
};
use sscode_core::{
    apply_channel, enumerate_grassmannian, split_seed, ChannelConfig, CodeError, DecodeOutcome,
    FieldParams, Message, RsCode, Subspace, TrialRecord, DEFAULT_ENUM_CAP, TRIAL_CSV_HEADER,
};

const DEFAULT_SEED: u64 = 24301;
const ENUM_CAP_ENV: &str = "SSCODE_ENUM_CAP";

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_RESOURCE: u8 = 4;
const EXIT_DECODE_FAILURE: u8 = 5;

#[derive(Parser)]
#[command(
    name = "sscode",
    version,
    about = "Subspace codes for random linear network coding: encoding, list-1 decoding, channel simulation, and Grassmannian coding bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Field and code parameters shared by the codec commands. Defaults mirror
/// the smallest instructive instance (q=2, m=3, l=3, k=1).
#[derive(Args, Debug)]
struct CodeArgs {
    /// Base field size (prime).
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Extension degree of F_{q^m}.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Codeword dimension (size of the evaluation set), l <= m.
    #[arg(long, default_value_t = 3)]
    l: usize,
    /// Message length in F_{q^m} symbols, k <= l.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Override the built-in field modulus: comma-separated coefficients,
    /// lowest degree first, monic of degree m (e.g. `1,1,0,1`).
    #[arg(long, value_name = "COEFFS")]
    modulus: Option<String>,
}

impl CodeArgs {
    fn build(&self) -> Result<RsCode, CodeError> {
        let params = match &self.modulus {
            Some(coeff_list) => {
                let coeffs = coeff_list
                    .split(',')
                    .map(|tok| {
                        tok.trim().parse::<u32>().map_err(|_| {
                            CodeError::InvalidParameter(format!(
                                "invalid modulus coefficient `{tok}`"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                FieldParams::new(self.q, self.m, coeffs)?
            }
            None => FieldParams::with_default_modulus(self.q, self.m)?,
        };
        RsCode::with_default_eval_set(params, self.l, self.k)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact packing, covering, and Singleton bounds for one (N, l, q),
    /// or the asymptotic rate-vs-distance curves for a fixed lambda.
    Bounds {
        /// Base field size (prime power >= 2 accepted here).
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Ambient space dimension.
        #[arg(long = "N", value_name = "N")]
        n: Option<usize>,
        /// Codeword dimension.
        #[arg(long)]
        l: Option<usize>,
        /// Minimum distance (even); one bound row is emitted for every even
        /// distance from 2 up to this value.
        #[arg(long = "D", value_name = "D")]
        d: Option<usize>,
        /// Emit the asymptotic curves instead of exact bounds.
        #[arg(long)]
        asymptotic: bool,
        /// Normalized weight lambda = l/N for --asymptotic, in (0, 1/2].
        #[arg(long, default_value_t = 0.25)]
        lambda: f64,
        /// Write CSV to this path instead of a table on stdout.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Encode a message file into a codeword subspace file.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Message file: k field-element integers, one per line.
        #[arg(long, value_name = "PATH")]
        message: PathBuf,
        /// Output codeword file in the subspace text format.
        #[arg(long, value_name = "PATH")]
        output: PathBuf,
    },
    /// Decode a received subspace file; writes the message or `FAILURE`.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Received subspace file.
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        /// Output message file (or the literal token FAILURE).
        #[arg(long, value_name = "PATH")]
        output: PathBuf,
    },
    /// Monte Carlo decoding trials over an (erasure, error) grid.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// Largest erasure target; the grid covers 0..=rho.
        #[arg(long, default_value_t = 2)]
        rho: usize,
        /// Largest error-dimension target; the grid covers 0..=t.
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Trials per grid cell.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Base seed; trial seeds are derived deterministically.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the per-trial log CSV to this path.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// List every l-dimensional subspace of F_q^N (within the cap).
    Enumerate {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Output file; stdout when omitted. Blocks are blank-line separated.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Greedy Gilbert-Varshamov-style code with pairwise distance >= 2t.
    Gvcode {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Half the target minimum distance.
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

enum CliError {
    Code(CodeError),
    Io(std::io::Error),
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        CliError::Code(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Code(CodeError::Parse { .. }) => EXIT_PARSE,
            CliError::Code(CodeError::EnumerationCapExceeded { .. }) => EXIT_RESOURCE,
            CliError::Code(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(e) => format!("I/O error: {e}"),
            CliError::Code(e) => e.to_string(),
        }
    }
}

fn enum_cap() -> Result<u128, CliError> {
    match std::env::var(ENUM_CAP_ENV) {
        Ok(v) => v.parse().map_err(|_| {
            CliError::Code(CodeError::InvalidParameter(format!(
                "{ENUM_CAP_ENV} must be an integer, got `{v}`"
            )))
        }),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(CliError::Io)
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(CliError::Io)
}

fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("sscode: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Bounds {
            q,
            n,
            l,
            d,
            asymptotic,
            lambda,
            csv,
        } => cmd_bounds(q, n, l, d, asymptotic, lambda, csv.as_deref()),
        Command::Encode {
            code,
            message,
            output,
        } => cmd_encode(&code, &message, &output),
        Command::Decode {
            code,
            input,
            output,
        } => cmd_decode(&code, &input, &output),
        Command::Simulate {
            code,
            rho,
            t,
            trials,
            seed,
            csv,
        } => cmd_simulate(&code, rho, t, trials, seed, csv.as_deref()),
        Command::Enumerate { q, n, l, output } => cmd_enumerate(q, n, l, output.as_deref()),
        Command::Gvcode {
            q,
            n,
            l,
            t,
            seed,
            output,
        } => cmd_gvcode(q, n, l, t, seed, output.as_deref()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    q: u32,
    n: Option<usize>,
    l: Option<usize>,
    d: Option<usize>,
    asymptotic: bool,
    lambda: f64,
    csv: Option<&Path>,
) -> Result<u8, CliError> {
    if asymptotic {
        let points = asymptotic_curves(lambda, &unit_grid(100))?;
        emit(csv, &curves_to_csv(&points))?;
        return Ok(0);
    }
    let (Some(n), Some(l), Some(d)) = (n, l, d) else {
        return Err(CliError::Code(CodeError::InvalidParameter(
            "bounds needs --N, --l and --D (or --asymptotic --lambda X)".into(),
        )));
    };
    if d % 2 != 0 || d == 0 {
        return Err(CliError::Code(CodeError::InvalidParameter(format!(
            "distance must be even and positive, got {d}"
        ))));
    }
    let reports = (1..=d / 2)
        .map(|t| bound_report(n, l, q, 2 * t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv_text = String::from("N,l,q,D,packing,covering,singleton\n");
    for r in &reports {
        writeln!(
            csv_text,
            "{},{},{},{},{},{},{}",
            r.ambient_dim, r.codeword_dim, r.q, r.distance, r.packing, r.covering, r.singleton
        )
        .expect("string write");
    }
    match csv {
        Some(path) => write_file(path, &csv_text)?,
        None => {
            let header = ["N", "l", "q", "D", "packing", "covering", "singleton"];
            let rows: Vec<[String; 7]> = reports
                .iter()
                .map(|r| {
                    [
                        r.ambient_dim.to_string(),
                        r.codeword_dim.to_string(),
                        r.q.to_string(),
                        r.distance.to_string(),
                        r.packing.to_string(),
                        r.covering.to_string(),
                        r.singleton.to_string(),
                    ]
                })
                .collect();
            let widths: Vec<usize> = (0..7)
                .map(|i| {
                    rows.iter()
                        .map(|r| r[i].len())
                        .chain([header[i].len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let fmt_row = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let header_cells: Vec<String> = header.iter().map(|s| s.to_string()).collect();
            println!("{}", fmt_row(&header_cells));
            for r in rows {
                println!("{}", fmt_row(&r));
            }
        }
    }
    Ok(0)
}

fn cmd_encode(code_args: &CodeArgs, message: &Path, output: &Path) -> Result<u8, CliError> {
    let code = code_args.build()?;
    let text = read_file(message)?;
    let msg = Message::parse_text(code.field(), code.message_len(), &text)?;
    let codeword = code.encode(&msg)?;
    write_file(output, &codeword.to_text())?;
    Ok(0)
}

fn cmd_decode(code_args: &CodeArgs, input: &Path, output: &Path) -> Result<u8, CliError> {
    let code = code_args.build()?;
    let text = read_file(input)?;
    let received = Subspace::parse_text(&text)?;
    match code.decode(&received)? {
        DecodeOutcome::Message(msg) => {
            write_file(output, &msg.to_text())?;
            Ok(0)
        }
        DecodeOutcome::Failure => {
            write_file(output, "FAILURE\n")?;
            Ok(EXIT_DECODE_FAILURE)
        }
    }
}

fn cmd_simulate(
    code_args: &CodeArgs,
    rho_max: usize,
    t_max: usize,
    trials: u64,
    seed: u64,
    csv: Option<&Path>,
) -> Result<u8, CliError> {
    let code = code_args.build()?;
    let params = code.field().clone();
    let l = code.codeword_dim();
    let n = code.ambient_dim();
    let mut log = String::from(TRIAL_CSV_HEADER);
    log.push('\n');
    println!(
        "code [{}, {}, {}, {}] over F_{}  (base seed {})",
        n,
        l,
        code.m() * code.message_len(),
        code.design_distance(),
        code.q(),
        seed
    );
    println!("{:>4} {:>4} {:>8} {:>10} {:>8}", "rho", "t", "trials", "successes", "rate");
    for rho in 0..=rho_max {
        for t in 0..=t_max {
            if rho > l || t > n - (l - rho) {
                println!("{rho:>4} {t:>4} {:>8} {:>10} {:>8}", "-", "-", "skipped");
                continue;
            }
            let mut successes = 0u64;
            for trial in 0..trials {
                let trial_seed = split_seed(seed, &[rho as u64, t as u64, trial]);
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
                let msg = Message::new(
                    (0..code.message_len())
                        .map(|_| params.random_element(&mut rng))
                        .collect(),
                );
                let sent = code.encode(&msg)?;
                let out = apply_channel(
                    &sent,
                    &ChannelConfig {
                        erasures: rho,
                        errors: t,
                        seed: split_seed(trial_seed, &[1]),
                    },
                )?;
                let decoded = code.decode(&out.received)?;
                let ok = decoded.message() == Some(&msg);
                if ok {
                    successes += 1;
                }
                let record = TrialRecord {
                    seed: trial_seed,
                    rho_target: rho,
                    t_target: t,
                    rho_actual: out.erasures_actual,
                    t_actual: out.errors_actual,
                    distance: out.received.distance(&sent)?,
                    decode_ok: ok,
                };
                log.push_str(&record.to_csv_row());
                log.push('\n');
            }
            let rate = successes as f64 / trials as f64;
            println!("{rho:>4} {t:>4} {trials:>8} {successes:>10} {rate:>8.4}");
        }
    }
    if let Some(path) = csv {
        write_file(path, &log)?;
    }
    Ok(0)
}

fn cmd_enumerate(q: u32, n: usize, l: usize, output: Option<&Path>) -> Result<u8, CliError> {
    let all = enumerate_grassmannian(q, n, l, enum_cap()?)?;
    let blocks: Vec<String> = all.iter().map(|s| s.to_text()).collect();
    emit(output, &blocks.join("\n"))?;
    Ok(0)
}

fn cmd_gvcode(
    q: u32,
    n: usize,
    l: usize,
    t: usize,
    seed: u64,
    output: Option<&Path>,
) -> Result<u8, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code = greedy_gv_code(q, n, l, t, enum_cap()?, &mut rng)?;
    let lower = covering_bound(n, l, t, q)?.exact;
    eprintln!(
        "gvcode: {} codewords (covering bound {lower}), distance >= {}, seed {seed}",
        code.len(),
        2 * t
    );
    let blocks: Vec<String> = code.iter().map(|s| s.to_text()).collect();
    emit(output, &blocks.join("\n"))?;
    Ok(0)
}
