mod commands;
mod error;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;
use report::Format;

#[derive(Parser, Debug)]
#[command(
    name = "cyalg",
    version,
    about = "Finite-dimensional algebras from negatively graded Calabi-Yau algebras"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// Degree window `LO..HI` (inclusive), e.g. `-6..0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok(Window { lo, hi })
}

fn parse_cap(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("cap must be at least 1".into()),
        Ok(c) => Ok(c),
        Err(_) => Err(format!("bad cap `{s}`")),
    }
}

/// Options shared by commands that read a presentation.
#[derive(Args, Debug, Clone)]
pub struct PresOpts {
    /// `.quiver` presentation or `.dimer` model (graded Jacobian algebra).
    pub file: PathBuf,
    /// Degree truncation cap for normal forms.
    #[arg(long, value_parser = parse_cap)]
    pub cap: Option<u32>,
    /// Grading multiplier: every arrow degree is multiplied by K.
    #[arg(long = "n", value_name = "K")]
    pub n: Option<u32>,
    /// Dimer grading: one perfect matching as comma-separated edges; repeat
    /// to add matchings. Each chosen matching contributes degree -1.
    /// Default: all perfect matchings.
    #[arg(long = "matching", value_name = "EDGES")]
    pub matchings: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded dimensions `dim e_i R_w e_j`.
    Dims {
        #[command(flatten)]
        pres: PresOpts,
        /// Degrees 0, -1, ..., -K.
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<Window>,
    },
    /// The algebras A, U and B = A ⋉ U with their Gabriel quivers.
    BuildAbc {
        #[command(flatten)]
        pres: PresOpts,
        /// Number of matrix slots; default is the declared a-invariant.
        #[arg(long)]
        a: Option<usize>,
        /// Path length up to which the relations of B are recovered.
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// The block algebra B̃ with `--blocks` copies of A.
    Tilde {
        #[command(flatten)]
        pres: PresOpts,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
    },
    /// Compares the Q̂ presentation with the block algebra over the preprojective algebra.
    Qhat {
        /// Acyclic `.quiver` file.
        file: PathBuf,
        #[arg(long = "n", value_name = "K", default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        /// Use the square-zero relations through arrows only.
        #[arg(long)]
        literal: bool,
        #[arg(long, value_parser = parse_cap)]
        cap: Option<u32>,
    },
    /// The block algebra over the preprojective algebra of an acyclic quiver.
    Corpi {
        file: PathBuf,
        #[arg(long = "n", value_name = "K", default_value_t = 1)]
        n: usize,
        #[arg(long, value_parser = parse_cap)]
        cap: Option<u32>,
    },
    /// Dimer model tools.
    Dimer {
        #[command(subcommand)]
        action: DimerAction,
    },
    /// Twisted bimodule Calabi-Yau check of R^dg on a degree window.
    CyCheck {
        #[command(flatten)]
        pres: PresOpts,
        /// `id`, `sigma`, or a file of `arrow scalar` lines.
        #[arg(long, default_value = "id")]
        twist: String,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<Window>,
        /// Resolution to use instead of the built-in one.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Prints a bimodule complex, optionally transported and dualized, and checks d∘d = 0.
    Complex {
        /// `.complex` file.
        file: PathBuf,
        /// Presentation the complex lives over.
        #[arg(long)]
        over: PathBuf,
        #[arg(long)]
        transport: bool,
        #[arg(long)]
        dualize: bool,
        #[arg(long, value_parser = parse_cap)]
        cap: Option<u32>,
    },
    /// Iwanaga-Gorenstein test: injective dimension of both regular modules at most d.
    IgCheck {
        #[command(flatten)]
        pres: PresOpts,
        #[arg(long)]
        d: usize,
        /// `b`, `tilde`, `corpi` or `path`; default `b` with CY data, `path` without.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
    },
    /// Knits the preprojective component (path algebra of an acyclic
    /// quiver, or A^op for a presentation with CY data).
    Knit {
        #[command(flatten)]
        pres: PresOpts,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long, default_value_t = 6)]
        steps: usize,
    },
    /// Checks F^a = ν_d on labels and dimension vectors of the orbit R(-i).
    VerifyRoot {
        #[command(flatten)]
        pres: PresOpts,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DimerAction {
    /// Traces faces and checks V - E + F = 0.
    Validate { file: PathBuf },
    /// Dual quiver and potential.
    Qp { file: PathBuf },
    /// Searches for an R-charge, with a certificate when none exists.
    Consistency { file: PathBuf },
    /// Lists all perfect matchings.
    Matchings { file: PathBuf },
    /// Graded Jacobian algebra and its CY-3 complex.
    Jacobian {
        #[command(flatten)]
        pres: PresOpts,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
    },
}

fn run(cli: Cli) -> Result<report::Report, CliError> {
    use commands as c;
    match cli.command {
        Command::Dims {
            pres,
            max_degree,
            window,
        } => c::dims(
            &pres,
            window.unwrap_or(Window {
                lo: -max_degree,
                hi: 0,
            }),
        ),
        Command::BuildAbc {
            pres,
            a,
            max_degree,
        } => c::build_abc(&pres, a, max_degree),
        Command::Tilde { pres, a, blocks } => c::tilde(&pres, a, blocks),
        Command::Qhat {
            file,
            n,
            max_degree,
            literal,
            cap,
        } => c::qhat(&file, n, max_degree, literal, cap),
        Command::Corpi { file, n, cap } => c::corpi(&file, n, cap),
        Command::Dimer { action } => match action {
            DimerAction::Validate { file } => c::dimer_validate(&file),
            DimerAction::Qp { file } => c::dimer_qp(&file),
            DimerAction::Consistency { file } => c::dimer_consistency(&file),
            DimerAction::Matchings { file } => c::dimer_matchings(&file),
            DimerAction::Jacobian { pres, max_degree } => c::dimer_jacobian(&pres, max_degree),
        },
        Command::CyCheck {
            pres,
            twist,
            window,
            complex,
        } => c::cy_check(&pres, &twist, window, complex.as_deref()),
        Command::Complex {
            file,
            over,
            transport,
            dualize,
            cap,
        } => c::complex(&file, &over, transport, dualize, cap),
        Command::IgCheck {
            pres,
            d,
            algebra,
            a,
            blocks,
        } => c::ig_check(&pres, d, algebra.as_deref(), a, blocks),
        Command::Knit { pres, a, steps } => c::knit(&pres, a, steps),
        Command::VerifyRoot { pres, a, d, steps } => c::verify_root(&pres, a, d, steps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let outcome = run(cli).and_then(|r| Ok((r.render(format)?, r.pass)));
    match outcome {
        Ok((out, pass)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
