mod output;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use kodag_core::chains::{count_json, enumerate_layer_chains, layer_count};
use kodag_core::incidence::{
    coding_matrix, coding_matrix_for, eta, eta_inverse, kroton, kroton_recurrence, max_matrix, mobius_closed_form,
    mobius_inverse, mobius_recurrence, zeta_closure, zeta_formula_dziemianczuk, zeta_formula_krot,
    zeta_formula_kwasniewski,
};
use kodag_core::poset::Density;
use kodag_core::{Error, GradedPoset, MobiusMode, Sequence, DEFAULT_ENUMERATION_CAP};

use output::{emit, Format};

const EXIT_CODES: &str = "Exit codes: 0 ok, 1 verification failure, 2 configuration error, \
3 domain error, 4 conjecture mismatch, 5 enumeration cap exceeded.";

#[derive(Parser)]
#[command(name = "kodag", version, about = "Cobweb posets, KoDAGs and their incidence algebra", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta matrix (reflexive-transitive closure of the cover relation).
    Zeta {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ZetaMethod::Closure)]
        method: ZetaMethod,
    },
    /// Möbius matrix, the exact inverse of zeta.
    Mobius {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = MobiusMethod::Invert)]
        method: MobiusMethod,
        /// Report closed-form mismatches instead of refusing non-cobweb input.
        #[arg(long)]
        conjecture: bool,
    },
    /// [Max] matrix, (I - kappa)^-1, counting maximal chains of intervals.
    Max {
        #[command(flatten)]
        input: Input,
    },
    /// Reflexive cover matrix eta = kappa + delta, or its inverse.
    Eta {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        inverse: bool,
    },
    /// Coding matrix of the Möbius coefficients c[r,s].
    Coding {
        #[command(flatten)]
        input: Input,
    },
    /// Kroton value K_s(r_F).
    Kroton {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        r: usize,
        #[arg(short, long)]
        s: usize,
    },
    /// F-nomial coefficient, or an admissibility scan with --admissible.
    Fnomial {
        #[command(flatten)]
        input: Input,
        #[arg(short, long, required_unless_present = "admissible")]
        n: Option<usize>,
        #[arg(short, long, required_unless_present = "admissible")]
        k: Option<usize>,
        /// Check integrality of every F-nomial with n up to this bound.
        #[arg(long, conflicts_with_all = ["n", "k"])]
        admissible: Option<usize>,
    },
    /// Maximal chains of the layer from level --from to level --to.
    Chains {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// List every chain instead of counting.
        #[arg(long)]
        enumerate: bool,
    },
    /// ASCII staircase of a cobweb zeta matrix.
    Lascala {
        #[command(flatten)]
        input: Input,
        /// Maximum line width in characters.
        #[arg(long, default_value_t = 80)]
        width: usize,
    },
    /// Random graded poset document.
    Random {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1")]
        density: Density,
        /// Keep nodes without up or down covers.
        #[arg(long)]
        allow_mute: bool,
    },
    /// Run a verification suite.
    Verify(verify::VerifyArgs),
}

#[derive(Args, Clone)]
struct Input {
    /// Sequence spec: nat, fib, gauss:Q, const:C or list:a,b,..., optionally with +root.
    #[arg(long, conflicts_with = "poset")]
    seq: Option<String>,
    /// Poset JSON document.
    #[arg(long)]
    poset: Option<PathBuf>,
    #[arg(long)]
    levels: Option<usize>,
    /// Output format; ascii for lascala and json otherwise when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ZetaMethod {
    Closure,
    /// Kronecker-delta formula over cumulative level offsets.
    Delta,
    /// Same-node and level comparison in grid coordinates.
    Grid,
    /// Bracket formula over level boundaries.
    Bracket,
}

#[derive(Clone, Copy, ValueEnum)]
enum MobiusMethod {
    Invert,
    Recurrence,
    Closed,
}

/// Failure carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "config", message: message.into() }
    }

    fn to_line(&self) -> String {
        let mut map = Map::new();
        map.insert("code".into(), Value::from(self.code));
        map.insert("error".into(), Value::from(self.kind));
        map.insert("message".into(), Value::from(self.message.clone()));
        Value::Object(map).to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::Parse { .. } | Error::OutOfRange(_) | Error::Document(_) | Error::Json(_) => (2, "config"),
            Error::Domain(_) | Error::Precondition(_) | Error::JoinCondition { .. } => (3, "domain"),
            Error::CapExceeded { .. } => (5, "cap"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::config(e.to_string())
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

enum Source {
    Seq(Sequence, usize),
    Poset(GradedPoset),
}

impl Input {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn sequence(&self) -> CliResult<Sequence> {
        match &self.seq {
            Some(s) => Ok(s.parse()?),
            None => Err(Failure::config("--seq is required")),
        }
    }

    fn levels(&self) -> CliResult<usize> {
        self.levels.ok_or_else(|| Failure::config("--levels is required with --seq"))
    }

    fn source(&self) -> CliResult<Source> {
        match (&self.seq, &self.poset) {
            (Some(_), None) => Ok(Source::Seq(self.sequence()?, self.levels()?)),
            (None, Some(path)) => {
                if self.levels.is_some() {
                    return Err(Failure::config("--levels cannot be combined with --poset"));
                }
                Ok(Source::Poset(load_poset(path)?))
            }
            _ => Err(Failure::config("exactly one of --seq or --poset is required")),
        }
    }

    fn poset(&self) -> CliResult<GradedPoset> {
        match self.source()? {
            Source::Seq(seq, n) => Ok(GradedPoset::cobweb(&seq, n)?),
            Source::Poset(p) => Ok(p),
        }
    }
}

pub fn load_poset(path: &std::path::Path) -> CliResult<GradedPoset> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
    Ok(GradedPoset::from_json_str(&text)?)
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Zeta { input, method } => {
            let m = match method {
                ZetaMethod::Closure => zeta_closure(&input.poset()?),
                formula => {
                    let (seq, n) = (input.sequence()?, input.levels()?);
                    match formula {
                        ZetaMethod::Delta => zeta_formula_kwasniewski(&seq, n)?,
                        ZetaMethod::Grid => zeta_formula_krot(&seq, n)?,
                        _ => zeta_formula_dziemianczuk(&seq, n)?,
                    }
                }
            };
            emit(&input, output::incidence(&m, input.format(Format::Json)))?;
        }
        Command::Mobius { input, method, conjecture } => return cmd_mobius(&input, method, conjecture),
        Command::Max { input } => {
            let m = max_matrix(&input.poset()?);
            emit(&input, output::incidence(&m, input.format(Format::Json)))?;
        }
        Command::Eta { input, inverse } => {
            let p = input.poset()?;
            let m = if inverse { eta_inverse(&p) } else { eta(&p) };
            emit(&input, output::incidence(&m, input.format(Format::Json)))?;
        }
        Command::Coding { input } => {
            let c = match input.source()? {
                Source::Seq(seq, n) => coding_matrix(&seq, n)?,
                Source::Poset(p) => coding_matrix_for(&p),
            };
            let text = match input.format(Format::Json) {
                Format::Json => c.to_json_string(),
                f => output::int_matrix(c.matrix(), f),
            };
            emit(&input, text)?;
        }
        Command::Kroton { input, r, s } => {
            let seq = input.sequence()?;
            let value = kroton(&seq, r, s)?;
            if kroton_recurrence(&seq, r, s)? != value {
                return Err(Error::Domain(format!("kroton routes disagree at r={r}, s={s}")).into());
            }
            let text = match input.format(Format::Json) {
                Format::Json => {
                    let mut map = Map::new();
                    map.insert("r".into(), Value::from(r));
                    map.insert("s".into(), Value::from(s));
                    map.insert("value".into(), Value::from(value.value.to_string()));
                    Value::Object(map).to_string()
                }
                _ => value.value.to_string(),
            };
            emit(&input, text)?;
        }
        Command::Fnomial { input, n, k, admissible } => emit(&input, cmd_fnomial(&input, n, k, admissible)?)?,
        Command::Chains { input, from, to, enumerate } => {
            let p = input.poset()?;
            let text = if enumerate {
                enumerate_layer_chains(&p, from, to, input.cap)?.to_json().to_string()
            } else {
                let (count, _, _) = layer_count(&p, from, to, input.cap)?;
                match input.format(Format::Json) {
                    Format::Json => count_json(from, to, &count).to_string(),
                    _ => count.to_string(),
                }
            };
            emit(&input, text)?;
        }
        Command::Lascala { input, width } => {
            let p = input.poset()?;
            if !p.is_cobweb() {
                return Err(Failure::config("lascala needs a cobweb poset"));
            }
            emit(&input, render::lascala(&p, width))?;
        }
        Command::Random { input, density, allow_mute } => {
            let p = match input.source()? {
                Source::Seq(seq, n) => GradedPoset::random(&seq, n, density, input.seed, allow_mute)?,
                Source::Poset(p) => GradedPoset::random_with_sizes(p.sizes(), density, input.seed, allow_mute)?,
            };
            if !matches!(input.format(Format::Json), Format::Json) {
                return Err(Failure::config("random emits JSON only"));
            }
            emit(&input, p.to_json_string())?;
        }
        Command::Verify(args) => return verify::run(&args),
    }
    Ok(0)
}

fn cmd_mobius(input: &Input, method: MobiusMethod, conjecture: bool) -> CliResult<u8> {
    let p = input.poset()?;
    let format = input.format(Format::Json);
    let m = match method {
        MobiusMethod::Invert => mobius_inverse(&zeta_closure(&p))?,
        MobiusMethod::Recurrence => mobius_recurrence(&p),
        MobiusMethod::Closed => {
            let mode = if conjecture || !p.is_cobweb() { MobiusMode::Conjecture } else { MobiusMode::Strict };
            let report = mobius_closed_form(&p, mode)?;
            emit(input, output::incidence(&report.matrix, format))?;
            if let Some(mm) = report.first_mismatch {
                let mut map = Map::new();
                map.insert("block".into(), Value::from(vec![mm.block.0, mm.block.1]));
                map.insert("candidate".into(), output::big(&mm.candidate));
                map.insert("col".into(), Value::from(mm.col));
                map.insert("exact".into(), output::big(&mm.exact));
                map.insert("mismatch".into(), Value::from(true));
                map.insert("row".into(), Value::from(mm.row));
                eprintln!("{}", Value::Object(map));
                return Ok(4);
            }
            return Ok(0);
        }
    };
    emit(input, output::incidence(&m, format))?;
    Ok(0)
}

fn cmd_fnomial(input: &Input, n: Option<usize>, k: Option<usize>, admissible: Option<usize>) -> CliResult<String> {
    let seq = input.sequence()?;
    let json = matches!(input.format(Format::Json), Format::Json);
    let mut map = Map::new();
    if let Some(n_max) = admissible {
        let report = seq.is_admissible(n_max)?;
        map.insert("admissible".into(), Value::from(report.admissible));
        map.insert(
            "first_violation".into(),
            report.first_violation.map_or(Value::Null, |(n, k)| Value::from(vec![n, k])),
        );
        map.insert("n_max".into(), Value::from(n_max));
        if !json {
            return Ok(report.admissible.to_string());
        }
    } else {
        let (n, k) = (n.expect("required by clap"), k.expect("required by clap"));
        let value = seq.fnomial(n, k)?;
        if !json {
            return Ok(value.to_string());
        }
        map.insert("integral".into(), Value::from(value.is_integral()));
        map.insert("k".into(), Value::from(k));
        map.insert("n".into(), Value::from(n));
        map.insert("value".into(), Value::from(value.to_string()));
    }
    Ok(Value::Object(map).to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", Failure::config(first).to_line());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.to_line());
            ExitCode::from(f.code)
        }
    }
}
