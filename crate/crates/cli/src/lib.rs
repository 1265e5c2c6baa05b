//! The `linkage` command line: builds complexes and maps, runs the checks of
//! `linkage-core` and prints a report whose assertions decide the exit code.

mod commands;
pub mod report;
mod verify;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{Report, sha256_hex};

/// Exit status for a run whose assertions all hold.
pub const EXIT_OK: i32 = 0;
/// Some assertion failed, or a computation returned an error.
pub const EXIT_FAIL: i32 = 1;
/// Bad arguments or unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "linkage", version, about = "Exact constructions and certificates for intrinsic linking")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for randomized commands (required by trial commands).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Where to write the JSON artifact a command produces.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,
    /// Suite size for verify-all.
    #[arg(long, global = true, value_enum, default_value_t = Profile::Quick)]
    pub profile: Profile,
    /// Worker threads for parallel trials.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    #[value(name = "F")]
    F,
    #[value(name = "Fminus")]
    FMinus,
    #[value(name = "Fprime")]
    FPrime,
    #[value(name = "Kn")]
    Kn,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(short = 'n', long)]
    pub n: Option<u32>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct KL {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub l: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build complexes and read their face counts.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Embeddings of K6, linking matrices and moves.
    #[command(subcommand)]
    K6(K6Cmd),
    /// Raise one index of an almost embedding of F_{k,l,-}.
    Suspend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        /// Expected linking number 2z+1 of the result, checked if given.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<i64>,
    },
    /// Van Kampen numbers and the parity condition.
    #[command(subcommand)]
    Vk(VkCmd),
    /// Deleted products and joins.
    #[command(subcommand)]
    Deleted(DeletedCmd),
    /// Self-duality of F_{k,l} and the sphere structure of its deleted join.
    #[command(subcommand)]
    Bier(BierCmd),
    /// Orientations of top cells of the deleted product of F_{k,l}.
    #[command(subcommand)]
    Orient(OrientCmd),
    /// Degree ledgers on top cells of the deleted product.
    #[command(subcommand)]
    Ledger(LedgerCmd),
    /// Run the whole acceptance suite.
    VerifyAll,
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    Build(FamilyArgs),
    Fvector { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum K6Cmd {
    /// The fixed base embedding.
    Base,
    /// Linking matrix of an embedding.
    Matrix { input: PathBuf },
    /// Finger move of edge a around edge b.
    Move {
        input: PathBuf,
        #[arg(long, value_parser = parse_edge)]
        a: (u32, u32),
        #[arg(long, value_parser = parse_edge)]
        b: (u32, u32),
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        m: i64,
    },
    /// Embedding with lk = 2z+1 on {123,456} and 0 elsewhere.
    Realize {
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
    },
    /// Parity of the linking matrix over random embeddings.
    Cgs {
        #[arg(long)]
        trials: usize,
    },
    /// Odd cycle in the sign relation on pairs of oriented triangles.
    XiCheck,
}

#[derive(Subcommand, Debug)]
pub enum VkCmd {
    Number {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        d: usize,
    },
    PaCheck {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        d: usize,
    },
    Trial {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        trials: usize,
        /// Target dimension; defaults to k+l+1.
        #[arg(long)]
        d: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DeletedCmd {
    Product(FamilyArgs),
    Join(FamilyArgs),
}

#[derive(Subcommand, Debug)]
pub enum BierCmd {
    Verify(KL),
}

#[derive(Subcommand, Debug)]
pub enum OrientCmd {
    Verify(KL),
}

#[derive(Subcommand, Debug)]
pub enum LedgerCmd {
    /// Modifications along a path of top cells.
    PathRealize {
        #[command(flatten)]
        kl: KL,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
        /// Sphere degree of the starting map (+1 or -1).
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        base_degree: i64,
    },
    /// The explicit modification list for k odd, l even.
    Explicit {
        #[command(flatten)]
        kl: KL,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
    },
    /// Modifications realizing a target ledger.
    RealizeCochain {
        #[command(flatten)]
        kl: KL,
        #[arg(long)]
        target: PathBuf,
    },
}

fn parse_edge(s: &str) -> Result<(u32, u32), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?)),
        _ => Err(format!("expected two labels like 1,2, got {s:?}")),
    }
}

/// Failure while running a command.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(linkage_core::Error),
}

impl From<linkage_core::Error> for CliError {
    fn from(e: linkage_core::Error) -> Self {
        match e {
            linkage_core::Error::Parse(_) | linkage_core::Error::Json(_) => CliError::Usage(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

pub(crate) struct Ctx {
    pub global: Global,
    pub report: Report,
}

impl Ctx {
    pub fn require_seed(&mut self) -> Result<u64, CliError> {
        self.global.seed.ok_or_else(|| CliError::Usage("this command is randomized; pass --seed".into()))
    }

    /// Seed for constructions that are deterministic given a seed; 0 unless set.
    pub fn seed_or_zero(&mut self) -> u64 {
        let s = self.global.seed.unwrap_or(0);
        self.report.seed = Some(s);
        s
    }

    pub fn read_json(&mut self, path: &PathBuf) -> Result<serde_json::Value, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.report.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        serde_json::from_slice(&bytes).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Writes the artifact to `--out` if given and records its digest.
    pub fn write_artifact(&mut self, value: &serde_json::Value) -> Result<(), CliError> {
        if let Some(path) = self.global.out.clone() {
            let mut text = serde_json::to_string_pretty(value).expect("json");
            text.push('\n');
            std::fs::write(&path, &text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            self.report.value("output", serde_json::json!({ "path": path.display().to_string(), "sha256": sha256_hex(text.as_bytes()) }));
        }
        Ok(())
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code with everything meant for stdout.
pub fn run(argv: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let command: Vec<String> = argv.iter().skip(1).cloned().collect();
    let mut ctx = Ctx { global: cli.global.clone(), report: Report::new(command) };
    ctx.report.seed = cli.global.seed;
    let start = Instant::now();
    let result = match cli.global.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli.command, &mut ctx)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => commands::dispatch(&cli.command, &mut ctx),
    };
    ctx.report.elapsed_ms = start.elapsed().as_millis() as u64;
    let code = match &result {
        Err(CliError::Usage(msg)) => return (EXIT_USAGE, format!("error: {msg}\n")),
        Err(CliError::Core(e)) => {
            ctx.report.check("completed", false, e.to_string());
            EXIT_FAIL
        }
        Ok(()) if ctx.report.passed() => EXIT_OK,
        Ok(()) => EXIT_FAIL,
    };
    if let Some(path) = &ctx.global.report {
        if let Err(e) = std::fs::write(path, ctx.report.to_json() + "\n") {
            return (EXIT_USAGE, format!("error: cannot write {}: {e}\n", path.display()));
        }
    }
    let text = if ctx.global.json { ctx.report.to_json() + "\n" } else { ctx.report.to_text() };
    (code, text)
}
