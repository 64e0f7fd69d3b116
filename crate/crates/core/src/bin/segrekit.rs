use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::BigRational;

use segrekit::app::{self, Command, JobSpec};
use segrekit::{Error, FieldSpec, InputFile};

#[derive(Parser)]
#[command(name = "segrekit", version, about = "Stückrad–Vogel cycles, Segre classes and Segre numbers")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Ideal file
    input: PathBuf,
    /// Ground field: q, fp or fp:<prime>
    #[arg(long)]
    field: Option<FieldSpec>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Maximum number of S-pairs per Gröbner basis
    #[arg(long)]
    budget: Option<usize>,
    /// Print JSON instead of a table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SvArgs {
    #[command(flatten)]
    common: Common,
    /// Independent runs that must agree
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Degree of the section family (defaults to the largest generator degree)
    #[arg(long)]
    twist: Option<u32>,
}

#[derive(Args)]
struct LocalArgs {
    #[command(flatten)]
    common: Common,
    /// Variable set to 1 to pass to an affine chart
    #[arg(long)]
    chart: Option<String>,
    /// Point moved to the origin, as comma-separated integers
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Vec<i64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degrees of the Stückrad–Vogel cycle and the mass balance
    Sv(SvArgs),
    /// Segre class degrees from the SV cycle
    Segre(SvArgs),
    /// Mass balance of an SV run
    MassCheck(SvArgs),
    /// Compare with the Segre class of a complete intersection
    CheckGata1 {
        #[command(flatten)]
        sv: SvArgs,
        /// Degrees of the complete intersection
        #[arg(long, value_delimiter = ',', required = true)]
        twists: Vec<i64>,
    },
    /// Recover the SV degrees from the Segre class
    CheckRoundtrip(SvArgs),
    /// Multiplicity at the origin
    Mult {
        #[command(flatten)]
        local: LocalArgs,
        /// Dimension of the scheme at the origin (computed when omitted)
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Segre numbers at the origin
    SegreNumbers(LocalArgs),
    /// Class-level Gysin map of a complete intersection
    Gysin {
        /// Ambient projective dimension
        #[arg(long)]
        ambient: usize,
        /// Degrees of the complete intersection
        #[arg(long, value_delimiter = ',', required = true)]
        twists: Vec<i64>,
        /// Coefficients of the class (defaults to 1)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        class: Vec<BigRational>,
        #[arg(long)]
        json: bool,
    },
}

fn apply_common(job: &mut JobSpec, c: &Common) {
    job.field = c.field;
    job.seed = c.seed;
    job.budget = c.budget;
}

fn apply_sv(job: &mut JobSpec, a: &SvArgs) {
    apply_common(job, &a.common);
    job.trials = a.trials;
    job.twist = a.twist;
}

fn apply_local(job: &mut JobSpec, a: &LocalArgs) {
    apply_common(job, &a.common);
    job.chart = a.chart.clone();
    job.point = a.point.clone();
}

fn build(cmd: &Cmd) -> (JobSpec, Option<&Common>, bool) {
    let sv_job = |command, a: &SvArgs| {
        let mut job = JobSpec::new(command);
        apply_sv(&mut job, a);
        job
    };
    match cmd {
        Cmd::Sv(a) => (sv_job(Command::Sv, a), Some(&a.common), a.common.json),
        Cmd::Segre(a) => (sv_job(Command::Segre, a), Some(&a.common), a.common.json),
        Cmd::MassCheck(a) => (sv_job(Command::MassCheck, a), Some(&a.common), a.common.json),
        Cmd::CheckRoundtrip(a) => (sv_job(Command::CheckRoundtrip, a), Some(&a.common), a.common.json),
        Cmd::CheckGata1 { sv, twists } => {
            let mut job = sv_job(Command::CheckGata1, sv);
            job.twists = twists.clone();
            (job, Some(&sv.common), sv.common.json)
        }
        Cmd::Mult { local, dim } => {
            let mut job = JobSpec::new(Command::Mult);
            apply_local(&mut job, local);
            job.dim = *dim;
            (job, Some(&local.common), local.common.json)
        }
        Cmd::SegreNumbers(local) => {
            let mut job = JobSpec::new(Command::SegreNumbers);
            apply_local(&mut job, local);
            (job, Some(&local.common), local.common.json)
        }
        Cmd::Gysin {
            ambient,
            twists,
            class,
            json,
        } => {
            let mut job = JobSpec::new(Command::Gysin);
            job.ambient = Some(*ambient);
            job.twists = twists.clone();
            job.class = class.clone();
            (job, None, *json)
        }
    }
}

fn execute(cmd: &Cmd) -> Result<(), Error> {
    let (job, common, json) = build(cmd);
    let input = common.map(|c| InputFile::read(&c.input)).transpose()?;
    let report = app::run(&job, input.as_ref())?;
    if json {
        println!("{}", report.to_json_string());
    } else {
        print!("{}", report.table);
    }
    report.into_result().map(|_| ())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("segrekit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
