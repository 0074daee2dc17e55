use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use eqalg::error::Error;
use eqalg::report::{Report, Status};
use serde_json::{json, Value};

mod commands;

#[derive(Parser)]
#[command(name = "eqalg", version, about = "Exact Mackey and Tambara functor computations over finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Write the JSON output here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Omit the timestamp so that reruns are byte-identical.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Minimum degree of the grids used for polynomial identities.
    #[arg(long, global = true)]
    grid_bound: Option<usize>,
    /// Maximal depth of the localization colimit.
    #[arg(long, global = true, default_value_t = eqalg::tambara::DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Finite groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Finite G-sets.
    #[command(subcommand)]
    Gset(GsetCmd),
    /// Bispans of G-sets.
    #[command(subcommand)]
    Bispan(BispanCmd),
    /// Mackey functors.
    #[command(subcommand)]
    Mackey(MackeyCmd),
    /// Tambara functors.
    #[command(subcommand)]
    Tambara(TambaraCmd),
    /// Kähler differentials of R over a base.
    Kahler {
        ring: PathBuf,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Genuine derivations of R over a base with values in a module.
    Derivations {
        ring: PathBuf,
        module: PathBuf,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Check suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Clone, Debug)]
pub struct BaseArgs {
    /// The base S; the Burnside functor when omitted.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Level maps of S → R as `{label: matrix}`; required unless S is the Burnside functor or R itself.
    #[arg(long)]
    structure: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Validates a group table and lists its subgroups.
    Check { group: PathBuf },
}

#[derive(Subcommand)]
enum GsetCmd {
    /// Decomposes a G-set into orbits.
    Orbits { gset: PathBuf },
}

#[derive(Subcommand)]
enum BispanCmd {
    /// The composite `p ∘ q`.
    Compose { p: PathBuf, q: PathBuf },
    /// Which subcategories the bispan lies in.
    Flags { p: PathBuf },
}

#[derive(Subcommand)]
enum MackeyCmd {
    /// Checks the Mackey functor axioms.
    Check { mackey: PathBuf },
    /// The box product of two Mackey functors.
    Box { m: PathBuf, n: PathBuf },
}

#[derive(Subcommand)]
enum TambaraCmd {
    /// Checks the Green and Tambara axioms, including the norm-of-sum decomposition.
    Check { ring: PathBuf },
    /// The square-zero extension R ⋉ M and its laws.
    Squarezero { ring: PathBuf, module: PathBuf },
    /// Inverts an element of the top level.
    Localize {
        ring: PathBuf,
        /// Coordinates at the top level, as `[1,0]` or `1,0`.
        #[arg(long)]
        element: String,
    },
    /// Restricts to a subgroup, given by its label.
    Restrict {
        ring: PathBuf,
        #[arg(long)]
        subgroup: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Runs every check suite for one group.
    All {
        /// A group name such as c2, c4, c2xc2 or s3.
        #[arg(long)]
        suite: String,
    },
    /// Enumerates maps C → R ⋉ M over R and S and compares them with derivations.
    SquareZero {
        c: PathBuf,
        module: PathBuf,
        /// R; C itself when omitted.
        #[arg(long)]
        over: Option<PathBuf>,
        /// Level maps of C → R as `{label: matrix}`; required when R is not C.
        #[arg(long)]
        augmentation: Option<PathBuf>,
        #[command(flatten)]
        base: BaseArgs,
    },
}

/// What a command produced: a result object and the checks it ran.
pub struct Outcome {
    pub result: Value,
    pub report: Report,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Group(GroupCmd::Check { .. }) => "group check",
        Command::Gset(GsetCmd::Orbits { .. }) => "gset orbits",
        Command::Bispan(BispanCmd::Compose { .. }) => "bispan compose",
        Command::Bispan(BispanCmd::Flags { .. }) => "bispan flags",
        Command::Mackey(MackeyCmd::Check { .. }) => "mackey check",
        Command::Mackey(MackeyCmd::Box { .. }) => "mackey box",
        Command::Tambara(TambaraCmd::Check { .. }) => "tambara check",
        Command::Tambara(TambaraCmd::Squarezero { .. }) => "tambara squarezero",
        Command::Tambara(TambaraCmd::Localize { .. }) => "tambara localize",
        Command::Tambara(TambaraCmd::Restrict { .. }) => "tambara restrict",
        Command::Kahler { .. } => "kahler",
        Command::Derivations { .. } => "derivations",
        Command::Verify(VerifyCmd::All { .. }) => "verify all",
        Command::Verify(VerifyCmd::SquareZero { .. }) => "verify square-zero",
    }
}

fn dispatch(cmd: &Command, c: &Common) -> eqalg::error::Result<Outcome> {
    use commands as k;
    match cmd {
        Command::Group(GroupCmd::Check { group }) => k::group_check(group),
        Command::Gset(GsetCmd::Orbits { gset }) => k::gset_orbits(gset),
        Command::Bispan(BispanCmd::Compose { p, q }) => k::bispan_compose(p, q),
        Command::Bispan(BispanCmd::Flags { p }) => k::bispan_flags(p),
        Command::Mackey(MackeyCmd::Check { mackey }) => k::mackey_check(mackey),
        Command::Mackey(MackeyCmd::Box { m, n }) => k::mackey_box(m, n),
        Command::Tambara(TambaraCmd::Check { ring }) => k::tambara_check(ring, c.grid_bound),
        Command::Tambara(TambaraCmd::Squarezero { ring, module }) => k::tambara_squarezero(ring, module, c.grid_bound),
        Command::Tambara(TambaraCmd::Localize { ring, element }) => k::tambara_localize(ring, element, c.depth),
        Command::Tambara(TambaraCmd::Restrict { ring, subgroup }) => k::tambara_restrict(ring, subgroup),
        Command::Kahler { ring, base } => k::kahler(ring, base, c.grid_bound),
        Command::Derivations { ring, module, base } => k::derivations(ring, module, base, c.grid_bound),
        Command::Verify(VerifyCmd::All { suite }) => k::verify_all(suite, c),
        Command::Verify(VerifyCmd::SquareZero { c: ring, module, over, augmentation, base }) => {
            k::verify_square_zero(ring, module, over.as_deref(), augmentation.as_deref(), base, c.grid_bound)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Undecided(_) => 3,
        _ => 1,
    }
}

fn emit(value: &Value, output: Option<&PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
    match output {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let mut out = json!({ "command": name });
    if !cli.common.no_timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        out["timestamp"] = json!(secs);
    }
    let code = match dispatch(&cli.command, &cli.common) {
        Ok(o) => {
            let report = o.report.sorted();
            let status = report.status();
            out["status"] = json!(status);
            out["result"] = o.result;
            out["report"] = serde_json::to_value(&report).expect("reports serialize");
            match status {
                Status::Pass => 0,
                Status::Fail => 2,
                Status::Undecided => 3,
            }
        }
        Err(e) => {
            out["status"] = json!("error");
            out["error"] = json!(e.to_string());
            eprintln!("eqalg {name}: {e}");
            exit_code_for(&e)
        }
    };
    if let Err(e) = emit(&out, cli.common.output.as_ref()) {
        eprintln!("eqalg: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
