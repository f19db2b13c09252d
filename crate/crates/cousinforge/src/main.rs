use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cousinforge::cache::Cache;
use cousinforge::commands::{OrderName, SignName};
use cousinforge::verify::{Suite, DEFAULT_SEED};
use cousinforge::{CliError, CliResult, Command, Outcome, Settings, TaskFile};

#[derive(Parser)]
#[command(
    name = "cousinforge",
    version,
    about = "Exact local cohomology, arc tangents and cyclic homology"
)]
struct Cli {
    /// Emit machine-readable JSON records.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum)]
    order: Option<OrderArg>,
    /// Power bound for the radical certificate used by boundaries.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    boundary_sign: Option<String>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Args)]
struct ArcArgs {
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    f1: String,
    #[arg(long, allow_hyphen_values = true)]
    g: String,
    #[arg(long, allow_hyphen_values = true)]
    g1: String,
}

#[derive(Subcommand)]
enum Sub {
    /// Tangent class of an arc of divisors (f + f1*ε, g + g1*ε).
    TangentDivisor(ArcArgs),
    /// Tangent class of an arc of zero-cycles given by (u + u1*ε, v + v1*ε).
    TangentCycle {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        u1: String,
        #[arg(long, allow_hyphen_values = true)]
        v1: String,
    },
    /// Cousin boundary of a printed H¹ class at a point.
    Boundary {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Checks that the tangent square commutes for a divisor arc.
    CheckSquare {
        #[command(flatten)]
        arc: ArcArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Tame symbol of two rational functions in t at a place.
    Tame {
        #[arg(long, allow_hyphen_values = true)]
        place: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Product of all tame symbols of f and g.
    Reciprocity {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Reduced Gröbner basis, optionally with an ideal membership test.
    Gb {
        /// Generators; put `--` first if one starts with a minus sign.
        #[arg(required = true)]
        generators: Vec<String>,
        #[arg(long, default_value = "x,y")]
        vars: String,
        #[arg(long, allow_hyphen_values = true)]
        member: Option<String>,
    },
    /// Relative Hochschild, cyclic and negative cyclic homology.
    #[command(subcommand)]
    Cyclic(CyclicSub),
    /// Runs the certification battery.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Runs a JSON task file.
    Run { file: PathBuf },
}

#[derive(Args)]
struct SliceArgs {
    #[arg(long)]
    theory: String,
    #[arg(long)]
    base: String,
    #[arg(long, default_value_t = 1)]
    thick: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand)]
enum CyclicSub {
    Rank(SliceArgs),
    Eigen {
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long)]
        i: usize,
    },
    Thickening {
        #[arg(long, default_value = "Q")]
        base: String,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_d: usize,
    },
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "s41")]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| format!("unknown suite '{s}'"))
}

fn settings(cli: &Cli) -> CliResult<Settings> {
    Ok(Settings {
        order: match cli.order {
            Some(OrderArg::Lex) => OrderName::Lex,
            Some(OrderArg::Grevlex) | None => OrderName::Grevlex,
        },
        max_degree: cli.max_degree,
        boundary_sign: match &cli.boundary_sign {
            Some(s) => SignName::parse(s)?,
            None => SignName::Plus,
        },
        cache_dir: cli.cache_dir.clone(),
    })
}

fn command(sub: Sub) -> Command {
    match sub {
        Sub::TangentDivisor(a) => Command::TangentDivisor {
            f: a.f,
            f1: a.f1,
            g: a.g,
            g1: a.g1,
        },
        Sub::TangentCycle { u, v, u1, v1 } => Command::TangentCycle { u, v, u1, v1 },
        Sub::Boundary { class, point } => Command::Boundary {
            class,
            point,
            power_bound: None,
        },
        Sub::CheckSquare { arc, point, seed } => Command::CheckSquare {
            f: arc.f,
            f1: arc.f1,
            g: arc.g,
            g1: arc.g1,
            point,
            seed,
        },
        Sub::Tame { place, f, g } => Command::Tame { place, f, g },
        Sub::Reciprocity { f, g } => Command::Reciprocity { f, g },
        Sub::Gb {
            generators,
            vars,
            member,
        } => Command::Gb {
            generators,
            vars,
            member,
        },
        Sub::Cyclic(CyclicSub::Rank(s)) => Command::CyclicRank {
            theory: s.theory,
            base: s.base,
            thick: s.thick,
            n: s.n,
            d: s.d,
        },
        Sub::Cyclic(CyclicSub::Eigen { slice: s, i }) => Command::CyclicEigen {
            theory: s.theory,
            base: s.base,
            thick: s.thick,
            n: s.n,
            d: s.d,
            i,
        },
        Sub::Cyclic(CyclicSub::Thickening {
            base,
            j,
            max_n,
            max_d,
        }) => Command::CyclicThickening {
            base,
            j,
            max_n,
            max_d,
        },
        Sub::Cyclic(CyclicSub::Verify { suite, seed }) | Sub::Verify { suite, seed } => {
            Command::Verify { suite, seed }
        }
        Sub::Run { .. } => unreachable!("task files are handled separately"),
    }
}

fn print(outcome: &Outcome, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome.record).unwrap_or_default()
        );
    } else {
        print!("{}", outcome.human);
        if !outcome.human.ends_with('\n') {
            println!();
        }
    }
}

fn fail(e: &CliError) -> u8 {
    eprintln!("error: {e}");
    e.exit_code() as u8
}

fn run_tasks(file: &Path, cli: &Cli, base: Settings) -> CliResult<u8> {
    let tasks = TaskFile::load(file)?;
    // Flags given on the command line win over the file's settings.
    let mut s = tasks.settings.clone();
    if cli.order.is_some() {
        s.order = base.order;
    }
    if cli.max_degree.is_some() {
        s.max_degree = base.max_degree;
    }
    if cli.boundary_sign.is_some() {
        s.boundary_sign = base.boundary_sign;
    }
    if cli.cache_dir.is_some() {
        s.cache_dir = base.cache_dir;
    }
    let cache = Cache::resolve(s.cache_dir.as_deref());
    let results = tasks.run(&s, &cache);
    let mut code = 0u8;
    let mut records = Vec::new();
    for (cmd, r) in tasks.commands.iter().zip(&results) {
        match r {
            Ok(o) => {
                if !o.truth {
                    code = code.max(1);
                }
                if cli.json {
                    records.push(o.record.clone());
                } else {
                    println!("== {}", cmd.name());
                    print(o, false);
                }
            }
            Err(e) => {
                code = code.max(e.exit_code() as u8);
                if cli.json {
                    records.push(serde_json::json!({
                        "command": cmd.name(),
                        "error": e.to_string(),
                        "exit-code": e.exit_code(),
                    }));
                } else {
                    println!("== {}", cmd.name());
                    println!("error: {e}");
                }
            }
        }
    }
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&records).unwrap_or_default()
        );
    }
    Ok(code)
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    let s = match settings(&cli) {
        Ok(s) => s,
        Err(e) => return ExitCode::from(fail(&e)),
    };
    let sub = std::mem::replace(
        &mut cli.command,
        Sub::Run {
            file: PathBuf::new(),
        },
    );
    if let Sub::Run { file } = &sub {
        return ExitCode::from(run_tasks(file, &cli, s).unwrap_or_else(|e| fail(&e)));
    }
    let cache = Cache::resolve(s.cache_dir.as_deref());
    match command(sub).execute(&s, &cache) {
        Ok(o) => {
            print(&o, cli.json);
            ExitCode::from(if o.truth { 0 } else { 1 })
        }
        Err(e) => ExitCode::from(fail(&e)),
    }
}
