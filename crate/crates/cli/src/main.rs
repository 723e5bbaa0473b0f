mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Kottwitz-Rapoport strata of Siegel modular varieties with parahoric
/// level, together with their boundary incidence.
#[derive(Parser, Debug)]
#[command(name = "siegel-kr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The admissible set in the double quotient, with lengths and covers.
    Adm(TypeArgs),
    /// Strata of the minimal compactification and their incidence.
    Strata {
        #[command(flatten)]
        ty: TypeArgs,
        /// Emit Graphviz instead of a listing.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Iwahori-Hecke algebra computations.
    Hecke {
        #[command(subcommand)]
        command: HeckeCommand,
    },
    /// Levi constituents of `H^*(Lie N, V_λ)` for a flag.
    Kostant {
        #[arg(long)]
        g: usize,
        /// Flag dimensions, increasing, e.g. `1,2`.
        #[arg(long)]
        flag: String,
        /// Highest weight `a1,..,ag;b`.
        #[arg(long, default_value = "")]
        highest: String,
        #[arg(long)]
        json: bool,
    },
    /// The trace table, one row per stratum.
    Trace(TraceArgs),
    /// Run the oracle cross-checks.
    Selftest {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=3))]
        g: u64,
    },
}

#[derive(Args, Debug)]
struct TypeArgs {
    #[arg(long)]
    g: usize,
    /// Parahoric type as a subset of `1..g`, e.g. `1,2`. Defaults to Iwahori.
    #[arg(long)]
    parahoric: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum HeckeCommand {
    /// The central element `z_μ` for the minuscule coweight.
    Zmu {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value_t = Basis::T)]
        basis: Basis,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    /// Standard basis `T_w`.
    T,
    /// Kazhdan-Lusztig basis `C'_w`, with the multiplicities `m_w`.
    Kl,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Highest weight `a1,..,ag;b`. Defaults to the trivial weight.
    #[arg(long, default_value = "")]
    highest: String,
    /// Central weight `a` of the coefficient system.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    weight: i64,
    /// Frobenius power.
    #[arg(long, default_value_t = 1)]
    r: u64,
    /// Residue characteristic.
    #[arg(long, alias = "p")]
    q: u64,
    /// `t1,..,t2g;nu` with rational entries. Defaults to the identity.
    #[arg(long)]
    gamma0: Option<String>,
    /// Prime-to-p level.
    #[arg(long, default_value_t = 3)]
    level: u64,
    /// Number of flag orbits for a dimension sequence, e.g. `1,2=3`. Repeatable.
    #[arg(long = "flag-mult")]
    flag_mult: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
