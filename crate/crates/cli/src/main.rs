mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mixshuffle", version, about = "Exact mixable shuffle and Rota-Baxter algebra computations")]
pub struct Cli {
    /// Coefficient ring: Q, Z, Fp, Zp, or an explicit F_p / Z/p^N.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Prime for Fp / Zp and for the p-dependent generator sets.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Precision N of Z/p^N.
    #[arg(long, global = true, default_value_t = 8)]
    pub precision: u32,
    /// Weight, as an exact literal such as 1, -1 or 5/3.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    /// Semigroup: free:x,y  set:a,b  monoid:x  mu:p[,k]  idem:<file>, inline JSON or a JSON file.
    /// Defaults to free:x, or monoid:x for `rb`.
    #[arg(long, global = true)]
    pub sg: Option<String>,
    #[arg(long, global = true, default_value_t = 4)]
    pub deg: usize,
    /// Word-length bound; defaults to --deg.
    #[arg(long, global = true)]
    pub len: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print ⊗ as (x) and avoid other non-ASCII symbols.
    #[arg(long, global = true)]
    pub ascii: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mixable shuffle product of two words.
    Mul { u: String, v: String },
    /// Lyndon words up to the bounds, grouped by degree.
    Lyndon,
    /// Chen-Fox-Lyndon factorization of a word.
    Cfl { word: String },
    /// One of the Lyndon-derived generating sets.
    Gens {
        #[arg(value_enum)]
        set: GenSet,
    },
    /// Free commutative Rota-Baxter algebra operations on pure tensors.
    Rb {
        #[command(subcommand)]
        op: RbOp,
    },
    /// Check a structure theorem up to the bounds.
    Verify {
        /// radford, msq, psh, pmsh, isomor, intfr, dirsum, rbl, rbafp1..4, rbazp, rbaz, props
        id: String,
        /// With intfr: `lyndon` uses Lyndon words as integral generators (expected to fail).
        #[arg(long)]
        gens: Option<String>,
        /// With dirsum: number of nested alphabets.
        #[arg(long, default_value_t = 3)]
        alphabets: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenSet {
    L,
    El,
    Tl,
    Tel,
    Tl1,
    Tl2,
    Tel1,
    Tel2,
    Eettl,
}

#[derive(Subcommand, Debug)]
pub enum RbOp {
    /// Product of two pure tensors such as `x⊗x` and `1⊗x²`.
    Mul { a: String, b: String },
    /// The operator P(a) = 1⊗a.
    #[command(name = "P")]
    P { a: String },
    /// Both sides of the Rota-Baxter identity for two pure tensors.
    CheckIdentity { a: String, b: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            println!("{}", out.text.trim_end_matches('\n'));
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
