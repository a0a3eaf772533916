use clap::{Args, Parser, Subcommand, ValueEnum};
use parkfn::gf::{Family, Identity};
use parkfn::{Params, SizeCap, Statistic};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "parkfn", version, about = "Parking functions, forests and their generating functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form size of a family.
    Count,
    /// Every member of a family as JSON lines, in lexicographic order.
    Enumerate,
    /// Uniform samples as JSON lines after one metadata line.
    Sample,
    /// Statistics of parking functions or forests read from --input or stdin.
    Stats,
    /// Closed form against enumeration for one identity or the whole desk grid.
    Verify {
        /// Check every identity on its desk grid.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Grid::Desk)]
        grid: Grid,
    },
    /// Apply a bijection or involution to objects from --input or stdin.
    Bijection,
    /// Distribution of one statistic, exhaustive or sampled with --samples.
    Dist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Desk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Map {
    Theta,
    Rho,
    ThetaHat,
    RhoHat,
    Phi,
    PhiInv,
    ColoredPhi,
    ColoredPhiInv,
    Rho1b,
    RhoKk,
    Rho1bHat,
    RhoKkHat,
}

#[derive(Debug, Args)]
pub struct Opts {
    #[arg(long, global = true)]
    pub m: Option<u32>,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true)]
    pub a: Option<u32>,
    #[arg(long, global = true)]
    pub b: Option<u32>,
    /// Shorthand for --a k --b k.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// pf, abpf or forest. Defaults to abpf when --a, --b or --k is given.
    #[arg(long, global = true)]
    pub family: Option<Family>,
    /// slev, lel, ones, count:v, lel:s, lead:k:j, deg0, degp or degp:i.
    #[arg(long, global = true)]
    pub statistic: Option<Statistic>,
    #[arg(long, global = true)]
    pub identity: Option<Identity>,
    #[arg(long, global = true, value_enum)]
    pub map: Option<Map>,
    /// Vertex whose parent plays the role of p in rho and rho_hat.
    #[arg(long, global = true)]
    pub vertex: Option<u32>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest tuple box an enumeration may scan.
    #[arg(long, global = true, env = "PARKFN_CAP")]
    pub cap: Option<u128>,
    /// Worker threads for parallel enumeration and sampling.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// One object, in parenthesized or JSON form. Stdin is read when absent.
    #[arg(long, global = true)]
    pub input: Option<String>,
}

impl Opts {
    pub fn cap(&self) -> SizeCap {
        self.cap.map(SizeCap).unwrap_or_default()
    }

    /// `(a, b)` when any (a,b) flag is present.
    pub fn ab(&self) -> Result<Option<(u32, u32)>, CliError> {
        match (self.a, self.b, self.k) {
            (None, None, None) => Ok(None),
            (Some(a), Some(b), None) => Ok(Some((a, b))),
            (None, None, Some(k)) => Ok(Some((k, k))),
            (Some(a), Some(b), Some(k)) if a == k && b == k => Ok(Some((k, k))),
            _ => Err(CliError::Usage("give both --a and --b, or --k alone".into())),
        }
    }

    pub fn params(&self) -> Result<Params, CliError> {
        let m = self.m.ok_or_else(|| CliError::Usage("--m is required".into()))?;
        match self.ab()? {
            Some((a, b)) => {
                if self.n.is_some() {
                    return Err(CliError::Usage("--n does not apply to (a,b) parameters".into()));
                }
                Ok(Params::ab(a, b, m)?)
            }
            None => {
                let n = self.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
                Ok(Params::classical(m, n)?)
            }
        }
    }

    pub fn family(&self) -> Result<Family, CliError> {
        let ab = self.ab()?.is_some();
        match (self.family, ab) {
            (None, false) => Ok(Family::Pf),
            (None, true) | (Some(Family::Abpf), true) => Ok(Family::Abpf),
            (Some(f @ (Family::Pf | Family::Forest)), false) => Ok(f),
            (Some(f), _) => Err(CliError::Usage(format!(
                "family {f} does not match the given parameters"
            ))),
        }
    }

    pub fn require_samples(&self) -> Result<usize, CliError> {
        self.samples.ok_or_else(|| CliError::Usage("--samples is required".into()))
    }
}
