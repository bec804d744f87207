use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use facthom_core::linalg::Field;

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "Q" | "q" => Ok(Field::Rational),
        _ => {
            let p = s
                .strip_prefix("Fp:")
                .or_else(|| s.strip_prefix("fp:"))
                .ok_or_else(|| format!("expected Q or Fp:<prime>, got `{s}`"))?;
            let p: u64 = p.parse().map_err(|_| format!("bad modulus `{p}`"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// Exact factorization homology of framed 1-manifolds.
#[derive(Debug, Parser)]
#[command(name = "facthom", version)]
pub struct Cli {
    /// Coefficient field: Q or Fp:<prime>.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    pub field: Field,
    /// Largest homological degree requested.
    #[arg(long, global = true, default_value_t = 4)]
    pub maxdeg: usize,
    /// Weight bound (required for infinite presets; defaults to 4 where a bound is needed).
    #[arg(long, global = true)]
    pub maxweight: Option<u32>,
    /// One JSON object per result line.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; results keep request order.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a DSL program (.fh).
    Run { file: PathBuf },
    /// Hochschild homology through the cyclic bar complex.
    Hochschild(AlgebraArgs),
    /// Factorization homology of a circle, an interval or two circles.
    Facthom(FacthomArgs),
    /// Cardinality filtration layers and their consistency checks.
    Layers(AlgebraArgs),
    /// Bar coalgebra and Koszul dual algebra.
    Koszul(AlgebraArgs),
    /// Verifiers.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Cyclic bar against A ⊗_{A⊗A^op} A.
    Excision(AlgebraArgs),
    /// Configuration-space formula against the tensor preset.
    Free(SpaceArgs),
    /// Free graded-commutative count against the sym preset.
    Sym(SpaceArgs),
    /// Dual Hochschild homology against coHochschild of the bar coalgebra.
    Pkd(AlgebraArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresetName {
    Tensor,
    Sym,
    Exterior,
    Truncpoly,
    Squarezero,
}

/// Picks an algebra: a preset, or a random algebra when `--random` is given.
#[derive(Clone, Debug, Args)]
pub struct AlgebraArgs {
    #[arg(long, value_enum, default_value = "squarezero")]
    pub preset: PresetName,
    /// Number of generators (presets) or total dimension (random).
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Degree of the generators.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub deg: i64,
    /// Nilpotency order for truncpoly.
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    /// Seed of a random associative algebra; overrides --preset.
    #[arg(long)]
    pub random: Option<u64>,
    /// Give the random algebra a weight grading.
    #[arg(long, requires = "random")]
    pub weighted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ManifoldShape {
    Circle,
    Interval,
    TwoCircles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Boundary {
    Regular,
    Aug,
}

#[derive(Clone, Debug, Args)]
pub struct FacthomArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long, value_enum, default_value = "circle")]
    pub manifold: ManifoldShape,
    /// Boundary modules of an interval.
    #[arg(long, value_enum, default_value = "regular")]
    pub boundary: Boundary,
}

/// A graded space V with `dim` basis vectors in degree `deg`.
#[derive(Clone, Debug, Args)]
pub struct SpaceArgs {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub deg: i64,
}
