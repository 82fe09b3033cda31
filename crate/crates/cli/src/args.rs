use clap::{Args, Parser, Subcommand, ValueEnum};

use fubini_park::{RestrictionSequence, RestrictionSet};

#[derive(Debug, Parser)]
#[command(name = "fubpark", version, about = "Restricted Fubini rankings and unit interval parking functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every member of a family, sorted; the count goes to stderr.
    Enumerate(EnumerateArgs),
    /// Count the members of a family.
    Count(CountArgs),
    /// Apply one of the maps to a JSON input.
    Map(MapArgs),
    /// Print a counting sequence for n = 0..=n-max.
    Sequence(SequenceArgs),
    /// Run the exhaustive cross-check suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Pf,
    Upf,
    Fr,
    Osp,
}

fn parse_set(s: &str) -> Result<RestrictionSet, String> {
    s.parse().map_err(|e: fubini_park::Error| e.to_string())
}

fn parse_seq(s: &str) -> Result<RestrictionSequence, String> {
    s.parse().map_err(|e: fubini_park::Error| e.to_string())
}

/// Family plus an optional restriction.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Restriction type: 1 (ranks / lucky cars), 2 (tie / block sizes),
    /// 3 (position vector / block sequence caps).
    #[arg(long = "type", value_parser = clap::value_parser!(u8).range(1..=3))]
    pub restriction_type: Option<u8>,
    /// Set for types 1 and 2: evens, odds, all, >=m, <=m or {a,b,...}.
    #[arg(long, value_parser = parse_set, allow_hyphen_values = true)]
    pub set: Option<RestrictionSet>,
    /// Sequence for type 3: "s1,...,sm;const:c" or "s1,...,sm;unbounded".
    #[arg(long, value_parser = parse_seq, allow_hyphen_values = true)]
    pub seq: Option<RestrictionSequence>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct CapArgs {
    /// Largest n for scans over all of [n]^n.
    #[arg(long, default_value_t = 7)]
    pub tuple_cap: usize,
    /// Largest n for enumeration of ordered set partitions.
    #[arg(long, default_value_t = 8)]
    pub osp_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Json,
    Lines,
    Csv,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = ListFormat::Lines)]
    pub format: ListFormat,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Formula,
    Enumerate,
    Both,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
    pub method: CountMethod,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bijection {
    Phi,
    Psi,
    Lambda,
    LambdaInv,
    Gamma,
    GammaInv,
    OspToFr,
    FrToOsp,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long, value_enum)]
    pub bijection: Bijection,
    /// A tuple `[1,1,2]`, a partition `[[1,3],[2]]`, an exceedance pointer
    /// `{"perm":[2,1],"index":1}`, or a record printed by an earlier `map`.
    #[arg(long)]
    pub input: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceFormat {
    Bfile,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceVia {
    /// Closed-form sums.
    Formula,
    /// Coefficients of the power series sum over k in S of (e^x - 1)^k (type 1 only).
    Egf,
    /// Closed rational generating functions (type 1, non-explicit sets).
    ClosedEgf,
    /// Direct enumeration, subject to the caps.
    Enumerate,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = SequenceFormat::Bfile)]
    pub format: SequenceFormat,
    #[arg(long, value_enum, default_value_t = SequenceVia::Formula)]
    pub via: SequenceVia,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    FubiniOffByOne,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Plant a known mistake to check that the suite catches it.
    #[arg(long, value_enum)]
    pub inject_fault: Option<FaultArg>,
    #[command(flatten)]
    pub caps: CapArgs,
}
