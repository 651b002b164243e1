use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mixhom", version, about = "Exact mixed, cyclic and deformed homology of finite-dimensional mixed complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a complex in the JSON file format.
    Build(Common),
    /// Homology of (D, b) or (D, d).
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = DirectionArg::Chain)]
        direction: DirectionArg,
    },
    /// Homology of the total complex of D / im xi, with d or the deformed coboundary.
    MixedHomology {
        #[command(flatten)]
        common: Common,
        /// Defaults to `upsilon` when `--c` is given and to `d` otherwise.
        #[arg(long, value_enum)]
        cob: Option<CobArg>,
        #[arg(long, value_enum, default_value_t = GradingArg::Natural)]
        grading: GradingArg,
    },
    /// Whether D -> D / im xi is a chain quasi-isomorphism.
    Skyscraper {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = CobArg::D)]
        cob: CobArg,
    },
    /// Run an exact verification.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        common: Common,
    },
    /// List the builtin complexes.
    Examples {
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Both short exact sequences relating mixed and deformed homology.
    Theorem,
    /// Expressions of Xi through xi and the quadratic relation between them.
    #[value(alias = "relazion")]
    Deformation,
    /// Karoubi operator identities for the cyclic sequence.
    #[value(alias = "cuqu")]
    Karoubi,
    /// The projector onto ker xibar^2 in D / im Xi.
    #[value(alias = "pbar")]
    Projector,
    /// Simplified operators on ker xibar^2.
    #[value(name = "reduced-model", alias = "imishom")]
    ReducedModel,
    /// Short exact sequence of total complexes on the reduced model.
    #[value(name = "short-exact", alias = "seslemma")]
    ShortExact,
    /// d and Upsilon give isomorphic homology on D~ / im b~ and im b~.
    #[value(name = "image-iso", alias = "imageiso")]
    ImageIso,
    /// Dimension formula for cyclic complexes.
    Corollary,
    /// Acyclicity and quasi-isomorphism statements used along the way.
    Lemmas,
    /// A cochain quasi-isomorphism that is not a mixed one.
    #[value(name = "cochain-vs-mixed")]
    CochainVsMixed,
    /// Every check that applies to the input.
    All,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem => "theorem",
            Check::Deformation => "deformation",
            Check::Karoubi => "karoubi",
            Check::Projector => "projector",
            Check::ReducedModel => "reduced-model",
            Check::ShortExact => "short-exact",
            Check::ImageIso => "image-iso",
            Check::Corollary => "corollary",
            Check::Lemmas => "lemmas",
            Check::CochainVsMixed => "cochain-vs-mixed",
            Check::All => "all",
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Drop rows above the trusted degree of a truncated complex.
    #[arg(long)]
    pub trusted_only: bool,
    /// Highest total degree to compute.
    #[arg(long)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Builtin complex; see `mixhom examples`.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub builtin: Option<String>,
    /// Complex in the JSON file format.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FieldArg::Q)]
    pub field: FieldArg,
    /// Characteristic for `--field Fp`.
    #[arg(long)]
    pub p: Option<u64>,
    /// Truncation degree of unbounded builtins.
    #[arg(long = "N")]
    pub top: Option<usize>,
    /// Parameter of the quantum plane and of the geometric sequence.
    #[arg(long)]
    pub q: Option<String>,
    /// Twist of the exterior algebra forms.
    #[arg(long, value_enum, default_value_t = SigmaArg::Id)]
    pub sigma: SigmaArg,
    /// Seed of the `random` builtin.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Dimensions of the `random` builtin, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Polynomial sequence deforming the coboundary.
    #[arg(long = "c", value_enum)]
    pub seq: Option<SeqArg>,
    /// Coefficients for `--c explicit`: polynomials separated by `;`,
    /// coefficients by `,`, constant term first.
    #[arg(long)]
    pub polys: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Fp")]
    Fp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqArg {
    Cyclic,
    One,
    Geometric,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SigmaArg {
    Id,
    SignFlip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Chain,
    Cochain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CobArg {
    D,
    #[value(alias = "Upsilon")]
    Upsilon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GradingArg {
    Natural,
    Parity,
}
