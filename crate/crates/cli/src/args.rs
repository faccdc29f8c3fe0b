//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ppmod",
    version,
    about = "Model theory of finitely generated abelian groups at desk scale"
)]
pub struct Cli {
    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Worker threads for the model sweeps (0 = all cores). Output does not
    /// depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    #[value(alias = "structured", alias = "json-like-structured")]
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solution set of a pp-formula, or membership of a tuple in it.
    Eval(EvalArgs),
    /// The invariant Inv(M, phi, psi) = [phi(M) : psi(M)].
    Inv(InvArgs),
    /// Elementary equivalence of two groups.
    Equiv(PairArgs),
    /// The alpha/beta invariant profile of a group.
    Profile(ProfileArgs),
    /// Whether a subgroup is pure, with a complement when it is.
    Pure(PureArgs),
    /// Whether the first group embeds purely into the second.
    Embed(PairArgs),
    /// Pure-injective hull of a finite group.
    Hull(GroupArgs),
    /// Joint embedding of two groups into their direct sum.
    Jointembed(PairArgs),
    /// Amalgam of two pure extensions of a finite base.
    Amalgamate(AmalgamateArgs),
    /// pp-type equality of two elements over parameters, or Galois-type
    /// equality across two extensions with --left/--right.
    Typeeq(TypeeqArgs),
    /// Least common solution of pp-conditions with parameters.
    Solve(SolveArgs),
    /// Models of a theory up to a given order.
    Models(ModelsArgs),
    /// Joint embedding property at scale.
    Jep(SweepArgs),
    /// Amalgamation over a finite base at scale.
    Ap(ApArgs),
    /// Least model into which every small model embeds purely.
    Universal(UniversalArgs),
    /// Checks that M + U is universal over M at scale.
    #[command(name = "universal-over")]
    UniversalOver(UniversalOverArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Group literal such as "Z^2 + Z/4 + Z/6".
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub phi: String,
    /// Elements "(a,b) (c,d)" forming the tuple to test.
    #[arg(long)]
    pub tuple: Option<String>,
}

#[derive(Debug, Args)]
pub struct InvArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub phi: String,
    #[arg(long)]
    pub psi: String,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub group: String,
    /// The second group.
    #[arg(long)]
    pub other: String,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub group: String,
    /// Comma-separated primes; default: the primes of the exponent and 2.
    #[arg(long)]
    pub primes: Option<String>,
}

#[derive(Debug, Args)]
pub struct PureArgs {
    #[arg(long)]
    pub group: String,
    /// Generators of the subgroup, e.g. "(1,0) (0,2)".
    #[arg(long)]
    pub sub: String,
}

#[derive(Debug, Args)]
pub struct AmalgamateArgs {
    /// The base group.
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    /// Matrix of the left embedding, rows separated by ';' (default: a
    /// summand embedding).
    #[arg(long)]
    pub i1: Option<String>,
    #[arg(long)]
    pub i2: Option<String>,
    /// Require the amalgam to be a model of this theory.
    #[arg(long)]
    pub theory: Option<String>,
}

#[derive(Debug, Args)]
pub struct TypeeqArgs {
    /// The group (or, with --left/--right, the common base).
    #[arg(long)]
    pub group: String,
    /// Parameter elements.
    #[arg(long, default_value = "")]
    pub params: String,
    #[arg(long)]
    pub b1: String,
    #[arg(long)]
    pub b2: String,
    /// First extension of the base; b1 lives here.
    #[arg(long, requires = "right")]
    pub left: Option<String>,
    /// Second extension of the base; b2 lives here.
    #[arg(long, requires = "left")]
    pub right: Option<String>,
    #[arg(long)]
    pub i1: Option<String>,
    #[arg(long)]
    pub i2: Option<String>,
    /// Amalgam search bound (Galois mode) or automorphism search budget.
    #[arg(long)]
    pub bound: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub group: String,
    /// A condition "formula @ param ...", repeatable.
    #[arg(long = "cond")]
    pub conditions: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ModelsArgs {
    /// Theory file; the bundled names ex-lt6.thy, torsion-free.thy and
    /// all-abelian.thy are always available.
    #[arg(long)]
    pub theory: String,
    #[arg(long)]
    pub max_order: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub theory: String,
    #[arg(long, required_unless_present = "groups")]
    pub max_order: Option<u64>,
    /// Restrict the sweep to the models among these groups, separated by ';'.
    #[arg(long, conflicts_with = "max_order")]
    pub groups: Option<String>,
    /// Largest order of a candidate common extension.
    #[arg(long)]
    pub bound: u64,
}

#[derive(Debug, Args)]
pub struct ApArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, default_value = "0")]
    pub base: String,
}

#[derive(Debug, Args)]
pub struct UniversalArgs {
    #[arg(long)]
    pub theory: String,
    #[arg(long)]
    pub embed_bound: u64,
    #[arg(long)]
    pub bound: u64,
}

#[derive(Debug, Args)]
pub struct UniversalOverArgs {
    #[arg(long)]
    pub theory: String,
    /// The base M.
    #[arg(long)]
    pub group: String,
    /// The model U; default: the universal model at scale --embed-bound
    /// found below --bound.
    #[arg(long)]
    pub universal: Option<String>,
    #[arg(long)]
    pub embed_bound: u64,
    #[arg(long, default_value_t = 100)]
    pub bound: u64,
}
