use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "rinfty", version, about = "Thompson-like groups, characters, and Reidemeister numbers")]
pub struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    /// `"<group> <action>"`, e.g. `"case gw"`.
    pub fn command_name(&self) -> String {
        let (group, action) = match &self.command {
            Command::Pl { action } => ("pl", format!("{action:?}")),
            Command::F { action } => ("f", format!("{action:?}")),
            Command::Fbr { action } => ("fbr", format!("{action:?}")),
            Command::Lm { action } => ("lm", format!("{action:?}")),
            Command::Reid { action } => ("reid", format!("{action:?}")),
            Command::Case { action } => ("case", format!("{action:?}")),
            Command::Sigma { action } => ("sigma", format!("{action:?}")),
        };
        let head: String = action.chars().take_while(|c| c.is_alphanumeric()).collect();
        format!("{group} {}", kebab(&head))
    }
}

fn kebab(s: &str) -> String {
    let mut out = String::new();
    for (i, c) in s.chars().enumerate() {
        if c.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.extend(c.to_lowercase());
    }
    out
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Piecewise-linear homeomorphisms of [0, ell].
    Pl {
        #[command(subcommand)]
        action: PlAction,
    },
    /// Thompson's group F as reduced tree pairs.
    F {
        #[command(subcommand)]
        action: FAction,
    },
    /// Braided Thompson diagrams and braid words.
    Fbr {
        #[command(subcommand)]
        action: FbrAction,
    },
    /// Lodha-Moore groups acting on eventually periodic sequences.
    Lm {
        #[command(subcommand)]
        action: LmAction,
    },
    /// Fixed subgroups and Reidemeister numbers.
    Reid {
        #[command(subcommand)]
        action: ReidAction,
    },
    /// Worked examples with full pass/fail reports.
    Case {
        #[command(subcommand)]
        action: CaseAction,
    },
    /// Cayley-graph balls and nonnegative-character components.
    Sigma {
        #[command(subcommand)]
        action: SigmaAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum PlAction {
    /// `a ∘ b` (b applied first).
    Compose {
        /// PL literal `pl ell=.. breaks=[..] slopes=[..]`, tree pair `minus|plus`, or `x<n>`.
        #[arg(long = "map", num_args = 1, required = true)]
        maps: Vec<String>,
    },
    Invert {
        #[arg(long)]
        map: String,
    },
    /// Membership in G([0, ell]; A, P).
    Member {
        /// `"<ell> <A> <P>"`, e.g. `"1 Z[1/2] <2>"`.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        map: String,
    },
    /// Exponents of the slopes at both endpoints in the slope group.
    Char {
        #[arg(long)]
        map: String,
        /// Slope group, e.g. `<2>` or `<2,3>`.
        #[arg(long, default_value = "<2>")]
        slopes: String,
    },
    /// Image of a point.
    Eval {
        #[arg(long)]
        map: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FAction {
    /// `a · b`, acting as `a ∘ b`.
    Multiply { a: String, b: String },
    Reduce { a: String },
    Inverse { a: String },
    ToPl { a: String },
    FromPl { map: String },
    /// The two endpoint characters.
    Chars { a: String },
}

#[derive(Debug, Subcommand)]
pub enum FbrAction {
    /// Diagrams are `minus | braid | plus`, e.g. `(..) | s1 | (..)`.
    Multiply { a: String, b: String },
    Equivalent { a: String, b: String },
    Chars { a: String },
    /// Equality of braid words such as `s1 s2 s1'`.
    BraidEqual {
        #[arg(long)]
        strands: usize,
        a: String,
        b: String,
    },
    /// The named generators x0, x1, alpha, beta.
    Generators,
}

#[derive(Debug, Args)]
pub struct VariantArg {
    /// One of G, yG, Gy, yGy.
    #[arg(long, default_value = "G")]
    pub variant: String,
}

#[derive(Debug, Subcommand)]
pub enum LmAction {
    /// Image of an eventually periodic sequence `pre(period)`.
    Eval {
        #[command(flatten)]
        variant: VariantArg,
        /// Word such as `x(0) y(01)'`; the rightmost letter acts first.
        #[arg(long)]
        word: String,
        #[arg(long)]
        input: String,
    },
    /// Compares two words on every probe input up to a depth.
    Equal {
        #[command(flatten)]
        variant: VariantArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Checks the defining relations at addresses s and t.
    Relations {
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Restrict to one group; default checks all four.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Values of every character defined on the group.
    Chars {
        #[command(flatten)]
        variant: VariantArg,
        #[arg(long)]
        word: String,
    },
    /// Image in the rank-two quotient.
    Quotient {
        #[command(flatten)]
        variant: VariantArg,
        #[arg(long)]
        word: String,
    },
    /// Every relation instance with short addresses, in all four groups.
    Sweep {
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
}

#[derive(Debug, Args)]
pub struct AbelianArgs {
    /// Relation matrix; the group is Z^n modulo its column span.
    #[arg(long, conflicts_with = "moduli")]
    pub relations: Option<String>,
    /// Cyclic factors, comma separated; 0 stands for Z.
    #[arg(long)]
    pub moduli: Option<String>,
    /// Matrix of the automorphism on the generators.
    #[arg(long)]
    pub matrix: String,
}

#[derive(Debug, Subcommand)]
pub enum ReidAction {
    /// Smith normal form U·M·V = S.
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// Fixed subgroup of an automorphism of a finitely generated abelian group.
    Fix(AbelianArgs),
    /// Reidemeister number of such an automorphism.
    Number(AbelianArgs),
    /// Brute-force twisted classes on a finite group.
    Oracle {
        /// A group from the built-in list, e.g. S3 or C4xC2.
        #[arg(long, conflicts_with_all = ["table", "moduli"])]
        group: Option<String>,
        /// CSV multiplication table.
        #[arg(long, conflicts_with = "moduli")]
        table: Option<String>,
        /// Finite abelian group; compares the oracle with the closed form.
        #[arg(long, requires = "matrix")]
        moduli: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        /// Images of the group's generating set, comma separated; default is every automorphism.
        #[arg(long)]
        auto: Option<String>,
    },
    /// Runs the single-class and quotient checks over every group of order at most 16.
    Corpus,
    /// Fixed vector from an invariant pair of characters.
    Tecnico {
        /// Character rows, e.g. `[[-1,0],[0,1]]`.
        #[arg(long, requires = "matrix", conflicts_with = "case")]
        chars: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        /// A built-in case 0..=4 instead of explicit data.
        #[arg(long)]
        case: Option<usize>,
        /// With --case, act by the swap of the two characters.
        #[arg(long, requires = "case")]
        swap: bool,
    },
    /// Determinant of a characters-by-generators value matrix.
    Independence {
        #[arg(long, conflicts_with = "case")]
        values: Option<String>,
        #[arg(long)]
        case: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CaseAction {
    /// Crystallographic group with parameter b.
    Gw {
        #[arg(long, default_value_t = 2)]
        b: i64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Conjugation by [[3,1],[2,1]] on SL2(Z).
    Sl2 {
        #[arg(long, default_value_t = 1_000_000)]
        bound: i64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// An automorphism of F3 acting trivially on homology.
    CohenLustig,
    /// Generators of the groups G(p, q, r).
    Uncount {
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long, default_value = "3")]
        q: String,
        #[arg(long, default_value = "5")]
        r: String,
    },
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    /// `Z`, `Z^n`, `F`, `F-pl`, `GW:b`, or `LM:<variant>`.
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    /// Probe depth for Lodha-Moore element comparison.
    #[arg(long, default_value_t = 8)]
    pub lm_depth: usize,
}

#[derive(Debug, Subcommand)]
pub enum SigmaAction {
    /// Ball sizes by radius; with --char, also the nonnegative components.
    Ball {
        #[command(flatten)]
        group: SigmaArgs,
        #[arg(long = "char", allow_hyphen_values = true)]
        character: Option<String>,
    },
    /// Components of the subgraph where the character is nonnegative.
    Components {
        #[command(flatten)]
        group: SigmaArgs,
        #[arg(long = "char", allow_hyphen_values = true)]
        character: String,
    },
}
