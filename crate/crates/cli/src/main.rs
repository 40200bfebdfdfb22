use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Output};

#[derive(Parser)]
#[command(name = "slcc", version, about = "Exact algebra of special linear characteristic classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, normalize and combine polynomials.
    Poly(PolyArgs),
    /// Elementary and complete symmetric polynomials, and g_i.
    Symfunc(SymfuncArgs),
    /// Weyl group data and invariant generators.
    Weyl(WeylArgs),
    /// Witness for e1^{2n} (B) or e1^{2n-1} (D) in the invariant ideal.
    Witness(GroupArgs),
    /// Spanning basis over the invariants, or the decomposition of a polynomial.
    Span(SpanArgs),
    /// Groebner basis, normal forms, membership and Hilbert series.
    Ideal(IdealArgs),
    /// Euler and Borel classes of split bundles.
    Class(ClassArgs),
    /// Build a presentation.
    Present(PresentArgs),
    /// Free-module rank declared for a variety.
    Rank(RankArgs),
    /// Run a verification.
    Verify(VerifyArgs),
    /// Run the acceptance matrix.
    Acceptance(AcceptanceArgs),
}

#[derive(Args)]
pub struct PolyArgs {
    /// Ring as `name:degree,...`.
    #[arg(long)]
    pub ring: String,
    /// Polynomials in the ring.
    #[arg(required = true)]
    pub exprs: Vec<String>,
    #[arg(long, value_enum, default_value_t = PolyOp::Normalize)]
    pub op: PolyOp,
    /// Substitutions `name=expr` applied to every input (images in the same ring).
    #[arg(long = "subst")]
    pub substitutions: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyOp {
    Normalize,
    Add,
    Sub,
    Mul,
}

#[derive(Args)]
pub struct SymfuncArgs {
    #[command(subcommand)]
    pub command: SymfuncCommand,
}

#[derive(Subcommand)]
pub enum SymfuncCommand {
    /// sigma_i in the given variables.
    Elementary(SymArgs),
    /// h_i in the given variables.
    Complete(SymArgs),
    /// g_i(sigma_1..sigma_m).
    G {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        m: usize,
    },
    /// Check the generating-function, recurrence and g identities.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_i: usize,
        #[arg(long, default_value_t = 4)]
        max_vars: usize,
    },
}

#[derive(Args)]
pub struct SymArgs {
    #[arg(long)]
    pub i: usize,
    /// Number of variables x1..xk (each of degree 1).
    #[arg(long)]
    pub vars: usize,
}

#[derive(Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args)]
pub struct WeylArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Test a polynomial in e1..en for invariance.
    #[arg(long)]
    pub check_invariant: Option<String>,
}

#[derive(Args)]
pub struct SpanArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Polynomial in e1..en to decompose.
    #[arg(long)]
    pub poly: Option<String>,
}

#[derive(Args)]
pub struct IdealArgs {
    /// Ring as `name:degree,...`.
    #[arg(long)]
    pub ring: String,
    /// Generator; repeat for several.
    #[arg(long = "gen", required = true)]
    pub generators: Vec<String>,
    #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    /// Normal form of a polynomial.
    #[arg(long)]
    pub reduce: Option<String>,
    /// Membership with cofactors.
    #[arg(long)]
    pub member: Option<String>,
    /// Hilbert series of the quotient up to this degree.
    #[arg(long)]
    pub hilbert: Option<u32>,
    /// Compare with the ideal generated by these; repeat for several.
    #[arg(long = "equal")]
    pub equal: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Args)]
pub struct ClassArgs {
    #[command(subcommand)]
    pub command: ClassCommand,
}

#[derive(Args)]
pub struct BundleArgs {
    /// Number of rank-2 summands, with Euler symbols e1..ek.
    #[arg(long)]
    pub symbols: usize,
    /// Add a trivial line.
    #[arg(long)]
    pub odd: bool,
    /// Orientation sign.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub orientation: i8,
}

#[derive(Subcommand)]
pub enum ClassCommand {
    Euler(BundleArgs),
    /// Total Borel class coefficients b_0..b_order.
    Borel {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Sign convention, +1 or -1.
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        eps: String,
    },
    /// Borel classes of the complement in a trivial bundle.
    Complement {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Top Borel class and vanishing checks.
    TopClass {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Sgr2,
    Sgr2Relative,
    PartialFlag,
    PartialFlagAlt,
    MaxFlag,
    SgrEven,
    Bsl,
}

#[derive(Args)]
pub struct PresentArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[command(flatten)]
    pub params: PresentParams,
}

#[derive(Args)]
pub struct PresentParams {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub parity: Option<String>,
    /// Ambient rank N for max-flag and bsl.
    #[arg(long)]
    pub ambient: Option<usize>,
    /// Sign convention for sgr2-relative and sgr-even.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
}

#[derive(Args)]
pub struct RankArgs {
    /// k in SGr(k, N); use together with --ambient.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub kind: Option<Kind>,
    #[command(flatten)]
    pub params: PresentParams,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub command: VerifyCommand,
}

#[derive(Subcommand)]
pub enum VerifyCommand {
    /// Hilbert-series freeness of the spanning basis.
    Spanning {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 24)]
        max_degree: u32,
    },
    /// Full verification of a presentation.
    Presentation {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        params: PresentParams,
        #[arg(long, default_value_t = 24)]
        max_degree: u32,
    },
    /// Witness identity.
    Witness(GroupArgs),
}

#[derive(Args)]
pub struct AcceptanceArgs {
    /// Comma-separated criterion ids or name fragments.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Poly(a) => commands::poly(a),
        Command::Symfunc(a) => commands::symfunc(a),
        Command::Weyl(a) => commands::weyl(a),
        Command::Witness(a) => commands::witness(a),
        Command::Span(a) => commands::span(a),
        Command::Ideal(a) => commands::ideal(a),
        Command::Class(a) => commands::class(a),
        Command::Present(a) => commands::present(a),
        Command::Rank(a) => commands::rank(a),
        Command::Verify(a) => commands::verify(a),
        Command::Acceptance(a) => commands::acceptance(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.format == Format::Json;
    match dispatch(&cli) {
        Ok(out) => {
            let text = if json { serde_json::to_string_pretty(&out.json).expect("serializable") + "\n" } else { out.text };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json {
                let v = serde_json::json!({ "error": e.to_string(), "kind": e.kind() });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            eprintln!("slcc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
