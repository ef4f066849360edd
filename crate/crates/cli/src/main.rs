use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graver_core::bounds::{
    bound_berstein_onn, bound_cor1, bound_cor2, bound_cor3, bound_lemma2, bound_mixed, BoundResult, FormulaId,
};
use graver_core::exact::IntMatrix;
use graver_core::graver::{graver_basis_using, graver_complexity_with, Algorithm, GraverBudget};
use graver_core::io::{bound_to_json, graver_to_json, parse_matrix, relation_from_json, relation_to_json};
use graver_core::lift::{
    base_relation_a34, base_relation_cor2_with, check_conditions, discover_lifts, lift, lift_chain, ChainSwitch,
};
use graver_core::relation::{
    canonicalize_for_lift, lemma2_bound, verify_membership_with, verify_relation, PrimitiveRelation,
};
use graver_core::reproduce::{reproduce, GoldenSource, ReproduceOptions};
use graver_core::Error;
use num_bigint::BigInt;

/// Graver bases, primitive relations and lifted lower bounds on Graver
/// complexity.
#[derive(Parser)]
#[command(name = "graver", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Maximum number of elements held during completion.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_completion: Option<u64>,

    /// Maximum conformal box the membership oracle searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_oracle: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Graver basis of the matrix in a plain matrix file.
    Graver {
        matrix: PathBuf,
        /// Use plain completion instead of project-and-lift.
        #[arg(long)]
        completion: bool,
    },
    /// Graver complexity g(A, B); B defaults to the identity.
    Complexity { a: PathBuf, b: Option<PathBuf> },
    /// Verify, lift or chain a relation document.
    #[command(subcommand)]
    Relation(RelationCommand),
    /// Evaluate a lower-bound formula over a range of M.
    Bound(BoundArgs),
    /// Regenerate the A_3xM sample relations and compare with the golden files.
    Reproduce {
        #[arg(long)]
        skip_membership: bool,
        /// Read golden files from this directory instead of the built-in copies.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RelationCommand {
    /// Check primitivity and (unless skipped) Graver membership.
    Verify {
        relation: PathBuf,
        #[arg(long)]
        skip_membership: bool,
    },
    /// Apply one lifting step.
    Lift {
        relation: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        x0_index: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lift repeatedly up to a target number of copies.
    Chain {
        relation: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        target: usize,
        #[arg(long, requires = "switch_l")]
        switch_at: Option<usize>,
        #[arg(long, requires = "switch_at")]
        switch_l: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every l with a passing certificate and the bound it gives.
    Discover {
        relation: PathBuf,
        #[arg(long, default_value_t = 0)]
        x0_index: usize,
        /// Also try arbitrary witness subsets (experimental).
        #[arg(long)]
        experimental_subsets: bool,
    },
    /// Write a base relation: the A_3x4 one, or the cyclic one built from a
    /// largest circuit of G(A).
    Base {
        /// Plain matrix file for A; omit for the A_3x4 relation.
        matrix: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(value_enum)]
    formula: FormulaArg,
    /// Second formula to print side by side.
    #[arg(long, value_enum)]
    compare: Option<FormulaArg>,
    /// Single M; overrides --from/--to.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<BigInt>,
    #[arg(long)]
    sum_h: Option<BigInt>,
    #[arg(long)]
    m0: Option<usize>,
    /// Relation document for the lemma2 formula.
    #[arg(long)]
    relation: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    Cor1,
    Cor2,
    Cor3,
    BersteinOnn,
    Mixed,
    Lemma2,
}

impl From<FormulaArg> for FormulaId {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Cor1 => FormulaId::Cor1,
            FormulaArg::Cor2 => FormulaId::Cor2,
            FormulaArg::Cor3 => FormulaId::Cor3,
            FormulaArg::BersteinOnn => FormulaId::BersteinOnn,
            FormulaArg::Mixed => FormulaId::Mixed,
            FormulaArg::Lemma2 => FormulaId::Lemma2,
        }
    }
}

enum Failure {
    Verification(String),
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::ConditionsFailed { .. }
            | Error::NotCanonicalizable(_)
            | Error::NoCircuitOfSupport3 { .. }
            | Error::Internal(_) => Failure::Verification(e.to_string()),
            Error::Dimension(_) | Error::InvalidSpec(_) | Error::InvalidArgument(_) | Error::Parse(_) => {
                Failure::Input(e.to_string())
            }
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Verification(m) => (1, m),
                Failure::Input(m) => (2, m),
                Failure::Budget(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn budget(cli: &Cli) -> GraverBudget {
    let mut b = GraverBudget::default();
    if let Some(n) = cli.budget_completion {
        b.max_elements = usize::try_from(n).unwrap_or(usize::MAX);
    }
    if let Some(n) = cli.budget_oracle {
        b.oracle_box = n;
    }
    b
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    parse_matrix(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_relation(path: &Path) -> Result<PrimitiveRelation, Failure> {
    relation_from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Graver { matrix, completion } => cmd_graver(cli, matrix, *completion),
        Command::Complexity { a, b } => cmd_complexity(cli, a, b.as_deref()),
        Command::Relation(rc) => cmd_relation(cli, rc),
        Command::Bound(args) => cmd_bound(cli, args),
        Command::Reproduce { skip_membership, golden_dir } => cmd_reproduce(cli, *skip_membership, golden_dir.clone()),
    }
}

fn cmd_graver(cli: &Cli, path: &Path, completion: bool) -> Outcome {
    let m = read_matrix(path)?;
    let algorithm = if completion { Algorithm::Completion } else { Algorithm::ProjectAndLift };
    let basis = graver_basis_using(&m, &budget(cli), algorithm)?;
    match cli.format {
        Format::Json => print!("{}", graver_to_json(&basis)),
        Format::Human => {
            for v in basis.elements() {
                println!("{v}");
            }
            println!("{} elements, max 1-norm {}", basis.len(), basis.max_l1_norm());
        }
    }
    Ok(())
}

fn cmd_complexity(cli: &Cli, a: &Path, b: Option<&Path>) -> Outcome {
    let a = read_matrix(a)?;
    let b = match b {
        Some(p) => read_matrix(p)?,
        None => IntMatrix::identity(a.cols()),
    };
    let g = graver_complexity_with(&a, &b, &budget(cli))?;
    match cli.format {
        Format::Json => println!("{{\"graver_complexity\": {g}}}"),
        Format::Human => println!("g(A,B) = {g}"),
    }
    Ok(())
}

fn emit_relation(cli: &Cli, rel: &PrimitiveRelation, output: Option<&Path>) -> Outcome {
    let json = relation_to_json(rel);
    if let Some(path) = output {
        write(path, &json)?;
    }
    match cli.format {
        Format::Json if output.is_none() => print!("{json}"),
        Format::Json => println!("{{\"copies\": {}, \"sum\": {}}}", rel.copies(), lemma2_bound(rel)),
        Format::Human => print!("{rel}"),
    }
    Ok(())
}

fn cmd_relation(cli: &Cli, rc: &RelationCommand) -> Outcome {
    match rc {
        RelationCommand::Verify { relation, skip_membership } => {
            let rel = read_relation(relation)?;
            let mut report = verify_relation(&rel);
            if !skip_membership {
                report = report.merge(verify_membership_with(&rel, budget(cli).oracle_box)?);
            }
            let sum = lemma2_bound(&rel);
            match cli.format {
                Format::Json => println!(
                    "{{\"valid\": {}, \"inconclusive\": {}, \"copies\": {}, \"sum\": {sum}}}",
                    report.is_valid(),
                    report.has_inconclusive(),
                    rel.copies()
                ),
                Format::Human => {
                    print!("{report}");
                    println!("sum |h| = {sum}");
                }
            }
            if !report.is_valid() {
                return Err(Failure::Verification("relation failed verification".into()));
            }
            if report.has_inconclusive() {
                return Err(Failure::Budget("membership oracle budget exceeded".into()));
            }
            Ok(())
        }
        RelationCommand::Lift { relation, l, x0_index, output } => {
            let rel = read_relation(relation)?;
            let (canon, _) = canonicalize_for_lift(&rel, *x0_index, *l)?;
            let cert = check_conditions(&canon, *l);
            if cli.format == Format::Human {
                eprint!("{cert}");
            }
            let lifted = lift(&canon, &cert)?;
            emit_relation(cli, &lifted, output.as_deref())
        }
        RelationCommand::Chain { relation, l, target, switch_at, switch_l, output } => {
            let rel = read_relation(relation)?;
            let switch = switch_at.zip(*switch_l).map(|(at, new_l)| ChainSwitch { at, new_l });
            let out = lift_chain(&rel, *l, *target, switch)?;
            emit_relation(cli, &out, output.as_deref())
        }
        RelationCommand::Discover { relation, x0_index, experimental_subsets } => {
            let rel = read_relation(relation)?;
            let options = discover_lifts(&rel, *x0_index, *experimental_subsets)?;
            for o in &options {
                let bound = o.lifted_sum.as_ref().map_or("-".to_string(), BigInt::to_string);
                let witnesses =
                    o.witnesses.as_ref().map_or(String::new(), |w| format!(" witnesses {w:?} (experimental)"));
                match cli.format {
                    Format::Json => println!(
                        "{{\"l\": {}, \"s\": {}, \"passes\": {}, \"lifted_sum\": {}}}",
                        o.l,
                        o.s,
                        o.passes,
                        o.lifted_sum.as_ref().map_or("null".to_string(), BigInt::to_string)
                    ),
                    Format::Human => println!(
                        "l = {:>2}  s = {:>6}  {}  bound {bound}{witnesses}",
                        o.l,
                        o.s,
                        if o.passes { "pass" } else { "fail" }
                    ),
                }
            }
            Ok(())
        }
        RelationCommand::Base { matrix, output } => {
            let rel = match matrix {
                None => base_relation_a34(),
                Some(p) => base_relation_cor2_with(&read_matrix(p)?, &budget(cli))?,
            };
            emit_relation(cli, &rel, output.as_deref())
        }
    }
}

fn need<T: Clone>(v: &Option<T>, flag: &str, formula: FormulaId) -> Result<T, Failure> {
    v.clone().ok_or_else(|| Failure::Input(format!("{formula} needs --{flag}")))
}

fn evaluate(args: &BoundArgs, formula: FormulaId, m: usize) -> Result<BoundResult, Failure> {
    Ok(match formula {
        FormulaId::Cor1 => bound_cor1(
            &need(&args.sum_h, "sum-h", formula)?,
            need(&args.g, "g", formula)?,
            &need(&args.s, "s", formula)?,
            need(&args.m0, "m0", formula)?,
            m,
        )?,
        FormulaId::Cor2 => bound_cor2(need(&args.g, "g", formula)?, m)?,
        FormulaId::Cor3 => bound_cor3(m)?,
        FormulaId::BersteinOnn => bound_berstein_onn(m)?,
        FormulaId::Mixed => bound_mixed(need(&args.m0, "m0", formula)?, m)?,
        FormulaId::Lemma2 => {
            let rel = read_relation(&need(&args.relation, "relation", formula)?)?;
            if rel.copies() != m {
                return Err(Failure::Input(format!("relation has M={}, asked for M={m}", rel.copies())));
            }
            bound_lemma2(&rel)
        }
    })
}

fn cmd_bound(cli: &Cli, args: &BoundArgs) -> Outcome {
    let primary = FormulaId::from(args.formula);
    let secondary = args.compare.map(FormulaId::from);
    let (from, to) = match (args.m, args.from, args.to) {
        (Some(m), _, _) => (m, m),
        (None, Some(f), Some(t)) => (f, t),
        (None, Some(f), None) => (f, f),
        (None, None, _) if primary == FormulaId::Lemma2 => {
            let m = read_relation(&need(&args.relation, "relation", primary)?)?.copies();
            (m, m)
        }
        _ => return Err(Failure::Input("give --m or --from/--to".into())),
    };
    if from > to {
        return Err(Failure::Input(format!("empty range {from}..{to}")));
    }
    let rows = (from..=to)
        .map(|m| Ok((m, evaluate(args, primary, m)?, secondary.map(|f| evaluate(args, f, m)).transpose()?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    if cli.format == Format::Human {
        match secondary {
            Some(s) => println!("{:>4}  {:>20}  {:>20}", "M", primary.as_str(), s.as_str()),
            None => println!("{:>4}  {:>20}", "M", primary.as_str()),
        }
    }
    for (m, a, b) in &rows {
        match cli.format {
            Format::Json => {
                println!("{}", bound_to_json(a));
                if let Some(b) = b {
                    println!("{}", bound_to_json(b));
                }
            }
            Format::Human => match b {
                Some(b) => println!("{m:>4}  {:>20}  {:>20}", a.value, b.value),
                None => println!("{m:>4}  {:>20}", a.value),
            },
        }
    }
    Ok(())
}

fn cmd_reproduce(cli: &Cli, skip_membership: bool, golden_dir: Option<PathBuf>) -> Outcome {
    let mut opts = ReproduceOptions { skip_membership, ..Default::default() };
    if let Some(dir) = golden_dir {
        if !dir.is_dir() {
            return Err(Failure::Input(format!("{}: not a directory", dir.display())));
        }
        opts.golden = GoldenSource::Directory(dir);
    }
    if let Some(n) = cli.budget_oracle {
        opts.oracle_box = n;
    }
    let report = reproduce(&opts)?;
    match cli.format {
        Format::Json => {
            let checks: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    let (name, detail) = (json_string(&c.name), json_string(&c.detail));
                    format!("{{\"name\": {name}, \"passed\": {}, \"detail\": {detail}}}", c.passed)
                })
                .collect();
            println!("{{\"passed\": {}, \"checks\": [{}]}}", report.passed(), checks.join(", "));
        }
        Format::Human => println!("{report}"),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification("reproduction checks failed".into()))
    }
}

fn json_string(s: &str) -> String {
    serde_json::Value::from(s).to_string()
}
