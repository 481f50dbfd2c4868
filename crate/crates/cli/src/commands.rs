use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use pytuple_core::chain::{self, BranchClass, ChainMode, ChainStop, ChainStrategy};
use pytuple_core::tuple::{self, Infeasibility};
use pytuple_core::verify::{self, VerifyBounds, VerifyMode};
use pytuple_core::{triple, ClassFilter, Error, Execution, FactorBudget};

use crate::exit;
use crate::render::{Document, Format, Value};

#[derive(Debug, Parser)]
#[command(
    name = "pytuple",
    version,
    about = "Enumerate Pythagorean triples and n-tuples by their hypotenuse gap"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Which solutions to list.
    #[arg(long, value_enum, global = true, default_value = "all")]
    pub class: ClassArg,

    #[arg(long, value_enum, global = true, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every triple (a, b, c) with the given leg a.
    Triples {
        #[arg(value_parser = parse_positive)]
        a: BigUint,
    },
    /// Forecast total and primitive triple counts for a leg.
    Count {
        #[arg(value_parser = parse_positive)]
        a: BigUint,
    },
    /// Complete the given legs to n-tuples.
    Complete {
        #[arg(required = true, num_args = 1.., value_parser = parse_positive)]
        legs: Vec<BigUint>,
    },
    /// Grow tuples from a single seed by chaining triples on the hypotenuse.
    Chain {
        #[arg(value_parser = parse_positive)]
        seed: BigUint,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "all")]
        strategy: StrategyArg,
        /// Δ per level for `--strategy fixed`, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_positive)]
        deltas: Vec<BigUint>,
        #[arg(long, default_value_t = ChainStrategy::DEFAULT_MAX_BRANCHES)]
        max_branches: usize,
        /// Largest hypotenuse a branch may reach (default 10^100).
        #[arg(long, value_parser = parse_positive)]
        max_magnitude: Option<BigUint>,
    },
    /// Differential checks against brute force and gcd ground truth.
    Verify {
        #[arg(value_enum)]
        mode: VerifyArg,
        #[arg(long)]
        max_leg: Option<u64>,
        #[arg(long)]
        max_m: Option<u64>,
        #[arg(long)]
        gap_max_m: Option<u64>,
        /// Random leg lists in the tuple corpus.
        #[arg(long)]
        cases: Option<usize>,
        /// Largest k in the tuple corpus.
        #[arg(long)]
        max_k: Option<u64>,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    All,
    Primitive,
    NonPrimitive,
}

impl From<ClassArg> for ClassFilter {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => ClassFilter::All,
            ClassArg::Primitive => ClassFilter::PrimitiveOnly,
            ClassArg::NonPrimitive => ClassFilter::NonPrimitiveOnly,
        }
    }
}

impl ClassArg {
    fn name(self) -> &'static str {
        match self {
            ClassArg::All => "all",
            ClassArg::Primitive => "primitive",
            ClassArg::NonPrimitive => "non-primitive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    All,
    MinDelta,
    Primitive,
    Fixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyArg {
    TriplesOracle,
    TuplesOracle,
    Predictor,
    EuclidCoverage,
    Counts,
}

impl From<VerifyArg> for VerifyMode {
    fn from(v: VerifyArg) -> Self {
        match v {
            VerifyArg::TriplesOracle => VerifyMode::TriplesOracle,
            VerifyArg::TuplesOracle => VerifyMode::TuplesOracle,
            VerifyArg::Predictor => VerifyMode::Predictor,
            VerifyArg::EuclidCoverage => VerifyMode::EuclidCoverage,
            VerifyArg::Counts => VerifyMode::Counts,
        }
    }
}

fn parse_positive(s: &str) -> Result<BigUint, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a positive decimal integer"));
    }
    let n = BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| format!("cannot parse `{s}`"))?;
    if n == BigUint::ZERO {
        return Err("value must be positive".into());
    }
    Ok(n)
}

/// What a command produced: a document to print and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub document: Document,
    pub code: i32,
}

impl Outcome {
    fn ok(document: Document) -> Self {
        Outcome {
            document,
            code: exit::SUCCESS,
        }
    }
}

/// Maps a library error to the exit code it should produce.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. }
        | Error::OracleCapExceeded { .. }
        | Error::MagnitudeExceeded { .. } => exit::BUDGET,
        _ => exit::USAGE,
    }
}

pub fn execute(cli: &Cli, budget: FactorBudget) -> Result<Outcome, Error> {
    let filter = ClassFilter::from(cli.class);
    match &cli.command {
        Command::Triples { a } => run_triples(a, cli.class, filter, budget),
        Command::Count { a } => run_count(a, budget),
        Command::Complete { legs } => run_complete(legs, cli.class, filter, budget),
        Command::Chain {
            seed,
            depth,
            strategy,
            deltas,
            max_branches,
            max_magnitude,
        } => {
            let mode = match strategy {
                StrategyArg::All => ChainMode::AllBranches,
                StrategyArg::MinDelta => ChainMode::MinDelta,
                StrategyArg::Primitive => ChainMode::PrimitiveTriplesOnly,
                StrategyArg::Fixed => ChainMode::FixedDeltaList(deltas.clone()),
            };
            let mut s = ChainStrategy::new(mode);
            s.max_branches = *max_branches;
            if let Some(m) = max_magnitude {
                s.max_magnitude = m.clone();
            }
            run_chain(seed, *depth, *strategy, &s, budget)
        }
        Command::Verify {
            mode,
            max_leg,
            max_m,
            gap_max_m,
            cases,
            max_k,
            sequential,
        } => {
            let mode = VerifyMode::from(*mode);
            let mut bounds = VerifyBounds::for_mode(mode);
            bounds.budget = budget;
            if let Some(v) = max_leg {
                bounds.max_leg = *v;
            }
            if let Some(v) = max_m {
                bounds.max_m = *v;
            }
            if let Some(v) = gap_max_m {
                bounds.gap_max_m = *v;
            }
            if let Some(v) = cases {
                bounds.cases = *v;
            }
            if let Some(v) = max_k {
                bounds.max_k = *v;
            }
            if *sequential {
                bounds.exec = Execution::Sequential;
            }
            run_verify(mode, &bounds)
        }
    }
}

fn run_triples(
    a: &BigUint,
    class: ClassArg,
    filter: ClassFilter,
    budget: FactorBudget,
) -> Result<Outcome, Error> {
    let rows = triple::all_triples(a, filter, budget)?
        .iter()
        .map(|t| {
            vec![
                Value::int(&t.delta),
                Value::int(&t.b),
                Value::int(&t.c),
                Value::Bool(t.classification.is_primitive()),
            ]
        })
        .collect();
    Ok(Outcome::ok(Document {
        meta: vec![(
            "input",
            Value::Map(vec![
                ("a", Value::int(a)),
                ("class", Value::text(class.name())),
            ]),
        )],
        rows_key: "solutions",
        columns: vec!["delta", "b", "c", "primitive"],
        rows,
    }))
}

fn run_count(a: &BigUint, budget: FactorBudget) -> Result<Outcome, Error> {
    let f = triple::forecast_counts(a, budget)?;
    Ok(Outcome::ok(Document {
        meta: vec![("input", Value::Map(vec![("a", Value::int(a))]))],
        rows_key: "solutions",
        columns: vec!["total", "primitive", "non_primitive", "primitive_deltas"],
        rows: vec![vec![
            Value::Int(f.total.to_string()),
            Value::Int(f.primitive.to_string()),
            Value::Int(f.non_primitive.to_string()),
            Value::ints(&f.primitive_deltas),
        ]],
    }))
}

fn run_complete(
    legs: &[BigUint],
    class: ClassArg,
    filter: ClassFilter,
    budget: FactorBudget,
) -> Result<Outcome, Error> {
    let report = tuple::feasibility(legs)?;
    let rows = tuple::all_completions(legs, filter, budget)?
        .iter()
        .map(|s| {
            vec![
                Value::int(&s.delta),
                Value::int(&s.completion),
                Value::int(&s.hypotenuse),
                Value::Bool(s.classification.is_primitive()),
            ]
        })
        .collect();
    let reason = match report.reason {
        Some(Infeasibility::KCongruentTwoModFour) => Value::text("k ≡ 2 (mod 4)"),
        None => Value::Null,
    };
    Ok(Outcome::ok(Document {
        meta: vec![
            (
                "input",
                Value::Map(vec![
                    ("legs", Value::ints(legs)),
                    ("class", Value::text(class.name())),
                ]),
            ),
            ("k", Value::int(&report.k)),
            (
                "odd_leg_count",
                Value::Int(report.odd_leg_count.to_string()),
            ),
            ("feasible", Value::Bool(report.feasible)),
            ("reason", reason),
        ],
        rows_key: "solutions",
        columns: vec!["delta", "completion", "hypotenuse", "primitive"],
        rows,
    }))
}

fn run_chain(
    seed: &BigUint,
    depth: usize,
    strategy_arg: StrategyArg,
    strategy: &ChainStrategy,
    budget: FactorBudget,
) -> Result<Outcome, Error> {
    let set = chain::build_chains(seed, depth, strategy, budget, Execution::default())?;
    let strategy_name = match strategy_arg {
        StrategyArg::All => "all",
        StrategyArg::MinDelta => "min-delta",
        StrategyArg::Primitive => "primitive",
        StrategyArg::Fixed => "fixed",
    };
    let rows = set
        .outcomes
        .iter()
        .map(|o| {
            let c = &o.chain;
            let branch = match chain::classify_chain(c) {
                BranchClass::PrimitiveBranch => "primitive",
                BranchClass::NonPrimitiveBranch => "non-primitive",
            };
            let stop = match &o.stop {
                None => Value::Null,
                Some(ChainStop::NoDelta) => Value::text("no-delta"),
                Some(ChainStop::MagnitudeExceeded { next }) => {
                    Value::text(format!("magnitude-exceeded:{next}"))
                }
            };
            vec![
                Value::ints(c.legs()),
                Value::int(c.hypotenuse()),
                Value::ints(c.deltas()),
                Value::Int(c.depth().to_string()),
                Value::text(branch),
                Value::Bool(c.holds()),
                stop,
                Value::Bool(set.truncated),
            ]
        })
        .collect();
    Ok(Outcome::ok(Document {
        meta: vec![
            (
                "input",
                Value::Map(vec![
                    ("seed", Value::int(seed)),
                    ("depth", Value::Int(depth.to_string())),
                    ("strategy", Value::text(strategy_name)),
                    (
                        "max_branches",
                        Value::Int(strategy.max_branches.to_string()),
                    ),
                    ("max_magnitude", Value::int(&strategy.max_magnitude)),
                ]),
            ),
            ("truncated", Value::Bool(set.truncated)),
            (
                "magnitude_pruned",
                Value::Int(set.magnitude_pruned.to_string()),
            ),
        ],
        rows_key: "solutions",
        columns: vec![
            "legs",
            "hypotenuse",
            "deltas",
            "depth",
            "branch",
            "identity",
            "stop",
            "truncated",
        ],
        rows,
    }))
}

fn run_verify(mode: VerifyMode, bounds: &VerifyBounds) -> Result<Outcome, Error> {
    let report = verify::run(mode, bounds)?;
    let rows = report
        .discrepancies
        .iter()
        .map(|d| vec![Value::text(d.input.clone()), Value::text(d.detail.clone())])
        .collect();
    let code = if report.passed() {
        exit::SUCCESS
    } else {
        exit::VERIFY_FAILED
    };
    Ok(Outcome {
        document: Document {
            meta: vec![
                ("mode", Value::text(mode.name())),
                (
                    "bounds",
                    Value::Map(vec![
                        ("max_leg", Value::Int(bounds.max_leg.to_string())),
                        ("max_m", Value::Int(bounds.max_m.to_string())),
                        ("gap_max_m", Value::Int(bounds.gap_max_m.to_string())),
                        ("cases", Value::Int(bounds.cases.to_string())),
                        ("max_k", Value::Int(bounds.max_k.to_string())),
                    ]),
                ),
                ("checked", Value::Int(report.checked.to_string())),
                (
                    "discrepancy_count",
                    Value::Int(report.discrepancies.len().to_string()),
                ),
                ("passed", Value::Bool(report.passed())),
            ],
            rows_key: "discrepancies",
            columns: vec!["input", "detail"],
            rows,
        },
        code,
    })
}
