use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kr_crystal::energy::{EnergyMethod, GlobalEnergy};
use kr_crystal::graph::build_graph_capped;
use kr_crystal::pattern::{enumerate_crystal_capped, DEFAULT_SIZE_LIMIT};
use kr_crystal::perfect::{check_perfect, ground_state_path, DominantWeight};
use kr_crystal::rmatrix::rmatrix;
use kr_crystal::verify::{run_suite, Suite};
use kr_crystal::{Error, KRCrystal, KRParams, KRPattern, TensorCrystal, TensorElement};

#[derive(Parser)]
#[command(
    name = "krc",
    version,
    about = "Kirillov-Reshetikhin crystals of affine type A in the polytope model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the elements of B^{r,s} in lexicographic order.
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = ListFormat::Json)]
        format: ListFormat,
        /// Give up (exit 3) past this many elements.
        #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
        limit: usize,
    },
    /// Export the crystal graph of B^{r,s} or of a tensor product.
    Graph {
        #[command(flatten)]
        params: OptionalParamArgs,
        /// A tensor factor `n,r,s`; repeat for more factors, left to right.
        /// The crystal given by --n/--r/--s, if any, becomes the rightmost factor.
        #[arg(long = "factor", visible_alias = "tensor", value_parser = parse_factor)]
        factors: Vec<KRParams>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
        limit: usize,
    },
    /// Apply the combinatorial R-matrix to b1 ⊗ b2.
    ///
    /// Inputs are JSON files or inline JSON: two patterns, or one tensor
    /// `{"factors": [..]}`.
    Rmatrix {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Energy of a tensor of two or more patterns.
    Energy {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        method: MethodArgs,
    },
    /// Check the perfectness conditions for B^{r,s} at level s.
    Perfect {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Ground-state path of a dominant weight in B^{r,level}.
    Gsp {
        /// Coefficients `a0,a1,...,an`; the level is their sum.
        #[arg(long, value_parser = parse_weight)]
        weight: DominantWeight,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 10)]
        len: usize,
    },
    /// Run verification suites for one rank and all levels up to --max-s.
    Verify {
        /// A suite name or `all`.
        #[arg(long, default_value = "all", value_parser = parse_suites)]
        suite: SuiteList,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_s: u32,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<KRParams, Error> {
        KRParams::new(self.n, self.r, self.s)
    }
}

#[derive(Args)]
#[group(requires_all = ["n", "r", "s"], multiple = true)]
struct OptionalParamArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<u32>,
}

#[derive(Args)]
#[group(multiple = false)]
struct MethodArgs {
    #[arg(long)]
    closed_form: bool,
    #[arg(long)]
    oracle: bool,
    /// Evaluate both ways and exit 1 if they differ.
    #[arg(long)]
    both: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone)]
struct SuiteList(Vec<Suite>);

fn parse_factor(s: &str) -> Result<KRParams, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, r, level] = parts[..] else {
        return Err(format!("expected n,r,s, got {s:?}"));
    };
    let n = n.parse().map_err(|e| format!("n: {e}"))?;
    let r = r.parse().map_err(|e| format!("r: {e}"))?;
    let level = level.parse().map_err(|e| format!("s: {e}"))?;
    KRParams::new(n, r, level).map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> Result<DominantWeight, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suites(s: &str) -> Result<SuiteList, String> {
    if s == "all" {
        return Ok(SuiteList(Suite::ALL.to_vec()));
    }
    s.split(',')
        .map(|name| name.trim().parse::<Suite>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()
        .map(SuiteList)
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    /// A check ran and came out negative; details are already on stdout.
    fn check(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeLimitExceeded { .. } => 3,
            Error::OracleFailure(_) | Error::InconsistentRecursion(_) | Error::ReportedViolation { .. } => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("krc: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Enumerate { params, format, limit } => enumerate(params.params()?, format, limit),
        Command::Graph {
            params,
            factors,
            format,
            out,
            limit,
        } => graph(params, factors, format, out.as_deref(), limit),
        Command::Rmatrix { inputs } => rmatrix_cmd(&inputs),
        Command::Energy { inputs, method } => energy(&inputs, &method),
        Command::Perfect { params } => perfect(params.params()?),
        Command::Gsp { weight, r, len } => gsp(&weight, r, len),
        Command::Verify { suite, n, max_s } => verify(&suite.0, n, max_s),
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::input(format!("stdout: {e}")))
        }
    }
}

fn emit_json(value: &impl serde::Serialize) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    emit(&text, None)
}

fn enumerate(params: KRParams, format: ListFormat, limit: usize) -> CliResult {
    let elements = enumerate_crystal_capped(params, limit)?;
    match format {
        ListFormat::Json => emit_json(&elements),
        ListFormat::Text => {
            let text: String = elements.iter().map(|b| format!("{b}\n")).collect();
            emit(&text, None)
        }
    }
}

fn graph(
    params: OptionalParamArgs,
    mut factors: Vec<KRParams>,
    format: GraphFormat,
    out: Option<&Path>,
    limit: usize,
) -> CliResult {
    if let (Some(n), Some(r), Some(s)) = (params.n, params.r, params.s) {
        factors.push(KRParams::new(n, r, s)?);
    }
    let text = match factors[..] {
        [] => return Err(Failure::input("give --n/--r/--s or at least one --factor")),
        [single] => {
            let g = build_graph_capped(&KRCrystal(single), limit)?;
            match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => g.to_json() + "\n",
            }
        }
        _ => {
            let g = build_graph_capped(&TensorCrystal::new(factors)?, limit)?;
            match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => g.to_json() + "\n",
            }
        }
    };
    emit(&text, out)
}

/// An input is inline JSON if it starts with `{` or `[`, a file path otherwise.
fn read_input(input: &str) -> Result<Value, Failure> {
    let trimmed = input.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        input.to_string()
    } else {
        fs::read_to_string(input).map_err(|e| Failure::input(format!("{input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{input}: {e}")))
}

/// Flattens patterns, tensors and arrays of either into a list of factors.
fn collect_patterns(value: Value, into: &mut Vec<KRPattern>) -> Result<(), Failure> {
    match value {
        Value::Array(items) => items.into_iter().try_for_each(|item| collect_patterns(item, into)),
        Value::Object(ref map) if map.contains_key("factors") => {
            let x: TensorElement = serde_json::from_value(value).map_err(|e| Failure::input(e.to_string()))?;
            into.extend(x.into_factors());
            Ok(())
        }
        other => {
            into.push(serde_json::from_value(other).map_err(|e| Failure::input(e.to_string()))?);
            Ok(())
        }
    }
}

fn read_tensor(inputs: &[String]) -> Result<TensorElement, Failure> {
    let mut factors = Vec::new();
    for input in inputs {
        collect_patterns(read_input(input)?, &mut factors)?;
    }
    Ok(TensorElement::new(factors)?)
}

fn rmatrix_cmd(inputs: &[String]) -> CliResult {
    let x = read_tensor(inputs)?;
    if x.len() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: x.len(),
        }
        .into());
    }
    emit_json(&rmatrix(&x)?)
}

fn energy(inputs: &[String], method: &MethodArgs) -> CliResult {
    let x = read_tensor(inputs)?;
    if x.len() < 2 {
        return Err(Failure::input(format!(
            "energy needs at least two factors, got {}",
            x.len()
        )));
    }
    let mut report = serde_json::Map::new();
    report.insert("tensor".into(), json!(x));
    let mut values = Vec::new();
    if !method.oracle {
        let h = GlobalEnergy::new(EnergyMethod::ClosedForm).evaluate(&x)?;
        report.insert("closed_form".into(), json!(h));
        values.push(h);
    }
    if method.oracle || method.both {
        let h = GlobalEnergy::new(EnergyMethod::Oracle).evaluate(&x)?;
        report.insert("oracle".into(), json!(h));
        values.push(h);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if method.both {
        report.insert("agree".into(), json!(agree));
    }
    emit_json(&report)?;
    if agree {
        Ok(())
    } else {
        Err(Failure::check("closed form and oracle disagree"))
    }
}

fn perfect(params: KRParams) -> CliResult {
    let report = check_perfect(params)?;
    emit_json(&json!({
        "perfect": report.is_perfect(),
        "report": report,
    }))?;
    if report.is_perfect() {
        Ok(())
    } else {
        Err(Failure::check(format!(
            "{params} is not perfect of level {}",
            params.s()
        )))
    }
}

fn gsp(weight: &DominantWeight, r: usize, len: usize) -> CliResult {
    let params = KRParams::new(weight.n(), r, weight.level())?;
    let path = ground_state_path(weight, params, len)?;
    emit_json(&path.elements)
}

fn verify(suites: &[Suite], n: usize, max_s: u32) -> CliResult {
    let mut failed = Vec::new();
    let mut text = String::new();
    for &suite in suites {
        let report = run_suite(suite, n, max_s)?;
        let status = if report.passed() { "PASS" } else { "FAIL" };
        text += &format!(
            "{status} {suite} n={n} max_s={max_s} checks={} failures={}",
            report.checks, report.failure_count
        );
        if let Some(note) = &report.note {
            text += &format!(" ({note})");
        }
        text.push('\n');
        for detail in &report.failures {
            text += &format!("  {detail}\n");
        }
        if !report.passed() {
            failed.push(suite.name());
        }
    }
    emit(&text, None)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::check(format!("failing suites: {}", failed.join(", "))))
    }
}
