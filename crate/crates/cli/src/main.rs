//! Command line front end for the matrix equation
//! `(1 + a*exp(-||X||/b)) X = Y`: classification, solving, degenerate-set
//! sampling, and the implicit-Euler viscoelastic stress update.

mod io;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expnorm::{
    classify, critical_points, norm, residual, sample_degenerate, solve_equation, solve_scalar,
    MatrixValue, NormKind, RootExpectation, SolutionSet, SolverParams, StressState,
    StressStepConfig,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "expnorm",
    version,
    about = "Solve and classify the matrix equation (1 + a*exp(-||X||/b)) X = Y"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the equation for X given the right-hand side Y.
    Solve(SolveArgs),
    /// Classify the scalar equation at a right-hand-side norm y.
    Classify(ClassifyArgs),
    /// Sample representatives of a degenerate solution sphere.
    Sample(SampleArgs),
    /// Run the implicit-Euler stress update over a driving sequence.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    One,
    Two,
    Inf,
    Frobenius,
}

impl NormArg {
    fn kind(self) -> NormKind {
        match self {
            NormArg::One => NormKind::One,
            NormArg::Two => NormKind::Two,
            NormArg::Inf => NormKind::Infinity,
            NormArg::Frobenius => NormKind::Frobenius,
        }
    }

    fn label(self) -> &'static str {
        match self {
            NormArg::One => "one",
            NormArg::Two => "two",
            NormArg::Inf => "inf",
            NormArg::Frobenius => "frobenius",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("matrix").required(true).args(["input", "zero"]))]
struct SolveArgs {
    /// Coefficient amplitude a.
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Decay scale b (nonzero).
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Right-hand side Y: CSV rows or a JSON object {"rows","cols","data"}.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Use the zero matrix of the given shape as Y.
    #[arg(long, num_args = 2, value_names = ["ROWS", "COLS"])]
    zero: Option<Vec<usize>>,
    /// Norm closing the scalar equation.
    #[arg(long, value_enum, default_value_t = NormArg::Frobenius)]
    norm: NormArg,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Number of degenerate-set samples to include when the set is a sphere.
    #[arg(long, default_value_t = 3)]
    samples: usize,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Coefficient amplitude a.
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Decay scale b (nonzero).
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Right-hand-side norm y (nonnegative).
    #[arg(long, allow_negative_numbers = true)]
    y: f64,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct SampleArgs {
    /// Coefficient amplitude a; with --b, the sphere radius is b*ln|a|.
    #[arg(long, allow_negative_numbers = true, requires = "b")]
    a: Option<f64>,
    /// Decay scale b (nonzero).
    #[arg(long, allow_negative_numbers = true, requires = "a")]
    b: Option<f64>,
    /// Sphere radius, as an alternative to deriving it from --a/--b.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    radius: Option<f64>,
    /// Sample shape: rows.
    #[arg(long, default_value_t = 3)]
    rows: usize,
    /// Sample shape: columns.
    #[arg(long, default_value_t = 3)]
    cols: usize,
    /// Number of samples.
    #[arg(long, default_value_t = 3)]
    count: usize,
    /// Norm the radius refers to.
    #[arg(long, value_enum, default_value_t = NormArg::Frobenius)]
    norm: NormArg,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct SimulateArgs {
    /// Relaxation time tau_p (positive).
    #[arg(long = "tau-p", allow_negative_numbers = true)]
    tau_p: f64,
    /// Critical stress sigma_c (positive).
    #[arg(long = "sigma-c", allow_negative_numbers = true)]
    sigma_c: f64,
    /// Time step dt (positive).
    #[arg(long, allow_negative_numbers = true)]
    dt: f64,
    /// Driving sequence: 3x3 CSV blocks separated by blank lines.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Optional initial 3x3 stress state (CSV or JSON matrix).
    #[arg(long, value_name = "FILE")]
    initial: Option<PathBuf>,
    /// Trajectory CSV destination; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Solver(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn solver<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Solver(e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Classify(args) => run_classify(args),
        Command::Sample(args) => run_sample(args),
        Command::Simulate(args) => run_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn make_params(a: f64, b: f64) -> Result<SolverParams, CliError> {
    SolverParams::new(a, b).map_err(usage)
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(input: &Option<PathBuf>, zero: &Option<Vec<usize>>) -> Result<MatrixValue, CliError> {
    if let Some(path) = input {
        io::parse_matrix(&read_file(path)?).map_err(CliError::Usage)
    } else {
        let shape = zero.as_ref().expect("clap enforces the matrix group");
        MatrixValue::zeros(shape[0], shape[1]).map_err(usage)
    }
}

fn run_solve(args: SolveArgs) -> Result<(), CliError> {
    let params = make_params(args.a, args.b)?;
    let y = load_matrix(&args.input, &args.zero)?;
    let kind = args.norm.kind();

    let started = Instant::now();
    let y_norm = norm(&y, &kind);
    let label = classify(&params, y_norm).map_err(solver)?;
    let roots = solve_scalar(&params, y_norm).map_err(solver)?;
    let set = solve_equation(&params, &y, &kind).map_err(solver)?;
    let timing_ms = started.elapsed().as_secs_f64() * 1e3;

    let cp = critical_points(&params);
    let case = label.tag.letter().to_string();
    let roots_json: Vec<_> = roots.iter().map(report::root_value).collect();

    match set {
        SolutionSet::Finite(solutions) => {
            let mut residuals = Vec::with_capacity(solutions.len());
            for sol in &solutions {
                residuals.push(residual(&params, &sol.matrix, &y, &kind).map_err(solver)?);
            }
            match args.format {
                FormatArg::Json => {
                    let entries: Vec<_> = solutions
                        .iter()
                        .zip(&residuals)
                        .map(|(sol, r)| {
                            json!({
                                "matrix": report::matrix_value(&sol.matrix),
                                "root": report::root_value(&sol.root),
                                "residual": r,
                                "near_singular": sol.near_singular,
                            })
                        })
                        .collect();
                    let doc = json!({
                        "case": case,
                        "y": y_norm,
                        "roots": roots_json,
                        "solutions": entries,
                        "thresholds": report::thresholds_value(&cp),
                        "timing_ms": timing_ms,
                    });
                    println!("{}", report::to_json(&doc));
                }
                FormatArg::Text => {
                    let plural = if solutions.len() == 1 { "solution" } else { "solutions" };
                    println!("case {case} ({} {plural})", solutions.len());
                    if let Some(line) = report::thresholds_text(&cp) {
                        println!("{line}");
                    }
                    println!("y = {} ({} norm of the right-hand side)", report::sig6(y_norm), args.norm.label());
                    for (i, (sol, r)) in solutions.iter().zip(&residuals).enumerate() {
                        let mut flags = String::new();
                        if sol.root.tangent {
                            flags.push_str(", tangent");
                        }
                        if sol.near_singular {
                            flags.push_str(", near-singular coefficient");
                        }
                        println!(
                            "solution {}: x = {}, sign {}{flags}, residual {}",
                            i + 1,
                            report::sig6(sol.root.x),
                            sol.root.coefficient_sign.as_str(),
                            report::sig6(*r)
                        );
                        print!("{}", report::matrix_text(&sol.matrix, "  "));
                    }
                    println!("timing: {} ms", report::sig6(timing_ms));
                }
            }
        }
        SolutionSet::ZeroUnionSphere { radius } => {
            let samples =
                sample_degenerate(y.rows(), y.cols(), radius, &kind, args.samples).map_err(solver)?;
            match args.format {
                FormatArg::Json => {
                    let doc = json!({
                        "case": case,
                        "y": y_norm,
                        "roots": roots_json,
                        "solutions": {
                            "degenerate": {
                                "radius": radius,
                                "samples": samples.iter().map(report::matrix_value).collect::<Vec<_>>(),
                            }
                        },
                        "thresholds": report::thresholds_value(&cp),
                        "timing_ms": timing_ms,
                    });
                    println!("{}", report::to_json(&doc));
                }
                FormatArg::Text => {
                    println!("case {case} (degenerate solution set)");
                    println!("degenerate: {{0}} \u{222a} sphere radius {}", report::sig6(radius));
                    for (i, sample) in samples.iter().enumerate() {
                        println!("sample {}:", i + 1);
                        print!("{}", report::matrix_text(sample, "  "));
                    }
                    println!("timing: {} ms", report::sig6(timing_ms));
                }
            }
        }
    }
    Ok(())
}

fn run_classify(args: ClassifyArgs) -> Result<(), CliError> {
    let params = make_params(args.a, args.b)?;
    if !(args.y >= 0.0) {
        return Err(CliError::Usage(format!(
            "y must be a nonnegative number, got {}",
            args.y
        )));
    }
    let label = classify(&params, args.y).map_err(solver)?;
    let cp = critical_points(&params);
    let case = label.tag.letter().to_string();

    match args.format {
        FormatArg::Json => {
            let (count, radius) = match label.expected_roots {
                RootExpectation::Count(n) => (json!(n), None),
                RootExpectation::ZeroUnionSphere { radius } => (json!(null), Some(radius)),
            };
            let mut doc = json!({
                "case": case,
                "y": args.y,
                "count": count,
                "thresholds": report::thresholds_value(&cp),
            });
            if let Some(radius) = radius {
                doc["radius"] = json!(radius);
            }
            println!("{}", report::to_json(&doc));
        }
        FormatArg::Text => {
            match label.expected_roots {
                RootExpectation::Count(n) => {
                    let plural = if n == 1 { "root" } else { "roots" };
                    println!("case {case}: {n} {plural}");
                }
                RootExpectation::ZeroUnionSphere { radius } => {
                    println!(
                        "case {case}: degenerate solution set {{0}} \u{222a} sphere radius {}",
                        report::sig6(radius)
                    );
                }
            }
            if let Some(line) = report::thresholds_text(&cp) {
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn run_sample(args: SampleArgs) -> Result<(), CliError> {
    let kind = args.norm.kind();
    let (radius, params) = match (args.radius, args.a, args.b) {
        (Some(radius), None, None) => {
            if !(radius > 0.0) {
                return Err(CliError::Usage(format!(
                    "radius must be a positive number, got {radius}"
                )));
            }
            (radius, None)
        }
        (None, Some(a), Some(b)) => {
            let params = make_params(a, b)?;
            let radius = critical_points(&params).sign_change.filter(|r| *r > 0.0);
            match radius {
                Some(radius) => (radius, Some(params)),
                None => {
                    return Err(CliError::Usage(format!(
                        "a = {a}, b = {b} has no degenerate sphere; the coefficient never vanishes at a positive radius"
                    )))
                }
            }
        }
        _ => {
            return Err(CliError::Usage(
                "provide either --radius or both --a and --b".into(),
            ))
        }
    };

    let samples = sample_degenerate(args.rows, args.cols, radius, &kind, args.count).map_err(usage)?;
    let residuals: Option<Vec<f64>> = match &params {
        Some(p) => {
            let zero = MatrixValue::zeros(args.rows, args.cols).map_err(usage)?;
            let mut rs = Vec::with_capacity(samples.len());
            for sample in &samples {
                rs.push(residual(p, sample, &zero, &kind).map_err(solver)?);
            }
            Some(rs)
        }
        None => None,
    };

    match args.format {
        FormatArg::Json => {
            let mut doc = json!({
                "radius": radius,
                "norm": args.norm.label(),
                "samples": samples.iter().map(report::matrix_value).collect::<Vec<_>>(),
            });
            if let Some(rs) = &residuals {
                doc["residuals"] = json!(rs);
            }
            println!("{}", report::to_json(&doc));
        }
        FormatArg::Text => {
            println!("radius {} ({} norm)", report::sig6(radius), args.norm.label());
            for (i, sample) in samples.iter().enumerate() {
                match &residuals {
                    Some(rs) => println!("sample {}: residual {}", i + 1, report::sig6(rs[i])),
                    None => println!("sample {}:", i + 1),
                }
                print!("{}", report::matrix_text(sample, "  "));
            }
        }
    }
    Ok(())
}

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let config = StressStepConfig::new(args.tau_p, args.sigma_c, args.dt, NormKind::Frobenius)
        .map_err(usage)?;
    let driving = io::parse_driving(&read_file(&args.input)?).map_err(CliError::Usage)?;
    for (i, block) in driving.iter().enumerate() {
        if block.rows() != 3 || block.cols() != 3 {
            return Err(CliError::Usage(format!(
                "driving block {} is {}x{}, expected 3x3",
                i + 1,
                block.rows(),
                block.cols()
            )));
        }
    }
    let initial = match &args.initial {
        Some(path) => {
            let m = io::parse_matrix(&read_file(path)?).map_err(CliError::Usage)?;
            if m.rows() != 3 || m.cols() != 3 {
                return Err(CliError::Usage(format!(
                    "initial state is {}x{}, expected 3x3",
                    m.rows(),
                    m.cols()
                )));
            }
            Some(StressState { stress: m, time: 0.0 })
        }
        None => None,
    };

    let params = config.params().map_err(solver)?;
    let trajectory =
        expnorm::simulate(&config, initial, &driving, None).map_err(solver)?;

    match &args.output {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            let mut writer = std::io::BufWriter::new(file);
            io::write_trajectory(&mut writer, &params, &trajectory).map_err(solver)?;
            println!(
                "simulated {} steps; final frobenius norm {}",
                driving.len(),
                report::sig6(norm(&trajectory.last().expect("nonempty trajectory").stress, &config.norm))
            );
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            io::write_trajectory(&mut lock, &params, &trajectory).map_err(solver)?;
        }
    }
    Ok(())
}
