//! Command-line front end for the sephash library.
//!
//! Exit codes: 0 on success, 1 when a checked property fails (a witness is
//! printed), 2 on usage or input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use sephash::bounds::{johnson_bound, trung_bound, BoundResult};
use sephash::construct::{
    gm_code, hamming_projection_phf, is_prime, nearest_prime, phf3_construct, phf4_construct,
    GMParams,
};
use sephash::hypergraph::{
    extract_partite, find_rainbow_cycle, find_triangle, hamming_rainbow_check,
    hypergraph_to_matrix, is_gve_free, is_linear, matrix_to_hypergraph, PartiteHypergraph,
    UniformHypergraph,
};
use sephash::reduce::{
    group_coordinates, johnson_reduce, remove_unique_coordinate_columns, ReduceOutcome,
};
use sephash::sumfree::{
    behrend_set, greedy_avoiding_set, max_avoiding_set, phf4_system, r_set_rank,
    r_set_sum_free_system, r_sum_free_system, two_sum_free_system, AvoidingSet, EquationSystem,
};
use sephash::verify::{verify_ipp, verify_phf, verify_shf, VerifyReport};
use sephash::{CodeMatrix, Error, SepType, Violation};

#[derive(Parser)]
#[command(name = "sephash", version, about = "Separating hash family toolkit")]
struct Cli {
    /// Emit one machine-readable key=value line instead of prose.
    #[arg(long, global = true)]
    porcelain: bool,
    /// Cap the number of worker threads.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an explicit family and write it in the SHF text format.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Check a separation property of a matrix file.
    Verify(VerifyArgs),
    /// Evaluate a closed-form column-count bound.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Shrink or regroup a matrix while preserving separation.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Build an integer set avoiding a homogeneous equation system.
    Sumfree(SumfreeArgs),
    /// Hypergraph views: structural checks, extraction, Hamming coloring.
    #[command(subcommand)]
    Hyper(HyperCommand),
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Projection family on N rows over the alphabet 1..=q.
    Hamming {
        #[arg(long = "N", value_name = "ROWS")]
        rows: usize,
        #[arg(long)]
        q: u32,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Shifted-multiplier code over a prime modulus.
    Gm {
        #[arg(long)]
        q: u64,
        /// Base values b, one code block per (multiplier, shift) pair.
        #[arg(long, value_delimiter = ',', required = true, value_name = "B1,B2,...")]
        tangents: Vec<u64>,
        /// Either "auto" (greedy set avoiding the tangent differences) or a comma list.
        #[arg(long, value_name = "auto|M1,M2,...")]
        multipliers: String,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Three-part family over a prime modulus.
    Phf3 {
        #[arg(long)]
        q: u64,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Four-part family over a prime modulus.
    Phf4 {
        #[arg(long)]
        q: u64,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("property").required(true).args(["sep_type", "phf", "ipp"])))]
struct VerifyArgs {
    /// Matrix file in the SHF text format.
    #[arg(long)]
    file: PathBuf,
    /// Separation type as a weight list, e.g. 1,1,2.
    #[arg(long = "type", value_name = "W1,W2,...")]
    sep_type: Option<SepType>,
    /// Require a row injective on every t-subset of columns.
    #[arg(long, value_name = "T")]
    phf: Option<usize>,
    /// Identifiable-parent check for coalitions of up to t columns.
    #[arg(long, value_name = "T")]
    ipp: Option<usize>,
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Stepwise row-reduction bound.
    Johnson(JohnsonArgs),
    /// Linear bound (u-1)q, the row-count-(u-1) case.
    Trung(TrungArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("range").required(true).args(["q", "table"])))]
struct JohnsonArgs {
    #[arg(long = "N", value_name = "ROWS")]
    rows: u64,
    #[arg(long = "type", value_name = "W1,W2,...")]
    sep_type: SepType,
    #[arg(long)]
    q: Option<u64>,
    /// Sweep q over an inclusive range and print TSV rows.
    #[arg(long, value_name = "QMIN:QMAX")]
    table: Option<String>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("range").required(true).args(["q", "table"])))]
struct TrungArgs {
    #[arg(long = "type", value_name = "W1,W2,...")]
    sep_type: SepType,
    #[arg(long)]
    q: Option<u64>,
    /// Sweep q over an inclusive range and print TSV rows.
    #[arg(long, value_name = "QMIN:QMAX")]
    table: Option<String>,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Drop columns holding a symbol no other column has in some row.
    Unique {
        #[arg(long)]
        file: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Merge row blocks down to a target row count over a power alphabet.
    Group {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_name = "ROWS")]
        target: usize,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Delete chosen rows plus one representative column per surviving pattern.
    Johnson {
        #[arg(long)]
        file: PathBuf,
        #[arg(long = "type", value_name = "W1,W2,...")]
        sep_type: SepType,
        /// Rows to delete, 1-based.
        #[arg(long, value_delimiter = ',', required = true, value_name = "R1,R2,...")]
        rows: Vec<usize>,
        /// Which weight of the sorted type loses one, 1-based.
        #[arg(long, value_name = "I")]
        decrement: usize,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SumfreeArgs {
    /// Elements are drawn from 0..=limit.
    #[arg(long)]
    limit: u64,
    /// 2sf, rsf:R, or phf4:MU.
    #[arg(long)]
    system: String,
    #[arg(long)]
    method: Method,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Layered digit-vector construction (2sf only).
    Behrend,
    /// Ascending scan keeping every element that preserves freeness.
    Greedy,
    /// Exhaustive maximum (guarded to small limits).
    Max,
}

#[derive(Subcommand)]
enum HyperCommand {
    /// Structural check on the hypergraph view of a matrix file.
    Check(CheckArgs),
    /// Extract a partite subhypergraph from an HG edge-list file.
    Extract {
        #[arg(long)]
        file: PathBuf,
        /// Uniformity; must match the file header.
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Search the coordinate-colored Hamming graph for a rainbow cycle.
    HammingCheck {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("check").required(true).args(["linear", "triangle", "rainbow", "gve"])))]
struct CheckArgs {
    #[arg(long)]
    file: PathBuf,
    /// Every two edges share at most one vertex.
    #[arg(long)]
    linear: bool,
    /// No three edges pairwise share a vertex across distinct parts.
    #[arg(long)]
    triangle: bool,
    /// No Berge cycle through pairwise distinct parts.
    #[arg(long)]
    rainbow: bool,
    /// No E edges spanned by V or fewer vertices.
    #[arg(long, value_name = "V,E")]
    gve: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
        if let Err(err) = pool {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command, cli.porcelain) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, porcelain: bool) -> Result<ExitCode> {
    match command {
        Command::Construct(cmd) => run_construct(cmd, porcelain),
        Command::Verify(args) => run_verify(args, porcelain),
        Command::Bound(cmd) => run_bound(cmd, porcelain),
        Command::Reduce(cmd) => run_reduce(cmd, porcelain),
        Command::Sumfree(args) => run_sumfree(args, porcelain),
        Command::Hyper(cmd) => run_hyper(cmd, porcelain),
    }
}

fn run_construct(cmd: ConstructCommand, porcelain: bool) -> Result<ExitCode> {
    let (m, output) = match cmd {
        ConstructCommand::Hamming { rows, q, output } => (hamming_projection_phf(rows, q)?, output),
        ConstructCommand::Gm {
            q,
            tangents,
            multipliers,
            output,
        } => {
            let multipliers = resolve_multipliers(q, &tangents, &multipliers)?;
            let m = gm_code(&GMParams {
                q,
                tangents,
                multipliers,
            })?;
            (m, output)
        }
        ConstructCommand::Phf3 { q, output } => (phf3_construct(q)?, output),
        ConstructCommand::Phf4 { q, output } => (phf4_construct(q)?, output),
    };
    let file = write_payload(&m.to_string(), output.as_ref(), porcelain)?;
    if porcelain {
        let mut pairs = matrix_pairs(&m);
        push_file(&mut pairs, &file);
        println!("{}", record(&pairs));
    } else {
        match &file {
            Some(file) => println!("wrote {} to {file}", matrix_summary(&m)),
            None => eprintln!("{}", matrix_summary(&m)),
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// "auto" derives multipliers greedily from the tangent difference equations.
fn resolve_multipliers(q: u64, tangents: &[u64], choice: &str) -> Result<Vec<u64>> {
    if choice != "auto" {
        return parse_u64_list(choice).context("--multipliers takes 'auto' or a comma list");
    }
    if !is_prime(q) {
        return Err(Error::NotPrime {
            q,
            nearest: nearest_prime(q),
        }
        .into());
    }
    let system = r_set_sum_free_system(tangents)?;
    let limit = (q - 1) / r_set_rank(tangents);
    Ok(greedy_avoiding_set(limit, &system).elements)
}

fn run_verify(args: VerifyArgs, porcelain: bool) -> Result<ExitCode> {
    let m = read_matrix(&args.file)?;
    let (label, report) = if let Some(ty) = &args.sep_type {
        (format!("type {ty} separation"), verify_shf(&m, ty))
    } else if let Some(t) = args.phf {
        (format!("{t}-subset injectivity"), verify_phf(&m, t)?)
    } else {
        let t = args.ipp.expect("clap group picked a property");
        (format!("{t}-parent identifiability"), verify_ipp(&m, t)?)
    };
    report_verdict(&m, &label, &report, porcelain)
}

fn report_verdict(
    m: &CodeMatrix,
    label: &str,
    report: &VerifyReport,
    porcelain: bool,
) -> Result<ExitCode> {
    if porcelain {
        let mut pairs = vec![
            ("verdict", verdict(report.passed).to_string()),
            ("vacuous", report.vacuous.to_string()),
            ("tuples", report.stats.tuples_examined.to_string()),
            ("rows-tested", report.stats.rows_tested.to_string()),
        ];
        if let Some(violation) = &report.violation {
            pairs.extend(violation_fields(violation));
        }
        println!("{}", record(&pairs));
    } else if report.passed {
        let vacuous = if report.vacuous {
            " (vacuously: fewer columns than the property needs)"
        } else {
            ""
        };
        println!("pass: {label}{vacuous}");
        println!("tuples examined: {}", report.stats.tuples_examined);
        println!("row tests: {}", report.stats.rows_tested);
    } else {
        let violation = report
            .violation
            .as_ref()
            .expect("failing reports carry a violation");
        println!("fail: {label}");
        println!("violation: {}", violation.kind());
        println!("{violation}");
        for line in row_notes(m, violation) {
            println!("{line}");
        }
    }
    Ok(exit_for(report.passed))
}

fn run_bound(cmd: BoundCommand, porcelain: bool) -> Result<ExitCode> {
    let (rows, q, table, ty) = match cmd {
        BoundCommand::Johnson(args) => (Some(args.rows), args.q, args.table, args.sep_type),
        BoundCommand::Trung(args) => (None, args.q, args.table, args.sep_type),
    };
    let eval = |q: u64| -> Result<BoundResult, Error> {
        match rows {
            Some(n) => johnson_bound(n, q, &ty),
            None => trung_bound(q, &ty),
        }
    };
    if let Some(range) = table {
        let (lo, hi) = parse_range(&range)?;
        for q in lo..=hi {
            let bound = eval(q)?;
            if bound.assumptions.is_empty() {
                println!("{q}\t{}", bound.value);
            } else {
                println!("{q}\t{}\theuristic", bound.value);
            }
        }
    } else {
        let bound = eval(q.expect("clap group picked q or table"))?;
        if porcelain {
            println!(
                "{}",
                record(&[
                    ("formula", bound.formula.to_string()),
                    ("value", bound.value.to_string()),
                    ("heuristic", (!bound.assumptions.is_empty()).to_string()),
                ])
            );
        } else {
            println!("{}", bound.value);
            eprintln!("formula: {}", bound.formula);
            for assumption in &bound.assumptions {
                eprintln!("note: {assumption}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_reduce(cmd: ReduceCommand, porcelain: bool) -> Result<ExitCode> {
    match cmd {
        ReduceCommand::Unique { file, output } => {
            let m = read_matrix(&file)?;
            let (kept, removed) = remove_unique_coordinate_columns(&m);
            let file = write_payload(&kept.to_string(), output.as_ref(), porcelain)?;
            if porcelain {
                let mut pairs = matrix_pairs(&kept);
                pairs.push(("removed", csv_one_based_or_dash(&removed)));
                push_file(&mut pairs, &file);
                println!("{}", record(&pairs));
            } else {
                note(
                    &file,
                    &format!(
                        "removed {} of {} columns{}",
                        removed.len(),
                        m.cols(),
                        if removed.is_empty() {
                            String::new()
                        } else {
                            format!(": {}", csv_one_based(&removed))
                        }
                    ),
                );
                if let Some(file) = &file {
                    println!("wrote {} to {file}", matrix_summary(&kept));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        ReduceCommand::Group {
            file,
            target,
            output,
        } => {
            let m = read_matrix(&file)?;
            let grouped = group_coordinates(&m, target)?;
            let file = write_payload(&grouped.to_string(), output.as_ref(), porcelain)?;
            if porcelain {
                let mut pairs = matrix_pairs(&grouped);
                push_file(&mut pairs, &file);
                println!("{}", record(&pairs));
            } else {
                match &file {
                    Some(file) => println!("wrote {} to {file}", matrix_summary(&grouped)),
                    None => eprintln!("{}", matrix_summary(&grouped)),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        ReduceCommand::Johnson {
            file,
            sep_type,
            rows,
            decrement,
            output,
        } => {
            let m = read_matrix(&file)?;
            let chosen = to_zero_based(&rows, "--rows")?;
            let dec = decrement
                .checked_sub(1)
                .context("--decrement is 1-based")?;
            match johnson_reduce(&m, &sep_type, &chosen, dec)? {
                ReduceOutcome::Separating { matrix, sep_type } => {
                    let file = write_payload(&matrix.to_string(), output.as_ref(), porcelain)?;
                    if porcelain {
                        let mut pairs = vec![("outcome", "separating".to_string())];
                        pairs.extend(matrix_pairs(&matrix));
                        pairs.push(("type", csv(sep_type.weights())));
                        push_file(&mut pairs, &file);
                        println!("{}", record(&pairs));
                    } else {
                        note(
                            &file,
                            &format!("reduced to {} for type {sep_type}", matrix_summary(&matrix)),
                        );
                        if let Some(file) = &file {
                            println!("wrote the reduced matrix to {file}");
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                ReduceOutcome::Exhausted {
                    matrix,
                    remaining_columns,
                } => {
                    if let (Some(matrix), Some(path)) = (&matrix, output.as_ref()) {
                        fs::write(path, matrix.to_string())
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    if porcelain {
                        println!(
                            "{}",
                            record(&[
                                ("outcome", "exhausted".to_string()),
                                ("remaining", remaining_columns.to_string()),
                            ])
                        );
                    } else {
                        println!(
                            "reduction exhausted: {remaining_columns} columns remain, too few to keep reducing"
                        );
                    }
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}

fn run_sumfree(args: SumfreeArgs, porcelain: bool) -> Result<ExitCode> {
    let set: AvoidingSet = match args.method {
        Method::Behrend => {
            if args.system != "2sf" {
                bail!(
                    "--method behrend builds 2sf sets only, not {:?}",
                    args.system
                );
            }
            behrend_set(args.limit)
        }
        Method::Greedy => greedy_avoiding_set(args.limit, &parse_system(&args.system)?),
        Method::Max => max_avoiding_set(args.limit, &parse_system(&args.system)?)?,
    };
    if porcelain {
        println!(
            "{}",
            record(&[
                ("method", method_name(args.method).to_string()),
                ("system", args.system.clone()),
                ("limit", set.limit.to_string()),
                ("size", set.elements.len().to_string()),
                ("elements", csv_or_dash(&set.elements)),
            ])
        );
    } else {
        for element in &set.elements {
            println!("{element}");
        }
        eprintln!("{} elements within 0..={}", set.elements.len(), set.limit);
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_system(name: &str) -> Result<EquationSystem> {
    if name == "2sf" {
        return Ok(two_sum_free_system());
    }
    if let Some(r) = name.strip_prefix("rsf:") {
        let r = r.trim().parse().with_context(|| format!("bad order in {name:?}"))?;
        return Ok(r_sum_free_system(r)?);
    }
    if let Some(mu) = name.strip_prefix("phf4:") {
        let mu = mu
            .trim()
            .parse()
            .with_context(|| format!("bad parameter in {name:?}"))?;
        return Ok(phf4_system(mu));
    }
    bail!("unknown system {name:?}; expected 2sf, rsf:R, or phf4:MU")
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Behrend => "behrend",
        Method::Greedy => "greedy",
        Method::Max => "max",
    }
}

fn run_hyper(cmd: HyperCommand, porcelain: bool) -> Result<ExitCode> {
    match cmd {
        HyperCommand::Check(args) => run_check(args, porcelain),
        HyperCommand::Extract {
            file,
            r,
            seed,
            output,
        } => run_extract(&file, r, seed, output.as_ref(), porcelain),
        HyperCommand::HammingCheck { k, q } => run_hamming_check(k, q, porcelain),
    }
}

fn run_check(args: CheckArgs, porcelain: bool) -> Result<ExitCode> {
    let m = read_matrix(&args.file)?;
    let g = matrix_to_hypergraph(&m);
    let (label, mut pairs, finding) = if args.linear {
        (
            "linear".to_string(),
            vec![("check", "linear".to_string())],
            is_linear(&g),
        )
    } else if args.triangle {
        (
            "triangle-free".to_string(),
            vec![("check", "triangle".to_string())],
            find_triangle(&g)?,
        )
    } else if args.rainbow {
        (
            "rainbow-cycle-free".to_string(),
            vec![("check", "rainbow".to_string())],
            find_rainbow_cycle(&g)?,
        )
    } else {
        let pair = args.gve.as_ref().expect("clap group picked a check");
        let (v, e) = parse_pair(pair).context("--gve takes V,E")?;
        (
            format!("({v},{e})-free"),
            vec![
                ("check", "gve".to_string()),
                ("v", v.to_string()),
                ("e", e.to_string()),
            ],
            is_gve_free(&g, v, e)?,
        )
    };
    match finding {
        None => {
            if porcelain {
                pairs.insert(0, ("verdict", "pass".to_string()));
                println!("{}", record(&pairs));
            } else {
                println!("pass: {label}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(violation) => {
            if porcelain {
                pairs.insert(0, ("verdict", "fail".to_string()));
                pairs.extend(violation_fields(&violation));
                println!("{}", record(&pairs));
            } else {
                println!("fail: {label}");
                println!("violation: {}", violation.kind());
                println!("{violation}");
                for line in edge_notes(&g, &violation) {
                    println!("{line}");
                }
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn run_extract(
    file: &PathBuf,
    r: usize,
    seed: u64,
    output: Option<&PathBuf>,
    porcelain: bool,
) -> Result<ExitCode> {
    let text =
        fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let h = UniformHypergraph::parse(&text)
        .with_context(|| format!("parsing {}", file.display()))?;
    if h.r() != r {
        bail!("--r {r} does not match the file's uniformity {}", h.r());
    }
    let result = extract_partite(&h, seed)?;
    let m = hypergraph_to_matrix(&result.partite);
    let file = write_payload(&m.to_string(), output, porcelain)?;
    if porcelain {
        let mut pairs = vec![
            ("achieved", result.achieved.to_string()),
            ("target", result.target.to_string()),
            ("met", result.met_target.to_string()),
            ("kept", csv_one_based_or_dash(&result.kept)),
        ];
        pairs.extend(matrix_pairs(&m));
        push_file(&mut pairs, &file);
        println!("{}", record(&pairs));
    } else {
        note(
            &file,
            &format!(
                "kept {} of {} edges (target {})",
                result.achieved,
                h.edges().len(),
                result.target
            ),
        );
        for part in 0..r {
            let members: Vec<usize> = result
                .assignment
                .iter()
                .enumerate()
                .filter(|(_, (p, _))| *p == part)
                .map(|(v, _)| v + 1)
                .collect();
            note(&file, &format!("part {}: vertices {}", part + 1, csv(&members)));
        }
        if !result.met_target {
            eprintln!("warning: every sampled partition stayed below the target");
        }
        if let Some(file) = &file {
            println!("wrote {} to {file}", matrix_summary(&m));
        }
    }
    Ok(exit_for(result.met_target))
}

fn run_hamming_check(k: usize, q: u32, porcelain: bool) -> Result<ExitCode> {
    match hamming_rainbow_check(k, q)? {
        None => {
            if porcelain {
                println!(
                    "{}",
                    record(&[
                        ("verdict", "pass".to_string()),
                        ("k", k.to_string()),
                        ("q", q.to_string()),
                    ])
                );
            } else {
                println!("pass: no cycle changes {k} pairwise distinct coordinates (q={q})");
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(cycle) => {
            if porcelain {
                let vertices: Vec<String> = cycle
                    .vertices
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>()
                            .join(".")
                    })
                    .collect();
                println!(
                    "{}",
                    record(&[
                        ("verdict", "fail".to_string()),
                        ("k", k.to_string()),
                        ("q", q.to_string()),
                        ("length", cycle.vertices.len().to_string()),
                        ("colors", csv_one_based(&cycle.colors)),
                        ("vertices", vertices.join(",")),
                    ])
                );
            } else {
                println!("fail: rainbow cycle of length {}", cycle.vertices.len());
                let len = cycle.vertices.len();
                for i in 0..len {
                    println!(
                        "step {}: ({}) -> ({}) changes coordinate {}",
                        i + 1,
                        csv(&cycle.vertices[i]),
                        csv(&cycle.vertices[(i + 1) % len]),
                        cycle.colors[i] + 1,
                    );
                }
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn read_matrix(path: &PathBuf) -> Result<CodeMatrix> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CodeMatrix::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes a matrix-shaped payload to the file, or to stdout when no file is
/// given. Porcelain keeps stdout for the record line, so it insists on a file.
fn write_payload(
    text: &str,
    output: Option<&PathBuf>,
    porcelain: bool,
) -> Result<Option<String>> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Some(path.display().to_string()))
        }
        None if porcelain => bail!("--porcelain prints a single record line; add -o FILE for the matrix itself"),
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

/// Commentary goes to stderr while the payload occupies stdout.
fn note(payload_file: &Option<String>, message: &str) {
    if payload_file.is_some() {
        println!("{message}");
    } else {
        eprintln!("{message}");
    }
}

fn matrix_summary(m: &CodeMatrix) -> String {
    format!("{} x {} over alphabet {}", m.rows(), m.cols(), m.alphabet())
}

fn matrix_pairs(m: &CodeMatrix) -> Vec<(&'static str, String)> {
    vec![
        ("rows", m.rows().to_string()),
        ("cols", m.cols().to_string()),
        ("alphabet", m.alphabet().to_string()),
    ]
}

fn push_file(pairs: &mut Vec<(&'static str, String)>, file: &Option<String>) {
    if let Some(file) = file {
        pairs.push(("file", file.clone()));
    }
}

fn record(pairs: &[(&'static str, String)]) -> String {
    pairs
        .iter()
        .map(|(key, value)| format!("{key}={value}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

fn exit_for(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn csv<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn csv_or_dash<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        csv(items)
    }
}

fn csv_one_based(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn csv_one_based_or_dash(indices: &[usize]) -> String {
    if indices.is_empty() {
        "-".to_string()
    } else {
        csv_one_based(indices)
    }
}

fn groups_one_based(groups: &[Vec<usize>]) -> String {
    groups
        .iter()
        .map(|group| csv_one_based(group))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|token| {
            token
                .trim()
                .parse::<u64>()
                .with_context(|| format!("bad integer {token:?}"))
        })
        .collect()
}

fn parse_pair(text: &str) -> Result<(usize, usize)> {
    let (a, b) = text.split_once(',').context("expected two integers")?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let (lo, hi) = text
        .split_once(':')
        .with_context(|| format!("expected QMIN:QMAX, got {text:?}"))?;
    let lo: u64 = lo.trim().parse().with_context(|| format!("bad bound {lo:?}"))?;
    let hi: u64 = hi.trim().parse().with_context(|| format!("bad bound {hi:?}"))?;
    if lo > hi {
        bail!("empty range {lo}:{hi}");
    }
    Ok((lo, hi))
}

fn to_zero_based(indices: &[usize], flag: &str) -> Result<Vec<usize>> {
    indices
        .iter()
        .map(|&i| i.checked_sub(1).with_context(|| format!("{flag} is 1-based")))
        .collect()
}

/// One porcelain field set per violation kind, indices 1-based.
fn violation_fields(violation: &Violation) -> Vec<(&'static str, String)> {
    let mut pairs = vec![("kind", violation.kind().to_string())];
    match violation {
        Violation::Unseparated { parts } => pairs.push(("parts", groups_one_based(parts))),
        Violation::RepeatedRestriction { columns } => {
            pairs.push(("columns", csv_one_based(columns)));
        }
        Violation::PairAgreement {
            first,
            second,
            rows,
        } => {
            pairs.push(("columns", format!("{},{}", first + 1, second + 1)));
            pairs.push(("rows", csv_one_based(rows)));
        }
        Violation::Triangle { edges } => pairs.push(("edges", csv_one_based(edges))),
        Violation::Rainbow(cycle) => {
            pairs.push(("edges", csv_one_based(&cycle.edges)));
            let vertices: Vec<String> = cycle
                .vertices
                .iter()
                .map(|(part, symbol)| format!("{}:{symbol}", part + 1))
                .collect();
            pairs.push(("vertices", vertices.join(",")));
        }
        Violation::EdgeSpan { edges, spanned } => {
            pairs.push(("edges", csv_one_based(edges)));
            pairs.push(("spanned", spanned.to_string()));
        }
        Violation::EquationSolution {
            coefficients,
            values,
        } => {
            pairs.push(("coefficients", csv(coefficients)));
            pairs.push(("values", csv(values)));
        }
        Violation::IppAmbiguous { word, parents } => {
            pairs.push(("word", csv(word)));
            pairs.push(("parents", groups_one_based(parents)));
        }
    }
    pairs
}

/// Per-row commentary for verifier witnesses: where the collision sits.
fn row_notes(m: &CodeMatrix, violation: &Violation) -> Vec<String> {
    match violation {
        Violation::Unseparated { parts } => (0..m.rows())
            .filter_map(|row| {
                parts.iter().enumerate().find_map(|(i, first)| {
                    parts[i + 1..].iter().find_map(|second| {
                        shared_symbol(m, row, first, second).map(|(a, b)| {
                            format!(
                                "row {}: columns {} and {} share symbol {}",
                                row + 1,
                                a + 1,
                                b + 1,
                                m.symbol(row, a),
                            )
                        })
                    })
                })
            })
            .collect(),
        Violation::RepeatedRestriction { columns } => (0..m.rows())
            .filter_map(|row| {
                shared_symbol(m, row, columns, columns).map(|(a, b)| {
                    format!(
                        "row {}: columns {} and {} share symbol {}",
                        row + 1,
                        a + 1,
                        b + 1,
                        m.symbol(row, a),
                    )
                })
            })
            .collect(),
        Violation::IppAmbiguous { word, parents } => (0..m.rows())
            .map(|row| {
                let sources: Vec<String> = parents
                    .iter()
                    .map(|set| {
                        set.iter()
                            .find(|&&col| m.symbol(row, col) == word[row])
                            .map(|&col| (col + 1).to_string())
                            .unwrap_or_else(|| "?".to_string())
                    })
                    .collect();
                format!(
                    "row {}: symbol {} available from columns {}",
                    row + 1,
                    word[row],
                    sources.join(" and "),
                )
            })
            .collect(),
        _ => Vec::new(),
    }
}

/// A pair of distinct columns, one from each slice, with equal symbols in the row.
fn shared_symbol(
    m: &CodeMatrix,
    row: usize,
    first: &[usize],
    second: &[usize],
) -> Option<(usize, usize)> {
    first.iter().find_map(|&a| {
        second
            .iter()
            .find(|&&b| b != a && m.symbol(row, a) == m.symbol(row, b))
            .map(|&b| (a, b))
    })
}

/// The symbol lists of the edges a hypergraph witness points at.
fn edge_notes(g: &PartiteHypergraph, violation: &Violation) -> Vec<String> {
    let involved: Vec<usize> = match violation {
        Violation::PairAgreement { first, second, .. } => vec![*first, *second],
        Violation::Triangle { edges } => edges.to_vec(),
        Violation::Rainbow(cycle) => cycle.edges.clone(),
        Violation::EdgeSpan { edges, .. } => edges.clone(),
        _ => Vec::new(),
    };
    involved
        .iter()
        .map(|&edge| {
            let symbols: Vec<String> = g.edges()[edge].iter().map(|s| s.to_string()).collect();
            format!("edge {}: symbols {}", edge + 1, symbols.join(" "))
        })
        .collect()
}
