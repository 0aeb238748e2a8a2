//! Command-line interface: enumeration, the two operations, verification
//! suites, and structure-table export, all speaking JSON on stdin/stdout.
//!
//! Exit codes: `0` success, `1` a verification suite found counterexamples,
//! `2` invalid input or parameters, `3` an internal invariant broke.

use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{generator_product, Element, StrandGenerator};
use crate::asteroids::CyclicLiftedPermutation;
use crate::cache;
use crate::error::{Error, Result};
use crate::io::{self, ElementRecord, GeneratorRecord};
use crate::perm::LiftedPermutation;
use crate::verify::{self, Suite};

#[derive(Parser)]
#[command(
    name = "pong",
    version,
    about = "Strand algebras over reflective and cyclic symmetry groups"
)]
struct Cli {
    /// Generator family: "pong" (reflective) or "asteroids" (cyclic).
    /// For elements read from stdin this is a fallback; an explicit
    /// "algebra" tag in the input wins.  Verification suites pick their
    /// own family.
    #[arg(long, global = true, default_value = "pong", value_parser = ["pong", "asteroids"])]
    algebra: String,

    /// Width parameter m.
    #[arg(long, global = true)]
    m: Option<i64>,

    /// Strand count k.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Displacement bound for enumerations.
    #[arg(long, global = true, default_value_t = 3)]
    max_disp: i64,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Directory for cached generator tables.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Output format (only "json" is supported).
    #[arg(long, global = true, default_value = "json", value_parser = ["json"])]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every generator within the displacement bound.
    Gens,
    /// Differential of the element read from stdin.
    Diff,
    /// Product of the two elements read from stdin (a JSON array of two).
    Mul,
    /// Run a verification suite and print its report.
    Verify {
        /// One of: dga, asteroids, oracle-diff, oracle-mul, order, euler, all.
        #[arg(long)]
        suite: String,
    },
    /// Export generators with differential and product tables.
    ExportTable,
}

/// Parses the command line, runs the command, and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::InvalidInput("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::InvalidInput(format!("could not set up {jobs} workers: {e}")))?;
    }
    match &cli.command {
        Command::Gens => cmd_gens(&cli),
        Command::Diff => cmd_diff(&cli),
        Command::Mul => cmd_mul(&cli),
        Command::Verify { suite } => cmd_verify(&cli, suite),
        Command::ExportTable => cmd_export(&cli),
    }
}

fn require_m(cli: &Cli) -> Result<i64> {
    cli.m
        .ok_or_else(|| Error::InvalidInput("--m is required for this command".into()))
}

fn require_k(cli: &Cli) -> Result<usize> {
    cli.k
        .ok_or_else(|| Error::InvalidInput("--k is required for this command".into()))
}

fn cmd_gens(cli: &Cli) -> Result<i32> {
    let (m, k) = (require_m(cli)?, require_k(cli)?);
    let records = match cli.algebra.as_str() {
        "asteroids" => gens_records::<CyclicLiftedPermutation>(cli, m, k)?,
        _ => gens_records::<LiftedPermutation>(cli, m, k)?,
    };
    print!("{}", io::to_json_line(&records)?);
    Ok(0)
}

fn gens_records<G: StrandGenerator>(cli: &Cli, m: i64, k: usize) -> Result<Vec<GeneratorRecord>> {
    let gens: Vec<G> = cache::generators(cli.cache.as_deref(), m, k, cli.max_disp)?;
    Ok(gens.iter().map(GeneratorRecord::from_generator).collect())
}

/// The family an element input belongs to: an explicit tag wins, the
/// `--algebra` flag is the fallback.
fn effective_algebra<'a>(cli: &'a Cli, values: &[&Value]) -> &'a str {
    for value in values {
        if let Some(tag) = io::algebra_tag_of(value) {
            return if tag == "asteroids" {
                "asteroids"
            } else {
                "pong"
            };
        }
    }
    &cli.algebra
}

fn read_stdin_json() -> Result<Value> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf)?;
    Ok(serde_json::from_str(&buf)?)
}

fn cmd_diff(cli: &Cli) -> Result<i32> {
    let value = read_stdin_json()?;
    let record = match effective_algebra(cli, &[&value]) {
        "asteroids" => diff_record::<CyclicLiftedPermutation>(&value)?,
        _ => diff_record::<LiftedPermutation>(&value)?,
    };
    print!("{}", io::to_json_line(&record)?);
    Ok(0)
}

fn diff_record<G: StrandGenerator>(value: &Value) -> Result<ElementRecord> {
    let element: Element<G> = io::parse_element(value)?;
    Ok(ElementRecord::from_element(&element.diff()?))
}

fn cmd_mul(cli: &Cli) -> Result<i32> {
    let value = read_stdin_json()?;
    let Some(items) = value.as_array() else {
        return Err(Error::InvalidInput(
            "mul expects a JSON array of two elements".into(),
        ));
    };
    let [left, right] = items.as_slice() else {
        return Err(Error::InvalidInput(format!(
            "mul expects exactly two elements, got {}",
            items.len()
        )));
    };
    let record = match effective_algebra(cli, &[left, right]) {
        "asteroids" => mul_record::<CyclicLiftedPermutation>(left, right)?,
        _ => mul_record::<LiftedPermutation>(left, right)?,
    };
    print!("{}", io::to_json_line(&record)?);
    Ok(0)
}

fn mul_record<G: StrandGenerator>(left: &Value, right: &Value) -> Result<ElementRecord> {
    let a: Element<G> = io::parse_element(left)?;
    let b: Element<G> = io::parse_element(right)?;
    Ok(ElementRecord::from_element(&a.mu2(&b)?))
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<i32> {
    let suite = Suite::parse(suite).ok_or_else(|| {
        Error::InvalidInput(format!(
            "unknown suite {suite:?}; expected one of {}",
            Suite::NAMES.join(", ")
        ))
    })?;
    let (m, k) = (require_m(cli)?, require_k(cli)?);
    let report = verify::run(suite, m, k, cli.max_disp, cli.cache.as_deref())?;
    print!("{}", io::to_json_line(&report)?);
    Ok(if report.passed() { 0 } else { 1 })
}

/// Structure tables: every generator within the bound, its differential,
/// and all nonzero pairwise products, with full records throughout (product
/// and differential terms may fall outside the displacement bound).
#[derive(Serialize)]
struct ExportTable {
    format_version: u32,
    algebra: String,
    m: i64,
    k: usize,
    max_disp: i64,
    generators: Vec<GeneratorRecord>,
    differential: Vec<DifferentialEntry>,
    products: Vec<ProductEntry>,
}

#[derive(Serialize)]
struct DifferentialEntry {
    from: usize,
    element: ElementRecord,
}

#[derive(Serialize)]
struct ProductEntry {
    left: usize,
    right: usize,
    element: ElementRecord,
}

fn cmd_export(cli: &Cli) -> Result<i32> {
    let (m, k) = (require_m(cli)?, require_k(cli)?);
    let table = match cli.algebra.as_str() {
        "asteroids" => export_table::<CyclicLiftedPermutation>(cli, m, k)?,
        _ => export_table::<LiftedPermutation>(cli, m, k)?,
    };
    print!("{}", io::to_json_line(&table)?);
    Ok(0)
}

fn export_table<G: StrandGenerator>(cli: &Cli, m: i64, k: usize) -> Result<ExportTable> {
    let gens: Vec<G> = cache::generators(cli.cache.as_deref(), m, k, cli.max_disp)?;
    let mut differential = Vec::new();
    for (from, g) in gens.iter().enumerate() {
        let d = Element::generator(g.clone()).diff()?;
        if !d.is_zero() {
            differential.push(DifferentialEntry {
                from,
                element: ElementRecord::from_element(&d),
            });
        }
    }
    let mut products = Vec::new();
    for (left, f) in gens.iter().enumerate() {
        for (right, g) in gens.iter().enumerate() {
            if let Some((h, mono)) = generator_product(f, g)? {
                products.push(ProductEntry {
                    left,
                    right,
                    element: ElementRecord::from_element(&Element::term(h, mono.into())),
                });
            }
        }
    }
    Ok(ExportTable {
        format_version: cache::FORMAT_VERSION,
        algebra: G::algebra_name().to_string(),
        m,
        k,
        max_disp: cli.max_disp,
        generators: gens.iter().map(GeneratorRecord::from_generator).collect(),
        differential,
        products,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_surface_parses() {
        let cli = Cli::try_parse_from([
            "pong",
            "verify",
            "--suite",
            "dga",
            "--m",
            "3",
            "--k",
            "1",
            "--max-disp",
            "4",
            "--jobs",
            "2",
            "--format",
            "json",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Verify { ref suite } if suite == "dga"));
        assert_eq!(cli.m, Some(3));
        assert_eq!(cli.k, Some(1));
        assert_eq!(cli.max_disp, 4);
        assert_eq!(cli.jobs, Some(2));

        let cli = Cli::try_parse_from([
            "pong",
            "gens",
            "--algebra",
            "asteroids",
            "--m",
            "2",
            "--k",
            "1",
        ])
        .unwrap();
        assert_eq!(cli.algebra, "asteroids");
        assert_eq!(cli.max_disp, 3);

        assert!(Cli::try_parse_from(["pong", "gens", "--algebra", "tennis"]).is_err());
        assert!(Cli::try_parse_from(["pong", "gens", "--format", "yaml"]).is_err());
    }

    #[test]
    fn missing_parameters_are_invalid_input() {
        let cli = Cli::try_parse_from(["pong", "gens"]).unwrap();
        let err = dispatch(cli).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_suite_is_invalid_input() {
        let cli =
            Cli::try_parse_from(["pong", "verify", "--suite", "quux", "--m", "2", "--k", "1"])
                .unwrap();
        let err = dispatch(cli).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn export_table_is_deterministic_and_complete() {
        let cli = Cli::try_parse_from(["pong", "export-table", "--m", "2", "--k", "1"]).unwrap();
        let (m, k) = (require_m(&cli).unwrap(), require_k(&cli).unwrap());
        let a = export_table::<LiftedPermutation>(&cli, m, k).unwrap();
        let b = export_table::<LiftedPermutation>(&cli, m, k).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(!a.generators.is_empty());
        assert!(!a.products.is_empty());
    }
}
