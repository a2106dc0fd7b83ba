//! Command-line front end. [`run`] holds all the logic so it can be driven
//! from tests with in-memory streams.

use std::io::{Read, Write};
use std::path::PathBuf;

use bookcoh::algebra::poisson::{parse_rational, ConstantsDoc};
use bookcoh::cohomology::{admissible_basis, classify, cohomology_dims, find_primitive, CohomologyClass, DimsTable};
use bookcoh::verify::{all_passed, run_all};
use bookcoh::{format_multivector, parse_multivector, PolyMultivector, Rational};
use clap::{Parser, Subcommand};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bookcoh", version, about = "Exact Poisson cohomology of the book structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimensions of H^{k,d} and the totals per degree
    Dims {
        #[arg(long)]
        n: usize,
        /// Largest coefficient degree (default k+3 for each k)
        #[arg(long)]
        dmax: Option<u32>,
        /// Also write the table as JSON to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Admissible cocycles representing a basis of H^k
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Coordinates of the class of a cocycle read from a file or stdin
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0")]
        t0: String,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// A primitive of an exact cocycle, or NOT_EXACT
    Primitive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run every randomized and exhaustive check
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Dimensions for a linear Poisson structure given by structure constants
    Lie {
        #[arg(long)]
        json: PathBuf,
        #[arg(long)]
        dmax: Option<u32>,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: EXIT_USAGE, msg: e.to_string() }
    }
}

/// Parses `args` (including the program name) and executes the command.
/// Diagnostics go to `err`; the exit code is returned.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match execute(cli.command, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn read_input(file: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match file {
        Some(p) => Ok(std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn parse_input(text: &str, n: usize) -> Result<PolyMultivector, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err("no multivector given".into());
    }
    Ok(parse_multivector(trimmed, n)?)
}

fn execute(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Dims { n, dmax, json } => {
            let table = cohomology_dims(n, dmax, None)?;
            write_table(out, &table)?;
            if let Some(path) = json {
                std::fs::write(&path, serde_json::to_string_pretty(&table)?)?;
            }
        }
        Command::Basis { n, k } => {
            if k > n {
                return Err(format!("degree {k} exceeds the dimension {n}").into());
            }
            for b in admissible_basis(n, k)? {
                writeln!(out, "{}", format_multivector(&b))?;
            }
        }
        Command::Classify { n, t0, file } => {
            let t0: Rational = parse_rational(&t0)?;
            let mu = parse_input(&read_input(file.as_ref(), stdin)?, n)?;
            let class = classify(&mu, &t0)?;
            write_class(out, &class)?;
        }
        Command::Primitive { n, file } => {
            let mu = parse_input(&read_input(file.as_ref(), stdin)?, n)?;
            match find_primitive(&mu, None)? {
                Some(z) => writeln!(out, "{}", format_multivector(&z))?,
                None => writeln!(out, "NOT_EXACT")?,
            }
        }
        Command::Verify { n, seed, trials } => {
            let results = run_all(n, seed, trials);
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status}  {:<width$}  {}", r.name, r.detail)?;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} checks, {failed} failed (n = {n}, seed = {seed}, trials = {trials})", results.len())?;
            return Ok(if all_passed(&results) { EXIT_OK } else { EXIT_FAILED });
        }
        Command::Lie { json, dmax } => {
            let text = std::fs::read_to_string(&json).map_err(|e| format!("{}: {e}", json.display()))?;
            let doc: ConstantsDoc = serde_json::from_str(&text)?;
            let pi = doc.build()?;
            let table = cohomology_dims(pi.dim(), dmax, Some(&pi))?;
            write_table(out, &table)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_table(out: &mut dyn Write, table: &DimsTable) -> std::io::Result<()> {
    let kind = if table.label == "book" { "book structure" } else { "formal (polynomial) cohomology" };
    writeln!(out, "n = {}, {kind}", table.n)?;
    writeln!(out, "dim H^{{k,d}} for d = 0, 1, ...")?;
    for (k, row) in table.entries.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|(_, h)| h.to_string()).collect();
        writeln!(out, "H^{k}: {}  total {}", cells.join(" "), table.totals[k])?;
    }
    let totals: Vec<String> = table.totals.iter().map(|t| t.to_string()).collect();
    writeln!(out, "totals: {}", totals.join(", "))
}

fn write_class(out: &mut dyn Write, c: &CohomologyClass) -> std::io::Result<()> {
    if c.is_zero() {
        return writeln!(out, "0");
    }
    for (p, v) in &c.dt_coords {
        writeln!(out, "dt^{p}: {v}")?;
    }
    for (p, v) in &c.plain_coords {
        writeln!(out, "{p}: {v}")?;
    }
    Ok(())
}

/// The class as JSON: `{"dt": {"(I|J)": "p/q"}, "plain": {...}}`.
pub fn class_json(c: &CohomologyClass) -> serde_json::Value {
    let m = |x: &std::collections::BTreeMap<bookcoh::indexing::IndexPair, Rational>| {
        x.iter().map(|(p, v)| (p.to_string(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>()
    };
    json!({ "n": c.n, "k": c.k, "dt": m(&c.dt_coords), "plain": m(&c.plain_coords) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bookcoh").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dims_n3() {
        let (code, out, _) = call(&["dims", "--n", "3"], "");
        assert_eq!(code, 0);
        assert!(out.contains("totals: 1, 4, 3, 0"), "{out}");
        assert!(out.contains("H^1: 1 3 0 0 0  total 4"), "{out}");
    }

    #[test]
    fn basis_n3() {
        let (_, out, _) = call(&["basis", "--n", "3", "--k", "2"], "");
        assert_eq!(out, "u1*dt^du1\nu2*dt^du1\nu1*dt^du2\n");
        let (_, out, _) = call(&["basis", "--n", "3", "--k", "1"], "");
        assert_eq!(out, "dt\nu1*du1\nu2*du1\nu1*du2\n");
    }

    #[test]
    fn classify_stdin() {
        let (code, out, _) = call(&["classify", "--n", "3"], "dt + u2*du1\n");
        assert_eq!(code, 0);
        assert_eq!(out, "dt^(|): 1\n(2|1): 1\n");
        let (_, out, _) = call(&["classify", "--n", "3", "--t0", "7/2"], "u1*du1 + u2*du2");
        assert_eq!(out, "0\n");
    }

    #[test]
    fn primitive_verb() {
        let (_, out, _) = call(&["primitive", "--n", "3"], "-u1*du1 - u2*du2");
        assert_eq!(out, "t*1\n");
        let (_, out, _) = call(&["primitive", "--n", "2"], "dt");
        assert_eq!(out, "NOT_EXACT\n");
        let (code, _, err) = call(&["primitive", "--n", "2"], "t");
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("cocycle"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["dims"], "").0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"], "").0, EXIT_USAGE);
        assert_eq!(call(&["dims", "--n", "1"], "").0, EXIT_USAGE);
        assert_eq!(call(&["classify", "--n", "3"], "u5*du1").0, EXIT_USAGE);
        assert_eq!(call(&["classify", "--n", "3"], "").0, EXIT_USAGE);
        assert_eq!(call(&["--help"], "").0, EXIT_OK);
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = call(&["verify", "--n", "2", "--trials", "5", "--seed", "3"], "");
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().filter(|l| l.starts_with("PASS")).count() > 20);
        let (_, again, _) = call(&["verify", "--n", "2", "--trials", "5", "--seed", "3"], "");
        assert_eq!(out, again);
    }

    #[test]
    fn lie_verb() {
        let dir = std::env::temp_dir().join(format!("bookcoh-lie-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let book = dir.join("book.json");
        std::fs::write(&book, r#"{"dim": 3, "c": [[0, 1, 1, "1"], [0, 2, 2, 1]]}"#).unwrap();
        let (code, out, _) = call(&["lie", "--json", book.to_str().unwrap()], "");
        assert_eq!(code, 0);
        assert!(out.contains("totals: 1, 4, 3, 0"), "{out}");
        let so3 = dir.join("so3.json");
        std::fs::write(&so3, r#"{"dim": 4, "c": [[1, 2, 3, "1"], [2, 3, 1, "1"], [3, 1, 2, "1"]]}"#).unwrap();
        let (code, out, _) = call(&["lie", "--json", so3.to_str().unwrap(), "--dmax", "2"], "");
        assert_eq!(code, 0);
        assert!(out.contains("formal"), "{out}");
        let bad = dir.join("bad.json");
        std::fs::write(&bad, r#"{"dim": 3, "c": [[0, 1, 1, "1"], [1, 0, 1, "1"]]}"#).unwrap();
        assert_eq!(call(&["lie", "--json", bad.to_str().unwrap()], "").0, EXIT_USAGE);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn class_json_shape() {
        let mu = parse_multivector("dt + u2*du1", 3).unwrap();
        let v = class_json(&classify(&mu, &Rational::from_integer(0.into())).unwrap());
        assert_eq!(v["dt"]["(|)"], "1");
        assert_eq!(v["plain"]["(2|1)"], "1");
    }
}
