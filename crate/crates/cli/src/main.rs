//! Command-line front end: level dimension tables, Kac determinants and
//! their factorizations, singular-vector construction and verification,
//! kernel scans at numeric weights, and a cached verification suite.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 mathematical
//! verification failure.

mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cga_core::algebra::HalfInt;
use cga_core::exact::{parse_rational, Rational};
use cga_core::json as report_json;
use cga_core::partitions;
use cga_core::shapovalov::kac_matrix;
use cga_core::singular::{null_space, verify_singular, verify_singular_with_mu, SingularError};

#[derive(Parser)]
#[command(name = "cga", version, about = "Verma modules of the centrally extended conformal Galilei algebras: exact determinants, singular vectors, and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Table of level dimensions d, mu-exponents e, and odd-part counts O
    Dims {
        #[arg(long)]
        ell: String,
        #[arg(long, default_value_t = 10)]
        max_level: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Determinant of the level Gram matrix, optionally factored
    Kac {
        #[arg(long)]
        ell: String,
        #[arg(long)]
        level: u32,
        /// also extract and verify the closed-form factorization
        #[arg(long)]
        factor: bool,
        /// write the full JSON report (basis, matrix, determinant,
        /// factorization, structure checks) to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the level-2q singular vector and verify it
    Singular {
        #[arg(long)]
        ell: String,
        #[arg(long)]
        q: u32,
        /// a rational value, or "sym" to keep mu symbolic
        #[arg(long, default_value = "sym", allow_hyphen_values = true)]
        mu: String,
    },
    /// Dimension of the space of singular vectors at a numeric weight
    Scan {
        #[arg(long)]
        ell: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        level: u32,
    },
    /// Run the verification suite over a grid of (ell, level) cells
    Verify {
        /// comma-separated list, e.g. "1/2,3/2"
        #[arg(long)]
        ell: String,
        #[arg(long, default_value_t = 6)]
        max_level: u32,
        /// cache directory; defaults to $CGA_CACHE_DIR if set
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

const USAGE: u8 = 2;
const MATH_FAILURE: u8 = 3;

fn parse_ell(s: &str) -> Result<HalfInt, u8> {
    s.parse().map_err(|_| {
        eprintln!("error: ℓ must be an odd half-integer (got \"{}\")", s);
        USAGE
    })
}

fn parse_rat_arg(s: &str, what: &str) -> Result<Rational, u8> {
    parse_rational(s).map_err(|e| {
        eprintln!("error: {} is not a rational: {}", what, e);
        USAGE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Dims {
            ell,
            max_level,
            format,
        } => cmd_dims(&ell, max_level, format),
        Command::Kac {
            ell,
            level,
            factor,
            out,
        } => cmd_kac(&ell, level, factor, out.as_deref()),
        Command::Singular { ell, q, mu } => cmd_singular(&ell, q, &mu),
        Command::Scan {
            ell,
            delta,
            mu,
            level,
        } => cmd_scan(&ell, &delta, &mu, level),
        Command::Verify {
            ell,
            max_level,
            cache,
        } => cmd_verify(&ell, max_level, cache),
    };
    ExitCode::from(code.unwrap_or_else(|e| e))
}

fn cmd_dims(ell: &str, max_level: u32, format: Format) -> Result<u8, u8> {
    let ell = parse_ell(ell)?;
    // dim, mu_exponent, odd_restricted each cross-check enumeration against
    // the generating function internally
    let rows: Vec<(u32, u64, u64, u64)> = (0..=max_level)
        .map(|m| {
            (
                m,
                partitions::dim(ell, m),
                partitions::mu_exponent(ell, m),
                partitions::odd_restricted(ell, m),
            )
        })
        .collect();
    match format {
        Format::Text => {
            println!("m d e O");
            for (m, d, e, o) in rows {
                println!("{} {} {} {}", m, d, e, o);
            }
        }
        Format::Json => {
            let arr: Vec<_> = rows
                .iter()
                .map(|&(m, d, e, o)| json!({"m": m, "d": d, "e": e, "O": o}))
                .collect();
            println!("{}", serde_json::Value::Array(arr));
        }
    }
    Ok(0)
}

fn cmd_kac(ell: &str, level: u32, factor: bool, out: Option<&std::path::Path>) -> Result<u8, u8> {
    let ell = parse_ell(ell)?;
    if !factor && out.is_none() {
        println!("{}", kac_matrix(ell, level).determinant());
        return Ok(0);
    }
    let report = report_json::kac_report(ell, level).map_err(|e| {
        eprintln!("error: {}", e);
        MATH_FAILURE
    })?;
    println!("{}", report.determinant);
    if factor {
        println!("{}", report.factorization);
    }
    if let Some(path) = out {
        let v = report_json::kac_report_to_json(&report);
        let text = serde_json::to_string_pretty(&v).expect("serializable");
        std::fs::write(path, text + "\n").map_err(|e| {
            eprintln!("error: cannot write {}: {}", path.display(), e);
            USAGE
        })?;
    }
    Ok(0)
}

fn cmd_singular(ell: &str, q: u32, mu: &str) -> Result<u8, u8> {
    let ell = parse_ell(ell)?;
    if q == 0 {
        eprintln!("error: q must be at least 1");
        return Err(USAGE);
    }
    let built = if mu == "sym" {
        verify_singular(ell, q)
    } else {
        let mu = parse_rat_arg(mu, "mu")?;
        verify_singular_with_mu(ell, q, &mu)
    };
    let report = built.map_err(|e| match e {
        SingularError::ZeroMu => {
            eprintln!("error: {}", e);
            USAGE
        }
        other => {
            eprintln!("error: {}", other);
            MATH_FAILURE
        }
    })?;
    println!("δ = {}", report.delta_used);
    println!("α = {}", report.alpha_ell);
    println!("level {} singular vector:", report.level);
    for (lab, c) in report.vector.entries() {
        println!("  {}: {}", lab.monomial_string(ell), c);
    }
    println!("residuals:");
    for (g, r) in &report.checks {
        println!("  {}: {}", g, r);
    }
    if report.is_verified() {
        println!("VERIFIED");
        Ok(0)
    } else {
        println!("NOT VERIFIED");
        Err(MATH_FAILURE)
    }
}

fn cmd_scan(ell: &str, delta: &str, mu: &str, level: u32) -> Result<u8, u8> {
    let ell = parse_ell(ell)?;
    let delta = parse_rat_arg(delta, "delta")?;
    let mu = parse_rat_arg(mu, "mu")?;
    let ker = null_space(ell, &delta, &mu, level).map_err(|e| {
        // the only failure mode is mu = 0, a validation error
        eprintln!("error: {}", e);
        USAGE
    })?;
    println!("dim {}", ker.dimension);
    for v in &ker.basis {
        println!("  {}", v);
    }
    Ok(0)
}

fn cmd_verify(ell_list: &str, max_level: u32, cache: Option<PathBuf>) -> Result<u8, u8> {
    let mut ells = Vec::new();
    for part in ell_list.split(',') {
        ells.push(parse_ell(part.trim())?);
    }
    ells.sort();
    ells.dedup();
    let cache = cache.or_else(|| std::env::var_os("CGA_CACHE_DIR").map(PathBuf::from));
    verify::run(&ells, max_level, cache.as_deref())
}
