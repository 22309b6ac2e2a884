//! The subcommands, as library functions returning their output.

use crate::instance::{parse_instance, serialize_instance, ParseError};
use crate::report::SolveReport;
use crate::verify::{verify_report, VerifyError};
use num_rational::Ratio;
use p5oct_core::oracle::{random_weights, OracleError};
use p5oct_core::{gen_p5free, oct_brute, solve_oct, GenKind, GenModel, OctError, SolveOptions, Weights};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("cannot read report: {0}")]
    Report(String),
    #[error("input is not P5-free; induced P5: {}", .0.map(|v| (v + 1).to_string()).join(" "))]
    NotP5Free([usize; 5]),
    #[error("refused: {0}")]
    TooLarge(String),
    #[error("verification failed: {0}")]
    Verify(#[from] VerifyError),
    #[error("selftest failed: {0} mismatches")]
    Selftest(usize),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Report(_) => 2,
            CliError::NotP5Free(_) => 3,
            CliError::TooLarge(_) => 4,
            CliError::Selftest(_) => 5,
            CliError::Io { .. } | CliError::Verify(_) | CliError::Other(_) => 1,
        }
    }
}

impl From<OctError> for CliError {
    fn from(e: OctError) -> Self {
        match e {
            OctError::NotP5Free { witness } => CliError::NotP5Free(witness),
            e @ OctError::CapExceeded { .. } => CliError::TooLarge(e.to_string()),
            e => CliError::Other(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            e @ OracleError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
            e => CliError::Other(e.to_string()),
        }
    }
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

#[derive(Debug, Clone)]
pub struct SolveFlags {
    pub unchecked: bool,
    pub cap: usize,
    pub timing: bool,
}

impl Default for SolveFlags {
    fn default() -> Self {
        SolveFlags { unchecked: false, cap: p5oct_core::blob::DEFAULT_BLOB_CAP, timing: false }
    }
}

fn elapsed_ms(start: Instant, timing: bool) -> Option<u64> {
    timing.then(|| start.elapsed().as_millis() as u64)
}

pub fn solve(text: &str, flags: &SolveFlags) -> Result<SolveReport, CliError> {
    let (g, w) = parse_instance(text)?;
    let start = Instant::now();
    let options = SolveOptions { unchecked: flags.unchecked, blob_cap: flags.cap, ..Default::default() };
    let s = solve_oct(&g, &w, &options)?;
    Ok(SolveReport::from_solution(&g, &s, "blob", elapsed_ms(start, flags.timing)))
}

pub fn oracle(text: &str, timing: bool) -> Result<SolveReport, CliError> {
    let (g, w) = parse_instance(text)?;
    let start = Instant::now();
    let s = oct_brute(&g, &w)?;
    Ok(SolveReport::from_solution(&g, &s, "oracle", elapsed_ms(start, timing)))
}

pub fn verify(instance: &str, report: &str) -> Result<(), CliError> {
    let (g, w) = parse_instance(instance)?;
    let r: SolveReport = serde_json::from_str(report).map_err(|e| CliError::Report(e.to_string()))?;
    verify_report(&g, &w, &r)?;
    Ok(())
}

/// Parses a density given as `a/b`, an integer, or a decimal such as `0.25`.
pub fn parse_density(s: &str) -> Result<Ratio<u64>, String> {
    let err = || format!("bad density `{s}` (expected a/b or a decimal in [0, 1])");
    let r = if let Some((a, b)) = s.split_once('/') {
        let (a, b): (u64, u64) = (a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?);
        if b == 0 {
            return Err(err());
        }
        Ratio::new(a, b)
    } else if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| err())? };
        let den = 10u64.pow(frac.len() as u32);
        let frac: u64 = frac.parse().map_err(|_| err())?;
        Ratio::new(int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(err)?, den)
    } else {
        Ratio::from_integer(s.parse().map_err(|_| err())?)
    };
    if r > Ratio::from_integer(1) {
        return Err(err());
    }
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct GenFlags {
    pub n: usize,
    pub seed: u64,
    pub model: GenKind,
    pub density: Ratio<u64>,
    pub weighted: bool,
}

/// A certified P5-free instance in canonical text form.
pub fn generate(flags: &GenFlags) -> Result<String, CliError> {
    let model = GenModel::new(flags.model, flags.seed, flags.n, flags.density);
    let g = gen_p5free(&model)?;
    let w = if flags.weighted {
        let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
        rng.set_stream(1);
        random_weights(&mut rng, flags.n)
    } else {
        Weights::unit(flags.n)
    };
    Ok(serialize_instance(&g, &w))
}
