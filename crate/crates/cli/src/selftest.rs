//! Oracle comparison over an exhaustive small corpus and a seeded random
//! mid-size corpus.

use crate::commands::CliError;
use crate::instance::{format_rational, serialize_instance};
use crate::report::SolveReport;
use crate::verify::verify_report;
use num_rational::Ratio;
use p5oct_core::oracle::{enumerate_small_p5free, random_weights, ENUMERATE_LIMIT};
use p5oct_core::{gen_p5free, oct_brute, solve_oct, GenKind, GenModel, Graph, OctError, Solution, SolveOptions, Weights};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Edge densities for the rejection model: P5-free samples at 8 to 14
/// vertices are common only near the sparse and dense extremes.
const REJECTION_DENSITIES: [(u64, u64); 4] = [(1, 20), (1, 10), (4, 5), (17, 20)];
pub const RANDOM_MIN_N: usize = 8;
pub const RANDOM_MAX_N: usize = 14;

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub max_n: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { max_n: 6, samples: 200, seed: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// The failing instance in canonical text form.
    pub instance: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SelftestSummary {
    pub exhaustive: usize,
    pub random: usize,
    pub mismatches: Vec<Mismatch>,
    pub worst_family_raw: u64,
    pub worst_family_dedup: usize,
    pub worst_blob_vertices: usize,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn render(&self) -> String {
        let checked = self.exhaustive + self.random;
        let mut out = format!(
            "exhaustive: {} instances\nrandom: {} instances\npassed: {}/{}\n\
             worst case: family {} raw / {} distinct, blob {} vertices\n",
            self.exhaustive,
            self.random,
            checked - self.mismatches.len(),
            checked,
            self.worst_family_raw,
            self.worst_family_dedup,
            self.worst_blob_vertices,
        );
        for m in &self.mismatches {
            out += &format!("MISMATCH: expected {}, got {}\n{}", m.expected, m.got, m.instance);
        }
        out
    }
}

/// Every labeled P5-free graph on `1..=max_n` vertices, once with unit
/// weights and once with a random rational weighting.
pub fn exhaustive_corpus(max_n: usize, seed: u64) -> Result<Vec<(Graph, Weights)>, CliError> {
    let graphs: Vec<Graph> = enumerate_small_p5free(max_n)?.collect();
    Ok(graphs
        .into_iter()
        .enumerate()
        .flat_map(|(i, g)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let random = random_weights(&mut rng, g.n());
            [(g.clone(), Weights::unit(g.n())), (g, random)]
        })
        .collect())
}

/// `samples` generated graphs on 8 to 14 vertices alternating between the
/// rejection and substitution models, with random rational weights.
pub fn random_corpus(samples: usize, seed: u64) -> Result<Vec<(Graph, Weights)>, CliError> {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(1 << 32 | i as u64);
            let n = rng.gen_range(RANDOM_MIN_N..=RANDOM_MAX_N);
            let model = if i % 2 == 0 {
                let (a, b) = REJECTION_DENSITIES[rng.gen_range(0..REJECTION_DENSITIES.len())];
                GenModel::new(GenKind::Rejection, rng.gen(), n, Ratio::new(a, b))
            } else {
                GenModel::new(GenKind::Substitution, rng.gen(), n, Ratio::new(rng.gen_range(1..=4), 5))
            };
            let g = gen_p5free(&model)?;
            let w = random_weights(&mut rng, n);
            Ok((g, w))
        })
        .collect()
}

pub type Solver = dyn Fn(&Graph, &Weights) -> Result<Solution, OctError> + Sync;

pub fn default_solver(g: &Graph, w: &Weights) -> Result<Solution, OctError> {
    solve_oct(g, w, &SolveOptions::default())
}

#[derive(Debug, Clone, Default)]
struct Outcome {
    mismatch: Option<Mismatch>,
    family_raw: u64,
    family_dedup: usize,
    blob_vertices: usize,
}

fn check(g: &Graph, w: &Weights, solver: &Solver) -> Outcome {
    let expected = oct_brute(g, w).expect("corpus stays within the brute-force limit");
    let expected_w = format_rational(&expected.weight);
    let mismatch = |got: String| Mismatch { instance: serialize_instance(g, w), expected: expected_w.clone(), got };
    match solver(g, w) {
        Err(e) => Outcome { mismatch: Some(mismatch(format!("error: {e}"))), ..Default::default() },
        Ok(s) => {
            let report = SolveReport::from_solution(g, &s, "blob", None);
            let mismatch = if let Err(e) = verify_report(g, w, &report) {
                Some(mismatch(format!("invalid report ({e})")))
            } else if s.weight != expected.weight {
                Some(mismatch(report.weight.clone()))
            } else {
                None
            };
            Outcome {
                mismatch,
                family_raw: s.stats.family_raw,
                family_dedup: s.stats.family_dedup,
                blob_vertices: s.stats.blob_vertices,
            }
        }
    }
}

fn run(corpus: &[(Graph, Weights)], solver: &Solver, summary: &mut SelftestSummary) {
    let outcomes: Vec<Outcome> = corpus.par_iter().map(|(g, w)| check(g, w, solver)).collect();
    for o in outcomes {
        summary.worst_family_raw = summary.worst_family_raw.max(o.family_raw);
        summary.worst_family_dedup = summary.worst_family_dedup.max(o.family_dedup);
        summary.worst_blob_vertices = summary.worst_blob_vertices.max(o.blob_vertices);
        summary.mismatches.extend(o.mismatch);
    }
}

/// Runs both corpora against `solver`. Results are aggregated in corpus
/// order, so the summary does not depend on the number of workers.
pub fn selftest_with(cfg: &SelftestConfig, solver: &Solver) -> Result<SelftestSummary, CliError> {
    if cfg.max_n > ENUMERATE_LIMIT {
        return Err(CliError::TooLarge(format!(
            "--max-n {} exceeds the exhaustive limit of {ENUMERATE_LIMIT}",
            cfg.max_n
        )));
    }
    let mut summary = SelftestSummary::default();
    let small = exhaustive_corpus(cfg.max_n, cfg.seed)?;
    summary.exhaustive = small.len();
    run(&small, solver, &mut summary);
    let mid = random_corpus(cfg.samples, cfg.seed)?;
    summary.random = mid.len();
    run(&mid, solver, &mut summary);
    Ok(summary)
}

pub fn selftest(cfg: &SelftestConfig) -> Result<SelftestSummary, CliError> {
    selftest_with(cfg, &default_solver)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_run_passes() {
        let s = selftest(&SelftestConfig { max_n: 1, samples: 0, seed: 0 }).unwrap();
        assert!(s.passed());
        assert_eq!((s.exhaustive, s.random), (2, 0));
    }

    #[test]
    fn max_n_is_bounded() {
        let err = selftest(&SelftestConfig { max_n: 8, samples: 0, seed: 0 }).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn corpora_are_reproducible() {
        assert_eq!(exhaustive_corpus(3, 4).unwrap(), exhaustive_corpus(3, 4).unwrap());
        let a = random_corpus(6, 4).unwrap();
        assert_eq!(a, random_corpus(6, 4).unwrap());
        assert!(a.iter().all(|(g, _)| (RANDOM_MIN_N..=RANDOM_MAX_N).contains(&g.n())));
    }

    #[test]
    fn injected_bug_is_reported_with_the_instance() {
        // drops the highest vertex of every solution it returns
        let buggy = |g: &Graph, w: &Weights| {
            let mut s = default_solver(g, w)?;
            if let Some(v) = s.vertices.last().filter(|_| s.vertices.len() > 2) {
                s.vertices.remove(v);
                s.certificate.left.remove(v);
                s.certificate.right.remove(v);
                s.weight -= w.get(v);
                for p in &mut s.parts {
                    p.remove(v);
                }
                s.parts.retain(|p| !p.is_empty());
            }
            Ok(s)
        };
        let s = selftest_with(&SelftestConfig { max_n: 4, samples: 0, seed: 0 }, &buggy).unwrap();
        assert!(!s.passed());
        let first = &s.mismatches[0];
        assert!(first.instance.starts_with("p oct "));
        assert!(s.render().contains("MISMATCH"));
    }
}
