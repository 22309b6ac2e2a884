//! Ground truth for testing: exhaustive odd cycle transversal, the P5
//! certificate, seeded P5-free instance generators, and enumeration of all
//! small labeled graphs.

use crate::blob::{ClassStatus, SolveStats};
use crate::mwis::{EngineWeight, EngineWeights};
use crate::structure::{bipartition_within, find_induced_p5};
use crate::{BigRational, Graph, Solution, VertexSet, Weights};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use thiserror::Error;

/// Largest graph [`oct_brute`] accepts.
pub const OCT_BRUTE_LIMIT: usize = 20;
/// Largest vertex count [`enumerate_small_p5free`] accepts.
pub const ENUMERATE_LIMIT: usize = 7;
/// Graphs sampled by the rejection model before giving up.
pub const REJECTION_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} refused: {n} vertices exceeds the limit of {limit}")]
    TooLarge { what: &'static str, n: usize, limit: usize },
    #[error("rejection sampling found no P5-free graph within {budget} attempts")]
    BudgetExceeded { budget: usize },
    #[error("generator needs at least one vertex")]
    Empty,
}

/// Maximum-weight bipartite induced subgraph by trying every subset.
/// Vertices of non-positive weight are left out; among optimal sets the
/// lexicographically smallest member list wins.
pub fn oct_brute(g: &Graph, w: &Weights) -> Result<Solution, OracleError> {
    let n = g.n();
    if n > OCT_BRUTE_LIMIT {
        return Err(OracleError::TooLarge { what: "brute-force OCT", n, limit: OCT_BRUTE_LIMIT });
    }
    let mask = match EngineWeights::from_scaled(&w.scaled()) {
        EngineWeights::Small(ws) => brute_mask(g, &ws),
        EngineWeights::Big(ws) => brute_mask(g, &ws),
    };
    let vertices: VertexSet = (0..n).filter(|v| mask >> v & 1 == 1).collect();
    let certificate = bipartition_within(g, &vertices).expect("brute force keeps bipartite sets only");
    Ok(Solution {
        weight: w.total(&vertices),
        parts: g.components_within(&vertices),
        chosen_parts: Vec::new(),
        certificate,
        vertices,
        stats: SolveStats::default(),
        class: ClassStatus::Certified,
    })
}

fn brute_mask<W: EngineWeight>(g: &Graph, w: &[W]) -> u32 {
    let n = g.n();
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, u| m | 1 << u)).collect();
    let usable: u32 = (0..n).filter(|&v| w[v] > W::zero()).fold(0, |m, v| m | 1 << v);
    let mut best_mask = 0u32;
    let mut best_w = W::zero();
    // iterate submasks of the usable vertices
    let mut sub = usable;
    loop {
        let mut total = W::zero();
        for (v, x) in w.iter().enumerate() {
            if sub >> v & 1 == 1 {
                total += x;
            }
        }
        let better = match total.cmp(&best_w) {
            Ordering::Greater => true,
            Ordering::Equal => lex_less(sub, best_mask),
            Ordering::Less => false,
        };
        if better && is_bipartite_mask(&adj, sub) {
            best_mask = sub;
            best_w = total;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & usable;
    }
    best_mask
}

/// Ascending member lists of `a` and `b`, compared lexicographically.
fn lex_less(a: u32, b: u32) -> bool {
    let list = |m: u32| (0..32).filter(|v| m >> v & 1 == 1).collect::<Vec<u32>>();
    list(a) < list(b)
}

fn is_bipartite_mask(adj: &[u32], set: u32) -> bool {
    // color[v]: 0 unvisited, 1 or 2 otherwise
    let mut color = [0u8; 32];
    let mut stack = Vec::new();
    let mut rest = set;
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        color[start] = 1;
        stack.push(start);
        while let Some(v) = stack.pop() {
            rest &= !(1 << v);
            let mut nb = adj[v] & set;
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if color[u] == 0 {
                    color[u] = 3 - color[v];
                    stack.push(u);
                } else if color[u] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P5Check {
    Free,
    Witness([usize; 5]),
}

impl P5Check {
    pub fn is_free(&self) -> bool {
        matches!(self, P5Check::Free)
    }

    pub fn witness(&self) -> Option<[usize; 5]> {
        match self {
            P5Check::Free => None,
            P5Check::Witness(w) => Some(*w),
        }
    }
}

pub fn is_p5_free(g: &Graph) -> P5Check {
    match find_induced_p5(g) {
        None => P5Check::Free,
        Some(p) => P5Check::Witness(p),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// Random graphs at the given edge density, resampled until P5-free.
    Rejection,
    /// Random modular substitution into small P5-free quotients.
    Substitution,
    /// A clique and an independent set joined by random edges. Split graphs
    /// contain no induced 2K2, hence no induced P5.
    SplitLike,
}

impl std::str::FromStr for GenKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rejection" => Ok(GenKind::Rejection),
            "substitution" => Ok(GenKind::Substitution),
            "split-like" | "split" => Ok(GenKind::SplitLike),
            other => Err(format!("unknown model `{other}` (expected rejection, substitution or split-like)")),
        }
    }
}

impl std::fmt::Display for GenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GenKind::Rejection => "rejection",
            GenKind::Substitution => "substitution",
            GenKind::SplitLike => "split-like",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenModel {
    pub kind: GenKind,
    pub seed: u64,
    pub n: usize,
    /// Edge probability, a rational in `[0, 1]`.
    pub density: Ratio<u64>,
}

impl GenModel {
    pub fn new(kind: GenKind, seed: u64, n: usize, density: Ratio<u64>) -> Self {
        GenModel { kind, seed, n, density }
    }
}

fn coin(rng: &mut ChaCha8Rng, p: Ratio<u64>) -> bool {
    *p.denom() > 0 && rng.gen_range(0..*p.denom()) < *p.numer()
}

/// A P5-free graph drawn from `model`, certified before it is returned.
pub fn gen_p5free(model: &GenModel) -> Result<Graph, OracleError> {
    if model.n == 0 {
        return Err(OracleError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let g = match model.kind {
        GenKind::Rejection => {
            let pairs: Vec<_> = (0..model.n).flat_map(|u| (u + 1..model.n).map(move |v| (u, v))).collect();
            let mut found = None;
            for _ in 0..REJECTION_BUDGET {
                let edges: Vec<_> = pairs.iter().copied().filter(|_| coin(&mut rng, model.density)).collect();
                let g = Graph::new(model.n, &edges).expect("valid pairs");
                if find_induced_p5(&g).is_none() {
                    found = Some(g);
                    break;
                }
            }
            found.ok_or(OracleError::BudgetExceeded { budget: REJECTION_BUDGET })?
        }
        GenKind::Substitution => {
            let edges = substitution(&mut rng, model.n, model.density);
            Graph::new(model.n, &edges).expect("valid pairs")
        }
        GenKind::SplitLike => {
            let clique = rng.gen_range(1..=model.n);
            let mut edges: Vec<_> = (0..clique).flat_map(|u| (u + 1..clique).map(move |v| (u, v))).collect();
            for v in clique..model.n {
                for u in 0..clique {
                    if coin(&mut rng, model.density) {
                        edges.push((u, v));
                    }
                }
            }
            let mut perm: Vec<usize> = (0..model.n).collect();
            perm.shuffle(&mut rng);
            let edges: Vec<_> = edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
            Graph::new(model.n, &edges).expect("valid pairs")
        }
    };
    assert!(find_induced_p5(&g).is_none(), "generator produced a graph with an induced P5");
    Ok(g)
}

// Small P5-free quotient graphs beyond cliques and independent sets:
// P4, C5, the bull and the house.
const PRIMES: &[(usize, &[(usize, usize)])] = &[
    (4, &[(0, 1), (1, 2), (2, 3)]),
    (5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
    (5, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)]),
    (5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)]),
];

/// Edges of a random P5-free graph on `0..n` built by substituting
/// recursively generated graphs for the vertices of a quotient. An induced
/// P5 meets every module in at most one vertex, so the result stays P5-free.
fn substitution(rng: &mut ChaCha8Rng, n: usize, density: Ratio<u64>) -> Vec<(usize, usize)> {
    if n == 1 {
        return Vec::new();
    }
    let (q, quotient): (usize, Vec<(usize, usize)>) = match rng.gen_range(0..3) {
        0 if n >= 4 => {
            let &&(q, e) = PRIMES.iter().filter(|(q, _)| *q <= n).collect::<Vec<_>>().choose(rng).expect("n >= 4");
            (q, e.to_vec())
        }
        _ => {
            let q = rng.gen_range(2..=n.min(4));
            if coin(rng, density) {
                (q, (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v))).collect())
            } else {
                (q, Vec::new())
            }
        }
    };
    // split n into q positive block sizes
    let mut cuts: Vec<usize> = (1..n).collect::<Vec<_>>().choose_multiple(rng, q - 1).copied().collect();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let blocks: Vec<&[usize]> = bounds.windows(2).map(|w| &perm[w[0]..w[1]]).collect();

    let mut edges = Vec::new();
    for block in &blocks {
        for (u, v) in substitution(rng, block.len(), density) {
            edges.push((block[u], block[v]));
        }
    }
    for &(a, b) in &quotient {
        for &u in blocks[a] {
            for &v in blocks[b] {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Random weights `k/d` with `k` in `1..=100` and `d` in `{1, 2, 4, 5}`.
pub fn random_weights(rng: &mut impl Rng, n: usize) -> Weights {
    const DENOMS: [i64; 4] = [1, 2, 4, 5];
    Weights::new(
        (0..n)
            .map(|_| {
                let k: i64 = rng.gen_range(1..=100);
                let d = DENOMS[rng.gen_range(0..DENOMS.len())];
                BigRational::new(k.into(), d.into())
            })
            .collect(),
    )
}

/// All labeled graphs on exactly `n` vertices, by edge mask.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::new(n, &edges).expect("valid pairs")
    })
}

/// All labeled P5-free graphs on `1..=max_n` vertices, smallest first.
pub fn enumerate_small_p5free(max_n: usize) -> Result<impl Iterator<Item = Graph>, OracleError> {
    if max_n > ENUMERATE_LIMIT {
        return Err(OracleError::TooLarge { what: "exhaustive enumeration", n: max_n, limit: ENUMERATE_LIMIT });
    }
    Ok((1..=max_n).flat_map(labeled_graphs).filter(|g| find_induced_p5(g).is_none()))
}
