//! Exact maximum-weight independent set.
//!
//! The engine is a branch-and-bound over bitsets. Every solve returns the
//! set itself, and among all maximum-weight sets it returns the one whose
//! ascending member list is lexicographically smallest. Vertices with
//! non-positive weight are never chosen.
//!
//! Tie-breaking rides on [`VertexSet::cmp_priority`]: for two distinct sets
//! of equal positive weight neither is a prefix of the other, so the set
//! with the higher priority (the one holding the smallest vertex of the
//! symmetric difference) is the lexicographically smaller one. Priority is
//! monotone under inclusion, which lets ties be pruned as well.

use crate::graph::ScaledWeights;
use crate::{Graph, VertexSet, Weights};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;
use std::ops::{AddAssign, SubAssign};
use thiserror::Error;

/// Largest graph [`mwis_brute`] accepts.
pub const BRUTE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsResult {
    pub set: VertexSet,
    pub weight: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MwisError {
    #[error("brute-force independent set refused: {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

pub fn mwis_exact(g: &Graph, w: &Weights) -> IsResult {
    let set = MwisSolver::new(g, &w.scaled()).solve(&g.vertices());
    debug_assert!(g.is_independent(&set));
    IsResult { weight: w.total(&set), set }
}

/// Exhaustive search over independent sets, in lexicographic order.
pub fn mwis_brute(g: &Graph, w: &Weights) -> Result<IsResult, MwisError> {
    if g.n() > BRUTE_LIMIT {
        return Err(MwisError::TooLarge { n: g.n(), limit: BRUTE_LIMIT });
    }
    let set = match EngineWeights::from_scaled(&w.scaled()) {
        EngineWeights::Small(ws) => brute_search(g, &ws),
        EngineWeights::Big(ws) => brute_search(g, &ws),
    };
    Ok(IsResult { weight: w.total(&set), set })
}

fn brute_search<W: EngineWeight>(g: &Graph, w: &[W]) -> VertexSet {
    struct Walk<'a, W> {
        g: &'a Graph,
        w: &'a [W],
        best: (W, VertexSet),
    }
    impl<W: EngineWeight> Walk<'_, W> {
        // Visits independent sets in lexicographic order of member lists, so
        // keeping only strict improvements keeps the lexicographic minimum.
        fn visit(&mut self, from: usize, cur: &mut VertexSet, cur_w: &W, blocked: &VertexSet) {
            if *cur_w > self.best.0 {
                self.best = (cur_w.clone(), cur.clone());
            }
            for v in from..self.g.n() {
                if blocked.contains(v) || self.w[v] <= W::zero() {
                    continue;
                }
                let mut next_w = cur_w.clone();
                next_w += &self.w[v];
                let next_blocked = blocked.union(self.g.neighbors(v));
                cur.insert(v);
                self.visit(v + 1, cur, &next_w, &next_blocked);
                cur.remove(v);
            }
        }
    }
    let mut walk = Walk { g, w, best: (W::zero(), VertexSet::new()) };
    walk.visit(0, &mut VertexSet::new(), &W::zero(), &VertexSet::new());
    walk.best.1
}

/// Integer weight type used inside the search.
pub trait EngineWeight:
    Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

impl EngineWeight for i128 {}
impl EngineWeight for BigInt {}

/// Scaled numerators in the narrowest representation that cannot overflow.
#[derive(Debug, Clone)]
pub enum EngineWeights {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl EngineWeights {
    pub fn from_scaled(s: &ScaledWeights) -> Self {
        match s.as_i128() {
            Some(ws) => EngineWeights::Small(ws),
            None => EngineWeights::Big(s.numerators.clone()),
        }
    }
}

/// A solver bound to one graph and weighting, answering queries on the
/// subgraphs induced by arbitrary vertex subsets.
pub struct MwisSolver<'g> {
    g: &'g Graph,
    weights: EngineWeights,
    order: Vec<usize>,
}

impl<'g> MwisSolver<'g> {
    pub fn new(g: &'g Graph, w: &ScaledWeights) -> Self {
        Self::with_weights(g, EngineWeights::from_scaled(w))
    }

    pub fn with_weights(g: &'g Graph, weights: EngineWeights) -> Self {
        let mut order: Vec<usize> = (0..g.n()).collect();
        match &weights {
            EngineWeights::Small(w) => order.sort_by(|&a, &b| w[b].cmp(&w[a]).then(a.cmp(&b))),
            EngineWeights::Big(w) => order.sort_by(|&a, &b| w[b].cmp(&w[a]).then(a.cmp(&b))),
        }
        MwisSolver { g, weights, order }
    }

    /// Maximum-weight independent set of the subgraph induced by `subset`.
    pub fn solve(&self, subset: &VertexSet) -> VertexSet {
        match &self.weights {
            EngineWeights::Small(w) => Search { g: self.g, w, order: &self.order }.solve_top(subset),
            EngineWeights::Big(w) => Search { g: self.g, w, order: &self.order }.solve_top(subset),
        }
    }
}

// Below this size a disconnected candidate set is branched on directly.
const SPLIT_MIN: usize = 8;

struct Search<'a, W> {
    g: &'a Graph,
    w: &'a [W],
    order: &'a [usize],
}

type Best<W> = (W, VertexSet);

impl<W: EngineWeight> Search<'_, W> {
    fn solve_top(&self, subset: &VertexSet) -> VertexSet {
        let p: VertexSet = subset.iter().filter(|&v| self.w[v] > W::zero()).collect();
        self.solve(p).1
    }

    fn sum(&self, s: &VertexSet) -> W {
        let mut total = W::zero();
        for v in s {
            total += &self.w[v];
        }
        total
    }

    /// Takes isolated vertices and vertices heavier than their whole
    /// neighborhood; both belong to every maximum-weight set.
    fn reduce(&self, p: &mut VertexSet, cur: &mut VertexSet, cur_w: &mut W) {
        loop {
            let mut changed = false;
            for v in p.clone().iter() {
                if !p.contains(v) {
                    continue;
                }
                let nb = self.g.neighbors(v).intersection(p);
                if nb.is_empty() || self.w[v] > self.sum(&nb) {
                    cur.insert(v);
                    *cur_w += &self.w[v];
                    p.difference_with(&nb);
                    p.remove(v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn solve(&self, mut p: VertexSet) -> Best<W> {
        let mut cur = VertexSet::new();
        let mut cur_w = W::zero();
        self.reduce(&mut p, &mut cur, &mut cur_w);
        for comp in self.g.components_within(&p) {
            let (w, s) = self.solve_connected(comp);
            cur_w += &w;
            cur.union_with(&s);
        }
        (cur_w, cur)
    }

    fn solve_connected(&self, p: VertexSet) -> Best<W> {
        let mut best = self.greedy(&p);
        self.branch(W::zero(), VertexSet::new(), p, &mut best);
        best
    }

    fn greedy(&self, p: &VertexSet) -> Best<W> {
        let mut taken = VertexSet::new();
        let mut blocked = VertexSet::new();
        let mut total = W::zero();
        for &v in self.order {
            if p.contains(v) && !blocked.contains(v) {
                taken.insert(v);
                total += &self.w[v];
                blocked.union_with(self.g.neighbors(v));
            }
        }
        (total, taken)
    }

    /// Greedy partition into cliques; any independent set takes at most one
    /// vertex per clique.
    fn clique_cover_bound(&self, p: &VertexSet) -> W {
        let mut cliques: Vec<VertexSet> = Vec::new();
        let mut bound = W::zero();
        for &v in self.order {
            if !p.contains(v) {
                continue;
            }
            match cliques.iter_mut().find(|c| c.contains(v)) {
                Some(common) => common.intersect_with(self.g.neighbors(v)),
                None => {
                    // heaviest-first order: the opening vertex is the clique maximum
                    bound += &self.w[v];
                    cliques.push(self.g.neighbors(v).intersection(p));
                }
            }
        }
        bound
    }

    fn consider(&self, w: W, s: VertexSet, best: &mut Best<W>) {
        let better = match w.cmp(&best.0) {
            Ordering::Greater => true,
            Ordering::Equal => s.cmp_priority(&best.1) == Ordering::Greater,
            Ordering::Less => false,
        };
        if better {
            *best = (w, s);
        }
    }

    fn branch(&self, mut cur_w: W, mut cur: VertexSet, mut p: VertexSet, best: &mut Best<W>) {
        self.reduce(&mut p, &mut cur, &mut cur_w);
        if p.is_empty() {
            self.consider(cur_w, cur, best);
            return;
        }
        let mut bound = cur_w.clone();
        bound += &self.clique_cover_bound(&p);
        match bound.cmp(&best.0) {
            Ordering::Less => return,
            Ordering::Equal if cur.union(&p).cmp_priority(&best.1) != Ordering::Greater => return,
            _ => {}
        }
        if p.len() >= SPLIT_MIN && !self.g.is_connected_within(&p) {
            let (w, s) = self.solve(p);
            cur_w += &w;
            cur.union_with(&s);
            self.consider(cur_w, cur, best);
            return;
        }
        let v = p
            .iter()
            .max_by(|&a, &b| {
                let (da, db) = (self.g.neighbors(a).intersection_len(&p), self.g.neighbors(b).intersection_len(&p));
                da.cmp(&db).then(b.cmp(&a))
            })
            .expect("nonempty");
        let mut with_v = p.difference(self.g.neighbors(v));
        with_v.remove(v);
        let mut cur_with = cur.clone();
        cur_with.insert(v);
        let mut w_with = cur_w.clone();
        w_with += &self.w[v];
        self.branch(w_with, cur_with, with_v, best);
        p.remove(v);
        self.branch(cur_w, cur, p, best);
    }
}
