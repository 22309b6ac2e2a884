//! Simple undirected graphs over dense vertex ids, and exact rational
//! vertex weights.

use crate::VertexSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop ({0}, {0}) is not allowed")]
    SelfLoop(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
}

/// Undirected simple graph. Adjacency is symmetric and loop-free.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    m: usize,
}

/// Bijection between a vertex subset of a graph and the ids of the
/// corresponding induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl Relabel {
    pub fn to_old(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.new_to_old[v]).collect()
    }

    pub fn to_new(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.old_to_new[v]).collect()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![VertexSet::new(); n];
        let mut m = 0;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].insert(v) {
                adj[v].insert(u);
                m += 1;
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![VertexSet::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::new(n, &edges).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::new(n, &edges).expect("valid edges")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn check_subset(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.last() {
            Some(v) if v >= self.n() => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|` in increasing
    /// order of the original ids.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Relabel), GraphError> {
        self.check_subset(s)?;
        let new_to_old = s.to_vec();
        let mut old_to_new = vec![None; self.n()];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let mut m = 0;
        let adj = new_to_old
            .iter()
            .map(|&v| {
                let nb: VertexSet = self.adj[v]
                    .intersection(s)
                    .iter()
                    .map(|u| old_to_new[u].expect("member of s"))
                    .collect();
                m += nb.len();
                nb
            })
            .collect();
        Ok((Graph { adj, m: m / 2 }, Relabel { old_to_new, new_to_old }))
    }

    /// `G - s`, relabelled like [`Graph::induced_subgraph`] on the complement.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        self.check_subset(s)?;
        Ok(self.induced_subgraph(&self.vertices().difference(s))?.0)
    }

    /// Connected components ordered by minimum member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Connected components of the subgraph induced by `alive`, in original
    /// ids, ordered by minimum member.
    pub fn components_within(&self, alive: &VertexSet) -> Vec<VertexSet> {
        let mut rest = alive.clone();
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let comp = self.component_of(start, &rest);
            rest.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// The component containing `start` within the subgraph induced by `alive`.
    pub fn component_of(&self, start: usize, alive: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for v in &frontier {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(alive);
            next.difference_with(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        comp
    }

    pub fn is_connected_within(&self, alive: &VertexSet) -> bool {
        match alive.first() {
            None => true,
            Some(v) => self.component_of(v, alive).len() == alive.len(),
        }
    }

    /// Open (`N(s)`) or closed (`N[s]`) neighborhood of `s`.
    pub fn neighborhood(&self, s: &VertexSet, closed: bool) -> Result<VertexSet, GraphError> {
        self.check_subset(s)?;
        Ok(self.neighborhood_within(s, &self.vertices(), closed))
    }

    /// Neighborhood of `s` in the subgraph induced by `alive`. Members of `s`
    /// need not be alive themselves; only their alive neighbors count.
    pub fn neighborhood_within(&self, s: &VertexSet, alive: &VertexSet, closed: bool) -> VertexSet {
        let mut out = VertexSet::new();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out.intersect_with(alive);
        if closed {
            out.union_with(&s.intersection(alive));
        } else {
            out.difference_with(s);
        }
        out
    }

    /// True iff no two members of `s` are adjacent.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// Exact rational vertex weights.
#[derive(Clone, PartialEq, Eq)]
pub struct Weights(Vec<BigRational>);

impl Weights {
    pub fn unit(n: usize) -> Self {
        Weights(vec![BigRational::one(); n])
    }

    pub fn new(w: Vec<BigRational>) -> Self {
        Weights(w)
    }

    pub fn from_integers(w: &[i64]) -> Self {
        Weights(w.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn for_graph(g: &Graph, w: Vec<BigRational>) -> Result<Self, GraphError> {
        if w.len() != g.n() {
            return Err(GraphError::WeightCount { expected: g.n(), got: w.len() });
        }
        Ok(Weights(w))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> &BigRational {
        &self.0[v]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn total(&self, s: &VertexSet) -> BigRational {
        s.iter().fold(BigRational::zero(), |acc, v| acc + &self.0[v])
    }

    /// Vertices with strictly positive weight.
    pub fn positive_support(&self) -> VertexSet {
        (0..self.len()).filter(|&v| self.0[v].is_positive()).collect()
    }

    /// Restriction to the vertices of an induced subgraph.
    pub fn restrict(&self, relabel: &Relabel) -> Weights {
        Weights(relabel.new_to_old.iter().map(|&v| self.0[v].clone()).collect())
    }

    /// Common-denominator integer form: `w(v) = numerators[v] / denominator`.
    pub fn scaled(&self) -> ScaledWeights {
        let denominator = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let numerators = self
            .0
            .iter()
            .map(|w| w.numer() * (&denominator / w.denom()))
            .collect();
        ScaledWeights { numerators, denominator }
    }
}

impl std::fmt::Debug for Weights {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.0.iter().map(|w| w.to_string())).finish()
    }
}

#[derive(Debug, Clone)]
pub struct ScaledWeights {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

impl ScaledWeights {
    /// Machine-integer numerators, if the sum of their magnitudes fits
    /// comfortably in an `i128`.
    pub fn as_i128(&self) -> Option<Vec<i128>> {
        let total: BigInt = self.numerators.iter().map(|x| x.abs()).sum();
        if total.bits() > 120 {
            return None;
        }
        self.numerators.iter().map(|x| x.to_i128()).collect()
    }
}
