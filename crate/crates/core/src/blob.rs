//! Blob graph reduction and the end-to-end solver.
//!
//! Covering-family members are split into connected parts. Each distinct
//! part becomes a blob vertex weighted by its total weight, and two blob
//! vertices are adjacent when their parts touch (share a vertex or are
//! joined by an edge). A maximum-weight independent set of the blob graph
//! is a collection of pairwise non-touching connected bipartite parts, so
//! its union is bipartite and weighs exactly the independent set's weight.

use crate::covering::{build_covering_family_with, CoveringConfig, CoveringError, CoveringFamily};
use crate::mwis::mwis_exact;
use crate::structure::{bipartition_within, find_induced_p5, Bipartition};
use crate::{BigRational, Graph, Relabel, VertexSet, Weights};
use rayon::prelude::*;
use std::collections::HashSet;
use thiserror::Error;

pub const DEFAULT_BLOB_CAP: usize = 50_000;

#[derive(Debug, Clone)]
pub struct BlobGraph {
    /// Distinct connected parts in canonical order.
    pub parts: Vec<VertexSet>,
    /// Touch graph over part indices.
    pub graph: Graph,
    /// `lifted[i] = w(parts[i])`.
    pub lifted: Weights,
    /// Index of the covering-family member each part was split from.
    pub origin: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassStatus {
    /// The input was checked to be P5-free; the solution is optimal.
    Certified,
    /// The class check was skipped; the solution is valid but may not be optimal.
    Unverified,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub family_raw: u64,
    pub family_dedup: usize,
    pub blob_vertices: usize,
    pub blob_edges: usize,
    pub mwis_calls: u64,
}

/// A vertex set inducing a bipartite subgraph, in input-graph ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub vertices: VertexSet,
    pub weight: BigRational,
    pub certificate: Bipartition,
    /// Blob indices of the chosen parts.
    pub chosen_parts: Vec<usize>,
    /// The chosen parts themselves, in input-graph ids.
    pub parts: Vec<VertexSet>,
    pub stats: SolveStats,
    pub class: ClassStatus,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Skip the P5-freeness check. The result stays a valid bipartite set.
    pub unchecked: bool,
    /// Refuse when the blob graph would have more vertices than this.
    pub blob_cap: usize,
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { unchecked: false, blob_cap: DEFAULT_BLOB_CAP, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OctError {
    #[error("input is not P5-free: induced path {witness:?}")]
    NotP5Free { witness: [usize; 5] },
    #[error("blob graph would have {parts} vertices, over the cap of {cap}")]
    CapExceeded { parts: usize, cap: usize },
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error("internal error: solution check failed: {0}")]
    Verification(String),
}

/// Connected parts of every family member, deduplicated, canonical order.
pub fn split_components(family: &CoveringFamily, g: &Graph) -> Vec<VertexSet> {
    split_components_with_origin(family, g).into_iter().map(|(p, _)| p).collect()
}

/// Like [`split_components`], keeping the index of the first family member
/// that produced each part.
pub fn split_components_with_origin(family: &CoveringFamily, g: &Graph) -> Vec<(VertexSet, usize)> {
    let mut seen = HashSet::new();
    let mut parts = Vec::new();
    for (i, cand) in family.sets.iter().enumerate() {
        for comp in g.components_within(&cand.members) {
            if seen.insert(comp.clone()) {
                parts.push((comp, i));
            }
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    parts
}

/// True iff `a` and `b` intersect or some edge joins them.
pub fn touches(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    a.intersects(b) || a.iter().any(|v| g.neighbors(v).intersects(b))
}

/// Blob graph over pairwise distinct parts; `origin[i] = i`.
pub fn build_blob(g: &Graph, parts: &[VertexSet], w: &Weights) -> BlobGraph {
    build_blob_with_origin(g, parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect(), w)
}

fn build_blob_with_origin(g: &Graph, parts: Vec<(VertexSet, usize)>, w: &Weights) -> BlobGraph {
    let (parts, origin): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    let all = g.vertices();
    let closed: Vec<VertexSet> = parts.par_iter().map(|p| g.neighborhood_within(p, &all, true)).collect();
    let edges: Vec<(usize, usize)> = (0..parts.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (closed, parts) = (&closed, &parts);
            (i + 1..parts.len()).filter(move |&j| closed[i].intersects(&parts[j])).map(move |j| (i, j))
        })
        .collect();
    let graph = Graph::new(parts.len(), &edges).expect("edges over part indices");
    let lifted = Weights::new(parts.iter().map(|p| w.total(p)).collect());
    BlobGraph { parts, graph, lifted, origin }
}

/// Everything one solve produced. The family and blob graph are expressed
/// over the positive-weight subgraph, whose ids `relabel` maps back.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub solution: Solution,
    pub family: CoveringFamily,
    pub blob: BlobGraph,
    pub relabel: Relabel,
}

pub fn solve_oct(g: &Graph, w: &Weights, options: &SolveOptions) -> Result<Solution, OctError> {
    run_pipeline(g, w, options).map(|out| out.solution)
}

pub fn run_pipeline(g: &Graph, w: &Weights, options: &SolveOptions) -> Result<PipelineOutput, OctError> {
    assert_eq!(g.n(), w.len(), "one weight per vertex");
    let class = if options.unchecked {
        ClassStatus::Unverified
    } else {
        if let Some(witness) = find_induced_p5(g) {
            return Err(OctError::NotP5Free { witness });
        }
        ClassStatus::Certified
    };

    // non-positive vertices never help a maximum-weight solution
    let (h, relabel) = g.induced_subgraph(&w.positive_support()).expect("support within range");
    let hw = w.restrict(&relabel);

    let config = CoveringConfig { parallel: options.parallel, ..Default::default() };
    let family = build_covering_family_with(&h, &hw, &config)?;
    let parts = split_components_with_origin(&family, &h);
    if parts.len() > options.blob_cap {
        return Err(OctError::CapExceeded { parts: parts.len(), cap: options.blob_cap });
    }
    let blob = build_blob_with_origin(&h, parts, &hw);
    let picked = mwis_exact(&blob.graph, &blob.lifted);

    let chosen_parts = picked.set.to_vec();
    let mut union = VertexSet::new();
    for (k, &i) in chosen_parts.iter().enumerate() {
        for &j in &chosen_parts[k + 1..] {
            if touches(&h, &blob.parts[i], &blob.parts[j]) {
                return Err(OctError::Verification(format!("chosen parts {i} and {j} touch")));
            }
        }
        union.union_with(&blob.parts[i]);
    }
    if bipartition_within(&h, &union).is_none() {
        return Err(OctError::Verification("union of chosen parts is not bipartite".into()));
    }
    if hw.total(&union) != picked.weight {
        return Err(OctError::Verification("union weight differs from the blob optimum".into()));
    }

    let vertices = relabel.to_old(&union);
    let certificate = bipartition_within(g, &vertices).expect("bipartite after relabelling");
    let stats = SolveStats {
        family_raw: family.raw_count,
        family_dedup: family.len(),
        blob_vertices: blob.graph.n(),
        blob_edges: blob.graph.edge_count(),
        mwis_calls: family.mwis_calls + 1,
    };
    let solution = Solution {
        weight: w.total(&vertices),
        vertices,
        certificate,
        parts: chosen_parts.iter().map(|&i| relabel.to_old(&blob.parts[i])).collect(),
        chosen_parts,
        stats,
        class,
    };
    Ok(PipelineOutput { solution, family, blob, relabel })
}
