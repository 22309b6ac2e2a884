//! Covering family of bipartite vertex sets.
//!
//! For every seed dominator `D` (an edge or induced P3 with a fixed
//! bipartition `D_L ⊎ D_R`) the input graph is cleaned in two batch steps:
//! common neighbors of `D_L` and `D_R` are deleted, then every connected
//! component of `G - N[D]` that is not a module of `G` is deleted. For each
//! guess `D'` of at most three surviving vertices the closed neighborhood
//! `C* = N[D ∪ D']` is fixed, vertices of `C*` with a neighbor outside `C*`
//! in the cleaned graph are deleted, and the candidate is the union of a
//! maximum-weight independent set of `G[N(D_R)]` and one of `G[N(D_L)]`.
//! Singletons of the input graph complete the family.
//!
//! Whenever a solution component `C` is dominated by `D` and `N[C]` is
//! pinned down by `D ∪ D'`, the candidate is a drop-in replacement for `C`
//! of at least its weight. Candidates are bipartite by construction: the
//! two independent sets are disjoint because common neighbors were deleted.

use crate::mwis::MwisSolver;
use crate::structure::{
    bipartition_within, count_induced_p3, enumerate_seeds, find_odd_cycle_within, module_witness_within,
};
use crate::{Graph, SeedDominator, VertexSet, Weights};
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Singleton(usize),
    Pair { seed: SeedDominator, dprime: VertexSet },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub members: VertexSet,
    pub provenance: Provenance,
}

/// The working graph of one seed iteration, as an alive mask over the input
/// graph, with an audit trail of what each cleaning step removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedState {
    pub alive: VertexSet,
    pub seed: SeedDominator,
    pub deleted_common: VertexSet,
    pub deleted_nonmodule: VertexSet,
    pub deleted_boundary: VertexSet,
}

impl ReducedState {
    pub fn new(g: &Graph, seed: SeedDominator) -> Self {
        ReducedState {
            alive: g.vertices(),
            seed,
            deleted_common: VertexSet::new(),
            deleted_nonmodule: VertexSet::new(),
            deleted_boundary: VertexSet::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoveringFamily {
    /// Distinct candidates in canonical order (by size, then member list).
    pub sets: Vec<CandidateSet>,
    /// Candidates produced before deduplication, singletons included.
    pub raw_count: u64,
    /// Independent-set solver invocations (cache misses only).
    pub mwis_calls: u64,
    pub seed_count: usize,
}

impl CoveringFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, members: &VertexSet) -> bool {
        self.sets.iter().any(|c| &c.members == members)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("internal error: candidate {:?} from {:?} is not bipartite (odd cycle {odd_cycle:?})", .candidate.members, .candidate.provenance)]
    NotBipartite { candidate: Box<CandidateSet>, odd_cycle: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct CoveringConfig {
    /// Process each seed with its two sides exchanged.
    pub swap_orientation: bool,
    /// Spread seeds over the rayon pool. Output does not depend on this.
    pub parallel: bool,
}

impl Default for CoveringConfig {
    fn default() -> Self {
        CoveringConfig { swap_orientation: false, parallel: true }
    }
}

/// Deletes every alive vertex adjacent to both sides of the seed.
pub fn reduce_common_neighbors(g: &Graph, state: &ReducedState) -> ReducedState {
    let parts = &state.seed.parts;
    let common = g
        .neighborhood_within(&parts.left, &state.alive, false)
        .intersection(&g.neighborhood_within(&parts.right, &state.alive, false));
    let mut next = state.clone();
    next.alive.difference_with(&common);
    next.deleted_common.union_with(&common);
    next
}

/// Deletes every connected component of `G - N[D]` that is not a module of
/// the alive graph. A distinguishing vertex always lies in `N[D]`, which
/// this step never touches, so components can be judged all at once.
pub fn prune_nonmodule_components(g: &Graph, state: &ReducedState) -> ReducedState {
    let dominated = g.neighborhood_within(&state.seed.vertices, &state.alive, true);
    let outside = state.alive.difference(&dominated);
    let mut next = state.clone();
    for comp in g.components_within(&outside) {
        if module_witness_within(g, &comp, &state.alive).is_some() {
            next.alive.difference_with(&comp);
            next.deleted_nonmodule.union_with(&comp);
        }
    }
    next
}

/// Fixes `C* = N[D ∪ D']` in the alive graph and deletes the members of
/// `C*` that have an alive neighbor outside `C*`. Returns the new state and
/// `C*`.
///
/// Neighbors already deleted by the earlier steps do not count: they may be
/// neighbors of the very component the guess is meant to isolate.
pub fn boundary_cleanup(g: &Graph, state: &ReducedState, dprime: &VertexSet) -> (ReducedState, VertexSet) {
    let core = state.seed.vertices.union(dprime);
    let cstar = g.neighborhood_within(&core, &state.alive, true);
    let boundary = boundary_of(g, &state.alive, &cstar);
    let mut next = state.clone();
    next.alive.difference_with(&boundary);
    next.deleted_boundary = boundary;
    (next, cstar)
}

fn boundary_of(g: &Graph, alive: &VertexSet, cstar: &VertexSet) -> VertexSet {
    cstar
        .iter()
        .filter(|&u| !g.neighbors(u).intersection(alive).is_subset(cstar))
        .collect()
}

/// The candidate `I_L ∪ I_R` for one guess `D'` (which may be empty).
pub fn candidate_for(g: &Graph, w: &Weights, state: &ReducedState, dprime: &VertexSet) -> CandidateSet {
    debug_assert!(dprime.is_subset(&state.alive) && dprime.len() <= 3);
    let solver = MwisSolver::new(g, &w.scaled());
    let (cleaned, _) = boundary_cleanup(g, state, dprime);
    let members = split_solve(g, &state.seed, &cleaned.alive, |s| solver.solve(s));
    CandidateSet {
        members,
        provenance: Provenance::Pair { seed: state.seed.clone(), dprime: dprime.clone() },
    }
}

fn split_solve(
    g: &Graph,
    seed: &SeedDominator,
    alive: &VertexSet,
    mut solve: impl FnMut(&VertexSet) -> VertexSet,
) -> VertexSet {
    let left_pool = g.neighborhood_within(&seed.parts.right, alive, false);
    let right_pool = g.neighborhood_within(&seed.parts.left, alive, false);
    debug_assert!(left_pool.is_disjoint(&right_pool));
    let mut members = solve(&left_pool);
    members.union_with(&solve(&right_pool));
    members
}

/// `n + (#edges + #induced P3s) * (1 + n + C(n,2) + C(n,3))`: the number of
/// candidates the builder can produce before deduplication.
pub fn raw_count_bound(g: &Graph) -> u128 {
    let n = g.n() as u128;
    let seeds = (g.edge_count() + count_induced_p3(g)) as u128;
    let guesses = 1 + n + n * n.saturating_sub(1) / 2 + n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    n + seeds * guesses
}

pub fn build_covering_family(g: &Graph, w: &Weights) -> Result<CoveringFamily, CoveringError> {
    build_covering_family_with(g, w, &CoveringConfig::default())
}

struct SeedOutput {
    candidates: Vec<CandidateSet>,
    raw: u64,
    mwis_calls: u64,
}

pub fn build_covering_family_with(
    g: &Graph,
    w: &Weights,
    config: &CoveringConfig,
) -> Result<CoveringFamily, CoveringError> {
    let solver = MwisSolver::new(g, &w.scaled());
    let mut seeds = enumerate_seeds(g);
    if config.swap_orientation {
        seeds = seeds.iter().map(SeedDominator::swapped).collect();
    }
    let outputs: Vec<SeedOutput> = if config.parallel {
        seeds.par_iter().map(|s| process_seed(g, &solver, s)).collect::<Result<_, _>>()?
    } else {
        seeds.iter().map(|s| process_seed(g, &solver, s)).collect::<Result<_, _>>()?
    };

    let mut family = CoveringFamily { seed_count: seeds.len(), raw_count: g.n() as u64, ..Default::default() };
    let mut seen = HashSet::new();
    let singletons = (0..g.n()).map(|v| CandidateSet {
        members: VertexSet::singleton(v),
        provenance: Provenance::Singleton(v),
    });
    let mut sets = Vec::new();
    for cand in singletons.chain(outputs.iter().flat_map(|o| o.candidates.iter().cloned())) {
        if seen.insert(cand.members.clone()) {
            sets.push(cand);
        }
    }
    for o in &outputs {
        family.raw_count += o.raw;
        family.mwis_calls += o.mwis_calls;
    }
    sets.sort_by(|a, b| a.members.cmp(&b.members));
    family.sets = sets;
    Ok(family)
}

fn process_seed(g: &Graph, solver: &MwisSolver<'_>, seed: &SeedDominator) -> Result<SeedOutput, CoveringError> {
    let start = ReducedState::new(g, seed.clone());
    let state = prune_nonmodule_components(g, &reduce_common_neighbors(g, &start));
    let alive = state.alive.to_vec();
    let closed: Vec<VertexSet> = alive.iter().map(|&v| g.neighborhood_within(&VertexSet::singleton(v), &state.alive, true)).collect();
    let base = g.neighborhood_within(&seed.vertices, &state.alive, true);

    let mut by_cstar: HashMap<VertexSet, VertexSet> = HashMap::new();
    let mut by_pool: HashMap<VertexSet, VertexSet> = HashMap::new();
    let mut seen = HashSet::new();
    let mut out = SeedOutput { candidates: Vec::new(), raw: 0, mwis_calls: 0 };

    let mut visit = |picked: &[usize], out: &mut SeedOutput| -> Result<(), CoveringError> {
        out.raw += 1;
        let mut cstar = base.clone();
        for &i in picked {
            cstar.union_with(&closed[i]);
        }
        let members = match by_cstar.get(&cstar) {
            Some(m) => m.clone(),
            None => {
                let cleaned = state.alive.difference(&boundary_of(g, &state.alive, &cstar));
                let m = split_solve(g, seed, &cleaned, |pool| {
                    by_pool
                        .entry(pool.clone())
                        .or_insert_with(|| {
                            out.mwis_calls += 1;
                            solver.solve(pool)
                        })
                        .clone()
                });
                by_cstar.insert(cstar, m.clone());
                m
            }
        };
        // seed vertices are never boundary-deleted, so D_L and D_R are in the pools
        debug_assert!(members.len() >= 2);
        if !seen.insert(members.clone()) {
            return Ok(());
        }
        let dprime: VertexSet = picked.iter().map(|&i| alive[i]).collect();
        if bipartition_within(g, &members).is_none() {
            let odd_cycle = find_odd_cycle_within(g, &members).unwrap_or_default();
            let provenance = Provenance::Pair { seed: seed.clone(), dprime };
            return Err(CoveringError::NotBipartite { candidate: Box::new(CandidateSet { members, provenance }), odd_cycle });
        }
        out.candidates.push(CandidateSet { members, provenance: Provenance::Pair { seed: seed.clone(), dprime } });
        Ok(())
    };

    let k = alive.len();
    visit(&[], &mut out)?;
    for a in 0..k {
        visit(&[a], &mut out)?;
    }
    for a in 0..k {
        for b in a + 1..k {
            visit(&[a, b], &mut out)?;
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                visit(&[a, b, c], &mut out)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Bipartition;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_slice(v)
    }

    fn edge_seed(a: usize, b: usize) -> SeedDominator {
        SeedDominator { vertices: vs(&[a, b]), parts: Bipartition { left: vs(&[a]), right: vs(&[b]) } }
    }

    #[test]
    fn common_neighbor_examples() {
        let c4 = Graph::cycle(4);
        let s = reduce_common_neighbors(&c4, &ReducedState::new(&c4, edge_seed(0, 1)));
        assert!(s.deleted_common.is_empty());
        assert_eq!(s.alive, c4.vertices());

        let k3 = Graph::complete(3);
        let s = reduce_common_neighbors(&k3, &ReducedState::new(&k3, edge_seed(0, 1)));
        assert_eq!(s.deleted_common, vs(&[2]));

        // paw: triangle 1,2,3 with pendant 0 on 1
        let paw = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        let seed = SeedDominator { vertices: vs(&[0, 1, 2]), parts: Bipartition { left: vs(&[0, 2]), right: vs(&[1]) } };
        let s = reduce_common_neighbors(&paw, &ReducedState::new(&paw, seed));
        assert_eq!(s.deleted_common, vs(&[3]));
        assert_eq!(s.alive, vs(&[0, 1, 2]));
    }

    #[test]
    fn nonmodule_examples() {
        let c4 = Graph::cycle(4);
        let s = prune_nonmodule_components(&c4, &ReducedState::new(&c4, edge_seed(0, 1)));
        assert!(s.deleted_nonmodule.is_empty());

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = prune_nonmodule_components(&star, &ReducedState::new(&star, edge_seed(0, 1)));
        assert!(s.deleted_nonmodule.is_empty());

        // seed a=0,b=1; u=2 sees only a; component {3,4} outside N[D] with
        // 3-u edge, 4-u non-edge, 3-4 edge
        let g = Graph::new(5, &[(0, 1), (0, 2), (2, 3), (3, 4)]).unwrap();
        let start = reduce_common_neighbors(&g, &ReducedState::new(&g, edge_seed(0, 1)));
        let w = module_witness_within(&g, &vs(&[3, 4]), &start.alive).unwrap();
        assert_eq!((w.x, w.y, w.u), (3, 4, 2));
        let s = prune_nonmodule_components(&g, &start);
        assert_eq!(s.deleted_nonmodule, vs(&[3, 4]));
        assert_eq!(s.alive, vs(&[0, 1, 2]));
    }

    #[test]
    fn candidate_examples() {
        let c4 = Graph::cycle(4);
        let w = Weights::unit(4);
        let state = ReducedState::new(&c4, edge_seed(0, 1));
        let (cleaned, cstar) = boundary_cleanup(&c4, &state, &VertexSet::new());
        assert_eq!(cstar, c4.vertices());
        assert!(cleaned.deleted_boundary.is_empty());
        assert_eq!(candidate_for(&c4, &w, &state, &VertexSet::new()).members, c4.vertices());

        let e = Graph::path(2);
        let state = ReducedState::new(&e, edge_seed(0, 1));
        assert_eq!(candidate_for(&e, &Weights::unit(2), &state, &VertexSet::new()).members, vs(&[0, 1]));
    }

    #[test]
    fn boundary_ignores_already_deleted_neighbors() {
        // K4 with seed edge {0,1}: 2 and 3 go as common neighbors; the edge
        // itself must survive the boundary step to be a candidate
        let k4 = Graph::complete(4);
        let state = reduce_common_neighbors(&k4, &ReducedState::new(&k4, edge_seed(0, 1)));
        let (cleaned, cstar) = boundary_cleanup(&k4, &state, &VertexSet::new());
        assert_eq!(cstar, vs(&[0, 1]));
        assert!(cleaned.deleted_boundary.is_empty());
        assert_eq!(candidate_for(&k4, &Weights::unit(4), &state, &VertexSet::new()).members, vs(&[0, 1]));

        // P4 0-1-2-3 with seed {1,2} and D' = {}: C* = {0,1,2,3}, nothing leaves
        // it; with seed {0,1}: C* = {0,1,2} and 2 sees 3 outside
        let p4 = Graph::path(4);
        let state = ReducedState::new(&p4, edge_seed(0, 1));
        let (cleaned, cstar) = boundary_cleanup(&p4, &state, &VertexSet::new());
        assert_eq!(cstar, vs(&[0, 1, 2]));
        assert_eq!(cleaned.deleted_boundary, vs(&[2]));
        assert_eq!(candidate_for(&p4, &Weights::unit(4), &state, &VertexSet::new()).members, vs(&[0, 1]));
    }

    #[test]
    fn family_examples() {
        let one = build_covering_family(&Graph::empty(1), &Weights::unit(1)).unwrap();
        assert_eq!(one.sets.len(), 1);
        assert_eq!(one.sets[0].members, vs(&[0]));

        let e = build_covering_family(&Graph::path(2), &Weights::unit(2)).unwrap();
        for s in [vs(&[0]), vs(&[1]), vs(&[0, 1])] {
            assert!(e.contains(&s));
        }

        let c5 = Graph::cycle(5);
        let fam = build_covering_family(&c5, &Weights::unit(5)).unwrap();
        assert!(fam.sets.iter().any(|c| c.members.len() == 4));
        assert!(fam.raw_count as u128 <= raw_count_bound(&c5));
    }

    #[test]
    fn family_is_canonical_and_bipartite() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (1, 4)]).unwrap();
        let fam = build_covering_family(&g, &Weights::unit(6)).unwrap();
        for pair in fam.sets.windows(2) {
            assert!(pair[0].members < pair[1].members);
        }
        for c in &fam.sets {
            assert!(bipartition_within(&g, &c.members).is_some());
        }
        let seq = build_covering_family_with(&g, &Weights::unit(6), &CoveringConfig { parallel: false, ..Default::default() }).unwrap();
        assert_eq!(seq, fam);
    }
}
