//! Structural detectors: two-colorings, odd cycles, induced P5s, modules,
//! domination, and the seed dominators (edges and induced P3s).

use crate::{Graph, VertexSet};

/// A two-coloring of a vertex set into independent sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    pub fn vertices(&self) -> VertexSet {
        self.left.union(&self.right)
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition { left: self.right.clone(), right: self.left.clone() }
    }

    /// Checks both sides are disjoint and independent in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.left.is_disjoint(&self.right) && g.is_independent(&self.left) && g.is_independent(&self.right)
    }
}

/// Two-coloring of `g`; in each component the minimum-id vertex is on the
/// left. `None` if `g` has an odd cycle.
pub fn bipartition_of(g: &Graph) -> Option<Bipartition> {
    bipartition_within(g, &g.vertices())
}

/// Two-coloring of the subgraph induced by `alive`, in original ids.
pub fn bipartition_within(g: &Graph, alive: &VertexSet) -> Option<Bipartition> {
    let mut parts = Bipartition { left: VertexSet::new(), right: VertexSet::new() };
    for comp in g.components_within(alive) {
        let start = comp.first().expect("nonempty component");
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen.clone();
        let mut odd_layer = false;
        parts.left.insert(start);
        while !frontier.is_empty() {
            let next = g.neighborhood_within(&frontier, &comp, false).difference(&seen);
            seen.union_with(&next);
            odd_layer = !odd_layer;
            if odd_layer {
                parts.right.union_with(&next);
            } else {
                parts.left.union_with(&next);
            }
            frontier = next;
        }
    }
    if !g.is_independent(&parts.left) || !g.is_independent(&parts.right) {
        return None;
    }
    Some(parts)
}

/// An odd cycle (as a closed vertex walk without repetition) in the
/// subgraph induced by `alive`, if one exists.
pub fn find_odd_cycle_within(g: &Graph, alive: &VertexSet) -> Option<Vec<usize>> {
    let n = g.n();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in alive {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in &g.neighbors(v).intersection(alive) {
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                } else if depth[u] == depth[v] {
                    // climb to the lowest common ancestor
                    let (mut a, mut b) = (v, u);
                    let (mut left, mut right) = (vec![a], vec![b]);
                    while a != b {
                        a = parent[a];
                        b = parent[b];
                        left.push(a);
                        right.push(b);
                    }
                    right.pop();
                    left.extend(right.into_iter().rev());
                    return Some(left);
                }
            }
        }
    }
    None
}

/// An induced path `(a, b, c, d, e)` on five vertices, if any.
pub fn find_induced_p5(g: &Graph) -> Option<[usize; 5]> {
    // Enumerate induced P3s b-c-d with b < d, then look for a pendant `a` on
    // b and `e` on d that avoid the rest of the path and each other.
    for c in 0..g.n() {
        let nc = g.neighbors(c);
        for b in nc {
            let mut closed_bc = g.neighbors(b).union(nc);
            closed_bc.insert(b);
            closed_bc.insert(c);
            for d in nc.iter().filter(|&d| d > b && !g.has_edge(b, d)) {
                let nd = g.neighbors(d);
                let mut ends_a = g.neighbors(b).difference(nc).difference(nd);
                ends_a.remove(c);
                if ends_a.is_empty() {
                    continue;
                }
                let mut ends_e = nd.difference(&closed_bc);
                ends_e.remove(d);
                if ends_e.is_empty() {
                    continue;
                }
                for a in &ends_a {
                    if let Some(e) = ends_e.difference(g.neighbors(a)).first() {
                        return Some([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    None
}

/// Witness that a set is not a module: `x, y` inside, `u` outside, with `u`
/// adjacent to exactly one of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleWitness {
    pub x: usize,
    pub y: usize,
    pub u: usize,
}

pub fn is_module(g: &Graph, a: &VertexSet) -> bool {
    module_witness(g, a).is_none()
}

pub fn module_witness(g: &Graph, a: &VertexSet) -> Option<ModuleWitness> {
    module_witness_within(g, a, &g.vertices())
}

/// Module test in the subgraph induced by `alive` (with `a ⊆ alive`).
pub fn module_witness_within(g: &Graph, a: &VertexSet, alive: &VertexSet) -> Option<ModuleWitness> {
    let x = a.first()?;
    let outside = |v: usize| g.neighbors(v).intersection(alive).difference(a);
    let reference = outside(x);
    a.iter().skip(1).find_map(|y| {
        let u = outside(y).symmetric_difference(&reference).first()?;
        Some(ModuleWitness { x, y, u })
    })
}

/// True iff `target ⊆ N[d]`.
pub fn dominates(g: &Graph, d: &VertexSet, target: &VertexSet) -> bool {
    target.is_subset(&g.neighborhood_within(d, &g.vertices(), true))
}

/// A connected bipartite set of two or three vertices (an edge or an
/// induced P3) with a fixed orientation of its two sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedDominator {
    pub vertices: VertexSet,
    pub parts: Bipartition,
}

impl SeedDominator {
    fn oriented(a: VertexSet, b: VertexSet) -> Self {
        let vertices = a.union(&b);
        let parts = if a.first() < b.first() {
            Bipartition { left: a, right: b }
        } else {
            Bipartition { left: b, right: a }
        };
        SeedDominator { vertices, parts }
    }

    pub fn swapped(&self) -> Self {
        SeedDominator { vertices: self.vertices.clone(), parts: self.parts.swapped() }
    }
}

/// Every edge and every induced P3, each once, with the side holding the
/// minimum vertex id as the left part. Edges come first in lexicographic
/// order, then P3s ordered by center and endpoints.
pub fn enumerate_seeds(g: &Graph) -> Vec<SeedDominator> {
    let mut seeds: Vec<_> = g
        .edges()
        .map(|(u, v)| SeedDominator::oriented(VertexSet::singleton(u), VertexSet::singleton(v)))
        .collect();
    for_each_induced_p3(g, |a, c, b| {
        seeds.push(SeedDominator::oriented(VertexSet::from_slice(&[a, b]), VertexSet::singleton(c)));
    });
    seeds
}

/// Calls `f(a, center, b)` for every induced P3 `a - center - b` with `a < b`.
pub fn for_each_induced_p3(g: &Graph, mut f: impl FnMut(usize, usize, usize)) {
    for c in 0..g.n() {
        let nc = g.neighbors(c);
        for a in nc {
            for b in nc.iter().filter(|&b| b > a && !g.has_edge(a, b)) {
                f(a, c, b);
            }
        }
    }
}

pub fn count_induced_p3(g: &Graph) -> usize {
    let mut count = 0;
    for_each_induced_p3(g, |_, _, _| count += 1);
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_slice(v)
    }

    fn brute_p5(g: &Graph) -> bool {
        let n = g.n();
        let idx: Vec<usize> = (0..n).collect();
        let mut found = false;
        permute5(&idx, &mut Vec::new(), &mut |p| {
            let path_ok = (0..5).all(|i| {
                (i + 1..5).all(|j| g.has_edge(p[i], p[j]) == (j == i + 1))
            });
            found |= path_ok;
        });
        found
    }

    fn permute5(pool: &[usize], cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == 5 {
            f(cur);
            return;
        }
        for &v in pool {
            if !cur.contains(&v) {
                cur.push(v);
                permute5(pool, cur, f);
                cur.pop();
            }
        }
    }

    fn has_odd_cycle_brute(g: &Graph) -> bool {
        // some 2-coloring of all vertices is proper iff bipartite
        let n = g.n();
        !(0u32..1 << n).any(|c| g.edges().all(|(u, v)| (c >> u & 1) != (c >> v & 1)))
    }

    #[test]
    fn bipartition_examples() {
        let b = bipartition_of(&Graph::cycle(4)).unwrap();
        assert_eq!((b.left, b.right), (vs(&[0, 2]), vs(&[1, 3])));
        assert!(bipartition_of(&Graph::cycle(5)).is_none());
        let b = bipartition_of(&Graph::empty(1)).unwrap();
        assert_eq!((b.left, b.right), (vs(&[0]), VertexSet::new()));
        // each component oriented by its own minimum
        let g = Graph::new(5, &[(1, 0), (3, 2), (2, 4)]).unwrap();
        let b = bipartition_of(&g).unwrap();
        assert_eq!((b.left, b.right), (vs(&[0, 2]), vs(&[1, 3, 4])));
    }

    #[test]
    fn odd_cycle_is_a_real_cycle() {
        let g = Graph::new(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3)]).unwrap();
        let cyc = find_odd_cycle_within(&g, &g.vertices()).unwrap();
        assert_eq!(cyc.len() % 2, 1);
        for i in 0..cyc.len() {
            assert!(g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]));
        }
        assert!(find_odd_cycle_within(&Graph::cycle(6), &VertexSet::full(6)).is_none());
    }

    #[test]
    fn p5_examples() {
        let p = find_induced_p5(&Graph::path(5)).unwrap();
        assert!(p == [0, 1, 2, 3, 4] || p == [4, 3, 2, 1, 0]);
        assert!(find_induced_p5(&Graph::cycle(5)).is_none());
        assert!(find_induced_p5(&Graph::complete(6)).is_none());
        assert!(find_induced_p5(&Graph::cycle(6)).is_some());
    }

    #[test]
    fn p5_and_bipartite_match_brute_force_exhaustively_small() {
        // all labeled graphs on 6 vertices, plus a sample of 7- and 8-vertex ones
        let check = |g: &Graph| {
            let found = find_induced_p5(g);
            assert_eq!(found.is_some(), brute_p5(g), "{g:?}");
            if let Some(p) = found {
                for i in 0..5 {
                    for j in i + 1..5 {
                        assert_eq!(g.has_edge(p[i], p[j]), j == i + 1);
                    }
                }
            }
            assert_eq!(bipartition_of(g).is_none(), has_odd_cycle_brute(g));
            assert_eq!(find_odd_cycle_within(g, &g.vertices()).is_some(), has_odd_cycle_brute(g));
            if let Some(b) = bipartition_of(g) {
                assert!(b.is_valid_in(g));
                assert_eq!(b.vertices(), g.vertices());
            }
        };
        let pairs: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            check(&Graph::new(6, &edges).unwrap());
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        for n in [7usize, 8] {
            let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for _ in 0..300 {
                let edges: Vec<_> = pairs
                    .iter()
                    .filter(|_| {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        state.is_multiple_of(3)
                    })
                    .copied()
                    .collect();
                check(&Graph::new(n, &edges).unwrap());
            }
        }
    }

    #[test]
    fn module_examples() {
        let c4 = Graph::cycle(4);
        assert!(is_module(&c4, &vs(&[0, 2])));
        let w = module_witness(&c4, &vs(&[0, 1])).unwrap();
        assert_eq!((w.x, w.y), (0, 1));
        assert!(c4.has_edge(w.u, w.x) != c4.has_edge(w.u, w.y));
        assert!(is_module(&c4, &vs(&[3])));
        assert!(is_module(&c4, &c4.vertices()));
        assert!(is_module(&c4, &VertexSet::new()));
    }

    #[test]
    fn domination_examples() {
        let p3 = Graph::path(3);
        assert!(dominates(&p3, &vs(&[1]), &p3.vertices()));
        assert!(!dominates(&p3, &vs(&[0]), &p3.vertices()));
        assert!(dominates(&p3, &vs(&[0, 2]), &vs(&[0, 2])));
    }

    #[test]
    fn seed_examples() {
        let seeds = enumerate_seeds(&Graph::path(2));
        assert_eq!(seeds.len(), 1);
        assert_eq!((seeds[0].parts.left.clone(), seeds[0].parts.right.clone()), (vs(&[0]), vs(&[1])));

        let k3 = enumerate_seeds(&Graph::complete(3));
        assert_eq!(k3.len(), 3);
        assert!(k3.iter().all(|s| s.vertices.len() == 2));

        let p3 = enumerate_seeds(&Graph::path(3));
        assert_eq!(p3.len(), 3);
        assert_eq!(p3[0].vertices, vs(&[0, 1]));
        assert_eq!(p3[1].vertices, vs(&[1, 2]));
        assert_eq!(p3[2].parts, Bipartition { left: vs(&[0, 2]), right: vs(&[1]) });

        // center with the smallest id goes left
        let star = enumerate_seeds(&Graph::new(3, &[(0, 1), (0, 2)]).unwrap());
        assert_eq!(star[2].parts, Bipartition { left: vs(&[0]), right: vs(&[1, 2]) });
    }

    #[test]
    fn seed_count_bound_and_validity() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (1, 5)]).unwrap();
        let seeds = enumerate_seeds(&g);
        let (n, m) = (g.n(), g.edge_count());
        assert!(seeds.len() <= m + n * m);
        assert_eq!(seeds.len(), m + count_induced_p3(&g));
        for s in &seeds {
            assert!(g.is_connected_within(&s.vertices));
            assert!(s.parts.is_valid_in(&g));
            assert_eq!(s.parts.left.first(), s.vertices.first());
            for side in [&s.parts.left, &s.parts.right] {
                let other = if side == &s.parts.left { &s.parts.right } else { &s.parts.left };
                assert!(side.iter().all(|v| g.neighbors(v).intersects(other)));
            }
        }
    }
}
