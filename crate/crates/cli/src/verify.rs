//! Rechecks a report against its instance using only adjacency queries and
//! rational arithmetic.

use crate::instance::parse_rational;
use crate::report::{SolveReport, SCHEMA};
use num_rational::BigRational;
use num_traits::Zero;
use p5oct_core::{Graph, Weights};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct VerifyError(pub String);

fn bad<T>(msg: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError(msg.into()))
}

fn check_list(name: &str, list: &[usize], n: usize) -> Result<BTreeSet<usize>, VerifyError> {
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return bad(format!("{name} list not strictly ascending"));
    }
    if let Some(v) = list.iter().find(|&&v| v == 0 || v > n) {
        return bad(format!("{name} list has vertex {v} outside 1..={n}"));
    }
    Ok(list.iter().map(|v| v - 1).collect())
}

fn independent(g: &Graph, s: &BTreeSet<usize>) -> bool {
    s.iter().all(|&u| s.range(u + 1..).all(|&v| !g.has_edge(u, v)))
}

fn touch(g: &Graph, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    a.iter().any(|&u| b.contains(&u) || b.iter().any(|&v| g.has_edge(u, v)))
}

fn connected(g: &Graph, s: &BTreeSet<usize>) -> bool {
    let Some(&start) = s.first() else { return false };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &v in s {
            if g.has_edge(u, v) && seen.insert(v) {
                stack.push(v);
            }
        }
    }
    seen.len() == s.len()
}

/// Passes when the report describes a bipartite induced subgraph of `g`
/// with a valid two-coloring, a correct transversal, non-touching connected
/// parts covering it, and the stated exact weight.
pub fn verify_report(g: &Graph, w: &Weights, r: &SolveReport) -> Result<(), VerifyError> {
    let n = g.n();
    if r.schema != SCHEMA {
        return bad(format!("unsupported schema {}", r.schema));
    }
    if r.n != n {
        return bad(format!("report is for {} vertices, instance has {n}", r.n));
    }
    let kept = check_list("vertex", &r.vertices, n)?;
    let left = check_list("left", &r.left, n)?;
    let right = check_list("right", &r.right, n)?;
    let deleted = check_list("deleted", &r.deleted, n)?;

    if !left.is_disjoint(&right) {
        return bad("left and right sets overlap");
    }
    if left.union(&right).copied().collect::<BTreeSet<_>>() != kept {
        return bad("left and right sets do not cover the vertex list");
    }
    if !independent(g, &left) {
        return bad("left set not independent");
    }
    if !independent(g, &right) {
        return bad("right set not independent");
    }
    if kept.len() + deleted.len() != n || !kept.is_disjoint(&deleted) {
        return bad("deleted set is not the complement of the vertex list");
    }

    let mut covered = BTreeSet::new();
    let parts: Vec<BTreeSet<usize>> =
        r.parts.iter().map(|p| check_list("part", p, n)).collect::<Result<_, _>>()?;
    for (i, p) in parts.iter().enumerate() {
        if !connected(g, p) {
            return bad(format!("part {} is not connected", i + 1));
        }
        if let Some(j) = parts[i + 1..].iter().position(|q| touch(g, p, q)) {
            return bad(format!("parts {} and {} touch", i + 1, i + j + 2));
        }
        covered.extend(p);
    }
    if covered != kept {
        return bad("parts do not cover the vertex list");
    }

    let claimed = parse_rational(&r.weight).map_err(|e| VerifyError(format!("bad weight string: {e}")))?;
    let mut total = BigRational::zero();
    for &v in &kept {
        total += w.get(v);
    }
    if total != claimed {
        return bad("weight mismatch");
    }
    Ok(())
}
