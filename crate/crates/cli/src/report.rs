//! The machine-readable solve report.

use crate::instance::format_rational;
use p5oct_core::{ClassStatus, Graph, Solution, VertexSet};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;
pub const FLAG_CERTIFIED: &str = "p5free-certified";
pub const FLAG_UNVERIFIED: &str = "unverified-class";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    /// `blob` for the polynomial pipeline, `oracle` for brute force.
    pub solver: String,
    pub n: usize,
    /// Exact weight as `num/den`.
    pub weight: String,
    /// Kept vertices, 1-indexed and ascending.
    pub vertices: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// The transversal: every vertex not kept.
    pub deleted: Vec<usize>,
    /// Connected pieces whose union is the kept set.
    pub parts: Vec<Vec<usize>>,
    pub stats: ReportStats,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportStats {
    pub family_raw: u64,
    pub family_dedup: usize,
    pub blob_vertices: usize,
    pub blob_edges: usize,
    pub mwis_calls: u64,
    /// Present only when timing was requested, so that reports are
    /// reproducible byte for byte by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

fn one_indexed(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

impl SolveReport {
    pub fn from_solution(g: &Graph, s: &Solution, solver: &str, wall_time_ms: Option<u64>) -> Self {
        let flag = match s.class {
            ClassStatus::Certified => FLAG_CERTIFIED,
            ClassStatus::Unverified => FLAG_UNVERIFIED,
        };
        SolveReport {
            schema: SCHEMA,
            solver: solver.to_string(),
            n: g.n(),
            weight: format_rational(&s.weight),
            vertices: one_indexed(&s.vertices),
            left: one_indexed(&s.certificate.left),
            right: one_indexed(&s.certificate.right),
            deleted: one_indexed(&g.vertices().difference(&s.vertices)),
            parts: s.parts.iter().map(one_indexed).collect(),
            stats: ReportStats {
                family_raw: s.stats.family_raw,
                family_dedup: s.stats.family_dedup,
                blob_vertices: s.stats.blob_vertices,
                blob_edges: s.stats.blob_edges,
                mwis_calls: s.stats.mwis_calls,
                wall_time_ms,
            },
            flags: vec![flag.to_string()],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn human(&self) -> String {
        let list = |v: &[usize]| {
            if v.is_empty() {
                "(none)".to_string()
            } else {
                v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
            }
        };
        let s = &self.stats;
        let mut out = format!(
            "weight {}\nkept {} of {} vertices\ndeleted: {}\nleft: {}\nright: {}\nclass: {}\n",
            self.weight,
            self.vertices.len(),
            self.n,
            list(&self.deleted),
            list(&self.left),
            list(&self.right),
            self.flags.join(", "),
        );
        if self.solver == "blob" {
            out += &format!(
                "family: {} raw, {} distinct; blob: {} vertices, {} edges; mwis calls: {}\n",
                s.family_raw, s.family_dedup, s.blob_vertices, s.blob_edges, s.mwis_calls
            );
        }
        if let Some(ms) = s.wall_time_ms {
            out += &format!("time: {ms} ms\n");
        }
        out
    }
}
