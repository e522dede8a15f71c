//! Ground-truth verifiers: partition conditions, k-domination, orientation
//! cap tightness, and the exhaustive bipartition oracle for small graphs.
//!
//! Everything here is deliberately naive — these are the checks that gate
//! every randomized output, so they must be direct restatements of the
//! definitions rather than clever.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::orientation::CapMap;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("exhaustive oracle limited to {limit} vertices, got {n}")]
    OracleLimit { n: usize, limit: usize },
}

/// Itemized pass/fail result of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub items: Vec<ReportItem>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Report {
    pub fn new() -> Self {
        Report {
            items: Vec::new(),
            pass: true,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.items.push(ReportItem {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
        self.pass &= pass;
    }

    pub fn item(&self, name: &str) -> Option<&ReportItem> {
        self.items.iter().find(|it| it.name == name)
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

/// True iff every vertex of `g` (including members of `a`) has at least `k`
/// neighbors inside `a`.
pub fn is_k_dominating(g: &Graph, a: &VertexSet, k: usize) -> bool {
    g.vertices().all(|v| g.e_vertex(v, a) >= k)
}

fn is_disjoint_cover(g: &Graph, left: &VertexSet, right: &VertexSet) -> bool {
    left.is_disjoint(right)
        && left.len() + right.len() == g.n()
        && left.iter().chain(right.iter()).all(|&v| v < g.n())
}

/// Minimum degree of the subgraph induced on `side`; `None` for an empty side.
fn induced_min_degree(g: &Graph, side: &VertexSet) -> Option<usize> {
    side.iter().map(|&v| g.e_vertex(v, side)).min()
}

/// Checks the full S/T contract: disjoint cover, minimum degree `k` inside
/// both sides, and `k` cross-neighbors from every S-vertex. An empty side
/// fails the degree items for any `k >= 1`.
pub fn verify_partition_st(g: &Graph, s: &VertexSet, t: &VertexSet, k: usize) -> Report {
    let mut report = Report::new();
    report.check(
        "disjoint_cover",
        is_disjoint_cover(g, s, t),
        format!("|S|={} |T|={} n={}", s.len(), t.len(), g.n()),
    );
    let min_s = induced_min_degree(g, s);
    report.check(
        "min_degree_in_s",
        min_s.is_some_and(|d| d >= k),
        format!("min degree {min_s:?} in G[S], need >= {k}"),
    );
    let min_t = induced_min_degree(g, t);
    report.check(
        "min_degree_in_t",
        min_t.is_some_and(|d| d >= k),
        format!("min degree {min_t:?} in G[T], need >= {k}"),
    );
    let cross = s.iter().map(|&v| g.e_vertex(v, t)).min();
    report.check(
        "s_has_k_neighbors_in_t",
        !s.is_empty() && cross.is_some_and(|d| d >= k),
        format!("min cross degree {cross:?}, need >= {k}"),
    );
    report
}

/// Checks the A/B contract: disjoint cover, A k-dominating, and `G[B]` with
/// average degree at least `2k` on a non-empty B.
pub fn verify_partition_ab(g: &Graph, a: &VertexSet, b: &VertexSet, k: usize) -> Report {
    let mut report = Report::new();
    report.check(
        "disjoint_cover",
        is_disjoint_cover(g, a, b),
        format!("|A|={} |B|={} n={}", a.len(), b.len(), g.n()),
    );
    report.check(
        "a_is_k_dominating",
        is_k_dominating(g, a, k),
        format!("every vertex needs >= {k} neighbors in A"),
    );
    let edges_b = g.e_between(b, b);
    report.check(
        "b_average_degree",
        !b.is_empty() && 2 * edges_b >= 2 * k * b.len(),
        format!("2*e(G[B])={} vs 2k|B|={}", 2 * edges_b, 2 * k * b.len()),
    );
    report
}

const BIPARTITION_ORACLE_LIMIT: usize = 22;

/// Exhaustively decides whether every bipartition of `V(g)` leaves some
/// vertex with all of its neighbors on one side.
pub fn every_bipartition_has_starved_vertex(g: &Graph) -> Result<bool, VerifyError> {
    let n = g.n();
    if n > BIPARTITION_ORACLE_LIMIT {
        return Err(VerifyError::OracleLimit {
            n,
            limit: BIPARTITION_ORACLE_LIMIT,
        });
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for side in 0..=full {
        let other = full & !side;
        let starved = masks
            .iter()
            .any(|&m| m & side == 0 || m & other == 0);
        if !starved {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the cap equation `d·|X| = Σ_y min{caps(y), e(y, X)}` holds.
pub fn ore_equality_check(g: &Graph, d: usize, caps: &CapMap, x: &VertexSet) -> bool {
    let lhs = d * x.len();
    let rhs: usize = g
        .vertices()
        .map(|y| caps.get(y).min(g.e_vertex(y, x)))
        .sum();
    lhs == rhs
}
