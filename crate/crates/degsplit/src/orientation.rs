//! Exact out-degree-d orientations with capped in-degrees, solved as a
//! bipartite degree-constrained subgraph problem via maximum flow, plus the
//! cap-evolution procedure that extracts a tight vertex set, the set of
//! saturated receivers, and a witness orientation.
//!
//! The flow encoding doubles every vertex: a left copy that must send exactly
//! `d` units (one per chosen out-neighbor) and a right copy that may receive
//! at most `caps(v)` units. Feasibility is equivalent to Ore's degree
//! condition on the bipartite double cover, which the brute-force oracle
//! checks directly on small instances.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::flow::{ArcHandle, FlowNetwork};
use crate::graph::{Graph, VertexSet};
use crate::verify::{ore_equality_check, Report};

#[derive(Debug, Error)]
pub enum OrientationError {
    #[error("graph minimum degree {min_degree} is below required out-degree {d}")]
    DegreeTooLow { min_degree: usize, d: usize },
    #[error("cap map covers {got} vertices, graph has {expected}")]
    CapsUndefined { got: usize, expected: usize },
    #[error("subset oracle limited to {limit} vertices, got {n}")]
    OracleLimit { n: usize, limit: usize },
    #[error("structure invariant violated: {failed:?}")]
    StructureInvariantViolated { failed: Vec<String>, report: Report },
}

/// Per-vertex in-degree caps, defined on every vertex of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapMap {
    caps: Vec<usize>,
}

impl CapMap {
    pub fn uniform(n: usize, value: usize) -> Self {
        CapMap {
            caps: vec![value; n],
        }
    }

    pub fn from_vec(caps: Vec<usize>) -> Self {
        CapMap { caps }
    }

    pub fn len(&self) -> usize {
        self.caps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.caps.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.caps[v]
    }

    pub fn set(&mut self, v: usize, value: usize) {
        self.caps[v] = value;
    }

    pub fn values(&self) -> &[usize] {
        &self.caps
    }
}

/// A spanning orientation of a subset of the edges: each vertex points at a
/// set of its neighbors. Antiparallel pairs (both `u→v` and `v→u`) are
/// allowed, since the two directions come from distinct edge copies in the
/// double cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    outs: Vec<BTreeSet<usize>>,
}

impl Orientation {
    pub fn new(n: usize) -> Self {
        Orientation {
            outs: vec![BTreeSet::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.outs.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize) {
        self.outs[from].insert(to);
    }

    pub fn out_neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.outs[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.outs[v].len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.outs
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut degs = vec![0; self.n()];
        for (_, v) in self.arcs() {
            degs[v] += 1;
        }
        degs
    }

    pub fn in_neighbor_sets(&self) -> Vec<BTreeSet<usize>> {
        let mut ins = vec![BTreeSet::new(); self.n()];
        for (u, v) in self.arcs() {
            ins[v].insert(u);
        }
        ins
    }
}

/// Output of the cap evolution: the minimized uniform cap `t`, the tight set
/// (senders whose demand meets the cap equation with equality), the saturated
/// receivers, the witness orientation, and the caps at the stopping state.
#[derive(Debug, Clone)]
pub struct OrientationStructure {
    pub t: usize,
    pub tight: VertexSet,
    pub saturated: VertexSet,
    pub orientation: Orientation,
    pub caps_at_stop: CapMap,
    pub last_raised: usize,
}

struct OrientationNetwork {
    net: FlowNetwork,
    edge_arcs: Vec<(usize, usize, ArcHandle)>,
    sink_arcs: Vec<ArcHandle>,
    source: usize,
    sink: usize,
    demand: i64,
}

impl OrientationNetwork {
    /// source -> left(v) with capacity d; left(u) -> right(v) per edge copy
    /// with capacity 1; right(v) -> sink with capacity caps(v).
    fn build(g: &Graph, d: usize, caps: &CapMap) -> Self {
        let n = g.n();
        let source = 0;
        let left = |v: usize| 1 + v;
        let right = |v: usize| 1 + n + v;
        let sink = 1 + 2 * n;
        let mut net = FlowNetwork::new(2 * n + 2);
        for v in 0..n {
            net.add_arc(source, left(v), d as i64);
        }
        let mut edge_arcs = Vec::new();
        for u in 0..n {
            for &v in g.neighbors(u) {
                let h = net.add_arc(left(u), right(v), 1);
                edge_arcs.push((u, v, h));
            }
        }
        let mut sink_arcs = Vec::with_capacity(n);
        for v in 0..n {
            sink_arcs.push(net.add_arc(right(v), sink, caps.get(v) as i64));
        }
        OrientationNetwork {
            net,
            edge_arcs,
            sink_arcs,
            source,
            sink,
            demand: (d * n) as i64,
        }
    }

    fn extract_orientation(&self, n: usize) -> Orientation {
        let mut orientation = Orientation::new(n);
        for &(u, v, h) in &self.edge_arcs {
            if self.net.flow_on(h) > 0 {
                orientation.add_arc(u, v);
            }
        }
        orientation
    }

    /// Left-copy vertices reachable from the source in the residual network.
    fn reachable_senders(&self, n: usize) -> VertexSet {
        let seen = self.net.residual_reachable(self.source);
        (0..n).filter(|&v| seen[1 + v]).collect()
    }
}

fn check_caps(g: &Graph, caps: &CapMap) -> Result<(), OrientationError> {
    if caps.len() != g.n() {
        return Err(OrientationError::CapsUndefined {
            got: caps.len(),
            expected: g.n(),
        });
    }
    Ok(())
}

/// Maximum flow value for the orientation network, without extracting arcs.
fn feasible_value(g: &Graph, d: usize, caps: &CapMap) -> bool {
    let mut enc = OrientationNetwork::build(g, d, caps);
    enc.net.max_flow(enc.source, enc.sink) == enc.demand
}

/// Orientation with out-degree exactly `d` everywhere and in-degrees within
/// `caps`, if one exists. `d > δ(G)` simply yields `None`.
pub fn feasible_orientation(
    g: &Graph,
    d: usize,
    caps: &CapMap,
) -> Result<Option<Orientation>, OrientationError> {
    check_caps(g, caps)?;
    let mut enc = OrientationNetwork::build(g, d, caps);
    let flow = enc.net.max_flow(enc.source, enc.sink);
    if flow == enc.demand {
        Ok(Some(enc.extract_orientation(g.n())))
    } else {
        Ok(None)
    }
}

const SUBSET_ORACLE_LIMIT: usize = 20;

/// Checks Ore's condition `d·|X| ≤ Σ_y min{caps(y), e(y, X)}` over every
/// subset X by exhaustive enumeration; returns a violating X when it fails.
pub fn ore_holds_bruteforce(
    g: &Graph,
    d: usize,
    caps: &CapMap,
) -> Result<(bool, Option<VertexSet>), OrientationError> {
    check_caps(g, caps)?;
    let n = g.n();
    if n > SUBSET_ORACLE_LIMIT {
        return Err(OrientationError::OracleLimit {
            n,
            limit: SUBSET_ORACLE_LIMIT,
        });
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    for subset in 0..=full {
        let lhs = d * subset.count_ones() as usize;
        let rhs: usize = (0..n)
            .map(|y| caps.get(y).min((masks[y] & subset).count_ones() as usize))
            .sum();
        if lhs > rhs {
            let x: VertexSet = (0..n).filter(|&v| subset & (1 << v) != 0).collect();
            return Ok((false, Some(x)));
        }
    }
    Ok((true, None))
}

/// Least uniform in-degree cap `t` admitting an out-degree-`d` orientation.
/// Feasibility is monotone in `t`, so binary search on `[d, n-1]` applies;
/// both endpoints of the certificate are re-checked before returning.
pub fn min_indegree_cap(g: &Graph, d: usize) -> Result<usize, OrientationError> {
    assert!(d >= 1, "out-degree must be at least 1");
    if g.min_degree() < d {
        return Err(OrientationError::DegreeTooLow {
            min_degree: g.min_degree(),
            d,
        });
    }
    let n = g.n();
    let (mut lo, mut hi) = (d, n - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible_value(g, d, &CapMap::uniform(n, mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = lo;
    assert!(
        feasible_value(g, d, &CapMap::uniform(n, t)),
        "min cap {t} must be feasible"
    );
    assert!(
        t == 0 || !feasible_value(g, d, &CapMap::uniform(n, t - 1)),
        "cap {} must be infeasible below the minimum",
        t - 1
    );
    Ok(t)
}

/// Runs the cap evolution: start every cap at `t-1` (infeasible by
/// minimality of `t`), raise caps to `t` one vertex at a time in `order`
/// while maintaining a maximum flow, and stop at the first raise that makes
/// the demand feasible. The tight set is read off the residual cut of the
/// deficiency-1 flow immediately before that final raise.
pub fn evolve_structure(
    g: &Graph,
    d: usize,
    order: &[usize],
) -> Result<OrientationStructure, OrientationError> {
    let n = g.n();
    assert_eq!(order.len(), n, "order must be a permutation of the vertices");
    debug_assert!({
        let mut seen = vec![false; n];
        order.iter().all(|&v| {
            let fresh = !seen[v];
            seen[v] = true;
            fresh
        })
    });

    let t = min_indegree_cap(g, d)?;
    let mut caps = CapMap::uniform(n, t - 1);
    let mut enc = OrientationNetwork::build(g, d, &caps);
    let mut flow = enc.net.max_flow(enc.source, enc.sink);
    if flow >= enc.demand {
        return Err(invariant_violation(
            "caps of t-1 were feasible, contradicting cap minimality",
        ));
    }

    let mut tight_snapshot: Option<VertexSet> = None;
    for &y in order {
        if flow == enc.demand - 1 {
            tight_snapshot = Some(enc.reachable_senders(n));
        }
        enc.net.raise_capacity(enc.sink_arcs[y], 1);
        caps.set(y, t);
        flow += enc.net.augment_once(enc.source, enc.sink);
        if flow == enc.demand {
            let tight = match tight_snapshot {
                Some(x) => x,
                None => {
                    return Err(invariant_violation(
                        "feasibility reached without passing a deficiency-1 state",
                    ))
                }
            };
            let orientation = enc.extract_orientation(n);
            let ins = orientation.in_neighbor_sets();
            let saturated: VertexSet = (0..n)
                .filter(|&v| ins[v].intersection(&tight).count() == caps.get(v))
                .collect();
            let structure = OrientationStructure {
                t,
                tight,
                saturated,
                orientation,
                caps_at_stop: caps,
                last_raised: y,
            };
            let report = verify_structure(g, d, &structure);
            if !report.pass {
                let failed = report
                    .items
                    .iter()
                    .filter(|it| !it.pass)
                    .map(|it| it.name.clone())
                    .collect();
                return Err(OrientationError::StructureInvariantViolated { failed, report });
            }
            return Ok(structure);
        }
    }
    Err(invariant_violation(
        "evolution exhausted the raise order without reaching feasibility",
    ))
}

fn invariant_violation(msg: &str) -> OrientationError {
    let mut report = Report::new();
    report.check("evolution", false, msg);
    OrientationError::StructureInvariantViolated {
        failed: vec![msg.to_string()],
        report,
    }
}

/// Itemized check of every structure invariant. Used as the postcondition
/// gate of [`evolve_structure`] and available on its own for tampering tests.
pub fn verify_structure(g: &Graph, d: usize, s: &OrientationStructure) -> Report {
    let mut report = Report::new();
    let n = g.n();
    let sized_ok = s.orientation.n() == n && s.caps_at_stop.len() == n;
    report.check(
        "shapes_match_graph",
        sized_ok,
        format!("orientation over {} vertices, caps over {}", s.orientation.n(), s.caps_at_stop.len()),
    );
    if !sized_ok {
        return report;
    }

    let bad_arc = s.orientation.arcs().find(|&(u, v)| !g.has_edge(u, v));
    report.check(
        "arcs_are_graph_edges",
        bad_arc.is_none(),
        format!("first non-edge arc: {bad_arc:?}"),
    );
    let bad_out = (0..n).find(|&v| s.orientation.out_degree(v) != d);
    report.check(
        "out_degree_exact",
        bad_out.is_none(),
        format!("vertex with out-degree != {d}: {bad_out:?}"),
    );
    let in_degrees = s.orientation.in_degrees();
    let bad_in = (0..n).find(|&v| in_degrees[v] > s.t);
    report.check(
        "in_degree_within_t",
        bad_in.is_none(),
        format!("vertex with in-degree > t={}: {bad_in:?}", s.t),
    );

    report.check("tight_nonempty", !s.tight.is_empty(), "tight set is empty");
    report.check(
        "saturated_nonempty",
        !s.saturated.is_empty(),
        "saturated set is empty",
    );
    report.check(
        "t_at_least_out_degree",
        s.t >= d,
        format!("t={} < d={d}", s.t),
    );

    // every neighbor a tight vertex does not point at must be saturated
    let mut uncovered = None;
    'outer: for &x in &s.tight {
        for &w in g.neighbors(x) {
            if !s.orientation.out_neighbors(x).contains(&w) && !s.saturated.contains(&w) {
                uncovered = Some((x, w));
                break 'outer;
            }
        }
    }
    report.check(
        "tight_missing_edges_land_saturated",
        uncovered.is_none(),
        format!("tight vertex with unsaturated non-out neighbor: {uncovered:?}"),
    );

    let ins = s.orientation.in_neighbor_sets();
    let stray = s
        .saturated
        .iter()
        .find(|&&y| !ins[y].is_subset(&s.tight));
    report.check(
        "saturated_receive_only_from_tight",
        stray.is_none(),
        format!("saturated vertex with non-tight in-neighbor: {stray:?}"),
    );
    let off_cap = s
        .saturated
        .iter()
        .find(|&&y| in_degrees[y] + 1 != s.t && in_degrees[y] != s.t);
    report.check(
        "saturated_in_degree_near_cap",
        off_cap.is_none(),
        format!("saturated vertex with in-degree outside {{t-1, t}}: {off_cap:?}"),
    );

    let cap_range = (0..n).find(|&v| {
        let c = s.caps_at_stop.get(v);
        c + 1 != s.t && c != s.t
    });
    report.check(
        "caps_in_range",
        cap_range.is_none(),
        format!("vertex with cap outside {{t-1, t}}: {cap_range:?}"),
    );
    let over_cap = (0..n).find(|&v| in_degrees[v] > s.caps_at_stop.get(v));
    report.check(
        "in_degree_within_caps",
        over_cap.is_none(),
        format!("vertex with in-degree above its cap: {over_cap:?}"),
    );

    report.check(
        "cap_equation_tight",
        ore_equality_check(g, d, &s.caps_at_stop, &s.tight),
        format!(
            "d*|tight| = {} vs sum of capped tight-edges = {}",
            d * s.tight.len(),
            g.vertices()
                .map(|y| s.caps_at_stop.get(y).min(g.e_vertex(y, &s.tight)))
                .sum::<usize>()
        ),
    );

    let derived: VertexSet = (0..n)
        .filter(|&v| ins[v].intersection(&s.tight).count() == s.caps_at_stop.get(v))
        .collect();
    report.check(
        "saturated_matches_definition",
        derived == s.saturated,
        format!("derived saturated set {derived:?}"),
    );
    report.check(
        "last_raised_saturated",
        s.saturated.contains(&s.last_raised),
        format!("last raised vertex {} not saturated", s.last_raised),
    );
    report
}
