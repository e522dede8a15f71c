//! Dinic-style maximum flow on small integer-capacity networks, with two
//! extras the orientation solver relies on: raising a single arc capacity
//! followed by a one-shot augmentation, and residual reachability queries.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    rev: usize,
}

/// Handle to a forward arc, valid for the lifetime of the network.
#[derive(Debug, Clone, Copy)]
pub struct ArcHandle {
    from: usize,
    index: usize,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> ArcHandle {
        debug_assert!(cap >= 0);
        let rev_from = self.adj[to].len();
        let index = self.adj[from].len();
        self.adj[from].push(Arc {
            to,
            cap,
            rev: rev_from,
        });
        self.adj[to].push(Arc {
            to: from,
            cap: 0,
            rev: index,
        });
        ArcHandle { from, index }
    }

    /// Flow currently routed through a forward arc (pushed units sit on the
    /// reverse arc as residual capacity).
    pub fn flow_on(&self, h: ArcHandle) -> i64 {
        let arc = &self.adj[h.from][h.index];
        self.adj[arc.to][arc.rev].cap
    }

    pub fn raise_capacity(&mut self, h: ArcHandle, delta: i64) {
        debug_assert!(delta >= 0);
        self.adj[h.from][h.index].cap += delta;
    }

    fn bfs_levels(&self, source: usize, sink: usize, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[source] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for arc in &self.adj[u] {
                if arc.cap > 0 && level[arc.to] == -1 {
                    level[arc.to] = level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        level[sink] != -1
    }

    fn dfs_push(
        &mut self,
        u: usize,
        sink: usize,
        pushed: i64,
        level: &[i32],
        iter: &mut [usize],
    ) -> i64 {
        if u == sink {
            return pushed;
        }
        while iter[u] < self.adj[u].len() {
            let i = iter[u];
            let (to, cap) = {
                let arc = &self.adj[u][i];
                (arc.to, arc.cap)
            };
            if cap > 0 && level[to] == level[u] + 1 {
                let got = self.dfs_push(to, sink, pushed.min(cap), level, iter);
                if got > 0 {
                    let rev = self.adj[u][i].rev;
                    self.adj[u][i].cap -= got;
                    self.adj[to][rev].cap += got;
                    return got;
                }
            }
            iter[u] += 1;
        }
        0
    }

    /// Runs Dinic to completion; returns the flow added by this call.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        let mut level = vec![-1; n];
        while self.bfs_levels(source, sink, &mut level) {
            let mut iter = vec![0; n];
            loop {
                let pushed = self.dfs_push(source, sink, i64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    /// Searches for a single augmenting path and pushes its bottleneck.
    /// Returns the amount pushed (0 if the flow is already maximum).
    pub fn augment_once(&mut self, source: usize, sink: usize) -> i64 {
        let n = self.adj.len();
        let mut level = vec![-1; n];
        if !self.bfs_levels(source, sink, &mut level) {
            return 0;
        }
        let mut iter = vec![0; n];
        self.dfs_push(source, sink, i64::MAX, &level, &mut iter)
    }

    /// Nodes reachable from `source` along arcs with positive residual
    /// capacity. At a maximum flow this is the source side of a minimum cut.
    pub fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        seen[source] = true;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for arc in &self.adj[u] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}
