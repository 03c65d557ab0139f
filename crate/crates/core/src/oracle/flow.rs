//! Integral network flow: Dinic max-flow and a primal-dual min-cost flow
//! that alternates Dijkstra potential updates with blocking flows on the
//! zero-reduced-cost subgraph. Arc costs must be nonnegative.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

/// Directed network with paired residual arcs (arc `e` and `e ^ 1`).
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    initial_cap: Vec<i64>,
}

const UNREACHED: i64 = i64::MAX;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
            initial_cap: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    /// Adds an arc and returns its id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        debug_assert!(cost >= 0 && cap >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.initial_cap.push(cap);
        self.initial_cap.push(0);
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently routed through arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.initial_cap[id] - self.arcs[id].cap
    }

    /// Total cost of the current flow.
    pub fn cost(&self) -> i64 {
        (0..self.arcs.len())
            .step_by(2)
            .map(|id| self.flow(id) * self.arcs[id].cost)
            .sum()
    }

    /// Maximum flow from `s` to `t`, ignoring costs.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        self.blocking_flows(s, t, i64::MAX, None)
    }

    /// Minimum-cost flow of value at most `limit`; among maximum flows
    /// (when `limit` is not binding) the cheapest. Returns the flow value.
    pub fn min_cost_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let nodes = self.nodes();
        let mut potential = vec![0i64; nodes];
        let mut flow = 0;
        while flow < limit {
            let dist = self.dijkstra(s, &potential);
            if dist[t] == UNREACHED {
                break;
            }
            for (p, d) in potential.iter_mut().zip(&dist) {
                if *d != UNREACHED {
                    *p += d;
                }
            }
            let pushed = self.blocking_flows(s, t, limit - flow, Some(&potential));
            if pushed == 0 {
                break;
            }
            flow += pushed;
        }
        flow
    }

    fn dijkstra(&self, s: usize, potential: &[i64]) -> Vec<i64> {
        let mut dist = vec![UNREACHED; self.nodes()];
        let mut heap = BinaryHeap::new();
        dist[s] = 0;
        heap.push(Reverse((0i64, s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &self.adj[u] {
                let arc = &self.arcs[e];
                if arc.cap == 0 {
                    continue;
                }
                let nd = d + arc.cost + potential[u] - potential[arc.to];
                if nd < dist[arc.to] {
                    dist[arc.to] = nd;
                    heap.push(Reverse((nd, arc.to)));
                }
            }
        }
        dist
    }

    #[inline]
    fn admissible(&self, u: usize, e: usize, potential: Option<&[i64]>) -> bool {
        let arc = &self.arcs[e];
        arc.cap > 0 && potential.is_none_or(|p| arc.cost + p[u] - p[arc.to] == 0)
    }

    /// Dinic phases; with potentials, restricted to zero-reduced-cost arcs.
    fn blocking_flows(&mut self, s: usize, t: usize, limit: i64, potential: Option<&[i64]>) -> i64 {
        let nodes = self.nodes();
        let mut total = 0;
        loop {
            let mut level = vec![usize::MAX; nodes];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let to = self.arcs[e].to;
                    if level[to] == usize::MAX && self.admissible(u, e, potential) {
                        level[to] = level[u] + 1;
                        queue.push_back(to);
                    }
                }
            }
            if level[t] == usize::MAX || total >= limit {
                return total;
            }
            let mut next = vec![0usize; nodes];
            loop {
                let pushed = self.augment(s, t, limit - total, &level, &mut next, potential);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    return total;
                }
            }
        }
    }

    fn augment(
        &mut self,
        u: usize,
        t: usize,
        want: i64,
        level: &[usize],
        next: &mut [usize],
        potential: Option<&[i64]>,
    ) -> i64 {
        if u == t {
            return want;
        }
        while next[u] < self.adj[u].len() {
            let e = self.adj[u][next[u]];
            let (to, cap) = (self.arcs[e].to, self.arcs[e].cap);
            if level[to] == level[u] + 1 && self.admissible(u, e, potential) {
                let pushed = self.augment(to, t, want.min(cap), level, next, potential);
                if pushed > 0 {
                    self.arcs[e].cap -= pushed;
                    self.arcs[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }
}
