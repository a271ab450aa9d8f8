//! Integer min-cost flow by successive shortest paths, used for the
//! transportation form of EMD.

use std::collections::VecDeque;

use crate::scalar::Cost;

#[derive(Clone, Debug)]
struct Arc<C> {
    to: usize,
    cap: C,
    cost: C,
}

#[derive(Clone, Debug)]
pub(crate) struct MinCostFlow<C> {
    arcs: Vec<Arc<C>>,
    out: Vec<Vec<usize>>,
}

impl<C: Cost> MinCostFlow<C> {
    pub(crate) fn new(nodes: usize) -> Self {
        Self { arcs: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    /// Adds `from -> to` and its residual twin; returns the forward arc id.
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: C, cost: C) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc { to: from, cap: C::zero(), cost: C::zero() - cost });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Flow currently on forward arc `id`.
    pub(crate) fn flow(&self, id: usize) -> C {
        self.arcs[id ^ 1].cap
    }

    /// Pushes up to `limit` units from `s` to `t`; returns `(flow, cost)`.
    pub(crate) fn run(&mut self, s: usize, t: usize, limit: C) -> (C, C) {
        let n = self.out.len();
        let (mut flow, mut cost) = (C::zero(), C::zero());
        while flow < limit {
            // Bellman-Ford queue variant; residual arcs may be negative.
            let mut dist: Vec<Option<C>> = vec![None; n];
            let mut prev = vec![usize::MAX; n];
            let mut in_queue = vec![false; n];
            dist[s] = Some(C::zero());
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                in_queue[x] = false;
                let dx = dist[x].expect("queued nodes are reached");
                for &id in &self.out[x] {
                    let arc = &self.arcs[id];
                    if arc.cap <= C::zero() {
                        continue;
                    }
                    let nd = dx + arc.cost;
                    if dist[arc.to].is_none_or(|d| nd < d) {
                        dist[arc.to] = Some(nd);
                        prev[arc.to] = id;
                        if !in_queue[arc.to] {
                            in_queue[arc.to] = true;
                            queue.push_back(arc.to);
                        }
                    }
                }
            }
            let Some(path_cost) = dist[t] else { break };
            let mut push = limit - flow;
            let mut x = t;
            while x != s {
                let id = prev[x];
                push = push.min(self.arcs[id].cap);
                x = self.arcs[id ^ 1].to;
            }
            let mut x = t;
            while x != s {
                let id = prev[x];
                self.arcs[id].cap = self.arcs[id].cap - push;
                self.arcs[id ^ 1].cap = self.arcs[id ^ 1].cap + push;
                x = self.arcs[id ^ 1].to;
            }
            flow = flow + push;
            cost = cost + push * path_cost;
        }
        (flow, cost)
    }
}

/// Optimal integer transportation: each row supplies `supply`, each column
/// demands `demand`. Returns the cost and the positive cells `(i, j, units)`
/// in row-major order.
pub(crate) fn transport<C: Cost>(
    costs: &crate::matrix::Matrix<C>,
    supply: C,
    demand: C,
) -> (C, Vec<(usize, usize, C)>) {
    let (r, s) = (costs.rows(), costs.cols());
    let source = r + s;
    let sink = source + 1;
    let mut net = MinCostFlow::new(r + s + 2);
    for i in 0..r {
        net.add_arc(source, i, supply, C::zero());
    }
    for j in 0..s {
        net.add_arc(r + j, sink, demand, C::zero());
    }
    let mut cell_arcs = Vec::with_capacity(r * s);
    for i in 0..r {
        for j in 0..s {
            cell_arcs.push((i, j, net.add_arc(i, r + j, supply.min(demand), costs[(i, j)])));
        }
    }
    let total = supply * C::from(r).expect("row count fits the cost type");
    let (_, cost) = net.run(source, sink, total);
    let cells = cell_arcs
        .into_iter()
        .filter_map(|(i, j, id)| {
            let f = net.flow(id);
            (f > C::zero()).then_some((i, j, f))
        })
        .collect();
    (cost, cells)
}
