//! Integer maximum flow (Dinic's algorithm).
//!
//! Adjacency lists keep insertion order, so for a fixed construction order
//! the resulting flow is deterministic.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<u64>,
    capacity: Vec<u64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            residual: Vec::new(),
            capacity: Vec::new(),
        }
    }

    /// Adds a directed edge and returns its id.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.adj[from].push(id);
        self.to.push(to);
        self.residual.push(cap);
        self.capacity.push(cap);
        self.adj[to].push(id + 1);
        self.to.push(from);
        self.residual.push(0);
        self.capacity.push(0);
        id
    }

    /// Flow currently routed through edge `id`.
    pub fn flow(&self, id: usize) -> u64 {
        self.capacity[id] - self.residual[id]
    }

    pub fn head(&self, id: usize) -> usize {
        self.to[id]
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(x) = queue.pop_front() {
                for &e in &self.adj[x] {
                    let y = self.to[e];
                    if self.residual[e] > 0 && level[y] == usize::MAX {
                        level[y] = level[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            if level[sink] == usize::MAX {
                return total;
            }
            let mut next = vec![0usize; n];
            loop {
                let pushed = self.augment(source, sink, u64::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(
        &mut self,
        x: usize,
        sink: usize,
        limit: u64,
        level: &[usize],
        next: &mut [usize],
    ) -> u64 {
        if x == sink {
            return limit;
        }
        while next[x] < self.adj[x].len() {
            let e = self.adj[x][next[x]];
            let y = self.to[e];
            if self.residual[e] > 0 && level[y] == level[x] + 1 {
                let pushed = self.augment(y, sink, limit.min(self.residual[e]), level, next);
                if pushed > 0 {
                    self.residual[e] -= pushed;
                    self.residual[e ^ 1] += pushed;
                    return pushed;
                }
            }
            next[x] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        // CLRS figure 26.1, max flow 23
        let mut g = FlowNetwork::new(6);
        for &(a, b, c) in &[
            (0, 1, 16),
            (0, 2, 13),
            (2, 1, 4),
            (1, 3, 12),
            (3, 2, 9),
            (2, 4, 14),
            (4, 3, 7),
            (3, 5, 20),
            (4, 5, 4),
        ] {
            g.add_edge(a, b, c);
        }
        assert_eq!(g.max_flow(0, 5), 23);
    }

    #[test]
    fn bipartite_matching_size() {
        // 3 left, 3 right, only two right vertices reachable
        let mut g = FlowNetwork::new(8);
        for l in 1..=3 {
            g.add_edge(0, l, 1);
        }
        let e1 = g.add_edge(1, 4, 1);
        g.add_edge(2, 4, 1);
        g.add_edge(3, 5, 1);
        for r in 4..=6 {
            g.add_edge(r, 7, 1);
        }
        assert_eq!(g.max_flow(0, 7), 2);
        assert_eq!(g.flow(e1), 1);
    }
}
