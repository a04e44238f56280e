//! Small integer max-flow (Edmonds-Karp) used for connectivity queries.

use std::collections::VecDeque;

pub(crate) struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        Self {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Adds arc `u -> v` with its residual twin at index `id ^ 1`.
    pub(crate) fn add_arc(&mut self, u: usize, v: usize, cap: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let nodes = self.head.len();
        let mut total = 0u64;
        let mut via = vec![usize::MAX; nodes];
        let mut queue = VecDeque::new();
        loop {
            via.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            queue.push_back(source);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &arc in &self.head[u] {
                    let v = self.to[arc];
                    if self.cap[arc] > 0 && v != source && via[v] == usize::MAX {
                        via[v] = arc;
                        if v == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                return total;
            }
            let mut bottleneck = u32::MAX;
            let mut v = sink;
            while v != source {
                let arc = via[v];
                bottleneck = bottleneck.min(self.cap[arc]);
                v = self.to[arc ^ 1];
            }
            let mut v = sink;
            while v != source {
                let arc = via[v];
                self.cap[arc] -= bottleneck;
                self.cap[arc ^ 1] += bottleneck;
                v = self.to[arc ^ 1];
            }
            total += u64::from(bottleneck);
        }
    }
}
