//! Dinic's maximum flow over an integer capacity type.
//!
//! Rational capacities are brought to a common denominator by the caller, so
//! the flow itself only ever sees non-negative integers. `i128` is used when
//! the total capacity fits, `BigInt` otherwise.

use std::collections::VecDeque;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

pub(crate) trait Capacity:
    Clone + Ord + Zero + for<'a> Add<&'a Self, Output = Self> + for<'a> Sub<&'a Self, Output = Self>
{
}

impl Capacity for i128 {}
impl Capacity for BigInt {}

pub(crate) struct FlowGraph<C> {
    adjacency: Vec<Vec<usize>>,
    head: Vec<usize>,
    residual: Vec<C>,
    level: Vec<u32>,
    cursor: Vec<usize>,
}

impl<C: Capacity> FlowGraph<C> {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowGraph {
            adjacency: vec![Vec::new(); nodes],
            head: Vec::new(),
            residual: Vec::new(),
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    /// Adds `from -> to`; the reverse residual arc is `id ^ 1`.
    pub(crate) fn add_edge(&mut self, from: usize, to: usize, capacity: C) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.residual.push(capacity);
        self.adjacency[from].push(id);
        self.head.push(from);
        self.residual.push(C::zero());
        self.adjacency[to].push(id + 1);
        id
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        const UNSEEN: u32 = u32::MAX;
        self.level.fill(UNSEEN);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adjacency[u] {
                let v = self.head[e];
                if self.level[v] == UNSEEN && !self.residual[e].is_zero() {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[sink] != UNSEEN
    }

    /// Iterative blocking-flow search along the level graph.
    fn augment(&mut self, source: usize, sink: usize) -> Option<C> {
        let mut path: Vec<usize> = Vec::new();
        let mut u = source;
        loop {
            if u == sink {
                let bottleneck = path
                    .iter()
                    .map(|&e| &self.residual[e])
                    .min()
                    .cloned()
                    .expect("non-empty path");
                for &e in &path {
                    self.residual[e] = self.residual[e].clone() - &bottleneck;
                    self.residual[e ^ 1] = self.residual[e ^ 1].clone() + &bottleneck;
                }
                return Some(bottleneck);
            }
            let mut advanced = false;
            while self.cursor[u] < self.adjacency[u].len() {
                let e = self.adjacency[u][self.cursor[u]];
                let v = self.head[e];
                if !self.residual[e].is_zero() && self.level[v] == self.level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                self.cursor[u] += 1;
            }
            if !advanced {
                // Dead end: retreat and skip the arc that led here.
                let e = path.pop()?;
                u = self.head[e ^ 1];
                self.cursor[u] += 1;
            }
        }
    }

    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> C {
        let mut total = C::zero();
        if source == sink {
            return total;
        }
        while self.bfs(source, sink) {
            self.cursor.fill(0);
            while let Some(f) = self.augment(source, sink) {
                total = total + &f;
            }
        }
        total
    }

    /// Nodes reachable from `source` through arcs with residual capacity.
    pub(crate) fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adjacency.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &e in &self.adjacency[u] {
                let v = self.head[e];
                if !seen[v] && !self.residual[e].is_zero() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}
