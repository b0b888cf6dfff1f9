//! Exact maximum independent set by branch and bound on the complement
//! graph's maximum clique, with greedy colouring bounds over bitsets.

use std::time::{Duration, Instant};

/// Default wall-clock budget.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MisResult {
    /// A maximum independent set, proven optimal.
    Exact(Vec<usize>),
    /// Best independent set found before the budget ran out.
    TimedOut(Vec<usize>),
}

impl MisResult {
    pub fn certificate(&self) -> &[usize] {
        match self {
            MisResult::Exact(c) | MisResult::TimedOut(c) => c,
        }
    }

    pub fn size(&self) -> usize {
        self.certificate().len()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MisResult::Exact(_))
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

struct Search {
    /// Complement adjacency in the solver's vertex order.
    adj: Vec<Bits>,
    best: Vec<usize>,
    current: Vec<usize>,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
}

impl Search {
    /// Greedy sequential colouring of `p`; returns vertices in colour order
    /// with their colour numbers.
    fn colour(&self, p: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut uncoloured = p.clone();
        let mut k = 0;
        while !uncoloured.is_empty() {
            k += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                uncoloured.clear(v);
                q.clear(v);
                q.and_not_assign(&self.adj[v]);
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut p: Bits) {
        self.nodes += 1;
        if self.nodes % 1024 == 1 && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let (order, colours) = self.colour(&p);
        for idx in (0..order.len()).rev() {
            if self.current.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let next = p.and(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.clear(v);
            if self.timed_out {
                return;
            }
        }
    }
}

/// Largest independent set of the graph on `0..n` with the given edges.
pub fn max_independent_set(n: usize, edges: &[(usize, usize)], budget: Duration) -> MisResult {
    let mut graph = vec![Bits::empty(n); n];
    for &(i, j) in edges {
        if i != j {
            graph[i].set(j);
            graph[j].set(i);
        }
    }
    // fewest graph neighbours (most complement neighbours) first
    let mut order: Vec<usize> = (0..n).collect();
    let degree = |v: usize| graph[v].0.iter().map(|w| w.count_ones()).sum::<u32>();
    order.sort_by_key(|&v| (degree(v), v));
    let mut adj = vec![Bits::empty(n); n];
    for (a, &va) in order.iter().enumerate() {
        for (b, &vb) in order.iter().enumerate() {
            if a != b && graph[va].0[vb / 64] & (1 << (vb % 64)) == 0 {
                adj[a].set(b);
            }
        }
    }

    let mut search = Search {
        adj,
        best: Vec::new(),
        current: Vec::new(),
        deadline: Instant::now() + budget,
        nodes: 0,
        timed_out: false,
    };
    if n > 0 {
        search.expand(Bits::full(n));
    }
    let mut cert: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    cert.sort_unstable();
    assert!(
        is_independent(&graph_edges_lookup(&graph), &cert),
        "solver produced a dependent set"
    );
    if search.timed_out {
        MisResult::TimedOut(cert)
    } else {
        MisResult::Exact(cert)
    }
}

fn graph_edges_lookup(graph: &[Bits]) -> impl Fn(usize, usize) -> bool + '_ {
    move |i, j| graph[i].0[j / 64] & (1 << (j % 64)) != 0
}

fn is_independent(adjacent: &impl Fn(usize, usize) -> bool, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(k, &i)| set[k + 1..].iter().all(|&j| !adjacent(i, j)))
}
