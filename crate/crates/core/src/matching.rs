//! Maximum matching (Edmonds' blossom algorithm), edge covers, factor- and
//! bi-criticality, vertex connectivity and simplicial vertices.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{low_mask, Bits, Graph, VertexSet};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub size: usize,
    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub exposed: VertexSet,
}

struct Blossom<'a> {
    rows: &'a [u64],
    n: usize,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(rows: &'a [u64], n: usize) -> Self {
        Blossom {
            rows,
            n,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches an augmenting path from `root`; returns its exposed end.
    fn find_path(&mut self, root: usize, allowed: u64) -> usize {
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for i in 0..self.n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in Bits(self.rows[v] & allowed) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..self.n {
                        if allowed >> i & 1 == 1 && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }

    fn solve(&mut self, allowed: u64) -> usize {
        let mut size = 0;
        // greedy start
        for v in Bits(allowed) {
            if self.mate[v] == NONE {
                if let Some(u) = Bits(self.rows[v] & allowed).find(|&u| self.mate[u] == NONE) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                    size += 1;
                }
            }
        }
        for v in Bits(allowed) {
            if self.mate[v] != NONE {
                continue;
            }
            let mut u = self.find_path(v, allowed);
            if u == NONE {
                continue;
            }
            size += 1;
            while u != NONE {
                let pv = self.parent[u];
                let ppv = self.mate[pv];
                self.mate[u] = pv;
                self.mate[pv] = u;
                u = ppv;
            }
        }
        size
    }
}

/// Maximum matching of the subgraph induced by `allowed`.
pub(crate) fn matching_in(g: &Graph, allowed: u64) -> (usize, Vec<usize>) {
    let mut b = Blossom::new(g.rows(), g.n());
    let size = b.solve(allowed & low_mask(g.n()));
    (size, b.mate)
}

pub fn maximum_matching(g: &Graph) -> MatchingResult {
    let (size, mate) = matching_in(g, low_mask(g.n()));
    let mut edges = Vec::with_capacity(size);
    let mut exposed = VertexSet::EMPTY;
    for (v, &m) in mate.iter().enumerate() {
        if m == NONE {
            exposed.insert(v);
        } else if v < m {
            edges.push((v, m));
        }
    }
    MatchingResult { size, edges, exposed }
}

/// ζ(G) = n − ν(G), or `None` when some vertex is isolated.
pub fn edge_cover_number(g: &Graph) -> Option<usize> {
    if !g.isolated_vertices().is_empty() {
        return None;
    }
    Some(g.n() - maximum_matching(g).size)
}

fn has_perfect_matching_on(g: &Graph, s: u64) -> bool {
    let k = s.count_ones() as usize;
    k.is_multiple_of(2) && matching_in(g, s).0 * 2 == k
}

/// Factor-critical: every `G − v` has a perfect matching. K₁ counts; on
/// failure the witness is the least offending vertex (None for n = 0).
pub fn is_factor_critical(g: &Graph) -> (bool, Option<usize>) {
    let n = g.n();
    if n == 0 {
        return (false, None);
    }
    if n.is_multiple_of(2) {
        return (false, Some(0));
    }
    let full = low_mask(n);
    for v in 0..n {
        if !has_perfect_matching_on(g, full & !(1u64 << v)) {
            return (false, Some(v));
        }
    }
    (true, None)
}

/// Bicritical: every `G − u − v` has a perfect matching. Witness is the
/// lexicographically least failing pair.
pub fn is_bicritical(g: &Graph) -> (bool, Option<(usize, usize)>) {
    let n = g.n();
    let full = low_mask(n);
    for u in 0..n {
        for v in u + 1..n {
            if !has_perfect_matching_on(g, full & !(1u64 << u) & !(1u64 << v)) {
                return (false, Some((u, v)));
            }
        }
    }
    (true, None)
}

/// Maximum number of internally vertex-disjoint s–t paths (s, t non-adjacent).
fn local_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    // vertex v splits into v_in = 2v, v_out = 2v+1
    let n = g.n();
    let m = 2 * n;
    let mut cap = vec![vec![0i8; m]; m];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = if v == s || v == t { n as i8 } else { 1 };
        for u in Bits(g.neighbors(v)) {
            cap[2 * v + 1][2 * u] = 1;
        }
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; m];
        prev[src] = src;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            if x == dst {
                break;
            }
            for y in 0..m {
                if prev[y] == usize::MAX && cap[x][y] > 0 {
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        if prev[dst] == usize::MAX {
            return flow;
        }
        let mut y = dst;
        while y != src {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
}

/// Vertex connectivity κ(G); n − 1 for complete graphs, 0 for n ≤ 1.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let mut best = n - 1;
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                best = best.min(local_connectivity(g, u, v));
            }
        }
    }
    best
}

pub fn simplicial_vertices(g: &Graph) -> VertexSet {
    let mut out = VertexSet::EMPTY;
    for v in 0..g.n() {
        if g.is_clique(VertexSet(g.neighbors(v))) {
            out.insert(v);
        }
    }
    out
}
