//! Isomorph-free generation by canonical augmentation (vertex addition),
//! with hereditary pruning, and censuses built on top of it.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{label_colored, label_rows, CanonicalForm, CANON_LIMIT};
use crate::graph::{low_mask, Bits, Graph};
use crate::graph6::encode_graph6;
use crate::invariants::{chromatic_rows, max_clique_in};

/// Default orders; the override raises the all-graphs limit by one.
pub const ALL_GRAPHS_LIMIT: usize = 11;
pub const ALL_GRAPHS_OVERRIDE: usize = 12;
pub const TRIANGLE_FREE_LIMIT: usize = 13;
pub const GAP_TABLE_LIMIT: usize = 10;
pub const GAP2_TABLE_LIMIT: usize = 12;
pub const WITNESS_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("n={n} exceeds the enumeration budget (limit {limit})")]
    Budget { n: usize, limit: usize },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

/// Hereditary restrictions applied while generating.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filter {
    pub triangle_free: bool,
    pub max_alpha: Option<usize>,
    pub max_omega: Option<usize>,
}

impl Filter {
    pub const NONE: Filter = Filter {
        triangle_free: false,
        max_alpha: None,
        max_omega: None,
    };
    pub const TRIANGLE_FREE: Filter = Filter {
        triangle_free: true,
        max_alpha: None,
        max_omega: None,
    };

    fn limit(&self, allow_override: bool) -> usize {
        // bounded α and ω keep every level tiny
        if self.max_alpha.is_some() && (self.triangle_free || self.max_omega.is_some()) {
            CANON_LIMIT
        } else if self.triangle_free {
            TRIANGLE_FREE_LIMIT
        } else if allow_override {
            ALL_GRAPHS_OVERRIDE
        } else {
            ALL_GRAPHS_LIMIT
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    pub filter: Filter,
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
    pub allow_override: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            filter: Filter::NONE,
            jobs: 0,
            allow_override: false,
        }
    }
}

/// Graph on at most 16 vertices kept as a plain row array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub n: usize,
    pub adj: [u64; CANON_LIMIT],
}

impl Node {
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_rows_unchecked(self.n, self.rows())
    }
}

/// Is there a stable set of size `k` inside `cand`?
fn has_clique(adj: &[u64], cand: u64, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < k {
        return false;
    }
    let v = cand.trailing_zeros() as usize;
    let rest = cand & !(1 << v);
    has_clique(adj, rest & adj[v], k - 1) || has_clique(adj, rest, k)
}

fn has_stable(adj: &[u64], cand: u64, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < k {
        return false;
    }
    let v = cand.trailing_zeros() as usize;
    let rest = cand & !(1 << v);
    has_stable(adj, rest & !adj[v], k - 1) || has_stable(adj, rest, k)
}

fn argmax(cands: u64, f: impl Fn(usize) -> u64) -> u64 {
    let mut best = None;
    let mut set = 0;
    for u in Bits(cands) {
        let x = f(u);
        match best {
            Some(b) if x < b => {}
            Some(b) if x == b => set |= 1 << u,
            _ => {
                best = Some(x);
                set = 1 << u;
            }
        }
    }
    set
}

/// Is the new vertex `v` in the orbit of the canonical deletion vertex?
fn is_canonical_extension(adj: &[u64; CANON_LIMIT], n: usize) -> bool {
    let v = n - 1;
    let all = low_mask(n);
    let mut deg = [0u64; CANON_LIMIT];
    for u in 0..n {
        deg[u] = adj[u].count_ones() as u64;
    }
    // v has maximum degree (checked by the caller)
    let m = argmax(all, |u| deg[u]);
    if m == 1 << v {
        return true;
    }
    let t = argmax(m, |u| Bits(adj[u]).map(|w| deg[w]).sum());
    if t >> v & 1 == 0 {
        return false;
    }
    if t == 1 << v {
        return true;
    }
    let t2 = argmax(t, |u| {
        let nb = adj[u];
        let inner: u64 = Bits(nb).map(|w| (adj[w] & nb).count_ones() as u64).sum();
        let second = Bits(nb).fold(0, |acc, w| acc | adj[w]) & !nb & !(1 << u);
        inner << 8 | second.count_ones() as u64
    });
    if t2 >> v & 1 == 0 {
        return false;
    }
    if t2 == 1 << v {
        return true;
    }
    let rest = all & !t2;
    let cells: Vec<u64> = if rest == 0 { vec![t2] } else { vec![rest, t2] };
    let lab = label_colored(&adj[..n], n, &cells);
    let c = lab.lab[n - t2.count_ones() as usize] as usize;
    lab.same_orbit(c, v)
}

/// Emits one child per isomorphism class whose canonical parent is `p`.
fn children(p: &Node, filter: &Filter, mut emit: impl FnMut(Node)) {
    let m = p.n;
    let n = m + 1;
    let deg_max = p.rows().iter().map(|r| r.count_ones()).max().unwrap_or(0);
    let top = p
        .rows()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.count_ones() == deg_max)
        .fold(0u64, |acc, (u, _)| acc | 1 << u);
    let trivial = m <= 1 || label_rows(p.rows(), m).trivial_group();
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    for s in 0..(1u64 << m) {
        let k = s.count_ones();
        if k < deg_max || (k == deg_max && s & top != 0) {
            continue;
        }
        if filter.triangle_free && Bits(s).any(|u| p.adj[u] & s != 0) {
            continue;
        }
        if let Some(a) = filter.max_alpha {
            if a == 0 || has_stable(&p.adj, low_mask(m) & !s, a) {
                continue;
            }
        }
        if let Some(w) = filter.max_omega {
            if w == 0 || has_clique(&p.adj, s, w) {
                continue;
            }
        }
        let mut c = p.adj;
        for u in Bits(s) {
            c[u] |= 1 << m;
        }
        c[m] = s;
        if !is_canonical_extension(&c, n) {
            continue;
        }
        if !trivial && !seen.insert(label_rows(&c[..n], n).form) {
            continue;
        }
        emit(Node { n, adj: c });
    }
}

fn dfs(node: &Node, n_max: usize, filter: &Filter, visit: &mut impl FnMut(&Node)) {
    visit(node);
    if node.n < n_max {
        children(node, filter, |c| dfs(&c, n_max, filter, visit));
    }
}

fn check_budget(n: usize, opts: &EnumOptions, limit: usize) -> Result<(), EnumError> {
    let limit = limit.min(opts.filter.limit(opts.allow_override));
    if n > limit {
        return Err(EnumError::Budget { n, limit });
    }
    Ok(())
}

/// Runs `visit` on every generated graph of order ≤ `n_max`, one
/// accumulator per top-level branch; accumulators are merged in branch
/// order, so the result does not depend on the number of workers.
pub fn fold_census<A: Send>(
    n_max: usize,
    opts: &EnumOptions,
    init: impl Fn() -> A + Sync,
    visit: impl Fn(&mut A, &Node) + Sync,
    merge: impl Fn(&mut A, A),
) -> Result<A, EnumError> {
    let split = n_max.saturating_sub(3).min(7);
    let filter = opts.filter;
    let root = Node {
        n: 0,
        adj: [0; CANON_LIMIT],
    };
    let mut acc = init();
    let mut frontier = Vec::new();
    dfs(&root, split, &filter, &mut |g| {
        if g.n == split {
            frontier.push(*g);
        } else {
            visit(&mut acc, g);
        }
    });
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| EnumError::Pool(e.to_string()))?;
    let parts: Vec<A> = pool.install(|| {
        frontier
            .par_iter()
            .map(|g| {
                let mut a = init();
                dfs(g, n_max, &filter, &mut |h| visit(&mut a, h));
                a
            })
            .collect()
    });
    for p in parts {
        merge(&mut acc, p);
    }
    Ok(acc)
}

/// All graphs of order `n` passing `opts.filter`, one per isomorphism class,
/// in a deterministic order.
pub fn enumerate_graphs(n: usize, opts: &EnumOptions) -> Result<Vec<Graph>, EnumError> {
    check_budget(n, opts, usize::MAX)?;
    let out = fold_census(
        n,
        opts,
        Vec::new,
        |acc: &mut Vec<Node>, g| {
            if g.n == n {
                acc.push(*g);
            }
        },
        |a, b| a.extend(b),
    )?;
    Ok(out.iter().map(Node::to_graph).collect())
}

pub fn enumerate_triangle_free(n: usize, jobs: usize) -> Result<Vec<Graph>, EnumError> {
    enumerate_graphs(
        n,
        &EnumOptions {
            filter: Filter::TRIANGLE_FREE,
            jobs,
            allow_override: false,
        },
    )
}

/// Class counts for orders 0..=n_max.
pub fn count_classes(n_max: usize, opts: &EnumOptions) -> Result<Vec<u64>, EnumError> {
    check_budget(n_max, opts, usize::MAX)?;
    fold_census(
        n_max,
        opts,
        || vec![0u64; n_max + 1],
        |acc, g| acc[g.n] += 1,
        |a, b| a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
    )
}

// ---------------------------------------------------------------------------
// censuses

/// (α, θ) of a small graph.
pub fn alpha_theta(rows: &[u64], n: usize) -> (usize, usize) {
    let full = low_mask(n);
    let mut comp = [0u64; CANON_LIMIT];
    for v in 0..n {
        comp[v] = !rows[v] & full & !(1 << v);
    }
    let alpha = max_clique_in(&comp[..n], full).0;
    let triangle_free = (0..n).all(|u| Bits(rows[u] & !low_mask(u + 1)).all(|w| rows[u] & rows[w] == 0));
    let theta = if triangle_free {
        let g = Graph::from_rows_unchecked(n, rows);
        n - crate::matching::matching_in(&g, full).0
    } else {
        chromatic_rows(&comp[..n], n).0
    };
    (alpha, theta)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub count: u64,
    /// gap value → number of classes.
    pub gap_histogram: BTreeMap<usize, u64>,
    pub max_gap: usize,
    /// graph6 of max-gap graphs in generation order, at most `WITNESS_CAP`.
    pub witnesses: Vec<String>,
    pub witness_count: u64,
    pub witnesses_truncated: bool,
}

#[derive(Default)]
struct RowAcc {
    count: u64,
    hist: BTreeMap<usize, u64>,
    max_gap: usize,
    witnesses: Vec<Node>,
    witness_count: u64,
}

impl RowAcc {
    fn add(&mut self, g: &Node, gap: usize) {
        self.count += 1;
        *self.hist.entry(gap).or_default() += 1;
        if gap > self.max_gap || self.witness_count == 0 {
            self.max_gap = gap;
            self.witnesses.clear();
            self.witness_count = 0;
        }
        if gap == self.max_gap {
            self.witness_count += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(*g);
            }
        }
    }

    fn merge(&mut self, o: RowAcc) {
        if o.count == 0 {
            return;
        }
        self.count += o.count;
        for (k, v) in o.hist {
            *self.hist.entry(k).or_default() += v;
        }
        if o.max_gap > self.max_gap || self.witness_count == 0 {
            self.max_gap = o.max_gap;
            self.witnesses = o.witnesses;
            self.witness_count = o.witness_count;
        } else if o.max_gap == self.max_gap {
            self.witness_count += o.witness_count;
            let room = WITNESS_CAP - self.witnesses.len();
            self.witnesses.extend(o.witnesses.into_iter().take(room));
        }
    }

    fn row(self, n: usize) -> CensusRow {
        CensusRow {
            n,
            count: self.count,
            gap_histogram: self.hist,
            max_gap: self.max_gap,
            witnesses: self.witnesses.iter().map(|g| encode_graph6(&g.to_graph())).collect(),
            witnesses_truncated: self.witness_count > WITNESS_CAP as u64,
            witness_count: self.witness_count,
        }
    }
}

fn gap_census(n_max: usize, opts: &EnumOptions) -> Result<Vec<CensusRow>, EnumError> {
    let rows = fold_census(
        n_max,
        opts,
        || (0..=n_max).map(|_| RowAcc::default()).collect::<Vec<_>>(),
        |acc, g| {
            let (a, t) = alpha_theta(g.rows(), g.n);
            acc[g.n].add(g, t - a);
        },
        |a, b| a.iter_mut().zip(b).for_each(|(x, y)| x.merge(y)),
    )?;
    Ok(rows.into_iter().enumerate().map(|(n, r)| r.row(n)).collect())
}

/// Maximum gap per order over all graphs, n = 0..=n_max.
pub fn brute_gap_table(n_max: usize, opts: &EnumOptions) -> Result<Vec<CensusRow>, EnumError> {
    let o = EnumOptions {
        filter: Filter::NONE,
        ..*opts
    };
    check_budget(
        n_max,
        &o,
        if opts.allow_override {
            ALL_GRAPHS_LIMIT
        } else {
            GAP_TABLE_LIMIT
        },
    )?;
    gap_census(n_max, &o)
}

/// Maximum gap per order over triangle-free graphs, n = 0..=n_max.
pub fn brute_gap2_table(n_max: usize, opts: &EnumOptions) -> Result<Vec<CensusRow>, EnumError> {
    let o = EnumOptions {
        filter: Filter::TRIANGLE_FREE,
        ..*opts
    };
    check_budget(
        n_max,
        &o,
        if opts.allow_override {
            TRIANGLE_FREE_LIMIT
        } else {
            GAP2_TABLE_LIMIT
        },
    )?;
    gap_census(n_max, &o)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaEntry {
    pub n: usize,
    pub theta: usize,
    /// Least α among graphs with this (n, θ).
    pub min_alpha: usize,
    pub witness: String,
}

/// min α over all graphs with given (n, θ), n ≤ n_max.
pub fn brute_beta_table(n_max: usize, opts: &EnumOptions) -> Result<Vec<BetaEntry>, EnumError> {
    let o = EnumOptions {
        filter: Filter::NONE,
        ..*opts
    };
    check_budget(n_max, &o, GAP_TABLE_LIMIT)?;
    let best = fold_census(
        n_max,
        &o,
        BTreeMap::<(usize, usize), (usize, Node)>::new,
        |acc, g| {
            let (a, t) = alpha_theta(g.rows(), g.n);
            let e = acc.entry((g.n, t)).or_insert((a, *g));
            if a < e.0 {
                *e = (a, *g);
            }
        },
        |a, b| {
            for (k, v) in b {
                let e = a.entry(k).or_insert(v);
                if v.0 < e.0 {
                    *e = v;
                }
            }
        },
    )?;
    Ok(best
        .into_iter()
        .map(|((n, theta), (min_alpha, g))| BetaEntry {
            n,
            theta,
            min_alpha,
            witness: encode_graph6(&g.to_graph()),
        })
        .collect())
}

/// Census rows as CSV: n, count, max_gap, then `gap:count` pairs.
pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut s = String::from("n,count,max_gap,histogram\n");
    for r in rows {
        let h: Vec<String> = r.gap_histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        s.push_str(&format!("{},{},{},{}\n", r.n, r.count, r.max_gap, h.join(" ")));
    }
    s
}
