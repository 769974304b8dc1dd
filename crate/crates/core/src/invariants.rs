//! Exact solvers for α, ω, χ, θ and perfection, plus the greedy clique cover.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{low_mask, Bits, Graph, VertexSet};
use crate::matching::{edge_cover_number, maximum_matching};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("graph has {n} vertices, above the budget of {limit} for this operation")]
    Budget { n: usize, limit: usize },
}

// ---------------------------------------------------------------------------
// maximum clique / stable set

/// Greedy colouring of `cand` (in index order) inside the graph `rows`;
/// returns the number of colour classes, an upper bound on ω of `cand`.
#[inline]
fn colour_bound(rows: &[u64], mut cand: u64) -> usize {
    let mut k = 0;
    while cand != 0 {
        k += 1;
        let mut avail = cand;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1u64 << v);
            avail &= !rows[v];
            cand &= !(1u64 << v);
        }
    }
    k
}

struct CliqueSearch<'a> {
    rows: &'a [u64],
    best: usize,
    best_set: u64,
}

impl CliqueSearch<'_> {
    fn run(&mut self, cur: u64, size: usize, cand: u64) {
        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.best_set = cur;
            }
            return;
        }
        if size + colour_bound(self.rows, cand) <= self.best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        self.run(cur | bit, size + 1, cand & self.rows[v]);
        if size + (cand & !bit).count_ones() as usize > self.best {
            self.run(cur, size, cand & !bit);
        }
    }
}

/// Maximum clique of the subgraph induced by `cand`. The witness is the
/// lexicographically least maximum clique (lowest vertex included first).
pub(crate) fn max_clique_in(rows: &[u64], cand: u64) -> (usize, u64) {
    let mut s = CliqueSearch {
        rows,
        best: 0,
        best_set: 0,
    };
    s.run(0, 0, cand);
    (s.best, s.best_set)
}

/// Complemented rows restricted to the low `n` bits.
pub(crate) fn complement_rows(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let full = low_mask(n);
    (0..n).map(|v| !g.neighbors(v) & full & !(1u64 << v)).collect()
}

/// α of the subgraph induced by `cand`.
pub(crate) fn alpha_in(g: &Graph, cand: u64) -> usize {
    max_clique_in(&complement_rows(g), cand).0
}

pub fn stable_set_number(g: &Graph) -> (usize, VertexSet) {
    let (k, s) = max_clique_in(&complement_rows(g), low_mask(g.n()));
    (k, VertexSet(s))
}

pub fn clique_number(g: &Graph) -> (usize, VertexSet) {
    let (k, s) = max_clique_in(g.rows(), low_mask(g.n()));
    (k, VertexSet(s))
}

pub fn is_triangle_free(g: &Graph) -> bool {
    for u in 0..g.n() {
        let nu = g.neighbors(u);
        for v in Bits(nu & !low_mask(u + 1)) {
            if nu & g.neighbors(v) != 0 {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// chromatic number (DSATUR branch and bound)

struct Dsatur<'a> {
    rows: &'a [u64],
    n: usize,
    colour: Vec<u8>,
    nbr_colours: Vec<u64>,
    best: usize,
    best_colour: Vec<u8>,
    lower: usize,
}

const UNCOLOURED: u8 = u8::MAX;

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(u32, u32, usize)> = None;
        for v in 0..self.n {
            if self.colour[v] != UNCOLOURED {
                continue;
            }
            let sat = self.nbr_colours[v].count_ones();
            let mut unc = 0u32;
            for u in Bits(self.rows[v]) {
                if self.colour[u] == UNCOLOURED {
                    unc += 1;
                }
            }
            match best {
                Some((s, d, _)) if (sat, unc) <= (s, d) => {}
                _ => best = Some((sat, unc, v)),
            }
        }
        best.map(|b| b.2)
    }

    fn assign(&mut self, v: usize, c: u8) {
        self.colour[v] = c;
        for u in Bits(self.rows[v]) {
            self.nbr_colours[u] |= 1u64 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        self.colour[v] = UNCOLOURED;
        for u in Bits(self.rows[v]) {
            let mut m = 0u64;
            for w in Bits(self.rows[u]) {
                if self.colour[w] != UNCOLOURED {
                    m |= 1u64 << self.colour[w];
                }
            }
            self.nbr_colours[u] = m;
        }
    }

    fn run(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else {
            if used < self.best {
                self.best = used;
                self.best_colour = self.colour.clone();
            }
            return self.best == self.lower;
        };
        let forbidden = self.nbr_colours[v];
        for c in 0..used {
            if forbidden >> c & 1 == 0 {
                self.assign(v, c as u8);
                let done = self.run(used);
                self.unassign(v);
                if done {
                    return true;
                }
            }
        }
        if used + 1 < self.best {
            self.assign(v, used as u8);
            let done = self.run(used + 1);
            self.unassign(v);
            if done {
                return true;
            }
        }
        false
    }
}

fn greedy_dsatur(rows: &[u64], n: usize) -> Vec<u8> {
    let mut colour = vec![UNCOLOURED; n];
    let mut nbr = vec![0u64; n];
    for _ in 0..n {
        let mut pick = None;
        let mut key = (0u32, 0u32);
        for v in 0..n {
            if colour[v] != UNCOLOURED {
                continue;
            }
            let k = (nbr[v].count_ones(), rows[v].count_ones());
            if pick.is_none() || k > key {
                key = k;
                pick = Some(v);
            }
        }
        let v = pick.unwrap();
        let c = (!nbr[v]).trailing_zeros() as u8;
        colour[v] = c;
        for u in Bits(rows[v]) {
            nbr[u] |= 1u64 << c;
        }
    }
    colour
}

/// Exact chromatic number of the graph on `rows`, with a colouring.
pub(crate) fn chromatic_rows(rows: &[u64], n: usize) -> (usize, Vec<usize>) {
    if n == 0 {
        return (0, Vec::new());
    }
    let greedy = greedy_dsatur(rows, n);
    let ub = *greedy.iter().max().unwrap() as usize + 1;
    let (lb, clique) = max_clique_in(rows, low_mask(n));
    if lb == ub {
        return (ub, greedy.into_iter().map(usize::from).collect());
    }
    let mut s = Dsatur {
        rows,
        n,
        colour: vec![UNCOLOURED; n],
        nbr_colours: vec![0; n],
        best: ub,
        best_colour: greedy,
        lower: lb,
    };
    // a maximum clique gets distinct colours up front
    for (i, v) in Bits(clique).enumerate() {
        s.assign(v, i as u8);
    }
    s.run(lb);
    (s.best, s.best_colour.into_iter().map(usize::from).collect())
}

pub fn chromatic_number(g: &Graph) -> (usize, Vec<usize>) {
    chromatic_rows(g.rows(), g.n())
}

/// Exact clique-cover number with a partition into cliques.
pub fn clique_cover_number(g: &Graph) -> (usize, Vec<VertexSet>) {
    let n = g.n();
    if is_triangle_free(g) {
        let m = maximum_matching(g);
        let mut parts: Vec<VertexSet> = m.edges.iter().map(|&(u, v)| VertexSet::from_vertices([u, v])).collect();
        parts.extend(m.exposed.iter().map(VertexSet::singleton));
        parts.sort_by_key(|s| s.first());
        return (n - m.size, parts);
    }
    let rows = complement_rows(g);
    let (k, colour) = chromatic_rows(&rows, n);
    (k, classes(&colour, k))
}

fn classes(colour: &[usize], k: usize) -> Vec<VertexSet> {
    let mut parts = vec![VertexSet::EMPTY; k];
    for (v, &c) in colour.iter().enumerate() {
        parts[c].insert(v);
    }
    parts.sort_by_key(|s| s.first());
    parts
}

pub(crate) fn clique_cover_number_value(g: &Graph) -> usize {
    if is_triangle_free(g) {
        return g.n() - maximum_matching(g).size;
    }
    chromatic_rows(&complement_rows(g), g.n()).0
}

// ---------------------------------------------------------------------------
// perfection

pub const PERFECT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "cycle", rename_all = "snake_case")]
pub enum ImperfectionWitness {
    /// Induced odd cycle of length ≥ 5, in cyclic order.
    OddHole(Vec<usize>),
    /// Induced complement of an odd cycle, listed in the cyclic order of
    /// the cycle in the complement.
    OddAntihole(Vec<usize>),
}

impl ImperfectionWitness {
    pub fn vertices(&self) -> VertexSet {
        match self {
            Self::OddHole(c) | Self::OddAntihole(c) => c.iter().copied().collect(),
        }
    }
}

/// Finds an induced odd cycle of length ≥ 5 in the graph on `rows`.
/// The cycle's least vertex comes first.
pub(crate) fn find_odd_hole(rows: &[u64], n: usize) -> Option<Vec<usize>> {
    fn extend(rows: &[u64], path: &mut Vec<usize>, allowed: u64, banned: u64) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        let k = path.len();
        for w in Bits(rows[last] & allowed & !banned) {
            let closes = rows[w] >> start & 1 == 1;
            if closes {
                // w touches the start: only acceptable as the closing vertex
                if k >= 4 && (k + 1) % 2 == 1 {
                    path.push(w);
                    return true;
                }
                continue;
            }
            // every interior vertex except `last` becomes banned for later
            // steps through the neighbourhood of w
            let new_banned = banned | rows[last] | (1u64 << w);
            path.push(w);
            if extend(rows, path, allowed, new_banned) {
                return true;
            }
            path.pop();
        }
        false
    }
    for s in 0..n {
        let allowed = !low_mask(s + 1) & low_mask(n);
        for v1 in Bits(rows[s] & allowed) {
            let mut path = vec![s, v1];
            // vertices adjacent to s other than v1 may only close the cycle,
            // handled inside `extend` through the `closes` test
            let banned = 1u64 << v1 | 1u64 << s;
            if extend(rows, &mut path, allowed, banned) {
                return Some(path);
            }
        }
    }
    None
}

pub fn is_perfect(g: &Graph) -> Result<(bool, Option<ImperfectionWitness>), InvariantError> {
    let n = g.n();
    if n > PERFECT_LIMIT {
        return Err(InvariantError::Budget {
            n,
            limit: PERFECT_LIMIT,
        });
    }
    if let Some(c) = find_odd_hole(g.rows(), n) {
        return Ok((false, Some(ImperfectionWitness::OddHole(c))));
    }
    let co = complement_rows(g);
    if let Some(c) = find_odd_hole(&co, n) {
        return Ok((false, Some(ImperfectionWitness::OddAntihole(c))));
    }
    Ok((true, None))
}

// ---------------------------------------------------------------------------
// greedy clique cover

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyCoverDecomposition {
    pub big_cliques: Vec<VertexSet>,
    /// |a| = Σ(|Q|−2) over the big cliques; the set holds every big-clique
    /// vertex beyond the two lowest of each clique.
    pub a: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
    pub edges: Vec<(usize, usize)>,
    /// α(Y ∪ Z).
    pub alpha_b: usize,
    /// (n − |A| − α(B)) / 2, rounded down.
    pub gap_bound: usize,
}

pub fn greedy_clique_cover(g: &Graph) -> GreedyCoverDecomposition {
    let n = g.n();
    let mut left = low_mask(n);
    let mut big = Vec::new();
    let mut a = 0u64;
    loop {
        let (k, q) = max_clique_in(g.rows(), left);
        if k < 3 {
            break;
        }
        big.push(VertexSet(q));
        let mut rest = q;
        rest &= rest - 1;
        rest &= rest - 1;
        a |= rest;
        left &= !q;
    }
    let b = left;
    let mut y = 0u64;
    let mut edges = Vec::new();
    loop {
        let mut found = None;
        for u in Bits(left) {
            let nb = g.neighbors(u) & left;
            if nb != 0 {
                found = Some((u, nb.trailing_zeros() as usize));
                break;
            }
        }
        let Some((u, v)) = found else { break };
        edges.push((u, v));
        y |= 1u64 << u | 1u64 << v;
        left &= !(1u64 << u | 1u64 << v);
    }
    let alpha_b = alpha_in(g, b);
    let gap_bound = (n - a.count_ones() as usize - alpha_b) / 2;
    GreedyCoverDecomposition {
        big_cliques: big,
        a: VertexSet(a),
        y: VertexSet(y),
        z: VertexSet(left),
        edges,
        alpha_b,
        gap_bound,
    }
}

// ---------------------------------------------------------------------------
// report

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub stable_set: VertexSet,
    pub clique: VertexSet,
    pub colouring: Vec<usize>,
    pub clique_cover: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: usize,
    pub alpha: usize,
    pub omega: usize,
    pub chi: usize,
    pub theta: usize,
    pub nu: usize,
    /// `None` when the graph has an isolated vertex.
    pub zeta: Option<usize>,
    pub gap: usize,
    pub chromatic_gap: usize,
    pub witnesses: Witnesses,
}

pub fn invariant_report(g: &Graph) -> InvariantReport {
    let (alpha, stable) = stable_set_number(g);
    let (omega, clique) = clique_number(g);
    let (chi, colouring) = chromatic_number(g);
    let (theta, cover) = clique_cover_number(g);
    let nu = maximum_matching(g).size;
    InvariantReport {
        n: g.n(),
        alpha,
        omega,
        chi,
        theta,
        nu,
        zeta: edge_cover_number(g),
        gap: theta - alpha,
        chromatic_gap: chi - omega,
        witnesses: Witnesses {
            stable_set: stable,
            clique,
            colouring,
            clique_cover: cover,
        },
    }
}

// ---------------------------------------------------------------------------
// witness validators (independent of the solvers above)

pub fn check_stable_set(g: &Graph, s: VertexSet) -> bool {
    s.bits() & !low_mask(g.n()) == 0 && g.is_stable(s)
}

pub fn check_clique(g: &Graph, s: VertexSet) -> bool {
    s.bits() & !low_mask(g.n()) == 0 && g.is_clique(s)
}

/// Proper colouring using exactly colours `0..k`.
pub fn check_colouring(g: &Graph, colour: &[usize], k: usize) -> bool {
    if colour.len() != g.n() || colour.iter().any(|&c| c >= k) {
        return false;
    }
    let mut seen = vec![false; k];
    for &c in colour {
        seen[c] = true;
    }
    if seen.iter().any(|s| !s) {
        return false;
    }
    g.edges().iter().all(|&(u, v)| colour[u] != colour[v])
}

/// Partition of V into cliques.
pub fn check_clique_cover(g: &Graph, parts: &[VertexSet]) -> bool {
    let mut seen = 0u64;
    for &p in parts {
        if p.is_empty() || p.bits() & seen != 0 || !g.is_clique(p) {
            return false;
        }
        seen |= p.bits();
    }
    seen == low_mask(g.n())
}

pub fn check_report(g: &Graph, r: &InvariantReport) -> bool {
    let w = &r.witnesses;
    check_stable_set(g, w.stable_set)
        && w.stable_set.len() == r.alpha
        && check_clique(g, w.clique)
        && w.clique.len() == r.omega
        && check_colouring(g, &w.colouring, r.chi)
        && check_clique_cover(g, &w.clique_cover)
        && w.clique_cover.len() == r.theta
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(k: usize) -> Graph {
        let e: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::from_edges(k, &e).unwrap()
    }

    fn brute_alpha(g: &Graph) -> usize {
        (0u64..1 << g.n())
            .filter(|&m| g.is_stable(VertexSet(m)))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn brute_chi(g: &Graph) -> usize {
        let n = g.n();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            let mut col = vec![0usize; n];
            loop {
                if g.edges().iter().all(|&(u, v)| col[u] != col[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n {
                    col[i] += 1;
                    if col[i] < k {
                        break;
                    }
                    col[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        n
    }

    #[test]
    fn cycles() {
        let c5 = cycle(5);
        assert_eq!(stable_set_number(&c5), (2, VertexSet::from_vertices([0, 2])));
        assert_eq!(chromatic_number(&c5).0, 3);
        assert_eq!(clique_cover_number(&c5).0, 3);
        let (p, w) = is_perfect(&c5).unwrap();
        assert!(!p);
        assert_eq!(w, Some(ImperfectionWitness::OddHole(vec![0, 1, 2, 3, 4])));
        assert!(is_perfect(&cycle(6)).unwrap().0);
        let (p, w) = is_perfect(&cycle(7).complement()).unwrap();
        assert!(!p);
        assert!(matches!(w, Some(ImperfectionWitness::OddAntihole(ref c)) if c.len() == 7));
    }

    #[test]
    fn cliques_and_empties() {
        let k7 = Graph::complete(7).unwrap();
        assert_eq!(clique_number(&k7).0, 7);
        assert_eq!(clique_cover_number(&k7).0, 1);
        let e = Graph::empty(6).unwrap();
        assert_eq!(stable_set_number(&e).0, 6);
        assert_eq!(chromatic_number(&e).0, 1);
        assert_eq!(chromatic_number(&Graph::empty(0).unwrap()).0, 0);
        assert!(!is_triangle_free(&Graph::complete(3).unwrap()));
        assert!(is_perfect(&Graph::empty(25).unwrap()).is_err());
    }

    #[test]
    fn greedy_cover_traces() {
        let two_c5 = cycle(5).disjoint_union(&cycle(5)).unwrap();
        let d = greedy_clique_cover(&two_c5);
        assert!(d.big_cliques.is_empty());
        assert_eq!(d.y.len(), 8);
        assert_eq!(d.z.len(), 2);
        let k6 = Graph::complete(6).unwrap();
        let d = greedy_clique_cover(&k6);
        assert_eq!(d.big_cliques.len(), 1);
        assert_eq!(d.a.len(), 4);
        let e = Graph::empty(4).unwrap();
        assert_eq!(greedy_clique_cover(&e).z, VertexSet::full(4));
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(600))]
        #[test]
        fn solvers_match_brute_force(g in arb_graph(9)) {
            let r = invariant_report(&g);
            prop_assert!(check_report(&g, &r));
            prop_assert_eq!(r.alpha, brute_alpha(&g));
            prop_assert_eq!(r.chi, brute_chi(&g));
            prop_assert_eq!(r.theta, brute_chi(&g.complement()));
            prop_assert_eq!(r.omega, brute_alpha(&g.complement()));
        }

        #[test]
        fn duality(g in arb_graph(12)) {
            let co = g.complement();
            prop_assert_eq!(stable_set_number(&g).0, clique_number(&co).0);
            prop_assert_eq!(chromatic_number(&g).0, clique_cover_number(&co).0);
            // the generic engine agrees with the triangle-free fast path
            let rows = complement_rows(&g);
            prop_assert_eq!(chromatic_rows(&rows, g.n()).0, clique_cover_number(&g).0);
        }

        #[test]
        fn witness_is_lexicographically_least(g in arb_graph(8)) {
            let (k, w) = stable_set_number(&g);
            let mut best: Option<Vec<usize>> = None;
            for m in 0u64..1 << g.n() {
                let s = VertexSet(m);
                if s.len() == k && g.is_stable(s) {
                    let v = s.to_vec();
                    if best.as_ref().is_none_or(|b| v < *b) {
                        best = Some(v);
                    }
                }
            }
            prop_assert_eq!(w.to_vec(), best.unwrap_or_default());
        }

        #[test]
        fn greedy_bound(g in arb_graph(12)) {
            let d = greedy_clique_cover(&g);
            let r = invariant_report(&g);
            prop_assert!(2 * r.gap + d.a.len() + d.alpha_b <= g.n());
            let all = d.a.union(d.y).union(d.z);
            prop_assert_eq!(all.len() + 2 * d.big_cliques.len(), g.n());
            prop_assert!(g.is_stable(d.z));
        }
    }
}
