//! Canonical labeling for graphs on at most 16 vertices: equitable
//! refinement, individualization, and automorphism pruning.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::graph::{Bits, Graph};

pub const CANON_LIMIT: usize = 16;

/// Isomorphism-invariant code: the packed upper triangle of the canonically
/// relabeled adjacency matrix, plus the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: u8,
    pub code: u128,
}

impl CanonicalForm {
    pub fn bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n];
        out.extend_from_slice(&self.code.to_be_bytes());
        out
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let mut rows = [0u64; CANON_LIMIT];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.code >> k & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Graph::from_rows_unchecked(n, &rows[..n])
    }
}

pub type Perm = [u8; CANON_LIMIT];

#[derive(Debug, Clone)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// `lab[i]` is the vertex placed at canonical position `i`.
    pub lab: Perm,
    /// Generators of the automorphism group (vertex → image).
    pub generators: Vec<Perm>,
    /// Least vertex of each vertex's orbit.
    pub orbits: Perm,
}

impl Labeling {
    pub fn trivial_group(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbits[u] == self.orbits[v]
    }
}

/// Code of the leaf `lab`: bit k is set for the k-th pair (i<j) in
/// column order when lab[i] ~ lab[j].
fn leaf_code(adj: &[u64], lab: &[u8], n: usize) -> u128 {
    let mut pos = [0u8; CANON_LIMIT];
    for (i, &v) in lab[..n].iter().enumerate() {
        pos[v as usize] = i as u8;
    }
    let mut code = 0u128;
    let mut k = 0;
    for j in 1..n {
        let row = adj[lab[j] as usize];
        for &u in &lab[..j] {
            if row >> u & 1 == 1 {
                code |= 1 << k;
            }
            k += 1;
        }
    }
    code
}

/// Splits cells until the ordered partition is equitable. Fragments are
/// ordered by neighbour count, so the result commutes with relabeling.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    'outer: loop {
        for wi in 0..cells.len() {
            let w = cells[wi];
            for xi in 0..cells.len() {
                let x = cells[xi];
                if x & (x - 1) == 0 {
                    continue;
                }
                let mut buckets = [0u64; CANON_LIMIT + 1];
                let mut lo = usize::MAX;
                let mut hi = 0;
                for v in Bits(x) {
                    let c = (adj[v] & w).count_ones() as usize;
                    buckets[c] |= 1 << v;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    continue;
                }
                let frags: Vec<u64> = buckets[lo..=hi].iter().copied().filter(|&b| b != 0).collect();
                cells.splice(xi..=xi, frags);
                continue 'outer;
            }
        }
        return;
    }
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<(u128, Perm, Vec<u8>)>,
    best: Option<(u128, Perm, Vec<u8>)>,
    generators: Vec<Perm>,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(p: &mut Perm, mut x: usize) -> usize {
    while p[x] as usize != x {
        p[x] = p[p[x] as usize];
        x = p[x] as usize;
    }
    x
}

fn orbits_of<'a>(n: usize, gens: impl Iterator<Item = &'a Perm>) -> Perm {
    let mut p = [0u8; CANON_LIMIT];
    for (i, x) in p.iter_mut().enumerate() {
        *x = i as u8;
    }
    for g in gens {
        for (v, &gv) in g.iter().enumerate().take(n) {
            let (a, b) = (find(&mut p, v), find(&mut p, gv as usize));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                p[hi] = lo as u8;
            }
        }
    }
    for v in 0..n {
        p[v] = find(&mut p, v) as u8;
    }
    p
}

impl Search<'_> {
    fn automorphism(&self, from: &Perm, to: &Perm) -> Perm {
        let mut g = [0u8; CANON_LIMIT];
        for i in 0..self.n {
            g[from[i] as usize] = to[i];
        }
        g
    }

    /// Returns the level to jump back to when an automorphism makes the rest
    /// of the current subtree redundant.
    fn node(&mut self, mut cells: Vec<u64>, path: &mut Vec<u8>) -> Option<usize> {
        refine(self.adj, &mut cells);
        if cells.len() == self.n {
            let mut lab = [0u8; CANON_LIMIT];
            for (i, c) in cells.iter().enumerate() {
                lab[i] = c.trailing_zeros() as u8;
            }
            let code = leaf_code(self.adj, &lab, self.n);
            let Some((fcode, flab, fpath)) = &self.first else {
                self.first = Some((code, lab, path.clone()));
                self.best = Some((code, lab, path.clone()));
                return None;
            };
            if code == *fcode {
                let g = self.automorphism(flab, &lab);
                let lvl = common_prefix(path, fpath);
                self.generators.push(g);
                return Some(lvl);
            }
            let (bcode, blab, bpath) = self.best.as_ref().unwrap();
            match code.cmp(bcode) {
                Ordering::Equal => {
                    let g = self.automorphism(blab, &lab);
                    let lvl = common_prefix(path, bpath);
                    self.generators.push(g);
                    return Some(lvl);
                }
                Ordering::Greater => self.best = Some((code, lab, path.clone())),
                Ordering::Less => {}
            }
            return None;
        }
        let d = path.len();
        let ti = cells.iter().position(|c| c & (c - 1) != 0).unwrap();
        let target = cells[ti];
        let mut explored = 0u64;
        let mut seen_gens = usize::MAX;
        let mut orbits = [0u8; CANON_LIMIT];
        for w in Bits(target) {
            if self.generators.len() != seen_gens {
                seen_gens = self.generators.len();
                let fixing = self
                    .generators
                    .iter()
                    .filter(|g| path.iter().all(|&p| g[p as usize] == p));
                orbits = orbits_of(self.n, fixing);
            }
            if Bits(explored).any(|e| orbits[e] == orbits[w]) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(1 << w);
            child.push(target & !(1 << w));
            child.extend_from_slice(&cells[ti + 1..]);
            path.push(w as u8);
            let r = self.node(child, path);
            path.pop();
            explored |= 1 << w;
            if let Some(lvl) = r {
                if lvl < d {
                    return Some(lvl);
                }
            }
        }
        None
    }
}

/// Canonical labeling of the graph with rows `adj` (n ≤ 16) relative to the
/// ordered initial colouring `cells` (masks partitioning 0..n).
pub fn label_colored(adj: &[u64], n: usize, cells: &[u64]) -> Labeling {
    assert!(n <= CANON_LIMIT, "canonical labeling supports n <= {CANON_LIMIT}");
    if n == 0 {
        return Labeling {
            form: CanonicalForm { n: 0, code: 0 },
            lab: [0; CANON_LIMIT],
            generators: Vec::new(),
            orbits: [0; CANON_LIMIT],
        };
    }
    let mut s = Search {
        adj,
        n,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    s.node(cells.iter().copied().filter(|&c| c != 0).collect(), &mut Vec::new());
    let (code, lab, _) = s.best.unwrap();
    let orbits = orbits_of(n, s.generators.iter());
    Labeling {
        form: CanonicalForm { n: n as u8, code },
        lab,
        generators: s.generators,
        orbits,
    }
}

pub fn label_rows(adj: &[u64], n: usize) -> Labeling {
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    label_colored(adj, n, &[all])
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    label_rows(g.rows(), g.n())
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::tests::arb_graph;
    use proptest::prelude::*;

    fn is_aut(g: &Graph, p: &[u8]) -> bool {
        (0..g.n()).all(|u| (0..g.n()).all(|v| g.has_edge(u, v) == g.has_edge(p[u] as usize, p[v] as usize)))
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_orbits(g: &Graph) -> Vec<usize> {
        let n = g.n();
        let mut orb: Vec<usize> = (0..n).collect();
        for p in all_perms(n) {
            let pp: Vec<u8> = p.iter().map(|&x| x as u8).collect();
            if is_aut(g, &pp) {
                for v in 0..n {
                    orb[v] = orb[v].min(p[v]).min(orb[p[v]]);
                }
            }
        }
        // close under the group: repeat until stable
        loop {
            let mut changed = false;
            for v in 0..n {
                let m = orb[orb[v]];
                if m < orb[v] {
                    orb[v] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        orb
    }

    #[test]
    fn symmetric_graphs() {
        let e = Graph::empty(10).unwrap();
        let l = canonical_labeling(&e);
        assert!((0..10).all(|v| l.orbits[v] == 0));
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let l = canonical_labeling(&petersen);
        assert!((0..10).all(|v| l.orbits[v] == 0));
        for g in &l.generators {
            assert!(is_aut(&petersen, g));
        }
        let f = canonical_form(&petersen.permute(&[3, 1, 4, 0, 5, 9, 2, 6, 8, 7]));
        assert_eq!(f, l.form);
        assert_eq!(f.to_graph().edge_count(), 15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn invariant_under_relabeling(g in arb_graph(14), seed in any::<u64>()) {
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let a = canonical_labeling(&g);
            let b = canonical_form(&g.permute(&perm));
            prop_assert_eq!(a.form, b);
            prop_assert!(are_isomorphic(&a.form.to_graph(), &g));
            for gen in &a.generators {
                prop_assert!(is_aut(&g, gen));
            }
        }

        #[test]
        fn orbits_match_brute_force(g in arb_graph(7)) {
            let l = canonical_labeling(&g);
            let o = brute_orbits(&g);
            for (v, &ov) in o.iter().enumerate().take(g.n()) {
                prop_assert_eq!(l.orbits[v] as usize, ov);
            }
        }
    }
}
