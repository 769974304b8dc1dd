//! Covering gap, chromatic gap, subset profiles, gap-criticality, gap chains,
//! perfectness gap and clique-Helly analysis.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{low_mask, Bits, Graph, VertexSet};
use crate::invariants::{clique_cover_number_value, complement_rows, max_clique_in};

/// Default cap for the 2ⁿ subset tables.
pub const PROFILE_LIMIT: usize = 16;
/// Hard cap, reachable only through the explicit-limit entry points.
pub const PROFILE_HARD_LIMIT: usize = 22;
pub const HELLY_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("graph has {n} vertices, above the budget of {limit} for this operation")]
    Budget { n: usize, limit: usize },
}

fn check_budget(n: usize, limit: usize) -> Result<(), GapError> {
    if n > limit || n > PROFILE_HARD_LIMIT {
        return Err(GapError::Budget {
            n,
            limit: limit.min(PROFILE_HARD_LIMIT),
        });
    }
    Ok(())
}

pub fn gap(g: &Graph) -> usize {
    let alpha = max_clique_in(&complement_rows(g), low_mask(g.n())).0;
    clique_cover_number_value(g) - alpha
}

pub fn chromatic_gap(g: &Graph) -> usize {
    gap(&g.complement())
}

// ---------------------------------------------------------------------------
// subset profile

#[derive(Debug, Clone)]
pub struct SubsetGapProfile {
    pub host: Graph,
    pub alpha_of: Vec<u8>,
    pub theta_of: Vec<u8>,
}

impl SubsetGapProfile {
    pub fn alpha(&self, s: VertexSet) -> usize {
        self.alpha_of[s.bits() as usize] as usize
    }

    pub fn theta(&self, s: VertexSet) -> usize {
        self.theta_of[s.bits() as usize] as usize
    }

    pub fn gap_of(&self, s: VertexSet) -> usize {
        let i = s.bits() as usize;
        (self.theta_of[i] - self.alpha_of[i]) as usize
    }

    pub fn full(&self) -> VertexSet {
        VertexSet::full(self.host.n())
    }

    /// Maximum gap over proper subsets of V.
    pub fn max_proper_gap(&self) -> usize {
        let full = self.full().bits() as usize;
        (0..full)
            .map(|i| (self.theta_of[i] - self.alpha_of[i]) as usize)
            .max()
            .unwrap_or(0)
    }
}

/// Calls `f` on every maximal clique of `rows` inside `p ∪ r` containing `r`.
fn maximal_cliques(rows: &[u64], r: u64, p: u64, x: u64, f: &mut impl FnMut(u64)) {
    if p == 0 {
        if x == 0 {
            f(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    for v in Bits(p & !rows[pivot]) {
        let bit = 1u64 << v;
        // p and x are updated by the loop below in iteration order
        let pv = p & !bits_before(p & !rows[pivot], v) & !bit;
        let xv = x | bits_before(p & !rows[pivot], v);
        maximal_cliques(rows, r | bit, pv & rows[v], xv & rows[v], f);
    }
}

#[inline]
fn bits_before(m: u64, v: usize) -> u64 {
    m & ((1u64 << v) - 1)
}

pub fn subset_gap_profile(g: &Graph) -> Result<SubsetGapProfile, GapError> {
    subset_gap_profile_with_limit(g, PROFILE_LIMIT)
}

pub fn subset_gap_profile_with_limit(g: &Graph, limit: usize) -> Result<SubsetGapProfile, GapError> {
    let n = g.n();
    check_budget(n, limit)?;
    let size = 1usize << n;
    let mut alpha_of = vec![0u8; size];
    let mut theta_of = vec![0u8; size];
    let rows = g.rows();
    for s in 1..size {
        let sm = s as u64;
        let v = sm.trailing_zeros() as usize;
        let without = sm & !(1u64 << v);
        let a1 = alpha_of[without as usize];
        let a2 = 1 + alpha_of[(without & !rows[v]) as usize];
        alpha_of[s] = a1.max(a2);
        let mut best = u8::MAX;
        let nb = rows[v] & sm;
        maximal_cliques(rows, 1u64 << v, nb, 0, &mut |q| {
            let t = 1 + theta_of[(sm & !q) as usize];
            if t < best {
                best = t;
            }
        });
        theta_of[s] = best;
    }
    Ok(SubsetGapProfile {
        host: g.clone(),
        alpha_of,
        theta_of,
    })
}

// ---------------------------------------------------------------------------
// criticality

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityVerdict {
    pub gap: usize,
    pub full_critical: bool,
    pub weak_critical: bool,
    /// Proper subset with gap ≥ gap(G) of least size (then least mask).
    pub witness: Option<VertexSet>,
}

pub fn is_gap_critical(g: &Graph) -> Result<CriticalityVerdict, GapError> {
    is_gap_critical_with_limit(g, PROFILE_LIMIT)
}

pub fn is_gap_critical_with_limit(g: &Graph, limit: usize) -> Result<CriticalityVerdict, GapError> {
    let p = subset_gap_profile_with_limit(g, limit)?;
    Ok(criticality_from_profile(&p))
}

pub fn criticality_from_profile(p: &SubsetGapProfile) -> CriticalityVerdict {
    let n = p.host.n();
    let full = p.full();
    let gv = p.gap_of(full);
    let weak = (0..n).all(|v| {
        let mut s = full;
        s.remove(v);
        p.gap_of(s) < gv
    });
    let mut witness: Option<VertexSet> = None;
    for m in 0..full.bits() {
        let s = VertexSet(m);
        if p.gap_of(s) >= gv && witness.is_none_or(|w| s.len() < w.len()) {
            witness = Some(s);
        }
    }
    CriticalityVerdict {
        gap: gv,
        full_critical: witness.is_none(),
        weak_critical: weak,
        witness,
    }
}

// ---------------------------------------------------------------------------
// chains

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub set: VertexSet,
    pub gap: usize,
}

pub fn gap_chain(g: &Graph) -> Result<Vec<ChainStep>, GapError> {
    gap_chain_with_limit(g, PROFILE_LIMIT)
}

/// Nested subsets obtained by single deletions, starting at V and ending at
/// the first subset of gap 0. Deletes the least vertex lowering the gap by
/// one, else the least keeping it equal.
pub fn gap_chain_with_limit(g: &Graph, limit: usize) -> Result<Vec<ChainStep>, GapError> {
    let p = subset_gap_profile_with_limit(g, limit)?;
    Ok(chain_from_profile(&p))
}

pub fn chain_from_profile(p: &SubsetGapProfile) -> Vec<ChainStep> {
    let mut s = p.full();
    let mut out = vec![ChainStep {
        set: s,
        gap: p.gap_of(s),
    }];
    while p.gap_of(s) > 0 {
        let cur = p.gap_of(s);
        let mut lower = None;
        let mut equal = None;
        for v in s.iter() {
            let mut t = s;
            t.remove(v);
            let gt = p.gap_of(t);
            if gt + 1 == cur && lower.is_none() {
                lower = Some(t);
            } else if gt == cur && equal.is_none() {
                equal = Some(t);
            }
        }
        // a deletion changes the gap by at most one, and the empty set has
        // gap 0, so one of the two always exists
        s = lower.or(equal).expect("gap changes by at most one per deletion");
        out.push(ChainStep {
            set: s,
            gap: p.gap_of(s),
        });
    }
    out
}

/// Max over all induced subgraphs of both the covering and chromatic gap.
pub fn perfectness_gap(g: &Graph) -> Result<usize, GapError> {
    let p = subset_gap_profile(g)?;
    let q = subset_gap_profile(&g.complement())?;
    let size = 1usize << g.n();
    Ok((0..size)
        .map(|i| {
            let a = p.theta_of[i] - p.alpha_of[i];
            let b = q.theta_of[i] - q.alpha_of[i];
            a.max(b) as usize
        })
        .max()
        .unwrap_or(0))
}

// ---------------------------------------------------------------------------
// clique-Helly and triangles

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HellyAnalysis {
    pub is_clique_helly: bool,
    /// Triangle whose extended triangle has no universal vertex.
    pub bad_triangle: Option<VertexSet>,
    /// Induced triangular claw: the triangle, then the three outer vertices.
    pub claw: Option<Vec<usize>>,
}

pub fn clique_helly_analysis(g: &Graph) -> Result<HellyAnalysis, GapError> {
    let n = g.n();
    if n > HELLY_LIMIT {
        return Err(GapError::Budget { n, limit: HELLY_LIMIT });
    }
    let mut bad = None;
    'outer: for (a, b, c) in triangles(g) {
        let (na, nb, nc) = (g.neighbors(a), g.neighbors(b), g.neighbors(c));
        let ext = (na & nb) | (na & nc) | (nb & nc);
        let universal = Bits(ext).any(|u| ext & !(1u64 << u) & !g.neighbors(u) == 0);
        if !universal {
            bad = Some(VertexSet::from_vertices([a, b, c]));
            break 'outer;
        }
    }
    Ok(HellyAnalysis {
        is_clique_helly: bad.is_none(),
        bad_triangle: bad,
        claw: find_triangular_claw(g),
    })
}

fn triangles(g: &Graph) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    (0..g.n()).flat_map(move |a| {
        let up_a = g.neighbors(a) & !low_mask(a + 1);
        Bits(up_a).flat_map(move |b| Bits(up_a & g.neighbors(b) & !low_mask(b + 1)).map(move |c| (a, b, c)))
    })
}

pub fn find_triangular_claw(g: &Graph) -> Option<Vec<usize>> {
    for (a, b, c) in triangles(g) {
        let (na, nb, nc) = (g.neighbors(a), g.neighbors(b), g.neighbors(c));
        let xs = nb & nc & !na & !(1u64 << a);
        let ys = na & nc & !nb & !(1u64 << b);
        let zs = na & nb & !nc & !(1u64 << c);
        for x in Bits(xs) {
            for y in Bits(ys & !g.neighbors(x)) {
                if let Some(z) = Bits(zs & !g.neighbors(x) & !g.neighbors(y)).next() {
                    return Some(vec![a, b, c, x, y, z]);
                }
            }
        }
    }
    None
}

/// A triangle plus three outer vertices, each adjacent to exactly a
/// different pair of its corners; the outer vertices may be adjacent to each
/// other. Its absence does imply clique-Helly, unlike the induced version
/// (K₂,₂,₂ has no induced triangular claw and is not clique-Helly).
pub fn find_triangular_claw_subgraph(g: &Graph) -> Option<Vec<usize>> {
    for (a, b, c) in triangles(g) {
        let (na, nb, nc) = (g.neighbors(a), g.neighbors(b), g.neighbors(c));
        let xs = nb & nc & !na & !(1u64 << a);
        let ys = na & nc & !nb & !(1u64 << b);
        let zs = na & nb & !nc & !(1u64 << c);
        if xs != 0 && ys != 0 && zs != 0 {
            let f = |m: u64| m.trailing_zeros() as usize;
            return Some(vec![a, b, c, f(xs), f(ys), f(zs)]);
        }
    }
    None
}

pub fn two_disjoint_triangles(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    for (a, b, c) in triangles(g) {
        let rest = low_mask(g.n()) & !(1u64 << a | 1u64 << b | 1u64 << c);
        let h_first = triangle_in(g, rest);
        if let Some(t) = h_first {
            return Some((VertexSet::from_vertices([a, b, c]), t));
        }
    }
    None
}

fn triangle_in(g: &Graph, within: u64) -> Option<VertexSet> {
    for a in Bits(within) {
        let na = g.neighbors(a) & within & !low_mask(a + 1);
        for b in Bits(na) {
            let common = na & g.neighbors(b) & !low_mask(b + 1);
            if common != 0 {
                return Some(VertexSet::from_vertices([a, b, common.trailing_zeros() as usize]));
            }
        }
    }
    None
}
