//! Seeded property suites over random graphs: clique removal, Gallai's
//! identity, component additivity, complement dualities, the greedy cover
//! bound, claw-free Helly, the α ≤ 2 criterion, and necessary conditions
//! on gap-critical graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gap::{clique_helly_analysis, find_triangular_claw, find_triangular_claw_subgraph, gap, is_gap_critical};
use crate::graph::{Bits, Graph, VertexSet};
use crate::graph6::encode_graph6;
use crate::invariants::{
    chromatic_number, clique_cover_number, clique_number, greedy_clique_cover, is_perfect, stable_set_number,
};
use crate::matching::{maximum_matching, simplicial_vertices};

pub const SUITES: [&str; 10] = [
    "remove-clique",
    "gallai-identity",
    "components",
    "dualities",
    "greedy-cover",
    "triangular-claw",
    "alpha2",
    "simplicial",
    "critical-cover",
    "critical-remove-clique",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyViolation {
    pub suite: String,
    pub graph6: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteStats {
    pub suite: String,
    /// Graphs on which the property's hypothesis held.
    pub applicable: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub seed: u64,
    pub cases: u64,
    pub critical_seen: u64,
    /// Graphs with no induced triangular claw that are still not
    /// clique-Helly; recorded, not counted as violations.
    pub induced_claw_counterexamples: u64,
    pub stats: Vec<SuiteStats>,
    pub violations: Vec<PropertyViolation>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn cycle(k: usize) -> Graph {
    let e: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_edges(k, &e).unwrap()
}

/// Mostly G(n, p) with random p; a quarter are unions of odd holes and
/// antiholes (so gap-critical graphs actually occur), sometimes perturbed.
pub fn random_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    if rng.gen_range(0..4) == 0 {
        let mut g = Graph::empty(0).unwrap();
        loop {
            let k = [5, 7, 9][rng.gen_range(0..3)];
            let piece = if rng.gen_bool(0.5) {
                cycle(k)
            } else {
                cycle(k).complement()
            };
            if g.n() + k > max_n {
                break;
            }
            g = g.disjoint_union(&piece).unwrap();
        }
        while g.n() < max_n && rng.gen_bool(0.3) {
            g = g.disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        }
        if g.n() >= 2 && rng.gen_bool(0.3) {
            let u = rng.gen_range(0..g.n());
            let v = rng.gen_range(0..g.n());
            if u != v {
                if g.has_edge(u, v) {
                    g.remove_edge(u, v).unwrap();
                } else {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        return g;
    }
    let n = rng.gen_range(0..=max_n);
    let p: f64 = rng.gen_range(0.05..0.95);
    let mut g = Graph::empty(n).unwrap();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// Minimum edge cover by DP over uncovered-vertex sets; `None` with an
/// isolated vertex.
pub fn brute_edge_cover(g: &Graph) -> Option<usize> {
    let n = g.n();
    if !g.isolated_vertices().is_empty() {
        return None;
    }
    let full = (1usize << n) - 1;
    let mut dp = vec![usize::MAX; full + 1];
    dp[0] = 0;
    for m in 1..=full {
        let v = m.trailing_zeros() as usize;
        let mut best = usize::MAX;
        for u in Bits(g.neighbors(v)) {
            let prev = dp[m & !(1 << v) & !(1 << u)];
            best = best.min(prev.saturating_add(1));
        }
        dp[m] = best;
    }
    Some(dp[full])
}

/// A maximal clique grown from a random vertex in random order.
fn random_clique(g: &Graph, rng: &mut impl Rng) -> VertexSet {
    if g.n() == 0 {
        return VertexSet::EMPTY;
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut q = VertexSet::EMPTY;
    let take = rng.gen_range(1..=g.n());
    for &v in &order {
        if q.len() == take {
            break;
        }
        if q.iter().all(|u| g.has_edge(u, v)) {
            q.insert(v);
        }
    }
    q
}

struct Checker {
    stats: Vec<SuiteStats>,
    violations: Vec<PropertyViolation>,
}

impl Checker {
    fn check(&mut self, suite: usize, g: &Graph, ok: bool, detail: impl FnOnce() -> String) {
        let s = &mut self.stats[suite];
        s.applicable += 1;
        if !ok {
            s.violations += 1;
            self.violations.push(PropertyViolation {
                suite: SUITES[suite].into(),
                graph6: encode_graph6(g),
                detail: detail(),
            });
        }
    }
}

pub fn run_property_suites(seed: u64, cases: u64, max_n: usize) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Checker {
        stats: SUITES
            .iter()
            .map(|s| SuiteStats {
                suite: s.to_string(),
                applicable: 0,
                violations: 0,
            })
            .collect(),
        violations: Vec::new(),
    };
    let mut critical_seen = 0;
    let mut induced_claw_counterexamples = 0;
    for _ in 0..cases {
        let g = random_graph(&mut rng, max_n);
        let n = g.n();
        let (alpha, _) = stable_set_number(&g);
        let (theta, _) = clique_cover_number(&g);
        let gp = theta - alpha;

        let q = random_clique(&g, &mut rng);
        let h = g.delete_vertices(q).unwrap();
        let (ah, th) = (stable_set_number(&h).0, clique_cover_number(&h).0);
        let gh = th as i64 - ah as i64;
        c.check(
            0,
            &g,
            theta >= th && th + 1 >= theta && alpha >= ah && ah + 1 >= alpha && (gh - gp as i64).abs() <= 1,
            || format!("Q={:?}: theta {theta}->{th}, alpha {alpha}->{ah}", q.to_vec()),
        );

        if n >= 2 && g.is_connected() {
            let nu = maximum_matching(&g).size;
            let zeta = brute_edge_cover(&g).unwrap();
            c.check(1, &g, nu + zeta == n, || format!("nu={nu}, zeta={zeta}, n={n}"));
        }

        let comps = g.components();
        let sum: usize = comps.iter().map(|&s| gap(&g.induced_subgraph(s).unwrap())).sum();
        c.check(2, &g, sum == gp, || format!("gap={gp}, component sum={sum}"));

        let gc = g.complement();
        let (omega, chi) = (clique_number(&g).0, chromatic_number(&g).0);
        let ok = omega == stable_set_number(&gc).0
            && chi == clique_cover_number(&gc).0
            && chi >= omega
            && omega * theta >= n
            && theta >= alpha
            && alpha * chi >= n;
        c.check(3, &g, ok, || {
            format!("omega={omega}, chi={chi}, alpha={alpha}, theta={theta}")
        });

        let d = greedy_clique_cover(&g);
        let (a, z) = (d.a.len(), d.z.len());
        let ok = 2 * theta <= n - a + z && z <= d.alpha_b && 2 * gp + a + d.alpha_b <= n && gp <= d.gap_bound;
        c.check(4, &g, ok, || {
            format!("|A|={a}, |Z|={z}, alpha(B)={}, gap={gp}", d.alpha_b)
        });

        let helly = clique_helly_analysis(&g).unwrap().is_clique_helly;
        if find_triangular_claw_subgraph(&g).is_none() {
            c.check(5, &g, helly, || {
                "no triangular claw subgraph but not clique-Helly".into()
            });
        }
        if !helly && find_triangular_claw(&g).is_none() {
            induced_claw_counterexamples += 1;
        }

        if alpha <= 2 && n > 0 {
            let perfect_nbhd = (0..n).any(|v| {
                let nb = g.induced_subgraph(VertexSet(g.neighbors(v))).unwrap();
                is_perfect(&nb).unwrap().0
            });
            if perfect_nbhd {
                c.check(6, &g, gp <= 1, || format!("alpha={alpha}, gap={gp}"));
            }
        }

        if gp > 0 && is_gap_critical(&g).unwrap().full_critical {
            critical_seen += 1;
            let simp = simplicial_vertices(&g);
            c.check(7, &g, simp.is_empty(), || format!("simplicial {:?}", simp.to_vec()));
            if g.is_connected() {
                c.check(8, &g, theta <= n.div_ceil(2), || format!("theta={theta}, n={n}"));
            }
            if !q.is_empty() {
                let ok = th + 1 == theta && ah == alpha && gh + 1 == gp as i64;
                c.check(9, &g, ok, || {
                    format!("Q={:?}: theta {theta}->{th}, alpha {alpha}->{ah}", q.to_vec())
                });
            }
        }
    }
    PropertyReport {
        seed,
        cases,
        critical_seen,
        induced_claw_counterexamples,
        stats: c.stats,
        violations: c.violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_clean_and_reproducible() {
        let a = run_property_suites(7, 300, 10);
        assert!(a.passed(), "{:?}", a.violations);
        assert!(a.critical_seen > 0);
        assert_eq!(a, run_property_suites(7, 300, 10));
    }

    #[test]
    fn edge_cover_oracle() {
        assert_eq!(brute_edge_cover(&cycle(5)), Some(3));
        assert_eq!(brute_edge_cover(&Graph::complete(4).unwrap()), Some(2));
        assert_eq!(brute_edge_cover(&Graph::empty(1).unwrap()), None);
    }
}
