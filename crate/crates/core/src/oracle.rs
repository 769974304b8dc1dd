//! Independent brute-force oracles: labeled enumeration quotiented by
//! explicit permutation orbits, Burnside class counts, and subset-DP α/θ.

use crate::graph::{Bits, Graph};

pub const LABELED_LIMIT: usize = 7;

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for j in 1..n {
        for i in 0..j {
            v.push((i, j));
        }
    }
    v
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    out.push(p.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Labeled graph on n vertices as a bitmask over vertex pairs.
pub fn mask_to_graph(n: usize, mask: u64) -> Graph {
    let pairs = pair_index(n);
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn graph_to_mask(g: &Graph) -> u64 {
    pair_index(g.n())
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| g.has_edge(i, j))
        .fold(0, |m, (k, _)| m | 1 << k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledClass {
    /// Least pair-mask in the class.
    pub rep: u64,
    /// Number of labeled graphs in the class.
    pub size: u64,
}

/// Every labeled graph on `n ≤ 7` vertices, grouped into isomorphism classes
/// by applying all n! permutations.
pub fn labeled_classes(n: usize) -> Vec<LabeledClass> {
    assert!(n <= LABELED_LIMIT);
    let pairs = pair_index(n);
    let m = pairs.len();
    let mut pos = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        pos[i][j] = k;
        pos[j][i] = k;
    }
    let maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(i, j)| pos[p[i]][p[j]]).collect())
        .collect();
    let total = 1usize << m;
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for mask in 0..total {
        if seen[mask] {
            continue;
        }
        let mut size = 0;
        for map in &maps {
            let img = Bits(mask as u64).fold(0usize, |acc, k| acc | 1 << map[k]);
            if !seen[img] {
                seen[img] = true;
                size += 1;
            }
        }
        out.push(LabeledClass { rep: mask as u64, size });
    }
    out
}

/// Largest pair-mask over all relabelings; equal iff isomorphic (n ≤ 8).
pub fn brute_canonical(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 8);
    let pairs = pair_index(n);
    permutations(n)
        .iter()
        .map(|p| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(i, j))| g.has_edge(p[i], p[j]))
                .fold(0u64, |m, (k, _)| m | 1 << k)
        })
        .max()
        .unwrap_or(0)
}

/// α and θ by exhaustive subset search (n ≤ 12).
pub fn brute_alpha_theta(g: &Graph) -> (usize, usize) {
    let n = g.n();
    let full = (1usize << n) - 1;
    let stable = |s: usize| Bits(s as u64).all(|v| g.neighbors(v) & s as u64 == 0);
    let clique = |s: usize| Bits(s as u64).all(|v| (s as u64 & !(1 << v)) & !g.neighbors(v) == 0);
    let alpha = (0..=full)
        .filter(|&s| stable(s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    // theta[s] = fewest cliques partitioning s
    let mut theta = vec![usize::MAX; full + 1];
    theta[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        // cliques containing the lowest vertex of s
        let mut sub = rest;
        loop {
            let c = sub | low;
            if clique(c) {
                theta[s] = theta[s].min(theta[s & !c] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    (alpha, theta[full])
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for k in (1..=n.min(max)).rev() {
        cur.push(k);
        partitions(n - k, k, cur, out);
        cur.pop();
    }
}

/// Number of unlabeled graphs on n vertices by Burnside's lemma over cycle
/// types of the symmetric group (n ≤ 12).
pub fn burnside_count(n: usize) -> u128 {
    assert!(n <= 12);
    let fact: u128 = (1..=n as u128).product();
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    let mut total: u128 = 0;
    for lambda in parts {
        // centralizer order z = prod k^{m_k} m_k!
        let mut z: u128 = 1;
        let mut k = 0;
        while k < lambda.len() {
            let mut j = k;
            while j < lambda.len() && lambda[j] == lambda[k] {
                j += 1;
            }
            let mult = (j - k) as u128;
            z *= (lambda[k] as u128).pow(mult as u32) * (1..=mult).product::<u128>();
            k = j;
        }
        let mut cycles = 0;
        for (a, &x) in lambda.iter().enumerate() {
            cycles += x / 2;
            for &y in &lambda[a + 1..] {
                cycles += gcd(x, y);
            }
        }
        total += fact / z * (1u128 << cycles);
    }
    total / fact
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{clique_cover_number, stable_set_number};

    #[test]
    fn burnside_values() {
        let v: Vec<u128> = (0..=10).map(burnside_count).collect();
        assert_eq!(v, vec![1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168]);
    }

    #[test]
    fn labeled_partition_is_complete() {
        for n in 0..=6 {
            let cls = labeled_classes(n);
            assert_eq!(cls.len() as u128, burnside_count(n));
            assert_eq!(
                cls.iter().map(|c| c.size).sum::<u64>(),
                1 << (n * n.saturating_sub(1) / 2)
            );
        }
    }

    #[test]
    fn brute_invariants_agree_with_solvers() {
        for c in labeled_classes(6) {
            let g = mask_to_graph(6, c.rep);
            let (a, t) = brute_alpha_theta(&g);
            assert_eq!(a, stable_set_number(&g).0);
            assert_eq!(t, clique_cover_number(&g).0);
            assert_eq!(graph_to_mask(&g), c.rep);
        }
    }
}
