//! Named graphs, the Mycielski operator, stable gap-optimal graphs and
//! ingestion of external (3,ℓ)-Ramsey graph catalogs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::gap::gap;
use crate::graph::{Graph, GraphError, VertexSet};
use crate::graph6::{read_graph6_lines, Graph6Error, Graph6LineError};
use crate::invariants::{is_triangle_free, stable_set_number};
use crate::matching::maximum_matching;
use crate::ramsey::{alpha_of, gap2_partial, is_ramsey_number, is_ramsey_perfect, RamseyTable, Truth};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("alpha({0}) is not determined by the Ramsey table")]
    AlphaUnknown(u64),
    #[error("n={0} is in a zone the table does not decide")]
    Undecided(u64),
    #[error("no (3,{0})-Ramsey graph available")]
    CatalogInsufficient(u32),
    #[error("constructed graph fails verification: {0}")]
    VerificationFailed(String),
}

fn circulant(n: usize, dists: &[usize]) -> Result<Graph, GraphError> {
    let mut e = Vec::new();
    for i in 0..n {
        for &d in dists {
            e.push((i, (i + d) % n));
        }
    }
    Graph::from_edges(n, &e)
}

fn cycle(k: usize) -> Result<Graph, GraphError> {
    circulant(k, &[1])
}

fn path(k: usize) -> Result<Graph, GraphError> {
    let e: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Graph::from_edges(k, &e)
}

fn w8() -> Graph {
    circulant(8, &[1, 4]).unwrap()
}

/// Cycle, clique, path, edgeless and tC5 families, then the fixed names.
pub fn named_graph(name: &str) -> Result<Graph, ConstructionError> {
    let unknown = || ConstructionError::UnknownName(name.to_string());
    let num = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|_| s.bytes().all(|b| b.is_ascii_digit()))
    };
    let g = match name {
        "R13" => circulant(13, &[1, 5])?,
        "W8" => w8(),
        "W81" => {
            let mut g = w8();
            g.remove_edge(0, 4)?;
            g
        }
        "W82" => {
            let mut g = w8();
            g.remove_edge(0, 4)?;
            g.remove_edge(1, 5)?;
            g
        }
        "Ramsey44_17" => circulant(17, &[1, 2, 4, 8])?,
        "C33" => circulant(10, &[1, 2])?,
        "ReplicatedC5" => cycle(5)?.replicate_vertex(0)?.replicate_vertex(2)?,
        "T6" => Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 1), (3, 2), (4, 0), (4, 2), (5, 0), (5, 1)],
        )?,
        "Grotzsch" => mycielskian(&cycle(5)?)?,
        _ => {
            if let Some(t) = name.strip_suffix("C5").and_then(num) {
                if t == 0 {
                    return Err(unknown());
                }
                let c5 = cycle(5)?;
                let mut g = Graph::empty(0)?;
                for _ in 0..t {
                    g = g.disjoint_union(&c5)?;
                }
                g
            } else {
                let (head, tail) = name.split_at(name.len().min(1));
                let k = num(tail).ok_or_else(unknown)?;
                match head {
                    "C" if k >= 3 => cycle(k)?,
                    "K" => Graph::complete(k)?,
                    "P" => path(k)?,
                    "E" => Graph::empty(k)?,
                    _ => return Err(unknown()),
                }
            }
        }
    };
    Ok(g)
}

/// Names accepted by [`named_graph`] without a size parameter.
pub const FIXED_NAMES: [&str; 9] = [
    "R13",
    "W8",
    "W81",
    "W82",
    "Ramsey44_17",
    "C33",
    "ReplicatedC5",
    "T6",
    "Grotzsch",
];

/// Vertices 0..n keep their edges, n..2n are shadows, 2n is the apex.
pub fn mycielskian(g: &Graph) -> Result<Graph, GraphError> {
    let n = g.n();
    let m = 2 * n + 1;
    let mut h = Graph::empty(m)?;
    for (u, v) in g.edges() {
        h.add_edge(u, v)?;
        h.add_edge(n + u, v)?;
        h.add_edge(u, n + v)?;
    }
    for i in 0..n {
        h.add_edge(n + i, 2 * n)?;
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// catalogs

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error("line {line}: {reason}")]
    Validation { line: usize, reason: String },
    #[error("R(3,{0}) is not known exactly")]
    InexactOrder(u32),
}

impl CatalogError {
    pub fn kind(&self) -> &'static str {
        match self {
            CatalogError::Io { .. } => "io",
            CatalogError::Parse { .. } => "parse",
            CatalogError::Validation { .. } | CatalogError::InexactOrder(_) => "validation",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RamseyCatalog {
    /// ℓ → graphs of order R(3,ℓ) − 1, triangle-free, α = ℓ − 1.
    pub entries: BTreeMap<u32, Vec<Graph>>,
    pub source: Option<PathBuf>,
}

impl RamseyCatalog {
    /// First available (3,ℓ)-Ramsey graph; built-ins cover ℓ ≤ 5.
    pub fn ramsey_graph(&self, l: u32) -> Option<Graph> {
        if let Some(g) = self.entries.get(&l).and_then(|v| v.first()) {
            return Some(g.clone());
        }
        match l {
            1 => Some(Graph::empty(0).unwrap()),
            2 => Some(Graph::complete(2).unwrap()),
            3 => Some(cycle(5).unwrap()),
            4 => Some(w8()),
            5 => Some(circulant(13, &[1, 5]).unwrap()),
            _ => None,
        }
    }

    pub fn merge(&mut self, other: RamseyCatalog) {
        for (l, gs) in other.entries {
            self.entries.entry(l).or_default().extend(gs);
        }
        if self.source.is_none() {
            self.source = other.source;
        }
    }
}

pub fn validate_ramsey_graph(g: &Graph, l: u32, table: &RamseyTable) -> Result<(), String> {
    let r = table
        .r3_exact(l)
        .ok_or_else(|| format!("R(3,{l}) is not known exactly"))?;
    if g.n() as u64 + 1 != r {
        return Err(format!("order {} != R(3,{l}) - 1 = {}", g.n(), r - 1));
    }
    if !is_triangle_free(g) {
        return Err("not triangle-free".into());
    }
    let a = stable_set_number(g).0;
    if a as u32 + 1 != l {
        return Err(format!("alpha = {a}, expected {}", l - 1));
    }
    Ok(())
}

pub fn ingest_ramsey_catalog(path: &Path, l: u32, table: &RamseyTable) -> Result<RamseyCatalog, CatalogError> {
    if table.r3_exact(l).is_none() {
        return Err(CatalogError::InexactOrder(l));
    }
    let f = File::open(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let mut graphs = Vec::new();
    for (line, item) in read_graph6_lines(BufReader::new(f)) {
        let g = match item {
            Ok(g) => g,
            Err(Graph6LineError::Io(reason)) => {
                return Err(CatalogError::Io {
                    path: path.display().to_string(),
                    reason,
                })
            }
            Err(Graph6LineError::Parse(source)) => return Err(CatalogError::Parse { line, source }),
        };
        validate_ramsey_graph(&g, l, table).map_err(|reason| CatalogError::Validation { line, reason })?;
        graphs.push(g);
    }
    let mut entries = BTreeMap::new();
    entries.insert(l, graphs);
    Ok(RamseyCatalog {
        entries,
        source: Some(path.to_path_buf()),
    })
}

// ---------------------------------------------------------------------------
// stable gap-optimal graphs

fn exact_alpha(n: u64, t: &RamseyTable) -> Result<u32, ConstructionError> {
    alpha_of(n, t)
        .exact()
        .map(|a| a as u32)
        .ok_or(ConstructionError::AlphaUnknown(n))
}

/// Deletes vertices one at a time, always the least one keeping a
/// near-perfect matching, until `n` remain.
fn shrink_keeping_matching(g: &Graph, n: usize) -> Option<Graph> {
    let mut h = g.clone();
    while h.n() > n {
        let next = (0..h.n())
            .map(|v| h.delete_vertices(VertexSet::singleton(v)).unwrap())
            .find(|c| maximum_matching(c).size == c.n() / 2)?;
        h = next;
    }
    Some(h)
}

/// A triangle-free graph on `n` vertices with α = α(n) and gap = gap₂(n).
pub fn stable_gap_optimal(n: u64, t: &RamseyTable, catalog: &RamseyCatalog) -> Result<Graph, ConstructionError> {
    let a = exact_alpha(n.max(1), t)?;
    let g = if n == 0 {
        Graph::empty(0)?
    } else {
        let perfect = is_ramsey_perfect(n, t);
        let ramsey = is_ramsey_number(n, t);
        if perfect.0 == Truth::Unknown || ramsey == Truth::Unknown {
            return Err(ConstructionError::Undecided(n));
        }
        if let Some(cert) = perfect.1 {
            let g1 = stable_gap_optimal(cert.n1, t, catalog)?;
            let g2 = stable_gap_optimal(cert.n2, t, catalog)?;
            g1.disjoint_union(&g2)?
        } else if ramsey == Truth::Yes && n.is_multiple_of(2) {
            let base = catalog
                .ramsey_graph(a)
                .ok_or(ConstructionError::CatalogInsufficient(a))?;
            base.disjoint_union(&Graph::empty(1)?)?
        } else {
            let base = catalog
                .ramsey_graph(a + 1)
                .ok_or(ConstructionError::CatalogInsufficient(a + 1))?;
            shrink_keeping_matching(&base, n as usize)
                .ok_or_else(|| ConstructionError::VerificationFailed("no near-perfect matching survives".into()))?
        }
    };
    verify_stable_gap_optimal(&g, t)?;
    Ok(g)
}

pub fn verify_stable_gap_optimal(g: &Graph, t: &RamseyTable) -> Result<(), ConstructionError> {
    let n = g.n() as u64;
    if !is_triangle_free(g) {
        return Err(ConstructionError::VerificationFailed("contains a triangle".into()));
    }
    if n == 0 {
        return Ok(());
    }
    let a = stable_set_number(g).0 as i64;
    if alpha_of(n, t).exact() != Some(a) {
        return Err(ConstructionError::VerificationFailed(format!(
            "alpha = {a}, alpha({n}) = {}",
            alpha_of(n, t)
        )));
    }
    let want = gap2_partial(n, t);
    let got = gap(g) as i64;
    if want.exact() != Some(got) {
        return Err(ConstructionError::VerificationFailed(format!(
            "gap = {got}, gap2({n}) = {want}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::encode_graph6;
    use crate::invariants::{chromatic_number, clique_cover_number, clique_number, invariant_report};
    use crate::ramsey::default_table;
    use std::io::Write;

    #[test]
    fn catalog_shapes() {
        let r13 = named_graph("R13").unwrap();
        assert_eq!((r13.n(), r13.edge_count()), (13, 26));
        assert!((0..13).all(|v| r13.degree(v) == 4));
        assert_eq!((stable_set_number(&r13).0, clique_number(&r13).0), (4, 2));
        let c33 = named_graph("C33").unwrap();
        let r = invariant_report(&c33);
        assert_eq!((r.theta, r.alpha, r.gap), (4, 3, 1));
        let w8 = named_graph("W8").unwrap();
        assert_eq!((w8.n(), stable_set_number(&w8).0, clique_number(&w8).0), (8, 3, 2));
        for name in ["W81", "W82"] {
            let g = named_graph(name).unwrap();
            assert!(is_triangle_free(&g));
            assert_eq!(stable_set_number(&g).0, 3);
        }
        let r44 = named_graph("Ramsey44_17").unwrap();
        assert_eq!((stable_set_number(&r44).0, clique_number(&r44).0), (3, 3));
        let rep = named_graph("ReplicatedC5").unwrap();
        assert_eq!((rep.n(), rep.edge_count()), (7, 5 + 3 + 3));
        let t6 = named_graph("T6").unwrap();
        assert_eq!(clique_cover_number(&t6).0, 3);
        assert_eq!(named_graph("3C5").unwrap().n(), 15);
        assert_eq!(named_graph("C7").unwrap().edge_count(), 7);
        assert_eq!(named_graph("K4").unwrap().edge_count(), 6);
        assert_eq!(named_graph("P4").unwrap().edge_count(), 3);
        assert_eq!(named_graph("E3").unwrap().edge_count(), 0);
        for bad in ["C2", "X5", "0C5", "C", "K-1", "W9", ""] {
            assert!(
                matches!(named_graph(bad), Err(ConstructionError::UnknownName(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn mycielski() {
        let c5 = mycielskian(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        assert!(c5.is_connected() && (0..5).all(|v| c5.degree(v) == 2));
        let gr = named_graph("Grotzsch").unwrap();
        assert_eq!(gr.n(), 11);
        assert!(is_triangle_free(&gr));
        assert_eq!(chromatic_number(&gr).0, 4);
        assert!(mycielskian(&Graph::empty(32).unwrap()).is_err());
    }

    #[test]
    fn gap_optimal_examples() {
        let t = default_table();
        let cat = RamseyCatalog::default();
        let g6 = stable_gap_optimal(6, &t, &cat).unwrap();
        assert_eq!(g6, cycle(5).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap());
        let g10 = stable_gap_optimal(10, &t, &cat).unwrap();
        assert_eq!(g10, named_graph("2C5").unwrap());
        let g11 = stable_gap_optimal(11, &t, &cat).unwrap();
        assert_eq!((g11.n(), stable_set_number(&g11).0, gap(&g11)), (11, 4, 2));
        for n in 0..=13 {
            let g = stable_gap_optimal(n, &t, &cat).unwrap();
            assert_eq!(g.n() as u64, n);
            let r = t.r3_exact(alpha_of(n.max(1), &t).exact().unwrap() as u32);
            if n >= 1 && r != Some(n) && r.map(|r| r + 1) != Some(n) {
                assert!(g.components().len() <= 2, "n={n}");
            }
        }
        assert_eq!(stable_gap_optimal(14, &t, &cat).unwrap().n(), 14);
        assert_eq!(
            stable_gap_optimal(15, &t, &cat),
            Err(ConstructionError::CatalogInsufficient(6))
        );
    }

    #[test]
    fn ingestion() {
        let t = default_table();
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, body: &str| {
            let p = dir.path().join(name);
            std::fs::File::create(&p).unwrap().write_all(body.as_bytes()).unwrap();
            p
        };
        let r13 = named_graph("R13").unwrap();
        let ok = write("ok.g6", &format!("# R13\n{}\n", encode_graph6(&r13)));
        let cat = ingest_ramsey_catalog(&ok, 5, &t).unwrap();
        assert_eq!(cat.entries[&5], vec![r13]);

        let w8 = write("w8.g6", &format!("{}\n", encode_graph6(&named_graph("W8").unwrap())));
        let e = ingest_ramsey_catalog(&w8, 5, &t).unwrap_err();
        assert!(matches!(e, CatalogError::Validation { line: 1, .. }));

        let tri = write(
            "tri.g6",
            &format!("\n{}\n", encode_graph6(&named_graph("Ramsey44_17").unwrap())),
        );
        match ingest_ramsey_catalog(&tri, 6, &t).unwrap_err() {
            CatalogError::Validation { line, reason } => {
                assert_eq!(line, 2);
                assert!(reason.contains("triangle"));
            }
            other => panic!("{other:?}"),
        }
        let junk = write("junk.g6", "L???\n");
        assert_eq!(ingest_ramsey_catalog(&junk, 5, &t).unwrap_err().kind(), "parse");
        let missing = dir.path().join("missing.g6");
        assert_eq!(ingest_ramsey_catalog(&missing, 5, &t).unwrap_err().kind(), "io");
        assert_eq!(
            ingest_ramsey_catalog(&ok, 10, &t).unwrap_err(),
            CatalogError::InexactOrder(10)
        );
    }
}
