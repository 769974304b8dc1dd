use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use gaplab_core::claims::{recheck, suite_claims, verify_claim, Certificate, ClaimError, Resources, Verdict};
use gaplab_core::constructions::{
    ingest_ramsey_catalog, named_graph, stable_gap_optimal, verify_stable_gap_optimal, CatalogError, ConstructionError,
    RamseyCatalog,
};
use gaplab_core::enumerate::{
    brute_gap2_table, brute_gap_table, census_csv, count_classes, enumerate_graphs, CensusRow, EnumError, EnumOptions,
    Filter,
};
use gaplab_core::formula::{
    biro_beta, default_known_s, gap2_value, gap_bounds, s2_sequence, s_bounds, FormulaError, FormulaValue,
};
use gaplab_core::gap::{
    clique_helly_analysis, gap_chain_with_limit, is_gap_critical_with_limit, perfectness_gap, GapError, PROFILE_LIMIT,
};
use gaplab_core::graph::Graph;
use gaplab_core::graph6::{decode_graph6, encode_graph6, read_graph6_lines, Graph6LineError};
use gaplab_core::invariants::{check_report, invariant_report, InvariantError};
use gaplab_core::matching::{
    edge_cover_number, is_bicritical, is_factor_critical, maximum_matching, vertex_connectivity,
};
use gaplab_core::ramsey::{
    alpha_of, default_table, epsilon_of, find_twins, is_ramsey_perfect, is_ramsey_perfect_by_ramsey_sum,
    validate_table, RamseyTable, TableError, Truth,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Data(_) => 4,
        }
    }
}

impl From<GapError> for CliError {
    fn from(e: GapError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::MethodDisagreement { .. } => CliError::Data(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::UnknownName(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Data(format!("{} error: {e}", e.kind()))
    }
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<ClaimError> for CliError {
    fn from(e: ClaimError) -> Self {
        match e {
            ClaimError::UnknownClaim(_) | ClaimError::UnknownSuite(_) => CliError::Usage(e.to_string()),
            ClaimError::Budget(_) | ClaimError::Gap(_) => CliError::Budget(e.to_string()),
            ClaimError::Malformed(_) => CliError::Data(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

/// Payload plus whether it reports a failed verdict (exit code 1).
struct Outcome {
    payload: String,
    failed: bool,
}

impl Outcome {
    fn json<T: Serialize>(v: &T) -> Self {
        Outcome {
            payload: serde_json::to_string_pretty(v).expect("serializable payload"),
            failed: false,
        }
    }

    fn text(s: String) -> Self {
        Outcome {
            payload: s,
            failed: false,
        }
    }

    fn failed_if(mut self, f: bool) -> Self {
        self.failed = f;
        self
    }
}

#[derive(Parser)]
#[command(name = "gaplab", version, about = "Exact covering-gap computations on small graphs")]
struct Cli {
    /// Ramsey table JSON replacing the compiled-in defaults.
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// Seed for random property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// CSV instead of JSON where a table is produced.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Graph as a graph6 string.
    #[arg(long, group = "input")]
    graph6: Option<String>,
    /// File holding exactly one graph6 line.
    #[arg(long, group = "input")]
    file: Option<PathBuf>,
    /// Named construction (C7, K4, 2C5, R13, W8, Grotzsch, ...).
    #[arg(long, group = "input")]
    construct: Option<String>,
}

#[derive(Args)]
struct ProfileLimit {
    /// Raise the order limit of the 2^n subset tables (up to 22).
    #[arg(long, default_value_t = PROFILE_LIMIT)]
    limit: usize,
}

#[derive(Subcommand)]
enum Command {
    /// α, ω, χ, θ, ν, ζ and both gaps, with witnesses.
    Invariants(GraphInput),
    /// Covering and chromatic gap.
    Gap(GraphInput),
    /// Gap-criticality verdict.
    Critical {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        limit: ProfileLimit,
    },
    /// Chain of induced subgraphs down to gap 0.
    Chain {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        limit: ProfileLimit,
    },
    /// Largest covering or chromatic gap over induced subgraphs.
    PerfectnessGap(GraphInput),
    /// Clique-Helly test with bad triangle and triangular claw.
    CliqueHelly(GraphInput),
    /// Maximum matching, edge cover, factor- and bicriticality.
    Matching(GraphInput),
    /// Vertex connectivity and components.
    Connectivity(GraphInput),
    #[command(subcommand)]
    Formula(FormulaCmd),
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Build a named graph, or `stable-gap-optimal` with --n.
    Construct {
        name: String,
        /// Print the bare graph6 string.
        #[arg(long)]
        graph6: bool,
        #[arg(long)]
        n: Option<u64>,
        /// Extra (3,l)-Ramsey graphs for stable-gap-optimal, as PATH:L.
        #[arg(long)]
        catalog: Vec<String>,
    },
    #[command(subcommand)]
    Ingest(IngestCmd),
    /// Isomorph-free generation, one graph6 per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        triangle_free: bool,
        #[arg(long)]
        max_alpha: Option<usize>,
        #[arg(long)]
        max_omega: Option<usize>,
        /// Print per-order class counts instead of graphs.
        #[arg(long)]
        count: bool,
        /// Allow n = 12 for unrestricted generation.
        #[arg(long)]
        allow_override: bool,
    },
    #[command(subcommand)]
    Census(CensusCmd),
    /// Run claim suites and write certificates.
    Verify {
        /// Suite name; repeatable.
        #[arg(long, required_unless_present = "recheck")]
        suite: Vec<String>,
        /// Directory receiving one certificate JSON per claim.
        #[arg(long, default_value = "certificates")]
        out_dir: PathBuf,
        /// Random graphs per property suite run.
        #[arg(long, default_value_t = 10_000)]
        cases: u64,
        /// Re-validate a certificate file instead of running suites.
        #[arg(long, conflicts_with = "suite")]
        recheck: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FormulaCmd {
    Gap2 {
        #[arg(long)]
        n: u64,
    },
    /// s2(t) for one t, or the sequence 1..=t-max.
    S2 {
        #[arg(long, conflicts_with = "t_max")]
        t: Option<u32>,
        #[arg(long)]
        t_max: Option<u32>,
    },
    GapBounds {
        #[arg(long)]
        n: u64,
        /// Known exact s values as t=s, comma separated; default the built-in list.
        #[arg(long)]
        known_s: Option<String>,
    },
    SBounds {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        known_s: Option<String>,
    },
    Beta {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        theta: u64,
    },
}

#[derive(Subcommand)]
enum RamseyCmd {
    Table,
    Alpha {
        #[arg(long)]
        n: u64,
    },
    Epsilon {
        #[arg(long)]
        n: u64,
    },
    Perfect {
        #[arg(long)]
        n: u64,
    },
    Twins {
        #[arg(long)]
        up_to: Option<u32>,
    },
    /// Check every consistency inequality; exit 1 on a violation.
    Validate,
}

#[derive(Subcommand)]
enum IngestCmd {
    /// Validate a graph6 file of (3,l)-Ramsey graphs.
    RamseyCatalog {
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        l: u32,
    },
}

#[derive(Subcommand)]
enum CensusCmd {
    /// Max gap per order over all graphs.
    Gap(CensusArgs),
    /// Max gap per order over triangle-free graphs.
    Gap2(CensusArgs),
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    n_max: usize,
    /// Directory for witness graph6 sidecar files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Raise the order budget by one.
    #[arg(long)]
    allow_override: bool,
}

fn load_graph(input: &GraphInput) -> Result<Graph, CliError> {
    if let Some(s) = &input.graph6 {
        return decode_graph6(s).map_err(|e| CliError::Data(format!("graph6: {e}")));
    }
    if let Some(name) = &input.construct {
        return Ok(named_graph(name)?);
    }
    if let Some(path) = &input.file {
        let f = fs::File::open(path).map_err(|e| io_err(path, e))?;
        let mut graphs = Vec::new();
        for (line, g) in read_graph6_lines(BufReader::new(f)) {
            match g {
                Ok(g) => graphs.push(g),
                Err(Graph6LineError::Io(e)) => return Err(CliError::Data(format!("{}: {e}", path.display()))),
                Err(e) => return Err(CliError::Data(format!("{}:{line}: {e}", path.display()))),
            }
        }
        if graphs.len() != 1 {
            return Err(CliError::Data(format!(
                "{}: expected exactly one graph, found {}",
                path.display(),
                graphs.len()
            )));
        }
        return Ok(graphs.pop().unwrap());
    }
    Err(CliError::Usage(
        "one of --graph6, --file, --construct is required".into(),
    ))
}

fn load_table(path: &Option<PathBuf>) -> Result<RamseyTable, CliError> {
    match path {
        Some(p) => Ok(RamseyTable::load(p)?),
        None => Ok(default_table()),
    }
}

fn parse_known_s(s: &Option<String>) -> Result<BTreeMap<u32, u64>, CliError> {
    let Some(s) = s else {
        return Ok(default_known_s());
    };
    let mut m = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (t, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--known-s entry '{part}' is not t=s")))?;
        let t: u32 = t
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad t in '{part}'")))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad s in '{part}'")))?;
        m.insert(t, v);
    }
    Ok(m)
}

fn formula_json(key: &str, arg: u64, v: &FormulaValue) -> Value {
    json!({ key: arg, "value": v.value, "provenance": v.provenance })
}

fn truth(t: Truth) -> &'static str {
    match t {
        Truth::Yes => "yes",
        Truth::No => "no",
        Truth::Unknown => "unknown",
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let table = load_table(&cli.table)?;
    let opts = |filter: Filter, allow_override: bool| EnumOptions {
        filter,
        jobs: cli.jobs,
        allow_override,
    };
    Ok(match cli.cmd {
        Command::Invariants(input) => {
            let g = load_graph(&input)?;
            let r = invariant_report(&g);
            if !check_report(&g, &r) {
                return Err(CliError::Data("internal witness check failed".into()));
            }
            Outcome::json(&r)
        }
        Command::Gap(input) => {
            let g = load_graph(&input)?;
            let r = invariant_report(&g);
            Outcome::json(&json!({
                "n": r.n, "alpha": r.alpha, "theta": r.theta, "omega": r.omega, "chi": r.chi,
                "gap": r.gap, "chromatic_gap": r.chromatic_gap,
            }))
        }
        Command::Critical { input, limit } => {
            let g = load_graph(&input)?;
            Outcome::json(&is_gap_critical_with_limit(&g, limit.limit)?)
        }
        Command::Chain { input, limit } => {
            let g = load_graph(&input)?;
            let steps = gap_chain_with_limit(&g, limit.limit)?;
            let v: Vec<Value> = steps
                .iter()
                .map(|s| json!({"vertices": s.set.to_vec(), "gap": s.gap}))
                .collect();
            Outcome::json(&v)
        }
        Command::PerfectnessGap(input) => {
            let g = load_graph(&input)?;
            Outcome::json(&json!({"n": g.n(), "perfectness_gap": perfectness_gap(&g)?}))
        }
        Command::CliqueHelly(input) => {
            let g = load_graph(&input)?;
            Outcome::json(&clique_helly_analysis(&g)?)
        }
        Command::Matching(input) => {
            let g = load_graph(&input)?;
            let m = maximum_matching(&g);
            let (fc, fc_bad) = is_factor_critical(&g);
            let (bc, bc_bad) = is_bicritical(&g);
            Outcome::json(&json!({
                "matching": m,
                "edge_cover_number": edge_cover_number(&g),
                "factor_critical": fc, "factor_critical_witness": fc_bad,
                "bicritical": bc, "bicritical_witness": bc_bad,
            }))
        }
        Command::Connectivity(input) => {
            let g = load_graph(&input)?;
            let comps: Vec<Vec<usize>> = g.components().iter().map(|c| c.to_vec()).collect();
            Outcome::json(&json!({
                "n": g.n(),
                "vertex_connectivity": vertex_connectivity(&g),
                "connected": g.is_connected(),
                "components": comps,
            }))
        }
        Command::Formula(f) => match f {
            FormulaCmd::Gap2 { n } => Outcome::json(&formula_json("n", n, &gap2_value(n, &table))),
            FormulaCmd::S2 { t, t_max } => {
                let top = t.or(t_max).unwrap_or(11);
                let seq = s2_sequence(top, &table)?;
                for n in &seq.notices {
                    eprintln!("notice: {n}");
                }
                match t {
                    Some(t) => {
                        let e = &seq.entries[t as usize - 1];
                        Outcome::json(&formula_json("t", t as u64, &e.value))
                    }
                    None => Outcome::json(&seq),
                }
            }
            FormulaCmd::GapBounds { n, known_s } => {
                let known = parse_known_s(&known_s)?;
                Outcome::json(&formula_json("n", n, &gap_bounds(n, &table, &known)))
            }
            FormulaCmd::SBounds { t, known_s } => {
                let known = parse_known_s(&known_s)?;
                Outcome::json(&formula_json("t", t as u64, &s_bounds(t, &table, &known)?))
            }
            FormulaCmd::Beta { n, theta } => {
                let v = biro_beta(n, theta, &table)?;
                Outcome::json(&json!({"n": n, "theta": theta, "value": v.value, "provenance": v.provenance}))
            }
        },
        Command::Ramsey(r) => match r {
            RamseyCmd::Table => Outcome::json(&table.to_json()),
            RamseyCmd::Alpha { n } => Outcome::json(&json!({"n": n, "value": alpha_of(n, &table)})),
            RamseyCmd::Epsilon { n } => Outcome::json(&json!({"n": n, "value": epsilon_of(n, &table)})),
            RamseyCmd::Perfect { n } => {
                let (t, cert) = is_ramsey_perfect(n, &table);
                let alt = is_ramsey_perfect_by_ramsey_sum(n, &table);
                if t != alt {
                    return Err(CliError::Data(format!(
                        "perfectness characterisations disagree at n={n}: {} vs {}",
                        truth(t),
                        truth(alt)
                    )));
                }
                Outcome::json(&json!({"n": n, "ramsey_perfect": truth(t), "certificate": cert}))
            }
            RamseyCmd::Twins { up_to } => {
                let pairs = find_twins(&table, up_to.unwrap_or(table.max_l()));
                Outcome::json(&json!({"twins": pairs}))
            }
            RamseyCmd::Validate => {
                let v = validate_table(&table);
                for x in &v {
                    eprintln!("violation: {}: {}", x.rule, x.detail);
                }
                Outcome::json(&json!({"valid": v.is_empty(), "violations": v})).failed_if(!v.is_empty())
            }
        },
        Command::Construct {
            name,
            graph6,
            n,
            catalog,
        } => {
            let g = if name == "stable-gap-optimal" {
                let n = n.ok_or_else(|| CliError::Usage("stable-gap-optimal needs --n".into()))?;
                let mut cat = RamseyCatalog::default();
                for spec in &catalog {
                    let (path, l) = spec
                        .rsplit_once(':')
                        .ok_or_else(|| CliError::Usage(format!("--catalog '{spec}' is not PATH:L")))?;
                    let l: u32 = l.parse().map_err(|_| CliError::Usage(format!("bad l in '{spec}'")))?;
                    cat.merge(ingest_ramsey_catalog(Path::new(path), l, &table)?);
                }
                let g = stable_gap_optimal(n, &table, &cat)?;
                verify_stable_gap_optimal(&g, &table)?;
                g
            } else {
                if n.is_some() || !catalog.is_empty() {
                    return Err(CliError::Usage(
                        "--n and --catalog apply only to stable-gap-optimal".into(),
                    ));
                }
                named_graph(&name)?
            };
            if graph6 {
                Outcome::text(format!("{}\n", encode_graph6(&g)))
            } else {
                Outcome::json(&json!({"name": name, "n": g.n(), "graph6": encode_graph6(&g), "edges": g.edges()}))
            }
        }
        Command::Ingest(IngestCmd::RamseyCatalog { path, l }) => {
            let cat = ingest_ramsey_catalog(&path, l, &table)?;
            let gs: Vec<String> = cat
                .entries
                .get(&l)
                .map(|v| v.iter().map(encode_graph6).collect())
                .unwrap_or_default();
            Outcome::json(&json!({"path": path, "l": l, "count": gs.len(), "graphs": gs}))
        }
        Command::Enumerate {
            n,
            triangle_free,
            max_alpha,
            max_omega,
            count,
            allow_override,
        } => {
            let o = opts(
                Filter {
                    triangle_free,
                    max_alpha,
                    max_omega,
                },
                allow_override,
            );
            if count {
                let c = count_classes(n, &o)?;
                let rows: Vec<Value> = c.iter().enumerate().map(|(k, c)| json!({"n": k, "count": c})).collect();
                Outcome::json(&rows)
            } else {
                let gs = enumerate_graphs(n, &o)?;
                eprintln!("{} graphs on {n} vertices", gs.len());
                Outcome::text(gs.iter().map(|g| encode_graph6(g) + "\n").collect())
            }
        }
        Command::Census(c) => {
            let (rows, a, kind) = match c {
                CensusCmd::Gap(a) => (
                    brute_gap_table(a.n_max, &opts(Filter::NONE, a.allow_override))?,
                    a,
                    "gap",
                ),
                CensusCmd::Gap2(a) => (
                    brute_gap2_table(a.n_max, &opts(Filter::TRIANGLE_FREE, a.allow_override))?,
                    a,
                    "gap2",
                ),
            };
            if let Some(dir) = &a.out_dir {
                write_sidecars(dir, kind, &rows)?;
            }
            if cli.csv {
                Outcome::text(census_csv(&rows))
            } else {
                Outcome::json(&rows)
            }
        }
        Command::Verify {
            suite,
            out_dir,
            cases,
            recheck: Some(path),
        } => {
            let _ = (suite, out_dir, cases);
            let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            let cert: Certificate =
                serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            let v = recheck(&cert, &table)?;
            let agrees = v == cert.verdict;
            Outcome::json(&json!({"claim": cert.claim, "recorded": cert.verdict, "recheck": v, "consistent": agrees}))
                .failed_if(!agrees || v == Verdict::Fail)
        }
        Command::Verify {
            suite,
            out_dir,
            cases,
            recheck: None,
        } => {
            let mut ids: Vec<&str> = Vec::new();
            for s in &suite {
                for c in suite_claims(s)? {
                    if !ids.contains(&c) {
                        ids.push(c);
                    }
                }
            }
            let mut res = Resources::new(table.clone());
            res.jobs = cli.jobs;
            res.seed = cli.seed;
            res.property_cases = cases;
            fs::create_dir_all(&out_dir).map_err(|e| io_err(&out_dir, e))?;
            let mut summary = Vec::new();
            let mut all_pass = true;
            for id in ids {
                let cert = verify_claim(id, &res)?;
                let file = out_dir.join(format!("{id}.json"));
                let text = serde_json::to_string_pretty(&cert).expect("certificate serializes");
                fs::write(&file, text + "\n").map_err(|e| io_err(&file, e))?;
                eprintln!("{:?} {id}", cert.verdict);
                for n in &cert.notices {
                    eprintln!("  notice: {n}");
                }
                all_pass &= cert.passed();
                summary.push(json!({
                    "claim": id, "verdict": cert.verdict, "notices": cert.notices,
                    "counterexample": cert.counterexample, "certificate": file,
                }));
            }
            let verdict = if all_pass { Verdict::Pass } else { Verdict::Fail };
            Outcome::json(&json!({"suites": suite, "verdict": verdict, "claims": summary})).failed_if(!all_pass)
        }
    })
}

fn write_sidecars(dir: &Path, kind: &str, rows: &[CensusRow]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    for r in rows {
        let path = dir.join(format!("{kind}_n{}.g6", r.n));
        let mut f = fs::File::create(&path).map_err(|e| io_err(&path, e))?;
        if r.witnesses_truncated {
            writeln!(f, "# first {} of {} witnesses", r.witnesses.len(), r.witness_count)
                .map_err(|e| io_err(&path, e))?;
        }
        for w in &r.witnesses {
            writeln!(f, "{w}").map_err(|e| io_err(&path, e))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.payload.as_bytes());
            if !out.payload.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
