//! Knowledge of R(3,ℓ) as exact values or intervals, and everything derived
//! from it: α(n), ε(n), Ramsey-perfect numbers, twins, table validation.
//!
//! Derived quantities are evaluated over every strictly increasing
//! completion ("world") of the uncertain entries up to the query point, so
//! an answer is exact only when all completions agree. When there are too
//! many completions, plain interval arithmetic takes over.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

// ---------------------------------------------------------------------------
// three-valued numbers

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartialValue {
    Exact(i64),
    /// `hi = None` means unbounded above.
    Range {
        lo: i64,
        hi: Option<i64>,
    },
    Unknown,
}

impl PartialValue {
    pub fn range(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty range [{lo}, {hi}]");
        if lo == hi {
            Self::Exact(lo)
        } else {
            Self::Range { lo, hi: Some(hi) }
        }
    }

    pub fn at_least(lo: i64) -> Self {
        Self::Range { lo, hi: None }
    }

    pub fn lo(&self) -> Option<i64> {
        match *self {
            Self::Exact(v) => Some(v),
            Self::Range { lo, .. } => Some(lo),
            Self::Unknown => None,
        }
    }

    pub fn hi(&self) -> Option<i64> {
        match *self {
            Self::Exact(v) => Some(v),
            Self::Range { hi, .. } => hi,
            Self::Unknown => None,
        }
    }

    pub fn exact(&self) -> Option<i64> {
        match *self {
            Self::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact(_))
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo().is_none_or(|lo| lo <= v) && self.hi().is_none_or(|hi| v <= hi)
    }

    /// Builds from optional bounds; both missing gives `Unknown`.
    pub fn from_bounds(lo: Option<i64>, hi: Option<i64>) -> Self {
        match (lo, hi) {
            (Some(l), Some(h)) => Self::range(l, h),
            (Some(l), None) => Self::at_least(l),
            (None, _) => Self::Unknown,
        }
    }

    /// Intersection of two sound enclosures of the same quantity.
    pub fn meet(self, other: Self) -> Self {
        let lo = match (self.lo(), other.lo()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi(), other.hi()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match (lo, hi) {
            (Some(l), Some(h)) if l > h => panic!("contradictory enclosures {self} and {other}"),
            (None, Some(_)) => Self::Unknown,
            _ => Self::from_bounds(lo, hi),
        }
    }
}

impl fmt::Display for PartialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(v) => write!(f, "{v}"),
            Self::Range { lo, hi: Some(h) } => write!(f, "[{lo}, {h}]"),
            Self::Range { lo, hi: None } => write!(f, "[{lo}, ∞)"),
            Self::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PartialValueRepr {
    lo: Option<i64>,
    hi: Option<i64>,
}

impl Serialize for PartialValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PartialValueRepr {
            lo: self.lo(),
            hi: self.hi(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PartialValueRepr::deserialize(d)?;
        if let (Some(l), Some(h)) = (r.lo, r.hi) {
            if l > h {
                return Err(serde::de::Error::custom("lo exceeds hi"));
            }
        }
        Ok(Self::from_bounds(r.lo, r.hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

impl Truth {
    pub fn as_value(self) -> PartialValue {
        match self {
            Self::Yes => PartialValue::Exact(1),
            Self::No => PartialValue::Exact(0),
            Self::Unknown => PartialValue::range(0, 1),
        }
    }
}

// ---------------------------------------------------------------------------
// tables

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub lo: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<u64>,
}

impl Bound {
    pub const fn exact(v: u64) -> Self {
        Bound { lo: v, hi: Some(v) }
    }

    pub const fn between(lo: u64, hi: u64) -> Self {
        Bound { lo, hi: Some(hi) }
    }

    pub const fn at_least(lo: u64) -> Self {
        Bound { lo, hi: None }
    }

    pub fn value(&self) -> PartialValue {
        match self.hi {
            Some(h) => PartialValue::range(self.lo as i64, h as i64),
            None => PartialValue::at_least(self.lo as i64),
        }
    }

    pub fn exact_value(&self) -> Option<u64> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }

    fn may_be(&self, v: u64) -> bool {
        self.lo <= v && self.hi.is_none_or(|h| v <= h)
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read table: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed table JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("table has no R(3,l) entries")]
    Empty,
    #[error("R(3,l) keys must be contiguous from 1 (or 2); found l={found}, expected {expected}")]
    NonContiguous { expected: u32, found: u32 },
    #[error("entry l={l} has lo {lo} above hi {hi}")]
    EmptyInterval { l: u32, lo: u64, hi: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyTable {
    /// `r3[ℓ-1]` bounds R(3,ℓ).
    r3: Vec<Bound>,
    pub r44: Bound,
}

#[derive(Serialize, Deserialize)]
struct TableEntryFile {
    l: u32,
    lo: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hi: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    r3: Vec<TableEntryFile>,
    r44: Bound,
}

/// Exact values R(3,2..=9), then interval and lower-bound entries.
const DEFAULT_R3: [Bound; 29] = [
    Bound::exact(1),
    Bound::exact(3),
    Bound::exact(6),
    Bound::exact(9),
    Bound::exact(14),
    Bound::exact(18),
    Bound::exact(23),
    Bound::exact(28),
    Bound::exact(36),
    Bound::between(40, 43),
    Bound::between(46, 51),
    Bound::between(52, 59),
    Bound::between(59, 69),
    Bound::between(66, 78),
    Bound::between(73, 88),
    Bound::at_least(79),
    Bound::at_least(92),
    Bound::at_least(99),
    Bound::at_least(106),
    Bound::at_least(111),
    Bound::at_least(122),
    Bound::at_least(125),
    Bound::at_least(136),
    Bound::at_least(143),
    Bound::at_least(153),
    Bound::at_least(159),
    Bound::at_least(167),
    Bound::at_least(172),
    Bound::at_least(182),
];

pub fn default_table() -> RamseyTable {
    RamseyTable {
        r3: DEFAULT_R3.to_vec(),
        r44: Bound::exact(18),
    }
}

impl Default for RamseyTable {
    fn default() -> Self {
        default_table()
    }
}

impl RamseyTable {
    /// Entries for ℓ = 1, 2, …; ℓ = 1 → 1 is inserted when absent.
    pub fn new(mut r3: Vec<Bound>, r44: Bound) -> Result<Self, TableError> {
        if r3.is_empty() {
            return Err(TableError::Empty);
        }
        if r3[0] != Bound::exact(1) && r3[0].lo > 1 {
            r3.insert(0, Bound::exact(1));
        }
        for (i, b) in r3.iter().enumerate() {
            if let Some(h) = b.hi {
                if b.lo > h {
                    return Err(TableError::EmptyInterval {
                        l: i as u32 + 1,
                        lo: b.lo,
                        hi: h,
                    });
                }
            }
        }
        Ok(RamseyTable { r3, r44 })
    }

    pub fn from_json_str(s: &str) -> Result<Self, TableError> {
        let f: TableFile = serde_json::from_str(s)?;
        let mut entries = f.r3;
        entries.sort_by_key(|e| e.l);
        let Some(first) = entries.first() else {
            return Err(TableError::Empty);
        };
        let start = first.l;
        if start != 1 && start != 2 {
            return Err(TableError::NonContiguous {
                expected: 1,
                found: start,
            });
        }
        let mut r3 = Vec::new();
        if start == 2 {
            r3.push(Bound::exact(1));
        }
        for (i, e) in entries.iter().enumerate() {
            let expected = start + i as u32;
            if e.l != expected {
                return Err(TableError::NonContiguous { expected, found: e.l });
            }
            r3.push(Bound { lo: e.lo, hi: e.hi });
        }
        RamseyTable::new(r3, f.r44)
    }

    pub fn load(path: &Path) -> Result<Self, TableError> {
        let s = std::fs::read_to_string(path)?;
        Self::from_json_str(&s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = TableFile {
            r3: self
                .r3
                .iter()
                .enumerate()
                .map(|(i, b)| TableEntryFile {
                    l: i as u32 + 1,
                    lo: b.lo,
                    hi: b.hi,
                })
                .collect(),
            r44: self.r44,
        };
        serde_json::to_value(f).expect("table serializes")
    }

    /// Largest ℓ in the table.
    pub fn max_l(&self) -> u32 {
        self.r3.len() as u32
    }

    pub fn bound(&self, l: u32) -> Option<Bound> {
        if l == 0 {
            return None;
        }
        self.r3.get(l as usize - 1).copied()
    }

    pub fn r3(&self, l: u32) -> PartialValue {
        self.bound(l).map_or(PartialValue::Unknown, |b| b.value())
    }

    pub fn r3_exact(&self, l: u32) -> Option<u64> {
        self.bound(l).and_then(|b| b.exact_value())
    }

    /// Returns a copy with R(3,ℓ) replaced.
    pub fn with_entry(&self, l: u32, b: Bound) -> Self {
        let mut t = self.clone();
        t.r3[l as usize - 1] = b;
        t
    }

    /// Largest n for which α(n) is bounded (some entry provably exceeds n).
    pub fn coverage(&self) -> u64 {
        self.r3.iter().map(|b| b.lo).max().unwrap_or(1) - 1
    }
}

// ---------------------------------------------------------------------------
// worlds

const WORLD_BUDGET: u64 = 20_000;

/// One strictly increasing completion of the table, truncated at `cutoff`.
#[derive(Debug, Clone)]
pub(crate) struct World {
    /// α(m) for m = 0..=cutoff.
    alpha: Vec<u32>,
    ramsey: Vec<bool>,
}

impl World {
    fn from_values(vals: &[Option<u64>], cutoff: u64) -> Self {
        let c = cutoff as usize;
        let mut ramsey = vec![false; c + 1];
        for v in vals.iter().flatten() {
            ramsey[*v as usize] = true;
        }
        let mut alpha = vec![0u32; c + 1];
        let mut k = 0;
        for m in 0..=c {
            if ramsey[m] {
                k += 1;
            }
            alpha[m] = k;
        }
        World { alpha, ramsey }
    }

    pub(crate) fn alpha(&self, m: u64) -> u32 {
        self.alpha[m as usize]
    }

    pub(crate) fn is_ramsey(&self, m: u64) -> bool {
        self.ramsey[m as usize]
    }

    /// Least odd split (n₁ ≤ n₂) witnessing Ramsey-perfection.
    pub(crate) fn perfect_split(&self, m: u64) -> Option<(u64, u64)> {
        if m % 2 == 1 || self.is_ramsey(m) {
            return None;
        }
        let a = self.alpha(m);
        (5..=m / 2)
            .step_by(2)
            .map(|n1| (n1, m - n1))
            .find(|&(n1, n2)| n2 >= 5 && self.alpha(n1) + self.alpha(n2) == a)
    }

    /// The equivalent characterisation: m = R(3,α₁+α₂)+1 =
    /// R(3,α₁+1)−1 + R(3,α₂+1)−1 with α₁ ≥ α₂ ≥ 2 and both R(3,αᵢ+1) even.
    pub(crate) fn perfect_by_ramsey_sum(&self, m: u64) -> bool {
        if m < 2 {
            return false;
        }
        let rs: Vec<u64> = (0..self.ramsey.len() as u64).filter(|&v| self.is_ramsey(v)).collect();
        // rs[i] = R(3, i+1)
        let r = |l: u32| rs.get(l as usize - 1).copied();
        for a2 in 2u32.. {
            if r(a2 + 1).is_none() {
                break;
            }
            for a1 in a2.. {
                let (Some(r1), Some(r2)) = (r(a1 + 1), r(a2 + 1)) else {
                    break;
                };
                if r1 + r2 - 2 > m {
                    break;
                }
                if r1 % 2 == 0 && r2 % 2 == 0 && r1 + r2 - 2 == m && r(a1 + a2) == Some(m - 1) {
                    return true;
                }
            }
        }
        false
    }

    pub(crate) fn epsilon(&self, m: u64) -> u32 {
        let even_ramsey = m.is_multiple_of(2) && self.is_ramsey(m);
        (even_ramsey || self.perfect_split(m).is_some()) as u32
    }

    pub(crate) fn gap2(&self, m: u64) -> i64 {
        m.div_ceil(2) as i64 - self.alpha(m) as i64 + self.epsilon(m) as i64
    }
}

pub(crate) enum Worlds {
    Enumerated(Vec<World>),
    TooMany,
    Uncovered,
}

impl RamseyTable {
    /// Option sets per ℓ: concrete values ≤ cutoff, plus `None` for "above".
    fn options(&self, cutoff: u64) -> Vec<Vec<Option<u64>>> {
        self.r3
            .iter()
            .map(|b| {
                let top = b.hi.map_or(cutoff, |h| h.min(cutoff));
                let mut o: Vec<Option<u64>> = (b.lo..=top).map(Some).collect();
                if b.hi.is_none_or(|h| h > cutoff) {
                    o.push(None);
                }
                o
            })
            .collect()
    }

    fn count_worlds(opts: &[Vec<Option<u64>>], cutoff: u64) -> u64 {
        // ways[v] = completions of the remaining entries given previous value v
        // (index cutoff+1 stands for "above")
        let above = cutoff as usize + 1;
        let mut ways = vec![1u64; above + 1];
        for o in opts.iter().rev() {
            let mut next = vec![0u64; above + 1];
            for (prev, slot) in next.iter_mut().enumerate() {
                let mut total = 0u64;
                for &x in o {
                    let ok = match x {
                        Some(v) => prev != above && v as usize > prev,
                        None => true,
                    };
                    if ok {
                        let idx = x.map_or(above, |v| v as usize);
                        total = total.saturating_add(ways[idx]);
                    }
                }
                *slot = total;
            }
            ways = next;
        }
        ways[0]
    }

    pub(crate) fn worlds(&self, cutoff: u64) -> Worlds {
        if cutoff > self.coverage() {
            return Worlds::Uncovered;
        }
        let opts = self.options(cutoff);
        if Self::count_worlds(&opts, cutoff) > WORLD_BUDGET {
            return Worlds::TooMany;
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(opts.len());
        fn rec(
            opts: &[Vec<Option<u64>>],
            cur: &mut Vec<Option<u64>>,
            prev: Option<Option<u64>>,
            cutoff: u64,
            out: &mut Vec<World>,
        ) {
            let i = cur.len();
            if i == opts.len() {
                out.push(World::from_values(cur, cutoff));
                return;
            }
            for &x in &opts[i] {
                let ok = match (prev, x) {
                    (None, _) => true,
                    (Some(None), Some(_)) => false,
                    (Some(Some(p)), Some(v)) => v > p,
                    (Some(_), None) => true,
                };
                if ok {
                    cur.push(x);
                    rec(opts, cur, Some(x), cutoff, out);
                    cur.pop();
                }
            }
        }
        rec(&opts, &mut cur, None, cutoff, &mut out);
        Worlds::Enumerated(out)
    }

    /// Min/max of an integer quantity over all worlds at `cutoff`.
    pub(crate) fn eval_range(&self, cutoff: u64, f: impl Fn(&World) -> i64) -> Option<PartialValue> {
        match self.worlds(cutoff) {
            Worlds::Enumerated(ws) if !ws.is_empty() => {
                let vals: Vec<i64> = ws.iter().map(f).collect();
                let lo = *vals.iter().min().unwrap();
                let hi = *vals.iter().max().unwrap();
                Some(PartialValue::range(lo, hi))
            }
            _ => None,
        }
    }

    pub(crate) fn eval_truth(&self, cutoff: u64, f: impl Fn(&World) -> bool) -> Option<Truth> {
        self.eval_range(cutoff, |w| f(w) as i64).map(|v| match v {
            PartialValue::Exact(1) => Truth::Yes,
            PartialValue::Exact(0) => Truth::No,
            _ => Truth::Unknown,
        })
    }

    // interval fallbacks ----------------------------------------------------

    fn alpha_interval(&self, n: u64) -> PartialValue {
        let lo = self
            .r3
            .iter()
            .rposition(|b| b.hi.is_some_and(|h| h <= n))
            .map_or(0, |i| i as i64 + 1);
        if n > self.coverage() {
            return PartialValue::at_least(lo);
        }
        let hi = self.r3.iter().rposition(|b| b.lo <= n).map_or(0, |i| i as i64 + 1);
        PartialValue::range(lo, hi)
    }

    fn ramsey_interval(&self, n: u64) -> Truth {
        if self.r3.iter().any(|b| b.exact_value() == Some(n)) {
            Truth::Yes
        } else if n <= self.coverage() && !self.r3.iter().any(|b| b.may_be(n)) {
            Truth::No
        } else {
            Truth::Unknown
        }
    }
}

// ---------------------------------------------------------------------------
// public queries

/// α(n): the ℓ with R(3,ℓ) ≤ n < R(3,ℓ+1).
pub fn alpha_of(n: u64, t: &RamseyTable) -> PartialValue {
    t.eval_range(n, |w| w.alpha(n) as i64)
        .unwrap_or_else(|| t.alpha_interval(n))
}

pub fn is_ramsey_number(n: u64, t: &RamseyTable) -> Truth {
    t.eval_truth(n, |w| w.is_ramsey(n))
        .unwrap_or_else(|| t.ramsey_interval(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyPerfectCertificate {
    pub n: u64,
    pub n1: u64,
    pub n2: u64,
    pub alpha1: u64,
    pub alpha2: u64,
    pub alpha_n: u64,
    /// R(3, α₁+α₂), which must equal n − 1.
    pub ramsey_below: u64,
}

impl RamseyPerfectCertificate {
    /// Re-checks every equality against the table.
    pub fn verify(&self, t: &RamseyTable) -> bool {
        let ex = |m: u64| alpha_of(m, t).exact();
        self.n1 % 2 == 1
            && self.n2 % 2 == 1
            && self.n1 >= 5
            && self.n2 >= 5
            && self.n1 + self.n2 == self.n
            && ex(self.n1) == Some(self.alpha1 as i64)
            && ex(self.n2) == Some(self.alpha2 as i64)
            && ex(self.n) == Some(self.alpha_n as i64)
            && self.alpha1 + self.alpha2 == self.alpha_n
            && is_ramsey_number(self.n, t) == Truth::No
            && t.r3_exact((self.alpha1 + self.alpha2) as u32) == Some(self.ramsey_below)
            && self.ramsey_below + 1 == self.n
    }
}

/// Three-valued Ramsey-perfection with a certificate on a definite yes.
pub fn is_ramsey_perfect(n: u64, t: &RamseyTable) -> (Truth, Option<RamseyPerfectCertificate>) {
    let truth = t
        .eval_truth(n, |w| w.perfect_split(n).is_some())
        .unwrap_or_else(|| perfect_interval(n, t));
    if truth != Truth::Yes {
        return (truth, None);
    }
    let Worlds::Enumerated(ws) = t.worlds(n) else {
        unreachable!("a definite answer comes from enumerated worlds")
    };
    let w = &ws[0];
    let (n1, n2) = w.perfect_split(n).expect("all worlds agree");
    let cert = RamseyPerfectCertificate {
        n,
        n1,
        n2,
        alpha1: w.alpha(n1) as u64,
        alpha2: w.alpha(n2) as u64,
        alpha_n: w.alpha(n) as u64,
        ramsey_below: n - 1,
    };
    (Truth::Yes, Some(cert))
}

fn perfect_interval(n: u64, t: &RamseyTable) -> Truth {
    if n < 2 || n % 2 == 1 || t.ramsey_interval(n) == Truth::Yes || t.ramsey_interval(n - 1) == Truth::No {
        Truth::No
    } else {
        Truth::Unknown
    }
}

/// Ramsey-perfection through the sum-of-Ramsey-numbers characterisation.
pub fn is_ramsey_perfect_by_ramsey_sum(n: u64, t: &RamseyTable) -> Truth {
    t.eval_truth(n, |w| w.perfect_by_ramsey_sum(n))
        .unwrap_or_else(|| perfect_interval(n, t))
}

/// ε(n) = 1 iff n is an even Ramsey number or Ramsey-perfect.
pub fn epsilon_of(n: u64, t: &RamseyTable) -> PartialValue {
    if let Some(v) = t.eval_range(n, |w| w.epsilon(n) as i64) {
        return v;
    }
    if n % 2 == 1 {
        return PartialValue::Exact(0);
    }
    let r = t.ramsey_interval(n);
    let p = perfect_interval(n, t);
    if r == Truth::Yes || p == Truth::Yes {
        PartialValue::Exact(1)
    } else if r == Truth::No && p == Truth::No {
        PartialValue::Exact(0)
    } else {
        PartialValue::range(0, 1)
    }
}

/// ⌈n/2⌉ − α(n) + ε(n), evaluated jointly over worlds when possible.
pub(crate) fn gap2_partial(n: u64, t: &RamseyTable) -> PartialValue {
    if n == 0 {
        return PartialValue::Exact(0);
    }
    if let Some(v) = t.eval_range(n, |w| w.gap2(n)) {
        return v;
    }
    let a = alpha_of(n, t);
    let e = epsilon_of(n, t);
    let half = n.div_ceil(2) as i64;
    match (a.lo(), a.hi(), e.lo(), e.hi()) {
        (Some(alo), Some(ahi), Some(elo), Some(ehi)) => PartialValue::range(half - ahi + elo, half - alo + ehi),
        _ => PartialValue::Unknown,
    }
}

/// Consecutive exact pairs (R(3,ℓ), R(3,ℓ+1)) at distance 3, ℓ+1 ≤ `up_to`.
pub fn find_twins(t: &RamseyTable, up_to: u32) -> Vec<(u64, u64)> {
    let top = up_to.min(t.max_l());
    (1..top)
        .filter_map(|l| {
            let a = t.r3_exact(l)?;
            let b = t.r3_exact(l + 1)?;
            (b == a + 3).then_some((a, b))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// validation

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

fn bound_hi(b: Bound) -> Option<i64> {
    b.hi.map(|h| h as i64)
}

/// Reports every inequality that provably fails for all completions of the
/// given bounds.
pub fn validate_table(t: &RamseyTable) -> Vec<Violation> {
    let mut out = Vec::new();
    let lmax = t.max_l();
    let b = |l: u32| t.bound(l).unwrap();
    let mut push = |rule: &str, detail: String| {
        out.push(Violation {
            rule: rule.to_string(),
            detail,
        })
    };

    // strictly increasing
    for l in 1..lmax {
        if let Some(h) = b(l + 1).hi {
            if h <= b(l).lo {
                push(
                    "monotone",
                    format!("R(3,{}) <= {} but R(3,{}) >= {}", l + 1, h, l, b(l).lo),
                );
            }
        }
    }

    // cons1: α+1 ≥ R(3,α+1) − R(3,α) ≥ 3 (lower side for α ≥ 2), both strict
    // when both values are even
    for a in 1..lmax {
        let (x, y) = (b(a), b(a + 1));
        let cap = |bd: Bound| bd.hi.unwrap_or(bd.lo + 256);
        let mut ok = false;
        'search: for u in x.lo..=cap(x) {
            for v in y.lo.max(u + 1)..=cap(y) {
                let d = v - u;
                let both_even = u % 2 == 0 && v % 2 == 0;
                let upper_ok = if both_even { d < a as u64 + 1 } else { d <= a as u64 + 1 };
                let lower_ok = a < 2 || if both_even { d > 3 } else { d >= 3 };
                if upper_ok && lower_ok {
                    ok = true;
                    break 'search;
                }
                if d > a as u64 + 1 {
                    break;
                }
            }
        }
        if !ok {
            push(
                "cons1",
                format!(
                    "no admissible R(3,{})-R(3,{}) within [3, {}] at alpha={}",
                    a + 1,
                    a,
                    a + 1,
                    a
                ),
            );
        }
    }

    // fixed-offset lower bounds: (k, constant, least α)
    let mut fixed: Vec<(&str, u32, i64, u32)> = vec![
        ("cons2", 2, 7, 3),
        ("cons3", 3, 11, 2),
        ("cons4", 4, 17, 3),
        ("cons55", 5, 22, 3),
        ("cons55", 6, 28, 3),
        ("cons55", 7, 34, 3),
        ("cons6", 14, 86, 3),
    ];
    for (k, c) in [(8, 43), (9, 48), (10, 55), (11, 62), (12, 70), (13, 78)] {
        fixed.push(("cons56", k, c, 4));
    }
    for (rule, k, c, amin) in fixed {
        for a in amin..=lmax.saturating_sub(k) {
            if let Some(h) = bound_hi(b(a + k)) {
                let diff_max = h - b(a).lo as i64;
                if diff_max < c {
                    push(rule, format!("R(3,{})-R(3,{}) <= {} < {}", a + k, a, diff_max, c));
                }
            }
        }
    }

    // cons5: R(3,α+k) − R(3,α) ≥ R(3,k+1) + k − 1 for α ≥ k+1 ≥ 3
    for k in 2..lmax {
        for a in (k + 1)..=lmax.saturating_sub(k) {
            if let Some(h) = bound_hi(b(a + k)) {
                let diff_max = h - b(a).lo as i64;
                let need = b(k + 1).lo as i64 + k as i64 - 1;
                if diff_max < need {
                    push(
                        "cons5",
                        format!(
                            "R(3,{})-R(3,{}) <= {} < R(3,{})+{} >= {}",
                            a + k,
                            a,
                            diff_max,
                            k + 1,
                            k - 1,
                            need
                        ),
                    );
                }
            }
        }
    }

    // R(3,p+q−1) ≥ R(3,p) + R(3,q) + min(p,q) − 2 for p, q ≥ 2
    for p in 2..=lmax {
        for q in p..=lmax {
            let s = p + q - 1;
            if s > lmax {
                break;
            }
            if let Some(h) = bound_hi(b(s)) {
                let need = b(p).lo as i64 + b(q).lo as i64 + p.min(q) as i64 - 2;
                if h < need {
                    push(
                        "conn",
                        format!("R(3,{s}) <= {h} < R(3,{p})+R(3,{q})+{} >= {need}", p.min(q) - 2),
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_entries() {
        let t = default_table();
        assert_eq!(t.r3(5), PartialValue::Exact(14));
        assert_eq!(t.r3(10), PartialValue::range(40, 43));
        assert_eq!(t.r3(1), PartialValue::Exact(1));
        assert_eq!(t.r3(29), PartialValue::at_least(182));
        assert_eq!(t.r44.exact_value(), Some(18));
        assert_eq!(t.coverage(), 181);
    }

    #[test]
    fn alpha_values() {
        let t = default_table();
        assert_eq!(alpha_of(13, &t), PartialValue::Exact(4));
        assert_eq!(alpha_of(10, &t), PartialValue::Exact(4));
        assert_eq!(alpha_of(5, &t), PartialValue::Exact(2));
        assert_eq!(alpha_of(1, &t), PartialValue::Exact(1));
        assert_eq!(alpha_of(40, &t), PartialValue::range(9, 10));
        assert_eq!(alpha_of(100, &t), PartialValue::range(15, 18));
        assert_eq!(alpha_of(500, &t), PartialValue::at_least(15));
    }

    #[test]
    fn epsilon_and_perfect() {
        let t = default_table();
        assert_eq!(epsilon_of(18, &t), PartialValue::Exact(1));
        assert_eq!(epsilon_of(10, &t), PartialValue::Exact(1));
        assert_eq!(epsilon_of(13, &t), PartialValue::Exact(0));
        let (p, c) = is_ramsey_perfect(10, &t);
        assert_eq!(p, Truth::Yes);
        let c = c.unwrap();
        assert_eq!((c.n1, c.n2, c.alpha1, c.alpha2), (5, 5, 2, 2));
        assert!(c.verify(&t));
        assert_eq!(is_ramsey_perfect(16, &t).0, Truth::No);
        // 40: an odd split reaching α(40) needs α(40) = 10, i.e. R(3,10) = 40,
        // which makes 40 an even Ramsey number
        assert_eq!(is_ramsey_perfect(40, &t).0, Truth::No);
        assert_eq!(is_ramsey_perfect(42, &t).0, Truth::No);
    }

    #[test]
    fn twins() {
        let t = default_table();
        assert_eq!(find_twins(&t, 9), vec![(3, 6), (6, 9)]);
        assert_eq!(find_twins(&t, 29), vec![(3, 6), (6, 9)]);
        let t2 = t.with_entry(5, Bound::exact(12));
        assert_eq!(find_twins(&t2, 9), vec![(3, 6), (6, 9), (9, 12)]);
    }

    #[test]
    fn validation() {
        let t = default_table();
        assert_eq!(validate_table(&t), vec![]);
        let bad = t.with_entry(5, Bound::exact(20));
        let v = validate_table(&bad);
        assert!(v.iter().any(|x| x.rule == "cons1" && x.detail.contains("alpha=4")));
        let r7 = t.with_entry(7, Bound::exact(21));
        let v = validate_table(&r7);
        assert!(v
            .iter()
            .any(|x| x.rule == "cons4" && x.detail.starts_with("R(3,7)-R(3,3)")));
    }

    #[test]
    fn json_round_trip() {
        let t = default_table();
        let j = t.to_json();
        assert_eq!(j["r3"][1], serde_json::json!({"l": 2, "lo": 3, "hi": 3}));
        assert_eq!(j["r3"][28], serde_json::json!({"l": 29, "lo": 182}));
        let back = RamseyTable::from_json_str(&j.to_string()).unwrap();
        assert_eq!(back, t);
        let no_one = r#"{"r3":[{"l":2,"lo":3,"hi":3},{"l":3,"lo":6,"hi":6}],"r44":{"lo":18,"hi":18}}"#;
        let t2 = RamseyTable::from_json_str(no_one).unwrap();
        assert_eq!(t2.r3(1), PartialValue::Exact(1));
        let gap = r#"{"r3":[{"l":2,"lo":3,"hi":3},{"l":4,"lo":9,"hi":9}],"r44":{"lo":18}}"#;
        assert!(matches!(
            RamseyTable::from_json_str(gap),
            Err(TableError::NonContiguous { expected: 3, found: 4 })
        ));
        let inv = r#"{"r3":[{"l":2,"lo":5,"hi":3}],"r44":{"lo":18}}"#;
        assert!(matches!(
            RamseyTable::from_json_str(inv),
            Err(TableError::EmptyInterval { .. })
        ));
    }

    #[test]
    fn partial_value_json() {
        let v = serde_json::to_value(PartialValue::Exact(4)).unwrap();
        assert_eq!(v, serde_json::json!({"lo": 4, "hi": 4}));
        let v = serde_json::to_value(PartialValue::at_least(4)).unwrap();
        assert_eq!(v, serde_json::json!({"lo": 4, "hi": null}));
        let back: PartialValue = serde_json::from_value(serde_json::json!({"lo": 3, "hi": 5})).unwrap();
        assert_eq!(back, PartialValue::range(3, 5));
    }

    #[test]
    fn perfect_characterisations_agree() {
        let t = default_table();
        for n in 1..=39 {
            assert_eq!(
                is_ramsey_perfect(n, &t).0,
                is_ramsey_perfect_by_ramsey_sum(n, &t),
                "n={n}"
            );
        }
    }
}
