//! Exhaustive verifier for the extremal engine.
//!
//! Every bipartite graph on `n` vertices appears, up to isomorphism, as an
//! `m`-subset of the `k(n-k)` biadjacency cells for some `k >= ⌈n/2⌉`
//! (smaller `k` are side swaps of larger ones). The oracle walks all of
//! those subsets as `u64` cell masks, so it never touches the engine's
//! formulas or constructions.
//!
//! Work is split by `k` and by ranges of the colexicographic combination
//! rank. The first pass finds the maximum `σ₂`, the second collects every
//! labeled maximizer; both are associative reductions over chunks.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::CanonicalForm;
use crate::error::OracleError;
use crate::extremal::{classify, max_edges, GraphParams, Regime};
use crate::graph::BipartiteGraph;

/// Largest `n` accepted for exhaustive enumeration.
pub const MAX_ORACLE_N: u64 = 10;

/// Cap on stored maximizer representatives per instance.
pub const MAX_REPRESENTATIVES: usize = 10_000;

const CHUNK: u64 = 1 << 14;

/// `C(n, r)`; exact for every value the oracle needs (`n <= 25`).
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Cell layout for a bipartition `(k, n-k)`: cell `y * k + x` is `x -- y`.
#[derive(Debug, Clone)]
struct Layout {
    k: usize,
    rows: usize,
    row_mask: u64,
    col_masks: Vec<u64>,
}

impl Layout {
    fn new(k: usize, rows: usize) -> Self {
        let row_mask = (1u64 << k) - 1;
        let col_masks = (0..k)
            .map(|x| (0..rows).fold(0, |acc, y| acc | 1u64 << (y * k + x)))
            .collect();
        Self {
            k,
            rows,
            row_mask,
            col_masks,
        }
    }

    fn cells(&self) -> u64 {
        (self.k * self.rows) as u64
    }

    fn sigma2(&self, mask: u64) -> u64 {
        let rows: u64 = (0..self.rows)
            .map(|y| {
                let d = u64::from(((mask >> (y * self.k)) & self.row_mask).count_ones());
                d * d
            })
            .sum();
        let cols: u64 = self
            .col_masks
            .iter()
            .map(|&c| {
                let d = u64::from((mask & c).count_ones());
                d * d
            })
            .sum();
        rows + cols
    }

    fn graph(&self, mask: u64) -> BipartiteGraph {
        let mut g = BipartiteGraph::empty(self.k, self.rows).expect("both sides nonempty");
        for bit in 0..self.cells() as usize {
            if mask >> bit & 1 == 1 {
                g.insert_edge(bit % self.k, bit / self.k)
                    .expect("cell inside layout");
            }
        }
        g
    }
}

/// The `rank`-th `m`-subset of `0..cells` in colexicographic order, which is
/// the order Gosper's hack steps through.
fn unrank(cells: u64, m: u64, mut rank: u64) -> u64 {
    let mut mask = 0;
    let mut top = cells;
    for i in (1..=m).rev() {
        let mut c = top - 1;
        while binomial(c, i) > rank {
            c -= 1;
        }
        mask |= 1 << c;
        rank -= binomial(c, i);
        top = c;
    }
    mask
}

/// Next larger integer with the same popcount. `x` must be nonzero.
fn next_combination(x: u64) -> u64 {
    let low = x & x.wrapping_neg();
    let ripple = x + low;
    (((ripple ^ x) >> 2) / low) | ripple
}

/// Iterator over the masks of one rank range.
struct MaskRange {
    next: u64,
    left: u64,
}

impl MaskRange {
    fn new(cells: u64, m: u64, start: u64, len: u64) -> Self {
        Self {
            next: unrank(cells, m, start),
            left: len,
        }
    }
}

impl Iterator for MaskRange {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.left == 0 {
            return None;
        }
        let current = self.next;
        self.left -= 1;
        if self.left > 0 {
            self.next = next_combination(current);
        }
        Some(current)
    }
}

/// Every labeled graph with `m` edges on the bipartition `(k, n-k)`.
pub fn labeled_graphs(n: usize, m: usize, k: usize) -> impl Iterator<Item = BipartiteGraph> {
    let layout = Layout::new(k, n - k);
    let cells = layout.cells();
    let total = binomial(cells, m as u64);
    MaskRange::new(cells, m as u64, 0, total).map(move |mask| layout.graph(mask))
}

#[derive(Debug, Clone, Copy)]
struct WorkItem {
    k: usize,
    start: u64,
    len: u64,
}

fn work_items(n: usize, m: u64, sides: impl Iterator<Item = usize>) -> Vec<WorkItem> {
    let mut items = Vec::new();
    for k in sides {
        let total = binomial((k * (n - k)) as u64, m);
        let mut start = 0;
        while start < total {
            let len = CHUNK.min(total - start);
            items.push(WorkItem { k, start, len });
            start += len;
        }
    }
    items
}

fn check_size(n: u64) -> Result<(), OracleError> {
    if n > MAX_ORACLE_N {
        return Err(OracleError::SizeBound {
            n,
            max: MAX_ORACLE_N,
        });
    }
    Ok(())
}

/// Brute-force maximum of `σ₂` over labeled graphs on one bipartition
/// `(k, n-k)`, with the number of candidates examined. `None` when no graph
/// with `m` edges fits.
pub fn side_maximum(n: u64, m: u64, k: u64) -> Result<Option<(u128, u64)>, OracleError> {
    GraphParams::new(n, m)?;
    check_size(n)?;
    let (n, k) = (n as usize, k as usize);
    if k == 0 || k >= n {
        return Ok(None);
    }
    let items = work_items(n, m, std::iter::once(k));
    let layout = Layout::new(k, n - k);
    let cells = layout.cells();
    let (best, count) = items
        .par_iter()
        .map(|it| {
            MaskRange::new(cells, m, it.start, it.len).fold((None, 0u64), |(best, count), mask| {
                (best.max(Some(layout.sigma2(mask))), count + 1)
            })
        })
        .reduce(|| (None, 0), |(a, ca), (b, cb)| (a.max(b), ca + cb));
    Ok(best.map(|b| (u128::from(b), count)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agree,
    ValueMismatch,
    SetMismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "agree",
            Verdict::ValueMismatch => "value_mismatch",
            Verdict::SetMismatch => "set_mismatch",
        })
    }
}

/// A maximizer found by enumeration, with the least `(k, mask)` labeling seen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maximizer {
    pub canonical: CanonicalForm,
    pub graph: BipartiteGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub params: GraphParams,
    pub brute_max: u128,
    /// Sorted by canonical form when deduplicated, by labeling otherwise.
    pub maximizers: Vec<Maximizer>,
    /// Set when more than [`MAX_REPRESENTATIVES`] maximizers were found.
    pub truncated: bool,
    pub enumeration_count: u64,
    pub engine_regime: Option<Regime>,
    pub engine_max: Option<u128>,
    pub engine_classes: Vec<CanonicalForm>,
    pub verdict: Option<Verdict>,
}

impl OracleReport {
    /// Sorted, deduplicated canonical forms of the brute-force maximizers.
    pub fn maximizer_classes(&self) -> Vec<CanonicalForm> {
        let mut forms: Vec<_> = self
            .maximizers
            .iter()
            .map(|m| m.canonical.clone())
            .collect();
        forms.sort();
        forms.dedup();
        forms
    }

    /// `n m regime brute_max engine_max classes verdict`
    pub fn summary_line(&self) -> String {
        let dash = || "-".to_string();
        format!(
            "{} {} {} {} {} {} {}",
            self.params.n(),
            self.params.m(),
            self.engine_regime.map_or("-", Regime::name),
            self.brute_max,
            self.engine_max.map_or_else(dash, |v| v.to_string()),
            self.maximizer_classes().len(),
            self.verdict.map_or_else(dash, |v| v.to_string()),
        )
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            n: u64,
            m: u64,
            regime: Option<Regime>,
            brute_max: u128,
            engine_max: Option<u128>,
            maximizer_classes: Vec<CanonicalForm>,
            engine_classes: &'a [CanonicalForm],
            truncated: bool,
            enumeration_count: u64,
            verdict: Option<Verdict>,
        }
        serde_json::to_string(&Record {
            n: self.params.n(),
            m: self.params.m(),
            regime: self.engine_regime,
            brute_max: self.brute_max,
            engine_max: self.engine_max,
            maximizer_classes: self.maximizer_classes(),
            engine_classes: &self.engine_classes,
            truncated: self.truncated,
            enumeration_count: self.enumeration_count,
            verdict: self.verdict,
        })
        .expect("plain data serializes")
    }
}

/// Exhaustive maximum and maximizer set for `params`. With `dedup`, keeps one
/// representative per isomorphism class; otherwise every labeled maximizer.
pub fn enumerate_max(params: GraphParams, dedup: bool) -> Result<OracleReport, OracleError> {
    check_size(params.n())?;
    let n = params.n() as usize;
    let m = params.m();
    let lo = params.half_ceil() as usize;
    let layouts: Vec<Layout> = (lo..n).map(|k| Layout::new(k, n - k)).collect();
    let items = work_items(n, m, lo..n);

    let (best, enumeration_count) = items
        .par_iter()
        .map(|it| {
            let layout = &layouts[it.k - lo];
            MaskRange::new(layout.cells(), m, it.start, it.len)
                .fold((0u64, 0u64), |(best, count), mask| {
                    (best.max(layout.sigma2(mask)), count + 1)
                })
        })
        .reduce(|| (0, 0), |(a, ca), (b, cb)| (a.max(b), ca + cb));

    let mut labeled: Vec<(usize, u64)> = items
        .par_iter()
        .flat_map_iter(|it| {
            let layout = &layouts[it.k - lo];
            MaskRange::new(layout.cells(), m, it.start, it.len)
                .filter(move |&mask| layout.sigma2(mask) == best)
                .map(move |mask| (it.k, mask))
        })
        .collect();
    labeled.sort_unstable();

    let with_forms: Vec<Maximizer> = labeled
        .par_iter()
        .map(|&(k, mask)| {
            let graph = layouts[k - lo].graph(mask);
            let canonical = graph.canonical_form()?;
            Ok(Maximizer { canonical, graph })
        })
        .collect::<Result<_, OracleError>>()?;

    let mut maximizers = if dedup {
        // `labeled` is sorted, so the first labeling of each class wins.
        let mut classes = BTreeMap::new();
        for mx in with_forms {
            classes.entry(mx.canonical.clone()).or_insert(mx);
        }
        classes.into_values().collect()
    } else {
        with_forms
    };
    let truncated = maximizers.len() > MAX_REPRESENTATIVES;
    maximizers.truncate(MAX_REPRESENTATIVES);

    Ok(OracleReport {
        params,
        brute_max: u128::from(best),
        maximizers,
        truncated,
        enumeration_count,
        engine_regime: None,
        engine_max: None,
        engine_classes: Vec::new(),
        verdict: None,
    })
}

/// Enumerates `params` and compares against the engine's classification.
pub fn verify(params: GraphParams) -> Result<OracleReport, OracleError> {
    let mut report = enumerate_max(params, true)?;
    let classification = classify(params)?;

    let mut engine_classes = classification
        .constructions
        .iter()
        .map(|c| Ok(c.graph()?.canonical_form()?))
        .collect::<Result<Vec<_>, OracleError>>()?;
    engine_classes.sort();
    engine_classes.dedup();

    report.verdict = Some(if report.brute_max != classification.max_sigma2 {
        Verdict::ValueMismatch
    } else if report.truncated || report.maximizer_classes() != engine_classes {
        Verdict::SetMismatch
    } else {
        Verdict::Agree
    });
    report.engine_regime = Some(classification.regime);
    report.engine_max = Some(classification.max_sigma2);
    report.engine_classes = engine_classes;
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub instances: usize,
    pub agreements: usize,
    /// One report per instance, ordered by `(n, m)`.
    pub reports: Vec<OracleReport>,
}

impl SweepSummary {
    pub fn disagreements(&self) -> impl Iterator<Item = &OracleReport> {
        self.reports
            .iter()
            .filter(|r| r.verdict != Some(Verdict::Agree))
    }

    pub fn all_agree(&self) -> bool {
        self.agreements == self.instances
    }
}

/// Runs [`verify`] on every `2 <= n <= n_max`, `0 <= m <= ⌊n/2⌋⌈n/2⌉`.
pub fn verify_sweep(n_max: u64) -> Result<SweepSummary, OracleError> {
    if !(2..=MAX_ORACLE_N).contains(&n_max) {
        return Err(OracleError::SweepBound {
            n_max,
            max: MAX_ORACLE_N,
        });
    }
    let instances: Vec<GraphParams> = (2..=n_max)
        .flat_map(|n| (0..=max_edges(n)).map(move |m| (n, m)))
        .map(|(n, m)| GraphParams::new(n, m))
        .collect::<Result<_, _>>()?;

    let reports = instances
        .par_iter()
        .map(|&p| verify(p))
        .collect::<Result<Vec<_>, _>>()?;
    let agreements = reports
        .iter()
        .filter(|r| r.verdict == Some(Verdict::Agree))
        .count();
    Ok(SweepSummary {
        instances: reports.len(),
        agreements,
        reports,
    })
}
