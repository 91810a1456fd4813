//! Extremal values and extremal graphs for `σ₂` over bipartite graphs.
//!
//! For `n` vertices and `m` edges the maximizers are built from the family
//! `Bˡ(n, m, k)`: a bipartition with `|X| = k`, where `m = qk + r`
//! (`0 <= r < k`), `q` vertices of `Y` are joined to all of `X` and, when
//! `r > 0`, one more `Y` vertex is joined to the first `r` vertices of `X`.
//!
//! * `m <= n - 1`: the unique maximizer is the star `K_{1,m}` plus
//!   `n - m - 1` isolated vertices, materialized as `Bˡ(n, m, n - 1)`.
//! * `m >= n`: with `k₀` the largest feasible `k >= ⌈n/2⌉`, the maximizers
//!   are `Bˡ(n, m, k₀)` and, depending on how `m` compares with
//!   `(n - k₀)(k₀ - 1)`, also `Bˡ(n, m, n - k₀)` and `Bˡ(n, m, k₀ - 1)`.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::canon::{CanonicalForm, MAX_CANONICAL_N};
use crate::error::EngineError;
use crate::graph::{BipartiteGraph, DegreeSequence};

/// Upper bound on `n`; keeps every closed form well inside `i128`.
pub const MAX_VERTICES: u64 = 1_000_000;

/// `⌊n/2⌋⌈n/2⌉`, the most edges a bipartite graph on `n` vertices can have.
pub fn max_edges(n: u64) -> u64 {
    (n / 2) * n.div_ceil(2)
}

/// A problem instance: `n >= 2` vertices and `0 <= m <= ⌊n/2⌋⌈n/2⌉` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphParams {
    n: u64,
    m: u64,
}

impl GraphParams {
    pub fn new(n: u64, m: u64) -> Result<Self, EngineError> {
        if n < 2 {
            return Err(EngineError::TooFewVertices(n));
        }
        if n > MAX_VERTICES {
            return Err(EngineError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let limit = max_edges(n);
        if m > limit {
            return Err(EngineError::TooManyEdges { n, m, limit });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `m <= n - 1`, where the star is extremal.
    pub fn is_star_regime(&self) -> bool {
        self.m < self.n
    }

    /// `⌈n/2⌉`, the smallest side size worth considering.
    pub fn half_ceil(&self) -> u64 {
        self.n.div_ceil(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

impl Sign {
    pub fn value(self) -> i64 {
        self as i64
    }
}

pub fn sgn(x: i64) -> Sign {
    match x.cmp(&0) {
        Ordering::Less => Sign::Negative,
        Ordering::Equal => Sign::Zero,
        Ordering::Greater => Sign::Positive,
    }
}

/// `(n, m, k)` together with `m = qk + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalSpec {
    pub params: GraphParams,
    pub k: u64,
    pub q: u64,
    pub r: u64,
}

impl CanonicalSpec {
    pub fn n(&self) -> u64 {
        self.params.n
    }

    pub fn m(&self) -> u64 {
        self.params.m
    }

    /// `k <= n - q - sgn(r)`: `Y` has room for the `q` full rows and the partial row.
    pub fn is_feasible(&self) -> bool {
        self.k + self.q + (sgn(self.r as i64).value() as u64) <= self.n()
    }

    /// Degree sequence of `Bˡ(n, m, k)` computed from `(k, q, r)` alone.
    pub fn degree_sequence(&self) -> Result<DegreeSequence, EngineError> {
        self.require_feasible()?;
        let (k, q, r) = (self.k as usize, self.q as usize, self.r as usize);
        let y_size = self.n() as usize - k;
        let mut x = vec![q + 1; r];
        x.resize(k, q);
        let mut y = vec![k; q];
        if r > 0 {
            y.push(r);
        }
        y.resize(y_size, 0);
        Ok(DegreeSequence::new(x, y))
    }

    fn require_feasible(&self) -> Result<(), EngineError> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(EngineError::Infeasible {
                n: self.n(),
                m: self.m(),
                k: self.k,
                q: self.q,
                r: self.r,
            })
        }
    }

    /// Isomorphism key valid for `Bˡ` graphs of any size.
    ///
    /// The non-isolated part of `Bˡ` is connected with nested neighborhoods,
    /// so it is determined by the unordered pair of its side degree multisets.
    fn structure_key(&self) -> Result<(usize, Vec<usize>, Vec<usize>), EngineError> {
        let ds = self.degree_sequence()?;
        let nonzero = |v: &[usize]| v.iter().copied().filter(|&d| d > 0).collect::<Vec<_>>();
        let (a, b) = (nonzero(&ds.x_degrees), nonzero(&ds.y_degrees));
        let isolated = self.n() as usize - a.len() - b.len();
        Ok(if a <= b {
            (isolated, a, b)
        } else {
            (isolated, b, a)
        })
    }
}

/// Splits `m` by side size `k`. Errors only on out-of-range `k`; an
/// infeasible split is reported through [`CanonicalSpec::is_feasible`].
pub fn canonical_spec(n: u64, m: u64, k: u64) -> Result<CanonicalSpec, EngineError> {
    let params = GraphParams::new(n, m)?;
    if k == 0 || k >= n {
        return Err(EngineError::SideOutOfRange { n, k });
    }
    Ok(CanonicalSpec {
        params,
        k,
        q: m / k,
        r: m % k,
    })
}

/// Materializes `Bˡ(n, m, k)`: `Y`-rows `0..q` full, row `q` covering columns `0..r`.
pub fn construct_bl(spec: &CanonicalSpec) -> Result<BipartiteGraph, EngineError> {
    spec.require_feasible()?;
    let k = spec.k as usize;
    let mut g = BipartiteGraph::empty(k, (spec.n() - spec.k) as usize)?;
    let q = spec.q as usize;
    for y in 0..q {
        for x in 0..k {
            g.insert_edge(x, y)?;
        }
    }
    for x in 0..spec.r as usize {
        g.insert_edge(x, q)?;
    }
    Ok(g)
}

/// `f(k) = ⌊m/k⌋(k-1)(k + ⌊m/k⌋k - 2m) + m² + m`, the `σ₂` of `Bˡ(·, m, k)`.
///
/// Independent of `n`. Panics if `k == 0`.
pub fn closed_form_sigma2(m: u64, k: u64) -> u128 {
    assert!(k >= 1, "side size must be positive");
    let (m, k) = (m as i128, k as i128);
    let q = m / k;
    let value = q * (k - 1) * (k + q * k - 2 * m) + m * m + m;
    u128::try_from(value).expect("sum of squares is nonnegative")
}

/// The largest `k` in `[⌈n/2⌉, n-1]` whose `Bˡ(n, m, k)` is feasible.
pub fn find_k0(params: GraphParams) -> Result<u64, EngineError> {
    if params.is_star_regime() {
        return Err(EngineError::NotCaseRegime {
            n: params.n,
            m: params.m,
        });
    }
    for k in (params.half_ceil()..params.n).rev() {
        if canonical_spec(params.n, params.m, k)?.is_feasible() {
            return Ok(k);
        }
    }
    Err(EngineError::Internal(format!(
        "no feasible side size for n={}, m={}",
        params.n, params.m
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Star,
    CaseA,
    CaseB,
    CaseC,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Star => "star",
            Regime::CaseA => "case_a",
            Regime::CaseB => "case_b",
            Regime::CaseC => "case_c",
        }
    }
}

/// `m` compared with `(n - k₀)(k₀ - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Boundary {
    pub lhs: u64,
    pub rhs: u64,
    #[serde(serialize_with = "relation_symbol")]
    pub relation: Ordering,
}

fn relation_symbol<S: serde::Serializer>(ord: &Ordering, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match ord {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub spec: CanonicalSpec,
    pub degree_sequence: DegreeSequence,
    /// Index into the classification's isomorphism classes.
    pub iso_class: usize,
    /// Present when `n` is small enough for exact canonicalization.
    pub canonical: Option<CanonicalForm>,
}

impl Construction {
    pub fn graph(&self) -> Result<BipartiteGraph, EngineError> {
        construct_bl(&self.spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalClassification {
    pub params: GraphParams,
    pub regime: Regime,
    pub k0: Option<u64>,
    pub boundary: Option<Boundary>,
    pub max_sigma2: u128,
    /// The constructions in the order the theorems list them.
    pub constructions: Vec<Construction>,
    pub iso_classes: usize,
}

impl ExtremalClassification {
    /// The first construction of each isomorphism class.
    pub fn distinct(&self) -> impl Iterator<Item = &Construction> {
        let mut next = 0;
        self.constructions.iter().filter(move |c| {
            let first = c.iso_class == next;
            next += usize::from(first);
            first
        })
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Spec<'a> {
            k: u64,
            q: u64,
            r: u64,
            degree_sequence: &'a DegreeSequence,
        }
        #[derive(Serialize)]
        struct Record<'a> {
            n: u64,
            m: u64,
            regime: Regime,
            k0: Option<u64>,
            boundary: Option<Boundary>,
            max_sigma2: u128,
            constructions: Vec<Spec<'a>>,
            iso_classes: usize,
        }
        let record = Record {
            n: self.params.n,
            m: self.params.m,
            regime: self.regime,
            k0: self.k0,
            boundary: self.boundary,
            max_sigma2: self.max_sigma2,
            constructions: self
                .constructions
                .iter()
                .map(|c| Spec {
                    k: c.spec.k,
                    q: c.spec.q,
                    r: c.spec.r,
                    degree_sequence: &c.degree_sequence,
                })
                .collect(),
            iso_classes: self.iso_classes,
        };
        serde_json::to_string(&record).expect("plain data serializes")
    }
}

pub fn classify(params: GraphParams) -> Result<ExtremalClassification, EngineError> {
    let (n, m) = (params.n, params.m);

    let (regime, k0, boundary, sides) = if params.is_star_regime() {
        (Regime::Star, None, None, vec![n - 1])
    } else {
        let k0 = find_k0(params)?;
        let rhs = (n - k0) * (k0 - 1);
        let relation = m.cmp(&rhs);
        let (regime, sides) = match relation {
            Ordering::Greater => (Regime::CaseA, vec![k0, n - k0]),
            Ordering::Equal => (Regime::CaseB, vec![k0, n - k0, k0 - 1]),
            Ordering::Less => (Regime::CaseC, vec![k0]),
        };
        let boundary = Boundary {
            lhs: m,
            rhs,
            relation,
        };
        (regime, Some(k0), Some(boundary), sides)
    };

    let mut keys = HashMap::new();
    let mut constructions = Vec::with_capacity(sides.len());
    for k in sides {
        let spec = canonical_spec(n, m, k)?;
        if !spec.is_feasible() {
            return Err(EngineError::Internal(format!(
                "listed construction B^l({n}, {m}, {k}) is infeasible"
            )));
        }
        let fresh = keys.len();
        let iso_class = *keys.entry(spec.structure_key()?).or_insert(fresh);
        let canonical = if n as usize <= MAX_CANONICAL_N {
            Some(construct_bl(&spec)?.canonical_form()?)
        } else {
            None
        };
        constructions.push(Construction {
            spec,
            degree_sequence: spec.degree_sequence()?,
            iso_class,
            canonical,
        });
    }

    let max_sigma2 = closed_form_sigma2(m, constructions[0].spec.k);
    Ok(ExtremalClassification {
        params,
        regime,
        k0,
        boundary,
        max_sigma2,
        iso_classes: keys.len(),
        constructions,
    })
}

/// `m² + m` when `m <= n - 1`, otherwise `f(k₀)`.
pub fn max_sigma2(params: GraphParams) -> Result<u128, EngineError> {
    if params.is_star_regime() {
        let m = params.m as u128;
        Ok(m * m + m)
    } else {
        Ok(closed_form_sigma2(params.m, find_k0(params)?))
    }
}

/// `(k, f(k))` for `k = ⌈n/2⌉ ..= k₀`.
pub fn fk_profile(params: GraphParams) -> Result<Vec<(u64, u128)>, EngineError> {
    let k0 = find_k0(params)?;
    Ok((params.half_ceil()..=k0)
        .map(|k| (k, closed_form_sigma2(params.m, k)))
        .collect())
}

/// One step `f(k+1) - f(k)` against the difference formula chosen by the floor gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FkDifference {
    pub m: u64,
    pub k: u64,
    /// `⌊m/k⌋ - ⌊m/(k+1)⌋`.
    pub floor_gap: u64,
    pub predicted_delta: i128,
    pub actual_delta: i128,
}

impl FkDifference {
    pub fn agrees(&self) -> bool {
        self.predicted_delta == self.actual_delta
    }
}

pub fn floor_gap(m: u64, k: u64) -> u64 {
    m / k - m / (k + 1)
}

pub fn fk_difference_check(m: u64, k: u64) -> Result<FkDifference, EngineError> {
    if k == 0 {
        return Err(EngineError::SideOutOfRange { n: 0, k });
    }
    let gap = floor_gap(m, k);
    let (mi, ki) = (m as i128, k as i128);
    let q = mi / ki;
    let predicted_delta = match gap {
        0 => 2 * q * (q * ki + ki - mi),
        1 => 2 * (q - ki) * (q * ki - mi),
        _ => return Err(EngineError::FloorGapViolation { m, k, gap }),
    };
    let actual_delta = closed_form_sigma2(m, k + 1) as i128 - closed_form_sigma2(m, k) as i128;
    Ok(FkDifference {
        m,
        k,
        floor_gap: gap,
        predicted_delta,
        actual_delta,
    })
}

/// The three auxiliary facts behind the `m >= n` case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimsReport {
    /// `m > (k₀ + 1)(n - k₀ - 1)`; `None` when `m < n`.
    pub claim1: Option<bool>,
    /// `Bˡ(n, m, k₀)` has no isolated vertex, checked on the built graph; `None` when `m < n`.
    pub claim2: Option<bool>,
    /// `⌊m/k⌋ - ⌊m/(k+1)⌋ <= 1` for every `k` in `[⌈n/2⌉, n]`.
    pub claim3: bool,
}

pub fn claims_check(params: GraphParams) -> Result<ClaimsReport, EngineError> {
    let (n, m) = (params.n, params.m);
    let claim3 = (params.half_ceil()..=n).all(|k| floor_gap(m, k) <= 1);
    if params.is_star_regime() {
        return Ok(ClaimsReport {
            claim1: None,
            claim2: None,
            claim3,
        });
    }
    let k0 = find_k0(params)?;
    let claim1 = m > (k0 + 1) * (n - k0 - 1);
    let graph = construct_bl(&canonical_spec(n, m, k0)?)?;
    let claim2 = !graph.degree_sequence().has_isolated_vertex();
    Ok(ClaimsReport {
        claim1: Some(claim1),
        claim2: Some(claim2),
        claim3,
    })
}

/// Arithmetic form of the no-isolated-vertex claim: `m > k₀(n - k₀ - 1)`.
pub fn claim2_arithmetic(params: GraphParams) -> Result<bool, EngineError> {
    let k0 = find_k0(params)?;
    Ok(params.m > k0 * (params.n - k0 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64, m: u64) -> GraphParams {
        GraphParams::new(n, m).unwrap()
    }

    fn rows(g: &BipartiteGraph) -> Vec<String> {
        g.rows()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }

    #[test]
    fn sign_function() {
        assert_eq!(sgn(5), Sign::Positive);
        assert_eq!(sgn(-3).value(), -1);
        assert_eq!(sgn(0).value(), 0);
    }

    #[test]
    fn params_validation() {
        assert_eq!(GraphParams::new(1, 0), Err(EngineError::TooFewVertices(1)));
        assert_eq!(
            GraphParams::new(6, 10),
            Err(EngineError::TooManyEdges {
                n: 6,
                m: 10,
                limit: 9
            })
        );
        assert!(GraphParams::new(7, 12).is_ok());
        assert!(GraphParams::new(7, 13).is_err());
    }

    #[test]
    fn canonical_specs() {
        let s = canonical_spec(6, 7, 4).unwrap();
        assert_eq!((s.q, s.r, s.is_feasible()), (1, 3, true));
        let s = canonical_spec(9, 0, 4).unwrap();
        assert_eq!((s.q, s.r, s.is_feasible()), (0, 0, true));
        let s = canonical_spec(6, 7, 5).unwrap();
        assert_eq!((s.q, s.r, s.is_feasible()), (1, 2, false));
        assert!(matches!(
            canonical_spec(6, 7, 6),
            Err(EngineError::SideOutOfRange { .. })
        ));
        assert!(matches!(
            canonical_spec(6, 7, 0),
            Err(EngineError::SideOutOfRange { .. })
        ));
    }

    #[test]
    fn feasibility_matches_capacity() {
        for n in 2..=14 {
            for m in 0..=max_edges(n) {
                for k in 1..n {
                    let s = canonical_spec(n, m, k).unwrap();
                    assert_eq!(s.is_feasible(), m <= k * (n - k), "n={n} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn construct_examples() {
        let g = construct_bl(&canonical_spec(6, 7, 4).unwrap()).unwrap();
        assert_eq!(rows(&g), ["1111", "1110"]);
        let g = construct_bl(&canonical_spec(6, 8, 4).unwrap()).unwrap();
        assert_eq!(g, BipartiteGraph::complete(4, 2).unwrap());
        let g = construct_bl(&canonical_spec(7, 0, 3).unwrap()).unwrap();
        assert_eq!((g.m(), g.x_size(), g.y_size()), (0, 3, 4));
        assert!(matches!(
            construct_bl(&canonical_spec(6, 7, 5).unwrap()),
            Err(EngineError::Infeasible { .. })
        ));
    }

    #[test]
    fn constructed_degree_sequence() {
        let spec = canonical_spec(7, 8, 5).unwrap();
        let ds = construct_bl(&spec).unwrap().degree_sequence();
        assert_eq!(ds.x_degrees, vec![2, 2, 2, 1, 1]);
        assert_eq!(ds.y_degrees, vec![5, 3]);
        assert_eq!(spec.degree_sequence().unwrap(), ds);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_sigma2(7, 4), 38);
        assert_eq!(closed_form_sigma2(3, 4), 12);
        assert_eq!(closed_form_sigma2(8, 5), 48);
    }

    #[test]
    fn k0_examples() {
        assert_eq!(find_k0(p(6, 7)), Ok(4));
        assert_eq!(find_k0(p(7, 8)), Ok(5));
        assert_eq!(find_k0(p(8, 9)), Ok(6));
        assert!(matches!(
            find_k0(p(8, 7)),
            Err(EngineError::NotCaseRegime { .. })
        ));
    }

    #[test]
    fn classify_star() {
        let c = classify(p(5, 3)).unwrap();
        assert_eq!(c.regime, Regime::Star);
        assert_eq!(c.max_sigma2, 12);
        assert_eq!(c.constructions.len(), 1);
        assert_eq!(c.constructions[0].spec.k, 4);
        assert_eq!(c.k0, None);
    }

    #[test]
    fn classify_cases() {
        let a = classify(p(9, 16)).unwrap();
        assert_eq!(a.regime, Regime::CaseA);
        assert_eq!(a.max_sigma2, 132);
        let ks: Vec<_> = a.constructions.iter().map(|c| c.spec.k).collect();
        assert_eq!(ks, [6, 3]);
        assert_eq!(a.iso_classes, 2);

        let b = classify(p(7, 8)).unwrap();
        assert_eq!(b.regime, Regime::CaseB);
        assert_eq!(b.max_sigma2, 48);
        let ks: Vec<_> = b.constructions.iter().map(|c| c.spec.k).collect();
        assert_eq!(ks, [5, 2, 4]);
        assert_eq!(b.iso_classes, 2);
        assert_eq!(b.boundary.unwrap().relation, Ordering::Equal);

        let c = classify(p(8, 9)).unwrap();
        assert_eq!(c.regime, Regime::CaseC);
        assert_eq!(c.max_sigma2, 60);
        assert_eq!(c.constructions.len(), 1);
    }

    #[test]
    fn distinct_constructions_follow_iso_classes() {
        let b = classify(p(7, 8)).unwrap();
        let ks: Vec<_> = b.distinct().map(|c| c.spec.k).collect();
        assert_eq!(ks, [5, 2]);
    }

    #[test]
    fn max_values() {
        assert_eq!(max_sigma2(p(2, 1)), Ok(2));
        assert_eq!(max_sigma2(p(6, 9)), Ok(54));
        assert_eq!(max_sigma2(p(6, 7)), Ok(38));
        assert_eq!(max_sigma2(p(2, 0)), Ok(0));
    }

    #[test]
    fn profiles() {
        assert_eq!(fk_profile(p(7, 8)).unwrap(), [(4, 48), (5, 48)]);
        assert_eq!(fk_profile(p(8, 9)).unwrap(), [(4, 54), (5, 58), (6, 60)]);
        assert_eq!(fk_profile(p(6, 7)).unwrap(), [(3, 36), (4, 38)]);
    }

    #[test]
    fn difference_examples() {
        let d = fk_difference_check(8, 4).unwrap();
        assert_eq!((d.floor_gap, d.predicted_delta, d.actual_delta), (1, 0, 0));
        let d = fk_difference_check(9, 4).unwrap();
        assert_eq!((d.floor_gap, d.predicted_delta, d.actual_delta), (1, 4, 4));
        let d = fk_difference_check(7, 3).unwrap();
        assert_eq!((d.floor_gap, d.predicted_delta, d.actual_delta), (1, 2, 2));
        assert_eq!(
            fk_difference_check(7, 1),
            Err(EngineError::FloorGapViolation { m: 7, k: 1, gap: 4 })
        );
    }

    #[test]
    fn claims_examples() {
        let c = claims_check(p(6, 7)).unwrap();
        assert_eq!(c.claim1, Some(true));
        assert!(c.claim3);
        assert_eq!(claims_check(p(8, 9)).unwrap().claim2, Some(true));
        let star = claims_check(p(8, 3)).unwrap();
        assert_eq!((star.claim1, star.claim2), (None, None));
    }

    #[test]
    fn json_record_shape() {
        let json = classify(p(7, 8)).unwrap().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["regime"], "case_b");
        assert_eq!(v["k0"], 5);
        assert_eq!(v["boundary"]["rhs"], 8);
        assert_eq!(v["boundary"]["relation"], "=");
        assert_eq!(v["max_sigma2"], 48);
        assert_eq!(v["iso_classes"], 2);
        assert_eq!(
            v["constructions"][0]["degree_sequence"]["y"],
            serde_json::json!([5, 3])
        );
        let star: serde_json::Value =
            serde_json::from_str(&classify(p(5, 3)).unwrap().to_json()).unwrap();
        assert!(star["k0"].is_null());
    }
}
