//! The parametric polytopes `P_t` and `C_t` cut out by edge-sum constraints.
//!
//! An [`EdgePattern`] splits the edges of a hypergraph into a lower part,
//! bounded above by `t - 1` (or `t` for `C_t`), and an upper part, bounded
//! below by `t`. The optimal coordinate sum `delta(P_t)` is eventually affine
//! in `t`, of the form `d t - e` with `d = delta(C_1)`.

use std::ops::RangeInclusive;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::checks::CheckLog;
use crate::complexes::SimplicialComplex;
use crate::exactlin::{int, lp_dual, lp_solve, to_i64, LinAlgError, LinearProgram, LpOutcome, Rational, Relation};
use crate::hypergraph::{Hypergraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("invalid edge pattern: {0}")]
    InvalidPattern(String),
    #[error("edge-sum program is unbounded at t = {t}; every vertex must lie in a lower edge")]
    Unbounded { t: u32 },
    #[error("optimum at t = {t} is not integral although the base is totally unimodular")]
    NonIntegral { t: u32 },
    #[error("dual fit needs two feasible parameters beyond the onset, got {0:?}")]
    DualPair((u32, u32)),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A split of the edges of `base` into lower and upper constraints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePattern {
    base: Hypergraph,
    lower: Vec<usize>,
    upper: Vec<usize>,
    unimodular: bool,
}

#[derive(Serialize)]
struct PatternJson<'a> {
    n: usize,
    edges: Vec<Vec<usize>>,
    lower: &'a [usize],
    upper: &'a [usize],
}

impl Serialize for EdgePattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PatternJson {
            n: self.base.n(),
            edges: self.base.edges().iter().map(|e| e.to_vec()).collect(),
            lower: &self.lower,
            upper: &self.upper,
        }
        .serialize(s)
    }
}

impl EdgePattern {
    /// `lower` lists 0-based edge indices; the remaining edges form the upper part.
    /// Every vertex must lie in some lower edge, otherwise `P_t` is unbounded.
    pub fn new(base: Hypergraph, lower: &[usize]) -> Result<Self, PolytopeError> {
        let m = base.num_edges();
        let mut is_lower = vec![false; m];
        for &j in lower {
            if j >= m {
                return Err(PolytopeError::InvalidPattern(format!(
                    "edge index {j} out of range for {m} edges"
                )));
            }
            if is_lower[j] {
                return Err(PolytopeError::InvalidPattern(format!("edge index {j} listed twice")));
            }
            is_lower[j] = true;
        }
        if base.n() == 0 {
            return Err(PolytopeError::InvalidPattern("base has no vertices".into()));
        }
        let covered = lower
            .iter()
            .fold(VertexSet::EMPTY, |acc, &j| acc.union(base.edges()[j]));
        if let Some(v) = base.vertices().difference(covered).iter().next() {
            return Err(PolytopeError::InvalidPattern(format!(
                "vertex {v} lies in no lower edge"
            )));
        }
        let mut lower_sorted = lower.to_vec();
        lower_sorted.sort_unstable();
        let upper = (0..m).filter(|&j| !is_lower[j]).collect();
        Ok(Self {
            base,
            lower: lower_sorted,
            upper,
            unimodular: false,
        })
    }

    /// Pattern whose lower part is the bitmask `mask` over edge indices.
    pub fn from_lower_mask(base: Hypergraph, mask: u64) -> Result<Self, PolytopeError> {
        let lower: Vec<usize> = (0..base.num_edges()).filter(|&j| mask >> j & 1 == 1).collect();
        Self::new(base, &lower)
    }

    /// Declares the base totally unimodular, so optima are asserted integral.
    pub fn with_unimodular_base(mut self, unimodular: bool) -> Self {
        self.unimodular = unimodular;
        self
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn lower(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    pub fn is_unimodular_base(&self) -> bool {
        self.unimodular
    }

    /// `<V \ E_j | j lower>`, the degree complex shared by all integer points of `P_t`.
    pub fn complex(&self) -> SimplicialComplex {
        let full = self.base.vertices();
        SimplicialComplex::from_facets(
            self.base.n(),
            self.lower.iter().map(|&j| full.difference(self.base.edges()[j])).collect(),
        )
    }

    /// `r * ceil(n / 2) + 1` for the base hypergraph.
    pub fn stabilization_threshold(&self) -> u32 {
        let n = self.base.n() as u32;
        let r = self.base.rank().map_or(0, |r| r as u32);
        r * n.div_ceil(2) + 1
    }

    fn program(&self, lower_rhs: i64, upper_rhs: i64) -> LinearProgram {
        let n = self.base.n();
        let mut lp = LinearProgram::maximize(vec![Rational::one(); n]);
        let row = |e: VertexSet| -> Vec<Rational> {
            (1..=n).map(|v| if e.contains(v) { Rational::one() } else { Rational::zero() }).collect()
        };
        for &j in &self.lower {
            lp.add_constraint(row(self.base.edges()[j]), Relation::Le, int(lower_rhs))
                .expect("row length matches");
        }
        for &j in &self.upper {
            lp.add_constraint(row(self.base.edges()[j]), Relation::Ge, int(upper_rhs))
                .expect("row length matches");
        }
        lp
    }
}

/// `max sum x` subject to lower edges `<= t - 1`, upper edges `>= t`, `x >= 0`.
pub fn build_p(pattern: &EdgePattern, t: u32) -> LinearProgram {
    pattern.program(i64::from(t) - 1, i64::from(t))
}

/// `max sum x` subject to lower edges `<= t`, upper edges `>= t`, `x >= 0`.
pub fn build_c(pattern: &EdgePattern, t: u32) -> LinearProgram {
    pattern.program(i64::from(t), i64::from(t))
}

/// Optimal value of an edge-sum program, or `Empty` when infeasible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaValue {
    Value(#[serde(serialize_with = "crate::checks::serialize_rational")] Rational),
    Empty,
}

impl DeltaValue {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            DeltaValue::Value(v) => Some(v),
            DeltaValue::Empty => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, DeltaValue::Empty)
    }
}

/// An optimal vertex together with its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaOptimum {
    pub value: Rational,
    pub point: Vec<Rational>,
}

fn solve_delta(pattern: &EdgePattern, lp: &LinearProgram, t: u32) -> Result<Option<DeltaOptimum>, PolytopeError> {
    match lp_solve(lp) {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(PolytopeError::Unbounded { t }),
        LpOutcome::Optimal { value, point } => {
            if pattern.unimodular && !(value.is_integer() && point.iter().all(|x| x.is_integer())) {
                return Err(PolytopeError::NonIntegral { t });
            }
            Ok(Some(DeltaOptimum { value, point }))
        }
    }
}

/// `delta(P_t)` with an optimal vertex.
pub fn delta_optimum(pattern: &EdgePattern, t: u32) -> Result<Option<DeltaOptimum>, PolytopeError> {
    solve_delta(pattern, &build_p(pattern, t), t)
}

/// `delta(P_t) = max{|alpha| : alpha in P_t}`.
pub fn delta(pattern: &EdgePattern, t: u32) -> Result<DeltaValue, PolytopeError> {
    Ok(match delta_optimum(pattern, t)? {
        Some(opt) => DeltaValue::Value(opt.value),
        None => DeltaValue::Empty,
    })
}

/// `delta(C_t)`.
pub fn delta_c(pattern: &EdgePattern, t: u32) -> Result<DeltaValue, PolytopeError> {
    Ok(match solve_delta(pattern, &build_c(pattern, t), t)? {
        Some(opt) => DeltaValue::Value(opt.value),
        None => DeltaValue::Empty,
    })
}

/// The slope `d = delta(C_1)`, or `None` when `C_1` is empty or not integral.
pub fn slope(pattern: &EdgePattern) -> Result<Option<i64>, PolytopeError> {
    Ok(delta_c(pattern, 1)?.value().and_then(to_i64))
}

/// Eventual affine form `delta(P_t) = d t - e` from `onset` to the end of the range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub e: i64,
    pub onset: u32,
}

/// `delta(P_t)` over a contiguous range of `t`, with the defects
/// `e_t = d t - delta(P_t)` and the checks they should satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaSequence {
    pub t_start: u32,
    pub values: Vec<DeltaValue>,
    pub d: Option<i64>,
    /// `None` where `P_t` is empty.
    pub defects: Vec<Option<i64>>,
    pub first_nonempty: Option<u32>,
    pub stabilization: Option<Stabilization>,
    pub threshold: u32,
    pub checks: CheckLog,
}

impl DeltaSequence {
    pub fn t_end(&self) -> u32 {
        self.t_start + self.values.len() as u32 - 1
    }

    pub fn get(&self, t: u32) -> Option<&DeltaValue> {
        t.checked_sub(self.t_start).and_then(|i| self.values.get(i as usize))
    }
}

/// Sweeps `delta(P_t)` over `t_range` and checks persistence of
/// nonemptiness, monotone defects, `e <= n^2` and the onset bound. When
/// `realized` is set the pattern is known to carry cohomology, and
/// `P_n != ∅` is asserted as well.
pub fn delta_sequence(
    pattern: &EdgePattern,
    t_range: RangeInclusive<u32>,
    realized: bool,
) -> Result<DeltaSequence, PolytopeError> {
    let (t_start, t_end) = (*t_range.start(), *t_range.end());
    if t_start == 0 || t_end < t_start {
        return Err(PolytopeError::InvalidPattern(format!(
            "parameter range {t_start}..={t_end} must be nonempty and start at 1 or later"
        )));
    }
    let label = pattern_label(pattern);
    let n = pattern.base.n() as u32;
    let values = t_range
        .clone()
        .map(|t| delta(pattern, t))
        .collect::<Result<Vec<_>, _>>()?;
    let d = slope(pattern)?;
    let defects: Vec<Option<i64>> = values
        .iter()
        .zip(t_range.clone())
        .map(|(v, t)| Some(d? * i64::from(t) - to_i64(v.value()?)?))
        .collect();
    let first_nonempty = values
        .iter()
        .position(|v| !v.is_empty())
        .map(|i| t_start + i as u32);
    let threshold = pattern.stabilization_threshold();
    let mut checks = CheckLog::default();

    if let Some(first) = first_nonempty {
        let persists = values[(first - t_start) as usize..].iter().all(|v| !v.is_empty());
        checks.expect(persists, "nonempty-persists", &label, None, None, "nonempty after first", "an empty P_t");
        let observed: Vec<(u32, i64)> = defects
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|e| (t_start + i as u32, e)))
            .collect();
        for w in observed.windows(2) {
            let ((_, e0), (t1, e1)) = (w[0], w[1]);
            if e1 > e0 {
                checks.expect(false, "defect-non-increasing", &label, None, Some(t1), format!("e_{t1} <= {e0}"), e1);
            }
        }
        if observed.windows(2).all(|w| w[1].1 <= w[0].1) {
            checks.pass("defect-non-increasing");
        }
        if let Some(&(t, e)) = observed.last() {
            checks.expect(e >= 0, "defect-nonnegative", &label, None, Some(t), ">= 0", e);
        }
    } else {
        checks.skip("nonempty-persists", "P_t empty over the whole range");
    }

    let stabilization = stabilize(&defects, t_start);
    match stabilization {
        Some(st) if t_end >= threshold => {
            checks.expect(st.onset <= threshold, "onset-bound", &label, None, None, format!("onset <= {threshold}"), st.onset);
            checks.expect(st.e <= i64::from(n * n), "defect-bound", &label, None, None, format!("e <= {}", n * n), st.e);
        }
        Some(st) if st.e <= i64::from(n * n) => {
            checks.pass("defect-bound");
            checks.skip("onset-bound", format!("threshold {threshold} beyond range end {t_end}"));
        }
        _ => {
            checks.skip("defect-bound", format!("threshold {threshold} beyond range end {t_end}"));
            checks.skip("onset-bound", format!("threshold {threshold} beyond range end {t_end}"));
        }
    }

    if realized {
        let pn = delta(pattern, n)?;
        checks.expect(!pn.is_empty(), "p-n-nonempty", &label, None, Some(n), "P_n nonempty", "P_n empty");
    }

    Ok(DeltaSequence {
        t_start,
        values,
        d,
        defects,
        first_nonempty,
        stabilization,
        threshold,
        checks,
    })
}

/// The constant tail of the defect sequence, provided the last entry is defined.
fn stabilize(defects: &[Option<i64>], t_start: u32) -> Option<Stabilization> {
    let e = (*defects.last()?)?;
    let mut i = defects.len() - 1;
    while i > 0 && defects[i - 1] == Some(e) {
        i -= 1;
    }
    Some(Stabilization {
        e,
        onset: t_start + i as u32,
    })
}

/// Affine form `a t - b` of the dual optimum recovered from an optimal dual
/// vertex `(y, z)`: `a = sum y - sum z`, `b = sum y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualFit {
    pub a: i64,
    pub b: i64,
    pub t_pair: (u32, u32),
    pub checks: CheckLog,
}

/// Default parameters for [`dual_fit`]: seven and eight past the onset.
pub fn default_dual_pair(onset: u32) -> (u32, u32) {
    (onset + 7, onset + 8)
}

/// Solves the dual of `P_t` at both parameters, reads `(a, b)` off the dual
/// vertex at the first, and checks strong duality, the affine form at the
/// second, `(a, b) = (d, e)` when `expected` is given, and `a <= b`.
pub fn dual_fit(
    pattern: &EdgePattern,
    t_pair: (u32, u32),
    expected: Option<(i64, i64)>,
) -> Result<DualFit, PolytopeError> {
    let label = pattern_label(pattern);
    let mut checks = CheckLog::default();
    let k = pattern.lower.len();
    let mut forms = Vec::new();
    for t in [t_pair.0, t_pair.1] {
        let primal = build_p(pattern, t);
        let p_val = match solve_delta(pattern, &primal, t)? {
            Some(opt) => opt.value,
            None => return Err(PolytopeError::DualPair(t_pair)),
        };
        let dual = lp_dual(&primal)?;
        let (d_val, point) = match lp_solve(&dual) {
            LpOutcome::Optimal { value, point } => (-value, point),
            _ => return Err(PolytopeError::DualPair(t_pair)),
        };
        checks.expect(p_val == d_val, "strong-duality", &label, None, Some(t), &p_val, &d_val);
        let sum = |xs: &[Rational]| xs.iter().fold(Rational::zero(), |acc, x| acc + x);
        let ys = sum(&point[..k]);
        let zs = sum(&point[k..]);
        let a = &ys - &zs;
        forms.push((t, a, ys, d_val));
    }
    let (_, a, b, _) = &forms[0];
    let (t1, _, _, v1) = &forms[1];
    let predicted = a * int(i64::from(*t1)) - b;
    checks.expect(&predicted == v1, "dual-affine", &label, None, Some(*t1), &predicted, v1);
    let (a, b) = match (to_i64(a), to_i64(b)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(PolytopeError::NonIntegral { t: t_pair.0 }),
    };
    if let Some((d, e)) = expected {
        checks.expect((a, b) == (d, e), "dual-matches-primal", &label, None, None, format!("({d}, {e})"), format!("({a}, {b})"));
    }
    checks.expect(a <= b, "slope-at-most-defect", &label, None, None, format!("{a} <= b"), b);
    Ok(DualFit { a, b, t_pair, checks })
}

fn pattern_label(pattern: &EdgePattern) -> String {
    let edges: Vec<String> = pattern.base.edges().iter().map(|e| format!("{e:?}")).collect();
    format!(
        "n={} edges=[{}] lower={:?}",
        pattern.base.n(),
        edges.join(","),
        pattern.lower
    )
}
