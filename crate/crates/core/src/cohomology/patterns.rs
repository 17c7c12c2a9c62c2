//! `a_i`-invariants from localizations and edge patterns.
//!
//! For a degree `alpha` with negative support `G`, the degree complex of
//! `J(H)^s` equals that of the localized cover ideal `J(H_G)^s` at the
//! restriction `alpha'` of `alpha` to `V \ G`, where `H_G` keeps the edges
//! disjoint from `G`. For unimodular `H` that complex is
//! `<V' \ E | sum_E alpha' <= s - 1>`, so it only depends on which edges are
//! lower. The largest `|alpha|` realizing a given lower set is
//! `delta(P_s) - |G|`.

use rayon::prelude::*;
use serde::Serialize;

use super::{AiValue, CohomologyError, HomologyCache};
use crate::exactlin::{to_i64, Field};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::polytopes::{delta, DeltaValue, EdgePattern, PolytopeError};

/// A pattern whose complex has homology and whose polytope `P_s` is nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizedPattern {
    /// Negative support `G`, in original labels.
    pub removed: Vec<usize>,
    /// Original label of each vertex of the localized base.
    pub vertex_map: Vec<usize>,
    pub pattern: EdgePattern,
    /// Cohomological indices `p` with `H^p_m != 0` in the degrees of this pattern.
    pub indices: Vec<usize>,
    pub s: u32,
    /// `delta(P_s)` on the localized base.
    pub delta: i64,
}

impl RealizedPattern {
    /// `|alpha|` of the best degree: `delta(P_s) - |G|`.
    pub fn candidate(&self) -> i64 {
        self.delta - self.removed.len() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternScan {
    /// `a_p` for `p = 0..=n`.
    pub values: Vec<AiValue>,
    pub realized: Vec<RealizedPattern>,
}

/// All `a_p(R/J(H)^s)`, `p = 0..=n`, together with the realized patterns.
///
/// `H` must be simple and totally unimodular; pattern optima are asserted
/// integral.
pub fn ai_patterns_all(
    h: &Hypergraph,
    s: u32,
    field: Field,
    cache: &HomologyCache,
) -> Result<PatternScan, CohomologyError> {
    if s == 0 {
        return Err(CohomologyError::ZeroPower);
    }
    let n = h.n();
    let full = h.vertices().bits();
    // G = V would invert every variable and kill the nonzero ideal J(H).
    let per_g: Vec<Vec<RealizedPattern>> = (0..full)
        .into_par_iter()
        .map(|g| scan_localization(h, VertexSet::from_bits(g), s, field, cache))
        .collect::<Result<_, _>>()?;
    let realized: Vec<RealizedPattern> = per_g.into_iter().flatten().collect();
    let mut values = vec![AiValue::NegInfinity; n + 1];
    for r in &realized {
        for &p in &r.indices {
            values[p] = values[p].max(AiValue::Finite(r.candidate()));
        }
    }
    Ok(PatternScan { values, realized })
}

fn scan_localization(
    h: &Hypergraph,
    removed: VertexSet,
    s: u32,
    field: Field,
    cache: &HomologyCache,
) -> Result<Vec<RealizedPattern>, CohomologyError> {
    let loc = h.localize(removed);
    let base = loc.hypergraph;
    let m = base.num_edges();
    let mut out = Vec::new();
    if m == 0 {
        return Ok(out);
    }
    let shift = removed.len() as isize + 1;
    for mask in 1u64..(1u64 << m) {
        let pattern = match EdgePattern::from_lower_mask(base.clone(), mask) {
            Ok(p) => p.with_unimodular_base(true),
            // Some vertex lies in every facet: a cone, hence acyclic.
            Err(PolytopeError::InvalidPattern(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let homology = cache.homology(&pattern.complex(), field)?;
        if homology.is_acyclic() {
            continue;
        }
        let value = match delta(&pattern, s) {
            Ok(DeltaValue::Value(v)) => v,
            Ok(DeltaValue::Empty) => continue,
            Err(PolytopeError::Unbounded { .. }) => {
                return Err(CohomologyError::UnboundedPattern {
                    removed: removed.to_vec(),
                    lower: pattern.lower().to_vec(),
                })
            }
            Err(e) => return Err(e.into()),
        };
        let delta = to_i64(&value).ok_or(PolytopeError::NonIntegral { t: s })?;
        let indices = homology.nonzero_degrees().map(|k| (k + shift) as usize).collect();
        out.push(RealizedPattern {
            removed: removed.to_vec(),
            vertex_map: loc.vertex_map.clone(),
            pattern,
            indices,
            s,
            delta,
        });
    }
    Ok(out)
}

/// `a_p(R/J(H)^s)` by the pattern method; `-inf` for `p > n`.
pub fn ai_patterns(h: &Hypergraph, p: usize, s: u32, field: Field) -> Result<AiValue, CohomologyError> {
    let scan = ai_patterns_all(h, s, field, &HomologyCache::new())?;
    Ok(scan.values.get(p).copied().unwrap_or(AiValue::NegInfinity))
}
