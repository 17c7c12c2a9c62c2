//! Graded local cohomology of `R/I` via degree complexes, `a_i`-invariants
//! and regularity of powers of cover ideals.
//!
//! Two independent routes compute `a_p(R/J(H)^s)`:
//!
//! - [`ai_oracle`] scans every degree `alpha` in a finite box and applies the
//!   Takayama formula `dim H^p_m(R/I)_alpha = dim H~_{p-|G_alpha|-1}(Delta_alpha(I))`.
//! - [`ai_patterns`] enumerates localizations and edge patterns and solves an
//!   edge-sum linear program for each pattern whose complex has homology.

mod fit;
mod oracle;
mod patterns;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complexes::{degree_complex_general, reduced_homology_dims, ComplexError, DegreeVector, ReducedHomology, SimplicialComplex};
use crate::exactlin::Field;
use crate::hypergraph::{Hypergraph, HypergraphError};
use crate::monomial::{cover_ideal, krull_dim_quotient, MonomialError, MonomialIdeal};
use crate::polytopes::PolytopeError;

pub use fit::{fit_finite_tail, fit_linear, FitFailure, LinearFit};
pub use oracle::{ai_oracle, ai_oracle_all, scan_box_size, DEFAULT_SCAN_BUDGET};
pub use patterns::{ai_patterns, ai_patterns_all, PatternScan, RealizedPattern};
pub use verify::{verify_theorems, AiRowFit, TheoremReport, Thresholds};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("scan box has {points} points, above the budget of {budget}")]
    BudgetExceeded { points: u128, budget: u64 },
    #[error("every a_i-invariant is -inf; the ideal is zero or the unit ideal")]
    NoFiniteInvariant,
    #[error("edge-sum program unbounded on a qualifying pattern (removed {removed:?}, lower {lower:?})")]
    UnboundedPattern { removed: Vec<usize>, lower: Vec<usize> },
    #[error("powers start at 1")]
    ZeroPower,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// `a_i(M) = max{t | H^i_m(M)_t != 0}`, with `max ∅ = -inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AiValue {
    NegInfinity,
    Finite(i64),
}

impl AiValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            AiValue::Finite(v) => Some(v),
            AiValue::NegInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, AiValue::Finite(_))
    }

    /// `self + k`, with `-inf + k = -inf`.
    pub fn shift(self, k: i64) -> AiValue {
        match self {
            AiValue::Finite(v) => AiValue::Finite(v + k),
            AiValue::NegInfinity => AiValue::NegInfinity,
        }
    }
}

impl fmt::Display for AiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AiValue::Finite(v) => write!(f, "{v}"),
            AiValue::NegInfinity => write!(f, "-inf"),
        }
    }
}

impl Serialize for AiValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AiValue::Finite(v) => s.serialize_i64(*v),
            AiValue::NegInfinity => s.serialize_str("-inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Patterns,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Patterns => "patterns",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "patterns" => Ok(Method::Patterns),
            other => Err(format!("unknown method `{other}` (expected oracle or patterns)")),
        }
    }
}

/// Reduced homology keyed by complex and field, safe to share across threads.
#[derive(Debug, Default)]
pub struct HomologyCache {
    map: Mutex<HashMap<(SimplicialComplex, Field), ReducedHomology>>,
}

impl HomologyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn homology(&self, complex: &SimplicialComplex, field: Field) -> Result<ReducedHomology, ComplexError> {
        let key = (complex.clone(), field);
        if let Some(h) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(h.clone());
        }
        let h = reduced_homology_dims(complex, field)?;
        self.map.lock().expect("cache lock").insert(key, h.clone());
        Ok(h)
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Takayama: `dim H^p_m(R/I)_alpha = dim H~_{p - |G_alpha| - 1}(Delta_alpha(I))`.
pub fn local_cohomology_dim(
    ideal: &MonomialIdeal,
    p: usize,
    alpha: &DegreeVector,
    field: Field,
) -> Result<usize, CohomologyError> {
    let complex = degree_complex_general(ideal, alpha);
    let degree = p as isize - alpha.negative_support().len() as isize - 1;
    Ok(reduced_homology_dims(&complex, field)?.dim(degree))
}

/// `reg R/I^s + 1 = 1 + max_p (a_p + p)`, skipping `-inf` entries.
pub fn regularity_from_ai(values: &[AiValue]) -> Result<i64, CohomologyError> {
    values
        .iter()
        .enumerate()
        .filter_map(|(p, a)| a.finite().map(|v| v + p as i64))
        .max()
        .map(|r| r + 1)
        .ok_or(CohomologyError::NoFiniteInvariant)
}

/// `a_p(R/J(H)^s)` for `p = 0..=dim R/J(H)` by the chosen method.
pub fn ai_values(
    h: &Hypergraph,
    s: u32,
    field: Field,
    method: Method,
    budget: u64,
    cache: &HomologyCache,
) -> Result<Vec<AiValue>, CohomologyError> {
    if s == 0 {
        return Err(CohomologyError::ZeroPower);
    }
    let dim = krull_dim_quotient(h)?;
    let mut values = match method {
        Method::Oracle => {
            let ideal = cover_ideal(h)?.power(s)?;
            ai_oracle_all(&ideal, field, budget, cache)?
        }
        Method::Patterns => ai_patterns_all(h, s, field, cache)?.values,
    };
    values.truncate(dim + 1);
    Ok(values)
}

/// `reg J(H)^s = 1 + max_p (a_p(R/J(H)^s) + p)`.
pub fn regularity(h: &Hypergraph, s: u32, field: Field, method: Method) -> Result<i64, CohomologyError> {
    let values = ai_values(h, s, field, method, DEFAULT_SCAN_BUDGET, &HomologyCache::new())?;
    regularity_from_ai(&values)
}

/// `a_p(R/J(H)^s)` for a range of powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AiTable {
    pub hypergraph: String,
    pub method: Method,
    #[serde(serialize_with = "serialize_field")]
    pub field: Field,
    pub dim: usize,
    pub powers: Vec<u32>,
    /// `rows[i][p]` is `a_p` at power `powers[i]`.
    pub rows: Vec<Vec<AiValue>>,
}

fn serialize_field<S: Serializer>(f: &Field, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.tag())
}

impl AiTable {
    pub fn get(&self, p: usize, s: u32) -> Option<AiValue> {
        let i = self.powers.iter().position(|&t| t == s)?;
        self.rows[i].get(p).copied()
    }

    /// `(s, a_p)` pairs for one cohomological index.
    pub fn column(&self, p: usize) -> Vec<(u32, AiValue)> {
        self.powers
            .iter()
            .zip(&self.rows)
            .map(|(&s, row)| (s, row.get(p).copied().unwrap_or(AiValue::NegInfinity)))
            .collect()
    }

    /// `(s, reg J^s)` pairs.
    pub fn regularity(&self) -> Result<Vec<(u32, i64)>, CohomologyError> {
        self.powers
            .iter()
            .zip(&self.rows)
            .map(|(&s, row)| Ok((s, regularity_from_ai(row)?)))
            .collect()
    }
}

/// Builds an [`AiTable`] over `powers`, sharing one homology cache.
pub fn ai_table(
    h: &Hypergraph,
    id: &str,
    powers: &[u32],
    field: Field,
    method: Method,
    budget: u64,
) -> Result<AiTable, CohomologyError> {
    let cache = HomologyCache::new();
    let dim = krull_dim_quotient(h)?;
    let rows = powers
        .iter()
        .map(|&s| ai_values(h, s, field, method, budget, &cache))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AiTable {
        hypergraph: id.to_string(),
        method,
        field,
        dim,
        powers: powers.to_vec(),
        rows,
    })
}
