//! Brute-force `a_i`-invariants by scanning degrees.
//!
//! Coordinate `i` ranges over `{-1} ∪ [0, rho_i]` with `rho_i` the largest
//! exponent of `x_i` among the generators. Values below `-1` give the same
//! complex as `-1` with a smaller `|alpha|`. Once `alpha_i >= rho_i` no
//! generator has `g_i > alpha_i`, so vertex `i` lies in every facet of a
//! nonvoid degree complex; the complex is a cone and carries no homology.

use rayon::prelude::*;

use super::{AiValue, CohomologyError, HomologyCache};
use crate::complexes::{degree_complex_general, DegreeVector};
use crate::exactlin::Field;
use crate::monomial::MonomialIdeal;

/// Default cap on the number of scanned degrees.
pub const DEFAULT_SCAN_BUDGET: u64 = 2_000_000;

/// Number of degrees in the scan box of `ideal`.
pub fn scan_box_size(ideal: &MonomialIdeal) -> u128 {
    ideal
        .max_exponents()
        .iter()
        .map(|&r| u128::from(r) + 2)
        .product()
}

/// `a_p(R/I)` for `p = 0..=n`. Refuses boxes larger than `budget`.
pub fn ai_oracle_all(
    ideal: &MonomialIdeal,
    field: Field,
    budget: u64,
    cache: &HomologyCache,
) -> Result<Vec<AiValue>, CohomologyError> {
    let n = ideal.n();
    let points = scan_box_size(ideal);
    if points > u128::from(budget) {
        return Err(CohomologyError::BudgetExceeded { points, budget });
    }
    let radices: Vec<u64> = ideal.max_exponents().iter().map(|&r| u64::from(r) + 2).collect();
    let best = (0..points as u64)
        .into_par_iter()
        .map(|index| -> Result<Vec<Option<i64>>, CohomologyError> {
            let mut best = vec![None; n + 1];
            let alpha = decode(index, &radices);
            let complex = degree_complex_general(ideal, &alpha);
            if complex.is_void() || complex.cone_point().is_some() {
                return Ok(best);
            }
            let shift = alpha.negative_support().len() as isize + 1;
            let total = alpha.total();
            for k in cache.homology(&complex, field)?.nonzero_degrees() {
                best[(k + shift) as usize] = Some(total);
            }
            Ok(best)
        })
        .try_reduce(|| vec![None; n + 1], |a, b| Ok(a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect()))?;
    Ok(best
        .into_iter()
        .map(|v| v.map_or(AiValue::NegInfinity, AiValue::Finite))
        .collect())
}

/// `a_p(R/I)`; `-inf` for `p > n`.
pub fn ai_oracle(ideal: &MonomialIdeal, p: usize, field: Field, budget: u64) -> Result<AiValue, CohomologyError> {
    let all = ai_oracle_all(ideal, field, budget, &HomologyCache::new())?;
    Ok(all.get(p).copied().unwrap_or(AiValue::NegInfinity))
}

/// Mixed-radix decoding; digit `0` stands for `-1`, digit `k` for `k - 1`.
fn decode(mut index: u64, radices: &[u64]) -> DegreeVector {
    let mut alpha = Vec::with_capacity(radices.len());
    for &r in radices {
        alpha.push((index % r) as i64 - 1);
        index /= r;
    }
    DegreeVector::new(alpha)
}
