//! Finite-range checks of the linearity theorems for `a_i`-invariants and
//! regularity of powers of cover ideals.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ai_table, fit_finite_tail, fit_linear, AiTable, CohomologyError, LinearFit, Method};
use crate::checks::CheckLog;
use crate::exactlin::Field;
use crate::hypergraph::Hypergraph;
use crate::monomial::{cover_ideal, krull_dim_quotient};

/// Powers from which the theorems assert eventual linearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    /// `r * ceil(n / 2) + 1`, for regularity.
    pub regularity: u32,
    /// `n^2`, for the `a_i`-invariants.
    pub ai: u32,
    /// `n + 2`, for bipartite graphs only.
    pub bipartite: Option<u32>,
}

impl Thresholds {
    pub fn of(h: &Hypergraph) -> Result<Self, CohomologyError> {
        let n = h.n() as u32;
        let r = h.rank()? as u32;
        Ok(Self {
            regularity: r * n.div_ceil(2) + 1,
            ai: n * n,
            bipartite: h.is_bipartite_graph().then_some(n + 2),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AiRowFit {
    pub p: usize,
    pub fit: Option<LinearFit>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub hypergraph: String,
    pub n: usize,
    pub rank: usize,
    pub dim: usize,
    /// Largest generator degree of `J(H)`.
    pub d_j: u32,
    pub thresholds: Thresholds,
    pub s_max: u32,
    pub table: AiTable,
    pub regularity: Vec<(u32, i64)>,
    pub regularity_fit: Option<LinearFit>,
    pub ai_fits: Vec<AiRowFit>,
    pub checks: CheckLog,
    pub notes: Vec<String>,
}

/// Computes `a_p(R/J(H)^s)` and `reg J(H)^s` for `s = 1..=s_max` and checks:
/// the regularity slope equals `d(J)`, the onset bounds that fall inside the
/// range, the intercept bound `e <= dim R/J - d + 1`, and for every
/// eventually finite `a_p` the bounds `d <= e <= n^2`. `H` must be
/// totally unimodular.
pub fn verify_theorems(
    h: &Hypergraph,
    id: &str,
    s_max: u32,
    field: Field,
    method: Method,
    budget: u64,
) -> Result<TheoremReport, CohomologyError> {
    let powers: Vec<u32> = (1..=s_max).collect();
    let table = ai_table(h, id, &powers, field, method, budget)?;
    let n = h.n();
    let rank = h.rank()?;
    let dim = krull_dim_quotient(h)?;
    let d_j = cover_ideal(h)?.max_gen_degree()?;
    let thresholds = Thresholds::of(h)?;
    let regularity = table.regularity()?;
    let mut checks = CheckLog::default();
    let mut notes = Vec::new();

    let reg_map: BTreeMap<u32, i64> = regularity.iter().copied().collect();
    let regularity_fit = match fit_linear(&reg_map, None) {
        Ok(fit) => Some(fit),
        Err(f) => {
            notes.push(format!("regularity fit failed: {}", f.reason));
            None
        }
    };
    if let Some(fit) = regularity_fit {
        checks.expect(fit.d == i64::from(d_j), "reg-slope", id, None, None, d_j, fit.d);
        onset_check(&mut checks, "reg-onset", id, fit.onset, thresholds.regularity, s_max);
        let bound = dim as i64 - fit.d + 1;
        checks.expect(fit.intercept() <= bound, "reg-intercept-upper", id, None, None, format!("<= {bound}"), fit.intercept());
        checks.expect(fit.intercept() >= 0, "reg-intercept-lower", id, None, None, ">= 0", fit.intercept());
        if let Some(tb) = thresholds.bipartite {
            onset_check(&mut checks, "bipartite-onset", id, fit.onset, tb, s_max);
        }
    } else {
        checks.skip("reg-slope", "no regularity fit");
    }

    let n2 = (n * n) as i64;
    let mut ai_fits = Vec::new();
    for p in 0..=dim {
        let column = table.column(p);
        let Some(first) = column.iter().position(|(_, a)| a.is_finite()) else {
            ai_fits.push(AiRowFit { p, fit: None, note: Some("a_p = -inf on the whole range".into()) });
            continue;
        };
        let persistent = column[first..].iter().all(|(_, a)| a.is_finite());
        checks.expect(persistent, &format!("a{p}-finite-persists"), id, Some(p), None, "finite after first finite power", "-inf later");
        let fit = match fit_finite_tail(&column) {
            Ok(fit) => fit,
            Err(f) => {
                ai_fits.push(AiRowFit { p, fit: None, note: Some(f.reason) });
                continue;
            }
        };
        let name = format!("a{p}-slope-intercept");
        let holds = fit.d <= fit.e && fit.e <= n2;
        let mut note = None;
        if fit.d == 0 {
            let msg = format!("a_{p} is constant ({}) on s >= {}; slope 0", fit.eval(fit.onset), fit.onset);
            notes.push(msg.clone());
            note = Some(msg);
            checks.skip(name, "eventually constant a_p");
        } else if s_max >= thresholds.ai || holds {
            checks.expect(holds, &name, id, Some(p), None, format!("{} <= e <= {n2}", fit.d), fit.e);
        } else {
            let msg = format!(
                "a_{p} observed fit d={}, e={} outside d <= e <= n^2, but s_max {s_max} < n^2 = {}",
                fit.d, fit.e, thresholds.ai
            );
            notes.push(msg.clone());
            note = Some(msg.clone());
            checks.skip(name, msg);
        }
        ai_fits.push(AiRowFit { p, fit: Some(fit), note });
    }

    Ok(TheoremReport {
        hypergraph: id.to_string(),
        n,
        rank,
        dim,
        d_j,
        thresholds,
        s_max,
        table,
        regularity,
        regularity_fit,
        ai_fits,
        checks,
        notes,
    })
}

fn onset_check(checks: &mut CheckLog, name: &str, id: &str, onset: u32, threshold: u32, s_max: u32) {
    if threshold <= s_max {
        checks.expect(onset <= threshold, name, id, None, None, format!("<= {threshold}"), onset);
    } else {
        checks.skip(name, format!("threshold {threshold} beyond s_max {s_max}"));
    }
}
