//! Exact affine fits of integer sequences indexed by the power `s`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::AiValue;

/// `value(s) = d s - e` for every observed `s` from `onset` to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearFit {
    pub d: i64,
    pub e: i64,
    pub onset: u32,
    pub end: u32,
}

impl LinearFit {
    /// The constant term, `-e`.
    pub fn intercept(&self) -> i64 {
        -self.e
    }

    pub fn eval(&self, s: u32) -> i64 {
        self.d * i64::from(s) - self.e
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitFailure {
    pub reason: String,
}

/// Fits the longest affine suffix of `values`, whose keys must be consecutive.
pub fn fit_linear(values: &BTreeMap<u32, i64>, expected_slope: Option<i64>) -> Result<LinearFit, FitFailure> {
    let pts: Vec<(u32, i64)> = values.iter().map(|(&s, &v)| (s, v)).collect();
    if pts.len() < 2 {
        return Err(FitFailure {
            reason: format!("need at least 2 values, got {}", pts.len()),
        });
    }
    if let Some(w) = pts.windows(2).find(|w| w[1].0 != w[0].0 + 1) {
        return Err(FitFailure {
            reason: format!("powers {} and {} are not consecutive", w[0].0, w[1].0),
        });
    }
    let last = pts.len() - 1;
    let d = pts[last].1 - pts[last - 1].1;
    let mut start = last - 1;
    while start > 0 && pts[start].1 - pts[start - 1].1 == d {
        start -= 1;
    }
    let (onset, v) = pts[start];
    let fit = LinearFit {
        d,
        e: d * i64::from(onset) - v,
        onset,
        end: pts[last].0,
    };
    if let Some(want) = expected_slope {
        if want != d {
            return Err(FitFailure {
                reason: format!("slope {d} differs from expected {want}"),
            });
        }
    }
    Ok(fit)
}

/// Fits the longest run of finite values at the end of `column`.
pub fn fit_finite_tail(column: &[(u32, AiValue)]) -> Result<LinearFit, FitFailure> {
    let mut tail = BTreeMap::new();
    for &(s, a) in column.iter().rev() {
        match a.finite() {
            Some(v) => {
                tail.insert(s, v);
            }
            None => break,
        }
    }
    fit_linear(&tail, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(u32, i64)]) -> BTreeMap<u32, i64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn exact_affine_data() {
        let fit = fit_linear(&map(&[(1, 3), (2, 5), (3, 7)]), Some(2)).unwrap();
        assert_eq!((fit.d, fit.e, fit.onset), (2, -1, 1));
        assert_eq!(fit.intercept(), 1);
        let fit = fit_linear(&map(&[(1, 0), (2, 2), (3, 4)]), None).unwrap();
        assert_eq!((fit.d, fit.e, fit.onset), (2, 2, 1));
    }

    #[test]
    fn kink_moves_the_onset() {
        let fit = fit_linear(&map(&[(1, 5), (2, 6), (3, 8), (4, 10)]), None).unwrap();
        assert_eq!((fit.d, fit.onset), (2, 2));
        assert_eq!(fit.eval(4), 10);
    }

    #[test]
    fn failures() {
        assert!(fit_linear(&map(&[(1, 5)]), None).is_err());
        assert!(fit_linear(&map(&[(1, 5), (3, 6)]), None).is_err());
        assert!(fit_linear(&map(&[(1, 3), (2, 5)]), Some(3)).is_err());
    }

    #[test]
    fn finite_tail() {
        let col = [
            (1, AiValue::NegInfinity),
            (2, AiValue::Finite(1)),
            (3, AiValue::Finite(3)),
            (4, AiValue::Finite(5)),
        ];
        let fit = fit_finite_tail(&col).unwrap();
        assert_eq!((fit.d, fit.e, fit.onset), (2, 3, 2));
    }
}
