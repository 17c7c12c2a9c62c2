//! Dense matrices over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{LinAlgError, Rational};

/// Coefficient field used for rank computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    /// The rational numbers.
    Rationals,
    /// The prime field `F_p`.
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Rationals
    }
}

impl Field {
    /// Builds `F_p`, rejecting moduli that are not prime.
    pub fn prime(p: u64) -> Result<Field, LinAlgError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(LinAlgError::NotPrime(p))
        }
    }

    /// Short tag used in tables: `q` or `fp:<p>`.
    pub fn tag(&self) -> String {
        match self {
            Field::Rationals => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::EntryCount {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::RaggedRows);
            }
            entries.extend(row.iter().map(|&x| Rational::from_integer(BigInt::from(x))));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Submatrix on the given row and column index lists, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Entries as `i64` when every entry is an integer that fits.
    pub fn to_i64_entries(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Entries are first scaled to a common denominator so that every
    /// intermediate value is an integer minor of the scaled matrix.
    pub fn det(&self) -> Result<Rational, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let denom = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut a: Vec<BigInt> = self
            .entries
            .iter()
            .map(|x| x.numer() * (&denom / x.denom()))
            .collect();
        let det = bareiss_det(&mut a, n);
        Ok(Rational::new(det, num_traits::pow(denom, n)))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..cols {
                    a.swap(pivot * cols + j, rank * cols + j);
                }
            }
            let inv = a[rank * cols + col].recip();
            for j in col..cols {
                let v = &a[rank * cols + j] * &inv;
                a[rank * cols + j] = v;
            }
            for r in 0..rows {
                if r == rank || a[r * cols + col].is_zero() {
                    continue;
                }
                let factor = a[r * cols + col].clone();
                for j in col..cols {
                    let delta = &factor * &a[rank * cols + j];
                    a[r * cols + j] -= delta;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank over `F_p`. Fails when `p` is not prime or divides a denominator.
    pub fn rank_mod(&self, p: u64) -> Result<usize, LinAlgError> {
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        let modulus = BigInt::from(p);
        let mut a = Vec::with_capacity(self.entries.len());
        for x in &self.entries {
            let den = x.denom().mod_floor(&modulus).to_u64().unwrap_or(0);
            if den == 0 {
                return Err(LinAlgError::DenominatorDivisibleBy(p));
            }
            let num = x.numer().mod_floor(&modulus).to_u64().unwrap_or(0);
            a.push(mul_mod(num, pow_mod(den, p - 2, p), p));
        }
        Ok(rank_mod_p(&mut a, self.rows, self.cols, p))
    }

    pub fn rank_over(&self, field: Field) -> Result<usize, LinAlgError> {
        match field {
            Field::Rationals => Ok(self.rank()),
            Field::Prime(p) => self.rank_mod(p),
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Bareiss elimination on an `n x n` integer matrix, destroying `a`.
fn bareiss_det(a: &mut [BigInt], n: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[(n - 1) * n + (n - 1)]
}

/// Bareiss determinant for small integer matrices.
///
/// Every intermediate value is a minor of the input, so the result is exact
/// whenever those minors fit in `i128`; the caller bounds the size.
pub fn det_small_integer(entries: &[i64], n: usize) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut a: Vec<i128> = entries.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
            a[i * n + k] = 0;
        }
        prev = a[k * n + k];
    }
    sign * a[n * n - 1]
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = pow_mod(a[rank * cols + col], p - 2, p);
        for j in col..cols {
            a[rank * cols + j] = mul_mod(a[rank * cols + j], inv, p);
        }
        for r in 0..rows {
            let factor = a[r * cols + col];
            if r == rank || factor == 0 {
                continue;
            }
            for j in col..cols {
                let sub = mul_mod(factor, a[rank * cols + j], p);
                a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rational as an `i64` when it is an integer that fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Rational from an integer.
pub fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}
