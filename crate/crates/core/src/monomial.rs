//! Monomial ideals in `K[x_1..x_n]`, stored by their minimal generators.
//!
//! Generators are kept minimal under divisibility and sorted in graded
//! lexicographic order (degree first, then `x_1 > x_2 > ...`), so two ideals
//! are equal iff their generator lists are equal.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("ambient variable counts differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("monomial has {got} exponents in a ring with {expected} variables")]
    ExponentLength { expected: usize, got: usize },
    #[error("power 0 requested: I^0 is the unit ideal by convention, which is not computed here")]
    ZeroPower,
    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,
    #[error("hypergraph has no edges")]
    NoEdges,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The squarefree monomial `x_S`.
    pub fn squarefree(n: usize, set: VertexSet) -> Self {
        Self((1..=n).map(|v| u32::from(set.contains(v))).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Graded lex: lower degree first, then larger exponent of `x_1`, and so on.
    pub fn cmp_graded_lex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl MonomialIdeal {
    /// The ideal generated by `gens`, canonicalized.
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self, MonomialError> {
        if let Some(g) = gens.iter().find(|g| g.n() != n) {
            return Err(MonomialError::ExponentLength {
                expected: n,
                got: g.n(),
            });
        }
        Ok(Self::canonical(n, gens))
    }

    fn canonical(n: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_by(Monomial::cmp_graded_lex);
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimal.iter().any(|h| h.divides(&g)) {
                minimal.push(g);
            }
        }
        Self { n, gens: minimal }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    /// The prime `(x_i | i in set)`.
    pub fn prime(n: usize, set: VertexSet) -> Self {
        let gens = set
            .iter()
            .map(|v| Monomial::squarefree(n, VertexSet::from_vertices([v])))
            .collect();
        Self::canonical(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == 0)
    }

    /// Whether some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        m.n() == self.n && self.gens.iter().any(|g| g.divides(m))
    }

    /// Whether `other` is a subideal of `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        self.n == other.n && other.gens.iter().all(|g| self.contains(g))
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<(), MonomialError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(MonomialError::AmbientMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.check_ambient(other)?;
        let gens: Vec<Monomial> = self
            .gens
            .par_iter()
            .flat_map_iter(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        Ok(Self::canonical(self.n, gens))
    }

    /// `I^s` for `s >= 1`, by repeated multiplication with minimalization.
    pub fn power(&self, s: u32) -> Result<MonomialIdeal, MonomialError> {
        if s == 0 {
            return Err(MonomialError::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Generated by the pairwise lcms of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.check_ambient(other)?;
        let gens: Vec<Monomial> = self
            .gens
            .par_iter()
            .flat_map_iter(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        Ok(Self::canonical(self.n, gens))
    }

    pub fn max_gen_degree(&self) -> Result<u32, MonomialError> {
        self.gens
            .iter()
            .map(Monomial::degree)
            .max()
            .ok_or(MonomialError::ZeroIdeal)
    }

    /// Largest exponent of each variable over the minimal generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn is_minimal(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, g)| {
            self.gens
                .iter()
                .enumerate()
                .all(|(j, h)| i == j || !h.divides(g))
        })
    }
}

/// `J(H)`, generated by `x_tau` over the minimal vertex covers `tau`.
pub fn cover_ideal(h: &Hypergraph) -> Result<MonomialIdeal, MonomialError> {
    if h.num_edges() == 0 {
        return Err(MonomialError::NoEdges);
    }
    let gens = h
        .minimal_vertex_covers()
        .into_iter()
        .map(|c| Monomial::squarefree(h.n(), c))
        .collect();
    Ok(MonomialIdeal::canonical(h.n(), gens))
}

/// `J(H)` as the intersection of the edge primes `(x_i | i in E)`.
pub fn cover_ideal_by_intersection(h: &Hypergraph) -> Result<MonomialIdeal, MonomialError> {
    symbolic_power_cover(h, 1)
}

/// `J(H)^(s)`: the intersection over edges of `(x_i | i in E)^s`.
pub fn symbolic_power_cover(h: &Hypergraph, s: u32) -> Result<MonomialIdeal, MonomialError> {
    let (first, rest) = h.edges().split_first().ok_or(MonomialError::NoEdges)?;
    let n = h.n();
    let mut acc = MonomialIdeal::prime(n, *first).power(s)?;
    for &e in rest {
        acc = acc.intersect(&MonomialIdeal::prime(n, e).power(s)?)?;
    }
    Ok(acc)
}

/// `dim R/J(H)`: the largest facet `V \ E` of the Stanley-Reisner complex
/// has size `n - min |E|`.
pub fn krull_dim_quotient(h: &Hypergraph) -> Result<usize, MonomialError> {
    let min = h.edges().iter().map(|e| e.len()).min().ok_or(MonomialError::NoEdges)?;
    Ok(h.n() - min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| mono(g)).collect()).unwrap()
    }

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        let edges: Vec<Vec<usize>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::new(n, &edges).unwrap()
    }

    #[test]
    fn cover_ideal_examples() {
        let c4 = Hypergraph::cycle(4).unwrap();
        let j = cover_ideal(&c4).unwrap();
        assert_eq!(j.gens(), &[mono(&[1, 0, 1, 0]), mono(&[0, 1, 0, 1])]);
        assert_eq!(j.to_string(), "(x1x3, x2x4)");
        assert_eq!(cover_ideal(&hg(2, &[&[1, 2]])).unwrap(), ideal(2, &[&[1, 0], &[0, 1]]));
        let path = cover_ideal(&hg(3, &[&[1, 2], &[2, 3]])).unwrap();
        assert_eq!(path.gens(), &[mono(&[0, 1, 0]), mono(&[1, 0, 1])]);
        assert_eq!(cover_ideal(&hg(2, &[])), Err(MonomialError::NoEdges));
    }

    #[test]
    fn cover_ideal_equals_edge_prime_intersection() {
        for h in [
            Hypergraph::cycle(3).unwrap(),
            Hypergraph::cycle(5).unwrap(),
            Hypergraph::complete_bipartite(2, 3).unwrap(),
            Hypergraph::interval_hypergraph(5, &[(1, 3), (2, 4), (4, 5)]).unwrap(),
        ] {
            assert_eq!(cover_ideal(&h).unwrap(), cover_ideal_by_intersection(&h).unwrap());
        }
    }

    #[test]
    fn power_examples() {
        let m = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(m.power(2).unwrap(), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(m.power(1).unwrap(), m);
        let j = ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let sq = j.power(2).unwrap();
        assert_eq!(sq.gens(), &[mono(&[2, 0, 2, 0]), mono(&[1, 1, 1, 1]), mono(&[0, 2, 0, 2])]);
        assert_eq!(m.power(0), Err(MonomialError::ZeroPower));
    }

    #[test]
    fn intersect_examples() {
        let a = ideal(2, &[&[1, 0]]);
        let b = ideal(2, &[&[0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), ideal(2, &[&[1, 1]]));
        let i = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(i.intersect(&i).unwrap(), i);
        // lcm table: x1^x2 -> x1x2, x1^x3 -> x1x3, x2^x2 -> x2, x2^x3 -> x2x3; minimal: x2, x1x3.
        let j = ideal(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(i.intersect(&j).unwrap(), ideal(3, &[&[0, 1, 0], &[1, 0, 1]]));
        assert!(i.intersect(&a).is_err());
    }

    #[test]
    fn symbolic_power_examples() {
        let c4 = Hypergraph::cycle(4).unwrap();
        let j = cover_ideal(&c4).unwrap();
        assert_eq!(symbolic_power_cover(&c4, 1).unwrap(), j);
        assert_eq!(symbolic_power_cover(&c4, 2).unwrap(), j.power(2).unwrap());

        let c3 = Hypergraph::cycle(3).unwrap();
        let sym = symbolic_power_cover(&c3, 2).unwrap();
        let ord = cover_ideal(&c3).unwrap().power(2).unwrap();
        let x123 = mono(&[1, 1, 1]);
        assert!(sym.contains(&x123));
        assert!(!ord.contains(&x123));
        assert!(sym.contains_ideal(&ord));
        assert_ne!(sym, ord);
    }

    #[test]
    fn contains_examples() {
        let j = ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert!(j.contains(&mono(&[2, 0, 1, 0])));
        assert!(!j.contains(&mono(&[1, 1, 0, 0])));
        assert!(!MonomialIdeal::zero(4).contains(&Monomial::one(4)));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(ideal(2, &[&[1, 0], &[0, 1]]).max_gen_degree().unwrap(), 1);
        let j = cover_ideal(&Hypergraph::cycle(4).unwrap()).unwrap();
        assert_eq!(j.max_gen_degree().unwrap(), 2);
        assert_eq!(j.power(3).unwrap().max_gen_degree().unwrap(), 6);
        assert_eq!(MonomialIdeal::zero(2).max_gen_degree(), Err(MonomialError::ZeroIdeal));
    }

    #[test]
    fn krull_dim_examples() {
        assert_eq!(krull_dim_quotient(&Hypergraph::cycle(4).unwrap()).unwrap(), 2);
        assert_eq!(krull_dim_quotient(&hg(2, &[&[1, 2]])).unwrap(), 0);
        assert_eq!(krull_dim_quotient(&hg(3, &[&[1, 2], &[2, 3]])).unwrap(), 1);
    }

    #[test]
    fn canonical_form_is_minimal_and_sorted() {
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 0], &[0, 0, 2], &[1, 0, 3]]);
        assert_eq!(i.gens(), &[mono(&[1, 0, 0]), mono(&[0, 0, 2])]);
        assert!(i.is_minimal());
        assert!(MonomialIdeal::new(2, vec![mono(&[1])]).is_err());
    }
}
