//! Simplicial complexes, degree complexes of monomial ideals and reduced
//! simplicial homology.
//!
//! The void complex (no faces at all) and the irrelevant complex `{∅}` are
//! different objects: the first carries no homology, the second has a
//! one-dimensional reduced homology group in degree `-1`. Local cohomology
//! computations depend on keeping them apart.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactlin::{int, Field, LinAlgError, RationalMatrix};
use crate::hypergraph::{minimal_transversals, Hypergraph, VertexSet};
use crate::monomial::MonomialIdeal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("degree vector has a negative entry at position {0}; localize first")]
    NegativeDegree(usize),
    #[error("degree vector has length {got}, ambient space has {expected} vertices")]
    DegreeLength { expected: usize, got: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A simplicial complex on `{1..n}`, either void or given by its facets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Option<Vec<VertexSet>>,
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn void(n: usize) -> Self {
        Self { n, facets: None }
    }

    /// The complex `{∅}`.
    pub fn irrelevant(n: usize) -> Self {
        Self {
            n,
            facets: Some(vec![VertexSet::EMPTY]),
        }
    }

    /// Generated by `facets`; non-maximal members are dropped. An empty list
    /// gives the void complex.
    pub fn from_facets(n: usize, facets: Vec<VertexSet>) -> Self {
        if facets.is_empty() {
            return Self::void(n);
        }
        let mut maximal: Vec<VertexSet> = Vec::with_capacity(facets.len());
        for &f in &facets {
            if !facets.iter().any(|&g| g != f && f.is_subset(g)) && !maximal.contains(&f) {
                maximal.push(f);
            }
        }
        maximal.sort_by(VertexSet::cmp_graded_lex);
        Self {
            n,
            facets: Some(maximal),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_none()
    }

    /// `None` for the void complex.
    pub fn facets(&self) -> Option<&[VertexSet]> {
        self.facets.as_deref()
    }

    /// Dimension; `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        self.facets
            .as_ref()
            .map(|fs| fs.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1))
    }

    pub fn contains_face(&self, face: VertexSet) -> bool {
        self.facets
            .as_ref()
            .is_some_and(|fs| fs.iter().any(|&f| face.is_subset(f)))
    }

    /// A vertex lying in every facet, if any.
    pub fn cone_point(&self) -> Option<usize> {
        let fs = self.facets.as_ref()?;
        let common = fs
            .iter()
            .fold(VertexSet::full(self.n), |acc, &f| acc.intersection(f));
        common.iter().next()
    }

    /// Faces grouped by dimension: entry `k` holds the `(k - 1)`-faces in
    /// increasing bitmask order. Empty for the void complex.
    pub fn faces_by_dim(&self) -> Vec<Vec<VertexSet>> {
        let Some(fs) = &self.facets else {
            return Vec::new();
        };
        let top = fs.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut seen = std::collections::HashSet::new();
        for f in fs {
            // Submask enumeration of the facet, including the empty set.
            let bits = f.bits();
            let mut sub = bits;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & bits;
            }
        }
        let mut by_dim = vec![Vec::new(); top + 1];
        for b in seen {
            by_dim[b.count_ones() as usize].push(VertexSet::from_bits(b));
        }
        for layer in &mut by_dim {
            layer.sort();
        }
        by_dim
    }

    /// Reduced Euler characteristic `sum_k (-1)^k f_k`, starting at `k = -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces_by_dim()
            .iter()
            .enumerate()
            .map(|(k, layer)| if k % 2 == 1 { layer.len() as i64 } else { -(layer.len() as i64) })
            .sum()
    }

    /// Facet lists as sorted vertex vectors; `None` for the void complex.
    pub fn facet_lists(&self) -> Option<Vec<Vec<usize>>> {
        self.facets
            .as_ref()
            .map(|fs| fs.iter().map(|f| f.to_vec()).collect())
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.facets {
            None => write!(f, "Void"),
            Some(fs) => {
                write!(f, "<")?;
                for (i, facet) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{facet:?}")?;
                }
                write!(f, ">")
            }
        }
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.facet_lists().serialize(s)
    }
}

/// An integer degree `alpha in Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeVector(Vec<i64>);

impl DegreeVector {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `G_alpha = {i | alpha_i < 0}`.
    pub fn negative_support(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &a)| a < 0)
                .map(|(i, _)| i + 1),
        )
    }

    /// `|alpha| = alpha_1 + ... + alpha_n`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// The degree complex `{F ⊆ V \ G_alpha : x^alpha ∉ I R_F}` of a monomial ideal.
///
/// For a generator `g`, let `S_g = {j ∉ G_alpha : g_j > alpha_j}`. Then `F` is
/// a face iff `F ∌ S_g`-as-a-subset for every `g`, i.e. `V \ G_alpha \ F`
/// meets every `S_g`. The facets are therefore the complements of the
/// minimal transversals of `{S_g}`. Coordinates below `-1` behave exactly
/// like `-1`.
pub fn degree_complex_general(ideal: &MonomialIdeal, alpha: &DegreeVector) -> SimplicialComplex {
    let n = ideal.n();
    assert_eq!(alpha.len(), n, "degree vector length must match the ambient ring");
    let neg = alpha.negative_support();
    let ground = VertexSet::full(n).difference(neg);
    let supports: Vec<VertexSet> = ideal
        .gens()
        .iter()
        .map(|g| {
            VertexSet::from_vertices(ground.iter().filter(|&j| {
                i64::from(g.exponents()[j - 1]) > alpha.entries()[j - 1]
            }))
        })
        .collect();
    let facets: Vec<VertexSet> = minimal_transversals(&supports)
        .into_iter()
        .map(|t| ground.difference(t))
        .collect();
    SimplicialComplex::from_facets(n, facets)
}

/// Degree complex of `J(H)^s` at `alpha in N^n` for a unimodular `H`:
/// generated by `V \ E` over the edges with `sum_{i in E} alpha_i <= s - 1`.
pub fn degree_complex_unimodular(
    h: &Hypergraph,
    s: u32,
    alpha: &DegreeVector,
) -> Result<SimplicialComplex, ComplexError> {
    if alpha.len() != h.n() {
        return Err(ComplexError::DegreeLength {
            expected: h.n(),
            got: alpha.len(),
        });
    }
    if let Some(i) = alpha.entries().iter().position(|&a| a < 0) {
        return Err(ComplexError::NegativeDegree(i + 1));
    }
    let full = h.vertices();
    let facets = h
        .edges()
        .iter()
        .filter(|e| edge_sum(**e, alpha.entries()) < i64::from(s))
        .map(|&e| full.difference(e))
        .collect();
    Ok(SimplicialComplex::from_facets(h.n(), facets))
}

pub(crate) fn edge_sum(edge: VertexSet, alpha: &[i64]) -> i64 {
    edge.iter().map(|v| alpha[v - 1]).sum()
}

/// Dimensions of reduced homology groups over a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedHomology {
    /// Entry `k` is `dim H~_{k-1}`. Empty for the void complex.
    dims: Vec<usize>,
}

impl ReducedHomology {
    /// `dim H~_degree`, zero outside the computed range.
    pub fn dim(&self, degree: isize) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|k| self.dims.get(k).copied())
            .unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Degrees `i` with `H~_i != 0`.
    pub fn nonzero_degrees(&self) -> impl Iterator<Item = isize> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, _)| k as isize - 1)
    }

    /// `(degree, dim)` pairs from `-1` to the complex dimension.
    pub fn entries(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.dims.iter().enumerate().map(|(k, &d)| (k as isize - 1, d))
    }

    pub fn alternating_sum(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 1 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Reduced simplicial homology via boundary-matrix ranks:
/// `dim H~_k = f_k - rank d_k - rank d_{k+1}`.
pub fn reduced_homology_dims(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<ReducedHomology, ComplexError> {
    let layers = complex.faces_by_dim();
    if layers.is_empty() {
        return Ok(ReducedHomology { dims: Vec::new() });
    }
    // ranks[k] = rank of the boundary map from layer k to layer k - 1.
    let mut ranks = vec![0usize; layers.len() + 1];
    for k in 1..layers.len() {
        ranks[k] = boundary_matrix(&layers[k], &layers[k - 1]).rank_over(field)?;
    }
    let dims = (0..layers.len())
        .map(|k| layers[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    Ok(ReducedHomology { dims })
}

pub fn is_acyclic(complex: &SimplicialComplex, field: Field) -> Result<bool, ComplexError> {
    Ok(reduced_homology_dims(complex, field)?.is_acyclic())
}

/// Matrix of the simplicial boundary from `faces` (columns) to `lower`
/// (rows), with the sign `(-1)^i` for dropping the `i`-th smallest vertex.
fn boundary_matrix(faces: &[VertexSet], lower: &[VertexSet]) -> RationalMatrix {
    let index: HashMap<VertexSet, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut m = RationalMatrix::zeros(lower.len(), faces.len());
    for (j, &face) in faces.iter().enumerate() {
        for (i, v) in face.iter().enumerate() {
            let mut sub = face;
            sub.remove(v);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.set(index[&sub], j, int(sign));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, facets.iter().map(|f| vs(f)).collect())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Monomial::new(g.to_vec())).collect()).unwrap()
    }

    /// Direct transcription of the definition: test every subset of `V \ G`.
    fn degree_complex_by_subsets(ideal: &MonomialIdeal, alpha: &DegreeVector) -> SimplicialComplex {
        let n = ideal.n();
        let neg = alpha.negative_support();
        let ground = VertexSet::full(n).difference(neg);
        let faces: Vec<VertexSet> = (0..1u64 << n)
            .map(VertexSet::from_bits)
            .filter(|f| f.is_subset(ground))
            .filter(|f| {
                let inverted = f.union(neg);
                !ideal.gens().iter().any(|g| {
                    (1..=n).all(|j| {
                        inverted.contains(j) || i64::from(g.exponents()[j - 1]) <= alpha.entries()[j - 1]
                    })
                })
            })
            .collect();
        SimplicialComplex::from_facets(n, faces)
    }

    #[test]
    fn general_degree_complex_examples() {
        let j = ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let d = degree_complex_general(&j, &DegreeVector::zero(4));
        assert_eq!(d, cx(4, &[&[3, 4], &[1, 4], &[1, 2], &[2, 3]]));
        assert_eq!(d, degree_complex_by_subsets(&j, &DegreeVector::zero(4)));

        let x1 = ideal(1, &[&[1]]);
        let d = degree_complex_general(&x1, &DegreeVector::new(vec![0]));
        assert_eq!(d, SimplicialComplex::irrelevant(1));
        let d = degree_complex_general(&x1, &DegreeVector::new(vec![1]));
        assert!(d.is_void());
        // x1^{-1} lies in (x1) once x1 is inverted, so even the empty face fails.
        let d = degree_complex_general(&x1, &DegreeVector::new(vec![-1]));
        assert!(d.is_void());
    }

    #[test]
    fn general_matches_subset_enumeration() {
        let i = ideal(3, &[&[2, 1, 0], &[0, 2, 1], &[1, 0, 3]]);
        for a in -2..=3 {
            for b in -1..=3 {
                for c in -1..=3 {
                    let alpha = DegreeVector::new(vec![a, b, c]);
                    assert_eq!(
                        degree_complex_general(&i, &alpha),
                        degree_complex_by_subsets(&i, &alpha),
                        "{alpha:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn unimodular_degree_complex_examples() {
        let c4 = Hypergraph::cycle(4).unwrap();
        let d = degree_complex_unimodular(&c4, 1, &DegreeVector::zero(4)).unwrap();
        assert_eq!(d, cx(4, &[&[3, 4], &[1, 4], &[1, 2], &[2, 3]]));
        let d = degree_complex_unimodular(&c4, 1, &DegreeVector::new(vec![1, 0, 0, 0])).unwrap();
        // Edges {2,3} and {3,4} have sum 0; their complements are {1,4} and {1,2}.
        assert_eq!(d, cx(4, &[&[1, 4], &[1, 2]]));
        let d = degree_complex_unimodular(&c4, 1, &DegreeVector::new(vec![1, 1, 1, 1])).unwrap();
        assert!(d.is_void());
        assert_eq!(
            degree_complex_unimodular(&c4, 1, &DegreeVector::new(vec![0, -1, 0, 0])),
            Err(ComplexError::NegativeDegree(2))
        );
    }

    #[test]
    fn homology_examples() {
        let circle = cx(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let h = reduced_homology_dims(&circle, Field::Rationals).unwrap();
        assert_eq!((h.dim(0), h.dim(1)), (0, 1));

        let simplex = cx(3, &[&[1, 2, 3]]);
        assert!(reduced_homology_dims(&simplex, Field::Rationals).unwrap().is_acyclic());

        let points = cx(2, &[&[1], &[2]]);
        assert_eq!(reduced_homology_dims(&points, Field::Rationals).unwrap().dim(0), 1);
    }

    #[test]
    fn void_and_irrelevant_complexes() {
        let void = SimplicialComplex::void(3);
        assert!(is_acyclic(&void, Field::Rationals).unwrap());
        assert_eq!(void.dim(), None);
        let irr = SimplicialComplex::irrelevant(3);
        let h = reduced_homology_dims(&irr, Field::Rationals).unwrap();
        assert_eq!(h.dim(-1), 1);
        assert!(!h.is_acyclic());
        assert_eq!(irr.dim(), Some(-1));
        let c4 = cx(4, &[&[3, 4], &[1, 4], &[1, 2], &[2, 3]]);
        assert!(!is_acyclic(&c4, Field::Rationals).unwrap());
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // Six-vertex triangulation of RP^2: H~_1 and H~_2 vanish over Q but
        // not over F_2.
        let rp2 = cx(
            6,
            &[
                &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
                &[2, 3, 5], &[3, 4, 6], &[2, 4, 5], &[3, 5, 6], &[2, 4, 6],
            ],
        );
        let q = reduced_homology_dims(&rp2, Field::Rationals).unwrap();
        assert!(q.is_acyclic());
        let f2 = reduced_homology_dims(&rp2, Field::Prime(2)).unwrap();
        assert_eq!((f2.dim(1), f2.dim(2)), (1, 1));
    }

    #[test]
    fn cone_point_detection() {
        assert_eq!(cx(3, &[&[1, 2], &[1, 3]]).cone_point(), Some(1));
        assert_eq!(cx(3, &[&[1, 2], &[2, 3], &[1, 3]]).cone_point(), None);
        assert_eq!(SimplicialComplex::void(2).cone_point(), None);
    }

    #[test]
    fn facets_are_maximalized() {
        assert_eq!(cx(3, &[&[1], &[1, 2], &[1, 2]]), cx(3, &[&[1, 2]]));
    }
}
