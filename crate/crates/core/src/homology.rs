//! Mod-2 homology and cohomology with cached reductions for class queries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::simplicial::{Chain, Cochain, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variance {
    Homology,
    Cohomology,
}

/// One degree of a (co)homology computation.
#[derive(Clone, Debug)]
pub struct DegreeSummary {
    pub cycle_rank: usize,
    pub boundary_rank: usize,
    /// Cycles (or cocycles) whose classes form a basis.
    pub representatives: Vec<BitVec>,
    /// Span of boundaries (untagged) and representatives (unit tags).
    decoder: Echelon,
}

impl DegreeSummary {
    pub fn betti(&self) -> usize {
        self.representatives.len()
    }

    /// Class coordinates of `v`, or `None` when `v` is not in the cycle space.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        let (res, tag) = self.decoder.reduce(v);
        res.is_zero().then_some(tag)
    }

    pub fn is_boundary(&self, v: &BitVec) -> bool {
        self.coordinates(v).is_some_and(|t| t.is_zero())
    }
}

/// Betti numbers, bases and decoders for every degree of a complex.
#[derive(Clone, Debug)]
pub struct HomologySummary {
    pub variance: Variance,
    degrees: Vec<DegreeSummary>,
}

impl HomologySummary {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeSummary::betti).collect()
    }

    pub fn degree(&self, d: usize) -> Result<&DegreeSummary> {
        self.degrees
            .get(d)
            .ok_or(Error::DimensionOutOfRange { dim: d, max: self.degrees.len().saturating_sub(1) })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }
}

fn summarize(len: usize, cycles: Vec<BitVec>, boundaries: impl Iterator<Item = BitVec> + Clone) -> DegreeSummary {
    let mut bnd = Echelon::new(len, 0);
    for b in boundaries.clone() {
        bnd.insert(&b, BitVec::zeros(0));
    }
    let boundary_rank = bnd.rank();
    let cycle_rank = cycles.len();
    let mut representatives = Vec::new();
    for z in cycles {
        if bnd.insert(&z, BitVec::zeros(0)) {
            representatives.push(z);
        }
    }
    let k = representatives.len();
    let mut decoder = Echelon::new(len, k);
    for b in boundaries {
        decoder.insert(&b, BitVec::zeros(k));
    }
    for (j, z) in representatives.iter().enumerate() {
        decoder.insert(z, BitVec::from_indices(k, [j]));
    }
    DegreeSummary { cycle_rank, boundary_rank, representatives, decoder }
}

fn identity_basis(len: usize) -> Vec<BitVec> {
    (0..len).map(|i| BitVec::from_indices(len, [i])).collect()
}

/// Mod-2 simplicial homology in every degree.
pub fn homology(x: &SimplicialComplex) -> HomologySummary {
    if x.is_empty() {
        return HomologySummary { variance: Variance::Homology, degrees: Vec::new() };
    }
    let n = x.dim();
    let degrees = (0..=n)
        .map(|d| {
            let cycles = if d == 0 { identity_basis(x.count(0)) } else { x.boundary_matrix_unchecked(d).kernel() };
            let up = if d < n { Some(x.boundary_matrix_unchecked(d + 1)) } else { None };
            let cols: Vec<BitVec> = up.as_ref().map(|m| (0..m.cols()).map(|j| m.column(j)).collect()).unwrap_or_default();
            summarize(x.count(d), cycles, cols.into_iter())
        })
        .collect();
    HomologySummary { variance: Variance::Homology, degrees }
}

/// Mod-2 simplicial cohomology in every degree.
pub fn cohomology(x: &SimplicialComplex) -> HomologySummary {
    if x.is_empty() {
        return HomologySummary { variance: Variance::Cohomology, degrees: Vec::new() };
    }
    let n = x.dim();
    let degrees = (0..=n)
        .map(|d| {
            let cocycles =
                if d == n { identity_basis(x.count(n)) } else { x.boundary_matrix_unchecked(d + 1).transpose().kernel() };
            let rows: Vec<BitVec> = if d == 0 {
                Vec::new()
            } else {
                let m = x.boundary_matrix_unchecked(d);
                (0..m.rows()).map(|i| m.row(i)).collect()
            };
            summarize(x.count(d), cocycles, rows.into_iter())
        })
        .collect();
    HomologySummary { variance: Variance::Cohomology, degrees }
}

pub fn betti(x: &SimplicialComplex) -> Vec<usize> {
    homology(x).betti()
}

/// Whether two d-cycles differ by a boundary.
pub fn same_class(x: &SimplicialComplex, d: usize, z1: &Chain, z2: &Chain) -> Result<bool> {
    check_pair(x, d, z1, z2)?;
    let sum = z1.add(z2);
    if d == x.dim() {
        return Ok(sum.is_zero());
    }
    let up = x.boundary_matrix_unchecked(d + 1);
    Ok(up.solve(sum.bits())?.is_some())
}

/// As [`same_class`], reusing the reductions held by a homology summary of `x`.
pub fn same_class_cached(
    x: &SimplicialComplex,
    h: &HomologySummary,
    d: usize,
    z1: &Chain,
    z2: &Chain,
) -> Result<bool> {
    check_pair(x, d, z1, z2)?;
    Ok(h.degree(d)?.is_boundary(z1.add(z2).bits()))
}

fn check_pair(x: &SimplicialComplex, d: usize, z1: &Chain, z2: &Chain) -> Result<()> {
    for (z, name) in [(z1, "first chain"), (z2, "second chain")] {
        if z.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: z.dim() });
        }
        x.check_cycle(z, name)?;
    }
    Ok(())
}

/// Whether two d-cocycles differ by a coboundary.
pub fn same_cohomology_class(x: &SimplicialComplex, h: &HomologySummary, a: &Cochain, b: &Cochain) -> Result<bool> {
    if a.degree() != b.degree() {
        return Err(Error::DimensionMismatch { expected: a.degree(), found: b.degree() });
    }
    x.check_cocycle(a, "first cochain")?;
    x.check_cocycle(b, "second cochain")?;
    Ok(h.degree(a.degree())?.is_boundary(a.add(b).bits()))
}

/// GF(2) rank of a matrix.
pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::Simplex;

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn sphere_betti() {
        let x = tetra_boundary();
        assert_eq!(betti(&x), vec![1, 0, 1]);
        assert_eq!(cohomology(&x).betti(), vec![1, 0, 1]);
        assert_eq!(rank(&x.boundary_matrix(2).unwrap()), 3);
    }

    #[test]
    fn class_comparisons() {
        let x = tetra_boundary();
        let gamma = Chain::all(&x, 2);
        let zero = Chain::zero(&x, 2).unwrap();
        assert!(same_class(&x, 2, &gamma, &gamma).unwrap());
        assert!(!same_class(&x, 2, &gamma, &zero).unwrap());
        let h = homology(&x);
        assert!(!same_class_cached(&x, &h, 2, &gamma, &zero).unwrap());
        let e = Chain::from_simplices(&x, 1, [&Simplex::new(&[0, 1]).unwrap()]).unwrap();
        let z = Chain::zero(&x, 1).unwrap();
        assert!(matches!(same_class(&x, 1, &e, &z), Err(Error::NotACycle { .. })));
    }

    #[test]
    fn circle_has_one_loop() {
        let x = SimplicialComplex::from_facets(&[[0, 1], [1, 2], [0, 2]]).unwrap();
        let h = homology(&x);
        assert_eq!(h.betti(), vec![1, 1]);
        let rep = &h.degree(1).unwrap().representatives[0];
        assert_eq!(rep.count_ones(), 3);
    }
}
