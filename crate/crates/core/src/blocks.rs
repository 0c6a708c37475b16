//! Dual block complex of a closed pseudomanifold, realized by incidence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::simplicial::{Chain, Simplex, SimplicialComplex};

/// The block dual to a simplex of the ambient complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualBlock {
    pub base: Simplex,
    pub block_dim: usize,
}

/// Dual blocks of L graded by block dimension, with mod-2 incidence boundaries.
///
/// Generators of degree i are the blocks of the (n-i)-simplices, listed in the
/// ambient canonical order, so block cochains share bit layouts with chains on L.
#[derive(Clone, Debug)]
pub struct BlockComplex {
    ambient: SimplicialComplex,
    n: usize,
    /// `block_boundary[i]` maps degree-i generators to degree-(i-1) generators;
    /// index 0 holds the zero map.
    block_boundary: Vec<BitMatrix>,
}

/// Mod-2 cochain on the generators of one block degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCochain {
    degree: usize,
    bits: BitVec,
}

impl BlockCochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }
}

/// Builds the block complex; `l` must be a closed pseudomanifold.
pub fn build_block_complex(l: &SimplicialComplex) -> Result<BlockComplex> {
    l.is_closed_pseudomanifold().into_result()?;
    let n = l.dim();
    let mut block_boundary = Vec::with_capacity(n + 1);
    block_boundary.push(BitMatrix::zeros(0, l.count(n)));
    for i in 1..=n {
        block_boundary.push(l.boundary_matrix_unchecked(n - i + 1).transpose());
    }
    Ok(BlockComplex { ambient: l.clone(), n, block_boundary })
}

impl BlockComplex {
    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generator_count(&self, i: usize) -> usize {
        if i > self.n {
            0
        } else {
            self.ambient.count(self.n - i)
        }
    }

    pub fn generator_counts(&self) -> Vec<usize> {
        (0..=self.n).map(|i| self.generator_count(i)).collect()
    }

    pub fn generators(&self, i: usize) -> Result<Vec<DualBlock>> {
        self.check_degree(i)?;
        Ok(self
            .ambient
            .simplices(self.n - i)
            .iter()
            .map(|s| DualBlock { base: s.clone(), block_dim: i })
            .collect())
    }

    pub fn block_boundary(&self, i: usize) -> Result<&BitMatrix> {
        self.check_degree(i)?;
        Ok(&self.block_boundary[i])
    }

    fn check_degree(&self, i: usize) -> Result<()> {
        if i > self.n {
            Err(Error::DegreeOutOfRange { degree: i, max: self.n })
        } else {
            Ok(())
        }
    }

    pub fn cochain(&self, degree: usize, bits: BitVec) -> Result<BlockCochain> {
        self.check_degree(degree)?;
        if bits.len() != self.generator_count(degree) {
            return Err(Error::DimensionMismatch { expected: self.generator_count(degree), found: bits.len() });
        }
        Ok(BlockCochain { degree, bits })
    }

    pub fn zero_cochain(&self, degree: usize) -> Result<BlockCochain> {
        self.cochain(degree, BitVec::zeros(self.generator_count(degree)))
    }

    /// The cochain taking the value 1 on every dual block of degree `i`.
    pub fn all_ones(&self, i: usize) -> Result<BlockCochain> {
        self.check_degree(i)?;
        Ok(BlockCochain { degree: i, bits: BitVec::ones(self.generator_count(i)) })
    }

    /// Coboundary through the incidence matrices.
    pub fn block_coboundary(&self, c: &BlockCochain) -> Result<BlockCochain> {
        if c.degree >= self.n {
            return Err(Error::DegreeOutOfRange { degree: c.degree, max: self.n.saturating_sub(1) });
        }
        let m = &self.block_boundary[c.degree + 1];
        // (dc)(D) sums c over the boundary blocks of D: a column read of the incidence
        let mut out = BitVec::zeros(m.cols());
        for j in 0..m.cols() {
            if m.column(j).dot(&c.bits) {
                out.set(j, true);
            }
        }
        Ok(BlockCochain { degree: c.degree + 1, bits: out })
    }

    /// Coboundary computed sparsely on L; agrees with [`block_coboundary`](Self::block_coboundary).
    pub fn block_coboundary_sparse(&self, c: &BlockCochain) -> Result<BlockCochain> {
        if c.degree >= self.n {
            return Err(Error::DegreeOutOfRange { degree: c.degree, max: self.n.saturating_sub(1) });
        }
        let chain = self.poincare_dual_chain(c);
        let b = self.ambient.boundary(&chain)?;
        Ok(BlockCochain { degree: c.degree + 1, bits: b.bits().clone() })
    }

    /// The chain on L with a bit on each simplex whose block the cochain hits.
    pub fn poincare_dual_chain(&self, c: &BlockCochain) -> Chain {
        Chain::from_parts(self.n - c.degree, c.bits.clone())
    }

    /// Inverse of [`poincare_dual_chain`](Self::poincare_dual_chain).
    pub fn cochain_of_chain(&self, c: &Chain) -> Result<BlockCochain> {
        if c.dim() > self.n {
            return Err(Error::DimensionOutOfRange { dim: c.dim(), max: self.n });
        }
        self.cochain(self.n - c.dim(), c.bits().clone())
    }

    /// First (n-i-1)-simplex of L with an odd number of (n-i)-cofaces, if any.
    pub fn all_ones_obstruction(&self, i: usize) -> Result<Option<Simplex>> {
        let d = self.all_ones(i)?;
        if i == self.n {
            return Ok(None);
        }
        let b = self.block_coboundary_sparse(&d)?;
        Ok(b.bits.first_one().map(|k| self.ambient.simplices(self.n - i - 1)[k].clone()))
    }
}
