//! Barycentric subdivision with flag labels, the subdivision chain map, and
//! flag dual cells.

use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::simplicial::{Chain, Simplex, SimplicialComplex};

/// A strictly descending chain of base simplices, largest first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlagSimplex {
    chain: Vec<Simplex>,
}

impl FlagSimplex {
    pub fn new(chain: Vec<Simplex>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::NotAFlagCell("empty flag".into()));
        }
        for w in chain.windows(2) {
            if w[1].dim() >= w[0].dim() || !w[1].is_face_of(&w[0]) {
                return Err(Error::NotAFlagCell(format!("{} is not a proper face of {}", w[1], w[0])));
            }
        }
        Ok(Self { chain })
    }

    pub fn chain(&self) -> &[Simplex] {
        &self.chain
    }

    pub fn top(&self) -> &Simplex {
        &self.chain[0]
    }

    /// The smallest simplex of the flag.
    pub fn last(&self) -> &Simplex {
        self.chain.last().expect("flags are non-empty")
    }

    /// Dimension of the derived simplex this flag spans.
    pub fn dim(&self) -> usize {
        self.chain.len() - 1
    }

    /// True when dimensions step down by one starting at `n`.
    pub fn is_dual_cell_of(&self, n: usize) -> bool {
        self.chain.iter().enumerate().all(|(k, s)| s.dim() + k == n)
    }
}

impl fmt::Display for FlagSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.chain.iter().enumerate() {
            if i > 0 {
                write!(f, " > ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FlagSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The barycentric subdivision K′ of a base complex K.
///
/// Derived vertex ids run over base simplices by decreasing dimension, then
/// lexicographically, so sorting a derived simplex's vertices lists its flag
/// from the largest base simplex down.
#[derive(Clone, Debug)]
pub struct SubdividedComplex {
    base: SimplicialComplex,
    derived: SimplicialComplex,
    /// `offset[d]` is the first derived vertex id of a base d-simplex.
    offset: Vec<usize>,
    barycenter_of: Vec<Simplex>,
    flag_of: Vec<Vec<FlagSimplex>>,
}

/// Subdivides `x` once.
pub fn barycentric_subdivide(x: &SimplicialComplex) -> Result<SubdividedComplex> {
    if x.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let n = x.dim();
    let mut offset = vec![0usize; n + 1];
    let mut next = 0;
    for d in (0..=n).rev() {
        offset[d] = next;
        next += x.count(d);
    }
    let mut barycenter_of = Vec::with_capacity(next);
    for d in (0..=n).rev() {
        barycenter_of.extend(x.simplices(d).iter().cloned());
    }
    let id_of = |s: &Simplex| -> u32 { (offset[s.dim()] + x.index_of(s).expect("face of a listed simplex")) as u32 };

    let mut maximal = Vec::new();
    for f in x.facets() {
        for flag in full_flags(f) {
            let mut ids: SmallVec<[u32; 4]> = flag.iter().map(&id_of).collect();
            ids.sort_unstable();
            maximal.push(Simplex::from_sorted(ids));
        }
    }
    let derived = SimplicialComplex::from_simplices(maximal);
    let flag_of = (0..=derived.dim())
        .map(|d| {
            derived
                .simplices(d)
                .iter()
                .map(|s| FlagSimplex { chain: s.vertices().iter().map(|&v| barycenter_of[v as usize].clone()).collect() })
                .collect()
        })
        .collect();
    Ok(SubdividedComplex { base: x.clone(), derived, offset, barycenter_of, flag_of })
}

/// All maximal flags `sigma = s_d > s_{d-1} > ... > s_0`, vertex-removal order
/// enumerated lexicographically.
fn full_flags(sigma: &Simplex) -> Vec<Vec<Simplex>> {
    let mut out = Vec::new();
    let mut current = vec![sigma.clone()];
    fn rec(current: &mut Vec<Simplex>, out: &mut Vec<Vec<Simplex>>) {
        let last = current.last().expect("non-empty");
        if last.dim() == 0 {
            out.push(current.clone());
            return;
        }
        let faces: Vec<Simplex> = last.facets().collect();
        for f in faces {
            current.push(f);
            rec(current, out);
            current.pop();
        }
    }
    rec(&mut current, &mut out);
    out
}

impl SubdividedComplex {
    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn derived(&self) -> &SimplicialComplex {
        &self.derived
    }

    /// Base simplex whose barycenter is derived vertex `v`.
    pub fn barycenter_of(&self, v: u32) -> Option<&Simplex> {
        self.barycenter_of.get(v as usize)
    }

    /// Derived vertex id of the barycenter of a base simplex.
    pub fn barycenter_id(&self, sigma: &Simplex) -> Result<u32> {
        let i = self.base.index_of(sigma).ok_or_else(|| Error::SimplexNotInComplex(sigma.clone()))?;
        Ok((self.offset[sigma.dim()] + i) as u32)
    }

    /// Flag label of the derived d-simplex at index `i`.
    pub fn flag_of(&self, d: usize, i: usize) -> &FlagSimplex {
        &self.flag_of[d][i]
    }

    pub fn flags(&self, d: usize) -> &[FlagSimplex] {
        self.flag_of.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Derived simplex spanned by the barycenters of a flag.
    pub fn derived_simplex(&self, flag: &FlagSimplex) -> Result<Simplex> {
        let mut ids: SmallVec<[u32; 4]> =
            flag.chain.iter().map(|s| self.barycenter_id(s)).collect::<Result<_>>()?;
        ids.sort_unstable();
        Ok(Simplex::from_sorted(ids))
    }

    /// Sorted derived indices of the (d+1)! d-simplices subdividing a base d-simplex.
    fn subdividing_indices(&self, sigma: &Simplex) -> Vec<usize> {
        let mut idx: Vec<usize> = full_flags(sigma)
            .iter()
            .map(|flag| {
                let mut ids: SmallVec<[u32; 4]> =
                    flag.iter().map(|s| self.barycenter_id(s).expect("face of base simplex")).collect();
                ids.sort_unstable();
                self.derived.index_of(&Simplex::from_sorted(ids)).expect("flags of base simplices are derived simplices")
            })
            .collect();
        idx.sort_unstable();
        idx
    }

    /// Image of a base chain under the subdivision chain map.
    pub fn subdivide_chain(&self, c: &Chain) -> Result<Chain> {
        self.base.check_chain(c)?;
        let d = c.dim();
        let mut bits = BitVec::zeros(self.derived.count(d));
        for j in c.bits().iter_ones() {
            for i in self.subdividing_indices(&self.base.simplices(d)[j]) {
                bits.flip(i);
            }
        }
        Ok(Chain::from_parts(d, bits))
    }
}

/// Matrix of the subdivision chain map in dimension `d`: rows are derived
/// d-simplices, columns base d-simplices.
pub fn subdivision_chain_map(s: &SubdividedComplex, d: usize) -> Result<BitMatrix> {
    if d > s.base.dim() {
        return Err(Error::DimensionOutOfRange { dim: d, max: s.base.dim() });
    }
    let base = s.base.simplices(d);
    let mut m = BitMatrix::zeros(s.derived.count(d), base.len());
    for (j, sigma) in base.iter().enumerate() {
        for i in s.subdividing_indices(sigma) {
            m.set(i, j, true);
        }
    }
    Ok(m)
}

/// Flags `s_n > s_{n-1} > ... > s_{n-i}` with consecutive dimensions, sorted
/// by their final simplex and then by the rest of the chain.
pub fn flag_dual_cells(s: &SubdividedComplex, i: usize) -> Result<Vec<FlagSimplex>> {
    s.base.is_closed_pseudomanifold().into_result()?;
    let n = s.base.dim();
    if i > n {
        return Err(Error::DegreeOutOfRange { degree: i, max: n });
    }
    let mut cells: Vec<FlagSimplex> = s.flags(i).iter().filter(|f| f.is_dual_cell_of(n)).cloned().collect();
    cells.sort_by(|a, b| a.last().cmp(b.last()).then_with(|| a.cmp(b)));
    Ok(cells)
}

/// Swaps the top simplex of a flag dual cell for the other n-simplex on its ridge.
pub fn flag_partner(s: &SubdividedComplex, cell: &FlagSimplex) -> Result<FlagSimplex> {
    let n = s.base.dim();
    if cell.chain.len() < 2 || !cell.is_dual_cell_of(n) {
        return Err(Error::NotAFlagCell(cell.to_string()));
    }
    let ridge = &cell.chain[1];
    if !s.base.contains(&cell.chain[0]) {
        return Err(Error::NotAFlagCell(cell.to_string()));
    }
    let cofaces: Vec<&Simplex> = s.base.simplices(n).iter().filter(|t| ridge.is_face_of(t)).collect();
    if cofaces.len() != 2 {
        return Err(Error::NotPseudomanifold(format!("ridge {ridge} has {} cofacets", cofaces.len())));
    }
    let other = if *cofaces[0] == cell.chain[0] { cofaces[1] } else { cofaces[0] };
    let mut chain = cell.chain.clone();
    chain[0] = other.clone();
    Ok(FlagSimplex { chain })
}
