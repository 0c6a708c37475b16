//! Cochain-level products over GF(2): cup, cap, cup-i and Steenrod squares,
//! with Wu and Stiefel–Whitney classes solved from the Poincaré pairing.

use std::collections::HashMap;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::homology::{cohomology, HomologySummary};
use crate::simplicial::{Chain, Cochain, Simplex, SimplicialComplex};

/// A total order on the vertices of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    sequence: Vec<u32>,
    rank: HashMap<u32, usize>,
}

impl VertexOrder {
    /// Increasing vertex id.
    pub fn numeric(x: &SimplicialComplex) -> Self {
        Self::from_sequence_unchecked(x.vertex_ids().collect())
    }

    /// Vertices listed first-to-last; must be a permutation of the vertex set of `x`.
    pub fn from_sequence(x: &SimplicialComplex, sequence: Vec<u32>) -> Result<Self> {
        let mut sorted = sequence.clone();
        sorted.sort_unstable();
        let ids: Vec<u32> = x.vertex_ids().collect();
        if sorted != ids {
            return Err(Error::DimensionMismatch { expected: ids.len(), found: sequence.len() });
        }
        Ok(Self::from_sequence_unchecked(sequence))
    }

    fn from_sequence_unchecked(sequence: Vec<u32>) -> Self {
        let rank = sequence.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Self { sequence, rank }
    }

    pub fn reversed(&self) -> Self {
        Self::from_sequence_unchecked(self.sequence.iter().rev().copied().collect())
    }

    pub fn sequence(&self) -> &[u32] {
        &self.sequence
    }

    fn arrange(&self, s: &Simplex) -> SmallVec<[u32; 4]> {
        let mut v: SmallVec<[u32; 4]> = s.vertices().into();
        v.sort_by_key(|x| self.rank[x]);
        v
    }
}

/// Face of an ordered simplex spanned by the positions set in `mask`.
fn face_index(x: &SimplicialComplex, ordered: &[u32], mask: u64) -> usize {
    let mut v: SmallVec<[u32; 4]> = (0..ordered.len()).filter(|i| mask >> i & 1 == 1).map(|i| ordered[i]).collect();
    v.sort_unstable();
    x.index_of(&Simplex::from_sorted(v)).expect("faces of listed simplices are listed")
}

fn check_degree(x: &SimplicialComplex, c: &Cochain) -> Result<()> {
    if c.bits().len() != x.count(c.degree()) {
        return Err(Error::DimensionMismatch { expected: x.count(c.degree()), found: c.bits().len() });
    }
    Ok(())
}

/// Front-face/back-face cup product.
pub fn cup(x: &SimplicialComplex, order: &VertexOrder, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    cup_i(x, order, a, b, 0)
}

/// Evaluates `a` on front p-faces and returns the back faces of the simplices of `c`.
pub fn cap(x: &SimplicialComplex, order: &VertexOrder, a: &Cochain, c: &Chain) -> Result<Chain> {
    check_degree(x, a)?;
    x.check_chain(c)?;
    let (p, d) = (a.degree(), c.dim());
    if p > d {
        return Err(Error::DegreeOverflow { degree: p, dim: d });
    }
    let front = (1u64 << (p + 1)) - 1;
    let back = ((1u64 << (d + 1)) - 1) & !((1u64 << p) - 1);
    let mut out = BitVec::zeros(x.count(d - p));
    for j in c.bits().iter_ones() {
        let ordered = order.arrange(&x.simplices(d)[j]);
        if a.bits().get(face_index(x, &ordered, front)) {
            out.flip(face_index(x, &ordered, back));
        }
    }
    Ok(Chain::from_parts(d - p, out))
}

/// Position masks `(alpha face, beta face)` contributing to a cup-i product on
/// an m-simplex. A subset U of the positions with |U| = m - i splits by the
/// parity of (element + rank within U); the alpha face drops the odd part and
/// the beta face drops the even part.
fn cup_i_terms(p: usize, q: usize, i: usize) -> Vec<(u64, u64)> {
    let m = p + q - i;
    let all = (1u64 << (m + 1)) - 1;
    let mut terms = Vec::new();
    for u in 0..=all {
        if u.count_ones() as usize != m - i {
            continue;
        }
        let (mut even, mut odd) = (0u64, 0u64);
        let mut rank = 0;
        for e in 0..=m {
            if u >> e & 1 == 1 {
                if (e + rank) % 2 == 0 {
                    even |= 1 << e;
                } else {
                    odd |= 1 << e;
                }
                rank += 1;
            }
        }
        let (fa, fb) = (all & !odd, all & !even);
        if fa.count_ones() as usize == p + 1 && fb.count_ones() as usize == q + 1 {
            terms.push((fa, fb));
        }
    }
    terms
}

/// Steenrod's cup-i product of a p-cochain and a q-cochain, a (p+q-i)-cochain.
pub fn cup_i(x: &SimplicialComplex, order: &VertexOrder, a: &Cochain, b: &Cochain, i: usize) -> Result<Cochain> {
    check_degree(x, a)?;
    check_degree(x, b)?;
    let (p, q) = (a.degree(), b.degree());
    if i > p.min(q) {
        return Err(Error::IndexOutOfRange { index: i, max: p.min(q) });
    }
    let m = p + q - i;
    if m > x.dim() {
        return Err(Error::DegreeOverflow { degree: m, dim: x.dim() });
    }
    let terms = cup_i_terms(p, q, i);
    let mut out = BitVec::zeros(x.count(m));
    if a.is_zero() || b.is_zero() {
        return Ok(Cochain::from_parts(m, out));
    }
    for (j, s) in x.simplices(m).iter().enumerate() {
        let ordered = order.arrange(s);
        let mut acc = false;
        for &(fa, fb) in &terms {
            acc ^= a.bits().get(face_index(x, &ordered, fa)) && b.bits().get(face_index(x, &ordered, fb));
        }
        if acc {
            out.set(j, true);
        }
    }
    Ok(Cochain::from_parts(m, out))
}

/// Sq^k of a cocycle: `a cup_{p-k} a`, zero when k > p or p + k exceeds the dimension.
pub fn steenrod_sq(x: &SimplicialComplex, order: &VertexOrder, k: usize, a: &Cochain) -> Result<Cochain> {
    check_degree(x, a)?;
    x.check_cocycle(a, "Steenrod square argument")?;
    let p = a.degree();
    if k > p || p + k > x.dim() {
        return Ok(Cochain::zero(x, p + k));
    }
    cup_i(x, order, a, a, p - k)
}

/// Sum of all top simplices, checked to be a nonzero mod-2 cycle.
pub fn fundamental_cycle(x: &SimplicialComplex) -> Result<Chain> {
    x.is_closed_pseudomanifold().into_result()?;
    let gamma = Chain::all(x, x.dim());
    x.check_cycle(&gamma, "fundamental cycle")?;
    Ok(gamma)
}

/// Cap product with the fundamental cycle.
pub fn poincare_dual_of_cocycle(x: &SimplicialComplex, order: &VertexOrder, a: &Cochain) -> Result<Chain> {
    x.check_cocycle(a, "dualized cochain")?;
    let gamma = fundamental_cycle(x)?;
    cap(x, order, a, &gamma)
}

/// Kronecker pairing of a top-degree cochain with the fundamental cycle.
fn top_pairing(c: &Cochain) -> bool {
    c.bits().count_ones() % 2 == 1
}

/// A cocycle with its coordinates in the cohomology basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub representative: Cochain,
    pub coordinates: BitVec,
}

impl CohomologyClass {
    /// `h` must be the cohomology summary of `x`.
    pub fn from_cocycle(x: &SimplicialComplex, h: &HomologySummary, c: Cochain) -> Result<Self> {
        x.check_cocycle(&c, "class representative")?;
        let coordinates = h.degree(c.degree())?.coordinates(c.bits()).expect("cocycles decode");
        Ok(Self { degree: c.degree(), representative: c, coordinates })
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.is_zero()
    }
}

/// Wu classes and Stiefel–Whitney classes of a closed pseudomanifold.
#[derive(Clone, Debug)]
pub struct WuData {
    pub v: Vec<CohomologyClass>,
    pub w: Vec<CohomologyClass>,
}

impl WuData {
    /// `true` at degree i when w_i is a nonzero class.
    pub fn w_pattern(&self) -> Vec<bool> {
        self.w.iter().map(|c| !c.is_zero()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingInfo {
    pub degree: usize,
    pub rank: usize,
    pub size: usize,
}

/// Solves the Wu relations degree by degree, then forms w = Sq(v).
pub fn wu_classes(x: &SimplicialComplex, order: &VertexOrder) -> Result<WuData> {
    let h = cohomology(x);
    wu_classes_with(x, order, &h)
}

/// As [`wu_classes`] with a precomputed cohomology summary of `x`.
pub fn wu_classes_with(x: &SimplicialComplex, order: &VertexOrder, h: &HomologySummary) -> Result<WuData> {
    fundamental_cycle(x)?;
    let n = x.dim();
    let mut v = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let a = &h.degree(k)?.representatives;
        let b = &h.degree(n - k)?.representatives;
        if a.len() != b.len() {
            return Err(Error::PairingDegenerate { degree: k, rank: a.len().min(b.len()), size: a.len().max(b.len()) });
        }
        let size = a.len();
        let a: Vec<Cochain> = a.iter().map(|r| Cochain::from_parts(k, r.clone())).collect();
        let b: Vec<Cochain> = b.iter().map(|r| Cochain::from_parts(n - k, r.clone())).collect();
        let mut pairing = BitMatrix::zeros(size, size);
        let mut rhs = BitVec::zeros(size);
        for (l, bl) in b.iter().enumerate() {
            for (j, aj) in a.iter().enumerate() {
                if top_pairing(&cup(x, order, aj, bl)?) {
                    pairing.set(l, j, true);
                }
            }
            if top_pairing(&steenrod_sq(x, order, k, bl)?) {
                rhs.set(l, true);
            }
        }
        let rank = pairing.rank();
        if rank != size {
            return Err(Error::PairingDegenerate { degree: k, rank, size });
        }
        let coeffs = pairing.solve(&rhs)?.ok_or(Error::PairingDegenerate { degree: k, rank, size })?;
        let mut vk = Cochain::zero(x, k);
        for j in coeffs.iter_ones() {
            vk = vk.add(&a[j]);
        }
        v.push(CohomologyClass::from_cocycle(x, h, vk)?);
    }
    let mut w = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut wi = Cochain::zero(x, i);
        for (j, vj) in v.iter().enumerate().take(i + 1) {
            if vj.is_zero() {
                continue;
            }
            wi = wi.add(&steenrod_sq(x, order, i - j, &vj.representative)?);
        }
        w.push(CohomologyClass::from_cocycle(x, h, wi)?);
    }
    Ok(WuData { v, w })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn cup_zero_terms_are_front_back() {
        assert_eq!(cup_i_terms(1, 1, 0), vec![(0b011, 0b110)]);
        assert_eq!(cup_i_terms(2, 1, 0), vec![(0b0111, 0b1100)]);
        assert_eq!(cup_i_terms(1, 1, 1), vec![(0b11, 0b11)]);
    }

    #[test]
    fn unit_is_neutral() {
        let x = tetra_boundary();
        let o = VertexOrder::numeric(&x);
        let one = Cochain::constant_one(&x, 0);
        let beta = Cochain::new(&x, 1, BitVec::from_indices(6, [0, 3, 4])).unwrap();
        assert_eq!(cup(&x, &o, &one, &beta).unwrap(), beta);
        let gamma = fundamental_cycle(&x).unwrap();
        assert_eq!(cap(&x, &o, &one, &gamma).unwrap(), gamma);
        assert_eq!(poincare_dual_of_cocycle(&x, &o, &one).unwrap(), gamma);
    }

    #[test]
    fn errors() {
        let x = tetra_boundary();
        let o = VertexOrder::numeric(&x);
        let a = Cochain::zero(&x, 2);
        let b = Cochain::zero(&x, 1);
        assert!(matches!(cup(&x, &o, &a, &b), Err(Error::DegreeOverflow { .. })));
        assert!(matches!(cup_i(&x, &o, &b, &b, 2), Err(Error::IndexOutOfRange { .. })));
        let not_cocycle = Cochain::new(&x, 1, BitVec::from_indices(6, [0])).unwrap();
        assert!(matches!(steenrod_sq(&x, &o, 0, &not_cocycle), Err(Error::NotACocycle { .. })));
        assert!(VertexOrder::from_sequence(&x, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn sphere_wu_classes_vanish() {
        let x = tetra_boundary();
        let wu = wu_classes(&x, &VertexOrder::numeric(&x)).unwrap();
        assert_eq!(wu.w_pattern(), vec![true, false, false]);
        assert!(!wu.v[0].is_zero() && wu.v[1].is_zero() && wu.v[2].is_zero());
    }
}
