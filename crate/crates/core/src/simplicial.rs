//! Finite abstract simplicial complexes with a canonical face enumeration.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

/// A simplex as a strictly increasing list of vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[u32; 4]>);

impl Simplex {
    /// Sorts the vertices; fails on a repeated id.
    pub fn new(vertices: &[u32]) -> Result<Self> {
        let mut v: SmallVec<[u32; 4]> = vertices.iter().copied().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedFacet { facet: vertices.to_vec(), vertex: w[0] });
        }
        Ok(Self(v))
    }

    /// Caller guarantees strictly increasing input.
    pub(crate) fn from_sorted(vertices: SmallVec<[u32; 4]>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn vertex(v: u32) -> Self {
        Self(smallvec::smallvec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    /// Dimension (vertex count minus one). Panics on the empty simplex.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces, the i-th omitting the i-th vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |i| self.without_position(i))
    }

    pub fn without_position(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: SmallVec<[u32; 4]> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    /// All non-empty faces, including the simplex itself.
    fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Simplex::new(&v).map_err(serde::de::Error::custom)
    }
}

/// A finite simplicial complex, immutable after construction.
///
/// `skeleton[d]` lists every d-simplex in lexicographic order; the position of
/// a simplex in that list is its index in chain and cochain bit layouts.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
    skeleton: Vec<Vec<Simplex>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds the downward closure of the given facets.
    pub fn from_facets<V: AsRef<[u32]>>(facets: &[V]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyInput);
        }
        let simplices = facets
            .iter()
            .map(|f| {
                let f = f.as_ref();
                if f.is_empty() {
                    Err(Error::MalformedFacet { facet: Vec::new(), vertex: 0 })
                } else {
                    Simplex::new(f)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_simplices(simplices))
    }

    /// The complex with no simplices.
    pub fn empty() -> Self {
        Self { facets: Vec::new(), skeleton: Vec::new() }
    }

    pub(crate) fn from_simplices(simplices: Vec<Simplex>) -> Self {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in &simplices {
            for face in s.all_faces() {
                let d = face.dim();
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        let skeleton: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut facets = Vec::new();
        for d in 0..skeleton.len() {
            let covered: BTreeSet<Simplex> = skeleton
                .get(d + 1)
                .map(|up| up.iter().flat_map(|s| s.facets().collect::<Vec<_>>()).collect())
                .unwrap_or_default();
            facets.extend(skeleton[d].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        facets.sort();
        Self { facets, skeleton }
    }

    pub fn is_empty(&self) -> bool {
        self.skeleton.is_empty()
    }

    /// Top dimension; zero for the empty complex.
    pub fn dim(&self) -> usize {
        self.skeleton.len().saturating_sub(1)
    }

    /// Maximal simplices in lexicographic order.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.skeleton.iter().map(Vec::len).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.skeleton.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.skeleton
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Checked access to the d-skeleton.
    pub fn skeleton_enumerate(&self, d: usize) -> Result<&[Simplex]> {
        if self.is_empty() || d > self.dim() {
            return Err(Error::DimensionOutOfRange { dim: d, max: self.dim() });
        }
        Ok(&self.skeleton[d])
    }

    /// The d-simplices, empty when `d` exceeds the dimension.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.skeleton.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.simplices(s.dim()).binary_search(s).ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.simplices(0).iter().map(|s| s.vertices()[0])
    }

    /// Link of `sigma`: simplices disjoint from it whose join with it lies in the complex.
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::SimplexNotInComplex(sigma.clone()));
        }
        let parts: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| sigma.is_face_of(f) && f.dim() > sigma.dim())
            .map(|f| {
                Simplex::from_sorted(f.vertices().iter().copied().filter(|v| !sigma.contains_vertex(*v)).collect())
            })
            .collect();
        if parts.is_empty() {
            Ok(Self::empty())
        } else {
            Ok(Self::from_simplices(parts))
        }
    }

    /// Boundary matrix from d-chains to (d-1)-chains.
    pub fn boundary_matrix(&self, d: usize) -> Result<BitMatrix> {
        if d == 0 || self.is_empty() || d > self.dim() {
            return Err(Error::DimensionOutOfRange { dim: d, max: self.dim() });
        }
        Ok(self.boundary_matrix_unchecked(d))
    }

    /// As [`boundary_matrix`](Self::boundary_matrix) but returns the zero map
    /// (with the right shape) for d = 0 or d beyond the dimension.
    pub fn boundary_matrix_unchecked(&self, d: usize) -> BitMatrix {
        if d == 0 {
            return BitMatrix::zeros(0, self.count(0));
        }
        let lower = self.simplices(d - 1);
        let upper = self.simplices(d);
        let mut m = BitMatrix::zeros(lower.len(), upper.len());
        for (j, s) in upper.iter().enumerate() {
            for face in s.facets() {
                let i = lower.binary_search(&face).expect("closure contains every face");
                m.set(i, j, true);
            }
        }
        m
    }

    /// Mod-2 boundary of a chain.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        self.check_chain(c)?;
        let d = c.dim();
        if d == 0 {
            return Ok(Chain::zero(self, 0).unwrap_or(Chain { dim: 0, bits: BitVec::zeros(0) }));
        }
        let lower = self.simplices(d - 1);
        let mut out = BitVec::zeros(lower.len());
        for j in c.bits.iter_ones() {
            for face in self.simplices(d)[j].facets() {
                out.flip(lower.binary_search(&face).expect("closed under faces"));
            }
        }
        Ok(Chain { dim: d - 1, bits: out })
    }

    /// Mod-2 coboundary of a cochain; degree `p` maps to `p + 1`.
    pub fn coboundary(&self, c: &Cochain) -> Result<Cochain> {
        if c.bits.len() != self.count(c.degree) {
            return Err(Error::DimensionMismatch { expected: self.count(c.degree), found: c.bits.len() });
        }
        let lower = self.simplices(c.degree);
        let upper = self.simplices(c.degree + 1);
        let mut out = BitVec::zeros(upper.len());
        for (j, s) in upper.iter().enumerate() {
            let mut acc = false;
            for face in s.facets() {
                acc ^= c.bits.get(lower.binary_search(&face).expect("closed under faces"));
            }
            if acc {
                out.set(j, true);
            }
        }
        Ok(Cochain { degree: c.degree + 1, bits: out })
    }

    pub(crate) fn check_chain(&self, c: &Chain) -> Result<()> {
        if c.bits.len() != self.count(c.dim) {
            return Err(Error::DimensionMismatch { expected: self.count(c.dim), found: c.bits.len() });
        }
        Ok(())
    }

    /// Verifies `c` is a cycle, naming the first simplex where its boundary is nonzero.
    pub fn check_cycle(&self, c: &Chain, which: &str) -> Result<()> {
        let b = self.boundary(c)?;
        match b.bits.first_one() {
            None => Ok(()),
            Some(i) => Err(Error::NotACycle {
                which: which.to_string(),
                witness: self.simplices(b.dim)[i].clone(),
            }),
        }
    }

    pub fn check_cocycle(&self, c: &Cochain, which: &str) -> Result<()> {
        let b = self.coboundary(c)?;
        match b.bits.first_one() {
            None => Ok(()),
            Some(i) => Err(Error::NotACocycle {
                which: which.to_string(),
                witness: self.simplices(b.degree)[i].clone(),
            }),
        }
    }

    /// Number of (d+1)-simplices containing each d-simplex.
    pub fn coface_counts(&self, d: usize) -> Vec<usize> {
        let lower = self.simplices(d);
        let mut counts = vec![0; lower.len()];
        for s in self.simplices(d + 1) {
            for face in s.facets() {
                counts[lower.binary_search(&face).expect("closed under faces")] += 1;
            }
        }
        counts
    }

    /// Purity, two-cofacet ridge condition and facet connectivity.
    pub fn is_closed_pseudomanifold(&self) -> PseudomanifoldReport {
        let n = self.dim();
        if self.is_empty() {
            return PseudomanifoldReport {
                dim: 0,
                pure: false,
                impure_facets: Vec::new(),
                bad_ridges: Vec::new(),
                components: 0,
                passed: false,
            };
        }
        let impure_facets: Vec<Simplex> = self.facets.iter().filter(|f| f.dim() != n).cloned().collect();
        let bad_ridges: Vec<(Simplex, usize)> = if n == 0 {
            Vec::new()
        } else {
            self.coface_counts(n - 1)
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 2)
                .map(|(i, c)| (self.simplices(n - 1)[i].clone(), c))
                .collect()
        };
        let components = self.facet_components();
        let pure = impure_facets.is_empty();
        let passed = pure && bad_ridges.is_empty() && components == 1;
        PseudomanifoldReport { dim: n, pure, impure_facets, bad_ridges, components, passed }
    }

    /// Connected components of the graph on top simplices, adjacent across ridges.
    fn facet_components(&self) -> usize {
        let n = self.dim();
        let tops = self.simplices(n);
        if n == 0 {
            return tops.len();
        }
        let mut parent: Vec<usize> = (0..tops.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let ridges = self.simplices(n - 1);
        let mut first_owner: Vec<Option<usize>> = vec![None; ridges.len()];
        for (j, s) in tops.iter().enumerate() {
            for face in s.facets() {
                let r = ridges.binary_search(&face).expect("closed under faces");
                match first_owner[r] {
                    None => first_owner[r] = Some(j),
                    Some(o) => {
                        let (a, b) = (find(&mut parent, o), find(&mut parent, j));
                        parent[a] = b;
                    }
                }
            }
        }
        let mut roots: Vec<usize> = (0..tops.len()).map(|x| find(&mut parent, x)).collect();
        roots.sort_unstable();
        roots.dedup();
        // lower-dimensional facets of impure complexes count as separate pieces
        roots.len() + self.facets.iter().filter(|f| f.dim() != n).count()
    }
}

/// Outcome of the closed-pseudomanifold test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub dim: usize,
    pub pure: bool,
    pub impure_facets: Vec<Simplex>,
    /// Ridges with their coface count, for every ridge whose count is not two.
    pub bad_ridges: Vec<(Simplex, usize)>,
    pub components: usize,
    pub passed: bool,
}

impl PseudomanifoldReport {
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.pure {
            parts.push(format!("{} facets below top dimension", self.impure_facets.len()));
        }
        if let Some((r, c)) = self.bad_ridges.first() {
            parts.push(format!("{} ridges without two cofacets (first {r} has {c})", self.bad_ridges.len()));
        }
        if self.components != 1 {
            parts.push(format!("{} connected components", self.components));
        }
        if parts.is_empty() {
            "ok".into()
        } else {
            parts.join("; ")
        }
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed {
            Ok(())
        } else {
            Err(Error::NotPseudomanifold(self.summary()))
        }
    }
}

/// A mod-2 chain over the canonical enumeration of one skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    bits: BitVec,
}

impl Chain {
    pub fn new(x: &SimplicialComplex, dim: usize, bits: BitVec) -> Result<Self> {
        if bits.len() != x.count(dim) {
            return Err(Error::DimensionMismatch { expected: x.count(dim), found: bits.len() });
        }
        Ok(Self { dim, bits })
    }

    pub fn zero(x: &SimplicialComplex, dim: usize) -> Result<Self> {
        Self::new(x, dim, BitVec::zeros(x.count(dim)))
    }

    /// Sum of every d-simplex.
    pub fn all(x: &SimplicialComplex, dim: usize) -> Self {
        Self { dim, bits: BitVec::ones(x.count(dim)) }
    }

    pub fn from_simplices<'a>(
        x: &SimplicialComplex,
        dim: usize,
        simplices: impl IntoIterator<Item = &'a Simplex>,
    ) -> Result<Self> {
        let mut bits = BitVec::zeros(x.count(dim));
        for s in simplices {
            let i = x.index_of(s).filter(|_| s.dim() == dim).ok_or_else(|| Error::SimplexNotInComplex(s.clone()))?;
            bits.flip(i);
        }
        Ok(Self { dim, bits })
    }

    pub(crate) fn from_parts(dim: usize, bits: BitVec) -> Self {
        Self { dim, bits }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.dim, other.dim, "adding chains of different dimension");
        Chain { dim: self.dim, bits: self.bits.xor(&other.bits) }
    }
}

/// A mod-2 cochain; same layout as [`Chain`], read as a function on simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    bits: BitVec,
}

impl Cochain {
    pub fn new(x: &SimplicialComplex, degree: usize, bits: BitVec) -> Result<Self> {
        if bits.len() != x.count(degree) {
            return Err(Error::DimensionMismatch { expected: x.count(degree), found: bits.len() });
        }
        Ok(Self { degree, bits })
    }

    pub fn zero(x: &SimplicialComplex, degree: usize) -> Self {
        Self { degree, bits: BitVec::zeros(x.count(degree)) }
    }

    pub fn constant_one(x: &SimplicialComplex, degree: usize) -> Self {
        Self { degree, bits: BitVec::ones(x.count(degree)) }
    }

    pub(crate) fn from_parts(degree: usize, bits: BitVec) -> Self {
        Self { degree, bits }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "adding cochains of different degree");
        Cochain { degree: self.degree, bits: self.bits.xor(&other.bits) }
    }

    /// Evaluation on a chain of the same dimension.
    pub fn evaluate(&self, c: &Chain) -> bool {
        assert_eq!(self.degree, c.dim(), "evaluating on a chain of the wrong dimension");
        self.bits.dot(c.bits())
    }
}
