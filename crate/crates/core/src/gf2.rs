//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors and matrix rows are stored as packed `u64` words; addition is XOR.
//! Elimination always pivots on the lowest available index so that ranks,
//! solutions and kernels are reproducible bit for bit.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; words_for(len)], len }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self { words: vec![u64::MAX; words_for(len)], len };
        v.mask_tail();
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit at or after `start`.
    pub fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut wi = start / WORD;
        let mut word = self.words[wi] & (u64::MAX << (start % WORD));
        loop {
            if word != 0 {
                return Some(wi * WORD + word.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            word = self.words[wi];
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let tz = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, "]")
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors; all must share `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        Self::from_rows(rows, columns).transpose()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec { words: self.row_words(i).to_vec(), len: self.cols }
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&i| self.get(i, j)))
    }

    pub fn row_count_ones(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_count_ones(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (wi, &word) in self.row_words(i).iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let j = wi * WORD + w.trailing_zeros() as usize;
                    w &= w - 1;
                    t.data[j * t.stride + i / WORD] |= 1u64 << (i % WORD);
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(x.words())
                .fold(0u32, |acc, (a, b)| acc ^ ((a & b).count_ones() & 1));
            if parity == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (wi, &word) in self.row_words(i).iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let k = wi * WORD + w.trailing_zeros() as usize;
                    w &= w - 1;
                    let (src_start, stride) = (k * other.stride, other.stride);
                    for s in 0..stride {
                        out.data[i * out.stride + s] ^= other.data[src_start + s];
                    }
                }
            }
        }
        Ok(out)
    }

    fn xor_rows(&mut self, dst: usize, src: usize, from_word: usize) {
        debug_assert_ne!(dst, src);
        let stride = self.stride;
        let (d, s) = (dst * stride, src * stride);
        for w in from_word..stride {
            let v = self.data[s + w];
            self.data[d + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let stride = self.stride;
        for w in 0..stride {
            self.data.swap(a * stride + w, b * stride + w);
        }
    }

    /// GF(2) rank; `self` is left untouched.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else { continue };
            m.swap_rows(rank, p);
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_rows(r, rank, c / WORD);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form with lowest-index pivots.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else { continue };
            m.swap_rows(r, p);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(i, r, c / WORD);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Solves `self * x = b`. Free variables are set to zero, so the answer
    /// is the unique solution supported on the pivot columns.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                aug.set(i, j, true);
            }
            if b.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if matrix.get(r, self.cols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of the null space, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<BitVec> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::zeros(self.cols);
                v.set(f, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if matrix.get(r, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incremental echelon basis keyed by lowest set bit.
///
/// Every stored row has a distinct pivot (its lowest set bit). Each row also
/// carries a tag vector recording which tagged inputs were combined into it,
/// which lets the basis decode coordinates of a vector modulo the untagged part.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    tag_len: usize,
    rows: Vec<BitVec>,
    tags: Vec<BitVec>,
    pivot_row: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl Echelon {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Self { len, tag_len, rows: Vec::new(), tags: Vec::new(), pivot_row: vec![NO_ROW; len] }
    }

    /// Length of the vectors being reduced.
    pub fn vector_len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` as far as possible; returns the residual and accumulated tag.
    /// The residual is zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut v = v.clone();
        let mut tag = BitVec::zeros(self.tag_len);
        let mut pos = v.first_one();
        while let Some(p) = pos {
            let r = self.pivot_row[p];
            if r == NO_ROW {
                break;
            }
            v.xor_assign(&self.rows[r as usize]);
            tag.xor_assign(&self.tags[r as usize]);
            pos = v.first_one_from(p + 1);
        }
        (v, tag)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Adds `v` with the given tag. Returns `false` when `v` was already in
    /// the span (nothing is stored).
    pub fn insert(&mut self, v: &BitVec, tag: BitVec) -> bool {
        assert_eq!(tag.len(), self.tag_len, "tag length mismatch");
        let (res, acc) = self.reduce(v);
        match res.first_one() {
            None => false,
            Some(p) => {
                let mut t = tag;
                t.xor_assign(&acc);
                self.pivot_row[p] = self.rows.len() as u32;
                self.rows.push(res);
                self.tags.push(t);
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitvec_basics() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.first_one_from(1), Some(64));
        assert_eq!(v.first_one_from(65), Some(129));
        assert_eq!(BitVec::ones(70).count_ones(), 70);
        v.flip(0);
        assert!(!v.get(0));
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(BitMatrix::identity(2).rank(), 2);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn solve_identity() {
        let b = BitVec::from_bools(&[true, false]);
        let x = BitMatrix::identity(2).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_zero_matrix_nonzero_rhs() {
        let b = BitVec::from_bools(&[true, false]);
        assert_eq!(BitMatrix::zeros(2, 2).solve(&b).unwrap(), None);
    }

    #[test]
    fn solve_rejects_wrong_rhs_length() {
        let err = BitMatrix::zeros(2, 2).solve(&BitVec::zeros(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let rows = [
            BitVec::from_bools(&[true, true, false, true]),
            BitVec::from_bools(&[false, true, true, true]),
        ];
        let m = BitMatrix::from_rows(4, &rows);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(m.mul_vec(k).unwrap().is_zero());
        }
    }

    #[test]
    fn echelon_tags_track_combinations() {
        let mut e = Echelon::new(3, 2);
        assert!(e.insert(&BitVec::from_bools(&[true, true, false]), BitVec::from_bools(&[true, false])));
        assert!(e.insert(&BitVec::from_bools(&[false, true, true]), BitVec::from_bools(&[false, true])));
        let (res, tag) = e.reduce(&BitVec::from_bools(&[true, false, true]));
        assert!(res.is_zero());
        assert_eq!(tag, BitVec::from_bools(&[true, true]));
        assert!(!e.insert(&BitVec::from_bools(&[true, false, true]), BitVec::zeros(2)));
    }
}
