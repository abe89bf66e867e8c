//! Packed vectors over a prime field and canonical subspaces.
//!
//! A vector of `F_p^n` lives in one `u64`. Over `F_2` coordinate `i` is bit `i`,
//! so addition is XOR and elimination is word-parallel. For odd `p` each
//! coordinate takes a 4-bit lane.

use std::fmt;

use thiserror::Error;

pub type PVec = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension {n} over F_{p} does not fit in a packed word")]
    TooLarge { p: u8, n: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// The vector space `F_p^n` with packed coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lanes {
    p: u8,
    n: u8,
    bits: u8,
}

impl fmt::Debug for Lanes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}", self.p, self.n)
    }
}

impl Lanes {
    pub fn new(p: u8, n: usize) -> Result<Lanes, LinalgError> {
        let bits: usize = if p == 2 { 1 } else { 4 };
        if n * bits > 64 || p > 16 {
            return Err(LinalgError::TooLarge { p, n });
        }
        Ok(Lanes { p, n: n as u8, bits: bits as u8 })
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.p == 2
    }

    /// Number of vectors, `p^n` (saturating).
    pub fn size(&self) -> u64 {
        (self.p as u64).checked_pow(self.n as u32).unwrap_or(u64::MAX)
    }

    #[inline]
    fn mask(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    #[inline]
    pub fn get(&self, x: PVec, i: usize) -> u8 {
        ((x >> (i * self.bits as usize)) & self.mask()) as u8
    }

    #[inline]
    pub fn with(&self, x: PVec, i: usize, c: u8) -> PVec {
        let shift = i * self.bits as usize;
        (x & !(self.mask() << shift)) | ((c as u64) << shift)
    }

    #[inline]
    pub fn unit(&self, i: usize) -> PVec {
        1u64 << (i * self.bits as usize)
    }

    #[inline]
    pub fn add(&self, x: PVec, y: PVec) -> PVec {
        if self.p == 2 {
            return x ^ y;
        }
        let mut out = 0;
        for i in 0..self.n as usize {
            out = self.with(out, i, (self.get(x, i) + self.get(y, i)) % self.p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, x: PVec) -> PVec {
        if self.p == 2 {
            return x;
        }
        self.scale(self.p - 1, x)
    }

    #[inline]
    pub fn sub(&self, x: PVec, y: PVec) -> PVec {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn scale(&self, c: u8, x: PVec) -> PVec {
        if self.p == 2 {
            return if c & 1 == 1 { x } else { 0 };
        }
        let mut out = 0;
        for i in 0..self.n as usize {
            let v = (self.get(x, i) as u32 * c as u32 % self.p as u32) as u8;
            out = self.with(out, i, v);
        }
        out
    }

    /// `x + c*y`.
    #[inline]
    pub fn axpy(&self, x: PVec, c: u8, y: PVec) -> PVec {
        if self.p == 2 {
            return if c & 1 == 1 { x ^ y } else { x };
        }
        self.add(x, self.scale(c, y))
    }

    pub fn inv_scalar(&self, c: u8) -> u8 {
        (1..self.p).find(|&d| (c as u32 * d as u32) % self.p as u32 == 1).expect("invertible scalar")
    }

    /// Index of the lowest nonzero coordinate.
    #[inline]
    pub fn lead(&self, x: PVec) -> Option<usize> {
        if x == 0 {
            None
        } else {
            Some(x.trailing_zeros() as usize / self.bits as usize)
        }
    }

    /// Vector whose coordinate `i` is digit `i` of `index` in base `p`.
    ///
    /// This fixes the element enumeration order used for witnesses.
    #[inline]
    pub fn from_index(&self, index: u64) -> PVec {
        if self.p == 2 {
            return index;
        }
        let mut rest = index;
        let mut out = 0;
        for i in 0..self.n as usize {
            out = self.with(out, i, (rest % self.p as u64) as u8);
            rest /= self.p as u64;
        }
        out
    }

    #[inline]
    pub fn to_index(&self, x: PVec) -> u64 {
        if self.p == 2 {
            return x;
        }
        (0..self.n as usize).rev().fold(0, |acc, i| acc * self.p as u64 + self.get(x, i) as u64)
    }

    pub fn coords(&self, x: PVec) -> Vec<u8> {
        (0..self.n as usize).map(|i| self.get(x, i)).collect()
    }

    pub fn from_coords(&self, coords: &[u8]) -> PVec {
        coords.iter().enumerate().fold(0, |acc, (i, &c)| self.with(acc, i, c % self.p))
    }

    /// All vectors in enumeration order.
    pub fn all(&self) -> impl Iterator<Item = PVec> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }
}

/// A subspace of `F_p^n`, kept in reduced row echelon form.
///
/// Rows are sorted by pivot (lowest nonzero coordinate), pivots are 1 and every
/// pivot column is zero in all other rows, so equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    lanes: Lanes,
    rows: Vec<PVec>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace").field("space", &self.lanes).field("rank", &self.rank()).finish()
    }
}

impl Subspace {
    pub fn zero(lanes: Lanes) -> Subspace {
        Subspace { lanes, rows: Vec::new() }
    }

    pub fn full(lanes: Lanes) -> Subspace {
        Subspace { lanes, rows: (0..lanes.dim()).map(|i| lanes.unit(i)).collect() }
    }

    pub fn span<I: IntoIterator<Item = PVec>>(lanes: Lanes, vectors: I) -> Subspace {
        let mut s = Subspace::zero(lanes);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn lanes(&self) -> Lanes {
        self.lanes
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.lanes.dim()
    }

    /// Canonical basis (reduced echelon rows).
    pub fn basis(&self) -> &[PVec] {
        &self.rows
    }

    /// Number of vectors in the subspace (saturating).
    pub fn size(&self) -> u64 {
        (self.lanes.p as u64).checked_pow(self.rank() as u32).unwrap_or(u64::MAX)
    }

    /// Residue of `x` after clearing every pivot coordinate; zero iff `x` is in the subspace.
    #[inline]
    pub fn reduce(&self, mut x: PVec) -> PVec {
        let l = self.lanes;
        for &row in &self.rows {
            let pivot = l.lead(row).unwrap();
            let c = l.get(x, pivot);
            if c != 0 {
                x = l.axpy(x, l.p - c, row);
            }
        }
        x
    }

    #[inline]
    pub fn contains(&self, x: PVec) -> bool {
        self.reduce(x) == 0
    }

    /// Adds `x` to the span; returns whether the rank grew.
    pub fn insert(&mut self, x: PVec) -> bool {
        let l = self.lanes;
        let r = self.reduce(x);
        let Some(pivot) = l.lead(r) else {
            return false;
        };
        let r = l.scale(l.inv_scalar(l.get(r, pivot)), r);
        for row in self.rows.iter_mut() {
            let c = l.get(*row, pivot);
            if c != 0 {
                *row = l.axpy(*row, l.p - c, r);
            }
        }
        let pos = self.rows.partition_point(|&row| l.lead(row).unwrap() < pivot);
        self.rows.insert(pos, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|&v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for &v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Reduction modulo `other` is a linear projection whose kernel is `other`.
        Subspace::span(self.lanes, kernel_within(self.lanes, &self.rows, |v| other.reduce(v)))
    }

    /// Coordinates (lanes) that are not pivots: a complement basis.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let pivots: Vec<usize> = self.rows.iter().map(|&r| self.lanes.lead(r).unwrap()).collect();
        (0..self.lanes.dim()).filter(|i| !pivots.contains(i)).collect()
    }

    /// Element of the subspace with combination coefficients given by the digits of `index`.
    pub fn element(&self, index: u64) -> PVec {
        let l = self.lanes;
        let mut rest = index;
        let mut out = 0;
        for &row in &self.rows {
            out = l.axpy(out, (rest % l.p as u64) as u8, row);
            rest /= l.p as u64;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = PVec> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }
}

/// Kernel of a linear map restricted to the span of independent vectors `basis`.
///
/// Eliminates on `(f(b), b)` pairs; pairs whose image cancels give kernel vectors.
pub fn kernel_within<F: Fn(PVec) -> PVec>(lanes: Lanes, basis: &[PVec], f: F) -> Vec<PVec> {
    let l = lanes;
    // (image, preimage, pivot of image)
    let mut pivots: Vec<(PVec, PVec, usize)> = Vec::with_capacity(basis.len());
    let mut kernel = Vec::new();
    for &b in basis {
        let mut img = f(b);
        let mut pre = b;
        for &(pi, pp, piv) in &pivots {
            let c = l.get(img, piv);
            if c != 0 {
                let m = l.p - c;
                img = l.axpy(img, m, pi);
                pre = l.axpy(pre, m, pp);
            }
        }
        match l.lead(img) {
            None => kernel.push(pre),
            Some(piv) => {
                let s = l.inv_scalar(l.get(img, piv));
                pivots.push((l.scale(s, img), l.scale(s, pre), piv));
            }
        }
    }
    kernel
}

/// Kernel of a linear map on all of `F_p^n`.
pub fn kernel<F: Fn(PVec) -> PVec>(lanes: Lanes, f: F) -> Subspace {
    let units: Vec<PVec> = (0..lanes.dim()).map(|i| lanes.unit(i)).collect();
    Subspace::span(lanes, kernel_within(lanes, &units, f))
}

/// Image of a linear map on all of `F_p^n`.
pub fn image<F: Fn(PVec) -> PVec>(lanes: Lanes, f: F) -> Subspace {
    Subspace::span(lanes, (0..lanes.dim()).map(|i| f(lanes.unit(i))))
}

/// A square matrix over `F_p`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    lanes: Lanes,
    cols: Vec<PVec>,
}

impl Matrix {
    pub fn from_columns(lanes: Lanes, cols: Vec<PVec>) -> Matrix {
        assert_eq!(cols.len(), lanes.dim());
        Matrix { lanes, cols }
    }

    pub fn identity(lanes: Lanes) -> Matrix {
        Matrix::from_columns(lanes, (0..lanes.dim()).map(|i| lanes.unit(i)).collect())
    }

    pub fn columns(&self) -> &[PVec] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.lanes.get(self.cols[col], row)
    }

    pub fn apply(&self, x: PVec) -> PVec {
        let l = self.lanes;
        if l.is_binary() {
            let mut acc = 0;
            let mut bits = x;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                acc ^= self.cols[j];
                bits &= bits - 1;
            }
            return acc;
        }
        (0..l.dim()).fold(0, |acc, j| l.axpy(acc, l.get(x, j), self.cols[j]))
    }

    /// `self * other`.
    pub fn compose(&self, other: &Matrix) -> Matrix {
        Matrix::from_columns(self.lanes, other.cols.iter().map(|&c| self.apply(c)).collect())
    }

    pub fn rank(&self) -> usize {
        Subspace::span(self.lanes, self.cols.iter().copied()).rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.lanes.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|&c| c == 0)
    }

    pub fn kernel(&self) -> Subspace {
        kernel(self.lanes, |x| self.apply(x))
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.lanes, self.cols.iter().copied())
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.lanes.dim()).map(|r| (0..self.lanes.dim()).map(|c| self.entry(r, c)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn packing_roundtrip_odd_prime() {
        let l = Lanes::new(5, 3).unwrap();
        let x = l.from_coords(&[4, 0, 3]);
        assert_eq!(l.coords(x), vec![4, 0, 3]);
        assert_eq!(l.coords(l.add(x, x)), vec![3, 0, 1]);
        assert_eq!(l.to_index(x), 4 + 3 * 25);
        assert_eq!(l.from_index(79), x);
        assert!(Lanes::new(3, 17).is_err());
        assert!(Lanes::new(2, 64).is_ok());
    }

    #[test]
    fn span_of_nothing_is_zero() {
        let l = Lanes::new(2, 4).unwrap();
        assert_eq!(Subspace::span(l, []).rank(), 0);
        let s = Subspace::span(l, [0b0011, 0b0110]);
        assert_eq!(s.intersect(&s), s);
        assert!(s.contains(0b0101));
        assert!(!s.contains(0b0001));
    }

    #[test]
    fn echelon_form_is_canonical() {
        let l = Lanes::new(2, 4).unwrap();
        let a = Subspace::span(l, [0b0011, 0b0110]);
        let b = Subspace::span(l, [0b0101, 0b0110]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[0b0101, 0b0110]);
    }

    #[test]
    fn kernel_of_nilpotent_shift() {
        // e0 -> e1 -> e2 -> 0
        let l = Lanes::new(2, 3).unwrap();
        let m = Matrix::from_columns(l, vec![0b010, 0b100, 0]);
        assert_eq!(m.kernel(), Subspace::span(l, [0b100]));
        assert!(m.compose(&m).compose(&m).is_zero());
        assert!(!m.compose(&m).is_zero());
    }

    fn arb_vectors(p: u8, n: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
        proptest::collection::vec(proptest::collection::vec(0..p, n), 0..6)
    }

    proptest! {
        // rank + nullity, and intersection against a brute-force enumeration
        #[test]
        fn subspace_ops_match_enumeration(p in prop::sample::select(vec![2u8, 3, 5]),
                                          a in arb_vectors(5, 4), b in arb_vectors(5, 4)) {
            let l = Lanes::new(p, 4).unwrap();
            let pack = |v: &Vec<Vec<u8>>| v.iter().map(|c| l.from_coords(c)).collect::<Vec<_>>();
            let sa = Subspace::span(l, pack(&a));
            let sb = Subspace::span(l, pack(&b));
            let inter = sa.intersect(&sb);
            let members: Vec<PVec> = l.all().filter(|&x| sa.contains(x) && sb.contains(x)).collect();
            prop_assert_eq!(inter.size(), members.len() as u64);
            prop_assert!(members.iter().all(|&x| inter.contains(x)));
            prop_assert_eq!(sa.elements().count() as u64, sa.size());
            prop_assert_eq!(sa.sum(&sb).rank() + inter.rank(), sa.rank() + sb.rank());
            let m = Matrix::from_columns(l, (0..4).map(|i| pack(&a).get(i).copied().unwrap_or(0)).collect());
            prop_assert_eq!(m.rank() + m.kernel().rank(), 4);
        }
    }
}
