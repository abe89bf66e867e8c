//! Jacobson radical, its power filtration, and local/chain classification.
//!
//! The radical is found in two steps. First a candidate nilpotent ideal `I` is
//! proposed (the constructor's hint, or the span of nilpotent basis directions
//! together with `e - 1` for unipotent basis elements `e`) and verified to be a
//! nilpotent two-sided ideal. Then `J(R/I)` is computed by brute force from the
//! definition `x in J iff 1 - r*x is a unit for all r`, and pulled back. Since
//! `J(R)/I = J(R/I)` for nilpotent `I`, the answer never rests on the candidate
//! being right, only the running time does.

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::linalg::{Lanes, PVec, Subspace};

/// Largest quotient `R/I` (as a power of two) searched by brute force.
pub const MAX_QUOTIENT_BITS: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RadicalError {
    #[error("quotient by the nilpotent candidate has {size} elements, more than the brute-force cap")]
    QuotientTooLarge { size: u64 },
    #[error("R/J is not a field; its dimension over the prime field is {dim}")]
    ResidueNotField { dim: usize },
}

/// `R/I` on the non-pivot coordinates of `I`.
pub struct Quotient<'a> {
    alg: &'a FiniteAlgebra,
    ideal: Subspace,
    free: Vec<usize>,
}

impl<'a> Quotient<'a> {
    pub fn new(alg: &'a FiniteAlgebra, ideal: Subspace) -> Self {
        let free = ideal.free_coordinates();
        Quotient { alg, ideal, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    fn lanes(&self) -> Lanes {
        self.alg.lanes()
    }

    pub fn size(&self) -> u64 {
        (self.lanes().p() as u64).saturating_pow(self.dim() as u32)
    }

    pub fn reduce(&self, x: PVec) -> PVec {
        self.ideal.reduce(x)
    }

    pub fn mul(&self, x: PVec, y: PVec) -> PVec {
        self.reduce(self.alg.mul(x, y))
    }

    /// The `index`-th representative, digits placed on the free coordinates.
    pub fn element(&self, mut index: u64) -> PVec {
        let l = self.lanes();
        let p = l.p() as u64;
        let mut x = 0;
        for &c in &self.free {
            x = l.with(x, c, (index % p) as u8);
            index /= p;
        }
        x
    }

    pub fn index_of(&self, x: PVec) -> u64 {
        let l = self.lanes();
        let p = l.p() as u64;
        self.free.iter().rev().fold(0, |acc, &c| acc * p + l.get(x, c) as u64)
    }

    pub fn is_unit(&self, x: PVec) -> bool {
        let l = self.lanes();
        let image = Subspace::span(l, self.free.iter().map(|&c| self.mul(x, l.unit(c))));
        image.rank() == self.dim()
    }

    pub fn is_nilpotent(&self, x: PVec) -> bool {
        let mut acc = self.reduce(x);
        for _ in 0..=self.dim() {
            if acc == 0 {
                return true;
            }
            acc = self.mul(acc, x);
        }
        acc == 0
    }

    /// Whether every nonzero element is a unit.
    pub fn is_division_ring(&self) -> bool {
        (1..self.size()).into_par_iter().all(|i| self.is_unit(self.element(i)))
    }

    /// `J(R/I)` by the definition, as representatives.
    pub fn radical_brute(&self) -> Result<Vec<PVec>, RadicalError> {
        let size = self.size();
        if size > 1 << MAX_QUOTIENT_BITS {
            return Err(RadicalError::QuotientTooLarge { size });
        }
        let one = self.reduce(self.alg.one_packed());
        let l = self.lanes();
        let units: Vec<bool> = (0..size).into_par_iter().map(|i| self.is_unit(self.element(i))).collect();
        let members: Vec<PVec> = (1..size)
            .into_par_iter()
            .map(|i| self.element(i))
            .filter(|&x| {
                self.is_nilpotent(x)
                    && (0..size).all(|j| {
                        let rx = self.mul(self.element(j), x);
                        units[self.index_of(l.sub(one, rx)) as usize]
                    })
            })
            .collect();
        Ok(Subspace::span(l, members).basis().to_vec())
    }
}

fn is_nilpotent_element(alg: &FiniteAlgebra, x: PVec) -> bool {
    alg.pow(x, alg.prime_dim() as u64) == 0
}

/// Whether the subspace is a nilpotent two-sided ideal.
pub fn is_nilpotent_ideal(alg: &FiniteAlgebra, s: &Subspace) -> bool {
    if !alg.is_ideal(s) {
        return false;
    }
    let mut power = s.clone();
    for _ in 0..=alg.prime_dim() {
        if power.is_zero() {
            return true;
        }
        power = alg.product_span(&power, s).expect("same lanes");
    }
    power.is_zero()
}

fn candidates(alg: &FiniteAlgebra) -> Vec<Subspace> {
    let l = alg.lanes();
    let n = l.dim();
    let one = alg.one_packed();
    let mut out = Vec::new();
    if let Some(hint) = alg.radical_hint() {
        out.push(Subspace::span(l, hint.iter().copied()));
    }
    let nil: Vec<PVec> = (0..n).map(|i| l.unit(i)).filter(|&e| is_nilpotent_element(alg, e)).collect();
    let unipotent: Vec<PVec> = (0..n)
        .map(|i| l.sub(l.unit(i), one))
        .filter(|&x| x != 0 && is_nilpotent_element(alg, x))
        .collect();
    out.push(Subspace::span(l, nil.iter().chain(&unipotent).copied()));
    out.push(Subspace::span(l, nil));
    out
}

/// A verified nilpotent ideal used to shrink the brute-force search.
pub fn nilpotent_candidate(alg: &FiniteAlgebra) -> Subspace {
    candidates(alg)
        .into_iter()
        .find(|s| is_nilpotent_ideal(alg, s))
        .unwrap_or_else(|| Subspace::zero(alg.lanes()))
}

fn radical_over(alg: &FiniteAlgebra, ideal: Subspace) -> Result<Subspace, RadicalError> {
    let q = Quotient::new(alg, ideal.clone());
    let extra = q.radical_brute()?;
    let mut j = ideal;
    for x in extra {
        j.insert(x);
    }
    Ok(j)
}

/// `J(R)` as a prime-field subspace.
pub fn jacobson_radical(alg: &FiniteAlgebra) -> Result<Subspace, RadicalError> {
    radical_over(alg, nilpotent_candidate(alg))
}

/// `J(R)` straight from the definition, without a candidate ideal.
pub fn jacobson_radical_brute(alg: &FiniteAlgebra) -> Result<Subspace, RadicalError> {
    radical_over(alg, Subspace::zero(alg.lanes()))
}

/// The chain `J ⊇ J^2 ⊇ ... ⊇ J^K ⊋ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub radical: Subspace,
    /// `J^1, ..., J^K`, all nonzero.
    pub powers: Vec<Subspace>,
    /// `dim J^i/J^{i+1}` over the prime field.
    pub prime_dims: Vec<usize>,
    /// `K + 1`, the least `i` with `J^i = 0`.
    pub nilpotency_index: usize,
    /// `dim R/J` over the prime field.
    pub residue_prime_dim: usize,
}

impl Filtration {
    pub fn of_radical(alg: &FiniteAlgebra, radical: Subspace) -> Filtration {
        let mut powers = Vec::new();
        let mut cur = radical.clone();
        while !cur.is_zero() {
            let next = alg.product_span(&cur, &radical).expect("same lanes");
            assert!(next.rank() < cur.rank(), "radical powers must strictly decrease");
            powers.push(cur);
            cur = next;
        }
        let ranks: Vec<usize> = powers.iter().map(Subspace::rank).chain([0]).collect();
        let prime_dims = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        Filtration {
            residue_prime_dim: alg.prime_dim() - radical.rank(),
            nilpotency_index: powers.len() + 1,
            radical,
            powers,
            prime_dims,
        }
    }

    /// `J^i` for `i >= 0`, with `J^0 = R`.
    pub fn power(&self, i: usize) -> Subspace {
        match i {
            0 => Subspace::full(self.radical.lanes()),
            _ => self.powers.get(i - 1).cloned().unwrap_or_else(|| Subspace::zero(self.radical.lanes())),
        }
    }

    /// `dim J^i/J^{i+1}` in units of a field of the given degree over the prime field.
    pub fn dims_over(&self, degree: usize) -> Vec<usize> {
        self.prime_dims.iter().map(|d| d / degree).collect()
    }
}

pub fn filtration(alg: &FiniteAlgebra) -> Result<Filtration, RadicalError> {
    Ok(Filtration::of_radical(alg, jacobson_radical(alg)?))
}

/// Radical data plus local and chain classification.
#[derive(Clone, Debug)]
pub struct Structure {
    pub filtration: Filtration,
    pub local: bool,
    /// A generator `u` of `J` as a left ideal when the ring is a chain ring.
    pub chain_generator: Option<PVec>,
}

impl Structure {
    pub fn radical(&self) -> &Subspace {
        &self.filtration.radical
    }

    pub fn is_chain(&self) -> bool {
        self.local && (self.filtration.radical.is_zero() || self.chain_generator.is_some())
    }

    /// `|R/J|` when `R/J` is a field.
    pub fn residue_field_size(&self, p: u8) -> Result<u64, RadicalError> {
        if self.local {
            Ok((p as u64).pow(self.filtration.residue_prime_dim as u32))
        } else {
            Err(RadicalError::ResidueNotField { dim: self.filtration.residue_prime_dim })
        }
    }

    /// Filtration dims over the residue field when local, else over the base field.
    pub fn dims(&self, alg: &FiniteAlgebra) -> Vec<usize> {
        let degree = if self.local { self.filtration.residue_prime_dim } else { alg.field().degree() as usize };
        self.filtration.dims_over(degree.max(1))
    }
}

pub fn analyze(alg: &FiniteAlgebra) -> Result<Structure, RadicalError> {
    let filtration = filtration(alg)?;
    let residue = Quotient::new(alg, filtration.radical.clone());
    if residue.size() > 1 << 16 {
        return Err(RadicalError::QuotientTooLarge { size: residue.size() });
    }
    let local = residue.is_division_ring();
    let chain_generator = if local { chain_generator(alg, &filtration) } else { None };
    Ok(Structure { filtration, local, chain_generator })
}

pub fn is_local(alg: &FiniteAlgebra) -> Result<bool, RadicalError> {
    Ok(analyze(alg)?.local)
}

pub fn residue_field_size(alg: &FiniteAlgebra) -> Result<u64, RadicalError> {
    analyze(alg)?.residue_field_size(alg.lanes().p())
}

pub fn is_chain(alg: &FiniteAlgebra) -> Result<bool, RadicalError> {
    Ok(analyze(alg)?.is_chain())
}

/// First `u in J \ J^2` (enumeration order) with `R*u = J`.
fn chain_generator(alg: &FiniteAlgebra, f: &Filtration) -> Option<PVec> {
    let j = &f.radical;
    if j.is_zero() || f.prime_dims[0] > f.residue_prime_dim {
        return None;
    }
    let j2 = f.power(2);
    j.elements().find(|&u| !j2.contains(u) && alg.left_ideal(u) == *j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{self, GroupTable};
    use crate::gf::Field;

    #[test]
    fn field_has_zero_radical() {
        let f = constructors::chain_ring(&Field::f4(), 1).unwrap();
        let s = analyze(&f).unwrap();
        assert!(s.radical().is_zero());
        assert!(s.local && s.is_chain());
        assert_eq!(s.filtration.nilpotency_index, 1);
        assert_eq!(s.residue_field_size(2).unwrap(), 4);
    }

    #[test]
    fn chain_ring_filtration() {
        let r = constructors::chain_ring(&Field::f2(), 4).unwrap();
        let s = analyze(&r).unwrap();
        assert_eq!(s.dims(&r), [1, 1, 1]);
        assert_eq!(s.filtration.nilpotency_index, 4);
        assert!(s.is_chain());
    }

    #[test]
    fn dihedral_radical_is_augmentation_ideal() {
        let r = constructors::group_algebra(&Field::f2(), &GroupTable::dihedral8()).unwrap();
        let s = analyze(&r).unwrap();
        let one = r.one_packed();
        let aug = Subspace::span(r.lanes(), (1..8).map(|i| one ^ r.lanes().unit(i)));
        assert_eq!(*s.radical(), aug);
        assert!(s.local);
        assert!(!s.is_chain());
        assert_eq!(s.residue_field_size(2).unwrap(), 2);
        assert!(s.filtration.nilpotency_index >= 5);
        assert_eq!(jacobson_radical_brute(&r).unwrap(), aug);
    }

    #[test]
    fn semisimple_and_split_rings() {
        let f2 = Field::f2();
        let m2 = constructors::matrix_algebra(&f2, 2).unwrap();
        let s = analyze(&m2).unwrap();
        assert!(s.radical().is_zero());
        assert!(!s.local);
        assert_eq!(s.residue_field_size(2), Err(RadicalError::ResidueNotField { dim: 4 }));

        let f = constructors::chain_ring(&f2, 1).unwrap();
        let sum = constructors::direct_sum(&f, &f).unwrap();
        assert!(!is_local(&sum).unwrap());

        let c3 = constructors::group_algebra(&f2, &GroupTable::cyclic(3).unwrap()).unwrap();
        assert!(jacobson_radical(&c3).unwrap().is_zero());

        let u2 = constructors::upper_triangular(&f2, 2).unwrap();
        assert_eq!(jacobson_radical(&u2).unwrap().rank(), 1);
        assert_eq!(jacobson_radical_brute(&u2).unwrap().rank(), 1);
    }

    #[test]
    fn skew_quotients_are_local_with_residue_f4() {
        let ex1 = constructors::skew_ex1().unwrap();
        let s = analyze(&ex1).unwrap();
        assert!(s.local);
        assert_eq!(s.residue_field_size(2).unwrap(), 4);
        assert_eq!(s.radical().rank(), 6);
        assert_eq!(s.filtration.nilpotency_index, 3);
        assert_eq!(jacobson_radical_brute(&ex1).unwrap(), *s.radical());

        let ex3 = constructors::skew_ex3().unwrap();
        let s = analyze(&ex3).unwrap();
        assert!(s.local);
        assert_eq!(s.residue_field_size(2).unwrap(), 4);
    }
}
