//! Brute-force property verdicts from a full multiplication table.
//!
//! Every property is evaluated straight from its definition by nested loops over
//! element tuples. Nothing here uses annihilators, kernels or the radical, so the
//! verdicts are independent of the checkers in [`crate::props`].

use std::collections::BTreeMap;

use crate::algebra::FiniteAlgebra;
use crate::linalg::PVec;
use crate::props::Property;

/// Largest ring the oracle accepts.
pub const MAX_ORDER: u64 = 256;

/// Elements by enumeration index with their product and sum tables.
pub struct Table {
    n: usize,
    elems: Vec<PVec>,
    mul: Vec<u16>,
    add: Vec<u16>,
}

impl Table {
    pub fn new(alg: &FiniteAlgebra) -> Option<Table> {
        let size = alg.size();
        if size > MAX_ORDER {
            return None;
        }
        let l = alg.lanes();
        let n = size as usize;
        let elems: Vec<PVec> = (0..size).map(|i| l.from_index(i)).collect();
        let mut mul = vec![0u16; n * n];
        let mut add = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = l.to_index(alg.mul(elems[i], elems[j])) as u16;
                add[i * n + j] = l.to_index(l.add(elems[i], elems[j])) as u16;
            }
        }
        Some(Table { n, elems, mul, add })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn element(&self, i: usize) -> PVec {
        self.elems[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    fn one(&self) -> usize {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x)).expect("unital")
    }

    /// A two-sided inverse exists.
    pub fn is_unit(&self, a: usize) -> bool {
        let one = self.one();
        (0..self.n).any(|b| self.mul(a, b) == one && self.mul(b, a) == one)
    }

    fn is_nilpotent(&self, a: usize) -> bool {
        let mut x = a;
        for _ in 0..=self.n {
            if x == 0 {
                return true;
            }
            x = self.mul(x, a);
        }
        false
    }
}

/// Oracle verdict with the first violating tuple of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub holds: bool,
    pub witness: Vec<PVec>,
}

fn first<const K: usize>(t: &Table, pred: impl Fn([usize; K]) -> bool) -> OracleVerdict {
    let n = t.n;
    let mut idx = [0usize; K];
    loop {
        if pred(idx) {
            return OracleVerdict { holds: false, witness: idx.iter().map(|&i| t.element(i)).collect() };
        }
        let mut k = K;
        loop {
            if k == 0 {
                return OracleVerdict { holds: true, witness: Vec::new() };
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Verdicts for every property, with witnesses in the same role order as
/// [`crate::props::Witness`] where one exists.
pub fn verdicts(t: &Table) -> BTreeMap<Property, OracleVerdict> {
    let n = t.n;
    let m = |a, b| t.mul(a, b);
    let mut out = BTreeMap::new();
    out.insert(Property::Commutative, first(t, |[a, b]| m(a, b) != m(b, a)));
    out.insert(Property::Reversible, first(t, |[a, b]| m(a, b) == 0 && m(b, a) != 0));
    out.insert(Property::Symmetric, first(t, |[a, b, c]| m(m(a, b), c) == 0 && m(m(b, a), c) != 0));
    // (a, r, b): ab = 0 and arb != 0, with b the first such for a and r the first for (a, b).
    let sandwich_zero = |a: usize, b: usize| (0..n).all(|r| m(m(a, r), b) == 0);
    let semi = first(t, |[a, b]| m(a, b) == 0 && !sandwich_zero(a, b));
    out.insert(Property::Semicommutative, with_middle(t, semi, |a, r, b| m(m(a, r), b) != 0));
    let refl = first(t, |[a, b]| sandwich_zero(a, b) && !sandwich_zero(b, a));
    out.insert(Property::Reflexive, with_last(t, refl, |a, b, r| m(m(b, r), a) != 0));
    // Right duo: every ba lies in aR. Left duo: every ab lies in Ra.
    let in_right = |a: usize, x: usize| (0..n).any(|r| m(a, r) == x);
    let in_left = |a: usize, x: usize| (0..n).any(|r| m(r, a) == x);
    let right = first(t, |[a, b]| !in_right(a, m(b, a)));
    let left = first(t, |[a, b]| !in_left(a, m(a, b)));
    out.insert(
        Property::Duo,
        OracleVerdict { holds: right.holds && left.holds, witness: Vec::new() },
    );
    out.insert(Property::RightDuo, right);
    out.insert(Property::LeftDuo, left);
    out.insert(Property::Abelian, first(t, |[e, r]| m(e, e) == e && m(e, r) != m(r, e)));
    let nil: Vec<bool> = (0..n).map(|x| t.is_nilpotent(x)).collect();
    let closed = (0..n).all(|x| {
        !nil[x] || (0..n).all(|y| (!nil[y] || nil[t.add(x, y)]) && nil[m(x, y)] && nil[m(y, x)])
    });
    out.insert(Property::NI, OracleVerdict { holds: closed, witness: Vec::new() });
    out
}

/// Inserts the first middle element `r` with `pred(a, r, b)` into a pair witness `(a, b)`.
fn with_middle(t: &Table, v: OracleVerdict, pred: impl Fn(usize, usize, usize) -> bool) -> OracleVerdict {
    if v.holds {
        return v;
    }
    let (a, b) = (index_of(t, v.witness[0]), index_of(t, v.witness[1]));
    let r = (0..t.n).find(|&r| pred(a, r, b)).expect("violation");
    OracleVerdict { holds: false, witness: vec![t.element(a), t.element(r), t.element(b)] }
}

/// Appends the first `r` with `pred(a, b, r)` to a pair witness `(a, b)`.
fn with_last(t: &Table, v: OracleVerdict, pred: impl Fn(usize, usize, usize) -> bool) -> OracleVerdict {
    if v.holds {
        return v;
    }
    let (a, b) = (index_of(t, v.witness[0]), index_of(t, v.witness[1]));
    let r = (0..t.n).find(|&r| pred(a, b, r)).expect("violation");
    OracleVerdict { holds: false, witness: vec![t.element(a), t.element(b), t.element(r)] }
}

fn index_of(t: &Table, x: PVec) -> usize {
    t.elems.iter().position(|&e| e == x).expect("element of the table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors;
    use crate::gf::Field;

    #[test]
    fn matrix_ring_verdicts() {
        let alg = constructors::matrix_algebra(&Field::f2(), 2).unwrap();
        let t = Table::new(&alg).unwrap();
        let v = verdicts(&t);
        assert!(!v[&Property::NI].holds);
        assert!(!v[&Property::Abelian].holds);
        assert!(v[&Property::Reflexive].holds);
        let units = (0..t.len()).filter(|&i| t.is_unit(i)).count();
        assert_eq!(units, 6);
    }

    #[test]
    fn refuses_large_rings() {
        let alg = constructors::chain_ring(&Field::f2(), 9).unwrap();
        assert!(Table::new(&alg).is_none());
    }
}
