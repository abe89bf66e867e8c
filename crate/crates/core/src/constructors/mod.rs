//! Builders for group algebras, truncated polynomial (chain) rings, matrix
//! algebras, the skew quotients over `F4`, and direct sums.

mod group;

pub use group::{GroupError, GroupTable};

use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteAlgebra};
use crate::gf::{Field, FieldElem};
use crate::radical::{self, RadicalError};
use crate::rewrite::{self, CommRule, NCPolynomial, Presentation, RewriteError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Radical(#[from] RadicalError),
    #[error("parameter must be at least 1")]
    ZeroSize,
}

fn unit_vector(d: usize, i: usize) -> Vec<FieldElem> {
    let mut v = vec![FieldElem::ZERO; d];
    v[i] = FieldElem::ONE;
    v
}

/// `F_q[G]` with the group elements as basis.
pub fn group_algebra(field: &Field, g: &GroupTable) -> Result<FiniteAlgebra, ConstructError> {
    let n = g.order();
    let structure = (0..n).map(|a| (0..n).map(|b| unit_vector(n, g.mul(a, b))).collect()).collect();
    let name = format!("{}[G{}]", field.name(), n);
    Ok(FiniteAlgebra::new(
        name,
        field.clone(),
        g.labels().to_vec(),
        structure,
        vec![0; n],
        unit_vector(n, g.identity()),
    )?)
}

/// `F_q[u]/(u^k)`.
pub fn chain_ring(field: &Field, k: usize) -> Result<FiniteAlgebra, ConstructError> {
    if k == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let labels = (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "u".to_string(),
            _ => format!("u^{i}"),
        })
        .collect();
    let structure = (0..k)
        .map(|i| (0..k).map(|j| if i + j < k { unit_vector(k, i + j) } else { vec![FieldElem::ZERO; k] }).collect())
        .collect();
    Ok(FiniteAlgebra::new(
        format!("{}[u]/(u^{k})", field.name()),
        field.clone(),
        labels,
        structure,
        vec![0; k],
        unit_vector(k, 0),
    )?)
}

fn matrix_units(field: &Field, n: usize, upper: bool, name: String) -> Result<FiniteAlgebra, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let units: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !upper || i <= j).collect();
    let d = units.len();
    let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j)).expect("matrix unit");
    let labels = units.iter().map(|&(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let structure = units
        .iter()
        .map(|&(i, j)| {
            units
                .iter()
                .map(|&(k, l)| if j == k { unit_vector(d, index(i, l)) } else { vec![FieldElem::ZERO; d] })
                .collect()
        })
        .collect();
    let mut one = vec![FieldElem::ZERO; d];
    for i in 0..n {
        one[index(i, i)] = FieldElem::ONE;
    }
    Ok(FiniteAlgebra::new(name, field.clone(), labels, structure, vec![0; d], one)?)
}

/// `M_n(F_q)` on the matrix units `E_ij`.
pub fn matrix_algebra(field: &Field, n: usize) -> Result<FiniteAlgebra, ConstructError> {
    matrix_units(field, n, false, format!("M{n}({})", field.name()))
}

/// Upper triangular matrices `U_n(F_q)`.
pub fn upper_triangular(field: &Field, n: usize) -> Result<FiniteAlgebra, ConstructError> {
    matrix_units(field, n, true, format!("U{n}({})", field.name()))
}

fn word(p: &Presentation, w: &str) -> Vec<u8> {
    w.chars().map(|c| p.generator(&c.to_string()).expect("generator")).collect()
}

fn monomials(p: &Presentation, ws: &[&str]) -> NCPolynomial {
    let f = p.field.clone();
    ws.iter()
        .fold(NCPolynomial::zero(), |acc, w| acc.add(&f, &NCPolynomial::term(f.one(), word(p, w))))
}

/// Presentation of `F4[v; frob][u]/(u^2 + v^2, uv)`; `u` is central.
pub fn skew_ex1_presentation() -> Presentation {
    let f = Field::f4();
    let mut p = Presentation::new(f.clone(), vec!["u".into(), "v".into()]);
    p.twists = vec![0, 1];
    p.comm.push(CommRule { left: 1, right: 0, scalar: f.one() });
    p.relations = vec![monomials(&p, &["uu", "vv"]), monomials(&p, &["uv"])];
    p
}

/// Presentation of `F4[u][v; psi]/(u^2, v^2)` with `psi(u) = a*u` and `psi(c) = c^2`.
pub fn skew_ex3_presentation() -> Presentation {
    let f = Field::f4();
    let mut p = Presentation::new(f.clone(), vec!["u".into(), "v".into()]);
    p.twists = vec![0, 1];
    p.comm.push(CommRule { left: 1, right: 0, scalar: f.generator() });
    p.relations = vec![monomials(&p, &["uu"]), monomials(&p, &["vv"])];
    p
}

/// The skew quotient with basis `{1, u, v, u^2}` over `F4`.
pub fn skew_ex1() -> Result<FiniteAlgebra, ConstructError> {
    Ok(rewrite::build_algebra("ex1", &skew_ex1_presentation())?)
}

/// The skew quotient with basis `{1, u, v, uv}` over `F4`.
pub fn skew_ex3() -> Result<FiniteAlgebra, ConstructError> {
    Ok(rewrite::build_algebra("ex3", &skew_ex3_presentation())?)
}

/// `A (+) B`, with labels `(x,0)` and `(0,y)`.
///
/// The result carries `J(A) (+) J(B)` as a radical hint.
pub fn direct_sum(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra, ConstructError> {
    if a.field() != b.field() {
        return Err(AlgebraError::FieldMismatch(a.field().name(), b.field().name()).into());
    }
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let embed = |v: &[FieldElem], offset: usize| {
        let mut out = vec![FieldElem::ZERO; d];
        out[offset..offset + v.len()].copy_from_slice(v);
        out
    };
    let mut structure = vec![vec![vec![FieldElem::ZERO; d]; d]; d];
    for i in 0..da {
        for j in 0..da {
            structure[i][j] = embed(&a.structure()[i][j], 0);
        }
    }
    for i in 0..db {
        for j in 0..db {
            structure[da + i][da + j] = embed(&b.structure()[i][j], da);
        }
    }
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(b.labels().iter().map(|l| format!("(0,{l})")))
        .collect();
    let twists = a.twists().iter().chain(b.twists()).copied().collect();
    let mut one = embed(&a.one().coords, 0);
    one[da..].copy_from_slice(&b.one().coords);
    let sum = FiniteAlgebra::new(format!("{} + {}", a.name(), b.name()), a.field().clone(), labels, structure, twists, one)?;
    // Prime coordinates of A come first.
    let (la, lb, ls) = (a.lanes(), b.lanes(), sum.lanes());
    let ja = radical::jacobson_radical(a)?;
    let jb = radical::jacobson_radical(b)?;
    let mut hint = Vec::new();
    for &x in ja.basis() {
        let mut c = la.coords(x);
        c.resize(ls.dim(), 0);
        hint.push(ls.from_coords(&c));
    }
    for &y in jb.basis() {
        let mut c = vec![0; la.dim()];
        c.extend(lb.coords(y));
        hint.push(ls.from_coords(&c));
    }
    Ok(sum.with_radical_hint(hint))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_validity() {
        let f2 = Field::f2();
        let d8 = group_algebra(&f2, &GroupTable::dihedral8()).unwrap();
        assert_eq!((d8.dim(), d8.order()), (8, 256));
        assert!(d8.validate().is_empty());
        let triv = group_algebra(&f2, &GroupTable::trivial()).unwrap();
        assert_eq!(triv.order(), 2);
        assert_eq!(matrix_algebra(&f2, 2).unwrap().order(), 16);
        assert!(matrix_algebra(&f2, 2).unwrap().validate().is_empty());
        assert_eq!(upper_triangular(&f2, 2).unwrap().order(), 8);
        assert_eq!(matrix_algebra(&f2, 1).unwrap().order(), 2);
        assert_eq!(chain_ring(&f2, 1).unwrap().order(), 2);
        assert_eq!(chain_ring(&Field::f4(), 3).unwrap().order(), 64);
        assert_eq!(chain_ring(&f2, 0).unwrap_err(), ConstructError::ZeroSize);
    }

    #[test]
    fn dihedral_witness_products() {
        let r = group_algebra(&Field::f2(), &GroupTable::dihedral8()).unwrap();
        let e = |l: &str| r.pack(&r.element(l).unwrap()).unwrap();
        let a = e("1") ^ e("rs");
        let b = e("r") ^ e("s");
        assert_eq!(r.mul(a, b), 0);
        assert_ne!(r.mul3(a, e("s"), b), 0);
        let one_plus_r = e("1") ^ e("r");
        assert!(!r.is_unit_packed(one_plus_r));
        assert_eq!(r.pow(one_plus_r, 4), 0);
    }

    #[test]
    fn skew_quotients() {
        let f = Field::f4();
        let ex1 = skew_ex1().unwrap();
        assert_eq!(ex1.labels(), ["1", "u", "v", "u^2"]);
        let v = ex1.element("v").unwrap();
        assert_eq!(ex1.elem_mul(&v, &v).unwrap(), ex1.element("u^2").unwrap());
        let alpha_plus_u = ex1.add(&ex1.scalar(f.generator()), &ex1.element("u").unwrap()).unwrap();
        assert!(ex1.is_unit(&alpha_plus_u).unwrap());
        assert_eq!(ex1.elem_order(&alpha_plus_u).unwrap(), 12);

        let ex3 = skew_ex3().unwrap();
        assert_eq!(ex3.labels(), ["1", "u", "v", "uv"]);
        let (u, v) = (ex3.element("u").unwrap(), ex3.element("v").unwrap());
        let vu = ex3.elem_mul(&v, &u).unwrap();
        assert_eq!(vu, ex3.scale(f.generator(), &ex3.element("uv").unwrap()));
    }

    #[test]
    fn direct_sum_of_fields() {
        let f2 = Field::f2();
        let s = direct_sum(&chain_ring(&f2, 1).unwrap(), &chain_ring(&f2, 1).unwrap()).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.is_commutative());
        assert!(s.validate().is_empty());
        let mismatch = direct_sum(&chain_ring(&f2, 1).unwrap(), &chain_ring(&Field::f4(), 1).unwrap());
        assert!(matches!(mismatch, Err(ConstructError::Algebra(AlgebraError::FieldMismatch(..)))));
    }
}
