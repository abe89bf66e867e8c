//! Finite associative unital algebras given by structure constants.
//!
//! An algebra has a basis `b_0..b_{d-1}` over `F_q`. Each basis element carries a
//! twist exponent `t_i` with `b_i * c = frob^{t_i}(c) * b_i` for scalars `c`, which
//! covers skew (Ore) quotients where `F_q` is not central. Plain `F_q`-algebras
//! have all twists zero.
//!
//! All ring-theoretic computations run on the restriction of scalars to the prime
//! field: the basis `a^l * b_i` (`a` the field generator) of dimension `d * k` over
//! `F_p`, with elements packed into one word (see [`crate::linalg`]). Multiplication
//! matrices, annihilators and subspaces are therefore `F_p`-linear objects; for
//! prime fields they coincide with the `F_q` ones.

use std::fmt;

use thiserror::Error;

use crate::gf::{Field, FieldElem};
use crate::linalg::{self, Lanes, LinalgError, Matrix, PVec, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("algebras are over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("algebra axioms violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    TooLarge(#[from] LinalgError),
    #[error("algebra must have dimension at least 1")]
    Empty,
}

/// A failed algebra axiom on prime-field basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonAssociative { a: String, b: String, c: String },
    LeftIdentity { b: String },
    RightIdentity { b: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonAssociative { a, b, c } => write!(f, "({a}*{b})*{c} != {a}*({b}*{c})"),
            Violation::LeftIdentity { b } => write!(f, "1*{b} != {b}"),
            Violation::RightIdentity { b } => write!(f, "{b}*1 != {b}"),
        }
    }
}

/// An element given by its coordinates over `F_q` in the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub coords: Vec<FieldElem>,
}

impl RingElement {
    pub fn new(coords: Vec<FieldElem>) -> Self {
        RingElement { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Clone)]
pub struct FiniteAlgebra {
    name: String,
    field: Field,
    labels: Vec<String>,
    structure: Vec<Vec<Vec<FieldElem>>>,
    twists: Vec<u32>,
    one: Vec<FieldElem>,
    lanes: Lanes,
    prod: Vec<PVec>,
    one_packed: PVec,
    radical_hint: Option<Vec<PVec>>,
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("labels", &self.labels)
            .finish()
    }
}

impl FiniteAlgebra {
    /// Builds and validates an algebra.
    ///
    /// `structure[i][j]` holds the coordinates of `b_i * b_j`.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        structure: Vec<Vec<Vec<FieldElem>>>,
        twists: Vec<u32>,
        one: Vec<FieldElem>,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        let alg = Self::from_structure(name, field, labels, structure, twists, one)?;
        let violations = alg.validate();
        if violations.is_empty() {
            Ok(alg)
        } else {
            Err(AlgebraError::Invalid(violations))
        }
    }

    /// Builds an algebra checking only shapes; see [`FiniteAlgebra::validate`].
    pub fn from_structure(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        structure: Vec<Vec<Vec<FieldElem>>>,
        twists: Vec<u32>,
        one: Vec<FieldElem>,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        let d = labels.len();
        if d == 0 {
            return Err(AlgebraError::Empty);
        }
        let check = |got: usize| {
            if got == d {
                Ok(())
            } else {
                Err(AlgebraError::DimensionMismatch { expected: d, got })
            }
        };
        check(structure.len())?;
        check(twists.len())?;
        check(one.len())?;
        for row in &structure {
            check(row.len())?;
            for v in row {
                check(v.len())?;
            }
        }
        let k = field.degree() as usize;
        let lanes = Lanes::new(field.characteristic() as u8, d * k)?;
        let twists: Vec<u32> = twists.into_iter().map(|t| t % k as u32).collect();
        let mut alg = FiniteAlgebra {
            name: name.into(),
            field,
            labels,
            structure,
            twists,
            one,
            lanes,
            prod: Vec::new(),
            one_packed: 0,
            radical_hint: None,
        };
        alg.one_packed = alg.pack_coords(&alg.one);
        alg.prod = alg.build_prime_table();
        Ok(alg)
    }

    fn build_prime_table(&self) -> Vec<PVec> {
        let f = &self.field;
        let k = f.degree() as usize;
        let n = self.lanes.dim();
        let d = self.dim();
        let g = f.generator();
        let gpow: Vec<FieldElem> = (0..k).map(|l| f.pow(g, l as u64)).collect();
        let mut prod = vec![0; n * n];
        for i in 0..d {
            for l in 0..k {
                for j in 0..d {
                    for m in 0..k {
                        let scalar = f.mul(gpow[l], f.frobenius_pow(gpow[m], self.twists[i]));
                        let coords: Vec<FieldElem> = self.structure[i][j].iter().map(|&c| f.mul(scalar, c)).collect();
                        prod[(i * k + l) * n + j * k + m] = self.pack_coords(&coords);
                    }
                }
            }
        }
        prod
    }

    /// Attaches a candidate radical basis; it is verified before use.
    pub fn with_radical_hint(mut self, hint: Vec<PVec>) -> Self {
        self.radical_hint = Some(hint);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn radical_hint(&self) -> Option<&[PVec]> {
        self.radical_hint.as_deref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn twists(&self) -> &[u32] {
        &self.twists
    }

    pub fn structure(&self) -> &[Vec<Vec<FieldElem>>] {
        &self.structure
    }

    /// Number of elements, `q^dim`.
    pub fn order(&self) -> u128 {
        (self.field.size() as u128).pow(self.dim() as u32)
    }

    /// The prime-field coordinate space.
    pub fn lanes(&self) -> Lanes {
        self.lanes
    }

    pub fn prime_dim(&self) -> usize {
        self.lanes.dim()
    }

    /// Labels of the prime-field basis `a^l * b_i`.
    pub fn prime_labels(&self) -> Vec<String> {
        let k = self.field.degree() as usize;
        let mut out = Vec::with_capacity(self.prime_dim());
        for label in &self.labels {
            for l in 0..k {
                out.push(match l {
                    0 => label.clone(),
                    1 if label == "1" => "a".into(),
                    1 => format!("a*{label}"),
                    _ if label == "1" => format!("a^{l}"),
                    _ => format!("a^{l}*{label}"),
                });
            }
        }
        out
    }

    fn pack_coords(&self, coords: &[FieldElem]) -> PVec {
        let k = self.field.degree() as usize;
        let mut out = 0;
        for (i, &c) in coords.iter().enumerate() {
            for (l, digit) in self.field.digits(c).into_iter().enumerate() {
                out = self.lanes.with(out, i * k + l, digit);
            }
        }
        out
    }

    fn check_dim(&self, x: &RingElement) -> Result<(), AlgebraError> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch { expected: self.dim(), got: x.dim() })
        }
    }

    pub fn pack(&self, x: &RingElement) -> Result<PVec, AlgebraError> {
        self.check_dim(x)?;
        Ok(self.pack_coords(&x.coords))
    }

    pub fn unpack(&self, x: PVec) -> RingElement {
        let k = self.field.degree() as usize;
        let digits = self.lanes.coords(x);
        RingElement::new(digits.chunks(k).map(|c| self.field.from_digits(c)).collect())
    }

    pub fn zero(&self) -> RingElement {
        RingElement::new(vec![FieldElem::ZERO; self.dim()])
    }

    pub fn one(&self) -> RingElement {
        RingElement::new(self.one.clone())
    }

    #[inline]
    pub fn one_packed(&self) -> PVec {
        self.one_packed
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        let mut c = vec![FieldElem::ZERO; self.dim()];
        c[i] = FieldElem::ONE;
        RingElement::new(c)
    }

    /// Basis element by label.
    pub fn element(&self, label: &str) -> Option<RingElement> {
        self.labels.iter().position(|l| l == label).map(|i| self.basis_element(i))
    }

    /// Scalar multiple `c * x` (scalars act on the left).
    pub fn scale(&self, c: FieldElem, x: &RingElement) -> RingElement {
        RingElement::new(x.coords.iter().map(|&v| self.field.mul(c, v)).collect())
    }

    pub fn scalar(&self, c: FieldElem) -> RingElement {
        self.scale(c, &self.one())
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(RingElement::new(x.coords.iter().zip(&y.coords).map(|(&a, &b)| self.field.add(a, b)).collect()))
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, AlgebraError> {
        self.check_dim(y)?;
        let neg = RingElement::new(y.coords.iter().map(|&b| self.field.neg(b)).collect());
        self.add(x, &neg)
    }

    /// `x * y`, extending the structure constants twisted-bilinearly.
    pub fn elem_mul(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; self.dim()];
        for (i, &xi) in x.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, &yj) in y.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let s = f.mul(xi, f.frobenius_pow(yj, self.twists[i]));
                for (o, &t) in out.iter_mut().zip(&self.structure[i][j]) {
                    *o = f.add(*o, f.mul(s, t));
                }
            }
        }
        Ok(RingElement::new(out))
    }

    /// Product of packed elements.
    #[inline]
    pub fn mul(&self, x: PVec, y: PVec) -> PVec {
        let n = self.lanes.dim();
        if self.lanes.is_binary() {
            let mut acc = 0;
            let mut xb = x;
            while xb != 0 {
                let i = xb.trailing_zeros() as usize;
                let row = &self.prod[i * n..(i + 1) * n];
                let mut yb = y;
                while yb != 0 {
                    acc ^= row[yb.trailing_zeros() as usize];
                    yb &= yb - 1;
                }
                xb &= xb - 1;
            }
            return acc;
        }
        let l = self.lanes;
        let mut acc = 0;
        for i in 0..n {
            let xi = l.get(x, i);
            if xi == 0 {
                continue;
            }
            for j in 0..n {
                let yj = l.get(y, j);
                if yj != 0 {
                    acc = l.axpy(acc, (xi as u32 * yj as u32 % l.p() as u32) as u8, self.prod[i * n + j]);
                }
            }
        }
        acc
    }

    #[inline]
    pub fn mul3(&self, x: PVec, y: PVec, z: PVec) -> PVec {
        self.mul(self.mul(x, y), z)
    }

    pub fn pow(&self, x: PVec, mut e: u64) -> PVec {
        let mut base = x;
        let mut acc = self.one_packed;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Product of the prime basis elements `e_i * e_j`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> PVec {
        self.prod[i * self.lanes.dim() + j]
    }

    /// Left multiplication `y -> a*y` as a prime-field matrix.
    pub fn lmul(&self, a: PVec) -> Matrix {
        let l = self.lanes;
        Matrix::from_columns(l, (0..l.dim()).map(|j| self.mul(a, l.unit(j))).collect())
    }

    /// Right multiplication `y -> y*a` as a prime-field matrix.
    pub fn rmul(&self, a: PVec) -> Matrix {
        let l = self.lanes;
        Matrix::from_columns(l, (0..l.dim()).map(|j| self.mul(l.unit(j), a)).collect())
    }

    /// Column `j` is the coordinate vector of `a * e_j` over the prime basis.
    pub fn left_mult_matrix(&self, a: &RingElement) -> Result<Matrix, AlgebraError> {
        Ok(self.lmul(self.pack(a)?))
    }

    pub fn right_mult_matrix(&self, a: &RingElement) -> Result<Matrix, AlgebraError> {
        Ok(self.rmul(self.pack(a)?))
    }

    /// In a finite ring a left-invertible element is a unit.
    #[inline]
    pub fn is_unit_packed(&self, a: PVec) -> bool {
        self.lmul(a).is_invertible()
    }

    pub fn is_unit(&self, a: &RingElement) -> Result<bool, AlgebraError> {
        Ok(self.is_unit_packed(self.pack(a)?))
    }

    /// Multiplicative order of a unit (packed).
    pub fn unit_order(&self, a: PVec) -> Option<u64> {
        if !self.is_unit_packed(a) {
            return None;
        }
        let mut acc = a;
        let mut n = 1u64;
        while acc != self.one_packed {
            acc = self.mul(acc, a);
            n += 1;
        }
        Some(n)
    }

    pub fn elem_order(&self, a: &RingElement) -> Result<u64, AlgebraError> {
        self.unit_order(self.pack(a)?).ok_or(AlgebraError::NotAUnit)
    }

    /// `{b : a*b = 0}`.
    pub fn right_annihilator_packed(&self, a: PVec) -> Subspace {
        linalg::kernel(self.lanes, |b| self.mul(a, b))
    }

    /// `{b : b*a = 0}`.
    pub fn left_annihilator_packed(&self, a: PVec) -> Subspace {
        linalg::kernel(self.lanes, |b| self.mul(b, a))
    }

    pub fn right_annihilator(&self, a: &RingElement) -> Result<Subspace, AlgebraError> {
        Ok(self.right_annihilator_packed(self.pack(a)?))
    }

    pub fn left_annihilator(&self, a: &RingElement) -> Result<Subspace, AlgebraError> {
        Ok(self.left_annihilator_packed(self.pack(a)?))
    }

    /// Span of packed elements.
    pub fn span<I: IntoIterator<Item = PVec>>(&self, vectors: I) -> Subspace {
        Subspace::span(self.lanes, vectors)
    }

    pub fn span_elements<'a, I: IntoIterator<Item = &'a RingElement>>(&self, xs: I) -> Result<Subspace, AlgebraError> {
        let packed = xs.into_iter().map(|x| self.pack(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.span(packed))
    }

    /// Span of all products `s*t`; basis products suffice by bilinearity.
    pub fn product_span(&self, s: &Subspace, t: &Subspace) -> Result<Subspace, AlgebraError> {
        for sub in [s, t] {
            if sub.lanes() != self.lanes {
                return Err(AlgebraError::DimensionMismatch { expected: self.prime_dim(), got: sub.lanes().dim() });
            }
        }
        let mut out = Subspace::zero(self.lanes);
        for &x in s.basis() {
            for &y in t.basis() {
                out.insert(self.mul(x, y));
                if out.is_full() {
                    return Ok(out);
                }
            }
        }
        Ok(out)
    }

    /// Left ideal `R*x`.
    pub fn left_ideal(&self, x: PVec) -> Subspace {
        self.rmul(x).image()
    }

    /// Right ideal `x*R`.
    pub fn right_ideal(&self, x: PVec) -> Subspace {
        self.lmul(x).image()
    }

    /// Two-sided ideal `R*x*R`.
    pub fn two_sided_ideal(&self, x: PVec) -> Subspace {
        let n = self.prime_dim();
        let l = self.lanes;
        let left: Vec<PVec> = (0..n).map(|i| self.mul(l.unit(i), x)).collect();
        let mut out = Subspace::zero(l);
        for y in left {
            for j in 0..n {
                out.insert(self.mul(y, l.unit(j)));
            }
        }
        out
    }

    /// Whether `s` is closed under multiplication by the ring on both sides.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let l = self.lanes;
        s.basis().iter().all(|&x| {
            (0..l.dim()).all(|i| s.contains(self.mul(l.unit(i), x)) && s.contains(self.mul(x, l.unit(i))))
        })
    }

    /// Associativity on all prime basis triples and a two-sided identity.
    pub fn validate(&self) -> Vec<Violation> {
        let l = self.lanes;
        let n = l.dim();
        let labels = self.prime_labels();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    if self.mul(ij, l.unit(k)) != self.mul(l.unit(i), self.basis_product(j, k)) {
                        out.push(Violation::NonAssociative {
                            a: labels[i].clone(),
                            b: labels[j].clone(),
                            c: labels[k].clone(),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            if self.mul(self.one_packed, l.unit(i)) != l.unit(i) {
                out.push(Violation::LeftIdentity { b: labels[i].clone() });
            }
            if self.mul(l.unit(i), self.one_packed) != l.unit(i) {
                out.push(Violation::RightIdentity { b: labels[i].clone() });
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.prime_dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// All elements in enumeration order (base-`p` digits of the index, lowest prime
    /// coordinate first).
    pub fn elements(&self) -> impl Iterator<Item = PVec> + '_ {
        self.lanes.all()
    }

    /// Number of elements as a machine integer (saturating).
    pub fn size(&self) -> u64 {
        self.lanes.size()
    }

    /// Renders a packed element with the algebra's labels, e.g. `1+rs`.
    pub fn format(&self, x: PVec) -> String {
        self.format_element(&self.unpack(x))
    }

    pub fn format_element(&self, x: &RingElement) -> String {
        let mut terms = Vec::new();
        for (c, label) in x.coords.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let coef = self.field.format(*c);
            let coef = if coef.contains('+') { format!("({coef})") } else { coef };
            terms.push(match (label.as_str(), *c == FieldElem::ONE) {
                ("1", _) => coef,
                (_, true) => label.clone(),
                _ => format!("{coef}*{label}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(v: &[u8]) -> Vec<FieldElem> {
        v.iter().map(|&c| FieldElem(c)).collect()
    }

    /// F2[u]/(u^3) written out by hand.
    fn truncated_poly() -> FiniteAlgebra {
        let e = |i: usize| {
            let mut v = vec![0u8; 3];
            if i < 3 {
                v[i] = 1;
            }
            f2(&v)
        };
        let structure = (0..3).map(|i| (0..3).map(|j| e(i + j)).collect()).collect();
        FiniteAlgebra::new(
            "F2[u]/(u^3)",
            Field::f2(),
            vec!["1".into(), "u".into(), "u2".into()],
            structure,
            vec![0; 3],
            f2(&[1, 0, 0]),
        )
        .unwrap()
    }

    #[test]
    fn multiplication_matrices() {
        let a = truncated_poly();
        assert_eq!(a.left_mult_matrix(&a.one()).unwrap(), Matrix::identity(a.lanes()));
        assert!(a.left_mult_matrix(&a.zero()).unwrap().is_zero());
        let u = a.left_mult_matrix(&a.element("u").unwrap()).unwrap();
        assert_eq!(u.to_rows(), vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        let u2 = u.compose(&u);
        assert!(!u2.is_zero());
        assert!(u2.compose(&u).is_zero());
    }

    #[test]
    fn annihilators_and_units() {
        let a = truncated_poly();
        assert_eq!(a.right_annihilator(&a.zero()).unwrap().rank(), 3);
        assert!(a.right_annihilator(&a.one()).unwrap().is_zero());
        let u = a.element("u").unwrap();
        assert_eq!(a.right_annihilator(&u).unwrap(), a.span([0b100]));
        assert!(!a.is_unit(&u).unwrap());
        let one_plus_u = a.add(&a.one(), &u).unwrap();
        assert!(a.is_unit(&one_plus_u).unwrap());
        assert_eq!(a.elem_order(&one_plus_u).unwrap(), 4);
        assert_eq!(a.elem_order(&a.one()).unwrap(), 1);
        assert_eq!(a.elem_order(&u), Err(AlgebraError::NotAUnit));
    }

    #[test]
    fn product_span_of_radical_powers() {
        let a = truncated_poly();
        let j = a.span([0b010, 0b100]);
        assert_eq!(a.product_span(&j, &j).unwrap(), a.span([0b100]));
    }

    #[test]
    fn detects_non_associative_table() {
        // Basis 1, x, y with x*x = y, y*x = x, everything else zero: (x*x)*x = x but x*(x*x) = 0.
        let z = f2(&[0, 0, 0]);
        let mut s = vec![vec![z.clone(); 3]; 3];
        for i in 0..3 {
            let mut e = vec![0u8; 3];
            e[i] = 1;
            s[0][i] = f2(&e);
            s[i][0] = f2(&e);
        }
        s[1][1] = f2(&[0, 0, 1]);
        s[2][1] = f2(&[0, 1, 0]);
        let alg = FiniteAlgebra::from_structure(
            "bad",
            Field::f2(),
            vec!["1".into(), "x".into(), "y".into()],
            s,
            vec![0; 3],
            f2(&[1, 0, 0]),
        )
        .unwrap();
        let v = alg.validate();
        assert!(v.contains(&Violation::NonAssociative { a: "x".into(), b: "x".into(), c: "x".into() }));
    }

    #[test]
    fn dimension_mismatch() {
        let a = truncated_poly();
        let bad = RingElement::new(f2(&[1, 0]));
        assert_eq!(a.elem_mul(&bad, &a.one()), Err(AlgebraError::DimensionMismatch { expected: 3, got: 2 }));
    }

    #[test]
    fn formatting_and_enumeration() {
        let a = truncated_poly();
        assert_eq!(a.format(0b011), "1+u");
        assert_eq!(a.format(0), "0");
        assert_eq!(a.elements().count(), 8);
        assert_eq!(a.order(), 8);
    }
}
