//! Arithmetic in small finite fields `F_p` and `F_{p^k}`.
//!
//! An element of `F_{p^k} = F_p[x]/(m(x))` is stored as the integer whose base-`p`
//! digits are the coefficients of its residue polynomial, constant term first.
//! Every field carries full addition, multiplication, inverse and Frobenius tables,
//! so all downstream arithmetic is a table lookup.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u8 = 13;
/// Largest supported field size (elements must fit in one byte).
pub const MAX_FIELD_SIZE: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("characteristic {0} exceeds the supported maximum of {MAX_CHARACTERISTIC}")]
    CharacteristicTooLarge(u32),
    #[error("field of size {p}^{k} does not fit in one byte")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("modulus must have degree {expected}, got coefficient list of length {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("modulus {0} is reducible over the prime field")]
    ReducibleModulus(String),
    #[error("coefficient {coeff} is not reduced modulo {p}")]
    CoefficientOutOfRange { coeff: u32, p: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{repr} is not an element of a field with {q} elements")]
    NotAnElement { repr: u32, q: usize },
}

/// A field element in canonical integer encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u8);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn repr(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

/// A validated finite field `F_{p^k}` together with its operation tables.
#[derive(Clone)]
pub struct Field {
    p: u8,
    k: u8,
    q: usize,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u8>,
    tables: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Polynomial remainder over `F_p`, coefficients constant term first.
fn poly_rem(mut num: Vec<u32>, den: &[u32], p: u32) -> Vec<u32> {
    let dd = den.len() - 1;
    let lead_inv = inv_mod(den[dd], p);
    while num.len() > dd {
        let top = *num.last().unwrap() % p;
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = num.len() - 1 - dd;
            for (i, &c) in den.iter().enumerate() {
                let v = &mut num[shift + i];
                *v = (*v + p * p - factor * c % p) % p;
            }
        }
        num.pop();
    }
    num
}

fn inv_mod(x: u32, p: u32) -> u32 {
    (1..p).find(|y| x * y % p == 1).expect("nonzero residue mod a prime")
}

fn poly_to_string(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl Field {
    /// Builds `F_{p^k}` from a modulus given constant term first.
    ///
    /// The modulus may be omitted (empty) when `k = 1`. A non-monic modulus is
    /// scaled to be monic.
    pub fn new(p: u32, k: u32, modulus: &[u32]) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > MAX_CHARACTERISTIC as u32 {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        if k == 0 {
            return Err(FieldError::DegreeMismatch { expected: 1, got: 0 });
        }
        let q = (p as usize).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE);
        let q = q.ok_or(FieldError::FieldTooLarge { p, k })?;
        let modulus: Vec<u32> = if k == 1 {
            if !modulus.is_empty() && modulus.len() != 2 {
                return Err(FieldError::DegreeMismatch { expected: 2, got: modulus.len() });
            }
            vec![0, 1]
        } else {
            if modulus.len() != k as usize + 1 {
                return Err(FieldError::DegreeMismatch { expected: k as usize + 1, got: modulus.len() });
            }
            if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
                return Err(FieldError::CoefficientOutOfRange { coeff: c, p });
            }
            let lead = modulus[k as usize];
            if lead == 0 {
                return Err(FieldError::DegreeMismatch { expected: k as usize + 1, got: modulus.len() - 1 });
            }
            let li = inv_mod(lead, p);
            let monic: Vec<u32> = modulus.iter().map(|&c| c * li % p).collect();
            if !Self::irreducible(&monic, p) {
                return Err(FieldError::ReducibleModulus(poly_to_string(&monic)));
            }
            monic
        };
        let tables = Self::build_tables(p, k, q, &modulus);
        Ok(Field {
            p: p as u8,
            k: k as u8,
            q,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            tables: Arc::new(tables),
        })
    }

    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1, &[])
    }

    pub fn f2() -> Field {
        Field::prime(2).expect("F2")
    }

    /// `F_4 = F_2[x]/(x^2 + x + 1)`; the generator `a` satisfies `a^2 = a + 1`.
    pub fn f4() -> Field {
        Field::new(2, 2, &[1, 1, 1]).expect("F4")
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    fn irreducible(monic: &[u32], p: u32) -> bool {
        let deg = monic.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as usize).pow(d as u32);
            for idx in 0..count {
                let mut den = Vec::with_capacity(d + 1);
                let mut rest = idx;
                for _ in 0..d {
                    den.push((rest % p as usize) as u32);
                    rest /= p as usize;
                }
                den.push(1);
                let r = poly_rem(monic.to_vec(), &den, p);
                if r.iter().all(|&c| c % p == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn build_tables(p: u32, k: u32, q: usize, modulus: &[u32]) -> Tables {
        let digits = |x: usize| -> Vec<u32> {
            let mut out = Vec::with_capacity(k as usize);
            let mut rest = x;
            for _ in 0..k {
                out.push((rest % p as usize) as u32);
                rest /= p as usize;
            }
            out
        };
        let encode = |coeffs: &[u32]| -> u8 {
            coeffs.iter().rev().fold(0usize, |acc, &c| acc * p as usize + (c % p) as usize) as u8
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let sum: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = encode(&sum);
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                let rem = if k == 1 { prod } else { poly_rem(prod, modulus, p) };
                mul[x * q + y] = encode(&rem);
            }
        }
        let neg = (0..q)
            .map(|x| (0..q).find(|&y| add[x * q + y] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|x| if x == 0 { 0 } else { (1..q).find(|&y| mul[x * q + y] == 1).unwrap() as u8 })
            .collect::<Vec<u8>>();
        let frob = (0..q)
            .map(|x| {
                let mut acc = 1usize;
                for _ in 0..p {
                    acc = mul[acc * q + x] as usize;
                }
                acc as u8
            })
            .collect();
        Tables { add, mul, neg, inv, frob }
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.k as u32
    }

    pub fn size(&self) -> usize {
        self.q
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> Vec<u32> {
        self.modulus.iter().map(|&c| c as u32).collect()
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// Short name: `F2`, `F4`, or `GF(p,k,modulus)`.
    pub fn name(&self) -> String {
        match (self.p, self.k) {
            (p, 1) => format!("F{p}"),
            (2, 2) => "F4".into(),
            (p, k) => format!("GF({p},{k},{})", poly_to_string(&self.modulus())),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The class of `x` in `F_p[x]/(m)`; for a prime field this is `1`.
    pub fn generator(&self) -> FieldElem {
        if self.k == 1 {
            FieldElem::ONE
        } else {
            FieldElem(self.p)
        }
    }

    pub fn elem(&self, repr: u32) -> Result<FieldElem, FieldError> {
        if (repr as usize) < self.q {
            Ok(FieldElem(repr as u8))
        } else {
            Err(FieldError::NotAnElement { repr, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(|x| FieldElem(x as u8))
    }

    /// Base-`p` digits of `x` (coefficients on `1, a, a^2, ...`).
    pub fn digits(&self, x: FieldElem) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut rest = x.0 as u32;
        for _ in 0..self.k {
            out.push((rest % self.p as u32) as u8);
            rest /= self.p as u32;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u8]) -> FieldElem {
        debug_assert_eq!(digits.len(), self.k as usize);
        FieldElem(digits.iter().rev().fold(0u32, |acc, &d| acc * self.p as u32 + d as u32) as u8)
    }

    #[inline]
    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        FieldElem(self.tables.add[x.0 as usize * self.q + y.0 as usize])
    }

    #[inline]
    pub fn neg(&self, x: FieldElem) -> FieldElem {
        FieldElem(self.tables.neg[x.0 as usize])
    }

    #[inline]
    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        FieldElem(self.tables.mul[x.0 as usize * self.q + y.0 as usize])
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem, FieldError> {
        if x.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(FieldElem(self.tables.inv[x.0 as usize]))
        }
    }

    pub fn div(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElem, mut e: u64) -> FieldElem {
        let mut base = x;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x -> x^p`.
    #[inline]
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        FieldElem(self.tables.frob[x.0 as usize])
    }

    /// `x -> x^(p^e)`; exponents are taken modulo the degree.
    pub fn frobenius_pow(&self, x: FieldElem, e: u32) -> FieldElem {
        (0..e % self.k as u32).fold(x, |acc, _| self.frobenius(acc))
    }

    /// Least `e` with `generator()^e = x`, if any.
    pub fn log_generator(&self, x: FieldElem) -> Option<u32> {
        let g = self.generator();
        let mut acc = FieldElem::ONE;
        for e in 0..self.q as u32 {
            if acc == x {
                return Some(e);
            }
            acc = self.mul(acc, g);
        }
        None
    }

    /// Human-readable polynomial in the generator `a`, e.g. `a+1`.
    pub fn format(&self, x: FieldElem) -> String {
        if self.k == 1 {
            return x.0.to_string();
        }
        let d = self.digits(x);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}a"),
                _ => format!("{coef}a^{i}"),
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

    #[test]
    fn prime_field_f2() {
        let f = Field::f2();
        assert_eq!(f.size(), 2);
        assert_eq!(f.add(FieldElem::ONE, FieldElem::ONE), FieldElem::ZERO);
        assert_eq!(f.name(), "F2");
    }

    #[test]
    fn f4_generator_squares_to_successor() {
        let f = Field::f4();
        let a = f.generator();
        let a_plus_1 = f.add(a, FieldElem::ONE);
        assert_eq!(f.mul(a, a), a_plus_1);
        assert_eq!(f.inv(a).unwrap(), a_plus_1);
        assert_eq!(f.frobenius(a), a_plus_1);
        assert_eq!(f.frobenius(FieldElem::ONE), FieldElem::ONE);
    }

    #[test]
    fn only_irreducible_quadratic_over_f2() {
        // Exhaustive: of the four monic quadratics only x^2+x+1 has no root.
        let irreducible: Vec<[u32; 3]> = (0..4)
            .map(|i| [i & 1, i >> 1, 1])
            .filter(|m| (0..2).all(|x| (m[0] + m[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        for i in 0..4u32 {
            let m = [i & 1, i >> 1, 1];
            assert_eq!(Field::new(2, 2, &m).is_ok(), m == [1, 1, 1]);
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(2, 2, &[1, 0, 1]), Err(FieldError::ReducibleModulus("x^2+1".into())));
        assert_eq!(Field::prime(4), Err(FieldError::NotPrime(4)));
        assert_eq!(Field::prime(17), Err(FieldError::CharacteristicTooLarge(17)));
        assert!(matches!(Field::new(2, 2, &[1, 1]), Err(FieldError::DegreeMismatch { .. })));
        assert!(matches!(Field::new(3, 6, &[]), Err(FieldError::FieldTooLarge { .. })));
        assert_eq!(Field::f2().inv(FieldElem::ZERO), Err(FieldError::DivisionByZero));
    }

    fn sample_fields() -> Vec<Field> {
        vec![
            Field::f2(),
            Field::f4(),
            Field::prime(3).unwrap(),
            Field::prime(13).unwrap(),
            Field::new(3, 2, &[1, 0, 1]).unwrap(),   // x^2 + 1
            Field::new(2, 3, &[1, 1, 0, 1]).unwrap(), // x^3 + x + 1
            Field::new(2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]).unwrap(),
        ]
    }

    #[test]
    fn frobenius_is_an_automorphism_of_order_k() {
        for f in sample_fields() {
            for x in f.elements() {
                assert_eq!(f.frobenius(x), f.pow(x, f.characteristic() as u64));
                assert_eq!(f.frobenius_pow(x, f.degree()), x);
                for y in f.elements() {
                    assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
                    assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
                }
            }
            for x in (0..f.characteristic()).map(|i| f.from_int(i as i64)) {
                assert_eq!(f.frobenius(x), x);
            }
        }
    }

    #[test]
    fn inverses_and_field_axioms() {
        for f in sample_fields() {
            for x in f.elements().filter(|x| !x.is_zero()) {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElem::ONE);
            }
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), FieldElem::ZERO);
                assert_eq!(f.from_digits(&f.digits(x)), x);
            }
        }
    }

    #[test]
    fn formatting() {
        let f = Field::f4();
        assert_eq!(f.format(FieldElem(3)), "a+1");
        assert_eq!(f.format(f.generator()), "a");
        assert_eq!(f.log_generator(FieldElem(3)), Some(2));
        assert_eq!(Field::new(3, 2, &[1, 0, 1]).unwrap().name(), "GF(3,2,x^2+1)");
    }
}
