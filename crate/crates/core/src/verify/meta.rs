//! Structural theorems re-checked on concrete rings.
//!
//! Each check states which rings meet its hypotheses and records every ring that
//! violates the conclusion. A check with no applicable ring passes vacuously and
//! says so through [`MetaCheck::applicable`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteAlgebra;
use crate::linalg::{self, PVec, Subspace};
use crate::props::{Property, PropertyReport};

/// A ring together with its property report.
pub struct Analyzed {
    pub alg: FiniteAlgebra,
    pub report: PropertyReport,
}

impl Analyzed {
    fn name(&self) -> &str {
        self.alg.name()
    }

    fn holds(&self, p: Property) -> Option<bool> {
        self.report.holds(p)
    }

    fn local(&self) -> bool {
        self.report.structure.local
    }

    /// Local with residue field `F_p`.
    fn prime_residue(&self) -> bool {
        self.local() && self.report.structure.filtration.residue_prime_dim == 1
    }

    fn dims(&self) -> Vec<usize> {
        self.report.structure.dims(&self.alg)
    }

    /// `J^k = 0`.
    fn radical_power_vanishes(&self, k: usize) -> bool {
        self.report.structure.filtration.nilpotency_index <= k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaCheck {
    pub name: &'static str,
    /// Rings meeting the hypotheses.
    pub applicable: usize,
    /// Rings whose hypotheses could not be evaluated.
    pub skipped: Vec<String>,
    pub failures: Vec<String>,
}

impl MetaCheck {
    fn new(name: &'static str) -> MetaCheck {
        MetaCheck { name, applicable: 0, skipped: Vec::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ring: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.applicable += 1;
        if !ok {
            self.failures.push(format!("{ring}: {}", detail()));
        }
    }
}

/// Reversible exactly when reflexive and semicommutative.
pub fn reversible_iff_reflexive_semicommutative(rings: &[Analyzed]) -> MetaCheck {
    let mut c = MetaCheck::new("reversible iff reflexive and semicommutative");
    for r in rings {
        match (r.holds(Property::Reversible), r.holds(Property::Reflexive), r.holds(Property::Semicommutative)) {
            (Some(rv), Some(rf), Some(sc)) => c.record(r.name(), rv == (rf && sc), || {
                format!("reversible={rv} reflexive={rf} semicommutative={sc}")
            }),
            _ => c.skipped.push(r.name().to_string()),
        }
    }
    c
}

/// No implication between the properties is violated.
pub fn implication_lattice(rings: &[Analyzed]) -> MetaCheck {
    let mut c = MetaCheck::new("implications between properties");
    for r in rings {
        let v = r.report.lattice_violations();
        c.record(r.name(), v.is_empty(), || v.join("; "));
    }
    c
}

/// Chain rings are duo and symmetric.
pub fn chain_rings_duo_symmetric(rings: &[Analyzed]) -> MetaCheck {
    let mut c = MetaCheck::new("chain rings are duo and symmetric");
    for r in rings.iter().filter(|r| r.report.structure.is_chain()) {
        match (r.holds(Property::Duo), r.holds(Property::Symmetric)) {
            (Some(d), Some(s)) => c.record(r.name(), d && s, || format!("duo={d} symmetric={s}")),
            _ => c.skipped.push(r.name().to_string()),
        }
    }
    c
}

/// Filtration hypotheses forcing semicommutativity of a local ring with prime residue field.
pub fn filtration_semicommutativity(rings: &[Analyzed]) -> Vec<MetaCheck> {
    type Hypothesis = fn(&Analyzed, &[usize], bool) -> bool;
    let cases: [(&'static str, Hypothesis); 5] = [
        ("J^3 = 0", |r, _, _| r.radical_power_vanishes(3)),
        ("d1 <= 3 and d2 = 1", |_, dims, _| dims.first().is_some_and(|&d1| d1 <= 3) && dims.get(1) == Some(&1)),
        ("reflexive, d1 = 2 and J^4 = 0", |r, dims, refl| refl && dims.first() == Some(&2) && r.radical_power_vanishes(4)),
        ("reflexive, d2 <= 2 and J^4 = 0", |r, dims, refl| {
            refl && dims.get(1).copied().unwrap_or(0) <= 2 && r.radical_power_vanishes(4)
        }),
        ("reflexive and dims (2,2,1,1)", |_, dims, refl| refl && dims == [2, 2, 1, 1]),
    ];
    cases
        .into_iter()
        .map(|(name, hyp)| {
            let mut c = MetaCheck::new(name);
            for r in rings.iter().filter(|r| r.prime_residue()) {
                let Some(refl) = r.holds(Property::Reflexive) else {
                    c.skipped.push(r.name().to_string());
                    continue;
                };
                if hyp(r, &r.dims(), refl) {
                    let sc = r.holds(Property::Semicommutative);
                    c.record(r.name(), sc == Some(true), || format!("semicommutative={sc:?}, dims {:?}", r.dims()));
                }
            }
            c
        })
        .collect()
}

/// Abelian reflexive rings of order below 256 are reversible.
pub fn small_abelian_reflexive_reversible(rings: &[Analyzed]) -> MetaCheck {
    let mut c = MetaCheck::new("abelian reflexive rings of order < 256 are reversible");
    for r in rings.iter().filter(|r| r.alg.order() < 256) {
        if r.holds(Property::Abelian) == Some(true) && r.holds(Property::Reflexive) == Some(true) {
            let rv = r.holds(Property::Reversible);
            c.record(r.name(), rv == Some(true), || format!("reversible={rv:?}"));
        }
    }
    c
}

fn radical_power_level(r: &Analyzed, x: PVec) -> usize {
    let f = &r.report.structure.filtration;
    (1..f.nilpotency_index).take_while(|&i| f.power(i).contains(x)).last().unwrap_or(0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// In a chain ring the radical level of a product of radical elements does not
/// depend on the order of the factors.
pub fn permuted_products(rings: &[Analyzed], seed: u64, samples: usize) -> MetaCheck {
    let mut c = MetaCheck::new("products of radical elements in chain rings are order independent modulo J^l");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in rings.iter().filter(|r| r.report.structure.is_chain()) {
        let j = r.report.structure.radical();
        if j.is_zero() {
            continue;
        }
        let mut failure = None;
        for _ in 0..samples {
            let n = rng.gen_range(2..=4);
            let xs: Vec<PVec> = (0..n).map(|_| j.element(rng.gen_range(1..j.size()))).collect();
            let product = |order: &[usize]| order.iter().fold(r.alg.one_packed(), |acc, &i| r.alg.mul(acc, xs[i]));
            let base = radical_power_level(r, product(&(0..n).collect::<Vec<_>>()));
            let mut perms = permutations(n);
            perms.shuffle(&mut rng);
            if let Some(p) = perms.iter().find(|p| radical_power_level(r, product(p)) != base) {
                failure = Some(format!("factors {:?} in order {p:?}", xs.iter().map(|&x| r.alg.format(x)).collect::<Vec<_>>()));
                break;
            }
        }
        c.record(r.name(), failure.is_none(), || failure.unwrap_or_default());
    }
    c
}

/// The two-sided ideal generated by `x`, if it equals `target`.
fn generates(alg: &FiniteAlgebra, x: PVec, target: &Subspace) -> bool {
    target.contains(x) && alg.two_sided_ideal(x) == *target
}

/// If `J^n` is principal and `J^{n+1} != 0`, some `u in J \ J^2` has
/// `J^l = <u^l>` for all `l >= n`.
pub fn principal_powers(rings: &[Analyzed]) -> MetaCheck {
    let mut c = MetaCheck::new("a principal radical power is generated by powers of one element");
    for r in rings.iter().filter(|r| r.local()) {
        let f = &r.report.structure.filtration;
        let k = f.nilpotency_index;
        if f.radical.size() > 1 << 13 {
            c.skipped.push(r.name().to_string());
            continue;
        }
        for n in 1..k.saturating_sub(1) {
            let jn = f.power(n);
            if !jn.elements().any(|x| generates(&r.alg, x, &jn)) {
                continue;
            }
            let j2 = f.power(2);
            let found = f.radical.elements().filter(|&u| !j2.contains(u)).any(|u| {
                (n..k).all(|l| generates(&r.alg, r.alg.pow(u, l as u64), &f.power(l)))
            });
            c.record(r.name(), found, || format!("no generator for J^l, l >= {n}"));
        }
    }
    c
}

fn radical_condition(alg: &FiniteAlgebra, j: &Subspace) -> bool {
    j.elements().all(|a| {
        let ann = alg.right_annihilator_packed(a).intersect(j);
        j.basis().iter().all(|&x| ann.basis().iter().all(|&b| alg.mul3(a, x, b) == 0))
    })
}

/// Over a prime residue field, semicommutativity only needs `ab = 0 => aJb = 0` on `J`.
pub fn radical_semicommutativity(rings: &[Analyzed]) -> MetaCheck {
    let mut c = MetaCheck::new("semicommutative iff ab = 0 implies aJb = 0 on J");
    for r in rings.iter().filter(|r| r.prime_residue()) {
        let Some(sc) = r.holds(Property::Semicommutative) else {
            c.skipped.push(r.name().to_string());
            continue;
        };
        let cond = radical_condition(&r.alg, r.report.structure.radical());
        c.record(r.name(), sc == cond, || format!("semicommutative={sc}, radical condition={cond}"));
    }
    c
}

/// Largest radical (in bits) for which all pairs of radical elements are scanned.
pub const CYCLIC_TRIPLE_MAX_BITS: usize = 9;

/// In a local reflexive ring with `J^4 = 0` and prime residue field,
/// `abc = 0`, `bca = 0` and `cab = 0` are equivalent on `J`.
pub fn cyclic_triple_products(rings: &[Analyzed]) -> MetaCheck {
    let mut c = MetaCheck::new("abc = 0 iff bca = 0 iff cab = 0 on J");
    for r in rings.iter().filter(|r| r.prime_residue() && r.radical_power_vanishes(4)) {
        match r.holds(Property::Reflexive) {
            Some(true) => {}
            Some(false) => continue,
            None => {
                c.skipped.push(r.name().to_string());
                continue;
            }
        }
        let j = r.report.structure.radical();
        if j.rank() > CYCLIC_TRIPLE_MAX_BITS {
            c.skipped.push(r.name().to_string());
            continue;
        }
        let (alg, l) = (&r.alg, r.alg.lanes());
        let bad = j.elements().find_map(|a| {
            j.elements().find_map(|b| {
                let ab = alg.mul(a, b);
                let s1 = Subspace::span(l, linalg::kernel_within(l, j.basis(), |x| alg.mul(ab, x)));
                let s2 = Subspace::span(l, linalg::kernel_within(l, j.basis(), |x| alg.mul3(b, x, a)));
                let s3 = Subspace::span(l, linalg::kernel_within(l, j.basis(), |x| alg.mul(x, ab)));
                (s1 != s2 || s2 != s3).then(|| (a, b))
            })
        });
        c.record(r.name(), bad.is_none(), || {
            let (a, b) = bad.unwrap();
            format!("a = {}, b = {}", alg.format(a), alg.format(b))
        });
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors;
    use crate::gf::Field;
    use crate::props::{property_report, CheckOptions};

    fn analyzed(alg: FiniteAlgebra) -> Analyzed {
        let report = property_report(&alg, &CheckOptions::default()).unwrap();
        Analyzed { alg, report }
    }

    #[test]
    fn chain_rings_pass_everything() {
        let rings: Vec<Analyzed> = (1..=4)
            .map(|k| analyzed(constructors::chain_ring(&Field::f2(), k).unwrap()))
            .chain([analyzed(constructors::chain_ring(&Field::f4(), 2).unwrap())])
            .collect();
        assert!(chain_rings_duo_symmetric(&rings).passed());
        assert_eq!(chain_rings_duo_symmetric(&rings).applicable, 5);
        assert!(permuted_products(&rings, 7, 10).passed());
        assert!(principal_powers(&rings).passed());
        assert!(radical_semicommutativity(&rings).passed());
        assert!(cyclic_triple_products(&rings).passed());
        for c in filtration_semicommutativity(&rings) {
            assert!(c.passed(), "{}", c.name);
        }
    }

    #[test]
    fn permutations_are_complete() {
        let mut p = permutations(3);
        p.sort();
        p.dedup();
        assert_eq!(p.len(), 6);
    }
}
