//! Ring-property checkers with witnesses.
//!
//! Every universally quantified property is linearized: for a fixed `a` the set of
//! `b` satisfying the hypothesis is a subspace (an annihilator, or a joint kernel),
//! so each checker loops over one element and does linear algebra. Loops run in
//! enumeration order and return the first violating element, so witnesses are
//! reproducible regardless of thread count.
//!
//! In a local ring the outer loop may skip elements outside `J`: a unit `a` has
//! trivial annihilators, `aR = Ra = R`, and `aRb = 0` forces `b = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::linalg::{self, PVec, Subspace};
use crate::radical::{self, RadicalError, Structure};

/// Rings with at least `2^13` elements skip the symmetric check unless asked.
pub const SYMMETRIC_SKIP_BITS: u32 = 13;
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Commutative,
    Symmetric,
    Reversible,
    Duo,
    RightDuo,
    LeftDuo,
    Semicommutative,
    Reflexive,
    Abelian,
    #[serde(rename = "ni")]
    NI,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Commutative,
        Property::Symmetric,
        Property::Reversible,
        Property::Duo,
        Property::RightDuo,
        Property::LeftDuo,
        Property::Semicommutative,
        Property::Reflexive,
        Property::Abelian,
        Property::NI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Commutative => "commutative",
            Property::Symmetric => "symmetric",
            Property::Reversible => "reversible",
            Property::Duo => "duo",
            Property::RightDuo => "right_duo",
            Property::LeftDuo => "left_duo",
            Property::Semicommutative => "semicommutative",
            Property::Reflexive => "reflexive",
            Property::Abelian => "abelian",
            Property::NI => "ni",
        }
    }

    pub fn from_name(s: &str) -> Option<Property> {
        let s = s.to_ascii_lowercase().replace('-', "_");
        Property::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Skipped(String),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Skipped(_) => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => f.write_str("true"),
            Verdict::False => f.write_str("false"),
            Verdict::Skipped(why) => write!(f, "skipped ({why})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Annihilator,
    Exhaustive,
    StructureConstants,
}

/// A concrete tuple violating a property. Roles name the tuple entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub property: Property,
    pub roles: Vec<(&'static str, PVec)>,
}

impl Witness {
    pub fn new(property: Property, roles: Vec<(&'static str, PVec)>) -> Witness {
        Witness { property, roles }
    }

    pub fn get(&self, role: &str) -> PVec {
        self.roles.iter().find(|(r, _)| *r == role).map(|&(_, x)| x).unwrap_or(0)
    }

    /// Re-evaluates the tuple in the ring.
    pub fn check(&self, alg: &FiniteAlgebra) -> bool {
        let g = |r| self.get(r);
        let n = alg.prime_dim();
        let l = alg.lanes();
        let nil = |x| alg.pow(x, n as u64) == 0;
        match self.property {
            Property::Commutative => alg.mul(g("a"), g("b")) != alg.mul(g("b"), g("a")),
            Property::Reversible => alg.mul(g("a"), g("b")) == 0 && alg.mul(g("b"), g("a")) != 0,
            Property::Symmetric => alg.mul3(g("a"), g("b"), g("c")) == 0 && alg.mul3(g("b"), g("a"), g("c")) != 0,
            Property::Semicommutative => alg.mul(g("a"), g("b")) == 0 && alg.mul3(g("a"), g("r"), g("b")) != 0,
            Property::Reflexive => {
                (0..n).all(|i| alg.mul3(g("a"), l.unit(i), g("b")) == 0) && alg.mul3(g("b"), g("r"), g("a")) != 0
            }
            Property::RightDuo | Property::Duo if self.roles.iter().any(|(r, _)| *r == "b") && self.side() == Some(Property::RightDuo) => {
                !alg.right_ideal(g("a")).contains(alg.mul(g("b"), g("a")))
            }
            Property::LeftDuo | Property::Duo if self.side() == Some(Property::LeftDuo) => {
                !alg.left_ideal(g("a")).contains(alg.mul(g("a"), g("b")))
            }
            Property::RightDuo | Property::LeftDuo | Property::Duo => false,
            Property::Abelian => {
                let e = g("e");
                alg.mul(e, e) == e && alg.mul(e, g("r")) != alg.mul(g("r"), e)
            }
            Property::NI => {
                let x = g("x");
                if !nil(x) {
                    return false;
                }
                match self.roles.get(1).map(|(r, _)| *r) {
                    Some("y") => nil(g("y")) && !nil(l.add(x, g("y"))),
                    Some("r") => !nil(alg.mul(g("r"), x)),
                    Some("s") => !nil(alg.mul(x, g("s"))),
                    _ => false,
                }
            }
        }
    }

    /// Which one-sided duo property a duo witness refutes.
    pub fn side(&self) -> Option<Property> {
        match self.property {
            Property::RightDuo | Property::LeftDuo => Some(self.property),
            Property::Duo => self.roles.iter().find(|(r, _)| *r == "side").map(|&(_, s)| {
                if s == 0 {
                    Property::RightDuo
                } else {
                    Property::LeftDuo
                }
            }),
            _ => None,
        }
    }

    /// Human-readable statement of the violation.
    pub fn claim(&self, alg: &FiniteAlgebra) -> String {
        let g = |r| self.get(r);
        let s = |x| alg.format(x);
        match self.property {
            Property::Commutative => format!("a*b = {} but b*a = {}", s(alg.mul(g("a"), g("b"))), s(alg.mul(g("b"), g("a")))),
            Property::Reversible => format!("a*b = 0 but b*a = {}", s(alg.mul(g("b"), g("a")))),
            Property::Symmetric => format!("a*b*c = 0 but b*a*c = {}", s(alg.mul3(g("b"), g("a"), g("c")))),
            Property::Semicommutative => format!("a*b = 0 but a*r*b = {}", s(alg.mul3(g("a"), g("r"), g("b")))),
            Property::Reflexive => format!("a*R*b = 0 but b*r*a = {}", s(alg.mul3(g("b"), g("r"), g("a")))),
            Property::RightDuo | Property::LeftDuo | Property::Duo => match self.side() {
                Some(Property::RightDuo) => format!("b*a = {} is not in a*R", s(alg.mul(g("b"), g("a")))),
                _ => format!("a*b = {} is not in R*a", s(alg.mul(g("a"), g("b")))),
            },
            Property::Abelian => format!(
                "e is idempotent but e*r = {} and r*e = {}",
                s(alg.mul(g("e"), g("r"))),
                s(alg.mul(g("r"), g("e")))
            ),
            Property::NI => match self.roles.get(1).map(|(r, _)| *r) {
                Some("y") => "x and y are nilpotent but x+y is not".into(),
                Some("r") => "x is nilpotent but r*x is not".into(),
                _ => "x is nilpotent but x*s is not".into(),
            },
        }
    }

    /// Role/element pairs formatted with the ring's labels, the `side` marker omitted.
    pub fn formatted(&self, alg: &FiniteAlgebra) -> Vec<(&'static str, String)> {
        self.roles.iter().filter(|(r, _)| *r != "side").map(|&(r, x)| (r, alg.format(x))).collect()
    }
}

/// A wall-clock deadline shared by the checkers.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { deadline: None }
    }

    pub fn new(limit: Duration) -> Budget {
        Budget { deadline: Instant::now().checked_add(limit) }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Run the symmetric check on rings with `2^13` or more elements.
    pub long: bool,
    pub budget: Duration,
    /// Restrict loops to `J` when the ring is local.
    pub restrict_local: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { long: false, budget: DEFAULT_BUDGET, restrict_local: true }
    }
}

/// Shared state for the checkers.
pub struct Checker<'a> {
    alg: &'a FiniteAlgebra,
    /// `J` when the ring is local and restriction is enabled.
    scope: Option<Subspace>,
    budget: Budget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl Outcome {
    fn holds() -> Outcome {
        Outcome { verdict: Verdict::True, witness: None }
    }

    fn fails(w: Witness) -> Outcome {
        Outcome { verdict: Verdict::False, witness: Some(w) }
    }

    fn skipped(why: &str) -> Outcome {
        Outcome { verdict: Verdict::Skipped(why.into()), witness: None }
    }
}

enum Scan<T> {
    Clean,
    Found(T),
    Timeout,
}

const TIMEOUT: &str = "time budget exceeded";

impl<'a> Checker<'a> {
    pub fn new(alg: &'a FiniteAlgebra, structure: Option<&Structure>, budget: Budget) -> Checker<'a> {
        let scope = structure.filter(|s| s.local).map(|s| s.radical().clone());
        Checker { alg, scope, budget }
    }

    /// A checker that loops over every element.
    pub fn unrestricted(alg: &'a FiniteAlgebra, budget: Budget) -> Checker<'a> {
        Checker { alg, scope: None, budget }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.alg
    }

    fn in_scope(&self, x: PVec) -> bool {
        self.scope.as_ref().is_none_or(|j| j.contains(x))
    }

    /// First element in enumeration order (within scope) for which `f` yields a value.
    fn scan<T: Send>(&self, f: impl Fn(PVec) -> Option<T> + Sync) -> Scan<T> {
        let l = self.alg.lanes();
        let found = (0..l.size()).into_par_iter().find_map_first(|i| {
            if self.budget.expired() {
                return Some(Err(()));
            }
            let x = l.from_index(i);
            if !self.in_scope(x) {
                return None;
            }
            f(x).map(Ok)
        });
        match found {
            None => Scan::Clean,
            Some(Ok(t)) => Scan::Found(t),
            Some(Err(())) => Scan::Timeout,
        }
    }

    /// First element of `R` in enumeration order satisfying `pred`.
    fn first(&self, pred: impl Fn(PVec) -> bool + Sync) -> PVec {
        let l = self.alg.lanes();
        (0..l.size())
            .into_par_iter()
            .map(|i| l.from_index(i))
            .find_first(|&x| pred(x))
            .expect("a violation was established")
    }

    fn finish(&self, s: Scan<Witness>) -> Outcome {
        match s {
            Scan::Clean => Outcome::holds(),
            Scan::Found(w) => {
                debug_assert!(w.check(self.alg), "witness must reproduce the violation");
                Outcome::fails(w)
            }
            Scan::Timeout => Outcome::skipped(TIMEOUT),
        }
    }

    pub fn commutative(&self) -> Outcome {
        let alg = self.alg;
        let l = alg.lanes();
        let n = l.dim();
        let central = |a: PVec| (0..n).all(|i| alg.mul(a, l.unit(i)) == alg.mul(l.unit(i), a));
        if (0..n).all(|i| central(l.unit(i))) {
            return Outcome::holds();
        }
        let a = self.first(|a| !central(a));
        let b = self.first(|b| alg.mul(a, b) != alg.mul(b, a));
        Outcome::fails(Witness::new(Property::Commutative, vec![("a", a), ("b", b)]))
    }

    /// `ab = 0 => ba = 0`, as `r.ann(a) ⊆ l.ann(a)`.
    pub fn reversible(&self) -> Outcome {
        let alg = self.alg;
        let s = self.scan(|a| {
            let ra = alg.right_annihilator_packed(a);
            if ra.basis().iter().all(|&b| alg.mul(b, a) == 0) {
                return None;
            }
            let b = self.first(|b| alg.mul(a, b) == 0 && alg.mul(b, a) != 0);
            Some(Witness::new(Property::Reversible, vec![("a", a), ("b", b)]))
        });
        self.finish(s)
    }

    /// `ab = 0 => aRb = 0`: `a*e*b = 0` on a basis of `r.ann(a)` for every basis `e`.
    pub fn semicommutative(&self) -> Outcome {
        let alg = self.alg;
        let l = alg.lanes();
        let n = l.dim();
        let s = self.scan(|a| {
            let ra = alg.right_annihilator_packed(a);
            let ok = (0..n).all(|i| {
                let ae = alg.mul(a, l.unit(i));
                ra.basis().iter().all(|&b| alg.mul(ae, b) == 0)
            });
            if ok {
                return None;
            }
            let b = self.first(|b| alg.mul(a, b) == 0 && (0..n).any(|i| alg.mul3(a, l.unit(i), b) != 0));
            let r = self.first(|r| alg.mul3(a, r, b) != 0);
            Some(Witness::new(Property::Semicommutative, vec![("a", a), ("r", r), ("b", b)]))
        });
        self.finish(s)
    }

    /// `{b : aRb = 0}` as a joint kernel over the basis.
    fn right_sandwich_kernel(&self, a: PVec) -> Vec<PVec> {
        let alg = self.alg;
        let l = alg.lanes();
        let mut basis: Vec<PVec> = (0..l.dim()).map(|i| l.unit(i)).collect();
        for i in 0..l.dim() {
            if basis.is_empty() {
                break;
            }
            let ae = alg.mul(a, l.unit(i));
            basis = linalg::kernel_within(l, &basis, |b| alg.mul(ae, b));
        }
        basis
    }

    /// `aRb = 0 => bRa = 0`, as `T_r(a) ⊆ T_l(a)` for each `a`.
    pub fn reflexive(&self) -> Outcome {
        let alg = self.alg;
        let l = alg.lanes();
        let n = l.dim();
        let s = self.scan(|a| {
            let tr = self.right_sandwich_kernel(a);
            let ok = tr.iter().all(|&b| (0..n).all(|i| alg.mul3(b, l.unit(i), a) == 0));
            if ok {
                return None;
            }
            let b = self.first(|b| {
                (0..n).all(|i| alg.mul3(a, l.unit(i), b) == 0) && (0..n).any(|i| alg.mul3(b, l.unit(i), a) != 0)
            });
            let r = self.first(|r| alg.mul3(b, r, a) != 0);
            Some(Witness::new(Property::Reflexive, vec![("a", a), ("b", b), ("r", r)]))
        });
        self.finish(s)
    }

    /// Right duo: `Ra ⊆ aR` for every `a`.
    pub fn right_duo(&self) -> Outcome {
        let alg = self.alg;
        let s = self.scan(|a| {
            let ar = alg.right_ideal(a);
            if alg.left_ideal(a).is_subspace_of(&ar) {
                return None;
            }
            let b = self.first(|b| !ar.contains(alg.mul(b, a)));
            Some(Witness::new(Property::RightDuo, vec![("a", a), ("b", b)]))
        });
        self.finish(s)
    }

    /// Left duo: `aR ⊆ Ra` for every `a`.
    pub fn left_duo(&self) -> Outcome {
        let alg = self.alg;
        let s = self.scan(|a| {
            let ra = alg.left_ideal(a);
            if alg.right_ideal(a).is_subspace_of(&ra) {
                return None;
            }
            let b = self.first(|b| !ra.contains(alg.mul(a, b)));
            Some(Witness::new(Property::LeftDuo, vec![("a", a), ("b", b)]))
        });
        self.finish(s)
    }

    /// Combines the one-sided results.
    pub fn duo(right: &Outcome, left: &Outcome) -> Outcome {
        let tag = |w: &Witness, side: PVec| {
            let mut roles = w.roles.clone();
            roles.push(("side", side));
            Witness::new(Property::Duo, roles)
        };
        match (&right.verdict, &left.verdict) {
            (Verdict::False, _) => Outcome::fails(tag(right.witness.as_ref().expect("witness"), 0)),
            (_, Verdict::False) => Outcome::fails(tag(left.witness.as_ref().expect("witness"), 1)),
            (Verdict::True, Verdict::True) => Outcome::holds(),
            _ => Outcome::skipped(TIMEOUT),
        }
    }

    /// Every idempotent is central; exhaustive over idempotents.
    pub fn abelian(&self) -> Outcome {
        let alg = self.alg;
        let l = alg.lanes();
        let n = l.dim();
        let l2 = l;
        let found = (0..l.size()).into_par_iter().find_map_first(|i| {
            if self.budget.expired() {
                return Some(Err(()));
            }
            let e = l2.from_index(i);
            if alg.mul(e, e) != e || (0..n).all(|k| alg.mul(e, l.unit(k)) == alg.mul(l.unit(k), e)) {
                return None;
            }
            Some(Ok(e))
        });
        match found {
            None => Outcome::holds(),
            Some(Err(())) => Outcome::skipped(TIMEOUT),
            Some(Ok(e)) => {
                let r = self.first(|r| alg.mul(e, r) != alg.mul(r, e));
                Outcome::fails(Witness::new(Property::Abelian, vec![("e", e), ("r", r)]))
            }
        }
    }

    /// The nilpotent elements form an ideal.
    pub fn ni(&self) -> Outcome {
        let alg = self.alg;
        let l = alg.lanes();
        let n = l.dim();
        let nil = |x: PVec| alg.pow(x, n as u64) == 0;
        let nilpotents: Vec<PVec> = (0..l.size()).into_par_iter().map(|i| l.from_index(i)).filter(|&x| nil(x)).collect();
        if self.budget.expired() {
            return Outcome::skipped(TIMEOUT);
        }
        let span = Subspace::span(l, nilpotents.iter().copied());
        if span.size() as usize != nilpotents.len() {
            let (x, y) = nilpotents
                .iter()
                .find_map(|&x| nilpotents.iter().find(|&&y| !nil(l.add(x, y))).map(|&y| (x, y)))
                .expect("nilpotents are not closed under addition");
            return Outcome::fails(Witness::new(Property::NI, vec![("x", x), ("y", y)]));
        }
        let units: Vec<PVec> = (0..n).map(|i| l.unit(i)).collect();
        let left_bad = span.basis().iter().any(|&x| units.iter().any(|&e| !span.contains(alg.mul(e, x))));
        let right_bad = span.basis().iter().any(|&x| units.iter().any(|&e| !span.contains(alg.mul(x, e))));
        if !left_bad && !right_bad {
            return Outcome::holds();
        }
        for &x in &nilpotents {
            if let Some(r) = (0..l.size()).map(|i| l.from_index(i)).find(|&r| !nil(alg.mul(r, x))) {
                return Outcome::fails(Witness::new(Property::NI, vec![("x", x), ("r", r)]));
            }
            if let Some(s) = (0..l.size()).map(|i| l.from_index(i)).find(|&s| !nil(alg.mul(x, s))) {
                return Outcome::fails(Witness::new(Property::NI, vec![("x", x), ("s", s)]));
            }
        }
        unreachable!("a non-ideal span of nilpotents has a non-nilpotent product")
    }

    /// `abc = 0 => bac = 0`.
    ///
    /// Needs the reversibility outcome. A non-reversible ring fails with `c = 1`.
    /// In a reversible ring the cases with `a` or `b` a unit hold automatically
    /// (`a` unit: `bc = 0` and semicommutativity give `bac = 0`; `b` unit: `bca = 0`
    /// gives `ca = 0`, hence `ac = 0`), so only pairs of non-units are scanned,
    /// checking `r.ann(ab) ⊆ r.ann(ba)`.
    pub fn symmetric(&self, reversible: &Outcome) -> Outcome {
        let alg = self.alg;
        match (&reversible.verdict, &reversible.witness) {
            (Verdict::False, Some(w)) => {
                let w = Witness::new(Property::Symmetric, vec![("a", w.get("a")), ("b", w.get("b")), ("c", alg.one_packed())]);
                return Outcome::fails(w);
            }
            (Verdict::True, _) => {}
            _ => return Outcome::skipped("reversibility undecided"),
        }
        let l = alg.lanes();
        let non_units: Vec<PVec> = match &self.scope {
            Some(j) => j.elements().collect::<BTreeSet<_>>().into_iter().map(|x| (l.to_index(x), x)).collect::<BTreeMap<_, _>>().into_values().collect(),
            None => (0..l.size()).map(|i| l.from_index(i)).filter(|&x| !alg.is_unit_packed(x)).collect(),
        };
        let found = non_units.par_iter().find_map_first(|&a| {
            if self.budget.expired() {
                return Some(Err(()));
            }
            for &b in &non_units {
                let (x, y) = (alg.mul(a, b), alg.mul(b, a));
                if x == y {
                    continue;
                }
                let ann = alg.right_annihilator_packed(x);
                if ann.basis().iter().any(|&c| alg.mul(y, c) != 0) {
                    return Some(Ok((a, b)));
                }
            }
            None
        });
        match found {
            None => Outcome::holds(),
            Some(Err(())) => Outcome::skipped(TIMEOUT),
            Some(Ok((a, b))) => {
                let c = self.first(|c| alg.mul3(a, b, c) == 0 && alg.mul3(b, a, c) != 0);
                Outcome::fails(Witness::new(Property::Symmetric, vec![("a", a), ("b", b), ("c", c)]))
            }
        }
    }
}

/// Result of one checker.
#[derive(Clone, Debug)]
pub struct PropertyResult {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub algorithm: Algorithm,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub structure: Structure,
    pub results: BTreeMap<Property, PropertyResult>,
    /// Distinct multiplicative orders of units.
    pub unit_orders: BTreeSet<u64>,
    pub elapsed: Duration,
}

impl PropertyReport {
    pub fn verdict(&self, p: Property) -> &Verdict {
        &self.results[&p].verdict
    }

    pub fn holds(&self, p: Property) -> Option<bool> {
        self.results.get(&p).and_then(|r| r.verdict.as_bool())
    }

    pub fn max_unit_order(&self) -> u64 {
        self.unit_orders.iter().copied().max().unwrap_or(1)
    }

    pub fn lattice_violations(&self) -> Vec<String> {
        let get = |p| self.holds(p);
        lattice_violations(&get, self.structure.local)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropsError {
    #[error(transparent)]
    Radical(#[from] RadicalError),
    #[error("property lattice violated: {}", .0.join("; "))]
    Lattice(Vec<String>),
    #[error("witness for {0} does not reproduce")]
    BadWitness(Property),
}

/// Implications between properties that every finite ring satisfies; skipped
/// verdicts (None) make an implication vacuous.
pub fn lattice_violations(get: &dyn Fn(Property) -> Option<bool>, local: bool) -> Vec<String> {
    use Property::*;
    let mut out = Vec::new();
    let implies = |a: Property, b: Property, out: &mut Vec<String>| {
        if get(a) == Some(true) && get(b) == Some(false) {
            out.push(format!("{a} but not {b}"));
        }
    };
    for (a, b) in [
        (Commutative, Symmetric),
        (Symmetric, Reversible),
        (Reversible, Reflexive),
        (Reversible, Semicommutative),
        (Duo, RightDuo),
        (Duo, LeftDuo),
        (RightDuo, Semicommutative),
        (LeftDuo, Semicommutative),
        (Semicommutative, Abelian),
        (Abelian, NI),
    ] {
        implies(a, b, &mut out);
    }
    if let (Some(rf), Some(sc), Some(rv)) = (get(Reflexive), get(Semicommutative), get(Reversible)) {
        if rf && sc && !rv {
            out.push("reflexive and semicommutative but not reversible".into());
        }
    }
    if let (Some(r), Some(l), Some(d)) = (get(RightDuo), get(LeftDuo), get(Duo)) {
        if r && l && !d {
            out.push("right and left duo but not duo".into());
        }
    }
    if local && get(Abelian) == Some(false) {
        out.push("local but not abelian".into());
    }
    out
}

/// Multiplicative orders of all units.
pub fn unit_order_spectrum(alg: &FiniteAlgebra) -> BTreeSet<u64> {
    let l = alg.lanes();
    (0..l.size())
        .into_par_iter()
        .filter_map(|i| alg.unit_order(l.from_index(i)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Runs all checkers, validates witnesses and the implication lattice.
pub fn property_report(alg: &FiniteAlgebra, opts: &CheckOptions) -> Result<PropertyReport, PropsError> {
    let start = Instant::now();
    let structure = radical::analyze(alg)?;
    let budget = Budget::new(opts.budget);
    let checker = Checker::new(alg, opts.restrict_local.then_some(&structure), budget);
    let mut results = BTreeMap::new();
    let mut run = |p: Property, algorithm: Algorithm, f: &dyn Fn() -> Outcome| -> Outcome {
        let t = Instant::now();
        let o = f();
        results.insert(
            p,
            PropertyResult { verdict: o.verdict.clone(), witness: o.witness.clone(), algorithm, elapsed: t.elapsed() },
        );
        o
    };
    run(Property::Commutative, Algorithm::StructureConstants, &|| checker.commutative());
    let reversible = run(Property::Reversible, Algorithm::Annihilator, &|| checker.reversible());
    run(Property::Semicommutative, Algorithm::Annihilator, &|| checker.semicommutative());
    run(Property::Reflexive, Algorithm::Annihilator, &|| checker.reflexive());
    let right = run(Property::RightDuo, Algorithm::Annihilator, &|| checker.right_duo());
    let left = run(Property::LeftDuo, Algorithm::Annihilator, &|| checker.left_duo());
    run(Property::Duo, Algorithm::Annihilator, &|| Checker::duo(&right, &left));
    run(Property::Abelian, Algorithm::Exhaustive, &|| checker.abelian());
    run(Property::NI, Algorithm::Exhaustive, &|| checker.ni());
    let big = alg.size() >= 1 << SYMMETRIC_SKIP_BITS;
    run(Property::Symmetric, Algorithm::Annihilator, &|| {
        if big && !opts.long {
            Outcome::skipped("ring has at least 2^13 elements; pass --long")
        } else {
            checker.symmetric(&reversible)
        }
    });
    for (p, r) in &results {
        if let Some(w) = &r.witness {
            if !w.check(alg) {
                return Err(PropsError::BadWitness(*p));
            }
        }
    }
    let report = PropertyReport { structure, results, unit_orders: unit_order_spectrum(alg), elapsed: start.elapsed() };
    let violations = report.lattice_violations();
    if !violations.is_empty() {
        return Err(PropsError::Lattice(violations));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{self, GroupTable};
    use crate::gf::Field;

    fn report(alg: &FiniteAlgebra) -> PropertyReport {
        property_report(alg, &CheckOptions::default()).unwrap()
    }

    #[test]
    fn field_has_every_property() {
        let r = report(&constructors::chain_ring(&Field::f4(), 1).unwrap());
        for p in Property::ALL {
            assert_eq!(r.holds(p), Some(true), "{p}");
        }
    }

    #[test]
    fn dihedral_group_algebra() {
        let alg = constructors::group_algebra(&Field::f2(), &GroupTable::dihedral8()).unwrap();
        let r = report(&alg);
        assert_eq!(r.holds(Property::Reflexive), Some(true));
        assert_eq!(r.holds(Property::Semicommutative), Some(false));
        assert_eq!(r.holds(Property::Reversible), Some(false));
        assert_eq!(r.holds(Property::Abelian), Some(true));
        let e = |l: &str| alg.pack(&alg.element(l).unwrap()).unwrap();
        let known = Witness::new(
            Property::Semicommutative,
            vec![("a", e("1") ^ e("rs")), ("r", e("s")), ("b", e("r") ^ e("s"))],
        );
        assert!(known.check(&alg));
    }

    #[test]
    fn matrix_rings() {
        let f2 = Field::f2();
        let m2 = report(&constructors::matrix_algebra(&f2, 2).unwrap());
        assert_eq!(m2.holds(Property::NI), Some(false));
        assert_eq!(m2.holds(Property::Abelian), Some(false));
        let u2 = report(&constructors::upper_triangular(&f2, 2).unwrap());
        assert_eq!(u2.holds(Property::NI), Some(true));
        assert_eq!(u2.holds(Property::Commutative), Some(false));
        assert_eq!(u2.holds(Property::Abelian), Some(false));
    }

    #[test]
    fn witnesses_are_rejected_when_wrong() {
        let alg = constructors::chain_ring(&Field::f2(), 3).unwrap();
        let w = Witness::new(Property::Reversible, vec![("a", 0b010), ("b", 0b010)]);
        assert!(!w.check(&alg));
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(Property::from_name(p.name()), Some(p));
        }
        assert_eq!(Property::from_name("NI"), Some(Property::NI));
        assert_eq!(Property::from_name("right-duo"), Some(Property::RightDuo));
    }
}
