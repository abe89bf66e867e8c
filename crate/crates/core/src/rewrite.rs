//! Quotients of free (skew) algebras by degree-lex rewriting.
//!
//! A [`Presentation`] lists generators, relations, square-zero markers and
//! coefficient twists. [`complete`] runs a bounded Bergman completion and returns
//! the normal-word basis; [`build_algebra`] turns that into a [`FiniteAlgebra`]
//! and certifies it: the result is associative with identity, satisfies every
//! relation, and kills `g*b*g` for each square-zero generator `g`. A model passing
//! these checks and spanned by words is the presented algebra, so a successful
//! build never depends on the completion having found every overlap.
//!
//! Coefficients always sit on the left of words. A generator with twist `e`
//! satisfies `g*c = frob^e(c)*g`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteAlgebra, RingElement};
use crate::gf::{Field, FieldElem};

pub const DEFAULT_DEGREE_BOUND: usize = 8;

const MAX_RULES: usize = 4000;
const MAX_STEPS: usize = 200_000;
const MAX_PATTERN_WORDS: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("relation of degree {degree} exceeds the degree bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("basis is not finite below degree {bound}; irreducible words of top degree: {}", .words.join(", "))]
    BasisNotFinite { bound: usize, words: Vec<String> },
    #[error("rewriting system is not confluent: {0}")]
    NotConfluent(String),
    #[error("relations collapse the ring (1 = 0)")]
    TrivialRing,
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("too many generators ({0}, at most 255)")]
    TooManyGenerators(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A word in the generators; the empty word is `1`. Ordered degree-lex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &[u8]) -> Monomial {
        let mut w = self.0.clone();
        w.extend_from_slice(other);
        Monomial(w)
    }

    /// `u^2vw` style rendering; multi-character names are joined with `*`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let short = names.iter().all(|n| n.chars().count() == 1);
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            let name = &names[g as usize];
            parts.push(if run == 1 { name.clone() } else { format!("{name}^{run}") });
            i += run;
        }
        parts.join(if short { "" } else { "*" })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A noncommutative polynomial with left coefficients, no zero terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    terms: BTreeMap<Monomial, FieldElem>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: FieldElem, word: Vec<u8>) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(word), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing degree-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, FieldElem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, FieldElem)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn degree(&self) -> usize {
        self.leading().map_or(0, |(m, _)| m.degree())
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn add_term(&mut self, f: &Field, c: FieldElem, m: Monomial) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, f: &Field, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(f, c, m.clone());
        }
        out
    }

    pub fn sub(&self, f: &Field, other: &NCPolynomial) -> NCPolynomial {
        self.add(f, &other.scale(f, f.neg(f.one())))
    }

    /// `c * self`.
    pub fn scale(&self, f: &Field, c: FieldElem) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (m, v) in self.terms() {
            out.add_term(f, f.mul(c, v), m.clone());
        }
        out
    }

    /// DSL syntax: `u*w*v + (a+1)*v*u`.
    pub fn render(&self, f: &Field, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms().rev() {
            let word = m.0.iter().map(|&g| names[g as usize].as_str()).collect::<Vec<_>>().join("*");
            let coef = f.format(c);
            let coef = if coef.contains('+') { format!("({coef})") } else { coef };
            parts.push(match (m.0.is_empty(), c == FieldElem::ONE) {
                (true, _) => coef,
                (false, true) => word,
                (false, false) => format!("{coef}*{word}"),
            });
        }
        parts.join(" + ")
    }
}

/// `g_j * g_i = c * g_i * g_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommRule {
    pub left: u8,
    pub right: u8,
    pub scalar: FieldElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    pub generators: Vec<String>,
    pub relations: Vec<NCPolynomial>,
    pub sqzero: Vec<u8>,
    /// Frobenius exponent per generator.
    pub twists: Vec<u32>,
    pub comm: Vec<CommRule>,
    pub degree_bound: usize,
}

impl Presentation {
    pub fn new(field: Field, generators: Vec<String>) -> Presentation {
        let n = generators.len();
        Presentation {
            field,
            generators,
            relations: Vec::new(),
            sqzero: Vec::new(),
            twists: vec![0; n],
            comm: Vec::new(),
            degree_bound: DEFAULT_DEGREE_BOUND,
        }
    }

    pub fn generator(&self, name: &str) -> Option<u8> {
        self.generators.iter().position(|g| g == name).map(|i| i as u8)
    }

    /// Relations including the ones generated by commutation rules.
    pub fn all_relations(&self) -> Vec<NCPolynomial> {
        let f = &self.field;
        let mut out = self.relations.clone();
        for c in &self.comm {
            let mut p = NCPolynomial::term(f.one(), vec![c.left, c.right]);
            p.add_term(f, f.neg(c.scalar), Monomial(vec![c.right, c.left]));
            out.push(p);
        }
        out
    }

    fn word_twist(&self, w: &[u8]) -> u32 {
        let k = self.field.degree();
        w.iter().map(|&g| self.twists[g as usize]).sum::<u32>() % k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: NCPolynomial,
}

/// A completed rewriting system.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    field: Field,
    names: Vec<String>,
    twists: Vec<u32>,
    sqzero: Vec<bool>,
    bound: usize,
    rules: Vec<Rule>,
}

impl RewriteSystem {
    fn new(p: &Presentation) -> Self {
        let mut sqzero = vec![false; p.generators.len()];
        for &g in &p.sqzero {
            sqzero[g as usize] = true;
        }
        RewriteSystem {
            field: p.field.clone(),
            names: p.generators.clone(),
            twists: p.twists.iter().map(|t| t % p.field.degree()).collect(),
            sqzero,
            bound: p.degree_bound,
            rules: Vec::new(),
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn psi(&self, w: &[u8], c: FieldElem) -> FieldElem {
        let k = self.field.degree();
        let e = w.iter().map(|&g| self.twists[g as usize]).sum::<u32>() % k;
        self.field.frobenius_pow(c, e)
    }

    /// Whether the square-zero pattern kills the word.
    fn killed(&self, w: &[u8]) -> bool {
        let mut seen = [false; 256];
        for &g in w {
            if self.sqzero[g as usize] {
                if seen[g as usize] {
                    return true;
                }
                seen[g as usize] = true;
            }
        }
        false
    }

    fn find_rule(&self, w: &[u8]) -> Option<(usize, usize)> {
        for s in 0..w.len() {
            for (r, rule) in self.rules.iter().enumerate() {
                let l = &rule.lhs.0;
                if s + l.len() <= w.len() && &w[s..s + l.len()] == l.as_slice() {
                    return Some((s, r));
                }
            }
        }
        None
    }

    fn is_irreducible(&self, w: &[u8]) -> bool {
        !self.killed(w) && self.find_rule(w).is_none()
    }

    /// `x * p * y` for words `x`, `y`.
    fn sandwich(&self, x: &[u8], p: &NCPolynomial, y: &[u8]) -> NCPolynomial {
        let f = &self.field;
        let mut out = NCPolynomial::zero();
        for (m, c) in p.terms() {
            let mut w = x.to_vec();
            w.extend_from_slice(&m.0);
            w.extend_from_slice(y);
            out.add_term(f, self.psi(x, c), Monomial(w));
        }
        out
    }

    /// Fully reduces `p` with the rules and the square-zero pattern.
    pub fn reduce(&self, p: &NCPolynomial) -> NCPolynomial {
        let f = &self.field;
        let mut work = p.clone();
        let mut out = NCPolynomial::zero();
        while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c)) {
            work.terms.remove(&m);
            if self.killed(&m.0) {
                continue;
            }
            match self.find_rule(&m.0) {
                None => out.add_term(f, c, m),
                Some((s, r)) => {
                    let rule = &self.rules[r];
                    let x = &m.0[..s];
                    let y = &m.0[s + rule.lhs.degree()..];
                    for (t, rc) in rule.rhs.terms() {
                        let mut w = x.to_vec();
                        w.extend_from_slice(&t.0);
                        w.extend_from_slice(y);
                        let w = Monomial(w);
                        debug_assert!(w < m, "rewrite must decrease degree-lex order");
                        work.add_term(f, f.mul(c, self.psi(x, rc)), w);
                    }
                }
            }
        }
        out
    }

    /// Normal form of a polynomial given in the presentation's generators.
    pub fn normal_form(&self, p: &NCPolynomial) -> Result<NCPolynomial, RewriteError> {
        if p.degree() > self.bound {
            return Err(RewriteError::DegreeOverflow { degree: p.degree(), bound: self.bound });
        }
        Ok(self.reduce(p))
    }

    /// Irreducible words of length at most `max_len`, in degree-lex order,
    /// stopping once `cap` words are found.
    fn irreducible_words(&self, max_len: usize, cap: usize) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        let mut frontier = vec![Vec::<u8>::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.names.len() as u8 {
                    let mut v = w.clone();
                    v.push(g);
                    if self.is_irreducible(&v) {
                        next.push(v);
                    }
                }
            }
            next.sort_by(|a, b| Monomial(a.clone()).cmp(&Monomial(b.clone())));
            out.extend(next.iter().cloned().map(Monomial));
            if out.len() >= cap {
                out.truncate(cap);
                return out;
            }
            frontier = next;
        }
        out
    }

    /// Turns a reduced nonzero polynomial into a monic rule.
    fn orient(&mut self, p: NCPolynomial) -> Result<Rule, RewriteError> {
        let f = self.field.clone();
        let (lm, lc) = p.leading().map(|(m, c)| (m.clone(), c)).expect("nonzero");
        if lm.degree() == 0 {
            return Err(RewriteError::TrivialRing);
        }
        let inv = f.inv(lc).expect("nonzero leading coefficient");
        let monic = p.scale(&f, inv);
        let mut rhs = NCPolynomial::zero();
        for (m, c) in monic.terms() {
            if *m != lm {
                rhs.add_term(&f, f.neg(c), m.clone());
            }
        }
        Ok(Rule { lhs: lm, rhs })
    }
}

fn contains_subword(hay: &[u8], needle: &[u8]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Result of completion: the rewriting system and its normal words.
#[derive(Clone, Debug)]
pub struct Completion {
    pub system: RewriteSystem,
    pub basis: Vec<Monomial>,
}

struct Completer {
    sys: RewriteSystem,
    pending: VecDeque<NCPolynomial>,
    steps: usize,
    seen_pattern: HashSet<(Monomial, NCPolynomial, Vec<u8>, Vec<u8>)>,
}

impl Completer {
    fn push(&mut self, p: NCPolynomial) {
        if !p.is_zero() {
            self.pending.push_back(p);
        }
    }

    fn drain(&mut self) -> Result<(), RewriteError> {
        while let Some(p) = self.pending.pop_front() {
            self.steps += 1;
            if self.steps > MAX_STEPS || self.sys.rules.len() > MAX_RULES {
                return Err(RewriteError::NotConfluent(format!(
                    "completion did not stabilize ({} rules)",
                    self.sys.rules.len()
                )));
            }
            let r = self.sys.reduce(&p);
            if r.is_zero() {
                continue;
            }
            let rule = self.sys.orient(r)?;
            // Rules whose left side the new one divides are re-queued.
            let mut kept = Vec::with_capacity(self.sys.rules.len());
            for old in std::mem::take(&mut self.sys.rules) {
                if contains_subword(&old.lhs.0, &rule.lhs.0) {
                    let mut q = NCPolynomial::term(self.sys.field.one(), old.lhs.0.clone());
                    q = q.sub(&self.sys.field, &old.rhs);
                    self.pending.push_back(q);
                } else {
                    kept.push(old);
                }
            }
            self.sys.rules = kept;
            self.sys.rules.push(rule.clone());
            self.critical_pairs(&rule);
            for i in 0..self.sys.rules.len() {
                let rhs = self.sys.reduce(&self.sys.rules[i].rhs);
                self.sys.rules[i].rhs = rhs;
            }
        }
        Ok(())
    }

    fn critical_pairs(&mut self, new: &Rule) {
        let f = self.sys.field.clone();
        let limit = 2 * self.sys.bound;
        let rules = self.sys.rules.clone();
        for other in &rules {
            for (a, b) in [(new, other), (other, new)] {
                let (la, lb) = (&a.lhs.0, &b.lhs.0);
                for k in 1..la.len().min(lb.len()) {
                    if la[la.len() - k..] != lb[..k] || la.len() + lb.len() - k > limit {
                        continue;
                    }
                    let c = &lb[k..];
                    let x = &la[..la.len() - k];
                    let left = self.sys.sandwich(&[], &a.rhs, c);
                    let right = self.sys.sandwich(x, &b.rhs, &[]);
                    self.push(left.sub(&f, &right));
                }
            }
        }
        // (lhs - rhs) * a = psi_lhs(a) * (lhs - rhs) forces psi_lhs(a) * rhs = rhs * a.
        let g = f.generator();
        for l in 1..f.degree() {
            let a = f.pow(g, l as u64);
            let pa = self.sys.psi(&new.lhs.0, a);
            let mut s = NCPolynomial::zero();
            for (t, r) in new.rhs.terms() {
                let d = f.sub(pa, self.sys.psi(&t.0, a));
                s.add_term(&f, f.mul(r, d), t.clone());
            }
            self.push(s);
        }
    }

    fn pattern_pairs(&mut self) -> bool {
        if !self.sys.sqzero.iter().any(|&s| s) {
            return false;
        }
        let words = self.sys.irreducible_words(self.sys.bound, MAX_PATTERN_WORDS);
        let limit = 2 * self.sys.bound;
        let mut added = false;
        for rule in self.sys.rules.clone() {
            let l = &rule.lhs.0;
            for x in &words {
                for y in &words {
                    if x.degree() + l.len() + y.degree() > limit {
                        continue;
                    }
                    let w = [x.0.as_slice(), l, y.0.as_slice()].concat();
                    if !self.sys.killed(&w) {
                        continue;
                    }
                    if !x.0.is_empty() && self.sys.killed(&w[1..]) {
                        continue;
                    }
                    if !y.0.is_empty() && self.sys.killed(&w[..w.len() - 1]) {
                        continue;
                    }
                    let key = (rule.lhs.clone(), rule.rhs.clone(), x.0.clone(), y.0.clone());
                    if !self.seen_pattern.insert(key) {
                        continue;
                    }
                    let s = self.sys.reduce(&self.sys.sandwich(&x.0, &rule.rhs, &y.0));
                    if !s.is_zero() {
                        self.pending.push_back(s);
                        added = true;
                    }
                }
            }
        }
        added
    }
}

/// Runs bounded completion and returns the rules with the normal-word basis.
pub fn complete(p: &Presentation) -> Result<Completion, RewriteError> {
    if p.generators.is_empty() {
        return Err(RewriteError::NoGenerators);
    }
    if p.generators.len() > 255 {
        return Err(RewriteError::TooManyGenerators(p.generators.len()));
    }
    let relations = p.all_relations();
    for r in &relations {
        if r.degree() > p.degree_bound {
            return Err(RewriteError::DegreeOverflow { degree: r.degree(), bound: p.degree_bound });
        }
    }
    let mut c = Completer {
        sys: RewriteSystem::new(p),
        pending: relations.into_iter().collect(),
        steps: 0,
        seen_pattern: HashSet::new(),
    };
    loop {
        c.drain()?;
        if !c.pattern_pairs() {
            break;
        }
    }
    let bound = p.degree_bound;
    let basis = c.sys.irreducible_words(bound, usize::MAX);
    let top: Vec<String> = basis
        .iter()
        .filter(|m| m.degree() == bound)
        .take(8)
        .map(|m| m.render(&p.generators))
        .collect();
    if !top.is_empty() {
        return Err(RewriteError::BasisNotFinite { bound, words: top });
    }
    Ok(Completion { system: c.sys, basis })
}

/// Builds and certifies the presented algebra.
pub fn build_algebra(name: &str, p: &Presentation) -> Result<FiniteAlgebra, RewriteError> {
    let comp = complete(p)?;
    let f = &p.field;
    let basis = &comp.basis;
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let d = basis.len();
    let coords = |poly: &NCPolynomial| {
        let mut v = vec![FieldElem::ZERO; d];
        for (m, c) in poly.terms() {
            v[index[m]] = c;
        }
        v
    };
    let mut structure = vec![vec![Vec::new(); d]; d];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let prod = comp.system.reduce(&NCPolynomial::term(f.one(), a.concat(&b.0).0));
            structure[i][j] = coords(&prod);
        }
    }
    let twists = basis.iter().map(|m| p.word_twist(&m.0)).collect();
    let labels = basis.iter().map(|m| m.render(&p.generators)).collect();
    let one = coords(&NCPolynomial::term(f.one(), Vec::new()));
    let alg = FiniteAlgebra::from_structure(name, f.clone(), labels, structure, twists, one)?;
    certify(&alg, p, &comp).map_err(RewriteError::NotConfluent)?;
    Ok(alg)
}

fn certify(alg: &FiniteAlgebra, p: &Presentation, comp: &Completion) -> Result<(), String> {
    let violations = alg.validate();
    if let Some(v) = violations.first() {
        return Err(format!("normal words do not form an associative algebra ({v})"));
    }
    let f = &p.field;
    let index: BTreeMap<&Monomial, usize> = comp.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let gens: Vec<RingElement> = (0..p.generators.len() as u8)
        .map(|g| {
            let nf = comp.system.reduce(&NCPolynomial::term(f.one(), vec![g]));
            let mut v = vec![FieldElem::ZERO; comp.basis.len()];
            for (m, c) in nf.terms() {
                v[index[m]] = c;
            }
            RingElement::new(v)
        })
        .collect();
    let eval = |poly: &NCPolynomial| -> Result<RingElement, AlgebraError> {
        let mut acc = alg.zero();
        for (m, c) in poly.terms() {
            let mut t = alg.scalar(c);
            for &g in &m.0 {
                t = alg.elem_mul(&t, &gens[g as usize])?;
            }
            acc = alg.add(&acc, &t)?;
        }
        Ok(acc)
    };
    for r in p.all_relations() {
        let v = eval(&r).map_err(|e| e.to_string())?;
        if v != alg.zero() {
            return Err(format!("relation {} does not hold in the normal-word model", r.render(f, &p.generators)));
        }
    }
    for &g in &p.sqzero {
        let ge = &gens[g as usize];
        for i in 0..alg.dim() {
            let v = alg
                .elem_mul(&alg.elem_mul(ge, &alg.basis_element(i)).map_err(|e| e.to_string())?, ge)
                .map_err(|e| e.to_string())?;
            if v != alg.zero() {
                return Err(format!(
                    "square-zero marker on {} fails on {}",
                    p.generators[g as usize],
                    alg.labels()[i]
                ));
            }
        }
    }
    Ok(())
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<{}>", self.field.name(), self.generators.join(","))?;
        let mut rels: Vec<String> = self
            .sqzero
            .iter()
            .map(|&g| format!("<{}>^2", self.generators[g as usize]))
            .collect();
        rels.extend(self.all_relations().iter().map(|r| r.render(&self.field, &self.generators)));
        if !rels.is_empty() {
            write!(f, "/<{}>", rels.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn word(p: &Presentation, w: &str) -> Vec<u8> {
        w.chars().map(|c| p.generator(&c.to_string()).unwrap()).collect()
    }

    fn mono(p: &Presentation, w: &str) -> NCPolynomial {
        NCPolynomial::term(p.field.one(), word(p, w))
    }

    fn sum(p: &Presentation, ws: &[&str]) -> NCPolynomial {
        let f = p.field.clone();
        ws.iter().fold(NCPolynomial::zero(), |acc, w| {
            if w.is_empty() {
                acc.add(&f, &NCPolynomial::term(f.one(), vec![]))
            } else {
                acc.add(&f, &mono(p, w))
            }
        })
    }

    fn basis_of(p: &Presentation) -> Vec<String> {
        complete(p).unwrap().basis.iter().map(|m| m.render(&p.generators)).collect()
    }

    fn ex2() -> Presentation {
        let mut p = Presentation::new(Field::f2(), names("u v w"));
        p.sqzero = vec![0, 1, 2];
        for r in [&["uv"][..], &["vw"], &["wu"], &["uwv", "vuw"], &["uwv", "wvu"]] {
            let rel = sum(&p, r);
            p.relations.push(rel);
        }
        p
    }

    #[test]
    fn ex2_basis() {
        let p = ex2();
        assert_eq!(basis_of(&p), ["1", "u", "v", "w", "uw", "vu", "wv", "uwv"]);
        let comp = complete(&p).unwrap();
        assert_eq!(comp.system.normal_form(&mono(&p, "vuw")).unwrap(), mono(&p, "uwv"));
        let one = NCPolynomial::term(p.field.one(), vec![]);
        assert_eq!(comp.system.normal_form(&one).unwrap(), one);
    }

    #[test]
    fn single_square_zero_generator() {
        let mut p = Presentation::new(Field::f2(), names("u"));
        p.relations.push(mono(&p, "uu"));
        assert_eq!(basis_of(&p), ["1", "u"]);
    }

    #[test]
    fn dihedral_group_relators() {
        let mut p = Presentation::new(Field::f2(), names("r s"));
        p.relations = vec![sum(&p, &["rrrr", ""]), sum(&p, &["ss", ""]), sum(&p, &["srsr", ""])];
        let comp = complete(&p).unwrap();
        assert_eq!(comp.basis.len(), 8);
        let one = NCPolynomial::term(p.field.one(), vec![]);
        assert_eq!(comp.system.normal_form(&mono(&p, "rrrr")).unwrap(), one);
        assert!(build_algebra("D8", &p).is_ok());
    }

    #[test]
    fn section_three_quotients() {
        let mut a = Presentation::new(Field::f2(), names("u v"));
        a.relations = vec![mono(&a, "uuu"), mono(&a, "vv"), mono(&a, "vu"), sum(&a, &["uu", "uv"])];
        assert_eq!(basis_of(&a), ["1", "u", "v", "u^2"]);

        let mut b = Presentation::new(Field::f2(), names("u v"));
        b.relations = vec![mono(&b, "uuuu"), mono(&b, "vv"), mono(&b, "vu"), sum(&b, &["uuu", "uv"])];
        assert_eq!(basis_of(&b), ["1", "u", "v", "u^2", "uv"]);

        let mut c = Presentation::new(Field::f2(), names("u v"));
        c.relations = vec![mono(&c, "uu"), mono(&c, "vv"), sum(&c, &["uvu", "vuv"])];
        assert_eq!(basis_of(&c), ["1", "u", "v", "uv", "vu", "uvu"]);
    }

    #[test]
    fn free_algebra_is_not_finite() {
        let mut p = Presentation::new(Field::f2(), names("u v"));
        p.relations.push(mono(&p, "uu"));
        p.degree_bound = 4;
        match complete(&p) {
            Err(RewriteError::BasisNotFinite { bound: 4, words }) => assert!(words.contains(&"v^4".to_string())),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn collapsing_relations() {
        let mut p = Presentation::new(Field::f2(), names("u"));
        p.relations = vec![sum(&p, &["u", ""]), mono(&p, "uu")];
        assert_eq!(complete(&p).unwrap_err(), RewriteError::TrivialRing);
    }

    #[test]
    fn degree_overflow() {
        let mut p = Presentation::new(Field::f2(), names("u"));
        p.degree_bound = 3;
        p.relations.push(mono(&p, "uuuu"));
        assert_eq!(complete(&p).unwrap_err(), RewriteError::DegreeOverflow { degree: 4, bound: 3 });
    }

    #[test]
    fn skew_commutation_over_f4() {
        let f = Field::f4();
        let mut p = Presentation::new(f.clone(), names("u v"));
        p.twists = vec![0, 1];
        p.comm.push(CommRule { left: 1, right: 0, scalar: f.generator() });
        p.relations = vec![mono(&p, "uu"), mono(&p, "vv")];
        let alg = build_algebra("ex3", &p).unwrap();
        assert_eq!(alg.labels(), ["1", "u", "v", "uv"]);
        assert_eq!(alg.twists(), [0, 0, 1, 1]);
        assert_eq!(alg.order(), 256);
    }

    #[test]
    fn permuted_generator_order_gives_same_dimension() {
        let p = ex2();
        let mut q = Presentation::new(Field::f2(), names("w v u"));
        q.sqzero = vec![0, 1, 2];
        for r in [&["uv"][..], &["vw"], &["wu"], &["uwv", "vuw"], &["uwv", "wvu"]] {
            let rel = sum(&q, r);
            q.relations.push(rel);
        }
        assert_eq!(complete(&p).unwrap().basis.len(), complete(&q).unwrap().basis.len());
    }
}
