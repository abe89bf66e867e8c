//! Bounded enumeration of presented `F2`-algebras.
//!
//! A family is `F2<g_1..g_n>` where every generator spans a square-zero ideal (`(g)^2 = 0`),
//! so every word that repeats a letter vanishes and the algebra is graded with
//! nothing above degree `n`. Relations come from a grammar: killed generators,
//! degree-2 monomials, and up to `max_cubic_relations` degree-3 monomials or
//! binomials. Relation sets spanning the same ideal are enumerated once. An
//! explicit `relations` list replaces the grammar by a single presentation.
//!
//! Claims are always about the declared family; the family description is
//! copied into every hit and summary.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::constructors::ConstructError;
use crate::dsl::{self, BuildError};
use crate::props::{self, Budget, Checker, CheckOptions, Outcome, Property};
use crate::radical;
use crate::report::RingReport;
use crate::rewrite::RewriteError;

const NAMES: [&str; 3] = ["u", "v", "w"];

fn default_true() -> bool {
    true
}

fn default_cubic() -> usize {
    3
}

fn default_cap() -> usize {
    1000
}

fn default_budget() -> u64 {
    1800
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    /// Free-text description of the family, logged with every result.
    pub family: String,
    pub generators: usize,
    #[serde(default = "default_true")]
    pub sqzero: bool,
    pub max_order: u64,
    /// Conjunction such as `abelian & reflexive & !semicommutative`; `true` and `false` are constants.
    pub predicate: String,
    #[serde(default = "default_true")]
    pub monomials: bool,
    #[serde(default = "default_true")]
    pub binomials: bool,
    #[serde(default = "default_cubic")]
    pub max_cubic_relations: usize,
    /// A fixed relation list in DSL syntax; disables the grammar.
    #[serde(default)]
    pub relations: Option<Vec<String>>,
    /// Extra constructor lines over `F2` (for example `matrix 2`) added to the stream.
    #[serde(default)]
    pub seeds: Vec<String>,
    #[serde(default = "default_cap")]
    pub result_cap: usize,
    #[serde(default = "default_budget")]
    pub time_budget_secs: u64,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search config: {0}")]
    Config(String),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
    #[error("presentation {index}: {source}")]
    Build { index: usize, source: BuildError },
    #[error("presentation {index}: predicted dimension {predicted}, built {built}")]
    Inconsistent { index: usize, predicted: usize, built: usize },
}

/// Which conjunct a predicate term asserts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Const(bool),
    All(Vec<(Property, bool)>),
}

impl Predicate {
    pub fn parse(s: &str) -> Result<Predicate, SearchError> {
        let s = s.trim();
        match s {
            "true" => return Ok(Predicate::Const(true)),
            "false" => return Ok(Predicate::Const(false)),
            _ => {}
        }
        let mut terms = Vec::new();
        for t in s.split(['&', ',']).map(str::trim) {
            let (neg, name) = match t.strip_prefix('!').or_else(|| t.strip_prefix("not ")) {
                Some(rest) => (true, rest.trim()),
                None => (false, t),
            };
            let p = Property::from_name(name)
                .ok_or_else(|| SearchError::Config(format!("unknown property `{name}` in predicate")))?;
            terms.push((p, !neg));
        }
        Ok(Predicate::All(terms))
    }

    pub fn properties(&self) -> Vec<Property> {
        match self {
            Predicate::Const(_) => Vec::new(),
            Predicate::All(t) => t.iter().map(|&(p, _)| p).collect(),
        }
    }
}

impl SearchConfig {
    pub fn from_toml(text: &str) -> Result<SearchConfig, SearchError> {
        let cfg: SearchConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<SearchConfig, SearchError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SearchError::Config(format!("cannot read {}: {e}", path.display())))?;
        SearchConfig::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: &str| Err(SearchError::Config(m.into()));
        if !(1..=3).contains(&self.generators) {
            return bad("generators must be 1, 2 or 3");
        }
        if self.max_order > 1 << 10 {
            return bad("max_order is at most 1024");
        }
        if self.relations.is_none() && !self.sqzero {
            return bad("the relation grammar needs square-zero generators");
        }
        Predicate::parse(&self.predicate)?;
        Ok(())
    }

    pub fn predicate(&self) -> Predicate {
        Predicate::parse(&self.predicate).expect("validated")
    }

    fn header(&self) -> String {
        let gens = NAMES[..self.generators].join(" ");
        let sq = if self.sqzero { format!("\n  sqzero {gens}") } else { String::new() };
        format!("  field F2\n  gens {gens}{sq}")
    }
}

/// One presentation in the family, as DSL text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub index: usize,
    pub text: String,
    /// Dimension read off the grammar, when known before building.
    pub predicted_dim: Option<usize>,
}

impl Candidate {
    pub fn build(&self) -> Result<FiniteAlgebra, BuildError> {
        dsl::parse(&self.text)?.build(Path::new("."))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    /// Rings built, by order.
    pub orders: BTreeMap<u64, usize>,
    /// Relation sets skipped because they span an ideal already enumerated.
    pub duplicates: usize,
    /// Presentations whose predicted order exceeds the bound.
    pub out_of_range: usize,
    /// Presentations whose completion failed.
    pub failed: usize,
}

impl Census {
    pub fn total(&self) -> usize {
        self.orders.values().sum()
    }
}

fn ring_text(name: &str, body: &str) -> String {
    format!("ring \"{name}\" {{\n{body}\n}}\n")
}

fn word(w: &[usize]) -> String {
    w.iter().map(|&g| NAMES[g]).collect::<Vec<_>>().join("*")
}

/// Row-reduces `vecs` (bitmasks over the degree-3 words) to a canonical basis.
fn canonical_span(vecs: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vecs {
        let mut x = v;
        for &b in &basis {
            let top = 63 - b.leading_zeros();
            if x >> top & 1 == 1 {
                x ^= b;
            }
        }
        if x != 0 {
            let top = 63 - x.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> top & 1 == 1 {
                    *b ^= x;
                }
            }
            basis.push(x);
        }
    }
    basis.sort_unstable();
    basis
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The deterministic presentation stream of a family.
pub fn enumerate_family(cfg: &SearchConfig) -> (Vec<Candidate>, Census) {
    let mut census = Census::default();
    let mut out = Vec::new();
    let header = cfg.header();
    let push = |body: String, dim: Option<usize>, out: &mut Vec<Candidate>| {
        let index = out.len();
        out.push(Candidate { index, text: ring_text(&format!("hit{index}"), &body), predicted_dim: dim });
    };
    if let Some(rels) = &cfg.relations {
        let rel = if rels.is_empty() { String::new() } else { format!("\n  rel {}", rels.join(", ")) };
        push(format!("{header}{rel}"), None, &mut out);
    } else {
        let g = cfg.generators;
        let limit = (cfg.max_order.max(1) as f64).log2().floor() as usize;
        for kill in 0..1u32 << g {
            let alive: Vec<usize> = (0..g).filter(|&i| kill >> i & 1 == 0).collect();
            let words2: Vec<[usize; 2]> =
                alive.iter().flat_map(|&x| alive.iter().filter(move |&&y| y != x).map(move |&y| [x, y])).collect();
            for s in 0..1u32 << words2.len() {
                let killed2: Vec<[usize; 2]> = (0..words2.len()).filter(|&i| s >> i & 1 == 1).map(|i| words2[i]).collect();
                let zero2 = |a: usize, b: usize| killed2.contains(&[a, b]);
                let t: Vec<[usize; 3]> = words2
                    .iter()
                    .flat_map(|&[x, y]| alive.iter().filter(move |&&z| z != x && z != y).map(move |&z| [x, y, z]))
                    .filter(|&[x, y, z]| !zero2(x, y) && !zero2(y, z))
                    .collect();
                let mut grammar: Vec<(u64, String)> = Vec::new();
                if cfg.monomials {
                    grammar.extend(t.iter().enumerate().map(|(i, w)| (1u64 << i, word(w))));
                }
                if cfg.binomials {
                    for i in 0..t.len() {
                        for j in i + 1..t.len() {
                            grammar.push((1 << i | 1 << j, format!("{} + {}", word(&t[i]), word(&t[j]))));
                        }
                    }
                }
                let base_dim = 1 + alive.len() + words2.len() - killed2.len() + t.len();
                let mut seen: HashSet<Vec<u64>> = HashSet::new();
                for k in 0..=cfg.max_cubic_relations.min(grammar.len()) {
                    for combo in combinations(grammar.len(), k) {
                        let span = canonical_span(&combo.iter().map(|&i| grammar[i].0).collect::<Vec<_>>());
                        let dim = base_dim - span.len();
                        if !seen.insert(span) {
                            census.duplicates += 1;
                            continue;
                        }
                        if dim > limit {
                            census.out_of_range += 1;
                            continue;
                        }
                        let mut rels: Vec<String> = (0..g).filter(|&i| kill >> i & 1 == 1).map(|i| NAMES[i].to_string()).collect();
                        rels.extend(killed2.iter().map(|w| word(w)));
                        rels.extend(combo.iter().map(|&i| grammar[i].1.clone()));
                        let rel = if rels.is_empty() { String::new() } else { format!("\n  rel {}", rels.join(", ")) };
                        push(format!("{header}{rel}"), Some(dim), &mut out);
                    }
                }
            }
        }
    }
    for seed in &cfg.seeds {
        push(format!("  field F2\n  {seed}"), None, &mut out);
    }
    (out, census)
}

/// Evaluates only the properties a predicate mentions.
fn evaluate(alg: &FiniteAlgebra, pred: &Predicate, budget: Budget) -> Option<bool> {
    let terms = match pred {
        Predicate::Const(b) => return Some(*b),
        Predicate::All(t) => t,
    };
    let structure = radical::analyze(alg).ok()?;
    let checker = Checker::new(alg, Some(&structure), budget);
    let mut cache: BTreeMap<Property, Outcome> = BTreeMap::new();
    for &(p, want) in terms {
        let got = outcome(&checker, p, &mut cache).verdict.as_bool()?;
        if got != want {
            return Some(false);
        }
    }
    Some(true)
}

fn outcome(c: &Checker, p: Property, cache: &mut BTreeMap<Property, Outcome>) -> Outcome {
    if let Some(o) = cache.get(&p) {
        return o.clone();
    }
    let o = match p {
        Property::Commutative => c.commutative(),
        Property::Reversible => c.reversible(),
        Property::Semicommutative => c.semicommutative(),
        Property::Reflexive => c.reflexive(),
        Property::RightDuo => c.right_duo(),
        Property::LeftDuo => c.left_duo(),
        Property::Duo => {
            let r = outcome(c, Property::RightDuo, cache);
            let l = outcome(c, Property::LeftDuo, cache);
            Checker::duo(&r, &l)
        }
        Property::Abelian => c.abelian(),
        Property::NI => c.ni(),
        Property::Symmetric => {
            let r = outcome(c, Property::Reversible, cache);
            c.symmetric(&r)
        }
    };
    cache.insert(p, o.clone());
    o
}

/// A ring satisfying the predicate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hit {
    pub family: String,
    pub presentation: String,
    pub order: u64,
    pub properties: BTreeMap<String, String>,
    pub fingerprint: String,
    /// Further hits with the same fingerprint folded into this one.
    pub same_fingerprint: usize,
}

/// `(order, filtration dims, property vector, unit-order spectrum)`.
pub fn fingerprint(r: &RingReport) -> String {
    let props: Vec<String> = r.properties.iter().map(|(k, v)| format!("{k}={}", v.verdict)).collect();
    format!(
        "order={};dims={:?};{};units={:?}",
        r.order,
        r.filtration_dims,
        props.join(","),
        r.unit_orders
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub family: String,
    pub predicate: String,
    /// Smallest order with a hit.
    pub min_order: Option<u64>,
    /// Hits at the smallest order, one per fingerprint.
    pub hits: Vec<Hit>,
    /// Orders of all hits found, with multiplicity, before restricting to the minimum.
    pub hit_orders: BTreeMap<u64, usize>,
    pub census: Census,
    /// False when the time budget ran out.
    pub complete: bool,
}

/// Smallest order in the family satisfying the predicate, with all hits at that order.
pub fn find_minimal(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    find_minimal_with_budget(cfg, Duration::from_secs(cfg.time_budget_secs))
}

enum Eval {
    Built(Box<FiniteAlgebra>, bool),
    Failed,
    OutOfTime,
}

pub fn find_minimal_with_budget(cfg: &SearchConfig, limit: Duration) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let pred = cfg.predicate();
    let (cands, mut census) = enumerate_family(cfg);
    let budget = Budget::new(limit);
    let evaluated: Vec<Result<Eval, SearchError>> = cands
        .par_iter()
        .map(|c| {
            if budget.expired() {
                return Ok(Eval::OutOfTime);
            }
            let alg = match c.build() {
                Ok(a) => a,
                Err(BuildError::Construct {
                    source:
                        ConstructError::Rewrite(RewriteError::BasisNotFinite { .. } | RewriteError::DegreeOverflow { .. }),
                    ..
                }) => return Ok(Eval::Failed),
                Err(source) => return Err(SearchError::Build { index: c.index, source }),
            };
            if let Some(d) = c.predicted_dim {
                if d != alg.dim() {
                    return Err(SearchError::Inconsistent { index: c.index, predicted: d, built: alg.dim() });
                }
            }
            match evaluate(&alg, &pred, budget) {
                Some(ok) => Ok(Eval::Built(Box::new(alg), ok)),
                None if budget.expired() => Ok(Eval::OutOfTime),
                None => Ok(Eval::Built(Box::new(alg), false)),
            }
        })
        .collect();
    let mut complete = true;
    let mut matching: Vec<(usize, FiniteAlgebra)> = Vec::new();
    for (i, r) in evaluated.into_iter().enumerate() {
        match r? {
            Eval::OutOfTime => complete = false,
            Eval::Failed => census.failed += 1,
            Eval::Built(alg, ok) => {
                *census.orders.entry(alg.size()).or_default() += 1;
                if ok {
                    matching.push((i, *alg));
                }
            }
        }
    }
    let mut hit_orders: BTreeMap<u64, usize> = BTreeMap::new();
    for (_, a) in &matching {
        *hit_orders.entry(a.size()).or_default() += 1;
    }
    let min_order = hit_orders.keys().next().copied();
    let mut hits: Vec<Hit> = Vec::new();
    let opts = CheckOptions { long: true, ..CheckOptions::default() };
    for (i, alg) in matching.into_iter().filter(|(_, a)| Some(a.size()) == min_order) {
        let report = props::property_report(&alg, &opts).map_err(|e| SearchError::Config(e.to_string()))?;
        let r = RingReport::new(&alg, &report);
        let fp = fingerprint(&r);
        if let Some(h) = hits.iter_mut().find(|h| h.fingerprint == fp) {
            h.same_fingerprint += 1;
            continue;
        }
        if hits.len() >= cfg.result_cap {
            break;
        }
        hits.push(Hit {
            family: cfg.family.clone(),
            presentation: cands[i].text.clone(),
            order: alg.size(),
            properties: r.properties.iter().map(|(k, v)| (k.clone(), v.verdict.clone())).collect(),
            fingerprint: fp,
            same_fingerprint: 0,
        });
    }
    Ok(SearchResult {
        family: cfg.family.clone(),
        predicate: cfg.predicate.clone(),
        min_order,
        hits,
        hit_orders,
        census,
        complete,
    })
}

/// One JSON object per line.
pub fn hits_jsonl(hits: &[Hit]) -> String {
    hits.iter().map(|h| serde_json::to_string(h).expect("serializable") + "\n").collect()
}

/// The bundled family used to corroborate the order-256 minimality claim.
pub const REFLEXIVE_NONSEMICOMMUTATIVE_CONFIG: &str = include_str!("../search/reflexive_nonsemicommutative.search");
/// The bundled non-NI probe, seeded with small matrix algebras.
pub const NON_NI_CONFIG: &str = include_str!("../search/non_ni.search");

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> SearchConfig {
        SearchConfig::from_toml(text).unwrap()
    }

    #[test]
    fn explicit_single_presentation() {
        let c = cfg("family = \"u^2\"\ngenerators = 1\nsqzero = false\nmax_order = 64\npredicate = \"true\"\nrelations = [\"u^2\"]\n");
        let r = find_minimal(&c).unwrap();
        assert_eq!(r.census.orders, BTreeMap::from([(4, 1)]));
        assert_eq!(r.min_order, Some(4));
    }

    #[test]
    fn constant_false_has_no_hits() {
        let c = cfg("family = \"two\"\ngenerators = 2\nmax_order = 64\npredicate = \"false\"\n");
        let r = find_minimal(&c).unwrap();
        assert!(r.hits.is_empty());
        assert_eq!(r.min_order, None);
        assert!(r.census.total() > 0);
    }

    #[test]
    fn config_errors() {
        assert!(SearchConfig::from_toml("family = \"x\"\ngenerators = 4\nmax_order = 8\npredicate = \"true\"").is_err());
        assert!(SearchConfig::from_toml("family = \"x\"\ngenerators = 2\nmax_order = 8\npredicate = \"bogus\"").is_err());
        assert!(SearchConfig::from_toml("family = \"x\"\ngenerators = 2\nmax_order = 8\npredicate = \"true\"\nextra = 1").is_err());
    }

    #[test]
    fn canonical_span_identifies_equal_spans() {
        assert_eq!(canonical_span(&[0b011, 0b110]), canonical_span(&[0b101, 0b011]));
        assert_ne!(canonical_span(&[0b011]), canonical_span(&[0b101]));
    }
}
