use std::path::Path;
use std::time::Duration;

use ringlab::props::{property_report, CheckOptions};
use ringlab::report::RingReport;
use ringlab::search::{self, find_minimal, find_minimal_with_budget, Census, SearchConfig};
use ringlab::{corpus, dsl};

fn fingerprint_of(text: &str) -> String {
    let alg = dsl::parse(text).unwrap().build(Path::new(".")).unwrap();
    let opts = CheckOptions { long: true, ..CheckOptions::default() };
    search::fingerprint(&RingReport::new(&alg, &property_report(&alg, &opts).unwrap()))
}

fn config(text: &str) -> SearchConfig {
    SearchConfig::from_toml(text).unwrap()
}

#[test]
fn bundled_family_minimum_is_256() {
    let cfg = config(search::REFLEXIVE_NONSEMICOMMUTATIVE_CONFIG);
    let res = find_minimal(&cfg).unwrap();
    assert!(res.complete);
    assert_eq!(res.min_order, Some(256));
    assert!(res.hit_orders.keys().all(|&o| o >= 256), "hit below 256: {:?}", res.hit_orders);
    let ex2 = fingerprint_of(corpus::file("ex2").unwrap().text.as_str());
    assert!(res.hits.iter().any(|h| h.fingerprint == ex2));
    let golden: Census = serde_json::from_str(include_str!("golden/reflexive_nonsemicommutative_census.json")).unwrap();
    assert_eq!(res.census, golden);
}

#[test]
fn runs_are_deterministic() {
    let cfg = config(search::REFLEXIVE_NONSEMICOMMUTATIVE_CONFIG);
    let a = find_minimal(&cfg).unwrap();
    let b = find_minimal(&cfg).unwrap();
    assert_eq!(search::hits_jsonl(&a.hits), search::hits_jsonl(&b.hits));
    assert_eq!(a, b);
}

#[test]
fn hits_rebuild_from_their_presentation() {
    for text in [search::REFLEXIVE_NONSEMICOMMUTATIVE_CONFIG, search::NON_NI_CONFIG] {
        for h in find_minimal(&config(text)).unwrap().hits {
            assert_eq!(fingerprint_of(&h.presentation), h.fingerprint);
        }
    }
}

#[test]
fn fixed_relations_give_one_ring() {
    let cfg = config(
        r#"
family = "the 8-dimensional example alone"
generators = 3
max_order = 256
predicate = "abelian & reflexive & !semicommutative"
relations = ["u*v", "v*w", "w*u", "u*w*v + v*u*w", "u*w*v + w*v*u"]
"#,
    );
    let res = find_minimal(&cfg).unwrap();
    assert_eq!(res.census.total(), 1);
    assert_eq!(res.hits.len(), 1);
    assert_eq!(res.hits[0].fingerprint, fingerprint_of(corpus::file("ex2").unwrap().text.as_str()));
}

#[test]
fn dual_numbers_alone() {
    let cfg = config("family = \"F2[u]/(u^2)\"\ngenerators = 1\nsqzero = false\nmax_order = 64\npredicate = \"commutative\"\nrelations = [\"u^2\"]\n");
    let res = find_minimal(&cfg).unwrap();
    assert_eq!(res.census.total(), 1);
    assert_eq!(res.min_order, Some(4));
    assert_eq!(res.hits.len(), 1);
}

#[test]
fn empty_grammar() {
    let cfg = config("family = \"nothing\"\ngenerators = 1\nmonomials = false\nbinomials = false\nmax_order = 1\npredicate = \"true\"\n");
    let res = find_minimal(&cfg).unwrap();
    assert_eq!(res.census.total(), 0);
    assert!(res.hits.is_empty());
}

#[test]
fn smallest_non_ni_ring_has_order_16() {
    let res = find_minimal(&config(search::NON_NI_CONFIG)).unwrap();
    assert_eq!(res.min_order, Some(16));
    assert!(res.hits.iter().all(|h| h.properties["ni"] == "false"));
    assert!(res.hits.iter().any(|h| h.presentation.contains("matrix 2")));
}

#[test]
fn zero_budget_is_partial() {
    let res = find_minimal_with_budget(&config(search::REFLEXIVE_NONSEMICOMMUTATIVE_CONFIG), Duration::ZERO).unwrap();
    assert!(!res.complete);
}
