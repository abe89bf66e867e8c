use proptest::prelude::*;
use ringlab::corpus;
use ringlab::dsl;
use ringlab::props::{property_report, CheckOptions, Property};
use ringlab::verify::oracle::{self, Table};
use std::path::Path;

fn compare(text: &str, name: &str) {
    let alg = dsl::parse(text).unwrap().build(Path::new(".")).unwrap();
    let Some(t) = Table::new(&alg) else { return };
    let truth = oracle::verdicts(&t);
    for restrict_local in [true, false] {
        let opts = CheckOptions { long: true, restrict_local, ..CheckOptions::default() };
        let r = property_report(&alg, &opts).unwrap();
        for p in Property::ALL {
            let o = &truth[&p];
            assert_eq!(r.holds(p), Some(o.holds), "{name} {p} restricted={restrict_local}");
            let Some(w) = r.results[&p].witness.as_ref() else { continue };
            assert!(w.check(&alg), "{name} {p}");
            // The symmetric scan starts from the reversible witness or from non-units only.
            if !restrict_local && !o.witness.is_empty() && p != Property::Symmetric {
                let mine: Vec<u64> = w.roles.iter().map(|&(_, x)| x).collect();
                assert_eq!(mine, o.witness, "{name} {p}");
            }
        }
    }
}

#[test]
fn corpus_agrees_with_brute_force() {
    let mut n = 0;
    for e in corpus::all() {
        compare(&e.text, &e.name);
        n += 1;
    }
    assert!(n > 20);
}

fn word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!["u", "v"]), 2..=4).prop_map(|w| w.join("*"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Square-zero two-generator quotients have at most 32 elements.
    #[test]
    fn random_quotients_agree(rels in prop::collection::vec((word(), prop::option::of(word())), 0..4)) {
        let rels: Vec<String> = rels
            .into_iter()
            .map(|(a, b)| match b {
                Some(b) if a != b => format!("{a} + {b}"),
                _ => a,
            })
            .collect();
        let rel = if rels.is_empty() { String::new() } else { format!("\n  rel {}", rels.join(", ")) };
        let text = format!("ring \"q\" {{\n  field F2\n  gens u v\n  sqzero u v{rel}\n}}\n");
        compare(&text, &text);
    }
}
