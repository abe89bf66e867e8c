use proptest::prelude::*;
use ringlab::dsl::{self, Body, DslError, ExpectValue};
use ringlab::rewrite::Monomial;

fn term(field_is_f4: bool) -> impl Strategy<Value = String> {
    let coeffs: Vec<&str> = if field_is_f4 { vec!["", "a*", "a^2*", "(a+1)*"] } else { vec!["", "3*"] };
    (prop::sample::select(coeffs), prop::collection::vec(prop::sample::select(vec!["u", "v", "w", "u^2"]), 1..4))
        .prop_map(|(c, w)| format!("{c}{}", w.join("*")))
}

fn poly(f4: bool) -> impl Strategy<Value = String> {
    (prop::collection::vec(term(f4), 1..4), prop::bool::ANY).prop_map(|(ts, neg)| {
        let body = ts.join(" + ");
        if neg {
            format!("- {body}")
        } else {
            body
        }
    })
}

fn presentation_block() -> impl Strategy<Value = String> {
    prop::bool::ANY.prop_flat_map(|f4| {
        (
            Just(f4),
            prop::collection::vec(poly(f4), 0..4),
            prop::bool::ANY,
            prop::option::of(2usize..9),
            prop::option::of(1u64..300),
        )
            .prop_map(|(f4, rels, skew, maxdeg, order)| {
                let mut s = String::from("ring \"p\" {\n");
                s += if f4 { "  field F4\n" } else { "  field GF(5,1,x + 3)\n" };
                s += "  gens u v w\n  sqzero w\n";
                if !rels.is_empty() {
                    s += &format!("  rel {}\n", rels.join(", "));
                }
                if f4 && skew {
                    s += "  skew v frob\n  comm v u a\n";
                }
                if let Some(d) = maxdeg {
                    s += &format!("  maxdeg {d}\n");
                }
                if let Some(n) = order {
                    s += &format!("  expect order={n}, reflexive=false, filtration_dims=[1, 2]\n");
                }
                s + "}\n"
            })
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(text in presentation_block()) {
        let f = dsl::parse(&text).unwrap();
        let again = dsl::parse(&f.render()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(again.render(), f.render());
    }

    #[test]
    fn constructor_bodies_round_trip(k in 1usize..6, which in 0usize..6) {
        let body = match which {
            0 => format!("chain {k}"),
            1 => format!("matrix {}", k.min(3)),
            2 => format!("upper {}", k.min(3)),
            3 => format!("group C{}", k + 1),
            4 => "group Q8".into(),
            _ => "group D8".into(),
        };
        let text = format!("# leading comment\nring \"r\" {{ field F2 {body} }} # trailing\n");
        let f = dsl::parse(&text).unwrap();
        prop_assert_eq!(dsl::parse(&f.render()).unwrap(), f);
    }
}

#[test]
fn ex2_relations() {
    let text = include_str!("../rings/ex2.ring");
    let f = dsl::parse(text).unwrap();
    let spec = f.primary().unwrap();
    let Body::Presentation(p) = &spec.body else { panic!("presentation expected") };
    assert_eq!(p.gens, ["u", "v", "w"]);
    assert_eq!(p.sqzero, [0, 1, 2]);
    assert_eq!(p.relations.len(), 5);
    let uwv = Monomial(vec![0, 2, 1]);
    assert!(p.relations[3..].iter().all(|r| r.len() == 2 && !r.coefficient(&uwv).is_zero()));
}

#[test]
fn diagnostics_have_positions() {
    let e = dsl::parse("ring \"x\" {\n  field F2\n  gens u\n  rel u*q\n}\n").unwrap_err();
    assert_eq!(e, DslError::UnknownGenerator { line: 4, col: 9, name: "q".into() });
    assert_eq!(e.to_string(), "4:9: unknown generator `q`");
    let e = dsl::parse("ring \"x\" {\n  field GF(4,1,x)\n}\n").unwrap_err();
    assert!(matches!(e, DslError::UnknownField { line: 2, .. } | DslError::SyntaxError { line: 2, .. }), "{e:?}");
    let e = dsl::parse("ring \"x\" {\n  gens u\n}\n").unwrap_err();
    assert!(matches!(e, DslError::SyntaxError { line: 2, .. }), "{e:?}");
}

#[test]
fn expectation_lists() {
    let ex = dsl::parse_expectations("order=256, filtration_dims=[3, 3, 1], ni=true").unwrap();
    assert_eq!(ex[0], ("order".to_string(), ExpectValue::Int(256)));
    assert_eq!(ex[1].1, ExpectValue::List(vec![3, 3, 1]));
    assert!(dsl::parse_expectations("colour=red").is_err());
}

#[test]
fn elements_evaluate_in_the_built_ring() {
    let alg = dsl::parse(include_str!("../rings/ex1.ring")).unwrap().build(std::path::Path::new(".")).unwrap();
    let x = dsl::element(&alg, "a + u").unwrap();
    assert_eq!(alg.unit_order(x), Some(12));
    assert!(dsl::element(&alg, "u + q").is_err());
}
