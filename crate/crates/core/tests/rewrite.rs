use proptest::prelude::*;
use ringlab::gf::Field;
use ringlab::rewrite::{build_algebra, complete, Monomial, NCPolynomial, Presentation, RewriteError};

fn pres(gens: &[&str]) -> Presentation {
    Presentation::new(Field::f2(), gens.iter().map(|s| s.to_string()).collect())
}

fn poly(words: &[&[u8]]) -> NCPolynomial {
    let f = Field::f2();
    let mut p = NCPolynomial::zero();
    for w in words {
        p.add_term(&f, f.one(), Monomial(w.to_vec()));
    }
    p
}

#[test]
fn exterior_algebra_in_characteristic_two() {
    let mut p = pres(&["x", "y"]);
    p.relations = vec![poly(&[&[0, 0]]), poly(&[&[1, 1]]), poly(&[&[0, 1], &[1, 0]])];
    let alg = build_algebra("ext", &p).unwrap();
    assert_eq!(alg.dim(), 4);
    assert!(alg.is_commutative());
}

#[test]
fn square_zero_ideals_kill_repeated_letters() {
    let mut p = pres(&["u", "v"]);
    p.sqzero = vec![0, 1];
    let c = complete(&p).unwrap();
    assert_eq!(c.basis.len(), 5);
}

#[test]
fn infinite_presentations_name_top_degree_words() {
    let mut p = pres(&["u", "v"]);
    p.relations = vec![poly(&[&[0, 0]])];
    match complete(&p) {
        Err(RewriteError::BasisNotFinite { words, .. }) => assert!(words.contains(&"uvuvuvuv".to_string())),
        other => panic!("expected BasisNotFinite, got {other:?}"),
    }
}

#[test]
fn collapsing_relations() {
    let mut p = pres(&["u"]);
    p.relations = vec![poly(&[&[0], &[]]), poly(&[&[0, 0]])];
    assert!(matches!(build_algebra("z", &p), Err(RewriteError::TrivialRing)));
}

#[test]
fn overlaps_are_resolved() {
    // x^2 = x y and y x = 0 force x^3 = x y x = 0.
    let mut p = pres(&["x", "y"]);
    p.relations = vec![poly(&[&[0, 0], &[0, 1]]), poly(&[&[1, 0]]), poly(&[&[1, 1]])];
    let alg = build_algebra("o", &p).unwrap();
    let x = alg.pack(&alg.element("x").unwrap()).unwrap();
    assert_eq!(alg.pow(x, 3), 0);
    assert!(alg.validate().is_empty());
}

/// Words of length `d` over two letters as bit patterns, one bit per letter.
fn word_index(w: &[u8]) -> usize {
    w.iter().fold(0, |acc, &g| acc << 1 | g as usize)
}

/// Dimension of `F2<u,v>/(rels, all words of length 4)` by linear algebra in each degree.
fn truncated_dim(rels: &[Vec<Vec<u8>>]) -> usize {
    let mut total = 0;
    for d in 0..4 {
        let mut rows: Vec<u32> = Vec::new();
        for r in rels {
            let deg = r[0].len();
            if deg > d {
                continue;
            }
            for left in 0..=d - deg {
                let right = d - deg - left;
                for x in 0..1usize << left {
                    for y in 0..1usize << right {
                        let mut row = 0u32;
                        for w in r {
                            let idx = (x << (deg + right)) | (word_index(w) << right) | y;
                            row ^= 1 << idx;
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let mut basis: Vec<u32> = Vec::new();
        for mut v in rows {
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        total += (1 << d) - basis.len();
    }
    total
}

fn homogeneous() -> impl Strategy<Value = Vec<Vec<u8>>> {
    (2usize..=3).prop_flat_map(|d| {
        prop::collection::btree_set(prop::collection::vec(0u8..2, d), 1..4)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_dimensions_match_linear_algebra(rels in prop::collection::vec(homogeneous(), 0..4)) {
        let mut p = pres(&["u", "v"]);
        p.relations = rels.iter().map(|r| poly(&r.iter().map(|w| w.as_slice()).collect::<Vec<_>>())).collect();
        for i in 0..16u8 {
            let w: Vec<u8> = (0..4).map(|k| i >> (3 - k) & 1).collect();
            p.relations.push(poly(&[&w]));
        }
        let alg = build_algebra("t", &p).unwrap();
        prop_assert_eq!(alg.dim(), truncated_dim(&rels));
        prop_assert!(alg.validate().is_empty());
    }
}
