//! The bundled rings: hand-written `.ring` files plus generated families.

use std::path::Path;

use crate::algebra::FiniteAlgebra;
use crate::dsl::{self, BuildError, RingSpecFile};

/// A named ring description in the DSL.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub text: String,
}

impl Entry {
    pub fn parse(&self) -> Result<RingSpecFile, BuildError> {
        Ok(dsl::parse(&self.text)?)
    }

    pub fn build(&self) -> Result<FiniteAlgebra, BuildError> {
        self.parse()?.build(Path::new("."))
    }
}

/// The hand-written files, by file stem.
pub const FILES: [(&str, &str); 14] = [
    ("f2d8", include_str!("../rings/f2d8.ring")),
    ("f2q8", include_str!("../rings/f2q8.ring")),
    ("ex1", include_str!("../rings/ex1.ring")),
    ("ex3", include_str!("../rings/ex3.ring")),
    ("ex2", include_str!("../rings/ex2.ring")),
    ("final12", include_str!("../rings/final12.ring")),
    ("marks", include_str!("../rings/marks.ring")),
    ("sec3a", include_str!("../rings/sec3a.ring")),
    ("sec3b", include_str!("../rings/sec3b.ring")),
    ("sec3c", include_str!("../rings/sec3c.ring")),
    ("rev_nonduo", include_str!("../rings/rev_nonduo.ring")),
    ("m2f2", include_str!("../rings/m2f2.ring")),
    ("u2f2", include_str!("../rings/u2f2.ring")),
    ("sum_chain", include_str!("../rings/sum_chain.ring")),
];

pub fn file(name: &str) -> Option<Entry> {
    FILES.iter().find(|(n, _)| *n == name).map(|(n, t)| Entry { name: n.to_string(), text: t.to_string() })
}

fn entry(name: String, body: &str) -> Entry {
    let text = format!("ring \"{name}\" {{\n{body}\n}}\n");
    Entry { name, text }
}

/// Chain rings, matrix and triangular algebras, small group algebras and direct sums.
pub fn generated() -> Vec<Entry> {
    let mut out = Vec::new();
    for k in 1..=7 {
        out.push(entry(format!("F2[u]/(u^{k})"), &format!("  field F2 chain {k}\n  expect chain=true, local=true")));
    }
    for k in 1..=3 {
        out.push(entry(format!("F4[u]/(u^{k})"), &format!("  field F4 chain {k}\n  expect chain=true, local=true")));
    }
    out.push(entry("M2(F4)".into(), "  field F4 matrix 2\n  expect order=256, ni=false"));
    out.push(entry("U3(F2)".into(), "  field F2 upper 3\n  expect order=64, ni=true, abelian=false"));
    out.push(entry("U2(F4)".into(), "  field F4 upper 2\n  expect order=64, ni=true"));
    out.push(entry("F2[C2]".into(), "  field F2 group C2\n  expect chain=true"));
    out.push(entry("F2[C4]".into(), "  field F2 group C4\n  expect chain=true"));
    out.push(entry("F4[C2]".into(), "  field F4 group C2\n  expect chain=true"));
    out.push(entry("F2[C3]".into(), "  field F2 group C3\n  expect local=false, commutative=true"));
    let sums = [
        ("F2[u]/(u^2)^2", "ring \"d\" { field F2 chain 2 }\n", "sum \"d\" \"d\"", "order=16, local=false, reversible=true"),
        ("U2(F2)+F2", "ring \"t\" { field F2 upper 2 }\nring \"f\" { field F2 chain 1 }\n", "sum \"t\" \"f\"", "order=16, abelian=false"),
        (
            "sec3a+F2",
            "ring \"a\" {\n  field F2\n  gens u v\n  rel u^3, v^2, v*u, u^2 - u*v\n}\nring \"f\" { field F2 chain 1 }\n",
            "sum \"a\" \"f\"",
            "order=32, semicommutative=true, reflexive=false",
        ),
        ("F4+F4", "ring \"f\" { field F4 chain 1 }\n", "sum \"f\" \"f\"", "order=16, symmetric=true"),
    ];
    for (name, prefix, sum, expect) in sums {
        let field = if name.contains("F4") { "F4" } else { "F2" };
        let text = format!("{prefix}ring \"{name}\" {{\n  field {field}\n  {sum}\n  expect {expect}\n}}\n");
        out.push(Entry { name: name.into(), text });
    }
    out
}

/// Every bundled ring.
pub fn all() -> Vec<Entry> {
    FILES
        .iter()
        .map(|(n, t)| Entry { name: n.to_string(), text: t.to_string() })
        .chain(generated())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses_and_renders() {
        for e in all() {
            let f = e.parse().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(dsl::parse(&f.render()).unwrap(), f, "{}", e.name);
        }
    }

    #[test]
    fn small_entries_build() {
        for e in generated() {
            let alg = e.build().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(alg.validate().is_empty(), "{}", e.name);
        }
    }
}
