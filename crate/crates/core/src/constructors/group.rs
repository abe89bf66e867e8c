//! Finite groups given by Cayley tables.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("cayley table line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A validated multiplication table; `table[a][b]` is the index of `a*b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<GroupTable, GroupError> {
        let n = labels.len();
        let bad = |m: String| Err(GroupError::InvalidGroup(m));
        if n == 0 {
            return bad("empty group".into());
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return bad(format!("table is not {n}x{n}"));
        }
        if let Some(v) = table.iter().flatten().find(|&&v| v >= n) {
            return bad(format!("entry {v} out of range"));
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity element".into());
        };
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return bad(format!("element {} has no inverse", labels[a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("not associative on ({}, {}, {})", labels[a], labels[b], labels[c]));
                    }
                }
            }
        }
        Ok(GroupTable { labels, table, identity })
    }

    /// Parses `n` followed by `n` rows of `n` zero-based indices.
    pub fn parse_cayley(text: &str) -> Result<GroupTable, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line, message: &str| GroupError::Parse { line, message: message.into() };
        let (line, first) = lines.next().ok_or_else(|| err(1, "missing order"))?;
        let n: usize = first.parse().map_err(|_| err(line, "expected the group order"))?;
        let mut table = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, row) = lines.next().ok_or_else(|| err(line, "missing table row"))?;
            let row: Vec<usize> = row
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err(line, "expected an index")))
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(err(line, &format!("expected {n} entries, found {}", row.len())));
            }
            table.push(row);
        }
        if let Some((line, _)) = lines.next() {
            return Err(err(line, "unexpected trailing row"));
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e].get(a) == Some(&a)));
        let labels = (0..n)
            .map(|i| if Some(i) == identity { "1".to_string() } else { format!("g{i}") })
            .collect();
        GroupTable::new(labels, table)
    }

    /// Renders the table in the format read by [`GroupTable::parse_cayley`].
    pub fn to_cayley(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for row in &self.table {
            out.push_str(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn trivial() -> GroupTable {
        GroupTable::new(vec!["1".into()], vec![vec![0]]).unwrap()
    }

    /// Cyclic group `<g | g^n>`, elements `1, g, g2, ...`.
    pub fn cyclic(n: usize) -> Result<GroupTable, GroupError> {
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(labels, table)
    }

    /// `D8 = <r, s | r^4 = s^2 = (sr)^2 = 1>` with elements `r^i s^j` at index `i + 4j`.
    pub fn dihedral8() -> GroupTable {
        let labels = ["1", "r", "r2", "r3", "s", "rs", "r2s", "r3s"].map(String::from).to_vec();
        let table = (0..8)
            .map(|x: usize| {
                let (a, b) = (x % 4, x / 4);
                (0..8)
                    .map(|y: usize| {
                        let (c, d) = (y % 4, y / 4);
                        let rot = if b == 0 { a + c } else { a + 4 - c } % 4;
                        rot + 4 * ((b + d) % 2)
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(labels, table).unwrap()
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion8() -> GroupTable {
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
        // Unit u in {1, i, j, k} as 0..4; products of units as (sign, unit).
        let unit_mul = |u: usize, v: usize| -> (bool, usize) {
            match (u, v) {
                (0, v) => (false, v),
                (u, 0) => (false, u),
                (u, v) if u == v => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|x: usize| {
                (0..8)
                    .map(|y: usize| {
                        let (neg, u) = unit_mul(x / 2, y / 2);
                        let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                        2 * u + sign as usize
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(labels, table).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power(g: &GroupTable, x: usize, n: usize) -> usize {
        (0..n).fold(g.identity(), |acc, _| g.mul(acc, x))
    }

    #[test]
    fn dihedral_relators() {
        let g = GroupTable::dihedral8();
        let (r, s) = (g.index("r").unwrap(), g.index("s").unwrap());
        assert_eq!(power(&g, r, 4), g.identity());
        assert_ne!(power(&g, r, 2), g.identity());
        assert_eq!(power(&g, s, 2), g.identity());
        assert_eq!(power(&g, g.mul(s, r), 2), g.identity());
        assert_eq!(g.mul(r, s), g.index("rs").unwrap());
        assert_eq!(g.mul(g.mul(r, r), s), g.index("r2s").unwrap());
    }

    #[test]
    fn quaternion_relators() {
        let g = GroupTable::quaternion8();
        let [m1, i, j, k] = ["-1", "i", "j", "k"].map(|l| g.index(l).unwrap());
        for x in [i, j, k] {
            assert_eq!(g.mul(x, x), m1);
        }
        assert_eq!(g.mul(g.mul(i, j), k), m1);
        assert_eq!(g.mul(j, i), g.index("-k").unwrap());
    }

    #[test]
    fn cayley_round_trip_and_errors() {
        let g = GroupTable::cyclic(3).unwrap();
        let parsed = GroupTable::parse_cayley(&g.to_cayley()).unwrap();
        assert_eq!(parsed.order(), 3);
        assert_eq!(parsed.labels(), ["1", "g1", "g2"]);
        assert!(matches!(GroupTable::parse_cayley("2\n0 1\n0 1\n"), Err(GroupError::InvalidGroup(_))));
        assert!(matches!(GroupTable::parse_cayley("2\n0 1\n"), Err(GroupError::Parse { .. })));
        assert!(matches!(GroupTable::parse_cayley("2\n0 1\n1 x\n"), Err(GroupError::Parse { line: 3, .. })));
    }

    #[test]
    fn non_associative_table_rejected() {
        // A loop of order 5 with identity and inverses but no associativity.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let labels = (0..5).map(|i| i.to_string()).collect();
        assert!(matches!(GroupTable::new(labels, t), Err(GroupError::InvalidGroup(m)) if m.contains("associative")));
    }
}
