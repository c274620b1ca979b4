//! The on-disk monoid format:
//!
//! ```json
//! {"elements": ["1", "z"], "identity": "1",
//!  "table": [["1", "z"], ["z", "z"]], "order": [["1", "z"]]}
//! ```
//!
//! `order` lists the strict part of `≤`; the loader adds reflexivity and
//! then validates everything else.

use serde::{Deserialize, Serialize};

use super::{MonoidSpec, OrderedMonoid, Violation};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: Vec<Vec<String>>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

impl MonoidFile {
    pub fn from_json(text: &str) -> Result<MonoidFile, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("monoid files serialize")
    }

    pub fn to_spec(&self) -> Result<MonoidSpec, Violation> {
        let n = self.elements.len();
        let lookup = |name: &str| {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Violation::UnknownElement(name.to_string()))
        };
        let identity = lookup(&self.identity)?;
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|x| lookup(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for (lo, hi) in &self.order {
            leq[lookup(lo)?][lookup(hi)?] = true;
        }
        Ok(MonoidSpec {
            names: self.elements.clone(),
            identity,
            table,
            leq,
        })
    }

    pub fn to_monoid(&self) -> Result<OrderedMonoid, Violation> {
        OrderedMonoid::new(self.to_spec()?)
    }

    pub fn from_monoid(m: &OrderedMonoid) -> MonoidFile {
        let n = m.size();
        let name = |x: usize| m.name(x).to_string();
        MonoidFile {
            elements: (0..n).map(name).collect(),
            identity: name(m.identity()),
            table: (0..n)
                .map(|x| (0..n).map(|y| name(m.mul(x, y))).collect())
                .collect(),
            order: (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| x != y && m.leq(x, y))
                .map(|(x, y)| (name(x), name(y)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::tests::synt_contains_a;

    #[test]
    fn loads_and_closes_reflexively() {
        let text = r#"{"elements":["1","z"],"identity":"1","table":[["1","z"],["z","z"]],"order":[["1","z"]]}"#;
        let m = MonoidFile::from_json(text).unwrap().to_monoid().unwrap();
        assert_eq!(m, synt_contains_a());
        assert_eq!(MonoidFile::from_monoid(&m).to_json(), text);
    }

    #[test]
    fn undefined_name_is_a_violation() {
        let text = r#"{"elements":["1","s"],"identity":"1","table":[["1","s"],["s","t"]]}"#;
        let f = MonoidFile::from_json(text).unwrap();
        assert_eq!(f.to_monoid(), Err(Violation::UnknownElement("t".into())));
    }

    #[test]
    fn order_is_not_closed_transitively() {
        // 1 <= a <= b without 1 <= b
        let text = r#"{"elements":["1","a","b"],"identity":"1",
            "table":[["1","a","b"],["a","a","b"],["b","b","b"]],
            "order":[["1","a"],["a","b"]]}"#;
        let f = MonoidFile::from_json(text).unwrap();
        assert!(matches!(
            f.to_monoid(),
            Err(Violation::NotTransitive { .. })
        ));
    }
}
