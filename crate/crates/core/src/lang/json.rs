//! JSON form of language expressions:
//!
//! ```text
//! expr := "empty" | "all"
//!       | {"product": [expr, "a", expr, "b", expr, ...]}
//!       | {"union": [expr, ...]} | {"intersection": [expr, ...]}
//!       | {"complement": expr}
//! ```
//!
//! A document pairs an expression with its level:
//! `{"level": "3/2", "expr": ...}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{LangExpr, Level};
use crate::error::Error;
use crate::term::Letter;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LangDocument {
    pub level: Level,
    pub expr: LangExpr,
}

impl LangDocument {
    /// Parses and checks that the expression is well-leveled.
    pub fn from_json(text: &str) -> Result<LangDocument, Error> {
        let doc: LangDocument = serde_json::from_str(text)?;
        doc.expr.check_level(doc.level)?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }
}

impl LangExpr {
    pub fn to_value(&self) -> Value {
        match self {
            LangExpr::Empty => json!("empty"),
            LangExpr::All => json!("all"),
            LangExpr::Product { parts, markers } => {
                let mut items = vec![parts[0].to_value()];
                for (a, p) in markers.iter().zip(&parts[1..]) {
                    items.push(json!(a.to_string()));
                    items.push(p.to_value());
                }
                json!({ "product": items })
            }
            LangExpr::Union(xs) => {
                json!({ "union": xs.iter().map(LangExpr::to_value).collect::<Vec<_>>() })
            }
            LangExpr::Intersection(xs) => {
                json!({ "intersection": xs.iter().map(LangExpr::to_value).collect::<Vec<_>>() })
            }
            LangExpr::Complement(x) => json!({ "complement": x.to_value() }),
        }
    }

    pub fn from_value(v: &Value) -> Result<LangExpr, Error> {
        let bad = |what: &str| Error::Format(format!("{what}: {v}"));
        match v {
            Value::String(s) if s == "empty" => Ok(LangExpr::Empty),
            Value::String(s) if s == "all" => Ok(LangExpr::All),
            Value::Object(map) if map.len() == 1 => {
                let (key, body) = map.iter().next().expect("one entry");
                let list = || body.as_array().ok_or_else(|| bad("expected a list"));
                match key.as_str() {
                    "product" => {
                        let items = list()?;
                        if items.len() % 2 == 0 {
                            return Err(bad("product needs an odd number of items"));
                        }
                        let mut parts = Vec::new();
                        let mut markers = Vec::new();
                        for (i, item) in items.iter().enumerate() {
                            if i % 2 == 0 {
                                parts.push(LangExpr::from_value(item)?);
                            } else {
                                markers.push(
                                    parse_marker(item).ok_or_else(|| bad("expected a letter"))?,
                                );
                            }
                        }
                        Ok(LangExpr::Product { parts, markers })
                    }
                    "union" => Ok(LangExpr::Union(
                        list()?
                            .iter()
                            .map(LangExpr::from_value)
                            .collect::<Result<_, _>>()?,
                    )),
                    "intersection" => Ok(LangExpr::Intersection(
                        list()?
                            .iter()
                            .map(LangExpr::from_value)
                            .collect::<Result<_, _>>()?,
                    )),
                    "complement" => Ok(LangExpr::complement(LangExpr::from_value(body)?)),
                    _ => Err(bad("unknown operator")),
                }
            }
            _ => Err(bad("not an expression")),
        }
    }
}

fn parse_marker(v: &Value) -> Option<Letter> {
    let s = v.as_str()?;
    let mut chars = s.chars();
    let c = chars.next()?;
    if chars.next().is_some() {
        return None;
    }
    Letter::new(c)
}

impl Serialize for LangExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LangExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<LangExpr, D::Error> {
        let v = Value::deserialize(deserializer)?;
        LangExpr::from_value(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::letter;

    #[test]
    fn document_round_trip() {
        let text = r#"{"level":"3/2","expr":{"union":[{"product":["all","a","all"]},{"product":[{"complement":{"product":["all","b","all"]}},"a","empty"]}]}}"#;
        let doc = LangDocument::from_json(text).unwrap();
        assert_eq!(doc.level, Level::THREE_HALVES);
        match &doc.expr {
            LangExpr::Union(xs) => {
                assert_eq!(xs[0], LangExpr::upset(&[letter('a')]));
                assert_eq!(xs.len(), 2);
            }
            other => panic!("unexpected {other}"),
        }
        assert_eq!(doc.to_json(), text);
    }

    #[test]
    fn rejects_malformed_and_ill_leveled() {
        for text in [
            r#"{"level":"1/2","expr":{"product":["all","a"]}}"#,
            r#"{"level":"1/2","expr":{"product":["all","ab","all"]}}"#,
            r#"{"level":"1/2","expr":{"star":"all"}}"#,
            r#"{"level":"1/2","expr":{"complement":"all"}}"#,
            r#"{"level":"1/3","expr":"all"}"#,
        ] {
            assert!(LangDocument::from_json(text).is_err(), "{text}");
        }
    }
}
