use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lang::{expr_to_dfa, LangExpr};
use crate::level::Level;
use crate::monoid::{syntactic_ordered_monoid, Assignment, Counterexample, RecognizedLanguage};
use crate::term::{Letter, OmegaTerm};

/// A language of `level` whose syntactic ordered monoid violates `u ≤ v`,
/// with the offending assignment. Elements are named as in
/// [`syntactic_ordered_monoid`], so a witness can be replayed from its
/// serialized form alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub level: Level,
    pub expr: LangExpr,
    /// The letters the language is read over.
    pub alphabet: String,
    pub assignment: BTreeMap<char, String>,
    pub lhs_value: String,
    pub rhs_value: String,
}

impl Witness {
    pub(crate) fn new(
        level: Level,
        expr: LangExpr,
        alphabet: &[Letter],
        r: &RecognizedLanguage,
        c: &Counterexample,
    ) -> Witness {
        let m = &r.monoid;
        Witness {
            level,
            expr,
            alphabet: alphabet.iter().map(|l| l.as_char()).collect(),
            assignment: c
                .assignment
                .iter()
                .map(|(l, x)| (l.as_char(), m.name(x).to_string()))
                .collect(),
            lhs_value: m.name(c.lhs).to_string(),
            rhs_value: m.name(c.rhs).to_string(),
        }
    }

    /// Searches the syntactic monoid of `expr` for an assignment violating
    /// `u ≤ v`.
    pub(crate) fn find(
        level: Level,
        expr: LangExpr,
        alphabet: &[Letter],
        u: &OmegaTerm,
        v: &OmegaTerm,
    ) -> Option<Witness> {
        let dfa = expr_to_dfa(&expr, alphabet).ok()?;
        let r = syntactic_ordered_monoid(&dfa).ok()?;
        let c = r.monoid.counterexample(u, v)?;
        Some(Witness::new(level, expr, alphabet, &r, &c))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witnesses serialize")
    }

    pub fn from_json(text: &str) -> Result<Witness, crate::Error> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the syntactic monoid and checks that the recorded assignment
    /// maps `u` and `v` to the recorded, out-of-order values.
    pub fn replay(&self, u: &OmegaTerm, v: &OmegaTerm) -> Result<(), String> {
        self.expr
            .check_level(self.level)
            .map_err(|e| e.to_string())?;
        let alphabet = self
            .alphabet
            .chars()
            .map(|c| Letter::new(c).ok_or_else(|| format!("bad letter {c:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        let dfa = expr_to_dfa(&self.expr, &alphabet).map_err(|e| e.to_string())?;
        let m = syntactic_ordered_monoid(&dfa)
            .map_err(|e| e.to_string())?
            .monoid;
        let mut phi = Assignment::new();
        for (&c, name) in &self.assignment {
            let l = Letter::new(c).ok_or_else(|| format!("bad letter {c:?}"))?;
            let x = m
                .index_of(name)
                .ok_or_else(|| format!("no element named {name}"))?;
            phi.insert(l, x);
        }
        let x = m.eval(&phi, u).map_err(|e| e.to_string())?;
        let y = m.eval(&phi, v).map_err(|e| e.to_string())?;
        if m.name(x) != self.lhs_value || m.name(y) != self.rhs_value {
            return Err(format!(
                "values are {} and {}, not {} and {}",
                m.name(x),
                m.name(y),
                self.lhs_value,
                self.rhs_value
            ));
        }
        if m.leq(x, y) {
            return Err(format!("{} <= {} holds", m.name(x), m.name(y)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{letter, parse_term};

    #[test]
    fn epsilon_witness_replays() {
        let (u, v) = (parse_term("1").unwrap(), parse_term("a").unwrap());
        let expr = LangExpr::complement(LangExpr::upset(&[letter('a')]));
        let w = Witness::find(Level::ONE, expr, &[letter('a')], &u, &v).unwrap();
        assert_eq!(w.replay(&u, &v), Ok(()));
        let back = Witness::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
        assert!(back.replay(&v, &u).is_err());
    }

    #[test]
    fn tampered_witnesses_fail() {
        let (u, v) = (parse_term("1").unwrap(), parse_term("a").unwrap());
        let expr = LangExpr::complement(LangExpr::upset(&[letter('a')]));
        let mut w = Witness::find(Level::ONE, expr, &[letter('a')], &u, &v).unwrap();
        w.level = Level::HALF;
        assert!(w.replay(&u, &v).is_err());
    }
}
