//! Deciding `u ≤ v` at a level.
//!
//! Levels 0 and 1/2 are decided exactly (the latter by subword inclusion).
//! An integer level `n` reduces to both directions at `n − 1/2`. Half levels
//! from 3/2 on first compare canonical forms over J, then run the proof
//! search and the refuter side by side, each in its own thread, taking
//! strict turns; the first conclusive answer wins.

mod turnstile;
mod witness;

use std::thread;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use turnstile::Side;
pub use witness::Witness;

use crate::automata::dfa_included;
use crate::error::Error;
use crate::lang::{level_entries, LangExpr, MAX_LEVEL};
use crate::level::Level;
use crate::proof::{search_proof_with, Inequality, Proof, ProofFile, SearchOutcome};
use crate::term::{canonical_j, subword_nfa, Letter, OmegaTerm};
use turnstile::Turnstile;

/// Resource limits for [`decide`]. All limits are deterministic counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    /// Goal expansions of the proof search.
    pub proof_expansions: usize,
    /// Languages the refuter may try.
    pub languages: usize,
    /// Rewrite steps per normalization; `None` is `10 · n²`.
    pub rewrite_steps: Option<usize>,
    /// Largest monoid tried when refuting an equality over A.
    pub refute_size: usize,
    /// Syntactic monoids above this size are skipped by the refuter.
    pub synt_cap: usize,
    /// Largest integer exponent in decompositions and patterns.
    pub exp_bound: usize,
    pub max_depth: usize,
    pub prover_slice: usize,
    pub refuter_slice: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            proof_expansions: 2048,
            languages: 64,
            rewrite_steps: None,
            refute_size: 3,
            synt_cap: 48,
            exp_bound: 2,
            max_depth: 12,
            prover_slice: 256,
            refuter_slice: 8,
        }
    }
}

impl Budget {
    /// The budget for sub-queries one level down.
    pub fn halved(&self) -> Budget {
        Budget {
            proof_expansions: (self.proof_expansions / 2).max(1),
            languages: (self.languages / 2).max(1),
            ..self.clone()
        }
    }

    /// Every search limit multiplied by `k`.
    pub fn scaled(&self, k: usize) -> Budget {
        Budget {
            proof_expansions: self.proof_expansions * k,
            languages: self.languages * k,
            rewrite_steps: self.rewrite_steps.map(|s| s * k),
            max_depth: self.max_depth * k,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exact {
    /// Level 0 contains only the empty and the full language.
    TrivialLevel,
    /// Subwords of `v` include those of `u`.
    SubwordInclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Exact(Exact),
    Proof(Proof),
    /// Both directions one half level down.
    Both(Box<Evidence>, Box<Evidence>),
}

/// What a search used up; `exhausted` lists the sides that ran out without
/// an answer, first one first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Spent {
    pub prover_expansions: usize,
    pub languages: usize,
    pub exhausted: Vec<Side>,
}

impl Spent {
    fn add(&mut self, other: &Spent) {
        self.prover_expansions += other.prover_expansions;
        self.languages += other.languages;
        for s in &other.exhausted {
            if !self.exhausted.contains(s) {
                self.exhausted.push(*s);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds(Evidence),
    Fails(Box<Witness>),
    Unknown(Spent),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Holds(_) => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

/// A verdict together with the resources spent reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub verdict: Verdict,
    pub spent: Spent,
}

impl Report {
    pub fn to_value(&self, u: &OmegaTerm, v: &OmegaTerm, level: Level) -> Value {
        json!({
            "query": {"lhs": u.to_string(), "rhs": v.to_string(), "level": level.to_string()},
            "verdict": self.verdict.name(),
            "evidence": match &self.verdict {
                Verdict::Holds(e) => evidence_value(e),
                Verdict::Fails(w) => json!({"witness": w}),
                Verdict::Unknown(_) => Value::Null,
            },
            "budget_spent": self.spent,
        })
    }
}

fn evidence_value(e: &Evidence) -> Value {
    match e {
        Evidence::Exact(Exact::TrivialLevel) => json!({"exact": "trivial-level"}),
        Evidence::Exact(Exact::SubwordInclusion) => json!({"exact": "subword-inclusion"}),
        Evidence::Proof(p) => json!({"proof": ProofFile::from_proof(p)}),
        Evidence::Both(a, b) => json!({"both": [evidence_value(a), evidence_value(b)]}),
    }
}

fn alphabet_of(u: &OmegaTerm, v: &OmegaTerm) -> Vec<Letter> {
    let mut s = u.letters();
    s.extend(v.letters());
    s.into_iter().collect()
}

/// Decides `u ≤ v` at `level`.
pub fn decide(
    u: &OmegaTerm,
    v: &OmegaTerm,
    level: Level,
    budget: &Budget,
) -> Result<Verdict, Error> {
    Ok(decide_report(u, v, level, budget)?.verdict)
}

/// As [`decide`], also reporting what was spent.
pub fn decide_report(
    u: &OmegaTerm,
    v: &OmegaTerm,
    level: Level,
    budget: &Budget,
) -> Result<Report, Error> {
    if level > MAX_LEVEL {
        return Err(Error::UnsupportedLevel(level.to_string()));
    }
    let alphabet = alphabet_of(u, v);
    if level == Level::ZERO {
        return Ok(Report {
            verdict: Verdict::Holds(Evidence::Exact(Exact::TrivialLevel)),
            spent: Spent::default(),
        });
    }
    if level == Level::HALF {
        return Ok(Report {
            verdict: subword_verdict(u, v, &alphabet)?,
            spent: Spent::default(),
        });
    }
    if !level.is_half() {
        return integer_level(u, v, level, &alphabet, budget);
    }
    if canonical_j(u) != canonical_j(v) {
        if let Verdict::Fails(w) = decide(u, v, Level::ONE, budget)? {
            let lifted = LangExpr::wrap(w.expr.clone());
            if lifted.check_level(level).is_ok() {
                if let Some(w) = Witness::find(level, lifted, &alphabet, u, v) {
                    return Ok(Report {
                        verdict: Verdict::Fails(Box::new(w)),
                        spent: Spent::default(),
                    });
                }
            }
        }
    }
    Ok(dovetail(u, v, level, &alphabet, budget))
}

fn subword_verdict(u: &OmegaTerm, v: &OmegaTerm, alphabet: &[Letter]) -> Result<Verdict, Error> {
    let du = subword_nfa(u).determinize(alphabet);
    let dv = subword_nfa(v).determinize(alphabet);
    Ok(match dfa_included(&du, &dv)? {
        Ok(()) => Verdict::Holds(Evidence::Exact(Exact::SubwordInclusion)),
        Err(w) => {
            let w = Witness::find(Level::HALF, LangExpr::upset(&w), alphabet, u, v)
                .expect("a subword missing from v separates u from v");
            Verdict::Fails(Box::new(w))
        }
    })
}

fn integer_level(
    u: &OmegaTerm,
    v: &OmegaTerm,
    level: Level,
    alphabet: &[Letter],
    budget: &Budget,
) -> Result<Report, Error> {
    let below = level.pred().expect("positive level");
    let first = decide_report(u, v, below, budget)?;
    let mut spent = first.spent.clone();
    if let Verdict::Fails(w) = &first.verdict {
        let mut w = w.clone();
        w.level = level;
        return Ok(Report {
            verdict: Verdict::Fails(w),
            spent,
        });
    }
    let second = decide_report(v, u, below, budget)?;
    spent.add(&second.spent);
    let verdict = match (first.verdict, second.verdict) {
        (_, Verdict::Fails(w)) => {
            let expr = LangExpr::complement(w.expr.clone());
            match Witness::find(level, expr, alphabet, u, v) {
                Some(w) => Verdict::Fails(Box::new(w)),
                None => Verdict::Unknown(spent.clone()),
            }
        }
        (Verdict::Holds(a), Verdict::Holds(b)) => {
            Verdict::Holds(Evidence::Both(Box::new(a), Box::new(b)))
        }
        _ => Verdict::Unknown(spent.clone()),
    };
    Ok(Report { verdict, spent })
}

fn dovetail(
    u: &OmegaTerm,
    v: &OmegaTerm,
    level: Level,
    alphabet: &[Letter],
    budget: &Budget,
) -> Report {
    let goal = Inequality::new(u.clone(), v.clone());
    let turnstile = Turnstile::new();
    let (proof, refutation) = thread::scope(|scope| {
        let prover = scope.spawn(|| {
            let mut gate = turnstile.gate(Side::Prover, budget.prover_slice);
            let out = search_proof_with(&goal, level, budget, &mut || gate.tick());
            gate.finish(matches!(out, SearchOutcome::Found(_)));
            out
        });
        let refuter = scope.spawn(|| {
            let mut gate = turnstile.gate(Side::Refuter, budget.refuter_slice);
            let out = refute_with(u, v, level, alphabet, budget, &mut || gate.tick());
            gate.finish(matches!(out, Refutation::Found { .. }));
            out
        });
        (
            prover.join().expect("prover thread"),
            refuter.join().expect("refuter thread"),
        )
    });
    let mut spent = Spent {
        exhausted: turnstile.exhausted(),
        ..Spent::default()
    };
    let found = match proof {
        SearchOutcome::Found(p) => Some(p),
        SearchOutcome::NotFound { expansions, .. } | SearchOutcome::Cancelled { expansions } => {
            spent.prover_expansions = expansions;
            None
        }
    };
    let witness = match refutation {
        Refutation::Found { witness, tried } => {
            spent.languages = tried;
            Some(witness)
        }
        Refutation::NotFound { tried } | Refutation::Cancelled { tried } => {
            spent.languages = tried;
            None
        }
    };
    let verdict = match (found, witness) {
        (Some(p), _) => Verdict::Holds(Evidence::Proof(p)),
        (None, Some(w)) => Verdict::Fails(w),
        (None, None) => Verdict::Unknown(spent.clone()),
    };
    Report { verdict, spent }
}

enum Refutation {
    Found { witness: Box<Witness>, tried: usize },
    NotFound { tried: usize },
    Cancelled { tried: usize },
}

fn refute_with(
    u: &OmegaTerm,
    v: &OmegaTerm,
    level: Level,
    alphabet: &[Letter],
    budget: &Budget,
    tick: &mut dyn FnMut() -> bool,
) -> Refutation {
    let Ok(entries) = level_entries(level, alphabet, budget.languages) else {
        return Refutation::NotFound { tried: 0 };
    };
    let mut tried = 0;
    for e in entries {
        if !tick() {
            return Refutation::Cancelled { tried };
        }
        tried += 1;
        let Some(r) = e.syntactic() else { continue };
        if r.monoid.size() > budget.synt_cap {
            continue;
        }
        if let Some(c) = r.monoid.counterexample(u, v) {
            let witness = Box::new(Witness::new(level, e.expr.clone(), alphabet, r, &c));
            return Refutation::Found { witness, tried };
        }
    }
    Refutation::NotFound { tried }
}

/// A language among the first `budget.languages` of `level` whose syntactic
/// ordered monoid violates `u ≤ v`.
pub fn refute(
    u: &OmegaTerm,
    v: &OmegaTerm,
    level: Level,
    budget: &Budget,
) -> Result<Option<Witness>, Error> {
    if level > MAX_LEVEL {
        return Err(Error::UnsupportedLevel(level.to_string()));
    }
    let alphabet = alphabet_of(u, v);
    level_entries(level, &alphabet, budget.languages)?;
    Ok(
        match refute_with(u, v, level, &alphabet, budget, &mut || true) {
            Refutation::Found { witness, .. } => Some(*witness),
            _ => None,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check_proof;
    use crate::term::parse_term;

    fn t(s: &str) -> OmegaTerm {
        parse_term(s).unwrap()
    }

    fn run(u: &str, v: &str, level: Level) -> Verdict {
        decide(&t(u), &t(v), level, &Budget::default()).unwrap()
    }

    fn expect_fails(u: &str, v: &str, level: Level) -> Witness {
        match run(u, v, level) {
            Verdict::Fails(w) => {
                assert_eq!(w.level, level);
                assert_eq!(w.replay(&t(u), &t(v)), Ok(()), "{w:?}");
                *w
            }
            other => panic!("{u} <= {v} at {level}: {other:?}"),
        }
    }

    #[test]
    fn level_zero_and_half() {
        assert!(matches!(run("a", "b", Level::ZERO), Verdict::Holds(_)));
        assert!(matches!(
            run("a b", "(a b)^w", Level::HALF),
            Verdict::Holds(_)
        ));
        let w = expect_fails("(a b)^w", "a^w b^w", Level::HALF);
        assert_eq!(w.expr.to_string(), "[A* b A* a A*]");
    }

    #[test]
    fn integer_levels_compare_both_ways() {
        let w = expect_fails("1", "a", Level::ONE);
        assert_eq!(
            w.expr,
            LangExpr::complement(LangExpr::upset(&[crate::term::letter('a')]))
        );
        expect_fails("a", "1", Level::ONE);
        assert!(matches!(
            run("(a b)^w", "(b a)^w", Level::ONE),
            Verdict::Holds(Evidence::Both(..))
        ));
    }

    #[test]
    fn three_halves() {
        match run("(a b)^w", "(a b)^w b (a b)^w", Level::THREE_HALVES) {
            Verdict::Holds(Evidence::Proof(p)) => {
                assert_eq!(check_proof(&p, &Budget::default()), Ok(()))
            }
            other => panic!("{other:?}"),
        }
        expect_fails("(a b)^w", "a^w b^w", Level::THREE_HALVES);
        expect_fails("a^w", "a^w b a^w", Level::THREE_HALVES);
    }

    #[test]
    fn refuter_finds_subword_witness() {
        let w = refute(
            &t("(a b)^w"),
            &t("a^w b^w"),
            Level::THREE_HALVES,
            &Budget::default(),
        )
        .unwrap()
        .expect("witness");
        assert_eq!(w.replay(&t("(a b)^w"), &t("a^w b^w")), Ok(()));
        let small = Budget {
            languages: 8,
            ..Budget::default()
        };
        let w = refute(&t("1"), &t("a"), Level::ONE, &small)
            .unwrap()
            .expect("witness");
        assert_eq!(w.expr.to_string(), "![A* a A*]");
    }

    #[test]
    fn unsupported_level() {
        assert!(decide(&t("a"), &t("a"), Level::from_twice(6), &Budget::default()).is_err());
    }

    #[test]
    fn budget_round_trip() {
        let b = Budget::default();
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<Budget>(&text).unwrap(), b);
        assert_eq!(
            serde_json::from_str::<Budget>(r#"{"languages": 3}"#)
                .unwrap()
                .languages,
            3
        );
    }
}
