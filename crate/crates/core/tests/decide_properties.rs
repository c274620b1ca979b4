mod common;

use omega_ineq::decide::{decide, decide_report, Budget, Evidence, Exact, Side, Verdict, Witness};
use omega_ineq::term::{canonical_j, parse_term, OmegaTerm};
use omega_ineq::Level;

use common::*;

fn t(s: &str) -> OmegaTerm {
    parse_term(s).unwrap()
}

fn levels() -> Vec<Level> {
    (1..=4).map(Level::from_twice).collect()
}

#[test]
fn verdicts_are_antitone_in_the_level() {
    let budget = Budget::default();
    for (u, v) in random_pairs(11, 60, 6, 2) {
        let names: Vec<&str> = levels()
            .iter()
            .map(|&l| decide(&u, &v, l, &budget).unwrap().name())
            .collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                assert!(
                    !(names[i] == "fails" && names[j] == "holds"),
                    "{u} <= {v}: {names:?}"
                );
            }
        }
    }
}

#[test]
fn witnesses_replay_after_serialization() {
    let budget = Budget::default();
    let mut seen = 0;
    for (u, v) in random_pairs(12, 60, 6, 2) {
        for level in levels() {
            if let Verdict::Fails(w) = decide(&u, &v, level, &budget).unwrap() {
                let back = Witness::from_json(&w.to_json()).unwrap();
                assert_eq!(back, *w);
                back.replay(&u, &v)
                    .unwrap_or_else(|e| panic!("{u} <= {v} at {level}: {e}"));
                assert!(back.replay(&v, &v).is_err());
                seen += 1;
            }
        }
    }
    assert!(seen > 50, "{seen}");
}

#[test]
fn level_one_is_equality_of_canonical_forms() {
    let budget = Budget::default();
    for (u, v) in random_pairs(13, 100, 8, 3) {
        let holds = matches!(
            decide(&u, &v, Level::ONE, &budget).unwrap(),
            Verdict::Holds(_)
        );
        assert_eq!(holds, canonical_j(&u) == canonical_j(&v), "{u} <= {v}");
    }
}

#[test]
fn evidence_matches_the_level() {
    let budget = Budget::default();
    let (u, v) = (t("a b"), t("a b"));
    assert_eq!(
        decide(&u, &v, Level::ZERO, &budget).unwrap(),
        Verdict::Holds(Evidence::Exact(Exact::TrivialLevel))
    );
    assert_eq!(
        decide(&t("a"), &t("b a"), Level::HALF, &budget).unwrap(),
        Verdict::Holds(Evidence::Exact(Exact::SubwordInclusion))
    );
    match decide(&u, &v, Level::ONE, &budget).unwrap() {
        Verdict::Holds(Evidence::Both(_, _)) => {}
        other => panic!("{other:?}"),
    }
    match decide(
        &t("(a b)^w"),
        &t("(a b)^w b (a b)^w"),
        Level::THREE_HALVES,
        &budget,
    )
    .unwrap()
    {
        Verdict::Holds(Evidence::Proof(p)) => assert_eq!(p.level, Level::THREE_HALVES),
        other => panic!("{other:?}"),
    }
}

#[test]
fn reports_have_the_documented_shape() {
    let budget = Budget::default();
    let (u, v) = (t("(a b)^w"), t("a^w b^w"));
    let r = decide_report(&u, &v, Level::THREE_HALVES, &budget).unwrap();
    let json = r.to_value(&u, &v, Level::THREE_HALVES);
    assert_eq!(json["verdict"], "fails");
    assert_eq!(json["query"]["level"], "3/2");
    assert_eq!(json["query"]["lhs"], u.to_string());
    assert!(
        json["evidence"]["witness"]["expr"].is_object()
            || json["evidence"]["witness"]["expr"].is_string()
    );
    for key in ["prover_expansions", "languages", "exhausted"] {
        assert!(json["budget_spent"].get(key).is_some(), "{key}");
    }
    let w: Witness = serde_json::from_value(json["evidence"]["witness"].clone()).unwrap();
    w.replay(&u, &v).unwrap();
}

#[test]
fn tiny_budgets_report_what_ran_out() {
    let tiny = Budget {
        proof_expansions: 1,
        languages: 1,
        ..Budget::default()
    };
    let (u, v) = (t("c (a b)^w c"), t("c (a b)^w b (a b)^w c"));
    match decide(&u, &v, Level::THREE_HALVES, &tiny).unwrap() {
        Verdict::Unknown(spent) => {
            assert!(spent.exhausted.contains(&Side::Prover), "{spent:?}");
            assert!(spent.exhausted.contains(&Side::Refuter), "{spent:?}");
            assert!(
                spent.languages <= 1 && spent.prover_expansions <= 1,
                "{spent:?}"
            );
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        decide(&u, &v, Level::THREE_HALVES, &Budget::default()).unwrap(),
        Verdict::Holds(_)
    ));
}

#[test]
fn unsupported_levels_are_errors() {
    assert!(decide(&t("a"), &t("a"), Level::from_twice(6), &Budget::default()).is_err());
}
