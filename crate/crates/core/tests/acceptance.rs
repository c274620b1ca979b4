//! The acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use omega_ineq::decide::{decide, refute, Budget, Verdict};
use omega_ineq::lang::{level_entries, LangExpr};
use omega_ineq::monoid::small_monoids;
use omega_ineq::proof::{check_proof, search_proof, Inequality};
use omega_ineq::term::{
    canonical_j, decompositions, letter, mu, normalize_a, parse_term, Decomposition, MuPair,
    OmegaTerm,
};
use omega_ineq::Level;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn t(s: &str) -> OmegaTerm {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn d(l: &str, r: &str) -> Decomposition {
    Decomposition::new(t(l), t(r))
}

fn reference_examples() -> Outcome {
    let fig = t("(a (a b^w))^w (a b^w)");
    let variant = t("(a (a b^w))^w (a (b^w)^w)");
    if mu(&fig) != MuPair::new(2, 0) {
        return Err(format!("mu of the tree term is {}", mu(&fig)));
    }
    if mu(&variant) != MuPair::new(2, 1) {
        return Err(format!("mu of the variant is {}", mu(&variant)));
    }

    let ab: HashSet<Decomposition> = decompositions(&t("a b"), 2).into_iter().collect();
    let expected: HashSet<Decomposition> =
        [d("1", "a b"), d("a", "1 b"), d("a 1", "b"), d("a b", "1")]
            .into_iter()
            .collect();
    if ab != expected {
        return Err(format!("decompositions of a b: {ab:?}"));
    }

    // ((ab)^k s1, s2 (ab)^l) for the four (s1, s2) above, with k or l = ω
    let got: HashSet<Decomposition> = decompositions(&t("(a b)^w"), 1).into_iter().collect();
    let mut family = HashSet::new();
    for (s1, s2) in [("1", "a b"), ("a", "1 b"), ("a 1", "b"), ("a b", "1")] {
        for (k, l) in [("w", "0"), ("w", "1"), ("w", "w"), ("0", "w"), ("1", "w")] {
            let left = match k {
                "0" => format!("({s1})"),
                "1" => format!("(a b) ({s1})"),
                _ => format!("(a b)^w ({s1})"),
            };
            let right = match l {
                "0" => format!("({s2})"),
                "1" => format!("({s2}) (a b)"),
                _ => format!("({s2}) (a b)^w"),
            };
            family.insert(d(&left, &right));
        }
    }
    if got != family {
        return Err(format!(
            "decompositions of (a b)^w: {} found, {} expected",
            got.len(),
            family.len()
        ));
    }
    for (l, r) in [
        ("(a b)^w 1", "a b"),
        ("(a b)^w a", "1 b"),
        ("(a b)^w (a 1)", "b"),
        ("(a b)^w (a b)", "1"),
    ] {
        if !got.contains(&d(l, r)) {
            return Err(format!("missing ({l}, {r})"));
        }
    }
    for (l, r) in [("(a b)^w", "1"), ("(a b)^w a", "b"), ("(a b)^w", "(a b)^w")] {
        if got.contains(&d(l, r)) {
            return Err(format!("({l}, {r}) is not a decomposition"));
        }
    }
    Ok(format!("mu (2,0)/(2,1); 4 + {} decompositions", got.len()))
}

fn pairs() -> Vec<(OmegaTerm, OmegaTerm)> {
    random_pairs(2024, 200, 10, 4)
}

fn half_level_oracle() -> Outcome {
    let budget = Budget::default();
    let (mut holds, mut fails) = (0, 0);
    for (u, v) in pairs() {
        let oracle = expansion_oracle(&u, &v, &abc(), 5);
        let got = match decide(&u, &v, Level::HALF, &budget).map_err(|e| e.to_string())? {
            Verdict::Holds(_) => true,
            Verdict::Fails(_) => false,
            Verdict::Unknown(_) => return Err(format!("{u} <= {v}: unknown at 1/2")),
        };
        if got != oracle {
            return Err(format!("{u} <= {v}: decide {got}, oracle {oracle}"));
        }
        if got {
            holds += 1;
        } else {
            fails += 1;
        }
    }
    Ok(format!("200/200 agree ({holds} hold, {fails} fail)"))
}

fn level_one_agreement() -> Outcome {
    let budget = Budget::default();
    let mut equal = 0;
    for (i, (u, v)) in pairs().into_iter().enumerate() {
        let same_j = canonical_j(&u) == canonical_j(&v);
        let holds = |x: &OmegaTerm, y: &OmegaTerm, level| {
            matches!(decide(x, y, level, &budget), Ok(Verdict::Holds(_)))
        };
        let both_halves = holds(&u, &v, Level::HALF) && holds(&v, &u, Level::HALF);
        let verdict = decide(&u, &v, Level::ONE, &budget).map_err(|e| e.to_string())?;
        let at_one = matches!(verdict, Verdict::Holds(_));
        if same_j != both_halves || same_j != at_one {
            return Err(format!(
                "{u} vs {v}: canonical {same_j}, halves {both_halves}, level 1 {at_one}"
            ));
        }
        match &verdict {
            Verdict::Fails(w) => w.replay(&u, &v).map_err(|e| format!("{u} <= {v}: {e}"))?,
            _ if i % 10 == 0 => {
                if let Some(w) = refute(&u, &v, Level::ONE, &budget).map_err(|e| e.to_string())? {
                    return Err(format!("{u} = {v} over J, yet refuted by {}", w.expr));
                }
            }
            _ => {}
        }
        if same_j {
            equal += 1;
        }
    }
    Ok(format!("200/200 agree ({equal} equal over J)"))
}

fn proof_smoke() -> Outcome {
    let budget = Budget::default();
    for (l, r) in [
        ("(a b)^w", "(a b)^w b (a b)^w"),
        ("a^w (a b)^w", "a^w (a b)^w b (a b)^w"),
    ] {
        let goal = Inequality::new(t(l), t(r));
        let p = search_proof(&goal, Level::THREE_HALVES, &budget)
            .ok_or(format!("no proof of {goal}"))?;
        check_proof(&p, &budget).map_err(|e| format!("{goal}: {e}"))?;
        if p.conclusion() != Some(&goal) {
            return Err(format!("proof of {goal} concludes something else"));
        }
    }
    let w = refute(&t("1"), &t("a"), Level::ONE, &budget)
        .map_err(|e| e.to_string())?
        .ok_or("no witness for 1 <= a at level 1")?;
    w.replay(&t("1"), &t("a"))?;
    if w.expr != LangExpr::complement(LangExpr::upset(&[letter('a')])) {
        return Err(format!("unexpected witness {}", w.expr));
    }
    let (u, v) = (t("(a b)^w"), t("a^w b^w"));
    let w = refute(&u, &v, Level::THREE_HALVES, &budget)
        .map_err(|e| e.to_string())?
        .ok_or("no witness for (ab)^w <= a^w b^w at level 3/2")?;
    w.replay(&u, &v)?;
    Ok(format!(
        "2 proofs validated; witnesses {} and {}",
        LangExpr::complement(LangExpr::upset(&[letter('a')])),
        w.expr
    ))
}

fn soundness_sweeps() -> Outcome {
    let aperiodic = aperiodic_monoids(3);
    let j_trivial = j_trivial_monoids(4);
    let terms = random_terms(77, 100, 10, 4);
    let mut checks = 0;
    for s in &terms {
        if let Some(e) = evaluation_mismatch(&aperiodic, s, &normalize_a(s)) {
            return Err(format!("normal form: {e}"));
        }
        if let Some(e) = evaluation_mismatch(&j_trivial, s, &canonical_j(s).to_term()) {
            return Err(format!("canonical form: {e}"));
        }
        for dec in decompositions(s, 2) {
            let joined = OmegaTerm::concat(dec.left.clone(), dec.right.clone());
            if let Some(e) = evaluation_mismatch(&aperiodic, s, &joined) {
                return Err(format!("decomposition {dec}: {e}"));
            }
            checks += 1;
        }
    }
    let mut elements = 0;
    for m in small_monoids(4) {
        let f = factorial(m.size());
        for s in 0..m.size() {
            if m.omega_power(s) != m.pow(s, f) {
                return Err(format!(
                    "omega power of {} in a monoid of size {}",
                    m.name(s),
                    m.size()
                ));
            }
            elements += 1;
        }
    }
    Ok(format!(
        "100 terms, {checks} decompositions, {elements} omega powers, 0 violations"
    ))
}

fn dual_consistency() -> Outcome {
    let big = Budget::default().scaled(10);
    let pairs = random_pairs(606, 100, 6, 3);
    let (mut proved, mut refuted) = (0, 0);
    for (u, v) in &pairs {
        let goal = Inequality::new(u.clone(), v.clone());
        let proof = search_proof(&goal, Level::THREE_HALVES, &big);
        if let Some(p) = &proof {
            check_proof(p, &Budget::default()).map_err(|e| format!("{goal}: {e}"))?;
            proved += 1;
        }
        let witness = refute(u, v, Level::THREE_HALVES, &big).map_err(|e| e.to_string())?;
        if let Some(w) = &witness {
            w.replay(u, v).map_err(|e| format!("{goal}: {e}"))?;
            refuted += 1;
        }
        if proof.is_some() && witness.is_some() {
            return Err(format!("{goal}: proved and refuted"));
        }
    }
    for (u, v) in &pairs {
        let mut names = Vec::new();
        for slice in [1, 16, 256] {
            let budget = Budget {
                prover_slice: slice,
                refuter_slice: slice,
                ..Budget::default()
            };
            let verdict = decide(u, v, Level::THREE_HALVES, &budget).map_err(|e| e.to_string())?;
            names.push(match verdict {
                Verdict::Holds(e) => format!("holds {e:?}"),
                Verdict::Fails(w) => format!("fails {w:?}"),
                Verdict::Unknown(_) => "unknown".to_string(),
            });
        }
        if names[0] != names[1] || names[1] != names[2] {
            return Err(format!("{u} <= {v}: verdict depends on the slice size"));
        }
    }
    Ok(format!(
        "{proved} proved, {refuted} refuted, {} open, 0 conflicts",
        100 - proved - refuted
    ))
}

fn mu_monotone() -> Outcome {
    let mut checks = 0;
    for s in random_terms(31337, 100, 10, 4) {
        let m = mu(&s);
        for dec in decompositions(&s, 2) {
            if mu(&dec.right) > m {
                return Err(format!(
                    "{s}: mu {} < mu({}) = {}",
                    m,
                    dec.right,
                    mu(&dec.right)
                ));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} decompositions, 0 violations"))
}

fn main() -> ExitCode {
    // warm the language streams used below so timings reflect the checks
    let _ = level_entries(Level::THREE_HALVES, &abc()[..2], 1);
    let criteria: [Criterion; 7] = [
        ("reference examples", reference_examples),
        ("level 1/2 oracle equivalence", half_level_oracle),
        ("level 1 triple agreement", level_one_agreement),
        ("proof system smoke", proof_smoke),
        ("soundness sweeps", soundness_sweeps),
        ("dual consistency fuzz", dual_consistency),
        ("mu monotonicity", mu_monotone),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
