//! Independent oracles shared by the integration tests. Nothing here calls
//! into the automata, rewriting or canonical-form code it is used to check.
#![allow(dead_code)]

use omega_ineq::monoid::{small_monoids, Assignment, OrderedMonoid};
use omega_ineq::random::TermGen;
use omega_ineq::term::{letter, Letter, OmegaTerm};

pub fn abc() -> Vec<Letter> {
    vec![letter('a'), letter('b'), letter('c')]
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn words(alphabet: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in alphabet {
                let mut v: Vec<Letter> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn is_subsequence(w: &[Letter], u: &[Letter]) -> bool {
    let mut it = u.iter();
    w.iter().all(|x| it.any(|y| y == x))
}

/// `u ≤ v` at level 1/2 by brute force: every word of length `≤ n` that is
/// a subword of `u` (exponents expanded to `n + 1`) is a subword of `v`.
pub fn expansion_oracle(u: &OmegaTerm, v: &OmegaTerm, alphabet: &[Letter], n: usize) -> bool {
    let eu = u.expand(n + 1);
    let ev = v.expand(n + 1);
    words(alphabet, n)
        .iter()
        .all(|w| !is_subsequence(w, &eu) || is_subsequence(w, &ev))
}

pub fn random_terms(seed: u64, count: usize, max_nodes: usize, max_depth: usize) -> Vec<OmegaTerm> {
    let mut g = TermGen::new(seed, &abc(), max_nodes, max_depth);
    (0..count).map(|_| g.term()).collect()
}

pub fn random_pairs(
    seed: u64,
    count: usize,
    max_nodes: usize,
    max_depth: usize,
) -> Vec<(OmegaTerm, OmegaTerm)> {
    let mut g = TermGen::new(seed, &abc(), max_nodes, max_depth);
    (0..count).map(|_| g.pair()).collect()
}

/// Every assignment of `letters` into `m`.
pub fn assignments(m: &OrderedMonoid, letters: &[Letter]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for &l in letters {
        let mut next = Vec::new();
        for a in &out {
            for x in 0..m.size() {
                let mut b = a.clone();
                b.insert(l, x);
                next.push(b);
            }
        }
        out = next;
    }
    out
}

pub fn aperiodic_monoids(max_size: usize) -> Vec<&'static OrderedMonoid> {
    small_monoids(max_size)
        .iter()
        .filter(|m| m.is_aperiodic())
        .collect()
}

pub fn j_trivial_monoids(max_size: usize) -> Vec<&'static OrderedMonoid> {
    small_monoids(max_size)
        .iter()
        .filter(|m| m.is_j_trivial())
        .collect()
}

/// The first pair of assignments-and-monoids where `s` and `t` evaluate
/// differently, if any.
pub fn evaluation_mismatch(
    monoids: &[&OrderedMonoid],
    s: &OmegaTerm,
    t: &OmegaTerm,
) -> Option<String> {
    let mut letters: Vec<Letter> = s.letters().union(&t.letters()).copied().collect();
    letters.sort();
    for m in monoids {
        for phi in assignments(m, &letters) {
            let x = m.eval(&phi, s).expect("all letters assigned");
            let y = m.eval(&phi, t).expect("all letters assigned");
            if x != y {
                return Some(format!(
                    "{s} vs {t} under {} in a monoid of size {}",
                    phi.display(m),
                    m.size()
                ));
            }
        }
    }
    None
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
