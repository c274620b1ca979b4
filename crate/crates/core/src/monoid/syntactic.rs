//! Syntactic ordered monoids of regular languages, computed as transition
//! monoids of minimal automata.

use std::collections::HashMap;

use super::{Assignment, MonoidSpec, OrderedMonoid};
use crate::automata::Dfa;
use crate::error::Error;
use crate::term::{format_word, Letter};

/// A language presented as `φ⁻¹(F)` for an ordered monoid `M`, a letter
/// assignment `φ` and an up-closed filter `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognizedLanguage {
    pub monoid: OrderedMonoid,
    pub assignment: Assignment,
    pub filter: Vec<bool>,
}

impl RecognizedLanguage {
    pub fn accepts(&self, word: &[Letter]) -> Result<bool, Error> {
        Ok(self.filter[self.monoid.eval_word(&self.assignment, word)?])
    }

    pub fn is_up_closed(&self) -> bool {
        let n = self.monoid.size();
        (0..n).all(|x| !self.filter[x] || (0..n).all(|y| !self.monoid.leq(x, y) || self.filter[y]))
    }
}

/// Syntactic ordered monoid of `L(dfa)`.
///
/// Elements are the distinct state transformations of the minimized
/// automaton, discovered breadth-first from the identity (letters in
/// alphabet order), and named by their shortest representative word. The
/// order is the context order `m ≤ n ⟺ ∀p,q: pmq ∈ F ⟹ pnq ∈ F`.
pub fn syntactic_ordered_monoid(dfa: &Dfa) -> Result<RecognizedLanguage, Error> {
    syntactic_ordered_monoid_capped(dfa, usize::MAX)?
        .ok_or_else(|| Error::Automaton("transition monoid too large".into()))
}

/// As [`syntactic_ordered_monoid`], but gives up (returning `None`) once the
/// monoid would exceed `cap` elements.
pub fn syntactic_ordered_monoid_capped(
    dfa: &Dfa,
    cap: usize,
) -> Result<Option<RecognizedLanguage>, Error> {
    let dfa = dfa.minimize();
    let q = dfa.states();
    let alphabet = dfa.alphabet().to_vec();
    let identity: Vec<usize> = (0..q).collect();
    let generators: Vec<Vec<usize>> = (0..alphabet.len())
        .map(|c| (0..q).map(|s| dfa.next_by_index(s, c)).collect())
        .collect();

    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    index.insert(identity, 0);
    let mut i = 0;
    while i < elements.len() {
        for (c, g) in generators.iter().enumerate() {
            // apply element i, then the letter
            let next: Vec<usize> = elements[i].iter().map(|&s| g[s]).collect();
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Ok(None);
                }
                index.insert(next.clone(), elements.len());
                let mut w = words[i].clone();
                w.push(alphabet[c]);
                words.push(w);
                elements.push(next);
            }
        }
        i += 1;
    }

    let n = elements.len();
    let mut table = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            let composed: Vec<usize> = elements[x].iter().map(|&s| elements[y][s]).collect();
            table[x][y] = index[&composed];
        }
    }
    let start = dfa.initial();
    let filter: Vec<bool> = elements
        .iter()
        .map(|f| dfa.is_accepting(f[start]))
        .collect();

    // pmq ∈ F depends on m only through the state reached from p(start);
    // so m ≤ n iff for every reachable state s and every q, acceptance from
    // m(s) under q implies acceptance from n(s) under q.
    let accepts_after = |state: usize, qq: usize| dfa.is_accepting(elements[qq][state]);
    let reachable: Vec<usize> = {
        let mut r: Vec<usize> = elements.iter().map(|f| f[start]).collect();
        r.sort();
        r.dedup();
        r
    };
    let mut leq = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            leq[x][y] = reachable.iter().all(|&s| {
                let sx = elements[x][s];
                let sy = elements[y][s];
                (0..n).all(|qq| !accepts_after(sx, qq) || accepts_after(sy, qq))
            });
        }
    }

    let names = words.iter().map(|w| format_word(w)).collect();
    let monoid = OrderedMonoid::new(MonoidSpec {
        names,
        identity: 0,
        table,
        leq,
    })?;
    let assignment = Assignment::from_pairs(
        alphabet
            .iter()
            .enumerate()
            .map(|(c, &l)| (l, index[&generators[c]])),
    );
    Ok(Some(RecognizedLanguage {
        monoid,
        assignment,
        filter,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{letter, parse_term};

    fn ab() -> Vec<Letter> {
        vec![letter('a'), letter('b')]
    }

    /// Brute-force context order over all pairs of elements, written
    /// independently of the state-based shortcut above.
    fn context_order(r: &RecognizedLanguage) -> Vec<Vec<bool>> {
        let m = &r.monoid;
        let n = m.size();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        (0..n).all(|p| {
                            (0..n).all(|q| {
                                !r.filter[m.mul(m.mul(p, x), q)] || r.filter[m.mul(m.mul(p, y), q)]
                            })
                        })
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn contains_a() {
        let d = Dfa::new(ab(), 0, vec![false, true], vec![vec![1, 0], vec![1, 1]]).unwrap();
        let r = syntactic_ordered_monoid(&d).unwrap();
        let m = &r.monoid;
        assert_eq!(m.size(), 2);
        let z = r.assignment.get(letter('a')).unwrap();
        assert_eq!(r.assignment.get(letter('b')), Some(m.identity()));
        assert_eq!(m.mul(z, z), z);
        assert!(m.leq(m.identity(), z) && !m.leq(z, m.identity()));
        assert_eq!(r.filter, vec![false, true]);
        assert!(r.is_up_closed());
        assert_eq!(context_order(&r), m.spec().leq);
        assert!(m.satisfies(&parse_term("1").unwrap(), &parse_term("x").unwrap()));
    }

    #[test]
    fn full_language_is_trivial() {
        let r = syntactic_ordered_monoid(&Dfa::trivial(&ab(), true)).unwrap();
        assert_eq!(r.monoid.size(), 1);
        assert_eq!(r.filter, vec![true]);
    }

    #[test]
    fn empty_word_language() {
        // {ε} over {a}: state 0 accepting, 1 a rejecting sink
        let d = Dfa::new(
            vec![letter('a')],
            0,
            vec![true, false],
            vec![vec![1], vec![1]],
        )
        .unwrap();
        let r = syntactic_ordered_monoid(&d).unwrap();
        let m = &r.monoid;
        assert_eq!(m.size(), 2);
        let z = r.assignment.get(letter('a')).unwrap();
        assert_eq!(m.mul(z, 0), z);
        assert_eq!(m.mul(z, z), z);
        assert!(r.filter[m.identity()]);
        assert!(m.leq(z, m.identity()) && !m.leq(m.identity(), z));
        assert_eq!(context_order(&r), m.spec().leq);
    }

    #[test]
    fn recognition_agrees_with_automaton() {
        // words over {a,b} whose length is even and that end in b
        let d = Dfa::new(
            ab(),
            0,
            vec![false, false, false, true],
            vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![1, 2]],
        )
        .unwrap();
        let r = syntactic_ordered_monoid(&d).unwrap();
        assert!(r.is_up_closed());
        assert_eq!(context_order(&r), r.monoid.spec().leq);
        let mut words: Vec<Vec<Letter>> = vec![vec![]];
        for len in 1..=6 {
            let prev: Vec<Vec<Letter>> = words
                .iter()
                .filter(|w| w.len() == len - 1)
                .cloned()
                .collect();
            for w in prev {
                for l in ab() {
                    let mut v = w.clone();
                    v.push(l);
                    words.push(v);
                }
            }
        }
        for w in &words {
            assert_eq!(r.accepts(w).unwrap(), d.accepts(w), "{w:?}");
        }
    }

    #[test]
    fn cap_is_respected() {
        let d = Dfa::new(ab(), 0, vec![false, true], vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert!(syntactic_ordered_monoid_capped(&d, 1).unwrap().is_none());
        assert!(syntactic_ordered_monoid_capped(&d, 2).unwrap().is_some());
    }
}
