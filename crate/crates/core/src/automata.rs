//! Finite automata over sub-alphabets of `a..z`.
//!
//! States are indexed `0..n`. A [`Dfa`] is always complete; its transition
//! table is stored row-major as `delta[state * |alphabet| + letter_position]`.
//! [`Dfa::minimize`] renumbers states in breadth-first order from the
//! initial state, so two minimal automata over the same alphabet recognize
//! the same language exactly when they are structurally equal.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::Error;
use crate::term::Letter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    states: usize,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    /// `None` labels an ε-move.
    transitions: Vec<Vec<(Option<Letter>, usize)>>,
}

impl Nfa {
    pub fn new(states: usize) -> Nfa {
        Nfa {
            states,
            initial: Vec::new(),
            accepting: vec![false; states],
            transitions: vec![Vec::new(); states],
        }
    }

    pub fn add_state(&mut self) -> usize {
        self.states += 1;
        self.accepting.push(false);
        self.transitions.push(Vec::new());
        self.states - 1
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn add_initial(&mut self, q: usize) {
        assert!(q < self.states, "state {q} out of range");
        if !self.initial.contains(&q) {
            self.initial.push(q);
        }
    }

    pub fn set_accepting(&mut self, q: usize, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn add_transition(&mut self, from: usize, label: Option<Letter>, to: usize) {
        assert!(from < self.states && to < self.states, "state out of range");
        if !self.transitions[from].contains(&(label, to)) {
            self.transitions[from].push((label, to));
        }
    }

    pub fn transitions(&self, q: usize) -> &[(Option<Letter>, usize)] {
        &self.transitions[q]
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        self.transitions
            .iter()
            .flatten()
            .filter_map(|(l, _)| *l)
            .collect()
    }

    pub fn epsilon_closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(label, to) in &self.transitions[q] {
                if label.is_none() && set.insert(to) {
                    stack.push(to);
                }
            }
        }
    }

    fn step(&self, set: &BTreeSet<usize>, letter: Letter) -> BTreeSet<usize> {
        let mut next: BTreeSet<usize> = set
            .iter()
            .flat_map(|&q| self.transitions[q].iter())
            .filter(|(l, _)| *l == Some(letter))
            .map(|&(_, to)| to)
            .collect();
        self.epsilon_closure(&mut next);
        next
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut current: BTreeSet<usize> = self.initial.iter().copied().collect();
        self.epsilon_closure(&mut current);
        for &l in word {
            current = self.step(&current, l);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|&q| self.accepting[q])
    }

    /// Subset construction over `alphabet`, followed by minimization.
    pub fn determinize(&self, alphabet: &[Letter]) -> Dfa {
        let alphabet = normalize_alphabet(alphabet);
        let mut start: BTreeSet<usize> = self.initial.iter().copied().collect();
        self.epsilon_closure(&mut start);
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let current = sets[i].clone();
            for &l in &alphabet {
                let next = self.step(&current, l);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        index.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = sets
            .iter()
            .map(|s| s.iter().any(|&q| self.accepting[q]))
            .collect();
        Dfa {
            alphabet,
            initial: 0,
            accepting,
            delta,
        }
        .minimize()
    }
}

fn normalize_alphabet(alphabet: &[Letter]) -> Vec<Letter> {
    let set: BTreeSet<Letter> = alphabet.iter().copied().collect();
    set.into_iter().collect()
}

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Vec<Letter>,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<usize>,
}

impl Dfa {
    /// `delta[q]` lists the successor of `q` for each letter of `alphabet`
    /// (in the order given). Rejects incomplete or out-of-range tables.
    pub fn new(
        alphabet: Vec<Letter>,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Dfa, Error> {
        let n = accepting.len();
        if n == 0 {
            return Err(Error::Automaton("automaton has no states".into()));
        }
        if initial >= n {
            return Err(Error::Automaton(format!(
                "initial state {initial} out of range"
            )));
        }
        if delta.len() != n {
            return Err(Error::Automaton(format!(
                "transition table has {} rows for {n} states",
                delta.len()
            )));
        }
        let mut sorted = alphabet.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != alphabet.len() {
            return Err(Error::Automaton(
                "alphabet lists a letter twice (non-deterministic)".into(),
            ));
        }
        let mut flat = vec![0; n * sorted.len()];
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::Automaton(format!(
                    "state {q} has {} transitions, expected {} (incomplete)",
                    row.len(),
                    alphabet.len()
                )));
            }
            for (pos, &to) in row.iter().enumerate() {
                if to >= n {
                    return Err(Error::Automaton(format!(
                        "transition target {to} out of range"
                    )));
                }
                let col = sorted
                    .binary_search(&alphabet[pos])
                    .expect("letter present");
                flat[q * sorted.len() + col] = to;
            }
        }
        Ok(Dfa {
            alphabet: sorted,
            initial,
            accepting,
            delta: flat,
        })
    }

    /// One-state automaton accepting nothing (or everything).
    pub fn trivial(alphabet: &[Letter], accept: bool) -> Dfa {
        let alphabet = normalize_alphabet(alphabet);
        let delta = vec![0; alphabet.len()];
        Dfa {
            alphabet,
            initial: 0,
            accepting: vec![accept],
            delta,
        }
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    fn column(&self, l: Letter) -> Option<usize> {
        self.alphabet.binary_search(&l).ok()
    }

    /// Successor by the letter at position `col` of the alphabet.
    pub fn next_by_index(&self, q: usize, col: usize) -> usize {
        self.delta[q * self.alphabet.len() + col]
    }

    pub fn next(&self, q: usize, l: Letter) -> Option<usize> {
        self.column(l).map(|c| self.next_by_index(q, c))
    }

    pub fn run_from(&self, q: usize, word: &[Letter]) -> Option<usize> {
        word.iter().try_fold(q, |q, &l| self.next(q, l))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.run_from(self.initial, word)
            .is_some_and(|q| self.accepting[q])
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            accepting: self.accepting.iter().map(|a| !a).collect(),
            delta: self.delta.clone(),
        }
    }

    /// Product automaton; `combine` decides acceptance of a pair of states.
    pub fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Result<Dfa, Error> {
        self.same_alphabet(other)?;
        let k = self.alphabet.len();
        let mut index = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert((self.initial, other.initial), 0usize);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for c in 0..k {
                let next = (self.next_by_index(p, c), other.next_by_index(q, c));
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| combine(self.accepting[p], other.accepting[q]))
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting,
            delta,
        }
        .minimize())
    }

    fn same_alphabet(&self, other: &Dfa) -> Result<(), Error> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.states());
        nfa.add_initial(self.initial);
        for q in 0..self.states() {
            nfa.set_accepting(q, self.accepting[q]);
            for (c, &l) in self.alphabet.iter().enumerate() {
                nfa.add_transition(q, Some(l), self.next_by_index(q, c));
            }
        }
        nfa
    }

    /// Removes unreachable states, merges equivalent ones (Moore
    /// refinement) and renumbers breadth-first from the initial state.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.bfs_order();
        let mut class: HashMap<usize, usize> = reach
            .iter()
            .map(|&q| (q, usize::from(self.accepting[q])))
            .collect();
        let mut classes = class.values().collect::<BTreeSet<_>>().len();
        loop {
            let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next_class = HashMap::new();
            for &q in &reach {
                let succ: Vec<usize> = (0..k).map(|c| class[&self.next_by_index(q, c)]).collect();
                let key = (class[&q], succ);
                let n = sig_index.len();
                let id = *sig_index.entry(key).or_insert(n);
                next_class.insert(q, id);
            }
            let count = sig_index.len();
            class = next_class;
            if count == classes {
                break;
            }
            classes = count;
        }
        // Renumber classes breadth-first from the initial class.
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut repr = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        order.insert(class[&self.initial], 0);
        repr.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for c in 0..k {
                let to = self.next_by_index(q, c);
                let cl = class[&to];
                if let std::collections::hash_map::Entry::Vacant(e) = order.entry(cl) {
                    e.insert(repr.len());
                    repr.push(to);
                    queue.push_back(to);
                }
            }
        }
        let mut delta = Vec::with_capacity(repr.len() * k);
        for &q in &repr {
            for c in 0..k {
                delta.push(order[&class[&self.next_by_index(q, c)]]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting: repr.iter().map(|&q| self.accepting[q]).collect(),
            delta,
        }
    }

    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for c in 0..self.alphabet.len() {
                let to = self.next_by_index(q, c);
                if !seen[to] {
                    seen[to] = true;
                    order.push(to);
                }
            }
            i += 1;
        }
        order
    }

    /// A shortest accepted word, if any (ties broken by alphabet order).
    pub fn shortest_accepted(&self) -> Option<Vec<Letter>> {
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; self.states()];
        let mut seen = vec![false; self.states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((prev, l)) = parent[cur] {
                    word.push(l);
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            for (c, &l) in self.alphabet.iter().enumerate() {
                let to = self.next_by_index(q, c);
                if !seen[to] {
                    seen[to] = true;
                    parent[to] = Some((q, l));
                    queue.push_back(to);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// Re-expresses the automaton over a larger alphabet; new letters lead
    /// to a rejecting sink.
    pub fn extend_alphabet(&self, alphabet: &[Letter]) -> Dfa {
        let target = normalize_alphabet(alphabet);
        if target == self.alphabet {
            return self.clone();
        }
        let n = self.states();
        let sink = n;
        let mut delta = Vec::with_capacity((n + 1) * target.len());
        for q in 0..=n {
            for &l in &target {
                let to = if q == sink {
                    sink
                } else {
                    self.next(q, l).unwrap_or(sink)
                };
                delta.push(to);
            }
        }
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Dfa {
            alphabet: target,
            initial: self.initial,
            accepting,
            delta,
        }
        .minimize()
    }
}

/// Whether `L(a) ⊆ L(b)`; on failure returns a shortest word of `L(a) \ L(b)`.
pub fn dfa_included(a: &Dfa, b: &Dfa) -> Result<Result<(), Vec<Letter>>, Error> {
    let diff = a.product(b, |x, y| x && !y)?;
    Ok(match diff.shortest_accepted() {
        None => Ok(()),
        Some(w) => Err(w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::letter;

    fn ab() -> Vec<Letter> {
        vec![letter('a'), letter('b')]
    }

    /// A*aA* over {a, b}.
    fn contains_a() -> Dfa {
        Dfa::new(ab(), 0, vec![false, true], vec![vec![1, 0], vec![1, 1]]).unwrap()
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(Dfa::new(ab(), 0, vec![false], vec![vec![0]]).is_err());
        assert!(Dfa::new(ab(), 2, vec![false], vec![vec![0, 0]]).is_err());
        assert!(Dfa::new(ab(), 0, vec![false], vec![vec![0, 3]]).is_err());
        assert!(Dfa::new(
            vec![letter('a'), letter('a')],
            0,
            vec![false],
            vec![vec![0, 0]]
        )
        .is_err());
    }

    #[test]
    fn minimization_merges_equivalent_states() {
        // Two copies of the accepting sink.
        let d = Dfa::new(
            ab(),
            0,
            vec![false, true, true],
            vec![vec![1, 0], vec![2, 1], vec![1, 2]],
        )
        .unwrap();
        let m = d.minimize();
        assert_eq!(m.states(), 2);
        assert_eq!(m, contains_a().minimize());
    }

    #[test]
    fn complement_and_inclusion() {
        let l = contains_a();
        let all = Dfa::trivial(&ab(), true);
        assert_eq!(dfa_included(&l, &all).unwrap(), Ok(()));
        assert_eq!(dfa_included(&all, &l).unwrap(), Err(vec![]));
        assert_eq!(dfa_included(&l, &l).unwrap(), Ok(()));
        let none = l.product(&l.complement(), |x, y| x && y).unwrap();
        assert!(none.is_empty());
        assert_eq!(none.states(), 1);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = Dfa::trivial(&[letter('a')], true);
        let b = Dfa::trivial(&ab(), true);
        assert!(matches!(dfa_included(&a, &b), Err(Error::AlphabetMismatch)));
        let widened = a.extend_alphabet(&ab());
        assert!(widened.accepts(&[letter('a'), letter('a')]));
        assert!(!widened.accepts(&[letter('b')]));
    }

    #[test]
    fn nfa_epsilon_and_subset_construction() {
        // (a|ε)(b|ε)
        let mut n = Nfa::new(3);
        n.add_initial(0);
        n.set_accepting(2, true);
        n.add_transition(0, Some(letter('a')), 1);
        n.add_transition(0, None, 1);
        n.add_transition(1, Some(letter('b')), 2);
        n.add_transition(1, None, 2);
        let d = n.determinize(&ab());
        for (w, ok) in [
            ("", true),
            ("a", true),
            ("b", true),
            ("ab", true),
            ("ba", false),
            ("aa", false),
        ] {
            let word: Vec<Letter> = w.chars().map(letter).collect();
            assert_eq!(n.accepts(&word), ok, "{w}");
            assert_eq!(d.accepts(&word), ok, "{w}");
        }
    }
}
