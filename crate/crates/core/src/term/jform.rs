//! Canonical forms over J-trivial monoids and the subword automata built
//! from them.

use std::fmt;

use super::rewrite::{flatten, Factor};
use super::{Letter, OmegaTerm};
use crate::automata::Nfa;

/// A set of letters of `a..z`, as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterSet(u32);

impl LetterSet {
    pub fn empty() -> LetterSet {
        LetterSet(0)
    }

    pub fn singleton(l: Letter) -> LetterSet {
        LetterSet(1 << l.index())
    }

    pub fn insert(&mut self, l: Letter) {
        self.0 |= 1 << l.index();
    }

    pub fn contains(self, l: Letter) -> bool {
        self.0 >> l.index() & 1 == 1
    }

    pub fn union(self, other: LetterSet) -> LetterSet {
        LetterSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in increasing order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..Letter::COUNT)
            .filter(move |&i| self.0 >> i & 1 == 1)
            .map(Letter::from_index)
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut s = LetterSet::empty();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JAtom {
    Letter(Letter),
    /// `(c₁ c₂ … c_k)^ω` for the content `{c₁ < … < c_k}`.
    Block(LetterSet),
}

impl JAtom {
    fn content(self) -> LetterSet {
        match self {
            JAtom::Letter(l) => LetterSet::singleton(l),
            JAtom::Block(c) => c,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JCanonicalForm {
    pub atoms: Vec<JAtom>,
}

impl JCanonicalForm {
    pub fn to_term(&self) -> OmegaTerm {
        OmegaTerm::product(self.atoms.iter().map(|a| match *a {
            JAtom::Letter(l) => OmegaTerm::Letter(l),
            JAtom::Block(c) => {
                OmegaTerm::omega(OmegaTerm::product(c.letters().map(OmegaTerm::Letter)))
            }
        }))
    }

    /// Whether the adjacency conditions of a canonical form hold.
    pub fn is_canonical(&self) -> bool {
        self.atoms.windows(2).all(|w| match (w[0], w[1]) {
            (JAtom::Block(x), JAtom::Block(y)) => !x.is_subset(y) && !y.is_subset(x),
            (JAtom::Block(x), JAtom::Letter(l)) | (JAtom::Letter(l), JAtom::Block(x)) => {
                !x.contains(l)
            }
            _ => true,
        }) && self.atoms.iter().all(|a| !a.content().is_empty())
    }
}

impl fmt::Display for JCanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match *a {
                JAtom::Letter(l) => write!(f, "{l}")?,
                JAtom::Block(c) if c.len() == 1 => {
                    write!(f, "{}^w", c.letters().next().expect("one letter"))?
                }
                JAtom::Block(c) => {
                    write!(f, "(")?;
                    for l in c.letters() {
                        write!(f, "{l}")?;
                    }
                    write!(f, ")^w")?;
                }
            }
        }
        Ok(())
    }
}

fn content(word: &[Factor]) -> LetterSet {
    let mut s = LetterSet::empty();
    for f in word {
        match f {
            Factor::Letter(l) => s.insert(*l),
            Factor::Omega(b) => s = s.union(content(b)),
        }
    }
    s
}

/// Canonical form over J: ω-powers become content blocks, then letters next
/// to a block containing them are absorbed and adjacent comparable blocks
/// merge, until nothing changes.
pub fn canonical_j(t: &OmegaTerm) -> JCanonicalForm {
    canonical_j_flat(&flatten(t))
}

pub(crate) fn canonical_j_flat(word: &[Factor]) -> JCanonicalForm {
    let mut atoms: Vec<JAtom> = word
        .iter()
        .filter_map(|f| match f {
            Factor::Letter(l) => Some(JAtom::Letter(*l)),
            Factor::Omega(b) => {
                let c = content(b);
                (!c.is_empty()).then_some(JAtom::Block(c))
            }
        })
        .collect();
    'outer: loop {
        for i in 0..atoms.len().saturating_sub(1) {
            let merged = match (atoms[i], atoms[i + 1]) {
                (JAtom::Block(x), JAtom::Block(y)) if y.is_subset(x) => Some(x),
                (JAtom::Block(x), JAtom::Block(y)) if x.is_subset(y) => Some(y),
                (JAtom::Block(x), JAtom::Letter(l)) | (JAtom::Letter(l), JAtom::Block(x))
                    if x.contains(l) =>
                {
                    Some(x)
                }
                _ => None,
            };
            if let Some(c) = merged {
                atoms.splice(i..i + 2, [JAtom::Block(c)]);
                continue 'outer;
            }
        }
        break;
    }
    JCanonicalForm { atoms }
}

/// Automaton for the subwords of `t`, read off its canonical form: a letter
/// is an optional edge, a block is a state looping on its content.
pub fn subword_nfa(t: &OmegaTerm) -> Nfa {
    let form = canonical_j(t);
    let mut nfa = Nfa::new(1);
    nfa.add_initial(0);
    let mut cur = 0;
    for atom in &form.atoms {
        let next = nfa.add_state();
        match *atom {
            JAtom::Letter(l) => {
                nfa.add_transition(cur, Some(l), next);
                nfa.add_transition(cur, None, next);
            }
            JAtom::Block(c) => {
                nfa.add_transition(cur, None, next);
                for l in c.letters() {
                    nfa.add_transition(next, Some(l), next);
                }
            }
        }
        cur = next;
    }
    nfa.set_accepting(cur, true);
    nfa
}

/// Whether `w` is a subword of some `t^(k)`.
pub fn subword_of(w: &[Letter], t: &OmegaTerm) -> bool {
    subword_nfa(t).accepts(w)
}
