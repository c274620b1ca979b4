//! ω-terms: finite trees over letters, the identity `1`, binary
//! concatenation and the unary ω-power.
//!
//! Concatenation is *not* associative at the term level: `a (b c)` and
//! `(a b) c` are different trees that happen to denote the same ω-word.
//! Semantic comparison lives in [`rewrite`] (over aperiodic monoids) and
//! [`jform`] (over J-trivial monoids).

mod decompose;
mod jform;
mod parse;
mod rewrite;

use std::collections::BTreeSet;
use std::fmt;

pub use decompose::{decompositions, mu, Decomposition, Exponent, MuPair};
pub use jform::{canonical_j, subword_nfa, subword_of, JAtom, JCanonicalForm, LetterSet};
pub use parse::{parse_term, parse_word};
pub use rewrite::{
    default_rewrite_budget, equal_over_a, normal_form, normal_form_with_budget, normalize_a,
    normalize_a_with_budget, AEquality, Factor, Separation,
};

pub(crate) use jform::canonical_j_flat;
pub(crate) use rewrite::{flatten, unflatten, unrotated_normal_form};

use crate::error::Error;

/// A letter of the fixed alphabet `a < b < … < z`, stored as its offset from `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const COUNT: usize = 26;

    pub fn new(c: char) -> Option<Letter> {
        if c.is_ascii_lowercase() {
            Some(Letter(c as u8 - b'a'))
        } else {
            None
        }
    }

    pub fn from_index(i: usize) -> Letter {
        assert!(i < Self::COUNT, "letter index {i} out of range");
        Letter(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn as_char(self) -> char {
        (b'a' + self.0) as char
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Convenience constructor for tests and examples. Panics outside `a..=z`.
pub fn letter(c: char) -> Letter {
    Letter::new(c).unwrap_or_else(|| panic!("not a letter: {c:?}"))
}

/// Renders a finite word; the empty word prints as `1`.
pub fn format_word(word: &[Letter]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|l| l.as_char()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaTerm {
    Identity,
    Letter(Letter),
    Concat(Box<OmegaTerm>, Box<OmegaTerm>),
    OmegaPower(Box<OmegaTerm>),
}

impl OmegaTerm {
    pub fn letter(c: char) -> OmegaTerm {
        OmegaTerm::Letter(letter(c))
    }

    pub fn concat(left: OmegaTerm, right: OmegaTerm) -> OmegaTerm {
        OmegaTerm::Concat(Box::new(left), Box::new(right))
    }

    pub fn omega(base: OmegaTerm) -> OmegaTerm {
        OmegaTerm::OmegaPower(Box::new(base))
    }

    /// Left-associated product of `factors`; the empty product is `1`.
    pub fn product<I: IntoIterator<Item = OmegaTerm>>(factors: I) -> OmegaTerm {
        factors
            .into_iter()
            .reduce(OmegaTerm::concat)
            .unwrap_or(OmegaTerm::Identity)
    }

    /// The word `w` as a left-associated product of letters.
    pub fn word(w: &[Letter]) -> OmegaTerm {
        OmegaTerm::product(w.iter().map(|&l| OmegaTerm::Letter(l)))
    }

    pub fn is_omega_power(&self) -> bool {
        matches!(self, OmegaTerm::OmegaPower(_))
    }

    /// Number of tree nodes.
    pub fn size(&self) -> usize {
        match self {
            OmegaTerm::Identity | OmegaTerm::Letter(_) => 1,
            OmegaTerm::Concat(l, r) => 1 + l.size() + r.size(),
            OmegaTerm::OmegaPower(b) => 1 + b.size(),
        }
    }

    /// Maximum number of ω-nodes on a root-to-leaf branch.
    pub fn omega_depth(&self) -> usize {
        match self {
            OmegaTerm::Identity | OmegaTerm::Letter(_) => 0,
            OmegaTerm::Concat(l, r) => l.omega_depth().max(r.omega_depth()),
            OmegaTerm::OmegaPower(b) => 1 + b.omega_depth(),
        }
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<Letter>) {
        match self {
            OmegaTerm::Identity => {}
            OmegaTerm::Letter(l) => {
                out.insert(*l);
            }
            OmegaTerm::Concat(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
            OmegaTerm::OmegaPower(b) => b.collect_letters(out),
        }
    }

    /// The finite word obtained by replacing every ω exponent with `k`.
    pub fn expand(&self, k: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        self.expand_into(k, &mut out);
        out
    }

    fn expand_into(&self, k: usize, out: &mut Vec<Letter>) {
        match self {
            OmegaTerm::Identity => {}
            OmegaTerm::Letter(l) => out.push(*l),
            OmegaTerm::Concat(l, r) => {
                l.expand_into(k, out);
                r.expand_into(k, out);
            }
            OmegaTerm::OmegaPower(b) => {
                let start = out.len();
                b.expand_into(k, out);
                let once = out[start..].to_vec();
                for _ in 1..k {
                    out.extend_from_slice(&once);
                }
                if k == 0 {
                    out.truncate(start);
                }
            }
        }
    }
}

/// `t^1 = t`, `t^(k+1) = t^k · t`. Exponent zero is not a term; callers
/// that mean "omit the factor" must handle it themselves.
pub fn power(t: &OmegaTerm, k: usize) -> Result<OmegaTerm, Error> {
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    let mut acc = t.clone();
    for _ in 1..k {
        acc = OmegaTerm::concat(acc, t.clone());
    }
    Ok(acc)
}

pub fn format_term(t: &OmegaTerm) -> String {
    t.to_string()
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::Identity => write!(f, "1"),
            OmegaTerm::Letter(l) => write!(f, "{l}"),
            OmegaTerm::Concat(l, r) => {
                // Juxtaposition associates to the left, so only a
                // right-nested product needs brackets.
                write!(f, "{l} ")?;
                if matches!(**r, OmegaTerm::Concat(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            OmegaTerm::OmegaPower(b) => match **b {
                OmegaTerm::Identity | OmegaTerm::Letter(_) => write!(f, "{b}^w"),
                _ => write!(f, "({b})^w"),
            },
        }
    }
}

impl std::str::FromStr for OmegaTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}
