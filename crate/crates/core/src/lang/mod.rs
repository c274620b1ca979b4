//! Level-indexed language expressions: marked products, Boolean
//! combinations, their automata, and a deterministic enumeration of each
//! level for the refuter.

mod compile;
mod enumerate;
mod json;

use std::fmt;

pub use crate::automata::{dfa_included, Dfa};
pub use crate::level::Level;
pub use compile::expr_to_dfa;
pub use enumerate::{enumerate_level, level_entries, LangEntry, MAX_EXPR_SIZE, MAX_LEVEL};
pub use json::LangDocument;

use crate::error::Error;
use crate::term::Letter;

/// A language expression. `Product { parts, markers }` is the marked product
/// `L₀ a₁ L₁ ⋯ aₙ Lₙ`, so `parts.len() == markers.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LangExpr {
    Empty,
    All,
    Product {
        parts: Vec<LangExpr>,
        markers: Vec<Letter>,
    },
    Union(Vec<LangExpr>),
    Intersection(Vec<LangExpr>),
    Complement(Box<LangExpr>),
}

impl LangExpr {
    /// `A* w₁ A* ⋯ wₙ A*`: the words having `w` as a subword.
    pub fn upset(w: &[Letter]) -> LangExpr {
        LangExpr::Product {
            parts: vec![LangExpr::All; w.len() + 1],
            markers: w.to_vec(),
        }
    }

    /// The trivial product `[L]`.
    pub fn wrap(inner: LangExpr) -> LangExpr {
        LangExpr::Product {
            parts: vec![inner],
            markers: Vec::new(),
        }
    }

    pub fn complement(inner: LangExpr) -> LangExpr {
        LangExpr::Complement(Box::new(inner))
    }

    /// Node count; every marker letter counts as one node.
    pub fn size(&self) -> usize {
        match self {
            LangExpr::Empty | LangExpr::All => 1,
            LangExpr::Product { parts, markers } => {
                1 + markers.len() + parts.iter().map(LangExpr::size).sum::<usize>()
            }
            LangExpr::Union(xs) | LangExpr::Intersection(xs) => {
                1 + xs.iter().map(LangExpr::size).sum::<usize>()
            }
            LangExpr::Complement(x) => 1 + x.size(),
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        match self {
            LangExpr::Empty | LangExpr::All => {}
            LangExpr::Product { parts, markers } => {
                out.extend_from_slice(markers);
                parts.iter().for_each(|p| p.collect_letters(out));
            }
            LangExpr::Union(xs) | LangExpr::Intersection(xs) => {
                xs.iter().for_each(|x| x.collect_letters(out))
            }
            LangExpr::Complement(x) => x.collect_letters(out),
        }
    }

    /// Checks that the expression is built as level `level` prescribes:
    /// `Empty`/`All` anywhere; at a half level, unions of marked products
    /// of the integer level below; at an integer level, Boolean
    /// combinations of the half level below.
    pub fn check_level(&self, level: Level) -> Result<(), Error> {
        let ill = || Error::IllLeveled(format!("{self} at level {level}"));
        match self {
            LangExpr::Empty | LangExpr::All => Ok(()),
            LangExpr::Product { parts, markers } => {
                if parts.len() != markers.len() + 1 {
                    return Err(Error::IllLeveled(format!(
                        "{self}: parts and markers do not alternate"
                    )));
                }
                if !level.is_half() {
                    return match level.pred() {
                        Some(below) => self.check_level(below),
                        None => Err(ill()),
                    };
                }
                let below = level.pred().expect("half levels are positive");
                parts.iter().try_for_each(|p| p.check_level(below))
            }
            LangExpr::Union(xs) => xs.iter().try_for_each(|x| x.check_level(level)),
            LangExpr::Intersection(_) | LangExpr::Complement(_)
                if level.is_half() || level == Level::ZERO =>
            {
                Err(ill())
            }
            LangExpr::Intersection(xs) => xs.iter().try_for_each(|x| x.check_level(level)),
            LangExpr::Complement(x) => x.check_level(level),
        }
    }

    /// Membership by direct recursion on the expression.
    pub fn contains(&self, word: &[Letter]) -> bool {
        match self {
            LangExpr::Empty => false,
            LangExpr::All => true,
            LangExpr::Product { parts, markers } => product_contains(parts, markers, word),
            LangExpr::Union(xs) => xs.iter().any(|x| x.contains(word)),
            LangExpr::Intersection(xs) => xs.iter().all(|x| x.contains(word)),
            LangExpr::Complement(x) => !x.contains(word),
        }
    }
}

fn product_contains(parts: &[LangExpr], markers: &[Letter], word: &[Letter]) -> bool {
    match markers.split_first() {
        None => parts[0].contains(word),
        Some((&a, rest)) => (0..word.len()).any(|i| {
            word[i] == a
                && parts[0].contains(&word[..i])
                && product_contains(&parts[1..], rest, &word[i + 1..])
        }),
    }
}

impl fmt::Display for LangExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[LangExpr], sep: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        };
        match self {
            LangExpr::Empty => write!(f, "0"),
            LangExpr::All => write!(f, "A*"),
            LangExpr::Product { parts, markers } => {
                write!(f, "[{}", parts[0])?;
                for (a, p) in markers.iter().zip(&parts[1..]) {
                    write!(f, " {a} {p}")?;
                }
                write!(f, "]")
            }
            LangExpr::Union(xs) if xs.is_empty() => write!(f, "0"),
            LangExpr::Intersection(xs) if xs.is_empty() => write!(f, "A*"),
            LangExpr::Union(xs) => join(f, xs, "|"),
            LangExpr::Intersection(xs) => join(f, xs, "&"),
            LangExpr::Complement(x) => write!(f, "!{x}"),
        }
    }
}
