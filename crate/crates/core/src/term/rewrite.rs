//! Sound, bounded rewriting toward equality over aperiodic monoids.
//!
//! Terms are first flattened (associativity), then rewritten innermost- and
//! leftmost-first with the oriented identities
//!
//! ```text
//! (x^ω)^ω → x^ω        (x^r)^ω → x^ω  (r ≥ 2)     1^ω → 1
//! x^ω x^ω → x^ω        x x^ω → x^ω    x^ω x → x^ω
//! (p q)^ω p → p (q p)^ω
//! ```
//!
//! All of them hold in every finite aperiodic monoid, so the result always
//! denotes the same ω-word as the input. Distinct normal forms do not prove
//! distinctness; [`equal_over_a`] falls back on small aperiodic monoids for
//! that direction.

use super::{Letter, OmegaTerm};
use crate::monoid::{small_monoids, Counterexample, OrderedMonoid};

/// A factor of a flattened term: a letter or an ω-power of a flattened word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Letter(Letter),
    Omega(Vec<Factor>),
}

pub(crate) fn flatten(t: &OmegaTerm) -> Vec<Factor> {
    let mut out = Vec::new();
    flatten_into(t, &mut out);
    out
}

fn flatten_into(t: &OmegaTerm, out: &mut Vec<Factor>) {
    match t {
        OmegaTerm::Identity => {}
        OmegaTerm::Letter(l) => out.push(Factor::Letter(*l)),
        OmegaTerm::Concat(a, b) => {
            flatten_into(a, out);
            flatten_into(b, out);
        }
        OmegaTerm::OmegaPower(b) => out.push(Factor::Omega(flatten(b))),
    }
}

/// Left-associated term for a flattened word.
pub(crate) fn unflatten(word: &[Factor]) -> OmegaTerm {
    OmegaTerm::product(word.iter().map(|f| match f {
        Factor::Letter(l) => OmegaTerm::Letter(*l),
        Factor::Omega(b) => OmegaTerm::omega(unflatten(b)),
    }))
}

/// Default rewrite budget: `10 · n²` for a term with `n` nodes.
pub fn default_rewrite_budget(t: &OmegaTerm) -> usize {
    let n = t.size();
    10 * n * n
}

/// Flattened normal form under the default budget.
pub fn normal_form(t: &OmegaTerm) -> Vec<Factor> {
    normal_form_with_budget(t, default_rewrite_budget(t))
}

/// Flattened normal form after at most `steps` rewrites.
pub fn normal_form_with_budget(t: &OmegaTerm, steps: usize) -> Vec<Factor> {
    rewrite_word(flatten(t), steps, true)
}

/// As [`normal_form_with_budget`] without the rotation rule, so that the
/// factors of `t` keep their positions.
pub(crate) fn unrotated_normal_form(word: &[Factor], steps: usize) -> Vec<Factor> {
    rewrite_word(word.to_vec(), steps, false)
}

fn rewrite_word(mut word: Vec<Factor>, steps: usize, rotate: bool) -> Vec<Factor> {
    // rotations only once nothing else applies anywhere
    for _ in 0..steps {
        if !rewrite_once(&mut word, false) && !(rotate && rewrite_once(&mut word, true)) {
            break;
        }
    }
    word
}

pub fn normalize_a(t: &OmegaTerm) -> OmegaTerm {
    unflatten(&normal_form(t))
}

/// As [`normalize_a`] with an explicit step budget; on exhaustion the last
/// reduct is returned (still equal to `t` over A).
pub fn normalize_a_with_budget(t: &OmegaTerm, steps: usize) -> OmegaTerm {
    unflatten(&normal_form_with_budget(t, steps))
}

/// Smallest `x` with `word = x^r`.
fn primitive_root(word: &[Factor]) -> &[Factor] {
    let n = word.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| word[i] == word[i - d]) {
            return &word[..d];
        }
    }
    word
}

/// Performs the first applicable rewrite, if any.
fn rewrite_once(seq: &mut Vec<Factor>, rotate: bool) -> bool {
    for i in 0..seq.len() {
        let base = match &mut seq[i] {
            Factor::Omega(base) => {
                if rewrite_once(base, rotate) {
                    return true;
                }
                base
            }
            Factor::Letter(_) => continue,
        };
        // 1^ω → 1
        if base.is_empty() {
            seq.remove(i);
            return true;
        }
        // (x^ω)^ω → x^ω
        if base.len() == 1 && matches!(base[0], Factor::Omega(_)) {
            let inner = base.pop().expect("one factor");
            seq[i] = inner;
            return true;
        }
        // (x^r)^ω → x^ω
        let root_len = primitive_root(base).len();
        if root_len < base.len() {
            base.truncate(root_len);
            return true;
        }
        let x = base.clone();
        let rest = &seq[i + 1..];
        // x^ω x^ω → x^ω
        if let Some(Factor::Omega(next)) = rest.first() {
            if *next == x {
                seq.remove(i + 1);
                return true;
            }
        }
        // x^ω x → x^ω
        if rest.starts_with(&x) {
            seq.drain(i + 1..i + 1 + x.len());
            return true;
        }
        // x x^ω → x^ω
        if i >= x.len() && seq[i - x.len()..i] == x[..] {
            seq.drain(i - x.len()..i);
            return true;
        }
        // (p q)^ω p → p (q p)^ω
        if !rotate {
            continue;
        }
        for plen in 1..x.len() {
            if rest.starts_with(&x[..plen]) {
                let mut rotated = x[plen..].to_vec();
                rotated.extend_from_slice(&x[..plen]);
                let mut replacement = x[..plen].to_vec();
                replacement.push(Factor::Omega(rotated));
                seq.splice(i..i + 1 + plen, replacement);
                return true;
            }
        }
    }
    false
}

/// A pair of distinct values in a small aperiodic monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub monoid: OrderedMonoid,
    pub witness: Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AEquality {
    Equal,
    Distinct(Box<Separation>),
    Unknown,
}

/// Three-valued equality over finite aperiodic monoids: `Equal` when the
/// rewrite normal forms coincide, `Distinct` when some aperiodic monoid of
/// size at most `refute_size` separates the terms, `Unknown` otherwise.
pub fn equal_over_a(t1: &OmegaTerm, t2: &OmegaTerm, refute_size: usize) -> AEquality {
    if normal_form(t1) == normal_form(t2) {
        return AEquality::Equal;
    }
    for m in small_monoids(refute_size)
        .iter()
        .filter(|m| m.is_aperiodic())
    {
        if let Some(witness) = m.separating_assignment(t1, t2) {
            return AEquality::Distinct(Box::new(Separation {
                monoid: m.clone(),
                witness,
            }));
        }
    }
    AEquality::Unknown
}
