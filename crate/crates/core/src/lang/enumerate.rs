//! Deterministic enumeration of the languages of a level.
//!
//! Candidates are produced in bands of equal expression size; each band is
//! sorted by the JSON serialization of its expressions, and an expression is
//! kept only when its minimal automaton is new. Streams are cached per
//! `(alphabet, level)` and extended on demand, so asking for more items
//! always extends the list returned for fewer.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use super::{expr_to_dfa, LangExpr, Level};
use crate::automata::Dfa;
use crate::error::Error;
use crate::monoid::{syntactic_ordered_monoid_capped, RecognizedLanguage};
use crate::term::Letter;

/// Largest expression size ever generated.
pub const MAX_EXPR_SIZE: usize = 16;
pub const MAX_LEVEL: Level = Level::from_twice(5);
/// How many items of the level below feed each level.
const LOWER_POOL: usize = 24;
const MAX_MARKERS: usize = 3;
/// Syntactic monoids above this size are not materialized.
const SYNT_HARD_CAP: usize = 256;

/// An enumerated language with its minimal automaton and, lazily, its
/// syntactic ordered monoid.
#[derive(Debug)]
pub struct LangEntry {
    pub expr: LangExpr,
    pub dfa: Dfa,
    synt: OnceLock<Option<RecognizedLanguage>>,
}

impl LangEntry {
    fn new(expr: LangExpr, dfa: Dfa) -> LangEntry {
        LangEntry {
            expr,
            dfa,
            synt: OnceLock::new(),
        }
    }

    /// The syntactic ordered monoid, unless it is unreasonably large.
    pub fn syntactic(&self) -> Option<&RecognizedLanguage> {
        self.synt
            .get_or_init(|| {
                syntactic_ordered_monoid_capped(&self.dfa, SYNT_HARD_CAP)
                    .expect("minimal automata are valid")
            })
            .as_ref()
    }
}

#[derive(Default)]
struct Stream {
    items: Vec<Arc<LangEntry>>,
    seen: HashSet<Dfa>,
    pending: VecDeque<LangExpr>,
    next_band: usize,
}

type Key = (Vec<Letter>, Level);

fn stream(key: Key) -> Arc<Mutex<Stream>> {
    static STREAMS: OnceLock<Mutex<HashMap<Key, Arc<Mutex<Stream>>>>> = OnceLock::new();
    let map = STREAMS.get_or_init(Default::default);
    let mut map = map.lock().expect("stream registry");
    map.entry(key)
        .or_insert_with(|| {
            Arc::new(Mutex::new(Stream {
                next_band: 1,
                ..Stream::default()
            }))
        })
        .clone()
}

/// The first `count` languages of level `level` over `alphabet` (fewer if
/// the size cap is reached first).
pub fn level_entries(
    level: Level,
    alphabet: &[Letter],
    count: usize,
) -> Result<Vec<Arc<LangEntry>>, Error> {
    if level > MAX_LEVEL {
        return Err(Error::UnsupportedLevel(level.to_string()));
    }
    let mut alphabet = alphabet.to_vec();
    alphabet.sort();
    alphabet.dedup();
    let cell = stream((alphabet.clone(), level));
    let mut s = cell.lock().expect("stream");
    while s.items.len() < count {
        if let Some(expr) = s.pending.pop_front() {
            let dfa = expr_to_dfa(&expr, &alphabet)?;
            if s.seen.insert(dfa.clone()) {
                s.items.push(Arc::new(LangEntry::new(expr, dfa)));
            }
            continue;
        }
        if s.next_band > MAX_EXPR_SIZE {
            break;
        }
        let band = s.next_band;
        s.next_band += 1;
        let own: Vec<LangExpr> = s.items.iter().map(|e| e.expr.clone()).collect();
        s.pending = candidates(level, &alphabet, band, &own)?.into();
    }
    Ok(s.items.iter().take(count).cloned().collect())
}

/// As [`level_entries`], returning only the expressions.
pub fn enumerate_level(
    level: Level,
    alphabet: &[Letter],
    count: usize,
) -> Result<Vec<LangExpr>, Error> {
    Ok(level_entries(level, alphabet, count)?
        .into_iter()
        .map(|e| e.expr.clone())
        .collect())
}

/// All candidate expressions of exactly `size` nodes, in serialization order.
fn candidates(
    level: Level,
    alphabet: &[Letter],
    size: usize,
    own: &[LangExpr],
) -> Result<Vec<LangExpr>, Error> {
    let mut out = Vec::new();
    match level.pred() {
        None => {
            if size == 1 {
                out.push(LangExpr::Empty);
                out.push(LangExpr::All);
            }
        }
        Some(below) if level.is_half() => {
            let pool = enumerate_level(below, alphabet, LOWER_POOL)?;
            for n in 0..=MAX_MARKERS.min(size.saturating_sub(2)) {
                if n > 0 && alphabet.is_empty() {
                    break;
                }
                // 1 + n + Σ sizes of the n + 1 parts
                if let Some(rest) = size.checked_sub(1 + n) {
                    products(
                        &pool,
                        alphabet,
                        n,
                        rest,
                        &mut Vec::new(),
                        &mut Vec::new(),
                        &mut out,
                    );
                }
            }
            pairs(own, size, &mut out, |x, y| LangExpr::Union(vec![x, y]));
        }
        Some(below) => {
            let pool = enumerate_level(below, alphabet, LOWER_POOL)?;
            out.extend(pool.into_iter().filter(|e| e.size() == size));
            out.extend(
                own.iter()
                    .filter(|e| e.size() + 1 == size)
                    .map(|e| LangExpr::complement(e.clone())),
            );
            pairs(own, size, &mut out, |x, y| LangExpr::Union(vec![x, y]));
            pairs(own, size, &mut out, |x, y| {
                LangExpr::Intersection(vec![x, y])
            });
        }
    }
    let mut keyed: Vec<(String, LangExpr)> = out
        .into_iter()
        .map(|e| (e.to_value().to_string(), e))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, e)| e).collect())
}

/// Binary combinations `x ∘ y` of earlier items (x before y) of total size `size`.
fn pairs(
    own: &[LangExpr],
    size: usize,
    out: &mut Vec<LangExpr>,
    make: impl Fn(LangExpr, LangExpr) -> LangExpr,
) {
    for (i, x) in own.iter().enumerate() {
        for y in &own[i + 1..] {
            if 1 + x.size() + y.size() == size {
                out.push(make(x.clone(), y.clone()));
            }
        }
    }
}

/// Marked products with `markers_left` more markers whose remaining parts
/// have total size exactly `rest`.
fn products(
    pool: &[LangExpr],
    alphabet: &[Letter],
    markers_left: usize,
    rest: usize,
    parts: &mut Vec<LangExpr>,
    markers: &mut Vec<Letter>,
    out: &mut Vec<LangExpr>,
) {
    for p in pool {
        let s = p.size();
        if s > rest {
            continue;
        }
        parts.push(p.clone());
        if markers_left == 0 {
            if s == rest {
                out.push(LangExpr::Product {
                    parts: parts.clone(),
                    markers: markers.clone(),
                });
            }
        } else {
            for &a in alphabet {
                markers.push(a);
                products(
                    pool,
                    alphabet,
                    markers_left - 1,
                    rest - s,
                    parts,
                    markers,
                    out,
                );
                markers.pop();
            }
        }
        parts.pop();
    }
}
