//! Exhaustive enumeration of small (ordered) monoids.
//!
//! Tables are enumerated with the identity at index 0; isomorphism classes
//! are represented by the lexicographically least relabelling that fixes 0.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::{MonoidSpec, OrderedMonoid};

pub const MAX_ENUMERATION_SIZE: usize = 4;

fn element_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

/// Every associative multiplication table on `0..n` with identity 0.
fn all_tables(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let free: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
    let mut table = vec![0usize; n * n];
    for x in 0..n {
        table[x] = x;
        table[x * n] = x;
    }
    let mut out = Vec::new();
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &(x, y) in &free {
            table[x * n + y] = c % n;
            c /= n;
        }
        if is_associative(&table, n) {
            out.push(table.clone());
        }
    }
    out
}

fn is_associative(t: &[usize], n: usize) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = t[x * n + y];
            (0..n).all(|z| t[xy * n + z] == t[x * n + t[y * n + z]])
        })
    })
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

/// Relabelled table and order under `perm` (old index -> new index).
fn relabel(table: &[usize], leq: &[bool], n: usize, perm: &[usize]) -> (Vec<usize>, Vec<bool>) {
    let mut t = vec![0; n * n];
    let mut l = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            t[perm[x] * n + perm[y]] = perm[table[x * n + y]];
            l[perm[x] * n + perm[y]] = leq[x * n + y];
        }
    }
    (t, l)
}

fn canonical_key(
    table: &[usize],
    leq: &[bool],
    n: usize,
    perms: &[Vec<usize>],
) -> (Vec<usize>, Vec<bool>) {
    perms
        .iter()
        .map(|p| relabel(table, leq, n, p))
        .min()
        .expect("at least the identity permutation")
}

fn discrete_order(n: usize) -> Vec<bool> {
    (0..n * n).map(|i| i / n == i % n).collect()
}

/// Associative tables with identity 0 on exactly `n` elements, one per
/// isomorphism class when `dedup` is set.
pub fn monoid_tables(n: usize, dedup: bool) -> Vec<Vec<Vec<usize>>> {
    let tables = all_tables(n);
    let tables = if dedup {
        let perms = permutations_fixing_zero(n);
        let leq = discrete_order(n);
        let mut seen = BTreeSet::new();
        tables
            .into_iter()
            .filter(|t| seen.insert(canonical_key(t, &leq, n, &perms)))
            .collect()
    } else {
        tables
    };
    tables
        .into_iter()
        .map(|t| t.chunks(n).map(|r| r.to_vec()).collect())
        .collect()
}

/// All compatible partial orders on a table, as row-major relations.
fn compatible_orders(table: &[usize], n: usize) -> Vec<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = discrete_order(n);
        for (bit, &(x, y)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[x * n + y] = true;
            }
        }
        let ok_antisym = pairs
            .iter()
            .all(|&(x, y)| !(leq[x * n + y] && leq[y * n + x]));
        if !ok_antisym {
            continue;
        }
        let ok_trans = (0..n).all(|x| {
            (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| !leq[y * n + z] || leq[x * n + z]))
        });
        if !ok_trans {
            continue;
        }
        let ok_compat = (0..n).all(|x| {
            (0..n).all(|y| {
                !leq[x * n + y]
                    || (0..n).all(|u| {
                        leq[table[u * n + x] * n + table[u * n + y]]
                            && leq[table[x * n + u] * n + table[y * n + u]]
                    })
            })
        });
        if ok_compat {
            out.push(leq);
        }
    }
    out
}

/// Every ordered monoid of size `1..=max_size` (capped at
/// [`MAX_ENUMERATION_SIZE`]): each associative table with identity paired
/// with each compatible partial order. With `dedup`, one representative per
/// isomorphism class of ordered monoids.
pub fn enumerate_ordered_monoids(max_size: usize, dedup: bool) -> Vec<OrderedMonoid> {
    let max_size = max_size.min(MAX_ENUMERATION_SIZE);
    let mut out = Vec::new();
    for n in 1..=max_size {
        let perms = permutations_fixing_zero(n);
        let mut seen = BTreeSet::new();
        for table in all_tables(n) {
            for leq in compatible_orders(&table, n) {
                if dedup && !seen.insert(canonical_key(&table, &leq, n, &perms)) {
                    continue;
                }
                let spec = MonoidSpec {
                    names: element_names(n),
                    identity: 0,
                    table: table.chunks(n).map(|r| r.to_vec()).collect(),
                    leq: leq.chunks(n).map(|r| r.to_vec()).collect(),
                };
                out.push(OrderedMonoid::new(spec).expect("enumerated monoids are valid"));
            }
        }
    }
    out
}

/// Discretely ordered monoids of size `1..=max_size`, one per isomorphism
/// class. Cached; used as the refutation universe for ω-equalities.
pub fn small_monoids(max_size: usize) -> &'static [OrderedMonoid] {
    static CACHE: OnceLock<Vec<OrderedMonoid>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=MAX_ENUMERATION_SIZE {
            for table in monoid_tables(n, true) {
                out.push(
                    OrderedMonoid::discrete(element_names(n), 0, table)
                        .expect("enumerated monoids are valid"),
                );
            }
        }
        out
    });
    let max_size = max_size.min(MAX_ENUMERATION_SIZE);
    let end = all
        .iter()
        .position(|m| m.size() > max_size)
        .unwrap_or(all.len());
    &all[..end]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_small_tables() {
        assert_eq!(monoid_tables(1, true).len(), 1);
        // s² = 1 and s² = s
        assert_eq!(monoid_tables(2, true).len(), 2);
        assert_eq!(monoid_tables(2, false).len(), 2);
        // monoids of order 3 and 4 up to isomorphism
        assert_eq!(monoid_tables(3, true).len(), 7);
        assert_eq!(monoid_tables(4, true).len(), 35);
    }

    #[test]
    fn ordered_enumeration_is_valid() {
        let all = enumerate_ordered_monoids(3, false);
        assert_eq!(all.iter().filter(|m| m.size() == 1).count(), 1);
        for m in &all {
            assert_eq!(m.validate(), Ok(()));
        }
        // size 2: U1 admits three orders (discrete, 1<0, 0<1), Z2 only the discrete one
        assert_eq!(
            enumerate_ordered_monoids(2, true)
                .iter()
                .filter(|m| m.size() == 2)
                .count(),
            4
        );
    }

    #[test]
    fn small_monoid_cache_is_prefix_closed() {
        assert_eq!(small_monoids(1).len(), 1);
        assert_eq!(small_monoids(2).len(), 3);
        assert_eq!(small_monoids(4).len(), 1 + 2 + 7 + 35);
        assert!(small_monoids(9).len() == small_monoids(4).len());
    }
}
