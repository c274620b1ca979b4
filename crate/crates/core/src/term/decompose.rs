//! Syntactic decompositions of ω-terms and the μ measure.
//!
//! A decomposition of `t` is a pair `(l, r)` built by structural induction:
//! letters and `1` split as `(1, t)` and `(t, 1)`; a product splits inside
//! either factor; and `s^ω` splits as `(s^k · s₁, s₂ · s^ℓ)` for a
//! decomposition `(s₁, s₂)` of `s` with at least one of `k, ℓ` equal to ω.
//! Every factorization of the represented ω-word arises this way.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Add;

use super::{power, OmegaTerm};

/// A non-negative integer or ω, ordered with ω on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(usize),
    Omega,
}

impl Exponent {
    /// `s^self · rest`, where `s^0 · rest` is just `rest`.
    pub fn prefix(self, base: &OmegaTerm, rest: OmegaTerm) -> OmegaTerm {
        match self {
            Exponent::Finite(0) => rest,
            Exponent::Finite(k) => OmegaTerm::concat(power(base, k).expect("k >= 1"), rest),
            Exponent::Omega => OmegaTerm::concat(OmegaTerm::omega(base.clone()), rest),
        }
    }

    /// `rest · s^self`, where `rest · s^0` is just `rest`.
    pub fn suffix(self, rest: OmegaTerm, base: &OmegaTerm) -> OmegaTerm {
        match self {
            Exponent::Finite(0) => rest,
            Exponent::Finite(k) => OmegaTerm::concat(rest, power(base, k).expect("k >= 1")),
            Exponent::Omega => OmegaTerm::concat(rest, OmegaTerm::omega(base.clone())),
        }
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
            (Exponent::Finite(_), Exponent::Omega) => Ordering::Less,
            (Exponent::Omega, Exponent::Finite(_)) => Ordering::Greater,
            (Exponent::Omega, Exponent::Omega) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Exponent {
    type Output = Exponent;

    fn add(self, rhs: Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Omega,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::Omega => write!(f, "w"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub left: OmegaTerm,
    pub right: OmegaTerm,
}

impl Decomposition {
    pub fn new(left: OmegaTerm, right: OmegaTerm) -> Self {
        Decomposition { left, right }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

/// All decompositions of `t` whose integer exponents lie in `0..=exp_bound`
/// (ω is always allowed). Structurally equal pairs are reported once, in
/// order of first generation.
pub fn decompositions(t: &OmegaTerm, exp_bound: usize) -> Vec<Decomposition> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for d in raw_decompositions(t, exp_bound) {
        if seen.insert(d.clone()) {
            out.push(d);
        }
    }
    out
}

fn raw_decompositions(t: &OmegaTerm, exp_bound: usize) -> Vec<Decomposition> {
    match t {
        OmegaTerm::Identity | OmegaTerm::Letter(_) => vec![
            Decomposition::new(OmegaTerm::Identity, t.clone()),
            Decomposition::new(t.clone(), OmegaTerm::Identity),
        ],
        OmegaTerm::Concat(t1, t2) => {
            let mut out = Vec::new();
            for d in raw_decompositions(t1, exp_bound) {
                out.push(Decomposition::new(
                    d.left,
                    OmegaTerm::concat(d.right, (**t2).clone()),
                ));
            }
            for d in raw_decompositions(t2, exp_bound) {
                out.push(Decomposition::new(
                    OmegaTerm::concat((**t1).clone(), d.left),
                    d.right,
                ));
            }
            out
        }
        OmegaTerm::OmegaPower(s) => {
            let inner = raw_decompositions(s, exp_bound);
            let exps: Vec<Exponent> = (0..=exp_bound)
                .map(Exponent::Finite)
                .chain(std::iter::once(Exponent::Omega))
                .collect();
            let mut out = Vec::new();
            for d in &inner {
                for &k in &exps {
                    for &l in &exps {
                        if k != Exponent::Omega && l != Exponent::Omega {
                            continue;
                        }
                        out.push(Decomposition::new(
                            k.prefix(s, d.left.clone()),
                            l.suffix(d.right.clone(), s),
                        ));
                    }
                }
            }
            out
        }
    }
}

/// The pair (μ_ω, μ_ℓ): ω-nesting along a branch, then the number of right
/// descendants above the topmost ω on a deepest branch. Compared
/// lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MuPair {
    pub mu_omega: usize,
    pub mu_ell: usize,
}

impl MuPair {
    pub fn new(mu_omega: usize, mu_ell: usize) -> Self {
        MuPair { mu_omega, mu_ell }
    }
}

impl Add for MuPair {
    type Output = MuPair;

    fn add(self, rhs: MuPair) -> MuPair {
        MuPair::new(self.mu_omega + rhs.mu_omega, self.mu_ell + rhs.mu_ell)
    }
}

impl fmt::Display for MuPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.mu_omega, self.mu_ell)
    }
}

pub fn mu(t: &OmegaTerm) -> MuPair {
    match t {
        OmegaTerm::Identity | OmegaTerm::Letter(_) => MuPair::new(0, 0),
        OmegaTerm::OmegaPower(s) => MuPair::new(mu(s).mu_omega + 1, 0),
        OmegaTerm::Concat(t1, t2) => {
            if t2.is_omega_power() {
                mu(t1).max(mu(t2))
            } else {
                mu(t1).max(mu(t2) + MuPair::new(0, 1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn t(s: &str) -> OmegaTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn exponent_order_and_sum() {
        assert!(Exponent::Finite(1_000) < Exponent::Omega);
        assert_eq!(
            Exponent::Finite(2) + Exponent::Finite(3),
            Exponent::Finite(5)
        );
        assert_eq!(Exponent::Finite(2) + Exponent::Omega, Exponent::Omega);
    }

    #[test]
    fn letter_and_identity() {
        assert_eq!(
            decompositions(&t("a"), 2),
            vec![
                Decomposition::new(OmegaTerm::Identity, t("a")),
                Decomposition::new(t("a"), OmegaTerm::Identity)
            ]
        );
        // (1, 1) twice, merged
        assert_eq!(
            decompositions(&t("1"), 2),
            vec![Decomposition::new(OmegaTerm::Identity, OmegaTerm::Identity)]
        );
    }

    #[test]
    fn omega_family_size() {
        // 4 decompositions of a·b, times the 5 admissible (k, ℓ) with k, ℓ ∈ {0, 1, ω}.
        assert_eq!(decompositions(&t("(a b)^w"), 1).len(), 20);
        // exp_bound 2: 7 admissible pairs.
        assert_eq!(decompositions(&t("(a b)^w"), 2).len(), 28);
        // (1^w) collapses: (1,1) and (1,1) coincide before the exponents apply
        assert!(decompositions(&t("1^w"), 0).len() < 2 * 3);
    }

    #[test]
    fn mu_basics() {
        assert_eq!(mu(&t("a")), MuPair::new(0, 0));
        assert_eq!(mu(&t("1")), MuPair::new(0, 0));
        assert_eq!(mu(&t("a^w")), MuPair::new(1, 0));
        // right descendants count only when the right factor is not an ω-power
        assert_eq!(mu(&t("a (b c)")), MuPair::new(0, 2));
        assert_eq!(mu(&t("a b c")), MuPair::new(0, 1));
        assert_eq!(mu(&t("a b^w")), MuPair::new(1, 0));
        assert_eq!(mu(&t("a (b b^w)")), MuPair::new(1, 1));
    }
}
