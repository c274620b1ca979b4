//! Finite ordered monoids and the evaluation of ω-terms in them.

mod enumerate;
mod json;
mod syntactic;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::error::Error;
use crate::term::{Letter, OmegaTerm};

pub use enumerate::{
    enumerate_ordered_monoids, monoid_tables, small_monoids, MAX_ENUMERATION_SIZE,
};
pub use json::MonoidFile;
pub use syntactic::{
    syntactic_ordered_monoid, syntactic_ordered_monoid_capped, RecognizedLanguage,
};

/// The first defect found by [`MonoidSpec::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("a monoid needs at least one element")]
    Empty,
    #[error("element name {0:?} is used twice")]
    DuplicateName(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("identity index {0} out of range")]
    IdentityOutOfRange(usize),
    #[error("table must be {expected}x{expected}")]
    TableShape { expected: usize },
    #[error("table entry ({row}, {col}) = {value} out of range")]
    TableOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("order must be {expected}x{expected}")]
    OrderShape { expected: usize },
    #[error("({x}{y}){z} differs from {x}({y}{z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("identity fails on {x}")]
    NotIdentity { x: String },
    #[error("{x} <= {x} is missing")]
    NotReflexive { x: String },
    #[error("{x} <= {y} and {y} <= {x} with {x} != {y}")]
    NotAntisymmetric { x: String, y: String },
    #[error("{x} <= {y} <= {z} but not {x} <= {z}")]
    NotTransitive { x: String, y: String, z: String },
    #[error("{x} <= {y} is not preserved by multiplication with {by}")]
    NotCompatible { x: String, y: String, by: String },
}

/// Unvalidated monoid data: names, identity, multiplication table and order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidSpec {
    pub names: Vec<String>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    pub leq: Vec<Vec<bool>>,
}

impl MonoidSpec {
    /// Checks table range, associativity, identity, partial-order axioms and
    /// compatibility, in that order; reports the first failure.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.names.len();
        if n == 0 {
            return Err(Violation::Empty);
        }
        for (i, name) in self.names.iter().enumerate() {
            if self.names[..i].contains(name) {
                return Err(Violation::DuplicateName(name.clone()));
            }
        }
        if self.identity >= n {
            return Err(Violation::IdentityOutOfRange(self.identity));
        }
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(Violation::TableShape { expected: n });
        }
        for (row, r) in self.table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(Violation::TableOutOfRange { row, col, value });
                }
            }
        }
        if self.leq.len() != n || self.leq.iter().any(|r| r.len() != n) {
            return Err(Violation::OrderShape { expected: n });
        }
        let name = |i: usize| self.names[i].clone();
        let m = |x: usize, y: usize| self.table[x][y];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(Violation::NotAssociative {
                            x: name(x),
                            y: name(y),
                            z: name(z),
                        });
                    }
                }
            }
        }
        for x in 0..n {
            if m(self.identity, x) != x || m(x, self.identity) != x {
                return Err(Violation::NotIdentity { x: name(x) });
            }
        }
        let le = |x: usize, y: usize| self.leq[x][y];
        for x in 0..n {
            if !le(x, x) {
                return Err(Violation::NotReflexive { x: name(x) });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && le(x, y) && le(y, x) {
                    return Err(Violation::NotAntisymmetric {
                        x: name(x),
                        y: name(y),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !le(x, y) {
                    continue;
                }
                for z in 0..n {
                    if le(y, z) && !le(x, z) {
                        return Err(Violation::NotTransitive {
                            x: name(x),
                            y: name(y),
                            z: name(z),
                        });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !le(x, y) {
                    continue;
                }
                for u in 0..n {
                    if !le(m(u, x), m(u, y)) || !le(m(x, u), m(y, u)) {
                        return Err(Violation::NotCompatible {
                            x: name(x),
                            y: name(y),
                            by: name(u),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A validated finite ordered monoid. Elements are indices `0..size()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMonoid {
    names: Vec<String>,
    identity: usize,
    table: Vec<usize>,
    leq: Vec<bool>,
    omega: Vec<usize>,
}

impl OrderedMonoid {
    pub fn new(spec: MonoidSpec) -> Result<OrderedMonoid, Violation> {
        spec.validate()?;
        let n = spec.names.len();
        let mut m = OrderedMonoid {
            names: spec.names,
            identity: spec.identity,
            table: spec.table.into_iter().flatten().collect(),
            leq: spec.leq.into_iter().flatten().collect(),
            omega: Vec::new(),
        };
        m.omega = (0..n).map(|s| m.idempotent_power(s)).collect();
        Ok(m)
    }

    /// Same table with the discrete (equality) order.
    pub fn discrete(
        names: Vec<String>,
        identity: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<OrderedMonoid, Violation> {
        let n = names.len();
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        OrderedMonoid::new(MonoidSpec {
            names,
            identity,
            table,
            leq,
        })
    }

    pub fn spec(&self) -> MonoidSpec {
        let n = self.size();
        MonoidSpec {
            names: self.names.clone(),
            identity: self.identity,
            table: self.table.chunks(n).map(|r| r.to_vec()).collect(),
            leq: self.leq.chunks(n).map(|r| r.to_vec()).collect(),
        }
    }

    /// Always `Ok` for a constructed value; kept for symmetry with [`MonoidSpec::validate`].
    pub fn validate(&self) -> Result<(), Violation> {
        self.spec().validate()
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.names.len() + y]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.names.len() + y]
    }

    /// `s^k` by repeated squaring; `s^0` is the identity.
    pub fn pow(&self, s: usize, mut k: u128) -> usize {
        let mut base = s;
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn idempotent_power(&self, s: usize) -> usize {
        let mut p = s;
        for _ in 0..=self.size() {
            if self.mul(p, p) == p {
                return p;
            }
            p = self.mul(p, s);
        }
        unreachable!("some power of an element of a finite monoid is idempotent")
    }

    /// The unique idempotent among the powers of `s`.
    #[inline]
    pub fn omega_power(&self, s: usize) -> usize {
        self.omega[s]
    }

    pub fn is_aperiodic(&self) -> bool {
        (0..self.size()).all(|s| {
            let e = self.omega_power(s);
            self.mul(e, s) == e
        })
    }

    /// Whether every two-sided ideal `MxM` determines `x`.
    pub fn is_j_trivial(&self) -> bool {
        let n = self.size();
        let ideals: Vec<Vec<bool>> = (0..n)
            .map(|x| {
                let mut ideal = vec![false; n];
                for u in 0..n {
                    for v in 0..n {
                        ideal[self.mul(self.mul(u, x), v)] = true;
                    }
                }
                ideal
            })
            .collect();
        (0..n).all(|x| (0..x).all(|y| ideals[x] != ideals[y]))
    }

    /// Same monoid with the order reversed.
    pub fn dual(&self) -> OrderedMonoid {
        let n = self.size();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq(y, x);
            }
        }
        OrderedMonoid {
            names: self.names.clone(),
            identity: self.identity,
            table: self.table.clone(),
            leq,
            omega: self.omega.clone(),
        }
    }

    pub fn eval(&self, assignment: &Assignment, t: &OmegaTerm) -> Result<usize, Error> {
        Ok(match t {
            OmegaTerm::Identity => self.identity,
            OmegaTerm::Letter(l) => {
                let x = assignment.get(*l).ok_or(Error::Unassigned(*l))?;
                assert!(x < self.size(), "assignment image {x} out of range");
                x
            }
            OmegaTerm::Concat(a, b) => {
                self.mul(self.eval(assignment, a)?, self.eval(assignment, b)?)
            }
            OmegaTerm::OmegaPower(b) => self.omega_power(self.eval(assignment, b)?),
        })
    }

    pub fn eval_word(&self, assignment: &Assignment, word: &[Letter]) -> Result<usize, Error> {
        word.iter().try_fold(self.identity, |acc, &l| {
            let x = assignment.get(l).ok_or(Error::Unassigned(l))?;
            Ok(self.mul(acc, x))
        })
    }

    /// The first assignment (in odometer order over the sorted letters of
    /// `u` and `v`) under which `u ≤ v` fails.
    pub fn counterexample(&self, u: &OmegaTerm, v: &OmegaTerm) -> Option<Counterexample> {
        let mut letters = u.letters();
        letters.extend(v.letters());
        let letters: Vec<Letter> = letters.into_iter().collect();
        let pu = Program::compile(u, &letters);
        let pv = Program::compile(v, &letters);
        let mut images = vec![0usize; letters.len()];
        let mut stack = Vec::new();
        loop {
            let x = pu.run(self, &images, &mut stack);
            let y = pv.run(self, &images, &mut stack);
            if !self.leq(x, y) {
                let assignment =
                    Assignment::from_pairs(letters.iter().copied().zip(images.iter().copied()));
                return Some(Counterexample {
                    assignment,
                    lhs: x,
                    rhs: y,
                });
            }
            if !odometer(&mut images, self.size()) {
                return None;
            }
        }
    }

    /// Whether `φ(u) ≤ φ(v)` for every assignment `φ` of the letters of `u, v`.
    pub fn satisfies(&self, u: &OmegaTerm, v: &OmegaTerm) -> bool {
        self.counterexample(u, v).is_none()
    }

    /// The first assignment separating `u` and `v` as elements (ignores the order).
    pub fn separating_assignment(&self, u: &OmegaTerm, v: &OmegaTerm) -> Option<Counterexample> {
        let mut letters = u.letters();
        letters.extend(v.letters());
        let letters: Vec<Letter> = letters.into_iter().collect();
        let pu = Program::compile(u, &letters);
        let pv = Program::compile(v, &letters);
        let mut images = vec![0usize; letters.len()];
        let mut stack = Vec::new();
        loop {
            let x = pu.run(self, &images, &mut stack);
            let y = pv.run(self, &images, &mut stack);
            if x != y {
                let assignment =
                    Assignment::from_pairs(letters.iter().copied().zip(images.iter().copied()));
                return Some(Counterexample {
                    assignment,
                    lhs: x,
                    rhs: y,
                });
            }
            if !odometer(&mut images, self.size()) {
                return None;
            }
        }
    }
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// An assignment with `φ(lhs) ≰ φ(rhs)` (or `≠`, for separation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Assignment,
    pub lhs: usize,
    pub rhs: usize,
}

/// Images of letters in a monoid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    images: BTreeMap<Letter, usize>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Letter, usize)>>(pairs: I) -> Self {
        Assignment {
            images: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, l: Letter, x: usize) {
        self.images.insert(l, x);
    }

    pub fn get(&self, l: Letter) -> Option<usize> {
        self.images.get(&l).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.images.iter().map(|(&l, &x)| (l, x))
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn display<'a>(&'a self, m: &'a OrderedMonoid) -> impl fmt::Display + 'a {
        DisplayAssignment { a: self, m }
    }
}

struct DisplayAssignment<'a> {
    a: &'a Assignment,
    m: &'a OrderedMonoid,
}

impl fmt::Display for DisplayAssignment<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .a
            .iter()
            .map(|(l, x)| format!("{l}->{}", self.m.name(x)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A term compiled to postfix form over a fixed letter list, for evaluating
/// the same term under many assignments.
#[derive(Clone, Debug)]
pub struct Program {
    ops: Vec<Op>,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    One,
    Slot(usize),
    Mul,
    Omega,
}

impl Program {
    /// Panics if `t` uses a letter missing from `letters`.
    pub fn compile(t: &OmegaTerm, letters: &[Letter]) -> Program {
        fn go(t: &OmegaTerm, letters: &[Letter], ops: &mut Vec<Op>) {
            match t {
                OmegaTerm::Identity => ops.push(Op::One),
                OmegaTerm::Letter(l) => {
                    let slot = letters.iter().position(|x| x == l).expect("letter listed");
                    ops.push(Op::Slot(slot));
                }
                OmegaTerm::Concat(a, b) => {
                    go(a, letters, ops);
                    go(b, letters, ops);
                    ops.push(Op::Mul);
                }
                OmegaTerm::OmegaPower(b) => {
                    go(b, letters, ops);
                    ops.push(Op::Omega);
                }
            }
        }
        let mut ops = Vec::new();
        go(t, letters, &mut ops);
        Program { ops }
    }

    /// `images[i]` is the image of the i-th compiled letter.
    pub fn run(&self, m: &OrderedMonoid, images: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::One => stack.push(m.identity),
                Op::Slot(i) => stack.push(images[i]),
                Op::Mul => {
                    let y = stack.pop().expect("operand");
                    let x = stack.pop().expect("operand");
                    stack.push(m.mul(x, y));
                }
                Op::Omega => {
                    let x = stack.pop().expect("operand");
                    stack.push(m.omega_power(x));
                }
            }
        }
        stack.pop().expect("result")
    }
}
