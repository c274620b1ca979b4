//! The four-rule inequational calculus over ω-terms: axioms, products,
//! ω-powers and transitivity. Proofs are checked step by step; equalities
//! between terms are always read over aperiodic monoids.

mod json;
mod search;

use std::fmt;

pub use json::ProofFile;
pub use search::{search_proof, search_proof_with, SearchOutcome};

use crate::decide::{decide, Budget, Verdict};
use crate::level::Level;
use crate::term::{
    default_rewrite_budget, equal_over_a, normal_form_with_budget, unflatten,
    unrotated_normal_form, AEquality, Factor, OmegaTerm,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub lhs: OmegaTerm,
    pub rhs: OmegaTerm,
}

impl Inequality {
    pub fn new(lhs: OmegaTerm, rhs: OmegaTerm) -> Inequality {
        Inequality { lhs, rhs }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

/// How a step follows; indices refer to earlier steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    Trivial,
    /// `u^ω ≤ u^ω v u^ω`, provided `v ≤ u` holds one level down.
    GammaAxiom {
        u: OmegaTerm,
        v: OmegaTerm,
    },
    Mul(usize, usize),
    OmegaRule(usize),
    Trans(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofStep {
    pub inequality: Inequality,
    pub rule: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub level: Level,
    pub steps: Vec<ProofStep>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Inequality> {
        self.steps.last().map(|s| &s.inequality)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let why = match &s.rule {
                Justification::Trivial => "trivial".to_string(),
                Justification::GammaAxiom { u, v } => format!("axiom u = {u}, v = {v}"),
                Justification::Mul(j, k) => format!("product of {j}, {k}"),
                Justification::OmegaRule(j) => format!("omega of {j}"),
                Justification::Trans(j, k) => format!("transitivity of {j}, {k}"),
            };
            writeln!(f, "{i:>3}. {}    [{why}]", s.inequality)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

/// Whether `v ≤ u` holds one level below `level` (the side condition of the
/// axiom `u^ω ≤ u^ω v u^ω`).
pub fn gamma_axiom_check(u: &OmegaTerm, v: &OmegaTerm, level: Level, budget: &Budget) -> Tri {
    let Some(below) = level.pred().and_then(Level::pred) else {
        return Tri::No;
    };
    if !level.is_half() || below == Level::ZERO {
        return Tri::No;
    }
    match decide(v, u, below, &budget.halved()) {
        Ok(Verdict::Holds(_)) => Tri::Yes,
        Ok(Verdict::Fails(_)) => Tri::No,
        Ok(Verdict::Unknown(_)) | Err(_) => Tri::Unknown,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidProof {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for InvalidProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

impl std::error::Error for InvalidProof {}

pub(crate) struct Normalizer {
    steps: Option<usize>,
}

impl Normalizer {
    pub(crate) fn new(budget: &Budget) -> Normalizer {
        Normalizer {
            steps: budget.rewrite_steps,
        }
    }

    pub(crate) fn nf(&self, t: &OmegaTerm) -> Vec<Factor> {
        match self.steps {
            Some(n) => normal_form_with_budget(t, n),
            None => crate::term::normal_form(t),
        }
    }

    /// Normal form without rotations, for matching factors positionally.
    pub(crate) fn unrotated(&self, w: &[Factor]) -> Vec<Factor> {
        let steps = self
            .steps
            .unwrap_or_else(|| default_rewrite_budget(&unflatten(w)));
        unrotated_normal_form(w, steps)
    }

    fn same(&self, a: &OmegaTerm, b: &OmegaTerm) -> bool {
        self.nf(a) == self.nf(b)
    }
}

/// Checks a single step against the earlier ones, except for the side
/// condition of an axiom.
pub(crate) fn check_step_shape(
    steps: &[ProofStep],
    i: usize,
    norm: &Normalizer,
) -> Result<(), String> {
    let step = &steps[i];
    let Inequality { lhs, rhs } = &step.inequality;
    let cite = |j: usize| -> Result<&Inequality, String> {
        if j < i {
            Ok(&steps[j].inequality)
        } else {
            Err(format!("cites step {j}, which does not precede it"))
        }
    };
    match &step.rule {
        Justification::Trivial => {
            if norm.same(lhs, rhs) {
                Ok(())
            } else {
                Err("sides are not equal over A".into())
            }
        }
        Justification::GammaAxiom { u, v } => {
            let uw = OmegaTerm::omega(u.clone());
            let rhs_shape = OmegaTerm::concat(OmegaTerm::concat(uw.clone(), v.clone()), uw.clone());
            if !norm.same(lhs, &uw) {
                return Err(format!("left side is not ({u})^w"));
            }
            if !norm.same(rhs, &rhs_shape) {
                return Err(format!("right side is not ({u})^w ({v}) ({u})^w"));
            }
            Ok(())
        }
        Justification::Mul(j, k) => {
            let (a, b) = (cite(*j)?, cite(*k)?);
            if !norm.same(lhs, &OmegaTerm::concat(a.lhs.clone(), b.lhs.clone())) {
                return Err(format!(
                    "left side is not the product of the left sides of {j} and {k}"
                ));
            }
            if !norm.same(rhs, &OmegaTerm::concat(a.rhs.clone(), b.rhs.clone())) {
                return Err(format!(
                    "right side is not the product of the right sides of {j} and {k}"
                ));
            }
            Ok(())
        }
        Justification::OmegaRule(j) => {
            let a = cite(*j)?;
            if !norm.same(lhs, &OmegaTerm::omega(a.lhs.clone()))
                || !norm.same(rhs, &OmegaTerm::omega(a.rhs.clone()))
            {
                return Err(format!("not the ω-power of step {j}"));
            }
            Ok(())
        }
        Justification::Trans(j, k) => {
            let (a, b) = (cite(*j)?, cite(*k)?);
            if !norm.same(lhs, &a.lhs) {
                return Err(format!("left side differs from that of step {j}"));
            }
            if !norm.same(&a.rhs, &b.lhs) {
                return Err(format!("steps {j} and {k} do not chain"));
            }
            if !norm.same(&b.rhs, rhs) {
                return Err(format!("right side differs from that of step {k}"));
            }
            Ok(())
        }
    }
}

/// Verifies every step; an axiom whose side condition cannot be settled
/// within `budget` is reported as undischarged.
pub fn check_proof(p: &Proof, budget: &Budget) -> Result<(), InvalidProof> {
    let fail = |step: usize, reason: String| Err(InvalidProof { step, reason });
    if p.steps.is_empty() {
        return fail(0, "empty proof".into());
    }
    if !p.level.is_half() || p.level < Level::THREE_HALVES {
        return fail(
            0,
            format!("proofs live at half levels from 3/2, not {}", p.level),
        );
    }
    let norm = Normalizer::new(budget);
    for i in 0..p.steps.len() {
        if let Err(reason) = check_step_shape(&p.steps, i, &norm) {
            let reason = match (&p.steps[i].rule, reason) {
                (Justification::Trivial, _) => {
                    let ineq = &p.steps[i].inequality;
                    match equal_over_a(&ineq.lhs, &ineq.rhs, budget.refute_size) {
                        AEquality::Distinct(_) => "sides are distinct over A".to_string(),
                        _ => "undischarged: equality over A not established".to_string(),
                    }
                }
                (_, r) => r,
            };
            return fail(i, reason);
        }
        if let Justification::GammaAxiom { u, v } = &p.steps[i].rule {
            match gamma_axiom_check(u, v, p.level, budget) {
                Tri::Yes => {}
                Tri::No => {
                    return fail(i, format!("side condition {v} <= {u} fails one level down"))
                }
                Tri::Unknown => return fail(i, format!("undischarged side condition {v} <= {u}")),
            }
        }
    }
    Ok(())
}
