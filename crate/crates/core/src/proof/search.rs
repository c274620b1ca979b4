//! Goal-directed, budgeted proof search.
//!
//! Goals are pairs of normalized flat words. A goal is closed by a trivial
//! step when both sides normalize alike; otherwise the left side drives the
//! search:
//!
//! * a product `f·w` is matched against the decompositions `(r₁, r₂)` of the
//!   right side, proving `f ≤ r₁` and `w ≤ r₂`;
//! * an ω-power `s^ω` is lifted from `s^k ≤ x` when the right side is
//!   `x^ω`, closed by an axiom when the right side reads `s^ω m s^ω`, or
//!   matched against `p x^ω q` and `p x^ω m y^ω q` through
//!   `s^ω = s^i s^ω s^j` and the axiom `s^ω ≤ s^ω m s^ω`;
//! * finally `s^ω = s^ω s^ω` is split along the decompositions of the right
//!   side.
//!
//! Goals whose sides differ over J cannot be valid and are dropped without
//! being expanded. Only expansions count against the budget, so the search
//! is deterministic and a proof found within some budget is found, step for
//! step, within every larger one.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use super::{
    check_step_shape, gamma_axiom_check, Inequality, Justification, Normalizer, Proof, ProofStep,
    Tri,
};
use crate::decide::Budget;
use crate::level::Level;
use crate::term::{
    canonical_j_flat, decompositions, flatten, unflatten, Factor, JCanonicalForm, OmegaTerm,
};

type Flat = Vec<Factor>;
type Goal = (Flat, Flat);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Proof),
    /// The search space was exhausted (`exhausted == false`) or the budget ran out.
    NotFound {
        expansions: usize,
        exhausted: bool,
    },
    Cancelled {
        expansions: usize,
    },
}

enum Abort {
    Budget,
    Cancelled,
}

type Res = Result<Option<usize>, Abort>;

/// A proof of `goal` at `level`, if one is found within `budget`.
pub fn search_proof(goal: &Inequality, level: Level, budget: &Budget) -> Option<Proof> {
    match search_proof_with(goal, level, budget, &mut || true) {
        SearchOutcome::Found(p) => Some(p),
        _ => None,
    }
}

/// As [`search_proof`]; `tick` is called before every expansion and stops
/// the search when it returns `false`.
pub fn search_proof_with(
    goal: &Inequality,
    level: Level,
    budget: &Budget,
    tick: &mut dyn FnMut() -> bool,
) -> SearchOutcome {
    if !level.is_half() || level < Level::THREE_HALVES {
        return SearchOutcome::NotFound {
            expansions: 0,
            exhausted: false,
        };
    }
    let mut prover = Prover {
        level,
        budget,
        norm: Normalizer::new(budget),
        tick,
        steps: Vec::new(),
        proven: HashMap::new(),
        failed: HashSet::new(),
        active: HashSet::new(),
        gamma: HashMap::new(),
        splits: HashMap::new(),
        jforms: HashMap::new(),
        full_forms: HashMap::new(),
        expansions: 0,
        cut: false,
    };
    let l = flatten(&goal.lhs);
    let r = flatten(&goal.rhs);
    let root = match prover.prove(l, r, 0) {
        Ok(Some(root)) => root,
        Ok(None) => {
            return SearchOutcome::NotFound {
                expansions: prover.expansions,
                exhausted: false,
            }
        }
        Err(Abort::Budget) => {
            return SearchOutcome::NotFound {
                expansions: prover.expansions,
                exhausted: true,
            }
        }
        Err(Abort::Cancelled) => {
            return SearchOutcome::Cancelled {
                expansions: prover.expansions,
            }
        }
    };
    let root = prover.restate(root, goal);
    match root {
        Some(root) => SearchOutcome::Found(prover.extract(root)),
        None => SearchOutcome::NotFound {
            expansions: prover.expansions,
            exhausted: false,
        },
    }
}

struct Prover<'a> {
    level: Level,
    budget: &'a Budget,
    norm: Normalizer,
    tick: &'a mut dyn FnMut() -> bool,
    steps: Vec<ProofStep>,
    proven: HashMap<Goal, usize>,
    failed: HashSet<Goal>,
    active: HashSet<Goal>,
    gamma: HashMap<Goal, bool>,
    splits: HashMap<Flat, Rc<Vec<Goal>>>,
    jforms: HashMap<Flat, JCanonicalForm>,
    full_forms: HashMap<Flat, Flat>,
    expansions: usize,
    /// Set when a branch was cut by a cycle or the depth limit, which makes
    /// the failure of the enclosing goals context-dependent.
    cut: bool,
}

fn term(w: &[Factor]) -> OmegaTerm {
    unflatten(w)
}

fn power(s: &[Factor], k: usize) -> Flat {
    s.iter().cloned().cycle().take(s.len() * k).collect()
}

#[derive(Clone, Copy)]
enum Exp {
    Finite(usize),
    Omega,
}

impl Prover<'_> {
    fn emit(&mut self, inequality: Inequality, rule: Justification) -> Option<usize> {
        self.steps.push(ProofStep { inequality, rule });
        let i = self.steps.len() - 1;
        if check_step_shape(&self.steps, i, &self.norm).is_ok() {
            Some(i)
        } else {
            self.steps.pop();
            None
        }
    }

    fn trivial(&mut self, l: &[Factor], r: &[Factor]) -> Option<usize> {
        self.emit(Inequality::new(term(l), term(r)), Justification::Trivial)
    }

    fn jform(&mut self, w: &[Factor]) -> JCanonicalForm {
        if let Some(f) = self.jforms.get(w) {
            return f.clone();
        }
        let f = canonical_j_flat(w);
        self.jforms.insert(w.to_vec(), f.clone());
        f
    }

    fn j_eq(&mut self, a: &[Factor], b: &[Factor]) -> bool {
        self.jform(a) == self.jform(b)
    }

    fn shape(&self, w: &[Factor]) -> Flat {
        self.norm.unrotated(w)
    }

    fn full(&mut self, w: &[Factor]) -> Flat {
        if let Some(n) = self.full_forms.get(w) {
            return n.clone();
        }
        let n = self.norm.nf(&term(w));
        self.full_forms.insert(w.to_vec(), n.clone());
        n
    }

    fn prove(&mut self, l: Flat, r: Flat, depth: usize) -> Res {
        let l = self.shape(&l);
        let r = self.shape(&r);
        let goal = (l, r);
        if let Some(&i) = self.proven.get(&goal) {
            return Ok(Some(i));
        }
        if self.full(&goal.0) == self.full(&goal.1) {
            let i = self.trivial(&goal.0, &goal.1);
            if let Some(i) = i {
                self.proven.insert(goal, i);
            }
            return Ok(i);
        }
        if self.failed.contains(&goal) {
            return Ok(None);
        }
        if self.active.contains(&goal) || depth > self.budget.max_depth {
            self.cut = true;
            return Ok(None);
        }
        if !self.j_eq(&goal.0, &goal.1) {
            self.failed.insert(goal);
            return Ok(None);
        }
        if self.expansions >= self.budget.proof_expansions {
            return Err(Abort::Budget);
        }
        if !(self.tick)() {
            return Err(Abort::Cancelled);
        }
        self.expansions += 1;
        self.active.insert(goal.clone());
        let outer_cut = std::mem::replace(&mut self.cut, false);
        let result = self.expand(&goal.0, &goal.1, depth);
        self.active.remove(&goal);
        let result = result?;
        match result {
            Some(i) => {
                self.proven.insert(goal, i);
            }
            None if !self.cut => {
                self.failed.insert(goal);
            }
            None => {}
        }
        self.cut |= outer_cut;
        Ok(result)
    }

    fn expand(&mut self, l: &Flat, r: &Flat, depth: usize) -> Res {
        if l.len() >= 2 {
            return self.product_case(l, r, depth);
        }
        if let [Factor::Omega(s)] = l.as_slice() {
            return self.omega_case(s, r, depth);
        }
        Ok(None)
    }

    /// Decompositions of `r`, normalized, smallest first.
    fn splits(&mut self, r: &Flat) -> Rc<Vec<Goal>> {
        if let Some(s) = self.splits.get(r) {
            return s.clone();
        }
        let mut seen = HashSet::new();
        let mut out: Vec<(usize, String, Goal)> = Vec::new();
        for d in decompositions(&term(r), self.budget.exp_bound) {
            let pair = (
                self.shape(&flatten(&d.left)),
                self.shape(&flatten(&d.right)),
            );
            if seen.insert(pair.clone()) {
                let (a, b) = (term(&pair.0), term(&pair.1));
                out.push((a.size() + b.size(), format!("{a} | {b}"), pair));
            }
        }
        out.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        let out = Rc::new(out.into_iter().map(|(_, _, p)| p).collect::<Vec<_>>());
        self.splits.insert(r.clone(), out.clone());
        out
    }

    fn product_case(&mut self, l: &Flat, r: &Flat, depth: usize) -> Res {
        let head = l[..1].to_vec();
        let tail = l[1..].to_vec();
        for (r1, r2) in self.splits(r).iter() {
            if !self.j_eq(&head, r1) || !self.j_eq(&tail, r2) {
                continue;
            }
            let Some(a) = self.prove(head.clone(), r1.clone(), depth + 1)? else {
                continue;
            };
            let Some(b) = self.prove(tail.clone(), r2.clone(), depth + 1)? else {
                continue;
            };
            if let Some(i) = self.mul_chain(&[a, b], l, r) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Folds the cited steps with the product rule; the last step is stated
    /// as the goal `l ≤ r` when that is a correct reading.
    fn mul_chain(&mut self, parts: &[usize], l: &[Factor], r: &[Factor]) -> Option<usize> {
        let mut acc = parts[0];
        for (n, &p) in parts.iter().enumerate().skip(1) {
            let (a, b) = (&self.steps[acc].inequality, &self.steps[p].inequality);
            let literal = Inequality::new(
                OmegaTerm::concat(a.lhs.clone(), b.lhs.clone()),
                OmegaTerm::concat(a.rhs.clone(), b.rhs.clone()),
            );
            let last = n + 1 == parts.len();
            let stated = if last {
                self.emit(
                    Inequality::new(term(l), term(r)),
                    Justification::Mul(acc, p),
                )
            } else {
                None
            };
            acc = match stated {
                Some(i) => i,
                None => self.emit(literal, Justification::Mul(acc, p))?,
            };
        }
        Some(acc)
    }

    fn side_condition(&mut self, s: &[Factor], m: &[Factor]) -> bool {
        let key = (s.to_vec(), m.to_vec());
        if let Some(&b) = self.gamma.get(&key) {
            return b;
        }
        let ok = gamma_axiom_check(&term(s), &term(m), self.level, self.budget) == Tri::Yes;
        self.gamma.insert(key, ok);
        ok
    }

    fn axiom(&mut self, s: &[Factor], m: &[Factor]) -> Option<usize> {
        let sw = OmegaTerm::omega(term(s));
        let rhs = OmegaTerm::concat(OmegaTerm::concat(sw.clone(), term(m)), sw.clone());
        self.emit(
            Inequality::new(sw, rhs),
            Justification::GammaAxiom {
                u: term(s),
                v: term(m),
            },
        )
    }

    fn exponents(&self, side: &[Factor]) -> Vec<Exp> {
        if side.is_empty() {
            return vec![Exp::Finite(0)];
        }
        (1..=self.budget.exp_bound.max(1))
            .map(Exp::Finite)
            .chain([Exp::Omega])
            .collect()
    }

    fn spow(s: &[Factor], e: Exp) -> Flat {
        match e {
            Exp::Finite(k) => power(s, k),
            Exp::Omega => vec![Factor::Omega(s.to_vec())],
        }
    }

    fn omega_case(&mut self, s: &Flat, r: &Flat, depth: usize) -> Res {
        let l = vec![Factor::Omega(s.clone())];

        if let [Factor::Omega(x)] = r.as_slice() {
            for k in 1..=self.budget.exp_bound.max(1) {
                let sk = power(s, k);
                if !self.j_eq(&sk, x) {
                    continue;
                }
                if let Some(j) = self.prove(sk.clone(), x.clone(), depth + 1)? {
                    let step = &self.steps[j].inequality;
                    let ineq = Inequality::new(
                        OmegaTerm::omega(step.lhs.clone()),
                        OmegaTerm::omega(step.rhs.clone()),
                    );
                    if let Some(i) = self.emit(ineq, Justification::OmegaRule(j)) {
                        return Ok(Some(i));
                    }
                }
            }
        }

        if r.len() >= 2 && r[0] == l[0] && r[r.len() - 1] == l[0] {
            let m = &r[1..r.len() - 1];
            if self.side_condition(s, m) {
                if let Some(i) = self.axiom(s, m) {
                    return Ok(Some(i));
                }
            }
        }

        // the axiom in any presentation of the right side
        let target = self.full(r);
        let mut tried = HashSet::new();
        for i in 0..r.len() {
            for j in i + 1..=r.len() {
                let m = &r[i..j];
                if !tried.insert(m.to_vec()) {
                    continue;
                }
                let shaped: Flat = [l.as_slice(), m, &l].concat();
                if self.full(&shaped) != target {
                    continue;
                }
                // (s^ω)^ω is s^ω, so s^ω can stand in as the base
                for base in [s.clone(), l.clone()] {
                    if self.side_condition(&base, m) {
                        if let Some(i) = self.axiom(&base, m) {
                            return Ok(Some(i));
                        }
                    }
                }
            }
        }

        let blocks: Vec<usize> = (0..r.len())
            .filter(|&i| matches!(r[i], Factor::Omega(_)))
            .collect();

        for &i in &blocks {
            let (p, x, q) = (&r[..i], &r[i..=i], &r[i + 1..]);
            if p.is_empty() && q.is_empty() {
                continue;
            }
            for ep in self.exponents(p) {
                for eq in self.exponents(q) {
                    let pieces = [
                        (Self::spow(s, ep), p.to_vec()),
                        (l.clone(), x.to_vec()),
                        (Self::spow(s, eq), q.to_vec()),
                    ];
                    if let Some(i) = self.prove_pieces(&pieces, &l, r, depth)? {
                        return Ok(Some(i));
                    }
                }
            }
        }

        for (n, &i) in blocks.iter().enumerate() {
            for &j in &blocks[n + 1..] {
                let (p, x, m, y, q) = (&r[..i], &r[i..=i], &r[i + 1..j], &r[j..=j], &r[j + 1..]);
                if m.is_empty() || !self.side_condition(s, m) {
                    continue;
                }
                for ep in self.exponents(p) {
                    for eq in self.exponents(q) {
                        if let Some(i) =
                            self.through_axiom(s, (ep, eq), [p, x, m, y, q], r, depth)?
                        {
                            return Ok(Some(i));
                        }
                    }
                }
            }
        }

        for (r1, r2) in self.splits(r).iter() {
            if r1.is_empty() || r2.is_empty() || !self.j_eq(&l, r1) || !self.j_eq(&l, r2) {
                continue;
            }
            let Some(a) = self.prove(l.clone(), r1.clone(), depth + 1)? else {
                continue;
            };
            let Some(b) = self.prove(l.clone(), r2.clone(), depth + 1)? else {
                continue;
            };
            if let Some(i) = self.mul_chain(&[a, b], &l, r) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Proves each `lᵢ ≤ rᵢ` (skipping empty pairs) and multiplies them into
    /// `l ≤ r`.
    fn prove_pieces(
        &mut self,
        pieces: &[(Flat, Flat)],
        l: &[Factor],
        r: &[Factor],
        depth: usize,
    ) -> Res {
        let pieces: Vec<&(Flat, Flat)> = pieces
            .iter()
            .filter(|(a, b)| !(a.is_empty() && b.is_empty()))
            .collect();
        for (a, b) in &pieces {
            if !self.j_eq(a, b) {
                return Ok(None);
            }
        }
        let mut done = Vec::with_capacity(pieces.len());
        for (a, b) in pieces {
            match self.prove(a.clone(), b.clone(), depth + 1)? {
                Some(i) => done.push(i),
                None => return Ok(None),
            }
        }
        Ok(match done.len() {
            0 => None,
            1 => Some(done[0]),
            _ => self.mul_chain(&done, l, r),
        })
    }

    /// `s^ω = s^i s^ω s^j ≤ s^i (s^ω m s^ω) s^j ≤ p x^ω m y^ω q`.
    fn through_axiom(
        &mut self,
        s: &Flat,
        (ep, eq): (Exp, Exp),
        [p, x, m, y, q]: [&[Factor]; 5],
        r: &Flat,
        depth: usize,
    ) -> Res {
        let l = vec![Factor::Omega(s.clone())];
        let (sp, sq) = (Self::spow(s, ep), Self::spow(s, eq));
        let right = [
            (sp.clone(), p.to_vec()),
            (l.clone(), x.to_vec()),
            (m.to_vec(), m.to_vec()),
            (l.clone(), y.to_vec()),
            (sq.clone(), q.to_vec()),
        ];
        for (a, b) in &right {
            if !self.j_eq(a, b) {
                return Ok(None);
            }
        }
        let Some(ax) = self.axiom(s, m) else {
            return Ok(None);
        };
        let mut left_parts = Vec::new();
        if !sp.is_empty() {
            left_parts.push(self.trivial(&sp, &sp).expect("reflexive"));
        }
        left_parts.push(ax);
        if !sq.is_empty() {
            left_parts.push(self.trivial(&sq, &sq).expect("reflexive"));
        }
        let mid: Flat = [sp.as_slice(), &l, m, &l, sq.as_slice()].concat();
        let lifted_lhs: Flat = [sp.as_slice(), &l, sq.as_slice()].concat();
        let Some(first) = (if left_parts.len() == 1 {
            Some(ax)
        } else {
            self.mul_chain(&left_parts, &lifted_lhs, &mid)
        }) else {
            return Ok(None);
        };
        let Some(second) = self.prove_pieces(&right, &mid, r, depth)? else {
            return Ok(None);
        };
        Ok(self.emit(
            Inequality::new(term(&l), term(r)),
            Justification::Trans(first, second),
        ))
    }

    /// Makes the conclusion read exactly as the requested goal.
    fn restate(&mut self, root: usize, goal: &Inequality) -> Option<usize> {
        if self.steps[root].inequality == *goal {
            return Some(root);
        }
        if let Some(i) = self.emit(goal.clone(), self.steps[root].rule.clone()) {
            if !matches!(self.steps[i].rule, Justification::GammaAxiom { .. })
                || self.steps[root].rule == self.steps[i].rule
            {
                return Some(i);
            }
        }
        let bridge = self.emit(
            Inequality::new(self.steps[root].inequality.rhs.clone(), goal.rhs.clone()),
            Justification::Trivial,
        )?;
        self.emit(goal.clone(), Justification::Trans(root, bridge))
    }

    /// The steps the conclusion depends on, renumbered.
    fn extract(&self, root: usize) -> Proof {
        let mut keep = vec![false; root + 1];
        keep[root] = true;
        for i in (0..=root).rev() {
            if !keep[i] {
                continue;
            }
            match self.steps[i].rule {
                Justification::Mul(j, k) | Justification::Trans(j, k) => {
                    keep[j] = true;
                    keep[k] = true;
                }
                Justification::OmegaRule(j) => keep[j] = true,
                _ => {}
            }
        }
        let mut index = vec![usize::MAX; root + 1];
        let mut steps = Vec::new();
        for i in 0..=root {
            if keep[i] {
                index[i] = steps.len();
                let mut s = self.steps[i].clone();
                s.rule = match s.rule {
                    Justification::Mul(j, k) => Justification::Mul(index[j], index[k]),
                    Justification::Trans(j, k) => Justification::Trans(index[j], index[k]),
                    Justification::OmegaRule(j) => Justification::OmegaRule(index[j]),
                    other => other,
                };
                steps.push(s);
            }
        }
        Proof {
            level: self.level,
            steps,
        }
    }
}
