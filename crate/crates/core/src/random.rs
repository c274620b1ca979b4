//! Seeded random ω-terms for sweeps and fuzzing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term::{Letter, OmegaTerm};

/// Draws terms with at most `max_nodes` nodes and ω-nesting at most
/// `max_omega_depth` over `alphabet`. The same seed always yields the same
/// sequence.
pub struct TermGen {
    rng: ChaCha8Rng,
    alphabet: Vec<Letter>,
    pub max_nodes: usize,
    pub max_omega_depth: usize,
}

impl TermGen {
    pub fn new(
        seed: u64,
        alphabet: &[Letter],
        max_nodes: usize,
        max_omega_depth: usize,
    ) -> TermGen {
        assert!(!alphabet.is_empty() && max_nodes >= 1);
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            alphabet: alphabet.to_vec(),
            max_nodes,
            max_omega_depth,
        }
    }

    pub fn term(&mut self) -> OmegaTerm {
        let n = self.rng.gen_range(1..=self.max_nodes);
        self.build(n, 0)
    }

    pub fn pair(&mut self) -> (OmegaTerm, OmegaTerm) {
        (self.term(), self.term())
    }

    fn build(&mut self, n: usize, depth: usize) -> OmegaTerm {
        let can_omega = depth < self.max_omega_depth && n >= 2;
        let can_concat = n >= 3;
        if !can_omega && !can_concat {
            if self.rng.gen_ratio(1, 12) {
                return OmegaTerm::Identity;
            }
            let i = self.rng.gen_range(0..self.alphabet.len());
            return OmegaTerm::Letter(self.alphabet[i]);
        }
        if can_omega && (!can_concat || self.rng.gen_ratio(1, 3)) {
            return OmegaTerm::omega(self.build(n - 1, depth + 1));
        }
        let k = self.rng.gen_range(1..=n - 2);
        let left = self.build(k, depth);
        let right = self.build(n - 1 - k, depth);
        OmegaTerm::concat(left, right)
    }
}
