//! Strict turn-taking between the prover and the refuter threads: each side
//! runs a slice of ticks, then hands over and waits. A side that finishes
//! stops taking turns; a side that succeeds cancels the other.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Condvar, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Prover,
    Refuter,
}

impl Side {
    fn index(self) -> usize {
        self as usize
    }
}

struct State {
    turn: usize,
    done: [bool; 2],
    exhausted: Vec<Side>,
}

pub(crate) struct Turnstile {
    state: Mutex<State>,
    wake: Condvar,
    cancel: AtomicBool,
}

impl Turnstile {
    pub(crate) fn new() -> Turnstile {
        Turnstile {
            state: Mutex::new(State {
                turn: 0,
                done: [false; 2],
                exhausted: Vec::new(),
            }),
            wake: Condvar::new(),
            cancel: AtomicBool::new(false),
        }
    }

    pub(crate) fn gate(&self, side: Side, slice: usize) -> Gate<'_> {
        Gate {
            t: self,
            me: side.index(),
            slice: slice.max(1),
            used: 0,
            holding: false,
        }
    }

    /// Sides that gave up without an answer, in the order they did.
    pub(crate) fn exhausted(&self) -> Vec<Side> {
        self.state.lock().expect("turnstile").exhausted.clone()
    }
}

pub(crate) struct Gate<'a> {
    t: &'a Turnstile,
    me: usize,
    slice: usize,
    used: usize,
    holding: bool,
}

impl Gate<'_> {
    /// Blocks until it is this side's turn; `false` once cancelled.
    pub(crate) fn tick(&mut self) -> bool {
        if self.t.cancel.load(Ordering::SeqCst) {
            return false;
        }
        if !self.holding || self.used == self.slice {
            let mut s = self.t.state.lock().expect("turnstile");
            if self.holding && !s.done[1 - self.me] {
                s.turn = 1 - self.me;
                self.t.wake.notify_all();
            }
            while s.turn != self.me && !s.done[1 - self.me] && !self.t.cancel.load(Ordering::SeqCst)
            {
                s = self.t.wake.wait(s).expect("turnstile");
            }
            self.holding = true;
            self.used = 0;
        }
        self.used += 1;
        !self.t.cancel.load(Ordering::SeqCst)
    }

    /// Leaves the rotation; `success` cancels the other side.
    pub(crate) fn finish(self, success: bool) {
        let mut s = self.t.state.lock().expect("turnstile");
        s.done[self.me] = true;
        if success {
            self.t.cancel.store(true, Ordering::SeqCst);
        } else if !self.t.cancel.load(Ordering::SeqCst) {
            s.exhausted.push(if self.me == 0 {
                Side::Prover
            } else {
                Side::Refuter
            });
        }
        s.turn = 1 - self.me;
        self.t.wake.notify_all();
    }
}
