//! Finite automata over the digit alphabet `{0..alpha[0]}`.
//!
//! [`Dfao`] maps digit strings (most significant digit first) to outputs and
//! [`Dfa`] accepts or rejects them. Both carry the exponent list of the
//! substitution they were built for, which fixes the alphabet and is kept for
//! serialization.

mod analysis;
mod io;
mod minimize;

pub use analysis::{balance_bound, output_range, verify_family, FamilyPattern};
pub use io::Automaton;

use crate::error::{Error, Result};
use crate::numeration::{greedy_representation, Digit, DigitString};
use crate::word::Substitution;

pub type StateId = u32;

/// Transition structure shared by both automaton kinds. `delta[q * radix + d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Table {
    alpha: Vec<u32>,
    radix: usize,
    initial: StateId,
    delta: Vec<StateId>,
}

impl Table {
    fn new(alpha: Vec<u32>, initial: StateId, delta: Vec<StateId>, states: usize) -> Result<Self> {
        if alpha.len() < 2 || alpha[0] == 0 || alpha[0] > Digit::MAX as u32 - 1 {
            return Err(Error::Domain(format!("bad exponent list {alpha:?}")));
        }
        let radix = alpha[0] as usize + 1;
        if states == 0 {
            return Err(Error::Domain("an automaton needs at least one state".into()));
        }
        if delta.len() != states * radix {
            return Err(Error::Domain(format!(
                "transition table has {} entries, expected {} states x {radix} digits",
                delta.len(),
                states
            )));
        }
        if initial as usize >= states {
            return Err(Error::Domain(format!("initial state {initial} out of range")));
        }
        if let Some(t) = delta.iter().find(|&&t| t as usize >= states) {
            return Err(Error::Domain(format!("transition target {t} out of range")));
        }
        Ok(Table { alpha, radix, initial, delta })
    }

    fn states(&self) -> usize {
        self.delta.len() / self.radix
    }

    fn next(&self, q: StateId, d: Digit) -> StateId {
        self.delta[q as usize * self.radix + d as usize]
    }

    fn check_digits(&self, digits: &DigitString) -> Result<()> {
        digits.check_alphabet((self.radix - 1) as Digit)
    }

    fn trace(&self, digits: &DigitString) -> Result<Vec<StateId>> {
        self.check_digits(digits)?;
        let mut q = self.initial;
        let mut out = Vec::with_capacity(digits.len() + 1);
        out.push(q);
        for &d in digits.digits() {
            q = self.next(q, d);
            out.push(q);
        }
        Ok(out)
    }

    fn run(&self, digits: &DigitString) -> Result<StateId> {
        self.check_digits(digits)?;
        Ok(digits.digits().iter().fold(self.initial, |q, &d| self.next(q, d)))
    }

    /// States reachable from the initial state, in BFS order with digits ascending.
    fn reachable(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.states()];
        let mut order = vec![self.initial];
        seen[self.initial as usize] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for d in 0..self.radix as Digit {
                let t = self.next(q, d);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }
}

/// Deterministic finite automaton with output. `None` marks states without a
/// defined output (the initial state, and a sink for inadmissible digit strings).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    table: Table,
    output: Vec<Option<u32>>,
}

impl Dfao {
    pub fn new(
        alpha: Vec<u32>,
        initial: StateId,
        delta: Vec<StateId>,
        output: Vec<Option<u32>>,
    ) -> Result<Self> {
        let table = Table::new(alpha, initial, delta, output.len())?;
        Ok(Dfao { table, output })
    }

    pub fn alpha(&self) -> &[u32] {
        &self.table.alpha
    }

    pub fn radix(&self) -> usize {
        self.table.radix
    }

    pub fn num_states(&self) -> usize {
        self.output.len()
    }

    pub fn initial(&self) -> StateId {
        self.table.initial
    }

    pub fn next(&self, q: StateId, d: Digit) -> StateId {
        self.table.next(q, d)
    }

    pub fn output(&self, q: StateId) -> Option<u32> {
        self.output[q as usize]
    }

    pub fn outputs(&self) -> &[Option<u32>] {
        &self.output
    }

    pub fn run(&self, digits: &DigitString) -> Result<StateId> {
        self.table.run(digits)
    }

    /// Every visited state, starting with the initial one.
    pub fn trace(&self, digits: &DigitString) -> Result<Vec<StateId>> {
        self.table.trace(digits)
    }

    pub fn reachable(&self) -> Vec<StateId> {
        self.table.reachable()
    }

    /// Moore-minimal equivalent automaton. Unreachable states are dropped and the
    /// remaining classes are numbered by their smallest original state.
    pub fn minimize(&self) -> Dfao {
        let (classes, class_of) = minimize::refine(&self.table, &self.output);
        let (table, reps) = minimize::quotient(&self.table, classes, &class_of);
        let output = reps.iter().map(|&r| self.output[r as usize]).collect();
        Dfao { table, output }
    }

    /// Elementary reduction: merges states with equal outputs and identical
    /// successors, repeatedly, until no such pair is left. Never smaller than
    /// [`Dfao::minimize`] and sometimes larger.
    pub fn merge_identical(&self) -> Dfao {
        let (classes, class_of) = minimize::merge_identical(&self.table, &self.output);
        let (table, reps) = minimize::quotient(&self.table, classes, &class_of);
        let output = reps.iter().map(|&r| self.output[r as usize]).collect();
        Dfao { table, output }
    }

    /// Relabels states in BFS order from the initial state, dropping unreachable
    /// ones. Two minimal automata are isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> Dfao {
        let (table, order) = minimize::bfs_relabel(&self.table);
        let output = order.iter().map(|&q| self.output[q as usize]).collect();
        Dfao { table, output }
    }

    /// Acceptor for output `c`: accepting states are those with output `c`.
    pub fn value_acceptor(&self, c: u32) -> Dfa {
        Dfa {
            table: self.table.clone(),
            accepting: self.output.iter().map(|&o| o == Some(c)).collect(),
        }
    }
}

/// Output of the state reached by the normal representation of `n`.
pub fn evaluate_ac(a: &Dfao, subst: &Substitution, n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("abelian complexity is defined for n >= 1".into()));
    }
    if a.alpha() != subst.alpha() {
        return Err(Error::Domain(format!(
            "automaton was built for exponents {:?}, not {:?}",
            a.alpha(),
            subst.alpha()
        )));
    }
    let q = a.run(&greedy_representation(subst, n))?;
    a.output(q)
        .ok_or_else(|| Error::Invariant(format!("state {q} reached by n = {n} has no output")))
}

/// Free-function form of [`Dfao::value_acceptor`].
pub fn value_acceptor(a: &Dfao, c: u32) -> Dfa {
    a.value_acceptor(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    table: Table,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alpha: Vec<u32>,
        initial: StateId,
        delta: Vec<StateId>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let table = Table::new(alpha, initial, delta, accepting.len())?;
        Ok(Dfa { table, accepting })
    }

    pub fn alpha(&self) -> &[u32] {
        &self.table.alpha
    }

    pub fn radix(&self) -> usize {
        self.table.radix
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> StateId {
        self.table.initial
    }

    pub fn next(&self, q: StateId, d: Digit) -> StateId {
        self.table.next(q, d)
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q as usize]
    }

    pub fn run(&self, digits: &DigitString) -> Result<StateId> {
        self.table.run(digits)
    }

    pub fn accepts(&self, digits: &DigitString) -> Result<bool> {
        Ok(self.is_accepting(self.run(digits)?))
    }

    pub fn minimize(&self) -> Dfa {
        let (classes, class_of) = minimize::refine(&self.table, &self.accepting);
        let (table, reps) = minimize::quotient(&self.table, classes, &class_of);
        let accepting = reps.iter().map(|&r| self.accepting[r as usize]).collect();
        Dfa { table, accepting }
    }

    pub fn canonical(&self) -> Dfa {
        let (table, order) = minimize::bfs_relabel(&self.table);
        let accepting = order.iter().map(|&q| self.accepting[q as usize]).collect();
        Dfa { table, accepting }
    }

    /// Restriction to strings that are empty or start with a nonzero digit, so
    /// that leading-zero padding no longer makes languages infinite.
    pub fn without_leading_zeros(&self) -> Dfa {
        let n = self.num_states() as StateId;
        let (start, dead) = (n, n + 1);
        let mut delta = self.table.delta.clone();
        delta.push(dead);
        delta.extend((1..self.radix() as Digit).map(|d| self.next(self.initial(), d)));
        delta.extend(std::iter::repeat_n(dead, self.radix()));
        let mut accepting = self.accepting.clone();
        accepting.push(self.is_accepting(self.initial()));
        accepting.push(false);
        let table = Table { alpha: self.table.alpha.clone(), radix: self.radix(), initial: start, delta };
        Dfa { table, accepting }
    }

    /// True iff the accepted language is finite: no cycle passes through a state
    /// that is both reachable and co-reachable.
    pub fn has_finite_language(&self) -> bool {
        let n = self.num_states();
        let mut live = vec![false; n];
        for q in self.table.reachable() {
            live[q as usize] = true;
        }
        // co-reachability by backward fixpoint
        let mut coreach = self.accepting.clone();
        loop {
            let mut changed = false;
            for q in 0..n {
                if !coreach[q]
                    && (0..self.radix() as Digit).any(|d| coreach[self.next(q as StateId, d) as usize])
                {
                    coreach[q] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let useful: Vec<bool> = (0..n).map(|q| live[q] && coreach[q]).collect();
        // cycle detection restricted to useful states (iterative DFS colouring)
        let mut colour = vec![0u8; n];
        for s in (0..n).filter(|&q| useful[q]) {
            if colour[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            colour[s] = 1;
            while let Some((q, d)) = stack.pop() {
                if d == self.radix() {
                    colour[q] = 2;
                    continue;
                }
                stack.push((q, d + 1));
                let t = self.next(q as StateId, d as Digit) as usize;
                if !useful[t] {
                    continue;
                }
                match colour[t] {
                    0 => {
                        colour[t] = 1;
                        stack.push((t, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Accepted strings of length at most `max_len`, in shortlex order.
    pub fn enumerate(&self, max_len: usize) -> Vec<DigitString> {
        let mut out = Vec::new();
        let mut layer = vec![(Vec::<Digit>::new(), self.initial())];
        for len in 0..=max_len {
            for (w, q) in &layer {
                if self.is_accepting(*q) {
                    out.push(DigitString::new(w.clone()));
                }
            }
            if len == max_len {
                break;
            }
            layer = layer
                .into_iter()
                .flat_map(|(w, q)| {
                    (0..self.radix() as Digit).map(move |d| {
                        let mut v = w.clone();
                        v.push(d);
                        (v, self.next(q, d))
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> DigitString {
        s.parse().unwrap()
    }

    /// Counts 1s modulo 3, with output undefined on the initial state.
    fn mod3() -> Dfao {
        // states: 0 initial, 1..=3 residues 0,1,2
        let delta = vec![1, 2, 1, 2, 2, 3, 3, 1];
        Dfao::new(vec![1, 1], 0, delta, vec![None, Some(0), Some(1), Some(2)]).unwrap()
    }

    #[test]
    fn run_and_trace() {
        let a = mod3();
        assert_eq!(a.run(&DigitString::empty()).unwrap(), 0);
        assert_eq!(a.run(&ds("1101")).unwrap(), 1);
        assert_eq!(a.trace(&ds("10")).unwrap(), vec![0, 2, 2]);
        assert!(a.run(&ds("2")).is_err());
    }

    #[test]
    fn constructor_validation() {
        assert!(Dfao::new(vec![1, 1], 0, vec![0, 5], vec![None]).is_err());
        assert!(Dfao::new(vec![1, 1], 3, vec![0, 0], vec![None]).is_err());
        assert!(Dfa::new(vec![1, 1], 0, vec![0], vec![true]).is_err());
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        // duplicate residue states 4,5,6 mirroring 1,2,3
        let delta = vec![4, 2, 1, 5, 2, 3, 3, 1, 4, 5, 5, 6, 6, 4];
        let outputs = vec![None, Some(0), Some(1), Some(2), Some(0), Some(1), Some(2)];
        let a = Dfao::new(vec![1, 1], 0, delta, outputs).unwrap();
        let min = a.minimize();
        assert_eq!(min.num_states(), 4);
        assert_eq!(min.canonical(), mod3().canonical());
        assert_eq!(min.minimize(), min);
    }

    #[test]
    fn empty_language_minimizes_to_one_state() {
        let d = Dfa::new(vec![1, 1], 0, vec![1, 2, 2, 0, 1, 1], vec![false; 3]).unwrap();
        let min = d.minimize();
        assert_eq!(min.num_states(), 1);
        assert!(min.has_finite_language());
        assert!(min.enumerate(5).is_empty());
    }

    #[test]
    fn finite_language_detection() {
        // accepts exactly "1" and "10"
        let delta = vec![3, 1, 2, 3, 3, 3, 3, 3];
        let d = Dfa::new(vec![1, 1], 0, delta, vec![false, true, true, false]).unwrap();
        assert!(d.has_finite_language());
        assert_eq!(d.enumerate(6), vec![ds("1"), ds("10")]);
        let acc = mod3().value_acceptor(1);
        assert!(!acc.has_finite_language());
        // with a 0-loop on the initial state the language is infinite only through padding
        let delta = vec![0, 1, 2, 3, 3, 3, 3, 3];
        let d = Dfa::new(vec![1, 1], 0, delta, vec![false, true, true, false]).unwrap();
        assert!(!d.has_finite_language());
        let trimmed = d.without_leading_zeros().minimize();
        assert!(trimmed.has_finite_language());
        assert_eq!(trimmed.enumerate(6), vec![ds("1"), ds("10")]);
    }

    #[test]
    fn evaluate_rejects_zero_and_foreign_automata() {
        let t = Substitution::tribonacci();
        let a = mod3();
        assert!(matches!(evaluate_ac(&a, &t, 0), Err(Error::Domain(_))));
        assert!(evaluate_ac(&a, &t, 5).is_err());
    }
}
