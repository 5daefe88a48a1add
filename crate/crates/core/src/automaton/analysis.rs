//! Questions answered by finite exploration of an automaton.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::{Dfao, StateId};
use crate::closure::ClosureTables;
use crate::error::{Error, Result};
use crate::numeration::{Admissibility, Digit, DigitString};
use crate::word::Substitution;

/// Set of defined outputs over states reachable from the initial state.
///
/// With `normal_only`, only states reached by a normal representation with a
/// nonzero leading digit count; this runs over the product with the
/// admissibility automaton of `subst`.
pub fn output_range(a: &Dfao, subst: &Substitution, normal_only: bool) -> Result<BTreeSet<u32>> {
    if !normal_only {
        return Ok(a.reachable().into_iter().filter_map(|q| a.output(q)).collect());
    }
    if a.radix() != subst.max_digit() as usize + 1 {
        return Err(Error::Domain(format!(
            "automaton alphabet 0..{} does not match {subst}",
            a.radix() - 1
        )));
    }
    let adm = Admissibility::new(subst)?;
    let mut seen: HashSet<(StateId, u32)> = HashSet::new();
    let mut queue = VecDeque::new();
    for d in 1..a.radix() as Digit {
        if let Some(s) = adm.step(adm.initial(), d) {
            let key = (a.next(a.initial(), d), s);
            if seen.insert(key) {
                queue.push_back(key);
            }
        }
    }
    let mut out = BTreeSet::new();
    while let Some((q, s)) = queue.pop_front() {
        out.extend(a.output(q));
        for d in 0..a.radix() as Digit {
            if let Some(t) = adm.step(s, d) {
                let key = (a.next(q, d), t);
                if seen.insert(key) {
                    queue.push_back(key);
                }
            }
        }
    }
    Ok(out)
}

/// Largest per-letter spread `max - min` inside the union of `vect` of any
/// state's set, i.e. the balance constant of the word.
pub fn balance_bound(tables: &ClosureTables) -> i64 {
    (1..=tables.num_states() as StateId)
        .map(|q| {
            let vs = tables.vect_union(q);
            (0..tables.m())
                .map(|l| {
                    let col = vs.iter().map(|v| v.counts()[l]);
                    col.clone().max().unwrap_or(0) - col.min().unwrap_or(0)
                })
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Digit strings `head . cycle^j . tail` for all `j >= min_repetitions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPattern {
    pub head: DigitString,
    pub cycle: DigitString,
    pub tail: DigitString,
    pub min_repetitions: usize,
}

impl FamilyPattern {
    pub fn new(head: DigitString, cycle: DigitString, tail: DigitString, min_repetitions: usize) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Domain("family cycle must be nonempty".into()));
        }
        Ok(FamilyPattern { head, cycle, tail, min_repetitions })
    }

    /// Parses `head/cycle/tail/min`, with `e` or an empty field for the empty string.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('/').collect();
        let [h, c, t, n] = parts[..] else {
            return Err(Error::Domain(format!("expected head/cycle/tail/min, got {s:?}")));
        };
        let digits = |x: &str| -> Result<DigitString> {
            match x {
                "" | "e" | "ε" => Ok(DigitString::empty()),
                _ => x.parse(),
            }
        };
        let n = n
            .parse()
            .map_err(|_| Error::Domain(format!("bad repetition count {n:?}")))?;
        Self::new(digits(h)?, digits(c)?, digits(t)?, n)
    }

    pub fn instance(&self, j: usize) -> DigitString {
        self.head.concat(&self.cycle.repeat(j)).concat(&self.tail)
    }
}

/// Decides whether every member of the family with `j >= min_repetitions`
/// drives `a` to a state with output `expected`.
///
/// The states `s_j` after `head . cycle^j` are eventually periodic; once a
/// repeat `s_k = s_i` (i < k) is found, `{ s_j : j >= min }` is known exactly.
pub fn verify_family(a: &Dfao, pattern: &FamilyPattern, expected: u32) -> Result<bool> {
    let step = |q: StateId, w: &DigitString| -> StateId {
        w.digits().iter().fold(q, |q, &d| a.next(q, d))
    };
    for w in [&pattern.head, &pattern.cycle, &pattern.tail] {
        w.check_alphabet((a.radix() - 1) as Digit)?;
    }
    let mut first_seen: HashMap<StateId, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut q = step(a.initial(), &pattern.head);
    let (start, end) = loop {
        if let Some(&i) = first_seen.get(&q) {
            break (i, states.len());
        }
        first_seen.insert(q, states.len());
        states.push(q);
        q = step(q, &pattern.cycle);
    };
    // s_j for j >= end repeats s_start..s_end
    let min = pattern.min_repetitions;
    let from = if min < end { min } else { start };
    let tail_states: BTreeSet<StateId> =
        states[from..end].iter().chain(&states[start..end]).copied().collect();
    Ok(tail_states
        .into_iter()
        .all(|s| a.output(step(s, &pattern.tail)) == Some(expected)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> DigitString {
        s.parse().unwrap()
    }

    #[test]
    fn pattern_parsing() {
        let p = FamilyPattern::parse("e/100/e/3").unwrap();
        assert_eq!(p.instance(2), ds("100100"));
        let p = FamilyPattern::parse("1/0/11/19").unwrap();
        assert_eq!(p.instance(2), ds("10011"));
        assert!(FamilyPattern::parse("1//1/2").is_err());
        assert!(FamilyPattern::parse("1/0/1").is_err());
    }

    /// Output = number of 1s seen, saturating at 3; binary alphabet.
    fn counter() -> Dfao {
        let delta = vec![0, 1, 1, 2, 2, 3, 3, 3];
        Dfao::new(vec![1, 1], 0, delta, vec![Some(0), Some(1), Some(2), Some(3)]).unwrap()
    }

    #[test]
    fn lasso_matches_direct_evaluation() {
        let a = counter();
        for pat in ["e/10/e/0", "e/10/e/3", "1/0/1/0", "e/0/1/5", "11/01/e/1", "e/100/0/2"] {
            let p = FamilyPattern::parse(pat).unwrap();
            for expected in 0..4 {
                let direct = (p.min_repetitions..p.min_repetitions + 12)
                    .all(|j| a.output(a.run(&p.instance(j)).unwrap()) == Some(expected));
                assert_eq!(verify_family(&a, &p, expected).unwrap(), direct, "{pat} {expected}");
            }
        }
    }

    #[test]
    fn range_of_single_state_automaton() {
        let a = Dfao::new(vec![1, 1], 0, vec![0, 0], vec![Some(1)]).unwrap();
        let f = Substitution::m_bonacci(2).unwrap();
        assert_eq!(output_range(&a, &f, false).unwrap(), [1].into());
        assert_eq!(output_range(&a, &f, true).unwrap(), [1].into());
    }
}
