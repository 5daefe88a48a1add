//! Normal (greedy) representations in the numeration system `U_j = |phi^j(0)|`.

use std::fmt;

use crate::automaton::Dfa;
use crate::error::{Error, Result};
use crate::word::Substitution;

pub type Digit = u8;

/// Digits `d_k .. d_0`, most significant first. Leading zeros are allowed and
/// do not change the value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitString(Vec<Digit>);

impl DigitString {
    pub fn new(digits: Vec<Digit>) -> Self {
        DigitString(digits)
    }

    pub fn empty() -> Self {
        DigitString(Vec::new())
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn strip_leading_zeros(&self) -> &[Digit] {
        let first = self.0.iter().position(|&d| d != 0).unwrap_or(self.0.len());
        &self.0[first..]
    }

    pub fn concat(&self, other: &DigitString) -> DigitString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DigitString(v)
    }

    pub fn repeat(&self, times: usize) -> DigitString {
        DigitString(self.0.repeat(times))
    }

    pub fn check_alphabet(&self, max: Digit) -> Result<()> {
        match self.0.iter().find(|&&d| d > max) {
            Some(&digit) => Err(Error::InvalidDigit { digit, max }),
            None => Ok(()),
        }
    }
}

impl std::str::FromStr for DigitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Digit)
                    .ok_or_else(|| Error::Domain(format!("'{c}' is not a decimal digit")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DigitString)
    }
}

/// Renders as ASCII digits; the empty string renders as nothing.
impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// The normal U-representation of `n`, produced by the greedy algorithm.
/// `0` maps to the empty string.
pub fn greedy_representation(subst: &Substitution, n: u64) -> DigitString {
    if n == 0 {
        return DigitString::empty();
    }
    // u[k-1] <= n < u[k]
    let u: Vec<u64> = subst.lengths().take_while(|&x| x <= n).collect();
    let k = u.len();
    let mut rem = n;
    let mut digits = Vec::with_capacity(k);
    for j in (0..k).rev() {
        let d = rem / u[j];
        rem -= d * u[j];
        digits.push(d as Digit);
    }
    debug_assert_eq!(rem, 0);
    DigitString(digits)
}

/// `sum d_j U_j`, with `j` counted from the least significant digit.
pub fn value_of(subst: &Substitution, digits: &DigitString) -> Result<u64> {
    digits.check_alphabet(subst.max_digit())?;
    let significant = digits.strip_leading_zeros();
    if significant.is_empty() {
        return Ok(0);
    }
    let u = subst.lengths_u(significant.len() - 1);
    let overflow = || Error::Domain(format!("value of {digits} does not fit in 64 bits"));
    significant.iter().rev().zip(&u).try_fold(0u64, |acc, (&d, &w)| {
        if w == u64::MAX {
            return Err(overflow());
        }
        (d as u64)
            .checked_mul(w)
            .and_then(|x| acc.checked_add(x))
            .ok_or_else(overflow)
    })
}

/// Whether `digits` (ignoring leading zeros) is the greedy representation of its
/// own value.
pub fn is_normal(subst: &Substitution, digits: &DigitString) -> Result<bool> {
    let n = value_of(subst, digits)?;
    Ok(greedy_representation(subst, n).digits() == digits.strip_leading_zeros())
}

/// The m-bonacci normality rule: no factor consisting of `m` consecutive ones.
pub fn has_no_run_of_ones(digits: &DigitString, m: usize) -> bool {
    let mut run = 0;
    for &d in digits.digits() {
        run = if d == 1 { run + 1 } else { 0 };
        if run >= m {
            return false;
        }
    }
    true
}

/// A DFA over the digit alphabet recognising exactly the normal representations
/// (with optional leading zeros), used to track admissibility while digits are
/// appended one at a time.
///
/// The automaton is built from the lexicographic window rule (every length-m window,
/// zero padded at the end, is smaller than `alpha[0] .. alpha[m-1]`) and is then
/// checked against the greedy algorithm: it must accept every greedy representation
/// of `n < U_L` and exactly `U_L` strings of length `L`. Substitutions for which the
/// check fails are rejected.
#[derive(Debug, Clone)]
pub struct Admissibility {
    dfa: Dfa,
    dead: Option<u32>,
}

impl Admissibility {
    pub fn new(subst: &Substitution) -> Result<Self> {
        let dfa = window_rule_dfa(subst).minimize();
        let dead = (0..dfa.num_states() as u32).find(|&q| !dfa.is_accepting(q));
        let adm = Admissibility { dfa, dead };
        adm.check_against_greedy(subst)?;
        Ok(adm)
    }

    pub fn initial(&self) -> u32 {
        self.dfa.initial()
    }

    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    /// State after appending `digit`, or `None` if the extension is not normal.
    pub fn step(&self, state: u32, digit: Digit) -> Option<u32> {
        let next = self.dfa.next(state, digit);
        if Some(next) == self.dead {
            None
        } else {
            Some(next)
        }
    }

    pub fn accepts(&self, digits: &DigitString) -> bool {
        let mut q = self.initial();
        for &d in digits.digits() {
            if d as usize >= self.dfa.radix() {
                return false;
            }
            match self.step(q, d) {
                Some(n) => q = n,
                None => return false,
            }
        }
        true
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    fn check_against_greedy(&self, subst: &Substitution) -> Result<()> {
        let u = subst.lengths_u(40);
        let len = u.iter().rposition(|&x| x <= 50_000).unwrap_or(0).max(1);
        let limit = u[len];
        for n in 0..limit {
            let rep = greedy_representation(subst, n);
            if !self.accepts(&rep) {
                return Err(Error::InvalidSubstitution(format!(
                    "normal representations of {subst} are not described by the window rule \
                     (greedy representation {rep} of {n} rejected)"
                )));
            }
        }
        // number of accepted strings of length `len`
        let mut ways = vec![0u64; self.num_states()];
        ways[self.initial() as usize] = 1;
        for _ in 0..len {
            let mut next = vec![0u64; self.num_states()];
            for (q, &c) in ways.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for d in 0..self.dfa.radix() as Digit {
                    if let Some(t) = self.step(q as u32, d) {
                        next[t as usize] += c;
                    }
                }
            }
            ways = next;
        }
        let accepted: u64 = ways.iter().sum();
        if accepted != limit {
            return Err(Error::InvalidSubstitution(format!(
                "normal representations of {subst} are not described by the window rule \
                 ({accepted} strings of length {len} accepted, {limit} expected)"
            )));
        }
        Ok(())
    }
}

/// Unminimized window-rule automaton: states are the last `m-1` digits.
fn window_rule_dfa(subst: &Substitution) -> Dfa {
    use std::collections::HashMap;

    let m = subst.m();
    let bound: Vec<Digit> = subst.alpha().iter().map(|&a| a as Digit).collect();
    let radix = subst.max_digit() as usize + 1;

    let fits = |window: &[Digit]| -> bool {
        (0..window.len()).all(|i| {
            let mut padded = window[i..].to_vec();
            padded.resize(m, 0);
            padded < bound
        })
    };

    let start: Vec<Digit> = vec![0; m - 1];
    let mut index: HashMap<Vec<Digit>, u32> = HashMap::new();
    let mut states = vec![start.clone()];
    index.insert(start, 0);
    let mut delta: Vec<u32> = Vec::new();
    let mut accepting = Vec::new();
    let mut dead: Option<u32> = None;
    let mut i = 0;
    while i < states.len() {
        let cur = states[i].clone();
        accepting.push(true);
        for d in 0..radix as Digit {
            let mut window = cur.clone();
            window.push(d);
            let target = if fits(&window) {
                let key = window[1..].to_vec();
                *index.entry(key.clone()).or_insert_with(|| {
                    states.push(key);
                    (states.len() - 1) as u32
                })
            } else {
                *dead.get_or_insert(u32::MAX)
            };
            delta.push(target);
        }
        i += 1;
    }
    let n = states.len() as u32;
    if dead.is_some() {
        for t in delta.iter_mut().filter(|t| **t == u32::MAX) {
            *t = n;
        }
        delta.extend(std::iter::repeat_n(n, radix));
        accepting.push(false);
    }
    Dfa::new(subst.alpha().to_vec(), 0, delta, accepting).expect("window automaton is total")
}
