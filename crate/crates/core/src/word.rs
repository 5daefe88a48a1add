//! Simple Parry substitutions, their fixed points and Parikh statistics.
//!
//! A simple Parry substitution over the alphabet `{0, .., m-1}` is determined by
//! its exponent list `alpha`:
//!
//! ```text
//! 0   -> 0^alpha[0] 1
//! 1   -> 0^alpha[1] 2
//! ...
//! m-1 -> 0^alpha[m-1]
//! ```
//!
//! The m-bonacci substitutions are the special case `alpha = (1, .., 1)`.

use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of the alphabet `{0, .., m-1}`.
pub type Letter = u8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Substitution {
    alpha: Vec<u32>,
}

impl Substitution {
    /// Builds the substitution with exponents `alpha`.
    ///
    /// Requires `alpha[0] >= 1`, `alpha[l] <= alpha[0]` for every `l`, at least two
    /// letters, and a non-erasing last image (`alpha[m-1] >= 1`).
    pub fn simple_parry(alpha: Vec<u32>) -> Result<Self> {
        let m = alpha.len();
        if m < 2 {
            return Err(Error::InvalidSubstitution(format!(
                "alphabet size must be at least 2, got {m}"
            )));
        }
        if m > u8::MAX as usize {
            return Err(Error::InvalidSubstitution(format!("alphabet size {m} is too large")));
        }
        if alpha[0] == 0 {
            return Err(Error::InvalidSubstitution("alpha[0] must be at least 1".into()));
        }
        if alpha[0] > 9 {
            return Err(Error::InvalidSubstitution(
                "alpha[0] must be at most 9 so digits stay single characters".into(),
            ));
        }
        if let Some((l, a)) = alpha.iter().enumerate().find(|(_, &a)| a > alpha[0]) {
            return Err(Error::InvalidSubstitution(format!(
                "alpha[{l}] = {a} exceeds alpha[0] = {}",
                alpha[0]
            )));
        }
        if alpha[m - 1] == 0 {
            return Err(Error::InvalidSubstitution(
                "alpha[m-1] must be at least 1 (the last letter would be erased)".into(),
            ));
        }
        Ok(Substitution { alpha })
    }

    /// The m-bonacci substitution `0 -> 01, 1 -> 02, .., m-2 -> 0(m-1), m-1 -> 0`.
    pub fn m_bonacci(m: usize) -> Result<Self> {
        Self::simple_parry(vec![1; m])
    }

    pub fn tribonacci() -> Self {
        Self::m_bonacci(3).expect("m = 3 is valid")
    }

    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    /// Largest digit of the associated numeration system.
    pub fn max_digit(&self) -> u8 {
        self.alpha[0] as u8
    }

    pub fn is_m_bonacci(&self) -> bool {
        self.alpha.iter().all(|&a| a == 1)
    }

    pub fn check_letter(&self, letter: Letter) -> Result<()> {
        if (letter as usize) < self.m() {
            Ok(())
        } else {
            Err(Error::InvalidLetter { letter, m: self.m() })
        }
    }

    /// `0^alpha[l] (l+1)` for `l < m-1`, and `0^alpha[m-1]` for the last letter.
    pub fn image(&self, letter: Letter) -> Result<Word> {
        self.check_letter(letter)?;
        let mut out = Vec::with_capacity(self.alpha[letter as usize] as usize + 1);
        self.push_image(letter, &mut out);
        Ok(Word(out))
    }

    fn push_image(&self, letter: Letter, out: &mut Vec<Letter>) {
        let l = letter as usize;
        out.extend(std::iter::repeat_n(0, self.alpha[l] as usize));
        if l + 1 < self.m() {
            out.push(letter + 1);
        }
    }

    /// Letterwise image of `w`.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        for &a in w.letters() {
            self.check_letter(a)?;
        }
        Ok(self.apply_unchecked(w.letters()))
    }

    pub(crate) fn apply_unchecked(&self, letters: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(letters.len() * 2);
        for &a in letters {
            self.push_image(a, &mut out);
        }
        Word(out)
    }

    /// `phi^k(letter)`.
    pub fn iterate(&self, letter: Letter, k: usize) -> Result<Word> {
        self.check_letter(letter)?;
        let mut w = Word(vec![letter]);
        for _ in 0..k {
            w = self.apply_unchecked(w.letters());
        }
        Ok(w)
    }

    /// The prefix of length `length` of the fixed point `lim phi^k(0)`.
    pub fn fixed_point_prefix(&self, length: usize) -> Word {
        let mut w = vec![0];
        while w.len() < length {
            w = self.apply_unchecked(&w).0;
        }
        w.truncate(length);
        Word(w)
    }

    /// `U_0, .., U_k` where `U_j = |phi^j(0)|`.
    pub fn lengths_u(&self, k: usize) -> Vec<u64> {
        self.lengths().take(k + 1).collect()
    }

    /// The unbounded sequence `U_0, U_1, ..` (saturating at `u64::MAX`).
    pub fn lengths(&self) -> impl Iterator<Item = u64> + '_ {
        // counts[l] = occurrences of letter l in phi^j(0)
        let mut counts = vec![0u64; self.m()];
        counts[0] = 1;
        std::iter::from_fn(move || {
            let total = counts.iter().fold(0u64, |s, &c| s.saturating_add(c));
            let m = counts.len();
            let mut next = vec![0u64; m];
            for (l, &c) in counts.iter().enumerate() {
                next[0] = next[0].saturating_add(c.saturating_mul(self.alpha[l] as u64));
                if l + 1 < m {
                    next[l + 1] = next[l + 1].saturating_add(c);
                }
            }
            counts = next;
            Some(total)
        })
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m();
        for l in 0..m {
            if l > 0 {
                write!(f, ", ")?;
            }
            let img = self.image(l as Letter).expect("letter in range");
            write!(f, "{l}->{img}")?;
        }
        Ok(())
    }
}

/// A finite word over a small integer alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Index<usize> for Word {
    type Output = Letter;

    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    /// Parses a word written with decimal letters, e.g. `"0102"`.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Letter)
                    .ok_or_else(|| Error::Domain(format!("'{c}' is not a letter")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for &a in &self.0 {
            if a < 10 {
                write!(f, "{a}")?;
            } else {
                write!(f, "[{a}]")?;
            }
        }
        Ok(())
    }
}

/// Letter counts of a word. Components are signed so that differences of
/// Parikh vectors (relative Parikh vectors) share the type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector(Vec<i64>);

impl ParikhVector {
    pub fn zero(m: usize) -> Self {
        ParikhVector(vec![0; m])
    }

    pub fn from_counts(counts: Vec<i64>) -> Self {
        ParikhVector(counts)
    }

    pub fn counts(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        ParikhVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ParikhVector {
    type Output = ParikhVector;

    fn sub(self, rhs: &ParikhVector) -> ParikhVector {
        ParikhVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parikh vector of `w` over an alphabet of size `m`.
pub fn parikh(w: &Word, m: usize) -> ParikhVector {
    let mut counts = vec![0i64; m];
    for &a in w.letters() {
        counts[a as usize] += 1;
    }
    ParikhVector(counts)
}
