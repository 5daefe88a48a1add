//! Abelian co-decomposition of pairs of abelian-equivalent words.
//!
//! A [`FactorPair`] `(z, z~)` is a pair of words with equal Parikh vectors. The
//! co-decomposition of `(v, w)` cuts both words at every position where their
//! prefixes are abelian equivalent, which yields the decomposition with the
//! largest number of blocks. The digit maps `D_d` substitute a pair and rotate
//! `d` zeros from the front of the bottom word to its back before decomposing
//! again.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::numeration::Digit;
use crate::word::{parikh, Letter, ParikhVector, Substitution, Word};

/// An ordered pair of abelian-equivalent words, written `top / bottom`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorPair {
    pub top: Word,
    pub bottom: Word,
}

impl FactorPair {
    pub fn new(top: Word, bottom: Word) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::ParikhMismatch {
                top: top.to_string(),
                bottom: bottom.to_string(),
            });
        }
        Ok(FactorPair { top, bottom })
    }

    /// Parses `"0102/1020"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (t, b) = s
            .split_once('/')
            .ok_or_else(|| Error::Domain(format!("expected top/bottom, got {s:?}")))?;
        Self::new(t.parse()?, b.parse()?)
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn is_abelian(&self, m: usize) -> bool {
        parikh(&self.top, m) == parikh(&self.bottom, m)
    }
}

impl fmt::Display for FactorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.top, self.bottom)
    }
}

/// 1-based identifier of a pair inside a [`PairCatalog`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairId(pub u32);

impl fmt::Display for PairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Duplicate-free list of pairs; identifiers are assigned densely from 1 in order
/// of first registration and never change.
#[derive(Debug, Clone, Default)]
pub struct PairCatalog {
    pairs: Vec<FactorPair>,
    index: HashMap<FactorPair, PairId>,
}

impl PairCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the identifier of `pair`, registering it if it is new.
    pub fn intern(&mut self, pair: FactorPair) -> PairId {
        if let Some(&id) = self.index.get(&pair) {
            return id;
        }
        let id = PairId(self.pairs.len() as u32 + 1);
        self.pairs.push(pair.clone());
        self.index.insert(pair, id);
        id
    }

    pub fn lookup(&self, pair: &FactorPair) -> Option<PairId> {
        self.index.get(pair).copied()
    }

    pub fn get(&self, id: PairId) -> Option<&FactorPair> {
        self.pairs.get((id.0 as usize).checked_sub(1)?)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PairId, &FactorPair)> {
        self.pairs.iter().enumerate().map(|(i, p)| (PairId(i as u32 + 1), p))
    }
}

/// A set of catalog identifiers, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZSet(Vec<PairId>);

impl ZSet {
    pub fn from_ids(ids: impl IntoIterator<Item = PairId>) -> Self {
        let mut v: Vec<PairId> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ZSet(v)
    }

    pub fn ids(&self) -> &[PairId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: PairId) -> bool {
        self.0.binary_search(&id).is_ok()
    }
}

impl fmt::Display for ZSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{id}")?;
        }
        Ok(())
    }
}

/// Tracks `Psi(prefix of v) - Psi(prefix of w)` and how many of its components are
/// nonzero, so balance points are detected in O(1) per letter.
struct BalanceCounter {
    diff: Vec<i64>,
    nonzero: usize,
}

impl BalanceCounter {
    fn new(m: usize) -> Self {
        BalanceCounter { diff: vec![0; m], nonzero: 0 }
    }

    fn bump(&mut self, letter: Letter, by: i64) {
        let slot = &mut self.diff[letter as usize];
        let was_zero = *slot == 0;
        *slot += by;
        match (was_zero, *slot == 0) {
            (true, false) => self.nonzero += 1,
            (false, true) => self.nonzero -= 1,
            _ => {}
        }
    }

    fn push(&mut self, top: Letter, bottom: Letter) {
        if top != bottom {
            self.bump(top, 1);
            self.bump(bottom, -1);
        }
    }

    fn balanced(&self) -> bool {
        self.nonzero == 0
    }
}

fn alphabet_size(v: &[Letter], w: &[Letter]) -> usize {
    v.iter().chain(w).copied().max().map_or(1, |a| a as usize + 1)
}

/// Maximal abelian co-decomposition of `(v, w)`, in left-to-right order.
///
/// Cuts at every interior position `i` where `v[..i]` and `w[..i]` are abelian
/// equivalent. With `refined`, a cut is only made where `w[i] == 0`, so that every
/// block after the first has a bottom word starting with 0.
pub fn codecompose(v: &Word, w: &Word, refined: bool) -> Result<Vec<FactorPair>> {
    let (a, b) = (v.letters(), w.letters());
    let mismatch = || Error::ParikhMismatch { top: v.to_string(), bottom: w.to_string() };
    if a.len() != b.len() || a.is_empty() {
        return Err(mismatch());
    }
    let mut counter = BalanceCounter::new(alphabet_size(a, b));
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 0..a.len() {
        counter.push(a[i], b[i]);
        let end = i + 1;
        if counter.balanced() && end < a.len() && (!refined || b[end] == 0) {
            blocks.push(FactorPair { top: a[start..end].into(), bottom: b[start..end].into() });
            start = end;
        }
    }
    if !counter.balanced() {
        return Err(mismatch());
    }
    blocks.push(FactorPair { top: a[start..].into(), bottom: b[start..].into() });
    Ok(blocks)
}

/// Drops repeated pairs, keeping first occurrences in order.
fn distinct(pairs: Vec<FactorPair>) -> Vec<FactorPair> {
    let mut seen = std::collections::HashSet::new();
    pairs.into_iter().filter(|p| seen.insert(p.clone())).collect()
}

/// `{ Psi(s) - Psi(r) }` over equal-length nonempty prefixes `r` of the top word
/// and `s` of the bottom word.
pub fn vect(pair: &FactorPair, m: usize) -> BTreeSet<ParikhVector> {
    let mut diff = vec![0i64; m];
    let mut out = BTreeSet::new();
    for (&r, &s) in pair.top.letters().iter().zip(pair.bottom.letters()) {
        diff[r as usize] -= 1;
        diff[s as usize] += 1;
        out.insert(ParikhVector::from_counts(diff.clone()));
    }
    out
}

/// `R = m - 1 + min { j >= 1 : phi^j(l) starts with 0 for every letter l }`.
pub fn compute_r(subst: &Substitution) -> usize {
    let m = subst.m();
    let first_letter = |l: usize| -> usize {
        if subst.alpha()[l] >= 1 {
            0
        } else {
            l + 1
        }
    };
    let mut firsts: Vec<usize> = (0..m).map(first_letter).collect();
    let mut j = 1;
    while firsts.iter().any(|&f| f != 0) {
        firsts = firsts.into_iter().map(first_letter).collect();
        j += 1;
    }
    m - 1 + j
}

/// `Z(n)` computed from its definition: the co-decomposition of
/// `(phi^{K+R}(0), u[..n]^{-1} phi^{K+R}(0) u[..n])` where `K` is minimal with
/// `n <= U_K`. Pairs are returned distinct, in the order of their first block.
pub fn zset_from_definition(subst: &Substitution, n: u64, refined: bool) -> Result<Vec<FactorPair>> {
    if n == 0 {
        return Err(Error::Domain("Z(n) is defined for n >= 1".into()));
    }
    let k = subst.lengths().position(|u| n <= u).expect("U_j is unbounded");
    let v = subst.iterate(0, k + compute_r(subst))?;
    let n = n as usize;
    let mut rotated = v.letters()[n..].to_vec();
    rotated.extend_from_slice(&v.letters()[..n]);
    Ok(distinct(codecompose(&v, &Word::new(rotated), refined)?))
}

/// Base set `Z(n)` for `1 <= n <= alpha[0]`, the seeds of the closure.
///
/// Pairs are ordered by (length, top, bottom) so that identifiers follow the
/// conventional numbering, which starts with the shortest pair `0/0`.
pub fn base_zset(subst: &Substitution, n: u64, refined: bool) -> Result<Vec<FactorPair>> {
    if n < 1 || n > subst.max_digit() as u64 {
        return Err(Error::Domain(format!(
            "base sets exist for 1 <= n <= {}, got {n}",
            subst.max_digit()
        )));
    }
    let mut pairs = zset_from_definition(subst, n, refined)?;
    pairs.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(pairs)
}

/// The digit map `D_d`: co-decomposition of `(phi(z), 0^{-d} phi(z~) 0^d)`.
///
/// Fails with [`Error::NotApplicable`] if `phi(z~)` does not begin with `0^d`.
pub fn apply_digit_map(
    subst: &Substitution,
    digit: Digit,
    pair: &FactorPair,
    refined: bool,
) -> Result<Vec<FactorPair>> {
    if digit > subst.max_digit() {
        return Err(Error::InvalidDigit { digit, max: subst.max_digit() });
    }
    let top = subst.apply(&pair.top)?;
    let image = subst.apply(&pair.bottom)?;
    let d = digit as usize;
    if image.len() < d || image.letters()[..d].iter().any(|&a| a != 0) {
        return Err(Error::NotApplicable { digit, image: image.to_string() });
    }
    let mut bottom = image.letters()[d..].to_vec();
    bottom.extend(std::iter::repeat_n(0, d));
    Ok(distinct(codecompose(&top, &Word::new(bottom), refined)?))
}

/// Union of `vect` over a collection of pairs.
pub fn vect_union<'a>(pairs: impl IntoIterator<Item = &'a FactorPair>, m: usize) -> BTreeSet<ParikhVector> {
    let mut out = BTreeSet::new();
    for p in pairs {
        out.extend(vect(p, m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fp(s: &str) -> FactorPair {
        FactorPair::parse(s).unwrap()
    }

    fn pv(c: &[i64]) -> ParikhVector {
        ParikhVector::from_counts(c.to_vec())
    }

    #[test]
    fn codecompose_examples() {
        assert_eq!(
            codecompose(&w("0102"), &w("1020"), false).unwrap(),
            vec![fp("01/10"), fp("02/20")]
        );
        assert_eq!(codecompose(&w("0"), &w("0"), false).unwrap(), vec![fp("0/0")]);
        assert_eq!(
            codecompose(&w("0102010"), &w("1020100"), false).unwrap(),
            vec![fp("01/10"), fp("02/20"), fp("01/10"), fp("0/0")]
        );
    }

    #[test]
    fn codecompose_rejects_non_abelian_input() {
        assert!(matches!(
            codecompose(&w("01"), &w("02"), false),
            Err(Error::ParikhMismatch { .. })
        ));
        assert!(codecompose(&w("01"), &w("0"), false).is_err());
        assert!(codecompose(&Word::empty(), &Word::empty(), false).is_err());
    }

    #[test]
    fn refined_cuts_only_before_zero() {
        // plain: 10 | 2 | 0 ... the cut before bottom letter 2 is suppressed
        assert_eq!(
            codecompose(&w("1020"), &w("1200"), false).unwrap(),
            vec![fp("1/1"), fp("02/20"), fp("0/0")]
        );
        assert_eq!(
            codecompose(&w("1020"), &w("1200"), true).unwrap(),
            vec![fp("102/120"), fp("0/0")]
        );
    }

    #[test]
    fn vect_examples() {
        let expected: BTreeSet<_> = [pv(&[-1, 1, 0]), pv(&[0, 0, 0]), pv(&[-1, 0, 1])].into();
        assert_eq!(vect(&fp("0102/1020"), 3), expected);
        assert_eq!(vect(&fp("0/0"), 3), [pv(&[0, 0, 0])].into());
        assert_eq!(vect(&fp("01/10"), 3), [pv(&[-1, 1, 0]), pv(&[0, 0, 0])].into());
    }

    #[test]
    fn r_constant() {
        assert_eq!(compute_r(&Substitution::tribonacci()), 3);
        assert_eq!(compute_r(&Substitution::m_bonacci(4).unwrap()), 4);
        assert_eq!(compute_r(&Substitution::m_bonacci(2).unwrap()), 2);
        // 1 -> 2 does not start with 0, phi^2(1) = phi(2) = 0 does
        assert_eq!(compute_r(&Substitution::simple_parry(vec![1, 0, 1]).unwrap()), 4);
    }

    #[test]
    fn base_sets() {
        let t = Substitution::tribonacci();
        assert_eq!(base_zset(&t, 1, false).unwrap(), vec![fp("0/0"), fp("01/10"), fp("02/20")]);
        let rho = vect_union(&base_zset(&t, 1, false).unwrap(), 3).len();
        assert_eq!(rho, 3);

        let q = Substitution::m_bonacci(4).unwrap();
        let z = base_zset(&q, 1, false).unwrap();
        assert_eq!(z, vec![fp("0/0"), fp("01/10"), fp("02/20"), fp("03/30")]);
        assert_eq!(vect_union(&z, 4).len(), 4);

        assert!(base_zset(&t, 2, false).is_err());
        assert!(base_zset(&t, 0, false).is_err());
    }

    #[test]
    fn digit_map_examples() {
        let t = Substitution::tribonacci();
        assert_eq!(apply_digit_map(&t, 0, &fp("01/10"), false).unwrap(), vec![fp("0/0"), fp("102/201")]);
        assert_eq!(apply_digit_map(&t, 1, &fp("0/0"), false).unwrap(), vec![fp("01/10")]);
        assert_eq!(apply_digit_map(&t, 1, &fp("02/20"), false).unwrap(), vec![fp("0/0"), fp("1/1")]);
        assert_eq!(
            apply_digit_map(&t, 0, &fp("0102/2010"), false).unwrap(),
            vec![fp("0/0"), fp("10/01"), fp("20/02")]
        );
        assert!(matches!(apply_digit_map(&t, 2, &fp("0/0"), false), Err(Error::InvalidDigit { .. })));
    }

    #[test]
    fn digit_map_reports_inadmissible_extension() {
        // 1 -> 2: the image of bottom word "1" does not start with 0
        let s = Substitution::simple_parry(vec![1, 0, 1]).unwrap();
        assert!(matches!(
            apply_digit_map(&s, 1, &fp("1/1"), false),
            Err(Error::NotApplicable { digit: 1, .. })
        ));
    }

    #[test]
    fn catalog_ids_are_dense_and_stable() {
        let mut c = PairCatalog::new();
        assert_eq!(c.intern(fp("0/0")), PairId(1));
        assert_eq!(c.intern(fp("01/10")), PairId(2));
        assert_eq!(c.intern(fp("0/0")), PairId(1));
        assert_eq!(c.len(), 2);
        assert_eq!(c.get(PairId(2)), Some(&fp("01/10")));
        assert_eq!(c.get(PairId(0)), None);
        assert_eq!(c.get(PairId(3)), None);
    }

    /// Random abelian-equivalent pair: a word and a random permutation-like
    /// rearrangement built by swapping letters.
    fn arb_abelian_pair() -> impl Strategy<Value = (Word, Word)> {
        (prop::collection::vec(0u8..3, 1..30), prop::collection::vec(any::<prop::sample::Index>(), 0..30))
            .prop_map(|(v, swaps)| {
                let mut u = v.clone();
                for pair in swaps.chunks(2) {
                    if let [a, b] = pair {
                        let (i, j) = (a.index(u.len()), b.index(u.len()));
                        u.swap(i, j);
                    }
                }
                (Word::new(v), Word::new(u))
            })
    }

    proptest! {
        #[test]
        fn blocks_reconstruct_inputs((v, u) in arb_abelian_pair(), refined in any::<bool>()) {
            let blocks = codecompose(&v, &u, refined).unwrap();
            let top: Vec<u8> = blocks.iter().flat_map(|b| b.top.letters().to_vec()).collect();
            let bottom: Vec<u8> = blocks.iter().flat_map(|b| b.bottom.letters().to_vec()).collect();
            prop_assert_eq!(top, v.letters().to_vec());
            prop_assert_eq!(bottom, u.letters().to_vec());
            for b in &blocks {
                prop_assert!(b.is_abelian(3));
                prop_assert!(!b.is_empty());
            }
            for (i, b) in blocks.iter().enumerate() {
                if refined && i > 0 {
                    prop_assert_eq!(b.bottom[0], 0);
                }
            }
        }

        #[test]
        fn plain_blocks_are_maximal((v, u) in arb_abelian_pair()) {
            for b in codecompose(&v, &u, false).unwrap() {
                prop_assert_eq!(codecompose(&b.top, &b.bottom, false).unwrap().len(), 1);
            }
        }

        #[test]
        fn vect_of_whole_equals_union_over_blocks((v, u) in arb_abelian_pair()) {
            let whole = vect(&FactorPair::new(v.clone(), u.clone()).unwrap(), 3);
            let blocks = codecompose(&v, &u, false).unwrap();
            prop_assert_eq!(whole, vect_union(&blocks, 3));
        }
    }
}
