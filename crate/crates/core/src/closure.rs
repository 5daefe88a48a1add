//! Fixed-point exploration of the sets `Z(n)` and the automaton they induce.
//!
//! Starting from the base sets `Z(1) .. Z(alpha[0])`, the exploration alternates
//! between applying the digit maps to newly found pairs and forming, for each newly
//! found set and digit, the union of the images of its members. It stops after a
//! round that produces no new set.
//!
//! Both inner loops run over digits on the outside and identifiers on the inside,
//! which makes the numbering of pairs and sets deterministic and matches the
//! conventional tables for the Tribonacci word.
//!
//! For substitutions other than m-bonacci the numeration system restricts which
//! digit may follow which, so every state also carries a state of the
//! [`Admissibility`] automaton and inadmissible digits lead nowhere.

use std::collections::{BTreeSet, HashMap};

use crate::automaton::{Dfao, StateId};
use crate::codecomp::{apply_digit_map, base_zset, vect, FactorPair, PairCatalog, PairId, ZSet};
use crate::error::{Error, Result};
use crate::numeration::{Admissibility, Digit};
use crate::word::{ParikhVector, Substitution};

#[derive(Debug, Clone)]
pub struct ExploreOptions {
    /// Co-decomposition convention; `None` picks plain for m-bonacci and refined otherwise.
    pub refined: Option<bool>,
    pub max_iterations: usize,
    pub max_states: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { refined: None, max_iterations: 1000, max_states: 5_000_000 }
    }
}

/// What one round of the exploration discovered. Ranges are inclusive and 1-based;
/// `None` means nothing new.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Milestone {
    pub iteration: usize,
    pub new_zsets: Option<(StateId, StateId)>,
    pub new_pairs: Option<(u32, u32)>,
}

#[derive(Debug, Clone)]
enum Image {
    Pairs(Vec<PairId>),
    NotApplicable,
}

/// Everything the exploration discovered. States are numbered `1..=M`.
#[derive(Debug, Clone)]
pub struct ClosureTables {
    subst: Substitution,
    refined: bool,
    catalog: PairCatalog,
    /// `images[d][j - 1]`
    images: Vec<Vec<Option<Image>>>,
    zsets: Vec<ZSet>,
    adm_states: Vec<Option<u32>>,
    /// `delta[q - 1][d]`; `None` for inadmissible digits
    delta: Vec<Vec<Option<StateId>>>,
    /// `delta(0, d)` for `d = 1..=alpha[0]`
    seeds: Vec<StateId>,
    tau: Vec<u32>,
    milestones: Vec<Milestone>,
}

impl ClosureTables {
    pub fn subst(&self) -> &Substitution {
        &self.subst
    }

    pub fn m(&self) -> usize {
        self.subst.m()
    }

    pub fn refined(&self) -> bool {
        self.refined
    }

    pub fn catalog(&self) -> &PairCatalog {
        &self.catalog
    }

    /// Number of states `M`, not counting the initial state.
    pub fn num_states(&self) -> usize {
        self.zsets.len()
    }

    /// Number of distinct sets among the states (differs from `num_states` only
    /// when admissibility is tracked).
    pub fn num_distinct_zsets(&self) -> usize {
        self.zsets.iter().collect::<std::collections::HashSet<_>>().len()
    }

    fn check_state(&self, q: StateId) -> Result<usize> {
        if q == 0 || q as usize > self.zsets.len() {
            return Err(Error::Domain(format!("state {q} is not in 1..={}", self.zsets.len())));
        }
        Ok(q as usize - 1)
    }

    pub fn zset(&self, q: StateId) -> Result<&ZSet> {
        Ok(&self.zsets[self.check_state(q)?])
    }

    /// Admissibility state carried by `q`, if admissibility is tracked.
    pub fn admissibility_state(&self, q: StateId) -> Result<Option<u32>> {
        Ok(self.adm_states[self.check_state(q)?])
    }

    /// Transition from `q >= 0` on digit `d`; `None` if the digit is inadmissible.
    pub fn delta(&self, q: StateId, d: Digit) -> Result<Option<StateId>> {
        if d > self.subst.max_digit() {
            return Err(Error::InvalidDigit { digit: d, max: self.subst.max_digit() });
        }
        if q == 0 {
            return Ok(Some(if d == 0 { 0 } else { self.seeds[d as usize - 1] }));
        }
        Ok(self.delta[self.check_state(q)?][d as usize])
    }

    pub fn tau(&self, q: StateId) -> Result<u32> {
        Ok(self.tau[self.check_state(q)?])
    }

    /// `D_d(zeta_j)` as sorted identifiers, if it was computed and applicable.
    pub fn d_image(&self, d: Digit, j: PairId) -> Option<Vec<PairId>> {
        match self.images.get(d as usize)?.get((j.0 as usize).checked_sub(1)?)? {
            Some(Image::Pairs(ids)) => {
                let mut v = ids.clone();
                v.sort_unstable();
                Some(v)
            }
            _ => None,
        }
    }

    pub fn milestones(&self) -> &[Milestone] {
        &self.milestones
    }

    /// Union of `vect` over the members of state `q`.
    pub fn vect_union(&self, q: StateId) -> BTreeSet<ParikhVector> {
        let m = self.m();
        self.zsets[q as usize - 1]
            .ids()
            .iter()
            .flat_map(|&id| vect(self.catalog.get(id).expect("catalog member"), m))
            .collect()
    }

    /// The set of identifiers for the given pairs, if all of them are catalogued.
    pub fn lookup_zset(&self, pairs: &[FactorPair]) -> Option<ZSet> {
        pairs
            .iter()
            .map(|p| self.catalog.lookup(p))
            .collect::<Option<Vec<_>>>()
            .map(ZSet::from_ids)
    }
}

struct Explorer<'a> {
    subst: &'a Substitution,
    refined: bool,
    adm: Option<Admissibility>,
    catalog: PairCatalog,
    images: Vec<Vec<Option<Image>>>,
    zsets: Vec<ZSet>,
    adm_states: Vec<Option<u32>>,
    index: HashMap<(ZSet, Option<u32>), StateId>,
    max_states: usize,
}

impl Explorer<'_> {
    fn intern_state(&mut self, z: ZSet, a: Option<u32>) -> Result<StateId> {
        let key = (z, a);
        if let Some(&q) = self.index.get(&key) {
            return Ok(q);
        }
        if self.zsets.len() >= self.max_states {
            return Err(Error::LimitExceeded { what: "states", limit: self.max_states });
        }
        self.zsets.push(key.0.clone());
        self.adm_states.push(a);
        let q = self.zsets.len() as StateId;
        self.index.insert(key, q);
        Ok(q)
    }

    fn image(&mut self, d: Digit, j: PairId) -> Result<&Image> {
        let slot = j.0 as usize - 1;
        let row = &mut self.images[d as usize];
        if row.len() <= slot {
            row.resize(slot + 1, None);
        }
        if row[slot].is_none() {
            let pair = self.catalog.get(j).expect("catalogued pair").clone();
            let img = match apply_digit_map(self.subst, d, &pair, self.refined) {
                Ok(blocks) => Image::Pairs(blocks.into_iter().map(|p| self.catalog.intern(p)).collect()),
                Err(Error::NotApplicable { .. }) => Image::NotApplicable,
                Err(e) => return Err(e),
            };
            self.images[d as usize][slot] = Some(img);
        }
        Ok(self.images[d as usize][slot].as_ref().expect("filled above"))
    }

    fn successor(&mut self, q: StateId, d: Digit) -> Result<Option<StateId>> {
        let next_adm = match &self.adm {
            None => None,
            Some(adm) => match adm.step(self.adm_states[q as usize - 1].expect("tracked"), d) {
                None => return Ok(None),
                s => s,
            },
        };
        let members = self.zsets[q as usize - 1].ids().to_vec();
        let mut union = Vec::new();
        for j in members {
            match self.image(d, j)? {
                Image::Pairs(ids) => union.extend_from_slice(ids),
                Image::NotApplicable => {
                    return Err(Error::Invariant(format!(
                        "D_{d} is not applicable to pair {j} of state {q} although digit {d} is admissible"
                    )))
                }
            }
        }
        self.intern_state(ZSet::from_ids(union), next_adm).map(Some)
    }
}

/// Runs the exploration to its fixed point.
pub fn explore(subst: &Substitution, opts: &ExploreOptions) -> Result<ClosureTables> {
    let refined = opts.refined.unwrap_or(!subst.is_m_bonacci());
    let adm = if subst.is_m_bonacci() { None } else { Some(Admissibility::new(subst)?) };
    // every new pair is mapped eagerly in the m-bonacci case, where all digit
    // strings are followed; otherwise images are computed on demand
    let eager = adm.is_none();
    let radix = subst.max_digit() as usize + 1;
    let mut ex = Explorer {
        subst,
        refined,
        adm,
        catalog: PairCatalog::new(),
        images: vec![Vec::new(); radix],
        zsets: Vec::new(),
        adm_states: Vec::new(),
        index: HashMap::new(),
        max_states: opts.max_states,
    };

    let mut seeds = Vec::new();
    for n in 1..=subst.max_digit() {
        let ids: Vec<PairId> = base_zset(subst, n as u64, refined)?
            .into_iter()
            .map(|p| ex.catalog.intern(p))
            .collect();
        let a = match &ex.adm {
            None => None,
            Some(adm) => Some(adm.step(adm.initial(), n).ok_or_else(|| {
                Error::Invariant(format!("single digit {n} is not admissible"))
            })?),
        };
        seeds.push(ex.intern_state(ZSet::from_ids(ids), a)?);
    }

    let range = |lo: usize, hi: usize| (hi > lo).then(|| (lo as u32 + 1, hi as u32));
    let mut milestones =
        vec![Milestone { iteration: 0, new_zsets: range(0, ex.zsets.len()), new_pairs: range(0, ex.catalog.len()) }];
    let mut delta: Vec<Vec<Option<StateId>>> = Vec::new();
    let (mut a_old, mut a_new) = (0usize, ex.catalog.len());
    let (mut m_old, mut m_new) = (0usize, ex.zsets.len());
    let mut k = 0;
    loop {
        k += 1;
        if k > opts.max_iterations {
            return Err(Error::LimitExceeded { what: "iterations", limit: opts.max_iterations });
        }
        let pairs_before = ex.catalog.len();
        let states_before = ex.zsets.len();
        if eager {
            for d in 0..radix as Digit {
                for j in a_old + 1..=a_new {
                    ex.image(d, PairId(j as u32))?;
                }
            }
        }
        a_old = a_new;
        a_new = ex.catalog.len();
        delta.resize(m_new, vec![None; radix]);
        for d in 0..radix as Digit {
            for q in m_old + 1..=m_new {
                delta[q - 1][d as usize] = ex.successor(q as StateId, d)?;
            }
        }
        m_old = m_new;
        m_new = ex.zsets.len();
        milestones.push(Milestone {
            iteration: k,
            new_zsets: range(states_before, ex.zsets.len()),
            new_pairs: range(pairs_before, ex.catalog.len()),
        });
        if ex.zsets.len() == states_before {
            break;
        }
    }

    let mut tables = ClosureTables {
        subst: subst.clone(),
        refined,
        catalog: ex.catalog,
        images: ex.images,
        zsets: ex.zsets,
        adm_states: ex.adm_states,
        delta,
        seeds,
        tau: Vec::new(),
        milestones,
    };
    tables.tau = (1..=tables.num_states() as StateId)
        .map(|q| tables.vect_union(q).len() as u32)
        .collect();
    Ok(tables)
}

/// `tau(q)`: the number of distinct vectors in the union of `vect` over `Z_q`.
pub fn output_value(tables: &ClosureTables, q: StateId) -> Result<u32> {
    tables.tau(q)
}

/// The automaton on states `0..=M`, with an extra output-less sink if some digit
/// is inadmissible somewhere.
pub fn build_dfao(tables: &ClosureTables) -> Dfao {
    let radix = tables.subst.max_digit() as usize + 1;
    let m = tables.num_states();
    let needs_sink = tables.delta.iter().flatten().any(Option::is_none);
    let sink = (m + 1) as StateId;
    let mut delta = Vec::with_capacity((m + 2) * radix);
    delta.push(0);
    delta.extend_from_slice(&tables.seeds);
    for row in &tables.delta {
        delta.extend(row.iter().map(|t| t.unwrap_or(sink)));
    }
    let mut output: Vec<Option<u32>> = std::iter::once(None).chain(tables.tau.iter().copied().map(Some)).collect();
    if needs_sink {
        delta.extend(std::iter::repeat_n(sink, radix));
        output.push(None);
    }
    Dfao::new(tables.subst.alpha().to_vec(), 0, delta, output).expect("closure tables are complete")
}
