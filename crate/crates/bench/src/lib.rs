//! Fixtures shared by the benchmarks.

use abac_core::{build_dfao, explore, ClosureTables, Dfao, ExploreOptions, Substitution};

pub fn closure(subst: &Substitution) -> ClosureTables {
    explore(subst, &ExploreOptions::default()).expect("closure terminates")
}

/// Unreduced and minimized automata for a substitution.
pub fn automata(subst: &Substitution) -> (Dfao, Dfao) {
    let a = build_dfao(&closure(subst));
    let m = a.minimize();
    (a, m)
}

/// Sample of `n` values spread over `1..=max`.
pub fn sample(max: u64, n: usize) -> Vec<u64> {
    let step = (max / n as u64).max(1);
    (1..=n as u64).map(|i| (i * step).min(max)).collect()
}
