//! Automata computing the abelian complexity of m-bonacci and simple Parry words.
//!
//! The pipeline: a [`Substitution`] generates the word; [`explore`] runs the
//! co-decomposition closure to a fixed point; [`build_dfao`] turns the result into
//! a [`Dfao`] that reads normal representations and outputs the abelian
//! complexity; [`Dfao::minimize`] reduces it. The [`oracle`] module recomputes
//! the same values by scanning factors of the word.

pub mod automaton;
pub mod closure;
pub mod codecomp;
pub mod error;
pub mod numeration;
pub mod oracle;
pub mod word;

pub use automaton::{
    balance_bound, evaluate_ac, output_range, value_acceptor, verify_family, Automaton, Dfa, Dfao,
    FamilyPattern, StateId,
};
pub use closure::{build_dfao, explore, output_value, ClosureTables, ExploreOptions, Milestone};
pub use codecomp::{
    apply_digit_map, base_zset, codecompose, compute_r, vect, zset_from_definition, FactorPair,
    PairCatalog, PairId, ZSet,
};
pub use error::{Error, Result};
pub use numeration::{
    greedy_representation, has_no_run_of_ones, is_normal, value_of, Admissibility, Digit,
    DigitString,
};
pub use oracle::{brute_force_balance, brute_force_parikh_set, brute_force_rel_set, WindowScan, WindowScanner};
pub use word::{parikh, Letter, ParikhVector, Substitution, Word};
