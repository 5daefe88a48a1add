//! Reference data and independent checkers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use abac_core::{Dfa, Dfao, DigitString, StateId};

pub fn ds(s: &str) -> DigitString {
    s.parse().unwrap()
}

/// First twelve Tribonacci pairs, top/bottom.
pub const TRIB_PAIRS: [&str; 12] = [
    "0/0", "01/10", "02/20", "1/1", "102/201", "10/01", "0102/2010", "2/2", "2010/0102", "201/102",
    "20/02", "0201/1020",
];

/// `D_0` and `D_1` images of the first twelve pairs.
pub const TRIB_D0: [&[u32]; 12] = [
    &[1, 4], &[1, 5], &[1, 6], &[1, 8], &[1, 9], &[1, 10], &[1, 6, 11], &[1], &[1, 2, 3], &[1, 7],
    &[1, 2], &[1, 13],
];
pub const TRIB_D1: [&[u32]; 12] = [
    &[2], &[7], &[1, 4], &[3], &[1, 10], &[12], &[1, 4, 8], &[1], &[14], &[15], &[16], &[17],
];

/// Last three pairs with their images.
pub const TRIB_LATE_PAIRS: [(u32, &str, &[u32], &[u32]); 3] = [
    (54, "0010201010201/1020101020100", &[1, 18, 19, 56], &[1, 22, 23, 41]),
    (55, "00102010201/10201020100", &[1, 18, 19, 37], &[1, 13, 22, 23]),
    (56, "10010201020/02010201001", &[1, 25, 26, 52], &[1, 27, 28, 29]),
];

pub const TRIB_ZSETS: [&[u32]; 12] = [
    &[1, 2, 3],
    &[1, 4, 5, 6],
    &[1, 2, 4, 7],
    &[1, 4, 8, 9, 10],
    &[1, 4, 5, 6, 8, 11],
    &[1, 2, 3, 10, 12],
    &[1, 2, 3, 4, 7, 8],
    &[1, 2, 4, 8, 9, 10],
    &[1, 4, 5, 6, 7, 13],
    &[1, 2, 3, 14, 15],
    &[1, 2, 3, 10, 12, 16],
    &[1, 2, 4, 7, 15, 17],
];

pub const TRIB_Z277: &[u32] = &[1, 2, 4, 7, 15, 17, 22, 23, 24, 36, 43, 50];

/// `tau(q)` for `q = 1..=42`.
pub const TRIB_TAU: [u32; 42] = [
    3, 3, 4, 3, 4, 4, 4, 4, 4, 3, 4, 4, 4, 4, 3, 4, 4, 4, 4, 4, 4, 5, 5, 3, 4, 4, 4, 4, 4, 4, 4, 4, 5,
    5, 4, 4, 4, 4, 4, 4, 3, 4,
];

/// `(delta(q,0), delta(q,1))` for `q = 1..=40`.
pub const TRIB_DELTA: [(u32, u32); 40] = [
    (2, 3), (4, 6), (5, 7), (7, 10), (8, 11), (9, 12), (5, 7), (13, 18), (14, 19), (15, 20),
    (16, 21), (17, 13), (22, 23), (23, 28), (24, 29), (14, 19), (25, 30), (26, 31), (27, 32), (22, 23),
    (17, 13), (33, 39), (34, 40), (7, 41), (13, 42), (35, 43), (14, 19), (36, 44), (37, 45), (38, 46),
    (22, 23), (17, 13), (47, 54), (48, 55), (13, 56), (49, 57), (14, 19), (14, 19), (50, 58), (17, 13),
];

/// Per round: new set range and new pair range (inclusive, `None` for nothing).
pub type IdRange = Option<(u32, u32)>;

pub const TRIB_MILESTONES: [(u32, IdRange, IdRange); 10] = [
    (0, Some((1, 1)), Some((1, 3))),
    (1, Some((2, 3)), Some((4, 7))),
    (2, Some((4, 7)), Some((8, 12))),
    (3, Some((8, 12)), Some((13, 17))),
    (4, Some((13, 21)), Some((18, 24))),
    (5, Some((22, 32)), Some((25, 30))),
    (14, Some((179, 200)), Some((54, 55))),
    (15, Some((201, 221)), Some((56, 56))),
    (16, Some((222, 245)), None),
    (22, None, None),
];

/// Reduced Tribonacci automaton: `(delta0, delta1, output)` for states 0..=67.
pub const TRIB_REDUCED: [(u32, u32, Option<u32>); 68] = [
    (0, 1, None), (2, 3, Some(3)), (4, 6, Some(3)), (5, 3, Some(4)), (3, 9, Some(3)),
    (7, 6, Some(4)), (8, 10, Some(4)), (11, 10, Some(4)), (12, 6, Some(4)), (13, 11, Some(3)),
    (14, 11, Some(4)), (15, 16, Some(4)), (16, 17, Some(4)), (4, 18, Some(3)), (7, 18, Some(4)),
    (19, 22, Some(5)), (20, 10, Some(5)), (21, 11, Some(4)), (8, 23, Some(4)), (24, 10, Some(5)),
    (25, 6, Some(5)), (12, 18, Some(4)), (21, 27, Some(4)), (26, 24, Some(4)), (28, 16, Some(5)),
    (29, 32, Some(5)), (30, 33, Some(4)), (31, 29, Some(4)), (34, 22, Some(5)), (35, 38, Some(5)),
    (11, 23, Some(4)), (19, 39, Some(5)), (36, 11, Some(5)), (37, 40, Some(5)), (41, 10, Some(6)),
    (42, 22, Some(6)), (25, 18, Some(5)), (43, 19, Some(5)), (36, 27, Some(5)), (21, 45, Some(4)),
    (44, 41, Some(5)), (46, 16, Some(6)), (47, 32, Some(6)), (16, 49, Some(4)), (30, 50, Some(4)),
    (48, 47, Some(4)), (51, 38, Some(6)), (52, 38, Some(6)), (53, 55, Some(5)), (54, 56, Some(4)),
    (37, 57, Some(5)), (58, 38, Some(6)), (59, 22, Some(6)), (24, 23, Some(5)), (43, 53, Some(4)),
    (60, 63, Some(5)), (61, 34, Some(5)), (62, 58, Some(5)), (58, 38, Some(7)), (58, 32, Some(7)),
    (43, 53, Some(5)), (19, 64, Some(5)), (30, 55, Some(4)), (48, 58, Some(5)), (54, 65, Some(4)),
    (66, 51, Some(5)), (19, 67, Some(5)), (54, 63, Some(4)),
];

/// 4-bonacci minimized acceptor sizes for `c = 4, 6, 7, ..., 16`.
pub const TETRA_ACCEPTORS: [(u32, usize); 12] = [
    (4, 6), (6, 6), (7, 66), (8, 4649), (9, 4683), (10, 4735), (11, 5004), (12, 5256), (13, 5299),
    (14, 5322), (15, 5324), (16, 5032),
];

/// Infinite families of normal 4-bonacci representations, `head/cycle/tail/min`, with their value.
pub const TETRA_FAMILIES: [(&str, u32); 10] = [
    ("e/1000/0/1", 7),
    ("e/100/e/3", 8),
    ("e/10/e/11", 9),
    ("1/0/11/19", 10),
    ("e/10/0/11", 11),
    ("1/0/1/19", 12),
    ("1/0/e/19", 13),
    ("e/10000/e/6", 14),
    ("e/10000/0/6", 15),
    ("e/10000/00/6", 16),
];

/// Binary DFA from `(delta0, delta1, accepting)` rows, state 0 initial.
pub fn binary_dfa(alpha: Vec<u32>, rows: &[(u32, u32, bool)]) -> Dfa {
    let delta = rows.iter().flat_map(|&(a, b, _)| [a, b]).collect();
    Dfa::new(alpha, 0, delta, rows.iter().map(|r| r.2).collect()).unwrap()
}

/// Tribonacci acceptor for value 3.
pub fn expected_tribonacci_a3() -> Dfa {
    binary_dfa(
        vec![1, 1, 1],
        &[(0, 1, false), (2, 3, true), (4, 3, true), (3, 3, false), (3, 1, true)],
    )
}

/// 4-bonacci acceptor for value 4.
pub fn expected_tetranacci_a4() -> Dfa {
    binary_dfa(
        vec![1, 1, 1, 1],
        &[(0, 1, false), (2, 3, true), (4, 3, true), (3, 3, false), (5, 3, true), (3, 1, true)],
    )
}

/// 4-bonacci acceptor for value 6.
pub fn expected_tetranacci_a6() -> Dfa {
    binary_dfa(
        vec![1, 1, 1, 1],
        &[(0, 1, false), (2, 3, false), (2, 2, false), (4, 2, true), (5, 2, true), (2, 2, true)],
    )
}

/// Number of Myhill-Nerode classes among reachable states, by table filling with
/// a predecessor worklist. Independent of the library's refinement code.
pub fn table_filling_classes<C: PartialEq>(
    states: usize,
    radix: usize,
    initial: StateId,
    next: impl Fn(StateId, u8) -> StateId,
    colour: impl Fn(StateId) -> C,
) -> usize {
    // reachable states
    let mut seen = vec![false; states];
    let mut order = vec![initial];
    seen[initial as usize] = true;
    let mut i = 0;
    while i < order.len() {
        for d in 0..radix as u8 {
            let t = next(order[i], d);
            if !seen[t as usize] {
                seen[t as usize] = true;
                order.push(t);
            }
        }
        i += 1;
    }
    let n = order.len();
    let mut local = vec![usize::MAX; states];
    for (k, &q) in order.iter().enumerate() {
        local[q as usize] = k;
    }
    let mut pred: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; radix];
    for (k, &q) in order.iter().enumerate() {
        for d in 0..radix {
            pred[d][local[next(q, d as u8) as usize]].push(k);
        }
    }
    let idx = |a: usize, b: usize| if a < b { a * n + b } else { b * n + a };
    let mut marked = vec![false; n * n];
    let mut work = VecDeque::new();
    for a in 0..n {
        for b in a + 1..n {
            if colour(order[a]) != colour(order[b]) {
                marked[idx(a, b)] = true;
                work.push_back((a, b));
            }
        }
    }
    while let Some((a, b)) = work.pop_front() {
        for by_digit in &pred {
            for &pa in &by_digit[a] {
                for &pb in &by_digit[b] {
                    if pa != pb && !marked[idx(pa, pb)] {
                        marked[idx(pa, pb)] = true;
                        work.push_back((pa, pb));
                    }
                }
            }
        }
    }
    // count classes: a state starts a new class unless equivalent to an earlier one
    (0..n).filter(|&b| (0..b).all(|a| marked[idx(a, b)])).count()
}

pub fn dfao_classes(a: &Dfao) -> usize {
    table_filling_classes(a.num_states(), a.radix(), a.initial(), |q, d| a.next(q, d), |q| a.output(q))
}

/// True iff both automata give the same output on every digit string.
pub fn equivalent(a: &Dfao, b: &Dfao) -> bool {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(a.initial(), b.initial())]);
    seen.insert((a.initial(), b.initial()));
    while let Some((p, q)) = queue.pop_front() {
        if a.output(p) != b.output(q) {
            return false;
        }
        for d in 0..a.radix() as u8 {
            let key = (a.next(p, d), b.next(q, d));
            if seen.insert(key) {
                queue.push_back(key);
            }
        }
    }
    true
}

/// Whether `digits` is a prefix of `block^omega`.
pub fn is_prefix_of_power(digits: &DigitString, block: &[u8]) -> bool {
    digits.digits().iter().enumerate().all(|(i, &d)| d == block[i % block.len()])
}
