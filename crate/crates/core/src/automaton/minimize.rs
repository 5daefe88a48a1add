//! Moore partition refinement and canonical relabelling.

use std::collections::HashMap;
use std::hash::Hash;

use super::{StateId, Table};
use crate::numeration::Digit;

/// Coarsest stable partition of the reachable states that refines the colouring.
///
/// Returns the number of classes and, per original state, its class (`None` if
/// unreachable). Classes are numbered in order of their smallest member.
pub(super) fn refine<C: Eq + Hash>(table: &Table, colour: &[C]) -> (usize, Vec<Option<u32>>) {
    let mut reach = table.reachable();
    reach.sort_unstable();

    let mut class: Vec<u32> = vec![u32::MAX; table.states()];
    let mut count = {
        let mut ids: HashMap<&C, u32> = HashMap::new();
        for &q in &reach {
            let next = ids.len() as u32;
            class[q as usize] = *ids.entry(&colour[q as usize]).or_insert(next);
        }
        ids.len()
    };

    let mut sig: Vec<u32> = Vec::with_capacity(table.radix + 1);
    loop {
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(count * 2);
        let mut next_class = vec![u32::MAX; table.states()];
        for &q in &reach {
            sig.clear();
            sig.push(class[q as usize]);
            sig.extend((0..table.radix as Digit).map(|d| class[table.next(q, d) as usize]));
            let fresh = ids.len() as u32;
            next_class[q as usize] = *ids.entry(sig.clone()).or_insert(fresh);
        }
        let refined = ids.len();
        class = next_class;
        if refined == count {
            break;
        }
        count = refined;
    }
    // ids were handed out while scanning states in ascending order, so class
    // numbers already follow smallest members
    let class_of = class.into_iter().map(|c| (c != u32::MAX).then_some(c)).collect();
    (count, class_of)
}

/// Quotient automaton and, per class, its smallest original member.
pub(super) fn quotient(table: &Table, classes: usize, class_of: &[Option<u32>]) -> (Table, Vec<StateId>) {
    let mut reps = vec![StateId::MAX; classes];
    for (q, c) in class_of.iter().enumerate() {
        if let Some(c) = c {
            let r = &mut reps[*c as usize];
            if *r == StateId::MAX {
                *r = q as StateId;
            }
        }
    }
    let mut delta = Vec::with_capacity(classes * table.radix);
    for &r in &reps {
        for d in 0..table.radix as Digit {
            delta.push(class_of[table.next(r, d) as usize].expect("successor of a reachable state"));
        }
    }
    let initial = class_of[table.initial as usize].expect("initial state is reachable");
    let out = Table { alpha: table.alpha.clone(), radix: table.radix, initial, delta };
    (out, reps)
}

/// Renumbers reachable states in BFS order (digits ascending) from the initial
/// state. Returns the new table and the original id of each new state.
pub(super) fn bfs_relabel(table: &Table) -> (Table, Vec<StateId>) {
    let order = table.reachable();
    let mut new_id = vec![StateId::MAX; table.states()];
    for (i, &q) in order.iter().enumerate() {
        new_id[q as usize] = i as StateId;
    }
    let delta = order
        .iter()
        .flat_map(|&q| (0..table.radix as Digit).map(move |d| table.next(q, d)))
        .map(|t| new_id[t as usize])
        .collect();
    let out = Table { alpha: table.alpha.clone(), radix: table.radix, initial: 0, delta };
    (out, order)
}

/// Repeatedly merges states with the same colour and identical successor
/// states until no two such states remain. Coarsens from the identity partition,
/// so the result can be larger than the Moore quotient when equivalent states
/// sit on cycles. Classes are numbered by their smallest member.
pub(super) fn merge_identical<C: Eq + Hash>(table: &Table, colour: &[C]) -> (usize, Vec<Option<u32>>) {
    let mut reach = table.reachable();
    reach.sort_unstable();
    // rep[q]: current representative of q (smallest member of its class)
    let mut rep: Vec<StateId> = (0..table.states() as StateId).collect();
    loop {
        let mut groups: HashMap<(&C, Vec<StateId>), StateId> = HashMap::new();
        let mut changed = false;
        let mut next_rep = rep.clone();
        for &q in &reach {
            if rep[q as usize] != q {
                continue;
            }
            let succ: Vec<StateId> = (0..table.radix as Digit)
                .map(|d| rep[table.next(q, d) as usize])
                .collect();
            let r = *groups.entry((&colour[q as usize], succ)).or_insert(q);
            if r != q {
                next_rep[q as usize] = r;
                changed = true;
            }
        }
        for &q in &reach {
            next_rep[q as usize] = next_rep[rep[q as usize] as usize];
        }
        rep = next_rep;
        if !changed {
            break;
        }
    }
    let mut class_of = vec![None; table.states()];
    let mut count = 0u32;
    let mut id_of_rep: HashMap<StateId, u32> = HashMap::new();
    for &q in &reach {
        let c = *id_of_rep.entry(rep[q as usize]).or_insert_with(|| {
            count += 1;
            count - 1
        });
        class_of[q as usize] = Some(c);
    }
    (count as usize, class_of)
}
