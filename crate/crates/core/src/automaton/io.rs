//! JSON and Graphviz serialization.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Dfa, Dfao, StateId, Table};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Transition {
    from: StateId,
    digit: u8,
    to: StateId,
}

#[derive(Serialize, Deserialize)]
struct OutputState {
    id: StateId,
    output: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct AcceptState {
    id: StateId,
    accepting: bool,
}

#[derive(Serialize, Deserialize)]
struct File<S> {
    kind: String,
    m: usize,
    alpha: Vec<u32>,
    digit_alphabet_max: u8,
    initial: StateId,
    states: Vec<S>,
    transitions: Vec<Transition>,
}

#[derive(Deserialize)]
struct Header {
    kind: String,
}

trait StateRecord {
    fn id(&self) -> StateId;
}

impl StateRecord for OutputState {
    fn id(&self) -> StateId {
        self.id
    }
}

impl StateRecord for AcceptState {
    fn id(&self) -> StateId {
        self.id
    }
}

fn to_file<S>(kind: &str, t: &Table, states: Vec<S>) -> File<S> {
    let transitions = (0..t.states() as StateId)
        .flat_map(|q| (0..t.radix as u8).map(move |d| (q, d)))
        .map(|(from, digit)| Transition { from, digit, to: t.next(from, digit) })
        .collect();
    File {
        kind: kind.to_string(),
        m: t.alpha.len(),
        alpha: t.alpha.clone(),
        digit_alphabet_max: (t.radix - 1) as u8,
        initial: t.initial,
        states,
        transitions,
    }
}

/// Validates the header fields and rebuilds the transition table.
fn table_from_file<S: StateRecord>(f: &File<S>, kind: &str) -> Result<Table> {
    let bad = |msg: String| Error::Parse(msg);
    if f.kind != kind {
        return Err(bad(format!("expected kind {kind:?}, found {:?}", f.kind)));
    }
    if f.m != f.alpha.len() {
        return Err(bad(format!("m = {} but alpha has {} entries", f.m, f.alpha.len())));
    }
    if f.alpha.first().map(|&a| a as u64) != Some(f.digit_alphabet_max as u64) {
        return Err(bad(format!(
            "digit_alphabet_max = {} does not equal alpha[0]",
            f.digit_alphabet_max
        )));
    }
    for (i, s) in f.states.iter().enumerate() {
        if s.id() as usize != i {
            return Err(bad(format!("states[{i}] has id {}, expected {i}", s.id())));
        }
    }
    let n = f.states.len();
    let radix = f.digit_alphabet_max as usize + 1;
    let mut delta = vec![StateId::MAX; n * radix];
    for (i, t) in f.transitions.iter().enumerate() {
        if t.from as usize >= n || t.to as usize >= n || t.digit as usize >= radix {
            return Err(bad(format!(
                "transitions[{i}] ({} --{}--> {}) is out of range",
                t.from, t.digit, t.to
            )));
        }
        let slot = &mut delta[t.from as usize * radix + t.digit as usize];
        if *slot != StateId::MAX {
            return Err(bad(format!(
                "transitions[{i}] duplicates state {} digit {}",
                t.from, t.digit
            )));
        }
        *slot = t.to;
    }
    if let Some(pos) = delta.iter().position(|&t| t == StateId::MAX) {
        return Err(bad(format!(
            "missing transition from state {} on digit {}",
            pos / radix,
            pos % radix
        )));
    }
    Table::new(f.alpha.clone(), f.initial, delta, n).map_err(|e| bad(e.to_string()))
}

impl Dfao {
    /// JSON with fixed field order and transitions sorted by state, then digit.
    pub fn to_json(&self) -> String {
        let states = self
            .output
            .iter()
            .enumerate()
            .map(|(i, &output)| OutputState { id: i as StateId, output })
            .collect();
        serde_json::to_string_pretty(&to_file("dfao", &self.table, states)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: File<OutputState> = serde_json::from_str(text)?;
        let table = table_from_file(&f, "dfao")?;
        Ok(Dfao { table, output: f.states.iter().map(|s| s.output).collect() })
    }

    /// Graphviz rendering; nodes are labelled `q{id}/{output}`, parallel edges merged.
    pub fn to_dot(&self) -> String {
        let label = |q: usize| match self.output[q] {
            Some(o) => format!("q{q}/{o}"),
            None => format!("q{q}/-"),
        };
        render_dot("dfao", &self.table, |q| (label(q), false))
    }
}

impl Dfa {
    pub fn to_json(&self) -> String {
        let states = self
            .accepting
            .iter()
            .enumerate()
            .map(|(i, &accepting)| AcceptState { id: i as StateId, accepting })
            .collect();
        serde_json::to_string_pretty(&to_file("dfa", &self.table, states)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: File<AcceptState> = serde_json::from_str(text)?;
        let table = table_from_file(&f, "dfa")?;
        Ok(Dfa { table, accepting: f.states.iter().map(|s| s.accepting).collect() })
    }

    /// Graphviz rendering; accepting states are double circles.
    pub fn to_dot(&self) -> String {
        render_dot("dfa", &self.table, |q| (format!("q{q}"), self.accepting[q]))
    }
}

fn render_dot(name: &str, t: &Table, node: impl Fn(usize) -> (String, bool)) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {name} {{");
    let _ = writeln!(s, "  rankdir=LR;");
    let _ = writeln!(s, "  start [shape=point];");
    for q in 0..t.states() {
        let (label, double) = node(q);
        let shape = if double { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  q{q} [shape={shape}, label=\"{label}\"];");
    }
    let _ = writeln!(s, "  start -> q{};", t.initial);
    for q in 0..t.states() {
        // group digits by target, keeping targets in order of their smallest digit
        let mut groups: Vec<(StateId, Vec<String>)> = Vec::new();
        for d in 0..t.radix as u8 {
            let to = t.next(q as StateId, d);
            match groups.iter_mut().find(|(g, _)| *g == to) {
                Some((_, ds)) => ds.push(d.to_string()),
                None => groups.push((to, vec![d.to_string()])),
            }
        }
        for (to, ds) in groups {
            let _ = writeln!(s, "  q{q} -> q{to} [label=\"{}\"];", ds.join(","));
        }
    }
    s.push_str("}\n");
    s
}

/// Either automaton kind, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Dfao(Dfao),
    Dfa(Dfa),
}

impl Automaton {
    pub fn from_json(text: &str) -> Result<Self> {
        let h: Header = serde_json::from_str(text)?;
        match h.kind.as_str() {
            "dfao" => Ok(Automaton::Dfao(Dfao::from_json(text)?)),
            "dfa" => Ok(Automaton::Dfa(Dfa::from_json(text)?)),
            other => Err(Error::Parse(format!("unknown automaton kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Automaton::Dfao(a) => a.to_json(),
            Automaton::Dfa(a) => a.to_json(),
        }
    }

    pub fn to_dot(&self) -> String {
        match self {
            Automaton::Dfao(a) => a.to_dot(),
            Automaton::Dfa(a) => a.to_dot(),
        }
    }
}
