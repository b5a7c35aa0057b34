//! Bounded enumeration of formulas modulo their value vectors.
//!
//! Relative to a fixed matrix and a fixed list of variables `p1..pv`, a
//! formula is fully described by the vector of its values across all
//! `|A|^v` assignments: two formulas with equal vectors stay equal under
//! every further application. The enumerators here walk formulas
//! depth-by-depth while deduplicating on that vector, so each bounded
//! check visits every distinct behaviour exactly once and still covers
//! every formula within the bound.
//!
//! Assignments are numbered like the entailment search in
//! [`crate::matrix`]: the first variable is the most significant digit, so
//! assignment 0 gives every variable the first carrier value and the last
//! variable steps fastest.

use std::collections::HashSet;

use crate::fibring::{tag_name, FibredMatrix, Side};
use crate::formula::Formula;
use crate::matrix::{Matrix, Valuation};

/// The variable names `p1..pv` used by every enumerator.
pub(crate) fn variable_names(vars: usize) -> Vec<String> {
    (1..=vars).map(|j| format!("p{j}")).collect()
}

/// Value index of 0-based variable `var` at `assignment`.
pub(crate) fn assignment_digit(
    assignment: usize,
    var: usize,
    vars: usize,
    carrier: usize,
) -> usize {
    (assignment / carrier.pow((vars - 1 - var) as u32)) % carrier
}

/// The vector of `var`'s value indices across all `carrier^vars`
/// assignments.
pub(crate) fn variable_vector(carrier: usize, var: usize, vars: usize) -> Vec<usize> {
    (0..carrier.pow(vars as u32))
        .map(|a| assignment_digit(a, var, vars, carrier))
        .collect()
}

/// The valuation encoded by `assignment` over `m`'s carrier.
pub(crate) fn assignment_valuation(m: &Matrix, assignment: usize, vars: usize) -> Valuation {
    let mut v = Valuation::new();
    for (j, name) in variable_names(vars).into_iter().enumerate() {
        v.set(name, m.value_name(assignment_digit(assignment, j, vars, m.value_count())));
    }
    v
}

/// Pointwise application of the table at `position` to argument vectors of
/// common length `len` (needed explicitly for nullary connectives).
pub(crate) fn apply_vector(
    m: &Matrix,
    position: usize,
    args: &[&Vec<usize>],
    len: usize,
) -> Vec<usize> {
    let mut tuple = vec![0usize; args.len()];
    (0..len)
        .map(|i| {
            for (slot, arg) in tuple.iter_mut().zip(args) {
                *slot = arg[i];
            }
            m.apply_index(position, &tuple)
        })
        .collect()
}

/// A set of assignments as a bitset, in assignment order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Mask {
    blocks: Vec<u64>,
    bits: usize,
}

impl Mask {
    /// The set of assignments at which `vector` is designated in `m`.
    pub(crate) fn designated(m: &Matrix, vector: &[usize]) -> Mask {
        let mut mask = Mask::empty(vector.len());
        for (i, &v) in vector.iter().enumerate() {
            if m.is_designated_index(v) {
                mask.blocks[i / 64] |= 1 << (i % 64);
            }
        }
        mask
    }

    pub(crate) fn empty(bits: usize) -> Mask {
        Mask {
            blocks: vec![0; bits.div_ceil(64)],
            bits,
        }
    }

    pub(crate) fn full(bits: usize) -> Mask {
        let mut mask = Mask::empty(bits);
        for i in 0..bits {
            mask.blocks[i / 64] |= 1 << (i % 64);
        }
        mask
    }

    pub(crate) fn contains(&self, bit: usize) -> bool {
        self.blocks[bit / 64] & (1 << (bit % 64)) != 0
    }

    pub(crate) fn intersect_with(&mut self, other: &Mask) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub(crate) fn is_subset_of(&self, other: &Mask) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn is_full(&self) -> bool {
        (0..self.bits).all(|i| self.contains(i))
    }

    /// First assignment in this set but not in `other` — the earliest
    /// witness that `self ⊆ other` fails.
    pub(crate) fn first_excess_over(&self, other: &Mask) -> Option<usize> {
        (0..self.bits).find(|&i| self.contains(i) && !other.contains(i))
    }
}

/// A distinct formula behaviour: one witness formula, its value vector,
/// and the depth layer at which the vector first appeared.
#[derive(Debug, Clone)]
pub(crate) struct State {
    pub formula: Formula,
    pub vector: Vec<usize>,
    pub depth: usize,
}

/// All value vectors realized by formulas of depth at most `depth` over
/// `vars` variables, one state per vector, in discovery order.
///
/// Discovery order is deterministic: variables first, then per layer each
/// connective in signature order applied to earlier states in
/// lexicographic index order (first argument most significant). A
/// candidate is skipped unless some argument was discovered in the
/// previous layer, which loses nothing: its vector was already tried one
/// layer earlier.
pub(crate) fn enumerate_states(m: &Matrix, vars: usize, depth: usize) -> Vec<State> {
    let len = m.value_count().pow(vars as u32);
    let mut states: Vec<State> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for (j, name) in variable_names(vars).into_iter().enumerate() {
        let vector = variable_vector(m.value_count(), j, vars);
        if seen.insert(vector.clone()) {
            states.push(State {
                formula: Formula::var(name),
                vector,
                depth: 0,
            });
        }
    }
    for layer in 1..=depth {
        let previous = states.len();
        for position in 0..m.signature().len() {
            let (conn, arity) = m.signature().entry(position);
            let conn = conn.to_string();
            let arity = arity as usize;
            if arity == 0 {
                if layer == 1 {
                    let vector = apply_vector(m, position, &[], len);
                    if seen.insert(vector.clone()) {
                        states.push(State {
                            formula: Formula::app(&conn, vec![]),
                            vector,
                            depth: layer,
                        });
                    }
                }
                continue;
            }
            if previous == 0 {
                continue;
            }
            let mut choice = vec![0usize; arity];
            loop {
                if choice.iter().any(|&i| states[i].depth == layer - 1) {
                    let args: Vec<&Vec<usize>> =
                        choice.iter().map(|&i| &states[i].vector).collect();
                    let vector = apply_vector(m, position, &args, len);
                    if seen.insert(vector.clone()) {
                        let formula = Formula::app(
                            &conn,
                            choice.iter().map(|&i| states[i].formula.clone()).collect(),
                        );
                        states.push(State {
                            formula,
                            vector,
                            depth: layer,
                        });
                    }
                }
                let mut pos = arity;
                let mut done = true;
                while pos > 0 {
                    pos -= 1;
                    choice[pos] += 1;
                    if choice[pos] < previous {
                        done = false;
                        break;
                    }
                    choice[pos] = 0;
                }
                if done {
                    break;
                }
            }
        }
        if states.len() == previous {
            break;
        }
    }
    states
}

/// A component-language formula with its behaviour in both the component
/// matrix (assignments over the component carrier) and the fibred matrix
/// (the same variables now ranging over the whole fibred carrier).
#[derive(Debug, Clone)]
pub(crate) struct JointState {
    pub formula: Formula,
    pub component: Vec<usize>,
    pub fibred: Vec<usize>,
    pub depth: usize,
}

/// Enumerates component-side formulas of depth at most `depth` over `vars`
/// variables, deduplicating on the pair of vectors, in the same
/// deterministic order as [`enumerate_states`].
pub(crate) fn enumerate_joint(
    component: &Matrix,
    fibred: &FibredMatrix,
    side: Side,
    vars: usize,
    depth: usize,
) -> Vec<JointState> {
    let f = fibred.matrix();
    let clen = component.value_count().pow(vars as u32);
    let flen = f.value_count().pow(vars as u32);
    let positions: Vec<(String, usize, usize)> = (0..component.signature().len())
        .map(|p| {
            let (conn, _) = component.signature().entry(p);
            let tagged = tag_name(conn, side);
            let fp = f
                .signature()
                .position(&tagged)
                .expect("fibred signature contains every tagged component connective");
            (conn.to_string(), p, fp)
        })
        .collect();
    let mut states: Vec<JointState> = Vec::new();
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    for (j, name) in variable_names(vars).into_iter().enumerate() {
        let cvec = variable_vector(component.value_count(), j, vars);
        let fvec = variable_vector(f.value_count(), j, vars);
        let key = (cvec.clone(), fvec.clone());
        if seen.insert(key) {
            states.push(JointState {
                formula: Formula::var(name),
                component: cvec,
                fibred: fvec,
                depth: 0,
            });
        }
    }
    for layer in 1..=depth {
        let previous = states.len();
        for &(ref conn, cpos, fpos) in &positions {
            let arity = component.signature().arity(conn).unwrap() as usize;
            if arity == 0 {
                if layer == 1 {
                    let cvec = apply_vector(component, cpos, &[], clen);
                    let fvec = apply_vector(f, fpos, &[], flen);
                    let key = (cvec.clone(), fvec.clone());
                    if seen.insert(key) {
                        states.push(JointState {
                            formula: Formula::app(conn, vec![]),
                            component: cvec,
                            fibred: fvec,
                            depth: layer,
                        });
                    }
                }
                continue;
            }
            if previous == 0 {
                continue;
            }
            let mut choice = vec![0usize; arity];
            loop {
                if choice.iter().any(|&i| states[i].depth == layer - 1) {
                    let cargs: Vec<&Vec<usize>> =
                        choice.iter().map(|&i| &states[i].component).collect();
                    let fargs: Vec<&Vec<usize>> =
                        choice.iter().map(|&i| &states[i].fibred).collect();
                    let cvec = apply_vector(component, cpos, &cargs, clen);
                    let fvec = apply_vector(f, fpos, &fargs, flen);
                    let key = (cvec.clone(), fvec.clone());
                    if seen.insert(key) {
                        let formula = Formula::app(
                            conn,
                            choice.iter().map(|&i| states[i].formula.clone()).collect(),
                        );
                        states.push(JointState {
                            formula,
                            component: cvec,
                            fibred: fvec,
                            depth: layer,
                        });
                    }
                }
                let mut pos = arity;
                let mut done = true;
                while pos > 0 {
                    pos -= 1;
                    choice[pos] += 1;
                    if choice[pos] < previous {
                        done = false;
                        break;
                    }
                    choice[pos] = 0;
                }
                if done {
                    break;
                }
            }
        }
        if states.len() == previous {
            break;
        }
    }
    states
}
