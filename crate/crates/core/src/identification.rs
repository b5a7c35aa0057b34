//! Deciding, within bounds, whether a fibring makes two connectives
//! interchangeable.
//!
//! Two formulas are *closely associated* (relative to connectives `c1`,
//! `c2` of equal arity) when they are equal or differ in exactly one
//! occurrence of one connective swapped for the other; *associated* closes
//! that relation under chains. A matrix *identifies* `c1` with `c2` when
//! no pair of associated formulas can be told apart by designation under
//! any valuation. Because designation-agreement along a chain is
//! transitive, it is enough to check closely associated pairs; the chain
//! route is kept as [`IdentificationMode::Chains`] for cross-validation at
//! small bounds.
//!
//! The module also carries the algebraic side of the story: single-
//! connective fragments, strict homomorphisms between matrices, and the
//! sufficient condition for identification (an admissible pair whose
//! translation is a fragment isomorphism with the two maps mutually
//! inverse).

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::closure::{
    apply_vector, assignment_digit, assignment_valuation, enumerate_states, variable_names, State,
};
use crate::fibring::{FibredMatrix, FibringPair};
use crate::formula::Formula;
use crate::matrix::{Matrix, Valuation};
use crate::signature::Signature;
use crate::{Error, Result};

/// A chain of formulas, each step one occurrence swap away from the last.
#[derive(Debug, Clone)]
pub struct AssociationWitness {
    pub chain: Vec<Formula>,
}

/// A closely associated pair told apart by designation.
#[derive(Debug, Clone)]
pub struct IdentificationCounterexample {
    pub first: Formula,
    pub second: Formula,
    /// Assignment under which the two formulas' designation status differs.
    pub valuation: Valuation,
    pub first_value: String,
    pub second_value: String,
}

impl fmt::Display for IdentificationCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "counterexample: {}  vs  {}", self.first, self.second)?;
        writeln!(f, "  at {}", self.valuation)?;
        write!(
            f,
            "  values {} vs {} (designation differs)",
            self.first_value, self.second_value
        )
    }
}

/// Outcome of a bounded identification check.
#[derive(Debug, Clone)]
pub struct IdentificationReport {
    pub identified: bool,
    pub checked_depth: usize,
    pub checked_vars: usize,
    /// Distinct associated-pair behaviours examined.
    pub pairs_checked: usize,
    pub counterexample: Option<IdentificationCounterexample>,
}

impl fmt::Display for IdentificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identified: {} (depth <= {}, variables <= {}, {} pair behaviours)",
            self.identified, self.checked_depth, self.checked_vars, self.pairs_checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// How [`identifies`] searches for distinguishable associated formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdentificationMode {
    /// Check closely associated pairs only; exhaustive for the bound by
    /// transitivity of designation agreement.
    #[default]
    Close,
    /// Enumerate all formulas syntactically and compare whole association
    /// classes. Much slower; useful to cross-validate `Close`.
    Chains,
}

fn check_swap_targets(sig: &Signature, c1: &str, c2: &str) -> Result<()> {
    let a1 = sig
        .arity(c1)
        .ok_or_else(|| Error::eval(format!("unknown connective {c1}")))?;
    let a2 = sig
        .arity(c2)
        .ok_or_else(|| Error::eval(format!("unknown connective {c2}")))?;
    if a1 != a2 {
        return Err(Error::eval(format!(
            "cannot swap {c1}/{a1} with {c2}/{a2}: arities differ"
        )));
    }
    Ok(())
}

/// Number of node positions at which `f1` and `f2` differ by a `c1`/`c2`
/// swap with identical subtrees; `None` when they differ any other way.
fn swap_distance(f1: &Formula, f2: &Formula, c1: &str, c2: &str) -> Option<usize> {
    match (f1, f2) {
        (Formula::Var(a), Formula::Var(b)) => (a == b).then_some(0),
        (Formula::App(n1, args1), Formula::App(n2, args2)) => {
            if args1.len() != args2.len() {
                return None;
            }
            if n1 == n2 {
                let mut total = 0;
                for (a, b) in args1.iter().zip(args2) {
                    total += swap_distance(a, b, c1, c2)?;
                }
                Some(total)
            } else if (n1 == c1 && n2 == c2) || (n1 == c2 && n2 == c1) {
                args1.iter().zip(args2).all(|(a, b)| a == b).then_some(1)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// True when the formulas are equal or exactly one occurrence of `c1`/`c2`
/// is swapped between them (in either direction).
pub fn closely_associated(
    sig: &Signature,
    f1: &Formula,
    f2: &Formula,
    c1: &str,
    c2: &str,
) -> Result<bool> {
    check_swap_targets(sig, c1, c2)?;
    Ok(matches!(swap_distance(f1, f2, c1, c2), Some(0) | Some(1)))
}

/// Collapses every occurrence of `c2` to `c1`, the canonical association
/// skeleton.
fn collapse(f: &Formula, c1: &str, c2: &str) -> Formula {
    match f {
        Formula::Var(v) => Formula::var(v.clone()),
        Formula::App(n, args) => {
            let name = if n == c2 { c1 } else { n.as_str() };
            Formula::app(name, args.iter().map(|a| collapse(a, c1, c2)).collect())
        }
    }
}

/// Preorder paths (child-index sequences) of nodes where the two formulas
/// carry different connectives. Assumes collapse-equality.
fn differing_paths(f1: &Formula, f2: &Formula, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if let (Formula::App(n1, args1), Formula::App(n2, args2)) = (f1, f2) {
        if n1 != n2 {
            out.push(prefix.clone());
        }
        for (i, (a, b)) in args1.iter().zip(args2).enumerate() {
            prefix.push(i);
            differing_paths(a, b, prefix, out);
            prefix.pop();
        }
    }
}

/// Returns `f` with the connective at `path` replaced by `name`.
fn relabel_at(f: &Formula, path: &[usize], name: &str) -> Formula {
    match f {
        Formula::Var(v) => Formula::var(v.clone()),
        Formula::App(n, args) => {
            if path.is_empty() {
                return Formula::app(name, args.clone());
            }
            let mut args = args.clone();
            args[path[0]] = relabel_at(&args[path[0]], &path[1..], name);
            Formula::app(n.clone(), args)
        }
    }
}

/// Reads the connective name at `path`.
fn label_at<'a>(f: &'a Formula, path: &[usize]) -> &'a str {
    match f {
        Formula::Var(_) => unreachable!("paths only address applications"),
        Formula::App(n, args) => {
            if path.is_empty() {
                n
            } else {
                label_at(&args[path[0]], &path[1..])
            }
        }
    }
}

/// Decides association by skeleton collapse and reconstructs a chain of
/// single-swap steps on success.
pub fn associated(
    sig: &Signature,
    f1: &Formula,
    f2: &Formula,
    c1: &str,
    c2: &str,
) -> Result<Option<AssociationWitness>> {
    check_swap_targets(sig, c1, c2)?;
    if collapse(f1, c1, c2) != collapse(f2, c1, c2) {
        return Ok(None);
    }
    let mut paths = Vec::new();
    differing_paths(f1, f2, &mut Vec::new(), &mut paths);
    let mut chain = vec![f1.clone()];
    let mut current = f1.clone();
    for path in paths {
        let target = label_at(f2, &path).to_string();
        current = relabel_at(&current, &path, &target);
        chain.push(current.clone());
    }
    Ok(Some(AssociationWitness { chain }))
}

/// A closely associated pair of formulas with their value vectors over all
/// assignments, used by both the identification check and the property
/// suite.
#[derive(Debug, Clone)]
pub(crate) struct ClosePairState {
    pub first: Formula,
    pub second: Formula,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub depth: usize,
}

/// Inserts a pair unless its vector pair was already seen; returns the new
/// index when the pair's two sides disagree in designation somewhere.
fn insert_pair(
    m: &Matrix,
    pairs: &mut Vec<ClosePairState>,
    seen: &mut HashSet<(Vec<usize>, Vec<usize>)>,
    state: ClosePairState,
) -> Option<usize> {
    let key = (state.v1.clone(), state.v2.clone());
    if !seen.insert(key) {
        return None;
    }
    let disagrees = (0..state.v1.len())
        .any(|i| m.is_designated_index(state.v1[i]) != m.is_designated_index(state.v2[i]));
    pairs.push(state);
    disagrees.then_some(pairs.len() - 1)
}

/// Enumerates closely associated pairs of depth at most `depth` over
/// `vars` variables, modulo their vector pairs, in deterministic order.
/// Returns the pairs discovered together with the index of the first pair
/// whose sides disagree in designation; enumeration stops there.
///
/// Layer by layer: a pair enters either as a *root swap* `(c1(args),
/// c2(args))` over single-formula states, or by *congruence* — any
/// connective applied to one existing pair at one argument position and
/// single-formula states elsewhere. Every closely associated pair within
/// the bound has its vector pair generated: decompose it at the swapped
/// occurrence into context and swap node; the swap node's arguments are
/// covered by the single-formula enumeration and the context layers are
/// covered by congruence, by induction on the context.
pub(crate) fn close_pair_states(
    m: &Matrix,
    c1: &str,
    c2: &str,
    depth: usize,
    vars: usize,
) -> Result<(Vec<ClosePairState>, Option<usize>)> {
    check_swap_targets(m.signature(), c1, c2)?;
    let singles: Vec<State> = enumerate_states(m, vars, depth.saturating_sub(1));
    let len = m.value_count().pow(vars as u32);
    let p1 = m.signature().position(c1).expect("checked above");
    let p2 = m.signature().position(c2).expect("checked above");
    let swap_arity = m.signature().entry(p1).1 as usize;

    // singles[..singles_below(d)] are the single-formula states of depth < d.
    let singles_below = |d: usize| singles.iter().take_while(|s| s.depth < d).count();

    let mut pairs: Vec<ClosePairState> = Vec::new();
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut failing: Option<usize> = None;

    'layers: for layer in 1..=depth {
        let prev_pairs = pairs.len();
        let usable_singles = singles_below(layer);

        // Root swaps: c1 over a tuple of singles vs c2 over the same tuple.
        if swap_arity == 0 {
            if layer == 1 {
                let state = ClosePairState {
                    v1: apply_vector(m, p1, &[], len),
                    v2: apply_vector(m, p2, &[], len),
                    first: Formula::app(c1, vec![]),
                    second: Formula::app(c2, vec![]),
                    depth: layer,
                };
                if let Some(i) = insert_pair(m, &mut pairs, &mut seen, state) {
                    failing = Some(i);
                    break 'layers;
                }
            }
        } else if usable_singles > 0 {
            let mut choice = vec![0usize; swap_arity];
            loop {
                if choice.iter().any(|&i| singles[i].depth == layer - 1) {
                    let args: Vec<&Vec<usize>> =
                        choice.iter().map(|&i| &singles[i].vector).collect();
                    let formulas: Vec<Formula> =
                        choice.iter().map(|&i| singles[i].formula.clone()).collect();
                    let state = ClosePairState {
                        v1: apply_vector(m, p1, &args, len),
                        v2: apply_vector(m, p2, &args, len),
                        first: Formula::app(c1, formulas.clone()),
                        second: Formula::app(c2, formulas),
                        depth: layer,
                    };
                    if let Some(i) = insert_pair(m, &mut pairs, &mut seen, state) {
                        failing = Some(i);
                        break 'layers;
                    }
                }
                if !next_odometer(&mut choice, usable_singles) {
                    break;
                }
            }
        }

        // Congruence: any connective, one pair at one argument position,
        // singles elsewhere.
        for position in 0..m.signature().len() {
            let arity = m.signature().entry(position).1 as usize;
            if arity == 0 {
                continue;
            }
            let conn = m.signature().entry(position).0.to_string();
            for hole in 0..arity {
                for pair_index in 0..prev_pairs {
                    if arity == 1 {
                        if pairs[pair_index].depth != layer - 1 {
                            continue;
                        }
                        let state = ClosePairState {
                            v1: apply_vector(m, position, &[&pairs[pair_index].v1], len),
                            v2: apply_vector(m, position, &[&pairs[pair_index].v2], len),
                            first: Formula::app(&conn, vec![pairs[pair_index].first.clone()]),
                            second: Formula::app(&conn, vec![pairs[pair_index].second.clone()]),
                            depth: layer,
                        };
                        if let Some(i) = insert_pair(m, &mut pairs, &mut seen, state) {
                            failing = Some(i);
                            break 'layers;
                        }
                        continue;
                    }
                    if usable_singles == 0 {
                        continue;
                    }
                    let mut choice = vec![0usize; arity - 1];
                    loop {
                        let fresh = pairs[pair_index].depth == layer - 1
                            || choice.iter().any(|&i| singles[i].depth == layer - 1);
                        if fresh {
                            let mut v1args: Vec<&Vec<usize>> = Vec::with_capacity(arity);
                            let mut v2args: Vec<&Vec<usize>> = Vec::with_capacity(arity);
                            let mut f1args: Vec<Formula> = Vec::with_capacity(arity);
                            let mut f2args: Vec<Formula> = Vec::with_capacity(arity);
                            let mut fill = choice.iter();
                            for slot in 0..arity {
                                if slot == hole {
                                    v1args.push(&pairs[pair_index].v1);
                                    v2args.push(&pairs[pair_index].v2);
                                    f1args.push(pairs[pair_index].first.clone());
                                    f2args.push(pairs[pair_index].second.clone());
                                } else {
                                    let &i = fill.next().expect("one single per non-hole slot");
                                    v1args.push(&singles[i].vector);
                                    v2args.push(&singles[i].vector);
                                    f1args.push(singles[i].formula.clone());
                                    f2args.push(singles[i].formula.clone());
                                }
                            }
                            let state = ClosePairState {
                                v1: apply_vector(m, position, &v1args, len),
                                v2: apply_vector(m, position, &v2args, len),
                                first: Formula::app(&conn, f1args),
                                second: Formula::app(&conn, f2args),
                                depth: layer,
                            };
                            if let Some(i) = insert_pair(m, &mut pairs, &mut seen, state) {
                                failing = Some(i);
                                break 'layers;
                            }
                        }
                        if !next_odometer(&mut choice, usable_singles) {
                            break;
                        }
                    }
                }
            }
        }
        if pairs.len() == prev_pairs && singles_below(layer + 1) == usable_singles {
            break;
        }
    }
    Ok((pairs, failing))
}

/// Advances a mixed-radix odometer with `limit` values per digit, last
/// digit fastest; false when exhausted.
fn next_odometer(digits: &mut [usize], limit: usize) -> bool {
    let mut pos = digits.len();
    while pos > 0 {
        pos -= 1;
        digits[pos] += 1;
        if digits[pos] < limit {
            return true;
        }
        digits[pos] = 0;
    }
    false
}

fn counterexample_from_vectors(
    m: &Matrix,
    first: &Formula,
    second: &Formula,
    v1: &[usize],
    v2: &[usize],
    vars: usize,
) -> Option<IdentificationCounterexample> {
    let differs = (0..v1.len())
        .find(|&i| m.is_designated_index(v1[i]) != m.is_designated_index(v2[i]))?;
    let full = assignment_valuation(m, differs, vars);
    let mut used: Vec<String> = first.vars();
    for v in second.vars() {
        if !used.contains(&v) {
            used.push(v);
        }
    }
    let mut valuation = Valuation::new();
    for (var, value) in full.iter() {
        if used.iter().any(|u| u == var) {
            valuation.set(var, value);
        }
    }
    Some(IdentificationCounterexample {
        first: first.clone(),
        second: second.clone(),
        valuation,
        first_value: m.value_name(v1[differs]).to_string(),
        second_value: m.value_name(v2[differs]).to_string(),
    })
}

/// Decides, up to `depth` and `max_vars`, whether the fibred matrix
/// identifies `c1` with `c2`: no pair of associated formulas within the
/// bound differs in designation under any assignment.
pub fn identifies(
    fibred: &FibredMatrix,
    c1: &str,
    c2: &str,
    depth: usize,
    max_vars: usize,
    mode: IdentificationMode,
) -> Result<IdentificationReport> {
    let m = fibred.matrix();
    match mode {
        IdentificationMode::Close => {
            let (pairs, failing) = close_pair_states(m, c1, c2, depth, max_vars)?;
            let counterexample = failing.map(|i| {
                counterexample_from_vectors(
                    m,
                    &pairs[i].first,
                    &pairs[i].second,
                    &pairs[i].v1,
                    &pairs[i].v2,
                    max_vars,
                )
                .expect("insertion flagged a designation difference")
            });
            Ok(IdentificationReport {
                identified: counterexample.is_none(),
                checked_depth: depth,
                checked_vars: max_vars,
                pairs_checked: pairs.len(),
                counterexample,
            })
        }
        IdentificationMode::Chains => identifies_by_chains(m, c1, c2, depth, max_vars),
    }
}

/// Cross-validation route: enumerate formulas syntactically, group them by
/// association class (collapse skeleton), and require designation masks to
/// agree within each class. Exponential in depth; keep bounds small.
fn identifies_by_chains(
    m: &Matrix,
    c1: &str,
    c2: &str,
    depth: usize,
    max_vars: usize,
) -> Result<IdentificationReport> {
    check_swap_targets(m.signature(), c1, c2)?;
    let names = variable_names(max_vars);
    let len = m.value_count().pow(max_vars as u32);
    let vector_of = |f: &Formula| -> Vec<usize> {
        (0..len)
            .map(|a| {
                let lookup = |var: &str| -> Option<usize> {
                    names
                        .iter()
                        .position(|n| n == var)
                        .map(|j| assignment_digit(a, j, max_vars, m.value_count()))
                };
                m.evaluate_index(f, &lookup)
                    .expect("enumerated formulas are well-formed")
            })
            .collect()
    };

    // Every formula of depth <= `depth`, tagged with its generation layer
    // (constants enter at layer 1, like any other application).
    let mut flat: Vec<(Formula, usize)> =
        names.iter().map(|n| (Formula::var(n), 0usize)).collect();
    for layer in 1..=depth {
        let prev_len = flat.len();
        let mut next: Vec<(Formula, usize)> = Vec::new();
        for position in 0..m.signature().len() {
            let (conn, arity) = m.signature().entry(position);
            let arity = arity as usize;
            if arity == 0 {
                if layer == 1 {
                    next.push((Formula::app(conn, vec![]), layer));
                }
                continue;
            }
            if prev_len == 0 {
                continue;
            }
            let mut choice = vec![0usize; arity];
            loop {
                if choice.iter().any(|&i| flat[i].1 == layer - 1) {
                    next.push((
                        Formula::app(conn, choice.iter().map(|&i| flat[i].0.clone()).collect()),
                        layer,
                    ));
                }
                if !next_odometer(&mut choice, prev_len) {
                    break;
                }
            }
        }
        flat.extend(next);
    }

    let mut classes: HashMap<String, (Formula, Vec<usize>)> = HashMap::new();
    let mut pairs_checked = 0usize;
    for (f, _) in &flat {
        let key = collapse(f, c1, c2).to_string();
        let vector = vector_of(f);
        match classes.get(&key) {
            None => {
                classes.insert(key, (f.clone(), vector));
            }
            Some((representative, repr_vector)) => {
                pairs_checked += 1;
                let differs = (0..len).any(|i| {
                    m.is_designated_index(repr_vector[i]) != m.is_designated_index(vector[i])
                });
                if differs {
                    // Walk the chain between the two and report the first
                    // adjacent step that differs in designation.
                    let witness = associated(m.signature(), representative, f, c1, c2)?
                        .expect("same collapse skeleton");
                    for window in witness.chain.windows(2) {
                        let va = vector_of(&window[0]);
                        let vb = vector_of(&window[1]);
                        if let Some(c) = counterexample_from_vectors(
                            m, &window[0], &window[1], &va, &vb, max_vars,
                        ) {
                            return Ok(IdentificationReport {
                                identified: false,
                                checked_depth: depth,
                                checked_vars: max_vars,
                                pairs_checked,
                                counterexample: Some(c),
                            });
                        }
                    }
                    unreachable!("endpoints differ, so some chain step differs");
                }
            }
        }
    }
    Ok(IdentificationReport {
        identified: true,
        checked_depth: depth,
        checked_vars: max_vars,
        pairs_checked,
        counterexample: None,
    })
}

/// The single-connective reduct of `m`: same carrier, same designated
/// values, only `conn`'s table.
pub fn fragment(m: &Matrix, conn: &str) -> Result<Matrix> {
    let position = m
        .signature()
        .position(conn)
        .ok_or_else(|| Error::eval(format!("{} has no connective {conn}", m.name())))?;
    let arity = m.signature().entry(position).1;
    let table: Vec<String> = (0..m.value_count().pow(arity as u32))
        .map(|i| {
            let args = crate::matrix::index_tuple(i, m.value_count(), arity as usize);
            m.value_name(m.apply_index(position, &args)).to_string()
        })
        .collect();
    Matrix::new(
        format!("{}.{conn}", m.name()),
        m.values().to_vec(),
        m.designated_values()
            .iter()
            .map(|s| s.to_string())
            .collect(),
        Signature::new([(conn, arity)])?,
        vec![table],
    )
}

/// One place where a map fails the homomorphism equation.
#[derive(Debug, Clone)]
pub struct HomViolation {
    pub connective: String,
    /// Argument value names in the source matrix.
    pub args: Vec<String>,
    /// Image of the source result: h(c₁(x⃗)).
    pub mapped_result: String,
    /// Result over the images: c₂(h(x⃗)).
    pub result_of_mapped: String,
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "h({}({})) = {} but {}(h-images) = {}",
            self.connective,
            self.args.join(","),
            self.mapped_result,
            self.connective,
            self.result_of_mapped
        )
    }
}

fn check_hom_compatible(h: &[usize], a: &Matrix, b: &Matrix) -> Result<()> {
    if h.len() != a.value_count() {
        return Err(Error::eval(format!(
            "map covers {} values but {} has {}",
            h.len(),
            a.name(),
            a.value_count()
        )));
    }
    if let Some(&bad) = h.iter().find(|&&i| i >= b.value_count()) {
        return Err(Error::eval(format!(
            "map target {bad} is outside {}",
            b.name()
        )));
    }
    if a.signature().len() != b.signature().len() {
        return Err(Error::eval(format!(
            "{} and {} have different numbers of connectives",
            a.name(),
            b.name()
        )));
    }
    for position in 0..a.signature().len() {
        let (n1, a1) = a.signature().entry(position);
        let (n2, a2) = b.signature().entry(position);
        if a1 != a2 {
            return Err(Error::eval(format!(
                "cannot pair {n1}/{a1} with {n2}/{a2}: arities differ"
            )));
        }
    }
    Ok(())
}

/// First failure of the homomorphism equation `h(c₁(x⃗)) = c₂(h(x⃗))`,
/// pairing the two signatures positionally, scanning tuples with the first
/// argument most significant.
pub fn hom_violation(h: &[usize], a: &Matrix, b: &Matrix) -> Result<Option<HomViolation>> {
    check_hom_compatible(h, a, b)?;
    for position in 0..a.signature().len() {
        let (conn, arity) = a.signature().entry(position);
        let arity = arity as usize;
        for i in 0..a.value_count().pow(arity as u32) {
            let args = crate::matrix::index_tuple(i, a.value_count(), arity);
            let mapped_result = h[a.apply_index(position, &args)];
            let images: Vec<usize> = args.iter().map(|&x| h[x]).collect();
            let result_of_mapped = b.apply_index(position, &images);
            if mapped_result != result_of_mapped {
                return Ok(Some(HomViolation {
                    connective: conn.to_string(),
                    args: args.iter().map(|&x| a.value_name(x).to_string()).collect(),
                    mapped_result: b.value_name(mapped_result).to_string(),
                    result_of_mapped: b.value_name(result_of_mapped).to_string(),
                }));
            }
        }
    }
    Ok(None)
}

/// True when `h` is a strict homomorphism: the homomorphism equation holds
/// for every connective pair and `h` preserves and reflects designation.
pub fn is_strict_hom(h: &[usize], a: &Matrix, b: &Matrix) -> Result<bool> {
    if hom_violation(h, a, b)?.is_some() {
        return Ok(false);
    }
    Ok((0..a.value_count()).all(|x| a.is_designated_index(x) == b.is_designated_index(h[x])))
}

/// True when `h` is a bijective strict homomorphism.
pub fn is_matrix_iso(h: &[usize], a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.value_count() != b.value_count() {
        return Ok(false);
    }
    let mut hit = vec![false; b.value_count()];
    for &i in h {
        if i < hit.len() {
            hit[i] = true;
        }
    }
    Ok(hit.iter().all(|&x| x) && is_strict_hom(h, a, b)?)
}

/// The sufficient condition for identification: the pair is admissible,
/// its first map is an isomorphism between the two single-connective
/// fragments, and the two maps are mutually inverse.
pub fn theorem_sufficient(
    m1: &Matrix,
    m2: &Matrix,
    pair: &FibringPair,
    c1: &str,
    c2: &str,
) -> Result<bool> {
    if !crate::fibring::is_admissible(m1, m2, pair) {
        return Ok(false);
    }
    let lambda: Vec<usize> = (0..m1.value_count()).map(|i| pair.lambda_index(i)).collect();
    let mu: Vec<usize> = (0..m2.value_count()).map(|j| pair.mu_index(j)).collect();
    let inverse = m1.value_count() == m2.value_count()
        && lambda.iter().enumerate().all(|(i, &l)| mu[l] == i)
        && mu.iter().enumerate().all(|(j, &u)| lambda[u] == j);
    if !inverse {
        return Ok(false);
    }
    let frag1 = fragment(m1, c1)?;
    let frag2 = fragment(m2, c2)?;
    is_matrix_iso(&lambda, &frag1, &frag2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fibring::fibre;
    use crate::parse::parse_formula;

    fn two_binary_signature() -> Signature {
        Signature::new([("neg", 1u8), ("amp", 2u8), ("wedge", 2u8)]).unwrap()
    }

    #[test]
    fn one_swap_is_close_but_two_swaps_are_not() {
        let sig = two_binary_signature();
        let psi1 = parse_formula("amp(neg(wedge(p,q)),r)", &sig).unwrap();
        let psi2 = parse_formula("wedge(neg(wedge(p,q)),r)", &sig).unwrap();
        let psi3 = parse_formula("wedge(neg(amp(p,q)),r)", &sig).unwrap();
        assert!(closely_associated(&sig, &psi1, &psi2, "amp", "wedge").unwrap());
        assert!(closely_associated(&sig, &psi1, &psi1, "amp", "wedge").unwrap());
        assert!(!closely_associated(&sig, &psi1, &psi3, "amp", "wedge").unwrap());

        let witness = associated(&sig, &psi1, &psi3, "amp", "wedge")
            .unwrap()
            .expect("two swaps still associate");
        assert_eq!(witness.chain.len(), 3);
        for window in witness.chain.windows(2) {
            assert!(closely_associated(&sig, &window[0], &window[1], "amp", "wedge").unwrap());
        }
        assert_eq!(witness.chain[0], psi1);
        assert_eq!(witness.chain[2], psi3);
    }

    #[test]
    fn variables_associate_only_with_themselves() {
        let sig = two_binary_signature();
        let p = Formula::var("p");
        let q = Formula::var("q");
        assert!(associated(&sig, &p, &q, "amp", "wedge").unwrap().is_none());
        let same = associated(&sig, &p, &p, "amp", "wedge").unwrap().unwrap();
        assert_eq!(same.chain, vec![p]);
    }

    #[test]
    fn swap_targets_must_share_an_arity() {
        let sig = two_binary_signature();
        let p = Formula::var("p");
        assert!(closely_associated(&sig, &p, &p, "neg", "amp").is_err());
        assert!(closely_associated(&sig, &p, &p, "neg", "missing").is_err());
    }

    #[test]
    fn mutually_inverse_fragment_iso_identifies_both_connective_pairs() {
        let i0 = catalog::builtin("I^0").unwrap();
        let p0 = catalog::builtin("P^0").unwrap();
        let pair = catalog::pairs::i_p(&i0, &p0, 0, 0).unwrap();
        assert!(theorem_sufficient(&i0, &p0, &pair, "imp", "imp").unwrap());
        assert!(theorem_sufficient(&i0, &p0, &pair, "neg", "neg").unwrap());
        let fibred = fibre(&i0, &p0, &pair).unwrap();
        for (c1, c2) in [("imp@1", "imp@2"), ("neg@1", "neg@2")] {
            let report = identifies(&fibred, c1, c2, 3, 2, IdentificationMode::Close).unwrap();
            assert!(report.identified, "{report}");
        }
    }

    #[test]
    fn conjunction_fragments_identify_without_the_sufficient_condition() {
        let l3 = catalog::builtin("L3conj").unwrap();
        let g3 = catalog::builtin("G3conj").unwrap();
        let pair = catalog::pairs::l3_g3(2, 2).unwrap();
        assert!(!theorem_sufficient(&l3, &g3, &pair, "conj", "conj").unwrap());
        let fibred = fibre(&l3, &g3, &pair).unwrap();
        let report =
            identifies(&fibred, "conj@1", "conj@2", 3, 2, IdentificationMode::Close).unwrap();
        assert!(report.identified, "{report}");
    }

    #[test]
    fn implication_context_separates_the_two_conjunctions() {
        let l3 = catalog::builtin("L3conjimp").unwrap();
        let g3 = catalog::builtin("G3conjimp").unwrap();
        let pair = catalog::pairs::l3_g3(2, 2).unwrap();
        let fibred = fibre(&l3, &g3, &pair).unwrap();
        let report =
            identifies(&fibred, "conj@1", "conj@2", 3, 3, IdentificationMode::Close).unwrap();
        assert!(!report.identified);
        let c = report.counterexample.expect("counterexample reported");
        // The first distinguishable pair the search meets: an implication
        // whose antecedent carries the swapped conjunction. Bridging sends
        // conj@1(p1,p1) and conj@2(p1,p1) at p1 = half@1 to antecedents 0
        // and half respectively, and only the latter can leave the
        // implication undesignated.
        assert_eq!(c.first.to_string(), "imp@1(conj@1(p1,p1),p2)");
        assert_eq!(c.second.to_string(), "imp@1(conj@2(p1,p1),p2)");
        assert_eq!(c.valuation.get("p1"), Some("half@1"));
        assert_eq!(c.valuation.get("p2"), Some("0@1"));
        assert_eq!(c.first_value, "1@1");
        assert_eq!(c.second_value, "half@1");
        // Re-verify independently of the enumeration machinery.
        assert!(closely_associated(
            fibred.matrix().signature(),
            &c.first,
            &c.second,
            "conj@1",
            "conj@2"
        )
        .unwrap());
        let m = fibred.matrix();
        assert_eq!(m.evaluate(&c.first, &c.valuation).unwrap(), "1@1");
        assert_eq!(m.evaluate(&c.second, &c.valuation).unwrap(), "half@1");
        assert_eq!(m.is_designated("1@1"), Some(true));
        assert_eq!(m.is_designated("half@1"), Some(false));
    }

    #[test]
    fn chain_mode_agrees_with_close_mode_on_small_bounds() {
        let l3 = catalog::builtin("L3conjimp").unwrap();
        let g3 = catalog::builtin("G3conjimp").unwrap();
        let pair = catalog::pairs::l3_g3(2, 2).unwrap();
        let fibred = fibre(&l3, &g3, &pair).unwrap();
        let close =
            identifies(&fibred, "conj@1", "conj@2", 2, 2, IdentificationMode::Close).unwrap();
        let chains =
            identifies(&fibred, "conj@1", "conj@2", 2, 2, IdentificationMode::Chains).unwrap();
        assert_eq!(close.identified, chains.identified);
        assert!(!chains.identified);
        let c = chains.counterexample.unwrap();
        assert!(closely_associated(
            fibred.matrix().signature(),
            &c.first,
            &c.second,
            "conj@1",
            "conj@2"
        )
        .unwrap());
        let m = fibred.matrix();
        let first = m.evaluate(&c.first, &c.valuation).unwrap();
        let second = m.evaluate(&c.second, &c.valuation).unwrap();
        assert_ne!(
            m.is_designated(first).unwrap(),
            m.is_designated(second).unwrap()
        );

        let conj_only = fibre(
            &catalog::builtin("L3conj").unwrap(),
            &catalog::builtin("G3conj").unwrap(),
            &catalog::pairs::l3_g3(2, 2).unwrap(),
        )
        .unwrap();
        let close =
            identifies(&conj_only, "conj@1", "conj@2", 2, 2, IdentificationMode::Close).unwrap();
        let chains =
            identifies(&conj_only, "conj@1", "conj@2", 2, 2, IdentificationMode::Chains).unwrap();
        assert!(close.identified && chains.identified);
    }

    #[test]
    fn fragments_keep_carrier_and_designation() {
        let p1 = catalog::builtin("P1").unwrap();
        let frag = fragment(&p1, "negP1").unwrap();
        assert_eq!(frag.values(), p1.values());
        assert_eq!(frag.designated_values(), p1.designated_values());
        assert_eq!(frag.signature().len(), 1);
        assert_eq!(frag.apply("negP1", &["T"]).unwrap(), "F");
        assert!(fragment(&p1, "nosuch").is_err());
    }

    #[test]
    fn translation_fails_the_hom_equation_where_the_tables_differ() {
        let l3 = catalog::builtin("L3conj").unwrap();
        let g3 = catalog::builtin("G3conj").unwrap();
        let pair = catalog::pairs::l3_g3(2, 2).unwrap();
        let lambda: Vec<usize> = (0..3).map(|i| pair.lambda_index(i)).collect();
        let violation = hom_violation(&lambda, &l3, &g3).unwrap().expect("not a hom");
        assert_eq!(violation.connective, "conj");
        assert_eq!(violation.args, ["0", "half"]);
        assert_eq!(violation.mapped_result, "half");
        assert_eq!(violation.result_of_mapped, "0");
        assert!(!is_strict_hom(&lambda, &l3, &g3).unwrap());
    }

    #[test]
    fn identity_is_an_isomorphism_on_any_fragment() {
        let m = catalog::builtin("CPLand").unwrap();
        let frag = fragment(&m, "and").unwrap();
        let identity: Vec<usize> = (0..frag.value_count()).collect();
        assert!(is_matrix_iso(&identity, &frag, &frag).unwrap());
        // A non-surjective map cannot be an iso even when it is a hom.
        let collapse_map = vec![0usize, 0];
        assert!(!is_matrix_iso(&collapse_map, &frag, &frag).unwrap());
    }

    #[test]
    fn identification_is_symmetric_in_the_two_connectives() {
        let l3 = catalog::builtin("L3conjimp").unwrap();
        let g3 = catalog::builtin("G3conjimp").unwrap();
        let pair = catalog::pairs::l3_g3(2, 2).unwrap();
        let fibred = fibre(&l3, &g3, &pair).unwrap();
        let one =
            identifies(&fibred, "conj@1", "conj@2", 2, 2, IdentificationMode::Close).unwrap();
        let two =
            identifies(&fibred, "conj@2", "conj@1", 2, 2, IdentificationMode::Close).unwrap();
        assert_eq!(one.identified, two.identified);
    }
}
