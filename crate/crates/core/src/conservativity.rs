//! Weak and strong conservativity checks between a component logic and a
//! fibred logic, bounded by formula depth, premise count, and variable
//! count.
//!
//! The fibred logic speaks the tagged union language, but every formula of
//! one component embeds into it by tagging each connective with its side.
//! The extension is *weakly* conservative for that side when embedding
//! preserves and reflects tautologies, and *strongly* conservative when
//! the same holds for every entailment. Both checks enumerate all
//! component formulas within the bound modulo their value vectors (see
//! [`crate::closure`]), so a `conservative=true` verdict is exhaustive for
//! the bound, and a `false` verdict carries a counterexample that
//! re-verifies via [`Matrix::entails`].

use std::collections::HashSet;
use std::fmt;

use crate::closure::{enumerate_joint, Mask};
use crate::fibring::{tag_name, FibredMatrix, Side};
use crate::formula::Formula;
use crate::matrix::{Matrix, Valuation};
use crate::Result;

/// Which conservativity notion a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionKind {
    /// Tautology agreement (no premises).
    Weak,
    /// Entailment agreement up to the premise bound.
    Strong,
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionKind::Weak => write!(f, "weak"),
            ExtensionKind::Strong => write!(f, "strong"),
        }
    }
}

/// An entailment on which the component logic and the fibred logic
/// disagree.
#[derive(Debug, Clone)]
pub struct ConservativityCounterexample {
    /// Premises, in the component language.
    pub premises: Vec<Formula>,
    /// Conclusion, in the component language.
    pub conclusion: Formula,
    /// Whether the entailment holds in the component matrix.
    pub holds_in_component: bool,
    /// Whether the tagged entailment holds in the fibred matrix.
    pub holds_in_fibred: bool,
    /// A refuting valuation for the side on which the entailment fails:
    /// over the fibred carrier when only the component entailment holds,
    /// over the component carrier otherwise.
    pub valuation: Valuation,
}

/// Outcome of a bounded conservativity check.
#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub kind: ExtensionKind,
    pub side: Side,
    pub conservative: bool,
    pub checked_depth: usize,
    pub checked_premises: usize,
    pub checked_vars: usize,
    /// Distinct formula behaviours examined.
    pub behaviours: usize,
    pub counterexample: Option<ConservativityCounterexample>,
}

impl fmt::Display for ExtensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} extension of side {}: {}",
            self.kind,
            self.side,
            if self.conservative {
                "conservative"
            } else {
                "NOT conservative"
            }
        )?;
        writeln!(
            f,
            "checked: depth <= {}, premises <= {}, variables <= {}, {} distinct behaviours",
            self.checked_depth, self.checked_premises, self.checked_vars, self.behaviours
        )?;
        if let Some(c) = &self.counterexample {
            let premises: Vec<String> = c.premises.iter().map(|p| p.to_string()).collect();
            writeln!(
                f,
                "counterexample: {{{}}} |- {}",
                premises.join(", "),
                c.conclusion
            )?;
            writeln!(
                f,
                "  holds in component: {}; holds in fibred: {}",
                c.holds_in_component, c.holds_in_fibred
            )?;
            writeln!(f, "  refuting valuation: {}", c.valuation)?;
        }
        Ok(())
    }
}

/// Advances `combo` to the next size-|combo| combination of indices below
/// `n`, in lexicographic order; false when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Restricts `valuation` to the variables occurring in the given formulas,
/// so reports only mention what matters.
fn restrict_valuation(valuation: &Valuation, formulas: &[&Formula]) -> Valuation {
    let mut used: Vec<String> = Vec::new();
    for f in formulas {
        for v in f.vars() {
            if !used.iter().any(|u| u == &v) {
                used.push(v);
            }
        }
    }
    let mut out = Valuation::new();
    for (var, value) in valuation.iter() {
        if used.iter().any(|u| u == var) {
            out.set(var, value);
        }
    }
    out
}

/// Checks that tagging preserves and reflects tautologies for one side, over
/// all formulas of depth at most `depth` in at most `vars` variables.
pub fn check_weak_conservative(
    component: &Matrix,
    fibred: &FibredMatrix,
    side: Side,
    depth: usize,
    vars: usize,
) -> ExtensionReport {
    let states = enumerate_joint(component, fibred, side, vars, depth);
    let mut counterexample = None;
    for state in &states {
        let cmask = Mask::designated(component, &state.component);
        let fmask = Mask::designated(fibred.matrix(), &state.fibred);
        let ctaut = cmask.is_full();
        let ftaut = fmask.is_full();
        if ctaut != ftaut {
            let valuation = if ctaut {
                let a = Mask::full(state.fibred.len())
                    .first_excess_over(&fmask)
                    .expect("a non-tautology has an undesignated assignment");
                crate::closure::assignment_valuation(fibred.matrix(), a, vars)
            } else {
                let a = Mask::full(state.component.len())
                    .first_excess_over(&cmask)
                    .expect("a non-tautology has an undesignated assignment");
                crate::closure::assignment_valuation(component, a, vars)
            };
            counterexample = Some(ConservativityCounterexample {
                premises: Vec::new(),
                conclusion: state.formula.clone(),
                holds_in_component: ctaut,
                holds_in_fibred: ftaut,
                valuation: restrict_valuation(&valuation, &[&state.formula]),
            });
            break;
        }
    }
    ExtensionReport {
        kind: ExtensionKind::Weak,
        side,
        conservative: counterexample.is_none(),
        checked_depth: depth,
        checked_premises: 0,
        checked_vars: vars,
        behaviours: states.len(),
        counterexample,
    }
}

/// Checks that tagging preserves and reflects entailment for one side, over
/// all premise sets of size at most `max_premises` and conclusions of depth
/// at most `depth` in at most `vars` variables.
pub fn check_strong_conservative(
    component: &Matrix,
    fibred: &FibredMatrix,
    side: Side,
    depth: usize,
    max_premises: usize,
    vars: usize,
) -> ExtensionReport {
    let states = enumerate_joint(component, fibred, side, vars, depth);
    let clen = component.value_count().pow(vars as u32);
    let flen = fibred.matrix().value_count().pow(vars as u32);

    // Entailment verdicts depend only on designation masks, so collapse
    // states to distinct mask pairs, keeping the first witness formula.
    let mut mask_states: Vec<(Mask, Mask, usize)> = Vec::new();
    let mut seen: HashSet<(Mask, Mask)> = HashSet::new();
    for (i, state) in states.iter().enumerate() {
        let cmask = Mask::designated(component, &state.component);
        let fmask = Mask::designated(fibred.matrix(), &state.fibred);
        let key = (cmask.clone(), fmask.clone());
        if seen.insert(key) {
            mask_states.push((cmask, fmask, i));
        }
    }

    // Premise sets in size-then-lexicographic order; a set's verdict
    // depends only on the intersection of its masks, so sets realizing an
    // already-seen intersection are skipped.
    let mut intersections: HashSet<(Mask, Mask)> = HashSet::new();
    let mut counterexample = None;
    'outer: for size in 0..=max_premises.min(mask_states.len()) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut cint = Mask::full(clen);
            let mut fint = Mask::full(flen);
            for &i in &combo {
                cint.intersect_with(&mask_states[i].0);
                fint.intersect_with(&mask_states[i].1);
            }
            let key = (cint.clone(), fint.clone());
            if intersections.insert(key) {
                for &(ref cmask, ref fmask, witness) in &mask_states {
                    let holds_component = cint.is_subset_of(cmask);
                    let holds_fibred = fint.is_subset_of(fmask);
                    if holds_component != holds_fibred {
                        let premises: Vec<Formula> = combo
                            .iter()
                            .map(|&i| states[mask_states[i].2].formula.clone())
                            .collect();
                        let conclusion = states[witness].formula.clone();
                        let valuation = if holds_component {
                            let a = fint
                                .first_excess_over(fmask)
                                .expect("refuted entailment has a refuting assignment");
                            crate::closure::assignment_valuation(fibred.matrix(), a, vars)
                        } else {
                            let a = cint
                                .first_excess_over(cmask)
                                .expect("refuted entailment has a refuting assignment");
                            crate::closure::assignment_valuation(component, a, vars)
                        };
                        let mut mentioned: Vec<&Formula> = premises.iter().collect();
                        mentioned.push(&conclusion);
                        counterexample = Some(ConservativityCounterexample {
                            valuation: restrict_valuation(&valuation, &mentioned),
                            premises,
                            conclusion,
                            holds_in_component: holds_component,
                            holds_in_fibred: holds_fibred,
                        });
                        break 'outer;
                    }
                }
            }
            if !next_combination(&mut combo, mask_states.len()) {
                break;
            }
        }
    }

    ExtensionReport {
        kind: ExtensionKind::Strong,
        side,
        conservative: counterexample.is_none(),
        checked_depth: depth,
        checked_premises: max_premises,
        checked_vars: vars,
        behaviours: mask_states.len(),
        counterexample,
    }
}

/// One admissible pair's excluded-middle behaviour in the FDE/J3 fibring.
#[derive(Debug, Clone)]
pub struct LemSurveyEntry {
    pub pair: crate::fibring::FibringPair,
    /// Name of μ(0) in the first carrier.
    pub mu_zero: String,
    /// Whether `or@1(neg@2(p), p)` is a fibred tautology.
    pub lem_one: bool,
    /// Whether `vee@2(neg@1(p), p)` is a fibred tautology.
    pub lem_two: bool,
    /// A refuting valuation when `lem_two` fails.
    pub lem_two_counterexample: Option<Valuation>,
}

/// Surveys both excluded-middle formulas over every admissible pair of the
/// FDE/J3 fibring: the first mixes the second side's negation into the
/// first side's disjunction, the second mixes the first side's negation
/// into the second side's join.
pub fn lem_fde_j3_survey() -> Result<Vec<LemSurveyEntry>> {
    let fde = crate::catalog::builtin("FDE").expect("FDE is built in");
    let j3 = crate::catalog::builtin("J3").expect("J3 is built in");
    let p = Formula::var("p");
    let lem_one = Formula::app(
        tag_name("or", Side::One),
        vec![
            Formula::app(tag_name("neg", Side::Two), vec![p.clone()]),
            p.clone(),
        ],
    );
    let lem_two = Formula::app(
        tag_name("vee", Side::Two),
        vec![
            Formula::app(tag_name("neg", Side::One), vec![p.clone()]),
            p.clone(),
        ],
    );
    let mut entries = Vec::new();
    for pair in crate::fibring::enumerate_admissible_pairs(&fde, &j3) {
        let fibred = crate::fibring::fibre(&fde, &j3, &pair)?;
        let one = fibred.matrix().entails(&[], &lem_one)?;
        let two = fibred.matrix().entails(&[], &lem_two)?;
        entries.push(LemSurveyEntry {
            mu_zero: pair.mu_name(&fde, &j3, "0")?.to_string(),
            pair,
            lem_one: one.holds(),
            lem_two: two.holds(),
            lem_two_counterexample: two.counterexample().cloned(),
        });
    }
    Ok(entries)
}
