//! Term functions and bounded clone comparison.
//!
//! A formula over variables `p1..pk` denotes a *term function* A^k → A.
//! The k-ary part of a matrix's clone is the set of all such functions; it
//! is computed by saturating: start from the projections, apply every
//! connective to known functions, and keep going until no new value table
//! appears. Two matrices over the same carrier and designated set *present
//! the same structure up to arity k* when their k-ary (and lower) clone
//! parts coincide; a difference is witnessed by a term function definable
//! on one side only, reported with its defining formula.
//!
//! [`substitute`] and [`translate`] rewrite formulas through definitional
//! templates (for example expressing one connective through others), which
//! is how presentation equality turns into entailment equivalence.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::closure::{assignment_digit, enumerate_states, variable_names};
use crate::formula::Formula;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// A k-ary operation denoted by a formula: its outputs over all argument
/// tuples (first argument most significant) and one defining formula.
#[derive(Debug, Clone)]
pub struct TermFunction {
    pub arity: usize,
    /// Output value indices, one per argument tuple.
    pub table: Vec<usize>,
    pub formula: Formula,
}

impl TermFunction {
    /// Output value names in table order.
    pub fn outputs<'a>(&self, m: &'a Matrix) -> Vec<&'a str> {
        self.table.iter().map(|&i| m.value_name(i)).collect()
    }
}

/// The term function a formula denotes over variables `p1..p{arity}`.
/// Fails when the formula mentions any other variable or an unknown
/// connective.
pub fn term_function(m: &Matrix, f: &Formula, arity: usize) -> Result<TermFunction> {
    let names = variable_names(arity);
    for v in f.vars() {
        if !names.contains(&v) {
            return Err(Error::eval(format!(
                "variable {v} is outside p1..p{arity}"
            )));
        }
    }
    let len = m.value_count().pow(arity as u32);
    let mut table = Vec::with_capacity(len);
    for a in 0..len {
        let lookup = |var: &str| -> Option<usize> {
            names
                .iter()
                .position(|n| n == var)
                .map(|j| assignment_digit(a, j, arity, m.value_count()))
        };
        table.push(m.evaluate_index(f, &lookup)?);
    }
    Ok(TermFunction {
        arity,
        table,
        formula: f.clone(),
    })
}

/// Every k-ary term function of the matrix, saturated to a fixpoint, in
/// discovery order (projections first, then by formula depth).
pub fn clone_upto(m: &Matrix, arity: usize) -> Vec<TermFunction> {
    // Saturation must terminate: there are at most |A|^(|A|^k) tables.
    enumerate_states(m, arity, usize::MAX)
        .into_iter()
        .map(|s| TermFunction {
            arity,
            table: s.vector,
            formula: s.formula,
        })
        .collect()
}

/// Searches the matrix's k-ary clone for a function with the given table.
pub fn defining_formula(m: &Matrix, table: &[usize], arity: usize) -> Option<Formula> {
    clone_upto(m, arity)
        .into_iter()
        .find(|tf| tf.table == table)
        .map(|tf| tf.formula)
}

/// Outcome of a bounded presentation comparison.
#[derive(Debug, Clone)]
pub struct PresentationReport {
    pub same: bool,
    pub checked_arity: usize,
    /// Smallest arity at which the clones differ.
    pub differing_arity: Option<usize>,
    /// A term function of the first matrix the second cannot define:
    /// defining formula and named outputs.
    pub only_first: Option<(Formula, Vec<String>)>,
    /// A term function of the second matrix the first cannot define.
    pub only_second: Option<(Formula, Vec<String>)>,
}

impl fmt::Display for PresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.same {
            return write!(f, "presentations agree up to arity {}", self.checked_arity);
        }
        write!(
            f,
            "presentations differ at arity {}",
            self.differing_arity.unwrap_or(self.checked_arity)
        )?;
        if let Some((formula, outputs)) = &self.only_first {
            write!(
                f,
                "\n  only the first defines {formula} with outputs [{}]",
                outputs.join(", ")
            )?;
        }
        if let Some((formula, outputs)) = &self.only_second {
            write!(
                f,
                "\n  only the second defines {formula} with outputs [{}]",
                outputs.join(", ")
            )?;
        }
        Ok(())
    }
}

/// Compares the clones of two matrices over one carrier, arity by arity
/// from 0 up to `max_arity`, stopping at the first difference. The
/// carriers and designated sets must match exactly; presentation equality
/// is about defining the same operations over the same values.
pub fn same_presentation(a: &Matrix, b: &Matrix, max_arity: usize) -> Result<PresentationReport> {
    if a.values() != b.values() {
        return Err(Error::eval(format!(
            "{} and {} have different carriers; their clones are not comparable",
            a.name(),
            b.name()
        )));
    }
    if a.designated_values() != b.designated_values() {
        return Err(Error::eval(format!(
            "{} and {} designate different values; their clones are not comparable",
            a.name(),
            b.name()
        )));
    }
    for arity in 0..=max_arity {
        let first = clone_upto(a, arity);
        let second = clone_upto(b, arity);
        let first_tables: HashSet<&Vec<usize>> = first.iter().map(|tf| &tf.table).collect();
        let second_tables: HashSet<&Vec<usize>> = second.iter().map(|tf| &tf.table).collect();
        let witness = |tf: &TermFunction, m: &Matrix| {
            (
                tf.formula.clone(),
                tf.outputs(m).iter().map(|s| s.to_string()).collect(),
            )
        };
        let only_first = first
            .iter()
            .find(|tf| !second_tables.contains(&tf.table))
            .map(|tf| witness(tf, a));
        let only_second = second
            .iter()
            .find(|tf| !first_tables.contains(&tf.table))
            .map(|tf| witness(tf, b));
        if only_first.is_some() || only_second.is_some() {
            return Ok(PresentationReport {
                same: false,
                checked_arity: max_arity,
                differing_arity: Some(arity),
                only_first,
                only_second,
            });
        }
    }
    Ok(PresentationReport {
        same: true,
        checked_arity: max_arity,
        differing_arity: None,
        only_first: None,
        only_second: None,
    })
}

/// Index of the variable `p{i}` naming scheme, if the name fits it.
fn template_slot(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('p')?;
    if digits.is_empty() || digits.starts_with('0') {
        return None;
    }
    digits.parse::<usize>().ok().map(|i| i - 1)
}

/// Replaces `p1..pn` in the template by the given arguments. Variables
/// outside that range (or beyond the argument list) stay as they are.
pub fn substitute(template: &Formula, args: &[Formula]) -> Formula {
    match template {
        Formula::Var(v) => match template_slot(v) {
            Some(slot) if slot < args.len() => args[slot].clone(),
            _ => Formula::var(v.clone()),
        },
        Formula::App(n, inner) => Formula::app(
            n.clone(),
            inner.iter().map(|t| substitute(t, args)).collect(),
        ),
    }
}

/// Rewrites every application of a templated connective by its template,
/// bottom-up: arguments are translated first, then spliced into the
/// template's `p1..pn` slots.
pub fn translate(f: &Formula, templates: &HashMap<String, Formula>) -> Formula {
    match f {
        Formula::Var(v) => Formula::var(v.clone()),
        Formula::App(n, args) => {
            let translated: Vec<Formula> = args.iter().map(|a| translate(a, templates)).collect();
            match templates.get(n) {
                Some(template) => substitute(template, &translated),
                None => Formula::app(n.clone(), translated),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fibring::{fibre, FibringPair};
    use crate::parse::parse_formula;
    use crate::signature::Signature;

    fn inline_matrix(ops: &[(&str, u8, &[&str])]) -> Matrix {
        let signature =
            Signature::new(ops.iter().map(|&(n, a, _)| (n, a)).collect::<Vec<_>>()).unwrap();
        Matrix::new(
            "inline",
            vec!["0".into(), "1".into()],
            vec!["1".into()],
            signature,
            ops.iter()
                .map(|&(_, _, t)| t.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn paraconsistent_negation_has_a_definable_classical_companion() {
        let p1 = catalog::builtin("P1").unwrap();
        let f = parse_formula("negP1(impP1(negP1(p1),p1))", p1.signature()).unwrap();
        let tf = term_function(&p1, &f, 1).unwrap();
        // Outputs over T, T1, F: designated inputs go to F, and F to T.
        assert_eq!(tf.outputs(&p1), ["F", "F", "T"]);
        let again = defining_formula(&p1, &tf.table, 1).expect("table is definable");
        assert_eq!(term_function(&p1, &again, 1).unwrap().table, tf.table);
    }

    #[test]
    fn formulas_must_stay_within_the_declared_variables() {
        let p1 = catalog::builtin("P1").unwrap();
        let f = parse_formula("negP1(p2)", p1.signature()).unwrap();
        assert!(term_function(&p1, &f, 1).is_err());
        assert!(term_function(&p1, &f, 2).is_ok());
    }

    #[test]
    fn both_classical_bases_generate_all_binary_functions() {
        let and_base = catalog::builtin("CPLand").unwrap();
        let or_base = catalog::builtin("CPLor").unwrap();
        assert_eq!(clone_upto(&and_base, 2).len(), 16);
        assert_eq!(clone_upto(&or_base, 2).len(), 16);
        let report = same_presentation(&and_base, &or_base, 2).unwrap();
        assert!(report.same, "{report}");

        let unary: HashSet<Vec<usize>> = clone_upto(&and_base, 1)
            .into_iter()
            .map(|tf| tf.table)
            .collect();
        let expected: HashSet<Vec<usize>> =
            [vec![0, 1], vec![1, 0], vec![0, 0], vec![1, 1]].into();
        assert_eq!(unary, expected);
    }

    #[test]
    fn conjunction_alone_defines_only_the_identity_unary_function() {
        let and_only = inline_matrix(&[("and", 2, &["0", "0", "0", "1"])]);
        let unary = clone_upto(&and_only, 1);
        assert_eq!(unary.len(), 1);
        assert_eq!(unary[0].table, vec![0, 1]);

        let and_base = catalog::builtin("CPLand").unwrap();
        let report = same_presentation(&and_only, &and_base, 1).unwrap();
        assert!(!report.same);
        assert_eq!(report.differing_arity, Some(1));
        assert!(report.only_first.is_none());
        let (formula, outputs) = report.only_second.expect("negation is missing");
        assert_eq!(formula.to_string(), "neg(p1)");
        assert_eq!(outputs, ["1", "0"]);
    }

    #[test]
    fn clones_over_different_carriers_are_not_comparable() {
        let cpl = catalog::builtin("CPL").unwrap();
        let p1 = catalog::builtin("P1").unwrap();
        assert!(same_presentation(&cpl, &p1, 1).is_err());

        let flipped = Matrix::new(
            "flipped",
            vec!["0".into(), "1".into()],
            vec!["0".into()],
            Signature::new([("and", 2u8)]).unwrap(),
            vec![vec!["0".into(), "0".into(), "0".into(), "1".into()]],
        )
        .unwrap();
        let and_only = inline_matrix(&[("and", 2, &["0", "0", "0", "1"])]);
        assert!(same_presentation(&and_only, &flipped, 1).is_err());
    }

    #[test]
    fn constants_populate_the_nullary_clone() {
        let with_bot = inline_matrix(&[("bot", 0, &["0"]), ("neg", 1, &["1", "0"])]);
        let nullary = clone_upto(&with_bot, 0);
        let tables: Vec<Vec<usize>> = nullary.iter().map(|tf| tf.table.clone()).collect();
        assert_eq!(tables, vec![vec![0], vec![1]]);

        let no_constants = catalog::builtin("CPLand").unwrap();
        assert!(clone_upto(&no_constants, 0).is_empty());
    }

    #[test]
    fn de_morgan_templates_preserve_term_functions() {
        let cpl = catalog::builtin("CPL").unwrap();
        let sig = cpl.signature();
        let mut templates = HashMap::new();
        templates.insert(
            "and".to_string(),
            parse_formula("neg(or(neg(p1),neg(p2)))", sig).unwrap(),
        );
        let original = parse_formula("and(p1,or(p1,p2))", sig).unwrap();
        let rewritten = translate(&original, &templates);
        assert_eq!(
            rewritten.to_string(),
            "neg(or(neg(p1),neg(or(p1,p2))))"
        );
        assert_eq!(
            term_function(&cpl, &original, 2).unwrap().table,
            term_function(&cpl, &rewritten, 2).unwrap().table
        );

        templates.clear();
        templates.insert(
            "or".to_string(),
            parse_formula("neg(and(neg(p1),neg(p2)))", sig).unwrap(),
        );
        let original = parse_formula("or(p1,p2)", sig).unwrap();
        let rewritten = translate(&original, &templates);
        assert_eq!(
            term_function(&cpl, &original, 2).unwrap().table,
            term_function(&cpl, &rewritten, 2).unwrap().table
        );
    }

    #[test]
    fn substitution_leaves_unmatched_variables_alone() {
        let sig = Signature::new([("or", 2u8)]).unwrap();
        let template = parse_formula("or(p1,p3)", &sig).unwrap();
        let out = substitute(&template, &[Formula::var("q")]);
        assert_eq!(out.to_string(), "or(q,p3)");
        // Only the exact p{i} scheme is a slot.
        let odd = substitute(&Formula::var("p01"), &[Formula::var("q")]);
        assert_eq!(odd.to_string(), "p01");
    }

    #[test]
    fn a_bridged_projection_changes_the_fibred_presentation() {
        // Two two-valued matrices that differ only in carrying an identity
        // connective, fibred with the same partner: the extra connective
        // bridges values across sides, so the fibred clone gains a genuine
        // new unary function.
        let bare = Matrix::new(
            "bare",
            vec!["0".into(), "1".into()],
            vec!["1".into()],
            Signature::new(Vec::<(&str, u8)>::new()).unwrap(),
            vec![],
        )
        .unwrap();
        let with_proj = Matrix::new(
            "withproj",
            vec!["0".into(), "1".into()],
            vec!["1".into()],
            Signature::new([("proj", 1u8)]).unwrap(),
            vec![vec!["0".into(), "1".into()]],
        )
        .unwrap();
        let partner = Matrix::new(
            "partner",
            vec!["a".into(), "b".into()],
            vec!["a".into()],
            Signature::new(Vec::<(&str, u8)>::new()).unwrap(),
            vec![],
        )
        .unwrap();
        let pair = FibringPair::from_names(
            &bare,
            &partner,
            &[("1", "a"), ("0", "b")],
            &[("a", "1"), ("b", "0")],
        )
        .unwrap();
        let plain = fibre(&bare, &partner, &pair).unwrap();
        let projected = fibre(&with_proj, &partner, &pair).unwrap();

        let report = same_presentation(plain.matrix(), projected.matrix(), 1).unwrap();
        assert!(!report.same);
        assert_eq!(report.differing_arity, Some(1));
        assert!(report.only_first.is_none());
        let (formula, outputs) = report.only_second.expect("bridged projection");
        assert_eq!(formula.to_string(), "proj@1(p1)");
        // The projection routes side-2 values through mu: a maps to the
        // designated 1 and b to 0, so it is not the identity.
        assert_eq!(outputs, ["0@1", "1@1", "1@1", "0@1"]);
    }
}
