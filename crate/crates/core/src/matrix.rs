//! Finite logical matrices and their consequence relation.
//!
//! A matrix pairs a finite algebra (one total truth table per connective)
//! with a designated subset of its carrier. Entailment is decided by
//! exhaustive enumeration of valuations over the variables that actually
//! occur, which is sound and complete for finite premise sets: a valuation
//! of the remaining variables never influences the evaluated formulas.

use std::collections::BTreeMap;
use std::fmt;

use crate::formula::Formula;
use crate::signature::Signature;
use crate::{Error, Result};

/// Encodes an argument tuple as a row-major table index: the first argument
/// is the most significant digit. This fixes the meaning of "row-major" for
/// table storage, rendering, and the text-format `table` keyword alike.
pub(crate) fn tuple_index(args: &[usize], carrier: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * carrier + a)
}

/// Inverse of [`tuple_index`].
pub(crate) fn index_tuple(mut index: usize, carrier: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % carrier;
        index /= carrier;
    }
    out
}

/// A finite logical matrix: carrier, designated subset, and one total truth
/// table per connective of its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    name: String,
    values: Vec<String>,
    value_index: BTreeMap<String, usize>,
    designated: Vec<bool>,
    signature: Signature,
    /// `tables[c]` is the row-major graph of connective `c` (declaration
    /// order), holding carrier indices; length is `values.len()^arity`.
    tables: Vec<Vec<usize>>,
}

impl Matrix {
    /// Builds a matrix from value names. `tables` gives each connective's
    /// outputs by value name in row-major order (first argument most
    /// significant), one table per signature entry in declaration order.
    pub fn new(
        name: impl Into<String>,
        values: Vec<String>,
        designated: Vec<String>,
        signature: Signature,
        tables: Vec<Vec<String>>,
    ) -> Result<Self> {
        let name = name.into();
        if !crate::parse::is_token(&name) {
            return Err(Error::matrix(format!(
                "matrix name {name:?} is not a bare token (letters, digits, _, @, ., ^)"
            )));
        }
        if values.is_empty() {
            return Err(Error::matrix(format!("matrix {name} has an empty carrier")));
        }
        let mut value_index = BTreeMap::new();
        for (i, v) in values.iter().enumerate() {
            if !crate::parse::is_token(v) {
                return Err(Error::matrix(format!(
                    "matrix {name} has value name {v:?}, which is not a bare token"
                )));
            }
            if value_index.insert(v.clone(), i).is_some() {
                return Err(Error::matrix(format!(
                    "matrix {name} declares value {v} twice"
                )));
            }
        }
        let mut designated_flags = vec![false; values.len()];
        for d in &designated {
            match value_index.get(d) {
                Some(&i) => {
                    if designated_flags[i] {
                        return Err(Error::matrix(format!(
                            "matrix {name} designates {d} twice"
                        )));
                    }
                    designated_flags[i] = true;
                }
                None => {
                    return Err(Error::matrix(format!(
                        "matrix {name} designates {d}, which is not a carrier value"
                    )));
                }
            }
        }
        if tables.len() != signature.len() {
            return Err(Error::matrix(format!(
                "matrix {name} has {} tables for {} connectives",
                tables.len(),
                signature.len()
            )));
        }
        let mut index_tables = Vec::with_capacity(tables.len());
        for (position, table) in tables.into_iter().enumerate() {
            let (conn, arity) = signature.entry(position);
            let expected = values.len().pow(u32::from(arity));
            if table.len() != expected {
                return Err(Error::matrix(format!(
                    "matrix {name}: table for {conn}/{arity} has {} cells, expected {expected}",
                    table.len()
                )));
            }
            let mut row = Vec::with_capacity(expected);
            for out in table {
                match value_index.get(&out) {
                    Some(&i) => row.push(i),
                    None => {
                        return Err(Error::matrix(format!(
                            "matrix {name}: table for {conn} outputs {out}, \
                             which is not a carrier value"
                        )));
                    }
                }
            }
            index_tables.push(row);
        }
        Ok(Matrix {
            name,
            values,
            value_index,
            designated: designated_flags,
            signature,
            tables: index_tables,
        })
    }

    /// Matrix name (used in rendering and the text format).
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Returns a copy under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Matrix {
        let mut m = self.clone();
        m.name = name.into();
        m
    }

    /// Carrier values in declaration order.
    pub fn values(&self) -> &[String] {
        &self.values
    }

    /// Carrier size.
    pub fn value_count(&self) -> usize {
        self.values.len()
    }

    /// Name of the value at `index`.
    pub fn value_name(&self, index: usize) -> &str {
        &self.values[index]
    }

    /// Position of `name` in the carrier.
    pub fn value_index(&self, name: &str) -> Option<usize> {
        self.value_index.get(name).copied()
    }

    /// True when the value at `index` is designated.
    pub fn is_designated_index(&self, index: usize) -> bool {
        self.designated[index]
    }

    /// True when the named value is designated.
    pub fn is_designated(&self, name: &str) -> Option<bool> {
        self.value_index(name).map(|i| self.designated[i])
    }

    /// Designated values in carrier order.
    pub fn designated_values(&self) -> Vec<&str> {
        self.values
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.designated[i])
            .map(|(_, v)| v.as_str())
            .collect()
    }

    /// Indices of designated (`true`) or undesignated (`false`) values, in
    /// carrier order.
    pub(crate) fn indices_with_designation(&self, designated: bool) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.designated[i] == designated)
            .collect()
    }

    /// The signature of the matrix.
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Applies the connective at `position` to argument indices.
    pub(crate) fn apply_index(&self, position: usize, args: &[usize]) -> usize {
        self.tables[position][tuple_index(args, self.values.len())]
    }

    /// Applies a connective by name to argument value names.
    pub fn apply(&self, conn: &str, args: &[&str]) -> Result<&str> {
        let position = self
            .signature
            .position(conn)
            .ok_or_else(|| Error::eval(format!("unknown connective {conn}")))?;
        let arity = usize::from(self.signature.entry(position).1);
        if args.len() != arity {
            return Err(Error::eval(format!(
                "connective {conn} expects {arity} arguments, got {}",
                args.len()
            )));
        }
        let mut indices = Vec::with_capacity(args.len());
        for a in args {
            indices.push(
                self.value_index(a)
                    .ok_or_else(|| Error::eval(format!("unknown value {a}")))?,
            );
        }
        Ok(&self.values[self.apply_index(position, &indices)])
    }

    /// Evaluates `f` under a lookup from variable names to carrier indices.
    pub(crate) fn evaluate_index(
        &self,
        f: &Formula,
        lookup: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<usize> {
        match f {
            Formula::Var(v) => {
                if self.signature.contains(v) {
                    return Err(Error::eval(format!(
                        "connective {v} used as a variable"
                    )));
                }
                lookup(v).ok_or_else(|| Error::eval(format!("unbound variable {v}")))
            }
            Formula::App(conn, args) => {
                let position = self.signature.position(conn).ok_or_else(|| {
                    Error::eval(format!("unknown connective {conn}"))
                })?;
                let arity = usize::from(self.signature.entry(position).1);
                if args.len() != arity {
                    return Err(Error::eval(format!(
                        "connective {conn} expects {arity} arguments, got {}",
                        args.len()
                    )));
                }
                let mut indices = Vec::with_capacity(args.len());
                for a in args {
                    indices.push(self.evaluate_index(a, lookup)?);
                }
                Ok(self.apply_index(position, &indices))
            }
        }
    }

    /// Evaluates `f` under the valuation `v`, returning the value name.
    pub fn evaluate<'a>(&'a self, f: &Formula, v: &Valuation) -> Result<&'a str> {
        let lookup = |var: &str| -> Option<usize> {
            v.get(var).and_then(|name| self.value_index(name))
        };
        // Check for assigned-but-unknown values up front so the error blames
        // the valuation rather than reporting an unbound variable.
        for (var, value) in v.iter() {
            if self.value_index(value).is_none() {
                return Err(Error::eval(format!(
                    "valuation assigns {var}={value}, but {value} is not a \
                     carrier value of {}",
                    self.name
                )));
            }
        }
        let index = self.evaluate_index(f, &lookup)?;
        Ok(&self.values[index])
    }

    /// Decides `premises ⊨ conclusion` by enumerating every valuation of the
    /// occurring variables. Valuations are visited in lexicographic carrier
    /// order with the alphabetically first variable as the most significant
    /// digit, so a reported counterexample is the first one in that order.
    pub fn entails(&self, premises: &[Formula], conclusion: &Formula) -> Result<Entailment> {
        let mut vars = std::collections::BTreeSet::new();
        for p in premises {
            vars.extend(p.vars());
        }
        vars.extend(conclusion.vars());
        let vars: Vec<String> = vars.into_iter().collect();
        for var in &vars {
            if self.signature.contains(var) {
                return Err(Error::eval(format!("connective {var} used as a variable")));
            }
        }

        let n = self.values.len();
        let mut assignment = vec![0usize; vars.len()];
        loop {
            let lookup = |name: &str| -> Option<usize> {
                vars.iter().position(|v| v == name).map(|i| assignment[i])
            };
            let mut premises_hold = true;
            for p in premises {
                if !self.designated[self.evaluate_index(p, &lookup)?] {
                    premises_hold = false;
                    break;
                }
            }
            if premises_hold && !self.designated[self.evaluate_index(conclusion, &lookup)?] {
                let mut witness = Valuation::new();
                for (i, var) in vars.iter().enumerate() {
                    witness.set(var, &self.values[assignment[i]]);
                }
                return Ok(Entailment::Refuted(witness));
            }
            // Advance the odometer; the last variable cycles fastest.
            let mut pos = vars.len();
            loop {
                if pos == 0 {
                    return Ok(Entailment::Holds);
                }
                pos -= 1;
                assignment[pos] += 1;
                if assignment[pos] < n {
                    break;
                }
                assignment[pos] = 0;
            }
        }
    }

    /// True when `f` is designated under every valuation.
    pub fn is_tautology(&self, f: &Formula) -> Result<bool> {
        Ok(self.entails(&[], f)?.holds())
    }

    /// True when the consequence relation is trivial, i.e. one variable
    /// entails a different one. This covers both degenerate designations:
    /// with everything designated the conclusion always holds, and with
    /// nothing designated the premise never does.
    pub fn is_trivial(&self) -> Result<bool> {
        let p = self.fresh_variable("p");
        let mut q = self.fresh_variable("q");
        if q == p {
            q = self.fresh_variable("q0");
        }
        Ok(self
            .entails(&[Formula::var(p)], &Formula::var(q))?
            .holds())
    }

    /// A variable name based on `stem` that does not collide with any
    /// connective of the signature.
    fn fresh_variable(&self, stem: &str) -> String {
        if !self.signature.contains(stem) {
            return stem.to_string();
        }
        let mut i = 0usize;
        loop {
            let candidate = format!("{stem}{i}");
            if !self.signature.contains(&candidate) {
                return candidate;
            }
            i += 1;
        }
    }
}

/// Verdict of an entailment check, carrying the first counter-valuation in
/// enumeration order when the entailment fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entailment {
    /// Every valuation designating the premises designates the conclusion.
    Holds,
    /// The contained valuation designates all premises but not the conclusion.
    Refuted(Valuation),
}

impl Entailment {
    /// True when the entailment holds.
    pub fn holds(&self) -> bool {
        matches!(self, Entailment::Holds)
    }

    /// The refuting valuation, if any.
    pub fn counterexample(&self) -> Option<&Valuation> {
        match self {
            Entailment::Holds => None,
            Entailment::Refuted(v) => Some(v),
        }
    }
}

/// A finite assignment of carrier value names to variable names.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Valuation {
    assignment: BTreeMap<String, String>,
}

impl Valuation {
    /// The empty valuation.
    pub fn new() -> Self {
        Valuation::default()
    }

    /// Builder-style assignment.
    pub fn with(mut self, var: impl Into<String>, value: impl Into<String>) -> Self {
        self.set(var, value);
        self
    }

    /// Assigns `value` to `var`, replacing any previous assignment.
    pub fn set(&mut self, var: impl Into<String>, value: impl Into<String>) {
        self.assignment.insert(var.into(), value.into());
    }

    /// The value assigned to `var`, if any.
    pub fn get(&self, var: &str) -> Option<&str> {
        self.assignment.get(var).map(String::as_str)
    }

    /// Assignments in alphabetical variable order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.assignment.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Number of assigned variables.
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    /// True when no variable is assigned.
    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (var, value)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{var}={value}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::parse::parse_formula;

    fn cpl() -> Matrix {
        catalog::builtin("CPL").expect("CPL is built in")
    }

    fn p1() -> Matrix {
        catalog::builtin("P1").expect("P1 is built in")
    }

    #[test]
    fn classical_conjunction_evaluates() {
        let m = cpl();
        let f = parse_formula("and(p,q)", m.signature()).unwrap();
        let v = Valuation::new().with("p", "1").with("q", "0");
        assert_eq!(m.evaluate(&f, &v).unwrap(), "0");
    }

    #[test]
    fn p1_negation_of_t1_is_t() {
        let m = p1();
        let f = parse_formula("negP1(p)", m.signature()).unwrap();
        let v = Valuation::new().with("p", "T1");
        assert_eq!(m.evaluate(&f, &v).unwrap(), "T");
    }

    #[test]
    fn p1_implication_from_designated_false_row() {
        // `F` is not declared in the signature, so it parses as a variable;
        // assigning it the carrier value F exercises the all-T table row.
        let m = p1();
        let f = parse_formula("impP1(F,p)", m.signature()).unwrap();
        for value in ["T", "T1", "F"] {
            let v = Valuation::new().with("F", "F").with("p", value);
            assert_eq!(m.evaluate(&f, &v).unwrap(), "T", "v(p)={value}");
        }
    }

    #[test]
    fn classical_disjunction_entailment_holds() {
        let m = cpl();
        let premise = parse_formula("p", m.signature()).unwrap();
        let conclusion = parse_formula("or(p,q)", m.signature()).unwrap();
        assert!(m.entails(&[premise], &conclusion).unwrap().holds());
    }

    #[test]
    fn p1_self_implication_is_tautology() {
        let m = p1();
        let f = parse_formula("impP1(p,p)", m.signature()).unwrap();
        assert!(m.is_tautology(&f).unwrap());
    }

    #[test]
    fn p1_tolerates_contradictory_premises() {
        // A designated value with designated negation (T1) keeps the premises
        // satisfiable while the conclusion variable varies freely.
        let m = p1();
        let negated = parse_formula("negP1(p)", m.signature()).unwrap();
        let p = Formula::var("p");
        let q = Formula::var("q");
        let verdict = m.entails(&[negated, p], &q).unwrap();
        let witness = verdict.counterexample().expect("entailment must fail");
        assert_eq!(witness.get("p"), Some("T1"));
        assert_eq!(witness.get("q"), Some("F"));
    }

    #[test]
    fn lem_is_tautology_classically() {
        let m = cpl();
        let f = parse_formula("or(p,neg(p))", m.signature()).unwrap();
        assert!(m.is_tautology(&f).unwrap());
    }

    #[test]
    fn variables_are_never_tautologies_in_cpl() {
        let m = cpl();
        assert!(!m.is_tautology(&Formula::var("p")).unwrap());
    }

    #[test]
    fn triviality_detects_degenerate_designations() {
        let m = cpl();
        assert!(!m.is_trivial().unwrap());

        let sig = Signature::new([("neg", 1)]).unwrap();
        let all = Matrix::new(
            "all",
            vec!["0".into(), "1".into()],
            vec!["0".into(), "1".into()],
            sig.clone(),
            vec![vec!["1".into(), "0".into()]],
        )
        .unwrap();
        assert!(all.is_trivial().unwrap());

        let none = Matrix::new(
            "none",
            vec!["0".into(), "1".into()],
            vec![],
            sig,
            vec![vec!["1".into(), "0".into()]],
        )
        .unwrap();
        assert!(none.is_trivial().unwrap());
    }

    #[test]
    fn counterexample_is_first_in_enumeration_order() {
        // p ⊨ q over CPL: the search should stop at p=1, q=0, the first
        // assignment (alphabetical vars, first variable most significant)
        // whose premise is designated and conclusion is not.
        let m = cpl();
        let verdict = m.entails(&[Formula::var("p")], &Formula::var("q")).unwrap();
        let witness = verdict.counterexample().unwrap();
        assert_eq!(witness.to_string(), "p=1, q=0");
    }

    #[test]
    fn tables_must_be_total() {
        let sig = Signature::new([("and", 2)]).unwrap();
        let err = Matrix::new(
            "partial",
            vec!["0".into(), "1".into()],
            vec!["1".into()],
            sig,
            vec![vec!["0".into(), "0".into(), "0".into()]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidMatrix(_)));
    }

    #[test]
    fn evaluate_rejects_foreign_values_in_valuations() {
        let m = cpl();
        let f = parse_formula("p", m.signature()).unwrap();
        let v = Valuation::new().with("p", "T");
        assert!(matches!(m.evaluate(&f, &v), Err(Error::Eval(_))));
    }
}
