//! Propositional formulas as ordered trees.
//!
//! A formula is either a variable or a connective applied to argument
//! formulas. Which identifiers count as connectives is decided by the
//! [`Signature`](crate::Signature) a formula is parsed or evaluated against;
//! the tree itself just stores names, so the same tree can be read against
//! the combined signature of a fibred matrix.

use std::collections::BTreeSet;
use std::fmt;

/// A propositional formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// A propositional variable.
    Var(String),
    /// A connective applied to arguments. Nullary connectives carry an
    /// empty argument list and print as `name()`.
    App(String, Vec<Formula>),
}

impl Formula {
    /// Variable constructor.
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    /// Application constructor.
    pub fn app(name: impl Into<String>, args: Vec<Formula>) -> Self {
        Formula::App(name.into(), args)
    }

    /// Depth of the tree. Variables and nullary connectives have depth 0;
    /// each application with arguments adds one.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::App(_, args) => args
                .iter()
                .map(|a| 1 + a.depth())
                .max()
                .unwrap_or(0),
        }
    }

    /// Variables occurring in the formula, sorted and deduplicated.
    pub fn vars(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_vars(&mut set);
        set.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::App(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// Connective names occurring in the formula, sorted and deduplicated.
    pub fn connectives(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_connectives(&mut set);
        set.into_iter().collect()
    }

    fn collect_connectives(&self, out: &mut BTreeSet<String>) {
        if let Formula::App(name, args) = self {
            out.insert(name.clone());
            for a in args {
                a.collect_connectives(out);
            }
        }
    }

    /// Number of nodes (variables plus applications).
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::App(_, args) => 1 + args.iter().map(Formula::size).sum::<usize>(),
        }
    }

    /// Replaces every occurrence of variable `var` by `replacement`.
    pub fn substitute(&self, var: &str, replacement: &Formula) -> Formula {
        match self {
            Formula::Var(v) if v == var => replacement.clone(),
            Formula::Var(_) => self.clone(),
            Formula::App(name, args) => Formula::App(
                name.clone(),
                args.iter().map(|a| a.substitute(var, replacement)).collect(),
            ),
        }
    }

    /// Applies a simultaneous substitution given as `(variable, formula)`
    /// pairs. Later pairs do not act on the results of earlier ones.
    pub fn substitute_all(&self, subs: &[(String, Formula)]) -> Formula {
        match self {
            Formula::Var(v) => subs
                .iter()
                .find(|(name, _)| name == v)
                .map(|(_, f)| f.clone())
                .unwrap_or_else(|| self.clone()),
            Formula::App(name, args) => Formula::App(
                name.clone(),
                args.iter().map(|a| a.substitute_all(subs)).collect(),
            ),
        }
    }

    /// True when the formula is a single variable.
    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var(_))
    }
}

impl fmt::Display for Formula {
    /// Prints in the prefix syntax the parser accepts: `name(arg, ...)` for
    /// applications (including `name()` for nullary connectives) and the bare
    /// name for variables. `parse_formula(&f.to_string())` reproduces `f` for
    /// any tree whose names use the identifier charset.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => write!(f, "{v}"),
            Formula::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Formula {
        // imp(neg(p), and(p, q))
        Formula::app(
            "imp",
            vec![
                Formula::app("neg", vec![Formula::var("p")]),
                Formula::app("and", vec![Formula::var("p"), Formula::var("q")]),
            ],
        )
    }

    #[test]
    fn depth_counts_applications() {
        assert_eq!(Formula::var("p").depth(), 0);
        assert_eq!(sample().depth(), 2);
        assert_eq!(Formula::app("bot", vec![]).depth(), 0);
    }

    #[test]
    fn vars_are_sorted_and_deduplicated() {
        assert_eq!(sample().vars(), ["p", "q"]);
    }

    #[test]
    fn display_is_prefix_syntax() {
        assert_eq!(sample().to_string(), "imp(neg(p),and(p,q))");
        assert_eq!(Formula::app("bot", vec![]).to_string(), "bot()");
    }

    #[test]
    fn substitution_replaces_every_occurrence() {
        let f = sample().substitute("p", &Formula::var("r"));
        assert_eq!(f.to_string(), "imp(neg(r),and(r,q))");
    }

    #[test]
    fn simultaneous_substitution_does_not_chain() {
        // p -> q and q -> p swap cleanly only if applied simultaneously.
        let f = Formula::app("and", vec![Formula::var("p"), Formula::var("q")]);
        let swapped = f.substitute_all(&[
            ("p".into(), Formula::var("q")),
            ("q".into(), Formula::var("p")),
        ]);
        assert_eq!(swapped.to_string(), "and(q,p)");
    }
}
