//! Propositional signatures: connective names with fixed arities.
//!
//! A signature fixes which identifiers are connectives; every other
//! identifier in a formula is a propositional variable. Declaration order is
//! preserved because table rendering, spec export, and the deterministic
//! enumeration engines all iterate connectives in a stable order.

use std::collections::HashMap;

use crate::{Error, Result};

/// Largest supported arity. Tables are materialized as full graphs of size
/// `|carrier|^arity`, so anything beyond a handful of arguments is unusable
/// anyway; the cap turns a typo into an error instead of an allocation storm.
pub const MAX_ARITY: u8 = 4;

/// An ordered map from connective name to arity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    entries: Vec<(String, u8)>,
    index: HashMap<String, usize>,
}

impl Signature {
    /// Builds a signature from `(name, arity)` pairs, preserving order.
    ///
    /// Rejects duplicate names, empty names, and arities above [`MAX_ARITY`].
    /// Nullary connectives (arity 0) are allowed and behave like atomic
    /// formulas with a fixed value.
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u8)>,
        S: Into<String>,
    {
        let mut sig = Signature::default();
        for (name, arity) in entries {
            sig.push(name.into(), arity)?;
        }
        Ok(sig)
    }

    fn push(&mut self, name: String, arity: u8) -> Result<()> {
        if !crate::parse::is_token(&name) {
            return Err(Error::matrix(format!(
                "connective name {name:?} is not a bare token (letters, digits, _, @, ., ^)"
            )));
        }
        if arity > MAX_ARITY {
            return Err(Error::matrix(format!(
                "connective {name} has arity {arity}, above the supported maximum {MAX_ARITY}"
            )));
        }
        if self.index.contains_key(&name) {
            return Err(Error::matrix(format!(
                "connective {name} is declared twice"
            )));
        }
        self.index.insert(name.clone(), self.entries.len());
        self.entries.push((name, arity));
        Ok(())
    }

    /// Number of connectives.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when the signature declares no connectives at all. Formulas over
    /// an empty signature are exactly the propositional variables.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The arity of `name`, if `name` is a connective of this signature.
    pub fn arity(&self, name: &str) -> Option<u8> {
        self.index.get(name).map(|&i| self.entries[i].1)
    }

    /// True when `name` is a connective of this signature.
    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Position of `name` in declaration order.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Connectives in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u8)> {
        self.entries.iter().map(|(n, a)| (n.as_str(), *a))
    }

    /// The `(name, arity)` entry at `position`.
    pub fn entry(&self, position: usize) -> (&str, u8) {
        let (n, a) = &self.entries[position];
        (n.as_str(), *a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declaration_order_is_preserved() {
        let sig = Signature::new([("neg", 1), ("and", 2), ("or", 2)]).unwrap();
        let names: Vec<_> = sig.iter().map(|(n, _)| n.to_string()).collect();
        assert_eq!(names, ["neg", "and", "or"]);
        assert_eq!(sig.arity("and"), Some(2));
        assert_eq!(sig.arity("p"), None);
    }

    #[test]
    fn duplicate_connective_is_rejected() {
        let err = Signature::new([("neg", 1), ("neg", 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidMatrix(_)));
    }

    #[test]
    fn nullary_connectives_are_allowed() {
        let sig = Signature::new([("bot", 0), ("imp", 2)]).unwrap();
        assert_eq!(sig.arity("bot"), Some(0));
    }
}
