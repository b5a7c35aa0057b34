//! Fibring two matrices by a pair of translation functions.
//!
//! Given matrices M₁ and M₂ and a fibring pair (λ: A₁→A₂, μ: A₂→A₁), the
//! fibred matrix lives on the disjoint union of the carriers (values and
//! connectives are tagged `name@1` / `name@2` by origin), designates the
//! union of the designated sets, and interprets a first-component
//! connective by translating every argument into A₁ with ∗μ before applying
//! the original table (second-component connectives dually use ∗λ). The
//! bridge maps act as the identity on their home carrier:
//! ∗μ(x) = x for x ∈ A₁ and μ(x) otherwise; ∗λ(x) = λ(x) for x ∈ A₁ and x
//! otherwise.
//!
//! [`sfv_evaluate`] implements the same semantics directly on formulas —
//! each application translates only the foreign argument values — without
//! ever constructing the fibred tables, so the two evaluation routes check
//! one another.

use std::fmt;

use crate::formula::Formula;
use crate::matrix::{index_tuple, Matrix, Valuation};
use crate::signature::Signature;
use crate::{Error, Result};

/// Origin of a value or connective in a fibred matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// The first component.
    One,
    /// The second component.
    Two,
}

impl Side {
    /// The opposite side.
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::One => write!(f, "1"),
            Side::Two => write!(f, "2"),
        }
    }
}

/// A value of a fibred carrier: a component value name plus its origin.
/// Renders as `name@1` or `name@2`, which is also the literal value name
/// used by the fibred [`Matrix`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedValue {
    /// Component of origin.
    pub side: Side,
    /// Value name within that component.
    pub name: String,
}

impl TaggedValue {
    /// Constructor.
    pub fn new(side: Side, name: impl Into<String>) -> Self {
        TaggedValue { side, name: name.into() }
    }

    /// Parses a tagged name such as `T@1`. The tag is the suffix after the
    /// last `@`, so component value names may themselves contain `@`.
    pub fn parse(tagged: &str) -> Option<TaggedValue> {
        let (base, side) = split_tag(tagged)?;
        Some(TaggedValue::new(side, base))
    }
}

impl fmt::Display for TaggedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.name, self.side)
    }
}

/// Tags a component name with its side: `neg` on side 2 becomes `neg@2`.
pub fn tag_name(name: &str, side: Side) -> String {
    format!("{name}@{side}")
}

/// Splits a tagged name at its final `@`.
pub fn split_tag(name: &str) -> Option<(&str, Side)> {
    let (base, tag) = name.rsplit_once('@')?;
    if base.is_empty() {
        return None;
    }
    match tag {
        "1" => Some((base, Side::One)),
        "2" => Some((base, Side::Two)),
        _ => None,
    }
}

/// Rewrites a formula over one component's signature into the fibred
/// signature by tagging every connective with `side`. Variables are left
/// untouched.
pub fn tag_formula(f: &Formula, side: Side) -> Formula {
    match f {
        Formula::Var(v) => Formula::var(v.clone()),
        Formula::App(name, args) => Formula::app(
            tag_name(name, side),
            args.iter().map(|a| tag_formula(a, side)).collect(),
        ),
    }
}

/// A fibring pair (λ, μ): total translation maps between the two carriers,
/// stored as carrier indices relative to the matrices they were built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibringPair {
    /// `lambda[i]` is the A₂ index that the i-th A₁ value maps to.
    lambda: Vec<usize>,
    /// `mu[j]` is the A₁ index that the j-th A₂ value maps to.
    mu: Vec<usize>,
}

impl FibringPair {
    /// Builds a pair from index maps, validating lengths and ranges.
    pub fn from_indices(
        m1: &Matrix,
        m2: &Matrix,
        lambda: Vec<usize>,
        mu: Vec<usize>,
    ) -> Result<Self> {
        if lambda.len() != m1.value_count() {
            return Err(Error::pair(format!(
                "lambda maps {} values, but {} has {}",
                lambda.len(),
                m1.name(),
                m1.value_count()
            )));
        }
        if mu.len() != m2.value_count() {
            return Err(Error::pair(format!(
                "mu maps {} values, but {} has {}",
                mu.len(),
                m2.name(),
                m2.value_count()
            )));
        }
        if let Some(&bad) = lambda.iter().find(|&&o| o >= m2.value_count()) {
            return Err(Error::pair(format!(
                "lambda output index {bad} is out of range for {}",
                m2.name()
            )));
        }
        if let Some(&bad) = mu.iter().find(|&&o| o >= m1.value_count()) {
            return Err(Error::pair(format!(
                "mu output index {bad} is out of range for {}",
                m1.name()
            )));
        }
        Ok(FibringPair { lambda, mu })
    }

    /// Builds a pair from value-name rows; every value of each carrier must
    /// be mapped exactly once.
    pub fn from_names(
        m1: &Matrix,
        m2: &Matrix,
        lambda: &[(&str, &str)],
        mu: &[(&str, &str)],
    ) -> Result<Self> {
        let resolve = |rows: &[(&str, &str)],
                       from: &Matrix,
                       to: &Matrix,
                       which: &str|
         -> Result<Vec<usize>> {
            let mut out: Vec<Option<usize>> = vec![None; from.value_count()];
            for &(input, output) in rows {
                let i = from.value_index(input).ok_or_else(|| {
                    Error::pair(format!(
                        "{which} maps {input}, which is not a value of {}",
                        from.name()
                    ))
                })?;
                let o = to.value_index(output).ok_or_else(|| {
                    Error::pair(format!(
                        "{which} maps {input} to {output}, which is not a value of {}",
                        to.name()
                    ))
                })?;
                if out[i].replace(o).is_some() {
                    return Err(Error::pair(format!("{which} maps {input} twice")));
                }
            }
            out.into_iter()
                .enumerate()
                .map(|(i, o)| {
                    o.ok_or_else(|| {
                        Error::pair(format!(
                            "{which} does not map {}",
                            from.value_name(i)
                        ))
                    })
                })
                .collect()
        };
        let lambda = resolve(lambda, m1, m2, "lambda")?;
        let mu = resolve(mu, m2, m1, "mu")?;
        FibringPair::from_indices(m1, m2, lambda, mu)
    }

    /// The identity pair for fibring a matrix with itself.
    pub fn identity(m: &Matrix) -> Self {
        let id: Vec<usize> = (0..m.value_count()).collect();
        FibringPair { lambda: id.clone(), mu: id }
    }

    /// λ as an index map.
    pub fn lambda_index(&self, i: usize) -> usize {
        self.lambda[i]
    }

    /// μ as an index map.
    pub fn mu_index(&self, j: usize) -> usize {
        self.mu[j]
    }

    /// λ by value name.
    pub fn lambda_name<'a>(&self, m1: &Matrix, m2: &'a Matrix, value: &str) -> Result<&'a str> {
        let i = m1
            .value_index(value)
            .ok_or_else(|| Error::pair(format!("{value} is not a value of {}", m1.name())))?;
        Ok(m2.value_name(self.lambda[i]))
    }

    /// μ by value name.
    pub fn mu_name<'a>(&self, m1: &'a Matrix, m2: &Matrix, value: &str) -> Result<&'a str> {
        let j = m2
            .value_index(value)
            .ok_or_else(|| Error::pair(format!("{value} is not a value of {}", m2.name())))?;
        Ok(m1.value_name(self.mu[j]))
    }

    /// ∗μ on fibred carrier indices (side-1 values first): the identity on
    /// A₁ and μ on A₂. Returns an A₁ index.
    pub(crate) fn star_mu_fibred(&self, x: usize, n1: usize) -> usize {
        if x < n1 {
            x
        } else {
            self.mu[x - n1]
        }
    }

    /// ∗λ on fibred carrier indices: λ on A₁ and the identity on A₂.
    /// Returns an A₂ index.
    pub(crate) fn star_lambda_fibred(&self, x: usize, n1: usize) -> usize {
        if x < n1 {
            self.lambda[x]
        } else {
            x - n1
        }
    }
}

/// ∗λ: the identity-extended λ on the joint carrier. Maps a side-1 value
/// through λ and returns a side-2 value unchanged.
pub fn star_lambda(
    m1: &Matrix,
    m2: &Matrix,
    pair: &FibringPair,
    x: &TaggedValue,
) -> Result<TaggedValue> {
    match x.side {
        Side::One => Ok(TaggedValue::new(
            Side::Two,
            pair.lambda_name(m1, m2, &x.name)?,
        )),
        Side::Two => {
            if m2.value_index(&x.name).is_none() {
                return Err(Error::pair(format!(
                    "{} is not a value of {}",
                    x.name,
                    m2.name()
                )));
            }
            Ok(x.clone())
        }
    }
}

/// ∗μ: the identity-extended μ on the joint carrier. Maps a side-2 value
/// through μ and returns a side-1 value unchanged.
pub fn star_mu(
    m1: &Matrix,
    m2: &Matrix,
    pair: &FibringPair,
    x: &TaggedValue,
) -> Result<TaggedValue> {
    match x.side {
        Side::Two => Ok(TaggedValue::new(
            Side::One,
            pair.mu_name(m1, m2, &x.name)?,
        )),
        Side::One => {
            if m1.value_index(&x.name).is_none() {
                return Err(Error::pair(format!(
                    "{} is not a value of {}",
                    x.name,
                    m1.name()
                )));
            }
            Ok(x.clone())
        }
    }
}

/// A fibred matrix together with the components and pair it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibredMatrix {
    matrix: Matrix,
    m1: Matrix,
    m2: Matrix,
    pair: FibringPair,
}

impl FibredMatrix {
    /// The fibred matrix itself: tagged values, union designation, and one
    /// table per tagged connective.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// A component matrix.
    pub fn component(&self, side: Side) -> &Matrix {
        match side {
            Side::One => &self.m1,
            Side::Two => &self.m2,
        }
    }

    /// The fibring pair.
    pub fn pair(&self) -> &FibringPair {
        &self.pair
    }

    /// Fibred carrier index of a component value.
    pub(crate) fn fibred_index(&self, side: Side, component_index: usize) -> usize {
        match side {
            Side::One => component_index,
            Side::Two => self.m1.value_count() + component_index,
        }
    }

    /// Component decomposition of a fibred carrier index.
    pub(crate) fn split_index(&self, index: usize) -> (Side, usize) {
        let n1 = self.m1.value_count();
        if index < n1 {
            (Side::One, index)
        } else {
            (Side::Two, index - n1)
        }
    }

    /// The tagged value at a fibred carrier index.
    pub fn tagged_value(&self, index: usize) -> TaggedValue {
        let (side, i) = self.split_index(index);
        TaggedValue::new(side, self.component(side).value_name(i))
    }

    /// Fibred carrier index of a tagged value.
    pub fn index_of(&self, value: &TaggedValue) -> Option<usize> {
        let i = self.component(value.side).value_index(&value.name)?;
        Some(self.fibred_index(value.side, i))
    }
}

/// Builds the fibred matrix of `m1` and `m2` along `pair`.
///
/// The carrier lists all side-1 values, then all side-2 values; the
/// signature lists all side-1 connectives, then all side-2 connectives.
/// A side-1 connective applied to a joint tuple first sends every argument
/// through ∗μ, so its outputs always originate in A₁ (side-2 connectives
/// dually go through ∗λ and output into A₂).
pub fn fibre(m1: &Matrix, m2: &Matrix, pair: &FibringPair) -> Result<FibredMatrix> {
    // Range checks: the pair must fit these carriers.
    FibringPair::from_indices(m1, m2, pair.lambda.clone(), pair.mu.clone())?;

    let n1 = m1.value_count();
    let n2 = m2.value_count();
    let mut values = Vec::with_capacity(n1 + n2);
    let mut designated = Vec::new();
    for (side, m) in [(Side::One, m1), (Side::Two, m2)] {
        for (i, v) in m.values().iter().enumerate() {
            let tagged = tag_name(v, side);
            if m.is_designated_index(i) {
                designated.push(tagged.clone());
            }
            values.push(tagged);
        }
    }

    let mut entries = Vec::new();
    let mut tables = Vec::new();
    for (side, m) in [(Side::One, m1), (Side::Two, m2)] {
        for (position, (conn, arity)) in m.signature().iter().enumerate() {
            entries.push((tag_name(conn, side), arity));
            let cells = (n1 + n2).pow(u32::from(arity));
            let mut table = Vec::with_capacity(cells);
            for cell in 0..cells {
                let args = index_tuple(cell, n1 + n2, usize::from(arity));
                let out = match side {
                    Side::One => {
                        let translated: Vec<usize> = args
                            .iter()
                            .map(|&a| pair.star_mu_fibred(a, n1))
                            .collect();
                        m1.apply_index(position, &translated)
                    }
                    Side::Two => {
                        let translated: Vec<usize> = args
                            .iter()
                            .map(|&a| pair.star_lambda_fibred(a, n1))
                            .collect();
                        n1 + m2.apply_index(position, &translated)
                    }
                };
                table.push(values[out].clone());
            }
            tables.push(table);
        }
    }

    let name = format!("{}.{}", m1.name(), m2.name());
    let signature = Signature::new(entries)?;
    let matrix = Matrix::new(name, values, designated, signature, tables)?;
    Ok(FibredMatrix {
        matrix,
        m1: m1.clone(),
        m2: m2.clone(),
        pair: pair.clone(),
    })
}

/// Evaluates a formula over the joint signature by structural recursion,
/// without consulting fibred tables: a connective tagged `@i` looks up its
/// component's table after translating only the argument values that
/// originate on the other side (μ for side 1, λ for side 2).
///
/// The valuation assigns tagged value names (`T@1`, `0@2`) to variables.
pub fn sfv_evaluate(
    m1: &Matrix,
    m2: &Matrix,
    pair: &FibringPair,
    f: &Formula,
    v: &Valuation,
) -> Result<TaggedValue> {
    let (side, index) = sfv_index(m1, m2, pair, f, v)?;
    let name = match side {
        Side::One => m1.value_name(index),
        Side::Two => m2.value_name(index),
    };
    Ok(TaggedValue::new(side, name))
}

fn sfv_index(
    m1: &Matrix,
    m2: &Matrix,
    pair: &FibringPair,
    f: &Formula,
    v: &Valuation,
) -> Result<(Side, usize)> {
    match f {
        Formula::Var(var) => {
            let raw = v
                .get(var)
                .ok_or_else(|| Error::eval(format!("unbound variable {var}")))?;
            let tagged = TaggedValue::parse(raw).ok_or_else(|| {
                Error::eval(format!(
                    "variable {var} is assigned {raw}; joint values are written name@1 or name@2"
                ))
            })?;
            let m = match tagged.side {
                Side::One => m1,
                Side::Two => m2,
            };
            let index = m.value_index(&tagged.name).ok_or_else(|| {
                Error::eval(format!(
                    "variable {var} is assigned {raw}, but {} is not a value of {}",
                    tagged.name,
                    m.name()
                ))
            })?;
            Ok((tagged.side, index))
        }
        Formula::App(conn, args) => {
            let (base, side) = split_tag(conn).ok_or_else(|| {
                Error::eval(format!(
                    "joint connectives are written name@1 or name@2, found {conn}"
                ))
            })?;
            let m = match side {
                Side::One => m1,
                Side::Two => m2,
            };
            let position = m.signature().position(base).ok_or_else(|| {
                Error::eval(format!(
                    "{base} is not a connective of component {side} ({})",
                    m.name()
                ))
            })?;
            let arity = usize::from(m.signature().entry(position).1);
            if args.len() != arity {
                return Err(Error::eval(format!(
                    "connective {conn} expects {arity} arguments, got {}",
                    args.len()
                )));
            }
            let mut indices = Vec::with_capacity(args.len());
            for arg in args {
                let (arg_side, arg_index) = sfv_index(m1, m2, pair, arg, v)?;
                indices.push(match (side, arg_side) {
                    (Side::One, Side::One) | (Side::Two, Side::Two) => arg_index,
                    (Side::One, Side::Two) => pair.mu_index(arg_index),
                    (Side::Two, Side::One) => pair.lambda_index(arg_index),
                });
            }
            Ok((side, m.apply_index(position, &indices)))
        }
    }
}

/// True when the pair preserves and reflects designation in both directions:
/// λ(x) is designated exactly for designated x, and likewise μ.
pub fn is_admissible(m1: &Matrix, m2: &Matrix, pair: &FibringPair) -> bool {
    let lambda_ok = (0..m1.value_count()).all(|i| {
        m2.is_designated_index(pair.lambda_index(i)) == m1.is_designated_index(i)
    });
    let mu_ok = (0..m2.value_count()).all(|j| {
        m1.is_designated_index(pair.mu_index(j)) == m2.is_designated_index(j)
    });
    lambda_ok && mu_ok
}

/// True when admissible pairs can exist at all: each matrix has designated
/// values exactly when the other does, and likewise undesignated values.
pub fn is_compatible(m1: &Matrix, m2: &Matrix) -> bool {
    let d1 = !m1.indices_with_designation(true).is_empty();
    let d2 = !m2.indices_with_designation(true).is_empty();
    let u1 = !m1.indices_with_designation(false).is_empty();
    let u2 = !m2.indices_with_designation(false).is_empty();
    d1 == d2 && u1 == u2
}

/// Every total function `positions[i] → allowed[i]`, in lexicographic order
/// of the function graph (position 0 most significant).
fn all_choice_functions(allowed: &[&[usize]]) -> Vec<Vec<usize>> {
    if allowed.iter().any(|a| a.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; allowed.len()];
    loop {
        out.push(
            choice
                .iter()
                .enumerate()
                .map(|(i, &c)| allowed[i][c])
                .collect(),
        );
        let mut pos = allowed.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < allowed[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Enumerates every admissible pair in lexicographic order of the two
/// function graphs, λ varying slowest.
pub fn enumerate_admissible_pairs(m1: &Matrix, m2: &Matrix) -> Vec<FibringPair> {
    let d1 = m1.indices_with_designation(true);
    let u1 = m1.indices_with_designation(false);
    let d2 = m2.indices_with_designation(true);
    let u2 = m2.indices_with_designation(false);

    let lambda_allowed: Vec<&[usize]> = (0..m1.value_count())
        .map(|i| {
            if m1.is_designated_index(i) {
                d2.as_slice()
            } else {
                u2.as_slice()
            }
        })
        .collect();
    let mu_allowed: Vec<&[usize]> = (0..m2.value_count())
        .map(|j| {
            if m2.is_designated_index(j) {
                d1.as_slice()
            } else {
                u1.as_slice()
            }
        })
        .collect();

    let lambdas = all_choice_functions(&lambda_allowed);
    let mus = all_choice_functions(&mu_allowed);
    let mut out = Vec::with_capacity(lambdas.len() * mus.len());
    for lambda in &lambdas {
        for mu in &mus {
            out.push(FibringPair {
                lambda: lambda.clone(),
                mu: mu.clone(),
            });
        }
    }
    out
}

/// Number of admissible pairs in closed form:
/// |D₂|^|D₁| · |D₁|^|D₂| · |A₂∖D₂|^|A₁∖D₁| · |A₁∖D₁|^|A₂∖D₂|.
pub fn count_admissible_pairs(m1: &Matrix, m2: &Matrix) -> u128 {
    let d1 = m1.indices_with_designation(true).len() as u128;
    let u1 = m1.indices_with_designation(false).len() as u128;
    let d2 = m2.indices_with_designation(true).len() as u128;
    let u2 = m2.indices_with_designation(false).len() as u128;
    let pow = |base: u128, exp: u128| base.pow(exp as u32);
    pow(d2, d1) * pow(d1, d2) * pow(u2, u1) * pow(u1, u2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::parse::parse_formula;

    fn p1_cpl() -> (Matrix, Matrix, FibringPair) {
        let m1 = catalog::builtin("P1").unwrap();
        let m2 = catalog::builtin("CPLand").unwrap();
        let pair = catalog::pairs::p1_cpl();
        (m1, m2, pair)
    }

    #[test]
    fn star_maps_extend_the_pair_by_identity() {
        let (m1, m2, pair) = p1_cpl();
        let cases_mu = [("T", Side::One, "T"), ("1", Side::Two, "T"), ("0", Side::Two, "F")];
        for (name, side, expect) in cases_mu {
            let x = TaggedValue::new(side, name);
            let out = star_mu(&m1, &m2, &pair, &x).unwrap();
            assert_eq!(out, TaggedValue::new(Side::One, expect), "∗μ({x})");
        }
        let cases_lambda =
            [("T", Side::One, "1"), ("T1", Side::One, "1"), ("F", Side::One, "0"), ("0", Side::Two, "0")];
        for (name, side, expect) in cases_lambda {
            let x = TaggedValue::new(side, name);
            let out = star_lambda(&m1, &m2, &pair, &x).unwrap();
            assert_eq!(out, TaggedValue::new(Side::Two, expect), "∗λ({x})");
        }
    }

    #[test]
    fn fibred_tables_translate_foreign_arguments() {
        let (m1, m2, pair) = p1_cpl();
        let fibred = fibre(&m1, &m2, &pair).unwrap();
        let m = fibred.matrix();
        // A second-component argument to the first-component implication
        // goes through μ: (1@2, 0@2) evaluates as T impP1 F.
        assert_eq!(m.apply("impP1@1", &["1@2", "0@2"]).unwrap(), "F@1");
        // A first-component argument to the second-component conjunction
        // goes through λ: (T@1, T1@1) evaluates as 1 and 1.
        assert_eq!(m.apply("and@2", &["T@1", "T1@1"]).unwrap(), "1@2");
    }

    #[test]
    fn rows_with_equal_translations_coincide() {
        // ∗μ(0@2) = F, so the implication rows for 0@2 and F@1 must be
        // identical cell by cell.
        let (m1, m2, pair) = p1_cpl();
        let fibred = fibre(&m1, &m2, &pair).unwrap();
        let m = fibred.matrix();
        for y in m.values() {
            assert_eq!(
                m.apply("impP1@1", &["0@2", y]).unwrap(),
                m.apply("impP1@1", &["F@1", y]).unwrap(),
                "column {y}"
            );
        }
    }

    #[test]
    fn first_component_outputs_stay_on_side_one() {
        let (m1, m2, pair) = p1_cpl();
        let fibred = fibre(&m1, &m2, &pair).unwrap();
        let m = fibred.matrix();
        for x in m.values() {
            for y in m.values() {
                let out = m.apply("impP1@1", &[x, y]).unwrap();
                assert!(out.ends_with("@1"), "impP1@1({x},{y}) = {out}");
                let out = m.apply("and@2", &[x, y]).unwrap();
                assert!(out.ends_with("@2"), "and@2({x},{y}) = {out}");
            }
        }
    }

    #[test]
    fn sfv_agrees_with_the_worked_implication_chain() {
        let (m1, m2, pair) = p1_cpl();
        let fibred = fibre(&m1, &m2, &pair).unwrap();
        let f = parse_formula(
            "impP1@1(p, and@2(negP1@1(r), and@2(q, neg@2(r))))",
            fibred.matrix().signature(),
        )
        .unwrap();
        let v = Valuation::new()
            .with("p", "T@1")
            .with("q", "F@1")
            .with("r", "0@2");
        let out = sfv_evaluate(&m1, &m2, &pair, &f, &v).unwrap();
        assert_eq!(out, TaggedValue::new(Side::One, "F"));
        assert_eq!(fibred.matrix().evaluate(&f, &v).unwrap(), "F@1");
    }

    #[test]
    fn sfv_translates_only_foreign_arguments() {
        let (m1, m2, pair) = p1_cpl();
        let f = parse_formula(
            "impP1@1(p,q)",
            fibre(&m1, &m2, &pair).unwrap().matrix().signature(),
        )
        .unwrap();
        let v = Valuation::new().with("p", "1@2").with("q", "F@1");
        let out = sfv_evaluate(&m1, &m2, &pair, &f, &v).unwrap();
        assert_eq!(out, TaggedValue::new(Side::One, "F"));
    }

    #[test]
    fn example_pair_is_admissible() {
        let (m1, m2, pair) = p1_cpl();
        assert!(is_admissible(&m1, &m2, &pair));
        // Redirecting μ(0) to a designated value breaks admissibility.
        let broken =
            FibringPair::from_names(&m1, &m2, &[("T", "1"), ("T1", "1"), ("F", "0")], &[("1", "T"), ("0", "T")])
                .unwrap();
        assert!(!is_admissible(&m1, &m2, &broken));
    }

    #[test]
    fn compatibility_needs_matching_degeneracies() {
        let m1 = catalog::builtin("FDE").unwrap();
        let m2 = catalog::builtin("J3").unwrap();
        assert!(is_compatible(&m1, &m2));

        let all = crate::matrix::Matrix::new(
            "all",
            vec!["0".into(), "1".into()],
            vec!["0".into(), "1".into()],
            Signature::default(),
            vec![],
        )
        .unwrap();
        assert!(!is_compatible(&m1, &all));
        assert!(enumerate_admissible_pairs(&m1, &all).is_empty());
        assert_eq!(count_admissible_pairs(&m1, &all), 0);
    }

    #[test]
    fn enumeration_matches_the_closed_form_for_small_families() {
        let i1 = catalog::builtin("I^1").unwrap();
        let p1 = catalog::builtin("P^1").unwrap();
        let pairs = enumerate_admissible_pairs(&i1, &p1);
        assert_eq!(pairs.len(), 4);
        assert_eq!(count_admissible_pairs(&i1, &p1), 4);
        for pair in &pairs {
            assert!(is_admissible(&i1, &p1, pair));
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_duplicate_free() {
        let m1 = catalog::builtin("FDE").unwrap();
        let m2 = catalog::builtin("J3").unwrap();
        let pairs = enumerate_admissible_pairs(&m1, &m2);
        assert_eq!(pairs.len() as u128, count_admissible_pairs(&m1, &m2));
        let graphs: Vec<(Vec<usize>, Vec<usize>)> = pairs
            .iter()
            .map(|p| {
                (
                    (0..m1.value_count()).map(|i| p.lambda_index(i)).collect(),
                    (0..m2.value_count()).map(|j| p.mu_index(j)).collect(),
                )
            })
            .collect();
        let mut sorted = graphs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(graphs, sorted);
    }

    #[test]
    fn self_fibring_with_identity_duplicates_tables() {
        let m = catalog::builtin("P1").unwrap();
        let pair = FibringPair::identity(&m);
        let fibred = fibre(&m, &m, &pair).unwrap();
        let fm = fibred.matrix();
        for x in ["T@1", "T1@2", "F@1"] {
            for y in ["T@2", "F@2", "T1@1"] {
                let one = fm.apply("impP1@1", &[x, y]).unwrap();
                let two = fm.apply("impP1@2", &[x, y]).unwrap();
                assert_eq!(
                    split_tag(one).unwrap().0,
                    split_tag(two).unwrap().0,
                    "impP1 at ({x},{y})"
                );
            }
        }
    }

    #[test]
    fn tagging_rewrites_connectives_but_not_variables() {
        let m = catalog::builtin("CPLand").unwrap();
        let f = parse_formula("and(p, neg(q))", m.signature()).unwrap();
        let tagged = tag_formula(&f, Side::Two);
        assert_eq!(tagged.to_string(), "and@2(p,neg@2(q))");
    }

    #[test]
    fn tagged_names_round_trip() {
        assert_eq!(split_tag("neg@2"), Some(("neg", Side::Two)));
        assert_eq!(split_tag("a@b@1"), Some(("a@b", Side::One)));
        assert_eq!(split_tag("neg@3"), None);
        assert_eq!(split_tag("@1"), None);
        let tv = TaggedValue::parse("T1@1").unwrap();
        assert_eq!(tv.to_string(), "T1@1");
    }
}
