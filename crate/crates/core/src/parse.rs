//! Text formats: formulas, matrix specs, and fibring-pair specs.
//!
//! Identifiers (value names, connective names, variable names, block names)
//! are drawn from the charset `[A-Za-z0-9_@.^]+`; `#` starts a comment that
//! runs to the end of the line, and whitespace is otherwise insignificant.
//!
//! A matrix block lists the carrier, the designated subset, and one `op`
//! block per connective:
//!
//! ```text
//! matrix P1 {
//!   values T T1 F ;
//!   designated T T1 ;
//!   op negP1/1 { T -> F ; T1 -> T ; F -> T ; }
//!   op impP1/2 { table T T F T T F T T T ; }
//! }
//! ```
//!
//! Ops are given either row by row (`T T1 -> T ;`, every input tuple exactly
//! once; a nullary op has the single row `-> T ;`) or as a full `table`
//! listing outputs in row-major carrier order (first argument most
//! significant). A pair block gives the two translation maps of a fibring
//! pair, `lambda` from the first carrier into the second and `mu` back:
//!
//! ```text
//! pair example {
//!   lambda { T -> 1 ; T1 -> 1 ; F -> 0 ; }
//!   mu { 1 -> T ; 0 -> F ; }
//! }
//! ```
//!
//! A spec file holds either a single matrix block, or two matrix blocks
//! followed by one pair block describing their fibring.

use crate::fibring::FibringPair;
use crate::formula::Formula;
use crate::matrix::{index_tuple, tuple_index, Matrix};
use crate::signature::Signature;
use crate::{Error, Result};

/// True when `s` is a valid identifier of the text format.
pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'@' | b'.' | b'^'))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Arrow,
    Slash,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::LBrace => write!(f, "{{"),
            Tok::RBrace => write!(f, "}}"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Comma => write!(f, ","),
            Tok::Semi => write!(f, ";"),
            Tok::Arrow => write!(f, "->"),
            Tok::Slash => write!(f, "/"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, u32)>> {
    let mut toks = Vec::new();
    let mut line: u32 = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '{' => {
                chars.next();
                toks.push((Tok::LBrace, line));
            }
            '}' => {
                chars.next();
                toks.push((Tok::RBrace, line));
            }
            '(' => {
                chars.next();
                toks.push((Tok::LParen, line));
            }
            ')' => {
                chars.next();
                toks.push((Tok::RParen, line));
            }
            ',' => {
                chars.next();
                toks.push((Tok::Comma, line));
            }
            ';' => {
                chars.next();
                toks.push((Tok::Semi, line));
            }
            '/' => {
                chars.next();
                toks.push((Tok::Slash, line));
            }
            '-' => {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    toks.push((Tok::Arrow, line));
                } else {
                    return Err(Error::parse(format!(
                        "line {line}: expected -> after -"
                    )));
                }
            }
            c if c.is_ascii_alphanumeric() || matches!(c, '_' | '@' | '.' | '^') => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || matches!(c, '_' | '@' | '.' | '^') {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(ident), line));
            }
            c => {
                return Err(Error::parse(format!(
                    "line {line}: unexpected character {c:?}"
                )));
            }
        }
    }
    Ok(toks)
}

struct Tokens {
    toks: Vec<(Tok, u32)>,
    pos: usize,
    last_line: u32,
}

impl Tokens {
    fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let last_line = toks.last().map_or(1, |&(_, l)| l);
        Ok(Tokens { toks, pos: 0, last_line })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(t, _)| t)
    }

    fn line(&self) -> u32 {
        self.toks.get(self.pos).map_or(self.last_line, |&(_, l)| l)
    }

    fn next(&mut self) -> Option<(Tok, u32)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<u32> {
        let line = self.line();
        match self.next() {
            Some((t, l)) if &t == want => Ok(l),
            Some((t, l)) => Err(Error::parse(format!(
                "line {l}: expected {want}, found {t}"
            ))),
            None => Err(Error::parse(format!(
                "line {line}: expected {want}, found end of input"
            ))),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, u32)> {
        let line = self.line();
        match self.next() {
            Some((Tok::Ident(s), l)) => Ok((s, l)),
            Some((t, l)) => Err(Error::parse(format!(
                "line {l}: expected {what}, found {t}"
            ))),
            None => Err(Error::parse(format!(
                "line {line}: expected {what}, found end of input"
            ))),
        }
    }

    /// Consumes the keyword `word` (a bare identifier).
    fn expect_keyword(&mut self, word: &str) -> Result<u32> {
        let (found, line) = self.expect_ident(word)?;
        if found == word {
            Ok(line)
        } else {
            Err(Error::parse(format!(
                "line {line}: expected {word}, found {found}"
            )))
        }
    }

    fn peek_is_ident(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == word)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect_end(&self) -> Result<()> {
        if let Some((t, l)) = self.toks.get(self.pos) {
            return Err(Error::parse(format!(
                "line {l}: unexpected trailing input starting at {t}"
            )));
        }
        Ok(())
    }
}

/// Parses a formula in prefix syntax against `sig`. Identifiers that name a
/// connective resolve to that connective (a bare nullary connective needs no
/// parentheses); all other identifiers are variables.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    let mut t = Tokens::new(text)?;
    let f = formula(&mut t, sig)?;
    t.expect_end()?;
    Ok(f)
}

/// Parses a sequent `premise, premise |- conclusion` against `sig`. The
/// premise list may be empty (`|- conclusion`); premises are separated by
/// top-level commas, so commas inside argument lists do not split them.
pub fn parse_sequent(text: &str, sig: &Signature) -> Result<(Vec<Formula>, Formula)> {
    let (left, right) = text.split_once("|-").ok_or_else(|| {
        Error::parse("a sequent is written \"premise, premise |- conclusion\" (the premise list may be empty)")
    })?;
    let mut premises = Vec::new();
    if !left.trim().is_empty() {
        let mut t = Tokens::new(left)?;
        loop {
            premises.push(formula(&mut t, sig)?);
            if t.peek() == Some(&Tok::Comma) {
                t.next();
            } else {
                break;
            }
        }
        t.expect_end()?;
    }
    let conclusion = parse_formula(right, sig)?;
    Ok((premises, conclusion))
}

fn formula(t: &mut Tokens, sig: &Signature) -> Result<Formula> {
    let (name, line) = t.expect_ident("a formula")?;
    if t.peek() == Some(&Tok::LParen) {
        t.next();
        let mut args = Vec::new();
        if t.peek() != Some(&Tok::RParen) {
            loop {
                args.push(formula(t, sig)?);
                if t.peek() == Some(&Tok::Comma) {
                    t.next();
                } else {
                    break;
                }
            }
        }
        t.expect(&Tok::RParen)?;
        match sig.arity(&name) {
            None => Err(Error::parse(format!(
                "line {line}: unknown connective {name}"
            ))),
            Some(k) if usize::from(k) != args.len() => Err(Error::parse(format!(
                "line {line}: connective {name} expects {k} arguments, got {}",
                args.len()
            ))),
            Some(_) => Ok(Formula::app(name, args)),
        }
    } else {
        match sig.arity(&name) {
            Some(0) => Ok(Formula::app(name, Vec::new())),
            Some(k) => Err(Error::parse(format!(
                "line {line}: connective {name} expects {k} arguments"
            ))),
            None => Ok(Formula::var(name)),
        }
    }
}

/// A parsed spec file: either a single matrix, or two matrices and a fibring
/// pair between them.
// Built once per input file, so the variant size gap is irrelevant and not
// worth boxing the matrices for.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum SpecFile {
    /// A file containing one matrix block.
    Single(Matrix),
    /// A file containing two matrix blocks and one pair block, in that order
    /// of roles: `pair` translates between `m1` and `m2`.
    Fibred {
        /// First component.
        m1: Matrix,
        /// Second component.
        m2: Matrix,
        /// Fibring pair between the components.
        pair: FibringPair,
    },
}

/// Parses a spec file holding one matrix, or two matrices and a pair.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut t = Tokens::new(text)?;
    let mut matrices = Vec::new();
    let mut pairs = Vec::new();
    while !t.at_end() {
        if t.peek_is_ident("matrix") {
            matrices.push(matrix_block(&mut t)?);
        } else if t.peek_is_ident("pair") {
            pairs.push(pair_block(&mut t)?);
        } else {
            let line = t.line();
            return Err(Error::parse(format!(
                "line {line}: expected a matrix or pair block"
            )));
        }
    }
    match (matrices.len(), pairs.len()) {
        (1, 0) => Ok(SpecFile::Single(matrices.pop().expect("one matrix"))),
        (2, 1) => {
            let raw = pairs.pop().expect("one pair");
            let m2 = matrices.pop().expect("two matrices");
            let m1 = matrices.pop().expect("two matrices");
            let pair = raw.resolve(&m1, &m2)?;
            Ok(SpecFile::Fibred { m1, m2, pair })
        }
        (m, p) => Err(Error::parse(format!(
            "a spec file holds one matrix, or two matrices and one pair; \
             found {m} matrix blocks and {p} pair blocks"
        ))),
    }
}

/// Parses a file containing exactly one matrix block.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    match parse_spec(text)? {
        SpecFile::Single(m) => Ok(m),
        SpecFile::Fibred { .. } => Err(Error::parse(
            "expected a single matrix block, found a fibred spec".to_string(),
        )),
    }
}

/// Parses a file containing exactly one pair block and resolves it against
/// the given component matrices.
pub fn parse_pair(text: &str, m1: &Matrix, m2: &Matrix) -> Result<FibringPair> {
    let mut t = Tokens::new(text)?;
    let raw = pair_block(&mut t)?;
    t.expect_end()?;
    raw.resolve(m1, m2)
}

fn matrix_block(t: &mut Tokens) -> Result<Matrix> {
    t.expect_keyword("matrix")?;
    let (name, _) = t.expect_ident("a matrix name")?;
    t.expect(&Tok::LBrace)?;

    t.expect_keyword("values")?;
    let mut values = Vec::new();
    while let Some(Tok::Ident(_)) = t.peek() {
        let (v, _) = t.expect_ident("a value name")?;
        values.push(v);
    }
    let line = t.expect(&Tok::Semi)?;
    if values.is_empty() {
        return Err(Error::parse(format!(
            "line {line}: matrix {name} lists no values"
        )));
    }

    t.expect_keyword("designated")?;
    let mut designated = Vec::new();
    while let Some(Tok::Ident(_)) = t.peek() {
        let (v, _) = t.expect_ident("a value name")?;
        designated.push(v);
    }
    t.expect(&Tok::Semi)?;

    let mut entries = Vec::new();
    let mut tables = Vec::new();
    while t.peek_is_ident("op") {
        let (conn, arity, table) = op_block(t, &values)?;
        entries.push((conn, arity));
        tables.push(table);
    }
    t.expect(&Tok::RBrace)?;

    let signature = Signature::new(entries)?;
    Matrix::new(name, values, designated, signature, tables)
}

fn op_block(t: &mut Tokens, values: &[String]) -> Result<(String, u8, Vec<String>)> {
    t.expect_keyword("op")?;
    let (conn, conn_line) = t.expect_ident("a connective name")?;
    t.expect(&Tok::Slash)?;
    let (arity_text, arity_line) = t.expect_ident("an arity")?;
    let arity: u8 = arity_text.parse().map_err(|_| {
        Error::parse(format!(
            "line {arity_line}: arity of {conn} must be a number, found {arity_text}"
        ))
    })?;
    t.expect(&Tok::LBrace)?;

    let n = values.len();
    let cells = n.pow(u32::from(arity));
    // `table` is the keyword form only when the statement has no arrow;
    // otherwise it is a value name starting an ordinary row.
    let table_form = t.peek_is_ident("table") && {
        let mut offset = 1;
        loop {
            match t.peek_at(offset) {
                Some(Tok::Arrow) => break false,
                Some(Tok::Semi) | None => break true,
                _ => offset += 1,
            }
        }
    };

    let table = if table_form {
        t.expect_keyword("table")?;
        let mut outputs = Vec::new();
        while let Some(Tok::Ident(_)) = t.peek() {
            let (v, _) = t.expect_ident("a value name")?;
            outputs.push(v);
        }
        let line = t.expect(&Tok::Semi)?;
        if outputs.len() != cells {
            return Err(Error::parse(format!(
                "line {line}: table for {conn}/{arity} lists {} outputs, expected {cells}",
                outputs.len()
            )));
        }
        outputs
    } else {
        let mut slots: Vec<Option<String>> = vec![None; cells];
        while t.peek() != Some(&Tok::RBrace) {
            let mut inputs = Vec::new();
            while let Some(Tok::Ident(_)) = t.peek() {
                let (v, _) = t.expect_ident("a value name")?;
                inputs.push(v);
            }
            let line = t.expect(&Tok::Arrow)?;
            let (output, _) = t.expect_ident("an output value")?;
            t.expect(&Tok::Semi)?;
            if inputs.len() != usize::from(arity) {
                return Err(Error::parse(format!(
                    "line {line}: row for {conn}/{arity} has {} inputs",
                    inputs.len()
                )));
            }
            let mut indices = Vec::with_capacity(inputs.len());
            for v in &inputs {
                let i = values.iter().position(|w| w == v).ok_or_else(|| {
                    Error::parse(format!(
                        "line {line}: row for {conn} uses {v}, which is not a carrier value"
                    ))
                })?;
                indices.push(i);
            }
            let slot = tuple_index(&indices, n);
            if slots[slot].is_some() {
                return Err(Error::parse(format!(
                    "line {line}: row for {conn} at ({}) given twice",
                    inputs.join(" ")
                )));
            }
            slots[slot] = Some(output);
        }
        let mut outputs = Vec::with_capacity(cells);
        for (slot, output) in slots.into_iter().enumerate() {
            match output {
                Some(v) => outputs.push(v),
                None => {
                    let tuple = index_tuple(slot, n, usize::from(arity))
                        .into_iter()
                        .map(|i| values[i].as_str())
                        .collect::<Vec<_>>()
                        .join(" ");
                    return Err(Error::parse(format!(
                        "line {conn_line}: op {conn}/{arity} is missing a row for ({tuple})"
                    )));
                }
            }
        }
        outputs
    };

    t.expect(&Tok::RBrace)?;
    Ok((conn, arity, table))
}

struct RawPair {
    name: String,
    lambda: Vec<(String, String, u32)>,
    mu: Vec<(String, String, u32)>,
}

impl RawPair {
    fn resolve(self, m1: &Matrix, m2: &Matrix) -> Result<FibringPair> {
        let map = |rows: &[(String, String, u32)],
                   from: &Matrix,
                   to: &Matrix,
                   which: &str|
         -> Result<Vec<usize>> {
            let mut out: Vec<Option<usize>> = vec![None; from.value_count()];
            for (input, output, line) in rows {
                let i = from.value_index(input).ok_or_else(|| {
                    Error::pair(format!(
                        "line {line}: {which} of pair {} maps {input}, which is not a \
                         value of {}",
                        self.name,
                        from.name()
                    ))
                })?;
                let o = to.value_index(output).ok_or_else(|| {
                    Error::pair(format!(
                        "line {line}: {which} of pair {} maps {input} to {output}, \
                         which is not a value of {}",
                        self.name,
                        to.name()
                    ))
                })?;
                if out[i].is_some() {
                    return Err(Error::pair(format!(
                        "line {line}: {which} of pair {} maps {input} twice",
                        self.name
                    )));
                }
                out[i] = Some(o);
            }
            let mut total = Vec::with_capacity(out.len());
            for (i, o) in out.into_iter().enumerate() {
                match o {
                    Some(o) => total.push(o),
                    None => {
                        return Err(Error::pair(format!(
                            "{which} of pair {} does not map {}",
                            self.name,
                            from.value_name(i)
                        )));
                    }
                }
            }
            Ok(total)
        };
        let lambda = map(&self.lambda, m1, m2, "lambda")?;
        let mu = map(&self.mu, m2, m1, "mu")?;
        FibringPair::from_indices(m1, m2, lambda, mu)
    }
}

fn pair_block(t: &mut Tokens) -> Result<RawPair> {
    t.expect_keyword("pair")?;
    let (name, _) = t.expect_ident("a pair name")?;
    t.expect(&Tok::LBrace)?;
    t.expect_keyword("lambda")?;
    let lambda = map_block(t)?;
    t.expect_keyword("mu")?;
    let mu = map_block(t)?;
    t.expect(&Tok::RBrace)?;
    Ok(RawPair { name, lambda, mu })
}

fn map_block(t: &mut Tokens) -> Result<Vec<(String, String, u32)>> {
    t.expect(&Tok::LBrace)?;
    let mut rows = Vec::new();
    while t.peek() != Some(&Tok::RBrace) {
        let (input, line) = t.expect_ident("a value name")?;
        t.expect(&Tok::Arrow)?;
        let (output, _) = t.expect_ident("a value name")?;
        t.expect(&Tok::Semi)?;
        rows.push((input, output, line));
    }
    t.expect(&Tok::RBrace)?;
    Ok(rows)
}
