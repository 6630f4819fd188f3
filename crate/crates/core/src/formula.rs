//! Formulas of the multi-agent epistemic language: atoms, negation,
//! conjunction and one knowledge operator `K_i` per agent.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! imp   := or ( "->" imp )?           right associative
//! or    := and ( "|" and )*
//! and   := unary ( "&" unary )*       left associative
//! unary := "!" unary | "K" digits unary | atom
//! atom  := [a-z][a-zA-Z0-9_]* | "(" imp ")"
//! ```
//!
//! `|` and `->` are sugar: the parser desugars them, so a [`Formula`] only
//! ever contains the four primitive constructors.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A formula over the four primitive constructors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// Atomic proposition.
    Prop(String),
    /// Negation.
    Not(Box<Formula>),
    /// Conjunction.
    And(Box<Formula>, Box<Formula>),
    /// `K_i φ`: agent `i` (1-based) knows `φ`.
    Know(usize, Box<Formula>),
}

impl Formula {
    /// An atom.
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    /// `¬self`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    /// `self ∧ other`.
    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    /// `K_agent self`.
    pub fn known_by(self, agent: usize) -> Self {
        Formula::Know(agent, Box::new(self))
    }

    /// `self ∨ other`, as `¬(¬self ∧ ¬other)`.
    pub fn or(self, other: Formula) -> Self {
        self.not().and(other.not()).not()
    }

    /// `self → other`, as `¬(self ∧ ¬other)`.
    pub fn implies(self, other: Formula) -> Self {
        self.and(other.not()).not()
    }

    /// `M_agent self`, the dual of knowledge, as `¬K_agent ¬self`.
    pub fn possible(self, agent: usize) -> Self {
        self.not().known_by(agent).not()
    }

    /// Maximum nesting of knowledge operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Prop(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Know(_, f) => 1 + f.modal_depth(),
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Prop(_) => 1,
            Formula::Not(f) | Formula::Know(_, f) => 1 + f.size(),
            Formula::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Largest agent index occurring in the formula, 0 if none.
    pub fn max_agent(&self) -> usize {
        match self {
            Formula::Prop(_) => 0,
            Formula::Not(f) => f.max_agent(),
            Formula::And(a, b) => a.max_agent().max(b.max_agent()),
            Formula::Know(i, f) => (*i).max(f.max_agent()),
        }
    }

    /// Atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Prop(p) => {
                out.insert(p);
            }
            Formula::Not(f) | Formula::Know(_, f) => f.collect_atoms(out),
            Formula::And(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Constructor-tree rendering, e.g. `Know(1, Not(Prop(p)))`.
    pub fn to_tree_string(&self) -> String {
        let mut out = String::new();
        self.write_tree(&mut out);
        out
    }

    fn write_tree(&self, out: &mut String) {
        match self {
            Formula::Prop(p) => {
                out.push_str("Prop(");
                out.push_str(p);
                out.push(')');
            }
            Formula::Not(f) => {
                out.push_str("Not(");
                f.write_tree(out);
                out.push(')');
            }
            Formula::And(a, b) => {
                out.push_str("And(");
                a.write_tree(out);
                out.push_str(", ");
                b.write_tree(out);
                out.push(')');
            }
            Formula::Know(i, f) => {
                out.push_str("Know(");
                out.push_str(&i.to_string());
                out.push_str(", ");
                f.write_tree(out);
                out.push(')');
            }
        }
    }
}

/// Minimal-parenthesis concrete syntax; reparses to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(f: &mut fmt::Formatter<'_>, sub: &Formula) -> fmt::Result {
            if matches!(sub, Formula::And(..)) {
                write!(f, "({sub})")
            } else {
                write!(f, "{sub}")
            }
        }
        match self {
            Formula::Prop(p) => f.write_str(p),
            Formula::Not(sub) => {
                f.write_str("!")?;
                operand(f, sub)
            }
            Formula::Know(i, sub) => {
                write!(f, "K{i} ")?;
                operand(f, sub)
            }
            Formula::And(a, b) => {
                write!(f, "{a} & ")?;
                operand(f, b)
            }
        }
    }
}

impl core::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// A syntax error with its byte offset in the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {pos}: {kind}")]
pub struct ParseError {
    /// Byte offset.
    pub pos: usize,
    /// What went wrong.
    pub kind: ParseErrorKind,
}

/// Kinds of [`ParseError`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    /// A character that starts no token.
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    /// `K` not followed by digits.
    #[error("`K` must be followed by an agent number")]
    MissingAgent,
    /// `K0`, or an agent number that does not fit.
    #[error("invalid agent number `{0}`")]
    BadAgent(String),
    /// Input ended where an operand was expected.
    #[error("missing operand")]
    MissingOperand,
    /// A token where an operand was expected.
    #[error("expected an operand, found `{0}`")]
    ExpectedOperand(String),
    /// Unbalanced parenthesis.
    #[error("expected `)`")]
    UnclosedParen,
    /// Input left over after a complete formula.
    #[error("unexpected trailing `{0}`")]
    Trailing(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Know(usize),
    Not,
    And,
    Or,
    Implies,
    Open,
    Close,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Atom(a) => f.write_str(a),
            Tok::Know(i) => write!(f, "K{i}"),
            Tok::Not => f.write_str("!"),
            Tok::And => f.write_str("&"),
            Tok::Or => f.write_str("|"),
            Tok::Implies => f.write_str("->"),
            Tok::Open => f.write_str("("),
            Tok::Close => f.write_str(")"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    let err = |pos, kind| ParseError { pos, kind };
    while pos < bytes.len() {
        let start = pos;
        let c = bytes[pos];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'-' if bytes.get(pos + 1) == Some(&b'>') => {
                pos += 1;
                Tok::Implies
            }
            b'K' => {
                let digits = bytes[pos + 1..].iter().take_while(|b| b.is_ascii_digit()).count();
                if digits == 0 {
                    return Err(err(start, ParseErrorKind::MissingAgent));
                }
                let lit = &text[pos + 1..pos + 1 + digits];
                let agent: usize = lit.parse().map_err(|_| err(start, ParseErrorKind::BadAgent(lit.into())))?;
                if agent == 0 {
                    return Err(err(start, ParseErrorKind::BadAgent(lit.into())));
                }
                pos += digits;
                Tok::Know(agent)
            }
            b'a'..=b'z' => {
                let len = bytes[pos..].iter().take_while(|b| b.is_ascii_alphanumeric() || **b == b'_').count();
                pos += len - 1;
                Tok::Atom(text[start..start + len].into())
            }
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('?');
                return Err(err(start, ParseErrorKind::UnexpectedChar(ch)));
            }
        };
        pos += 1;
        toks.push((start, tok));
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            Ok(lhs.implies(self.implication()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return Err(ParseError { pos, kind: ParseErrorKind::MissingOperand });
        };
        self.at += 1;
        match tok {
            Tok::Not => Ok(self.unary()?.not()),
            Tok::Know(i) => Ok(self.unary()?.known_by(i)),
            Tok::Atom(a) => Ok(Formula::Prop(a)),
            Tok::Open => {
                let inner = self.implication()?;
                if self.eat(&Tok::Close) {
                    Ok(inner)
                } else {
                    Err(ParseError { pos: self.pos(), kind: ParseErrorKind::UnclosedParen })
                }
            }
            other => Err(ParseError { pos, kind: ParseErrorKind::ExpectedOperand(other.to_string()) }),
        }
    }
}

/// Parses concrete syntax into a primitive formula tree.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, end: text.len() };
    let f = p.implication()?;
    match p.toks.get(p.at) {
        None => Ok(f),
        Some((pos, tok)) => Err(ParseError { pos: *pos, kind: ParseErrorKind::Trailing(tok.to_string()) }),
    }
}

/// Invalid arguments to [`random_formula`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    /// No atoms to draw from.
    #[error("proposition pool is empty")]
    EmptyPool,
    /// `n_agents` is zero.
    #[error("need at least one agent")]
    NoAgents,
    /// `size` is zero.
    #[error("size budget must be at least 1")]
    ZeroSize,
}

/// Draws a formula with at most `size` nodes and modal depth at most
/// `max_depth`, agents in `1..=n_agents`, atoms from `pool`.
///
/// Deterministic in `seed`.
pub fn random_formula(
    n_agents: usize,
    pool: &[String],
    max_depth: usize,
    size: usize,
    seed: u64,
) -> Result<Formula, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula_with(&mut rng, n_agents, pool, max_depth, size)
}

/// As [`random_formula`], drawing from a caller-supplied generator.
pub fn random_formula_with<R: Rng + ?Sized>(
    rng: &mut R,
    n_agents: usize,
    pool: &[String],
    max_depth: usize,
    size: usize,
) -> Result<Formula, GenerateError> {
    if pool.is_empty() {
        return Err(GenerateError::EmptyPool);
    }
    if n_agents == 0 {
        return Err(GenerateError::NoAgents);
    }
    if size == 0 {
        return Err(GenerateError::ZeroSize);
    }
    Ok(grow(rng, n_agents, pool, max_depth, size))
}

fn grow<R: Rng + ?Sized>(rng: &mut R, n_agents: usize, pool: &[String], depth: usize, budget: usize) -> Formula {
    let atom = |rng: &mut R| Formula::Prop(pool[rng.random_range(0..pool.len())].clone());
    if budget == 1 || rng.random_bool(0.2) {
        return atom(rng);
    }
    let choices = if depth > 0 { 3 } else { 2 };
    match rng.random_range(0..choices) {
        0 => grow(rng, n_agents, pool, depth, budget - 1).not(),
        1 if budget >= 3 => {
            let left = rng.random_range(1..budget - 1);
            let a = grow(rng, n_agents, pool, depth, left);
            let b = grow(rng, n_agents, pool, depth, budget - 1 - left);
            a.and(b)
        }
        1 => atom(rng).not(),
        _ => grow(rng, n_agents, pool, depth - 1, budget - 1).known_by(rng.random_range(1..=n_agents)),
    }
}
