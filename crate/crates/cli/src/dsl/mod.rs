//! The manifest language: named blocks of `key = value;` entries.
//!
//! ```text
//! algebra B { deg(x) = 0; deg(y) = 0; }
//! poisson P { on = B; shift = 0; p0 = @x*@y; }
//! ```

mod lexer;
mod parser;
mod print;
mod resolve;

use std::fmt;

use shpoisson::exactlin::Q;
use thiserror::Error;

pub use lexer::is_plain_name;
pub use print::{serialize, write_expr};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Q),
    Name(String),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn name(s: impl Into<String>) -> Self {
        Expr::Name(s.into())
    }

    /// Negation that folds into numeric literals.
    pub fn negate(self) -> Self {
        match self {
            Expr::Number(n) => Expr::Number(-n),
            e => Expr::Neg(Box::new(e)),
        }
    }

    pub fn names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Number(_) => {}
            Expr::Name(n) => out.push(n.clone()),
            Expr::Sum(xs) | Expr::Product(xs) => xs.iter().for_each(|x| x.names(out)),
            Expr::Power(b, _) => b.names(out),
            Expr::Neg(x) => x.names(out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Expr(Expr),
    List(Vec<Value>),
}

impl Value {
    pub fn names(&self, out: &mut Vec<String>) {
        match self {
            Value::Expr(e) => e.names(out),
            Value::List(vs) => vs.iter().for_each(|v| v.names(out)),
        }
    }

    pub fn as_name(&self) -> Option<&str> {
        match self {
            Value::Expr(Expr::Name(n)) => Some(n),
            _ => None,
        }
    }
}

/// `name`, `name(argument)` or `name[i][j]…`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub name: String,
    pub argument: Option<String>,
    pub indices: Vec<u32>,
}

impl Key {
    pub fn plain(name: impl Into<String>) -> Self {
        Key { name: name.into(), argument: None, indices: Vec::new() }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_key(f, self)
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub key: Key,
    pub value: Value,
    pub span: Span,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.value == other.value
    }
}

impl Eq for Entry {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    Algebra,
    Lie,
    Poisson,
    Form,
    Ideal,
    Options,
    Complex,
}

impl BlockKind {
    pub const ALL: [BlockKind; 7] = [
        BlockKind::Algebra,
        BlockKind::Lie,
        BlockKind::Poisson,
        BlockKind::Form,
        BlockKind::Ideal,
        BlockKind::Options,
        BlockKind::Complex,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            BlockKind::Algebra => "algebra",
            BlockKind::Lie => "lie",
            BlockKind::Poisson => "poisson",
            BlockKind::Form => "form",
            BlockKind::Ideal => "ideal",
            BlockKind::Options => "options",
            BlockKind::Complex => "complex",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub kind: BlockKind,
    pub name: String,
    pub entries: Vec<Entry>,
    pub span: Span,
}

impl PartialEq for Block {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.name == other.name && self.entries == other.entries
    }
}

impl Eq for Block {}

impl Block {
    pub fn get(&self, key: &Key) -> Option<&Entry> {
        self.entries.iter().find(|e| &e.key == key)
    }

    pub fn get_plain(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key.name == name && e.key.argument.is_none() && e.key.indices.is_empty())
    }
}

/// A parsed document. Equality ignores source spans.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub blocks: Vec<Block>,
}

impl Manifest {
    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn blocks_of(&self, kind: BlockKind) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(move |b| b.kind == kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{span}: expected {}, found {found}", expected.join(" or "))]
    Parse { span: Span, expected: Vec<String>, found: String },
    #[error("{span}: duplicate name `{name}`")]
    DuplicateName { name: String, span: Span },
    #[error("{span}: unresolved reference `{name}`")]
    UnresolvedReference { name: String, span: Span },
}

impl DslError {
    pub(crate) fn parse<'a>(span: Span, expected: impl IntoIterator<Item = &'a str>, found: String) -> Self {
        let mut expected: Vec<String> = expected.into_iter().map(String::from).collect();
        expected.sort();
        expected.dedup();
        DslError::Parse { span, expected, found }
    }

    pub fn span(&self) -> Span {
        match self {
            DslError::Parse { span, .. } | DslError::DuplicateName { span, .. } | DslError::UnresolvedReference { span, .. } => *span,
        }
    }
}

/// Parses and resolves a manifest: block names are unique, every key occurs
/// once per block, and every name used in a block refers to something the
/// block can see.
pub fn parse(src: &str) -> Result<Manifest, DslError> {
    let tokens = lexer::tokenize(src)?;
    let manifest = parser::Parser::new(tokens).manifest()?;
    resolve::resolve(&manifest)?;
    Ok(manifest)
}
