//! Instance files: line-oriented JSON, one header line then one block per
//! line. Every number is a string `"p/q"` or `"p"`; no floats.
//!
//! ```text
//! {"format":"cvx","version":1,"kind":"set","dim":2}
//! {"block":"set","name":"A","cells":[[{"a":["1","0"],"rel":"le","b":"3"}]]}
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use cvxcore::exactlin::{format_rational, parse_rational};
use cvxcore::lpexact::{LinearConstraint, Relation};
use cvxcore::{QVector, Rational};

pub const FORMAT: &str = "cvx";
pub const VERSION: u32 = 1;

/// Exact rational carried as canonical text.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Q(pub Rational);

impl TryFrom<String> for Q {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        parse_rational(&s).map(Q).map_err(|e| e.to_string())
    }
}

impl From<Q> for String {
    fn from(q: Q) -> String {
        format_rational(&q.0)
    }
}

pub fn to_qs(v: &QVector) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn from_qs(v: &[Q]) -> QVector {
    QVector::new(v.iter().map(|q| q.0.clone()).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Set,
    Sep,
    Vop,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Set => "set",
            Kind::Sep => "sep",
            Kind::Vop => "vop",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rel {
    Le,
    Lt,
    Eq,
}

/// `a·x rel b`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub a: Vec<Q>,
    pub rel: Rel,
    pub b: Q,
}

impl Row {
    pub fn from_constraint(c: &LinearConstraint) -> Row {
        Row {
            a: to_qs(&c.coefficients),
            rel: match c.relation {
                Relation::Le => Rel::Le,
                Relation::Lt => Rel::Lt,
                Relation::Eq => Rel::Eq,
            },
            b: Q(c.bound.clone()),
        }
    }

    pub fn to_constraint(&self) -> LinearConstraint {
        let rel = match self.rel {
            Rel::Le => Relation::Le,
            Rel::Lt => Relation::Lt,
            Rel::Eq => Relation::Eq,
        };
        LinearConstraint::new(from_qs(&self.a), rel, self.b.0.clone())
    }
}

/// `⟨c,x⟩ + d`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub c: Vec<Q>,
    pub d: Q,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PwlKind {
    Max,
    Min,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImageKind {
    Finite,
    Polytope,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "block", rename_all = "lowercase", deny_unknown_fields)]
pub enum Block {
    /// Union of cells, each a list of rows.
    Set { name: String, cells: Vec<Vec<Row>> },
    Polytope { name: String, vertices: Vec<Vec<Q>> },
    Pwl { name: String, mode: PwlKind, pieces: Vec<Piece> },
    Hrep { name: String, rows: Vec<Row> },
    Vector { name: String, v: Vec<Q> },
    Cone { generators: Vec<Vec<Q>> },
    Base { vertices: Vec<Vec<Q>> },
    Image { kind: ImageKind, points: Vec<Vec<Q>> },
}

impl Block {
    pub fn tag(&self) -> &'static str {
        match self {
            Block::Set { .. } => "set",
            Block::Polytope { .. } => "polytope",
            Block::Pwl { .. } => "pwl",
            Block::Hrep { .. } => "hrep",
            Block::Vector { .. } => "vector",
            Block::Cone { .. } => "cone",
            Block::Base { .. } => "base",
            Block::Image { .. } => "image",
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Block::Set { name, .. }
            | Block::Polytope { name, .. }
            | Block::Pwl { name, .. }
            | Block::Hrep { name, .. }
            | Block::Vector { name, .. } => Some(name),
            _ => None,
        }
    }

    /// Every vector length in the block.
    fn lengths(&self) -> Vec<usize> {
        let rows = |rs: &[Row]| rs.iter().map(|r| r.a.len()).collect::<Vec<_>>();
        let vecs = |vs: &[Vec<Q>]| vs.iter().map(Vec::len).collect::<Vec<_>>();
        match self {
            Block::Set { cells, .. } => cells.iter().flat_map(|c| rows(c)).collect(),
            Block::Polytope { vertices, .. } | Block::Base { vertices } => vecs(vertices),
            Block::Pwl { pieces, .. } => pieces.iter().map(|p| p.c.len()).collect(),
            Block::Hrep { rows: rs, .. } => rows(rs),
            Block::Vector { v, .. } => vec![v.len()],
            Block::Cone { generators } => vecs(generators),
            Block::Image { points, .. } => vecs(points),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    version: u32,
    kind: Kind,
    dim: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InstanceFile {
    pub kind: Kind,
    pub dim: usize,
    pub blocks: Vec<Block>,
}

/// Position of a malformed line (1-based). Errors inside a block's fields
/// surface after the block is buffered, so their column is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn parse_line<T: for<'de> Deserialize<'de>>(line: usize, text: &str) -> Result<T, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError {
        line,
        column: e.column().max(1),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })
}

fn allowed(kind: Kind, block: &Block) -> bool {
    match kind {
        Kind::Set => matches!(block, Block::Set { .. }),
        Kind::Sep => matches!(
            block,
            Block::Set { .. } | Block::Polytope { .. } | Block::Pwl { .. } | Block::Hrep { .. } | Block::Vector { .. }
        ),
        Kind::Vop => matches!(block, Block::Cone { .. } | Block::Base { .. } | Block::Image { .. }),
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile, ParseError> {
        let at = |line: usize, message: String| ParseError {
            line,
            column: 1,
            message,
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (n, first) = lines.next().ok_or_else(|| at(1, "empty file".into()))?;
        let header: Header = parse_line(n, first)?;
        if header.format != FORMAT {
            return Err(at(n, format!("format must be {FORMAT:?}")));
        }
        if header.version != VERSION {
            return Err(at(n, format!("unsupported version {} (expected {VERSION})", header.version)));
        }
        let mut blocks = Vec::new();
        for (n, line) in lines {
            if line.trim().is_empty() {
                return Err(at(n, "blank line".into()));
            }
            let block: Block = parse_line(n, line)?;
            if !allowed(header.kind, &block) {
                return Err(at(n, format!("{} block not allowed in a {} file", block.tag(), header.kind.as_str())));
            }
            if let Some(len) = block.lengths().into_iter().find(|&l| l != header.dim) {
                return Err(at(n, format!("vector of length {len} in a file of dimension {}", header.dim)));
            }
            if let Some(name) = block.name() {
                if blocks.iter().any(|b: &Block| b.name() == Some(name)) {
                    return Err(at(n, format!("duplicate block name {name:?}")));
                }
            }
            blocks.push(block);
        }
        Ok(InstanceFile {
            kind: header.kind,
            dim: header.dim,
            blocks,
        })
    }

    /// Canonical text; `parse` then `serialize` reproduces canonical input.
    pub fn serialize(&self) -> String {
        let header = Header {
            format: FORMAT.into(),
            version: VERSION,
            kind: self.kind,
            dim: self.dim,
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for b in &self.blocks {
            out.push_str(&serde_json::to_string(b).expect("block serializes"));
            out.push('\n');
        }
        out
    }

    pub fn named(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name() == Some(name))
    }
}
