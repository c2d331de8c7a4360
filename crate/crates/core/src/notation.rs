//! Parser for the tuple notation used in listings, e.g.
//! `((1, 9), 0, (2, 2); (5, 9))` or `((17,18),0,7;(1,2),(13,18))`.
//!
//! The shape of the third entry decides the kind: a pair `(a, b)` is SP,
//! a bare integer `a` is SE.

use crate::dataset::{ConePair, DataSet, Kind, SeDataSet, SpDataSet};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Int(i64),
    /// Entries split into `;`-separated groups.
    Tuple(Vec<Vec<Node>>),
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, NotationError> {
        Err(NotationError { column: self.pos + 1, message: msg.into() })
    }

    fn node(&mut self) -> Result<Node, NotationError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.tuple()
            }
            Some(c) if c == b'-' || c == b'+' || c.is_ascii_digit() => self.int(),
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn int(&mut self) -> Result<Node, NotationError> {
        let start = self.pos;
        if matches!(self.src[self.pos], b'-' | b'+') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match text.parse() {
            Ok(v) => Ok(Node::Int(v)),
            Err(_) => {
                self.pos = start;
                self.err(format!("bad integer `{text}`"))
            }
        }
    }

    fn tuple(&mut self) -> Result<Node, NotationError> {
        let mut groups = vec![Vec::new()];
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(Node::Tuple(groups));
        }
        loop {
            let item = self.node()?;
            groups.last_mut().expect("at least one group").push(item);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b';') => {
                    self.pos += 1;
                    groups.push(Vec::new());
                    // allow `(...;)` with nothing after the separator
                    if self.peek() == Some(b')') {
                        self.pos += 1;
                        return Ok(Node::Tuple(groups));
                    }
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(Node::Tuple(groups));
                }
                Some(c) => return self.err(format!("expected `,`, `;` or `)`, found `{}`", c as char)),
                None => return self.err("unclosed `(`"),
            }
        }
    }
}

/// A notation parse failure; `column` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotationError {
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for NotationError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for NotationError {}

fn shape_err<T>(msg: &str) -> Result<T, NotationError> {
    Err(NotationError { column: 1, message: msg.to_string() })
}

fn pair(node: &Node) -> Option<(i64, i64)> {
    match node {
        Node::Tuple(groups) if groups.len() == 1 => match groups[0].as_slice() {
            [Node::Int(x), Node::Int(y)] => Some((*x, *y)),
            _ => None,
        },
        _ => None,
    }
}

/// Parses one data set written in tuple notation. When `kind` is given the
/// tuple must have that shape.
pub fn parse_data_set(text: &str, kind: Option<Kind>) -> Result<DataSet, NotationError> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let root = cur.node()?;
    if cur.peek().is_some() {
        return cur.err("trailing input after data set");
    }
    let Node::Tuple(groups) = root else {
        return shape_err("data set must be a parenthesized tuple");
    };
    if groups.len() > 2 {
        return shape_err("at most one `;` separates the header from the cone pairs");
    }
    let head = &groups[0];
    let cones: Vec<ConePair> = match groups.get(1) {
        None => Vec::new(),
        Some(items) => items
            .iter()
            .map(|c| pair(c).map(|(k, m)| ConePair::new(k, m)))
            .collect::<Option<_>>()
            .map_or_else(|| shape_err("cone entries must be pairs (k, m)"), Ok)?,
    };
    let [exp, Node::Int(g0), third] = head.as_slice() else {
        return shape_err("header must be ((l, order), g0, a) or ((l, order), g0, (a, b))");
    };
    let Some((l, order)) = pair(exp) else {
        return shape_err("exponent must be a pair (l, order)");
    };
    let parsed = match third {
        Node::Int(a) => DataSet::Se(SeDataSet { l, two_n: order, g0: *g0, a: *a, cones }),
        other => match pair(other) {
            Some((a, b)) => DataSet::Sp(SpDataSet { l, n: order, g0: *g0, a, b, cones }),
            None => return shape_err("third entry must be an integer (SE) or a pair (SP)"),
        },
    };
    match kind {
        Some(k) if k != parsed.kind() => shape_err(&format!("expected an {k} data set, found {}", parsed.kind())),
        _ => Ok(parsed),
    }
}
