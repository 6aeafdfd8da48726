//! Single-vertex square complexes and the text format they are read from.
//!
//! ```text
//! # comment
//! name L(4,a)
//! generators a0 a1 a2 a3 a4
//! edge label=a1 from=a4 to=a0
//! square a0 a4 a0^-1 a3^-1
//! ```
//!
//! An `edge` line is a labeled-oriented-graph edge; it expands to the
//! conjugation square `label to label^-1 from^-1`. `square` lines pass
//! through as written.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{Alphabet, GenId, Letter, Sign, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub id: usize,
    pub boundary: Word,
}

impl Square {
    /// Letter `i` of the boundary, cyclically.
    pub fn letter(&self, i: usize) -> Letter {
        self.boundary.letters()[i % 4]
    }

    /// For a conjugation square `x v x^-1 u^-1` (up to a shift by one
    /// letter) returns `x`.
    pub fn conjugation_label(&self) -> Option<GenId> {
        (0..2).find_map(|i| {
            let (first, third) = (self.letter(i), self.letter(i + 2));
            (first.gen == third.gen && first.sign == Sign::Pos && third.sign == Sign::Neg)
                .then_some(first.gen)
        })
    }
}

/// Labeled oriented graph: vertices are generators, every edge
/// `(label, from, to)` is the relation `label * to * label^-1 = from`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<LogEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEdge {
    pub label: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogShape {
    Tree,
    Forest,
    General,
}

impl LogSpec {
    pub fn to_complex(&self) -> Result<SquareComplex> {
        let mut complex = SquareComplex::new(Alphabet::from_names(&self.vertices)?);
        for edge in &self.edges {
            complex.add_log_edge(&edge.label, &edge.from, &edge.to)?;
        }
        Ok(complex)
    }

    /// Shape of the underlying undirected graph. Metadata only; every
    /// shape expands the same way.
    pub fn shape(&self) -> Result<LogShape> {
        let alphabet = Alphabet::from_names(&self.vertices)?;
        let mut parent: Vec<usize> = (0..alphabet.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            parent[x] = root;
            root
        }
        let mut has_cycle = false;
        for edge in &self.edges {
            let lookup = |name: &str| {
                alphabet
                    .get(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
            };
            let (u, v) = (lookup(&edge.from)?.0, lookup(&edge.to)?.0);
            lookup(&edge.label)?;
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                has_cycle = true;
            } else {
                parent[ru] = rv;
            }
        }
        let roots = (0..alphabet.len())
            .filter(|&x| find(&mut parent, x) == x)
            .count();
        Ok(match (has_cycle, roots) {
            (true, _) => LogShape::General,
            (false, 1) => LogShape::Tree,
            (false, _) => LogShape::Forest,
        })
    }
}

/// Presentation complex with one vertex, one edge per generator and one
/// square per relator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SquareComplex {
    alphabet: Alphabet,
    squares: Vec<Square>,
    provenance: Vec<String>,
}

impl SquareComplex {
    pub fn new(alphabet: Alphabet) -> Self {
        SquareComplex {
            alphabet,
            squares: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn square(&self, id: usize) -> &Square {
        &self.squares[id]
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn note(&mut self, line: impl Into<String>) {
        let line = line.into();
        if !self.provenance.contains(&line) {
            self.provenance.push(line);
        }
    }

    /// Appends a validated square; duplicates of an existing 2-cell are
    /// kept and noted in the provenance.
    pub fn push_square(&mut self, boundary: Word) -> Result<usize> {
        if boundary.len() != 4 {
            return Err(Error::BoundaryLength(boundary.len()));
        }
        if !boundary.is_cyclically_reduced() {
            return Err(Error::CyclicCancellation(
                boundary.display(&self.alphabet).to_string(),
            ));
        }
        if let Some(letter) = boundary.letters().iter().find(|l| l.gen.0 >= self.alphabet.len()) {
            return Err(Error::AlphabetMismatch(letter.gen.0));
        }
        let id = self.squares.len();
        let duplicate = self
            .squares
            .iter()
            .find(|s| same_cell(&s.boundary, &boundary))
            .map(|s| s.id);
        self.squares.push(Square { id, boundary });
        if let Some(original) = duplicate {
            self.note(format!("square {id} duplicates square {original}"));
        }
        Ok(id)
    }

    pub fn push_square_text(&mut self, relator: &str) -> Result<usize> {
        let word = self.alphabet.parse_word(relator)?;
        self.push_square(word)
    }

    fn add_log_edge(&mut self, label: &str, from: &str, to: &str) -> Result<usize> {
        let lookup = |name: &str| {
            self.alphabet
                .get(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
        };
        let (a, u, v) = (lookup(label)?, lookup(from)?, lookup(to)?);
        self.push_square(Word(vec![
            Letter::pos(a),
            Letter::pos(v),
            Letter::neg(a),
            Letter::neg(u),
        ]))
    }

    /// Renders the text format; `parse_spec(&c.render()) == c`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.provenance {
            let _ = writeln!(out, "name {line}");
        }
        let _ = writeln!(out, "generators {}", self.alphabet.names().join(" "));
        for square in &self.squares {
            let _ = writeln!(out, "square {}", square.boundary.display(&self.alphabet));
        }
        out
    }
}

/// Same 2-cell: equal up to cyclic rotation and inversion.
fn same_cell(a: &Word, b: &Word) -> bool {
    let inv = b.inverse();
    (0..a.len()).any(|k| {
        let rotated = a.rotated(k);
        rotated == *b || rotated == inv
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the text format into a validated complex.
pub fn parse_spec(text: &str) -> Result<SquareComplex> {
    let mut complex = SquareComplex::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((line, ""));
        let with_line = |e: Error| match e {
            Error::Parse { .. } => e,
            other => parse_err(line_no, other.to_string()),
        };
        match keyword {
            "generators" => {
                for name in rest.split_whitespace() {
                    complex.alphabet.push(name).map_err(with_line)?;
                }
            }
            "edge" => {
                let (mut label, mut from, mut to) = (None, None, None);
                for field in rest.split_whitespace() {
                    let (key, value) = field
                        .split_once('=')
                        .ok_or_else(|| parse_err(line_no, format!("expected key=value, got `{field}`")))?;
                    let slot = match key {
                        "label" => &mut label,
                        "from" => &mut from,
                        "to" => &mut to,
                        _ => return Err(parse_err(line_no, format!("unknown edge field `{key}`"))),
                    };
                    *slot = Some(value);
                }
                match (label, from, to) {
                    (Some(l), Some(f), Some(t)) => {
                        complex.add_log_edge(l, f, t).map_err(with_line)?;
                    }
                    _ => return Err(parse_err(line_no, "edge needs label=, from= and to=")),
                }
            }
            "square" => {
                complex.push_square_text(rest).map_err(with_line)?;
            }
            "name" => complex.note(rest),
            other => return Err(parse_err(line_no, format!("unknown statement `{other}`"))),
        }
    }
    Ok(complex)
}

/// The labeled oriented tree with `k + 1` vertices and one vertex of
/// valence `k`: `x_k = x_i^{x_{i+1}}` for `i < k - 1` and
/// `x_{k-1} = x_k^{x_0}`.
pub fn build_lot_family(k: usize, stem: &str) -> Result<SquareComplex> {
    if k < 4 {
        return Err(Error::UnsupportedFamily(format!(
            "LOT family needs k >= 4, got {k}"
        )));
    }
    let names: Vec<String> = (0..=k).map(|i| format!("{stem}{i}")).collect();
    let mut complex = SquareComplex::new(Alphabet::from_names(&names)?);
    let g = |i: usize| GenId(i);
    for i in 0..k - 1 {
        complex.push_square(Word(vec![
            Letter::pos(g(i + 1)),
            Letter::pos(g(i)),
            Letter::neg(g(i + 1)),
            Letter::neg(g(k)),
        ]))?;
    }
    complex.push_square(Word(vec![
        Letter::pos(g(0)),
        Letter::pos(g(k)),
        Letter::neg(g(0)),
        Letter::neg(g(k - 1)),
    ]))?;
    complex.note(format!("L({k},{stem})"));
    Ok(complex)
}

pub const NAMED: [&str; 6] = ["lot-a", "lot-b", "g1", "gf", "g2", "torus"];

pub const G1_RELATOR: &str = "a0 b2 a1^-1 b0^-1";
pub const G2_RELATOR: &str = "a4 b1 a1^-1 b4^-1";

const GF_SQUARES: [&str; 6] = [
    "b2 a1 b2^-1 a4^-1",
    "b3 a2 b3^-1 a4^-1",
    "b1 a4 b1^-1 a3^-1",
    "a2 b1 a2^-1 b4^-1",
    "a3 b2 a3^-1 b4^-1",
    "a1 b4 a1^-1 b3^-1",
];

pub fn build_named(name: &str) -> Result<SquareComplex> {
    match name {
        "lot-a" => build_lot_family(4, "a"),
        "lot-b" => build_lot_family(4, "b"),
        "g1" => combine(&build_named("lot-a")?, &build_named("lot-b")?, G1_RELATOR),
        "gf" => {
            let names = ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"];
            let mut complex = SquareComplex::new(Alphabet::from_names(names)?);
            for relator in GF_SQUARES {
                complex.push_square_text(relator)?;
            }
            complex.note("LOF G_F");
            Ok(complex)
        }
        "g2" => add_square(&build_named("gf")?, G2_RELATOR),
        "torus" => {
            let mut complex = SquareComplex::new(Alphabet::from_names(["a", "b"])?);
            complex.push_square_text("a b a^-1 b^-1")?;
            complex.note("torus");
            Ok(complex)
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Wedge of two complexes at their vertex plus one square along `relator`,
/// which is appended last.
pub fn combine(first: &SquareComplex, second: &SquareComplex, relator: &str) -> Result<SquareComplex> {
    let mut alphabet = first.alphabet.clone();
    for name in second.alphabet.names() {
        alphabet.push(name).map_err(|e| match e {
            Error::DuplicateGenerator(n) => Error::AlphabetCollision(n),
            other => other,
        })?;
    }
    let offset = first.alphabet.len();
    let mut combined = SquareComplex::new(alphabet);
    let relator = combined.alphabet.parse_word(relator)?;
    for square in &first.squares {
        combined.push_square(square.boundary.clone())?;
    }
    for square in &second.squares {
        let shifted = square
            .boundary
            .letters()
            .iter()
            .map(|l| Letter {
                gen: GenId(l.gen.0 + offset),
                sign: l.sign,
            })
            .collect();
        combined.push_square(shifted)?;
    }
    let added = combined.push_square(relator)?;
    for line in first.provenance.iter().chain(&second.provenance) {
        combined.note(line.clone());
    }
    combined.note(format!(
        "combine: added square {added} = {}",
        combined.squares[added].boundary.display(&combined.alphabet)
    ));
    Ok(combined)
}

pub fn add_square(complex: &SquareComplex, relator: &str) -> Result<SquareComplex> {
    let mut out = complex.clone();
    let id = out.push_square_text(relator)?;
    out.note(format!(
        "add-square: added square {id} = {}",
        out.squares[id].boundary.display(&out.alphabet)
    ));
    Ok(out)
}
