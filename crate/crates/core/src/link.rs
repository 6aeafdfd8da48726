//! The link of the unique vertex.
//!
//! Every generator `g` contributes two link vertices: `g+` is the end of
//! `g` (where `g` arrives) and `g-` its start. The corner between
//! consecutive boundary letters `x y` joins the arrival end of `x` to the
//! departure end of `y`. Square corners have angle pi/2, so the link
//! condition is combinatorial girth at least 4.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::complex::SquareComplex;
use crate::words::{GenId, Letter, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    /// Written `g+`.
    End,
    /// Written `g-`.
    Start,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectionEnd {
    pub gen: GenId,
    pub end: End,
}

impl DirectionEnd {
    pub fn index(self) -> usize {
        2 * self.gen.0 + usize::from(self.end == End::Start)
    }

    pub fn from_index(index: usize) -> Self {
        DirectionEnd {
            gen: GenId(index / 2),
            end: if index.is_multiple_of(2) { End::End } else { End::Start },
        }
    }

    pub fn label(self, names: &[String]) -> String {
        let mark = match self.end {
            End::End => '+',
            End::Start => '-',
        };
        format!("{}{}", names[self.gen.0], mark)
    }
}

/// The end of the edge a letter arrives at.
pub fn arrival(letter: Letter) -> DirectionEnd {
    let end = match letter.sign {
        Sign::Pos => End::End,
        Sign::Neg => End::Start,
    };
    DirectionEnd {
        gen: letter.gen,
        end,
    }
}

/// The end of the edge a letter leaves from.
pub fn departure(letter: Letter) -> DirectionEnd {
    arrival(letter.inverse())
}

/// Corner `corner` of a square sits between letters `corner - 1` and
/// `corner` (cyclically); corner 0 is where the boundary starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CornerEdge {
    pub square: usize,
    pub corner: usize,
    pub endpoints: (DirectionEnd, DirectionEnd),
}

impl CornerEdge {
    pub fn is_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }

    pub fn vertex_pair(&self) -> (usize, usize) {
        let (a, b) = (self.endpoints.0.index(), self.endpoints.1.index());
        (a.min(b), a.max(b))
    }

    pub fn other(&self, vertex: usize) -> usize {
        let (a, b) = (self.endpoints.0.index(), self.endpoints.1.index());
        if a == vertex {
            b
        } else {
            a
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    names: Vec<String>,
    edges: Vec<CornerEdge>,
    /// Per square: whether it is a conjugation relator.
    conjugation: Vec<bool>,
}

pub fn corner_edge(complex: &SquareComplex, square: usize, corner: usize) -> CornerEdge {
    let s = complex.square(square);
    let before = s.letter(corner + 3);
    let after = s.letter(corner);
    CornerEdge {
        square,
        corner,
        endpoints: (arrival(before), departure(after)),
    }
}

pub fn build_link(complex: &SquareComplex) -> LinkGraph {
    let edges = complex
        .squares()
        .iter()
        .flat_map(|s| (0..4).map(move |c| (s.id, c)))
        .map(|(s, c)| corner_edge(complex, s, c))
        .collect();
    LinkGraph {
        names: complex.alphabet().names().to_vec(),
        edges,
        conjugation: complex
            .squares()
            .iter()
            .map(|s| s.conjugation_label().is_some())
            .collect(),
    }
}

impl LinkGraph {
    pub fn vertex_count(&self) -> usize {
        2 * self.names.len()
    }

    pub fn edges(&self) -> &[CornerEdge] {
        &self.edges
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the edge for `(square, corner)`.
    pub fn edge_index(&self, square: usize, corner: usize) -> usize {
        4 * square + corner
    }

    pub fn vertex_label(&self, index: usize) -> String {
        DirectionEnd::from_index(index).label(&self.names)
    }

    pub fn edge_label(&self, edge: &CornerEdge) -> String {
        format!(
            "{}{}",
            edge.endpoints.0.label(&self.names),
            edge.endpoints.1.label(&self.names)
        )
    }

    /// Adjacency lists `(edge index, neighbour)` without loops.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            let (a, b) = (e.endpoints.0.index(), e.endpoints.1.index());
            adj[a].push((i, b));
            adj[b].push((i, a));
        }
        adj
    }

    fn multiplicity(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut mult = vec![vec![0; n]; n];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            let (a, b) = e.vertex_pair();
            mult[a][b] += 1;
            mult[b][a] += 1;
        }
        mult
    }

    /// Length of the shortest cycle using edge `index`, if any.
    pub fn shortest_cycle_through(&self, index: usize) -> Option<usize> {
        let edge = self.edges[index];
        if edge.is_loop() {
            return Some(1);
        }
        let (start, goal) = (edge.endpoints.0.index(), edge.endpoints.1.index());
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adj[v] {
                if e == index || dist[w] != usize::MAX {
                    continue;
                }
                dist[w] = dist[v] + 1;
                if w == goal {
                    return Some(dist[w] + 1);
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// Exact girth of the multigraph: 1 with a loop, 2 with parallel
    /// edges, otherwise the shortest simple cycle. `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        if self.edges.iter().any(CornerEdge::is_loop) {
            return Some(1);
        }
        let mult = self.multiplicity();
        if mult.iter().flatten().any(|&m| m > 1) {
            return Some(2);
        }
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for w in (0..n).filter(|&w| mult[v][w] > 0) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Loop { corners: Vec<(usize, usize)> },
    Bigon { corners: Vec<(usize, usize)> },
    Triangle { corners: Vec<(usize, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargenessReport {
    pub is_large: bool,
    pub violations: Vec<Violation>,
    pub girth: Option<usize>,
}

/// Enumerates every loop, parallel pair and triangle of the link.
pub fn largeness(link: &LinkGraph) -> LargenessReport {
    let edges = link.edges();
    let sc = |e: &CornerEdge| (e.square, e.corner);
    let mut violations = Vec::new();
    for e in edges.iter().filter(|e| e.is_loop()) {
        violations.push(Violation::Loop {
            corners: vec![sc(e)],
        });
    }
    let proper: Vec<&CornerEdge> = edges.iter().filter(|e| !e.is_loop()).collect();
    for (i, e) in proper.iter().enumerate() {
        for f in &proper[i + 1..] {
            if e.vertex_pair() == f.vertex_pair() {
                violations.push(Violation::Bigon {
                    corners: vec![sc(e), sc(f)],
                });
            }
        }
    }
    for (i, e) in proper.iter().enumerate() {
        for (j, f) in proper.iter().enumerate().skip(i + 1) {
            for g in &proper[j + 1..] {
                let mut vs: Vec<usize> = [e, f, g]
                    .iter()
                    .flat_map(|x| [x.vertex_pair().0, x.vertex_pair().1])
                    .collect();
                vs.sort_unstable();
                let distinct_pairs = e.vertex_pair() != f.vertex_pair()
                    && f.vertex_pair() != g.vertex_pair()
                    && e.vertex_pair() != g.vertex_pair();
                // three distinct vertex pairs covering each of three vertices twice
                if distinct_pairs && vs.chunks(2).all(|c| c[0] == c[1]) && {
                    let mut d = vs.clone();
                    d.dedup();
                    d.len() == 3
                } {
                    violations.push(Violation::Triangle {
                        corners: vec![sc(e), sc(f), sc(g)],
                    });
                }
            }
        }
    }
    LargenessReport {
        is_large: violations.is_empty(),
        violations,
        girth: link.girth(),
    }
}

/// Corners whose link edge lies on no circuit of length four: no closed
/// walk of four non-loop edges without immediate backtracking (taken
/// cyclically) passes through it.
pub fn poison_corners(complex: &SquareComplex) -> Vec<CornerEdge> {
    let link = build_link(complex);
    let adj = link.adjacency();
    let mult = link.multiplicity();
    link.edges()
        .iter()
        .enumerate()
        .filter(|&(index, edge)| !on_four_circuit(&link, &adj, &mult, index, edge))
        .map(|(_, edge)| *edge)
        .collect()
}

fn on_four_circuit(
    link: &LinkGraph,
    adj: &[Vec<(usize, usize)>],
    mult: &[Vec<usize>],
    index: usize,
    edge: &CornerEdge,
) -> bool {
    if edge.is_loop() {
        return false;
    }
    let (u, v) = (edge.endpoints.0.index(), edge.endpoints.1.index());
    // u -e-> v -e2-> p -e3-> q -e4-> u
    for &(e2, p) in &adj[v] {
        if e2 == index {
            continue;
        }
        for &(e3, q) in &adj[p] {
            if e3 == e2 {
                continue;
            }
            // candidate closing edges between q and u, excluding e3 and e
            let mut available = mult[q][u];
            let joins_qu = |e: usize| {
                let (a, b) = link.edges()[e].vertex_pair();
                (a, b) == (q.min(u), q.max(u))
            };
            if joins_qu(e3) {
                available -= 1;
            }
            if e3 != index && joins_qu(index) {
                available -= 1;
            }
            if available > 0 {
                return true;
            }
        }
    }
    false
}

/// Subgraph of the link to draw in bold.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Highlight {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

/// Undirected DOT rendering. Vertices appear in index order; edges of
/// squares that are not conjugation relators are dashed.
pub fn export_dot(link: &LinkGraph, highlight: Option<&Highlight>) -> String {
    let mut out = String::from("graph link {\n  node [shape=circle];\n");
    let bold_vertex = |v: usize| highlight.is_some_and(|h| h.vertices.contains(&v));
    let bold_edge = |e: usize| highlight.is_some_and(|h| h.edges.contains(&e));
    for v in 0..link.vertex_count() {
        let style = if bold_vertex(v) { " [style=bold, penwidth=2]" } else { "" };
        let _ = writeln!(out, "  \"{}\"{};", link.vertex_label(v), style);
    }
    for (i, e) in link.edges().iter().enumerate() {
        let mut attrs = vec![format!("label=\"s{}c{}\"", e.square, e.corner)];
        let mut styles = Vec::new();
        if bold_edge(i) {
            styles.push("bold");
            attrs.push("penwidth=3".into());
        }
        if !link.conjugation.get(e.square).copied().unwrap_or(true) {
            styles.push("dashed");
        }
        if !styles.is_empty() {
            attrs.push(format!("style=\"{}\"", styles.join(",")));
        }
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [{}];",
            e.endpoints.0.label(&link.names),
            e.endpoints.1.label(&link.names),
            attrs.join(", ")
        );
    }
    out.push_str("}\n");
    out
}

impl fmt::Display for LargenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.girth {
            Some(g) => write!(f, "girth {g}, ")?,
            None => write!(f, "girth inf, ")?,
        }
        write!(f, "large: {}", self.is_large)
    }
}
