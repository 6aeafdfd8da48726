//! Circle-valued Morse functions on single-vertex square complexes.
//!
//! A [`WeightSystem`] assigns a nonzero integer to every generator; it
//! lifts to an affine height on each square when the boundary has zero
//! weight sum and opposite sides carry opposite signed weights. The
//! ascending and descending links and the fiber over the vertex level
//! follow from the corner heights.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::SquareComplex;
use crate::error::{Error, Result};
use crate::lattice;
use crate::link::{corner_edge, CornerEdge, DirectionEnd, End};
use crate::words::{split_stem, Alphabet, GenId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightSystem {
    weights: Vec<i64>,
}

impl WeightSystem {
    pub fn new(weights: Vec<i64>) -> Self {
        WeightSystem { weights }
    }

    pub fn uniform(len: usize, weight: i64) -> Self {
        WeightSystem::new(vec![weight; len])
    }

    pub fn get(&self, gen: GenId) -> Option<i64> {
        self.weights.get(gen.0).copied()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn negated(&self) -> Self {
        WeightSystem::new(self.weights.iter().map(|w| -w).collect())
    }

    pub fn signs(&self) -> Self {
        WeightSystem::new(self.weights.iter().map(|w| w.signum()).collect())
    }

    /// Parses `a=1,b=2` style assignments. A key that names a generator
    /// sets that generator; otherwise it sets every generator with that
    /// alphabetic stem. Exact names win over stems regardless of order.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut by_stem: BTreeMap<&str, i64> = BTreeMap::new();
        let mut by_name: BTreeMap<GenId, i64> = BTreeMap::new();
        for entry in text.split([',', ' ']).filter(|e| !e.trim().is_empty()) {
            let (key, value) = entry
                .split_once('=')
                .ok_or_else(|| Error::InvalidWeights(format!("expected key=value, got `{entry}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let value: i64 = value
                .parse()
                .map_err(|_| Error::InvalidWeights(format!("`{value}` is not an integer")))?;
            if let Some(id) = alphabet.get(key) {
                by_name.insert(id, value);
            } else if alphabet.names().iter().any(|n| split_stem(n).0 == key) {
                by_stem.insert(key, value);
            } else {
                return Err(Error::InvalidWeights(format!("`{key}` matches no generator")));
            }
        }
        let weights = alphabet
            .ids()
            .map(|id| {
                by_name
                    .get(&id)
                    .or_else(|| by_stem.get(split_stem(alphabet.name(id)).0))
                    .copied()
                    .ok_or_else(|| {
                        Error::InvalidWeights(format!("no weight for `{}`", alphabet.name(id)))
                    })
            })
            .collect::<Result<_>>()?;
        Ok(WeightSystem::new(weights))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a WeightSystem, &'a Alphabet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, w) in self.0.weights.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}={}", self.1.name(GenId(i)), w)?;
                }
                Ok(())
            }
        }
        D(self, alphabet)
    }
}

/// Integer lattice of weight vectors with zero sum on every square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightLattice {
    pub basis: Vec<Vec<i64>>,
}

impl WeightLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn vector(&self, coords: &[i64]) -> Vec<i64> {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![0; n];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

fn abelianized_relators(complex: &SquareComplex) -> Vec<Vec<i64>> {
    complex
        .squares()
        .iter()
        .map(|s| {
            let mut row = vec![0; complex.alphabet().len()];
            for l in s.boundary.letters() {
                row[l.gen.0] += l.sign.as_i64();
            }
            row
        })
        .collect()
}

/// Basis (in Hermite normal form) of the integer solutions to the
/// zero-sum equations of all squares.
pub fn weight_lattice(complex: &SquareComplex) -> WeightLattice {
    let rows = abelianized_relators(complex);
    let kernel = lattice::integer_kernel(&rows, complex.alphabet().len());
    WeightLattice {
        basis: lattice::hermite_rows(kernel),
    }
}

/// Heights of the four corners relative to corner 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CornerHeights {
    pub heights: [i64; 4],
    pub min_corner: usize,
    pub max_corner: usize,
}

impl CornerHeights {
    pub fn min(&self) -> i64 {
        self.heights[self.min_corner]
    }

    pub fn max(&self) -> i64 {
        self.heights[self.max_corner]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub zero_weights: Vec<String>,
    pub nonzero_sum: Vec<usize>,
    pub affine_violations: Vec<usize>,
    #[serde(skip)]
    pub heights: Vec<CornerHeights>,
}

impl AdmissibilityReport {
    fn reason(&self) -> String {
        let mut parts = Vec::new();
        if !self.zero_weights.is_empty() {
            parts.push(format!("zero weight on {}", self.zero_weights.join(" ")));
        }
        if !self.nonzero_sum.is_empty() {
            parts.push(format!("nonzero sum on squares {:?}", self.nonzero_sum));
        }
        if !self.affine_violations.is_empty() {
            parts.push(format!("not affine on squares {:?}", self.affine_violations));
        }
        parts.join("; ")
    }
}

pub fn check_admissible(complex: &SquareComplex, ws: &WeightSystem) -> Result<AdmissibilityReport> {
    if ws.weights().len() != complex.alphabet().len() {
        return Err(Error::AlphabetMismatch(ws.weights().len()));
    }
    let zero_weights: Vec<String> = complex
        .alphabet()
        .ids()
        .filter(|&g| ws.get(g) == Some(0))
        .map(|g| complex.alphabet().name(g).to_string())
        .collect();
    let mut nonzero_sum = Vec::new();
    let mut affine_violations = Vec::new();
    let mut heights = Vec::new();
    for square in complex.squares() {
        let mut h = [0i64; 5];
        for (i, l) in square.boundary.letters().iter().enumerate() {
            h[i + 1] = h[i] + l.sign.as_i64() * ws.get(l.gen).unwrap_or(0);
        }
        if h[4] != 0 {
            nonzero_sum.push(square.id);
            continue;
        }
        if h[0] + h[2] != h[1] + h[3] {
            affine_violations.push(square.id);
            continue;
        }
        let hs = [h[0], h[1], h[2], h[3]];
        if zero_weights.is_empty() {
            heights.push(corner_heights(hs, square.id)?);
        }
    }
    let admissible = zero_weights.is_empty() && nonzero_sum.is_empty() && affine_violations.is_empty();
    Ok(AdmissibilityReport {
        admissible,
        zero_weights,
        nonzero_sum,
        affine_violations,
        heights: if admissible { heights } else { Vec::new() },
    })
}

fn corner_heights(heights: [i64; 4], square: usize) -> Result<CornerHeights> {
    let max = *heights.iter().max().unwrap_or(&0);
    let min = *heights.iter().min().unwrap_or(&0);
    let max_at: Vec<usize> = (0..4).filter(|&i| heights[i] == max).collect();
    let min_at: Vec<usize> = (0..4).filter(|&i| heights[i] == min).collect();
    match (max_at.as_slice(), min_at.as_slice()) {
        (&[hi], &[lo]) if (hi + 4 - lo) % 4 == 2 => Ok(CornerHeights {
            heights,
            min_corner: lo,
            max_corner: hi,
        }),
        _ => Err(Error::Internal(format!(
            "square {square}: extremal corners not unique and opposite in {heights:?}"
        ))),
    }
}

fn admissible_heights(complex: &SquareComplex, ws: &WeightSystem) -> Result<Vec<CornerHeights>> {
    let report = check_admissible(complex, ws)?;
    if !report.admissible {
        return Err(Error::Inadmissible(report.reason()));
    }
    Ok(report.heights)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Ascending,
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionalLink {
    pub side: Side,
    pub vertices: Vec<DirectionEnd>,
    pub edges: Vec<CornerEdge>,
    pub is_tree: bool,
    pub component_count: usize,
}

/// Minimal union-find over `0..n`.
pub(crate) struct Components {
    parent: Vec<usize>,
    pub merges: usize,
    pub cycles: usize,
}

impl Components {
    pub fn new(n: usize) -> Self {
        Components {
            parent: (0..n).collect(),
            merges: 0,
            cycles: 0,
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.cycles += 1;
        } else {
            self.parent[ra] = rb;
            self.merges += 1;
        }
    }

    pub fn count(&self) -> usize {
        self.parent.len() - self.merges
    }
}

fn directional_side(
    complex: &SquareComplex,
    ws: &WeightSystem,
    heights: &[CornerHeights],
    side: Side,
) -> Result<DirectionalLink> {
    // (g, start) ascends iff w(g) > 0
    let vertices: Vec<DirectionEnd> = complex
        .alphabet()
        .ids()
        .map(|gen| {
            let positive = ws.get(gen).unwrap_or(0) > 0;
            let end = match (side, positive) {
                (Side::Ascending, true) | (Side::Descending, false) => End::Start,
                _ => End::End,
            };
            DirectionEnd { gen, end }
        })
        .collect();
    let edges: Vec<CornerEdge> = heights
        .iter()
        .enumerate()
        .map(|(s, h)| {
            let corner = match side {
                Side::Ascending => h.min_corner,
                Side::Descending => h.max_corner,
            };
            corner_edge(complex, s, corner)
        })
        .collect();
    let mut comps = Components::new(vertices.len());
    for e in &edges {
        for end in [e.endpoints.0, e.endpoints.1] {
            if vertices[end.gen.0] != end {
                return Err(Error::Internal(format!(
                    "square {} corner {} leaves the {:?} link",
                    e.square, e.corner, side
                )));
            }
        }
        comps.union(e.endpoints.0.gen.0, e.endpoints.1.gen.0);
    }
    let component_count = comps.count();
    Ok(DirectionalLink {
        side,
        vertices,
        edges,
        is_tree: component_count == 1 && comps.cycles == 0,
        component_count,
    })
}

pub fn directional_links(
    complex: &SquareComplex,
    ws: &WeightSystem,
) -> Result<(DirectionalLink, DirectionalLink)> {
    let heights = admissible_heights(complex, ws)?;
    Ok((
        directional_side(complex, ws, &heights, Side::Ascending)?,
        directional_side(complex, ws, &heights, Side::Descending)?,
    ))
}

/// A point of the vertex-level fiber: the base vertex or an interior
/// point `index` (1..|w|-1, counted from the start of the edge) of a
/// generator edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberPoint {
    Base,
    Interior { gen: GenId, index: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberArc {
    pub square: usize,
    /// Height above the square's minimum corner.
    pub level: i64,
    pub ends: (FiberPoint, FiberPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGraph {
    pub vertices: Vec<FiberPoint>,
    pub arcs: Vec<FiberArc>,
    pub chi: i64,
    pub components: usize,
    pub connected: bool,
}

/// Where level `level` crosses the boundary letter running from corner
/// `from` (height `h_from`) to the next corner (height `h_to`).
fn crossing(complex: &SquareComplex, square: usize, letter_pos: usize, h_from: i64, h_to: i64, level: i64) -> FiberPoint {
    if level == h_from || level == h_to {
        return FiberPoint::Base;
    }
    let letter = complex.square(square).letter(letter_pos);
    // height at the start of the generator edge
    let h_gen_start = match letter.sign {
        crate::words::Sign::Pos => h_from,
        crate::words::Sign::Neg => h_to,
    };
    FiberPoint::Interior {
        gen: letter.gen,
        index: (level - h_gen_start).abs(),
    }
}

/// Preimage of the vertex level, subdivided: one arc per integer level
/// strictly between a square's minimum and maximum corner.
pub fn fiber_graph(complex: &SquareComplex, ws: &WeightSystem) -> Result<FiberGraph> {
    let heights = admissible_heights(complex, ws)?;
    let mut vertices = vec![FiberPoint::Base];
    let mut offsets = Vec::with_capacity(complex.alphabet().len());
    for gen in complex.alphabet().ids() {
        offsets.push(vertices.len());
        let w = ws.get(gen).unwrap_or(0).abs();
        vertices.extend((1..w).map(|index| FiberPoint::Interior { gen, index }));
    }
    let vertex_id = |p: FiberPoint| match p {
        FiberPoint::Base => 0,
        FiberPoint::Interior { gen, index } => offsets[gen.0] + index as usize - 1,
    };
    let mut arcs = Vec::new();
    for (s, h) in heights.iter().enumerate() {
        let lo = h.min_corner;
        // the two monotone paths: corners lo, lo+1, lo+2 and lo, lo-1, lo-2
        let locate = |level: i64, forward: bool| -> FiberPoint {
            let c1 = if forward { (lo + 1) % 4 } else { (lo + 3) % 4 };
            let (a, b) = if level <= h.heights[c1] { (lo, c1) } else { (c1, (lo + 2) % 4) };
            // letter between corners a and b, in boundary order
            let (first, second) = if (a + 1) % 4 == b { (a, b) } else { (b, a) };
            crossing(complex, s, first, h.heights[first], h.heights[second], level)
        };
        for level in h.min() + 1..h.max() {
            arcs.push(FiberArc {
                square: s,
                level: level - h.min(),
                ends: (locate(level, true), locate(level, false)),
            });
        }
    }
    let mut comps = Components::new(vertices.len());
    for arc in &arcs {
        comps.union(vertex_id(arc.ends.0), vertex_id(arc.ends.1));
    }
    let components = comps.count();
    Ok(FiberGraph {
        chi: vertices.len() as i64 - arcs.len() as i64,
        vertices,
        arcs,
        components,
        connected: components == 1,
    })
}

/// `1 + sum(|w| - 1) - sum(height range - 1)`, from corner heights alone.
pub fn fiber_chi_closed_form(complex: &SquareComplex, ws: &WeightSystem) -> Result<i64> {
    let heights = admissible_heights(complex, ws)?;
    let vertices: i64 = 1 + ws.weights().iter().map(|w| w.abs() - 1).sum::<i64>();
    let edges: i64 = heights.iter().map(|h| h.max() - h.min() - 1).sum();
    Ok(vertices - edges)
}

/// Rank of the free kernel, `1 - chi` of the fiber.
pub fn kernel_rank(complex: &SquareComplex, ws: &WeightSystem) -> Result<i64> {
    let (asc, desc) = directional_links(complex, ws)?;
    if !asc.is_tree {
        return Err(Error::Precondition(format!(
            "ascending link is not a tree ({} components)",
            asc.component_count
        )));
    }
    if !desc.is_tree {
        return Err(Error::Precondition(format!(
            "descending link is not a tree ({} components)",
            desc.component_count
        )));
    }
    let fiber = fiber_graph(complex, ws)?;
    if !fiber.connected {
        return Err(Error::Precondition(format!(
            "fiber is disconnected ({} components)",
            fiber.components
        )));
    }
    Ok(1 - fiber.chi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberingRow {
    pub coords: Vec<i64>,
    pub weights: Vec<i64>,
    pub admissible: bool,
    pub asc_tree: bool,
    pub desc_tree: bool,
    pub chi: Option<i64>,
    pub components: Option<usize>,
    pub rank: Option<i64>,
    pub primitive: bool,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn fibering_row(complex: &SquareComplex, coords: Vec<i64>, weights: Vec<i64>) -> Result<FiberingRow> {
    let ws = WeightSystem::new(weights);
    let primitive = coords.iter().fold(0, |g, &c| gcd(g, c)) == 1;
    let admissible = check_admissible(complex, &ws)?.admissible;
    let mut row = FiberingRow {
        coords,
        weights: ws.weights().to_vec(),
        admissible,
        asc_tree: false,
        desc_tree: false,
        chi: None,
        components: None,
        rank: None,
        primitive,
    };
    if admissible {
        let (asc, desc) = directional_links(complex, &ws)?;
        let fiber = fiber_graph(complex, &ws)?;
        row.asc_tree = asc.is_tree;
        row.desc_tree = desc.is_tree;
        row.chi = Some(fiber.chi);
        row.components = Some(fiber.components);
        if asc.is_tree && desc.is_tree && fiber.connected {
            row.rank = Some(1 - fiber.chi);
        }
    }
    Ok(row)
}

/// Every lattice vector with coordinates in `[-bound, bound]` and no zero
/// generator weight, in lexicographic coordinate order.
pub fn fibering_scan(complex: &SquareComplex, bound: i64) -> Result<Vec<FiberingRow>> {
    let lattice = weight_lattice(complex);
    let rank = lattice.rank();
    let mut rows = Vec::new();
    if rank == 0 {
        return Ok(rows);
    }
    let mut coords = vec![-bound; rank];
    loop {
        let weights = lattice.vector(&coords);
        if weights.iter().all(|&w| w != 0) {
            rows.push(fibering_row(complex, coords.clone(), weights)?);
        }
        // odometer increment, last coordinate fastest
        let mut i = rank;
        loop {
            if i == 0 {
                return Ok(rows);
            }
            i -= 1;
            if coords[i] < bound {
                coords[i] += 1;
                break;
            }
            coords[i] = -bound;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberingVerdict {
    pub infinite: bool,
    pub lattice_rank: usize,
    /// Sign of each lattice coordinate in the witnessing orthant.
    pub orthant: Option<Vec<i64>>,
    pub witness_weights: Option<Vec<i64>>,
    pub reason: String,
}

/// Directional links depend only on weight signs, and admissibility is
/// linear, so an orthant of the lattice in which every generator keeps
/// one sign and every basis vector satisfies the affine conditions is
/// settled by checking one representative.
pub fn infinite_fibering_verdict(complex: &SquareComplex) -> Result<FiberingVerdict> {
    let lattice = weight_lattice(complex);
    let rank = lattice.rank();
    let mut verdict = FiberingVerdict {
        infinite: false,
        lattice_rank: rank,
        orthant: None,
        witness_weights: None,
        reason: String::new(),
    };
    if rank < 2 {
        verdict.reason = format!("weight lattice has rank {rank}");
        return Ok(verdict);
    }
    let basis_affine = lattice
        .basis
        .iter()
        .all(|b| affine_holds(complex, b));
    for mask in 0..(1u32 << rank) {
        let signs: Vec<i64> = (0..rank).rev().map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let stable = (0..complex.alphabet().len()).all(|g| {
            let contributions: Vec<i64> = lattice
                .basis
                .iter()
                .zip(&signs)
                .map(|(b, s)| (b[g] * s).signum())
                .filter(|&x| x != 0)
                .collect();
            !contributions.is_empty() && contributions.iter().all(|&x| x == contributions[0])
        });
        if !stable || !basis_affine {
            continue;
        }
        let rep = lattice.vector(&signs);
        let ws = WeightSystem::new(rep.clone());
        if !check_admissible(complex, &ws)?.admissible {
            continue;
        }
        let (asc, desc) = directional_links(complex, &ws)?;
        if asc.is_tree && desc.is_tree {
            verdict.infinite = true;
            verdict.orthant = Some(signs);
            verdict.witness_weights = Some(rep);
            verdict.reason = "an open orthant of rank >= 2 consists of tree fiberings".into();
            return Ok(verdict);
        }
    }
    verdict.reason = "no sign-stable orthant has tree ascending and descending links".into();
    Ok(verdict)
}

/// Opposite sides of every square carry opposite signed weights.
fn affine_holds(complex: &SquareComplex, weights: &[i64]) -> bool {
    complex.squares().iter().all(|s| {
        let w: Vec<i64> = s
            .boundary
            .letters()
            .iter()
            .map(|l| l.sign.as_i64() * weights[l.gen.0])
            .collect();
        w[0] + w[2] == 0 && w[1] + w[3] == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_lot_family, build_named, combine, parse_spec, G1_RELATOR};
    use proptest::prelude::*;

    fn ab_weights(c: &SquareComplex, m: i64, n: i64) -> WeightSystem {
        WeightSystem::parse(&format!("a={m},b={n}"), c.alphabet()).unwrap()
    }

    #[test]
    fn weight_parsing() {
        let c = build_named("g1").unwrap();
        let ws = WeightSystem::parse("a=1,b=2,b3=5", c.alphabet()).unwrap();
        assert_eq!(ws.weights(), &[1, 1, 1, 1, 1, 2, 2, 2, 5, 2]);
        let ws = WeightSystem::parse("b3=5 a=1 b=2", c.alphabet()).unwrap();
        assert_eq!(ws.get(GenId(8)), Some(5));
        assert!(WeightSystem::parse("a=1", c.alphabet()).is_err());
        assert!(WeightSystem::parse("a=1,b=x", c.alphabet()).is_err());
        assert!(WeightSystem::parse("a=1,b=1,c=1", c.alphabet()).is_err());
        let t = build_named("torus").unwrap();
        assert_eq!(WeightSystem::parse("a=1,b=1", t.alphabet()).unwrap().weights(), &[1, 1]);
    }

    #[test]
    fn lattice_ranks() {
        let lot = weight_lattice(&build_named("lot-a").unwrap());
        assert_eq!(lot.basis, vec![vec![1; 5]]);
        let g1 = weight_lattice(&build_named("g1").unwrap());
        assert_eq!(
            g1.basis,
            vec![
                vec![1, 1, 1, 1, 1, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1]
            ]
        );
        assert_eq!(weight_lattice(&build_named("g2").unwrap()).rank(), 2);
        assert_eq!(weight_lattice(&build_named("torus").unwrap()).rank(), 2);
    }

    #[test]
    fn g1_added_square_heights() {
        let c = build_named("g1").unwrap();
        let r = check_admissible(&c, &ab_weights(&c, 1, 1)).unwrap();
        assert!(r.admissible);
        assert_eq!(r.heights[8].heights, [0, 1, 2, 1]);
        let r = check_admissible(&c, &ab_weights(&c, 2, 3)).unwrap();
        assert_eq!(r.heights[8].heights, [0, 2, 5, 3]);
        let r = check_admissible(&c, &ab_weights(&c, 0, 1)).unwrap();
        assert!(!r.admissible);
        assert_eq!(r.zero_weights.len(), 5);
        assert!(matches!(
            directional_links(&c, &ab_weights(&c, 0, 1)),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn nonaffine_and_nonzero_sum_reported() {
        let c = parse_spec("generators a b c d\nsquare a b c d").unwrap();
        let r = check_admissible(&c, &WeightSystem::new(vec![1, 1, 1, -3])).unwrap();
        assert_eq!(r.affine_violations, vec![0]);
        assert!(!r.admissible);
        let r = check_admissible(&c, &WeightSystem::new(vec![1, 1, 1, 1])).unwrap();
        assert_eq!(r.nonzero_sum, vec![0]);
        assert!(!r.admissible);
    }

    #[test]
    fn directional_link_examples() {
        let lot = build_named("lot-a").unwrap();
        let (asc, desc) = directional_links(&lot, &WeightSystem::uniform(5, 1)).unwrap();
        for side in [&asc, &desc] {
            assert!(side.is_tree);
            assert_eq!((side.vertices.len(), side.edges.len()), (5, 4));
        }
        let gf = build_named("gf").unwrap();
        let (asc, desc) = directional_links(&gf, &WeightSystem::uniform(8, 1)).unwrap();
        assert_eq!((asc.component_count, desc.component_count), (2, 2));
        assert!(!asc.is_tree && !desc.is_tree);
        let g2 = build_named("g2").unwrap();
        let (asc, desc) = directional_links(&g2, &WeightSystem::uniform(8, 1)).unwrap();
        assert!(asc.is_tree && desc.is_tree);
    }

    #[test]
    fn fiber_examples() {
        let lot = build_named("lot-a").unwrap();
        let f = fiber_graph(&lot, &WeightSystem::uniform(5, 1)).unwrap();
        assert_eq!((f.vertices.len(), f.arcs.len(), f.chi), (1, 4, -3));
        let g2 = build_named("g2").unwrap();
        let f = fiber_graph(&g2, &WeightSystem::uniform(8, 1)).unwrap();
        assert_eq!((f.vertices.len(), f.arcs.len(), f.chi), (1, 7, -6));
        assert!(f.arcs.iter().all(|a| a.ends == (FiberPoint::Base, FiberPoint::Base)));
        let g1 = build_named("g1").unwrap();
        for (m, n) in [(1, 1), (2, 3), (3, 2), (1, 4)] {
            let f = fiber_graph(&g1, &ab_weights(&g1, m, n)).unwrap();
            assert_eq!(f.chi, -(4 * m + 4 * n));
            assert!(f.connected);
        }
    }

    #[test]
    fn kernel_rank_examples() {
        let g1 = build_named("g1").unwrap();
        assert_eq!(kernel_rank(&g1, &ab_weights(&g1, 1, 1)).unwrap(), 9);
        let g2 = build_named("g2").unwrap();
        assert_eq!(kernel_rank(&g2, &ab_weights(&g2, 1, 1)).unwrap(), 7);
        assert_eq!(kernel_rank(&g2, &ab_weights(&g2, 2, 3)).unwrap(), 16);
        let gf = build_named("gf").unwrap();
        assert!(matches!(
            kernel_rank(&gf, &ab_weights(&gf, 1, 1)),
            Err(Error::Precondition(_))
        ));
        let err = kernel_rank(&g1, &ab_weights(&g1, 2, 2)).unwrap_err();
        assert!(err.to_string().contains("disconnected"));
    }

    #[test]
    fn torus_rank_is_one() {
        let t = build_named("torus").unwrap();
        assert_eq!(kernel_rank(&t, &WeightSystem::uniform(2, 1)).unwrap(), 1);
    }

    #[test]
    fn scan_rows() {
        let g2 = build_named("g2").unwrap();
        let rows = fibering_scan(&g2, 3).unwrap();
        let row = rows.iter().find(|r| r.coords == [1, 2]).unwrap();
        assert_eq!(row.rank, Some(10));
        let g1 = build_named("g1").unwrap();
        let rows = fibering_scan(&g1, 1).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows.iter().find(|r| r.coords == [1, 1]).unwrap().rank, Some(9));
        let rows = fibering_scan(&g1, 2).unwrap();
        let twice = rows.iter().find(|r| r.coords == [2, 2]).unwrap();
        assert!(!twice.primitive);
        assert_eq!(twice.chi, Some(-16));
        assert_eq!(twice.components, Some(2));
        assert_eq!(twice.rank, None);
        let coords: Vec<_> = rows.iter().map(|r| r.coords.clone()).collect();
        let mut sorted = coords.clone();
        sorted.sort();
        assert_eq!(coords, sorted);
    }

    #[test]
    fn infinite_fibering_examples() {
        let g1 = infinite_fibering_verdict(&build_named("g1").unwrap()).unwrap();
        assert!(g1.infinite);
        assert_eq!(g1.orthant, Some(vec![1, 1]));
        let lot = infinite_fibering_verdict(&build_named("lot-a").unwrap()).unwrap();
        assert!(!lot.infinite);
        assert_eq!(lot.lattice_rank, 1);
        assert!(infinite_fibering_verdict(&build_named("g2").unwrap()).unwrap().infinite);
    }

    #[test]
    fn mixed_family_rank() {
        let c = combine(
            &build_lot_family(5, "a").unwrap(),
            &build_lot_family(6, "b").unwrap(),
            G1_RELATOR,
        )
        .unwrap();
        for (m, n) in [(1, 1), (1, 2), (3, 2)] {
            assert_eq!(kernel_rank(&c, &ab_weights(&c, m, n)).unwrap(), 5 * m + 6 * n + 1);
        }
    }

    fn admissible_sample() -> impl Strategy<Value = (&'static str, i64, i64)> {
        let nz = prop_oneof![-6i64..=-1, 1i64..=6];
        (prop_oneof![Just("g1"), Just("g2"), Just("lot-a")], nz.clone(), nz)
    }

    proptest! {
        #[test]
        fn chi_explicit_matches_closed_form((name, m, n) in admissible_sample()) {
            let c = build_named(name).unwrap();
            let ws = if name == "lot-a" { WeightSystem::uniform(5, m) } else { ab_weights(&c, m, n) };
            let f = fiber_graph(&c, &ws).unwrap();
            prop_assert_eq!(f.chi, fiber_chi_closed_form(&c, &ws).unwrap());
        }

        #[test]
        fn directional_links_depend_on_signs((name, m, n) in admissible_sample()) {
            let c = build_named(name).unwrap();
            let ws = if name == "lot-a" { WeightSystem::uniform(5, m) } else { ab_weights(&c, m, n) };
            let full = directional_links(&c, &ws).unwrap();
            let signs = directional_links(&c, &ws.signs()).unwrap();
            prop_assert_eq!(&full, &signs);
            let (asc, desc) = full;
            prop_assert_eq!(asc.edges.len(), c.squares().len());
            prop_assert_eq!(desc.edges.len(), c.squares().len());
            let (nasc, ndesc) = directional_links(&c, &ws.negated()).unwrap();
            prop_assert_eq!((&nasc.vertices, &nasc.edges), (&desc.vertices, &desc.edges));
            prop_assert_eq!((&ndesc.vertices, &ndesc.edges), (&asc.vertices, &asc.edges));
        }

        #[test]
        fn rank_equals_cycle_rank((name, m, n) in admissible_sample()) {
            let c = build_named(name).unwrap();
            let ws = if name == "lot-a" { WeightSystem::uniform(5, m) } else { ab_weights(&c, m, n) };
            if let Ok(rank) = kernel_rank(&c, &ws) {
                let f = fiber_graph(&c, &ws).unwrap();
                prop_assert_eq!(rank, f.arcs.len() as i64 - f.vertices.len() as i64 + 1);
            }
        }
    }
}
