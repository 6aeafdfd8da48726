//! Flat-plane obstruction search.
//!
//! A flat plane in the universal cover is tiled by squares with every
//! corner on a 4-circuit of the link, so squares carrying a poison corner
//! never appear in one. When no square is eligible the complex is
//! certified directly; otherwise we try to develop a disk of eligible
//! squares on the unit grid around a seed square and report the first
//! radius at which that fails.
//!
//! The disk of radius `r` is the set of grid cells `(x, y)` with
//! `max(|x|, |y|) < r`; cell `(x, y)` is `[x, x+1] x [y, y+1]` and the
//! seed occupies `(0, 0)`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::SquareComplex;
use crate::error::{Error, Result};
use crate::link::{build_link, corner_edge, largeness, poison_corners, DirectionEnd, End};
use crate::words::{GenId, Sign};

/// Squares with no poison corner.
pub fn eligible_squares(complex: &SquareComplex) -> Vec<usize> {
    let poisoned: BTreeSet<usize> = poison_corners(complex).iter().map(|e| e.square).collect();
    (0..complex.squares().len())
        .filter(|s| !poisoned.contains(s))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Placement {
    pub x: i64,
    pub y: i64,
    pub square: usize,
    pub rot: u8,
    pub refl: bool,
}

impl Placement {
    /// Cell corner (0 = bottom-left, counter-clockwise) holding square
    /// corner `k`.
    fn position(&self, k: usize) -> usize {
        let k = k % 4;
        let rot = usize::from(self.rot);
        if self.refl {
            (rot + 4 - k) % 4
        } else {
            (rot + k) % 4
        }
    }

    fn point(&self, position: usize) -> (i64, i64) {
        const OFFSETS: [(i64, i64); 4] = [(0, 0), (1, 0), (1, 1), (0, 1)];
        let (dx, dy) = OFFSETS[position];
        (self.x + dx, self.y + dy)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiskWitness {
    pub radius: i64,
    pub placements: Vec<Placement>,
}

pub fn disk_cells(radius: i64) -> Vec<(i64, i64)> {
    let r = radius - 1;
    let mut cells: Vec<(i64, i64)> = (-r..=r).flat_map(|x| (-r..=r).map(move |y| (x, y))).collect();
    // by ring, then counter-clockwise from the positive x axis
    cells.sort_by(|a, b| {
        let ring = |c: &(i64, i64)| c.0.abs().max(c.1.abs());
        let angle = |c: &(i64, i64)| {
            let t = (c.1 as f64).atan2(c.0 as f64);
            if t < 0.0 {
                t + std::f64::consts::TAU
            } else {
                t
            }
        };
        ring(a)
            .cmp(&ring(b))
            .then(angle(a).total_cmp(&angle(b)))
    });
    cells
}

type Point = (i64, i64);
type EdgeKey = (Point, Point);

struct Search<'a> {
    complex: &'a SquareComplex,
    eligible: Vec<usize>,
    cells: Vec<(i64, i64)>,
    /// grid edge -> (generator, point where the generator starts)
    edges: HashMap<EdgeKey, (GenId, Point)>,
    /// grid vertex -> link edge endpoints per quadrant slot
    vertices: HashMap<Point, [Option<(usize, usize)>; 4]>,
    placed: Vec<Placement>,
}

impl<'a> Search<'a> {
    fn letter_edge(&self, p: &Placement, k: usize) -> (EdgeKey, (GenId, Point)) {
        let letter = self.complex.square(p.square).letter(k);
        let a = p.point(p.position(k));
        let b = p.point(p.position(k + 1));
        let start = match letter.sign {
            Sign::Pos => a,
            Sign::Neg => b,
        };
        ((a.min(b), a.max(b)), (letter.gen, start))
    }

    /// Checks `p` against everything placed so far and records it.
    fn try_place(&mut self, p: Placement) -> bool {
        let mut new_edges = Vec::new();
        for k in 0..4 {
            let (key, label) = self.letter_edge(&p, k);
            match self.edges.get(&key) {
                Some(existing) if *existing != label => return false,
                Some(_) => {}
                None => new_edges.push((key, label)),
            }
        }
        let mut new_corners = Vec::new();
        for k in 0..4 {
            let position = p.position(k);
            let v = p.point(position);
            let e = corner_edge(self.complex, p.square, k);
            let ends = (e.endpoints.0.index(), e.endpoints.1.index());
            let slots = self.vertices.get(&v).copied().unwrap_or_default();
            if !corner_fits(&slots, position, ends) {
                return false;
            }
            new_corners.push((v, position, ends));
        }
        for (key, label) in new_edges {
            self.edges.insert(key, label);
        }
        for (v, slot, ends) in new_corners {
            self.vertices.entry(v).or_default()[slot] = Some(ends);
        }
        self.placed.push(p);
        true
    }

    fn undo(&mut self) {
        let p = self.placed.pop().expect("undo without placement");
        for k in 0..4 {
            let (key, _) = self.letter_edge(&p, k);
            let shared = self.placed.iter().any(|q| {
                (0..4).any(|j| self.letter_edge(q, j).0 == key)
            });
            if !shared {
                self.edges.remove(&key);
            }
            let position = p.position(k);
            if let Some(slots) = self.vertices.get_mut(&p.point(position)) {
                slots[position] = None;
            }
        }
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.cells.len() {
            return true;
        }
        let (x, y) = self.cells[depth];
        for i in 0..self.eligible.len() {
            let square = self.eligible[i];
            for rot in 0..4u8 {
                for refl in [false, true] {
                    let p = Placement { x, y, square, rot, refl };
                    if self.try_place(p) {
                        if self.extend(depth + 1) {
                            return true;
                        }
                        self.undo();
                    }
                }
            }
        }
        false
    }
}

/// Slots are the quadrants around a grid vertex, counter-clockwise;
/// neighbouring slots share a grid edge. A complete vertex must read as a
/// 4-circuit of the link on four distinct vertices, so neighbours share
/// exactly one link vertex and opposite slots share none.
fn corner_fits(slots: &[Option<(usize, usize)>; 4], slot: usize, ends: (usize, usize)) -> bool {
    if slots[slot].is_some() || ends.0 == ends.1 {
        return false;
    }
    let shared = |other: (usize, usize)| {
        [ends.0, ends.1]
            .iter()
            .filter(|&&x| x == other.0 || x == other.1)
            .count()
    };
    (1..4).all(|d| match slots[(slot + d) % 4] {
        None => true,
        Some(other) if d == 2 => shared(other) == 0,
        Some(other) => shared(other) == 1,
    })
}

/// Exhaustive search for a flat disk of the given radius built from
/// eligible squares. `None` means no such disk exists; otherwise the
/// first witness in (seed, cell order, square, rotation, reflection)
/// order.
pub fn search_flat_disk(complex: &SquareComplex, radius: i64) -> Result<Option<DiskWitness>> {
    if radius < 1 {
        return Err(Error::InvalidRadius(radius));
    }
    let eligible = eligible_squares(complex);
    let cells = disk_cells(radius);
    for &seed in &eligible {
        let mut search = Search {
            complex,
            eligible: eligible.clone(),
            cells: cells.clone(),
            edges: HashMap::new(),
            vertices: HashMap::new(),
            placed: Vec::new(),
        };
        // the disk is symmetric, so the seed is fixed in rotation 0
        let first = Placement { x: 0, y: 0, square: seed, rot: 0, refl: false };
        if !search.try_place(first) {
            continue;
        }
        if search.extend(1) {
            return Ok(Some(DiskWitness {
                radius,
                placements: search.placed,
            }));
        }
    }
    Ok(None)
}

/// Re-checks a witness from scratch: the cells are exactly the disk,
/// every square is eligible, shared grid edges carry the same oriented
/// generator, and every interior vertex reads a 4-circuit of the link
/// on four distinct link vertices.
pub fn validate_witness(complex: &SquareComplex, witness: &DiskWitness) -> std::result::Result<(), String> {
    let eligible: BTreeSet<usize> = eligible_squares(complex).into_iter().collect();
    let mut cells: Vec<(i64, i64)> = witness.placements.iter().map(|p| (p.x, p.y)).collect();
    cells.sort_unstable();
    let mut expected = disk_cells(witness.radius);
    expected.sort_unstable();
    if cells != expected {
        return Err("placements do not cover the disk exactly".into());
    }
    // oriented generator on each directed unit segment
    let mut labels: HashMap<(Point, Point), (GenId, bool)> = HashMap::new();
    let corners_of = |p: &Placement| -> [Point; 4] {
        let base = [(p.x, p.y), (p.x + 1, p.y), (p.x + 1, p.y + 1), (p.x, p.y + 1)];
        let mut out = [(0, 0); 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let idx = if p.refl {
                (usize::from(p.rot) + 4 - k) % 4
            } else {
                (usize::from(p.rot) + k) % 4
            };
            *slot = base[idx];
        }
        out
    };
    for p in &witness.placements {
        if !eligible.contains(&p.square) {
            return Err(format!("square {} at ({}, {}) is not eligible", p.square, p.x, p.y));
        }
        let pts = corners_of(p);
        let boundary = complex.square(p.square).boundary.letters();
        for k in 0..4 {
            let (a, b) = (pts[k], pts[(k + 1) % 4]);
            let forward = boundary[k].sign == Sign::Pos;
            // store both directions: from a to b the generator runs forward iff sign is +
            for (from, to, fwd) in [(a, b, forward), (b, a, !forward)] {
                match labels.insert((from, to), (boundary[k].gen, fwd)) {
                    Some(old) if old != (boundary[k].gen, fwd) => {
                        return Err(format!("edge {from:?}-{to:?} carries conflicting letters"));
                    }
                    _ => {}
                }
            }
        }
    }
    // end of the generator on segment (v, w) that sits at v
    let end_at = |v: Point, w: Point| -> Option<DirectionEnd> {
        labels.get(&(v, w)).map(|&(gen, forward)| DirectionEnd {
            gen,
            end: if forward { End::Start } else { End::End },
        })
    };
    let link = build_link(complex);
    let r = witness.radius - 1;
    for vx in -r + 1..=r {
        for vy in -r + 1..=r {
            let v = (vx, vy);
            let rays = [(vx + 1, vy), (vx, vy + 1), (vx - 1, vy), (vx, vy - 1)];
            let ends: Vec<DirectionEnd> = rays
                .iter()
                .map(|&w| end_at(v, w).ok_or_else(|| format!("missing edge at {v:?}")))
                .collect::<std::result::Result<_, _>>()?;
            let distinct: BTreeSet<DirectionEnd> = ends.iter().copied().collect();
            if distinct.len() != 4 {
                return Err(format!("vertex {v:?} repeats a link vertex"));
            }
            // each quadrant between consecutive rays must be a corner of the placed square
            for q in 0..4 {
                let (a, b) = (ends[q], ends[(q + 1) % 4]);
                let cell = [(vx, vy), (vx - 1, vy), (vx - 1, vy - 1), (vx, vy - 1)][q];
                let p = witness
                    .placements
                    .iter()
                    .find(|p| (p.x, p.y) == cell)
                    .ok_or_else(|| format!("no square at {cell:?}"))?;
                let is_corner = link.edges().iter().any(|e| {
                    e.square == p.square
                        && ((e.endpoints.0 == a && e.endpoints.1 == b)
                            || (e.endpoints.0 == b && e.endpoints.1 == a))
                });
                if !is_corner {
                    return Err(format!("quadrant {q} at {v:?} is not a corner of square {}", p.square));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    #[serde(rename = "NotNPC")]
    NotNpc { girth: Option<usize> },
    HyperbolicCertA,
    HyperbolicCertB { radius: i64 },
    Inconclusive { witness: DiskWitness },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::NotNpc { .. } => "NotNPC",
            Verdict::HyperbolicCertA => "HyperbolicCertA",
            Verdict::HyperbolicCertB { .. } => "HyperbolicCertB",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

pub const DEFAULT_MAX_RADIUS: i64 = 3;

pub fn hyperbolicity_verdict(complex: &SquareComplex, max_radius: i64) -> Result<Verdict> {
    if max_radius < 1 {
        return Err(Error::InvalidRadius(max_radius));
    }
    let report = largeness(&build_link(complex));
    if !report.is_large {
        return Ok(Verdict::NotNpc { girth: report.girth });
    }
    if eligible_squares(complex).is_empty() {
        return Ok(Verdict::HyperbolicCertA);
    }
    let mut last = None;
    for radius in 1..=max_radius {
        match search_flat_disk(complex, radius)? {
            None => return Ok(Verdict::HyperbolicCertB { radius }),
            Some(w) => last = Some(w),
        }
    }
    let witness = last.ok_or_else(|| Error::Internal("no witness recorded".into()))?;
    Ok(Verdict::Inconclusive { witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_named, parse_spec};

    #[test]
    fn eligibility() {
        assert!(eligible_squares(&build_named("lot-a").unwrap()).is_empty());
        assert_eq!(eligible_squares(&build_named("g2").unwrap()), vec![0, 3, 6]);
        assert_eq!(eligible_squares(&build_named("torus").unwrap()), vec![0]);
    }

    #[test]
    fn disk_shapes() {
        assert_eq!(disk_cells(1), vec![(0, 0)]);
        assert_eq!(disk_cells(2).len(), 9);
        assert_eq!(disk_cells(3).len(), 25);
        assert_eq!(disk_cells(2)[1], (1, 0));
    }

    #[test]
    fn g2_has_no_radius_two_disk() {
        let g2 = build_named("g2").unwrap();
        assert!(search_flat_disk(&g2, 1).unwrap().is_some());
        assert!(search_flat_disk(&g2, 2).unwrap().is_none());
        assert!(search_flat_disk(&g2, 3).unwrap().is_none());
        assert_eq!(
            hyperbolicity_verdict(&g2, 3).unwrap(),
            Verdict::HyperbolicCertB { radius: 2 }
        );
    }

    #[test]
    fn torus_tiles() {
        let t = build_named("torus").unwrap();
        let w = search_flat_disk(&t, 3).unwrap().unwrap();
        assert_eq!(w.placements.len(), 25);
        validate_witness(&t, &w).unwrap();
        match hyperbolicity_verdict(&t, 3).unwrap() {
            Verdict::Inconclusive { witness } => assert_eq!(witness, w),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nothing_eligible_means_no_disk() {
        let lot = build_named("lot-a").unwrap();
        assert!(search_flat_disk(&lot, 1).unwrap().is_none());
        assert_eq!(hyperbolicity_verdict(&lot, 3).unwrap(), Verdict::HyperbolicCertA);
        assert!(matches!(search_flat_disk(&lot, 0), Err(Error::InvalidRadius(0))));
    }

    #[test]
    fn not_npc_short_circuits() {
        let c = parse_spec("generators a b\nsquare a b^-1 a b^-1").unwrap();
        assert!(matches!(hyperbolicity_verdict(&c, 3).unwrap(), Verdict::NotNpc { .. }));
    }

    #[test]
    fn validator_rejects_tampering() {
        let t = build_named("torus").unwrap();
        let mut w = search_flat_disk(&t, 2).unwrap().unwrap();
        validate_witness(&t, &w).unwrap();
        w.placements[3].rot = (w.placements[3].rot + 1) % 4;
        assert!(validate_witness(&t, &w).is_err());
        let mut short = search_flat_disk(&t, 2).unwrap().unwrap();
        short.placements.pop();
        assert!(validate_witness(&t, &short).is_err());
    }

    #[test]
    fn two_tori_give_witness_using_both() {
        // a second commutator square on the same generators is a genuine
        // alternative tile
        let c = parse_spec("generators a b c\nsquare a b a^-1 b^-1\nsquare a c a^-1 c^-1\nsquare b c b^-1 c^-1").unwrap();
        if let Some(w) = search_flat_disk(&c, 2).unwrap() {
            validate_witness(&c, &w).unwrap();
        }
    }
}
