//! Monodromy of unit-weight fiberings.
//!
//! With every weight equal to ±1 the fiber is a bouquet with one loop per
//! square, running from the square's min corner over the two letters that
//! climb to the max corner and back down. A kernel element is rewritten in
//! these loops by pushing its height profile down square by square
//! (flattening), then reading off one loop per square crossed by each
//! remaining unit peak (harvesting).

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::complex::SquareComplex;
use crate::error::{Error, Result};
use crate::link::{arrival, departure, DirectionEnd};
use crate::morse::{check_admissible, kernel_rank, WeightSystem};
use crate::words::{split_stem, GenId, Letter, Sign, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisLoop {
    pub square: usize,
    pub name: String,
    pub alias: Option<String>,
    #[serde(skip)]
    pub rep: Word,
}

impl BasisLoop {
    pub fn label(&self) -> &str {
        self.alias.as_deref().unwrap_or(&self.name)
    }
}

/// Words in the basis loops; generator `i` is loop `i`.
pub type BasisWord = Word;

pub fn format_basis_word(word: &BasisWord, labels: &[String]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.letters()
        .iter()
        .map(|l| match l.sign {
            Sign::Pos => labels[l.gen.0].clone(),
            Sign::Neg => format!("{}^-1", labels[l.gen.0]),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn greek(stem: &str) -> Option<&'static str> {
    match stem {
        "a" => Some("α"),
        "b" => Some("β"),
        _ => None,
    }
}

/// Aliases: a conjugation square labelled `a_i` or `b_i` is `α_i` or `β_i`;
/// a single square of any other shape is `γ`.
fn aliases(complex: &SquareComplex) -> Vec<Option<String>> {
    let others = complex
        .squares()
        .iter()
        .filter(|s| s.conjugation_label().is_none())
        .count();
    complex
        .squares()
        .iter()
        .map(|s| match s.conjugation_label() {
            Some(g) => {
                let (stem, index) = split_stem(complex.alphabet().name(g));
                greek(stem).map(|letter| match index {
                    Some(i) => format!("{letter}{i}"),
                    None => letter.to_string(),
                })
            }
            None if others == 1 => Some("γ".to_string()),
            None => None,
        })
        .collect()
}

type TreeAdjacency = BTreeMap<DirectionEnd, Vec<(usize, DirectionEnd)>>;

/// Basis data for one unit-weight system: each square's boundary rotated
/// to start at its min corner, and both directional-link trees.
#[derive(Clone, Debug)]
pub struct FiberBasis {
    weights: WeightSystem,
    rotated: Vec<[Letter; 4]>,
    descending: TreeAdjacency,
    ascending: TreeAdjacency,
    loops: Vec<BasisLoop>,
}

fn tree_path(tree: &TreeAdjacency, from: DirectionEnd, to: DirectionEnd) -> Option<Vec<usize>> {
    let mut prev: BTreeMap<DirectionEnd, Option<(DirectionEnd, usize)>> = BTreeMap::new();
    prev.insert(from, None);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(square, y) in tree.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if let Entry::Vacant(slot) = prev.entry(y) {
                slot.insert(Some((x, square)));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    loop {
        match prev.get(&at)? {
            None => break,
            Some((p, square)) => {
                path.push(*square);
                at = *p;
            }
        }
    }
    path.reverse();
    Some(path)
}

fn heights(word: &Word, ws: &WeightSystem) -> Vec<i64> {
    let mut h = vec![0];
    for l in word.letters() {
        let w = ws.get(l.gen).unwrap_or(0);
        h.push(h.last().copied().unwrap_or(0) + l.sign.as_i64() * w);
    }
    h
}

impl FiberBasis {
    pub fn new(complex: &SquareComplex, ws: &WeightSystem) -> Result<Self> {
        if ws.weights().len() != complex.alphabet().len() {
            return Err(Error::AlphabetMismatch(ws.weights().len()));
        }
        if ws.weights().iter().any(|w| w.abs() != 1) {
            return Err(Error::Unsupported(
                "monodromy needs every weight to be +1 or -1; use the rank computation for other weights".into(),
            ));
        }
        // admissibility, both trees and a connected fiber
        kernel_rank(complex, ws)?;
        let report = check_admissible(complex, ws)?;
        let names = aliases(complex);
        let mut rotated = Vec::new();
        let mut descending = TreeAdjacency::new();
        let mut ascending = TreeAdjacency::new();
        let mut loops = Vec::new();
        for (square, h) in complex.squares().iter().zip(&report.heights) {
            let m = h.min_corner;
            let e: [Letter; 4] = std::array::from_fn(|i| square.letter(m + i));
            let (d0, d1) = (arrival(e[1]), departure(e[2]));
            descending.entry(d0).or_default().push((square.id, d1));
            descending.entry(d1).or_default().push((square.id, d0));
            let (a0, a1) = (arrival(e[3]), departure(e[0]));
            ascending.entry(a0).or_default().push((square.id, a1));
            ascending.entry(a1).or_default().push((square.id, a0));
            loops.push(BasisLoop {
                square: square.id,
                name: format!("γ{}", square.id),
                alias: names[square.id].clone(),
                rep: Word(vec![e[1], e[2]]),
            });
            rotated.push(e);
        }
        Ok(FiberBasis {
            weights: ws.clone(),
            rotated,
            descending,
            ascending,
            loops,
        })
    }

    pub fn loops(&self) -> &[BasisLoop] {
        &self.loops
    }

    pub fn labels(&self) -> Vec<String> {
        self.loops.iter().map(|l| l.label().to_string()).collect()
    }

    pub fn naming_map(&self) -> BTreeMap<String, String> {
        self.loops
            .iter()
            .filter_map(|l| l.alias.clone().map(|a| (l.name.clone(), a)))
            .collect()
    }

    /// Expands a basis word back into the generators.
    pub fn evaluate(&self, word: &BasisWord) -> Word {
        let mut out = Vec::new();
        for l in word.letters() {
            let rep = &self.loops[l.gen.0].rep;
            match l.sign {
                Sign::Pos => out.extend_from_slice(rep.letters()),
                Sign::Neg => out.extend_from_slice(rep.inverse().letters()),
            }
        }
        Word(out).free_reduce()
    }

    fn first_square(&self, tree: &TreeAdjacency, from: DirectionEnd, to: DirectionEnd) -> Result<usize> {
        tree_path(tree, from, to)
            .and_then(|p| p.first().copied())
            .ok_or_else(|| Error::Internal("directional link path missing".into()))
    }

    fn tree_distance(&self, tree: &TreeAdjacency, from: DirectionEnd, to: DirectionEnd) -> i64 {
        tree_path(tree, from, to).map_or(i64::MAX, |p| p.len() as i64)
    }

    /// (max height, apexes at it, their tree distances) for peaks of
    /// height at least 2, then the same for valleys below 0.
    fn measure(&self, word: &Word) -> [i64; 6] {
        let h = heights(word, &self.weights);
        let letters = word.letters();
        let mut out = [0i64; 6];
        let max = h.iter().copied().max().unwrap_or(0);
        if max >= 2 {
            out[0] = max;
            for k in 1..letters.len() {
                if h[k] == max {
                    out[1] += 1;
                    out[2] += self.tree_distance(&self.descending, arrival(letters[k - 1]), departure(letters[k]));
                }
            }
        }
        let min = h.iter().copied().min().unwrap_or(0);
        if min <= -1 {
            out[3] = -min;
            for k in 1..letters.len() {
                if h[k] == min {
                    out[4] += 1;
                    out[5] += self.tree_distance(&self.ascending, arrival(letters[k - 1]), departure(letters[k]));
                }
            }
        }
        out
    }

    fn flatten(&self, word: &Word) -> Result<Word> {
        let mut w = word.free_reduce();
        let mut measure = self.measure(&w);
        loop {
            let h = heights(&w, &self.weights);
            let letters = w.letters().to_vec();
            let max = h.iter().copied().max().unwrap_or(0);
            let min = h.iter().copied().min().unwrap_or(0);
            let (k, replacement) = if max >= 2 {
                let k = (1..letters.len())
                    .find(|&k| h[k] == max)
                    .ok_or_else(|| Error::Internal("peak at word end".into()))?;
                let (x, y) = (letters[k - 1], letters[k]);
                let s = self.first_square(&self.descending, arrival(x), departure(y))?;
                let [e1, e2, e3, e4] = self.rotated[s];
                let sub = if arrival(x) == arrival(e2) {
                    vec![e1.inverse(), e4.inverse(), e3.inverse()]
                } else {
                    vec![e4, e1, e2]
                };
                (k, sub)
            } else if min <= -1 {
                let k = (1..letters.len())
                    .find(|&k| h[k] == min)
                    .ok_or_else(|| Error::Internal("valley at word end".into()))?;
                let (x, y) = (letters[k - 1], letters[k]);
                let s = self.first_square(&self.ascending, arrival(x), departure(y))?;
                let [e1, e2, e3, e4] = self.rotated[s];
                let sub = if arrival(x) == arrival(e4) {
                    vec![e3.inverse(), e2.inverse(), e1.inverse()]
                } else {
                    vec![e2, e3, e4]
                };
                (k, sub)
            } else {
                return Ok(w);
            };
            let mut next = letters[..k - 1].to_vec();
            next.extend(replacement);
            next.extend_from_slice(&letters[k..]);
            w = Word(next).free_reduce();
            let m = self.measure(&w);
            if m >= measure {
                return Err(Error::Internal(format!(
                    "flattening measure did not decrease: {measure:?} -> {m:?}"
                )));
            }
            measure = m;
        }
    }

    /// Expresses a weight-zero word in the basis loops.
    pub fn rewrite(&self, word: &Word) -> Result<BasisWord> {
        let weight = word.signed_weight(&self.weights)?;
        if weight != 0 {
            return Err(Error::Precondition(format!(
                "word has signed weight {weight}, not 0"
            )));
        }
        let flat = self.flatten(word)?;
        let letters = flat.letters();
        if letters.len() % 2 != 0 {
            return Err(Error::Internal("flattened word has odd length".into()));
        }
        let mut out = Vec::new();
        for pair in letters.chunks(2) {
            let (mut x, y) = (pair[0], pair[1]);
            let mut distance = self.tree_distance(&self.descending, arrival(x), departure(y));
            while !x.cancels(y) {
                let s = self.first_square(&self.descending, arrival(x), departure(y))?;
                let [_, e2, e3, _] = self.rotated[s];
                if arrival(x) == arrival(e2) {
                    out.push(Letter::pos(GenId(s)));
                    x = e3.inverse();
                } else {
                    out.push(Letter::neg(GenId(s)));
                    x = e2;
                }
                let d = self.tree_distance(&self.descending, arrival(x), departure(y));
                if !x.cancels(y) && d >= distance {
                    return Err(Error::Internal("harvesting distance did not decrease".into()));
                }
                distance = d;
            }
        }
        Ok(Word(out).free_reduce())
    }
}

pub fn kernel_basis(complex: &SquareComplex, ws: &WeightSystem) -> Result<Vec<BasisLoop>> {
    Ok(FiberBasis::new(complex, ws)?.loops)
}

pub fn rewrite_to_basis(word: &Word, complex: &SquareComplex, ws: &WeightSystem) -> Result<BasisWord> {
    FiberBasis::new(complex, ws)?.rewrite(word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugatorKind {
    /// Conjugator of weight ±1: a monodromy of the fibering.
    Monodromy,
    /// Conjugator of weight 0: an inner automorphism of the kernel.
    InnerTwist,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub images: Vec<BasisWord>,
    pub conjugator: Word,
    pub kind: ConjugatorKind,
    basis: Vec<Word>,
}

impl Automorphism {
    pub fn identity(basis: &FiberBasis) -> Self {
        Automorphism {
            images: (0..basis.loops.len()).map(|i| Word(vec![Letter::pos(GenId(i))])).collect(),
            conjugator: Word::empty(),
            kind: ConjugatorKind::InnerTwist,
            basis: basis.loops.iter().map(|l| l.rep.clone()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [Letter::pos(GenId(i))])
    }

    pub fn apply(&self, word: &BasisWord) -> BasisWord {
        let mut out = Vec::new();
        for l in word.letters() {
            let image = &self.images[l.gen.0];
            match l.sign {
                Sign::Pos => out.extend_from_slice(image.letters()),
                Sign::Neg => out.extend_from_slice(image.inverse().letters()),
            }
        }
        Word(out).free_reduce()
    }
}

pub fn conjugation_automorphism(t: &Word, basis: &FiberBasis) -> Result<Automorphism> {
    let kind = match t.signed_weight(&basis.weights)? {
        0 => ConjugatorKind::InnerTwist,
        1 | -1 => ConjugatorKind::Monodromy,
        w => {
            return Err(Error::Unsupported(format!(
                "conjugator has signed weight {w}; only -1, 0 and 1 are supported"
            )))
        }
    };
    let t_inv = t.inverse();
    let images = basis
        .loops
        .iter()
        .map(|l| basis.rewrite(&t.concat(&l.rep).concat(&t_inv)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Automorphism {
        images,
        conjugator: t.clone(),
        kind,
        basis: basis.loops.iter().map(|l| l.rep.clone()).collect(),
    })
}

/// `compose(f, g)` is `x -> f(g(x))`.
pub fn compose(f: &Automorphism, g: &Automorphism) -> Result<Automorphism> {
    if f.basis != g.basis {
        return Err(Error::BasisMismatch);
    }
    let kind = if f.kind == g.kind && f.kind == ConjugatorKind::InnerTwist {
        ConjugatorKind::InnerTwist
    } else {
        ConjugatorKind::Monodromy
    };
    Ok(Automorphism {
        images: g.images.iter().map(|w| f.apply(w)).collect(),
        conjugator: f.conjugator.concat(&g.conjugator).free_reduce(),
        kind,
        basis: f.basis.clone(),
    })
}

pub fn invert(f: &Automorphism, basis: &FiberBasis) -> Result<Automorphism> {
    let reps: Vec<Word> = basis.loops.iter().map(|l| l.rep.clone()).collect();
    if reps != f.basis {
        return Err(Error::BasisMismatch);
    }
    conjugation_automorphism(&f.conjugator.inverse(), basis)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionMatrix {
    pub entries: Vec<Vec<u64>>,
    pub irreducible: bool,
    pub primitive: bool,
    pub witness_power: Option<usize>,
}

fn bool_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

fn strongly_connected(support: &[Vec<bool>]) -> bool {
    let n = support.len();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return support[0][0];
    }
    // reachable from 0 along j -> i edges and along their reverses
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(j) = stack.pop() {
            for i in 0..n {
                let edge = if forward { support[i][j] } else { support[j][i] };
                if edge && !seen[i] {
                    seen[i] = true;
                    stack.push(i);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

impl TransitionMatrix {
    pub fn from_entries(entries: Vec<Vec<u64>>) -> Self {
        let n = entries.len();
        let support: Vec<Vec<bool>> = entries.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
        let irreducible = strongly_connected(&support);
        let mut witness_power = None;
        if irreducible {
            let bound = (n - 1) * (n - 1) + 1;
            let mut power = support.clone();
            for p in 1..=bound {
                if power.iter().all(|r| r.iter().all(|&x| x)) {
                    witness_power = Some(p);
                    break;
                }
                power = bool_product(&power, &support);
            }
        }
        TransitionMatrix {
            entries,
            irreducible,
            primitive: witness_power.is_some(),
            witness_power,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn power(&self, exponent: usize) -> Vec<Vec<u64>> {
        let n = self.dim();
        let mut out: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        for _ in 0..exponent {
            out = multiply(&out, &self.entries);
        }
        out
    }
}

pub fn multiply(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn transition_matrix(f: &Automorphism) -> TransitionMatrix {
    let n = f.images.len();
    let mut entries = vec![vec![0u64; n]; n];
    for (j, image) in f.images.iter().enumerate() {
        for l in image.letters() {
            entries[l.gen.0][j] += 1;
        }
    }
    TransitionMatrix::from_entries(entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorWitness {
    pub subset: Vec<usize>,
    #[serde(skip)]
    pub conjugator: BasisWord,
}

pub const MAX_WITNESS_BASIS: usize = 16;

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, size, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Every proper subset of the basis, smallest first, whose span is
/// invariant up to conjugation by a prefix common to its images.
pub fn invariant_factor_witnesses(f: &Automorphism) -> Result<Vec<FactorWitness>> {
    let n = f.images.len();
    if n > MAX_WITNESS_BASIS {
        return Err(Error::BasisTooLarge(n));
    }
    let mut found = Vec::new();
    for size in 1..n {
        for subset in subsets(n, size) {
            let images: Vec<&[Letter]> = subset.iter().map(|&b| f.images[b].letters()).collect();
            let common = (0..images.iter().map(|w| w.len()).min().unwrap_or(0))
                .take_while(|&k| images.iter().all(|w| w[k] == images[0][k]))
                .count();
            for len in (0..=common).rev() {
                let c = Word(images[0][..len].to_vec());
                let pure = images.iter().all(|w| {
                    c.inverse()
                        .concat(&Word(w.to_vec()))
                        .concat(&c)
                        .free_reduce()
                        .letters()
                        .iter()
                        .all(|l| subset.contains(&l.gen.0))
                });
                if pure {
                    found.push(FactorWitness { subset: subset.clone(), conjugator: c });
                    break;
                }
            }
        }
    }
    Ok(found)
}

pub fn invariant_factor_witness(f: &Automorphism) -> Result<Option<FactorWitness>> {
    Ok(invariant_factor_witnesses(f)?.into_iter().next())
}

/// Human-readable images, one `loop -> image` line per basis loop.
pub struct ImagesDisplay<'a> {
    pub automorphism: &'a Automorphism,
    pub labels: &'a [String],
}

impl fmt::Display for ImagesDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, image) in self.labels.iter().zip(&self.automorphism.images) {
            writeln!(f, "{label} -> {}", format_basis_word(image, self.labels))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_named;
    use proptest::prelude::*;

    fn unit(c: &SquareComplex) -> FiberBasis {
        FiberBasis::new(c, &WeightSystem::uniform(c.alphabet().len(), 1)).unwrap()
    }

    fn by_label(basis: &FiberBasis, f: &Automorphism) -> BTreeMap<String, String> {
        let labels = basis.labels();
        labels
            .iter()
            .zip(&f.images)
            .map(|(l, w)| (l.clone(), format_basis_word(w, &labels)))
            .collect()
    }

    #[test]
    fn basis_sizes_and_names() {
        let g1 = unit(&build_named("g1").unwrap());
        assert_eq!(
            g1.labels(),
            ["α1", "α2", "α3", "α0", "β1", "β2", "β3", "β0", "γ"]
        );
        let g2 = unit(&build_named("g2").unwrap());
        assert_eq!(g2.loops().len(), 7);
        let mut names = g2.labels();
        names.sort();
        assert_eq!(names, ["α1", "α2", "α3", "β1", "β2", "β3", "γ"]);
        let torus = unit(&build_named("torus").unwrap());
        assert_eq!(torus.loops().len(), 1);
    }

    #[test]
    fn preconditions() {
        let g1 = build_named("g1").unwrap();
        let ws = WeightSystem::parse("a=2,b=1", g1.alphabet()).unwrap();
        assert!(matches!(FiberBasis::new(&g1, &ws), Err(Error::Unsupported(_))));
        let basis = unit(&g1);
        let a0 = g1.alphabet().parse_word("a0 a0").unwrap();
        assert!(matches!(conjugation_automorphism(&a0, &basis), Err(Error::Unsupported(_))));
        let a0 = g1.alphabet().parse_word("a0").unwrap();
        assert!(matches!(basis.rewrite(&a0), Err(Error::Precondition(_))));
    }

    #[test]
    fn round_trip_and_empty() {
        for name in ["g1", "g2", "lot-a", "torus"] {
            let basis = unit(&build_named(name).unwrap());
            for (i, l) in basis.loops().iter().enumerate() {
                assert_eq!(basis.rewrite(&l.rep).unwrap().letters(), [Letter::pos(GenId(i))]);
            }
            assert!(basis.rewrite(&Word::empty()).unwrap().is_empty());
        }
    }

    #[test]
    fn g1_conjugation_by_a0() {
        let c = build_named("g1").unwrap();
        let basis = unit(&c);
        let a0 = c.alphabet().parse_word("a0").unwrap();
        let f = conjugation_automorphism(&a0, &basis).unwrap();
        assert_eq!(f.kind, ConjugatorKind::Monodromy);
        let images = by_label(&basis, &f);
        assert_eq!(images["α1"], "α1 α0");
        assert_eq!(images["α2"], "α1 α2 α0");
        assert_eq!(images["β3"], "α1 γ^-1 β3 β0 β1 β2 γ α1^-1");
    }

    #[test]
    fn identity_from_empty_conjugator() {
        let c = build_named("g2").unwrap();
        let basis = unit(&c);
        let f = conjugation_automorphism(&Word::empty(), &basis).unwrap();
        assert!(f.is_identity());
        let m = transition_matrix(&f);
        assert!(!m.irreducible);
        assert!(!m.primitive);
    }

    #[test]
    fn compose_matches_square_conjugator() {
        let c = build_named("g1").unwrap();
        let basis = unit(&c);
        let a0 = c.alphabet().parse_word("a0").unwrap();
        let f = conjugation_automorphism(&a0, &basis).unwrap();
        let ff = compose(&f, &f).unwrap();
        let a00 = c.alphabet().parse_word("a0 a0").unwrap();
        for (i, l) in basis.loops().iter().enumerate() {
            let direct = basis.rewrite(&a00.concat(&l.rep).concat(&a00.inverse())).unwrap();
            assert_eq!(ff.images[i], direct);
        }
        let id = Automorphism::identity(&basis);
        assert_eq!(compose(&id, &f).unwrap().images, f.images);
        assert!(compose(&f, &invert(&f, &basis).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn basis_mismatch_detected() {
        let g1 = build_named("g1").unwrap();
        let lot = build_named("lot-a").unwrap();
        let f = Automorphism::identity(&unit(&g1));
        let g = Automorphism::identity(&unit(&lot));
        assert_eq!(compose(&f, &g), Err(Error::BasisMismatch));
    }

    #[test]
    fn matrix_classification() {
        let m = TransitionMatrix::from_entries(vec![vec![0, 1], vec![1, 0]]);
        assert!(m.irreducible);
        assert!(!m.primitive);
        let m = TransitionMatrix::from_entries(vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(m.witness_power, Some(2));
        let m = TransitionMatrix::from_entries(vec![vec![2]]);
        assert_eq!(m.witness_power, Some(1));
        assert!(!TransitionMatrix::from_entries(vec![vec![0]]).irreducible);
    }

    #[test]
    fn subset_enumeration_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    fn abelianize(word: &Word, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in word.letters() {
            v[l.gen.0] += l.sign.as_i64();
        }
        v
    }

    /// Weight-zero words (unit weights) whose height profile stays in
    /// [-2, 3], keeping the rewritten length moderate.
    fn arb_kernel_word(n: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..n, any::<bool>()), 0..10)
            .prop_map(|raw| {
                let mut letters: Vec<Letter> = raw
                    .into_iter()
                    .map(|(g, pos)| if pos { Letter::pos(GenId(g)) } else { Letter::neg(GenId(g)) })
                    .collect();
                let total: i64 = letters.iter().map(|l| l.sign.as_i64()).sum();
                let fix = if total > 0 { Letter::neg(GenId(0)) } else { Letter::pos(GenId(0)) };
                letters.extend(std::iter::repeat_n(fix, total.unsigned_abs() as usize));
                Word(letters)
            })
            .prop_filter("height bound", |w| {
                let h = heights(w, &WeightSystem::uniform(64, 1));
                h.iter().all(|&x| (-2..=3).contains(&x))
            })
    }

    proptest! {
        #[test]
        fn abelianized_rewrite_is_sound(w in arb_kernel_word(10)) {
            let c = build_named("g1").unwrap();
            let basis = unit(&c);
            let rewritten = basis.rewrite(&w).unwrap();
            let n = c.alphabet().len();
            // relator substitutions change the abelianization only by relators
            let relators: Vec<Vec<i64>> =
                c.squares().iter().map(|s| abelianize(&s.boundary, n)).collect();
            let mut diff: Vec<i64> = abelianize(&basis.evaluate(&rewritten), n)
                .iter()
                .zip(abelianize(&w, n))
                .map(|(a, b)| a - b)
                .collect();
            for row in crate::lattice::hermite_rows(relators) {
                let p = row.iter().position(|&x| x != 0).unwrap();
                prop_assert_eq!(diff[p] % row[p], 0);
                let q = diff[p] / row[p];
                diff.iter_mut().zip(&row).for_each(|(d, r)| *d -= q * r);
            }
            prop_assert!(diff.iter().all(|&d| d == 0));
            // the basis is free on the loops, so the generators read back exactly
            prop_assert_eq!(basis.rewrite(&basis.evaluate(&rewritten)).unwrap(), rewritten);
        }
    }
}
