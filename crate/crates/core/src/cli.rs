//! Command-line front end and report assembly.
//!
//! Every subcommand renders one or more report sections; `analyze` is the
//! concatenation of the sections produced by `link`, `check poison`,
//! `check flat`, `verdict`, `morse` (once per weight system) and,
//! when a conjugator is given, `monodromy`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::complex::{add_square, build_lot_family, build_named, combine, parse_spec, SquareComplex};
use crate::error::{Error, Result};
use crate::flat::{eligible_squares, hyperbolicity_verdict, Verdict, DEFAULT_MAX_RADIUS};
use crate::link::{build_link, export_dot, largeness, poison_corners, CornerEdge, Highlight, LargenessReport, LinkGraph, Violation};
use crate::monodromy::{
    conjugation_automorphism, format_basis_word, invariant_factor_witnesses, transition_matrix, Automorphism,
    FiberBasis,
};
use crate::morse::{
    check_admissible, directional_links, fiber_graph, fibering_scan, infinite_fibering_verdict, kernel_rank,
    weight_lattice, DirectionalLink, WeightSystem,
};

#[derive(Debug, Parser)]
#[command(name = "squarecx", version, about = "Analyze single-vertex square complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a complex in the text format.
    #[command(subcommand)]
    Build(BuildCommand),
    /// Join two complexes along one extra square.
    Combine {
        first: String,
        second: String,
        #[arg(long)]
        relator: String,
    },
    /// Add one square to a complex.
    AddSquare {
        file: String,
        #[arg(long)]
        relator: String,
    },
    /// Link summary, optionally written as DOT.
    Link {
        file: String,
        #[arg(long)]
        dot: Option<String>,
        #[arg(long, value_enum)]
        highlight: Option<HighlightKind>,
        /// Weights used for `--highlight asc|desc` (default: all 1).
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Largeness, poison corners or the flat-plane search.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        file: String,
        #[arg(long, default_value_t = DEFAULT_MAX_RADIUS)]
        radius: i64,
        #[arg(long)]
        json: bool,
    },
    /// Admissibility, directional links, fiber and kernel rank.
    Morse {
        file: String,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        json: bool,
    },
    /// Scan the weight lattice over coordinates in [-B, B].
    Fiberings {
        file: String,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Weight lattice and whether it yields infinitely many fiberings.
    Verdict {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Monodromy images of the basis loops under conjugation.
    Monodromy(MonodromyArgs),
    /// Transition matrix of a monodromy and its classification.
    Transition(MonodromyArgs),
    /// Invariant free factors spanned by basis loops.
    ReducibleWitness(MonodromyArgs),
    /// Full pipeline report.
    Analyze {
        file: String,
        #[arg(long)]
        weights: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_RADIUS)]
        radius: i64,
        #[arg(long)]
        conjugator: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum BuildCommand {
    /// The labeled oriented tree family L(k).
    Lot {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "a")]
        stem: String,
    },
    /// lot-a, lot-b, g1, gf, g2 or torus.
    Named { name: String },
}

#[derive(Debug, Args)]
struct MonodromyArgs {
    file: String,
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    conjugator: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HighlightKind {
    Asc,
    Desc,
    Poison,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Large,
    Poison,
    Flat,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A rendered report section: text and JSON views of the same data.
pub struct Section {
    pub text: String,
    pub json: Value,
}

/// Loads a complex from a file, or a built-in one written `@name`.
pub fn load(path: &str) -> Result<SquareComplex> {
    if let Some(name) = path.strip_prefix('@') {
        return build_named(name);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    parse_spec(&text)
}

fn unit_weights(c: &SquareComplex) -> WeightSystem {
    WeightSystem::uniform(c.alphabet().len(), 1)
}

fn weights_or_unit(c: &SquareComplex, spec: Option<&str>) -> Result<WeightSystem> {
    match spec {
        Some(s) => WeightSystem::parse(s, c.alphabet()),
        None => Ok(unit_weights(c)),
    }
}

fn corner_json(link: &LinkGraph, e: &CornerEdge) -> Value {
    json!({
        "square": e.square,
        "corner": e.corner,
        "endpoints": [link.vertex_label(e.endpoints.0.index()), link.vertex_label(e.endpoints.1.index())],
    })
}

fn violation_text(v: &Violation) -> String {
    let (kind, corners) = match v {
        Violation::Loop { corners } => ("loop", corners),
        Violation::Bigon { corners } => ("bigon", corners),
        Violation::Triangle { corners } => ("triangle", corners),
    };
    let list: Vec<String> = corners.iter().map(|(s, c)| format!("{s}.{c}")).collect();
    format!("  {kind} at corners {}\n", list.join(" "))
}

fn large_text(report: &LargenessReport) -> String {
    let mut text = format!("{report}\n");
    for v in &report.violations {
        text.push_str(&violation_text(v));
    }
    text
}

pub fn large_section(c: &SquareComplex) -> Section {
    let report = largeness(&build_link(c));
    Section {
        text: large_text(&report),
        json: json!({
            "girth": report.girth,
            "is_large": report.is_large,
            "violations": report.violations,
        }),
    }
}

pub fn link_section(c: &SquareComplex) -> Section {
    let link = build_link(c);
    let report = largeness(&link);
    let mut text = format!(
        "complex: {} generators, {} squares\nlink: {} vertices, {} edges\n",
        c.alphabet().len(),
        c.squares().len(),
        link.vertex_count(),
        link.edges().len()
    );
    text.push_str(&large_text(&report));
    let json = json!({
        "generators": c.alphabet().names(),
        "squares": c.squares().len(),
        "vertices": (0..link.vertex_count()).map(|v| link.vertex_label(v)).collect::<Vec<_>>(),
        "edges": link.edges().iter().map(|e| corner_json(&link, e)).collect::<Vec<_>>(),
        "girth": report.girth,
        "is_large": report.is_large,
        "violations": report.violations,
    });
    Section { text, json }
}

pub fn poison_section(c: &SquareComplex) -> Section {
    let link = build_link(c);
    let poison = poison_corners(c);
    let mut text = format!("poison corners: {}\n", poison.len());
    for e in &poison {
        let _ = writeln!(text, "  square {} corner {}: {}", e.square, e.corner, link.edge_label(e));
    }
    Section {
        text,
        json: json!({
            "count": poison.len(),
            "poison": poison.iter().map(|e| corner_json(&link, e)).collect::<Vec<_>>(),
        }),
    }
}

pub fn flat_section(c: &SquareComplex, radius: i64) -> Result<Section> {
    let eligible = eligible_squares(c);
    let verdict = hyperbolicity_verdict(c, radius)?;
    let eligible_text: Vec<String> = eligible.iter().map(ToString::to_string).collect();
    let mut text = format!("eligible squares: [{}]\nflat verdict: {}", eligible_text.join(", "), verdict.tag());
    let (r, witness) = match &verdict {
        Verdict::NotNpc { .. } => (Value::Null, Value::Null),
        Verdict::HyperbolicCertA => (Value::Null, Value::Null),
        Verdict::HyperbolicCertB { radius } => {
            let _ = write!(text, " (no flat disk of radius {radius})");
            (json!(radius), Value::Null)
        }
        Verdict::Inconclusive { witness } => {
            let _ = write!(text, " (flat disk of radius {} found)", witness.radius);
            (json!(witness.radius), json!(witness.placements))
        }
    };
    text.push('\n');
    if let Verdict::Inconclusive { witness } = &verdict {
        for p in &witness.placements {
            let _ = writeln!(
                text,
                "  ({}, {}) square {} rot {}{}",
                p.x,
                p.y,
                p.square,
                p.rot,
                if p.refl { " reflected" } else { "" }
            );
        }
    }
    Ok(Section {
        text,
        json: json!({
            "verdict": verdict.tag(),
            "radius": r,
            "eligible": eligible,
            "witness": witness,
        }),
    })
}

fn vector_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn verdict_section(c: &SquareComplex) -> Result<Section> {
    let lattice = weight_lattice(c);
    let verdict = infinite_fibering_verdict(c)?;
    let mut text = format!("weight lattice rank {}\n", lattice.rank());
    for b in &lattice.basis {
        let _ = writeln!(text, "  basis {}", vector_text(b));
    }
    let _ = writeln!(
        text,
        "infinitely many fiberings: {} ({})",
        if verdict.infinite { "YES" } else { "NO" },
        verdict.reason
    );
    Ok(Section {
        text,
        json: json!({
            "lattice_rank": lattice.rank(),
            "basis": lattice.basis,
            "infinite_fibering": verdict.infinite,
            "orthant": verdict.orthant,
            "witness_weights": verdict.witness_weights,
            "reason": verdict.reason,
        }),
    })
}

fn directional_json(d: &DirectionalLink, names: &[String]) -> Value {
    json!({
        "vertices": d.vertices.iter().map(|v| v.label(names)).collect::<Vec<_>>(),
        "edges": d.edges.iter().map(|e| [e.endpoints.0.label(names), e.endpoints.1.label(names)]).collect::<Vec<_>>(),
        "is_tree": d.is_tree,
    })
}

fn directional_text(name: &str, d: &DirectionalLink) -> String {
    format!(
        "{name} link: {} vertices, {} edges, {}\n",
        d.vertices.len(),
        d.edges.len(),
        if d.is_tree {
            "tree".to_string()
        } else {
            format!("not a tree ({} components)", d.component_count)
        }
    )
}

pub fn morse_section(c: &SquareComplex, ws: &WeightSystem) -> Result<Section> {
    let names = c.alphabet().names();
    let report = check_admissible(c, ws)?;
    let mut text = format!("weights: {}\n", ws.display(c.alphabet()));
    let mut json = Map::new();
    json.insert("weights".into(), json!(ws.weights()));
    json.insert("admissible".into(), json!(report.admissible));
    if !report.admissible {
        let reason = match directional_links(c, ws) {
            Err(Error::Inadmissible(r)) => r,
            _ => "not admissible".to_string(),
        };
        let _ = writeln!(text, "admissible: false ({reason})");
        for key in ["asc", "desc", "chi", "components", "rank"] {
            json.insert(key.into(), Value::Null);
        }
        json.insert("reason".into(), json!(reason));
        return Ok(Section { text, json: Value::Object(json) });
    }
    text.push_str("admissible: true\n");
    let (asc, desc) = directional_links(c, ws)?;
    text.push_str(&directional_text("ascending", &asc));
    text.push_str(&directional_text("descending", &desc));
    let fiber = fiber_graph(c, ws)?;
    let _ = writeln!(
        text,
        "fiber: {} vertices, {} arcs, chi {}, {} component{}",
        fiber.vertices.len(),
        fiber.arcs.len(),
        fiber.chi,
        fiber.components,
        if fiber.components == 1 { "" } else { "s" }
    );
    let (rank, reason) = match kernel_rank(c, ws) {
        Ok(r) => (Some(r), None),
        Err(Error::Precondition(r)) => (None, Some(r)),
        Err(e) => return Err(e),
    };
    match (rank, &reason) {
        (Some(r), _) => {
            let _ = writeln!(text, "rank: {r}");
        }
        (None, Some(why)) => {
            let _ = writeln!(text, "rank: undefined ({why})");
        }
        (None, None) => {}
    }
    json.insert("asc".into(), directional_json(&asc, names));
    json.insert("desc".into(), directional_json(&desc, names));
    json.insert("chi".into(), json!(fiber.chi));
    json.insert("components".into(), json!(fiber.components));
    json.insert("rank".into(), json!(rank));
    json.insert("reason".into(), json!(reason));
    Ok(Section { text, json: Value::Object(json) })
}

pub fn fiberings_section(c: &SquareComplex, bound: i64) -> Result<Section> {
    if bound < 0 {
        return Err(Error::InvalidWeights(format!("bound must be nonnegative, got {bound}")));
    }
    let lattice = weight_lattice(c);
    let rows = fibering_scan(c, bound)?;
    let mut text = format!("weight lattice rank {}\n", lattice.rank());
    for b in &lattice.basis {
        let _ = writeln!(text, "  basis {}", vector_text(b));
    }
    text.push_str("coords | admissible asc desc chi rank\n");
    let show = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    for r in &rows {
        let _ = writeln!(
            text,
            "{} | {} {} {} {} {}{}",
            vector_text(&r.coords),
            r.admissible,
            r.asc_tree,
            r.desc_tree,
            show(r.chi),
            show(r.rank),
            if r.primitive { "" } else { " (not primitive)" }
        );
    }
    Ok(Section {
        text,
        json: json!({
            "lattice_rank": lattice.rank(),
            "basis": lattice.basis,
            "table": rows,
        }),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MonodromyView {
    Images,
    Transition,
    Witness,
}

struct MonodromyData {
    basis: FiberBasis,
    automorphism: Automorphism,
}

fn monodromy_data(c: &SquareComplex, weights: Option<&str>, conjugator: &str) -> Result<MonodromyData> {
    let ws = weights_or_unit(c, weights)?;
    let basis = FiberBasis::new(c, &ws)?;
    let t = c.alphabet().parse_word(conjugator)?;
    let automorphism = conjugation_automorphism(&t, &basis)?;
    Ok(MonodromyData { basis, automorphism })
}

fn monodromy_section(c: &SquareComplex, data: &MonodromyData, view: MonodromyView) -> Result<Section> {
    let MonodromyData { basis, automorphism: f } = data;
    let labels = basis.labels();
    let mut text = format!(
        "monodromy: conjugation by {} ({})\n",
        f.conjugator.display(c.alphabet()),
        match f.kind {
            crate::monodromy::ConjugatorKind::Monodromy => "monodromy",
            crate::monodromy::ConjugatorKind::InnerTwist => "inner twist",
        }
    );
    let mut json = Map::new();
    let basis_json: Vec<Value> = basis
        .loops()
        .iter()
        .map(|l| {
            let _ = writeln!(
                text,
                "  basis {} = {} (square {}, rep {})",
                l.label(),
                l.name,
                l.square,
                l.rep.display(c.alphabet())
            );
            json!({
                "square": l.square,
                "name": l.label(),
                "rep": l.rep.display(c.alphabet()).to_string(),
            })
        })
        .collect();
    json.insert("basis".into(), Value::Array(basis_json));
    json.insert("naming_map".into(), json!(basis.naming_map()));
    let mut images = Map::new();
    for (label, image) in labels.iter().zip(&f.images) {
        let word = format_basis_word(image, &labels);
        let _ = writeln!(text, "  {label} -> {word}");
        images.insert(label.clone(), json!(word));
    }
    json.insert("images".into(), Value::Object(images));
    match view {
        MonodromyView::Images => {}
        MonodromyView::Transition => {
            let m = transition_matrix(f);
            text.push_str("transition matrix:\n");
            for row in &m.entries {
                let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "  {}", parts.join(" "));
            }
            let _ = writeln!(
                text,
                "irreducible: {}, primitive: {}{}",
                m.irreducible,
                m.primitive,
                m.witness_power.map_or(String::new(), |p| format!(" (M^{p} positive)"))
            );
            json.insert("matrix".into(), json!(m.entries));
            json.insert("irreducible".into(), json!(m.irreducible));
            json.insert("primitive".into(), json!(m.primitive));
            json.insert("witness_power".into(), json!(m.witness_power));
        }
        MonodromyView::Witness => {
            let witnesses = invariant_factor_witnesses(f)?;
            let render = |w: &crate::monodromy::FactorWitness| {
                json!({
                    "subset": w.subset.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                    "conjugator": format_basis_word(&w.conjugator, &labels),
                })
            };
            if witnesses.is_empty() {
                text.push_str("no invariant factor spanned by basis loops\n");
            }
            for w in &witnesses {
                let subset: Vec<&str> = w.subset.iter().map(|&i| labels[i].as_str()).collect();
                let _ = writeln!(
                    text,
                    "invariant factor {{{}}} up to conjugation by {}",
                    subset.join(", "),
                    format_basis_word(&w.conjugator, &labels)
                );
            }
            json.insert("witness".into(), witnesses.first().map_or(Value::Null, render));
            json.insert("witnesses".into(), Value::Array(witnesses.iter().map(render).collect()));
        }
    }
    Ok(Section { text, json: Value::Object(json) })
}

fn highlight_for(c: &SquareComplex, link: &LinkGraph, kind: HighlightKind, weights: Option<&str>) -> Result<Highlight> {
    let edges: Vec<CornerEdge> = match kind {
        HighlightKind::Poison => poison_corners(c),
        HighlightKind::Asc | HighlightKind::Desc => {
            let ws = weights_or_unit(c, weights)?;
            let (asc, desc) = directional_links(c, &ws)?;
            if matches!(kind, HighlightKind::Asc) { asc.edges } else { desc.edges }
        }
    };
    let mut highlight = Highlight {
        vertices: BTreeSet::new(),
        edges: BTreeSet::new(),
    };
    for e in edges {
        highlight.edges.insert(link.edge_index(e.square, e.corner));
        highlight.vertices.insert(e.endpoints.0.index());
        highlight.vertices.insert(e.endpoints.1.index());
    }
    Ok(highlight)
}

fn emit(section: Section, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(&section.json).unwrap_or_default();
        s.push('\n');
        s
    } else {
        section.text
    }
}

/// The full pipeline as one section.
pub fn analyze(
    c: &SquareComplex,
    weights: &[String],
    radius: i64,
    conjugator: Option<&str>,
) -> Result<Section> {
    let mut text = String::new();
    let mut json = Map::new();
    json.insert(
        "complex".into(),
        json!({ "generators": c.alphabet().names(), "squares": c.squares().len() }),
    );
    let link = link_section(c);
    text.push_str(&link.text);
    json.insert("link".into(), link.json);
    let poison = poison_section(c);
    text.push_str(&poison.text);
    json.insert("poison".into(), poison.json);
    let flat = flat_section(c, radius)?;
    text.push_str(&flat.text);
    json.insert("flatness".into(), flat.json);
    let verdict = verdict_section(c)?;
    text.push_str(&verdict.text);
    json.insert("fibering".into(), verdict.json);
    let systems: Vec<WeightSystem> = if weights.is_empty() {
        vec![unit_weights(c)]
    } else {
        weights
            .iter()
            .map(|w| WeightSystem::parse(w, c.alphabet()))
            .collect::<Result<_>>()?
    };
    let mut morse = Vec::new();
    for ws in &systems {
        let s = morse_section(c, ws)?;
        text.push_str(&s.text);
        morse.push(s.json);
    }
    json.insert("morse".into(), Value::Array(morse));
    let monodromy = match conjugator {
        None => json!({ "skipped": "no conjugator given" }),
        Some(t) => {
            let spec = weights.first().map(String::as_str);
            match monodromy_data(c, spec, t) {
                Ok(data) => {
                    let s = monodromy_section(c, &data, MonodromyView::Images)?;
                    text.push_str(&s.text);
                    s.json
                }
                Err(e @ (Error::Unsupported(_) | Error::Precondition(_) | Error::Inadmissible(_))) => {
                    let _ = writeln!(text, "monodromy: skipped ({e})");
                    json!({ "skipped": e.to_string() })
                }
                Err(e) => return Err(e),
            }
        }
    };
    json.insert("monodromy".into(), monodromy);
    Ok(Section { text, json: Value::Object(json) })
}

fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Build(BuildCommand::Lot { k, stem }) => Ok(build_lot_family(k, &stem)?.render()),
        Command::Build(BuildCommand::Named { name }) => Ok(build_named(&name)?.render()),
        Command::Combine { first, second, relator } => Ok(combine(&load(&first)?, &load(&second)?, &relator)?.render()),
        Command::AddSquare { file, relator } => Ok(add_square(&load(&file)?, &relator)?.render()),
        Command::Link { file, dot, highlight, weights, json } => {
            let c = load(&file)?;
            if let Some(path) = dot {
                let link = build_link(&c);
                let h = highlight
                    .map(|k| highlight_for(&c, &link, k, weights.as_deref()))
                    .transpose()?;
                std::fs::write(&path, export_dot(&link, h.as_ref())).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            }
            Ok(emit(link_section(&c), json))
        }
        Command::Check { what, file, radius, json } => {
            let c = load(&file)?;
            let section = match what {
                CheckKind::Large => large_section(&c),
                CheckKind::Poison => poison_section(&c),
                CheckKind::Flat => flat_section(&c, radius)?,
            };
            Ok(emit(section, json))
        }
        Command::Morse { file, weights, json } => {
            let c = load(&file)?;
            let ws = WeightSystem::parse(&weights, c.alphabet())?;
            Ok(emit(morse_section(&c, &ws)?, json))
        }
        Command::Fiberings { file, bound, json } => Ok(emit(fiberings_section(&load(&file)?, bound)?, json)),
        Command::Verdict { file, json } => Ok(emit(verdict_section(&load(&file)?)?, json)),
        Command::Monodromy(args) => monodromy_command(args, MonodromyView::Images),
        Command::Transition(args) => monodromy_command(args, MonodromyView::Transition),
        Command::ReducibleWitness(args) => monodromy_command(args, MonodromyView::Witness),
        Command::Analyze { file, weights, radius, conjugator, json } => {
            let c = load(&file)?;
            Ok(emit(analyze(&c, &weights, radius, conjugator.as_deref())?, json))
        }
    }
}

fn monodromy_command(args: MonodromyArgs, view: MonodromyView) -> Result<String> {
    let c = load(&args.file)?;
    let data = monodromy_data(&c, args.weights.as_deref(), &args.conjugator)?;
    Ok(emit(monodromy_section(&c, &data, view)?, args.json))
}

/// Runs one command line (including the program name). Verdicts are
/// data: exit 0 whenever the analysis ran, 1 on bad input, 2 on an
/// internal invariant violation.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_internal() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> String {
        let out = run(std::iter::once("squarecx").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        out.stdout
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["squarecx", "frobnicate"]).code, 1);
        assert_eq!(run(["squarecx", "check", "large"]).code, 1);
        assert_eq!(run(["squarecx", "build", "named", "nope"]).code, 1);
        assert_eq!(run(["squarecx", "check", "large", "/nonexistent/file"]).code, 1);
        assert_eq!(run(["squarecx", "--help"]).code, 0);
    }

    #[test]
    fn named_shortcut_and_build_agree() {
        let built = ok(&["build", "named", "g1"]);
        assert_eq!(parse_spec(&built).unwrap().render(), built);
        assert!(ok(&["check", "large", "@g1"]).starts_with("girth 4, large: true"));
    }

    #[test]
    fn verdicts_are_data() {
        let out = ok(&["check", "flat", "@g2"]);
        assert!(out.contains("HyperbolicCertB (no flat disk of radius 2)"), "{out}");
        let out = ok(&["morse", "@g1", "--weights", "a=1,b=1,b3=2"]);
        assert!(out.contains("admissible: false"), "{out}");
    }

    #[test]
    fn analyze_is_concatenation() {
        let pieces = [
            ok(&["link", "@g2"]),
            ok(&["check", "poison", "@g2"]),
            ok(&["check", "flat", "@g2", "--radius", "3"]),
            ok(&["verdict", "@g2"]),
            ok(&["morse", "@g2", "--weights", "a=1,b=1"]),
            ok(&["morse", "@g2", "--weights", "a=2,b=3"]),
            ok(&["monodromy", "@g2", "--weights", "a=1,b=1", "--conjugator", "a3"]),
        ]
        .concat();
        let whole = ok(&[
            "analyze", "@g2", "--weights", "a=1,b=1", "--weights", "a=2,b=3", "--conjugator", "a3",
        ]);
        assert_eq!(whole, pieces);
    }
}
