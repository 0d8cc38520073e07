//! Text and JSON formats: Cayley tables, presentations, model selectors,
//! element syntax and cone specs.

use std::path::Path;

use semicover_core::cone::{ExplicitMode, Region};
use semicover_core::group::{inverse_word, push_reduced};
use semicover_core::{BitSet, ConeSet, Element, FiniteGroup, GroupModel, Letter, Word};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixtures;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid element '{text}': {msg}")]
    Element { text: String, msg: String },
    #[error("unknown model selector '{0}'")]
    Model(String),
    #[error("{0}")]
    Invalid(String),
    #[error("invalid cone spec: {0}")]
    Cone(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Core(#[from] semicover_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Parses a Cayley table: `order: n` followed by `n` rows of `n` indices.
pub fn parse_table(text: &str) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::Syntax { line: 1, msg: "empty file".into() })?;
    let n: usize = header
        .strip_prefix("order:")
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| FormatError::Syntax { line, msg: "expected 'order: n' with n >= 1".into() })?;
    let mut rows = Vec::with_capacity(n);
    for (line, l) in lines {
        let row = l
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| FormatError::Syntax { line, msg: format!("bad index: {e}") })?;
        rows.push(row);
    }
    if rows.len() != n {
        let msg = format!("declared order {n} but found {} rows", rows.len());
        return Err(FormatError::Core(semicover_core::Error::MalformedTable(msg)));
    }
    Ok(FiniteGroup::from_rows(&rows)?)
}

pub fn load_finite_group(path: &Path) -> Result<FiniteGroup> {
    parse_table(&std::fs::read_to_string(path)?)
}

/// A finite presentation `⟨gens | rels⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// Parses `gens: a b` followed by any number of `rel: <word>` lines.
/// Generators are single lowercase letters; uppercase denotes the inverse.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut generators: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("gens:") {
            if generators.is_some() {
                return Err(FormatError::Syntax { line, msg: "duplicate 'gens:' line".into() });
            }
            let gens: Vec<String> = rest.split_whitespace().map(String::from).collect();
            for g in &gens {
                if g.len() != 1 || !g.chars().all(|c| c.is_ascii_lowercase()) {
                    return Err(FormatError::Syntax { line, msg: format!("generator '{g}' must be one lowercase letter") });
                }
            }
            generators = Some(gens);
        } else if let Some(rest) = l.strip_prefix("rel:") {
            let gens = generators
                .as_ref()
                .ok_or(FormatError::Syntax { line, msg: "'rel:' before 'gens:'".into() })?;
            let w = parse_word(rest.trim(), gens).map_err(|msg| FormatError::Syntax { line, msg })?;
            relators.push(w);
        } else {
            return Err(FormatError::Syntax { line, msg: format!("unrecognized line '{l}'") });
        }
    }
    let generators = generators.ok_or(FormatError::Syntax { line: 1, msg: "missing 'gens:' line".into() })?;
    Ok(Presentation { generators, relators })
}

/// Largest exponent accepted in word syntax.
pub const MAX_EXPONENT: u64 = 100_000;

/// Parses a word like `baBa` or `b^2a^-1` over single-letter generator names.
pub fn parse_word(text: &str, names: &[String]) -> std::result::Result<Word, String> {
    let mut word = Word::new();
    if text == "1" || text.is_empty() {
        return Ok(word);
    }
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let lower = c.to_ascii_lowercase().to_string();
        let g = names.iter().position(|n| *n == lower).ok_or_else(|| format!("unknown generator '{c}'"))?;
        i += 1;
        let mut exp: i64 = 1;
        if chars.get(i) == Some(&'^') {
            let start = i + 1;
            let mut end = start;
            if chars.get(end) == Some(&'-') {
                end += 1;
            }
            while chars.get(end).is_some_and(|d| d.is_ascii_digit()) {
                end += 1;
            }
            let s: String = chars[start..end].iter().collect();
            exp = s.parse().map_err(|_| format!("bad exponent after '{c}'"))?;
            i = end;
        }
        if exp.unsigned_abs() > MAX_EXPONENT {
            return Err(format!("exponent of '{c}' exceeds {MAX_EXPONENT}"));
        }
        if c.is_ascii_uppercase() {
            exp = -exp;
        }
        let letter = Letter::new(g, exp < 0);
        for _ in 0..exp.unsigned_abs() {
            push_reduced(&mut word, letter);
        }
    }
    Ok(word)
}

/// Writes a word with uppercase inverses, `1` for the empty word.
pub fn format_word(word: &[Letter], names: &[String]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|l| {
            let n = &names[l.generator()];
            if l.is_inverse() {
                n.to_uppercase()
            } else {
                n.clone()
            }
        })
        .collect()
}

/// Resolves a model selector: `finite:<path>`, `z^r` with optional `xCn`
/// factors, `free:k`, `heisenberg`, `klein_bottle`, or a bundled fixture
/// name such as `S3`.
pub fn parse_model(selector: &str) -> Result<GroupModel> {
    let bad = || FormatError::Model(selector.into());
    if let Some(path) = selector.strip_prefix("finite:") {
        return Ok(GroupModel::finite(load_finite_group(Path::new(path))?));
    }
    if let Some(k) = selector.strip_prefix("free:") {
        return Ok(GroupModel::Free { rank: k.parse().map_err(|_| bad())? });
    }
    if let Some(rest) = selector.strip_prefix("z^") {
        let mut parts = rest.split('x');
        let rank = parts.next().and_then(|r| r.parse().ok()).ok_or_else(bad)?;
        let torsion = parts
            .map(|p| p.strip_prefix('C').and_then(|n| n.parse::<i64>().ok()).filter(|&n| n >= 2).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        return Ok(GroupModel::Lattice { rank, torsion });
    }
    match selector {
        "heisenberg" => Ok(GroupModel::Heisenberg),
        "klein_bottle" => Ok(GroupModel::KleinBottle),
        name => fixtures::group(name).map(GroupModel::finite).ok_or_else(bad),
    }
}

fn word_names(model: &GroupModel) -> Option<Vec<String>> {
    match model {
        GroupModel::Free { .. } | GroupModel::Heisenberg | GroupModel::KleinBottle => Some(model.generator_names()),
        _ => None,
    }
}

/// Parses an element: an index for finite groups, an integer tuple for
/// lattices and the Heisenberg group, a word for free groups, the Klein
/// bottle and the Heisenberg group.
pub fn parse_element(model: &GroupModel, text: &str) -> Result<Element> {
    let text = text.trim();
    let err = |msg: &str| FormatError::Element { text: text.into(), msg: msg.into() };
    let x = if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let coords = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| err("expected integers"))?;
        match model {
            GroupModel::Lattice { .. } => Element::Lattice(coords.into_iter().collect()),
            GroupModel::Heisenberg => {
                Element::Heisenberg(coords.try_into().map_err(|_| err("expected three coordinates"))?)
            }
            GroupModel::KleinBottle => match coords[..] {
                [m, n] => Element::Klein(m, n),
                _ => return Err(err("expected (m,n)")),
            },
            _ => return Err(err("tuples are not elements of this model")),
        }
    } else if let GroupModel::Finite(_) = model {
        Element::Finite(text.parse().map_err(|_| err("expected an element index"))?)
    } else if let Some(names) = word_names(model) {
        let w = parse_word(text, &names).map_err(|m| err(&m))?;
        model.eval_word(&w)?
    } else {
        return Err(err("expected an integer tuple"));
    };
    model.check(&x).map_err(|e| err(&e.to_string()))?;
    Ok(x)
}

/// Formats an element in the syntax [`parse_element`] reads back.
pub fn format_element(model: &GroupModel, x: &Element) -> String {
    match (model, x) {
        (GroupModel::Free { .. }, Element::Word(w)) => format_word(w, &model.generator_names()),
        _ => x.to_string(),
    }
}

/// JSON form of a [`ConeSet`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConeSpec {
    Pullback { images: Vec<Vec<i64>>, region: String },
    Coordinates { weights: Vec<Vec<i64>>, region: String },
    Union { args: Vec<ConeSpec> },
    Intersection { args: Vec<ConeSpec> },
    Complement { arg: Box<ConeSpec> },
    Explicit { mode: String, elements: Vec<String> },
    Identity {},
    Inverse { arg: Box<ConeSpec> },
    Conjugate { by: String, arg: Box<ConeSpec> },
    Finite { elements: Vec<usize> },
}

fn region(name: &str) -> Result<Region> {
    Region::from_name(name).ok_or_else(|| FormatError::Cone(format!("unknown region '{name}'")))
}

impl ConeSpec {
    pub fn to_cone(&self, model: &GroupModel) -> Result<ConeSet> {
        let all = |args: &[ConeSpec]| args.iter().map(|a| a.to_cone(model)).collect::<Result<Vec<_>>>();
        let cone = match self {
            ConeSpec::Pullback { images, region: r } => ConeSet::pullback(images.clone(), region(r)?),
            ConeSpec::Coordinates { weights, region: r } => {
                ConeSet::Coordinates { weights: weights.clone(), region: region(r)? }
            }
            ConeSpec::Union { args } => ConeSet::Union(all(args)?),
            ConeSpec::Intersection { args } => ConeSet::Intersection(all(args)?),
            ConeSpec::Complement { arg } => arg.to_cone(model)?.complement(),
            ConeSpec::Explicit { mode, elements } => {
                let mode = match mode.as_str() {
                    "include" => ExplicitMode::Include,
                    "exclude" => ExplicitMode::Exclude,
                    m => return Err(FormatError::Cone(format!("unknown mode '{m}'"))),
                };
                let els = elements.iter().map(|e| parse_element(model, e)).collect::<Result<Vec<_>>>()?;
                ConeSet::explicit(mode, els)
            }
            ConeSpec::Identity {} => ConeSet::Identity,
            ConeSpec::Inverse { arg } => ConeSet::Inverse(Box::new(arg.to_cone(model)?)),
            ConeSpec::Conjugate { by, arg } => {
                ConeSet::Conjugate { by: parse_element(model, by)?, arg: Box::new(arg.to_cone(model)?) }
            }
            ConeSpec::Finite { elements } => {
                let GroupModel::Finite(g) = model else {
                    return Err(FormatError::Cone("'finite' cones need a finite model".into()));
                };
                if let Some(&bad) = elements.iter().find(|&&e| e >= g.order()) {
                    return Err(FormatError::Cone(format!("element {bad} out of range")));
                }
                ConeSet::FiniteBits(BitSet::from_indices(g.order(), elements.iter().copied()))
            }
        };
        cone.validate(model)?;
        Ok(cone)
    }

    pub fn from_cone(model: &GroupModel, cone: &ConeSet) -> ConeSpec {
        let all = |cs: &[ConeSet]| cs.iter().map(|c| ConeSpec::from_cone(model, c)).collect();
        match cone {
            ConeSet::FiniteBits(b) => ConeSpec::Finite { elements: b.to_vec() },
            ConeSet::Pullback { images, region } => {
                ConeSpec::Pullback { images: images.clone(), region: region.name().into() }
            }
            ConeSet::Coordinates { weights, region } => {
                ConeSpec::Coordinates { weights: weights.clone(), region: region.name().into() }
            }
            ConeSet::Union(cs) => ConeSpec::Union { args: all(cs) },
            ConeSet::Intersection(cs) => ConeSpec::Intersection { args: all(cs) },
            ConeSet::Complement(c) => ConeSpec::Complement { arg: Box::new(ConeSpec::from_cone(model, c)) },
            ConeSet::Explicit { mode, elements } => ConeSpec::Explicit {
                mode: match mode {
                    ExplicitMode::Include => "include",
                    ExplicitMode::Exclude => "exclude",
                }
                .into(),
                elements: elements.iter().map(|x| format_element(model, x)).collect(),
            },
            ConeSet::Identity => ConeSpec::Identity {},
            ConeSet::Inverse(c) => ConeSpec::Inverse { arg: Box::new(ConeSpec::from_cone(model, c)) },
            ConeSet::Conjugate { by, arg } => ConeSpec::Conjugate {
                by: format_element(model, by),
                arg: Box::new(ConeSpec::from_cone(model, arg)),
            },
        }
    }
}

pub fn parse_cone(model: &GroupModel, json: &str) -> Result<ConeSet> {
    serde_json::from_str::<ConeSpec>(json)?.to_cone(model)
}

pub fn load_cone(model: &GroupModel, path: &Path) -> Result<ConeSet> {
    parse_cone(model, &std::fs::read_to_string(path)?)
}

/// The built-in model a presentation describes, when its generator count
/// and relator set match one exactly; otherwise the free group on its
/// generators.
pub fn model_for(p: &Presentation) -> GroupModel {
    let mut rels: Vec<Word> = p.relators.iter().map(|w| canonical_relator(w)).collect();
    rels.sort();
    rels.dedup();
    let candidates = [
        GroupModel::KleinBottle,
        GroupModel::Heisenberg,
        GroupModel::lattice(p.generators.len()),
    ];
    for m in candidates {
        if m.num_generators() != p.generators.len() {
            continue;
        }
        let mut own: Vec<Word> = m.relators().iter().map(|w| canonical_relator(w)).collect();
        own.sort();
        own.dedup();
        if own == rels {
            return m;
        }
    }
    GroupModel::Free { rank: p.generators.len() }
}

/// The least cyclic conjugate of a relator or of its inverse.
fn canonical_relator(w: &[Letter]) -> Word {
    let mut best: Option<Word> = None;
    for v in [Word::from_slice(w), inverse_word(w)] {
        for k in 0..v.len().max(1) {
            let rot: Word = v[k..].iter().chain(&v[..k]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}
