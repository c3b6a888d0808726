//! Parser for diagram files.
//!
//! The format is line oriented; `#` starts a comment. Grammar:
//!
//! ```text
//! file      := stmt*
//! stmt      := "diagram" KIND | "cap" NUM | block
//! KIND      := "cat" | "sset" | "marked"
//! block     := header NL body* "end"
//! header    := "shape" | "category" OBJ | "functor" ARROW | "sset" OBJ | "map" ARROW
//!
//! -- bodies of "shape" and "category"
//! body      := "objects" NAME+
//!            | "arrow" NAME ":" NAME "->" NAME
//!            | "compose" NAME "=" NAME NAME        -- h = g f means h = g ∘ f
//!
//! -- body of "functor" (one line per object and per non-identity arrow)
//! body      := NAME "->" NAME
//!
//! -- body of "sset"
//! body      := "vertex" NAME+
//!            | "cell" NAME NUM ":" SIMPLEX+         -- faces d_0 .. d_n
//!            | "mark" SIMPLEX+                      -- marked edges, kind marked only
//! SIMPLEX   := NAME | "s" NUM "(" SIMPLEX ")"       -- degeneracy s_i
//!
//! -- body of "map" (one line per cell)
//! body      := NAME "->" SIMPLEX
//! ```
//!
//! Every object gets an identity arrow named `id_<object>`. Composites with
//! identities follow from the unit laws; every other composable pair needs a
//! `compose` line. Functors and maps are given for every non-identity arrow
//! of the shape; identity arrows act as identities.

use std::collections::HashMap;
use std::fmt;

use relnerve::fincat::{CatFunctor, FinCategory};
use relnerve::sset::{Cell, Keyed, Presentation, SimplexRef, SimplicialMap};
use relnerve::{CatDiagram, MarkedDiagram, SSetDiagram};

/// A parse or validation failure tied to a line of the input (1-based); line
/// 0 means the end of the file.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "end of input: {}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Cat,
    SSet,
    Marked,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Cat => "cat",
            Kind::SSet => "sset",
            Kind::Marked => "marked",
        }
    }
}

/// A parsed and validated diagram.
#[derive(Clone, Debug)]
pub enum Parsed {
    Cat(CatDiagram),
    SSet(SSetDiagram),
    Marked(MarkedDiagram),
}

#[derive(Clone, Debug)]
pub struct DiagramSpec {
    pub cap: usize,
    pub diagram: Parsed,
}

impl DiagramSpec {
    pub fn kind(&self) -> Kind {
        match self.diagram {
            Parsed::Cat(_) => Kind::Cat,
            Parsed::SSet(_) => Kind::SSet,
            Parsed::Marked(_) => Kind::Marked,
        }
    }

    pub fn shape(&self) -> &FinCategory {
        match &self.diagram {
            Parsed::Cat(d) => &d.shape,
            Parsed::SSet(d) => &d.shape,
            Parsed::Marked(d) => &d.diagram.shape,
        }
    }
}

pub const DEFAULT_CAP: usize = 3;

struct Block {
    line: usize,
    head: Vec<String>,
    body: Vec<(usize, Vec<String>)>,
}

/// Splits a line into tokens; `:`, `->`, `=`, `(` and `)` are separate tokens.
fn tokenize(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut rest = line;
    let mut cur = String::new();
    while let Some(c) = rest.chars().next() {
        if rest.starts_with("->") {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            out.push("->".into());
            rest = &rest[2..];
            continue;
        }
        if c.is_whitespace() || matches!(c, ':' | '=' | '(' | ')') {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                out.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
        rest = &rest[c.len_utf8()..];
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn blocks(text: &str) -> Result<(Vec<(usize, Vec<String>)>, Vec<Block>), ParseError> {
    let mut statements = Vec::new();
    let mut out = Vec::new();
    let mut open: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content);
        if toks.is_empty() {
            continue;
        }
        match (&mut open, toks[0].as_str()) {
            (Some(_), "end") => {
                if toks.len() != 1 {
                    return err(line, "unexpected tokens after `end`");
                }
                out.push(open.take().expect("open block"));
            }
            (Some(b), _) => b.body.push((line, toks)),
            (None, "shape" | "category" | "functor" | "sset" | "map") => {
                open = Some(Block {
                    line,
                    head: toks,
                    body: vec![],
                });
            }
            (None, "diagram" | "cap") => statements.push((line, toks)),
            (None, "end") => return err(line, "`end` without an open block"),
            (None, other) => return err(line, format!("unknown statement `{other}`")),
        }
    }
    if let Some(b) = open {
        return err(b.line, "block is not closed with `end`");
    }
    Ok((statements, out))
}

fn expect_len(line: usize, toks: &[String], n: usize, what: &str) -> Result<(), ParseError> {
    if toks.len() != n {
        return err(line, format!("malformed {what}"));
    }
    Ok(())
}

/// A category block: objects, arrows and composites.
fn parse_category(block: &Block) -> Result<FinCategory, ParseError> {
    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String, usize)> = Vec::new();
    let mut composes: Vec<(String, String, String, usize)> = Vec::new();
    for (line, toks) in &block.body {
        match toks[0].as_str() {
            "objects" => {
                if toks.len() < 2 {
                    return err(*line, "`objects` needs at least one name");
                }
                for name in &toks[1..] {
                    if objects.contains(name) {
                        return err(*line, format!("duplicate object `{name}`"));
                    }
                    objects.push(name.clone());
                }
            }
            "arrow" => {
                expect_len(*line, toks, 6, "arrow line, expected `arrow NAME : A -> B`")?;
                if toks[2] != ":" || toks[4] != "->" {
                    return err(
                        *line,
                        "malformed arrow line, expected `arrow NAME : A -> B`",
                    );
                }
                arrows.push((toks[1].clone(), toks[3].clone(), toks[5].clone(), *line));
            }
            "compose" => {
                expect_len(*line, toks, 5, "compose line, expected `compose H = G F`")?;
                if toks[2] != "=" {
                    return err(*line, "malformed compose line, expected `compose H = G F`");
                }
                composes.push((toks[1].clone(), toks[3].clone(), toks[4].clone(), *line));
            }
            other => return err(*line, format!("unknown category entry `{other}`")),
        }
    }
    if objects.is_empty() {
        return err(block.line, "category has no objects");
    }
    let obj = |name: &str, line: usize| -> Result<usize, ParseError> {
        objects
            .iter()
            .position(|o| o == name)
            .map_or_else(|| err(line, format!("unknown object `{name}`")), Ok)
    };
    let mut mors: Vec<(String, usize, usize)> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| (format!("id_{o}"), i, i))
        .collect();
    for (name, s, t, line) in &arrows {
        if mors.iter().any(|m| &m.0 == name) || objects.contains(name) {
            return err(*line, format!("duplicate name `{name}`"));
        }
        mors.push((name.clone(), obj(s, *line)?, obj(t, *line)?));
    }
    let mor = |name: &str, line: usize| -> Result<usize, ParseError> {
        mors.iter()
            .position(|m| m.0 == name)
            .map_or_else(|| err(line, format!("unknown arrow `{name}`")), Ok)
    };
    let mut table = Vec::new();
    let mut seen = HashMap::new();
    for (h, g, f, line) in &composes {
        let (h, g, f) = (mor(h, *line)?, mor(g, *line)?, mor(f, *line)?);
        if mors[f].2 != mors[g].1 {
            return err(
                *line,
                format!("`{}` and `{}` are not composable", mors[g].0, mors[f].0),
            );
        }
        if mors[h].1 != mors[f].1 || mors[h].2 != mors[g].2 {
            return err(
                *line,
                format!("composite `{}` has the wrong endpoints", mors[h].0),
            );
        }
        if let Some(prev) = seen.insert((g, f), (h, *line)) {
            if prev.0 != h {
                return err(
                    *line,
                    format!(
                        "composite of `{}` and `{}` given twice",
                        mors[g].0, mors[f].0
                    ),
                );
            }
        }
        table.push((g, f, h));
    }
    let cat = FinCategory::from_tables(
        objects.clone(),
        mors.clone(),
        (0..objects.len()).collect(),
        &table,
    )
    .map_err(|e| ParseError {
        line: block.line,
        message: e.to_string(),
    })?
    .with_unit_laws();
    let report = cat.validate();
    if let Some(first) = report.violations.first() {
        // Locate associativity failures at the compose line that introduced them when possible.
        let line = composes
            .iter()
            .find(|(h, g, f, _)| {
                first.contains(h.as_str())
                    || (first.contains(g.as_str()) && first.contains(f.as_str()))
            })
            .map_or(block.line, |c| c.3);
        return err(line, format!("not a category: {first}"));
    }
    Ok(cat)
}

fn parse_simplex(
    toks: &[String],
    pos: &mut usize,
    line: usize,
    cells: &HashMap<String, usize>,
    dims: &[usize],
) -> Result<SimplexRef, ParseError> {
    let Some(t) = toks.get(*pos) else {
        return err(line, "expected a simplex");
    };
    *pos += 1;
    if let Some(idx) = t.strip_prefix('s').and_then(|d| d.parse::<usize>().ok()) {
        if toks.get(*pos).map(String::as_str) == Some("(") {
            *pos += 1;
            let inner = parse_simplex(toks, pos, line, cells, dims)?;
            if toks.get(*pos).map(String::as_str) != Some(")") {
                return err(line, "missing `)`");
            }
            *pos += 1;
            if idx > inner.degree() {
                return err(
                    line,
                    format!(
                        "degeneracy s{idx} on a simplex of degree {}",
                        inner.degree()
                    ),
                );
            }
            return Ok(inner.degen(idx));
        }
    }
    match cells.get(t) {
        Some(&c) => Ok(SimplexRef::nondegenerate(c, dims[c])),
        None => err(line, format!("unknown cell `{t}`")),
    }
}

struct SSetValue {
    pres: Presentation,
    names: HashMap<String, usize>,
    order: Vec<String>,
    keyed: Keyed<SimplexRef>,
    marks: Vec<(usize, SimplexRef)>,
}

#[derive(Default)]
struct CellTable {
    pres: Presentation,
    names: HashMap<String, usize>,
    order: Vec<String>,
    dims: Vec<usize>,
    lines: Vec<usize>,
}

impl CellTable {
    fn add(&mut self, name: &str, cell: Cell, line: usize) -> Result<(), ParseError> {
        if self.names.contains_key(name) {
            return err(line, format!("duplicate cell `{name}`"));
        }
        self.names.insert(name.to_string(), self.pres.cells.len());
        self.order.push(name.to_string());
        self.lines.push(line);
        self.dims.push(cell.dim);
        self.pres.cells.push(cell);
        Ok(())
    }

    fn simplices(
        &self,
        toks: &[String],
        mut pos: usize,
        line: usize,
    ) -> Result<Vec<SimplexRef>, ParseError> {
        let mut out = Vec::new();
        while pos < toks.len() {
            out.push(parse_simplex(
                toks,
                &mut pos,
                line,
                &self.names,
                &self.dims,
            )?);
        }
        Ok(out)
    }
}

fn parse_sset(block: &Block, cap: usize, marked: bool) -> Result<SSetValue, ParseError> {
    let mut t = CellTable::default();
    let mut marks = Vec::new();
    for (line, toks) in &block.body {
        match toks[0].as_str() {
            "vertex" => {
                if toks.len() < 2 {
                    return err(*line, "`vertex` needs at least one name");
                }
                for n in &toks[1..] {
                    t.add(
                        n,
                        Cell {
                            dim: 0,
                            faces: vec![],
                        },
                        *line,
                    )?;
                }
            }
            "cell" => {
                if toks.len() < 3 {
                    return err(
                        *line,
                        "malformed cell line, expected `cell NAME DIM : FACES`",
                    );
                }
                let dim: usize = toks[2].parse().map_err(|_| ParseError {
                    line: *line,
                    message: "cell dimension must be a number".into(),
                })?;
                let faces = if dim == 0 {
                    if toks.len() != 3 {
                        return err(*line, "a vertex has no faces");
                    }
                    vec![]
                } else {
                    if toks.get(3).map(String::as_str) != Some(":") {
                        return err(*line, "a positive-dimensional cell needs `: FACES`");
                    }
                    t.simplices(toks, 4, *line)?
                };
                t.add(&toks[1], Cell { dim, faces }, *line)?;
            }
            "mark" => {
                if !marked {
                    return err(*line, "`mark` is only allowed in diagrams of kind marked");
                }
                marks.extend(t.simplices(toks, 1, *line)?.into_iter().map(|s| (*line, s)));
            }
            other => return err(*line, format!("unknown sset entry `{other}`")),
        }
    }
    if t.pres.cells.is_empty() {
        return err(block.line, "simplicial set has no cells");
    }
    if let Err((c, w)) = t.pres.validate() {
        return err(t.lines[c], format!("cell `{}`: {w}", t.order[c]));
    }
    if let Some(c) = t.dims.iter().position(|&d| d > cap) {
        return err(
            t.lines[c],
            format!("cell `{}` has dimension above the cap {cap}", t.order[c]),
        );
    }
    let keyed = t.pres.build(cap).map_err(|e| ParseError {
        line: block.line,
        message: e.to_string(),
    })?;
    Ok(SSetValue {
        pres: t.pres,
        names: t.names,
        order: t.order,
        keyed,
        marks,
    })
}

fn parse_map(block: &Block, dom: &SSetValue, cod: &SSetValue) -> Result<SimplicialMap, ParseError> {
    let dims: Vec<usize> = cod.pres.cells.iter().map(|c| c.dim).collect();
    let mut images: Vec<Option<SimplexRef>> = vec![None; dom.pres.cells.len()];
    for (line, toks) in &block.body {
        if toks.len() < 3 || toks[1] != "->" {
            return err(*line, "malformed map line, expected `CELL -> SIMPLEX`");
        }
        let Some(&c) = dom.names.get(&toks[0]) else {
            return err(*line, format!("unknown source cell `{}`", toks[0]));
        };
        let mut pos = 2;
        let s = parse_simplex(toks, &mut pos, *line, &cod.names, &dims)?;
        if pos != toks.len() {
            return err(*line, "unexpected tokens after the image");
        }
        if s.degree() != dom.pres.cells[c].dim {
            return err(
                *line,
                format!(
                    "image of `{}` has degree {}, expected {}",
                    toks[0],
                    s.degree(),
                    dom.pres.cells[c].dim
                ),
            );
        }
        if images[c].replace(s).is_some() {
            return err(*line, format!("cell `{}` mapped twice", toks[0]));
        }
    }
    let images: Vec<SimplexRef> = images
        .into_iter()
        .enumerate()
        .map(|(c, s)| {
            s.map_or_else(
                || err(block.line, format!("cell `{}` is not mapped", dom.order[c])),
                Ok,
            )
        })
        .collect::<Result<_, _>>()?;
    dom.pres
        .map_to(&dom.keyed, &cod.pres, &cod.keyed, &images)
        .map_err(|e| ParseError {
            line: block.line,
            message: e.to_string(),
        })
}

fn parse_functor(
    block: &Block,
    dom: &FinCategory,
    cod: &FinCategory,
) -> Result<CatFunctor, ParseError> {
    let mut obj_map = vec![None; dom.num_objects()];
    let mut mor_map = vec![None; dom.num_morphisms()];
    for (line, toks) in &block.body {
        expect_len(*line, toks, 3, "functor line, expected `NAME -> NAME`")?;
        if toks[1] != "->" {
            return err(*line, "malformed functor line, expected `NAME -> NAME`");
        }
        if let Some(x) = dom.object_by_name(&toks[0]) {
            let Some(y) = cod.object_by_name(&toks[2]) else {
                return err(*line, format!("unknown target object `{}`", toks[2]));
            };
            if obj_map[x].replace(y).is_some() {
                return err(*line, format!("object `{}` mapped twice", toks[0]));
            }
        } else if let Some(f) = dom.morphism_by_name(&toks[0]) {
            let Some(g) = cod.morphism_by_name(&toks[2]) else {
                return err(*line, format!("unknown target arrow `{}`", toks[2]));
            };
            if mor_map[f].replace(g).is_some() {
                return err(*line, format!("arrow `{}` mapped twice", toks[0]));
            }
        } else {
            return err(*line, format!("unknown source `{}`", toks[0]));
        }
    }
    let obj_map: Vec<usize> = obj_map
        .into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.map_or_else(
                || {
                    err(
                        block.line,
                        format!("object `{}` is not mapped", dom.object_name(x)),
                    )
                },
                Ok,
            )
        })
        .collect::<Result<_, _>>()?;
    let mor_map: Vec<usize> = (0..dom.num_morphisms())
        .map(|f| match mor_map[f] {
            Some(g) => Ok(g),
            None if dom.is_identity(f) => Ok(cod.identity(obj_map[dom.source(f)])),
            None => err(
                block.line,
                format!("arrow `{}` is not mapped", dom.morphism_name(f)),
            ),
        })
        .collect::<Result<_, _>>()?;
    let functor = CatFunctor { obj_map, mor_map };
    if let Some(p) = functor.validate(dom, cod).first() {
        return err(block.line, format!("not a functor: {p}"));
    }
    Ok(functor)
}

/// Checks `F(g ∘ f) = F(g) ∘ F(f)` and reports at the block of the composite.
fn check_composites<T: PartialEq>(
    shape: &FinCategory,
    values: &[T],
    lines: &[usize],
    then: impl Fn(&T, &T) -> T,
) -> Result<(), ParseError> {
    for f in 0..shape.num_morphisms() {
        for g in 0..shape.num_morphisms() {
            if let Some(h) = shape.try_compose(g, f) {
                if then(&values[f], &values[g]) != values[h] {
                    return err(
                        lines[h],
                        format!(
                            "not functorial: value on `{}` differs from the composite of `{}` and `{}`",
                            shape.morphism_name(h),
                            shape.morphism_name(g),
                            shape.morphism_name(f)
                        ),
                    );
                }
            }
        }
    }
    Ok(())
}

/// Parses and validates a diagram file. `cap_override` replaces the file's cap.
pub fn parse(text: &str, cap_override: Option<usize>) -> Result<DiagramSpec, ParseError> {
    let (statements, blocks) = blocks(text)?;
    let mut kind = None;
    let mut cap = DEFAULT_CAP;
    for (line, toks) in &statements {
        expect_len(*line, toks, 2, "statement")?;
        match toks[0].as_str() {
            "diagram" => {
                if kind.is_some() {
                    return err(*line, "diagram kind given twice");
                }
                kind = Some(match toks[1].as_str() {
                    "cat" => Kind::Cat,
                    "sset" => Kind::SSet,
                    "marked" => Kind::Marked,
                    other => return err(*line, format!("unknown diagram kind `{other}`")),
                });
            }
            _ => {
                cap = toks[1].parse().map_err(|_| ParseError {
                    line: *line,
                    message: "cap must be a number".into(),
                })?
            }
        }
    }
    let cap = cap_override.unwrap_or(cap);
    let Some(kind) = kind else {
        return err(0, "missing `diagram cat|sset|marked`");
    };
    let shapes: Vec<&Block> = blocks.iter().filter(|b| b.head[0] == "shape").collect();
    let shape_block = match shapes.as_slice() {
        [one] => *one,
        [] => return err(0, "missing `shape` block"),
        [_, second, ..] => return err(second.line, "second `shape` block"),
    };
    if shape_block.head.len() != 1 {
        return err(shape_block.line, "`shape` takes no arguments");
    }
    let shape = parse_category(shape_block)?;
    let mut per_object: Vec<Option<&Block>> = vec![None; shape.num_objects()];
    let mut per_arrow: Vec<Option<&Block>> = vec![None; shape.num_morphisms()];
    for b in blocks.iter().filter(|b| b.head[0] != "shape") {
        if b.head.len() != 2 {
            return err(b.line, format!("`{}` takes exactly one name", b.head[0]));
        }
        let value_kind = if kind == Kind::Cat {
            "category"
        } else {
            "sset"
        };
        let arrow_kind = if kind == Kind::Cat { "functor" } else { "map" };
        let head = b.head[0].as_str();
        if head == value_kind {
            let Some(c) = shape.object_by_name(&b.head[1]) else {
                return err(b.line, format!("unknown shape object `{}`", b.head[1]));
            };
            if per_object[c].replace(b).is_some() {
                return err(b.line, format!("second value for `{}`", b.head[1]));
            }
        } else if head == arrow_kind {
            let Some(f) = shape.morphism_by_name(&b.head[1]) else {
                return err(b.line, format!("unknown shape arrow `{}`", b.head[1]));
            };
            if shape.is_identity(f) {
                return err(
                    b.line,
                    "identity arrows act as identities and take no block",
                );
            }
            if per_arrow[f].replace(b).is_some() {
                return err(b.line, format!("second block for `{}`", b.head[1]));
            }
        } else {
            return err(
                b.line,
                format!(
                    "`{head}` blocks are not allowed in diagrams of kind {}",
                    kind.name()
                ),
            );
        }
    }
    for c in 0..shape.num_objects() {
        if per_object[c].is_none() {
            return err(0, format!("no value for object `{}`", shape.object_name(c)));
        }
    }
    for f in 0..shape.num_morphisms() {
        if !shape.is_identity(f) && per_arrow[f].is_none() {
            return err(
                0,
                format!("no block for arrow `{}`", shape.morphism_name(f)),
            );
        }
    }
    let lines: Vec<usize> = (0..shape.num_morphisms())
        .map(|f| per_arrow[f].map_or(shape_block.line, |b| b.line))
        .collect();
    let diagram = match kind {
        Kind::Cat => {
            let values: Vec<FinCategory> = per_object
                .iter()
                .map(|b| parse_category(b.expect("checked")))
                .collect::<Result<_, _>>()?;
            let functors: Vec<CatFunctor> = (0..shape.num_morphisms())
                .map(|f| match per_arrow[f] {
                    None => Ok(CatFunctor::identity(&values[shape.source(f)])),
                    Some(b) => parse_functor(b, &values[shape.source(f)], &values[shape.target(f)]),
                })
                .collect::<Result<_, _>>()?;
            check_composites(&shape, &functors, &lines, |a, b| a.then(b))?;
            let d = CatDiagram::checked(shape, values, functors).map_err(|e| ParseError {
                line: 0,
                message: e.to_string(),
            })?;
            Parsed::Cat(d)
        }
        Kind::SSet | Kind::Marked => {
            let marked = kind == Kind::Marked;
            let values: Vec<SSetValue> = per_object
                .iter()
                .map(|b| parse_sset(b.expect("checked"), cap, marked))
                .collect::<Result<_, _>>()?;
            let maps: Vec<SimplicialMap> = (0..shape.num_morphisms())
                .map(|f| match per_arrow[f] {
                    None => Ok(SimplicialMap::identity(&values[shape.source(f)].keyed.sset)),
                    Some(b) => parse_map(b, &values[shape.source(f)], &values[shape.target(f)]),
                })
                .collect::<Result<_, _>>()?;
            check_composites(&shape, &maps, &lines, |a, b| a.then(b))?;
            let mut marks = Vec::new();
            for v in &values {
                let s = &v.keyed.sset;
                let mut m: Vec<bool> = (0..s.size(1)).map(|e| s.is_degenerate(1, e)).collect();
                for (line, r) in &v.marks {
                    if r.degree() != 1 {
                        return err(*line, "only edges can be marked");
                    }
                    m[v.keyed.id(1, r).expect("edge within cap")] = true;
                }
                marks.push(m);
            }
            let d = SSetDiagram::checked(
                shape,
                values.into_iter().map(|v| v.keyed.sset).collect(),
                maps,
            )
            .map_err(|e| ParseError {
                line: 0,
                message: e.to_string(),
            })?;
            if marked {
                let md = MarkedDiagram::new(d, marks).map_err(|e| ParseError {
                    line: 0,
                    message: e.to_string(),
                })?;
                Parsed::Marked(md)
            } else {
                Parsed::SSet(d)
            }
        }
    };
    Ok(DiagramSpec { cap, diagram })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPAN: &str = "
diagram sset
cap 3
shape
  objects a b c
  arrow f : c -> a
  arrow g : c -> b
end
sset a
  vertex p
end
sset b
  vertex q
end
sset c
  vertex x y
end
map f
  x -> p
  y -> p
end
map g
  x -> q
  y -> q
end
";

    #[test]
    fn tokens_split_punctuation() {
        assert_eq!(
            tokenize("cell t 2: s0(p) e"),
            vec!["cell", "t", "2", ":", "s0", "(", "p", ")", "e"]
        );
        assert_eq!(
            tokenize("arrow f : a->b"),
            vec!["arrow", "f", ":", "a", "->", "b"]
        );
    }

    #[test]
    fn span_parses() {
        let spec = parse(SPAN, None).unwrap();
        let Parsed::SSet(d) = spec.diagram else {
            panic!("kind")
        };
        assert_eq!(d.shape.num_morphisms(), 5);
        assert_eq!(d.values[2].size(0), 2);
        assert_eq!(d.cap(), 3);
    }

    #[test]
    fn degenerate_faces_and_marks() {
        let text = "
diagram marked
shape
  objects o
end
sset o
  vertex p
  cell e 1 : p p
  cell t 2 : e e s0(p)
  mark e
end
";
        let spec = parse(text, Some(2)).unwrap();
        let Parsed::Marked(d) = spec.diagram else {
            panic!("kind")
        };
        assert_eq!(d.diagram.values[0].nondegenerate_counts(), vec![1, 1, 1]);
        assert!(d.marks[0].iter().all(|&m| m));
    }

    #[test]
    fn errors_carry_lines() {
        let bad = SPAN.replace("  y -> q\n", "");
        let e = parse(&bad, None).unwrap_err();
        assert_eq!(e.line, 22);
        assert!(e.message.contains("not mapped"), "{e}");
        let e = parse(
            "diagram cat\nshape\n objects a\n arrow f : a -> b\nend\n",
            None,
        )
        .unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn wrong_composite_is_located() {
        let text = "
diagram cat
shape
  objects a b c
  arrow f : a -> b
  arrow g : b -> c
  arrow h : a -> c
  arrow k : a -> c
  compose h = g f
  compose k = g f
end
";
        let e = parse(text, None).unwrap_err();
        assert_eq!(e.line, 10);
    }
}
