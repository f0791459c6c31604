//! Text format for categories, 2-categories with marked arrows, diagrams,
//! weights and algebra diagrams, plus the CLI that runs every operation and
//! emits canonical JSON reports.
//!
//! The format is line-oriented with `#` comments. Identity cells are never
//! written: the parser creates `id_<object>` arrows (and `id2_<cell>`
//! 2-cells) and fills in exactly the table entries forced by the category
//! axioms; everything else must be declared, and the validator reports
//! missing entries instead of inferring them.

mod ast;
mod lexer;
mod parser;
mod printer;
mod report;
mod runner;

pub use ast::{AlgEntry, Expr};
pub use report::emit_report;
pub use runner::{run_command, ENV_CORPUS};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use thiserror::Error;

use crate::algebras::{monad_by_name, AlgebraDiagram, AlgebraDiagramBuilder, Algebra, Monad2};
use crate::diagnostics::Diagnostics;
use crate::fincat::{Arrow, CellClass, FinCategory, Functor, NatTrans};
use crate::two_cat::{OneCell, SigmaFamily, TwoCategory, TwoCell, TwoFunctor, TwoFunctorBuilder};

use ast::{RawAlgDiagram, RawCategory, RawDecl, RawDiagram, RawFunctor, RawNatural, RawTwoCat};
use lexer::Pos;

/// A parse or resolution failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{file}:{line}:{col}: {message}")]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn perr(file: &str, pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError {
        file: file.to_string(),
        line: pos.0,
        col: pos.1,
        message: message.into(),
    }
}

/// A named diagram: its indexing 2-category (by name), the 2-functor, and
/// the marked family inherited from the shape.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramEntry {
    pub shape_name: String,
    pub functor: Arc<TwoFunctor>,
    pub sigma: SigmaFamily,
}

/// A named algebra diagram with its shape and monad names.
#[derive(Debug, Clone)]
pub struct AlgDiagramEntry {
    pub shape_name: String,
    pub monad_name: String,
    pub diagram: AlgebraDiagram,
}

impl PartialEq for AlgDiagramEntry {
    fn eq(&self, other: &Self) -> bool {
        self.shape_name == other.shape_name
            && self.monad_name == other.monad_name
            && self.diagram.shape == other.diagram.shape
            && self.diagram.sigma == other.diagram.sigma
            && self.diagram.algebras == other.diagram.algebras
            && self.diagram.morphisms == other.diagram.morphisms
            && self.diagram.cells == other.diagram.cells
    }
}

/// Printable record of a declaration, in resolution order.
#[derive(Debug, Clone, PartialEq)]
pub enum DeclRecord {
    Category(String),
    TwoCat(String),
    Functor { name: String, dom: Expr, cod: Expr },
    Natural { name: String, dom: Expr, cod: Expr },
    Diagram { name: String, shape: String, weight: bool, entries: Vec<(String, Expr)> },
    AlgDiagram { name: String, shape: String, monad: String, entries: Vec<(String, AlgEntry)> },
}

/// All named entities parsed from one or more input files. Names live in a
/// single namespace; every reference resolves and (in strict mode) every
/// entity passes its structural validator.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub decls: Vec<DeclRecord>,
    pub categories: IndexMap<String, Arc<FinCategory>>,
    pub twocats: IndexMap<String, (Arc<TwoCategory>, SigmaFamily)>,
    pub functors: IndexMap<String, Functor>,
    pub naturals: IndexMap<String, NatTrans>,
    pub diagrams: IndexMap<String, DiagramEntry>,
    pub weights: IndexMap<String, DiagramEntry>,
    pub algdiagrams: IndexMap<String, AlgDiagramEntry>,
    /// Which file each top-level name came from.
    pub origins: BTreeMap<String, String>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
            && self.categories == other.categories
            && self.twocats == other.twocats
            && self.functors == other.functors
            && self.naturals == other.naturals
            && self.diagrams == other.diagrams
            && self.weights == other.weights
            && self.algdiagrams == other.algdiagrams
    }
}

impl fmt::Display for Workspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&printer::print(self))
    }
}

impl Workspace {
    /// Structural diagnostics for every entity, keyed by name, in
    /// declaration order. Empty lists are included.
    pub fn validate_all(&self) -> Vec<(String, Diagnostics)> {
        let mut out = Vec::new();
        for record in &self.decls {
            match record {
                DeclRecord::Category(name) => {
                    out.push((name.clone(), self.categories[name].validate()));
                }
                DeclRecord::TwoCat(name) => {
                    let (cat, sigma) = &self.twocats[name];
                    let mut d = cat.validate();
                    d.extend(crate::two_cat::validate_sigma_family(cat, sigma));
                    out.push((name.clone(), d));
                }
                DeclRecord::Functor { name, .. } => {
                    out.push((name.clone(), self.functors[name].validate()));
                }
                DeclRecord::Natural { name, .. } => {
                    out.push((name.clone(), self.naturals[name].validate()));
                }
                DeclRecord::Diagram { name, weight, .. } => {
                    let entry = if *weight { &self.weights[name] } else { &self.diagrams[name] };
                    out.push((name.clone(), entry.functor.validate()));
                }
                DeclRecord::AlgDiagram { name, .. } => {
                    out.push((name.clone(), self.algdiagrams[name].diagram.validate(CellClass::Lax)));
                }
            }
        }
        out
    }
}

/// Parses a single text into a workspace, validating every entity.
pub fn parse_workspace(text: &str) -> Result<Workspace, ParseError> {
    parse_workspace_named("<input>", text, true)
}

/// Parses without running the structural validators (used by the `validate`
/// command, which reports the diagnostics itself).
pub fn parse_workspace_unchecked(text: &str) -> Result<Workspace, ParseError> {
    parse_workspace_named("<input>", text, false)
}

pub fn parse_workspace_named(file: &str, text: &str, strict: bool) -> Result<Workspace, ParseError> {
    let decls = parser::parse_decls(file, text)?;
    resolve(vec![(file.to_string(), decls)], strict)
}

/// Parses several files into one workspace; cross-file references are
/// allowed in any order.
pub fn parse_files(sources: &[(String, String)], strict: bool) -> Result<Workspace, ParseError> {
    let mut parsed = Vec::new();
    for (file, text) in sources {
        parsed.push((file.clone(), parser::parse_decls(file, text)?));
    }
    resolve(parsed, strict)
}

/// Canonical text for a workspace; `parse_workspace(print(ws))` returns an
/// equal workspace.
pub fn print(ws: &Workspace) -> String {
    printer::print(ws)
}

enum Fail {
    /// A referenced name that is not (yet) defined; resolution retries.
    Missing(String),
    Fatal(ParseError),
}

fn resolve(files: Vec<(String, Vec<RawDecl>)>, strict: bool) -> Result<Workspace, ParseError> {
    let mut ws = Workspace::default();
    let mut pending: Vec<(String, RawDecl)> = files
        .into_iter()
        .flat_map(|(f, ds)| ds.into_iter().map(move |d| (f.clone(), d)))
        .collect();
    loop {
        let mut progressed = false;
        let mut next_round = Vec::new();
        let mut last_missing: Option<(String, Pos, String)> = None;
        for (file, decl) in pending {
            let name = decl.name().to_string();
            if ws.origins.contains_key(&name) {
                return Err(perr(&file, decl.pos(), format!("duplicate name `{name}`")));
            }
            match resolve_decl(&mut ws, &file, &decl, strict) {
                Ok(()) => {
                    ws.origins.insert(name, file.clone());
                    progressed = true;
                }
                Err(Fail::Missing(missing)) => {
                    last_missing = Some((file.clone(), decl.pos(), missing));
                    next_round.push((file, decl));
                }
                Err(Fail::Fatal(e)) => return Err(e),
            }
        }
        if next_round.is_empty() {
            return Ok(ws);
        }
        if !progressed {
            let (file, pos, missing) = last_missing.expect("pending implies a missing name");
            return Err(perr(&file, pos, format!("unresolved reference `{missing}`")));
        }
        pending = next_round;
    }
}

fn resolve_decl(ws: &mut Workspace, file: &str, decl: &RawDecl, strict: bool) -> Result<(), Fail> {
    match decl {
        RawDecl::Category(raw) => resolve_category(ws, file, raw, strict),
        RawDecl::TwoCat(raw) => resolve_twocat(ws, file, raw, strict),
        RawDecl::Functor(raw) => resolve_functor(ws, file, raw, strict),
        RawDecl::Natural(raw) => resolve_natural(ws, file, raw, strict),
        RawDecl::Diagram(raw) => resolve_diagram(ws, file, raw, strict),
        RawDecl::AlgDiagram(raw) => resolve_algdiagram(ws, file, raw, strict),
    }
}

fn fatal(file: &str, pos: Pos, message: impl Into<String>) -> Fail {
    Fail::Fatal(perr(file, pos, message))
}

fn check_valid(file: &str, pos: Pos, what: &str, diags: Diagnostics, strict: bool) -> Result<(), Fail> {
    if strict && !diags.is_empty() {
        return Err(fatal(
            file,
            pos,
            format!("{what} fails validation: {}: {}", diags[0].rule, diags[0].detail),
        ));
    }
    Ok(())
}

fn resolve_category(ws: &mut Workspace, file: &str, raw: &RawCategory, strict: bool) -> Result<(), Fail> {
    let mut objects = Vec::new();
    for (o, pos) in &raw.objects {
        if objects.contains(o) {
            return Err(fatal(file, *pos, format!("duplicate object `{o}`")));
        }
        objects.push(o.clone());
    }
    let mut arrows: Vec<Arrow> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| Arrow {
            id: format!("id_{o}"),
            src: i,
            tgt: i,
        })
        .collect();
    let identity: Vec<usize> = (0..objects.len()).collect();
    for (id, src, tgt, pos) in &raw.arrows {
        if arrows.iter().any(|a| &a.id == id) {
            return Err(fatal(file, *pos, format!("duplicate or reserved arrow id `{id}`")));
        }
        let s = objects
            .iter()
            .position(|o| o == src)
            .ok_or_else(|| fatal(file, *pos, format!("unknown object `{src}`")))?;
        let t = objects
            .iter()
            .position(|o| o == tgt)
            .ok_or_else(|| fatal(file, *pos, format!("unknown object `{tgt}`")))?;
        arrows.push(Arrow {
            id: id.clone(),
            src: s,
            tgt: t,
        });
    }
    let mut compose = BTreeMap::new();
    for (i, a) in arrows.iter().enumerate() {
        compose.insert((identity[a.tgt], i), i);
        compose.insert((i, identity[a.src]), i);
    }
    for (g, f, gf, pos) in &raw.compose {
        let gi = arrows
            .iter()
            .position(|a| &a.id == g)
            .ok_or_else(|| fatal(file, *pos, format!("unknown arrow `{g}`")))?;
        let fi = arrows
            .iter()
            .position(|a| &a.id == f)
            .ok_or_else(|| fatal(file, *pos, format!("unknown arrow `{f}`")))?;
        let ri = arrows
            .iter()
            .position(|a| &a.id == gf)
            .ok_or_else(|| fatal(file, *pos, format!("unknown arrow `{gf}`")))?;
        if arrows[fi].tgt != arrows[gi].src {
            return Err(fatal(file, *pos, format!("compose on non-composable pair (`{g}`, `{f}`)")));
        }
        if let Some(&prev) = compose.get(&(gi, fi)) {
            if prev != ri {
                return Err(fatal(file, *pos, format!("conflicting composite for (`{g}`, `{f}`)")));
            }
        }
        compose.insert((gi, fi), ri);
    }
    let cat = FinCategory {
        objects,
        arrows,
        identity,
        compose,
    };
    check_valid(file, raw.pos, &format!("category `{}`", raw.name), cat.validate(), strict)?;
    ws.categories.insert(raw.name.clone(), Arc::new(cat));
    ws.decls.push(DeclRecord::Category(raw.name.clone()));
    Ok(())
}

fn resolve_twocat(ws: &mut Workspace, file: &str, raw: &RawTwoCat, strict: bool) -> Result<(), Fail> {
    let mut objects = Vec::new();
    for (o, pos) in &raw.objects {
        if objects.contains(o) {
            return Err(fatal(file, *pos, format!("duplicate object `{o}`")));
        }
        objects.push(o.clone());
    }
    let mut one_cells: Vec<OneCell> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| OneCell {
            id: format!("id_{o}"),
            src: i,
            tgt: i,
        })
        .collect();
    let one_identity: Vec<usize> = (0..objects.len()).collect();
    for (id, src, tgt, pos) in &raw.onecells {
        if one_cells.iter().any(|c| &c.id == id) {
            return Err(fatal(file, *pos, format!("duplicate or reserved 1-cell id `{id}`")));
        }
        let s = objects
            .iter()
            .position(|o| o == src)
            .ok_or_else(|| fatal(file, *pos, format!("unknown object `{src}`")))?;
        let t = objects
            .iter()
            .position(|o| o == tgt)
            .ok_or_else(|| fatal(file, *pos, format!("unknown object `{tgt}`")))?;
        one_cells.push(OneCell {
            id: id.clone(),
            src: s,
            tgt: t,
        });
    }
    let one_ix = |id: &str, pos: Pos| {
        one_cells
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| fatal(file, pos, format!("unknown 1-cell `{id}`")))
    };
    let mut one_compose = BTreeMap::new();
    for (i, c) in one_cells.iter().enumerate() {
        one_compose.insert((one_identity[c.tgt], i), i);
        one_compose.insert((i, one_identity[c.src]), i);
    }
    for (g, f, gf, pos) in &raw.compose {
        let gi = one_ix(g, *pos)?;
        let fi = one_ix(f, *pos)?;
        let ri = one_ix(gf, *pos)?;
        if one_cells[fi].tgt != one_cells[gi].src {
            return Err(fatal(file, *pos, format!("compose on non-composable pair (`{g}`, `{f}`)")));
        }
        if let Some(&prev) = one_compose.get(&(gi, fi)) {
            if prev != ri {
                return Err(fatal(file, *pos, format!("conflicting composite for (`{g}`, `{f}`)")));
            }
        }
        one_compose.insert((gi, fi), ri);
    }
    let mut two_cells: Vec<TwoCell> = (0..one_cells.len())
        .map(|f| TwoCell {
            id: format!("id2_{}", one_cells[f].id),
            src: f,
            tgt: f,
        })
        .collect();
    let two_identity: Vec<usize> = (0..one_cells.len()).collect();
    for (id, src, tgt, pos) in &raw.twocells {
        if two_cells.iter().any(|c| &c.id == id) {
            return Err(fatal(file, *pos, format!("duplicate or reserved 2-cell id `{id}`")));
        }
        let s = one_ix(src, *pos)?;
        let t = one_ix(tgt, *pos)?;
        two_cells.push(TwoCell {
            id: id.clone(),
            src: s,
            tgt: t,
        });
    }
    let two_ix = |id: &str, pos: Pos| {
        two_cells
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| fatal(file, pos, format!("unknown 2-cell `{id}`")))
    };
    let mut vcompose = BTreeMap::new();
    for (i, c) in two_cells.iter().enumerate() {
        vcompose.insert((two_identity[c.tgt], i), i);
        vcompose.insert((i, two_identity[c.src]), i);
    }
    for (b, a, r, pos) in &raw.vcompose {
        let bi = two_ix(b, *pos)?;
        let ai = two_ix(a, *pos)?;
        let ri = two_ix(r, *pos)?;
        if two_cells[ai].tgt != two_cells[bi].src {
            return Err(fatal(file, *pos, format!("vcompose on non-composable pair (`{b}`, `{a}`)")));
        }
        vcompose.insert((bi, ai), ri);
    }
    let mut whisker_post = BTreeMap::new();
    let mut whisker_pre = BTreeMap::new();
    for g in 0..one_cells.len() {
        for (a, cell) in two_cells.iter().enumerate() {
            let cod_obj = one_cells[cell.src].tgt;
            let dom_obj = one_cells[cell.src].src;
            if one_cells[g].src == cod_obj {
                if g == one_identity[cod_obj] {
                    whisker_post.insert((g, a), a);
                } else if a == two_identity[cell.src] {
                    if let Some(&gf) = one_compose.get(&(g, cell.src)) {
                        whisker_post.insert((g, a), two_identity[gf]);
                    }
                }
            }
            if one_cells[g].tgt == dom_obj {
                if g == one_identity[dom_obj] {
                    whisker_pre.insert((a, g), a);
                } else if a == two_identity[cell.src] {
                    if let Some(&fe) = one_compose.get(&(cell.src, g)) {
                        whisker_pre.insert((a, g), two_identity[fe]);
                    }
                }
            }
        }
    }
    for (g, a, r, pos) in &raw.whiskerl {
        let gi = one_ix(g, *pos)?;
        let ai = two_ix(a, *pos)?;
        let ri = two_ix(r, *pos)?;
        if one_cells[gi].src != one_cells[two_cells[ai].src].tgt {
            return Err(fatal(file, *pos, format!("whisker on non-matching pair (`{g}`, `{a}`)")));
        }
        whisker_post.insert((gi, ai), ri);
    }
    for (a, e, r, pos) in &raw.whiskerr {
        let ai = two_ix(a, *pos)?;
        let ei = one_ix(e, *pos)?;
        let ri = two_ix(r, *pos)?;
        if one_cells[ei].tgt != one_cells[two_cells[ai].src].src {
            return Err(fatal(file, *pos, format!("whisker on non-matching pair (`{a}`, `{e}`)")));
        }
        whisker_pre.insert((ai, ei), ri);
    }
    let mut sigma = SigmaFamily {
        members: one_identity.iter().copied().collect(),
    };
    for (id, pos) in &raw.sigma {
        sigma.members.insert(one_ix(id, *pos)?);
    }
    let cat = TwoCategory {
        objects,
        one_cells,
        one_identity,
        one_compose,
        two_cells,
        two_identity,
        vcompose,
        whisker_post,
        whisker_pre,
    };
    let mut diags = cat.validate();
    diags.extend(crate::two_cat::validate_sigma_family(&cat, &sigma));
    check_valid(file, raw.pos, &format!("twocat `{}`", raw.name), diags, strict)?;
    ws.twocats.insert(raw.name.clone(), (Arc::new(cat), sigma));
    ws.decls.push(DeclRecord::TwoCat(raw.name.clone()));
    Ok(())
}

fn resolve_cat_expr(ws: &Workspace, file: &str, pos: Pos, expr: &Expr) -> Result<Arc<FinCategory>, Fail> {
    match expr {
        Expr::Name(n) => ws
            .categories
            .get(n)
            .cloned()
            .ok_or_else(|| Fail::Missing(n.clone())),
        Expr::Apply(m, inner) => {
            let monad = monad_by_name(m).ok_or_else(|| fatal(file, pos, format!("unknown monad `{m}`")))?;
            let inner = resolve_cat_expr(ws, file, pos, inner)?;
            Ok(monad.on_category(&inner))
        }
        other => Err(fatal(file, pos, format!("`{}` is not a category expression", other.print()))),
    }
}

fn resolve_fun_expr(ws: &Workspace, file: &str, pos: Pos, expr: &Expr) -> Result<Functor, Fail> {
    match expr {
        Expr::Name(n) => ws.functors.get(n).cloned().ok_or_else(|| Fail::Missing(n.clone())),
        Expr::Id(inner) => Ok(Functor::identity(&resolve_cat_expr(ws, file, pos, inner)?)),
        Expr::Apply(m, inner) => {
            let monad = monad_by_name(m).ok_or_else(|| fatal(file, pos, format!("unknown monad `{m}`")))?;
            let inner = resolve_fun_expr(ws, file, pos, inner)?;
            Ok(monad.on_functor(&inner))
        }
        Expr::Compose(g, f) => {
            let g = resolve_fun_expr(ws, file, pos, g)?;
            let f = resolve_fun_expr(ws, file, pos, f)?;
            if f.cod != g.dom {
                return Err(fatal(file, pos, "functor composition mismatch".to_string()));
            }
            Ok(Functor::compose(&g, &f))
        }
        Expr::Id2(_) => Err(fatal(file, pos, "`id2(...)` is a natural transformation, not a functor")),
    }
}

fn resolve_nat_expr(ws: &Workspace, file: &str, pos: Pos, expr: &Expr) -> Result<NatTrans, Fail> {
    match expr {
        Expr::Name(n) => ws.naturals.get(n).cloned().ok_or_else(|| Fail::Missing(n.clone())),
        Expr::Id2(inner) => Ok(NatTrans::identity(&resolve_fun_expr(ws, file, pos, inner)?)),
        other => Err(fatal(file, pos, format!("`{}` is not a natural transformation expression", other.print()))),
    }
}

fn resolve_functor(ws: &mut Workspace, file: &str, raw: &RawFunctor, strict: bool) -> Result<(), Fail> {
    let dom = resolve_cat_expr(ws, file, raw.pos, &raw.dom)?;
    let cod = resolve_cat_expr(ws, file, raw.pos, &raw.cod)?;
    let mut on_objects: Vec<Option<usize>> = vec![None; dom.object_count()];
    let mut on_arrows: Vec<Option<usize>> = vec![None; dom.arrow_count()];
    for (lhs, rhs, pos) in &raw.entries {
        if let Some(x) = dom.object_index(lhs) {
            let y = cod
                .object_index(rhs)
                .ok_or_else(|| fatal(file, *pos, format!("unknown object `{rhs}` in the codomain")))?;
            if on_objects[x].replace(y).is_some() {
                return Err(fatal(file, *pos, format!("duplicate entry for `{lhs}`")));
            }
        } else if let Some(a) = dom.arrow_index(lhs) {
            let b = cod
                .arrow_index(rhs)
                .ok_or_else(|| fatal(file, *pos, format!("unknown arrow `{rhs}` in the codomain")))?;
            if on_arrows[a].replace(b).is_some() {
                return Err(fatal(file, *pos, format!("duplicate entry for `{lhs}`")));
            }
        } else {
            return Err(fatal(file, *pos, format!("`{lhs}` is neither an object nor an arrow of the domain")));
        }
    }
    let on_objects: Vec<usize> = on_objects
        .into_iter()
        .enumerate()
        .map(|(x, img)| img.ok_or_else(|| fatal(file, raw.pos, format!("no image for object `{}`", dom.objects[x]))))
        .collect::<Result<_, _>>()?;
    let on_arrows: Vec<usize> = on_arrows
        .into_iter()
        .enumerate()
        .map(|(a, img)| match img {
            Some(b) => {
                if dom.is_identity_arrow(a) && b != cod.identity[on_objects[dom.src(a)]] {
                    Err(fatal(file, raw.pos, format!("identity arrow `{}` must map to an identity", dom.arrows[a].id)))
                } else {
                    Ok(b)
                }
            }
            None if dom.is_identity_arrow(a) => Ok(cod.identity[on_objects[dom.src(a)]]),
            None => Err(fatal(file, raw.pos, format!("no image for arrow `{}`", dom.arrows[a].id))),
        })
        .collect::<Result<_, _>>()?;
    let functor = Functor {
        dom,
        cod,
        on_objects,
        on_arrows,
    };
    check_valid(file, raw.pos, &format!("functor `{}`", raw.name), functor.validate(), strict)?;
    ws.functors.insert(raw.name.clone(), functor);
    ws.decls.push(DeclRecord::Functor {
        name: raw.name.clone(),
        dom: raw.dom.clone(),
        cod: raw.cod.clone(),
    });
    Ok(())
}

fn resolve_natural(ws: &mut Workspace, file: &str, raw: &RawNatural, strict: bool) -> Result<(), Fail> {
    let dom = resolve_fun_expr(ws, file, raw.pos, &raw.dom)?;
    let cod = resolve_fun_expr(ws, file, raw.pos, &raw.cod)?;
    if dom.dom != cod.dom || dom.cod != cod.cod {
        return Err(fatal(file, raw.pos, "the two sides of the natural are not parallel"));
    }
    let base = dom.dom.clone();
    let target = dom.cod.clone();
    let mut components: Vec<Option<usize>> = vec![None; base.object_count()];
    for (lhs, rhs, pos) in &raw.entries {
        let x = base
            .object_index(lhs)
            .ok_or_else(|| fatal(file, *pos, format!("`{lhs}` is not an object of the domain")))?;
        let a = target
            .arrow_index(rhs)
            .ok_or_else(|| fatal(file, *pos, format!("unknown arrow `{rhs}`")))?;
        if components[x].replace(a).is_some() {
            return Err(fatal(file, *pos, format!("duplicate component for `{lhs}`")));
        }
    }
    let components: Vec<usize> = components
        .into_iter()
        .enumerate()
        .map(|(x, c)| c.ok_or_else(|| fatal(file, raw.pos, format!("no component for object `{}`", base.objects[x]))))
        .collect::<Result<_, _>>()?;
    let nat = NatTrans {
        dom,
        cod,
        components,
    };
    check_valid(file, raw.pos, &format!("natural `{}`", raw.name), nat.validate(), strict)?;
    ws.naturals.insert(raw.name.clone(), nat);
    ws.decls.push(DeclRecord::Natural {
        name: raw.name.clone(),
        dom: raw.dom.clone(),
        cod: raw.cod.clone(),
    });
    Ok(())
}

fn resolve_diagram(ws: &mut Workspace, file: &str, raw: &RawDiagram, strict: bool) -> Result<(), Fail> {
    let (shape, sigma) = ws
        .twocats
        .get(&raw.shape)
        .cloned()
        .ok_or_else(|| Fail::Missing(raw.shape.clone()))?;
    let mut builder = TwoFunctorBuilder::new(shape.clone());
    for (lhs, rhs, pos) in &raw.entries {
        if let Some(i) = shape.object_index(lhs) {
            let cat = resolve_cat_expr(ws, file, *pos, rhs)?;
            builder.assign_object(i, cat).map_err(|e| fatal(file, *pos, e))?;
        } else if let Some(i) = shape.one_index(lhs) {
            let f = resolve_fun_expr(ws, file, *pos, rhs)?;
            builder.assign_one(i, f).map_err(|e| fatal(file, *pos, e))?;
        } else if let Some(i) = shape.two_index(lhs) {
            let n = resolve_nat_expr(ws, file, *pos, rhs)?;
            builder.assign_two(i, n).map_err(|e| fatal(file, *pos, e))?;
        } else {
            return Err(fatal(file, *pos, format!("`{lhs}` is not a cell of shape `{}`", raw.shape)));
        }
    }
    let functor = builder.build().map_err(|e| fatal(file, raw.pos, e))?;
    check_valid(
        file,
        raw.pos,
        &format!("{} `{}`", if raw.weight { "weight" } else { "diagram" }, raw.name),
        functor.validate(),
        strict,
    )?;
    let entry = DiagramEntry {
        shape_name: raw.shape.clone(),
        functor: Arc::new(functor),
        sigma,
    };
    if raw.weight {
        ws.weights.insert(raw.name.clone(), entry);
    } else {
        ws.diagrams.insert(raw.name.clone(), entry);
    }
    ws.decls.push(DeclRecord::Diagram {
        name: raw.name.clone(),
        shape: raw.shape.clone(),
        weight: raw.weight,
        entries: raw.entries.iter().map(|(l, e, _)| (l.clone(), e.clone())).collect(),
    });
    Ok(())
}

fn resolve_algdiagram(ws: &mut Workspace, file: &str, raw: &RawAlgDiagram, strict: bool) -> Result<(), Fail> {
    let (shape, sigma) = ws
        .twocats
        .get(&raw.shape)
        .cloned()
        .ok_or_else(|| Fail::Missing(raw.shape.clone()))?;
    let monad: Arc<dyn Monad2> =
        monad_by_name(&raw.monad).ok_or_else(|| fatal(file, raw.pos, format!("unknown monad `{}`", raw.monad)))?;
    let mut builder = AlgebraDiagramBuilder::new(monad.clone(), shape.clone(), sigma);
    // Objects first, then 1-cells, then 2-cells: morphisms need their
    // endpoint algebras.
    for (lhs, entry, pos) in &raw.entries {
        if let Some(i) = shape.object_index(lhs) {
            match entry {
                ast::AlgEntry::Pair(carrier, structure) => {
                    let carrier = resolve_cat_expr(ws, file, *pos, carrier)?;
                    let structure = resolve_fun_expr(ws, file, *pos, structure)?;
                    builder
                        .assign_algebra(
                            i,
                            Algebra {
                                carrier,
                                structure,
                            },
                        )
                        .map_err(|e| fatal(file, *pos, e))?;
                }
                ast::AlgEntry::Single(_) => {
                    return Err(fatal(file, *pos, format!("object entry `{lhs}` needs a (carrier, structure) pair")));
                }
            }
        }
    }
    for (lhs, entry, pos) in &raw.entries {
        if let Some(i) = shape.one_index(lhs) {
            match entry {
                ast::AlgEntry::Pair(fun, cell) => {
                    let fun = resolve_fun_expr(ws, file, *pos, fun)?;
                    let cell = resolve_nat_expr(ws, file, *pos, cell)?;
                    builder.assign_morphism(i, fun, cell).map_err(|e| fatal(file, *pos, e))?;
                }
                ast::AlgEntry::Single(_) => {
                    return Err(fatal(file, *pos, format!("1-cell entry `{lhs}` needs a (functor, cell) pair")));
                }
            }
        } else if shape.object_index(lhs).is_none() && shape.two_index(lhs).is_none() {
            return Err(fatal(file, *pos, format!("`{lhs}` is not a cell of shape `{}`", raw.shape)));
        }
    }
    for (lhs, entry, pos) in &raw.entries {
        if let Some(i) = shape.two_index(lhs) {
            match entry {
                ast::AlgEntry::Single(e) => {
                    let n = resolve_nat_expr(ws, file, *pos, e)?;
                    builder.assign_cell(i, n).map_err(|e| fatal(file, *pos, e))?;
                }
                ast::AlgEntry::Pair(..) => {
                    return Err(fatal(file, *pos, format!("2-cell entry `{lhs}` takes a single expression")));
                }
            }
        }
    }
    let diagram = builder.build().map_err(|e| fatal(file, raw.pos, e))?;
    check_valid(
        file,
        raw.pos,
        &format!("algdiagram `{}`", raw.name),
        diagram.validate(CellClass::Lax),
        strict,
    )?;
    ws.algdiagrams.insert(
        raw.name.clone(),
        AlgDiagramEntry {
            shape_name: raw.shape.clone(),
            monad_name: raw.monad.clone(),
            diagram,
        },
    );
    ws.decls.push(DeclRecord::AlgDiagram {
        name: raw.name.clone(),
        shape: raw.shape.clone(),
        monad: raw.monad.clone(),
        entries: raw.entries.iter().map(|(l, e, _)| (l.clone(), e.clone())).collect(),
    });
    Ok(())
}
