//! Finite strict 2-categories with a marked arrow family Σ, their validation,
//! and the initial-object analysis of the pair (A, Σ).
//!
//! A pair (A, Σ) is a PIE indexing pair when every connected component of the
//! 1-subcategory spanned by Σ has an initial object; [`pie_analysis`] decides
//! this exhaustively and returns the chosen initials together with the
//! canonical arrows out of them.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::diagnostics::{violation, Diagnostics};
use crate::fincat::{Arrow, FinCategory, Functor, NatTrans};

/// A 1-cell of a 2-category; endpoints are object indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCell {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A 2-cell; endpoints are parallel 1-cell indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite strict 2-category as explicit tables.
///
/// `whisker_post` is keyed `(g, α) -> g ⋆ α` (the 1-cell composes on the
/// codomain side) and `whisker_pre` is keyed `(α, e) -> α ⋆ e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCategory {
    pub objects: Vec<String>,
    pub one_cells: Vec<OneCell>,
    pub one_identity: Vec<usize>,
    pub one_compose: BTreeMap<(usize, usize), usize>,
    pub two_cells: Vec<TwoCell>,
    /// Per 1-cell, its identity 2-cell.
    pub two_identity: Vec<usize>,
    /// `(β, α) -> β∘α` for vertically composable pairs.
    pub vcompose: BTreeMap<(usize, usize), usize>,
    pub whisker_post: BTreeMap<(usize, usize), usize>,
    pub whisker_pre: BTreeMap<(usize, usize), usize>,
}

impl TwoCategory {
    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == id)
    }

    pub fn one_index(&self, id: &str) -> Option<usize> {
        self.one_cells.iter().position(|c| c.id == id)
    }

    pub fn two_index(&self, id: &str) -> Option<usize> {
        self.two_cells.iter().position(|c| c.id == id)
    }

    pub fn is_identity_one(&self, f: usize) -> bool {
        let s = self.one_cells[f].src;
        self.one_identity[s] == f && self.one_cells[f].tgt == s
    }

    pub fn is_identity_two(&self, a: usize) -> bool {
        self.two_identity[self.two_cells[a].src] == a && self.two_cells[a].src == self.two_cells[a].tgt
    }

    pub fn comp1(&self, g: usize, f: usize) -> usize {
        *self
            .one_compose
            .get(&(g, f))
            .unwrap_or_else(|| panic!("missing 1-cell composite {}∘{}", self.one_cells[g].id, self.one_cells[f].id))
    }

    /// Source object of a 2-cell.
    pub fn cell_dom_obj(&self, a: usize) -> usize {
        self.one_cells[self.two_cells[a].src].src
    }

    /// Target object of a 2-cell.
    pub fn cell_cod_obj(&self, a: usize) -> usize {
        self.one_cells[self.two_cells[a].src].tgt
    }

    fn one_skeleton(&self) -> FinCategory {
        FinCategory {
            objects: self.objects.clone(),
            arrows: self
                .one_cells
                .iter()
                .map(|c| Arrow {
                    id: c.id.clone(),
                    src: c.src,
                    tgt: c.tgt,
                })
                .collect(),
            identity: self.one_identity.clone(),
            compose: self.one_compose.clone(),
        }
    }

    /// Checks every 2-category invariant, including interchange.
    pub fn validate(&self) -> Diagnostics {
        let mut out = Vec::new();
        for v in self.one_skeleton().validate() {
            out.push(violation(&format!("one-{}", v.rule), v.detail.clone()));
        }
        if !out.is_empty() {
            return out;
        }
        let mut seen = BTreeMap::new();
        for (i, c) in self.two_cells.iter().enumerate() {
            if let Some(j) = seen.insert(c.id.clone(), i) {
                out.push(violation("duplicate-two-cell", format!("2-cell id `{}` declared at {j} and {i}", c.id)));
            }
            if c.src >= self.one_cells.len() || c.tgt >= self.one_cells.len() {
                out.push(violation("two-cell-range", format!("2-cell `{}` endpoints out of range", c.id)));
                continue;
            }
            let (s, t) = (&self.one_cells[c.src], &self.one_cells[c.tgt]);
            if s.src != t.src || s.tgt != t.tgt {
                out.push(violation("two-cell-parallel", format!("2-cell `{}` is not between parallel 1-cells", c.id)));
            }
        }
        if self.two_identity.len() != self.one_cells.len() {
            out.push(violation("two-identity-table", "one identity 2-cell per 1-cell required"));
            return out;
        }
        for (f, &i) in self.two_identity.iter().enumerate() {
            if i >= self.two_cells.len() || self.two_cells[i].src != f || self.two_cells[i].tgt != f {
                out.push(violation(
                    "two-identity-endpoints",
                    format!("identity 2-cell of `{}` is not an endo-cell on it", self.one_cells[f].id),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let two_id = |a: usize| &self.two_cells[a].id;
        // Vertical composition: defined exactly on composable pairs, right typing.
        for (&(b, a), &c) in &self.vcompose {
            if self.two_cells[a].tgt != self.two_cells[b].src {
                out.push(violation(
                    "vcompose-non-composable",
                    format!("vertical composite defined on non-composable pair ({}, {})", two_id(b), two_id(a)),
                ));
            } else if self.two_cells[c].src != self.two_cells[a].src || self.two_cells[c].tgt != self.two_cells[b].tgt {
                out.push(violation("vcompose-endpoints", format!("{}∘{} has wrong endpoints", two_id(b), two_id(a))));
            }
        }
        for b in 0..self.two_cells.len() {
            for a in 0..self.two_cells.len() {
                if self.two_cells[a].tgt == self.two_cells[b].src && !self.vcompose.contains_key(&(b, a)) {
                    out.push(violation("vcompose-missing", format!("no vertical composite for ({}, {})", two_id(b), two_id(a))));
                }
            }
        }
        // Whiskers: defined exactly on matching pairs, right typing.
        for (&(g, a), &r) in &self.whisker_post {
            if self.one_cells[g].src != self.cell_cod_obj(a) {
                out.push(violation("whisker-post-mismatch", format!("({}, {}) is not whiskerable", self.one_cells[g].id, two_id(a))));
            } else {
                let want_src = self.one_compose.get(&(g, self.two_cells[a].src));
                let want_tgt = self.one_compose.get(&(g, self.two_cells[a].tgt));
                if Some(&self.two_cells[r].src) != want_src || Some(&self.two_cells[r].tgt) != want_tgt {
                    out.push(violation("whisker-post-endpoints", format!("{} ⋆ {} has wrong endpoints", self.one_cells[g].id, two_id(a))));
                }
            }
        }
        for (&(a, e), &r) in &self.whisker_pre {
            if self.one_cells[e].tgt != self.cell_dom_obj(a) {
                out.push(violation("whisker-pre-mismatch", format!("({}, {}) is not whiskerable", two_id(a), self.one_cells[e].id)));
            } else {
                let want_src = self.one_compose.get(&(self.two_cells[a].src, e));
                let want_tgt = self.one_compose.get(&(self.two_cells[a].tgt, e));
                if Some(&self.two_cells[r].src) != want_src || Some(&self.two_cells[r].tgt) != want_tgt {
                    out.push(violation("whisker-pre-endpoints", format!("{} ⋆ {} has wrong endpoints", two_id(a), self.one_cells[e].id)));
                }
            }
        }
        for g in 0..self.one_cells.len() {
            for a in 0..self.two_cells.len() {
                if self.one_cells[g].src == self.cell_cod_obj(a) && !self.whisker_post.contains_key(&(g, a)) {
                    out.push(violation("whisker-post-missing", format!("no whisker for ({}, {})", self.one_cells[g].id, two_id(a))));
                }
                if self.one_cells[g].tgt == self.cell_dom_obj(a) && !self.whisker_pre.contains_key(&(a, g)) {
                    out.push(violation("whisker-pre-missing", format!("no whisker for ({}, {})", two_id(a), self.one_cells[g].id)));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let vc = |b: usize, a: usize| self.vcompose[&(b, a)];
        let post = |g: usize, a: usize| self.whisker_post[&(g, a)];
        let pre = |a: usize, e: usize| self.whisker_pre[&(a, e)];
        // Vertical unit and associativity.
        for a in 0..self.two_cells.len() {
            if vc(self.two_identity[self.two_cells[a].tgt], a) != a || vc(a, self.two_identity[self.two_cells[a].src]) != a {
                out.push(violation("vcompose-unit", format!("identity 2-cell laws fail at `{}`", two_id(a))));
            }
        }
        for (&(b, a), &ba) in &self.vcompose {
            for c in 0..self.two_cells.len() {
                if self.two_cells[b].tgt == self.two_cells[c].src && vc(c, ba) != vc(vc(c, b), a) {
                    out.push(violation(
                        "vcompose-associativity",
                        format!("({}∘{})∘{} differs from {}∘({}∘{})", two_id(c), two_id(b), two_id(a), two_id(c), two_id(b), two_id(a)),
                    ));
                }
            }
        }
        // Whisker functoriality.
        for g in 0..self.one_cells.len() {
            for a in 0..self.two_cells.len() {
                if self.one_cells[g].src == self.cell_cod_obj(a) {
                    let r = post(g, a);
                    if self.is_identity_one(g) && r != a {
                        out.push(violation("whisker-post-unit", format!("id ⋆ {} ≠ {}", two_id(a), two_id(a))));
                    }
                    if self.is_identity_two(a) && r != self.two_identity[self.comp1(g, self.two_cells[a].src)] {
                        out.push(violation("whisker-post-identity", format!("{} ⋆ id is not an identity 2-cell", self.one_cells[g].id)));
                    }
                    // Compatibility with 1-cell composition on the whiskering cell.
                    for h in 0..self.one_cells.len() {
                        if self.one_cells[h].src == self.one_cells[g].tgt {
                            let hg = self.comp1(h, g);
                            if post(hg, a) != post(h, r) {
                                out.push(violation(
                                    "whisker-post-compose",
                                    format!("({}∘{}) ⋆ {} differs from iterated whiskering", self.one_cells[h].id, self.one_cells[g].id, two_id(a)),
                                ));
                            }
                        }
                    }
                }
                if self.one_cells[g].tgt == self.cell_dom_obj(a) {
                    let r = pre(a, g);
                    if self.is_identity_one(g) && r != a {
                        out.push(violation("whisker-pre-unit", format!("{} ⋆ id ≠ {}", two_id(a), two_id(a))));
                    }
                    if self.is_identity_two(a) && r != self.two_identity[self.comp1(self.two_cells[a].src, g)] {
                        out.push(violation("whisker-pre-identity", format!("id ⋆ {} is not an identity 2-cell", self.one_cells[g].id)));
                    }
                    for e in 0..self.one_cells.len() {
                        if self.one_cells[e].tgt == self.one_cells[g].src {
                            let ge = self.comp1(g, e);
                            if pre(a, ge) != pre(r, e) {
                                out.push(violation(
                                    "whisker-pre-compose",
                                    format!("{} ⋆ ({}∘{}) differs from iterated whiskering", two_id(a), self.one_cells[g].id, self.one_cells[e].id),
                                ));
                            }
                        }
                    }
                }
            }
        }
        // Whiskers distribute over vertical composition.
        for (&(b, a), &ba) in &self.vcompose {
            for g in 0..self.one_cells.len() {
                if self.one_cells[g].src == self.cell_cod_obj(a) && post(g, ba) != vc(post(g, b), post(g, a)) {
                    out.push(violation(
                        "whisker-post-vcompose",
                        format!("{} ⋆ ({}∘{}) fails functoriality", self.one_cells[g].id, two_id(b), two_id(a)),
                    ));
                }
                if self.one_cells[g].tgt == self.cell_dom_obj(a) && pre(ba, g) != vc(pre(b, g), pre(a, g)) {
                    out.push(violation(
                        "whisker-pre-vcompose",
                        format!("({}∘{}) ⋆ {} fails functoriality", two_id(b), two_id(a), self.one_cells[g].id),
                    ));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        // Interchange on all horizontally-and-vertically composable
        // quadruples. Identity-padded quadruples cover the equality of the
        // two whiskering routes of a plain horizontal composite.
        let hcomp = |b: usize, a: usize| vc(pre(b, self.two_cells[a].tgt), post(self.two_cells[b].src, a));
        for (&(a2, a1), &a21) in &self.vcompose {
            for (&(b2, b1), &b21) in &self.vcompose {
                if self.cell_cod_obj(a1) != self.cell_dom_obj(b1) {
                    continue;
                }
                if hcomp(b21, a21) != vc(hcomp(b2, a2), hcomp(b1, a1)) {
                    out.push(violation(
                        "interchange",
                        format!(
                            "interchange fails on quadruple ({}, {}; {}, {})",
                            two_id(b2), two_id(b1), two_id(a2), two_id(a1)
                        ),
                    ));
                }
            }
        }
        out
    }
}

/// Spec-level entry point; equivalent to [`TwoCategory::validate`].
pub fn validate_two_category(raw: &TwoCategory) -> Diagnostics {
    raw.validate()
}

/// A marked family of 1-cells, required to contain all identities and to be
/// closed under composition.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SigmaFamily {
    pub members: BTreeSet<usize>,
}

impl SigmaFamily {
    pub fn identities_only(a: &TwoCategory) -> SigmaFamily {
        SigmaFamily {
            members: a.one_identity.iter().copied().collect(),
        }
    }

    pub fn from_ids(a: &TwoCategory, ids: &[&str]) -> SigmaFamily {
        let mut members: BTreeSet<usize> = a.one_identity.iter().copied().collect();
        for id in ids {
            members.insert(a.one_index(id).unwrap_or_else(|| panic!("unknown 1-cell `{id}`")));
        }
        SigmaFamily { members }
    }

    pub fn contains(&self, f: usize) -> bool {
        self.members.contains(&f)
    }
}

pub fn validate_sigma_family(a: &TwoCategory, sigma: &SigmaFamily) -> Diagnostics {
    let mut out = Vec::new();
    for &f in &sigma.members {
        if f >= a.one_cells.len() {
            out.push(violation("sigma-range", format!("Σ member {f} out of range")));
            return out;
        }
    }
    for &i in &a.one_identity {
        if !sigma.contains(i) {
            out.push(violation("sigma-identity", format!("identity `{}` not in Σ", a.one_cells[i].id)));
        }
    }
    for (&(g, f), &gf) in &a.one_compose {
        if sigma.contains(g) && sigma.contains(f) && !sigma.contains(gf) {
            out.push(violation(
                "sigma-closure",
                format!("Σ not closed: {}∘{} = {} escapes", a.one_cells[g].id, a.one_cells[f].id, a.one_cells[gf].id),
            ));
        }
    }
    out
}

/// The witness data of a PIE indexing pair: connected components of the
/// Σ-subcategory, a chosen initial object per component, and the canonical
/// Σ-arrow from the initial object to every object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieStructure {
    /// Object indices per component, ascending; components ordered by their
    /// least member.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// Chosen initial object per component (first eligible in declaration
    /// order).
    pub initial: Vec<usize>,
    /// Per object, the unique Σ-arrow from its component's initial object.
    pub canonical_arrow: Vec<usize>,
}

impl PieStructure {
    /// The initial object of the component containing `a`.
    pub fn initial_of(&self, a: usize) -> usize {
        self.initial[self.component_of[a]]
    }

    /// All chosen initial objects, ascending.
    pub fn initials(&self) -> Vec<usize> {
        let mut v = self.initial.clone();
        v.sort_unstable();
        v
    }
}

/// Failure witness: a component of the Σ-subcategory without initial object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotPie {
    pub component: Vec<usize>,
}

/// Decides whether (A, Σ) is a PIE indexing pair.
///
/// Components are taken under zig-zag reachability over Σ-arrows; an object
/// is initial when it has exactly one Σ-arrow to every object of its
/// component (itself included, which forces that endo-arrow to be the
/// identity).
pub fn pie_analysis(a: &TwoCategory, sigma: &SigmaFamily) -> Result<PieStructure, NotPie> {
    let n = a.objects.len();
    let mut component_of = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let cix = components.len();
        let mut stack = vec![start];
        let mut comp = Vec::new();
        component_of[start] = cix;
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &s in &sigma.members {
                let (u, v) = (a.one_cells[s].src, a.one_cells[s].tgt);
                for (p, q) in [(u, v), (v, u)] {
                    if p == x && component_of[q] == usize::MAX {
                        component_of[q] = cix;
                        stack.push(q);
                    }
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }

    let sigma_arrows_between = |x: usize, y: usize| {
        sigma
            .members
            .iter()
            .copied()
            .filter(|&s| a.one_cells[s].src == x && a.one_cells[s].tgt == y)
            .collect::<Vec<_>>()
    };

    let mut initial = Vec::with_capacity(components.len());
    let mut canonical_arrow = vec![usize::MAX; n];
    for comp in &components {
        let found = comp
            .iter()
            .copied()
            .find(|&c| comp.iter().all(|&o| sigma_arrows_between(c, o).len() == 1));
        let c = match found {
            Some(c) => c,
            None => {
                return Err(NotPie {
                    component: comp.clone(),
                })
            }
        };
        initial.push(c);
        for &o in comp {
            canonical_arrow[o] = sigma_arrows_between(c, o)[0];
        }
    }
    Ok(PieStructure {
        components,
        component_of,
        initial,
        canonical_arrow,
    })
}

/// A strict 2-functor from a finite 2-category into finite categories.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFunctor {
    pub shape: Arc<TwoCategory>,
    pub on_objects: Vec<Arc<FinCategory>>,
    pub on_one: Vec<Functor>,
    pub on_two: Vec<NatTrans>,
}

impl TwoFunctor {
    pub fn cat(&self, a: usize) -> &Arc<FinCategory> {
        &self.on_objects[a]
    }

    pub fn one(&self, f: usize) -> &Functor {
        &self.on_one[f]
    }

    pub fn two(&self, c: usize) -> &NatTrans {
        &self.on_two[c]
    }

    /// Exhaustively checks strict preservation of identities, both
    /// compositions and whiskering, plus validity of all image data.
    pub fn validate(&self) -> Diagnostics {
        let a = &self.shape;
        let mut out = Vec::new();
        if self.on_objects.len() != a.objects.len()
            || self.on_one.len() != a.one_cells.len()
            || self.on_two.len() != a.two_cells.len()
        {
            out.push(violation("two-functor-tables", "one image per shape cell required"));
            return out;
        }
        for (i, f) in self.on_one.iter().enumerate() {
            let c = &a.one_cells[i];
            if f.dom != self.on_objects[c.src] || f.cod != self.on_objects[c.tgt] {
                out.push(violation("two-functor-one-endpoints", format!("image of `{}` has wrong endpoints", c.id)));
            }
            for v in f.validate() {
                out.push(violation("two-functor-one-image", format!("image of `{}`: {}", c.id, v.detail)));
            }
        }
        for (i, n) in self.on_two.iter().enumerate() {
            let c = &a.two_cells[i];
            if n.dom != self.on_one[c.src] || n.cod != self.on_one[c.tgt] {
                out.push(violation("two-functor-two-endpoints", format!("image of `{}` has wrong endpoints", c.id)));
            }
            for v in n.validate() {
                out.push(violation("two-functor-two-image", format!("image of `{}`: {}", c.id, v.detail)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (o, &i) in a.one_identity.iter().enumerate() {
            if self.on_one[i] != Functor::identity(&self.on_objects[o]) {
                out.push(violation("two-functor-identity", format!("identity 1-cell of `{}` not sent to the identity", a.objects[o])));
            }
        }
        for (&(g, f), &gf) in &a.one_compose {
            if self.on_one[gf] != Functor::compose(&self.on_one[g], &self.on_one[f]) {
                out.push(violation(
                    "two-functor-composition",
                    format!("F({}∘{}) ≠ F({})∘F({})", a.one_cells[g].id, a.one_cells[f].id, a.one_cells[g].id, a.one_cells[f].id),
                ));
            }
        }
        for (f, &i) in a.two_identity.iter().enumerate() {
            if self.on_two[i] != NatTrans::identity(&self.on_one[f]) {
                out.push(violation("two-functor-identity-two", format!("identity 2-cell on `{}` not sent to the identity", a.one_cells[f].id)));
            }
        }
        for (&(b, c), &bc) in &a.vcompose {
            if self.on_two[bc] != NatTrans::vcomp(&self.on_two[b], &self.on_two[c]) {
                out.push(violation(
                    "two-functor-vcompose",
                    format!("F({}∘{}) fails", a.two_cells[b].id, a.two_cells[c].id),
                ));
            }
        }
        for (&(g, c), &r) in &a.whisker_post {
            if self.on_two[r] != NatTrans::post_whisker(&self.on_one[g], &self.on_two[c]) {
                out.push(violation(
                    "two-functor-whisker",
                    format!("F({} ⋆ {}) fails", a.one_cells[g].id, a.two_cells[c].id),
                ));
            }
        }
        for (&(c, e), &r) in &a.whisker_pre {
            if self.on_two[r] != NatTrans::pre_whisker(&self.on_two[c], &self.on_one[e]) {
                out.push(violation(
                    "two-functor-whisker",
                    format!("F({} ⋆ {}) fails", a.two_cells[c].id, a.one_cells[e].id),
                ));
            }
        }
        out
    }
}

/// Fills in everything forced by the category axioms on a partially
/// specified 2-category: identity 1-cells and 2-cells, composites and
/// whiskers involving them. Nothing else is inferred.
pub struct TwoCatBuilder {
    objects: Vec<String>,
    one: Vec<OneCell>,
    compose: Vec<(String, String, String)>,
    two: Vec<TwoCell>,
    vcomp: Vec<(String, String, String)>,
    wpost: Vec<(String, String, String)>,
    wpre: Vec<(String, String, String)>,
    sigma: Vec<String>,
}

impl TwoCatBuilder {
    pub fn new(objects: &[&str]) -> Self {
        TwoCatBuilder {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            one: Vec::new(),
            compose: Vec::new(),
            two: Vec::new(),
            vcomp: Vec::new(),
            wpost: Vec::new(),
            wpre: Vec::new(),
            sigma: Vec::new(),
        }
    }

    pub fn one_cell(mut self, id: &str, src: &str, tgt: &str) -> Self {
        let s = self.objects.iter().position(|o| o == src).expect("unknown source object");
        let t = self.objects.iter().position(|o| o == tgt).expect("unknown target object");
        self.one.push(OneCell {
            id: id.into(),
            src: s,
            tgt: t,
        });
        self
    }

    /// Declares `g∘f = gf` for non-identity `g`, `f`.
    pub fn compose(mut self, g: &str, f: &str, gf: &str) -> Self {
        self.compose.push((g.into(), f.into(), gf.into()));
        self
    }

    pub fn two_cell(mut self, id: &str, src: &str, tgt: &str) -> Self {
        self.two.push(TwoCell {
            id: id.into(),
            src: self.one.iter().position(|c| c.id == src).expect("unknown source 1-cell"),
            tgt: self.one.iter().position(|c| c.id == tgt).expect("unknown target 1-cell"),
        });
        self
    }

    pub fn vcomp(mut self, later: &str, earlier: &str, result: &str) -> Self {
        self.vcomp.push((later.into(), earlier.into(), result.into()));
        self
    }

    pub fn whisker_post(mut self, g: &str, a: &str, result: &str) -> Self {
        self.wpost.push((g.into(), a.into(), result.into()));
        self
    }

    pub fn whisker_pre(mut self, a: &str, e: &str, result: &str) -> Self {
        self.wpre.push((a.into(), e.into(), result.into()));
        self
    }

    pub fn sigma(mut self, id: &str) -> Self {
        self.sigma.push(id.into());
        self
    }

    pub fn build(self) -> (TwoCategory, SigmaFamily) {
        let n = self.objects.len();
        // Identity 1-cells first, then the declared ones.
        let mut one_cells: Vec<OneCell> = (0..n)
            .map(|o| OneCell {
                id: format!("id_{}", self.objects[o]),
                src: o,
                tgt: o,
            })
            .collect();
        let declared_one_offset = n;
        for c in &self.one {
            one_cells.push(OneCell {
                id: c.id.clone(),
                src: c.src,
                tgt: c.tgt,
            });
        }
        let one_identity: Vec<usize> = (0..n).collect();
        let one_ix = |id: &str| {
            one_cells
                .iter()
                .position(|c| c.id == id)
                .unwrap_or_else(|| panic!("unknown 1-cell `{id}`"))
        };
        let mut one_compose = BTreeMap::new();
        for (i, c) in one_cells.iter().enumerate() {
            one_compose.insert((one_identity[c.tgt], i), i);
            one_compose.insert((i, one_identity[c.src]), i);
        }
        for (g, f, gf) in &self.compose {
            one_compose.insert((one_ix(g), one_ix(f)), one_ix(gf));
        }

        // Identity 2-cells per 1-cell first, then the declared ones.
        let mut two_cells: Vec<TwoCell> = (0..one_cells.len())
            .map(|f| TwoCell {
                id: format!("id2_{}", one_cells[f].id),
                src: f,
                tgt: f,
            })
            .collect();
        let two_identity: Vec<usize> = (0..one_cells.len()).collect();
        for c in &self.two {
            two_cells.push(TwoCell {
                id: c.id.clone(),
                src: c.src + declared_one_offset,
                tgt: c.tgt + declared_one_offset,
            });
        }
        let two_ix = |id: &str| {
            two_cells
                .iter()
                .position(|c| c.id == id)
                .unwrap_or_else(|| panic!("unknown 2-cell `{id}`"))
        };
        let mut vcompose = BTreeMap::new();
        for (i, c) in two_cells.iter().enumerate() {
            vcompose.insert((two_identity[c.tgt], i), i);
            vcompose.insert((i, two_identity[c.src]), i);
        }
        for (b, a, r) in &self.vcomp {
            vcompose.insert((two_ix(b), two_ix(a)), two_ix(r));
        }
        let mut whisker_post = BTreeMap::new();
        let mut whisker_pre = BTreeMap::new();
        for g in 0..one_cells.len() {
            for (a, cell) in two_cells.iter().enumerate() {
                let cod_obj = one_cells[cell.src].tgt;
                let dom_obj = one_cells[cell.src].src;
                // Whiskers forced by the axioms: by an identity 1-cell, or of
                // an identity 2-cell (when the relevant composite exists).
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
        for (g, a, r) in &self.wpost {
            whisker_post.insert((one_ix(g), two_ix(a)), two_ix(r));
        }
        for (a, e, r) in &self.wpre {
            whisker_pre.insert((two_ix(a), one_ix(e)), two_ix(r));
        }
        let cat = TwoCategory {
            objects: self.objects,
            one_cells,
            one_identity,
            one_compose,
            two_cells,
            two_identity,
            vcompose,
            whisker_post,
            whisker_pre,
        };
        let sigma = SigmaFamily::from_ids(&cat, &self.sigma.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        (cat, sigma)
    }
}

/// Assembles a [`TwoFunctor`] from images of the generating cells; images of
/// identities, composites and whiskers are forced by strictness and filled
/// in automatically. Explicit entries for forced cells are checked against
/// the forced value.
pub struct TwoFunctorBuilder {
    shape: Arc<TwoCategory>,
    on_objects: Vec<Option<Arc<FinCategory>>>,
    on_one: Vec<Option<Functor>>,
    on_two: Vec<Option<NatTrans>>,
}

impl TwoFunctorBuilder {
    pub fn new(shape: Arc<TwoCategory>) -> Self {
        let (n0, n1, n2) = (shape.objects.len(), shape.one_cells.len(), shape.two_cells.len());
        TwoFunctorBuilder {
            shape,
            on_objects: vec![None; n0],
            on_one: vec![None; n1],
            on_two: vec![None; n2],
        }
    }

    pub fn on_object(mut self, name: &str, cat: Arc<FinCategory>) -> Self {
        let i = self.shape.object_index(name).unwrap_or_else(|| panic!("unknown object `{name}`"));
        self.assign_object(i, cat).unwrap_or_else(|e| panic!("{e}"));
        self
    }

    pub fn on_one_cell(mut self, name: &str, f: Functor) -> Self {
        let i = self.shape.one_index(name).unwrap_or_else(|| panic!("unknown 1-cell `{name}`"));
        self.assign_one(i, f).unwrap_or_else(|e| panic!("{e}"));
        self
    }

    pub fn on_two_cell(mut self, name: &str, n: NatTrans) -> Self {
        let i = self.shape.two_index(name).unwrap_or_else(|| panic!("unknown 2-cell `{name}`"));
        self.assign_two(i, n).unwrap_or_else(|e| panic!("{e}"));
        self
    }

    pub fn assign_object(&mut self, i: usize, cat: Arc<FinCategory>) -> Result<(), String> {
        match &self.on_objects[i] {
            Some(prev) if *prev != cat => Err(format!("conflicting images for object `{}`", self.shape.objects[i])),
            _ => {
                self.on_objects[i] = Some(cat);
                Ok(())
            }
        }
    }

    pub fn assign_one(&mut self, i: usize, f: Functor) -> Result<(), String> {
        match &self.on_one[i] {
            Some(prev) if *prev != f => Err(format!("conflicting images for 1-cell `{}`", self.shape.one_cells[i].id)),
            _ => {
                self.on_one[i] = Some(f);
                Ok(())
            }
        }
    }

    pub fn assign_two(&mut self, i: usize, n: NatTrans) -> Result<(), String> {
        match &self.on_two[i] {
            Some(prev) if *prev != n => Err(format!("conflicting images for 2-cell `{}`", self.shape.two_cells[i].id)),
            _ => {
                self.on_two[i] = Some(n);
                Ok(())
            }
        }
    }

    /// Closes the assignment under the forced equations and returns the
    /// functor, or the name of a cell whose image is neither given nor
    /// derivable.
    pub fn build(mut self) -> Result<TwoFunctor, String> {
        let shape = self.shape.clone();
        loop {
            let mut progressed = false;
            for (o, &i) in shape.one_identity.iter().enumerate() {
                if self.on_one[i].is_none() {
                    if let Some(c) = &self.on_objects[o] {
                        self.on_one[i] = Some(Functor::identity(c));
                        progressed = true;
                    }
                }
            }
            for (&(g, f), &gf) in &shape.one_compose {
                if self.on_one[gf].is_none() {
                    if let (Some(fg), Some(ff)) = (&self.on_one[g], &self.on_one[f]) {
                        self.on_one[gf] = Some(Functor::compose(fg, ff));
                        progressed = true;
                    }
                }
            }
            for (f, &i) in shape.two_identity.iter().enumerate() {
                if self.on_two[i].is_none() {
                    if let Some(ff) = &self.on_one[f] {
                        self.on_two[i] = Some(NatTrans::identity(ff));
                        progressed = true;
                    }
                }
            }
            for (&(b, a), &ba) in &shape.vcompose {
                if self.on_two[ba].is_none() {
                    if let (Some(nb), Some(na)) = (&self.on_two[b], &self.on_two[a]) {
                        self.on_two[ba] = Some(NatTrans::vcomp(nb, na));
                        progressed = true;
                    }
                }
            }
            for (&(g, a), &r) in &shape.whisker_post {
                if self.on_two[r].is_none() {
                    if let (Some(fg), Some(na)) = (&self.on_one[g], &self.on_two[a]) {
                        self.on_two[r] = Some(NatTrans::post_whisker(fg, na));
                        progressed = true;
                    }
                }
            }
            for (&(a, e), &r) in &shape.whisker_pre {
                if self.on_two[r].is_none() {
                    if let (Some(na), Some(fe)) = (&self.on_two[a], &self.on_one[e]) {
                        self.on_two[r] = Some(NatTrans::pre_whisker(na, fe));
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        for (o, img) in self.on_objects.iter().enumerate() {
            if img.is_none() {
                return Err(format!("no image for object `{}`", shape.objects[o]));
            }
        }
        for (i, img) in self.on_one.iter().enumerate() {
            if img.is_none() {
                return Err(format!("no image for 1-cell `{}`", shape.one_cells[i].id));
            }
        }
        for (i, img) in self.on_two.iter().enumerate() {
            if img.is_none() {
                return Err(format!("no image for 2-cell `{}`", shape.two_cells[i].id));
            }
        }
        Ok(TwoFunctor {
            shape,
            on_objects: self.on_objects.into_iter().map(Option::unwrap).collect(),
            on_one: self.on_one.into_iter().map(Option::unwrap).collect(),
            on_two: self.on_two.into_iter().map(Option::unwrap).collect(),
        })
    }
}
