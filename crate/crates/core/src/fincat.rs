//! Finite categories, functors, natural transformations, and the three limit
//! primitives (products, inserters, equifiers) computed by explicit
//! enumeration.
//!
//! A [`FinCategory`] stores its objects, arrows, identities and a total
//! composition table explicitly, so every law is decidable by exhaustive
//! checking and no word problem ever arises. All enumeration orders follow
//! declaration order, which makes every derived value byte-deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::diagnostics::{violation, Diagnostics};

/// An arrow of a finite category, referring to objects by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category as explicit tables.
///
/// `compose` is keyed `(g, f) -> g∘f` (g after f) and must be defined on
/// exactly the composable pairs; [`FinCategory::validate`] reports every
/// deviation from the category laws.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Per object, the index of its identity arrow.
    pub identity: Vec<usize>,
    /// `(g, f) -> g∘f` for composable pairs.
    pub compose: BTreeMap<(usize, usize), usize>,
}

impl FinCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn src(&self, arrow: usize) -> usize {
        self.arrows[arrow].src
    }

    pub fn tgt(&self, arrow: usize) -> usize {
        self.arrows[arrow].tgt
    }

    pub fn is_identity_arrow(&self, arrow: usize) -> bool {
        let s = self.arrows[arrow].src;
        self.identity[s] == arrow && self.arrows[arrow].tgt == s
    }

    pub fn composable(&self, g: usize, f: usize) -> bool {
        self.arrows[f].tgt == self.arrows[g].src
    }

    /// `g∘f`; panics when the pair is not in the table (validated categories
    /// are total on composable pairs).
    pub fn comp(&self, g: usize, f: usize) -> usize {
        *self
            .compose
            .get(&(g, f))
            .unwrap_or_else(|| panic!("missing composite {}∘{}", self.arrows[g].id, self.arrows[f].id))
    }

    pub fn try_comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// Arrows `x -> y` in declaration order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].src == x && self.arrows[a].tgt == y)
            .collect()
    }

    /// Two-sided inverse of `f`, when one exists.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (s, t) = (self.arrows[f].src, self.arrows[f].tgt);
        self.hom(t, s).into_iter().find(|&g| {
            self.try_comp(g, f) == Some(self.identity[s]) && self.try_comp(f, g) == Some(self.identity[t])
        })
    }

    pub fn is_invertible(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    /// All `(g, f, g∘f)` entries in table order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.compose.iter().map(|(&(g, f), &gf)| (g, f, gf))
    }

    /// Checks every category invariant and reports each violation.
    pub fn validate(&self) -> Diagnostics {
        let mut out = Vec::new();
        let mut seen = BTreeMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if let Some(j) = seen.insert(o.clone(), i) {
                out.push(violation(
                    "duplicate-object",
                    format!("object id `{o}` declared at positions {j} and {i}"),
                ));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if let Some(j) = seen.insert(a.id.clone(), i) {
                out.push(violation(
                    "duplicate-arrow",
                    format!("arrow id `{}` declared at positions {j} and {i}", a.id),
                ));
            }
            if a.src >= self.objects.len() || a.tgt >= self.objects.len() {
                out.push(violation("arrow-endpoints", format!("arrow `{}` has out-of-range endpoints", a.id)));
            }
        }
        if self.identity.len() != self.objects.len() {
            out.push(violation(
                "identity-table",
                format!("identity table has {} entries for {} objects", self.identity.len(), self.objects.len()),
            ));
            return out;
        }
        if !out.is_empty() {
            // Endpoint errors make the remaining checks meaningless.
            if out.iter().any(|v| v.rule == "arrow-endpoints") {
                return out;
            }
        }
        for (o, &i) in self.identity.iter().enumerate() {
            if i >= self.arrows.len() || self.arrows[i].src != o || self.arrows[i].tgt != o {
                out.push(violation(
                    "identity-endpoints",
                    format!("identity of object `{}` is not an endo-arrow on it", self.objects[o]),
                ));
            }
        }
        for (&(g, f), &gf) in &self.compose {
            if g >= self.arrows.len() || f >= self.arrows.len() || gf >= self.arrows.len() {
                out.push(violation("compose-range", format!("compose entry ({g},{f})={gf} out of range")));
                continue;
            }
            if !self.composable(g, f) {
                out.push(violation(
                    "compose-non-composable",
                    format!("compose defined on non-composable pair ({}, {})", self.arrows[g].id, self.arrows[f].id),
                ));
                continue;
            }
            if self.arrows[gf].src != self.arrows[f].src || self.arrows[gf].tgt != self.arrows[g].tgt {
                out.push(violation(
                    "compose-endpoints",
                    format!("composite {}∘{} = {} has wrong endpoints", self.arrows[g].id, self.arrows[f].id, self.arrows[gf].id),
                ));
            }
        }
        for g in 0..self.arrows.len() {
            for f in 0..self.arrows.len() {
                if self.composable(g, f) && !self.compose.contains_key(&(g, f)) {
                    out.push(violation(
                        "compose-missing",
                        format!("no composite for composable pair ({}, {})", self.arrows[g].id, self.arrows[f].id),
                    ));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..self.arrows.len() {
            let (s, t) = (self.arrows[f].src, self.arrows[f].tgt);
            if self.comp(self.identity[t], f) != f {
                out.push(violation("identity-law", format!("id∘{} ≠ {}", self.arrows[f].id, self.arrows[f].id)));
            }
            if self.comp(f, self.identity[s]) != f {
                out.push(violation("identity-law", format!("{}∘id ≠ {}", self.arrows[f].id, self.arrows[f].id)));
            }
        }
        for (g, f, gf) in self.composable_pairs().collect::<Vec<_>>() {
            for h in 0..self.arrows.len() {
                if self.composable(h, g) {
                    let hg = self.comp(h, g);
                    if self.comp(h, gf) != self.comp(hg, f) {
                        out.push(violation(
                            "associativity",
                            format!(
                                "({}∘{})∘{} ≠ {}∘({}∘{})",
                                self.arrows[h].id, self.arrows[g].id, self.arrows[f].id,
                                self.arrows[h].id, self.arrows[g].id, self.arrows[f].id
                            ),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Renames everything to fresh flat ids (`x0`, `m0`, ...) and returns the
    /// provenance map from new ids to the canonical ones they replace.
    pub fn renamed_flat(&self, prefix: &str) -> (FinCategory, Renaming) {
        let mut cat = self.clone();
        let mut ren = Renaming::default();
        for (i, o) in cat.objects.iter_mut().enumerate() {
            let fresh = format!("{prefix}{i}");
            ren.objects.push((fresh.clone(), o.clone()));
            *o = fresh;
        }
        for (i, a) in cat.arrows.iter_mut().enumerate() {
            let fresh = if self.is_identity_arrow(i) {
                format!("id_{prefix}{}", a.src)
            } else {
                format!("{prefix}m{i}")
            };
            ren.arrows.push((fresh.clone(), a.id.clone()));
            a.id = fresh;
        }
        (cat, ren)
    }
}

/// Provenance of a flat renaming pass: `(fresh id, canonical id)` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Renaming {
    pub objects: Vec<(String, String)>,
    pub arrows: Vec<(String, String)>,
}

/// Spec-level entry point; equivalent to [`FinCategory::validate`].
pub fn validate_category(raw: &FinCategory) -> Diagnostics {
    raw.validate()
}

/// A functor between finite categories, stored as index maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Functor {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    pub on_objects: Vec<usize>,
    pub on_arrows: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &Arc<FinCategory>) -> Functor {
        Functor {
            dom: c.clone(),
            cod: c.clone(),
            on_objects: (0..c.object_count()).collect(),
            on_arrows: (0..c.arrow_count()).collect(),
        }
    }

    /// `g∘f`.
    pub fn compose(g: &Functor, f: &Functor) -> Functor {
        debug_assert_eq!(f.cod, g.dom, "composing functors with mismatched middle category");
        Functor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            on_objects: f.on_objects.iter().map(|&o| g.on_objects[o]).collect(),
            on_arrows: f.on_arrows.iter().map(|&a| g.on_arrows[a]).collect(),
        }
    }

    pub fn ob(&self, x: usize) -> usize {
        self.on_objects[x]
    }

    pub fn arr(&self, a: usize) -> usize {
        self.on_arrows[a]
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod
            && self.on_objects.iter().enumerate().all(|(i, &o)| i == o)
            && self.on_arrows.iter().enumerate().all(|(i, &a)| i == a)
    }

    pub fn validate(&self) -> Diagnostics {
        let mut out = Vec::new();
        if self.on_objects.len() != self.dom.object_count() || self.on_arrows.len() != self.dom.arrow_count() {
            out.push(violation("functor-tables", "object/arrow map sizes do not match the domain"));
            return out;
        }
        if self.on_objects.iter().any(|&o| o >= self.cod.object_count())
            || self.on_arrows.iter().any(|&a| a >= self.cod.arrow_count())
        {
            out.push(violation("functor-range", "image index out of range"));
            return out;
        }
        for (i, a) in self.dom.arrows.iter().enumerate() {
            let im = &self.cod.arrows[self.on_arrows[i]];
            if im.src != self.on_objects[a.src] || im.tgt != self.on_objects[a.tgt] {
                out.push(violation("functor-endpoints", format!("image of `{}` has wrong endpoints", a.id)));
            }
        }
        for (o, &i) in self.dom.identity.iter().enumerate() {
            if self.on_arrows[i] != self.cod.identity[self.on_objects[o]] {
                out.push(violation(
                    "functor-identity",
                    format!("identity of `{}` not sent to an identity", self.dom.objects[o]),
                ));
            }
        }
        if out.iter().any(|v| v.rule == "functor-endpoints") {
            return out;
        }
        for (g, f, gf) in self.dom.composable_pairs() {
            if self.cod.try_comp(self.on_arrows[g], self.on_arrows[f]) != Some(self.on_arrows[gf]) {
                out.push(violation(
                    "functor-composition",
                    format!("F({}∘{}) ≠ F({})∘F({})", self.dom.arrows[g].id, self.dom.arrows[f].id, self.dom.arrows[g].id, self.dom.arrows[f].id),
                ));
            }
        }
        out
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &o) in self.on_objects.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}↦{}", self.dom.objects[i], self.cod.objects[o])?;
        }
        write!(f, "]")
    }
}

/// True iff `f` is bijective on objects and on every hom-set, i.e. an
/// isomorphism of categories.
pub fn iso_check(f: &Functor) -> bool {
    let (c, d) = (&f.dom, &f.cod);
    if c.object_count() != d.object_count() {
        return false;
    }
    let mut hit = vec![false; d.object_count()];
    for &o in &f.on_objects {
        if hit[o] {
            return false;
        }
        hit[o] = true;
    }
    for x in 0..c.object_count() {
        for y in 0..c.object_count() {
            let dom_hom = c.hom(x, y);
            let cod_hom = d.hom(f.ob(x), f.ob(y));
            if dom_hom.len() != cod_hom.len() {
                return false;
            }
            let mut seen = vec![false; cod_hom.len()];
            for a in dom_hom {
                match cod_hom.iter().position(|&b| b == f.arr(a)) {
                    Some(i) if !seen[i] => seen[i] = true,
                    _ => return false,
                }
            }
        }
    }
    true
}

/// A natural transformation between parallel functors; `components[x]` is an
/// arrow of the codomain category `F x -> G x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NatTrans {
    pub dom: Functor,
    pub cod: Functor,
    pub components: Vec<usize>,
}

impl NatTrans {
    pub fn identity(f: &Functor) -> NatTrans {
        NatTrans {
            dom: f.clone(),
            cod: f.clone(),
            components: f.on_objects.iter().map(|&o| f.cod.identity[o]).collect(),
        }
    }

    /// Vertical composite `later ∘ earlier`.
    pub fn vcomp(later: &NatTrans, earlier: &NatTrans) -> NatTrans {
        debug_assert_eq!(earlier.cod, later.dom, "vertical composite of non-composable naturals");
        let cat = &earlier.dom.cod;
        NatTrans {
            dom: earlier.dom.clone(),
            cod: later.cod.clone(),
            components: earlier
                .components
                .iter()
                .zip(&later.components)
                .map(|(&a, &b)| cat.comp(b, a))
                .collect(),
        }
    }

    /// Whisker on the codomain side: `h ⋆ n : h∘F ⇒ h∘G`, components `h(n_x)`.
    pub fn post_whisker(h: &Functor, n: &NatTrans) -> NatTrans {
        debug_assert_eq!(n.dom.cod, h.dom);
        NatTrans {
            dom: Functor::compose(h, &n.dom),
            cod: Functor::compose(h, &n.cod),
            components: n.components.iter().map(|&a| h.arr(a)).collect(),
        }
    }

    /// Whisker on the domain side: `n ⋆ e : F∘e ⇒ G∘e`, components `n_{e(x)}`.
    pub fn pre_whisker(n: &NatTrans, e: &Functor) -> NatTrans {
        debug_assert_eq!(e.cod, n.dom.dom);
        NatTrans {
            dom: Functor::compose(&n.dom, e),
            cod: Functor::compose(&n.cod, e),
            components: e.on_objects.iter().map(|&x| n.components[x]).collect(),
        }
    }

    /// Horizontal composite `m ∗ n` for `n : F ⇒ G : C → D`, `m : H ⇒ K : D → E`.
    pub fn hcomp(m: &NatTrans, n: &NatTrans) -> NatTrans {
        NatTrans::vcomp(&NatTrans::pre_whisker(m, &n.cod), &NatTrans::post_whisker(&m.dom, n))
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod
            && self
                .components
                .iter()
                .all(|&a| self.dom.cod.is_identity_arrow(a))
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|&a| self.dom.cod.is_invertible(a))
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        let cat = &self.dom.cod;
        let components = self
            .components
            .iter()
            .map(|&a| cat.inverse(a))
            .collect::<Option<Vec<_>>>()?;
        Some(NatTrans {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            components,
        })
    }

    pub fn validate(&self) -> Diagnostics {
        let mut out = Vec::new();
        if self.dom.dom != self.cod.dom || self.dom.cod != self.cod.cod {
            out.push(violation("natural-parallel", "dom and cod functors are not parallel"));
            return out;
        }
        let cat = &self.dom.cod;
        if self.components.len() != self.dom.dom.object_count() {
            out.push(violation("natural-components", "one component per domain object required"));
            return out;
        }
        for (x, &a) in self.components.iter().enumerate() {
            if a >= cat.arrow_count() || cat.src(a) != self.dom.ob(x) || cat.tgt(a) != self.cod.ob(x) {
                out.push(violation(
                    "natural-component-endpoints",
                    format!("component at `{}` is not F(x) -> G(x)", self.dom.dom.objects[x]),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, u) in self.dom.dom.arrows.iter().enumerate() {
            let lhs = cat.comp(self.cod.arr(i), self.components[u.src]);
            let rhs = cat.comp(self.components[u.tgt], self.dom.arr(i));
            if lhs != rhs {
                out.push(violation(
                    "naturality",
                    format!("naturality square fails at arrow `{}`", u.id),
                ));
            }
        }
        out
    }
}

/// The three 2-cell families used for algebra morphisms: identities only,
/// componentwise-invertible, or all naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellClass {
    Strict,
    Pseudo,
    Lax,
}

impl CellClass {
    pub fn contains(&self, n: &NatTrans) -> bool {
        match self {
            CellClass::Strict => n.is_identity(),
            CellClass::Pseudo => n.is_invertible(),
            CellClass::Lax => true,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CellClass::Strict => "strict",
            CellClass::Pseudo => "pseudo",
            CellClass::Lax => "lax",
        }
    }
}

impl fmt::Display for CellClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Product of finitely many categories, with projections and tuple lookup.
#[derive(Debug, Clone)]
pub struct Product {
    pub category: Arc<FinCategory>,
    pub projections: Vec<Functor>,
    object_dims: Vec<usize>,
    arrow_dims: Vec<usize>,
}

impl Product {
    /// Index of the object with the given constituent indices.
    pub fn object_of(&self, parts: &[usize]) -> usize {
        tuple_index(&self.object_dims, parts)
    }

    /// Index of the arrow with the given constituent indices.
    pub fn arrow_of(&self, parts: &[usize]) -> usize {
        tuple_index(&self.arrow_dims, parts)
    }

    /// The unique functor into the product with the given components.
    pub fn tuple(&self, dom: &Arc<FinCategory>, components: &[Functor]) -> Functor {
        assert_eq!(components.len(), self.projections.len());
        let dom = dom.clone();
        let on_objects = (0..dom.object_count())
            .map(|x| self.object_of(&components.iter().map(|f| f.ob(x)).collect::<Vec<_>>()))
            .collect();
        let on_arrows = (0..dom.arrow_count())
            .map(|a| self.arrow_of(&components.iter().map(|f| f.arr(a)).collect::<Vec<_>>()))
            .collect();
        Functor {
            dom,
            cod: self.category.clone(),
            on_objects,
            on_arrows,
        }
    }

    /// The unique natural into the product with the given components.
    pub fn tuple_natural(&self, dom: &Functor, cod: &Functor, components: &[NatTrans]) -> NatTrans {
        assert_eq!(components.len(), self.projections.len());
        let n = dom.dom.object_count();
        let comps = (0..n)
            .map(|x| self.arrow_of(&components.iter().map(|m| m.components[x]).collect::<Vec<_>>()))
            .collect();
        NatTrans {
            dom: dom.clone(),
            cod: cod.clone(),
            components: comps,
        }
    }
}

fn tuple_index(dims: &[usize], parts: &[usize]) -> usize {
    debug_assert_eq!(dims.len(), parts.len());
    let mut ix = 0;
    for (d, p) in dims.iter().zip(parts) {
        debug_assert!(p < d);
        ix = ix * d + p;
    }
    ix
}

fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// Product category; the empty product is the terminal category.
pub fn product(factors: &[Arc<FinCategory>]) -> Product {
    let object_dims: Vec<usize> = factors.iter().map(|c| c.object_count()).collect();
    let arrow_dims: Vec<usize> = factors.iter().map(|c| c.arrow_count()).collect();
    let object_tuples: Vec<Vec<usize>> =
        cartesian(object_dims.iter().map(|&d| (0..d).collect()).collect()).collect();
    let arrow_tuples: Vec<Vec<usize>> =
        cartesian(arrow_dims.iter().map(|&d| (0..d).collect()).collect()).collect();
    let objects: Vec<String> = object_tuples
        .iter()
        .map(|t| tuple_name(&t.iter().enumerate().map(|(i, &o)| factors[i].objects[o].as_str()).collect::<Vec<_>>()))
        .collect();
    let arrows: Vec<Arrow> = arrow_tuples
        .iter()
        .map(|t| Arrow {
            id: tuple_name(&t.iter().enumerate().map(|(i, &a)| factors[i].arrows[a].id.as_str()).collect::<Vec<_>>()),
            src: tuple_index(&object_dims, &t.iter().enumerate().map(|(i, &a)| factors[i].src(a)).collect::<Vec<_>>()),
            tgt: tuple_index(&object_dims, &t.iter().enumerate().map(|(i, &a)| factors[i].tgt(a)).collect::<Vec<_>>()),
        })
        .collect();
    let identity: Vec<usize> = object_tuples
        .iter()
        .map(|t| tuple_index(&arrow_dims, &t.iter().enumerate().map(|(i, &o)| factors[i].identity[o]).collect::<Vec<_>>()))
        .collect();
    let mut compose = BTreeMap::new();
    for entry in cartesian(factors.iter().map(|c| c.composable_pairs().collect()).collect()) {
        let g = tuple_index(&arrow_dims, &entry.iter().map(|&(g, _, _)| g).collect::<Vec<_>>());
        let f = tuple_index(&arrow_dims, &entry.iter().map(|&(_, f, _)| f).collect::<Vec<_>>());
        let gf = tuple_index(&arrow_dims, &entry.iter().map(|&(_, _, gf)| gf).collect::<Vec<_>>());
        compose.insert((g, f), gf);
    }
    let category = Arc::new(FinCategory {
        objects,
        arrows,
        identity,
        compose,
    });
    let projections = factors
        .iter()
        .enumerate()
        .map(|(i, c)| Functor {
            dom: category.clone(),
            cod: c.clone(),
            on_objects: object_tuples.iter().map(|t| t[i]).collect(),
            on_arrows: arrow_tuples.iter().map(|t| t[i]).collect(),
        })
        .collect();
    Product {
        category,
        projections,
        object_dims,
        arrow_dims,
    }
}

/// Cartesian product over owned choice lists, yielding one empty tuple for
/// zero factors (the convention that makes the empty product terminal).
pub(crate) fn cartesian<T: Clone + 'static>(choices: Vec<Vec<T>>) -> Box<dyn Iterator<Item = Vec<T>>> {
    if choices.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(choices.into_iter().map(|v| v.into_iter()).multi_cartesian_product())
    }
}

/// Inserter of a parallel pair of functors.
#[derive(Debug, Clone)]
pub struct Inserter {
    pub category: Arc<FinCategory>,
    /// Projection to the common domain of the inserted pair.
    pub projection: Functor,
    /// The canonical natural `F∘p ⇒ G∘p`.
    pub canonical: NatTrans,
    /// Per object of the inserter, `(c, φ)` with `φ : F c -> G c`.
    pub object_data: Vec<(usize, usize)>,
    object_lookup: BTreeMap<(usize, usize), usize>,
    arrow_lookup: BTreeMap<(usize, usize, usize), usize>,
}

impl Inserter {
    pub fn object_of(&self, c: usize, phi: usize) -> Option<usize> {
        self.object_lookup.get(&(c, phi)).copied()
    }

    pub fn arrow_of(&self, w: usize, src: usize, tgt: usize) -> Option<usize> {
        self.arrow_lookup.get(&(w, src, tgt)).copied()
    }
}

/// Builds the inserter of `f, g : C → D`: objects are pairs `(c, φ: Fc → Gc)`
/// and arrows are the arrows of `C` making the evident square commute.
pub fn inserter(f: &Functor, g: &Functor) -> Inserter {
    assert_eq!(f.dom, g.dom, "inserter needs a parallel pair");
    assert_eq!(f.cod, g.cod, "inserter needs a parallel pair");
    let c = &f.dom;
    let d = &f.cod;
    let mut objects = Vec::new();
    let mut object_data = Vec::new();
    let mut object_lookup = BTreeMap::new();
    for x in 0..c.object_count() {
        for phi in d.hom(f.ob(x), g.ob(x)) {
            object_lookup.insert((x, phi), objects.len());
            object_data.push((x, phi));
            objects.push(tuple_name(&[c.objects[x].as_str(), d.arrows[phi].id.as_str()]));
        }
    }
    let mut arrows = Vec::new();
    let mut arrow_data = Vec::new();
    let mut arrow_lookup = BTreeMap::new();
    for (si, &(sx, sphi)) in object_data.iter().enumerate() {
        for (ti, &(tx, tphi)) in object_data.iter().enumerate() {
            for w in c.hom(sx, tx) {
                if d.comp(tphi, f.arr(w)) == d.comp(g.arr(w), sphi) {
                    arrow_lookup.insert((w, si, ti), arrows.len());
                    arrow_data.push((w, si, ti));
                    arrows.push(Arrow {
                        id: tuple_name(&[c.arrows[w].id.as_str(), d.arrows[sphi].id.as_str(), d.arrows[tphi].id.as_str()]),
                        src: si,
                        tgt: ti,
                    });
                }
            }
        }
    }
    let identity: Vec<usize> = object_data
        .iter()
        .enumerate()
        .map(|(i, &(x, _))| arrow_lookup[&(c.identity[x], i, i)])
        .collect();
    let mut compose = BTreeMap::new();
    for (bi, &(w2, m, t)) in arrow_data.iter().enumerate() {
        for (ai, &(w1, s, m1)) in arrow_data.iter().enumerate() {
            if m1 == m {
                compose.insert((bi, ai), arrow_lookup[&(c.comp(w2, w1), s, t)]);
            }
        }
    }
    let category = Arc::new(FinCategory {
        objects,
        arrows,
        identity,
        compose,
    });
    let projection = Functor {
        dom: category.clone(),
        cod: c.clone(),
        on_objects: object_data.iter().map(|&(x, _)| x).collect(),
        on_arrows: arrow_data.iter().map(|&(w, _, _)| w).collect(),
    };
    let canonical = NatTrans {
        dom: Functor::compose(f, &projection),
        cod: Functor::compose(g, &projection),
        components: object_data.iter().map(|&(_, phi)| phi).collect(),
    };
    Inserter {
        category,
        projection,
        canonical,
        object_data,
        object_lookup,
        arrow_lookup,
    }
}

/// Equifier of a parallel pair of 2-cells.
#[derive(Debug, Clone)]
pub struct Equifier {
    pub category: Arc<FinCategory>,
    pub inclusion: Functor,
    /// Retained object indices of the original category.
    pub kept: Vec<usize>,
}

/// Equifier of `a, b : F ⇒ G`: the full subcategory of the domain of `F` on
/// the objects where the two components agree.
pub fn equifier(a: &NatTrans, b: &NatTrans) -> Equifier {
    assert_eq!(a.dom, b.dom, "equifier needs parallel 2-cells");
    assert_eq!(a.cod, b.cod, "equifier needs parallel 2-cells");
    let c = &a.dom.dom;
    let kept: Vec<usize> = (0..c.object_count())
        .filter(|&x| a.components[x] == b.components[x])
        .collect();
    let (category, inclusion) = full_subcategory(c, &kept);
    Equifier {
        category,
        inclusion,
        kept,
    }
}

/// Full subcategory on the given objects, with its inclusion.
pub fn full_subcategory(c: &Arc<FinCategory>, kept: &[usize]) -> (Arc<FinCategory>, Functor) {
    let mut obj_map = vec![usize::MAX; c.object_count()];
    for (i, &x) in kept.iter().enumerate() {
        obj_map[x] = i;
    }
    let mut arr_map = vec![usize::MAX; c.arrow_count()];
    let mut arrows = Vec::new();
    let mut kept_arrows = Vec::new();
    for (i, a) in c.arrows.iter().enumerate() {
        if obj_map[a.src] != usize::MAX && obj_map[a.tgt] != usize::MAX {
            arr_map[i] = arrows.len();
            kept_arrows.push(i);
            arrows.push(Arrow {
                id: a.id.clone(),
                src: obj_map[a.src],
                tgt: obj_map[a.tgt],
            });
        }
    }
    let identity = kept.iter().map(|&x| arr_map[c.identity[x]]).collect();
    let mut compose = BTreeMap::new();
    for (g, f, gf) in c.composable_pairs() {
        if arr_map[g] != usize::MAX && arr_map[f] != usize::MAX {
            compose.insert((arr_map[g], arr_map[f]), arr_map[gf]);
        }
    }
    let sub = Arc::new(FinCategory {
        objects: kept.iter().map(|&x| c.objects[x].clone()).collect(),
        arrows,
        identity,
        compose,
    });
    let inclusion = Functor {
        dom: sub.clone(),
        cod: c.clone(),
        on_objects: kept.to_vec(),
        on_arrows: kept_arrows,
    };
    (sub, inclusion)
}

/// All functors `C → D`, duplicate-free, in a deterministic order that
/// follows declaration order of the underlying tables.
pub fn enumerate_functors(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Vec<Functor> {
    let non_identity: Vec<usize> = (0..c.arrow_count()).filter(|&a| !c.is_identity_arrow(a)).collect();
    let mut out = Vec::new();
    for on_objects in cartesian((0..c.object_count()).map(|_| (0..d.object_count()).collect()).collect()) {
        let candidate_arrows: Vec<Vec<usize>> = non_identity
            .iter()
            .map(|&a| d.hom(on_objects[c.src(a)], on_objects[c.tgt(a)]))
            .collect();
        if candidate_arrows.iter().any(|v| v.is_empty()) {
            continue;
        }
        'assign: for choice in cartesian(candidate_arrows) {
            let mut on_arrows = vec![usize::MAX; c.arrow_count()];
            for (o, &i) in c.identity.iter().enumerate() {
                on_arrows[i] = d.identity[on_objects[o]];
            }
            for (k, &a) in non_identity.iter().enumerate() {
                on_arrows[a] = choice[k];
            }
            for (g, f, gf) in c.composable_pairs() {
                if d.try_comp(on_arrows[g], on_arrows[f]) != Some(on_arrows[gf]) {
                    continue 'assign;
                }
            }
            out.push(Functor {
                dom: c.clone(),
                cod: d.clone(),
                on_objects: on_objects.clone(),
                on_arrows,
            });
        }
    }
    out
}

/// All natural transformations `F ⇒ G`, deterministically ordered.
pub fn enumerate_naturals(f: &Functor, g: &Functor) -> Vec<NatTrans> {
    assert_eq!(f.dom, g.dom, "naturals need parallel functors");
    assert_eq!(f.cod, g.cod, "naturals need parallel functors");
    let c = &f.dom;
    let d = &f.cod;
    let mut out = Vec::new();
    'choice: for components in cartesian((0..c.object_count()).map(|x| d.hom(f.ob(x), g.ob(x))).collect()) {
        for (i, u) in c.arrows.iter().enumerate() {
            if d.comp(g.arr(i), components[u.src]) != d.comp(components[u.tgt], f.arr(i)) {
                continue 'choice;
            }
        }
        out.push(NatTrans {
            dom: f.clone(),
            cod: g.clone(),
            components,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn terminal_and_walking_arrow_validate() {
        assert!(samples::terminal().validate().is_empty());
        assert!(samples::walking_arrow().validate().is_empty());
        assert!(samples::parallel_pair().validate().is_empty());
        assert!(samples::walking_iso().validate().is_empty());
        assert!(samples::discrete(&["p", "q"]).validate().is_empty());
    }

    #[test]
    fn spurious_composite_is_reported() {
        let mut two = samples::walking_arrow();
        let u = two.arrow_index("u").unwrap();
        // u∘u is not composable; planting it must yield exactly one violation.
        two.compose.insert((u, u), u);
        let diags = two.validate();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].rule, "compose-non-composable");
        assert!(diags[0].detail.contains("u"));
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut iso = samples::walking_iso();
        let i = iso.arrow_index("i").unwrap();
        let j = iso.arrow_index("j").unwrap();
        iso.compose.remove(&(j, i));
        assert!(iso.validate().iter().any(|v| v.rule == "compose-missing"));
    }

    #[test]
    fn empty_product_is_terminal() {
        let p = product(&[]);
        assert_eq!(p.category.object_count(), 1);
        assert_eq!(p.category.arrow_count(), 1);
        assert!(p.category.validate().is_empty());
    }

    #[test]
    fn product_of_two_walking_arrows() {
        let two = Arc::new(samples::walking_arrow());
        let p = product(&[two.clone(), two.clone()]);
        assert_eq!(p.category.object_count(), 4);
        assert_eq!(p.category.arrow_count(), 9);
        assert!(p.category.validate().is_empty());
        for proj in &p.projections {
            assert!(proj.validate().is_empty());
        }
    }

    #[test]
    fn product_with_terminal_is_isomorphic() {
        let one = Arc::new(samples::terminal());
        for c in [samples::walking_arrow(), samples::walking_iso(), samples::parallel_pair()] {
            let c = Arc::new(c);
            let p = product(&[one.clone(), c.clone()]);
            // The second projection realizes 1 × C ≅ C.
            assert!(iso_check(&p.projections[1]));
        }
    }

    #[test]
    fn inserter_picks_out_commuting_squares() {
        let one = Arc::new(samples::terminal());
        let two = Arc::new(samples::walking_arrow());
        let f = samples::const_functor(&one, &two, 0);
        let g = samples::const_functor(&one, &two, 1);
        let ins = inserter(&f, &g);
        assert_eq!(ins.category.object_count(), 1);
        assert_eq!(ins.category.arrow_count(), 1);
        assert!(ins.category.validate().is_empty());
        assert!(ins.canonical.validate().is_empty());

        // Reversed: no arrow 1 -> 0, so the inserter is empty.
        let rev = inserter(&g, &f);
        assert_eq!(rev.category.object_count(), 0);

        // Identity pair on the walking arrow: squares always commute.
        let id = Functor::identity(&two);
        let ins = inserter(&id, &id);
        assert_eq!(ins.category.object_count(), 2);
        assert!(iso_check(&ins.projection));
    }

    #[test]
    fn equifier_of_equal_naturals_is_whole_domain() {
        let one = Arc::new(samples::terminal());
        let two = Arc::new(samples::walking_arrow());
        let f = samples::const_functor(&one, &two, 0);
        let g = samples::const_functor(&one, &two, 1);
        let n = &enumerate_naturals(&f, &g)[0];
        let eq = equifier(n, n);
        assert!(iso_check(&eq.inclusion));
    }

    #[test]
    fn equifier_is_everything_when_the_hom_set_forces_agreement() {
        // Constants at 0 and 1 on the walking arrow: hom(0,1) = {u}, so any
        // two parallel naturals are equal and the equifier is the whole
        // domain.
        let two = Arc::new(samples::walking_arrow());
        let f = samples::const_functor(&two, &two, 0);
        let g = samples::const_functor(&two, &two, 1);
        let nats = enumerate_naturals(&f, &g);
        assert_eq!(nats.len(), 1);
        let eq = equifier(&nats[0], &nats[0]);
        assert!(iso_check(&eq.inclusion));
        assert_eq!(eq.category.object_count(), 2);
    }

    #[test]
    fn equifier_on_disjoint_union_keeps_agreeing_point() {
        let dom = Arc::new(samples::discrete(&["p", "q"]));
        let two = Arc::new(samples::walking_arrow());
        // F constant at 0, G constant at 1; naturals are choices of u at p, q.
        let f = samples::const_functor(&dom, &two, 0);
        let g = samples::const_functor(&dom, &two, 1);
        let nats = enumerate_naturals(&f, &g);
        assert_eq!(nats.len(), 1, "hom(0,1) has a single arrow");
        // Fabricate a disagreement via a different pair: use F = G = const 0,
        // where components can be id at one point.
        let f0 = samples::const_functor(&dom, &two, 0);
        let nats0 = enumerate_naturals(&f0, &f0);
        assert_eq!(nats0.len(), 1);
        // Mixed functor: p ↦ 0, q ↦ 0 vs p ↦ 0, q ↦ 1 allows a one-point equifier.
        let mixed = Functor {
            dom: dom.clone(),
            cod: two.clone(),
            on_objects: vec![0, 1],
            on_arrows: vec![two.identity[0], two.identity[1]],
        };
        let a = enumerate_naturals(&f0, &mixed);
        assert_eq!(a.len(), 1);
        let b = NatTrans {
            dom: f0.clone(),
            cod: mixed.clone(),
            components: vec![two.identity[0], a[0].components[1]],
        };
        // a and b agree at p only if their q components differ.
        let eq = equifier(&a[0], &b);
        assert_eq!(eq.category.object_count(), if a[0] == b { 2 } else { 1 });
    }

    #[test]
    fn inserter_universal_property_by_enumeration() {
        // Every cone (q : E -> C, ρ : F∘q ⇒ G∘q) factors through the
        // inserter by exactly one functor.
        let two = Arc::new(samples::walking_arrow());
        let f = samples::const_functor(&two, &two, 0);
        let g = Functor::identity(&two);
        let ins = inserter(&f, &g);
        assert!(ins.category.validate().is_empty());
        for e in samples::default_vertices() {
            for q in enumerate_functors(&e, &two) {
                let fq = Functor::compose(&f, &q);
                let gq = Functor::compose(&g, &q);
                for rho in enumerate_naturals(&fq, &gq) {
                    let factorizations: Vec<Functor> = enumerate_functors(&e, &ins.category)
                        .into_iter()
                        .filter(|u| {
                            Functor::compose(&ins.projection, u) == q
                                && NatTrans::pre_whisker(&ins.canonical, u) == rho
                        })
                        .collect();
                    assert_eq!(factorizations.len(), 1, "cone ({q}, ρ) must factor uniquely");
                }
            }
        }
    }

    #[test]
    fn functor_enumeration_counts() {
        let one = Arc::new(samples::terminal());
        let two = Arc::new(samples::walking_arrow());
        assert_eq!(enumerate_functors(&one, &two).len(), 2);
        assert_eq!(enumerate_functors(&two, &one).len(), 1);
        // Functors 2 -> 2 are the arrows of 2.
        assert_eq!(enumerate_functors(&two, &two).len(), 3);
    }

    #[test]
    fn natural_enumeration_counts() {
        let one = Arc::new(samples::terminal());
        let two = Arc::new(samples::walking_arrow());
        let c0 = samples::const_functor(&one, &two, 0);
        let c1 = samples::const_functor(&one, &two, 1);
        assert_eq!(enumerate_naturals(&c0, &c1).len(), 1);
        assert_eq!(enumerate_naturals(&c1, &c0).len(), 0);
    }

    #[test]
    fn iso_check_examples() {
        let two = Arc::new(samples::walking_arrow());
        let one = Arc::new(samples::terminal());
        assert!(iso_check(&Functor::identity(&two)));
        assert!(!iso_check(&enumerate_functors(&two, &one)[0]));
        // The swap on 1 ⊔ 1.
        let dd = Arc::new(samples::discrete(&["p", "q"]));
        let swap = Functor {
            dom: dd.clone(),
            cod: dd.clone(),
            on_objects: vec![1, 0],
            on_arrows: vec![1, 0],
        };
        assert!(swap.validate().is_empty());
        assert!(iso_check(&swap));
    }

    #[test]
    fn cell_class_membership_and_closure() {
        let two = Arc::new(samples::walking_arrow());
        let iso = Arc::new(samples::walking_iso());
        let id = NatTrans::identity(&Functor::identity(&two));
        assert!(CellClass::Strict.contains(&id));
        assert!(CellClass::Pseudo.contains(&id));
        assert!(CellClass::Lax.contains(&id));

        let c0 = samples::const_functor(&Arc::new(samples::terminal()), &two, 0);
        let c1 = samples::const_functor(&Arc::new(samples::terminal()), &two, 1);
        let u = &enumerate_naturals(&c0, &c1)[0];
        assert!(!CellClass::Strict.contains(u));
        assert!(!CellClass::Pseudo.contains(u));
        assert!(CellClass::Lax.contains(u));

        let i0 = samples::const_functor(&Arc::new(samples::terminal()), &iso, 0);
        let i1 = samples::const_functor(&Arc::new(samples::terminal()), &iso, 1);
        let inv = &enumerate_naturals(&i0, &i1)[0];
        assert!(CellClass::Pseudo.contains(inv));
        // Vertical and horizontal composites of pseudo cells stay pseudo.
        let back = &enumerate_naturals(&i1, &i0)[0];
        assert!(CellClass::Pseudo.contains(&NatTrans::vcomp(back, inv)));
        let idf = NatTrans::identity(&Functor::identity(&iso));
        assert!(CellClass::Pseudo.contains(&NatTrans::hcomp(&idf, inv)));
    }

    #[test]
    fn flat_renaming_keeps_structure() {
        let two = Arc::new(samples::walking_arrow());
        let p = product(&[two.clone(), two.clone()]);
        let (flat, ren) = p.category.renamed_flat("x");
        assert!(flat.validate().is_empty());
        assert_eq!(ren.objects.len(), 4);
        assert_eq!(flat.objects[0], "x0");
        assert_eq!(ren.objects[0].1, "(0,0)");
    }
}
