//! 2-monads on finite categories, strict algebras, weak algebra morphisms
//! for a fixed 2-cell class Ω, and the lifting of PIE-indexed sigma-strict
//! op-limits to the 2-category of algebras.
//!
//! A weak morphism `(f, f̄) : (A, a) → (B, b)` carries a structural 2-cell
//! `f̄ : b ∘ Tf ⇒ f ∘ a` in Ω, subject to the two coherence equations
//!
//! - unit: `f̄ ⋆ η_A = id_f`,
//! - multiplication: `f̄ ⋆ m_A = (f̄ ⋆ Ta) ∘ (b ⋆ Tf̄)`,
//!
//! and an algebra 2-cell `ρ : (f, f̄) ⇒ (g, ḡ)` is a 2-cell of the base
//! satisfying `ḡ ∘ (b ⋆ Tρ) = (ρ ⋆ a) ∘ f̄`. The lifting constructs the
//! structure map on the limit from the distinguished projections, verifies
//! the algebra axioms and strictness of those projections, and checks the
//! universal properties at the algebra level over a finite vertex corpus.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cones::{
    compatibility_check, enumerate_cones, factor_cone, modify_cone, sigma_s_limit, ConeError, LaxCone, LimitResult,
    Orientation,
};
use crate::diagnostics::{render, violation, Diagnostics};
use crate::fincat::{enumerate_functors, enumerate_naturals, Arrow, CellClass, FinCategory, Functor, NatTrans};
use crate::two_cat::{pie_analysis, NotPie, SigmaFamily, TwoCategory, TwoFunctor};

/// A strict 2-monad on finite categories, supplied as code. Implementations
/// must be pure: equal inputs give structurally equal outputs.
pub trait Monad2: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;
    fn on_category(&self, c: &Arc<FinCategory>) -> Arc<FinCategory>;
    fn on_functor(&self, f: &Functor) -> Functor;
    fn on_natural(&self, n: &NatTrans) -> NatTrans;
    /// `η_C : C → TC`.
    fn unit(&self, c: &Arc<FinCategory>) -> Functor;
    /// `m_C : TTC → TC`.
    fn mult(&self, c: &Arc<FinCategory>) -> Functor;
}

/// The identity monad: algebras are plain categories and every morphism
/// class collapses to the strict one.
#[derive(Debug)]
pub struct IdentityMonad;

impl Monad2 for IdentityMonad {
    fn name(&self) -> &str {
        "identity"
    }

    fn on_category(&self, c: &Arc<FinCategory>) -> Arc<FinCategory> {
        c.clone()
    }

    fn on_functor(&self, f: &Functor) -> Functor {
        f.clone()
    }

    fn on_natural(&self, n: &NatTrans) -> NatTrans {
        n.clone()
    }

    fn unit(&self, c: &Arc<FinCategory>) -> Functor {
        Functor::identity(c)
    }

    fn mult(&self, c: &Arc<FinCategory>) -> Functor {
        Functor::identity(c)
    }
}

fn fresh_name(taken: impl Iterator<Item = String>, base: &str) -> String {
    let taken: Vec<String> = taken.collect();
    if !taken.iter().any(|t| t == base) {
        return base.to_string();
    }
    let mut k = 2;
    loop {
        let cand = format!("{base}{k}");
        if !taken.iter().any(|t| t == &cand) {
            return cand;
        }
        k += 1;
    }
}

/// The pointed-category monad `T C = C ⊔ 1`: the unit is the inclusion and
/// the multiplication folds the two added points.
#[derive(Debug)]
pub struct PointedMonad;

impl PointedMonad {
    fn point_of(&self, c: &Arc<FinCategory>) -> usize {
        c.object_count()
    }
}

impl Monad2 for PointedMonad {
    fn name(&self) -> &str {
        "pointed"
    }

    fn on_category(&self, c: &Arc<FinCategory>) -> Arc<FinCategory> {
        let mut objects = c.objects.clone();
        let pt = fresh_name(objects.iter().cloned(), "pt");
        objects.push(pt.clone());
        let mut arrows = c.arrows.clone();
        let id_pt = fresh_name(arrows.iter().map(|a| a.id.clone()), &format!("id_{pt}"));
        arrows.push(Arrow {
            id: id_pt,
            src: c.object_count(),
            tgt: c.object_count(),
        });
        let mut identity = c.identity.clone();
        identity.push(c.arrow_count());
        let mut compose = c.compose.clone();
        compose.insert((c.arrow_count(), c.arrow_count()), c.arrow_count());
        Arc::new(FinCategory {
            objects,
            arrows,
            identity,
            compose,
        })
    }

    fn on_functor(&self, f: &Functor) -> Functor {
        let dom = self.on_category(&f.dom);
        let cod = self.on_category(&f.cod);
        let mut on_objects = f.on_objects.clone();
        on_objects.push(self.point_of(&f.cod));
        let mut on_arrows = f.on_arrows.clone();
        on_arrows.push(f.cod.arrow_count());
        Functor {
            dom,
            cod,
            on_objects,
            on_arrows,
        }
    }

    fn on_natural(&self, n: &NatTrans) -> NatTrans {
        let dom = self.on_functor(&n.dom);
        let cod = self.on_functor(&n.cod);
        let mut components = n.components.clone();
        // Identity at the added point.
        components.push(n.dom.cod.arrow_count());
        NatTrans {
            dom,
            cod,
            components,
        }
    }

    fn unit(&self, c: &Arc<FinCategory>) -> Functor {
        let tc = self.on_category(c);
        Functor {
            dom: c.clone(),
            cod: tc,
            on_objects: (0..c.object_count()).collect(),
            on_arrows: (0..c.arrow_count()).collect(),
        }
    }

    fn mult(&self, c: &Arc<FinCategory>) -> Functor {
        let tc = self.on_category(c);
        let ttc = self.on_category(&tc);
        let mut on_objects: Vec<usize> = (0..tc.object_count()).collect();
        on_objects.push(self.point_of(c));
        let mut on_arrows: Vec<usize> = (0..tc.arrow_count()).collect();
        on_arrows.push(c.arrow_count());
        Functor {
            dom: ttc,
            cod: tc,
            on_objects,
            on_arrows,
        }
    }
}

/// The built-in monads, in a fixed order.
pub fn builtin_monads() -> Vec<Arc<dyn Monad2>> {
    vec![Arc::new(IdentityMonad), Arc::new(PointedMonad)]
}

pub fn monad_by_name(name: &str) -> Option<Arc<dyn Monad2>> {
    builtin_monads().into_iter().find(|m| m.name() == name)
}

/// Validates the monad laws and strict 2-naturality of the unit and the
/// multiplication on the given sample of categories, functors and naturals.
pub fn validate_monad(
    t: &dyn Monad2,
    cats: &[Arc<FinCategory>],
    functors: &[Functor],
    naturals: &[NatTrans],
) -> Diagnostics {
    let mut out = Vec::new();
    for c in cats {
        let tc = t.on_category(c);
        if !tc.validate().is_empty() {
            out.push(violation("monad-category", "T does not preserve category validity"));
        }
        let eta = t.unit(c);
        let mu = t.mult(c);
        if !eta.validate().is_empty() || eta.dom != *c || eta.cod != tc {
            out.push(violation("monad-unit", "η_C is not a functor C -> TC"));
            continue;
        }
        if !mu.validate().is_empty() || mu.dom != t.on_category(&tc) || mu.cod != tc {
            out.push(violation("monad-mult", "m_C is not a functor TTC -> TC"));
            continue;
        }
        if Functor::compose(&mu, &t.unit(&tc)) != Functor::identity(&tc) {
            out.push(violation("monad-law", "m ∘ ηT ≠ id"));
        }
        if Functor::compose(&mu, &t.on_functor(&eta)) != Functor::identity(&tc) {
            out.push(violation("monad-law", "m ∘ Tη ≠ id"));
        }
        if Functor::compose(&mu, &t.mult(&tc)) != Functor::compose(&mu, &t.on_functor(&mu)) {
            out.push(violation("monad-law", "m ∘ mT ≠ m ∘ Tm"));
        }
        if t.on_functor(&Functor::identity(c)) != Functor::identity(&tc) {
            out.push(violation("monad-functor", "T id ≠ id"));
        }
    }
    for f in functors {
        let tf = t.on_functor(f);
        if !tf.validate().is_empty() {
            out.push(violation("monad-functor", "T f is not a functor"));
        }
        if Functor::compose(&t.unit(&f.cod), f) != Functor::compose(&tf, &t.unit(&f.dom)) {
            out.push(violation("monad-naturality", "η is not natural at a sample functor"));
        }
        let ttf = t.on_functor(&tf);
        if Functor::compose(&t.mult(&f.cod), &ttf) != Functor::compose(&tf, &t.mult(&f.dom)) {
            out.push(violation("monad-naturality", "m is not natural at a sample functor"));
        }
        for g in functors {
            if g.dom == f.cod && t.on_functor(&Functor::compose(g, f)) != Functor::compose(&t.on_functor(g), &tf) {
                out.push(violation("monad-functoriality", "T(g∘f) ≠ Tg ∘ Tf"));
            }
        }
    }
    for n in naturals {
        let tn = t.on_natural(n);
        if !tn.validate().is_empty() {
            out.push(violation("monad-natural", "T n is not a natural transformation"));
        }
        // 2-naturality of η and m at n.
        let eta_cod = t.unit(&n.dom.cod);
        if NatTrans::post_whisker(&eta_cod, n) != NatTrans::pre_whisker(&tn, &t.unit(&n.dom.dom)) {
            out.push(violation("monad-two-naturality", "η fails 2-naturality at a sample natural"));
        }
        let ttn = t.on_natural(&tn);
        if NatTrans::post_whisker(&t.mult(&n.dom.cod), &ttn) != NatTrans::pre_whisker(&tn, &t.mult(&n.dom.dom)) {
            out.push(violation("monad-two-naturality", "m fails 2-naturality at a sample natural"));
        }
        for m in naturals {
            if m.dom == n.cod && t.on_natural(&NatTrans::vcomp(m, n)) != NatTrans::vcomp(&t.on_natural(m), &tn) {
                out.push(violation("monad-vcomp", "T(m∘n) ≠ Tm ∘ Tn"));
            }
        }
        for f in functors {
            if f.dom == n.dom.cod
                && t.on_natural(&NatTrans::post_whisker(f, n)) != NatTrans::post_whisker(&t.on_functor(f), &tn)
            {
                out.push(violation("monad-whisker", "T(f ⋆ n) ≠ Tf ⋆ Tn"));
            }
            if f.cod == n.dom.dom
                && t.on_natural(&NatTrans::pre_whisker(n, f)) != NatTrans::pre_whisker(&tn, &t.on_functor(f))
            {
                out.push(violation("monad-whisker", "T(n ⋆ f) ≠ Tn ⋆ Tf"));
            }
        }
    }
    out
}

/// A strict algebra `(A, a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra {
    pub carrier: Arc<FinCategory>,
    pub structure: Functor,
}

impl Algebra {
    /// Pointed-monad algebra on a carrier with a chosen basepoint.
    pub fn pointed(carrier: &Arc<FinCategory>, basepoint: usize) -> Algebra {
        let t = PointedMonad;
        let tc = t.on_category(carrier);
        let mut on_objects: Vec<usize> = (0..carrier.object_count()).collect();
        on_objects.push(basepoint);
        let mut on_arrows: Vec<usize> = (0..carrier.arrow_count()).collect();
        on_arrows.push(carrier.identity[basepoint]);
        Algebra {
            carrier: carrier.clone(),
            structure: Functor {
                dom: tc,
                cod: carrier.clone(),
                on_objects,
                on_arrows,
            },
        }
    }
}

pub fn validate_algebra(t: &dyn Monad2, alg: &Algebra) -> Diagnostics {
    let mut out = Vec::new();
    let tc = t.on_category(&alg.carrier);
    if alg.structure.dom != tc || alg.structure.cod != alg.carrier {
        out.push(violation("algebra-structure", "structure map is not TA -> A"));
        return out;
    }
    for v in alg.structure.validate() {
        out.push(violation("algebra-structure", v.detail));
    }
    if !out.is_empty() {
        return out;
    }
    if Functor::compose(&alg.structure, &t.unit(&alg.carrier)) != Functor::identity(&alg.carrier) {
        out.push(violation("algebra-unit", "a ∘ η ≠ id"));
    }
    if Functor::compose(&alg.structure, &t.on_functor(&alg.structure))
        != Functor::compose(&alg.structure, &t.mult(&alg.carrier))
    {
        out.push(violation("algebra-mult", "a ∘ Ta ≠ a ∘ m"));
    }
    out
}

/// Enumerates every algebra structure on a carrier.
pub fn enumerate_algebras(t: &dyn Monad2, carrier: &Arc<FinCategory>) -> Vec<Algebra> {
    let tc = t.on_category(carrier);
    enumerate_functors(&tc, carrier)
        .into_iter()
        .map(|structure| Algebra {
            carrier: carrier.clone(),
            structure,
        })
        .filter(|alg| validate_algebra(t, alg).is_empty())
        .collect()
}

/// A weak (ω-)morphism `(f, f̄) : (A, a) → (B, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaMorphism {
    pub dom: Algebra,
    pub cod: Algebra,
    pub functor: Functor,
    /// `f̄ : b ∘ Tf ⇒ f ∘ a`.
    pub cell: NatTrans,
}

impl OmegaMorphism {
    pub fn identity(alg: &Algebra) -> OmegaMorphism {
        OmegaMorphism {
            dom: alg.clone(),
            cod: alg.clone(),
            functor: Functor::identity(&alg.carrier),
            cell: NatTrans::identity(&alg.structure),
        }
    }

    /// Strict morphism on a given carrier functor (identity structural cell).
    pub fn strict(t: &dyn Monad2, dom: &Algebra, cod: &Algebra, functor: Functor) -> OmegaMorphism {
        let cell = NatTrans::identity(&Functor::compose(&cod.structure, &t.on_functor(&functor)));
        OmegaMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            functor,
            cell,
        }
    }

    /// `(g, ḡ) ∘ (f, f̄) = (g∘f, (g ⋆ f̄) ∘ (ḡ ⋆ Tf))`.
    pub fn compose(t: &dyn Monad2, g: &OmegaMorphism, f: &OmegaMorphism) -> OmegaMorphism {
        let tf = t.on_functor(&f.functor);
        let cell = NatTrans::vcomp(
            &NatTrans::post_whisker(&g.functor, &f.cell),
            &NatTrans::pre_whisker(&g.cell, &tf),
        );
        OmegaMorphism {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            functor: Functor::compose(&g.functor, &f.functor),
            cell,
        }
    }

    /// The finest built-in class containing the structural cell.
    pub fn class(&self) -> CellClass {
        if self.cell.is_identity() {
            CellClass::Strict
        } else if self.cell.is_invertible() {
            CellClass::Pseudo
        } else {
            CellClass::Lax
        }
    }
}

pub fn validate_omega_morphism(t: &dyn Monad2, m: &OmegaMorphism, omega: CellClass) -> Diagnostics {
    let mut out = Vec::new();
    if m.functor.dom != m.dom.carrier || m.functor.cod != m.cod.carrier {
        out.push(violation("morphism-functor", "carrier functor endpoints do not match the algebras"));
        return out;
    }
    for v in m.functor.validate() {
        out.push(violation("morphism-functor", v.detail));
    }
    let tf = t.on_functor(&m.functor);
    let want_dom = Functor::compose(&m.cod.structure, &tf);
    let want_cod = Functor::compose(&m.functor, &m.dom.structure);
    if m.cell.dom != want_dom || m.cell.cod != want_cod {
        out.push(violation("morphism-cell", "structural cell is not b∘Tf ⇒ f∘a"));
        return out;
    }
    for v in m.cell.validate() {
        out.push(violation("morphism-cell", v.detail));
    }
    if !out.is_empty() {
        return out;
    }
    if !omega.contains(&m.cell) {
        out.push(violation("morphism-class", format!("structural cell is not in Ω_{}", omega.label())));
    }
    // Unit coherence: f̄ ⋆ η_A = id_f.
    let unit_side = NatTrans::pre_whisker(&m.cell, &t.unit(&m.dom.carrier));
    if unit_side != NatTrans::identity(&unit_side.dom) {
        out.push(violation("morphism-unit-coherence", "f̄ ⋆ η ≠ id"));
    }
    // Multiplication coherence: f̄ ⋆ m_A = (f̄ ⋆ Ta) ∘ (b ⋆ Tf̄).
    let lhs = NatTrans::pre_whisker(&m.cell, &t.mult(&m.dom.carrier));
    let rhs = NatTrans::vcomp(
        &NatTrans::pre_whisker(&m.cell, &t.on_functor(&m.dom.structure)),
        &NatTrans::post_whisker(&m.cod.structure, &t.on_natural(&m.cell)),
    );
    if lhs != rhs {
        out.push(violation("morphism-mult-coherence", "f̄ ⋆ m ≠ (f̄ ⋆ Ta) ∘ (b ⋆ Tf̄)"));
    }
    out
}

/// The algebra 2-cell equation `ḡ ∘ (b ⋆ Tρ) = (ρ ⋆ a) ∘ f̄` for a base
/// 2-cell `ρ : f ⇒ g` between weak morphisms with shared endpoints.
pub fn is_algebra_two_cell(t: &dyn Monad2, from: &OmegaMorphism, to: &OmegaMorphism, rho: &NatTrans) -> bool {
    if rho.dom != from.functor || rho.cod != to.functor {
        return false;
    }
    let lhs = NatTrans::vcomp(&to.cell, &NatTrans::post_whisker(&from.cod.structure, &t.on_natural(rho)));
    let rhs = NatTrans::vcomp(&NatTrans::pre_whisker(rho, &from.dom.structure), &from.cell);
    lhs == rhs
}

/// Enumerates all weak morphisms between two algebras whose cell lies in Ω.
pub fn enumerate_omega_morphisms(
    t: &dyn Monad2,
    dom: &Algebra,
    cod: &Algebra,
    omega: CellClass,
) -> Vec<OmegaMorphism> {
    let mut out = Vec::new();
    for functor in enumerate_functors(&dom.carrier, &cod.carrier) {
        let tf = t.on_functor(&functor);
        let cell_dom = Functor::compose(&cod.structure, &tf);
        let cell_cod = Functor::compose(&functor, &dom.structure);
        for cell in enumerate_naturals(&cell_dom, &cell_cod) {
            let m = OmegaMorphism {
                dom: dom.clone(),
                cod: cod.clone(),
                functor: functor.clone(),
                cell,
            };
            if validate_omega_morphism(t, &m, omega).is_empty() {
                out.push(m);
            }
        }
    }
    out
}

/// A diagram in the 2-category of algebras and weak morphisms: algebras on
/// objects, weak morphisms on 1-cells, algebra 2-cells on 2-cells.
#[derive(Debug, Clone)]
pub struct AlgebraDiagram {
    pub monad: Arc<dyn Monad2>,
    pub shape: Arc<TwoCategory>,
    pub sigma: SigmaFamily,
    pub algebras: Vec<Algebra>,
    pub morphisms: Vec<OmegaMorphism>,
    pub cells: Vec<NatTrans>,
}

impl AlgebraDiagram {
    /// The underlying diagram of carriers.
    pub fn underlying(&self) -> TwoFunctor {
        TwoFunctor {
            shape: self.shape.clone(),
            on_objects: self.algebras.iter().map(|a| a.carrier.clone()).collect(),
            on_one: self.morphisms.iter().map(|m| m.functor.clone()).collect(),
            on_two: self.cells.clone(),
        }
    }

    /// Wraps a plain diagram as an identity-monad algebra diagram.
    pub fn trivial(diagram: &Arc<TwoFunctor>, sigma: &SigmaFamily) -> AlgebraDiagram {
        let t: Arc<dyn Monad2> = Arc::new(IdentityMonad);
        let algebras: Vec<Algebra> = diagram
            .on_objects
            .iter()
            .map(|c| Algebra {
                carrier: c.clone(),
                structure: Functor::identity(c),
            })
            .collect();
        let shape = diagram.shape.clone();
        let morphisms = (0..shape.one_cells.len())
            .map(|f| {
                let (a, b) = (shape.one_cells[f].src, shape.one_cells[f].tgt);
                OmegaMorphism::strict(t.as_ref(), &algebras[a], &algebras[b], diagram.one(f).clone())
            })
            .collect();
        AlgebraDiagram {
            monad: t,
            shape,
            sigma: sigma.clone(),
            algebras,
            morphisms,
            cells: diagram.on_two.clone(),
        }
    }

    /// Validates the whole diagram as a strict 2-functor into the algebra
    /// 2-category with morphism cells in Ω.
    pub fn validate(&self, omega: CellClass) -> Diagnostics {
        let t = self.monad.as_ref();
        let mut out = Vec::new();
        let under = Arc::new(self.underlying());
        for v in under.validate() {
            out.push(v);
        }
        let monad_diags = validate_monad(t, &under.on_objects, &under.on_one, &under.on_two);
        out.extend(monad_diags);
        for (a, alg) in self.algebras.iter().enumerate() {
            for v in validate_algebra(t, alg) {
                out.push(violation(&v.rule, format!("at `{}`: {}", self.shape.objects[a], v.detail)));
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            for v in validate_omega_morphism(t, m, omega) {
                out.push(violation(&v.rule, format!("at `{}`: {}", self.shape.one_cells[f].id, v.detail)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // Strictness of the 2-functor into algebras: identities and
        // composites of the structural cells.
        for (o, &i) in self.shape.one_identity.iter().enumerate() {
            if self.morphisms[i] != OmegaMorphism::identity(&self.algebras[o]) {
                out.push(violation(
                    "diagram-identity-morphism",
                    format!("identity 1-cell of `{}` is not the identity morphism", self.shape.objects[o]),
                ));
            }
        }
        for (&(g, f), &gf) in &self.shape.one_compose {
            let composite = OmegaMorphism::compose(t, &self.morphisms[g], &self.morphisms[f]);
            if self.morphisms[gf].cell != composite.cell {
                out.push(violation(
                    "diagram-composite-morphism",
                    format!(
                        "structural cell over `{}` is not the composite of those over `{}` and `{}`",
                        self.shape.one_cells[gf].id, self.shape.one_cells[g].id, self.shape.one_cells[f].id
                    ),
                ));
            }
        }
        for (c, cell) in self.cells.iter().enumerate() {
            let (f, g) = (self.shape.two_cells[c].src, self.shape.two_cells[c].tgt);
            if !is_algebra_two_cell(t, &self.morphisms[f], &self.morphisms[g], cell) {
                out.push(violation(
                    "diagram-two-cell",
                    format!("`{}` is not an algebra 2-cell", self.shape.two_cells[c].id),
                ));
            }
        }
        out
    }
}

/// Assembles an [`AlgebraDiagram`] from images of the generating cells,
/// closing under the strictness equations exactly like
/// [`crate::two_cat::TwoFunctorBuilder`].
pub struct AlgebraDiagramBuilder {
    monad: Arc<dyn Monad2>,
    shape: Arc<TwoCategory>,
    sigma: SigmaFamily,
    algebras: Vec<Option<Algebra>>,
    morphisms: Vec<Option<OmegaMorphism>>,
    cells: Vec<Option<NatTrans>>,
}

impl AlgebraDiagramBuilder {
    pub fn new(monad: Arc<dyn Monad2>, shape: Arc<TwoCategory>, sigma: SigmaFamily) -> Self {
        let (n0, n1, n2) = (shape.objects.len(), shape.one_cells.len(), shape.two_cells.len());
        AlgebraDiagramBuilder {
            monad,
            shape,
            sigma,
            algebras: vec![None; n0],
            morphisms: vec![None; n1],
            cells: vec![None; n2],
        }
    }

    pub fn assign_algebra(&mut self, i: usize, alg: Algebra) -> Result<(), String> {
        match &self.algebras[i] {
            Some(prev) if *prev != alg => Err(format!("conflicting algebras for `{}`", self.shape.objects[i])),
            _ => {
                self.algebras[i] = Some(alg);
                Ok(())
            }
        }
    }

    pub fn assign_morphism(&mut self, i: usize, functor: Functor, cell: NatTrans) -> Result<(), String> {
        let cell_src = self.shape.one_cells[i].src;
        let cell_tgt = self.shape.one_cells[i].tgt;
        let (dom, cod) = match (&self.algebras[cell_src], &self.algebras[cell_tgt]) {
            (Some(d), Some(c)) => (d.clone(), c.clone()),
            _ => return Err(format!("algebras at the endpoints of `{}` must be given first", self.shape.one_cells[i].id)),
        };
        let m = OmegaMorphism {
            dom,
            cod,
            functor,
            cell,
        };
        match &self.morphisms[i] {
            Some(prev) if *prev != m => Err(format!("conflicting morphisms for `{}`", self.shape.one_cells[i].id)),
            _ => {
                self.morphisms[i] = Some(m);
                Ok(())
            }
        }
    }

    pub fn assign_cell(&mut self, i: usize, cell: NatTrans) -> Result<(), String> {
        match &self.cells[i] {
            Some(prev) if *prev != cell => Err(format!("conflicting images for 2-cell `{}`", self.shape.two_cells[i].id)),
            _ => {
                self.cells[i] = Some(cell);
                Ok(())
            }
        }
    }

    pub fn build(mut self) -> Result<AlgebraDiagram, String> {
        let t = self.monad.clone();
        let shape = self.shape.clone();
        loop {
            let mut progressed = false;
            for (o, &i) in shape.one_identity.iter().enumerate() {
                if self.morphisms[i].is_none() {
                    if let Some(alg) = &self.algebras[o] {
                        self.morphisms[i] = Some(OmegaMorphism::identity(alg));
                        progressed = true;
                    }
                }
            }
            for (&(g, f), &gf) in &shape.one_compose {
                if self.morphisms[gf].is_none() {
                    if let (Some(mg), Some(mf)) = (&self.morphisms[g], &self.morphisms[f]) {
                        self.morphisms[gf] = Some(OmegaMorphism::compose(t.as_ref(), mg, mf));
                        progressed = true;
                    }
                }
            }
            for (f, &i) in shape.two_identity.iter().enumerate() {
                if self.cells[i].is_none() {
                    if let Some(m) = &self.morphisms[f] {
                        self.cells[i] = Some(NatTrans::identity(&m.functor));
                        progressed = true;
                    }
                }
            }
            for (&(b, a), &ba) in &shape.vcompose {
                if self.cells[ba].is_none() {
                    if let (Some(nb), Some(na)) = (&self.cells[b], &self.cells[a]) {
                        self.cells[ba] = Some(NatTrans::vcomp(nb, na));
                        progressed = true;
                    }
                }
            }
            for (&(g, a), &r) in &shape.whisker_post {
                if self.cells[r].is_none() {
                    if let (Some(m), Some(na)) = (&self.morphisms[g], &self.cells[a]) {
                        self.cells[r] = Some(NatTrans::post_whisker(&m.functor, na));
                        progressed = true;
                    }
                }
            }
            for (&(a, e), &r) in &shape.whisker_pre {
                if self.cells[r].is_none() {
                    if let (Some(na), Some(m)) = (&self.cells[a], &self.morphisms[e]) {
                        self.cells[r] = Some(NatTrans::pre_whisker(na, &m.functor));
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        for (o, a) in self.algebras.iter().enumerate() {
            if a.is_none() {
                return Err(format!("no algebra for object `{}`", shape.objects[o]));
            }
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.is_none() {
                return Err(format!("no morphism for 1-cell `{}`", shape.one_cells[i].id));
            }
        }
        for (i, c) in self.cells.iter().enumerate() {
            if c.is_none() {
                return Err(format!("no image for 2-cell `{}`", shape.two_cells[i].id));
            }
        }
        Ok(AlgebraDiagram {
            monad: self.monad,
            shape,
            sigma: self.sigma,
            algebras: self.algebras.into_iter().map(Option::unwrap).collect(),
            morphisms: self.morphisms.into_iter().map(Option::unwrap).collect(),
            cells: self.cells.into_iter().map(Option::unwrap).collect(),
        })
    }
}

/// Outcome records of the lifting run. Every field is verified, not assumed.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LiftVerdicts {
    /// Ω-compatibility of the base limit, verified over the vertex corpus.
    pub omega_compatible: bool,
    /// The cone θ with vertex TL satisfies the op-lax cone axioms.
    pub theta_cone_valid: bool,
    /// μ_f agrees with the directly computed pasting for every arrow.
    pub mu_matches_pasting: bool,
    /// μ_f is an identity 2-cell over every marked arrow.
    pub sigma_cells_identity: bool,
    /// The unit and multiplication axioms for the lifted structure map.
    pub algebra_axioms: bool,
    /// Every (π_A, π̄_A) is a valid Ω-morphism.
    pub projections_valid: bool,
    /// Projections whose structural 2-cell is an identity.
    pub strict_projections: Vec<String>,
    /// All distinguished projections are among the strict ones.
    pub initials_strict: bool,
    /// π_f ⋆ l = μ_f and π_f is an algebra 2-cell, for every arrow.
    pub projection_cells_algebraic: bool,
    /// Unique factorization of every algebra-level cone over the corpus.
    pub one_dimensional: bool,
    /// Induced 2-cells of algebra-level modifications are algebra 2-cells.
    pub two_dimensional: bool,
}

impl LiftVerdicts {
    pub fn all_pass(&self) -> bool {
        self.omega_compatible
            && self.theta_cone_valid
            && self.mu_matches_pasting
            && self.sigma_cells_identity
            && self.algebra_axioms
            && self.projections_valid
            && self.initials_strict
            && self.projection_cells_algebraic
            && self.one_dimensional
            && self.two_dimensional
    }
}

/// The lifted limit: the base computation, the algebra structure on it, the
/// projection morphisms, and the verification verdicts.
#[derive(Debug, Clone)]
pub struct LiftResult {
    pub monad: Arc<dyn Monad2>,
    pub omega: CellClass,
    pub base: LimitResult,
    pub algebra: Algebra,
    pub projections: Vec<OmegaMorphism>,
    pub theta_cone: LaxCone,
    pub mu_cone: LaxCone,
    pub initials: Vec<usize>,
    pub verdicts: LiftVerdicts,
}

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("the indexing pair is not PIE (component without initial object: {0:?})")]
    NotPie(Vec<String>),
    #[error("the canonical arrow into `{object}` has a non-invertible structural 2-cell")]
    NonInvertibleCanonical { object: String },
    #[error("invalid algebra diagram:\n{0}")]
    InvalidDiagram(String),
    #[error("monad laws fail on data materialized by the run:\n{0}")]
    MonadLaw(String),
    #[error("cone construction failed: {0}")]
    Cone(#[from] ConeError),
}

fn not_pie_error(shape: &TwoCategory, e: NotPie) -> LiftError {
    LiftError::NotPie(e.component.iter().map(|&o| shape.objects[o].clone()).collect())
}

/// Lifts the sigma-strict op-limit of the underlying diagram to algebras:
/// builds the structure map on the limit out of the distinguished
/// projections, then verifies the algebra axioms, strictness of those
/// projections, and both universal properties over the vertex corpus.
pub fn lift_limit(
    diagram: &AlgebraDiagram,
    omega: CellClass,
    vertices: &[Arc<FinCategory>],
) -> Result<LiftResult, LiftError> {
    let t = diagram.monad.as_ref();
    let diags = diagram.validate(omega);
    if !diags.is_empty() {
        return Err(LiftError::InvalidDiagram(render(&diags)));
    }
    let shape = &diagram.shape;
    let pie = pie_analysis(shape, &diagram.sigma).map_err(|e| not_pie_error(shape, e))?;
    for a in 0..shape.objects.len() {
        let canonical = &diagram.morphisms[pie.canonical_arrow[a]];
        if !canonical.cell.is_invertible() {
            return Err(LiftError::NonInvertibleCanonical {
                object: shape.objects[a].clone(),
            });
        }
    }

    let under = Arc::new(diagram.underlying());
    let base = sigma_s_limit(&under, &diagram.sigma, Orientation::Oplax);
    // The monad's laws are re-verified on everything this run materializes,
    // the computed limit and its projection data included.
    let monad_diags = validate_monad(t, std::slice::from_ref(&base.limit), &base.projections, &base.structural);
    if !monad_diags.is_empty() {
        return Err(LiftError::MonadLaw(render(&monad_diags)));
    }
    let omega_compatible = vertices.iter().all(|e| compatibility_check(&base, omega, false, e));

    // The cone θ with vertex TL: θ_A = a ∘ Tπ_A, θ_f = (f̄ ⋆ Tπ_A) ∘ (b ⋆ Tπ_f).
    let t_pi: Vec<Functor> = base.projections.iter().map(|p| t.on_functor(p)).collect();
    let t_pi_cells: Vec<NatTrans> = base.structural.iter().map(|n| t.on_natural(n)).collect();
    let tl = t.on_category(&base.limit);
    let theta_legs: Vec<Functor> = (0..shape.objects.len())
        .map(|a| Functor::compose(&diagram.algebras[a].structure, &t_pi[a]))
        .collect();
    let theta_cells: Vec<NatTrans> = (0..shape.one_cells.len())
        .map(|f| {
            let a = shape.one_cells[f].src;
            let b = shape.one_cells[f].tgt;
            NatTrans::vcomp(
                &NatTrans::pre_whisker(&diagram.morphisms[f].cell, &t_pi[a]),
                &NatTrans::post_whisker(&diagram.algebras[b].structure, &t_pi_cells[f]),
            )
        })
        .collect();
    let theta_cone = LaxCone {
        orientation: Orientation::Oplax,
        vertex: tl.clone(),
        diagram: under.clone(),
        legs: theta_legs,
        structural: theta_cells,
    };
    let theta_cone_valid = theta_cone.validate().is_empty();

    // μ_A = F(f_A) ∘ a0 ∘ Tπ_{A0} and α_A = f̄_{f_A} ⋆ Tπ_{A0}.
    let mu_legs: Vec<Functor> = (0..shape.objects.len())
        .map(|a| {
            let a0 = pie.initial_of(a);
            let fa = pie.canonical_arrow[a];
            Functor::compose(
                &under.one(fa).clone(),
                &Functor::compose(&diagram.algebras[a0].structure, &t_pi[a0]),
            )
        })
        .collect();
    let alphas: Vec<NatTrans> = (0..shape.objects.len())
        .map(|a| {
            let a0 = pie.initial_of(a);
            let fa = pie.canonical_arrow[a];
            NatTrans::pre_whisker(&diagram.morphisms[fa].cell, &t_pi[a0])
        })
        .collect();
    let (mu_cone, _alpha_mod) = modify_cone(&theta_cone, &mu_legs, &alphas)?;

    // Independently transcribe the big pasting and compare with μ_f.
    let mu_matches_pasting = (0..shape.one_cells.len()).all(|f| {
        let a = shape.one_cells[f].src;
        let b = shape.one_cells[f].tgt;
        let inv_b = alphas[b].inverse().expect("canonical cells are invertible");
        let pasting = NatTrans::vcomp(
            &NatTrans::post_whisker(under.one(f), &alphas[a]),
            &NatTrans::vcomp(
                &NatTrans::pre_whisker(&diagram.morphisms[f].cell, &t_pi[a]),
                &NatTrans::vcomp(
                    &NatTrans::post_whisker(&diagram.algebras[b].structure, &t_pi_cells[f]),
                    &inv_b,
                ),
            ),
        );
        pasting == mu_cone.structural[f]
    });
    let sigma_cells_identity = diagram.sigma.members.iter().all(|&f| mu_cone.structural[f].is_identity());

    // The structure map on L is the factorization of μ.
    let l = factor_cone(&base, &mu_cone)?;
    let algebra = Algebra {
        carrier: base.limit.clone(),
        structure: l.clone(),
    };
    let algebra_axioms = validate_algebra(t, &algebra).is_empty();

    let projections: Vec<OmegaMorphism> = (0..shape.objects.len())
        .map(|a| OmegaMorphism {
            dom: algebra.clone(),
            cod: diagram.algebras[a].clone(),
            functor: base.projections[a].clone(),
            cell: alphas[a].clone(),
        })
        .collect();
    let projections_valid = projections.iter().all(|p| validate_omega_morphism(t, p, omega).is_empty());
    let strict_projections: Vec<String> = (0..shape.objects.len())
        .filter(|&a| alphas[a].is_identity())
        .map(|a| shape.objects[a].clone())
        .collect();
    let initials = pie.initials();
    let initials_strict = initials.iter().all(|a0| strict_projections.contains(&shape.objects[*a0]));

    // π_f ⋆ l = μ_f, and each π_f is an algebra 2-cell between (π_B, π̄_B)
    // and the composite morphism over f.
    let projection_cells_algebraic = (0..shape.one_cells.len()).all(|f| {
        let a = shape.one_cells[f].src;
        let b = shape.one_cells[f].tgt;
        let whiskered = NatTrans::pre_whisker(&base.structural[f], &l);
        let composite = OmegaMorphism::compose(t, &diagram.morphisms[f], &projections[a]);
        whiskered == mu_cone.structural[f] && is_algebra_two_cell(t, &projections[b], &composite, &base.structural[f])
    });

    // Universal properties at the algebra level, over the vertex corpus.
    let mut one_dimensional = true;
    let mut two_dimensional = true;
    for e in vertices {
        for vertex_alg in enumerate_algebras(t, e) {
            let cc = enumerate_cones(e, &under, &diagram.sigma, true, Orientation::Oplax);
            // Admissible structural-cell families per cone.
            let mut algebra_cones: Vec<(usize, Vec<OmegaMorphism>)> = Vec::new();
            for (ci, cone) in cc.cones.iter().enumerate() {
                let per_object: Vec<Vec<OmegaMorphism>> = (0..shape.objects.len())
                    .map(|a| {
                        let tha = t.on_functor(&cone.legs[a]);
                        let cell_dom = Functor::compose(&diagram.algebras[a].structure, &tha);
                        let cell_cod = Functor::compose(&cone.legs[a], &vertex_alg.structure);
                        enumerate_naturals(&cell_dom, &cell_cod)
                            .into_iter()
                            .map(|cell| OmegaMorphism {
                                dom: vertex_alg.clone(),
                                cod: diagram.algebras[a].clone(),
                                functor: cone.legs[a].clone(),
                                cell,
                            })
                            .filter(|m| validate_omega_morphism(t, m, omega).is_empty())
                            .collect()
                    })
                    .collect();
                for legs in crate::fincat::cartesian(per_object) {
                    let coherent = (0..shape.one_cells.len()).all(|f| {
                        let a = shape.one_cells[f].src;
                        let b = shape.one_cells[f].tgt;
                        let composite = OmegaMorphism::compose(t, &diagram.morphisms[f], &legs[a]);
                        is_algebra_two_cell(t, &legs[b], &composite, &cone.structural[f])
                    });
                    if coherent {
                        algebra_cones.push((ci, legs));
                    }
                }
            }
            // One-dimensional: unique algebra-level factorization.
            let mut factored: BTreeMap<(usize, Vec<Vec<usize>>), OmegaMorphism> = BTreeMap::new();
            for (ci, legs) in &algebra_cones {
                let cone = &cc.cones[*ci];
                let h = match factor_cone(&base, cone) {
                    Ok(h) => h,
                    Err(_) => {
                        one_dimensional = false;
                        continue;
                    }
                };
                let th = t.on_functor(&h);
                let cell_dom = Functor::compose(&l, &th);
                let cell_cod = Functor::compose(&h, &vertex_alg.structure);
                let candidates: Vec<NatTrans> = enumerate_naturals(&cell_dom, &cell_cod)
                    .into_iter()
                    .filter(|hbar| {
                        (0..shape.objects.len()).all(|a| {
                            let lhs = NatTrans::vcomp(
                                &NatTrans::post_whisker(&base.projections[a], hbar),
                                &NatTrans::pre_whisker(&alphas[a], &th),
                            );
                            lhs == legs[a].cell
                        })
                    })
                    .collect();
                if candidates.len() != 1 {
                    one_dimensional = false;
                    continue;
                }
                let lifted = OmegaMorphism {
                    dom: vertex_alg.clone(),
                    cod: algebra.clone(),
                    functor: h,
                    cell: candidates.into_iter().next().unwrap(),
                };
                if !validate_omega_morphism(t, &lifted, omega).is_empty() {
                    one_dimensional = false;
                    continue;
                }
                let key = (*ci, legs.iter().map(|m| m.cell.components.clone()).collect());
                factored.insert(key, lifted);
            }
            // Two-dimensional: modifications whose components are algebra
            // 2-cells induce algebra 2-cells between the factorizations.
            let one = &base.cones.vertex;
            for m in &cc.modifications {
                let di = cc.cone_index(&m.dom).expect("enumerated");
                let ci = cc.cone_index(&m.cod).expect("enumerated");
                for (dkey, dlift) in factored.iter().filter(|((i, _), _)| *i == di) {
                    for (ckey, clift) in factored.iter().filter(|((i, _), _)| *i == ci) {
                        let find_legs = |ix: usize, key: &Vec<Vec<usize>>| {
                            algebra_cones.iter().find_map(|(i, legs)| {
                                let matches = *i == ix
                                    && legs.iter().map(|mm| mm.cell.components.clone()).collect::<Vec<_>>() == *key;
                                matches.then_some(legs)
                            })
                        };
                        let (dom_legs, cod_legs) = match (find_legs(di, &dkey.1), find_legs(ci, &ckey.1)) {
                            (Some(d), Some(c)) => (d, c),
                            _ => continue,
                        };
                        let all_algebraic = (0..shape.objects.len())
                            .all(|a| is_algebra_two_cell(t, &dom_legs[a], &cod_legs[a], &m.components[a]));
                        if !all_algebraic {
                            continue;
                        }
                        let comps: Option<Vec<usize>> = (0..e.object_count())
                            .map(|x| base.cones.modification_index(&m.evaluate(one, x)))
                            .collect();
                        let beta = match comps {
                            Some(components) => NatTrans {
                                dom: dlift.functor.clone(),
                                cod: clift.functor.clone(),
                                components,
                            },
                            None => {
                                two_dimensional = false;
                                continue;
                            }
                        };
                        if !is_algebra_two_cell(t, dlift, clift, &beta) {
                            two_dimensional = false;
                        }
                    }
                }
            }
        }
    }

    let verdicts = LiftVerdicts {
        omega_compatible,
        theta_cone_valid,
        mu_matches_pasting,
        sigma_cells_identity,
        algebra_axioms,
        projections_valid,
        strict_projections,
        initials_strict,
        projection_cells_algebraic,
        one_dimensional,
        two_dimensional,
    };
    Ok(LiftResult {
        monad: diagram.monad.clone(),
        omega,
        base,
        algebra,
        projections,
        theta_cone,
        mu_cone,
        initials,
        verdicts,
    })
}

/// Checks that the distinguished projections jointly detect Ω'-ness: every
/// enumerated weak morphism into the lifted algebra whose composites with
/// all π_{A0} have cells in Ω' has its own cell in Ω'.
pub fn detection_check(lift: &LiftResult, omega_prime: CellClass, sources: &[Algebra]) -> bool {
    let t = lift.monad.as_ref();
    for source in sources {
        for z in enumerate_omega_morphisms(t, source, &lift.algebra, lift.omega) {
            let composites_in = lift.initials.iter().all(|&a0| {
                let composite = OmegaMorphism::compose(t, &lift.projections[a0], &z);
                omega_prime.contains(&composite.cell)
            });
            if composites_in && !omega_prime.contains(&z.cell) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::shapes;
    use crate::two_cat::TwoFunctorBuilder;

    fn pointed() -> Arc<dyn Monad2> {
        monad_by_name("pointed").unwrap()
    }

    #[test]
    fn builtin_monads_satisfy_their_laws() {
        let cats = samples::default_vertices();
        let two = Arc::new(samples::walking_arrow());
        let one = Arc::new(samples::terminal());
        let functors = vec![
            Functor::identity(&two),
            samples::const_functor(&one, &two, 0),
            samples::const_functor(&two, &two, 1),
        ];
        let naturals = vec![
            NatTrans::identity(&Functor::identity(&two)),
            enumerate_naturals(&samples::const_functor(&two, &two, 0), &samples::const_functor(&two, &two, 1))
                .into_iter()
                .next()
                .unwrap(),
        ];
        for t in builtin_monads() {
            assert!(
                validate_monad(t.as_ref(), &cats, &functors, &naturals).is_empty(),
                "{} monad fails its laws",
                t.name()
            );
        }
    }

    #[test]
    fn pointed_algebras_on_walking_arrow_are_basepoints() {
        let two = Arc::new(samples::walking_arrow());
        let algs = enumerate_algebras(pointed().as_ref(), &two);
        assert_eq!(algs.len(), 2);
        for (i, alg) in algs.iter().enumerate() {
            assert_eq!(alg.structure.ob(2), i);
        }
    }

    #[test]
    fn identity_monad_morphism_classes_collapse() {
        let t = monad_by_name("identity").unwrap();
        let two = Arc::new(samples::walking_arrow());
        let alg = Algebra {
            carrier: two.clone(),
            structure: Functor::identity(&two),
        };
        let lax = enumerate_omega_morphisms(t.as_ref(), &alg, &alg, CellClass::Lax);
        let strict = enumerate_omega_morphisms(t.as_ref(), &alg, &alg, CellClass::Strict);
        assert_eq!(lax.len(), strict.len());
        assert!(lax.iter().all(|m| m.class() == CellClass::Strict));
    }

    #[test]
    fn unit_coherence_cuts_structural_cell_candidates() {
        // On the walking idempotent there are naturals a∘T(id) ⇒ a whose
        // component at the original object is t rather than the identity;
        // the unit coherence rejects exactly those.
        let t = pointed();
        let m = Arc::new(samples::walking_idempotent());
        assert!(m.validate().is_empty());
        let alg = Algebra::pointed(&m, 0);
        assert!(validate_algebra(t.as_ref(), &alg).is_empty());
        let id = Functor::identity(&m);
        let dom = Functor::compose(&alg.structure, &t.on_functor(&id));
        let cod = Functor::compose(&id, &alg.structure);
        let candidates = enumerate_naturals(&dom, &cod);
        assert_eq!(candidates.len(), 4, "two endo choices at e and at pt");
        let mut valid = 0;
        let mut unit_failures = 0;
        for cell in candidates {
            let morphism = OmegaMorphism {
                dom: alg.clone(),
                cod: alg.clone(),
                functor: id.clone(),
                cell,
            };
            let diags = validate_omega_morphism(t.as_ref(), &morphism, CellClass::Lax);
            if diags.is_empty() {
                valid += 1;
            } else if diags.iter().any(|v| v.rule == "morphism-unit-coherence") {
                unit_failures += 1;
            }
        }
        assert_eq!(valid, 2, "identity and t at the added point survive");
        assert_eq!(unit_failures, 2, "t at the original object fails the unit coherence");
        // For the built-in coproduct-style monads the multiplication
        // coherence is implied by the unit one plus naturality, so every
        // unit-coherent candidate above already validated; the equation is
        // still checked on every morphism and guards the monad action
        // itself.
        assert_eq!(
            enumerate_omega_morphisms(t.as_ref(), &alg, &alg, CellClass::Lax)
                .into_iter()
                .filter(|m| m.functor.is_identity())
                .count(),
            2
        );
    }

    #[test]
    fn basepoint_mismatch_needs_a_lax_cell() {
        let t = pointed();
        let two = Arc::new(samples::walking_arrow());
        let bp1 = Algebra::pointed(&two, 1);
        let bp0 = Algebra::pointed(&two, 0);
        // Identity carrier functor from basepoint 1 to basepoint 0: the cell
        // at the added point must be an arrow 0 -> 1, which is u.
        let id = Functor::identity(&two);
        let tf = t.on_functor(&id);
        let dom = Functor::compose(&bp0.structure, &tf);
        let cod = Functor::compose(&id, &bp1.structure);
        let cells = enumerate_naturals(&dom, &cod);
        assert_eq!(cells.len(), 1);
        let m = OmegaMorphism {
            dom: bp1.clone(),
            cod: bp0.clone(),
            functor: id,
            cell: cells.into_iter().next().unwrap(),
        };
        assert!(validate_omega_morphism(t.as_ref(), &m, CellClass::Lax).is_empty());
        assert_eq!(m.class(), CellClass::Lax);
        let diags = validate_omega_morphism(t.as_ref(), &m, CellClass::Pseudo);
        assert!(diags.iter().any(|v| v.rule == "morphism-class"));
    }

    fn pseudo_inserter_diagram() -> AlgebraDiagram {
        // Both carriers are the walking iso; f is the identity morphism and
        // g is the swap with a genuinely non-identity invertible cell.
        let t = pointed();
        let iso = Arc::new(samples::walking_iso());
        let (shape, sigma) = shapes::inserter_shape();
        let shape = Arc::new(shape);
        let a = Algebra::pointed(&iso, 0);
        let b = Algebra::pointed(&iso, 1);
        let id = Functor::identity(&iso);
        // f : (iso, x) -> (iso, y) via the identity carrier with cell i.
        let tf = t.on_functor(&id);
        let f_cells = enumerate_naturals(&Functor::compose(&b.structure, &tf), &Functor::compose(&id, &a.structure));
        let f_cell = f_cells
            .into_iter()
            .find(|c| {
                let m = OmegaMorphism {
                    dom: a.clone(),
                    cod: b.clone(),
                    functor: id.clone(),
                    cell: c.clone(),
                };
                validate_omega_morphism(t.as_ref(), &m, CellClass::Pseudo).is_empty()
            })
            .expect("a pseudo cell exists");
        let f_m = OmegaMorphism {
            dom: a.clone(),
            cod: b.clone(),
            functor: id.clone(),
            cell: f_cell,
        };
        assert!(!f_m.cell.is_identity());
        let g_m = f_m.clone();
        let morphisms = vec![OmegaMorphism::identity(&a), OmegaMorphism::identity(&b), f_m, g_m];
        let cells = identity_cells(&shape, &morphisms);
        AlgebraDiagram {
            monad: t,
            shape,
            sigma,
            algebras: vec![a, b],
            morphisms,
            cells,
        }
    }

    /// Images of the shape's (identity-only) 2-cells.
    fn identity_cells(shape: &Arc<TwoCategory>, morphisms: &[OmegaMorphism]) -> Vec<NatTrans> {
        shape
            .two_cells
            .iter()
            .map(|c| NatTrans::identity(&morphisms[c.src].functor))
            .collect()
    }

    #[test]
    fn pseudo_lift_on_inserter_diagram() {
        let diag = pseudo_inserter_diagram();
        let vertices = vec![Arc::new(samples::terminal())];
        let lift = lift_limit(&diag, CellClass::Pseudo, &vertices).unwrap();
        assert!(lift.verdicts.all_pass(), "verdicts: {:?}", lift.verdicts);
        assert!(lift.verdicts.strict_projections.contains(&"A".to_string()));
        assert!(detection_check(&lift, CellClass::Strict, &enumerate_algebras(lift.monad.as_ref(), &Arc::new(samples::terminal()))));
    }

    #[test]
    fn trivial_identity_monad_lift() {
        let (shape, sigma) = shapes::inserter_shape();
        let one = Arc::new(samples::terminal());
        let two = Arc::new(samples::walking_arrow());
        let diag = Arc::new(
            TwoFunctorBuilder::new(Arc::new(shape))
                .on_object("A", one.clone())
                .on_object("B", two.clone())
                .on_one_cell("f", samples::const_functor(&one, &two, 0))
                .on_one_cell("g", samples::const_functor(&one, &two, 1))
                .build()
                .unwrap(),
        );
        let alg_diag = AlgebraDiagram::trivial(&diag, &sigma);
        let vertices = samples::default_vertices();
        let lift = lift_limit(&alg_diag, CellClass::Strict, &vertices).unwrap();
        assert!(lift.verdicts.all_pass(), "verdicts: {:?}", lift.verdicts);
        // Every projection is strict under the identity monad.
        assert_eq!(lift.verdicts.strict_projections.len(), 2);
    }

    fn lax_inserter_diagram() -> AlgebraDiagram {
        // Carriers on the walking arrow with basepoint 0; f = Id strict and
        // g = const 1 with a genuinely lax (non-invertible) cell at pt.
        let t = pointed();
        let two = Arc::new(samples::walking_arrow());
        let (shape, sigma) = shapes::inserter_shape();
        let shape = Arc::new(shape);
        let a = Algebra::pointed(&two, 0);
        let b = Algebra::pointed(&two, 0);
        let f_m = OmegaMorphism::strict(t.as_ref(), &a, &b, Functor::identity(&two));
        let g_fun = samples::const_functor(&two, &two, 1);
        let tg = t.on_functor(&g_fun);
        let g_cells = enumerate_naturals(&Functor::compose(&b.structure, &tg), &Functor::compose(&g_fun, &a.structure));
        let g_cell = g_cells
            .into_iter()
            .find(|c| !c.is_invertible())
            .expect("the lax cell with u at pt exists");
        let g_m = OmegaMorphism {
            dom: a.clone(),
            cod: b.clone(),
            functor: g_fun,
            cell: g_cell,
        };
        let morphisms = vec![OmegaMorphism::identity(&a), OmegaMorphism::identity(&b), f_m, g_m];
        let cells = identity_cells(&shape, &morphisms);
        AlgebraDiagram {
            monad: t,
            shape,
            sigma,
            algebras: vec![a, b],
            morphisms,
            cells,
        }
    }

    #[test]
    fn lax_lift_on_inserter_diagram() {
        let diag = lax_inserter_diagram();
        let valid = diag.validate(CellClass::Lax);
        assert!(valid.is_empty(), "{valid:?}");
        let vertices = vec![Arc::new(samples::terminal()), Arc::new(samples::walking_arrow())];
        let lift = lift_limit(&diag, CellClass::Lax, &vertices).unwrap();
        assert!(lift.verdicts.all_pass(), "verdicts: {:?}", lift.verdicts);
        // The basepoint of the lifted algebra projects to the basepoints.
        let pt = lift.base.limit.object_count();
        let bp = lift.algebra.structure.ob(pt);
        assert_eq!(lift.base.projections[0].ob(bp), 0);

        let sources: Vec<Algebra> = samples::default_vertices()
            .iter()
            .flat_map(|e| enumerate_algebras(lift.monad.as_ref(), e))
            .collect();
        assert!(detection_check(&lift, CellClass::Strict, &sources));
        assert!(detection_check(&lift, CellClass::Pseudo, &sources));
        // Detecting lax-ness is vacuous.
        assert!(detection_check(&lift, CellClass::Lax, &sources));
    }

    #[test]
    fn non_invertible_canonical_cell_is_rejected() {
        let t = pointed();
        let two = Arc::new(samples::walking_arrow());
        let (shape, sigma) = shapes::inserter_shape();
        let shape = Arc::new(shape);
        let a = Algebra::pointed(&two, 0);
        let b = Algebra::pointed(&two, 0);
        // Make the marked arrow f itself carry the non-invertible cell.
        let f_fun = samples::const_functor(&two, &two, 1);
        let tf = t.on_functor(&f_fun);
        let f_cell = enumerate_naturals(&Functor::compose(&b.structure, &tf), &Functor::compose(&f_fun, &a.structure))
            .into_iter()
            .find(|c| !c.is_invertible())
            .unwrap();
        let f_m = OmegaMorphism {
            dom: a.clone(),
            cod: b.clone(),
            functor: f_fun.clone(),
            cell: f_cell,
        };
        let morphisms = vec![OmegaMorphism::identity(&a), OmegaMorphism::identity(&b), f_m.clone(), f_m];
        let cells = identity_cells(&shape, &morphisms);
        let diag = AlgebraDiagram {
            monad: t,
            shape,
            sigma,
            algebras: vec![a, b],
            morphisms,
            cells,
        };
        let vertices = vec![Arc::new(samples::terminal())];
        match lift_limit(&diag, CellClass::Lax, &vertices) {
            Err(LiftError::NonInvertibleCanonical { object }) => assert_eq!(object, "B"),
            other => panic!("expected NonInvertibleCanonical, got {:?}", other.map(|_| ())),
        }
    }
}
