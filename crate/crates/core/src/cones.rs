//! Lax and op-lax cones over finite-category-valued 2-functors, their
//! modifications, cone categories, sigma-strict (op)limits computed by
//! enumeration, and machine verification of the defining universal property.
//!
//! A lax cone over `F` with vertex `E` is a family of legs `θ_A : E → FA`
//! and structural 2-cells `θ_f : Ff θ_A ⇒ θ_B` (op-lax reverses them),
//! subject to
//!
//! - LC0: `θ_id = id`,
//! - LC1: `θ_{gf} = θ_g ∘ Fg θ_f`,
//! - LC2: `θ_f = θ_g ∘ Fγ θ_A` for every 2-cell `γ : f ⇒ g`,
//!
//! and a sigma-strict cone additionally has identity structural cells over
//! every marked arrow. The limit is the category of sigma-strict cones with
//! terminal vertex; its universal property is an isomorphism of categories
//! which [`verify_universal_property`] checks literally.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::diagnostics::{violation, Diagnostics};
use crate::fincat::{
    cartesian, enumerate_functors, enumerate_naturals, iso_check, Arrow, CellClass, FinCategory, Functor, NatTrans,
};
use crate::samples;
use crate::two_cat::{pie_analysis, PieStructure, SigmaFamily, TwoFunctor};

/// Direction of the structural 2-cells of a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Lax,
    Oplax,
}

#[derive(Debug, Error)]
pub enum ConeError {
    #[error("not a valid cone: {0}")]
    InvalidCone(String),
    #[error("modifying 2-cell at `{0}` is not invertible")]
    NonInvertibleComponent(String),
    #[error("cone modification requires the op-lax orientation")]
    WrongOrientation,
    #[error("cone does not belong to the limit's diagram")]
    DiagramMismatch,
}

/// A lax or op-lax cone.
#[derive(Debug, Clone, PartialEq)]
pub struct LaxCone {
    pub orientation: Orientation,
    pub vertex: Arc<FinCategory>,
    pub diagram: Arc<TwoFunctor>,
    /// One leg per shape object.
    pub legs: Vec<Functor>,
    /// One structural cell per shape 1-cell.
    pub structural: Vec<NatTrans>,
}

impl LaxCone {
    /// The functors a structural cell over `f : A -> B` must run between.
    fn structural_ends(&self, f: usize) -> (Functor, Functor) {
        let shape = &self.diagram.shape;
        let (a, b) = (shape.one_cells[f].src, shape.one_cells[f].tgt);
        let ff_leg = Functor::compose(self.diagram.one(f), &self.legs[a]);
        match self.orientation {
            Orientation::Lax => (ff_leg, self.legs[b].clone()),
            Orientation::Oplax => (self.legs[b].clone(), ff_leg),
        }
    }

    /// Checks well-formedness and the cone axioms LC0, LC1 and LC2.
    pub fn validate(&self) -> Diagnostics {
        let mut out = Vec::new();
        let shape = &self.diagram.shape;
        if self.legs.len() != shape.objects.len() || self.structural.len() != shape.one_cells.len() {
            out.push(violation("cone-tables", "one leg per object and one cell per 1-cell required"));
            return out;
        }
        for (a, leg) in self.legs.iter().enumerate() {
            if leg.dom != self.vertex || leg.cod != *self.diagram.cat(a) {
                out.push(violation("cone-leg-endpoints", format!("leg at `{}` is not E -> FA", shape.objects[a])));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (f, cell) in self.structural.iter().enumerate() {
            let (dom, cod) = self.structural_ends(f);
            if cell.dom != dom || cell.cod != cod {
                out.push(violation(
                    "cone-cell-endpoints",
                    format!("structural cell over `{}` has wrong endpoints", shape.one_cells[f].id),
                ));
            } else {
                for v in cell.validate() {
                    out.push(violation("cone-cell-invalid", format!("over `{}`: {}", shape.one_cells[f].id, v.detail)));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for &i in &shape.one_identity {
            if !self.structural[i].is_identity() {
                out.push(violation("LC0", format!("structural cell over `{}` is not the identity", shape.one_cells[i].id)));
            }
        }
        for (&(g, f), &gf) in &shape.one_compose {
            if self.structural[gf] != self.composite_cell(g, f) {
                out.push(violation(
                    "LC1",
                    format!("structural cell over `{}` differs from the composite", shape.one_cells[gf].id),
                ));
            }
        }
        for (c, cell) in shape.two_cells.iter().enumerate() {
            if !self.lc2_holds(c) {
                out.push(violation("LC2", format!("fails at 2-cell `{}`", cell.id)));
            }
        }
        out
    }

    /// The structural cell over `g∘f` dictated by LC1.
    pub fn composite_cell(&self, g: usize, f: usize) -> NatTrans {
        let fg = self.diagram.one(g);
        match self.orientation {
            Orientation::Lax => NatTrans::vcomp(&self.structural[g], &NatTrans::post_whisker(fg, &self.structural[f])),
            Orientation::Oplax => NatTrans::vcomp(&NatTrans::post_whisker(fg, &self.structural[f]), &self.structural[g]),
        }
    }

    fn lc2_holds(&self, c: usize) -> bool {
        let shape = &self.diagram.shape;
        let (f, g) = (shape.two_cells[c].src, shape.two_cells[c].tgt);
        let a = shape.cell_dom_obj(c);
        let whisk = NatTrans::pre_whisker(self.diagram.two(c), &self.legs[a]);
        match self.orientation {
            // θ_f = θ_g ∘ (Fγ ⋆ θ_A)
            Orientation::Lax => self.structural[f] == NatTrans::vcomp(&self.structural[g], &whisk),
            // θ_g = (Fγ ⋆ θ_A) ∘ θ_f
            Orientation::Oplax => self.structural[g] == NatTrans::vcomp(&whisk, &self.structural[f]),
        }
    }

    /// Restricts the cone along `u : E' -> E`.
    pub fn restrict_along(&self, u: &Functor) -> LaxCone {
        assert_eq!(u.cod, self.vertex);
        LaxCone {
            orientation: self.orientation,
            vertex: u.dom.clone(),
            diagram: self.diagram.clone(),
            legs: self.legs.iter().map(|leg| Functor::compose(leg, u)).collect(),
            structural: self.structural.iter().map(|cell| NatTrans::pre_whisker(cell, u)).collect(),
        }
    }

    /// Evaluates the cone at an object of its vertex, giving a cone with
    /// terminal vertex.
    pub fn evaluate(&self, one: &Arc<FinCategory>, e: usize) -> LaxCone {
        let legs: Vec<Functor> = self
            .legs
            .iter()
            .enumerate()
            .map(|(a, leg)| samples::const_functor(one, self.diagram.cat(a), leg.ob(e)))
            .collect();
        let structural = self
            .structural
            .iter()
            .enumerate()
            .map(|(f, cell)| {
                let shape = &self.diagram.shape;
                let (a, b) = (shape.one_cells[f].src, shape.one_cells[f].tgt);
                let ff_leg = Functor::compose(self.diagram.one(f), &legs[a]);
                let (dom, cod) = match self.orientation {
                    Orientation::Lax => (ff_leg, legs[b].clone()),
                    Orientation::Oplax => (legs[b].clone(), ff_leg),
                };
                NatTrans {
                    dom,
                    cod,
                    components: vec![cell.components[e]],
                }
            })
            .collect();
        LaxCone {
            orientation: self.orientation,
            vertex: one.clone(),
            diagram: self.diagram.clone(),
            legs,
            structural,
        }
    }

    /// Evaluates the cone at an arrow of its vertex, giving the pointwise
    /// modification between the two evaluations.
    pub fn evaluate_arrow(&self, one: &Arc<FinCategory>, w: usize) -> Modification {
        let (s, t) = (self.vertex.src(w), self.vertex.tgt(w));
        let dom = self.evaluate(one, s);
        let cod = self.evaluate(one, t);
        let components = self
            .legs
            .iter()
            .enumerate()
            .map(|(a, leg)| NatTrans {
                dom: dom.legs[a].clone(),
                cod: cod.legs[a].clone(),
                components: vec![leg.arr(w)],
            })
            .collect();
        Modification {
            dom,
            cod,
            components,
        }
    }
}

/// True iff the structural cell over every marked arrow is an identity.
pub fn is_sigma_s_cone(c: &LaxCone, sigma: &SigmaFamily) -> bool {
    sigma.members.iter().all(|&f| c.structural[f].is_identity())
}

/// A morphism of cones: one 2-cell per shape object, subject to LCM.
#[derive(Debug, Clone, PartialEq)]
pub struct Modification {
    pub dom: LaxCone,
    pub cod: LaxCone,
    pub components: Vec<NatTrans>,
}

impl Modification {
    pub fn validate(&self) -> Diagnostics {
        let mut out = Vec::new();
        if self.dom.vertex != self.cod.vertex
            || self.dom.orientation != self.cod.orientation
            || self.dom.diagram != self.cod.diagram
        {
            out.push(violation("modification-sides", "dom and cod cones must share vertex, orientation and diagram"));
            return out;
        }
        let shape = &self.dom.diagram.shape;
        if self.components.len() != shape.objects.len() {
            out.push(violation("modification-components", "one component per shape object required"));
            return out;
        }
        for (a, n) in self.components.iter().enumerate() {
            if n.dom != self.dom.legs[a] || n.cod != self.cod.legs[a] {
                out.push(violation(
                    "modification-component-endpoints",
                    format!("component at `{}` is not θ_A ⇒ θ'_A", shape.objects[a]),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (f, cell) in shape.one_cells.iter().enumerate() {
            if !lcm_holds(self, f) {
                out.push(violation("LCM", format!("fails over 1-cell `{}`", cell.id)));
            }
        }
        out
    }

    pub fn evaluate(&self, one: &Arc<FinCategory>, e: usize) -> Modification {
        let dom = self.dom.evaluate(one, e);
        let cod = self.cod.evaluate(one, e);
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(a, n)| NatTrans {
                dom: dom.legs[a].clone(),
                cod: cod.legs[a].clone(),
                components: vec![n.components[e]],
            })
            .collect();
        Modification {
            dom,
            cod,
            components,
        }
    }
}

fn lcm_holds(m: &Modification, f: usize) -> bool {
    let shape = &m.dom.diagram.shape;
    let (a, b) = (shape.one_cells[f].src, shape.one_cells[f].tgt);
    let ff_alpha = NatTrans::post_whisker(m.dom.diagram.one(f), &m.components[a]);
    match m.dom.orientation {
        // θ'_f ∘ (Ff ⋆ α_A) = α_B ∘ θ_f
        Orientation::Lax => {
            NatTrans::vcomp(&m.cod.structural[f], &ff_alpha) == NatTrans::vcomp(&m.components[b], &m.dom.structural[f])
        }
        // (Ff ⋆ α_A) ∘ θ_f = θ'_f ∘ α_B
        Orientation::Oplax => {
            NatTrans::vcomp(&ff_alpha, &m.dom.structural[f]) == NatTrans::vcomp(&m.cod.structural[f], &m.components[b])
        }
    }
}

type ConeKey = (Vec<(Vec<usize>, Vec<usize>)>, Vec<Vec<usize>>);

fn cone_key(c: &LaxCone) -> ConeKey {
    (
        c.legs.iter().map(|l| (l.on_objects.clone(), l.on_arrows.clone())).collect(),
        c.structural.iter().map(|n| n.components.clone()).collect(),
    )
}

/// The category of (sigma-strict) cones with a fixed vertex: objects are
/// cones, arrows are modifications, composition is componentwise vertical.
#[derive(Debug, Clone)]
pub struct ConeCategory {
    pub vertex: Arc<FinCategory>,
    pub diagram: Arc<TwoFunctor>,
    pub orientation: Orientation,
    pub category: Arc<FinCategory>,
    pub cones: Vec<LaxCone>,
    pub modifications: Vec<Modification>,
    cone_lookup: BTreeMap<ConeKey, usize>,
    mod_lookup: BTreeMap<(usize, usize, Vec<Vec<usize>>), usize>,
}

impl ConeCategory {
    pub fn cone_index(&self, c: &LaxCone) -> Option<usize> {
        self.cone_lookup.get(&cone_key(c)).copied()
    }

    pub fn modification_index(&self, m: &Modification) -> Option<usize> {
        let d = self.cone_index(&m.dom)?;
        let c = self.cone_index(&m.cod)?;
        let comps = m.components.iter().map(|n| n.components.clone()).collect();
        self.mod_lookup.get(&(d, c, comps)).copied()
    }
}

/// Enumerates every (sigma-strict) cone with vertex `E` and every
/// modification between them, in declaration-determined order.
pub fn enumerate_cones(
    vertex: &Arc<FinCategory>,
    diagram: &Arc<TwoFunctor>,
    sigma: &SigmaFamily,
    sigma_s_only: bool,
    orientation: Orientation,
) -> ConeCategory {
    let shape = &diagram.shape;
    let leg_choices: Vec<Vec<Functor>> = (0..shape.objects.len())
        .map(|a| enumerate_functors(vertex, diagram.cat(a)))
        .collect();
    let mut cones: Vec<LaxCone> = Vec::new();
    'legs: for legs in cartesian(leg_choices) {
        // Structural cells: identities are forced over identity 1-cells
        // (LC0) and over marked arrows (σsC); the rest are enumerated.
        let mut forced: Vec<Option<NatTrans>> = vec![None; shape.one_cells.len()];
        let mut free: Vec<usize> = Vec::new();
        let template = LaxCone {
            orientation,
            vertex: vertex.clone(),
            diagram: diagram.clone(),
            legs,
            structural: Vec::new(),
        };
        for (f, slot) in forced.iter_mut().enumerate() {
            let force_identity = shape.is_identity_one(f) || (sigma_s_only && sigma.contains(f));
            if force_identity {
                let (dom, cod) = template.structural_ends(f);
                if dom != cod {
                    continue 'legs;
                }
                *slot = Some(NatTrans::identity(&dom));
            } else {
                free.push(f);
            }
        }
        let free_choices: Vec<Vec<NatTrans>> = free
            .iter()
            .map(|&f| {
                let (dom, cod) = template.structural_ends(f);
                enumerate_naturals(&dom, &cod)
            })
            .collect();
        for choice in cartesian(free_choices) {
            let mut structural = forced.clone();
            for (k, &f) in free.iter().enumerate() {
                structural[f] = Some(choice[k].clone());
            }
            let cone = LaxCone {
                structural: structural.into_iter().map(Option::unwrap).collect(),
                ..template.clone()
            };
            if cone_axioms_hold(&cone) {
                cones.push(cone);
            }
        }
    }

    let mut cone_lookup = BTreeMap::new();
    for (i, c) in cones.iter().enumerate() {
        cone_lookup.insert(cone_key(c), i);
    }

    let mut modifications: Vec<Modification> = Vec::new();
    let mut mod_lookup = BTreeMap::new();
    let mut arrows = Vec::new();
    for (i, from) in cones.iter().enumerate() {
        for (j, to) in cones.iter().enumerate() {
            let comp_choices: Vec<Vec<NatTrans>> = (0..shape.objects.len())
                .map(|a| enumerate_naturals(&from.legs[a], &to.legs[a]))
                .collect();
            if comp_choices.iter().any(|v| v.is_empty()) {
                continue;
            }
            for components in cartesian(comp_choices) {
                let m = Modification {
                    dom: from.clone(),
                    cod: to.clone(),
                    components,
                };
                if (0..shape.one_cells.len()).all(|f| lcm_holds(&m, f)) {
                    let ix = modifications.len();
                    let comps = m.components.iter().map(|n| n.components.clone()).collect::<Vec<_>>();
                    mod_lookup.insert((i, j, comps), ix);
                    arrows.push(Arrow {
                        id: format!("m{ix}"),
                        src: i,
                        tgt: j,
                    });
                    modifications.push(m);
                }
            }
        }
    }

    let identity: Vec<usize> = cones
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let comps: Vec<Vec<usize>> = c
                .legs
                .iter()
                .map(|leg| leg.on_objects.iter().map(|&o| leg.cod.identity[o]).collect())
                .collect();
            *mod_lookup
                .get(&(i, i, comps))
                .expect("identity modification must be enumerated")
        })
        .collect();
    let mut compose = BTreeMap::new();
    for (k2, m2) in modifications.iter().enumerate() {
        for (k1, m1) in modifications.iter().enumerate() {
            if arrows[k1].tgt != arrows[k2].src {
                continue;
            }
            let comps: Vec<Vec<usize>> = m1
                .components
                .iter()
                .zip(&m2.components)
                .map(|(a, b)| NatTrans::vcomp(b, a).components)
                .collect();
            let ix = *mod_lookup
                .get(&(arrows[k1].src, arrows[k2].tgt, comps))
                .expect("modifications are closed under composition");
            compose.insert((k2, k1), ix);
        }
    }
    let category = Arc::new(FinCategory {
        objects: (0..cones.len()).map(|i| format!("c{i}")).collect(),
        arrows,
        identity,
        compose,
    });
    ConeCategory {
        vertex: vertex.clone(),
        diagram: diagram.clone(),
        orientation,
        category,
        cones,
        modifications,
        cone_lookup,
        mod_lookup,
    }
}

fn cone_axioms_hold(c: &LaxCone) -> bool {
    let shape = &c.diagram.shape;
    for (&(g, f), &gf) in &shape.one_compose {
        if c.structural[gf] != c.composite_cell(g, f) {
            return false;
        }
    }
    (0..shape.two_cells.len()).all(|cc| c.lc2_holds(cc))
}

/// The computed sigma-strict (op)limit: the cone category over the terminal
/// vertex, its projections and structural cells, and the PIE witness when
/// the indexing pair is PIE.
#[derive(Debug, Clone)]
pub struct LimitResult {
    pub orientation: Orientation,
    pub diagram: Arc<TwoFunctor>,
    pub sigma: SigmaFamily,
    pub cones: ConeCategory,
    pub limit: Arc<FinCategory>,
    pub projections: Vec<Functor>,
    pub structural: Vec<NatTrans>,
    pub pie: Option<PieStructure>,
}

impl LimitResult {
    /// The universal cone, with vertex the limit itself.
    pub fn universal_cone(&self) -> LaxCone {
        LaxCone {
            orientation: self.orientation,
            vertex: self.limit.clone(),
            diagram: self.diagram.clone(),
            legs: self.projections.clone(),
            structural: self.structural.clone(),
        }
    }
}

/// Computes the sigma-strict (op)limit of `F` directly: the limit category
/// is the category of sigma-strict cones with terminal vertex, projections
/// evaluate a cone, and structural cells collect the cone cells pointwise.
pub fn sigma_s_limit(diagram: &Arc<TwoFunctor>, sigma: &SigmaFamily, orientation: Orientation) -> LimitResult {
    let one = Arc::new(samples::terminal());
    let cones = enumerate_cones(&one, diagram, sigma, true, orientation);
    let shape = &diagram.shape;
    let limit = cones.category.clone();
    let projections: Vec<Functor> = (0..shape.objects.len())
        .map(|a| Functor {
            dom: limit.clone(),
            cod: diagram.cat(a).clone(),
            on_objects: cones.cones.iter().map(|c| c.legs[a].ob(0)).collect(),
            on_arrows: cones.modifications.iter().map(|m| m.components[a].components[0]).collect(),
        })
        .collect();
    let structural: Vec<NatTrans> = (0..shape.one_cells.len())
        .map(|f| {
            let (a, b) = (shape.one_cells[f].src, shape.one_cells[f].tgt);
            let ff_pi = Functor::compose(diagram.one(f), &projections[a]);
            let (dom, cod) = match orientation {
                Orientation::Lax => (ff_pi, projections[b].clone()),
                Orientation::Oplax => (projections[b].clone(), ff_pi),
            };
            NatTrans {
                dom,
                cod,
                components: cones.cones.iter().map(|c| c.structural[f].components[0]).collect(),
            }
        })
        .collect();
    let pie = pie_analysis(shape, sigma).ok();
    LimitResult {
        orientation,
        diagram: diagram.clone(),
        sigma: sigma.clone(),
        cones,
        limit,
        projections,
        structural,
        pie,
    }
}

/// Factors a sigma-strict cone through the limit: the unique functor
/// `E -> L` with `π ∘ φ = c`, computed by evaluating the cone pointwise.
pub fn factor_cone(lim: &LimitResult, c: &LaxCone) -> Result<Functor, ConeError> {
    if c.orientation != lim.orientation || c.diagram != lim.diagram {
        return Err(ConeError::DiagramMismatch);
    }
    let one = &lim.cones.vertex;
    let on_objects = (0..c.vertex.object_count())
        .map(|e| {
            lim.cones
                .cone_index(&c.evaluate(one, e))
                .ok_or_else(|| ConeError::InvalidCone(format!("evaluation at `{}` is not a limit object", c.vertex.objects[e])))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let on_arrows = (0..c.vertex.arrow_count())
        .map(|w| {
            lim.cones
                .modification_index(&c.evaluate_arrow(one, w))
                .ok_or_else(|| ConeError::InvalidCone(format!("evaluation at arrow `{}` is not a limit arrow", c.vertex.arrows[w].id)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Functor {
        dom: c.vertex.clone(),
        cod: lim.limit.clone(),
        on_objects,
        on_arrows,
    })
}

/// Post-composition with the universal cone, on functors into the limit.
pub fn post_compose_functor(lim: &LimitResult, u: &Functor) -> LaxCone {
    lim.universal_cone().restrict_along(u)
}

/// Post-composition with the universal cone, on naturals between functors
/// into the limit.
pub fn post_compose_natural(lim: &LimitResult, n: &NatTrans) -> Modification {
    Modification {
        dom: post_compose_functor(lim, &n.dom),
        cod: post_compose_functor(lim, &n.cod),
        components: lim.projections.iter().map(|p| NatTrans::post_whisker(p, n)).collect(),
    }
}

/// Builds the hom-category `B(E, L)` with objects all functors `E -> L` and
/// arrows all naturals between them.
pub fn hom_category(e: &Arc<FinCategory>, l: &Arc<FinCategory>) -> (Arc<FinCategory>, Vec<Functor>, Vec<NatTrans>) {
    let functors = enumerate_functors(e, l);
    let mut naturals = Vec::new();
    let mut arrows = Vec::new();
    let mut lookup = BTreeMap::new();
    for (i, u) in functors.iter().enumerate() {
        for (j, v) in functors.iter().enumerate() {
            for n in enumerate_naturals(u, v) {
                let ix = naturals.len();
                lookup.insert((i, j, n.components.clone()), ix);
                arrows.push(Arrow {
                    id: format!("n{ix}"),
                    src: i,
                    tgt: j,
                });
                naturals.push(n);
            }
        }
    }
    let identity: Vec<usize> = functors
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let id = NatTrans::identity(u);
            lookup[&(i, i, id.components)]
        })
        .collect();
    let mut compose = BTreeMap::new();
    for (k2, n2) in naturals.iter().enumerate() {
        for (k1, n1) in naturals.iter().enumerate() {
            if arrows[k1].tgt != arrows[k2].src {
                continue;
            }
            let v = NatTrans::vcomp(n2, n1);
            let ix = lookup[&(arrows[k1].src, arrows[k2].tgt, v.components)];
            compose.insert((k2, k1), ix);
        }
    }
    let category = Arc::new(FinCategory {
        objects: (0..functors.len()).map(|i| format!("F{i}")).collect(),
        arrows,
        identity,
        compose,
    });
    (category, functors, naturals)
}

/// Verifies the defining isomorphism `B(E, L) ≅ Cones(E, F)` literally: the
/// post-composition functor is built out of full enumerations of both sides
/// and then checked to be an isomorphism of categories.
pub fn verify_universal_property(lim: &LimitResult, vertex: &Arc<FinCategory>) -> bool {
    let (hom_cat, functors, naturals) = hom_category(vertex, &lim.limit);
    let cc = enumerate_cones(vertex, &lim.diagram, &lim.sigma, true, lim.orientation);
    let mut on_objects = Vec::with_capacity(functors.len());
    for u in &functors {
        match cc.cone_index(&post_compose_functor(lim, u)) {
            Some(ix) => on_objects.push(ix),
            None => return false,
        }
    }
    let mut on_arrows = Vec::with_capacity(naturals.len());
    for n in &naturals {
        match cc.modification_index(&post_compose_natural(lim, n)) {
            Some(ix) => on_arrows.push(ix),
            None => return false,
        }
    }
    let phi = Functor {
        dom: hom_cat,
        cod: cc.category.clone(),
        on_objects,
        on_arrows,
    };
    phi.validate().is_empty() && iso_check(&phi)
}

/// Modifies an op-lax cone along a family of invertible 2-cells
/// `α_A : θ_A ⇒ θ'_A`: the unique op-lax structure on the new legs making
/// the family a modification, namely `θ'_f = Ff α_A ∘ θ_f ∘ α_B⁻¹`.
pub fn modify_cone(
    cone: &LaxCone,
    new_legs: &[Functor],
    alphas: &[NatTrans],
) -> Result<(LaxCone, Modification), ConeError> {
    if cone.orientation != Orientation::Oplax {
        return Err(ConeError::WrongOrientation);
    }
    let shape = &cone.diagram.shape;
    assert_eq!(new_legs.len(), cone.legs.len());
    assert_eq!(alphas.len(), cone.legs.len());
    for (a, alpha) in alphas.iter().enumerate() {
        if alpha.dom != cone.legs[a] || alpha.cod != new_legs[a] {
            return Err(ConeError::InvalidCone(format!(
                "modifying 2-cell at `{}` is not θ_A ⇒ θ'_A",
                shape.objects[a]
            )));
        }
        if !alpha.is_invertible() {
            return Err(ConeError::NonInvertibleComponent(shape.objects[a].clone()));
        }
    }
    let inverses: Vec<NatTrans> = alphas.iter().map(|a| a.inverse().expect("checked invertible")).collect();
    let structural: Vec<NatTrans> = (0..shape.one_cells.len())
        .map(|f| {
            let (a, b) = (shape.one_cells[f].src, shape.one_cells[f].tgt);
            let ff_alpha = NatTrans::post_whisker(cone.diagram.one(f), &alphas[a]);
            NatTrans::vcomp(&ff_alpha, &NatTrans::vcomp(&cone.structural[f], &inverses[b]))
        })
        .collect();
    let new_cone = LaxCone {
        orientation: Orientation::Oplax,
        vertex: cone.vertex.clone(),
        diagram: cone.diagram.clone(),
        legs: new_legs.to_vec(),
        structural,
    };
    let diags = new_cone.validate();
    if !diags.is_empty() {
        return Err(ConeError::InvalidCone(crate::diagnostics::render(&diags)));
    }
    let modification = Modification {
        dom: cone.clone(),
        cod: new_cone.clone(),
        components: alphas.to_vec(),
    };
    let diags = modification.validate();
    if !diags.is_empty() {
        return Err(ConeError::InvalidCone(crate::diagnostics::render(&diags)));
    }
    Ok((new_cone, modification))
}

/// Checks A0-Ω-compatibility of the limit over a test vertex: whenever the
/// components of a modification (at the watched family of objects) lie in Ω,
/// so does the induced 2-cell between the factorizations.
pub fn compatibility_check(lim: &LimitResult, omega: CellClass, a0_only: bool, vertex: &Arc<FinCategory>) -> bool {
    let watched: Vec<usize> = if a0_only {
        match &lim.pie {
            Some(pie) => pie.initials(),
            None => return false,
        }
    } else {
        (0..lim.diagram.shape.objects.len()).collect()
    };
    let cc = enumerate_cones(vertex, &lim.diagram, &lim.sigma, true, lim.orientation);
    let one = &lim.cones.vertex;
    for m in &cc.modifications {
        if !watched.iter().all(|&a| omega.contains(&m.components[a])) {
            continue;
        }
        let u = match factor_cone(lim, &m.dom) {
            Ok(u) => u,
            Err(_) => return false,
        };
        let v = match factor_cone(lim, &m.cod) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let components: Option<Vec<usize>> = (0..vertex.object_count())
            .map(|e| lim.cones.modification_index(&m.evaluate(one, e)))
            .collect();
        let beta = match components {
            Some(components) => NatTrans {
                dom: u,
                cod: v,
                components,
            },
            None => return false,
        };
        if !omega.contains(&beta) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat;
    use crate::shapes;
    use crate::two_cat::TwoFunctorBuilder;

    fn product_diagram() -> (Arc<TwoFunctor>, SigmaFamily) {
        let (shape, sigma) = shapes::product_shape();
        let two = Arc::new(samples::walking_arrow());
        let f = TwoFunctorBuilder::new(Arc::new(shape))
            .on_object("A", two.clone())
            .on_object("B", two)
            .build()
            .unwrap();
        (Arc::new(f), sigma)
    }

    fn inserter_diagram() -> (Arc<TwoFunctor>, SigmaFamily) {
        let (shape, sigma) = shapes::inserter_shape();
        let one = Arc::new(samples::terminal());
        let two = Arc::new(samples::walking_arrow());
        let f = TwoFunctorBuilder::new(Arc::new(shape))
            .on_object("A", one.clone())
            .on_object("B", two.clone())
            .on_one_cell("f", samples::const_functor(&one, &two, 0))
            .on_one_cell("g", samples::const_functor(&one, &two, 1))
            .build()
            .unwrap();
        (Arc::new(f), sigma)
    }

    #[test]
    fn product_cone_category_from_terminal_vertex() {
        let (diag, sigma) = product_diagram();
        let one = Arc::new(samples::terminal());
        let cc = enumerate_cones(&one, &diag, &sigma, true, Orientation::Lax);
        assert_eq!(cc.cones.len(), 4);
        assert_eq!(cc.modifications.len(), 9);
        assert!(cc.category.validate().is_empty());
    }

    #[test]
    fn sigma_s_flag_is_vacuous_when_sigma_is_identities() {
        let (diag, sigma) = product_diagram();
        let two = Arc::new(samples::walking_arrow());
        let all = enumerate_cones(&two, &diag, &sigma, false, Orientation::Lax);
        let strict = enumerate_cones(&two, &diag, &sigma, true, Orientation::Lax);
        assert_eq!(all.category, strict.category);
        assert_eq!(all.cones.len(), strict.cones.len());
    }

    #[test]
    fn inserter_cones_match_inserter_objects() {
        let (diag, sigma) = inserter_diagram();
        let one = Arc::new(samples::terminal());
        let cc = enumerate_cones(&one, &diag, &sigma, true, Orientation::Oplax);
        let f = diag.shape.one_index("f").unwrap();
        let g = diag.shape.one_index("g").unwrap();
        let ins = fincat::inserter(diag.one(f), diag.one(g));
        assert_eq!(cc.cones.len(), ins.category.object_count());
        assert_eq!(cc.cones.len(), 1);
        for c in &cc.cones {
            assert!(is_sigma_s_cone(c, &sigma));
        }
    }

    #[test]
    fn product_limit_is_the_product() {
        let (diag, sigma) = product_diagram();
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Lax);
        let two = Arc::new(samples::walking_arrow());
        let p = fincat::product(&[two.clone(), two.clone()]);
        assert_eq!(lim.limit.object_count(), 4);
        assert_eq!(lim.limit.arrow_count(), 9);
        // The pairing of the two projections realizes the comparison L ≅ 2×2.
        let cmp = p.tuple(&lim.limit, &[lim.projections[0].clone(), lim.projections[1].clone()]);
        assert!(cmp.validate().is_empty());
        assert!(iso_check(&cmp));
        assert!(lim.pie.is_some());
    }

    #[test]
    fn inserter_limit_matches_direct_inserter() {
        let (diag, sigma) = inserter_diagram();
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Oplax);
        assert_eq!(lim.limit.object_count(), 1);
        assert_eq!(lim.limit.arrow_count(), 1);
        for e in samples::default_vertices() {
            assert!(verify_universal_property(&lim, &e));
        }
    }

    #[test]
    fn universal_property_on_product_limit() {
        let (diag, sigma) = product_diagram();
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Lax);
        for e in samples::default_vertices() {
            assert!(verify_universal_property(&lim, &e));
        }
    }

    #[test]
    fn corrupted_structural_cell_fails_universal_property() {
        let (diag, sigma) = inserter_diagram();
        let mut lim = sigma_s_limit(&diag, &sigma, Orientation::Oplax);
        // Break π_g by redirecting its only component to an identity.
        let g = diag.shape.one_index("g").unwrap();
        let two = lim.structural[g].dom.cod.clone();
        lim.structural[g].components = vec![two.identity[0]];
        let one = Arc::new(samples::terminal());
        assert!(!verify_universal_property(&lim, &one));
    }

    #[test]
    fn factor_limit_cone_gives_identity() {
        let (diag, sigma) = product_diagram();
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Lax);
        let u = factor_cone(&lim, &lim.universal_cone()).unwrap();
        assert!(u.is_identity());
    }

    #[test]
    fn factorization_recomposes_to_the_cone() {
        let (diag, sigma) = product_diagram();
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Lax);
        let e = Arc::new(samples::walking_arrow());
        let cc = enumerate_cones(&e, &diag, &sigma, true, Orientation::Lax);
        for c in &cc.cones {
            let phi = factor_cone(&lim, c).unwrap();
            let back = post_compose_functor(&lim, &phi);
            assert_eq!(&back, c);
        }
    }

    #[test]
    fn modify_cone_round_trip() {
        let (shape, sigma) = shapes::product_shape();
        let iso = Arc::new(samples::walking_iso());
        let diag = Arc::new(
            TwoFunctorBuilder::new(Arc::new(shape))
                .on_object("A", iso.clone())
                .on_object("B", iso.clone())
                .build()
                .unwrap(),
        );
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Oplax);
        let cone = lim.universal_cone();

        // Identity modification: nothing changes.
        let ids: Vec<NatTrans> = cone.legs.iter().map(NatTrans::identity).collect();
        let (same, _) = modify_cone(&cone, &cone.legs, &ids).unwrap();
        assert_eq!(same, cone);

        // A genuine invertible modification built from the swap of the iso.
        let swap = Functor {
            dom: iso.clone(),
            cod: iso.clone(),
            on_objects: vec![1, 0],
            on_arrows: vec![1, 0, 3, 2],
        };
        assert!(swap.validate().is_empty());
        let new_legs: Vec<Functor> = cone.legs.iter().map(|leg| Functor::compose(&swap, leg)).collect();
        let alphas: Vec<NatTrans> = cone
            .legs
            .iter()
            .zip(&new_legs)
            .map(|(old, new)| {
                let nats = enumerate_naturals(old, new);
                nats.into_iter().find(|n| n.is_invertible()).expect("iso component exists")
            })
            .collect();
        let (moved, modif) = modify_cone(&cone, &new_legs, &alphas).unwrap();
        assert!(moved.validate().is_empty());
        assert!(modif.validate().is_empty());
        let back_alphas: Vec<NatTrans> = alphas.iter().map(|a| a.inverse().unwrap()).collect();
        let (back, _) = modify_cone(&moved, &cone.legs, &back_alphas).unwrap();
        assert_eq!(back, cone);
    }

    #[test]
    fn modify_cone_rejects_non_invertible_components() {
        let (diag, sigma) = inserter_diagram();
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Oplax);
        let cone = lim.universal_cone();
        // Replace the leg at B by the other constant and try to modify along
        // the non-invertible u-component.
        let b = diag.shape.object_index("B").unwrap();
        let fb = diag.cat(b);
        let new_leg = samples::const_functor(&lim.limit, fb, 1);
        let alpha = enumerate_naturals(&cone.legs[b], &new_leg).into_iter().next().unwrap();
        let mut new_legs = cone.legs.clone();
        new_legs[b] = new_leg;
        let mut alphas: Vec<NatTrans> = cone.legs.iter().map(NatTrans::identity).collect();
        alphas[b] = alpha;
        match modify_cone(&cone, &new_legs, &alphas) {
            Err(ConeError::NonInvertibleComponent(obj)) => assert_eq!(obj, "B"),
            other => panic!("expected NonInvertibleComponent, got {other:?}"),
        }
    }

    #[test]
    fn compatibility_holds_for_builtin_classes() {
        let (diag, sigma) = inserter_diagram();
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Oplax);
        for e in samples::default_vertices() {
            for omega in [CellClass::Strict, CellClass::Pseudo, CellClass::Lax] {
                assert!(compatibility_check(&lim, omega, false, &e));
                assert!(compatibility_check(&lim, omega, true, &e));
            }
        }
    }

    #[test]
    fn limit_invariant_under_declaration_reordering() {
        // The inserter shape with g declared before f.
        let (shape_rev, sigma_rev) = crate::two_cat::TwoCatBuilder::new(&["A", "B"])
            .one_cell("g", "A", "B")
            .one_cell("f", "A", "B")
            .sigma("f")
            .build();
        let one = Arc::new(samples::terminal());
        let two = Arc::new(samples::walking_arrow());
        let diag_rev = Arc::new(
            TwoFunctorBuilder::new(Arc::new(shape_rev))
                .on_object("A", one.clone())
                .on_object("B", two.clone())
                .on_one_cell("f", samples::const_functor(&one, &two, 0))
                .on_one_cell("g", samples::const_functor(&one, &two, 1))
                .build()
                .unwrap(),
        );
        let lim_rev = sigma_s_limit(&diag_rev, &sigma_rev, Orientation::Oplax);
        let (diag, sigma) = inserter_diagram();
        let lim = sigma_s_limit(&diag, &sigma, Orientation::Oplax);
        // Both declaration orders compute a category isomorphic to the
        // directly constructed inserter, hence to each other.
        for (l, d) in [(&lim, &diag), (&lim_rev, &diag_rev)] {
            let f = d.shape.one_index("f").unwrap();
            let g = d.shape.one_index("g").unwrap();
            let a = d.shape.object_index("A").unwrap();
            let ins = fincat::inserter(d.one(f), d.one(g));
            let cmp = Functor {
                dom: l.limit.clone(),
                cod: ins.category.clone(),
                on_objects: l
                    .cones
                    .cones
                    .iter()
                    .map(|c| ins.object_of(c.legs[a].ob(0), c.structural[g].components[0]).unwrap())
                    .collect(),
                on_arrows: (0..l.limit.arrow_count())
                    .map(|k| {
                        let m = &l.cones.modifications[k];
                        let src = l.limit.src(k);
                        let tgt = l.limit.tgt(k);
                        let src_i = ins
                            .object_of(l.cones.cones[src].legs[a].ob(0), l.cones.cones[src].structural[g].components[0])
                            .unwrap();
                        let tgt_i = ins
                            .object_of(l.cones.cones[tgt].legs[a].ob(0), l.cones.cones[tgt].structural[g].components[0])
                            .unwrap();
                        ins.arrow_of(m.components[a].components[0], src_i, tgt_i).unwrap()
                    })
                    .collect(),
            };
            assert!(cmp.validate().is_empty());
            assert!(iso_check(&cmp));
        }
    }
}
