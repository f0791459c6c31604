//! Category-valued weights, weighted 2-limits, the 2-category of elements
//! and its dual, and the weighted-versus-conical cross-check.
//!
//! A weight is a 2-functor `W : A → Cat`. Its 2-category of elements `El_W`
//! has objects `(A, x ∈ WA)`, 1-cells `(f, w : Wf(x) → y)` composing by
//! `(g, v) ∘ (f, w) = (gf, v ∘ Wg(w))`, and 2-cells `(f, w) ⇒ (g, v)` the
//! 2-cells `γ : f ⇒ g` of `A` with `v ∘ Wγ_x = w`; vertical composition and
//! whiskering are inherited from `A` (whiskering first composes the element
//! arrows of the boundary 1-cells). The marked family Σ consists of the
//! 1-cells of the form `(f, id)`. The dual `Γ_W` reverses the element
//! arrows: 1-cells `(f, w : y → Wf(x))` with `(g, v) ∘ (f, w) =
//! (gf, Wg(w) ∘ v)` and 2-cell compatibility `Wγ_x ∘ w = v`; it indexes the
//! op-lax variant. Both share the same Σ-subcategory, so PIE analysis
//! agrees on the two.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cones::{factor_cone, sigma_s_limit, LaxCone, Orientation};
use crate::fincat::{cartesian, enumerate_functors, enumerate_naturals, iso_check, Arrow, FinCategory, Functor, NatTrans};
use crate::two_cat::{pie_analysis, OneCell, SigmaFamily, TwoCategory, TwoCell, TwoFunctor};

/// A weight is just a 2-functor valued in finite categories.
pub type Weight = TwoFunctor;

/// A strict 2-natural transformation `W ⇒ F`, stored by its components.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoNatural {
    pub components: Vec<Functor>,
}

/// The weighted 2-limit `{W, F}`: objects are strict 2-naturals `W ⇒ F`,
/// arrows are modifications, composition is componentwise.
#[derive(Debug, Clone)]
pub struct WeightedLimit {
    pub weight: Arc<TwoFunctor>,
    pub diagram: Arc<TwoFunctor>,
    pub category: Arc<FinCategory>,
    pub naturals: Vec<TwoNatural>,
    /// Per arrow of `category`, the component family of the modification.
    pub modifications: Vec<Vec<NatTrans>>,
}

fn is_two_natural(w: &TwoFunctor, f: &TwoFunctor, components: &[Functor]) -> bool {
    let shape = &w.shape;
    for (i, cell) in shape.one_cells.iter().enumerate() {
        let lhs = Functor::compose(f.one(i), &components[cell.src]);
        let rhs = Functor::compose(&components[cell.tgt], w.one(i));
        if lhs != rhs {
            return false;
        }
    }
    for (c, cell) in shape.two_cells.iter().enumerate() {
        let a = shape.cell_dom_obj(c);
        let lhs = NatTrans::pre_whisker(f.two(c), &components[a]);
        let rhs = NatTrans::post_whisker(&components[one_tgt(shape, cell)], w.two(c));
        if lhs != rhs {
            return false;
        }
    }
    true
}

fn one_tgt(shape: &TwoCategory, cell: &TwoCell) -> usize {
    shape.one_cells[cell.src].tgt
}

fn is_weight_modification(w: &TwoFunctor, f: &TwoFunctor, components: &[NatTrans]) -> bool {
    let shape = &w.shape;
    for (i, cell) in shape.one_cells.iter().enumerate() {
        let lhs = NatTrans::post_whisker(f.one(i), &components[cell.src]);
        let rhs = NatTrans::pre_whisker(&components[cell.tgt], w.one(i));
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Enumerates the weighted 2-limit `{W, F}` exhaustively.
pub fn weighted_limit(weight: &Arc<TwoFunctor>, diagram: &Arc<TwoFunctor>) -> WeightedLimit {
    assert_eq!(weight.shape, diagram.shape, "weight and diagram must share the indexing 2-category");
    let shape = &weight.shape;
    let choices: Vec<Vec<Functor>> = (0..shape.objects.len())
        .map(|a| enumerate_functors(weight.cat(a), diagram.cat(a)))
        .collect();
    let mut naturals = Vec::new();
    for components in cartesian(choices) {
        if is_two_natural(weight, diagram, &components) {
            naturals.push(TwoNatural { components });
        }
    }
    let mut modifications = Vec::new();
    let mut arrows = Vec::new();
    let mut lookup = BTreeMap::new();
    for (i, rho) in naturals.iter().enumerate() {
        for (j, rho2) in naturals.iter().enumerate() {
            let comp_choices: Vec<Vec<NatTrans>> = (0..shape.objects.len())
                .map(|a| enumerate_naturals(&rho.components[a], &rho2.components[a]))
                .collect();
            if comp_choices.iter().any(|v| v.is_empty()) {
                continue;
            }
            for components in cartesian(comp_choices) {
                if is_weight_modification(weight, diagram, &components) {
                    let ix = modifications.len();
                    let key: Vec<Vec<usize>> = components.iter().map(|n| n.components.clone()).collect();
                    lookup.insert((i, j, key), ix);
                    arrows.push(Arrow {
                        id: format!("wm{ix}"),
                        src: i,
                        tgt: j,
                    });
                    modifications.push(components);
                }
            }
        }
    }
    let identity: Vec<usize> = naturals
        .iter()
        .enumerate()
        .map(|(i, rho)| {
            let key: Vec<Vec<usize>> = rho
                .components
                .iter()
                .map(|c| c.on_objects.iter().map(|&o| c.cod.identity[o]).collect())
                .collect();
            lookup[&(i, i, key)]
        })
        .collect();
    let mut compose = BTreeMap::new();
    for (k2, m2) in modifications.iter().enumerate() {
        for (k1, m1) in modifications.iter().enumerate() {
            if arrows[k1].tgt != arrows[k2].src {
                continue;
            }
            let key: Vec<Vec<usize>> = m1
                .iter()
                .zip(m2)
                .map(|(a, b)| NatTrans::vcomp(b, a).components)
                .collect();
            compose.insert((k2, k1), lookup[&(arrows[k1].src, arrows[k2].tgt, key)]);
        }
    }
    let category = Arc::new(FinCategory {
        objects: (0..naturals.len()).map(|i| format!("w{i}")).collect(),
        arrows,
        identity,
        compose,
    });
    WeightedLimit {
        weight: weight.clone(),
        diagram: diagram.clone(),
        category,
        naturals,
        modifications,
    }
}

/// The 2-category of elements of a weight, with its marked family and the
/// data of the projection onto the indexing 2-category.
#[derive(Debug, Clone)]
pub struct ElCategory {
    pub two_cat: Arc<TwoCategory>,
    pub sigma: SigmaFamily,
    /// Per object of `two_cat`: `(shape object A, object x of WA)`.
    pub objects: Vec<(usize, usize)>,
    /// Per 1-cell of `two_cat`: `(shape 1-cell f, element arrow w)`.
    pub one_data: Vec<(usize, usize)>,
    /// Per 2-cell of `two_cat`: the underlying shape 2-cell.
    pub two_data: Vec<usize>,
    /// Dual orientation (element arrows reversed).
    pub dual: bool,
}

impl ElCategory {
    /// The composite 2-functor `El_W → A → Cat` for a diagram `F` over the
    /// same indexing 2-category as the weight.
    pub fn compose_with(&self, diagram: &Arc<TwoFunctor>) -> TwoFunctor {
        TwoFunctor {
            shape: self.two_cat.clone(),
            on_objects: self.objects.iter().map(|&(a, _)| diagram.cat(a).clone()).collect(),
            on_one: self.one_data.iter().map(|&(f, _)| diagram.one(f).clone()).collect(),
            on_two: self.two_data.iter().map(|&c| diagram.two(c).clone()).collect(),
        }
    }

    /// Checks that the projection strictly preserves all compositions.
    pub fn projection_is_functorial(&self, shape: &TwoCategory) -> bool {
        let el = &self.two_cat;
        for (&(g, f), &gf) in &el.one_compose {
            if shape.one_compose.get(&(self.one_data[g].0, self.one_data[f].0)) != Some(&self.one_data[gf].0) {
                return false;
            }
        }
        for (&(b, a), &ba) in &el.vcompose {
            if shape.vcompose.get(&(self.two_data[b], self.two_data[a])) != Some(&self.two_data[ba]) {
                return false;
            }
        }
        for (&(g, a), &r) in &el.whisker_post {
            if shape.whisker_post.get(&(self.one_data[g].0, self.two_data[a])) != Some(&self.two_data[r]) {
                return false;
            }
        }
        for (&(a, e), &r) in &el.whisker_pre {
            if shape.whisker_pre.get(&(self.two_data[a], self.one_data[e].0)) != Some(&self.two_data[r]) {
                return false;
            }
        }
        true
    }
}

/// The Grothendieck construction `El_W`, consumed with the lax orientation.
pub fn grothendieck(weight: &Arc<TwoFunctor>) -> ElCategory {
    build_elements(weight, false)
}

/// The dual `Γ_W` with reversed element arrows, consumed with the op-lax
/// orientation.
pub fn grothendieck_dual(weight: &Arc<TwoFunctor>) -> ElCategory {
    build_elements(weight, true)
}

fn build_elements(weight: &Arc<TwoFunctor>, dual: bool) -> ElCategory {
    let shape = &weight.shape;
    let mut objects = Vec::new();
    let mut obj_lookup = BTreeMap::new();
    let mut obj_names = Vec::new();
    for a in 0..shape.objects.len() {
        for x in 0..weight.cat(a).object_count() {
            obj_lookup.insert((a, x), objects.len());
            obj_names.push(format!("({},{})", shape.objects[a], weight.cat(a).objects[x]));
            objects.push((a, x));
        }
    }

    // 1-cells (A,x) -> (B,y): lax (f, w : Wf(x) -> y); dual (f, w : y -> Wf(x)).
    let mut one_data = Vec::new();
    let mut one_cells = Vec::new();
    let mut one_lookup = BTreeMap::new();
    for (src_el, &(a, x)) in objects.iter().enumerate() {
        for (f, cell) in shape.one_cells.iter().enumerate() {
            if cell.src != a {
                continue;
            }
            let b = cell.tgt;
            let wb = weight.cat(b);
            let wf_x = weight.one(f).ob(x);
            for w in 0..wb.arrow_count() {
                let (ys, tgt_obj) = if dual {
                    (wb.tgt(w) == wf_x, wb.src(w))
                } else {
                    (wb.src(w) == wf_x, wb.tgt(w))
                };
                if !ys {
                    continue;
                }
                let tgt_el = obj_lookup[&(b, tgt_obj)];
                let ix = one_cells.len();
                one_lookup.insert((f, w, src_el), ix);
                one_cells.push(OneCell {
                    id: format!("({},{}|{})", shape.one_cells[f].id, wb.arrows[w].id, weight.cat(a).objects[x]),
                    src: src_el,
                    tgt: tgt_el,
                });
                one_data.push((f, w));
            }
        }
    }
    let one_identity: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(el, &(a, x))| {
            let f = shape.one_identity[a];
            let w = weight.cat(a).identity[x];
            one_lookup[&(f, w, el)]
        })
        .collect();
    let compose_el = |g_el: usize, f_el: usize, one_data: &Vec<(usize, usize)>, one_cells: &Vec<OneCell>| -> usize {
        let (f, w) = one_data[f_el];
        let (g, v) = one_data[g_el];
        let gf = shape.comp1(g, f);
        let src_el = one_cells[f_el].src;
        let wc = weight.cat(shape.one_cells[g].tgt);
        let wg_w = weight.one(g).arr(w);
        let elem = if dual {
            // w : y -> Wf(x), v : z -> Wg(y); composite Wg(w) ∘ v.
            wc.comp(wg_w, v)
        } else {
            // w : Wf(x) -> y, v : Wg(y) -> z; composite v ∘ Wg(w).
            wc.comp(v, wg_w)
        };
        one_lookup[&(gf, elem, src_el)]
    };
    let mut one_compose = BTreeMap::new();
    for g_el in 0..one_cells.len() {
        for f_el in 0..one_cells.len() {
            if one_cells[f_el].tgt == one_cells[g_el].src {
                one_compose.insert((g_el, f_el), compose_el(g_el, f_el, &one_data, &one_cells));
            }
        }
    }

    // 2-cells between parallel (f,w) ⇒ (g,v): 2-cells γ : f ⇒ g of the shape
    // compatible with the element arrows.
    let compatible = |gamma: usize, f_el: usize, g_el: usize| -> bool {
        let (f, w) = one_data[f_el];
        let (g, v) = one_data[g_el];
        if shape.two_cells[gamma].src != f || shape.two_cells[gamma].tgt != g {
            return false;
        }
        let (_, x) = objects[one_cells[f_el].src];
        let b = shape.one_cells[f].tgt;
        let wb = weight.cat(b);
        let wgamma_x = weight.two(gamma).components[x];
        if dual {
            wb.comp(wgamma_x, w) == v
        } else {
            wb.comp(v, wgamma_x) == w
        }
    };
    let mut two_cells = Vec::new();
    let mut two_data = Vec::new();
    let mut two_lookup = BTreeMap::new();
    for f_el in 0..one_cells.len() {
        for g_el in 0..one_cells.len() {
            if one_cells[f_el].src != one_cells[g_el].src || one_cells[f_el].tgt != one_cells[g_el].tgt {
                continue;
            }
            for gamma in 0..shape.two_cells.len() {
                if compatible(gamma, f_el, g_el) {
                    let ix = two_cells.len();
                    two_lookup.insert((gamma, f_el, g_el), ix);
                    two_cells.push(TwoCell {
                        id: format!("({}|{}>{})", shape.two_cells[gamma].id, one_cells[f_el].id, one_cells[g_el].id),
                        src: f_el,
                        tgt: g_el,
                    });
                    two_data.push(gamma);
                }
            }
        }
    }
    let two_identity: Vec<usize> = (0..one_cells.len())
        .map(|f_el| two_lookup[&(shape.two_identity[one_data[f_el].0], f_el, f_el)])
        .collect();
    let mut vcompose = BTreeMap::new();
    for (b_ix, bc) in two_cells.iter().enumerate() {
        for (a_ix, ac) in two_cells.iter().enumerate() {
            if ac.tgt == bc.src {
                let gamma = shape.vcompose[&(two_data[b_ix], two_data[a_ix])];
                vcompose.insert((b_ix, a_ix), two_lookup[&(gamma, ac.src, bc.tgt)]);
            }
        }
    }
    let mut whisker_post = BTreeMap::new();
    let mut whisker_pre = BTreeMap::new();
    for g_el in 0..one_cells.len() {
        for (a_ix, ac) in two_cells.iter().enumerate() {
            let cod_obj = one_cells[ac.src].tgt;
            let dom_obj = one_cells[ac.src].src;
            if one_cells[g_el].src == cod_obj {
                let gamma = shape.whisker_post[&(one_data[g_el].0, two_data[a_ix])];
                let src_el = compose_el(g_el, ac.src, &one_data, &one_cells);
                let tgt_el = compose_el(g_el, ac.tgt, &one_data, &one_cells);
                whisker_post.insert((g_el, a_ix), two_lookup[&(gamma, src_el, tgt_el)]);
            }
            if one_cells[g_el].tgt == dom_obj {
                let gamma = shape.whisker_pre[&(two_data[a_ix], one_data[g_el].0)];
                let src_el = compose_el(ac.src, g_el, &one_data, &one_cells);
                let tgt_el = compose_el(ac.tgt, g_el, &one_data, &one_cells);
                whisker_pre.insert((a_ix, g_el), two_lookup[&(gamma, src_el, tgt_el)]);
            }
        }
    }
    // Σ: the 1-cells of the form (f, id).
    let sigma = SigmaFamily {
        members: one_data
            .iter()
            .enumerate()
            .filter(|&(el, &(f, w))| {
                let b = shape.one_cells[f].tgt;
                let _ = el;
                weight.cat(b).is_identity_arrow(w)
            })
            .map(|(el, _)| el)
            .collect(),
    };
    let two_cat = Arc::new(TwoCategory {
        objects: obj_names,
        one_cells,
        one_identity,
        one_compose,
        two_cells,
        two_identity,
        vcompose,
        whisker_post,
        whisker_pre,
    });
    ElCategory {
        two_cat,
        sigma,
        objects,
        one_data,
        two_data,
        dual,
    }
}

/// True iff the pair `(El_W, Σ)` is a PIE indexing pair; adopted as the
/// operative recognition of PIE weights.
pub fn is_pie_weight(weight: &Arc<TwoFunctor>) -> bool {
    let el = grothendieck(weight);
    pie_analysis(&el.two_cat, &el.sigma).is_ok()
}

/// Compares the weighted limit `{W, F}` with the sigma-strict limit of the
/// composite `El_W → A → Cat` through the canonical comparison functor (the
/// factorization of the tautological cone), checking it is an isomorphism.
pub fn compare_weighted_conical(weight: &Arc<TwoFunctor>, diagram: &Arc<TwoFunctor>) -> bool {
    let el = grothendieck(weight);
    let fel = Arc::new(el.compose_with(diagram));
    let lim = sigma_s_limit(&fel, &el.sigma, Orientation::Lax);
    let wl = weighted_limit(weight, diagram);

    // The tautological cone over the elements diagram with vertex {W, F}.
    let legs: Vec<Functor> = el
        .objects
        .iter()
        .map(|&(a, x)| Functor {
            dom: wl.category.clone(),
            cod: diagram.cat(a).clone(),
            on_objects: wl.naturals.iter().map(|rho| rho.components[a].ob(x)).collect(),
            on_arrows: wl.modifications.iter().map(|m| m[a].components[x]).collect(),
        })
        .collect();
    let structural: Vec<NatTrans> = (0..el.two_cat.one_cells.len())
        .map(|el_one| {
            let (f, w) = el.one_data[el_one];
            let src_el = el.two_cat.one_cells[el_one].src;
            let tgt_el = el.two_cat.one_cells[el_one].tgt;
            let b = weight.shape.one_cells[f].tgt;
            let dom = Functor::compose(fel.one(el_one), &legs[src_el]);
            let cod = legs[tgt_el].clone();
            NatTrans {
                dom,
                cod,
                // θ_{(f,w)} at ρ is ρ_B(w).
                components: wl.naturals.iter().map(|rho| rho.components[b].arr(w)).collect(),
            }
        })
        .collect();
    let taut = LaxCone {
        orientation: Orientation::Lax,
        vertex: wl.category.clone(),
        diagram: fel.clone(),
        legs,
        structural,
    };
    if !taut.validate().is_empty() {
        return false;
    }
    match factor_cone(&lim, &taut) {
        Ok(phi) => phi.validate().is_empty() && iso_check(&phi),
        Err(_) => false,
    }
}
