//! Assembly of a PIE-indexed sigma-strict (op)limit from products, inserters
//! and equifiers, cross-checked against the direct cone-category computation.
//!
//! The construction follows the conical recipe: first the inserter `I` of
//!
//! ```text
//!   ∏_{A0} F A0   ⇉   ∏_{f : A -> B} F B
//! ```
//!
//! whose two parallel functors have `f`-components `F(f ∘ f_A) π_{A0}` and
//! `F(f_B) π_{B0}`, so that an object of `I` is a family of legs at the
//! initial objects together with a candidate structural cell over every
//! arrow. The limit is then the equifier of the families of parallel 2-cells
//! expressing σsC, LC1 and LC2. Identity-indexed factors are omitted from
//! the materialized index sets: the constraints they would impose are forced
//! by LC0 and hold by construction, and dropping them keeps the product
//! categories small.

use std::sync::Arc;

use crate::cones::{factor_cone, sigma_s_limit, ConeError, LaxCone, LimitResult, Orientation};
use crate::fincat::{full_subcategory, inserter, iso_check, product, FinCategory, Functor, Inserter, NatTrans, Product};
use crate::two_cat::{pie_analysis, NotPie, PieStructure, SigmaFamily, TwoFunctor};

/// One of the parallel-2-cell families fed to the final equifier.
#[derive(Debug, Clone)]
pub struct EquifierFamily {
    /// `sigma:<f>`, `comp:<g>.<f>` or `cell:<γ>`.
    pub label: String,
    pub lhs: NatTrans,
    pub rhs: NatTrans,
}

/// The intermediate data of the product/inserter/equifier construction,
/// the final category, and the comparison functor onto the directly
/// computed limit.
#[derive(Debug, Clone)]
pub struct PieAssembly {
    pub orientation: Orientation,
    pub diagram: Arc<TwoFunctor>,
    pub sigma: SigmaFamily,
    pub pie: PieStructure,
    /// Product over the chosen initial objects.
    pub initial_product: Product,
    /// Product over the non-identity 1-cells, of the target categories.
    pub arrow_product: Product,
    pub phi0: Functor,
    pub phi1: Functor,
    pub inserter: Inserter,
    /// Per shape object, the leg functor `I -> FA`.
    pub theta_functors: Vec<Functor>,
    /// Per shape 1-cell, the candidate structural cell as a natural on `I`.
    pub theta_cells: Vec<NatTrans>,
    pub families: Vec<EquifierFamily>,
    pub final_category: Arc<FinCategory>,
    pub inclusion: Functor,
    pub comparison: Functor,
    pub direct: LimitResult,
}

/// Builds the PIE assembly for a diagram over a PIE indexing pair.
pub fn build_via_pie(
    diagram: &Arc<TwoFunctor>,
    sigma: &SigmaFamily,
    orientation: Orientation,
) -> Result<PieAssembly, NotPie> {
    let pie = pie_analysis(&diagram.shape, sigma)?;
    let shape = &diagram.shape;

    // Step 1: the two products. Position of the initial object of A's
    // component inside the initial product is the component index.
    let a0_list: Vec<usize> = pie.initial.clone();
    let p0 = product(&a0_list.iter().map(|&a| diagram.cat(a).clone()).collect::<Vec<_>>());
    let arrow_list: Vec<usize> = (0..shape.one_cells.len()).filter(|&f| !shape.is_identity_one(f)).collect();
    let p1 = product(&arrow_list.iter().map(|&f| diagram.cat(shape.one_cells[f].tgt).clone()).collect::<Vec<_>>());

    let leg_at = |a: usize| -> Functor {
        // F(f_A) ∘ π_{A0} : P0 -> FA.
        Functor::compose(diagram.one(pie.canonical_arrow[a]), &p0.projections[pie.component_of[a]])
    };
    let phi0_components: Vec<Functor> = arrow_list
        .iter()
        .map(|&f| {
            let a = shape.one_cells[f].src;
            let ffa = shape.comp1(f, pie.canonical_arrow[a]);
            Functor::compose(diagram.one(ffa), &p0.projections[pie.component_of[a]])
        })
        .collect();
    let phi1_components: Vec<Functor> = arrow_list.iter().map(|&f| leg_at(shape.one_cells[f].tgt)).collect();
    let phi0 = p1.tuple(&p0.category, &phi0_components);
    let phi1 = p1.tuple(&p0.category, &phi1_components);

    // Step 2: the inserter, in the direction matching the orientation.
    let ins = match orientation {
        Orientation::Lax => inserter(&phi0, &phi1),
        Orientation::Oplax => inserter(&phi1, &phi0),
    };

    // Legs and candidate structural cells, transported to `I`.
    let theta_functors: Vec<Functor> = (0..shape.objects.len())
        .map(|a| Functor::compose(&leg_at(a), &ins.projection))
        .collect();
    let theta_cells: Vec<NatTrans> = (0..shape.one_cells.len())
        .map(|f| {
            if shape.is_identity_one(f) {
                NatTrans::identity(&theta_functors[shape.one_cells[f].src])
            } else {
                let k = arrow_list.iter().position(|&x| x == f).expect("non-identity arrow indexed");
                NatTrans::post_whisker(&p1.projections[k], &ins.canonical)
            }
        })
        .collect();

    // Step 3: the equifier families for σsC, LC1 and LC2.
    let mut families = Vec::new();
    for &f in &sigma.members {
        if shape.is_identity_one(f) {
            continue;
        }
        // By the PIE hypothesis A0 = B0 and f∘f_A = f_B, so the two ends of
        // θ_f agree and the identity 2-cell is parallel to it.
        families.push(EquifierFamily {
            label: format!("sigma:{}", shape.one_cells[f].id),
            lhs: NatTrans::identity(&theta_cells[f].dom),
            rhs: theta_cells[f].clone(),
        });
    }
    for (&(g, f), &gf) in &shape.one_compose {
        if shape.is_identity_one(g) || shape.is_identity_one(f) {
            continue;
        }
        let composite = match orientation {
            Orientation::Lax => NatTrans::vcomp(&theta_cells[g], &NatTrans::post_whisker(diagram.one(g), &theta_cells[f])),
            Orientation::Oplax => NatTrans::vcomp(&NatTrans::post_whisker(diagram.one(g), &theta_cells[f]), &theta_cells[g]),
        };
        families.push(EquifierFamily {
            label: format!("comp:{}.{}", shape.one_cells[g].id, shape.one_cells[f].id),
            lhs: theta_cells[gf].clone(),
            rhs: composite,
        });
    }
    for (c, cell) in shape.two_cells.iter().enumerate() {
        if shape.is_identity_two(c) {
            continue;
        }
        let a = shape.cell_dom_obj(c);
        let whisk = NatTrans::pre_whisker(diagram.two(c), &theta_functors[a]);
        let (lhs, rhs) = match orientation {
            Orientation::Lax => (theta_cells[cell.src].clone(), NatTrans::vcomp(&theta_cells[cell.tgt], &whisk)),
            Orientation::Oplax => (theta_cells[cell.tgt].clone(), NatTrans::vcomp(&whisk, &theta_cells[cell.src])),
        };
        families.push(EquifierFamily {
            label: format!("cell:{}", cell.id),
            lhs,
            rhs,
        });
    }
    for fam in &families {
        assert_eq!(fam.lhs.dom, fam.rhs.dom, "family {} is not parallel", fam.label);
        assert_eq!(fam.lhs.cod, fam.rhs.cod, "family {} is not parallel", fam.label);
    }

    let direct = sigma_s_limit(diagram, sigma, orientation);
    let (final_category, inclusion, comparison) = finish(
        &ins,
        &theta_functors,
        &theta_cells,
        &families,
        diagram,
        orientation,
        &direct,
    )
    .expect("untampered assembly factors through the direct limit");

    Ok(PieAssembly {
        orientation,
        diagram: diagram.clone(),
        sigma: sigma.clone(),
        pie,
        initial_product: p0,
        arrow_product: p1,
        phi0,
        phi1,
        inserter: ins,
        theta_functors,
        theta_cells,
        families,
        final_category,
        inclusion,
        comparison,
        direct,
    })
}

fn finish(
    ins: &Inserter,
    theta_functors: &[Functor],
    theta_cells: &[NatTrans],
    families: &[EquifierFamily],
    diagram: &Arc<TwoFunctor>,
    orientation: Orientation,
    direct: &LimitResult,
) -> Result<(Arc<FinCategory>, Functor, Functor), ConeError> {
    let kept: Vec<usize> = (0..ins.category.object_count())
        .filter(|&i| families.iter().all(|fam| fam.lhs.components[i] == fam.rhs.components[i]))
        .collect();
    let (final_category, inclusion) = full_subcategory(&ins.category, &kept);
    // The tautological cone with vertex the final category factors through
    // the direct limit; the factorization is the comparison functor.
    let taut = LaxCone {
        orientation,
        vertex: final_category.clone(),
        diagram: diagram.clone(),
        legs: theta_functors.iter().map(|t| Functor::compose(t, &inclusion)).collect(),
        structural: theta_cells.iter().map(|n| NatTrans::pre_whisker(n, &inclusion)).collect(),
    };
    let diags = taut.validate();
    if !diags.is_empty() {
        return Err(ConeError::InvalidCone(crate::diagnostics::render(&diags)));
    }
    let comparison = factor_cone(direct, &taut)?;
    Ok((final_category, inclusion, comparison))
}

impl PieAssembly {
    /// Recomputes the final equifier and comparison from a (possibly
    /// altered) family list and reports whether the comparison is still an
    /// isomorphism onto the direct limit. Fault-injection tests drive this.
    pub fn verdict_with_families(&self, families: &[EquifierFamily]) -> bool {
        match finish(
            &self.inserter,
            &self.theta_functors,
            &self.theta_cells,
            families,
            &self.diagram,
            self.orientation,
            &self.direct,
        ) {
            Ok((_, _, comparison)) => comparison.validate().is_empty() && iso_check(&comparison),
            Err(_) => false,
        }
    }

    /// The comparison verdict for the assembly as built.
    pub fn verdict(&self) -> bool {
        self.comparison.validate().is_empty() && iso_check(&self.comparison)
    }
}

/// Builds the assembly and compares it with the direct computation.
pub fn compare_constructions(
    diagram: &Arc<TwoFunctor>,
    sigma: &SigmaFamily,
    orientation: Orientation,
) -> Result<bool, NotPie> {
    let assembly = build_via_pie(diagram, sigma, orientation)?;
    Ok(assembly.verdict())
}
