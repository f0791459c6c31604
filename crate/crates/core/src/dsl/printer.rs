//! Canonical printer; `parse(print(ws))` is the identity on workspaces.

use super::{AlgEntry, DeclRecord, Workspace};
use crate::fincat::FinCategory;
use crate::two_cat::TwoCategory;

pub fn print(ws: &Workspace) -> String {
    let mut out = String::new();
    for decl in &ws.decls {
        match decl {
            DeclRecord::Category(name) => print_category(&mut out, name, &ws.categories[name]),
            DeclRecord::TwoCat(name) => {
                let (cat, sigma) = &ws.twocats[name];
                print_twocat(&mut out, name, cat, &sigma.members);
            }
            DeclRecord::Functor { name, dom, cod } => {
                let f = &ws.functors[name];
                out.push_str(&format!("functor {name}: {} -> {} {{\n", dom.print(), cod.print()));
                for (x, o) in f.dom.objects.iter().enumerate() {
                    out.push_str(&format!("  {o} |-> {};\n", f.cod.objects[f.ob(x)]));
                }
                for (a, arrow) in f.dom.arrows.iter().enumerate() {
                    if !f.dom.is_identity_arrow(a) {
                        out.push_str(&format!("  {} |-> {};\n", arrow.id, f.cod.arrows[f.arr(a)].id));
                    }
                }
                out.push_str("}\n");
            }
            DeclRecord::Natural { name, dom, cod } => {
                let n = &ws.naturals[name];
                out.push_str(&format!("natural {name}: {} => {} {{\n", dom.print(), cod.print()));
                for (x, o) in n.dom.dom.objects.iter().enumerate() {
                    out.push_str(&format!("  {o} |-> {};\n", n.dom.cod.arrows[n.components[x]].id));
                }
                out.push_str("}\n");
            }
            DeclRecord::Diagram {
                name,
                shape,
                weight,
                entries,
            } => {
                let kw = if *weight { "weight" } else { "diagram" };
                out.push_str(&format!("{kw} {name}: {shape} -> cat {{\n"));
                for (lhs, expr) in entries {
                    out.push_str(&format!("  {lhs} |-> {};\n", expr.print()));
                }
                out.push_str("}\n");
            }
            DeclRecord::AlgDiagram {
                name,
                shape,
                monad,
                entries,
            } => {
                out.push_str(&format!("algdiagram {name}: {shape} monad {monad} {{\n"));
                for (lhs, entry) in entries {
                    match entry {
                        AlgEntry::Pair(a, b) => {
                            out.push_str(&format!("  {lhs} |-> ({}, {});\n", a.print(), b.print()));
                        }
                        AlgEntry::Single(e) => {
                            out.push_str(&format!("  {lhs} |-> {};\n", e.print()));
                        }
                    }
                }
                out.push_str("}\n");
            }
        }
    }
    out
}

fn print_category(out: &mut String, name: &str, cat: &FinCategory) {
    out.push_str(&format!("category {name} {{\n"));
    out.push_str(&format!("  objects: {};\n", cat.objects.join(", ")));
    let arrows: Vec<String> = (0..cat.arrow_count())
        .filter(|&a| !cat.is_identity_arrow(a))
        .map(|a| format!("{}: {} -> {}", cat.arrows[a].id, cat.objects[cat.src(a)], cat.objects[cat.tgt(a)]))
        .collect();
    if !arrows.is_empty() {
        out.push_str(&format!("  arrows: {};\n", arrows.join(", ")));
    }
    let compose: Vec<String> = cat
        .composable_pairs()
        .filter(|&(g, f, _)| !cat.is_identity_arrow(g) && !cat.is_identity_arrow(f))
        .map(|(g, f, gf)| format!("{}.{} = {}", cat.arrows[g].id, cat.arrows[f].id, cat.arrows[gf].id))
        .collect();
    if !compose.is_empty() {
        out.push_str(&format!("  compose: {};\n", compose.join(", ")));
    }
    out.push_str("}\n");
}

fn print_twocat(out: &mut String, name: &str, cat: &TwoCategory, sigma: &std::collections::BTreeSet<usize>) {
    out.push_str(&format!("twocat {name} {{\n"));
    out.push_str(&format!("  objects: {};\n", cat.objects.join(", ")));
    let ones: Vec<String> = (0..cat.one_cells.len())
        .filter(|&f| !cat.is_identity_one(f))
        .map(|f| {
            format!(
                "{}: {} -> {}",
                cat.one_cells[f].id, cat.objects[cat.one_cells[f].src], cat.objects[cat.one_cells[f].tgt]
            )
        })
        .collect();
    if !ones.is_empty() {
        out.push_str(&format!("  onecells: {};\n", ones.join(", ")));
    }
    let compose: Vec<String> = cat
        .one_compose
        .iter()
        .filter(|&(&(g, f), _)| !cat.is_identity_one(g) && !cat.is_identity_one(f))
        .map(|(&(g, f), &gf)| {
            format!("{}.{} = {}", cat.one_cells[g].id, cat.one_cells[f].id, cat.one_cells[gf].id)
        })
        .collect();
    if !compose.is_empty() {
        out.push_str(&format!("  compose: {};\n", compose.join(", ")));
    }
    let twos: Vec<String> = (0..cat.two_cells.len())
        .filter(|&a| !cat.is_identity_two(a))
        .map(|a| {
            format!(
                "{}: {} => {}",
                cat.two_cells[a].id, cat.one_cells[cat.two_cells[a].src].id, cat.one_cells[cat.two_cells[a].tgt].id
            )
        })
        .collect();
    if !twos.is_empty() {
        out.push_str(&format!("  twocells: {};\n", twos.join(", ")));
    }
    let vcomp: Vec<String> = cat
        .vcompose
        .iter()
        .filter(|&(&(b, a), _)| !cat.is_identity_two(b) && !cat.is_identity_two(a))
        .map(|(&(b, a), &r)| format!("{}.{} = {}", cat.two_cells[b].id, cat.two_cells[a].id, cat.two_cells[r].id))
        .collect();
    if !vcomp.is_empty() {
        out.push_str(&format!("  vcompose: {};\n", vcomp.join(", ")));
    }
    let wl: Vec<String> = cat
        .whisker_post
        .iter()
        .filter(|&(&(g, a), _)| !cat.is_identity_one(g) && !cat.is_identity_two(a))
        .map(|(&(g, a), &r)| format!("{}.{} = {}", cat.one_cells[g].id, cat.two_cells[a].id, cat.two_cells[r].id))
        .collect();
    if !wl.is_empty() {
        out.push_str(&format!("  whiskerl: {};\n", wl.join(", ")));
    }
    let wr: Vec<String> = cat
        .whisker_pre
        .iter()
        .filter(|&(&(a, e), _)| !cat.is_identity_two(a) && !cat.is_identity_one(e))
        .map(|(&(a, e), &r)| format!("{}.{} = {}", cat.two_cells[a].id, cat.one_cells[e].id, cat.two_cells[r].id))
        .collect();
    if !wr.is_empty() {
        out.push_str(&format!("  whiskerr: {};\n", wr.join(", ")));
    }
    let marked: Vec<String> = sigma
        .iter()
        .filter(|&&f| !cat.is_identity_one(f))
        .map(|&f| cat.one_cells[f].id.clone())
        .collect();
    if !marked.is_empty() {
        out.push_str(&format!("  sigma: {};\n", marked.join(", ")));
    }
    out.push_str("}\n");
}
