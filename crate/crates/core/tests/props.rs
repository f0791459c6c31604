//! Property tests over randomly generated thin categories (preorders whose
//! reflexive-transitive closure makes composition total and forced).

mod common;

use proptest::prelude::*;

use pielift::dsl::{parse_workspace, print};
use pielift::fincat::{enumerate_functors, inserter, product, validate_category};

/// A random preorder on up to 4 objects, as a reachability matrix.
fn preorder(n: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), n).prop_map(move |mut rel| {
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        // Reflexive-transitive closure.
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        rel
    })
}

/// Renders the thin category of a preorder in the workspace format.
fn thin_category_text(name: &str, rel: &[Vec<bool>]) -> String {
    let n = rel.len();
    let obj = |i: usize| format!("o{i}");
    let arr = |i: usize, j: usize| format!("a{i}{j}");
    let mut text = format!("category {name} {{\n");
    text.push_str(&format!(
        "  objects: {};\n",
        (0..n).map(obj).collect::<Vec<_>>().join(", ")
    ));
    let mut arrows = Vec::new();
    for (i, row) in rel.iter().enumerate() {
        for (j, &related) in row.iter().enumerate() {
            if related && i != j {
                arrows.push(format!("{}: {} -> {}", arr(i, j), obj(i), obj(j)));
            }
        }
    }
    if !arrows.is_empty() {
        text.push_str(&format!("  arrows: {};\n", arrows.join(", ")));
    }
    let mut compose = Vec::new();
    for (i, row) in rel.iter().enumerate() {
        for (j, &ij) in row.iter().enumerate() {
            for (k, &jk) in rel[j].iter().enumerate() {
                if i != j && j != k && ij && jk {
                    let composite = if i == k { format!("id_{}", obj(i)) } else { arr(i, k) };
                    compose.push(format!("{}.{} = {}", arr(j, k), arr(i, j), composite));
                }
            }
        }
    }
    if !compose.is_empty() {
        text.push_str(&format!("  compose: {};\n", compose.join(", ")));
    }
    text.push_str("}\n");
    text
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Arbitrary input never panics the parser; it either resolves or
    /// reports a positioned error.
    #[test]
    fn parser_total_on_arbitrary_text(text in "[ -~\n]{0,200}") {
        let _ = parse_workspace(&text);
    }

    #[test]
    fn thin_categories_validate_and_round_trip(rel in (1usize..=4).prop_flat_map(preorder)) {
        let text = thin_category_text("thin", &rel);
        let ws = parse_workspace(&text).expect("thin categories are valid");
        let cat = &ws.categories["thin"];
        prop_assert!(validate_category(cat).is_empty());
        let printed = print(&ws);
        let ws2 = parse_workspace(&printed).expect("printed text reparses");
        prop_assert_eq!(&ws, &ws2);
    }

    #[test]
    fn products_of_thin_categories_validate(
        rel1 in (1usize..=3).prop_flat_map(preorder),
        rel2 in (1usize..=3).prop_flat_map(preorder),
    ) {
        let a = parse_workspace(&thin_category_text("a", &rel1)).unwrap().categories["a"].clone();
        let b = parse_workspace(&thin_category_text("b", &rel2)).unwrap().categories["b"].clone();
        let p = product(&[a.clone(), b.clone()]);
        prop_assert!(p.category.validate().is_empty());
        prop_assert_eq!(p.category.object_count(), a.object_count() * b.object_count());
        prop_assert_eq!(p.category.arrow_count(), a.arrow_count() * b.arrow_count());
        for proj in &p.projections {
            prop_assert!(proj.validate().is_empty());
        }
    }

    #[test]
    fn enumerated_functors_are_functors_and_inserters_validate(
        rel1 in (1usize..=2).prop_flat_map(preorder),
        rel2 in (1usize..=3).prop_flat_map(preorder),
    ) {
        let c = parse_workspace(&thin_category_text("c", &rel1)).unwrap().categories["c"].clone();
        let d = parse_workspace(&thin_category_text("d", &rel2)).unwrap().categories["d"].clone();
        let functors = enumerate_functors(&c, &d);
        for f in &functors {
            prop_assert!(f.validate().is_empty());
        }
        // Inserters of the first few parallel pairs.
        for f in functors.iter().take(3) {
            for g in functors.iter().take(3) {
                let ins = inserter(f, g);
                prop_assert!(ins.category.validate().is_empty());
                prop_assert!(ins.projection.validate().is_empty());
                prop_assert!(ins.canonical.validate().is_empty());
            }
        }
    }
}
