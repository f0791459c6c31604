//! Small stock categories and shapes used by tests, the corpus, and the
//! default universal-property vertex set.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::fincat::{Arrow, FinCategory, Functor};

/// The terminal category `1`.
pub fn terminal() -> FinCategory {
    FinCategory {
        objects: vec!["*".into()],
        arrows: vec![Arrow {
            id: "id_*".into(),
            src: 0,
            tgt: 0,
        }],
        identity: vec![0],
        compose: BTreeMap::from([((0, 0), 0)]),
    }
}

/// The walking arrow `2`: objects 0, 1 and one arrow `u : 0 -> 1`.
pub fn walking_arrow() -> FinCategory {
    let mut compose = BTreeMap::new();
    // arrows: 0 = id_0, 1 = id_1, 2 = u
    compose.insert((0, 0), 0);
    compose.insert((1, 1), 1);
    compose.insert((2, 0), 2);
    compose.insert((1, 2), 2);
    FinCategory {
        objects: vec!["0".into(), "1".into()],
        arrows: vec![
            Arrow { id: "id_0".into(), src: 0, tgt: 0 },
            Arrow { id: "id_1".into(), src: 1, tgt: 1 },
            Arrow { id: "u".into(), src: 0, tgt: 1 },
        ],
        identity: vec![0, 1],
        compose,
    }
}

/// Discrete category on the given object names.
pub fn discrete(names: &[&str]) -> FinCategory {
    FinCategory {
        objects: names.iter().map(|s| s.to_string()).collect(),
        arrows: names
            .iter()
            .enumerate()
            .map(|(i, s)| Arrow {
                id: format!("id_{s}"),
                src: i,
                tgt: i,
            })
            .collect(),
        identity: (0..names.len()).collect(),
        compose: (0..names.len()).map(|i| ((i, i), i)).collect(),
    }
}

/// Two objects with a parallel pair of arrows `u0, u1 : a -> b`.
pub fn parallel_pair() -> FinCategory {
    let mut compose = BTreeMap::new();
    // arrows: 0 = id_a, 1 = id_b, 2 = u0, 3 = u1
    compose.insert((0, 0), 0);
    compose.insert((1, 1), 1);
    compose.insert((2, 0), 2);
    compose.insert((1, 2), 2);
    compose.insert((3, 0), 3);
    compose.insert((1, 3), 3);
    FinCategory {
        objects: vec!["a".into(), "b".into()],
        arrows: vec![
            Arrow { id: "id_a".into(), src: 0, tgt: 0 },
            Arrow { id: "id_b".into(), src: 1, tgt: 1 },
            Arrow { id: "u0".into(), src: 0, tgt: 1 },
            Arrow { id: "u1".into(), src: 0, tgt: 1 },
        ],
        identity: vec![0, 1],
        compose,
    }
}

/// The walking isomorphism: objects x, y with mutually inverse `i`, `j`.
pub fn walking_iso() -> FinCategory {
    let mut compose = BTreeMap::new();
    // arrows: 0 = id_x, 1 = id_y, 2 = i : x -> y, 3 = j : y -> x
    compose.insert((0, 0), 0);
    compose.insert((1, 1), 1);
    compose.insert((2, 0), 2);
    compose.insert((1, 2), 2);
    compose.insert((3, 1), 3);
    compose.insert((0, 3), 3);
    compose.insert((3, 2), 0);
    compose.insert((2, 3), 1);
    FinCategory {
        objects: vec!["x".into(), "y".into()],
        arrows: vec![
            Arrow { id: "id_x".into(), src: 0, tgt: 0 },
            Arrow { id: "id_y".into(), src: 1, tgt: 1 },
            Arrow { id: "i".into(), src: 0, tgt: 1 },
            Arrow { id: "j".into(), src: 1, tgt: 0 },
        ],
        identity: vec![0, 1],
        compose,
    }
}

/// One object with a non-identity idempotent endomorphism `t`.
pub fn walking_idempotent() -> FinCategory {
    let mut compose = BTreeMap::new();
    // arrows: 0 = id_e, 1 = t with t∘t = t
    compose.insert((0, 0), 0);
    compose.insert((1, 0), 1);
    compose.insert((0, 1), 1);
    compose.insert((1, 1), 1);
    FinCategory {
        objects: vec!["e".into()],
        arrows: vec![
            Arrow { id: "id_e".into(), src: 0, tgt: 0 },
            Arrow { id: "t".into(), src: 0, tgt: 0 },
        ],
        identity: vec![0],
        compose,
    }
}

/// Disjoint union of categories, with object/arrow ids prefixed per summand
/// when they would collide.
pub fn disjoint_union(parts: &[&FinCategory]) -> FinCategory {
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let mut identity = Vec::new();
    let mut compose = BTreeMap::new();
    let collision = {
        let mut names: Vec<&str> = parts.iter().flat_map(|c| c.objects.iter().map(|s| s.as_str())).collect();
        let n = names.len();
        names.sort_unstable();
        names.dedup();
        names.len() != n
    };
    for (k, c) in parts.iter().enumerate() {
        let obj_off = objects.len();
        let arr_off = arrows.len();
        let rename = |s: &str| if collision { format!("{k}_{s}") } else { s.to_string() };
        for o in &c.objects {
            objects.push(rename(o));
        }
        for a in &c.arrows {
            arrows.push(Arrow {
                id: rename(&a.id),
                src: a.src + obj_off,
                tgt: a.tgt + obj_off,
            });
        }
        for &i in &c.identity {
            identity.push(i + arr_off);
        }
        for (g, f, gf) in c.composable_pairs() {
            compose.insert((g + arr_off, f + arr_off), gf + arr_off);
        }
    }
    FinCategory {
        objects,
        arrows,
        identity,
        compose,
    }
}

/// Constant functor at an object.
pub fn const_functor(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, at: usize) -> Functor {
    Functor {
        dom: dom.clone(),
        cod: cod.clone(),
        on_objects: vec![at; dom.object_count()],
        on_arrows: vec![cod.identity[at]; dom.arrow_count()],
    }
}

/// Default vertex corpus for universal-property checks: every member has at
/// most 2 objects and 4 arrows.
pub fn default_vertices() -> Vec<Arc<FinCategory>> {
    vec![
        Arc::new(terminal()),
        Arc::new(walking_arrow()),
        Arc::new(discrete(&["p", "q"])),
        Arc::new(parallel_pair()),
    ]
}
