//! The stock indexing shapes: product, inserter, equifier, inverter,
//! cotensor and comma, each with its marked family Σ.

use crate::two_cat::{SigmaFamily, TwoCatBuilder, TwoCategory};

/// Discrete shape on two objects; Σ is identities only.
pub fn product_shape() -> (TwoCategory, SigmaFamily) {
    TwoCatBuilder::new(&["A", "B"]).build()
}

/// Two objects with a parallel pair `f, g : A -> B`, `f` marked.
pub fn inserter_shape() -> (TwoCategory, SigmaFamily) {
    TwoCatBuilder::new(&["A", "B"])
        .one_cell("f", "A", "B")
        .one_cell("g", "A", "B")
        .sigma("f")
        .build()
}

/// Inserter shape plus a parallel pair of 2-cells `al, be : f ⇒ g`.
pub fn equifier_shape() -> (TwoCategory, SigmaFamily) {
    TwoCatBuilder::new(&["A", "B"])
        .one_cell("f", "A", "B")
        .one_cell("g", "A", "B")
        .two_cell("al", "f", "g")
        .two_cell("be", "f", "g")
        .sigma("f")
        .build()
}

/// Inverter shape: marked `f : A -> B` and `g : A -> C`, an equivalence pair
/// `h : B -> C`, `k : C -> B` with `kh = id_B`, `hk = id_C`, and a 2-cell
/// `al : f ⇒ kg` (whence `ha = h ⋆ al : hf ⇒ g`).
pub fn inverter_shape() -> (TwoCategory, SigmaFamily) {
    TwoCatBuilder::new(&["A", "B", "C"])
        .one_cell("f", "A", "B")
        .one_cell("g", "A", "C")
        .one_cell("h", "B", "C")
        .one_cell("k", "C", "B")
        .one_cell("hf", "A", "C")
        .one_cell("kg", "A", "B")
        .compose("h", "f", "hf")
        .compose("k", "g", "kg")
        .compose("h", "k", "id_C")
        .compose("k", "h", "id_B")
        .compose("h", "kg", "g")
        .compose("k", "hf", "f")
        .two_cell("al", "f", "kg")
        .two_cell("ha", "hf", "g")
        .whisker_post("h", "al", "ha")
        .whisker_post("k", "ha", "al")
        .sigma("f")
        .sigma("g")
        .build()
}

/// Cotensor shape for the walking arrow: two objects and one unmarked
/// 1-cell; Σ is identities only, so every object is its own component.
pub fn cotensor_shape() -> (TwoCategory, SigmaFamily) {
    TwoCatBuilder::new(&["P", "Q"]).one_cell("v", "Q", "P").build()
}

/// Comma shape: `f : A -> B` unmarked, `g : C -> B` marked.
pub fn comma_shape() -> (TwoCategory, SigmaFamily) {
    TwoCatBuilder::new(&["A", "B", "C"])
        .one_cell("f", "A", "B")
        .one_cell("g", "C", "B")
        .sigma("g")
        .build()
}

/// All six shapes, keyed by name, in a fixed order.
pub fn all_shapes() -> Vec<(&'static str, (TwoCategory, SigmaFamily))> {
    vec![
        ("product", product_shape()),
        ("inserter", inserter_shape()),
        ("equifier", equifier_shape()),
        ("inverter", inverter_shape()),
        ("cotensor", cotensor_shape()),
        ("comma", comma_shape()),
    ]
}

/// A shape with a genuine horizontal composite, used to plant interchange
/// faults in tests: 2-cells `al : f ⇒ f2 : A -> B` and `be : g ⇒ g2 : B -> C`
/// whose two whiskering routes are recorded as `h1` (and a floating parallel
/// cell `h2` that a corrupted table can point at).
pub fn interchange_test_shape() -> (TwoCategory, SigmaFamily) {
    TwoCatBuilder::new(&["A", "B", "C"])
        .one_cell("f", "A", "B")
        .one_cell("f2", "A", "B")
        .one_cell("g", "B", "C")
        .one_cell("g2", "B", "C")
        .one_cell("gf", "A", "C")
        .one_cell("gf2", "A", "C")
        .one_cell("g2f", "A", "C")
        .one_cell("g2f2", "A", "C")
        .compose("g", "f", "gf")
        .compose("g", "f2", "gf2")
        .compose("g2", "f", "g2f")
        .compose("g2", "f2", "g2f2")
        .two_cell("al", "f", "f2")
        .two_cell("be", "g", "g2")
        .two_cell("w1", "gf", "gf2")
        .two_cell("w2", "gf", "g2f")
        .two_cell("w3", "g2f", "g2f2")
        .two_cell("w4", "gf2", "g2f2")
        .two_cell("h1", "gf", "g2f2")
        .two_cell("h2", "gf", "g2f2")
        .whisker_post("g", "al", "w1")
        .whisker_post("g2", "al", "w3")
        .whisker_pre("be", "f", "w2")
        .whisker_pre("be", "f2", "w4")
        .vcomp("w4", "w1", "h1")
        .vcomp("w3", "w2", "h1")
        .build()
}
