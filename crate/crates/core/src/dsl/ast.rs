//! Syntax tree of the workspace format, prior to name resolution.

use super::lexer::Pos;

/// An expression naming a category, functor or natural transformation; the
/// surrounding declaration fixes which kind is expected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    /// `id(<category>)`: an identity functor.
    Id(Box<Expr>),
    /// `id2(<functor>)`: an identity natural transformation.
    Id2(Box<Expr>),
    /// `<monad>(<category or functor>)`.
    Apply(String, Box<Expr>),
    /// `g.f`: composition of functors.
    Compose(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn print(&self) -> String {
        match self {
            Expr::Name(s) => s.clone(),
            Expr::Id(e) => format!("id({})", e.print()),
            Expr::Id2(e) => format!("id2({})", e.print()),
            Expr::Apply(m, e) => format!("{m}({})", e.print()),
            Expr::Compose(a, b) => format!("{}.{}", a.print(), b.print()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawCategory {
    pub name: String,
    pub pos: Pos,
    pub objects: Vec<(String, Pos)>,
    /// `(id, src, tgt, pos)`.
    pub arrows: Vec<(String, String, String, Pos)>,
    /// `(g, f, gf, pos)` meaning `g∘f = gf`.
    pub compose: Vec<(String, String, String, Pos)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawTwoCat {
    pub name: String,
    pub pos: Pos,
    pub objects: Vec<(String, Pos)>,
    pub onecells: Vec<(String, String, String, Pos)>,
    pub compose: Vec<(String, String, String, Pos)>,
    /// `(id, src 1-cell, tgt 1-cell, pos)`.
    pub twocells: Vec<(String, String, String, Pos)>,
    pub vcompose: Vec<(String, String, String, Pos)>,
    /// Post-whisker entries `g.al = r`.
    pub whiskerl: Vec<(String, String, String, Pos)>,
    /// Pre-whisker entries `al.e = r`.
    pub whiskerr: Vec<(String, String, String, Pos)>,
    pub sigma: Vec<(String, Pos)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawFunctor {
    pub name: String,
    pub pos: Pos,
    pub dom: Expr,
    pub cod: Expr,
    /// `lhs |-> rhs` entries over objects and arrows of the domain.
    pub entries: Vec<(String, String, Pos)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawNatural {
    pub name: String,
    pub pos: Pos,
    pub dom: Expr,
    pub cod: Expr,
    pub entries: Vec<(String, String, Pos)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawDiagram {
    pub name: String,
    pub pos: Pos,
    pub shape: String,
    pub weight: bool,
    pub entries: Vec<(String, Expr, Pos)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgEntry {
    /// `(carrier, structure functor)`.
    Pair(Expr, Expr),
    /// A plain expression (for 2-cells).
    Single(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawAlgDiagram {
    pub name: String,
    pub pos: Pos,
    pub shape: String,
    pub monad: String,
    pub entries: Vec<(String, AlgEntry, Pos)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RawDecl {
    Category(RawCategory),
    TwoCat(RawTwoCat),
    Functor(RawFunctor),
    Natural(RawNatural),
    Diagram(RawDiagram),
    AlgDiagram(RawAlgDiagram),
}

impl RawDecl {
    pub fn name(&self) -> &str {
        match self {
            RawDecl::Category(d) => &d.name,
            RawDecl::TwoCat(d) => &d.name,
            RawDecl::Functor(d) => &d.name,
            RawDecl::Natural(d) => &d.name,
            RawDecl::Diagram(d) => &d.name,
            RawDecl::AlgDiagram(d) => &d.name,
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            RawDecl::Category(d) => d.pos,
            RawDecl::TwoCat(d) => d.pos,
            RawDecl::Functor(d) => d.pos,
            RawDecl::Natural(d) => d.pos,
            RawDecl::Diagram(d) => d.pos,
            RawDecl::AlgDiagram(d) => d.pos,
        }
    }
}
