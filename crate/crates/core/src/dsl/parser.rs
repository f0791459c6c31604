//! Recursive-descent parser from tokens to raw declarations.

use super::ast::{AlgEntry, Expr, RawAlgDiagram, RawCategory, RawDecl, RawDiagram, RawFunctor, RawNatural, RawTwoCat};
use super::lexer::{lex, Pos, Tok};
use super::ParseError;

pub fn parse_decls(file: &str, text: &str) -> Result<Vec<RawDecl>, ParseError> {
    let toks = lex(file, text)?;
    let mut p = Parser {
        file: file.to_string(),
        toks,
        at: 0,
    };
    let mut decls = Vec::new();
    while !p.done() {
        decls.push(p.decl()?);
    }
    Ok(decls)
}

struct Parser {
    file: String,
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn done(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn pos(&self) -> Pos {
        self.toks
            .get(self.at)
            .map(|(_, p)| *p)
            .or_else(|| self.toks.last().map(|(_, p)| *p))
            .unwrap_or((1, 1))
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.pos();
        ParseError {
            file: self.file.clone(),
            line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let got = self.peek().cloned();
        match got {
            Some(t) if t == tok => {
                self.at += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {}, found {}", tok.describe(), t.describe()))),
            None => Err(self.err(format!("expected {}, found end of input", tok.describe()))),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.next()? {
            Tok::Ident(s) => Ok((s, pos)),
            t => Err(ParseError {
                file: self.file.clone(),
                line: pos.0,
                col: pos.1,
                message: format!("expected an identifier, found {}", t.describe()),
            }),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn decl(&mut self) -> Result<RawDecl, ParseError> {
        let (kw, pos) = self.ident()?;
        match kw.as_str() {
            "category" => self.category(pos).map(RawDecl::Category),
            "twocat" => self.twocat(pos).map(RawDecl::TwoCat),
            "functor" => self.functor(pos).map(RawDecl::Functor),
            "natural" => self.natural(pos).map(RawDecl::Natural),
            "diagram" => self.diagram(pos, false).map(RawDecl::Diagram),
            "weight" => self.diagram(pos, true).map(RawDecl::Diagram),
            "algdiagram" => self.algdiagram(pos).map(RawDecl::AlgDiagram),
            other => Err(ParseError {
                file: self.file.clone(),
                line: pos.0,
                col: pos.1,
                message: format!("unknown declaration keyword `{other}`"),
            }),
        }
    }

    /// `name, name, ...` (possibly empty, up to `;`).
    fn name_list(&mut self) -> Result<Vec<(String, Pos)>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Semi) {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(out)
    }

    /// `id: src -> tgt` entries separated by commas.
    fn arrow_list(&mut self, arrow: Tok) -> Result<Vec<(String, String, String, Pos)>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Semi) {
            return Ok(out);
        }
        loop {
            let (id, pos) = self.ident()?;
            self.expect(Tok::Colon)?;
            let (src, _) = self.ident()?;
            self.expect(arrow.clone())?;
            let (tgt, _) = self.ident()?;
            out.push((id, src, tgt, pos));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(out)
    }

    /// `a.b = c` entries separated by commas.
    fn equation_list(&mut self) -> Result<Vec<(String, String, String, Pos)>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Semi) {
            return Ok(out);
        }
        loop {
            let (a, pos) = self.ident()?;
            self.expect(Tok::Dot)?;
            let (b, _) = self.ident()?;
            self.expect(Tok::Eq)?;
            let (c, _) = self.ident()?;
            out.push((a, b, c, pos));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(out)
    }

    fn category(&mut self, pos: Pos) -> Result<RawCategory, ParseError> {
        let (name, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut cat = RawCategory {
            name,
            pos,
            objects: Vec::new(),
            arrows: Vec::new(),
            compose: Vec::new(),
        };
        while !self.eat(&Tok::RBrace) {
            let (section, spos) = self.ident()?;
            self.expect(Tok::Colon)?;
            match section.as_str() {
                "objects" => cat.objects.extend(self.name_list()?),
                "arrows" => cat.arrows.extend(self.arrow_list(Tok::Arrow)?),
                "compose" => cat.compose.extend(self.equation_list()?),
                other => {
                    return Err(ParseError {
                        file: self.file.clone(),
                        line: spos.0,
                        col: spos.1,
                        message: format!("unknown category section `{other}`"),
                    })
                }
            }
            self.expect(Tok::Semi)?;
        }
        Ok(cat)
    }

    fn twocat(&mut self, pos: Pos) -> Result<RawTwoCat, ParseError> {
        let (name, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut tc = RawTwoCat {
            name,
            pos,
            objects: Vec::new(),
            onecells: Vec::new(),
            compose: Vec::new(),
            twocells: Vec::new(),
            vcompose: Vec::new(),
            whiskerl: Vec::new(),
            whiskerr: Vec::new(),
            sigma: Vec::new(),
        };
        while !self.eat(&Tok::RBrace) {
            let (section, spos) = self.ident()?;
            self.expect(Tok::Colon)?;
            match section.as_str() {
                "objects" => tc.objects.extend(self.name_list()?),
                "onecells" => tc.onecells.extend(self.arrow_list(Tok::Arrow)?),
                "compose" => tc.compose.extend(self.equation_list()?),
                "twocells" => tc.twocells.extend(self.arrow_list(Tok::FatArrow)?),
                "vcompose" => tc.vcompose.extend(self.equation_list()?),
                "whiskerl" => tc.whiskerl.extend(self.equation_list()?),
                "whiskerr" => tc.whiskerr.extend(self.equation_list()?),
                "sigma" => tc.sigma.extend(self.name_list()?),
                other => {
                    return Err(ParseError {
                        file: self.file.clone(),
                        line: spos.0,
                        col: spos.1,
                        message: format!("unknown twocat section `{other}`"),
                    })
                }
            }
            self.expect(Tok::Semi)?;
        }
        Ok(tc)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut parts = vec![self.expr_atom()?];
        while self.eat(&Tok::Dot) {
            parts.push(self.expr_atom()?);
        }
        // `a.b.c` composes right-to-left: a ∘ (b ∘ c) — associativity of the
        // resolved functors makes the grouping immaterial, but pick one.
        let mut expr = parts.pop().expect("at least one atom");
        while let Some(prev) = parts.pop() {
            expr = Expr::Compose(Box::new(prev), Box::new(expr));
        }
        Ok(expr)
    }

    fn expr_atom(&mut self) -> Result<Expr, ParseError> {
        let (name, _) = self.ident()?;
        if self.eat(&Tok::LParen) {
            let inner = self.expr()?;
            self.expect(Tok::RParen)?;
            match name.as_str() {
                "id" => Ok(Expr::Id(Box::new(inner))),
                "id2" => Ok(Expr::Id2(Box::new(inner))),
                _ => Ok(Expr::Apply(name, Box::new(inner))),
            }
        } else {
            Ok(Expr::Name(name))
        }
    }

    fn mapping_body(&mut self) -> Result<Vec<(String, String, Pos)>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let (lhs, pos) = self.ident()?;
            self.expect(Tok::MapsTo)?;
            let (rhs, _) = self.ident()?;
            self.expect(Tok::Semi)?;
            out.push((lhs, rhs, pos));
        }
        Ok(out)
    }

    fn functor(&mut self, pos: Pos) -> Result<RawFunctor, ParseError> {
        let (name, _) = self.ident()?;
        self.expect(Tok::Colon)?;
        let dom = self.expr()?;
        self.expect(Tok::Arrow)?;
        let cod = self.expr()?;
        let entries = self.mapping_body()?;
        Ok(RawFunctor {
            name,
            pos,
            dom,
            cod,
            entries,
        })
    }

    fn natural(&mut self, pos: Pos) -> Result<RawNatural, ParseError> {
        let (name, _) = self.ident()?;
        self.expect(Tok::Colon)?;
        let dom = self.expr()?;
        self.expect(Tok::FatArrow)?;
        let cod = self.expr()?;
        let entries = self.mapping_body()?;
        Ok(RawNatural {
            name,
            pos,
            dom,
            cod,
            entries,
        })
    }

    fn diagram(&mut self, pos: Pos, weight: bool) -> Result<RawDiagram, ParseError> {
        let (name, _) = self.ident()?;
        self.expect(Tok::Colon)?;
        let (shape, _) = self.ident()?;
        self.expect(Tok::Arrow)?;
        let (cat_kw, kpos) = self.ident()?;
        if cat_kw != "cat" {
            return Err(ParseError {
                file: self.file.clone(),
                line: kpos.0,
                col: kpos.1,
                message: format!("diagrams land in `cat`, found `{cat_kw}`"),
            });
        }
        self.expect(Tok::LBrace)?;
        let mut entries = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let (lhs, epos) = self.ident()?;
            self.expect(Tok::MapsTo)?;
            let rhs = self.expr()?;
            self.expect(Tok::Semi)?;
            entries.push((lhs, rhs, epos));
        }
        Ok(RawDiagram {
            name,
            pos,
            shape,
            weight,
            entries,
        })
    }

    fn algdiagram(&mut self, pos: Pos) -> Result<RawAlgDiagram, ParseError> {
        let (name, _) = self.ident()?;
        self.expect(Tok::Colon)?;
        let (shape, _) = self.ident()?;
        let (kw, kpos) = self.ident()?;
        if kw != "monad" {
            return Err(ParseError {
                file: self.file.clone(),
                line: kpos.0,
                col: kpos.1,
                message: format!("expected `monad`, found `{kw}`"),
            });
        }
        let (monad, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut entries = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let (lhs, epos) = self.ident()?;
            self.expect(Tok::MapsTo)?;
            let entry = if self.eat(&Tok::LParen) {
                let first = self.expr()?;
                self.expect(Tok::Comma)?;
                let second = self.expr()?;
                self.expect(Tok::RParen)?;
                AlgEntry::Pair(first, second)
            } else {
                AlgEntry::Single(self.expr()?)
            };
            self.expect(Tok::Semi)?;
            entries.push((lhs, entry, epos));
        }
        Ok(RawAlgDiagram {
            name,
            pos,
            shape,
            monad,
            entries,
        })
    }
}
