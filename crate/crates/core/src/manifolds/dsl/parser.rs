use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use crate::algebras::Side;
use crate::error::{Error, Result, Span};

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn merge(a: Span, b: Span) -> Span {
    if a.line == b.line {
        Span::new(a.line, a.column, b.column + b.len - a.column)
    } else {
        a
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn last_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        let t = self.peek();
        Err(Error::Syntax {
            span: t.span,
            message: format!("expected {expected}, found {}", t.tok.describe()),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Span> {
        if self.peek().tok == tok {
            Ok(self.next().span)
        } else {
            self.error(&tok.describe())
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<Span> {
        if self.is_keyword(kw) {
            Ok(self.next().span)
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn one_of(&mut self, kws: &[&str]) -> Result<(String, Span)> {
        if let Tok::Ident(s) = &self.peek().tok {
            if kws.contains(&s.as_str()) {
                let s = s.clone();
                return Ok((s, self.next().span));
            }
        }
        let list: Vec<String> = kws.iter().map(|k| format!("`{k}`")).collect();
        self.error(&list.join(" or "))
    }

    fn ident(&mut self) -> Result<Ident> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let name = s.clone();
                let span = self.next().span;
                Ok(Ident { name, span })
            }
            _ => self.error("a name"),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            _ => self.error("a non-negative integer"),
        }
    }

    fn small<T: TryFrom<u64>>(&mut self) -> Result<T> {
        let span = self.peek().span;
        let n = self.uint()?;
        T::try_from(n).map_err(|_| Error::Syntax {
            span,
            message: format!("integer {n} is out of range"),
        })
    }

    fn sint(&mut self) -> Result<i64> {
        let neg = self.eat(&Tok::Minus);
        let span = self.peek().span;
        let n = self.uint()?;
        let n = i64::try_from(n).map_err(|_| Error::Syntax {
            span,
            message: format!("integer {n} is out of range"),
        })?;
        Ok(if neg { -n } else { n })
    }

    fn rational(&mut self) -> Result<BigRational> {
        let neg = self.eat(&Tok::Minus);
        let r = self.unsigned_rational()?;
        Ok(if neg { -r } else { r })
    }

    fn unsigned_rational(&mut self) -> Result<BigRational> {
        let num = BigInt::from(self.uint()?);
        if !self.eat(&Tok::Slash) {
            return Ok(BigRational::from_integer(num));
        }
        let span = self.peek().span;
        let d = self.uint()?;
        if d == 0 {
            return Err(Error::Syntax {
                span,
                message: "zero denominator".into(),
            });
        }
        Ok(BigRational::new(num, BigInt::from(d)))
    }

    fn end_of_statement(&mut self) -> Result<()> {
        match self.peek().tok {
            Tok::Newline => {
                self.next();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.error("end of line"),
        }
    }

    fn skip_newlines(&mut self) {
        while self.eat(&Tok::Newline) {}
    }

    fn program(&mut self) -> Result<Program> {
        let mut stmts = Vec::new();
        loop {
            self.skip_newlines();
            if self.peek().tok == Tok::Eof {
                return Ok(Program { stmts });
            }
            let start = self.peek().span;
            let stmt = self.statement()?;
            let span = merge(start, self.last_span());
            self.end_of_statement()?;
            stmts.push((stmt, span));
        }
    }

    fn statement(&mut self) -> Result<Stmt> {
        let (kw, _) = self.one_of(&["field", "algebra", "module", "manifold", "compute", "check"])?;
        match kw.as_str() {
            "field" => {
                let (f, _) = self.one_of(&["Q", "Fp"])?;
                if f == "Q" {
                    Ok(Stmt::Field(FieldDecl::Q))
                } else {
                    Ok(Stmt::Field(FieldDecl::Fp(self.uint()?)))
                }
            }
            "algebra" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let (how, _) = self.one_of(&["preset", "table"])?;
                let def = if how == "preset" { self.preset()? } else { self.table()? };
                Ok(Stmt::Algebra { name, def })
            }
            "module" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let (k, _) = self.one_of(&["regular", "aug"])?;
                let (s, _) = self.one_of(&["left", "right"])?;
                let algebra = self.ident()?;
                Ok(Stmt::Module {
                    name,
                    kind: if k == "regular" { ModuleKindDecl::Regular } else { ModuleKindDecl::Aug },
                    side: if s == "left" { Side::Left } else { Side::Right },
                    algebra,
                })
            }
            "manifold" => {
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let (shape, _) = self.one_of(&["circle", "interval", "disjoint"])?;
                let def = match shape.as_str() {
                    "circle" => ManifoldDef::Circle(self.ident()?),
                    "interval" => {
                        let algebra = self.ident()?;
                        self.keyword("left")?;
                        self.expect(Tok::Eq)?;
                        let left = self.ident()?;
                        self.keyword("right")?;
                        self.expect(Tok::Eq)?;
                        let right = self.ident()?;
                        ManifoldDef::Interval { algebra, left, right }
                    }
                    _ => {
                        self.expect(Tok::LParen)?;
                        let mut parts = vec![self.ident()?];
                        while self.eat(&Tok::Comma) {
                            parts.push(self.ident()?);
                        }
                        self.expect(Tok::RParen)?;
                        ManifoldDef::Disjoint(parts)
                    }
                };
                Ok(Stmt::Manifold { name, def })
            }
            "compute" => {
                self.keyword("facthom")?;
                let manifold = self.ident()?;
                self.keyword("maxdeg")?;
                let max_deg = self.uint()?;
                let json = self.is_keyword("json");
                if json {
                    self.next();
                }
                Ok(Stmt::Compute { manifold, max_deg, json })
            }
            _ => {
                self.keyword("excision")?;
                let algebra = self.ident()?;
                self.keyword("maxdeg")?;
                let max_deg = self.uint()?;
                Ok(Stmt::CheckExcision { algebra, max_deg })
            }
        }
    }

    fn preset(&mut self) -> Result<AlgebraDef> {
        let kind = self.ident()?;
        self.expect(Tok::LParen)?;
        let mut params = Vec::new();
        if self.peek().tok != Tok::RParen {
            params.push(self.sint()?);
            while self.eat(&Tok::Comma) {
                params.push(self.sint()?);
            }
        }
        self.expect(Tok::RParen)?;
        let max_weight = if self.is_keyword("maxweight") {
            self.next();
            Some(self.small()?)
        } else {
            None
        };
        Ok(AlgebraDef::Preset { kind, params, max_weight })
    }

    fn table(&mut self) -> Result<AlgebraDef> {
        self.expect(Tok::LBrace)?;
        let mut lines = Vec::new();
        loop {
            self.skip_newlines();
            if self.eat(&Tok::RBrace) {
                return Ok(AlgebraDef::Table(lines));
            }
            lines.push(self.table_line()?);
            if self.peek().tok != Tok::RBrace {
                self.expect(Tok::Newline)?;
            }
        }
    }

    fn table_line(&mut self) -> Result<TableLine> {
        let (kw, _) = self.one_of(&["basis", "mult", "unit", "aug", "commutative", "maxweight"])?;
        Ok(match kw.as_str() {
            "basis" => {
                let label = self.ident()?;
                self.keyword("deg")?;
                let degree = self.sint()?;
                let weight = if self.is_keyword("weight") {
                    self.next();
                    Some(self.small()?)
                } else {
                    None
                };
                TableLine::Basis { label, degree, weight }
            }
            "mult" => {
                let left = self.ident()?;
                self.expect(Tok::Star)?;
                let right = self.ident()?;
                self.expect(Tok::Eq)?;
                TableLine::Mult { left, right, value: self.combo()? }
            }
            "unit" => TableLine::Unit(self.ident()?),
            "aug" => {
                let label = self.ident()?;
                self.expect(Tok::Arrow)?;
                TableLine::Aug { label, value: self.rational()? }
            }
            "commutative" => TableLine::Commutative,
            _ => TableLine::MaxWeight(self.small()?),
        })
    }

    /// `0`, or signed terms `c label` / `label` joined by `+` and `-`.
    fn combo(&mut self) -> Result<Combo> {
        let ends = |t: &Tok| matches!(t, Tok::Newline | Tok::RBrace | Tok::Eof);
        if self.peek().tok == Tok::Int(0) && ends(&self.toks[self.pos + 1].tok) {
            self.next();
            return Ok(Combo::default());
        }
        let mut terms = Vec::new();
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let coef = match self.peek().tok {
                Tok::Int(_) => self.unsigned_rational()?,
                _ => BigRational::from_integer(1.into()),
            };
            let label = self.ident()?;
            terms.push((if negative { -coef } else { coef }, label));
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                return Ok(Combo { terms });
            }
        }
    }
}

/// Parses DSL source into its syntax tree.
pub fn parse(source: &str) -> Result<Program> {
    let toks = lex(source)?;
    Parser { toks, pos: 0 }.program()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_canonically() {
        let src = "field Fp 5\n\
                   algebra B = table {\n  basis e deg 0 weight 0\n  basis x deg 1 weight 1\n  mult x*x = 0\n  mult e*x = x\n  unit e\n  aug x -> -1/2\n  maxweight 3\n}\n\
                   algebra A = preset squarezero(1,0) maxweight 4\n\
                   module L = regular left A\n\
                   module R = aug right A\n\
                   manifold M = circle A\n\
                   manifold I = interval A left=R right=L\n\
                   manifold D = disjoint(M, I)\n\
                   compute facthom D maxdeg 4 json\n\
                   check excision A maxdeg 3\n";
        let p = parse(src).unwrap();
        assert_eq!(p.to_string(), src);
        assert_eq!(p.stmts.len(), 10);
        assert_eq!(p.stmts[2].1, Span::new(11, 1, 46));
    }

    #[test]
    fn combos() {
        let p = parse("algebra B = table {\nmult x*y = 2 x - y + 1/3 z\n}").unwrap();
        let Stmt::Algebra { def: AlgebraDef::Table(lines), .. } = &p.stmts[0].0 else { panic!() };
        assert_eq!(lines[0].to_string(), "mult x*y = 2 x - y + 1/3 z");
        assert!(parse("algebra B = table {\nmult x*y = 2 +\n}").is_err());
        assert!(parse("algebra B = table {\nmult x*y =\n}").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse("# header\n\nfield Q   # rational\n\n").unwrap();
        assert_eq!(p.to_string(), "field Q\n");
        assert!(parse("").unwrap().stmts.is_empty());
    }

    #[test]
    fn syntax_errors_have_spans() {
        let e = parse("field Q\nmanifold M = sphere A").unwrap_err();
        assert_eq!(e.span(), Some(Span::new(2, 14, 6)));
        let e = parse("compute facthom M maxdeg four").unwrap_err();
        assert_eq!(e.span(), Some(Span::new(1, 26, 4)));
        let e = parse("field Q Q").unwrap_err();
        assert!(matches!(e, Error::Syntax { .. }));
    }
}
