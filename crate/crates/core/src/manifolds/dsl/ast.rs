use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::Span;

/// A name together with where it was written.
#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident {
            name: name.into(),
            span: Span::default(),
        }
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDecl {
    Q,
    Fp(u64),
}

/// Σ cᵢ·labelᵢ with rational coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Combo {
    pub terms: Vec<(BigRational, Ident)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TableLine {
    Basis { label: Ident, degree: i64, weight: Option<u32> },
    Mult { left: Ident, right: Ident, value: Combo },
    Unit(Ident),
    Aug { label: Ident, value: BigRational },
    Commutative,
    MaxWeight(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraDef {
    Preset { kind: Ident, params: Vec<i64>, max_weight: Option<u32> },
    Table(Vec<TableLine>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKindDecl {
    Regular,
    Aug,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ManifoldDef {
    Circle(Ident),
    Interval { algebra: Ident, left: Ident, right: Ident },
    Disjoint(Vec<Ident>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Field(FieldDecl),
    Algebra { name: Ident, def: AlgebraDef },
    Module { name: Ident, kind: ModuleKindDecl, side: crate::algebras::Side, algebra: Ident },
    Manifold { name: Ident, def: ManifoldDef },
    Compute { manifold: Ident, max_deg: u64, json: bool },
    CheckExcision { algebra: Ident, max_deg: u64 },
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Program {
    pub stmts: Vec<(Stmt, Span)>,
}

pub(crate) fn show_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (c, label)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{} ", show_rational(&abs))?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

impl fmt::Display for TableLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableLine::Basis { label, degree, weight } => {
                write!(f, "basis {label} deg {degree}")?;
                if let Some(w) = weight {
                    write!(f, " weight {w}")?;
                }
                Ok(())
            }
            TableLine::Mult { left, right, value } => write!(f, "mult {left}*{right} = {value}"),
            TableLine::Unit(l) => write!(f, "unit {l}"),
            TableLine::Aug { label, value } => write!(f, "aug {label} -> {}", show_rational(value)),
            TableLine::Commutative => f.write_str("commutative"),
            TableLine::MaxWeight(w) => write!(f, "maxweight {w}"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::algebras::Side;
        let side = |s: &Side| if *s == Side::Left { "left" } else { "right" };
        match self {
            Stmt::Field(FieldDecl::Q) => f.write_str("field Q"),
            Stmt::Field(FieldDecl::Fp(p)) => write!(f, "field Fp {p}"),
            Stmt::Algebra { name, def: AlgebraDef::Preset { kind, params, max_weight } } => {
                let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                write!(f, "algebra {name} = preset {kind}({})", ps.join(","))?;
                if let Some(w) = max_weight {
                    write!(f, " maxweight {w}")?;
                }
                Ok(())
            }
            Stmt::Algebra { name, def: AlgebraDef::Table(lines) } => {
                writeln!(f, "algebra {name} = table {{")?;
                for l in lines {
                    writeln!(f, "  {l}")?;
                }
                f.write_str("}")
            }
            Stmt::Module { name, kind, side: s, algebra } => {
                let k = match kind {
                    ModuleKindDecl::Regular => "regular",
                    ModuleKindDecl::Aug => "aug",
                };
                write!(f, "module {name} = {k} {} {algebra}", side(s))
            }
            Stmt::Manifold { name, def } => match def {
                ManifoldDef::Circle(a) => write!(f, "manifold {name} = circle {a}"),
                ManifoldDef::Interval { algebra, left, right } => {
                    write!(f, "manifold {name} = interval {algebra} left={left} right={right}")
                }
                ManifoldDef::Disjoint(parts) => {
                    let ps: Vec<&str> = parts.iter().map(|p| p.name.as_str()).collect();
                    write!(f, "manifold {name} = disjoint({})", ps.join(", "))
                }
            },
            Stmt::Compute { manifold, max_deg, json } => {
                write!(f, "compute facthom {manifold} maxdeg {max_deg}")?;
                if *json {
                    f.write_str(" json")?;
                }
                Ok(())
            }
            Stmt::CheckExcision { algebra, max_deg } => write!(f, "check excision {algebra} maxdeg {max_deg}"),
        }
    }
}

/// Canonical form: one statement per line, no comments or blank lines.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, _) in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
