use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;

use super::ast::*;
use crate::algebras::{make_algebra, module_from, preset, GradedAlgebra, ModuleKind, PresetKind, RawAlgebra, RawBasis, Side, SidedModule};
use crate::error::{Error, Result, Span};
use crate::linalg::{Field, FieldScalar};
use crate::manifolds::{ComputationRequest, ManifoldExpr, OutputFormat};

/// What a declared name refers to.
#[derive(Clone, Debug)]
pub enum Binding {
    Algebra(Arc<GradedAlgebra>),
    Module { module: Arc<SidedModule>, algebra: String },
    Manifold(ManifoldExpr),
}

impl Binding {
    fn kind(&self) -> &'static str {
        match self {
            Binding::Algebra(_) => "an algebra",
            Binding::Module { .. } => "a module",
            Binding::Manifold(_) => "a manifold",
        }
    }
}

/// Resolved declarations of a program, in declaration order.
#[derive(Clone, Debug)]
pub struct Declarations {
    pub field: Field,
    pub names: Vec<(String, Binding)>,
    index: HashMap<String, usize>,
}

impl Declarations {
    fn new() -> Self {
        Declarations {
            field: Field::Rational,
            names: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.index.get(name).map(|&i| &self.names[i].1)
    }

    fn bind(&mut self, name: &Ident, b: Binding) -> Result<()> {
        if self.index.contains_key(&name.name) {
            return Err(Error::Duplicate {
                span: name.span,
                name: name.name.clone(),
            });
        }
        self.index.insert(name.name.clone(), self.names.len());
        self.names.push((name.name.clone(), b));
        Ok(())
    }

    fn lookup(&self, name: &Ident) -> Result<&Binding> {
        self.get(&name.name).ok_or_else(|| Error::UnknownIdentifier {
            span: name.span,
            name: name.name.clone(),
        })
    }

    fn mismatch(name: &Ident, found: &Binding, expected: &str) -> Error {
        Error::TypeMismatch {
            span: name.span,
            message: format!("`{}` is {}, expected {expected}", name.name, found.kind()),
        }
    }

    fn algebra(&self, name: &Ident) -> Result<Arc<GradedAlgebra>> {
        match self.lookup(name)? {
            Binding::Algebra(a) => Ok(a.clone()),
            other => Err(Self::mismatch(name, other, "an algebra")),
        }
    }

    fn module(&self, name: &Ident) -> Result<(Arc<SidedModule>, String)> {
        match self.lookup(name)? {
            Binding::Module { module, algebra } => Ok((module.clone(), algebra.clone())),
            other => Err(Self::mismatch(name, other, "a module")),
        }
    }

    fn manifold(&self, name: &Ident) -> Result<ManifoldExpr> {
        match self.lookup(name)? {
            Binding::Manifold(m) => Ok(m.clone()),
            other => Err(Self::mismatch(name, other, "a manifold")),
        }
    }
}

/// A computation requested by a program.
#[derive(Clone, Debug)]
pub enum Job {
    Compute {
        manifold: String,
        request: ComputationRequest,
        span: Span,
    },
    CheckExcision {
        algebra_name: String,
        algebra: Arc<GradedAlgebra>,
        max_deg: usize,
        span: Span,
    },
}

fn scalar(field: Field, r: &BigRational, span: Span) -> Result<FieldScalar> {
    field.parse_scalar(&show_rational(r)).map_err(|e| e.at(span))
}

fn table_algebra(field: Field, name: &Ident, lines: &[TableLine]) -> Result<GradedAlgebra> {
    let mut basis = Vec::new();
    let mut labels: HashMap<&str, usize> = HashMap::new();
    let mut weighted: Option<bool> = None;
    for line in lines {
        if let TableLine::Basis { label, degree, weight } = line {
            if labels.insert(&label.name, basis.len()).is_some() {
                return Err(Error::Duplicate {
                    span: label.span,
                    name: label.name.clone(),
                });
            }
            if *weighted.get_or_insert(weight.is_some()) != weight.is_some() {
                return Err(Error::AtSpan {
                    span: label.span,
                    message: "either every basis element has a weight or none does".into(),
                });
            }
            basis.push(RawBasis {
                label: label.name.clone(),
                degree: *degree,
                weight: *weight,
            });
        }
    }
    let find = |l: &Ident| {
        labels.get(l.name.as_str()).copied().ok_or_else(|| Error::UnknownIdentifier {
            span: l.span,
            name: l.name.clone(),
        })
    };
    let mut unit = None;
    let mut products = Vec::new();
    let mut augmentation: Option<Vec<(usize, FieldScalar)>> = None;
    let mut commutative = false;
    let mut max_weight = None;
    for line in lines {
        match line {
            TableLine::Basis { .. } => {}
            TableLine::Mult { left, right, value } => {
                let (i, j) = (find(left)?, find(right)?);
                let mut v = Vec::new();
                for (c, l) in &value.terms {
                    v.push((find(l)?, scalar(field, c, l.span)?));
                }
                products.push((i, j, crate::linalg::canonicalize(v)));
            }
            TableLine::Unit(l) => {
                if unit.replace(find(l)?).is_some() {
                    return Err(Error::AtSpan {
                        span: l.span,
                        message: "unit declared twice".into(),
                    });
                }
            }
            TableLine::Aug { label, value } => {
                let i = find(label)?;
                let s = scalar(field, value, label.span)?;
                augmentation.get_or_insert_with(Vec::new).push((i, s));
            }
            TableLine::Commutative => commutative = true,
            TableLine::MaxWeight(w) => max_weight = Some(*w),
        }
    }
    let unit = unit.ok_or_else(|| Error::AtSpan {
        span: name.span,
        message: format!("algebra `{}` has no unit line", name.name),
    })?;
    make_algebra(RawAlgebra {
        field,
        basis,
        products,
        unit,
        augmentation,
        commutative,
        max_weight,
    })
}

/// Parses and resolves a program: returns its declarations and the jobs it
/// requests, in source order.
pub fn parse_program(source: &str) -> Result<(Declarations, Vec<Job>)> {
    resolve(&super::parser::parse(source)?)
}

pub fn resolve(program: &Program) -> Result<(Declarations, Vec<Job>)> {
    let mut decls = Declarations::new();
    let mut jobs = Vec::new();
    let mut field_seen = false;
    for (n, (stmt, span)) in program.stmts.iter().enumerate() {
        let span = *span;
        match stmt {
            Stmt::Field(f) => {
                if field_seen || n > 0 {
                    return Err(Error::AtSpan {
                        span,
                        message: "the field is declared at most once, as the first statement".into(),
                    });
                }
                field_seen = true;
                decls.field = match f {
                    FieldDecl::Q => Field::Rational,
                    FieldDecl::Fp(p) => Field::prime(*p).map_err(|e| e.at(span))?,
                };
            }
            Stmt::Algebra { name, def } => {
                let a = match def {
                    AlgebraDef::Preset { kind, params, max_weight } => {
                        let k = PresetKind::from_name(&kind.name, params).map_err(|e| e.at(kind.span))?;
                        preset(decls.field, k, *max_weight)
                    }
                    AlgebraDef::Table(lines) => table_algebra(decls.field, name, lines),
                }
                .map_err(|e| e.at(name.span))?;
                decls.bind(name, Binding::Algebra(Arc::new(a)))?;
            }
            Stmt::Module { name, kind, side, algebra } => {
                let a = decls.algebra(algebra)?;
                let k = match kind {
                    ModuleKindDecl::Regular => ModuleKind::Regular(*side),
                    ModuleKindDecl::Aug => ModuleKind::Augmentation(*side),
                };
                let m = module_from(k, &a).map_err(|e| e.at(name.span))?;
                decls.bind(
                    name,
                    Binding::Module {
                        module: Arc::new(m),
                        algebra: algebra.name.clone(),
                    },
                )?;
            }
            Stmt::Manifold { name, def } => {
                let expr = match def {
                    ManifoldDef::Circle(a) => ManifoldExpr::Circle(decls.algebra(a)?),
                    ManifoldDef::Interval { algebra, left, right } => {
                        let a = decls.algebra(algebra)?;
                        let (l, l_over) = decls.module(left)?;
                        let (r, r_over) = decls.module(right)?;
                        for (id, m, over, want) in [(left, &l, &l_over, Side::Right), (right, &r, &r_over, Side::Left)] {
                            if m.side() != want {
                                let which = if want == Side::Right { "right" } else { "left" };
                                return Err(Error::TypeMismatch {
                                    span: id.span,
                                    message: format!("`{}` must be a {which} module", id.name),
                                });
                            }
                            if over != &algebra.name {
                                return Err(Error::TypeMismatch {
                                    span: id.span,
                                    message: format!("`{}` is a module over `{over}`, not `{}`", id.name, algebra.name),
                                });
                            }
                        }
                        ManifoldExpr::interval(a, l, r).map_err(|e| e.at(name.span))?
                    }
                    ManifoldDef::Disjoint(parts) => {
                        let ms = parts.iter().map(|p| decls.manifold(p)).collect::<Result<Vec<_>>>()?;
                        ManifoldExpr::disjoint(ms).map_err(|e| e.at(name.span))?
                    }
                };
                decls.bind(name, Binding::Manifold(expr))?;
            }
            Stmt::Compute { manifold, max_deg, json } => {
                let expr = decls.manifold(manifold)?;
                jobs.push(Job::Compute {
                    manifold: manifold.name.clone(),
                    request: ComputationRequest {
                        expr,
                        max_deg: *max_deg as usize,
                        field: decls.field,
                        format: if *json { OutputFormat::Json } else { OutputFormat::Text },
                    },
                    span,
                });
            }
            Stmt::CheckExcision { algebra, max_deg } => {
                jobs.push(Job::CheckExcision {
                    algebra_name: algebra.name.clone(),
                    algebra: decls.algebra(algebra)?,
                    max_deg: *max_deg as usize,
                    span,
                });
            }
        }
    }
    Ok((decls, jobs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(src: &str) -> Error {
        parse_program(src).unwrap_err()
    }

    #[test]
    fn example_program() {
        let (d, jobs) =
            parse_program("field Q\nalgebra A = preset squarezero(1,0)\nmanifold M = circle A\ncompute facthom M maxdeg 4")
                .unwrap();
        assert_eq!(d.field, Field::Rational);
        assert_eq!(jobs.len(), 1);
        let Job::Compute { request, .. } = &jobs[0] else { panic!() };
        assert!(matches!(&request.expr, ManifoldExpr::Circle(a) if a.dim() == 2));
        assert_eq!(request.max_deg, 4);
        let (d, jobs) = parse_program("").unwrap();
        assert!(d.names.is_empty() && jobs.is_empty());
    }

    #[test]
    fn name_errors() {
        let e = err("manifold M = circle A");
        assert_eq!(e, Error::UnknownIdentifier { span: Span::new(1, 21, 1), name: "A".into() });
        let e = err("algebra A = preset squarezero(1,0)\nalgebra A = preset squarezero(2,0)");
        assert_eq!(e.span(), Some(Span::new(2, 9, 1)));
        assert!(matches!(e, Error::Duplicate { .. }));
        let e = err("algebra A = preset squarezero(1,0)\nmodule A = regular left A");
        assert!(matches!(e, Error::Duplicate { .. }));
    }

    #[test]
    fn type_errors() {
        let base = "algebra A = preset squarezero(1,0)\nalgebra B = preset exterior(1,1)\n\
                    module L = regular left A\nmodule R = regular right A\nmodule RB = regular right B\n";
        let e = err(&format!("{base}manifold M = circle L"));
        assert!(matches!(e, Error::TypeMismatch { span, .. } if span == Span::new(6, 21, 1)));
        let e = err(&format!("{base}manifold I = interval A left=L right=R"));
        assert!(matches!(e, Error::TypeMismatch { span, .. } if span == Span::new(6, 30, 1)));
        let e = err(&format!("{base}manifold I = interval A left=RB right=L"));
        assert!(matches!(e, Error::TypeMismatch { ref message, .. } if message.contains("over `B`")));
        let e = err(&format!("{base}compute facthom A maxdeg 3"));
        assert!(matches!(e, Error::TypeMismatch { .. }));
    }

    #[test]
    fn field_rules() {
        let e = err("algebra A = preset squarezero(1,0)\nfield Q");
        assert_eq!(e.span(), Some(Span::new(2, 1, 7)));
        assert!(err("field Q\nfield Fp 3").span().is_some());
        assert!(matches!(err("field Fp 4"), Error::AtSpan { .. }));
        let (d, _) = parse_program("field Fp 7").unwrap();
        assert_eq!(d.field, Field::prime(7).unwrap());
    }

    #[test]
    fn tables() {
        let src = "field Fp 3\nalgebra D = table {\n  basis e deg 0 weight 0\n  basis x deg 0 weight 1\n  mult x*x = 0\n  unit e\n  aug e -> 1\n  commutative\n}\n\
                   module L = regular left D\nmodule R = aug right D\nmanifold I = interval D left=R right=L\ncheck excision D maxdeg 3";
        let (d, jobs) = parse_program(src).unwrap();
        let Some(Binding::Algebra(a)) = d.get("D") else { panic!() };
        assert!(a.is_augmented() && a.is_commutative() && a.is_weighted());
        assert_eq!(jobs.len(), 1);

        let bad = "algebra D = table {\n  basis e deg 0\n  basis x deg 1\n  mult x*x = e\n  unit e\n}";
        assert_eq!(err(bad).span(), Some(Span::new(1, 9, 1)));
        let missing = "algebra D = table {\n  basis e deg 0\n  mult e*y = e\n  unit e\n}";
        assert_eq!(err(missing), Error::UnknownIdentifier { span: Span::new(3, 10, 1), name: "y".into() });
        let nounit = "algebra D = table {\n  basis e deg 0\n}";
        assert!(matches!(err(nounit), Error::AtSpan { .. }));
        let zero_den = "field Fp 3\nalgebra D = table {\n  basis e deg 0\n  basis x deg 0\n  mult x*x = 1/3 x\n  unit e\n}";
        assert_eq!(err(zero_den).span(), Some(Span::new(5, 18, 1)));
    }
}
