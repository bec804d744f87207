//! Framed 1-manifolds with coefficients, and their evaluation.

pub mod dsl;

use std::fmt;
use std::sync::Arc;

use crate::algebras::{enveloping_modules, GradedAlgebra, Side, SidedModule};
use crate::bar::{balanced_tensor_homology, hochschild_homology, TruncationPolicy};
use crate::complexes::{tensor, BettiTable, ChainComplex, ComputedBetti, GradedSpace, Piece};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Field};
use crate::report::{describe_diff, CheckReport};

/// A framed 1-manifold labelled by coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum ManifoldExpr {
    Circle(Arc<GradedAlgebra>),
    /// Closed interval; `left` is a right module, `right` a left module.
    Interval {
        algebra: Arc<GradedAlgebra>,
        left: Arc<SidedModule>,
        right: Arc<SidedModule>,
    },
    Disjoint(Vec<ManifoldExpr>),
}

impl ManifoldExpr {
    pub fn interval(
        algebra: Arc<GradedAlgebra>,
        left: Arc<SidedModule>,
        right: Arc<SidedModule>,
    ) -> Result<Self> {
        if left.side() != Side::Right || right.side() != Side::Left {
            return Err(Error::ModuleMismatch(
                "left boundary needs a right module and right boundary a left module".into(),
            ));
        }
        if left.algebra() != &algebra || right.algebra() != &algebra {
            return Err(Error::ModuleMismatch("boundary module over another algebra".into()));
        }
        Ok(ManifoldExpr::Interval { algebra, left, right })
    }

    /// Flattens nested disjoint unions; rejects empty ones.
    pub fn disjoint(parts: Vec<ManifoldExpr>) -> Result<Self> {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                ManifoldExpr::Disjoint(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.is_empty() {
            return Err(Error::Invariant("empty disjoint union".into()));
        }
        Ok(ManifoldExpr::Disjoint(flat))
    }

    pub fn shape(&self) -> Shape {
        match self {
            ManifoldExpr::Circle(_) => Shape::Circle,
            ManifoldExpr::Interval { .. } => Shape::Interval,
            ManifoldExpr::Disjoint(v) => Shape::Disjoint(v.iter().map(|e| e.shape()).collect()),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            ManifoldExpr::Circle(a) | ManifoldExpr::Interval { algebra: a, .. } => a.field(),
            ManifoldExpr::Disjoint(v) => v[0].field(),
        }
    }
}

/// The underlying manifold without coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Circle,
    Interval,
    Disjoint(Vec<Shape>),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Circle => write!(f, "circle"),
            Shape::Interval => write!(f, "interval"),
            Shape::Disjoint(v) => {
                let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
                write!(f, "disjoint({})", parts.join(", "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComputationRequest {
    pub expr: ManifoldExpr,
    pub max_deg: usize,
    pub field: Field,
    pub format: OutputFormat,
}

/// Factorization homology of the expression. Circles use the cyclic bar,
/// intervals the two-sided bar, disjoint unions the Künneth product.
pub fn evaluate(req: &ComputationRequest) -> Result<ComputedBetti> {
    evaluate_expr(&req.expr, req.max_deg)
}

pub fn evaluate_expr(expr: &ManifoldExpr, max_deg: usize) -> Result<ComputedBetti> {
    match expr {
        ManifoldExpr::Circle(a) => hochschild_homology(a, max_deg),
        ManifoldExpr::Interval { algebra, left, right } => {
            balanced_tensor_homology(left, algebra, right, max_deg)
        }
        ManifoldExpr::Disjoint(parts) => {
            let mut acc = evaluate_expr(&parts[0], max_deg)?;
            for p in &parts[1..] {
                acc = acc.kunneth(&evaluate_expr(p, max_deg)?);
            }
            Ok(acc)
        }
    }
}

/// The circle computed twice: as the cyclic bar of `a`, and as
/// A ⊗_{A⊗A^op} A through the two-sided bar.
pub fn circle_two_ways(a: &GradedAlgebra, max_deg: usize) -> Result<(ComputedBetti, ComputedBetti)> {
    let first = hochschild_homology(a, max_deg)?;
    let bound = a
        .is_weighted()
        .then(|| a.max_weight().unwrap_or(TruncationPolicy::for_max_degree(max_deg).max_simplicial as u32));
    let (ae, right_mod, left_mod) = enveloping_modules(a, bound)?;
    let second = balanced_tensor_homology(&right_mod, &ae, &left_mod, max_deg)?;
    Ok((first, second))
}

/// Compares the two routes of `circle_two_ways` on their common exact region.
pub fn excision_check(a: &GradedAlgebra, max_deg: usize) -> Result<CheckReport> {
    let (cyclic, two_sided) = circle_two_ways(a, max_deg)?;
    let mut report = CheckReport::new("excision");
    let region = cyclic.validity.intersect(&two_sided.validity);
    let compared = cyclic
        .table
        .iter()
        .filter(|&(d, w, _)| region.covers(d, w))
        .count();
    let diff = cyclic.diff(&two_sided);
    let detail = if diff.is_empty() {
        format!("{compared} nonzero entries agree; cyclic bar {}", cyclic.table)
    } else {
        describe_diff(&diff)
    };
    report.push("cyclic bar vs A ⊗_{A⊗A^op} A", diff.is_empty(), detail);
    Ok(report)
}

/// Betti table of C_*(M) ⊗ V for the cell models (interval ≃ point, circle
/// = one 0-cell and one 1-cell); disjoint unions add.
pub fn ordinary_homology_check(v: &ChainComplex, shape: &Shape) -> Result<BettiTable> {
    let cells = cell_model(v.field(), shape)?;
    tensor(&cells, v)?.homology()
}

fn cell_model(field: Field, shape: &Shape) -> Result<ChainComplex> {
    let counts = |s: &Shape| -> (usize, usize) {
        fn go(s: &Shape) -> (usize, usize) {
            match s {
                Shape::Circle => (1, 1),
                Shape::Interval => (1, 0),
                Shape::Disjoint(v) => v.iter().map(go).fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1)),
            }
        }
        go(s)
    };
    let (c0, c1) = counts(shape);
    let space = GradedSpace::from_pieces([(0, Piece::anonymous(c0)), (1, Piece::anonymous(c1))])?;
    let d = ExactMatrix::zeros(field, c0, c1);
    ChainComplex::new(field, space, [(1, d)].into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{module_from, preset, random_algebra, ModuleKind, PresetKind, RandomAlgebraSpec};

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn evaluation_examples() {
        let k = Arc::new(preset(q(), PresetKind::SquareZero { dim: 0, deg: 0 }, None).unwrap());
        let d = ManifoldExpr::disjoint(vec![ManifoldExpr::Circle(k.clone()), ManifoldExpr::Circle(k)]).unwrap();
        let h = evaluate_expr(&d, 3).unwrap();
        assert_eq!(h.table, BettiTable::from_weighted([((0, 0), 1)]));

        let s = Arc::new(preset(q(), PresetKind::Sym { dim: 1, deg: 0 }, Some(3)).unwrap());
        let h = evaluate_expr(&ManifoldExpr::Circle(s), 2).unwrap();
        let mut expect = BettiTable::from_weighted([((0, 0), 1)]);
        for w in 1..=3 {
            expect.add(0, Some(w), 1);
            expect.add(1, Some(w), 1);
        }
        assert_eq!(h.table, expect);
    }

    #[test]
    fn interval_with_regular_ends() {
        let t = Arc::new(preset(q(), PresetKind::Exterior { dim: 2, deg: 1 }, None).unwrap());
        let l = Arc::new(module_from(ModuleKind::Regular(Side::Right), &t).unwrap());
        let r = Arc::new(module_from(ModuleKind::Regular(Side::Left), &t).unwrap());
        let e = ManifoldExpr::interval(t.clone(), l, r).unwrap();
        let h = evaluate_expr(&e, 3).unwrap();
        assert_eq!(h.table.total_dim(), t.dim());
        assert!(matches!(
            ManifoldExpr::disjoint(vec![]),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn excision_on_presets() {
        for kind in [
            PresetKind::SquareZero { dim: 0, deg: 0 },
            PresetKind::SquareZero { dim: 1, deg: 0 },
            PresetKind::Exterior { dim: 1, deg: 1 },
            PresetKind::Exterior { dim: 2, deg: 1 },
            PresetKind::Tensor { dim: 1, deg: 1 },
            PresetKind::Sym { dim: 1, deg: 0 },
        ] {
            let a = preset(q(), kind, Some(3)).unwrap();
            let (h, e) = circle_two_ways(&a, 3).unwrap();
            assert!(h.diff(&e).is_empty(), "{kind}: {:?}", h.diff(&e));
            assert!(!h.table.is_empty());
        }
    }

    #[test]
    fn excision_on_random_algebras() {
        for (seed, weighted, dim) in [(1, true, 4), (2, false, 2), (3, false, 3), (4, true, 3)] {
            let spec = RandomAlgebraSpec { field: Field::prime(5).unwrap(), dim, weighted, max_degree: 1 };
            let a = random_algebra(spec, seed).unwrap();
            let (h, e) = circle_two_ways(&a, 3).unwrap();
            assert!(h.diff(&e).is_empty(), "seed {seed}: {:?}\n{a:?}", h.diff(&e));
        }
    }

    #[test]
    fn ordinary_homology_examples() {
        let v = ChainComplex::unit(q());
        assert_eq!(
            ordinary_homology_check(&v, &Shape::Circle).unwrap(),
            BettiTable::from_degrees([(0, 1), (1, 1)])
        );
        assert_eq!(
            ordinary_homology_check(&v, &Shape::Interval).unwrap(),
            BettiTable::from_degrees([(0, 1)])
        );
        assert_eq!(
            ordinary_homology_check(&v, &Shape::Disjoint(vec![Shape::Circle, Shape::Circle])).unwrap(),
            BettiTable::from_degrees([(0, 2), (1, 2)])
        );
    }
}
