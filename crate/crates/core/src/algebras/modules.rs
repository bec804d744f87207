use std::collections::HashMap;
use std::sync::Arc;

use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{canonicalize, FieldScalar, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Regular(Side),
    Augmentation(Side),
}

/// A one-sided module given by structure constants. `act(a, m)` is a·m for
/// left modules and m·a for right modules.
#[derive(Clone, Debug, PartialEq)]
pub struct SidedModule {
    algebra: Arc<GradedAlgebra>,
    side: Side,
    labels: Vec<String>,
    degrees: Vec<i64>,
    weights: Option<Vec<u32>>,
    action: HashMap<(usize, usize), SparseVec>,
}

impl SidedModule {
    /// Validates unitality and associativity of the action. Unlisted
    /// products with the unit default to the identity.
    pub fn new(
        algebra: Arc<GradedAlgebra>,
        side: Side,
        labels: Vec<String>,
        degrees: Vec<i64>,
        weights: Option<Vec<u32>>,
        action: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
    ) -> Result<Self> {
        let n = labels.len();
        if degrees.len() != n || weights.as_ref().is_some_and(|w| w.len() != n) {
            return Err(Error::Shape("module basis data lengths differ".into()));
        }
        if weights.is_some() != algebra.is_weighted() {
            return Err(Error::ModuleMismatch("weighted and unweighted data mixed".into()));
        }
        let mut map = HashMap::new();
        for ((a, m), v) in action {
            if a >= algebra.dim() || m >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(Error::Shape("action refers to an undeclared basis element".into()));
            }
            let v = canonicalize(v);
            if !v.is_empty() {
                map.insert((a, m), v);
            }
        }
        let one = algebra.field().one();
        for m in 0..n {
            map.entry((algebra.unit(), m)).or_insert_with(|| vec![(m, one.clone())]);
        }
        let module = SidedModule {
            algebra,
            side,
            labels,
            degrees,
            weights,
            action: map,
        };
        module.validate()?;
        Ok(module)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn weight(&self, i: usize) -> Option<u32> {
        self.weights.as_ref().map(|w| w[i])
    }

    /// The action of basis element `a` on basis element `m`.
    pub fn act(&self, a: usize, m: usize) -> &[(usize, FieldScalar)] {
        self.action.get(&(a, m)).map_or(&[], |v| v.as_slice())
    }

    fn act_vec(&self, a: usize, v: &[(usize, FieldScalar)]) -> SparseVec {
        let mut terms = Vec::new();
        for (m, c) in v {
            for (k, d) in self.act(a, *m) {
                terms.push((*k, c * d));
            }
        }
        canonicalize(terms)
    }

    fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let one = alg.field().one();
        for m in 0..self.dim() {
            if self.act(alg.unit(), m) != [(m, one.clone())] {
                return Err(Error::Module(format!("unit does not fix {}", self.labels[m])));
            }
        }
        for (&(a, m), v) in &self.action {
            for (k, _) in v {
                let deg_ok = self.degrees[*k] == alg.degree(a) + self.degrees[m];
                let w_ok = self.weight(*k).is_none_or(|w| Some(w) == self.weight(m).map(|x| x + alg.weight(a).unwrap()));
                if !deg_ok || !w_ok {
                    return Err(Error::Module(format!(
                        "{} acting on {} breaks the grading",
                        alg.label(a),
                        self.labels[m]
                    )));
                }
            }
        }
        let reduced = alg.reduced_basis();
        let top = self.weights.as_ref().map(|w| w.iter().copied().max().unwrap_or(0));
        let wa = |i: usize| alg.weight(i).unwrap_or(0);
        for m in 0..self.dim() {
            let wm = self.weight(m).unwrap_or(0);
            for &a in &reduced {
                for &b in &reduced {
                    if top.is_some_and(|t| wm + wa(a) + wa(b) > t) {
                        continue;
                    }
                    // Left: (ab)·m = a·(b·m). Right: m·(ab) = (m·a)·b.
                    let (first, second) = match self.side {
                        Side::Left => (b, a),
                        Side::Right => (a, b),
                    };
                    let ab = alg.mul_basis(a, b);
                    let mut lhs_terms = Vec::new();
                    for (k, c) in ab {
                        for (r, d) in self.act(*k, m) {
                            lhs_terms.push((*r, c * d));
                        }
                    }
                    let lhs = canonicalize(lhs_terms);
                    let rhs = self.act_vec(second, self.act(first, m));
                    if lhs != rhs {
                        return Err(Error::Module(format!(
                            "action is not associative on ({}, {}, {})",
                            alg.label(a),
                            alg.label(b),
                            self.labels[m]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The regular module, or the one-dimensional module through the augmentation.
pub fn module_from(kind: ModuleKind, a: &Arc<GradedAlgebra>) -> Result<SidedModule> {
    match kind {
        ModuleKind::Regular(side) => {
            let mut action = Vec::new();
            for i in 0..a.dim() {
                for m in 0..a.dim() {
                    let v = match side {
                        Side::Left => a.mul_basis(i, m),
                        Side::Right => a.mul_basis(m, i),
                    };
                    if !v.is_empty() {
                        action.push(((i, m), v.to_vec()));
                    }
                }
            }
            let weights = a.is_weighted().then(|| (0..a.dim()).map(|i| a.weight(i).unwrap()).collect());
            SidedModule::new(
                a.clone(),
                side,
                a.labels().to_vec(),
                a.degrees().to_vec(),
                weights,
                action,
            )
        }
        ModuleKind::Augmentation(side) => {
            if !a.is_augmented() {
                return Err(Error::NotAugmented);
            }
            let weights = a.is_weighted().then(|| vec![0]);
            SidedModule::new(a.clone(), side, vec!["k".into()], vec![0], weights, Vec::new())
        }
    }
}

/// A as a right and as a left module over A ⊗ A^op (the latter truncated
/// at `bound` when weighted), with
/// m·(a⊗b) = (−1)^{|b|(|m|+|a|)} b m a and (a⊗b)·m = (−1)^{|b||m|} a m b.
pub fn enveloping_modules(
    a: &GradedAlgebra,
    bound: Option<u32>,
) -> Result<(Arc<GradedAlgebra>, SidedModule, SidedModule)> {
    let op = super::opposite(a);
    let env = super::tensor_algebras_truncated(a, &op, bound)?;
    let ae = Arc::new(env.algebra);
    let bound = if a.is_weighted() { bound } else { None };
    let keep: Vec<usize> = (0..a.dim())
        .filter(|&i| bound.is_none_or(|m| a.weight(i).unwrap() <= m))
        .collect();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let restrict = |v: SparseVec| -> SparseVec {
        v.into_iter().filter_map(|(k, c)| pos.get(&k).map(|&p| (p, c))).collect()
    };
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (s, &(x, y)) in env.pairs.iter().enumerate() {
        for (p, &m) in keep.iter().enumerate() {
            let dm = a.degree(m);
            let (dx, dy) = (a.degree(x), a.degree(y));
            let one = |i: usize| vec![(i, a.field().one())];
            let l = a.mul(&a.mul(&one(x), &one(m)), &one(y));
            let odd = dy * dm % 2 != 0;
            let l = restrict(l.into_iter().map(|(k, c)| (k, c.signed(odd))).collect());
            if !l.is_empty() {
                left.push(((s, p), l));
            }
            let r = a.mul(&a.mul(&one(y), &one(m)), &one(x));
            let odd = dy * (dm + dx) % 2 != 0;
            let r = restrict(r.into_iter().map(|(k, c)| (k, c.signed(odd))).collect());
            if !r.is_empty() {
                right.push(((s, p), r));
            }
        }
    }
    let labels: Vec<String> = keep.iter().map(|&i| a.label(i).to_string()).collect();
    let degrees: Vec<i64> = keep.iter().map(|&i| a.degree(i)).collect();
    let weights: Option<Vec<u32>> = a.is_weighted().then(|| keep.iter().map(|&i| a.weight(i).unwrap()).collect());
    let rmod = SidedModule::new(ae.clone(), Side::Right, labels.clone(), degrees.clone(), weights.clone(), right)?;
    let lmod = SidedModule::new(ae.clone(), Side::Left, labels, degrees, weights, left)?;
    Ok((ae, rmod, lmod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{preset, PresetKind};
    use crate::linalg::Field;

    #[test]
    fn module_examples() {
        let q = Field::Rational;
        let k = Arc::new(preset(q, PresetKind::SquareZero { dim: 0, deg: 0 }, None).unwrap());
        let m = module_from(ModuleKind::Regular(Side::Left), &k).unwrap();
        assert_eq!(m.dim(), 1);
        let d = Arc::new(preset(q, PresetKind::SquareZero { dim: 1, deg: 0 }, None).unwrap());
        let e = module_from(ModuleKind::Augmentation(Side::Right), &d).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(e.act(1, 0).is_empty());
        let t = Arc::new(preset(q, PresetKind::Tensor { dim: 1, deg: 0 }, Some(2)).unwrap());
        let r = module_from(ModuleKind::Regular(Side::Right), &t).unwrap();
        let by_weight: Vec<u32> = (0..r.dim()).map(|i| r.weight(i).unwrap()).collect();
        assert_eq!(by_weight, vec![0, 1, 2]);
    }

    #[test]
    fn enveloping_actions_are_modules() {
        let q = Field::Rational;
        for kind in [
            PresetKind::Exterior { dim: 2, deg: 1 },
            PresetKind::Tensor { dim: 2, deg: 1 },
            PresetKind::Sym { dim: 1, deg: 2 },
        ] {
            let a = preset(q, kind, Some(3)).unwrap();
            let (ae, r, l) = enveloping_modules(&a, Some(3)).unwrap();
            assert_eq!(r.dim(), a.dim());
            assert_eq!(l.dim(), a.dim());
            assert!(ae.dim() > a.dim());
        }
    }

    #[test]
    fn non_augmented_rejected() {
        let q = Field::Rational;
        let b = |l: &str| crate::algebras::RawBasis { label: l.into(), degree: 0, weight: None };
        let raw = crate::algebras::RawAlgebra {
            field: q,
            basis: vec![b("1"), b("x")],
            products: vec![(1, 1, vec![(0, q.one())])],
            unit: 0,
            augmentation: None,
            commutative: true,
            max_weight: None,
        };
        let a = Arc::new(crate::algebras::make_algebra(raw).unwrap());
        assert_eq!(
            module_from(ModuleKind::Augmentation(Side::Left), &a).unwrap_err(),
            Error::NotAugmented
        );
    }
}
