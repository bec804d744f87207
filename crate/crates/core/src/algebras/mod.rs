//! Graded associative unital algebras given by structure constants.

mod modules;
mod presets;
mod random;

use std::collections::HashMap;
use std::fmt;

pub use modules::{enveloping_modules, module_from, ModuleKind, Side, SidedModule};
pub use presets::{preset, PresetKind};
pub use random::{random_algebra, RandomAlgebraSpec};

use crate::error::{Error, Result};
use crate::linalg::{canonicalize, Field, FieldScalar, SparseVec};

/// One declared basis element of a raw table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBasis {
    pub label: String,
    pub degree: i64,
    pub weight: Option<u32>,
}

/// Unvalidated structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct RawAlgebra {
    pub field: Field,
    pub basis: Vec<RawBasis>,
    /// `(i, j, μ(b_i, b_j))`; pairs not listed multiply to zero, except
    /// that products with the unit default to the unit law.
    pub products: Vec<(usize, usize, SparseVec)>,
    pub unit: usize,
    /// Values of the augmentation on basis elements; unlisted ones map to 0
    /// and the unit to 1 unless given.
    pub augmentation: Option<Vec<(usize, FieldScalar)>>,
    pub commutative: bool,
    pub max_weight: Option<u32>,
}

/// A validated graded algebra. The unit is a basis element; when augmented,
/// every other basis element lies in the augmentation ideal.
#[derive(Clone, PartialEq)]
pub struct GradedAlgebra {
    field: Field,
    labels: Vec<String>,
    degrees: Vec<i64>,
    weights: Option<Vec<u32>>,
    mult: HashMap<(usize, usize), SparseVec>,
    unit: usize,
    augmented: bool,
    commutative: bool,
    max_weight: Option<u32>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.mult.keys().copied().collect();
        keys.sort_unstable();
        writeln!(f, "GradedAlgebra over {} (dim {})", self.field, self.dim())?;
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(f, "  {l}: deg {} weight {:?}", self.degrees[i], self.weight(i))?;
        }
        for (i, j) in keys {
            if i != self.unit && j != self.unit {
                writeln!(f, "  {}*{} = {}", self.labels[i], self.labels[j], self.show(&self.mult[&(i, j)]))?;
            }
        }
        Ok(())
    }
}

/// Validates a raw table: grading, unit laws, associativity, augmentation
/// and commutativity. An augmentation that is nonzero on some non-unit
/// basis element b is absorbed by replacing b with b − ε(b)·1.
pub fn make_algebra(raw: RawAlgebra) -> Result<GradedAlgebra> {
    let n = raw.basis.len();
    if raw.unit >= n {
        return Err(Error::Shape(format!("unit index {} out of range", raw.unit)));
    }
    let flags: std::collections::BTreeSet<bool> =
        raw.basis.iter().map(|b| b.weight.is_some()).collect();
    if flags.len() > 1 {
        return Err(Error::Invariant(
            "weights must be given for every basis element or none".into(),
        ));
    }
    let weights: Option<Vec<u32>> = if flags.contains(&true) {
        Some(raw.basis.iter().map(|b| b.weight.unwrap()).collect())
    } else {
        None
    };
    if let (Some(w), Some(m)) = (&weights, raw.max_weight) {
        if let Some(i) = (0..n).find(|&i| w[i] > m) {
            return Err(Error::Invariant(format!(
                "{} has weight {} above the bound {m}",
                raw.basis[i].label, w[i]
            )));
        }
    }
    let mut mult: HashMap<(usize, usize), SparseVec> = HashMap::new();
    for (i, j, v) in raw.products {
        if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
            return Err(Error::Shape("product refers to an undeclared basis element".into()));
        }
        if v.iter().any(|(_, c)| c.field() != raw.field) {
            return Err(Error::FieldMismatch(raw.field.to_string(), "coefficient".into()));
        }
        let v = canonicalize(v);
        if !v.is_empty() {
            mult.insert((i, j), v);
        }
    }
    for j in 0..n {
        for key in [(raw.unit, j), (j, raw.unit)] {
            mult.entry(key).or_insert_with(|| vec![(j, raw.field.one())]);
        }
    }
    let mut a = GradedAlgebra {
        field: raw.field,
        labels: raw.basis.iter().map(|b| b.label.clone()).collect(),
        degrees: raw.basis.iter().map(|b| b.degree).collect(),
        weights,
        mult,
        unit: raw.unit,
        augmented: false,
        commutative: raw.commutative,
        max_weight: raw.max_weight,
    };
    a.check_grading()?;
    if a.degrees[a.unit] != 0 || a.weight(a.unit).unwrap_or(0) != 0 {
        return Err(Error::UnitLaw(format!("{} must have degree and weight 0", a.labels[a.unit])));
    }
    a.check_unit()?;
    a.check_associative()?;
    if let Some(aug) = raw.augmentation {
        a.absorb_augmentation(aug)?;
    }
    if a.commutative {
        a.check_commutative()?;
    }
    Ok(a)
}

impl GradedAlgebra {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn weight(&self, i: usize) -> Option<u32> {
        self.weights.as_ref().map(|w| w[i])
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.max_weight
    }

    /// Largest weight carried by a basis element.
    pub fn top_weight(&self) -> Option<u32> {
        self.weights.as_ref().map(|w| w.iter().copied().max().unwrap_or(0))
    }

    /// Basis indices other than the unit, spanning A / k·1.
    pub fn reduced_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| i != self.unit).collect()
    }

    /// True when every non-unit basis element has weight ≥ 1.
    pub fn ideal_has_positive_weight(&self) -> bool {
        match &self.weights {
            Some(w) => self.reduced_basis().iter().all(|&i| w[i] >= 1),
            None => false,
        }
    }

    /// μ(b_i, b_j) in the basis.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, FieldScalar)] {
        self.mult.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    /// Bilinear extension of the product.
    pub fn mul(&self, x: &[(usize, FieldScalar)], y: &[(usize, FieldScalar)]) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.mul_basis(*i, *j) {
                    terms.push((*k, &ab * c));
                }
            }
        }
        canonicalize(terms)
    }

    /// Augmentation value on a basis element.
    pub fn augmentation(&self, i: usize) -> Option<FieldScalar> {
        self.augmented.then(|| {
            if i == self.unit {
                self.field.one()
            } else {
                self.field.zero()
            }
        })
    }

    /// Nonzero structure constants `(i, j, μ(b_i, b_j))`, sorted.
    pub fn products(&self) -> Vec<(usize, usize, &SparseVec)> {
        let mut out: Vec<_> = self.mult.iter().map(|(&(i, j), v)| (i, j, v)).collect();
        out.sort_by_key(|e| (e.0, e.1));
        out
    }

    pub fn show(&self, v: &[(usize, FieldScalar)]) -> String {
        if v.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    self.labels[*k].clone()
                } else {
                    format!("{c}*{}", self.labels[*k])
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Converts back to a raw table (unit products omitted).
    pub fn to_raw(&self) -> RawAlgebra {
        RawAlgebra {
            field: self.field,
            basis: (0..self.dim())
                .map(|i| RawBasis {
                    label: self.labels[i].clone(),
                    degree: self.degrees[i],
                    weight: self.weight(i),
                })
                .collect(),
            products: self
                .products()
                .into_iter()
                .filter(|(i, j, _)| *i != self.unit && *j != self.unit)
                .map(|(i, j, v)| (i, j, v.clone()))
                .collect(),
            unit: self.unit,
            augmentation: self.augmented.then(Vec::new),
            commutative: self.commutative,
            max_weight: self.max_weight,
        }
    }

    fn check_grading(&self) -> Result<()> {
        for (&(i, j), v) in &self.mult {
            for (k, _) in v {
                if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                    return Err(Error::Grading(self.labels[i].clone(), self.labels[j].clone(), "degree"));
                }
                if let Some(w) = &self.weights {
                    if w[*k] != w[i] + w[j] {
                        return Err(Error::Grading(self.labels[i].clone(), self.labels[j].clone(), "weight"));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        let one = self.field.one();
        for j in 0..self.dim() {
            let e = vec![(j, one.clone())];
            if self.mul_basis(self.unit, j) != e.as_slice() || self.mul_basis(j, self.unit) != e.as_slice() {
                return Err(Error::UnitLaw(self.labels[j].clone()));
            }
        }
        Ok(())
    }

    /// Checks (xy)z = x(yz) on non-unit triples, skipping triples whose
    /// weights exceed every basis weight.
    fn check_associative(&self) -> Result<()> {
        let mut idx = self.reduced_basis();
        let w = |i: usize| self.weight(i).unwrap_or(0);
        idx.sort_by_key(|&i| w(i));
        let cap = self.top_weight();
        let within = |s: u32| cap.is_none_or(|c| s <= c);
        for &i in &idx {
            for &j in &idx {
                if !within(w(i) + w(j)) {
                    break;
                }
                let ij = self.mul_basis(i, j);
                for &k in &idx {
                    if !within(w(i) + w(j) + w(k)) {
                        break;
                    }
                    let jk = self.mul_basis(j, k);
                    if ij.is_empty() && jk.is_empty() {
                        continue;
                    }
                    let left = self.mul(ij, &[(k, self.field.one())]);
                    let right = self.mul(&[(i, self.field.one())], jk);
                    if left != right {
                        return Err(Error::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_commutative(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let odd = self.degrees[i] * self.degrees[j] % 2 != 0;
                let ji: SparseVec = self.mul_basis(j, i).iter().map(|(k, c)| (*k, c.signed(odd))).collect();
                if self.mul_basis(i, j) != ji.as_slice() {
                    return Err(Error::NotCommutative(self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        Ok(())
    }

    fn absorb_augmentation(&mut self, values: Vec<(usize, FieldScalar)>) -> Result<()> {
        let f = self.field;
        let mut eps = vec![f.zero(); self.dim()];
        eps[self.unit] = f.one();
        for (i, c) in values {
            if i >= self.dim() || c.field() != f {
                return Err(Error::Augmentation("bad augmentation entry".into()));
            }
            eps[i] = c;
        }
        if !eps[self.unit].is_one() {
            return Err(Error::Augmentation(format!("{} must map to 1", self.labels[self.unit])));
        }
        for i in 0..self.dim() {
            if !eps[i].is_zero() && (self.degrees[i] != 0 || self.weight(i).unwrap_or(0) != 0) {
                return Err(Error::Augmentation(format!(
                    "{} has nonzero degree or weight but ε ≠ 0",
                    self.labels[i]
                )));
            }
        }
        let apply = |v: &[(usize, FieldScalar)]| -> FieldScalar {
            v.iter().fold(f.zero(), |acc, (k, c)| &acc + &(c * &eps[*k]))
        };
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = apply(self.mul_basis(i, j));
                let rhs = &eps[i] * &eps[j];
                if lhs != rhs {
                    return Err(Error::Augmentation(format!(
                        "ε({}*{}) = {lhs} but ε({})ε({}) = {rhs}",
                        self.labels[i], self.labels[j], self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        if eps.iter().enumerate().any(|(i, c)| i != self.unit && !c.is_zero()) {
            self.rebase(&eps);
        }
        self.augmented = true;
        Ok(())
    }

    /// Replaces b_i by b_i − ε(b_i)·1 for every non-unit i.
    fn rebase(&mut self, eps: &[FieldScalar]) {
        let u = self.unit;
        let old = self.clone();
        let to_new = |v: &[(usize, FieldScalar)]| -> SparseVec {
            let mut terms = v.to_vec();
            for (k, c) in v {
                if *k != u {
                    terms.push((u, c * &eps[*k]));
                }
            }
            canonicalize(terms)
        };
        let elem = |i: usize| -> SparseVec {
            let mut v = vec![(i, self.field.one())];
            if i != u && !eps[i].is_zero() {
                v.push((u, -&eps[i]));
            }
            canonicalize(v)
        };
        let mut mult = HashMap::new();
        for i in 0..old.dim() {
            for j in 0..old.dim() {
                let p = to_new(&old.mul(&elem(i), &elem(j)));
                if !p.is_empty() {
                    mult.insert((i, j), p);
                }
            }
        }
        self.mult = mult;
        for i in 0..old.dim() {
            if i != u && !eps[i].is_zero() {
                self.labels[i] = format!("({}-{})", old.labels[i], eps[i]);
            }
        }
    }
}

/// μ^op(x, y) = (−1)^{|x||y|} μ(y, x) on the same basis.
pub fn opposite(a: &GradedAlgebra) -> GradedAlgebra {
    let mut mult = HashMap::new();
    for (&(i, j), v) in &a.mult {
        let odd = a.degrees[i] * a.degrees[j] % 2 != 0;
        mult.insert((j, i), v.iter().map(|(k, c)| (*k, c.signed(odd))).collect());
    }
    GradedAlgebra { mult, ..a.clone() }
}

/// Result of [`tensor_algebras`]: the algebra and the basis pair behind
/// each of its basis elements.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub algebra: GradedAlgebra,
    pub pairs: Vec<(usize, usize)>,
}

impl TensorAlgebra {
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.binary_search(&(i, j)).ok()
    }
}

/// a ⊗ b with (x⊗y)(x'⊗y') = (−1)^{|y||x'|} xx' ⊗ yy'. When both factors
/// are weighted the result keeps weights ≤ min of the two bounds.
pub fn tensor_algebras(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<TensorAlgebra> {
    let bound = match (a.max_weight, b.max_weight) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    tensor_algebras_truncated(a, b, bound)
}

/// As [`tensor_algebras`], keeping only basis elements of weight ≤ `bound`
/// (the span of the others is an ideal).
pub fn tensor_algebras_truncated(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
    bound: Option<u32>,
) -> Result<TensorAlgebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    let weighted = a.is_weighted() && b.is_weighted();
    let bound = if weighted { bound } else { None };
    let wt = |i: usize, j: usize| a.weight(i).unwrap_or(0) + b.weight(j).unwrap_or(0);
    let mut pairs = Vec::new();
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            if bound.is_none_or(|m| wt(i, j) <= m) {
                pairs.push((i, j));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let mut mult = HashMap::new();
    for (s, &(x, y)) in pairs.iter().enumerate() {
        for (t, &(x2, y2)) in pairs.iter().enumerate() {
            if bound.is_some_and(|m| wt(x, y) + wt(x2, y2) > m) {
                continue;
            }
            let (p, q) = (a.mul_basis(x, x2), b.mul_basis(y, y2));
            if p.is_empty() || q.is_empty() {
                continue;
            }
            let odd = b.degrees[y] * a.degrees[x2] % 2 != 0;
            let mut terms = Vec::new();
            for (k, c) in p {
                for (l, d) in q {
                    if let Some(&r) = index.get(&(*k, *l)) {
                        terms.push((r, (c * d).signed(odd)));
                    }
                }
            }
            let v = canonicalize(terms);
            if !v.is_empty() {
                mult.insert((s, t), v);
            }
        }
    }
    let algebra = GradedAlgebra {
        field: a.field,
        labels: pairs.iter().map(|&(i, j)| format!("{}⊗{}", a.labels[i], b.labels[j])).collect(),
        degrees: pairs.iter().map(|&(i, j)| a.degrees[i] + b.degrees[j]).collect(),
        weights: weighted.then(|| pairs.iter().map(|&(i, j)| wt(i, j)).collect()),
        mult,
        unit: index[&(a.unit, b.unit)],
        augmented: a.augmented && b.augmented,
        commutative: a.commutative && b.commutative,
        max_weight: bound,
    };
    algebra.check_grading()?;
    algebra.check_unit()?;
    algebra.check_associative()?;
    if algebra.commutative {
        algebra.check_commutative()?;
    }
    Ok(TensorAlgebra { algebra, pairs })
}
