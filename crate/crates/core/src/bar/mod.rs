//! Normalized two-sided bar complexes and the cyclic bar (Hochschild) complex.

use std::collections::{BTreeMap, HashMap};

use crate::algebras::{GradedAlgebra, Side, SidedModule};
use crate::complexes::{ChainComplex, ComputedBetti, GradedSpace, Piece, Validity};
use crate::error::{Error, Result};
use crate::linalg::{canonicalize, ExactMatrix, Field, FieldScalar, SparseVec};

/// Bar complexes are cut at simplicial degree N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub max_simplicial: usize,
}

impl TruncationPolicy {
    pub fn new(max_simplicial: usize) -> Self {
        Self { max_simplicial }
    }

    /// N = maxDeg + 1.
    pub fn for_max_degree(max_deg: usize) -> Self {
        Self::new(max_deg + 1)
    }

    pub fn safe_degree_bound(&self) -> i64 {
        self.max_simplicial as i64 - 1
    }
}

/// A truncated bar-type complex and the region where its homology is exact.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub complex: ChainComplex,
    pub validity: Validity,
}

impl BarComplex {
    pub fn homology(&self) -> Result<ComputedBetti> {
        let v = &self.validity;
        let table = self.complex.homology_where(|d, w| v.covers(d, w))?;
        Ok(ComputedBetti::new(table, v.clone()))
    }
}

/// Degrees and weights of a basis at one end of a bar word.
#[derive(Clone, Debug)]
pub(crate) struct EndBasis {
    pub degrees: Vec<i64>,
    pub weights: Option<Vec<u32>>,
}

impl EndBasis {
    pub fn of_algebra(a: &GradedAlgebra) -> Self {
        EndBasis {
            degrees: a.degrees().to_vec(),
            weights: a.is_weighted().then(|| (0..a.dim()).map(|i| a.weight(i).unwrap()).collect()),
        }
    }

    pub fn of_module(m: &SidedModule) -> Self {
        EndBasis {
            degrees: (0..m.dim()).map(|i| m.degree(i)).collect(),
            weights: m.weight(0).map(|_| (0..m.dim()).map(|i| m.weight(i).unwrap()).collect()),
        }
    }

    fn len(&self) -> usize {
        self.degrees.len()
    }

    fn weight(&self, i: usize) -> u32 {
        self.weights.as_ref().map_or(0, |w| w[i])
    }

    fn min_degree(&self) -> i64 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }
}

/// Validity of a bar complex with ends `ends` over `a`, cut at N.
pub(crate) fn bar_validity(a: &GradedAlgebra, ends: &[&EndBasis], trunc: TruncationPolicy) -> Validity {
    let n = trunc.max_simplicial as i64;
    let reduced = a.reduced_basis();
    let ideal_nonneg = reduced.iter().all(|&i| a.degree(i) >= 0);
    let end_shift: i64 = ends.iter().map(|e| e.min_degree().min(0)).sum();
    let safe_degree = ideal_nonneg.then_some(n - 1 + end_shift);
    let max_weight = a
        .is_weighted()
        .then(|| a.max_weight().unwrap_or(trunc.max_simplicial as u32));
    let exact_weights = match max_weight {
        Some(m) if a.ideal_has_positive_weight() => (0..=m.min(trunc.max_simplicial as u32)).collect(),
        _ => Default::default(),
    };
    Validity {
        max_weight,
        safe_degree,
        exact_weights,
    }
}

/// A chain: end index, bar word, end index (the last is absent for the
/// cyclic bar). Stored flat as `[left, word.., right]`.
pub type Key = Vec<u32>;

/// Enumerates words over `letters` of length ≤ N, keeping only total weights
/// ≤ `weight_cap` (when given). Calls `emit(word, weight, degree)`.
pub fn for_each_word(
    letters: &[usize],
    degrees: impl Fn(usize) -> i64,
    weights: impl Fn(usize) -> u32,
    max_len: usize,
    weight_cap: Option<u32>,
    emit: impl FnMut(&[u32], u32, i64),
) {
    for_each_word_capped(letters, degrees, weights, max_len, weight_cap, None, emit)
}

/// As `for_each_word`, also dropping words whose shifted degree
/// Σ(|l| + 1) exceeds `shifted_cap`. Letters must have degree ≥ −1.
pub fn for_each_word_capped(
    letters: &[usize],
    degrees: impl Fn(usize) -> i64,
    weights: impl Fn(usize) -> u32,
    max_len: usize,
    weight_cap: Option<u32>,
    shifted_cap: Option<i64>,
    mut emit: impl FnMut(&[u32], u32, i64),
) {
    struct Ctx<'a> {
        letters: &'a [usize],
        degrees: &'a dyn Fn(usize) -> i64,
        weights: &'a dyn Fn(usize) -> u32,
        max_len: usize,
        cap: Option<u32>,
        shifted_cap: Option<i64>,
    }
    fn rec(c: &Ctx, word: &mut Vec<u32>, w: u32, d: i64, emit: &mut dyn FnMut(&[u32], u32, i64)) {
        emit(word, w, d);
        if word.len() == c.max_len {
            return;
        }
        for &l in c.letters {
            let w2 = w + (c.weights)(l);
            let d2 = d + (c.degrees)(l);
            if c.cap.is_some_and(|m| w2 > m) || c.shifted_cap.is_some_and(|m| d2 + word.len() as i64 + 1 > m) {
                continue;
            }
            word.push(l as u32);
            rec(c, word, w2, d2, emit);
            word.pop();
        }
    }
    let ctx = Ctx {
        letters,
        degrees: &degrees,
        weights: &weights,
        max_len,
        cap: weight_cap,
        shifted_cap,
    };
    rec(&ctx, &mut Vec::new(), 0, 0, &mut emit);
}

/// Chain set with per-degree ordering and an index. Faces landing outside
/// the set are dropped, so the set must be a subquotient closed under d.
pub struct ChainSet {
    field: Field,
    weighted: bool,
    by_degree: BTreeMap<i64, Vec<(Key, u32)>>,
}

impl ChainSet {
    pub fn new(field: Field, weighted: bool) -> Self {
        ChainSet {
            field,
            weighted,
            by_degree: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, key: Key, degree: i64, weight: u32) {
        self.by_degree.entry(degree).or_default().push((key, weight));
    }

    pub fn len(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_degree.values().all(Vec::is_empty)
    }

    /// Builds the complex whose differential sends each chain to `faces(key)`.
    pub fn build(self, faces: impl Fn(&[u32]) -> Vec<(Key, FieldScalar)>) -> Result<ChainComplex> {
        self.build_with_keys(faces).map(|(c, _)| c)
    }

    /// As `build`, also returning the chain keys of each degree in basis order.
    pub fn build_with_keys(
        mut self,
        faces: impl Fn(&[u32]) -> Vec<(Key, FieldScalar)>,
    ) -> Result<(ChainComplex, BTreeMap<i64, Vec<Key>>)> {
        for v in self.by_degree.values_mut() {
            v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        }
        let index: BTreeMap<i64, HashMap<&[u32], usize>> = self
            .by_degree
            .iter()
            .map(|(&n, v)| (n, v.iter().enumerate().map(|(i, (k, _))| (k.as_slice(), i)).collect()))
            .collect();
        let mut diffs = BTreeMap::new();
        for (&n, chains) in &self.by_degree {
            let Some(below) = index.get(&(n - 1)) else { continue };
            let columns: Vec<SparseVec> = chains
                .iter()
                .map(|(k, _)| {
                    let terms = faces(k)
                        .into_iter()
                        .filter_map(|(t, c)| below.get(t.as_slice()).map(|&r| (r, c)))
                        .collect();
                    canonicalize(terms)
                })
                .collect();
            let d = ExactMatrix::from_columns(self.field, self.by_degree[&(n - 1)].len(), columns);
            diffs.insert(n, d);
        }
        drop(index);
        let keys = self
            .by_degree
            .iter()
            .map(|(&n, v)| (n, v.iter().map(|(k, _)| k.clone()).collect()))
            .collect();
        let weighted = self.weighted;
        let pieces = self.by_degree.into_iter().map(|(n, v)| {
            let piece = Piece::anonymous(v.len());
            let piece = if weighted {
                piece.with_weights(v.into_iter().map(|(_, w)| w).collect()).unwrap()
            } else {
                piece
            };
            (n, piece)
        });
        let space = GradedSpace::from_pieces(pieces)?;
        Ok((ChainComplex::assemble(self.field, space, diffs)?, keys))
    }
}

/// μ(b_i, b_j) with the unit component removed (the product in A / k·1).
fn reduced_product(a: &GradedAlgebra, i: usize, j: usize) -> impl Iterator<Item = &(usize, FieldScalar)> {
    let u = a.unit();
    a.mul_basis(i, j).iter().filter(move |(k, _)| *k != u)
}

fn weight_cap(validity: &Validity) -> Option<u32> {
    validity.max_weight
}

/// Without exact weights only degrees ≤ safe + 1 matter, and with a
/// non-negative ideal the chains of degree ≤ D form a subcomplex.
fn degree_cap(validity: &Validity) -> Option<i64> {
    if validity.exact_weights.is_empty() {
        validity.safe_degree.map(|s| s + 1)
    } else {
        None
    }
}

/// Normalized B(Q, A, P): p-simplices Q ⊗ Ā^{⊗p} ⊗ P, d = Σ (−1)^i d_i.
pub fn two_sided_bar(
    q: &SidedModule,
    a: &GradedAlgebra,
    p: &SidedModule,
    trunc: TruncationPolicy,
) -> Result<BarComplex> {
    if q.side() != Side::Right || p.side() != Side::Left {
        return Err(Error::ModuleMismatch("need a right module on the left and a left module on the right".into()));
    }
    if q.algebra().as_ref() != a || p.algebra().as_ref() != a {
        return Err(Error::ModuleMismatch("boundary modules are over a different algebra".into()));
    }
    let (qe, pe) = (EndBasis::of_module(q), EndBasis::of_module(p));
    let validity = bar_validity(a, &[&qe, &pe], trunc);
    let cap = weight_cap(&validity);
    let dcap = degree_cap(&validity);
    let letters = a.reduced_basis();
    let mut set = ChainSet::new(a.field(), a.is_weighted());
    let wa = |i: usize| a.weight(i).unwrap_or(0);
    for l in 0..qe.len() {
        for r in 0..pe.len() {
            let base_w = qe.weight(l) + pe.weight(r);
            if cap.is_some_and(|c| base_w > c) {
                continue;
            }
            let base_d = qe.degrees[l] + pe.degrees[r];
            for_each_word_capped(
                &letters,
                |i| a.degree(i),
                wa,
                trunc.max_simplicial,
                cap.map(|c| c - base_w),
                dcap.map(|c| c - base_d),
                |word, w, d| {
                    let mut key = Vec::with_capacity(word.len() + 2);
                    key.push(l as u32);
                    key.extend_from_slice(word);
                    key.push(r as u32);
                    set.push(key, base_d + d + word.len() as i64, base_w + w);
                },
            );
        }
    }
    let f = a.field();
    set.build(|key| {
        let pdeg = key.len() - 2;
        let mut out = Vec::new();
        for i in 0..=pdeg {
            if pdeg == 0 {
                break;
            }
            let sign = f.sign(i % 2 == 1);
            if i == 0 {
                for (k, c) in q.act(key[1] as usize, key[0] as usize) {
                    let mut t = vec![*k as u32];
                    t.extend_from_slice(&key[2..]);
                    out.push((t, &sign * c));
                }
            } else if i == pdeg {
                let n = key.len();
                for (k, c) in p.act(key[n - 2] as usize, key[n - 1] as usize) {
                    let mut t = key[..n - 2].to_vec();
                    t.push(*k as u32);
                    out.push((t, &sign * c));
                }
            } else {
                for (k, c) in reduced_product(a, key[i] as usize, key[i + 1] as usize) {
                    let mut t = key[..i].to_vec();
                    t.push(*k as u32);
                    t.extend_from_slice(&key[i + 2..]);
                    out.push((t, &sign * c));
                }
            }
        }
        out
    })
    .map(|complex| BarComplex { complex, validity })
}

/// Cardinality of a cyclic-bar chain a0 ⊗ a1 ⊗ … ⊗ ap: p, plus one when a0
/// is not the unit.
pub fn cardinality(a: &GradedAlgebra, key: &[u32]) -> usize {
    key.len() - 1 + usize::from(key[0] as usize != a.unit())
}

/// Normalized cyclic bar complex a0 ⊗ Ā^{⊗p} with
/// b = Σ_{i<p} (−1)^i d_i + (−1)^{p + |a_p|(|a_0|+…+|a_{p−1}|)} a_p a_0 ⊗ a_1 ⊗ … ⊗ a_{p−1}.
pub fn hochschild_complex(a: &GradedAlgebra, trunc: TruncationPolicy) -> Result<BarComplex> {
    hochschild_complex_where(a, trunc, |_| true)
}

/// The subquotient F_hi / F_{lo−1} of the cardinality filtration.
pub fn hochschild_complex_cardinality(
    a: &GradedAlgebra,
    trunc: TruncationPolicy,
    lo: usize,
    hi: usize,
) -> Result<BarComplex> {
    hochschild_complex_where(a, trunc, |k| (lo..=hi).contains(&k))
}

fn hochschild_complex_where(
    a: &GradedAlgebra,
    trunc: TruncationPolicy,
    keep_cardinality: impl Fn(usize) -> bool,
) -> Result<BarComplex> {
    let ends = EndBasis::of_algebra(a);
    let validity = bar_validity(a, &[&ends], trunc);
    let cap = weight_cap(&validity);
    let dcap = degree_cap(&validity);
    let letters = a.reduced_basis();
    let wa = |i: usize| a.weight(i).unwrap_or(0);
    let mut set = ChainSet::new(a.field(), a.is_weighted());
    for a0 in 0..a.dim() {
        let w0 = wa(a0);
        if cap.is_some_and(|c| w0 > c) {
            continue;
        }
        let wcap = cap.map(|c| c - w0);
        let dc = dcap.map(|c| c - a.degree(a0));
        for_each_word_capped(&letters, |i| a.degree(i), wa, trunc.max_simplicial, wcap, dc, |word, w, d| {
            let mut key = Vec::with_capacity(word.len() + 1);
            key.push(a0 as u32);
            key.extend_from_slice(word);
            if keep_cardinality(cardinality(a, &key)) {
                set.push(key, a.degree(a0) + d + word.len() as i64, w0 + w);
            }
        });
    }
    let f = a.field();
    let complex = set.build(|key| cyclic_faces(a, f, key))?;
    Ok(BarComplex { complex, validity })
}

fn cyclic_faces(a: &GradedAlgebra, f: Field, key: &[u32]) -> Vec<(Key, FieldScalar)> {
    let p = key.len() - 1;
    let mut out = Vec::new();
    if p == 0 {
        return out;
    }
    for (k, c) in a.mul_basis(key[0] as usize, key[1] as usize) {
        let mut t = vec![*k as u32];
        t.extend_from_slice(&key[2..]);
        out.push((t, c.clone()));
    }
    for i in 1..p {
        let sign = f.sign(i % 2 == 1);
        for (k, c) in reduced_product(a, key[i] as usize, key[i + 1] as usize) {
            let mut t = key[..i].to_vec();
            t.push(*k as u32);
            t.extend_from_slice(&key[i + 2..]);
            out.push((t, &sign * c));
        }
    }
    let last = key[p] as usize;
    let before: i64 = key[..p].iter().map(|&i| a.degree(i as usize)).sum();
    let odd = (p as i64 + a.degree(last) * before) % 2 != 0;
    for (k, c) in a.mul_basis(last, key[0] as usize) {
        let mut t = vec![*k as u32];
        t.extend_from_slice(&key[1..p]);
        out.push((t, c.signed(odd)));
    }
    out
}

/// Homology of B(Q, A, P) with N = maxDeg + 1, restricted to its exact region.
pub fn balanced_tensor_homology(
    q: &SidedModule,
    a: &GradedAlgebra,
    p: &SidedModule,
    max_deg: usize,
) -> Result<ComputedBetti> {
    two_sided_bar(q, a, p, TruncationPolicy::for_max_degree(max_deg))?.homology()
}

/// Homology of the cyclic bar complex with N = maxDeg + 1, restricted to its
/// exact region.
pub fn hochschild_homology(a: &GradedAlgebra, max_deg: usize) -> Result<ComputedBetti> {
    hochschild_complex(a, TruncationPolicy::for_max_degree(max_deg))?.homology()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebras::{make_algebra, module_from, preset, ModuleKind, PresetKind, RawAlgebra, RawBasis};
    use crate::complexes::BettiTable;

    fn q() -> Field {
        Field::Rational
    }

    fn field_alg() -> Arc<GradedAlgebra> {
        Arc::new(preset(q(), PresetKind::SquareZero { dim: 0, deg: 0 }, None).unwrap())
    }

    fn dual_numbers() -> Arc<GradedAlgebra> {
        Arc::new(preset(q(), PresetKind::SquareZero { dim: 1, deg: 0 }, None).unwrap())
    }

    /// k × k with basis 1 = e + f and e (so f = 1 − e), unweighted.
    fn split_pair() -> GradedAlgebra {
        let f = q();
        let b = |l: &str| RawBasis { label: l.into(), degree: 0, weight: None };
        make_algebra(RawAlgebra {
            field: f,
            basis: vec![b("1"), b("e")],
            products: vec![(1, 1, vec![(1, f.one())])],
            unit: 0,
            augmentation: None,
            commutative: true,
            max_weight: None,
        })
        .unwrap()
    }

    #[test]
    fn two_sided_bar_examples() {
        let k = field_alg();
        let r = module_from(ModuleKind::Regular(Side::Right), &k).unwrap();
        let l = module_from(ModuleKind::Regular(Side::Left), &k).unwrap();
        let h = balanced_tensor_homology(&r, &k, &l, 4).unwrap();
        assert_eq!(h.table, BettiTable::from_weighted([((0, 0), 1)]));

        let d = dual_numbers();
        let r = module_from(ModuleKind::Augmentation(Side::Right), &d).unwrap();
        let l = module_from(ModuleKind::Augmentation(Side::Left), &d).unwrap();
        let bar = two_sided_bar(&r, &d, &l, TruncationPolicy::new(6)).unwrap();
        bar.complex.check_square_zero().unwrap();
        let h = bar.homology().unwrap().table.by_degree();
        // 2-periodic minimal resolution of k over k[x]/x²: one generator per degree.
        for n in 0..=4 {
            assert_eq!(h.get(n, None), 1, "degree {n}");
        }
    }

    #[test]
    fn regular_modules_give_the_algebra() {
        let t = Arc::new(preset(q(), PresetKind::Tensor { dim: 2, deg: 1 }, Some(3)).unwrap());
        let r = module_from(ModuleKind::Regular(Side::Right), &t).unwrap();
        let l = module_from(ModuleKind::Regular(Side::Left), &t).unwrap();
        let h = balanced_tensor_homology(&r, &t, &l, 3).unwrap();
        let mut expect = BettiTable::new();
        for i in 0..t.dim() {
            expect.add(t.degree(i), t.weight(i), 1);
        }
        assert_eq!(h.table, expect);
    }

    #[test]
    fn hochschild_examples() {
        let h = hochschild_homology(&field_alg(), 4).unwrap();
        assert_eq!(h.table, BettiTable::from_weighted([((0, 0), 1)]));

        let h = hochschild_homology(&split_pair(), 3).unwrap();
        assert_eq!(h.table, BettiTable::from_degrees([(0, 2)]));

        let h = hochschild_homology(&dual_numbers(), 5).unwrap();
        let by_deg = h.table.by_degree();
        assert_eq!(by_deg.get(0, None), 2);
        for n in 1..=4 {
            assert_eq!(by_deg.get(n, None), 1, "degree {n}");
        }
    }

    #[test]
    fn cyclic_bar_squares_to_zero_with_signs() {
        for kind in [
            PresetKind::Exterior { dim: 2, deg: 1 },
            PresetKind::Tensor { dim: 2, deg: 1 },
            PresetKind::Sym { dim: 1, deg: 2 },
            PresetKind::TruncPoly { order: 3 },
        ] {
            let a = preset(q(), kind, Some(4)).unwrap();
            let c = hochschild_complex(&a, TruncationPolicy::new(4)).unwrap();
            c.complex.check_square_zero().unwrap();
        }
    }
}
