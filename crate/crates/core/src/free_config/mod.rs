//! Configuration-space models over the circle: the free-algebra formula,
//! cardinality layers, and the commutative (Sym) expansion.

use std::collections::BTreeMap;

use crate::algebras::{preset, GradedAlgebra, PresetKind};
use crate::bar::{hochschild_complex, hochschild_complex_cardinality, hochschild_homology, ChainSet, TruncationPolicy};
use crate::complexes::{BettiTable, ChainComplex, ComputedBetti, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Field};
use crate::report::{describe_diff, CheckReport};

/// Basis degrees of a graded space in piece order.
pub fn basis_degrees(v: &GradedSpace) -> Vec<i64> {
    v.pieces().flat_map(|(n, p)| std::iter::repeat_n(n, p.dim())).collect()
}

/// V with `dim` basis vectors in degree `deg`.
pub fn generator_space(dim: usize, deg: i64) -> GradedSpace {
    GradedSpace::from_pieces([(deg, crate::complexes::Piece::anonymous(dim))]).unwrap()
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

/// Koszul sign of moving the last factor to the front.
fn rotation_odd(degrees: &[i64], t: &[usize]) -> bool {
    let (last, rest) = t.split_last().expect("k ≥ 1");
    let before: i64 = rest.iter().map(|&x| degrees[x]).sum();
    degrees[*last] * before % 2 != 0
}

/// t_k(x₁⊗…⊗x_k) = (−1)^{|x_k|(|x₁|+…+|x_{k−1}|)} x_k⊗x₁⊗…⊗x_{k−1} on V^{⊗k},
/// basis in lexicographic order.
pub fn cyclic_operator(field: Field, v: &GradedSpace, k: usize) -> ExactMatrix {
    cyclic_operator_on(field, &basis_degrees(v), k)
}

fn cyclic_operator_on(field: Field, degrees: &[i64], k: usize) -> ExactMatrix {
    assert!(k >= 1, "cyclic operator needs k ≥ 1");
    let n = degrees.len();
    let all = tuples(n, k);
    let trip = all.iter().enumerate().map(|(c, t)| {
        let mut r = vec![t[k - 1]];
        r.extend_from_slice(&t[..k - 1]);
        (tuple_index(n, &r), c, field.sign(rotation_odd(degrees, t)))
    });
    let size = all.len();
    ExactMatrix::from_triplets(field, size, size, trip).expect("indices in range")
}

/// Sign s with t_k^k = s·id. Every pair of factors is exchanged exactly
/// twice during a full rotation, so s = +1.
pub fn rotation_power_sign() -> i64 {
    1
}

/// Two-term complex 1 − t: W^{⊗k} → W^{⊗k} where a tuple of internal
/// degree s sits in degrees s + top and s + top − 1.
#[derive(Clone, Debug)]
pub struct CyclicLayerComplex {
    pub k: usize,
    /// Degrees used for the Koszul signs of t.
    pub sign_degrees: Vec<i64>,
    pub complex: ChainComplex,
}

fn cyclic_two_term(
    field: Field,
    internal: &[i64],
    sign_degrees: &[i64],
    weights: &[u32],
    k: usize,
    top: i64,
    weight_cap: Option<u32>,
) -> Result<CyclicLayerComplex> {
    let n = internal.len();
    let mut set = ChainSet::new(field, true);
    for t in tuples(n, k) {
        let w: u32 = t.iter().map(|&x| weights[x]).sum();
        if weight_cap.is_some_and(|c| w > c) {
            continue;
        }
        let s: i64 = t.iter().map(|&x| internal[x]).sum();
        for copy in [0u32, 1] {
            let mut key = vec![copy];
            key.extend(t.iter().map(|&x| x as u32));
            set.push(key, s + top - 1 + copy as i64, w);
        }
    }
    let complex = set.build(|key| {
        if key[0] == 0 {
            return Vec::new();
        }
        let t: Vec<usize> = key[1..].iter().map(|&x| x as usize).collect();
        let mut bottom = vec![0u32];
        bottom.extend_from_slice(&key[1..]);
        let mut rotated = vec![0u32, *key.last().unwrap()];
        rotated.extend_from_slice(&key[1..key.len() - 1]);
        let odd = rotation_odd(sign_degrees, &t);
        vec![(bottom, field.one()), (rotated, -field.sign(odd))]
    })?;
    Ok(CyclicLayerComplex {
        k,
        sign_degrees: sign_degrees.to_vec(),
        complex,
    })
}

/// Weight-k summand of ∫_{S¹} T(V): C_k-coinvariants of the k-cell circle
/// model, 1 − t_k: V^{⊗k} → V^{⊗k} in degrees (s + 1, s).
pub fn free_weight_layer(field: Field, v: &GradedSpace, k: usize) -> Result<BettiTable> {
    let degs = basis_degrees(v);
    let weights = vec![1; degs.len()];
    let layer = cyclic_two_term(field, &degs, &degs, &weights, k, 1, None)?;
    layer.complex.homology()
}

/// ∫_{S¹} T(V) through configuration spaces, weights ≤ `max_weight`.
pub fn free_facthom_circle(field: Field, v: &GradedSpace, max_weight: u32) -> Result<BettiTable> {
    let mut table = BettiTable::from_weighted([((0, 0), 1)]);
    if v.total_dim() == 0 {
        return Ok(table);
    }
    for k in 1..=max_weight as usize {
        for (d, w, n) in free_weight_layer(field, v, k)?.iter() {
            table.add(d, w, n);
        }
    }
    Ok(table)
}

/// ∫_ℝ T(V): each Conf_k(ℝ)/Σ_k is contractible, leaving V^{⊗k} in weight k.
pub fn free_facthom_line(v: &GradedSpace, max_weight: u32) -> BettiTable {
    let degs = basis_degrees(v);
    let mut table = BettiTable::from_weighted([((0, 0), 1)]);
    for k in 1..=max_weight as usize {
        for t in tuples(degs.len(), k) {
            let s: i64 = t.iter().map(|&x| degs[x]).sum();
            table.add(s, Some(k as u32), 1);
        }
    }
    table
}

fn require_layered(a: &GradedAlgebra) -> Result<()> {
    if !a.is_weighted() {
        return Err(Error::NotWeighted);
    }
    if !a.is_augmented() {
        return Err(Error::NotAugmented);
    }
    if let Some(i) = a.reduced_basis().into_iter().find(|&i| a.weight(i) == Some(0)) {
        return Err(Error::WeightZeroIdeal(a.label(i).to_string()));
    }
    Ok(())
}

/// The k-th layer as a two-term complex on (Ā[1])^{⊗k}: top copy in degree
/// s + k, bottom in s + k − 1, differential 1 − t on the shifted factors.
pub fn cardinality_layer_complex(a: &GradedAlgebra, k: usize, weight_cap: Option<u32>) -> Result<CyclicLayerComplex> {
    require_layered(a)?;
    let ideal = a.reduced_basis();
    let internal: Vec<i64> = ideal.iter().map(|&i| a.degree(i)).collect();
    let shifted: Vec<i64> = internal.iter().map(|d| d + 1).collect();
    let weights: Vec<u32> = ideal.iter().map(|&i| a.weight(i).unwrap()).collect();
    cyclic_two_term(a.field(), &internal, &shifted, &weights, k, k as i64, weight_cap)
}

/// Homology of the k-th cardinality layer, per weight (weights ≤ the
/// algebra's bound when it has one).
pub fn cardinality_layer(a: &GradedAlgebra, k: usize) -> Result<BettiTable> {
    cardinality_layer_complex(a, k, a.max_weight())?.complex.homology()
}

fn cmp_row(report: &mut CheckReport, label: String, left: &BettiTable, right: &BettiTable) {
    let l = ComputedBetti::exact(left.clone());
    let r = ComputedBetti::exact(right.clone());
    let diff = l.diff(&r);
    report.push(label, diff.is_empty(), describe_diff(&diff));
}

/// Weightwise checks of the cardinality filtration up to weight K:
/// each layer F_k/F_{k−1} of the cyclic bar has the homology of the
/// two-term model, H(F_K) agrees with Hochschild homology in weights ≤ K
/// and does not change for larger K, and layers of index k > w carry
/// nothing in weight w. Whether layer w alone reproduces weight w of
/// Hochschild homology is reported for every algebra and counted only for
/// square-zero ones, where the cyclic bar in weight w is the layer itself.
pub fn filtration_report(a: &GradedAlgebra, big_k: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("layers");
    if a.reduced_basis().is_empty() {
        report.note("vacuous", true, "augmentation ideal is zero");
        return Ok(report);
    }
    require_layered(a)?;
    let cap = big_k as u32;
    let trunc = TruncationPolicy::new(big_k + 2);
    let hh = hochschild_complex(a, trunc)?.complex.homology_where(|_, w| w.is_some_and(|w| w <= cap))?;
    let square_zero = a.products().iter().all(|(i, j, _)| *i == a.unit() || *j == a.unit());

    let mut layer_tables = BTreeMap::new();
    for k in 1..=big_k + 1 {
        let model = cardinality_layer_complex(a, k, Some(cap))?.complex.homology()?;
        layer_tables.insert(k, model);
    }
    for w in 1..=cap {
        let in_w = |t: &BettiTable| t.weight_part(Some(w));
        for k in 1..=w as usize {
            let quotient = hochschild_complex_cardinality(a, trunc, k, k)?
                .complex
                .homology_where(|_, x| x == Some(w))?;
            cmp_row(
                &mut report,
                format!("weight {w}: F_{k}/F_{} vs layer {k}", k - 1),
                &quotient,
                &in_w(&layer_tables[&k]),
            );
        }
        for k in (w as usize + 1)..=big_k + 1 {
            let stray = in_w(&layer_tables[&k]);
            report.push(
                format!("weight {w}: layer {k} vanishes"),
                stray.is_empty(),
                if stray.is_empty() { String::new() } else { stray.to_string() },
            );
        }
        for kk in [w as usize, big_k, big_k + 1] {
            let f = hochschild_complex_cardinality(a, trunc, 0, kk)?
                .complex
                .homology_where(|_, x| x == Some(w))?;
            cmp_row(&mut report, format!("weight {w}: H(F_{kk}) vs Hochschild"), &f, &in_w(&hh));
        }
        let layer = in_w(&layer_tables[&(w as usize)]);
        let diff = ComputedBetti::exact(layer.clone()).diff(&ComputedBetti::exact(in_w(&hh)));
        let label = format!("weight {w}: layer {w} vs Hochschild weight {w}");
        if square_zero {
            report.push(label, diff.is_empty(), describe_diff(&diff));
        } else {
            report.note(label, diff.is_empty(), describe_diff(&diff));
        }
    }
    Ok(report)
}

/// Dimensions of the free graded-commutative algebra on generators of the
/// given (degree, weight), up to `max_weight`. Odd generators square to zero.
pub fn free_commutative_dims(generators: &[(i64, u32)], max_weight: u32) -> BettiTable {
    let mut table = BettiTable::from_weighted([((0, 0), 1)]);
    for &(deg, w) in generators {
        let mut next = BettiTable::new();
        let top = if deg % 2 != 0 { 1 } else { u32::MAX };
        for (d, wt, n) in table.iter() {
            let wt = wt.unwrap();
            let mut e = 0u32;
            while e <= top && wt + e * w <= max_weight {
                next.add(d + e as i64 * deg, Some(wt + e * w), n);
                if w == 0 {
                    break;
                }
                e += 1;
            }
        }
        table = next;
    }
    table
}

/// Compares ∫_{S¹} Sym(V), computed as Hochschild homology of the Sym
/// preset, with Sym(C_*(S¹) ⊗ V) = Sym(V ⊕ V[1]) weightwise.
pub fn commutative_tensoring_check(
    field: Field,
    v: &GradedSpace,
    max_weight: u32,
    max_deg: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("sym");
    let degs = basis_degrees(v);
    if degs.is_empty() {
        report.note("vacuous", true, "V = 0");
        return Ok(report);
    }
    let deg = degs[0];
    if degs.iter().any(|&d| d != deg) {
        return Err(Error::Invariant("sym preset needs V concentrated in one degree".into()));
    }
    let a = preset(field, PresetKind::Sym { dim: degs.len(), deg }, Some(max_weight))?;
    let left = hochschild_homology(&a, max_deg)?;
    let gens: Vec<(i64, u32)> = degs.iter().flat_map(|&d| [(d, 1), (d + 1, 1)]).collect();
    let right = ComputedBetti::new(free_commutative_dims(&gens, max_weight), left.validity.clone());
    compare_weights(&mut report, &left, &right, max_weight);
    Ok(report)
}

/// Compares the configuration-space formula for T(V) with Hochschild
/// homology of the tensor preset, weightwise.
pub fn free_check(field: Field, v: &GradedSpace, max_weight: u32, max_deg: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("free");
    let degs = basis_degrees(v);
    let deg = degs.first().copied().unwrap_or(0);
    if degs.iter().any(|&d| d != deg) {
        return Err(Error::Invariant("tensor preset needs V concentrated in one degree".into()));
    }
    let a = preset(field, PresetKind::Tensor { dim: degs.len(), deg }, Some(max_weight))?;
    let left = hochschild_homology(&a, max_deg)?;
    let right = ComputedBetti::new(free_facthom_circle(field, v, max_weight)?, left.validity.clone());
    compare_weights(&mut report, &left, &right, max_weight);
    Ok(report)
}

fn compare_weights(report: &mut CheckReport, left: &ComputedBetti, right: &ComputedBetti, max_weight: u32) {
    for w in 0..=max_weight {
        let pick = |c: &ComputedBetti| ComputedBetti::new(c.table.weight_part(Some(w)), c.validity.clone());
        let diff = pick(left).diff(&pick(right));
        let exact = if left.validity.weight_is_exact(Some(w)) {
            "all degrees".to_string()
        } else {
            match left.validity.safe_degree {
                Some(s) => format!("degrees ≤ {s}"),
                None => "no exact range".to_string(),
            }
        };
        let detail = if diff.is_empty() { exact } else { describe_diff(&diff) };
        report.push(format!("weight {w}"), diff.is_empty(), detail);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn cyclic_operator_examples() {
        let one = cyclic_operator(q(), &generator_space(1, 0), 3);
        assert_eq!(one, ExactMatrix::identity(q(), 1));
        let odd = cyclic_operator(q(), &generator_space(1, 1), 2);
        assert_eq!(odd, ExactMatrix::from_i64(q(), &[&[-1]]).unwrap());
        let swap = cyclic_operator(q(), &generator_space(2, 0), 2);
        let expect = ExactMatrix::from_i64(
            q(),
            &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(swap, expect);
    }

    #[test]
    fn rotation_power_is_identity() {
        for dim in 1..=2 {
            for deg in 0..=1 {
                for k in 1..=5 {
                    let t = cyclic_operator(q(), &generator_space(dim, deg), k);
                    let mut p = ExactMatrix::identity(q(), t.rows());
                    for _ in 0..k {
                        p = t.mul(&p).unwrap();
                    }
                    let id = ExactMatrix::identity(q(), t.rows()).scale(&q().from_i64(rotation_power_sign()));
                    assert_eq!(p, id, "dim {dim} deg {deg} k {k}");
                }
            }
        }
    }

    #[test]
    fn free_layer_examples() {
        let b = |v: &GradedSpace, k| free_weight_layer(q(), v, k).unwrap().by_degree();
        assert_eq!(b(&generator_space(1, 0), 3), BettiTable::from_degrees([(0, 1), (1, 1)]));
        assert_eq!(b(&generator_space(2, 0), 2), BettiTable::from_degrees([(0, 3), (1, 3)]));
        assert!(b(&generator_space(1, 1), 2).is_empty());
        assert_eq!(
            free_facthom_circle(q(), &generator_space(0, 0), 3).unwrap(),
            BettiTable::from_weighted([((0, 0), 1)])
        );
    }

    #[test]
    fn free_formula_matches_tensor_preset() {
        let v = generator_space(1, 0);
        let free = free_facthom_circle(q(), &v, 2).unwrap();
        assert_eq!(
            free,
            BettiTable::from_weighted([((0, 0), 1), ((0, 1), 1), ((1, 1), 1), ((0, 2), 1), ((1, 2), 1)])
        );
        let t = preset(q(), PresetKind::Tensor { dim: 1, deg: 0 }, Some(2)).unwrap();
        assert_eq!(hochschild_homology(&t, 3).unwrap().table, free);
    }

    #[test]
    fn layer_examples() {
        let d = preset(q(), PresetKind::SquareZero { dim: 1, deg: 0 }, None).unwrap();
        assert_eq!(
            cardinality_layer(&d, 1).unwrap(),
            BettiTable::from_weighted([((0, 1), 1), ((1, 1), 1)])
        );
        assert!(cardinality_layer(&d, 2).unwrap().is_empty());
        let k = preset(q(), PresetKind::SquareZero { dim: 0, deg: 0 }, None).unwrap();
        assert!(cardinality_layer(&k, 3).unwrap().is_empty());
    }

    #[test]
    fn filtration_reports() {
        let t = preset(q(), PresetKind::Tensor { dim: 1, deg: 0 }, Some(3)).unwrap();
        let r = filtration_report(&t, 3).unwrap();
        assert!(r.passed(), "{r}");
        let d = preset(q(), PresetKind::SquareZero { dim: 1, deg: 0 }, None).unwrap();
        assert!(filtration_report(&d, 2).unwrap().passed());
        let k = preset(q(), PresetKind::SquareZero { dim: 0, deg: 0 }, None).unwrap();
        assert!(filtration_report(&k, 2).unwrap().passed());
    }

    #[test]
    fn layer_model_matches_bar_quotient_with_signs() {
        for kind in [PresetKind::Exterior { dim: 2, deg: 1 }, PresetKind::Sym { dim: 1, deg: 1 }, PresetKind::Tensor { dim: 1, deg: 1 }] {
            let a = preset(q(), kind, Some(4)).unwrap();
            let r = filtration_report(&a, 3).unwrap();
            assert!(r.passed(), "{kind}\n{r}");
        }
    }

    #[test]
    fn sym_expansion_examples() {
        let gens = [(0, 1), (0, 1), (1, 1), (1, 1)];
        let t = free_commutative_dims(&gens, 2).weight_part(Some(2));
        assert_eq!(t, BettiTable::from_weighted([((0, 2), 3), ((1, 2), 4), ((2, 2), 1)]));
        for (dim, deg) in [(1, 0), (2, 0), (1, 1)] {
            let r = commutative_tensoring_check(q(), &generator_space(dim, deg), 3, 3).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(commutative_tensoring_check(q(), &generator_space(0, 0), 3, 3).unwrap().passed());
    }

    #[test]
    fn free_checks_pass() {
        for (dim, deg) in [(1, 0), (2, 0), (1, 1), (2, 1)] {
            let r = free_check(q(), &generator_space(dim, deg), 3, 3).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn line_formula_matches_interval() {
        let t = preset(q(), PresetKind::Tensor { dim: 2, deg: 1 }, Some(3)).unwrap();
        let mut dims = BettiTable::new();
        for i in 0..t.dim() {
            dims.add(t.degree(i), t.weight(i), 1);
        }
        assert_eq!(free_facthom_line(&generator_space(2, 1), 3), dims);
    }
}
