use std::collections::HashMap;
use std::fmt;

use super::{make_algebra, GradedAlgebra, RawAlgebra, RawBasis};
use crate::error::{Error, Result};
use crate::linalg::Field;

/// Named weight-graded algebras generated by V in weight 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresetKind {
    /// Free associative algebra T(V).
    Tensor { dim: usize, deg: i64 },
    /// Free graded-commutative algebra on V.
    Sym { dim: usize, deg: i64 },
    /// Λ(V): generators anticommute and square to zero.
    Exterior { dim: usize, deg: i64 },
    /// k[x]/(x^order), x in degree 0.
    TruncPoly { order: usize },
    /// k ⊕ V with V·V = 0.
    SquareZero { dim: usize, deg: i64 },
}

impl PresetKind {
    pub fn name(&self) -> &'static str {
        match self {
            PresetKind::Tensor { .. } => "tensor",
            PresetKind::Sym { .. } => "sym",
            PresetKind::Exterior { .. } => "exterior",
            PresetKind::TruncPoly { .. } => "truncpoly",
            PresetKind::SquareZero { .. } => "squarezero",
        }
    }

    /// Builds a kind from its name and integer parameters.
    pub fn from_name(name: &str, params: &[i64]) -> Result<PresetKind> {
        let bad = || Error::Invariant(format!("bad parameters for preset {name}: {params:?}"));
        let dim_deg = || -> Result<(usize, i64)> {
            match params {
                [d, g] if *d >= 0 => Ok((*d as usize, *g)),
                _ => Err(bad()),
            }
        };
        Ok(match name {
            "tensor" => {
                let (dim, deg) = dim_deg()?;
                PresetKind::Tensor { dim, deg }
            }
            "sym" => {
                let (dim, deg) = dim_deg()?;
                PresetKind::Sym { dim, deg }
            }
            "exterior" => {
                let (dim, deg) = dim_deg()?;
                PresetKind::Exterior { dim, deg }
            }
            "squarezero" => {
                let (dim, deg) = dim_deg()?;
                PresetKind::SquareZero { dim, deg }
            }
            "truncpoly" => match params {
                [o] if *o >= 1 => PresetKind::TruncPoly { order: *o as usize },
                _ => return Err(bad()),
            },
            _ => return Err(Error::Invariant(format!("unknown preset `{name}`"))),
        })
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            PresetKind::Tensor { dim, deg }
            | PresetKind::Sym { dim, deg }
            | PresetKind::Exterior { dim, deg }
            | PresetKind::SquareZero { dim, deg } => vec![dim as i64, deg],
            PresetKind::TruncPoly { order } => vec![order as i64],
        }
    }

    fn infinite(&self) -> bool {
        match *self {
            PresetKind::Tensor { dim, .. } => dim > 0,
            PresetKind::Sym { dim, deg } => dim > 0 && deg % 2 == 0,
            _ => false,
        }
    }
}

impl fmt::Display for PresetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params().iter().map(|x| x.to_string()).collect();
        write!(f, "{}({})", self.name(), p.join(","))
    }
}

fn letters(dim: usize) -> Vec<String> {
    if dim == 1 {
        vec!["x".into()]
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

/// Monomial label from exponents, e.g. `x1^2x2`.
fn monomial_label(names: &[String], exps: &[usize]) -> String {
    let mut s = String::new();
    for (n, &e) in names.iter().zip(exps) {
        match e {
            0 => {}
            1 => s.push_str(n),
            _ => s.push_str(&format!("{n}^{e}")),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Exponent vectors of total weight w with entries ≤ cap, in lexicographic
/// order with x1 largest first.
fn exponent_vectors(dim: usize, w: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, w: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == dim {
            if w <= cap {
                prefix.push(w);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for e in (0..=w.min(cap)).rev() {
            prefix.push(e);
            rec(dim, w - e, cap, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if w == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(dim, w, cap, &mut Vec::new(), &mut out);
    out
}

/// Builds a preset. Infinite-dimensional presets need `max_weight`; finite
/// ones are cut at `max_weight` when it is given.
pub fn preset(field: Field, kind: PresetKind, max_weight: Option<u32>) -> Result<GradedAlgebra> {
    if kind.infinite() && max_weight.is_none() {
        return Err(Error::MissingMaxWeight(kind.to_string()));
    }
    let cap = |natural: usize| max_weight.map_or(natural, |m| natural.min(m as usize));
    let raw = match kind {
        PresetKind::Tensor { dim, deg } => tensor_raw(field, dim, deg, cap(usize::MAX)),
        PresetKind::Sym { dim, deg } => {
            if deg % 2 == 0 {
                monomial_raw(field, dim, deg, cap(usize::MAX), usize::MAX, false)
            } else {
                monomial_raw(field, dim, deg, cap(dim), 1, true)
            }
        }
        PresetKind::Exterior { dim, deg } => monomial_raw(field, dim, deg, cap(dim), 1, true),
        PresetKind::TruncPoly { order } => monomial_raw(field, 1, 0, cap(order - 1), usize::MAX, false),
        PresetKind::SquareZero { dim, deg } => squarezero_raw(field, dim, deg, cap(1)),
    };
    let commutative = match kind {
        PresetKind::Tensor { dim, .. } => dim <= 1,
        PresetKind::Exterior { dim, deg } => dim <= 1 || deg % 2 != 0,
        _ => true,
    };
    let odd_tensor_square = matches!(kind, PresetKind::Tensor { dim: 1, deg } if deg % 2 != 0);
    make_algebra(RawAlgebra {
        commutative: commutative && !odd_tensor_square,
        max_weight,
        ..raw
    })
}

fn base(field: Field) -> RawAlgebra {
    RawAlgebra {
        field,
        basis: vec![RawBasis { label: "1".into(), degree: 0, weight: Some(0) }],
        products: Vec::new(),
        unit: 0,
        augmentation: Some(Vec::new()),
        commutative: false,
        max_weight: None,
    }
}

fn tensor_raw(field: Field, dim: usize, deg: i64, top: usize) -> RawAlgebra {
    let names = letters(dim);
    let mut raw = base(field);
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    let top = if dim == 0 { 0 } else { top };
    for _ in 0..top {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..dim {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let index: HashMap<Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    for w in words.iter().skip(1) {
        let label = if dim == 1 {
            monomial_label(&names, &[w.len()])
        } else {
            w.iter().map(|&l| names[l].as_str()).collect()
        };
        raw.basis.push(RawBasis {
            label,
            degree: deg * w.len() as i64,
            weight: Some(w.len() as u32),
        });
    }
    for (i, u) in words.iter().enumerate().skip(1) {
        for (j, v) in words.iter().enumerate().skip(1) {
            let mut uv = u.clone();
            uv.extend(v);
            if let Some(&k) = index.get(&uv) {
                raw.products.push((i, j, vec![(k, field.one())]));
            }
        }
    }
    raw
}

/// Monomials with exponents ≤ `exp_cap` up to weight `top`. With
/// `anticommuting`, generators obey x_i x_j = −x_j x_i.
fn monomial_raw(
    field: Field,
    dim: usize,
    deg: i64,
    top: usize,
    exp_cap: usize,
    anticommuting: bool,
) -> RawAlgebra {
    let names = letters(dim);
    let mut raw = base(field);
    let mut monos: Vec<Vec<usize>> = vec![vec![0; dim]];
    let top = if dim == 0 { 0 } else { top };
    for w in 1..=top {
        monos.extend(exponent_vectors(dim, w, exp_cap));
    }
    let index: HashMap<Vec<usize>, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    for m in monos.iter().skip(1) {
        let w: usize = m.iter().sum();
        raw.basis.push(RawBasis {
            label: monomial_label(&names, m),
            degree: deg * w as i64,
            weight: Some(w as u32),
        });
    }
    for (i, a) in monos.iter().enumerate().skip(1) {
        for (j, b) in monos.iter().enumerate().skip(1) {
            let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let Some(&k) = index.get(&sum) else { continue };
            let mut odd = false;
            if anticommuting {
                // Sign of sorting the generators of a followed by those of b.
                let inversions: usize = (0..dim)
                    .map(|t| b[t] * a[t + 1..].iter().sum::<usize>())
                    .sum();
                odd = inversions % 2 == 1;
            }
            raw.products.push((i, j, vec![(k, field.sign(odd))]));
        }
    }
    raw
}

fn squarezero_raw(field: Field, dim: usize, deg: i64, top: usize) -> RawAlgebra {
    let mut raw = base(field);
    if top >= 1 {
        for name in letters(dim) {
            raw.basis.push(RawBasis { label: name, degree: deg, weight: Some(1) });
        }
    }
    raw
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims_by_weight(a: &GradedAlgebra) -> Vec<usize> {
        let top = a.top_weight().unwrap_or(0) as usize;
        let mut v = vec![0; top + 1];
        for i in 0..a.dim() {
            v[a.weight(i).unwrap() as usize] += 1;
        }
        v
    }

    #[test]
    fn preset_examples() {
        let q = Field::Rational;
        let d = preset(q, PresetKind::SquareZero { dim: 1, deg: 0 }, None).unwrap();
        assert_eq!(d.dim(), 2);
        let t = preset(q, PresetKind::Tensor { dim: 2, deg: 0 }, Some(2)).unwrap();
        assert_eq!(dims_by_weight(&t), vec![1, 2, 4]);
        let s = preset(q, PresetKind::Sym { dim: 1, deg: 1 }, Some(3)).unwrap();
        assert_eq!(dims_by_weight(&s), vec![1, 1]);
        assert!(matches!(
            preset(q, PresetKind::Tensor { dim: 1, deg: 0 }, None),
            Err(Error::MissingMaxWeight(_))
        ));
    }

    #[test]
    fn sym_counts_and_signs() {
        let q = Field::Rational;
        let s = preset(q, PresetKind::Sym { dim: 2, deg: 0 }, Some(3)).unwrap();
        assert_eq!(dims_by_weight(&s), vec![1, 2, 3, 4]);
        assert_eq!(&s.labels()[3..6], &["x1^2", "x1x2", "x2^2"]);
        let e = preset(q, PresetKind::Exterior { dim: 3, deg: 2 }, None).unwrap();
        assert_eq!(dims_by_weight(&e), vec![1, 3, 3, 1]);
        assert!(!e.is_commutative());
        let tp = preset(Field::prime(3).unwrap(), PresetKind::TruncPoly { order: 4 }, None).unwrap();
        assert_eq!(dims_by_weight(&tp), vec![1, 1, 1, 1]);
    }
}
