use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{make_algebra, GradedAlgebra, RawAlgebra, RawBasis};
use crate::error::{Error, Result};
use crate::linalg::Field;

/// Shape of a random algebra: total dimension (unit included) and whether
/// to attach a weight grading with the ideal in weights ≥ 1.
#[derive(Clone, Copy, Debug)]
pub struct RandomAlgebraSpec {
    pub field: Field,
    pub dim: usize,
    pub weighted: bool,
    /// Internal degrees are drawn from 0..=max_degree.
    pub max_degree: i64,
}

const MAX_ATTEMPTS: usize = 10_000;

/// Draws random structure constants until the table is associative and
/// unital. Deterministic in `seed`.
pub fn random_algebra(spec: RandomAlgebraSpec, seed: u64) -> Result<GradedAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let raw = draw(&spec, &mut rng);
        if let Ok(a) = make_algebra(raw) {
            return Ok(a);
        }
    }
    Err(Error::Invariant(format!(
        "no associative table found for {spec:?} after {MAX_ATTEMPTS} draws"
    )))
}

fn draw(spec: &RandomAlgebraSpec, rng: &mut ChaCha8Rng) -> RawAlgebra {
    let f = spec.field;
    let n = spec.dim.max(1);
    let mut basis = vec![RawBasis {
        label: "1".into(),
        degree: 0,
        weight: spec.weighted.then_some(0),
    }];
    for i in 1..n {
        // Half the time reuse the grading of a product of earlier elements.
        let (degree, weight) = if i >= 2 && rng.gen_bool(0.5) {
            let (a, b) = (&basis[rng.gen_range(1..i)], &basis[rng.gen_range(1..i)]);
            (a.degree + b.degree, a.weight.zip(b.weight).map(|(x, y)| x + y))
        } else {
            (rng.gen_range(0..=spec.max_degree), spec.weighted.then(|| rng.gen_range(1..=3)))
        };
        basis.push(RawBasis { label: format!("e{i}"), degree, weight });
    }
    // Sparser tables are associative far more often.
    let density = if spec.weighted { 0.7 } else { 0.35 };
    let mut products = Vec::new();
    for i in 1..n {
        for j in 1..n {
            let mut terms = Vec::new();
            for k in 0..n {
                let deg_ok = basis[k].degree == basis[i].degree + basis[j].degree;
                let w_ok = basis[k].weight.zip(basis[i].weight).zip(basis[j].weight)
                    .is_none_or(|((wk, wi), wj)| wk == wi + wj);
                if deg_ok && w_ok && rng.gen_bool(density) {
                    let c = rng.gen_range(-2..=2);
                    if c != 0 {
                        terms.push((k, f.from_i64(c)));
                    }
                }
            }
            if !terms.is_empty() {
                products.push((i, j, terms));
            }
        }
    }
    RawAlgebra {
        field: f,
        basis,
        products,
        unit: 0,
        augmentation: spec.weighted.then(Vec::new),
        commutative: false,
        max_weight: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for weighted in [true, false] {
            let spec = RandomAlgebraSpec {
                field: Field::prime(5).unwrap(),
                dim: 3,
                weighted,
                max_degree: 1,
            };
            let a = random_algebra(spec, 7).unwrap();
            let b = random_algebra(spec, 7).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.dim(), 3);
            assert_eq!(a.is_weighted(), weighted);
        }
    }
}
