#![allow(dead_code)]

use std::collections::BTreeMap;

use facthom_core::complexes::{ChainComplex, GradedSpace, Piece};
use facthom_core::linalg::{canonicalize, ExactMatrix, Field, SparseVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fields() -> [Field; 2] {
    [Field::Rational, Field::prime(5).unwrap()]
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let trips: Vec<_> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter_map(|(r, c)| {
            let x: i64 = rng.gen_range(-3..=3);
            (x != 0 && rng.gen_bool(0.5)).then(|| (r, c, field.from_i64(x)))
        })
        .collect();
    ExactMatrix::from_triplets(field, rows, cols, trips).unwrap()
}

/// A random bounded complex in degrees lo..=lo+3: each differential has
/// columns drawn from the kernel of the one below.
pub fn random_complex(field: Field, seed: u64) -> ChainComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo: i64 = rng.gen_range(-1..=1);
    let dims: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=4)).collect();
    let mut diffs = BTreeMap::new();
    let mut below: Option<ExactMatrix> = None;
    for n in 1..dims.len() {
        let (rows, cols) = (dims[n - 1], dims[n]);
        let columns: Vec<SparseVec> = match &below {
            None => (0..cols)
                .map(|_| {
                    let m = random_matrix(field, rows, 1, &mut rng);
                    m.column(0).to_vec()
                })
                .collect(),
            Some(d) => {
                let ker = d.kernel_basis_sparse();
                (0..cols)
                    .map(|_| {
                        let mut terms = Vec::new();
                        for k in &ker {
                            let c = field.from_i64(rng.gen_range(-2..=2));
                            terms.extend(k.iter().map(|(i, x)| (*i, x * &c)));
                        }
                        canonicalize(terms)
                    })
                    .collect()
            }
        };
        let trips = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x.clone())));
        let d = ExactMatrix::from_triplets(field, rows, cols, trips).unwrap();
        below = Some(d.clone());
        diffs.insert(lo + n as i64, d);
    }
    let space = GradedSpace::from_pieces(
        dims.iter().enumerate().map(|(i, &d)| (lo + i as i64, Piece::anonymous(d))),
    )
    .unwrap();
    ChainComplex::new(field, space, diffs).unwrap()
}
