use facthom_core::algebras::{preset, PresetKind};
use facthom_core::free_config::{
    commutative_tensoring_check, cyclic_operator, filtration_report, free_check, free_commutative_dims, generator_space,
};
use facthom_core::linalg::{ExactMatrix, Field};
use proptest::prelude::*;

#[test]
fn free_and_sym_checks() {
    for field in [Field::Rational, Field::prime(5).unwrap()] {
        for dim in 1..=2 {
            for deg in 0..=1 {
                let v = generator_space(dim, deg);
                let r = free_check(field, &v, 4, 4).unwrap();
                assert!(r.passed(), "{r}");
                let r = commutative_tensoring_check(field, &v, 3, 4).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }
}

#[test]
fn layers_on_presets() {
    for kind in [
        PresetKind::Tensor { dim: 1, deg: 0 },
        PresetKind::SquareZero { dim: 1, deg: 0 },
        PresetKind::SquareZero { dim: 2, deg: 1 },
        PresetKind::Sym { dim: 1, deg: 1 },
        PresetKind::Exterior { dim: 2, deg: 0 },
    ] {
        let a = preset(Field::Rational, kind, Some(4)).unwrap();
        let r = filtration_report(&a, 3).unwrap();
        assert!(r.passed(), "{kind}\n{r}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// t has order k on V^{⊗k}.
    #[test]
    fn cyclic_operator_has_order_k(dim in 1usize..=2, deg in -1i64..=2, k in 1usize..=4) {
        let f = Field::prime(7).unwrap();
        let v = generator_space(dim, deg);
        let t = cyclic_operator(f, &v, k);
        let mut p = ExactMatrix::identity(f, t.cols());
        for _ in 0..k {
            p = t.mul(&p).unwrap();
        }
        prop_assert_eq!(p, ExactMatrix::identity(f, t.cols()));
    }

    /// Generating-function check of the free graded-commutative count on one
    /// generator: even generators give 1 per weight, odd ones only weights 0 and 1.
    #[test]
    fn free_commutative_single_generator(deg in -2i64..=3, w in 1u32..=5) {
        let t = free_commutative_dims(&[(deg, 1)], w);
        for j in 0..=w {
            let expect = usize::from(deg % 2 == 0 || j <= 1);
            prop_assert_eq!(t.get(deg * j as i64, Some(j)), expect);
        }
        prop_assert_eq!(t.total_dim(), (0..=w).filter(|&j| deg % 2 == 0 || j <= 1).count());
    }
}
