use facthom_core::algebras::{preset, random_algebra, GradedAlgebra, PresetKind, RandomAlgebraSpec};
use facthom_core::complexes::BettiTable;
use facthom_core::koszul::{bar_coalgebra, cohochschild, koszul_dual, pkd_check, GradedCoalgebra};
use facthom_core::free_config::{free_facthom_circle, generator_space};
use facthom_core::linalg::Field;
use proptest::prelude::*;

fn up_to(t: &BettiTable, w: u32) -> BettiTable {
    t.filter(|_, x| x.is_some_and(|x| x <= w))
}

fn weighted(field: Field, dim: usize, seed: u64) -> GradedAlgebra {
    random_algebra(RandomAlgebraSpec { field, dim, weighted: true, max_degree: 1 }, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bar_coalgebra_is_stable_in_max_weight(dim in 1usize..=4, seed in any::<u64>(), w in 1u32..=3) {
        let a = weighted(Field::prime(5).unwrap(), dim, seed);
        let small = bar_coalgebra(&a, w).unwrap().betti();
        let big = bar_coalgebra(&a, w + 1).unwrap().betti();
        prop_assert_eq!(small, up_to(&big, w));
    }

    #[test]
    fn pkd_on_random_weighted_algebras(dim in 1usize..=3, seed in any::<u64>()) {
        let a = weighted(Field::Rational, dim, seed);
        let report = pkd_check(&a, 3).unwrap();
        prop_assert!(report.passed(), "{report}\n{a:?}");
    }
}

#[test]
fn pkd_on_square_zero_algebras() {
    for field in [Field::Rational, Field::prime(5).unwrap()] {
        for dim in 0..=2 {
            for deg in 0..=1 {
                let a = preset(field, PresetKind::SquareZero { dim, deg }, Some(4)).unwrap();
                let report = pkd_check(&a, 4).unwrap();
                assert!(report.passed(), "squarezero({dim},{deg}) over {field}\n{report}");
            }
        }
    }
}

#[test]
fn double_dual_of_square_zero() {
    for (dim, deg) in [(1, 0), (1, 1), (2, 0), (2, 1)] {
        let a = preset(Field::Rational, PresetKind::SquareZero { dim, deg }, Some(3)).unwrap();
        let dd = koszul_dual(&koszul_dual(&a, 3).unwrap(), 3).unwrap();
        let mut expect = BettiTable::new();
        for i in 0..a.dim() {
            expect.add(a.degree(i), a.weight(i), 1);
        }
        let mut got = BettiTable::new();
        for i in 0..dd.dim() {
            got.add(dd.degree(i), dd.weight(i), 1);
        }
        assert_eq!(got, expect, "squarezero({dim},{deg})");
    }
}

#[test]
fn trivial_coalgebra_matches_configuration_formula() {
    for field in [Field::Rational, Field::prime(5).unwrap()] {
        for dim in 1..=2 {
            for deg in 0..=2 {
                let c = GradedCoalgebra::trivial(field, &vec![(deg, 1); dim], 4).unwrap();
                let got = cohochschild(&c).unwrap().table;
                let v = generator_space(dim, deg - 1);
                let expect = free_facthom_circle(field, &v, 4).unwrap().dual();
                assert_eq!(got, expect, "dim {dim} deg {deg} over {field}");
            }
        }
    }
}
