mod common;

use common::bar::{rank, to_big, Algebra, Coeffs, GroupCoalgebra};
use common::*;
use hochschild::cohomology::Complex;
use hochschild::models::CochainModel;

fn library_dims(m: &CochainModel, max: usize) -> Vec<usize> {
    let c = Complex::new(m.clone());
    (0..=max).map(|k| c.cohomology(k).dim_h).collect()
}

#[test]
fn algebra_dims_match_brute_force() {
    let cases = [
        (dual(), Algebra::dual_numbers(), vec![2, 1, 1, 1]),
        (xy(), Algebra::truncated_plane(), vec![4, 4, 5, 6]),
        (m2(), Algebra::matrices(2), vec![1, 0, 0, 0]),
    ];
    for (model, oracle, expected) in cases {
        assert_eq!(oracle.cohomology_dims(3), expected);
        assert_eq!(library_dims(&model, 3), expected);
    }
}

#[test]
fn group_algebra_dims_match_brute_force() {
    let cases = [
        (
            z2(),
            GroupCoalgebra {
                coeffs: Coeffs::Rational,
                order: 2,
            },
        ),
        (
            z2xz2(),
            GroupCoalgebra {
                coeffs: Coeffs::Rational,
                order: 4,
            },
        ),
        (
            f5_z3(),
            GroupCoalgebra {
                coeffs: Coeffs::Mod(5),
                order: 3,
            },
        ),
    ];
    for (model, oracle) in cases {
        assert_eq!(oracle.cohomology_dims(3), vec![1, 0, 0, 0]);
        assert_eq!(library_dims(&model, 3), vec![1, 0, 0, 0]);
    }
}

#[test]
fn differential_ranks_match_brute_force() {
    for (model, oracle) in [
        (dual(), Algebra::dual_numbers()),
        (xy(), Algebra::truncated_plane()),
    ] {
        let c = Complex::new(model);
        for k in 0..3 {
            let lib = c.differential_matrix(k);
            let cols = (0..lib.cols())
                .map(|j| {
                    lib.column(j)
                        .iter()
                        .enumerate()
                        .map(|(i, x)| (i, to_big(x)))
                        .collect()
                })
                .collect();
            assert_eq!(
                rank(Coeffs::Rational, cols),
                rank(Coeffs::Rational, oracle.differential_columns(k))
            );
        }
    }
}

#[test]
fn gauge_orbits_count_second_cohomology() {
    for m in [dual(), xy(), m2()] {
        assert_eq!(
            gauge_orbit_quotient_dim(&m),
            Complex::new(m.clone()).cohomology(2).dim_h
        );
    }
}
