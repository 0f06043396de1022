#![allow(dead_code)]

pub mod bar;

use std::collections::BTreeMap;

use hochschild::deformation::{check_jet, gauge_act, DeformationJet, GaugeJet, JetVerdict};
use hochschild::models::presets::{dual_numbers, group_algebra, matrix_algebra, truncated_xy};
use hochschild::models::{build_algebra_model, build_bialgebra_model, CochainModel};
use hochschild::scalar::FieldSpec;

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn f5() -> FieldSpec {
    FieldSpec::prime(5).unwrap()
}

pub fn dual() -> CochainModel {
    build_algebra_model(dual_numbers(Q)).unwrap()
}

pub fn xy() -> CochainModel {
    build_algebra_model(truncated_xy(Q)).unwrap()
}

pub fn m2() -> CochainModel {
    build_algebra_model(matrix_algebra(Q, 2)).unwrap()
}

pub fn z2() -> CochainModel {
    build_bialgebra_model(group_algebra(Q, &[2])).unwrap()
}

pub fn z2xz2() -> CochainModel {
    build_bialgebra_model(group_algebra(Q, &[2, 2])).unwrap()
}

pub fn f5_z3() -> CochainModel {
    build_bialgebra_model(group_algebra(f5(), &[3])).unwrap()
}

/// The six reference models, by name.
pub fn all_models() -> Vec<(&'static str, CochainModel)> {
    vec![
        ("Q[x]/(x^2)", dual()),
        ("Q[x,y]/(x^2,y^2)", xy()),
        ("M2(Q)", m2()),
        ("Q[Z/2]", z2()),
        ("Q[Z/2xZ/2]", z2xz2()),
        ("F5[Z/3]", f5_z3()),
    ]
}

/// Dimension of the valid first-order terms minus the dimension of the
/// tangent space of the gauge orbit of the trivial deformation.
pub fn gauge_orbit_quotient_dim(m: &CochainModel) -> usize {
    let coeffs = bar::Coeffs::Rational;
    let n2 = m.cochain_dim(2);
    let defects: Vec<_> = (0..n2)
        .map(|i| {
            let jet = DeformationJet::new(m, vec![m.mu(), m.basis_cochain(2, i)]).unwrap();
            match check_jet(m, &jet).unwrap() {
                JetVerdict::Valid => m.zero(3).to_vector(),
                JetVerdict::Defect { defect, .. } => defect.to_vector(),
            }
        })
        .collect();
    let rows = defects[0].len();
    let mut transposed = vec![BTreeMap::new(); rows];
    for (j, col) in defects.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            if !x.is_zero() {
                transposed[i].insert(j, bar::to_big(x));
            }
        }
    }
    let valid_dim = n2 - bar::rank(coeffs, transposed);
    let trivial = DeformationJet::trivial(m, 1);
    let tangent = (0..m.cochain_dim(1))
        .map(|i| {
            let g = GaugeJet::new(m, vec![m.identity(), m.basis_cochain(1, i)]).unwrap();
            let moved = gauge_act(m, &g, &trivial).unwrap();
            moved
                .term(1)
                .to_vector()
                .iter()
                .enumerate()
                .map(|(i, x)| (i, bar::to_big(x)))
                .collect()
        })
        .collect();
    valid_dim - bar::rank(coeffs, tangent)
}
