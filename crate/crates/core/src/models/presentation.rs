//! Structure-constant presentations of algebras and bialgebras, and the
//! axiom checks run before a model is built from them.

use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::{apply_to_slots, tensor_concat, SlotLinearMap, Tensor};

use super::ModelError;

/// Which side of a unit or counit law failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// `m(e_i, e_j) = Σ_k mul[i][j][k] e_k`, unit `Σ_i unit[i] e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub field: FieldSpec,
    pub basis_names: Vec<String>,
    pub mul: Tensor,
    pub unit: Vec<Scalar>,
}

/// An algebra together with `Δ(e_i) = Σ comul[i][j][k] e_j ⊗ e_k` and the
/// counit covector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraPresentation {
    pub algebra: AlgebraPresentation,
    pub comul: Tensor,
    pub counit: Vec<Scalar>,
}

impl AlgebraPresentation {
    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub(crate) fn check_shapes(&self) -> Result<(), ModelError> {
        let d = self.dim();
        expect_shape("mul", &self.mul, &[d, d, d])?;
        expect_len("unit", &self.unit, d)?;
        check_field(self.field, self.mul.field())?;
        for x in &self.unit {
            check_field(self.field, x.field())?;
        }
        Ok(())
    }

    pub(crate) fn mul_map(&self) -> SlotLinearMap {
        SlotLinearMap::new(2, 1, self.dim(), self.mul.clone()).expect("checked shape")
    }

    pub(crate) fn unit_tensor(&self) -> Tensor {
        Tensor::from_vec(self.field, &[self.dim()], self.unit.clone()).expect("checked shape")
    }

    /// Product of two vectors of the algebra.
    pub(crate) fn multiply(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let ab = tensor_concat(a, b).expect("same field");
        apply_to_slots(&ab, 0, &self.mul_map()).expect("checked shape")
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| self.mul.get(&[i, j, k]) == self.mul.get(&[j, i, k])))
        })
    }

    /// Associativity on every basis triple, then both unit laws.
    pub fn validate(&self) -> Result<(), ModelError> {
        self.check_shapes()?;
        let d = self.dim();
        let e = |i: usize| Tensor::basis(self.field, &[d], &[i]);
        for i in 0..d {
            for j in 0..d {
                let ij = self.multiply(&e(i), &e(j));
                for k in 0..d {
                    let left = self.multiply(&ij, &e(k));
                    let right = self.multiply(&e(i), &self.multiply(&e(j), &e(k)));
                    if left != right {
                        let defect = left
                            .data()
                            .iter()
                            .zip(right.data())
                            .map(|(a, b)| a - b)
                            .collect();
                        return Err(ModelError::NotAssociative { i, j, k, defect });
                    }
                }
            }
        }
        let u = self.unit_tensor();
        for i in 0..d {
            if self.multiply(&u, &e(i)) != e(i) {
                return Err(ModelError::UnitLawFailed {
                    side: Side::Left,
                    index: i,
                });
            }
            if self.multiply(&e(i), &u) != e(i) {
                return Err(ModelError::UnitLawFailed {
                    side: Side::Right,
                    index: i,
                });
            }
        }
        Ok(())
    }
}

impl BialgebraPresentation {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub(crate) fn comul_map(&self) -> SlotLinearMap {
        SlotLinearMap::new(1, 2, self.dim(), self.comul.clone()).expect("checked shape")
    }

    pub(crate) fn counit_map(&self) -> SlotLinearMap {
        let t = Tensor::from_vec(self.field(), &[self.dim()], self.counit.clone())
            .expect("checked shape");
        SlotLinearMap::new(1, 0, self.dim(), t).expect("checked shape")
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| self.comul.get(&[i, j, k]) == self.comul.get(&[i, k, j])))
        })
    }

    /// Algebra axioms, coassociativity, counit laws, then multiplicativity
    /// of `Δ` and `ε` (including unit preservation).
    pub fn validate(&self) -> Result<(), ModelError> {
        self.algebra.validate()?;
        let d = self.dim();
        let field = self.field();
        expect_shape("comul", &self.comul, &[d, d, d])?;
        expect_len("counit", &self.counit, d)?;
        check_field(field, self.comul.field())?;
        for x in &self.counit {
            check_field(field, x.field())?;
        }
        let delta = self.comul_map();
        let eps = self.counit_map();
        let e = |i: usize| Tensor::basis(field, &[d], &[i]);
        for i in 0..d {
            let di = apply_to_slots(&e(i), 0, &delta)?;
            let left = apply_to_slots(&di, 0, &delta)?;
            let right = apply_to_slots(&di, 1, &delta)?;
            if left != right {
                let defect = left
                    .data()
                    .iter()
                    .zip(right.data())
                    .map(|(a, b)| a - b)
                    .collect();
                return Err(ModelError::NotCoassociative { index: i, defect });
            }
            if apply_to_slots(&di, 0, &eps)? != e(i) {
                return Err(ModelError::CounitLawFailed {
                    side: Side::Left,
                    index: i,
                });
            }
            if apply_to_slots(&di, 1, &eps)? != e(i) {
                return Err(ModelError::CounitLawFailed {
                    side: Side::Right,
                    index: i,
                });
            }
        }
        let alg = &self.algebra;
        let pair_product = |x: &Tensor, y: &Tensor| -> Result<Tensor, ModelError> {
            // (a⊗b)(c⊗d) = ac ⊗ bd, computed on the interleaved outer product
            let xy = tensor_concat(x, y)?;
            let inter = crate::tensor::permute_slots(&xy, &[0, 2, 1, 3])?;
            let first = apply_to_slots(&inter, 0, &alg.mul_map())?;
            Ok(apply_to_slots(&first, 1, &alg.mul_map())?)
        };
        let unit = alg.unit_tensor();
        if apply_to_slots(&unit, 0, &delta)? != tensor_concat(&unit, &unit)? {
            return Err(ModelError::NotBialgebraMorphism {
                map: "comultiplication",
                detail: "Δ(1) ≠ 1⊗1".into(),
            });
        }
        if apply_to_slots(&unit, 0, &eps)?.data()[0] != field.one() {
            return Err(ModelError::NotBialgebraMorphism {
                map: "counit",
                detail: "ε(1) ≠ 1".into(),
            });
        }
        for i in 0..d {
            for j in 0..d {
                let prod = alg.multiply(&e(i), &e(j));
                let lhs = apply_to_slots(&prod, 0, &delta)?;
                let rhs = pair_product(
                    &apply_to_slots(&e(i), 0, &delta)?,
                    &apply_to_slots(&e(j), 0, &delta)?,
                )?;
                if lhs != rhs {
                    return Err(ModelError::NotBialgebraMorphism {
                        map: "comultiplication",
                        detail: format!("Δ(e{i} e{j}) ≠ Δ(e{i}) Δ(e{j})"),
                    });
                }
                let l = apply_to_slots(&prod, 0, &eps)?.data()[0].clone();
                let r = &self.counit[i] * &self.counit[j];
                if l != r {
                    return Err(ModelError::NotBialgebraMorphism {
                        map: "counit",
                        detail: format!("ε(e{i} e{j}) ≠ ε(e{i}) ε(e{j})"),
                    });
                }
            }
        }
        Ok(())
    }
}

fn expect_shape(what: &'static str, t: &Tensor, shape: &[usize]) -> Result<(), ModelError> {
    if t.shape() != shape {
        return Err(ModelError::Shape {
            what,
            expected: shape.to_vec(),
            found: t.shape().to_vec(),
        });
    }
    Ok(())
}

fn expect_len(what: &'static str, v: &[Scalar], d: usize) -> Result<(), ModelError> {
    if v.len() != d {
        return Err(ModelError::Shape {
            what,
            expected: vec![d],
            found: vec![v.len()],
        });
    }
    Ok(())
}

fn check_field(expected: FieldSpec, found: FieldSpec) -> Result<(), ModelError> {
    if expected != found {
        return Err(ModelError::FieldMismatch(expected, found));
    }
    Ok(())
}
