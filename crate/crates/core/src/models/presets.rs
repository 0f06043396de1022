//! Small presentations used in tests, fixtures and examples.

use crate::scalar::FieldSpec;
use crate::tensor::Tensor;

use super::{AlgebraPresentation, BialgebraPresentation};

fn table(field: FieldSpec, d: usize, product: impl Fn(usize, usize) -> Option<usize>) -> Tensor {
    let mut mul = Tensor::zeros(field, &[d, d, d]);
    for i in 0..d {
        for j in 0..d {
            if let Some(k) = product(i, j) {
                mul.set(&[i, j, k], field.one());
            }
        }
    }
    mul
}

fn first_unit(field: FieldSpec, d: usize) -> Vec<crate::scalar::Scalar> {
    (0..d)
        .map(|i| if i == 0 { field.one() } else { field.zero() })
        .collect()
}

/// The ground field as a one-dimensional algebra.
pub fn ground_field(field: FieldSpec) -> AlgebraPresentation {
    AlgebraPresentation {
        field,
        basis_names: vec!["1".into()],
        mul: table(field, 1, |_, _| Some(0)),
        unit: vec![field.one()],
    }
}

/// `F[x]/(x²)` on the basis `{1, x}`.
pub fn dual_numbers(field: FieldSpec) -> AlgebraPresentation {
    AlgebraPresentation {
        field,
        basis_names: vec!["1".into(), "x".into()],
        mul: table(field, 2, |i, j| (i + j < 2).then_some(i + j)),
        unit: first_unit(field, 2),
    }
}

/// `F[x,y]/(x², y²)` on the basis `{1, x, y, xy}`.
pub fn truncated_xy(field: FieldSpec) -> AlgebraPresentation {
    // basis index = bit mask of (x, y)
    AlgebraPresentation {
        field,
        basis_names: vec!["1".into(), "x".into(), "y".into(), "xy".into()],
        mul: table(field, 4, |i, j| (i & j == 0).then_some(i | j)),
        unit: first_unit(field, 4),
    }
}

/// `M_n(F)` on matrix units `E_ij`, ordered row-major.
pub fn matrix_algebra(field: FieldSpec, n: usize) -> AlgebraPresentation {
    let d = n * n;
    let mul = table(field, d, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        (j == k).then_some(i * n + l)
    });
    let unit = (0..d)
        .map(|a| {
            if a / n == a % n {
                field.one()
            } else {
                field.zero()
            }
        })
        .collect();
    AlgebraPresentation {
        field,
        basis_names: (0..d)
            .map(|a| format!("E{}{}", a / n + 1, a % n + 1))
            .collect(),
        mul,
        unit,
    }
}

/// Group algebra of `Z/n_1 × … × Z/n_r` with group-like comultiplication.
/// Basis elements are ordered lexicographically by exponent vector, the
/// identity first.
pub fn group_algebra(field: FieldSpec, orders: &[usize]) -> BialgebraPresentation {
    let d: usize = orders.iter().product();
    let digits = |mut a: usize| -> Vec<usize> {
        let mut out = vec![0; orders.len()];
        for (slot, &n) in orders.iter().enumerate().rev() {
            out[slot] = a % n;
            a /= n;
        }
        out
    };
    let index = |v: &[usize]| v.iter().zip(orders).fold(0, |acc, (&x, &n)| acc * n + x);
    let mul = table(field, d, |a, b| {
        let sum: Vec<usize> = digits(a)
            .iter()
            .zip(digits(b))
            .zip(orders)
            .map(|((x, y), n)| (x + y) % n)
            .collect();
        Some(index(&sum))
    });
    let mut comul = Tensor::zeros(field, &[d, d, d]);
    for a in 0..d {
        comul.set(&[a, a, a], field.one());
    }
    let letters: Vec<String> = if orders.len() == 1 {
        vec!["g".into()]
    } else {
        (0..orders.len())
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    };
    let name = |a: usize| -> String {
        let parts: Vec<String> = digits(a)
            .iter()
            .zip(&letters)
            .filter(|(&x, _)| x > 0)
            .map(|(&x, l)| {
                if x == 1 {
                    l.clone()
                } else {
                    format!("{l}^{x}")
                }
            })
            .collect();
        if parts.is_empty() {
            "e".into()
        } else {
            parts.concat()
        }
    };
    BialgebraPresentation {
        algebra: AlgebraPresentation {
            field,
            basis_names: (0..d).map(name).collect(),
            mul,
            unit: first_unit(field, d),
        },
        comul,
        counit: vec![field.one(); d],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        let q = FieldSpec::Rationals;
        let f5 = FieldSpec::prime(5).unwrap();
        for p in [
            ground_field(q),
            dual_numbers(q),
            truncated_xy(q),
            matrix_algebra(q, 2),
            dual_numbers(f5),
        ] {
            p.validate().unwrap();
        }
        for p in [
            group_algebra(q, &[2]),
            group_algebra(q, &[2, 2]),
            group_algebra(f5, &[3]),
        ] {
            p.validate().unwrap();
        }
    }

    #[test]
    fn group_names() {
        let p = group_algebra(FieldSpec::Rationals, &[2, 2]);
        assert_eq!(p.algebra.basis_names, ["e", "b", "a", "ab"]);
        let p = group_algebra(FieldSpec::Rationals, &[3]);
        assert_eq!(p.algebra.basis_names, ["e", "g", "g^2"]);
    }

    #[test]
    fn matrix_units_multiply() {
        let p = matrix_algebra(FieldSpec::Rationals, 2);
        // E12 · E21 = E11
        assert!(p.mul.get(&[1, 2, 0]).is_one());
        assert!(p.mul.get(&[2, 1, 3]).is_one());
        assert!(p.mul.get(&[1, 1, 0]).is_zero());
        assert!(!p.is_commutative());
    }
}
