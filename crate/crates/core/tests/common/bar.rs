//! Brute-force cohomology from structure constants, sharing no code with
//! the library: classical Hochschild cochains `Hom(A^{⊗k}, A)` for
//! algebras, cobar cochains `H^{⊗k}` for group algebras, and ranks by sparse
//! elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use hochschild::scalar::Scalar;

#[derive(Clone, Copy, Debug)]
pub enum Coeffs {
    Rational,
    Mod(i64),
}

impl Coeffs {
    fn norm(self, x: BigRational) -> BigRational {
        match self {
            Coeffs::Rational => x,
            Coeffs::Mod(p) => {
                let p = BigInt::from(p);
                let n = x.numer() * self.inv_int(x.denom(), &p);
                let r = ((n % &p) + &p) % &p;
                BigRational::from_integer(r)
            }
        }
    }

    fn inv_int(self, d: &BigInt, p: &BigInt) -> BigInt {
        d.modpow(&(p - BigInt::from(2)), p)
    }

    fn inv(self, x: &BigRational) -> BigRational {
        match self {
            Coeffs::Rational => x.recip(),
            Coeffs::Mod(p) => {
                let p = BigInt::from(p);
                BigRational::from_integer(self.inv_int(&x.to_integer(), &p))
            }
        }
    }
}

pub fn to_big(s: &Scalar) -> BigRational {
    s.to_string().parse().expect("scalars print as fractions")
}

type Sparse = BTreeMap<usize, BigRational>;

/// Rank of the span of `vectors`.
pub fn rank(coeffs: Coeffs, vectors: Vec<Sparse>) -> usize {
    let mut pivots: BTreeMap<usize, Sparse> = BTreeMap::new();
    for v in vectors {
        let mut v: Sparse = v
            .into_iter()
            .map(|(i, x)| (i, coeffs.norm(x)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        while let Some((&lead, lead_val)) = v.iter().next() {
            let Some(row) = pivots.get(&lead) else {
                let inv = coeffs.inv(lead_val);
                let row = v
                    .into_iter()
                    .map(|(i, x)| (i, coeffs.norm(x * &inv)))
                    .collect();
                pivots.insert(lead, row);
                break;
            };
            let f = lead_val.clone();
            for (i, x) in row {
                let e = v.entry(*i).or_insert_with(BigRational::zero);
                *e = coeffs.norm(&*e - &f * x);
                if e.is_zero() {
                    v.remove(i);
                }
            }
        }
    }
    pivots.len()
}

fn index_to_digits(mut n: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in (0..len).rev() {
        out[slot] = n % d;
        n /= d;
    }
    out
}

fn digits_to_index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

fn add(v: &mut Sparse, i: usize, x: BigRational) {
    let e = v.entry(i).or_insert_with(BigRational::zero);
    *e += x;
}

/// An associative algebra given by `mul[i][j][k]`, the coefficient of
/// `e_k` in `e_i e_j`.
pub struct Algebra {
    pub coeffs: Coeffs,
    pub dim: usize,
    pub mul: Vec<Vec<Vec<i64>>>,
}

impl Algebra {
    fn product(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.mul[i][j]
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| *c != 0)
    }

    /// Columns of the classical differential on `Hom(A^{⊗k}, A)`, a cochain
    /// `f` indexed by its inputs followed by its output.
    pub fn differential_columns(&self, k: usize) -> Vec<Sparse> {
        let d = self.dim;
        let sign = |e: usize| {
            if e.is_multiple_of(2) {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        };
        let mut cols = vec![Sparse::new(); d.pow(k as u32 + 1)];
        for args_idx in 0..d.pow(k as u32 + 1) {
            let args = index_to_digits(args_idx, d, k + 1);
            let out_index = |out: usize| args_idx * d + out;
            let col_of = |inputs: &[usize], out: usize| {
                let mut digits = inputs.to_vec();
                digits.push(out);
                digits_to_index(&digits, d)
            };
            for o in 0..d {
                for (c, m) in self.product(args[0], o) {
                    add(
                        &mut cols[col_of(&args[1..], o)],
                        out_index(c),
                        BigRational::from_integer(m.into()),
                    );
                }
            }
            for i in 0..k {
                for (p, m) in self.product(args[i], args[i + 1]) {
                    let mut inputs = args[..i].to_vec();
                    inputs.push(p);
                    inputs.extend_from_slice(&args[i + 2..]);
                    for o in 0..d {
                        add(
                            &mut cols[col_of(&inputs, o)],
                            out_index(o),
                            sign(i + 1) * BigRational::from_integer(m.into()),
                        );
                    }
                }
            }
            for o in 0..d {
                for (c, m) in self.product(o, args[k]) {
                    add(
                        &mut cols[col_of(&args[..k], o)],
                        out_index(c),
                        sign(k + 1) * BigRational::from_integer(m.into()),
                    );
                }
            }
        }
        cols
    }

    pub fn cohomology_dims(&self, max: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max)
            .map(|k| rank(self.coeffs, self.differential_columns(k)))
            .collect();
        (0..=max)
            .map(|k| self.dim.pow(k as u32 + 1) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
            .collect()
    }

    pub fn dual_numbers() -> Self {
        let mut mul = vec![vec![vec![0; 2]; 2]; 2];
        mul[0][0][0] = 1;
        mul[0][1][1] = 1;
        mul[1][0][1] = 1;
        Algebra {
            coeffs: Coeffs::Rational,
            dim: 2,
            mul,
        }
    }

    /// Basis `1, x, y, xy` as subsets of `{x, y}`.
    pub fn truncated_plane() -> Self {
        let mut mul = vec![vec![vec![0; 4]; 4]; 4];
        for a in 0..4usize {
            for b in 0..4usize {
                if a & b == 0 {
                    mul[a][b][a | b] = 1;
                }
            }
        }
        Algebra {
            coeffs: Coeffs::Rational,
            dim: 4,
            mul,
        }
    }

    /// Matrix units `E_{ij}`, `E_{ij} E_{kl} = δ_{jk} E_{il}`.
    pub fn matrices(n: usize) -> Self {
        let d = n * n;
        let mut mul = vec![vec![vec![0; d]; d]; d];
        for (i, j, k, l) in (0..n).flat_map(|i| {
            (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l))))
        }) {
            if j == k {
                mul[i * n + j][k * n + l][i * n + l] = 1;
            }
        }
        Algebra {
            coeffs: Coeffs::Rational,
            dim: d,
            mul,
        }
    }
}

/// A finite abelian group algebra viewed as a coalgebra, every group
/// element grouplike.
pub struct GroupCoalgebra {
    pub coeffs: Coeffs,
    pub order: usize,
}

impl GroupCoalgebra {
    /// Columns of the cobar differential
    /// `c ↦ 1⊗c + Σ (−1)^i Δ_i c + (−1)^{k+1} c⊗1` on `H^{⊗k}`, with the
    /// identity element at index 0.
    pub fn differential_columns(&self, k: usize) -> Vec<Sparse> {
        let d = self.order;
        let sign = |e: usize| {
            if e.is_multiple_of(2) {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        };
        (0..d.pow(k as u32))
            .map(|idx| {
                let g = index_to_digits(idx, d, k);
                let mut col = Sparse::new();
                let mut left = vec![0];
                left.extend_from_slice(&g);
                add(&mut col, digits_to_index(&left, d), BigRational::one());
                for i in 0..k {
                    let mut doubled = g[..=i].to_vec();
                    doubled.extend_from_slice(&g[i..]);
                    add(&mut col, digits_to_index(&doubled, d), sign(i + 1));
                }
                let mut right = g.clone();
                right.push(0);
                add(&mut col, digits_to_index(&right, d), sign(k + 1));
                col
            })
            .collect()
    }

    pub fn cohomology_dims(&self, max: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max)
            .map(|k| rank(self.coeffs, self.differential_columns(k)))
            .collect();
        (0..=max)
            .map(|k| self.order.pow(k as u32) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
            .collect()
    }
}
