//! Dense multi-index tensors with exact entries.
//!
//! Entries are stored in lexicographic multi-index order, leftmost index
//! slowest. This order is the serialization contract: `flatten` returns the
//! entries exactly as they are written to documents.

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("slot range {slot}..{end} exceeds the {axes} axes of the tensor")]
    ArityOverflow {
        slot: usize,
        end: usize,
        axes: usize,
    },
    #[error("axis {axis} has extent {found}, the map expects {expected}")]
    AxisMismatch {
        axis: usize,
        expected: usize,
        found: usize,
    },
    #[error("{0:?} is not a permutation of the tensor axes")]
    InvalidPermutation(Vec<usize>),
    #[error("size mismatch: expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    field: FieldSpec,
    shape: Vec<usize>,
    data: Vec<Scalar>,
}

impl Tensor {
    pub fn zeros(field: FieldSpec, shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor {
            field,
            shape: shape.to_vec(),
            data: vec![field.zero(); len],
        }
    }

    /// Rank-0 tensor holding a single value.
    pub fn scalar(value: Scalar) -> Self {
        Tensor {
            field: value.field(),
            shape: Vec::new(),
            data: vec![value],
        }
    }

    pub fn basis(field: FieldSpec, shape: &[usize], index: &[usize]) -> Self {
        let mut t = Tensor::zeros(field, shape);
        let flat = t.flat_index(index);
        t.data[flat] = field.one();
        t
    }

    pub fn from_vec(
        field: FieldSpec,
        shape: &[usize],
        data: Vec<Scalar>,
    ) -> Result<Self, TensorError> {
        unflatten(field, shape, data)
    }

    pub fn from_i64(field: FieldSpec, shape: &[usize], data: &[i64]) -> Result<Self, TensorError> {
        unflatten(
            field,
            shape,
            data.iter().map(|&x| field.from_i64(x)).collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.shape.len(), "index rank");
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "index {i} out of range {n}");
            acc * n + i
        })
    }

    pub fn get(&self, index: &[usize]) -> &Scalar {
        &self.data[self.flat_index(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Scalar) {
        let i = self.flat_index(index);
        self.data[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// `self += a * x`. Shapes must agree.
    pub fn axpy(&mut self, a: &Scalar, x: &Tensor) {
        assert_eq!(self.shape, x.shape, "axpy shape mismatch");
        if a.is_zero() {
            return;
        }
        for (s, v) in self.data.iter_mut().zip(&x.data) {
            if !v.is_zero() {
                *s += a * v;
            }
        }
    }

    pub fn scale(&self, a: &Scalar) -> Tensor {
        Tensor {
            field: self.field,
            shape: self.shape.clone(),
            data: self.data.iter().map(|x| x * a).collect(),
        }
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.shape.len()];
        for i in (0..self.shape.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.shape[i + 1];
        }
        strides
    }
}

/// The lexicographic entry vector of `t`.
pub fn flatten(t: &Tensor) -> Vec<Scalar> {
    t.data.clone()
}

pub fn unflatten(
    field: FieldSpec,
    shape: &[usize],
    data: Vec<Scalar>,
) -> Result<Tensor, TensorError> {
    let expected: usize = shape.iter().product();
    if data.len() != expected {
        return Err(TensorError::SizeMismatch {
            expected,
            found: data.len(),
        });
    }
    if let Some(bad) = data.iter().find(|x| x.field() != field) {
        return Err(TensorError::FieldMismatch(field, bad.field()));
    }
    Ok(Tensor {
        field,
        shape: shape.to_vec(),
        data,
    })
}

/// Outer product, axes of `a` first.
pub fn tensor_concat(a: &Tensor, b: &Tensor) -> Result<Tensor, TensorError> {
    if a.field != b.field {
        return Err(TensorError::FieldMismatch(a.field, b.field));
    }
    let mut shape = a.shape.clone();
    shape.extend_from_slice(&b.shape);
    let mut data = Vec::with_capacity(a.len() * b.len());
    let zero = a.field.zero();
    for x in &a.data {
        if x.is_zero() {
            data.extend(std::iter::repeat_n(zero.clone(), b.len()));
        } else {
            data.extend(b.data.iter().map(|y| x * y));
        }
    }
    Ok(Tensor {
        field: a.field,
        shape,
        data,
    })
}

/// A linear map `(F^d)^{⊗in} → (F^d)^{⊗out}`. The coefficient tensor has
/// the `in` input axes first, then the `out` output axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotLinearMap {
    in_arity: usize,
    out_arity: usize,
    dim: usize,
    coefficients: Tensor,
}

impl SlotLinearMap {
    pub fn new(
        in_arity: usize,
        out_arity: usize,
        dim: usize,
        coefficients: Tensor,
    ) -> Result<Self, TensorError> {
        let expected = vec![dim; in_arity + out_arity];
        if coefficients.shape != expected {
            return Err(TensorError::SizeMismatch {
                expected: expected.iter().product(),
                found: coefficients.len(),
            });
        }
        Ok(SlotLinearMap {
            in_arity,
            out_arity,
            dim,
            coefficients,
        })
    }

    pub fn identity(field: FieldSpec, dim: usize, arity: usize) -> Self {
        let n = dim.pow(arity as u32);
        let mut data = vec![field.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = field.one();
        }
        let coefficients = unflatten(field, &vec![dim; 2 * arity], data).expect("identity shape");
        SlotLinearMap {
            in_arity: arity,
            out_arity: arity,
            dim,
            coefficients,
        }
    }

    pub fn in_arity(&self) -> usize {
        self.in_arity
    }

    pub fn out_arity(&self) -> usize {
        self.out_arity
    }

    pub fn coefficients(&self) -> &Tensor {
        &self.coefficients
    }

    /// Composite `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &SlotLinearMap, slot: usize) -> Result<SlotLinearMap, TensorError> {
        let coefficients = apply_to_slots(&self.coefficients, self.in_arity + slot, other)?;
        SlotLinearMap::new(
            self.in_arity,
            self.out_arity + other.out_arity - other.in_arity,
            self.dim,
            coefficients,
        )
    }
}

/// Applies `map` to the `in_arity` consecutive axes of `t` starting at
/// `slot`, replacing them by `out_arity` axes.
pub fn apply_to_slots(t: &Tensor, slot: usize, map: &SlotLinearMap) -> Result<Tensor, TensorError> {
    if t.field != map.coefficients.field {
        return Err(TensorError::FieldMismatch(t.field, map.coefficients.field));
    }
    let end = slot + map.in_arity;
    if end > t.rank() {
        return Err(TensorError::ArityOverflow {
            slot,
            end,
            axes: t.rank(),
        });
    }
    for axis in slot..end {
        if t.shape[axis] != map.dim {
            return Err(TensorError::AxisMismatch {
                axis,
                expected: map.dim,
                found: t.shape[axis],
            });
        }
    }
    let pre: usize = t.shape[..slot].iter().product();
    let post: usize = t.shape[end..].iter().product();
    let blk = map.dim.pow(map.in_arity as u32);
    let out_blk = map.dim.pow(map.out_arity as u32);
    let nonzero: Vec<Vec<(usize, &Scalar)>> = (0..blk)
        .map(|a| {
            (0..out_blk)
                .filter_map(|b| {
                    let c = &map.coefficients.data[a * out_blk + b];
                    (!c.is_zero()).then_some((b, c))
                })
                .collect()
        })
        .collect();

    let mut shape = t.shape[..slot].to_vec();
    shape.extend(std::iter::repeat_n(map.dim, map.out_arity));
    shape.extend_from_slice(&t.shape[end..]);
    let mut out = Tensor::zeros(t.field, &shape);
    for o in 0..pre {
        for (a, row) in nonzero.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let src = (o * blk + a) * post;
            for r in 0..post {
                let x = &t.data[src + r];
                if x.is_zero() {
                    continue;
                }
                for &(b, c) in row {
                    out.data[(o * out_blk + b) * post + r] += x * c;
                }
            }
        }
    }
    Ok(out)
}

/// Axis `q` of the result is axis `perm[q]` of `t`. Consequently
/// `permute_slots(permute_slots(t, p), s) == permute_slots(t, p∘s)` where
/// `(p∘s)[q] = p[s[q]]`.
pub fn permute_slots(t: &Tensor, perm: &[usize]) -> Result<Tensor, TensorError> {
    let n = t.rank();
    let mut seen = vec![false; n];
    if perm.len() != n
        || perm
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(TensorError::InvalidPermutation(perm.to_vec()));
    }
    let old_strides = t.strides();
    let shape: Vec<usize> = perm.iter().map(|&p| t.shape[p]).collect();
    let strides: Vec<usize> = perm.iter().map(|&p| old_strides[p]).collect();
    let mut data = Vec::with_capacity(t.len());
    let mut idx = vec![0usize; n];
    for _ in 0..t.len() {
        let src: usize = idx.iter().zip(&strides).map(|(i, s)| i * s).sum();
        data.push(t.data[src].clone());
        for q in (0..n).rev() {
            idx[q] += 1;
            if idx[q] < shape[q] {
                break;
            }
            idx[q] = 0;
        }
    }
    Ok(Tensor {
        field: t.field,
        shape,
        data,
    })
}

/// Transposition of axes `i` and `j`.
pub fn swap_axes(t: &Tensor, i: usize, j: usize) -> Result<Tensor, TensorError> {
    let mut perm: Vec<usize> = (0..t.rank()).collect();
    if i >= perm.len() || j >= perm.len() {
        return Err(TensorError::InvalidPermutation(vec![i, j]));
    }
    perm.swap(i, j);
    permute_slots(t, &perm)
}
