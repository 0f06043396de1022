//! Finitely presented monoidal functors and their cochains.
//!
//! Two realizations are provided:
//!
//! * **Algebra model** — the functor `A ⊗ −` for a finite-dimensional algebra
//!   `A`. A k-cochain is a multilinear map `A^{⊗k} → A`, stored with `k`
//!   input axes followed by one output axis; a 0-cochain is an element of `A`.
//!   The functor complex coincides with the classical Hochschild complex.
//! * **Bialgebra model** — the fiber functor on modules over a bialgebra `H`.
//!   A k-cochain is an element of `H^{⊗k}` acting on `M_1 ⊗ … ⊗ M_k`; a
//!   0-cochain is a scalar. The monoidal structure is `μ = 1⊗1`, `η = 1`.
//!
//! Everything else in the crate is built on [`CochainModel::substitute`], the
//! composite of an outer cochain with inner cochains plugged into blocks of
//! consecutive arguments.

mod presentation;
pub mod presets;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::{apply_to_slots, permute_slots, swap_axes, SlotLinearMap, Tensor, TensorError};

pub use presentation::{AlgebraPresentation, BialgebraPresentation, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{what} has shape {found:?}, expected {expected:?}")]
    Shape {
        what: &'static str,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("field mismatch: model over {0}, entry over {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("multiplication is not associative on basis triple ({i}, {j}, {k})")]
    NotAssociative {
        i: usize,
        j: usize,
        k: usize,
        defect: Vec<Scalar>,
    },
    #[error("{side} unit law fails on basis element {index}")]
    UnitLawFailed { side: Side, index: usize },
    #[error("comultiplication is not coassociative on basis element {index}")]
    NotCoassociative { index: usize, defect: Vec<Scalar> },
    #[error("{side} counit law fails on basis element {index}")]
    CounitLawFailed { side: Side, index: usize },
    #[error("{map} is not an algebra morphism: {detail}")]
    NotBialgebraMorphism { map: &'static str, detail: String },
    #[error("cochains belong to different models")]
    ModelMismatch,
    #[error("placements overlap or are out of order")]
    OverlappingPlacements,
    #[error("placements do not fit the result degree")]
    DegreeOverflow,
    #[error("expected a cochain of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("model is not symmetric: multiplication is not commutative / comultiplication is not cocommutative")]
    NotSymmetricCapable,
    #[error("adjacent slot pair ({slot}, {}) does not exist on a {degree}-cochain", slot + 1)]
    InvalidSlot { slot: usize, degree: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Content hash of a model's presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelId(u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Algebra,
    Bialgebra,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Algebra => write!(f, "algebra"),
            ModelKind::Bialgebra => write!(f, "bialgebra"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Algebra(AlgebraPresentation),
    Bialgebra(BialgebraPresentation),
}

impl Presentation {
    pub fn algebra(&self) -> &AlgebraPresentation {
        match self {
            Presentation::Algebra(a) => a,
            Presentation::Bialgebra(b) => &b.algebra,
        }
    }
}

/// An element of the cochain space `C^k` of some model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    model: ModelId,
    degree: usize,
    payload: Tensor,
}

impl Cochain {
    pub fn model_id(&self) -> ModelId {
        self.model
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn payload(&self) -> &Tensor {
        &self.payload
    }

    pub fn field(&self) -> FieldSpec {
        self.payload.field()
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }

    /// Coordinates in the lexicographic basis of `C^k`.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.payload.data().to_vec()
    }

    pub fn scale(&self, a: &Scalar) -> Cochain {
        Cochain {
            payload: self.payload.scale(a),
            ..self.clone()
        }
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: &Scalar, other: &Cochain) {
        self.assert_compatible(other);
        self.payload.axpy(a, &other.payload);
    }

    fn assert_compatible(&self, other: &Cochain) {
        assert!(
            self.model == other.model && self.degree == other.degree,
            "cochain arithmetic across models or degrees"
        );
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.axpy(&self.field().one(), rhs);
        out
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.axpy(&-self.field().one(), rhs);
        out
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        self.scale(&-self.field().one())
    }
}

/// An inner cochain inserted at argument position `position` of the result.
#[derive(Debug, Clone, Copy)]
pub struct Placement<'a> {
    pub position: usize,
    pub inner: &'a Cochain,
}

impl<'a> Placement<'a> {
    pub fn new(position: usize, inner: &'a Cochain) -> Self {
        Placement { position, inner }
    }
}

/// A validated presentation exposing the cochain spaces of the monoidal
/// functor it realizes. Immutable after construction.
#[derive(Debug, Clone)]
pub struct CochainModel {
    id: ModelId,
    fingerprint: String,
    presentation: Presentation,
    symmetric: bool,
}

impl PartialEq for CochainModel {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}

impl Eq for CochainModel {}

/// Validates the algebra axioms and builds the model of `A ⊗ −`.
pub fn build_algebra_model(p: AlgebraPresentation) -> Result<CochainModel, ModelError> {
    p.validate()?;
    let symmetric = p.is_commutative();
    Ok(CochainModel::assemble(Presentation::Algebra(p), symmetric))
}

/// Validates the bialgebra axioms and builds the fiber-functor model.
pub fn build_bialgebra_model(p: BialgebraPresentation) -> Result<CochainModel, ModelError> {
    p.validate()?;
    let symmetric = p.is_cocommutative();
    Ok(CochainModel::assemble(
        Presentation::Bialgebra(p),
        symmetric,
    ))
}

impl CochainModel {
    fn assemble(presentation: Presentation, symmetric: bool) -> Self {
        let fingerprint = fingerprint(&presentation);
        let id = ModelId(u64::from_str_radix(&fingerprint[..16], 16).expect("hex digest"));
        CochainModel {
            id,
            fingerprint,
            presentation,
            symmetric,
        }
    }

    pub fn id(&self) -> ModelId {
        self.id
    }

    /// Hex SHA-256 of the canonical presentation.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn kind(&self) -> ModelKind {
        match self.presentation {
            Presentation::Algebra(_) => ModelKind::Algebra,
            Presentation::Bialgebra(_) => ModelKind::Bialgebra,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.presentation.algebra().field
    }

    pub fn dim(&self) -> usize {
        self.presentation.algebra().dim()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.presentation.algebra().basis_names
    }

    /// Commutative algebra, or cocommutative bialgebra.
    pub fn is_symmetric_capable(&self) -> bool {
        self.symmetric
    }

    pub fn cochain_shape(&self, degree: usize) -> Vec<usize> {
        let d = self.dim();
        match self.kind() {
            ModelKind::Algebra => vec![d; degree + 1],
            ModelKind::Bialgebra => vec![d; degree],
        }
    }

    pub fn cochain_dim(&self, degree: usize) -> usize {
        self.cochain_shape(degree).iter().product()
    }

    pub fn zero(&self, degree: usize) -> Cochain {
        Cochain {
            model: self.id,
            degree,
            payload: Tensor::zeros(self.field(), &self.cochain_shape(degree)),
        }
    }

    /// The `index`-th lexicographic basis cochain of `C^degree`.
    pub fn basis_cochain(&self, degree: usize, index: usize) -> Cochain {
        let mut data = vec![self.field().zero(); self.cochain_dim(degree)];
        data[index] = self.field().one();
        self.cochain_from_vector(degree, data)
            .expect("basis vector has the right length")
    }

    pub fn cochain(&self, degree: usize, payload: Tensor) -> Result<Cochain, ModelError> {
        let shape = self.cochain_shape(degree);
        if payload.shape() != shape.as_slice() {
            return Err(ModelError::Shape {
                what: "cochain payload",
                expected: shape,
                found: payload.shape().to_vec(),
            });
        }
        if payload.field() != self.field() {
            return Err(ModelError::FieldMismatch(self.field(), payload.field()));
        }
        Ok(Cochain {
            model: self.id,
            degree,
            payload,
        })
    }

    pub fn cochain_from_vector(
        &self,
        degree: usize,
        data: Vec<Scalar>,
    ) -> Result<Cochain, ModelError> {
        let payload = Tensor::from_vec(self.field(), &self.cochain_shape(degree), data)?;
        self.cochain(degree, payload)
    }

    pub fn check_owned(&self, c: &Cochain) -> Result<(), ModelError> {
        if c.model != self.id {
            return Err(ModelError::ModelMismatch);
        }
        Ok(())
    }

    pub fn check_degree(&self, c: &Cochain, degree: usize) -> Result<(), ModelError> {
        self.check_owned(c)?;
        if c.degree != degree {
            return Err(ModelError::DegreeMismatch {
                expected: degree,
                found: c.degree,
            });
        }
        Ok(())
    }

    /// The monoidal product `μ`, a 2-cochain.
    pub fn mu(&self) -> Cochain {
        let payload = match &self.presentation {
            Presentation::Algebra(a) => a.mul.clone(),
            Presentation::Bialgebra(b) => {
                let u = b.algebra.unit_tensor();
                crate::tensor::tensor_concat(&u, &u).expect("same field")
            }
        };
        self.cochain(2, payload).expect("structure shape")
    }

    /// The unit `η`, a 0-cochain.
    pub fn eta(&self) -> Cochain {
        let payload = match &self.presentation {
            Presentation::Algebra(a) => a.unit_tensor(),
            Presentation::Bialgebra(_) => Tensor::scalar(self.field().one()),
        };
        self.cochain(0, payload).expect("structure shape")
    }

    /// The identity natural transformation, a 1-cochain.
    pub fn identity(&self) -> Cochain {
        let payload = match &self.presentation {
            Presentation::Algebra(_) => SlotLinearMap::identity(self.field(), self.dim(), 1)
                .coefficients()
                .clone(),
            Presentation::Bialgebra(b) => b.algebra.unit_tensor(),
        };
        self.cochain(1, payload).expect("structure shape")
    }

    /// Raw composite of `outer` with each inner cochain fed the block of
    /// consecutive result arguments starting at its `position`. Inners are
    /// applied first; each fused block enters a single slot of `outer`.
    ///
    /// Placements must be listed left to right without overlap:
    /// `position_p + degree_p ≤ position_{p+1}`, and the last block must end
    /// within the result degree `i + Σ(j_p − 1)`.
    pub fn substitute(
        &self,
        outer: &Cochain,
        placements: &[Placement<'_>],
    ) -> Result<Cochain, ModelError> {
        self.check_owned(outer)?;
        for p in placements {
            self.check_owned(p.inner)?;
        }
        let total: isize = outer.degree as isize
            + placements
                .iter()
                .map(|p| p.inner.degree as isize - 1)
                .sum::<isize>();
        if total < 0 {
            return Err(ModelError::DegreeOverflow);
        }
        let result_degree = total as usize;
        let mut next_free = 0;
        let mut outer_slots = Vec::with_capacity(placements.len());
        let mut consumed = 0;
        for (idx, p) in placements.iter().enumerate() {
            if p.position < next_free {
                return Err(ModelError::OverlappingPlacements);
            }
            next_free = p.position + p.inner.degree;
            outer_slots.push(p.position - consumed + idx);
            consumed += p.inner.degree;
        }
        if next_free > result_degree {
            return Err(ModelError::DegreeOverflow);
        }

        let payload = match &self.presentation {
            Presentation::Algebra(_) => {
                let mut t = outer.payload.clone();
                for (p, &slot) in placements.iter().zip(&outer_slots).rev() {
                    t = apply_to_slots(&t, slot, &self.precompose_map(p.inner))?;
                }
                t
            }
            Presentation::Bialgebra(b) => {
                let mut t = outer.payload.clone();
                for (p, &slot) in placements.iter().zip(&outer_slots).rev() {
                    match p.inner.degree {
                        0 => t = apply_to_slots(&t, slot, &b.counit_map())?,
                        1 => {}
                        j => t = apply_to_slots(&t, slot, &self.iterated_coproduct(j))?,
                    }
                }
                for p in placements {
                    if p.inner.degree == 0 {
                        t = t.scale(&p.inner.payload.data()[0]);
                    } else {
                        t = apply_to_slots(
                            &t,
                            p.position,
                            &self.right_multiplication(&p.inner.payload),
                        )?;
                    }
                }
                t
            }
        };
        self.cochain(result_degree, payload)
    }

    /// Precomposition with an algebra-model cochain, as a map from one slot
    /// to `degree` slots acting on coefficient tensors.
    fn precompose_map(&self, inner: &Cochain) -> SlotLinearMap {
        let j = inner.degree;
        let mut perm = vec![j];
        perm.extend(0..j);
        let coefficients = permute_slots(&inner.payload, &perm).expect("valid permutation");
        SlotLinearMap::new(1, j, self.dim(), coefficients).expect("cochain shape")
    }

    /// `Δ^{(n-1)}: H → H^{⊗n}` for `n ≥ 2`.
    fn iterated_coproduct(&self, n: usize) -> SlotLinearMap {
        let Presentation::Bialgebra(b) = &self.presentation else {
            unreachable!("coproduct on an algebra model")
        };
        let delta = b.comul_map();
        let mut acc = delta.clone();
        for _ in 2..n {
            acc = acc.then(&delta, 0).expect("coproduct shapes");
        }
        acc
    }

    /// `x ↦ x · y` on `H^{⊗j}` for `y ∈ H^{⊗j}`.
    fn right_multiplication(&self, y: &Tensor) -> SlotLinearMap {
        let d = self.dim();
        let j = y.rank();
        let alg = self.presentation.algebra();
        // b ↦ Σ mul[a][b][c] (a, c): right multiplication by e_b as a 1→2 map
        let mut right = Tensor::zeros(self.field(), &[d, d, d]);
        for a in 0..d {
            for bb in 0..d {
                for c in 0..d {
                    right.set(&[bb, a, c], alg.mul.get(&[a, bb, c]).clone());
                }
            }
        }
        let right = SlotLinearMap::new(1, 2, d, right).expect("shape");
        let mut t = y.clone();
        for s in 0..j {
            t = apply_to_slots(&t, 2 * s, &right).expect("shape");
        }
        let perm: Vec<usize> = (0..j)
            .map(|q| 2 * q)
            .chain((0..j).map(|q| 2 * q + 1))
            .collect();
        let coefficients = permute_slots(&t, &perm).expect("valid permutation");
        SlotLinearMap::new(j, j, d, coefficients).expect("shape")
    }

    /// Conjugation by the symmetries on the adjacent input pair
    /// `(slot, slot + 1)` (0-based). On the algebra model this swaps two
    /// arguments; on the bialgebra model it swaps two tensor factors.
    pub fn sym_conjugate(&self, c: &Cochain, slot: usize) -> Result<Cochain, ModelError> {
        self.check_owned(c)?;
        if !self.symmetric {
            return Err(ModelError::NotSymmetricCapable);
        }
        if slot + 1 >= c.degree {
            return Err(ModelError::InvalidSlot {
                slot,
                degree: c.degree,
            });
        }
        let payload = swap_axes(&c.payload, slot, slot + 1)?;
        self.cochain(c.degree, payload)
    }

    /// The model of the monoid obtained by evaluating the functor at the
    /// monoidal unit: `A` itself for the algebra model, the ground field for
    /// the bialgebra model.
    pub fn unit_monoid(&self) -> CochainModel {
        match &self.presentation {
            Presentation::Algebra(_) => self.clone(),
            Presentation::Bialgebra(_) => build_algebra_model(presets::ground_field(self.field()))
                .expect("ground field is a valid algebra"),
        }
    }

    /// Evaluation of a natural transformation at the monoidal unit, landing
    /// in the classical Hochschild complex of [`Self::unit_monoid`].
    pub fn evaluate_at_unit(&self, c: &Cochain) -> Result<Cochain, ModelError> {
        self.check_owned(c)?;
        match &self.presentation {
            Presentation::Algebra(_) => Ok(c.clone()),
            Presentation::Bialgebra(b) => {
                let eps = b.counit_map();
                let mut t = c.payload.clone();
                while t.rank() > 0 {
                    t = apply_to_slots(&t, 0, &eps)?;
                }
                let target = self.unit_monoid();
                let payload =
                    Tensor::from_vec(self.field(), &vec![1; c.degree + 1], t.into_data())?;
                target.cochain(c.degree, payload)
            }
        }
    }
}

fn fingerprint(p: &Presentation) -> String {
    let mut h = Sha256::new();
    let mut feed = |s: &str| {
        h.update((s.len() as u64).to_le_bytes());
        h.update(s.as_bytes());
    };
    let alg = p.algebra();
    feed(match p {
        Presentation::Algebra(_) => "algebra",
        Presentation::Bialgebra(_) => "bialgebra",
    });
    feed(&alg.field.to_string());
    for name in &alg.basis_names {
        feed(name);
    }
    for x in alg.mul.data().iter().chain(&alg.unit) {
        feed(&x.to_string());
    }
    if let Presentation::Bialgebra(b) = p {
        for x in b.comul.data().iter().chain(&b.counit) {
            feed(&x.to_string());
        }
    }
    hex::encode(h.finalize())
}
