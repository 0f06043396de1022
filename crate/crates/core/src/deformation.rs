//! Formal deformations of the monoidal structure, order by order.
//!
//! A jet `(μ_0 = μ, μ_1, …, μ_n)` is valid when, for every `1 ≤ k ≤ n`,
//!
//! ```text
//! Σ_{i+j=k} μ_i(Id ⊗ μ_j) − μ_i(μ_j ⊗ Id) = 0.
//! ```
//!
//! Gauge jets `(Id, φ_1, …)` form a group under truncated convolution and act
//! on deformation jets by `φ ∘ μ = μ̃ ∘ (φ ⊗ φ)`.

use thiserror::Error;

use crate::cohomology::{CohomologyError, CohomologyReport, Complex};
use crate::linalg::{solve_linear, LinalgError, Matrix};
use crate::models::{Cochain, CochainModel, ModelError, ModelId, Placement};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error("jet does not start at the model's monoidal structure")]
    WrongBase,
    #[error("jet fails the deformation equation at order {order}")]
    JetInvalid { order: usize, defect: Cochain },
    #[error("obstruction is not a cocycle")]
    InternalCocycleFailure { defect: Cochain },
    #[error("jet has no terms")]
    EmptyJet,
    #[error("jet term {index} has degree {found}, expected {expected}")]
    TermDegree {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("jets have orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("computed gauge does not carry the first jet to the second")]
    GaugeVerificationFailed,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_terms(
    model: &CochainModel,
    terms: &[Cochain],
    degree: usize,
) -> Result<(), DeformationError> {
    if terms.is_empty() {
        return Err(DeformationError::EmptyJet);
    }
    for (index, t) in terms.iter().enumerate() {
        model.check_owned(t)?;
        if t.degree() != degree {
            return Err(DeformationError::TermDegree {
                index,
                expected: degree,
                found: t.degree(),
            });
        }
    }
    Ok(())
}

/// `(μ_0, …, μ_n)`, degree-2 terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationJet {
    model: ModelId,
    terms: Vec<Cochain>,
}

impl DeformationJet {
    /// Checks shapes and `μ_0 = μ`; the deformation equation is checked by
    /// [`check_jet`].
    pub fn new(model: &CochainModel, terms: Vec<Cochain>) -> Result<Self, DeformationError> {
        check_terms(model, &terms, 2)?;
        if terms[0] != model.mu() {
            return Err(DeformationError::WrongBase);
        }
        Ok(DeformationJet {
            model: model.id(),
            terms,
        })
    }

    /// `(μ, 0, …, 0)` of the given order.
    pub fn trivial(model: &CochainModel, order: usize) -> Self {
        let mut terms = vec![model.mu()];
        terms.extend((0..order).map(|_| model.zero(2)));
        DeformationJet {
            model: model.id(),
            terms,
        }
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &Cochain {
        &self.terms[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        DeformationJet {
            model: self.model,
            terms: self.terms[..=order.min(self.order())].to_vec(),
        }
    }

    fn owned_by(&self, model: &CochainModel) -> Result<(), DeformationError> {
        if self.model != model.id() {
            return Err(ModelError::ModelMismatch.into());
        }
        Ok(())
    }
}

/// `(φ_0 = Id, φ_1, …, φ_n)`, degree-1 terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeJet {
    model: ModelId,
    terms: Vec<Cochain>,
}

impl GaugeJet {
    pub fn new(model: &CochainModel, terms: Vec<Cochain>) -> Result<Self, DeformationError> {
        check_terms(model, &terms, 1)?;
        if terms[0] != model.identity() {
            return Err(DeformationError::WrongBase);
        }
        Ok(GaugeJet {
            model: model.id(),
            terms,
        })
    }

    /// `(Id, 0, …, 0)`.
    pub fn neutral(model: &CochainModel, order: usize) -> Self {
        let mut terms = vec![model.identity()];
        terms.extend((0..order).map(|_| model.zero(1)));
        GaugeJet {
            model: model.id(),
            terms,
        }
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &Cochain {
        &self.terms[i]
    }

    fn owned_by(&self, model: &CochainModel) -> Result<(), DeformationError> {
        if self.model != model.id() {
            return Err(ModelError::ModelMismatch.into());
        }
        Ok(())
    }
}

/// Outcome of [`check_jet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JetVerdict {
    Valid,
    Defect { order: usize, defect: Cochain },
}

impl JetVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, JetVerdict::Valid)
    }
}

/// `Σ_{i+j=k, i,j ∈ range} μ_i(Id ⊗ μ_j) − μ_i(μ_j ⊗ Id)`.
fn associator(
    model: &CochainModel,
    terms: &[Cochain],
    k: usize,
    skip_ends: bool,
) -> Result<Cochain, ModelError> {
    let mut acc = model.zero(3);
    let one = model.field().one();
    let range = if skip_ends { 1..k } else { 0..k + 1 };
    for i in range {
        let (outer, inner) = (&terms[i], &terms[k - i]);
        acc.axpy(&one, &model.substitute(outer, &[Placement::new(1, inner)])?);
        acc.axpy(
            &-one.clone(),
            &model.substitute(outer, &[Placement::new(0, inner)])?,
        );
    }
    Ok(acc)
}

/// Evaluates the deformation equation at each order and reports the first
/// failure.
pub fn check_jet(
    model: &CochainModel,
    jet: &DeformationJet,
) -> Result<JetVerdict, DeformationError> {
    jet.owned_by(model)?;
    if jet.terms[0] != model.mu() {
        return Err(DeformationError::WrongBase);
    }
    for k in 1..=jet.order() {
        let defect = associator(model, &jet.terms, k, false)?;
        if !defect.is_zero() {
            return Ok(JetVerdict::Defect { order: k, defect });
        }
    }
    Ok(JetVerdict::Valid)
}

fn require_valid(model: &CochainModel, jet: &DeformationJet) -> Result<(), DeformationError> {
    match check_jet(model, jet)? {
        JetVerdict::Valid => Ok(()),
        JetVerdict::Defect { order, defect } => Err(DeformationError::JetInvalid { order, defect }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderClasses {
    pub report: CohomologyReport,
    pub jets: Vec<DeformationJet>,
}

/// `H²` with each representative `c` packaged as the order-1 jet `(μ, c)`.
pub fn first_order_classes(complex: &Complex) -> Result<FirstOrderClasses, DeformationError> {
    let model = complex.model();
    let report = (*complex.cohomology(2)).clone();
    let jets = report
        .representatives
        .iter()
        .map(|c| {
            let jet = DeformationJet::new(model, vec![model.mu(), c.clone()])?;
            require_valid(model, &jet)?;
            Ok(jet)
        })
        .collect::<Result<_, DeformationError>>()?;
    Ok(FirstOrderClasses { report, jets })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionResult {
    pub cocycle: Cochain,
    pub is_cocycle_verified: bool,
    pub class_coordinates: Vec<Scalar>,
    pub liftable: bool,
    pub lift_term: Option<Cochain>,
}

/// The obstruction to extending a valid order-`n` jet, its class in `H³`,
/// and a next term `μ_{n+1}` with `d μ_{n+1}` equal to it when the class
/// vanishes.
pub fn obstruction(
    complex: &Complex,
    jet: &DeformationJet,
) -> Result<ObstructionResult, DeformationError> {
    let model = complex.model();
    require_valid(model, jet)?;
    let n = jet.order();
    let cocycle = associator(model, &jet.terms, n + 1, true)?;
    let class_coordinates = match complex.class_coordinates(&cocycle) {
        Ok(x) => x,
        Err(CohomologyError::NotACocycle { defect, .. }) => {
            return Err(DeformationError::InternalCocycleFailure { defect });
        }
        Err(e) => return Err(e.into()),
    };
    let lift_term = complex.is_coboundary(&cocycle)?;
    let liftable = lift_term.is_some();
    debug_assert_eq!(liftable, class_coordinates.iter().all(Scalar::is_zero));
    Ok(ObstructionResult {
        cocycle,
        is_cocycle_verified: true,
        class_coordinates,
        liftable,
        lift_term,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftOutcome {
    Lifted(DeformationJet),
    /// The jet could be extended up to `reached.order()`, where the
    /// obstruction class is nonzero.
    Blocked {
        reached: DeformationJet,
        obstruction: ObstructionResult,
    },
}

/// Extends a valid jet one order at a time up to `target`.
pub fn lift_to_order(
    complex: &Complex,
    jet: &DeformationJet,
    target: usize,
) -> Result<LiftOutcome, DeformationError> {
    let mut jet = jet.truncate(target);
    while jet.order() < target {
        let ob = obstruction(complex, &jet)?;
        match ob.lift_term.clone() {
            Some(next) => jet.terms.push(next),
            None => {
                return Ok(LiftOutcome::Blocked {
                    reached: jet,
                    obstruction: ob,
                })
            }
        }
    }
    Ok(LiftOutcome::Lifted(jet))
}

fn compose1(model: &CochainModel, f: &Cochain, g: &Cochain) -> Result<Cochain, ModelError> {
    model.substitute(f, &[Placement::new(0, g)])
}

/// `(fg)_k = Σ_{i+j=k} f_i ∘ g_j`.
pub fn gauge_compose(
    model: &CochainModel,
    f: &GaugeJet,
    g: &GaugeJet,
) -> Result<GaugeJet, DeformationError> {
    f.owned_by(model)?;
    g.owned_by(model)?;
    if f.order() != g.order() {
        return Err(DeformationError::OrderMismatch(f.order(), g.order()));
    }
    let one = model.field().one();
    let mut terms = Vec::with_capacity(f.terms.len());
    for k in 0..=f.order() {
        let mut acc = model.zero(1);
        for i in 0..=k {
            acc.axpy(&one, &compose1(model, &f.terms[i], &g.terms[k - i])?);
        }
        terms.push(acc);
    }
    Ok(GaugeJet {
        model: model.id(),
        terms,
    })
}

/// The inverse in the truncated gauge group.
pub fn gauge_inverse(model: &CochainModel, f: &GaugeJet) -> Result<GaugeJet, DeformationError> {
    f.owned_by(model)?;
    let minus_one = -model.field().one();
    let mut terms = vec![model.identity()];
    for k in 1..=f.order() {
        let mut acc = model.zero(1);
        for i in 1..=k {
            acc.axpy(&minus_one, &compose1(model, &f.terms[i], &terms[k - i])?);
        }
        terms.push(acc);
    }
    Ok(GaugeJet {
        model: model.id(),
        terms,
    })
}

/// The jet `μ̃` with `φ ∘ μ = μ̃ ∘ (φ ⊗ φ)` up to the common order.
pub fn gauge_act(
    model: &CochainModel,
    f: &GaugeJet,
    jet: &DeformationJet,
) -> Result<DeformationJet, DeformationError> {
    f.owned_by(model)?;
    jet.owned_by(model)?;
    if f.order() != jet.order() {
        return Err(DeformationError::OrderMismatch(f.order(), jet.order()));
    }
    let one = model.field().one();
    let minus_one = -one.clone();
    let phi = &f.terms;
    let mut out: Vec<Cochain> = Vec::with_capacity(jet.terms.len());
    for k in 0..=jet.order() {
        let mut acc = model.zero(2);
        for (i, p) in phi[..=k].iter().enumerate() {
            acc.axpy(&one, &compose1(model, p, &jet.terms[k - i])?);
        }
        for (i, mu) in out.iter().enumerate() {
            for j1 in 0..=k - i {
                let j2 = k - i - j1;
                let s = model.substitute(
                    mu,
                    &[Placement::new(0, &phi[j1]), Placement::new(1, &phi[j2])],
                )?;
                acc.axpy(&minus_one, &s);
            }
        }
        out.push(acc);
    }
    Ok(DeformationJet {
        model: model.id(),
        terms: out,
    })
}

/// Truncated convolution `Σ_{i+j=k} f_i ∘ g_j` of two series of 1-cochains.
fn convolve(
    model: &CochainModel,
    f: &[Cochain],
    g: &[Cochain],
) -> Result<Vec<Cochain>, ModelError> {
    let one = model.field().one();
    (0..f.len())
        .map(|k| {
            let mut acc = model.zero(1);
            for i in 0..=k {
                acc.axpy(&one, &compose1(model, &f[i], &g[k - i])?);
            }
            Ok(acc)
        })
        .collect()
}

/// `exp(X)` for a series `X` without constant term, truncated at its
/// length, or `None` when a needed factorial vanishes in the field.
fn exponential(model: &CochainModel, x: &[Cochain]) -> Result<Option<GaugeJet>, ModelError> {
    let order = x.len() - 1;
    let mut terms = GaugeJet::neutral(model, order).terms;
    let mut power = terms.clone();
    let mut factorial = model.field().one();
    for r in 1..=order {
        power = convolve(model, &power, x)?;
        factorial = &factorial * &model.field().from_i64(r as i64);
        let Some(inv) = factorial.inv() else {
            return Ok(None);
        };
        for (t, p) in terms.iter_mut().zip(&power) {
            t.axpy(&inv, p);
        }
    }
    Ok(Some(GaugeJet {
        model: model.id(),
        terms,
    }))
}

/// `ψ ∘ m − m(ψ ⊗ Id) − m(Id ⊗ ψ)`: the change of `m` under the
/// infinitesimal gauge `ψ`.
fn infinitesimal_action(
    model: &CochainModel,
    psi: &Cochain,
    m: &Cochain,
) -> Result<Cochain, ModelError> {
    let one = model.field().one();
    let mut acc = compose1(model, psi, m)?;
    acc.axpy(
        &-one.clone(),
        &model.substitute(m, &[Placement::new(0, psi)])?,
    );
    acc.axpy(&-one, &model.substitute(m, &[Placement::new(1, psi)])?);
    Ok(acc)
}

/// A gauge jet carrying `a` to `b` up to `order`, or `None` when none
/// exists.
///
/// The gauge is built order by order. Once `G` carries `a` to `b` below
/// order `k`, every other such gauge is `G ∘ exp(X)` with `X = Σ_{m<k} t^m X_m`
/// in the Lie algebra of the stabilizer of `a` modulo `t^k`, which is cut
/// out by linear equations. The change of order `k` is linear both in `X`
/// and in the new term `φ_k`, so each order is one linear system. When the
/// field has characteristic at most `order` the exponential is unavailable
/// and only `φ_k` is solved for. The returned gauge is verified by acting
/// with it.
pub fn are_equivalent(
    complex: &Complex,
    a: &DeformationJet,
    b: &DeformationJet,
    order: usize,
) -> Result<Option<GaugeJet>, DeformationError> {
    let model = complex.model();
    a.owned_by(model)?;
    b.owned_by(model)?;
    if a.order() < order || b.order() < order {
        return Err(DeformationError::OrderMismatch(
            a.order().min(b.order()),
            order,
        ));
    }
    let (a, b) = (a.truncate(order), b.truncate(order));
    require_valid(model, &a)?;
    require_valid(model, &b)?;

    let field = model.field();
    let n1 = model.cochain_dim(1);
    let n2 = model.cochain_dim(2);
    let has_exp = field.characteristic() == 0 || field.characteristic() > order as u64;
    let d1 = complex.differential_matrix(1);
    let minus_d: Vec<Vec<Scalar>> = (0..n1)
        .map(|j| d1.column(j).iter().map(|x| -x).collect())
        .collect();
    // responses[j][i]: infinitesimal action of the i-th basis 1-cochain on a_j
    let responses: Vec<Vec<Vec<Scalar>>> = (1..=order)
        .map(|j| {
            (0..n1)
                .map(|i| {
                    Ok(
                        infinitesimal_action(model, &model.basis_cochain(1, i), a.term(j))?
                            .to_vector(),
                    )
                })
                .collect::<Result<_, ModelError>>()
        })
        .collect::<Result<_, _>>()?;

    let mut gauge = GaugeJet::neutral(model, order);
    for k in 1..=order {
        let current = gauge_act(model, &gauge, &a)?;
        let target = (b.term(k) - current.term(k)).to_vector();
        let generators = if has_exp { k - 1 } else { 0 };
        // unknowns: φ_k, then X_1, …, X_{k−1}; equations: orders 1..=k
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(n1 * (generators + 1));
        for col in &minus_d {
            let mut v = vec![field.zero(); n2 * k];
            v[n2 * (k - 1)..].clone_from_slice(col);
            columns.push(v);
        }
        for m in 1..=generators {
            for i in 0..n1 {
                let mut v = vec![field.zero(); n2 * k];
                v[n2 * (m - 1)..n2 * m].clone_from_slice(&minus_d[i]);
                for l in m + 1..=k {
                    v[n2 * (l - 1)..n2 * l].clone_from_slice(&responses[l - m - 1][i]);
                }
                columns.push(v);
            }
        }
        let mut rhs = vec![field.zero(); n2 * (k - 1)];
        rhs.extend(target);
        let system = Matrix::from_columns(field, n2 * k, &columns)?;
        let x = match solve_linear(&system, &rhs) {
            Ok(x) => x,
            Err(LinalgError::Inconsistent) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        if generators > 0 {
            let mut series = vec![model.zero(1)];
            for m in 1..=order {
                let v = if m <= generators {
                    x[n1 * m..n1 * (m + 1)].to_vec()
                } else {
                    vec![field.zero(); n1]
                };
                series.push(model.cochain_from_vector(1, v)?);
            }
            if series.iter().any(|s| !s.is_zero()) {
                let e = exponential(model, &series)?.expect("characteristic checked");
                gauge = gauge_compose(model, &gauge, &e)?;
            }
        }
        gauge.terms[k].axpy(
            &field.one(),
            &model.cochain_from_vector(1, x[..n1].to_vec())?,
        );
    }
    if gauge_act(model, &gauge, &a)? != b {
        return Err(DeformationError::GaugeVerificationFailed);
    }
    Ok(Some(gauge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::differential;
    use crate::models::presets::*;
    use crate::models::{build_algebra_model, build_bialgebra_model};
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn dual() -> Complex {
        Complex::new(build_algebra_model(dual_numbers(Q)).unwrap())
    }

    #[test]
    fn trivial_jet_is_valid_and_unobstructed() {
        let c = dual();
        let m = c.model();
        let jet = DeformationJet::trivial(m, 2);
        assert!(check_jet(m, &jet).unwrap().is_valid());
        let ob = obstruction(&c, &jet).unwrap();
        assert!(ob.cocycle.is_zero() && ob.liftable);
        assert_eq!(ob.lift_term, Some(m.zero(2)));
        match lift_to_order(&c, &jet, 4).unwrap() {
            LiftOutcome::Lifted(j) => assert_eq!(j, DeformationJet::trivial(m, 4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn first_order_defect_is_minus_the_differential() {
        let c = dual();
        let m = c.model();
        let mu1 = m.basis_cochain(2, 3);
        let dmu1 = differential(m, &mu1).unwrap();
        assert!(!dmu1.is_zero());
        let jet = DeformationJet::new(m, vec![m.mu(), mu1]).unwrap();
        assert_eq!(
            check_jet(m, &jet).unwrap(),
            JetVerdict::Defect {
                order: 1,
                defect: -&dmu1
            }
        );
        assert!(matches!(
            obstruction(&c, &jet),
            Err(DeformationError::JetInvalid { order: 1, .. })
        ));
        let bad = DeformationJet::new(m, vec![m.zero(2)]);
        assert_eq!(bad.unwrap_err(), DeformationError::WrongBase);
    }

    #[test]
    fn first_order_classes_are_valid_jets() {
        let c = dual();
        let classes = first_order_classes(&c).unwrap();
        assert_eq!(classes.jets.len(), classes.report.dim_h);
        assert_eq!(classes.report.dim_h, 1);
    }

    #[test]
    fn gauge_group_basics() {
        let c = dual();
        let m = c.model();
        let phi = m.basis_cochain(1, 1);
        let psi = m.basis_cochain(1, 2);
        let f = GaugeJet::new(m, vec![m.identity(), phi.clone()]).unwrap();
        let g = GaugeJet::new(m, vec![m.identity(), psi.clone()]).unwrap();
        let fg = gauge_compose(m, &f, &g).unwrap();
        assert_eq!(fg.term(1), &(&phi + &psi));
        let n = GaugeJet::neutral(m, 1);
        assert_eq!(gauge_compose(m, &f, &n).unwrap(), f);
        assert_eq!(
            gauge_compose(m, &f, &gauge_inverse(m, &f).unwrap()).unwrap(),
            n
        );

        let acted = gauge_act(m, &f, &DeformationJet::trivial(m, 1)).unwrap();
        assert_eq!(acted.term(1), &-&differential(m, &phi).unwrap());
        assert_eq!(gauge_act(m, &n, &acted).unwrap(), acted);
    }

    #[test]
    fn equivalence_recovers_a_gauge() {
        let c = Complex::new(build_bialgebra_model(group_algebra(Q, &[2])).unwrap());
        let m = c.model();
        let f = GaugeJet::new(
            m,
            vec![
                m.identity(),
                m.basis_cochain(1, 1),
                m.basis_cochain(1, 0).scale(&Q.from_i64(3)),
            ],
        )
        .unwrap();
        let a = DeformationJet::trivial(m, 2);
        let b = gauge_act(m, &f, &a).unwrap();
        assert!(check_jet(m, &b).unwrap().is_valid());
        let g = are_equivalent(&c, &a, &b, 2).unwrap().unwrap();
        assert_eq!(gauge_act(m, &g, &a).unwrap(), b);
        assert_eq!(
            are_equivalent(&c, &a, &a, 2).unwrap(),
            Some(GaugeJet::neutral(m, 2))
        );
    }

    #[test]
    fn inequivalent_first_order_jets() {
        let c = dual();
        let m = c.model();
        let classes = first_order_classes(&c).unwrap();
        let a = DeformationJet::trivial(m, 1);
        assert_eq!(are_equivalent(&c, &a, &classes.jets[0], 1).unwrap(), None);
    }
}
