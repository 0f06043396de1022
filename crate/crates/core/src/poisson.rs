//! Symmetric models, Poisson structures and quasi-classical limits.
//!
//! Symmetries act on adjacent argument pairs through
//! [`CochainModel::sym_conjugate`]; slot `0` is the pair of the first two
//! arguments.

use thiserror::Error;

use crate::deformation::{check_jet, DeformationError, DeformationJet, JetVerdict};
use crate::models::{Cochain, CochainModel, ModelError, Placement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("model is not symmetric")]
    NotSymmetricCapable,
    #[error("a jet of order at least 2 is required, found order {0}")]
    OrderTooLow(usize),
    #[error("jet fails the deformation equation at order {order}")]
    JetInvalid { order: usize, defect: Cochain },
    #[error("cochain is not a Poisson structure")]
    NotPoisson(Box<PoissonReport>),
    #[error("expected a 2-cochain, found degree {0}")]
    NotBivector(usize),
    #[error(transparent)]
    Model(ModelError),
    #[error(transparent)]
    Deformation(#[from] DeformationError),
}

impl From<ModelError> for PoissonError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::NotSymmetricCapable => PoissonError::NotSymmetricCapable,
            e => PoissonError::Model(e),
        }
    }
}

/// Verdicts of the skew symmetry, Jacobi and derivation axioms with their
/// exact defects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonReport {
    pub skew_ok: bool,
    pub jacobi_ok: bool,
    pub derivation_ok: bool,
    pub skew_defect: Cochain,
    pub jacobi_defect: Cochain,
    pub derivation_defect: Cochain,
}

impl PoissonReport {
    pub fn all_ok(&self) -> bool {
        self.skew_ok && self.jacobi_ok && self.derivation_ok
    }
}

/// Whether `μ` commutes with the symmetry.
pub fn check_symmetric(model: &CochainModel) -> Result<bool, PoissonError> {
    let mu = model.mu();
    Ok(model.sym_conjugate(&mu, 0)? == mu)
}

fn require_symmetric(model: &CochainModel) -> Result<(), PoissonError> {
    if !check_symmetric(model)? {
        return Err(PoissonError::NotSymmetricCapable);
    }
    Ok(())
}

/// Skew symmetry `π + σπ`, Jacobi `π(Id⊗π) − π(π⊗Id) − σ π(Id⊗π) σ` and
/// derivation `π(Id⊗μ) − μ(π⊗Id) − σ μ(Id⊗π) σ` defects.
pub fn check_poisson(model: &CochainModel, pi: &Cochain) -> Result<PoissonReport, PoissonError> {
    require_symmetric(model)?;
    model.check_owned(pi)?;
    if pi.degree() != 2 {
        return Err(PoissonError::NotBivector(pi.degree()));
    }
    let mu = model.mu();
    let skew_defect = pi + &model.sym_conjugate(pi, 0)?;

    let pi_right = model.substitute(pi, &[Placement::new(1, pi)])?;
    let pi_left = model.substitute(pi, &[Placement::new(0, pi)])?;
    let jacobi_defect = &(&pi_right - &pi_left) - &model.sym_conjugate(&pi_right, 0)?;

    let pi_mu = model.substitute(pi, &[Placement::new(1, &mu)])?;
    let mu_pi_left = model.substitute(&mu, &[Placement::new(0, pi)])?;
    let mu_pi_right = model.substitute(&mu, &[Placement::new(1, pi)])?;
    let derivation_defect = &(&pi_mu - &mu_pi_left) - &model.sym_conjugate(&mu_pi_right, 0)?;

    Ok(PoissonReport {
        skew_ok: skew_defect.is_zero(),
        jacobi_ok: jacobi_defect.is_zero(),
        derivation_ok: derivation_defect.is_zero(),
        skew_defect,
        jacobi_defect,
        derivation_defect,
    })
}

/// `π = μ_1 − σ μ_1 σ` for a valid jet of order at least 2.
pub fn quasiclassical_limit(
    model: &CochainModel,
    jet: &DeformationJet,
) -> Result<Cochain, PoissonError> {
    require_symmetric(model)?;
    if jet.order() < 2 {
        return Err(PoissonError::OrderTooLow(jet.order()));
    }
    if let JetVerdict::Defect { order, defect } = check_jet(model, jet)? {
        return Err(PoissonError::JetInvalid { order, defect });
    }
    let mu1 = jet.term(1);
    Ok(mu1 - &model.sym_conjugate(mu1, 0)?)
}

/// The bracket induced on the monoid at the unit object: `π` evaluated at
/// the unit, after checking that `π` is a Poisson structure.
pub fn induced_poisson_bracket(
    model: &CochainModel,
    pi: &Cochain,
) -> Result<Cochain, PoissonError> {
    let report = check_poisson(model, pi)?;
    if !report.all_ok() {
        return Err(PoissonError::NotPoisson(Box::new(report)));
    }
    Ok(model.evaluate_at_unit(pi)?)
}
