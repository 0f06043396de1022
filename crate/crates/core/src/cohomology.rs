//! Cocycles, coboundaries and cohomology of a model's cochain complex.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::complex::differential;
use crate::linalg::{
    kernel_from_echelon, quotient_representatives, row_reduce, solve_linear, span_echelon,
    LinalgError, Matrix, RowEchelon,
};
use crate::models::{Cochain, CochainModel, ModelError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("cochain of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize, defect: Cochain },
    #[error("0-cochains have no preimage under the differential")]
    NoPreviousDegree,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h: usize,
    pub representatives: Vec<Cochain>,
}

#[derive(Debug)]
struct Differential {
    matrix: Matrix,
    kernel: Vec<Vec<Scalar>>,
    image: RowEchelon,
}

/// The cochain complex of a model, with differentials and cohomology
/// computed on demand and cached per degree.
#[derive(Debug)]
pub struct Complex {
    model: CochainModel,
    differentials: Mutex<HashMap<usize, Arc<Differential>>>,
    reports: Mutex<HashMap<usize, Arc<CohomologyReport>>>,
}

impl Complex {
    pub fn new(model: CochainModel) -> Self {
        Complex {
            model,
            differentials: Mutex::new(HashMap::new()),
            reports: Mutex::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &CochainModel {
        &self.model
    }

    fn differential_data(&self, k: usize) -> Arc<Differential> {
        if let Some(d) = self.differentials.lock().expect("cache lock").get(&k) {
            return d.clone();
        }
        let m = &self.model;
        let columns: Vec<Vec<Scalar>> = (0..m.cochain_dim(k))
            .map(|i| {
                differential(m, &m.basis_cochain(k, i))
                    .expect("basis cochain belongs to the model")
                    .to_vector()
            })
            .collect();
        let matrix = Matrix::from_columns(m.field(), m.cochain_dim(k + 1), &columns)
            .expect("column lengths agree");
        let kernel = kernel_from_echelon(m.field(), &row_reduce(&matrix));
        let image = span_echelon(m.field(), m.cochain_dim(k + 1), &columns);
        let data = Arc::new(Differential {
            matrix,
            kernel,
            image,
        });
        self.differentials
            .lock()
            .expect("cache lock")
            .insert(k, data.clone());
        data
    }

    /// Matrix of `d: C^k → C^{k+1}` in the lexicographic bases.
    pub fn differential_matrix(&self, k: usize) -> Matrix {
        self.differential_data(k).matrix.clone()
    }

    /// Echelon basis of the coboundaries `B^k ⊆ C^k`.
    pub fn coboundaries(&self, k: usize) -> Vec<Vec<Scalar>> {
        if k == 0 {
            return Vec::new();
        }
        self.differential_data(k - 1).image.rows.clone()
    }

    /// Basis of the cocycles `Z^k ⊆ C^k`.
    pub fn cocycles(&self, k: usize) -> Vec<Vec<Scalar>> {
        self.differential_data(k).kernel.clone()
    }

    pub fn cohomology(&self, k: usize) -> Arc<CohomologyReport> {
        if let Some(r) = self.reports.lock().expect("cache lock").get(&k) {
            return r.clone();
        }
        let m = &self.model;
        let z = self.cocycles(k);
        let b = self.coboundaries(k);
        let reps = quotient_representatives(m.field(), m.cochain_dim(k), &b, &z)
            .expect("coboundaries are cocycles when d² = 0");
        let report = Arc::new(CohomologyReport {
            degree: k,
            dim_cocycles: z.len(),
            dim_coboundaries: b.len(),
            dim_h: z.len() - b.len(),
            representatives: reps
                .into_iter()
                .map(|v| m.cochain_from_vector(k, v).expect("length"))
                .collect(),
        });
        self.reports
            .lock()
            .expect("cache lock")
            .insert(k, report.clone());
        report
    }

    fn require_cocycle(&self, c: &Cochain) -> Result<(), CohomologyError> {
        self.model.check_owned(c)?;
        let defect = differential(&self.model, c)?;
        if !defect.is_zero() {
            return Err(CohomologyError::NotACocycle {
                degree: c.degree(),
                defect,
            });
        }
        Ok(())
    }

    /// A preimage of the cocycle `c` under `d`, or `None` when its class is
    /// nonzero.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
        self.require_cocycle(c)?;
        let k = c.degree();
        if k == 0 {
            return Err(CohomologyError::NoPreviousDegree);
        }
        let d = self.differential_data(k - 1);
        match solve_linear(&d.matrix, &c.to_vector()) {
            Ok(x) => Ok(Some(self.model.cochain_from_vector(k - 1, x)?)),
            Err(LinalgError::Inconsistent) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Coordinates of the class of the cocycle `c` in the basis given by
    /// [`Self::cohomology`]'s representatives.
    pub fn class_coordinates(&self, c: &Cochain) -> Result<Vec<Scalar>, CohomologyError> {
        self.require_cocycle(c)?;
        let k = c.degree();
        let report = self.cohomology(k);
        if report.dim_h == 0 {
            return Ok(Vec::new());
        }
        let mut columns = self.coboundaries(k);
        let nb = columns.len();
        columns.extend(report.representatives.iter().map(Cochain::to_vector));
        let matrix = Matrix::from_columns(self.model.field(), self.model.cochain_dim(k), &columns)?;
        let x = solve_linear(&matrix, &c.to_vector())?;
        Ok(x[nb..].to_vec())
    }
}

pub fn differential_matrix(model: &CochainModel, k: usize) -> Matrix {
    Complex::new(model.clone()).differential_matrix(k)
}

pub fn cohomology(model: &CochainModel, k: usize) -> CohomologyReport {
    (*Complex::new(model.clone()).cohomology(k)).clone()
}
