//! Exact Hochschild complexes of monoidal functors.
//!
//! The crate realizes the Hochschild complex of a monoidal functor on two
//! finitely presented models (an algebra acting on itself, and the fiber
//! functor of a bialgebra), together with braces, cup products, the
//! Gerstenhaber bracket, formal deformations of the monoidal structure and
//! their obstructions, and Poisson structures obtained as quasi-classical
//! limits. All arithmetic is exact, over `Q` or a prime field.

pub mod cli;
pub mod cohomology;
pub mod complex;
pub mod deformation;
pub mod io;
pub mod linalg;
pub mod models;
pub mod poisson;
pub mod sampling;
pub mod scalar;
pub mod tensor;
