//! Decide whether the spectral radius of a real matrix is a simple and
//! dominant eigenvalue, by testing an explicit conjugate of the matrix for
//! eventual positivity. Includes geometric representations of Coxeter groups
//! as a source of test matrices.

pub mod coxeter;
pub mod criterion;
pub mod io;
pub mod matrix;
pub mod spectral;
