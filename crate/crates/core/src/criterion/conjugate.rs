//! The explicit conjugate `Z = lambda v u' + (I - v u') A`.

use num_traits::Zero;

use crate::criterion::CriterionError;
use crate::matrix::{Matrix, Scalar};

/// `Z` together with the conjugating pair `Q = I + v (u' - u)`,
/// `Q^-1 = I - v (u' - u)` so that `Z = Q^-1 A Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateWitness<T> {
    pub z: Matrix<T>,
    pub q: Matrix<T>,
    pub q_inv: Matrix<T>,
    pub u_prime: Matrix<T>,
    pub lambda: T,
    pub v: Matrix<T>,
}

pub(crate) fn check_unit_product<T: Scalar>(
    what: &'static str,
    row: &Matrix<T>,
    col: &Matrix<T>,
    tol: f64,
) -> Result<(), CriterionError> {
    let p = row.dot(col)?;
    if (p.clone() - T::one()).is_zero_tol(tol) {
        Ok(())
    } else {
        Err(CriterionError::Normalization {
            what,
            value: p.to_f64(),
        })
    }
}

fn as_column<T: Scalar>(v: &Matrix<T>) -> Matrix<T> {
    if v.rows() == 1 && v.cols() > 1 {
        v.transpose()
    } else {
        v.clone()
    }
}

fn as_row<T: Scalar>(u: &Matrix<T>) -> Matrix<T> {
    if u.cols() == 1 && u.rows() > 1 {
        u.transpose()
    } else {
        u.clone()
    }
}

/// `lambda v u' + (I - v u') A`, requiring `u' v = 1`.
///
/// Only `A v = lambda v` and `u' v = 1` are needed for `Z` to share the
/// characteristic polynomial of `A` and fix `v`; no left eigenvector is used.
pub fn conjugate_matrix<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    v: &Matrix<T>,
    u_prime: &Matrix<T>,
    tol: f64,
) -> Result<Matrix<T>, CriterionError> {
    let n = a.ensure_square()?;
    let v = as_column(v);
    let u_prime = as_row(u_prime);
    check_unit_product("u' v", &u_prime, &v, tol)?;
    let vu = v.matmul(&u_prime)?;
    let proj = Matrix::<T>::identity(n).sub(&vu)?;
    Ok(vu.scale(lambda).add(&proj.matmul(a)?)?)
}

/// Builds `Z`, `Q` and `Q^-1`. Requires `u v = 1` and `u' v = 1`
/// (exactly in the exact regime, within `tol` otherwise).
pub fn build_conjugate<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    v: &Matrix<T>,
    u: &Matrix<T>,
    u_prime: &Matrix<T>,
    tol: f64,
) -> Result<ConjugateWitness<T>, CriterionError> {
    let n = a.ensure_square()?;
    let v = as_column(v);
    let u = as_row(u);
    let u_prime = as_row(u_prime);
    check_unit_product("u v", &u, &v, tol)?;
    let z = conjugate_matrix(a, lambda, &v, &u_prime, tol)?;
    let x = v.matmul(&u_prime.sub(&u)?)?;
    let identity = Matrix::<T>::identity(n);
    Ok(ConjugateWitness {
        z,
        q: identity.add(&x)?,
        q_inv: identity.sub(&x)?,
        u_prime,
        lambda: lambda.clone(),
        v,
    })
}

/// `Z^k == lambda^k v u' + (I - v u') A^k`: exact equality in the exact
/// regime, max-norm agreement within `tol` relative to the larger side otherwise.
pub fn power_identity_check<T: Scalar>(
    w: &ConjugateWitness<T>,
    a: &Matrix<T>,
    k: u32,
    tol: f64,
) -> Result<bool, CriterionError> {
    let n = a.ensure_square()?;
    let lhs = w.z.pow(k)?;
    let vu = w.v.matmul(&w.u_prime)?;
    let lambda_k = (0..k).fold(T::one(), |acc, _| acc * w.lambda.clone());
    let rhs = vu
        .scale(&lambda_k)
        .add(&Matrix::<T>::identity(n).sub(&vu)?.matmul(&a.pow(k)?)?)?;
    if T::is_exact() {
        return Ok(lhs.sub(&rhs)?.entries().iter().all(Zero::is_zero));
    }
    let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
    Ok(lhs.max_abs_diff(&rhs)? <= tol * scale)
}
