//! Dense density-matrix simulation of a stabilizer reduction, for small
//! registers only. Serves as ground truth for the phase-space engines.

use thiserror::Error;

use crate::code::{CodeError, StabilizerCode};
use crate::dense::{roots_of_unity, CMatrix};
use crate::pauli::{pauli_matrix, weyl_operator};
use crate::scalar::Real;
use crate::wigner::DENSE_BUDGET;
use crate::zd::Prime;

/// Tolerance on Hermiticity and unit trace.
pub const STATE_TOL: f64 = 1e-12;

/// Eigenvalues above `-PSD_TOL` count as non-negative.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("d^N = {0} exceeds the dense budget")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("state is not Hermitian")]
    NotHermitian,
    #[error("state has trace {0}, expected 1")]
    Trace(f64),
    #[error("input has d = {input} but the code has d = {code}")]
    DimensionMismatch { input: u32, code: u32 },
    #[error("acceptance probability {0:e} is zero")]
    ZeroAcceptance(f64),
}

/// A Hermitian unit-trace matrix. `positive` is false for quasi-states.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState<T> {
    pub modulus: Prime,
    pub num_qudits: usize,
    pub matrix: CMatrix<T>,
    pub positive: bool,
}

impl<T: Real> DenseState<T> {
    pub fn new(modulus: Prime, num_qudits: usize, matrix: CMatrix<T>) -> Result<Self, OracleError> {
        let dim = modulus.as_usize().pow(num_qudits as u32);
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(OracleError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected: dim,
            });
        }
        let tol = T::from_f64_lossy(STATE_TOL);
        if !matrix.is_hermitian(tol) {
            return Err(OracleError::NotHermitian);
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(OracleError::Trace(tr.re.to_f64_lossy()));
        }
        let positive = matrix
            .hermitian_eigenvalues()
            .first()
            .is_none_or(|&e| e >= -PSD_TOL);
        Ok(DenseState {
            modulus,
            num_qudits,
            matrix,
            positive,
        })
    }

    pub fn maximally_mixed(modulus: Prime, num_qudits: usize) -> Self {
        let dim = modulus.as_usize().pow(num_qudits as u32);
        let matrix = CMatrix::identity(dim).scale_real(T::one() / T::from_usize_exact(dim));
        DenseState {
            modulus,
            num_qudits,
            matrix,
            positive: true,
        }
    }
}

fn register_dim(code: &StabilizerCode) -> Result<usize, OracleError> {
    let q = code.modulus().as_usize();
    let dim = q
        .checked_pow(code.num_qudits() as u32)
        .filter(|&x| x <= DENSE_BUDGET);
    dim.ok_or(OracleError::BudgetExceeded(
        q.saturating_pow(code.num_qudits() as u32),
    ))
}

fn matrix_power<T: Real>(m: &CMatrix<T>, k: u32) -> CMatrix<T> {
    let mut out = CMatrix::identity(m.rows());
    for _ in 0..k {
        out = &out * m;
    }
    out
}

/// `prod_i d^-1 sum_k w^{-s_i k} S_i^k`, the projector onto the codespace.
pub fn codespace_projector<T: Real>(code: &StabilizerCode) -> Result<CMatrix<T>, OracleError> {
    let dim = register_dim(code)?;
    code.validate().map_err(CodeError::from)?;
    let d = code.modulus();
    let w = roots_of_unity::<T>(d.get());
    let inv_d = T::one() / T::from_usize_exact(d.as_usize());
    let mut proj = CMatrix::identity(dim);
    for (i, stab) in code.stabilizers().enumerate() {
        let s = weyl_operator::<T>(&stab);
        let mut factor = CMatrix::zeros(dim, dim);
        let mut power = CMatrix::identity(dim);
        for k in 0..d.get() {
            let phase = w[d.neg(d.mul(code.syndrome()[i], k)) as usize];
            factor.add_scaled(&power, phase * inv_d);
            power = &power * &s;
        }
        proj = &proj * &factor;
    }
    Ok(proj)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseDistillation<T> {
    pub rho_out: DenseState<T>,
    pub acceptance_probability: T,
}

/// Projects `rho^{(x)N}` onto the codespace and reads the logical qudit off
/// by logical-Pauli tomography.
pub fn distill_dense<T: Real>(
    code: &StabilizerCode,
    rho_in: &DenseState<T>,
) -> Result<DenseDistillation<T>, OracleError> {
    let d = code.modulus();
    if rho_in.modulus != d {
        return Err(OracleError::DimensionMismatch {
            input: rho_in.modulus.get(),
            code: d.get(),
        });
    }
    if rho_in.num_qudits != 1 {
        let q = d.as_usize();
        return Err(OracleError::Shape {
            rows: rho_in.matrix.rows(),
            cols: rho_in.matrix.cols(),
            expected: q,
        });
    }
    let proj = codespace_projector::<T>(code)?;
    let pair = code.logical_operators()?;

    let mut rho_n = rho_in.matrix.clone();
    for _ in 1..code.num_qudits() {
        rho_n = rho_n.kron(&rho_in.matrix);
    }
    let projected = &(&proj * &rho_n) * &proj;
    let p = projected.trace().re;
    if p <= T::from_f64_lossy(1e-12) {
        return Err(OracleError::ZeroAcceptance(p.to_f64_lossy()));
    }

    let z_l = weyl_operator::<T>(&pair.z);
    let x_l = weyl_operator::<T>(&pair.x);
    let q = d.as_usize();
    let inv_d = T::one() / T::from_usize_exact(q);
    let mut rho_out = CMatrix::<T>::zeros(q, q);
    let mut z_pow = CMatrix::identity(proj.rows());
    for a in 0..d.get() {
        let mut logical = z_pow.clone();
        for b in 0..d.get() {
            let coeff = projected.trace_product(&logical.dagger()) / p;
            rho_out.add_scaled(&pauli_matrix(d, a, b), coeff * inv_d);
            logical = &logical * &x_l;
        }
        z_pow = &z_pow * &z_l;
    }
    let positive = rho_out
        .hermitian_eigenvalues()
        .first()
        .is_none_or(|&e| e >= -PSD_TOL);
    Ok(DenseDistillation {
        rho_out: DenseState {
            modulus: d,
            num_qudits: 1,
            matrix: rho_out,
            positive,
        },
        acceptance_probability: p,
    })
}

/// `Z_L^a X_L^b` as a dense matrix, by direct multiplication.
pub fn logical_pauli<T: Real>(
    code: &StabilizerCode,
    a: u32,
    b: u32,
) -> Result<CMatrix<T>, OracleError> {
    register_dim(code)?;
    let pair = code.logical_operators()?;
    let z = matrix_power(&weyl_operator::<T>(&pair.z), a % code.modulus().get());
    let x = matrix_power(&weyl_operator::<T>(&pair.x), b % code.modulus().get());
    Ok(&z * &x)
}

/// Rank of a projector, read off its trace.
pub fn projector_rank<T: Real>(proj: &CMatrix<T>) -> usize {
    proj.trace().re.round().to_usize().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::random_code;
    use num_complex::Complex;
    use num_traits::{One, Zero};

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn ket(i: usize, dim: usize) -> Vec<Complex<f64>> {
        (0..dim)
            .map(|k| {
                if k == i {
                    Complex::one()
                } else {
                    Complex::zero()
                }
            })
            .collect()
    }

    #[test]
    fn z_identity_projects_onto_zero() {
        let code = StabilizerCode::from_rows(p3(), &[[1, 0, 0, 0]]).unwrap();
        let proj = codespace_projector::<f64>(&code).unwrap();
        let zero = CMatrix::projector(&ket(0, 3));
        assert!(proj.max_abs_diff(&zero.kron(&CMatrix::identity(3))) < 1e-12);
        assert_eq!(projector_rank(&proj), 3);
    }

    #[test]
    fn zz_projector_support() {
        let code = StabilizerCode::from_rows(p3(), &[[1, 1, 0, 0]]).unwrap();
        let proj = codespace_projector::<f64>(&code).unwrap();
        let mut expect = CMatrix::zeros(9, 9);
        for (j, k) in [(0, 0), (1, 2), (2, 1)] {
            expect = &expect + &CMatrix::projector(&ket(3 * j + k, 9));
        }
        assert!(proj.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn projector_laws_for_random_codes() {
        for (d, n) in [(3, 2), (3, 3), (3, 5), (5, 2), (5, 3)] {
            let d = Prime::new(d).unwrap();
            for seed in 0..3 {
                let code = random_code(d, n, seed).unwrap();
                let code = code
                    .clone()
                    .with_syndrome(crate::code::random_syndrome(&code, seed + 11))
                    .unwrap();
                let proj = codespace_projector::<f64>(&code).unwrap();
                assert!((&proj * &proj).max_abs_diff(&proj) < 1e-12);
                assert!(proj.is_hermitian(1e-12));
                assert_eq!(projector_rank(&proj), d.as_usize());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let code = random_code(p3(), 6, 0).unwrap();
        assert!(matches!(
            codespace_projector::<f64>(&code),
            Err(OracleError::BudgetExceeded(729))
        ));
    }

    #[test]
    fn trivial_code_and_mixed_input() {
        let code = StabilizerCode::from_rows(p3(), &[[1, 0, 0, 0]]).unwrap();
        let mixed = DenseState::<f64>::maximally_mixed(p3(), 1);
        let out = distill_dense(&code, &mixed).unwrap();
        assert!(out.rho_out.matrix.max_abs_diff(&mixed.matrix) < 1e-12);
        assert!((out.acceptance_probability - 1.0 / 3.0).abs() < 1e-12);

        let v = [
            Complex::new(0.6, 0.0),
            Complex::new(0.0, 0.48),
            Complex::new(0.64, 0.0),
        ];
        let rho = DenseState::new(p3(), 1, CMatrix::projector(&v)).unwrap();
        let out = distill_dense(&code, &rho).unwrap();
        assert!(out.rho_out.matrix.max_abs_diff(&rho.matrix) < 1e-12);
    }

    #[test]
    fn mixed_input_stays_mixed() {
        let mixed = DenseState::<f64>::maximally_mixed(p3(), 1);
        for seed in 0..5 {
            let code = random_code(p3(), 3, seed).unwrap();
            let out = distill_dense(&code, &mixed).unwrap();
            assert!(out.rho_out.matrix.max_abs_diff(&mixed.matrix) < 1e-12);
        }
    }
}
