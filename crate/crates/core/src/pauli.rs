//! Matrices of generalized Pauli operators.
//!
//! `X|k> = |k+1>`, `Z|k> = w^k |k>`, and multi-qudit labels act with qudit 0
//! as the most significant tensor factor.

use crate::dense::{roots_of_unity, CMatrix};
use crate::scalar::Real;
use crate::zd::{Prime, SymplecticVector};

/// `Z^a X^b` on a single qudit.
pub fn pauli_matrix<T: Real>(d: Prime, a: u32, b: u32) -> CMatrix<T> {
    monomial(d, &[a % d.get()], &[b % d.get()], 0)
}

/// `Z^a1 X^b1 (x) ... (x) Z^aN X^bN`, no extra phase.
pub fn pauli_string<T: Real>(label: &SymplecticVector) -> CMatrix<T> {
    monomial(label.modulus(), label.a(), label.b(), 0)
}

/// Symmetrically ordered `w^{-a.b/2} Z^a X^b`. For these, `T(v)^k = T(kv)`
/// and `T(v) T(w) = T(v + w)` whenever `v` and `w` commute.
pub fn weyl_operator<T: Real>(label: &SymplecticVector) -> CMatrix<T> {
    let d = label.modulus();
    let shift = d.neg(d.mul(d.half(), label.ab_dot()));
    monomial(d, label.a(), label.b(), shift)
}

fn monomial<T: Real>(d: Prime, a: &[u32], b: &[u32], phase: u32) -> CMatrix<T> {
    let q = d.as_usize();
    let n = a.len();
    let dim = q.pow(n as u32);
    let w = roots_of_unity::<T>(d.get());
    let mut out = CMatrix::zeros(dim, dim);
    let mut digits = vec![0u32; n];
    for col in 0..dim {
        let mut rem = col;
        for i in (0..n).rev() {
            digits[i] = (rem % q) as u32;
            rem /= q;
        }
        let mut row = 0usize;
        let mut exp = phase;
        for i in 0..n {
            let t = d.add(digits[i], b[i]);
            exp = d.add(exp, d.mul(a[i], t));
            row = row * q + t as usize;
        }
        out[(row, col)] = w[exp as usize];
    }
    out
}

/// Entry-wise complex conjugate of the Weyl operator, `T(a, b)^* = T(-a, b)`.
pub fn weyl_conjugate<T: Real>(label: &SymplecticVector) -> CMatrix<T> {
    weyl_operator::<T>(label).conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zd::symplectic_product;
    use num_complex::Complex;

    fn omega<T: Real>(d: Prime, k: u32) -> Complex<T> {
        roots_of_unity::<T>(d.get())[(k % d.get()) as usize]
    }

    fn p(d: u32) -> Prime {
        Prime::new(d).unwrap()
    }

    #[test]
    fn single_qudit_examples() {
        let d = p(3);
        let w = roots_of_unity::<f64>(3);
        assert_eq!(pauli_matrix::<f64>(d, 0, 0), CMatrix::identity(3));
        let z = pauli_matrix::<f64>(d, 1, 0);
        for k in 0..3 {
            assert!((z[(k, k)] - w[k]).norm() < 1e-15);
        }
        let x = pauli_matrix::<f64>(d, 0, 1);
        for k in 0..3 {
            assert_eq!(x[((k + 1) % 3, k)].re, 1.0);
        }
    }

    #[test]
    fn commutation_phase_matches_symplectic_product() {
        let d = p(5);
        let u = SymplecticVector::new(d, vec![1, 3], vec![2, 0]).unwrap();
        let v = SymplecticVector::new(d, vec![4, 1], vec![1, 2]).unwrap();
        let (pu, pv) = (pauli_string::<f64>(&u), pauli_string::<f64>(&v));
        let k = symplectic_product(&u, &v).unwrap();
        let lhs = &pu * &pv;
        let rhs = (&pv * &pu).scale(omega(d, k));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn weyl_powers_are_linear() {
        let d = p(5);
        let u = SymplecticVector::new(d, vec![2, 1], vec![3, 4]).unwrap();
        let t = weyl_operator::<f64>(&u);
        let mut acc = CMatrix::identity(25);
        for k in 1..5u32 {
            acc = &acc * &t;
            assert!(
                acc.max_abs_diff(&weyl_operator(&u.scale(k))) < 1e-12,
                "k={k}"
            );
        }
        assert!((&acc * &t).max_abs_diff(&CMatrix::identity(25)) < 1e-12);
    }

    #[test]
    fn conjugate_flips_z_exponent() {
        let d = p(3);
        let u = SymplecticVector::new(d, vec![1], vec![2]).unwrap();
        let flipped = SymplecticVector::new(d, vec![2], vec![2]).unwrap();
        assert!(weyl_conjugate::<f64>(&u).max_abs_diff(&weyl_operator(&flipped)) < 1e-12);
    }
}
