//! Discrete Wigner functions for odd-prime qudits.
//!
//! Phase-point operators are normalized to unit trace,
//!
//! ```text
//! A(0,0) = d^-1 sum_{z,x} w^{-z x / 2} Z^z X^x,    A(u,v) = P(u,v) A(0,0) P(u,v)^dag,
//! ```
//!
//! so that `sum_p A(p) = d 1`, `Tr A(p) A(q) = d delta_pq` and, for `N`
//! qudits, `W(p) = Tr(rho A(p)) / d^N` sums to one. With this normalization the
//! witness operator of [`crate::witness`] is exactly `(d^3 1 - A(u,v)) (x) 1`.
//!
//! Phase-space points are stored flat: a single qudit point `(z, x)` has index
//! `z d + x`, and qudit 0 is the most significant digit of a multi-qudit index.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::dense::{roots_of_unity, CMatrix};
use crate::pauli::pauli_matrix;
use crate::scalar::Real;
use crate::zd::Prime;

/// Default tolerance for polytope membership.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WignerError {
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("density matrix is {rows}x{cols}, expected {expected}x{expected}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("dimension mismatch: d = {0} vs d = {1}")]
    DimensionMismatch(u32, u32),
    #[error("operation needs a single-qudit Wigner function, got N = {0}")]
    NotSingleQudit(usize),
    #[error("{0} qudits exceed the dense-matrix budget")]
    TooLarge(usize),
}

/// Largest register handled by the dense conversions (`d^N` per axis).
pub const DENSE_BUDGET: usize = 243;

/// Flat index of the multi-qudit point `(z, x)`.
pub fn point_index(d: Prime, z: &[u32], x: &[u32]) -> usize {
    let q = d.as_usize();
    z.iter().zip(x).fold(0, |acc, (&zi, &xi)| {
        acc * q * q + zi as usize * q + xi as usize
    })
}

/// Inverse of [`point_index`], returning `(z, x)`.
pub fn index_point(d: Prime, num_qudits: usize, mut index: usize) -> (Vec<u32>, Vec<u32>) {
    let q = d.as_usize();
    let mut z = vec![0; num_qudits];
    let mut x = vec![0; num_qudits];
    for i in (0..num_qudits).rev() {
        let local = index % (q * q);
        index /= q * q;
        z[i] = (local / q) as u32;
        x[i] = (local % q) as u32;
    }
    (z, x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WignerFunction<T> {
    modulus: Prime,
    num_qudits: usize,
    values: Vec<T>,
}

impl<T: Real> WignerFunction<T> {
    pub fn new(modulus: Prime, num_qudits: usize, values: Vec<T>) -> Result<Self, WignerError> {
        let expected = modulus.as_usize().pow(2 * num_qudits as u32);
        if values.len() != expected {
            return Err(WignerError::Length {
                expected,
                got: values.len(),
            });
        }
        Ok(WignerFunction {
            modulus,
            num_qudits,
            values,
        })
    }

    /// The maximally mixed state.
    pub fn uniform(modulus: Prime, num_qudits: usize) -> Self {
        let len = modulus.as_usize().pow(2 * num_qudits as u32);
        let v = T::one() / T::from_usize_exact(len);
        WignerFunction {
            modulus,
            num_qudits,
            values: vec![v; len],
        }
    }

    /// Single-qudit state with `nu` at `point` and `(1 - nu) / (d^2 - 1)`
    /// everywhere else.
    pub fn nu_family(modulus: Prime, nu: T, point: (u32, u32)) -> Self {
        NuFamilyState { modulus, nu, point }.wigner()
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn num_qudits(&self) -> usize {
        self.num_qudits
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Single-qudit value at `(z, x)`.
    pub fn at(&self, z: u32, x: u32) -> T {
        self.values[point_index(self.modulus, &[z], &[x])]
    }

    pub fn at_point(&self, z: &[u32], x: &[u32]) -> T {
        self.values[point_index(self.modulus, z, x)]
    }

    pub fn total(&self) -> T {
        self.values.iter().copied().sum()
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.total() - T::one()).abs() <= tol
    }

    pub fn min_entry(&self) -> (usize, T) {
        let mut best = (0, self.values[0]);
        for (i, &v) in self.values.iter().enumerate().skip(1) {
            if v < best.1 {
                best = (i, v);
            }
        }
        best
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }

    /// Product distribution `W1 (x) W2` over the joint register.
    pub fn tensor(&self, other: &Self) -> Result<Self, WignerError> {
        if self.modulus != other.modulus {
            return Err(WignerError::DimensionMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        let values = self
            .values
            .iter()
            .flat_map(|&a| other.values.iter().map(move |&b| a * b))
            .collect();
        Ok(WignerFunction {
            modulus: self.modulus,
            num_qudits: self.num_qudits + other.num_qudits,
            values,
        })
    }

    /// `W^{(x) n}`.
    pub fn power(&self, n: usize) -> Result<Self, WignerError> {
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.tensor(self)?;
        }
        Ok(acc)
    }

    pub fn membership(&self, tol: T) -> Result<Membership, WignerError> {
        polytope_membership(self, tol)
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> WignerFunction<U> {
        WignerFunction {
            modulus: self.modulus,
            num_qudits: self.num_qudits,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Single-qudit phase-point operator `A(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePointOperator<T> {
    pub modulus: Prime,
    pub point: (u32, u32),
    pub matrix: CMatrix<T>,
}

/// Builds `A(u, v)` from the defining sum and the translation rule.
pub fn phase_point_operator<T: Real>(d: Prime, u: u32, v: u32) -> PhasePointOperator<T> {
    let q = d.get();
    let w = roots_of_unity::<T>(q);
    let mut origin = CMatrix::zeros(q as usize, q as usize);
    for z in 0..q {
        for x in 0..q {
            let e = d.neg(d.mul(d.half(), d.mul(z, x)));
            origin.add_scaled(&pauli_matrix::<T>(d, z, x), w[e as usize]);
        }
    }
    let origin = origin.scale_real(T::one() / T::from_usize_exact(q as usize));
    let shift = pauli_matrix::<T>(d, u, v);
    let matrix = &(&shift * &origin) * &shift.dagger();
    PhasePointOperator {
        modulus: d,
        point: (u % q, v % q),
        matrix,
    }
}

type CacheKey = (TypeId, u32, u32, u32);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`phase_point_operator`]; safe to call from many threads.
pub fn cached_phase_point<T: Real>(d: Prime, u: u32, v: u32) -> Arc<PhasePointOperator<T>> {
    let key = (TypeId::of::<T>(), d.get(), u % d.get(), v % d.get());
    if let Some(hit) = cache().read().expect("cache lock").get(&key) {
        return hit.clone().downcast().expect("keyed by type");
    }
    let op: Arc<PhasePointOperator<T>> = Arc::new(phase_point_operator(d, u, v));
    let mut guard = cache().write().expect("cache lock");
    guard
        .entry(key)
        .or_insert_with(|| op.clone() as Arc<dyn Any + Send + Sync>)
        .clone()
        .downcast()
        .expect("keyed by type")
}

/// Non-negligible entries `(row, col, value)` of every single-qudit `A(p)`,
/// indexed by flat point.
fn sparse_phase_points<T: Real>(d: Prime) -> Vec<Vec<(usize, usize, Complex<T>)>> {
    let q = d.as_usize();
    let eps = T::epsilon() * T::from_usize_exact(64);
    (0..q * q)
        .map(|p| {
            let a = cached_phase_point::<T>(d, (p / q) as u32, (p % q) as u32);
            let mut entries = Vec::new();
            for i in 0..q {
                for j in 0..q {
                    if a.matrix[(i, j)].norm() > eps {
                        entries.push((i, j, a.matrix[(i, j)]));
                    }
                }
            }
            entries
        })
        .collect()
}

/// Entries of `A(p_1) (x) ... (x) A(p_N)` for the flat multi-qudit point `index`.
fn tensor_entries<T: Real>(
    singles: &[Vec<(usize, usize, Complex<T>)>],
    d: Prime,
    num_qudits: usize,
    index: usize,
) -> Vec<(usize, usize, Complex<T>)> {
    let q = d.as_usize();
    let q2 = q * q;
    let mut acc = vec![(0usize, 0usize, Complex::<T>::one())];
    for i in 0..num_qudits {
        let local = (index / q2.pow((num_qudits - 1 - i) as u32)) % q2;
        let mut next = Vec::with_capacity(acc.len() * singles[local].len());
        for &(r, c, v) in &acc {
            for &(ri, ci, vi) in &singles[local] {
                next.push((r * q + ri, c * q + ci, v * vi));
            }
        }
        acc = next;
    }
    acc
}

/// The `N`-qudit phase-point operator at `(z, x)` as a dense matrix.
pub fn multi_phase_point<T: Real>(d: Prime, z: &[u32], x: &[u32]) -> CMatrix<T> {
    z.iter()
        .zip(x)
        .fold(CMatrix::identity(1), |acc, (&zi, &xi)| {
            acc.kron(&cached_phase_point::<T>(d, zi, xi).matrix)
        })
}

/// `W(p) = Tr(rho A(p)) / d^N`.
pub fn wigner_from_density<T: Real>(
    rho: &CMatrix<T>,
    d: Prime,
    num_qudits: usize,
) -> Result<WignerFunction<T>, WignerError> {
    let dim = d.as_usize().pow(num_qudits as u32);
    if rho.rows() != dim || rho.cols() != dim {
        return Err(WignerError::Shape {
            rows: rho.rows(),
            cols: rho.cols(),
            expected: dim,
        });
    }
    if dim > DENSE_BUDGET {
        return Err(WignerError::TooLarge(num_qudits));
    }
    let singles = sparse_phase_points::<T>(d);
    let norm = T::one() / T::from_usize_exact(dim);
    let values = (0..dim * dim)
        .map(|p| {
            let tr = tensor_entries(&singles, d, num_qudits, p)
                .into_iter()
                .fold(Complex::<T>::zero(), |acc, (r, c, v)| acc + rho[(c, r)] * v);
            tr.re * norm
        })
        .collect();
    WignerFunction::new(d, num_qudits, values)
}

/// `rho = sum_p W(p) A(p)`, the inverse of [`wigner_from_density`].
pub fn density_from_wigner<T: Real>(w: &WignerFunction<T>) -> Result<CMatrix<T>, WignerError> {
    let d = w.modulus();
    let n = w.num_qudits();
    let dim = d.as_usize().pow(n as u32);
    if dim > DENSE_BUDGET {
        return Err(WignerError::TooLarge(n));
    }
    let singles = sparse_phase_points::<T>(d);
    let mut rho = CMatrix::zeros(dim, dim);
    for (p, &wp) in w.values().iter().enumerate() {
        if wp == T::zero() {
            continue;
        }
        for (r, c, v) in tensor_entries(&singles, d, n, p) {
            rho[(r, c)] = rho[(r, c)] + v * wp;
        }
    }
    Ok(rho)
}

/// Where a single-qudit Wigner function sits relative to the Wigner polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Inside,
    /// Flat indices of entries within `tol` of zero (and none below `-tol`).
    OnBoundary(Vec<usize>),
    /// Flat indices of entries below `-tol`.
    Outside(Vec<usize>),
}

pub fn polytope_membership<T: Real>(
    w: &WignerFunction<T>,
    tol: T,
) -> Result<Membership, WignerError> {
    if w.num_qudits() != 1 {
        return Err(WignerError::NotSingleQudit(w.num_qudits()));
    }
    let negative: Vec<usize> = (0..w.len()).filter(|&i| w.values[i] < -tol).collect();
    if !negative.is_empty() {
        return Ok(Membership::Outside(negative));
    }
    let boundary: Vec<usize> = (0..w.len()).filter(|&i| w.values[i] <= tol).collect();
    if boundary.is_empty() {
        Ok(Membership::Inside)
    } else {
        Ok(Membership::OnBoundary(boundary))
    }
}

/// Single-qudit state fixed by the twirl around one phase-space point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuFamilyState<T> {
    pub modulus: Prime,
    pub nu: T,
    pub point: (u32, u32),
}

impl<T: Real> NuFamilyState<T> {
    pub fn wigner(&self) -> WignerFunction<T> {
        let d = self.modulus;
        let q = d.as_usize();
        let rest = (T::one() - self.nu) / T::from_usize_exact(q * q - 1);
        let mut values = vec![rest; q * q];
        values[point_index(d, &[self.point.0], &[self.point.1])] = self.nu;
        WignerFunction {
            modulus: d,
            num_qudits: 1,
            values,
        }
    }
}

/// Keeps the smallest entry (ties to the lowest flat index) and spreads the
/// remaining weight uniformly.
pub fn to_nu_family<T: Real>(w: &WignerFunction<T>) -> Result<NuFamilyState<T>, WignerError> {
    if w.num_qudits() != 1 {
        return Err(WignerError::NotSingleQudit(w.num_qudits()));
    }
    let (idx, nu) = w.min_entry();
    let q = w.modulus().get();
    Ok(NuFamilyState {
        modulus: w.modulus(),
        nu,
        point: (idx as u32 / q, idx as u32 % q),
    })
}
