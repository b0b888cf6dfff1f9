//! Stabilizer reductions acting on i.i.d. product inputs, simulated directly
//! on Wigner functions.
//!
//! A phase-space point `(z, x)` of `N` qudits is read as the label `(z | x)`.
//! It lies in the codespace of a code with rows `(a_i | b_i)` and syndrome `s`
//! when `a_i.x - b_i.z = s_i` for every `i`, and its logical coordinates are
//!
//! ```text
//! x_L = a_z.x - b_z.z,      z_L = b_x.z - a_x.x
//! ```
//!
//! for `Z_L = (a_z | b_z)` and `X_L = (a_x | b_x)`. The codespace is then
//! `c + span(rows) + z_L Z_L + x_L X_L`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::code::{CanonicalCode, CodeError, LogicalPair, StabilizerCode};
use crate::scalar::Real;
use crate::wigner::WignerFunction;
use crate::zd::{solve_linear, Prime, ZdMatrix, ZdVector};

/// Histogram sums at or below this count as no statistical weight.
pub const ZERO_ACCEPTANCE_TOL: f64 = 1e-12;

/// Entries below `-NEGATIVE_TOL` cannot be sampled.
pub const NEGATIVE_TOL: f64 = 1e-12;

/// Codespace points handled per exact-engine work unit.
pub const EXACT_BLOCK: usize = 1 << 12;

/// Samples drawn from one PRNG stream.
pub const MC_CHUNK: u64 = 1 << 16;

/// Generator used by [`distill_mc`], recorded in run metadata.
pub const PRNG_NAME: &str =
    "ChaCha8 (rand_chacha 0.9): seed_from_u64(seed), set_stream(chunk index)";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistillError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("input must be a single-qudit Wigner function, got N = {0}")]
    NotSingleQudit(usize),
    #[error("input has d = {input} but the code has d = {code}")]
    DimensionMismatch { input: u32, code: u32 },
    #[error("point has {got} qudits, expected {expected}")]
    PointLength { got: usize, expected: usize },
    #[error("the syndrome admits no codespace points")]
    EmptyCodespace,
    #[error("no statistical weight on the codespace (sum = {0:e})")]
    ZeroAcceptance(f64),
    #[error("input entry {index} is negative ({value:e}) and cannot be sampled")]
    NegativeInput { index: usize, value: f64 },
    #[error("logical pair does not commute with the code or does not pair to 1")]
    InvalidLogicals,
    #[error("codespace of {0} qudits is too large to enumerate")]
    TooLarge(usize),
}

/// `true` iff `a_i.x - b_i.z = s_i` for every stabilizer.
pub fn membership_test(code: &StabilizerCode, z: &[u32], x: &[u32]) -> Result<bool, DistillError> {
    let n = code.num_qudits();
    if z.len() != n || x.len() != n {
        return Err(DistillError::PointLength {
            got: z.len().min(x.len()),
            expected: n,
        });
    }
    let d = code.modulus();
    let gens = code.generators();
    Ok((0..code.num_stabilizers()).all(|i| {
        let row = gens.row(i);
        d.sub(d.dot(&row[..n], x), d.dot(&row[n..], z)) == code.syndrome()[i]
    }))
}

/// `(z_L, x_L)` of a phase-space point.
pub fn logical_coordinates(pair: &LogicalPair, z: &[u32], x: &[u32]) -> (u32, u32) {
    let d = pair.z.modulus();
    let x_l = d.sub(d.dot(pair.z.a(), x), d.dot(pair.z.b(), z));
    let z_l = d.sub(d.dot(pair.x.b(), z), d.dot(pair.x.a(), x));
    (z_l, x_l)
}

/// Affine parameterization of the codespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodespaceBasis {
    pub code: CanonicalCode,
    pub logicals: LogicalPair,
    /// `2N x (N+1)`: column `k < N-1` is stabilizer row `k` as a point
    /// `(z; x)`, then `Z_L` and `X_L`.
    pub generator_matrix: ZdMatrix,
    /// A point with the code's syndrome and zero logical coordinates.
    pub particular_solution: ZdVector,
    syndrome: ZdVector,
}

impl CodespaceBasis {
    /// Uses the logical pair read off the canonical form.
    pub fn new(code: &StabilizerCode) -> Result<Self, DistillError> {
        let canon = code.canonicalize()?;
        let logicals = canon.logical_operators();
        Self::assemble(code, canon, logicals)
    }

    /// Uses a caller-chosen logical pair, e.g. one carried over from a
    /// relabelled code.
    pub fn with_logicals(
        code: &StabilizerCode,
        logicals: LogicalPair,
    ) -> Result<Self, DistillError> {
        let canon = code.canonicalize()?;
        if logicals.z.num_qudits() != code.num_qudits() || !logicals.check(code) {
            return Err(DistillError::InvalidLogicals);
        }
        Self::assemble(code, canon, logicals)
    }

    fn assemble(
        code: &StabilizerCode,
        canon: CanonicalCode,
        logicals: LogicalPair,
    ) -> Result<Self, DistillError> {
        let d = code.modulus();
        let n = code.num_qudits();
        let gens = code.generators();
        let mut columns: Vec<Vec<u32>> = (0..code.num_stabilizers())
            .map(|i| gens.row(i).to_vec())
            .collect();
        columns.push(logicals.z.to_row());
        columns.push(logicals.x.to_row());
        let generator_matrix = ZdMatrix::from_fn(d, 2 * n, n + 1, |r, c| columns[c][r] as i64);

        // [-beta | alpha] (z; x) = s
        let system = ZdMatrix::from_fn(d, n - 1, 2 * n, |i, j| {
            if j < n {
                -(gens[(i, n + j)] as i64)
            } else {
                gens[(i, j - n)] as i64
            }
        });
        let sol = solve_linear(&system, code.syndrome())
            .map_err(CodeError::from)?
            .ok_or(DistillError::EmptyCodespace)?;
        let (z, x) = sol.as_slice().split_at(n);
        let (z_l, x_l) = logical_coordinates(&logicals, z, x);
        let zl_col = &columns[n - 1];
        let xl_col = &columns[n];
        let particular = (0..2 * n)
            .map(|r| d.sub(sol[r], d.add(d.mul(z_l, zl_col[r]), d.mul(x_l, xl_col[r]))) as i64)
            .collect::<Vec<_>>();

        Ok(CodespaceBasis {
            code: canon,
            logicals,
            generator_matrix,
            particular_solution: ZdVector::new(d, particular),
            syndrome: code.syndrome().clone(),
        })
    }

    pub fn modulus(&self) -> Prime {
        self.generator_matrix.modulus()
    }

    pub fn num_qudits(&self) -> usize {
        self.generator_matrix.rows() / 2
    }

    pub fn syndrome(&self) -> &ZdVector {
        &self.syndrome
    }

    fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.generator_matrix.cols())
            .map(|c| self.generator_matrix.column(c))
            .collect()
    }

    /// Number of codespace points per logical cell, `d^(N-1)`.
    pub fn points_per_cell(&self) -> Option<usize> {
        self.modulus()
            .as_usize()
            .checked_pow(self.num_qudits() as u32 - 1)
    }
}

/// The `d^(N-1)` points with logical coordinates `(z_l, x_l)`, as `(z, x)`.
pub fn enumerate_codespace(
    basis: &CodespaceBasis,
    z_l: u32,
    x_l: u32,
) -> Result<impl Iterator<Item = (Vec<u32>, Vec<u32>)> + '_, DistillError> {
    let n = basis.num_qudits();
    let count = basis.points_per_cell().ok_or(DistillError::TooLarge(n))?;
    let d = basis.modulus();
    let cols = basis.columns();
    let mut offset = basis.particular_solution.as_slice().to_vec();
    for r in 0..2 * n {
        offset[r] = d.add(
            offset[r],
            d.add(
                d.mul(z_l % d.get(), cols[n - 1][r]),
                d.mul(x_l % d.get(), cols[n][r]),
            ),
        );
    }
    let mut walker = Odometer::new(d, cols[..n - 1].to_vec(), offset, 0);
    Ok((0..count).map(move |k| {
        if k > 0 {
            walker.step();
        }
        let (z, x) = walker.point.split_at(n);
        (z.to_vec(), x.to_vec())
    }))
}

/// Walks `offset + sum_i u_i col_i` over `u` in little-endian counting order.
struct Odometer {
    d: Prime,
    cols: Vec<Vec<u32>>,
    digits: Vec<u32>,
    point: Vec<u32>,
}

impl Odometer {
    fn new(d: Prime, cols: Vec<Vec<u32>>, mut point: Vec<u32>, mut start: usize) -> Self {
        let q = d.as_usize();
        let mut digits = vec![0; cols.len()];
        for (k, col) in cols.iter().enumerate() {
            let u = (start % q) as u32;
            start /= q;
            digits[k] = u;
            for (p, &c) in point.iter_mut().zip(col) {
                *p = d.add(*p, d.mul(u, c));
            }
        }
        Odometer {
            d,
            cols,
            digits,
            point,
        }
    }

    fn step(&mut self) {
        let d = self.d;
        for (k, col) in self.cols.iter().enumerate() {
            for (p, &c) in self.point.iter_mut().zip(col) {
                *p = d.add(*p, c);
            }
            self.digits[k] += 1;
            if self.digits[k] < d.get() {
                return;
            }
            // d additions of col_k brought the point back already
            self.digits[k] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistillationResult<T> {
    pub w_out: WignerFunction<T>,
    pub acceptance_probability: T,
    /// Unnormalized weight per logical cell, flat index `z_L d + x_L`.
    pub histogram: Vec<T>,
}

impl<T: Real> DistillationResult<T> {
    fn from_histogram(d: Prime, histogram: Vec<T>, total: T) -> Result<Self, DistillError> {
        let w = histogram.iter().map(|&h| h / total).collect();
        Ok(DistillationResult {
            w_out: WignerFunction::new(d, 1, w).expect("d^2 cells"),
            acceptance_probability: total,
            histogram,
        })
    }
}

fn check_input<T: Real>(
    code: &StabilizerCode,
    w_in: &WignerFunction<T>,
) -> Result<(), DistillError> {
    if w_in.num_qudits() != 1 {
        return Err(DistillError::NotSingleQudit(w_in.num_qudits()));
    }
    if w_in.modulus() != code.modulus() {
        return Err(DistillError::DimensionMismatch {
            input: w_in.modulus().get(),
            code: code.modulus().get(),
        });
    }
    Ok(())
}

/// Sums `prod_i W(z_i, x_i)` over every codespace point into its logical cell.
pub fn distill_exact<T: Real>(
    code: &StabilizerCode,
    w_in: &WignerFunction<T>,
) -> Result<DistillationResult<T>, DistillError> {
    check_input(code, w_in)?;
    let basis = CodespaceBasis::new(code)?;
    distill_exact_with(&basis, w_in)
}

/// [`distill_exact`] with a precomputed basis.
pub fn distill_exact_with<T: Real>(
    basis: &CodespaceBasis,
    w_in: &WignerFunction<T>,
) -> Result<DistillationResult<T>, DistillError> {
    let d = basis.modulus();
    let q = d.as_usize();
    let n = basis.num_qudits();
    let per_cell = basis.points_per_cell().ok_or(DistillError::TooLarge(n))?;
    per_cell
        .checked_mul(q * q)
        .ok_or(DistillError::TooLarge(n))?;
    let cols = basis.columns();
    let (zl_col, xl_col) = (&cols[n - 1], &cols[n]);
    let w = w_in.values();
    let blocks = per_cell.div_ceil(EXACT_BLOCK);

    let partials: Vec<Vec<T>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * EXACT_BLOCK;
            let end = (start + EXACT_BLOCK).min(per_cell);
            let mut walker = Odometer::new(
                d,
                cols[..n - 1].to_vec(),
                basis.particular_solution.as_slice().to_vec(),
                start,
            );
            let mut hist = vec![T::zero(); q * q];
            let mut shifted = vec![0u32; 2 * n];
            for k in start..end {
                if k > start {
                    walker.step();
                }
                for z_l in 0..d.get() {
                    for x_l in 0..d.get() {
                        for r in 0..2 * n {
                            shifted[r] = d.add(
                                walker.point[r],
                                d.add(d.mul(z_l, zl_col[r]), d.mul(x_l, xl_col[r])),
                            );
                        }
                        let mut weight = T::one();
                        for i in 0..n {
                            weight = weight * w[shifted[i] as usize * q + shifted[n + i] as usize];
                        }
                        let cell = z_l as usize * q + x_l as usize;
                        hist[cell] = hist[cell] + weight;
                    }
                }
            }
            hist
        })
        .collect();

    let mut histogram = vec![T::zero(); q * q];
    for part in &partials {
        for (h, &p) in histogram.iter_mut().zip(part) {
            *h = *h + p;
        }
    }
    let total: T = histogram.iter().copied().sum();
    if total <= T::from_f64_lossy(ZERO_ACCEPTANCE_TOL) {
        return Err(DistillError::ZeroAcceptance(total.to_f64_lossy()));
    }
    DistillationResult::from_histogram(d, histogram, total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloResult<T> {
    pub result: DistillationResult<T>,
    pub samples: u64,
    pub accepted: u64,
    /// Accepted samples per logical cell.
    pub counts: Vec<u64>,
}

/// Samples product points from `W_in`, keeps those in the codespace and
/// histograms their logical coordinates.
pub fn distill_mc<T: Real>(
    code: &StabilizerCode,
    w_in: &WignerFunction<T>,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloResult<T>, DistillError> {
    check_input(code, w_in)?;
    for (index, &v) in w_in.values().iter().enumerate() {
        if v.to_f64_lossy() < -NEGATIVE_TOL {
            return Err(DistillError::NegativeInput {
                index,
                value: v.to_f64_lossy(),
            });
        }
    }
    let logicals = code.logical_operators()?;
    let d = code.modulus();
    let q = d.as_usize();
    let n = code.num_qudits();

    let mut cdf = Vec::with_capacity(q * q);
    let mut acc = 0.0f64;
    for &v in w_in.values() {
        acc += v.to_f64_lossy().max(0.0);
        cdf.push(acc);
    }
    if acc <= 0.0 {
        return Err(DistillError::ZeroAcceptance(0.0));
    }
    for c in &mut cdf {
        *c /= acc;
    }

    let chunks = samples.div_ceil(MC_CHUNK);
    let partials: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let todo = (samples - chunk * MC_CHUNK).min(MC_CHUNK);
            let mut counts = vec![0u64; q * q];
            let mut z = vec![0u32; n];
            let mut x = vec![0u32; n];
            for _ in 0..todo {
                for i in 0..n {
                    let r: f64 = rng.random();
                    let idx = cdf.partition_point(|&c| c <= r).min(q * q - 1);
                    z[i] = (idx / q) as u32;
                    x[i] = (idx % q) as u32;
                }
                if membership_test(code, &z, &x).expect("lengths match") {
                    let (z_l, x_l) = logical_coordinates(&logicals, &z, &x);
                    counts[z_l as usize * q + x_l as usize] += 1;
                }
            }
            counts
        })
        .collect();

    let mut counts = vec![0u64; q * q];
    for part in &partials {
        for (c, &p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    let accepted: u64 = counts.iter().sum();
    if accepted == 0 {
        return Err(DistillError::ZeroAcceptance(0.0));
    }
    let histogram: Vec<T> = counts
        .iter()
        .map(|&c| T::from_u64(c).expect("count fits"))
        .collect();
    let acceptance = T::from_u64(accepted).unwrap() / T::from_u64(samples).unwrap();
    let w = histogram
        .iter()
        .map(|&h| h / T::from_u64(accepted).unwrap())
        .collect();
    Ok(MonteCarloResult {
        result: DistillationResult {
            w_out: WignerFunction::new(d, 1, w).expect("d^2 cells"),
            acceptance_probability: acceptance,
            histogram,
        },
        samples,
        accepted,
        counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint<T> {
    pub nu_in: T,
    pub nu_out: T,
    pub acceptance_probability: T,
}

/// Runs the exact engine on the ν-family at `point` and reads the output
/// back at the same point.
pub fn nu_sweep<T: Real>(
    code: &StabilizerCode,
    point: (u32, u32),
    nu_grid: &[T],
) -> Result<Vec<SweepPoint<T>>, DistillError> {
    let basis = CodespaceBasis::new(code)?;
    let d = code.modulus();
    let point = (point.0 % d.get(), point.1 % d.get());
    nu_grid
        .iter()
        .map(|&nu_in| {
            let res = distill_exact_with(&basis, &WignerFunction::nu_family(d, nu_in, point))?;
            Ok(SweepPoint {
                nu_in,
                nu_out: res.w_out.at(point.0, point.1),
                acceptance_probability: res.acceptance_probability,
            })
        })
        .collect()
}

/// `f(0)` on the face at `point`: zero for trivial codes, positive otherwise.
pub fn verify_bound_gap<T: Real>(
    code: &StabilizerCode,
    point: (u32, u32),
) -> Result<T, DistillError> {
    Ok(nu_sweep(code, point, &[T::zero()])?[0].nu_out)
}
