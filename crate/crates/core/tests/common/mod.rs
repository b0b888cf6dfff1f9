#![allow(dead_code)]

use num_complex::Complex;
use qudit_msd::code::{random_code, StabilizerCode};
use qudit_msd::dense::CMatrix;
use qudit_msd::oracle::DenseState;
use qudit_msd::wigner::WignerFunction;
use qudit_msd::zd::Prime;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G G^dag / Tr` for a random complex `G`.
pub fn random_state(d: Prime, seed: u64) -> DenseState<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = d.as_usize();
    let g = CMatrix::from_fn(q, q, |_, _| {
        Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let rho = &g * &g.dagger();
    let tr = rho.trace().re;
    DenseState::new(d, 1, rho.scale_real(1.0 / tr)).unwrap()
}

/// Strictly positive normalized quasi-distribution.
pub fn random_positive_wigner(d: Prime, seed: u64) -> WignerFunction<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = d.as_usize();
    let raw: Vec<f64> = (0..q * q).map(|_| 0.05 + rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    WignerFunction::new(d, 1, raw.into_iter().map(|x| x / total).collect()).unwrap()
}

/// A product stabilizer state on `N - 1` randomly chosen qudits, leaving one
/// qudit untouched.
pub fn trivial_code(d: Prime, n: usize, seed: u64) -> StabilizerCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut qudits: Vec<usize> = (0..n).collect();
    qudits.shuffle(&mut rng);
    let rows: Vec<Vec<i64>> = qudits[..n - 1]
        .iter()
        .map(|&k| {
            let mut row = vec![0i64; 2 * n];
            loop {
                let (a, b) = (rng.random_range(0..d.get()), rng.random_range(0..d.get()));
                if (a, b) != (0, 0) {
                    row[k] = a as i64;
                    row[n + k] = b as i64;
                    break;
                }
            }
            row
        })
        .collect();
    StabilizerCode::from_rows(d, &rows).unwrap()
}

pub fn random_codes(
    d: Prime,
    count: u64,
    n_min: usize,
    n_max: usize,
    seed: u64,
) -> Vec<StabilizerCode> {
    (0..count)
        .map(|k| random_code(d, n_min + (k as usize % (n_max - n_min + 1)), seed + k).unwrap())
        .collect()
}
