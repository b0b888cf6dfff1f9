//! Qudit magic state distillation simulated in discrete phase space.
//!
//! Numerical types are generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases below fix them to `f64`.

pub mod code;
pub mod dense;
pub mod distill;
pub mod io;
pub mod oracle;
pub mod pauli;
pub mod scalar;
pub mod wigner;
pub mod witness;
pub mod zd;

pub use code::{CanonicalCode, LogicalPair, StabilizerCode};
pub use scalar::Real;
pub use zd::{Prime, SymplecticVector, ZdMatrix, ZdVector};

pub type Wigner = wigner::WignerFunction<f64>;
pub type DenseMatrix = dense::CMatrix<f64>;
pub type Distillation = distill::DistillationResult<f64>;
pub type MonteCarlo = distill::MonteCarloResult<f64>;
pub type Sweep = distill::SweepPoint<f64>;
pub type State = oracle::DenseState<f64>;
