//! Exact construction and certification of the quantum Lie algebra of
//! `U_q(sl n)`, its two-parameter quantized symmetric algebra, the quantum
//! exterior algebra and de Rham complex, and the quantized function algebras
//! of maximal coadjoint orbits.

pub mod cert;
pub mod certify;
pub mod derham;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod orbit;
pub mod qlie;
pub mod rep;
pub mod scalars;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, Subspace};
pub use scalars::{BigRat, RatFunc, TPoly};
pub use cert::GradedCert;
pub use certify::{run, Report, RunConfig, Suite};
