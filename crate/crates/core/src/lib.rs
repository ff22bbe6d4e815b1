//! High-precision evaluation of the spectral zeta functions of the integers and
//! of the discrete circles Z/nZ, together with the identities that tie them to
//! sphere volumes, Catalan numbers and the values of the Riemann zeta function.

pub mod asymptotics;
pub mod ball;
pub mod cli;
pub mod context;
pub mod error;
pub mod eval;
pub mod numerics;
pub mod poly;
pub mod spheres;
pub mod verify;
pub mod zeta_z;
pub mod zeta_zn;

pub use ball::{HPComplex, HPReal};
pub use context::PrecisionContext;
pub use error::{Result, ZetaError};
