pub mod coeff;
pub mod error;
pub mod expr;
pub mod green;
pub mod presentation;
pub mod rewrite;
pub mod superalg;
pub mod verify;

pub use coeff::{q_sub, Qr2, Scalar};
pub use error::{Error, Result};
