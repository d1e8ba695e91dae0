//! Orders, asymptotics and digit-sum structure of the complete binomial
//! product `Ḡ_n = prod_k C(n, k)`.

pub mod asymptotics;
pub mod delange;
pub mod error;
pub mod exact;
pub mod hp;
pub mod orders;
pub mod primestats;
pub mod radix;
pub mod verify;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
