//! Coding schemes, bounds and simulation for the N-receiver broadcast
//! erasure channel with public feedback and receiver side information.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: arithmetic in GF(2^L).
//! - [`linalg`]: matrices, rank, span membership and greedy basis extension.
//! - [`channel`]: erasure-pattern distributions and seeded sampling.
//! - [`sideinfo`]: linear side information and All-or-Nothing information graphs.
//! - [`bounds`]: outer bounds, the two-receiver completion time and MWAIS.
//! - [`codes`]: the two-receiver feedback algorithm, index codes for special
//!   graph families and a decodability verifier.

pub mod bounds;
pub mod channel;
pub mod codes;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod sideinfo;

pub use error::{Error, Result};
pub use gf::{Field, Gf, GfVector};
pub use linalg::GfMatrix;
