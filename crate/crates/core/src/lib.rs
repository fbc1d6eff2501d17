//! The n-dimensional Einstein gyrogroup on the open unit ball.
//!
//! The ball `B = { v ∈ Rⁿ : ‖v‖ < 1 }` of relativistic velocities (c = 1)
//! carries Einstein velocity addition, which is not associative but is
//! corrected by gyrations. This crate provides:
//!
//! - [`linalg`]: a small runtime-dimension vector/matrix kernel and seeded samplers,
//! - [`gyro`]: Einstein addition, the Lorentz factor and gyrations (as maps and matrices),
//! - [`metric`]: rapidity, the rapidity (Cayley–Klein) metric, the gyrometric and two
//!   independent distance oracles,
//! - [`isometry`]: the isometry group of the ball in canonical `L_u ∘ τ` form,
//! - [`boost`]: (n+1)-dimensional Lorentz boosts and the Thomas rotation.
//!
//! ```text
//! u ⊕ v = 1/(1+⟨u,v⟩) · ( u + v/γ_u + γ_u/(1+γ_u) ⟨u,v⟩ u ),   γ_u = 1/√(1−‖u‖²)
//! d(u, v) = artanh ‖−u ⊕ v‖
//! ```
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod boost;
mod error;
pub mod gyro;
pub mod isometry;
pub mod linalg;
pub mod metric;
mod tol;

pub use boost::{BoostMatrix, ThomasRotation};
pub use error::Error;
pub use gyro::BallPoint;
pub use isometry::Isometry;
pub use linalg::{Matrix, OrthoMatrix, Vector};
pub use tol::Tolerance;

/// Shorthand result type used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
