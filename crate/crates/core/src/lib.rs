//! Bäcklund transformations of constant-torsion curves in the Galilean space
//! G³, the pseudo-Galilean space G¹₃ and the Galilean space G⁴, with a
//! residual audit of every identity the transformation is claimed to satisfy.

// guards are written `!(x <= tol)` so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod backlund;
pub mod cli;
pub mod curves;
pub mod error;
pub mod fd;
pub mod gamma;
pub mod grid;
pub mod io;
pub mod ode;
pub mod parallel;
pub mod spaces;
pub mod tabulated;
pub mod verify;

pub use error::{Error, Result};
pub use spaces::{Frame, GVec, SpaceCase};
