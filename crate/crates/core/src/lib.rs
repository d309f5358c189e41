//! Representativity of knots and links carried by standard surfaces.
//!
//! * [`surface`]: chain and torus surface models, multicurves, boundary counts.
//! * [`smoothing`]: component counts after smoothing, arc systems on cut pieces.
//! * [`piece`]: planar pieces and their loop and arc crossing minima.
//! * [`certificate`]: lower-bound certificates and exact representativity.
//! * [`facewidth`]: face-width of embedded graphs.
//! * [`families`]: generators for the standard families and their checks.
//! * [`bounds`]: interval propagation over knot invariants.

pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod exec;
pub mod facewidth;
pub mod families;
pub mod map;
pub mod piece;
pub mod smoothing;
pub mod surface;

pub use error::{Error, Result};
pub use exec::Execution;
