//! Geometric phases of second-quantized light in a helically coiled fibre
//! made of a gyroelectric medium.
//!
//! The crate is split into four layers:
//!
//! * [`geometry`] maps helix pitch and radius to the cone angle of the
//!   wave-vector path and the per-mode precession frequencies.
//! * [`media`] holds the gyroelectric permittivity tensor and its circular
//!   eigenmodes.
//! * [`phase`] evaluates the closed-form quantum and quantum-vacuum phases
//!   under normal or symmetric operator ordering.
//! * [`fock`] is an independent oracle: exact two-mode Fock-block matrices,
//!   the dressing unitary, fixed-step propagation and noncyclic phase
//!   extraction from sampled states.
//!
//! [`cli`] wires these into the `vacphase` binary.
//!
//! Units: SI lengths and times, radians, and ħ = 1 everywhere.

pub mod cli;
pub mod error;
pub mod fock;
pub mod geometry;
pub mod media;
pub mod phase;

pub use error::{Error, Result, Sector};
pub use geometry::{HelixSpec, SphericalTrajectory, TurnFactor, SPEED_OF_LIGHT};
pub use media::{Eigenmode, GyroelectricTensor, Handedness};
pub use phase::{OrderingMode, PhaseBreakdown, PhotonOccupation, Quadrature};
