//! Finite-dimensional Nevanlinna representation data, structured-resolvent
//! evaluation on the free upper half-plane and asymptotic type detection
//! along the ray `isχ`.

mod asymptotics;
mod resolvent;
mod spec;

pub use asymptotics::{
    asymptotic_probe, classify_type, pick_positivity_check, Classification, Limits, PickReport, ProbeSequence,
    AsymptoticProbe, DEFAULT_SMAX,
};
pub use resolvent::{delta_y, eval_representation};
pub use spec::{random_spec, Decomposition, RepresentationSpec, SpecWire};
