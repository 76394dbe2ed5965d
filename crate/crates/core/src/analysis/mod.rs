//! Regime classification and the executable forms of the monotonicity,
//! continuity and smoothness results at the fixed point `1/R`.

pub mod continuity;
pub mod fd;
pub mod monotone;
pub mod ode;
pub mod probe;
pub mod regime;
pub mod roots;
pub mod smoothness;
pub mod suite;

pub use continuity::{classify_continuity, glue, ContinuityVerdict, GluedSolution};
pub use fd::{check_derivative, DerivativeCheck};
pub use monotone::{
    classify_monotonicity, find_nonmonotone_witness, monotone_sufficient, MonotonicityVerdict, Witness,
};
pub use ode::{defect_closed_form, ode_flow, OdeFlow, OdeSpec};
pub use probe::{boundary_probe, default_ladder, ProbeRow, Side};
pub use regime::{classify_regime, Regime};
pub use smoothness::{classify_smoothness, NotC1Reason, Smoothness, SmoothnessVerdict};
pub use suite::{run_suite, Suite, TrialInputs, VerificationReport};
