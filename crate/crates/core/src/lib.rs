//! Distance-optimal locally repairable codes over finite fields, and
//! constructive certificates that they achieve the MDS-PIR capacity.
//!
//! The pipeline is: build an LRC ([`lrc`]), construct an (n-k)-regular matrix
//! of correctable erasure patterns for it ([`ematrix`]), and report the
//! resulting capacity verdict ([`capacity`]).

pub mod capacity;
pub mod code;
pub mod ematrix;
pub mod error;
pub mod format;
pub mod gf;
pub mod lrc;
pub mod matrix;

pub use capacity::{c_asymptotic, c_finite, verdict, AchievabilityVerdict, CapacityQuery, FileCount, VerdictReport};
pub use code::{ErasurePattern, LinearCode};
pub use ematrix::{
    apply_swap_plan, brute_force_search, construct, step_a_init, step_b_swaps, validate, Construction, EMatrix,
    IterationPlan, StepAConfig, SwapTrace, ValidationReport,
};
pub use error::{Error, Result};
pub use format::{load_code, LoadedCode};
pub use gf::{binary_field, make_field, parse_field, Field, FieldElement};
pub use lrc::{check_compliance, parity_splitting, reed_solomon, ComplianceReport, LocalityProfile, LrcCode};
pub use matrix::{BinaryMatrix, MatrixGF};
