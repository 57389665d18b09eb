//! Certification of Kochen-Specker sets of rays and synthesis of the
//! state-independent noncontextuality inequality they induce.
//!
//! The pipeline is: parse or build a [`RaySet`], assemble a
//! [`ProblemInstance`] (orthogonality graph plus all complete bases), decide
//! colorability under the original or extended definition, and build the
//! weighted inequality whose classical bound is the weighted independence
//! number of the graph and whose quantum value is the number of bases.

pub mod algebra;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod inequality;
pub mod rayset;

pub use algebra::{QuadScalar, Ray, ScalarMode};
pub use coloring::{check_colorable, is_ks_set, verify_assignment, Assignment, ColoringResult, DefinitionMode};
pub use error::{Error, Result};
pub use inequality::{build_inequality, gap_report, GapReport, Inequality, StateSpec};
pub use rayset::{Basis, CompatibilityGraph, ProblemInstance, RaySet};
