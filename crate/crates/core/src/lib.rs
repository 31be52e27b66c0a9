//! Entanglement-depth certification for collective-spin states.
//!
//! Given the measured collective-spin moments of an ensemble of `N`
//! spin-1/2 particles (most importantly `⟨Jx²+Jy²⟩` and `(ΔJz)²`), this
//! crate decides how many particles must be jointly entangled. It provides
//!
//! * exact linear algebra in a single symmetric spin-`j` sector
//!   ([`spin_algebra`]),
//! * k-producibility boundaries and depth criteria ([`producibility`]),
//! * unbiased moment estimation with error bars ([`statistics`]),
//! * squeezing figures of merit ([`metrics`]),
//! * seeded Monte Carlo generators for shots and state families
//!   ([`simulation`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! anything touching the filesystem live in the `depthcert` crate.

#![no_std]
// `!(x >= 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// `num_traits::Float` provides float math without std. Whenever something
// else in the build links std its inherent methods take precedence and the
// import is reported as unused.
#![allow(unused_imports)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod metrics;
pub mod producibility;
mod roots;
pub mod simulation;
pub mod spin_algebra;
pub mod statistics;

pub use error::{Error, Result};

pub use producibility::{
    aggregate_product, boundary_curve, criterion_closed_form, criterion_sorensen_molmer,
    default_lambda_grid, depth_bound, f_function, tangent_criterion, BoundaryCurve,
    BoundaryPoint, Criterion, CriterionOutcome, DepthVerdict, GroupMoments, Tangent,
};
pub use spin_algebra::{
    build_operator, ground_state, moments_of_state, rotated_dicke_distribution,
    CollectiveMoments, GroundState, OperatorKind, SpinSector, StateVector, TridiagonalOperator,
};
