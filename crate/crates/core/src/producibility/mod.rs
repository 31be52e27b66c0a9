//! k-producibility boundaries and entanglement-depth certification.
//!
//! A state is k-producible when it is a (mixture of) products of groups of
//! at most `k` particles. Each criterion below is a lower bound on
//! `(ΔJz)²` that every k-producible state obeys; a measured point below it
//! needs at least `k+1` jointly entangled particles.

mod aggregate;
mod boundary;
mod criteria;
mod depth;
mod ffunc;
mod tangent;

pub use aggregate::{aggregate_product, GroupMoments};
pub use boundary::{boundary_curve, boundary_point, default_lambda_grid, BoundaryCurve, BoundaryPoint};
pub use criteria::{criterion_closed_form, criterion_sorensen_molmer, Criterion, CriterionOutcome};
pub use depth::{depth_bound, DepthVerdict};
pub use ffunc::f_function;
pub use tangent::{tangent_criterion, Tangent};

pub(crate) use criteria::evaluate;
