//! Collective-spin linear algebra in one symmetric spin-`j` sector.
//!
//! States are stored in the `|j,m⟩` basis ordered `m = j, j−1, …, −j`, so
//! index `i` corresponds to `m = j − i`. All operators that appear here
//! (`jx`, `jz`, `jz²` and combinations) are real symmetric tridiagonal in
//! that basis.

mod ground;
mod moments;
mod operator;
mod rotation;
mod sector;
mod state;

pub use ground::{ground_state, GroundState};
pub use moments::{euler_rotation, moments_of_state, CollectiveMoments, SpinMoments};
pub use operator::{build_operator, OperatorKind, TridiagonalOperator};
pub use rotation::rotated_dicke_distribution;
pub use sector::SpinSector;
pub use state::StateVector;

pub(crate) use ground::{shifted_ground, RealGround};
pub(crate) use operator::lowest_eigenpair;
