//! Seeded Monte Carlo generators: measurement records of Dicke and coherent
//! states, random k-producible states, and noisy squeezed ground states.
//!
//! Every generator derives its random numbers from `(seed, stream)` pairs
//! (see [`stream_rng`]), one stream per independent task, so results do
//! not depend on how the tasks are scheduled.

mod noise;
mod producible;
mod shots;
mod sweep;

pub use noise::NoiseModel;
pub use producible::{random_producible_moments, random_producible_state, ProducibleMode};
pub use shots::{sample_coherent_mixed_shots, sample_coherent_shots, sample_dicke_shots, Basis, ShotRecord, ALPHA_EXACT_MAX_J};
pub use sweep::{compare_criteria_sweep, noisy_squeezed_moments, sweep_point, SweepResult};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent generator for task `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
