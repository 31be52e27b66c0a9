use alloc::vec::Vec;

use super::criteria::{evaluate, Criterion, CriterionOutcome};
use crate::spin_algebra::CollectiveMoments;
use crate::{Error, Result};

/// Result of scanning the group size `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DepthVerdict {
    /// `violated_k + 1`.
    pub depth_lower_bound: u32,
    /// Largest `k` whose criterion is violated; 0 if none.
    pub violated_k: u32,
    pub criterion: Criterion,
    /// `bound − (ΔJz)²` at `violated_k` (at `k = 1` when nothing is violated,
    /// where it is ≤ 0).
    pub margin: f64,
}

/// Coarse grid `1..=8`, then growing by ×1.5, up to `N − 1` (no state of
/// `N` particles violates the criterion at `k = N`).
fn coarse_grid(n: u32) -> Vec<u32> {
    let top = n.saturating_sub(1).max(1);
    let mut ks: Vec<u32> = (1..=8.min(top)).collect();
    let mut k = 8.0f64;
    while (k as u32) < top {
        k *= 1.5;
        let kk = (k as u32).min(top);
        if kk > *ks.last().unwrap() {
            ks.push(kk);
        }
    }
    ks
}

/// Largest group size `k` for which `criterion` is violated.
///
/// Violation is expected to be monotone in `k`. The criterion is evaluated
/// on a coarse grid first; when the pattern there is a violated prefix, the
/// edge is located by bisection, otherwise the gap after the last violated
/// grid point is scanned linearly.
pub fn depth_bound(moments: &CollectiveMoments, criterion: Criterion) -> Result<DepthVerdict> {
    // Estimated moments may overshoot the physical region slightly (e.g.
    // ⟨J²⟩ > J_max(J_max+1) within error bars), so only sanity is checked.
    let fields = [moments.mean_x, moments.mean_y, moments.mean_z, moments.second_perp, moments.second_z];
    if moments.n_particles == 0 || fields.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("moments must be finite with N ≥ 1".into()));
    }
    let n = moments.n_particles;
    let var = moments.var_z();
    let at = |k: u32| evaluate(criterion, k, moments);

    let grid = coarse_grid(n);
    let outcomes: Vec<CriterionOutcome> = grid.iter().map(|&k| at(k)).collect::<Result<_>>()?;
    let last_violated = outcomes.iter().rposition(|o| o.violated);

    // a single particle is never entangled, whatever the estimate says
    let last_violated = last_violated.filter(|_| n > 1);
    let Some(iv) = last_violated else {
        return Ok(DepthVerdict {
            depth_lower_bound: 1,
            violated_k: 0,
            criterion,
            margin: outcomes[0].bound - var,
        });
    };
    let monotone = outcomes[..=iv].iter().all(|o| o.violated);

    let mut best_k = grid[iv];
    let mut best = outcomes[iv];
    if let Some(&upper) = grid.get(iv + 1) {
        if monotone {
            // invariant: violated at lo, not violated at hi
            let (mut lo, mut hi) = (grid[iv], upper);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                let o = at(mid)?;
                if o.violated {
                    lo = mid;
                    best = o;
                } else {
                    hi = mid;
                }
            }
            best_k = lo;
        } else {
            for k in grid[iv] + 1..upper {
                let o = at(k)?;
                if o.violated {
                    best_k = k;
                    best = o;
                }
            }
        }
    }
    Ok(DepthVerdict {
        depth_lower_bound: best_k + 1,
        violated_k: best_k,
        criterion,
        margin: best.bound - var,
    })
}
