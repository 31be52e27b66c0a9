use num_traits::Float;

use super::boundary::{boundary_point, BoundaryPoint};
use crate::roots::brent;
use crate::{Error, Result};

/// Line tangent to the k-producibility boundary in the `(x_norm, var_z)`
/// plane. Points strictly below it have depth at least `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tangent {
    pub lambda: f64,
    pub x_touch: f64,
    pub var_touch: f64,
    pub slope: f64,
    pub intercept: f64,
}

impl Tangent {
    pub fn var_bound(&self, x_norm: f64) -> f64 {
        self.intercept + self.slope * x_norm
    }
}

const LN_LAMBDA_MIN: f64 = -27.631_021_115_928_547; // ln 1e-12
const LN_LAMBDA_MAX: f64 = 27.631_021_115_928_547;

fn tangent_at(n: u32, k: u32, touch: BoundaryPoint) -> Result<Tangent> {
    let l0 = touch.lambda;
    let (a, b) = if l0 == 0.0 {
        // one-sided at the Dicke endpoint
        (touch, boundary_point(n, k, 1e-4)?)
    } else {
        let h = 1e-4 * l0;
        (boundary_point(n, k, l0 - h)?, boundary_point(n, k, l0 + h)?)
    };
    let dx = b.x_norm - a.x_norm;
    if !(dx > 0.0) {
        return Err(Error::Bracket("boundary is flat in x_norm at the tangent point"));
    }
    let slope = (b.var_z - a.var_z) / dx;
    Ok(Tangent {
        lambda: l0,
        x_touch: touch.x_norm,
        var_touch: touch.var_z,
        slope,
        intercept: touch.var_z - slope * touch.x_norm,
    })
}

const LN_STEP: f64 = 0.5;

/// Rising branch of the curve: `x_norm(λ)` increases from the Dicke end up
/// to a maximum at large `λ` and then falls back slightly towards the
/// coherent limit. Points past the maximum are not on the lower boundary.
/// Returns the sampled `(ln λ, point)` pairs up to and including the
/// first one past the maximum, preceded by the `λ = 0` point.
fn rising_branch(n: u32, k: u32) -> Result<alloc::vec::Vec<(f64, BoundaryPoint)>> {
    let mut out = alloc::vec![(f64::NEG_INFINITY, boundary_point(n, k, 0.0)?)];
    let mut u = LN_LAMBDA_MIN;
    while u <= LN_LAMBDA_MAX {
        let p = boundary_point(n, k, u.exp())?;
        let falling = p.x_norm < out[out.len() - 1].1.x_norm;
        out.push((u, p));
        if falling {
            break;
        }
        u += LN_STEP;
    }
    Ok(out)
}

/// Locates the boundary point with the given `x_norm` on the rising branch;
/// `None` when `x0` is outside `[x(0), max x]`.
fn touch_point(n: u32, k: u32, x0: f64) -> Result<Option<BoundaryPoint>> {
    let branch = rising_branch(n, k)?;
    let start = branch[0].1;
    let (i_max, peak) = branch
        .iter()
        .enumerate()
        .skip(1)
        .fold((0, start), |acc, (i, &(_, p))| if p.x_norm > acc.1.x_norm { (i, p) } else { acc });
    let tol = 1e-12 * peak.x_norm;
    if x0 < start.x_norm - tol || x0 > peak.x_norm + tol {
        return Ok(None);
    }
    if x0 <= start.x_norm {
        return Ok(Some(start));
    }
    if x0 >= peak.x_norm {
        return Ok(Some(peak));
    }
    let i = branch[..=i_max].iter().position(|(_, p)| p.x_norm >= x0).expect("x0 ≤ peak");
    let (u_hi, hi) = branch[i];
    let (u_lo, lo) = branch[i - 1];
    if i == 1 {
        // below λ = 1e-12 the curve is indistinguishable from its endpoint
        return Ok(Some(if x0 - lo.x_norm < hi.x_norm - x0 { lo } else { hi }));
    }
    let (u, _) = brent(
        |u: f64| boundary_point(n, k, u.exp()).map(|p| p.x_norm - x0),
        u_lo,
        u_hi,
        lo.x_norm - x0,
        hi.x_norm - x0,
        1e-14,
        200,
    )?;
    Ok(Some(boundary_point(n, k, u.exp())?))
}

/// `[x(0), max x]` of the rising branch, sampled in steps of `ln λ = 0.5`.
fn x_range(n: u32, k: u32) -> Result<(f64, f64)> {
    let branch = rising_branch(n, k)?;
    let max = branch.iter().map(|(_, p)| p.x_norm).fold(f64::NEG_INFINITY, f64::max);
    Ok((branch[0].1.x_norm, max))
}

/// Tangent to `boundary_curve(n, k)` at `x_norm = x0`, from centered
/// differences in `λ` (forward at the `λ = 0` endpoint).
pub fn tangent_criterion(n: u32, k: u32, x0: f64) -> Result<Tangent> {
    match touch_point(n, k, x0)? {
        Some(p) => tangent_at(n, k, p),
        None => {
            let (min, max) = x_range(n, k)?;
            Err(Error::OutOfRange {
                what: "x0",
                value: x0,
                min,
                max,
            })
        }
    }
}

/// As [`tangent_criterion`] but defined for every `x0`: below the curve's
/// range the line at its start is used, and at or beyond the turning point
/// of `x_norm(λ)`, where the tangent becomes vertical, the horizontal line
/// through the turning point.
pub(crate) fn tangent_for_depth(n: u32, k: u32, x0: f64) -> Result<Tangent> {
    let (min, max) = x_range(n, k)?;
    let x = x0.clamp(min, max);
    let horizontal = |p: BoundaryPoint| Tangent {
        lambda: p.lambda,
        x_touch: p.x_norm,
        var_touch: p.var_z,
        slope: 0.0,
        intercept: p.var_z,
    };
    match touch_point(n, k, x)? {
        Some(p) if x < max => match tangent_at(n, k, p) {
            Ok(t) => Ok(t),
            Err(Error::Bracket(_)) => Ok(horizontal(p)),
            Err(e) => Err(e),
        },
        Some(p) => Ok(horizontal(p)),
        None => Err(Error::Bracket("x_norm outside the sampled boundary")),
    }
}
