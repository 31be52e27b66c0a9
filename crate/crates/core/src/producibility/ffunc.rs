//! The minimal-variance function `F_j(X) = (1/j) min (Δjz)²` subject to
//! `⟨jx⟩/j = X`.
//!
//! Minimizing `(Δjz)² − λ⟨jx⟩` over states is the same as minimizing
//! `⟨(jz − c)²⟩ − λ⟨jx⟩` over states *and* the shift `c`, because
//! `(Δjz)² = min_c ⟨(jz − c)²⟩`. For a fixed `λ` the optimal shift satisfies
//! `c = ⟨jz⟩` (Hellmann–Feynman), and the ground state at that shift is a
//! point `(X, F)` of the lower envelope. For integer `j` the optimum is the
//! symmetric `c = 0`, i.e. the ground state of `jz² − λ jx`; half-integer
//! `j` needs `c > 0` at small `X`, where the state hugs `m = 1/2`.

use num_traits::Float;

use crate::roots::brent;
use crate::spin_algebra::{shifted_ground, RealGround, SpinSector};
use crate::{Error, Result};

/// One point of the envelope.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FrontierPoint {
    #[cfg_attr(not(test), allow(dead_code))]
    pub shift: f64,
    /// `⟨jx⟩ / j`
    pub x: f64,
    /// `(Δjz)² / j`
    pub f: f64,
    pub energy: f64,
}

const SHIFT_STEP: f64 = 1.0 / 16.0;
const X_TOL: f64 = 1e-12;

fn point_from(ground: &RealGround, shift: f64) -> FrontierPoint {
    let j = ground.sector.j();
    let (jx, jz, jz2) = ground.first_and_z_moments();
    FrontierPoint {
        shift,
        x: (jx / j).min(1.0),
        f: ((jz2 - jz * jz) / j).max(0.0),
        energy: ground.energy,
    }
}

/// `⟨jz⟩ − c` of the shifted ground state; minus half the energy slope.
fn shift_residual(sector: SpinSector, lambda: f64, shift: f64) -> Result<(f64, RealGround)> {
    let g = shifted_ground(sector, shift, lambda)?;
    let (_, jz, _) = g.first_and_z_moments();
    Ok((jz - shift, g))
}

/// Frontier point at multiplier `λ > 0`, with the shift optimized.
pub(crate) fn frontier_point(sector: SpinSector, lambda: f64) -> Result<FrontierPoint> {
    let (_, g0) = shift_residual(sector, lambda, 0.0)?;
    let at_zero = point_from(&g0, 0.0);

    if sector.is_integer() {
        // c = 0 is a stationary point; keep it unless it is a local maximum
        // or a far shift has lower energy.
        let (r1, g1) = shift_residual(sector, lambda, SHIFT_STEP)?;
        let (_, gh) = shift_residual(sector, lambda, 0.5)?;
        if r1 <= 0.0 && g1.energy >= g0.energy && gh.energy >= g0.energy {
            return Ok(at_zero);
        }
    }

    // Scan shifts, then refine the lowest-energy one by solving c = ⟨jz⟩.
    let mut best_i = 0usize;
    let mut best_e = g0.energy;
    let mut samples: alloc::vec::Vec<(f64, f64, f64)> = alloc::vec![(0.0, 0.0, g0.energy)];
    let mut i = 1usize;
    loop {
        let c = i as f64 * SHIFT_STEP;
        let (r, g) = shift_residual(sector, lambda, c)?;
        samples.push((c, r, g.energy));
        if g.energy < best_e {
            best_e = g.energy;
            best_i = i;
        }
        // past 1/2, keep going only while the energy still falls
        if c >= 0.5 && (r <= 0.0 || c >= sector.j()) {
            break;
        }
        i += 1;
    }
    let (c_best, r_best, _) = samples[best_i];
    let bracket = if best_i == 0 {
        // c = 0 may still be a local maximum with the minimum inside the
        // first step (close to full polarization c* = ⟨jz⟩ is small)
        let c = 1e-9;
        let (r, _) = shift_residual(sector, lambda, c)?;
        let (c1, r1, _) = samples[1];
        if r > 0.0 && r1 < 0.0 {
            Some((c, r, c1, r1))
        } else {
            return Ok(at_zero);
        }
    } else if r_best > 0.0 {
        samples.get(best_i + 1).map(|&(c, r, _)| (c_best, r_best, c, r))
    } else if best_i >= 2 {
        let (c, r, _) = samples[best_i - 1];
        Some((c, r, c_best, r_best))
    } else {
        // residual at c → 0⁺ is positive whenever c = 0 is not a minimum
        let c = 1e-9;
        let (r, _) = shift_residual(sector, lambda, c)?;
        Some((c, r, c_best, r_best))
    };
    let shift = match bracket {
        Some((a, ra, b, rb)) if ra.signum() != rb.signum() => {
            let (c, _) = brent(
                |c| shift_residual(sector, lambda, c).map(|(r, _)| r),
                a,
                b,
                ra,
                rb,
                1e-13,
                100,
            )?;
            c
        }
        _ => c_best,
    };
    let (_, g) = shift_residual(sector, lambda, shift)?;
    let p = point_from(&g, shift);
    // a stationary shift with higher energy than c = 0 is not the optimum
    Ok(if p.energy <= at_zero.energy { p } else { at_zero })
}

/// `F_j(X)`: minimal `(Δjz)²/j` over spin-`j` states with `⟨jx⟩/j = X`.
pub fn f_function(sector: SpinSector, x: f64) -> Result<f64> {
    if sector.twice_j() == 0 {
        return Err(Error::InvalidArgument("F_j needs j ≥ 1/2".into()));
    }
    if !(x >= -X_TOL) || !(x <= 1.0 + X_TOL) {
        return Err(Error::OutOfRange {
            what: "X",
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    let x = x.clamp(0.0, 1.0);
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(0.5);
    }
    Ok(resolve(sector, x)?.f)
}

/// Finds the frontier point with `⟨jx⟩/j = x` by root finding in `ln λ`.
pub(crate) fn resolve(sector: SpinSector, x: f64) -> Result<FrontierPoint> {
    const LN_MIN: f64 = -69.0; // λ ≈ 1e-30
    const LN_MAX: f64 = 34.5; // λ ≈ 1e15
    let eval = |u: f64| frontier_point(sector, u.exp());

    // geometric bracket search from λ = 1
    let mut lo_u = 0.0;
    let mut lo = eval(lo_u)?;
    let mut hi_u;
    let mut hi;
    if lo.x < x {
        hi_u = lo_u;
        hi = lo;
        while hi.x < x {
            lo_u = hi_u;
            lo = hi;
            hi_u += 2.3;
            if hi_u > LN_MAX {
                // beyond reach: interpolate toward the coherent endpoint (1, 1/2)
                let t = (x - lo.x) / (1.0 - lo.x);
                return Ok(FrontierPoint {
                    f: lo.f + t * (0.5 - lo.f),
                    x,
                    ..lo
                });
            }
            hi = eval(hi_u)?;
        }
    } else {
        hi_u = lo_u;
        hi = lo;
        while lo.x >= x {
            hi_u = lo_u;
            hi = lo;
            lo_u -= 2.3;
            if lo_u < LN_MIN {
                // F grows quadratically from the origin
                let r = x / hi.x;
                return Ok(FrontierPoint {
                    f: hi.f * r * r,
                    x,
                    ..hi
                });
            }
            lo = eval(lo_u)?;
        }
    }
    if hi.x == x {
        return Ok(hi);
    }
    let (u, _) = brent(
        |u| eval(u).map(|p| p.x - x),
        lo_u,
        hi_u,
        lo.x - x,
        hi.x - x,
        1e-15,
        200,
    )?;
    let p = eval(u)?;
    if (p.x - x).abs() <= 1e-10 * x.max(1e-300) || (p.x - x).abs() < X_TOL {
        return Ok(p);
    }
    // X(λ) jumps here: take the chord between the two sides (convex hull)
    let a = eval(u - 1e-9)?;
    let b = eval(u + 1e-9)?;
    if (b.x - a.x).abs() < X_TOL {
        return Ok(p);
    }
    let t = ((x - a.x) / (b.x - a.x)).clamp(0.0, 1.0);
    Ok(FrontierPoint {
        x,
        f: a.f + t * (b.f - a.f),
        ..p
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_is_quadratic() {
        let s = SpinSector::from_twice_j(1);
        for x in [0.0, 0.05, 0.3, 0.6, 0.99, 1.0] {
            let f = f_function(s, x).unwrap();
            assert!((f - x * x / 2.0).abs() < 1e-10, "X={x}: {f}");
        }
        assert!((f_function(s, 0.6).unwrap() - 0.18).abs() < 1e-10);
    }

    #[test]
    fn dicke_origin() {
        assert_eq!(f_function(SpinSector::from_twice_j(6), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn out_of_range() {
        let s = SpinSector::from_twice_j(4);
        assert!(f_function(s, 1.01).is_err());
        assert!(f_function(s, -0.1).is_err());
        assert!(f_function(SpinSector::from_twice_j(0), 0.5).is_err());
    }

    #[test]
    fn half_integer_small_x_moves_off_center() {
        let odd = frontier_point(SpinSector::from_twice_j(5), 1e-3).unwrap();
        assert!(odd.shift > 0.4, "{odd:?}");
        let even = frontier_point(SpinSector::from_twice_j(4), 1e-3).unwrap();
        assert_eq!(even.shift, 0.0);
    }

    #[test]
    fn bounded_and_monotone() {
        for twice_j in [1, 2, 3, 4, 7, 10, 28] {
            let s = SpinSector::from_twice_j(twice_j);
            let mut prev = 0.0;
            for i in 0..=40 {
                let x = i as f64 / 40.0;
                let f = f_function(s, x).unwrap();
                assert!(f <= 0.5 + 1e-12 && f >= prev - 1e-12, "2j={twice_j} X={x} F={f} prev={prev}");
                prev = f;
            }
        }
    }
}
