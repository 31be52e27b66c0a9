use alloc::vec::Vec;
use num_traits::Float;

use crate::spin_algebra::{shifted_ground, SpinSector};
use crate::{Error, Result};

/// One boundary point: `x_norm = ⟨Jx²+Jy²⟩/J_max²`, `var_z = (ΔJz)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundaryPoint {
    pub lambda: f64,
    pub x_norm: f64,
    pub var_z: f64,
}

/// Lower boundary of `(ΔJz)²` for k-producible states of `N` particles,
/// traced by `N/k` copies of the ground state of `jz² − λ jx` (`j = k/2`).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundaryCurve {
    pub n_particles: u32,
    pub k: u32,
    /// Sorted by `λ`.
    pub points: Vec<BoundaryPoint>,
}

/// `λ = 0` followed by 400 log-spaced values on `[1e-4, 1e4]`.
pub fn default_lambda_grid() -> Vec<f64> {
    const COUNT: usize = 400;
    let (a, b) = (-4.0f64, 4.0f64);
    core::iter::once(0.0)
        .chain((0..COUNT).map(|i| 10f64.powf(a + (b - a) * i as f64 / (COUNT - 1) as f64)))
        .collect()
}

fn check_nk(n: u32, k: u32) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(alloc::format!(
            "group size k = {k} must satisfy 1 ≤ k ≤ N = {n}"
        )));
    }
    if k % 2 == 1 {
        return Err(Error::OddGroupSize { k });
    }
    Ok(())
}

/// Boundary point at a single `λ ≥ 0`; `λ = ∞` gives the coherent endpoint.
///
/// `N/k` is treated as a real number, so `k` need not divide `N`.
pub fn boundary_point(n: u32, k: u32, lambda: f64) -> Result<BoundaryPoint> {
    check_nk(n, k)?;
    if !(lambda >= 0.0) {
        return Err(Error::OutOfRange {
            what: "lambda",
            value: lambda,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    let sector = SpinSector::from_twice_j(k);
    let j = sector.j();
    let (jx, jz2) = if lambda == 0.0 {
        (0.0, 0.0)
    } else if lambda.is_infinite() {
        (j, j / 2.0)
    } else {
        let g = shifted_ground(sector, 0.0, lambda)?;
        let (jx, _, jz2) = g.first_and_z_moments();
        (jx, jz2)
    };
    let groups = n as f64 / k as f64;
    let perp = sector.casimir() - jz2;
    // x·J_max² = g⟨j⊥²⟩ + g(g−1)⟨jx⟩² with g = N/k and J_max² = N²/4
    let x_norm = 4.0 * (perp + (groups - 1.0) * jx * jx) / (n as f64 * k as f64);
    Ok(BoundaryPoint {
        lambda,
        x_norm,
        var_z: groups * jz2,
    })
}

/// Evaluates the boundary on `lambda_grid` (non-negative, any order).
pub fn boundary_curve(n: u32, k: u32, lambda_grid: &[f64]) -> Result<BoundaryCurve> {
    check_nk(n, k)?;
    let mut grid: Vec<f64> = lambda_grid.to_vec();
    if grid.iter().any(|l| !(*l >= 0.0)) {
        return Err(Error::InvalidArgument("λ grid must be non-negative".into()));
    }
    grid.sort_by(|a, b| a.partial_cmp(b).expect("grid is NaN-free"));
    let points = grid
        .into_iter()
        .map(|l| boundary_point(n, k, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve {
        n_particles: n,
        k,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dicke_endpoint_is_exact() {
        let c = boundary_curve(8000, 28, &[0.0]).unwrap();
        assert_eq!(c.points[0].x_norm, 0.00375);
        assert_eq!(c.points[0].var_z, 0.0);
    }

    #[test]
    fn coherent_endpoint() {
        let p = boundary_point(8000, 28, f64::INFINITY).unwrap();
        assert!((p.var_z - 2000.0).abs() < 1e-9);
        assert!((p.x_norm - (1.0 + 1.0 / 8000.0)).abs() < 1e-12);
        let big = boundary_point(8000, 28, 1e8).unwrap();
        assert!((big.var_z - 2000.0).abs() < 1e-3);
        assert!((big.x_norm - p.x_norm).abs() < 1e-6);
    }

    #[test]
    fn odd_or_oversized_k_rejected() {
        assert!(matches!(boundary_curve(100, 3, &[0.0]), Err(Error::OddGroupSize { k: 3 })));
        assert!(boundary_curve(10, 12, &[0.0]).is_err());
        assert!(boundary_curve(10, 0, &[0.0]).is_err());
        assert!(boundary_curve(10, 2, &[-1.0]).is_err());
    }

    #[test]
    fn default_grid_shape() {
        let g = default_lambda_grid();
        assert_eq!(g.len(), 401);
        assert_eq!(g[0], 0.0);
        assert!((g[1] - 1e-4).abs() < 1e-18);
        assert!((g[400] - 1e4).abs() < 1e-9);
    }

    #[test]
    fn points_are_sorted_and_monotone() {
        let c = boundary_curve(400, 8, &[10.0, 0.0, 1.0, 0.1]).unwrap();
        for w in c.points.windows(2) {
            assert!(w[0].lambda < w[1].lambda);
            assert!(w[0].x_norm < w[1].x_norm);
            assert!(w[0].var_z < w[1].var_z);
        }
    }
}
