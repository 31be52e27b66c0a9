use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

use super::{lowest_eigenpair, SpinSector, StateVector};
use crate::{Error, Result};

/// Ground state of `h(λ) = jz² − λ jx`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub state: StateVector,
    pub energy: f64,
    /// Set for half-integer `j`, where the `λ → 0` limit is a choice
    /// within a degenerate pair rather than a unique state.
    pub odd_k_heuristic: bool,
}

/// Ground state of `h(λ)` by a tridiagonal eigensolve.
///
/// At `λ = 0` the integer-`j` result is the Dicke state `|j,0⟩`; for
/// half-integer `j` the two levels `m = ±1/2` are degenerate and the
/// symmetric combination (the `λ → 0⁺` limit) is returned.
pub fn ground_state(sector: SpinSector, lambda: f64) -> Result<GroundState> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::OutOfRange {
            what: "lambda",
            value: lambda,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    let odd_k_heuristic = !sector.is_integer();
    if lambda == 0.0 {
        let dim = sector.dim();
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); dim];
        let energy = if sector.is_integer() {
            amps[dim / 2] = Complex64::new(1.0, 0.0);
            0.0
        } else {
            let r = core::f64::consts::FRAC_1_SQRT_2;
            amps[dim / 2 - 1] = Complex64::new(r, 0.0);
            amps[dim / 2] = Complex64::new(r, 0.0);
            0.25
        };
        return Ok(GroundState {
            state: StateVector::new(sector, amps)?,
            energy,
            odd_k_heuristic,
        });
    }
    let g = shifted_ground(sector, 0.0, lambda)?;
    let mut amps = alloc::vec![Complex64::new(0.0, 0.0); sector.dim()];
    for (k, a) in g.amps.iter().enumerate() {
        amps[g.offset + k] = Complex64::new(*a, 0.0);
    }
    Ok(GroundState {
        state: StateVector::new(sector, amps)?,
        energy: g.energy,
        odd_k_heuristic,
    })
}

/// Real ground state stored on a window `[offset, offset + amps.len())` of
/// basis indices; amplitudes outside the window are below `WINDOW_TAIL`.
#[derive(Debug, Clone)]
pub(crate) struct RealGround {
    pub sector: SpinSector,
    pub energy: f64,
    pub offset: usize,
    pub amps: Vec<f64>,
}

/// Edge amplitude below which a truncated window is accepted.
const WINDOW_TAIL: f64 = 1e-17;

impl RealGround {
    /// `(⟨jx⟩, ⟨jz⟩, ⟨jz²⟩)`; `⟨jy⟩ = 0` for real states.
    pub fn first_and_z_moments(&self) -> (f64, f64, f64) {
        let mut jx = 0.0;
        let mut jz = 0.0;
        let mut jz2 = 0.0;
        for (k, &a) in self.amps.iter().enumerate() {
            let m = self.sector.m(self.offset + k);
            let p = a * a;
            jz += m * p;
            jz2 += m * m * p;
            if k + 1 < self.amps.len() {
                // 2·⟨m|jx|m−1⟩ = a_{m−1}, with m−1 at index k+1
                jx += a * self.amps[k + 1] * self.sector.raising(m - 1.0);
            }
        }
        (jx, jz, jz2)
    }
}

/// Ground state of `(jz − c)² − λ jx` on an adaptively grown window of
/// levels around `m ≈ c`. Ground states of this family are localized in
/// `m`, so sectors with thousands of levels rarely need the full matrix.
pub(crate) fn shifted_ground(sector: SpinSector, shift: f64, lambda: f64) -> Result<RealGround> {
    let dim = sector.dim();
    let j = sector.j();
    // index whose m is closest to the shift
    let center = ((j - shift).round().max(0.0) as usize).min(dim - 1);
    let mut half = 24usize;
    loop {
        let lo = center.saturating_sub(half);
        let hi = (center + half).min(dim - 1);
        let diag: Vec<f64> = (lo..=hi)
            .map(|i| {
                let d = sector.m(i) - shift;
                d * d
            })
            .collect();
        let off: Vec<f64> = (lo..hi)
            .map(|i| -lambda * 0.5 * sector.raising(sector.m(i + 1)))
            .collect();
        let pair = lowest_eigenpair(&diag, &off).ok_or(Error::NonConvergence {
            twice_j: sector.twice_j(),
            lambda,
            residual: f64::NAN,
        })?;
        let full = lo == 0 && hi == dim - 1;
        let edge_ok = (lo == 0 || pair.vector[0].abs() < WINDOW_TAIL)
            && (hi == dim - 1 || pair.vector[pair.vector.len() - 1].abs() < WINDOW_TAIL);
        if full || edge_ok {
            return Ok(RealGround {
                sector,
                energy: pair.value,
                offset: lo,
                amps: pair.vector,
            });
        }
        half *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::moments_of_state;

    #[test]
    fn spin_one_at_zero_is_dicke() {
        let g = ground_state(SpinSector::from_twice_j(2), 0.0).unwrap();
        assert_eq!(g.energy, 0.0);
        assert_eq!(g.state.amplitudes()[1].re, 1.0);
        let m = moments_of_state(&g.state, 2).unwrap();
        assert_eq!(m.var_z(), 0.0);
        assert_eq!(m.second_perp, 2.0);
    }

    #[test]
    fn qubit_at_unit_lambda() {
        let g = ground_state(SpinSector::from_twice_j(1), 1.0).unwrap();
        assert!((g.energy - (0.25 - 0.5)).abs() < 1e-14);
        let a = g.state.amplitudes();
        assert!((a[0].re - a[1].re).abs() < 1e-12);
        assert!(g.odd_k_heuristic);
    }

    #[test]
    fn strong_field_polarizes_along_x() {
        let g = ground_state(SpinSector::from_twice_j(4), 1e6).unwrap();
        let m = moments_of_state(&g.state, 4).unwrap();
        assert!((m.mean_x / 2.0 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn half_integer_zero_lambda_is_symmetric_pair() {
        let g = ground_state(SpinSector::from_twice_j(5), 0.0).unwrap();
        assert!(g.odd_k_heuristic);
        let m = moments_of_state(&g.state, 5).unwrap();
        assert!(m.mean_z.abs() < 1e-15);
        assert!((m.var_z() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn window_matches_full_solve() {
        let sector = SpinSector::from_twice_j(400);
        for lambda in [1e-3, 0.5, 30.0, 2e3] {
            let w = shifted_ground(sector, 0.0, lambda).unwrap();
            let op = crate::spin_algebra::build_operator(sector, crate::spin_algebra::OperatorKind::ZSquared)
                .combine(1.0, &crate::spin_algebra::build_operator(sector, crate::spin_algebra::OperatorKind::X), -lambda)
                .unwrap();
            let (e, _) = op.lowest_eigenpair().unwrap();
            assert!((w.energy - e).abs() < 1e-10 * (1.0 + e.abs()), "λ={lambda}: {} vs {e}", w.energy);
        }
    }

    #[test]
    fn rejects_negative_lambda() {
        assert!(ground_state(SpinSector::from_twice_j(2), -1.0).is_err());
        assert!(ground_state(SpinSector::from_twice_j(2), f64::NAN).is_err());
    }
}
