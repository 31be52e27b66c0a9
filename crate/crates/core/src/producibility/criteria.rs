use num_traits::Float;

use super::f_function;
use super::tangent::tangent_for_depth;
use crate::spin_algebra::{CollectiveMoments, SpinSector};
use crate::{Error, Result};

const RADICAND_REL: f64 = 1e-13;

/// Relative slack under which `(ΔJz)² = bound` counts as equality (not a
/// violation); boundary states reproduce their own bound only to rounding.
pub(crate) const TIE_REL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Criterion {
    /// Bound from `⟨Jx²+Jy²⟩`, valid for unpolarized states.
    ClosedForm,
    /// Bound from the mean spin length only.
    SorensenMolmer,
    /// Linear bound tangent to the numerical k-producibility boundary.
    Tangent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CriterionOutcome {
    pub violated: bool,
    /// Lower bound on `(ΔJz)²` for k-producible states.
    pub bound: f64,
}

impl CriterionOutcome {
    pub(crate) fn compare(var_z: f64, bound: f64) -> Self {
        Self {
            violated: bound > 0.0 && var_z < bound * (1.0 - TIE_REL),
            bound,
        }
    }
}

fn check_k(k: u32, moments: &CollectiveMoments) -> Result<()> {
    if k == 0 || k > moments.n_particles {
        return Err(Error::InvalidArgument(alloc::format!(
            "k = {k} outside 1..={}",
            moments.n_particles
        )));
    }
    Ok(())
}

/// `(ΔJz)² ≥ J_max F_{k/2}( √(⟨Jx²+Jy²⟩ − J_max(k/2+1)) / J_max )`.
///
/// When the radicand is not positive (up to rounding) the bound is 0. An argument above 1
/// (only reachable by noisy estimates, never by a physical state) is
/// clamped to 1.
pub fn criterion_closed_form(k: u32, moments: &CollectiveMoments) -> Result<CriterionOutcome> {
    check_k(k, moments)?;
    let jm = moments.j_max();
    let radicand = moments.second_perp - jm * (k as f64 / 2.0 + 1.0);
    // rounding in ⟨Jx²+Jy²⟩ must not turn an exact zero into a tiny bound
    if !(radicand > RADICAND_REL * moments.second_perp.abs()) {
        return Ok(CriterionOutcome {
            violated: false,
            bound: 0.0,
        });
    }
    let x = (radicand.sqrt() / jm).min(1.0);
    let bound = jm * f_function(SpinSector::from_twice_j(k), x)?;
    Ok(CriterionOutcome::compare(moments.var_z(), bound))
}

/// `(ΔJz)² ≥ J_max F_{k/2}( √(⟨Jx⟩²+⟨Jy⟩²) / J_max )`.
pub fn criterion_sorensen_molmer(k: u32, moments: &CollectiveMoments) -> Result<CriterionOutcome> {
    check_k(k, moments)?;
    let jm = moments.j_max();
    let x = (moments.polarization_sq().sqrt() / jm).min(1.0);
    let bound = jm * f_function(SpinSector::from_twice_j(k), x)?;
    Ok(CriterionOutcome::compare(moments.var_z(), bound))
}

/// Dispatches on the criterion. The tangent criterion exists only for even
/// group sizes; odd `k` uses the boundary of `k+1`, which is lower, so a
/// violation there still excludes k-producibility.
pub(crate) fn evaluate(
    criterion: Criterion,
    k: u32,
    moments: &CollectiveMoments,
) -> Result<CriterionOutcome> {
    match criterion {
        Criterion::ClosedForm => criterion_closed_form(k, moments),
        Criterion::SorensenMolmer => criterion_sorensen_molmer(k, moments),
        Criterion::Tangent => {
            check_k(k, moments)?;
            let even_k = k + k % 2;
            if even_k > moments.n_particles {
                return Ok(CriterionOutcome {
                    violated: false,
                    bound: 0.0,
                });
            }
            let t = tangent_for_depth(moments.n_particles, even_k, moments.x_norm())?;
            let bound = t.var_bound(moments.x_norm()).max(0.0);
            Ok(CriterionOutcome::compare(moments.var_z(), bound))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_bound_for_dicke() {
        let m = CollectiveMoments::dicke(8000);
        let out = criterion_closed_form(1, &m).unwrap();
        assert!((out.bound - 1999.75).abs() < 1e-6, "{}", out.bound);
        assert!(out.violated);
    }

    #[test]
    fn coherent_state_is_not_flagged() {
        let m = CollectiveMoments::coherent_x(8000);
        assert!(!criterion_closed_form(1, &m).unwrap().violated);
        let sm = criterion_sorensen_molmer(1, &m).unwrap();
        assert!((sm.bound - 2000.0).abs() < 1e-9);
        assert!(!sm.violated);
    }

    #[test]
    fn sorensen_molmer_blind_to_dicke() {
        let m = CollectiveMoments::dicke(8000);
        for k in [1, 2, 28, 1000] {
            let out = criterion_sorensen_molmer(k, &m).unwrap();
            assert_eq!(out.bound, 0.0);
            assert!(!out.violated);
        }
    }

    #[test]
    fn negative_radicand_gives_zero() {
        let m = CollectiveMoments::unpolarized(100, 0.01, 0.0);
        let out = criterion_closed_form(4, &m).unwrap();
        assert_eq!(out.bound, 0.0);
        assert!(!out.violated);
    }

    #[test]
    fn equality_is_not_a_violation() {
        assert!(!CriterionOutcome::compare(5.0, 5.0).violated);
        assert!(!CriterionOutcome::compare(5.0 * (1.0 - 1e-12), 5.0).violated);
        assert!(CriterionOutcome::compare(4.9, 5.0).violated);
        assert!(CriterionOutcome::compare(0.0, 1e-12).violated);
    }

    #[test]
    fn k_out_of_range() {
        let m = CollectiveMoments::dicke(10);
        assert!(criterion_closed_form(0, &m).is_err());
        assert!(criterion_closed_form(11, &m).is_err());
    }
}
