//! Squeezing figures of merit. Undefined values (vanishing denominators)
//! come back as `None` so sweeps over Dicke-like states never abort.

use num_traits::Float;

use crate::spin_algebra::CollectiveMoments;

/// `ξ² = N (ΔJz)² / (⟨Jx⟩² + ⟨Jy⟩²)`.
pub fn xi_squared(m: &CollectiveMoments) -> Option<f64> {
    let pol = m.polarization_sq();
    (pol > 0.0).then(|| m.n_particles as f64 * m.var_z() / pol)
}

/// `ξ²_gen = (N − 1)(ΔJz)² / (⟨Jx²+Jy²⟩ − N/2)`.
pub fn xi_gen(m: &CollectiveMoments) -> Option<f64> {
    let n = m.n_particles as f64;
    let denom = m.second_perp - n / 2.0;
    (denom > 0.0).then(|| (n - 1.0) * m.var_z() / denom)
}

/// `10 log10((ΔJz)² / (N/4))`; `-∞` for zero variance.
pub fn number_squeezing_db(m: &CollectiveMoments) -> f64 {
    let ratio = m.var_z().max(0.0) / (m.n_particles as f64 / 4.0);
    if ratio == 0.0 {
        f64::NEG_INFINITY
    } else {
        10.0 * ratio.log10()
    }
}

fn db(v: Option<f64>) -> Option<f64> {
    v.map(|x| if x > 0.0 { 10.0 * x.log10() } else { f64::NEG_INFINITY })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SqueezingReport {
    pub xi2: Option<f64>,
    pub xi2_gen: Option<f64>,
    pub xi2_db: Option<f64>,
    pub xi2_gen_db: Option<f64>,
    pub number_squeezing_db: f64,
}

pub fn squeezing_report(m: &CollectiveMoments) -> SqueezingReport {
    let xi2 = xi_squared(m);
    let xi2_gen = xi_gen(m);
    SqueezingReport {
        xi2,
        xi2_gen,
        xi2_db: db(xi2),
        xi2_gen_db: db(xi2_gen),
        number_squeezing_db: number_squeezing_db(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_reference() {
        for n in [2, 10, 8000] {
            let m = CollectiveMoments::coherent_x(n);
            assert_eq!(xi_gen(&m), Some(1.0));
            assert_eq!(xi_squared(&m), Some(1.0));
            assert_eq!(number_squeezing_db(&m), 0.0);
        }
    }

    #[test]
    fn dicke_limits() {
        let m = CollectiveMoments::dicke(8000);
        assert_eq!(xi_squared(&m), None);
        assert_eq!(xi_gen(&m), Some(0.0));
        assert_eq!(number_squeezing_db(&m), f64::NEG_INFINITY);
        let r = squeezing_report(&m);
        assert_eq!(r.xi2_db, None);
        assert_eq!(r.xi2_gen_db, Some(f64::NEG_INFINITY));
    }

    #[test]
    fn paper_number_squeezing() {
        let m = CollectiveMoments::unpolarized(8000, 1.0, 115.1);
        assert!((number_squeezing_db(&m) + 12.4).abs() < 0.01);
    }
}
