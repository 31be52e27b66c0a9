use alloc::vec::Vec;
use num_traits::Float;

use super::SpinSector;
use crate::{Error, Result};

const RESCALE_ABOVE: f64 = 1e150;

/// `P(m) = |⟨j,m| R_y(β) |j,0⟩|²`, indexed like state vectors
/// (`m = j, j−1, …, −j`).
///
/// The rotated state is the null vector of `cos β·jz − sin β·jx`, which
/// gives a three-term recurrence in `m`. It is run downward from `m = j`,
/// where the column is exponentially small, to `m = 0`; the other half
/// follows from `|d_{−m,0}| = |d_{m,0}|`.
pub fn rotated_dicke_distribution(sector: SpinSector, beta: f64) -> Result<Vec<f64>> {
    if !sector.is_integer() {
        return Err(Error::HalfIntegerSpin {
            twice_j: sector.twice_j(),
        });
    }
    if !beta.is_finite() {
        return Err(Error::InvalidArgument("rotation angle must be finite".into()));
    }
    let dim = sector.dim();
    let jj = sector.twice_j() as usize / 2;
    let mut probs = alloc::vec![0.0; dim];
    let (sb, cb) = (beta.sin(), beta.cos());
    if jj == 0 || sb.abs() < 1e-300 {
        probs[jj] = 1.0;
        return Ok(probs);
    }

    // psi[t] holds the amplitude of m = j − t for t = 0..=j
    let mut psi: Vec<f64> = Vec::with_capacity(jj + 1);
    psi.push(1.0);
    let mut m = sector.j();
    while psi.len() <= jj {
        let t = psi.len() - 1;
        let here = psi[t];
        let above = if t > 0 { psi[t - 1] } else { 0.0 };
        // m cosβ ψ_m = ½ sinβ (a_{m−1} ψ_{m−1} + a_m ψ_{m+1})
        let next = (2.0 * m * cb * here - sb * sector.raising(m) * above)
            / (sb * sector.raising(m - 1.0));
        psi.push(next);
        if next.abs() > RESCALE_ABOVE {
            let s = 1.0 / next.abs();
            psi.iter_mut().for_each(|v| *v *= s);
        }
        m -= 1.0;
    }
    for (t, v) in psi.iter().enumerate() {
        let p = v * v;
        probs[t] = p;
        probs[dim - 1 - t] = p;
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    Ok(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    #[test]
    fn spin_one_quarter_turn() {
        let p = rotated_dicke_distribution(SpinSector::from_twice_j(2), FRAC_PI_2).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15);
        assert!(p[1].abs() < 1e-15);
        assert!((p[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_rotation() {
        for twice_j in [0, 2, 10, 800] {
            let sector = SpinSector::from_twice_j(twice_j);
            let p = rotated_dicke_distribution(sector, 0.0).unwrap();
            assert_eq!(p[sector.dim() / 2], 1.0);
            assert_eq!(p.iter().sum::<f64>(), 1.0);
        }
    }

    #[test]
    fn half_integer_rejected() {
        assert!(matches!(
            rotated_dicke_distribution(SpinSector::from_twice_j(3), 1.0),
            Err(Error::HalfIntegerSpin { twice_j: 3 })
        ));
    }

    #[test]
    fn spin_one_general_angle() {
        // d¹_{±1,0}(β) = ∓ sinβ/√2, d¹_{00} = cosβ
        let beta: f64 = 0.7;
        let p = rotated_dicke_distribution(SpinSector::from_twice_j(2), beta).unwrap();
        let s2 = beta.sin().powi(2) / 2.0;
        assert!((p[0] - s2).abs() < 1e-14);
        assert!((p[1] - beta.cos().powi(2)).abs() < 1e-14);
        assert!((p[2] - s2).abs() < 1e-14);
    }

    #[test]
    fn large_spin_second_moment() {
        let sector = SpinSector::from_twice_j(4000);
        let p = rotated_dicke_distribution(sector, FRAC_PI_2).unwrap();
        let total: f64 = p.iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
        let m2: f64 = p.iter().enumerate().map(|(i, q)| sector.m(i).powi(2) * q).sum();
        let expect = sector.casimir() / 2.0;
        assert!(((m2 - expect) / expect).abs() < 1e-6, "{m2} vs {expect}");
    }
}
