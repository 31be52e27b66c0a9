use alloc::vec::Vec;
use num_traits::Float;

use super::SpinSector;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OperatorKind {
    X,
    Z,
    ZSquared,
}

/// Real symmetric tridiagonal operator in the `|j,m⟩` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    sector: SpinSector,
    diagonal: Vec<f64>,
    offdiagonal: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(sector: SpinSector, diagonal: Vec<f64>, offdiagonal: Vec<f64>) -> Result<Self> {
        if diagonal.len() != sector.dim() || offdiagonal.len() + 1 != sector.dim() {
            return Err(Error::InvalidArgument(alloc::format!(
                "tridiagonal shape ({}, {}) does not match dim {}",
                diagonal.len(),
                offdiagonal.len(),
                sector.dim()
            )));
        }
        Ok(Self {
            sector,
            diagonal,
            offdiagonal,
        })
    }

    pub fn sector(&self) -> SpinSector {
        self.sector
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn offdiagonal(&self) -> &[f64] {
        &self.offdiagonal
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.sector != other.sector {
            return Err(Error::InvalidArgument("operators from different sectors".into()));
        }
        let diagonal = self
            .diagonal
            .iter()
            .zip(&other.diagonal)
            .map(|(x, y)| a * x + b * y)
            .collect();
        let offdiagonal = self
            .offdiagonal
            .iter()
            .zip(&other.offdiagonal)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self {
            sector: self.sector,
            diagonal,
            offdiagonal,
        })
    }

    /// Row-major dense copy, mostly for tests and small sectors.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.sector.dim();
        let mut out = alloc::vec![alloc::vec![0.0; n]; n];
        for i in 0..n {
            out[i][i] = self.diagonal[i];
            if i + 1 < n {
                out[i][i + 1] = self.offdiagonal[i];
                out[i + 1][i] = self.offdiagonal[i];
            }
        }
        out
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.diagonal.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diagonal[i] * v[i];
                if i > 0 {
                    acc += self.offdiagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.offdiagonal[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Lowest eigenvalue and normalized eigenvector.
    pub fn lowest_eigenpair(&self) -> Result<(f64, Vec<f64>)> {
        lowest_eigenpair(&self.diagonal, &self.offdiagonal)
            .map(|e| (e.value, e.vector))
            .ok_or_else(|| Error::NonConvergence {
                twice_j: self.sector.twice_j(),
                lambda: f64::NAN,
                residual: f64::NAN,
            })
    }
}

pub fn build_operator(sector: SpinSector, kind: OperatorKind) -> TridiagonalOperator {
    let dim = sector.dim();
    let (diagonal, offdiagonal) = match kind {
        OperatorKind::Z => ((0..dim).map(|i| sector.m(i)).collect(), alloc::vec![0.0; dim - 1]),
        OperatorKind::ZSquared => (
            (0..dim).map(|i| sector.m(i) * sector.m(i)).collect(),
            alloc::vec![0.0; dim - 1],
        ),
        OperatorKind::X => (
            alloc::vec![0.0; dim],
            // ⟨m|jx|m−1⟩ = ½√(j(j+1) − m(m−1)), with m−1 = m(i+1)
            (0..dim - 1).map(|i| 0.5 * sector.raising(sector.m(i + 1))).collect(),
        ),
    };
    TridiagonalOperator {
        sector,
        diagonal,
        offdiagonal,
    }
}

pub(crate) struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Number of eigenvalues strictly below `x` (Sturm sequence).
fn count_below(diag: &[f64], off_sq: &[f64], x: f64, pivmin: f64) -> usize {
    let mut q = diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    let mut count = usize::from(q < 0.0);
    for i in 1..diag.len() {
        q = diag[i] - x - off_sq[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        count += usize::from(q < 0.0);
    }
    count
}

/// Solves `(T − σ) y = b` in place by Gaussian elimination without pivoting.
/// `σ` sits just below the lowest eigenvalue, so `T − σ` is positive
/// semi-definite and elimination is stable.
fn shifted_solve(diag: &[f64], off: &[f64], sigma: f64, b: &mut [f64], tiny: f64, piv: &mut [f64]) {
    let n = diag.len();
    piv[0] = diag[0] - sigma;
    if piv[0].abs() < tiny {
        piv[0] = tiny;
    }
    for i in 1..n {
        let l = off[i - 1] / piv[i - 1];
        piv[i] = diag[i] - sigma - l * off[i - 1];
        if piv[i].abs() < tiny {
            piv[i] = tiny;
        }
        b[i] -= l * b[i - 1];
    }
    b[n - 1] /= piv[n - 1];
    for i in (0..n - 1).rev() {
        b[i] = (b[i] - off[i] * b[i + 1]) / piv[i];
    }
}

/// Lowest eigenpair of a symmetric tridiagonal matrix: Sturm bisection to
/// isolate the eigenvalue, inverse iteration for the vector, Rayleigh
/// quotient for the final value. The eigenvector is normalized with a
/// non-negative component sum.
pub(crate) fn lowest_eigenpair(diag: &[f64], off: &[f64]) -> Option<Eigenpair> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return None;
    }
    if n == 1 {
        return Some(Eigenpair {
            value: diag[0],
            vector: alloc::vec![1.0],
        });
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut scale = 0.0f64;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
        scale = scale.max(diag[i].abs() + r);
    }
    if !scale.is_finite() {
        return None;
    }
    let scale = scale.max(f64::MIN_POSITIVE);
    let off_sq: Vec<f64> = off.iter().map(|e| e * e).collect();
    let pivmin = f64::MIN_POSITIVE * off_sq.iter().fold(1.0f64, |m, &e| m.max(e));

    // Coarse isolation; inverse iteration does the rest.
    let bisect_to = |lo: &mut f64, hi: &mut f64, rel: f64| {
        for _ in 0..200 {
            if *hi - *lo <= rel * scale {
                break;
            }
            let mid = 0.5 * (*lo + *hi);
            if count_below(diag, &off_sq, mid, pivmin) >= 1 {
                *hi = mid;
            } else {
                *lo = mid;
            }
        }
    };
    bisect_to(&mut lo, &mut hi, 1e-9);

    let tiny = f64::EPSILON * scale * 1e-3;
    let mut piv = alloc::vec![0.0; n];
    let mut attempt = 0;
    loop {
        let sigma = lo;
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.25 * ((i as f64) * 0.618_033_988_75).fract()).collect();
        let mut residual = f64::INFINITY;
        let mut value = sigma;
        for _ in 0..8 {
            shifted_solve(diag, off, sigma, &mut v, tiny, &mut piv);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm > 0.0) || !norm.is_finite() {
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
            // Rayleigh quotient and residual
            let mut rq = 0.0;
            let tv: Vec<f64> = (0..n)
                .map(|i| {
                    let mut acc = diag[i] * v[i];
                    if i > 0 {
                        acc += off[i - 1] * v[i - 1];
                    }
                    if i + 1 < n {
                        acc += off[i] * v[i + 1];
                    }
                    rq += acc * v[i];
                    acc
                })
                .collect();
            value = rq;
            residual = tv
                .iter()
                .zip(&v)
                .map(|(t, x)| (t - rq * x).abs())
                .fold(0.0, f64::max);
            if residual <= 64.0 * f64::EPSILON * scale * (n as f64).sqrt() {
                break;
            }
        }
        let converged = residual <= 1e-9 * scale;
        // The vector must belong to the lowest eigenvalue, not a neighbour.
        let below = count_below(diag, &off_sq, value - 1e-9 * scale, pivmin);
        if converged && below == 0 {
            if v.iter().sum::<f64>() < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            return Some(Eigenpair { value, vector: v });
        }
        attempt += 1;
        if attempt > 2 {
            return None;
        }
        bisect_to(&mut lo, &mut hi, 1e-15);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_x_offdiagonal() {
        let op = build_operator(SpinSector::from_twice_j(1), OperatorKind::X);
        assert_eq!(op.offdiagonal(), &[0.5]);
        assert_eq!(op.diagonal(), &[0.0, 0.0]);
    }

    #[test]
    fn spin_one_z_and_x() {
        let s = SpinSector::from_twice_j(2);
        assert_eq!(build_operator(s, OperatorKind::Z).diagonal(), &[1.0, 0.0, -1.0]);
        assert_eq!(build_operator(s, OperatorKind::ZSquared).diagonal(), &[1.0, 0.0, 1.0]);
        let x = build_operator(s, OperatorKind::X);
        let r = core::f64::consts::FRAC_1_SQRT_2;
        for e in x.offdiagonal() {
            assert!((e - r).abs() < 1e-15);
        }
    }

    #[test]
    fn lowest_of_known_matrix() {
        // [[2,-1,0],[-1,2,-1],[0,-1,2]] has eigenvalues 2 - √2, 2, 2 + √2
        let e = lowest_eigenpair(&[2.0, 2.0, 2.0], &[-1.0, -1.0]).unwrap();
        assert!((e.value - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        let expect = [0.5, core::f64::consts::FRAC_1_SQRT_2, 0.5];
        for (a, b) in e.vector.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn decoupled_blocks() {
        // zero coupling: lowest is the smallest diagonal entry
        let e = lowest_eigenpair(&[3.0, -1.0, 5.0, 0.5], &[0.0, 0.0, 0.0]).unwrap();
        assert!((e.value + 1.0).abs() < 1e-15);
        assert!((e.vector[1].abs() - 1.0).abs() < 1e-12);
    }
}
