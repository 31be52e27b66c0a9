//! Full `2^N`-dimensional check of the product-state moment aggregation.

use depthcert_core::{aggregate_product, CollectiveMoments, GroupMoments};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Collective moments of an `n`-qubit pure state; bit `q` of the index set
/// means qubit `q` is down.
fn direct_moments(psi: &[Complex64], n: u32) -> CollectiveMoments {
    let dim = psi.len();
    let mut jx_psi = vec![Complex64::new(0.0, 0.0); dim];
    let mut jy_psi = vec![Complex64::new(0.0, 0.0); dim];
    let (mut jz, mut jz2) = (0.0, 0.0);
    for (idx, amp) in psi.iter().enumerate() {
        let down = idx.count_ones() as f64;
        let m = n as f64 / 2.0 - down;
        let p = amp.norm_sqr();
        jz += m * p;
        jz2 += m * m * p;
        for q in 0..n {
            let flipped = idx ^ (1 << q);
            jx_psi[flipped] += amp * 0.5;
            // σy/2: |↑⟩ → (i/2)|↓⟩, |↓⟩ → (−i/2)|↑⟩
            let phase = if idx & (1 << q) == 0 { Complex64::new(0.0, 0.5) } else { Complex64::new(0.0, -0.5) };
            jy_psi[flipped] += amp * phase;
        }
    }
    let dot = |a: &[Complex64]| psi.iter().zip(a).map(|(p, x)| p.conj() * x).sum::<Complex64>().re;
    let norm = |a: &[Complex64]| a.iter().map(|x| x.norm_sqr()).sum::<f64>();
    CollectiveMoments {
        n_particles: n,
        mean_x: dot(&jx_psi),
        mean_y: dot(&jy_psi),
        mean_z: jz,
        second_perp: norm(&jx_psi) + norm(&jy_psi),
        second_z: jz2,
    }
}

fn random_state(qubits: u32, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..1usize << qubits)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// Tensor product with `a` on the low bits.
fn kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for y in b {
        for x in a {
            out.push(x * y);
        }
    }
    out
}

fn close(a: &CollectiveMoments, b: &CollectiveMoments) -> bool {
    let d = [
        a.mean_x - b.mean_x,
        a.mean_y - b.mean_y,
        a.mean_z - b.mean_z,
        a.second_perp - b.second_perp,
        a.second_z - b.second_z,
    ];
    a.n_particles == b.n_particles && d.iter().all(|x| x.abs() < 1e-10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn aggregation_matches_full_hilbert_space(
        sizes in prop::collection::vec(1u32..=4, 1..=4).prop_filter("N ≤ 8", |s| s.iter().sum::<u32>() <= 8),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut full = vec![Complex64::new(1.0, 0.0)];
        let mut groups = Vec::new();
        for &k in &sizes {
            let g = random_state(k, &mut rng);
            let gm = direct_moments(&g, k);
            groups.push(GroupMoments::from(gm));
            full = kron(&full, &g);
        }
        let n: u32 = sizes.iter().sum();
        let direct = direct_moments(&full, n);
        let agg = aggregate_product(&groups).unwrap();
        prop_assert!(close(&direct, &agg), "{direct:?} vs {agg:?}");
    }
}

#[test]
fn single_qubit_reference_values() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus_x = [Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
    let m = direct_moments(&plus_x, 1);
    assert!((m.mean_x - 0.5).abs() < 1e-15);
    assert!((m.second_perp - 0.5).abs() < 1e-15);
    assert!((m.second_z - 0.25).abs() < 1e-15);
    let plus_y = [Complex64::new(s, 0.0), Complex64::new(0.0, s)];
    assert!((direct_moments(&plus_y, 1).mean_y - 0.5).abs() < 1e-15);
}
