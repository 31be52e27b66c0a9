//! No k-producible state may be flagged at its own k.

use depthcert_core::producibility::{criterion_closed_form, criterion_sorensen_molmer, Criterion};
use depthcert_core::simulation::{noisy_squeezed_moments, random_producible_moments, random_producible_state, ProducibleMode};
use depthcert_core::{depth_bound, tangent_criterion, CollectiveMoments};
use proptest::prelude::*;

const MODES: [ProducibleMode; 2] = [ProducibleMode::HaarSymmetric, ProducibleMode::SqueezedRotated];

#[test]
fn random_producible_states_are_never_flagged() {
    for (n, k) in [(40u32, 4u32), (8000, 28), (8000, 32), (120, 7)] {
        for mode in MODES {
            for (i, m) in random_producible_moments(n, k, 300, mode, 17).unwrap().iter().enumerate() {
                let cf = criterion_closed_form(k, m).unwrap();
                let sm = criterion_sorensen_molmer(k, m).unwrap();
                assert!(!cf.violated, "closed form: N={n} k={k} {mode:?} #{i}: {m:?} bound {}", cf.bound);
                assert!(!sm.violated, "Sørensen–Mølmer: N={n} k={k} {mode:?} #{i}: {m:?}");
            }
        }
    }
}

#[test]
fn random_producible_states_stay_above_tangents() {
    for (n, k) in [(40u32, 4u32), (400, 8)] {
        for m in random_producible_moments(n, k, 200, ProducibleMode::SqueezedRotated, 3).unwrap() {
            if m.x_norm() <= (k + 2) as f64 / n as f64 {
                continue;
            }
            let Ok(t) = tangent_criterion(n, k, m.x_norm()) else { continue };
            assert!(m.var_z() >= t.var_bound(m.x_norm()) * (1.0 - 1e-9) - 1e-9, "N={n} k={k}: {m:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn depth_never_exceeds_group_size(
        n in 2u32..200,
        k_frac in 0.0f64..1.0,
        seed in any::<u64>(),
        squeezed in any::<bool>(),
    ) {
        let k = 1 + ((n - 1) as f64 * k_frac) as u32;
        let mode = if squeezed { ProducibleMode::SqueezedRotated } else { ProducibleMode::HaarSymmetric };
        let m = random_producible_state(n, k, mode, seed, 0).unwrap();
        let v = depth_bound(&m, Criterion::ClosedForm).unwrap();
        prop_assert!(v.violated_k < k, "N={n} k={k}: {v:?}");
    }
}

#[test]
fn violation_is_nested_in_k() {
    for (big_lambda, p) in [(0.0, 0.0), (0.01, 0.05), (0.3, 0.05), (3.0, 0.0), (30.0, 0.2)] {
        let m = noisy_squeezed_moments(400, big_lambda, p).unwrap();
        let mut seen_clear = false;
        for k in 1..=400 {
            let v = criterion_closed_form(k, &m).unwrap().violated;
            assert!(!(v && seen_clear), "Λ={big_lambda} p={p}: violated at k={k} after a clear k");
            seen_clear |= !v;
        }
    }
}

#[test]
fn paper_examples() {
    let dicke = CollectiveMoments::dicke(8000);
    assert!(criterion_closed_form(7999, &dicke).unwrap().violated);
    assert_eq!(depth_bound(&dicke, Criterion::ClosedForm).unwrap().depth_lower_bound, 8000);
    let coherent = CollectiveMoments::coherent_x(8000);
    for c in [Criterion::ClosedForm, Criterion::SorensenMolmer, Criterion::Tangent] {
        let v = depth_bound(&coherent, c).unwrap();
        assert_eq!((v.violated_k, v.depth_lower_bound), (0, 1), "{c:?}");
    }
    let measured = CollectiveMoments::unpolarized(8000, 1.0005, 180.0);
    for c in [Criterion::ClosedForm, Criterion::Tangent] {
        assert!(depth_bound(&measured, c).unwrap().depth_lower_bound >= 29, "{c:?}");
    }
}

#[test]
fn spin_squeezing_criterion_sees_pure_squeezed_states_as_fully_entangled() {
    let m = noisy_squeezed_moments(4000, 1e-3, 0.0).unwrap();
    let v = depth_bound(&m, Criterion::SorensenMolmer).unwrap();
    assert!(v.violated_k as f64 >= 0.9 * 4000.0, "{v:?}");
}
