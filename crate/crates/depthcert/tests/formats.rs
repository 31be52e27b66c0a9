use depthcert::report::Squeezing;
use depthcert::shots::{read_shots, shots_to_csv};
use depthcert::{AnalysisConfig, ParticleNumber};
use depthcert_core::simulation::{Basis, ShotRecord};
use depthcert_core::Criterion;
use proptest::prelude::*;

fn shot() -> impl Strategy<Value = ShotRecord> {
    (any::<u64>(), any::<bool>(), any::<u32>(), any::<u32>()).prop_map(|(shot_id, z, n_plus, n_minus)| ShotRecord {
        shot_id,
        basis: if z { Basis::Z } else { Basis::Alpha },
        n_plus,
        n_minus,
    })
}

fn db_value() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(f64::NEG_INFINITY),
        Just(f64::INFINITY),
    ]
}

proptest! {
    #[test]
    fn shot_csv_round_trip(records in prop::collection::vec(shot(), 1..40)) {
        let bytes = shots_to_csv(&records);
        prop_assert_eq!(read_shots(bytes.as_slice()).unwrap(), records);
    }

    #[test]
    fn squeezing_json_round_trip(
        a in prop::option::of(db_value()),
        b in prop::option::of(db_value()),
        c in db_value(),
    ) {
        let s = Squeezing { xi2: a, xi2_gen: b, xi2_db: b, xi2_gen_db: a, number_squeezing_db: c };
        let text = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<Squeezing>(&text).unwrap(), s);
    }

    #[test]
    fn config_json_and_toml_agree(
        n in 1u32..100_000,
        sigma in 0.0f64..100.0,
        n_sigma in 0.1f64..5.0,
        seed in any::<u64>(),
        per_shot in any::<bool>(),
    ) {
        let mut c = AnalysisConfig::new(if per_shot { ParticleNumber::PerShot } else { ParticleNumber::Fixed(n) });
        c.sigma_det = sigma;
        c.n_sigma = n_sigma;
        c.seed = seed;
        c.criterion = Criterion::Tangent;
        let json: AnalysisConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(&json, &c);
        // TOML integers are i64
        if seed <= i64::MAX as u64 {
            let t: AnalysisConfig = toml::from_str(&toml::to_string(&c).unwrap()).unwrap();
            prop_assert_eq!(&t, &c);
            prop_assert_eq!(t.hash(), c.hash());
        }
    }
}

#[test]
fn garbage_rows_never_panic() {
    let inputs = [
        "",
        "shot_id,basis,n_plus,n_minus\n,,,\n",
        "shot_id,basis,n_plus,n_minus\n1,z,4294967296,0\n",
        "shot_id,basis,n_plus,n_minus\n\"1\",\"z\",\"3\",\"4\"\n",
        "shot_id,basis,n_plus,n_minus,extra\n1,z,1,1,1\n",
    ];
    let results: Vec<_> = inputs.iter().map(|s| read_shots(s.as_bytes())).collect();
    assert!(results[0].is_err());
    assert!(results[1].is_err());
    assert!(results[2].is_err());
    assert_eq!(results[3].as_ref().unwrap()[0].n_minus, 4);
    assert!(results[4].is_err());
}
