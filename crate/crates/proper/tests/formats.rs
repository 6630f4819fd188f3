use proper::io::{map_to_json, parse_map};
use proper::{gen_random, model_to_json, parse_model, GenConfig};
use proper_core::{check_property, properize_finite, FrameProperty};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn arb_config() -> impl Strategy<Value = GenConfig> {
    (1usize..=6, 1usize..=4, 0.0f64..=1.0, 0usize..=3, subsequence(FrameProperty::ALL.to_vec(), 0..=3), any::<u64>())
        .prop_map(|(states, agents, density, props, close, seed)| GenConfig {
            states,
            agents,
            density,
            props,
            close,
            seed,
        })
}

proptest! {
    #[test]
    fn generated_models_round_trip(cfg in arb_config()) {
        let m = gen_random(&cfg).unwrap();
        let text = model_to_json(&m);
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(model_to_json(&back), text);
    }

    #[test]
    fn closure_flags_are_honoured(cfg in arb_config()) {
        let m = gen_random(&cfg).unwrap();
        for a in 1..=cfg.agents {
            for &p in &cfg.close {
                prop_assert_eq!(check_property(&m, a, p).unwrap(), None, "agent {} {}", a, p);
            }
        }
    }

    #[test]
    fn projection_maps_round_trip(cfg in arb_config()) {
        prop_assume!(cfg.agents >= 2);
        let m = gen_random(&cfg).unwrap();
        let (p, pi) = properize_finite(&m, 1).unwrap();
        let text = map_to_json(&pi, p.model(), &m);
        prop_assert_eq!(parse_map(&text, p.model(), &m).unwrap(), pi);
        let properized = parse_model(&model_to_json(p.model())).unwrap();
        prop_assert_eq!(&properized, p.model());
    }
}
