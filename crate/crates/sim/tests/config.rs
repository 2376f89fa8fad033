use proptest::prelude::*;

use proptime_sim::{Scenario, ScenarioConfig};

fn scenario() -> impl Strategy<Value = Scenario> {
    prop::sample::select(Scenario::ALL.to_vec())
}

#[test]
fn reference_configs_parse() {
    for s in Scenario::ALL {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{}.toml", s.name()));
        let text = std::fs::read_to_string(path).unwrap();
        let cfg = ScenarioConfig::parse(s, &text, &[]).unwrap();
        assert_eq!(cfg.scenario, s);
    }
}

#[test]
fn mismatched_scenario_rejected() {
    let text = ScenarioConfig::defaults(Scenario::Kg).to_toml();
    assert!(ScenarioConfig::parse(Scenario::Hj, &text, &[]).is_err());
}

proptest! {
    #[test]
    fn printed_config_parses_to_itself(
        s in scenario(),
        tau in 0.1f64..10.0,
        steps in 1usize..5000,
        dw0 in 1e-4f64..0.5,
        seed in any::<u32>(),
    ) {
        let mut cfg = ScenarioConfig::defaults(s);
        cfg.physics.tau = tau;
        cfg.run.steps = steps;
        cfg.run.dw0 = dw0;
        cfg.initial.seed = seed;
        let back = ScenarioConfig::parse(s, &cfg.to_toml(), &[]).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn overrides_win_over_the_file(s in scenario(), tau in 0.1f64..10.0) {
        let text = ScenarioConfig::defaults(s).to_toml();
        let cfg = ScenarioConfig::parse(s, &text, &[format!("physics.tau={tau:?}")]).unwrap();
        prop_assert_eq!(cfg.physics.tau, tau);
    }

    #[test]
    fn nonpositive_tau_rejected(s in scenario(), tau in -10.0f64..=0.0) {
        let text = ScenarioConfig::defaults(s).to_toml();
        let parsed = ScenarioConfig::parse(s, &text, &[format!("physics.tau={tau:?}")]);
        prop_assert!(parsed.is_err());
    }
}
