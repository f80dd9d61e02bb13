mod common;

use frechet_core::bench::naive_dp_decide;
use frechet_core::complete::{complete_decide, depth_bound, ExploreOptions, RuleSet};
use frechet_core::{decide_with, DecideConfig, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn complete_decider_matches_naive_dp() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut close = 0;
    for case in 0..3000 {
        let (a, b, delta) = common::instance(&mut rng, 30);
        let expected = naive_dp_decide(&a, &b, delta);
        let (got, log) = complete_decide(&a, &b, delta, &ExploreOptions::default());
        assert_eq!(got, expected, "case {case}: n={} m={} delta={delta}", a.len(), b.len());
        assert!(log.max_depth <= depth_bound(a.len(), b.len()), "case {case}");
        close += (got == Verdict::Close) as usize;
    }
    assert!(close > 300 && close < 2700, "unbalanced suite: {close} close");
}

#[test]
fn certificates_round_trip_without_filters() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let config = DecideConfig {
        use_filters: false,
        certify: true,
        ..Default::default()
    };
    let mut fallbacks = 0;
    for case in 0..3000 {
        let (a, b, delta) = common::instance(&mut rng, 30);
        let d = decide_with(&a, &b, delta, &config);
        let cert = d.certificate.as_ref().unwrap_or_else(|| panic!("case {case}: no certificate"));
        if let Err(e) = cert.check(&a, &b, delta) {
            panic!("case {case} ({:?}, stage {}): {e}\n{:?}", d.verdict, d.stage, cert.points);
        }
        fallbacks += d.stats.no_cert_fallback as usize;
    }
    assert_eq!(fallbacks, 0);
}

#[test]
fn ablations_keep_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sets: Vec<RuleSet> = ["2", "3a", "3b", "3c", "4"]
        .iter()
        .map(|r| RuleSet::ALL.without(r).unwrap())
        .chain([RuleSet::NONE])
        .collect();
    for case in 0..600 {
        let (a, b, delta) = common::instance(&mut rng, 30);
        let (base, _) = complete_decide(&a, &b, delta, &ExploreOptions::default());
        for rules in &sets {
            let opts = ExploreOptions { rules: *rules, certify: true, ..Default::default() };
            let (v, _) = complete_decide(&a, &b, delta, &opts);
            assert_eq!(v, base, "case {case} rules {}", rules.label());
        }
    }
}
