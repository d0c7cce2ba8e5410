use bhbounds_core::{
    build_pm, certify, family_ratio, optimal_x, search, search_with, upper_bound, Executor,
    FamilyParams, SearchConfig, SupNormConfig,
};

/// Runs each index on its own scoped thread, spawned in reverse order.
struct ReversedThreads;

impl Executor for ReversedThreads {
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        let f = &f;
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..count)
                .rev()
                .map(|i| s.spawn(move || (i, f(i))))
                .collect();
            let mut out: Vec<(usize, T)> = handles.into_iter().map(|h| h.join().unwrap()).collect();
            out.sort_by_key(|(i, _)| *i);
            out.into_iter().map(|(_, v)| v).collect()
        })
    }
}

fn small(m: u32, n: usize, seed: u64) -> SearchConfig {
    let mut cfg = SearchConfig::new(m, n);
    cfg.restarts = 3;
    cfg.eval_budget = 40;
    cfg.rng_seed = seed;
    cfg.supnorm = SupNormConfig::default().with_grid(16);
    cfg
}

#[test]
fn seeded_search_never_drops_below_family() {
    for (m, n) in [(2, 2), (2, 3), (3, 3), (4, 4)] {
        let mut cfg = small(m, n, 11);
        if m == 4 {
            cfg.restarts = 2;
            cfg.eval_budget = 12;
        }
        let cert = search(&cfg).unwrap();
        let floor = family_ratio(m, optimal_x(m).unwrap()).unwrap();
        assert!(
            cert.estimate >= floor - 1e-6,
            "m = {m}, n = {n}: {}",
            cert.estimate
        );
    }
}

#[test]
fn certificates_are_sound() {
    for (m, n, seed) in [(2, 2, 1), (3, 2, 2), (3, 3, 3), (2, 3, 4)] {
        let mut cfg = small(m, n, seed);
        cfg.seed_with_family = seed % 2 == 0;
        let cert = search(&cfg).unwrap();
        assert!(cert.certified_lower <= cert.estimate);
        assert!(cert.certified_lower <= upper_bound(m).unwrap() + 1e-9);
        assert_eq!(
            cert.certified_lower,
            cert.coeff_norm / cert.supnorm.upper_bracket
        );
    }
}

#[test]
fn deterministic_for_fixed_seed_and_any_executor() {
    let cfg = small(3, 3, 42);
    let a = search(&cfg).unwrap();
    let b = search(&cfg).unwrap();
    let c = search_with(&cfg, &ReversedThreads).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);

    let mut random_only = small(3, 3, 42);
    random_only.seed_with_family = false;
    let x = search(&random_only).unwrap();
    random_only.rng_seed = 43;
    assert_ne!(search(&random_only).unwrap().polynomial, x.polynomial);
}

#[test]
fn more_restarts_never_hurt() {
    let mut previous = f64::NEG_INFINITY;
    for restarts in 1..=5 {
        let mut cfg = small(3, 2, 5);
        cfg.seed_with_family = false;
        cfg.restarts = restarts;
        let best = search(&cfg).unwrap().estimate;
        assert!(best >= previous);
        previous = best;
    }
}

#[test]
fn m3_default_search_reaches_family_floor() {
    let mut cfg = SearchConfig::new(3, 3);
    cfg.rng_seed = 42;
    cfg.restarts = 4;
    cfg.eval_budget = 100;
    let cert = search(&cfg).unwrap();
    assert!(cert.estimate >= 1.037_890_815_556_213_4 - 1e-6);
}

#[test]
fn certify_family_witness_beats_one() {
    let p = build_pm(2, &FamilyParams::optimal(2).unwrap()).unwrap();
    let cert = certify(&p, &SupNormConfig::default().with_grid(256)).unwrap();
    assert!(
        cert.certified_lower > 1.0 && cert.certified_lower <= 1.1067,
        "{}",
        cert.certified_lower
    );
    assert!((cert.estimate - 1.106_681_919_700_321_6).abs() < 1e-12);
    assert!(cert.search.is_none());
}
