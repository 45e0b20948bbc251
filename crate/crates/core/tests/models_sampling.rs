// SPDX-License-Identifier: Apache-2.0

use transclust::models::{
    estimate_p_delta, expected_degree, limiting_transitivity, sample_dc_local_sbm,
    sample_four_param, sample_local_sbm, BackgroundSpec, DegreeCorrectedLocalSbm, FourParamSbm,
    LocalSbm,
};
use transclust::{Error, UndirectedGraph};

/// Asserts `hits / trials` is within four binomial standard errors of `p`.
fn assert_frequency(label: &str, hits: u64, trials: u64, p: f64) {
    assert!(trials >= 10_000, "{label}: only {trials} draws");
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    let freq = hits as f64 / trials as f64;
    assert!(
        (freq - p).abs() <= 4.0 * se,
        "{label}: frequency {freq} vs {p} (se {se})"
    );
}

fn local(n: usize, s: usize, p_in: f64, p_out: f64, lambda: f64) -> LocalSbm {
    LocalSbm {
        n,
        s,
        p_in,
        p_out,
        background: BackgroundSpec::ErdosRenyi {
            mean_degree: lambda,
        },
    }
}

#[test]
fn local_sbm_pair_class_frequencies() {
    let m = local(300, 30, 0.3, 0.05, 6.0);
    let (mut inside, mut cross, mut background) = (0u64, 0u64, 0u64);
    let samples = 30u64;
    for seed in 0..samples {
        let r = sample_local_sbm(&m, seed).unwrap();
        assert_eq!(r.planted, (300..330).collect::<Vec<_>>());
        for &(u, v) in r.graph.edges() {
            match (r.is_planted(u), r.is_planted(v)) {
                (true, true) => inside += 1,
                (false, false) => background += 1,
                _ => cross += 1,
            }
        }
    }
    assert_frequency("in-block", inside, samples * 435, 0.3);
    assert_frequency("cross", cross, samples * 30 * 300, 0.05);
    assert_frequency(
        "background",
        background,
        samples * 300 * 299 / 2,
        6.0 / 299.0,
    );
}

#[test]
fn four_param_pair_class_frequencies() {
    let m = FourParamSbm::new(20, 10, 0.4, 0.01).unwrap();
    let samples = 40u64;
    let (mut within, mut across) = (0u64, 0u64);
    for seed in 0..samples {
        let r = sample_four_param(&m, seed).unwrap();
        for &(u, v) in r.graph.edges() {
            if u / 10 == v / 10 {
                within += 1;
            } else {
                across += 1;
            }
        }
    }
    assert_frequency("within", within, samples * 20 * 45, 0.4);
    assert_frequency("across", across, samples * (200 * 199 / 2 - 20 * 45), 0.01);
}

#[test]
fn dc_cross_frequency_follows_background_degree() {
    let m = DegreeCorrectedLocalSbm {
        n: 400,
        s: 25,
        p_in: 0.5,
        background: BackgroundSpec::ErdosRenyi { mean_degree: 20.0 },
    };
    let (mut hits, mut expected, mut variance, mut draws) = (0u64, 0.0, 0.0, 0u64);
    for seed in 0..10 {
        let r = sample_dc_local_sbm(&m, seed).unwrap();
        let bg = r
            .graph
            .induced_subgraph(&(0..400).collect::<Vec<_>>())
            .unwrap();
        for j in 0..400 {
            let q = (bg.degree(j).unwrap() as f64 / 400.0).min(1.0);
            let c = r.graph.neighbors(j).iter().filter(|&&k| k >= 400).count();
            hits += c as u64;
            expected += 25.0 * q;
            variance += 25.0 * q * (1.0 - q);
            draws += 25;
        }
    }
    assert!(draws >= 10_000);
    assert!(
        (hits as f64 - expected).abs() <= 4.0 * variance.sqrt(),
        "{hits} cross edges vs {expected}"
    );
}

#[test]
fn dc_cross_degree_concentrates_at_lambda() {
    let m = DegreeCorrectedLocalSbm {
        n: 5000,
        s: 20,
        p_in: 0.8,
        background: BackgroundSpec::ErdosRenyi { mean_degree: 6.0 },
    };
    let mut total = 0.0;
    for seed in 0..50 {
        let r = sample_dc_local_sbm(&m, seed).unwrap();
        let cross: usize = r
            .planted
            .iter()
            .map(|&i| r.graph.neighbors(i).iter().filter(|&&j| j < 5000).count())
            .sum();
        total += cross as f64 / 20.0;
        assert!((r.realized_lambda() - 6.0).abs() < 0.5);
    }
    let mean = total / 50.0;
    assert!((mean - 6.0).abs() <= 0.5, "mean cross degree {mean}");
}

#[test]
fn local_realized_lambda_concentrates() {
    let m = local(2000, 20, 0.8, 1.0 / 2000.0, 4.0);
    let mean: f64 = (0..50)
        .map(|seed| sample_local_sbm(&m, seed).unwrap().realized_lambda())
        .sum::<f64>()
        / 50.0;
    // Per-sample SE is about sqrt(2·4/2000); 50 samples shrink it further.
    assert!((mean - 4.0).abs() < 0.05, "mean realized lambda {mean}");
}

#[test]
fn four_param_mean_degree() {
    let m = FourParamSbm::new(100, 10, 0.6, 0.002).unwrap();
    assert!((expected_degree(&m) - 7.98).abs() < 1e-12);
    // Without self-loops the realized mean is (s−1)p + (n−s)r.
    let realized: f64 = (0..20)
        .map(|seed| sample_four_param(&m, seed).unwrap().graph.mean_degree())
        .sum::<f64>()
        / 20.0;
    assert!((realized - 7.38).abs() < 0.1, "realized {realized}");
    assert!((realized - 7.98).abs() < 0.7);
}

#[test]
fn samplers_are_reproducible_across_pools() {
    let models: Vec<Box<dyn Fn(u64) -> UndirectedGraph + Sync>> = vec![
        Box::new(|seed| {
            sample_four_param(&FourParamSbm::new(8, 6, 0.5, 0.05).unwrap(), seed)
                .unwrap()
                .graph
        }),
        Box::new(|seed| {
            sample_local_sbm(&local(200, 10, 0.6, 0.01, 5.0), seed)
                .unwrap()
                .graph
        }),
        Box::new(|seed| {
            let m = DegreeCorrectedLocalSbm {
                n: 200,
                s: 10,
                p_in: 0.6,
                background: BackgroundSpec::ErdosRenyi { mean_degree: 5.0 },
            };
            sample_dc_local_sbm(&m, seed).unwrap().graph
        }),
    ];
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    for sample in &models {
        for seed in [0, 1, 99] {
            let a = one.install(|| sample(seed));
            let b = four.install(|| sample(seed));
            assert_eq!(a, b);
            assert_eq!(a, sample(seed));
        }
        assert_ne!(sample(1), sample(2));
    }
}

#[test]
fn degenerate_models() {
    // A single background node has no degree, so no cross edges.
    let m = DegreeCorrectedLocalSbm {
        n: 1,
        s: 3,
        p_in: 1.0,
        background: BackgroundSpec::ErdosRenyi { mean_degree: 0.0 },
    };
    let r = sample_dc_local_sbm(&m, 5).unwrap();
    assert_eq!(r.graph.m(), 3);
    assert_eq!(r.graph.degree(0).unwrap(), 0);

    let clique = sample_local_sbm(&local(50, 6, 1.0, 0.0, 3.0), 3).unwrap();
    for &i in &clique.planted {
        let inside = clique
            .graph
            .neighbors(i)
            .iter()
            .filter(|&&j| clique.is_planted(j))
            .count();
        assert_eq!(inside, 5);
        assert_eq!(clique.graph.degree(i).unwrap(), 5);
    }

    let fixed = UndirectedGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    let m = LocalSbm {
        n: 4,
        s: 2,
        p_in: 1.0,
        p_out: 0.0,
        background: BackgroundSpec::Fixed(fixed),
    };
    let r = sample_local_sbm(&m, 0).unwrap();
    assert_eq!(r.graph.edges(), &[(0, 1), (2, 3), (4, 5)]);
    assert_eq!(r.realized_lambda(), 1.0);
}

#[test]
fn limiting_transitivity_values() {
    assert!((limiting_transitivity(1.0, 3, 0.0).unwrap() - 1.0).abs() < 1e-15);
    assert!((limiting_transitivity(0.6, 10, 2.0).unwrap() - 0.3375).abs() < 1e-12);
    assert!((limiting_transitivity(0.5, 10, 0.0).unwrap() - 0.5).abs() < 1e-12);
}

/// `P(A_uv = 1 | A_iu = A_iv = 1)` by visiting every ordered pair `(u, v)`
/// around a fixed centre node and weighting by the pair's two-star
/// probability.
fn brute_force_p_delta(blocks: usize, s: usize, p: f64, r: f64) -> f64 {
    let n = blocks * s;
    let prob = |a: usize, b: usize| if a / s == b / s { p } else { r };
    let i = 0;
    let (mut closed, mut open) = (0.0, 0.0);
    for u in 1..n {
        for v in 1..n {
            if u == v {
                continue;
            }
            let wedge = prob(i, u) * prob(i, v);
            open += wedge;
            closed += wedge * prob(u, v);
        }
    }
    closed / open
}

#[test]
fn p_delta_matches_brute_force_mixture() {
    let m = FourParamSbm::new(50, 10, 0.6, 0.002).unwrap();
    let est = estimate_p_delta(&m, 200, 42).unwrap();
    let oracle = brute_force_p_delta(50, 10, 0.6, 0.002);
    assert!(
        (est.estimate - oracle).abs() <= 3.0 * est.std_error,
        "estimate {} ± {} vs oracle {oracle}",
        est.estimate,
        est.std_error
    );
    assert_eq!(est.trials, 200);
    assert!(est.closed_two_stars <= est.two_stars);
}

#[test]
fn p_delta_edge_cases() {
    let dense = FourParamSbm::new(1, 5, 1.0, 0.0).unwrap();
    let est = estimate_p_delta(&dense, 3, 1).unwrap();
    assert_eq!(est.estimate, 1.0);

    let pairs = FourParamSbm::new(2, 1, 1.0, 1.0).unwrap();
    assert!(matches!(
        estimate_p_delta(&pairs, 5, 1),
        Err(Error::NoTwoStars)
    ));
}
