use qsynd::noise::{observe_syndrome, sample_depolarizing, SyndromeObservation};
use qsynd::{BitVector, Sign};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

fn gaussian_tail(x: f64) -> f64 {
    1.0 - Normal::standard().cdf(x)
}

#[test]
fn depolarizing_marginals_within_three_standard_errors() {
    let p = 0.05;
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let e = sample_depolarizing(n, p, &mut rng);
    let expect_single = 2.0 * p / 3.0;
    let se_single = (expect_single * (1.0 - expect_single) / n as f64).sqrt();
    for part in [&e.e_x, &e.e_z] {
        let f = part.weight() as f64 / n as f64;
        assert!((f - expect_single).abs() < 3.0 * se_single, "{f} vs {expect_single}");
    }
    let both = (0..n).filter(|&j| e.e_x.get(j) && e.e_z.get(j)).count() as f64 / n as f64;
    let expect_y = p / 3.0;
    let se_y = (expect_y * (1.0 - expect_y) / n as f64).sqrt();
    assert!((both - expect_y).abs() < 3.0 * se_y);
}

#[test]
fn sign_flip_rate_is_gaussian_tail() {
    let sigma = 0.5;
    let m = 1_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    // half the checks unsatisfied, so both bipolar levels are exercised
    let s = BitVector::from_bools(&(0..m).map(|i| i % 2 == 1).collect::<Vec<_>>());
    let obs: SyndromeObservation<f64> = observe_syndrome(&s, sigma, 30.0, &mut rng);
    let flips = (0..m)
        .filter(|&i| obs.hard_sign[i] != Sign::from_bit(s.get(i)))
        .count() as f64;
    let q = gaussian_tail(1.0 / sigma);
    assert!((q - 0.02275).abs() < 1e-5);
    let se = (q * (1.0 - q) / m as f64).sqrt();
    assert!((flips / m as f64 - q).abs() < 3.0 * se);
}

#[test]
fn llr_consistency_and_saturation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let s = BitVector::from_bools(&(0..10_000).map(|i| i % 3 == 0).collect::<Vec<_>>());
    for sigma in [0.05, 0.3, 1.0] {
        let obs: SyndromeObservation<f64> = observe_syndrome(&s, sigma, 30.0, &mut rng);
        for i in 0..s.len() {
            assert!(obs.llr[i].abs() <= 30.0);
            assert_eq!(obs.hard_sign[i], Sign::of(obs.raw[i]));
            if obs.raw[i] != 0.0 {
                assert_eq!(Sign::of(obs.llr[i]), obs.hard_sign[i]);
            }
            let unclamped = 2.0 * obs.raw[i] / (sigma * sigma);
            if unclamped.abs() < 30.0 {
                assert_eq!(obs.llr[i], unclamped);
            }
        }
    }
    let noiseless: SyndromeObservation<f64> = observe_syndrome(&s, 0.0, 30.0, &mut rng);
    assert!((0..s.len()).all(|i| noiseless.hard_sign[i] == Sign::from_bit(s.get(i))));
}
