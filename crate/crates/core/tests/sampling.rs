use std::collections::HashMap;

use parkfn::forest::{phi, phi_inv};
use parkfn::pf::enumerate_pf;
use parkfn::sampler::{fold_samples, sample_uniform, valid_rotations, CircleTuple};
use parkfn::{Params, Sampler, SeededRng, SizeCap};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const SIGNIFICANCE: f64 = 1e-6;

fn chi_square_p_value(params: Params, samples: usize, seed: u64) -> f64 {
    let support: Vec<_> = enumerate_pf(params, SizeCap::DEFAULT).unwrap().collect();
    let tally = fold_samples(
        params,
        samples,
        seed,
        HashMap::new,
        |acc: &mut HashMap<Vec<u32>, u64>, p| *acc.entry(p.to_vec()).or_insert(0) += 1,
        |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        },
    );
    assert_eq!(tally.len(), support.len(), "every parking function must be hit");
    let expected = samples as f64 / support.len() as f64;
    let stat: f64 = support
        .iter()
        .map(|pf| {
            let o = tally.get(pf.prefs()).copied().unwrap_or(0) as f64;
            (o - expected).powi(2) / expected
        })
        .sum();
    let df = (support.len() - 1) as f64;
    1.0 - ChiSquared::new(df).unwrap().cdf(stat)
}

#[test]
fn uniform_on_classical_3_4() {
    let p = chi_square_p_value(Params::classical(3, 4).unwrap(), 1_000_000, 7);
    assert!(p > SIGNIFICANCE, "p-value {p}");
}

#[test]
fn uniform_on_ab_2_2_3() {
    let p = chi_square_p_value(Params::ab(2, 2, 3).unwrap(), 100_000, 8);
    assert!(p > SIGNIFICANCE, "p-value {p}");
}

#[test]
fn stream_matches_fold_and_is_reproducible() {
    let params = Params::classical(5, 9).unwrap();
    let count = 3000;
    let stream: Vec<Vec<u32>> = Sampler::new(params, 11).take(count).map(|p| p.prefs().to_vec()).collect();
    let again: Vec<Vec<u32>> = Sampler::new(params, 11).take(count).map(|p| p.prefs().to_vec()).collect();
    assert_eq!(stream, again);
    let mut folded = fold_samples(
        params,
        count,
        11,
        Vec::new,
        |acc: &mut Vec<Vec<u32>>, p| acc.push(p.to_vec()),
        |mut x, y| {
            x.extend(y);
            x
        },
    );
    let mut sorted = stream.clone();
    folded.sort();
    sorted.sort();
    assert_eq!(folded, sorted);
    assert_ne!(stream, Sampler::new(params, 12).take(count).map(|p| p.prefs().to_vec()).collect::<Vec<_>>());
}

#[test]
fn sampled_forests_carry_the_statistics() {
    let params = Params::classical(40, 60).unwrap();
    for pf in Sampler::new(params, 3).take(500) {
        let f = phi_inv(&pf).unwrap();
        assert_eq!(phi(&f), pf);
        assert_eq!(f.deg_root_total(), pf.slev());
        assert_eq!(f.deg_parent_of_1(), pf.lel());
        assert_eq!(f.root_count(), 60 - 40 + 1);
    }
}

proptest! {
    #[test]
    fn every_circle_tuple_has_level_many_valid_rotations(
        a in 1u32..5, b in 1u32..4, m in 1u32..7, seed in any::<u64>()
    ) {
        let params = Params::ab(a, b, m).unwrap();
        let len = a + m * b;
        let mut rng = SeededRng::new(seed);
        let entries: Vec<u32> = (0..m).map(|_| rand::Rng::random_range(&mut rng, 1..=len)).collect();
        let t = CircleTuple::new(entries, params).unwrap();
        prop_assert_eq!(valid_rotations(&t, params).len() as u32, a);
    }

    #[test]
    fn samples_are_valid(m in 1u32..30, extra in 0u32..20, seed in any::<u64>()) {
        let params = Params::classical(m, m + extra).unwrap();
        let pf = sample_uniform(params, &mut SeededRng::new(seed));
        prop_assert!(pf.prefs().iter().all(|&v| (1..=m + extra).contains(&v)));
        prop_assert_eq!(pf.prefs().len() as u32, m);
    }
}
