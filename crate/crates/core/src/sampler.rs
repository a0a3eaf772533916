//! Exact uniform sampling through the rotation (circle) argument.
//!
//! Preferences are drawn independently on a circle of `L` spots
//! (`L = n+1`, or `a+mb` in the (a,b) case); exactly `n-m+1` (resp. `a`) of
//! the `L` rotations of any tuple are parking functions, so picking one of
//! them uniformly gives an exactly uniform parking function.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pf::{AbParams, ParkingFunction, Params};

/// Samples per substream block. Sample `i` is always drawn from block
/// `i / BLOCK`, which keeps output independent of the worker count.
pub const BLOCK: usize = 1024;

/// Deterministic ChaCha8 stream addressed by `(seed, stream)`.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub const ALGORITHM: &'static str = "chacha8";

    pub fn new(seed: u64) -> Self {
        SeededRng::substream(seed, 0)
    }

    pub fn substream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        SeededRng {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// A point of `[L]^m`, representatives taken in `1..=L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleTuple {
    entries: Vec<u32>,
    circle_len: u32,
}

impl CircleTuple {
    pub fn new(entries: Vec<u32>, params: Params) -> Result<Self> {
        let circle_len = params.as_ab().circle_len();
        if entries.len() != params.m() as usize {
            return Err(Error::InvalidParams(format!(
                "tuple has {} entries, expected {}",
                entries.len(),
                params.m()
            )));
        }
        if let Some(v) = entries.iter().find(|&&v| v == 0 || v > circle_len) {
            return Err(Error::InvalidParams(format!("entry {v} outside [1, {circle_len}]")));
        }
        Ok(CircleTuple {
            entries,
            circle_len,
        })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn circle_len(&self) -> u32 {
        self.circle_len
    }

    /// `t + k(1,..,1)` with representatives in `1..=L`.
    pub fn shifted(&self, k: u32) -> Vec<u32> {
        shift(&self.entries, k, self.circle_len)
    }
}

fn shift(entries: &[u32], k: u32, len: u32) -> Vec<u32> {
    entries.iter().map(|&v| (v - 1 + k) % len + 1).collect()
}

/// All shifts `k ∈ [0, L)` that turn `t` into a member of the family, sorted.
pub fn valid_rotations(t: &CircleTuple, params: Params) -> Vec<u32> {
    let mut scratch = Scratch::default();
    rotations_into(t.entries(), params.as_ab(), &mut scratch);
    scratch.shifts
}

#[derive(Debug, Default)]
struct Scratch {
    counts: Vec<u32>,
    walk: Vec<i64>,
    suffix_min: Vec<i64>,
    shifts: Vec<u32>,
}

/// Cycle-lemma walk: `G(x) = b·#{entries ≤ x} - x` ends at `G(L) = -a`, and
/// a tuple is valid iff `G(x) > -a` on `[0, L)`. Rotating the tuple rotates
/// the increments of the walk, so shift `k` is valid iff, with
/// `s = (L - k) mod L`, the walk stays above `G(s) - a` on `[s, L)` and above
/// `G(s)` on `[0, s)`.
fn rotations_into(entries: &[u32], params: AbParams, scratch: &mut Scratch) {
    let len = params.circle_len() as usize;
    let (a, b) = (params.a() as i64, params.b() as i64);
    let Scratch {
        counts,
        walk,
        suffix_min,
        shifts,
    } = scratch;
    counts.clear();
    counts.resize(len + 1, 0);
    for &v in entries {
        counts[v as usize] += 1;
    }
    walk.clear();
    walk.push(0);
    for x in 1..=len {
        let prev = walk[x - 1];
        walk.push(prev + b * counts[x] as i64 - 1);
    }
    suffix_min.clear();
    suffix_min.resize(len + 1, i64::MAX);
    for s in (0..len).rev() {
        suffix_min[s] = suffix_min[s + 1].min(walk[s]);
    }
    shifts.clear();
    let mut prefix_min = i64::MAX;
    for s in 0..len {
        let g = walk[s];
        if suffix_min[s] > g - a && prefix_min > g {
            shifts.push(((len - s) % len) as u32);
        }
        prefix_min = prefix_min.min(g);
    }
    shifts.sort_unstable();
}

/// One exactly uniform member of the family.
pub fn sample_uniform<R: RngCore + ?Sized>(params: Params, rng: &mut R) -> ParkingFunction {
    let mut scratch = Scratch::default();
    let prefs = draw(params.as_ab(), rng, &mut scratch);
    ParkingFunction::new(params, prefs).expect("a valid rotation always exists")
}

fn draw<R: RngCore + ?Sized>(params: AbParams, rng: &mut R, scratch: &mut Scratch) -> Vec<u32> {
    let len = params.circle_len();
    let tuple: Vec<u32> = (0..params.m()).map(|_| rng.random_range(1..=len)).collect();
    rotations_into(&tuple, params, scratch);
    debug_assert_eq!(scratch.shifts.len(), params.a() as usize);
    let k = scratch.shifts[rng.random_range(0..scratch.shifts.len())];
    shift(&tuple, k, len)
}

/// Infinite deterministic stream of uniform samples.
///
/// Sample `i` comes from substream `i / BLOCK` of `seed`, matching
/// [`fold_samples`] element for element.
#[derive(Debug)]
pub struct Sampler {
    params: Params,
    seed: u64,
    index: usize,
    rng: SeededRng,
    scratch: Scratch,
}

impl Sampler {
    pub fn new(params: Params, seed: u64) -> Self {
        Sampler {
            params,
            seed,
            index: 0,
            rng: SeededRng::substream(seed, 0),
            scratch: Scratch::default(),
        }
    }
}

impl Iterator for Sampler {
    type Item = ParkingFunction;

    fn next(&mut self) -> Option<ParkingFunction> {
        if self.index > 0 && self.index.is_multiple_of(BLOCK) {
            self.rng = SeededRng::substream(self.seed, (self.index / BLOCK) as u64);
        }
        self.index += 1;
        let prefs = draw(self.params.as_ab(), &mut self.rng, &mut self.scratch);
        Some(ParkingFunction::new(self.params, prefs).expect("a valid rotation always exists"))
    }
}

/// Order-independent fold over `count` samples, parallel across blocks.
pub fn fold_samples<T, I, F, M>(
    params: Params,
    count: usize,
    seed: u64,
    init: I,
    visit: F,
    merge: M,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[u32]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let ab = params.as_ab();
    let blocks = count.div_ceil(BLOCK);
    let block = |j: usize| {
        let mut acc = init();
        let mut rng = SeededRng::substream(seed, j as u64);
        let mut scratch = Scratch::default();
        let n = BLOCK.min(count - j * BLOCK);
        for _ in 0..n {
            let prefs = draw(ab, &mut rng, &mut scratch);
            visit(&mut acc, &prefs);
        }
        acc
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..blocks).into_par_iter().map(block).reduce(&init, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..blocks).map(block).fold(init(), &merge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{SizeCap, Tuples};
    use crate::pf::enumerate_pf;
    use std::collections::{BTreeMap, BTreeSet};

    /// Tries every shift against the validity predicate.
    fn brute_rotations(t: &[u32], params: Params) -> Vec<u32> {
        let len = params.as_ab().circle_len();
        (0..len).filter(|&k| params.is_valid(&shift(t, k, len))).collect()
    }

    fn tuple(v: &[u32], p: Params) -> CircleTuple {
        CircleTuple::new(v.to_vec(), p).unwrap()
    }

    #[test]
    fn rotation_examples() {
        let p22 = Params::classical(2, 2).unwrap();
        assert_eq!(valid_rotations(&tuple(&[1, 1], p22), p22), vec![0]);
        let p12 = Params::classical(1, 2).unwrap();
        assert_eq!(valid_rotations(&tuple(&[2], p12), p12), vec![0, 2]);
        let p33 = Params::classical(3, 3).unwrap();
        assert_eq!(valid_rotations(&tuple(&[4, 2, 4], p33), p33).len(), 1);
    }

    #[test]
    fn circle_tuple_rejects_out_of_range() {
        let p = Params::classical(2, 2).unwrap();
        assert!(CircleTuple::new(vec![1, 4], p).is_err());
        assert!(CircleTuple::new(vec![0, 1], p).is_err());
        assert!(CircleTuple::new(vec![1], p).is_err());
        assert_eq!(tuple(&[3, 1], p).shifted(1), vec![1, 2]);
    }

    #[test]
    fn walk_agrees_with_brute_force_rotations() {
        for n in 1..=5 {
            for m in 1..=n {
                let p = Params::classical(m, n).unwrap();
                let mut t = Tuples::new(n + 1, m as usize);
                while let Some(x) = t.advance() {
                    assert_eq!(valid_rotations(&tuple(x, p), p), brute_rotations(x, p), "{x:?}");
                }
            }
        }
        for (a, b, m) in [(1, 2, 3), (2, 3, 2), (3, 2, 3), (2, 2, 3)] {
            let p = Params::ab(a, b, m).unwrap();
            let mut t = Tuples::new(a + m * b, m as usize);
            while let Some(x) = t.advance() {
                assert_eq!(valid_rotations(&tuple(x, p), p), brute_rotations(x, p), "{x:?}");
            }
        }
    }

    #[test]
    fn single_car_single_spot_is_forced() {
        let p = Params::classical(1, 1).unwrap();
        let mut rng = SeededRng::new(7);
        for _ in 0..20 {
            assert_eq!(sample_uniform(p, &mut rng).prefs(), &[1]);
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let p = Params::classical(4, 6).unwrap();
        let a: Vec<_> = Sampler::new(p, 42).take(3000).collect();
        let b: Vec<_> = Sampler::new(p, 42).take(3000).collect();
        assert_eq!(a, b);
        let c: Vec<_> = Sampler::new(p, 43).take(3000).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn stream_and_fold_see_the_same_samples() {
        let p = Params::ab(2, 3, 3).unwrap();
        let streamed: Vec<Vec<u32>> = Sampler::new(p, 5).take(2500).map(|x| x.into_prefs()).collect();
        let mut folded = fold_samples(
            p,
            2500,
            5,
            Vec::new,
            |acc: &mut Vec<Vec<u32>>, x| acc.push(x.to_vec()),
            |mut x, y| {
                x.extend(y);
                x
            },
        );
        let mut expected = streamed.clone();
        expected.sort();
        folded.sort();
        assert_eq!(folded, expected);
    }

    #[test]
    fn pf_2_3_frequencies_are_uniform() {
        let p = Params::classical(2, 3).unwrap();
        let n = 1_000_000;
        let counts = fold_samples(
            p,
            n,
            20240601,
            BTreeMap::new,
            |acc: &mut BTreeMap<Vec<u32>, u64>, x| *acc.entry(x.to_vec()).or_default() += 1,
            |mut x, y| {
                for (k, v) in y {
                    *x.entry(k).or_default() += v;
                }
                x
            },
        );
        assert_eq!(counts.len(), 8);
        for (k, c) in counts {
            let f = c as f64 / n as f64;
            assert!((f - 0.125).abs() < 0.002, "{k:?}: {f}");
        }
    }

    #[test]
    fn ab_1_2_2_support_is_the_enumerated_set() {
        let p = Params::ab(1, 2, 2).unwrap();
        let expected: BTreeSet<Vec<u32>> = enumerate_pf(p, SizeCap::DEFAULT)
            .unwrap()
            .map(|x| x.into_prefs())
            .collect();
        assert_eq!(expected.len(), 5);
        let seen: BTreeSet<Vec<u32>> = Sampler::new(p, 99).take(100_000).map(|x| x.into_prefs()).collect();
        assert_eq!(seen, expected);
    }
}
