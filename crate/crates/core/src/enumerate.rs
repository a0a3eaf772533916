//! Size-capped exhaustive enumeration of integer tuples.
//!
//! Every exhaustive enumerator in the crate walks a box `[1, hi]^len` of raw
//! tuples in lexicographic order and filters it. The [`SizeCap`] guards the
//! box size before any work starts.

use crate::error::{Error, Result};

/// Upper bound on the number of raw candidate tuples an enumerator may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCap(pub u128);

impl SizeCap {
    pub const DEFAULT: SizeCap = SizeCap(100_000_000);

    pub fn check(self, hi: u32, len: usize) -> Result<u128> {
        self.admit(domain_size(hi, len))
    }

    /// Accepts a precomputed domain size.
    pub fn admit(self, domain: u128) -> Result<u128> {
        if domain > self.0 {
            return Err(Error::SizeCapExceeded {
                domain,
                cap: self.0,
            });
        }
        Ok(domain)
    }
}

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap::DEFAULT
    }
}

/// `hi^len`, saturating at `u128::MAX`.
pub fn domain_size(hi: u32, len: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..len {
        acc = acc.saturating_mul(hi as u128);
    }
    acc
}

/// Odometer over `[1, hi]^len` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Tuples {
    cur: Vec<u32>,
    hi: u32,
    fixed_prefix: usize,
    started: bool,
    done: bool,
}

impl Tuples {
    pub fn new(hi: u32, len: usize) -> Self {
        Tuples {
            cur: vec![1; len],
            hi,
            fixed_prefix: 0,
            started: false,
            done: hi == 0 && len > 0,
        }
    }

    /// Odometer over the tuples whose first entry is fixed to `first`.
    pub fn with_prefix(first: u32, hi: u32, len: usize) -> Self {
        assert!(len >= 1);
        let mut t = Tuples::new(hi, len);
        t.cur[0] = first;
        t.fixed_prefix = 1;
        t
    }

    /// Advances and returns the current tuple, or `None` when exhausted.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.cur);
        }
        let mut i = self.cur.len();
        while i > self.fixed_prefix {
            i -= 1;
            if self.cur[i] < self.hi {
                self.cur[i] += 1;
                for x in &mut self.cur[i + 1..] {
                    *x = 1;
                }
                return Some(&self.cur);
            }
        }
        self.done = true;
        None
    }
}

/// Folds `visit` over every tuple of `[1, hi]^len`.
///
/// The box is split on the first coordinate; with the `parallel` feature the
/// slices run on the rayon pool. `merge` must be associative and commutative
/// (counts, tables, polynomial sums) so the result does not depend on
/// scheduling.
pub fn fold_tuples<T, I, F, M>(
    hi: u32,
    len: usize,
    cap: SizeCap,
    init: I,
    visit: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[u32]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    cap.check(hi, len)?;
    if len == 0 {
        let mut acc = init();
        visit(&mut acc, &[]);
        return Ok(acc);
    }
    let slice = |first: u32| {
        let mut acc = init();
        let mut tuples = Tuples::with_prefix(first, hi, len);
        while let Some(t) = tuples.advance() {
            visit(&mut acc, t);
        }
        acc
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((1..=hi).into_par_iter().map(slice).reduce(&init, &merge))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((1..=hi).map(slice).fold(init(), &merge))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_is_lexicographic_and_complete() {
        let mut t = Tuples::new(3, 2);
        let mut all = Vec::new();
        while let Some(x) = t.advance() {
            all.push(x.to_vec());
        }
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![1, 1]);
        assert_eq!(all[1], vec![1, 2]);
        assert_eq!(all[8], vec![3, 3]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn prefix_odometer_fixes_first_entry() {
        let mut t = Tuples::with_prefix(2, 3, 3);
        let mut n = 0;
        while let Some(x) = t.advance() {
            assert_eq!(x[0], 2);
            n += 1;
        }
        assert_eq!(n, 9);
        let mut single = Tuples::with_prefix(4, 5, 1);
        assert_eq!(single.advance(), Some(&[4u32][..]));
        assert_eq!(single.advance(), None);
    }

    #[test]
    fn cap_rejects_large_domains() {
        assert_eq!(SizeCap(8).check(2, 3), Ok(8));
        assert!(matches!(
            SizeCap(8).check(3, 2),
            Err(Error::SizeCapExceeded { domain: 9, cap: 8 })
        ));
        assert_eq!(domain_size(u32::MAX, 10), u128::MAX);
    }

    #[test]
    fn fold_counts_every_tuple() {
        let n = fold_tuples(4, 3, SizeCap::DEFAULT, || 0u64, |c, _| *c += 1, |a, b| a + b).unwrap();
        assert_eq!(n, 64);
    }
}
