//! Distribution tables of a single statistic, exact or sampled, and
//! discrepancies against reference laws.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;
use statrs::distribution::{Binomial, ContinuousCDF, Discrete, DiscreteCDF, Normal, Poisson};

use crate::enumerate::SizeCap;
use crate::error::{Error, Result};
use crate::forest::{fold_forests, phi_inv};
use crate::gf::Family;
use crate::pf::{fold_pf, ParkingFunction, Params};
use crate::sampler::{fold_samples, SeededRng};
use crate::statistic::Statistic;

/// Reference tail mass below which the TV support is truncated.
pub const TV_TAIL: f64 = 1e-10;

/// Counts of each value of one statistic over a family or a sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistTable {
    pub statistic: Statistic,
    pub params: Params,
    pub family: Family,
    /// `None` for exhaustive tables.
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    /// Subtracted from every statistic value.
    pub offset: u32,
    pub counts: BTreeMap<u32, u64>,
}

impl DistTable {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn frequency(&self, v: u32) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        self.counts.get(&v).copied().unwrap_or(0) as f64 / total as f64
    }

    /// `(value, frequency)` in increasing value order.
    pub fn pmf(&self) -> Vec<(u32, f64)> {
        let total = self.total() as f64;
        self.counts.iter().map(|(&v, &c)| (v, c as f64 / total)).collect()
    }

    pub fn mean(&self) -> f64 {
        self.pmf().iter().map(|&(v, p)| v as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        self.pmf().iter().map(|&(v, p)| (v as f64 - mu).powi(2) * p).sum()
    }

    /// The table of `statistic - k`; fails if some value is below `k`.
    pub fn shifted_down(&self, k: u32) -> Result<DistTable> {
        if let Some((&low, _)) = self.counts.iter().next() {
            if low < k {
                return Err(Error::BadParameter(format!("value {low} cannot be shifted down by {k}")));
            }
        }
        Ok(DistTable {
            offset: self.offset + k,
            counts: self.counts.iter().map(|(&v, &c)| (v - k, c)).collect(),
            ..self.clone()
        })
    }

    /// Columns `statistic_value,count,frequency` under `#` metadata lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# family: {}", self.family);
        let _ = writeln!(out, "# params: {}", self.params);
        if self.offset == 0 {
            let _ = writeln!(out, "# statistic: {}", self.statistic);
        } else {
            let _ = writeln!(out, "# statistic: {} - {}", self.statistic, self.offset);
        }
        match (self.samples, self.seed) {
            (Some(n), Some(seed)) => {
                let _ = writeln!(out, "# samples: {n}");
                let _ = writeln!(out, "# seed: {seed}");
                let _ = writeln!(out, "# rng: {}", SeededRng::ALGORITHM);
            }
            _ => {
                let _ = writeln!(out, "# exhaustive: true");
            }
        }
        out.push_str("statistic_value,count,frequency\n");
        for (v, p) in self.pmf() {
            let _ = writeln!(out, "{v},{},{p}", self.counts[&v]);
        }
        out
    }
}

fn merge_counts(mut x: BTreeMap<u32, u64>, y: BTreeMap<u32, u64>) -> BTreeMap<u32, u64> {
    for (k, v) in y {
        *x.entry(k).or_insert(0) += v;
    }
    x
}

fn check_family(family: Family, params: Params, stat: Statistic) -> Result<()> {
    stat.validate(params)?;
    match family {
        Family::Forest if !matches!(params, Params::Classical(_)) => {
            Err(Error::InvalidParams("forests need classical parameters (m, n)".into()))
        }
        Family::Forest if !stat.is_forest_statistic() => {
            Err(Error::BadParameter(format!("{stat} is not defined on forests")))
        }
        Family::Pf | Family::Abpf if stat.is_forest_statistic() => {
            Err(Error::BadParameter(format!("{stat} is not defined on {family}")))
        }
        _ => Ok(()),
    }
}

/// Exact table by exhaustive enumeration.
pub fn exact_distribution(family: Family, params: Params, stat: Statistic, cap: SizeCap) -> Result<DistTable> {
    check_family(family, params, stat)?;
    let counts = match family {
        Family::Forest => {
            let Params::Classical(p) = params else { unreachable!("checked") };
            fold_forests(
                p.m(),
                p.n(),
                cap,
                BTreeMap::new,
                |acc, f| *acc.entry(stat.on_forest(f).expect("validated")).or_insert(0) += 1,
                merge_counts,
            )?
        }
        Family::Pf | Family::Abpf => fold_pf(
            params,
            cap,
            BTreeMap::new,
            |acc, prefs| *acc.entry(stat.on_prefs(prefs, params).expect("validated")).or_insert(0) += 1,
            merge_counts,
        )?,
    };
    Ok(DistTable {
        statistic: stat,
        params,
        family,
        samples: None,
        seed: None,
        offset: 0,
        counts,
    })
}

/// Table over `samples` exact-uniform draws; forests are drawn through
/// `φ⁻¹` of uniform parking functions.
pub fn empirical_distribution(
    family: Family,
    params: Params,
    stat: Statistic,
    samples: usize,
    seed: u64,
) -> Result<DistTable> {
    check_family(family, params, stat)?;
    if samples == 0 {
        return Err(Error::EmptySample);
    }
    let counts = fold_samples(
        params,
        samples,
        seed,
        BTreeMap::new,
        |acc, prefs| {
            let v = match family {
                Family::Forest => {
                    let pf = ParkingFunction::new(params, prefs.to_vec()).expect("sampler output is valid");
                    stat.on_forest(&phi_inv(&pf).expect("classical")).expect("validated")
                }
                _ => stat.on_prefs(prefs, params).expect("validated"),
            };
            *acc.entry(v).or_insert(0) += 1;
        },
        merge_counts,
    );
    Ok(DistTable {
        statistic: stat,
        params,
        family,
        samples: Some(samples as u64),
        seed: Some(seed),
        offset: 0,
        counts,
    })
}

/// Reference law for a discrepancy computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reference {
    Poisson { lambda: f64 },
    Binomial { trials: u64, p: f64 },
    Normal { mean: f64, sd: f64 },
}

impl Reference {
    pub fn poisson(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::BadParameter(format!("Poisson rate {lambda} must be positive")));
        }
        Ok(Reference::Poisson { lambda })
    }

    pub fn binomial(trials: u64, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadParameter(format!("binomial p = {p} outside [0, 1]")));
        }
        Ok(Reference::Binomial { trials, p })
    }

    pub fn normal(mean: f64, sd: f64) -> Result<Self> {
        if !(sd > 0.0 && sd.is_finite() && mean.is_finite()) {
            return Err(Error::BadParameter(format!("normal sd {sd} must be positive")));
        }
        Ok(Reference::Normal { mean, sd })
    }

    pub fn standard_normal() -> Self {
        Reference::Normal { mean: 0.0, sd: 1.0 }
    }

    pub fn is_discrete(&self) -> bool {
        !matches!(self, Reference::Normal { .. })
    }

    /// Point mass at `k`; zero for continuous laws.
    pub fn pmf(&self, k: u64) -> f64 {
        match *self {
            Reference::Poisson { lambda } => Poisson::new(lambda).expect("validated").pmf(k),
            Reference::Binomial { trials, p } => Binomial::new(p, trials).expect("validated").pmf(k),
            Reference::Normal { .. } => 0.0,
        }
    }

    /// `P(X ≤ x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Reference::Normal { mean, sd } => Normal::new(mean, sd).expect("validated").cdf(x),
            _ if x < 0.0 => 0.0,
            Reference::Poisson { lambda } => Poisson::new(lambda).expect("validated").cdf(x.floor() as u64),
            Reference::Binomial { trials, p } => Binomial::new(p, trials).expect("validated").cdf(x.floor() as u64),
        }
    }

    /// `P(X > k)` for discrete laws.
    fn tail_above(&self, k: u64) -> f64 {
        match *self {
            Reference::Poisson { lambda } => Poisson::new(lambda).expect("validated").sf(k),
            Reference::Binomial { trials, p } => Binomial::new(p, trials).expect("validated").sf(k),
            Reference::Normal { .. } => unreachable!("discrete only"),
        }
    }
}

/// Total variation distance between a table and a discrete reference.
///
/// The support runs to the first `K` past the table's support with
/// reference tail `P(X > K) < 1e-10`; that tail is added to the result.
pub fn tv_distance(table: &DistTable, reference: &Reference) -> Result<f64> {
    if !reference.is_discrete() {
        return Err(Error::BadParameter("TV distance needs a discrete reference".into()));
    }
    if table.total() == 0 {
        return Err(Error::EmptySample);
    }
    let top = table.counts.keys().next_back().copied().unwrap_or(0) as u64;
    let mut k_max = top;
    while reference.tail_above(k_max) >= TV_TAIL {
        k_max += 1;
    }
    let total = table.total() as f64;
    let mut sum = 0.0;
    for k in 0..=k_max {
        let p = table.counts.get(&(k as u32)).copied().unwrap_or(0) as f64 / total;
        sum += (p - reference.pmf(k)).abs();
    }
    Ok((0.5 * sum + reference.tail_above(k_max)).min(1.0))
}

/// Kolmogorov–Smirnov distance `sup_x |F_n(x) - F(x)|` between the table,
/// mapped through the increasing `transform`, and the reference.
pub fn ks_statistic(table: &DistTable, transform: impl Fn(u32) -> f64, reference: &Reference) -> Result<f64> {
    if table.total() == 0 {
        return Err(Error::EmptySample);
    }
    let mut below = 0.0;
    let mut sup: f64 = 0.0;
    for (v, p) in table.pmf() {
        let x = transform(v);
        let at = reference.cdf(x);
        // left limit of the reference at a jump of the empirical cdf
        let left = if reference.is_discrete() { reference.cdf(x - 1.0) } else { at };
        sup = sup.max((below - left).abs());
        below += p;
        sup = sup.max((below - at).abs());
    }
    Ok(sup.min(1.0))
}

fn binom(n: u32, k: u32) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Closed-form `#{π ∈ PF(m, n) : lel(π) - 1 = j}` for `j = 0..m-1`; the
/// normalized counts are Binomial(m-1, 1/(n+1)).
pub fn lel_law_counts(m: u32, n: u32) -> Vec<BigUint> {
    let level = BigUint::from(n - m + 1);
    (0..m)
        .map(|j| &level * binom(m - 1, j) * BigUint::from(n).pow(m - 1 - j))
        .collect()
}

/// Closed-form `#{π ∈ PF(m, n) : slev(π) - 1 = j}` for `j = 0..m-1`; the
/// normalized counts are Binomial(m-1, (n-m+1)/(n+1)).
pub fn slev_law_counts(m: u32, n: u32) -> Vec<BigUint> {
    let level = BigUint::from(n - m + 1);
    (0..m)
        .map(|j| &level * binom(m - 1, j) * level.pow(j) * BigUint::from(m).pow(m - 1 - j))
        .collect()
}
