//! Closed-form generating functions, their enumerated counterparts and an
//! exact identity checker.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::SizeCap;
use crate::error::{Error, Result};
use crate::forest::fold_forests;
use crate::pf::{fold_pf, Params};
use crate::poly::MultiPoly;
use crate::statistic::Statistic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pf,
    Forest,
    Abpf,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pf" => Ok(Family::Pf),
            "forest" => Ok(Family::Forest),
            "abpf" => Ok(Family::Abpf),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Pf => "pf",
            Family::Forest => "forest",
            Family::Abpf => "abpf",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Identity {
    /// `Σ x^slev y^lel` over `PF(m, n)`.
    MasterPf1,
    /// `Σ y^lel` over `PF(m, n)`.
    Pf1,
    /// `Σ x^slev` over `PF(m, n)`.
    Pf2,
    /// `Σ x^deg(0) y^deg(p)` over `F(m, n)`.
    Master3,
    /// `Σ x₁^#1 ⋯ x_a^#a` over `PF(a, b, m)`.
    Last1,
    /// `Σ x₁^#1 ⋯ x_a^#a y^lel` over `PF(a, b, m)`.
    Last2,
    /// `Σ x^ones y^lel` over `PF(1, b, m)`.
    Abgen1,
    /// `Σ y^lel` over `PF(1, b, m)`.
    AbLel,
    /// `Σ x^ones` over `PF(1, b, m)`.
    AbOnes,
    /// First block against leading block over `PF(k, k, m)`.
    PropAb,
    /// The joint `(slev, lel)` counts assembled term by term.
    ExplFormula,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::MasterPf1,
        Identity::Pf1,
        Identity::Pf2,
        Identity::Master3,
        Identity::Last1,
        Identity::Last2,
        Identity::Abgen1,
        Identity::AbLel,
        Identity::AbOnes,
        Identity::PropAb,
        Identity::ExplFormula,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::MasterPf1 => "master-pf1",
            Identity::Pf1 => "pf1",
            Identity::Pf2 => "pf2",
            Identity::Master3 => "master3",
            Identity::Last1 => "last1",
            Identity::Last2 => "last2",
            Identity::Abgen1 => "abgen1",
            Identity::AbLel => "ab-lel",
            Identity::AbOnes => "ab-ones",
            Identity::PropAb => "prop-ab",
            Identity::ExplFormula => "expl-formula",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Identity::MasterPf1 | Identity::Pf1 | Identity::Pf2 | Identity::ExplFormula => Family::Pf,
            Identity::Master3 => Family::Forest,
            _ => Family::Abpf,
        }
    }

    /// Smallest `m` for which the closed form is defined.
    pub fn min_m(self) -> u32 {
        match self {
            Identity::MasterPf1 | Identity::Master3 | Identity::Last2 | Identity::Abgen1 | Identity::PropAb => 2,
            _ => 1,
        }
    }

    /// Statistics whose exponents the generating function tracks, in
    /// variable order.
    pub fn statistics(self, params: Params) -> Vec<Statistic> {
        let a = params.as_ab().a();
        match self {
            Identity::MasterPf1 | Identity::ExplFormula => vec![Statistic::Slev, Statistic::Lel],
            Identity::Pf1 | Identity::AbLel => vec![Statistic::Lel],
            Identity::Pf2 => vec![Statistic::Slev],
            Identity::AbOnes => vec![Statistic::Ones],
            Identity::Master3 => vec![Statistic::DegRoot, Statistic::DegParent(1)],
            Identity::Last1 => (1..=a).map(Statistic::Count).collect(),
            Identity::Last2 => (1..=a).map(Statistic::Count).chain([Statistic::Lel]).collect(),
            Identity::Abgen1 => vec![Statistic::Ones, Statistic::Lel],
            Identity::PropAb => (1..=a)
                .map(Statistic::Count)
                .chain((1..=a).map(|j| Statistic::LeadBlockCount { k: a, j }))
                .collect(),
        }
    }

    /// Rejects parameters outside the identity's range.
    pub fn check_params(self, params: Params) -> Result<()> {
        let out = |why: String| Err(Error::ParameterOutOfRange(format!("{}: {why}", self.id())));
        if params.m() < self.min_m() {
            return out(format!("needs m >= {}, got m = {}", self.min_m(), params.m()));
        }
        let ab = params.as_ab();
        match (self.family(), params) {
            (Family::Pf | Family::Forest, Params::Ab(_)) => out("needs classical parameters (m, n)".into()),
            (Family::Abpf, _) => match self {
                Identity::Abgen1 | Identity::AbLel | Identity::AbOnes if ab.a() != 1 => {
                    out(format!("needs a = 1, got a = {}", ab.a()))
                }
                Identity::PropAb if ab.a() != ab.b() => out(format!("needs a = b, got a = {}, b = {}", ab.a(), ab.b())),
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

impl TryFrom<String> for Identity {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Identity> for String {
    fn from(i: Identity) -> Self {
        i.id().to_string()
    }
}

fn c(arity: usize, v: impl Into<BigInt>) -> MultiPoly {
    MultiPoly::constant(arity, v)
}

fn v(arity: usize, i: usize) -> MultiPoly {
    MultiPoly::var(arity, i)
}

fn sum(arity: usize, terms: impl IntoIterator<Item = MultiPoly>) -> MultiPoly {
    terms.into_iter().fold(MultiPoly::zero(arity), |acc, t| &acc + &t)
}

/// The fully expanded right-hand side of `identity` at `params`.
pub fn closed_form(identity: Identity, params: Params) -> Result<MultiPoly> {
    identity.check_params(params)?;
    let ab = params.as_ab();
    let (a, b, m) = (ab.a(), ab.b(), ab.m());
    let mb = m * b;
    Ok(match identity {
        Identity::MasterPf1 | Identity::Master3 => {
            // level = n-m+1 = a, n-m = a-1
            let (x, y) = (v(2, 0), v(2, 1));
            let xy = &x * &y;
            let first = (&(&x.scale(a) + &y) + &c(2, m - 1)).pow(m - 2).scale(m - 1);
            let inner = &xy + &x.scale(a - 1);
            let second = &(&inner + &c(2, 1)) * &(&inner + &c(2, m)).pow(m - 2);
            (&xy * &(&first + &second)).scale(a)
        }
        Identity::Pf1 => {
            let y = v(1, 0);
            let n = m + a - 1;
            (&y * &(&y + &c(1, n)).pow(m - 1)).scale(a)
        }
        Identity::Pf2 => {
            let x = v(1, 0);
            (&x * &(&x.scale(a) + &c(1, m)).pow(m - 1)).scale(a)
        }
        Identity::Last1 => {
            let d = a as usize;
            let big_x = sum(d, (0..d).map(|i| v(d, i)));
            &big_x * &(&big_x + &c(d, mb)).pow(m - 1)
        }
        Identity::Last2 => {
            let d = a as usize + 1;
            let y = v(d, d - 1);
            let big_x = sum(d, (0..d - 1).map(|i| v(d, i)));
            let first = sum(
                d,
                (0..d - 1).map(|j| {
                    let xj = v(d, j);
                    let xj_y = &xj * &y;
                    let big_xj = &(&big_x - &xj) + &xj_y;
                    &(&xj_y * &(&big_xj + &c(d, b))) * &(&big_xj + &c(d, mb)).pow(m - 2)
                }),
            );
            let second = (&(&big_x * &y) * &(&(&big_x + &y) + &c(d, mb - 1)).pow(m - 2)).scale(b * (m - 1));
            &first + &second
        }
        Identity::Abgen1 => {
            let (x, y) = (v(2, 0), v(2, 1));
            let xy = &x * &y;
            let first = (&(&x + &y) + &c(2, mb - 1)).pow(m - 2).scale((m - 1) * b);
            let second = &(&xy + &c(2, b)) * &(&xy + &c(2, mb)).pow(m - 2);
            &xy * &(&first + &second)
        }
        Identity::AbLel | Identity::AbOnes => {
            let t = v(1, 0);
            &t * &(&t + &c(1, mb)).pow(m - 1)
        }
        Identity::PropAb => {
            let k = a as usize;
            let d = 2 * k;
            let big_x = sum(d, (0..k).map(|i| v(d, i)));
            let big_y = sum(d, (k..d).map(|i| v(d, i)));
            let z = sum(d, (0..k).map(|i| &v(d, i) * &v(d, k + i)));
            let first = (&(&big_x * &big_y) * &(&(&big_x + &big_y) + &c(d, (m - 1) * a)).pow(m - 2)).scale(m - 1);
            let second = &(&z * &(&z + &c(d, a))) * &(&z + &c(d, m * a)).pow(m - 2);
            &first + &second
        }
        Identity::ExplFormula => {
            let n = m + a - 1;
            let mut p = MultiPoly::zero(2);
            for s in 1..=m {
                for t in 1..=m {
                    p.add_term(vec![s, t], expl_formula_count(m, n, s, t)?);
                }
            }
            p
        }
    })
}

/// Multinomial `top! / Π parts!`, zero when a part is negative or the parts
/// do not sum to `top`.
fn multinomial(top: i64, parts: &[i64]) -> BigInt {
    if top < 0 || parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != top {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    let mut done: i64 = 0;
    for &p in parts {
        for i in 1..=p {
            acc = acc * BigInt::from(done + i) / BigInt::from(i);
        }
        done += p;
    }
    acc
}

fn bpow(base: i64, e: i64) -> BigInt {
    debug_assert!(e >= 0);
    num_traits::pow(BigInt::from(base), e as usize)
}

/// `#{π ∈ PF(m, n) : slev(π) = s, lel(π) = t}` by the two-term closed form.
pub fn expl_formula_count(m: u32, n: u32, s: u32, t: u32) -> Result<BigInt> {
    if m == 0 || n < m || s == 0 || t == 0 {
        return Err(Error::ParameterOutOfRange(format!(
            "need 1 <= m <= n and s, t >= 1, got m={m} n={n} s={s} t={t}"
        )));
    }
    let (m, n, s, t) = (m as i64, n as i64, s as i64, t as i64);
    let level = n - m + 1;
    let mut total = BigInt::zero();
    let first = multinomial(m - 2, &[s - 1, t - 1, m - s - t]);
    if !first.is_zero() {
        total += first * bpow(level, s) * bpow(m - 1, m - s - t + 1);
    }
    let second = multinomial(m - 1, &[t - 1, s - t, m - s]);
    if !second.is_zero() {
        // s·m^(m-s-1) counts parking functions in PF(m-s, m-1); it is 1 at s = m
        let inner = if s == m { BigInt::one() } else { BigInt::from(s) * bpow(m, m - s - 1) };
        total += second * inner * level * bpow(n - m, s - t);
    }
    Ok(total)
}

fn tally_to_poly(arity: usize, tally: HashMap<Vec<u32>, u64>) -> MultiPoly {
    let mut p = MultiPoly::zero(arity);
    for (e, count) in tally {
        p.add_term(e, BigInt::from(count));
    }
    p
}

fn merge_tally(mut x: HashMap<Vec<u32>, u64>, y: HashMap<Vec<u32>, u64>) -> HashMap<Vec<u32>, u64> {
    for (k, v) in y {
        *x.entry(k).or_insert(0) += v;
    }
    x
}

/// `Σ Π x_i^{stat_i}` over the exhaustively enumerated family.
pub fn empirical_gf(family: Family, params: Params, stats: &[Statistic], cap: SizeCap) -> Result<MultiPoly> {
    for s in stats {
        s.validate(params)?;
    }
    let d = stats.len();
    let tally = match family {
        Family::Pf | Family::Abpf => {
            if let Some(s) = stats.iter().find(|s| s.is_forest_statistic()) {
                return Err(Error::BadParameter(format!("{s} is not defined on {family}")));
            }
            fold_pf(
                params,
                cap,
                HashMap::new,
                |acc, prefs| {
                    let key: Vec<u32> = stats
                        .iter()
                        .map(|s| s.on_prefs(prefs, params).expect("validated"))
                        .collect();
                    *acc.entry(key).or_insert(0) += 1;
                },
                merge_tally,
            )?
        }
        Family::Forest => {
            let Params::Classical(p) = params else {
                return Err(Error::InvalidParams("forests need classical parameters (m, n)".into()));
            };
            if let Some(s) = stats.iter().find(|s| !s.is_forest_statistic()) {
                return Err(Error::BadParameter(format!("{s} is not defined on forests")));
            }
            fold_forests(
                p.m(),
                p.n(),
                cap,
                HashMap::new,
                |acc, f| {
                    let key: Vec<u32> = stats.iter().map(|s| s.on_forest(f).expect("validated")).collect();
                    *acc.entry(key).or_insert(0) += 1;
                },
                merge_tally,
            )?
        }
    };
    Ok(tally_to_poly(d, tally))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub params: Params,
    pub equal: bool,
    /// Closed form minus enumeration.
    pub diff: MultiPoly,
}

/// Compares the closed form with the enumerated sum coefficient by
/// coefficient.
pub fn check_identity(identity: Identity, params: Params, cap: SizeCap) -> Result<IdentityReport> {
    let rhs = closed_form(identity, params)?;
    let lhs = empirical_gf(identity.family(), params, &identity.statistics(params), cap)?;
    let diff = rhs.checked_sub(&lhs)?;
    Ok(IdentityReport {
        identity,
        params,
        equal: diff.is_zero(),
        diff,
    })
}

/// The parameter grid checked for `identity` by the desk-scale sweep.
pub fn desk_grid(identity: Identity) -> Vec<Params> {
    let classical = |max_m: u32, max_n: u32| -> Vec<Params> {
        (identity.min_m()..=max_m)
            .flat_map(|m| (m..=max_n).map(move |n| Params::classical(m, n).expect("m <= n")))
            .collect()
    };
    let ab = |pairs: Vec<(u32, u32)>| -> Vec<Params> {
        pairs
            .into_iter()
            .flat_map(|(a, b)| (identity.min_m()..=4).map(move |m| Params::ab(a, b, m).expect("positive")))
            .collect()
    };
    let all_pairs: Vec<(u32, u32)> = (1..=3).flat_map(|a| (1..=3).map(move |b| (a, b))).collect();
    match identity {
        Identity::ExplFormula => classical(6, 8),
        Identity::MasterPf1 | Identity::Pf1 | Identity::Pf2 | Identity::Master3 => classical(5, 7),
        Identity::Last1 | Identity::Last2 => ab(all_pairs),
        Identity::Abgen1 | Identity::AbLel | Identity::AbOnes => ab((1..=3).map(|b| (1, b)).collect()),
        Identity::PropAb => ab(vec![(2, 2)]),
    }
}
