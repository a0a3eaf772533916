//! Named statistics on parking functions and forests.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::RootedForest;
use crate::pf::{self, Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Statistic {
    /// Entries in the low range `[n-m+1]` (or `[a]`).
    Slev,
    /// Entries equal to `π₁`.
    Lel,
    /// Entries equal to 1.
    Ones,
    /// `#v`: entries equal to `v`.
    Count(u32),
    /// Entries equal to `π_s`.
    LelAt(u32),
    /// `#(ℓk-k+j)` where `ℓ = ⌈π₁/k⌉` is the leading block.
    LeadBlockCount { k: u32, j: u32 },
    /// Children of all roots.
    DegRoot,
    /// Children of the parent of vertex `i`.
    DegParent(u32),
}

impl Statistic {
    pub fn is_forest_statistic(self) -> bool {
        matches!(self, Statistic::DegRoot | Statistic::DegParent(_))
    }

    pub fn on_prefs(self, prefs: &[u32], params: Params) -> Result<u32> {
        Ok(match self {
            Statistic::Slev => pf::slev(prefs, params.level()),
            Statistic::Lel => pf::lel(prefs),
            Statistic::Ones => pf::ones(prefs),
            Statistic::Count(v) => pf::count_value(prefs, v),
            Statistic::LelAt(s) => {
                if s == 0 || s as usize > prefs.len() {
                    return Err(Error::BadParameter(format!("car {s} outside [1, {}]", prefs.len())));
                }
                pf::lel_at(prefs, s as usize)
            }
            Statistic::LeadBlockCount { k, j } => {
                let lead = prefs[0].div_ceil(k);
                pf::count_value(prefs, lead * k - k + j)
            }
            Statistic::DegRoot | Statistic::DegParent(_) => {
                return Err(Error::BadParameter(format!("{self} is a forest statistic")))
            }
        })
    }

    pub fn on_forest(self, forest: &RootedForest) -> Result<u32> {
        match self {
            Statistic::DegRoot => Ok(forest.deg_root_total()),
            Statistic::DegParent(i) if (1..=forest.m()).contains(&i) => Ok(forest.child_count(forest.parent(i))),
            Statistic::DegParent(i) => Err(Error::BadParameter(format!("vertex {i} outside [1, {}]", forest.m()))),
            _ => Err(Error::BadParameter(format!("{self} is a parking-function statistic"))),
        }
    }

    /// Checks indices against the parameters before a long enumeration.
    pub fn validate(self, params: Params) -> Result<()> {
        let m = params.m();
        match self {
            Statistic::LelAt(s) | Statistic::DegParent(s) if s == 0 || s > m => {
                Err(Error::BadParameter(format!("{self}: index outside [1, {m}]")))
            }
            Statistic::LeadBlockCount { k, j } if k == 0 || j == 0 || j > k => {
                Err(Error::BadParameter(format!("{self}: need 1 <= j <= k")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Slev => f.write_str("slev"),
            Statistic::Lel => f.write_str("lel"),
            Statistic::Ones => f.write_str("ones"),
            Statistic::Count(v) => write!(f, "count:{v}"),
            Statistic::LelAt(s) => write!(f, "lel:{s}"),
            Statistic::LeadBlockCount { k, j } => write!(f, "lead:{k}:{j}"),
            Statistic::DegRoot => f.write_str("deg0"),
            Statistic::DegParent(1) => f.write_str("degp"),
            Statistic::DegParent(i) => write!(f, "degp:{i}"),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;

    /// Accepts `slev`, `lel`, `ones`, `count:v`, `lel:s`, `lead:k:j`,
    /// `deg0`, `degp` and `degp:i`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown statistic {s:?}"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let parts: Vec<&str> = s.trim().split(':').collect();
        Ok(match parts.as_slice() {
            ["slev"] => Statistic::Slev,
            ["lel"] => Statistic::Lel,
            ["ones"] => Statistic::Ones,
            ["deg0"] => Statistic::DegRoot,
            ["degp"] => Statistic::DegParent(1),
            ["count", v] => Statistic::Count(num(v)?),
            ["lel", i] => Statistic::LelAt(num(i)?),
            ["degp", i] => Statistic::DegParent(num(i)?),
            ["lead", k, j] => Statistic::LeadBlockCount { k: num(k)?, j: num(j)? },
            _ => return Err(bad()),
        })
    }
}

impl TryFrom<String> for Statistic {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Statistic> for String {
    fn from(s: Statistic) -> Self {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["slev", "lel", "ones", "count:3", "lel:2", "lead:2:1", "deg0", "degp", "degp:4"] {
            assert_eq!(s.parse::<Statistic>().unwrap().to_string(), s);
        }
        assert_eq!("degp:1".parse::<Statistic>().unwrap(), Statistic::DegParent(1));
        assert!("nope".parse::<Statistic>().is_err());
        assert!("count:x".parse::<Statistic>().is_err());
    }

    #[test]
    fn values_on_examples() {
        let params = Params::classical(9, 12).unwrap();
        let prefs = [1, 4, 6, 1, 8, 3, 11, 8, 6];
        assert_eq!(Statistic::Slev.on_prefs(&prefs, params).unwrap(), 4);
        assert_eq!(Statistic::Lel.on_prefs(&prefs, params).unwrap(), 2);
        assert_eq!(Statistic::LelAt(3).on_prefs(&prefs, params).unwrap(), 2);
        assert_eq!(Statistic::Count(8).on_prefs(&prefs, params).unwrap(), 2);
        assert!(Statistic::LelAt(10).on_prefs(&prefs, params).is_err());
        assert!(Statistic::DegRoot.on_prefs(&prefs, params).is_err());

        let kk = Params::ab(2, 2, 6).unwrap();
        let pi = [10, 3, 2, 9, 3, 1];
        assert_eq!(Statistic::LeadBlockCount { k: 2, j: 1 }.on_prefs(&pi, kk).unwrap(), 1);
        assert_eq!(Statistic::LeadBlockCount { k: 2, j: 2 }.on_prefs(&pi, kk).unwrap(), 1);
        assert_eq!(Statistic::Slev.on_prefs(&pi, kk).unwrap(), 2);
    }

    #[test]
    fn validation() {
        let p = Params::classical(3, 4).unwrap();
        assert!(Statistic::LelAt(4).validate(p).is_err());
        assert!(Statistic::LeadBlockCount { k: 2, j: 3 }.validate(p).is_err());
        assert!(Statistic::DegParent(3).validate(p).is_ok());
    }

    #[test]
    fn serde_as_string() {
        let s = serde_json::to_string(&Statistic::LeadBlockCount { k: 2, j: 1 }).unwrap();
        assert_eq!(s, "\"lead:2:1\"");
        assert_eq!(serde_json::from_str::<Statistic>(&s).unwrap(), Statistic::LeadBlockCount { k: 2, j: 1 });
    }
}
