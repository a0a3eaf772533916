//! JSON encodings of parking functions.
//!
//! Classical: `{"kind":"pf","m":3,"n":4,"prefs":[..]}`.
//! `(a,b)`: `{"kind":"abpf","m":3,"a":1,"b":2,"prefs":[..]}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pf::{ParkingFunction, Params};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum PfJson {
    #[serde(rename = "pf")]
    Classical { m: u32, n: u32, prefs: Vec<u32> },
    #[serde(rename = "abpf")]
    Ab { m: u32, a: u32, b: u32, prefs: Vec<u32> },
}

impl Serialize for ParkingFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let prefs = self.prefs().to_vec();
        let raw = match self.params() {
            Params::Classical(p) => PfJson::Classical { m: p.m(), n: p.n(), prefs },
            Params::Ab(p) => PfJson::Ab {
                m: p.m(),
                a: p.a(),
                b: p.b(),
                prefs,
            },
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParkingFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let built = match PfJson::deserialize(d)? {
            PfJson::Classical { m, n, prefs } => ParkingFunction::classical(m, n, prefs),
            PfJson::Ab { m, a, b, prefs } => ParkingFunction::ab(a, b, m, prefs),
        };
        built.map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_round_trip() {
        let pf = ParkingFunction::classical(3, 4, vec![2, 1, 2]).unwrap();
        let s = serde_json::to_string(&pf).unwrap();
        assert_eq!(s, r#"{"kind":"pf","m":3,"n":4,"prefs":[2,1,2]}"#);
        assert_eq!(serde_json::from_str::<ParkingFunction>(&s).unwrap(), pf);
    }

    #[test]
    fn ab_round_trip() {
        let pf = ParkingFunction::ab(2, 2, 6, vec![10, 3, 2, 9, 3, 1]).unwrap();
        let s = serde_json::to_string(&pf).unwrap();
        assert_eq!(s, r#"{"kind":"abpf","m":6,"a":2,"b":2,"prefs":[10,3,2,9,3,1]}"#);
        assert_eq!(serde_json::from_str::<ParkingFunction>(&s).unwrap(), pf);
    }

    #[test]
    fn invalid_input_is_rejected() {
        assert!(serde_json::from_str::<ParkingFunction>(r#"{"kind":"pf","m":2,"n":2,"prefs":[2,2]}"#).is_err());
        assert!(serde_json::from_str::<ParkingFunction>(r#"{"kind":"pf","m":2,"n":2,"prefs":[1]}"#).is_err());
        assert!(serde_json::from_str::<ParkingFunction>(r#"{"kind":"tree","m":2}"#).is_err());
        assert!(serde_json::from_str::<ParkingFunction>(r#"{"kind":"pf","m":1,"n":1,"prefs":[1],"x":1}"#).is_err());
    }
}
