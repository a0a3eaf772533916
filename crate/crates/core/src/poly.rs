//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Invariant: no stored coefficient is zero and every key has length `arity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(arity);
        p.add_term(vec![0; arity], c.into());
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, 1)
    }

    /// The variable `x_i`, `i` counted from 0.
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable {i} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[i] = 1;
        MultiPoly::monomial(e, 1)
    }

    pub fn monomial(exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c.into());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Adds `c·x^exps` in place.
    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        assert_eq!(exps.len(), self.arity, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut out = MultiPoly::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// `p^0 = 1`, including for the zero polynomial.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.arity);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut out = MultiPoly::zero(self.arity);
        for (m, v) in &self.terms {
            out.add_term(m.0.clone(), v * &c);
        }
        out
    }

    /// Value at an integer point.
    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch(self.arity, point.len()));
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                term *= num_traits::pow(x.clone(), e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `x_i = value`, dropping the variable.
    pub fn eval_var(&self, i: usize, value: impl Into<BigInt>) -> Result<Self> {
        if i >= self.arity {
            return Err(Error::ArityMismatch(self.arity, i + 1));
        }
        let value = value.into();
        let mut out = MultiPoly::zero(self.arity - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e.remove(i);
            out.add_term(e, c * num_traits::pow(value.clone(), k as usize));
        }
        Ok(out)
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.arity {
            return Err(Error::ArityMismatch(self.arity, perm.len()));
        }
        let mut seen = vec![false; self.arity];
        for &p in perm {
            if p >= self.arity || std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadParameter(format!("{perm:?} is not a permutation")));
            }
        }
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.arity];
            for (i, &k) in m.0.iter().enumerate() {
                e[perm[i]] = k;
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Display with the given variable names.
    pub fn display_with<'a, 'b>(&'a self, names: &'b [String]) -> PolyDisplay<'a, 'b> {
        PolyDisplay { poly: self, names }
    }
}

fn default_names(arity: usize) -> Vec<String> {
    match arity {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        _ => (1..=arity).map(|i| format!("x{i}")).collect(),
    }
}

pub struct PolyDisplay<'a, 'b> {
    poly: &'a MultiPoly,
    names: &'b [String],
}

impl fmt::Display for PolyDisplay<'_, '_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = m
                .0
                .iter()
                .zip(self.names)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.arity);
        write!(f, "{}", self.display_with(&names))
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics on arity mismatch; use the `checked_` form for fallible input.
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("polynomial arities must match")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-1)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coef: String,
}

impl Serialize for MultiPoly {
    /// Terms in decreasing grlex order, leading term first.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                exps: m.0.clone(),
                coef: c.to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    /// The arity is read off the first term; an empty list is the zero
    /// polynomial in no variables.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermJson>::deserialize(d)?;
        let arity = terms.first().map_or(0, |t| t.exps.len());
        let mut p = MultiPoly::zero(arity);
        for t in terms {
            if t.exps.len() != arity {
                return Err(D::Error::custom("terms of different arity"));
            }
            let c: BigInt = t.coef.parse().map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.coef)))?;
            p.add_term(t.exps, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }

    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }

    #[test]
    fn square_of_sum() {
        let p = (x() + y()).pow(2);
        assert_eq!(p.to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(p.coefficient(&[1, 1]), BigInt::from(2));
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn zeroth_power_is_one() {
        assert_eq!((x() + y()).pow(0), MultiPoly::one(2));
        assert_eq!(MultiPoly::zero(2).pow(0), MultiPoly::one(2));
        assert!(MultiPoly::zero(2).pow(3).is_zero());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &(x() + y()) - &x();
        assert_eq!(p, y());
        assert_eq!(p.len(), 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn arity_mismatch() {
        let e = x().checked_add(&MultiPoly::var(3, 0)).unwrap_err();
        assert_eq!(e, Error::ArityMismatch(2, 3));
        assert!(x().eval(&[BigInt::from(1)]).is_err());
    }

    #[test]
    fn evaluation_and_specialization() {
        let p = (x().scale(3) + y() + MultiPoly::constant(2, -2)).pow(3);
        let v = p.eval(&[BigInt::from(2), BigInt::from(-1)]).unwrap();
        assert_eq!(v, BigInt::from(27));
        let q = p.eval_var(0, 2).unwrap();
        assert_eq!(q.arity(), 1);
        assert_eq!(q.eval(&[BigInt::from(-1)]).unwrap(), BigInt::from(27));
    }

    #[test]
    fn permute_swaps_variables() {
        let p = &x().pow(2) * &y();
        assert_eq!(p.permute(&[1, 0]).unwrap(), &y().pow(2) * &x());
        assert!(p.permute(&[0, 0]).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        let p = &MultiPoly::constant(2, 5) - &x().scale(2);
        assert_eq!(p.to_string(), "-2*x + 5");
        assert_eq!(MultiPoly::var(3, 2).to_string(), "x3");
    }

    #[test]
    fn large_coefficients_are_exact() {
        let p = (x() + MultiPoly::constant(2, 10)).pow(40);
        let at_one = p.eval(&[BigInt::one(), BigInt::zero()]).unwrap();
        assert_eq!(at_one, num_traits::pow(BigInt::from(11), 40));
    }

    #[test]
    fn serde_grlex_order() {
        let p = &(x() + y()).pow(2) + &MultiPoly::constant(2, 7);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"[{"exps":[2,0],"coef":"1"},{"exps":[1,1],"coef":"2"},{"exps":[0,2],"coef":"1"},{"exps":[0,0],"coef":"7"}]"#
        );
        assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), p);
        assert!(serde_json::from_str::<MultiPoly>(r#"[{"exps":[1],"coef":"1"},{"exps":[1,0],"coef":"1"}]"#).is_err());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..5).prop_map(|terms| {
            let mut p = MultiPoly::zero(3);
            for ((a, b, c), k) in terms {
                p.add_term(vec![a, b, c], BigInt::from(k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(p.pow(3), &(&p * &p) * &p);
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in small_poly(), q in small_poly(), pt in prop::collection::vec(-3i64..=3, 3)) {
            let pt: Vec<BigInt> = pt.into_iter().map(BigInt::from).collect();
            let pq = (&p * &q).eval(&pt).unwrap();
            prop_assert_eq!(pq, p.eval(&pt).unwrap() * q.eval(&pt).unwrap());
        }
    }
}
