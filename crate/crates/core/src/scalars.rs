//! Exact coefficients in ℚ(ε), ε² = −1.
//!
//! Rationals keep an `i64` fast path and fall back to `BigRational` on
//! overflow. Values are always canonical, so derived equality is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

/// Rational number in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

fn small_from_i128(n: i128, d: i128) -> Rational {
    debug_assert!(d != 0);
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / g, d / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => Rational::Small(n, d),
        _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Result<Self, ScalarError> {
        if d == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(small_from_i128(n as i128, d as i128))
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new already reduces; demote when it fits.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        match self {
            Rational::Small(0, _) => Err(ScalarError::DivisionByZero),
            Rational::Small(n, d) => Ok(small_from_i128(*d as i128, *n as i128)),
            Rational::Big(r) => Ok(Rational::from_big(r.recip())),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Rational::Small(s, 1),
                        None => small_from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                small_from_i128(n, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(p) => Rational::Small(p, 1),
                        None => small_from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                small_from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => small_from_i128(-(*n as i128), *d as i128),
            },
            Rational::Big(r) => Rational::from_big(-r.clone()),
        }
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, o: &Rational) -> Rational {
        self + &(-o)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for Rational {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let t = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

/// a + b·ε with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational::from_int(n), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self, ScalarError> {
        Ok(Self::new(Rational::new(n, d)?, Rational::zero()))
    }

    /// The imaginary unit ε.
    pub fn eps() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re == Rational::one()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// a² + b², the norm down to ℚ.
    pub fn norm(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        let nrm = self.norm();
        let k = nrm.recip()?;
        let c = self.conj();
        Ok(Self::new(&c.re * &k, &c.im * &k))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self * &o.inv()?)
    }

    /// The value as an integer when it is one (used for real integral checks).
    pub fn as_integer(&self) -> Option<i64> {
        match (&self.re, &self.im) {
            (Rational::Small(n, 1), Rational::Small(0, _)) => Some(*n),
            _ => None,
        }
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::new(&self.re * &o.re, Rational::zero());
        }
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        GaussianRational::new(re, im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

macro_rules! owned_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { (&self).$m(&o) }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational { (&self).$m(o) }
        }
    )*};
}
owned_binops!(Add add, Sub sub, Mul mul);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        *self = &*self + o;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        *self = &*self - o;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}ε", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}ε", self.re, -&self.im)
                } else {
                    write!(f, "{} + {}ε", self.re, self.im)
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { re: self.re.to_string(), im: self.im.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let re = w.re.parse().map_err(D::Error::custom)?;
        let im = w.im.parse().map_err(D::Error::custom)?;
        Ok(GaussianRational::new(re, im))
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::one()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::new(Rational::from_int(a), Rational::from_int(b))
    }

    #[test]
    fn eps_squared() {
        let e = GaussianRational::eps();
        assert_eq!(&e * &e, g(-1, 0));
    }

    #[test]
    fn half_plus_eps() {
        let a = GaussianRational::new(Rational::new(1, 2).unwrap(), Rational::one());
        let b = GaussianRational::new(Rational::new(1, 2).unwrap(), Rational::from_int(-1));
        assert_eq!(&a + &b, g(1, 0));
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(g(1, 1).checked_div(&g(0, 0)), Err(ScalarError::DivisionByZero));
        assert_eq!(Rational::new(3, 0), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Rational::Big(_)));
        let back = &sq * &big.recip().unwrap();
        assert_eq!(back, big);
        let min = Rational::from_int(i64::MIN);
        assert_eq!(-&(-&min), min);
    }

    #[test]
    fn json_round_trip() {
        let x = GaussianRational::new(Rational::new(-3, 6).unwrap(), Rational::from_int(2));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"re":"-1/2","im":"2"}"#);
        let y: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let z: GaussianRational = serde_json::from_str(r#"{"re":"4/-8","im":"0/5"}"#).unwrap();
        assert_eq!(z, GaussianRational::from_ratio(-1, 2).unwrap());
    }

    fn arb_q() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (-50i64..50, 1i64..12).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
        ]
    }

    fn arb_g() -> impl Strategy<Value = GaussianRational> {
        (arb_q(), arb_q()).prop_map(|(a, b)| GaussianRational::new(a, b))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_g(), b in arb_g(), c in arb_g()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
            }
        }

        #[test]
        fn canonical_form_is_stable(n in any::<i64>(), d in 1i64..i64::MAX) {
            let q = Rational::new(n, d).unwrap();
            let again: Rational = q.to_string().parse().unwrap();
            prop_assert_eq!(&again, &q);
            prop_assert_eq!(&q + &Rational::zero(), q);
        }
    }
}
