//! Exact scalars: the field Q(i) of Gaussian rationals.
//!
//! A [`GaussianRational`] is `re + im*i` with arbitrary-precision rational
//! parts kept in lowest terms (num-rational maintains that invariant).
//! Arithmetic never rounds. The text grammar accepted by [`GaussianRational::parse`]
//! and emitted by `Display` is
//!
//! ```text
//! RAT | RAT "i" | RAT ("+"|"-") RAT "i"
//! RAT = ["+"|"-"] digits ["/" positive-digits]
//! ```
//!
//! so `3/7`, `-1`, `1+2i`, `-2/3-1/5i` are all valid and round-trip exactly.

use alloc::format;
use alloc::string::ToString;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { re: int_ratio(n), im: BigRational::zero() }
    }

    /// `n/d`, panicking on `d == 0` (test/constant convenience).
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    /// `a + b*i` from integer parts.
    pub fn from_ints(a: i64, b: i64) -> Self {
        GaussianRational { re: int_ratio(a), im: int_ratio(b) }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// The field norm `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let n = self.norm();
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        // Most coefficients met in practice are real; skip the complex cross
        // terms when either side has no imaginary part.
        if self.im.is_zero() {
            if self.re.is_zero() {
                return GaussianRational::zero();
            }
            return GaussianRational {
                re: rat_mul(&self.re, &other.re),
                im: rat_mul(&self.re, &other.im),
            };
        }
        if other.im.is_zero() {
            return GaussianRational {
                re: rat_mul(&other.re, &self.re),
                im: rat_mul(&other.re, &self.im),
            };
        }
        GaussianRational {
            re: rat_mul(&self.re, &other.re) - rat_mul(&self.im, &other.im),
            im: rat_mul(&self.re, &other.im) + rat_mul(&self.im, &other.re),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        GaussianRational { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        GaussianRational { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Multiplicative order when `self` is a root of unity in Q(i).
    ///
    /// The only roots of unity in Q(i) are `1, -1, i, -i`, so the answer is
    /// one of 1, 2, 4, or `None`.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.is_one() {
            Some(1)
        } else if self.im.is_zero() && self.re == -BigRational::one() {
            Some(2)
        } else if self.re.is_zero() && (self.im.is_one() || self.im == -BigRational::one()) {
            Some(4)
        } else {
            None
        }
    }

    /// Exact square root in Q(i), when one exists.
    ///
    /// The branch is canonical: the returned root has positive real part, or
    /// zero real part and positive imaginary part.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        let cand = if self.im.is_zero() {
            if self.re.is_positive() {
                GaussianRational { re: rat_sqrt(&self.re)?, im: BigRational::zero() }
            } else {
                GaussianRational { re: BigRational::zero(), im: rat_sqrt(&(-self.re.clone()))? }
            }
        } else {
            // (u + v i)^2 = a + b i  =>  u^2 = (a + |z|)/2,  v = b/(2u).
            let r = rat_sqrt(&self.norm())?;
            let u2 = (&self.re + &r) / int_ratio(2);
            let u = rat_sqrt(&u2)?;
            if u.is_zero() {
                return None;
            }
            let v = &self.im / (&u * int_ratio(2));
            GaussianRational { re: u, im: v }
        };
        if cand.mul_ref(&cand) != *self {
            return None;
        }
        Some(canonical_root(cand))
    }

    /// Parses the scalar text grammar.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::ScalarParse(text.to_string()));
        }
        let bytes = s.as_bytes();
        let (first, rest) = parse_rat(s).ok_or_else(|| Error::ScalarParse(s.to_string()))?;
        let first = first?;
        if rest.is_empty() {
            return Ok(GaussianRational { re: first, im: BigRational::zero() });
        }
        if rest == "i" {
            return Ok(GaussianRational { re: BigRational::zero(), im: first });
        }
        // RAT (+|-) RAT i
        let sep = rest.as_bytes()[0];
        if sep != b'+' && sep != b'-' {
            return Err(Error::ScalarParse(rest.to_string()));
        }
        let _ = bytes;
        let (second, tail) =
            parse_rat(&rest[1..]).ok_or_else(|| Error::ScalarParse(rest.to_string()))?;
        let mut second = second?;
        if tail != "i" {
            return Err(Error::ScalarParse(tail.to_string()));
        }
        if sep == b'-' {
            second = -second;
        }
        Ok(GaussianRational { re: first, im: second })
    }
}

/// Canonical sign choice for square roots: positive real part, or zero real
/// part and positive imaginary part.
fn canonical_root(w: GaussianRational) -> GaussianRational {
    let flip = w.re.is_negative() || (w.re.is_zero() && w.im.is_negative());
    if flip {
        -w
    } else {
        w
    }
}

fn int_ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new_raw(sn, sd))
    } else {
        None
    }
}

/// Multiply rationals with a fast path for integer operands (no gcd pass).
fn rat_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.denom().is_one() && b.denom().is_one() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// Parses one RAT token from the front of `s`; returns the parsed value and
/// the unconsumed tail. `None` means no token was present at all.
fn parse_rat(s: &str) -> Option<(Result<BigRational>, &str)> {
    let bytes = s.as_bytes();
    let mut idx = 0;
    if idx < bytes.len() && (bytes[idx] == b'+' || bytes[idx] == b'-') {
        idx += 1;
    }
    let digits_start = idx;
    while idx < bytes.len() && bytes[idx].is_ascii_digit() {
        idx += 1;
    }
    if idx == digits_start {
        return None;
    }
    let mut numer_end = idx;
    let mut denom: Option<(usize, usize)> = None;
    if idx < bytes.len() && bytes[idx] == b'/' {
        idx += 1;
        let den_start = idx;
        while idx < bytes.len() && bytes[idx].is_ascii_digit() {
            idx += 1;
        }
        if idx == den_start {
            return None;
        }
        denom = Some((den_start, idx));
        numer_end = den_start - 1;
    }
    let numer: BigInt = match s[..numer_end].parse() {
        Ok(v) => v,
        Err(_) => return Some((Err(Error::ScalarParse(s[..numer_end].to_string())), "")),
    };
    let value = match denom {
        None => Ok(BigRational::from_integer(numer)),
        Some((a, b)) => {
            let den: BigInt = match s[a..b].parse() {
                Ok(v) => v,
                Err(_) => return Some((Err(Error::ScalarParse(s[a..b].to_string())), "")),
            };
            if den.is_zero() {
                Err(Error::ScalarParse(format!("{}: zero denominator", &s[..b])))
            } else {
                Ok(BigRational::new(numer, den))
            }
        }
    };
    Some((value, &s[idx..]))
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl core::str::FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GaussianRational::parse(s)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl<'a> Neg for &'a GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl_method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$impl_method(&rhs)
            }
        }
        impl<'a> $trait<&'a GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                self.$impl_method(rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        self.div_ref(&rhs).expect("division by zero")
    }
}

impl<'a> Div<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'a GaussianRational) -> GaussianRational {
        self.div_ref(rhs).expect("division by zero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn q(s: &str) -> GaussianRational {
        GaussianRational::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(q("3/7"), GaussianRational::from_ratio(3, 7));
        assert_eq!(q("-1"), GaussianRational::from_int(-1));
        assert_eq!(q("1+2i"), GaussianRational::from_ints(1, 2));
        assert_eq!(q("1i"), GaussianRational::i());
        assert_eq!(q("-2/3-1/5i").im(), &BigRational::new(BigInt::from(-1), BigInt::from(5)));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "i", "1+", "1 + 2i", "2/0", "1+2j", "3//4", "1+2i+3i"] {
            assert!(GaussianRational::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn format_round_trip() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64 - (1 << 30)
        };
        for _ in 0..1000 {
            let v = GaussianRational::new(
                BigRational::new(BigInt::from(next()), BigInt::from(next().abs() + 1)),
                BigRational::new(BigInt::from(next()), BigInt::from(next().abs() + 1)),
            );
            let text = v.to_string();
            assert_eq!(q(&text), v, "round trip failed for {text}");
        }
    }

    #[test]
    fn field_arithmetic() {
        let a = q("1+2i");
        let b = q("3-1i");
        assert_eq!(&a + &b, q("4+1i"));
        assert_eq!(&a * &b, q("5+5i"));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert!(a.div_ref(&GaussianRational::zero()).is_err());
    }

    #[test]
    fn powers_and_orders() {
        assert_eq!(GaussianRational::i().pow(2), GaussianRational::from_int(-1));
        assert_eq!(GaussianRational::i().root_of_unity_order(), Some(4));
        assert_eq!(GaussianRational::from_int(-1).root_of_unity_order(), Some(2));
        assert_eq!(GaussianRational::one().root_of_unity_order(), Some(1));
        assert_eq!(q("3/5+4/5i").root_of_unity_order(), None);
        assert_eq!(q("2").root_of_unity_order(), None);
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(q("-1").sqrt(), Some(GaussianRational::i()));
        assert_eq!(q("4").sqrt(), Some(q("2")));
        assert_eq!(q("2i").sqrt(), Some(q("1+1i")));
        assert_eq!(q("-4").sqrt(), Some(q("2i")));
        assert_eq!(q("2").sqrt(), None);
        assert_eq!(q("1i").sqrt(), None);
        let vals: Vec<GaussianRational> = ["9/4", "-9/4", "-5+12i"].iter().map(|s| q(s)).collect();
        for v in vals {
            let s = v.sqrt().unwrap();
            assert_eq!(&s * &s, v);
        }
    }
}
