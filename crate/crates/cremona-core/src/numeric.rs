//! Fixed-point complex arithmetic for the sampling fallback.
//!
//! When split-root data leaves Q(i) (irrational `m`), fibration identities
//! are checked at sample points instead of symbolically. The samples are
//! evaluated in fixed-point arithmetic over big integers with a 192-bit
//! fractional part, comfortably beyond the 1e-30 acceptance tolerance, and
//! with no platform floating point involved.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalar::GaussianRational;

/// Binary digits of the fractional part.
pub const SCALE_BITS: u32 = 192;

/// A real fixed-point number `v / 2^SCALE_BITS`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fix(BigInt);

impl Fix {
    pub fn zero() -> Self {
        Fix(BigInt::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Fix(BigInt::from(n) << SCALE_BITS)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Fix((r.numer() << SCALE_BITS) / r.denom())
    }

    /// `1 / 10^k` as fixed point (tolerance constants).
    pub fn inverse_power_of_ten(k: u32) -> Self {
        Fix((BigInt::from(1) << SCALE_BITS) / BigInt::from(10u32).pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &Fix) -> Fix {
        Fix(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fix) -> Fix {
        Fix(&self.0 - &o.0)
    }

    pub fn mul(&self, o: &Fix) -> Fix {
        Fix((&self.0 * &o.0) >> SCALE_BITS)
    }

    pub fn div(&self, o: &Fix) -> Option<Fix> {
        if o.0.is_zero() {
            return None;
        }
        Some(Fix((&self.0 << SCALE_BITS) / &o.0))
    }

    pub fn neg(&self) -> Fix {
        Fix(-&self.0)
    }

    pub fn abs(&self) -> Fix {
        Fix(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Truncated square root of a non-negative value.
    pub fn sqrt(&self) -> Option<Fix> {
        if self.0.is_negative() {
            return None;
        }
        Some(Fix((&self.0 << SCALE_BITS).sqrt()))
    }

    pub fn lt(&self, o: &Fix) -> bool {
        self.0 < o.0
    }
}

/// Complex fixed-point value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixComplex {
    pub re: Fix,
    pub im: Fix,
}

impl FixComplex {
    pub fn zero() -> Self {
        FixComplex { re: Fix::zero(), im: Fix::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        FixComplex { re: Fix::from_int(n), im: Fix::zero() }
    }

    pub fn from_scalar(g: &GaussianRational) -> Self {
        FixComplex { re: Fix::from_rational(g.re()), im: Fix::from_rational(g.im()) }
    }

    pub fn add(&self, o: &FixComplex) -> FixComplex {
        FixComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &FixComplex) -> FixComplex {
        FixComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &FixComplex) -> FixComplex {
        FixComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn neg(&self) -> FixComplex {
        FixComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn norm2(&self) -> Fix {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Magnitude (truncated).
    pub fn abs(&self) -> Fix {
        self.norm2().sqrt().expect("norm is non-negative")
    }

    pub fn div(&self, o: &FixComplex) -> Option<FixComplex> {
        let n = o.norm2();
        if n.is_zero() {
            return None;
        }
        let conj = FixComplex { re: o.re.clone(), im: o.im.neg() };
        let prod = self.mul(&conj);
        Some(FixComplex { re: prod.re.div(&n)?, im: prod.im.div(&n)? })
    }

    /// Principal square root (nonnegative real part; if the real part is
    /// zero, nonnegative imaginary part).
    pub fn sqrt(&self) -> FixComplex {
        if self.im.is_zero() {
            if self.re.is_negative() {
                return FixComplex {
                    re: Fix::zero(),
                    im: self.re.abs().sqrt().expect("non-negative"),
                };
            }
            return FixComplex { re: self.re.sqrt().expect("non-negative"), im: Fix::zero() };
        }
        let r = self.abs();
        let two = Fix::from_int(2);
        let u = r.add(&self.re).div(&two).expect("two is nonzero").sqrt().expect("non-negative");
        if u.is_zero() {
            return FixComplex { re: Fix::zero(), im: self.re.abs().sqrt().expect("nonneg") };
        }
        let v = self.im.div(&u.mul(&two)).expect("u nonzero");
        FixComplex { re: u, im: v }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn basic_arithmetic() {
        let a = Fix::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(3)));
        let b = Fix::from_int(3);
        let prod = a.mul(&b);
        let err = prod.sub(&Fix::from_int(1)).abs();
        assert!(err.lt(&Fix::inverse_power_of_ten(50)));
    }

    #[test]
    fn complex_sqrt() {
        // sqrt(-1) = i
        let z = FixComplex::from_int(-1);
        let s = z.sqrt();
        let err = s.mul(&s).sub(&z);
        assert!(err.norm2().lt(&Fix::inverse_power_of_ten(50)));

        // sqrt of a general complex value squares back
        let w = FixComplex { re: Fix::from_int(3), im: Fix::from_int(-4) };
        let s = w.sqrt();
        let err = s.mul(&s).sub(&w);
        assert!(err.norm2().lt(&Fix::inverse_power_of_ten(50)));
        assert!(!s.re.is_negative());
    }

    #[test]
    fn division() {
        let a = FixComplex { re: Fix::from_int(1), im: Fix::from_int(2) };
        let b = FixComplex { re: Fix::from_int(3), im: Fix::from_int(-1) };
        let q = a.div(&b).unwrap();
        let back = q.mul(&b).sub(&a);
        assert!(back.norm2().lt(&Fix::inverse_power_of_ten(50)));
        assert!(a.div(&FixComplex::zero()).is_none());
    }
}
