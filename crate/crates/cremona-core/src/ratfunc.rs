//! Reduced rational functions over Q(i).
//!
//! A [`RationalFunction`] keeps `gcd(num, den)` a unit and the denominator's
//! graded-lex leading coefficient equal to 1, so equality of values is
//! structural equality of the two polynomials. The zero function is `0/1`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, VarSpace};
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Builds `num/den` in canonical reduced form (the `reduce_fraction`
    /// operation). Errors when `den` is identically zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominatorPoly);
        }
        if num.is_zero() {
            return Ok(RationalFunction { den: MultiPoly::one(num.vars()), num });
        }
        let g = MultiPoly::gcd(&num, &den)?;
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.divide_exact(&g).expect("gcd divides numerator"),
                den.divide_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction { den: MultiPoly::one(p.vars()), num: p }
    }

    pub fn constant(vars: &VarSpace, c: GaussianRational) -> Self {
        RationalFunction::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn zero(vars: &VarSpace) -> Self {
        RationalFunction::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: &VarSpace) -> Self {
        RationalFunction::from_poly(MultiPoly::one(vars))
    }

    pub fn var(vars: &VarSpace, idx: usize) -> Self {
        RationalFunction::from_poly(MultiPoly::var(vars, idx))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &VarSpace {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = self.num.constant_value()?;
            let d = self.den.constant_value()?;
            Some(n.div_ref(&d).expect("denominator nonzero"))
        } else {
            None
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let num = self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den));
        let den = self.den.mul_ref(&other.den);
        RationalFunction::new(num, den).expect("denominators nonzero")
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let num = self.num.mul_ref(&other.den).sub_ref(&other.num.mul_ref(&self.den));
        let den = self.den.mul_ref(&other.den);
        RationalFunction::new(num, den).expect("denominators nonzero")
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        RationalFunction::new(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
            .expect("denominators nonzero")
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::ZeroDenominatorPoly);
        }
        RationalFunction::new(self.num.mul_ref(&other.den), self.den.mul_ref(&other.num))
    }

    pub fn neg_ref(&self) -> Self {
        RationalFunction { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominatorPoly);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        RationalFunction::new(self.num.scale(c), self.den.clone()).expect("denominator nonzero")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RationalFunction::one(self.vars());
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Partial derivative as a reduced rational function.
    pub fn derivative(&self, idx: usize) -> Self {
        let n = self
            .num
            .derivative(idx)
            .mul_ref(&self.den)
            .sub_ref(&self.num.mul_ref(&self.den.derivative(idx)));
        let d = self.den.mul_ref(&self.den);
        RationalFunction::new(n, d).expect("denominator nonzero")
    }

    /// Evaluates at a point; `None` on a pole (denominator zero there).
    pub fn eval(&self, point: &[GaussianRational]) -> Option<GaussianRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point).div_ref(&d).expect("nonzero"))
    }

    /// Substitutes rational functions for the variables (composition).
    pub fn subst(&self, args: &[RationalFunction]) -> Result<Self> {
        let n = eval_poly_at_rationals(&self.num, args);
        let d = eval_poly_at_rationals(&self.den, args);
        n.div_ref(&d)
    }
}

/// Evaluates a polynomial at rational-function arguments with a single final
/// reduction: `p(n1/d1, ...) = (sum_m c_m prod n_i^{e_i} d_i^{E_i-e_i}) / prod d_i^{E_i}`.
pub fn eval_poly_at_rationals(p: &MultiPoly, args: &[RationalFunction]) -> RationalFunction {
    assert_eq!(args.len(), p.vars().len());
    let target = args[0].vars().clone();
    let max_e: Vec<u32> = (0..args.len())
        .map(|i| p.terms().map(|(m, _)| m.exp(i)).max().unwrap_or(0))
        .collect();
    // Power ladders for numerators and denominators.
    let ladder = |base: &MultiPoly, up_to: u32| -> Vec<MultiPoly> {
        let mut l = Vec::with_capacity(up_to as usize + 1);
        l.push(MultiPoly::one(&target));
        for e in 1..=up_to {
            let next = l[(e - 1) as usize].mul_ref(base);
            l.push(next);
        }
        l
    };
    let num_ladders: Vec<Vec<MultiPoly>> =
        args.iter().enumerate().map(|(i, a)| ladder(a.num(), max_e[i])).collect();
    let den_ladders: Vec<Vec<MultiPoly>> =
        args.iter().enumerate().map(|(i, a)| ladder(a.den(), max_e[i])).collect();

    let mut acc = MultiPoly::zero(&target);
    for (m, c) in p.terms() {
        let mut t = MultiPoly::constant(&target, c.clone());
        for i in 0..args.len() {
            let e = m.exp(i);
            t = t.mul_ref(&num_ladders[i][e as usize]);
            t = t.mul_ref(&den_ladders[i][(max_e[i] - e) as usize]);
        }
        acc = acc.add_ref(&t);
    }
    let mut den = MultiPoly::one(&target);
    for (i, l) in den_ladders.iter().enumerate() {
        den = den.mul_ref(&l[max_e[i] as usize]);
    }
    RationalFunction::new(acc, den).expect("denominators nonzero")
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

macro_rules! rf_binop {
    ($trait:ident, $method:ident, $impl_method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$impl_method(&rhs)
            }
        }
        impl<'a> $trait<&'a RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                self.$impl_method(rhs)
            }
        }
    };
}

rf_binop!(Add, add, add_ref);
rf_binop!(Sub, sub, sub_ref);
rf_binop!(Mul, mul, mul_ref);

impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        self.div_ref(&rhs).expect("division by zero function")
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(vars: &VarSpace, s: &str) -> MultiPoly {
        MultiPoly::parse(vars, s).unwrap()
    }

    fn rf(vars: &VarSpace, n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(pp(vars, n), pp(vars, d)).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let v = VarSpace::single("x");
        assert_eq!(rf(&v, "x^2-1", "x-1"), rf(&v, "x+1", "1"));

        let p = VarSpace::projective();
        assert_eq!(rf(&p, "x0^2*x1*x2", "x0*x2^3"), rf(&p, "x0*x1", "x2^2"));
    }

    #[test]
    fn reduce_is_idempotent() {
        let v = VarSpace::affine();
        let f = rf(&v, "x^2*y-y", "2*x*y+2*y");
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn zero_denominator_rejected() {
        let v = VarSpace::affine();
        assert!(RationalFunction::new(pp(&v, "x"), MultiPoly::zero(&v)).is_err());
    }

    #[test]
    fn canonical_denominator_scaling() {
        let v = VarSpace::affine();
        let a = rf(&v, "x", "2*y");
        let b = rf(&v, "1/2*x", "y");
        assert_eq!(a, b);
    }

    #[test]
    fn product_cancellation_property() {
        let v = VarSpace::affine();
        let ps = ["x^2+y", "x*y-1", "x+y+1", "y^2-x", "2*x-3"];
        for p in &ps {
            for q in &ps {
                let prod = pp(&v, p).mul_ref(&pp(&v, q));
                let reduced = RationalFunction::new(prod, pp(&v, q)).unwrap();
                assert_eq!(reduced, RationalFunction::from_poly(pp(&v, p)), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn arithmetic_and_derivative() {
        let v = VarSpace::affine();
        let f = rf(&v, "x", "y");
        let g = rf(&v, "y", "x");
        assert_eq!(f.mul_ref(&g), RationalFunction::one(&v));
        let s = f.add_ref(&g);
        assert_eq!(s, rf(&v, "x^2+y^2", "x*y"));
        // d/dx (x/y) = 1/y
        assert_eq!(f.derivative(0), rf(&v, "1", "y"));
        // d/dy (x/y) = -x/y^2
        assert_eq!(f.derivative(1), rf(&v, "-x", "y^2"));
    }

    #[test]
    fn composition() {
        let v = VarSpace::affine();
        // (x/y) composed with (y, x/y) gives y^2/x
        let f = rf(&v, "x", "y");
        let args = [rf(&v, "y", "1"), rf(&v, "x", "y")];
        assert_eq!(f.subst(&args).unwrap(), rf(&v, "y^2", "x"));
    }
}
