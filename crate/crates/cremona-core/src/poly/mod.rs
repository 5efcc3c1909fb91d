//! Exact multivariate polynomials over Q(i).
//!
//! Polynomials live in a fixed [`VarSpace`] of at most three variables
//! (`x0,x1,x2` for the projective plane, `x,y` for the affine chart, single
//! letters for univariate work). Terms are held in a `BTreeMap` keyed by
//! packed exponent vectors under the graded-lexicographic order with
//! `x0 < x1 < x2`, so two equal polynomials have identical term maps and
//! equality is structural. Zero coefficients are never stored.

mod gcd;
mod modp;
mod modular_gcd;
mod text;

pub use gcd::{reduce_common_factor, GcdProbe};
pub use modp::ProbeRng;

/// Deterministic small RNG used for sampling (probe lines, numeric checks).
pub fn probe_rng(seed: u64) -> ProbeRng {
    ProbeRng::new(seed)
}

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Maximum number of variables a space may hold (packed-exponent limit).
pub const MAX_VARS: usize = 3;

const FIELD_BITS: u32 = 21;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;
/// Exponents must stay below this bound so packed addition cannot carry.
pub const MAX_EXPONENT: u32 = 1 << 20;

/// An ordered set of variable names shared by a family of polynomials.
#[derive(Clone, Debug)]
pub struct VarSpace(Arc<Vec<String>>);

impl VarSpace {
    pub fn new(names: &[&str]) -> Self {
        assert!(
            !names.is_empty() && names.len() <= MAX_VARS,
            "a variable space holds 1 to {MAX_VARS} variables"
        );
        VarSpace(Arc::new(names.iter().map(|s| String::from(*s)).collect()))
    }

    /// Homogeneous coordinates `x0, x1, x2` of the projective plane.
    pub fn projective() -> Self {
        VarSpace::new(&["x0", "x1", "x2"])
    }

    /// The affine chart variables `x, y`.
    pub fn affine() -> Self {
        VarSpace::new(&["x", "y"])
    }

    /// A single variable.
    pub fn single(name: &str) -> Self {
        VarSpace::new(&[name])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for VarSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSpace {}

/// A packed exponent vector: 21 bits per variable, variable 0 lowest.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(exps: &[u32]) -> Self {
        let mut packed = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(i < MAX_VARS && e < MAX_EXPONENT, "exponent out of range");
            packed |= (e as u64) << (FIELD_BITS * i as u32);
        }
        Mono(packed)
    }

    pub fn var(idx: usize) -> Self {
        Mono::from_exps(&[0, 0, 0][..=idx]).with_exp(idx, 1)
    }

    pub fn exp(self, idx: usize) -> u32 {
        ((self.0 >> (FIELD_BITS * idx as u32)) & FIELD_MASK) as u32
    }

    pub fn with_exp(self, idx: usize, e: u32) -> Self {
        assert!(e < MAX_EXPONENT);
        let shift = FIELD_BITS * idx as u32;
        Mono((self.0 & !(FIELD_MASK << shift)) | ((e as u64) << shift))
    }

    pub fn total_degree(self) -> u32 {
        self.exp(0) + self.exp(1) + self.exp(2)
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Product of monomials. Packed addition is safe below [`MAX_EXPONENT`].
    pub fn mul(self, other: Mono) -> Mono {
        debug_assert!(
            (0..MAX_VARS).all(|i| self.exp(i) + other.exp(i) < MAX_EXPONENT),
            "monomial exponent overflow"
        );
        Mono(self.0 + other.0)
    }

    pub fn divides(self, other: Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`, assuming divisibility.
    pub fn div_into(self, other: Mono) -> Mono {
        debug_assert!(self.divides(other));
        Mono(other.0 - self.0)
    }

    pub fn gcd(self, other: Mono) -> Mono {
        let mut m = Mono(0);
        for i in 0..MAX_VARS {
            m = m.with_exp(i, self.exp(i).min(other.exp(i)));
        }
        m
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded lexicographic: total degree first, then the exponent
        // vector read from x0 on (x0 dominant).
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exp(0).cmp(&other.exp(0)))
            .then_with(|| self.exp(1).cmp(&other.exp(1)))
            .then_with(|| self.exp(2).cmp(&other.exp(2)))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.exp(0), self.exp(1), self.exp(2))
    }
}

/// A sparse exact multivariate polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSpace,
    terms: BTreeMap<Mono, GaussianRational>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSpace) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSpace, c: GaussianRational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::ONE, c);
        }
        p
    }

    pub fn one(vars: &VarSpace) -> Self {
        MultiPoly::constant(vars, GaussianRational::one())
    }

    pub fn var(vars: &VarSpace, idx: usize) -> Self {
        assert!(idx < vars.len());
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(Mono::ONE.with_exp(idx, 1), GaussianRational::one());
        p
    }

    pub fn var_named(vars: &VarSpace, name: &str) -> Self {
        let idx = vars.index_of(name).expect("unknown variable");
        MultiPoly::var(vars, idx)
    }

    pub fn monomial(vars: &VarSpace, exps: &[u32], c: GaussianRational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::from_exps(exps), c);
        }
        p
    }

    /// Builds `c0 + c1*v1 + c2*v2 + ...` in the given space (linear form).
    pub fn linear_form(vars: &VarSpace, constant: GaussianRational, coeffs: &[GaussianRational]) -> Self {
        let mut p = MultiPoly::constant(vars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Mono::ONE.with_exp(i, 1), c.clone());
            }
        }
        p
    }

    pub fn vars(&self) -> &VarSpace {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &GaussianRational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::ONE))
    }

    /// The constant value when `is_constant()`, else `None`.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.terms.is_empty() {
            Some(GaussianRational::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::ONE).cloned()
        } else {
            None
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(idx)).max().unwrap_or(0)
    }

    /// Leading term in the graded-lex order.
    pub fn leading(&self) -> Option<(Mono, &GaussianRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Mono) -> GaussianRational {
        self.terms.get(&m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `Some(d)` when every term has total degree `d`. Zero counts as
    /// homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = match it.next() {
            None => return Some(0),
            Some(m) => m.total_degree(),
        };
        if it.all(|m| m.total_degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Mono, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_vars(&self, other: &Self) {
        assert!(self.vars == other.vars, "operands live in different variable spaces");
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (*m, k.mul_ref(c))).collect(),
        }
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: Mono, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(mm, k)| (mm.mul(m), k.mul_ref(c))).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.leading().unwrap();
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.leading().unwrap();
            return self.mul_term(m, c);
        }
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc: hashbrown::HashMap<Mono, GaussianRational, MonoHashBuilder> =
            hashbrown::HashMap::with_capacity_and_hasher(
                large.terms.len() + small.terms.len(),
                MonoHashBuilder,
            );
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(*m2);
                let prod = c1.mul_ref(c2);
                match acc.entry(m) {
                    hashbrown::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    hashbrown::hash_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add_ref(&prod);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        MultiPoly { vars: self.vars.clone(), terms: acc.into_iter().collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return MultiPoly::one(&self.vars);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(idx);
            if e > 0 {
                let c2 = c.mul_ref(&GaussianRational::from_int(e as i64));
                out.add_term(m.with_exp(idx, e - 1), c2);
            }
        }
        out
    }

    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t.mul_ref(&v.pow(e));
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitutes every variable by the given polynomial (all arguments in
    /// one common target space). Powers of the arguments are cached.
    pub fn subst(&self, args: &[MultiPoly]) -> MultiPoly {
        assert_eq!(args.len(), self.vars.len());
        let target = args[0].vars.clone();
        for a in args {
            assert!(a.vars == target);
        }
        let mut ladders: Vec<Vec<MultiPoly>> = Vec::with_capacity(args.len());
        for (i, a) in args.iter().enumerate() {
            let max_e = self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0) as usize;
            let mut ladder = Vec::with_capacity(max_e + 1);
            ladder.push(MultiPoly::one(&target));
            for e in 1..=max_e {
                let next = ladder[e - 1].mul_ref(a);
                ladder.push(next);
            }
            ladders.push(ladder);
        }
        let mut acc = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for i in 0..args.len() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = t.mul_ref(&ladders[i][e]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Renames this polynomial into another space of the same arity.
    pub fn cast_into(&self, vars: &VarSpace) -> MultiPoly {
        assert_eq!(vars.len(), self.vars.len());
        MultiPoly { vars: vars.clone(), terms: self.terms.clone() }
    }

    /// The greatest monomial dividing every term (unit monomial for zero).
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Mono::ONE,
            Some(m) => *m,
        };
        it.fold(first, |acc, m| acc.gcd(*m))
    }

    /// Divides by a monomial, assuming it divides every term.
    pub fn div_monomial(&self, m: Mono) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(mm, c)| (m.div_into(*mm), c.clone())).collect(),
        }
    }

    /// Normalizes the leading (graded-lex) coefficient to 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    let inv = lc.inv().expect("nonzero leading coefficient");
                    self.scale(&inv)
                }
            }
        }
    }

    /// Exact division; fails unless the remainder is zero.
    pub fn divide_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        self.assert_same_vars(divisor);
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(MultiPoly::zero(&self.vars));
        }
        let (dm, dc) = divisor.leading().unwrap();
        let dc_inv = dc.inv().expect("nonzero");
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(Error::InexactDivision);
            }
            let qm = dm.div_into(rm);
            let qc = rc.mul_ref(&dc_inv);
            // rem -= (qm, qc) * divisor
            for (m, c) in &divisor.terms {
                rem.add_term(m.mul(qm), -c.mul_ref(&qc));
            }
            quo.add_term(qm, qc);
        }
        Ok(quo)
    }

    pub fn divides(&self, other: &MultiPoly) -> bool {
        other.divide_exact(self).is_ok()
    }

    /// Extracts the coefficients of powers of variable `idx`: entry `k` is a
    /// polynomial (free of `idx`) multiplying `idx^k`.
    pub fn coeffs_in_var(&self, idx: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(idx) as usize;
        let mut out = alloc::vec![MultiPoly::zero(&self.vars); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(idx) as usize;
            out[e].add_term(m.with_exp(idx, 0), c.clone());
        }
        out
    }

    /// Rebuilds from coefficients in variable `idx` (inverse of
    /// [`MultiPoly::coeffs_in_var`]).
    pub fn from_coeffs_in_var(vars: &VarSpace, idx: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                debug_assert_eq!(m.exp(idx), 0);
                out.add_term(m.with_exp(idx, e as u32), c.clone());
            }
        }
        out
    }

    /// Parses the textual polynomial grammar in the given space.
    pub fn parse(vars: &VarSpace, text: &str) -> Result<MultiPoly> {
        text::parse(vars, text)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::format(self, f)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::format(self, f)
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $impl_method:ident) => {
        impl $trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$impl_method(&rhs)
            }
        }
        impl<'a> $trait<&'a MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                self.$impl_method(rhs)
            }
        }
    };
}

poly_binop!(Add, add, add_ref);
poly_binop!(Sub, sub, sub_ref);
poly_binop!(Mul, mul, mul_ref);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

impl<'a> Neg for &'a MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

/// Trivial multiply-shift hasher for packed monomials.
#[derive(Clone, Copy, Default, Debug)]
pub struct MonoHashBuilder;

impl core::hash::BuildHasher for MonoHashBuilder {
    type Hasher = MonoHasher;
    fn build_hasher(&self) -> MonoHasher {
        MonoHasher(0)
    }
}

#[derive(Debug)]
pub struct MonoHasher(u64);

impl core::hash::Hasher for MonoHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = self.0.rotate_left(8) ^ b as u64;
        }
        self.0 = self.0.wrapping_mul(0x9e3779b97f4a7c15);
    }

    fn write_u64(&mut self, n: u64) {
        self.0 = n.wrapping_mul(0x9e3779b97f4a7c15);
        self.0 ^= self.0 >> 29;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn pp(vars: &VarSpace, s: &str) -> MultiPoly {
        MultiPoly::parse(vars, s).unwrap()
    }

    #[test]
    fn grlex_order() {
        // degree first, then lexicographically with x0 dominant
        let a = Mono::from_exps(&[1, 0, 0]);
        let b = Mono::from_exps(&[0, 1, 0]);
        let c = Mono::from_exps(&[2, 0, 0]);
        assert!(a > Mono::ONE);
        assert!(a > b);
        assert!(c > a);
        assert!(Mono::from_exps(&[1, 1, 0]) > Mono::from_exps(&[0, 2, 0]));
    }

    #[test]
    fn arithmetic_basics() {
        let v = VarSpace::projective();
        let p = pp(&v, "x0^2-x1*x2");
        let q = pp(&v, "x0^2+x1*x2");
        assert_eq!(&p + &q, pp(&v, "2*x0^2"));
        assert_eq!(&p * &q, pp(&v, "x0^4-x1^2*x2^2"));
        assert!((&p - &p).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!(pp(&v, "x0^2+x1").homogeneous_degree(), None);
    }

    #[test]
    fn display_round_trip() {
        let v = VarSpace::projective();
        for s in [
            "x0^2*x1-x2^3",
            "1",
            "0",
            "-3/2*x0+x1*x2",
            "(1+2i)*x0^2-1i*x1^2+7",
            "x0-x1",
        ] {
            let p = pp(&v, s);
            let rendered = p.to_string();
            assert_eq!(pp(&v, &rendered), p, "round trip failed: {s} -> {rendered}");
        }
    }

    #[test]
    fn exact_division() {
        let v = VarSpace::affine();
        let a = pp(&v, "x^2-y^2");
        let b = pp(&v, "x-y");
        assert_eq!(a.divide_exact(&b).unwrap(), pp(&v, "x+y"));
        assert!(pp(&v, "x^2+y").divide_exact(&b).is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let v = VarSpace::affine();
        let p = pp(&v, "x^2*y+3*y");
        assert_eq!(p.derivative(0), pp(&v, "2*x*y"));
        assert_eq!(p.derivative(1), pp(&v, "x^2+3"));
        let val = p.eval(&[GaussianRational::from_int(2), GaussianRational::from_int(-1)]);
        assert_eq!(val, GaussianRational::from_int(-7));
    }

    #[test]
    fn substitution() {
        let v = VarSpace::affine();
        let p = pp(&v, "x^2+y");
        let args = [pp(&v, "x+y"), pp(&v, "x*y")];
        assert_eq!(p.subst(&args), pp(&v, "x^2+2*x*y+y^2+x*y"));
    }

    #[test]
    fn coeff_views() {
        let v = VarSpace::affine();
        let p = pp(&v, "x^2*y+x*y^2+1");
        let cs = p.coeffs_in_var(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], pp(&v, "1"));
        assert_eq!(cs[1], pp(&v, "y^2"));
        assert_eq!(cs[2], pp(&v, "y"));
        assert_eq!(MultiPoly::from_coeffs_in_var(&v, 0, &cs), p);
    }
}
