//! Exact one-dimensional Moebius analysis.
//!
//! The paper's one-dimensional ingredients are `h(y) = b0/(c0 + y)` (matrix
//! `((0, b0), (1, c0))`) and the affine `m(x) = a0 + a1 x`. Periodicity over
//! Q(i) is decided through the trace invariant `j = tr^2/det`: the map has
//! finite order exactly for `j` in `{0, 1, 2, 3}` (orders 2, 3, 4, 6) or when
//! the matrix is scalar; `j = 4` on a non-scalar matrix is parabolic. The
//! reported period is verified by exact matrix powers.

use alloc::string::String;
use core::fmt;

use num_traits::One;


use crate::error::{Error, Result};
use crate::poly::{MultiPoly, VarSpace};
use crate::ratfunc::RationalFunction;
use crate::scalar::GaussianRational;

type Gq = GaussianRational;

/// `z -> (a z + b)/(c z + d)` with `ad - bc != 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoebiusMap {
    pub a: Gq,
    pub b: Gq,
    pub c: Gq,
    pub d: Gq,
}

impl MoebiusMap {
    pub fn new(a: Gq, b: Gq, c: Gq, d: Gq) -> Result<Self> {
        let m = MoebiusMap { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::DegenerateMoebius);
        }
        Ok(m)
    }

    /// The map `h(y) = b0 / (c0 + y)`; degenerate (constant) when `b0 = 0`.
    pub fn from_h(gamma0: &Gq, beta0: &Gq) -> Result<Self> {
        if beta0.is_zero() {
            return Err(Error::DegenerateMoebius);
        }
        MoebiusMap::new(Gq::zero(), beta0.clone(), Gq::one(), gamma0.clone())
    }

    /// The affine map `m(x) = a0 + a1 x` (requires `a1 != 0`).
    pub fn from_affine(a0: &Gq, a1: &Gq) -> Result<Self> {
        MoebiusMap::new(a1.clone(), a0.clone(), Gq::zero(), Gq::one())
    }

    pub fn identity() -> Self {
        MoebiusMap { a: Gq::one(), b: Gq::zero(), c: Gq::zero(), d: Gq::one() }
    }

    pub fn det(&self) -> Gq {
        self.a.mul_ref(&self.d).sub_ref(&self.b.mul_ref(&self.c))
    }

    pub fn trace(&self) -> Gq {
        self.a.add_ref(&self.d)
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Matrix product = composition `self o other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a.mul_ref(&other.a).add_ref(&self.b.mul_ref(&other.c)),
            b: self.a.mul_ref(&other.b).add_ref(&self.b.mul_ref(&other.d)),
            c: self.c.mul_ref(&other.a).add_ref(&self.d.mul_ref(&other.c)),
            d: self.c.mul_ref(&other.b).add_ref(&self.d.mul_ref(&other.d)),
        }
    }

    pub fn pow(&self, e: u32) -> MoebiusMap {
        let mut acc = MoebiusMap::identity();
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// Value at a point; `None` at the pole.
    pub fn apply(&self, z: &Gq) -> Option<Gq> {
        let den = self.c.mul_ref(z).add_ref(&self.d);
        if den.is_zero() {
            return None;
        }
        Some(self.a.mul_ref(z).add_ref(&self.b).div_ref(&den).expect("nonzero"))
    }

    /// The map as a reduced rational function of variable `var`.
    pub fn as_rational_function(&self, vars: &VarSpace, var: usize) -> RationalFunction {
        let z = MultiPoly::var(vars, var);
        let num = z.scale(&self.a).add_ref(&MultiPoly::constant(vars, self.b.clone()));
        let den = z.scale(&self.c).add_ref(&MultiPoly::constant(vars, self.d.clone()));
        RationalFunction::new(num, den).expect("Moebius denominator nonzero")
    }

    /// Trace invariant `tr^2 / det`.
    pub fn trace_invariant(&self) -> Gq {
        let t = self.trace();
        t.mul_ref(&t).div_ref(&self.det()).expect("nonzero determinant")
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.a, self.b, self.c, self.d)
    }
}

/// Qualitative classification of a Moebius map over Q(i).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoebiusClass {
    Identity,
    FiniteOrder,
    Parabolic,
    NonPeriodic,
}

impl fmt::Display for MoebiusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoebiusClass::Identity => "identity",
            MoebiusClass::FiniteOrder => "finite-order",
            MoebiusClass::Parabolic => "parabolic",
            MoebiusClass::NonPeriodic => "non-periodic",
        };
        write!(f, "{s}")
    }
}

/// Exact periodicity decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodReport {
    pub periodic: bool,
    pub period: Option<u32>,
    pub trace_invariant: Gq,
    pub classification: MoebiusClass,
}

/// Decides periodicity exactly over Q(i).
///
/// The map is periodic of order `k` iff the eigenvalue ratio is a primitive
/// k-th root of unity, i.e. `j - 2 = 2 cos(2 pi / k)` is rational; by the
/// rationality of `2 cos`, only `j` in `{0, 1, 2, 3}` can occur (orders
/// 2, 3, 4, 6), plus the scalar identity case. `j = 4` on a non-scalar
/// matrix is parabolic, anything else is non-periodic.
pub fn periodicity_exact(m: &MoebiusMap) -> PeriodReport {
    let j = m.trace_invariant();
    if m.is_scalar() {
        return PeriodReport {
            periodic: true,
            period: Some(1),
            trace_invariant: j,
            classification: MoebiusClass::Identity,
        };
    }
    let period = if j.is_real() && j.re().denom().is_one() {
        let (sign, digits) = j.re().numer().to_u32_digits();
        let small = if digits.is_empty() { Some(0u32) } else if digits.len() == 1 { Some(digits[0]) } else { None };
        match (sign, small) {
            (num_bigint::Sign::NoSign, _) => Some(2u32),
            (num_bigint::Sign::Plus, Some(1)) => Some(3),
            (num_bigint::Sign::Plus, Some(2)) => Some(4),
            (num_bigint::Sign::Plus, Some(3)) => Some(6),
            (num_bigint::Sign::Plus, Some(4)) => None, // parabolic (non-scalar)
            _ => None,
        }
    } else {
        None
    };
    match period {
        Some(k) => {
            // verification by exact matrix power: M^k scalar, smaller powers not
            assert!(m.pow(k).is_scalar(), "claimed period {k} fails the power check");
            for smaller in 1..k {
                assert!(!m.pow(smaller).is_scalar(), "period {k} is not minimal");
            }
            PeriodReport {
                periodic: true,
                period: Some(k),
                trace_invariant: j,
                classification: MoebiusClass::FiniteOrder,
            }
        }
        None => {
            let parabolic = j == Gq::from_int(4);
            PeriodReport {
                periodic: false,
                period: None,
                trace_invariant: j,
                classification: if parabolic {
                    MoebiusClass::Parabolic
                } else {
                    MoebiusClass::NonPeriodic
                },
            }
        }
    }
}

/// Minimal `n <= n_max` with `1 + a1^k + a1^{2k} + ... + a1^{nk} = 0`.
///
/// With `w = a1^k`, the sum vanishes iff `w != 1` and `w^{n+1} = 1`, so the
/// answer is `ord(w) - 1` when `w` is a root of unity of order > 1 (over
/// Q(i): order 2 or 4), absent otherwise.
pub fn geometric_sum_vanishing(alpha1: &Gq, k: u32, n_max: u32) -> Option<u32> {
    debug_assert!(!alpha1.is_zero(), "a1 must be nonzero");
    let w = alpha1.pow(k);
    match w.root_of_unity_order() {
        Some(1) | None => None,
        Some(order) => {
            let n = order - 1;
            if n <= n_max {
                Some(n)
            } else {
                None
            }
        }
    }
}

/// Split-root data of `z^2 - c0 z - b0 = 0` for the order-two symmetric case.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootPairData {
    /// Both roots and a square root `m` of `q/p` lie in Q(i).
    Exact { p: Gq, q: Gq, m: Gq },
    /// The data leaves Q(i); carries the defining minimal polynomial (in `z`)
    /// for the numeric path downstream.
    Inexact { min_poly: MultiPoly, note: String },
}

impl RootPairData {
    pub fn is_exact(&self) -> bool {
        matches!(self, RootPairData::Exact { .. })
    }
}

/// Computes the two roots `p, q` of `z^2 - c0 z - b0` and `m` with
/// `m^2 = q/p`, exactly when possible. Errors with the double-root signal
/// when the discriminant `c0^2 + 4 b0` vanishes.
pub fn root_pair_data(gamma0: &Gq, beta0: &Gq) -> Result<RootPairData> {
    let four = Gq::from_int(4);
    let disc = gamma0.mul_ref(gamma0).add_ref(&four.mul_ref(beta0));
    if disc.is_zero() {
        return Err(Error::DoubleRoot);
    }
    let zv = VarSpace::single("z");
    let min_poly = {
        let z = MultiPoly::var(&zv, 0);
        z.mul_ref(&z)
            .sub_ref(&z.scale(gamma0))
            .sub_ref(&MultiPoly::constant(&zv, beta0.clone()))
    };
    let Some(s) = disc.sqrt() else {
        return Ok(RootPairData::Inexact {
            min_poly,
            note: String::from("discriminant has no square root in Q(i)"),
        });
    };
    let two = Gq::from_int(2);
    let p = gamma0.add_ref(&s).div_ref(&two).expect("nonzero");
    let q = gamma0.sub_ref(&s).div_ref(&two).expect("nonzero");
    if p.is_zero() {
        // product of roots is -b0; a zero root means b0 = 0 (degenerate h)
        return Err(Error::DegenerateMoebius);
    }
    let ratio = q.div_ref(&p).expect("p nonzero");
    match ratio.sqrt() {
        Some(m) => Ok(RootPairData::Exact { p, q, m }),
        None => Ok(RootPairData::Inexact {
            min_poly,
            note: String::from("q/p has no square root in Q(i)"),
        }),
    }
}

/// Brute-force periodicity via symbolic composition, used as an oracle.
pub fn brute_force_period(m: &MoebiusMap, bound: u32) -> Option<u32> {
    let v = VarSpace::single("y");
    let y = RationalFunction::var(&v, 0);
    let h = m.as_rational_function(&v, 0);
    let mut cur = h.clone();
    for k in 1..=bound {
        if cur == y {
            return Some(k);
        }
        cur = cur.subst(core::slice::from_ref(&h)).expect("composition defined");
    }
    None
}
