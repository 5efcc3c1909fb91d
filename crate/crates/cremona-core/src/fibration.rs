//! Normal forms, the invariant-fibration catalog, exact verification of the
//! defining identities, transversality and map periodicity.
//!
//! Each zero-entropy case has an affine normal form (verified symbolically
//! against its conjugation at construction time) and a catalog of fibrations
//! and first integrals with exact coefficients. Verification composes `H o f`
//! as a reduced rational function and compares structurally; only the
//! split-root catalog with data outside Q(i) falls back to sampling.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::classify::{CaseReport, Subcase};
use crate::error::{Error, Result};
use crate::family::{
    affine_substitution, build_family_map, homogenize, ParameterTuple, PlaneMap, ProjectiveMap,
};
use crate::moebius::{periodicity_exact, root_pair_data, MoebiusMap, RootPairData};
use crate::numeric::{Fix, FixComplex};
use crate::poly::{MultiPoly, VarSpace};
use crate::ratfunc::{eval_poly_at_rationals, RationalFunction};
use crate::scalar::GaussianRational;

type Gq = GaussianRational;

/// An affine change of coordinates `(x, y) -> (a x + b, c y + d)`, `ac != 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineChange {
    pub a: Gq,
    pub b: Gq,
    pub c: Gq,
    pub d: Gq,
}

impl AffineChange {
    pub fn new(a: Gq, b: Gq, c: Gq, d: Gq) -> Result<Self> {
        if a.is_zero() || c.is_zero() {
            return Err(Error::Invalid(String::from("affine change needs a, c nonzero")));
        }
        Ok(AffineChange { a, b, c, d })
    }

    pub fn identity() -> Self {
        AffineChange { a: Gq::one(), b: Gq::zero(), c: Gq::one(), d: Gq::zero() }
    }

    pub fn inverse(&self) -> AffineChange {
        let ai = self.a.inv().expect("nonzero");
        let ci = self.c.inv().expect("nonzero");
        AffineChange {
            a: ai.clone(),
            b: -&self.b.mul_ref(&ai),
            c: ci.clone(),
            d: -&self.d.mul_ref(&ci),
        }
    }

    /// As a polynomial plane map.
    pub fn as_plane_map(&self) -> PlaneMap {
        let v = VarSpace::affine();
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        PlaneMap::new(
            RationalFunction::from_poly(
                x.scale(&self.a).add_ref(&MultiPoly::constant(&v, self.b.clone())),
            ),
            RationalFunction::from_poly(
                y.scale(&self.c).add_ref(&MultiPoly::constant(&v, self.d.clone())),
            ),
        )
    }

    /// Pullback of a function: `H o psi`.
    pub fn pullback(&self, h: &RationalFunction) -> RationalFunction {
        affine_substitution(h, &self.a, &self.b, &self.c, &self.d)
    }
}

impl fmt::Display for AffineChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y) -> ({}*x + {}, {}*y + {})", self.a, self.b, self.c, self.d)
    }
}

/// Which of the paper-shaped normal forms a map was brought to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NormalFormKind {
    /// `(a0 + a1 x, (b0 + y)/x)`
    HalfJonquieres { a0: Gq, a1: Gq, b0: Gq },
    /// `(a0 + a1 x, b0/(x + y))`
    HalfJonquieresShifted { a0: Gq, a1: Gq, b0: Gq },
    /// `(a0 + a1 x + y, b0/(c0 + y))`
    TriangularMoebius { a0: Gq, a1: Gq, c0: Gq, b0: Gq },
    /// `(a0 + a1 x, b0/(c0 + y))`
    ProductMoebius { a0: Gq, a1: Gq, c0: Gq, b0: Gq },
    /// `(y, b0/(c0 + x))`
    SwapMoebius { c0: Gq, b0: Gq },
}

/// A normal form with its verified conjugation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalFormMap {
    pub map: PlaneMap,
    pub conjugation: AffineChange,
    pub source_case: Subcase,
    pub kind: NormalFormKind,
}

fn plane_map_from_kind(kind: &NormalFormKind) -> PlaneMap {
    let v = VarSpace::affine();
    let x = MultiPoly::var(&v, 0);
    let y = MultiPoly::var(&v, 1);
    let c = |g: &Gq| MultiPoly::constant(&v, g.clone());
    match kind {
        NormalFormKind::HalfJonquieres { a0, a1, b0 } => PlaneMap::new(
            RationalFunction::from_poly(c(a0).add_ref(&x.scale(a1))),
            RationalFunction::new(c(b0).add_ref(&y), x).expect("x is nonzero"),
        ),
        NormalFormKind::HalfJonquieresShifted { a0, a1, b0 } => PlaneMap::new(
            RationalFunction::from_poly(c(a0).add_ref(&x.scale(a1))),
            RationalFunction::new(c(b0), x.add_ref(&y)).expect("x + y is nonzero"),
        ),
        NormalFormKind::TriangularMoebius { a0, a1, c0, b0 } => PlaneMap::new(
            RationalFunction::from_poly(c(a0).add_ref(&x.scale(a1)).add_ref(&y)),
            RationalFunction::new(c(b0), c(c0).add_ref(&y)).expect("c0 + y is nonzero"),
        ),
        NormalFormKind::ProductMoebius { a0, a1, c0, b0 } => PlaneMap::new(
            RationalFunction::from_poly(c(a0).add_ref(&x.scale(a1))),
            RationalFunction::new(c(b0), c(c0).add_ref(&y)).expect("c0 + y is nonzero"),
        ),
        NormalFormKind::SwapMoebius { c0, b0 } => PlaneMap::new(
            RationalFunction::from_poly(y),
            RationalFunction::new(c(b0), c(c0).add_ref(&x)).expect("c0 + x is nonzero"),
        ),
    }
}

/// Brings a zero-entropy (or gamma-split) member to its affine normal form.
/// The conjugation identity `psi^-1 o f o psi = normal form` is verified
/// symbolically; a violation is a bug, not an input error.
pub fn normal_form(params: &ParameterTuple, report: &CaseReport) -> Result<NormalFormMap> {
    let a = params.alpha();
    let b = params.beta();
    let c = params.gamma();
    let one = Gq::one();
    let (kind, conj) = match report.subcase {
        Subcase::CD2iii => {
            // a2 = c2 = 0; b2, a1, c1 nonzero
            let psi = AffineChange::new(
                b[2].div_ref(&c[1]).expect("c1 nonzero"),
                -&c[0].div_ref(&c[1]).expect("c1 nonzero"),
                b[2].inv().expect("b2 nonzero"),
                b[1].div_ref(&c[1]).expect("c1 nonzero"),
            )?;
            let a0 = a[0]
                .mul_ref(&c[1])
                .sub_ref(&c[0].mul_ref(&a[1].sub_ref(&one)))
                .div_ref(&b[2])
                .expect("b2 nonzero");
            let b0 = params
                .bc(0, 1)
                .add_ref(&b[1].mul_ref(&b[2]))
                .div_ref(&c[1])
                .expect("c1 nonzero");
            (NormalFormKind::HalfJonquieres { a0, a1: a[1].clone(), b0 }, psi)
        }
        Subcase::CD3iii => {
            // (bc)12 = 0, c1 c2 != 0, a2 = 0: (b1, b2) = lambda (c1, c2)
            let lambda = b[2].div_ref(&c[2]).expect("c2 nonzero");
            let bshift = -&c[0].add_ref(&c[2].mul_ref(&lambda)).div_ref(&c[1]).expect("c1 nonzero");
            let psi = AffineChange::new(
                one.clone(),
                bshift.clone(),
                c[1].div_ref(&c[2]).expect("c2 nonzero"),
                lambda.clone(),
            )?;
            let a0 = a[0].add_ref(&bshift.mul_ref(&a[1].sub_ref(&one)));
            // b0' = (b0 - lambda c0) * c2 / c1^2
            let s = b[0].sub_ref(&lambda.mul_ref(&c[0]));
            let b0 = s
                .mul_ref(&c[2])
                .div_ref(&c[1].mul_ref(&c[1]))
                .expect("c1 nonzero");
            (NormalFormKind::HalfJonquieresShifted { a0, a1: a[1].clone(), b0 }, psi)
        }
        Subcase::G1ia | Subcase::G1ib | Subcase::G1ic => {
            // c1 = 0, b1 = 0, a2 != 0
            let psi = AffineChange::new(
                a[2].div_ref(&c[2]).expect("c2 nonzero"),
                Gq::zero(),
                c[2].inv().expect("c2 nonzero"),
                b[2].div_ref(&c[2]).expect("c2 nonzero"),
            )?;
            let a0 = a[0]
                .mul_ref(&c[2])
                .add_ref(&a[2].mul_ref(&b[2]))
                .div_ref(&a[2])
                .expect("a2 nonzero");
            let (c0, b0) = crate::classify::gamma1_h_params(params);
            (NormalFormKind::TriangularMoebius { a0, a1: a[1].clone(), c0, b0 }, psi)
        }
        Subcase::G1iia | Subcase::G1iib => {
            let psi = AffineChange::new(
                one.clone(),
                Gq::zero(),
                c[2].inv().expect("c2 nonzero"),
                b[2].div_ref(&c[2]).expect("c2 nonzero"),
            )?;
            let (c0, b0) = crate::classify::gamma1_h_params(params);
            (NormalFormKind::ProductMoebius { a0: a[0].clone(), a1: a[1].clone(), c0, b0 }, psi)
        }
        Subcase::G2b1 | Subcase::G2b2 => {
            // c2 = 0, b2 = 0, a1 = 0, a2 != 0, c1 != 0
            let psi = AffineChange::new(
                c[1].inv().expect("c1 nonzero"),
                a[0].mul_ref(&c[1]).add_ref(&a[2].mul_ref(&b[1])).div_ref(&c[1]).expect("c1"),
                c[1].mul_ref(&a[2]).inv().expect("c1 a2 nonzero"),
                b[1].div_ref(&c[1]).expect("c1 nonzero"),
            )?;
            let (c0, b0) = crate::classify::gamma2_h_params(params);
            (NormalFormKind::SwapMoebius { c0, b0 }, psi)
        }
        other => return Err(Error::UnsupportedCase(other.tag().to_string())),
    };
    let map = plane_map_from_kind(&kind);
    // verify psi^-1 o f o psi = map, symbolically
    let f = build_family_map(params);
    let psi_map = conj.as_plane_map();
    let psi_inv_map = conj.inverse().as_plane_map();
    let conjugated = psi_inv_map.compose(&f.compose(&psi_map)?)?;
    if conjugated != map {
        return Err(Error::Invalid(alloc::format!(
            "conjugation identity failed for {}: got {conjugated}, want {map}",
            report.subcase
        )));
    }
    Ok(NormalFormMap { map, conjugation: conj, source_case: report.subcase, kind })
}

/// How a fibration transforms under the map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Transform {
    /// `H o f = H` (first integral)
    Invariant,
    /// `H o f = c H`
    Scale(Gq),
    /// `H o f = H + 1`
    Translate,
    /// `H o f = (a H + b)/(c H + d)` (coordinate fibrations)
    Moebius(MoebiusMap),
    /// `H o f = m H` (or `-m H`) for the split-root scalar `m` outside Q(i);
    /// only checkable numerically
    ScaleSplitRoot { negated: bool },
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Invariant => write!(f, "invariant"),
            Transform::Scale(c) => write!(f, "scale({c})"),
            Transform::Translate => write!(f, "translate(+1)"),
            Transform::Moebius(m) => write!(f, "moebius{m}"),
            Transform::ScaleSplitRoot { negated } => {
                write!(f, "scale({}m), m irrational", if *negated { "-" } else { "" })
            }
        }
    }
}

/// The function attached to a fibration spec.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FibrationFunction {
    Exact(RationalFunction),
    /// The split-root first-integral pair with data outside Q(i): evaluated
    /// numerically from `(c0, b0)`; `conjugate` selects the second member.
    SplitNumeric { gamma0: Gq, beta0: Gq, conjugate: bool },
}

/// One invariant fibration or first integral.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FibrationSpec {
    pub label: String,
    pub function: FibrationFunction,
    pub transform: Transform,
    /// Set when the candidate collapsed to a constant; such a spec is never
    /// silently accepted as a first integral.
    pub degenerate: bool,
}

impl FibrationSpec {
    fn exact(label: &str, function: RationalFunction, transform: Transform) -> Self {
        let degenerate = function.constant_value().is_some();
        FibrationSpec {
            label: String::from(label),
            function: FibrationFunction::Exact(function),
            transform,
            degenerate,
        }
    }
}

/// Iterate sum `sum_{j=0}^{count-1} w^j h^j(y)` as an exact function of `y`
/// in the affine plane space.
fn weighted_iterate_sum(h: &MoebiusMap, weight: &Gq, count: u32) -> RationalFunction {
    let v = VarSpace::affine();
    let mut acc = RationalFunction::zero(&v);
    let mut w = Gq::one();
    let mut power = MoebiusMap::identity();
    for _ in 0..count {
        let hj = power.as_rational_function(&v, 1);
        acc = acc.add_ref(&hj.scale(&w));
        w = w.mul_ref(weight);
        power = power.compose(h);
    }
    acc
}

/// The coordinate fibration `x` (or `y`) with its affine/Moebius transform.
fn coordinate_fibration(label: &str, var: usize, transform: Transform) -> FibrationSpec {
    let v = VarSpace::affine();
    FibrationSpec::exact(label, RationalFunction::var(&v, var), transform)
}

/// Instantiates the catalog of fibrations/integrals for a normal form.
pub fn builtin_fibrations(form: &NormalFormMap) -> Result<Vec<FibrationSpec>> {
    let v = VarSpace::affine();
    let x = MultiPoly::var(&v, 0);
    let mut out = Vec::new();
    match &form.kind {
        NormalFormKind::HalfJonquieres { a0, a1, b0: _ }
        | NormalFormKind::HalfJonquieresShifted { a0, a1, b0: _ } => {
            out.push(base_fibration_of_affine("V", 0, a0, a1));
            if let Some(p) = a1.root_of_unity_order() {
                if p > 1 {
                    // W = x * m(x) * ... * m^{p-1}(x), a first integral
                    let m = MoebiusMap::from_affine(a0, a1).expect("a1 nonzero");
                    let mut w = RationalFunction::from_poly(x.clone());
                    let mut power = m.clone();
                    for _ in 1..p {
                        w = w.mul_ref(&power.as_rational_function(&v, 0));
                        power = power.compose(&m);
                    }
                    out.push(FibrationSpec::exact("W", w, Transform::Invariant));
                }
            }
        }
        NormalFormKind::TriangularMoebius { a0, a1, c0, b0 } => {
            let h = MoebiusMap::from_h(c0, b0)?;
            out.push(FibrationSpec::exact(
                "V1",
                RationalFunction::var(&v, 1),
                Transform::Moebius(h.clone()),
            ));
            if let Some(k) = periodicity_exact(&h).period {
                // H1 = y + h(y) + ... + h^{k-1}(y)
                let h1 = weighted_iterate_sum(&h, &Gq::one(), k);
                out.push(FibrationSpec::exact("H1", h1, Transform::Invariant));

                let a1k = a1.pow(k);
                if !a1k.is_one() {
                    // second fibration, scaling type (a0 translated away)
                    let v2 = second_fibration_scaling(&h, a0, a1, k);
                    out.push(FibrationSpec::exact("V2", v2.clone(), Transform::Scale(a1.clone())));
                    if let Some(n) = crate::moebius::geometric_sum_vanishing(a1, k, u32::MAX) {
                        let power = (n + 1) * k;
                        out.push(FibrationSpec::exact(
                            "H2",
                            v2.pow(power),
                            Transform::Invariant,
                        ));
                    }
                } else if !a1.is_one() {
                    out.push(FibrationSpec::exact(
                        "V2",
                        second_fibration_translating(&h, a0, a1, k),
                        Transform::Translate,
                    ));
                } else {
                    out.push(FibrationSpec::exact(
                        "V2",
                        second_fibration_unit(&h, a0, k),
                        Transform::Translate,
                    ));
                }
            }
        }
        NormalFormKind::ProductMoebius { a0, a1, c0, b0 } => {
            let h = MoebiusMap::from_h(c0, b0)?;
            let m = MoebiusMap::from_affine(a0, a1).expect("a1 nonzero");
            out.push(coordinate_fibration("V1", 0, Transform::Moebius(m.clone())));
            out.push(coordinate_fibration("V2", 1, Transform::Moebius(h.clone())));
            if let Some(k) = periodicity_exact(&h).period {
                out.push(FibrationSpec::exact(
                    "H1",
                    weighted_iterate_sum(&h, &Gq::one(), k),
                    Transform::Invariant,
                ));
            }
            if let Some(p) = periodicity_exact(&m).period {
                // H2 = x + m(x) + ... + m^{p-1}(x); collapses to a constant
                // whenever p > 1 (the x-coefficient sums to zero), and the
                // degenerate flag records exactly that
                let mut h2 = RationalFunction::zero(&v);
                let mut power = MoebiusMap::identity();
                for _ in 0..p {
                    let mj_x = power.as_rational_function(&v, 0);
                    h2 = h2.add_ref(&mj_x);
                    power = power.compose(&m);
                }
                out.push(FibrationSpec::exact("H2", h2, Transform::Invariant));
            }
        }
        NormalFormKind::SwapMoebius { c0, b0 } => {
            let four = Gq::from_int(4);
            let disc = c0.mul_ref(c0).add_ref(&four.mul_ref(b0));
            if disc.is_zero() {
                out.extend(double_root_catalog(c0)?);
            } else {
                match root_pair_data(c0, b0)? {
                    RootPairData::Exact { p, q: _, m } => {
                        let h1 = split_integral(&p, &m, false)?;
                        let h2 = split_integral(&p, &m, true)?;
                        out.push(FibrationSpec::exact("H1", h1.clone(), Transform::Scale(m.clone())));
                        out.push(FibrationSpec::exact("H2", h2.clone(), Transform::Scale(-&m)));
                        if let Some(ord) = m.root_of_unity_order() {
                            // f is 2k-periodic; even power of m kills the scale
                            let power = if ord % 2 == 0 { ord } else { 2 * ord };
                            out.push(FibrationSpec::exact(
                                &alloc::format!("H1^{power}"),
                                h1.pow(power),
                                Transform::Invariant,
                            ));
                            out.push(FibrationSpec::exact(
                                &alloc::format!("H2^{power}"),
                                h2.pow(power),
                                Transform::Invariant,
                            ));
                        }
                    }
                    RootPairData::Inexact { .. } => {
                        out.push(FibrationSpec {
                            label: String::from("H1"),
                            function: FibrationFunction::SplitNumeric {
                                gamma0: c0.clone(),
                                beta0: b0.clone(),
                                conjugate: false,
                            },
                            transform: Transform::ScaleSplitRoot { negated: false },
                            degenerate: false,
                        });
                        out.push(FibrationSpec {
                            label: String::from("H2"),
                            function: FibrationFunction::SplitNumeric {
                                gamma0: c0.clone(),
                                beta0: b0.clone(),
                                conjugate: true,
                            },
                            transform: Transform::ScaleSplitRoot { negated: true },
                            degenerate: false,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `V` fibration of the half-Jonquieres forms: the transform of `x` is the
/// affine map `a0 + a1 x`, normalized into the three stated shapes.
fn base_fibration_of_affine(label: &str, var: usize, a0: &Gq, a1: &Gq) -> FibrationSpec {
    let v = VarSpace::affine();
    let xv = MultiPoly::var(&v, var);
    if a1.is_one() {
        if a0.is_zero() {
            FibrationSpec::exact(label, RationalFunction::var(&v, var), Transform::Invariant)
        } else {
            // V = x / a0 turns the shift into a unit translation
            let f = RationalFunction::from_poly(xv.scale(&a0.inv().expect("a0 nonzero")));
            FibrationSpec::exact(label, f, Transform::Translate)
        }
    } else {
        // center at the fixed point: V = x - a0/(1 - a1)
        let star = a0.div_ref(&Gq::one().sub_ref(a1)).expect("a1 != 1");
        let f = RationalFunction::from_poly(
            xv.sub_ref(&MultiPoly::constant(&v, star)),
        );
        FibrationSpec::exact(label, f, Transform::Scale(a1.clone()))
    }
}

/// Scaling-type second fibration `(a1^k - 1) x~ + sum a1^{k-1-j} h^j(y)`,
/// pulled back through the translation that removes `a0`.
fn second_fibration_scaling(h: &MoebiusMap, a0: &Gq, a1: &Gq, k: u32) -> RationalFunction {
    let v = VarSpace::affine();
    let a1k = a1.pow(k);
    let star = a0.div_ref(&Gq::one().sub_ref(a1)).expect("a1 != 1 since a1^k != 1");
    let x_shift = MultiPoly::var(&v, 0).sub_ref(&MultiPoly::constant(&v, star));
    let xterm = RationalFunction::from_poly(x_shift.scale(&a1k.sub_ref(&Gq::one())));
    // sum_{j=0}^{k-1} a1^{k-1-j} h^j(y)
    let mut sum = RationalFunction::zero(&v);
    let mut power = MoebiusMap::identity();
    for j in 0..k {
        let hj = power.as_rational_function(&v, 1);
        sum = sum.add_ref(&hj.scale(&a1.pow(k - 1 - j)));
        power = power.compose(h);
    }
    xterm.add_ref(&sum)
}

/// Translation-type second fibration for `a1^k = 1`, `a1 != 1` (with the
/// `a0` shift pulled back):
/// `[k x~ + sum (k-1-j) a1^{k-1-j} h^j(y)] / [sum a1^{k-1-j} h^j(y)]`.
fn second_fibration_translating(h: &MoebiusMap, a0: &Gq, a1: &Gq, k: u32) -> RationalFunction {
    let v = VarSpace::affine();
    let star = a0.div_ref(&Gq::one().sub_ref(a1)).expect("a1 != 1");
    let x_shift = MultiPoly::var(&v, 0).sub_ref(&MultiPoly::constant(&v, star));
    let mut num = RationalFunction::from_poly(x_shift.scale(&Gq::from_int(k as i64)));
    let mut den = RationalFunction::zero(&v);
    let mut power = MoebiusMap::identity();
    for j in 0..k {
        let hj = power.as_rational_function(&v, 1);
        let w = a1.pow(k - 1 - j);
        if j <= k - 2 {
            num = num.add_ref(&hj.scale(&w.mul_ref(&Gq::from_int((k - 1 - j) as i64))));
        }
        den = den.add_ref(&hj.scale(&w));
        power = power.compose(h);
    }
    num.div_ref(&den).expect("denominator sum is nonzero")
}

/// Translation-type second fibration for `a1 = 1`:
/// `[k x + sum (k-1-j) h^j(y)] / [k a0 + sum h^j(y)]`.
fn second_fibration_unit(h: &MoebiusMap, a0: &Gq, k: u32) -> RationalFunction {
    let v = VarSpace::affine();
    let kq = Gq::from_int(k as i64);
    let mut num = RationalFunction::from_poly(MultiPoly::var(&v, 0).scale(&kq));
    let mut den = RationalFunction::constant(&v, kq.mul_ref(a0));
    let mut power = MoebiusMap::identity();
    for j in 0..k {
        let hj = power.as_rational_function(&v, 1);
        if j <= k - 2 {
            num = num.add_ref(&hj.scale(&Gq::from_int((k - 1 - j) as i64)));
        }
        den = den.add_ref(&hj);
        power = power.compose(h);
    }
    num.div_ref(&den).expect("denominator sum is nonzero")
}

/// The double-root catalog: `K1` (scale -1), `K2` (translate), `W = K1^2`.
fn double_root_catalog(c0: &Gq) -> Result<Vec<FibrationSpec>> {
    let v = VarSpace::affine();
    let x = MultiPoly::var(&v, 0);
    let y = MultiPoly::var(&v, 1);
    let c = |g: Gq| MultiPoly::constant(&v, g);
    let two = Gq::from_int(2);
    let den = x.scale(&two).add_ref(&c(c0.clone())).mul_ref(&y.scale(&two).add_ref(&c(c0.clone())));
    // K1 = (c0^2 - 2 c0 x + 6 c0 y + 4 x y) / ((2x + c0)(2y + c0))
    let k1_num = c(c0.mul_ref(c0))
        .sub_ref(&x.scale(&two.mul_ref(c0)))
        .add_ref(&y.scale(&Gq::from_int(6).mul_ref(c0)))
        .add_ref(&x.mul_ref(&y).scale(&Gq::from_int(4)));
    let k1 = RationalFunction::new(k1_num, den.clone())?;
    // K2 = 2 c0 (x + y + c0) / ((2x + c0)(2y + c0))
    let k2_num = x.add_ref(&y).add_ref(&c(c0.clone())).scale(&two.mul_ref(c0));
    let k2 = RationalFunction::new(k2_num, den)?;
    let w = k1.mul_ref(&k1);
    Ok(alloc::vec![
        FibrationSpec::exact("K1", k1, Transform::Scale(Gq::from_int(-1))),
        FibrationSpec::exact("K2", k2, Transform::Translate),
        FibrationSpec::exact("W", w, Transform::Invariant),
    ])
}

/// The split-root integral `(m^2 p^2 +- m p x + p (m^2 -+ m + 1) y + x y) / ((x+p)(y+p))`.
fn split_integral(p: &Gq, m: &Gq, conjugate: bool) -> Result<RationalFunction> {
    let v = VarSpace::affine();
    let x = MultiPoly::var(&v, 0);
    let y = MultiPoly::var(&v, 1);
    let c = |g: Gq| MultiPoly::constant(&v, g);
    let m2 = m.mul_ref(m);
    let sign = if conjugate { -Gq::one() } else { Gq::one() };
    let num = c(m2.mul_ref(p).mul_ref(p))
        .add_ref(&x.scale(&sign.mul_ref(&m.mul_ref(p))))
        .add_ref(&y.scale(&p.mul_ref(&m2.sub_ref(&sign.mul_ref(m)).add_ref(&Gq::one()))))
        .add_ref(&x.mul_ref(&y));
    let den = x.add_ref(&c(p.clone())).mul_ref(&y.add_ref(&c(p.clone())));
    RationalFunction::new(num, den)
}

/// Verdict of a fibration verification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    ExactPass,
    ExactFail { detail: String },
    /// Checked at sample points with fixed-point arithmetic.
    NumericPass { samples: usize },
    NumericFail { detail: String },
    /// The candidate function is constant.
    Degenerate,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::ExactPass | Verdict::NumericPass { .. })
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Verdict::NumericPass { .. } | Verdict::NumericFail { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ExactPass => write!(f, "exact-pass"),
            Verdict::ExactFail { detail } => write!(f, "exact-fail: {detail}"),
            Verdict::NumericPass { samples } => write!(f, "numeric-pass({samples})"),
            Verdict::NumericFail { detail } => write!(f, "numeric-fail: {detail}"),
            Verdict::Degenerate => write!(f, "degenerate"),
        }
    }
}

/// Verifies one fibration identity against a plane map: exact structural
/// comparison of reduced functions, or 25-point sampling for split-root data
/// outside Q(i) (tolerance 1e-30, poles avoided by a 1e-3 margin).
pub fn verify_fibration(f: &PlaneMap, spec: &FibrationSpec, seed: u64) -> Verdict {
    if spec.degenerate {
        return Verdict::Degenerate;
    }
    match &spec.function {
        FibrationFunction::Exact(h) => {
            let composed = match compose_function(h, f) {
                Ok(c) => c,
                Err(e) => return Verdict::ExactFail { detail: e.to_string() },
            };
            let expected = match &spec.transform {
                Transform::Invariant => h.clone(),
                Transform::Scale(c) => h.scale(c),
                Transform::Translate => h.add_ref(&RationalFunction::one(h.vars())),
                Transform::Moebius(m) => {
                    let num = h.scale(&m.a).add_ref(&RationalFunction::constant(h.vars(), m.b.clone()));
                    let den = h.scale(&m.c).add_ref(&RationalFunction::constant(h.vars(), m.d.clone()));
                    match num.div_ref(&den) {
                        Ok(v) => v,
                        Err(e) => return Verdict::ExactFail { detail: e.to_string() },
                    }
                }
                Transform::ScaleSplitRoot { .. } => {
                    return Verdict::ExactFail {
                        detail: String::from("split-root transform on an exact function"),
                    }
                }
            };
            if composed == expected {
                Verdict::ExactPass
            } else {
                Verdict::ExactFail {
                    detail: alloc::format!("H o f = {composed}, expected {expected}"),
                }
            }
        }
        FibrationFunction::SplitNumeric { gamma0, beta0, conjugate } => {
            verify_split_numeric(f, gamma0, beta0, *conjugate, seed)
        }
    }
}

/// `H o f` as a reduced rational function.
pub fn compose_function(h: &RationalFunction, f: &PlaneMap) -> Result<RationalFunction> {
    let args = [f.first().clone(), f.second().clone()];
    let n = eval_poly_at_rationals(h.num(), &args);
    let d = eval_poly_at_rationals(h.den(), &args);
    n.div_ref(&d)
}

/// Sampling verification of the split-root identities `H1 o f = m H1`,
/// `H2 o f = -m H2` when `p, m` leave Q(i).
fn verify_split_numeric(
    f: &PlaneMap,
    gamma0: &Gq,
    beta0: &Gq,
    conjugate: bool,
    seed: u64,
) -> Verdict {
    let tolerance = Fix::inverse_power_of_ten(30);
    let pole_margin = Fix::inverse_power_of_ten(3);
    // p = (c0 + sqrt(disc))/2, m = sqrt(q/p), all at 192 fractional bits
    let c0 = FixComplex::from_scalar(gamma0);
    let b0 = FixComplex::from_scalar(beta0);
    let disc = c0.mul(&c0).add(&b0.mul(&FixComplex::from_int(4)));
    let s = disc.sqrt();
    let two = FixComplex::from_int(2);
    let p = c0.add(&s).div(&two).expect("two");
    let q = c0.sub(&s).div(&two).expect("two");
    let m = match q.div(&p) {
        Some(r) => r.sqrt(),
        None => return Verdict::NumericFail { detail: String::from("p vanished numerically") },
    };
    let m_signed = if conjugate { m.neg() } else { m };
    let m2 = m_signed.mul(&m_signed);

    let h_at = |x: &FixComplex, y: &FixComplex| -> Option<FixComplex> {
        // (m^2 p^2 + m p x + p (m^2 - m + 1) y + x y) / ((x+p)(y+p))
        let num = m2
            .mul(&p)
            .mul(&p)
            .add(&m_signed.mul(&p).mul(x))
            .add(&p.mul(&m2.sub(&m_signed).add(&FixComplex::from_int(1))).mul(y))
            .add(&x.mul(y));
        let dx = x.add(&p);
        let dy = y.add(&p);
        if dx.abs().lt(&pole_margin) || dy.abs().lt(&pole_margin) {
            return None;
        }
        num.div(&dx.mul(&dy))
    };

    let mut rng = crate::poly::probe_rng(seed);
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < 25 && attempts < 2000 {
        attempts += 1;
        let xi = ((rng.next_u64() % 41) as i64) - 20;
        let yi = ((rng.next_u64() % 41) as i64) - 20;
        let xd = 1 + (rng.next_u64() % 7) as i64;
        let yd = 1 + (rng.next_u64() % 7) as i64;
        let xq = Gq::from_ratio(xi, xd);
        let yq = Gq::from_ratio(yi, yd);
        // image under f, exactly, then to fixed point
        let Some((fx, fy)) = f.eval(&xq, &yq) else { continue };
        let x = FixComplex::from_scalar(&xq);
        let y = FixComplex::from_scalar(&yq);
        let fx = FixComplex::from_scalar(&fx);
        let fy = FixComplex::from_scalar(&fy);
        let Some(lhs) = h_at(&fx, &fy) else { continue };
        let Some(h) = h_at(&x, &y) else { continue };
        let rhs = m_signed.mul(&h);
        let err = lhs.sub(&rhs).abs();
        if !err.lt(&tolerance) {
            return Verdict::NumericFail {
                detail: alloc::format!("sample {checked} exceeded tolerance"),
            };
        }
        checked += 1;
    }
    if checked < 25 {
        return Verdict::NumericFail { detail: String::from("not enough pole-free samples") };
    }
    Verdict::NumericPass { samples: checked }
}

/// Transversality verdict for a pair of exact fibrations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransversalityReport {
    pub jacobian: RationalFunction,
    pub transverse: bool,
}

/// Symbolic Jacobian determinant of the pair `(h1, h2)` in `(x, y)`.
pub fn transversality(h1: &FibrationSpec, h2: &FibrationSpec) -> Result<TransversalityReport> {
    let (f1, f2) = match (&h1.function, &h2.function) {
        (FibrationFunction::Exact(a), FibrationFunction::Exact(b)) => (a, b),
        _ => {
            return Err(Error::Invalid(String::from(
                "transversality needs exact fibration functions",
            )))
        }
    };
    let j = f1
        .derivative(0)
        .mul_ref(&f2.derivative(1))
        .sub_ref(&f1.derivative(1).mul_ref(&f2.derivative(0)));
    Ok(TransversalityReport { transverse: !j.is_zero(), jacobian: j })
}

/// Minimal `n <= bound` with `f^n = id` as reduced rational maps, or `None`.
///
/// Iteration keeps the reduced projective extension. Two early exits apply:
/// a period `n <= bound` forces `d_j <= 2^min(j, bound - j)` (sound for any
/// map), and periodic members of this family never exceed degree 6, so the
/// default degree ceiling of 16 aborts hopeless searches cheaply without
/// ever truncating a genuine family period. Use
/// [`detect_periodicity_with`] to raise the ceiling for foreign maps.
pub fn detect_periodicity(f: &PlaneMap, bound: u32) -> Result<Option<u32>> {
    detect_periodicity_with(f, bound, 16)
}

pub fn detect_periodicity_with(
    f: &PlaneMap,
    bound: u32,
    degree_ceiling: u32,
) -> Result<Option<u32>> {
    assert!(bound >= 1);
    let fp = homogenize(f)?;
    let mut current = fp.clone();
    for n in 1..=bound {
        if current.is_identity() {
            return Ok(Some(n));
        }
        let d = current.degree();
        let cap = 1u32 << core::cmp::min(n, bound.saturating_sub(n)).min(30);
        if d > degree_ceiling || d > cap {
            return Ok(None);
        }
        if n < bound {
            current = ProjectiveMap::compose_reduce(&fp, &current)?;
        }
    }
    Ok(None)
}

/// Convenience: run the full fibration pipeline for a parameter tuple.
pub fn fibration_catalog(params: &ParameterTuple) -> Result<(NormalFormMap, Vec<FibrationSpec>)> {
    let report = crate::classify::classify(params)?;
    let form = normal_form(params, &report)?;
    let specs = builtin_fibrations(&form)?;
    Ok((form, specs))
}
