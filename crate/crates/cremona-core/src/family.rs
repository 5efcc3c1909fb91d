//! The nine-parameter family, its projective extension, inverse, Jacobian
//! numerators and reduced composition.
//!
//! Members are `f(x,y) = (a0 + a1 x + a2 y, (b0 + b1 x + b2 y)/(c0 + c1 x + c2 y))`
//! with `(c1, c2) != (0, 0)`. Throughout, `(de)_ij` denotes the bracket
//! `d_i e_j - d_j e_i` of two coefficient rows.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::reduce_common_factor;
use crate::poly::{MultiPoly, VarSpace};
use crate::ratfunc::{eval_poly_at_rationals, RationalFunction};
use crate::scalar::GaussianRational;

type Gq = GaussianRational;

/// The nine coefficients of a family member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParameterTuple {
    alpha: [Gq; 3],
    beta: [Gq; 3],
    gamma: [Gq; 3],
}

/// Which of the two degeneracy brackets vanish.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degeneracy {
    NonDegenerate,
    /// `(ac)12 = 0`
    AlphaGamma,
    /// `(bc)12 = 0`
    BetaGamma,
    /// both brackets vanish (never birational; kept for reporting)
    Both,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Degeneracy::NonDegenerate => "non-degenerate",
            Degeneracy::AlphaGamma => "alpha-gamma",
            Degeneracy::BetaGamma => "beta-gamma",
            Degeneracy::Both => "both",
        };
        write!(f, "{s}")
    }
}

/// Outcome of the birationality test (lemma clauses (a) and (b)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BirationalityReport {
    pub is_birational: bool,
    pub violated_conditions: Vec<String>,
    pub degeneracy: Degeneracy,
}

impl ParameterTuple {
    /// Validates the single family invariant `(c1, c2) != (0, 0)`.
    pub fn new(alpha: [Gq; 3], beta: [Gq; 3], gamma: [Gq; 3]) -> Result<Self> {
        if gamma[1].is_zero() && gamma[2].is_zero() {
            return Err(Error::GammaConstraint);
        }
        Ok(ParameterTuple { alpha, beta, gamma })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(alpha: [i64; 3], beta: [i64; 3], gamma: [i64; 3]) -> Result<Self> {
        let conv = |v: [i64; 3]| [Gq::from_int(v[0]), Gq::from_int(v[1]), Gq::from_int(v[2])];
        ParameterTuple::new(conv(alpha), conv(beta), conv(gamma))
    }

    pub fn alpha(&self) -> &[Gq; 3] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Gq; 3] {
        &self.beta
    }

    pub fn gamma(&self) -> &[Gq; 3] {
        &self.gamma
    }

    /// The bracket `(de)_ij = d_i e_j - d_j e_i`.
    pub fn bracket(d: &[Gq; 3], e: &[Gq; 3], i: usize, j: usize) -> Gq {
        d[i].mul_ref(&e[j]).sub_ref(&d[j].mul_ref(&e[i]))
    }

    pub fn ab(&self, i: usize, j: usize) -> Gq {
        Self::bracket(&self.alpha, &self.beta, i, j)
    }

    pub fn ac(&self, i: usize, j: usize) -> Gq {
        Self::bracket(&self.alpha, &self.gamma, i, j)
    }

    pub fn bc(&self, i: usize, j: usize) -> Gq {
        Self::bracket(&self.beta, &self.gamma, i, j)
    }

    fn degeneracy(&self) -> Degeneracy {
        match (self.ac(1, 2).is_zero(), self.bc(1, 2).is_zero()) {
            (true, true) => Degeneracy::Both,
            (true, false) => Degeneracy::AlphaGamma,
            (false, true) => Degeneracy::BetaGamma,
            (false, false) => Degeneracy::NonDegenerate,
        }
    }

    /// The homogeneous form `r0*x0 + r1*x1 + r2*x2` of a coefficient row.
    pub fn form(row: &[Gq; 3], vars: &VarSpace) -> MultiPoly {
        assert_eq!(vars.len(), 3);
        let mut p = MultiPoly::zero(vars);
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(crate::poly::Mono::ONE.with_exp(i, 1), c.clone());
            }
        }
        p
    }

    /// The affine form `r0 + r1*x + r2*y` of a coefficient row.
    pub fn affine_form(row: &[Gq; 3], vars: &VarSpace) -> MultiPoly {
        assert_eq!(vars.len(), 2);
        MultiPoly::linear_form(vars, row[0].clone(), &row[1..])
    }
}

/// A plane map given by two reduced rational functions of `(x, y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneMap {
    first: RationalFunction,
    second: RationalFunction,
}

impl PlaneMap {
    pub fn new(first: RationalFunction, second: RationalFunction) -> Self {
        PlaneMap { first, second }
    }

    pub fn identity() -> Self {
        let v = VarSpace::affine();
        PlaneMap { first: RationalFunction::var(&v, 0), second: RationalFunction::var(&v, 1) }
    }

    pub fn first(&self) -> &RationalFunction {
        &self.first
    }

    pub fn second(&self) -> &RationalFunction {
        &self.second
    }

    pub fn is_identity(&self) -> bool {
        let v = self.first.vars();
        self.first == RationalFunction::var(v, 0) && self.second == RationalFunction::var(v, 1)
    }

    /// `self` after `inner`: `(self o inner)(p) = self(inner(p))`.
    pub fn compose(&self, inner: &PlaneMap) -> Result<PlaneMap> {
        let args = [inner.first.clone(), inner.second.clone()];
        Ok(PlaneMap { first: self.first.subst(&args)?, second: self.second.subst(&args)? })
    }

    pub fn eval(&self, x: &Gq, y: &Gq) -> Option<(Gq, Gq)> {
        let pt = [x.clone(), y.clone()];
        Some((self.first.eval(&pt)?, self.second.eval(&pt)?))
    }
}

impl fmt::Display for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// A reduced triple of homogeneous polynomials of equal degree on `P^2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectiveMap {
    comps: [MultiPoly; 3],
    degree: u32,
}

impl ProjectiveMap {
    /// Validates homogeneity, reduces by the common factor and normalizes the
    /// first nonzero component to leading coefficient 1.
    pub fn new(comps: [MultiPoly; 3]) -> Result<Self> {
        if comps.iter().all(|c| c.is_zero()) {
            return Err(Error::DegenerateComposition);
        }
        let mut comps = comps;
        let mut degrees = comps
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.homogeneous_degree().ok_or(Error::NotHomogeneous));
        let first = degrees.next().unwrap()?;
        for d in degrees {
            if d? != first {
                return Err(Error::NotHomogeneous);
            }
        }
        reduce_common_factor(&mut comps, &[])?;
        Ok(Self::finish(comps))
    }

    fn finish(mut comps: [MultiPoly; 3]) -> Self {
        let lc = comps
            .iter()
            .find(|c| !c.is_zero())
            .and_then(|c| c.leading().map(|(_, l)| l.clone()))
            .expect("not all components zero");
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            for c in comps.iter_mut() {
                *c = c.scale(&inv);
            }
        }
        let degree =
            comps.iter().filter(|c| !c.is_zero()).map(|c| c.degree().unwrap()).max().unwrap();
        ProjectiveMap { comps, degree }
    }

    pub fn identity() -> Self {
        let v = VarSpace::projective();
        ProjectiveMap {
            comps: [MultiPoly::var(&v, 0), MultiPoly::var(&v, 1), MultiPoly::var(&v, 2)],
            degree: 1,
        }
    }

    pub fn components(&self) -> &[MultiPoly; 3] {
        &self.comps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_identity(&self) -> bool {
        *self == ProjectiveMap::identity()
    }

    pub fn vars(&self) -> &VarSpace {
        self.comps[0].vars()
    }

    /// Substitution of `inner` into `outer` followed by removal of the common
    /// factor of the three components.
    pub fn compose_reduce(outer: &ProjectiveMap, inner: &ProjectiveMap) -> Result<ProjectiveMap> {
        let args = inner.comps.clone();
        let mut comps = [
            outer.comps[0].subst(&args),
            outer.comps[1].subst(&args),
            outer.comps[2].subst(&args),
        ];
        if comps.iter().all(|c| c.is_zero()) {
            return Err(Error::DegenerateComposition);
        }
        let candidates: Vec<&MultiPoly> = inner.comps.iter().collect();
        reduce_common_factor(&mut comps, &candidates)?;
        Ok(Self::finish(comps))
    }

    /// Restriction to the affine chart `x0 = 1`.
    pub fn to_plane_map(&self) -> Result<PlaneMap> {
        let av = VarSpace::affine();
        let chart = |p: &MultiPoly| -> MultiPoly {
            let mut out = MultiPoly::zero(&av);
            for (m, c) in p.terms() {
                out.add_term(crate::poly::Mono::from_exps(&[m.exp(1), m.exp(2)]), c.clone());
            }
            out
        };
        let f0 = chart(&self.comps[0]);
        let f1 = chart(&self.comps[1]);
        let f2 = chart(&self.comps[2]);
        Ok(PlaneMap {
            first: RationalFunction::new(f1, f0.clone())?,
            second: RationalFunction::new(f2, f0)?,
        })
    }
}

impl fmt::Display for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.comps[0], self.comps[1], self.comps[2])
    }
}

/// Builds the affine family map of the defining equation.
pub fn build_family_map(params: &ParameterTuple) -> PlaneMap {
    let v = VarSpace::affine();
    let first = RationalFunction::from_poly(ParameterTuple::affine_form(&params.alpha, &v));
    let second = RationalFunction::new(
        ParameterTuple::affine_form(&params.beta, &v),
        ParameterTuple::affine_form(&params.gamma, &v),
    )
        .expect("gamma form is nonzero by the family invariant");
    PlaneMap { first, second }
}

/// Evaluates the clauses of the birationality lemma.
pub fn birationality_check(params: &ParameterTuple) -> BirationalityReport {
    let mut violated = Vec::new();
    let rows_independent = !(params.bc(0, 1).is_zero()
        && params.bc(0, 2).is_zero()
        && params.bc(1, 2).is_zero());
    if !rows_independent {
        violated.push(String::from("beta and gamma rows must be linearly independent"));
    }
    if params.ab(1, 2).is_zero() && params.ac(1, 2).is_zero() {
        violated.push(String::from("((ab)12, (ac)12) = (0, 0)"));
    }
    if params.ac(1, 2).is_zero() && params.bc(1, 2).is_zero() {
        violated.push(String::from("((ac)12, (bc)12) = (0, 0)"));
    }
    if params.ab(1, 2).is_zero()
        && params.bc(1, 2).is_zero()
        && !(params.beta[1].is_zero() && params.beta[2].is_zero())
    {
        violated.push(String::from("((ab)12, (bc)12) = (0, 0) while (b1, b2) != (0, 0)"));
    }
    BirationalityReport {
        is_birational: violated.is_empty(),
        violated_conditions: violated,
        degeneracy: params.degeneracy(),
    }
}

/// The closed-form inverse from the lemma proof; requires birationality.
pub fn invert_family(params: &ParameterTuple) -> Result<PlaneMap> {
    let report = birationality_check(params);
    if !report.is_birational {
        return Err(Error::NotBirational(report.violated_conditions));
    }
    let v = VarSpace::affine();
    let x = MultiPoly::var(&v, 0);
    let y = MultiPoly::var(&v, 1);
    let xy = x.mul_ref(&y);
    let c = |g: Gq| MultiPoly::constant(&v, g);

    let den = c(params.ab(1, 2)).sub_ref(&y.scale(&params.ac(1, 2)));
    let num1 = c(-params.ab(0, 2))
        .add_ref(&x.scale(&params.beta[2]))
        .add_ref(&y.scale(&params.ac(0, 2)))
        .sub_ref(&xy.scale(&params.gamma[2]));
    let num2 = c(params.ab(0, 1))
        .sub_ref(&x.scale(&params.beta[1]))
        .sub_ref(&y.scale(&params.ac(0, 1)))
        .add_ref(&xy.scale(&params.gamma[1]));
    Ok(PlaneMap {
        first: RationalFunction::new(num1, den.clone())?,
        second: RationalFunction::new(num2, den)?,
    })
}

/// The two Jacobian-determinant numerators:
/// for `f` the polynomial `a1(bc)02 - a2(bc)01 + a1(bc)12 x + a2(bc)12 y`
/// (the symbolic determinant is exactly `-detf / C^2` with `C` the gamma
/// form), and for the inverse `a0(bc)12 - a1(bc)02 + a2(bc)01 - (bc)12 x`
/// (the symbolic determinant of the closed-form inverse is exactly
/// `detfinv / D^2` with `D = (ab)12 - (ac)12 y` its denominator).
pub fn jacobian_numerators(params: &ParameterTuple) -> (MultiPoly, MultiPoly) {
    let v = VarSpace::affine();
    let a1 = &params.alpha[1];
    let a2 = &params.alpha[2];
    let bc02 = params.bc(0, 2);
    let bc01 = params.bc(0, 1);
    let bc12 = params.bc(1, 2);

    let det_f = MultiPoly::linear_form(
        &v,
        a1.mul_ref(&bc02).sub_ref(&a2.mul_ref(&bc01)),
        &[a1.mul_ref(&bc12), a2.mul_ref(&bc12)],
    );
    let det_finv = MultiPoly::linear_form(
        &v,
        params.alpha[0].mul_ref(&bc12).sub_ref(&a1.mul_ref(&bc02)).add_ref(&a2.mul_ref(&bc01)),
        &[-&bc12, Gq::zero()],
    );
    (det_f, det_finv)
}

/// Symbolic Jacobian determinant of a plane map, as a reduced function.
pub fn jacobian_determinant(map: &PlaneMap) -> RationalFunction {
    let fx = map.first.derivative(0);
    let fy = map.first.derivative(1);
    let gx = map.second.derivative(0);
    let gy = map.second.derivative(1);
    fx.mul_ref(&gy).sub_ref(&fy.mul_ref(&gx))
}

/// Clears denominators and reduces: the projective extension of a plane map.
pub fn homogenize(map: &PlaneMap) -> Result<ProjectiveMap> {
    let pv = VarSpace::projective();
    // Substitute x -> x1/x0, y -> x2/x0 and clear denominators.
    let x1_over_x0 = RationalFunction::new(MultiPoly::var(&pv, 1), MultiPoly::var(&pv, 0))?;
    let x2_over_x0 = RationalFunction::new(MultiPoly::var(&pv, 2), MultiPoly::var(&pv, 0))?;
    let args = [x1_over_x0, x2_over_x0];
    let p1 = map.first.subst(&args)?;
    let p2 = map.second.subst(&args)?;
    // [1 : p1 : p2] over a common denominator.
    let den_gcd = MultiPoly::gcd(p1.den(), p2.den())?;
    let l = p1.den().mul_ref(&p2.den().divide_exact(&den_gcd).expect("gcd divides"));
    let t0 = l.clone();
    let t1 = p1.num().mul_ref(&l.divide_exact(p1.den()).expect("lcm divisible"));
    let t2 = p2.num().mul_ref(&l.divide_exact(p2.den()).expect("lcm divisible"));
    // Pad with powers of x0 to a common homogeneous degree.
    let target = [&t0, &t1, &t2]
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.degree().unwrap())
        .max()
        .expect("denominator nonzero");
    let pad = |p: &MultiPoly| -> MultiPoly {
        let mut out = MultiPoly::zero(&pv);
        for (m, c) in p.terms() {
            let d = m.total_degree();
            out.add_term(m.with_exp(0, m.exp(0) + (target - d)), c.clone());
        }
        out
    };
    ProjectiveMap::new([pad(&t0), pad(&t1), pad(&t2)])
}

/// The projective extension written directly from the homogenized defining
/// equation, then reduced: `[x0*C : A*C : x0*B]` with `A`, `B`, `C` the
/// alpha, beta, gamma linear forms.
pub fn family_projective(params: &ParameterTuple) -> Result<ProjectiveMap> {
    let pv = VarSpace::projective();
    let x0 = MultiPoly::var(&pv, 0);
    let a = ParameterTuple::form(&params.alpha, &pv);
    let b = ParameterTuple::form(&params.beta, &pv);
    let c = ParameterTuple::form(&params.gamma, &pv);
    ProjectiveMap::new([x0.mul_ref(&c), a.mul_ref(&c), x0.mul_ref(&b)])
}

/// One composition step `F o G` for the family extension `F = [x0*C : A*C : x0*B]`,
/// reduced, exploiting the product structure for candidate common factors.
pub fn family_compose_step(
    params: &ParameterTuple,
    inner: &ProjectiveMap,
) -> Result<ProjectiveMap> {
    let g = inner.components();
    let row_eval = |row: &[Gq; 3]| -> MultiPoly {
        g[0].scale(&row[0]).add_ref(&g[1].scale(&row[1])).add_ref(&g[2].scale(&row[2]))
    };
    let a_val = row_eval(&params.alpha);
    let b_val = row_eval(&params.beta);
    let c_val = row_eval(&params.gamma);
    let mut comps = [g[0].mul_ref(&c_val), a_val.mul_ref(&c_val), g[0].mul_ref(&b_val)];
    if comps.iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateComposition);
    }
    let candidates: Vec<&MultiPoly> =
        [&a_val, &b_val, &c_val, &g[0], &g[1], &g[2]].into_iter().collect();
    reduce_common_factor(&mut comps, &candidates)?;
    Ok(ProjectiveMap::finish(comps))
}

/// Applies an affine change `(x, y) -> (a x + b, c y + d)` to the arguments
/// of a rational function (used by normal forms and fibration pullbacks).
pub fn affine_substitution(
    f: &RationalFunction,
    a: &Gq,
    b: &Gq,
    c: &Gq,
    d: &Gq,
) -> RationalFunction {
    let v = f.vars().clone();
    let x = MultiPoly::var(&v, 0);
    let y = MultiPoly::var(&v, 1);
    let ax_b = x.scale(a).add_ref(&MultiPoly::constant(&v, b.clone()));
    let cy_d = y.scale(c).add_ref(&MultiPoly::constant(&v, d.clone()));
    let args = [RationalFunction::from_poly(ax_b), RationalFunction::from_poly(cy_d)];
    let n = eval_poly_at_rationals(f.num(), &args);
    let den = eval_poly_at_rationals(f.den(), &args);
    n.div_ref(&den).expect("affine substitution keeps denominators nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn params(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> ParameterTuple {
        ParameterTuple::from_ints(a, b, c).unwrap()
    }

    fn rf(s: &str, t: &str) -> RationalFunction {
        let v = VarSpace::affine();
        RationalFunction::new(MultiPoly::parse(&v, s).unwrap(), MultiPoly::parse(&v, t).unwrap())
            .unwrap()
    }

    #[test]
    fn gamma_constraint_enforced() {
        assert!(matches!(
            ParameterTuple::from_ints([0, 0, 1], [0, 1, 0], [1, 0, 0]),
            Err(Error::GammaConstraint)
        ));
    }

    #[test]
    fn build_family_examples() {
        // (y, x/y)
        let f = build_family_map(&params([0, 0, 1], [0, 1, 0], [0, 0, 1]));
        assert_eq!(f.first(), &rf("y", "1"));
        assert_eq!(f.second(), &rf("x", "y"));
        // (x, y/x)
        let f = build_family_map(&params([0, 1, 0], [0, 0, 1], [0, 1, 0]));
        assert_eq!(f.first(), &rf("x", "1"));
        assert_eq!(f.second(), &rf("y", "x"));
        // (x+y, 1/x)
        let f = build_family_map(&params([0, 1, 1], [1, 0, 0], [0, 1, 0]));
        assert_eq!(f.first(), &rf("x+y", "1"));
        assert_eq!(f.second(), &rf("1", "x"));
    }

    #[test]
    fn birationality_examples() {
        // dependent beta/gamma rows
        let r = birationality_check(&params([1, 1, 0], [0, 1, 0], [0, 2, 0]));
        assert!(!r.is_birational);
        assert!(r.violated_conditions[0].contains("linearly independent"));

        // (y, x/y): birational, alpha-gamma degenerate
        let r = birationality_check(&params([0, 0, 1], [0, 1, 0], [0, 0, 1]));
        assert!(r.is_birational);
        assert_eq!(r.degeneracy, Degeneracy::AlphaGamma);

        // (x+y, 1/x): birational, beta-gamma degenerate
        let r = birationality_check(&params([0, 1, 1], [1, 0, 0], [0, 1, 0]));
        assert!(r.is_birational);
        assert_eq!(r.degeneracy, Degeneracy::BetaGamma);
    }

    #[test]
    fn inverse_examples() {
        // f = (x+y, 1/x): inverse (1/y, x - 1/y)
        let p = params([0, 1, 1], [1, 0, 0], [0, 1, 0]);
        let inv = invert_family(&p).unwrap();
        assert_eq!(inv.first(), &rf("1", "y"));
        assert_eq!(inv.second(), &rf("x*y-1", "y"));
        let f = build_family_map(&p);
        assert!(f.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&f).unwrap().is_identity());

        // f = (y, x/y): inverse (x*y, x)
        let p = params([0, 0, 1], [0, 1, 0], [0, 0, 1]);
        let inv = invert_family(&p).unwrap();
        assert_eq!(inv.first(), &rf("x*y", "1"));
        assert_eq!(inv.second(), &rf("x", "1"));
        assert!(build_family_map(&p).compose(&inv).unwrap().is_identity());

        // non-birational input refused with the violated clause
        let bad = params([1, 1, 0], [0, 1, 0], [0, 2, 0]);
        assert!(matches!(invert_family(&bad), Err(Error::NotBirational(_))));
    }

    #[test]
    fn homogenize_examples() {
        let pv = VarSpace::projective();
        let pp = |s: &str| MultiPoly::parse(&pv, s).unwrap();
        let h = |a, b, c| homogenize(&build_family_map(&params(a, b, c))).unwrap();

        let f = h([0, 0, 1], [0, 1, 0], [0, 0, 1]);
        assert_eq!(f.components(), &[pp("x0*x2"), pp("x2^2"), pp("x0*x1")]);
        assert_eq!(f.degree(), 2);

        let f = h([0, 1, 0], [0, 0, 1], [0, 1, 0]);
        assert_eq!(f.components(), &[pp("x0*x1"), pp("x1^2"), pp("x0*x2")]);

        let f = h([0, 1, 1], [1, 0, 0], [0, 1, 0]);
        assert_eq!(f.components(), &[pp("x0*x1"), pp("x1^2+x1*x2"), pp("x0^2")]);
    }

    #[test]
    fn homogenize_agrees_with_direct_extension() {
        for (a, b, c) in [
            ([0, 0, 1], [0, 1, 0], [0, 0, 1]),
            ([0, 1, 1], [1, 0, 0], [0, 1, 0]),
            ([1, 2, 1], [3, 1, 0], [1, 1, 2]),
            ([0, 1, 1], [0, 1, 0], [0, 1, 1]),
        ] {
            let p = params(a, b, c);
            let via_plane = homogenize(&build_family_map(&p)).unwrap();
            let direct = family_projective(&p).unwrap();
            assert_eq!(via_plane, direct, "mismatch for {a:?} {b:?} {c:?}");
            assert!(direct.degree() <= 2);
        }
    }

    #[test]
    fn compose_reduce_examples() {
        let pv = VarSpace::projective();
        let pp = |s: &str| MultiPoly::parse(&pv, s).unwrap();
        // F = [x0*x2 : x2^2 : x0*x1] composed with itself: common factor x0
        let f = ProjectiveMap::new([pp("x0*x2"), pp("x2^2"), pp("x0*x1")]).unwrap();
        let f2 = ProjectiveMap::compose_reduce(&f, &f).unwrap();
        assert_eq!(f2.degree(), 3);
        assert_eq!(f2.components(), &[pp("x0*x1*x2"), pp("x0*x1^2"), pp("x2^3")]);

        // F = [x0*x1 : x1^2 : x0*x2] with itself: degree 3, no extra factor
        let f = ProjectiveMap::new([pp("x0*x1"), pp("x1^2"), pp("x0*x2")]).unwrap();
        let f2 = ProjectiveMap::compose_reduce(&f, &f).unwrap();
        assert_eq!(f2.components(), &[pp("x0*x1^2"), pp("x1^3"), pp("x0^2*x2")]);

        // identity is neutral
        let id = ProjectiveMap::identity();
        assert_eq!(ProjectiveMap::compose_reduce(&f, &id).unwrap(), f);
        assert_eq!(ProjectiveMap::compose_reduce(&id, &f).unwrap(), f);
    }

    #[test]
    fn family_compose_step_matches_generic() {
        let p = params([0, 1, 1], [1, 0, 0], [0, 1, 0]);
        let f = family_projective(&p).unwrap();
        let via_generic = ProjectiveMap::compose_reduce(&f, &f).unwrap();
        let via_family = family_compose_step(&p, &f).unwrap();
        assert_eq!(via_generic, via_family);
    }

    #[test]
    fn inverse_round_trip_projective() {
        let p = params([0, 1, 1], [1, 0, 0], [0, 1, 0]);
        let f = homogenize(&build_family_map(&p)).unwrap();
        let g = homogenize(&invert_family(&p).unwrap()).unwrap();
        let comp = ProjectiveMap::compose_reduce(&f, &g).unwrap();
        assert!(comp.is_identity(), "f o f^-1 = {}", comp.to_string());
    }

    #[test]
    fn jacobian_matches_symbolic_for_fixed_tuples() {
        let v = VarSpace::affine();
        for (a, b, c) in [
            ([0, 0, 1], [0, 1, 0], [0, 0, 1]),
            ([1, 2, 1], [3, 1, 0], [1, 1, 2]),
            ([0, 1, 1], [1, 0, 0], [0, 1, 0]),
        ] {
            let p = params(a, b, c);
            let (det_f, _) = jacobian_numerators(&p);
            let sym = jacobian_determinant(&build_family_map(&p));
            let gamma_form = ParameterTuple::affine_form(p.gamma(), &v);
            let expected =
                RationalFunction::new(det_f.neg_ref(), gamma_form.mul_ref(&gamma_form)).unwrap();
            assert_eq!(sym, expected, "tuple {a:?} {b:?} {c:?}");
        }
    }

    #[test]
    fn inverse_jacobian_matches_symbolic() {
        let v = VarSpace::affine();
        for (a, b, c) in [
            ([1, 2, 1], [3, 1, 0], [1, 1, 2]),
            ([2, -1, 3], [1, 2, 0], [0, 1, 1]),
            ([0, 1, 1], [1, 0, 0], [0, 1, 0]),
        ] {
            let p = params(a, b, c);
            let inv = invert_family(&p).unwrap();
            let sym = jacobian_determinant(&inv);
            let (_, det_finv) = jacobian_numerators(&p);
            let y = MultiPoly::var(&v, 1);
            let den = MultiPoly::constant(&v, p.ab(1, 2)).sub_ref(&y.scale(&p.ac(1, 2)));
            let expected = RationalFunction::new(det_finv, den.mul_ref(&den)).unwrap();
            assert_eq!(sym, expected, "tuple {a:?} {b:?} {c:?}");
        }
    }

    #[test]
    fn jacobian_degenerate_rows() {
        // dependent beta/gamma rows kill all (bc) brackets: both numerators vanish
        let p = params([1, 1, 0], [0, 2, 0], [0, 1, 0]);
        let (df, dg) = jacobian_numerators(&p);
        assert!(df.is_zero() && dg.is_zero());
    }
}
