//! Exceptional lines, indeterminacy points, collapse orbits and the
//! algebraic-stability diagnostic on the projective plane.
//!
//! The loci come from closed bracket formulas. For a degenerate member two of
//! the three generic lines (and two of the points on each side) coincide, and
//! the deduplicated lists have exactly two entries; collapse associations are
//! merged accordingly.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::family::{birationality_check, ParameterTuple, ProjectiveMap};
use crate::poly::{MultiPoly, VarSpace};
use crate::scalar::GaussianRational;

type Gq = GaussianRational;

/// A point of the projective plane with canonical scaling: the first nonzero
/// coordinate is 1, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint {
    coords: [Gq; 3],
}

impl ProjPoint {
    pub fn new(coords: [Gq; 3]) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid(String::from("projective point needs a nonzero coordinate")));
        }
        let lead = coords.iter().find(|c| !c.is_zero()).unwrap().clone();
        let inv = lead.inv().expect("nonzero");
        let coords = [
            coords[0].mul_ref(&inv),
            coords[1].mul_ref(&inv),
            coords[2].mul_ref(&inv),
        ];
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(coords: [i64; 3]) -> Result<Self> {
        ProjPoint::new([
            Gq::from_int(coords[0]),
            Gq::from_int(coords[1]),
            Gq::from_int(coords[2]),
        ])
    }

    pub fn coords(&self) -> &[Gq; 3] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// A line `l0 x0 + l1 x1 + l2 x2 = 0`, canonically scaled like a point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjLine {
    coeffs: [Gq; 3],
}

impl ProjLine {
    pub fn new(coeffs: [Gq; 3]) -> Result<Self> {
        let p = ProjPoint::new(coeffs)?;
        Ok(ProjLine { coeffs: p.coords })
    }

    pub fn coeffs(&self) -> &[Gq; 3] {
        &self.coeffs
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let mut acc = Gq::zero();
        for i in 0..3 {
            acc = acc.add_ref(&self.coeffs[i].mul_ref(&p.coords[i]));
        }
        acc.is_zero()
    }

    /// Two distinct points spanning the line.
    pub fn span(&self) -> (ProjPoint, ProjPoint) {
        let c = &self.coeffs;
        // pick the pivot coordinate = first nonzero coefficient
        let piv = c.iter().position(|x| !x.is_zero()).expect("line is nonzero");
        let others: Vec<usize> = (0..3).filter(|&i| i != piv).collect();
        let mk = |free: usize| -> ProjPoint {
            let mut v = [Gq::zero(), Gq::zero(), Gq::zero()];
            v[free] = Gq::one();
            // solve c[piv]*x = -c[free]
            v[piv] = -&c[free].div_ref(&c[piv]).expect("pivot nonzero");
            ProjPoint::new(v).expect("span point nonzero")
        };
        (mk(others[0]), mk(others[1]))
    }

    /// A point on the line parameterized by `t` (projective combination of
    /// the two span points); distinct `t` give distinct points.
    pub fn point_at(&self, t: &Gq) -> ProjPoint {
        let (p, q) = self.span();
        let coords = [
            p.coords[0].add_ref(&t.mul_ref(&q.coords[0])),
            p.coords[1].add_ref(&t.mul_ref(&q.coords[1])),
            p.coords[2].add_ref(&t.mul_ref(&q.coords[2])),
        ];
        ProjPoint::new(coords).expect("affine combination of span points is nonzero")
    }

    /// The defining linear form in the projective variable space.
    pub fn form(&self, vars: &VarSpace) -> MultiPoly {
        ParameterTuple::form(&self.coeffs, vars)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = VarSpace::projective();
        write!(f, "{{{}=0}}", self.form(&v))
    }
}

/// A labeled exceptional line with its collapse target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExceptionalLine {
    pub label: String,
    pub line: ProjLine,
    pub collapse_target: ProjPoint,
    pub target_label: String,
}

/// A labeled special point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledPoint {
    pub label: String,
    pub point: ProjPoint,
}

/// The full catalog of special loci of a birational member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecialLoci {
    /// Exceptional lines of `F` with their collapse targets (`Si -> Ai`).
    pub exceptional: Vec<ExceptionalLine>,
    /// Indeterminacy points of `F` (`Oi`).
    pub indeterminacy_f: Vec<LabeledPoint>,
    /// Exceptional lines of the inverse (`Ti`), collapsing to `Oi`.
    pub exceptional_inv: Vec<ExceptionalLine>,
    /// Indeterminacy points of the inverse (`Ai`).
    pub indeterminacy_inv: Vec<LabeledPoint>,
}

/// Computes all loci from the closed bracket formulas, merging coincident
/// entries (degenerate members have exactly two distinct lines per side).
pub fn special_loci(params: &ParameterTuple) -> Result<SpecialLoci> {
    let report = birationality_check(params);
    if !report.is_birational {
        return Err(Error::NotBirational(report.violated_conditions));
    }
    let a = params.alpha();
    let c = params.gamma();

    let s_lines = [
        ProjLine::new([Gq::one(), Gq::zero(), Gq::zero()])?,
        ProjLine::new([c[0].clone(), c[1].clone(), c[2].clone()])?,
        ProjLine::new([
            a[1].mul_ref(&params.bc(0, 2)).sub_ref(&a[2].mul_ref(&params.bc(0, 1))),
            a[1].mul_ref(&params.bc(1, 2)),
            a[2].mul_ref(&params.bc(1, 2)),
        ])?,
    ];
    let t_lines = [
        ProjLine::new([
            c[0].mul_ref(&params.ab(1, 2))
                .sub_ref(&c[1].mul_ref(&params.ab(0, 2)))
                .add_ref(&c[2].mul_ref(&params.ab(0, 1))),
            -params.bc(1, 2),
            Gq::zero(),
        ])?,
        ProjLine::new([params.ab(1, 2), Gq::zero(), -params.ac(1, 2)])?,
        ProjLine::new([Gq::one(), Gq::zero(), Gq::zero()])?,
    ];
    let o_points = [
        ProjPoint::new([params.bc(1, 2), params.bc(2, 0), params.bc(0, 1)])?,
        ProjPoint::new([Gq::zero(), a[2].clone(), -&a[1]])?,
        ProjPoint::new([Gq::zero(), c[2].clone(), -&c[1]])?,
    ];
    let mid = params.alpha()[0]
        .mul_ref(&params.bc(1, 2))
        .sub_ref(&a[1].mul_ref(&params.bc(0, 2)))
        .add_ref(&a[2].mul_ref(&params.bc(0, 1)));
    let a_points = [
        ProjPoint::from_ints([0, 1, 0])?,
        ProjPoint::from_ints([0, 0, 1])?,
        ProjPoint::new([
            params.bc(1, 2).mul_ref(&params.ac(1, 2)),
            mid.mul_ref(&params.ac(1, 2)),
            params.ab(1, 2).mul_ref(&params.bc(1, 2)),
        ])?,
    ];

    let dedup_lines = |lines: &[ProjLine; 3], targets: &[ProjPoint; 3], prefix: &str, tprefix: &str| -> Result<Vec<ExceptionalLine>> {
        let mut out: Vec<ExceptionalLine> = Vec::new();
        for i in 0..3 {
            match out.iter().find(|e| e.line == lines[i]) {
                Some(existing) => {
                    if existing.collapse_target != targets[i] {
                        return Err(Error::Invalid(alloc::format!(
                            "coincident lines {prefix}{i} with different collapse targets"
                        )));
                    }
                }
                None => out.push(ExceptionalLine {
                    label: alloc::format!("{prefix}{i}"),
                    line: lines[i].clone(),
                    collapse_target: targets[i].clone(),
                    target_label: alloc::format!("{tprefix}{i}"),
                }),
            }
        }
        Ok(out)
    };
    let dedup_points = |points: &[ProjPoint; 3], prefix: &str| -> Vec<LabeledPoint> {
        let mut out: Vec<LabeledPoint> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if !out.iter().any(|q| &q.point == p) {
                out.push(LabeledPoint { label: alloc::format!("{prefix}{i}"), point: p.clone() });
            }
        }
        out
    };

    Ok(SpecialLoci {
        exceptional: dedup_lines(&s_lines, &a_points, "S", "A")?,
        indeterminacy_f: dedup_points(&o_points, "O"),
        exceptional_inv: dedup_lines(&t_lines, &o_points, "T", "O")?,
        indeterminacy_inv: dedup_points(&a_points, "A"),
    })
}

/// Applies a projective map to a point; errors when the point is in the
/// indeterminacy locus (all components vanish).
pub fn apply_map(map: &ProjectiveMap, p: &ProjPoint) -> Result<ProjPoint> {
    let coords = p.coords();
    let vals: Vec<Gq> = map.components().iter().map(|c| c.eval(coords)).collect();
    if vals.iter().all(|v| v.is_zero()) {
        return Err(Error::IndeterminatePoint(p.to_string()));
    }
    ProjPoint::new([vals[0].clone(), vals[1].clone(), vals[2].clone()])
}

/// Result of following a point orbit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitRecord {
    /// The iterates actually visited, starting with the initial point.
    pub points: Vec<ProjPoint>,
    /// `(n, hit)` when the n-th iterate is an indeterminacy point of the map.
    pub collision: Option<(usize, ProjPoint)>,
    /// `(first_index, length)` when the orbit enters a previously seen point.
    pub cycle: Option<(usize, usize)>,
}

/// Follows the orbit of `p` under `map`, stopping at a collision with one of
/// the given indeterminacy points, at a cycle, or at the horizon.
pub fn orbit_of_point(
    map: &ProjectiveMap,
    p: &ProjPoint,
    indeterminacy: &[LabeledPoint],
    horizon: usize,
) -> OrbitRecord {
    assert!(horizon >= 1);
    let mut points = alloc::vec![p.clone()];
    let is_indet = |q: &ProjPoint| indeterminacy.iter().any(|lp| &lp.point == q);
    if is_indet(p) {
        return OrbitRecord { points, collision: Some((0, p.clone())), cycle: None };
    }
    for n in 1..=horizon {
        let cur = points.last().unwrap().clone();
        let next = match apply_map(map, &cur) {
            Ok(q) => q,
            Err(_) => {
                // the point is indeterminate even if not in the supplied list
                return OrbitRecord { points, collision: Some((n - 1, cur)), cycle: None };
            }
        };
        if is_indet(&next) {
            points.push(next.clone());
            return OrbitRecord { points, collision: Some((n, next)), cycle: None };
        }
        if let Some(idx) = points.iter().position(|q| q == &next) {
            let len = points.len() - idx;
            return OrbitRecord { points, collision: None, cycle: Some((idx, len)) };
        }
        points.push(next);
    }
    OrbitRecord { points, collision: None, cycle: None }
}

/// One recorded collision of a collapse orbit with an indeterminacy point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Collision {
    /// Label of the exceptional line whose collapse target was followed.
    pub line: String,
    /// Iterate count at which the orbit met the indeterminacy locus
    /// (0 means the collapse target itself is indeterminate).
    pub iterate: usize,
    /// The indeterminacy point that was hit.
    pub point: ProjPoint,
}

/// Outcome of the bounded algebraic-stability check on the plain plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ASReport {
    pub is_as_on_p2: bool,
    pub collisions: Vec<Collision>,
    pub horizon: usize,
}

/// Runs the collapse orbits of every exceptional line up to the horizon and
/// records every collision with an indeterminacy point of the map.
///
/// A clean run certifies stability only up to the horizon; the per-case
/// classifier supplies the exact answer and this diagnostic cross-checks it.
pub fn as_diagnostic(params: &ParameterTuple, horizon: usize) -> Result<ASReport> {
    let loci = special_loci(params)?;
    let map = crate::family::family_projective(params)?;
    let mut collisions = Vec::new();
    for exc in &loci.exceptional {
        let orbit = orbit_of_point(&map, &exc.collapse_target, &loci.indeterminacy_f, horizon);
        if let Some((n, hit)) = orbit.collision {
            collisions.push(Collision { line: exc.label.clone(), iterate: n, point: hit });
        }
    }
    Ok(ASReport { is_as_on_p2: collisions.is_empty(), collisions, horizon })
}
