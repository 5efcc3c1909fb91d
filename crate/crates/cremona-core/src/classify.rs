//! Case classification of degenerate birational members and the static
//! degree-law predictions attached to each case, cross-checked against the
//! computed degree sequence.
//!
//! The decision tree follows the vanishing pattern of the brackets
//! `(ac)12`, `(bc)12` and the zero pattern of individual coefficients, plus
//! the exact periodicity of the one-dimensional map `h` and the vanishing of
//! the geometric sums `1 + a1^k + ... + a1^{nk}` where those matter.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::degrees::{
    degree_sequence, fit_recurrence, growth_class, DegreeSequence, GrowthTag, DEFAULT_TERM_BUDGET,
};
use crate::error::{Error, Result};
use crate::family::{birationality_check, Degeneracy, ParameterTuple};
use crate::moebius::{geometric_sum_vanishing, periodicity_exact, MoebiusMap};
use crate::poly::{Mono, MultiPoly, VarSpace};
use crate::scalar::GaussianRational;

type Gq = GaussianRational;

/// The two degenerate families and the gamma-split of the second one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseFamily {
    /// `(ac)12 = 0`
    AlphaGamma,
    /// `(bc)12 = 0`, `c1 c2 != 0`
    BetaGammaGeneric,
    /// `(bc)12 = 0`, `c1 = 0`
    BetaGammaGamma1,
    /// `(bc)12 = 0`, `c2 = 0`
    BetaGammaGamma2,
}

impl fmt::Display for CaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseFamily::AlphaGamma => "alpha-gamma",
            CaseFamily::BetaGammaGeneric => "beta-gamma-generic",
            CaseFamily::BetaGammaGamma1 => "beta-gamma-gamma1",
            CaseFamily::BetaGammaGamma2 => "beta-gamma-gamma2",
        };
        write!(f, "{s}")
    }
}

/// Theorem sub-case tags.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Subcase {
    CD2i,
    CD2ii,
    CD2iii,
    CD3i,
    CD3ii,
    CD3iii,
    G1ia,
    G1ib,
    G1ic,
    G1iia,
    G1iib,
    G2a,
    G2b1,
    G2b2,
}

impl Subcase {
    pub const ALL: [Subcase; 14] = [
        Subcase::CD2i,
        Subcase::CD2ii,
        Subcase::CD2iii,
        Subcase::CD3i,
        Subcase::CD3ii,
        Subcase::CD3iii,
        Subcase::G1ia,
        Subcase::G1ib,
        Subcase::G1ic,
        Subcase::G1iia,
        Subcase::G1iib,
        Subcase::G2a,
        Subcase::G2b1,
        Subcase::G2b2,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Subcase::CD2i => "CD2-i",
            Subcase::CD2ii => "CD2-ii",
            Subcase::CD2iii => "CD2-iii",
            Subcase::CD3i => "CD3-i",
            Subcase::CD3ii => "CD3-ii",
            Subcase::CD3iii => "CD3-iii",
            Subcase::G1ia => "G1-i-a",
            Subcase::G1ib => "G1-i-b",
            Subcase::G1ic => "G1-i-c",
            Subcase::G1iia => "G1-ii-a",
            Subcase::G1iib => "G1-ii-b",
            Subcase::G2a => "G2-a",
            Subcase::G2b1 => "G2-b1",
            Subcase::G2b2 => "G2-b2",
        }
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Derived quantities used by the classification, with provenance notes.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DerivedParams {
    /// Normal-form parameters of `h(y) = b0'/(c0' + y)` where applicable.
    pub h_gamma0: Option<Gq>,
    pub h_beta0: Option<Gq>,
    /// Period of `h` when finite.
    pub k: Option<u32>,
    /// Root-of-unity order of `a1` when finite.
    pub alpha1_order: Option<u32>,
    /// Minimal `n` with `1 + a1^k + ... + a1^{nk} = 0`, when one exists.
    pub vanish_n: Option<u32>,
    /// Human-readable notes on where each quantity came from.
    pub provenance: Vec<String>,
}

/// Classification outcome.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaseReport {
    pub family: CaseFamily,
    pub subcase: Subcase,
    pub derived: DerivedParams,
    /// Set when both degeneracy brackets vanish. Never true for birational
    /// tuples: `(ac)12 = (bc)12 = 0` forces `(ab)12 = 0` (the linear parts
    /// of alpha and beta are then both proportional to gamma's), violating
    /// the birationality lemma, so the dual-classification path is vacuous.
    pub both_families: bool,
}

/// Decides which theorem case a degenerate birational tuple falls into.
pub fn classify(params: &ParameterTuple) -> Result<CaseReport> {
    let report = birationality_check(params);
    if !report.is_birational {
        return Err(Error::NotBirational(report.violated_conditions));
    }
    let a = params.alpha();
    let c = params.gamma();
    match report.degeneracy {
        Degeneracy::NonDegenerate => Err(Error::NonDegenerate),
        Degeneracy::Both => {
            // unreachable for birational input; see CaseReport::both_families
            Err(Error::NonDegenerate)
        }
        Degeneracy::AlphaGamma => {
            let mut derived = DerivedParams::default();
            let subcase = if a[1].is_zero() && c[1].is_zero() {
                Subcase::CD2ii
            } else if a[2].is_zero() && c[2].is_zero() {
                Subcase::CD2iii
            } else {
                // the bracket lemma leaves only the all-nonzero branch
                debug_assert!(
                    !a[1].is_zero() && !a[2].is_zero() && !c[1].is_zero() && !c[2].is_zero()
                );
                Subcase::CD2i
            };
            derived.provenance.push(String::from("(ac)12 = 0 family; zero pattern of a1, a2, c1, c2"));
            Ok(CaseReport { family: CaseFamily::AlphaGamma, subcase, derived, both_families: false })
        }
        Degeneracy::BetaGamma => {
            if !c[1].is_zero() && !c[2].is_zero() {
                let mut derived = DerivedParams::default();
                derived.provenance.push(String::from("(bc)12 = 0, c1 c2 != 0"));
                let subcase = if a[1].is_zero() {
                    Subcase::CD3ii
                } else if a[2].is_zero() {
                    Subcase::CD3iii
                } else {
                    Subcase::CD3i
                };
                Ok(CaseReport {
                    family: CaseFamily::BetaGammaGeneric,
                    subcase,
                    derived,
                    both_families: false,
                })
            } else if c[1].is_zero() {
                classify_gamma1(params)
            } else {
                classify_gamma2(params)
            }
        }
    }
}

/// Normal-form `h` parameters for the `c1 = 0` branch: `c0' = c0 + b2`,
/// `b0' = (bc)02`.
pub fn gamma1_h_params(params: &ParameterTuple) -> (Gq, Gq) {
    let c = params.gamma();
    let b = params.beta();
    (c[0].add_ref(&b[2]), params.bc(0, 2))
}

/// Normal-form `h` parameters for the `c2 = 0` branch:
/// `c0' = c0 + a0 c1 + a2 b1`, `b0' = a2 (bc)01`.
pub fn gamma2_h_params(params: &ParameterTuple) -> (Gq, Gq) {
    let a = params.alpha();
    let b = params.beta();
    let c = params.gamma();
    (
        c[0].add_ref(&a[0].mul_ref(&c[1])).add_ref(&a[2].mul_ref(&b[1])),
        a[2].mul_ref(&params.bc(0, 1)),
    )
}

fn classify_gamma1(params: &ParameterTuple) -> Result<CaseReport> {
    let a = params.alpha();
    let (h_c0, h_b0) = gamma1_h_params(params);
    let mut derived = DerivedParams {
        h_gamma0: Some(h_c0.clone()),
        h_beta0: Some(h_b0.clone()),
        ..DerivedParams::default()
    };
    derived.provenance.push(alloc::format!(
        "h(y) = b0'/(c0'+y) with c0' = c0 + b2 = {h_c0}, b0' = (bc)02 = {h_b0}"
    ));
    // b0' != 0 for birational members (b and c rows would be dependent)
    let h = MoebiusMap::from_h(&h_c0, &h_b0).expect("birational members have b0' != 0");
    let period = periodicity_exact(&h).period;
    derived.k = period;
    derived.alpha1_order = a[1].root_of_unity_order();
    if a[2].is_zero() {
        let subcase = match period {
            None => Subcase::G1iia,
            Some(k) => {
                derived.provenance.push(alloc::format!("h is {k}-periodic"));
                Subcase::G1iib
            }
        };
        return Ok(CaseReport {
            family: CaseFamily::BetaGammaGamma1,
            subcase,
            derived,
            both_families: false,
        });
    }
    let subcase = match period {
        None => Subcase::G1ia,
        Some(k) => {
            derived.provenance.push(alloc::format!("h is {k}-periodic"));
            match geometric_sum_vanishing(&a[1], k, u32::MAX) {
                Some(n) => {
                    derived.vanish_n = Some(n);
                    derived.provenance.push(alloc::format!(
                        "geometric sum 1 + a1^{k} + ... vanishes first at n = {n}"
                    ));
                    Subcase::G1ic
                }
                None => {
                    derived.provenance.push(String::from(
                        "geometric sums never vanish (a1^k has root-of-unity order 1 or none)",
                    ));
                    Subcase::G1ib
                }
            }
        }
    };
    Ok(CaseReport { family: CaseFamily::BetaGammaGamma1, subcase, derived, both_families: false })
}

fn classify_gamma2(params: &ParameterTuple) -> Result<CaseReport> {
    let a = params.alpha();
    let mut derived = DerivedParams::default();
    if !a[1].is_zero() {
        derived.provenance.push(String::from("(bc)12 = 0, c2 = 0, a1 != 0"));
        return Ok(CaseReport {
            family: CaseFamily::BetaGammaGamma2,
            subcase: Subcase::G2a,
            derived,
            both_families: false,
        });
    }
    let (h_c0, h_b0) = gamma2_h_params(params);
    derived.h_gamma0 = Some(h_c0.clone());
    derived.h_beta0 = Some(h_b0.clone());
    derived.provenance.push(alloc::format!(
        "h(z) = b0'/(c0'+z) with c0' = c0 + a0 c1 + a2 b1 = {h_c0}, b0' = a2 (bc)01 = {h_b0}"
    ));
    let h = MoebiusMap::from_h(&h_c0, &h_b0).expect("birational members have b0' != 0");
    let period = periodicity_exact(&h).period;
    derived.k = period;
    let subcase = match period {
        None => Subcase::G2b1,
        Some(k) => {
            derived.provenance.push(alloc::format!("h is {k}-periodic"));
            Subcase::G2b2
        }
    };
    Ok(CaseReport { family: CaseFamily::BetaGammaGamma2, subcase, derived, both_families: false })
}

/// Closed-form degree laws attached to the cases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClosedForm {
    /// `d_n = 2^n`
    PowersOfTwo,
    /// `d_{n+2} = d_{n+1} + d_n` with seeds 2, 3
    FibonacciLike,
    /// `d_n = 1 + n`
    OnePlusN,
    /// `d_n = 1 + n` for `n <= k-1`, then `d_n = k`
    EventuallyConstant { k: u32 },
    /// `d` is periodic with the stated period and `d = 1` exactly at
    /// multiples of it (the iterate there is the identity map)
    PeriodicIdentity { period: u32 },
    /// `d_n = 2` for all `n`
    ConstantTwo,
    /// `d_n = 2` except `d_n = 1` at multiples of the stated period
    TwoExceptAtMultiples { period: u32 },
}

impl ClosedForm {
    /// The value pinned by the closed form at index `n` (1-based), when the
    /// form determines it outright.
    pub fn predicted(&self, n: u32) -> Option<u32> {
        match self {
            ClosedForm::PowersOfTwo => Some(1u32.checked_shl(n).expect("small n")),
            ClosedForm::FibonacciLike => {
                let (mut a, mut b) = (2u32, 3u32);
                if n == 1 {
                    return Some(2);
                }
                for _ in 2..n {
                    let c = a + b;
                    a = b;
                    b = c;
                }
                Some(b)
            }
            ClosedForm::OnePlusN => Some(1 + n),
            ClosedForm::EventuallyConstant { k } => {
                if n <= k - 1 {
                    Some(1 + n)
                } else {
                    Some(*k)
                }
            }
            ClosedForm::PeriodicIdentity { period } => {
                if n % period == 0 {
                    Some(1)
                } else {
                    None
                }
            }
            ClosedForm::ConstantTwo => Some(2),
            ClosedForm::TwoExceptAtMultiples { period } => {
                Some(if n % period == 0 { 1 } else { 2 })
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ClosedForm::PowersOfTwo => String::from("d_n = 2^n"),
            ClosedForm::FibonacciLike => String::from("d_{n+2} = d_{n+1} + d_n, seeds 2, 3"),
            ClosedForm::OnePlusN => String::from("d_n = 1 + n"),
            ClosedForm::EventuallyConstant { k } => {
                alloc::format!("d_n = 1 + n for n <= {}, then constant {k}", k - 1)
            }
            ClosedForm::PeriodicIdentity { period } => {
                alloc::format!("{period}-periodic with d = 1 at multiples of {period}")
            }
            ClosedForm::ConstantTwo => String::from("d_n = 2"),
            ClosedForm::TwoExceptAtMultiples { period } => {
                alloc::format!("d_n = 2 except d = 1 at multiples of {period}")
            }
        }
    }
}

/// Static prediction for one case: recurrence polynomial, optional divisor
/// action matrix transcribed from the blow-up computations, closed form and
/// the seed degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PredictionModel {
    pub subcase: Subcase,
    pub char_poly: MultiPoly,
    pub picard_matrix: Option<Vec<Vec<i64>>>,
    pub closed_form: ClosedForm,
    pub initial_degrees: Vec<u32>,
    pub expected_growth: GrowthTag,
}

fn z_poly(coeffs: &[i64]) -> MultiPoly {
    let zv = VarSpace::single("z");
    let mut p = MultiPoly::zero(&zv);
    for (e, &c) in coeffs.iter().enumerate() {
        p.add_term(Mono::from_exps(&[e as u32]), Gq::from_int(c));
    }
    p
}

/// `z^p (z-1)^2` as an explicit coefficient list.
fn eventually_constant_char(k: u32) -> MultiPoly {
    let zv = VarSpace::single("z");
    let p = k.saturating_sub(2);
    let zp = MultiPoly::monomial(&zv, &[p], Gq::one());
    zp.mul_ref(&z_poly(&[1, -2, 1]))
}

fn cyclotomic_like(period: u32) -> MultiPoly {
    // z^period - 1
    let zv = VarSpace::single("z");
    let mut p = MultiPoly::monomial(&zv, &[period], Gq::one());
    p.add_term(Mono::ONE, Gq::from_int(-1));
    p
}

/// Emits the static prediction model for a classified case.
pub fn predicted_model(report: &CaseReport) -> PredictionModel {
    let sc = report.subcase;
    match sc {
        Subcase::CD2i | Subcase::CD3i => PredictionModel {
            subcase: sc,
            char_poly: z_poly(&[-2, 1]),
            picard_matrix: Some(alloc::vec![alloc::vec![2]]),
            closed_form: ClosedForm::PowersOfTwo,
            initial_degrees: alloc::vec![2],
            expected_growth: GrowthTag::Exponential,
        },
        Subcase::CD2ii | Subcase::CD3ii | Subcase::G2a => PredictionModel {
            subcase: sc,
            char_poly: z_poly(&[-1, -1, 1]),
            picard_matrix: Some(alloc::vec![alloc::vec![2, 1], alloc::vec![-1, -1]]),
            closed_form: ClosedForm::FibonacciLike,
            initial_degrees: alloc::vec![2, 3],
            expected_growth: GrowthTag::Exponential,
        },
        Subcase::CD2iii | Subcase::CD3iii | Subcase::G1ia => PredictionModel {
            subcase: sc,
            char_poly: z_poly(&[1, -2, 1]),
            picard_matrix: Some(alloc::vec![alloc::vec![2, 1], alloc::vec![-1, 0]]),
            closed_form: ClosedForm::OnePlusN,
            initial_degrees: alloc::vec![2, 3],
            expected_growth: GrowthTag::Linear,
        },
        Subcase::G1ib => {
            let k = report.derived.k.expect("G1-i-b carries the period of h");
            let seeds: Vec<u32> = (1..=k).map(|n| if n <= k - 1 { 1 + n } else { k }).collect();
            PredictionModel {
                subcase: sc,
                char_poly: eventually_constant_char(k),
                picard_matrix: None,
                closed_form: ClosedForm::EventuallyConstant { k },
                initial_degrees: seeds,
                expected_growth: GrowthTag::Bounded,
            }
        }
        Subcase::G1ic => {
            let k = report.derived.k.expect("G1-i-c carries the period of h");
            let n = report.derived.vanish_n.expect("G1-i-c carries the vanishing index");
            let period = (n + 1) * k;
            PredictionModel {
                subcase: sc,
                char_poly: cyclotomic_like(period),
                picard_matrix: None,
                closed_form: ClosedForm::PeriodicIdentity { period },
                initial_degrees: Vec::new(),
                expected_growth: GrowthTag::Bounded,
            }
        }
        Subcase::G1iia | Subcase::G2b1 => PredictionModel {
            subcase: sc,
            char_poly: z_poly(&[-1, 1]),
            picard_matrix: None,
            closed_form: ClosedForm::ConstantTwo,
            initial_degrees: alloc::vec![2],
            expected_growth: GrowthTag::Bounded,
        },
        Subcase::G1iib => {
            let k = report.derived.k.expect("G1-ii-b carries the period of h");
            PredictionModel {
                subcase: sc,
                char_poly: cyclotomic_like(k),
                picard_matrix: None,
                closed_form: ClosedForm::TwoExceptAtMultiples { period: k },
                initial_degrees: Vec::new(),
                expected_growth: GrowthTag::Bounded,
            }
        }
        Subcase::G2b2 => {
            let k = report.derived.k.expect("G2-b2 carries the period of h");
            PredictionModel {
                subcase: sc,
                char_poly: cyclotomic_like(2 * k),
                picard_matrix: None,
                closed_form: ClosedForm::TwoExceptAtMultiples { period: 2 * k },
                initial_degrees: Vec::new(),
                expected_growth: GrowthTag::Bounded,
            }
        }
    }
}

/// Characteristic polynomial `det(zI - M)` of a small integer matrix.
pub fn char_poly_of_matrix(m: &[Vec<i64>]) -> MultiPoly {
    let zv = VarSpace::single("z");
    let n = m.len();
    let entries: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = MultiPoly::constant(&zv, Gq::from_int(-m[i][j]));
                    if i == j {
                        e.add_term(Mono::from_exps(&[1]), Gq::one());
                    }
                    e
                })
                .collect()
        })
        .collect();
    det_recursive(&entries)
}

fn det_recursive(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let vars = m[0][0].vars().clone();
    let mut acc = MultiPoly::zero(&vars);
    for j in 0..n {
        let minor: Vec<Vec<MultiPoly>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
            .collect();
        let term = m[0][j].mul_ref(&det_recursive(&minor));
        if j % 2 == 0 {
            acc = acc.add_ref(&term);
        } else {
            acc = acc.sub_ref(&term);
        }
    }
    acc
}

/// Expected collision pattern (line label, iterate) of the stability
/// diagnostic, as read off the per-case proofs.
pub fn expected_collisions(subcase: Subcase) -> &'static [(&'static str, usize)] {
    match subcase {
        Subcase::CD2i | Subcase::CD3i => &[],
        Subcase::CD2ii | Subcase::CD3ii => &[("S0", 0)],
        Subcase::CD2iii | Subcase::CD3iii => &[("S1", 0)],
        Subcase::G1ia | Subcase::G1ib | Subcase::G1ic => &[("S0", 0), ("S1", 1)],
        Subcase::G1iia | Subcase::G1iib => &[("S0", 0), ("S1", 0)],
        Subcase::G2a => &[("S1", 0)],
        Subcase::G2b1 | Subcase::G2b2 => &[("S0", 0), ("S1", 0)],
    }
}

/// One reference parameter tuple per sub-case tag, used by the test suites
/// and handy as a demonstration batch.
pub fn reference_corpus() -> Vec<(Subcase, ParameterTuple)> {
    let params = |a: [i64; 3], b: [i64; 3], c: [i64; 3]| {
        ParameterTuple::from_ints(a, b, c).expect("corpus tuples are valid")
    };
    let i = Gq::i();
    let one = Gq::one();
    let zero = Gq::zero();
    let g1ic = ParameterTuple::new(
        [zero.clone(), i, one.clone()],
        [one.clone(), zero.clone(), zero.clone()],
        [zero.clone(), zero.clone(), one.clone()],
    )
    .expect("valid");
    alloc::vec![
        (Subcase::CD2i, params([0, 1, 1], [0, 1, 0], [0, 1, 1])),
        (Subcase::CD2ii, params([0, 0, 1], [0, 1, 0], [0, 0, 1])),
        (Subcase::CD2iii, params([0, 1, 0], [0, 0, 1], [0, 1, 0])),
        (Subcase::CD3i, params([0, 1, 2], [1, 0, 0], [0, 1, 1])),
        (Subcase::CD3ii, params([0, 0, 1], [1, 0, 0], [0, 1, 1])),
        (Subcase::CD3iii, params([0, 1, 0], [1, 0, 0], [0, 1, 1])),
        (Subcase::G1ia, params([0, 1, 1], [1, 0, 0], [1, 0, 1])),
        (Subcase::G1ib, params([0, 1, 1], [1, 0, 0], [0, 0, 1])),
        (Subcase::G1ic, g1ic),
        (Subcase::G1iia, params([0, 1, 0], [1, 0, 0], [1, 0, 1])),
        (Subcase::G1iib, params([0, 1, 0], [1, 0, 0], [0, 0, 1])),
        (Subcase::G2a, params([0, 1, 1], [1, 0, 0], [0, 1, 0])),
        (Subcase::G2b1, params([0, 0, 1], [1, 0, 0], [1, 1, 0])),
        (Subcase::G2b2, params([0, 0, 1], [-1, 0, 0], [1, 1, 0])),
    ]
}

/// Outcome of verifying a prediction against the computed sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub subcase: Subcase,
    pub degrees: DegreeSequence,
    pub closed_form_ok: bool,
    /// `(index, computed, predicted)` of the first term-by-term mismatch.
    pub first_mismatch: Option<(usize, u32, u32)>,
    pub annihilation_ok: bool,
    pub growth_ok: bool,
    pub expected_growth: GrowthTag,
    pub observed_growth: GrowthTag,
    pub pass: bool,
}

/// Computes the degree sequence and verifies the predicted closed form,
/// the annihilation by the predicted characteristic polynomial, and the
/// growth class, term by term.
pub fn cross_check(params: &ParameterTuple, n: usize) -> Result<VerificationReport> {
    let report = classify(params)?;
    let model = predicted_model(&report);
    let seq = degree_sequence(params, n, DEFAULT_TERM_BUDGET)?;

    // (i) closed form, term by term
    let mut closed_form_ok = true;
    let mut first_mismatch = None;
    for (idx, &d) in seq.degrees.iter().enumerate() {
        let n1 = (idx + 1) as u32;
        if let Some(pred) = model.closed_form.predicted(n1) {
            if pred != d {
                closed_form_ok = false;
                first_mismatch = Some((idx + 1, d, pred));
                break;
            }
        }
    }
    // periodic forms additionally demand exact periodicity of the window
    if closed_form_ok {
        if let ClosedForm::PeriodicIdentity { period } = model.closed_form {
            let p = period as usize;
            for idx in 0..seq.degrees.len() {
                if idx + p < seq.degrees.len() && seq.degrees[idx] != seq.degrees[idx + p] {
                    closed_form_ok = false;
                    first_mismatch =
                        Some((idx + 1 + p, seq.degrees[idx + p], seq.degrees[idx]));
                    break;
                }
            }
        }
    }

    // (ii) the predicted characteristic polynomial annihilates the sequence
    let annihilation_ok = annihilates(&model.char_poly, &seq.degrees);

    // (iii) growth class matches the entropy claim
    let fit = fit_recurrence(&seq)?;
    let observed = growth_class(&fit, &seq);
    let growth_ok = observed.tag == model.expected_growth;

    let pass = closed_form_ok && annihilation_ok && growth_ok;
    Ok(VerificationReport {
        subcase: report.subcase,
        degrees: seq,
        closed_form_ok,
        first_mismatch,
        annihilation_ok,
        growth_ok,
        expected_growth: model.expected_growth,
        observed_growth: observed.tag,
        pass,
    })
}

/// Whether a monic polynomial in `z` annihilates the sequence on every full
/// window: `sum_i c_i d_{m+i} = 0` for all valid `m`.
pub fn annihilates(char_poly: &MultiPoly, degrees: &[u32]) -> bool {
    let order = char_poly.degree().unwrap_or(0) as usize;
    if degrees.len() <= order {
        return false; // no window to check: refuse to claim success
    }
    let mut coeffs = alloc::vec![BigRational::zero(); order + 1];
    for (m, c) in char_poly.terms() {
        coeffs[m.total_degree() as usize] = c.re().clone();
    }
    for mstart in 0..degrees.len() - order {
        let mut acc = BigRational::zero();
        for (i, c) in coeffs.iter().enumerate() {
            acc += c * BigRational::from_integer(degrees[mstart + i].into());
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn params(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> ParameterTuple {
        ParameterTuple::from_ints(a, b, c).unwrap()
    }

    fn gauss(a: [(i64, i64); 3], b: [(i64, i64); 3], c: [(i64, i64); 3]) -> ParameterTuple {
        let conv = |v: [(i64, i64); 3]| {
            [Gq::from_ints(v[0].0, v[0].1), Gq::from_ints(v[1].0, v[1].1), Gq::from_ints(v[2].0, v[2].1)]
        };
        ParameterTuple::new(conv(a), conv(b), conv(c)).unwrap()
    }

    #[test]
    fn classify_examples() {
        // (y, x/y) is CD2-ii
        let r = classify(&params([0, 0, 1], [0, 1, 0], [0, 0, 1])).unwrap();
        assert_eq!(r.subcase, Subcase::CD2ii);
        assert!(!r.both_families);

        // (ix + y, 1/y) is G1-i-c with k = 2, n = 1
        let r = classify(&gauss(
            [(0, 0), (0, 1), (1, 0)],
            [(1, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (1, 0)],
        ))
        .unwrap();
        assert_eq!(r.subcase, Subcase::G1ic);
        assert_eq!(r.derived.k, Some(2));
        assert_eq!(r.derived.vanish_n, Some(1));

        // (y, 1/(1+x)) is G2-b1 (h non-periodic)
        let r = classify(&params([0, 0, 1], [1, 0, 0], [1, 1, 0])).unwrap();
        assert_eq!(r.subcase, Subcase::G2b1);

        // non-degenerate tuples are out of scope
        assert!(matches!(
            classify(&params([1, 2, 1], [3, 1, 0], [1, 1, 2])),
            Err(Error::NonDegenerate)
        ));
    }

    #[test]
    fn classify_whole_corpus() {
        for (sc, p) in reference_corpus() {
            let r = classify(&p).expect("corpus tuples classify");
            assert_eq!(r.subcase, sc, "tuple for {sc} misclassified as {}", r.subcase);
        }
    }

    #[test]
    fn both_brackets_zero_is_never_birational() {
        // the intersection of the two degenerate families is empty among
        // birational members; scan a small grid for evidence
        let vals = [-2i64, -1, 0, 1, 2];
        let mut checked = 0usize;
        for a1 in vals {
            for a2 in vals {
                for c1 in vals {
                    for c2 in vals {
                        for b1 in vals {
                            for b2 in vals {
                                let ac12 = a1 * c2 - a2 * c1;
                                let bc12 = b1 * c2 - b2 * c1;
                                if ac12 != 0 || bc12 != 0 || (c1 == 0 && c2 == 0) {
                                    continue;
                                }
                                let p = params([1, a1, a2], [1, b1, b2], [1, c1, c2]);
                                assert!(
                                    !birationality_check(&p).is_birational,
                                    "both-degenerate tuple must not be birational: {p:?}"
                                );
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn picard_matrices_match_char_polys() {
        for sc in Subcase::ALL {
            let report = CaseReport {
                family: CaseFamily::AlphaGamma,
                subcase: sc,
                derived: DerivedParams {
                    k: Some(2),
                    vanish_n: Some(1),
                    ..DerivedParams::default()
                },
                both_families: false,
            };
            let model = predicted_model(&report);
            if let Some(m) = &model.picard_matrix {
                assert_eq!(
                    char_poly_of_matrix(m),
                    model.char_poly,
                    "matrix/char-poly mismatch for {sc}"
                );
            }
        }
    }

    #[test]
    fn predicted_models_examples() {
        let r = classify(&params([0, 0, 1], [0, 1, 0], [0, 0, 1])).unwrap();
        let m = predicted_model(&r);
        assert_eq!(m.char_poly.to_string(), "z^2-z-1");
        assert_eq!(m.initial_degrees, alloc::vec![2, 3]);

        // G1-i-b with k = 2 predicts the constant-2 tail
        let r = classify(&params([0, 1, 1], [1, 0, 0], [0, 0, 1])).unwrap();
        assert_eq!(r.subcase, Subcase::G1ib);
        let m = predicted_model(&r);
        assert_eq!(m.closed_form, ClosedForm::EventuallyConstant { k: 2 });
        assert_eq!(m.closed_form.predicted(1), Some(2));
        assert_eq!(m.closed_form.predicted(5), Some(2));

        // G2-b2 with k = 3 predicts the 6-periodic 2,2,2,2,2,1 pattern
        let r = classify(&params([0, 0, 1], [-1, 0, 0], [1, 1, 0])).unwrap();
        assert_eq!(r.subcase, Subcase::G2b2);
        let m = predicted_model(&r);
        assert_eq!(m.closed_form, ClosedForm::TwoExceptAtMultiples { period: 6 });
        let pat: Vec<u32> = (1..=6).map(|n| m.closed_form.predicted(n).unwrap()).collect();
        assert_eq!(pat, alloc::vec![2, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn cross_check_examples() {
        // CD2-ii to N = 10: the Fibonacci prefix
        let r = cross_check(&params([0, 0, 1], [0, 1, 0], [0, 0, 1]), 10).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.degrees.degrees, alloc::vec![2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);

        // G1-i-c (ix + y, 1/y) to N = 8: 4-periodic degrees
        let p = gauss(
            [(0, 0), (0, 1), (1, 0)],
            [(1, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (1, 0)],
        );
        let r = cross_check(&p, 8).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.degrees.degrees, alloc::vec![2, 2, 2, 1, 2, 2, 2, 1]);

        // G2-b2 (y, -1/(1+x)) to N = 12: 6-periodic with d6 = d12 = 1
        let r = cross_check(&params([0, 0, 1], [-1, 0, 0], [1, 1, 0]), 12).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.degrees.degrees[5], 1);
        assert_eq!(r.degrees.degrees[11], 1);
    }

}
