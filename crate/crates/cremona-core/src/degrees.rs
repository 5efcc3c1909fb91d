//! Degree sequences of iterates, minimal linear recurrences, dynamical
//! degree estimation and growth classification.
//!
//! Degrees are computed by left-composition with reduction after every step,
//! never by expanding an unreduced power: the reduced degree is what the
//! growth theory is about, and unreduced degrees explode even in bounded
//! cases. Iteration stops early (with an explicit truncation marker) when a
//! component's term count exceeds the configured budget.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::{birationality_check, family_projective, ParameterTuple, ProjectiveMap};
use crate::poly::{MultiPoly, VarSpace};
use crate::scalar::GaussianRational;

/// Default cap on the number of terms a component may reach during
/// iteration; exponential cases are certified by a short prefix, so
/// unbounded expansion serves nothing.
pub const DEFAULT_TERM_BUDGET: usize = 200_000;

/// The exact degrees `d_1..d_N` of the reduced iterates (`d_0 = 1` implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub degrees: Vec<u32>,
    /// Set when the term budget stopped the iteration before `N` terms.
    pub truncated: bool,
}

impl DegreeSequence {
    pub fn from_values(degrees: Vec<u32>) -> Self {
        DegreeSequence { degrees, truncated: false }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// Computes `d_1..d_n` for a birational tuple by reduced iteration.
pub fn degree_sequence(params: &ParameterTuple, n: usize, budget: usize) -> Result<DegreeSequence> {
    let report = birationality_check(params);
    if !report.is_birational {
        return Err(Error::NotBirational(report.violated_conditions));
    }
    let f1 = family_projective(params)?;
    let mut degrees = Vec::with_capacity(n);
    let mut truncated = false;
    if n >= 1 {
        degrees.push(f1.degree());
        let mut current = f1;
        for _ in 2..=n {
            if current.components().iter().map(|c| c.num_terms()).max().unwrap_or(0) > budget {
                truncated = true;
                break;
            }
            current = crate::family::family_compose_step(params, &current)?;
            degrees.push(current.degree());
        }
    }
    Ok(DegreeSequence { degrees, truncated })
}

/// Degree sequence of an arbitrary projective map under self-composition.
pub fn degree_sequence_of_map(
    map: &ProjectiveMap,
    n: usize,
    budget: usize,
) -> Result<DegreeSequence> {
    let mut degrees = Vec::with_capacity(n);
    let mut truncated = false;
    if n >= 1 {
        degrees.push(map.degree());
        let mut current = map.clone();
        for _ in 2..=n {
            if current.components().iter().map(|c| c.num_terms()).max().unwrap_or(0) > budget {
                truncated = true;
                break;
            }
            current = ProjectiveMap::compose_reduce(map, &current)?;
            degrees.push(current.degree());
        }
    }
    Ok(DegreeSequence { degrees, truncated })
}

/// A minimal monic linear recurrence annihilating an observed sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceFit {
    /// `d[n+order] = coefficients[order-1] d[n+order-1] + ... + coefficients[0] d[n]`
    pub coefficients: Vec<GaussianRational>,
    /// `z^order - c_{order-1} z^{order-1} - ... - c_0`
    pub char_poly: MultiPoly,
    pub order: usize,
}

/// Fits the minimal monic recurrence over Q annihilating all full windows of
/// the sequence. Errors when fewer than 4 terms are given or when no order up
/// to half the sample length works.
pub fn fit_recurrence(seq: &DegreeSequence) -> Result<RecurrenceFit> {
    let data: Vec<BigRational> =
        seq.degrees.iter().map(|&d| BigRational::from_integer(BigInt::from(d))).collect();
    if data.len() < 4 {
        return Err(Error::Invalid(String::from("recurrence fit needs at least 4 terms")));
    }
    let max_order = data.len() / 2;
    for order in 1..=max_order {
        if let Some(coeffs) = solve_recurrence(&data, order) {
            return Ok(build_fit(coeffs));
        }
    }
    Err(Error::InconclusiveFit)
}

fn build_fit(coeffs: Vec<BigRational>) -> RecurrenceFit {
    let order = coeffs.len();
    let zv = VarSpace::single("z");
    let mut char_poly = MultiPoly::monomial(&zv, &[order as u32], GaussianRational::one());
    for (i, c) in coeffs.iter().enumerate() {
        char_poly.add_term(
            crate::poly::Mono::from_exps(&[i as u32]),
            -GaussianRational::new(c.clone(), BigRational::zero()),
        );
    }
    RecurrenceFit {
        coefficients: coeffs
            .into_iter()
            .map(|c| GaussianRational::new(c, BigRational::zero()))
            .collect(),
        char_poly,
        order,
    }
}

/// Solves for monic recurrence coefficients of the given order, if the whole
/// sequence is annihilated. Exact Gaussian elimination on the windowed
/// (Hankel) system.
fn solve_recurrence(data: &[BigRational], order: usize) -> Option<Vec<BigRational>> {
    let rows = data.len() - order;
    if rows == 0 {
        return None;
    }
    // system: sum_i x_i * data[n+i] = data[n+order]  for n = 0..rows-1
    let mut aug: Vec<Vec<BigRational>> = (0..rows)
        .map(|n| {
            let mut row: Vec<BigRational> = data[n..n + order].to_vec();
            row.push(data[n + order].clone());
            row
        })
        .collect();
    let cols = order;
    let mut pivot_of_col = alloc::vec![usize::MAX; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let piv = (r..rows).find(|&i| !aug[i][c].is_zero());
        let Some(piv) = piv else { continue };
        aug.swap(r, piv);
        let inv = aug[r][c].clone();
        for j in c..=cols {
            let t = &aug[r][j] / &inv;
            aug[r][j] = t;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let factor = aug[i][c].clone();
                for j in c..=cols {
                    let t = &aug[i][j] - &factor * &aug[r][j];
                    aug[i][j] = t;
                }
            }
        }
        pivot_of_col[c] = r;
        r += 1;
        if r == rows {
            break;
        }
    }
    for row in aug.iter().skip(r) {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }
    // free columns take value 0; read solution off pivots
    let mut sol = alloc::vec![BigRational::zero(); cols];
    for c in 0..cols {
        if pivot_of_col[c] != usize::MAX {
            sol[c] = aug[pivot_of_col[c]][cols].clone();
        }
    }
    // verify against every window (guards the underdetermined corner)
    for n in 0..rows {
        let mut acc = BigRational::zero();
        for i in 0..order {
            acc += &sol[i] * &data[n + i];
        }
        if acc != data[n + order] {
            return None;
        }
    }
    Some(sol)
}

/// Ratio estimator `d_N / d_{N-1}` for the dynamical degree.
pub fn dynamical_degree_estimate(seq: &DegreeSequence) -> Result<BigRational> {
    let n = seq.degrees.len();
    if n < 2 {
        return Err(Error::Invalid(String::from("ratio estimator needs at least 2 terms")));
    }
    Ok(BigRational::new(BigInt::from(seq.degrees[n - 1]), BigInt::from(seq.degrees[n - 2])))
}

/// Growth taxonomy of the degree sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthTag {
    Bounded,
    Linear,
    Quadratic,
    Exponential,
    Unclassified,
}

impl core::fmt::Display for GrowthTag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            GrowthTag::Bounded => "bounded",
            GrowthTag::Linear => "linear",
            GrowthTag::Quadratic => "quadratic",
            GrowthTag::Exponential => "exponential",
            GrowthTag::Unclassified => "unclassified",
        };
        write!(f, "{s}")
    }
}

/// Exact description of the dynamical degree, with decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynamicalDegree {
    One,
    Rational(BigRational),
    /// Largest real root of the stored polynomial (monic, root > 1 exists).
    LargestRootOf(MultiPoly),
}

impl DynamicalDegree {
    /// Decimal rendering with the given number of fractional digits,
    /// computed by exact bisection (no floating point).
    pub fn decimal(&self, digits: u32) -> String {
        match self {
            DynamicalDegree::One => decimal_of_rational(&BigRational::one(), digits),
            DynamicalDegree::Rational(r) => decimal_of_rational(r, digits),
            DynamicalDegree::LargestRootOf(p) => {
                let coeffs = real_coeffs(p);
                let root = largest_root_bisect(&coeffs, digits);
                decimal_of_rational(&root, digits)
            }
        }
    }

    /// Short human-readable description of the exact value.
    pub fn describe(&self) -> String {
        match self {
            DynamicalDegree::One => String::from("1"),
            DynamicalDegree::Rational(r) => r.to_string(),
            DynamicalDegree::LargestRootOf(p) => alloc::format!("largest real root of {p}"),
        }
    }
}

/// Growth classification result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthClass {
    pub tag: GrowthTag,
    pub dynamical_degree: DynamicalDegree,
    /// Diagnostics when the spectrum falls outside the known patterns.
    pub note: Option<String>,
}

/// Classifies growth from the fitted characteristic polynomial: a real root
/// `> 1` means exponential growth; otherwise the multiplicity of the root 1
/// decides (after stripping transient `z^t` factors), provided the remaining
/// spectrum consists of simple roots of unity.
pub fn growth_class(fit: &RecurrenceFit, seq: &DegreeSequence) -> GrowthClass {
    let coeffs = real_coeffs(&fit.char_poly);
    if count_roots_above_one(&coeffs) > 0 {
        let dd = exact_degree_description(&fit.char_poly, &coeffs);
        return GrowthClass { tag: GrowthTag::Exponential, dynamical_degree: dd, note: None };
    }
    // strip z^t (transient) and (z-1)^m
    let mut rest = coeffs.clone();
    while rest.len() > 1 && rest[0].is_zero() {
        rest.remove(0);
    }
    let mut unit_mult = 0usize;
    while rest.len() > 1 && eval_uni(&rest, &BigRational::one()).is_zero() {
        rest = divide_by_linear_root(&rest, &BigRational::one());
        unit_mult += 1;
    }

    let rest_ok = is_simple_roots_of_unity(&rest);
    let (tag, note) = match unit_mult {
        0 | 1 if rest_ok => (GrowthTag::Bounded, None),
        2 if rest_ok => (GrowthTag::Linear, None),
        3 if rest_ok => (GrowthTag::Quadratic, None),
        m => (
            GrowthTag::Unclassified,
            Some(alloc::format!(
                "spectrum outside known patterns: unit-root multiplicity {m}, residual factor {}",
                poly_from_real(&rest)
            )),
        ),
    };
    let _ = seq;
    GrowthClass { tag, dynamical_degree: DynamicalDegree::One, note }
}

fn exact_degree_description(char_poly: &MultiPoly, coeffs: &[BigRational]) -> DynamicalDegree {
    if coeffs.len() == 2 {
        // monic linear z + c0: root is -c0
        return DynamicalDegree::Rational(-coeffs[0].clone());
    }
    DynamicalDegree::LargestRootOf(char_poly.clone())
}

fn real_coeffs(p: &MultiPoly) -> Vec<BigRational> {
    let d = p.degree().unwrap_or(0) as usize;
    let mut out = alloc::vec![BigRational::zero(); d + 1];
    for (m, c) in p.terms() {
        debug_assert!(c.is_real(), "characteristic polynomials are real");
        out[m.total_degree() as usize] = c.re().clone();
    }
    out
}

fn poly_from_real(coeffs: &[BigRational]) -> MultiPoly {
    let zv = VarSpace::single("z");
    let mut p = MultiPoly::zero(&zv);
    for (e, c) in coeffs.iter().enumerate() {
        p.add_term(
            crate::poly::Mono::from_exps(&[e as u32]),
            GaussianRational::new(c.clone(), BigRational::zero()),
        );
    }
    p
}

fn eval_uni(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Deflation by a known rational root.
fn divide_by_linear_root(coeffs: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    let n = coeffs.len();
    let mut out = alloc::vec![BigRational::zero(); n - 1];
    let mut carry = BigRational::zero();
    for i in (0..n - 1).rev() {
        carry = &coeffs[i + 1] + root * &carry;
        out[i] = carry.clone();
    }
    out
}

/// Number of distinct real roots strictly greater than 1 (Sturm count).
fn count_roots_above_one(coeffs: &[BigRational]) -> usize {
    let mut p = coeffs.to_vec();
    trim_real(&mut p);
    if p.len() <= 1 {
        return 0;
    }
    // remove roots exactly at 1 so the left endpoint is clean
    while p.len() > 1 && eval_uni(&p, &BigRational::one()).is_zero() {
        p = divide_by_linear_root(&p, &BigRational::one());
    }
    if p.len() <= 1 {
        return 0;
    }
    let bound = cauchy_bound(&p);
    sturm_count(&p, &BigRational::one(), &bound)
}

fn trim_real(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// 2 + max |c_i / lead|, strictly beyond every real root.
fn cauchy_bound(p: &[BigRational]) -> BigRational {
    let lead = p.last().unwrap().clone();
    let mut m = BigRational::zero();
    for c in &p[..p.len() - 1] {
        let a = (c / &lead).abs();
        if a > m {
            m = a;
        }
    }
    m + BigRational::from_integer(BigInt::from(2))
}

/// Sturm count of distinct real roots in the half-open interval `(a, b]`.
fn sturm_count(p: &[BigRational], a: &BigRational, b: &BigRational) -> usize {
    let mut chain: Vec<Vec<BigRational>> = Vec::new();
    let mut p0 = p.to_vec();
    trim_real(&mut p0);
    let mut p1: Vec<BigRational> =
        (1..p0.len()).map(|i| &p0[i] * BigRational::from_integer(BigInt::from(i as i64))).collect();
    trim_real(&mut p1);
    chain.push(p0);
    chain.push(p1);
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_empty() {
            chain.pop();
            break;
        }
        if last.len() == 1 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let mut r = uni_rem_rational(prev, last);
        for c in &mut r {
            *c = -c.clone();
        }
        trim_real(&mut r);
        chain.push(r);
    }
    let variations = |x: &BigRational| -> usize {
        let mut count = 0;
        let mut last_sign = 0i8;
        for q in &chain {
            let v = eval_uni(q, x);
            let s = if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if s != 0 {
                if last_sign != 0 && s != last_sign {
                    count += 1;
                }
                last_sign = s;
            }
        }
        count
    };
    variations(a).saturating_sub(variations(b))
}

fn uni_rem_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim_real(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    while r.len() > db {
        let dr = r.len() - 1;
        if r.is_empty() {
            break;
        }
        let q = &r[dr] / lb;
        for i in 0..=db {
            let t = &r[dr - db + i] - &q * &b[i];
            r[dr - db + i] = t;
        }
        // force the leading slot to cancel even under rounding-free identity
        r.truncate(dr);
        trim_real(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Whether all roots are simple roots of unity: squarefree and divides
/// `z^L - 1` for a universal exponent covering all small cyclotomic orders.
fn is_simple_roots_of_unity(p: &[BigRational]) -> bool {
    let mut q = p.to_vec();
    trim_real(&mut q);
    if q.len() <= 1 {
        return true; // constant: empty spectrum
    }
    let dq: Vec<BigRational> =
        (1..q.len()).map(|i| &q[i] * BigRational::from_integer(BigInt::from(i as i64))).collect();
    if !uni_gcd_is_constant(&q, &dq) {
        return false;
    }
    // all roots of unity: q | z^L - 1 with L = lcm(1..=42), covering every
    // order n with phi(n) <= 12 (fitted orders stay far below that)
    let l: u64 = lcm_upto(42);
    let mut got = pow_z_mod(l, &q);
    trim_real(&mut got);
    got == alloc::vec![BigRational::one()]
}

fn uni_gcd_is_constant(a: &[BigRational], b: &[BigRational]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_real(&mut x);
    trim_real(&mut y);
    while !y.is_empty() {
        let r = uni_rem_rational(&x, &y);
        x = y;
        y = r;
    }
    x.len() == 1
}

fn lcm_upto(n: u64) -> u64 {
    let mut l: u128 = 1;
    for k in 2..=n as u128 {
        let g = gcd_u128(l, k);
        l = l / g * k;
    }
    l as u64
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `z^e mod q` by repeated squaring over Q.
fn pow_z_mod(e: u64, q: &[BigRational]) -> Vec<BigRational> {
    let mul_mod = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut prod = alloc::vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = &prod[i + j] + x * y;
                prod[i + j] = t;
            }
        }
        trim_real(&mut prod);
        if prod.len() >= q.len() {
            uni_rem_rational(&prod, q)
        } else {
            prod
        }
    };
    let mut base = alloc::vec![BigRational::zero(), BigRational::one()]; // z
    if base.len() >= q.len() {
        base = uni_rem_rational(&base, q);
    }
    let mut acc = alloc::vec![BigRational::one()];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base);
        }
        base = mul_mod(&base, &base);
        e >>= 1;
    }
    acc
}

/// Exact bisection for the largest real root, to the given digit precision.
fn largest_root_bisect(coeffs: &[BigRational], digits: u32) -> BigRational {
    let mut lo = BigRational::one();
    let mut hi = cauchy_bound(coeffs);
    let eps = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits + 2));
    while (&hi - &lo) > eps {
        let mid = (&hi + &lo) / BigRational::from_integer(BigInt::from(2));
        if sturm_count(coeffs, &mid, &hi) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Fixed-point decimal rendering of a rational (truncated toward zero).
pub fn decimal_of_rational(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).trunc().numer().clone();
    let neg = scaled.is_negative();
    let scaled = scaled.abs();
    let (int_part, frac_part) = (scaled.clone() / &scale, scaled % &scale);
    let mut frac = frac_part.to_string();
    while (frac.len() as u32) < digits {
        frac.insert(0, '0');
    }
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        alloc::format!("{sign}{int_part}")
    } else {
        alloc::format!("{sign}{int_part}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn seq(values: &[u32]) -> DegreeSequence {
        DegreeSequence::from_values(values.to_vec())
    }

    #[test]
    fn fit_examples() {
        let zv = VarSpace::single("z");
        let f = fit_recurrence(&seq(&[2, 3, 5, 8, 13, 21, 34, 55])).unwrap();
        assert_eq!(f.char_poly, MultiPoly::parse(&zv, "z^2-z-1").unwrap());
        assert_eq!(f.char_poly.to_string(), "z^2-z-1");

        let f = fit_recurrence(&seq(&[2, 3, 4, 5, 6, 7, 8, 9])).unwrap();
        assert_eq!(f.char_poly, MultiPoly::parse(&zv, "z^2-2*z+1").unwrap());

        let f = fit_recurrence(&seq(&[2, 4, 8, 16, 32, 64, 128, 256])).unwrap();
        assert_eq!(f.char_poly, MultiPoly::parse(&zv, "z-2").unwrap());
    }

    #[test]
    fn fit_requires_enough_terms() {
        assert!(fit_recurrence(&seq(&[2, 3, 5])).is_err());
        // identical windows with different successors defeat every order
        assert!(matches!(fit_recurrence(&seq(&[5, 5, 5, 1])), Err(Error::InconclusiveFit)));
    }

    #[test]
    fn fit_periodic() {
        let zv = VarSpace::single("z");
        let f = fit_recurrence(&seq(&[2, 2, 2, 1, 2, 2, 2, 1])).unwrap();
        assert_eq!(f.char_poly, MultiPoly::parse(&zv, "z^4-1").unwrap());
    }

    #[test]
    fn fit_stability_under_extension() {
        // fitting a prefix still annihilates a longer run
        let long = seq(&[2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377]);
        let short = seq(&long.degrees[..8].to_vec());
        let f = fit_recurrence(&short).unwrap();
        let c: Vec<BigRational> = f.coefficients.iter().map(|c| c.re().clone()).collect();
        for n in 0..long.len() - f.order {
            let mut acc = BigRational::zero();
            for i in 0..f.order {
                acc += &c[i] * BigRational::from_integer(BigInt::from(long.degrees[n + i]));
            }
            assert_eq!(acc, BigRational::from_integer(BigInt::from(long.degrees[n + f.order])));
        }
    }

    #[test]
    fn ratio_estimator() {
        let r = dynamical_degree_estimate(&seq(&[2, 4, 8, 16])).unwrap();
        assert_eq!(r, BigRational::from_integer(BigInt::from(2)));
        let r = dynamical_degree_estimate(&seq(&[2, 2, 2, 2])).unwrap();
        assert_eq!(r, BigRational::one());
    }

    #[test]
    fn growth_classes() {
        let fib_seq = seq(&[2, 3, 5, 8, 13, 21, 34, 55]);
        let fib = fit_recurrence(&fib_seq).unwrap();
        let g = growth_class(&fib, &fib_seq);
        assert_eq!(g.tag, GrowthTag::Exponential);
        let dec = g.dynamical_degree.decimal(6);
        assert!(dec.starts_with("1.618033"), "golden ratio rendering: {dec}");

        let lin_seq = seq(&[2, 3, 4, 5, 6, 7, 8, 9]);
        let lin = fit_recurrence(&lin_seq).unwrap();
        assert_eq!(growth_class(&lin, &lin_seq).tag, GrowthTag::Linear);

        let per_seq = seq(&[2, 2, 2, 1, 2, 2, 2, 1]);
        let per = fit_recurrence(&per_seq).unwrap();
        assert_eq!(growth_class(&per, &per_seq).tag, GrowthTag::Bounded);

        let pow_seq = seq(&[2, 4, 8, 16, 32, 64, 128, 256]);
        let pw = fit_recurrence(&pow_seq).unwrap();
        let g = growth_class(&pw, &pow_seq);
        assert_eq!(g.tag, GrowthTag::Exponential);
        assert_eq!(
            g.dynamical_degree,
            DynamicalDegree::Rational(BigRational::from_integer(BigInt::from(2)))
        );

        // eventually constant: transient zero roots are stripped
        let ec_seq = seq(&[2, 3, 4, 4, 4, 4, 4, 4]);
        let ec = fit_recurrence(&ec_seq).unwrap();
        assert_eq!(growth_class(&ec, &ec_seq).tag, GrowthTag::Bounded);

        // constant sequence
        let c_seq = seq(&[2, 2, 2, 2, 2, 2]);
        let cf = fit_recurrence(&c_seq).unwrap();
        assert_eq!(growth_class(&cf, &c_seq).tag, GrowthTag::Bounded);
    }

    #[test]
    fn decimal_rendering() {
        let r = BigRational::new(BigInt::from(144), BigInt::from(89));
        assert_eq!(decimal_of_rational(&r, 4), "1.6179");
        assert_eq!(decimal_of_rational(&BigRational::from_integer(BigInt::from(2)), 2), "2.00");
    }

    #[test]
    fn degree_sequences_of_small_maps() {
        // (y, x/y): Fibonacci
        let p = ParameterTuple::from_ints([0, 0, 1], [0, 1, 0], [0, 0, 1]).unwrap();
        let d = degree_sequence(&p, 5, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(d.degrees, alloc::vec![2, 3, 5, 8, 13]);
        assert!(!d.truncated);

        // (x, y/x): linear
        let p = ParameterTuple::from_ints([0, 1, 0], [0, 0, 1], [0, 1, 0]).unwrap();
        let d = degree_sequence(&p, 5, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(d.degrees, alloc::vec![2, 3, 4, 5, 6]);

        // (x+y, x/(x+y)): exponential
        let p = ParameterTuple::from_ints([0, 1, 1], [0, 1, 0], [0, 1, 1]).unwrap();
        let d = degree_sequence(&p, 5, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(d.degrees, alloc::vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn submultiplicativity_invariant() {
        let p = ParameterTuple::from_ints([0, 1, 1], [1, 0, 0], [0, 1, 0]).unwrap();
        let d = degree_sequence(&p, 8, DEFAULT_TERM_BUDGET).unwrap();
        assert!(d.degrees[0] <= 2);
        for w in d.degrees.windows(2) {
            assert!(w[1] <= d.degrees[0] * w[0]);
        }
    }

    #[test]
    fn non_birational_rejected() {
        let p = ParameterTuple::from_ints([1, 1, 0], [0, 2, 0], [0, 1, 0]).unwrap();
        assert!(matches!(degree_sequence(&p, 3, 1000), Err(Error::NotBirational(_))));
    }

    #[test]
    fn budget_truncation() {
        let p = ParameterTuple::from_ints([0, 1, 1], [0, 1, 0], [0, 1, 1]).unwrap();
        let d = degree_sequence(&p, 30, 50).unwrap();
        assert!(d.truncated);
        assert!(d.degrees.len() < 30);
    }
}
