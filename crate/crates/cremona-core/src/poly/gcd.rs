//! Exact polynomial gcd.
//!
//! The strategy, in order:
//!  1. strip the common monomial content (cheap and frequent);
//!  2. a modular line-restriction probe (see [`super::modp`]) that can
//!     *certify* the remaining gcd is a unit — the common case when reducing
//!     compositions in the exponential-growth regime;
//!  3. trial division by caller-supplied candidate factors (the composition
//!     engine knows which building blocks are likely common factors);
//!  4. the general primitive-part/content recursion with a subresultant
//!     pseudo-remainder sequence in a chosen main variable.
//!
//! Steps 1-3 are optimizations only; step 4 is complete on its own.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

use super::modp::{self, ProbeRng, UniModP};
use super::{Mono, MultiPoly};

/// Reusable probe state for unit-gcd certificates.
#[derive(Debug)]
pub struct GcdProbe {
    rng: ProbeRng,
}

impl GcdProbe {
    pub fn new(seed: u64) -> Self {
        GcdProbe { rng: ProbeRng::new(seed) }
    }

    /// Restricts all polynomials to one common generic line mod p. `None`
    /// when no suitable line was found in a few attempts.
    fn restrict_all(&mut self, polys: &[&MultiPoly]) -> Option<Vec<UniModP>> {
        let nvars = polys[0].vars().len();
        'attempt: for _ in 0..8 {
            let point: Vec<_> = (0..nvars).map(|_| self.rng.fp2()).collect();
            let dir: Vec<_> = (0..nvars).map(|_| self.rng.fp2()).collect();
            let mut out = Vec::with_capacity(polys.len());
            for p in polys {
                match modp::restrict_line(p, &point, &dir) {
                    Some(r) => out.push(r),
                    None => continue 'attempt,
                }
            }
            return Some(out);
        }
        None
    }

    /// Returns `true` only when the gcd of the inputs is certainly a unit.
    /// (A `false` answer is inconclusive.)
    pub fn certifies_unit(&mut self, polys: &[&MultiPoly]) -> bool {
        if polys.iter().any(|p| p.is_constant() && !p.is_zero()) {
            return true;
        }
        let Some(restrictions) = self.restrict_all(polys) else {
            return false;
        };
        let mut g = restrictions[0].clone();
        for r in &restrictions[1..] {
            g = modp::uni_gcd(&g, r);
            if modp::deg(&g) == Some(0) {
                return true;
            }
        }
        modp::deg(&g) == Some(0)
    }
}

impl MultiPoly {
    /// A greatest common divisor, canonically normalized (graded-lex leading
    /// coefficient 1). Errors when both inputs are identically zero.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if a.is_zero() {
            return Ok(b.monic());
        }
        if b.is_zero() {
            return Ok(a.monic());
        }
        a.assert_same_vars(b);
        let ma = a.monomial_content();
        let mb = b.monomial_content();
        let mg = ma.gcd(mb);
        let ap = a.div_monomial(ma);
        let bp = b.div_monomial(mb);
        let mono_part = MultiPoly::monomial(a.vars(), &unpack(mg, a.vars().len()), GaussianRational::one());
        if ap.is_constant() || bp.is_constant() {
            return Ok(mono_part);
        }
        let mut probe = GcdProbe::new(0x5eed_6cd);
        if probe.certifies_unit(&[&ap, &bp]) {
            return Ok(mono_part);
        }
        // modular bivariate path first; subresultant recursion as fallback
        let core = match super::modular_gcd::modular_gcd(&ap, &bp) {
            Some(g) => g,
            None => gcd_core(&ap, &bp),
        };
        Ok(core.mul_ref(&mono_part).monic())
    }

    /// gcd of a whole slice; zero entries are skipped.
    pub fn gcd_many(polys: &[MultiPoly]) -> Result<MultiPoly> {
        let nonzero: Vec<&MultiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::GcdOfZeros);
        }
        let mut g = nonzero[0].monic();
        for p in &nonzero[1..] {
            if g.is_constant() {
                break;
            }
            g = MultiPoly::gcd(&g, p)?;
        }
        Ok(g)
    }
}

fn unpack(m: Mono, nvars: usize) -> Vec<u32> {
    (0..nvars).map(|i| m.exp(i)).collect()
}

/// Divides every component by the gcd of all of them, trying the supplied
/// candidate divisors first. Returns the total factor removed.
///
/// Components must not all be zero. The returned factor times the reduced
/// components reproduces the originals exactly (up to nothing: divisions are
/// exact).
pub fn reduce_common_factor(
    comps: &mut [MultiPoly],
    candidates: &[&MultiPoly],
) -> Result<MultiPoly> {
    assert!(!comps.is_empty());
    let vars = comps[0].vars().clone();
    if comps.iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateComposition);
    }

    let mut removed = MultiPoly::one(&vars);

    // Common monomial content first.
    let mono = comps
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.monomial_content())
        .fold(None, |acc: Option<Mono>, m| Some(acc.map_or(m, |a| a.gcd(m))))
        .unwrap();
    if !mono.is_one() {
        for c in comps.iter_mut() {
            *c = c.div_monomial(mono);
        }
        removed = removed.mul_ref(&MultiPoly::monomial(
            &vars,
            &unpack(mono, vars.len()),
            GaussianRational::one(),
        ));
    }

    let mut probe = GcdProbe::new(0xfeed_5eed);
    let all: Vec<&MultiPoly> = comps.iter().collect();
    if comps.iter().any(|c| c.is_constant() && !c.is_zero()) || probe.certifies_unit(&all) {
        return Ok(removed);
    }

    // Trial division by candidates, smallest degree first.
    let mut cands: Vec<&MultiPoly> =
        candidates.iter().filter(|c| !c.is_constant() && !c.is_zero()).copied().collect();
    cands.sort_by_key(|c| c.degree().unwrap_or(0));
    loop {
        let mut progressed = false;
        for cand in &cands {
            loop {
                let quotients: Option<Vec<MultiPoly>> =
                    comps.iter().map(|c| c.divide_exact(cand).ok()).collect();
                match quotients {
                    Some(qs) => {
                        comps.clone_from_slice(&qs);
                        removed = removed.mul_ref(cand);
                        progressed = true;
                    }
                    None => break,
                }
            }
        }
        let all: Vec<&MultiPoly> = comps.iter().collect();
        if probe.certifies_unit(&all) {
            return Ok(removed);
        }
        if !progressed {
            break;
        }
    }

    // General machinery for whatever is left.
    let g = MultiPoly::gcd_many(comps)?;
    if !g.is_constant() {
        for c in comps.iter_mut() {
            if !c.is_zero() {
                *c = c.divide_exact(&g).expect("gcd divides the components");
            }
        }
        removed = removed.mul_ref(&g);
    }
    Ok(removed)
}

/// Variables actually appearing in both polynomials.
fn common_vars(a: &MultiPoly, b: &MultiPoly) -> Vec<usize> {
    (0..a.vars().len())
        .filter(|&i| a.degree_in(i) > 0 && b.degree_in(i) > 0)
        .collect()
}

fn active_vars(p: &MultiPoly) -> usize {
    (0..p.vars().len()).filter(|&i| p.degree_in(i) > 0).count()
}

/// gcd of two non-constant polynomials with trivial monomial content.
fn gcd_core(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let common = common_vars(a, b);
    if common.is_empty() {
        // Non-constant divisors would have to involve a shared variable.
        return MultiPoly::one(a.vars());
    }
    if active_vars(a) == 1 && active_vars(b) == 1 {
        return uni_gcd_exact(a, b, common[0]);
    }
    // main variable: smallest max degree, to keep the PRS short
    let v = *common
        .iter()
        .min_by_key(|&&i| a.degree_in(i).max(b.degree_in(i)))
        .unwrap();

    let ca = content_wrt(a, v);
    let cb = content_wrt(b, v);
    let pa = a.divide_exact(&ca).expect("content divides");
    let pb = b.divide_exact(&cb).expect("content divides");
    let cg = MultiPoly::gcd(&ca, &cb).expect("contents nonzero");

    let pp = subresultant_prs(&pa, &pb, v);
    let pp = primitive_part_wrt(&pp, v);
    cg.mul_ref(&pp).monic()
}

/// Content with respect to variable `v`: gcd of the coefficient polynomials.
fn content_wrt(p: &MultiPoly, v: usize) -> MultiPoly {
    let coeffs = p.coeffs_in_var(v);
    MultiPoly::gcd_many(&coeffs).expect("nonzero polynomial has nonzero coefficients")
}

fn primitive_part_wrt(p: &MultiPoly, v: usize) -> MultiPoly {
    if p.is_constant() {
        return MultiPoly::one(p.vars());
    }
    if p.degree_in(v) == 0 {
        // gcd of primitives cannot have positive degree elsewhere only
        return MultiPoly::one(p.vars());
    }
    let c = content_wrt(p, v);
    p.divide_exact(&c).expect("content divides")
}

/// Subresultant pseudo-remainder sequence in variable `v`; returns the last
/// nonzero remainder (not yet primitive).
fn subresultant_prs(pa: &MultiPoly, pb: &MultiPoly, v: usize) -> MultiPoly {
    let vars = pa.vars().clone();
    let (mut a, mut b) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa.clone(), pb.clone())
    } else {
        (pb.clone(), pa.clone())
    };
    let mut g = MultiPoly::one(&vars);
    let mut h = MultiPoly::one(&vars);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == 0 {
            // A v-free remainder forces the primitive gcd to be a unit.
            return MultiPoly::one(&vars);
        }
        a = b;
        let scale = g.mul_ref(&h.pow(delta));
        b = r.divide_exact(&scale).expect("subresultant scaling divides exactly");
        g = lc_wrt(&a, v);
        if delta >= 1 {
            let gd = g.pow(delta);
            h = if delta == 1 {
                gd
            } else {
                gd.divide_exact(&h.pow(delta - 1)).expect("subresultant h-update divides")
            };
        }
    }
}

/// Leading coefficient with respect to `v` (a polynomial in the other vars).
fn lc_wrt(p: &MultiPoly, v: usize) -> MultiPoly {
    let d = p.degree_in(v) as usize;
    p.coeffs_in_var(v).swap_remove(d)
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a  mod  b`, in variable `v`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v);
    debug_assert!(db > 0);
    let lcb = lc_wrt(b, v);
    let mut r = a.clone();
    let mut e = (a.degree_in(v) - db + 1) as i64;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = lc_wrt(&r, v);
        // r <- lcb*r - lcr*v^(dr-db)*b
        let shift = MultiPoly::monomial(
            r.vars(),
            &shift_exps(r.vars().len(), v, dr - db),
            GaussianRational::one(),
        );
        r = lcb.mul_ref(&r).sub_ref(&lcr.mul_ref(&shift).mul_ref(b));
        e -= 1;
    }
    for _ in 0..e {
        r = r.mul_ref(&lcb);
    }
    r
}

fn shift_exps(nvars: usize, v: usize, e: u32) -> Vec<u32> {
    let mut exps = alloc::vec![0u32; nvars];
    exps[v] = e;
    exps
}

/// Monic Euclidean gcd for polynomials involving a single variable.
fn uni_gcd_exact(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let vars = a.vars().clone();
    let to_vec = |p: &MultiPoly| -> Vec<GaussianRational> {
        let d = p.degree_in(v) as usize;
        let mut out = alloc::vec![GaussianRational::zero(); d + 1];
        for (m, c) in p.terms() {
            out[m.exp(v) as usize] = c.clone();
        }
        out
    };
    let trim = |mut p: Vec<GaussianRational>| -> Vec<GaussianRational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    };
    let make_monic = |mut p: Vec<GaussianRational>| -> Vec<GaussianRational> {
        if let Some(lc) = p.last().cloned() {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero");
                for c in &mut p {
                    *c = c.mul_ref(&inv);
                }
            }
        }
        p
    };
    let mut x = trim(to_vec(a));
    let mut y = trim(to_vec(b));
    while !y.is_empty() {
        // x mod y, with y monic
        y = make_monic(y);
        let dy = y.len() - 1;
        while x.len() >= y.len() && !x.is_empty() {
            let dx = x.len() - 1;
            let q = x[dx].clone();
            for i in 0..=dy {
                let t = x[dx - dy + i].sub_ref(&y[i].mul_ref(&q));
                x[dx - dy + i] = t;
            }
            x = trim(x);
        }
        core::mem::swap(&mut x, &mut y);
    }
    let x = make_monic(x);
    let mut out = MultiPoly::zero(&vars);
    for (e, c) in x.into_iter().enumerate() {
        if !c.is_zero() {
            out.add_term(Mono::ONE.with_exp(v, e as u32), c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSpace;
    use alloc::string::ToString;

    fn pp(vars: &VarSpace, s: &str) -> MultiPoly {
        MultiPoly::parse(vars, s).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        let v = VarSpace::projective();
        let a = pp(&v, "x0^2*x1*x2");
        let b = pp(&v, "x0^2*x1^2");
        assert_eq!(MultiPoly::gcd(&a, &b).unwrap(), pp(&v, "x0^2*x1"));
    }

    #[test]
    fn composition_components_gcd() {
        // components of F o F for F = [x0*x2 : x2^2 : x0*x1]
        let v = VarSpace::projective();
        let c1 = pp(&v, "x0^2*x1*x2");
        let c2 = pp(&v, "x0^2*x1^2");
        let c3 = pp(&v, "x0*x2^3");
        let g = MultiPoly::gcd_many(&[c1, c2, c3]).unwrap();
        assert_eq!(g, pp(&v, "x0"));
    }

    #[test]
    fn gcd_with_unit() {
        let v = VarSpace::affine();
        for s in ["x^2+y", "x*y-1", "3"] {
            let p = pp(&v, s);
            let one = MultiPoly::one(&v);
            assert_eq!(MultiPoly::gcd(&p, &one).unwrap(), one);
        }
    }

    #[test]
    fn gcd_of_products() {
        let v = VarSpace::affine();
        let g = pp(&v, "x+y-1");
        let a = pp(&v, "x^2-y").mul_ref(&g);
        let b = pp(&v, "x+3*y").mul_ref(&g).mul_ref(&g);
        let got = MultiPoly::gcd(&a, &b).unwrap();
        assert_eq!(got, g.monic());
        assert!(got.divides(&a) && got.divides(&b));
    }

    #[test]
    fn gcd_errors_on_two_zeros() {
        let v = VarSpace::affine();
        let z = MultiPoly::zero(&v);
        assert!(MultiPoly::gcd(&z, &z).is_err());
    }

    #[test]
    fn gcd_divides_both_randomized() {
        let v = VarSpace::projective();
        let mut rng = ProbeRng::new(7);
        for round in 0..40 {
            let mut rand_poly = |terms: usize| {
                let mut p = MultiPoly::zero(&v);
                for _ in 0..terms {
                    let e0 = (rng.next_u64() % 3) as u32;
                    let e1 = (rng.next_u64() % 3) as u32;
                    let e2 = (rng.next_u64() % 2) as u32;
                    let c = (rng.next_u64() % 7) as i64 - 3;
                    p.add_term(Mono::from_exps(&[e0, e1, e2]), GaussianRational::from_int(c));
                }
                p
            };
            let a = rand_poly(4);
            let b = rand_poly(4);
            let m = rand_poly(3);
            if a.is_zero() || b.is_zero() || m.is_zero() {
                continue;
            }
            let am = a.mul_ref(&m);
            let bm = b.mul_ref(&m);
            let g = MultiPoly::gcd(&am, &bm).unwrap();
            assert!(g.divides(&am), "round {round}: gcd does not divide first input");
            assert!(g.divides(&bm), "round {round}: gcd does not divide second");
            assert!(m.divides(&g) || m.monic().divides(&g), "round {round}: planted factor lost: m={} g={}", m.to_string(), g.to_string());
        }
    }

    #[test]
    fn reduce_components_with_candidates() {
        let v = VarSpace::projective();
        let shared = pp(&v, "x1+x2");
        let mut comps = alloc::vec![
            pp(&v, "x0^2").mul_ref(&shared),
            pp(&v, "x0*x1").mul_ref(&shared),
            pp(&v, "x2^2").mul_ref(&shared),
        ];
        let removed = reduce_common_factor(&mut comps, &[&shared]).unwrap();
        assert_eq!(removed.monic(), shared.monic());
        assert_eq!(comps[0], pp(&v, "x0^2"));
    }
}
