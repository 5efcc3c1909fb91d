//! Modular bivariate gcd: per-prime evaluation/interpolation, Chinese
//! remaindering with rational reconstruction across primes, certified at the
//! end by exact division plus a unit-gcd probe on the cofactors.
//!
//! This path handles the shapes the composition engine actually produces:
//! polynomials with at most two active variables, or homogeneous trivariate
//! polynomials (dehomogenized along `x0` after the monomial content is
//! stripped, and rehomogenized afterwards). Anything else falls back to the
//! subresultant recursion in `gcd.rs`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::GaussianRational;

use super::gcd::GcdProbe;
use super::{Mono, MultiPoly, VarSpace};

/// Primes congruent to 3 mod 4 (so `F_p(i)` is a field), just below `2^61`.
const PRIMES: [u64; 40] = [
    2305843009213693951,
    2305843009213693907,
    2305843009213693723,
    2305843009213693487,
    2305843009213693123,
    2305843009213692967,
    2305843009213692799,
    2305843009213692671,
    2305843009213692527,
    2305843009213692463,
    2305843009213692427,
    2305843009213692419,
    2305843009213692343,
    2305843009213692331,
    2305843009213692283,
    2305843009213692211,
    2305843009213692199,
    2305843009213692139,
    2305843009213692107,
    2305843009213692103,
    2305843009213692083,
    2305843009213692043,
    2305843009213692031,
    2305843009213692007,
    2305843009213691819,
    2305843009213691767,
    2305843009213691579,
    2305843009213691567,
    2305843009213691551,
    2305843009213691347,
    2305843009213691287,
    2305843009213690907,
    2305843009213690883,
    2305843009213690871,
    2305843009213690847,
    2305843009213690799,
    2305843009213690627,
    2305843009213690591,
    2305843009213690579,
    2305843009213690543,
];

/// Arithmetic context for one prime.
#[derive(Clone, Copy, Debug)]
struct Ctx {
    p: u64,
}

/// An element of `F_p(i)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct G {
    re: u64,
    im: u64,
}

const GZERO: G = G { re: 0, im: 0 };
const GONE: G = G { re: 1, im: 0 };

impl Ctx {
    fn addm(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn subm(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mulm(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn powm(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    fn invm(self, a: u64) -> u64 {
        self.powm(a, self.p - 2)
    }

    fn add(self, a: G, b: G) -> G {
        G { re: self.addm(a.re, b.re), im: self.addm(a.im, b.im) }
    }

    fn sub(self, a: G, b: G) -> G {
        G { re: self.subm(a.re, b.re), im: self.subm(a.im, b.im) }
    }

    fn mul(self, a: G, b: G) -> G {
        G {
            re: self.subm(self.mulm(a.re, b.re), self.mulm(a.im, b.im)),
            im: self.addm(self.mulm(a.re, b.im), self.mulm(a.im, b.re)),
        }
    }

    fn inv(self, a: G) -> Option<G> {
        let n = self.addm(self.mulm(a.re, a.re), self.mulm(a.im, a.im));
        if n == 0 {
            return None;
        }
        let ninv = self.invm(n);
        Some(G { re: self.mulm(a.re, ninv), im: self.mulm(self.subm(0, a.im), ninv) })
    }

    fn is_zero(self, a: G) -> bool {
        a.re == 0 && a.im == 0
    }
}

/// Dense univariate polynomial over `F_p(i)`; index = degree.
type Uni = Vec<G>;

fn uni_trim(ctx: Ctx, mut a: Uni) -> Uni {
    while a.last().is_some_and(|&c| ctx.is_zero(c)) {
        a.pop();
    }
    a
}

fn uni_monic(ctx: Ctx, mut a: Uni) -> Uni {
    if let Some(&lc) = a.last() {
        if lc != GONE {
            let inv = ctx.inv(lc).expect("leading coefficient nonzero");
            for c in &mut a {
                *c = ctx.mul(*c, inv);
            }
        }
    }
    a
}

fn uni_rem(ctx: Ctx, a: &Uni, b: &Uni) -> Uni {
    let db = b.len() - 1;
    let lb_inv = ctx.inv(b[db]).expect("nonzero lc");
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let q = ctx.mul(r[dr], lb_inv);
        for i in 0..=db {
            r[dr - db + i] = ctx.sub(r[dr - db + i], ctx.mul(b[i], q));
        }
        r.truncate(dr);
        r = uni_trim(ctx, r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn uni_gcd(ctx: Ctx, a: &Uni, b: &Uni) -> Uni {
    let mut x = uni_trim(ctx, a.clone());
    let mut y = uni_trim(ctx, b.clone());
    while !y.is_empty() {
        let r = uni_rem(ctx, &x, &y);
        x = y;
        y = r;
    }
    uni_monic(ctx, x)
}

fn uni_eval(ctx: Ctx, a: &Uni, x: G) -> G {
    let mut acc = GZERO;
    for &c in a.iter().rev() {
        acc = ctx.add(ctx.mul(acc, x), c);
    }
    acc
}

fn uni_mul(ctx: Ctx, a: &Uni, b: &Uni) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![GZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if ctx.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
    out
}

fn uni_div_exact(ctx: Ctx, a: &Uni, b: &Uni) -> Option<Uni> {
    let mut r = uni_trim(ctx, a.clone());
    let b = uni_trim(ctx, b.clone());
    if b.is_empty() {
        return None;
    }
    let db = b.len() - 1;
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() - 1 < db {
        return None;
    }
    let lb_inv = ctx.inv(b[db])?;
    let mut q = vec![GZERO; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let qc = ctx.mul(r[dr], lb_inv);
        q[dr - db] = qc;
        for i in 0..=db {
            r[dr - db + i] = ctx.sub(r[dr - db + i], ctx.mul(b[i], qc));
        }
        r.truncate(dr);
        r = uni_trim(ctx, r);
        if r.is_empty() {
            break;
        }
    }
    if r.is_empty() {
        Some(uni_trim(ctx, q))
    } else {
        None
    }
}

/// Dense bivariate polynomial mod p: `coeffs[i]` is the `u^i` coefficient, a
/// univariate polynomial in `v`.
#[derive(Clone, Debug)]
struct Biv {
    coeffs: Vec<Uni>,
}

impl Biv {
    fn deg_u(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn trim(ctx: Ctx, mut b: Biv) -> Biv {
        while b.coeffs.len() > 1 && b.coeffs.last().is_some_and(|c| uni_trim(ctx, c.clone()).is_empty())
        {
            b.coeffs.pop();
        }
        for c in &mut b.coeffs {
            *c = uni_trim(ctx, c.clone());
        }
        b
    }

    fn eval_v(&self, ctx: Ctx, r: G) -> Uni {
        uni_trim(ctx, self.coeffs.iter().map(|c| uni_eval(ctx, c, r)).collect())
    }

    fn lc_u(&self) -> &Uni {
        self.coeffs.last().expect("nonempty")
    }

    /// Content in `v`: gcd of the `u`-coefficients.
    fn content_v(&self, ctx: Ctx) -> Uni {
        let mut g: Uni = Vec::new();
        for c in &self.coeffs {
            let ct = uni_trim(ctx, c.clone());
            if ct.is_empty() {
                continue;
            }
            g = if g.is_empty() { uni_monic(ctx, ct) } else { uni_gcd(ctx, &g, &ct) };
            if g.len() == 1 {
                return vec![GONE];
            }
        }
        if g.is_empty() {
            vec![GONE]
        } else {
            g
        }
    }

    fn div_content(&self, ctx: Ctx, content: &Uni) -> Option<Biv> {
        if content.len() == 1 && content[0] == GONE {
            return Some(self.clone());
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let ct = uni_trim(ctx, c.clone());
            if ct.is_empty() {
                out.push(Vec::new());
            } else {
                out.push(uni_div_exact(ctx, &ct, content)?);
            }
        }
        Some(Biv { coeffs: out })
    }
}

/// Brown's bivariate gcd modulo one prime; `None` when the prime or the
/// evaluation points run out of luck.
fn biv_gcd_modp(ctx: Ctx, a: &Biv, b: &Biv) -> Option<Biv> {
    let a = Biv::trim(ctx, a.clone());
    let b = Biv::trim(ctx, b.clone());
    let cont_a = a.content_v(ctx);
    let cont_b = b.content_v(ctx);
    let ppa = a.div_content(ctx, &cont_a)?;
    let ppb = b.div_content(ctx, &cont_b)?;
    let cont_g = uni_gcd(ctx, &cont_a, &cont_b);

    let gamma = uni_gcd(ctx, ppa.lc_u(), ppb.lc_u());
    // bound on the v-degree of gamma * (primitive gcd)
    let vbound = gamma.len().saturating_sub(1)
        + ppa
            .coeffs
            .iter()
            .map(|c| c.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
            .min(ppb.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0))
        + 1;

    let mut points: Vec<G> = Vec::new();
    let mut images: Vec<Uni> = Vec::new();
    let mut best_deg = usize::MAX;
    let mut r_seed = 1u64;
    let mut misses = 0usize;
    while points.len() < vbound {
        if misses > 4 * vbound + 64 {
            return None;
        }
        let r = G { re: r_seed % ctx.p, im: 0 };
        r_seed += 1;
        let ga = uni_eval(ctx, ppa.lc_u(), r);
        let gb = uni_eval(ctx, ppb.lc_u(), r);
        if ctx.is_zero(ga) || ctx.is_zero(gb) {
            misses += 1;
            continue;
        }
        let ua = ppa.eval_v(ctx, r);
        let ub = ppb.eval_v(ctx, r);
        let g_r = uni_gcd(ctx, &ua, &ub);
        let dg = g_r.len() - 1;
        if dg == 0 {
            // primitive parts are coprime: the gcd is the content part
            return Some(Biv { coeffs: vec![cont_g] });
        }
        match dg.cmp(&best_deg) {
            core::cmp::Ordering::Greater => {
                misses += 1;
                continue; // unlucky point
            }
            core::cmp::Ordering::Less => {
                // all earlier points were unlucky
                points.clear();
                images.clear();
                best_deg = dg;
            }
            core::cmp::Ordering::Equal => {}
        }
        let scale = uni_eval(ctx, &gamma, r);
        let scaled: Uni = g_r.iter().map(|&c| ctx.mul(c, scale)).collect();
        points.push(r);
        images.push(scaled);
    }

    // Newton interpolation of each u-coefficient over the points.
    let du = best_deg;
    let mut h = Biv { coeffs: vec![Vec::new(); du + 1] };
    for ui in 0..=du {
        let values: Vec<G> =
            images.iter().map(|img| img.get(ui).copied().unwrap_or(GZERO)).collect();
        h.coeffs[ui] = interpolate(ctx, &points, &values)?;
    }
    let h = Biv::trim(ctx, h);
    // primitive part in v, times the content gcd
    let hc = h.content_v(ctx);
    let pp = h.div_content(ctx, &hc)?;
    let mut out = Biv { coeffs: pp.coeffs.iter().map(|c| uni_mul(ctx, c, &cont_g)).collect() };
    out = Biv::trim(ctx, out);
    Some(out)
}

/// Dense Newton interpolation over `F_p(i)`.
fn interpolate(ctx: Ctx, xs: &[G], ys: &[G]) -> Option<Uni> {
    let n = xs.len();
    // divided differences
    let mut dd: Vec<G> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = ctx.sub(dd[i], dd[i - 1]);
            let den = ctx.sub(xs[i], xs[i - level]);
            dd[i] = ctx.mul(num, ctx.inv(den)?);
        }
    }
    // assemble poly
    let mut acc: Uni = vec![dd[n - 1]];
    for i in (0..n - 1).rev() {
        // acc = acc*(x - xs[i]) + dd[i]
        let mut shifted = vec![GZERO; acc.len() + 1];
        for (j, &c) in acc.iter().enumerate() {
            shifted[j + 1] = ctx.add(shifted[j + 1], c);
            shifted[j] = ctx.sub(shifted[j], ctx.mul(c, xs[i]));
        }
        shifted[0] = ctx.add(shifted[0], dd[i]);
        acc = shifted;
    }
    Some(uni_trim(ctx, acc))
}

/// Shape of the bivariate view of the inputs.
enum Shape {
    /// Polynomials already live in (at most) two variables `u = vars[i]`,
    /// `v = vars[j]`.
    TwoVars { u: usize, v: usize },
    /// Homogeneous trivariate with trivial monomial content; dehomogenize
    /// along `x0` and rehomogenize the result.
    Homogeneous,
}

fn detect_shape(a: &MultiPoly, b: &MultiPoly) -> Option<Shape> {
    let nvars = a.vars().len();
    let active = |p: &MultiPoly, i: usize| p.degree_in(i) > 0;
    let mut used: Vec<usize> =
        (0..nvars).filter(|&i| active(a, i) || active(b, i)).collect();
    if used.len() <= 2 {
        let u = used.first().copied().unwrap_or(0);
        let v = used.get(1).copied().unwrap_or((u + 1) % nvars.max(2));
        return Some(Shape::TwoVars { u, v });
    }
    if nvars == 3 && a.homogeneous_degree().is_some() && b.homogeneous_degree().is_some() {
        used.clear();
        return Some(Shape::Homogeneous);
    }
    None
}

/// Scales a polynomial to Gaussian-integer coefficients (returns numerator
/// data only; the gcd is insensitive to scalar factors).
fn gaussian_integer_form(p: &MultiPoly) -> Vec<(Mono, BigInt, BigInt)> {
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.re().denom());
        denom_lcm = denom_lcm.lcm(c.im().denom());
    }
    p.terms()
        .map(|(m, c)| {
            let re = c.re().numer() * (&denom_lcm / c.re().denom());
            let im = c.im().numer() * (&denom_lcm / c.im().denom());
            (m, re, im)
        })
        .collect()
}

fn mod_big(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = n % &m;
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().expect("residue fits")
}

/// Projects integer terms into the dense bivariate layout `(u, v)`.
fn to_biv(
    ctx: Ctx,
    terms: &[(Mono, BigInt, BigInt)],
    proj: &dyn Fn(Mono) -> (usize, usize),
) -> Biv {
    let mut du = 0;
    let mut dv = 0;
    for (m, _, _) in terms {
        let (eu, ev) = proj(*m);
        du = du.max(eu);
        dv = dv.max(ev);
    }
    let mut coeffs = vec![vec![GZERO; dv + 1]; du + 1];
    for (m, re, im) in terms {
        let (eu, ev) = proj(*m);
        let g = G { re: mod_big(re, ctx.p), im: mod_big(im, ctx.p) };
        coeffs[eu][ev] = ctx.add(coeffs[eu][ev], g);
    }
    Biv::trim(ctx, Biv { coeffs })
}

/// Rational reconstruction of `r mod m`: returns `n/d` with `|n|, d <= sqrt(m/2)`.
fn rational_reconstruct(r: &BigUint, m: &BigUint) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let mut r0 = BigInt::from(m.clone());
    let mut r1 = BigInt::from(r.clone());
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    let bound_i = BigInt::from(bound);
    while r1.magnitude() > bound_i.magnitude() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = core::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.magnitude() > bound_i.magnitude() {
        return None;
    }
    if t1.is_negative() {
        r1 = -r1;
        t1 = -t1;
    }
    // require gcd(n, d) = 1 for a canonical answer
    if r1.gcd(&t1) != BigInt::one() && !r1.is_zero() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn crt_pair(a: &BigUint, m: &BigUint, b: u64, p: u64) -> BigUint {
    // x = a (mod m), x = b (mod p), gcd(m, p) = 1
    let p_big = BigUint::from(p);
    let m_inv = mod_inverse(&(m % &p_big), &p_big).expect("moduli coprime");
    let a_mod_p = a % &p_big;
    let diff = (BigUint::from(b) + &p_big - a_mod_p) % &p_big;
    a + m * ((diff * m_inv) % &p_big)
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let (mut r0, mut r1) = (BigInt::from(m.clone()), BigInt::from(a.clone()));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = core::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t2);
    }
    if r0 != BigInt::one() {
        return None;
    }
    let mut t = t0 % BigInt::from(m.clone());
    if t.is_negative() {
        t += BigInt::from(m.clone());
    }
    Some(t.magnitude().clone())
}

/// Attempts the modular gcd. `None` means the shape is unsupported or the
/// prime supply was exhausted; the caller falls back to the subresultant
/// recursion. Inputs must be nonzero with trivial monomial content.
pub fn modular_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let shape = detect_shape(a, b)?;
    let vars = a.vars().clone();
    let (proj, lift): (
        alloc::boxed::Box<dyn Fn(Mono) -> (usize, usize)>,
        alloc::boxed::Box<dyn Fn(usize, usize) -> Mono>,
    ) = match shape {
        Shape::TwoVars { u, v } => (
            alloc::boxed::Box::new(move |m: Mono| (m.exp(u) as usize, m.exp(v) as usize)),
            alloc::boxed::Box::new(move |eu: usize, ev: usize| {
                Mono::ONE.with_exp(u, eu as u32).with_exp(v, ev as u32)
            }),
        ),
        Shape::Homogeneous => {
            // dehomogenize along x0; rehomogenize by total degree afterwards
            (
                alloc::boxed::Box::new(|m: Mono| (m.exp(1) as usize, m.exp(2) as usize)),
                alloc::boxed::Box::new(|eu: usize, ev: usize| {
                    Mono::ONE.with_exp(1, eu as u32).with_exp(2, ev as u32)
                }),
            )
        }
    };
    let homogeneous = matches!(shape, Shape::Homogeneous);

    let ta = gaussian_integer_form(a);
    let tb = gaussian_integer_form(b);

    // CRT state: per-monomial residues of the monic-normalized gcd image
    let mut modulus = BigUint::one();
    let mut residues: Vec<(Mono, BigUint, BigUint)> = Vec::new();
    let mut cohort_support: Vec<(usize, usize)> = Vec::new();
    let mut cohort_deg = usize::MAX;

    for &p in &PRIMES {
        let ctx = Ctx { p };
        let ba = to_biv(ctx, &ta, proj.as_ref());
        let bb = to_biv(ctx, &tb, proj.as_ref());
        // degree drop mod p means a bad prime: leading terms must survive
        let Some(tp) = biv_gcd_modp(ctx, &ba, &bb) else { continue };
        // monic normalization wrt the graded-lex leading coefficient
        let mut support: Vec<(usize, usize)> = Vec::new();
        let mut lead: Option<((usize, usize), G)> = None;
        for (eu, cu) in tp.coeffs.iter().enumerate() {
            for (ev, &c) in cu.iter().enumerate() {
                if ctx.is_zero(c) {
                    continue;
                }
                support.push((eu, ev));
                let lm = lift(eu, ev);
                if lead.as_ref().map_or(true, |((lu, lv), _)| lift(*lu, *lv) < lm) {
                    lead = Some(((eu, ev), c));
                }
            }
        }
        let (_, lead_c) = lead?;
        let tdeg = support.iter().map(|&(u, v)| u + v).max().unwrap_or(0);
        if tdeg == 0 {
            // unit gcd: nothing to remove
            return Some(MultiPoly::one(&vars));
        }
        match tdeg.cmp(&cohort_deg) {
            core::cmp::Ordering::Greater => continue, // worse prime, skip
            core::cmp::Ordering::Less => {
                modulus = BigUint::one();
                residues.clear();
                cohort_support = support.clone();
                cohort_deg = tdeg;
            }
            core::cmp::Ordering::Equal => {
                if support != cohort_support {
                    // support mismatch: restart with the new prime alone
                    modulus = BigUint::one();
                    residues.clear();
                    cohort_support = support.clone();
                }
            }
        }
        let lead_inv = ctx.inv(lead_c)?;
        // accumulate residues
        let mut by_support: Vec<(u64, u64)> = Vec::with_capacity(cohort_support.len());
        for &(eu, ev) in &cohort_support {
            let c = tp.coeffs.get(eu).and_then(|cu| cu.get(ev)).copied().unwrap_or(GZERO);
            let c = ctx.mul(c, lead_inv);
            by_support.push((c.re, c.im));
        }
        if modulus.is_one() {
            residues = cohort_support
                .iter()
                .zip(&by_support)
                .map(|(&(eu, ev), &(re, im))| (lift(eu, ev), BigUint::from(re), BigUint::from(im)))
                .collect();
            modulus = BigUint::from(p);
        } else {
            for (slot, &(re, im)) in residues.iter_mut().zip(&by_support) {
                slot.1 = crt_pair(&slot.1, &modulus, re, p);
                slot.2 = crt_pair(&slot.2, &modulus, im, p);
            }
            modulus *= BigUint::from(p);
        }

        // attempt reconstruction and certification
        if let Some(candidate) = reconstruct(&vars, &residues, &modulus, homogeneous, cohort_deg) {
            if candidate.divides(a) && candidate.divides(b) {
                let qa = a.divide_exact(&candidate).expect("divides");
                let qb = b.divide_exact(&candidate).expect("divides");
                let mut probe = GcdProbe::new(0x0c0ffee);
                if probe.certifies_unit(&[&qa, &qb]) {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn reconstruct(
    vars: &VarSpace,
    residues: &[(Mono, BigUint, BigUint)],
    modulus: &BigUint,
    homogeneous: bool,
    total_deg: usize,
) -> Option<MultiPoly> {
    let mut out = MultiPoly::zero(vars);
    for (m, re, im) in residues {
        let re_q = rational_reconstruct(re, modulus)?;
        let im_q = rational_reconstruct(im, modulus)?;
        let mut mono = *m;
        if homogeneous {
            let partial = mono.exp(1) + mono.exp(2);
            debug_assert!(partial as usize <= total_deg);
            mono = mono.with_exp(0, total_deg as u32 - partial);
        }
        out.add_term(mono, GaussianRational::new(re_q, im_q));
    }
    if out.is_zero() {
        None
    } else {
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSpace;

    fn pp(vars: &VarSpace, s: &str) -> MultiPoly {
        MultiPoly::parse(vars, s).unwrap()
    }

    #[test]
    fn bivariate_modular_gcd() {
        let v = VarSpace::affine();
        let g = pp(&v, "x^3+2*x*y-y^2+1");
        let a = pp(&v, "x^2-y").mul_ref(&g);
        let b = pp(&v, "x+3*y^2").mul_ref(&g).mul_ref(&g);
        let got = modular_gcd(&a, &b).expect("bivariate shape");
        assert_eq!(got.monic(), g.monic());
    }

    #[test]
    fn homogeneous_modular_gcd() {
        let v = VarSpace::projective();
        let g = pp(&v, "x0^2+x1*x2");
        let a = pp(&v, "x0*x1-x2^2").mul_ref(&g);
        let b = pp(&v, "x1^3+x0*x1*x2+x2^3").mul_ref(&g);
        let got = modular_gcd(&a, &b).expect("homogeneous shape");
        assert_eq!(got.monic(), g.monic());
    }

    #[test]
    fn coprime_inputs_give_unit() {
        let v = VarSpace::affine();
        let a = pp(&v, "x^2+y+1");
        let b = pp(&v, "x*y-3");
        let got = modular_gcd(&a, &b).expect("shape ok");
        assert!(got.is_constant());
    }

    #[test]
    fn rational_coefficients() {
        let v = VarSpace::affine();
        let g = pp(&v, "x+1/2*y+1/3");
        let a = pp(&v, "x-y").mul_ref(&g);
        let b = pp(&v, "x+y").mul_ref(&g);
        let got = modular_gcd(&a, &b).expect("shape ok");
        assert_eq!(got.monic(), g.monic());
    }

    #[test]
    fn gaussian_coefficients() {
        let v = VarSpace::affine();
        let g = pp(&v, "x+1i*y-2");
        let a = pp(&v, "x^2+1i").mul_ref(&g);
        let b = pp(&v, "y^2-1i*x").mul_ref(&g);
        let got = modular_gcd(&a, &b).expect("shape ok");
        assert_eq!(got.monic(), g.monic());
    }

    #[test]
    fn reconstruction_helpers() {
        // 2/3 mod 97: r = 2 * inv(3) = 2*65 = 130 = 33
        let m = BigUint::from(97u32);
        let r = BigUint::from(33u32);
        let q = rational_reconstruct(&r, &m).unwrap();
        assert_eq!(q, BigRational::new(BigInt::from(2), BigInt::from(3)));
    }
}
