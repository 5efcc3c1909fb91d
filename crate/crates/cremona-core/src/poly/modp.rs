//! Modular probe arithmetic: F_p(i) with p = 2^61 - 1.
//!
//! Used only to produce fast *certificates* during gcd computation: a line
//! restriction computed mod p bounds the true gcd degree from above (for a
//! good prime and a degree-preserving line), so "restriction gcd is constant"
//! certifies that the exact gcd is a unit. Nothing here ever feeds back into
//! exact results except as a short-circuit for that certified case.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::scalar::GaussianRational;

use super::MultiPoly;

/// 2^61 - 1, a Mersenne prime congruent to 3 mod 4, so F_p(i) is a field.
pub const P: u64 = (1 << 61) - 1;

fn addm(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn subm(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    acc
}

fn invm(a: u64) -> u64 {
    debug_assert!(a % P != 0);
    powm(a, P - 2)
}

/// An element of F_p(i) = F_p[i]/(i^2+1).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp2 {
    pub re: u64,
    pub im: u64,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 { re: 0, im: 0 };
    pub const ONE: Fp2 = Fp2 { re: 1, im: 0 };

    pub fn new(re: u64, im: u64) -> Self {
        Fp2 { re: re % P, im: im % P }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn add(self, o: Fp2) -> Fp2 {
        Fp2 { re: addm(self.re, o.re), im: addm(self.im, o.im) }
    }

    pub fn sub(self, o: Fp2) -> Fp2 {
        Fp2 { re: subm(self.re, o.re), im: subm(self.im, o.im) }
    }

    pub fn mul(self, o: Fp2) -> Fp2 {
        Fp2 {
            re: subm(mulm(self.re, o.re), mulm(self.im, o.im)),
            im: addm(mulm(self.re, o.im), mulm(self.im, o.re)),
        }
    }

    pub fn scale(self, k: u64) -> Fp2 {
        Fp2 { re: mulm(self.re, k), im: mulm(self.im, k) }
    }

    pub fn inv(self) -> Option<Fp2> {
        let n = addm(mulm(self.re, self.re), mulm(self.im, self.im));
        if n == 0 {
            return None;
        }
        let ninv = invm(n);
        Some(Fp2 { re: mulm(self.re, ninv), im: mulm(subm(0, self.im), ninv) })
    }
}

fn bigint_mod(n: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let mut r = n % &p;
    if r.is_negative() {
        r += &p;
    }
    let (_, digits) = r.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue exceeds one limb"),
    }
}

/// Reduces an exact scalar mod p; `None` when a denominator vanishes mod p.
pub fn scalar_mod(c: &GaussianRational) -> Option<Fp2> {
    let dr = bigint_mod(c.re().denom());
    let di = bigint_mod(c.im().denom());
    if dr == 0 || di == 0 {
        return None;
    }
    Some(Fp2 {
        re: mulm(bigint_mod(c.re().numer()), invm(dr)),
        im: mulm(bigint_mod(c.im().numer()), invm(di)),
    })
}

/// A dense univariate polynomial over F_p(i); index = degree in the line
/// parameter. Trailing zeros are trimmed.
pub type UniModP = Vec<Fp2>;

pub fn trim(mut p: UniModP) -> UniModP {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn deg(p: &UniModP) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

/// Restriction of `poly` to the parametric line `x_j = point_j + t*dir_j`,
/// computed through exact Taylor expansion mod p: the coefficient of `t^k`
/// is `(dir . grad)^k poly (point) / k!`.
///
/// Returns `None` if some coefficient denominator vanishes mod p, or if the
/// restriction fails to reach the full total degree of `poly` (the line is
/// then not generic enough and the caller retries).
pub fn restrict_line(poly: &MultiPoly, point: &[Fp2], dir: &[Fp2]) -> Option<UniModP> {
    let nvars = poly.vars().len();
    debug_assert!(point.len() == nvars && dir.len() == nvars);
    if poly.is_zero() {
        return Some(Vec::new());
    }
    let total = poly.degree().unwrap() as usize;

    // Current derivative, as packed monomial/value pairs mod p.
    let mut cur: Vec<(super::Mono, Fp2)> = Vec::with_capacity(poly.num_terms());
    for (m, c) in poly.terms() {
        cur.push((m, scalar_mod(c)?));
    }

    // Power ladders for evaluating at `point`.
    let max_e: Vec<usize> =
        (0..nvars).map(|i| poly.terms().map(|(m, _)| m.exp(i) as usize).max().unwrap()).collect();
    let ladders: Vec<Vec<Fp2>> = (0..nvars)
        .map(|i| {
            let mut l = vec![Fp2::ONE; max_e[i] + 1];
            for e in 1..=max_e[i] {
                l[e] = l[e - 1].mul(point[i]);
            }
            l
        })
        .collect();
    let eval_at_point = |terms: &[(super::Mono, Fp2)]| -> Fp2 {
        let mut acc = Fp2::ZERO;
        for &(m, c) in terms {
            let mut t = c;
            for (i, ladder) in ladders.iter().enumerate() {
                t = t.mul(ladder[m.exp(i) as usize]);
            }
            acc = acc.add(t);
        }
        acc
    };

    let mut coeffs = Vec::with_capacity(total + 1);
    let mut factorial_inv = 1u64; // 1/k! mod p, updated incrementally
    for k in 0..=total {
        if k > 0 {
            factorial_inv = mulm(factorial_inv, invm(k as u64 % P));
            // cur <- (dir . grad) cur
            let mut acc: hashbrown::HashMap<super::Mono, Fp2, super::MonoHashBuilder> =
                hashbrown::HashMap::with_capacity_and_hasher(cur.len(), super::MonoHashBuilder);
            for &(m, c) in &cur {
                for i in 0..nvars {
                    let e = m.exp(i);
                    if e > 0 && !dir[i].is_zero() {
                        let nc = c.mul(dir[i]).scale(e as u64 % P);
                        let nm = m.with_exp(i, e - 1);
                        let slot = acc.entry(nm).or_insert(Fp2::ZERO);
                        *slot = slot.add(nc);
                    }
                }
            }
            cur = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        coeffs.push(eval_at_point(&cur).scale(factorial_inv));
    }
    let coeffs = trim(coeffs);
    // Demand the full degree so factor degrees are preserved.
    if deg(&coeffs) != Some(total) {
        return None;
    }
    Some(coeffs)
}

/// Monic Euclidean gcd over F_p(i).
pub fn uni_gcd(a: &UniModP, b: &UniModP) -> UniModP {
    let mut a = trim(a.clone());
    let mut b = trim(b.clone());
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    make_monic(a)
}

fn make_monic(mut p: UniModP) -> UniModP {
    if let Some(lc) = p.last().copied() {
        if lc != Fp2::ONE {
            let inv = lc.inv().expect("leading coefficient nonzero");
            for c in &mut p {
                *c = c.mul(inv);
            }
        }
    }
    p
}

/// Remainder of `a` by `b` (b nonzero).
pub fn uni_rem(a: &UniModP, b: &UniModP) -> UniModP {
    let db = deg(b).expect("division by zero polynomial");
    let mut r = a.clone();
    let lb_inv = b[db].inv().expect("nonzero lc");
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let q = r[dr].mul(lb_inv);
        for i in 0..=db {
            r[dr - db + i] = r[dr - db + i].sub(b[i].mul(q));
        }
        r = trim(r);
    }
    r
}

/// Deterministic generator for probe points.
#[derive(Debug)]
pub struct ProbeRng(u64);

impl ProbeRng {
    pub fn new(seed: u64) -> Self {
        ProbeRng(seed | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        // splitmix64
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn fp2(&mut self) -> Fp2 {
        Fp2::new(self.next_u64() % P, self.next_u64() % P)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSpace;

    #[test]
    fn field_ops() {
        let a = Fp2::new(3, 4);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(inv), Fp2::ONE);
        assert_eq!(Fp2::new(0, 1).mul(Fp2::new(0, 1)), Fp2::new(P - 1, 0));
    }

    #[test]
    fn restriction_degree_and_gcd() {
        let v = VarSpace::projective();
        let a = MultiPoly::parse(&v, "x0^2*x1-x2^3").unwrap();
        let mut rng = ProbeRng::new(42);
        let point: Vec<Fp2> = (0..3).map(|_| rng.fp2()).collect();
        let dir: Vec<Fp2> = (0..3).map(|_| rng.fp2()).collect();
        let r = restrict_line(&a, &point, &dir).unwrap();
        assert_eq!(deg(&r), Some(3));

        // A common factor survives restriction with its full degree.
        let g = MultiPoly::parse(&v, "x0+x1+x2").unwrap();
        let p1 = a.mul_ref(&g);
        let p2 = MultiPoly::parse(&v, "x1^2-x0*x2").unwrap().mul_ref(&g);
        let r1 = restrict_line(&p1, &point, &dir).unwrap();
        let r2 = restrict_line(&p2, &point, &dir).unwrap();
        let gg = uni_gcd(&r1, &r2);
        assert_eq!(deg(&gg), Some(1));
    }
}
