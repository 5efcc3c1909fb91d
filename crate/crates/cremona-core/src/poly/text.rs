//! Textual rendering and parsing of polynomials.
//!
//! Terms are emitted leading-first (descending graded-lex), exponents are
//! explicit (`x0^2*x1`), coefficients use the scalar grammar, and a
//! coefficient with both real and imaginary parts is parenthesized when it
//! multiplies variables: `(1+2i)*x0^2-1i*x1^2+7`. Rendering round-trips
//! bit-exactly through [`parse`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

use super::{Mono, MultiPoly, VarSpace};

pub(super) fn format(p: &MultiPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (m, c) in p.terms.iter().rev() {
        let body = term_body(p.vars(), *m, c);
        if first {
            write!(f, "{body}")?;
            first = false;
        } else if body.starts_with('-') {
            write!(f, "{body}")?;
        } else {
            write!(f, "+{body}")?;
        }
    }
    Ok(())
}

fn term_body(vars: &VarSpace, m: Mono, c: &GaussianRational) -> String {
    let mut var_part = String::new();
    for i in 0..vars.len() {
        let e = m.exp(i);
        if e > 0 {
            if !var_part.is_empty() {
                var_part.push('*');
            }
            var_part.push_str(&vars.names()[i]);
            if e > 1 {
                var_part.push('^');
                var_part.push_str(&e.to_string());
            }
        }
    }
    if var_part.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return var_part;
    }
    if c.is_real() && *c == GaussianRational::from_int(-1) {
        return alloc::format!("-{var_part}");
    }
    let complex_sum = !c.re().is_zero() && !c.im().is_zero();
    if complex_sum {
        alloc::format!("({c})*{var_part}")
    } else {
        alloc::format!("{c}*{var_part}")
    }
}

pub(super) fn parse(vars: &VarSpace, text: &str) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(vars);
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::PolyParse(text.to_string()));
    }
    for term in split_terms(&s)? {
        let (m, c) = parse_term(vars, term)?;
        out.add_term(m, c);
    }
    Ok(out)
}

/// Splits at top-level `+`/`-` signs (keeping the sign with its term).
fn split_terms(s: &str) -> Result<Vec<&str>> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth = depth.checked_sub(1).ok_or_else(|| Error::PolyParse(s.to_string()))?
            }
            b'+' | b'-' if depth == 0 && i > start => {
                // not a term boundary if it directly follows '^' or '*' or '('
                let prev = bytes[i - 1];
                if prev != b'^' && prev != b'*' && prev != b'(' {
                    terms.push(&s[start..i]);
                    start = i;
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::PolyParse(s.to_string()));
    }
    terms.push(&s[start..]);
    Ok(terms)
}

fn parse_term(vars: &VarSpace, term: &str) -> Result<(Mono, GaussianRational)> {
    let mut coeff = GaussianRational::one();
    let mut exps = [0u32; super::MAX_VARS];
    let mut rest = term;
    if let Some(t) = rest.strip_prefix('-') {
        coeff = -coeff;
        rest = t;
    } else if let Some(t) = rest.strip_prefix('+') {
        rest = t;
    }
    if rest.is_empty() {
        return Err(Error::PolyParse(term.to_string()));
    }
    let mut first = true;
    while !rest.is_empty() {
        if !first {
            rest = rest.strip_prefix('*').ok_or_else(|| Error::PolyParse(rest.to_string()))?;
        }
        first = false;
        let b = rest.as_bytes()[0];
        if b == b'(' {
            let close = rest.find(')').ok_or_else(|| Error::PolyParse(rest.to_string()))?;
            let inner = &rest[1..close];
            coeff = coeff.mul_ref(&GaussianRational::parse(inner)?);
            rest = &rest[close + 1..];
        } else if b.is_ascii_digit() {
            let (val, tail) = take_scalar(rest)?;
            coeff = coeff.mul_ref(&val);
            rest = tail;
        } else if b.is_ascii_alphabetic() {
            let (idx, tail) = take_var(vars, rest)?;
            let (e, tail) = take_exponent(tail)?;
            exps[idx] = exps[idx]
                .checked_add(e)
                .filter(|&v| v < super::MAX_EXPONENT)
                .ok_or_else(|| Error::PolyParse(term.to_string()))?;
            rest = tail;
        } else {
            return Err(Error::PolyParse(rest.to_string()));
        }
    }
    Ok((Mono::from_exps(&exps[..vars.len()]), coeff))
}

/// Reads `RAT ['i']` from the front.
fn take_scalar(s: &str) -> Result<(GaussianRational, &str)> {
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'/' {
        i += 1;
        let den_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == den_start {
            return Err(Error::PolyParse(s.to_string()));
        }
    }
    let imaginary = i < bytes.len() && bytes[i] == b'i';
    let num_text = &s[..i];
    let value = GaussianRational::parse(num_text)?;
    if imaginary {
        i += 1;
        Ok((value.mul_ref(&GaussianRational::i()), &s[i..]))
    } else {
        Ok((value, &s[i..]))
    }
}

fn take_var<'a>(vars: &VarSpace, s: &'a str) -> Result<(usize, &'a str)> {
    let bytes = s.as_bytes();
    let mut i = 1;
    while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
        i += 1;
    }
    // longest alphanumeric run; try to match a variable name prefix-greedily
    for end in (1..=i).rev() {
        if let Some(idx) = vars.index_of(&s[..end]) {
            return Ok((idx, &s[end..]));
        }
    }
    Err(Error::PolyParse(s.to_string()))
}

fn take_exponent(s: &str) -> Result<(u32, &str)> {
    match s.strip_prefix('^') {
        None => Ok((1, s)),
        Some(t) => {
            let bytes = t.as_bytes();
            let mut i = 0;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == 0 {
                return Err(Error::PolyParse(s.to_string()));
            }
            let e: u32 = t[..i].parse().map_err(|_| Error::PolyParse(s.to_string()))?;
            Ok((e, &t[i..]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors() {
        let v = VarSpace::affine();
        for bad in ["", "x+", "q", "x^", "x**y", "(1+2i", "x^y", "1-+2"] {
            assert!(MultiPoly::parse(&v, bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn term_collection() {
        let v = VarSpace::affine();
        let p = MultiPoly::parse(&v, "x+x").unwrap();
        assert_eq!(p, MultiPoly::parse(&v, "2*x").unwrap());
        let q = MultiPoly::parse(&v, "x-x").unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn negative_and_imaginary_coefficients() {
        let v = VarSpace::affine();
        let p = MultiPoly::parse(&v, "-x*y^2+1i*x-3/4").unwrap();
        assert_eq!(p.num_terms(), 3);
        let rendered = alloc::string::ToString::to_string(&p);
        assert_eq!(MultiPoly::parse(&v, &rendered).unwrap(), p);
    }
}
