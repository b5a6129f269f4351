//! Exact integer polynomials.
//!
//! Coefficients are arbitrary-precision and stored in ascending degree order
//! (`coeffs[k]` multiplies `x^k`). Remainder sequences (squarefreeness, Sturm
//! chains) are computed with primitive pseudo-remainders, so no rational or
//! floating-point arithmetic enters the exact results.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::roots;
use crate::{Error, Result};

/// Integer polynomial with a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, trimming high zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        trim(&mut coeffs);
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(IntPoly { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// gcd of all coefficients (always positive).
    pub fn content(&self) -> BigInt {
        content(&self.coeffs)
    }

    /// Content 1 and positive leading coefficient.
    pub fn is_canonical(&self) -> bool {
        self.leading().is_positive() && self.content().is_one()
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn normalize(&self) -> IntPoly {
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact value at an integer point (Horner).
    pub fn eval_int(&self, n: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_i64(&self, n: i64) -> BigInt {
        self.eval_int(&BigInt::from(n))
    }

    /// True when 0, 1 and -1 are all non-roots.
    pub fn avoids_zero_and_units(&self) -> bool {
        [0, 1, -1].iter().all(|&n| !self.eval_i64(n).is_zero())
    }

    /// Coefficients as `f64` (saturating to infinity for huge values).
    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        horner(&self.to_f64s(), z)
    }

    /// True iff `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.degree() <= 1 {
            return true;
        }
        let mut a = primitive(self.coeffs.clone());
        let mut b = primitive(derivative(&self.coeffs));
        while !b.is_empty() {
            let r = primitive(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        a.len() == 1
    }

    /// Exact number of distinct real roots via a Sturm chain.
    ///
    /// Each link is the negated, positively scaled pseudo-remainder of the
    /// previous two, so the sign pattern at `±∞` is that of the classical chain.
    pub fn sturm_real_count(&self) -> Result<usize> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(self.sturm_chain_count())
    }

    fn sturm_chain_count(&self) -> usize {
        let chain = self.sturm_chain();
        let at_pos_inf: Vec<bool> = chain.iter().map(|s| lead(s).is_positive()).collect();
        let at_neg_inf: Vec<bool> = chain
            .iter()
            .map(|s| lead(s).is_positive() == ((s.len() - 1) % 2 == 0))
            .collect();
        sign_variations(&at_neg_inf) - sign_variations(&at_pos_inf)
    }

    /// The Sturm chain `p, p', -rem, ...` as primitive integer polynomials.
    pub fn sturm_chain(&self) -> Vec<Vec<BigInt>> {
        let mut chain = vec![self.coeffs.clone()];
        let d = derivative(&self.coeffs);
        if d.is_empty() {
            return chain;
        }
        chain.push(primitive(d));
        loop {
            let n = chain.len();
            let r = pseudo_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(primitive(r.into_iter().map(|c| -c).collect()));
        }
        chain
    }

    /// Minimal polynomial of `1/α` for every root `α`: reversed and normalized.
    pub fn reverse(&self) -> Result<IntPoly> {
        if self.constant().is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let coeffs: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        Ok(IntPoly { coeffs }.normalize())
    }

    /// `p(-x)`, normalized. Roots are negated.
    pub fn mirror(&self) -> IntPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntPoly { coeffs }.normalize()
    }

    /// Exact quotient when `divisor` divides `self` in `Z[x]`.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = exact_divmod(&self.coeffs, &divisor.coeffs)?;
        if r.is_empty() {
            IntPoly::new(q).ok()
        } else {
            None
        }
    }

    /// Irreducibility over the integers by root-subset reconstruction.
    ///
    /// For every subset of at most `d/2` numeric roots and every positive
    /// divisor `k` of the leading coefficient, `k·∏(x - αᵢ)` is rounded to
    /// integers and tried as an exact divisor. Expects a primitive squarefree
    /// input of small degree.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.degree() <= 1 {
            return Ok(true);
        }
        let roots = roots::find_roots(self)?;
        Ok(self.is_irreducible_with(&roots.roots))
    }

    pub(crate) fn is_irreducible_with(&self, roots: &[Complex64]) -> bool {
        let d = self.degree();
        if d <= 1 {
            return true;
        }
        let lead_divisors = positive_divisors(&self.leading().abs());
        let half = d / 2;
        for mask in 1u32..(1u32 << d) {
            let m = mask.count_ones() as usize;
            if m > half {
                continue;
            }
            let factor = monic_product(roots, mask);
            for k in &lead_divisors {
                let scale = k.to_f64().unwrap_or(f64::INFINITY);
                if let Some(candidate) = round_candidate(&factor, scale) {
                    if self.exact_div(&candidate).is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Human-readable form, e.g. `x^2 - x - 1`.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push('x'),
                _ => {
                    out.push_str("x^");
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }

    /// Ascending coefficients joined by single spaces, e.g. `-1 -1 1`.
    pub fn to_spaced(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_human())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Parses either `c0,c1,...,cd` (ascending) or a human form such as
/// `x^2 - x - 1`. No normalization is applied.
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |reason: &str| Error::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    if compact.contains(['x', 'X']) {
        parse_human(&compact).map_err(|e| match e {
            Error::Parse { reason, .. } => err(&reason),
            other => other,
        })
    } else {
        let coeffs = compact
            .split(',')
            .map(parse_integer)
            .collect::<Result<Vec<_>>>()?;
        IntPoly::new(coeffs)
    }
}

fn parse_integer(tok: &str) -> Result<BigInt> {
    if tok.is_empty() {
        return Err(Error::Parse {
            text: tok.to_string(),
            reason: "empty coefficient".into(),
        });
    }
    let digits = tok.strip_prefix(['+', '-']).unwrap_or(tok);
    if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
        return tok.trim_start_matches('+').parse().map_err(|_| Error::Parse {
            text: tok.to_string(),
            reason: "bad integer".into(),
        });
    }
    if digits.parse::<f64>().is_ok() {
        return Err(Error::NonIntegerCoefficient(tok.to_string()));
    }
    Err(Error::Parse {
        text: tok.to_string(),
        reason: format!("unexpected token `{tok}`"),
    })
}

fn parse_human(s: &str) -> Result<IntPoly> {
    let bad = |reason: String| Error::Parse {
        text: s.to_string(),
        reason,
    };
    // Split into signed terms at every top-level '+' / '-' (not the one after '^').
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && prev != Some('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        prev = Some(ch);
    }
    terms.push(cur);

    let mut coeffs: Vec<BigInt> = Vec::new();
    for term in terms {
        let (neg, body) = match term.chars().next() {
            Some('-') => (true, &term[1..]),
            Some('+') => (false, &term[1..]),
            _ => (false, term.as_str()),
        };
        if body.is_empty() {
            return Err(bad("dangling sign".into()));
        }
        let (coef, exp) = match body.find(['x', 'X']) {
            None => (parse_integer(body)?, 0usize),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let coef = if head.is_empty() {
                    BigInt::one()
                } else {
                    parse_integer(head)?
                };
                let tail = &body[pos + 1..];
                let exp = if tail.is_empty() {
                    1
                } else if let Some(e) = tail.strip_prefix('^') {
                    if e.is_empty() || !e.chars().all(|c| c.is_ascii_digit()) {
                        return Err(bad(format!("bad exponent `{e}`")));
                    }
                    e.parse::<usize>()
                        .map_err(|_| bad(format!("bad exponent `{e}`")))?
                } else {
                    return Err(bad(format!("unexpected `{tail}` after x")));
                };
                (coef, exp)
            }
        };
        if exp > 1 << 16 {
            return Err(bad(format!("exponent {exp} too large")));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        if neg {
            coeffs[exp] -= coef;
        } else {
            coeffs[exp] += coef;
        }
    }
    IntPoly::new(coeffs)
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn lead(v: &[BigInt]) -> &BigInt {
    v.last().expect("nonzero polynomial")
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

fn derivative(v: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = v
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    trim(&mut d);
    d
}

/// Remainder of `a` by `b` after scaling `a` by a positive integer, so the
/// result is congruent to a positive multiple of `a` modulo `b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = lead(b);
    let flip = lb.is_negative();
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = lead(&r).clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] -= &lr * bc;
        }
        if flip {
            for c in r.iter_mut() {
                *c = -&*c;
            }
        }
        trim(&mut r);
    }
    r
}

/// Division in `Z[x]`; `None` as soon as a quotient coefficient is not integral.
fn exact_divmod(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let db = b.len() - 1;
    let lb = lead(b);
    if a.len() < b.len() {
        return Some((Vec::new(), a.to_vec()));
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for shift in (0..q.len()).rev() {
        let top = &r[shift + db];
        if top.is_zero() {
            continue;
        }
        let (quot, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] -= &quot * bc;
        }
        q[shift] = quot;
    }
    trim(&mut r);
    Some((q, r))
}

fn sign_variations(signs: &[bool]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= *n {
        if (n % &k).is_zero() {
            let other = n / &k;
            if other != k {
                large.push(other);
            }
            small.push(k.clone());
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn monic_product(roots: &[Complex64], mask: u32) -> Vec<Complex64> {
    let mut prod = vec![Complex64::new(1.0, 0.0)];
    for (i, &r) in roots.iter().enumerate() {
        if mask & (1 << i) == 0 {
            continue;
        }
        let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
        for (k, &c) in prod.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        prod = next;
    }
    prod
}

const CANDIDATE_TOLERANCE: f64 = 1e-3;

fn round_candidate(factor: &[Complex64], scale: f64) -> Option<IntPoly> {
    let mut coeffs = Vec::with_capacity(factor.len());
    for c in factor {
        let c = c * scale;
        let nearest = c.re.round();
        if (c.re - nearest).abs() > CANDIDATE_TOLERANCE || c.im.abs() > CANDIDATE_TOLERANCE {
            return None;
        }
        coeffs.push(BigInt::from(nearest as i64));
    }
    IntPoly::new(coeffs).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_poly("x^2 - x - 1").unwrap(), p(&[-1, -1, 1]));
        assert_eq!(parse_poly("-1,-1,1").unwrap(), p(&[-1, -1, 1]));
        assert_eq!(parse_poly(" - 1 , -1, 1 ").unwrap(), p(&[-1, -1, 1]));
        assert_eq!(parse_poly("2x^3+x").unwrap(), p(&[0, 1, 0, 2]));
        assert_eq!(parse_poly("3*x^2 - 2").unwrap(), p(&[-2, 0, 3]));
        assert_eq!(parse_poly("-x+5").unwrap(), p(&[5, -1]));
        assert_eq!(parse_poly("x^2 + x^2").unwrap(), p(&[0, 0, 2]));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_poly("x - x"), Err(Error::ZeroPolynomial));
        assert_eq!(parse_poly("0,0"), Err(Error::ZeroPolynomial));
        assert!(matches!(
            parse_poly("1.5,2"),
            Err(Error::NonIntegerCoefficient(_))
        ));
        assert!(matches!(
            parse_poly("0.5x + 1"),
            Err(Error::NonIntegerCoefficient(_))
        ));
        assert!(matches!(parse_poly("x^ + 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1,,2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x -"), Err(Error::Parse { .. })));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p(&[-2, -2, 2]).normalize(), p(&[-1, -1, 1]));
        assert_eq!(p(&[1, 1, -1]).normalize(), p(&[-1, -1, 1]));
        assert_eq!(p(&[-1, -1, 1]).normalize(), p(&[-1, -1, 1]));
        assert!(p(&[-1, -1, 1]).is_canonical());
        assert!(!p(&[2, 4]).is_canonical());
    }

    #[test]
    fn eval_examples() {
        let q = p(&[-1, -1, 1]);
        assert_eq!(q.eval_i64(0), BigInt::from(-1));
        assert_eq!(q.eval_i64(1), BigInt::from(-1));
        assert_eq!(q.eval_i64(-1), BigInt::from(1));
    }

    #[test]
    fn eval_huge_coefficients_exact() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let q = IntPoly::new(vec![big.clone(), big.clone(), big.clone()]).unwrap();
        assert_eq!(q.eval_i64(1), &big * 3);
        assert_eq!(q.eval_i64(-1), big.clone());
        assert_eq!(q.eval_i64(0), big);
    }

    #[test]
    fn squarefree_examples() {
        assert!(p(&[-1, -1, 1]).is_squarefree());
        assert!(!p(&[1, -2, 1]).is_squarefree());
        assert!(p(&[0, -1, 0, 1]).is_squarefree());
        assert!(!p(&[0, 0, 1]).is_squarefree());
        assert!(!p(&[1, 0, 2, 0, 1]).is_squarefree()); // (x^2+1)^2
        assert!(p(&[3, 7]).is_squarefree());
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(p(&[1, 0, 1]).sturm_real_count(), Ok(0));
        assert_eq!(p(&[-2, 0, 1]).sturm_real_count(), Ok(2));
        assert_eq!(p(&[-1, -1, 0, 1]).sturm_real_count(), Ok(1));
        assert_eq!(p(&[0, -1, 0, 1]).sturm_real_count(), Ok(3));
        assert_eq!(p(&[-3, 2]).sturm_real_count(), Ok(1));
        // negative leading coefficient
        assert_eq!(p(&[2, 0, -1]).sturm_real_count(), Ok(2));
        // x^4 - 10x^2 + 1: four real roots ±√2 ± √3
        assert_eq!(p(&[1, 0, -10, 0, 1]).sturm_real_count(), Ok(4));
        assert_eq!(
            p(&[1, -2, 1]).sturm_real_count(),
            Err(Error::NotSquarefree)
        );
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[-1, -1, 1]).reverse().unwrap(), p(&[-1, 1, 1]));
        assert_eq!(p(&[-2, 0, 1]).reverse().unwrap(), p(&[-1, 0, 2]));
        assert_eq!(p(&[0, 1, 1]).reverse(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn reverse_reciprocates_roots() {
        let q = p(&[-1, -1, 1]);
        let rev = q.reverse().unwrap();
        for z in roots::find_roots(&q).unwrap().roots {
            assert!(rev.eval_complex(z.inv()).norm() < 1e-12);
        }
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(p(&[-1, -1, 1]).is_irreducible(), Ok(true));
        assert_eq!(p(&[-1, 0, 1]).is_irreducible(), Ok(false));
        assert_eq!(p(&[1, 1, 1, 1, 1]).is_irreducible(), Ok(true));
        assert_eq!(p(&[5, 3]).is_irreducible(), Ok(true));
        // (x^2 + 1)(x^2 + x + 1): product of two non-real pairs
        assert_eq!(p(&[1, 1, 2, 1, 1]).is_irreducible(), Ok(false));
        // (2x - 1)(3x + 1): non-monic split
        assert_eq!(p(&[-1, -1, 6]).is_irreducible(), Ok(false));
        // x^4 - 10x^2 + 1 is irreducible, yet reducible mod every prime
        assert_eq!(p(&[1, 0, -10, 0, 1]).is_irreducible(), Ok(true));
    }

    #[test]
    fn pseudo_rem_keeps_sign_of_residue() {
        // a = x^2 + 1, b = -2x + 1: a mod b = 5/4, scaled positively.
        let r = pseudo_rem(&ints(&[1, 0, 1]), &ints(&[1, -2]));
        assert_eq!(r.len(), 1);
        assert!(r[0].is_positive());
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.exact_div(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.exact_div(&p(&[-1, 2])), None);
        assert_eq!(p(&[-1, -1, 6]).exact_div(&p(&[-1, 2])), Some(p(&[1, 3])));
    }

    #[test]
    fn human_rendering() {
        assert_eq!(p(&[-1, -1, 1]).to_human(), "x^2 - x - 1");
        assert_eq!(p(&[2, 0, -3]).to_human(), "-3x^2 + 2");
        assert_eq!(p(&[0, 1]).to_human(), "x");
        assert_eq!(p(&[-1, -1, 1]).to_spaced(), "-1 -1 1");
    }

    #[test]
    fn mirror_negates_roots() {
        assert_eq!(p(&[-1, -1, 1]).mirror(), p(&[-1, 1, 1]));
        assert_eq!(p(&[-1, -1, 0, 1]).mirror(), p(&[1, -1, 0, 1]));
    }
}
