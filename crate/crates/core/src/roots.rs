//! All complex roots of an integer polynomial.
//!
//! Roots come from Aberth–Ehrlich simultaneous iteration in `f64`, are Newton
//! polished, and are then split into real and non-real roots. The exact Sturm
//! count decides how many real roots there must be; a disagreement after one
//! escalation step is an error rather than something to patch over.

// `!(r <= tol)` deliberately treats a NaN residual as too large.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::polyint::{horner, IntPoly};
use crate::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
pub const REAL_THRESHOLD: f64 = 1e-8;
pub const CONJUGATE_TOLERANCE: f64 = 1e-10;

/// Fixed angular offset (radians) of the initial guesses; irrational so that
/// no starting point lies on a symmetry axis of a real polynomial.
const ANGLE_OFFSET: f64 = std::f64::consts::SQRT_2 / 3.0;

/// Numeric roots of one polynomial.
///
/// Real roots come first in ascending order, followed by non-real roots as
/// `(z, conj z)` pairs with `Im z > 0`, ordered by real part.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `|p(z)/p'(z)| / (1 + |z|)` after polishing.
    pub residuals: Vec<f64>,
    pub real_flags: Vec<bool>,
    pub source_degree: usize,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn real_count(&self) -> usize {
        self.real_flags.iter().filter(|&&f| f).count()
    }

    pub fn real_roots(&self) -> impl Iterator<Item = f64> + '_ {
        self.roots
            .iter()
            .zip(&self.real_flags)
            .filter(|(_, &real)| real)
            .map(|(z, _)| z.re)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// `1 + max_{k<d} |c_k| / |c_d|`.
pub fn cauchy_bound(p: &IntPoly) -> f64 {
    let c = p.to_f64s();
    let lead = c[c.len() - 1].abs();
    let max = c[..c.len() - 1]
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max);
    1.0 + max / lead
}

/// Finds, polishes and classifies every root of a squarefree polynomial.
pub fn find_roots(p: &IntPoly) -> Result<RootSet> {
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let expected = p.sturm_real_count()?;
    let raw = aberth_ehrlich(p)?;
    classify_real(p, raw, expected)
}

/// Raw Aberth–Ehrlich iterates followed by a short Newton polish.
pub fn aberth_ehrlich(p: &IntPoly) -> Result<Vec<Complex64>> {
    let d = p.degree();
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let coeffs = p.to_f64s();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NoConvergence(0));
    }
    if d == 1 {
        let root = linear_root(p);
        return Ok(vec![Complex64::new(root, 0.0)]);
    }
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect();

    let radius = 0.5 * cauchy_bound(p);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / d as f64 + ANGLE_OFFSET;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let pz = horner(&coeffs, z[i]);
            if pz == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = pz / horner(&deriv, z[i]);
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::NoConvergence(MAX_ITERATIONS));
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_ITERATIONS));
    }
    for root in z.iter_mut() {
        newton_polish(&coeffs, &deriv, root, 3);
    }
    Ok(z)
}

/// Splits polished roots into real and non-real using the Sturm count as the
/// authority, pairs non-real roots with their conjugates and snaps real roots
/// onto the real axis.
pub fn classify_real(p: &IntPoly, mut raw: Vec<Complex64>, expected_real: usize) -> Result<RootSet> {
    let coeffs = p.to_f64s();
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect();

    let mut threshold = REAL_THRESHOLD;
    let mut flags = mark_real(&raw, threshold);
    let mut found = count(&flags);
    if found != expected_real {
        for root in raw.iter_mut() {
            newton_polish(&coeffs, &deriv, root, 20);
        }
        threshold *= if found < expected_real { 10.0 } else { 0.1 };
        flags = mark_real(&raw, threshold);
        found = count(&flags);
        if found != expected_real {
            return Err(Error::ClassificationMismatch {
                expected: expected_real,
                found,
            });
        }
    }

    let mut reals: Vec<f64> = Vec::new();
    let mut upper: Vec<Complex64> = Vec::new();
    let mut lower: Vec<Complex64> = Vec::new();
    for (z, real) in raw.iter().zip(&flags) {
        if *real {
            let mut x = Complex64::new(z.re, 0.0);
            newton_polish_real(&coeffs, &deriv, &mut x);
            reals.push(x.re);
        } else if z.im > 0.0 {
            upper.push(*z);
        } else {
            lower.push(*z);
        }
    }
    if upper.len() != lower.len() {
        return Err(Error::ConjugatePairing);
    }
    reals.sort_by(f64::total_cmp);

    let mut pairs: Vec<Complex64> = Vec::with_capacity(upper.len());
    for z in upper {
        let (idx, dist) = lower
            .iter()
            .enumerate()
            .map(|(j, w)| (j, (z - w.conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or(Error::ConjugatePairing)?;
        if dist > CONJUGATE_TOLERANCE * (1.0 + z.norm()) {
            return Err(Error::ConjugatePairing);
        }
        let w = lower.swap_remove(idx);
        pairs.push((z + w.conj()) * 0.5);
    }
    pairs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let mut roots: Vec<Complex64> = reals.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut real_flags = vec![true; roots.len()];
    for z in pairs {
        roots.push(z);
        roots.push(z.conj());
        real_flags.push(false);
        real_flags.push(false);
    }

    let residuals: Vec<f64> = roots
        .iter()
        .map(|&z| relative_residual(&coeffs, &deriv, z))
        .collect();
    if let Some(&worst) = residuals.iter().find(|&&r| !(r <= RESIDUAL_TOLERANCE)) {
        return Err(Error::ResidualTooLarge { residual: worst });
    }

    Ok(RootSet {
        roots,
        residuals,
        real_flags,
        source_degree: p.degree(),
    })
}

fn linear_root(p: &IntPoly) -> f64 {
    use num_rational::BigRational;
    let q = BigRational::new(-p.constant().clone(), p.leading().clone());
    q.to_f64().unwrap_or(f64::NAN)
}

fn mark_real(roots: &[Complex64], threshold: f64) -> Vec<bool> {
    roots
        .iter()
        .map(|z| z.im.abs() < threshold * (1.0 + z.norm()))
        .collect()
}

fn count(flags: &[bool]) -> usize {
    flags.iter().filter(|&&f| f).count()
}

fn newton_polish(coeffs: &[f64], deriv: &[f64], z: &mut Complex64, passes: usize) {
    for _ in 0..passes {
        let dp = horner(deriv, *z);
        if dp.norm() == 0.0 {
            return;
        }
        let step = horner(coeffs, *z) / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            return;
        }
        let next = *z - step;
        // Stop once a step no longer reduces |p|.
        if horner(coeffs, next).norm() > horner(coeffs, *z).norm() {
            return;
        }
        *z = next;
    }
}

fn newton_polish_real(coeffs: &[f64], deriv: &[f64], x: &mut Complex64) {
    for _ in 0..3 {
        let px = horner(coeffs, *x).re;
        let dpx = horner(deriv, *x).re;
        if px == 0.0 || dpx == 0.0 {
            return;
        }
        let next = x.re - px / dpx;
        if !next.is_finite() || horner(coeffs, Complex64::new(next, 0.0)).re.abs() > px.abs() {
            return;
        }
        x.re = next;
    }
}

fn relative_residual(coeffs: &[f64], deriv: &[f64], z: Complex64) -> f64 {
    let pz = horner(coeffs, z);
    if pz.norm() == 0.0 {
        return 0.0;
    }
    (pz / horner(deriv, z)).norm() / (1.0 + z.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_bound(&p(&[-1, -1, 1])), 2.0);
        assert_eq!(cauchy_bound(&p(&[-2, 0, 1])), 3.0);
        assert_eq!(cauchy_bound(&p(&[-3, 2])), 2.5);
    }

    #[test]
    fn golden_ratio_roots() {
        let rs = find_roots(&p(&[-1, -1, 1])).unwrap();
        let s5 = 5f64.sqrt();
        assert_eq!(rs.real_flags, vec![true, true]);
        assert!(close(rs.roots[0].re, (1.0 - s5) / 2.0, 1e-14));
        assert!(close(rs.roots[1].re, (1.0 + s5) / 2.0, 1e-14));
    }

    #[test]
    fn gaussian_roots() {
        let rs = find_roots(&p(&[1, 0, 1])).unwrap();
        assert_eq!(rs.real_count(), 0);
        assert!(close(rs.roots[0].re, 0.0, 1e-14));
        assert!(close(rs.roots[0].im, 1.0, 1e-14));
        assert_eq!(rs.roots[1], rs.roots[0].conj());
    }

    #[test]
    fn plastic_cubic_roots() {
        // Cardano: the real root of x^3 - x - 1
        let t = (69f64).sqrt() / 18.0;
        let real = (0.5 + t).cbrt() + (0.5 - t).cbrt();
        let rs = find_roots(&p(&[-1, -1, 0, 1])).unwrap();
        assert_eq!(rs.real_count(), 1);
        assert!(close(rs.roots[0].re, real, 1e-14));
        // The pair is the quadratic cofactor x^2 + real x + 1/real.
        let re = -real / 2.0;
        let im = (1.0 / real - re * re).sqrt();
        assert!(close(rs.roots[1].re, re, 1e-13));
        assert!(close(rs.roots[1].im, im, 1e-13));
        assert!(close(real, 1.3247180, 1e-7));
        assert!(close(im, 0.5622795, 1e-7));
    }

    #[test]
    fn linear_root_is_exact_rational() {
        let rs = find_roots(&p(&[-3, 2])).unwrap();
        assert_eq!(rs.roots, vec![Complex64::new(1.5, 0.0)]);
        assert_eq!(rs.real_flags, vec![true]);
    }

    #[test]
    fn classify_examples() {
        let two = p(&[-2, 0, 1]);
        let raw = aberth_ehrlich(&two).unwrap();
        assert_eq!(classify_real(&two, raw, 2).unwrap().real_count(), 2);
        let i = p(&[1, 0, 1]);
        let raw = aberth_ehrlich(&i).unwrap();
        assert_eq!(classify_real(&i, raw, 0).unwrap().real_count(), 0);
        let cubic = p(&[-1, -1, 0, 1]);
        let raw = aberth_ehrlich(&cubic).unwrap();
        assert_eq!(classify_real(&cubic, raw, 1).unwrap().real_count(), 1);
    }

    #[test]
    fn classify_mismatch_is_surfaced() {
        let i = p(&[1, 0, 1]);
        let raw = aberth_ehrlich(&i).unwrap();
        assert_eq!(
            classify_real(&i, raw, 2),
            Err(Error::ClassificationMismatch {
                expected: 2,
                found: 0
            })
        );
    }

    #[test]
    fn rejects_repeated_roots() {
        assert_eq!(find_roots(&p(&[1, -2, 1])), Err(Error::NotSquarefree));
    }

    #[test]
    fn degree_eight_with_clustered_moduli() {
        // Lehmer's polynomial: a Salem number with six conjugates on the unit circle.
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let rs = find_roots(&lehmer).unwrap();
        assert_eq!(rs.real_count(), 2);
        let largest = rs.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(close(largest, 1.176280818, 1e-9));
    }
}
