//! Closed forms behind the real-conjugate height bound.
//!
//! For `0 < a < 1/2` the auxiliary function is `f(x) = |x|^(1/2-a) |1-x²|^a`
//! and `g(x) = f(x) / max(1, |x|)`. Its suprema over the complex plane and
//! over the real line are
//!
//! ```text
//! M_C = 2^a
//! M_R = (4a)^a (1-2a)^(1/4-a/2) (1+2a)^(-1/4-a/2)
//! ```
//!
//! the real one attained at `x1 = √((1-2a)/(1+2a))` and `x2 = 1/x1`.
//! Choosing `a(R) = (1 + 4^(1/R))^(-1/2) / 2` turns `M_R^(-R) M_C^(R-1)` into
//!
//! ```text
//! B(R) = ((2^(1-1/R) + √(4^(1-1/R) + 4)) / 2)^(R/2)
//! ```
//!
//! Everything here is evaluated in `f64`. The numeric maxima are computed by
//! direct search and are independent of the closed forms.

pub mod search;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::{Error, Result};
use search::{grid_then_golden, log_grid};

/// Number of grid points of the numeric maximisation.
pub const GRID_POINTS: usize = 10_000;
pub const GRID_LO: f64 = 1e-3;
pub const GRID_HI: f64 = 1e3;

pub fn f_value(x: Complex64, a: f64) -> f64 {
    x.norm().powf(0.5 - a) * (Complex64::new(1.0, 0.0) - x * x).norm().powf(a)
}

/// `f(x) / max(1, |x|)`; invariant under `x ↦ 1/x`.
pub fn g_value(x: Complex64, a: f64) -> Result<f64> {
    if x.norm() == 0.0 {
        return Err(Error::OutOfRange {
            name: "x",
            value: 0.0,
            range: "C \\ {0}",
        });
    }
    Ok(f_value(x, a) / x.norm().max(1.0))
}

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a < 0.5 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "a",
            value: a,
            range: "(0, 1/2)",
        })
    }
}

fn check_ratio(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "R",
            value: r,
            range: "(0, 1]",
        })
    }
}

/// Closed-form quantities of the lemma at a given `a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaParams {
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub a: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub m_real: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub m_complex: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub x1: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub x2: f64,
}

pub fn lemma_params(a: f64) -> Result<LemmaParams> {
    check_a(a)?;
    let m_real = (4.0 * a).powf(a)
        * (1.0 - 2.0 * a).powf(0.25 - a / 2.0)
        * (1.0 + 2.0 * a).powf(-0.25 - a / 2.0);
    Ok(LemmaParams {
        a,
        m_real,
        m_complex: 2f64.powf(a),
        x1: ((1.0 - 2.0 * a) / (1.0 + 2.0 * a)).sqrt(),
        x2: ((1.0 + 2.0 * a) / (1.0 - 2.0 * a)).sqrt(),
    })
}

/// Directly searched suprema of `|x|^u |1-x²|^v / max(1,|x|)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericMaxima {
    /// Supremum over real `x`.
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub m_real: f64,
    /// Supremum over the complex plane.
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub m_complex: f64,
    /// Best abscissa found in `(0, 1)`.
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub x_inner: f64,
    /// Best abscissa found in `(1, ∞)`.
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub x_outer: f64,
    /// Modulus at which the complex supremum is attained (on the imaginary axis).
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub rho_complex: f64,
}

fn grid() -> &'static [f64] {
    use std::sync::OnceLock;
    static GRID: OnceLock<Vec<f64>> = OnceLock::new();
    GRID.get_or_init(|| log_grid(GRID_LO, GRID_HI, GRID_POINTS))
}

/// Suprema for general exponents. The real profile is even in `x`; on
/// `|x| = ρ`, `|1 - x²|` is largest at `x = iρ` where it equals `1 + ρ²`, so
/// both suprema reduce to searches over `ρ > 0`. Limits at `0` and `∞` are
/// included as candidates.
fn suprema(u: f64, v: f64) -> NumericMaxima {
    let real = |x: f64| x.powf(u) * (1.0 - x * x).abs().powf(v) / x.max(1.0);
    let complex = |r: f64| r.powf(u) * (1.0 + r * r).powf(v) / r.max(1.0);
    let grid = grid();

    let inner = grid_then_golden(&real, grid, (0.0, 1.0)).unwrap_or((1.0, 0.0));
    let outer = grid_then_golden(&real, grid, (1.0, f64::INFINITY)).unwrap_or((1.0, 0.0));
    let at_one = (1.0, real(1.0));
    let mut m_real = inner.1.max(outer.1).max(at_one.1);

    let (rho, mut m_complex) = grid_then_golden(&complex, grid, (0.0, f64::INFINITY))
        .unwrap_or((1.0, 0.0));
    let m_c_one = complex(1.0);
    let rho = if m_c_one > m_complex {
        m_complex = m_c_one;
        1.0
    } else {
        rho
    };

    // Limits: at 0 the profile tends to 1 iff u = 0; at ∞ it tends to 1 iff u + 2v = 1.
    let at_zero = if u == 0.0 { 1.0 } else { 0.0 };
    let at_infinity = if (u + 2.0 * v - 1.0).abs() <= 1e-12 { 1.0 } else { 0.0 };
    m_real = m_real.max(at_zero).max(at_infinity);
    m_complex = m_complex.max(at_zero).max(at_infinity);

    NumericMaxima {
        m_real,
        m_complex,
        x_inner: inner.0,
        x_outer: outer.0,
        rho_complex: rho,
    }
}

/// Independent numeric maxima of `g` for checking [`lemma_params`].
pub fn numeric_maxima(a: f64) -> Result<NumericMaxima> {
    check_a(a)?;
    Ok(suprema(0.5 - a, a))
}

pub fn optimal_a(ratio: f64) -> Result<f64> {
    check_ratio(ratio)?;
    Ok(0.5 / (1.0 + 4f64.powf(1.0 / ratio)).sqrt())
}

/// The lower bound `B(R)` for the absolute height.
pub fn garza_bound(ratio: f64) -> Result<f64> {
    check_ratio(ratio)?;
    let t = 2f64.powf(1.0 - 1.0 / ratio);
    Ok(((t + (t * t + 4.0).sqrt()) / 2.0).powf(ratio / 2.0))
}

/// Square root of the golden ratio: the totally real case `B(1)`.
pub fn schinzel_bound() -> f64 {
    ((1.0 + 5f64.sqrt()) / 2.0).sqrt()
}

/// `M_R^(-R) M_C^(R-1)` at `a(R)`, from the lemma's closed forms.
pub fn lemma_bound(ratio: f64) -> Result<f64> {
    let params = lemma_params(optimal_a(ratio)?)?;
    Ok(params.m_real.powf(-ratio) * params.m_complex.powf(ratio - 1.0))
}

/// `|M_R^(-R) M_C^(R-1) - B(R)|` at `a = a(R)`.
pub fn bound_identity_chain(ratio: f64) -> Result<f64> {
    Ok((lemma_bound(ratio)? - garza_bound(ratio)?).abs())
}

/// Exponents `(u, v)` of `|x|^u |1-x²|^v`, restricted to `u, v ≥ 0`, `u + 2v ≤ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentPair {
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub u: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub v: f64,
}

const REGION_SLACK: f64 = 1e-12;

impl ExponentPair {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        let pair = ExponentPair { u, v };
        if pair.is_admissible() {
            Ok(pair)
        } else {
            Err(Error::RegionViolation { u, v })
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.u >= 0.0 && self.v >= 0.0 && self.u + 2.0 * self.v <= 1.0 + REGION_SLACK
    }

    /// The pair `(1/2 - a, a)` used by the lemma.
    pub fn from_lemma(a: f64) -> Self {
        ExponentPair { u: 0.5 - a, v: a }
    }
}

/// `M̃_R^(-R) M̃_C^(R-1)` for the suprema of `|x|^u |1-x²|^v / max(1,|x|)`.
pub fn generalized_bound(e: ExponentPair, ratio: f64) -> Result<f64> {
    if !e.is_admissible() {
        return Err(Error::RegionViolation { u: e.u, v: e.v });
    }
    check_ratio(ratio)?;
    Ok(generalized_unchecked(e, ratio))
}

fn generalized_unchecked(e: ExponentPair, ratio: f64) -> f64 {
    let m = suprema(e.u.max(0.0), e.v.max(0.0));
    m.m_real.powf(-ratio) * m.m_complex.powf(ratio - 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizedExponents {
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub ratio: f64,
    pub best: ExponentPair,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub value: f64,
    /// `(1/2 - a(R), a(R))`.
    pub expected: ExponentPair,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub expected_value: f64,
    /// Best point on the edge `u + 2v = 1`.
    pub boundary_best: ExponentPair,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub boundary_value: f64,
    pub evaluations: usize,
}

/// Maximises [`generalized_bound`] over the admissible region: a full grid of
/// step `1e-2`, then two local grids of steps `1e-3` and `1e-4` around the
/// incumbent.
pub fn optimize_exponents(ratio: f64) -> Result<OptimizedExponents> {
    check_ratio(ratio)?;
    let mut evaluations = 0;

    let coarse: Vec<ExponentPair> = (0..=100)
        .flat_map(|i| (0..=50).filter(move |j| i + 2 * j <= 100).map(move |j| (i, j)))
        .map(|(i, j)| ExponentPair {
            u: i as f64 / 100.0,
            v: j as f64 / 100.0,
        })
        .collect();
    let mut best = best_of(&coarse, ratio);
    evaluations += coarse.len();

    let boundary: Vec<ExponentPair> = coarse
        .iter()
        .copied()
        .filter(|e| (e.u + 2.0 * e.v - 1.0).abs() <= REGION_SLACK)
        .collect();
    let (boundary_best, boundary_value) = best_of(&boundary, ratio);

    for step in [1e-3, 1e-4] {
        let centre = best.0;
        let local: Vec<ExponentPair> = (-10..=10)
            .flat_map(|i| (-10..=10).map(move |j| (i, j)))
            .map(|(i, j)| ExponentPair {
                u: centre.u + i as f64 * step,
                v: centre.v + j as f64 * step,
            })
            .filter(ExponentPair::is_admissible)
            .collect();
        evaluations += local.len();
        let cand = best_of(&local, ratio);
        if cand.1 > best.1 {
            best = cand;
        }
    }

    let a = optimal_a(ratio)?;
    let expected = ExponentPair::from_lemma(a);
    Ok(OptimizedExponents {
        ratio,
        best: best.0,
        value: best.1,
        expected,
        expected_value: generalized_unchecked(expected, ratio),
        boundary_best,
        boundary_value,
        evaluations,
    })
}

/// Parallel evaluation with an order-independent argmax (ties go to the
/// earliest candidate).
fn best_of(cands: &[ExponentPair], ratio: f64) -> (ExponentPair, f64) {
    let values: Vec<f64> = cands
        .par_iter()
        .map(|&e| generalized_unchecked(e, ratio))
        .collect();
    let (idx, val) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    (cands[idx], val)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn f_examples() {
        assert!((f_value(c(0.0, 1.0), 0.25) - 2f64.powf(0.25)).abs() < 1e-15);
        assert!((f_value(c(0.0, 1.0), 0.25) - 1.1892071).abs() < 1e-7);
        assert_eq!(f_value(c(1.0, 0.0), 0.3), 0.0);
        assert_eq!(f_value(c(0.0, 0.0), 0.3), 0.0);
        let x1 = (1.0f64 / 3.0).sqrt();
        let m = lemma_params(0.25).unwrap().m_real;
        assert!((f_value(c(x1, 0.0), 0.25) - m).abs() < 1e-15);
        // high-precision reference value
        assert!((m - 0.787_656_803_056_635_7).abs() < 1e-15);
    }

    #[test]
    fn g_examples() {
        assert!((g_value(c(0.0, 1.0), 0.25).unwrap() - 1.1892071).abs() < 1e-7);
        let at2 = g_value(c(2.0, 0.0), 0.25).unwrap();
        let direct = 2f64.powf(0.25) * 3f64.powf(0.25) / 2.0;
        assert!((at2 - direct).abs() < 1e-15);
        assert!((at2 - 0.7825).abs() < 1e-4);
        assert_eq!(g_value(c(0.5, 0.0), 0.25).unwrap(), at2);
        assert!(g_value(c(0.0, 0.0), 0.25).is_err());
    }

    #[test]
    fn g_symmetric_under_inversion() {
        for &(re, im) in &[(0.3, 0.4), (-2.0, 1.5), (7.0, -0.1), (0.0, 3.0)] {
            let z = c(re, im);
            let a = 0.17;
            let (g, gi) = (g_value(z, a).unwrap(), g_value(z.inv(), a).unwrap());
            assert!((g - gi).abs() <= 1e-12 * g.max(1.0), "{z}: {g} vs {gi}");
        }
    }

    #[test]
    fn lemma_params_examples() {
        let p = lemma_params(0.25).unwrap();
        assert!((p.m_complex - 1.1892071).abs() < 1e-7);
        assert!((p.x1 - 0.5773503).abs() < 1e-7);
        assert!((p.x2 - 1.7320508).abs() < 1e-7);
        assert!((p.x1 * p.x2 - 1.0).abs() < 1e-12);
        let tiny = lemma_params(1e-6).unwrap();
        assert!((tiny.m_complex - 1.0).abs() < 1e-5);
        let a1 = 0.5 / 5f64.sqrt();
        let p1 = lemma_params(a1).unwrap();
        assert!((1.0 / p1.m_real - 1.2720196).abs() < 1e-7);
        for bad in [0.0, 0.5, -0.1, 0.7, f64::NAN] {
            assert!(lemma_params(bad).is_err());
        }
    }

    #[test]
    fn lemma_ordering() {
        for i in 1..50 {
            let p = lemma_params(i as f64 / 100.0).unwrap();
            assert!(0.0 < p.m_real && p.m_real < 1.0);
            assert!(1.0 < p.m_complex && p.m_complex < 2f64.sqrt());
            let gx1 = g_value(c(p.x1, 0.0), p.a).unwrap();
            let gx2 = g_value(c(p.x2, 0.0), p.a).unwrap();
            assert!((gx1 - p.m_real).abs() < 1e-10);
            assert!((gx2 - p.m_real).abs() < 1e-10);
        }
    }

    #[test]
    fn numeric_matches_closed_form() {
        for a in [0.1, 0.25, 0.45] {
            let n = numeric_maxima(a).unwrap();
            let p = lemma_params(a).unwrap();
            assert!((n.m_real - p.m_real).abs() < 1e-9, "a={a}");
            assert!((n.m_complex - p.m_complex).abs() < 1e-9, "a={a}");
            assert!((n.x_inner - p.x1).abs() < 1e-6);
            assert!((n.x_outer - p.x2).abs() < 1e-5);
        }
    }

    #[test]
    fn optimal_a_examples() {
        assert!((optimal_a(1.0).unwrap() - 0.5 / 5f64.sqrt()).abs() < 1e-16);
        assert!((optimal_a(1.0).unwrap() - 0.2236068).abs() < 1e-7);
        assert!((optimal_a(0.5).unwrap() - 0.5 / 17f64.sqrt()).abs() < 1e-16);
        assert!((optimal_a(0.5).unwrap() - 0.1212678).abs() < 1e-7);
        let mut prev = optimal_a(1.0).unwrap();
        for i in (1..100).rev() {
            let a = optimal_a(i as f64 / 100.0).unwrap();
            assert!(a < prev && a > 0.0);
            prev = a;
        }
        assert!(optimal_a(0.0).is_err());
        assert!(optimal_a(1.5).is_err());
    }

    #[test]
    fn bound_examples() {
        assert!((garza_bound(1.0).unwrap() - 1.2720196).abs() < 1e-7);
        // 30-digit reference evaluations of the closed form
        assert!((garza_bound(0.5).unwrap() - 1.063_820_437_986_538).abs() < 1e-15);
        assert!((garza_bound(1.0 / 3.0).unwrap() - 1.020_996_853_933_951).abs() < 1e-15);
        assert!((garza_bound(1.0).unwrap() - schinzel_bound()).abs() <= 1e-15);
        let s = schinzel_bound();
        assert!((s * s - (1.0 + 5f64.sqrt()) / 2.0).abs() <= 1e-15);
        assert!(garza_bound(0.01).unwrap() < 1.001);
        assert!(garza_bound(0.0).is_err());
        assert!(garza_bound(2.0).is_err());
    }

    #[test]
    fn identity_chain_examples() {
        for r in [1.0, 0.5, 0.77] {
            assert!(bound_identity_chain(r).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn generalized_examples() {
        let a = optimal_a(1.0).unwrap();
        let at_lemma = generalized_bound(ExponentPair::from_lemma(a), 1.0).unwrap();
        assert!((at_lemma - 1.2720196).abs() < 1e-7);
        for r in [0.2, 0.6, 1.0] {
            let flat = generalized_bound(ExponentPair::new(0.5, 0.0).unwrap(), r).unwrap();
            assert!((flat - 1.0).abs() < 1e-12);
        }
        let off = generalized_bound(ExponentPair::new(0.3, 0.2).unwrap(), 1.0).unwrap();
        assert!(off < 1.2720196);
        assert!(ExponentPair::new(0.5, 0.3).is_err());
        assert!(ExponentPair::new(-0.1, 0.3).is_err());
    }
}
