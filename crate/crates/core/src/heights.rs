//! Mahler measure, absolute height and the exact product identities that the
//! lower-bound argument rests on.
//!
//! Each identity comes in two independent evaluations: a numeric side built
//! from the computed roots and an exact side built from integer evaluations
//! `φ(0)`, `φ(1)`, `φ(-1)` and the leading coefficient.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::bounds;
use crate::fmt::{serialize_bigints, sig17};
use crate::polyint::IntPoly;
use crate::roots::{self, RootSet};
use crate::{Error, Result};

/// Height data of one algebraic number, keyed by its canonical minimal polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightProfile {
    pub poly: IntPoly,
    pub d: usize,
    pub r: usize,
    /// `r/d` in lowest terms.
    pub ratio: Ratio<usize>,
    pub mahler: f64,
    pub height: f64,
    /// `B(r/d)`; absent when the bound's hypotheses fail (`r = 0` or `α ∈ {0, ±1}`).
    pub bound: Option<f64>,
    pub margin: Option<f64>,
}

impl HeightProfile {
    pub fn ratio_f64(&self) -> f64 {
        self.r as f64 / self.d as f64
    }

    pub fn eligible(&self) -> bool {
        self.bound.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serializes")
    }
}

impl Serialize for HeightProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [BigInt]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigints(self.0, s)
            }
        }
        struct Num(Option<f64>);
        impl Serialize for Num {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                crate::fmt::serialize_opt_f64(&self.0, s)
            }
        }
        let mut st = s.serialize_struct("HeightProfile", 9)?;
        st.serialize_field("poly", &Coeffs(self.poly.coeffs()))?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("R_num", self.ratio.numer())?;
        st.serialize_field("R_den", self.ratio.denom())?;
        st.serialize_field("mahler", &Num(Some(self.mahler)))?;
        st.serialize_field("height", &Num(Some(self.height)))?;
        st.serialize_field("bound", &Num(self.bound))?;
        st.serialize_field("margin", &Num(self.margin))?;
        st.end()
    }
}

/// `|c| ∏ max(1, |αᵢ|)`.
pub fn mahler_measure(p: &IntPoly, roots: &RootSet) -> f64 {
    let lead = p.leading().abs().to_f64().unwrap_or(f64::INFINITY);
    roots
        .roots
        .iter()
        .fold(lead, |acc, z| acc * z.norm().max(1.0))
}

/// `M(p)^(1/d)` of the normalized polynomial, so integer multiples agree.
pub fn absolute_height(p: &IntPoly) -> Result<f64> {
    let p = p.normalize();
    let roots = roots::find_roots(&p)?;
    Ok(height_from_roots(&p, &roots))
}

pub(crate) fn height_from_roots(p: &IntPoly, roots: &RootSet) -> f64 {
    mahler_measure(p, roots).powf(1.0 / p.degree() as f64)
}

pub fn height_profile(p: &IntPoly) -> Result<HeightProfile> {
    let p = p.normalize();
    let roots = roots::find_roots(&p)?;
    Ok(profile_from_roots(&p, &roots))
}

/// Profile of a canonical polynomial whose roots are already known.
pub fn profile_from_roots(p: &IntPoly, roots: &RootSet) -> HeightProfile {
    let d = p.degree();
    let r = roots.real_count();
    let mahler = mahler_measure(p, roots);
    let height = mahler.powf(1.0 / d as f64);
    let bound = if r > 0 && p.avoids_zero_and_units() {
        bounds::garza_bound(r as f64 / d as f64).ok()
    } else {
        None
    };
    HeightProfile {
        poly: p.clone(),
        d,
        r,
        ratio: Ratio::new(r, d),
        mahler,
        height,
        bound,
        margin: bound.map(|b| height - b),
    }
}

/// Two evaluations of the same quantity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductSides {
    pub numeric: f64,
    pub exact: f64,
}

impl ProductSides {
    pub fn relative_error(&self) -> f64 {
        (self.numeric - self.exact).abs() / self.exact.abs()
    }
}

impl std::fmt::Display for ProductSides {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "numeric {} exact {} (rel. error {:.3e})",
            sig17(self.numeric),
            sig17(self.exact),
            self.relative_error()
        )
    }
}

/// `ln |n|` without overflowing `f64` for huge integers.
fn ln_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.abs().to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `φ(0), φ(1), φ(-1)`, rejecting any that vanish.
fn unit_evaluations(p: &IntPoly) -> Result<[BigInt; 3]> {
    let vals = [p.eval_i64(0), p.eval_i64(1), p.eval_i64(-1)];
    for (v, at) in vals.iter().zip([0, 1, -1]) {
        if v.is_zero() {
            return Err(Error::VanishingEvaluation(at));
        }
    }
    Ok(vals)
}

/// `∏ f(αᵢ)` against `|φ(0)|^(1/2-a) |φ(1)φ(-1)|^a` for monic `φ`.
pub fn integer_case_product(p: &IntPoly, a: f64) -> Result<ProductSides> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    unit_evaluations(p)?;
    let roots = roots::find_roots(p)?;
    integer_case_product_with_roots(p, &roots, a)
}

pub fn integer_case_product_with_roots(p: &IntPoly, roots: &RootSet, a: f64) -> Result<ProductSides> {
    if !(a > 0.0 && a < 0.5) {
        return Err(Error::OutOfRange {
            name: "a",
            value: a,
            range: "(0, 1/2)",
        });
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let [at0, at1, atm1] = unit_evaluations(p)?;
    let numeric = roots
        .roots
        .iter()
        .map(|&z| bounds::f_value(z, a))
        .product();
    let exact = ((0.5 - a) * ln_abs(&at0) + a * (ln_abs(&at1) + ln_abs(&atm1))).exp();
    Ok(ProductSides { numeric, exact })
}

/// `(∏ |αᵢ - αᵢ⁻¹|)^(1/d)` against `|φ(1)φ(-1) / (c φ(0))|^(1/d)`.
pub fn archimedean_norm_product(p: &IntPoly) -> Result<ProductSides> {
    unit_evaluations(p)?;
    let roots = roots::find_roots(p)?;
    archimedean_norm_product_with_roots(p, &roots)
}

pub fn archimedean_norm_product_with_roots(p: &IntPoly, roots: &RootSet) -> Result<ProductSides> {
    let [at0, at1, atm1] = unit_evaluations(p)?;
    let d = p.degree() as f64;
    let numeric = roots
        .roots
        .iter()
        .map(|&z| (z - z.inv()).norm())
        .product::<f64>()
        .powf(1.0 / d);
    let exact =
        ((ln_abs(&at1) + ln_abs(&atm1) - ln_abs(p.leading()) - ln_abs(&at0)) / d).exp();
    Ok(ProductSides { numeric, exact })
}

/// `(H(α), H(α⁻¹))`, the latter from the reversed polynomial.
pub fn reversal_height_symmetry(p: &IntPoly) -> Result<(f64, f64)> {
    let rev = p.reverse()?;
    Ok((absolute_height(p)?, absolute_height(&rev)?))
}

/// `M_R^R M_C^(1-R) H(α)^(1/2) H(α⁻¹)^(1/2) - 1` at `a = a(R)`; the lower
/// bound argument needs this to be nonnegative.
pub fn final_inequality_check(p: &IntPoly) -> Result<f64> {
    let p = p.normalize();
    unit_evaluations(&p)?;
    let roots = roots::find_roots(&p)?;
    let r = roots.real_count();
    if r == 0 {
        return Err(Error::NoRealConjugates);
    }
    let h = height_from_roots(&p, &roots);
    let rev = p.reverse()?;
    let h_inv = absolute_height(&rev)?;
    final_inequality_slack(r as f64 / p.degree() as f64, h, h_inv)
}

pub fn final_inequality_slack(ratio: f64, height: f64, height_inv: f64) -> Result<f64> {
    let params = bounds::lemma_params(bounds::optimal_a(ratio)?)?;
    Ok(params.m_real.powf(ratio) * params.m_complex.powf(1.0 - ratio) * (height * height_inv).sqrt()
        - 1.0)
}
