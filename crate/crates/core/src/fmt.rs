//! Fixed 17-significant-digit float rendering shared by every text, CSV and JSON output.

use serde::Serializer;
use std::str::FromStr;

/// Renders `x` with exactly 17 significant digits.
///
/// Values with decimal exponent in `[-5, 15]` are written positionally
/// (`1.6180339887498949`, `0.00012345678901234567`), anything else in
/// scientific notation (`2.2204460492503131e-16`). Parsing the output
/// yields `x` bit for bit.
pub fn sig17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("`{:e}` always emits an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if !(-5..=15).contains(&exp) {
        return format!("{sign}{mantissa}e{exp}");
    }
    if exp >= 0 {
        let split = exp as usize + 1;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

pub(crate) fn serialize_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    match serde_json::Number::from_str(&sig17(*x)) {
        Ok(n) => n.serialize(s),
        Err(_) => s.serialize_none(),
    }
}

pub(crate) fn serialize_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_f64(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn serialize_bigints<S: Serializer>(
    coeffs: &[num_bigint::BigInt],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(coeffs.len()))?;
    for c in coeffs {
        let n = serde_json::Number::from_str(&c.to_string()).map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&n)?;
    }
    seq.end()
}
