//! Exact integer and rational helpers.
//!
//! Wiener sums leave the 64-bit range around a dozen growth steps, so every
//! closed form is evaluated over [`BigInt`] / [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type ExactInt = BigInt;
pub type ExactRatio = BigRational;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn ratio(v: i64) -> ExactRatio {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> ExactRatio {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_ratio(v: &ExactInt) -> ExactRatio {
    BigRational::from_integer(v.clone())
}

/// `base^exp` for a small nonnegative exponent.
pub fn pow(base: i64, exp: u32) -> ExactInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn pow_big(base: &ExactInt, exp: u32) -> ExactInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// Returns the integer value when the ratio is integral.
pub fn as_integer(r: &ExactRatio) -> Option<ExactInt> {
    r.is_integer().then(|| r.to_integer())
}

/// `p` or `p/q`; inverse of [`parse_ratio`].
pub fn ratio_to_string(r: &ExactRatio) -> String {
    r.to_string()
}

pub fn parse_ratio(s: &str) -> Option<ExactRatio> {
    s.trim().parse::<BigRational>().ok()
}

/// Natural log of a positive big integer, valid far past the `f64` range.
pub fn ln_big(v: &ExactInt) -> f64 {
    assert!(v.is_positive(), "ln of a non-positive integer");
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = v >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_ratio(r: &ExactRatio) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

pub fn ratio_to_f64(r: &ExactRatio) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln_ratio(&r.abs()).exp()
}

/// Exact `k`-th root when `v` is a perfect `k`-th power.
pub fn exact_root(v: &ExactInt, k: u32) -> Option<ExactInt> {
    if k == 0 || v.is_negative() {
        return None;
    }
    if k == 1 {
        return Some(v.clone());
    }
    let r = v.nth_root(k);
    (pow_big(&r, k) == *v).then_some(r)
}

/// Exact logarithm: `Some(k)` with `base^k == v`, `k ≥ 0`.
pub fn exact_log(v: &ExactInt, base: &ExactInt) -> Option<u32> {
    if *base <= BigInt::one() || !v.is_positive() {
        return None;
    }
    let mut acc = BigInt::one();
    let mut k = 0u32;
    while acc < *v {
        acc *= base;
        k += 1;
    }
    (acc == *v).then_some(k)
}

pub(crate) mod serde_ratio {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &ExactRatio, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&ratio_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactRatio, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).ok_or_else(|| de::Error::custom(format!("bad exact value {s:?}")))
    }
}

pub(crate) mod serde_opt_ratio {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<ExactRatio>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&ratio_to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ExactRatio>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| parse_ratio(&s).ok_or_else(|| de::Error::custom(format!("bad exact value {s:?}"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_text_round_trip() {
        for r in [frac(23, 3), ratio(117), frac(-4, 6), ratio(0)] {
            assert_eq!(parse_ratio(&ratio_to_string(&r)), Some(r));
        }
        assert_eq!(ratio_to_string(&frac(8, 3)), "8/3");
        assert_eq!(ratio_to_string(&ratio(10)), "10");
    }

    #[test]
    fn ln_big_matches_f64_and_extends_past_it() {
        let v = pow(18, 12);
        assert!((ln_big(&v) - 12.0 * 18f64.ln()).abs() < 1e-12);
        let huge = pow(3, 2000);
        assert!((ln_big(&huge) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn exact_roots_and_logs() {
        assert_eq!(exact_root(&int(25), 2), Some(int(5)));
        assert_eq!(exact_root(&int(26), 2), None);
        assert_eq!(exact_log(&int(64), &int(4)), Some(3));
        assert_eq!(exact_log(&int(1), &int(4)), Some(0));
        assert_eq!(exact_log(&int(65), &int(4)), None);
    }
}
