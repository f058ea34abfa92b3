//! First-digit and mantissa primitives and the Benford reference law.
//!
//! Everything here is a pure function on plain values; the only state is the
//! nine-entry probability vector [`DigitDistribution`].

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Probability vector over first digits 1..=9.
///
/// Entries live in `[0, 1]` and sum to 1 within the tolerance supplied at
/// construction (`1e-12` for exact sources; stacked profiles carry their
/// truncation budget on top).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DigitDistribution {
    p: [f64; 9],
}

impl DigitDistribution {
    /// Strict constructor: entries must sum to 1 within `1e-12`.
    pub fn new(p: [f64; 9]) -> Result<Self> {
        Self::with_tolerance(p, 1e-12)
    }

    /// Constructor with an explicit normalization tolerance, for sources that
    /// carry a certified truncation error.
    pub fn with_tolerance(p: [f64; 9], tol: f64) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if !(sum.is_finite() && (sum - 1.0).abs() <= tol) {
            return Err(Error::NotNormalized { sum, tol });
        }
        if p.iter().any(|&x| !(-1e-15..=1.0 + 1e-12).contains(&x)) {
            return Err(Error::NotNormalized { sum, tol });
        }
        Ok(Self { p })
    }

    /// Probability of first digit `k` (1-based). Panics if `k` is out of range.
    pub fn p(&self, k: u8) -> f64 {
        assert!((1..=9).contains(&k), "digit must lie in 1..=9, got {k}");
        self.p[(k - 1) as usize]
    }

    pub fn as_array(&self) -> &[f64; 9] {
        &self.p
    }

    /// Largest absolute per-digit gap against another distribution.
    pub fn max_abs_dev(&self, other: &DigitDistribution) -> f64 {
        self.p
            .iter()
            .zip(other.p.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Iterator over `(digit, probability)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (u8, f64)> + '_ {
        self.p.iter().enumerate().map(|(i, &v)| (i as u8 + 1, v))
    }
}

impl<'de> Deserialize<'de> for DigitDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = <[f64; 9]>::deserialize(d)?;
        // Deserialized reports may carry a stacked profile's truncation slack.
        DigitDistribution::with_tolerance(p, 1e-6).map_err(serde::de::Error::custom)
    }
}

/// Fractional part of a real number, in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Mantissa(f64);

impl Mantissa {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// The Benford first-digit law: `p[k] = log10((k+1)/k)`.
pub fn benford_vector() -> DigitDistribution {
    let mut p = [0.0; 9];
    for (i, slot) in p.iter_mut().enumerate() {
        let k = (i + 1) as f64;
        *slot = ((k + 1.0) / k).log10();
    }
    DigitDistribution { p }
}

/// Fractional part `y − ⌊y⌋`, following the floor convention for negatives
/// (so `mantissa(-0.3) = 0.7`). Rejects non-finite input.
pub fn mantissa(y: f64) -> Result<Mantissa> {
    if !y.is_finite() {
        return Err(Error::NonFinite(y));
    }
    let mut m = y - y.floor();
    // y - floor(y) can round up to exactly 1.0 for tiny negative y.
    if m >= 1.0 {
        m = 0.0;
    }
    Ok(Mantissa(m))
}

/// First digit in base 10 of a positive real.
///
/// Extraction goes through the shortest round-trip decimal rendering of the
/// value, so exact powers of ten land on the correct side of the digit
/// boundary regardless of floating-point log rounding. The log-based route is
/// [`first_digit_via_log`], kept as a cross-check.
pub fn first_digit(x: f64) -> Result<u8> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    if x <= 0.0 {
        return Err(Error::NonPositive(x));
    }
    // Scientific notation puts the leading significant digit first: "2.34e-3".
    let rendered = format!("{x:e}");
    let first = rendered
        .bytes()
        .find(|b| b.is_ascii_digit() && *b != b'0')
        .expect("positive finite float renders with a nonzero digit");
    Ok(first - b'0')
}

/// Log-based first-digit extraction: `k` with `mantissa(log10 x)` in
/// `[log k, log(k+1))`. Subject to rounding at digit boundaries; use
/// [`first_digit`] for authoritative answers.
pub fn first_digit_via_log(x: f64) -> Result<u8> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    if x <= 0.0 {
        return Err(Error::NonPositive(x));
    }
    let m = mantissa(x.log10())?.value();
    for k in (1..=9u8).rev() {
        if m >= (k as f64).log10() {
            return Ok(k);
        }
    }
    Ok(1)
}

/// Half-open mantissa interval `[log k, log(k+1))` owning digit `k`.
/// The nine intervals partition `[0, 1)`.
pub fn digit_interval(k: u8) -> Result<(f64, f64)> {
    if !(1..=9).contains(&k) {
        return Err(Error::DigitOutOfRange(k));
    }
    Ok(((k as f64).log10(), (k as f64 + 1.0).log10()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn benford_reference_values() {
        let b = benford_vector();
        assert!((b.p(1) - 0.3010299956639812).abs() < 1e-15);
        assert!((b.p(9) - 0.045757490560675125).abs() < 1e-15);
        let sum: f64 = b.as_array().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn benford_entries_strictly_decrease() {
        let b = benford_vector();
        for k in 1..9u8 {
            assert!(b.p(k) > b.p(k + 1));
        }
    }

    #[test]
    fn mantissa_follows_floor_convention() {
        assert_eq!(mantissa(3.25).unwrap().value(), 0.25);
        assert!((mantissa(-0.3).unwrap().value() - 0.7).abs() < 1e-15);
        assert_eq!(mantissa(5.0).unwrap().value(), 0.0);
        assert_eq!(mantissa(-2.0).unwrap().value(), 0.0);
        assert!(mantissa(f64::NAN).is_err());
        assert!(mantissa(f64::INFINITY).is_err());
    }

    #[test]
    fn mantissa_never_reaches_one() {
        // y - floor(y) rounds to 1.0 here without the clamp.
        let m = mantissa(-1e-18).unwrap().value();
        assert!((0.0..1.0).contains(&m));
    }

    #[test]
    fn first_digit_examples() {
        assert_eq!(first_digit(0.00234).unwrap(), 2);
        assert_eq!(first_digit(1000.0).unwrap(), 1);
        assert_eq!(first_digit(9.9999).unwrap(), 9);
        assert!(first_digit(0.0).is_err());
        assert!(first_digit(-3.0).is_err());
        assert!(first_digit(f64::NAN).is_err());
    }

    #[test]
    fn first_digit_exact_powers_of_ten() {
        // powi is exact while 10^|n| fits the 53-bit significand
        for n in -22..=22i32 {
            assert_eq!(first_digit(10f64.powi(n)).unwrap(), 1, "powi {n}");
        }
        // beyond that, the float nearest to the power still renders as 1e±n
        for n in -300..300i32 {
            let x: f64 = format!("1e{n}").parse().unwrap();
            assert_eq!(first_digit(x).unwrap(), 1, "1e{n}");
        }
    }

    #[test]
    fn digit_interval_partitions_unit() {
        assert_eq!(digit_interval(1).unwrap().0, 0.0);
        assert!((digit_interval(1).unwrap().1 - 0.30103).abs() < 1e-5);
        assert!((digit_interval(9).unwrap().0 - 0.9542425094393249).abs() < 1e-15);
        assert_eq!(digit_interval(9).unwrap().1, 1.0);
        for k in 1..9u8 {
            assert_eq!(digit_interval(k).unwrap().1, digit_interval(k + 1).unwrap().0);
        }
        assert!(digit_interval(0).is_err());
        assert!(digit_interval(10).is_err());
    }

    #[test]
    fn distribution_rejects_bad_sums() {
        let mut p = [0.1; 9];
        assert!(DigitDistribution::new(p).is_err());
        p[0] = 0.2;
        assert!(DigitDistribution::new(p).is_ok());
    }

    proptest! {
        // Eq-(3)-style partition: the decimal route, the log route, and the
        // mantissa interval all agree away from digit boundaries.
        #[test]
        fn digit_matches_mantissa_interval(exp in -20.0f64..20.0, frac in 0.0f64..1.0) {
            let x = 10f64.powf(exp) * (1.0 + 8.999 * frac);
            prop_assume!(x.is_finite() && x > 0.0);
            let d = first_digit(x).unwrap();
            let (lo, hi) = digit_interval(d).unwrap();
            let m = mantissa(x.log10()).unwrap().value();
            // A float on a boundary may legitimately disagree by rounding.
            let dist = (m - lo).abs().min((m - hi).abs()).min((m - 1.0).abs()).min(m);
            if dist > 1e-9 {
                prop_assert!(m >= lo && m < hi, "x={x} d={d} m={m} [{lo},{hi})");
                prop_assert_eq!(d, first_digit_via_log(x).unwrap());
            }
        }

        #[test]
        fn scale_by_ten_invariance(exp in -30.0f64..30.0, frac in 0.0f64..1.0) {
            let x = 10f64.powf(exp) * (1.0 + 8.999 * frac);
            prop_assume!(x.is_finite() && x > 0.0 && (10.0 * x).is_finite());
            prop_assert_eq!(first_digit(10.0 * x).unwrap(), first_digit(x).unwrap());
        }
    }
}
