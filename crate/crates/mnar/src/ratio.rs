use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An exact non-negative rational.
///
/// Confidence values are quotients of integer supports and threshold
/// comparisons must be exact: a rule with confidence 4/5 meets a threshold
/// parsed from "0.8", with no float round-off in between. Comparisons
/// cross-multiply in 128 bits instead of dividing.
///
/// The numerator and denominator are kept as given, not reduced, so a value
/// built from supports 3 and 3 still displays as `3/3`.
#[derive(Clone, Copy, Debug)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    /// Builds `num/den`. Panics if `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "ratio denominator must be non-zero");
        Ratio { num, den }
    }

    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// The same value in lowest terms.
    pub fn reduced(&self) -> (u64, u64) {
        // The denominator is never zero, so neither is the gcd.
        let g = gcd(self.num, self.den);
        (self.num / g, self.den / g)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Parses a decimal string ("0.8", "1", ".25") or a fraction ("4/5").
    pub fn parse(s: &str) -> Result<Ratio> {
        let s = s.trim();
        let bad = || Error::Config(format!("cannot parse '{s}' as a ratio"));
        if let Some((n, d)) = s.split_once('/') {
            let num: u64 = n.trim().parse().map_err(|_| bad())?;
            let den: u64 = d.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(Error::Config(format!("zero denominator in '{s}'")));
            }
            return Ok(Ratio::new(num, den));
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if frac_part.len() > 9 {
            return Err(Error::Config(format!(
                "too many decimal digits in '{s}' (at most 9 supported)"
            )));
        }
        let int: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let mut num = int;
        let mut den = 1u64;
        for c in frac_part.chars() {
            let digit = c.to_digit(10).ok_or_else(bad)? as u64;
            num = num
                .checked_mul(10)
                .and_then(|n| n.checked_add(digit))
                .ok_or_else(bad)?;
            den *= 10;
        }
        Ok(Ratio::new(num, den))
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }
}

impl Eq for Ratio {}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(Ratio::parse("0.8").unwrap(), Ratio::new(4, 5));
        assert_eq!(Ratio::parse("4/5").unwrap(), Ratio::new(4, 5));
        assert_eq!(Ratio::parse("1").unwrap(), Ratio::ONE);
        assert_eq!(Ratio::parse("1.0").unwrap(), Ratio::ONE);
        assert_eq!(Ratio::parse(".25").unwrap(), Ratio::new(1, 4));
        assert_eq!(Ratio::parse(" 2/3 ").unwrap(), Ratio::new(2, 3));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "-0.5", "0.8.1", "1/", "/2", "0.1234567891"] {
            assert!(Ratio::parse(s).is_err(), "expected parse failure for {s:?}");
        }
    }

    #[test]
    fn threshold_comparison_is_exact() {
        // The canonical float trap: 4/5 must satisfy a 0.8 threshold exactly.
        let conf = Ratio::new(4, 5);
        let threshold = Ratio::parse("0.8").unwrap();
        assert!(conf >= threshold);
        assert_eq!(conf, threshold);
        assert!(Ratio::new(3, 5) < threshold);
        assert!(Ratio::new(5, 6) > threshold);
    }

    #[test]
    fn keeps_raw_numerator_and_denominator() {
        let r = Ratio::new(3, 3);
        assert_eq!((r.num(), r.den()), (3, 3));
        assert_eq!(r.to_string(), "3/3");
        assert_eq!(r.reduced(), (1, 1));
        assert_eq!(r, Ratio::ONE);
    }

    #[test]
    fn ordering_is_total_and_consistent() {
        let mut v = [
            Ratio::new(1, 2),
            Ratio::new(2, 3),
            Ratio::new(4, 5),
            Ratio::new(1, 1),
            Ratio::new(5, 6),
            Ratio::new(10, 10),
        ];
        v.sort();
        assert_eq!(v[0], Ratio::new(1, 2));
        assert_eq!(v[4], Ratio::ONE);
        assert_eq!(v[5], Ratio::ONE);
        assert_eq!(Ratio::new(0, 7).reduced(), (0, 1));
    }
}
