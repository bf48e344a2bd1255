use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    ModM(u64),
}

impl CoefficientRing {
    pub const Z2: CoefficientRing = CoefficientRing::ModM(2);

    pub fn mod_m(m: u64) -> Result<Self> {
        if m < 2 || m > (1 << 31) {
            return Err(Error::UnsupportedRing(format!("Z/{m}")));
        }
        Ok(CoefficientRing::ModM(m))
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            CoefficientRing::Integers => None,
            CoefficientRing::ModM(m) => Some(m),
        }
    }

    #[inline]
    pub fn reduce(self, x: i64) -> i64 {
        match self {
            CoefficientRing::Integers => x,
            CoefficientRing::ModM(m) => x.rem_euclid(m as i64),
        }
    }

    #[inline]
    pub fn add(self, a: i64, b: i64) -> i64 {
        match self {
            CoefficientRing::Integers => a.checked_add(b).expect("integer cochain overflow"),
            CoefficientRing::ModM(m) => (a + b).rem_euclid(m as i64),
        }
    }

    #[inline]
    pub fn sub(self, a: i64, b: i64) -> i64 {
        match self {
            CoefficientRing::Integers => a.checked_sub(b).expect("integer cochain overflow"),
            CoefficientRing::ModM(m) => (a - b).rem_euclid(m as i64),
        }
    }

    #[inline]
    pub fn mul(self, a: i64, b: i64) -> i64 {
        match self {
            CoefficientRing::Integers => a.checked_mul(b).expect("integer cochain overflow"),
            CoefficientRing::ModM(m) => ((a as i128 * b as i128).rem_euclid(m as i128)) as i64,
        }
    }

    #[inline]
    pub fn neg(self, a: i64) -> i64 {
        self.sub(0, a)
    }

    /// If the modulus is a prime power ℓⁿ, returns (ℓ, n).
    pub fn prime_power(self) -> Option<(u64, u32)> {
        let m = self.modulus()?;
        let l = smallest_prime_factor(m);
        let mut n = 0;
        let mut r = m;
        while r % l == 0 {
            r /= l;
            n += 1;
        }
        (r == 1).then_some((l, n))
    }

    pub fn is_field(self) -> bool {
        matches!(self.prime_power(), Some((_, 1)))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("z") {
            return Ok(CoefficientRing::Integers);
        }
        let m = s
            .strip_prefix("mod:")
            .and_then(|t| t.parse::<u64>().ok())
            .ok_or_else(|| Error::UnsupportedRing(s.to_string()))?;
        Self::mod_m(m)
    }
}

pub(crate) fn smallest_prime_factor(m: u64) -> u64 {
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            return p;
        }
        p += 1;
    }
    m
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::ModM(m) => write!(f, "Z/{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(CoefficientRing::parse("z").unwrap(), CoefficientRing::Integers);
        assert_eq!(CoefficientRing::parse("mod:4").unwrap(), CoefficientRing::ModM(4));
        assert!(CoefficientRing::parse("mod:1").is_err());
        assert!(CoefficientRing::parse("q").is_err());
        assert_eq!(CoefficientRing::ModM(8).to_string(), "Z/8");
    }

    #[test]
    fn prime_powers() {
        assert_eq!(CoefficientRing::ModM(8).prime_power(), Some((2, 3)));
        assert_eq!(CoefficientRing::ModM(9).prime_power(), Some((3, 2)));
        assert_eq!(CoefficientRing::ModM(6).prime_power(), None);
        assert!(CoefficientRing::ModM(7).is_field());
        assert!(!CoefficientRing::ModM(4).is_field());
    }

    #[test]
    fn arithmetic_is_reduced() {
        let r = CoefficientRing::ModM(5);
        assert_eq!(r.sub(1, 3), 3);
        assert_eq!(r.mul(4, 4), 1);
        assert_eq!(r.neg(0), 0);
    }
}
