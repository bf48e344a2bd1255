//! Exact elements of Q/Z as reduced fractions.

use std::fmt;

use num_integer::Integer;

/// num/den with 0 ≤ num < den and gcd(num, den) = 1; zero is 0/1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qz {
    num: u64,
    den: u64,
}

impl Qz {
    pub const ZERO: Qz = Qz { num: 0, den: 1 };

    pub fn new(num: i64, den: u64) -> Qz {
        assert!(den > 0);
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        Qz { num: n / g, den: den / g }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Order of the element in Q/Z.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn add(self, o: Qz) -> Qz {
        let l = self.den.lcm(&o.den);
        let a = (self.num as u128 * (l / self.den) as u128 + o.num as u128 * (l / o.den) as u128) % l as u128;
        Qz::new(a as i64, l)
    }

    pub fn neg(self) -> Qz {
        Qz::new(-(self.num as i64), self.den)
    }

    pub fn mul_int(self, k: i64) -> Qz {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Qz::new(n as i64, self.den)
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
