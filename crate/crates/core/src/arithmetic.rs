//! Mod-2 linking numbers of odd primes and the reciprocity check.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// 0 if p ≡ 1 mod 4, 1 if p ≡ 3 mod 4.
pub fn epsilon(p: u64) -> Result<u8> {
    require_odd_prime(p)?;
    Ok(if p % 4 == 1 { 0 } else { 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePair {
    pub p: u64,
    pub q: u64,
}

impl PrimePair {
    pub fn new(p: u64, q: u64) -> Result<PrimePair> {
        require_odd_prime(p)?;
        require_odd_prime(q)?;
        if p == q {
            return Err(Error::InvalidArgument(format!("primes must be distinct, got {p} twice")));
        }
        Ok(PrimePair { p, q })
    }
}

/// (−1)^ε(p)·p reduced mod q.
fn twisted(pair: PrimePair) -> u64 {
    let p = pair.p % pair.q;
    if pair.p % 4 == 1 {
        p
    } else {
        (pair.q - p) % pair.q
    }
}

/// Quadratic residue test by listing all squares mod q.
pub fn is_square_by_enumeration(a: u64, q: u64) -> bool {
    let a = a % q;
    (0..q).any(|x| x * x % q == a)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Quadratic residue test by Euler's criterion, q an odd prime.
pub fn is_square_by_euler(a: u64, q: u64) -> bool {
    let a = a % q;
    a == 0 || pow_mod(a, (q - 1) / 2, q) == 1
}

/// ℓk(p, q) ∈ Z/2: 0 iff (−1)^ε(p)·p is a square mod q.
pub fn lk_mod2(pair: PrimePair) -> Result<u8> {
    let a = twisted(pair);
    let by_enum = is_square_by_enumeration(a, pair.q);
    let by_euler = is_square_by_euler(a, pair.q);
    if by_enum != by_euler {
        return Err(Error::Precondition(format!("residue oracles disagree on ({}, {})", pair.p, pair.q)));
    }
    Ok(u8::from(!by_enum))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub pairs_checked: usize,
    pub violations: Vec<(u64, u64)>,
    pub oracle_disagreements: Vec<(u64, u64)>,
}

/// Checks ℓk(p, q) = ℓk(q, p) for all distinct odd primes p, q below `bound`.
pub fn reciprocity_scan(bound: u64) -> ScanReport {
    use rayon::prelude::*;
    let primes: Vec<u64> = (3..bound).filter(|&n| is_prime(n)).collect();
    let squares: Vec<Vec<bool>> = primes
        .iter()
        .map(|&q| {
            let mut s = vec![false; q as usize];
            for x in 0..q {
                s[(x * x % q) as usize] = true;
            }
            s
        })
        .collect();
    let rows: Vec<ScanReport> = (0..primes.len())
        .into_par_iter()
        .map(|i| {
            let mut r = ScanReport::default();
            for j in i + 1..primes.len() {
                let (p, q) = (primes[i], primes[j]);
                let mut lk = [0u8; 2];
                for (n, (a, b, sq)) in [(p, q, &squares[j]), (q, p, &squares[i])].into_iter().enumerate() {
                    let t = twisted(PrimePair { p: a, q: b });
                    let e = sq[t as usize];
                    if e != is_square_by_euler(t, b) {
                        r.oracle_disagreements.push((a, b));
                    }
                    lk[n] = u8::from(!e);
                }
                r.pairs_checked += 1;
                if lk[0] != lk[1] {
                    r.violations.push((p, q));
                }
            }
            r
        })
        .collect();
    let mut out = ScanReport::default();
    for r in rows {
        out.pairs_checked += r.pairs_checked;
        out.violations.extend(r.violations);
        out.oracle_disagreements.extend(r.oracle_disagreements);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_table() {
        assert_eq!(epsilon(5).unwrap(), 0);
        assert_eq!(epsilon(3).unwrap(), 1);
        assert!(epsilon(2).is_err());
        assert!(epsilon(9).is_err());
        for p in (3..200).filter(|&p| is_prime(p)) {
            assert_eq!(epsilon(p).unwrap() as u64, (p % 4) / 2);
        }
    }

    #[test]
    fn linking_examples() {
        assert_eq!(lk_mod2(PrimePair::new(3, 5).unwrap()).unwrap(), 1);
        assert_eq!(lk_mod2(PrimePair::new(5, 3).unwrap()).unwrap(), 1);
        assert_eq!(lk_mod2(PrimePair::new(13, 3).unwrap()).unwrap(), 0);
        assert!(PrimePair::new(3, 3).is_err());
        assert!(PrimePair::new(2, 3).is_err());
        assert!(PrimePair::new(15, 7).is_err());
    }

    #[test]
    fn scans() {
        assert_eq!(reciprocity_scan(4).pairs_checked, 0);
        let r = reciprocity_scan(100);
        assert_eq!(r.pairs_checked, 24 * 23 / 2);
        assert!(r.oracle_disagreements.is_empty());
        // the residue-symbol formula is symmetric unless both primes are 3 mod 4
        for (p, q) in reciprocity_scan(1000).violations {
            assert_eq!((p % 4, q % 4), (3, 3));
        }
        assert!(r.violations.contains(&(3, 7)));
        assert!(!r.violations.contains(&(3, 5)));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
