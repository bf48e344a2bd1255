//! Cochains on ordered simplices, the Alexander–Whitney cup product and Steenrod's cup-i products.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{coboundary, CoefficientRing};
use crate::simplicial::{Complex, SimplicialComplex};

#[derive(Clone)]
pub struct Cochain {
    complex: Complex,
    degree: usize,
    ring: CoefficientRing,
    values: Vec<i64>,
}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C^{}({}) {:?}", self.degree, self.ring, self.values)
    }
}

impl Cochain {
    pub fn new(complex: Complex, degree: usize, ring: CoefficientRing, values: Vec<i64>) -> Cochain {
        assert_eq!(values.len(), complex.count(degree), "cochain length does not match the skeleton");
        let values = values.into_iter().map(|v| ring.reduce(v)).collect();
        Cochain { complex, degree, ring, values }
    }

    pub fn zero(complex: Complex, degree: usize, ring: CoefficientRing) -> Cochain {
        let n = complex.count(degree);
        Cochain { complex, degree, ring, values: vec![0; n] }
    }

    /// The constant 0-cochain 1.
    pub fn unit(complex: Complex, ring: CoefficientRing) -> Cochain {
        let n = complex.count(0);
        Cochain { complex, degree: 0, ring, values: vec![1; n] }
    }

    /// The cochain taking value 1 on one simplex.
    pub fn indicator(complex: Complex, degree: usize, ring: CoefficientRing, simplex: usize) -> Cochain {
        let mut c = Cochain::zero(complex, degree, ring);
        c.values[simplex] = 1;
        c
    }

    pub fn random<R: Rng>(complex: Complex, degree: usize, ring: CoefficientRing, rng: &mut R, spread: i64) -> Cochain {
        let n = complex.count(degree);
        let values = (0..n).map(|_| ring.reduce(rng.gen_range(-spread..=spread))).collect();
        Cochain { complex, degree, ring, values }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn coboundary(&self) -> Cochain {
        coboundary(self)
    }

    fn compatible(&self, other: &Cochain) -> Result<()> {
        if !Arc::ptr_eq(&self.complex, &other.complex) {
            return Err(Error::ComplexMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::InvalidArgument("adding cochains of different degrees".into()));
        }
        let r = self.ring;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| r.add(a, b)).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Cochain {
        let r = self.ring;
        let c = r.reduce(c);
        Cochain { values: self.values.iter().map(|&a| r.mul(a, c)).collect(), ..self.clone() }
    }

    pub(crate) fn add_scaled(mut self, v: &[i64], c: i64) -> Cochain {
        let r = self.ring;
        for (a, &b) in self.values.iter_mut().zip(v) {
            *a = r.add(*a, r.mul(b, c));
        }
        self
    }

    /// Coefficients reinterpreted in another ring (reduced if needed).
    pub fn reduce_to(&self, ring: CoefficientRing) -> Cochain {
        Cochain::new(self.complex.clone(), self.degree, ring, self.values.clone())
    }

    /// Integral lift using representatives 0..m−1.
    pub fn lift(&self) -> Cochain {
        Cochain { ring: CoefficientRing::Integers, ..self.clone() }
    }

    /// Exact division of every value by `m`; fails unless all values are divisible.
    pub fn divide_exact(&self, m: i64) -> Option<Cochain> {
        if self.values.iter().any(|v| v % m != 0) {
            return None;
        }
        Some(Cochain { values: self.values.iter().map(|v| v / m).collect(), ..self.clone() })
    }

    /// Pullback along an order-preserving vertex map from `source` to this cochain's complex.
    pub fn pullback(&self, source: &Complex, vmap: &[u32]) -> Cochain {
        let k = self.degree;
        let values = (0..source.count(k))
            .map(|s| match source.map_simplex(k, s, vmap) {
                Some(img) => self.values[self.complex.index_of(&img).expect("vertex map is not simplicial")],
                None => 0,
            })
            .collect();
        Cochain { complex: source.clone(), degree: k, ring: self.ring, values }
    }
}

/// Alexander–Whitney cup product: (u⌣v)(σ) = u(front face) · v(back face).
pub fn cup(u: &Cochain, v: &Cochain) -> Result<Cochain> {
    u.compatible(v)?;
    let (r, s) = (u.degree, v.degree);
    let n = r + s;
    let k = &u.complex;
    let ring = u.ring;
    let front: Vec<u8> = (r + 1..=n).rev().map(|p| p as u8).collect();
    let back: Vec<u8> = (0..r).rev().map(|p| p as u8).collect();
    let values = (0..k.count(n))
        .into_par_iter()
        .map(|t| {
            let a = u.values[k.face_removing(n, t, &front)];
            if a == 0 {
                return 0;
            }
            ring.mul(a, v.values[back_face(k, n, t, &back)])
        })
        .collect();
    Ok(Cochain { complex: k.clone(), degree: n, ring, values })
}

fn back_face(k: &SimplicialComplex, n: usize, t: usize, desc: &[u8]) -> usize {
    k.face_removing(n, t, desc)
}

/// One summand of the cup-i formula on the standard n-simplex.
#[derive(Clone, Debug)]
struct Term {
    left_removed: Vec<u8>,
    right_removed: Vec<u8>,
    negative: bool,
}

/// Terms of u ⌣ᵢ v for deg u = r on an n-simplex, n = r + s − i.
///
/// Sum over U ⊂ {0..n} with |U| = n − i. Writing U = {u₁ < … < u_{n−i}}, U⁰ holds
/// the uⱼ with uⱼ + j even and U¹ the rest; u is evaluated on the face missing U⁰
/// and v on the face missing U¹. The sign is (−1)^{n·i + inv(U⁰,U¹) + i·|U⁰|}, where
/// inv counts pairs a ∈ U⁰, b ∈ U¹ with a < b.
fn cup_i_terms(n: usize, i: usize, r: usize) -> Vec<Term> {
    let mut out = Vec::new();
    if i > n {
        return out;
    }
    let size = n - i;
    for mask in 0u32..(1u32 << (n + 1)) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let u: Vec<usize> = (0..=n).filter(|&p| mask >> p & 1 == 1).collect();
        let (mut u0, mut u1) = (Vec::new(), Vec::new());
        for (j, &p) in u.iter().enumerate() {
            if (p + j + 1) % 2 == 0 {
                u0.push(p);
            } else {
                u1.push(p);
            }
        }
        if n + 1 - u0.len() != r + 1 {
            continue;
        }
        let inv: usize = u0.iter().map(|&a| u1.iter().filter(|&&b| a < b).count()).sum();
        let parity = n * i + inv + i * u0.len();
        out.push(Term {
            left_removed: u0.iter().rev().map(|&p| p as u8).collect(),
            right_removed: u1.iter().rev().map(|&p| p as u8).collect(),
            negative: parity % 2 == 1,
        });
    }
    out
}

/// Steenrod's cup-i product. `cup_i(u, v, 0)` agrees with [`cup`].
pub fn cup_i(u: &Cochain, v: &Cochain, i: usize) -> Result<Cochain> {
    u.compatible(v)?;
    let (r, s) = (u.degree, v.degree);
    if i > r + s {
        return Err(Error::InvalidArgument(format!("cup_{i} of degrees {r} and {s} has negative degree")));
    }
    let n = r + s - i;
    let k = &u.complex;
    let ring = u.ring;
    let terms = cup_i_terms(n, i, r);
    let values = (0..k.count(n))
        .into_par_iter()
        .map(|t| {
            let mut acc = 0i64;
            for term in &terms {
                let a = u.values[k.face_removing(n, t, &term.left_removed)];
                if a == 0 {
                    continue;
                }
                let b = v.values[k.face_removing(n, t, &term.right_removed)];
                if b == 0 {
                    continue;
                }
                let p = ring.mul(a, b);
                acc = if term.negative { ring.sub(acc, p) } else { ring.add(acc, p) };
            }
            acc
        })
        .collect();
    Ok(Cochain { complex: k.clone(), degree: n, ring, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{parse_complex, simplex_boundary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const RP2: &str = include_str!("../fixtures/rp2.txt");

    fn sign(e: usize) -> i64 {
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Both sides of the cup-i coboundary formula.
    pub(crate) fn homotopy_sides(u: &Cochain, v: &Cochain, i: usize) -> (Cochain, Cochain) {
        let (r, s) = (u.degree(), v.degree());
        let lhs_a = cup_i(u, v, i).unwrap().coboundary();
        let du_v = cup_i(&u.coboundary(), v, i).unwrap();
        let u_dv = cup_i(u, &v.coboundary(), i).unwrap().scale(sign(r));
        let lhs = lhs_a.sub(&du_v.add(&u_dv).unwrap().scale(sign(i))).unwrap();
        let rhs = cup_i(u, v, i - 1)
            .unwrap()
            .scale(sign(i + 1))
            .sub(&cup_i(v, u, i - 1).unwrap().scale(sign(r * s)))
            .unwrap();
        (lhs, rhs)
    }

    #[test]
    fn term_counts() {
        // cup_0 has exactly the Alexander–Whitney term; cup_n on an n-simplex has one term
        assert_eq!(cup_i_terms(3, 0, 1).len(), 1);
        assert_eq!(cup_i_terms(2, 2, 2).len(), 1);
        assert!(!cup_i_terms(2, 0, 1)[0].negative);
    }

    #[test]
    fn cup_zero_is_alexander_whitney() {
        let k = simplex_boundary(4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (r, s) in [(0, 1), (1, 1), (1, 2), (2, 1), (0, 3)] {
            let u = Cochain::random(k.clone(), r, CoefficientRing::Integers, &mut rng, 3);
            let v = Cochain::random(k.clone(), s, CoefficientRing::Integers, &mut rng, 3);
            assert_eq!(cup(&u, &v).unwrap().values(), cup_i(&u, &v, 0).unwrap().values());
        }
    }

    #[test]
    fn unit_is_neutral() {
        let k = parse_complex(RP2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let v = Cochain::random(k.clone(), 1, CoefficientRing::Integers, &mut rng, 5);
        let one = Cochain::unit(k.clone(), CoefficientRing::Integers);
        assert_eq!(cup(&one, &v).unwrap().values(), v.values());
        assert_eq!(cup(&v, &one).unwrap().values(), v.values());
    }

    #[test]
    fn leibniz_rule() {
        let k = simplex_boundary(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (r, s) in [(0, 2), (1, 1), (2, 1), (1, 3)] {
            let u = Cochain::random(k.clone(), r, CoefficientRing::Integers, &mut rng, 4);
            let v = Cochain::random(k.clone(), s, CoefficientRing::Integers, &mut rng, 4);
            let lhs = cup(&u, &v).unwrap().coboundary();
            let rhs = cup(&u.coboundary(), &v).unwrap().add(&cup(&u, &v.coboundary()).unwrap().scale(sign(r))).unwrap();
            assert_eq!(lhs.values(), rhs.values());
        }
    }

    #[test]
    fn cup_one_square_of_a_cocycle() {
        // d(u ⌣₁ u) = u⌣u − (−1)^{r²} u⌣u for an integral cocycle u
        let k = simplex_boundary(4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for r in 1..=2 {
            let x = Cochain::random(k.clone(), r - 1, CoefficientRing::Integers, &mut rng, 3);
            let u = x.coboundary();
            let lhs = cup_i(&u, &u, 1).unwrap().coboundary();
            let sq = cup(&u, &u).unwrap();
            let rhs = sq.sub(&sq.scale(sign(r * r))).unwrap();
            assert_eq!(lhs.values(), rhs.values());
        }
    }

    #[test]
    fn homotopy_formula_on_projective_plane() {
        let k = parse_complex(RP2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 1..=2 {
            for r in 0..=2 {
                for s in 0..=2 {
                    if r + s < i || r + s + 1 - i > 2 {
                        continue;
                    }
                    let u = Cochain::random(k.clone(), r, CoefficientRing::Integers, &mut rng, 5);
                    let v = Cochain::random(k.clone(), s, CoefficientRing::Integers, &mut rng, 5);
                    let (lhs, rhs) = homotopy_sides(&u, &v, i);
                    assert_eq!(lhs.values(), rhs.values(), "i={i} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn mismatched_inputs() {
        let a = simplex_boundary(3);
        let b = simplex_boundary(3);
        let u = Cochain::zero(a.clone(), 1, CoefficientRing::Integers);
        let v = Cochain::zero(b, 1, CoefficientRing::Integers);
        assert_eq!(cup(&u, &v).unwrap_err(), Error::ComplexMismatch);
        let w = Cochain::zero(a, 1, CoefficientRing::Z2);
        assert!(matches!(cup_i(&u, &w, 1), Err(Error::RingMismatch(..))));
        assert!(cup_i(&u, &u, 3).is_err());
    }
}
