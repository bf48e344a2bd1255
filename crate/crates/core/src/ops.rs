//! Cohomology operations: Steenrod squares, Bocksteins, and the Cartan formula check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::{cup, cup_i, Cochain};
use crate::error::{Error, Result};
use crate::linalg::cohomology::{basis, class_of, solve_coboundary};
use crate::linalg::{modp, CoefficientRing, CohomologyClass};
use crate::simplicial::{product_complex_bounded, projection_maps, Complex};

fn require_z2(x: &CohomologyClass) -> Result<()> {
    if x.ring() != CoefficientRing::Z2 {
        return Err(Error::UnsupportedRing(format!("{} (expected Z/2)", x.ring())));
    }
    Ok(())
}

/// The zero class of a given degree and ring.
pub fn zero_class(k: &Complex, degree: usize, ring: CoefficientRing) -> CohomologyClass {
    basis(k, degree, ring).zero(k)
}

/// Class of the cup product of two classes' representatives.
pub fn cup_classes(x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
    class_of(&cup(&x.cocycle, &y.cocycle)?)
}

/// Sqⁱ(x) as the class of z ⌣_{r−i} z.
pub fn sq(i: usize, x: &CohomologyClass) -> Result<CohomologyClass> {
    require_z2(x)?;
    let r = x.degree();
    if i > r {
        return Ok(zero_class(x.complex(), r + i, CoefficientRing::Z2));
    }
    sq_cochain(i, &x.cocycle).and_then(|c| class_of(&c))
}

pub(crate) fn sq_cochain(i: usize, z: &Cochain) -> Result<Cochain> {
    cup_i(z, z, z.degree() - i)
}

/// Components Sq⁰x, …, Sq^r x of the total square.
pub fn total_sq(x: &CohomologyClass) -> Result<Vec<CohomologyClass>> {
    (0..=x.degree()).map(|i| sq(i, x)).collect()
}

fn prime_power_modulus(x: &CohomologyClass) -> Result<i64> {
    match x.ring().prime_power() {
        Some(_) => Ok(x.ring().modulus().unwrap() as i64),
        None => Err(Error::UnsupportedRing(format!("{} (expected a prime power modulus)", x.ring()))),
    }
}

/// Connecting cochain (1/m)·δ(integral lift) of a mod-m cocycle, as an integral cochain.
fn connecting_cochain(z: &Cochain, m: i64) -> Cochain {
    z.lift().coboundary().divide_exact(m).expect("lift of a mod-m cocycle has coboundary divisible by m")
}

/// Bockstein of 0 → Z/m → Z/m² → Z/m → 0 for a prime power m.
pub fn bockstein(x: &CohomologyClass) -> Result<CohomologyClass> {
    let m = prime_power_modulus(x)?;
    class_of(&connecting_cochain(&x.cocycle, m).reduce_to(x.ring()))
}

/// Connecting class of 0 → Z → Z → Z/m → 0.
pub fn integral_bockstein(x: &CohomologyClass) -> Result<CohomologyClass> {
    let m = match x.ring() {
        CoefficientRing::ModM(m) => m as i64,
        CoefficientRing::Integers => return Err(Error::UnsupportedRing("Z (expected Z/m)".into())),
    };
    class_of(&connecting_cochain(&x.cocycle, m))
}

/// An element of H^{k+1}(−; Z/2) defined modulo the image of the primary Bockstein.
#[derive(Clone, Debug)]
pub struct SecondaryClass {
    pub value: CohomologyClass,
    pub indeterminacy: Vec<CohomologyClass>,
}

impl SecondaryClass {
    /// Whether `candidate` lies in value + span(indeterminacy).
    pub fn contains(&self, candidate: &CohomologyClass) -> bool {
        if candidate.degree() != self.value.degree() || candidate.ring() != self.value.ring() {
            return false;
        }
        let diff: Vec<i64> = candidate.coords.iter().zip(&self.value.coords).map(|(a, b)| (a - b).rem_euclid(2)).collect();
        if diff.iter().all(|&d| d == 0) {
            return true;
        }
        let rows: Vec<Vec<i64>> = self.indeterminacy.iter().map(|c| c.coords.clone()).collect();
        !rows.is_empty() && modp::in_row_span(&rows, &diff, 2)
    }

    /// Whether the value is zero modulo indeterminacy.
    pub fn is_trivial(&self) -> bool {
        self.contains(&zero_class(self.value.complex(), self.value.degree(), CoefficientRing::Z2))
    }
}

/// Secondary Bockstein β₂ of a mod-2 class with vanishing primary Bockstein.
pub fn secondary_bockstein(x: &CohomologyClass) -> Result<SecondaryClass> {
    secondary_bockstein_from_lift(x, x.cocycle.lift())
}

/// As [`secondary_bockstein`], starting from a randomly perturbed integral lift.
pub fn secondary_bockstein_seeded(x: &CohomologyClass, seed: u64) -> Result<SecondaryClass> {
    let k = x.complex().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lift = x.cocycle.lift();
    let noise = Cochain::random(k.clone(), x.degree(), CoefficientRing::Integers, &mut rng, 2).scale(2);
    lift = lift.add(&noise)?;
    if x.degree() > 0 {
        let r = Cochain::random(k, x.degree() - 1, CoefficientRing::Integers, &mut rng, 2);
        lift = lift.add(&r.coboundary())?;
    }
    secondary_bockstein_from_lift(x, lift)
}

/// Runs the correction from a given integral lift of x.
pub fn secondary_bockstein_from_lift(x: &CohomologyClass, lift: Cochain) -> Result<SecondaryClass> {
    require_z2(x)?;
    let k = x.complex();
    if !bockstein(x)?.is_zero() {
        return Err(Error::Precondition("primary Bockstein does not vanish".into()));
    }
    debug_assert!(lift.reduce_to(CoefficientRing::Z2).values() == x.cocycle.values());
    let y = lift.coboundary().divide_exact(2).expect("not a lift of a mod-2 cocycle");
    // y mod 2 is a coboundary δw; correcting the lift by 2w̃ makes δ divisible by 4
    let w = solve_coboundary(&y.reduce_to(CoefficientRing::Z2))?.expect("primary Bockstein vanishes");
    let corrected = lift.sub(&w.lift().scale(2))?;
    let y4 = corrected.coboundary().divide_exact(4).expect("corrected lift must have coboundary divisible by 4");
    let value = class_of(&y4.reduce_to(CoefficientRing::Z2))?;
    let h = basis(k, x.degree(), CoefficientRing::Z2);
    let indeterminacy = h
        .generators_of(k)
        .iter()
        .map(bockstein)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    Ok(SecondaryClass { value, indeterminacy })
}

/// Random cocycle in the class of `x`: representative plus a random coboundary.
pub fn perturbed_representative<R: Rng>(x: &CohomologyClass, rng: &mut R) -> Result<CohomologyClass> {
    if x.degree() == 0 {
        return Ok(x.clone());
    }
    let r = Cochain::random(x.complex().clone(), x.degree() - 1, x.ring(), rng, 3);
    let z = x.cocycle.add(&r.coboundary())?;
    let c = class_of(&z)?;
    debug_assert_eq!(c.coords, x.coords);
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanPair {
    /// (degree, generator index) on K and on L.
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct CartanReport {
    pub product_facets: usize,
    pub pairs: Vec<CartanPair>,
}

impl CartanReport {
    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|p| p.pass)
    }
}

/// Checks Sq(pr₁*e ⌣ pr₂*f) = pr₁*Sq(e) ⌣ pr₂*Sq(f) for all mod-2 basis classes.
pub fn cartan_check(k: &Complex, l: &Complex, bound: usize) -> Result<CartanReport> {
    let p = product_complex_bounded(k, l, bound)?;
    let (pr1, pr2) = projection_maps(k, l);
    let z2 = CoefficientRing::Z2;
    let mut pairs = Vec::new();
    let squares = |c: &Complex| -> Result<Vec<Vec<(CohomologyClass, Vec<CohomologyClass>)>>> {
        (0..=c.dim())
            .map(|d| {
                basis(c, d, z2)
                    .generators_of(c)
                    .into_iter()
                    .map(|e| {
                        let s = total_sq(&e)?;
                        Ok((e, s))
                    })
                    .collect()
            })
            .collect()
    };
    let sk = squares(k)?;
    let sl = squares(l)?;
    for (pd, gens_k) in sk.iter().enumerate() {
        for (a, (e, sq_e)) in gens_k.iter().enumerate() {
            for (qd, gens_l) in sl.iter().enumerate() {
                for (b, (f, sq_f)) in gens_l.iter().enumerate() {
                    let prod = cup(&e.cocycle.pullback(&p, &pr1), &f.cocycle.pullback(&p, &pr2))?;
                    let prod = class_of(&prod)?;
                    let mut pass = true;
                    for t in 0..=pd + qd {
                        let lhs = sq(t, &prod)?;
                        let mut rhs = Cochain::zero(p.clone(), pd + qd + t, z2);
                        for i in 0..=t.min(pd) {
                            let j = t - i;
                            if j > qd {
                                continue;
                            }
                            let term = cup(&sq_e[i].cocycle.pullback(&p, &pr1), &sq_f[j].cocycle.pullback(&p, &pr2))?;
                            rhs = rhs.add(&term)?;
                        }
                        pass &= class_of(&rhs)?.coords == lhs.coords;
                    }
                    pairs.push(CartanPair { left: (pd, a), right: (qd, b), pass });
                }
            }
        }
    }
    Ok(CartanReport { product_facets: p.count(p.dim()), pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cohomology;
    use crate::simplicial::{parse_complex, point, product_complex, simplex_boundary};

    const RP2: &str = include_str!("../fixtures/rp2.txt");
    const CP2: &str = include_str!("../fixtures/cp2.txt");

    fn gen(k: &Complex, d: usize, ring: CoefficientRing) -> CohomologyClass {
        cohomology(k, d, ring).unwrap().generator(k, 0)
    }

    #[test]
    fn projective_plane_squares() {
        let k = parse_complex(RP2).unwrap();
        let x = gen(&k, 1, CoefficientRing::Z2);
        let x2 = cup_classes(&x, &x).unwrap();
        assert!(!x2.is_zero());
        assert_eq!(sq(1, &x).unwrap(), x2);
        assert_eq!(sq(0, &x).unwrap(), x);
        assert!(sq(2, &x).unwrap().is_zero());
        assert_eq!(bockstein(&x).unwrap(), x2);
    }

    #[test]
    fn integral_bockstein_hits_torsion() {
        let k = parse_complex(RP2).unwrap();
        let x = gen(&k, 1, CoefficientRing::Z2);
        let b = integral_bockstein(&x).unwrap();
        assert_eq!(b.coords, vec![1]);
        assert_eq!(b.basis().torsion_invariants, vec![2]);
    }

    #[test]
    fn reduction_of_integral_class_has_no_bockstein() {
        let k = simplex_boundary(3);
        let g = gen(&k, 2, CoefficientRing::Integers);
        for m in [2u64, 4, 3] {
            let r = g.reduce_mod(m);
            assert!(integral_bockstein(&r).unwrap().is_zero());
            assert!(bockstein(&r).unwrap().is_zero());
        }
    }

    #[test]
    fn complex_projective_plane_square() {
        let k = parse_complex(CP2).unwrap();
        let h = gen(&k, 2, CoefficientRing::Z2);
        let h2 = cup_classes(&h, &h).unwrap();
        assert!(!h2.is_zero());
        assert_eq!(sq(2, &h).unwrap(), h2);
        assert!(sq(1, &h).unwrap().is_zero());
    }

    #[test]
    fn bockstein_requires_prime_power() {
        let k = parse_complex(RP2).unwrap();
        let g = gen(&k, 0, CoefficientRing::ModM(6));
        assert!(matches!(bockstein(&g), Err(Error::UnsupportedRing(_))));
        let g = gen(&k, 0, CoefficientRing::ModM(4));
        assert!(sq(0, &g).is_err());
    }

    #[test]
    fn secondary_of_reduced_integral_class_is_trivial() {
        let k = simplex_boundary(3);
        let g = gen(&k, 2, CoefficientRing::Integers).reduce_mod(2);
        let s = secondary_bockstein(&g).unwrap();
        assert!(s.is_trivial());
    }

    #[test]
    fn secondary_requires_vanishing_primary() {
        let k = parse_complex(RP2).unwrap();
        let x = gen(&k, 1, CoefficientRing::Z2);
        assert!(matches!(secondary_bockstein(&x), Err(Error::Precondition(_))));
    }

    #[test]
    fn cartan_on_small_products() {
        let c = parse_complex("0 1\n1 2\n0 2").unwrap();
        assert!(cartan_check(&c, &c, 1_000_000).unwrap().all_pass());
        let k = parse_complex(RP2).unwrap();
        let r = cartan_check(&k, &point(), 1_000_000).unwrap();
        assert_eq!(r.pairs.len(), 3);
        assert!(r.all_pass());
    }

    #[test]
    fn squares_commute_with_projection() {
        let k = parse_complex(RP2).unwrap();
        let c = parse_complex("0 1\n1 2\n0 2").unwrap();
        let p = product_complex(&k, &c);
        let (pr1, _) = projection_maps(&k, &c);
        let x = gen(&k, 1, CoefficientRing::Z2);
        let up = class_of(&x.cocycle.pullback(&p, &pr1)).unwrap();
        for i in 0..=2 {
            let a = sq(i, &up).unwrap();
            let b = class_of(&sq(i, &x).unwrap().cocycle.pullback(&p, &pr1)).unwrap();
            assert_eq!(a, b);
        }
    }
}
