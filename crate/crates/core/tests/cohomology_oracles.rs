use steenrod::fixtures;
use steenrod::linalg::CoefficientRing;
use steenrod::{cohomology, Complex};

fn fixtures() -> Vec<Complex> {
    vec![
        fixtures::circle(),
        fixtures::sphere(2),
        fixtures::sphere(4),
        fixtures::torus(),
        fixtures::rp2(),
        fixtures::rp3(),
        fixtures::cp2(),
        fixtures::lens_5_2(),
        steenrod::lens::lens_space(4, 1).unwrap(),
    ]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn universal_coefficients() {
    for k in fixtures() {
        for m in 2..=12u64 {
            for d in 0..=k.dim() {
                let hz = cohomology(&k, d, CoefficientRing::Integers).unwrap();
                let next = if d < k.dim() {
                    cohomology(&k, d + 1, CoefficientRing::Integers).unwrap().torsion_invariants.clone()
                } else {
                    Vec::new()
                };
                // |Hᵈ(K; Z/m)| = m^b · Π gcd(t, m) over torsion of Hᵈ and Hᵈ⁺¹
                let mut expected: u128 = (m as u128).pow(hz.free_rank as u32);
                for t in hz.torsion_invariants.iter().chain(&next) {
                    expected *= gcd(*t, m) as u128;
                }
                let hm = cohomology(&k, d, CoefficientRing::ModM(m)).unwrap();
                let order: u128 = hm.orders().iter().map(|o| o.unwrap() as u128).product();
                assert_eq!(order, expected, "{} H^{d}(Z/{m})", k.name());
                assert!(hm.generators.iter().all(|g| m % g.order.unwrap() == 0));
            }
        }
    }
}

#[test]
fn euler_characteristic_from_ranks() {
    for k in fixtures() {
        let chi: i64 = (0..=k.dim())
            .map(|d| {
                let b = cohomology(&k, d, CoefficientRing::Integers).unwrap().free_rank as i64;
                if d % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        assert_eq!(chi, k.euler_characteristic(), "{}", k.name());
        let chi2: i64 = (0..=k.dim())
            .map(|d| {
                let b = cohomology(&k, d, CoefficientRing::Z2).unwrap().dimension() as i64;
                if d % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        assert_eq!(chi2, k.euler_characteristic());
    }
}

#[test]
fn known_groups() {
    let z = CoefficientRing::Integers;
    let rp3 = fixtures::rp3();
    let t: Vec<Vec<u64>> = (0..=3).map(|d| cohomology(&rp3, d, z).unwrap().torsion_invariants.clone()).collect();
    assert_eq!(t, vec![vec![], vec![], vec![2], vec![]]);
    let l = steenrod::lens::lens_space(4, 1).unwrap();
    assert_eq!(cohomology(&l, 2, z).unwrap().torsion_invariants, vec![4]);
    let d = cohomology(&l, 1, CoefficientRing::ModM(4)).unwrap();
    assert_eq!(d.orders(), vec![Some(4)]);
    let d = cohomology(&l, 1, CoefficientRing::ModM(6)).unwrap();
    assert_eq!(d.orders(), vec![Some(2)]);
}
