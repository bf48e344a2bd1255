use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steenrod::fixtures;
use steenrod::linalg::{class_of, CoefficientRing};
use steenrod::ops::{bockstein, perturbed_representative, sq};
use steenrod::verify::homotopy_formula_holds;
use steenrod::{cohomology, Cochain, Complex};

fn pick(i: usize) -> Complex {
    match i % 5 {
        0 => fixtures::sphere(4),
        1 => fixtures::rp2(),
        2 => fixtures::rp3(),
        3 => fixtures::cp2(),
        _ => fixtures::torus(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cup_i_homotopy_formula(which in 0usize..5, seed in any::<u64>(), i in 1usize..=3, r in 0usize..=4, s in 0usize..=4) {
        let k = pick(which);
        let d = k.dim();
        prop_assume!(r <= d && s <= d && r + s >= i && r + s + 1 <= d + i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = CoefficientRing::Integers;
        let u = Cochain::random(k.clone(), r, z, &mut rng, 7);
        let v = Cochain::random(k.clone(), s, z, &mut rng, 7);
        prop_assert!(homotopy_formula_holds(&u, &v, i).unwrap());
    }

    #[test]
    fn coboundaries_are_zero_classes(which in 0usize..5, seed in any::<u64>(), d in 1usize..=4, m in 0u64..6) {
        let k = pick(which);
        prop_assume!(d <= k.dim());
        let ring = if m < 2 { CoefficientRing::Integers } else { CoefficientRing::ModM(m) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Cochain::random(k.clone(), d - 1, ring, &mut rng, 9);
        let z = c.coboundary();
        prop_assert!(class_of(&z).unwrap().is_zero());
        let back = steenrod::linalg::solve_coboundary(&z).unwrap().unwrap();
        let dback = back.coboundary();
        prop_assert_eq!(dback.values(), z.values());
    }

    #[test]
    fn squares_are_additive_and_well_defined(which in 0usize..5, seed in any::<u64>(), deg in 0usize..=4, t in 0usize..=4) {
        let k = pick(which);
        prop_assume!(deg <= k.dim());
        let b = cohomology(&k, deg, CoefficientRing::Z2).unwrap();
        prop_assume!(!b.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords: Vec<i64> = (0..b.len()).map(|_| rand::Rng::gen_range(&mut rng, 0..2)).collect();
        let other: Vec<i64> = (0..b.len()).map(|_| rand::Rng::gen_range(&mut rng, 0..2)).collect();
        let x = b.combination(&k, &coords);
        let y = b.combination(&k, &other);
        let lhs = sq(t, &x.add(&y)).unwrap();
        let rhs = sq(t, &x).unwrap().add(&sq(t, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
        let x2 = perturbed_representative(&x, &mut rng).unwrap();
        prop_assert_eq!(sq(t, &x2).unwrap(), sq(t, &x).unwrap());
        if deg < k.dim() {
            prop_assert_eq!(bockstein(&x2).unwrap(), bockstein(&x).unwrap());
        }
    }

    #[test]
    fn class_coordinates_round_trip(which in 0usize..5, seed in any::<u64>(), deg in 0usize..=4, m in 2u64..9) {
        let k = pick(which);
        prop_assume!(deg <= k.dim());
        let b = cohomology(&k, deg, CoefficientRing::ModM(m)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords: Vec<i64> = b.orders().iter().map(|o| rand::Rng::gen_range(&mut rng, 0..o.unwrap() as i64)).collect();
        let x = b.combination(&k, &coords);
        prop_assert_eq!(class_of(&x.cocycle).unwrap().coords, coords);
    }
}
