use steenrod::duality::{linking_form, linking_form_seeded, linking_form_via_pairings, TorsionForm};
use steenrod::fixtures;
use steenrod::lens::lens_space;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// lk on L(p, q) is ±q·u²/p for some unit u, whichever generator is chosen.
fn matches_lens_class(f: &TorsionForm, p: u64, q: u64) -> bool {
    let v = f.gram[0][0];
    let num = (v.num() * (p / v.den())) % p;
    (1..p).filter(|&u| gcd(u, p) == 1).any(|u| {
        let t = q * u * u % p;
        num == t || num == (p - t) % p
    })
}

#[test]
fn lens_linking_forms_follow_the_classical_formula() {
    for (p, q) in [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2), (7, 2), (7, 3)] {
        let k = lens_space(p, q).unwrap();
        let f = linking_form(&k, 1).unwrap();
        assert_eq!(f.orders(), vec![p]);
        assert_eq!(f.gram[0][0].order(), p, "L({p},{q}) diagonal must have exact order p");
        assert!(f.is_nondegenerate());
        assert!(f.is_symmetric());
        assert!(matches_lens_class(&f, p, q), "L({p},{q}): {:?}", f.gram);
        assert_eq!(linking_form_via_pairings(&k, 1).unwrap().gram, f.gram);
    }
}

#[test]
fn linking_form_separates_lens_spaces_of_order_five() {
    let a = linking_form(&lens_space(5, 1).unwrap(), 1).unwrap();
    let b = linking_form(&lens_space(5, 2).unwrap(), 1).unwrap();
    assert!(matches_lens_class(&a, 5, 1) && !matches_lens_class(&a, 5, 2));
    assert!(matches_lens_class(&b, 5, 2) && !matches_lens_class(&b, 5, 1));
    let lutz = linking_form(&fixtures::lens_5_2(), 1).unwrap();
    assert!(matches_lens_class(&lutz, 5, 2));
}

#[test]
fn lift_independence_across_seeds() {
    for k in [fixtures::rp3(), lens_space(3, 1).unwrap(), lens_space(4, 1).unwrap()] {
        let f = linking_form(&k, 1).unwrap();
        for seed in 0..5 {
            assert_eq!(linking_form_seeded(&k, 1, seed).unwrap().gram, f.gram, "{} seed {seed}", k.name());
        }
    }
}

#[test]
fn torsion_free_manifolds_have_empty_forms() {
    for k in [fixtures::sphere(3), fixtures::s3xs2(), fixtures::rp3_x_s2(1_000_000).unwrap()] {
        let deg = (k.dim() - 1) / 2;
        assert!(linking_form(&k, deg).unwrap().gram.is_empty(), "{}", k.name());
    }
}
