//! The invariant suite run by `steenrod verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::{cup, cup_i, Cochain};
use crate::duality::{
    alternation_criterion, duality_check, linking_form, linking_form_seeded, linking_form_via_pairings, pairing_n,
    stiefel_whitney, verify_bock_identity,
};
use crate::error::Result;
use crate::linalg::cohomology::{basis, class_of};
use crate::linalg::CoefficientRing;
use crate::ops::{bockstein, sq};
use crate::simplicial::Complex;

pub use crate::duality::CheckStatus;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub complex: String,
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// "alternating" or "non-alternating" in dimensions 4d+1.
    pub verdict: Option<String>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check { name, status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail: detail.into() }
}

fn skipped(name: &'static str, detail: impl Into<String>) -> Check {
    Check { name, status: CheckStatus::Skipped, detail: detail.into() }
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// d(u ⌣ᵢ v) − (−1)ⁱ[du ⌣ᵢ v + (−1)^r u ⌣ᵢ dv] = (−1)^{i−1} u ⌣ᵢ₋₁ v − (−1)^{rs} v ⌣ᵢ₋₁ u.
pub fn homotopy_formula_holds(u: &Cochain, v: &Cochain, i: usize) -> Result<bool> {
    let (r, s) = (u.degree(), v.degree());
    let lhs = cup_i(u, v, i)?.coboundary();
    let corr = cup_i(&u.coboundary(), v, i)?.add(&cup_i(u, &v.coboundary(), i)?.scale(sign(r)))?;
    let lhs = lhs.sub(&corr.scale(sign(i)))?;
    let rhs = cup_i(u, v, i - 1)?.scale(sign(i + 1)).sub(&cup_i(v, u, i - 1)?.scale(sign(r * s)))?;
    Ok(lhs.values() == rhs.values())
}

/// Random integral cochain pairs (u, v) with i ≤ deg u + deg v and the result within the complex.
pub fn homotopy_trials(k: &Complex, i: usize, trials: usize, rng: &mut ChaCha8Rng) -> Result<(usize, usize)> {
    let d = k.dim();
    let pairs: Vec<(usize, usize)> =
        (0..=d).flat_map(|r| (0..=d).map(move |s| (r, s))).filter(|&(r, s)| r + s >= i && r + s + 1 <= d + i).collect();
    if pairs.is_empty() {
        return Ok((0, 0));
    }
    let z = CoefficientRing::Integers;
    let mut passed = 0;
    for _ in 0..trials {
        let (r, s) = pairs[rng.gen_range(0..pairs.len())];
        let u = Cochain::random(k.clone(), r, z, rng, 5);
        let v = Cochain::random(k.clone(), s, z, rng, 5);
        passed += usize::from(homotopy_formula_holds(&u, &v, i)?);
    }
    Ok((passed, trials))
}

/// Sq⁰ = id, Sq^r = squaring, Sqⁱ = 0 above the degree, Sq¹ = β, on every mod-2 basis class.
/// Returns the number of classes checked and a description of each failure.
pub fn steenrod_axioms(k: &Complex) -> Result<(usize, Vec<String>)> {
    let z2 = CoefficientRing::Z2;
    let d = k.dim();
    let mut failures = Vec::new();
    let mut count = 0;
    for r in 0..=d {
        for (a, x) in basis(k, r, z2).generators_of(k).iter().enumerate() {
            count += 1;
            if sq(0, x)? != *x {
                failures.push(format!("Sq^0 x != x for H^{r} generator {a}"));
            }
            if 2 * r <= d && sq(r, x)? != class_of(&cup(&x.cocycle, &x.cocycle)?)? {
                failures.push(format!("Sq^{r} x != x^2 for H^{r} generator {a}"));
            }
            for i in r + 1..=d.saturating_sub(r) {
                if !sq(i, x)?.is_zero() {
                    failures.push(format!("Sq^{i} x != 0 for H^{r} generator {a}"));
                }
            }
            // z ⌣_j z for j > r represents the vanishing squares of negative index
            for j in r + 1..=2 * r {
                if !class_of(&cup_i(&x.cocycle, &x.cocycle, j)?)?.is_zero() {
                    failures.push(format!("z cup_{j} z not a coboundary for H^{r} generator {a}"));
                }
            }
            if r < d && sq(1, x)? != bockstein(x)? {
                failures.push(format!("Sq^1 x != beta x for H^{r} generator {a}"));
            }
        }
    }
    Ok((count, failures))
}

/// ⟨x, y⟩ₙ + ⟨y, x⟩ₙ over all basis pairs of H^{2d}(K; Z/2ⁿ).
pub fn skew_symmetry(k: &Complex, n: u32) -> Result<(usize, usize)> {
    let mid = (k.dim() - 1) / 2;
    let m = 1i64 << n;
    let ring = CoefficientRing::ModM(m as u64);
    let gens = basis(k, mid, ring).generators_of(k);
    let mut pass = 0;
    let mut total = 0;
    for x in &gens {
        for y in &gens {
            total += 1;
            let s = pairing_n(k, n, x, y)? + pairing_n(k, n, y, x)?;
            pass += usize::from(s.rem_euclid(m) == 0);
        }
    }
    Ok((pass, total))
}

/// Runs every applicable check on `k`.
pub fn verify(k: &Complex, seed: u64, trials: usize) -> Result<VerifyReport> {
    let report = k.closed_pseudomanifold_check();
    if !report.ok {
        return Err(crate::Error::NotClosedPseudomanifold(report.diagnostics.join("; ")));
    }
    let d = k.dim();
    let orientable = k.orient()?.orientable;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut verdict = None;

    for i in 1..=3 {
        let name = ["cup_i_homotopy_1", "cup_i_homotopy_2", "cup_i_homotopy_3"][i - 1];
        let (pass, total) = homotopy_trials(k, i, trials, &mut rng)?;
        if total == 0 {
            checks.push(skipped(name, "no admissible degrees"));
        } else {
            checks.push(check(name, pass == total, format!("{pass}/{total} random pairs")));
        }
    }

    let (count, failures) = steenrod_axioms(k)?;
    checks.push(check("steenrod_axioms", failures.is_empty(), if failures.is_empty() { format!("{count} classes") } else { failures.join("; ") }));

    let dz2 = duality_check(k, CoefficientRing::Z2)?;
    checks.push(check("duality_z2", dz2.all_pass(), format!("{} degrees", dz2.degrees.len())));
    let dz = duality_check(k, CoefficientRing::Integers)?;
    if dz.skipped() {
        checks.push(skipped("duality_z", dz.diagnostics.join("; ")));
    } else {
        checks.push(check("duality_z", dz.all_pass(), format!("{} degrees", dz.degrees.len())));
    }

    let sw = stiefel_whitney(k)?;
    let w1_ok = d == 0 || sw.sw[1].is_zero() == orientable;
    checks.push(check("wu_consistency", sw.consistent && w1_ok, format!("v1 = w1, v2 = w2 + w1^2, w1 = 0 iff orientable: {}", sw.consistent && w1_ok)));

    if d % 2 == 1 && orientable {
        let deg = (d - 1) / 2;
        let f = linking_form(k, deg)?;
        let seeded = linking_form_seeded(k, deg, seed)?;
        let via = linking_form_via_pairings(k, deg)?;
        let sym_ok = if d % 4 == 1 { f.is_skew_symmetric() } else { f.is_symmetric() };
        checks.push(check(
            "linking_form",
            f.is_nondegenerate() && f.respects_orders() && sym_ok,
            format!("torsion orders {:?}", f.orders()),
        ));
        checks.push(check("linking_form_lift_independence", seeded.gram == f.gram, "random lifts reproduce the gram matrix"));
        checks.push(check("linking_form_prime_pairings", via.gram == f.gram, "per-prime pairings reproduce the gram matrix"));
    } else {
        let why = if d % 2 == 0 { "even dimension" } else { "non-orientable" };
        for name in ["linking_form", "linking_form_lift_independence", "linking_form_prime_pairings"] {
            checks.push(skipped(name, why));
        }
    }

    if d % 4 == 1 && orientable {
        for n in 1..=2 {
            let (pass, total) = skew_symmetry(k, n)?;
            let name = if n == 1 { "skew_symmetry_1" } else { "skew_symmetry_2" };
            checks.push(check(name, pass == total, format!("{pass}/{total} basis pairs")));
        }
        let bock = verify_bock_identity(k)?;
        let pass = bock.iter().filter(|e| e.pass).count();
        checks.push(check("bockstein_identity", pass == bock.len(), format!("{pass}/{} classes", bock.len())));
        let alt = alternation_criterion(k)?;
        verdict = Some(if alt.alternating_verdict { "alternating" } else { "non-alternating" }.to_string());
        checks.push(check(
            "alternation_criterion",
            alt.cross_check,
            format!("obstruction zero: {}, gram diagonal zero: {}", alt.alternating_verdict, alt.form.is_alternating()),
        ));
    } else {
        let why = if d % 4 != 1 { "dimension not 4d+1" } else { "non-orientable" };
        for name in ["skew_symmetry_1", "skew_symmetry_2", "bockstein_identity", "alternation_criterion"] {
            checks.push(skipped(name, why));
        }
    }

    Ok(VerifyReport {
        complex: k.name().to_string(),
        dim: d,
        f_vector: k.f_vector(),
        seed,
        checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sphere_passes_everything_applicable() {
        let r = verify(&fixtures::sphere(5), 7, 10).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        assert_eq!(r.verdict.as_deref(), Some("alternating"));
    }

    #[test]
    fn projective_plane_skips_integral_checks() {
        let r = verify(&fixtures::rp2(), 1, 10).unwrap();
        assert!(r.all_pass());
        let z = r.checks.iter().find(|c| c.name == "duality_z").unwrap();
        assert_eq!(z.status, CheckStatus::Skipped);
        assert!(r.verdict.is_none());
    }

    #[test]
    fn open_surface_rejected() {
        let k = crate::parse_complex("0 1 2\n0 2 3").unwrap();
        assert!(matches!(verify(&k, 0, 1), Err(crate::Error::NotClosedPseudomanifold(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify(&fixtures::rp3(), 3, 5).unwrap();
        let b = verify(&fixtures::rp3(), 3, 5).unwrap();
        assert_eq!(format!("{:?}", a.checks), format!("{:?}", b.checks));
    }

    #[test]
    fn axioms_on_small_manifolds() {
        for k in [fixtures::rp2(), fixtures::cp2(), fixtures::rp3(), fixtures::torus()] {
            let (n, failures) = steenrod_axioms(&k).unwrap();
            assert!(n > 0);
            assert!(failures.is_empty(), "{}: {failures:?}", k.name());
        }
    }
}
