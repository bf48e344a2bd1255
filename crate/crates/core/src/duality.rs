//! Poincaré duality, the pairings ⟨x, y⟩ₙ, torsion linking forms, and Wu classes.

use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cochain::{cup, Cochain};
use crate::error::{Error, Result};
use crate::linalg::cohomology::{basis, class_of, solve_coboundary};
use crate::linalg::{modp, smith_normal_form, CoefficientRing, CohomologyClass, IntMatrix};
use crate::ops::{bockstein, cup_classes, integral_bockstein, sq, total_sq, zero_class};
use crate::qz::Qz;
use crate::simplicial::{diagonal_map, product_complex_bounded, projection_maps, Complex};

/// Integration against the signed fundamental chain.
#[derive(Clone, Debug)]
pub struct FundamentalData {
    pub complex: Complex,
    pub ring: CoefficientRing,
    /// Orientation sign of each top simplex (all +1 over Z/2).
    pub signs: Vec<i8>,
    pub top_generator: CohomologyClass,
}

impl FundamentalData {
    pub fn integrate_cochain(&self, z: &Cochain) -> i64 {
        assert_eq!(z.degree(), self.complex.dim(), "integrand must have top degree");
        let mut acc = 0i64;
        for (&v, &s) in z.values().iter().zip(&self.signs) {
            acc = self.ring.add(acc, self.ring.mul(v, s as i64));
        }
        acc
    }

    pub fn integrate(&self, x: &CohomologyClass) -> i64 {
        self.integrate_cochain(&x.cocycle)
    }
}

pub fn fundamental_data(k: &Complex, ring: CoefficientRing) -> Result<FundamentalData> {
    if !k.is_connected() {
        return Err(Error::Disconnected);
    }
    let o = k.orient()?;
    let d = k.dim();
    let signs = if o.orientable {
        o.signs.clone()
    } else if ring == CoefficientRing::Z2 {
        vec![1; k.count(d)]
    } else {
        return Err(Error::NonOrientable);
    };
    let top = Cochain::indicator(k.clone(), d, ring, 0).scale(signs[0] as i64);
    let top_generator = class_of(&top)?;
    Ok(FundamentalData { complex: k.clone(), ring, signs, top_generator })
}

/// Whether the homomorphism ⊕ Z/sᵢ → ⊕ Z/tⱼ with matrix rows `phi` is an isomorphism.
/// An order of 0 stands for Z.
fn is_isomorphism(phi: &[Vec<i64>], source: &[u64], target: &[u64]) -> bool {
    let size = |o: &[u64]| -> Option<BigInt> {
        if o.contains(&0) {
            None
        } else {
            Some(o.iter().map(|&x| BigInt::from(x)).product())
        }
    };
    if source.len() != target.len() && (source.contains(&0) || target.contains(&0)) {
        return false;
    }
    if size(source) != size(target) {
        return false;
    }
    let b = target.len();
    if b == 0 {
        return true;
    }
    let mut rows: Vec<Vec<i64>> = phi.to_vec();
    for (j, &t) in target.iter().enumerate() {
        if t != 0 {
            let mut r = vec![0; b];
            r[j] = t as i64;
            rows.push(r);
        }
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
    let diag = snf.diagonal();
    // a surjection between groups of equal finite order, or between free groups of equal rank
    diag.len() >= b && diag[..b].iter().all(|x| x.is_one())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct DegreeDuality {
    pub degree: usize,
    pub status: CheckStatus,
    /// ∫ eₐ ⌣ f_b over the generators of Hⁱ and H^{d−i}.
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub ring: CoefficientRing,
    pub degrees: Vec<DegreeDuality>,
    pub diagnostics: Vec<String>,
}

impl DualityReport {
    pub fn all_pass(&self) -> bool {
        self.degrees.iter().all(|d| d.status != CheckStatus::Fail)
    }

    pub fn skipped(&self) -> bool {
        self.degrees.is_empty() && !self.diagnostics.is_empty()
    }
}

fn pairing_matrix(fd: &FundamentalData, left: &[CohomologyClass], right: &[CohomologyClass]) -> Result<Vec<Vec<i64>>> {
    left.iter()
        .map(|e| right.iter().map(|f| Ok(fd.integrate_cochain(&cup(&e.cocycle, &f.cocycle)?))).collect())
        .collect()
}

/// Checks that cup product followed by integration is a perfect pairing in every degree.
pub fn duality_check(k: &Complex, ring: CoefficientRing) -> Result<DualityReport> {
    let fd = match fundamental_data(k, ring) {
        Ok(fd) => fd,
        Err(Error::NonOrientable) => {
            return Ok(DualityReport {
                ring,
                degrees: Vec::new(),
                diagnostics: vec![format!("skipped: {} is non-orientable, duality over {ring} does not apply", k.name())],
            })
        }
        Err(e) => return Err(e),
    };
    let d = k.dim();
    let mut degrees = Vec::new();
    for i in 0..=d {
        let hi = basis(k, i, ring);
        let hj = basis(k, d - i, ring);
        let e = hi.generators_of(k);
        let f = hj.generators_of(k);
        let matrix = pairing_matrix(&fd, &e, &f)?;
        let ok = match ring {
            CoefficientRing::Integers => {
                let (a, b) = (hi.free_rank, hj.free_rank);
                let free: Vec<Vec<i64>> = matrix[..a].iter().map(|r| r[..b].to_vec()).collect();
                is_isomorphism(&free, &vec![0; a], &vec![0; b])
            }
            CoefficientRing::ModM(m) => {
                let src: Vec<u64> = hi.generators.iter().map(|g| g.order.unwrap()).collect();
                let tgt: Vec<u64> = hj.generators.iter().map(|g| g.order.unwrap()).collect();
                let mut phi = Vec::new();
                let mut well_defined = true;
                for row in &matrix {
                    let mut r = Vec::new();
                    for (&p, &t) in row.iter().zip(&tgt) {
                        let step = (m / t) as i64;
                        well_defined &= p % step == 0;
                        r.push(p / step);
                    }
                    phi.push(r);
                }
                well_defined && is_isomorphism(&phi, &src, &tgt)
            }
        };
        degrees.push(DegreeDuality { degree: i, status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, matrix });
    }
    Ok(DualityReport { ring, degrees, diagnostics: Vec::new() })
}

fn middle_degree(k: &Complex) -> Result<usize> {
    let d = k.dim();
    if d % 4 != 1 {
        return Err(Error::WrongDimension { dim: d, msg: "expected dimension 4d+1".into() });
    }
    Ok((d - 1) / 2)
}

/// ∫ x ⌣ β y for classes over Z/ℓᴺ in complementary degrees (deg x + deg y + 1 = dim).
pub fn pairing(fd: &FundamentalData, x: &CohomologyClass, y: &CohomologyClass) -> Result<i64> {
    if x.ring() != fd.ring || y.ring() != fd.ring {
        return Err(Error::RingMismatch(x.ring().to_string(), fd.ring.to_string()));
    }
    if x.degree() + y.degree() + 1 != fd.complex.dim() {
        return Err(Error::InvalidArgument("degrees do not add up to dim − 1".into()));
    }
    let by = bockstein(y)?;
    Ok(fd.integrate_cochain(&cup(&x.cocycle, &by.cocycle)?))
}

/// ⟨x, y⟩ₙ = ∫ x ⌣ βₙ y on a (4d+1)-manifold, x and y in H^{2d}(−; Z/2ⁿ).
pub fn pairing_n(k: &Complex, n: u32, x: &CohomologyClass, y: &CohomologyClass) -> Result<i64> {
    let mid = middle_degree(k)?;
    if n == 0 || n > 31 {
        return Err(Error::InvalidArgument(format!("n = {n} out of range")));
    }
    let ring = CoefficientRing::ModM(1 << n);
    if x.degree() != mid || y.degree() != mid {
        return Err(Error::InvalidArgument(format!("classes must have degree {mid}")));
    }
    let fd = fundamental_data(k, ring)?;
    pairing(&fd, x, y)
}

/// Torsion of H^{k+1}(K; Z) on a (2k+1)-manifold with its Q/Z-valued linking form.
#[derive(Clone, Debug)]
pub struct TorsionForm {
    /// Cohomological degree of the torsion classes.
    pub degree: usize,
    pub generators: Vec<(CohomologyClass, u64)>,
    pub gram: Vec<Vec<Qz>>,
}

impl TorsionForm {
    pub fn orders(&self) -> Vec<u64> {
        self.generators.iter().map(|g| g.1).collect()
    }

    pub fn diagonal(&self) -> Vec<Qz> {
        (0..self.gram.len()).map(|i| self.gram[i][i]).collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.gram.len();
        (0..n).all(|i| (0..n).all(|j| self.gram[i][j].add(self.gram[j][i]).is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.gram.len();
        (0..n).all(|i| (0..n).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    /// Every value is killed by the order of the right-hand generator.
    pub fn respects_orders(&self) -> bool {
        self.gram.iter().all(|row| row.iter().zip(&self.generators).all(|(v, g)| v.mul_int(g.1 as i64).is_zero()))
    }

    pub fn is_alternating(&self) -> bool {
        self.diagonal().iter().all(|q| q.is_zero())
    }

    /// Whether a ↦ lk(a, −) is an isomorphism onto the Pontryagin dual.
    pub fn is_nondegenerate(&self) -> bool {
        let orders = self.orders();
        // gram value a/den with den | o maps to a·(o/den) ∈ Z/o
        let phi: Vec<Vec<i64>> = self
            .gram
            .iter()
            .map(|row| row.iter().zip(&orders).map(|(v, &o)| v.num() as i64 * (o / v.den()) as i64).collect())
            .collect();
        is_isomorphism(&phi, &orders, &orders)
    }

    /// Diagonal restricted to 2-primary parts.
    pub fn two_primary_diagonal(&self) -> Vec<Qz> {
        self.diagonal()
            .into_iter()
            .map(|q| {
                let odd = q.den() >> q.den().trailing_zeros();
                q.mul_int(odd as i64)
            })
            .collect()
    }
}

fn linking_setup(k: &Complex, degree: usize) -> Result<(FundamentalData, Vec<(CohomologyClass, u64)>)> {
    let d = k.dim();
    if d % 2 == 0 || 2 * degree + 1 != d {
        return Err(Error::WrongDimension { dim: d, msg: format!("linking form in degree {degree} needs dimension {}", 2 * degree + 1) });
    }
    let fd = fundamental_data(k, CoefficientRing::Integers)?;
    let h = basis(k, degree + 1, CoefficientRing::Integers);
    let gens = (h.free_rank..h.len()).map(|i| (h.generator(k, i), h.generators[i].order.unwrap())).collect();
    Ok((fd, gens))
}

/// c with δc = m·z for an integral torsion cocycle z of order m.
fn bounding_cochain(z: &Cochain, m: u64) -> Result<Cochain> {
    solve_coboundary(&z.scale(m as i64))?.ok_or_else(|| Error::Precondition("torsion cocycle does not bound".into()))
}

fn gram_from(fd: &FundamentalData, reps: &[(Cochain, u64)], bounds: &[Cochain]) -> Result<Vec<Vec<Qz>>> {
    reps.iter()
        .map(|(a, _)| {
            reps.iter()
                .zip(bounds)
                .map(|((_, m), c)| Ok(Qz::new(fd.integrate_cochain(&cup(a, c)?), *m)))
                .collect()
        })
        .collect()
}

/// Linking form on the torsion of H^{degree+1}(K; Z), dim K = 2·degree + 1:
/// lk(a, b) = (1/m)·∫ ã ⌣ c where δc = m·b̃.
pub fn linking_form(k: &Complex, degree: usize) -> Result<TorsionForm> {
    let (fd, gens) = linking_setup(k, degree)?;
    let reps: Vec<(Cochain, u64)> = gens.iter().map(|(g, m)| (g.cocycle.clone(), *m)).collect();
    let bounds = reps.iter().map(|(z, m)| bounding_cochain(z, *m)).collect::<Result<Vec<_>>>()?;
    let gram = gram_from(&fd, &reps, &bounds)?;
    Ok(TorsionForm { degree: degree + 1, generators: gens, gram })
}

/// As [`linking_form`], with representatives and bounding cochains perturbed at random.
pub fn linking_form_seeded(k: &Complex, degree: usize, seed: u64) -> Result<TorsionForm> {
    let (fd, gens) = linking_setup(k, degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = CoefficientRing::Integers;
    let mut reps = Vec::new();
    let mut bounds = Vec::new();
    for (g, m) in &gens {
        let r = Cochain::random(k.clone(), degree, z, &mut rng, 3);
        let rep = g.cocycle.add(&r.coboundary())?;
        let mut c = bounding_cochain(&rep, *m)?;
        if degree > 0 {
            let s = Cochain::random(k.clone(), degree - 1, z, &mut rng, 3);
            c = c.add(&s.coboundary())?;
        }
        bounds.push(c);
        reps.push((rep, *m));
    }
    let gram = gram_from(&fd, &reps, &bounds)?;
    Ok(TorsionForm { degree: degree + 1, generators: gens, gram })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, m as i128, (a % m) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    t.rem_euclid(m as i128) as u64
}

/// The linking form assembled prime by prime from the pairings ⟨x, y⟩_N over Z/ℓᴺ.
///
/// Each ℓ-primary part πa of a torsion generator is written as β̃x with x over
/// Z/ℓᴺ, and lk(πa, πb) = (−1)^{degree+1}·⟨x, y⟩_N / ℓᴺ.
pub fn linking_form_via_pairings(k: &Complex, degree: usize) -> Result<TorsionForm> {
    let (_, gens) = linking_setup(k, degree)?;
    let n = gens.len();
    let mut gram = vec![vec![Qz::ZERO; n]; n];
    let mut primes: Vec<u64> = gens.iter().flat_map(|g| prime_factors(g.1)).collect();
    primes.sort_unstable();
    primes.dedup();
    let sign = if degree % 2 == 0 { -1 } else { 1 };
    for l in primes {
        let big_n = gens.iter().map(|g| valuation(g.1, l)).max().unwrap();
        let modulus = l.pow(big_n);
        let ring = CoefficientRing::ModM(modulus);
        let fd = fundamental_data(k, ring)?;
        let mut xs = Vec::new();
        for (g, o) in &gens {
            let e = valuation(*o, l);
            let part = l.pow(e);
            let u = o / part;
            // idempotent projecting Z/o onto its ℓ-primary part
            let idem = (u * inverse_mod(u % part, part)) % o;
            let pa = g.cocycle.scale(idem as i64);
            let c = bounding_cochain(&pa, modulus)?;
            let x = class_of(&c.reduce_to(ring))?;
            xs.push(x);
        }
        for i in 0..n {
            for j in 0..n {
                let v = pairing(&fd, &xs[i], &xs[j])?;
                gram[i][j] = gram[i][j].add(Qz::new(sign * v, modulus));
            }
        }
    }
    Ok(TorsionForm { degree: degree + 1, generators: gens, gram })
}

/// Unique vᵢ with ∫ Sqⁱ(x) = ∫ vᵢ ⌣ x for all x in H^{dim−i}(K; Z/2).
pub fn wu_class(k: &Complex, i: usize) -> Result<CohomologyClass> {
    let z2 = CoefficientRing::Z2;
    let fd = fundamental_data(k, z2)?;
    let d = k.dim();
    if i > d {
        return Ok(zero_class(k, i, z2));
    }
    let hv = basis(k, i, z2);
    let hx = basis(k, d - i, z2);
    let f = hv.generators_of(k);
    let e = hx.generators_of(k);
    if f.len() != e.len() {
        return Err(Error::DualityFailure(i));
    }
    if f.is_empty() {
        return Ok(hv.zero(k));
    }
    let m = pairing_matrix(&fd, &f, &e)?;
    if modp::rank(&m, 2) != f.len() {
        return Err(Error::DualityFailure(i));
    }
    let s: Vec<i64> = e.iter().map(|x| sq(i, x).map(|c| fd.integrate(&c))).collect::<Result<_>>()?;
    let lambda = modp::solve_left(&m, &s, 2).ok_or(Error::DualityFailure(i))?;
    Ok(hv.combination(k, &lambda))
}

/// Wu classes v₀ … v_dim.
pub fn wu_classes(k: &Complex) -> Result<Vec<CohomologyClass>> {
    (0..=k.dim()).map(|i| wu_class(k, i)).collect()
}

/// Total Sq of a graded list of mod-2 classes indexed by degree.
fn total_sq_graded(v: &[CohomologyClass], k: &Complex) -> Result<Vec<CohomologyClass>> {
    let d = k.dim();
    let mut w: Vec<CohomologyClass> = (0..=d).map(|j| zero_class(k, j, CoefficientRing::Z2)).collect();
    for (i, vi) in v.iter().enumerate() {
        for t in 0..=i.min(d - i) {
            w[i + t] = w[i + t].add(&sq(t, vi)?);
        }
    }
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct StiefelWhitney {
    pub wu: Vec<CohomologyClass>,
    pub sw: Vec<CohomologyClass>,
    /// v₁ = w₁ and v₂ = w₂ + w₁², where the degrees exist.
    pub consistent: bool,
}

/// w = Sq(v), with the low-degree identities checked.
pub fn stiefel_whitney(k: &Complex) -> Result<StiefelWhitney> {
    let wu = wu_classes(k)?;
    let sw = total_sq_graded(&wu, k)?;
    let d = k.dim();
    let mut consistent = true;
    if d >= 1 {
        consistent &= wu[1] == sw[1];
    }
    if d >= 2 {
        let w1sq = cup_classes(&sw[1], &sw[1])?;
        consistent &= wu[2] == sw[2].add(&w1sq);
    }
    Ok(StiefelWhitney { wu, sw, consistent })
}

#[derive(Clone, Debug)]
pub struct WuReport {
    pub wu_classes: Vec<CohomologyClass>,
    pub sw_classes: Vec<CohomologyClass>,
    /// β̃(v_{2d}) in H^{2d+1}(K; Z).
    pub middle_obstruction: CohomologyClass,
    /// The linking form is alternating iff the obstruction vanishes.
    pub alternating_verdict: bool,
    pub form: TorsionForm,
    /// Whether the gram diagonal at the prime 2 agrees with the verdict.
    pub cross_check: bool,
}

/// Decides whether the linking form of a (4d+1)-manifold is alternating from v_{2d},
/// and compares with the linking form computed directly.
pub fn alternation_criterion(k: &Complex) -> Result<WuReport> {
    let mid = middle_degree(k)?;
    fundamental_data(k, CoefficientRing::Integers)?;
    let sw = stiefel_whitney(k)?;
    let obstruction = integral_bockstein(&sw.wu[mid])?;
    let alternating_verdict = obstruction.is_zero();
    let form = linking_form(k, mid)?;
    let direct = form.two_primary_diagonal().iter().all(|q| q.is_zero());
    Ok(WuReport {
        wu_classes: sw.wu,
        sw_classes: sw.sw,
        middle_obstruction: obstruction,
        alternating_verdict,
        cross_check: direct == alternating_verdict,
        form,
    })
}

#[derive(Clone, Debug)]
pub struct BockEntry {
    pub index: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

/// u ⌣ β(u) = Sq^{2d}(β(u)) for every u in the basis of H^{2d}(K; Z/2), dim K = 4d+1.
/// Both sides are reported by their integrals.
pub fn verify_bock_identity(k: &Complex) -> Result<Vec<BockEntry>> {
    let mid = middle_degree(k)?;
    let z2 = CoefficientRing::Z2;
    let fd = fundamental_data(k, z2)?;
    basis(k, mid, z2)
        .generators_of(k)
        .iter()
        .enumerate()
        .map(|(index, u)| {
            let bu = bockstein(u)?;
            let lhs = cup_classes(u, &bu)?;
            let rhs = sq(mid, &bu)?;
            Ok(BockEntry { index, lhs: fd.integrate(&lhs), rhs: fd.integrate(&rhs), pass: lhs == rhs })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct DiagonalClass {
    pub product: Complex,
    pub class: CohomologyClass,
    /// (degree, basis index of eᵢ); the dual partner fᵢ sits in degree dim − degree.
    pub terms: Vec<(usize, usize)>,
    /// Dual bases: dual[i] lists fⱼ for the generators of Hⁱ, with ∫ eₐ ⌣ f_b = δₐ_b.
    pub dual: Vec<Vec<CohomologyClass>>,
}

fn dual_bases(k: &Complex, fd: &FundamentalData) -> Result<Vec<Vec<CohomologyClass>>> {
    let z2 = CoefficientRing::Z2;
    let d = k.dim();
    (0..=d)
        .map(|i| {
            let e = basis(k, i, z2).generators_of(k);
            let hf = basis(k, d - i, z2);
            let f = hf.generators_of(k);
            if e.len() != f.len() {
                return Err(Error::DualityFailure(i));
            }
            if e.is_empty() {
                return Ok(Vec::new());
            }
            let m = pairing_matrix(fd, &e, &f)?;
            let inv = modp::inverse(&m, 2).ok_or(Error::DualityFailure(i))?;
            Ok((0..e.len())
                .map(|b| {
                    let coords: Vec<i64> = (0..f.len()).map(|c| inv[c][b]).collect();
                    hf.combination(k, &coords)
                })
                .collect())
        })
        .collect()
}

/// [Δ] = Σ pr₁*(eᵢ) ⌣ pr₂*(fᵢ) on K × K over Z/2.
pub fn diagonal_class(k: &Complex, bound: usize) -> Result<DiagonalClass> {
    let z2 = CoefficientRing::Z2;
    let fd = fundamental_data(k, z2)?;
    let d = k.dim();
    let dual = dual_bases(k, &fd)?;
    let p = product_complex_bounded(k, k, bound)?;
    let (pr1, pr2) = projection_maps(k, k);
    let mut sum = Cochain::zero(p.clone(), d, z2);
    let mut terms = Vec::new();
    for (i, duals) in dual.iter().enumerate() {
        let e = basis(k, i, z2).generators_of(k);
        for (a, (ea, fa)) in e.iter().zip(duals).enumerate() {
            sum = sum.add(&cup(&ea.cocycle.pullback(&p, &pr1), &fa.cocycle.pullback(&p, &pr2))?)?;
            terms.push((i, a));
        }
    }
    let class = class_of(&sum)?;
    Ok(DiagonalClass { product: p, class, terms, dual })
}

/// ∫ over K of the restriction of [Δ] along the diagonal, which equals χ(K) mod 2.
pub fn diagonal_restriction_integral(k: &Complex, diag: &DiagonalClass) -> Result<i64> {
    let fd = fundamental_data(k, CoefficientRing::Z2)?;
    let r = diag.class.cocycle.pullback(k, &diagonal_map(k));
    Ok(fd.integrate_cochain(&r))
}

#[derive(Clone, Debug)]
pub struct PushforwardReport {
    /// pr₁*(Sq[Δ]) by degree.
    pub pushforward: Vec<CohomologyClass>,
    /// Sq(v) by degree.
    pub wu_square: Vec<CohomologyClass>,
    pub pass: bool,
}

/// Compares pr₁*(Sq[Δ]) with Sq(v), pushing forward along pr₁ through a Künneth basis.
pub fn wu_pushforward_check(k: &Complex, bound: usize) -> Result<PushforwardReport> {
    let z2 = CoefficientRing::Z2;
    let fd = fundamental_data(k, z2)?;
    let d = k.dim();
    let diag = diagonal_class(k, bound)?;
    let p = &diag.product;
    let (pr1, pr2) = projection_maps(k, k);
    let gens: Vec<Vec<CohomologyClass>> = (0..=d).map(|i| basis(k, i, z2).generators_of(k)).collect();
    let squares = total_sq(&diag.class)?;
    let mut pushforward: Vec<CohomologyClass> = (0..=d).map(|t| zero_class(k, t, z2)).collect();
    for (t, s) in squares.iter().enumerate() {
        let n = d + t;
        // Künneth basis pr₁*a ⌣ pr₂*b with deg a + deg b = n
        if s.is_zero() {
            continue;
        }
        let mut labels = Vec::new();
        let mut rows = Vec::new();
        for i in n.saturating_sub(d)..=d.min(n) {
            for (ai, a) in gens[i].iter().enumerate() {
                for (bi, b) in gens[n - i].iter().enumerate() {
                    let c = cup(&a.cocycle.pullback(p, &pr1), &b.cocycle.pullback(p, &pr2))?;
                    rows.push(class_of(&c)?.coords);
                    labels.push((i, ai, bi));
                }
            }
        }
        let coef = modp::solve_left(&rows, &s.coords, 2)
            .ok_or_else(|| Error::Precondition(format!("Sq^{t}[Δ] not in the span of the Künneth basis")))?;
        let mut acc = zero_class(k, t, z2);
        for (&(i, ai, bi), &c) in labels.iter().zip(&coef) {
            if c % 2 != 0 && i == t && fd.integrate(&gens[n - i][bi]) % 2 != 0 {
                acc = acc.add(&gens[i][ai]);
            }
        }
        pushforward[t] = acc;
    }
    let wu = wu_classes(k)?;
    let wu_square = total_sq_graded(&wu, k)?;
    let pass = pushforward.iter().zip(&wu_square).all(|(a, b)| a == b);
    Ok(PushforwardReport { pushforward, wu_square, pass })
}
