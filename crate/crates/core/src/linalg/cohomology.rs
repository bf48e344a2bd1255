use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::reduce::Reduced;
use super::ring::CoefficientRing;
use super::smith::{smith_normal_form, IntMatrix};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::simplicial::{Complex, SimplicialComplex};

/// δ applied to a degree-k value vector.
pub fn coboundary_values(k: &SimplicialComplex, d: usize, x: &[i64], ring: CoefficientRing) -> Vec<i64> {
    debug_assert_eq!(x.len(), k.count(d));
    (0..k.count(d + 1))
        .map(|t| {
            let mut s = 0i64;
            for j in 0..=d + 1 {
                let v = x[k.face(d + 1, t, j)];
                if v != 0 {
                    s = if j % 2 == 0 { ring.add(s, v) } else { ring.sub(s, v) };
                }
            }
            s
        })
        .collect()
}

pub fn coboundary(x: &Cochain) -> Cochain {
    let v = coboundary_values(x.complex(), x.degree(), x.values(), x.ring());
    Cochain::new(x.complex().clone(), x.degree() + 1, x.ring(), v)
}

/// Sparse matrix as (row, column, value) triples in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for &(i, j, v) in &self.entries {
            m[i][j] = v;
        }
        m
    }
}

pub fn coboundary_matrix(k: &SimplicialComplex, d: usize, ring: CoefficientRing) -> Result<SparseMatrix> {
    if d >= k.dim() {
        return Err(Error::DegreeOutOfRange { degree: d, dim: k.dim() });
    }
    let mut entries = Vec::new();
    for t in 0..k.count(d + 1) {
        let mut row: Vec<(usize, usize, i64)> = (0..=d + 1)
            .map(|j| (t, k.face(d + 1, t, j), ring.reduce(if j % 2 == 0 { 1 } else { -1 })))
            .filter(|e| e.2 != 0)
            .collect();
        row.sort_unstable();
        entries.extend(row);
    }
    Ok(SparseMatrix { rows: k.count(d + 1), cols: k.count(d), entries })
}

struct AdaptedDegree {
    /// Columns: r_k "outgoing" vectors followed by a kernel basis.
    basis: IntMatrix,
    inv: IntMatrix,
    rank_out: usize,
    out_d: Vec<BigInt>,
    rank_in: usize,
}

/// Integral bases of the reduced complex in which every coboundary is diagonal.
pub(crate) struct Adapted {
    degrees: Vec<AdaptedDegree>,
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(a.rows + b.rows, a.cols + b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows {
        for j in 0..b.cols {
            m[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
        }
    }
    m
}

impl Adapted {
    fn new(red: &Reduced) -> Adapted {
        let dim = red.dim();
        let snfs: Vec<_> = red.matrices.iter().map(smith_normal_form).collect();
        let ranks: Vec<usize> = snfs.iter().map(|s| s.rank).collect();
        // Smith forms of the induced maps from complements into the next kernel
        let mut pieces: Vec<Option<super::smith::Smith>> = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            if ranks[k] == 0 || k == dim {
                pieces.push(None);
                continue;
            }
            let tk = &snfs[k].t;
            let q = tk.submatrix(0..tk.rows, 0..ranks[k]);
            let x = snfs[k + 1].t_inv.mul(&red.matrices[k]).mul(&q);
            let r1 = ranks[k + 1];
            debug_assert!(x.submatrix(0..r1, 0..x.cols).is_zero());
            let m = x.submatrix(r1..x.rows, 0..x.cols);
            let f = smith_normal_form(&m);
            assert_eq!(f.rank, ranks[k], "coboundary restricted to a complement must be injective");
            pieces.push(Some(f));
        }
        let mut degrees = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let n = red.reduced_size(k);
            let rk = ranks[k];
            let (r, r_inv, out_d) = match &pieces[k] {
                Some(f) => (f.t.clone(), f.t_inv.clone(), f.diagonal()[..rk].to_vec()),
                None => (IntMatrix::identity(rk), IntMatrix::identity(rk), Vec::new()),
            };
            let (p, p_inv, rank_in) = match k.checked_sub(1).and_then(|j| pieces[j].as_ref()) {
                Some(f) => (f.s.clone(), f.s_inv.clone(), ranks[k - 1]),
                None => (IntMatrix::identity(n - rk), IntMatrix::identity(n - rk), 0),
            };
            let basis = snfs[k].t.mul(&block_diag(&r, &p_inv));
            let inv = block_diag(&r_inv, &p).mul(&snfs[k].t_inv);
            degrees.push(AdaptedDegree { basis, inv, rank_out: rk, out_d, rank_in });
        }
        Adapted { degrees }
    }
}

fn to_ring(x: &BigInt, ring: CoefficientRing) -> i64 {
    match ring {
        CoefficientRing::Integers => x.to_i64().expect("integer coefficient exceeds 64 bits"),
        CoefficientRing::ModM(m) => x.mod_floor(&BigInt::from(m)).to_i64().unwrap(),
    }
}

fn adapted(red: &Reduced) -> &Adapted {
    red.adapted.get_or_init(|| Adapted::new(red))
}

pub(crate) fn reduced(k: &SimplicialComplex) -> Arc<Reduced> {
    k.reduced.get_or_init(|| Arc::new(Reduced::new(k))).clone()
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    Free(usize),
    Mod { col: usize, order: u64 },
    Divided { col: usize, step: u64, order: u64 },
}

#[derive(Clone, Debug)]
pub struct Generator {
    /// None for an infinite cyclic summand.
    pub order: Option<u64>,
    pub representative: Vec<i64>,
}

/// A degree of cohomology decomposed into cyclic summands with representative cocycles.
///
/// Generators are ordered with infinite cyclic summands first, then finite
/// summands by nondecreasing order forming a divisibility chain.
pub struct CohomologyBasis {
    complex_id: u64,
    pub degree: usize,
    pub ring: CoefficientRing,
    pub free_rank: usize,
    pub torsion_invariants: Vec<u64>,
    pub generators: Vec<Generator>,
    reduced: Option<Arc<Reduced>>,
    raw: Vec<Rule>,
    // new finite coordinate j = Σ_i change[j][i] * raw finite coordinate i
    change: Vec<Vec<i64>>,
    free_count: usize,
}

impl std::fmt::Debug for CohomologyBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CohomologyBasis")
            .field("degree", &self.degree)
            .field("ring", &self.ring)
            .field("orders", &self.orders())
            .finish()
    }
}

impl CohomologyBasis {
    fn build(k: &SimplicialComplex, degree: usize, ring: CoefficientRing) -> CohomologyBasis {
        if degree > k.dim() {
            return CohomologyBasis {
                complex_id: k.id(),
                degree,
                ring,
                free_rank: 0,
                torsion_invariants: Vec::new(),
                generators: Vec::new(),
                reduced: None,
                raw: Vec::new(),
                change: Vec::new(),
                free_count: 0,
            };
        }
        let red = reduced(k);
        let ad = &adapted(&red).degrees[degree];
        let n = red.reduced_size(degree);
        let mut free = Vec::new();
        let mut finite: Vec<(Rule, u64, Vec<BigInt>)> = Vec::new();
        let col = |j: usize| ad.basis.col(j);
        for j in 0..n - ad.rank_out {
            let c = ad.rank_out + j;
            let d_in = (j < ad.rank_in).then(|| adapted(&red).degrees[degree - 1].out_d[j].clone());
            match (ring, d_in) {
                (CoefficientRing::Integers, None) => free.push(c),
                (CoefficientRing::Integers, Some(d)) => {
                    if !d.is_one() {
                        let o = d.to_u64().expect("torsion order exceeds 64 bits");
                        finite.push((Rule::Mod { col: c, order: o }, o, col(c)));
                    }
                }
                (CoefficientRing::ModM(m), None) => finite.push((Rule::Mod { col: c, order: m }, m, col(c))),
                (CoefficientRing::ModM(m), Some(d)) => {
                    let g = d.gcd(&BigInt::from(m)).to_u64().unwrap();
                    if g > 1 {
                        finite.push((Rule::Mod { col: c, order: g }, g, col(c)));
                    }
                }
            }
        }
        if let CoefficientRing::ModM(m) = ring {
            for (j, d) in ad.out_d.iter().enumerate() {
                let g = d.gcd(&BigInt::from(m)).to_u64().unwrap();
                if g > 1 {
                    let step = m / g;
                    let v: Vec<BigInt> = col(j).into_iter().map(|x| x * step).collect();
                    finite.push((Rule::Divided { col: j, step, order: g }, g, v));
                }
            }
        }
        // normalize the finite part to invariant factor form
        let orders: Vec<u64> = finite.iter().map(|f| f.1).collect();
        let mut diag = IntMatrix::zeros(orders.len(), orders.len());
        for (i, &o) in orders.iter().enumerate() {
            diag[(i, i)] = o.into();
        }
        let snf = smith_normal_form(&diag);
        let new_orders: Vec<u64> = snf.diagonal().iter().map(|x| x.to_u64().unwrap()).collect();
        let keep: Vec<usize> = (0..new_orders.len()).filter(|&j| new_orders[j] > 1).collect();

        let lift = |v: &[BigInt]| -> Vec<i64> {
            let xr: Vec<i64> = v.iter().map(|x| to_ring(x, ring)).collect();
            red.g(degree, &xr, ring)
        };
        let mut generators: Vec<Generator> =
            free.iter().map(|&c| Generator { order: None, representative: lift(&col(c)) }).collect();
        let mut change = Vec::new();
        for &j in &keep {
            let mut v = vec![BigInt::zero(); n];
            for (i, f) in finite.iter().enumerate() {
                let coef = &snf.s_inv[(i, j)];
                if !coef.is_zero() {
                    for (a, b) in v.iter_mut().zip(&f.2) {
                        *a += coef * b;
                    }
                }
            }
            let o = new_orders[j];
            change.push((0..finite.len()).map(|i| to_ring(&snf.s[(j, i)], CoefficientRing::ModM(o))).collect());
            generators.push(Generator { order: Some(o), representative: lift(&v) });
        }
        let (free_rank, torsion_invariants) = match ring {
            CoefficientRing::Integers => (free.len(), keep.iter().map(|&j| new_orders[j]).collect()),
            CoefficientRing::ModM(m) => {
                let all: Vec<u64> = keep.iter().map(|&j| new_orders[j]).collect();
                (all.iter().filter(|&&o| o == m).count(), all.into_iter().filter(|&o| o != m).collect())
            }
        };
        let mut raw: Vec<Rule> = free.iter().map(|&c| Rule::Free(c)).collect();
        raw.extend(finite.iter().map(|f| f.0));
        CohomologyBasis {
            complex_id: k.id(),
            degree,
            ring,
            free_rank,
            torsion_invariants,
            generators,
            reduced: Some(red),
            raw,
            change,
            free_count: free.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn orders(&self) -> Vec<Option<u64>> {
        self.generators.iter().map(|g| g.order).collect()
    }

    /// Dimension as a vector space; only meaningful over a prime field.
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    fn adapted_coords(&self, x: &[i64]) -> Vec<BigInt> {
        let red = self.reduced.as_ref().unwrap();
        let fx = red.f(self.degree, x, self.ring);
        let v: Vec<BigInt> = fx.iter().map(|&a| BigInt::from(a)).collect();
        adapted(red).degrees[self.degree].inv.mul_vec(&v)
    }

    /// Coordinates of a cocycle given by its values; fails if it is not a cocycle.
    pub(crate) fn coordinates_of(&self, k: &SimplicialComplex, x: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(k.id(), self.complex_id, "basis used with a different complex");
        if self.degree < k.dim() && coboundary_values(k, self.degree, x, self.ring).iter().any(|&v| v != 0) {
            return Err(Error::NotCocycle);
        }
        if self.reduced.is_none() {
            return Ok(Vec::new());
        }
        let c = self.adapted_coords(x);
        let mut raw_free = Vec::with_capacity(self.free_count);
        let mut raw_finite = Vec::new();
        for rule in &self.raw {
            match *rule {
                Rule::Free(col) => raw_free.push(c[col].to_i64().expect("coordinate exceeds 64 bits")),
                Rule::Mod { col, order } => raw_finite.push(to_ring(&c[col], CoefficientRing::ModM(order))),
                Rule::Divided { col, step, order } => {
                    let m = BigInt::from(step * order);
                    let v = c[col].mod_floor(&m);
                    let (q, r) = v.div_rem(&BigInt::from(step));
                    if !r.is_zero() {
                        return Err(Error::NotCocycle);
                    }
                    raw_finite.push(q.to_i64().unwrap());
                }
            }
        }
        let mut out = raw_free;
        for (row, g) in self.change.iter().zip(&self.generators[self.free_count..]) {
            let o = g.order.unwrap() as i64;
            let mut s = 0i64;
            for (a, b) in row.iter().zip(&raw_finite) {
                s = (s + (*a as i128 * *b as i128).rem_euclid(o as i128) as i64) % o;
            }
            out.push(s);
        }
        Ok(out)
    }

    pub fn class_of(self: &Arc<Self>, z: &Cochain) -> Result<CohomologyClass> {
        if z.degree() != self.degree {
            return Err(Error::InvalidArgument(format!("degree {} cochain for degree {} basis", z.degree(), self.degree)));
        }
        if z.ring() != self.ring {
            return Err(Error::RingMismatch(z.ring().to_string(), self.ring.to_string()));
        }
        let coords = self.coordinates_of(z.complex(), z.values())?;
        Ok(CohomologyClass { cocycle: z.clone(), coords, basis: self.clone() })
    }

    pub fn generator(self: &Arc<Self>, k: &Complex, i: usize) -> CohomologyClass {
        let z = Cochain::new(k.clone(), self.degree, self.ring, self.generators[i].representative.clone());
        let mut coords = vec![0; self.len()];
        coords[i] = 1;
        debug_assert_eq!(self.coordinates_of(k, z.values()).unwrap(), coords);
        CohomologyClass { cocycle: z, coords, basis: self.clone() }
    }

    pub fn generators_of(self: &Arc<Self>, k: &Complex) -> Vec<CohomologyClass> {
        (0..self.len()).map(|i| self.generator(k, i)).collect()
    }

    pub fn zero(self: &Arc<Self>, k: &Complex) -> CohomologyClass {
        CohomologyClass {
            cocycle: Cochain::zero(k.clone(), self.degree, self.ring),
            coords: vec![0; self.len()],
            basis: self.clone(),
        }
    }

    /// Class with the given coordinates.
    pub fn combination(self: &Arc<Self>, k: &Complex, coords: &[i64]) -> CohomologyClass {
        let mut z = Cochain::zero(k.clone(), self.degree, self.ring);
        for (g, &c) in self.generators.iter().zip(coords) {
            if c != 0 {
                z = z.add_scaled(&g.representative, c);
            }
        }
        let coords = self.normalize(coords);
        CohomologyClass { cocycle: z, coords, basis: self.clone() }
    }

    fn normalize(&self, coords: &[i64]) -> Vec<i64> {
        coords.iter().zip(&self.generators).map(|(&c, g)| g.order.map_or(c, |o| c.rem_euclid(o as i64))).collect()
    }

    /// A cochain c with δc = z when z is a coboundary.
    pub(crate) fn solve_values(&self, k: &SimplicialComplex, z: &[i64]) -> Result<Option<Vec<i64>>> {
        let coords = self.coordinates_of(k, z)?;
        let ring = self.ring;
        if coords.iter().any(|&c| c != 0) {
            return Ok(None);
        }
        let d = self.degree;
        if d == 0 || self.reduced.is_none() {
            return Ok(if z.iter().all(|&v| v == 0) { Some(vec![0; k.count(d.saturating_sub(1))]) } else { None });
        }
        let red = self.reduced.as_ref().unwrap();
        let ad = adapted(red);
        let here = &ad.degrees[d];
        let prev = &ad.degrees[d - 1];
        let c = self.adapted_coords(z);
        let mut t = vec![BigInt::zero(); red.reduced_size(d - 1)];
        for j in 0..here.rank_in {
            let cj = &c[here.rank_out + j];
            let dj = &prev.out_d[j];
            t[j] = match ring {
                CoefficientRing::Integers => {
                    let (q, r) = cj.div_rem(dj);
                    assert!(r.is_zero(), "class zero but coordinate not divisible");
                    q
                }
                CoefficientRing::ModM(m) => {
                    let m = BigInt::from(m);
                    let g = dj.gcd(&m);
                    let cj = cj.mod_floor(&m);
                    assert!((&cj % &g).is_zero());
                    let mg = &m / &g;
                    if mg.is_one() {
                        BigInt::zero()
                    } else {
                        let inv = (dj / &g).modpow(&(totient(&mg) - 1u32), &mg);
                        ((&cj / &g) * inv).mod_floor(&mg)
                    }
                }
            };
        }
        let pre_red: Vec<i64> = prev.basis.mul_vec(&t).iter().map(|x| to_ring(x, ring)).collect();
        let mut pre = red.g(d - 1, &pre_red, ring);
        let hz = red.h(d, z, ring);
        for (a, b) in pre.iter_mut().zip(hz) {
            *a = ring.add(*a, b);
        }
        let check = coboundary_values(k, d - 1, &pre, ring);
        assert!(check.iter().zip(z).all(|(a, b)| ring.reduce(*a) == ring.reduce(*b)), "coboundary solve failed");
        Ok(Some(pre))
    }
}

fn totient(n: &BigInt) -> BigInt {
    let mut n = n.clone();
    let mut result = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            while (&n % &p).is_zero() {
                n /= &p;
            }
            result -= &result / &p;
        }
        p += 1;
    }
    if n > BigInt::one() {
        result -= &result / &n;
    }
    result
}

/// Memoized cohomology of `k` in degree `degree` (any degree; empty above the dimension).
pub(crate) fn basis(k: &SimplicialComplex, degree: usize, ring: CoefficientRing) -> Arc<CohomologyBasis> {
    if let Some(b) = k.bases.lock().unwrap().get(&(degree, ring)) {
        return b.clone();
    }
    let b = Arc::new(CohomologyBasis::build(k, degree, ring));
    k.bases.lock().unwrap().entry((degree, ring)).or_insert(b).clone()
}

pub fn cohomology(k: &SimplicialComplex, degree: usize, ring: CoefficientRing) -> Result<Arc<CohomologyBasis>> {
    if degree > k.dim() {
        return Err(Error::DegreeOutOfRange { degree, dim: k.dim() });
    }
    Ok(basis(k, degree, ring))
}

/// Generators of the torsion subgroup of H^degree(K; Z) with their orders.
pub fn torsion_generators(k: &Complex, degree: usize) -> Result<Vec<(CohomologyClass, u64)>> {
    let b = cohomology(k, degree, CoefficientRing::Integers)?;
    Ok((b.free_rank..b.len()).map(|i| (b.generator(k, i), b.generators[i].order.unwrap())).collect())
}

/// A cocycle together with its coordinates in the canonical basis of its degree.
#[derive(Clone)]
pub struct CohomologyClass {
    pub cocycle: Cochain,
    pub coords: Vec<i64>,
    basis: Arc<CohomologyBasis>,
}

impl std::fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "H^{}({}) {:?}", self.degree(), self.ring(), self.coords)
    }
}

impl PartialEq for CohomologyClass {
    fn eq(&self, other: &Self) -> bool {
        self.basis.complex_id == other.basis.complex_id
            && self.degree() == other.degree()
            && self.ring() == other.ring()
            && self.coords == other.coords
    }
}

impl CohomologyClass {
    pub fn degree(&self) -> usize {
        self.cocycle.degree()
    }

    pub fn ring(&self) -> CoefficientRing {
        self.cocycle.ring()
    }

    pub fn complex(&self) -> &Complex {
        self.cocycle.complex()
    }

    pub fn basis(&self) -> &Arc<CohomologyBasis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &CohomologyClass) -> CohomologyClass {
        assert_eq!(self.degree(), other.degree());
        let z = self.cocycle.add(&other.cocycle).expect("incompatible classes");
        let coords: Vec<i64> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        CohomologyClass { cocycle: z, coords: self.basis.normalize(&coords), basis: self.basis.clone() }
    }

    pub fn scale(&self, c: i64) -> CohomologyClass {
        let coords: Vec<i64> = self.coords.iter().map(|a| a * c).collect();
        CohomologyClass { cocycle: self.cocycle.scale(c), coords: self.basis.normalize(&coords), basis: self.basis.clone() }
    }

    /// The same cocycle with coefficients reduced into Z/m.
    pub fn reduce_mod(&self, m: u64) -> CohomologyClass {
        class_of(&self.cocycle.reduce_to(CoefficientRing::ModM(m))).expect("reduction of a cocycle is a cocycle")
    }
}

/// Class of a cocycle in the canonical basis of its degree.
pub fn class_of(z: &Cochain) -> Result<CohomologyClass> {
    basis(z.complex(), z.degree(), z.ring()).class_of(z)
}

/// Some c with δc = z, or None if z is not a coboundary.
pub fn solve_coboundary(z: &Cochain) -> Result<Option<Cochain>> {
    let b = basis(z.complex(), z.degree(), z.ring());
    Ok(b.solve_values(z.complex(), z.values())?
        .map(|v| Cochain::new(z.complex().clone(), z.degree() - 1, z.ring(), v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{parse_complex, product_complex, simplex_boundary};

    const RP2: &str = include_str!("../../fixtures/rp2.txt");
    const RP3: &str = include_str!("../../fixtures/rp3.txt");

    fn circle() -> Complex {
        parse_complex("0 1\n1 2\n0 2").unwrap()
    }

    #[test]
    fn circle_coboundary_matrix() {
        let m = coboundary_matrix(&circle(), 0, CoefficientRing::Integers).unwrap().to_dense();
        assert_eq!(m.len(), 3);
        for row in &m {
            assert_eq!(row.iter().sum::<i64>(), 0);
        }
        assert!(coboundary_matrix(&circle(), 1, CoefficientRing::Integers).is_err());
    }

    #[test]
    fn tetrahedron_coboundary_rank_mod_two() {
        let k = simplex_boundary(3);
        let m = coboundary_matrix(&k, 1, CoefficientRing::ModM(2)).unwrap().to_dense();
        assert_eq!((m.len(), m[0].len()), (4, 6));
        assert_eq!(super::super::modp::rank(&m, 2), 3);
    }

    #[test]
    fn projective_plane_groups() {
        let k = parse_complex(RP2).unwrap();
        let z2: Vec<usize> = (0..=2).map(|d| cohomology(&k, d, CoefficientRing::Z2).unwrap().dimension()).collect();
        assert_eq!(z2, vec![1, 1, 1]);
        let h1 = cohomology(&k, 1, CoefficientRing::Integers).unwrap();
        assert_eq!((h1.free_rank, h1.torsion_invariants.clone()), (0, vec![]));
        let h2 = cohomology(&k, 2, CoefficientRing::Integers).unwrap();
        assert_eq!((h2.free_rank, h2.torsion_invariants.clone()), (0, vec![2]));
        let h2_4 = cohomology(&k, 2, CoefficientRing::ModM(4)).unwrap();
        assert_eq!(h2_4.orders(), vec![Some(2)]);
        let h1_4 = cohomology(&k, 1, CoefficientRing::ModM(4)).unwrap();
        assert_eq!(h1_4.orders(), vec![Some(2)]);
        let h1_3 = cohomology(&k, 1, CoefficientRing::ModM(3)).unwrap();
        assert!(h1_3.is_empty());
    }

    #[test]
    fn sphere_top_class() {
        let k = simplex_boundary(3);
        let h = cohomology(&k, 2, CoefficientRing::Integers).unwrap();
        assert_eq!((h.free_rank, h.torsion_invariants.len()), (1, 0));
        assert!(cohomology(&k, 3, CoefficientRing::Integers).is_err());
    }

    #[test]
    fn rp3_torsion() {
        let k = parse_complex(RP3).unwrap();
        let t = torsion_generators(&k, 2).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].1, 2);
        assert!(torsion_generators(&simplex_boundary(4), 2).unwrap().is_empty());
    }

    #[test]
    fn torus_cohomology() {
        let t = product_complex(&circle(), &circle());
        let r: Vec<usize> = (0..=2).map(|d| cohomology(&t, d, CoefficientRing::Integers).unwrap().free_rank).collect();
        assert_eq!(r, vec![1, 2, 1]);
    }

    #[test]
    fn generators_map_to_unit_vectors() {
        let k = parse_complex(RP3).unwrap();
        for ring in [CoefficientRing::Integers, CoefficientRing::ModM(2), CoefficientRing::ModM(4), CoefficientRing::ModM(6)] {
            for d in 0..=3 {
                let b = cohomology(&k, d, ring).unwrap();
                for (i, g) in b.generators.iter().enumerate() {
                    let c = b.coordinates_of(&k, &g.representative).unwrap();
                    let mut e = vec![0; b.len()];
                    e[i] = 1;
                    assert_eq!(c, e, "ring {ring} degree {d}");
                }
            }
        }
    }

    #[test]
    fn composite_modulus_gives_divisibility_chain() {
        let k = parse_complex(RP3).unwrap();
        let b = cohomology(&k, 1, CoefficientRing::ModM(6)).unwrap();
        assert_eq!(b.orders(), vec![Some(2)]);
        let b = cohomology(&k, 0, CoefficientRing::ModM(6)).unwrap();
        assert_eq!((b.free_rank, b.torsion_invariants.clone()), (1, vec![]));
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let k = circle();
        let b = cohomology(&k, 0, CoefficientRing::Integers).unwrap();
        assert_eq!(b.coordinates_of(&k, &[1, 0, 0]), Err(Error::NotCocycle));
    }

    #[test]
    fn coboundaries_are_solved() {
        let k = parse_complex(RP3).unwrap();
        for ring in [CoefficientRing::Integers, CoefficientRing::ModM(4)] {
            let x = Cochain::new(k.clone(), 1, ring, (0..k.count(1) as i64).map(|i| i * 7 % 5 - 2).collect());
            let z = coboundary(&x);
            let c = solve_coboundary(&z).unwrap().unwrap();
            assert_eq!(coboundary(&c).values(), z.values());
        }
        // the order-2 generator is not a coboundary, twice it is
        let (g, _) = torsion_generators(&k, 2).unwrap().remove(0);
        assert!(solve_coboundary(&g.cocycle).unwrap().is_none());
        assert!(solve_coboundary(&g.cocycle.scale(2)).unwrap().is_some());
    }
}
