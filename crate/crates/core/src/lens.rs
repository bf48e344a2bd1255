//! Triangulated lens spaces L(p, q) from a glued bipyramid.
//!
//! The solid bipyramid over an n-gon, n = p·k, has upper faces {N, eᵢ, eᵢ₊₁} and
//! lower faces {S, eᵢ, eᵢ₊₁}; L(p, q) is the quotient identifying each upper
//! face with a lower one by N ↦ S, eⱼ ↦ e_{j+qk}. The quotient is made simplicial
//! by barycentric subdivision and then shrunk by edge contractions that satisfy
//! the link condition.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::cohomology::basis;
use crate::linalg::CoefficientRing;
use crate::simplicial::{Complex, SimplicialComplex};

type Simplex = Vec<u32>;

/// A pure complex with a simplicial gluing map defined on a subcomplex.
struct Glued {
    facets: Vec<Simplex>,
    /// All simplices of the glued subcomplex.
    domain: BTreeSet<Simplex>,
    phi: BTreeMap<u32, u32>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn faces(s: &[u32]) -> Vec<Simplex> {
    let n = s.len();
    (1u32..1 << n).map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn bipyramid(p: u64, q: u64) -> Glued {
    let k = if p == 2 { 2 } else { 1 };
    let n = (p * k) as u32;
    let (north, south) = (n, n + 1);
    let e = |i: u32| i % n;
    let facets = (0..n)
        .map(|i| {
            let mut f = vec![e(i), e(i + 1), north, south];
            f.sort_unstable();
            f
        })
        .collect();
    let mut domain = BTreeSet::new();
    for i in 0..n {
        let mut f = vec![e(i), e(i + 1), north];
        f.sort_unstable();
        domain.extend(faces(&f));
    }
    let shift = (q * k) as u32;
    let mut phi: BTreeMap<u32, u32> = (0..n).map(|i| (i, e(i + shift))).collect();
    phi.insert(north, south);
    Glued { facets, domain, phi }
}

fn image(phi: &BTreeMap<u32, u32>, s: &[u32]) -> Simplex {
    let mut t: Simplex = s.iter().map(|v| phi[v]).collect();
    t.sort_unstable();
    t
}

fn subdivide(g: &Glued) -> Glued {
    let mut all: BTreeSet<Simplex> = BTreeSet::new();
    for f in &g.facets {
        all.extend(faces(f));
    }
    let ids: HashMap<&Simplex, u32> = all.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
    let flags = |f: &Simplex| -> Vec<Simplex> {
        permutations(f.len())
            .into_iter()
            .map(|perm| {
                let mut chain = Vec::with_capacity(f.len());
                let mut prefix: Simplex = Vec::new();
                for &i in &perm {
                    prefix.push(f[i]);
                    let mut s = prefix.clone();
                    s.sort_unstable();
                    chain.push(ids[&s]);
                }
                chain.sort_unstable();
                chain
            })
            .collect()
    };
    let facets: Vec<Simplex> = g.facets.iter().flat_map(flags).collect();
    let mut domain = BTreeSet::new();
    for s in &g.domain {
        for chain in flags(s) {
            domain.extend(faces(&chain));
        }
    }
    let phi = g.domain.iter().map(|s| (ids[s], ids[&image(&g.phi, s)])).collect();
    Glued { facets, domain, phi }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    parent[ra.max(rb)] = ra.min(rb);
}

/// Quotient facets, or None when the identification is not faithful on simplices.
fn quotient(g: &Glued) -> Option<Vec<Simplex>> {
    let nv = g.facets.iter().flatten().map(|&v| v as usize + 1).max().unwrap_or(0);
    let mut parent: Vec<usize> = (0..nv).collect();
    for (&a, &b) in &g.phi {
        union(&mut parent, a as usize, b as usize);
    }
    let mut all: BTreeSet<Simplex> = BTreeSet::new();
    for f in &g.facets {
        all.extend(faces(f));
    }
    let index: HashMap<&Simplex, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut sparent: Vec<usize> = (0..all.len()).collect();
    for s in &g.domain {
        let (a, b) = (index[s], index[&image(&g.phi, s)]);
        union(&mut sparent, a, b);
    }
    let classes = (0..all.len()).filter(|&i| find(&mut sparent, i) == i).count();
    let mut images: HashSet<Simplex> = HashSet::new();
    for s in &all {
        let mut t: Simplex = s.iter().map(|&v| find(&mut parent, v as usize) as u32).collect();
        t.sort_unstable();
        t.dedup();
        if t.len() != s.len() {
            return None;
        }
        images.insert(t);
    }
    if images.len() != classes {
        return None;
    }
    let mut facets: Vec<Simplex> = g
        .facets
        .iter()
        .map(|f| {
            let mut t: Simplex = f.iter().map(|&v| find(&mut parent, v as usize) as u32).collect();
            t.sort_unstable();
            t
        })
        .collect();
    facets.sort();
    facets.dedup();
    Some(facets)
}

fn compact(facets: &[Simplex]) -> (usize, Vec<Simplex>) {
    let verts: BTreeSet<u32> = facets.iter().flatten().copied().collect();
    let relabel: HashMap<u32, u32> = verts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let out = facets.iter().map(|f| f.iter().map(|v| relabel[v]).collect()).collect();
    (verts.len(), out)
}

/// Link faces are packed into one key, 24 bits per vertex.
fn closure_without<'a>(facets: impl Iterator<Item = &'a Simplex>, drop: &[u32]) -> HashSet<u128> {
    let mut out = HashSet::new();
    let mut rest = Vec::with_capacity(6);
    for f in facets {
        rest.clear();
        rest.extend(f.iter().copied().filter(|v| !drop.contains(v)));
        let n = rest.len();
        for mask in 1u32..1 << n {
            let mut key = 0u128;
            for (i, &v) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    key = key << 24 | (v as u128 + 1);
                }
            }
            out.insert(key);
        }
    }
    out
}

/// Contracts edges satisfying the link condition lk(a) ∩ lk(b) = lk(ab) until none remains.
/// Each pass scans the edges in lexicographic order, so the result is deterministic.
pub fn simplify(facets: Vec<Simplex>) -> Vec<Simplex> {
    assert!(facets.iter().all(|f| f.len() <= 5 && f.iter().all(|&v| v < (1 << 24) - 1)), "complex too large to simplify");
    let mut facets: Vec<Option<Simplex>> = facets.into_iter().map(Some).collect();
    let mut star: HashMap<u32, BTreeSet<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for &v in f.as_ref().unwrap() {
            star.entry(v).or_default().insert(i);
        }
    }
    let mut links: HashMap<u32, HashSet<u128>> = HashMap::new();
    loop {
        let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
        for f in facets.iter().flatten() {
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    edges.insert((f[i], f[j]));
                }
            }
        }
        let mut changed = false;
        for (a, b) in edges {
            let (Some(sa), Some(sb)) = (star.get(&a), star.get(&b)) else { continue };
            let shared: Vec<usize> = sa.intersection(sb).copied().collect();
            if shared.is_empty() {
                continue;
            }
            let lab = closure_without(shared.iter().map(|&i| facets[i].as_ref().unwrap()), &[a, b]);
            for v in [a, b] {
                if !links.contains_key(&v) {
                    let l = closure_without(star[&v].iter().map(|&i| facets[i].as_ref().unwrap()), &[v]);
                    links.insert(v, l);
                }
            }
            let (la, lb) = (&links[&a], &links[&b]);
            let (small, large) = if la.len() < lb.len() { (la, lb) } else { (lb, la) };
            if small.iter().filter(|t| large.contains(t)).count() != lab.len() {
                continue;
            }
            let mut touched: BTreeSet<u32> = BTreeSet::new();
            for &i in &shared {
                for v in facets[i].take().unwrap() {
                    star.get_mut(&v).unwrap().remove(&i);
                    touched.insert(v);
                }
            }
            for i in star.remove(&b).unwrap() {
                let f = facets[i].as_mut().unwrap();
                for v in f.iter_mut() {
                    if *v == b {
                        *v = a;
                    }
                    touched.insert(*v);
                }
                f.sort_unstable();
                star.get_mut(&a).unwrap().insert(i);
            }
            for v in touched {
                links.remove(&v);
            }
            links.remove(&b);
            changed = true;
        }
        if !changed {
            let mut out: Vec<Simplex> = facets.into_iter().flatten().collect();
            out.sort();
            return out;
        }
    }
}

/// Checks that `k` is a closed pseudomanifold with the integral cohomology of L(p, q).
pub fn has_lens_cohomology(k: &SimplicialComplex, p: u64) -> bool {
    let z = CoefficientRing::Integers;
    k.dim() == 3
        && k.closed_pseudomanifold_check().ok
        && basis(k, 0, z).free_rank == 1
        && basis(k, 1, z).is_empty()
        && basis(k, 2, z).free_rank == 0
        && basis(k, 2, z).torsion_invariants == vec![p]
        && basis(k, 3, z).free_rank == 1
        && basis(k, 3, z).torsion_invariants.is_empty()
}

fn check_parameters(p: u64, q: u64) -> Result<()> {
    if p < 2 || p > 64 {
        return Err(Error::InvalidArgument(format!("p = {p} must lie in 2..=64")));
    }
    if q == 0 || q >= p || gcd(p, q) != 1 {
        return Err(Error::InvalidArgument(format!("q = {q} must be a unit mod {p} in 1..{p}")));
    }
    Ok(())
}

/// L(p, q) before simplification: the first faithful barycentric subdivision of the glued bipyramid.
pub fn lens_space_unsimplified(p: u64, q: u64) -> Result<Complex> {
    check_parameters(p, q)?;
    let mut g = bipyramid(p, q);
    for _ in 0..3 {
        g = subdivide(&g);
        if let Some(facets) = quotient(&g) {
            let (n, facets) = compact(&facets);
            let k = SimplicialComplex::from_facets(format!("lens-{p}-{q}"), n, facets)?;
            if has_lens_cohomology(&k, p) {
                return Ok(k);
            }
        }
    }
    Err(Error::Precondition(format!("could not triangulate L({p},{q})")))
}

/// A triangulation of the lens space L(p, q).
pub fn lens_space(p: u64, q: u64) -> Result<Complex> {
    let raw = lens_space_unsimplified(p, q)?;
    let (n, facets) = compact(&simplify(raw.facets().to_vec()));
    let k = SimplicialComplex::from_facets(format!("lens-{p}-{q}"), n, facets)?;
    if !has_lens_cohomology(&k, p) {
        return Err(Error::Precondition(format!("simplified L({p},{q}) lost its cohomology")));
    }
    Ok(k)
}
