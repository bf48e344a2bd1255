//! Finite abstract simplicial complexes with a global vertex order.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{CoefficientRing, CohomologyBasis, Reduced};

pub type Complex = Arc<SimplicialComplex>;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Default cap on the total number of simplices of a product complex.
pub const DEFAULT_SIZE_BOUND: usize = 1_000_000;

pub struct SimplicialComplex {
    id: u64,
    name: String,
    vertex_count: usize,
    facets: Vec<Vec<u32>>,
    skeleton: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
    // faces[k][s * (k + 1) + j] is the index of simplex s of dimension k with vertex j removed.
    faces: Vec<Vec<u32>>,
    pub(crate) reduced: OnceLock<Arc<Reduced>>,
    pub(crate) bases: Mutex<HashMap<(usize, CoefficientRing), Arc<CohomologyBasis>>>,
    orientation: OnceLock<Orientation>,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("name", &self.name)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// Indexed by top-dimensional simplex; empty when not orientable.
    pub signs: Vec<i8>,
    pub orientable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudomanifoldReport {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

impl SimplicialComplex {
    /// Builds a complex from facets over vertices `0..vertex_count`.
    pub fn from_facets(name: impl Into<String>, vertex_count: usize, facets: Vec<Vec<u32>>) -> Result<Complex> {
        Self::build(name.into(), vertex_count, facets, usize::MAX)
    }

    fn build(name: String, vertex_count: usize, facets: Vec<Vec<u32>>, bound: usize) -> Result<Complex> {
        if facets.is_empty() {
            return Err(Error::Empty);
        }
        let mut facets: Vec<Vec<u32>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        for f in &facets {
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("repeated vertex in facet {f:?}")));
            }
            if f.iter().any(|&v| v as usize >= vertex_count) {
                return Err(Error::InvalidArgument(format!("vertex out of range in facet {f:?}")));
            }
        }
        facets.sort();
        facets.dedup();
        let dim = facets.iter().map(|f| f.len() - 1).max().unwrap();

        let mut sets: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); dim + 1];
        let mut total = 0usize;
        for f in &facets {
            let n = f.len();
            for mask in 1u32..(1u32 << n) {
                let s: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let k = s.len() - 1;
                if sets[k].insert(s) {
                    total += 1;
                    if total > bound {
                        return Err(Error::SizeBound { count: total, bound });
                    }
                }
            }
        }
        let skeleton: Vec<Vec<Vec<u32>>> = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<Vec<u32>> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let used = skeleton[0].len();
        if used != vertex_count {
            return Err(Error::InvalidArgument(format!("{} of {} vertices unused", vertex_count - used, vertex_count)));
        }
        let index: Vec<HashMap<Vec<u32>, u32>> = skeleton
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for k in 1..=dim {
            let mut t = Vec::with_capacity(skeleton[k].len() * (k + 1));
            for s in &skeleton[k] {
                for j in 0..=k {
                    let mut f = s.clone();
                    f.remove(j);
                    t.push(index[k - 1][&f]);
                }
            }
            faces.push(t);
        }
        Ok(Arc::new(SimplicialComplex {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name,
            vertex_count,
            facets,
            skeleton,
            index,
            faces,
            reduced: OnceLock::new(),
            bases: Mutex::new(HashMap::new()),
            orientation: OnceLock::new(),
        }))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.skeleton.len() - 1
    }

    /// Simplices of dimension `k` in lexicographic order; empty above the top dimension.
    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.skeleton.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.skeleton.iter().map(|l| l.len()).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.skeleton.iter().map(|l| l.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.skeleton
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        self.index.get(simplex.len().checked_sub(1)?)?.get(simplex).map(|&i| i as usize)
    }

    /// Index of the face of simplex `s` (dimension `k`) obtained by deleting vertex position `j`.
    #[inline]
    pub fn face(&self, k: usize, s: usize, j: usize) -> usize {
        self.faces[k][s * (k + 1) + j] as usize
    }

    /// Removes vertex positions given in strictly decreasing order.
    #[inline]
    pub fn face_removing(&self, k: usize, s: usize, desc_positions: &[u8]) -> usize {
        let mut k = k;
        let mut s = s;
        for &j in desc_positions {
            s = self.face(k, s, j as usize);
            k -= 1;
        }
        s
    }

    pub fn closed_pseudomanifold_check(&self) -> PseudomanifoldReport {
        let d = self.dim();
        let mut diagnostics = Vec::new();
        let top = self.count(d);
        let closure_of_top: usize = {
            let mut seen: Vec<HashSet<u32>> = vec![HashSet::new(); d + 1];
            seen[d].extend(0..top as u32);
            for k in (1..=d).rev() {
                let cur: Vec<u32> = seen[k].iter().copied().collect();
                for s in cur {
                    for j in 0..=k {
                        let f = self.face(k, s as usize, j) as u32;
                        seen[k - 1].insert(f);
                    }
                }
            }
            seen.iter().map(|s| s.len()).sum()
        };
        if closure_of_top != self.total_simplices() {
            diagnostics.push("not pure: some simplices lie in no top-dimensional facet".to_string());
        }
        if d == 0 {
            if top != 2 {
                diagnostics.push(format!("0-dimensional complex with {top} points"));
            }
            return PseudomanifoldReport { ok: diagnostics.is_empty(), diagnostics };
        }
        let mut incidence = vec![0usize; self.count(d - 1)];
        for s in 0..top {
            for j in 0..=d {
                incidence[self.face(d, s, j)] += 1;
            }
        }
        for (r, &c) in incidence.iter().enumerate() {
            if c != 2 {
                diagnostics.push(format!("ridge {:?} lies in {} facets", self.simplices(d - 1)[r], c));
            }
        }
        if !self.facet_graph_connected() {
            diagnostics.push("facet adjacency graph is disconnected".to_string());
        }
        PseudomanifoldReport { ok: diagnostics.is_empty(), diagnostics }
    }

    fn ridge_map(&self) -> Vec<Vec<(usize, usize)>> {
        let d = self.dim();
        let mut m = vec![Vec::new(); self.count(d - 1)];
        for s in 0..self.count(d) {
            for j in 0..=d {
                m[self.face(d, s, j)].push((s, j));
            }
        }
        m
    }

    fn facet_graph_connected(&self) -> bool {
        let d = self.dim();
        let top = self.count(d);
        if d == 0 {
            return top <= 1;
        }
        let ridges = self.ridge_map();
        let mut seen = vec![false; top];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut n = 1;
        while let Some(s) = queue.pop_front() {
            for j in 0..=d {
                for &(t, _) in &ridges[self.face(d, s, j)] {
                    if !seen[t] {
                        seen[t] = true;
                        n += 1;
                        queue.push_back(t);
                    }
                }
            }
        }
        n == top
    }

    /// True when the 1-skeleton is connected.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let n = p[x];
                p[x] = r;
                x = n;
            }
            r
        }
        for e in self.simplices(1) {
            let a = find(&mut parent, e[0] as usize);
            let b = find(&mut parent, e[1] as usize);
            parent[a] = b;
        }
        let r = find(&mut parent, 0);
        (0..self.vertex_count).all(|v| find(&mut parent, v) == r)
    }

    pub fn orient(&self) -> Result<&Orientation> {
        if let Some(o) = self.orientation.get() {
            return Ok(o);
        }
        let report = self.closed_pseudomanifold_check();
        if !report.ok {
            return Err(Error::NotClosedPseudomanifold(report.diagnostics.join("; ")));
        }
        let o = self.propagate_signs();
        Ok(self.orientation.get_or_init(|| o))
    }

    fn propagate_signs(&self) -> Orientation {
        let d = self.dim();
        let top = self.count(d);
        if d == 0 {
            return Orientation { signs: vec![1, -1], orientable: true };
        }
        let ridges = self.ridge_map();
        let mut signs = vec![0i8; top];
        signs[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for j in 0..=d {
                for &(t, jt) in &ridges[self.face(d, s, j)] {
                    if t == s {
                        continue;
                    }
                    let want = if (j + jt) % 2 == 0 { -signs[s] } else { signs[s] };
                    if signs[t] == 0 {
                        signs[t] = want;
                        queue.push_back(t);
                    } else if signs[t] != want {
                        return Orientation { signs: Vec::new(), orientable: false };
                    }
                }
            }
        }
        Orientation { signs, orientable: true }
    }

    /// Serializes in the facet-list format; re-parsing yields the same skeleton.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name: {}", self.name);
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Image of simplex `s` of dimension `k` under a vertex map, if nondegenerate.
    /// The map must be weakly order preserving on every simplex.
    pub fn map_simplex(&self, k: usize, s: usize, vmap: &[u32]) -> Option<Vec<u32>> {
        let img: Vec<u32> = self.simplices(k)[s].iter().map(|&v| vmap[v as usize]).collect();
        debug_assert!(img.windows(2).all(|w| w[0] <= w[1]), "vertex map not order preserving");
        if img.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some(img)
        }
    }
}

/// Parses the facet-list text format.
pub fn parse_complex(source: &str) -> Result<Complex> {
    let mut name = String::from("unnamed");
    let mut raw: Vec<Vec<u64>> = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name:") {
            name = rest.trim().to_string();
            continue;
        }
        let mut facet = Vec::new();
        for tok in line.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("not a nonnegative integer: {tok:?}"),
            })?;
            if facet.contains(&v) {
                return Err(Error::Parse { line: lineno + 1, msg: format!("repeated vertex {v}") });
            }
            facet.push(v);
        }
        raw.push(facet);
    }
    if raw.is_empty() {
        return Err(Error::Empty);
    }
    let labels: BTreeMap<u64, u32> = {
        let mut all: Vec<u64> = raw.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect()
    };
    let facets = raw.into_iter().map(|f| f.into_iter().map(|v| labels[&v]).collect()).collect();
    SimplicialComplex::from_facets(name, labels.len(), facets)
}

/// Staircase triangulation of |K| × |L| with lexicographic vertex order (K first).
pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> Complex {
    product_complex_bounded(k, l, usize::MAX).expect("unbounded product")
}

pub fn product_complex_bounded(k: &SimplicialComplex, l: &SimplicialComplex, bound: usize) -> Result<Complex> {
    let nl = l.vertex_count as u32;
    let mut facets = Vec::new();
    for s in k.facets() {
        for t in l.facets() {
            let (p, q) = (s.len() - 1, t.len() - 1);
            for path in lattice_paths(p, q) {
                let (mut a, mut b) = (0usize, 0usize);
                let mut simplex = vec![s[0] * nl + t[0]];
                for step in path {
                    if step {
                        b += 1;
                    } else {
                        a += 1;
                    }
                    simplex.push(s[a] * nl + t[b]);
                }
                facets.push(simplex);
            }
        }
    }
    let name = format!("{} x {}", k.name, l.name);
    SimplicialComplex::build(name, k.vertex_count * l.vertex_count, facets, bound)
}

/// All monotone paths from (0,0) to (p,q); `true` marks a step in the second coordinate.
fn lattice_paths(p: usize, q: usize) -> Vec<Vec<bool>> {
    let n = p + q;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(p: usize, q: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if p == 0 && q == 0 {
            out.push(cur.clone());
            return;
        }
        if p > 0 {
            cur.push(false);
            rec(p - 1, q, cur, out);
            cur.pop();
        }
        if q > 0 {
            cur.push(true);
            rec(p, q - 1, cur, out);
            cur.pop();
        }
    }
    rec(p, q, &mut cur, &mut out);
    debug_assert_eq!(out.len(), binomial(n, p));
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Vertex maps of the two projections of a product built by [`product_complex`].
pub fn projection_maps(k: &SimplicialComplex, l: &SimplicialComplex) -> (Vec<u32>, Vec<u32>) {
    let nl = l.vertex_count as u32;
    let n = k.vertex_count as u32 * nl;
    ((0..n).map(|v| v / nl).collect(), (0..n).map(|v| v % nl).collect())
}

/// Vertex map of the diagonal K → K × K.
pub fn diagonal_map(k: &SimplicialComplex) -> Vec<u32> {
    let n = k.vertex_count as u32;
    (0..n).map(|v| v * n + v).collect()
}

/// Boundary of the standard n-simplex, a triangulated (n−1)-sphere.
pub fn simplex_boundary(n: usize) -> Complex {
    let facets = (0..=n as u32).map(|skip| (0..=n as u32).filter(|&v| v != skip).collect()).collect();
    SimplicialComplex::from_facets(format!("boundary of simplex {n}"), n + 1, facets).unwrap()
}

pub fn full_simplex(n: usize) -> Complex {
    SimplicialComplex::from_facets(format!("simplex {n}"), n + 1, vec![(0..=n as u32).collect()]).unwrap()
}

pub fn point() -> Complex {
    SimplicialComplex::from_facets("point", 1, vec![vec![0]]).unwrap()
}
