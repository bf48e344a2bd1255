//! Reduction of the simplicial cochain complex by eliminating unit pivots.
//!
//! Each elimination pairs a k-cell `a` with a (k+1)-cell `b` whose coboundary
//! coefficient is ±1. The reduced complex is chain homotopy equivalent to the
//! original over Z, hence over every Z/m. The log of eliminations replays the
//! comparison maps `f` (original → reduced), `g` (reduced → original) and the
//! homotopy `h` with id − g∘f = δh + hδ.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::cohomology::Adapted;
use super::ring::CoefficientRing;
use super::smith::IntMatrix;
use crate::simplicial::SimplicialComplex;

struct Step {
    k: usize,
    a: u32,
    b: u32,
    eps: i64,
    alpha: Vec<(u32, i64)>,
    beta: Vec<(u32, i64)>,
}

pub(crate) struct Reduced {
    pub(crate) sizes: Vec<usize>,
    steps: Vec<Step>,
    pub(crate) survivors: Vec<Vec<u32>>,
    /// Reduced coboundary δ'_k as an N_{k+1} × N_k matrix, for k in 0..=dim.
    pub(crate) matrices: Vec<IntMatrix>,
    pub(crate) adapted: OnceLock<Adapted>,
}

struct Elim {
    cols: Vec<Vec<BTreeMap<u32, i64>>>,
    rows: Vec<Vec<BTreeMap<u32, i64>>>,
}

impl Elim {
    fn try_eliminate(&mut self, k: usize, a: u32, b: u32) -> Option<Step> {
        let col = &self.cols[k][a as usize];
        let eps = col[&b];
        debug_assert!(eps == 1 || eps == -1);
        let alpha: Vec<(u32, i64)> = col.iter().filter(|(&r, _)| r != b).map(|(&r, &v)| (r, v)).collect();
        let beta: Vec<(u32, i64)> =
            self.rows[k][b as usize].iter().filter(|(&c, _)| c != a).map(|(&c, &v)| (c, v)).collect();
        let mut updates = Vec::with_capacity(alpha.len() * beta.len());
        for &(r, ar) in &alpha {
            let row = &self.rows[k][r as usize];
            for &(c, bc) in &beta {
                let old = row.get(&c).copied().unwrap_or(0);
                let delta = eps.checked_mul(ar)?.checked_mul(bc)?;
                updates.push((r, c, old.checked_sub(delta)?));
            }
        }
        for (r, c, v) in updates {
            if v == 0 {
                self.rows[k][r as usize].remove(&c);
                self.cols[k][c as usize].remove(&r);
            } else {
                self.rows[k][r as usize].insert(c, v);
                self.cols[k][c as usize].insert(r, v);
            }
        }
        self.drop_col(k, a);
        self.drop_row(k, b);
        if k >= 1 {
            self.drop_row(k - 1, a);
        }
        if k + 1 < self.cols.len() {
            self.drop_col(k + 1, b);
        }
        Some(Step { k, a, b, eps, alpha, beta })
    }

    fn drop_col(&mut self, k: usize, c: u32) {
        let col = std::mem::take(&mut self.cols[k][c as usize]);
        for r in col.keys() {
            self.rows[k][*r as usize].remove(&c);
        }
    }

    fn drop_row(&mut self, k: usize, r: u32) {
        let row = std::mem::take(&mut self.rows[k][r as usize]);
        for c in row.keys() {
            self.cols[k][*c as usize].remove(&r);
        }
    }
}

impl Reduced {
    pub(crate) fn new(k: &SimplicialComplex) -> Reduced {
        let dim = k.dim();
        let sizes: Vec<usize> = (0..=dim).map(|d| k.count(d)).collect();
        let mut el = Elim {
            cols: (0..dim).map(|d| vec![BTreeMap::new(); sizes[d]]).collect(),
            rows: (0..dim).map(|d| vec![BTreeMap::new(); sizes[d + 1]]).collect(),
        };
        for d in 0..dim {
            for t in 0..sizes[d + 1] {
                for j in 0..=d + 1 {
                    let s = k.face(d + 1, t, j) as u32;
                    let v = if j % 2 == 0 { 1 } else { -1 };
                    el.cols[d][s as usize].insert(t as u32, v);
                    el.rows[d][t].insert(s, v);
                }
            }
        }
        let mut alive: Vec<Vec<bool>> = sizes.iter().map(|&n| vec![true; n]).collect();
        let mut steps = Vec::new();
        let mut thresholds: Vec<usize> = vec![0];
        thresholds.extend((0..24).map(|e| 1usize << e));
        thresholds.push(usize::MAX);
        for &thr in &thresholds {
            loop {
                let mut progress = false;
                for d in 0..dim {
                    for a in 0..sizes[d] {
                        if !alive[d][a] || el.cols[d][a].is_empty() {
                            continue;
                        }
                        let ca = el.cols[d][a].len() - 1;
                        let pick = el.cols[d][a].iter().find(|(&b, &v)| {
                            (v == 1 || v == -1) && ca.saturating_mul(el.rows[d][b as usize].len() - 1) <= thr
                        });
                        let Some((&b, _)) = pick else { continue };
                        if let Some(step) = el.try_eliminate(d, a as u32, b) {
                            alive[d][a] = false;
                            alive[d + 1][b as usize] = false;
                            steps.push(step);
                            progress = true;
                        }
                    }
                }
                if !progress {
                    break;
                }
            }
        }
        let survivors: Vec<Vec<u32>> =
            alive.iter().map(|v| v.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i as u32).collect()).collect();
        let pos: Vec<Vec<usize>> = alive
            .iter()
            .map(|v| {
                let mut n = 0;
                v.iter()
                    .map(|&x| {
                        if x {
                            n += 1;
                            n - 1
                        } else {
                            usize::MAX
                        }
                    })
                    .collect()
            })
            .collect();
        let mut matrices = Vec::with_capacity(dim + 1);
        for d in 0..=dim {
            let rows = if d < dim { survivors[d + 1].len() } else { 0 };
            let mut m = IntMatrix::zeros(rows, survivors[d].len());
            if d < dim {
                for (j, &a) in survivors[d].iter().enumerate() {
                    for (&r, &v) in &el.cols[d][a as usize] {
                        m[(pos[d + 1][r as usize], j)] = v.into();
                    }
                }
            }
            matrices.push(m);
        }
        Reduced { sizes, steps, survivors, matrices, adapted: OnceLock::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.sizes.len() - 1
    }

    pub(crate) fn reduced_size(&self, k: usize) -> usize {
        self.survivors.get(k).map_or(0, |s| s.len())
    }

    /// Original degree-k cochain → reduced coordinates.
    pub(crate) fn f(&self, k: usize, x: &[i64], ring: CoefficientRing) -> Vec<i64> {
        let mut x = x.to_vec();
        for st in &self.steps {
            if st.k + 1 == k {
                let yb = x[st.b as usize];
                if yb != 0 {
                    let t = ring.mul(st.eps, yb);
                    for &(r, ar) in &st.alpha {
                        x[r as usize] = ring.sub(x[r as usize], ring.mul(ar, t));
                    }
                    x[st.b as usize] = 0;
                }
            } else if st.k == k {
                x[st.a as usize] = 0;
            }
        }
        self.survivors[k].iter().map(|&s| x[s as usize]).collect()
    }

    /// Reduced coordinates → original degree-k cochain.
    pub(crate) fn g(&self, k: usize, xr: &[i64], ring: CoefficientRing) -> Vec<i64> {
        let mut x = vec![0i64; self.sizes[k]];
        for (&s, &v) in self.survivors[k].iter().zip(xr) {
            x[s as usize] = ring.reduce(v);
        }
        for st in self.steps.iter().rev() {
            if st.k == k {
                x[st.a as usize] = ring.neg(ring.mul(st.eps, dot(&st.beta, &x, ring)));
            }
        }
        x
    }

    /// The chain homotopy, degree k → k−1.
    pub(crate) fn h(&self, k: usize, y: &[i64], ring: CoefficientRing) -> Vec<i64> {
        assert!(k >= 1);
        let mut x = y.to_vec();
        let mut coeff = vec![0i64; self.steps.len()];
        for (i, st) in self.steps.iter().enumerate() {
            if st.k + 1 == k {
                let yb = x[st.b as usize];
                if yb != 0 {
                    let t = ring.mul(st.eps, yb);
                    coeff[i] = t;
                    for &(r, ar) in &st.alpha {
                        x[r as usize] = ring.sub(x[r as usize], ring.mul(ar, t));
                    }
                    x[st.b as usize] = 0;
                }
            } else if st.k == k {
                x[st.a as usize] = 0;
            }
        }
        let mut w = vec![0i64; self.sizes[k - 1]];
        for (i, st) in self.steps.iter().enumerate().rev() {
            if st.k + 1 == k {
                let v = ring.neg(ring.mul(st.eps, dot(&st.beta, &w, ring)));
                w[st.a as usize] = ring.add(v, coeff[i]);
            }
        }
        w
    }
}

fn dot(v: &[(u32, i64)], x: &[i64], ring: CoefficientRing) -> i64 {
    let mut s = 0i64;
    for &(c, bc) in v {
        let xc = x[c as usize];
        if xc != 0 {
            s = ring.add(s, ring.mul(bc, xc));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cohomology::coboundary_values;
    use crate::simplicial::{parse_complex, simplex_boundary};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const RP2: &str = include_str!("../../fixtures/rp2.txt");

    fn check_homotopy(k: &SimplicialComplex, ring: CoefficientRing) {
        let red = Reduced::new(k);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 0..=k.dim() {
            let x: Vec<i64> = (0..k.count(d)).map(|_| ring.reduce(rng.gen_range(-3..4))).collect();
            let gfx = red.g(d, &red.f(d, &x, ring), ring);
            let mut rhs = vec![0i64; x.len()];
            if d >= 1 {
                let hx = red.h(d, &x, ring);
                rhs = coboundary_values(k, d - 1, &hx, ring);
            }
            if d < k.dim() {
                let dx = coboundary_values(k, d, &x, ring);
                let hdx = red.h(d + 1, &dx, ring);
                for (r, v) in rhs.iter_mut().zip(hdx) {
                    *r = ring.add(*r, v);
                }
            }
            for i in 0..x.len() {
                assert_eq!(ring.sub(x[i], gfx[i]), rhs[i], "degree {d} cell {i}");
            }
        }
    }

    #[test]
    fn homotopy_identity_on_sphere() {
        check_homotopy(&simplex_boundary(4), CoefficientRing::Integers);
        check_homotopy(&simplex_boundary(4), CoefficientRing::ModM(4));
    }

    #[test]
    fn homotopy_identity_on_projective_plane() {
        let k = parse_complex(RP2).unwrap();
        check_homotopy(&k, CoefficientRing::Integers);
        check_homotopy(&k, CoefficientRing::ModM(2));
    }

    #[test]
    fn reduced_complex_is_small_and_exact() {
        let k = parse_complex(RP2).unwrap();
        let red = Reduced::new(&k);
        let sizes: Vec<usize> = (0..=2).map(|d| red.reduced_size(d)).collect();
        assert_eq!(sizes, vec![1, 1, 1]);
        assert_eq!(red.matrices[1][(0, 0)].magnitude(), &2u32.into());
    }

    #[test]
    fn f_and_g_are_chain_maps() {
        let k = parse_complex(RP2).unwrap();
        let red = Reduced::new(&k);
        let ring = CoefficientRing::Integers;
        let x: Vec<i64> = (0..k.count(1)).map(|i| (i as i64 % 5) - 2).collect();
        let lhs = red.f(2, &coboundary_values(&k, 1, &x, ring), ring);
        let fx = red.f(1, &x, ring);
        let m = &red.matrices[1];
        let rhs: Vec<i64> = (0..m.rows)
            .map(|i| (0..m.cols).map(|j| i64::try_from(&m[(i, j)]).unwrap() * fx[j]).sum())
            .collect();
        assert_eq!(lhs, rhs);
    }
}
