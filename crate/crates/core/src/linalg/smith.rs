//! Smith normal form over Z with tracked unimodular transforms and their inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_dst += c * row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col_dst += c * col_src
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    fn neg_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    /// Rows (a, b) <- [[p, q], [r, s]] * rows (a, b)
    fn mix_rows(&mut self, a: usize, b: usize, m: &[BigInt; 4]) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = &m[0] * &x + &m[1] * &y;
            self.data[b * self.cols + j] = &m[2] * &x + &m[3] * &y;
        }
    }

    /// Cols (a, b) <- cols (a, b) * [[p, q], [r, s]]
    fn mix_cols(&mut self, a: usize, b: usize, m: &[BigInt; 4]) {
        for i in 0..self.rows {
            let x = self.data[i * self.cols + a].clone();
            let y = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = &x * &m[0] + &y * &m[2];
            self.data[i * self.cols + b] = &x * &m[1] + &y * &m[3];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `s * a * t == d` with `d` diagonal, nonnegative, and each entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub s: IntMatrix,
    pub s_inv: IntMatrix,
    pub t: IntMatrix,
    pub t_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    s: IntMatrix,
    s_inv: IntMatrix,
    t: IntMatrix,
    t_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.s.swap_rows(i, j);
        self.s_inv.swap_cols(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.t.swap_cols(i, j);
        self.t_inv.swap_rows(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row(dst, src, c);
        self.s.add_row(dst, src, c);
        self.s_inv.add_col(src, dst, &-c);
    }
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col(dst, src, c);
        self.t.add_col(dst, src, c);
        self.t_inv.add_row(src, dst, &-c);
    }
    fn neg_row(&mut self, i: usize) {
        self.a.neg_row(i);
        self.s.neg_row(i);
        self.s_inv.neg_col(i);
    }
    /// Replaces diagonal entries (i, i) = x and (j, j) = y by gcd and lcm.
    fn gcd_lcm(&mut self, i: usize, j: usize) {
        let x = self.a[(i, i)].clone();
        let y = self.a[(j, j)].clone();
        let e = x.extended_gcd(&y);
        let (g, p, q) = (e.gcd, e.x, e.y);
        let (xg, yg) = (&x / &g, &y / &g);
        let u = [p.clone(), q.clone(), -&yg, xg.clone()];
        let u_inv = [xg.clone(), -&q, yg.clone(), p.clone()];
        let v = [BigInt::one(), -(&q * &yg), BigInt::one(), &p * &xg];
        let v_inv = [&p * &xg, &q * &yg, -BigInt::one(), BigInt::one()];
        self.a.mix_rows(i, j, &u);
        self.s.mix_rows(i, j, &u);
        self.s_inv.mix_cols(i, j, &u_inv);
        self.a.mix_cols(i, j, &v);
        self.t.mix_cols(i, j, &v);
        self.t_inv.mix_rows(i, j, &v_inv);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        a: a.clone(),
        s: IntMatrix::identity(m),
        s_inv: IntMatrix::identity(m),
        t: IntMatrix::identity(n),
        t_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for p in 0..m.min(n) {
        loop {
            // smallest nonzero magnitude; ties broken by lowest row, then lowest column
            let mut best: Option<(usize, usize)> = None;
            for i in p..m {
                for j in p..n {
                    let v = &w.a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| v.abs() < w.a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            w.swap_rows(p, bi);
            w.swap_cols(p, bj);
            let piv = w.a[(p, p)].clone();
            let mut clean = true;
            for i in p + 1..m {
                if !w.a[(i, p)].is_zero() {
                    let q = w.a[(i, p)].div_floor(&piv);
                    w.add_row(i, p, &-q);
                    clean &= w.a[(i, p)].is_zero();
                }
            }
            for j in p + 1..n {
                if !w.a[(p, j)].is_zero() {
                    let q = w.a[(p, j)].div_floor(&piv);
                    w.add_col(j, p, &-q);
                    clean &= w.a[(p, j)].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if w.a[(p, p)].is_zero() {
            break;
        }
        if w.a[(p, p)].is_negative() {
            w.neg_row(p);
        }
        rank += 1;
    }
    for i in 0..rank {
        for j in i + 1..rank {
            if !w.a[(j, j)].is_multiple_of(&w.a[(i, i)]) {
                w.gcd_lcm(i, j);
            }
        }
    }
    let out = Smith { d: w.a, s: w.s, s_inv: w.s_inv, t: w.t, t_inv: w.t_inv, rank };
    debug_assert!(verify(a, &out), "Smith normal form postcondition failed");
    out
}

/// Checks every postcondition of a Smith decomposition by multiplication.
pub fn verify(a: &IntMatrix, f: &Smith) -> bool {
    let (m, n) = (a.rows, a.cols);
    if f.s.mul(a).mul(&f.t) != f.d {
        return false;
    }
    if f.s.mul(&f.s_inv) != IntMatrix::identity(m) || f.t.mul(&f.t_inv) != IntMatrix::identity(n) {
        return false;
    }
    for i in 0..m {
        for j in 0..n {
            let v = &f.d[(i, j)];
            if i != j && !v.is_zero() {
                return false;
            }
        }
    }
    let diag = f.diagonal();
    for (i, x) in diag.iter().enumerate() {
        if x.is_negative() || (i < f.rank) == x.is_zero() {
            return false;
        }
        if i + 1 < f.rank && !diag[i + 1].is_multiple_of(x) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn identity() {
        let a = IntMatrix::identity(2);
        let f = smith_normal_form(&a);
        assert_eq!(f.d, a);
        assert_eq!(f.rank, 2);
    }

    #[test]
    fn gcd_lcm_normalization() {
        let a = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.diagonal(), vec![int(1), int(6)]);
        assert!(verify(&a, &f));
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(2, 3);
        let f = smith_normal_form(&a);
        assert!(f.d.is_zero());
        assert_eq!(f.s, IntMatrix::identity(2));
        assert_eq!(f.t, IntMatrix::identity(3));
        assert_eq!(f.rank, 0);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let f = smith_normal_form(&IntMatrix::zeros(r, c));
            assert_eq!(f.rank, 0);
        }
    }

    #[test]
    fn textbook_example() {
        let a = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.diagonal(), vec![int(2), int(6), int(12)]);
    }

    fn det_abs(a: &IntMatrix) -> BigInt {
        // Bareiss-free: via Smith diagonal product, checked against cofactor expansion in the test below
        let f = smith_normal_form(a);
        f.diagonal().iter().product()
    }

    fn cofactor_det(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 1 {
            return a[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn postconditions_hold(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(-6i64..7, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let a = if rows == 0 { IntMatrix::zeros(0, cols) } else { IntMatrix::from_rows(&data) };
            let f = smith_normal_form(&a);
            prop_assert!(verify(&a, &f));
        }

        #[test]
        fn determinant_matches_cofactor_oracle(n in 1usize..5, seed in proptest::collection::vec(-5i64..6, 16)) {
            let data: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect();
            let a = IntMatrix::from_rows(&data);
            prop_assert_eq!(det_abs(&a), BigInt::from(cofactor_det(&data).abs()));
        }
    }
}
