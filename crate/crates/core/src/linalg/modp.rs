//! Dense linear algebra over a prime field Z/p.

fn inv(a: i64, p: i64) -> i64 {
    let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, p, a.rem_euclid(p));
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p)
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<i64>], p: i64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c].rem_euclid(p) != 0) else { continue };
        m.swap(r, pr);
        let iv = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x * iv).rem_euclid(p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<i64>], p: i64) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, p).len()
}

/// Inverse of a square matrix, or None if singular.
pub fn inverse(m: &[Vec<i64>], p: i64) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r: Vec<i64> = row.iter().map(|x| x.rem_euclid(p)).collect();
            r.extend((0..n).map(|j| i64::from(i == j)));
            r
        })
        .collect();
    let piv = rref(&mut a, p);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some x with x · m = b (row-vector convention), if one exists.
pub fn solve_left(m: &[Vec<i64>], b: &[i64], p: i64) -> Option<Vec<i64>> {
    let rows = m.len();
    let cols = b.len();
    // transpose: mᵀ xᵀ = bᵀ, augmented
    let mut a: Vec<Vec<i64>> = (0..cols)
        .map(|j| {
            let mut r: Vec<i64> = (0..rows).map(|i| m[i][j].rem_euclid(p)).collect();
            r.push(b[j].rem_euclid(p));
            r
        })
        .collect();
    let piv = rref(&mut a, p);
    if piv.last() == Some(&rows) {
        return None;
    }
    let mut x = vec![0i64; rows];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = a[r][rows];
    }
    Some(x)
}

pub fn in_row_span(m: &[Vec<i64>], b: &[i64], p: i64) -> bool {
    solve_left(m, b, p).is_some()
}
