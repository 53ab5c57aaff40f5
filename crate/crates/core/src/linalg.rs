//! Small exact integer linear algebra: column Hermite reduction, integer
//! solutions of `A x = b` and lattice bases of `ker A`.

use alloc::vec;
use alloc::vec::Vec;

/// Column-reduced form `A U = H` with `U` unimodular.
struct ColumnReduction {
    h: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    /// Row index of the pivot of each of the first `rank` columns.
    pivots: Vec<usize>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // Returns (g, s, t) with s*a + t*b = g >= 0.
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn column_reduce(a: &[Vec<i64>], ncols: usize) -> ColumnReduction {
    let m = a.len();
    let n = ncols;
    let mut h: Vec<Vec<i128>> = a
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1 } else { 0 }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    // Column operations, applied to both H and U.
    let combine = |mat: &mut Vec<Vec<i128>>, c1: usize, c2: usize, s: i128, t: i128, x: i128, y: i128| {
        // new c1 = s*c1 + t*c2 ; new c2 = x*c1 + y*c2
        for row in mat.iter_mut() {
            let (v1, v2) = (row[c1], row[c2]);
            row[c1] = s * v1 + t * v2;
            row[c2] = x * v1 + y * v2;
        }
    };
    for i in 0..m {
        if r == n {
            break;
        }
        for j in (r + 1)..n {
            let (p, q) = (h[i][r], h[i][j]);
            if q == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(p, q);
            let (x, y) = (-q / g, p / g);
            combine(&mut h, r, j, s, t, x, y);
            combine(&mut u, r, j, s, t, x, y);
        }
        if h[i][r] != 0 {
            if h[i][r] < 0 {
                for row in h.iter_mut() {
                    row[r] = -row[r];
                }
                for row in u.iter_mut() {
                    row[r] = -row[r];
                }
            }
            pivots.push(i);
            r += 1;
        }
    }
    ColumnReduction { h, u, pivots }
}

fn reduce_basis(basis: &mut [Vec<i128>]) {
    // Greedy pairwise size reduction in the L1 norm; keeps a lattice basis.
    let norm = |v: &[i128]| v.iter().map(|x| x.abs()).sum::<i128>();
    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < 64 {
        changed = false;
        rounds += 1;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1i128, -1] {
                    let cand: Vec<i128> = basis[i]
                        .iter()
                        .zip(&basis[j])
                        .map(|(a, b)| a - sign * b)
                        .collect();
                    if norm(&cand) < norm(&basis[i]) {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
    }
    for v in basis.iter_mut() {
        if let Some(first) = v.iter().find(|x| **x != 0) {
            if *first < 0 {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
}

fn narrow(v: &[i128]) -> Vec<i64> {
    v.iter()
        .map(|&x| i64::try_from(x).expect("integer overflow in lattice computation"))
        .collect()
}

/// Lattice basis of `{x in Z^ncols : A x = 0}`.
pub fn integer_kernel(a: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let red = column_reduce(a, ncols);
    let rank = red.pivots.len();
    let mut basis: Vec<Vec<i128>> = (rank..ncols)
        .map(|c| red.u.iter().map(|row| row[c]).collect())
        .collect();
    reduce_basis(&mut basis);
    basis.iter().map(|v| narrow(v)).collect()
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &[Vec<i64>], b: &[i64], ncols: usize) -> Option<Vec<i64>> {
    let red = column_reduce(a, ncols);
    let rank = red.pivots.len();
    let mut y = vec![0i128; ncols];
    for (k, &row) in red.pivots.iter().enumerate() {
        let mut rhs = b[row] as i128;
        for (j, yj) in y.iter().enumerate().take(k) {
            rhs -= red.h[row][j] * yj;
        }
        let p = red.h[row][k];
        if rhs % p != 0 {
            return None;
        }
        y[k] = rhs / p;
    }
    for (i, row) in red.h.iter().enumerate() {
        let lhs: i128 = row.iter().take(rank).zip(&y).map(|(h, y)| h * y).sum();
        if lhs != b[i] as i128 {
            return None;
        }
    }
    let x: Vec<i128> = red
        .u
        .iter()
        .map(|row| row.iter().zip(&y).map(|(u, y)| u * y).sum())
        .collect();
    Some(narrow(&x))
}

/// Rank over the rationals.
pub fn rank(a: &[Vec<i64>], ncols: usize) -> usize {
    column_reduce(a, ncols).pivots.len()
}

/// Matrix-vector product.
pub fn apply(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

/// Determinant of a small square integer matrix by fraction-free elimination.
pub fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_simple_system() {
        // x + y + z = 0, x - y = 0  ->  kernel spanned by (1, 1, -2).
        let a = vec![vec![1, 1, 1], vec![1, -1, 0]];
        let k = integer_kernel(&a, 3);
        assert_eq!(k, vec![vec![1, 1, -2]]);
        assert_eq!(rank(&a, 3), 2);
    }

    #[test]
    fn integer_solutions() {
        let a = vec![vec![2, 4]];
        assert!(solve_integer(&a, &[3], 2).is_none());
        let x = solve_integer(&a, &[6], 2).unwrap();
        assert_eq!(apply(&a, &x), vec![6]);
        // Overdetermined and inconsistent.
        let a = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert!(solve_integer(&a, &[1, 1, 3], 2).is_none());
        assert_eq!(solve_integer(&a, &[1, 1, 2], 2).unwrap(), vec![1, 1]);
    }

    #[test]
    fn empty_system() {
        let k = integer_kernel(&[], 2);
        assert_eq!(k.len(), 2);
        assert_eq!(solve_integer(&[], &[], 2).unwrap(), vec![0, 0]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            determinant(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]),
            -3
        );
    }
}
