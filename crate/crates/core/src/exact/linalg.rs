//! Determinants over arbitrary rings and Gaussian elimination over Q.

use std::collections::HashMap;

use num_complex::Complex64;

use super::poly::Poly;
use super::ring::{Q, Ring};

pub type Matrix<R> = Vec<Vec<R>>;

/// Determinant by expansion over column subsets (division-free, so it works
/// over any commutative ring). Cost is `O(2^n · n)` ring operations.
pub fn det<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    assert!(n <= 24, "determinant too large for subset expansion");
    // dp[mask] = signed sum over assignments of the first popcount(mask) rows
    let mut dp: HashMap<u32, R> = HashMap::new();
    dp.insert(0, R::one());
    for row in 0..n {
        let mut next: HashMap<u32, R> = HashMap::new();
        for (mask, val) in &dp {
            if val.is_zero() {
                continue;
            }
            for col in 0..n {
                if mask & (1 << col) != 0 || m[row][col].is_zero() {
                    continue;
                }
                // sign: number of already used columns to the right of col
                let inv = (mask >> (col + 1)).count_ones();
                let mut term = val.mul(&m[row][col]);
                if inv % 2 == 1 {
                    term = term.neg();
                }
                let key = mask | (1 << col);
                match next.get_mut(&key) {
                    Some(x) => *x = x.add(&term),
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        dp = next;
    }
    dp.remove(&((1u32 << n) - 1)).unwrap_or_else(R::zero)
}

/// Fraction-free (Bareiss) determinant for polynomial matrices; faster than
/// subset expansion once `n` exceeds about 8.
pub fn det_bareiss(m: &Matrix<Poly<Q>>) -> Poly<Q> {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
        }
        prev = a[k][k].clone();
        for i in k + 1..n {
            a[i][k] = Poly::zero();
        }
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

pub fn identity<R: Ring>(n: usize) -> Matrix<R> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect())
        .collect()
}

pub fn mat_mul<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = R::zero();
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            s = s.add(&a[i][l].mul(&b[l][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_sub<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

pub fn mat_add<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn mat_scale<R: Ring>(a: &Matrix<R>, c: &R) -> Matrix<R> {
    a.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect()
}

pub fn transpose<R: Ring>(a: &Matrix<R>) -> Matrix<R> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn trace<R: Ring>(a: &Matrix<R>) -> R {
    (0..a.len()).fold(R::zero(), |s, i| s.add(&a[i][i]))
}

pub fn commutator<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

pub fn is_zero_matrix<R: Ring>(a: &Matrix<R>) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut Matrix<Q>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Q::from_integer(1.into()) / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &Matrix<Q>) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Affine solution set of `A·x = b`: a particular solution and a nullspace
/// basis, or `None` when inconsistent.
pub fn solve_affine(a: &Matrix<Q>, b: &[Q]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Matrix<Q> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::from_integer(1.into());
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -aug[i][f].clone();
            }
            v
        })
        .collect();
    Some((x, null))
}

/// Least squares `min ‖A x − b‖` over C via normal equations with partial
/// pivoting; returns the solution and the residual norm.
pub fn lstsq_complex(a: &[Vec<Complex64>], b: &[Complex64]) -> (Vec<Complex64>, f64) {
    let n = a.first().map_or(0, |r| r.len());
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
    for (row, rhs) in a.iter().zip(b) {
        for i in 0..n {
            let ci = row[i].conj();
            for j in 0..n {
                m[i][j] += ci * row[j];
            }
            m[i][n] += ci * rhs;
        }
    }
    let x = solve_complex_aug(m);
    let res = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let v: Complex64 = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            (v - rhs).norm_sqr()
        })
        .sum::<f64>()
        .sqrt();
    (x, res)
}

/// Solves a square complex system given as an augmented matrix.
pub fn solve_complex_aug(mut m: Vec<Vec<Complex64>>) -> Vec<Complex64> {
    let n = m.len();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].norm().partial_cmp(&m[j][k].norm()).unwrap())
            .unwrap();
        m.swap(k, p);
        let piv = m[k][k];
        if piv.norm() == 0.0 {
            continue;
        }
        for i in k + 1..n {
            let f = m[i][k] / piv;
            for j in k..=n {
                let t = f * m[k][j];
                m[i][j] -= t;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let mut s = m[k][n];
        for j in k + 1..n {
            s -= m[k][j] * x[j];
        }
        x[k] = if m[k][k].norm() == 0.0 { Complex64::new(0.0, 0.0) } else { s / m[k][k] };
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::int;

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let m = qm(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 5, -3, 1], &[7, 0, 1, 1]]);
        let d = det(&m);
        let pm: Matrix<Poly<Q>> = m.iter().map(|r| r.iter().map(Poly::rational).collect()).collect();
        assert_eq!(Poly::rational(&d), det_bareiss(&pm));
        assert_eq!(det(&identity::<Q>(5)), int(1));
    }

    #[test]
    fn affine_solution() {
        let a = qm(&[&[1, 1, 0], &[0, 1, 1]]);
        let (x, null) = solve_affine(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(null.len(), 1);
        let ax: Vec<Q> = a.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum()).collect();
        assert_eq!(ax, vec![int(1), int(2)]);
        assert!(solve_affine(&qm(&[&[1, 1], &[1, 1]]), &[int(0), int(1)]).is_none());
        assert_eq!(rank(&qm(&[&[1, 2], &[2, 4]])), 1);
    }
}
