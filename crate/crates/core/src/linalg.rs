//! Dense exact linear algebra over Q(ζ₅).

use crate::cyclotomic::CycNum;

pub type Matrix = Vec<Vec<CycNum>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![CycNum::zero(); cols]; rows]
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = CycNum::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = v.checked_div(&prev).expect("nonzero pivot");
            }
            a[i][c] = CycNum::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form in place; returns the pivot columns. Zero rows
/// are removed.
pub fn rref(a: &mut Matrix) -> Vec<usize> {
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
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            if !a[r][j].is_zero() {
                a[r][j] = &a[r][j] * &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right kernel {v : m·v = 0}.
pub fn kernel(m: &Matrix, cols: usize) -> Matrix {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycNum::zero(); cols];
            v[f] = CycNum::one();
            for (row, &p) in a.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[CycNum]) -> Vec<CycNum> {
    m.iter()
        .map(|row| {
            let mut acc = CycNum::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
        .collect()
}

/// Determinant by Bareiss elimination.
pub fn determinant(m: &Matrix) -> CycNum {
    let n = m.len();
    let mut a = m.clone();
    let mut prev = CycNum::one();
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return CycNum::zero() };
        if p != k {
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.checked_div(&prev).expect("nonzero pivot");
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return CycNum::one();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect()).collect()
    }

    #[test]
    fn rank_agrees_between_methods() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_bareiss(&m), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let z = CycNum::zeta();
        let m: Matrix = vec![vec![CycNum::one(), z.clone(), z.pow(2)], vec![z.clone(), z.pow(2), z.pow(3)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(CycNum::is_zero));
        }
    }

    #[test]
    fn determinant_of_small_matrices() {
        assert_eq!(determinant(&int_matrix(&[&[2, 1], &[1, 1]])), CycNum::from_int(1));
        assert_eq!(determinant(&int_matrix(&[&[0, 1], &[1, 0]])), CycNum::from_int(-1));
        assert_eq!(determinant(&int_matrix(&[&[1, 2], &[2, 4]])), CycNum::zero());
    }
}
