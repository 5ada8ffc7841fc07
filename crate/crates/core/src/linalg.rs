//! Dense linear algebra over a coefficient field.

use crate::coeff::{Field, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of {v : m·v = 0}.
pub fn nullspace(m: &Matrix, ncols: usize, field: &Field) -> Vec<Vec<Scalar>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solves m·x = b with free variables set to zero.
pub fn solve(m: &Matrix, b: &[Scalar], field: &Field) -> Option<Vec<Scalar>> {
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][ncols].clone();
    }
    Some(x)
}

pub fn det(m: &Matrix, field: &Field) -> Scalar {
    let n = m.len();
    let mut a = m.clone();
    let mut d = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            d = d.neg();
        }
        d = d.mul(&a[c][c]);
        let inv = a[c][c].inv().unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                let t = f.mul(&a[c][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Field::Q.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn solve_and_nullspace() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace(&m, 3, &Field::Q);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let s = row
                .iter()
                .zip(&ns[0])
                .fold(Field::Q.zero(), |a, (x, y)| a.add(&x.mul(y)));
            assert!(s.is_zero());
        }
        let b: Vec<Scalar> = [6, 12, 2].iter().map(|&x| Field::Q.from_i64(x)).collect();
        assert!(solve(&m, &b, &Field::Q).is_some());
        let b2: Vec<Scalar> = [6, 11, 2].iter().map(|&x| Field::Q.from_i64(x)).collect();
        assert!(solve(&m, &b2, &Field::Q).is_none());
        assert_eq!(
            det(&q(&[&[2, 1], &[1, 3]]), &Field::Q),
            Field::Q.from_i64(5)
        );
        assert_eq!(rank(&m), 2);
    }
}
