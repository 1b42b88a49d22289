//! Exact Gaussian elimination over any [`Field`].

use crate::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduce `a` in place to row echelon form; returns the pivot columns and
/// the sign/scale bookkeeping needed for determinants.
fn echelon<F: Field>(field: &F, a: &mut Matrix<F::Elem>, cols: usize) -> (Vec<usize>, F::Elem) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut det_factor = field.one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        if pr != r {
            a.swap(pr, r);
            det_factor = field.neg(&det_factor);
        }
        let inv = field.inv(&a[r][c]).unwrap();
        det_factor = field.mul(&det_factor, &a[r][c]);
        for x in a[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(pv) {
                    *x = field.sub(x, &field.mul(&f, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, det_factor)
}

/// Unique solution of the square system `a x = b`, `None` if singular.
pub fn solve<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = a.len();
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (pivots, _) = echelon(field, &mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

pub fn determinant<F: Field>(field: &F, a: &Matrix<F::Elem>) -> F::Elem {
    let n = a.len();
    let mut m = a.clone();
    let (pivots, det) = echelon(field, &mut m, n);
    if pivots.len() < n {
        field.zero()
    } else {
        det
    }
}

pub fn inverse<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = a.len();
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let (pivots, _) = echelon(field, &mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right kernel `{x : a x = 0}`.
pub fn kernel<F: Field>(field: &F, a: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = a.clone();
    let (pivots, _) = echelon(field, &mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&m[r][f]);
            }
            v
        })
        .collect()
}

pub fn mat_vec<F: Field>(field: &F, a: &Matrix<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            row.iter().zip(x).fold(field.zero(), |acc, (r, v)| {
                if field.is_zero(r) || field.is_zero(v) {
                    acc
                } else {
                    field.add(&acc, &field.mul(r, v))
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    #[test]
    fn solve_and_inverse_over_f5() {
        let f = Gf::prime(5).unwrap();
        let a = vec![vec![1, 2], vec![3, 4]];
        let x = solve(&f, &a, &[1, 0]).unwrap();
        assert_eq!(mat_vec(&f, &a, &x), vec![1, 0]);
        let inv = inverse(&f, &a).unwrap();
        for (i, col) in [[1, 0], [0, 1]].iter().enumerate() {
            let xi: Vec<u32> = inv.iter().map(|r| r[i]).collect();
            assert_eq!(mat_vec(&f, &a, &xi), col.to_vec());
        }
        // det = 4 - 6 = -2 = 3 mod 5
        assert_eq!(determinant(&f, &a), 3);
    }

    #[test]
    fn singular_systems() {
        let f = Gf::prime(3).unwrap();
        let a = vec![vec![1, 2], vec![2, 1]];
        // rows are proportional mod 3
        assert!(solve(&f, &a, &[1, 1]).is_none());
        assert_eq!(determinant(&f, &a), 0);
        let k = kernel(&f, &a, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(mat_vec(&f, &a, &k[0]), vec![0, 0]);
    }
}
