//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Row echelon form in place; returns the pivot columns.
pub fn row_echelon(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (o, p) in other.iter_mut().zip(pivot_row.iter()) {
                    if !p.is_zero() {
                        *o = &*o - &factor * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut work = rows.to_vec();
    row_echelon(&mut work).len()
}

pub fn determinant(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        det *= &rows[c][c];
        let pivot = rows[c].clone();
        for row in rows.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot[c];
            for (v, p) in row.iter_mut().zip(&pivot).skip(c) {
                *v = &*v - &factor * p;
            }
        }
    }
    det
}

pub fn inverse(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let pivots = row_echelon(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A nonzero vector `y` with `rows * y = 0`, if the kernel is nontrivial.
pub fn kernel_vector(rows: &[Vec<Rational>], ncols: usize) -> Option<Vec<Rational>> {
    let mut work = rows.to_vec();
    let pivots = row_echelon(&mut work);
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut y = vec![Rational::zero(); ncols];
    y[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        y[pc] = -work[r][free].clone();
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn inverse_and_determinant() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        assert_eq!(determinant(m.clone()), int(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        let singular = vec![vec![int(1), int(2)], vec![rat(1, 2), int(1)]];
        assert_eq!(determinant(singular.clone()), int(0));
        assert!(inverse(&singular).is_none());
        assert_eq!(rank(&singular), 1);
    }

    #[test]
    fn kernel_vector_is_in_kernel() {
        let m = vec![vec![int(1), int(2), int(3)], vec![int(0), int(1), int(1)]];
        let y = kernel_vector(&m, 3).unwrap();
        for row in &m {
            let s: Rational = row.iter().zip(&y).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        assert!(y.iter().any(|c| !c.is_zero()));
    }
}
