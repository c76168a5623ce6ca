//! Double description: H-representation to extreme points and rays.
//!
//! An inequality system `a.x <= b` is homogenized to the cone
//! `{(t, x) : b t - a.x >= 0, t >= 0}` and its extreme rays are built by
//! inserting one constraint at a time. All arithmetic is on primitive integer
//! rays; adjacency uses the combinatorial zero-set test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bitset::BitSet;
use super::Inequality;
use crate::exact::{primitive_integer, QVector, Rational};
use crate::linalg;

pub(crate) enum ConeOutput {
    /// The homogenized cone is pointed.
    Pointed {
        vertices: Vec<QVector>,
        recession: Vec<QVector>,
    },
    /// The constraint rows do not have full rank; `direction` is a line in the set
    /// (when the set is nonempty).
    Lineality { direction: QVector },
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|c| *c = &*c / &g);
    }
}

/// Homogenized integer row `(b, -a)` scaled to primitive.
fn homogenize(ineq: &Inequality) -> Vec<BigInt> {
    let mut row: Vec<Rational> = Vec::with_capacity(ineq.normal.dim() + 1);
    row.push(ineq.rhs.clone());
    row.extend(ineq.normal.coeffs().iter().map(|c| -c));
    primitive_integer(&row)
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: BitSet,
}

pub(crate) fn enumerate(dim: usize, inequalities: &[Inequality]) -> ConeOutput {
    let d = dim + 1;
    let mut rows: Vec<Vec<BigInt>> = inequalities.iter().map(homogenize).collect();
    rows.sort();
    rows.dedup();
    let mut positivity = vec![BigInt::zero(); d];
    positivity[0] = BigInt::one();
    rows.retain(|r| *r != positivity);
    rows.insert(0, positivity);
    let m = rows.len();

    // Initial simplicial cone from the first linearly independent rows.
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut basis_rows: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (i, row) in rows.iter().enumerate() {
        if basis.len() == d {
            break;
        }
        let mut trial = basis_rows.clone();
        trial.push(row.iter().cloned().map(Rational::from_integer).collect());
        if linalg::rank(&trial) == trial.len() {
            basis.push(i);
            basis_rows = trial;
        }
    }
    if basis.len() < d {
        let kernel = linalg::kernel_vector(&basis_rows, d).expect("rank deficient");
        return ConeOutput::Lineality {
            direction: QVector(kernel[1..].to_vec()),
        };
    }

    let inv = linalg::inverse(&basis_rows).expect("independent rows");
    let mut rays: Vec<Ray> = (0..d)
        .map(|k| {
            let column: Vec<Rational> = inv.iter().map(|r| r[k].clone()).collect();
            let mut zeros = BitSet::new(m);
            for (j, &row) in basis.iter().enumerate() {
                if j != k {
                    zeros.insert(row);
                }
            }
            Ray {
                coords: primitive_integer(&column),
                zeros,
            }
        })
        .collect();

    let mut in_basis = vec![false; m];
    basis.iter().for_each(|&i| in_basis[i] = true);

    for h in (0..m).filter(|&i| !in_basis[i]) {
        let row = &rows[h];
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (ray, value) in rays.iter_mut().zip(&values) {
                if value.is_zero() {
                    ray.zeros.insert(h);
                }
            }
            continue;
        }
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();

        let mut created: Vec<Ray> = Vec::new();
        for &p in &positive {
            for &q in &negative {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.len() + 2 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(r, ray)| r != p && r != q && common.is_subset_of(&ray.zeros));
                if blocked {
                    continue;
                }
                let sp = &values[p];
                let sq = -&values[q];
                let mut coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(a, b)| sp * a + &sq * b)
                    .collect();
                make_primitive(&mut coords);
                let mut zeros = common;
                zeros.insert(h);
                created.push(Ray { coords, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut ray, value) in rays.into_iter().zip(values) {
            if value.is_negative() {
                continue;
            }
            if value.is_zero() {
                ray.zeros.insert(h);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
    }

    let mut vertices = Vec::new();
    let mut recession = Vec::new();
    for ray in rays {
        let t = &ray.coords[0];
        if t.is_positive() {
            let t = Rational::from_integer(t.clone());
            vertices.push(QVector(
                ray.coords[1..]
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()) / &t)
                    .collect(),
            ));
        } else {
            recession.push(QVector::from_bigints(&ray.coords[1..]));
        }
    }
    vertices.sort();
    vertices.dedup();
    ConeOutput::Pointed { vertices, recession }
}
