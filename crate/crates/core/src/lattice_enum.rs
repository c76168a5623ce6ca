//! Integer points of rational polytopes and closest lattice points under a polyhedral norm.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::exact::{LinearForm, QVector, Rational};
use crate::norm::PolyhedralNorm;
use crate::polyhedra::{HPolyhedron, Inequality};

/// All points of `Z^n` in a bounded polyhedron, in lexicographic order.
pub fn integer_points(h: &HPolyhedron) -> Result<Vec<QVector>> {
    let root = h.dual_description()?;
    let mut out = Vec::new();
    if root.is_empty() {
        return Ok(out);
    }
    let mut prefix = Vec::with_capacity(h.dim());
    let (lo, hi) = coordinate_range(root.vertices().iter().map(|v| &v[0]));
    branch(h.inequalities(), h.dim(), Some((lo, hi)), &mut prefix, &mut out)?;
    Ok(out)
}

fn coordinate_range<'a>(values: impl Iterator<Item = &'a Rational>) -> (BigInt, BigInt) {
    let mut lo: Option<&Rational> = None;
    let mut hi: Option<&Rational> = None;
    for v in values {
        if lo.is_none_or(|l| v < l) {
            lo = Some(v);
        }
        if hi.is_none_or(|h| v > h) {
            hi = Some(v);
        }
    }
    (lo.unwrap().ceil().to_integer(), hi.unwrap().floor().to_integer())
}

/// Substitutes `x_0 = c` and drops the first coordinate.
fn fix_first(ineqs: &[Inequality], c: &BigInt) -> Vec<Inequality> {
    let c = Rational::from_integer(c.clone());
    ineqs
        .iter()
        .map(|i| {
            let coeffs = i.normal.coeffs();
            Inequality::new(LinearForm(coeffs[1..].to_vec()), &i.rhs - &coeffs[0] * &c)
        })
        .collect()
}

fn interval(ineqs: &[Inequality]) -> Option<(BigInt, BigInt)> {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for i in ineqs {
        let a = &i.normal.coeffs()[0];
        if a.is_zero() {
            if i.rhs.is_negative() {
                return None;
            }
            continue;
        }
        let bound = &i.rhs / a;
        if a.is_positive() {
            if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        } else if lo.as_ref().is_none_or(|l| bound > *l) {
            lo = Some(bound);
        }
    }
    let (lo, hi) = (lo?, hi?);
    Some((lo.ceil().to_integer(), hi.floor().to_integer()))
}

fn branch(
    ineqs: &[Inequality],
    m: usize,
    range: Option<(BigInt, BigInt)>,
    prefix: &mut Vec<BigInt>,
    out: &mut Vec<QVector>,
) -> Result<()> {
    let range = match range {
        Some(r) => Some(r),
        None if m == 1 => interval(ineqs),
        None => {
            let slice = HPolyhedron::new(m, ineqs.to_vec())?.dual_description()?;
            if slice.is_empty() {
                None
            } else {
                Some(coordinate_range(slice.vertices().iter().map(|v| &v[0])))
            }
        }
    };
    let Some((lo, hi)) = range else {
        return Ok(());
    };
    let mut c = lo;
    while c <= hi {
        prefix.push(c.clone());
        if m == 1 {
            out.push(QVector::from_bigints(prefix));
        } else {
            branch(&fix_first(ineqs, &c), m - 1, None, prefix, out)?;
        }
        prefix.pop();
        c += 1;
    }
    Ok(())
}

/// Integer points of the box `lo <= x <= hi`, lexicographic.
pub fn box_points(lo: &[BigInt], hi: &[BigInt]) -> Vec<QVector> {
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for (l, h) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for prefix in &out {
            let mut c = l.clone();
            while c <= *h {
                let mut p = prefix.clone();
                p.push(c.clone());
                next.push(p);
                c += 1;
            }
        }
        out = next;
    }
    out.iter().map(|p| QVector::from_bigints(p)).collect()
}

/// `P_L(x, d)`: lattice candidates `v` with `N(x - v) <= d`.
pub fn distance_ball(norm: &PolyhedralNorm, x: &QVector, d: &Rational) -> HPolyhedron {
    let ineqs = norm
        .forms()
        .iter()
        .map(|f| Inequality::new(f.neg(), d - f.apply(x)))
        .collect();
    HPolyhedron::new(norm.dim(), ineqs).expect("dimensions agree")
}

/// Exact `d_min(x)` and every lattice point attaining it, sorted.
pub fn closest_lattice_points(x: &QVector, norm: &PolyhedralNorm) -> Result<(Rational, Vec<QVector>)> {
    let n = norm.dim();
    let mut v = x.round();
    let mut d = norm.distance(x, &v);
    'improve: loop {
        for i in 0..n {
            for step in [1, -1] {
                let mut w = v.clone();
                w.0[i] += Rational::from_integer(step.into());
                let dw = norm.distance(x, &w);
                if dw < d {
                    v = w;
                    d = dw;
                    continue 'improve;
                }
            }
        }
        break;
    }
    let candidates = integer_points(&distance_ball(norm, x, &d))?;
    let mut best = d;
    let mut closest = Vec::new();
    for w in candidates {
        let dw = norm.distance(x, &w);
        if dw < best {
            best = dw.clone();
            closest.clear();
        }
        if dw == best {
            closest.push(w);
        }
    }
    Ok((best, closest))
}

pub fn d_min(x: &QVector, norm: &PolyhedralNorm) -> Result<Rational> {
    Ok(closest_lattice_points(x, norm)?.0)
}
