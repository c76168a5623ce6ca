//! Root lattices, norm pull-back to lattice coordinates, and a Euclidean Voronoi oracle.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{LinearForm, QVector, Rational};
use crate::lattice_enum::box_points;
use crate::linalg;
use crate::norm::{validate_norm, PolyhedralNorm};
use crate::polyhedra::{HPolyhedron, Inequality, VPolytope};

/// Linearly independent vectors of `R^m` spanning a lattice of rank `n <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    vectors: Vec<QVector>,
}

impl LatticeBasis {
    pub fn new(vectors: Vec<QVector>) -> Result<Self> {
        let ambient_dim = vectors.first().map(QVector::dim).ok_or(Error::Empty("lattice basis"))?;
        if let Some(bad) = vectors.iter().find(|v| v.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.dim(),
            });
        }
        let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.0.clone()).collect();
        if linalg::rank(&rows) < vectors.len() {
            return Err(Error::InvalidLattice("basis vectors are linearly dependent".into()));
        }
        Ok(LatticeBasis { ambient_dim, vectors })
    }

    pub fn standard(n: usize) -> Self {
        LatticeBasis {
            ambient_dim: n,
            vectors: (0..n).map(|i| QVector::unit(n, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    /// `B a` for lattice coordinates `a`.
    pub fn to_ambient(&self, a: &QVector) -> QVector {
        let mut x = QVector::zeros(self.ambient_dim);
        for (b, c) in self.vectors.iter().zip(a.coords()) {
            x = &x + &b.scale(c);
        }
        x
    }

    pub fn gram(&self) -> Vec<Vec<Rational>> {
        self.vectors
            .iter()
            .map(|b| self.vectors.iter().map(|c| b.dot(c)).collect())
            .collect()
    }
}

/// `e_i - e_{i+1}` in `R^{n+1}`.
pub fn an_basis(n: usize) -> Result<LatticeBasis> {
    if n < 1 {
        return Err(Error::InvalidLattice("A_n needs n >= 1".into()));
    }
    let vectors = (0..n)
        .map(|i| {
            let mut v = vec![0; n + 1];
            v[i] = 1;
            v[i + 1] = -1;
            QVector::from_ints(&v)
        })
        .collect();
    LatticeBasis::new(vectors)
}

/// `e_1 + e_2, e_1 - e_2, e_2 - e_3, ..., e_{n-1} - e_n`.
pub fn dn_basis(n: usize) -> Result<LatticeBasis> {
    if n < 2 {
        return Err(Error::InvalidLattice("D_n needs n >= 2".into()));
    }
    let mut vectors = Vec::with_capacity(n);
    let mut first = vec![0; n];
    first[0] = 1;
    first[1] = 1;
    vectors.push(QVector::from_ints(&first));
    for i in 0..n - 1 {
        let mut v = vec![0; n];
        v[i] = 1;
        v[i + 1] = -1;
        vectors.push(QVector::from_ints(&v));
    }
    LatticeBasis::new(vectors)
}

/// The norm `a -> N(B a)` on lattice coordinates.
pub fn pullback_norm(ambient: &PolyhedralNorm, basis: &LatticeBasis) -> Result<PolyhedralNorm> {
    if ambient.dim() != basis.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: ambient.dim(),
            found: basis.ambient_dim(),
        });
    }
    let forms: Vec<LinearForm> = ambient
        .forms()
        .iter()
        .map(|f| LinearForm(basis.vectors().iter().map(|b| f.apply(b)).collect()))
        .collect();
    validate_norm(basis.rank(), &forms)
}

fn ceil_sqrt(q: &Rational) -> i64 {
    let mut c = 0i64;
    while Rational::from_integer((c * c).into()) < *q {
        c += 1;
    }
    c
}

/// Euclidean Voronoi cell of `0` in lattice coordinates:
/// `{a : 2 a.G.w <= w.G.w}` over lattice vectors `w` with `w.G.w <= trace(G)`.
pub fn euclidean_voronoi(basis: &LatticeBasis) -> Result<VPolytope> {
    let n = basis.rank();
    let g = basis.gram();
    let bound: Rational = (0..n).map(|i| g[i][i].clone()).sum();
    let g_inv = linalg::inverse(&g).expect("independent basis");
    let r: Vec<i64> = (0..n).map(|i| ceil_sqrt(&(&bound * &g_inv[i][i]))).collect();
    let lo: Vec<_> = r.iter().map(|&c| (-c).into()).collect();
    let hi: Vec<_> = r.iter().map(|&c| c.into()).collect();
    let mut ineqs = Vec::new();
    for w in box_points(&lo, &hi) {
        if w.is_zero() {
            continue;
        }
        let gw: Vec<Rational> = (0..n).map(|i| (0..n).map(|j| &g[i][j] * &w[j]).sum()).collect();
        let norm2: Rational = (0..n).map(|i| &w[i] * &gw[i]).sum();
        if norm2 > bound || norm2.is_zero() {
            continue;
        }
        let normal = LinearForm(gw.iter().map(|c| c * Rational::from_integer(2.into())).collect());
        ineqs.push(Inequality::new(normal, norm2));
    }
    HPolyhedron::new(n, ineqs)?.dual_description()
}
