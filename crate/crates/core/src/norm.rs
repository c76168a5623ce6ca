//! Polyhedral norms `N(x) = max_l l(x)` over a finite set of rational forms.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{LinearForm, QVector, Rational};
use crate::linalg;
use crate::polyhedra::{affine_rank, extreme_forms, lp, HPolyhedron, Inequality, VPolytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralNorm {
    dim: usize,
    forms: Vec<LinearForm>,
    symmetric: bool,
}

impl PolyhedralNorm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The minimal defining forms, sorted.
    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn value(&self, x: &QVector) -> Rational {
        self.forms.iter().map(|f| f.apply(x)).max().expect("norm has forms")
    }

    /// The value together with the indices of every attaining form.
    pub fn value_with_argmax(&self, x: &QVector) -> (Rational, Vec<usize>) {
        let values: Vec<Rational> = self.forms.iter().map(|f| f.apply(x)).collect();
        let best = values.iter().max().expect("norm has forms").clone();
        let argmax = (0..values.len()).filter(|&i| values[i] == best).collect();
        (best, argmax)
    }

    /// `N(x - v)`.
    pub fn distance(&self, x: &QVector, v: &QVector) -> Rational {
        self.value(&(x - v))
    }

    pub fn index_of(&self, form: &LinearForm) -> Option<usize> {
        self.forms.binary_search(form).ok()
    }

    /// Vertices of the unit ball `{x : N(x) <= 1}`.
    pub fn unit_ball(&self) -> VPolytope {
        let ineqs = self
            .forms
            .iter()
            .map(|f| Inequality::new(f.clone(), Rational::one()))
            .collect();
        HPolyhedron::new(self.dim, ineqs)
            .and_then(|h| h.dual_description())
            .expect("a norm has a bounded unit ball")
    }

    /// Pairs `(i, j)`, `i < j`, of forms whose maximality regions share a wall;
    /// equivalently the edges of `conv(forms)`.
    pub fn adjacent_forms(&self) -> Vec<(usize, usize)> {
        let m = self.forms.len();
        if self.dim == 1 {
            return (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
        }
        let ball = self.unit_ball();
        let pts = ball.vertices();
        let tight: Vec<Vec<usize>> = self
            .forms
            .iter()
            .map(|f| (0..pts.len()).filter(|&k| f.apply(&pts[k]).is_one()).collect())
            .collect();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let common: Vec<usize> = tight[i].iter().copied().filter(|k| tight[j].contains(k)).collect();
                if common.len() + 1 >= self.dim && affine_rank(pts, &common) == Some(self.dim - 2) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The L-infinity norm on R^n.
    pub fn l_infinity(dim: usize) -> Self {
        let mut forms = Vec::new();
        for i in 0..dim {
            let e = LinearForm::coordinate(dim, i);
            forms.push(e.neg());
            forms.push(e);
        }
        validate_norm(dim, &forms).expect("L-infinity is a norm")
    }

    /// The L1 norm on R^n: all sign patterns.
    pub fn l1(dim: usize) -> Self {
        let forms: Vec<LinearForm> = (0..1u64 << dim)
            .map(|mask| {
                let signs: Vec<i64> = (0..dim).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                LinearForm::from_ints(&signs)
            })
            .collect();
        validate_norm(dim, &forms).expect("L1 is a norm")
    }
}

/// Minimalizes the forms and certifies that they define a (possibly asymmetric) norm.
pub fn validate_norm(dim: usize, forms: &[LinearForm]) -> Result<PolyhedralNorm> {
    if forms.is_empty() {
        return Err(Error::Empty("norm needs at least one form"));
    }
    if let Some(bad) = forms.iter().find(|f| f.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    if linalg::rank(&rows) < dim {
        return Err(Error::DegenerateNorm);
    }
    // 0 is interior to conv(forms) iff the cone {x : l(x) <= 0 for all l} is {0}.
    let mut cone: Vec<Inequality> = forms
        .iter()
        .map(|f| Inequality::new(f.clone(), Rational::from_integer(0.into())))
        .collect();
    for i in 0..dim {
        let e = LinearForm::coordinate(dim, i);
        cone.push(Inequality::new(e.clone(), Rational::from_integer(1.into())));
        cone.push(Inequality::new(e.neg(), Rational::from_integer(1.into())));
    }
    for i in 0..dim {
        let e = LinearForm::coordinate(dim, i);
        for objective in [e.clone(), e.neg()] {
            if let lp::LpOutcome::Optimal { point, value } = lp::maximize(dim, &cone, &objective) {
                if value.is_positive() {
                    return Err(Error::NotPositiveDefinite { witness: point });
                }
            }
        }
    }
    let forms = extreme_forms(forms);
    let mut negated: Vec<LinearForm> = forms.iter().map(LinearForm::neg).collect();
    negated.sort();
    let symmetric = negated == forms;
    Ok(PolyhedralNorm { dim, forms, symmetric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn standard_norms_validate() {
        let linf = PolyhedralNorm::l_infinity(2);
        assert!(linf.is_symmetric());
        assert_eq!(linf.forms().len(), 4);
        let l1 = PolyhedralNorm::l1(2);
        assert!(l1.is_symmetric());
        assert_eq!(l1.forms().len(), 4);
    }

    #[test]
    fn one_sided_form_is_not_a_norm() {
        match validate_norm(1, &[LinearForm::from_ints(&[1])]) {
            Err(Error::NotPositiveDefinite { witness }) => assert_eq!(witness, QVector::from_ints(&[-1])),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            validate_norm(2, &[LinearForm::from_ints(&[1, 0]), LinearForm::from_ints(&[-1, 0])]),
            Err(Error::DegenerateNorm)
        ));
        let half_plane = [
            LinearForm::from_ints(&[1, 0]),
            LinearForm::from_ints(&[0, 1]),
            LinearForm::from_ints(&[0, -1]),
        ];
        assert!(matches!(
            validate_norm(2, &half_plane),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn form_adjacency() {
        // L1 forms in R^3 are the cube vertices {+-1}^3: 12 edges.
        assert_eq!(PolyhedralNorm::l1(3).adjacent_forms().len(), 12);
        // L-infinity forms are the octahedron vertices: 12 edges.
        assert_eq!(PolyhedralNorm::l_infinity(3).adjacent_forms().len(), 12);
        assert_eq!(PolyhedralNorm::l_infinity(2).adjacent_forms().len(), 4);
        assert_eq!(PolyhedralNorm::l1(1).adjacent_forms(), vec![(0, 1)]);
    }

    #[test]
    fn asymmetric_norm_is_flagged() {
        let forms = [
            LinearForm::from_ints(&[1, 0]),
            LinearForm::from_ints(&[0, 1]),
            LinearForm::from_ints(&[-1, -1]),
            LinearForm::from_ints(&[0, 0]),
        ];
        let n = validate_norm(2, &forms).unwrap();
        assert!(!n.is_symmetric());
        assert_eq!(n.forms().len(), 3);
    }

    #[test]
    fn norm_value_examples() {
        let linf = PolyhedralNorm::l_infinity(2);
        let (v, arg) = linf.value_with_argmax(&QVector::from_ints(&[3, -4]));
        assert_eq!(v, int(4));
        assert_eq!(
            arg.iter().map(|&i| linf.forms()[i].clone()).collect::<Vec<_>>(),
            vec![LinearForm::from_ints(&[0, -1])]
        );

        let l1 = PolyhedralNorm::l1(2);
        let (v, arg) = l1.value_with_argmax(&QVector::from_ints(&[3, -4]));
        assert_eq!(v, int(7));
        assert_eq!(
            arg.iter().map(|&i| l1.forms()[i].clone()).collect::<Vec<_>>(),
            vec![LinearForm::from_ints(&[1, -1])]
        );

        let (v, arg) = linf.value_with_argmax(&QVector::from_ints(&[1, 1]));
        assert_eq!(v, int(1));
        let mut tied: Vec<LinearForm> = arg.iter().map(|&i| linf.forms()[i].clone()).collect();
        tied.sort();
        assert_eq!(
            tied,
            vec![LinearForm::from_ints(&[0, 1]), LinearForm::from_ints(&[1, 0])]
        );
    }

    fn arb_point() -> impl Strategy<Value = QVector> {
        prop::collection::vec((-20i64..=20, 1i64..=12), 3)
            .prop_map(|c| QVector(c.into_iter().map(|(p, q)| rat(p, q)).collect()))
    }

    fn test_norms() -> &'static [PolyhedralNorm] {
        static NORMS: std::sync::OnceLock<Vec<PolyhedralNorm>> = std::sync::OnceLock::new();
        NORMS.get_or_init(build_test_norms)
    }

    fn build_test_norms() -> Vec<PolyhedralNorm> {
        let skew = [
            LinearForm::from_ints(&[2, 0, 0]),
            LinearForm::from_ints(&[0, 1, 0]),
            LinearForm::from_ints(&[0, 0, 1]),
            LinearForm::from_ints(&[-1, -1, -1]),
        ];
        vec![
            PolyhedralNorm::l1(3),
            PolyhedralNorm::l_infinity(3),
            validate_norm(3, &skew).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn triangle_inequality(x in arb_point(), y in arb_point()) {
            for n in test_norms() {
                prop_assert!(n.value(&(&x + &y)) <= n.value(&x) + n.value(&y));
            }
        }

        #[test]
        fn positive_homogeneity(x in arb_point(), p in 1i64..50, q in 1i64..50) {
            let lambda = rat(p, q);
            for n in test_norms() {
                prop_assert_eq!(n.value(&x.scale(&lambda)), &lambda * n.value(&x));
                if n.is_symmetric() {
                    prop_assert_eq!(n.value(&-&x), n.value(&x));
                }
            }
        }
    }
}
