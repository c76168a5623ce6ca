//! Adapted affine hyperplane arrangements and cell location.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{primitive_step, LinearForm, QVector, Rational};
use crate::norm::PolyhedralNorm;
use crate::polyhedra::{HPolyhedron, Inequality, VPolytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Generic,
    Symmetric,
    L1Special,
    LInfSpecial,
    /// Only the directions of the walls between maximality regions of the forms.
    Walls,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Strategy::Auto),
            "generic" => Ok(Strategy::Generic),
            "symmetric" => Ok(Strategy::Symmetric),
            "l1" => Ok(Strategy::L1Special),
            "linf" => Ok(Strategy::LInfSpecial),
            "walls" => Ok(Strategy::Walls),
            other => Err(Error::Parse(format!("unknown adapted strategy '{other}'"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Strategy::Auto => "auto",
            Strategy::Generic => "generic",
            Strategy::Symmetric => "symmetric",
            Strategy::L1Special => "l1",
            Strategy::LInfSpecial => "linf",
            Strategy::Walls => "walls",
        };
        f.write_str(s)
    }
}

/// Primitive integer form with positive leading entry.
pub fn canonical_direction(form: &LinearForm) -> LinearForm {
    LinearForm::from_bigints(&form.unsigned_key())
}

/// Canonical directions, deduplicated up to sign and scale, sorted.
pub fn canonical_set(forms: impl IntoIterator<Item = LinearForm>) -> Vec<LinearForm> {
    let mut out: Vec<LinearForm> = forms
        .into_iter()
        .filter(|f| !f.is_zero())
        .map(|f| canonical_direction(&f))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Directions `l_i - l_j` of the walls separating maximality regions.
pub fn wall_directions(norm: &PolyhedralNorm) -> Vec<LinearForm> {
    let forms = norm.forms();
    canonical_set(norm.adjacent_forms().into_iter().map(|(i, j)| forms[i].sub(&forms[j])))
}

/// The arrangement generated by `set` is adapted to `norm` iff every wall
/// direction is parallel to one of its classes. Returns a missing wall otherwise.
pub fn missing_wall(norm: &PolyhedralNorm, set: &[LinearForm]) -> Option<LinearForm> {
    let have = canonical_set(set.iter().cloned());
    wall_directions(norm)
        .into_iter()
        .find(|w| have.binary_search(w).is_err())
}

/// Scale `c > 0` with `forms = c * pattern` as sets, if any.
fn matches_pattern(forms: &[LinearForm], pattern: &[LinearForm]) -> bool {
    if forms.len() != pattern.len() || forms.is_empty() {
        return false;
    }
    let scale = forms[0].coeffs().iter().map(|c| c.abs()).max().expect("nonempty form");
    if scale.is_zero() {
        return false;
    }
    let inv = Rational::from_integer(1.into()) / scale;
    let mut scaled: Vec<LinearForm> = forms.iter().map(|f| f.scale(&inv)).collect();
    scaled.sort();
    let mut pattern = pattern.to_vec();
    pattern.sort();
    scaled == pattern
}

fn is_l1(norm: &PolyhedralNorm) -> bool {
    matches_pattern(norm.forms(), PolyhedralNorm::l1(norm.dim()).forms())
}

fn is_linf(norm: &PolyhedralNorm) -> bool {
    matches_pattern(norm.forms(), PolyhedralNorm::l_infinity(norm.dim()).forms())
}

fn differences(norm: &PolyhedralNorm) -> Vec<LinearForm> {
    let forms = norm.forms();
    let mut out = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            out.push(forms[i].sub(&forms[j]));
        }
    }
    canonical_set(out)
}

fn certified(norm: &PolyhedralNorm, set: Vec<LinearForm>, strategy: Strategy) -> Result<Vec<LinearForm>> {
    match missing_wall(norm, &set) {
        None => Ok(set),
        Some(w) => Err(Error::NotAdapted(format!(
            "strategy {strategy} misses wall direction {w}"
        ))),
    }
}

/// A set of forms whose arrangement is adapted to `norm`.
pub fn adapted_set(norm: &PolyhedralNorm, strategy: Strategy) -> Result<Vec<LinearForm>> {
    let n = norm.dim();
    match strategy {
        Strategy::Auto => {
            if is_l1(norm) {
                return adapted_set(norm, Strategy::L1Special);
            }
            if is_linf(norm) && n >= 2 {
                return adapted_set(norm, Strategy::LInfSpecial);
            }
            if norm.is_symmetric() {
                if let Ok(set) = adapted_set(norm, Strategy::Symmetric) {
                    return Ok(set);
                }
            }
            adapted_set(norm, Strategy::Generic)
        }
        Strategy::Generic => certified(norm, differences(norm), strategy),
        Strategy::Walls => Ok(wall_directions(norm)),
        Strategy::Symmetric => {
            if !norm.is_symmetric() {
                return Err(Error::IncompatibleStrategy("symmetric strategy needs L = -L".into()));
            }
            let lines = canonical_set(norm.forms().iter().cloned());
            let set: Vec<LinearForm> = differences(norm)
                .into_iter()
                .filter(|d| lines.binary_search(d).is_err())
                .collect();
            certified(norm, set, strategy)
        }
        Strategy::L1Special => {
            if !is_l1(norm) {
                return Err(Error::IncompatibleStrategy("form set is not the L1 pattern".into()));
            }
            let set = (0..n).map(|i| LinearForm::coordinate(n, i));
            certified(norm, canonical_set(set), strategy)
        }
        Strategy::LInfSpecial => {
            if !is_linf(norm) {
                return Err(Error::IncompatibleStrategy(
                    "form set is not the L-infinity pattern".into(),
                ));
            }
            let mut set = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let ei = LinearForm::coordinate(n, i);
                    let ej = LinearForm::coordinate(n, j);
                    set.push(LinearForm(
                        ei.coeffs().iter().zip(ej.coeffs()).map(|(a, b)| a + b).collect(),
                    ));
                    set.push(ei.sub(&ej));
                }
            }
            certified(norm, canonical_set(set), strategy)
        }
    }
}

/// Hyperplanes `form(x) = k * step`, `k` in `Z`; with the primitive normal this is `normal(x) = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneClass {
    pub form: LinearForm,
    pub normal: LinearForm,
    pub step: Rational,
    pub witness: QVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSignature {
    /// `normal_i(x)` lies in `(k_i, k_i + 1)`.
    pub indices: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    classes: Vec<HyperplaneClass>,
}

pub fn build_aha(dim: usize, forms: &[LinearForm]) -> Result<Arrangement> {
    let mut classes: Vec<HyperplaneClass> = Vec::new();
    for f in forms {
        if f.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: f.dim(),
            });
        }
        let normal = canonical_direction(f);
        if classes.iter().any(|c| c.normal == normal) {
            continue;
        }
        let form = if f
            .coeffs()
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative())
        {
            f.neg()
        } else {
            f.clone()
        };
        let (witness, step) = primitive_step(&form)?;
        classes.push(HyperplaneClass {
            form,
            normal,
            step,
            witness,
        });
    }
    Ok(Arrangement { dim, classes })
}

impl Arrangement {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[HyperplaneClass] {
        &self.classes
    }

    /// Closed cell with the given signature.
    pub fn cell(&self, sig: &CellSignature) -> HPolyhedron {
        let mut ineqs = Vec::with_capacity(2 * self.classes.len());
        for (c, k) in self.classes.iter().zip(&sig.indices) {
            let k = Rational::from_integer(k.clone());
            ineqs.push(Inequality::new(c.normal.clone(), &k + Rational::from_integer(1.into())));
            ineqs.push(Inequality::new(c.normal.neg(), -k));
        }
        HPolyhedron::new(self.dim, ineqs).expect("class dimensions agree")
    }

    pub fn cell_of_point(&self, x: &QVector) -> Result<(CellSignature, HPolyhedron)> {
        let mut indices = Vec::with_capacity(self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            let t = c.normal.apply(x);
            if t.is_integer() {
                return Err(Error::OnWall {
                    class: i,
                    point: x.clone(),
                });
            }
            indices.push(t.floor().to_integer());
        }
        let sig = CellSignature { indices };
        let cell = self.cell(&sig);
        Ok((sig, cell))
    }

    /// The cell whose closure contains the full-dimensional polytope, if no wall crosses its interior.
    pub fn signature_of(&self, p: &VPolytope) -> Option<CellSignature> {
        let mut indices = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let values: Vec<Rational> = p.vertices().iter().map(|v| c.normal.apply(v)).collect();
            let lo = values.iter().min()?;
            let hi = values.iter().max()?;
            let k = lo.floor();
            if *hi > &k + Rational::from_integer(1.into()) {
                return None;
            }
            indices.push(k.to_integer());
        }
        Some(CellSignature { indices })
    }
}

/// Dominance data of a bounded cell: `gap[i][j] = max over cell vertices of (l_j - l_i)`.
pub struct CellForms<'a> {
    norm: &'a PolyhedralNorm,
    gap: Vec<Vec<Rational>>,
}

impl<'a> CellForms<'a> {
    pub fn new(norm: &'a PolyhedralNorm, vertices: &[QVector]) -> Self {
        let values: Vec<Vec<Rational>> = vertices
            .iter()
            .map(|u| norm.forms().iter().map(|f| f.apply(u)).collect())
            .collect();
        let m = norm.forms().len();
        let gap = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        values
                            .iter()
                            .map(|row| &row[j] - &row[i])
                            .max()
                            .expect("cell has vertices")
                    })
                    .collect()
            })
            .collect();
        CellForms { norm, gap }
    }

    /// Index of the form `l` with `l'(x - v) <= l(x - v)` on the whole cell.
    pub fn dominant(&self, v: &QVector) -> Option<usize> {
        let at_v: Vec<Rational> = self.norm.forms().iter().map(|f| f.apply(v)).collect();
        (0..at_v.len()).find(|&i| (0..at_v.len()).all(|j| self.gap[i][j] <= &at_v[j] - &at_v[i]))
    }
}

pub fn dominant_form(norm: &PolyhedralNorm, cell: &HPolyhedron, v: &QVector) -> Result<LinearForm> {
    let vertices = cell.dual_description()?;
    CellForms::new(norm, vertices.vertices())
        .dominant(v)
        .map(|i| norm.forms()[i].clone())
        .ok_or_else(|| Error::NotAdapted(format!("no dominant form on the cell for {v}")))
}
