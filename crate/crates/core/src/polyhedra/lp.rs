//! Exact two-phase simplex over rationals with Bland's rule.
//!
//! Variables are free; each is split as `x = x+ - x-` internally.

use num_traits::{One, Signed, Zero};

use super::Inequality;
use crate::exact::{LinearForm, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        point: QVector,
        value: Rational,
    },
    Infeasible,
    /// Objective grows without bound along `direction` (a recession direction).
    Unbounded {
        direction: QVector,
    },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    ncols: usize,
    allowed: Vec<bool>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let piv = self.rows[p][q].clone();
        if !piv.is_one() {
            for c in self.rows[p].iter_mut() {
                *c = &*c / &piv;
            }
        }
        let prow = self.rows[p].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for (c, pc) in row.iter_mut().zip(&prow) {
                if !pc.is_zero() {
                    *c -= &f * pc;
                }
            }
        }
        if !self.cost[q].is_zero() {
            let f = self.cost[q].clone();
            for (c, pc) in self.cost.iter_mut().zip(&prow) {
                if !pc.is_zero() {
                    *c -= &f * pc;
                }
            }
        }
        self.basis[p] = q;
    }

    /// Reduced costs for maximizing `c` over the current basis.
    fn set_objective(&mut self, c: &[Rational]) {
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for (k, entry) in cost.iter_mut().enumerate() {
                let t = &self.rows[i][k];
                if !t.is_zero() {
                    *entry -= &c[b] * t;
                }
            }
        }
        self.cost = cost;
    }

    /// Runs simplex iterations; returns the entering column on unboundedness.
    fn optimize(&mut self) -> Option<usize> {
        loop {
            let entering = (0..self.ncols).find(|&j| self.allowed[j] && self.cost[j].is_positive());
            let q = entering?;
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((p, _)) => self.pivot(p, q),
                None => return Some(q),
            }
        }
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut values = vec![Rational::zero(); self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            values[b] = self.rhs(i).clone();
        }
        values
    }
}

/// Maximizes `objective` over `{x : a.x <= b}` in dimension `dim`.
pub fn maximize(dim: usize, constraints: &[Inequality], objective: &LinearForm) -> LpOutcome {
    let m = constraints.len();
    let nstruct = 2 * dim;
    let nart = constraints.iter().filter(|c| c.rhs.is_negative()).count();
    let ncols = nstruct + m + nart;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = nstruct + m;
    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        let flip = c.rhs.is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        for (j, a) in c.normal.coeffs().iter().enumerate() {
            row[j] = &sign * a;
            row[dim + j] = -&sign * a;
        }
        row[nstruct + i] = sign.clone();
        row[ncols] = &sign * &c.rhs;
        if flip {
            row[art] = Rational::one();
            basis.push(art);
            art += 1;
        } else {
            basis.push(nstruct + i);
        }
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        basis,
        cost: Vec::new(),
        ncols,
        allowed: vec![true; ncols],
    };

    if nart > 0 {
        let mut c = vec![Rational::zero(); ncols];
        c[nstruct + m..].iter_mut().for_each(|x| *x = -Rational::one());
        tab.set_objective(&c);
        tab.optimize();
        let phase1: Rational = tab
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= nstruct + m)
            .map(|(i, _)| tab.rhs(i).clone())
            .sum();
        if phase1.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= nstruct + m {
                match (0..nstruct + m).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        tab.allowed[nstruct + m..].iter_mut().for_each(|a| *a = false);
    }

    let mut c = vec![Rational::zero(); ncols];
    for (j, a) in objective.coeffs().iter().enumerate() {
        c[j] = a.clone();
        c[dim + j] = -a;
    }
    tab.set_objective(&c);
    if let Some(q) = tab.optimize() {
        let mut d = vec![Rational::zero(); ncols];
        d[q] = Rational::one();
        for (i, &b) in tab.basis.iter().enumerate() {
            d[b] = -&tab.rows[i][q];
        }
        let direction = (0..dim).map(|j| &d[j] - &d[dim + j]).collect();
        return LpOutcome::Unbounded {
            direction: QVector(direction),
        };
    }
    let values = tab.column_values();
    let point = QVector((0..dim).map(|j| &values[j] - &values[dim + j]).collect());
    let value = objective.apply(&point);
    LpOutcome::Optimal { point, value }
}

/// Some point of `{x : a.x <= b}`, if nonempty.
pub fn feasible_point(dim: usize, constraints: &[Inequality]) -> Option<QVector> {
    match maximize(dim, constraints, &LinearForm::zero(dim)) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}
