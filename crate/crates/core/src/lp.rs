//! Dense two-phase simplex over exact rationals, Bland's pivoting rule.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// A linear program `max c·x` over rows `a·x (≤|≥|=) b`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    n: usize,
    free: Vec<bool>,
    rows: Vec<(Vec<Rational>, Cmp, Rational)>,
}

impl LinearProgram {
    /// All variables free (unrestricted in sign).
    pub fn new(n: usize) -> Self {
        LinearProgram { n, free: vec![true; n], rows: Vec::new() }
    }

    pub fn set_nonnegative(&mut self, j: usize) {
        self.free[j] = false;
    }

    pub fn add_row(&mut self, a: Vec<Rational>, cmp: Cmp, b: Rational) {
        assert_eq!(a.len(), self.n, "row length");
        self.rows.push((a, cmp, b));
    }

    pub fn maximize(&self, c: &[Rational]) -> LpOutcome {
        assert_eq!(c.len(), self.n, "objective length");
        // column layout: expanded structurals, then one slack per inequality, then artificials
        let mut col_of = Vec::with_capacity(self.n);
        let mut n_struct = 0;
        for &f in &self.free {
            col_of.push(n_struct);
            n_struct += if f { 2 } else { 1 };
        }
        let n_slack = self.rows.iter().filter(|r| r.1 != Cmp::Eq).count();
        let m = self.rows.len();

        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut rhs: Vec<Rational> = Vec::with_capacity(m);
        let mut needs_artificial = Vec::with_capacity(m);
        let mut slack_idx = n_struct;
        let mut slack_of_row = vec![None; m];
        for (r, (a, cmp, b)) in self.rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); n_struct + n_slack];
            for (j, v) in a.iter().enumerate() {
                row[col_of[j]] = v.clone();
                if self.free[j] {
                    row[col_of[j] + 1] = -v;
                }
            }
            match cmp {
                Cmp::Le => row[slack_idx] = Rational::from_integer(1.into()),
                Cmp::Ge => row[slack_idx] = Rational::from_integer((-1).into()),
                Cmp::Eq => {}
            }
            if *cmp != Cmp::Eq {
                slack_of_row[r] = Some(slack_idx);
                slack_idx += 1;
            }
            let mut b = b.clone();
            if b.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
                b = -b;
            }
            // a slack with coefficient +1 can start in the basis
            let usable = slack_of_row[r].filter(|&s| row[s] > Rational::zero());
            needs_artificial.push(usable.is_none());
            slack_of_row[r] = usable;
            rows.push(row);
            rhs.push(b);
        }
        let n_art = needs_artificial.iter().filter(|&&x| x).count();
        let width = n_struct + n_slack + n_art;
        let mut basis = vec![0usize; m];
        let mut art = n_struct + n_slack;
        for r in 0..m {
            rows[r].resize(width, Rational::zero());
            if needs_artificial[r] {
                rows[r][art] = Rational::from_integer(1.into());
                basis[r] = art;
                art += 1;
            } else {
                basis[r] = slack_of_row[r].unwrap();
            }
        }
        let mut t = Tableau { rows, rhs, basis, allowed: width };

        if n_art > 0 {
            let mut cost = vec![Rational::zero(); width];
            for c in cost.iter_mut().skip(n_struct + n_slack) {
                *c = Rational::from_integer((-1).into());
            }
            match t.run(&cost) {
                Some(v) if v.is_zero() => {}
                _ => return LpOutcome::Infeasible,
            }
            t.expel_artificials(n_struct + n_slack);
            t.allowed = n_struct + n_slack;
        }

        let mut cost = vec![Rational::zero(); width];
        for j in 0..self.n {
            cost[col_of[j]] = c[j].clone();
            if self.free[j] {
                cost[col_of[j] + 1] = -&c[j];
            }
        }
        let Some(value) = t.run(&cost) else {
            return LpOutcome::Unbounded;
        };
        let mut full = vec![Rational::zero(); width];
        for (r, &b) in t.basis.iter().enumerate() {
            full[b] = t.rhs[r].clone();
        }
        let x = (0..self.n)
            .map(|j| {
                if self.free[j] {
                    &full[col_of[j]] - &full[col_of[j] + 1]
                } else {
                    full[col_of[j]].clone()
                }
            })
            .collect();
        LpOutcome::Optimal { value, x }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self.maximize(&vec![Rational::zero(); self.n]), LpOutcome::Infeasible)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// columns at or beyond this index may not enter
    allowed: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.rows[r][e].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let f = self.rows[i][e].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = e;
    }

    /// Maximizes `cost·x` from the current basic feasible solution;
    /// `None` when unbounded.
    fn run(&mut self, cost: &[Rational]) -> Option<Rational> {
        loop {
            // reduced costs d_j = c_j − c_B·B^{-1}A_j
            let mut entering = None;
            for j in 0..self.allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[r][j].is_zero() {
                        d -= &cost[b] * &self.rows[r][j];
                    }
                }
                if d.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(e) = entering else {
                let mut value = Rational::zero();
                for (r, &b) in self.basis.iter().enumerate() {
                    value += &cost[b] * &self.rhs[r];
                }
                return Some(value);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][e];
                if a.is_positive() {
                    let ratio = &self.rhs[r] / a;
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let (r, _) = leave?;
            self.pivot(r, e);
        }
    }

    fn expel_artificials(&mut self, first_artificial: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= first_artificial {
                match (0..first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => {
                        self.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        // redundant equality
                        self.rows.remove(r);
                        self.rhs.remove(r);
                        self.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }
}
