//! Exact rational linear programming: a dense two-phase simplex with Bland's
//! anti-cycling rule. Instances here are small, so exactness wins over speed.

use num::{One, Signed, Zero};

use crate::ratio::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// maximize objective·x subject to the rows; variables are nonnegative unless
/// flagged free.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: Vec<Rat>,
    pub rows: Vec<(Vec<Rat>, Sense, Rat)>,
    pub free: Vec<bool>,
}

impl LpProblem {
    pub fn new(objective: Vec<Rat>) -> Self {
        let n = objective.len();
        LpProblem {
            objective,
            rows: Vec::new(),
            free: vec![false; n],
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<Rat>, sense: Sense, rhs: Rat) {
        assert_eq!(coeffs.len(), self.objective.len());
        self.rows.push((coeffs, sense, rhs));
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: Option<Rat>,
    pub point: Option<Vec<Rat>>,
}

struct Tableau {
    ncols: usize,
    rows: Vec<Vec<Rat>>, // each row has ncols + 1 entries, rhs last
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, zrow: &mut Vec<Rat>) {
        let piv = self.rows[r][c].clone();
        for e in self.rows[r].iter_mut() {
            *e /= &piv;
        }
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][c].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..=self.ncols {
                let sub = &factor * &self.rows[r][j];
                self.rows[i][j] -= sub;
            }
        }
        let factor = zrow[c].clone();
        if !factor.is_zero() {
            for j in 0..=self.ncols {
                let sub = &factor * &self.rows[r][j];
                zrow[j] -= sub;
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule simplex on the current zrow; maximizes. Returns false on
    /// unboundedness.
    fn run(&mut self, zrow: &mut Vec<Rat>, allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // entering: smallest-index allowed column with negative reduced cost
            let Some(c) = (0..self.ncols).find(|&j| allowed(j) && zrow[j].is_negative()) else {
                return true;
            };
            // leaving: min ratio, ties by smallest basis variable index
            let mut best: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][c].is_positive() {
                    let ratio = &self.rows[r][self.ncols] / &self.rows[r][c];
                    match &best {
                        None => best = Some((r, ratio)),
                        Some((br, bratio)) => {
                            if ratio < *bratio
                                || (ratio == *bratio && self.basis[r] < self.basis[*br])
                            {
                                best = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((r, _)) = best else {
                return false; // unbounded in direction c
            };
            self.pivot(r, c, zrow);
        }
    }
}

/// Exact optimum in rational arithmetic; deterministic by Bland's rule.
pub fn lp_solve(p: &LpProblem) -> LpOutcome {
    let nv = p.objective.len();
    // expanded variables: x_i >= 0, plus a negative part for free variables
    let mut col_of_var = Vec::with_capacity(nv);
    let mut neg_col_of_var = vec![None; nv];
    let mut ncols = 0usize;
    for i in 0..nv {
        col_of_var.push(ncols);
        ncols += 1;
        if p.free[i] {
            neg_col_of_var[i] = Some(ncols);
            ncols += 1;
        }
    }
    let nstruct = ncols;
    let m = p.rows.len();

    // constraint matrix with slacks/surplus, rhs made nonnegative
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut senses = Vec::with_capacity(m);
    for (coeffs, sense, rhs) in &p.rows {
        let flip = rhs.is_negative();
        let mut row = vec![Rat::zero(); nstruct];
        for i in 0..nv {
            let c = if flip { -&coeffs[i] } else { coeffs[i].clone() };
            row[col_of_var[i]] = c.clone();
            if let Some(ncol) = neg_col_of_var[i] {
                row[ncol] = -c;
            }
        }
        let s = match (sense, flip) {
            (Sense::Le, false) | (Sense::Ge, true) => Sense::Le,
            (Sense::Ge, false) | (Sense::Le, true) => Sense::Ge,
            (Sense::Eq, _) => Sense::Eq,
        };
        row.push(if flip { -rhs } else { rhs.clone() });
        rows.push(row);
        senses.push(s);
    }

    // slack/surplus columns
    let nslack = senses.iter().filter(|s| **s != Sense::Eq).count();
    let total_nonart = nstruct + nslack;
    let mut slack_idx = 0usize;
    let mut basis_candidate: Vec<Option<usize>> = vec![None; m];
    for (r, row) in rows.iter_mut().enumerate() {
        let rhs = row.pop().unwrap();
        row.resize(total_nonart, Rat::zero());
        match senses[r] {
            Sense::Le => {
                row[nstruct + slack_idx] = Rat::one();
                basis_candidate[r] = Some(nstruct + slack_idx);
                slack_idx += 1;
            }
            Sense::Ge => {
                row[nstruct + slack_idx] = -Rat::one();
                slack_idx += 1;
            }
            Sense::Eq => {}
        }
        row.push(rhs);
    }

    // artificials where no natural basic column exists
    let mut art_cols = Vec::new();
    let mut basis = Vec::with_capacity(m);
    for r in 0..m {
        if let Some(b) = basis_candidate[r] {
            basis.push(b);
        } else {
            let col = total_nonart + art_cols.len();
            art_cols.push(col);
            basis.push(col);
        }
    }
    let ncols_total = total_nonart + art_cols.len();
    for (r, row) in rows.iter_mut().enumerate() {
        let rhs = row.pop().unwrap();
        row.resize(ncols_total, Rat::zero());
        if basis[r] >= total_nonart {
            row[basis[r]] = Rat::one();
        }
        row.push(rhs);
    }

    let mut tab = Tableau {
        ncols: ncols_total,
        rows,
        basis,
    };

    // phase 1: maximize -sum(artificials)
    if !art_cols.is_empty() {
        let mut zrow = vec![Rat::zero(); ncols_total + 1];
        for &c in &art_cols {
            zrow[c] = Rat::one();
        }
        // make reduced costs of basic artificials zero
        for r in 0..m {
            if tab.basis[r] >= total_nonart {
                let row = tab.rows[r].clone();
                for j in 0..=ncols_total {
                    zrow[j] -= &row[j];
                }
            }
        }
        let ok = tab.run(&mut zrow, &|_| true);
        debug_assert!(ok, "phase 1 cannot be unbounded");
        if !zrow[ncols_total].is_zero() {
            return LpOutcome {
                status: LpStatus::Infeasible,
                value: None,
                point: None,
            };
        }
        // drive remaining basic artificials out
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= total_nonart {
                if let Some(c) = (0..total_nonart).find(|&j| !tab.rows[r][j].is_zero()) {
                    let mut dummy = vec![Rat::zero(); ncols_total + 1];
                    tab.pivot(r, c, &mut dummy);
                } else {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
    }

    // phase 2 objective over expanded columns
    let mut cost = vec![Rat::zero(); ncols_total];
    for i in 0..nv {
        cost[col_of_var[i]] = p.objective[i].clone();
        if let Some(ncol) = neg_col_of_var[i] {
            cost[ncol] = -&p.objective[i];
        }
    }
    let mut zrow = vec![Rat::zero(); ncols_total + 1];
    for j in 0..ncols_total {
        zrow[j] = -&cost[j];
    }
    for r in 0..tab.rows.len() {
        let cb = cost[tab.basis[r]].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..=ncols_total {
            let add = &cb * &tab.rows[r][j];
            zrow[j] += add;
        }
    }
    let allowed = |j: usize| j < total_nonart;
    if !tab.run(&mut zrow, &allowed) {
        return LpOutcome {
            status: LpStatus::Unbounded,
            value: None,
            point: None,
        };
    }

    // extract solution
    let mut xexp = vec![Rat::zero(); ncols_total];
    for r in 0..tab.rows.len() {
        xexp[tab.basis[r]] = tab.rows[r][ncols_total].clone();
    }
    let mut x = Vec::with_capacity(nv);
    for i in 0..nv {
        let mut v = xexp[col_of_var[i]].clone();
        if let Some(ncol) = neg_col_of_var[i] {
            v -= &xexp[ncol];
        }
        x.push(v);
    }
    let value: Rat = p
        .objective
        .iter()
        .zip(&x)
        .map(|(c, xi)| c * xi)
        .fold(Rat::zero(), |a, b| a + b);
    LpOutcome {
        status: LpStatus::Optimal,
        value: Some(value),
        point: Some(x),
    }
}
