//! Exact simplex for small dense covering programs:
//! minimize `1ᵀx` subject to `Ax ≥ 1`, `x ≥ 0`, with a 0/1 matrix `A`.
//!
//! Dense two-phase tableau over [`Rational`] entries with Bland's rule, so
//! termination is guaranteed and every value in the solution is exact.

use num::{One, Signed, Zero};

use crate::rat::Rational;
use crate::{Error, Result};

pub const MAX_VARS: usize = 5000;
pub const MAX_ROWS: usize = 64;

/// A covering LP instance. Column `j` covers the rows in `columns[j]`
/// (a bitmask over at most 64 rows).
#[derive(Clone, Debug)]
pub struct CoveringLP {
    rows: usize,
    columns: Vec<u64>,
}

impl CoveringLP {
    pub fn new(rows: usize, columns: Vec<u64>) -> Result<Self> {
        if rows > MAX_ROWS {
            return Err(Error::TooLarge { n: rows, cap: MAX_ROWS });
        }
        if columns.len() > MAX_VARS {
            return Err(Error::TooLarge { n: columns.len(), cap: MAX_VARS });
        }
        let mask = crate::set::full_mask(rows);
        for (j, c) in columns.iter().enumerate() {
            if c & !mask != 0 {
                return Err(Error::InvalidSpec(format!(
                    "column {j} covers rows outside 0..{rows}"
                )));
            }
        }
        Ok(CoveringLP { rows, columns })
    }

    pub fn num_vars(&self) -> usize {
        self.columns.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    /// Rows no column covers; any such row makes the program infeasible.
    pub fn uncoverable_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&i| self.columns.iter().all(|c| c & 1 << i == 0))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum LPSolution {
    Optimal { values: Vec<Rational>, objective: Rational },
    Infeasible,
}

impl LPSolution {
    pub fn objective(&self) -> Option<&Rational> {
        match self {
            LPSolution::Optimal { objective, .. } => Some(objective),
            LPSolution::Infeasible => None,
        }
    }
}

/// Exact optimum of the covering program. Verifies the solution against the
/// constraints before returning; an inexact or infeasible "optimum" is a bug
/// and reported as an invariant violation.
pub fn solve_covering(lp: &CoveringLP) -> Result<LPSolution> {
    if !lp.uncoverable_rows().is_empty() {
        return Ok(LPSolution::Infeasible);
    }
    let m = lp.rows;
    let n = lp.num_vars();
    if m == 0 {
        return Ok(LPSolution::Optimal { values: vec![Rational::zero(); n], objective: Rational::zero() });
    }

    let mut tab = Tableau::new(lp);
    tab.run_phase(Phase::One)?;
    if !tab.objective_value().is_zero() {
        // Cannot happen once empty rows are excluded, but the simplex should
        // not be trusted over a checked return.
        return Ok(LPSolution::Infeasible);
    }
    tab.drive_out_artificials();
    tab.run_phase(Phase::Two)?;

    let values = tab.solution(n);
    let objective: Rational = values.iter().sum();

    // Exactness check: every row covered with weight >= 1, all values >= 0.
    for v in &values {
        if v.is_negative() {
            return Err(invariant("negative value in simplex solution"));
        }
    }
    for i in 0..m {
        let mut cover = Rational::zero();
        for (j, c) in lp.columns.iter().enumerate() {
            if c & 1 << i != 0 {
                cover += &values[j];
            }
        }
        if cover < Rational::one() {
            return Err(invariant("simplex solution violates a covering constraint"));
        }
    }
    if objective != tab.objective_value() {
        return Err(invariant("objective mismatch at the final tableau"));
    }
    Ok(LPSolution::Optimal { values, objective })
}

fn invariant(detail: &str) -> Error {
    Error::InvariantViolation { claim: "exact simplex consistency", detail: detail.into() }
}

enum Phase {
    One,
    Two,
}

/// Dense tableau in canonical form. Column layout: `n` structural variables,
/// then `m` surplus, then `m` artificial; the right-hand side is kept
/// separately. `z` holds reduced costs and `z_rhs` the negated objective.
struct Tableau {
    n: usize,
    m: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    z: Vec<Rational>,
    z_rhs: Rational,
    allowed: usize,
}

impl Tableau {
    fn new(lp: &CoveringLP) -> Self {
        let m = lp.rows;
        let n = lp.num_vars();
        let total = n + 2 * m;
        let mut rows = vec![vec![Rational::zero(); total]; m];
        for (j, c) in lp.columns.iter().enumerate() {
            for (i, row) in rows.iter_mut().enumerate() {
                if c & 1 << i != 0 {
                    row[j] = Rational::one();
                }
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row[n + i] = -Rational::one(); // surplus
            row[n + m + i] = Rational::one(); // artificial
        }
        let rhs = vec![Rational::one(); m];
        let basis: Vec<usize> = (0..m).map(|i| n + m + i).collect();

        let mut tab = Tableau {
            n,
            m,
            rows,
            rhs,
            basis,
            z: vec![Rational::zero(); total],
            z_rhs: Rational::zero(),
            allowed: total,
        };
        tab.reset_costs(Phase::One);
        tab
    }

    /// Recomputes reduced costs `z = c − c_B B⁻¹A` for the given phase's
    /// cost vector against the current basis.
    fn reset_costs(&mut self, phase: Phase) {
        let total = self.n + 2 * self.m;
        let cost = |j: usize| -> Rational {
            let structural = j < self.n;
            let artificial = j >= self.n + self.m;
            match phase {
                Phase::One if artificial => Rational::one(),
                Phase::One => Rational::zero(),
                Phase::Two if structural => Rational::one(),
                Phase::Two => Rational::zero(),
            }
        };
        self.allowed = match phase {
            Phase::One => total,
            // Artificials may not re-enter in phase 2.
            Phase::Two => self.n + self.m,
        };
        let mut z: Vec<Rational> = (0..total).map(cost).collect();
        let mut z_rhs = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost(b);
            if cb.is_zero() {
                continue;
            }
            for j in 0..total {
                let delta = &cb * &self.rows[i][j];
                z[j] -= delta;
            }
            z_rhs -= &cb * &self.rhs[i];
        }
        self.z = z;
        self.z_rhs = z_rhs;
    }

    fn objective_value(&self) -> Rational {
        -self.z_rhs.clone()
    }

    fn run_phase(&mut self, phase: Phase) -> Result<()> {
        self.reset_costs(phase);
        loop {
            // Bland: entering column = lowest index with negative reduced cost.
            let Some(enter) = (0..self.allowed).find(|&j| self.z[j].is_negative()) else {
                return Ok(());
            };
            // Ratio test; ties go to the lowest basic variable index.
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                if self.rows[i][enter].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][enter];
                    let replace = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if replace {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((pivot_row, _)) = leave else {
                return Err(invariant("unbounded covering program"));
            };
            self.pivot(pivot_row, enter);
        }
    }

    fn pivot(&mut self, pivot_row: usize, enter: usize) {
        let scale = self.rows[pivot_row][enter].clone();
        for v in self.rows[pivot_row].iter_mut() {
            *v /= &scale;
        }
        self.rhs[pivot_row] /= &scale;

        let total = self.n + 2 * self.m;
        for i in 0..self.m {
            if i == pivot_row || self.rows[i][enter].is_zero() {
                continue;
            }
            let factor = self.rows[i][enter].clone();
            for j in 0..total {
                let delta = &factor * &self.rows[pivot_row][j];
                self.rows[i][j] -= delta;
            }
            let delta = &factor * &self.rhs[pivot_row];
            self.rhs[i] -= delta;
        }
        if !self.z[enter].is_zero() {
            let factor = self.z[enter].clone();
            for j in 0..total {
                let delta = &factor * &self.rows[pivot_row][j];
                self.z[j] -= delta;
            }
            let delta = &factor * &self.rhs[pivot_row];
            self.z_rhs -= delta;
        }
        self.basis[pivot_row] = enter;
    }

    /// Pivots basic artificials (all at value zero after phase 1) onto real
    /// columns; rows that are zero across real columns are redundant and
    /// harmless, their artificial simply stays at zero.
    fn drive_out_artificials(&mut self) {
        for i in 0..self.m {
            if self.basis[i] < self.n + self.m {
                continue;
            }
            if let Some(j) = (0..self.n + self.m).find(|&j| !self.rows[i][j].is_zero()) {
                self.pivot(i, j);
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut values = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                values[b] = self.rhs[i].clone();
            }
        }
        values
    }
}
