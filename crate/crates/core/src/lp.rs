//! Exact-rational linear programming.
//!
//! A two-phase revised simplex with Bland's rule, so it terminates on
//! degenerate problems. Every answer carries evidence that can be checked
//! independently of the solver: a primal point, a dual vector, or a Farkas
//! vector `z` with `zᵀA >= 0` and `zᵀb < 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{int, Q};

/// `minimize objective·x` subject to `rows·x = rhs`, with `x_j >= 0`
/// wherever `nonneg[j]` holds and `x_j` free otherwise.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: Vec<Q>,
    pub rows: Vec<Vec<Q>>,
    pub rhs: Vec<Q>,
    pub nonneg: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q, duals: Vec<Q> },
    /// `z` with `zᵀA_j >= 0` on non-negative columns, `= 0` on free ones, and `zᵀb < 0`.
    Infeasible { farkas: Vec<Q> },
    /// A feasible `x` and a direction `ray` with `A·ray = 0` and `objective·ray < 0`.
    Unbounded { x: Vec<Q>, ray: Vec<Q> },
}

impl LpProblem {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars();
        assert_eq!(self.nonneg.len(), n, "nonneg flags must match the variable count");
        assert_eq!(self.rows.len(), self.rhs.len(), "row count must match rhs length");
        for row in &self.rows {
            assert_eq!(row.len(), n, "row length must match the variable count");
        }
        // Free variables become x = x⁺ - x⁻.
        let mut split: Vec<(usize, bool)> = Vec::new();
        for (j, &nonneg) in self.nonneg.iter().enumerate() {
            split.push((j, true));
            if !nonneg {
                split.push((j, false));
            }
        }
        let columns: Vec<Vec<Q>> = split
            .iter()
            .map(|&(j, plus)| {
                self.rows.iter().map(|r| if plus { r[j].clone() } else { -&r[j] }).collect()
            })
            .collect();
        let costs: Vec<Q> = split
            .iter()
            .map(|&(j, plus)| if plus { self.objective[j].clone() } else { -&self.objective[j] })
            .collect();
        let simplex = Simplex::new(columns, self.rhs.clone());
        let fold = |v: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); n];
            for (k, &(j, plus)) in split.iter().enumerate() {
                if plus {
                    out[j] += &v[k];
                } else {
                    out[j] -= &v[k];
                }
            }
            out
        };
        match simplex.phase_one() {
            Err(farkas) => LpOutcome::Infeasible { farkas },
            Ok(basis) => match simplex.minimize(basis, &costs) {
                PhaseTwo::Optimal { x, value, duals } => LpOutcome::Optimal { x: fold(&x), value, duals },
                PhaseTwo::Unbounded { x, ray } => LpOutcome::Unbounded { x: fold(&x), ray: fold(&ray) },
            },
        }
    }
}

/// Standard-form data `A x = b, x >= 0`, stored column-major.
#[derive(Clone, Debug)]
pub struct Simplex {
    columns: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    /// Rows with negative rhs are negated internally; `+1` or `-1` per row.
    signs: Vec<Q>,
    /// Each column as integer numerators over a common positive denominator, for pricing.
    scaled: Vec<(Vec<BigInt>, BigInt)>,
}

/// A primal-feasible basis, reusable across objectives on the same constraints.
#[derive(Clone, Debug)]
pub struct FeasibleBasis {
    /// `basic[r] < n` is an original column; `n + i` is the artificial of row `i`.
    basic: Vec<usize>,
    inverse: Vec<Vec<Q>>,
    values: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PhaseTwo {
    Optimal { x: Vec<Q>, value: Q, duals: Vec<Q> },
    Unbounded { x: Vec<Q>, ray: Vec<Q> },
}

enum Step {
    Optimal,
    Unbounded(usize),
    Pivoted,
}

impl Simplex {
    pub fn new(columns: Vec<Vec<Q>>, rhs: Vec<Q>) -> Self {
        let m = rhs.len();
        assert!(columns.iter().all(|c| c.len() == m), "column length must equal row count");
        let signs: Vec<Q> = rhs.iter().map(|b| if b.is_negative() { int(-1) } else { Q::one() }).collect();
        let columns: Vec<Vec<Q>> = columns
            .into_iter()
            .map(|c| c.into_iter().zip(&signs).map(|(a, s)| a * s).collect())
            .collect();
        let rhs = rhs.iter().zip(&signs).map(|(b, s)| b * s).collect();
        let scaled = columns.iter().map(|c| integer_form(c)).collect();
        Simplex { columns, rhs, signs, scaled }
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    fn column(&self, j: usize) -> Vec<Q> {
        if j < self.num_cols() {
            self.columns[j].clone()
        } else {
            let mut unit = vec![Q::zero(); self.num_rows()];
            unit[j - self.num_cols()] = Q::one();
            unit
        }
    }

    fn dot_column(&self, y: &[Q], j: usize) -> Q {
        if j < self.num_cols() {
            let mut acc = Q::zero();
            for (yi, a) in y.iter().zip(&self.columns[j]) {
                if !a.is_zero() && !yi.is_zero() {
                    acc += yi * a;
                }
            }
            acc
        } else {
            y[j - self.num_cols()].clone()
        }
    }

    /// Find a feasible basis, or a Farkas vector in the caller's row signs.
    pub fn phase_one(&self) -> Result<FeasibleBasis, Vec<Q>> {
        let m = self.num_rows();
        let n = self.num_cols();
        let mut basis = FeasibleBasis {
            basic: (0..m).map(|i| n + i).collect(),
            inverse: (0..m)
                .map(|i| (0..m).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                .collect(),
            values: self.rhs.clone(),
        };
        let cost = |j: usize| if j >= n { Q::one() } else { Q::zero() };
        loop {
            match self.step(&mut basis, &cost, n + m) {
                Step::Optimal => break,
                Step::Pivoted => {}
                Step::Unbounded(_) => unreachable!("phase one objective is bounded below by zero"),
            }
        }
        let infeasibility: Q = basis
            .basic
            .iter()
            .zip(&basis.values)
            .filter(|(&j, _)| j >= n)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            let y = self.duals(&basis, &cost);
            // y·A'_j <= 0 and y·b' > 0 for the sign-adjusted rows.
            let farkas = y.iter().zip(&self.signs).map(|(yi, s)| -(yi * s)).collect();
            return Err(farkas);
        }
        self.drive_out_artificials(&mut basis);
        Ok(basis)
    }

    fn drive_out_artificials(&self, basis: &mut FeasibleBasis) {
        let n = self.num_cols();
        for r in 0..self.num_rows() {
            if basis.basic[r] < n {
                continue;
            }
            let entering = (0..n).find(|&j| !self.dot_column(&basis.inverse[r], j).is_zero());
            if let Some(j) = entering {
                let d = self.solve_column(basis, j);
                pivot(basis, r, j, &d);
            }
            // Otherwise the row is redundant and its artificial stays at zero.
        }
    }

    /// Minimize `costs·x` from a feasible basis. Artificial columns never re-enter.
    pub fn minimize(&self, mut basis: FeasibleBasis, costs: &[Q]) -> PhaseTwo {
        let n = self.num_cols();
        assert_eq!(costs.len(), n);
        let cost = |j: usize| if j < n { costs[j].clone() } else { Q::zero() };
        loop {
            match self.step(&mut basis, &cost, n) {
                Step::Pivoted => {}
                Step::Optimal => {
                    let x = self.primal(&basis);
                    let value = x.iter().zip(costs).map(|(a, b)| a * b).sum();
                    let y = self.duals(&basis, &cost);
                    let duals = y.iter().zip(&self.signs).map(|(yi, s)| yi * s).collect();
                    return PhaseTwo::Optimal { x, value, duals };
                }
                Step::Unbounded(j) => {
                    let d = self.solve_column(&basis, j);
                    let mut ray = vec![Q::zero(); n];
                    ray[j] = Q::one();
                    for (r, &b) in basis.basic.iter().enumerate() {
                        if b < n {
                            ray[b] = -&d[r];
                        }
                    }
                    return PhaseTwo::Unbounded { x: self.primal(&basis), ray };
                }
            }
        }
    }

    fn primal(&self, basis: &FeasibleBasis) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.num_cols()];
        for (r, &b) in basis.basic.iter().enumerate() {
            if b < self.num_cols() {
                x[b] = basis.values[r].clone();
            }
        }
        x
    }

    fn duals(&self, basis: &FeasibleBasis, cost: &impl Fn(usize) -> Q) -> Vec<Q> {
        let m = self.num_rows();
        let mut y = vec![Q::zero(); m];
        for (r, &b) in basis.basic.iter().enumerate() {
            let c = cost(b);
            if c.is_zero() {
                continue;
            }
            for (yj, inv) in y.iter_mut().zip(&basis.inverse[r]) {
                if !inv.is_zero() {
                    *yj += &c * inv;
                }
            }
        }
        y
    }

    fn solve_column(&self, basis: &FeasibleBasis, j: usize) -> Vec<Q> {
        let col = self.column(j);
        basis
            .inverse
            .iter()
            .map(|row| {
                let mut acc = Q::zero();
                for (a, b) in row.iter().zip(&col) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Whether column `j` has negative reduced cost, given `y = ys / yd`.
    fn prices_negative(&self, j: usize, c: &Q, y: &[Q], ys: &[BigInt], yd: &BigInt) -> bool {
        if j >= self.num_cols() {
            return (c - &y[j - self.num_cols()]).is_negative();
        }
        let (nums, d) = &self.scaled[j];
        let mut dot = BigInt::zero();
        for (a, b) in ys.iter().zip(nums) {
            if !a.is_zero() && !b.is_zero() {
                dot += a * b;
            }
        }
        // c - dot/(yd d) < 0  <=>  numer(c) yd d < denom(c) dot
        c.numer() * yd * d < c.denom() * dot
    }

    /// One Bland's-rule iteration over columns `0..limit`.
    fn step(&self, basis: &mut FeasibleBasis, cost: &impl Fn(usize) -> Q, limit: usize) -> Step {
        let y = self.duals(basis, cost);
        let (ys, yd) = integer_form(&y);
        let entering = (0..limit)
            .filter(|j| !basis.basic.contains(j))
            .find(|&j| self.prices_negative(j, &cost(j), &y, &ys, &yd));
        let Some(j) = entering else {
            return Step::Optimal;
        };
        let d = self.solve_column(basis, j);
        let mut leave: Option<(usize, Q)> = None;
        for (r, dr) in d.iter().enumerate() {
            if !dr.is_positive() {
                continue;
            }
            let ratio = &basis.values[r] / dr;
            let better = match &leave {
                None => true,
                Some((best_r, best)) => {
                    ratio < *best || (ratio == *best && basis.basic[r] < basis.basic[*best_r])
                }
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        match leave {
            None => Step::Unbounded(j),
            Some((r, _)) => {
                pivot(basis, r, j, &d);
                Step::Pivoted
            }
        }
    }
}

/// `v = nums / den` with integer `nums` and `den > 0`.
fn integer_form(v: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let nums = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    (nums, den)
}

fn pivot(basis: &mut FeasibleBasis, r: usize, entering: usize, d: &[Q]) {
    let p = d[r].clone();
    for v in basis.inverse[r].iter_mut() {
        *v /= &p;
    }
    basis.values[r] /= &p;
    let pivot_row = basis.inverse[r].clone();
    let pivot_value = basis.values[r].clone();
    for (i, di) in d.iter().enumerate() {
        if i == r || di.is_zero() {
            continue;
        }
        for (v, pr) in basis.inverse[i].iter_mut().zip(&pivot_row) {
            if !pr.is_zero() {
                *v -= di * pr;
            }
        }
        basis.values[i] -= di * &pivot_value;
    }
    basis.basic[r] = entering;
}

/// Check a Farkas vector for `A x = b, x >= 0` (`columns` column-major).
pub fn verify_farkas(columns: &[Vec<Q>], rhs: &[Q], z: &[Q]) -> bool {
    let dot = |a: &[Q]| -> Q { a.iter().zip(z).map(|(p, q)| p * q).sum() };
    z.len() == rhs.len() && columns.iter().all(|c| !dot(c).is_negative()) && dot(rhs).is_negative()
}

/// Check `A x = b, x >= 0` exactly.
pub fn verify_primal(columns: &[Vec<Q>], rhs: &[Q], x: &[Q]) -> bool {
    if x.len() != columns.len() || x.iter().any(Signed::is_negative) {
        return false;
    }
    (0..rhs.len()).all(|i| {
        let lhs: Q = columns.iter().zip(x).map(|(c, xj)| &c[i] * xj).sum();
        lhs == rhs[i]
    })
}

/// Relation of a row in a mixed system, for [`find_point`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Lt,
    Eq,
}

/// Decide a mixed system `a·x (<= | < | =) b` over free variables by simplex,
/// returning a satisfying point when one exists. Strict rows are handled by
/// maximizing a common slack `eps <= 1` and requiring `eps > 0`.
pub fn find_point(num_vars: usize, rows: &[(Vec<Q>, RowKind, Q)]) -> Option<Vec<Q>> {
    let inequalities: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].1 != RowKind::Eq).collect();
    let has_strict = rows.iter().any(|r| r.1 == RowKind::Lt);
    // Layout: x (free), one slack per inequality, eps, and eps's own slack.
    let eps = num_vars + inequalities.len();
    let total = eps + 2;
    let mut lp_rows = Vec::new();
    let mut rhs = Vec::new();
    for (i, (coeffs, kind, b)) in rows.iter().enumerate() {
        assert_eq!(coeffs.len(), num_vars);
        let mut row = vec![Q::zero(); total];
        row[..num_vars].clone_from_slice(coeffs);
        if let Some(k) = inequalities.iter().position(|&q| q == i) {
            row[num_vars + k] = Q::one();
        }
        if *kind == RowKind::Lt {
            row[eps] = Q::one();
        }
        lp_rows.push(row);
        rhs.push(b.clone());
    }
    let mut cap = vec![Q::zero(); total];
    cap[eps] = Q::one();
    cap[eps + 1] = Q::one();
    lp_rows.push(cap);
    rhs.push(Q::one());
    let mut objective = vec![Q::zero(); total];
    objective[eps] = int(-1);
    let nonneg = (0..total).map(|j| j >= num_vars).collect();
    let problem = LpProblem { objective, rows: lp_rows, rhs, nonneg };
    match problem.solve() {
        LpOutcome::Optimal { x, .. } => {
            if has_strict && !x[eps].is_positive() {
                None
            } else {
                Some(x[..num_vars].to_vec())
            }
        }
        LpOutcome::Infeasible { .. } => None,
        LpOutcome::Unbounded { .. } => unreachable!("eps is capped at one"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn small_optimum_with_duals() {
        // min -x - y  s.t.  x + 2y + s1 = 4, 3x + y + s2 = 6
        let problem = LpProblem {
            objective: ints(&[-1, -1, 0, 0]),
            rows: vec![ints(&[1, 2, 1, 0]), ints(&[3, 1, 0, 1])],
            rhs: ints(&[4, 6]),
            nonneg: vec![true; 4],
        };
        match problem.solve() {
            LpOutcome::Optimal { x, value, duals } => {
                assert_eq!(x[0], frac(8, 5));
                assert_eq!(x[1], frac(6, 5));
                assert_eq!(value, frac(-14, 5));
                // Strong duality: y·b equals the optimum.
                let yb: Q = duals.iter().zip(&problem.rhs).map(|(a, b)| a * b).sum();
                assert_eq!(yb, value);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_gives_checkable_farkas() {
        // x + y = -1 with x, y >= 0.
        let columns = vec![ints(&[1]), ints(&[1])];
        let rhs = ints(&[-1]);
        let simplex = Simplex::new(columns.clone(), rhs.clone());
        let z = simplex.phase_one().unwrap_err();
        assert!(verify_farkas(&columns, &rhs, &z));
    }

    #[test]
    fn unbounded_is_reported() {
        let problem = LpProblem {
            objective: ints(&[-1, 0]),
            rows: vec![ints(&[1, -1])],
            rhs: ints(&[0]),
            nonneg: vec![true; 2],
        };
        assert!(matches!(problem.solve(), LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn free_variables_are_split() {
        // min x  s.t.  x - s = -3, s >= 0, x free  =>  x = -3.
        let problem = LpProblem {
            objective: ints(&[1, 0]),
            rows: vec![ints(&[1, -1])],
            rhs: ints(&[-3]),
            nonneg: vec![false, true],
        };
        match problem.solve() {
            LpOutcome::Optimal { x, .. } => assert_eq!(x[0], int(-3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_rows_survive_phase_one() {
        let columns = vec![ints(&[1, 2]), ints(&[1, 2])];
        let rhs = ints(&[1, 2]);
        let simplex = Simplex::new(columns.clone(), rhs.clone());
        let basis = simplex.phase_one().unwrap();
        match simplex.minimize(basis, &ints(&[1, 2])) {
            PhaseTwo::Optimal { x, value, .. } => {
                assert!(verify_primal(&columns, &rhs, &x));
                assert_eq!(value, int(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn strict_rows() {
        // t > 1, t <= 1: infeasible.  t >= 0: feasible.
        let rows = vec![(ints(&[-1]), RowKind::Lt, int(-1)), (ints(&[1]), RowKind::Le, int(1))];
        assert!(find_point(1, &rows).is_none());
        let rows = vec![(ints(&[-1]), RowKind::Le, int(0))];
        assert!(find_point(1, &rows).is_some());
        let rows = vec![(ints(&[1, 1]), RowKind::Eq, int(2)), (ints(&[1, -1]), RowKind::Lt, int(0))];
        let p = find_point(2, &rows).unwrap();
        assert_eq!(&p[0] + &p[1], int(2));
        assert!(p[0] < p[1]);
    }
}
