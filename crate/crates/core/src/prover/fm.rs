//! Fourier–Motzkin elimination with multiplier tracking.
//!
//! Every derived row remembers the non-negative combination of input rows
//! that produced it, so a derived `0 <= -c` (or `0 < 0`) is a certificate.
//! Redundant rows are pruned with Chernikov's history bound. When no
//! contradiction appears, a point is rebuilt by back-substitution through
//! the recorded stages.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FarkasCertificate, LinearSystem, ProofOutcome, Relation};
use crate::rational::{int, Q};

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Q>,
    rhs: Q,
    strict: bool,
    /// Weight of each input constraint.
    mult: Vec<Q>,
}

impl Row {
    fn history(&self) -> usize {
        self.mult.iter().filter(|m| !m.is_zero()).count()
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn is_contradiction(&self) -> bool {
        self.is_trivial() && (self.rhs.is_negative() || (self.rhs.is_zero() && self.strict))
    }

    /// Scale-invariant key for deduplication.
    fn key(&self) -> (Vec<Q>, Q, bool) {
        let pivot = self.coeffs.iter().find(|c| !c.is_zero()).map(Signed::abs).unwrap_or_else(Q::one);
        (self.coeffs.iter().map(|c| c / &pivot).collect(), &self.rhs / &pivot, self.strict)
    }
}

/// Decide `system` exactly.
pub fn prove_infeasible(system: &LinearSystem) -> ProofOutcome {
    let width = system.variables().len();
    let count = system.constraints().len();
    let mut rows = Vec::new();
    for (i, c) in system.constraints().iter().enumerate() {
        let mut unit = vec![Q::zero(); count];
        unit[i] = Q::one();
        match c.relation {
            Relation::Le | Relation::Lt => rows.push(Row {
                coeffs: c.coeffs.clone(),
                rhs: c.rhs.clone(),
                strict: c.relation == Relation::Lt,
                mult: unit,
            }),
            Relation::Eq => {
                rows.push(Row { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), strict: false, mult: unit.clone() });
                rows.push(Row {
                    coeffs: c.coeffs.iter().map(|a| -a).collect(),
                    rhs: -&c.rhs,
                    strict: false,
                    mult: unit.iter().map(|a| -a).collect(),
                });
            }
        }
    }
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::new();
    let mut remaining: Vec<usize> = (0..width).collect();
    let mut eliminated = 0usize;
    loop {
        if let Some(bad) = rows.iter().find(|r| r.is_contradiction()) {
            return ProofOutcome::Infeasible(certificate(system, &bad.mult));
        }
        rows.retain(|r| !r.is_trivial());
        let Some(var) = pick_variable(&rows, &remaining) else {
            break;
        };
        remaining.retain(|&v| v != var);
        stages.push((var, rows.clone()));
        eliminated += 1;
        rows = eliminate(&rows, var, eliminated);
    }
    let point = back_substitute(width, &stages);
    assert!(system.satisfied_by(&point), "back-substituted point violates the system");
    ProofOutcome::Feasible(point)
}

/// The remaining variable with the fewest new rows, or `None` when no row mentions any.
fn pick_variable(rows: &[Row], remaining: &[usize]) -> Option<usize> {
    remaining
        .iter()
        .copied()
        .filter(|&v| rows.iter().any(|r| !r.coeffs[v].is_zero()))
        .min_by_key(|&v| {
            let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
            let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
            (pos * neg) as i64 - (pos + neg) as i64
        })
}

fn eliminate(rows: &[Row], var: usize, eliminated: usize) -> Vec<Row> {
    let mut out: Vec<Row> = rows.iter().filter(|r| r.coeffs[var].is_zero()).cloned().collect();
    let pos: Vec<&Row> = rows.iter().filter(|r| r.coeffs[var].is_positive()).collect();
    let neg: Vec<&Row> = rows.iter().filter(|r| r.coeffs[var].is_negative()).collect();
    for p in &pos {
        for n in &neg {
            let wp = -&n.coeffs[var];
            let wn = p.coeffs[var].clone();
            let combine = |a: &Q, b: &Q| &wp * a + &wn * b;
            let row = Row {
                coeffs: p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| combine(a, b)).collect(),
                rhs: combine(&p.rhs, &n.rhs),
                strict: p.strict || n.strict,
                mult: p.mult.iter().zip(&n.mult).map(|(a, b)| combine(a, b)).collect(),
            };
            // Chernikov: a row built from more than k + 1 inputs after k
            // eliminations is implied by the others.
            if row.history() <= eliminated + 1 || row.is_contradiction() {
                out.push(row);
            }
        }
    }
    let mut seen = HashSet::new();
    out.retain(|r| seen.insert(r.key()));
    out
}

fn back_substitute(width: usize, stages: &[(usize, Vec<Row>)]) -> Vec<Q> {
    let mut point = vec![Q::zero(); width];
    for (var, rows) in stages.iter().rev() {
        let mut lower: Option<(Q, bool)> = None;
        let mut upper: Option<(Q, bool)> = None;
        for r in rows {
            let c = &r.coeffs[*var];
            if c.is_zero() {
                continue;
            }
            let rest: Q = r
                .coeffs
                .iter()
                .enumerate()
                .filter(|(j, _)| j != var)
                .map(|(j, a)| a * &point[j])
                .sum();
            let bound = (&r.rhs - rest) / c;
            if c.is_positive() {
                if upper.as_ref().is_none_or(|(u, s)| bound < *u || (bound == *u && r.strict && !s)) {
                    upper = Some((bound, r.strict));
                }
            } else if lower.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && r.strict && !s)) {
                lower = Some((bound, r.strict));
            }
        }
        point[*var] = match (lower, upper) {
            (None, None) => Q::zero(),
            (Some((l, strict)), None) => {
                if strict {
                    l + Q::one()
                } else {
                    l
                }
            }
            (None, Some((u, strict))) => {
                if strict {
                    u - Q::one()
                } else {
                    u
                }
            }
            (Some((l, ls)), Some((u, us))) => {
                if !ls {
                    l
                } else if !us {
                    u
                } else {
                    (l + u) / int(2)
                }
            }
        };
    }
    point
}

/// Normalize multipliers to coprime integers and record the strict rows used.
fn certificate(system: &LinearSystem, mult: &[Q]) -> FarkasCertificate {
    let lcm = mult.iter().fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
    let ints: Vec<BigInt> = mult.iter().map(|m| m.numer() * (&lcm / m.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let divisor = if gcd.is_zero() { BigInt::one() } else { gcd };
    let multipliers: Vec<Q> = ints.iter().map(|v| Q::from_integer(v / &divisor)).collect();
    let strict = system
        .constraints()
        .iter()
        .enumerate()
        .filter(|(i, c)| c.relation == Relation::Lt && multipliers[*i].is_positive())
        .map(|(i, _)| i)
        .collect();
    FarkasCertificate { multipliers, strict }
}
