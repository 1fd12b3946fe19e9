//! Closed-form α-invariants: the conjectural piecewise formula, the formula
//! for `-K + λC` on a degree-one surface, the table of α(S) for smooth del
//! Pezzo surfaces, and the two λ-interval tests.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::cone::{PolarizationProfile, PolarizationType};
use crate::error::AlphaError;
use crate::lct::{klt_two_smooth_branches, lc_two_smooth_branches};
use crate::rational::{frac, int, rational_sqrt, Q};

/// `α_c` evaluated on the data of a profile, rescaled by `μ` when `μ != 1`.
pub fn alpha_conjecture(profile: &PolarizationProfile) -> Q {
    let normalized = alpha_c_formula(profile.type_tag, &profile.a, &profile.delta, &profile.s_a);
    // α(S, A) = μ · α(S, μA)
    normalized * &profile.mu
}

/// The nine-branch definition of `α_c` for `K + A = δC + Σ a_i E_i` (`μ = 1`).
///
/// `a` is sorted decreasingly; missing entries count as zero.
pub fn alpha_c_formula(type_tag: PolarizationType, a: &[Q], delta: &Q, s_a: &Q) -> Q {
    let zero = Q::zero();
    let at = |i: usize| a.get(i - 1).unwrap_or(&zero).clone();
    let (a1, a2, a3, a4, a7) = (at(1), at(2), at(3), at(4), at(7));
    let one = Q::one();
    let two = int(2);
    let three = int(3);
    let four = int(4);
    match type_tag {
        PolarizationType::P2 | PolarizationType::F1 => {
            let d = if type_tag == PolarizationType::F1 { delta.clone() } else { Q::zero() };
            if s_a > &four {
                one / (&two + &a1 + &d)
            } else if s_a > &one {
                let first = &two / (&two + &two * &a1 + s_a - &a2 - &a3 + &two * &d);
                let second = &four / (&three + &four * &a1 + &two * s_a - &a2 - &a3 - &a4 + &four * &d);
                let third = &three / (&two + &three * &a1 + s_a + &three * &d);
                first.max(second).max(third)
            } else {
                (&two / (&one + &two * &a1 + s_a + &two * &d)).min(one)
            }
        }
        PolarizationType::P1xP1 => {
            let d = delta;
            if s_a > &four {
                one / (&two + &a1 + d)
            } else if s_a > &one {
                let first = &two / (&two + s_a - &a7 - &a2 - &a3 + &two * d);
                let second = &four / (&three + &two * s_a - &two * &a7 - &a2 - &a3 - &a4 + &four * d);
                let third = &three / (&two + s_a - &a7 + &three * d);
                first.max(second).max(third)
            } else {
                (&two / (&one + s_a - &a7 + &two * d)).min(one)
            }
        }
    }
}

fn check_lambda(lambda: &Q) -> Result<(), AlphaError> {
    if lambda > &frac(-1, 3) && lambda < &Q::one() {
        Ok(())
    } else {
        Err(AlphaError::LambdaOutOfRange { lambda: lambda.clone(), range: "(-1/3, 1)" })
    }
}

fn check_inputs(lambda: &Q, n: u32, alpha_s: &Q) -> Result<(), AlphaError> {
    check_lambda(lambda)?;
    if !(1..=3).contains(&n) {
        return Err(AlphaError::Intersections(n));
    }
    if !alpha_s.is_positive() || alpha_s > &Q::one() {
        return Err(AlphaError::AlphaSOutOfRange(alpha_s.clone()));
    }
    Ok(())
}

/// `α(S, -K + λC)` for a (−1)-curve `C` with `n = |C ∩ C̃|` and `α_S = α(S)`.
pub fn alpha_theorem(lambda: &Q, n: u32, alpha_s: &Q) -> Result<Q, AlphaError> {
    check_inputs(lambda, n, alpha_s)?;
    let one_plus_two = Q::one() + int(2) * lambda;
    let other = if n >= 2 { int(2) } else { int(4) / (int(3) + int(3) * lambda) };
    if lambda.is_negative() {
        Ok((alpha_s / &one_plus_two).min(other))
    } else {
        let first = if n >= 2 { int(2) / &one_plus_two } else { other };
        Ok(alpha_s.clone().min(first))
    }
}

/// Geometric data selecting a row of the α(S) table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceFlag {
    Cuspidal,
    NoCuspidal,
    Eckardt,
    NoEckardt,
    Tacnodal,
    NoTacnodal,
    F1,
    P1xP1,
}

impl SurfaceFlag {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceFlag::Cuspidal => "cuspidal",
            SurfaceFlag::NoCuspidal => "no-cuspidal",
            SurfaceFlag::Eckardt => "eckardt",
            SurfaceFlag::NoEckardt => "no-eckardt",
            SurfaceFlag::Tacnodal => "tacnodal",
            SurfaceFlag::NoTacnodal => "no-tacnodal",
            SurfaceFlag::F1 => "f1",
            SurfaceFlag::P1xP1 => "p1xp1",
        }
    }

    const ALL: [SurfaceFlag; 8] = [
        SurfaceFlag::Cuspidal,
        SurfaceFlag::NoCuspidal,
        SurfaceFlag::Eckardt,
        SurfaceFlag::NoEckardt,
        SurfaceFlag::Tacnodal,
        SurfaceFlag::NoTacnodal,
        SurfaceFlag::F1,
        SurfaceFlag::P1xP1,
    ];
}

impl fmt::Display for SurfaceFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceFlag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SurfaceFlag::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown flag {s:?}"))
    }
}

/// `α(S)` for a smooth del Pezzo surface of the given degree.
///
/// Degrees 1, 2, 3 and 8 need exactly one of their two distinguishing
/// flags; other degrees take none.
pub fn alpha_del_pezzo(degree: u32, flags: &[SurfaceFlag]) -> Result<Q, AlphaError> {
    use SurfaceFlag::*;
    if !(1..=9).contains(&degree) {
        return Err(AlphaError::Degree(degree));
    }
    let pair: Option<(SurfaceFlag, SurfaceFlag, Q, Q)> = match degree {
        1 => Some((Cuspidal, NoCuspidal, frac(5, 6), int(1))),
        2 => Some((Tacnodal, NoTacnodal, frac(3, 4), frac(5, 6))),
        3 => Some((Eckardt, NoEckardt, frac(2, 3), frac(3, 4))),
        8 => Some((F1, P1xP1, frac(1, 3), frac(1, 2))),
        _ => None,
    };
    let bad = |reason: String| AlphaError::Flags { degree, reason };
    let mut distinct: Vec<SurfaceFlag> = flags.to_vec();
    distinct.sort();
    distinct.dedup();
    match pair {
        None => {
            if let Some(f) = distinct.first() {
                return Err(bad(format!("flag {f} does not apply")));
            }
            Ok(match degree {
                4 => frac(2, 3),
                5 | 6 => frac(1, 2),
                _ => frac(1, 3),
            })
        }
        Some((yes, no, yes_value, no_value)) => {
            if let Some(f) = distinct.iter().find(|f| **f != yes && **f != no) {
                return Err(bad(format!("flag {f} does not apply")));
            }
            match distinct.as_slice() {
                [f] if *f == yes => Ok(yes_value),
                [f] if *f == no => Ok(no_value),
                [] => Err(bad(format!("one of {yes} or {no} is required"))),
                _ => Err(bad(format!("{yes} and {no} are contradictory"))),
            }
        }
    }
}

/// The real number `p + q√r` with `r` a positive non-square integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticBound {
    pub p: Q,
    pub q: Q,
    pub r: Q,
}

impl QuadraticBound {
    pub fn new(p: Q, q: Q, r: i64) -> Self {
        let r = int(r);
        assert!(r.is_positive() && rational_sqrt(&r).is_none(), "r must be a positive non-square");
        QuadraticBound { p, q, r }
    }

    /// Compare `self` with the rational `x`, exactly.
    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        // sign of s + q√r with s = p - x
        let s = &self.p - x;
        let q = &self.q;
        let s_sign = s.cmp(&Q::zero());
        let q_sign = q.cmp(&Q::zero());
        if q_sign == Ordering::Equal || s_sign == q_sign {
            return if s_sign == Ordering::Equal { q_sign } else { s_sign };
        }
        if s_sign == Ordering::Equal {
            return q_sign;
        }
        // Opposite signs: the larger magnitude wins.
        let s2 = &s * &s;
        let q2r = q * q * &self.r;
        match s2.cmp(&q2r) {
            Ordering::Greater => s_sign,
            Ordering::Less => q_sign,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        crate::rational::to_f64(&self.p) + crate::rational::to_f64(&self.q) * crate::rational::to_f64(&self.r).sqrt()
    }
}

/// `3 - √10` and `(√10 - 1)/9`.
pub fn kstable_bounds() -> (QuadraticBound, QuadraticBound) {
    (
        QuadraticBound::new(int(3), int(-1), 10),
        QuadraticBound::new(frac(-1, 9), frac(1, 9), 10),
    )
}

/// `3 - √10 <= λ <= (√10 - 1)/9`.
pub fn kstable_range_contains(lambda: &Q) -> bool {
    let (lo, hi) = kstable_bounds();
    lo.cmp_rational(lambda) != Ordering::Greater && hi.cmp_rational(lambda) != Ordering::Less
}

/// `-1/4 <= λ <= 1/3`.
pub fn cylinder_range_contains(lambda: &Q) -> bool {
    lambda >= &frac(-1, 4) && lambda <= &frac(1, 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `(1/2 + λ)C + (1/2)C̃`, non-klt along `C` at the bound.
    SectionPair,
    /// An anticanonical curve computing `α(S)`.
    Anticanonical,
    /// `(1/2 + λ)C + (1/2)C̃` at the single point of `C ∩ C̃`, where the curves have contact 3.
    Tangency,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::SectionPair => "section-pair",
            WitnessKind::Anticanonical => "anticanonical",
            WitnessKind::Tangency => "tangency",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UpperBoundWitness {
    pub kind: WitnessKind,
    pub description: String,
    pub bound: Q,
    /// Coefficients of `C` and `C̃` after scaling the divisor by `bound`, with
    /// the contact order used to validate them.
    pub branches: Option<(Q, Q, u32)>,
}

impl UpperBoundWitness {
    /// Whether the scaled pair fails to be klt, so `bound` really bounds α.
    pub fn is_valid(&self) -> bool {
        match &self.branches {
            None => true,
            Some((c1, c2, contact)) => !klt_two_smooth_branches(c1, c2, *contact),
        }
    }

    /// Whether the scaled pair is still log canonical (the bound is attained).
    pub fn is_log_canonical(&self) -> bool {
        match &self.branches {
            None => true,
            Some((c1, c2, contact)) => lc_two_smooth_branches(c1, c2, *contact),
        }
    }
}

/// The upper bounds for `α(S, -K + λC)` whose minimum is [`alpha_theorem`].
pub fn upper_bound_witnesses(lambda: &Q, n: u32, alpha_s: &Q) -> Result<Vec<UpperBoundWitness>, AlphaError> {
    check_inputs(lambda, n, alpha_s)?;
    if lambda.is_negative() {
        return Err(AlphaError::LambdaOutOfRange { lambda: lambda.clone(), range: "[0, 1)" });
    }
    let half = frac(1, 2);
    let on_c = &half + lambda;
    let section_bound = int(2) / (Q::one() + int(2) * lambda);
    // The largest contact order among the points of C ∩ C̃ (the local numbers sum to 3).
    let worst_contact = 4 - n;
    let mut out = vec![
        UpperBoundWitness {
            kind: WitnessKind::SectionPair,
            description: "(1/2+lambda)C + (1/2)C~ has coefficient 1 along C".into(),
            branches: Some((&section_bound * &on_c, &section_bound * &half, worst_contact)),
            bound: section_bound,
        },
        UpperBoundWitness {
            kind: WitnessKind::Anticanonical,
            description: "a member of |-K| computing alpha(S)".into(),
            bound: alpha_s.clone(),
            branches: None,
        },
    ];
    if n == 1 {
        let mu = int(4) / (int(3) + int(3) * lambda);
        out.push(UpperBoundWitness {
            kind: WitnessKind::Tangency,
            description: "(1/2+lambda)C + (1/2)C~ at the point where C and C~ have contact 3".into(),
            branches: Some((&mu * &on_c, &mu * &half, 3)),
            bound: mu,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(a1: Q, s_a: Q) -> Q {
        let mut a = vec![a1];
        a.resize(8, Q::zero());
        alpha_c_formula(PolarizationType::P2, &a, &Q::zero(), &s_a)
    }

    #[test]
    fn conjecture_examples() {
        let lambda = frac(1, 2);
        assert_eq!(p2(lambda, Q::zero()), int(1));
        assert_eq!(p2(frac(9, 10), Q::zero()), frac(5, 7));
        let mut a = vec![frac(1, 2)];
        a.resize(7, Q::zero());
        assert_eq!(alpha_c_formula(PolarizationType::F1, &a, &frac(1, 4), &int(5)), frac(4, 11));
        let halves = vec![frac(1, 2); 8];
        assert_eq!(alpha_c_formula(PolarizationType::P2, &halves, &Q::zero(), &frac(7, 2)), frac(3, 7));
    }

    #[test]
    fn theorem_examples() {
        assert_eq!(alpha_theorem(&int(0), 1, &int(1)).unwrap(), int(1));
        assert_eq!(alpha_theorem(&frac(1, 2), 1, &int(1)).unwrap(), frac(8, 9));
        assert_eq!(alpha_theorem(&frac(1, 2), 3, &int(1)).unwrap(), int(1));
        assert_eq!(alpha_theorem(&frac(-1, 5), 2, &frac(5, 6)).unwrap(), frac(25, 18));
        assert!(alpha_theorem(&int(1), 1, &int(1)).is_err());
        assert!(alpha_theorem(&frac(-1, 3), 1, &int(1)).is_err());
        assert!(alpha_theorem(&int(0), 4, &int(1)).is_err());
        assert!(alpha_theorem(&int(0), 1, &int(0)).is_err());
    }

    #[test]
    fn table() {
        use SurfaceFlag::*;
        assert_eq!(alpha_del_pezzo(1, &[NoCuspidal]).unwrap(), int(1));
        assert_eq!(alpha_del_pezzo(1, &[Cuspidal]).unwrap(), frac(5, 6));
        assert_eq!(alpha_del_pezzo(4, &[]).unwrap(), frac(2, 3));
        assert_eq!(alpha_del_pezzo(8, &[P1xP1]).unwrap(), frac(1, 2));
        assert_eq!(alpha_del_pezzo(9, &[]).unwrap(), frac(1, 3));
        assert!(alpha_del_pezzo(1, &[]).is_err());
        assert!(alpha_del_pezzo(1, &[Cuspidal, NoCuspidal]).is_err());
        assert!(alpha_del_pezzo(4, &[Cuspidal]).is_err());
        assert!(alpha_del_pezzo(0, &[]).is_err());
    }

    #[test]
    fn intervals() {
        assert!(kstable_range_contains(&int(0)));
        assert!(kstable_range_contains(&frac(1, 5)));
        assert!(!kstable_range_contains(&frac(1, 4)));
        assert!(!kstable_range_contains(&frac(-1, 6)));
        assert!(cylinder_range_contains(&frac(1, 3)));
        assert!(cylinder_range_contains(&frac(-1, 4)));
        assert!(!cylinder_range_contains(&frac(1, 2)));
    }

    #[test]
    fn witnesses() {
        let ws = upper_bound_witnesses(&frac(1, 2), 1, &int(1)).unwrap();
        let bounds: Vec<Q> = ws.iter().map(|w| w.bound.clone()).collect();
        assert_eq!(bounds, vec![int(1), int(1), frac(8, 9)]);
        let tangency = &ws[2];
        let (c1, c2, _) = tangency.branches.clone().unwrap();
        assert_eq!(c1 + c2, frac(4, 3));
        assert!(tangency.is_valid() && tangency.is_log_canonical());
        let ws = upper_bound_witnesses(&int(0), 3, &int(1)).unwrap();
        assert_eq!(ws.iter().map(|w| w.bound.clone()).min().unwrap(), int(1));
    }
}
