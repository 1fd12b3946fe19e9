//! Log canonical thresholds of the plane curve singularities that occur in
//! anticanonical curves, and the lc test for two smooth branches.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::rational::{frac, int, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaneSingularity {
    /// `xy = 0`
    Node,
    /// `y^2 = x^3`
    Cusp,
}

impl PlaneSingularity {
    pub fn name(self) -> &'static str {
        match self {
            PlaneSingularity::Node => "node",
            PlaneSingularity::Cusp => "cusp",
        }
    }

    /// Exponents `(p, q)` of the quasi-homogeneous model `x^p + y^q`.
    fn exponents(self) -> (i64, i64) {
        match self {
            PlaneSingularity::Node => (2, 2),
            PlaneSingularity::Cusp => (2, 3),
        }
    }
}

impl fmt::Display for PlaneSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlaneSingularity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "node" => Ok(PlaneSingularity::Node),
            "cusp" => Ok(PlaneSingularity::Cusp),
            other => Err(format!("unknown singularity {other:?}")),
        }
    }
}

/// `lct_P(S, C)` for a curve with the given singularity at `P`: `min(1, 1/p + 1/q)`.
pub fn lct_plane_singularity(kind: PlaneSingularity) -> Q {
    let (p, q) = kind.exponents();
    let value = frac(1, p) + frac(1, q);
    value.min(Q::one())
}

/// One exceptional divisor of an embedded resolution: the multiplicity of the
/// curve's total transform along it, and its discrepancy `k` (`K_Y = f^*K_S + Σ k E`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalDivisor {
    pub multiplicity: i64,
    pub discrepancy: i64,
}

impl ExceptionalDivisor {
    /// The threshold imposed by this divisor: `(k + 1) / multiplicity`.
    pub fn threshold(&self) -> Q {
        frac(self.discrepancy + 1, self.multiplicity)
    }
}

/// The exceptional divisors of the minimal embedded resolution.
pub fn resolution_ledger(kind: PlaneSingularity) -> Vec<ExceptionalDivisor> {
    match kind {
        PlaneSingularity::Node => vec![ExceptionalDivisor { multiplicity: 2, discrepancy: 1 }],
        // Blow up the cusp (mult 2); the strict transform is tangent to E1; blow
        // up that point (E2 sees 2 + 1); then the triple point of C, E1, E2.
        PlaneSingularity::Cusp => vec![
            ExceptionalDivisor { multiplicity: 2, discrepancy: 1 },
            ExceptionalDivisor { multiplicity: 3, discrepancy: 2 },
            ExceptionalDivisor { multiplicity: 6, discrepancy: 4 },
        ],
    }
}

/// Whether `(S, c1 B1 + c2 B2)` is log canonical at a point where two smooth
/// branches meet with intersection multiplicity `contact`.
pub fn lc_two_smooth_branches(c1: &Q, c2: &Q, contact: u32) -> bool {
    assert!(contact >= 1, "contact order must be positive");
    let t = int(i64::from(contact));
    c1 <= &Q::one() && c2 <= &Q::one() && (c1 + c2) * &t <= &t + Q::one()
}

/// The klt version of [`lc_two_smooth_branches`]: every inequality strict.
pub fn klt_two_smooth_branches(c1: &Q, c2: &Q, contact: u32) -> bool {
    assert!(contact >= 1, "contact order must be positive");
    let t = int(i64::from(contact));
    c1 < &Q::one() && c2 < &Q::one() && (c1 + c2) * &t < &t + Q::one()
}

/// Coefficients `e_k = k (c1 + c2) - k` of the exceptional curves over the
/// contact point, after pulling back `K + c1 B1 + c2 B2`, for `k = 1..=contact`.
pub fn contact_ledger(c1: &Q, c2: &Q, contact: u32) -> Vec<Q> {
    (1..=i64::from(contact))
        .map(|k| int(k) * (c1 + c2) - int(k))
        .collect()
}

/// Whether every entry of a ledger is at most one.
pub fn ledger_is_lc(ledger: &[Q]) -> bool {
    ledger.iter().all(|e| e <= &Q::one())
}

/// Sum `c1 + c2` at which two smooth branches with the given contact stop being lc.
pub fn contact_threshold(contact: u32) -> Q {
    frac(i64::from(contact) + 1, i64::from(contact))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(lct_plane_singularity(PlaneSingularity::Node), int(1));
        assert_eq!(lct_plane_singularity(PlaneSingularity::Cusp), frac(5, 6));
    }

    #[test]
    fn ledgers_reproduce_thresholds() {
        for kind in [PlaneSingularity::Node, PlaneSingularity::Cusp] {
            let min = resolution_ledger(kind).iter().map(ExceptionalDivisor::threshold).min().unwrap();
            assert_eq!(min.min(Q::one()), lct_plane_singularity(kind));
        }
    }

    #[test]
    fn tangency_examples() {
        let half = frac(1, 2);
        assert!(lc_two_smooth_branches(&half, &half, 3));
        let two_thirds = frac(2, 3);
        assert!(lc_two_smooth_branches(&two_thirds, &two_thirds, 3));
        assert!(!lc_two_smooth_branches(&(&two_thirds + frac(1, 100)), &two_thirds, 3));
        assert!(lc_two_smooth_branches(&int(1), &int(1), 1));
        assert!(!klt_two_smooth_branches(&int(1), &int(1), 1));
        assert_eq!(contact_threshold(3), frac(4, 3));
    }
}
