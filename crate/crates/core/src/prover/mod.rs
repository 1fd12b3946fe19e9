//! Linear-arithmetic infeasibility proofs for the local lemmas.
//!
//! A [`LinearSystem`] is a conjunction of rows `a·v (<= | < | =) b` over named
//! rational variables. [`prove_infeasible`] decides it by Fourier–Motzkin
//! elimination and returns either a [`FarkasCertificate`] or a satisfying
//! point; [`check_certificate`] re-verifies a certificate from scratch.

mod bank;
mod expr;
mod fm;
mod substitution;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{ParseError, ProverError};
use crate::rational::{format_rational, Q};

pub use crate::lct::{
    contact_ledger, contact_threshold, lc_two_smooth_branches, lct_plane_singularity, resolution_ledger,
    ExceptionalDivisor, PlaneSingularity,
};
pub use bank::{lemma_bank, lemma_ids, relaxation_probe, verify_lemma, CaseReport, LemmaCase, LemmaEncoding, LemmaReport, ProbeReport};
pub use fm::prove_infeasible;
pub use substitution::{substitution_checks, SubstitutionCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        }
    }
}

/// `coeffs · v  relation  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
    /// Name used by relaxation probes; defaults to the source text without spaces.
    pub tag: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearSystem {
    variables: Vec<String>,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new<S: AsRef<str>>(variables: &[S]) -> Self {
        LinearSystem { variables: variables.iter().map(|v| v.as_ref().to_string()).collect(), constraints: Vec::new() }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn push(&mut self, constraint: Constraint) {
        assert_eq!(constraint.coeffs.len(), self.variables.len(), "constraint width must match the variables");
        self.constraints.push(constraint);
    }

    pub fn add_row(&mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) {
        let tag = format!("row{}", self.constraints.len());
        self.push(Constraint { coeffs, relation, rhs, tag, note: String::new() });
    }

    /// Add a constraint written like `2m + a <= 4/3 + x/6`. Accepts `<=`,
    /// `<`, `>=`, `>` and `=`.
    pub fn constrain(&mut self, text: &str) -> Result<(), ParseError> {
        self.constrain_tagged(text, None, "")
    }

    pub fn constrain_tagged(&mut self, text: &str, tag: Option<&str>, note: &str) -> Result<(), ParseError> {
        let (coeffs, relation, rhs) = expr::parse_constraint(text, &self.variables)?;
        let tag = tag.map(str::to_string).unwrap_or_else(|| text.split_whitespace().collect());
        self.push(Constraint { coeffs, relation, rhs, tag, note: note.to_string() });
        Ok(())
    }

    /// The system without every constraint tagged `tag`, and how many were removed.
    pub fn without_tag(&self, tag: &str) -> (LinearSystem, usize) {
        let kept: Vec<Constraint> = self.constraints.iter().filter(|c| c.tag != tag).cloned().collect();
        let removed = self.constraints.len() - kept.len();
        (LinearSystem { variables: self.variables.clone(), constraints: kept }, removed)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.constraints.iter().any(|c| c.tag == tag)
    }

    /// Whether `point` satisfies every constraint exactly.
    pub fn satisfied_by(&self, point: &[Q]) -> bool {
        point.len() == self.variables.len()
            && self.constraints.iter().all(|c| {
                let lhs: Q = c.coeffs.iter().zip(point).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Lt => lhs < c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn render(&self, c: &Constraint) -> String {
        let mut terms = Vec::new();
        for (coeff, name) in c.coeffs.iter().zip(&self.variables) {
            if coeff.is_zero() {
                continue;
            }
            let magnitude = coeff.abs();
            let sign = if coeff.is_negative() { "-" } else { "+" };
            let body = if magnitude == Q::from_integer(1.into()) {
                name.clone()
            } else {
                format!("{}*{}", format_rational(&magnitude), name)
            };
            terms.push((sign, body));
        }
        let mut lhs = String::new();
        for (i, (sign, body)) in terms.iter().enumerate() {
            match (i, *sign) {
                (0, "+") => lhs.push_str(body),
                (0, _) => lhs.push_str(&format!("-{body}")),
                (_, s) => lhs.push_str(&format!(" {s} {body}")),
            }
        }
        if lhs.is_empty() {
            lhs.push('0');
        }
        format!("{lhs} {} {}", c.relation.symbol(), format_rational(&c.rhs))
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(f, "{}", self.render(c))?;
        }
        Ok(())
    }
}

/// Multipliers, one per constraint, whose combination is `0 <= -c` with
/// `c > 0`, or `0 < 0` when a strict row carries positive weight.
/// Multipliers on `=` rows may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Q>,
    /// Strict constraints with positive weight.
    pub strict: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofOutcome {
    Infeasible(FarkasCertificate),
    Feasible(Vec<Q>),
}

impl ProofOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, ProofOutcome::Infeasible(_))
    }
}

/// Recombine the rows of `system` with the certificate's multipliers and
/// report whether the result is a contradiction.
pub fn check_certificate(system: &LinearSystem, cert: &FarkasCertificate) -> Result<bool, ProverError> {
    let n = system.constraints.len();
    if cert.multipliers.len() != n {
        return Err(ProverError::DimensionMismatch { expected: n, found: cert.multipliers.len() });
    }
    let width = system.variables.len();
    let mut combined = vec![Q::zero(); width];
    let mut rhs = Q::zero();
    let mut strict = false;
    for (c, y) in system.constraints.iter().zip(&cert.multipliers) {
        if y.is_zero() {
            continue;
        }
        if y.is_negative() && c.relation != Relation::Eq {
            return Ok(false);
        }
        for (acc, a) in combined.iter_mut().zip(&c.coeffs) {
            *acc += y * a;
        }
        rhs += y * &c.rhs;
        strict |= c.relation == Relation::Lt;
    }
    if combined.iter().any(|c| !c.is_zero()) {
        return Ok(false);
    }
    Ok(rhs.is_negative() || (rhs.is_zero() && strict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn system(vars: &[&str], rows: &[&str]) -> LinearSystem {
        let mut s = LinearSystem::new(vars);
        for r in rows {
            s.constrain(r).unwrap();
        }
        s
    }

    #[test]
    fn trivial_contradiction() {
        let s = system(&["t"], &["t > 1", "t <= 1"]);
        let ProofOutcome::Infeasible(cert) = prove_infeasible(&s) else { panic!("expected a certificate") };
        assert_eq!(cert.multipliers, vec![int(1), int(1)]);
        assert_eq!(check_certificate(&s, &cert), Ok(true));
        let zero = FarkasCertificate { multipliers: vec![int(0), int(0)], strict: vec![] };
        assert_eq!(check_certificate(&s, &zero), Ok(false));
        let short = FarkasCertificate { multipliers: vec![int(1)], strict: vec![] };
        assert!(check_certificate(&s, &short).is_err());
    }

    #[test]
    fn feasible_point() {
        let s = system(&["t"], &["t >= 0"]);
        assert_eq!(prove_infeasible(&s), ProofOutcome::Feasible(vec![int(0)]));
    }

    #[test]
    fn local_one_master_system() {
        let s = system(
            &["x", "a", "m", "T", "Tt"],
            &[
                "x >= 0",
                "x <= 1",
                "a >= 0",
                "m >= 0",
                "a <= x/2",
                "T <= 4/3 + x/6 - a",
                "2m <= T",
                "T >= 2m + Tt",
                "Tt > 3 - 4a - 2m",
                "Tt >= 0",
            ],
        );
        let ProofOutcome::Infeasible(cert) = prove_infeasible(&s) else { panic!("expected a certificate") };
        assert_eq!(check_certificate(&s, &cert), Ok(true));
    }

    #[test]
    fn equalities() {
        let s = system(&["u", "v"], &["u + v = 2", "u - v = 0", "u > 1"]);
        let ProofOutcome::Infeasible(cert) = prove_infeasible(&s) else { panic!("expected a certificate") };
        assert_eq!(check_certificate(&s, &cert), Ok(true));
        let s = system(&["u", "v"], &["u + v = 2", "u < v"]);
        let ProofOutcome::Feasible(p) = prove_infeasible(&s) else { panic!("expected a point") };
        assert!(s.satisfied_by(&p));
    }

    #[test]
    fn rendering() {
        let s = system(&["x", "a"], &["2*a - x/2 <= 1/3"]);
        assert_eq!(s.render(&s.constraints()[0]), "-1/2*x + 2*a <= 1/3");
        assert_eq!(s.constraints()[0].tag, "2*a-x/2<=1/3");
    }
}
