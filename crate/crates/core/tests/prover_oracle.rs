use proptest::prelude::*;

use delpezzo::lct::{contact_ledger, lc_two_smooth_branches, lct_plane_singularity, resolution_ledger, PlaneSingularity};
use delpezzo::lp::{find_point, RowKind};
use delpezzo::prover::{
    check_certificate, lemma_bank, prove_infeasible, relaxation_probe, verify_lemma, FarkasCertificate, LinearSystem,
    ProofOutcome, Relation,
};
use delpezzo::rational::{frac, int, Q};

fn row_strategy(vars: usize) -> impl Strategy<Value = (Vec<i64>, u8, i64)> {
    (prop::collection::vec(-3i64..=3, vars), 0u8..5, -4i64..=4)
}

fn system_strategy() -> impl Strategy<Value = (usize, Vec<(Vec<i64>, u8, i64)>)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(row_strategy(n), 1..=12)))
}

fn build(n: usize, rows: &[(Vec<i64>, u8, i64)]) -> LinearSystem {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut s = LinearSystem::new(&names);
    for (c, kind, b) in rows {
        let relation = match kind {
            0 | 1 => Relation::Le,
            2 | 3 => Relation::Lt,
            _ => Relation::Eq,
        };
        s.add_row(c.iter().map(|&x| int(x)).collect(), relation, int(*b));
    }
    s
}

fn simplex_rows(s: &LinearSystem) -> Vec<(Vec<Q>, RowKind, Q)> {
    s.constraints()
        .iter()
        .map(|c| {
            let kind = match c.relation {
                Relation::Le => RowKind::Le,
                Relation::Lt => RowKind::Lt,
                Relation::Eq => RowKind::Eq,
            };
            (c.coeffs.clone(), kind, c.rhs.clone())
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn elimination_agrees_with_simplex((n, rows) in system_strategy()) {
        let s = build(n, &rows);
        let simplex = find_point(n, &simplex_rows(&s));
        if let Some(p) = &simplex {
            prop_assert!(s.satisfied_by(p));
        }
        match prove_infeasible(&s) {
            ProofOutcome::Infeasible(cert) => {
                prop_assert_eq!(check_certificate(&s, &cert), Ok(true));
                prop_assert!(simplex.is_none());
            }
            ProofOutcome::Feasible(p) => {
                prop_assert!(s.satisfied_by(&p));
                prop_assert!(simplex.is_some());
            }
        }
    }
}

#[test]
fn checker_rejects_bad_certificates() {
    let mut s = LinearSystem::new(&["t"]);
    s.constrain("t > 1").unwrap();
    s.constrain("t <= 1").unwrap();
    s.constrain("t = 5").unwrap();
    let good = FarkasCertificate { multipliers: vec![int(1), int(1), int(0)], strict: vec![0] };
    assert_eq!(check_certificate(&s, &good), Ok(true));
    let negative = FarkasCertificate { multipliers: vec![int(-1), int(-1), int(0)], strict: vec![] };
    assert_eq!(check_certificate(&s, &negative), Ok(false));
    let unbalanced = FarkasCertificate { multipliers: vec![int(2), int(1), int(0)], strict: vec![0] };
    assert_eq!(check_certificate(&s, &unbalanced), Ok(false));
    // t <= 1 and t = 5: 1·(t <= 1) - 1·(t = 5) gives 0 <= -4.
    let with_eq = FarkasCertificate { multipliers: vec![int(0), int(1), int(-1)], strict: vec![] };
    assert_eq!(check_certificate(&s, &with_eq), Ok(true));
}

#[test]
fn bank_certificates_survive_the_checker() {
    for lemma in lemma_bank() {
        let report = verify_lemma(&lemma.id).unwrap();
        assert!(report.verified(), "{}", lemma.id);
        for (case, encoded) in report.cases.iter().zip(&lemma.cases) {
            let cert = case.certificate().unwrap();
            assert_eq!(check_certificate(&encoded.system, cert), Ok(true));
            assert!(cert.multipliers.iter().all(|m| m.is_integer()));
        }
        for tag in &lemma.probes {
            let probe = relaxation_probe(&lemma.id, tag).unwrap();
            let case = lemma.cases.iter().find(|c| c.name == probe.case).unwrap();
            let (relaxed, removed) = case.system.without_tag(tag);
            assert!(removed > 0);
            let point: Vec<Q> = probe.witness.iter().map(|(_, v)| v.clone()).collect();
            assert!(relaxed.satisfied_by(&point));
            assert!(!case.system.satisfied_by(&point));
        }
    }
}

#[test]
fn designated_probes() {
    let x = |probe: &delpezzo::prover::ProbeReport| probe.witness.iter().find(|(n, _)| n == "x").unwrap().1.clone();
    assert!(x(&relaxation_probe("local-1", "x<=1").unwrap()) > int(1));
    relaxation_probe("local-3", "a<=1/3+x/2").unwrap();
    relaxation_probe("local-8", "a<=2/3").unwrap();
}

/// Blow up the contact point `contact` times, tracking the coefficient of
/// the newest exceptional curve, which passes through the next centre.
fn ledger_oracle(c1: &Q, c2: &Q, contact: u32) -> bool {
    let mut previous = int(0);
    let mut worst = c1.clone().max(c2.clone());
    for _ in 0..contact {
        // multiplicity at the centre minus the discrepancy gain
        let e = c1 + c2 + &previous - int(1);
        worst = worst.max(e.clone());
        previous = e;
    }
    worst <= int(1)
}

#[test]
fn two_branch_criterion_matches_the_ledger() {
    for t in 1..=3u32 {
        for p in 0..=48 {
            for q in 0..=48 {
                let (c1, c2) = (frac(p, 24), frac(q, 24));
                assert_eq!(lc_two_smooth_branches(&c1, &c2, t), ledger_oracle(&c1, &c2, t), "{c1} {c2} {t}");
                let ledger = contact_ledger(&c1, &c2, t);
                assert_eq!(ledger.len(), t as usize);
            }
        }
    }
    assert!(lc_two_smooth_branches(&frac(1, 2), &frac(1, 2), 3));
    assert!(lc_two_smooth_branches(&int(1), &int(1), 1));
}

#[test]
fn plane_singularity_thresholds() {
    for (kind, value) in [(PlaneSingularity::Node, int(1)), (PlaneSingularity::Cusp, frac(5, 6))] {
        assert_eq!(lct_plane_singularity(kind), value);
        let ledger = resolution_ledger(kind).iter().map(|d| d.threshold()).min().unwrap();
        assert_eq!(ledger.min(int(1)), value);
    }
}
