use proptest::prelude::*;

use delpezzo::binary_form::{resultant, BinaryForm};
use delpezzo::rational::{frac, int, Q};
use delpezzo::weierstrass::WeierstrassSurface;

/// `Π (x - r_i y)^{e_i}`.
fn from_roots(roots: &[(Q, usize)]) -> BinaryForm {
    roots.iter().fold(BinaryForm::from_ints(&[1]), |acc, (r, e)| {
        acc.mul(&BinaryForm::new(vec![int(1), -r.clone()]).pow(*e))
    })
}

fn root_strategy() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn small_form(degree: usize) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(-3i64..=3, degree + 1).prop_map(|c| BinaryForm::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn resultant_is_the_root_product(
        r in prop::collection::vec(root_strategy(), 1..4),
        s in prop::collection::vec(root_strategy(), 1..4),
    ) {
        let f = from_roots(&r.iter().map(|x| (x.clone(), 1)).collect::<Vec<_>>());
        let g = from_roots(&s.iter().map(|x| (x.clone(), 1)).collect::<Vec<_>>());
        let mut product = int(1);
        for a in &r {
            for b in &s {
                product *= a - b;
            }
        }
        prop_assert_eq!(resultant(&f, &g), product);
    }

    #[test]
    fn multiplicities_of_known_roots(roots in prop::collection::btree_map(-6i64..=6, 1usize..=3, 1..4), at_infinity in 0usize..=2) {
        let listed: Vec<(Q, usize)> = roots.iter().map(|(r, e)| (int(*r), *e)).collect();
        let mut f = from_roots(&listed);
        if at_infinity > 0 {
            f = f.mul(&BinaryForm::from_ints(&[0, 1]).pow(at_infinity));
        }
        let mut expected: Vec<usize> = roots.values().copied().collect();
        if at_infinity > 0 {
            expected.push(at_infinity);
        }
        expected.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(f.root_multiplicities(), expected.clone());
        prop_assert_eq!(f.distinct_root_count(), Some(expected.len()));
        prop_assert_eq!(f.squarefree_part().degree(), expected.len());
    }

    #[test]
    fn gcd_divides_both(f in small_form(4), g in small_form(3), h in small_form(2)) {
        prop_assume!(!h.is_zero() && !f.is_zero() && !g.is_zero());
        let a = f.mul(&h);
        let b = g.mul(&h);
        let d = a.gcd(&b);
        prop_assert!(d.divides(&a) && d.divides(&b));
        prop_assert!(h.divides(&d));
    }

    #[test]
    fn smoothness_is_invariant_under_unimodular_changes(
        a in small_form(4),
        b in small_form(6),
        m in (-2i64..=2, -2i64..=2, -2i64..=2),
    ) {
        let (p, q, r) = m;
        // (x, y) -> (x + p y, y) then (x, y) -> (x, r x + y) then a swap when q is odd.
        prop_assume!(WeierstrassSurface::new(a.clone(), b.clone()).is_ok());
        let s = WeierstrassSurface::new(a.clone(), b.clone()).unwrap();
        let change = |f: &BinaryForm| {
            let f = f.substitute(&int(1), &int(p), &int(0), &int(1));
            let f = f.substitute(&int(1), &int(0), &int(r), &int(1));
            if q % 2 != 0 { f.substitute(&int(0), &int(1), &int(1), &int(0)) } else { f }
        };
        let t = WeierstrassSurface::new(change(&a), change(&b)).unwrap();
        prop_assert_eq!(s.is_smooth(), t.is_smooth());
        if s.is_smooth() {
            prop_assert_eq!(s.has_cuspidal_member(), t.has_cuspidal_member());
        }
    }
}

#[test]
fn resultant_detects_common_roots() {
    let a = BinaryForm::from_ints(&[1, 0, 0, 0, 0]);
    let b = BinaryForm::from_ints(&[0, 0, 0, 0, 0, 0, 1]);
    assert_eq!(resultant(&a, &b), int(1));
    let b2 = BinaryForm::from_ints(&[0, 0, 0, 0, 0, 1, 0]);
    assert_eq!(resultant(&a, &b2), int(0));
}

#[test]
fn text_round_trip() {
    let f: BinaryForm = "3:1,-1/2,0,7".parse().unwrap();
    assert_eq!(f.to_string(), "3:1,-1/2,0,7");
    for bad in ["3:1,2", "x:1", "2:1,2,a", ":1"] {
        assert!(bad.parse::<BinaryForm>().is_err(), "{bad}");
    }
}
