//! The parameter substitutions that feed the local lemmas when bounding
//! `α(S, -K_S + λC)`, checked exactly at a given `λ`.
//!
//! For `λ > 1/2` the pair is rescaled by `s = 2/(1+2λ)` and
//! `x = (4-4λ)/(1+2λ)`. For `λ <= 1/2` the lemmas are applied with `x = 2λ`,
//! or `x = 5λ/3` with scale `5/6` on a cuspidal curve. Identities in the
//! coefficient `ε` are affine, so checking them at two values of each `ε`
//! is exact.

use num_traits::{One, Zero};

use crate::error::ProverError;
use crate::rational::{format_rational, frac, int, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionCheck {
    pub lemma: &'static str,
    pub x: Q,
    pub claim: String,
    pub holds: bool,
}

fn check(out: &mut Vec<SubstitutionCheck>, lemma: &'static str, x: &Q, claim: String, holds: bool) {
    out.push(SubstitutionCheck { lemma, x: x.clone(), claim, holds });
}

/// Whether `f(e) == g(e)` for `e` in {0, 1}.
fn affine_identity(f: impl Fn(&Q) -> Q, g: impl Fn(&Q) -> Q) -> bool {
    [Q::zero(), Q::one()].iter().all(|e| f(e) == g(e))
}

/// Whether `f(e1, e2) == g(e1, e2)` at (0,0), (1,0), (0,1).
fn affine_identity2(f: impl Fn(&Q, &Q) -> Q, g: impl Fn(&Q, &Q) -> Q) -> bool {
    let points = [(Q::zero(), Q::zero()), (Q::one(), Q::zero()), (Q::zero(), Q::one())];
    points.iter().all(|(a, b)| f(a, b) == g(a, b))
}

pub fn substitution_checks(lambda: &Q) -> Result<Vec<SubstitutionCheck>, ProverError> {
    if *lambda < Q::zero() || *lambda >= Q::one() {
        return Err(ProverError::LambdaOutOfRange(format_rational(lambda)));
    }
    let l = lambda;
    let one = Q::one();
    let mut out = Vec::new();
    if *l > frac(1, 2) {
        let s = int(2) / (&one + int(2) * l);
        let x = (int(4) - int(4) * l) / (&one + int(2) * l);
        let in_range = x > Q::zero() && x < one;
        for lemma in ["local-1", "local-4", "local-6", "local-8"] {
            check(&mut out, lemma, &x, format!("x = {} in (0, 1)", format_rational(&x)), in_range);
        }
        check(
            &mut out,
            "local-1",
            &x,
            "1 + λ - ε = (4/3 + x/6 - sε)/s".into(),
            affine_identity(|e| &one + l - e, |e| (frac(4, 3) + &x / int(6) - &s * e) / &s),
        );
        check(&mut out, "local-1", &x, "s(1 - λ) = x/2".into(), &s * (&one - l) == &x / int(2));
        check(&mut out, "local-4", &x, "s(1/3 + λ) = 8/9 - x/18".into(), &s * (frac(1, 3) + l) == frac(8, 9) - &x / int(18));
        check(&mut out, "local-4", &x, "s(1 + λ) = 4/3 + x/6".into(), &s * (&one + l) == frac(4, 3) + &x / int(6));
        check(
            &mut out,
            "local-4",
            &x,
            "1 - λ + ε = (x/2 + sε)/s".into(),
            affine_identity(|e| &one - l + e, |e| (&x / int(2) + &s * e) / &s),
        );
        check(
            &mut out,
            "local-6",
            &x,
            "(4/3 + 2x/3 - 2sε)/s = 2 - 2ε".into(),
            affine_identity(|e| (frac(4, 3) + int(2) * &x / int(3) - int(2) * &s * e) / &s, |e| int(2) - int(2) * e),
        );
        check(&mut out, "local-6", &x, "s(1 + 2λ)/3 = 2/3".into(), &s * (&one + int(2) * l) / int(3) == frac(2, 3));
        check(&mut out, "local-8", &x, "s(1 + λ) = 4/3 + x/6".into(), &s * (&one + l) == frac(4, 3) + &x / int(6));
        check(
            &mut out,
            "local-8",
            &x,
            "1 + ε1 - 2ε2 = ((2+x)/3 + sε1 - 2sε2)/s".into(),
            affine_identity2(
                |a, b| &one + a - int(2) * b,
                |a, b| ((int(2) + &x) / int(3) + &s * a - int(2) * &s * b) / &s,
            ),
        );
    } else {
        let x = int(2) * l;
        let in_range = x >= Q::zero() && x <= one;
        for lemma in ["local-2", "local-3", "local-5", "local-7"] {
            check(&mut out, lemma, &x, format!("x = 2λ = {} in [0, 1]", format_rational(&x)), in_range);
        }
        let xc = frac(5, 3) * l;
        check(
            &mut out,
            "local-1",
            &xc,
            format!("x = 5λ/3 = {} in [0, 5/6]", format_rational(&xc)),
            xc >= Q::zero() && xc <= frac(5, 6),
        );
        check(
            &mut out,
            "local-1",
            &xc,
            "(6/5)(5/6 + 5λ/6 - 5ε/6) = 1 + λ - ε".into(),
            affine_identity(|e| frac(6, 5) * (frac(5, 6) + frac(5, 6) * l - frac(5, 6) * e), |e| &one + l - e),
        );
        check(
            &mut out,
            "local-1",
            &xc,
            "(5/6)(1 + λ - ε) <= 4/3 + x/6 - 5ε/6".into(),
            [Q::zero(), Q::one()]
                .iter()
                .all(|e| frac(5, 6) * (&one + l - e) <= frac(4, 3) + &xc / int(6) - frac(5, 6) * e),
        );
    }
    Ok(out)
}
