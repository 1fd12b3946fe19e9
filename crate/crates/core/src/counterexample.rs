//! The surface `w^2 = z^3 + x^4 z + y^6` polarized by `-K + λC`, where `C`
//! is the curve `z = 0, w = y^3`: the theorem's value of `α` against the
//! conjectural one.

use num_traits::{One, Zero};

use crate::alpha::{alpha_conjecture, alpha_theorem};
use crate::cone::{classify, PolarizationProfile};
use crate::error::{AlphaError, SurfaceError};
use crate::lattice::{canonical_class, PicardClass};
use crate::rational::Q;
use crate::weierstrass::WeierstrassSurface;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub lambda: Q,
    pub smooth: bool,
    pub cuspidal: bool,
    pub alpha_s: Q,
    /// `|C ∩ C̃|`.
    pub n_intersections: usize,
    pub profile: PolarizationProfile,
    pub alpha: Q,
    pub alpha_c: Q,
    pub conjecture_violated: bool,
}

/// `-K + λ e_1`, with `e_1` standing in for `C`.
pub fn polarization(lambda: &Q) -> PicardClass {
    -canonical_class() + lambda * &PicardClass::exceptional(1)
}

pub fn counterexample_report(lambda: &Q) -> Result<CounterexampleReport, AlphaError> {
    if *lambda < Q::zero() || *lambda >= Q::one() {
        return Err(AlphaError::LambdaOutOfRange { lambda: lambda.clone(), range: "[0, 1)" });
    }
    let surface = WeierstrassSurface::example();
    let smooth = surface.is_smooth();
    let cuspidal = surface.has_cuspidal_member()?;
    let alpha_s = surface.alpha()?;
    let pair = surface
        .find_square_sections()
        .into_iter()
        .next()
        .ok_or_else(|| SurfaceError::NotASection("no section pair with q = 0".into()))?;
    let n = pair.n_intersections as u32;
    let alpha = alpha_theorem(lambda, n, &alpha_s)?;
    let profile = classify(&polarization(lambda))?;
    let alpha_c = alpha_conjecture(&profile);
    Ok(CounterexampleReport {
        lambda: lambda.clone(),
        smooth,
        cuspidal,
        alpha_s,
        n_intersections: pair.n_intersections,
        conjecture_violated: alpha != alpha_c,
        profile,
        alpha,
        alpha_c,
    })
}
