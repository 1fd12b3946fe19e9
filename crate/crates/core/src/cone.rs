//! The Mori cone of a degree-one del Pezzo surface, spanned by its 240
//! (−1)-classes, and the polarization types built on top of it.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::ConeError;
use crate::lattice::{
    canonical_class, enumerate_conic_classes, enumerate_minus_one_classes, CurveClassSet, PicardClass, RANK,
};
use crate::lp::{verify_farkas, verify_primal, FeasibleBasis, PhaseTwo, Simplex};
use crate::rational::{int, Q};

/// Result of a cone-membership test, with evidence either way.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Membership {
    /// Non-negative coefficients on the generators, in canonical order.
    Inside(Vec<Q>),
    /// A class `N` with `N·E >= 0` for every generator `E` and `N·v < 0`.
    Outside(PicardClass),
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolarizationType {
    P2,
    F1,
    P1xP1,
}

impl PolarizationType {
    pub fn name(self) -> &'static str {
        match self {
            PolarizationType::P2 => "P2",
            PolarizationType::F1 => "F1",
            PolarizationType::P1xP1 => "P1xP1",
        }
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Output of [`ConeEngine::classify`].
///
/// `curves[i]` carries coefficient `a[i]`; `a` is sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationProfile {
    pub type_tag: PolarizationType,
    pub mu: Q,
    pub a: Vec<Q>,
    pub delta: Q,
    pub s_a: Q,
    pub face_generators: Vec<PicardClass>,
    pub curves: Vec<PicardClass>,
    pub conic: Option<PicardClass>,
}

impl PolarizationProfile {
    /// `δC + Σ a_i E_i`, which equals `K + μA`.
    pub fn recompose(&self) -> PicardClass {
        let mut total = PicardClass::zero();
        for (a, e) in self.a.iter().zip(&self.curves) {
            total = &total + &e.scale(a);
        }
        if let Some(c) = &self.conic {
            total = &total + &c.scale(&self.delta);
        }
        total
    }
}

/// The 240 generators together with their LP columns.
#[derive(Clone, Debug)]
pub struct ConeEngine {
    generators: CurveClassSet,
    conics: OnceLock<CurveClassSet>,
    columns: Vec<Vec<Q>>,
}

impl Default for ConeEngine {
    fn default() -> Self {
        Self::new()
    }
}

/// A shared engine for the free-function API.
pub fn engine() -> &'static ConeEngine {
    static ENGINE: OnceLock<ConeEngine> = OnceLock::new();
    ENGINE.get_or_init(ConeEngine::new)
}

impl ConeEngine {
    pub fn new() -> Self {
        let generators = enumerate_minus_one_classes();
        let columns = generators.iter().map(|g| g.coeffs().to_vec()).collect();
        ConeEngine { generators, conics: OnceLock::new(), columns }
    }

    pub fn generators(&self) -> &CurveClassSet {
        &self.generators
    }

    fn conics(&self) -> &CurveClassSet {
        self.conics.get_or_init(enumerate_conic_classes)
    }

    pub fn is_ample(&self, v: &PicardClass) -> bool {
        v.square().is_positive()
            && v.anticanonical_degree().is_positive()
            && self.generators.iter().all(|e| v.pairing(e).is_positive())
    }

    pub fn is_pseudoeffective(&self, v: &PicardClass) -> bool {
        self.membership(v).is_inside()
    }

    /// Decide `v ∈ cone(generators)` by LP; the evidence is verified before returning.
    pub fn membership(&self, v: &PicardClass) -> Membership {
        let rhs = v.coeffs().to_vec();
        let simplex = Simplex::new(self.columns.clone(), rhs.clone());
        match simplex.phase_one() {
            Ok(basis) => {
                let zero = vec![Q::zero(); self.columns.len()];
                let PhaseTwo::Optimal { x, .. } = simplex.minimize(basis, &zero) else {
                    unreachable!("zero objective is bounded")
                };
                assert!(verify_primal(&self.columns, &rhs, &x), "membership coefficients failed verification");
                Membership::Inside(x)
            }
            Err(z) => {
                assert!(verify_farkas(&self.columns, &rhs, &z), "separating functional failed verification");
                Membership::Outside(functional_to_class(&z))
            }
        }
    }

    /// The least `t` with `K + tA` pseudo-effective.
    pub fn mu_threshold(&self, a: &PicardClass) -> Result<Q, ConeError> {
        self.mu_with_decomposition(a).map(|(mu, _)| mu)
    }

    /// `μ` together with coefficients writing `K + μA` over the generators.
    pub fn mu_with_decomposition(&self, a: &PicardClass) -> Result<(Q, Vec<Q>), ConeError> {
        if !self.is_ample(a) {
            return Err(ConeError::NotAmple);
        }
        // Columns: the generators, then -A for the variable t.
        let mut columns = self.columns.clone();
        columns.push(a.coeffs().iter().map(|c| -c).collect());
        let rhs = canonical_class().coeffs().to_vec();
        let simplex = Simplex::new(columns, rhs);
        let basis = simplex.phase_one().map_err(|_| ConeError::Lp("K + tA is never pseudo-effective".into()))?;
        let mut costs = vec![Q::zero(); self.columns.len() + 1];
        costs[self.columns.len()] = Q::one();
        match simplex.minimize(basis, &costs) {
            PhaseTwo::Optimal { mut x, value, .. } => {
                x.pop();
                Ok((value, x))
            }
            PhaseTwo::Unbounded { .. } => Err(ConeError::Lp("threshold LP unbounded".into())),
        }
    }

    /// Indices (canonical order) of the generators spanning the smallest face
    /// of the cone containing `x`.
    pub fn minimal_face_indices(&self, x: &PicardClass) -> Result<Vec<usize>, ConeError> {
        let rhs = x.coeffs().to_vec();
        let simplex = Simplex::new(self.columns.clone(), rhs);
        let basis = simplex.phase_one().map_err(|_| ConeError::NotPseudoEffective)?;
        let n = self.columns.len();
        // None: undecided; Some(true): in the face; Some(false): certified out.
        let mut status: Vec<Option<bool>> = vec![None; n];
        if x.is_zero() {
            return Ok(Vec::new());
        }
        while let Some(target) = status.iter().position(Option::is_none) {
            let outcome = self.maximize_coefficient(&simplex, basis.clone(), target);
            match outcome {
                PhaseTwo::Optimal { x: coeffs, value, duals } => {
                    if value.is_negative() {
                        for (s, c) in status.iter_mut().zip(&coeffs) {
                            if c.is_positive() {
                                *s = Some(true);
                            }
                        }
                    } else {
                        // phi = -y is non-negative on every generator, vanishes on x,
                        // and is at least one on the target.
                        let phi: Vec<Q> = duals.iter().map(|d| -d).collect();
                        for (j, s) in status.iter_mut().enumerate() {
                            let value: Q = phi.iter().zip(&self.columns[j]).map(|(p, q)| p * q).sum();
                            assert!(!value.is_negative(), "dual functional negative on a generator");
                            if value.is_positive() {
                                *s = Some(false);
                            }
                        }
                        assert_eq!(status[target], Some(false));
                    }
                }
                PhaseTwo::Unbounded { .. } => {
                    return Err(ConeError::Lp("face LP unbounded".into()));
                }
            }
        }
        Ok((0..n).filter(|&j| status[j] == Some(true)).collect())
    }

    fn maximize_coefficient(&self, simplex: &Simplex, basis: FeasibleBasis, target: usize) -> PhaseTwo {
        let mut costs = vec![Q::zero(); self.columns.len()];
        costs[target] = int(-1);
        simplex.minimize(basis, &costs)
    }

    pub fn minimal_face(&self, x: &PicardClass) -> Result<Vec<PicardClass>, ConeError> {
        let indices = self.minimal_face_indices(x)?;
        Ok(indices.into_iter().map(|i| self.generators.members()[i].clone()).collect())
    }

    pub fn classify(&self, a: &PicardClass) -> Result<PolarizationProfile, ConeError> {
        let (mu, _) = self.mu_with_decomposition(a)?;
        let x = &canonical_class() + &a.scale(&mu);
        let face = self.minimal_face_indices(&x)?;
        let members = self.generators.members();
        let face_generators: Vec<PicardClass> = face.iter().map(|&i| members[i].clone()).collect();
        let orthogonal = face
            .iter()
            .enumerate()
            .all(|(p, &i)| face[p + 1..].iter().all(|&j| members[i].pairing(&members[j]).is_zero()));
        let mut profile = if orthogonal {
            self.classify_birational(&x, &face)?
        } else {
            self.classify_conic_bundle(&x, &face)?
        };
        profile.mu = mu;
        profile.face_generators = face_generators;
        if profile.recompose() != x {
            return Err(ConeError::Unclassifiable(format!("decomposition does not recompose K + muA = {x}")));
        }
        if let Some(big) = profile.a.iter().find(|c| *c >= &Q::one()) {
            return Err(ConeError::Unclassifiable(format!("coefficient {big} is not below 1")));
        }
        Ok(profile)
    }

    /// The face is a set of disjoint curves; the contraction is birational.
    fn classify_birational(&self, x: &PicardClass, face: &[usize]) -> Result<PolarizationProfile, ConeError> {
        let members = self.generators.members();
        let face_classes: Vec<&PicardClass> = face.iter().map(|&i| &members[i]).collect();
        let mut chosen: Vec<usize> = face.to_vec();
        let mut type_tag = PolarizationType::P2;
        let mut conic = None;
        if face.len() == 7 {
            if let Some(extra) = self.orthogonal_minus_one(&face_classes) {
                chosen.push(extra);
            } else if complement_is_even(&face_classes) {
                type_tag = PolarizationType::P1xP1;
                conic = Some(self.orthogonal_conic(&face_classes).ok_or_else(|| {
                    ConeError::Unclassifiable("even complement without a conic class".into())
                })?);
            } else {
                return Err(ConeError::Unclassifiable("rank-2 complement is neither odd with a (-1)-class nor even".into()));
            }
        } else if face.len() < 7 {
            chosen = self
                .extend_disjoint(face, 8)
                .ok_or_else(|| ConeError::Unclassifiable("no disjoint extension to eight curves".into()))?;
        }
        let delta = Q::zero();
        let coefficients: Vec<(Q, usize)> = chosen.iter().map(|&i| (-x.pairing(&members[i]), i)).collect();
        Ok(assemble(type_tag, coefficients, delta, conic, members))
    }

    /// The face contains intersecting curves; the contraction is a conic bundle.
    fn classify_conic_bundle(&self, x: &PicardClass, face: &[usize]) -> Result<PolarizationProfile, ConeError> {
        let members = self.generators.members();
        let mut conic: Option<PicardClass> = None;
        for (p, &i) in face.iter().enumerate() {
            for &j in &face[p + 1..] {
                let product = members[i].pairing(&members[j]);
                if product.is_zero() {
                    continue;
                }
                if product != Q::one() {
                    return Err(ConeError::Unclassifiable(format!(
                        "face curves {} and {} meet with multiplicity {product}",
                        members[i], members[j]
                    )));
                }
                let candidate = &members[i] + &members[j];
                match &conic {
                    None => conic = Some(candidate),
                    Some(c) if *c == candidate => {}
                    Some(c) => {
                        return Err(ConeError::Unclassifiable(format!("face spans two conic classes {c} and {candidate}")));
                    }
                }
            }
        }
        let conic = conic.expect("a non-orthogonal face has an intersecting pair");
        if !x.pairing(&conic).is_zero() {
            return Err(ConeError::Unclassifiable("K + muA is not vertical for the conic bundle".into()));
        }
        // The fibre components: (−1)-classes orthogonal to the conic, paired as {E, C − E}.
        let fibre: Vec<usize> = (0..members.len()).filter(|&i| members[i].pairing(&conic).is_zero()).collect();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &i in &fibre {
            let partner = &conic - &members[i];
            let j = self.generators.index_of(&partner).ok_or_else(|| {
                ConeError::Unclassifiable(format!("fibre component {} has no partner", members[i]))
            })?;
            if i < j {
                pairs.push((i, j));
            }
        }
        if pairs.len() != 7 {
            return Err(ConeError::Unclassifiable(format!("conic bundle has {} reducible fibres, expected 7", pairs.len())));
        }
        // Pick in each fibre the component with x·E <= 0; enumerate ties.
        let mut options: Vec<Vec<usize>> = Vec::new();
        for &(i, j) in &pairs {
            let (pi, pj) = (x.pairing(&members[i]), x.pairing(&members[j]));
            let mut opts = Vec::new();
            if !pi.is_positive() {
                opts.push(i);
            }
            if !pj.is_positive() {
                opts.push(j);
            }
            if opts.is_empty() {
                return Err(ConeError::Unclassifiable("fibre with both components positive".into()));
            }
            options.push(opts);
        }
        let mut best: Option<(Vec<usize>, PolarizationProfile)> = None;
        let mut selection = Vec::new();
        let mut failure = None;
        self.conic_choices(x, &conic, &options, &mut selection, &mut best, &mut failure);
        match best {
            Some((_, profile)) => Ok(profile),
            None => Err(ConeError::Unclassifiable(
                failure.unwrap_or_else(|| "no admissible choice of fibre components".into()),
            )),
        }
    }

    fn conic_choices(
        &self,
        x: &PicardClass,
        conic: &PicardClass,
        options: &[Vec<usize>],
        selection: &mut Vec<usize>,
        best: &mut Option<(Vec<usize>, PolarizationProfile)>,
        failure: &mut Option<String>,
    ) {
        if selection.len() == options.len() {
            let mut key = selection.clone();
            key.sort_unstable();
            if best.as_ref().is_some_and(|(k, _)| *k <= key) {
                return;
            }
            match self.conic_profile(x, conic, selection) {
                Ok(profile) => *best = Some((key, profile)),
                Err(reason) => *failure = Some(reason),
            }
            return;
        }
        for &choice in &options[selection.len()] {
            selection.push(choice);
            self.conic_choices(x, conic, options, selection, best, failure);
            selection.pop();
        }
    }

    fn conic_profile(&self, x: &PicardClass, conic: &PicardClass, chosen: &[usize]) -> Result<PolarizationProfile, String> {
        let members = self.generators.members();
        let coefficients: Vec<(Q, usize)> = chosen.iter().map(|&i| (-x.pairing(&members[i]), i)).collect();
        let mut rest = x.clone();
        for (a, i) in &coefficients {
            rest = &rest - &members[*i].scale(a);
        }
        let delta = proportionality(&rest, conic).ok_or("remainder is not a multiple of the conic")?;
        if delta.is_negative() {
            return Err("negative conic coefficient".into());
        }
        let classes: Vec<&PicardClass> = chosen.iter().map(|&i| &members[i]).collect();
        let type_tag = if self.orthogonal_minus_one(&classes).is_some() {
            PolarizationType::F1
        } else if complement_is_even(&classes) {
            PolarizationType::P1xP1
        } else {
            return Err("rank-2 complement is neither odd with a (-1)-class nor even".into());
        };
        Ok(assemble(type_tag, coefficients, delta, Some(conic.clone()), members))
    }

    /// Smallest-index (−1)-class orthogonal to all of `classes`.
    fn orthogonal_minus_one(&self, classes: &[&PicardClass]) -> Option<usize> {
        self.generators
            .iter()
            .position(|e| classes.iter().all(|c| c.pairing(e).is_zero()))
    }

    fn orthogonal_conic(&self, classes: &[&PicardClass]) -> Option<PicardClass> {
        self.conics()
            .iter()
            .find(|v| classes.iter().all(|c| c.pairing(v).is_zero()))
            .cloned()
    }

    /// Lexicographically smallest sorted set of `target` disjoint (−1)-classes containing `base`.
    fn extend_disjoint(&self, base: &[usize], target: usize) -> Option<Vec<usize>> {
        let ints = self.generators.integer_members();
        let dot = |i: usize, j: usize| -> i64 {
            let (u, v) = (&ints[i], &ints[j]);
            u[0] * v[0] - (1..RANK).map(|k| u[k] * v[k]).sum::<i64>()
        };
        fn search(
            start: usize,
            chosen: &mut Vec<usize>,
            target: usize,
            n: usize,
            dot: &impl Fn(usize, usize) -> i64,
        ) -> bool {
            if chosen.len() == target {
                return true;
            }
            for candidate in start..n {
                if chosen.contains(&candidate) || chosen.iter().any(|&c| dot(c, candidate) != 0) {
                    continue;
                }
                chosen.push(candidate);
                if search(candidate + 1, chosen, target, n, dot) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        let mut chosen = base.to_vec();
        if search(0, &mut chosen, target, ints.len(), &dot) {
            chosen.sort_unstable();
            Some(chosen)
        } else {
            None
        }
    }
}

fn assemble(
    type_tag: PolarizationType,
    mut coefficients: Vec<(Q, usize)>,
    delta: Q,
    conic: Option<PicardClass>,
    members: &[PicardClass],
) -> PolarizationProfile {
    coefficients.sort_by(|(a, i), (b, j)| b.cmp(a).then(i.cmp(j)));
    let a: Vec<Q> = coefficients.iter().map(|(c, _)| c.clone()).collect();
    let curves = coefficients.iter().map(|(_, i)| members[*i].clone()).collect();
    let s_a = a.iter().skip(1).cloned().sum();
    PolarizationProfile {
        type_tag,
        mu: Q::one(),
        a,
        delta,
        s_a,
        face_generators: Vec::new(),
        curves,
        conic,
    }
}

/// `t` with `v = t·c`, if one exists (`c` non-zero).
fn proportionality(v: &PicardClass, c: &PicardClass) -> Option<Q> {
    let k = c.coeffs().iter().position(|t| !t.is_zero())?;
    let t = v.coeff(k) / c.coeff(k);
    (c.scale(&t) == *v).then_some(t)
}

/// Whether the orthogonal complement of a set of disjoint (−1)-classes is an even lattice.
fn complement_is_even(classes: &[&PicardClass]) -> bool {
    (0..RANK).all(|i| {
        let mut coeffs = [0i64; RANK];
        coeffs[i] = 1;
        let mut v = PicardClass::from_ints(coeffs);
        let original = v.clone();
        for e in classes {
            v = &v + &e.scale(&original.pairing(e));
        }
        v.square().numer() % 2u8 == 0u8.into()
    })
}

/// A coordinate functional `z` as the class `N` with `N·v = z·v`.
fn functional_to_class(z: &[Q]) -> PicardClass {
    PicardClass::new(std::array::from_fn(|i| if i == 0 { z[0].clone() } else { -&z[i] }))
}

pub fn is_ample(v: &PicardClass) -> bool {
    engine().is_ample(v)
}

pub fn is_pseudoeffective(v: &PicardClass) -> bool {
    engine().is_pseudoeffective(v)
}

pub fn mu_threshold(a: &PicardClass) -> Result<Q, ConeError> {
    engine().mu_threshold(a)
}

pub fn minimal_face(x: &PicardClass) -> Result<Vec<PicardClass>, ConeError> {
    engine().minimal_face(x)
}

pub fn classify(a: &PicardClass) -> Result<PolarizationProfile, ConeError> {
    engine().classify(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn minus_k() -> PicardClass {
        -canonical_class()
    }

    fn e(i: usize) -> PicardClass {
        PicardClass::exceptional(i)
    }

    #[test]
    fn ampleness_along_a_ray() {
        let c = e(1);
        for (lambda, expected) in [((-1, 3), false), ((1, 1), false), ((0, 1), true), ((1, 3), true), ((9, 10), true)] {
            let a = &minus_k() + &c.scale(&frac(lambda.0, lambda.1));
            assert_eq!(is_ample(&a), expected, "lambda = {lambda:?}");
        }
        assert!(!is_ample(&e(1)));
    }

    #[test]
    fn pseudo_effectivity() {
        assert!(is_pseudoeffective(&e(1)));
        assert!(is_pseudoeffective(&PicardClass::zero()));
        match engine().membership(&-e(1)) {
            Membership::Outside(n) => {
                assert!(n.pairing(&-e(1)).is_negative());
                assert!(engine().generators().iter().all(|g| !n.pairing(g).is_negative()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(mu_threshold(&minus_k()).unwrap(), int(1));
        assert_eq!(mu_threshold(&minus_k().scale(&int(2))).unwrap(), frac(1, 2));
        let a = &minus_k() + &e(3).scale(&frac(2, 5));
        assert_eq!(mu_threshold(&a).unwrap(), int(1));
        assert_eq!(mu_threshold(&e(1)), Err(ConeError::NotAmple));
    }

    #[test]
    fn faces() {
        assert_eq!(minimal_face(&e(2).scale(&frac(3, 2))).unwrap(), vec![e(2)]);
        assert!(minimal_face(&PicardClass::zero()).unwrap().is_empty());
        assert_eq!(minimal_face(&canonical_class().scale(&int(2))), Err(ConeError::NotPseudoEffective));
        // -2K is interior, so its face is the whole cone.
        assert_eq!(minimal_face(&minus_k().scale(&int(2))).unwrap().len(), 240);
    }

    #[test]
    fn anticanonical_profile() {
        let p = classify(&minus_k()).unwrap();
        assert_eq!(p.type_tag, PolarizationType::P2);
        assert_eq!(p.mu, int(1));
        assert_eq!(p.a, vec![Q::zero(); 8]);
        assert!(p.face_generators.is_empty());
    }

    #[test]
    fn one_curve_profile() {
        let lambda = frac(1, 2);
        let p = classify(&(&minus_k() + &e(1).scale(&lambda))).unwrap();
        assert_eq!(p.type_tag, PolarizationType::P2);
        assert_eq!(p.a[0], lambda);
        assert!(p.a[1..].iter().all(Zero::is_zero));
        assert_eq!(p.s_a, Q::zero());
        assert_eq!(p.curves[0], e(1));
    }

    #[test]
    fn conic_bundle_profile() {
        // -K + (H - e1) pushes K + μA onto the conic ray of |H - e1|.
        let conic = &PicardClass::hyperplane() - &e(1);
        let a = &minus_k() + &conic;
        let p = classify(&a).unwrap();
        assert_ne!(p.type_tag, PolarizationType::P2);
        assert_eq!(p.a.len(), 7);
        assert!(p.delta.is_positive());
        assert_eq!(p.conic.as_ref(), Some(&conic));
        assert_eq!(p.recompose(), &canonical_class() + &a.scale(&p.mu));
    }
}
