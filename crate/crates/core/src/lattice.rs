//! The rank-9 Picard lattice of a degree-one del Pezzo surface.
//!
//! Classes are written in the blow-up basis `(H, e1, ..., e8)`, where `H` is
//! the pull-back of a general line and `e_i` are the exceptional classes.
//! The intersection form is `diag(1, -1, ..., -1)` and the canonical class
//! is `K = -3H + e1 + ... + e8`, so `K^2 = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::error::ParseError;
use crate::rational::{format_rational, int, parse_rational, Q};

pub const RANK: usize = 9;

/// A rational class in Pic(S) ⊗ Q, in the basis `(H, e1, ..., e8)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PicardClass {
    coeffs: [Q; RANK],
}

impl PicardClass {
    pub fn new(coeffs: [Q; RANK]) -> Self {
        PicardClass { coeffs }
    }

    pub fn from_ints(coeffs: [i64; RANK]) -> Self {
        PicardClass { coeffs: coeffs.map(int) }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; RANK])
    }

    /// The class `H` of a general line.
    pub fn hyperplane() -> Self {
        Self::basis(0)
    }

    /// The exceptional class `e_i` for `i` in `1..=8`.
    pub fn exceptional(i: usize) -> Self {
        assert!((1..RANK).contains(&i), "exceptional index {i} out of range 1..=8");
        Self::basis(i)
    }

    fn basis(i: usize) -> Self {
        let mut c = [0; RANK];
        c[i] = 1;
        Self::from_ints(c)
    }

    pub fn coeffs(&self) -> &[Q; RANK] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Q {
        &self.coeffs[i]
    }

    /// The `H`-coordinate.
    pub fn degree(&self) -> &Q {
        &self.coeffs[0]
    }

    /// The intersection pairing `u0 v0 - sum_i u_i v_i`.
    pub fn pairing(&self, other: &PicardClass) -> Q {
        let mut acc = &self.coeffs[0] * &other.coeffs[0];
        for i in 1..RANK {
            acc -= &self.coeffs[i] * &other.coeffs[i];
        }
        acc
    }

    pub fn square(&self) -> Q {
        self.pairing(self)
    }

    /// `-K · v`, the anticanonical degree.
    pub fn anticanonical_degree(&self) -> Q {
        -self.pairing(&canonical_class())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if the class is integral and fits in `i64`.
    pub fn to_ints(&self) -> Option<[i64; RANK]> {
        let mut out = [0i64; RANK];
        for (slot, c) in out.iter_mut().zip(&self.coeffs) {
            if !c.is_integer() {
                return None;
            }
            *slot = c.numer().to_i64()?;
        }
        Some(out)
    }

    pub fn scale(&self, factor: &Q) -> PicardClass {
        PicardClass { coeffs: std::array::from_fn(|i| &self.coeffs[i] * factor) }
    }

    /// Image under the Bertini involution, `v -> 2 (v·K) K - v`.
    pub fn bertini(&self) -> PicardClass {
        let k = canonical_class();
        let factor = self.pairing(&k) * int(2);
        &k.scale(&factor) - self
    }
}

/// `K = -3H + e1 + ... + e8`.
pub fn canonical_class() -> PicardClass {
    PicardClass::from_ints([-3, 1, 1, 1, 1, 1, 1, 1, 1])
}

/// Free-function form of [`PicardClass::pairing`].
pub fn pairing(u: &PicardClass, v: &PicardClass) -> Q {
    u.pairing(v)
}

pub fn bertini(v: &PicardClass) -> PicardClass {
    v.bertini()
}

impl<'a> Add<&'a PicardClass> for &'a PicardClass {
    type Output = PicardClass;
    fn add(self, rhs: &'a PicardClass) -> PicardClass {
        PicardClass { coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]) }
    }
}

impl<'a> Sub<&'a PicardClass> for &'a PicardClass {
    type Output = PicardClass;
    fn sub(self, rhs: &'a PicardClass) -> PicardClass {
        PicardClass { coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]) }
    }
}

impl Add for PicardClass {
    type Output = PicardClass;
    fn add(self, rhs: PicardClass) -> PicardClass {
        &self + &rhs
    }
}

impl Sub for PicardClass {
    type Output = PicardClass;
    fn sub(self, rhs: PicardClass) -> PicardClass {
        &self - &rhs
    }
}

impl Neg for &PicardClass {
    type Output = PicardClass;
    fn neg(self) -> PicardClass {
        PicardClass { coeffs: std::array::from_fn(|i| -&self.coeffs[i]) }
    }
}

impl Neg for PicardClass {
    type Output = PicardClass;
    fn neg(self) -> PicardClass {
        -&self
    }
}

impl Mul<&PicardClass> for &Q {
    type Output = PicardClass;
    fn mul(self, rhs: &PicardClass) -> PicardClass {
        rhs.scale(self)
    }
}

impl fmt::Display for PicardClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PicardClass {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != RANK {
            return Err(ParseError::Class(s.to_string()));
        }
        let mut coeffs: [Q; RANK] = std::array::from_fn(|_| Q::zero());
        for (slot, part) in coeffs.iter_mut().zip(parts) {
            *slot = parse_rational(part).map_err(|_| ParseError::Class(s.to_string()))?;
        }
        Ok(PicardClass { coeffs })
    }
}

/// Which numerical curve type a [`CurveClassSet`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    /// `v^2 = -1`, `v·K = -1`.
    MinusOne,
    /// `v^2 = 0`, `v·K = -2`.
    Conic,
}

impl CurveKind {
    pub fn name(self) -> &'static str {
        match self {
            CurveKind::MinusOne => "minus-one",
            CurveKind::Conic => "conic",
        }
    }

    /// Required `(v^2, v·K)`.
    fn numerics(self) -> (i64, i64) {
        match self {
            CurveKind::MinusOne => (-1, -1),
            CurveKind::Conic => (0, -2),
        }
    }

    /// Degrees `d = c0` allowed by Cauchy–Schwarz: `(3d + vK)^2 <= 8 (d^2 - v^2)`.
    fn degree_bounds(self) -> (i64, i64) {
        match self {
            // (3d - 1)^2 <= 8(d^2 + 1)  <=>  (d - 7)(d + 1) <= 0
            CurveKind::MinusOne => (-1, 7),
            // (3d - 2)^2 <= 8 d^2  <=>  d^2 - 12 d + 4 <= 0, i.e. 1 <= d <= 11
            CurveKind::Conic => (1, 11),
        }
    }
}

impl FromStr for CurveKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "minus-one" => Ok(CurveKind::MinusOne),
            "conic" => Ok(CurveKind::Conic),
            other => Err(format!("unknown curve kind {other:?}")),
        }
    }
}

/// A finite set of integral classes of one [`CurveKind`], in canonical order:
/// increasing degree, then decreasing exceptional coordinates (so `e1`
/// precedes `e2`).
#[derive(Clone, Debug)]
pub struct CurveClassSet {
    kind: CurveKind,
    members: Vec<PicardClass>,
    ints: Vec<[i64; RANK]>,
}

impl CurveClassSet {
    fn from_ints(kind: CurveKind, mut ints: Vec<[i64; RANK]>) -> Self {
        ints.sort_by(|u, v| u[0].cmp(&v[0]).then_with(|| v[1..].cmp(&u[1..])));
        ints.dedup();
        let members = ints.iter().map(|c| PicardClass::from_ints(*c)).collect();
        CurveClassSet { kind, members, ints }
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn members(&self) -> &[PicardClass] {
        &self.members
    }

    pub fn integer_members(&self) -> &[[i64; RANK]] {
        &self.ints
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &PicardClass) -> bool {
        self.index_of(v).is_some()
    }

    /// Position of `v` in the canonical order.
    pub fn index_of(&self, v: &PicardClass) -> Option<usize> {
        let key = v.to_ints()?;
        self.ints.iter().position(|c| *c == key)
    }

    pub fn iter(&self) -> impl Iterator<Item = &PicardClass> {
        self.members.iter()
    }
}

/// All integral classes with `v^2 = -1` and `v·K = -1`.
pub fn enumerate_minus_one_classes() -> CurveClassSet {
    enumerate(CurveKind::MinusOne)
}

/// All integral classes with `v^2 = 0`, `v·K = -2` and non-negative degree.
pub fn enumerate_conic_classes() -> CurveClassSet {
    enumerate(CurveKind::Conic)
}

pub fn enumerate(kind: CurveKind) -> CurveClassSet {
    let (square, canonical) = kind.numerics();
    let (lo, hi) = kind.degree_bounds();
    let mut found = Vec::new();
    // One shell past each analytic bound is scanned as a runtime check.
    for d in (lo - 1)..=(hi + 1) {
        // v·K = -3d - sum(c) and v^2 = d^2 - sum(c^2).
        let target_sum = -canonical - 3 * d;
        let target_sq = d * d - square;
        let before = found.len();
        let mut tail = [0i64; 8];
        shell_search(0, target_sum, target_sq, &mut tail, &mut |t| {
            let mut v = [0i64; RANK];
            v[0] = d;
            v[1..].copy_from_slice(t);
            found.push(v);
        });
        let outside = d < lo || d > hi || (kind == CurveKind::Conic && d < 0);
        if outside {
            assert_eq!(found.len(), before, "{} solutions beyond the degree bound at d = {d}", kind.name());
        }
    }
    CurveClassSet::from_ints(kind, found)
}

/// Enumerate integer 8-tuples with prescribed sum and sum of squares,
/// pruning with `sum^2 <= k * squares` and parity.
fn shell_search(pos: usize, sum: i64, sq: i64, tail: &mut [i64; 8], emit: &mut impl FnMut(&[i64; 8])) {
    let left = (8 - pos) as i64;
    if left == 0 {
        if sum == 0 && sq == 0 {
            emit(tail);
        }
        return;
    }
    if sq < 0 || sum * sum > left * sq || (sum - sq).rem_euclid(2) != 0 {
        return;
    }
    let bound = (sq as f64).sqrt() as i64 + 1;
    for c in -bound..=bound {
        if c * c > sq {
            continue;
        }
        tail[pos] = c;
        shell_search(pos + 1, sum - c, sq - c * c, tail, emit);
    }
    tail[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn h() -> PicardClass {
        PicardClass::hyperplane()
    }

    fn e(i: usize) -> PicardClass {
        PicardClass::exceptional(i)
    }

    #[test]
    fn pairing_examples() {
        let k = canonical_class();
        assert_eq!(pairing(&k, &k), int(1));
        assert_eq!(pairing(&e(1), &e(1)), int(-1));
        let line = &(&h() - &e(1)) - &e(2);
        assert_eq!(pairing(&-&k, &line), int(1));
    }

    #[test]
    fn canonical_class_examples() {
        let k = canonical_class();
        assert_eq!(k.to_string(), "-3,1,1,1,1,1,1,1,1");
        assert_eq!(pairing(&k, &e(1)), int(-1));
        assert_eq!(pairing(&k, &h()), int(-3));
    }

    #[test]
    fn gram_matrix_is_diagonal() {
        let basis: Vec<PicardClass> = (0..RANK).map(PicardClass::basis).collect();
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let expected = if i != j { 0 } else if i == 0 { 1 } else { -1 };
                assert_eq!(u.pairing(v), int(expected));
            }
        }
    }

    #[test]
    fn minus_one_membership_and_size() {
        let set = enumerate_minus_one_classes();
        assert_eq!(set.len(), 240);
        assert!(set.contains(&e(1)));
        assert!(set.contains(&(&(&h() - &e(1)) - &e(2))));
        assert_eq!(set.index_of(&e(1)), Some(0));
        assert!(set.integer_members().iter().all(|v| (0..=7).contains(&v[0])));
    }

    #[test]
    fn conic_membership_and_size() {
        let set = enumerate_conic_classes();
        assert_eq!(set.len(), 2160);
        assert!(set.contains(&(&h() - &e(1))));
        assert!(set.iter().all(|v| v.square().is_zero()));
        assert!(set.integer_members().iter().all(|v| v[0] >= 0 && v[0] <= 11));
    }

    #[test]
    fn bertini_examples() {
        let k = canonical_class();
        let set = enumerate_minus_one_classes();
        for c in set.iter() {
            let image = c.bertini();
            let expected = &k.scale(&int(-2)) - c;
            assert_eq!(image, expected);
            assert_eq!(pairing(c, &image), int(3));
            assert!(set.contains(&image));
        }
        assert_eq!(e(1).bertini().bertini(), e(1));
    }

    #[test]
    fn text_format() {
        let v: PicardClass = "3,-1,-1,-1,-1,-1,-1,-1,-1".parse().unwrap();
        assert_eq!(v, -canonical_class());
        let w: PicardClass = "1/2,0,0,0,0,0,0,0,-3/4".parse().unwrap();
        assert_eq!(w.coeff(0), &frac(1, 2));
        assert_eq!(w.to_string(), "1/2,0,0,0,0,0,0,0,-3/4");
        assert!("1,2,3".parse::<PicardClass>().is_err());
        assert!("1,2,3,4,5,6,7,8,x".parse::<PicardClass>().is_err());
        assert!("1,2,3,4,5,6,7,8,9,10".parse::<PicardClass>().is_err());
    }
}
