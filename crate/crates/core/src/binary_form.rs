//! Univariate polynomials over Q and homogeneous binary forms.
//!
//! A form is handled through its dehomogenization `p(t) = f(t, 1)` plus the
//! multiplicity of the root `[1:0]`, which is `deg f - deg p`. This keeps gcds
//! and root counts in one variable without losing the point at infinity.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::rational::{format_rational, int, parse_rational, rational_sqrt, Q};

/// A polynomial in one variable, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Q::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![Q::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * t + c)
    }

    /// Yun's squarefree decomposition: `p = lc · Π f_i^i` with the `f_i`
    /// monic, squarefree and pairwise coprime. Entry `i - 1` holds `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut dd = c.sub(&b.derivative());
        loop {
            let a = b.gcd(&dd);
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            out.push(a.monic());
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            dd = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|f| f.degree() == Some(0)) {
            out.pop();
        }
        out
    }
}

/// `Σ c_i x^(d-i) y^i` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Q>,
}

impl BinaryForm {
    /// Coefficients `c_0..c_d`; the degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { degree: coeffs.len() - 1, coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm::new(vec![Q::zero(); degree + 1])
    }

    /// `c x^(d-k) y^k`.
    pub fn monomial(degree: usize, k: usize, c: Q) -> Self {
        let mut f = BinaryForm::zero(degree);
        f.coeffs[k] = c;
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `f(t, 1)`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// The form of degree `degree` whose dehomogenization is `p`.
    pub fn homogenize(p: &Poly, degree: usize) -> Self {
        let deg_p = p.degree().unwrap_or(0);
        assert!(deg_p <= degree, "polynomial degree exceeds form degree");
        let mut coeffs = vec![Q::zero(); degree + 1];
        for (k, c) in p.coeffs().iter().enumerate() {
            coeffs[degree - k] = c.clone();
        }
        BinaryForm { degree, coeffs }
    }

    /// Multiplicity of the root `[1:0]` (`y = 0`). Panics on the zero form.
    pub fn infinity_multiplicity(&self) -> usize {
        let p = self.dehomogenize();
        self.degree - p.degree().expect("zero form has no root multiplicities")
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        let mut acc = Q::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * num_traits::pow(x.clone(), self.degree - i) * num_traits::pow(y.clone(), i);
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> BinaryForm {
        BinaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut coeffs = vec![Q::zero(); self.degree + other.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BinaryForm::new(coeffs)
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut out = BinaryForm::from_ints(&[1]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `∂f/∂x`.
    pub fn partial_x(&self) -> BinaryForm {
        if self.degree == 0 {
            return BinaryForm::zero(0);
        }
        let d = self.degree;
        BinaryForm::new((0..d).map(|i| &self.coeffs[i] * int((d - i) as i64)).collect())
    }

    /// `∂f/∂y`.
    pub fn partial_y(&self) -> BinaryForm {
        if self.degree == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm::new((1..=self.degree).map(|i| &self.coeffs[i] * int(i as i64)).collect())
    }

    /// Monic-normalized gcd (leading coefficient of the dehomogenization is
    /// one). The zero form acts as the identity.
    pub fn gcd(&self, other: &BinaryForm) -> BinaryForm {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let p = self.dehomogenize().gcd(&other.dehomogenize());
        let inf = self.infinity_multiplicity().min(other.infinity_multiplicity());
        BinaryForm::homogenize(&p, p.degree().unwrap_or(0) + inf)
    }

    fn normalized(&self) -> BinaryForm {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.dehomogenize().leading();
        self.scale(&(Q::one() / lead))
    }

    /// `self / divisor` if the division is exact.
    pub fn exact_div(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        if divisor.is_zero() || divisor.degree > self.degree {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryForm::zero(self.degree - divisor.degree));
        }
        if divisor.infinity_multiplicity() > self.infinity_multiplicity() {
            return None;
        }
        let (q, r) = self.dehomogenize().div_rem(&divisor.dehomogenize());
        if !r.is_zero() {
            return None;
        }
        Some(BinaryForm::homogenize(&q, self.degree - divisor.degree))
    }

    pub fn divides(&self, other: &BinaryForm) -> bool {
        other.is_zero() || other.exact_div(self).is_some()
    }

    /// Whether the form has no projective roots (a non-zero constant).
    pub fn is_unit(&self) -> bool {
        self.degree == 0 && !self.is_zero()
    }

    /// The product of the distinct linear factors, normalized. Panics on zero.
    pub fn squarefree_part(&self) -> BinaryForm {
        let p = self.dehomogenize();
        assert!(!p.is_zero(), "squarefree part of the zero form");
        let core = if p.degree() == Some(0) { Poly::constant(Q::one()) } else { p.div_rem(&p.gcd(&p.derivative())).0.monic() };
        let inf = usize::from(self.infinity_multiplicity() > 0);
        BinaryForm::homogenize(&core, core.degree().unwrap_or(0) + inf)
    }

    /// Root multiplicities over the algebraic closure, largest first. Panics on zero.
    pub fn root_multiplicities(&self) -> Vec<usize> {
        let p = self.dehomogenize();
        assert!(!p.is_zero(), "root multiplicities of the zero form");
        let mut out = Vec::new();
        for (i, f) in p.squarefree_decomposition().iter().enumerate() {
            for _ in 0..f.degree().unwrap_or(0) {
                out.push(i + 1);
            }
        }
        let inf = self.infinity_multiplicity();
        if inf > 0 {
            out.push(inf);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Number of distinct projective roots, or `None` for the zero form.
    pub fn distinct_root_count(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.squarefree_part().degree)
    }

    /// `f(αx + βy, γx + δy)`.
    pub fn substitute(&self, alpha: &Q, beta: &Q, gamma: &Q, delta: &Q) -> BinaryForm {
        let lx = BinaryForm::new(vec![alpha.clone(), beta.clone()]);
        let ly = BinaryForm::new(vec![gamma.clone(), delta.clone()]);
        let mut out = BinaryForm::zero(self.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = lx.pow(self.degree - i).mul(&ly.pow(i)).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// A square root `g` with `g^2 = self` over Q, if one exists. The sign
    /// is fixed so the first non-zero coefficient is positive.
    pub fn square_root(&self) -> Option<BinaryForm> {
        if !self.degree.is_multiple_of(2) {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryForm::zero(self.degree / 2));
        }
        let p = self.dehomogenize();
        let inf = self.infinity_multiplicity();
        if !inf.is_multiple_of(2) {
            return None;
        }
        let scale = rational_sqrt(&p.leading())?;
        let mut root = Poly::constant(scale);
        for (i, f) in p.squarefree_decomposition().iter().enumerate() {
            let mult = i + 1;
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            if mult % 2 != 0 {
                return None;
            }
            for _ in 0..mult / 2 {
                root = root.mul(f);
            }
        }
        let mut g = BinaryForm::homogenize(&root, self.degree / 2);
        if g.coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c < &Q::zero()) {
            g = g.scale(&int(-1));
        }
        (g.mul(&g) == *self).then_some(g)
    }
}

/// Sylvester resultant of two forms, taken with their nominal degrees.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Q {
    let (m, n) = (f.degree, g.degree);
    let size = m + n;
    if size == 0 {
        return Q::one();
    }
    let mut matrix = vec![vec![Q::zero(); size]; size];
    for r in 0..n {
        for (i, c) in f.coeffs.iter().enumerate() {
            matrix[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.coeffs.iter().enumerate() {
            matrix[n + r][r + i] = c.clone();
        }
    }
    determinant(matrix)
}

/// Determinant by Gaussian elimination over Q.
pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (target, source) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *target -= &factor * source;
            }
        }
    }
    det
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "{}:{}", self.degree, parts.join(","))
    }
}

impl FromStr for BinaryForm {
    type Err = ParseError;

    /// `deg:c0,c1,...,cd`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::Form(s.to_string());
        let (deg, rest) = s.split_once(':').ok_or_else(bad)?;
        if deg.is_empty() || !deg.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let degree: usize = deg.parse().map_err(|_| bad())?;
        let coeffs: Vec<Q> = rest.split(',').map(parse_rational).collect::<Result<_, _>>().map_err(|_| bad())?;
        if coeffs.len() != degree + 1 {
            return Err(bad());
        }
        Ok(BinaryForm::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(c)
    }

    #[test]
    fn root_counts() {
        assert_eq!(form(&[0, 0, 0, 1]).distinct_root_count(), Some(1)); // y^3
        assert_eq!(form(&[0, 0, 1, 0]).distinct_root_count(), Some(2)); // x y^2
        assert_eq!(form(&[0, 1, 1, 0]).distinct_root_count(), Some(3)); // xy(x+y)
        assert_eq!(form(&[0, 0, 0]).distinct_root_count(), None);
        assert_eq!(form(&[0, 0, 1, 0]).root_multiplicities(), vec![2, 1]);
    }

    #[test]
    fn resultants() {
        let x4 = form(&[1, 0, 0, 0, 0]);
        let y6 = form(&[0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(resultant(&x4, &y6), int(1));
        let xy = form(&[0, 1, 0]);
        let x_plus_y = form(&[1, 1]);
        assert_ne!(resultant(&xy, &x_plus_y), Q::zero());
        let x = form(&[1, 0]);
        assert_eq!(resultant(&x.mul(&x_plus_y), &x.mul(&form(&[1, 2]))), Q::zero());
    }

    #[test]
    fn gcd_and_division() {
        let x = form(&[1, 0]);
        let y = form(&[0, 1]);
        let f = x.mul(&y).mul(&y);
        let g = y.mul(&form(&[1, 1]));
        assert_eq!(f.gcd(&g), y);
        assert_eq!(f.exact_div(&y).unwrap(), x.mul(&y));
        assert!(f.exact_div(&form(&[1, 1])).is_none());
        assert_eq!(f.squarefree_part(), x.mul(&y));
    }

    #[test]
    fn square_roots() {
        let g = form(&[0, 1, 1, 0]).scale(&frac(3, 2));
        assert_eq!(g.mul(&g).square_root().unwrap(), g);
        assert!(form(&[0, 0, 1, 0, 1, 0, 0]).square_root().is_none());
        assert!(form(&[2, 0, 0]).square_root().is_none());
    }

    #[test]
    fn text_format() {
        let f: BinaryForm = "4:1,0,0,0,0".parse().unwrap();
        assert_eq!(f, form(&[1, 0, 0, 0, 0]));
        assert_eq!(f.to_string(), "4:1,0,0,0,0");
        for bad in ["4:1,0", "x:1", "1:1,a", "1;1,2", ":1"] {
            assert!(bad.parse::<BinaryForm>().is_err(), "{bad}");
        }
    }
}
