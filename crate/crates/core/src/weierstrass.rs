//! Degree-one del Pezzo surfaces `w^2 = z^3 + a(x,y) z + b(x,y)` in
//! `P(1,1,2,3)`, with `deg a = 4` and `deg b = 6`.

use num_traits::Zero;

use crate::alpha::{alpha_del_pezzo, SurfaceFlag};
use crate::binary_form::{resultant, BinaryForm};
use crate::error::{AlphaError, SurfaceError};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassSurface {
    a: BinaryForm,
    b: BinaryForm,
}

/// Curves `C: z = q, w = g` and `C̃: z = q, w = -g`, exchanged by the Bertini involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPair {
    pub q: BinaryForm,
    pub g: BinaryForm,
    /// `|C ∩ C̃|`, the number of distinct roots of `g`.
    pub n_intersections: usize,
    /// Local intersection numbers of `C` and `C̃`, largest first; they sum to 3.
    pub multiplicities: Vec<usize>,
}

impl WeierstrassSurface {
    pub fn new(a: BinaryForm, b: BinaryForm) -> Result<Self, SurfaceError> {
        if a.degree() != 4 {
            return Err(SurfaceError::Degree { expected: 4, found: a.degree() });
        }
        if b.degree() != 6 {
            return Err(SurfaceError::Degree { expected: 6, found: b.degree() });
        }
        let surface = WeierstrassSurface { a, b };
        if surface.discriminant().is_zero() {
            return Err(SurfaceError::ZeroDiscriminant);
        }
        Ok(surface)
    }

    /// `w^2 = z^3 + x^4 z + y^6`.
    pub fn example() -> Self {
        let a = BinaryForm::from_ints(&[1, 0, 0, 0, 0]);
        let b = BinaryForm::from_ints(&[0, 0, 0, 0, 0, 0, 1]);
        WeierstrassSurface::new(a, b).expect("the example surface has non-zero discriminant")
    }

    pub fn a(&self) -> &BinaryForm {
        &self.a
    }

    pub fn b(&self) -> &BinaryForm {
        &self.b
    }

    /// `Δ = 4a^3 + 27b^2`, of degree 12.
    pub fn discriminant(&self) -> BinaryForm {
        self.a.pow(3).scale(&Q::from_integer(4.into())).add(&self.b.pow(2).scale(&Q::from_integer(27.into())))
    }

    /// Every fibre of the elliptic pencil has type I0, I1 or II: at each
    /// multiple root of `Δ`, `ord Δ = 2`, `ord b = 1` and `ord a >= 1`.
    pub fn is_smooth(&self) -> bool {
        let delta = self.discriminant();
        let common = delta.gcd(&delta.partial_x()).gcd(&delta.partial_y());
        if common.degree() == 0 {
            return true;
        }
        let r = common.squarefree_part();
        let r2 = r.mul(&r);
        let Some(rest) = delta.exact_div(&r2) else {
            return false;
        };
        if !rest.gcd(&r).is_unit() || !r.divides(&self.a) {
            return false;
        }
        match self.b.exact_div(&r) {
            Some(b_over_r) => b_over_r.gcd(&r).is_unit(),
            None => false,
        }
    }

    fn require_smooth(&self) -> Result<(), SurfaceError> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(SurfaceError::NotSmooth)
        }
    }

    /// Whether some member of `|-K|` is cuspidal: `a` and `b` vanish at a
    /// common parameter (always, when `a ≡ 0`).
    pub fn has_cuspidal_member(&self) -> Result<bool, SurfaceError> {
        self.require_smooth()?;
        if self.a.is_zero() {
            return Ok(true);
        }
        Ok(resultant(&self.a, &self.b).is_zero())
    }

    /// `α(S)`: 5/6 with a cuspidal anticanonical curve, 1 otherwise.
    pub fn alpha(&self) -> Result<Q, AlphaError> {
        let flag = if self.has_cuspidal_member()? { SurfaceFlag::Cuspidal } else { SurfaceFlag::NoCuspidal };
        alpha_del_pezzo(1, &[flag])
    }

    /// Check `g^2 = q^3 + a q + b` and measure `C ∩ C̃`.
    pub fn section_pair(&self, q: &BinaryForm, g: &BinaryForm) -> Result<SectionPair, SurfaceError> {
        if q.degree() != 2 {
            return Err(SurfaceError::Degree { expected: 2, found: q.degree() });
        }
        if g.degree() != 3 {
            return Err(SurfaceError::Degree { expected: 3, found: g.degree() });
        }
        let residual = g.mul(g).sub(&q.pow(3)).sub(&self.a.mul(q)).sub(&self.b);
        if !residual.is_zero() {
            return Err(SurfaceError::NotASection(residual.to_string()));
        }
        let n = g.distinct_root_count().ok_or(SurfaceError::ZeroForm)?;
        Ok(SectionPair { q: q.clone(), g: g.clone(), n_intersections: n, multiplicities: g.root_multiplicities() })
    }

    /// The section pairs with `q ≡ 0`, which exist iff `b` is a non-zero square over Q.
    pub fn find_square_sections(&self) -> Vec<SectionPair> {
        match self.b.square_root() {
            Some(g) if !g.is_zero() => {
                let q = BinaryForm::zero(2);
                vec![self.section_pair(&q, &g).expect("a square root of b is a section")]
            }
            _ => Vec::new(),
        }
    }
}

pub fn is_smooth(surface: &WeierstrassSurface) -> bool {
    surface.is_smooth()
}

pub fn has_cuspidal_member(surface: &WeierstrassSurface) -> Result<bool, SurfaceError> {
    surface.has_cuspidal_member()
}

pub fn alpha_of_surface(surface: &WeierstrassSurface) -> Result<Q, AlphaError> {
    surface.alpha()
}

pub fn section_pair(surface: &WeierstrassSurface, q: &BinaryForm, g: &BinaryForm) -> Result<SectionPair, SurfaceError> {
    surface.section_pair(q, g)
}

pub fn find_square_sections(surface: &WeierstrassSurface) -> Vec<SectionPair> {
    surface.find_square_sections()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(c)
    }

    #[test]
    fn example_surface() {
        let s = WeierstrassSurface::example();
        assert!(s.is_smooth());
        assert_eq!(s.has_cuspidal_member(), Ok(false));
        assert_eq!(s.alpha().unwrap(), int(1));
        let pairs = s.find_square_sections();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].g, form(&[0, 0, 0, 1]));
        assert_eq!(pairs[0].n_intersections, 1);
        assert_eq!(pairs[0].multiplicities, vec![3]);
        let bad = s.section_pair(&BinaryForm::zero(2), &form(&[0, 1, 0, 0]));
        assert!(matches!(bad, Err(SurfaceError::NotASection(_))));
    }

    #[test]
    fn zero_a_family() {
        // b = xy(x+y)(x-y)(x+2y)(x-3y), squarefree.
        let b = [form(&[1, 0]), form(&[0, 1]), form(&[1, 1]), form(&[1, -1]), form(&[1, 2]), form(&[1, -3])]
            .iter()
            .fold(form(&[1]), |acc, f| acc.mul(f));
        let s = WeierstrassSurface::new(BinaryForm::zero(4), b).unwrap();
        assert!(s.is_smooth());
        assert_eq!(s.has_cuspidal_member(), Ok(true));
        assert_eq!(s.alpha().unwrap(), frac(5, 6));
        let singular = WeierstrassSurface::new(BinaryForm::zero(4), form(&[0, 0, 0, 0, 1, 0, 0])).unwrap();
        assert!(!singular.is_smooth());
        assert_eq!(singular.has_cuspidal_member(), Err(SurfaceError::NotSmooth));
    }

    #[test]
    fn cusp_at_a_common_root() {
        let s = WeierstrassSurface::new(form(&[1, 0, 0, 0, 0]), form(&[0, 0, 0, 0, 0, 1, 0])).unwrap();
        assert!(s.is_smooth());
        assert_eq!(s.has_cuspidal_member(), Ok(true));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(WeierstrassSurface::new(form(&[1, 0, 0]), form(&[1; 7])), Err(SurfaceError::Degree { .. })));
        assert_eq!(
            WeierstrassSurface::new(BinaryForm::zero(4), BinaryForm::zero(6)),
            Err(SurfaceError::ZeroDiscriminant)
        );
    }
}
