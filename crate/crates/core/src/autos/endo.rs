use std::fmt;

use crate::algebra::{reduce_mod_surface, BiPoly, FieldSpec, LaurentBiPoly, Ring, SpacePoly};

/// Polynomial endomorphism of affine 3-space, given by the images of
/// x, y and z.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineEndo3 {
    pub comps: [SpacePoly; 3],
}

impl AffineEndo3 {
    pub fn new(x: SpacePoly, y: SpacePoly, z: SpacePoly) -> Self {
        AffineEndo3 { comps: [x, y, z] }
    }

    pub fn identity(field: FieldSpec) -> Self {
        Self::new(SpacePoly::var(field, 0), SpacePoly::var(field, 1), SpacePoly::var(field, 2))
    }

    pub fn field(&self) -> FieldSpec {
        self.comps[0].field()
    }

    /// `self ∘ inner`: the components of `self` evaluated at those of `inner`.
    pub fn compose(&self, inner: &AffineEndo3) -> AffineEndo3 {
        let [a, b, c] = &self.comps;
        AffineEndo3::new(
            a.eval_in(&inner.comps),
            b.eval_in(&inner.comps),
            c.eval_in(&inner.comps),
        )
    }

    /// `g ∘ self`.
    pub fn pullback(&self, g: &SpacePoly) -> SpacePoly {
        g.eval_in(&self.comps)
    }

    /// Coordinatewise `self - other`, reduced modulo `x^h z - Q`.
    pub fn difference_mod(&self, other: &AffineEndo3, h: u32, q: &BiPoly) -> [LaurentBiPoly; 3] {
        std::array::from_fn(|i| reduce_mod_surface(&self.comps[i].sub_ref(&other.comps[i]), h, q))
    }

    /// True if both maps agree on the surface `x^h z = Q`.
    pub fn agrees_mod(&self, other: &AffineEndo3, h: u32, q: &BiPoly) -> bool {
        self.difference_mod(other, h, q).iter().all(Ring::is_zero)
    }
}

impl fmt::Display for AffineEndo3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.comps[0], self.comps[1], self.comps[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_spacepoly;
    use serde_json::json;

    fn sp(s: &str) -> SpacePoly {
        parse_spacepoly(FieldSpec::Rationals, &json!(s)).unwrap()
    }

    #[test]
    fn composition_order() {
        let a = AffineEndo3::new(sp("x"), sp("y+x"), sp("z"));
        let b = AffineEndo3::new(sp("2*x"), sp("y"), sp("z"));
        // a∘b: y ↦ y + 2x
        assert_eq!(a.compose(&b).comps[1], sp("y+2*x"));
        // b∘a: x ↦ 2x, y ↦ y + x
        assert_eq!(b.compose(&a).comps[1], sp("y+x"));
        let id = AffineEndo3::identity(FieldSpec::Rationals);
        assert_eq!(a.compose(&id), a);
        assert_eq!(id.compose(&a), a);
    }

    #[test]
    fn involution_pulls_back_to_multiple() {
        let f1 = sp("x^2*z-(1-x)*(y^2-1)");
        let j = AffineEndo3::new(sp("-x"), sp("y"), sp("(1+x)*((1+x)*z+y^2-1)"));
        assert_eq!(j.pullback(&f1), sp("(1+x)^2").mul_ref(&f1));
        let q = crate::algebra::parse::parse_bipoly(FieldSpec::Rationals, &json!("(1-x)*(y^2-1)")).unwrap();
        assert!(reduce_mod_surface(&j.pullback(&f1), 2, &q).is_zero());
        assert!(j.compose(&j).agrees_mod(&AffineEndo3::identity(FieldSpec::Rationals), 2, &q));
    }
}
