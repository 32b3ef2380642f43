use super::bipoly::BiPoly;
use super::laurent::LaurentBiPoly;
use super::SpacePoly;

/// Normal form of `G` modulo `x^h z - Q`: substitutes `z = x^{-h} Q` and
/// expands in k[x, x^{-1}][y]. The result is zero exactly when `G` lies in
/// the ideal, provided `Q(0, y) != 0`.
pub fn reduce_mod_surface(g: &SpacePoly, h: u32, q: &BiPoly) -> LaurentBiPoly {
    let field = g.field();
    let x = LaurentBiPoly::x_pow(field, 1);
    let y = LaurentBiPoly::y(field);
    let z = LaurentBiPoly::from_poly(q).mul_xpow(-(h as i64));
    g.eval_in(&[x, y, z])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, Ring};

    fn surface(h: u32, q: &BiPoly) -> SpacePoly {
        let f = q.field();
        &SpacePoly::z(f).shift_var(0, h) - &q.to_space()
    }

    #[test]
    fn generator_reduces_to_zero() {
        let f = FieldSpec::Rationals;
        let y = BiPoly::y(f);
        let q = &(&y * &y) - &BiPoly::one_in(f);
        assert!(reduce_mod_surface(&surface(2, &q), 2, &q).is_zero());
    }

    #[test]
    fn x_survives() {
        let f = FieldSpec::Rationals;
        let q = BiPoly::y(f);
        let r = reduce_mod_surface(&SpacePoly::var(f, 0), 3, &q);
        assert_eq!(r, LaurentBiPoly::x_pow(f, 1));
    }
}
