use std::fmt;

use super::field::{FieldSpec, Scalar};
use super::ring::Ring;
use super::sparse::SparsePoly;
use super::unipoly::UniPoly;
use super::{SpacePoly, XY, XYZ};

/// Polynomial in x (variable 0) and y (variable 1).
pub type BiPoly = SparsePoly<[u32; 2]>;

impl SparsePoly<[u32; 2]> {
    pub fn x(field: FieldSpec) -> Self {
        Self::var(field, 0)
    }

    pub fn y(field: FieldSpec) -> Self {
        Self::var(field, 1)
    }

    /// Embeds a polynomial in x.
    pub fn from_x_poly(p: &UniPoly) -> Self {
        Self::from_terms(
            p.field(),
            p.coeffs().iter().enumerate().map(|(i, c)| ([i as u32, 0], c.clone())),
        )
    }

    /// Embeds a polynomial in y.
    pub fn from_y_poly(p: &UniPoly) -> Self {
        Self::from_terms(
            p.field(),
            p.coeffs().iter().enumerate().map(|(j, c)| ([0, j as u32], c.clone())),
        )
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.degree_in(0)
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.degree_in(1)
    }

    /// Coefficient of `y^j`, a polynomial in x.
    pub fn y_coeff(&self, j: u32) -> UniPoly {
        let mut c = Vec::new();
        for (e, v) in self.terms() {
            if e[1] == j {
                let i = e[0] as usize;
                if c.len() <= i {
                    c.resize(i + 1, self.field().zero());
                }
                c[i] = v.clone();
            }
        }
        UniPoly::new(self.field(), c)
    }

    /// Coefficient of `x^i`, a polynomial in y.
    pub fn x_coeff(&self, i: u32) -> UniPoly {
        let mut c = Vec::new();
        for (e, v) in self.terms() {
            if e[0] == i {
                let j = e[1] as usize;
                if c.len() <= j {
                    c.resize(j + 1, self.field().zero());
                }
                c[j] = v.clone();
            }
        }
        UniPoly::new(self.field(), c)
    }

    /// `Q(0, y)`.
    pub fn at_x0(&self) -> UniPoly {
        self.x_coeff(0)
    }

    pub fn is_free_of_x(&self) -> bool {
        self.deg_x().unwrap_or(0) == 0
    }

    /// `Q(x, s(x))`.
    pub fn eval_y(&self, s: &UniPoly) -> UniPoly {
        self.eval_in(&[UniPoly::var(self.field()), s.clone()])
    }

    /// `Q(x, s(x, y))`.
    pub fn subst_y(&self, s: &BiPoly) -> BiPoly {
        self.eval_in(&[BiPoly::x(self.field()), s.clone()])
    }

    /// `Q(a·x, y)`.
    pub fn scale_x(&self, a: &Scalar) -> BiPoly {
        self.map_terms(|e, c| Some((*e, c * &a.pow(e[0] as u64))))
    }

    pub fn truncate_x(&self, n: u32) -> BiPoly {
        self.truncate_var(0, n)
    }

    pub fn mul_x(&self, k: u32) -> BiPoly {
        self.shift_var(0, k)
    }

    pub fn div_x(&self, k: u32) -> Option<BiPoly> {
        self.unshift_var(0, k)
    }

    /// Division by a polynomial that is monic in y, over k[x]:
    /// `self = quot·p + rem` with `deg_y rem < deg_y p`.
    pub fn div_rem_monic_y(&self, p: &BiPoly) -> (BiPoly, BiPoly) {
        let d = p.deg_y().expect("nonzero divisor");
        assert!(
            p.y_coeff(d).is_one_poly(),
            "divisor must be monic in y"
        );
        let field = self.field();
        let mut quot = BiPoly::zero(field);
        let mut rem = self.clone();
        while let Some(dr) = rem.deg_y() {
            if dr < d || rem.is_zero() {
                break;
            }
            let lead = BiPoly::from_x_poly(&rem.y_coeff(dr)).shift_var(1, dr - d);
            rem = rem.sub_ref(&lead.mul_ref(p));
            quot = quot.add_ref(&lead);
        }
        (quot, rem)
    }

    /// The same polynomial viewed in k[x, y, z].
    pub fn to_space(&self) -> SpacePoly {
        SpacePoly::from_terms(self.field(), self.terms().map(|(e, c)| ([e[0], e[1], 0], c.clone())))
    }
}

impl UniPoly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

impl fmt::Display for SparsePoly<[u32; 2]> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&XY))
    }
}

impl fmt::Display for SparsePoly<[u32; 3]> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&XYZ))
    }
}

impl SparsePoly<[u32; 3]> {
    pub fn z(field: FieldSpec) -> Self {
        Self::var(field, 2)
    }

    /// Drops the z-variable if it does not occur.
    pub fn to_bipoly(&self) -> Option<BiPoly> {
        if self.degree_in(2).unwrap_or(0) > 0 {
            return None;
        }
        Some(BiPoly::from_terms(self.field(), self.terms().map(|(e, c)| ([e[0], e[1]], c.clone()))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn monic_division_in_y() {
        let f = q();
        let x = BiPoly::x(f);
        let y = BiPoly::y(f);
        let one = BiPoly::one_in(f);
        // ((1+x) y^2 + x^2 y) = (1+x)(y^2-y) + (1+x+x^2) y
        let a = &(&one + &x) * &(&y * &y);
        let a = &a + &(&(&x * &x) * &y);
        let p = &(&y * &y) - &y;
        let (quot, rem) = a.div_rem_monic_y(&p);
        assert_eq!(quot, &one + &x);
        assert_eq!(rem, &(&(&one + &x) + &(&x * &x)) * &y);
        assert_eq!(&(&quot * &p) + &rem, a);
    }

    #[test]
    fn substitution_and_scaling() {
        let f = q();
        let x = BiPoly::x(f);
        let y = BiPoly::y(f);
        let p = &(&y * &y) - &x;
        assert_eq!(p.eval_y(&UniPoly::from_ints(f, &[0, 1])), UniPoly::from_ints(f, &[0, -1, 1]));
        assert_eq!(p.scale_x(&f.int(2)), &(&y * &y) - &x.scale(&f.int(2)));
        assert_eq!(p.at_x0(), UniPoly::from_ints(f, &[0, 0, 1]));
        assert_eq!(p.y_coeff(0), UniPoly::from_ints(f, &[0, -1]));
    }
}
