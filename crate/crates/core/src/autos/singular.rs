use std::collections::BTreeSet;

use crate::algebra::{roots_in_field, BiPoly, Ring, Scalar};
use crate::error::{Error, Result};
use crate::surfaces::SurfaceEquation;

/// Values `t` for which `x^h z - Q - t = 0` is singular. Singular points
/// lie on `x = 0` and over common roots of `∂_y Q(0, y)` and `∂_x Q(0, y)`.
pub fn singular_values(h: u32, q: &BiPoly) -> Result<Vec<Scalar>> {
    if h < 2 {
        return Err(Error::HTooSmall(h));
    }
    let fiber = q.at_x0();
    let dy = fiber.derivative();
    let dx = q.partial(0).at_x0();
    let g = dy.gcd(&dx);
    if g.is_zero() {
        // every point of x = 0 is critical; fine only when Q(0, y) is constant
        return if fiber.is_constant() {
            Ok(vec![fiber.coeff(0).neg_ref()])
        } else {
            Err(Error::InfiniteSingularLocus)
        };
    }
    let values: BTreeSet<Scalar> = roots_in_field(&g)
        .roots
        .iter()
        .map(|y0| fiber.eval(y0).neg_ref())
        .collect();
    Ok(values.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    PossiblyEquivalent,
    NotAlgebraicallyEquivalent,
}

impl Obstruction {
    pub fn as_str(self) -> &'static str {
        match self {
            Obstruction::PossiblyEquivalent => "PossiblyEquivalent",
            Obstruction::NotAlgebraicallyEquivalent => "NotAlgebraicallyEquivalent",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub values_a: Vec<Scalar>,
    pub values_b: Vec<Scalar>,
    pub verdict: Obstruction,
}

/// Compares singular value sets by cardinality.
pub fn obstruction_compare(a: &SurfaceEquation, b: &SurfaceEquation) -> Result<ObstructionReport> {
    obstruction_compare_with(a, b, false)
}

/// With `affine_matching`, equal-size sets must also be related by some
/// `t ↦ u t + v`, `u ≠ 0`.
pub fn obstruction_compare_with(
    a: &SurfaceEquation,
    b: &SurfaceEquation,
    affine_matching: bool,
) -> Result<ObstructionReport> {
    let values_a = singular_values(a.h, &a.q)?;
    let values_b = singular_values(b.h, &b.q)?;
    let same = values_a.len() == values_b.len()
        && (!affine_matching || affinely_related(&values_a, &values_b));
    Ok(ObstructionReport {
        verdict: if same {
            Obstruction::PossiblyEquivalent
        } else {
            Obstruction::NotAlgebraicallyEquivalent
        },
        values_a,
        values_b,
    })
}

fn affinely_related(a: &[Scalar], b: &[Scalar]) -> bool {
    if a.len() < 2 {
        return true;
    }
    let target: BTreeSet<&Scalar> = b.iter().collect();
    b.iter().any(|b0| {
        b.iter().filter(|b1| *b1 != b0).any(|b1| {
            let u = &(b1 - b0) / &(&a[1] - &a[0]);
            let v = b0 - &(&u * &a[0]);
            a.iter().all(|t| target.contains(&(&(&u * t) + &v)))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_bipoly;
    use crate::algebra::FieldSpec;
    use serde_json::json;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn bp(s: &str) -> BiPoly {
        parse_bipoly(Q, &json!(s)).unwrap()
    }

    #[test]
    fn pair_of_embeddings() {
        assert_eq!(singular_values(2, &bp("y^2-1")).unwrap(), vec![Q.one()]);
        assert!(singular_values(2, &bp("(1-x)*(y^2-1)")).unwrap().is_empty());
        assert_eq!(singular_values(2, &bp("y^2")).unwrap(), vec![Q.zero()]);
        let rep = obstruction_compare(
            &SurfaceEquation::new(2, bp("y^2-1")),
            &SurfaceEquation::new(2, bp("(1-x)*(y^2-1)")),
        )
        .unwrap();
        assert_eq!(rep.verdict, Obstruction::NotAlgebraicallyEquivalent);
    }

    #[test]
    fn h_one_rejected() {
        assert_eq!(singular_values(1, &bp("y")), Err(Error::HTooSmall(1)));
    }

    #[test]
    fn affine_matching() {
        let a = SurfaceEquation::new(2, bp("y^3-3*y"));
        let b = SurfaceEquation::new(2, bp("y^3-3*y+1"));
        assert_eq!(singular_values(2, &a.q).unwrap(), vec![Q.int(-2), Q.int(2)]);
        assert_eq!(obstruction_compare_with(&a, &b, true).unwrap().verdict, Obstruction::PossiblyEquivalent);
    }
}
