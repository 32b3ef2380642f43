//! Roots lying in the base field.
//!
//! Over Q the candidates come from the rational root theorem applied to the
//! square-free part; over F_p small fields are searched exhaustively and
//! larger ones split `gcd(f, y^p - y)` by Cantor–Zassenhaus with a fixed
//! shift sequence, so results are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldSpec, Scalar};
use super::unipoly::UniPoly;

/// Distinct roots of a polynomial in its base field, in ascending field
/// order, and whether the polynomial is `lc · ∏ (y - y_i)` with all `y_i`
/// distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub roots: Vec<Scalar>,
    pub splits_simply: bool,
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 12;

pub fn roots_in_field(p: &UniPoly) -> RootReport {
    let Some(deg) = p.degree() else {
        return RootReport {
            roots: Vec::new(),
            splits_simply: false,
        };
    };
    let field = p.field();
    let mut roots = match field {
        FieldSpec::Rationals => {
            let sqfree = square_free_part(p);
            rational_roots(&sqfree)
        }
        FieldSpec::Prime(q) if q <= EXHAUSTIVE_LIMIT => field
            .elements()
            .expect("prime field")
            .filter(|t| p.eval(t).is_zero())
            .collect(),
        FieldSpec::Prime(q) => {
            let y = UniPoly::var(field);
            let frob = y.pow_mod(q, &p.monic()).expect("nonzero modulus");
            let linear_part = p.gcd(&(&frob - &y));
            let mut out = Vec::new();
            split_linear(&linear_part, q, &mut out);
            out
        }
    };
    roots.sort();
    roots.dedup();
    let simple = p.gcd(&p.derivative()).degree() == Some(0);
    RootReport {
        splits_simply: simple && roots.len() == deg,
        roots,
    }
}

fn square_free_part(p: &UniPoly) -> UniPoly {
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    p.div_rem(&g).expect("nonzero gcd").0
}

/// Product of distinct monic linear factors → its roots.
fn split_linear(g: &UniPoly, q: u64, out: &mut Vec<Scalar>) {
    let field = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(-m.coeff(0));
        }
        Some(d) => {
            for shift in 0..q {
                let base = &UniPoly::var(field) + &UniPoly::constant_poly(field.int(shift as i64));
                let w = base.pow_mod((q - 1) / 2, g).expect("nonzero modulus");
                let h = g.gcd(&(&w - &UniPoly::one(field)));
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < d {
                    let rest = g.div_rem(&h).expect("nonzero factor").0;
                    split_linear(&h, q, out);
                    split_linear(&rest, q, out);
                    return;
                }
            }
            unreachable!("equal-degree splitting exhausted all shifts");
        }
    }
}

fn rational_roots(p: &UniPoly) -> Vec<Scalar> {
    let field = p.field();
    let ints = integer_coefficients(p);
    let mut roots = Vec::new();
    let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(field.zero());
    }
    let ints = &ints[lead_zeros..];
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let num_divs = divisors(&a0);
    let den_divs = divisors(&an);
    for n in &num_divs {
        for d in &den_divs {
            if !n.gcd(d).is_one() {
                continue;
            }
            for sign in [-1, 1] {
                let cand = BigRational::new(n * BigInt::from(sign), d.clone());
                let s = Scalar::Rational(cand);
                if p.eval(&s).is_zero() {
                    roots.push(s);
                }
            }
        }
    }
    roots
}

fn integer_coefficients(p: &UniPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        let q = c.as_rational().expect("rational coefficients");
        lcm = lcm.lcm(q.denom());
    }
    p.coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().expect("rational coefficients");
            (q * BigRational::from_integer(lcm.clone())).to_integer()
        })
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pw);
                pw *= &prime;
            }
        }
        divs = next;
    }
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: FieldSpec, c: &[i64]) -> UniPoly {
        UniPoly::from_ints(field, c)
    }

    #[test]
    fn y2_minus_1_over_q() {
        let q = FieldSpec::Rationals;
        let r = roots_in_field(&poly(q, &[-1, 0, 1]));
        assert_eq!(r.roots, vec![q.int(-1), q.int(1)]);
        assert!(r.splits_simply);
    }

    #[test]
    fn y2_minus_2_over_q_has_no_roots() {
        let r = roots_in_field(&poly(FieldSpec::Rationals, &[-2, 0, 1]));
        assert!(r.roots.is_empty());
        assert!(!r.splits_simply);
    }

    #[test]
    fn y2_plus_1_over_f5_by_exhaustion() {
        let f5 = FieldSpec::prime(5).unwrap();
        // 0^2+1=1, 1+1=2, 4+1=0, 9+1=0, 16+1=2 (mod 5)
        let expected: Vec<Scalar> = f5
            .elements()
            .unwrap()
            .filter(|t| (&(t * t) + &f5.one()).is_zero())
            .collect();
        assert_eq!(expected, vec![f5.int(2), f5.int(3)]);
        let r = roots_in_field(&poly(f5, &[1, 0, 1]));
        assert_eq!(r.roots, expected);
        assert!(r.splits_simply);
    }

    #[test]
    fn double_root_does_not_split_simply() {
        let q = FieldSpec::Rationals;
        let r = roots_in_field(&poly(q, &[0, 0, 1]));
        assert_eq!(r.roots, vec![q.zero()]);
        assert!(!r.splits_simply);
    }

    #[test]
    fn rational_roots_with_denominators() {
        let q = FieldSpec::Rationals;
        // (2y - 1)(3y + 2) = 6y^2 + y - 2
        let r = roots_in_field(&poly(q, &[-2, 1, 6]));
        assert_eq!(r.roots, vec![q.frac(-2, 3).unwrap(), q.frac(1, 2).unwrap()]);
        assert!(r.splits_simply);
    }

    #[test]
    fn large_prime_matches_product() {
        let p = FieldSpec::prime(1_000_003).unwrap();
        let roots = [5i64, 17, 999_999, 123_456];
        let mut f = UniPoly::one(p);
        for r in roots {
            f = &f * &poly(p, &[-r, 1]);
        }
        let rep = roots_in_field(&f);
        let mut want: Vec<Scalar> = roots.iter().map(|&r| p.int(r)).collect();
        want.sort();
        assert_eq!(rep.roots, want);
        assert!(rep.splits_simply);
    }
}
