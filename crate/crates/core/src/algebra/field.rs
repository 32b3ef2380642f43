//! Exact base fields: the rationals and prime fields F_p with p < 2^31.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const PRIME_BOUND: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p < PRIME_BOUND && is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// `num/den` reduced into the field; fails when `den` vanishes in it.
    pub fn frac(&self, num: i64, den: i64) -> Result<Scalar> {
        self.int(num).checked_div(&self.int(den))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue below p"),
                    p,
                }
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldSpec::Prime(_) => self
                .from_bigint(q.numer())
                .checked_div(&self.from_bigint(q.denom())),
        }
    }

    /// All elements, for prime fields only.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(move |value| Scalar::Residue { value, p })),
        }
    }

    /// Roots of unity of the field other than 1.
    ///
    /// Over Q this is just {-1}; over F_p every nonzero residue is one.
    pub fn nontrivial_roots_of_unity(&self) -> Vec<Scalar> {
        match *self {
            FieldSpec::Rationals => vec![self.int(-1)],
            FieldSpec::Prime(p) => (2..p).map(|value| Scalar::Residue { value, p }).collect(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of Q or F_p.
///
/// Rationals are kept in lowest terms with positive denominator (the
/// `BigRational` invariant), residues in `[0, p)`. Structural equality is
/// therefore field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        let inv = rhs.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero scalars.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv().ok_or(Error::DivisionByZero)?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplicative order, if finite and at most `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Exact k-th roots lying in the field.
    pub fn kth_roots(&self, k: u32) -> Vec<Scalar> {
        assert!(k >= 1);
        match self {
            Scalar::Rational(q) => rational_kth_roots(q, k)
                .into_iter()
                .map(Scalar::Rational)
                .collect(),
            Scalar::Residue { p, .. } => {
                let field = FieldSpec::Prime(*p);
                let mut coeffs = vec![field.zero(); k as usize + 1];
                coeffs[0] = -self;
                coeffs[k as usize] = field.one();
                super::roots::roots_in_field(&super::UniPoly::new(field, coeffs)).roots
            }
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!(
                "scalar field mismatch: {} vs {}",
                self.field(),
                other.field()
            );
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn integer_kth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return integer_kth_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

fn rational_kth_roots(q: &BigRational, k: u32) -> Vec<BigRational> {
    let (Some(n), Some(d)) = (integer_kth_root(q.numer(), k), integer_kth_root(q.denom(), k)) else {
        return Vec::new();
    };
    let root = BigRational::new(n, d);
    if k % 2 == 0 && !root.is_zero() {
        let mut v = vec![-root.clone(), root];
        v.sort();
        v
    } else {
        vec![root]
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on Q, residue order on F_p.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, p: pa }, Scalar::Residue { value: b, p: pb }) => {
                pa.cmp(pb).then(a.cmp(b))
            }
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % p,
                    p: *p,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: a * b % p,
                    p: *p,
                }
            }
            _ => unreachable!(),
        }
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] on untrusted input.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = FieldSpec::Rationals;
        let a = q.frac(6, -4).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!((&a + &q.frac(3, 2).unwrap()), q.zero());
    }

    #[test]
    fn residues_wrap() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.int(-1).to_string(), "4");
        assert_eq!(f5.int(2).inv().unwrap(), f5.int(3));
        assert_eq!(f5.int(2).order(10), Some(4));
        assert!(f5.zero().inv().is_none());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(FieldSpec::prime(9), Err(Error::NotPrime(9)));
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn kth_roots_over_q() {
        let q = FieldSpec::Rationals;
        let r = q.frac(4, 9).unwrap().kth_roots(2);
        assert_eq!(r, vec![q.frac(-2, 3).unwrap(), q.frac(2, 3).unwrap()]);
        assert_eq!(q.int(-8).kth_roots(3), vec![q.int(-2)]);
        assert!(q.int(2).kth_roots(2).is_empty());
    }

    #[test]
    fn kth_roots_over_fp() {
        let f5 = FieldSpec::prime(5).unwrap();
        let r = f5.int(1).kth_roots(4);
        assert_eq!(r.len(), 4);
    }
}
