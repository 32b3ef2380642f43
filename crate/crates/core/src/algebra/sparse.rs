use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use super::field::{FieldSpec, Scalar};
use super::ring::{Powers, Ring};

/// Exponent vectors of a sparse polynomial.
pub trait Exponents: Ord + Clone + Debug + Hash {
    fn zero() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn as_slice(&self) -> &[u32];
    fn from_slice(e: &[u32]) -> Self;
}

impl<const N: usize> Exponents for [u32; N] {
    fn zero() -> Self {
        [0; N]
    }
    fn add(&self, rhs: &Self) -> Self {
        std::array::from_fn(|i| self[i] + rhs[i])
    }
    fn as_slice(&self) -> &[u32] {
        self
    }
    fn from_slice(e: &[u32]) -> Self {
        assert!(e.len() <= N, "too many variables for exponent array");
        std::array::from_fn(|i| e.get(i).copied().unwrap_or(0))
    }
}

/// Exponents of a polynomial in an open-ended list of variables.
/// Trailing zeros are trimmed so each monomial has one representation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarExps(Vec<u32>);

impl Exponents for VarExps {
    fn zero() -> Self {
        VarExps(Vec::new())
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let v: Vec<u32> = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + rhs.0.get(i).unwrap_or(&0))
            .collect();
        VarExps::from_slice(&v)
    }
    fn as_slice(&self) -> &[u32] {
        &self.0
    }
    fn from_slice(e: &[u32]) -> Self {
        let mut v = e.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        VarExps(v)
    }
}

/// Sparse polynomial with exact coefficients. Zero coefficients are never
/// stored; terms are kept in exponent order, which makes iteration and
/// printing deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparsePoly<E: Exponents> {
    field: FieldSpec,
    terms: BTreeMap<E, Scalar>,
}

impl<E: Exponents> SparsePoly<E> {
    pub fn zero(field: FieldSpec) -> Self {
        SparsePoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (E, Scalar)>) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn monomial(c: Scalar, e: E) -> Self {
        Self::from_terms(c.field(), [(e, c)])
    }

    /// The i-th variable.
    pub fn var(field: FieldSpec, i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(field.one(), E::from_slice(&e))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &E) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, e: E, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Largest exponent of variable `i`, or `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.as_slice().get(i).copied().unwrap_or(0))
            .max()
    }

    /// Smallest exponent of variable `i`.
    pub fn min_degree_in(&self, i: usize) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.as_slice().get(i).copied().unwrap_or(0))
            .min()
    }

    pub fn map_terms(&self, mut f: impl FnMut(&E, &Scalar) -> Option<(E, Scalar)>) -> Self {
        Self::from_terms(self.field, self.terms.iter().filter_map(|(e, c)| f(e, c)))
    }

    /// Multiplication by the monomial `var_i^k`.
    pub fn shift_var(&self, i: usize, k: u32) -> Self {
        self.map_terms(|e, c| {
            let mut v = e.as_slice().to_vec();
            if v.len() <= i {
                v.resize(i + 1, 0);
            }
            v[i] += k;
            Some((E::from_slice(&v), c.clone()))
        })
    }

    /// Division by `var_i^k`, if every term is divisible.
    pub fn unshift_var(&self, i: usize, k: u32) -> Option<Self> {
        let mut out = Self::zero(self.field);
        for (e, c) in &self.terms {
            let mut v = e.as_slice().to_vec();
            let cur = v.get(i).copied().unwrap_or(0);
            if cur < k {
                return None;
            }
            v[i] = cur - k;
            out.add_term(E::from_slice(&v), c.clone());
        }
        Some(out)
    }

    /// Drops every term whose exponent in variable `i` is at least `n`.
    pub fn truncate_var(&self, i: usize, n: u32) -> Self {
        self.map_terms(|e, c| {
            (e.as_slice().get(i).copied().unwrap_or(0) < n).then(|| (e.clone(), c.clone()))
        })
    }

    pub fn partial(&self, i: usize) -> Self {
        self.map_terms(|e, c| {
            let mut v = e.as_slice().to_vec();
            let k = v.get(i).copied().unwrap_or(0);
            if k == 0 {
                return None;
            }
            v[i] = k - 1;
            Some((E::from_slice(&v), c * &self.field.int(k as i64)))
        })
    }

    /// Substitutes ring elements for the variables. Variables beyond the end
    /// of `values` must not occur.
    pub fn eval_in<R: Ring>(&self, values: &[R]) -> R {
        let mut powers: Vec<Powers<R>> = values.iter().map(Powers::new).collect();
        let mut acc = R::zero_in(self.field);
        for (e, c) in &self.terms {
            let mut term = R::constant(c);
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    let pw = powers
                        .get_mut(i)
                        .unwrap_or_else(|| panic!("no value for variable {i}"))
                        .get(k);
                    term = term.mul_ref(pw);
                }
            }
            acc = acc.add_ref(&term);
        }
        acc
    }

    /// Renders with the given variable names, e.g. `-1+x^2*y`.
    pub fn fmt_with(&self, names: &[&str]) -> String {
        let terms: Vec<(Scalar, Vec<(String, u32)>)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono = e
                    .as_slice()
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (names[i].to_string(), k))
                    .collect();
                (c.clone(), mono)
            })
            .collect();
        super::format_terms(&terms)
    }

    /// Re-indexes the exponents into another representation.
    pub fn convert<F: Exponents>(&self) -> SparsePoly<F> {
        SparsePoly::from_terms(
            self.field,
            self.terms.iter().map(|(e, c)| (F::from_slice(e.as_slice()), c.clone())),
        )
    }

    /// Number of variable slots that actually occur.
    pub fn num_vars(&self) -> usize {
        self.terms
            .keys()
            .map(|e| {
                let s = e.as_slice();
                s.iter().rposition(|&k| k > 0).map_or(0, |i| i + 1)
            })
            .max()
            .unwrap_or(0)
    }

    /// Monomial-string keyed coefficient map, e.g. `{"x^2*y": 1, "1": -1}`.
    pub fn monomial_map(&self, names: &[&str]) -> Vec<(String, Scalar)> {
        self.terms
            .iter()
            .map(|(e, c)| (super::monomial_key(e.as_slice(), names), c.clone()))
            .collect()
    }
}

impl<E: Exponents> Ring for SparsePoly<E> {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn zero_in(field: FieldSpec) -> Self {
        Self::zero(field)
    }
    fn constant(c: &Scalar) -> Self {
        Self::monomial(c.clone(), E::zero())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        self.map_terms(|e, c| Some((e.clone(), -c)))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, c: &Scalar) -> Self {
        self.map_terms(|e, a| Some((e.clone(), a * c)))
    }
}

impl<'a, E: Exponents> std::ops::Add<&'a SparsePoly<E>> for &'a SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn add(self, rhs: &SparsePoly<E>) -> SparsePoly<E> {
        self.add_ref(rhs)
    }
}
impl<'a, E: Exponents> std::ops::Sub<&'a SparsePoly<E>> for &'a SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn sub(self, rhs: &SparsePoly<E>) -> SparsePoly<E> {
        self.sub_ref(rhs)
    }
}
impl<'a, E: Exponents> std::ops::Mul<&'a SparsePoly<E>> for &'a SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn mul(self, rhs: &SparsePoly<E>) -> SparsePoly<E> {
        self.mul_ref(rhs)
    }
}
impl<E: Exponents> std::ops::Neg for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn neg(self) -> SparsePoly<E> {
        self.neg_ref()
    }
}
impl<E: Exponents> std::ops::Add for SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn add(self, rhs: SparsePoly<E>) -> SparsePoly<E> {
        self.add_ref(&rhs)
    }
}
impl<E: Exponents> std::ops::Sub for SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn sub(self, rhs: SparsePoly<E>) -> SparsePoly<E> {
        self.sub_ref(&rhs)
    }
}
impl<E: Exponents> std::ops::Mul for SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn mul(self, rhs: SparsePoly<E>) -> SparsePoly<E> {
        self.mul_ref(&rhs)
    }
}
impl<E: Exponents> std::ops::Neg for SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn neg(self) -> SparsePoly<E> {
        self.neg_ref()
    }
}

/// Polynomial in the open-ended variable list used by the comb system.
pub type MultiPoly = SparsePoly<VarExps>;
