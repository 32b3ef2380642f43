//! Exact scalars and polynomials over Q and F_p.

mod bipoly;
mod field;
mod laurent;
pub mod parse;
mod reduce;
mod ring;
mod roots;
mod series;
mod sparse;
mod unipoly;

pub use bipoly::BiPoly;
pub use field::{FieldSpec, Scalar};
pub use laurent::{LaurentBiPoly, LaurentPoly};
pub use reduce::reduce_mod_surface;
pub use ring::Ring;
pub use roots::{roots_in_field, RootReport};
pub use series::{series_exp_log, SeriesDirection, TruncatedSeries};
pub use sparse::{Exponents, MultiPoly, SparsePoly, VarExps};
pub use unipoly::UniPoly;

/// Polynomial in x, y, z.
pub type SpacePoly = SparsePoly<[u32; 3]>;

pub const XY: [&str; 2] = ["x", "y"];
pub const XYZ: [&str; 3] = ["x", "y", "z"];

/// Joins `coefficient * monomial` terms into a compact string such as
/// `1-x+1/2*x*y^2`. An empty list renders as `0`.
pub(crate) fn format_terms(terms: &[(Scalar, Vec<(String, u32)>)]) -> String {
    join_terms(terms.iter().map(|(c, mono)| {
        let m = mono
            .iter()
            .map(|(v, k)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect::<Vec<_>>()
            .join("*");
        (c.clone(), m)
    }))
}

/// Joins `(coefficient, rendered monomial)` pairs; an empty monomial is the
/// constant term.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = (Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let piece = if m.is_empty() {
            c.to_string()
        } else if c.is_one() {
            m
        } else if (-&c).is_one() {
            format!("-{m}")
        } else {
            format!("{c}*{m}")
        };
        if !out.is_empty() && !piece.starts_with('-') {
            out.push('+');
        }
        out.push_str(&piece);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Key of one monomial in the JSON coefficient-map encoding: `x^2*y`, or `1`
/// for the constant monomial.
pub(crate) fn monomial_key(exps: &[u32], names: &[&str]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                names[i].to_string()
            } else {
                format!("{}^{k}", names[i])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_formatting() {
        let q = FieldSpec::Rationals;
        let p = UniPoly::from_ints(q, &[1, -1]);
        assert_eq!(p.to_string(), "1-x");
        let b = BiPoly::from_terms(
            q,
            [([0, 0], q.int(-1)), ([1, 2], q.frac(1, 2).unwrap()), ([2, 0], q.int(3))],
        );
        assert_eq!(b.fmt_with(&XY), "-1+1/2*x*y^2+3*x^2");
        assert_eq!(monomial_key(&[2, 1], &XY), "x^2*y");
        assert_eq!(monomial_key(&[0, 0], &XY), "1");
    }
}
