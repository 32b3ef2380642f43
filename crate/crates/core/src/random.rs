//! Seeded generators of standard forms, data and trees, used by the
//! self-test command and the property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{FieldSpec, Ring, Scalar, UniPoly};
use crate::autos::{datum_validate, AutDatum};
use crate::surfaces::StandardForm;
use crate::trees::FineWeightedTree;

/// Integer (or small fraction, over Q) of absolute value at most `height`.
pub fn scalar<R: Rng>(rng: &mut R, f: FieldSpec, height: i64) -> Scalar {
    let n = rng.gen_range(-height..=height);
    match f {
        FieldSpec::Rationals if rng.gen_bool(0.2) => {
            f.frac(n, rng.gen_range(1..=3)).expect("nonzero denominator")
        }
        _ => f.int(n),
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, f: FieldSpec, height: i64) -> Scalar {
    loop {
        let c = scalar(rng, f, height);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Polynomial in x of degree below `len`.
pub fn poly<R: Rng>(rng: &mut R, f: FieldSpec, len: usize, height: i64) -> UniPoly {
    UniPoly::new(f, (0..len).map(|_| scalar(rng, f, height)).collect())
}

fn distinct_constants<R: Rng>(rng: &mut R, f: FieldSpec, r: usize, height: i64) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    let mut tries = 0;
    while out.len() < r {
        let c = scalar(rng, f, height.max(r as i64));
        if !out.contains(&c) {
            out.push(c);
        }
        tries += 1;
        assert!(tries < 10_000, "field too small for {r} distinct constants");
    }
    out
}

/// Constants stable under `κ ↦ μ(κ - t0) + t0` for some root of unity μ.
fn symmetric_constants<R: Rng>(rng: &mut R, f: FieldSpec, r: usize, height: i64) -> Vec<Scalar> {
    let mus = f.nontrivial_roots_of_unity();
    let mu = mus.choose(rng).expect("-1 is always available").clone();
    let bound = match f {
        FieldSpec::Rationals => 2,
        FieldSpec::Prime(p) => p - 1,
    };
    let s = mu.order(bound).expect("root of unity") as usize;
    let t0 = scalar(rng, f, height);
    let mut out: Vec<Scalar> = Vec::new();
    if r % s == 1 {
        out.push(t0.clone());
    }
    let mut tries = 0;
    while out.len() + s <= r && tries < 1000 {
        tries += 1;
        let d = nonzero_scalar(rng, f, height);
        let mut orbit = Vec::with_capacity(s);
        let mut v = d;
        for _ in 0..s {
            orbit.push(&t0 + &v);
            v = &v * &mu;
        }
        if orbit.iter().all(|c| !out.contains(c)) {
            out.extend(orbit);
        }
    }
    if out.len() != r {
        return distinct_constants(rng, f, r, height);
    }
    out
}

/// A random standard form. About half of the draws carry extra symmetry
/// (rotations of the constant terms, a shared tail, or only even powers
/// beyond the shared odd part) so that interesting data exist.
pub fn standard_form<R: Rng>(rng: &mut R, f: FieldSpec, h: u32, r: usize, height: i64) -> StandardForm {
    let hl = h as usize;
    let kind = rng.gen_range(0..4);
    let consts = if kind == 1 {
        symmetric_constants(rng, f, r, height)
    } else {
        distinct_constants(rng, f, r, height)
    };
    let tail = poly(rng, f, hl - 1, height).mul_xpow(1);
    let sigma = consts
        .into_iter()
        .map(|c| {
            let base = UniPoly::constant_poly(c);
            match kind {
                0 => base.add_ref(&poly(rng, f, hl, height).mul_xpow(1).truncate(hl)),
                1 | 2 => base.add_ref(&tail),
                _ => {
                    let even: Vec<Scalar> = (0..hl)
                        .map(|k| if k >= 2 && k % 2 == 0 { scalar(rng, f, height) } else { f.zero() })
                        .collect();
                    let odd: Vec<Scalar> = (0..hl)
                        .map(|k| if k % 2 == 1 { tail.coeff(k) } else { f.zero() })
                        .collect();
                    base.add_ref(&UniPoly::new(f, even)).add_ref(&UniPoly::new(f, odd))
                }
            }
        })
        .collect();
    StandardForm::new(f, h, sigma).expect("distinct constants, degree below h")
}

/// Valid `(α, μ, a)` with `b = 0` for the given scale candidates.
pub fn symmetries(s: &StandardForm, scales: &[Scalar]) -> Vec<AutDatum> {
    let f = s.field;
    let mut mus = vec![f.one()];
    mus.extend(f.nontrivial_roots_of_unity());
    let mut out = Vec::new();
    for mu in &mus {
        for a in scales {
            let moved: Vec<UniPoly> = s.sigma.iter().map(|p| p.scale_var(a)).collect();
            for j in 0..s.r() {
                let shift = moved[j].sub_ref(&s.sigma[0].scale(mu));
                let alpha: Option<Vec<usize>> = s
                    .sigma
                    .iter()
                    .map(|si| {
                        let t = si.scale(mu).add_ref(&shift);
                        moved.iter().position(|p| *p == t)
                    })
                    .collect();
                let Some(alpha) = alpha else { continue };
                let d = AutDatum {
                    alpha,
                    mu: mu.clone(),
                    a: a.clone(),
                    b: UniPoly::zero(f),
                };
                if datum_validate(s, &d).is_ok() && !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// A uniformly chosen symmetry with a random translation part.
pub fn valid_datum<R: Rng>(rng: &mut R, s: &StandardForm, height: i64) -> AutDatum {
    let f = s.field;
    let mut scales = vec![f.one(), f.int(-1)];
    scales.push(nonzero_scalar(rng, f, height));
    scales.retain(|a| !a.is_zero());
    let options = symmetries(s, &scales);
    let mut d = options.choose(rng).expect("identity is always valid").clone();
    let len = rng.gen_range(0..=2);
    d.b = poly(rng, f, len, height);
    d
}

/// Random fine tree with at most `max_nodes` nodes.
pub fn tree<R: Rng>(rng: &mut R, f: FieldSpec, max_nodes: usize, height: i64) -> FineWeightedTree {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let mut paths: Vec<Vec<Scalar>> = vec![Vec::new()];
    let mut nodes = 1;
    while nodes < n {
        let parent = paths.choose(rng).expect("root present").clone();
        let mut child = parent;
        child.push(scalar(rng, f, height));
        if !paths.contains(&child) {
            paths.push(child);
            nodes += 1;
        }
    }
    // keep only maximal paths: from_paths rebuilds the prefixes
    let leaves: Vec<Vec<Scalar>> = paths
        .iter()
        .filter(|p| !paths.iter().any(|q| q.len() > p.len() && q.starts_with(p)))
        .cloned()
        .collect();
    FineWeightedTree::from_paths(f, &leaves)
}
