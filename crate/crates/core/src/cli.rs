//! Command dispatch for `danielewski-lab` and the C ABI: JSON in, versioned
//! JSON envelope out.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::parse::{parse_scalar, parse_unipoly, poly_to_json, scalar_to_json};
use crate::algebra::{reduce_mod_surface, FieldSpec, Ring};
use crate::autos::{
    classify_generators, compose_data, datum_to_endo, datum_validate, endo_residual, ga_action,
    gm_action_exists, iso_decide, nonextendable_family, obstruction_compare_with, singular_values,
    AffineEndo3,
};
use crate::error::Error;
use crate::json::*;
use crate::random;
use crate::standardize::{conjugation_pair, hensel_standardize, holo_witness};
use crate::surfaces::{
    comb_equation_count, comb_equations, comb_from_tree, comb_var_names, is_danielewski,
    standard_to_tree, tree_to_standard, verify_comb_system, StandardForm,
};
use crate::trees::{sigma_from_tree, transition_atlas, validate_tree};

pub const SCHEMA: &str = "danielewski-lab/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const COMMANDS: [&str; 17] = [
    "validate-tree",
    "tree-to-surface",
    "surface-to-tree",
    "standardize",
    "conjugation",
    "holo-witness",
    "isomorphic",
    "aut-validate",
    "aut-compose",
    "aut-generators",
    "gm-exists",
    "ga-orbit",
    "nonextendable",
    "singular-values",
    "comb-embed",
    "comb-verify",
    "self-test",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub field: FieldSpec,
    pub order: u32,
    pub permissive_comb: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            field: FieldSpec::Rationals,
            order: 8,
            permissive_comb: false,
            seed: 0,
        }
    }
}

/// Exit status of one unit of work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Rejected = 2,
    Malformed = 1,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub envelope: Value,
}

enum Failure {
    Malformed(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Malformed(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

type Res = std::result::Result<Value, Failure>;

pub fn input_hash(input: &Value) -> String {
    let bytes = serde_json::to_vec(input).expect("serializable");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs one command on one parsed input document.
pub fn run_command(command: &str, input: &Value, opts: &Options) -> Outcome {
    let mut envelope = json!({
        "schema": SCHEMA,
        "command": command,
        "version": VERSION,
        "input_sha256": input_hash(input),
    });
    let result = if COMMANDS.contains(&command) {
        dispatch(command, input, opts)
    } else {
        Err(Failure::Malformed(format!("unknown command {command:?}")))
    };
    let status = match result {
        Ok(v) => {
            envelope["result"] = v;
            Status::Ok
        }
        Err(Failure::Domain(e)) => {
            envelope["error"] = json!(e.kind());
            envelope["message"] = json!(e.to_string());
            Status::Rejected
        }
        Err(Failure::Malformed(msg)) => {
            envelope["error"] = json!("MalformedInput");
            envelope["message"] = json!(msg);
            Status::Malformed
        }
    };
    Outcome { status, envelope }
}

/// Parses `text` as JSON first; a parse failure is reported as malformed.
pub fn run_command_str(command: &str, text: &str, opts: &Options) -> Outcome {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => run_command(command, &v, opts),
        Err(e) => Outcome {
            status: Status::Malformed,
            envelope: json!({
                "schema": SCHEMA,
                "command": command,
                "version": VERSION,
                "input_sha256": Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect::<String>(),
                "error": "MalformedInput",
                "message": format!("invalid JSON: {e}"),
            }),
        },
    }
}

fn order_of(input: &Value, opts: &Options) -> Result<u32, Failure> {
    match input.get("order") {
        None | Some(Value::Null) => Ok(opts.order),
        Some(_) => Ok(get_u32(input, "order")?),
    }
}

fn dispatch(command: &str, input: &Value, opts: &Options) -> Res {
    let field = field_of(input, opts.field)?;
    match command {
        "validate-tree" => {
            let t = tree_from_json(input, field)?;
            let rep = validate_tree(&t)?;
            let charts: Vec<Value> = sigma_from_tree(&t)?
                .iter()
                .map(|c| json!({"leaf": c.leaf, "level": c.level, "sigma": xpoly_json(&c.sigma)}))
                .collect();
            Ok(json!({
                "is_chain": rep.is_chain,
                "is_comb": rep.is_comb,
                "is_rake": rep.is_rake,
                "is_special": rep.is_special,
                "height": rep.height,
                "leaf_levels": rep.leaf_levels,
                "level1_count": rep.level1_count,
                "charts": charts,
            }))
        }
        "tree-to-surface" => {
            let t = tree_from_json(input, field)?;
            let s = tree_to_standard(&t)?;
            let atlas = transition_atlas(&t)?;
            let r = atlas.r;
            let mut cocycle_max_terms = 0;
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        if i != j && j != k && i != k {
                            let res = atlas.cocycle_residual(i, j, k);
                            if !res.is_zero() {
                                return Err(Failure::Domain(Error::IdentityFailure {
                                    equation: i * r * r + j * r + k,
                                    residual: res.to_string(),
                                }));
                            }
                            cocycle_max_terms = cocycle_max_terms.max(res.terms().len());
                        }
                    }
                }
            }
            let pairs: Vec<Value> = atlas
                .pairs
                .iter()
                .map(|p| json!({"i": p.i + 1, "j": p.j + 1, "f": laurent_json(&p.f), "g": laurent_json(&p.g)}))
                .collect();
            let mut out = standard_to_json(&s);
            out["atlas"] = json!({
                "degrees": atlas.degrees,
                "pairs": pairs,
                "cocycle_residual_terms": cocycle_max_terms,
                "canonical": atlas.canonical.iter().map(|c| poly_to_json(c, &["x", "u"])).collect::<Vec<_>>(),
            });
            Ok(out)
        }
        "surface-to-tree" => {
            let s = standard_from_json(input, field)?;
            Ok(tree_to_json(&standard_to_tree(&s)))
        }
        "standardize" => {
            let surf = surface_from_json(input, field)?;
            let d = hensel_standardize(surf.h, &surf.q)?;
            let conj = conjugation_pair(&d)?;
            Ok(json!({
                "h": d.h,
                "sigma": d.sigma.iter().map(xpoly_json).collect::<Vec<_>>(),
                "R1": bipoly_json(&d.r1),
                "R2": bipoly_json(&d.r2),
                "leading": scalar_to_json(&d.leading),
                "residual": bipoly_json(&d.residual()),
                "bezout": {"f": bipoly_json(&conj.f), "g": bipoly_json(&conj.g)},
            }))
        }
        "conjugation" => {
            let surf = surface_from_json(input, field)?;
            let d = hensel_standardize(surf.h, &surf.q)?;
            let c = conjugation_pair(&d)?;
            Ok(json!({
                "phi_up": endo_json(&c.phi_up),
                "phi_down": endo_json(&c.phi_down),
                "f": bipoly_json(&c.f),
                "g": bipoly_json(&c.g),
                "up_down_residual": residuals_json(&c.up_down_residual),
                "down_up_residual": residuals_json(&c.down_up_residual),
            }))
        }
        "holo-witness" => {
            let surf = surface_from_json(input, field)?;
            let d = hensel_standardize(surf.h, &surf.q)?;
            let w = holo_witness(&d, order_of(input, opts)?)?;
            Ok(json!({
                "lambda": scalar_to_json(&w.lambda),
                "f": bipoly_json(&w.f),
                "order": w.order,
                "exp_series": series_json(&w.exp_series),
                "psi": endo_json(&w.psi),
                "congruence_residual": series_json(&w.congruence_residual),
                "residual": series_json(&w.residual),
            }))
        }
        "isomorphic" => {
            let s1 = standard_from_json(get(input, "first")?, field)?;
            let s2 = standard_from_json(get(input, "second")?, field)?;
            Ok(match iso_decide(&s1, &s2)? {
                None => json!({"isomorphic": false}),
                Some(w) => json!({
                    "isomorphic": true,
                    "witness": {
                        "a": scalar_to_json(&w.a),
                        "mu": scalar_to_json(&w.mu),
                        "tau": xpoly_json(&w.tau),
                        "alpha": w.alpha.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    },
                    "map": endo_json(&w.map),
                    "residual": bipoly_json(&w.residual),
                    "pullback_residual": spacepoly_json(&w.pullback_residual),
                }),
            })
        }
        "aut-validate" => {
            let s = standard_from_json(get(input, "surface")?, field)?;
            let d = datum_from_json(get(input, "datum")?, field)?;
            let c = datum_validate(&s, &d)?;
            let psi = datum_to_endo(&s, &d)?;
            Ok(json!({
                "valid": true,
                "c": xpoly_json(&c),
                "endo": endo_json(&psi),
                "residual": spacepoly_json(&endo_residual(&s, &d, &psi)),
            }))
        }
        "aut-compose" => {
            let s = standard_from_json(get(input, "surface")?, field)?;
            let d1 = datum_from_json(get(input, "d1")?, field)?;
            let d2 = datum_from_json(get(input, "d2")?, field)?;
            let d = compose_data(&s, &d1, &d2)?;
            let lhs = datum_to_endo(&s, &d)?;
            let rhs = datum_to_endo(&s, &d2)?.compose(&datum_to_endo(&s, &d1)?);
            let diff: Vec<Value> = (0..3)
                .map(|i| spacepoly_json(&lhs.comps[i].sub_ref(&rhs.comps[i])))
                .collect();
            Ok(json!({
                "datum": datum_to_json(&d),
                "endo": endo_json(&lhs),
                "homomorphism_residual": diff,
            }))
        }
        "aut-generators" => {
            let s = standard_from_json(input, field)?;
            let rep = classify_generators(&s)?;
            Ok(json!({
                "always_a": rep.always_a,
                "b_witness": rep.b_witness.as_ref().map(|t| json!({"tau": xpoly_json(t)})),
                "c_witness": rep.c_witness.as_ref().map(|w| json!({
                    "tau": xpoly_json(&w.tau),
                    "q0": w.q0,
                    "scalings": w.scalings.iter().map(|(a, q, t)| json!({
                        "a": scalar_to_json(a), "q": q, "tau": xpoly_json(t)
                    })).collect::<Vec<_>>(),
                })),
                "d_witness": rep.d_witness.as_ref().map(|w| json!({
                    "tau": xpoly_json(&w.tau), "s": w.s, "i": w.i, "mu": scalar_to_json(&w.mu)
                })),
                "e_witness": rep.e_witness.as_ref().map(|c| json!({"c": xpoly_json(c)})),
                "f_flag": rep.f_flag,
                "samples": rep.samples.iter().map(|(n, e)| json!({"name": n, "endo": endo_json(e)})).collect::<Vec<_>>(),
                "notes": rep.notes,
            }))
        }
        "gm-exists" => {
            let s = standard_from_json(input, field)?;
            Ok(match gm_action_exists(&s)? {
                Some(tau) => json!({"exists": true, "tau": xpoly_json(&tau)}),
                None => json!({"exists": false}),
            })
        }
        "ga-orbit" => {
            let surf = surface_from_json(input, field)?;
            let b = parse_unipoly(field, get(input, "b")?, "x")?;
            let t = parse_scalar(field, get(input, "t")?)?;
            let e = ga_action(surf.h, &surf.q, &b, &t)?;
            let defining = surf.defining();
            let mut out = json!({
                "endo": endo_json(&e),
                "surface_residual": laurent_bi_json(&reduce_mod_surface(&e.pullback(&defining), surf.h, &surf.q)),
            });
            if let Some(v) = input.get("t2").filter(|v| !v.is_null()) {
                let t2 = parse_scalar(field, v)?;
                let joint = ga_action(surf.h, &surf.q, &b, &(&t + &t2))?;
                let both = e.compose(&ga_action(surf.h, &surf.q, &b, &t2)?);
                out["group_law_residual"] = endo_diff_json(&both, &joint);
            }
            Ok(out)
        }
        "nonextendable" => {
            let h = get_u32(input, "h")?;
            let p = parse_unipoly(field, get(input, "P")?, "y")?;
            let a = parse_scalar(field, get(input, "a")?)?;
            let a2 = match input.get("a2").filter(|v| !v.is_null()) {
                Some(v) => Some(parse_scalar(field, v)?),
                None => None,
            };
            let rep = nonextendable_family(h, &p, &a, a2.as_ref(), order_of(input, opts)?)?;
            Ok(json!({
                "Q": bipoly_json(&rep.q),
                "theta": endo_json(&rep.theta),
                "surface_residual": laurent_bi_json(&rep.surface_residual),
                "x_component_is_ax": rep.x_component_is_ax,
                "group_law": rep.group_law.as_ref().map(|(b, r)| json!({
                    "a2": scalar_to_json(b), "residual": residuals_json(r)
                })),
                "involution_residual": rep.involution_residual.as_ref().map(|r| residuals_json(r)),
                "order": rep.order,
                "phi_a": endo_json(&rep.phi_a),
                "phi_a_residual": residuals_json(&rep.phi_a_residual),
            }))
        }
        "singular-values" => {
            if input.get("first").is_some() {
                let a = surface_from_json(get(input, "first")?, field)?;
                let b = surface_from_json(get(input, "second")?, field)?;
                let matching = input.get("affine_matching").and_then(Value::as_bool).unwrap_or(false);
                let rep = obstruction_compare_with(&a, &b, matching)?;
                Ok(json!({
                    "first": scalars_json(&rep.values_a),
                    "second": scalars_json(&rep.values_b),
                    "verdict": rep.verdict.as_str(),
                }))
            } else {
                let surf = surface_from_json(input, field)?;
                Ok(json!({"values": scalars_json(&singular_values(surf.h, &surf.q)?)}))
            }
        }
        "comb-embed" | "comb-verify" => {
            let (h, p_list) = if input.get("nodes").is_some() {
                comb_from_tree(&tree_from_json(input, field)?)?
            } else {
                let h = get_u32(input, "h")?;
                let list = get(input, "P_list")?
                    .as_array()
                    .ok_or_else(|| Failure::Malformed("P_list must be a list".into()))?
                    .iter()
                    .map(|v| parse_unipoly(field, v, "t"))
                    .collect::<crate::Result<Vec<_>>>()?;
                (h, list)
            };
            let sys = comb_equations(h, &p_list, opts.permissive_comb)?;
            let names = comb_var_names(h);
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut out = json!({
                "h": h,
                "variables": names,
                "equation_count": sys.equations.len(),
                "expected_count": comb_equation_count(h),
                "warnings": sys.warnings,
            });
            if command == "comb-embed" {
                out["equations"] = sys.equations.iter().map(|e| poly_to_json(e, &names)).collect();
            } else {
                let v = verify_comb_system(&sys)?;
                out["verified"] = json!(true);
                out["residuals"] = v.residuals.iter().map(|r| json!(r.fmt_with("y-1"))).collect();
            }
            Ok(out)
        }
        "self-test" => Ok(self_test(opts.seed, input.get("cases").and_then(Value::as_u64).unwrap_or(25) as usize)?),
        _ => unreachable!("command list checked by caller"),
    }
}

fn endo_diff_json(a: &AffineEndo3, b: &AffineEndo3) -> Value {
    (0..3).map(|i| spacepoly_json(&a.comps[i].sub_ref(&b.comps[i]))).collect()
}

/// Seeded randomized checks of the main identities.
pub fn self_test(seed: u64, cases: usize) -> crate::Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0usize; 4];
    let mut failures = Vec::new();
    for n in 0..cases {
        let f = if n % 2 == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(5) };
        let h = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=4);
        let s = random::standard_form(&mut rng, f, h, r, 10);

        let d1 = random::valid_datum(&mut rng, &s, 10);
        let d2 = random::valid_datum(&mut rng, &s, 10);
        let e1 = datum_to_endo(&s, &d1)?;
        if !endo_residual(&s, &d1, &e1).is_zero() {
            failures.push(format!("pullback identity, case {n}"));
        }
        let c = compose_data(&s, &d1, &d2)?;
        if datum_to_endo(&s, &c)? != datum_to_endo(&s, &d2)?.compose(&e1) {
            failures.push(format!("composition homomorphism, case {n}"));
        }
        counts[0] += 1;

        let moved = transformed(&mut rng, &s);
        match iso_decide(&s, &moved)? {
            Some(w) if w.residual.is_zero() => counts[1] += 1,
            _ => failures.push(format!("iso round trip, case {n}")),
        }

        let q = s.p();
        let b = random::poly(&mut rng, f, 2, 5);
        let (t1, t2) = (random::scalar(&mut rng, f, 5), random::scalar(&mut rng, f, 5));
        let lhs = ga_action(h, &q, &b, &t1)?.compose(&ga_action(h, &q, &b, &t2)?);
        if lhs != ga_action(h, &q, &b, &(&t1 + &t2))? {
            failures.push(format!("additive group law, case {n}"));
        }
        counts[2] += 1;

        let rep = classify_generators(&s)?;
        counts[3] += rep.samples.len();
        is_danielewski(h, &q)?;
    }
    Ok(json!({
        "seed": seed,
        "cases": cases,
        "datum_cases": counts[0],
        "iso_round_trips": counts[1],
        "ga_cases": counts[2],
        "generator_samples": counts[3],
        "failures": failures,
        "passed": failures.is_empty(),
    }))
}

/// Applies a random `(a, μ, τ, α)` to `s`: the charts of the result are
/// `σ'_{α(i)}(x) = μ σ_i(x/a) + c(x/a)`, shuffled.
pub fn transformed<R: Rng>(rng: &mut R, s: &StandardForm) -> StandardForm {
    use rand::seq::SliceRandom;
    let f = s.field;
    let a = random::nonzero_scalar(rng, f, 4);
    let mu = random::nonzero_scalar(rng, f, 4);
    let c = random::poly(rng, f, s.h as usize, 6);
    let a_inv = a.inv().expect("nonzero");
    let mut sigma: Vec<_> = s
        .sigma
        .iter()
        .map(|p| p.scale(&mu).add_ref(&c).scale_var(&a_inv))
        .collect();
    sigma.shuffle(rng);
    StandardForm::new(f, s.h, sigma).expect("affine image keeps constants distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(cmd: &str, input: Value) -> Outcome {
        run_command(cmd, &input, &Options::default())
    }

    #[test]
    fn standardize_example() {
        let out = run("standardize", json!({"h": 2, "Q": "(1-x)*(y^2-1)"}));
        assert_eq!(out.status, Status::Ok);
        let r = &out.envelope["result"];
        assert_eq!(r["sigma"], json!([{"1": "-1"}, {"1": "1"}]));
        assert_eq!(r["R1"], json!({"1": "1", "x": "-1"}));
        assert_eq!(r["R2"], json!({}));
        assert_eq!(out.envelope["schema"], json!(SCHEMA));
    }

    #[test]
    fn isomorphic_example() {
        let out = run(
            "isomorphic",
            json!({"first": {"h": 2, "sigma": ["1", "-1"]}, "second": {"h": 2, "sigma": ["0", "1"]}}),
        );
        let w = &out.envelope["result"]["witness"];
        assert_eq!((&w["a"], &w["mu"], &w["tau"]), (&json!("1"), &json!("1/2"), &json!({"1": "-1"})));
    }

    #[test]
    fn exit_codes() {
        let dup = json!({"nodes": [{"id": 0}, {"id": 1, "parent": 0, "w": "1"}, {"id": 2, "parent": 0, "w": "1"}]});
        let out = run("validate-tree", dup);
        assert_eq!(out.status, Status::Rejected);
        assert_eq!(out.envelope["error"], json!("DuplicateChildWeight"));
        assert_eq!(run("standardize", json!({"h": 2})).status, Status::Malformed);
        assert_eq!(run("no-such", json!({})).status, Status::Malformed);
        assert_eq!(run_command_str("standardize", "{", &Options::default()).status, Status::Malformed);
    }

    #[test]
    fn tree_surface_round_trip() {
        let tree = json!({"nodes": [
            {"id": 10}, {"id": 11, "parent": 10, "w": "1"}, {"id": 12, "parent": 10, "w": "-1"},
            {"id": 13, "parent": 11, "w": "0"}, {"id": 14, "parent": 12, "w": "2"}
        ]});
        let surf = run("tree-to-surface", tree.clone());
        assert_eq!(surf.status, Status::Ok);
        let back = run("surface-to-tree", surf.envelope["result"].clone());
        let t1 = tree_from_json(&tree, FieldSpec::Rationals).unwrap();
        let t2 = tree_from_json(&back.envelope["result"], FieldSpec::Rationals).unwrap();
        assert!(t1.same_shape_as(&t2).unwrap());
    }

    #[test]
    fn deterministic_self_test() {
        let a = run_command("self-test", &json!({"cases": 6}), &Options { seed: 9, ..Options::default() });
        let b = run_command("self-test", &json!({"cases": 6}), &Options { seed: 9, ..Options::default() });
        assert_eq!(a, b);
        assert_eq!(a.envelope["result"]["passed"], json!(true));
    }
}
