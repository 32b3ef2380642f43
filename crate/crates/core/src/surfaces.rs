//! Surfaces `x^h z - Q(x, y) = 0`, their standard forms, the dictionary with
//! rakes, and the embedding equations of combs.

use crate::algebra::{
    roots_in_field, BiPoly, FieldSpec, LaurentBiPoly, MultiPoly, Ring, Scalar, SpacePoly, UniPoly,
};
use crate::error::{Error, Result};
use crate::trees::{sigma_from_tree, validate_tree, FineWeightedTree};

/// `x^h z - Q(x, y) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceEquation {
    pub h: u32,
    pub q: BiPoly,
}

/// `x^h z - ∏ (y - σ_i(x)) = 0` with `deg σ_i < h` and distinct `σ_i(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub h: u32,
    pub sigma: Vec<UniPoly>,
    pub field: FieldSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DanielewskiReport {
    pub r: usize,
    /// Roots of `Q(0, y)` in ascending field order.
    pub roots: Vec<Scalar>,
    pub class_group_rank: usize,
}

/// `x^h z - Q`.
pub fn defining_polynomial(h: u32, q: &BiPoly) -> SpacePoly {
    SpacePoly::z(q.field()).shift_var(0, h).sub_ref(&q.to_space())
}

impl SurfaceEquation {
    pub fn new(h: u32, q: BiPoly) -> Self {
        SurfaceEquation { h, q }
    }

    pub fn field(&self) -> FieldSpec {
        self.q.field()
    }

    pub fn defining(&self) -> SpacePoly {
        defining_polynomial(self.h, &self.q)
    }
}

impl StandardForm {
    pub fn new(field: FieldSpec, h: u32, sigma: Vec<UniPoly>) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidStandardForm("h must be at least 1".into()));
        }
        if sigma.is_empty() {
            return Err(Error::InvalidStandardForm("sigma is empty".into()));
        }
        for s in &sigma {
            if s.field() != field {
                return Err(Error::FieldMismatch(s.field().to_string(), field.to_string()));
            }
            if s.degree().is_some_and(|d| d >= h as usize) {
                return Err(Error::InvalidStandardForm(format!("deg({s}) >= h = {h}")));
            }
        }
        let mut c: Vec<Scalar> = sigma.iter().map(|s| s.coeff(0)).collect();
        c.sort();
        if let Some(w) = c.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidStandardForm(format!(
                "two sigmas share the constant term {}",
                w[0]
            )));
        }
        Ok(StandardForm { h, sigma, field })
    }

    pub fn r(&self) -> usize {
        self.sigma.len()
    }

    /// `∏ (y - σ_i(x))`.
    pub fn p(&self) -> BiPoly {
        product_of_roots(self.field, &self.sigma)
    }

    pub fn defining(&self) -> SpacePoly {
        defining_polynomial(self.h, &self.p())
    }

    pub fn surface(&self) -> SurfaceEquation {
        SurfaceEquation::new(self.h, self.p())
    }

    /// The same surface with σ listed by ascending constant term.
    pub fn sorted(&self) -> StandardForm {
        let mut sigma = self.sigma.clone();
        sigma.sort_by_key(|p| p.coeff(0));
        StandardForm { sigma, ..self.clone() }
    }
}

/// `∏ (y - s_i(x))` in k[x, y].
pub fn product_of_roots(field: FieldSpec, s: &[UniPoly]) -> BiPoly {
    let y = BiPoly::y(field);
    s.iter().fold(BiPoly::one_in(field), |acc, si| {
        acc.mul_ref(&y.sub_ref(&BiPoly::from_x_poly(si)))
    })
}

/// Accepts iff `Q(0, y)` splits over the field with simple roots.
pub fn is_danielewski(h: u32, q: &BiPoly) -> Result<DanielewskiReport> {
    if h == 0 {
        return Err(Error::InvalidStandardForm("h must be at least 1".into()));
    }
    let fiber = q.at_x0();
    if fiber.is_zero() {
        return Err(Error::ZeroFiberPolynomial);
    }
    let g = fiber.gcd(&fiber.derivative());
    if g.degree().unwrap_or(0) > 0 {
        if let Some(y0) = roots_in_field(&g).roots.first() {
            return Err(Error::MultipleRoot { y0: y0.to_string() });
        }
    }
    let rep = roots_in_field(&fiber);
    if !rep.splits_simply || rep.roots.is_empty() {
        return Err(Error::NotSplit);
    }
    let r = rep.roots.len();
    Ok(DanielewskiReport {
        r,
        roots: rep.roots,
        class_group_rank: r - 1,
    })
}

/// The rake whose chain i carries the weights `σ_{i,0}, …, σ_{i,h-1}`.
pub fn standard_to_tree(s: &StandardForm) -> FineWeightedTree {
    let paths: Vec<Vec<Scalar>> = s
        .sigma
        .iter()
        .map(|si| (0..s.h as usize).map(|j| si.coeff(j)).collect())
        .collect();
    FineWeightedTree::from_paths(s.field, &paths)
}

pub fn tree_to_standard(t: &FineWeightedTree) -> Result<StandardForm> {
    let report = validate_tree(t)?;
    if !report.is_special {
        let mut levels = report.leaf_levels.clone();
        levels.sort_unstable();
        levels.dedup();
        return Err(Error::LeavesAtMixedLevels(levels));
    }
    if !report.is_rake {
        return Err(Error::NotARake);
    }
    let charts = sigma_from_tree(t)?;
    if charts.len() > 1 && report.level1_count < charts.len() {
        let c = charts[0].sigma.coeff(0);
        return Err(Error::ConstantTermCollision(c.to_string()));
    }
    StandardForm::new(
        t.field,
        report.height as u32,
        charts.into_iter().map(|c| c.sigma).collect(),
    )
}

/// Embedding equations of a comb in the variables
/// `x, y_{-1}, …, y_{h-2}, z` (see [`comb_var_names`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombSystem {
    pub h: u32,
    pub p_list: Vec<UniPoly>,
    pub equations: Vec<MultiPoly>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombVerification {
    /// Values of `y_0, …, y_{h-2}, z` on the chart `x != 0`, as elements of
    /// k[x, x^{-1}][y_{-1}].
    pub solved: Vec<LaurentBiPoly>,
    /// One residual per equation; all zero when verification succeeds.
    pub residuals: Vec<LaurentBiPoly>,
}

pub fn comb_var_names(h: u32) -> Vec<String> {
    let mut names = vec!["x".to_string()];
    for m in -1..=(h as i64 - 2) {
        names.push(format!("y{m}"));
    }
    names.push("z".into());
    names
}

fn y_index(m: i64) -> usize {
    (m + 2) as usize
}

pub fn comb_equation_count(h: u32) -> usize {
    let h = h as usize;
    1 + 2 * (h - 1) + (h - 1) * h.saturating_sub(2) / 2
}

fn check_comb_level(level: usize, p: &UniPoly, permissive: bool) -> Result<Option<String>> {
    if !p.is_monic() {
        return Err(Error::NonMonic { level });
    }
    if p.degree() == Some(0) {
        if permissive {
            return Ok(Some(format!("P_{level} = 1: no leaves at level {}", level + 1)));
        }
        return Err(Error::EmptyCombLevel { level });
    }
    if p.coeff(0).is_zero() {
        return Err(Error::RootAtZero { level });
    }
    if p.gcd(&p.derivative()).degree().unwrap_or(0) > 0 {
        return Err(Error::CombMultipleRoot { level });
    }
    if !roots_in_field(p).splits_simply {
        return Err(Error::CombNotSplit { level });
    }
    Ok(None)
}

pub fn comb_equations(h: u32, p_list: &[UniPoly], permissive: bool) -> Result<CombSystem> {
    if h == 0 || p_list.len() != h as usize {
        return Err(Error::InvalidStandardForm(format!(
            "a comb of height {h} needs {h} polynomials, got {}",
            p_list.len()
        )));
    }
    let field = p_list[0].field();
    let mut warnings = Vec::new();
    for (l, p) in p_list.iter().enumerate() {
        if let Some(w) = check_comb_level(l, p, permissive)? {
            warnings.push(w);
        }
    }
    let hi = h as i64;
    let x = MultiPoly::var(field, 0);
    let z = MultiPoly::var(field, y_index(hi - 1));
    let y = |m: i64| MultiPoly::var(field, y_index(m));
    // P_l(y_{l-1})
    let p_at = |l: usize| p_list[l].eval_in(&y(l as i64 - 1));
    let prod = |from: usize, to: usize| {
        (from..=to).fold(MultiPoly::one_in(field), |acc, l| acc.mul_ref(&p_at(l)))
    };
    let top = y(hi - 2);
    let mut equations = vec![x.mul_ref(&z).sub_ref(&top.mul_ref(&prod(0, h as usize - 1)))];
    for i in 0..(h as usize).saturating_sub(1) {
        let ii = i as i64;
        equations.push(
            z.mul_ref(&y(ii - 1))
                .sub_ref(&y(ii).mul_ref(&top).mul_ref(&prod(i + 1, h as usize - 1))),
        );
        equations.push(x.mul_ref(&y(ii)).sub_ref(&y(ii - 1).mul_ref(&prod(0, i))));
    }
    for i in 0..(h as usize).saturating_sub(1) {
        for j in (i + 1)..(h as usize - 1) {
            let (ii, jj) = (i as i64, j as i64);
            equations.push(
                y(ii - 1)
                    .mul_ref(&y(jj))
                    .sub_ref(&y(ii).mul_ref(&y(jj - 1)).mul_ref(&prod(i + 1, j))),
            );
        }
    }
    debug_assert_eq!(equations.len(), comb_equation_count(h));
    Ok(CombSystem {
        h,
        p_list: p_list.to_vec(),
        equations,
        warnings,
    })
}

/// Solves the chain `x y_i = y_{i-1} ∏_{l<=i} P_l(y_{l-1})` and
/// `x z = y_{h-2} ∏ P_l(y_{l-1})` over `x != 0` and substitutes into every
/// equation of the system.
pub fn verify_comb_system(c: &CombSystem) -> Result<CombVerification> {
    let field = c.p_list[0].field();
    let h = c.h as usize;
    let x_inv = LaurentBiPoly::x_pow(field, -1);
    // ys[m + 1] = y_m for m = -1..=h-2
    let mut ys = vec![LaurentBiPoly::y(field)];
    let mut acc = LaurentBiPoly::one_in(field);
    for i in 0..h {
        acc = acc.mul_ref(&c.p_list[i].eval_in(&ys[i]));
        // the step after y_{h-2} yields z
        ys.push(x_inv.mul_ref(&ys[i]).mul_ref(&acc));
    }
    let mut values = vec![LaurentBiPoly::x_pow(field, 1)];
    values.extend(ys.iter().cloned());
    let mut residuals = Vec::with_capacity(c.equations.len());
    for (k, eq) in c.equations.iter().enumerate() {
        let res = eq.eval_in(&values);
        if !res.is_zero() {
            return Err(Error::IdentityFailure {
                equation: k,
                residual: res.fmt_with("y-1"),
            });
        }
        residuals.push(res);
    }
    Ok(CombVerification {
        solved: ys[1..].to_vec(),
        residuals,
    })
}

/// Reads `P_0, …, P_{h-1}` off a normalized comb: spine edges of weight 0
/// and a weight-0 leaf below the last spine node. `P_l` is the product of
/// `t - a` over the weights of the other leaves at level `l + 1`.
pub fn comb_from_tree(t: &FineWeightedTree) -> Result<(u32, Vec<UniPoly>)> {
    let report = validate_tree(t)?;
    if !report.is_comb {
        return Err(Error::CombNotNormalized("tree is not a comb".into()));
    }
    let s = t.structure()?;
    let field = t.field;
    let is_leaf = |v: usize| s.children[v].is_empty();
    if is_leaf(s.root) {
        return Err(Error::CombNotNormalized("tree has a single node".into()));
    }
    let mut spine = vec![s.root];
    loop {
        let v = *spine.last().expect("nonempty spine");
        match s.children[v].iter().find(|&&c| !is_leaf(c)) {
            Some(&c) => {
                if !s.weights[c].as_ref().expect("edge weight").is_zero() {
                    return Err(Error::CombNotNormalized(format!(
                        "spine edge to node {} has nonzero weight",
                        s.ids[c]
                    )));
                }
                spine.push(c);
            }
            None => break,
        }
    }
    let h = spine.len();
    let t_var = UniPoly::var(field);
    let mut p_list = Vec::with_capacity(h);
    for (l, &v) in spine.iter().enumerate() {
        let mut p = UniPoly::one(field);
        let mut saw_zero = false;
        for &c in s.children[v].iter().filter(|&&c| is_leaf(c)) {
            let w = s.weights[c].clone().expect("edge weight");
            if l + 1 == h && w.is_zero() {
                saw_zero = true;
                continue;
            }
            p = &p * &(&t_var - &UniPoly::constant_poly(w));
        }
        if l + 1 == h && !saw_zero {
            return Err(Error::CombNotNormalized(
                "last spine node has no leaf of weight 0".into(),
            ));
        }
        p_list.push(p);
    }
    Ok((h as u32, p_list))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_bipoly;
    use serde_json::json;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn bp(s: &str) -> BiPoly {
        parse_bipoly(q(), &json!(s)).unwrap()
    }

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(q(), c)
    }

    #[test]
    fn danielewski_predicate() {
        let r = is_danielewski(2, &bp("y^2-1")).unwrap();
        assert_eq!(r.r, 2);
        assert_eq!(r.roots, vec![q().int(-1), q().int(1)]);
        assert_eq!(r.class_group_rank, 1);
        assert_eq!(is_danielewski(1, &bp("y^2")), Err(Error::MultipleRoot { y0: "0".into() }));
        assert_eq!(is_danielewski(2, &bp("(1-x)*(y^2-1)")).unwrap().roots.len(), 2);
        assert_eq!(is_danielewski(2, &bp("x*y")), Err(Error::ZeroFiberPolynomial));
        assert_eq!(is_danielewski(2, &bp("y^2-2")), Err(Error::NotSplit));
        assert_eq!(is_danielewski(2, &bp("3")), Err(Error::NotSplit));
    }

    #[test]
    fn rake_dictionary() {
        let s = StandardForm::new(q(), 2, vec![up(&[1]), up(&[-1])]).unwrap();
        let t = standard_to_tree(&s);
        let paths = t.weight_paths().unwrap();
        assert!(paths.contains(&vec![q().int(1), q().int(0)]));
        assert!(paths.contains(&vec![q().int(-1), q().int(0)]));
        let back = tree_to_standard(&t).unwrap();
        assert_eq!(back.h, 2);
        assert_eq!(back.sorted(), s.sorted());
    }

    #[test]
    fn mixed_levels_rejected() {
        let t = FineWeightedTree::from_paths(q(), &[vec![q().int(0)], vec![q().int(1), q().int(0)]]);
        assert!(matches!(tree_to_standard(&t), Err(Error::LeavesAtMixedLevels(_))));
    }

    #[test]
    fn branching_below_root_collides() {
        let t = FineWeightedTree::from_paths(
            q(),
            &[vec![q().int(3), q().int(0)], vec![q().int(3), q().int(1)]],
        );
        assert!(matches!(tree_to_standard(&t), Err(Error::ConstantTermCollision(_))));
    }

    #[test]
    fn classical_h1_comb() {
        let c = comb_equations(1, &[up(&[-1, 1])], false).unwrap();
        assert_eq!(c.equations.len(), 1);
        let names = comb_var_names(1);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        assert_eq!(c.equations[0].fmt_with(&names), "y-1-y-1^2+x*z");
        verify_comb_system(&c).unwrap();
    }

    #[test]
    fn h2_comb_equations() {
        let c = comb_equations(2, &[up(&[-1, 1]), up(&[-1, 1])], false).unwrap();
        let names = comb_var_names(2);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let parse = |s: &str| crate::algebra::parse::parse_expr(q(), s, &["x", "ym", "y0", "z"]).unwrap();
        let want = [
            parse("x*z - y0*(ym-1)*(y0-1)"),
            parse("z*ym - y0^2*(y0-1)"),
            parse("x*y0 - ym*(ym-1)"),
        ];
        assert_eq!(c.equations, want, "{:?}", c.equations.iter().map(|e| e.fmt_with(&names)).collect::<Vec<_>>());
        verify_comb_system(&c).unwrap();
    }

    #[test]
    fn tampered_comb_fails() {
        let mut c = comb_equations(2, &[up(&[-1, 1]), up(&[-1, 1])], false).unwrap();
        c.equations[1] = c.equations[1].neg_ref().add_ref(&MultiPoly::var(q(), 3).mul_ref(&MultiPoly::var(q(), 1)).scale(&q().int(2)));
        assert!(matches!(verify_comb_system(&c), Err(Error::IdentityFailure { equation: 1, .. })));
    }

    #[test]
    fn comb_level_checks() {
        assert_eq!(comb_equations(1, &[up(&[0, 1])], false), Err(Error::RootAtZero { level: 0 }));
        assert_eq!(comb_equations(1, &[up(&[-1, 2])], false), Err(Error::NonMonic { level: 0 }));
        assert_eq!(comb_equations(1, &[up(&[1, 2, 1])], false), Err(Error::CombMultipleRoot { level: 0 }));
        assert_eq!(comb_equations(1, &[up(&[1, 0, 1])], false), Err(Error::CombNotSplit { level: 0 }));
        assert_eq!(
            comb_equations(2, &[up(&[1]), up(&[-1, 1])], false),
            Err(Error::EmptyCombLevel { level: 0 })
        );
        let c = comb_equations(2, &[up(&[1]), up(&[-1, 1])], true).unwrap();
        assert_eq!(c.warnings.len(), 1);
        verify_comb_system(&c).unwrap();
    }

    #[test]
    fn normalized_comb_from_tree() {
        // spine root -0-> s1; root has leaf 2; s1 has leaves 0 and 3
        let w = |v: i64| q().int(v);
        let t = FineWeightedTree::from_paths(
            q(),
            &[vec![w(2)], vec![w(0), w(0)], vec![w(0), w(3)]],
        );
        let (h, p) = comb_from_tree(&t).unwrap();
        assert_eq!(h, 2);
        assert_eq!(p, vec![up(&[-2, 1]), up(&[-3, 1])]);
        let bad = FineWeightedTree::from_paths(q(), &[vec![w(2)], vec![w(1), w(0)]]);
        assert!(matches!(comb_from_tree(&bad), Err(Error::CombNotNormalized(_))));
    }
}
