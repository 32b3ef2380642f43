//! Fine k-weighted rooted trees, their shapes, and the gluing data of the
//! associated A¹-bundle over the line with a multiple origin.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{BiPoly, FieldSpec, LaurentPoly, Ring, Scalar, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub id: u64,
    pub parent: Option<u64>,
    /// Weight of the edge from the parent; `None` only for the root.
    pub weight: Option<Scalar>,
}

/// A rooted tree with field-valued edge weights, as supplied by the caller.
/// Nothing is checked on construction; [`validate_tree`] enforces the
/// structural and fine conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineWeightedTree {
    pub field: FieldSpec,
    pub nodes: Vec<TreeNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub is_chain: bool,
    pub is_comb: bool,
    pub is_rake: bool,
    pub is_special: bool,
    pub height: usize,
    /// Leaf levels in chart order.
    pub leaf_levels: Vec<usize>,
    pub level1_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafChart {
    pub leaf: u64,
    pub level: usize,
    pub sigma: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionPair {
    pub i: usize,
    pub j: usize,
    pub f: LaurentPoly,
    pub g: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionAtlas {
    pub r: usize,
    pub degrees: Vec<usize>,
    pub sigma: Vec<UniPoly>,
    /// One entry per ordered pair `i != j`, in lexicographic order.
    pub pairs: Vec<TransitionPair>,
    /// `ψ_i = x^{n_i} u + σ_i(x)`, with `u` stored as the second variable.
    pub canonical: Vec<BiPoly>,
}

/// Validated view: indices into `nodes`, children sorted by weight.
#[derive(Clone, Debug)]
pub(crate) struct Structure {
    pub root: usize,
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
    pub weights: Vec<Option<Scalar>>,
    pub ids: Vec<u64>,
    /// Nodes in depth-first chart order.
    pub order: Vec<usize>,
}

impl Structure {
    pub fn leaves(&self) -> Vec<usize> {
        self.order
            .iter()
            .copied()
            .filter(|&v| self.children[v].is_empty())
            .collect()
    }

    pub fn parent_chain(&self, parents: &[Option<usize>], mut v: usize) -> Vec<usize> {
        let mut chain = vec![v];
        while let Some(p) = parents[v] {
            chain.push(p);
            v = p;
        }
        chain.reverse();
        chain
    }
}

impl FineWeightedTree {
    pub fn new(field: FieldSpec, nodes: Vec<TreeNode>) -> Self {
        FineWeightedTree { field, nodes }
    }

    /// Builds a tree from root-to-node weight paths; every prefix of a path
    /// must also be present or is created implicitly.
    pub fn from_paths(field: FieldSpec, paths: &[Vec<Scalar>]) -> Self {
        let mut ids: BTreeMap<Vec<Scalar>, u64> = BTreeMap::new();
        let mut nodes = vec![TreeNode {
            id: 0,
            parent: None,
            weight: None,
        }];
        ids.insert(Vec::new(), 0);
        for path in paths {
            for len in 1..=path.len() {
                let prefix = &path[..len];
                if ids.contains_key(prefix) {
                    continue;
                }
                let id = nodes.len() as u64;
                let parent = ids[&path[..len - 1]];
                nodes.push(TreeNode {
                    id,
                    parent: Some(parent),
                    weight: Some(path[len - 1].clone()),
                });
                ids.insert(prefix.to_vec(), id);
            }
        }
        FineWeightedTree { field, nodes }
    }

    pub(crate) fn structure(&self) -> Result<Structure> {
        let n = self.nodes.len();
        if n == 0 {
            return Err(Error::MalformedTree("no nodes".into()));
        }
        let mut index = BTreeMap::new();
        for (k, node) in self.nodes.iter().enumerate() {
            if index.insert(node.id, k).is_some() {
                return Err(Error::MalformedTree(format!("duplicate node id {}", node.id)));
            }
        }
        let mut parents = vec![None; n];
        let mut roots = Vec::new();
        for (k, node) in self.nodes.iter().enumerate() {
            match node.parent {
                None => roots.push(k),
                Some(p) => {
                    let pk = *index.get(&p).ok_or_else(|| {
                        Error::MalformedTree(format!("node {} has unknown parent {p}", node.id))
                    })?;
                    parents[k] = Some(pk);
                    match &node.weight {
                        None => {
                            return Err(Error::MalformedTree(format!(
                                "edge to node {} has no weight",
                                node.id
                            )))
                        }
                        Some(w) if w.field() != self.field => {
                            return Err(Error::FieldMismatch(w.field().to_string(), self.field.to_string()))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        if roots.len() > 1 {
            return Err(Error::MultipleRoots(roots.len()));
        }
        let Some(&root) = roots.first() else {
            return Err(Error::Cycle(self.nodes[0].id));
        };
        let weights: Vec<Option<Scalar>> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(k, node)| if k == root { None } else { node.weight.clone() })
            .collect();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(k);
            }
        }
        for (k, ch) in children.iter_mut().enumerate() {
            ch.sort_by(|a, b| weights[*a].cmp(&weights[*b]));
            for pair in ch.windows(2) {
                if weights[pair[0]] == weights[pair[1]] {
                    return Err(Error::DuplicateChildWeight {
                        node: self.nodes[k].id,
                        weight: weights[pair[0]].as_ref().expect("child weight").to_string(),
                    });
                }
            }
        }
        let mut depth = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![(root, 0usize)];
        while let Some((v, d)) = stack.pop() {
            depth[v] = d;
            order.push(v);
            for &c in children[v].iter().rev() {
                stack.push((c, d + 1));
            }
        }
        if let Some(k) = depth.iter().position(|&d| d == usize::MAX) {
            return Err(Error::Cycle(self.nodes[k].id));
        }
        Ok(Structure {
            root,
            children,
            depth,
            weights,
            ids: self.nodes.iter().map(|node| node.id).collect(),
            order,
        })
    }

    /// Weight sequences from the root to every node. Two valid trees are
    /// equal up to relabelling and child order iff these sets agree.
    pub fn weight_paths(&self) -> Result<BTreeSet<Vec<Scalar>>> {
        let s = self.structure()?;
        let mut out = BTreeSet::new();
        let mut stack = vec![(s.root, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            for &c in &s.children[v] {
                let mut p: Vec<Scalar> = path.clone();
                p.push(s.weights[c].clone().expect("child weight"));
                stack.push((c, p));
            }
            out.insert(path);
        }
        Ok(out)
    }

    pub fn same_shape_as(&self, other: &FineWeightedTree) -> Result<bool> {
        Ok(self.field == other.field && self.weight_paths()? == other.weight_paths()?)
    }
}

pub fn validate_tree(t: &FineWeightedTree) -> Result<ShapeReport> {
    let s = t.structure()?;
    let leaves = s.leaves();
    let leaf_levels: Vec<usize> = leaves.iter().map(|&v| s.depth[v]).collect();
    let height = leaf_levels.iter().copied().max().unwrap_or(0);
    let is_leaf = |v: usize| s.children[v].is_empty();
    let is_chain = s.children.iter().all(|c| c.len() <= 1);
    let is_comb = (0..s.children.len())
        .filter(|&v| !is_leaf(v))
        .all(|v| s.children[v].iter().filter(|&&c| !is_leaf(c)).count() <= 1);
    let is_special = leaf_levels.windows(2).all(|w| w[0] == w[1]);
    let branching = s.children.iter().filter(|c| c.len() >= 2).count();
    let is_rake = is_special && height >= 1 && branching <= 1;
    let level1_count = s.depth.iter().filter(|&&d| d == 1).count();
    Ok(ShapeReport {
        is_chain,
        is_comb,
        is_rake,
        is_special,
        height,
        leaf_levels,
        level1_count,
    })
}

/// For each leaf in chart order, its level and
/// `σ(x) = Σ_j w(edge j) x^j` along the chain from the root.
pub fn sigma_from_tree(t: &FineWeightedTree) -> Result<Vec<LeafChart>> {
    let s = t.structure()?;
    let mut parents = vec![None; s.children.len()];
    for (v, ch) in s.children.iter().enumerate() {
        for &c in ch {
            parents[c] = Some(v);
        }
    }
    Ok(s
        .leaves()
        .into_iter()
        .map(|leaf| {
            let chain = s.parent_chain(&parents, leaf);
            let coeffs = chain[1..]
                .iter()
                .map(|&v| s.weights[v].clone().expect("edge weight"))
                .collect();
            LeafChart {
                leaf: s.ids[leaf],
                level: s.depth[leaf],
                sigma: UniPoly::new(t.field, coeffs),
            }
        })
        .collect())
}

pub fn transition_atlas(t: &FineWeightedTree) -> Result<TransitionAtlas> {
    let charts = sigma_from_tree(t)?;
    let field = t.field;
    let r = charts.len();
    let degrees: Vec<usize> = charts.iter().map(|c| c.level).collect();
    let sigma: Vec<UniPoly> = charts.iter().map(|c| c.sigma.clone()).collect();
    let f = |i: usize, j: usize| LaurentPoly::monomial(field, degrees[j] as i64 - degrees[i] as i64);
    let g = |i: usize, j: usize| {
        LaurentPoly::from_poly(&(&sigma[j] - &sigma[i])).mul_xpow(-(degrees[i] as i64))
    };
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let gij = g(i, j);
            if !gij.lowest_exponent().is_some_and(|e| e < 0) {
                return Err(Error::SeparatednessViolation { i, j });
            }
            pairs.push(TransitionPair {
                i,
                j,
                f: f(i, j),
                g: gij,
            });
        }
    }
    let atlas = TransitionAtlas {
        r,
        canonical: (0..r)
            .map(|i| {
                BiPoly::y(field)
                    .mul_x(degrees[i] as u32)
                    .add_ref(&BiPoly::from_x_poly(&sigma[i]))
            })
            .collect(),
        degrees,
        sigma,
        pairs,
    };
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let res = atlas.cocycle_residual(i, j, k);
                if !res.is_zero() {
                    return Err(Error::IdentityFailure {
                        equation: (i * r + j) * r + k,
                        residual: res.to_string(),
                    });
                }
            }
        }
    }
    Ok(atlas)
}

impl TransitionAtlas {
    fn field(&self) -> FieldSpec {
        self.sigma[0].field()
    }

    pub fn f(&self, i: usize, j: usize) -> LaurentPoly {
        LaurentPoly::monomial(self.field(), self.degrees[j] as i64 - self.degrees[i] as i64)
    }

    pub fn g(&self, i: usize, j: usize) -> LaurentPoly {
        LaurentPoly::from_poly(&(&self.sigma[j] - &self.sigma[i])).mul_xpow(-(self.degrees[i] as i64))
    }

    /// `g_ik - g_ij - x^{n_j - n_i} g_jk`.
    pub fn cocycle_residual(&self, i: usize, j: usize, k: usize) -> LaurentPoly {
        &(&self.g(i, k) - &self.g(i, j)) - &(&self.f(i, j) * &self.g(j, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn path(ws: &[i64]) -> Vec<Scalar> {
        ws.iter().map(|&w| q().int(w)).collect()
    }

    fn tree(paths: &[&[i64]]) -> FineWeightedTree {
        FineWeightedTree::from_paths(q(), &paths.iter().map(|p| path(p)).collect::<Vec<_>>())
    }

    #[test]
    fn chain_satisfies_every_shape() {
        let r = validate_tree(&tree(&[&[1, 2, 3]])).unwrap();
        assert!(r.is_chain && r.is_comb && r.is_rake && r.is_special);
        assert_eq!(r.height, 3);
    }

    #[test]
    fn one_node_tree() {
        let t = FineWeightedTree::from_paths(q(), &[]);
        let r = validate_tree(&t).unwrap();
        assert!(r.is_chain && r.is_comb && r.is_special && !r.is_rake);
        assert_eq!(r.leaf_levels, vec![0]);
        let s = sigma_from_tree(&t).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].sigma.is_zero());
        assert!(transition_atlas(&t).unwrap().pairs.is_empty());
    }

    #[test]
    fn duplicate_sibling_weight_rejected() {
        let t = FineWeightedTree::new(
            q(),
            vec![
                TreeNode { id: 0, parent: None, weight: None },
                TreeNode { id: 1, parent: Some(0), weight: Some(q().int(1)) },
                TreeNode { id: 2, parent: Some(0), weight: Some(q().int(1)) },
            ],
        );
        assert!(matches!(validate_tree(&t), Err(Error::DuplicateChildWeight { node: 0, .. })));
    }

    #[test]
    fn structural_errors() {
        let two_roots = FineWeightedTree::new(
            q(),
            vec![
                TreeNode { id: 0, parent: None, weight: None },
                TreeNode { id: 1, parent: None, weight: None },
            ],
        );
        assert!(matches!(validate_tree(&two_roots), Err(Error::MultipleRoots(2))));
        let cyclic = FineWeightedTree::new(
            q(),
            vec![
                TreeNode { id: 0, parent: None, weight: None },
                TreeNode { id: 1, parent: Some(2), weight: Some(q().int(0)) },
                TreeNode { id: 2, parent: Some(1), weight: Some(q().int(0)) },
            ],
        );
        assert!(matches!(validate_tree(&cyclic), Err(Error::Cycle(_))));
    }

    #[test]
    fn sigma_read_off() {
        let s = sigma_from_tree(&tree(&[&[5, 7]])).unwrap();
        assert_eq!(s[0].sigma, UniPoly::from_ints(q(), &[5, 7]));
        let s = sigma_from_tree(&tree(&[&[1, 0], &[-1, 3]])).unwrap();
        let got: BTreeSet<UniPoly> = s.into_iter().map(|c| c.sigma).collect();
        let want: BTreeSet<UniPoly> =
            [UniPoly::from_ints(q(), &[1]), UniPoly::from_ints(q(), &[-1, 3])].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn two_chain_rake_transition() {
        // σ = {1, -1} at level 2; charts are ordered by weight, so chart 0 is -1
        let atlas = transition_atlas(&tree(&[&[1, 0], &[-1, 0]])).unwrap();
        let g01 = atlas.pairs.iter().find(|p| p.i == 0 && p.j == 1).unwrap();
        assert_eq!(g01.f, LaurentPoly::monomial(q(), 0));
        assert_eq!(g01.g.to_string(), "2*x^-2");
        let g10 = atlas.g(1, 0);
        assert_eq!(g10.to_string(), "-2*x^-2");
    }
}
