//! Multipoint evaluation of Ore polynomials through llcm trees.
//!
//! For nonzero `x ∈ K` let `L_x = τ - τ(x)/x`. If `R` is the remainder of
//! `f` right-divided by `L_x` then `f(x) = R·x`. More generally `f` and its
//! remainder modulo the llcm of any set of `L_x` agree on that set, which
//! gives a divide-and-conquer evaluation down a binary tree of llcm's.

use std::ops::Range;

use thiserror::Error;

use crate::gf::{Field, FieldCtx, FieldElement};
use crate::linalg::MatFq;
use crate::ore::{OrePoly, OreRing};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MevalError {
    #[error("point {0} is zero")]
    ZeroPoint(usize),
    #[error("no points given")]
    EmptyInput,
}

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub poly: OrePoly,
    pub range: Range<usize>,
    pub children: Option<Box<(TreeNode, TreeNode)>>,
}

/// Binary tree of llcm's; leaf `i` holds `L_{x_i}`.
#[derive(Debug, Clone)]
pub struct LlcmTree {
    points: Vec<FieldElement>,
    root: TreeNode,
}

impl LlcmTree {
    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    /// Nodes in preorder.
    pub fn nodes(&self) -> Vec<&TreeNode> {
        let mut out = Vec::new();
        let mut stack = vec![&self.root];
        while let Some(n) = stack.pop() {
            out.push(n);
            if let Some(ch) = &n.children {
                stack.push(&ch.1);
                stack.push(&ch.0);
            }
        }
        out
    }
}

/// `L_x = τ - τ(x)/x` for nonzero `x`.
pub fn leaf_poly(ctx: &FieldCtx, x: &FieldElement) -> OrePoly {
    let c = ctx.mul(&ctx.frobenius(x, 1), &ctx.inv(x).expect("nonzero point"));
    OreRing::new(ctx).from_coeffs(vec![ctx.neg(&c), ctx.one()])
}

/// Builds the llcm tree, splitting a range of `ℓ` points at `⌈ℓ/2⌉`.
pub fn build_llcm_tree(ctx: &FieldCtx, points: &[FieldElement]) -> Result<LlcmTree, MevalError> {
    if points.is_empty() {
        return Err(MevalError::EmptyInput);
    }
    if let Some(i) = points.iter().position(|x| x.is_zero()) {
        return Err(MevalError::ZeroPoint(i));
    }
    let root = build_node(ctx, points, 0..points.len());
    Ok(LlcmTree { points: points.to_vec(), root })
}

fn build_node(ctx: &FieldCtx, points: &[FieldElement], range: Range<usize>) -> TreeNode {
    if range.len() == 1 {
        return TreeNode { poly: leaf_poly(ctx, &points[range.start]), range, children: None };
    }
    let mid = range.start + range.len().div_ceil(2);
    let (l, r) =
        par::join(|| build_node(ctx, points, range.start..mid), || build_node(ctx, points, mid..range.end));
    let poly = OreRing::new(ctx).llcm(&l.poly, &r.poly).expect("nonzero children");
    TreeNode { poly, range, children: Some(Box::new((l, r))) }
}

/// Evaluates `f` at the points of `tree`.
pub fn eval_with_tree(ctx: &FieldCtx, f: &OrePoly, tree: &LlcmTree) -> Vec<FieldElement> {
    let mut out = vec![ctx.zero(); tree.points.len()];
    eval_node(ctx, f, &tree.root, &tree.points, &mut out);
    out
}

fn eval_node(
    ctx: &FieldCtx,
    f: &OrePoly,
    node: &TreeNode,
    points: &[FieldElement],
    out: &mut [FieldElement],
) {
    let ring = OreRing::new(ctx);
    match &node.children {
        None => {
            let r = ring.rrem(f, &node.poly).expect("nonzero leaf");
            let i = node.range.start;
            out[i - node.range.start] = match r.coeff(0) {
                Some(c) => ctx.mul(c, &points[i]),
                None => ctx.zero(),
            };
        }
        Some(ch) => {
            let (l, r) = (&ch.0, &ch.1);
            let (out_l, out_r) = out.split_at_mut(l.range.len());
            par::join(
                || {
                    let fl = ring.rrem(f, &l.poly).expect("nonzero node");
                    eval_node(ctx, &fl, l, points, out_l)
                },
                || {
                    let fr = ring.rrem(f, &r.poly).expect("nonzero node");
                    eval_node(ctx, &fr, r, points, out_r)
                },
            );
        }
    }
}

/// `f(x_1), …, f(x_ℓ)`. Zero points are skipped and mapped to zero; `f` is
/// first reduced modulo `τ^d - 1`.
pub fn multipoint_eval(ctx: &FieldCtx, f: &OrePoly, points: &[FieldElement]) -> Vec<FieldElement> {
    let nonzero: Vec<usize> = (0..points.len()).filter(|&i| !points[i].is_zero()).collect();
    let mut out = vec![ctx.zero(); points.len()];
    if nonzero.is_empty() || f.is_zero() {
        return out;
    }
    let pts: Vec<FieldElement> = nonzero.iter().map(|&i| points[i].clone()).collect();
    let tree = build_llcm_tree(ctx, &pts).expect("nonzero points");
    let folded = OreRing::new(ctx).fold_mod_taud(f);
    for (i, v) in nonzero.into_iter().zip(eval_with_tree(ctx, &folded, &tree)) {
        out[i] = v;
    }
    out
}

/// How [`ore_matrix`] evaluates `f` on the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixMethod {
    /// One iterated-Frobenius evaluation per basis vector.
    Naive,
    /// Multipoint evaluation with the basis tree cached on the context.
    Multipoint,
}

/// The llcm tree of the basis `ε`, built on first use.
pub fn basis_tree(ctx: &FieldCtx) -> &LlcmTree {
    ctx.basis_tree.get_or_init(|| build_llcm_tree(ctx, &ctx.basis_vectors()).expect("basis is nonzero"))
}

/// The `d × d` matrix over `F_q` of `f`: column `i` holds `f(ε_i)`.
pub fn ore_matrix(ctx: &FieldCtx, f: &OrePoly, method: MatrixMethod) -> MatFq {
    let cols = match method {
        MatrixMethod::Naive => {
            let ring = OreRing::new(ctx);
            par::map_range(ctx.degree(), |i| ring.eval(f, &ctx.basis(i)))
        }
        MatrixMethod::Multipoint => ore_matrix_cols_with_tree(ctx, f, basis_tree(ctx)),
    };
    columns_to_matrix(ctx, &cols)
}

/// Multipoint path that also builds the basis tree, so its cost is counted.
pub fn ore_matrix_uncached(ctx: &FieldCtx, f: &OrePoly) -> MatFq {
    let tree = build_llcm_tree(ctx, &ctx.basis_vectors()).expect("basis is nonzero");
    columns_to_matrix(ctx, &ore_matrix_cols_with_tree(ctx, f, &tree))
}

fn ore_matrix_cols_with_tree(ctx: &FieldCtx, f: &OrePoly, tree: &LlcmTree) -> Vec<FieldElement> {
    if f.is_zero() {
        return vec![ctx.zero(); ctx.degree()];
    }
    let folded = OreRing::new(ctx).fold_mod_taud(f);
    eval_with_tree(ctx, &folded, tree)
}

fn columns_to_matrix(ctx: &FieldCtx, cols: &[FieldElement]) -> MatFq {
    let cols: Vec<Vec<u32>> = cols.iter().map(|c| c.coeffs().to_vec()).collect();
    MatFq::from_columns(ctx.degree(), &cols)
}
