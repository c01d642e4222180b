//! Drinfeld `F_q[T]`-modules, morphisms, and invariant factors of
//! submodules of points.
//!
//! A module `φ` is determined by `φ_T ∈ K{τ}`; `K` becomes an
//! `F_q[T]`-module through `a·x = φ_a(x)`. For a morphism `u` the kernel
//! `ker_K(u)` is a submodule, and its structure is read off the Frobenius
//! normal form of the matrix of `φ_T` restricted to it.

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Field, FieldCtx, FieldElement, Fq, GfError};
use crate::linalg::{
    frobenius_normal_form, local_min_poly, solve_in_span, FrobeniusForm, LinalgError, MatFq,
};
use crate::meval::{multipoint_eval, ore_matrix, MatrixMethod};
use crate::ore::{OreError, OrePoly, OreRing};
use crate::poly::{FqPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrinfeldError {
    #[error("phi_T must have positive tau-degree")]
    ZeroRank,
    #[error("constant coefficient of phi_T differs from gamma_T")]
    GammaMismatch,
    #[error("u is not a morphism: u*phi_T is not right-divisible by u")]
    NotAMorphism,
    #[error("phi_T does not stabilize the kernel: {0}")]
    NotStabilized(LinalgError),
    #[error("factors do not form a divisibility chain of monic nonconstant polynomials")]
    NotAChain,
    #[error("zero input")]
    ZeroInput,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Ore(#[from] OreError),
}

/// A Drinfeld `F_q[T]`-module over `K`.
#[derive(Debug, Clone)]
pub struct DrinfeldModule {
    ctx: Arc<FieldCtx>,
    gamma: FieldElement,
    phi_t: OrePoly,
    rank: usize,
    char_p: FqPoly,
}

impl DrinfeldModule {
    /// `γ(T)` is the constant coefficient of `φ_T`.
    pub fn new(ctx: Arc<FieldCtx>, phi_t: OrePoly) -> Result<Self, DrinfeldError> {
        for c in phi_t.coeffs() {
            ctx.check(c)?;
        }
        let rank = match phi_t.degree() {
            Some(r) if r >= 1 => r,
            _ => return Err(DrinfeldError::ZeroRank),
        };
        let gamma = phi_t.coeff(0).cloned().unwrap_or_else(|| ctx.zero());
        let char_p = min_poly_over_fq(&ctx, &gamma);
        Ok(DrinfeldModule { ctx, gamma, phi_t, rank, char_p })
    }

    /// As [`DrinfeldModule::new`], checking that `γ(T)` matches `φ_T`.
    pub fn with_gamma(
        ctx: Arc<FieldCtx>,
        gamma: FieldElement,
        phi_t: OrePoly,
    ) -> Result<Self, DrinfeldError> {
        ctx.check(&gamma)?;
        let m = DrinfeldModule::new(ctx, phi_t)?;
        if m.gamma != gamma {
            return Err(DrinfeldError::GammaMismatch);
        }
        Ok(m)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn fq(&self) -> &Fq {
        self.ctx.fq()
    }

    pub fn gamma(&self) -> &FieldElement {
        &self.gamma
    }

    pub fn phi_t(&self) -> &OrePoly {
        &self.phi_t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The characteristic: monic minimal polynomial of `γ(T)` over `F_q`.
    pub fn char_p(&self) -> &FqPoly {
        &self.char_p
    }

    pub fn ring(&self) -> OreRing<'_> {
        OreRing::new(&self.ctx)
    }

    pub fn poly_ring(&self) -> PolyRing<'_, Fq> {
        PolyRing::new(self.ctx.fq())
    }

    /// `φ_a = Σ a_k φ_T^k`, by Horner's rule.
    pub fn phi_eval(&self, a: &FqPoly) -> OrePoly {
        let ring = self.ring();
        a.coeffs().iter().rev().fold(ring.zero(), |acc, c| {
            ring.add(&ring.mul(&acc, &self.phi_t), &ring.constant(self.ctx.embed(*c)))
        })
    }

    /// `φ_a(x)` through the default vector evaluation.
    pub fn act(&self, a: &FqPoly, x: &FieldElement) -> FieldElement {
        NaiveHorner.eval(self, a, x)
    }
}

/// Minimal polynomial of `x` over `F_q`, from the first linear dependence
/// among `1, x, x², …`.
fn min_poly_over_fq(ctx: &FieldCtx, x: &FieldElement) -> FqPoly {
    let d = ctx.degree();
    let cols: Vec<Vec<u32>> = (0..d).map(|i| ctx.mul(x, &ctx.basis(i)).coeffs().to_vec()).collect();
    let mult = MatFq::from_columns(d, &cols);
    local_min_poly(&mult, ctx.one().coeffs(), ctx.fq())
}

/// Strategy for the vector evaluation `x ↦ φ_a(x)`.
pub trait VectorEval: Send + Sync {
    fn eval(&self, phi: &DrinfeldModule, a: &FqPoly, x: &FieldElement) -> FieldElement;
}

/// Horner's rule in `φ_T`: `deg a` evaluations of `φ_T` at a vector.
#[derive(Debug, Clone, Copy, Default)]
pub struct NaiveHorner;

impl VectorEval for NaiveHorner {
    fn eval(&self, phi: &DrinfeldModule, a: &FqPoly, x: &FieldElement) -> FieldElement {
        let ctx = phi.ctx();
        let ring = phi.ring();
        a.coeffs().iter().rev().fold(ctx.zero(), |acc, c| {
            let y = ring.eval(&phi.phi_t, &acc);
            if *c == 0 {
                y
            } else {
                ctx.add(&y, &ctx.scale(*c, x))
            }
        })
    }
}

/// `u: φ → ψ` with `u·φ_T = ψ_T·u`.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: DrinfeldModule,
    u: OrePoly,
    target_phi_t: OrePoly,
}

impl Morphism {
    /// Validates `u` by right division of `u·φ_T` by `u`; the quotient is `ψ_T`.
    pub fn new(phi: &DrinfeldModule, u: OrePoly) -> Result<Self, DrinfeldError> {
        for c in u.coeffs() {
            phi.ctx.check(c)?;
        }
        let ring = phi.ring();
        let target = if u.is_zero() {
            phi.phi_t.clone()
        } else {
            let (q, r) = ring.rdiv(&ring.mul(&u, &phi.phi_t), &u)?;
            if !r.is_zero() {
                return Err(DrinfeldError::NotAMorphism);
            }
            q
        };
        Ok(Morphism { source: phi.clone(), u, target_phi_t: target })
    }

    /// The zero morphism; its kernel is all of `K`.
    pub fn zero(phi: &DrinfeldModule) -> Self {
        Morphism { source: phi.clone(), u: OrePoly::default(), target_phi_t: phi.phi_t.clone() }
    }

    pub fn source(&self) -> &DrinfeldModule {
        &self.source
    }

    pub fn u(&self) -> &OrePoly {
        &self.u
    }

    pub fn target_phi_t(&self) -> &OrePoly {
        &self.target_phi_t
    }
}

/// Invariant factors `d_1 | … | d_ℓ` and a Frobenius decomposition
/// `x_1, …, x_ℓ`. The trivial module has `ℓ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleStructure {
    pub factors: Vec<FqPoly>,
    pub generators: Vec<FieldElement>,
}

impl ModuleStructure {
    /// `Σ deg d_i`, the `F_q`-dimension.
    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|f| f.degree().unwrap_or(0)).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Intermediate data of [`morphism_kernel_invariants`].
#[derive(Debug, Clone)]
pub struct KernelTrace {
    /// Matrix of `u` in the basis `ε`.
    pub m_u: MatFq,
    /// Kernel basis, as columns.
    pub n: MatFq,
    /// Coordinates of `φ_T(b_i)`.
    pub y: MatFq,
    /// Induced action: `N·X = Y`.
    pub x: MatFq,
    pub form: Option<FrobeniusForm>,
    pub structure: ModuleStructure,
}

/// Structure of `φ(ker_K u)`.
pub fn morphism_kernel_invariants(m: &Morphism) -> Result<ModuleStructure, DrinfeldError> {
    Ok(morphism_kernel_trace(m, MatrixMethod::Multipoint)?.structure)
}

/// [`morphism_kernel_invariants`] keeping every intermediate.
pub fn morphism_kernel_trace(m: &Morphism, method: MatrixMethod) -> Result<KernelTrace, DrinfeldError> {
    let phi = &m.source;
    let ctx = phi.ctx();
    let fq = ctx.fq();
    let d = ctx.degree();
    let m_u = ore_matrix(ctx, &m.u, method);
    let kernel = m_u.kernel_basis(fq);
    let n = MatFq::from_columns(d, &kernel);
    if kernel.is_empty() {
        return Ok(KernelTrace {
            m_u,
            n,
            y: MatFq::zero(d, 0),
            x: MatFq::zero(0, 0),
            form: None,
            structure: ModuleStructure::default(),
        });
    }
    let points: Vec<FieldElement> = kernel.iter().map(|b| ctx.wrap(b.clone())).collect();
    let images = match method {
        MatrixMethod::Multipoint => multipoint_eval(ctx, &phi.phi_t, &points),
        MatrixMethod::Naive => points.iter().map(|b| phi.ring().eval(&phi.phi_t, b)).collect(),
    };
    let y = MatFq::from_columns(d, &images.iter().map(|v| v.coeffs().to_vec()).collect::<Vec<_>>());
    let x = solve_in_span(&n, &y, fq).map_err(DrinfeldError::NotStabilized)?;
    let form = frobenius_normal_form(&x, fq);
    let ns = n.mul(&form.transform, fq);
    let generators = (0..form.blocks.len()).map(|i| ctx.wrap(ns.column(form.offset(i)))).collect();
    let structure = ModuleStructure { factors: form.blocks.clone(), generators };
    Ok(KernelTrace { m_u, n, y, x, form: Some(form), structure })
}

/// Structure of `φ(K)`.
pub fn module_of_points_invariants(phi: &DrinfeldModule) -> Result<ModuleStructure, DrinfeldError> {
    morphism_kernel_invariants(&Morphism::zero(phi))
}

/// Structure of the `a`-torsion `φ[a] ∩ K`, computed as the kernel of `φ_a`.
pub fn torsion_direct(phi: &DrinfeldModule, a: &FqPoly) -> Result<ModuleStructure, DrinfeldError> {
    if a.is_zero() {
        return Err(DrinfeldError::ZeroInput);
    }
    morphism_kernel_invariants(&Morphism::new(phi, phi.phi_eval(a))?)
}

/// `γ_i = gcd(a, d_i)` and `ρ_i = d_i / γ_i`, top-down from one reduction
/// of `a` modulo `d_ℓ`.
pub fn chain_gcd(fq: &Fq, a: &FqPoly, chain: &[FqPoly]) -> Result<(Vec<FqPoly>, Vec<FqPoly>), DrinfeldError> {
    let ring = PolyRing::new(fq);
    if a.is_zero() {
        return Err(DrinfeldError::ZeroInput);
    }
    let valid = chain.iter().all(|d| ring.is_monic(d) && d.degree().unwrap() >= 1)
        && chain.windows(2).all(|w| ring.divides(&w[0], &w[1]));
    if !valid {
        return Err(DrinfeldError::NotAChain);
    }
    let Some(last) = chain.last() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let reduced = ring.rem(a, last).unwrap();
    let mut gammas = vec![FqPoly::default(); chain.len()];
    let mut g = ring.gcd(&reduced, last).unwrap();
    for i in (0..chain.len()).rev() {
        g = ring.gcd(&g, &chain[i]).unwrap();
        gammas[i] = g.clone();
    }
    let rhos = chain.iter().zip(&gammas).map(|(d, g)| ring.exact_div(d, g).unwrap()).collect();
    Ok((gammas, rhos))
}

/// Structure of `φ[a] ∩ K` from that of `φ(K)`: factors `γ_i ≠ 1` with
/// generators `φ_{ρ_i}(x_i)`.
pub fn torsion_from_points(
    phi: &DrinfeldModule,
    a: &FqPoly,
    pts: &ModuleStructure,
) -> Result<ModuleStructure, DrinfeldError> {
    torsion_from_points_with(phi, a, pts, &NaiveHorner)
}

pub fn torsion_from_points_with(
    phi: &DrinfeldModule,
    a: &FqPoly,
    pts: &ModuleStructure,
    ev: &dyn VectorEval,
) -> Result<ModuleStructure, DrinfeldError> {
    let (gammas, rhos) = chain_gcd(phi.fq(), a, &pts.factors)?;
    let mut out = ModuleStructure::default();
    for ((g, rho), x) in gammas.into_iter().zip(&rhos).zip(&pts.generators) {
        if g.is_unit() {
            continue;
        }
        out.generators.push(ev.eval(phi, rho, x));
        out.factors.push(g);
    }
    Ok(out)
}
