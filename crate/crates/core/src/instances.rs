//! Seeded random instances: fields, Drinfeld modules, morphisms.
//!
//! `γ(T)` is uniform in `K`; `φ_T` has constant coefficient `γ(T)`, uniform
//! middle coefficients and a uniform nonzero leading coefficient.

use std::sync::Arc;

use rand::Rng;

use crate::drinfeld::{DrinfeldModule, Morphism};
use crate::gf::{FieldCtx, FieldElement, Fq};
use crate::linalg::MatFq;
use crate::meval::leaf_poly;
use crate::ore::{OrePoly, OreRing};
use crate::poly::{FqPoly, PolyRing};

pub fn random_module<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, r: usize, rng: &mut R) -> DrinfeldModule {
    assert!(r >= 1, "rank must be positive");
    let mut coeffs = vec![ctx.random(rng)];
    coeffs.extend((1..r).map(|_| ctx.random(rng)));
    coeffs.push(ctx.random_nonzero(rng));
    let phi = OreRing::new(ctx).from_coeffs(coeffs);
    DrinfeldModule::new(ctx.clone(), phi).expect("positive rank")
}

/// Uniform polynomial of degree at most `max_deg` (possibly zero).
pub fn random_poly<R: Rng + ?Sized>(fq: &Fq, max_deg: usize, rng: &mut R) -> FqPoly {
    let q = fq.order() as u32;
    PolyRing::new(fq).from_coeffs((0..=max_deg).map(|_| rng.gen_range(0..q)).collect())
}

/// Uniform monic polynomial of degree exactly `deg`.
pub fn random_monic<R: Rng + ?Sized>(fq: &Fq, deg: usize, rng: &mut R) -> FqPoly {
    let q = fq.order() as u32;
    let mut c: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..q)).collect();
    c.push(1);
    PolyRing::new(fq).from_coeffs(c)
}

/// All monic polynomials of degree `deg`, in counter order.
pub fn monic_polys(fq: &Fq, deg: usize) -> Vec<FqPoly> {
    let q = fq.order();
    let ring = PolyRing::new(fq);
    let count = q.pow(deg as u32);
    (0..count)
        .map(|mut n| {
            let mut c: Vec<u32> = (0..deg)
                .map(|_| {
                    let x = (n % q) as u32;
                    n /= q;
                    x
                })
                .collect();
            c.push(1);
            ring.from_coeffs(c)
        })
        .collect()
}

/// Every `(q, d)` with `q` a prime power and `q^d ≤ max_order`.
pub fn fields_up_to(max_order: u64) -> Vec<(u64, usize)> {
    let prime_power = |q: u64| {
        let p = (2..=q).find(|f| q.is_multiple_of(*f)).unwrap();
        let mut n = q;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    };
    (2..=max_order)
        .filter(|&q| prime_power(q))
        .flat_map(|q| {
            (1..)
                .take_while(move |&d| q.checked_pow(d as u32).is_some_and(|n| n <= max_order))
                .map(move |d| (q, d))
        })
        .collect()
}

/// An `F_q`-basis of the cyclic submodule `F_q[T]·x`: the Krylov vectors
/// `x, φ_T(x), …` up to the first dependency.
pub fn cyclic_submodule_basis(phi: &DrinfeldModule, x: &FieldElement) -> Vec<FieldElement> {
    let ctx = phi.ctx();
    let ring = phi.ring();
    let mut basis: Vec<FieldElement> = Vec::new();
    let mut y = x.clone();
    while !y.is_zero() {
        let mut cols: Vec<Vec<u32>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
        cols.push(y.coeffs().to_vec());
        if MatFq::from_columns(ctx.degree(), &cols).rank(ctx.fq()) < cols.len() {
            break;
        }
        basis.push(y.clone());
        y = ring.eval(phi.phi_t(), &y);
    }
    basis
}

/// The monic separable `u` whose roots are exactly the `F_q`-span of
/// `basis` (assumed independent): the llcm of the `L_y`.
pub fn subspace_polynomial(ctx: &FieldCtx, basis: &[FieldElement]) -> OrePoly {
    let ring = OreRing::new(ctx);
    basis.iter().fold(ring.one(), |acc, y| {
        let leaf = leaf_poly(ctx, y);
        if acc.degree() == Some(0) {
            leaf
        } else {
            ring.llcm(&acc, &leaf).expect("nonzero inputs")
        }
    })
}

/// Kinds of morphism drawn by [`random_morphism`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    Zero,
    /// `φ_a` with `deg a ≤ 3`.
    Endomorphism,
    /// `τ^k` composed with the subspace polynomial of a random cyclic submodule.
    Isogeny,
}

pub fn random_morphism<R: Rng + ?Sized>(phi: &DrinfeldModule, kind: MorphismKind, rng: &mut R) -> Morphism {
    let ctx = phi.ctx();
    let ring = phi.ring();
    let u = match kind {
        MorphismKind::Zero => ring.zero(),
        MorphismKind::Endomorphism => loop {
            let a = random_poly(phi.fq(), rng.gen_range(0..=3), rng);
            if !a.is_zero() {
                break phi.phi_eval(&a);
            }
        },
        MorphismKind::Isogeny => {
            let x = ctx.random(rng);
            let v = subspace_polynomial(ctx, &cyclic_submodule_basis(phi, &x));
            ring.mul(&ring.tau_pow(rng.gen_range(0..=2)), &v)
        }
    };
    Morphism::new(phi, u).expect("constructed morphisms are valid")
}
