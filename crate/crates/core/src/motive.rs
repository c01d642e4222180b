//! Anderson motive coordinates and rationality of torsion.
//!
//! `K{τ}` is a free `K[T]`-module of rank `r` on `1, τ, …, τ^{r-1}` under
//! `(λT^j)·τ^i = λ·τ^i·φ_T^j`. The `F_q[T]`-coordinates of `τ^d - 1` in the
//! basis `ε_k τ^i` have a gcd `g_φ`; for `a` prime to the characteristic,
//! `φ[a]` is rational exactly when `a | g_φ`.

use crate::drinfeld::{DrinfeldError, DrinfeldModule, ModuleStructure};
use crate::gf::{Field, FieldElement};
use crate::ore::OrePoly;
use crate::poly::{FqPoly, Poly};

/// `f = Σ_i C_i(T)·τ^i` with `C_i ∈ K[T]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotiveCoords {
    pub coords: Vec<Poly<FieldElement>>,
}

/// Coordinates by repeated right division by `φ_T`: the remainder at step
/// `j` is the `T^j` layer.
pub fn motive_coords(phi: &DrinfeldModule, f: &OrePoly) -> MotiveCoords {
    let ring = phi.ring();
    let ctx = phi.ctx();
    let r = phi.rank();
    let mut layers: Vec<Vec<FieldElement>> = vec![Vec::new(); r];
    let mut g = f.clone();
    while !g.is_zero() {
        let (q, c) = ring.rdiv(&g, phi.phi_t()).expect("phi_T is nonzero");
        for (i, layer) in layers.iter_mut().enumerate() {
            layer.push(c.coeff(i).cloned().unwrap_or_else(|| ctx.zero()));
        }
        g = q;
    }
    let kt = crate::poly::PolyRing::new(ctx);
    MotiveCoords { coords: layers.into_iter().map(|l| kt.from_coeffs(l)).collect() }
}

/// `Σ_i Σ_j c_{ij} τ^i φ_T^j`, the inverse of [`motive_coords`].
pub fn reconstruct(phi: &DrinfeldModule, m: &MotiveCoords) -> OrePoly {
    let ring = phi.ring();
    let mut out = ring.zero();
    for (i, c) in m.coords.iter().enumerate() {
        // Horner in φ_T on the right
        let mut acc = ring.zero();
        for lam in c.coeffs().iter().rev() {
            acc = ring.add(&ring.mul(&acc, phi.phi_t()), &ring.monomial(lam.clone(), i));
        }
        out = ring.add(&out, &acc);
    }
    out
}

/// `g_φ`: monic gcd of the `r·d` coordinate polynomials of `τ^d - 1`.
pub fn rational_lcm(phi: &DrinfeldModule) -> FqPoly {
    let ctx = phi.ctx();
    let ring = phi.ring();
    let d = ctx.degree();
    let f = ring.sub(&ring.tau_pow(d), &ring.one());
    let pr = phi.poly_ring();
    let mut g = pr.zero();
    for c in motive_coords(phi, &f).coords {
        for k in 0..d {
            let p = pr.from_coeffs(c.coeffs().iter().map(|x| x.coeffs()[k]).collect());
            if !p.is_zero() {
                g = pr.gcd(&g, &p).unwrap();
            }
        }
    }
    g
}

/// Whether `φ[a] ⊂ K`: `φ_a` right-divides `τ^h(τ^d - 1)` with `h` the
/// `τ`-valuation of `φ_a`.
pub fn is_torsion_rational(phi: &DrinfeldModule, a: &FqPoly) -> Result<bool, DrinfeldError> {
    if a.is_zero() {
        return Err(DrinfeldError::ZeroInput);
    }
    let ring = phi.ring();
    let phi_a = phi.phi_eval(a);
    let h = phi_a.valuation().unwrap();
    let d = phi.ctx().degree();
    let target = ring.sub(&ring.tau_pow(h + d), &ring.tau_pow(h));
    Ok(ring.right_divides(&phi_a, &target))
}

/// Outcome of the `p`-power search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PPower {
    /// `p`-adic valuation of the product of invariant factors.
    pub v: u32,
    /// Largest `s ≤ v` with `φ[p^s]` rational.
    pub s: u32,
}

/// Descending search for the largest rational `p^s`, `s ≤ v`.
pub fn max_rational_p_power(phi: &DrinfeldModule, points: &ModuleStructure) -> Result<PPower, DrinfeldError> {
    let pr = phi.poly_ring();
    let n = points.factors.iter().fold(pr.one(), |acc, f| pr.mul(&acc, f));
    let p = phi.char_p();
    let v = pr.valuation(&n, p).expect("n is nonzero and p nonconstant");
    for s in (0..=v).rev() {
        if is_torsion_rational(phi, &pr.pow(p, s))? {
            return Ok(PPower { v, s });
        }
    }
    unreachable!("p^0 torsion is always rational")
}

/// Whether `φ[p]` is zero over the algebraic closure, i.e. `φ_p` is a
/// single monomial. Then every `φ[p^s]` is rational and no `p`-power bound
/// comes from rationality alone.
pub fn has_trivial_p_torsion(phi: &DrinfeldModule) -> bool {
    let phi_p = phi.phi_eval(phi.char_p());
    phi_p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
}
