//! The Ore polynomial ring `K{τ}` with `τ·a = a^q·τ`.
//!
//! Polynomials act on `K` by `f(x) = Σ a_i x^{q^i}`. Division is on the
//! right: `rdiv(f, g)` returns `(q, r)` with `f = q·g + r`.

use thiserror::Error;

use crate::gf::{Field, FieldCtx, FieldElement, GfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OreError {
    #[error("right division by the zero Ore polynomial")]
    DivisionByZero,
    #[error("rgcd of two zero Ore polynomials")]
    BothZero,
    #[error("zero input")]
    ZeroInput,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// An element of `K{τ}`, coefficients ascending in `τ`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrePoly {
    coeffs: Vec<FieldElement>,
}

impl OrePoly {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `τ`-degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the first nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&FieldElement> {
        self.coeffs.get(i)
    }

    /// Nonzero constant coefficient. Over a finite field this is equivalent
    /// to the kernel over the algebraic closure having full dimension.
    pub fn is_separable(&self) -> bool {
        self.coeffs.first().is_some_and(|c| !c.is_zero())
    }
}

/// Multiplication kernel for `K{τ}`.
pub trait MulStrategy: Send + Sync {
    fn mul(&self, ctx: &FieldCtx, f: &OrePoly, g: &OrePoly) -> OrePoly;
}

/// Quadratic multiplication: `f·g = Σ_i f_i τ^i(g) τ^i`, with `τ^i(g)`
/// obtained from `τ^{i-1}(g)` by one twist of every coefficient.
#[derive(Debug, Clone, Copy, Default)]
pub struct Schoolbook;

impl MulStrategy for Schoolbook {
    fn mul(&self, ctx: &FieldCtx, f: &OrePoly, g: &OrePoly) -> OrePoly {
        if f.is_zero() || g.is_zero() {
            return OrePoly { coeffs: Vec::new() };
        }
        let (n, m) = (f.coeffs.len(), g.coeffs.len());
        let mut out = vec![ctx.zero(); n + m - 1];
        let mut tw = g.coeffs.clone();
        for (i, fi) in f.coeffs.iter().enumerate() {
            if i > 0 {
                tw = tw.iter().map(|c| ctx.frobenius(c, 1)).collect();
            }
            if fi.is_zero() {
                continue;
            }
            for (j, t) in tw.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(fi, t));
            }
        }
        trim(out)
    }
}

static SCHOOLBOOK: Schoolbook = Schoolbook;

/// `K{τ}` over a field context, with a pluggable multiplication.
#[derive(Clone, Copy)]
pub struct OreRing<'a> {
    ctx: &'a FieldCtx,
    strategy: &'a dyn MulStrategy,
}

impl<'a> OreRing<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Self {
        OreRing { ctx, strategy: &SCHOOLBOOK }
    }

    pub fn with_strategy(ctx: &'a FieldCtx, strategy: &'a dyn MulStrategy) -> Self {
        OreRing { ctx, strategy }
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    /// Validated constructor for external input.
    pub fn element(&self, coeffs: Vec<FieldElement>) -> Result<OrePoly, OreError> {
        for c in &coeffs {
            self.ctx.check(c)?;
        }
        Ok(self.from_coeffs(coeffs))
    }

    /// Drops trailing zeros; coefficients must belong to this context.
    pub fn from_coeffs(&self, coeffs: Vec<FieldElement>) -> OrePoly {
        trim(coeffs)
    }

    pub fn zero(&self) -> OrePoly {
        OrePoly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> OrePoly {
        self.constant(self.ctx.one())
    }

    pub fn constant(&self, c: FieldElement) -> OrePoly {
        trim(vec![c])
    }

    /// `c·τ^k`.
    pub fn monomial(&self, c: FieldElement, k: usize) -> OrePoly {
        let mut coeffs = vec![self.ctx.zero(); k];
        coeffs.push(c);
        trim(coeffs)
    }

    pub fn tau_pow(&self, k: usize) -> OrePoly {
        self.monomial(self.ctx.one(), k)
    }

    pub fn add(&self, f: &OrePoly, g: &OrePoly) -> OrePoly {
        let (long, short) = if f.coeffs.len() >= g.coeffs.len() { (f, g) } else { (g, f) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = self.ctx.add(o, s);
        }
        trim(out)
    }

    pub fn neg(&self, f: &OrePoly) -> OrePoly {
        OrePoly { coeffs: f.coeffs.iter().map(|c| self.ctx.neg(c)).collect() }
    }

    pub fn sub(&self, f: &OrePoly, g: &OrePoly) -> OrePoly {
        let n = f.coeffs.len().max(g.coeffs.len());
        let zero = self.ctx.zero();
        let out = (0..n)
            .map(|i| {
                let a = f.coeffs.get(i).unwrap_or(&zero);
                let b = g.coeffs.get(i).unwrap_or(&zero);
                self.ctx.sub(a, b)
            })
            .collect();
        trim(out)
    }

    /// Left multiplication by a constant: `c·f`.
    pub fn scale_left(&self, c: &FieldElement, f: &OrePoly) -> OrePoly {
        trim(f.coeffs.iter().map(|a| self.ctx.mul(c, a)).collect())
    }

    pub fn mul(&self, f: &OrePoly, g: &OrePoly) -> OrePoly {
        self.strategy.mul(self.ctx, f, g)
    }

    pub fn pow(&self, f: &OrePoly, n: u32) -> OrePoly {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, f))
    }

    /// Leading coefficient scaled to one by a left constant factor.
    pub fn monic(&self, f: &OrePoly) -> OrePoly {
        match f.lead() {
            None => self.zero(),
            Some(c) if *c == self.ctx.one() => f.clone(),
            Some(c) => self.scale_left(&self.ctx.inv(c).unwrap(), f),
        }
    }

    pub fn is_monic(&self, f: &OrePoly) -> bool {
        f.lead().is_some_and(|c| *c == self.ctx.one())
    }

    /// Right Euclidean division: `f = q·g + r`, `deg r < deg g`.
    pub fn rdiv(&self, f: &OrePoly, g: &OrePoly) -> Result<(OrePoly, OrePoly), OreError> {
        let m = g.degree().ok_or(OreError::DivisionByZero)?;
        let n = match f.degree() {
            Some(n) if n >= m => n,
            _ => return Ok((self.zero(), f.clone())),
        };
        let ctx = self.ctx;
        // twisted[k] = τ^k(g), coefficientwise
        let mut twisted = Vec::with_capacity(n - m + 1);
        twisted.push(g.coeffs.clone());
        for k in 1..=n - m {
            let next = twisted[k - 1].iter().map(|c| ctx.frobenius(c, 1)).collect();
            twisted.push(next);
        }
        let mut r = f.coeffs.clone();
        let mut q = vec![ctx.zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            if r[k + m].is_zero() {
                continue;
            }
            let tg = &twisted[k];
            let c = ctx.mul(&r[k + m], &ctx.inv(&tg[m]).unwrap());
            for (j, t) in tg.iter().enumerate() {
                r[k + j] = ctx.sub(&r[k + j], &ctx.mul(&c, t));
            }
            q[k] = c;
        }
        r.truncate(m);
        Ok((trim(q), trim(r)))
    }

    pub fn rrem(&self, f: &OrePoly, g: &OrePoly) -> Result<OrePoly, OreError> {
        Ok(self.rdiv(f, g)?.1)
    }

    /// Whether `g` right-divides `f`.
    pub fn right_divides(&self, g: &OrePoly, f: &OrePoly) -> bool {
        if g.is_zero() {
            return f.is_zero();
        }
        self.rrem(f, g).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic generator of `K{τ}f + K{τ}g`.
    pub fn rgcd(&self, f: &OrePoly, g: &OrePoly) -> Result<OrePoly, OreError> {
        if f.is_zero() && g.is_zero() {
            return Err(OreError::BothZero);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rrem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    /// Monic generator of `K{τ}f ∩ K{τ}g`, from the cofactors of the
    /// extended right Euclidean algorithm: with `r_i = s_i·f + t_i·g`, the
    /// first vanishing remainder gives `s_{k+1}·f = -t_{k+1}·g`.
    pub fn llcm(&self, f: &OrePoly, g: &OrePoly) -> Result<OrePoly, OreError> {
        if f.is_zero() || g.is_zero() {
            return Err(OreError::ZeroInput);
        }
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        while !r1.is_zero() {
            let (q, r) = self.rdiv(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&q, &s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        Ok(self.monic(&self.mul(&s1, f)))
    }

    /// Reduction modulo `τ^d - 1` (same action on `K`).
    pub fn fold_mod_taud(&self, f: &OrePoly) -> OrePoly {
        let d = self.ctx.degree();
        if f.coeffs.len() <= d {
            return f.clone();
        }
        let mut out = f.coeffs[..d].to_vec();
        for (i, c) in f.coeffs.iter().enumerate().skip(d) {
            out[i % d] = self.ctx.add(&out[i % d], c);
        }
        trim(out)
    }

    /// `f(x) = Σ a_i x^{q^i}` by iterated Frobenius.
    pub fn eval(&self, f: &OrePoly, x: &FieldElement) -> FieldElement {
        let ctx = self.ctx;
        let mut acc = ctx.zero();
        let mut y = x.clone();
        for (i, a) in f.coeffs.iter().enumerate() {
            if i > 0 {
                y = ctx.frobenius(&y, 1);
            }
            if !a.is_zero() {
                acc = ctx.add(&acc, &ctx.mul(a, &y));
            }
        }
        acc
    }
}

fn trim(mut coeffs: Vec<FieldElement>) -> OrePoly {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    OrePoly { coeffs }
}
