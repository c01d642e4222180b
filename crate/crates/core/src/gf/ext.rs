use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use super::prime::first_irreducible;
use super::{Field, FieldSpec, Fq, FqElem, FqRepr, GfError, OpCounter, OpCounts};
use crate::linalg::MatFq;
use crate::meval::LlcmTree;
use crate::poly::PolyRing;

/// An element of `K`: its `d` coordinates over `F_q` in the basis
/// `1, z, …, z^{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<FqElem>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The working field `K = F_q[z]/(k_modulus)`.
///
/// Read-only after construction apart from the operation counters and a few
/// lazily filled caches (Frobenius matrix powers, the llcm tree of the basis).
pub struct FieldCtx {
    fq: Fq,
    d: usize,
    k_modulus: Vec<FqElem>,
    /// `d × d`, row-major; column `j` holds the coordinates of `ε_j^q`.
    frob: Vec<FqElem>,
    frob_powers: Vec<OnceLock<Vec<FqElem>>>,
    counter: OpCounter,
    /// Prime `F_q` with `p < 2^16`: products can be summed in `u64` before reducing.
    lazy: bool,
    pub(crate) basis_tree: OnceLock<LlcmTree>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.fq.characteristic())
            .field("e", &self.fq.degree())
            .field("d", &self.d)
            .field("k_modulus", &self.k_modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds `K = fq[z]/(k_modulus)`; `k_modulus` is ascending over `F_q`.
    pub fn new(fq: Fq, k_modulus: Vec<FqElem>) -> Result<Self, GfError> {
        if let Some(&bad) = k_modulus.iter().find(|&&c| !fq.contains(c)) {
            return Err(GfError::ContextMismatch(format!("coefficient code {bad} is not in F_q")));
        }
        let ring = PolyRing::new(&fq);
        let m = ring.from_coeffs(k_modulus);
        let d = match m.degree() {
            Some(d) if d >= 1 => d,
            got => return Err(GfError::DegreeMismatch { expected: 1, got: got.unwrap_or(0) }),
        };
        if !ring.is_monic(&m) {
            return Err(GfError::NotMonic);
        }
        if !ring.is_irreducible(&m, fq.order()) {
            return Err(GfError::NotIrreducible);
        }
        // column j of the Frobenius matrix: (z^q)^j mod m
        let zq = ring.powmod(&ring.x(), fq.order(), &m);
        let mut frob = vec![0; d * d];
        let mut col = ring.one();
        for j in 0..d {
            for (i, c) in col.coeffs().iter().enumerate() {
                frob[i * d + j] = *c;
            }
            col = ring.mulmod(&col, &zq, &m);
        }
        let lazy = fq.is_prime_field() && fq.characteristic() < 1 << 16;
        Ok(FieldCtx {
            d,
            k_modulus: m.into_coeffs(),
            frob,
            frob_powers: (0..d).map(|_| OnceLock::new()).collect(),
            counter: OpCounter::new(),
            lazy,
            basis_tree: OnceLock::new(),
            fq,
        })
    }

    /// Parses and validates a JSON field specification.
    pub fn from_spec(spec: &FieldSpec) -> Result<Self, GfError> {
        let fq = Fq::new(spec.p, &spec.fq_modulus)?;
        if fq.degree() != spec.e {
            return Err(GfError::DegreeMismatch { expected: spec.e, got: fq.degree() });
        }
        let k_modulus = spec.k_modulus.iter().map(|c| fq_from_repr(&fq, c)).collect::<Result<Vec<_>, _>>()?;
        let ctx = FieldCtx::new(fq, k_modulus)?;
        if ctx.d != spec.d {
            return Err(GfError::DegreeMismatch { expected: spec.d, got: ctx.d });
        }
        Ok(ctx)
    }

    /// `F_{q^d}` with lexicographically first irreducible moduli at both levels.
    pub fn standard(q: u64, d: usize) -> Result<Self, GfError> {
        let (p, e) = prime_power(q).ok_or(GfError::NotPrime(q))?;
        let fp = Fq::prime(p)?;
        let fq = if e == 1 {
            fp
        } else {
            let m = first_irreducible(&fp, e);
            let m: Vec<i64> = m.coeffs().iter().map(|&c| c as i64).collect();
            Fq::new(p, &m)?
        };
        if d == 0 {
            return Err(GfError::DegreeMismatch { expected: 1, got: 0 });
        }
        let k = first_irreducible(&fq, d).into_coeffs();
        FieldCtx::new(fq, k)
    }

    pub fn to_spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.fq.characteristic(),
            e: self.fq.degree(),
            fq_modulus: self.fq.modulus().iter().map(|&c| c as i64).collect(),
            d: self.d,
            k_modulus: self
                .k_modulus
                .iter()
                .map(|&c| FqRepr::Digits(self.fq.digits(c).into_iter().map(i64::from).collect()))
                .collect(),
        }
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    /// `[K : F_q]`.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// `q`.
    pub fn base_order(&self) -> u64 {
        self.fq.order()
    }

    /// `q^d`, saturating.
    pub fn order(&self) -> u64 {
        (self.fq.order() as u128).pow(self.d as u32).min(u64::MAX as u128) as u64
    }

    pub fn k_modulus(&self) -> &[FqElem] {
        &self.k_modulus
    }

    pub fn counter(&self) -> &OpCounter {
        &self.counter
    }

    /// Runs `f` and returns the operations it performed on this context.
    pub fn measure<R>(&self, f: impl FnOnce() -> R) -> (R, OpCounts) {
        let before = self.counter.snapshot();
        let out = f();
        (out, self.counter.snapshot() - before)
    }

    /// Validates `d` coordinates (shorter input is zero-padded).
    pub fn element(&self, coords: Vec<FqElem>) -> Result<FieldElement, GfError> {
        if coords.len() > self.d {
            return Err(GfError::ContextMismatch(format!(
                "element has {} coordinates, field degree is {}",
                coords.len(),
                self.d
            )));
        }
        if let Some(&bad) = coords.iter().find(|&&c| !self.fq.contains(c)) {
            return Err(GfError::ContextMismatch(format!("coefficient code {bad} is not in F_q")));
        }
        let mut coeffs = coords;
        coeffs.resize(self.d, 0);
        Ok(FieldElement { coeffs })
    }

    /// Checks that `x` has the shape of an element of this field.
    pub fn check(&self, x: &FieldElement) -> Result<(), GfError> {
        if x.coeffs.len() != self.d || x.coeffs.iter().any(|&c| !self.fq.contains(c)) {
            return Err(GfError::ContextMismatch(format!("{x:?} is not an element of this field")));
        }
        Ok(())
    }

    pub(crate) fn wrap(&self, coeffs: Vec<FqElem>) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.d);
        FieldElement { coeffs }
    }

    /// The basis vector `ε_i = z^i`.
    pub fn basis(&self, i: usize) -> FieldElement {
        let mut coeffs = vec![0; self.d];
        coeffs[i] = 1;
        FieldElement { coeffs }
    }

    pub fn basis_vectors(&self) -> Vec<FieldElement> {
        (0..self.d).map(|i| self.basis(i)).collect()
    }

    /// The image of `c ∈ F_q` in `K`.
    pub fn embed(&self, c: FqElem) -> FieldElement {
        let mut coeffs = vec![0; self.d];
        coeffs[0] = c;
        FieldElement { coeffs }
    }

    /// `Some(c)` when `x` lies in the subfield `F_q`.
    pub fn as_base(&self, x: &FieldElement) -> Option<FqElem> {
        x.coeffs[1..].iter().all(|&c| c == 0).then(|| x.coeffs[0])
    }

    /// Multiplication by a scalar of `F_q`; one arithmetic operation.
    pub fn scale(&self, c: FqElem, x: &FieldElement) -> FieldElement {
        self.counter.arith(1);
        FieldElement { coeffs: x.coeffs.iter().map(|a| self.fq.mul(&c, a)).collect() }
    }

    pub fn pow(&self, x: &FieldElement, mut n: u64) -> FieldElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Enumeration index `Σ code_i q^i`, a bijection `K → [0, q^d)`.
    pub fn index_of(&self, x: &FieldElement) -> u64 {
        x.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.fq.order() + c as u64)
    }

    pub fn from_index(&self, mut n: u64) -> FieldElement {
        let q = self.fq.order();
        let coeffs = (0..self.d)
            .map(|_| {
                let c = (n % q) as u32;
                n /= q;
                c
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let q = self.fq.order() as u32;
        FieldElement { coeffs: (0..self.d).map(|_| rng.gen_range(0..q)).collect() }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// `x^{q^k}`, using the precomputed matrix of `τ^{k mod d}`.
    /// Counts `k mod d` Frobenius applications.
    pub fn frobenius(&self, x: &FieldElement, k: usize) -> FieldElement {
        let k = k % self.d;
        if k == 0 {
            return x.clone();
        }
        self.counter.frob(k as u64);
        FieldElement { coeffs: self.apply_matrix(self.frob_power(k), &x.coeffs) }
    }

    /// The `d × d` matrix of `x ↦ x^q` over `F_q`.
    pub fn frobenius_matrix(&self) -> MatFq {
        MatFq::from_rows(self.d, self.d, self.frob.clone())
    }

    fn frob_power(&self, k: usize) -> &[FqElem] {
        if k == 1 {
            return &self.frob;
        }
        self.frob_powers[k].get_or_init(|| {
            let prev = self.frob_power(k - 1);
            let d = self.d;
            let mut out = vec![0; d * d];
            for j in 0..d {
                let col: Vec<FqElem> = (0..d).map(|i| prev[i * d + j]).collect();
                let img = self.apply_matrix(&self.frob, &col);
                for i in 0..d {
                    out[i * d + j] = img[i];
                }
            }
            out
        })
    }

    fn apply_matrix(&self, m: &[FqElem], x: &[FqElem]) -> Vec<FqElem> {
        let d = self.d;
        if self.lazy {
            let p = self.fq.characteristic();
            return (0..d)
                .map(|i| {
                    let row = &m[i * d..(i + 1) * d];
                    let s: u64 = row.iter().zip(x).map(|(&a, &b)| a as u64 * b as u64).sum();
                    (s % p) as u32
                })
                .collect();
        }
        (0..d)
            .map(|i| {
                m[i * d..(i + 1) * d]
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (a, b)| self.fq.add(&acc, &self.fq.mul(a, b)))
            })
            .collect()
    }

    fn mul_raw(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        let d = self.d;
        if self.fq.is_prime_field() {
            let p = self.fq.characteristic();
            let each = !self.lazy;
            let mut acc = vec![0u64; 2 * d - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    let t = x as u64 * y as u64;
                    acc[i + j] += if each { t % p } else { t };
                }
            }
            for k in (d..2 * d - 1).rev() {
                let c = acc[k] % p;
                if c == 0 {
                    continue;
                }
                for (j, &m) in self.k_modulus[..d].iter().enumerate() {
                    let t = c * (p - m as u64);
                    acc[k - d + j] += if each { t % p } else { t };
                }
            }
            return acc[..d].iter().map(|&s| (s % p) as u32).collect();
        }
        let fq = &self.fq;
        let mut acc = vec![0u32; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                acc[i + j] = fq.add(&acc[i + j], &fq.mul(x, y));
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = acc[k];
            if c == 0 {
                continue;
            }
            for (j, m) in self.k_modulus[..d].iter().enumerate() {
                acc[k - d + j] = fq.sub(&acc[k - d + j], &fq.mul(&c, m));
            }
        }
        acc.truncate(d);
        acc
    }
}

impl Field for FieldCtx {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.d] }
    }

    fn one(&self) -> FieldElement {
        self.embed(1)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.counter.arith(1);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.fq.add(x, y)).collect();
        FieldElement { coeffs }
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.counter.arith(1);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.fq.sub(x, y)).collect();
        FieldElement { coeffs }
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.counter.arith(1);
        FieldElement { coeffs: a.coeffs.iter().map(|x| self.fq.neg(x)).collect() }
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.counter.arith(1);
        FieldElement { coeffs: self.mul_raw(&a.coeffs, &b.coeffs) }
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        self.counter.arith(1);
        let ring = PolyRing::new(&self.fq);
        let m = ring.from_coeffs(self.k_modulus.clone());
        let x = ring.from_coeffs(a.coeffs.clone());
        let (g, s, _) = ring.ext_gcd(&x, &m).expect("modulus is nonzero");
        debug_assert!(ring.is_monic(&g) && g.is_unit());
        let mut coeffs = s.into_coeffs();
        coeffs.resize(self.d, 0);
        Some(FieldElement { coeffs })
    }
}

impl FieldCtx {
    /// `a / b`.
    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        let inv = self.inv(b).ok_or(GfError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// Inverse with an error on zero.
    pub fn try_inv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        self.inv(a).ok_or(GfError::DivisionByZero)
    }
}

pub(crate) fn fq_from_repr(fq: &Fq, c: &FqRepr) -> Result<FqElem, GfError> {
    match c {
        FqRepr::Int(n) => Ok(fq.from_int(*n)),
        FqRepr::Digits(ds) => fq.from_digits(ds),
    }
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|f| q.is_multiple_of(*f))?;
    let (mut n, mut e) = (q, 0);
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (n == 1).then_some((p, e))
}
