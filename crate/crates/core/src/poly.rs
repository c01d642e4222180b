//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored ascending with no trailing zeros; the zero
//! polynomial is the empty sequence and has degree `None`.

use thiserror::Error;

use crate::gf::{Field, FqElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero input")]
    ZeroInput,
    #[error("valuation base must be nonconstant")]
    ConstantBase,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

/// Polynomials over `F_q`.
pub type FqPoly = Poly<FqElem>;

impl<E> Default for Poly<E> {
    fn default() -> Self {
        Poly { coeffs: Vec::new() }
    }
}

impl<E> Poly<E> {
    /// Caller guarantees there are no trailing zeros.
    pub(crate) fn from_raw(coeffs: Vec<E>) -> Self {
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    /// Nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }
}

/// Arithmetic in `F[T]` for a field context `F`.
#[derive(Clone, Copy)]
pub struct PolyRing<'a, F: Field> {
    field: &'a F,
}

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        Poly { coeffs: vec![self.field.one()] }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// The variable `T`.
    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut v = vec![self.field.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn is_monic(&self, f: &Poly<F::Elem>) -> bool {
        f.lead().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (long, short) = if f.coeffs.len() >= g.coeffs.len() { (f, g) } else { (g, f) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o = self.field.add(o, c);
        }
        self.from_coeffs(out)
    }

    pub fn neg(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { coeffs: f.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, c: &F::Elem, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        if f.is_zero() || g.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.field.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(a, b));
            }
        }
        self.from_coeffs(out)
    }

    pub fn pow(&self, f: &Poly<F::Elem>, n: u32) -> Poly<F::Elem> {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, f))
    }

    /// Euclidean division `f = q·g + r` with `deg r < deg g`.
    #[allow(clippy::type_complexity)]
    pub fn divrem(
        &self,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>), PolyError> {
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = self.field.inv(g.lead().unwrap()).expect("nonzero leading coefficient");
        let mut r = f.coeffs.clone();
        if r.len() <= dg {
            return Ok((self.zero(), f.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dg];
        for k in (dg..r.len()).rev() {
            if self.field.is_zero(&r[k]) {
                continue;
            }
            let c = self.field.mul(&r[k], &lead_inv);
            for (j, gj) in g.coeffs.iter().enumerate() {
                let idx = k - dg + j;
                r[idx] = self.field.sub(&r[idx], &self.field.mul(&c, gj));
            }
            q[k - dg] = c;
        }
        r.truncate(dg);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Poly<F::Elem>, PolyError> {
        Ok(self.divrem(f, g)?.1)
    }

    /// `f / g` when `g` divides `f`.
    pub fn exact_div(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(f, g).ok()?;
        r.is_zero().then_some(q)
    }

    /// Whether `a` divides `b`. Only zero is divisible by zero.
    pub fn divides(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        self.divrem(b, a).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.lead() {
            None => self.zero(),
            Some(c) => self.scale(&self.field.inv(c).unwrap(), f),
        }
    }

    /// Monic gcd (classical Euclidean algorithm).
    pub fn gcd(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Poly<F::Elem>, PolyError> {
        if f.is_zero() && g.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    /// Extended gcd: `(g, s, t)` with `s·f + t·h = g`, `g` monic.
    #[allow(clippy::type_complexity)]
    pub fn ext_gcd(
        &self,
        f: &Poly<F::Elem>,
        h: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>), PolyError> {
        if f.is_zero() && h.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut r0, mut r1) = (f.clone(), h.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let c = self.field.inv(r0.lead().unwrap()).unwrap();
        Ok((self.scale(&c, &r0), self.scale(&c, &s0), self.scale(&c, &t0)))
    }

    /// Monic lcm of two nonzero polynomials.
    pub fn lcm(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Poly<F::Elem>, PolyError> {
        if f.is_zero() || g.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let d = self.gcd(f, g)?;
        let fg = self.mul(f, g);
        Ok(self.monic(&self.exact_div(&fg, &d).expect("gcd divides the product")))
    }

    /// Largest `v` with `p^v | n`, by repeated exact division.
    pub fn valuation(&self, n: &Poly<F::Elem>, p: &Poly<F::Elem>) -> Result<u32, PolyError> {
        if n.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        if p.degree().unwrap_or(0) == 0 {
            return Err(PolyError::ConstantBase);
        }
        let mut v = 0;
        let mut cur = n.clone();
        while let Some(q) = self.exact_div(&cur, p) {
            cur = q;
            v += 1;
        }
        Ok(v)
    }

    pub fn eval(&self, f: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        f.coeffs.iter().rev().fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    pub fn mulmod(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(f, g), m).expect("nonzero modulus")
    }

    pub fn powmod(&self, f: &Poly<F::Elem>, mut n: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(f, m).expect("nonzero modulus");
        let mut acc = self.rem(&self.one(), m).expect("nonzero modulus");
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            n >>= 1;
        }
        acc
    }

    /// Ben-Or test over a field of order `q`: `m` is irreducible iff
    /// `gcd(T^{q^i} - T, m) = 1` for every `i ≤ deg m / 2`.
    pub fn is_irreducible(&self, m: &Poly<F::Elem>, q: u64) -> bool {
        let n = match m.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let x = self.x();
        let mut h = self.rem(&x, m).unwrap();
        for _ in 0..n / 2 {
            h = self.powmod(&h, q, m);
            let g = self.gcd(&self.sub(&h, &x), m).unwrap();
            if !g.is_unit() {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;
    use proptest::prelude::*;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn p(ring: &PolyRing<Fq>, c: &[u32]) -> FqPoly {
        ring.from_coeffs(c.to_vec())
    }

    #[test]
    fn division_examples() {
        let f = f2();
        let r = PolyRing::new(&f);
        assert_eq!(r.divrem(&p(&r, &[0, 1, 1]), &p(&r, &[0, 1])).unwrap(), (p(&r, &[1, 1]), r.zero()));
        assert_eq!(r.divrem(&p(&r, &[0, 1]), &p(&r, &[0, 0, 1])).unwrap(), (r.zero(), p(&r, &[0, 1])));
        let (q, rem) = r.divrem(&p(&r, &[1, 0, 0, 1]), &p(&r, &[1, 1])).unwrap();
        assert_eq!(q, p(&r, &[1, 1, 1]));
        assert!(rem.is_zero());
        assert_eq!(r.mul(&q, &p(&r, &[1, 1])), p(&r, &[1, 0, 0, 1]));
        assert_eq!(r.divrem(&p(&r, &[1]), &r.zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let f = f2();
        let r = PolyRing::new(&f);
        assert_eq!(r.gcd(&p(&r, &[0, 1, 1]), &p(&r, &[0, 1])).unwrap(), p(&r, &[0, 1]));
        assert_eq!(r.gcd(&p(&r, &[1, 1]), &r.zero()).unwrap(), p(&r, &[1, 1]));
        assert_eq!(r.gcd(&p(&r, &[1, 1, 1]), &p(&r, &[0, 1, 1])).unwrap(), r.one());
        assert!(!r.divrem(&p(&r, &[0, 1, 1]), &p(&r, &[1, 1, 1])).unwrap().1.is_zero());
        assert_eq!(r.gcd(&r.zero(), &r.zero()), Err(PolyError::BothZero));
        // monic normalisation over F_5
        let f5 = Fq::prime(5).unwrap();
        let r5 = PolyRing::new(&f5);
        assert_eq!(r5.gcd(&p(&r5, &[0, 3]), &r5.zero()).unwrap(), p(&r5, &[0, 1]));
    }

    #[test]
    fn valuation_examples() {
        let f = f2();
        let r = PolyRing::new(&f);
        let base = p(&r, &[1, 1, 1]);
        let n = r.mul(&r.mul(&base, &base), &r.x());
        assert_eq!(r.valuation(&n, &base).unwrap(), 2);
        assert_eq!(r.valuation(&p(&r, &[0, 1]), &base).unwrap(), 0);
        assert_eq!(r.valuation(&base, &base).unwrap(), 1);
        assert_eq!(r.valuation(&r.zero(), &base), Err(PolyError::ZeroInput));
        assert_eq!(r.valuation(&base, &r.one()), Err(PolyError::ConstantBase));
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = Fq::prime(3).unwrap();
        let r = PolyRing::new(&f);
        let a = p(&r, &[1, 2, 0, 1]);
        let b = p(&r, &[2, 0, 1]);
        let (g, s, t) = r.ext_gcd(&a, &b).unwrap();
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
        assert_eq!(g, r.gcd(&a, &b).unwrap());
    }

    #[test]
    fn irreducibility() {
        let f = f2();
        let r = PolyRing::new(&f);
        assert!(r.is_irreducible(&p(&r, &[1, 1, 1]), 2));
        assert!(!r.is_irreducible(&p(&r, &[1, 0, 1]), 2));
        assert!(r.is_irreducible(&p(&r, &[1, 1, 0, 0, 1]), 2));
        // (T^2+T+1)^2 has no linear factor but is reducible
        assert!(!r.is_irreducible(&p(&r, &[1, 0, 1, 0, 1]), 2));
    }

    fn poly_strategy(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..5, 0..max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn divrem_reconstructs(a in poly_strategy(12), b in poly_strategy(8)) {
            let f = Fq::prime(5).unwrap();
            let r = PolyRing::new(&f);
            let (a, b) = (r.from_coeffs(a), r.from_coeffs(b));
            prop_assume!(!b.is_zero());
            let (q, rem) = r.divrem(&a, &b).unwrap();
            prop_assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
            prop_assert!(rem.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in poly_strategy(10), b in poly_strategy(10)) {
            let f = Fq::prime(5).unwrap();
            let r = PolyRing::new(&f);
            let (a, b) = (r.from_coeffs(a), r.from_coeffs(b));
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = r.gcd(&a, &b).unwrap();
            prop_assert!(r.is_monic(&g));
            prop_assert!(r.divides(&g, &a) && r.divides(&g, &b));
            prop_assert_eq!(&g, &r.gcd(&b, &a).unwrap());
            if !a.is_zero() && !b.is_zero() {
                prop_assert!(g.degree() <= a.degree().min(b.degree()));
            }
            if !a.is_zero() {
                prop_assert_eq!(r.gcd(&a, &a).unwrap(), r.monic(&a));
            }
        }
    }
}
