use super::{is_prime, Field, GfError};
use crate::poly::{Poly, PolyRing};

/// An element of `F_q`, encoded as `Σ c_i p^i` where `c_i` is the coordinate
/// of `w^i`. For prime fields the code is the residue itself.
pub type FqElem = u32;

/// Largest `q` accepted for non-prime coefficient fields (log/exp tables).
const MAX_TABLE_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The coefficient field `F_q = F_p[w]/(fq_modulus)`.
#[derive(Debug, Clone)]
pub struct Fq {
    p: u32,
    e: usize,
    q: u64,
    modulus: Vec<u32>,
    tables: Option<LogTables>,
}

impl Fq {
    /// The prime field `F_p`, with modulus `w`.
    pub fn prime(p: u64) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(GfError::FieldTooLarge(format!("p = {p} exceeds 2^31")));
        }
        Ok(Fq { p: p as u32, e: 1, q: p, modulus: vec![0, 1], tables: None })
    }

    /// `F_p[w]/(modulus)`; the modulus is given ascending over `F_p` and must
    /// be monic and irreducible.
    pub fn new(p: u64, modulus: &[i64]) -> Result<Self, GfError> {
        let base = Fq::prime(p)?;
        let m: Vec<u32> = modulus.iter().map(|&c| base.from_int(c)).collect();
        let ring = PolyRing::new(&base);
        let m = ring.from_coeffs(m);
        let e = match m.degree() {
            Some(e) if e >= 1 => e,
            got => return Err(GfError::DegreeMismatch { expected: 1, got: got.unwrap_or(0) }),
        };
        if !base.is_one(m.lead().unwrap()) {
            return Err(GfError::NotMonic);
        }
        if e == 1 {
            return Ok(Fq { modulus: m.coeffs().to_vec(), ..base });
        }
        let q = (p as u128).pow(e as u32);
        if q > MAX_TABLE_ORDER as u128 {
            return Err(GfError::FieldTooLarge(format!("q = {p}^{e} exceeds 2^16")));
        }
        if !ring.is_irreducible(&m, p) {
            return Err(GfError::NotIrreducible);
        }
        let mut fq = Fq { p: p as u32, e, q: q as u64, modulus: m.coeffs().to_vec(), tables: None };
        fq.tables = Some(fq.build_tables());
        Ok(fq)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    /// Degree of `F_q` over `F_p`.
    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Monic modulus over `F_p`, ascending.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Embeds an integer through `Z → F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Coordinates over `F_p` (length `e`).
    pub fn digits(&self, a: FqElem) -> Vec<u32> {
        let mut a = a;
        (0..self.e)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    /// Inverse of [`Fq::digits`]; missing high digits are zero.
    pub fn from_digits(&self, digits: &[i64]) -> Result<FqElem, GfError> {
        if digits.len() > self.e {
            return Err(GfError::ContextMismatch(format!(
                "F_q coefficient has {} digits, field degree is {}",
                digits.len(),
                self.e
            )));
        }
        let mut code = 0u32;
        for &c in digits.iter().rev() {
            code = code * self.p + self.from_int(c);
        }
        Ok(code)
    }

    pub fn contains(&self, a: FqElem) -> bool {
        (a as u64) < self.q
    }

    fn mul_digits(&self, a: FqElem, b: FqElem) -> FqElem {
        // schoolbook product over F_p, reduced by the monic modulus
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (self.e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus[..self.e].iter().enumerate() {
                let idx = k - self.e + j;
                prod[idx] = (prod[idx] + c * (p - m as u64)) % p;
            }
            prod[k] = 0;
        }
        let mut code = 0u64;
        for &c in prod[..self.e].iter().rev() {
            code = code * p + c;
        }
        code as u32
    }

    fn pow_digits(&self, a: FqElem, mut n: u64) -> FqElem {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            n >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> LogTables {
        let order = self.q - 1;
        let mut factors = Vec::new();
        let mut n = order;
        let mut f = 2;
        while f * f <= n {
            if n.is_multiple_of(f) {
                factors.push(f);
                while n.is_multiple_of(f) {
                    n /= f;
                }
            }
            f += 1;
        }
        if n > 1 {
            factors.push(n);
        }
        let generator = (2..self.q as u32)
            .find(|&g| factors.iter().all(|&l| self.pow_digits(g, order / l) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i as u32;
            x = self.mul_digits(x, generator);
        }
        LogTables { exp, log }
    }

    fn pow_prime(&self, a: FqElem, mut n: u64) -> FqElem {
        let p = self.p as u64;
        let mut base = a as u64;
        let mut acc = 1u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            n >>= 1;
        }
        acc as u32
    }
}

impl Field for Fq {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        0
    }

    fn one(&self) -> FqElem {
        1
    }

    #[inline]
    fn is_zero(&self, a: &FqElem) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.e == 1 {
            let s = *a as u64 + *b as u64;
            return (s % self.p as u64) as u32;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut pw, mut out) = (*a, *b, 1u32, 0u32);
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        out
    }

    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn neg(&self, a: &FqElem) -> FqElem {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        if self.p == 2 {
            return *a;
        }
        let (mut a, mut pw, mut out) = (*a, 1u32, 0u32);
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * pw;
            a /= self.p;
            pw *= self.p;
        }
        out
    }

    #[inline]
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        match &self.tables {
            None => ((*a as u64 * *b as u64) % self.p as u64) as u32,
            Some(t) => {
                if *a == 0 || *b == 0 {
                    0
                } else {
                    let s = t.log[*a as usize] as u64 + t.log[*b as usize] as u64;
                    t.exp[(s % (self.q - 1)) as usize]
                }
            }
        }
    }

    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if *a == 0 {
            return None;
        }
        Some(match &self.tables {
            None => self.pow_prime(*a, self.p as u64 - 2),
            Some(t) => {
                let l = t.log[*a as usize] as u64;
                t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
            }
        })
    }
}

/// Lexicographically first monic irreducible polynomial of degree `n` over
/// `field`, searching the lower coefficients as a base-`q` counter.
pub(crate) fn first_irreducible(field: &Fq, n: usize) -> Poly<FqElem> {
    let ring = PolyRing::new(field);
    let q = field.order();
    let mut lower = vec![0u32; n];
    loop {
        let mut coeffs = lower.clone();
        coeffs.push(1);
        let m = ring.from_coeffs(coeffs);
        if n == 1 || (lower[0] != 0 && ring.is_irreducible(&m, q)) {
            return m;
        }
        // increment the counter
        let mut i = 0;
        loop {
            lower[i] += 1;
            if (lower[i] as u64) < q {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < n, "an irreducible polynomial of every degree exists");
        }
    }
}
