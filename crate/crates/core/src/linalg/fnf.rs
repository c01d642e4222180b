//! Frobenius normal form by cyclic decomposition.
//!
//! Find a vector whose local minimal polynomial is the minimal polynomial of
//! the matrix, split off its Krylov space together with an invariant
//! complement, and recurse on the complement.

use super::{solve_in_span, MatFq};
use crate::gf::{Field, Fq, FqElem};
use crate::poly::{FqPoly, PolyRing};

/// Invariant factors `d_1 | … | d_ℓ` and a transform `S` with
/// `S⁻¹·M·S = diag(C(d_1), …, C(d_ℓ))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub blocks: Vec<FqPoly>,
    pub transform: MatFq,
}

impl FrobeniusForm {
    /// Column offset of block `i` in the transform.
    pub fn offset(&self, i: usize) -> usize {
        self.blocks[..i].iter().map(|b| b.degree().unwrap()).sum()
    }

    pub fn block_companion(&self, fq: &Fq) -> MatFq {
        MatFq::block_companion(&self.blocks, fq)
    }
}

pub fn frobenius_normal_form(m: &MatFq, fq: &Fq) -> FrobeniusForm {
    assert!(m.is_square(), "Frobenius normal form of a non-square matrix");
    let (mut blocks, cyclic) = decompose(m, fq);
    // largest block first out of the recursion; reorder to ascending
    blocks.reverse();
    let mut cols = Vec::with_capacity(m.rows());
    for basis in cyclic.into_iter().rev() {
        cols.extend(basis);
    }
    FrobeniusForm { blocks, transform: MatFq::from_columns(m.rows(), &cols) }
}

/// Blocks in descending order together with their Krylov bases.
fn decompose(m: &MatFq, fq: &Fq) -> (Vec<FqPoly>, Vec<Vec<Vec<FqElem>>>) {
    let n = m.rows();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let (v, mu) = maximal_vector(m, fq);
    let k = mu.degree().unwrap();
    let mut krylov = vec![v];
    for i in 1..k {
        let next = m.mul_vec(&krylov[i - 1], fq);
        krylov.push(next);
    }
    if k == n {
        return (vec![mu], vec![krylov]);
    }
    // λ with λ(M^i v) = δ_{i, k-1}; then ∩_i ker(λ M^i) is an invariant complement
    let kt = MatFq::from_columns(n, &krylov).transpose();
    let mut rhs = vec![0; k];
    rhs[k - 1] = 1;
    let lambda = solve_any(&kt, &rhs, fq);
    let mut rows = Vec::with_capacity(k * n);
    let mut row = lambda;
    for _ in 0..k {
        rows.extend_from_slice(&row);
        row = m.transpose().mul_vec(&row, fq);
    }
    let w = MatFq::from_rows(k, n, rows);
    let basis = MatFq::from_columns(n, &w.kernel_basis(fq));
    debug_assert_eq!(basis.cols(), n - k);
    let restricted = solve_in_span(&basis, &m.mul(&basis, fq), fq).expect("the complement is invariant");
    let (sub_blocks, sub_bases) = decompose(&restricted, fq);
    let mut blocks = vec![mu];
    blocks.extend(sub_blocks);
    let mut bases = vec![krylov];
    for b in sub_bases {
        let lifted: Vec<Vec<FqElem>> = b.iter().map(|x| basis.mul_vec(x, fq)).collect();
        bases.push(lifted);
    }
    (blocks, bases)
}

/// Some solution of `A·x = b` for `A` of full row rank.
fn solve_any(a: &MatFq, b: &[FqElem], fq: &Fq) -> Vec<FqElem> {
    let aug = a.hstack(&MatFq::from_columns(a.rows(), &[b.to_vec()]));
    let (r, pivots) = aug.rref(fq);
    let mut x = vec![0; a.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        assert!(pc < a.cols(), "system is consistent");
        x[pc] = r.get(row, a.cols());
    }
    x
}

/// Minimal polynomial of `v` under `m`, by incremental elimination of the
/// Krylov sequence `v, Mv, M²v, …`.
pub fn local_min_poly(m: &MatFq, v: &[FqElem], fq: &Fq) -> FqPoly {
    let ring = PolyRing::new(fq);
    let n = v.len();
    // reduced vectors with their pivot and their expression in the Krylov sequence
    let mut basis: Vec<(usize, Vec<FqElem>, Vec<FqElem>)> = Vec::new();
    let mut u = v.to_vec();
    for j in 0..=n {
        let mut t = u.clone();
        let mut comb = vec![0; j + 1];
        comb[j] = 1;
        for (p, b, c) in &basis {
            let f = t[*p];
            if f == 0 {
                continue;
            }
            for (x, y) in t.iter_mut().zip(b) {
                *x = fq.sub(x, &fq.mul(&f, y));
            }
            for (x, y) in comb.iter_mut().zip(c) {
                *x = fq.sub(x, &fq.mul(&f, y));
            }
        }
        match t.iter().position(|&x| x != 0) {
            None => return ring.from_coeffs(comb),
            Some(p) => {
                let inv = fq.inv(&t[p]).unwrap();
                let t = t.iter().map(|x| fq.mul(&inv, x)).collect();
                let comb = comb.iter().map(|x| fq.mul(&inv, x)).collect();
                basis.push((p, t, comb));
            }
        }
        u = m.mul_vec(&u, fq);
    }
    unreachable!("n + 1 vectors in dimension n are dependent")
}

/// A vector whose minimal polynomial is that of `m`, with that polynomial.
fn maximal_vector(m: &MatFq, fq: &Fq) -> (Vec<FqElem>, FqPoly) {
    let ring = PolyRing::new(fq);
    let n = m.rows();
    let unit = |i: usize| {
        let mut e = vec![0; n];
        e[i] = 1;
        e
    };
    let mut v = unit(0);
    let mut f = local_min_poly(m, &v, fq);
    for i in 1..n {
        if f.degree() == Some(n) {
            break;
        }
        let w = unit(i);
        let g = local_min_poly(m, &w, fq);
        if ring.divides(&g, &f) {
            continue;
        }
        // split lcm(f, g) = a·b with a | f, b | g, gcd(a, b) = 1
        let gcd = ring.gcd(&f, &g).unwrap();
        let mut a = f.clone();
        let mut b = ring.exact_div(&g, &gcd).unwrap();
        loop {
            let c = ring.gcd(&a, &b).unwrap();
            if c.is_unit() {
                break;
            }
            a = ring.exact_div(&a, &c).unwrap();
            b = ring.mul(&b, &c);
        }
        let va = m.apply_poly(&ring.exact_div(&f, &a).unwrap(), &v, fq);
        let wb = m.apply_poly(&ring.exact_div(&g, &b).unwrap(), &w, fq);
        v = va.iter().zip(&wb).map(|(x, y)| fq.add(x, y)).collect();
        f = ring.mul(&a, &b);
    }
    debug_assert_eq!(local_min_poly(m, &v, fq), f);
    (v, f)
}
