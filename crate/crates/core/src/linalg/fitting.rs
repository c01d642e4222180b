//! Invariant factors from determinantal divisors, as an oracle for the
//! Smith normal form. Minor enumeration is exponential, so sizes are capped.

use super::{LinalgError, MatPoly};
use crate::gf::Fq;
use crate::poly::{FqPoly, PolyRing};

/// Largest dimension accepted by [`fitting_invariants`].
pub const MAX_FITTING_DIM: usize = 8;

/// Determinant of a square matrix over `F_q[T]` (Bareiss fraction-free
/// elimination; every division is exact).
pub fn determinant(p: &MatPoly, fq: &Fq) -> FqPoly {
    assert_eq!(p.rows(), p.cols(), "determinant of a non-square matrix");
    let ring = PolyRing::new(fq);
    let n = p.rows();
    if n == 0 {
        return ring.one();
    }
    let mut a: Vec<Vec<FqPoly>> = (0..n).map(|i| (0..n).map(|j| p.get(i, j).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(&a[k][k], &a[i][j]), &ring.mul(&a[i][k], &a[k][j]));
                a[i][j] = ring.exact_div(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        ring.neg(&det)
    } else {
        det
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Monic gcd of all `k × k` minors; zero when they all vanish.
pub fn determinantal_divisor(p: &MatPoly, k: usize, fq: &Fq) -> FqPoly {
    let ring = PolyRing::new(fq);
    if k == 0 {
        return ring.one();
    }
    let mut g = ring.zero();
    for rows in subsets(p.rows(), k) {
        for cols in subsets(p.cols(), k) {
            let data = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
                .map(|(i, j)| p.get(i, j).clone())
                .collect();
            let minor = determinant(&MatPoly::from_rows(k, k, data), fq);
            if !minor.is_zero() {
                g = ring.gcd(&g, &minor).unwrap();
                if g.is_unit() {
                    return g;
                }
            }
        }
    }
    g
}

/// Invariant factors `D_k / D_{k-1}` from the determinantal divisors.
/// Units are dropped; zero factors (rank deficiency) are kept.
pub fn fitting_invariants(p: &MatPoly, fq: &Fq) -> Result<Vec<FqPoly>, LinalgError> {
    if p.rows() > MAX_FITTING_DIM || p.cols() > MAX_FITTING_DIM {
        return Err(LinalgError::TooLarge { rows: p.rows(), cols: p.cols() });
    }
    let ring = PolyRing::new(fq);
    let mut out = Vec::new();
    let mut prev = ring.one();
    for k in 1..=p.rows().min(p.cols()) {
        if prev.is_zero() {
            out.push(ring.zero());
            continue;
        }
        let dk = determinantal_divisor(p, k, fq);
        let factor =
            if dk.is_zero() { ring.zero() } else { ring.exact_div(&dk, &prev).expect("D_{k-1} divides D_k") };
        if !factor.is_unit() {
            out.push(factor);
        }
        prev = dk;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{smith_normal_form, MatFq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let f2 = Fq::prime(2).unwrap();
        let ring = PolyRing::new(&f2);
        let t = ring.x();
        let t2 = ring.mul(&t, &t);
        let p = MatPoly::from_rows(2, 2, vec![t.clone(), ring.zero(), ring.zero(), t2.clone()]);
        assert_eq!(fitting_invariants(&p, &f2).unwrap(), vec![t, t2]);
        let f3 = Fq::prime(3).unwrap();
        let r3 = PolyRing::new(&f3);
        let c = r3.from_coeffs(vec![1, 0, 2, 1]);
        let cm = MatPoly::char_matrix(&MatFq::companion(&c, &f3), &f3);
        assert_eq!(fitting_invariants(&cm, &f3).unwrap(), vec![c.clone()]);
        assert_eq!(determinant(&cm, &f3), c);
        let big = MatPoly::zero(9, 2);
        assert_eq!(fitting_invariants(&big, &f3), Err(LinalgError::TooLarge { rows: 9, cols: 2 }));
    }

    #[test]
    fn agrees_with_smith() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for trial in 0..100 {
            let fq = Fq::prime([2, 3, 5][trial % 3]).unwrap();
            let ring = PolyRing::new(&fq);
            let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let data = (0..m * n)
                .map(|_| {
                    let len = rng.gen_range(0..=2);
                    ring.from_coeffs((0..len).map(|_| rng.gen_range(0..fq.order() as u32)).collect())
                })
                .collect();
            let p = MatPoly::from_rows(m, n, data);
            assert_eq!(fitting_invariants(&p, &fq).unwrap(), smith_normal_form(&p, &fq).nonconstant());
        }
    }
}
