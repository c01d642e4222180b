use super::MatFq;
use crate::gf::{Field, Fq};
use crate::poly::{FqPoly, PolyRing};

/// Dense matrix over `F_q[T]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatPoly {
    rows: usize,
    cols: usize,
    data: Vec<FqPoly>,
}

impl MatPoly {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatPoly { rows, cols, data: vec![FqPoly::default(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatPoly::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = unit();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<FqPoly>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        MatPoly { rows, cols, data }
    }

    /// The characteristic matrix `T·Id - M`.
    pub fn char_matrix(m: &MatFq, fq: &Fq) -> Self {
        assert!(m.is_square());
        let ring = PolyRing::new(fq);
        let n = m.rows();
        let mut out = MatPoly::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = fq.neg(&m.get(i, j));
                let entry = if i == j { ring.from_coeffs(vec![c, 1]) } else { ring.from_coeffs(vec![c]) };
                out.set(i, j, entry);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FqPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &MatPoly, fq: &Fq) -> MatPoly {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let ring = PolyRing::new(fq);
        let mut out = MatPoly::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s = (0..self.cols)
                    .fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(self.get(i, k), other.get(k, j))));
                out.set(i, j, s);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_dst -= f·row_src`.
    fn row_axpy(&mut self, dst: usize, src: usize, f: &FqPoly, ring: &PolyRing<Fq>) {
        for j in 0..self.cols {
            let v = ring.sub(self.get(dst, j), &ring.mul(f, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col_dst -= f·col_src`.
    fn col_axpy(&mut self, dst: usize, src: usize, f: &FqPoly, ring: &PolyRing<Fq>) {
        for i in 0..self.rows {
            let v = ring.sub(self.get(i, dst), &ring.mul(self.get(i, src), f));
            self.set(i, dst, v);
        }
    }
}

fn unit() -> FqPoly {
    FqPoly::from_raw(vec![1])
}

/// `U·P·V = D` with `D` diagonal, `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    /// The `min(rows, cols)` diagonal entries: monic or zero, each dividing the next.
    pub diag: Vec<FqPoly>,
    pub u: MatPoly,
    pub v: MatPoly,
}

impl Smith {
    /// Diagonal without unit entries.
    pub fn nonconstant(&self) -> Vec<FqPoly> {
        self.diag.iter().filter(|d| !d.is_unit()).cloned().collect()
    }
}

/// Smith normal form by minimal-degree pivoting, ties broken by the smallest
/// `(row, col)`.
pub fn smith_normal_form(p: &MatPoly, fq: &Fq) -> Smith {
    let ring = PolyRing::new(fq);
    let (m, n) = (p.rows, p.cols);
    let mut a = p.clone();
    let mut u = MatPoly::identity(m);
    let mut v = MatPoly::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if let Some(dg) = a.get(i, j).degree() {
                        if best.is_none_or(|b| dg < b.0) {
                            best = Some((dg, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let pivot = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                let (q, r) = ring.divrem(a.get(i, t), &pivot).unwrap();
                if !q.is_zero() {
                    a.row_axpy(i, t, &q, &ring);
                    u.row_axpy(i, t, &q, &ring);
                }
                dirty |= !r.is_zero();
            }
            for j in t + 1..n {
                let (q, r) = ring.divrem(a.get(t, j), &pivot).unwrap();
                if !q.is_zero() {
                    a.col_axpy(j, t, &q, &ring);
                    v.col_axpy(j, t, &q, &ring);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // the pivot must divide the whole remaining block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !ring.divides(&pivot, a.get(i, j))));
            match bad {
                Some(i) => {
                    let minus_one = ring.from_coeffs(vec![fq.neg(&1)]);
                    a.row_axpy(t, i, &minus_one, &ring);
                    u.row_axpy(t, i, &minus_one, &ring);
                }
                None => break,
            }
        }
        if let Some(c) = a.get(t, t).lead() {
            let inv = ring.from_coeffs(vec![fq.inv(c).unwrap()]);
            for j in 0..n {
                let x = ring.mul(&inv, a.get(t, j));
                a.set(t, j, x);
            }
            for j in 0..m {
                let x = ring.mul(&inv, u.get(t, j));
                u.set(t, j, x);
            }
        }
    }
    let diag = (0..m.min(n)).map(|i| a.get(i, i).clone()).collect();
    Smith { diag, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::fitting::determinant;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn diagonal(s: &Smith, rows: usize, cols: usize) -> MatPoly {
        let mut d = MatPoly::zero(rows, cols);
        for (i, e) in s.diag.iter().enumerate() {
            d.set(i, i, e.clone());
        }
        d
    }

    fn check(p: &MatPoly, fq: &Fq) -> Smith {
        let ring = PolyRing::new(fq);
        let s = smith_normal_form(p, fq);
        assert_eq!(s.u.mul(p, fq).mul(&s.v, fq), diagonal(&s, p.rows(), p.cols()));
        assert!(determinant(&s.u, fq).is_unit());
        assert!(determinant(&s.v, fq).is_unit());
        for w in s.diag.windows(2) {
            assert!(ring.divides(&w[0], &w[1]));
        }
        for e in &s.diag {
            assert!(e.is_zero() || ring.is_monic(e));
        }
        s
    }

    #[test]
    fn examples() {
        let f2 = Fq::prime(2).unwrap();
        let ring = PolyRing::new(&f2);
        let s = check(&MatPoly::char_matrix(&MatFq::identity(3), &f2), &f2);
        assert_eq!(s.diag, vec![ring.from_coeffs(vec![1, 1]); 3]);
        let t = ring.x();
        let t2 = ring.mul(&t, &t);
        let p = MatPoly::from_rows(2, 2, vec![t.clone(), ring.zero(), ring.zero(), t2.clone()]);
        assert_eq!(check(&p, &f2).diag, vec![t.clone(), t2]);
        let m = MatFq::from_rows(2, 2, vec![1, 0, 1, 0]);
        let s = check(&MatPoly::char_matrix(&m, &f2), &f2);
        assert_eq!(s.diag, vec![ring.one(), ring.from_coeffs(vec![0, 1, 1])]);
    }

    #[test]
    fn random_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for trial in 0..150 {
            let fq = Fq::prime([2, 3, 5][trial % 3]).unwrap();
            let ring = PolyRing::new(&fq);
            let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let data = (0..m * n)
                .map(|_| {
                    let len = rng.gen_range(0..=3);
                    ring.from_coeffs((0..len).map(|_| rng.gen_range(0..fq.order() as u32)).collect())
                })
                .collect();
            check(&MatPoly::from_rows(m, n, data), &fq);
        }
    }
}
