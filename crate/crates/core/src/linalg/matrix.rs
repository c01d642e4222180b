use crate::gf::{Field, Fq, FqElem};
use crate::poly::FqPoly;

/// Dense matrix over `F_q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatFq {
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
}

impl MatFq {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatFq { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatFq::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<FqElem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        MatFq { rows, cols, data }
    }

    /// Builds a `rows × cols.len()` matrix from its columns.
    pub fn from_columns(rows: usize, cols: &[Vec<FqElem>]) -> Self {
        let mut m = MatFq::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column has the wrong length");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FqElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FqElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FqElem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn data(&self) -> &[FqElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> MatFq {
        let mut t = MatFq::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatFq, fq: &Fq) -> MatFq {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = MatFq::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fq.add(&out.get(i, j), &fq.mul(&a, &other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FqElem], fq: &Fq) -> Vec<FqElem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (a, b)| fq.add(&acc, &fq.mul(a, b))))
            .collect()
    }

    pub fn add(&self, other: &MatFq, fq: &Fq) -> MatFq {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| fq.add(a, b)).collect();
        MatFq { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &MatFq, fq: &Fq) -> MatFq {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| fq.sub(a, b)).collect();
        MatFq { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: FqElem, fq: &Fq) -> MatFq {
        let data = self.data.iter().map(|a| fq.mul(&c, a)).collect();
        MatFq { rows: self.rows, cols: self.cols, data }
    }

    /// Columns `range` as a new matrix.
    pub fn select_columns(&self, cols: std::ops::Range<usize>) -> MatFq {
        let picked: Vec<Vec<FqElem>> = cols.map(|j| self.column(j)).collect();
        MatFq::from_columns(self.rows, &picked)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &MatFq) -> MatFq {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        MatFq::from_columns(self.rows, &cols)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, fq: &Fq) -> (MatFq, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = fq.inv(&m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = fq.mul(&inv, &m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = fq.sub(&m.get(i, j), &fq.mul(&f, &m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, fq: &Fq) -> usize {
        self.rref(fq).1.len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`, one vector per free column,
    /// read off the reduced echelon form.
    pub fn kernel_basis(&self, fq: &Fq) -> Vec<Vec<FqElem>> {
        let (r, pivots) = self.rref(fq);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = fq.neg(&r.get(row, f));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, fq: &Fq) -> Option<MatFq> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let (r, pivots) = self.hstack(&MatFq::identity(n)).rref(fq);
        (pivots.len() >= n && pivots[n - 1] == n - 1).then(|| {
            let mut inv = MatFq::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    inv.set(i, j, r.get(i, n + j));
                }
            }
            inv
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `p(M)` for square `M`, by Horner's rule.
    pub fn eval_poly(&self, p: &FqPoly, fq: &Fq) -> MatFq {
        assert!(self.is_square());
        let n = self.rows;
        p.coeffs().iter().rev().fold(MatFq::zero(n, n), |acc, c| {
            let mut m = acc.mul(self, fq);
            for i in 0..n {
                let v = fq.add(&m.get(i, i), c);
                m.set(i, i, v);
            }
            m
        })
    }

    /// `p(M)·v`, by Horner's rule on the vector.
    pub fn apply_poly(&self, p: &FqPoly, v: &[FqElem], fq: &Fq) -> Vec<FqElem> {
        let mut acc = vec![0; v.len()];
        for c in p.coeffs().iter().rev() {
            acc = self.mul_vec(&acc, fq);
            for (a, x) in acc.iter_mut().zip(v) {
                *a = fq.add(a, &fq.mul(c, x));
            }
        }
        acc
    }

    /// Companion matrix of a monic `c` of degree `n ≥ 1`: ones on the
    /// subdiagonal and `-c_0, …, -c_{n-1}` in the last column.
    pub fn companion(c: &FqPoly, fq: &Fq) -> MatFq {
        let n = c.degree().expect("nonzero polynomial");
        let mut m = MatFq::zero(n, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, fq.neg(&c.coeffs()[i]));
        }
        m
    }

    /// Block diagonal matrix of companion blocks, in order.
    pub fn block_companion(blocks: &[FqPoly], fq: &Fq) -> MatFq {
        let n: usize = blocks.iter().map(|b| b.degree().unwrap()).sum();
        let mut m = MatFq::zero(n, n);
        let mut off = 0;
        for b in blocks {
            let c = MatFq::companion(b, fq);
            for i in 0..c.rows {
                for j in 0..c.cols {
                    m.set(off + i, off + j, c.get(i, j));
                }
            }
            off += c.rows;
        }
        m
    }
}
