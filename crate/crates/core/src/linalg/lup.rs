use super::{LinalgError, MatFq};
use crate::gf::{Field, Fq, FqElem};

/// `P·N = L·U` for an `m × k` matrix of full column rank: `perm[i]` is the
/// source row of row `i`, `L` is `m × k` unit lower trapezoidal, `U` is
/// `k × k` upper triangular.
#[derive(Debug, Clone)]
pub struct Lup {
    pub perm: Vec<usize>,
    pub l: MatFq,
    pub u: MatFq,
}

/// Gaussian elimination with row pivoting; fails on rank deficiency.
pub fn lup(n: &MatFq, fq: &Fq) -> Result<Lup, LinalgError> {
    let (m, k) = (n.rows(), n.cols());
    if k > m {
        return Err(LinalgError::RankDeficient);
    }
    let mut a = n.clone();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut l = MatFq::zero(m, k);
    for j in 0..k {
        let p = (j..m).find(|&i| a.get(i, j) != 0).ok_or(LinalgError::RankDeficient)?;
        a.swap_rows(j, p);
        l.swap_rows(j, p);
        perm.swap(j, p);
        let inv = fq.inv(&a.get(j, j)).unwrap();
        for i in j + 1..m {
            let f = fq.mul(&a.get(i, j), &inv);
            if f == 0 {
                continue;
            }
            l.set(i, j, f);
            for c in j..k {
                let v = fq.sub(&a.get(i, c), &fq.mul(&f, &a.get(j, c)));
                a.set(i, c, v);
            }
        }
    }
    for j in 0..k {
        l.set(j, j, 1);
    }
    let mut u = MatFq::zero(k, k);
    for i in 0..k {
        for j in i..k {
            u.set(i, j, a.get(i, j));
        }
    }
    Ok(Lup { perm, l, u })
}

impl Lup {
    /// The unique `x` with `N·x = y`, or `NotInSpan`.
    pub fn solve(&self, n: &MatFq, y: &[FqElem], fq: &Fq) -> Result<Vec<FqElem>, LinalgError> {
        let k = self.u.rows();
        let py: Vec<FqElem> = self.perm.iter().map(|&i| y[i]).collect();
        // forward substitution on the leading k × k block of L
        let mut z = vec![0; k];
        for i in 0..k {
            let s = (0..i).fold(py[i], |acc, j| fq.sub(&acc, &fq.mul(&self.l.get(i, j), &z[j])));
            z[i] = s;
        }
        let mut x = vec![0; k];
        for i in (0..k).rev() {
            let s = (i + 1..k).fold(z[i], |acc, j| fq.sub(&acc, &fq.mul(&self.u.get(i, j), &x[j])));
            x[i] = fq.mul(&s, &fq.inv(&self.u.get(i, i)).unwrap());
        }
        if n.mul_vec(&x, fq) != y {
            return Err(LinalgError::NotInSpan);
        }
        Ok(x)
    }
}

/// The unique `X` with `N·X = Y`, for `N` of full column rank.
pub fn solve_in_span(n: &MatFq, y: &MatFq, fq: &Fq) -> Result<MatFq, LinalgError> {
    if n.rows() != y.rows() {
        return Err(LinalgError::DimensionMismatch);
    }
    let f = lup(n, fq)?;
    let cols = y.columns().iter().map(|c| f.solve(n, c, fq)).collect::<Result<Vec<_>, _>>()?;
    Ok(MatFq::from_columns(n.cols(), &cols))
}
