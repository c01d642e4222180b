//! Operation-count comparison of the two ways to build the matrix of `φ_T`.
//!
//! Each row times one call on a fresh random module over `F_{q^d}`. The
//! multipoint path builds its llcm tree inside the measurement.

use std::fmt::Write;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gf::{FieldCtx, GfError};
use crate::instances::random_module;
use crate::meval::{ore_matrix, ore_matrix_uncached, MatrixMethod};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub d: usize,
    pub method: String,
    pub arith_ops: u64,
    pub frobenius_apps: u64,
    pub wall_ns: u64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub q: u64,
    pub r: usize,
    pub dmin: usize,
    pub dmax: usize,
    pub seed: u64,
    pub methods: Vec<MatrixMethod>,
    /// Report `wall_ns = 0` so that output depends on the seed only.
    pub deterministic: bool,
}

pub fn method_name(m: MatrixMethod) -> &'static str {
    match m {
        MatrixMethod::Naive => "naive",
        MatrixMethod::Multipoint => "multipoint",
    }
}

/// `dmin, 2·dmin, 4·dmin, …` up to `dmax`.
pub fn doubling(dmin: usize, dmax: usize) -> Vec<usize> {
    std::iter::successors(Some(dmin.max(1)), |&d| Some(d * 2)).take_while(|&d| d <= dmax).collect()
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>, GfError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for d in doubling(cfg.dmin, cfg.dmax) {
        let ctx = Arc::new(FieldCtx::standard(cfg.q, d)?);
        let phi = random_module(&ctx, cfg.r, &mut rng);
        for &method in &cfg.methods {
            let start = Instant::now();
            let (_, counts) = ctx.measure(|| match method {
                MatrixMethod::Naive => ore_matrix(&ctx, phi.phi_t(), MatrixMethod::Naive),
                MatrixMethod::Multipoint => ore_matrix_uncached(&ctx, phi.phi_t()),
            });
            let wall_ns = if cfg.deterministic { 0 } else { start.elapsed().as_nanos() as u64 };
            rows.push(BenchRow {
                d,
                method: method_name(method).to_string(),
                arith_ops: counts.arith_ops,
                frobenius_apps: counts.frobenius_apps,
                wall_ns,
            });
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("d,method,arith_ops,frobenius_apps,wall_ns\n");
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.d, r.method, r.arith_ops, r.frobenius_apps, r.wall_ns).unwrap();
    }
    out
}

/// Least-squares slope and intercept of `y` against `x`.
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
