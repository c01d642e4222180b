//! Brute-force ground truth for small fields.
//!
//! Everything here enumerates elements of `K` and evaluates Ore polynomials
//! naively. Module structures come from the Smith form of `T·Id - X` for an
//! action matrix `X` built by enumeration, never from the Frobenius normal
//! form or from multipoint evaluation.

use std::collections::HashMap;

use thiserror::Error;

use crate::drinfeld::{
    module_of_points_invariants, morphism_kernel_trace, torsion_direct, torsion_from_points, DrinfeldModule,
    ModuleStructure, Morphism,
};
use crate::gf::{Field, FieldCtx, FieldElement, Fq};
use crate::instances::monic_polys;
use crate::linalg::{smith_normal_form, MatFq, MatPoly};
use crate::meval::MatrixMethod;
use crate::motive::is_torsion_rational;
use crate::ore::OrePoly;
use crate::par;
use crate::poly::{FqPoly, PolyRing};

/// Largest `q^d` the oracles accept.
pub const MAX_ORACLE_ORDER: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("field of order {0} exceeds the oracle cap of 4096")]
    TooLarge(u64),
    #[error("subset is not a submodule: {0}")]
    NotSubmodule(String),
}

fn check_size(ctx: &FieldCtx) -> Result<(), OracleError> {
    if ctx.order() > MAX_ORACLE_ORDER {
        return Err(OracleError::TooLarge(ctx.order()));
    }
    Ok(())
}

/// `x, φ_T(x), …, φ_T^n(x)` by naive evaluation.
fn orbit(phi: &DrinfeldModule, x: &FieldElement, n: usize) -> Vec<FieldElement> {
    let ring = phi.ring();
    let mut out = vec![x.clone()];
    for _ in 0..n {
        let next = ring.eval(phi.phi_t(), out.last().unwrap());
        out.push(next);
    }
    out
}

/// `Σ a_j y_j` for `F_q`-coefficients `a_j`.
fn combine(ctx: &FieldCtx, a: &FqPoly, ys: &[FieldElement]) -> FieldElement {
    a.coeffs()
        .iter()
        .zip(ys)
        .filter(|(c, _)| **c != 0)
        .fold(ctx.zero(), |acc, (c, y)| ctx.add(&acc, &ctx.scale(*c, y)))
}

/// Monic generator of `{a : φ_a(x) = 0}`: the first monic `a`, by
/// ascending degree, that kills `x`.
pub fn brute_annihilator(phi: &DrinfeldModule, x: &FieldElement) -> Result<FqPoly, OracleError> {
    let ctx = phi.ctx();
    check_size(ctx)?;
    let d = ctx.degree();
    let ys = orbit(phi, x, d);
    for deg in 0..=d {
        for a in monic_polys(ctx.fq(), deg) {
            if combine(ctx, &a, &ys).is_zero() {
                return Ok(a);
            }
        }
    }
    unreachable!("the characteristic polynomial of φ_T annihilates K")
}

/// All `x ∈ K` with `f(x) = 0`.
pub fn kernel_elements(ctx: &FieldCtx, f: &OrePoly) -> Result<Vec<FieldElement>, OracleError> {
    check_size(ctx)?;
    let ring = crate::ore::OreRing::new(ctx);
    let hits = par::map_range(ctx.order() as usize, |i| {
        let x = ctx.from_index(i as u64);
        ring.eval(f, &x).is_zero().then_some(x)
    });
    Ok(hits.into_iter().flatten().collect())
}

/// Invariant factors of `{x ∈ K : pred(x)}` by enumeration and Smith form.
pub fn brute_module_structure(
    phi: &DrinfeldModule,
    pred: impl Fn(&FieldElement) -> bool + Sync,
) -> Result<Vec<FqPoly>, OracleError> {
    let ctx = phi.ctx();
    check_size(ctx)?;
    let fq = ctx.fq();
    let ring = phi.ring();
    let members = par::map_range(ctx.order() as usize, |i| pred(&ctx.from_index(i as u64)));
    let size = members.iter().filter(|&&m| m).count() as u64;
    if !members[0] {
        return Err(OracleError::NotSubmodule("missing zero".into()));
    }
    // greedy basis: keep each member that enlarges the span
    let mut basis: Vec<FieldElement> = Vec::new();
    let mut span: HashMap<u64, Vec<u32>> = HashMap::from([(0, Vec::new())]);
    for i in 0..ctx.order() {
        if !members[i as usize] || span.contains_key(&i) {
            continue;
        }
        let x = ctx.from_index(i);
        let k = basis.len();
        let mut next = HashMap::with_capacity(span.len() * fq.order() as usize);
        for (idx, coords) in &span {
            let y = ctx.from_index(*idx);
            for c in 0..fq.order() as u32 {
                let z = ctx.add(&y, &ctx.scale(c, &x));
                let mut zc = coords.clone();
                zc.resize(k, 0);
                zc.push(c);
                next.insert(ctx.index_of(&z), zc);
            }
        }
        span = next;
        basis.push(x);
    }
    if span.len() as u64 != size || span.keys().any(|&i| !members[i as usize]) {
        return Err(OracleError::NotSubmodule("not closed under F_q-linear combinations".into()));
    }
    let k = basis.len();
    let mut cols = Vec::with_capacity(k);
    for b in &basis {
        let img = ctx.index_of(&ring.eval(phi.phi_t(), b));
        let Some(coords) = span.get(&img) else {
            return Err(OracleError::NotSubmodule("not stable under φ_T".into()));
        };
        let mut c = coords.clone();
        c.resize(k, 0);
        cols.push(c);
    }
    let x = MatFq::from_columns(k, &cols);
    Ok(smith_normal_form(&MatPoly::char_matrix(&x, fq), fq).nonconstant())
}

/// Monic irreducible factors of `f` (without multiplicity), by trial division.
pub fn irreducible_factors(fq: &Fq, f: &FqPoly) -> Vec<FqPoly> {
    let ring = PolyRing::new(fq);
    let mut rest = ring.monic(f);
    let mut out = Vec::new();
    let mut deg = 1;
    while rest.degree().unwrap_or(0) >= 1 {
        if 2 * deg > rest.degree().unwrap() {
            out.push(rest);
            break;
        }
        for p in monic_polys(fq, deg) {
            if ring.divides(&p, &rest) {
                while let Some(q) = ring.exact_div(&rest, &p) {
                    rest = q;
                }
                out.push(p);
            }
        }
        deg += 1;
    }
    out
}

/// Checks the Frobenius decomposition contract of `s` against the submodule
/// `{x : pred(x)}` of size at most `max_size`: exact annihilators, and
/// `(a_i) ↦ Σ φ_{a_i}(x_i)` bijective from `Π F_q[T]/(d_i)`.
pub fn check_decomposition(
    phi: &DrinfeldModule,
    s: &ModuleStructure,
    pred: impl Fn(&FieldElement) -> bool + Sync,
    max_size: u64,
) -> Result<(), String> {
    let ctx = phi.ctx();
    let fq = ctx.fq();
    let pr = phi.poly_ring();
    if s.factors.len() != s.generators.len() {
        return Err("factor and generator counts differ".into());
    }
    for w in s.factors.windows(2) {
        if !pr.divides(&w[0], &w[1]) {
            return Err("factors are not a divisibility chain".into());
        }
    }
    let mut orbits = Vec::new();
    for (d, x) in s.factors.iter().zip(&s.generators) {
        let n = d.degree().ok_or("zero factor")?;
        if n == 0 {
            return Err("constant factor".into());
        }
        let ys = orbit(phi, x, n);
        if !combine(ctx, d, &ys).is_zero() {
            return Err(format!("generator {x:?} is not killed by {d:?}"));
        }
        for pi in irreducible_factors(fq, d) {
            let cof = pr.exact_div(d, &pi).unwrap();
            if combine(ctx, &cof, &ys).is_zero() {
                return Err(format!("generator {x:?} is killed by a proper divisor of {d:?}"));
            }
        }
        orbits.push(ys[..n].to_vec());
    }
    let q = fq.order();
    let size: u64 = s.factors.iter().map(|d| q.pow(d.degree().unwrap() as u32)).product();
    if size > max_size {
        return Ok(());
    }
    // every element Σ_i Σ_j c_ij φ_T^j(x_i) with deg_T < deg d_i, as one counter
    let dims: usize = orbits.iter().map(Vec::len).sum();
    let flat: Vec<&FieldElement> = orbits.iter().flatten().collect();
    let mut seen = std::collections::HashSet::with_capacity(size as usize);
    for n in 0..size {
        let mut m = n;
        let mut acc = ctx.zero();
        for y in flat.iter().take(dims) {
            let c = (m % q) as u32;
            m /= q;
            if c != 0 {
                acc = ctx.add(&acc, &ctx.scale(c, y));
            }
        }
        if !pred(&acc) {
            return Err(format!("{acc:?} lies outside the submodule"));
        }
        if !seen.insert(ctx.index_of(&acc)) {
            return Err("the sum map is not injective".into());
        }
    }
    let total = par::map_range(ctx.order() as usize, |i| pred(&ctx.from_index(i as u64)))
        .into_iter()
        .filter(|&m| m)
        .count() as u64;
    if total != size {
        return Err(format!("the generators span {size} of {total} elements"));
    }
    Ok(())
}

/// Cross-checks the kernel of `m` three ways: the fast path, enumeration
/// with the Smith form, and the Smith form of `T·Id - X` for the induced
/// action `X`. Also checks the size count and the decomposition contract
/// (bijectivity only when the kernel has at most `max_size` elements).
pub fn check_kernel(m: &Morphism, max_size: u64) -> Result<ModuleStructure, String> {
    let phi = m.source();
    let ctx = phi.ctx();
    let fq = ctx.fq();
    let trace = morphism_kernel_trace(m, MatrixMethod::Multipoint).map_err(|e| e.to_string())?;
    let fast = trace.structure;
    let ring = phi.ring();
    let in_kernel = |x: &FieldElement| ring.eval(m.u(), x).is_zero();
    let brute = brute_module_structure(phi, in_kernel).map_err(|e| e.to_string())?;
    let smith = smith_normal_form(&MatPoly::char_matrix(&trace.x, fq), fq).nonconstant();
    if fast.factors != brute || fast.factors != smith {
        return Err(format!(
            "factor mismatch: fast {:?}, enumeration {:?}, smith {:?}",
            fast.factors, brute, smith
        ));
    }
    let kernel_size = kernel_elements(ctx, m.u()).map_err(|e| e.to_string())?.len() as u64;
    let q = fq.order();
    let counted: u64 = fast.factors.iter().map(|f| q.pow(f.degree().unwrap() as u32)).product();
    if counted != kernel_size || q.pow(trace.n.cols() as u32) != kernel_size {
        return Err(format!("size mismatch: factors give {counted}, kernel has {kernel_size}"));
    }
    check_decomposition(phi, &fast, in_kernel, max_size)?;
    Ok(fast)
}

/// Torsion by both strategies, compared with each other and with the
/// decomposition contract.
pub fn check_torsion(phi: &DrinfeldModule, a: &FqPoly, max_size: u64) -> Result<ModuleStructure, String> {
    let direct = torsion_direct(phi, a).map_err(|e| e.to_string())?;
    let pts = module_of_points_invariants(phi).map_err(|e| e.to_string())?;
    let derived = torsion_from_points(phi, a, &pts).map_err(|e| e.to_string())?;
    if direct.factors != derived.factors {
        return Err(format!("strategies disagree: {:?} vs {:?}", direct.factors, derived.factors));
    }
    let phi_a = phi.phi_eval(a);
    let ring = phi.ring();
    check_decomposition(phi, &derived, |x| ring.eval(&phi_a, x).is_zero(), max_size)?;
    Ok(derived)
}

/// For `a` prime to the characteristic: `a | g_φ`, `#φ[a](K) = q^{r·deg a}`
/// and the right-divisibility test must agree. Returns the common answer.
pub fn check_rationality(phi: &DrinfeldModule, a: &FqPoly, g_phi: &FqPoly) -> Result<bool, String> {
    let ctx = phi.ctx();
    let pr = phi.poly_ring();
    let by_gcd = pr.divides(a, g_phi);
    let phi_a = phi.phi_eval(a);
    let count = kernel_elements(ctx, &phi_a).map_err(|e| e.to_string())?.len() as u64;
    let full = (a.degree().unwrap() * phi.rank()) as u32;
    let by_count = ctx.base_order().checked_pow(full).is_some_and(|n| n == count);
    let by_division = is_torsion_rational(phi, a).map_err(|e| e.to_string())?;
    if by_gcd != by_count || by_gcd != by_division {
        return Err(format!(
            "rationality of {a:?}: divides g_phi {by_gcd}, full kernel {by_count}, division test {by_division}"
        ));
    }
    Ok(by_gcd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::OreRing;
    use std::sync::Arc;

    fn f4_module() -> DrinfeldModule {
        let ctx = Arc::new(FieldCtx::new(Fq::prime(2).unwrap(), vec![1, 1, 1]).unwrap());
        let phi = OreRing::new(&ctx).from_coeffs(vec![ctx.basis(1), ctx.one()]);
        DrinfeldModule::new(ctx.clone(), phi).unwrap()
    }

    fn p2(c: &[u32]) -> FqPoly {
        PolyRing::new(&Fq::prime(2).unwrap()).from_coeffs(c.to_vec())
    }

    #[test]
    fn annihilator_examples() {
        let phi = f4_module();
        let ctx = phi.ctx();
        assert_eq!(brute_annihilator(&phi, &ctx.zero()).unwrap(), p2(&[1]));
        assert_eq!(brute_annihilator(&phi, &ctx.basis(1)).unwrap(), p2(&[0, 1]));
        assert_eq!(brute_annihilator(&phi, &ctx.one()).unwrap(), p2(&[0, 1, 1]));
    }

    #[test]
    fn structure_examples() {
        let phi = f4_module();
        let ring = phi.ring();
        assert_eq!(brute_module_structure(&phi, |_| true).unwrap(), vec![p2(&[0, 1, 1])]);
        let ker = |x: &FieldElement| ring.eval(phi.phi_t(), x).is_zero();
        assert_eq!(brute_module_structure(&phi, ker).unwrap(), vec![p2(&[0, 1])]);
        assert!(brute_module_structure(&phi, |x| x.is_zero()).unwrap().is_empty());
        let one = phi.ctx().one();
        assert!(matches!(
            brute_module_structure(&phi, |x| x.is_zero() || *x == one),
            Err(OracleError::NotSubmodule(_))
        ));
        let big = Arc::new(FieldCtx::standard(2, 13).unwrap());
        let phi = crate::instances::random_module(&big, 1, &mut rand::thread_rng());
        assert_eq!(brute_module_structure(&phi, |_| true), Err(OracleError::TooLarge(8192)));
    }

    #[test]
    fn decomposition_check() {
        let phi = f4_module();
        let ctx = phi.ctx();
        let good = ModuleStructure { factors: vec![p2(&[0, 1, 1])], generators: vec![ctx.one()] };
        assert!(check_decomposition(&phi, &good, |_| true, 1024).is_ok());
        let bad = ModuleStructure { factors: vec![p2(&[0, 1, 1])], generators: vec![ctx.basis(1)] };
        assert!(check_decomposition(&phi, &bad, |_| true, 1024).is_err());
    }

    #[test]
    fn kernel_and_torsion_checks() {
        let phi = f4_module();
        let s = check_kernel(&Morphism::zero(&phi), 1024).unwrap();
        assert_eq!(s.factors, vec![p2(&[0, 1, 1])]);
        let s = check_torsion(&phi, &p2(&[0, 1]), 1024).unwrap();
        assert_eq!(s.factors, vec![p2(&[0, 1])]);
        let g = crate::motive::rational_lcm(&phi);
        assert!(check_rationality(&phi, &p2(&[0, 1]), &g).unwrap());
        assert!(check_rationality(&phi, &p2(&[1, 1]), &g).unwrap());
    }

    #[test]
    fn factoring() {
        let f2 = Fq::prime(2).unwrap();
        let r = PolyRing::new(&f2);
        let f = r.mul(&r.mul(&p2(&[0, 1]), &p2(&[0, 1])), &p2(&[1, 1, 1]));
        assert_eq!(irreducible_factors(&f2, &f), vec![p2(&[0, 1]), p2(&[1, 1, 1])]);
        assert_eq!(irreducible_factors(&f2, &p2(&[1, 1, 0, 1])), vec![p2(&[1, 1, 0, 1])]);
    }
}
