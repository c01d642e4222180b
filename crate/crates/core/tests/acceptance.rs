//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every expected value is recomputed independently of the fast paths:
//! module structures by enumeration, evaluations by iterated Frobenius,
//! invariant factors by Smith form and by determinantal divisors.

use std::sync::Arc;
use std::time::Instant;

use drinfeld::bench::{self, linear_fit, BenchConfig};
use drinfeld::drinfeld::{
    module_of_points_invariants, morphism_kernel_trace, torsion_direct, torsion_from_points, DrinfeldModule,
    Morphism,
};
use drinfeld::gf::{Field, FieldCtx, FieldElement};
use drinfeld::instances::{
    fields_up_to, monic_polys, random_module, random_morphism, random_poly, subspace_polynomial, MorphismKind,
};
use drinfeld::linalg::{fitting_invariants, smith_normal_form, MatPoly};
use drinfeld::meval::{multipoint_eval, ore_matrix, MatrixMethod};
use drinfeld::motive::{is_torsion_rational, max_rational_p_power, rational_lcm};
use drinfeld::oracle::{brute_module_structure, check_decomposition, check_rationality, kernel_elements};
use drinfeld::ore::{OrePoly, OreRing};
use drinfeld::poly::{FqPoly, PolyRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    /// Every failure falls in a documented class the criterion cannot hold on.
    expected: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(checked: usize, failures: &[String]) -> Self {
        let mut detail = format!("{checked} checks, {} failures", failures.len());
        if let Some(first) = failures.first() {
            detail.push_str(&format!("; first: {first}"));
        }
        Outcome { pass: failures.is_empty(), expected: false, detail }
    }
}

fn pick_field(rng: &mut ChaCha8Rng, qs: &[u64], dmax: usize, cap: u64) -> Arc<FieldCtx> {
    loop {
        let q = qs[rng.gen_range(0..qs.len())];
        let d = rng.gen_range(1..=dmax);
        if q.pow(d as u32) <= cap {
            return Arc::new(FieldCtx::standard(q, d).unwrap());
        }
    }
}

fn in_kernel<'a>(ring: &'a OreRing<'a>, u: &'a OrePoly) -> impl Fn(&FieldElement) -> bool + Sync + 'a {
    move |x| ring.eval(u, x).is_zero()
}

/// The instances shared by criteria 1 to 3.
fn kernel_instances() -> Vec<(DrinfeldModule, Morphism)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let kinds = [MorphismKind::Zero, MorphismKind::Endomorphism, MorphismKind::Isogeny];
    (0..210)
        .map(|i| {
            let ctx = pick_field(&mut rng, &[2, 3, 5], 6, 4096);
            let phi = random_module(&ctx, rng.gen_range(1..=4), &mut rng);
            let m = random_morphism(&phi, kinds[i % 3], &mut rng);
            (phi, m)
        })
        .collect()
}

fn criterion_1(instances: &[(DrinfeldModule, Morphism)]) -> Outcome {
    let mut failures = Vec::new();
    for (i, (phi, m)) in instances.iter().enumerate() {
        let fq = phi.fq();
        let trace = morphism_kernel_trace(m, MatrixMethod::Multipoint).unwrap();
        let ring = phi.ring();
        let brute = brute_module_structure(phi, in_kernel(&ring, m.u())).unwrap();
        let smith = smith_normal_form(&MatPoly::char_matrix(&trace.x, fq), fq).nonconstant();
        if trace.structure.factors != brute || brute != smith {
            failures.push(format!("instance {i}"));
        }
    }
    Outcome::from_failures(instances.len(), &failures)
}

fn criterion_2(instances: &[(DrinfeldModule, Morphism)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, (phi, m)) in instances.iter().enumerate() {
        let s = morphism_kernel_trace(m, MatrixMethod::Multipoint).unwrap().structure;
        let size = phi.ctx().base_order().pow(s.dimension() as u32);
        if size > 1024 {
            continue;
        }
        checked += 1;
        let ring = phi.ring();
        if let Err(e) = check_decomposition(phi, &s, in_kernel(&ring, m.u()), 1024) {
            failures.push(format!("instance {i}: {e}"));
        }
    }
    Outcome::from_failures(checked, &failures)
}

fn criterion_3(instances: &[(DrinfeldModule, Morphism)]) -> Outcome {
    let mut failures = Vec::new();
    for (i, (phi, m)) in instances.iter().enumerate() {
        let ctx = phi.ctx();
        let q = ctx.base_order();
        let s = morphism_kernel_trace(m, MatrixMethod::Multipoint).unwrap().structure;
        let product: u64 = s.factors.iter().map(|f| q.pow(f.degree().unwrap() as u32)).product();
        let kernel = kernel_elements(ctx, m.u()).unwrap().len() as u64;
        if product != kernel {
            failures.push(format!("instance {i}: {product} vs #ker {kernel}"));
        }
        if m.u().is_zero() && s.dimension() != ctx.degree() {
            failures.push(format!("instance {i}: sum of degrees {} for u = 0", s.dimension()));
        }
    }
    Outcome::from_failures(instances.len(), &failures)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let n = 120;
    for i in 0..n {
        let ctx = pick_field(&mut rng, &[2, 3, 5], 6, 4096);
        let phi = random_module(&ctx, rng.gen_range(1..=4), &mut rng);
        let a = loop {
            let a = random_poly(ctx.fq(), rng.gen_range(1..=3), &mut rng);
            if !a.is_zero() {
                break a;
            }
        };
        let direct = torsion_direct(&phi, &a).unwrap();
        let pts = module_of_points_invariants(&phi).unwrap();
        let derived = torsion_from_points(&phi, &a, &pts).unwrap();
        if direct.factors != derived.factors {
            failures.push(format!("instance {i}: {:?} vs {:?}", direct.factors, derived.factors));
            continue;
        }
        let phi_a = phi.phi_eval(&a);
        let ring = phi.ring();
        let size = ctx.base_order().pow(derived.dimension() as u32);
        if size <= 1024 {
            if let Err(e) = check_decomposition(&phi, &derived, in_kernel(&ring, &phi_a), 1024) {
                failures.push(format!("instance {i}: {e}"));
            }
        }
    }
    Outcome::from_failures(n, &failures)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 0..220 {
        let ctx = pick_field(&mut rng, &[2, 3, 4, 5, 7, 9], 8, u64::MAX);
        let ring = OreRing::new(&ctx);
        let len = rng.gen_range(0..=3 * ctx.degree() + 2);
        let f = ring.from_coeffs((0..len).map(|_| ctx.random(&mut rng)).collect());
        let ell = rng.gen_range(1..=64);
        let points: Vec<FieldElement> = (0..ell).map(|_| ctx.random(&mut rng)).collect();
        let fast = multipoint_eval(&ctx, &f, &points);
        checked += 1;
        if points.iter().zip(&fast).any(|(x, y)| ring.eval(&f, x) != *y) {
            failures.push(format!("random case {i}"));
        }
    }
    for (q, d) in fields_up_to(256) {
        let ctx = FieldCtx::standard(q, d).unwrap();
        let ring = OreRing::new(&ctx);
        for _ in 0..5 {
            let len = rng.gen_range(0..=2 * d + 3);
            let f = ring.from_coeffs((0..len).map(|_| ctx.random(&mut rng)).collect());
            let m = ore_matrix(&ctx, &f, MatrixMethod::Multipoint);
            checked += 1;
            for j in 0..d {
                if m.column(j) != ring.eval(&f, &ctx.basis(j)).coeffs() {
                    failures.push(format!("ore_matrix over F_{q}^{d}, column {j}"));
                }
            }
            // and pointwise on all of K through linearity
            for idx in 0..ctx.order() {
                let x = ctx.from_index(idx);
                let y = ctx.element(m.mul_vec(x.coeffs(), ctx.fq())).unwrap();
                if y != ring.eval(&f, &x) {
                    failures.push(format!("ore_matrix over F_{q}^{d} at element {idx}"));
                    break;
                }
            }
        }
    }
    Outcome::from_failures(checked, &failures)
}

fn kernel_set(ring: &OreRing, f: &OrePoly) -> Vec<u64> {
    let ctx = ring.ctx();
    (0..ctx.order()).filter(|&i| ring.eval(f, &ctx.from_index(i)).is_zero()).collect()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let pairs = 600;
    for i in 0..pairs {
        let ctx = pick_field(&mut rng, &[2, 3, 4, 5, 7], 6, u64::MAX);
        let ring = OreRing::new(&ctx);
        let draw = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=8);
            let mut c: Vec<FieldElement> = (0..n).map(|_| ctx.random(rng)).collect();
            c.push(ctx.random_nonzero(rng));
            ring.from_coeffs(c)
        };
        let (f, g) = (draw(&mut rng), draw(&mut rng));
        let l = ring.llcm(&f, &g).unwrap();
        let r = ring.rgcd(&f, &g).unwrap();
        if l.degree().unwrap() + r.degree().unwrap() != f.degree().unwrap() + g.degree().unwrap() {
            failures.push(format!("pair {i}: degree identity"));
        }
        let (q, rem) = ring.rdiv(&f, &g).unwrap();
        let reduced = rem.is_zero() || rem.degree() < g.degree();
        if ring.add(&ring.mul(&q, &g), &rem) != f || !reduced {
            failures.push(format!("pair {i}: division"));
        }
        if !ring.right_divides(&f, &l)
            || !ring.right_divides(&g, &l)
            || !ring.right_divides(&r, &f)
            || !ring.right_divides(&r, &g)
        {
            failures.push(format!("pair {i}: divisibility"));
        }
    }
    let mut checked = pairs;
    for (q, d) in fields_up_to(256) {
        let ctx = FieldCtx::standard(q, d).unwrap();
        let ring = OreRing::new(&ctx);
        for _ in 0..4 {
            checked += 1;
            let n = rng.gen_range(1..=3);
            let f = ring.from_coeffs((0..=n).map(|_| ctx.random_nonzero(&mut rng)).collect());
            let g = ring.from_coeffs((0..=n).map(|_| ctx.random_nonzero(&mut rng)).collect());
            let (kf, kg) = (kernel_set(&ring, &f), kernel_set(&ring, &g));
            let common: Vec<u64> = kf.iter().copied().filter(|x| kg.contains(x)).collect();
            if kernel_set(&ring, &ring.rgcd(&f, &g).unwrap()) != common {
                failures.push(format!("F_{q}^{d}: ker rgcd"));
            }
            let kl = kernel_set(&ring, &ring.llcm(&f, &g).unwrap());
            if !kf.iter().chain(&kg).all(|x| kl.contains(x)) {
                failures.push(format!("F_{q}^{d}: ker llcm"));
            }
            // split separable inputs: ker llcm is exactly the sum of kernels
            let vs: Vec<FieldElement> = (0..2).map(|_| ctx.random_nonzero(&mut rng)).collect();
            let (a, b) = (subspace_polynomial(&ctx, &vs[..1]), subspace_polynomial(&ctx, &vs[1..]));
            let (ka, kb) = (kernel_set(&ring, &a), kernel_set(&ring, &b));
            let mut sum: Vec<u64> = ka
                .iter()
                .flat_map(|&x| kb.iter().map(move |&y| (x, y)))
                .map(|(x, y)| ctx.index_of(&ctx.add(&ctx.from_index(x), &ctx.from_index(y))))
                .collect();
            sum.sort_unstable();
            sum.dedup();
            if kernel_set(&ring, &ring.llcm(&a, &b).unwrap()) != sum {
                failures.push(format!("F_{q}^{d}: ker llcm of split inputs"));
            }
        }
    }
    Outcome::from_failures(checked, &failures)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let mut checked = 0;
    // the worked example: q = 2, d = 2, φ_T = z + τ
    let f4 = Arc::new(FieldCtx::standard(2, 2).unwrap());
    let phi_t = OreRing::new(&f4).from_coeffs(vec![f4.basis(1), f4.one()]);
    let phi = DrinfeldModule::new(f4.clone(), phi_t).unwrap();
    let expected = PolyRing::new(f4.fq()).from_coeffs(vec![0, 1, 1]);
    if rational_lcm(&phi) != expected {
        failures.push(format!("worked example: g_phi = {:?}", rational_lcm(&phi)));
    }
    let mut modules = vec![phi];
    for _ in 0..60 {
        let ctx = pick_field(&mut rng, &[2, 3], 4, u64::MAX);
        modules.push(random_module(&ctx, rng.gen_range(1..=3), &mut rng));
    }
    for (i, phi) in modules.iter().enumerate() {
        let g = rational_lcm(phi);
        let pr = phi.poly_ring();
        for deg in 0..=3 {
            for a in monic_polys(phi.fq(), deg) {
                if !pr.gcd(&a, phi.char_p()).unwrap().is_unit() {
                    continue;
                }
                checked += 1;
                if let Err(e) = check_rationality(phi, &a, &g) {
                    failures.push(format!("instance {i}: {e}"));
                }
            }
        }
    }
    Outcome::from_failures(checked, &failures)
}

fn criterion_8() -> Outcome {
    let r = 2;
    let cfg = BenchConfig {
        q: 2,
        r,
        dmin: 8,
        dmax: 64,
        seed: 8,
        methods: vec![MatrixMethod::Naive, MatrixMethod::Multipoint],
        deterministic: false,
    };
    let rows = bench::run(&cfg).unwrap();
    let mut failures = Vec::new();
    let mut naive_points = Vec::new();
    for pair in rows.chunks(2) {
        let (naive, multi) = (&pair[0], &pair[1]);
        let total = |row: &bench::BenchRow| row.arith_ops + row.frobenius_apps;
        if total(multi) <= total(naive) {
            failures.push(format!("d = {}: multipoint {} <= naive {}", naive.d, total(multi), total(naive)));
        }
        naive_points.push((naive.d as f64, naive.frobenius_apps as f64));
    }
    let (slope, intercept) = linear_fit(&naive_points);
    for &(d, y) in &naive_points {
        let fit = slope * d + intercept;
        if (y - fit).abs() > 0.25 * fit {
            failures.push(format!("d = {d}: frobenius_apps {y} vs fit {fit:.1}"));
        }
        let ratio = y / (r as f64 * d);
        if !(0.75..=1.25).contains(&(ratio / (slope / r as f64))) {
            failures.push(format!("d = {d}: ratio to r·d {ratio:.3}"));
        }
    }
    let mut out = Outcome::from_failures(rows.len(), &failures);
    out.detail.push_str(&format!("; naive frobenius_apps ≈ {slope:.3}·d + {intercept:.1} at r = {r}"));
    out
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    let n = 120;
    for i in 0..n {
        let ctx = pick_field(&mut rng, &[2, 3, 5, 7], 1, u64::MAX);
        let fq = ctx.fq();
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let data: Vec<FqPoly> =
            (0..rows * cols).map(|_| random_poly(fq, rng.gen_range(0..=3), &mut rng)).collect();
        let p = MatPoly::from_rows(rows, cols, data);
        let smith = smith_normal_form(&p, fq).nonconstant();
        match fitting_invariants(&p, fq) {
            Ok(fit) if fit == smith => {}
            other => failures.push(format!("matrix {i}: {other:?} vs {smith:?}")),
        }
    }
    Outcome::from_failures(n, &failures)
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = Vec::new();
    let mut trivial = 0;
    let mut unexplained = 0;
    let n = 60;
    for i in 0..n {
        let ctx = pick_field(&mut rng, &[2, 3], 4, u64::MAX);
        let phi = random_module(&ctx, rng.gen_range(1..=3), &mut rng);
        let pr = phi.poly_ring();
        let p = phi.char_p();
        let pts = module_of_points_invariants(&phi).unwrap();
        let pp = max_rational_p_power(&phi, &pts).unwrap();
        let rational = |s: u32| is_torsion_rational(&phi, &pr.pow(p, s)).unwrap();
        let is_trivial = drinfeld::motive::has_trivial_p_torsion(&phi);
        trivial += usize::from(is_trivial);
        if !rational(pp.s) || rational(pp.s + 1) {
            failures.push(format!("instance {i} (rank {}): s = {}, v = {}", phi.rank(), pp.s, pp.v));
            unexplained += usize::from(!is_trivial || !rational(pp.s));
        }
        let flags: Vec<bool> = (0..=pp.v).map(rational).collect();
        if flags.windows(2).any(|w| !w[0] && w[1]) {
            failures.push(format!("instance {i}: rationality not monotone in s: {flags:?}"));
            unexplained += 1;
        }
    }
    let mut out = Outcome::from_failures(n, &failures);
    out.detail.push_str(&format!(
        "; {trivial} of {n} instances have phi[p] = 0, where every p^(s+1) torsion is rational; \
         {unexplained} failures outside that class"
    ));
    out.expected = !out.pass && unexplained == 0;
    out
}

fn main() {
    let start = Instant::now();
    let instances = kernel_instances();
    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence of kernel invariants", Box::new(|| criterion_1(&instances))),
        ("Frobenius decomposition contract", Box::new(|| criterion_2(&instances))),
        ("counting", Box::new(|| criterion_3(&instances))),
        ("torsion consistency", Box::new(criterion_4)),
        ("multipoint evaluation correctness", Box::new(criterion_5)),
        ("Ore algebra laws", Box::new(criterion_6)),
        ("rationality invariant", Box::new(criterion_7)),
        ("cost model, naive vs multipoint", Box::new(criterion_8)),
        ("Fitting ideals vs Smith form", Box::new(criterion_9)),
        ("p-power torsion", Box::new(criterion_10)),
    ];
    let budgets = [60.0, 60.0, 60.0, 60.0, 60.0, 60.0, 60.0, 120.0, 60.0, 60.0];
    let mut failed = Vec::new();
    for (i, ((name, run), budget)) in criteria.iter().zip(budgets).enumerate() {
        let t = Instant::now();
        let mut out = run();
        let secs = t.elapsed().as_secs_f64();
        if secs > budget {
            out.pass = false;
            out.detail.push_str(&format!("; over the {budget} s budget"));
        }
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}  {name}: {} [{secs:.2} s]", i + 1, out.detail);
        if !out.pass {
            failed.push((i + 1, out.expected));
        }
    }
    println!(
        "acceptance: {}/{} criteria pass in {:.1} s",
        criteria.len() - failed.len(),
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    let unexpected: Vec<usize> = failed.iter().filter(|(_, e)| !e).map(|(i, _)| *i).collect();
    let known: Vec<usize> = failed.iter().filter(|(_, e)| *e).map(|(i, _)| *i).collect();
    if !known.is_empty() {
        println!("known unattainable, failing only on the documented class: {known:?}");
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
