use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use drinfeld::bench::{self, BenchConfig};
use drinfeld::drinfeld::{
    module_of_points_invariants, morphism_kernel_invariants, torsion_direct, torsion_from_points,
    DrinfeldModule, ModuleStructure,
};
use drinfeld::gf::{FieldCtx, FieldElement, Fq};
use drinfeld::instances::{monic_polys, random_module, random_monic, random_morphism, MorphismKind};
use drinfeld::io::{fq_poly_json, parse_fq_poly_str, ModuleSpec, MorphismSpec, StructureJson};
use drinfeld::motive::{has_trivial_p_torsion, is_torsion_rational, max_rational_p_power, rational_lcm};
use drinfeld::oracle::{self, MAX_ORACLE_ORDER};
use drinfeld::poly::FqPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{digest, CliError, RunReport};
use crate::{BenchArgs, Command, Strategy, VerifyArgs};

/// Largest decomposition checked element by element during `verify`.
const MAX_ENUMERATION: u64 = 1024;

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Points(i) => points(&i.input),
        Command::Kernel { input, morphism } => kernel(&input.input, &morphism),
        Command::Torsion { input, a, strategy } => torsion(&input.input, &a, strategy),
        Command::RationalLcm(i) => rational(&i.input),
        Command::IsRational { input, a } => is_rational(&input.input, &a),
        Command::Bench(b) => bench_cmd(&b),
        Command::Verify(v) => verify(&v),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_module(path: &Path) -> Result<(DrinfeldModule, Vec<u8>), CliError> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok((ModuleSpec::parse(&text)?.build()?, bytes))
}

fn parse_a(phi: &DrinfeldModule, a: &str) -> Result<FqPoly, CliError> {
    let a = parse_fq_poly_str(phi.fq(), a)?;
    if a.is_zero() {
        return Err(CliError::Parse("a must be nonzero".into()));
    }
    Ok(a)
}

fn fmt_coeff(fq: &Fq, c: u32) -> String {
    if fq.is_prime_field() {
        c.to_string()
    } else {
        let ds: Vec<String> = fq.digits(c).iter().map(u32::to_string).collect();
        format!("({})", ds.join(","))
    }
}

/// `T^2 + T`, with `F_q` coefficients as digit tuples when `q ≠ p`.
fn fmt_poly(fq: &Fq, f: &FqPoly) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "T".to_string(),
            _ => format!("T^{i}"),
        };
        terms.push(match (c == 1, i) {
            (true, 0) => "1".to_string(),
            (true, _) => mono,
            (false, 0) => fmt_coeff(fq, c),
            (false, _) => format!("{}*{mono}", fmt_coeff(fq, c)),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn fmt_element(fq: &Fq, x: &FieldElement) -> String {
    let cs: Vec<String> = x.coeffs().iter().map(|&c| fmt_coeff(fq, c)).collect();
    format!("[{}]", cs.join(", "))
}

/// Factors and generators for humans; the trivial module reads `(1, 0)`.
fn fmt_structure(fq: &Fq, s: &ModuleStructure) -> String {
    if s.is_trivial() {
        return "(1, 0)".into();
    }
    s.factors
        .iter()
        .zip(&s.generators)
        .map(|(f, x)| format!("({}, {})", fmt_poly(fq, f), fmt_element(fq, x)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn points(input: &Path) -> Result<(), CliError> {
    let (phi, bytes) = load_module(input)?;
    let start = Instant::now();
    let (s, counts) = phi.ctx().measure(|| module_of_points_invariants(&phi));
    let s = s?;
    let result = serde_json::to_value(StructureJson::new(phi.ctx(), &s)).unwrap();
    RunReport::new("points", digest(&[&bytes]), result, counts, start.elapsed())
        .emit(&format!("phi(K) = {}", fmt_structure(phi.fq(), &s)));
    Ok(())
}

fn kernel(input: &Path, morphism: &Path) -> Result<(), CliError> {
    let (phi, bytes) = load_module(input)?;
    let mbytes = read(morphism)?;
    let text = String::from_utf8(mbytes.clone()).map_err(|e| CliError::Parse(e.to_string()))?;
    let m = MorphismSpec::parse(&text)?.build(&phi)?;
    let start = Instant::now();
    let (s, counts) = phi.ctx().measure(|| morphism_kernel_invariants(&m));
    let s = s?;
    let result = serde_json::to_value(StructureJson::new(phi.ctx(), &s)).unwrap();
    RunReport::new("kernel", digest(&[&bytes, &mbytes]), result, counts, start.elapsed())
        .emit(&format!("ker u = {}", fmt_structure(phi.fq(), &s)));
    Ok(())
}

fn torsion(input: &Path, a: &str, strategy: Strategy) -> Result<(), CliError> {
    let (phi, bytes) = load_module(input)?;
    let a_poly = parse_a(&phi, a)?;
    let start = Instant::now();
    let (s, counts) = phi.ctx().measure(|| match strategy {
        Strategy::Direct => torsion_direct(&phi, &a_poly),
        Strategy::FromPoints => {
            module_of_points_invariants(&phi).and_then(|pts| torsion_from_points(&phi, &a_poly, &pts))
        }
    });
    let s = s?;
    let mut result = serde_json::to_value(StructureJson::new(phi.ctx(), &s)).unwrap();
    result["strategy"] = json!(match strategy {
        Strategy::Direct => "direct",
        Strategy::FromPoints => "from-points",
    });
    let summary = format!("phi[{}](K) = {}", fmt_poly(phi.fq(), &a_poly), fmt_structure(phi.fq(), &s));
    RunReport::new("torsion", digest(&[&bytes, a.as_bytes()]), result, counts, start.elapsed())
        .emit(&summary);
    Ok(())
}

fn rational(input: &Path) -> Result<(), CliError> {
    let (phi, bytes) = load_module(input)?;
    let fq = phi.fq();
    let start = Instant::now();
    let (out, counts) = phi.ctx().measure(|| {
        let g = rational_lcm(&phi);
        let pts = module_of_points_invariants(&phi)?;
        let pp = max_rational_p_power(&phi, &pts)?;
        Ok::<_, drinfeld::drinfeld::DrinfeldError>((g, pp))
    });
    let (g, pp) = out?;
    let trivial = has_trivial_p_torsion(&phi);
    let result = json!({
        "g_phi": fq_poly_json(fq, &g),
        "p": fq_poly_json(fq, phi.char_p()),
        "v": pp.v,
        "s": pp.s,
        "trivial_p_torsion": trivial,
    });
    let mut summary = format!(
        "g_phi = {}, p = {}, largest rational p-power torsion: p^{} (v = {})",
        fmt_poly(fq, &g),
        fmt_poly(fq, phi.char_p()),
        pp.s,
        pp.v
    );
    if trivial {
        summary.push_str("; phi[p] is trivial, so every phi[p^s] is rational");
    }
    RunReport::new("rational-lcm", digest(&[&bytes]), result, counts, start.elapsed()).emit(&summary);
    Ok(())
}

fn is_rational(input: &Path, a: &str) -> Result<(), CliError> {
    let (phi, bytes) = load_module(input)?;
    let a_poly = parse_a(&phi, a)?;
    let start = Instant::now();
    let (r, counts) = phi.ctx().measure(|| is_torsion_rational(&phi, &a_poly));
    let r = r?;
    let result = json!({ "a": fq_poly_json(phi.fq(), &a_poly), "rational": r });
    let summary =
        format!("phi[{}] {} contained in K", fmt_poly(phi.fq(), &a_poly), if r { "is" } else { "is not" });
    RunReport::new("is-rational", digest(&[&bytes, a.as_bytes()]), result, counts, start.elapsed())
        .emit(&summary);
    Ok(())
}

fn bench_cmd(b: &BenchArgs) -> Result<(), CliError> {
    if b.r == 0 {
        return Err(CliError::Parse("rank must be positive".into()));
    }
    let cfg = BenchConfig {
        q: b.q,
        r: b.r,
        dmin: b.dmin,
        dmax: b.dmax,
        seed: b.seed,
        methods: b.method.into(),
        deterministic: b.deterministic,
    };
    let start = Instant::now();
    let rows = bench::run(&cfg).map_err(|e| CliError::Parse(e.to_string()))?;
    if b.json {
        let total = rows.iter().fold(drinfeld::gf::OpCounts::default(), |acc, r| drinfeld::gf::OpCounts {
            arith_ops: acc.arith_ops + r.arith_ops,
            frobenius_apps: acc.frobenius_apps + r.frobenius_apps,
        });
        let params = format!("q={} r={} d={}..{} seed={}", b.q, b.r, b.dmin, b.dmax, b.seed);
        let wall = if b.deterministic { Default::default() } else { start.elapsed() };
        RunReport::new("bench", digest(&[params.as_bytes()]), json!(rows), total, wall)
            .emit(&format!("{} rows", rows.len()));
    } else {
        print!("{}", bench::to_csv(&rows));
    }
    Ok(())
}

#[derive(Default)]
struct Tally {
    instances: usize,
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record<T>(&mut self, label: &str, r: Result<T, String>) -> Option<T> {
        self.checks += 1;
        r.map_err(|e| self.failures.push(format!("{label}: {e}"))).ok()
    }
}

fn verify_module<R: Rng>(phi: &DrinfeldModule, label: &str, rng: &mut R, tally: &mut Tally) {
    tally.instances += 1;
    let fq = phi.fq();
    for kind in [MorphismKind::Zero, MorphismKind::Endomorphism, MorphismKind::Isogeny] {
        let m = random_morphism(phi, kind, rng);
        tally.record(&format!("{label} kernel {kind:?}"), oracle::check_kernel(&m, MAX_ENUMERATION));
    }
    let a = random_monic(fq, rng.gen_range(1..=2), rng);
    tally.record(
        &format!("{label} torsion {}", fmt_poly(fq, &a)),
        oracle::check_torsion(phi, &a, MAX_ENUMERATION),
    );
    let g = rational_lcm(phi);
    let pr = phi.poly_ring();
    for deg in 1..=2 {
        for a in monic_polys(fq, deg) {
            if pr.gcd(&a, phi.char_p()).unwrap().is_unit() {
                let what = format!("{label} rationality {}", fmt_poly(fq, &a));
                tally.record(&what, oracle::check_rationality(phi, &a, &g));
            }
        }
    }
}

fn check_cap(ctx: &FieldCtx) -> Result<(), CliError> {
    if ctx.order() > MAX_ORACLE_ORDER {
        return Err(CliError::TooLarge(format!(
            "q^d = {} exceeds the enumeration cap {MAX_ORACLE_ORDER}",
            ctx.order()
        )));
    }
    Ok(())
}

fn verify(v: &VerifyArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let mut tally = Tally::default();
    let (digest_hex, counts) = if let Some(input) = &v.input {
        let (phi, bytes) = load_module(input)?;
        check_cap(phi.ctx())?;
        let mut parts = vec![bytes];
        let mut rng = ChaCha8Rng::seed_from_u64(v.seed);
        let ((), counts) = phi.ctx().measure(|| verify_module(&phi, "input", &mut rng, &mut tally));
        if let Some(path) = &v.morphism {
            let mbytes = read(path)?;
            let text = String::from_utf8(mbytes.clone()).map_err(|e| CliError::Parse(e.to_string()))?;
            let m = MorphismSpec::parse(&text)?.build(&phi)?;
            tally.record("input morphism", oracle::check_kernel(&m, MAX_ENUMERATION));
            parts.push(mbytes);
        }
        let parts: Vec<&[u8]> = parts.iter().map(Vec::as_slice).collect();
        (digest(&parts), counts)
    } else {
        if v.r == 0 {
            return Err(CliError::Parse("rank must be positive".into()));
        }
        let ctx = Arc::new(FieldCtx::standard(v.q, v.d).map_err(|e| CliError::Parse(e.to_string()))?);
        check_cap(&ctx)?;
        let mut rng = ChaCha8Rng::seed_from_u64(v.seed);
        let ((), counts) = ctx.measure(|| {
            for i in 0..v.count {
                let phi = random_module(&ctx, v.r, &mut rng);
                verify_module(&phi, &format!("instance {i}"), &mut rng, &mut tally);
            }
        });
        let params = format!("q={} d={} r={} seed={} count={}", v.q, v.d, v.r, v.seed, v.count);
        (digest(&[params.as_bytes()]), counts)
    };
    let result = json!({
        "instances": tally.instances,
        "checks": tally.checks,
        "failures": tally.failures,
    });
    let summary =
        format!("{} instances, {} checks, {} failures", tally.instances, tally.checks, tally.failures.len());
    RunReport::new("verify", digest_hex, result, counts, start.elapsed()).emit(&summary);
    if tally.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(tally.failures.join("; ")))
    }
}
