use std::sync::Arc;

use drinfeld::drinfeld::{
    chain_gcd, module_of_points_invariants, morphism_kernel_invariants, morphism_kernel_trace,
    torsion_direct, torsion_from_points, Morphism,
};
use drinfeld::gf::FieldCtx;
use drinfeld::instances::{random_module, random_morphism, random_poly, MorphismKind};
use drinfeld::linalg::{frobenius_normal_form, smith_normal_form, MatPoly};
use drinfeld::meval::{ore_matrix, MatrixMethod};
use drinfeld::motive::{is_torsion_rational, max_rational_p_power, rational_lcm};
use drinfeld::oracle::kernel_elements;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(q_pick: usize, d: usize) -> Arc<FieldCtx> {
    let q = [2, 3, 4, 5][q_pick];
    let d = if q >= 4 { d.min(4) } else { d };
    Arc::new(FieldCtx::standard(q, d).unwrap())
}

fn kind(k: usize) -> MorphismKind {
    [MorphismKind::Zero, MorphismKind::Endomorphism, MorphismKind::Isogeny][k]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_structure_counts(seed in any::<u64>(), qp in 0usize..4, d in 1usize..7, r in 1usize..5, k in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = field(qp, d);
        let phi = random_module(&ctx, r, &mut rng);
        let m = random_morphism(&phi, kind(k), &mut rng);
        let s = morphism_kernel_invariants(&m).unwrap();
        let pr = phi.poly_ring();
        prop_assert!(s.factors.iter().all(|f| pr.is_monic(f) && f.degree().unwrap() >= 1));
        prop_assert!(s.factors.windows(2).all(|w| pr.divides(&w[0], &w[1])));
        let size = kernel_elements(&ctx, m.u()).unwrap().len() as u64;
        prop_assert_eq!(ctx.base_order().pow(s.dimension() as u32), size);
        for (f, x) in s.factors.iter().zip(&s.generators) {
            prop_assert!(phi.act(f, x).is_zero());
        }
    }

    #[test]
    fn matrix_methods_agree(seed in any::<u64>(), qp in 0usize..4, d in 1usize..9, r in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = field(qp, d);
        let phi = random_module(&ctx, r, &mut rng);
        let m = random_morphism(&phi, kind(rng.gen_range(0..3)), &mut rng);
        prop_assert_eq!(
            ore_matrix(&ctx, m.u(), MatrixMethod::Naive),
            ore_matrix(&ctx, m.u(), MatrixMethod::Multipoint)
        );
        let a = morphism_kernel_trace(&m, MatrixMethod::Naive).unwrap().structure;
        let b = morphism_kernel_trace(&m, MatrixMethod::Multipoint).unwrap().structure;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn induced_action_is_similar_to_companion(seed in any::<u64>(), qp in 0usize..4, d in 1usize..7, r in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = field(qp, d);
        let fq = ctx.fq();
        let phi = random_module(&ctx, r, &mut rng);
        let trace = morphism_kernel_trace(&Morphism::zero(&phi), MatrixMethod::Multipoint).unwrap();
        let form = frobenius_normal_form(&trace.x, fq);
        let s = &form.transform;
        let s_inv = s.inverse(fq).unwrap();
        prop_assert_eq!(s_inv.mul(&trace.x.mul(s, fq), fq), form.block_companion(fq));
        let smith = smith_normal_form(&MatPoly::char_matrix(&trace.x, fq), fq);
        prop_assert_eq!(smith.nonconstant(), form.blocks);
    }

    #[test]
    fn torsion_strategies_agree(seed in any::<u64>(), qp in 0usize..4, d in 1usize..7, r in 1usize..5, deg in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = field(qp, d);
        let phi = random_module(&ctx, r, &mut rng);
        let a = random_poly(ctx.fq(), deg, &mut rng);
        prop_assume!(!a.is_zero());
        let pts = module_of_points_invariants(&phi).unwrap();
        let derived = torsion_from_points(&phi, &a, &pts).unwrap();
        prop_assert_eq!(&torsion_direct(&phi, &a).unwrap().factors, &derived.factors);
        let (gammas, rhos) = chain_gcd(ctx.fq(), &a, &pts.factors).unwrap();
        let pr = phi.poly_ring();
        for ((g, rho), d_i) in gammas.iter().zip(&rhos).zip(&pts.factors) {
            prop_assert_eq!(&pr.mul(g, rho), d_i);
        }
    }

    #[test]
    fn rationality_is_consistent(seed in any::<u64>(), qp in 0usize..2, d in 1usize..5, r in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = field(qp, d);
        let phi = random_module(&ctx, r, &mut rng);
        let g = rational_lcm(&phi);
        let pr = phi.poly_ring();
        prop_assert!(is_torsion_rational(&phi, &g).unwrap());
        prop_assert!(pr.gcd(&g, phi.char_p()).unwrap().is_unit());
        let pts = module_of_points_invariants(&phi).unwrap();
        let pp = max_rational_p_power(&phi, &pts).unwrap();
        prop_assert!(pp.s <= pp.v);
        prop_assert!(is_torsion_rational(&phi, &pr.pow(phi.char_p(), pp.s)).unwrap());
    }
}
