use proptest::prelude::*;

use semirad::inequalities::{check_entry, lookup, scalar_sup_grid, Ctx, Verdict};
use semirad::instance::InstanceFile;
use semirad::instancegen::{
    gen_a_normal, gen_a_positive, gen_a_selfadjoint, gen_compatible, gen_compatible_second,
    gen_space, GenConfig,
};
use semirad::linalg::{
    hermitian_eig, inner, op_norm_2, psd_functions, ComplexMatrix, TolerancePolicy, C64,
};
use semirad::radii::{
    joint_radius_a, mc_oracle, omega_a, op_seminorm_a, McConfig, Quantity, RadiusEstimate,
};
use semirad::report::Report;
use semirad::semihilbert::SemiHilbertSpace;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
        ComplexMatrix::new(n, v.into_iter().map(|(re, im)| C64::new(re, im)).collect()).unwrap()
    })
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n).prop_map(|m| m.hermitian_part())
}

/// `(dim, rank, seed)` with rank-deficient weights half the time.
fn gen_config() -> impl Strategy<Value = GenConfig> {
    (2usize..=5, any::<bool>(), 0u64..1_000_000).prop_flat_map(|(dim, full, seed)| {
        let ranks = if full { dim..=dim } else { 1..=dim - 1 };
        ranks.prop_map(move |rank| GenConfig::new(dim, rank, seed))
    })
}

fn space(cfg: &GenConfig) -> SemiHilbertSpace {
    gen_space(cfg, TolerancePolicy::default()).unwrap()
}

fn close(a: &RadiusEstimate, b: &RadiusEstimate, tol: f64) -> bool {
    (a.mid() - b.mid()).abs() <= tol + 0.5 * (a.width() + b.width())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rayleigh_quotients_lie_between_extreme_eigenvalues(
        m in hermitian(4),
        u in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4),
    ) {
        let u: Vec<C64> = u.into_iter().map(|(a, b)| C64::new(a, b)).collect();
        let n2 = inner(&u, &u).re;
        prop_assume!(n2 > 1e-6);
        let e = hermitian_eig(&m).unwrap();
        let q = m.quadratic_form(&u).re / n2;
        prop_assert!(e.values[3] - 1e-10 <= q && q <= e.values[0] + 1e-10);
        let again = hermitian_eig(&m).unwrap();
        prop_assert_eq!(e.values, again.values);
    }

    #[test]
    fn projection_onto_range_is_idempotent(cfg in gen_config()) {
        let sp = space(&cfg);
        let tol = TolerancePolicy::default();
        let f = psd_functions(&hermitian_eig(sp.a()).unwrap(), &tol).unwrap();
        prop_assert_eq!(f.rank, cfg.rank);
        prop_assert!((&(&f.proj * &f.proj) - &f.proj).frobenius_norm() < 1e-10);
    }

    #[test]
    fn spectral_norm_is_submultiplicative(m in matrix(3), n in matrix(3)) {
        let mn = op_norm_2(&(&m * &n)).unwrap();
        prop_assert!(mn <= op_norm_2(&m).unwrap() * op_norm_2(&n).unwrap() + 1e-9);
    }

    #[test]
    fn compatibility_is_null_space_invariance(cfg in gen_config(), leak in 1e-3f64..1.0) {
        prop_assume!(cfg.rank < cfg.dim);
        let sp = space(&cfg);
        let t = gen_compatible(&sp, &cfg).unwrap();
        prop_assert!(t.is_compatible());
        // add leak · v w* with v in range(A) and w in null(A)
        let q = &sp.eig().vectors;
        let v = q.column(0);
        let w = q.column(cfg.dim - 1);
        let bump = ComplexMatrix::from_fn(cfg.dim, |i, j| v[i] * w[j].conj() * leak);
        prop_assert!(!sp.is_compatible(&(t.matrix() + &bump)));
    }

    #[test]
    fn adjoint_algebra(cfg in gen_config()) {
        let sp = space(&cfg);
        let t = gen_compatible(&sp, &cfg).unwrap();
        let s = gen_compatible_second(&sp, &cfg).unwrap();
        let ts_sharp = t.mul(&s).unwrap().sharp().unwrap();
        let s_sharp_t_sharp = s.sharp().unwrap().mul(&t.sharp().unwrap()).unwrap();
        let scale = 1.0 + ts_sharp.matrix().frobenius_norm();
        prop_assert!(ts_sharp.matrix().max_abs_diff(s_sharp_t_sharp.matrix()) <= 1e-9 * scale);

        let tt = t.sharp().unwrap().mul(&t).unwrap();
        let tt_sharp = tt.sharp().unwrap();
        prop_assert!(tt_sharp.matrix().max_abs_diff(tt.matrix()) <= 1e-9 * (1.0 + tt.matrix().frobenius_norm()));

        let h = gen_a_selfadjoint(&sp, &cfg).unwrap();
        let hs = h.sharp().unwrap();
        let hss = hs.sharp().unwrap();
        prop_assert!(hss.matrix().max_abs_diff(hs.matrix()) <= 1e-9 * (1.0 + hs.matrix().frobenius_norm()));
    }

    #[test]
    fn seminorm_identities(cfg in gen_config()) {
        let sp = space(&cfg);
        let tol = 2.0 * sp.tol().sweep_tol;
        let t = gen_compatible(&sp, &cfg).unwrap();
        let ts = t.sharp().unwrap();
        let norm = op_seminorm_a(&t).unwrap();
        prop_assert!(close(&op_seminorm_a(&ts).unwrap(), &norm, tol));
        let sq = norm.mid() * norm.mid();
        let tst = op_seminorm_a(&ts.mul(&t).unwrap()).unwrap();
        let tts = op_seminorm_a(&t.mul(&ts).unwrap()).unwrap();
        prop_assert!((tst.mid() - sq).abs() <= tol * (1.0 + sq));
        prop_assert!((tts.mid() - sq).abs() <= tol * (1.0 + sq));
    }

    #[test]
    fn omega_is_an_equivalent_seminorm(cfg in gen_config()) {
        let sp = space(&cfg);
        let tol = sp.tol().sweep_tol;
        let t = gen_compatible(&sp, &cfg).unwrap();
        let w = omega_a(&t).unwrap();
        let n = op_seminorm_a(&t).unwrap();
        prop_assert!(0.5 * n.lo - tol <= w.hi);
        prop_assert!(w.lo <= n.hi + tol);
    }

    #[test]
    fn selfadjoint_and_normal_operators_attain_the_norm(cfg in gen_config()) {
        let sp = space(&cfg);
        let tol = 2.0 * sp.tol().sweep_tol;
        let h = gen_a_selfadjoint(&sp, &cfg).unwrap();
        prop_assert!(close(&omega_a(&h).unwrap(), &op_seminorm_a(&h).unwrap(), tol));
        let p = gen_a_positive(&sp, &cfg).unwrap();
        let n1 = op_seminorm_a(&p).unwrap().mid();
        for k in [2, 3] {
            let nk = op_seminorm_a(&p.pow(k)).unwrap().mid();
            prop_assert!((nk - n1.powi(k as i32)).abs() <= 1e-6 * (1.0 + nk));
        }
        let nt = gen_a_normal(&sp, &cfg).unwrap();
        let w = omega_a(&nt).unwrap().mid();
        let w2 = omega_a(&nt.pow(2)).unwrap().mid();
        let nn = op_seminorm_a(&nt).unwrap().mid();
        prop_assert!((w2 - w * w).abs() <= 1e-6 * (1.0 + w2));
        prop_assert!((w * w - nn * nn).abs() <= 1e-6 * (1.0 + w * w));
    }

    #[test]
    fn omega_equals_joint_radius_of_cartesian_parts(cfg in gen_config()) {
        let sp = space(&cfg);
        let t = gen_compatible(&sp, &cfg).unwrap();
        let (re, im) = t.re_im().unwrap();
        let j = joint_radius_a(&re.sharp().unwrap(), &im.sharp().unwrap()).unwrap();
        prop_assert!(close(&omega_a(&t).unwrap(), &j, 2.0 * sp.tol().sweep_tol));
    }

    #[test]
    fn radii_are_homogeneous(cfg in gen_config(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let c = C64::new(re, im);
        prop_assume!(c.norm() > 1e-3);
        let sp = space(&cfg);
        let t = gen_compatible(&sp, &cfg).unwrap();
        let s = gen_compatible_second(&sp, &cfg).unwrap();
        let tol = sp.tol().sweep_tol;
        let w = omega_a(&t).unwrap();
        let wc = omega_a(&t.scale(c)).unwrap();
        prop_assert!((wc.mid() - c.norm() * w.mid()).abs() <= tol * (1.0 + c.norm()) + 0.5 * (wc.width() + c.norm() * w.width()));
        let j = joint_radius_a(&t, &s).unwrap();
        let jc = joint_radius_a(&t.scale(c), &s.scale(c)).unwrap();
        prop_assert!((jc.mid() - c.norm() * j.mid()).abs() <= tol * (1.0 + c.norm()) + 0.5 * (jc.width() + c.norm() * j.width()));
    }

    #[test]
    fn sampled_values_never_exceed_upper_ends(cfg in gen_config()) {
        let sp = space(&cfg);
        let t = gen_compatible(&sp, &cfg).unwrap();
        let s = gen_compatible_second(&sp, &cfg).unwrap();
        let mc = McConfig { samples: 2_000, seed: cfg.seed, polish: false };
        prop_assert!(mc_oracle(Quantity::Omega, &[&t], &mc).unwrap() <= omega_a(&t).unwrap().hi + 1e-9);
        prop_assert!(mc_oracle(Quantity::Norm, &[&t], &mc).unwrap() <= op_seminorm_a(&t).unwrap().hi + 1e-9);
        prop_assert!(mc_oracle(Quantity::Joint, &[&t, &s], &mc).unwrap() <= joint_radius_a(&t, &s).unwrap().hi + 1e-9);
    }

    #[test]
    fn chain_terms_are_monotone(cfg in gen_config()) {
        let sp = space(&cfg);
        let t = gen_compatible(&sp, &cfg).unwrap();
        let s = gen_compatible_second(&sp, &cfg).unwrap();
        let mut ctx = Ctx::new(t, Some(s)).unwrap();
        let out = check_entry(lookup("M1").unwrap(), &mut ctx).unwrap();
        prop_assert_eq!(out.parts.len(), 3);
        for p in &out.parts {
            prop_assert_eq!(p.verdict, Verdict::Holds, "{}", p.label);
        }
    }

    #[test]
    fn generators_are_deterministic(cfg in gen_config()) {
        let a = space(&cfg);
        let b = space(&cfg);
        prop_assert_eq!(a.a(), b.a());
        let ta = gen_compatible(&a, &cfg).unwrap();
        let tb = gen_compatible(&b, &cfg).unwrap();
        prop_assert_eq!(ta.matrix(), tb.matrix());
        prop_assert!(gen_a_selfadjoint(&a, &cfg).unwrap().predicates().is_a_selfadjoint);
        prop_assert!(gen_a_positive(&a, &cfg).unwrap().predicates().is_a_positive);
        prop_assert!(gen_a_normal(&a, &cfg).unwrap().predicates().is_a_normal);
    }

    #[test]
    fn instance_files_round_trip(cfg in gen_config()) {
        let sp = space(&cfg);
        let t = gen_compatible(&sp, &cfg).unwrap();
        let file = InstanceFile::from_matrices(sp.a(), t.matrix(), None);
        let back = InstanceFile::parse(&serde_json::to_string(&file).unwrap()).unwrap();
        prop_assert_eq!(&back, &file);
        let inst = back.validate(TolerancePolicy::default()).unwrap();
        prop_assert_eq!(&inst.t, t.matrix());
    }

    #[test]
    fn report_floats_round_trip(x in any::<f64>(), y in -1e300f64..1e300) {
        let mut r = Report::new(vec!["fuzz".into()]);
        r.wall_time_s = y;
        r.warnings.push(format!("{x}"));
        let text = r.to_json();
        prop_assert_eq!(Report::from_json(&text).unwrap().to_json(), text.clone());
        prop_assert_eq!(Report::from_json(&text).unwrap().wall_time_s, y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn scalar_grid_approaches_the_sum_of_squares(
        z1 in (-3.0f64..3.0, -3.0f64..3.0),
        z2 in (-3.0f64..3.0, -3.0f64..3.0),
    ) {
        let (z1, z2) = (C64::new(z1.0, z1.1), C64::new(z2.0, z2.1));
        let exact = z1.norm_sqr() + z2.norm_sqr();
        let grid = scalar_sup_grid(z1, z2, 100);
        prop_assert!(grid <= exact + 1e-9);
        prop_assert!(exact - grid <= 1e-3 * exact.max(1.0));
    }
}
