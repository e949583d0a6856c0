use super::*;
use crate::semihilbert::SemiHilbertSpace;
use rand::Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn jordan(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| if j == i + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

fn gaussian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

fn contains(e: &RadiusEstimate, v: f64, slack: f64) -> bool {
    e.lo - slack <= v && v <= e.hi + slack
}

fn rank_one_space() -> SemiHilbertSpace {
    SemiHilbertSpace::new(
        ComplexMatrix::from_real_diag(&[1.0, 0.0]),
        TolerancePolicy::default(),
    )
    .unwrap()
}

#[test]
fn classical_radius_known_values() {
    let tol = TolerancePolicy::default();
    let e = classical_numerical_radius(&ComplexMatrix::identity(3), &tol).unwrap();
    assert!(contains(&e, 1.0, 1e-12) && e.width() <= tol.sweep_tol);

    let e = classical_numerical_radius(&jordan(2), &tol).unwrap();
    assert!(contains(&e, 0.5, 1e-12), "{e:?}");
    assert!(e.width() <= tol.sweep_tol);

    let e = classical_numerical_radius(&jordan(4), &tol).unwrap();
    let want = (std::f64::consts::PI / 5.0).cos();
    assert!(contains(&e, want, 1e-12), "{e:?}");
    assert!(e.width() <= tol.sweep_tol);
    assert_eq!(e.method, Method::Sweep);

    let z = classical_numerical_radius(&ComplexMatrix::zeros(2), &tol).unwrap();
    assert_eq!((z.lo, z.hi), (0.0, 0.0));
}

#[test]
fn rank_deficient_seminorm_and_radius() {
    let sp = rank_one_space();
    let t = sp
        .operator(ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[5.0, 3.0]]))
        .unwrap();
    let n = op_seminorm_a(&t).unwrap();
    assert!(contains(&n, 2.0, 1e-12) && n.width() < 1e-11);
    assert_eq!(n.method, Method::ClosedForm);
    let w = omega_a(&t).unwrap();
    assert!(contains(&w, 2.0, 1e-12) && w.width() <= 1e-6);
}

#[test]
fn crawford_examples() {
    let sp = SemiHilbertSpace::identity(2);
    let t = sp
        .operator(ComplexMatrix::from_real_diag(&[1.0, 2.0]))
        .unwrap();
    let e = crawford_a(&t).unwrap();
    assert!(contains(&e, 1.0, 1e-12) && e.width() <= 1e-6, "{e:?}");
    let t = sp
        .operator(ComplexMatrix::from_real_diag(&[1.0, -1.0]))
        .unwrap();
    let e = crawford_a(&t).unwrap();
    assert_eq!((e.lo, e.hi), (0.0, 0.0));
    // a disk of radius 1/2 centred at 2: distance 3/2
    let t = sp
        .operator(&ComplexMatrix::identity(2).scale_re(2.0) + &jordan(2))
        .unwrap();
    let e = crawford_a(&t).unwrap();
    assert!(contains(&e, 1.5, 1e-12) && e.width() <= 1e-6, "{e:?}");
}

#[test]
fn joint_radius_examples() {
    let sp = SemiHilbertSpace::identity(2);
    let i = sp.operator(ComplexMatrix::identity(2)).unwrap();
    let zero = sp.operator(ComplexMatrix::zeros(2)).unwrap();
    let e = joint_radius_a(&i, &zero).unwrap();
    assert!(contains(&e, 1.0, 1e-12) && e.width() <= 1e-6, "{e:?}");

    let x = sp
        .operator(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]))
        .unwrap();
    let z = sp
        .operator(ComplexMatrix::from_real_diag(&[1.0, -1.0]))
        .unwrap();
    let e = joint_radius_a(&x, &z).unwrap();
    assert!(contains(&e, 1.0, 1e-12) && e.width() <= 1e-6, "{e:?}");
    assert_eq!(e.method, Method::Sweep2d);

    let j = sp.operator(jordan(2)).unwrap();
    let e = joint_radius_a(&j, &j).unwrap();
    assert!(
        contains(&e, 0.5 * 2f64.sqrt(), 1e-12) && e.width() <= 1e-6,
        "{e:?}"
    );
}

#[test]
fn joint_radius_is_symmetric_and_doubles() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let sp = SemiHilbertSpace::identity(3);
    let t = sp.operator(gaussian(3, &mut rng)).unwrap();
    let s = sp.operator(gaussian(3, &mut rng)).unwrap();
    let ts = joint_radius_a(&t, &s).unwrap();
    let st = joint_radius_a(&s, &t).unwrap();
    assert!(ts.lo <= st.hi && st.lo <= ts.hi);
    let tt = joint_radius_a(&t, &t).unwrap();
    let w = omega_a(&t).unwrap();
    let r2 = 2f64.sqrt();
    assert!(tt.lo <= r2 * w.hi + 1e-12 && r2 * w.lo <= tt.hi + 1e-12);
}

#[test]
fn tuple_radius() {
    let sp = SemiHilbertSpace::identity(2);
    let i = sp.operator(ComplexMatrix::identity(2)).unwrap();
    let zero = sp.operator(ComplexMatrix::zeros(2)).unwrap();
    let e = joint_radius_tuple(&[&i, &zero, &zero]).unwrap();
    assert!((e.lo - 1.0).abs() < 1e-12 && e.method == Method::Mc);
    let single = joint_radius_tuple(&[&i]).unwrap();
    assert!(contains(&single, 1.0, 0.0));
    assert_eq!(
        joint_radius_tuple(&[&i, &i, &i, &i]).unwrap_err(),
        Error::UnsupportedArity(4)
    );
}

#[test]
fn davis_wielandt_examples() {
    let sp = SemiHilbertSpace::identity(2);
    let i = sp.operator(ComplexMatrix::identity(2)).unwrap();
    let e = dw_radius_a(&i).unwrap();
    assert!(
        contains(&e, 2f64.sqrt(), 1e-12) && e.width() <= 1e-6,
        "{e:?}"
    );
    let fine = TolerancePolicy {
        sweep_tol: 1e-10,
        ..Default::default()
    };
    let sp_fine = SemiHilbertSpace::new(ComplexMatrix::identity(2), fine).unwrap();
    let i = sp_fine.operator(ComplexMatrix::identity(2)).unwrap();
    let e = dw_radius_a(&i).unwrap();
    assert!(
        contains(&e, 2f64.sqrt(), 1e-12) && e.width() <= 1e-9,
        "{e:?}"
    );
    let j = sp.operator(jordan(2)).unwrap();
    let e = dw_radius_a(&j).unwrap();
    assert!(contains(&e, 1.0, 1e-12) && e.width() <= 1e-6, "{e:?}");
}

#[test]
fn inf_gap_vanishes() {
    let sp = SemiHilbertSpace::identity(2);
    let normal = sp
        .operator(ComplexMatrix::from_diag(&[c(1.0, 2.0), c(-3.0, 0.5)]))
        .unwrap();
    assert!(inf_gap_a(&normal).unwrap().hi < 1e-24);
    let t = sp
        .operator(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[2.0, 0.0]]))
        .unwrap();
    let e = inf_gap_a(&t).unwrap();
    assert_eq!(e.lo, 0.0);
    assert!(e.hi < 1e-24, "{e:?}");
}

#[test]
fn inf_gap_witness_is_feasible_and_stationary() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for rank in 1..=4 {
        let g = ComplexMatrix::from_fn(4, |_, j| {
            if j < rank {
                c(rng.sample(StandardNormal), rng.sample(StandardNormal))
            } else {
                c(0.0, 0.0)
            }
        });
        let sp = SemiHilbertSpace::new(&g * &g.adjoint(), TolerancePolicy::default()).unwrap();
        let b = gaussian(rank, &mut rng);
        let t = AOperator::from_block(&sp, &b).unwrap();
        let (e, x) = inf_gap_point(&t).unwrap();
        assert!((sp.seminorm(&x).unwrap() - 1.0).abs() < 1e-9);
        let f = |x: &[C64]| {
            let tx = t.matrix().mat_vec(x);
            let sx = t.sharp().unwrap().matrix().mat_vec(x);
            let nx = sp.seminorm(x).unwrap();
            (sp.seminorm(&tx).unwrap() / nx - sp.seminorm(&sx).unwrap() / nx).powi(2)
        };
        assert!((f(&x) - e.hi).abs() < 1e-9);
        // central differences of the scale-invariant objective
        let h = 1e-6;
        let mut grad2 = 0.0;
        for i in 0..4 {
            for dir in [c(1.0, 0.0), c(0.0, 1.0)] {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[i] += dir * h;
                xm[i] -= dir * h;
                grad2 += ((f(&xp) - f(&xm)) / (2.0 * h)).powi(2);
            }
        }
        assert!(grad2.sqrt() <= 1e-6, "gradient {}", grad2.sqrt());
    }
}

#[test]
fn incompatible_operator_is_rejected_everywhere() {
    let sp = rank_one_space();
    let t = sp
        .operator(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]))
        .unwrap();
    let ok = sp.operator(ComplexMatrix::identity(2)).unwrap();
    assert_eq!(op_seminorm_a(&t).unwrap_err(), Error::NotCompatible);
    assert_eq!(omega_a(&t).unwrap_err(), Error::NotCompatible);
    assert_eq!(crawford_a(&t).unwrap_err(), Error::NotCompatible);
    assert_eq!(joint_radius_a(&t, &ok).unwrap_err(), Error::NotCompatible);
    assert_eq!(joint_radius_a(&ok, &t).unwrap_err(), Error::NotCompatible);
    assert_eq!(
        joint_radius_tuple(&[&ok, &ok, &t]).unwrap_err(),
        Error::NotCompatible
    );
    assert_eq!(dw_radius_a(&t).unwrap_err(), Error::NotCompatible);
    assert_eq!(inf_gap_a(&t).unwrap_err(), Error::NotCompatible);
    let cfg = McConfig::default();
    assert_eq!(
        mc_oracle(Quantity::Omega, &[&t], &cfg).unwrap_err(),
        Error::NotCompatible
    );
}

#[test]
fn mc_oracle_examples() {
    let sp = SemiHilbertSpace::identity(2);
    let i = sp.operator(ComplexMatrix::identity(2)).unwrap();
    for seed in [0, 1, 99] {
        let cfg = McConfig {
            samples: 1000,
            seed,
            polish: false,
        };
        let v = mc_oracle(Quantity::Omega, &[&i], &cfg).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }
    let j = sp.operator(jordan(2)).unwrap();
    let cfg = McConfig {
        samples: 1_000_000,
        seed: 5,
        polish: false,
    };
    let v = mc_oracle(Quantity::Omega, &[&j], &cfg).unwrap();
    assert!((0.499..=0.5 + 1e-12).contains(&v), "{v}");
    let again = mc_oracle(Quantity::Omega, &[&j], &cfg).unwrap();
    assert_eq!(v, again);
    let bad = McConfig { samples: 0, ..cfg };
    assert!(mc_oracle(Quantity::Omega, &[&j], &bad).is_err());
}

#[test]
fn sweep_widths_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for n in 2..=8 {
        let sp = SemiHilbertSpace::identity(n);
        let t = sp.operator(gaussian(n, &mut rng)).unwrap();
        let s = sp.operator(gaussian(n, &mut rng)).unwrap();
        let tol = sp.tol().sweep_tol;
        for e in [
            omega_a(&t).unwrap(),
            crawford_a(&t).unwrap(),
            joint_radius_a(&t, &s).unwrap(),
            dw_radius_a(&t).unwrap(),
        ] {
            assert!(e.lo <= e.hi && e.lo >= 0.0, "{e:?}");
            assert!(e.width() <= tol, "n={n}: {e:?}");
        }
    }
}
