//! Seeded random instances: PSD weights of prescribed rank and operators that
//! are compatible, A-selfadjoint, A-positive or A-normal by construction, plus
//! the constructors for equality cases of the registered bounds.
//!
//! Every draw comes from a ChaCha8 generator keyed by `(seed, stream, purpose)`,
//! so instances are reproducible and independent of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, jacobi, psd_functions, ComplexMatrix, TolerancePolicy, C64};
use crate::semihilbert::{AOperator, SemiHilbertSpace};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub dim: usize,
    pub rank: usize,
    pub seed: u64,
    pub scale: f64,
    /// Independent substream, e.g. a trial index.
    pub stream: u64,
}

impl GenConfig {
    pub fn new(dim: usize, rank: usize, seed: u64) -> Self {
        Self {
            dim,
            rank,
            seed,
            scale: 1.0,
            stream: 0,
        }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        Self { stream, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=8).contains(&self.dim) {
            return Err(Error::InvalidConfig(format!(
                "dim must be in 2..=8, got {}",
                self.dim
            )));
        }
        if self.rank == 0 || self.rank > self.dim {
            return Err(Error::InvalidConfig(format!(
                "rank must be in 1..={}, got {}",
                self.dim, self.rank
            )));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidConfig(
                "scale must be finite and positive".into(),
            ));
        }
        Ok(())
    }

    fn rng(&self, purpose: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream.wrapping_mul(64).wrapping_add(purpose));
        rng
    }
}

const PSD: u64 = 0;
const COMPATIBLE: u64 = 1;
const SELFADJOINT: u64 = 2;
const NORMAL: u64 = 3;
const SECOND: u64 = 4;
const SELFADJOINT_SECOND: u64 = 5;
const NULL_BLOCK: u64 = 32;

fn gaussian(n: usize, cols: usize, scale: f64, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, j| {
        if j < cols {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * scale
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `A = G G*` with `G` an n×rank complex Gaussian; redrawn until the numerical
/// rank is exactly `cfg.rank`.
pub fn gen_psd(cfg: &GenConfig) -> Result<ComplexMatrix> {
    cfg.validate()?;
    let tol = TolerancePolicy::default();
    let mut rng = cfg.rng(PSD);
    loop {
        let g = gaussian(cfg.dim, cfg.rank, cfg.scale, &mut rng);
        let a = (&g * &g.adjoint()).hermitian_part();
        let eig = hermitian_eig(&a)?;
        if psd_functions(&eig, &tol).is_ok_and(|f| f.rank == cfg.rank) {
            return Ok(a);
        }
    }
}

pub fn gen_space(cfg: &GenConfig, tol: TolerancePolicy) -> Result<SemiHilbertSpace> {
    SemiHilbertSpace::new(gen_psd(cfg)?, tol)
}

/// `(I − P) K (I − P)`: acts only on `null(A)` and stays there.
fn null_block(sp: &SemiHilbertSpace, cfg: &GenConfig, purpose: u64) -> ComplexMatrix {
    let n = sp.dim();
    let k = gaussian(n, n, cfg.scale, &mut cfg.rng(purpose));
    let q = &ComplexMatrix::identity(n) - sp.proj_range();
    &(&q * &k) * &q
}

/// `A^{†1/2} M A^{1/2}`, which acts as `P M P` after compression.
fn through_range(sp: &SemiHilbertSpace, m: &ComplexMatrix) -> ComplexMatrix {
    &(sp.pinv_sqrt_a() * m) * sp.sqrt_a()
}

fn wrap<'a>(
    sp: &'a SemiHilbertSpace,
    m: ComplexMatrix,
    cfg: &GenConfig,
    purpose: u64,
) -> Result<AOperator<'a>> {
    let m = &m + &null_block(sp, cfg, NULL_BLOCK + purpose);
    sp.operator(m)
}

/// `T = A^{†1/2} G A^{1/2} + (I − P) K (I − P)`; keeps `null(A)` invariant.
pub fn gen_compatible<'a>(sp: &'a SemiHilbertSpace, cfg: &GenConfig) -> Result<AOperator<'a>> {
    gen_compatible_with(sp, cfg, COMPATIBLE)
}

/// A second, independent compatible operator for two-operator statements.
pub fn gen_compatible_second<'a>(
    sp: &'a SemiHilbertSpace,
    cfg: &GenConfig,
) -> Result<AOperator<'a>> {
    gen_compatible_with(sp, cfg, SECOND)
}

fn gen_compatible_with<'a>(
    sp: &'a SemiHilbertSpace,
    cfg: &GenConfig,
    purpose: u64,
) -> Result<AOperator<'a>> {
    let n = sp.dim();
    let g = gaussian(n, n, cfg.scale, &mut cfg.rng(purpose));
    wrap(sp, through_range(sp, &g), cfg, purpose)
}

/// `T = A^{†1/2} H A^{1/2} + null block` with `H = P·herm(G)·P`, so `AT` is Hermitian.
pub fn gen_a_selfadjoint<'a>(sp: &'a SemiHilbertSpace, cfg: &GenConfig) -> Result<AOperator<'a>> {
    gen_a_selfadjoint_with(sp, cfg, SELFADJOINT)
}

/// A second, independent A-selfadjoint operator.
pub fn gen_a_selfadjoint_second<'a>(
    sp: &'a SemiHilbertSpace,
    cfg: &GenConfig,
) -> Result<AOperator<'a>> {
    gen_a_selfadjoint_with(sp, cfg, SELFADJOINT_SECOND)
}

fn gen_a_selfadjoint_with<'a>(
    sp: &'a SemiHilbertSpace,
    cfg: &GenConfig,
    purpose: u64,
) -> Result<AOperator<'a>> {
    let n = sp.dim();
    let g = gaussian(n, n, cfg.scale, &mut cfg.rng(purpose));
    let p = sp.proj_range();
    let h = &(p * &g.hermitian_part()) * p;
    wrap(sp, through_range(sp, &h), cfg, purpose)
}

/// As [`gen_a_selfadjoint`] with `H = P G G* P`, so `AT ≥ 0`.
pub fn gen_a_positive<'a>(sp: &'a SemiHilbertSpace, cfg: &GenConfig) -> Result<AOperator<'a>> {
    let n = sp.dim();
    let g = gaussian(n, n, cfg.scale, &mut cfg.rng(SELFADJOINT + 16));
    let p = sp.proj_range();
    let h = &(&(p * &g) * &g.adjoint()) * p;
    wrap(
        sp,
        through_range(sp, &h.hermitian_part()),
        cfg,
        SELFADJOINT + 16,
    )
}

/// An operator whose range block is `W diag(z) W*` with `W` unitary, hence A-normal.
pub fn gen_a_normal<'a>(sp: &'a SemiHilbertSpace, cfg: &GenConfig) -> Result<AOperator<'a>> {
    let r = sp.rank();
    let mut rng = cfg.rng(NORMAL);
    let w = jacobi(gaussian(r, r, 1.0, &mut rng).hermitian_part()).vectors;
    let z: Vec<C64> = (0..r)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * cfg.scale)
        .collect();
    let block = &(&w * &ComplexMatrix::from_diag(&z)) * &w.adjoint();
    let core = AOperator::from_block(sp, &block)?;
    wrap(sp, core.matrix().clone(), cfg, NORMAL)
}

/// Equality cases for registered bounds: which entry (and which part of it)
/// a constructed instance should make tight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharpnessCase {
    pub id: &'static str,
    pub targets: &'static [Target],
    pub description: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Target {
    pub entry: &'static str,
    /// Part label within the entry; `None` means every part.
    pub part: Option<&'static str>,
}

pub const SHARPNESS_CASES: &[SharpnessCase] = &[
    SharpnessCase {
        id: "twil",
        targets: &[Target {
            entry: "M6",
            part: None,
        }],
        description: "T = S♯ with S A-selfadjoint; both sides equal ‖S‖_A",
    },
    SharpnessCase {
        id: "mai10",
        targets: &[Target {
            entry: "M8",
            part: None,
        }],
        description: "T = S = X♯ with X A-selfadjoint; both sides equal √2‖X♯‖_A",
    },
    SharpnessCase {
        id: "thnew",
        targets: &[Target {
            entry: "M16",
            part: None,
        }],
        description: "T = S; all three terms equal √2·ω_A(T)",
    },
    SharpnessCase {
        id: "fffeki1_upper",
        targets: &[Target {
            entry: "M19",
            part: Some("upper"),
        }],
        description: "A-normal T; ω_A(T) = ‖T‖_A meets the upper bound",
    },
    SharpnessCase {
        id: "fffeki1_lower",
        targets: &[Target {
            entry: "M19",
            part: Some("lower"),
        }],
        description: "A = I, T the 2×2 nilpotent Jordan block; ω = 1/2 meets the lower bound",
    },
    SharpnessCase {
        id: "sharpmai",
        targets: &[Target {
            entry: "M9",
            part: None,
        }],
        description: "A-normal T; the constant √2/2 is attained",
    },
    SharpnessCase {
        id: "nor1",
        targets: &[
            Target {
                entry: "M7c",
                part: None,
            },
            Target {
                entry: "I4",
                part: None,
            },
        ],
        description: "A-normal T; the corrected bound and ω_A(T²) = ω_A(T)² = ‖T‖_A² are tight",
    },
];

pub fn sharpness_case(id: &str) -> Result<&'static SharpnessCase> {
    SHARPNESS_CASES
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// A constructed instance, as plain matrices so it can outlive its space.
#[derive(Debug, Clone)]
pub struct Witness {
    pub a: ComplexMatrix,
    pub t: ComplexMatrix,
    pub s: Option<ComplexMatrix>,
}

pub fn sharpness_witness(case_id: &str, cfg: &GenConfig) -> Result<Witness> {
    sharpness_case(case_id)?;
    if case_id == "fffeki1_lower" {
        let t = ComplexMatrix::from_fn(2, |i, j| {
            C64::new(if i == 0 && j == 1 { 1.0 } else { 0.0 }, 0.0)
        });
        return Ok(Witness {
            a: ComplexMatrix::identity(2),
            t,
            s: None,
        });
    }
    let sp = gen_space(cfg, TolerancePolicy::default())?;
    let (t, s) = match case_id {
        "twil" => {
            let s = gen_a_selfadjoint(&sp, cfg)?;
            (s.sharp()?.matrix().clone(), None)
        }
        "mai10" => {
            let x = gen_a_selfadjoint(&sp, cfg)?;
            let t = x.sharp()?.matrix().clone();
            (t.clone(), Some(t))
        }
        "thnew" => {
            let t = gen_compatible(&sp, cfg)?.matrix().clone();
            (t.clone(), Some(t))
        }
        _ => (gen_a_normal(&sp, cfg)?.matrix().clone(), None),
    };
    Ok(Witness {
        a: sp.a().clone(),
        t,
        s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(dim: usize, rank: usize, seed: u64) -> GenConfig {
        GenConfig::new(dim, rank, seed)
    }

    #[test]
    fn psd_rank_and_determinism() {
        let tol = TolerancePolicy::default();
        let a = gen_psd(&cfg(2, 2, 3)).unwrap();
        assert!(hermitian_eig(&a).unwrap().min_value() > 0.0);
        let a = gen_psd(&cfg(3, 1, 3)).unwrap();
        let e = hermitian_eig(&a).unwrap();
        let cut = tol.rank_rtol * e.max_value();
        assert_eq!(e.values.iter().filter(|&&l| l <= cut).count(), 2);
        assert_eq!(
            gen_psd(&cfg(4, 2, 9)).unwrap(),
            gen_psd(&cfg(4, 2, 9)).unwrap()
        );
        assert_ne!(
            gen_psd(&cfg(4, 2, 9)).unwrap(),
            gen_psd(&cfg(4, 2, 9).with_stream(1)).unwrap()
        );
    }

    #[test]
    fn config_validation() {
        assert!(gen_psd(&cfg(1, 1, 0)).is_err());
        assert!(gen_psd(&cfg(9, 1, 0)).is_err());
        assert!(gen_psd(&cfg(3, 4, 0)).is_err());
        assert!(gen_psd(&cfg(3, 0, 0)).is_err());
        let bad = GenConfig {
            scale: -1.0,
            ..cfg(3, 3, 0)
        };
        assert!(gen_psd(&bad).is_err());
    }

    #[test]
    fn compatible_structure() {
        let sp = SemiHilbertSpace::identity(3);
        let c = cfg(3, 3, 1);
        let t = gen_compatible(&sp, &c).unwrap();
        assert!(t.is_compatible());

        let sp = SemiHilbertSpace::new(
            ComplexMatrix::from_real_diag(&[1.0, 0.0]),
            TolerancePolicy::default(),
        )
        .unwrap();
        let t = gen_compatible(&sp, &cfg(2, 1, 2)).unwrap();
        let st = sp.sqrt_a() * t.matrix();
        assert!(st[(0, 1)].norm() <= 1e-12);
        let q = &ComplexMatrix::identity(2) - sp.proj_range();
        let leak = &(&q * &t.matrix().adjoint()) * sp.a();
        assert!(leak.frobenius_norm() <= 1e-10);
    }

    #[test]
    fn generators_hold_their_predicates() {
        let grid = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 2), (4, 4), (5, 3)];
        for &(dim, rank) in &grid {
            for seed in 0..60 {
                let c = cfg(dim, rank, seed).with_stream(seed);
                let sp = gen_space(&c, TolerancePolicy::default()).unwrap();
                assert_eq!(sp.rank(), rank);
                assert!(gen_compatible(&sp, &c).unwrap().is_compatible());
                assert!(gen_compatible_second(&sp, &c).unwrap().is_compatible());
                let sa = gen_a_selfadjoint(&sp, &c).unwrap();
                assert!(sa.is_compatible() && sa.predicates().is_a_selfadjoint);
                let pos = gen_a_positive(&sp, &c).unwrap();
                assert!(pos.predicates().is_a_positive);
                let nrm = gen_a_normal(&sp, &c).unwrap();
                assert!(
                    nrm.is_compatible() && nrm.predicates().is_a_normal,
                    "{dim} {rank} {seed}"
                );
            }
        }
    }

    #[test]
    fn compression_of_compatible_is_projected_gaussian() {
        let c = cfg(4, 2, 17);
        let sp = gen_space(&c, TolerancePolicy::default()).unwrap();
        let t = gen_compatible(&sp, &c).unwrap();
        let g = gaussian(4, 4, 1.0, &mut c.rng(COMPATIBLE));
        let p = sp.proj_range();
        let want = &(p * &g) * p;
        assert!((&t.compress().unwrap() - &want).frobenius_norm() <= 1e-9 * want.frobenius_norm());
    }

    #[test]
    fn full_rank_compatible_is_plain_gaussian() {
        // E|z| for a standard complex Gaussian with unit-variance parts is √(π/2)
        let sp = SemiHilbertSpace::identity(2);
        let mut total = 0.0;
        let draws = 10_000;
        for s in 0..draws {
            let t = gen_compatible(&sp, &cfg(2, 2, 5).with_stream(s)).unwrap();
            total += t.matrix().data().iter().map(|z| z.norm()).sum::<f64>() / 4.0;
        }
        let mean = total / draws as f64;
        let want = (std::f64::consts::PI / 2.0).sqrt();
        assert!((mean - want).abs() <= 0.05 * want, "{mean}");
    }

    #[test]
    fn witnesses_construct() {
        for case in SHARPNESS_CASES {
            let w = sharpness_witness(case.id, &cfg(3, 2, 1)).unwrap();
            assert_eq!(w.t.dim(), w.a.dim());
        }
        assert_eq!(
            sharpness_witness("nope", &cfg(3, 2, 1)).unwrap_err(),
            Error::UnknownCase("nope".into())
        );
        let w = sharpness_witness("fffeki1_lower", &cfg(3, 2, 1)).unwrap();
        assert_eq!(w.a, ComplexMatrix::identity(2));
    }
}
