//! Brute-force estimates of the optimized quantities by sampling A-unit vectors.
//!
//! This works directly with `A`, `A^{†1/2}` and the range projection rather
//! than the range block used by the sweeps, so it is an independent check.
//! A unit `z ∈ range(A)` gives the A-unit vector `x = A^{†1/2} z`, and
//! `⟨Tx|x⟩_A = z* (A^{†1/2} A T A^{†1/2}) z`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{norm, ComplexMatrix, C64};
use crate::semihilbert::AOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `sup |⟨Tx|x⟩_A|`
    Omega,
    /// `inf |⟨Tx|x⟩_A|`
    Crawford,
    /// `sup √(Σ_k |⟨T_k x|x⟩_A|²)` over one to three operators
    Joint,
    /// `sup √(|⟨Tx|x⟩_A|² + ‖Tx‖_A⁴)`
    Dw,
    /// `sup ‖Tx‖_A`
    Norm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    /// Run local gradient refinement from the best samples.
    pub polish: bool,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 0,
            polish: true,
        }
    }
}

const POLISH_STARTS: usize = 8;
const POLISH_STEPS: usize = 400;

struct Objective {
    forms: Vec<ComplexMatrix>,
    proj: ComplexMatrix,
    quantity: Quantity,
}

impl Objective {
    /// `Σ_k |z* F_k z|²`; every quantity is a monotone function of it.
    fn raw(&self, z: &[C64]) -> (f64, Vec<C64>) {
        let q: Vec<C64> = self.forms.iter().map(|f| f.quadratic_form(z)).collect();
        (q.iter().map(|v| v.norm_sqr()).sum(), q)
    }

    fn value(&self, raw: f64) -> f64 {
        match self.quantity {
            Quantity::Norm => raw.sqrt().sqrt(),
            _ => raw.sqrt(),
        }
    }

    fn maximizes(&self) -> bool {
        self.quantity != Quantity::Crawford
    }

    /// `∂/∂z̄ Σ|q_k|² = Σ conj(q_k) F_k z + q_k F_k* z`, projected onto range(A).
    fn gradient(&self, z: &[C64], q: &[C64]) -> Vec<C64> {
        let mut g = vec![C64::new(0.0, 0.0); z.len()];
        for (f, &qk) in self.forms.iter().zip(q) {
            let fz = f.mat_vec(z);
            let fsz = f.adjoint().mat_vec(z);
            for i in 0..z.len() {
                g[i] += qk.conj() * fz[i] + qk * fsz[i];
            }
        }
        self.proj.mat_vec(&g)
    }

    fn better(&self, a: f64, b: f64) -> bool {
        if self.maximizes() {
            a > b
        } else {
            a < b
        }
    }

    fn polish(&self, mut z: Vec<C64>) -> f64 {
        let (mut s, mut q) = self.raw(&z);
        let sign = if self.maximizes() { 1.0 } else { -1.0 };
        let mut step = 0.1;
        for _ in 0..POLISH_STEPS {
            let g = self.gradient(&z, &q);
            let gn = norm(&g);
            if gn <= 1e-300 {
                break;
            }
            let mut accepted = false;
            while step > 1e-14 {
                let trial: Vec<C64> = z
                    .iter()
                    .zip(&g)
                    .map(|(zi, gi)| zi + gi * (sign * step / gn))
                    .collect();
                let trial = self.proj.mat_vec(&trial);
                let tn = norm(&trial);
                if tn > 0.0 {
                    let trial: Vec<C64> = trial.iter().map(|v| v / tn).collect();
                    let (ts, tq) = self.raw(&trial);
                    if self.better(ts, s) {
                        z = trial;
                        s = ts;
                        q = tq;
                        accepted = true;
                        step *= 1.5;
                        break;
                    }
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        s
    }
}

/// Empirical extremum of `quantity` over random A-unit vectors, optionally
/// refined by local gradient steps. Never exceeds the true supremum (never
/// undercuts the true infimum) beyond roundoff.
pub fn mc_oracle(quantity: Quantity, ops: &[&AOperator<'_>], cfg: &McConfig) -> Result<f64> {
    let expected = match quantity {
        Quantity::Joint => 1..=3,
        _ => 1..=1,
    };
    if !expected.contains(&ops.len()) {
        return Err(Error::UnsupportedArity(ops.len()));
    }
    if cfg.samples == 0 {
        return Err(Error::InvalidConfig("samples must be at least 1".into()));
    }
    let space = ops[0].space();
    for op in ops {
        if !std::ptr::eq(op.space(), space) {
            return Err(Error::SpaceMismatch);
        }
        if !op.is_compatible() {
            return Err(Error::NotCompatible);
        }
    }
    let r = space.pinv_sqrt_a();
    let a = space.a();
    let sandwich = |m: &ComplexMatrix| &(r * m) * r;
    let t = ops[0].matrix();
    let forms = match quantity {
        Quantity::Omega | Quantity::Crawford => vec![sandwich(&(a * t))],
        Quantity::Joint => ops.iter().map(|op| sandwich(&(a * op.matrix()))).collect(),
        Quantity::Dw => vec![
            sandwich(&(a * t)),
            sandwich(&(&(&t.adjoint() * a) * t)).hermitian_part(),
        ],
        Quantity::Norm => vec![sandwich(&(&(&t.adjoint() * a) * t)).hermitian_part()],
    };
    let obj = Objective {
        forms,
        proj: space.proj_range().clone(),
        quantity,
    };

    let n = space.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Vec<(f64, Vec<C64>)> = Vec::with_capacity(POLISH_STARTS + 1);
    for _ in 0..cfg.samples {
        let g: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let z = obj.proj.mat_vec(&g);
        let zn = norm(&z);
        if zn == 0.0 {
            continue;
        }
        let z: Vec<C64> = z.iter().map(|v| v / zn).collect();
        let (s, _) = obj.raw(&z);
        if best.len() < POLISH_STARTS || obj.better(s, best[best.len() - 1].0) {
            let pos = best
                .iter()
                .position(|(b, _)| obj.better(s, *b))
                .unwrap_or(best.len());
            best.insert(pos, (s, z));
            best.truncate(POLISH_STARTS);
        }
    }
    let Some(mut extremum) = best.first().map(|b| b.0) else {
        return Err(Error::InvalidConfig("no usable samples".into()));
    };
    if cfg.polish {
        for (_, z) in best {
            let s = obj.polish(z);
            if obj.better(s, extremum) {
                extremum = s;
            }
        }
    }
    Ok(obj.value(extremum.max(0.0)))
}
