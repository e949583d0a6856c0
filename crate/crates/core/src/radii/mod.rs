//! Enclosures for the optimized A-quantities of compatible operators.
//!
//! Everything is computed on range blocks (see [`crate::semihilbert`]), where
//! the A-numerical radius, A-Crawford number, A-seminorm, joint radius and
//! Davis-Wielandt radius become their classical counterparts. Suprema of
//! quadratic forms are rewritten as `max_{|u|=1} λ_max(Σ u_k M_k)` and handed
//! to the certified sphere sweep in [`sphere`].

mod crawford;
mod mc;
mod sphere;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{jacobi, norm, op_norm_2, ComplexMatrix, TolerancePolicy, C64};
use crate::semihilbert::AOperator;

pub use mc::{mc_oracle, McConfig, Quantity};
use sphere::{maximize, Pencil, SweepSettings};

/// Arcs in the initial partition of the circle for one-parameter sweeps.
pub const INITIAL_ARCS: usize = 32;

const MAX_EVALS_CIRCLE: usize = 200_000;
const MAX_EVALS_SPHERE: usize = 400_000;
const CRAWFORD_MAX_ITER: usize = 2_000;
const TUPLE_STARTS: usize = 256;
const TUPLE_POLISH_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sweep,
    Sweep2d,
    Mc,
    ClosedForm,
}

/// An enclosure `[lo, hi]` of an optimized quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub lo: f64,
    pub hi: f64,
    pub method: Method,
    pub evals: usize,
}

impl RadiusEstimate {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn closed_form(v: f64) -> Self {
        let w = 1e-12 * v.abs().max(1.0);
        Self {
            lo: (v - w).max(0.0),
            hi: v + w,
            method: Method::ClosedForm,
            evals: 1,
        }
    }
}

fn settings(tol: &TolerancePolicy, max_evals: usize) -> SweepSettings {
    SweepSettings {
        target: 0.5 * tol.sweep_tol,
        max_evals,
        initial_arcs: INITIAL_ARCS,
    }
}

/// Hermitian and skew-Hermitian parts `(H, K)` with `M = H + iK`, so that
/// `x*Mx = x*Hx + i x*Kx`.
fn parts(m: &ComplexMatrix) -> [ComplexMatrix; 2] {
    [m.hermitian_part(), m.skew_hermitian_part()]
}

/// Maximizes `|w(x)|` for the forms `w_k = x* M_k x`, first discarding forms
/// too small to matter and widening `hi` by their total size.
fn sup_of_forms(mats: Vec<ComplexMatrix>, cfg: SweepSettings, method: Method) -> RadiusEstimate {
    let total: f64 = mats.iter().map(|m| m.frobenius_norm()).sum();
    let (kept, dropped): (Vec<_>, Vec<_>) = mats
        .into_iter()
        .partition(|m| m.frobenius_norm() > 1e-15 * total);
    let slack: f64 = dropped.iter().map(|m| m.frobenius_norm()).sum();
    if kept.is_empty() {
        return RadiusEstimate {
            lo: 0.0,
            hi: slack,
            method,
            evals: 0,
        };
    }
    let res = maximize(&Pencil::new(kept), &cfg);
    RadiusEstimate {
        lo: res.lo,
        hi: res.hi + slack,
        method,
        evals: res.evals,
    }
}

/// `ω(M) = max_θ λ_max(Re(e^{iθ}M))` for a plain square matrix.
pub fn classical_numerical_radius(
    m: &ComplexMatrix,
    tol: &TolerancePolicy,
) -> Result<RadiusEstimate> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let [h, k] = parts(m);
    Ok(sup_of_forms(
        vec![h, k],
        settings(tol, MAX_EVALS_CIRCLE),
        Method::Sweep,
    ))
}

/// `‖T‖_A = σ_max` of the range block.
pub fn op_seminorm_a(t: &AOperator<'_>) -> Result<RadiusEstimate> {
    Ok(RadiusEstimate::closed_form(op_norm_2(t.range_block()?)?))
}

/// `ω_A(T)`.
pub fn omega_a(t: &AOperator<'_>) -> Result<RadiusEstimate> {
    classical_numerical_radius(t.range_block()?, t.space().tol())
}

/// `c_A(T)`, the distance from the origin to the A-numerical range.
pub fn crawford_a(t: &AOperator<'_>) -> Result<RadiusEstimate> {
    let b = t.range_block()?;
    let [h, k] = parts(b);
    let res = crawford::distance_to_range(
        &Pencil::new(vec![h, k]),
        0.5 * t.space().tol().sweep_tol,
        CRAWFORD_MAX_ITER,
    );
    Ok(RadiusEstimate {
        lo: res.lo,
        hi: res.hi,
        method: Method::Sweep,
        evals: res.evals,
    })
}

fn same_space(ops: &[&AOperator<'_>]) -> Result<()> {
    let sp = ops[0].space();
    if ops.iter().all(|o| std::ptr::eq(o.space(), sp)) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// `ω_{A,e}(T, S) = sup √(|⟨Tx|x⟩_A|² + |⟨Sx|x⟩_A|²)`.
pub fn joint_radius_a(t: &AOperator<'_>, s: &AOperator<'_>) -> Result<RadiusEstimate> {
    same_space(&[t, s])?;
    let [ht, kt] = parts(t.range_block()?);
    let [hs, ks] = parts(s.range_block()?);
    Ok(sup_of_forms(
        vec![ht, kt, hs, ks],
        settings(t.space().tol(), MAX_EVALS_SPHERE),
        Method::Sweep2d,
    ))
}

/// Joint radius of one to three operators. Triples use a multistart ascent in
/// direction space and carry a heuristic (non-certified) upper end.
pub fn joint_radius_tuple(ops: &[&AOperator<'_>]) -> Result<RadiusEstimate> {
    match ops.len() {
        1 => omega_a(ops[0]),
        2 => joint_radius_a(ops[0], ops[1]),
        3 => {
            same_space(ops)?;
            let mut mats = Vec::with_capacity(6);
            for op in ops {
                mats.extend(parts(op.range_block()?));
            }
            Ok(tuple_ascent(&Pencil::new(mats), 0x6a6f696e74))
        }
        d => Err(Error::UnsupportedArity(d)),
    }
}

fn tuple_ascent(pencil: &Pencil, seed: u64) -> RadiusEstimate {
    let d = pencil.arity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: f64 = 0.0;
    let mut evals = 0;
    for _ in 0..TUPLE_STARTS {
        let mut u: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        u.iter_mut().for_each(|x| *x /= n);
        let mut last: f64 = 0.0;
        for _ in 0..TUPLE_POLISH_STEPS {
            let p = pencil.probe_max(&u);
            evals += 1;
            let w = p.witness();
            best = best.max(w);
            if w <= 0.0 || w - last <= 1e-14 * w.max(1.0) {
                break;
            }
            last = w;
            u = p.point.iter().map(|x| x / w).collect();
        }
    }
    RadiusEstimate {
        lo: best,
        hi: best * (1.0 + 1e-2),
        method: Method::Mc,
        evals,
    }
}

/// `dω_A(T) = sup √(|⟨Tx|x⟩_A|² + ‖Tx‖_A⁴)`, swept directly from `(B, B*B)`.
pub fn dw_radius_a(t: &AOperator<'_>) -> Result<RadiusEstimate> {
    let b = t.range_block()?;
    let [h, k] = parts(b);
    let gram = (&b.adjoint() * b).hermitian_part();
    Ok(sup_of_forms(
        vec![h, k, gram],
        settings(t.space().tol(), MAX_EVALS_SPHERE),
        Method::Sweep2d,
    ))
}

/// `inf_{‖x‖_A = 1} (‖Tx‖_A − ‖T♯x‖_A)²`.
///
/// In finite dimensions `D = B*B − BB*` has trace zero, so it is either zero or
/// indefinite, and a unit vector with `y*Dy = 0` mixes its extreme eigenvectors.
/// There `‖By‖ = ‖B*y‖` and the infimum is 0. `hi` is the objective evaluated
/// at that vector.
pub fn inf_gap_a(t: &AOperator<'_>) -> Result<RadiusEstimate> {
    inf_gap_point(t).map(|(e, _)| e)
}

/// [`inf_gap_a`] together with its minimizer as an A-unit vector.
pub fn inf_gap_point(t: &AOperator<'_>) -> Result<(RadiusEstimate, Vec<C64>)> {
    let b = t.range_block()?;
    let d = &(&b.adjoint() * b) - &(b * &b.adjoint());
    let e = jacobi(d.hermitian_part());
    let top = e.values[0];
    let bottom = e.values[e.values.len() - 1];
    let hi_vec = e.vectors.column(0);
    let lo_vec = e.vectors.column(e.values.len() - 1);
    let y: Vec<C64> = if top > 0.0 && bottom < 0.0 {
        let tan = (top / -bottom).sqrt();
        let (c, s) = (
            1.0 / (1.0 + tan * tan).sqrt(),
            tan / (1.0 + tan * tan).sqrt(),
        );
        hi_vec
            .iter()
            .zip(&lo_vec)
            .map(|(p, q)| p * c + q * s)
            .collect()
    } else {
        hi_vec
    };
    let gap = (norm(&b.mat_vec(&y)) - norm(&b.adjoint().mat_vec(&y))).powi(2);
    let x = t.space().from_range_coords(&y)?;
    Ok((
        RadiusEstimate {
            lo: 0.0,
            hi: gap,
            method: Method::ClosedForm,
            evals: 1,
        },
        x,
    ))
}

#[cfg(test)]
mod tests;
