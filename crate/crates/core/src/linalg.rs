//! Dense complex matrices and the spectral primitives used throughout the crate:
//! a cyclic Jacobi eigensolver for Hermitian matrices, PSD functional calculus
//! (square root, Moore-Penrose inverse, range projection) and the operator 2-norm.
//!
//! Vectors are plain `Vec<Complex64>`. The inner product is linear in the first
//! argument and conjugate-linear in the second: `inner(u, v) = v* u`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Relative Hermitian-defect tolerance accepted by [`hermitian_eig`].
pub const HERMITIAN_RTOL: f64 = 1e-8;

const JACOBI_MAX_SWEEPS: usize = 80;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Builds a matrix from real row-major rows; panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| {
            assert_eq!(rows[i].len(), n, "ragged rows");
            C64::new(rows[i][j], 0.0)
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖M − M*‖_F`
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    /// `(M + M*) / 2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// `(M − M*) / 2i`, so that `M = hermitian_part + i · skew_hermitian_part`.
    pub fn skew_hermitian_part(&self) -> Self {
        let half_over_i = C64::new(0.0, -0.5);
        Self::from_fn(self.dim, |i, j| {
            (self[(i, j)] - self[(j, i)].conj()) * half_over_i
        })
    }

    pub fn mat_vec(&self, x: &[C64]) -> Vec<C64> {
        debug_assert_eq!(x.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|i| {
                let row = &self.data[i * n..(i + 1) * n];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `x* M x`
    pub fn quadratic_form(&self, x: &[C64]) -> C64 {
        inner(&self.mat_vec(x), x)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        ComplexMatrix { dim: n, data: out }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

/// `⟨u, v⟩ = Σ u_i conj(v_i)`: linear in `u`, conjugate-linear in `v`.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Scales `v` to unit length; returns `None` for (numerically) zero vectors.
pub fn normalized(v: &[C64]) -> Option<Vec<C64>> {
    let n = norm(v);
    if n > 0.0 && n.is_finite() {
        Some(v.iter().map(|z| z / n).collect())
    } else {
        None
    }
}

/// Tolerances shared by every computation on a semi-Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Eigenvalues at or below `rank_rtol · λ₁` count as zero.
    pub rank_rtol: f64,
    /// Absolute slack allowed before an inequality is declared violated.
    pub check_atol: f64,
    /// Target width of certified enclosures for optimized radii.
    pub sweep_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rank_rtol: 1e-10,
            check_atol: 1e-7,
            sweep_tol: 1e-6,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(self.rank_rtol) || !ok(self.check_atol) || !ok(self.sweep_tol) {
            return Err(Error::InvalidTolerance(
                "all tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.rank_rtol >= 1e-2 {
            return Err(Error::InvalidTolerance(
                "rank_rtol must be below 1e-2".into(),
            ));
        }
        Ok(())
    }
}

/// Eigendecomposition `M = Q diag(values) Q*` of a Hermitian matrix, values
/// sorted non-increasing.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub source_dim: usize,
}

impl HermitianEigen {
    /// `Q f(Λ) Q*`
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.source_dim;
        let q = &self.vectors;
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            let mut s = ZERO;
            for k in 0..n {
                if fv[k] != 0.0 {
                    s += q[(i, k)] * q[(j, k)].conj() * fv[k];
                }
            }
            s
        })
    }

    pub fn max_value(&self) -> f64 {
        self.values[0]
    }

    pub fn min_value(&self) -> f64 {
        self.values[self.source_dim - 1]
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = m.hermitian_defect();
    let limit = HERMITIAN_RTOL * m.frobenius_norm().max(1.0);
    if defect > limit {
        return Err(Error::NotHermitian { defect, limit });
    }
    Ok(())
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary and then applies a real plane rotation, so the combined 2×2 block
/// of the transform is `[[c, s], [−s·ē, c·ē]]` with `e = a_pq / |a_pq|`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    Ok(jacobi(m.hermitian_part()))
}

/// Unchecked solver core; `a` must be Hermitian.
pub(crate) fn jacobi(mut a: ComplexMatrix) -> HermitianEigen {
    let n = a.dim;
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    if scale > 0.0 {
        let target = (1e-15 * scale).powi(2);
        for _ in 0..JACOBI_MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q, scale);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    HermitianEigen {
        values,
        vectors,
        source_dim: n,
    }
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, scale: f64) {
    let n = a.dim;
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= 1e-300 || mag <= 1e-19 * scale {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let e = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -e.conj() * s;
    let u_qq = e.conj() * c;

    // columns: A ← A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // rows: A ← U* A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Functional calculus of a PSD matrix given its eigendecomposition.
#[derive(Debug, Clone)]
pub struct PsdFunctions {
    pub sqrt: ComplexMatrix,
    pub pinv: ComplexMatrix,
    pub pinv_sqrt: ComplexMatrix,
    pub proj: ComplexMatrix,
    pub rank: usize,
}

/// Numerical rank cutoff `rank_rtol · λ₁`; eigenvalues above it are kept.
pub fn rank_cutoff(eig: &HermitianEigen, tol: &TolerancePolicy) -> f64 {
    tol.rank_rtol * eig.max_value().max(0.0)
}

pub fn psd_functions(eig: &HermitianEigen, tol: &TolerancePolicy) -> Result<PsdFunctions> {
    let lmax = eig.max_value();
    let cutoff = rank_cutoff(eig, tol);
    let lmin = eig.min_value();
    // a matrix with λ₁ ≤ 0 is PSD only if it is zero
    if lmin < -cutoff || (lmax <= 0.0 && lmin < 0.0) {
        return Err(Error::NotPsd {
            eigenvalue: lmin,
            cutoff: -cutoff,
        });
    }
    let keep = |l: f64| l > cutoff && l > 0.0;
    let rank = eig.values.iter().filter(|&&l| keep(l)).count();
    Ok(PsdFunctions {
        sqrt: eig.map(|l| if keep(l) { l.sqrt() } else { 0.0 }),
        pinv: eig.map(|l| if keep(l) { 1.0 / l } else { 0.0 }),
        pinv_sqrt: eig.map(|l| if keep(l) { 1.0 / l.sqrt() } else { 0.0 }),
        proj: eig.map(|l| if keep(l) { 1.0 } else { 0.0 }),
        rank,
    })
}

/// Largest singular value `√λ_max(M*M)`.
pub fn op_norm_2(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let gram = &m.adjoint() * m;
    Ok(jacobi(gram.hermitian_part()).max_value().max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn gaussian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |_, _| {
            c(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        gaussian(n, rng).hermitian_part()
    }

    fn reconstruct(e: &HermitianEigen) -> ComplexMatrix {
        let d: Vec<C64> = e.values.iter().map(|&l| c(l, 0.0)).collect();
        &(&e.vectors * &ComplexMatrix::from_diag(&d)) * &e.vectors.adjoint()
    }

    #[test]
    fn diagonal_input_is_returned_sorted() {
        let e = hermitian_eig(&ComplexMatrix::from_real_diag(&[3.0, 1.0])).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0]);
        assert!(e.vectors.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);

        let e = hermitian_eig(&ComplexMatrix::from_real_diag(&[1.0, 3.0])).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0]);
    }

    #[test]
    fn swap_matrix_spectrum() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = hermitian_eig(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=8 {
            for _ in 0..20 {
                let h = random_hermitian(n, &mut rng);
                let e = hermitian_eig(&h).unwrap();
                let scale = h.frobenius_norm().max(1.0);
                assert!((&reconstruct(&e) - &h).frobenius_norm() <= 1e-10 * scale);
                let qq = &e.vectors.adjoint() * &e.vectors;
                assert!((&qq - &ComplexMatrix::identity(n)).frobenius_norm() <= 1e-10);
                assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn repeated_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = gaussian(4, &mut rng);
        let e = hermitian_eig(&(&g + &g.adjoint())).unwrap();
        // Q diag(2,2,-1,-1) Q*
        let m = &(&e.vectors * &ComplexMatrix::from_real_diag(&[2.0, 2.0, -1.0, -1.0]))
            * &e.vectors.adjoint();
        let e2 = hermitian_eig(&m).unwrap();
        for (got, want) in e2.values.iter().zip([2.0, 2.0, -1.0, -1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian_and_non_finite() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
        let bad = ComplexMatrix {
            dim: 1,
            data: vec![c(f64::NAN, 0.0)],
        };
        assert_eq!(hermitian_eig(&bad).unwrap_err(), Error::NonFinite);
        assert_eq!(op_norm_2(&bad).unwrap_err(), Error::NonFinite);
        assert!(ComplexMatrix::new(1, vec![c(f64::INFINITY, 0.0)]).is_err());
        assert!(ComplexMatrix::new(2, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn eig_is_bitwise_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(6, &mut rng);
        let a = hermitian_eig(&h).unwrap();
        let b = hermitian_eig(&h.clone()).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn rayleigh_quotients_lie_in_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let h = random_hermitian(5, &mut rng);
            let e = hermitian_eig(&h).unwrap();
            let x: Vec<C64> = (0..5)
                .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let u = normalized(&x).unwrap();
            let r = h.quadratic_form(&u).re;
            assert!(e.min_value() - 1e-12 <= r && r <= e.max_value() + 1e-12);
        }
    }

    #[test]
    fn psd_diagonal_examples() {
        let tol = TolerancePolicy::default();
        let e = hermitian_eig(&ComplexMatrix::from_real_diag(&[2.0, 0.0])).unwrap();
        let f = psd_functions(&e, &tol).unwrap();
        assert_eq!(f.rank, 1);
        assert!(
            f.pinv
                .max_abs_diff(&ComplexMatrix::from_real_diag(&[0.5, 0.0]))
                < 1e-15
        );
        assert!(
            f.proj
                .max_abs_diff(&ComplexMatrix::from_real_diag(&[1.0, 0.0]))
                < 1e-15
        );

        let e = hermitian_eig(&ComplexMatrix::from_real_diag(&[4.0, 1.0])).unwrap();
        let f = psd_functions(&e, &tol).unwrap();
        assert!(
            f.sqrt
                .max_abs_diff(&ComplexMatrix::from_real_diag(&[2.0, 1.0]))
                < 1e-15
        );
        assert!(
            f.pinv_sqrt
                .max_abs_diff(&ComplexMatrix::from_real_diag(&[0.5, 1.0]))
                < 1e-15
        );
    }

    #[test]
    fn psd_rank_deficient_identities() {
        let tol = TolerancePolicy::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..25 {
            // rank-2 4×4 PSD as G G* with G having two nonzero columns
            let g = ComplexMatrix::from_fn(4, |_, j| {
                if j < 2 {
                    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
                } else {
                    ZERO
                }
            });
            let a = &g * &g.adjoint();
            let e = hermitian_eig(&a).unwrap();
            let f = psd_functions(&e, &tol).unwrap();
            assert_eq!(f.rank, 2);
            let s = 1e-9 * a.frobenius_norm().max(1.0);
            assert!((&(&(&a * &f.pinv) * &a) - &a).frobenius_norm() <= s);
            assert!((&(&(&f.pinv * &a) * &f.pinv) - &f.pinv).frobenius_norm() <= s);
            assert!((&(&f.sqrt * &f.sqrt) - &a).frobenius_norm() <= s);
            assert!((&(&f.pinv_sqrt * &f.pinv_sqrt) - &f.pinv).frobenius_norm() <= s);
            let p2 = &f.proj * &f.proj;
            assert!((&p2 - &f.proj).frobenius_norm() <= 1e-10);
            let trace: f64 = (0..4).map(|i| f.proj[(i, i)].re).sum();
            assert!((trace - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn psd_rejects_negative_and_clamps_roundoff() {
        let tol = TolerancePolicy::default();
        let e = hermitian_eig(&ComplexMatrix::from_real_diag(&[1.0, -0.1])).unwrap();
        assert!(matches!(psd_functions(&e, &tol), Err(Error::NotPsd { .. })));
        let e = hermitian_eig(&ComplexMatrix::from_real_diag(&[1.0, -1e-13])).unwrap();
        let f = psd_functions(&e, &tol).unwrap();
        assert_eq!(f.rank, 1);
        // the rank is scale invariant
        let e = hermitian_eig(&ComplexMatrix::from_real_diag(&[1e-6, 1e-19])).unwrap();
        assert_eq!(psd_functions(&e, &tol).unwrap().rank, 1);
    }

    #[test]
    fn tolerance_policy_validation() {
        assert!(TolerancePolicy::default().validate().is_ok());
        let bad = TolerancePolicy {
            rank_rtol: 0.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = TolerancePolicy {
            sweep_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn op_norm_examples() {
        assert!((op_norm_2(&ComplexMatrix::identity(3)).unwrap() - 1.0).abs() < 1e-15);
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        assert!((op_norm_2(&m).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(op_norm_2(&ComplexMatrix::zeros(3)).unwrap(), 0.0);
    }

    #[test]
    fn op_norm_dominates_monte_carlo() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let m = gaussian(4, &mut rng);
        let sigma = op_norm_2(&m).unwrap();
        let mut best: f64 = 0.0;
        for _ in 0..100_000 {
            let x: Vec<C64> = (0..4)
                .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let u = normalized(&x).unwrap();
            best = best.max(norm(&m.mat_vec(&u)));
        }
        assert!(best <= sigma + 1e-12);
        assert!(
            sigma - best < 1e-3 * sigma.max(1.0) * 60.0,
            "{sigma} vs {best}"
        );
    }

    #[test]
    fn op_norm_submultiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=6 {
            let a = gaussian(n, &mut rng);
            let b = gaussian(n, &mut rng);
            let lhs = op_norm_2(&(&a * &b)).unwrap();
            let rhs = op_norm_2(&a).unwrap() * op_norm_2(&b).unwrap();
            assert!(lhs <= rhs + 1e-9);
        }
    }

    #[test]
    fn inner_product_convention() {
        let u = vec![c(1.0, 2.0), c(0.5, -1.0)];
        let v = vec![c(-0.3, 0.7), c(2.0, 0.1)];
        let lam = c(0.4, -1.3);
        let scaled: Vec<C64> = v.iter().map(|z| z * lam).collect();
        let lhs = inner(&u, &scaled);
        let rhs = lam.conj() * inner(&u, &v);
        assert!((lhs - rhs).norm() < 1e-14);
    }
}
