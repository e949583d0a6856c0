//! A semi-Hilbert space `(Cⁿ, ⟨·|·⟩_A)` with `⟨x|y⟩_A = ⟨Ax, y⟩ = y* A x` for a
//! nonzero PSD matrix `A`, and operators interpreted in it.
//!
//! In finite dimensions an operator `T` has an A-adjoint exactly when it keeps
//! `null(A)` invariant; such operators are called compatible here. For them,
//! every A-quantity of `T` is a classical quantity of the `r × r` range block
//! `B = Λ^{1/2} Q* T Q Λ^{-1/2}` where `A = Q Λ Q*` restricted to `range(A)`.
//! The map `T ↦ B` is an algebra homomorphism and sends `T♯` to `B*`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, inner, psd_functions, ComplexMatrix, HermitianEigen, TolerancePolicy, C64,
};

/// Relative tolerance for the compatibility and structure predicates.
pub const PREDICATE_RTOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct SemiHilbertSpace {
    a: ComplexMatrix,
    eig: HermitianEigen,
    sqrt_a: ComplexMatrix,
    pinv_a: ComplexMatrix,
    pinv_sqrt_a: ComplexMatrix,
    proj_range: ComplexMatrix,
    rank: usize,
    tol: TolerancePolicy,
    /// Orthonormal basis of `range(A)`, one column per kept eigenvalue.
    basis: Vec<Vec<C64>>,
    /// Square roots of the kept eigenvalues.
    root_values: Vec<f64>,
}

impl SemiHilbertSpace {
    pub fn new(a: ComplexMatrix, tol: TolerancePolicy) -> Result<Self> {
        tol.validate()?;
        let eig = hermitian_eig(&a)?;
        if eig.values.iter().all(|&l| l.abs() == 0.0) || eig.max_value() <= 0.0 {
            if eig.min_value() < 0.0 {
                return Err(Error::NotPsd {
                    eigenvalue: eig.min_value(),
                    cutoff: 0.0,
                });
            }
            return Err(Error::ZeroA);
        }
        let f = psd_functions(&eig, &tol)?;
        let basis = (0..f.rank).map(|j| eig.vectors.column(j)).collect();
        let root_values = eig.values[..f.rank].iter().map(|l| l.sqrt()).collect();
        Ok(Self {
            a: a.hermitian_part(),
            eig,
            sqrt_a: f.sqrt,
            pinv_a: f.pinv,
            pinv_sqrt_a: f.pinv_sqrt,
            proj_range: f.proj,
            rank: f.rank,
            tol,
            basis,
            root_values,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim), TolerancePolicy::default())
            .expect("identity is a valid weight")
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn eig(&self) -> &HermitianEigen {
        &self.eig
    }

    pub fn sqrt_a(&self) -> &ComplexMatrix {
        &self.sqrt_a
    }

    pub fn pinv_a(&self) -> &ComplexMatrix {
        &self.pinv_a
    }

    pub fn pinv_sqrt_a(&self) -> &ComplexMatrix {
        &self.pinv_sqrt_a
    }

    pub fn proj_range(&self) -> &ComplexMatrix {
        &self.proj_range
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tol(&self) -> &TolerancePolicy {
        &self.tol
    }

    fn check_len(&self, v: &[C64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `⟨x|y⟩_A = y* A x`, linear in `x` and conjugate-linear in `y`.
    pub fn semi_inner(&self, x: &[C64], y: &[C64]) -> Result<C64> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(inner(&self.a.mat_vec(x), y))
    }

    pub fn seminorm(&self, x: &[C64]) -> Result<f64> {
        Ok(self.semi_inner(x, x)?.re.max(0.0).sqrt())
    }

    /// Range coordinates `Λ^{1/2} Q* x`; an isometry from `(Cⁿ, ‖·‖_A)` onto `Cʳ`.
    pub fn to_range_coords(&self, x: &[C64]) -> Result<Vec<C64>> {
        self.check_len(x)?;
        Ok(self
            .basis
            .iter()
            .zip(&self.root_values)
            .map(|(q, s)| inner(x, q) * *s)
            .collect())
    }

    /// The vector `Q Λ^{-1/2} y` of `range(A)` whose range coordinates are `y`.
    pub fn from_range_coords(&self, y: &[C64]) -> Result<Vec<C64>> {
        if y.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: y.len(),
            });
        }
        let mut x = vec![C64::new(0.0, 0.0); self.dim()];
        for ((q, s), &c) in self.basis.iter().zip(&self.root_values).zip(y) {
            let w = c / *s;
            for (xi, qi) in x.iter_mut().zip(q) {
                *xi += qi * w;
            }
        }
        Ok(x)
    }

    /// Wraps `m` as an operator on this space and decides compatibility.
    pub fn operator(&self, m: ComplexMatrix) -> Result<AOperator<'_>> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let compatible = self.is_compatible(&m);
        Ok(AOperator {
            space: self,
            m,
            compatible,
            block: OnceLock::new(),
        })
    }

    /// `‖(I − P) M* A‖_F ≤ rtol · max(1, ‖M* A‖_F)`, i.e. `R(M*A) ⊆ R(A)`.
    pub fn is_compatible(&self, m: &ComplexMatrix) -> bool {
        let ma = &m.adjoint() * &self.a;
        let leak = &ma - &(&self.proj_range * &ma);
        leak.frobenius_norm() <= PREDICATE_RTOL * ma.frobenius_norm().max(1.0)
    }

    fn range_block_of(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let r = self.rank;
        let mq: Vec<Vec<C64>> = self.basis.iter().map(|q| m.mat_vec(q)).collect();
        ComplexMatrix::from_fn(r, |i, j| {
            inner(&mq[j], &self.basis[i]) * (self.root_values[i] / self.root_values[j])
        })
    }

    /// `Q B Q*`, the n×n matrix acting as `B` on `range(A)` and as zero on `null(A)`.
    fn embed_block(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim();
        let r = self.rank;
        ComplexMatrix::from_fn(n, |i, j| {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..r {
                for l in 0..r {
                    s += self.basis[k][i] * b[(k, l)] * self.basis[l][j].conj();
                }
            }
            s
        })
    }
}

/// Structural predicates of an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    pub is_a_selfadjoint: bool,
    pub is_a_positive: bool,
    pub is_a_normal: bool,
    /// Set when `T` has no A-adjoint, in which case `is_a_normal` is false by fiat.
    pub normal_undefined: bool,
}

/// A matrix interpreted as an operator on a [`SemiHilbertSpace`].
#[derive(Debug)]
pub struct AOperator<'a> {
    space: &'a SemiHilbertSpace,
    m: ComplexMatrix,
    compatible: bool,
    block: OnceLock<ComplexMatrix>,
}

impl Clone for AOperator<'_> {
    fn clone(&self) -> Self {
        Self {
            space: self.space,
            m: self.m.clone(),
            compatible: self.compatible,
            block: self.block.clone(),
        }
    }
}

impl<'a> AOperator<'a> {
    pub fn space(&self) -> &'a SemiHilbertSpace {
        self.space
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn is_compatible(&self) -> bool {
        self.compatible
    }

    fn require_compatible(&self) -> Result<()> {
        if self.compatible {
            Ok(())
        } else {
            Err(Error::NotCompatible)
        }
    }

    fn same_space(&self, other: &AOperator<'_>) -> Result<()> {
        if std::ptr::eq(self.space, other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn wrap(&self, m: ComplexMatrix) -> AOperator<'a> {
        let compatible = self.space.is_compatible(&m);
        AOperator {
            space: self.space,
            m,
            compatible,
            block: OnceLock::new(),
        }
    }

    /// `T♯ = A† T* A`.
    pub fn sharp(&self) -> Result<AOperator<'a>> {
        self.require_compatible()?;
        let sp = self.space;
        Ok(self.wrap(&(&sp.pinv_a * &self.m.adjoint()) * &sp.a))
    }

    /// `Ã = A^{1/2} T A^{†1/2}`.
    pub fn compress(&self) -> Result<ComplexMatrix> {
        self.require_compatible()?;
        let sp = self.space;
        Ok(&(&sp.sqrt_a * &self.m) * &sp.pinv_sqrt_a)
    }

    /// The `r × r` block of the compression in the eigenbasis of `A`.
    pub fn range_block(&self) -> Result<&ComplexMatrix> {
        self.require_compatible()?;
        Ok(self
            .block
            .get_or_init(|| self.space.range_block_of(&self.m)))
    }

    /// `(Re_A T, Im_A T) = ((T + T♯)/2, (T − T♯)/2i)`.
    pub fn re_im(&self) -> Result<(AOperator<'a>, AOperator<'a>)> {
        let sharp = self.sharp()?;
        let re = (&self.m + &sharp.m).scale_re(0.5);
        let im = (&self.m - &sharp.m).scale(C64::new(0.0, -0.5));
        Ok((self.wrap(re), self.wrap(im)))
    }

    pub fn predicates(&self) -> Predicates {
        let at = &self.space.a * &self.m;
        let scale = at.frobenius_norm().max(1.0);
        let is_a_selfadjoint = at.hermitian_defect() <= PREDICATE_RTOL * scale;
        let is_a_positive = is_a_selfadjoint
            && crate::linalg::jacobi(at.hermitian_part()).min_value() >= -PREDICATE_RTOL * scale;
        let (is_a_normal, normal_undefined) = match self.sharp() {
            Ok(sharp) => {
                let left = &sharp.m * &self.m;
                let right = &self.m * &sharp.m;
                let scale = left
                    .frobenius_norm()
                    .max(right.frobenius_norm())
                    .max(self.m.frobenius_norm().powi(2))
                    .max(1.0);
                (
                    (&left - &right).frobenius_norm() <= PREDICATE_RTOL * scale,
                    false,
                )
            }
            Err(_) => (false, true),
        };
        Predicates {
            is_a_selfadjoint,
            is_a_positive,
            is_a_normal,
            normal_undefined,
        }
    }

    pub fn mul(&self, rhs: &AOperator<'_>) -> Result<AOperator<'a>> {
        self.same_space(rhs)?;
        Ok(self.wrap(&self.m * &rhs.m))
    }

    pub fn add(&self, rhs: &AOperator<'_>) -> Result<AOperator<'a>> {
        self.same_space(rhs)?;
        Ok(self.wrap(&self.m + &rhs.m))
    }

    pub fn sub(&self, rhs: &AOperator<'_>) -> Result<AOperator<'a>> {
        self.same_space(rhs)?;
        Ok(self.wrap(&self.m - &rhs.m))
    }

    pub fn scale(&self, c: C64) -> AOperator<'a> {
        self.wrap(self.m.scale(c))
    }

    pub fn pow(&self, n: u32) -> AOperator<'a> {
        self.wrap(self.m.pow(n))
    }

    /// Lifts an r×r range block back to an operator; used by witness constructors.
    pub fn from_block(space: &'a SemiHilbertSpace, b: &ComplexMatrix) -> Result<AOperator<'a>> {
        if b.dim() != space.rank {
            return Err(Error::DimensionMismatch {
                expected: space.rank,
                found: b.dim(),
            });
        }
        // T = A^{†1/2} (Q B Q*) A^{1/2} has range block exactly B
        let core = space.embed_block(b);
        let m = &(&space.pinv_sqrt_a * &core) * &space.sqrt_a;
        space.operator(m)
    }
}
