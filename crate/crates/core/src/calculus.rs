//! Dense complex matrix calculus: Hermitian spectral decompositions,
//! operator absolute value, spectral functions φ(H), spectral radius,
//! operator norm and the commutation-condition residual.
//!
//! Everything here is a pure function on immutable inputs.

use nalgebra::{DMatrix, DVector};

use crate::model::Operator;
use crate::{C64, CMatrix, Error, Result};

/// Hermiticity tolerance at construction: ‖H - H*‖ ≤ 1e-10·(1 + ‖H‖).
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Relative clamp threshold for nearly-zero negative eigenvalues in
/// [`apply_spectral`].  Below -1e-10·‖H‖ the input is rejected instead of
/// clamped.
pub const PSD_CLAMP_REL: f64 = 1e-10;

/// A complex square matrix verified (and symmetrized) to be Hermitian.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    entries: CMatrix,
}

impl HermitianMatrix {
    /// Checks ‖H - H*‖ ≤ 1e-10·(1 + ‖H‖) and stores (H + H*)/2.
    pub fn new(m: CMatrix) -> Result<Self> {
        let scale = 1.0 + m.norm();
        let skew = (&m - m.adjoint()).norm();
        if skew > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(skew));
        }
        let entries = (m.adjoint() + m).scale(0.5);
        Ok(Self { entries })
    }

    /// Wraps a matrix known Hermitian by construction (e.g. V f(Λ) V*).
    fn trusted(entries: CMatrix) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_operator(self) -> Operator {
        Operator::new(self.entries)
    }

    pub fn as_operator(&self) -> Operator {
        Operator::new(self.entries.clone())
    }

    /// Full eigendecomposition with eigenvalues sorted ascending.
    pub fn eig(&self) -> Result<SpectralDecomposition> {
        let eig = nalgebra::SymmetricEigen::try_new(self.entries.clone(), 1.0e-13, 10_000)
            .ok_or(Error::EigFailed)?;
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
        let eigenvalues = DVector::from_fn(n, |i, _| eig.eigenvalues[order[i]]);
        let mut eigenvectors = CMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        Ok(SpectralDecomposition { eigenvalues, eigenvectors })
    }
}

/// Eigenvalues (real, ascending) and a unitary matrix of eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    /// V f(Λ) V*.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.eigenvalues.len();
        let d = CMatrix::from_fn(n, n, |i, j| {
            if i == j { C64::new(f(self.eigenvalues[i]), 0.0) } else { C64::new(0.0, 0.0) }
        });
        &self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|t| t)
    }
}

/// |A| = (A*A)^{1/2}, computed from the SVD of A (|A| = V Σ V*) for
/// accuracy near rank deficiency.
pub fn absolute_value(a: &Operator) -> Result<HermitianMatrix> {
    Ok(absolute_pair(a)?.0)
}

/// (|A|, |A*|) from a single SVD: A = U Σ V* gives |A| = V Σ V* and
/// |A*| = U Σ U*.
pub fn absolute_pair(a: &Operator) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let svd = nalgebra::SVD::try_new(a.entries.clone(), true, true, 1.0e-13, 10_000)
        .ok_or(Error::EigFailed)?;
    let u = svd.u.as_ref().ok_or(Error::EigFailed)?;
    let v_t = svd.v_t.as_ref().ok_or(Error::EigFailed)?;
    let n = svd.singular_values.len();
    let sigma = CMatrix::from_fn(n, n, |i, j| {
        if i == j { C64::new(svd.singular_values[i], 0.0) } else { C64::new(0.0, 0.0) }
    });
    let abs_a = v_t.adjoint() * &sigma * v_t;
    let abs_a_star = u * &sigma * u.adjoint();
    Ok((HermitianMatrix::trusted(abs_a), HermitianMatrix::trusted(abs_a_star)))
}

/// Applies a scalar function to a PSD Hermitian matrix by spectral
/// calculus: f(H) = V f(Λ) V*.  Nearly-zero negative eigenvalues (within
/// -1e-10·‖H‖) are clamped to 0; materially negative ones are an error.
pub fn apply_spectral(h: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    let mut eig = h.eig()?;
    let scale = eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |m, &v| m.max(v.abs()));
    for v in eig.eigenvalues.iter_mut() {
        if *v < 0.0 {
            if *v < -PSD_CLAMP_REL * scale {
                return Err(Error::NotPsd(*v));
            }
            *v = 0.0;
        }
    }
    Ok(HermitianMatrix::trusted(eig.map(f)))
}

/// Largest modulus of the eigenvalues of a general complex matrix.
///
/// Computed by embedding the n×n complex matrix into the 2n×2n real matrix
/// [[Re, -Im], [Im, Re]], whose spectrum is the spectrum of B together
/// with its conjugate, and running the dense real Schur solver.
pub fn spectral_radius(b: &Operator) -> Result<f64> {
    let n = b.dim();
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    let mut real = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = b.entries[(i, j)];
            real[(i, j)] = z.re;
            real[(i, j + n)] = -z.im;
            real[(i + n, j)] = z.im;
            real[(i + n, j + n)] = z.re;
        }
    }
    let schur = nalgebra::Schur::try_new(real, 1.0e-12, 100_000).ok_or(Error::EigFailed)?;
    let eigs = schur.complex_eigenvalues();
    Ok(eigs.iter().fold(0.0_f64, |m, z| m.max(z.norm())))
}

/// Largest singular value of a (possibly rectangular) complex matrix.
pub fn operator_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().iter().fold(0.0_f64, |m, &s| m.max(s))
}

/// Largest singular value of a real matrix.
pub fn operator_norm_real(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().iter().fold(0.0_f64, |m, &s| m.max(s))
}

/// Default commutation tolerance for the product-bound precondition
/// |A|B = B*|A|.
pub fn default_commutation_tol(a: &Operator, b: &Operator) -> f64 {
    1e-8 * (1.0 + operator_norm(&a.entries)) * (1.0 + operator_norm(&b.entries))
}

/// ‖|A|B - B*|A|‖: the residual of the product-bound precondition.
pub fn commutation_residual(a: &Operator, b: &Operator) -> Result<f64> {
    let abs_a = absolute_value(a)?;
    let lhs = abs_a.entries() * &b.entries;
    let rhs = b.entries.adjoint() * abs_a.entries();
    Ok(operator_norm(&(lhs - rhs)))
}
