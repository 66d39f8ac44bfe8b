//! Finite reproducing-kernel Hilbert space models.
//!
//! A [`KernelModel`] is a sampled domain Ω together with one kernel vector
//! k_λ per point and its precomputed norm.  Three constructions are
//! provided: the standard model (ℂⁿ over an n-point set, kernels = standard
//! basis), a truncated Hardy-space model over a polar grid of the unit
//! disk, and a model built from orthonormal-basis evaluations.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::{C64, CMatrix, CVector, Error, Result};

/// Documented cap on Hardy sample radii.  ‖k_λ‖ grows like
/// (1-|λ|²)^{-1/2}, so the cap bounds the conditioning of the model.
pub const HARDY_MAX_RADIUS: f64 = 0.999;

/// Unit-norm tolerance for normalized kernels.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Where a domain point lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointPayload {
    /// Abstract index (standard and ONB models, direct sums).
    Index(usize),
    /// Complex coordinate in the open unit disk (Hardy models).
    Disk(C64),
}

/// One sampled point of Ω.
#[derive(Debug, Clone, Copy)]
pub struct DomainPoint {
    pub id: usize,
    pub payload: PointPayload,
}

/// How the model was constructed; carries the metadata needed for
/// model-specific operations such as local grid refinement.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    Standard,
    Hardy {
        trunc: usize,
        /// Initial refinement half-widths (radial, angular).
        radial_step: f64,
        angular_step: f64,
    },
    Onb,
    DirectSum { copies: usize, base_dim: usize },
}

/// A finite RKHS model: sampled points, kernel vectors and their norms.
///
/// Immutable after construction; concurrent reads are safe.
#[derive(Debug, Clone)]
pub struct KernelModel {
    dim: usize,
    points: Vec<DomainPoint>,
    /// Unnormalized kernels, one column per point.
    kernels: CMatrix,
    /// ‖k_λ‖, one entry per point, each strictly positive.
    norms: Vec<f64>,
    /// Normalized kernels k̂_λ = k_λ/‖k_λ‖, one unit column per point.
    normalized: CMatrix,
    kind: ModelKind,
}

impl KernelModel {
    fn build(
        dim: usize,
        points: Vec<DomainPoint>,
        kernels: CMatrix,
        norms: Vec<f64>,
        kind: ModelKind,
    ) -> Self {
        debug_assert_eq!(kernels.ncols(), points.len());
        debug_assert_eq!(kernels.nrows(), dim);
        let mut normalized = kernels.clone();
        for (j, &n) in norms.iter().enumerate() {
            debug_assert!(n > 0.0);
            normalized.column_mut(j).scale_mut(1.0 / n);
        }
        Self { dim, points, kernels, norms, normalized, kind }
    }

    /// Ambient coordinate dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of sampled points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[DomainPoint] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Result<&DomainPoint> {
        self.points
            .get(index)
            .ok_or(Error::IndexOutOfRange { index, len: self.points.len() })
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    /// Unnormalized kernel k_λ at the given point.
    pub fn kernel(&self, index: usize) -> Result<CVector> {
        self.point(index)?;
        Ok(self.kernels.column(index).into_owned())
    }

    /// ‖k_λ‖ at the given point.
    pub fn kernel_norm(&self, index: usize) -> Result<f64> {
        self.point(index)?;
        Ok(self.norms[index])
    }

    /// Normalized kernel k̂_λ = k_λ/‖k_λ‖ at the given point.
    pub fn normalized_kernel(&self, index: usize) -> Result<CVector> {
        self.point(index)?;
        Ok(self.normalized.column(index).into_owned())
    }

    /// All normalized kernels as the columns of a dim × len matrix.
    pub fn normalized_matrix(&self) -> &CMatrix {
        &self.normalized
    }

    /// Gram matrix G with G_ij = ⟨k_{λ_j}, k_{λ_i}⟩ of the unnormalized kernels.
    pub fn gram(&self) -> CMatrix {
        self.kernels.adjoint() * &self.kernels
    }

    /// Checks that an operator matches the model dimension.
    pub fn check_operator(&self, a: &Operator) -> Result<()> {
        let (rows, cols) = a.entries.shape();
        if rows != self.dim || cols != self.dim {
            return Err(Error::ShapeMismatch { rows, cols, dim: self.dim });
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        dim: usize,
        points: Vec<DomainPoint>,
        kernels: CMatrix,
        norms: Vec<f64>,
        kind: ModelKind,
    ) -> Self {
        Self::build(dim, points, kernels, norms, kind)
    }
}

/// ℂⁿ as an RKHS over Ω = {0,…,n-1} with kernels equal to the standard
/// basis.  Berezin quantities collapse to entrywise maxima here.
pub fn standard_model(n: usize) -> Result<KernelModel> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    let points = (0..n)
        .map(|i| DomainPoint { id: i, payload: PointPayload::Index(i) })
        .collect();
    let kernels = CMatrix::identity(n, n);
    let norms = vec![1.0; n];
    Ok(KernelModel::build(n, points, kernels, norms, ModelKind::Standard))
}

/// Coefficient vector (1, λ̄, λ̄², …, λ̄^N) of the degree-N truncated Hardy
/// kernel in the monomial basis.
pub fn hardy_kernel_vector(trunc: usize, lambda: C64) -> CVector {
    let mut v = CVector::zeros(trunc + 1);
    let lc = lambda.conj();
    let mut p = Complex::new(1.0, 0.0);
    for i in 0..=trunc {
        v[i] = p;
        p *= lc;
    }
    v
}

/// ‖k_λ‖ of the truncated Hardy kernel, via the closed-form geometric sum
/// Σ_{n=0}^{N} |λ|^{2n}.  Avoids cancellation near |λ| → 1.
pub fn hardy_kernel_norm(trunc: usize, lambda: C64) -> f64 {
    let rho2 = lambda.norm_sqr();
    if rho2 == 0.0 {
        1.0
    } else {
        (((1.0 - rho2.powi(trunc as i32 + 1)) / (1.0 - rho2)) as f64).sqrt()
    }
}

/// Truncated Hardy-space model: kernels of degree ≤ N sampled on a polar
/// grid (all radius × angle combinations plus the origin).
pub fn hardy_model(trunc: usize, radii: &[f64], angles_per_ring: usize) -> Result<KernelModel> {
    if trunc == 0 || angles_per_ring == 0 {
        return Err(Error::InvalidDimension);
    }
    for &r in radii {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::InvalidPoint(format!("radius {r} is outside [0, 1)")));
        }
        if r > HARDY_MAX_RADIUS {
            return Err(Error::InvalidPoint(format!(
                "radius {r} exceeds the cap {HARDY_MAX_RADIUS}"
            )));
        }
    }
    let dim = trunc + 1;
    let mut lambdas = vec![C64::new(0.0, 0.0)];
    for &r in radii {
        if r == 0.0 {
            continue; // the origin is already present
        }
        for k in 0..angles_per_ring {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / angles_per_ring as f64;
            lambdas.push(C64::from_polar(r, theta));
        }
    }
    let mut kernels = CMatrix::zeros(dim, lambdas.len());
    let mut norms = Vec::with_capacity(lambdas.len());
    let mut points = Vec::with_capacity(lambdas.len());
    for (j, &lam) in lambdas.iter().enumerate() {
        kernels.set_column(j, &hardy_kernel_vector(trunc, lam));
        norms.push(hardy_kernel_norm(trunc, lam));
        points.push(DomainPoint { id: j, payload: PointPayload::Disk(lam) });
    }
    // Largest radial gap in the grid (measured from 0), used as the
    // starting half-width for local refinement.
    let mut sorted = radii.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut radial_step = sorted.first().copied().unwrap_or(0.0);
    for w in sorted.windows(2) {
        radial_step = radial_step.max(w[1] - w[0]);
    }
    let radial_step = radial_step.max(1e-3);
    let angular_step = 2.0 * std::f64::consts::PI / angles_per_ring as f64;
    Ok(KernelModel::build(
        dim,
        points,
        kernels,
        norms,
        ModelKind::Hardy { trunc, radial_step, angular_step },
    ))
}

/// Default Hardy grid: radii {0, 0.1, …, 0.9, 0.95, 0.99}, 32 angles per
/// ring, truncation degree 64.
pub fn default_hardy_model() -> KernelModel {
    let mut radii: Vec<f64> = (0..=9).map(|k| k as f64 / 10.0).collect();
    radii.push(0.95);
    radii.push(0.99);
    hardy_model(64, &radii, 32).expect("default grid is valid")
}

/// Model built from orthonormal-basis evaluations: row n of `evaluations`
/// holds e_n at each sampled point, and the kernel at point j has n-th
/// coordinate conj(e_n(λ_j)).
pub fn model_from_onb(evaluations: &CMatrix) -> Result<KernelModel> {
    let (n, p) = evaluations.shape();
    if n == 0 || p == 0 {
        return Err(Error::InvalidDimension);
    }
    let mut kernels = CMatrix::zeros(n, p);
    let mut norms = Vec::with_capacity(p);
    let mut points = Vec::with_capacity(p);
    for j in 0..p {
        let col: CVector = evaluations.column(j).map(|z| z.conj());
        let norm = col.norm();
        if norm == 0.0 {
            return Err(Error::ZeroKernel(j));
        }
        kernels.set_column(j, &col);
        norms.push(norm);
        points.push(DomainPoint { id: j, payload: PointPayload::Index(j) });
    }
    Ok(KernelModel::build(n, points, kernels, norms, ModelKind::Onb))
}

/// A bounded operator on a model's ambient coordinate space: a dense
/// complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    pub entries: CMatrix,
}

impl Operator {
    pub fn new(entries: CMatrix) -> Self {
        Self { entries }
    }

    /// Builds an operator from real entries.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let entries = CMatrix::from_fn(n, m, |i, j| C64::new(rows[i][j], 0.0));
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self { entries: CMatrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        Self { entries: CMatrix::identity(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self { entries: self.entries.adjoint() }
    }
}

impl From<CMatrix> for Operator {
    fn from(entries: CMatrix) -> Self {
        Self { entries }
    }
}

impl std::ops::Deref for Operator {
    type Target = CMatrix;
    fn deref(&self) -> &CMatrix {
        &self.entries
    }
}

// ---------------------------------------------------------------------------
// JSON wire formats.  Complex numbers are always [re, im] pairs.
// ---------------------------------------------------------------------------

/// Model specification as exchanged on the wire.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Standard {
        n: usize,
    },
    Hardy {
        #[serde(rename = "N")]
        trunc: usize,
        radii: Vec<f64>,
        angles: usize,
    },
    Onb {
        evaluations: Vec<Vec<[f64; 2]>>,
    },
}

impl ModelSpec {
    pub fn build(&self) -> Result<KernelModel> {
        match self {
            ModelSpec::Standard { n } => standard_model(*n),
            ModelSpec::Hardy { trunc, radii, angles } => hardy_model(*trunc, radii, *angles),
            ModelSpec::Onb { evaluations } => model_from_onb(&matrix_from_pairs(evaluations)?),
        }
    }
}

/// Operator wire format: either a dense `matrix` or a `blocks` layout whose
/// entries are themselves operator objects.  Exactly one of the two fields
/// must be present.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<OperatorSpec>>>,
}

impl OperatorSpec {
    pub fn build(&self) -> Result<Operator> {
        match (&self.matrix, &self.blocks) {
            (Some(matrix), None) => Ok(Operator::new(matrix_from_pairs(matrix)?)),
            (None, Some(blocks)) => {
                let built: Vec<Vec<Operator>> = blocks
                    .iter()
                    .map(|row| row.iter().map(|b| b.build()).collect::<Result<_>>())
                    .collect::<Result<_>>()?;
                crate::blocks::block_n(&built).map(|b| b.assemble())
            }
            _ => Err(Error::InvalidParam(
                "operator spec must have exactly one of \"matrix\" or \"blocks\"".into(),
            )),
        }
    }

    pub fn from_operator(a: &Operator) -> Self {
        Self { matrix: Some(matrix_to_pairs(&a.entries)), blocks: None }
    }
}

pub(crate) fn matrix_from_pairs(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if n == 0 || m == 0 {
        return Err(Error::InvalidDimension);
    }
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidParam("ragged matrix rows".into()));
    }
    Ok(CMatrix::from_fn(n, m, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

pub(crate) fn matrix_to_pairs(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Evaluates the polynomial with the given coefficient vector at λ; the
/// independent route for the Hardy reproducing identity ⟨f, k_λ⟩ = f(λ).
pub fn eval_poly(coeffs: &CVector, lambda: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * lambda + c;
    }
    acc
}
