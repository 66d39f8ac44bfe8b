//! Direct-sum models H ⊕ … ⊕ H and block operator matrices.
//!
//! The composite kernel family consists of weighted, phase-twisted,
//! normalized tuples (c₁ e^{iψ₁} k̂_{λ₁}, …, c_n e^{iψ_n} k̂_{λ_n}) with
//! Σ|c_i|² = 1.  This is the largest family for which the operator-matrix
//! proofs remain valid (they only need the component norms to satisfy
//! Σ‖·‖² = 1), so the computed left sides are the tightest finite
//! realization of the bounds.

use crate::model::{DomainPoint, KernelModel, ModelKind, Operator, PointPayload};
use crate::{C64, CMatrix, Error, Result};

/// Hard cap on the composite kernel family size.
pub const FAMILY_CAP: usize = 200_000;

/// Maximum number of direct summands.
pub const MAX_COPIES: usize = 4;

/// An n×n array of operators on a common base space.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    blocks: Vec<Vec<Operator>>,
    base_dim: usize,
}

impl BlockOperator {
    pub fn copies(&self) -> usize {
        self.blocks.len()
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn block(&self, i: usize, j: usize) -> &Operator {
        &self.blocks[i][j]
    }

    /// Dense (n·dim)×(n·dim) matrix in block layout.
    pub fn assemble(&self) -> Operator {
        let n = self.copies();
        let d = self.base_dim;
        let mut out = CMatrix::zeros(n * d, n * d);
        for (i, row) in self.blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                out.view_mut((i * d, j * d), (d, d)).copy_from(&b.entries);
            }
        }
        Operator::new(out)
    }
}

/// 2×2 operator matrix (A B; C D).
pub fn block2(a: Operator, b: Operator, c: Operator, d: Operator) -> Result<BlockOperator> {
    block_n(&[vec![a, b], vec![c, d]])
}

/// General n×n operator matrix from a square grid of equally sized blocks.
pub fn block_n(grid: &[Vec<Operator>]) -> Result<BlockOperator> {
    let n = grid.len();
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    let base_dim = grid[0].first().map(Operator::dim).unwrap_or(0);
    if base_dim == 0 {
        return Err(Error::InvalidDimension);
    }
    for row in grid {
        if row.len() != n {
            return Err(Error::ShapeMismatch { rows: n, cols: row.len(), dim: n });
        }
        for b in row {
            if b.entries.nrows() != base_dim || b.entries.ncols() != base_dim {
                return Err(Error::ShapeMismatch {
                    rows: b.entries.nrows(),
                    cols: b.entries.ncols(),
                    dim: base_dim,
                });
            }
        }
    }
    Ok(BlockOperator { blocks: grid.to_vec(), base_dim })
}

/// Weight vectors on the unit sphere of ℝⁿ₊ used for composite kernels:
/// an angular grid (recursively for n > 2), every standard basis vector,
/// and the uniform vector.  The family is closed under coordinate
/// exchange for n = 2 since cos θ ↔ sin θ maps θ ↔ π/2 − θ.
fn weight_grid(copies: usize, steps: usize) -> Vec<Vec<f64>> {
    let mut out = angular_weights(copies, steps);
    for i in 0..copies {
        let mut e = vec![0.0; copies];
        e[i] = 1.0;
        out.push(e);
    }
    out.push(vec![(copies as f64).sqrt().recip(); copies]);
    // dedupe within a coarse tolerance
    let mut unique: Vec<Vec<f64>> = Vec::new();
    for w in out {
        if !unique.iter().any(|u| {
            u.iter().zip(&w).all(|(a, b)| (a - b).abs() < 1e-12)
        }) {
            unique.push(w);
        }
    }
    unique
}

fn angular_weights(copies: usize, steps: usize) -> Vec<Vec<f64>> {
    if copies == 1 {
        return vec![vec![1.0]];
    }
    let mut out = Vec::new();
    for k in 0..steps {
        let theta = std::f64::consts::FRAC_PI_2 * k as f64 / (steps - 1) as f64;
        let (head, scale) = (theta.cos(), theta.sin());
        for tail in angular_weights(copies - 1, steps) {
            let mut w = Vec::with_capacity(copies);
            w.push(head);
            w.extend(tail.iter().map(|t| t * scale));
            out.push(w);
        }
    }
    out
}

/// Builds the direct-sum model H^copies over a base model.
///
/// The composite point set runs over every tuple of base points, every
/// weight vector, and every relative phase assignment (the first
/// component's phase is fixed at 0; a global phase never changes any
/// Berezin quantity).  Components with zero weight are collapsed to the
/// first base point and phase 0 so the family is not inflated by
/// duplicates.
pub fn direct_sum_model(
    base: &KernelModel,
    copies: usize,
    weight_steps: usize,
    phase_steps: usize,
) -> Result<KernelModel> {
    if copies < 2 || copies > MAX_COPIES {
        return Err(Error::InvalidParam(format!(
            "copies must lie in [2, {MAX_COPIES}], got {copies}"
        )));
    }
    if weight_steps < 2 {
        return Err(Error::InvalidParam("weight_steps must be at least 2".into()));
    }
    if phase_steps < 1 {
        return Err(Error::InvalidParam("phase_steps must be at least 1".into()));
    }
    if base.is_empty() {
        return Err(Error::EmptyModel);
    }
    let weights = weight_grid(copies, weight_steps);
    let phases: Vec<f64> = (0..phase_steps)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / phase_steps as f64)
        .collect();
    let p = base.len();
    let dim = copies * base.dim();

    // enumerate composite kernels, deduping zero-weight components
    let mut columns: Vec<Vec<C64>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut point_tuple = vec![0usize; copies];
    let mut phase_tuple = vec![0usize; copies];
    loop {
        for w in &weights {
            loop {
                // canonical key: zero-weight components pinned to (0, 0)
                let key: Vec<(usize, usize, u64)> = (0..copies)
                    .map(|i| {
                        if w[i] < 1e-15 {
                            (0, 0, 0)
                        } else {
                            (point_tuple[i], phase_tuple[i], w[i].to_bits())
                        }
                    })
                    .collect();
                if seen.insert(key) {
                    if columns.len() >= FAMILY_CAP {
                        return Err(Error::FamilyTooLarge(columns.len() + 1));
                    }
                    let mut col = vec![C64::new(0.0, 0.0); dim];
                    for i in 0..copies {
                        if w[i] < 1e-15 {
                            continue;
                        }
                        let phase = if i == 0 { 0.0 } else { phases[phase_tuple[i]] };
                        let factor = C64::from_polar(w[i], phase);
                        let k = base.normalized_kernel(point_tuple[i])?;
                        for (r, &v) in k.iter().enumerate() {
                            col[i * base.dim() + r] = factor * v;
                        }
                    }
                    columns.push(col);
                }
                // advance phases of components 1.. (component 0 fixed at 0)
                if !advance(&mut phase_tuple[1..], phases.len()) {
                    break;
                }
            }
        }
        if !advance(&mut point_tuple, p) {
            break;
        }
    }

    let npoints = columns.len();
    let mut kernels = CMatrix::zeros(dim, npoints);
    let mut norms = Vec::with_capacity(npoints);
    let mut points = Vec::with_capacity(npoints);
    for (j, col) in columns.into_iter().enumerate() {
        let v = crate::CVector::from_vec(col);
        let norm = v.norm();
        debug_assert!((norm - 1.0).abs() < 1e-12, "composite kernels are unit by construction");
        kernels.set_column(j, &v);
        norms.push(norm);
        points.push(DomainPoint { id: j, payload: PointPayload::Index(j) });
    }
    Ok(KernelModel::from_parts(
        dim,
        points,
        kernels,
        norms,
        ModelKind::DirectSum { copies, base_dim: base.dim() },
    ))
}

/// Odometer increment over `digits` base-`radix` digits; false on wrap.
fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berezin::t_berezin_norm;
    use crate::model::standard_model;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn block_assembly_layout() {
        let a = Operator::from_real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = Operator::from_real(&[&[5.0, 6.0], &[7.0, 8.0]]);
        let t = block2(a.clone(), Operator::zeros(2), Operator::zeros(2), b.clone()).unwrap();
        let m = t.assemble();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.entries[(0, 1)], c(2.0, 0.0));
        assert_eq!(m.entries[(2, 2)], c(5.0, 0.0));
        assert_eq!(m.entries[(0, 2)], c(0.0, 0.0));

        // block2(A,0,0,B) applied to (x, 0) = (Ax, 0)
        let x = crate::CVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let y = &m.entries * &x;
        assert_eq!(y[0], c(-1.0, 0.0));
        assert_eq!(y[1], c(-1.0, 0.0));
        assert_eq!(y[2], c(0.0, 0.0));
        assert_eq!(y[3], c(0.0, 0.0));
    }

    #[test]
    fn block_rejects_mismatched_sizes() {
        let a = Operator::zeros(2);
        let b = Operator::zeros(3);
        assert!(block2(a.clone(), b, a.clone(), a).is_err());
    }

    #[test]
    fn permutation_conjugation_swaps_offdiagonal_blocks() {
        let a = Operator::from_real(&[&[0.0, 1.0], &[2.0, 0.0]]);
        let b = Operator::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let zero = Operator::zeros(2);
        let t = block2(zero.clone(), a.clone(), b.clone(), zero.clone()).unwrap().assemble();
        let swapped = block2(zero.clone(), b, a, zero).unwrap().assemble();
        // P = (0 I; I 0)
        let mut p = CMatrix::zeros(4, 4);
        p.view_mut((0, 2), (2, 2)).copy_from(&CMatrix::identity(2, 2));
        p.view_mut((2, 0), (2, 2)).copy_from(&CMatrix::identity(2, 2));
        let conj = p.adjoint() * &t.entries * &p;
        assert!((conj - &swapped.entries).norm() < 1e-14);
    }

    #[test]
    fn composite_kernels_are_unit_and_contain_pure_components() {
        let base = standard_model(2).unwrap();
        let ds = direct_sum_model(&base, 2, 3, 4).unwrap();
        assert_eq!(ds.dim(), 4);
        for j in 0..ds.len() {
            assert!((ds.normalized_kernel(j).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        // pure single-component kernels (k̂_λ, 0) and (0, k̂_μ) are present
        for i in 0..2 {
            for half in 0..2 {
                let mut target = crate::CVector::zeros(4);
                target[half * 2 + i] = c(1.0, 0.0);
                let found = (0..ds.len())
                    .any(|j| (ds.normalized_kernel(j).unwrap() - &target).norm() < 1e-12);
                assert!(found, "pure kernel (half {half}, basis {i}) missing");
            }
        }
    }

    #[test]
    fn equal_weight_pair_kernel_for_scalar_base() {
        let base = standard_model(1).unwrap();
        let ds = direct_sum_model(&base, 2, 3, 1).unwrap();
        let target = crate::CVector::from_vec(vec![
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ]);
        let found = (0..ds.len())
            .any(|j| (ds.normalized_kernel(j).unwrap() - &target).norm() < 1e-12);
        assert!(found);
    }

    #[test]
    fn swap_symmetry_of_offdiagonal_t_norm() {
        let base = standard_model(2).unwrap();
        let ds = direct_sum_model(&base, 2, 5, 8).unwrap();
        let a = Operator::new(CMatrix::from_fn(2, 2, |i, j| c(0.7 * i as f64 + 0.3, -0.4 * j as f64)));
        let b = Operator::new(CMatrix::from_fn(2, 2, |i, j| c(0.1 * j as f64 - 0.5, 0.2 * i as f64)));
        let zero = Operator::zeros(2);
        let t1 = block2(zero.clone(), a.clone(), b.clone(), zero.clone()).unwrap().assemble();
        let t2 = block2(zero.clone(), b, a, zero).unwrap().assemble();
        for &t in &[0.0, 0.3, 0.5] {
            let v1 = t_berezin_norm(&ds, &t1, t).unwrap().value;
            let v2 = t_berezin_norm(&ds, &t2, t).unwrap().value;
            assert!((v1 - v2).abs() <= 1e-10 * (1.0 + v1), "t={t}: {v1} vs {v2}");
        }
    }

    #[test]
    fn family_cap_enforced() {
        let base = standard_model(8).unwrap();
        // 8^4 point tuples × weights × phases blows past the cap
        assert!(matches!(
            direct_sum_model(&base, 4, 5, 8),
            Err(Error::FamilyTooLarge(_))
        ));
    }

    #[test]
    fn parameter_validation() {
        let base = standard_model(2).unwrap();
        assert!(direct_sum_model(&base, 1, 5, 8).is_err());
        assert!(direct_sum_model(&base, 5, 5, 8).is_err());
        assert!(direct_sum_model(&base, 2, 1, 8).is_err());
        assert!(direct_sum_model(&base, 2, 5, 0).is_err());
    }
}
