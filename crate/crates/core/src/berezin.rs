//! Berezin symbol, Berezin set/number, Berezin norm, and the t-Berezin
//! norm with its minimum over t.
//!
//! All quantities are maxima over the model's sampled point set.  The pair
//! scan works off a precomputed [`SymbolMatrix`] whose (μ, λ) entry is
//! ⟨A k̂_λ, k̂_μ⟩; since ⟨A* k̂_λ, k̂_μ⟩ = conj ⟨A k̂_μ, k̂_λ⟩, a single
//! matrix covers both the operator and its adjoint.
//!
//! Witness ties are broken by lowest (λ index, μ index) lexicographic
//! order so reports are deterministic.

use nalgebra::DMatrix;

use crate::calculus::operator_norm;
use crate::model::{
    hardy_kernel_norm, hardy_kernel_vector, KernelModel, ModelKind, Operator, PointPayload,
    HARDY_MAX_RADIUS,
};
use crate::{C64, Error, Result};

/// Default tolerance for the t-search in [`min_t_berezin`].
pub const DEFAULT_TOL_T: f64 = 1e-6;

/// A t-Berezin-norm (or Berezin-norm) evaluation: the value together with
/// the witness pair (λ*, μ*) attaining it and the parameter t used.
#[derive(Debug, Clone, PartialEq)]
pub struct TBerezinResult {
    pub value: f64,
    /// (λ index, μ index) attaining the maximum.
    pub witness: (usize, usize),
    pub t: f64,
}

/// A Berezin-number evaluation: the value and the witness point λ*.
#[derive(Debug, Clone, PartialEq)]
pub struct BerezinNumberResult {
    pub value: f64,
    pub witness: usize,
}

/// Result of minimizing t ↦ ‖A‖_{t-ber} over [0, 1/2].
#[derive(Debug, Clone, PartialEq)]
pub struct MinTResult {
    pub t_star: f64,
    pub value: f64,
    /// Every (t, value) pair evaluated during the search.
    pub trace: Vec<(f64, f64)>,
}

/// Precomputed table of kernel-pair symbols for one (model, operator)
/// pair: `raw[(m, l)] = ⟨A k̂_λl, k̂_λm⟩`.
#[derive(Debug, Clone)]
pub struct SymbolMatrix {
    raw: DMatrix<C64>,
    abs: DMatrix<f64>,
}

impl SymbolMatrix {
    pub fn new(model: &KernelModel, a: &Operator) -> Result<Self> {
        model.check_operator(a)?;
        if model.is_empty() {
            return Err(Error::EmptyModel);
        }
        let k = model.normalized_matrix();
        let raw = k.adjoint() * &a.entries * k;
        let abs = raw.map(|z| z.norm());
        Ok(Self { raw, abs })
    }

    pub fn len(&self) -> usize {
        self.raw.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// ⟨A k̂_λ, k̂_μ⟩ for the pair of point indices (λ, μ).
    pub fn pair(&self, lambda: usize, mu: usize) -> C64 {
        self.raw[(mu, lambda)]
    }

    /// The t-Berezin objective at one pair:
    /// t·|⟨A k̂_λ, k̂_μ⟩| + (1-t)·|⟨A* k̂_λ, k̂_μ⟩|.
    pub fn objective(&self, t: f64, lambda: usize, mu: usize) -> f64 {
        t * self.abs[(mu, lambda)] + (1.0 - t) * self.abs[(lambda, mu)]
    }

    /// max over sampled Ω of |⟨A k̂_λ, k̂_λ⟩|.
    pub fn berezin_number(&self) -> BerezinNumberResult {
        let mut best = (0usize, -1.0f64);
        for l in 0..self.len() {
            let v = self.abs[(l, l)];
            if v > best.1 {
                best = (l, v);
            }
        }
        BerezinNumberResult { value: best.1.max(0.0), witness: best.0 }
    }

    /// max over Ω × Ω of |⟨A k̂_λ, k̂_μ⟩|.
    pub fn berezin_norm(&self) -> TBerezinResult {
        self.t_norm(1.0)
    }

    /// max over Ω × Ω of the t-Berezin objective.
    pub fn t_norm(&self, t: f64) -> TBerezinResult {
        let n = self.len();
        let mut best_val = -1.0f64;
        let mut best_pair = (0usize, 0usize);
        for l in 0..n {
            for m in 0..n {
                let v = t * self.abs[(m, l)] + (1.0 - t) * self.abs[(l, m)];
                if v > best_val {
                    best_val = v;
                    best_pair = (l, m);
                }
            }
        }
        TBerezinResult { value: best_val.max(0.0), witness: best_pair, t }
    }

    /// Value-only scan, for the t-search inner loop.
    fn t_norm_value(&self, t: f64) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for l in 0..n {
            for m in 0..n {
                let v = t * self.abs[(m, l)] + (1.0 - t) * self.abs[(l, m)];
                if v > best {
                    best = v;
                }
            }
        }
        best
    }

    /// Minimizes t ↦ ‖A‖_{t-ber} by golden-section search on [0, 1/2].
    ///
    /// The map is a maximum of affine functions of t, hence convex, and
    /// symmetric about t = 1/2, so the half interval suffices.
    pub fn min_t(&self, tol_t: f64) -> Result<MinTResult> {
        if !(tol_t > 0.0) {
            return Err(Error::InvalidParam(format!("tol_t must be positive, got {tol_t}")));
        }
        let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
        let mut trace: Vec<(f64, f64)> = Vec::new();
        let eval = |t: f64, trace: &mut Vec<(f64, f64)>| {
            let v = self.t_norm_value(t);
            trace.push((t, v));
            v
        };
        let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
        eval(lo, &mut trace);
        eval(hi, &mut trace);
        let mut t1 = hi - inv_phi * (hi - lo);
        let mut t2 = lo + inv_phi * (hi - lo);
        let mut f1 = eval(t1, &mut trace);
        let mut f2 = eval(t2, &mut trace);
        while hi - lo > tol_t {
            if f1 <= f2 {
                hi = t2;
                t2 = t1;
                f2 = f1;
                t1 = hi - inv_phi * (hi - lo);
                f1 = eval(t1, &mut trace);
            } else {
                lo = t1;
                t1 = t2;
                f1 = f2;
                t2 = lo + inv_phi * (hi - lo);
                f2 = eval(t2, &mut trace);
            }
        }
        let &(t_star, value) = trace
            .iter()
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.partial_cmp(&b.0).unwrap()))
            .unwrap();
        Ok(MinTResult { t_star, value, trace })
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParam(format!("t must lie in [0, 1], got {t}")));
    }
    Ok(())
}

/// Berezin symbol Ã(λ) = ⟨A k̂_λ, k̂_λ⟩ at one sampled point.
pub fn berezin_symbol(model: &KernelModel, a: &Operator, point_index: usize) -> Result<C64> {
    model.check_operator(a)?;
    let k = model.normalized_kernel(point_index)?;
    Ok((&a.entries * &k).dotc(&k).conj())
}

/// Berezin number ber(A) = max_λ |⟨A k̂_λ, k̂_λ⟩| over the sample.
pub fn berezin_number(model: &KernelModel, a: &Operator) -> Result<BerezinNumberResult> {
    Ok(SymbolMatrix::new(model, a)?.berezin_number())
}

/// Berezin norm ‖A‖_ber = max_{λ,μ} |⟨A k̂_λ, k̂_μ⟩| over the sample.
pub fn berezin_norm(model: &KernelModel, a: &Operator) -> Result<TBerezinResult> {
    Ok(SymbolMatrix::new(model, a)?.berezin_norm())
}

/// t-Berezin norm over the sample.
pub fn t_berezin_norm(model: &KernelModel, a: &Operator, t: f64) -> Result<TBerezinResult> {
    check_t(t)?;
    Ok(SymbolMatrix::new(model, a)?.t_norm(t))
}

/// min_{t ∈ [0,1]} ‖A‖_{t-ber}; searches [0, 1/2] by symmetry.
pub fn min_t_berezin(model: &KernelModel, a: &Operator, tol_t: f64) -> Result<MinTResult> {
    SymbolMatrix::new(model, a)?.min_t(tol_t)
}

/// Outcome of the equality characterization ‖A‖_{t-ber} = ‖A‖_ber.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualityWitness {
    pub equal: bool,
    /// Pair (λ, μ) with |⟨A k̂_λ, k̂_μ⟩| and |⟨A* k̂_λ, k̂_μ⟩| both within
    /// tol of ‖A‖_ber, when equality holds.
    pub witness: Option<(usize, usize)>,
}

/// Finite-sample equality characterization: for t strictly inside (0, 1),
/// ‖A‖_{t-ber} = ‖A‖_ber iff some pair attains both inner-product
/// magnitudes at ‖A‖_ber.
pub fn equality_witness(
    model: &KernelModel,
    a: &Operator,
    t: f64,
    tol: f64,
) -> Result<EqualityWitness> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParam(format!(
            "equality characterization needs t strictly inside (0, 1), got {t}"
        )));
    }
    let sym = SymbolMatrix::new(model, a)?;
    let norm = sym.berezin_norm().value;
    let tber = sym.t_norm(t).value;
    let equal = (tber - norm).abs() <= tol;
    let mut witness = None;
    if equal {
        let n = sym.len();
        'outer: for l in 0..n {
            for m in 0..n {
                if sym.abs[(m, l)] >= norm - tol && sym.abs[(l, m)] >= norm - tol {
                    witness = Some((l, m));
                    break 'outer;
                }
            }
        }
    }
    Ok(EqualityWitness { equal, witness })
}

/// Outcome of the unitary characterization.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryCheck {
    pub unitary: bool,
    pub tber_gram: f64,
    pub tber_gram_inv: f64,
}

/// Unitary characterization: an invertible A is unitary iff
/// ‖A*A‖_{t-ber} ≤ 1 and ‖(A*A)^{-1}‖_{t-ber} ≤ 1.
///
/// The "if" direction relies on the sampled kernels spanning the space,
/// which holds for the standard model; on other sampled models only the
/// forward direction is meaningful.
pub fn unitary_check(
    model: &KernelModel,
    a: &Operator,
    t: f64,
    tol: f64,
) -> Result<UnitaryCheck> {
    check_t(t)?;
    model.check_operator(a)?;
    let svs = a.entries.singular_values();
    let smin = svs.iter().fold(f64::INFINITY, |m, &s| m.min(s));
    let scale = operator_norm(&a.entries);
    if smin <= 1e-10 * scale {
        return Err(Error::Singular(smin));
    }
    let gram = crate::calculus::HermitianMatrix::new(a.entries.adjoint() * &a.entries)?;
    let gram_inv = crate::calculus::apply_spectral(&gram, |x| 1.0 / x)?;
    let tber_gram = t_berezin_norm(model, &gram.as_operator(), t)?.value;
    let tber_gram_inv = t_berezin_norm(model, &gram_inv.as_operator(), t)?.value;
    Ok(UnitaryCheck {
        unitary: tber_gram <= 1.0 + tol && tber_gram_inv <= 1.0 + tol,
        tber_gram,
        tber_gram_inv,
    })
}

/// A refined supremum estimate over off-grid disk points.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedValue {
    pub value: f64,
    pub lambda: C64,
    pub mu: C64,
}

/// Local refinement of the t-Berezin supremum for Hardy models: starting
/// at the grid witness, re-grid a 3×3 polar neighborhood of each witness
/// coordinate at 4× resolution, repeated for `rounds` rounds.
///
/// Use t = 1 for the Berezin norm.  Only models with disk payloads can be
/// refined.
pub fn refine_t_norm(
    model: &KernelModel,
    a: &Operator,
    t: f64,
    rounds: usize,
) -> Result<RefinedValue> {
    check_t(t)?;
    let ModelKind::Hardy { trunc, radial_step, angular_step } = *model.kind() else {
        return Err(Error::NotRefinable);
    };
    let grid = SymbolMatrix::new(model, a)?.t_norm(t);
    let lam0 = disk_coordinate(model, grid.witness.0)?;
    let mu0 = disk_coordinate(model, grid.witness.1)?;
    let objective = |lam: C64, mu: C64| -> f64 {
        let kl = hardy_kernel_vector(trunc, lam).scale(1.0 / hardy_kernel_norm(trunc, lam));
        let km = hardy_kernel_vector(trunc, mu).scale(1.0 / hardy_kernel_norm(trunc, mu));
        let fwd = (&a.entries * &kl).dotc(&km).norm();
        let bwd = (&a.entries * &km).dotc(&kl).norm();
        t * fwd + (1.0 - t) * bwd
    };
    let mut best = RefinedValue { value: grid.value, lambda: lam0, mu: mu0 };
    let (mut dr, mut dth) = (radial_step, angular_step);
    for _ in 0..rounds {
        dr /= 4.0;
        dth /= 4.0;
        let lam_cands = polar_neighborhood(best.lambda, dr, dth);
        let mu_cands = polar_neighborhood(best.mu, dr, dth);
        for &lam in &lam_cands {
            for &mu in &mu_cands {
                let v = objective(lam, mu);
                if v > best.value {
                    best = RefinedValue { value: v, lambda: lam, mu };
                }
            }
        }
    }
    Ok(best)
}

/// Refinement of the Berezin number (diagonal pairs λ = μ only).
pub fn refine_berezin_number(
    model: &KernelModel,
    a: &Operator,
    rounds: usize,
) -> Result<RefinedValue> {
    let ModelKind::Hardy { trunc, radial_step, angular_step } = *model.kind() else {
        return Err(Error::NotRefinable);
    };
    let grid = SymbolMatrix::new(model, a)?.berezin_number();
    let lam0 = disk_coordinate(model, grid.witness)?;
    let symbol_abs = |lam: C64| -> f64 {
        let k = hardy_kernel_vector(trunc, lam).scale(1.0 / hardy_kernel_norm(trunc, lam));
        (&a.entries * &k).dotc(&k).norm()
    };
    let mut best = RefinedValue { value: grid.value, lambda: lam0, mu: lam0 };
    let (mut dr, mut dth) = (radial_step, angular_step);
    for _ in 0..rounds {
        dr /= 4.0;
        dth /= 4.0;
        for &lam in &polar_neighborhood(best.lambda, dr, dth) {
            let v = symbol_abs(lam);
            if v > best.value {
                best = RefinedValue { value: v, lambda: lam, mu: lam };
            }
        }
    }
    Ok(best)
}

fn disk_coordinate(model: &KernelModel, index: usize) -> Result<C64> {
    match model.point(index)?.payload {
        PointPayload::Disk(z) => Ok(z),
        PointPayload::Index(_) => Err(Error::NotRefinable),
    }
}

fn polar_neighborhood(center: C64, dr: f64, dth: f64) -> Vec<C64> {
    let (r0, th0) = center.to_polar();
    let mut out = Vec::with_capacity(9);
    for i in -1i32..=1 {
        let r = (r0 + i as f64 * dr).clamp(0.0, HARDY_MAX_RADIUS);
        for j in -1i32..=1 {
            out.push(C64::from_polar(r, th0 + j as f64 * dth));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{hardy_model, standard_model};
    use crate::CMatrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn nilpotent2() -> Operator {
        Operator::from_real(&[&[0.0, 1.0], &[0.0, 0.0]])
    }

    #[test]
    fn symbol_on_standard_model_is_diagonal() {
        let m = standard_model(2).unwrap();
        let a = Operator::from_real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(berezin_symbol(&m, &a, 0).unwrap(), c(1.0, 0.0));
        assert_eq!(berezin_symbol(&m, &a, 1).unwrap(), c(4.0, 0.0));
    }

    #[test]
    fn symbol_of_identity_is_one_everywhere() {
        let m = hardy_model(6, &[0.3, 0.8], 8).unwrap();
        let a = Operator::identity(7);
        for j in 0..m.len() {
            assert!((berezin_symbol(&m, &a, j).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    /// Closed-form symbol of the truncated shift: λ(1-|λ|^{2N})/(1-|λ|^{2(N+1)}).
    fn shift_symbol(trunc: usize, lam: C64) -> C64 {
        let rho2 = lam.norm_sqr();
        if rho2 == 0.0 {
            return c(0.0, 0.0);
        }
        lam * ((1.0 - rho2.powi(trunc as i32)) / (1.0 - rho2.powi(trunc as i32 + 1)))
    }

    fn shift_matrix(dim: usize) -> Operator {
        Operator::new(CMatrix::from_fn(dim, dim, |i, j| {
            if i == j + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) }
        }))
    }

    #[test]
    fn shift_symbol_matches_closed_form() {
        let trunc = 12;
        let m = hardy_model(trunc, &[0.2, 0.6, 0.95], 8).unwrap();
        let s = shift_matrix(trunc + 1);
        for p in m.points() {
            let PointPayload::Disk(lam) = p.payload else { panic!() };
            let computed = berezin_symbol(&m, &s, p.id).unwrap();
            let expect = shift_symbol(trunc, lam);
            assert!((computed - expect).norm() <= 1e-10 * (1.0 + expect.norm()));
        }
    }

    #[test]
    fn berezin_number_examples() {
        let m = standard_model(2).unwrap();
        let a = Operator::from_real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        // exhaustive oracle over basis vectors
        let oracle = (0..2)
            .map(|i| a.entries[(i, i)].norm())
            .fold(0.0f64, f64::max);
        let r = berezin_number(&m, &a).unwrap();
        assert_eq!(r.value, oracle);
        assert_eq!(r.value, 4.0);
        assert_eq!(r.witness, 1);

        assert_eq!(berezin_number(&m, &nilpotent2()).unwrap().value, 0.0);
    }

    #[test]
    fn berezin_norm_examples() {
        let m = standard_model(2).unwrap();
        let a = Operator::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, -2.0), c(0.5, 0.0), c(3.0, 4.0), c(0.0, 1.0)],
        ));
        // exhaustive oracle: brute-force inner products over all basis pairs
        let mut oracle = 0.0f64;
        for l in 0..2 {
            for mu in 0..2 {
                let kl = m.normalized_kernel(l).unwrap();
                let km = m.normalized_kernel(mu).unwrap();
                oracle = oracle.max((&a.entries * kl).dotc(&km).norm());
            }
        }
        let r = berezin_norm(&m, &a).unwrap();
        assert!((r.value - oracle).abs() < 1e-14);
        assert!((r.value - 5.0).abs() < 1e-14);

        assert_eq!(berezin_norm(&m, &nilpotent2()).unwrap().value, 1.0);
        assert_eq!(berezin_norm(&m, &Operator::zeros(2)).unwrap().value, 0.0);
    }

    #[test]
    fn berezin_norm_of_adjoint_is_equal() {
        let m = hardy_model(5, &[0.4, 0.9], 6).unwrap();
        let a = Operator::new(CMatrix::from_fn(6, 6, |i, j| {
            c((i as f64 - j as f64) * 0.3, 0.1 * (i * j) as f64)
        }));
        let n1 = berezin_norm(&m, &a).unwrap().value;
        let n2 = berezin_norm(&m, &a.adjoint()).unwrap().value;
        assert!((n1 - n2).abs() < 1e-12 * (1.0 + n1));
    }

    #[test]
    fn t_norm_of_nilpotent_is_max_t() {
        let m = standard_model(2).unwrap();
        let a = nilpotent2();
        for &t in &[0.0, 0.1, 0.3, 0.5, 0.7, 1.0] {
            let r = t_berezin_norm(&m, &a, t).unwrap();
            assert!((r.value - t.max(1.0 - t)).abs() < 1e-15);
            // re-evaluating the objective at the witness reproduces the value
            let sym = SymbolMatrix::new(&m, &a).unwrap();
            assert!((sym.objective(t, r.witness.0, r.witness.1) - r.value).abs() <= 1e-12);
        }
    }

    #[test]
    fn t_norm_of_hermitian_is_t_independent() {
        let m = standard_model(3).unwrap();
        let g = CMatrix::from_fn(3, 3, |i, j| c(0.4 * (i + j) as f64, (i as f64 - j as f64) * 0.2));
        let a = Operator::new((g.adjoint() + &g).scale(0.5));
        let norm = berezin_norm(&m, &a).unwrap().value;
        let sym = SymbolMatrix::new(&m, &a).unwrap();
        // pointwise: the two objective terms coincide for Hermitian A
        for l in 0..3 {
            for mu in 0..3 {
                assert!((sym.abs[(mu, l)] - sym.abs[(l, mu)]).abs() < 1e-14);
            }
        }
        for &t in &[0.0, 0.25, 0.5, 0.9] {
            assert!((t_berezin_norm(&m, &a, t).unwrap().value - norm).abs() < 1e-13);
        }
    }

    #[test]
    fn t_norm_of_ones_matrix_is_one() {
        let m = standard_model(2).unwrap();
        let a = Operator::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]);
        for &t in &[0.0, 0.3, 0.5, 1.0] {
            assert!((t_berezin_norm(&m, &a, t).unwrap().value - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn t_norm_rejects_bad_t() {
        let m = standard_model(2).unwrap();
        assert!(t_berezin_norm(&m, &nilpotent2(), 1.5).is_err());
        assert!(t_berezin_norm(&m, &nilpotent2(), -0.1).is_err());
    }

    #[test]
    fn t_symmetry_exact() {
        let m = standard_model(4).unwrap();
        let a = Operator::new(CMatrix::from_fn(4, 4, |i, j| c(0.7 * i as f64, -0.3 * j as f64)));
        for &t in &[0.0, 0.2, 0.35, 0.5] {
            let v1 = t_berezin_norm(&m, &a, t).unwrap().value;
            let v2 = t_berezin_norm(&m, &a, 1.0 - t).unwrap().value;
            assert_eq!(v1, v2);
        }
    }

    #[test]
    fn sandwich_ordering() {
        let m = standard_model(3).unwrap();
        let a = Operator::new(CMatrix::from_fn(3, 3, |i, j| c(i as f64 - 1.0, j as f64 * 0.5)));
        let norm = berezin_norm(&m, &a).unwrap().value;
        for &t in &[0.0, 0.25, 0.5, 0.8, 1.0] {
            let tn = t_berezin_norm(&m, &a, t).unwrap().value;
            assert!(0.5 * norm <= t.max(1.0 - t) * norm + 1e-12);
            assert!(t.max(1.0 - t) * norm <= tn + 1e-12);
            assert!(tn <= norm + 1e-12);
        }
    }

    #[test]
    fn min_t_examples() {
        let m = standard_model(2).unwrap();
        let r = min_t_berezin(&m, &nilpotent2(), 1e-8).unwrap();
        assert!((r.t_star - 0.5).abs() < 1e-6);
        assert!((r.value - 0.5).abs() < 1e-9);
        // value never exceeds any trace entry
        for &(_, v) in &r.trace {
            assert!(r.value <= v + 1e-15);
        }

        let ones = Operator::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!((min_t_berezin(&m, &ones, 1e-8).unwrap().value - 1.0).abs() < 1e-12);

        let herm = Operator::from_real(&[&[2.0, 1.0], &[1.0, -1.0]]);
        let norm = berezin_norm(&m, &herm).unwrap().value;
        assert!((min_t_berezin(&m, &herm, 1e-8).unwrap().value - norm).abs() < 1e-12);
    }

    #[test]
    fn min_t_dominates_berezin_number() {
        let m = standard_model(3).unwrap();
        let a = Operator::new(CMatrix::from_fn(3, 3, |i, j| c(0.9 * j as f64, -(i as f64))));
        let r = min_t_berezin(&m, &a, 1e-7).unwrap();
        assert!(r.value + 1e-12 >= berezin_number(&m, &a).unwrap().value);
    }

    #[test]
    fn convexity_in_t() {
        let m = standard_model(3).unwrap();
        let a = Operator::new(CMatrix::from_fn(3, 3, |i, j| c(1.0 - i as f64, 0.4 * j as f64)));
        let f = |t: f64| t_berezin_norm(&m, &a, t).unwrap().value;
        let (t1, t2, t3) = (0.1, 0.3, 0.8);
        let w = (t2 - t1) / (t3 - t1);
        assert!(f(t2) <= (1.0 - w) * f(t1) + w * f(t3) + 1e-12);
    }

    #[test]
    fn equality_witness_cases() {
        let m = standard_model(2).unwrap();
        // Hermitian: always equal, with a valid witness
        let herm = Operator::from_real(&[&[1.0, 3.0], &[3.0, -2.0]]);
        let r = equality_witness(&m, &herm, 0.3, 1e-9).unwrap();
        assert!(r.equal);
        let (l, mu) = r.witness.unwrap();
        let sym = SymbolMatrix::new(&m, &herm).unwrap();
        let norm = sym.berezin_norm().value;
        assert!(sym.abs[(mu, l)] >= norm - 1e-9 && sym.abs[(l, mu)] >= norm - 1e-9);

        // nilpotent at t=0.3: 0.7 < 1
        let r = equality_witness(&m, &nilpotent2(), 0.3, 1e-9).unwrap();
        assert!(!r.equal);
        assert!(r.witness.is_none());

        // zero operator: trivially equal
        let r = equality_witness(&m, &Operator::zeros(2), 0.5, 1e-9).unwrap();
        assert!(r.equal);

        // endpoints rejected
        assert!(equality_witness(&m, &herm, 0.0, 1e-9).is_err());
        assert!(equality_witness(&m, &herm, 1.0, 1e-9).is_err());
    }

    #[test]
    fn unitary_check_cases() {
        let m = standard_model(2).unwrap();
        let th = 1.1_f64;
        let u = Operator::new(CMatrix::from_row_slice(
            2,
            2,
            &[
                c(th.cos(), 0.0),
                c(-th.sin(), 0.0),
                c(th.sin(), 0.0),
                c(th.cos(), 0.0),
            ],
        ));
        let r = unitary_check(&m, &u, 0.4, 1e-9).unwrap();
        assert!(r.unitary);
        assert!((r.tber_gram - 1.0).abs() < 1e-10);
        assert!((r.tber_gram_inv - 1.0).abs() < 1e-10);

        let big = Operator::from_real(&[&[2.0, 0.0], &[0.0, 1.0]]);
        let r = unitary_check(&m, &big, 0.4, 1e-9).unwrap();
        assert!(!r.unitary);
        assert!((r.tber_gram - 4.0).abs() < 1e-10);

        let small = Operator::from_real(&[&[0.5, 0.0], &[0.0, 1.0]]);
        let r = unitary_check(&m, &small, 0.4, 1e-9).unwrap();
        assert!(!r.unitary);
        assert!((r.tber_gram_inv - 4.0).abs() < 1e-10);

        let singular = Operator::from_real(&[&[1.0, 0.0], &[0.0, 0.0]]);
        assert!(matches!(unitary_check(&m, &singular, 0.4, 1e-9), Err(Error::Singular(_))));
    }

    #[test]
    fn berezin_number_equals_norm_on_diagonal_pairs() {
        let m = hardy_model(4, &[0.5, 0.9], 6).unwrap();
        let a = Operator::new(CMatrix::from_fn(5, 5, |i, j| c(0.2 * i as f64, 0.1 * j as f64)));
        let sym = SymbolMatrix::new(&m, &a).unwrap();
        let diag_max = (0..sym.len()).map(|l| sym.abs[(l, l)]).fold(0.0f64, f64::max);
        assert_eq!(sym.berezin_number().value, diag_max);
    }

    #[test]
    fn refinement_improves_coarse_grid() {
        // Coarse grid: the shift's supremum sits near the boundary, which
        // the grid misses; refinement must not decrease the estimate.
        let trunc = 16;
        let m = hardy_model(trunc, &[0.3, 0.6], 4).unwrap();
        let s = shift_matrix(trunc + 1);
        let grid = berezin_number(&m, &s).unwrap().value;
        let refined = refine_berezin_number(&m, &s, 2).unwrap();
        assert!(refined.value >= grid);
        let pair = refine_t_norm(&m, &s, 1.0, 2).unwrap();
        assert!(pair.value >= berezin_norm(&m, &s).unwrap().value);
    }

    #[test]
    fn refinement_rejects_standard_model() {
        let m = standard_model(2).unwrap();
        assert!(matches!(
            refine_berezin_number(&m, &nilpotent2(), 2),
            Err(Error::NotRefinable)
        ));
    }
}
