//! Orlicz functions, power interpolation pairs and scalar weights used by
//! the refined inequality family.
//!
//! An Orlicz function here is a continuous, convex, nondecreasing
//! φ : [0, ∞) → [0, ∞) with φ(0) = 0 that is not identically zero.
//! Custom functions are validated numerically on a fixed log-spaced grid;
//! the power family φ(t) = t^r with r ≥ 1 is validated analytically.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::calculus::{apply_spectral, HermitianMatrix};
use crate::{Error, Result};

/// Upper end of the validation grid.
pub const GRID_MAX: f64 = 1.0e3;
/// Number of log-spaced validation points (0 is added separately).
pub const GRID_POINTS: usize = 1024;

/// Validation grid: 0 together with 1024 log-spaced points in
/// [1e-6, 1e3].
pub fn validation_grid() -> Vec<f64> {
    let mut g = Vec::with_capacity(GRID_POINTS + 1);
    g.push(0.0);
    for k in 0..GRID_POINTS {
        let e = -6.0 + 9.0 * k as f64 / (GRID_POINTS - 1) as f64;
        g.push(10f64.powf(e));
    }
    g
}

#[derive(Clone)]
enum OrliczKind {
    Power { r: f64 },
    Custom { label: String, f: Arc<dyn Fn(f64) -> f64 + Send + Sync> },
}

/// A validated Orlicz function.
#[derive(Clone)]
pub struct OrliczFn {
    kind: OrliczKind,
}

impl std::fmt::Debug for OrliczFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            OrliczKind::Power { r } => write!(f, "OrliczFn::Power(r = {r})"),
            OrliczKind::Custom { label, .. } => write!(f, "OrliczFn::Custom({label})"),
        }
    }
}

impl OrliczFn {
    /// φ(t) = t^r.  Requires r ≥ 1 (convexity).  Submultiplicative with
    /// equality: (xy)^r = x^r y^r.
    pub fn power(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 1.0 {
            return Err(Error::NotOrlicz(format!("power exponent must satisfy r >= 1, got {r}")));
        }
        Ok(Self { kind: OrliczKind::Power { r } })
    }

    /// Wraps an arbitrary scalar function after checking the Orlicz axioms
    /// (φ(0) = 0, nonnegativity, monotonicity, midpoint convexity, not
    /// identically zero) on [`validation_grid`].
    pub fn custom(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let label = label.into();
        let grid = validation_grid();
        let vals: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
        if vals[0].abs() > 1e-12 {
            return Err(Error::NotOrlicz(format!("{label}: phi(0) = {} != 0", vals[0])));
        }
        for (&t, &v) in grid.iter().zip(&vals) {
            if !v.is_finite() || v < -1e-12 {
                return Err(Error::NotOrlicz(format!("{label}: phi({t}) = {v} is negative")));
            }
        }
        for (w, tw) in vals.windows(2).zip(grid.windows(2)) {
            if w[1] < w[0] - 1e-12 * (1.0 + w[0].abs()) {
                return Err(Error::NotOrlicz(format!(
                    "{label}: decreasing between {} and {}",
                    tw[0], tw[1]
                )));
            }
        }
        // midpoint convexity on the grid (midpoints taken in t, not index)
        for w in grid.windows(3) {
            let mid = 0.5 * (w[0] + w[2]);
            let chord = 0.5 * (f(w[0]) + f(w[2]));
            let fm = f(mid);
            if fm > chord + 1e-10 * (1.0 + chord.abs()) {
                return Err(Error::NotOrlicz(format!(
                    "{label}: not convex near t = {mid} (phi(mid) = {fm}, chord = {chord})"
                )));
            }
        }
        if vals.last().copied().unwrap_or(0.0) <= 0.0 {
            return Err(Error::NotOrlicz(format!("{label}: identically zero on the grid")));
        }
        Ok(Self { kind: OrliczKind::Custom { label, f: Arc::new(f) } })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            OrliczKind::Power { r } => t.powf(*r),
            OrliczKind::Custom { f, .. } => f(t),
        }
    }

    /// φ(H) by spectral calculus; H must be PSD.
    pub fn apply(&self, h: &HermitianMatrix) -> Result<HermitianMatrix> {
        apply_spectral(h, |t| self.eval(t))
    }

    /// Whether φ(xy) ≤ φ(x)φ(y) holds: analytically true for powers,
    /// grid-checked for custom functions.
    pub fn is_submultiplicative(&self) -> bool {
        match &self.kind {
            OrliczKind::Power { .. } => true,
            OrliczKind::Custom { .. } => self.check_submultiplicative().ok,
        }
    }

    /// Scans x, y over a subsampled grid for violations of
    /// φ(xy) ≤ φ(x)φ(y), reporting the worst pair.
    pub fn check_submultiplicative(&self) -> SubmultReport {
        let grid: Vec<f64> = validation_grid().into_iter().step_by(8).collect();
        let mut worst = SubmultReport { ok: true, x: 0.0, y: 0.0, deficit: 0.0 };
        for &x in &grid {
            for &y in &grid {
                let p = x * y;
                // keep the product inside the validated range
                if p > GRID_MAX {
                    continue;
                }
                let deficit = self.eval(p) - self.eval(x) * self.eval(y);
                if deficit > 1e-10 * (1.0 + self.eval(p).abs()) && deficit > worst.deficit {
                    worst = SubmultReport { ok: false, x, y, deficit };
                }
            }
        }
        worst
    }
}

/// Result of a submultiplicativity scan: the worst violating pair, if any.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SubmultReport {
    pub ok: bool,
    pub x: f64,
    pub y: f64,
    pub deficit: f64,
}

/// Serializable description of an Orlicz function.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum OrliczSpec {
    Power { r: f64 },
}

impl OrliczSpec {
    pub fn build(&self) -> Result<OrliczFn> {
        match self {
            OrliczSpec::Power { r } => OrliczFn::power(*r),
        }
    }
}

#[derive(Deserialize)]
struct PairRaw {
    s: f64,
}

/// The interpolation pair g(t) = t^s, h(t) = t^{1-s} with s ∈ [0, 1],
/// satisfying g(t)·h(t) = t.  The convention 0^0 = 1 applies at the
/// endpoints, so e.g. g²(|A|) = I when s = 0.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(try_from = "PairRaw")]
pub struct PowerPair {
    s: f64,
}

impl TryFrom<PairRaw> for PowerPair {
    type Error = Error;
    fn try_from(raw: PairRaw) -> Result<Self> {
        Self::new(raw.s)
    }
}

impl PowerPair {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidParam(format!("pair exponent s must lie in [0, 1], got {s}")));
        }
        Ok(Self { s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// g²(H) = H^{2s}.
    pub fn g2(&self, h: &HermitianMatrix) -> Result<HermitianMatrix> {
        apply_spectral(h, |t| pow_conv(t, 2.0 * self.s))
    }

    /// g⁴(H) = H^{4s}.
    pub fn g4(&self, h: &HermitianMatrix) -> Result<HermitianMatrix> {
        apply_spectral(h, |t| pow_conv(t, 4.0 * self.s))
    }

    /// h²(H) = H^{2(1-s)}.
    pub fn h2(&self, h: &HermitianMatrix) -> Result<HermitianMatrix> {
        apply_spectral(h, |t| pow_conv(t, 2.0 * (1.0 - self.s)))
    }

    /// h⁴(H) = H^{4(1-s)}.
    pub fn h4(&self, h: &HermitianMatrix) -> Result<HermitianMatrix> {
        apply_spectral(h, |t| pow_conv(t, 4.0 * (1.0 - self.s)))
    }
}

/// t^e with the convention 0^0 = 1 (so zero exponents yield the identity
/// under spectral calculus).
fn pow_conv(t: f64, e: f64) -> f64 {
    if e == 0.0 { 1.0 } else { t.powf(e) }
}

#[derive(Deserialize)]
struct WeightRaw {
    alpha: f64,
}

/// A nonnegative scalar weight α splitting the refined bounds into the
/// convex combination α/(2(1+α)) and 1/(2(1+α)).
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(try_from = "WeightRaw")]
pub struct WeightFn {
    alpha: f64,
}

impl TryFrom<WeightRaw> for WeightFn {
    type Error = Error;
    fn try_from(raw: WeightRaw) -> Result<Self> {
        Self::new(raw.alpha)
    }
}

impl WeightFn {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParam(format!("weight alpha must be >= 0, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// α/(2(1+α)).
    pub fn major(&self) -> f64 {
        self.alpha / (2.0 * (1.0 + self.alpha))
    }

    /// 1/(2(1+α)).
    pub fn minor(&self) -> f64 {
        1.0 / (2.0 * (1.0 + self.alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CMatrix;
    use crate::C64;

    fn diag(values: &[f64]) -> HermitianMatrix {
        let n = values.len();
        HermitianMatrix::new(CMatrix::from_fn(n, n, |i, j| {
            if i == j { C64::new(values[i], 0.0) } else { C64::new(0.0, 0.0) }
        }))
        .unwrap()
    }

    #[test]
    fn power_evaluation() {
        let phi = OrliczFn::power(2.0).unwrap();
        assert_eq!(phi.eval(3.0), 9.0);
        assert_eq!(phi.eval(0.0), 0.0);
        let lin = OrliczFn::power(1.0).unwrap();
        assert_eq!(lin.eval(0.7), 0.7);
    }

    #[test]
    fn power_rejects_sublinear() {
        assert!(OrliczFn::power(0.5).is_err());
        assert!(OrliczFn::power(f64::NAN).is_err());
    }

    #[test]
    fn power_is_submultiplicative() {
        let phi = OrliczFn::power(3.0).unwrap();
        assert!(phi.is_submultiplicative());
        assert!(phi.check_submultiplicative().ok);
    }

    #[test]
    fn matrix_application_matches_eigenvalue_powers() {
        let phi = OrliczFn::power(2.0).unwrap();
        let h = diag(&[0.0, 1.0, 3.0]);
        let out = phi.apply(&h).unwrap();
        let expect = diag(&[0.0, 1.0, 9.0]);
        assert!((out.entries() - expect.entries()).norm() < 1e-12);
    }

    #[test]
    fn custom_matches_power() {
        let phi = OrliczFn::custom("square", |t| t * t).unwrap();
        let pow = OrliczFn::power(2.0).unwrap();
        for &t in &[0.0, 0.3, 1.0, 7.5] {
            assert!((phi.eval(t) - pow.eval(t)).abs() < 1e-12);
        }
        assert!(phi.is_submultiplicative());
    }

    #[test]
    fn hinge_function_is_orlicz_but_not_submultiplicative() {
        let phi = OrliczFn::custom("hinge", |t| (t - 1.0).max(0.0)).unwrap();
        let rep = phi.check_submultiplicative();
        assert!(!rep.ok);
        // phi(4) = 3 > phi(2)*phi(2) = 1
        assert!(rep.deficit > 0.5);
        assert!(!phi.is_submultiplicative());
    }

    #[test]
    fn custom_rejects_non_orlicz() {
        assert!(OrliczFn::custom("sqrt", f64::sqrt).is_err()); // concave
        assert!(OrliczFn::custom("affine", |t| t + 1.0).is_err()); // phi(0) != 0
        assert!(OrliczFn::custom("negated", |t| -t).is_err()); // negative
        assert!(OrliczFn::custom("zero", |_| 0.0).is_err()); // identically zero
    }

    #[test]
    fn pair_interpolates() {
        let pair = PowerPair::new(0.25).unwrap();
        let h = diag(&[0.0, 4.0]);
        let g2 = pair.g2(&h).unwrap();
        let h2 = pair.h2(&h).unwrap();
        // g²(t)·h²(t) = t² entrywise on the spectrum
        let prod = g2.entries() * h2.entries();
        let expect = diag(&[0.0, 16.0]);
        assert!((prod - expect.entries()).norm() < 1e-10);
        assert!((g2.entries()[(1, 1)].re - 4f64.powf(0.5)).abs() < 1e-12);
    }

    #[test]
    fn pair_endpoint_uses_zero_power_convention() {
        let pair = PowerPair::new(0.0).unwrap();
        let h = diag(&[0.0, 2.0, 5.0]);
        let g2 = pair.g2(&h).unwrap();
        assert!((g2.entries() - CMatrix::identity(3, 3)).norm() < 1e-12);
        let h4 = pair.h4(&h).unwrap();
        let expect = diag(&[0.0, 16.0, 625.0]);
        assert!((h4.entries() - expect.entries()).norm() < 1e-10);
    }

    #[test]
    fn pair_rejects_out_of_range() {
        assert!(PowerPair::new(-0.1).is_err());
        assert!(PowerPair::new(1.1).is_err());
    }

    #[test]
    fn weight_coefficients_sum_to_half() {
        for &alpha in &[0.0, 0.5, 1.0, 7.0] {
            let w = WeightFn::new(alpha).unwrap();
            assert!((w.major() + w.minor() - 0.5).abs() < 1e-15);
        }
        let w = WeightFn::new(1.0).unwrap();
        assert!((w.major() - 0.25).abs() < 1e-15);
        assert!(WeightFn::new(-1.0).is_err());
    }

    #[test]
    fn specs_deserialize_and_validate() {
        let phi: OrliczSpec = serde_json::from_str(r#"{"kind":"power","r":2.0}"#).unwrap();
        assert_eq!(phi.build().unwrap().eval(3.0), 9.0);
        assert!(serde_json::from_str::<OrliczSpec>(r#"{"kind":"power","r":0.5}"#)
            .unwrap()
            .build()
            .is_err());
        let pair: PowerPair = serde_json::from_str(r#"{"s":0.5}"#).unwrap();
        assert_eq!(pair.s(), 0.5);
        assert!(serde_json::from_str::<PowerPair>(r#"{"s":2.0}"#).is_err());
        let w: WeightFn = serde_json::from_str(r#"{"alpha":1.0}"#).unwrap();
        assert_eq!(w.alpha(), 1.0);
        assert!(serde_json::from_str::<WeightFn>(r#"{"alpha":-1.0}"#).is_err());
    }
}
