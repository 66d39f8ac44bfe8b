//! Catalog of t-Berezin / Berezin-number inequalities.
//!
//! Every evaluator computes both sides of one inequality on a concrete
//! model and operator tuple and returns a [`BoundReport`] per asserted
//! line.  Tolerances are relative: lhs ≤ rhs + tol_coeff·(1 + |lhs| + |rhs|).
//!
//! [`EvalOpts::rhs_scale`] deliberately miscales the right side and exists
//! only for the mutation self-test of the verification harness.

use serde::Serialize;
use serde_json::{json, Value};

use crate::berezin::SymbolMatrix;
use crate::blocks::{block2, block_n, BlockOperator};
use crate::calculus::{
    absolute_pair, apply_spectral, commutation_residual, default_commutation_tol,
    operator_norm_real, spectral_radius, HermitianMatrix,
};
use crate::model::{KernelModel, Operator};
use crate::orlicz::{OrliczFn, PowerPair, WeightFn};
use crate::{CMatrix, Error, Result};

/// Stable identifiers of every bound in the catalog.
pub const BOUND_IDS: &[&str] = &[
    "sandwich",
    "product",
    "mixed",
    "taghavi_chain",
    "convexity_axioms",
    "block_diag",
    "block_offdiag_single",
    "block_offdiag",
    "block_2x2",
    "block_nxn",
    "orlicz_main",
    "th6_cor1",
    "th6_cor2",
    "orlicz_product",
    "th7_cor1",
    "th7_cor2",
    "basaran",
    "dcds",
    "mjm",
    "axioms_th3",
    "axioms_th4",
    "th8_first",
    "th8_second",
];

/// Evaluation options shared by all bounds.
#[derive(Debug, Clone, Copy)]
pub struct EvalOpts {
    /// Multiplier applied to every right side; 1.0 in normal operation.
    pub rhs_scale: f64,
    /// Relative tolerance coefficient for lhs ≤ rhs + tol.
    pub tol_coeff: f64,
}

impl Default for EvalOpts {
    fn default() -> Self {
        Self { rhs_scale: 1.0, tol_coeff: 1e-9 }
    }
}

/// Outcome of one asserted inequality line.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub bound_id: String,
    /// Distinguishes the lines of multi-line bounds.
    pub part: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs after scaling; negative means violated beyond roundoff.
    pub slack: f64,
    pub holds: bool,
    pub params: Value,
    pub witnesses: Value,
    pub warning: Option<String>,
}

fn report(
    id: &str,
    part: Option<&str>,
    lhs: f64,
    rhs: f64,
    opts: &EvalOpts,
    params: Value,
    witnesses: Value,
    warning: Option<String>,
) -> BoundReport {
    let rhs = rhs * opts.rhs_scale;
    let tol = opts.tol_coeff * (1.0 + lhs.abs() + rhs.abs());
    BoundReport {
        bound_id: id.to_string(),
        part: part.map(str::to_string),
        lhs,
        rhs,
        slack: rhs - lhs,
        holds: lhs <= rhs + tol,
        params,
        witnesses,
        warning,
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParam(format!("t must lie in [0, 1], got {t}")));
    }
    Ok(())
}

fn check_exponent(r: f64, min: f64) -> Result<()> {
    if !r.is_finite() || r < min {
        return Err(Error::InvalidParam(format!("exponent must satisfy r >= {min}, got {r}")));
    }
    Ok(())
}

fn ber(model: &KernelModel, m: CMatrix) -> Result<f64> {
    Ok(SymbolMatrix::new(model, &Operator::new(m))?.berezin_number().value)
}

fn ber_norm(model: &KernelModel, m: CMatrix) -> Result<f64> {
    Ok(SymbolMatrix::new(model, &Operator::new(m))?.berezin_norm().value)
}

/// H^e by spectral calculus, for PSD H and e ≥ 1.
fn power(h: &HermitianMatrix, e: f64) -> Result<HermitianMatrix> {
    apply_spectral(h, |x| x.powf(e))
}

/// The sandwich chain
/// ½‖A‖_ber ≤ max{t,1-t}‖A‖_ber ≤ ‖A‖_{t-ber} ≤ ‖A‖_ber,
/// asserted as three lines.
pub fn sandwich(
    model: &KernelModel,
    a: &Operator,
    t: f64,
    opts: &EvalOpts,
) -> Result<Vec<BoundReport>> {
    check_t(t)?;
    let sym = SymbolMatrix::new(model, a)?;
    let norm = sym.berezin_norm();
    let tn = sym.t_norm(t);
    let mt = t.max(1.0 - t);
    let params = json!({ "t": t });
    let wit = json!({ "norm_witness": norm.witness, "t_witness": tn.witness });
    Ok(vec![
        report("sandwich", Some("half_vs_maxt"), 0.5 * norm.value, mt * norm.value, opts, params.clone(), wit.clone(), None),
        report("sandwich", Some("maxt_vs_tnorm"), mt * norm.value, tn.value, opts, params.clone(), wit.clone(), None),
        report("sandwich", Some("tnorm_vs_norm"), tn.value, norm.value, opts, params, wit, None),
    ])
}

/// Product bound under the commutation condition |A|B = B*|A|:
/// ‖AB‖_{t-ber} ≤ r(B)·√(‖t|A|+(1-t)|A*|‖_ber · ‖t|A*|+(1-t)|A|‖_ber).
///
/// A violated precondition is reported as a warning, not an error, so
/// sweeps over arbitrary pairs stay informative.
pub fn product(
    model: &KernelModel,
    a: &Operator,
    b: &Operator,
    t: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_t(t)?;
    let residual = commutation_residual(a, b)?;
    let ctol = default_commutation_tol(a, b);
    let warning = (residual > ctol).then(|| {
        format!("commutation condition violated: residual {residual:.3e} > tol {ctol:.3e}")
    });
    let (abs_a, abs_a_star) = absolute_pair(a)?;
    let mix1 = abs_a.entries().scale(t) + abs_a_star.entries().scale(1.0 - t);
    let mix2 = abs_a_star.entries().scale(t) + abs_a.entries().scale(1.0 - t);
    let lhs = SymbolMatrix::new(model, &Operator::new(&a.entries * &b.entries))?
        .t_norm(t)
        .value;
    let rhs = spectral_radius(b)? * (ber_norm(model, mix1)? * ber_norm(model, mix2)?).sqrt();
    Ok(report(
        "product",
        None,
        lhs,
        rhs,
        opts,
        json!({ "t": t }),
        json!({ "commutation_residual": residual, "commutation_tol": ctol }),
        warning,
    ))
}

/// Mixed second-moment bound: ‖A‖_{t-ber} ≤ √‖t A*A + (1-t) AA*‖_ber.
pub fn mixed(
    model: &KernelModel,
    a: &Operator,
    t: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_t(t)?;
    let lhs = SymbolMatrix::new(model, a)?.t_norm(t).value;
    let second = (a.entries.adjoint() * &a.entries).scale(t)
        + (&a.entries * a.entries.adjoint()).scale(1.0 - t);
    let rhs = ber_norm(model, second)?.sqrt();
    Ok(report("mixed", None, lhs, rhs, opts, json!({ "t": t }), Value::Null, None))
}

/// Two-line chain for r ≥ 1:
/// ber^r(A) ≤ min_t ‖A‖^r_{t-ber} ≤ ½‖|A|^r + |A*|^r‖_ber.
pub fn taghavi_chain(
    model: &KernelModel,
    a: &Operator,
    r: f64,
    tol_t: f64,
    opts: &EvalOpts,
) -> Result<Vec<BoundReport>> {
    check_exponent(r, 1.0)?;
    let sym = SymbolMatrix::new(model, a)?;
    let bn = sym.berezin_number();
    let min_t = sym.min_t(tol_t)?;
    let (abs_a, abs_a_star) = absolute_pair(a)?;
    let sum = power(&abs_a, r)?.entries() + power(&abs_a_star, r)?.entries();
    let upper = 0.5 * ber_norm(model, sum)?;
    let params = json!({ "r": r, "tol_t": tol_t });
    let wit = json!({ "t_star": min_t.t_star, "ber_witness": bn.witness });
    Ok(vec![
        report("taghavi_chain", Some("ber_vs_mint"), bn.value.powf(r), min_t.value.powf(r), opts, params.clone(), wit.clone(), None),
        report("taghavi_chain", Some("mint_vs_abs"), min_t.value.powf(r), upper, opts, params, wit, None),
    ])
}

/// Convexity of the power calculus through the Berezin norm: for PSD A, B,
/// t ∈ [0,1] and r ≥ 1, ‖tA + (1-t)B‖^r_ber ≤ ‖tA^r + (1-t)B^r‖_ber.
pub fn convexity_axioms(
    model: &KernelModel,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    t: f64,
    r: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_t(t)?;
    check_exponent(r, 1.0)?;
    let combo = a.entries().scale(t) + b.entries().scale(1.0 - t);
    let lhs = ber_norm(model, combo)?.powf(r);
    let combo_r = power(a, r)?.entries().scale(t) + power(b, r)?.entries().scale(1.0 - t);
    let rhs = ber_norm(model, combo_r)?;
    Ok(report("convexity_axioms", None, lhs, rhs, opts, json!({ "t": t, "r": r }), Value::Null, None))
}

fn check_ds(base: &KernelModel, ds: &KernelModel, copies: usize) -> Result<()> {
    if ds.dim() != copies * base.dim() {
        return Err(Error::ShapeMismatch {
            rows: ds.dim(),
            cols: copies,
            dim: copies * base.dim(),
        });
    }
    Ok(())
}

/// ‖diag(A_1,…,A_n)‖_{t-ber} ≤ max_i ‖A_i‖_{t-ber}.  Equality on the
/// composite family; the catalog asserts the ≤ direction.
pub fn block_diag(
    base: &KernelModel,
    ds: &KernelModel,
    diag_ops: &[Operator],
    t: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_t(t)?;
    check_ds(base, ds, diag_ops.len())?;
    let n = diag_ops.len();
    let zero = Operator::zeros(base.dim());
    let grid: Vec<Vec<Operator>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { diag_ops[i].clone() } else { zero.clone() }).collect())
        .collect();
    let assembled = block_n(&grid)?.assemble();
    let lhs = SymbolMatrix::new(ds, &assembled)?.t_norm(t).value;
    let mut rhs = 0.0f64;
    for op in diag_ops {
        rhs = rhs.max(SymbolMatrix::new(base, op)?.t_norm(t).value);
    }
    Ok(report("block_diag", None, lhs, rhs, opts, json!({ "t": t, "copies": n }), Value::Null, None))
}

/// ‖(0 B; 0 0)‖_{t-ber} ≤ max{t, 1-t}·‖B‖_ber.  Equality on the composite
/// family.
pub fn block_offdiag_single(
    base: &KernelModel,
    ds: &KernelModel,
    b: &Operator,
    t: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_t(t)?;
    check_ds(base, ds, 2)?;
    let zero = Operator::zeros(base.dim());
    let assembled = block2(zero.clone(), b.clone(), zero.clone(), zero)?.assemble();
    let lhs = SymbolMatrix::new(ds, &assembled)?.t_norm(t).value;
    let rhs = t.max(1.0 - t) * SymbolMatrix::new(base, b)?.berezin_norm().value;
    Ok(report("block_offdiag_single", None, lhs, rhs, opts, json!({ "t": t }), Value::Null, None))
}

/// ‖(0 B; C 0)‖_{t-ber} ≤ max{ t‖B‖_ber + (1-t)‖C‖_ber,
///                              t‖C‖_ber + (1-t)‖B‖_ber }.
pub fn block_offdiag(
    base: &KernelModel,
    ds: &KernelModel,
    b: &Operator,
    c: &Operator,
    t: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_t(t)?;
    check_ds(base, ds, 2)?;
    let zero = Operator::zeros(base.dim());
    let assembled = block2(zero.clone(), b.clone(), c.clone(), zero)?.assemble();
    let lhs = SymbolMatrix::new(ds, &assembled)?.t_norm(t).value;
    let nb = SymbolMatrix::new(base, b)?.berezin_norm().value;
    let nc = SymbolMatrix::new(base, c)?.berezin_norm().value;
    let rhs = (t * nb + (1.0 - t) * nc).max(t * nc + (1.0 - t) * nb);
    Ok(report("block_offdiag", None, lhs, rhs, opts, json!({ "t": t }), Value::Null, None))
}

/// Full 2×2 bound: ‖(A B; C D)‖_{t-ber} is at most the spectral norm of
/// the 2×2 real matrix
/// [[‖A‖_{t-ber}, t‖B‖_ber + (1-t)‖C‖_ber],
///  [t‖C‖_ber + (1-t)‖B‖_ber, ‖D‖_{t-ber}]].
pub fn block_2x2(
    base: &KernelModel,
    ds: &KernelModel,
    a: &Operator,
    b: &Operator,
    c: &Operator,
    d: &Operator,
    t: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_t(t)?;
    check_ds(base, ds, 2)?;
    let assembled = block2(a.clone(), b.clone(), c.clone(), d.clone())?.assemble();
    let lhs = SymbolMatrix::new(ds, &assembled)?.t_norm(t).value;
    let na = SymbolMatrix::new(base, a)?.t_norm(t).value;
    let nd = SymbolMatrix::new(base, d)?.t_norm(t).value;
    let nb = SymbolMatrix::new(base, b)?.berezin_norm().value;
    let nc = SymbolMatrix::new(base, c)?.berezin_norm().value;
    let small = nalgebra::DMatrix::from_row_slice(
        2,
        2,
        &[na, t * nb + (1.0 - t) * nc, t * nc + (1.0 - t) * nb, nd],
    );
    let rhs = operator_norm_real(&small);
    Ok(report("block_2x2", None, lhs, rhs, opts, json!({ "t": t }), Value::Null, None))
}

/// n×n generalization of [`block_2x2`]: rhs is the spectral norm of the
/// real matrix with entries ‖T_ii‖_{t-ber} on the diagonal and
/// t‖T_ij‖_ber + (1-t)‖T_ji‖_ber off it.
pub fn block_nxn(
    base: &KernelModel,
    ds: &KernelModel,
    grid: &BlockOperator,
    t: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_t(t)?;
    let n = grid.copies();
    check_ds(base, ds, n)?;
    let lhs = SymbolMatrix::new(ds, &grid.assemble())?.t_norm(t).value;
    let mut norms = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            norms[(i, j)] = SymbolMatrix::new(base, grid.block(i, j))?.berezin_norm().value;
        }
    }
    let mut small = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            small[(i, j)] = if i == j {
                SymbolMatrix::new(base, grid.block(i, i))?.t_norm(t).value
            } else {
                t * norms[(i, j)] + (1.0 - t) * norms[(j, i)]
            };
        }
    }
    let rhs = operator_norm_real(&small);
    Ok(report("block_nxn", None, lhs, rhs, opts, json!({ "t": t, "copies": n }), Value::Null, None))
}

/// Warning text for non-submultiplicative Orlicz functions; the refined
/// Orlicz bounds assume submultiplicativity.
fn submult_warning(phi: &OrliczFn) -> Option<String> {
    (!phi.is_submultiplicative())
        .then(|| format!("{phi:?} is not submultiplicative; bound may not apply"))
}

/// Refined Orlicz bound with an interpolation pair (g, h), g·h = id, and
/// weight α ≥ 0:
///
/// φ(ber²(A)) ≤ α/(2(1+α))·[ ½·ber(φ(g⁴(|A|)) + φ(h⁴(|A*|)))
///                           + φ(ber(h²(|A*|)·g²(|A|))) ]
///            + 1/(2(1+α))·φ(ber(A))·ber(φ(g²(|A|)) + φ(h²(|A*|))).
pub fn orlicz_main(
    model: &KernelModel,
    a: &Operator,
    phi: &OrliczFn,
    pair: &PowerPair,
    weight: &WeightFn,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    let (abs_a, abs_a_star) = absolute_pair(a)?;
    let ber_a = SymbolMatrix::new(model, a)?.berezin_number().value;
    let lhs = phi.eval(ber_a * ber_a);

    let quartic = phi.apply(&pair.g4(&abs_a)?)?.entries() + phi.apply(&pair.h4(&abs_a_star)?)?.entries();
    let cross = pair.h2(&abs_a_star)?.entries() * pair.g2(&abs_a)?.entries();
    let quadratic = phi.apply(&pair.g2(&abs_a)?)?.entries() + phi.apply(&pair.h2(&abs_a_star)?)?.entries();
    let rhs = weight.major() * (0.5 * ber(model, quartic)? + phi.eval(ber(model, cross)?))
        + weight.minor() * phi.eval(ber_a) * ber(model, quadratic)?;
    Ok(report(
        "orlicz_main",
        None,
        lhs,
        rhs,
        opts,
        json!({ "pair_s": pair.s(), "alpha": weight.alpha() }),
        Value::Null,
        submult_warning(phi),
    ))
}

/// Power-function corollary of [`orlicz_main`] (α = 1, g = h = √):
/// ber^{2r}(A) ≤ ⅛‖|A|^{2r}+|A*|^{2r}‖_ber + ¼ber^r(|A*||A|)
///              + ¼ber^r(A)·‖|A|^r+|A*|^r‖_ber.
pub fn th6_cor1(
    model: &KernelModel,
    a: &Operator,
    r: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_exponent(r, 1.0)?;
    let (abs_a, abs_a_star) = absolute_pair(a)?;
    let ber_a = SymbolMatrix::new(model, a)?.berezin_number().value;
    let lhs = ber_a.powf(2.0 * r);
    let sum2r = power(&abs_a, 2.0 * r)?.entries() + power(&abs_a_star, 2.0 * r)?.entries();
    let cross = abs_a_star.entries() * abs_a.entries();
    let sumr = power(&abs_a, r)?.entries() + power(&abs_a_star, r)?.entries();
    let rhs = 0.125 * ber_norm(model, sum2r)?
        + 0.25 * ber(model, cross)?.powf(r)
        + 0.25 * ber_a.powf(r) * ber_norm(model, sumr)?;
    Ok(report("th6_cor1", None, lhs, rhs, opts, json!({ "r": r }), Value::Null, None))
}

/// Power-function corollary of [`orlicz_main`] (α = 2):
/// ber²(A) ≤ 1/12‖|A|²+|A*|²‖_ber + ⅙ber(|A*||A|) + ⅓ber(A)·‖|A|+|A*|‖_ber.
pub fn th6_cor2(model: &KernelModel, a: &Operator, opts: &EvalOpts) -> Result<BoundReport> {
    let (abs_a, abs_a_star) = absolute_pair(a)?;
    let ber_a = SymbolMatrix::new(model, a)?.berezin_number().value;
    let lhs = ber_a * ber_a;
    let sum2 = power(&abs_a, 2.0)?.entries() + power(&abs_a_star, 2.0)?.entries();
    let cross = abs_a_star.entries() * abs_a.entries();
    let sum1 = abs_a.entries() + abs_a_star.entries();
    let rhs = ber_norm(model, sum2)? / 12.0
        + ber(model, cross)? / 6.0
        + ber_a * ber_norm(model, sum1)? / 3.0;
    Ok(report("th6_cor2", None, lhs, rhs, opts, Value::Null, Value::Null, None))
}

/// Refined Orlicz bound for products, weight α ≥ 0:
///
/// φ(ber²(A*B)) ≤ 1/(2(1+α))·φ(ber(A*B))·ber(φ(|A|²) + φ(|B|²))
///              + α/(2(1+α))·[ φ(ber(|B|²·|A|²)) + ½·ber(φ(|A|⁴) + φ(|B|⁴)) ].
pub fn orlicz_product(
    model: &KernelModel,
    a: &Operator,
    b: &Operator,
    phi: &OrliczFn,
    weight: &WeightFn,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    let abs_a = crate::calculus::absolute_value(a)?;
    let abs_b = crate::calculus::absolute_value(b)?;
    let ber_ab = ber(model, a.entries.adjoint() * &b.entries)?;
    let lhs = phi.eval(ber_ab * ber_ab);
    let a2 = power(&abs_a, 2.0)?;
    let b2 = power(&abs_b, 2.0)?;
    let quad = phi.apply(&a2)?.entries() + phi.apply(&b2)?.entries();
    let cross = b2.entries() * a2.entries();
    let quart = phi.apply(&power(&abs_a, 4.0)?)?.entries() + phi.apply(&power(&abs_b, 4.0)?)?.entries();
    let rhs = weight.minor() * phi.eval(ber_ab) * ber(model, quad)?
        + weight.major() * (phi.eval(ber(model, cross)?) + 0.5 * ber(model, quart)?);
    Ok(report(
        "orlicz_product",
        None,
        lhs,
        rhs,
        opts,
        json!({ "alpha": weight.alpha() }),
        Value::Null,
        submult_warning(phi),
    ))
}

/// Power corollary of [`orlicz_product`], two lines with the same left
/// side ber^{2r}(A*B):
/// line 1: 1/(2(1+α))·ber^r(A*B)·‖|A|^{2r}+|B|^{2r}‖_ber
///         + α/(4(1+α))·‖|A|^{4r}+|B|^{4r}‖_ber + α/(2(1+α))·ber^r(|B|²|A|²);
/// line 2 replaces the last term by α/(2(1+α))·‖|A|^{4r}+|B|^{4r}‖_ber.
pub fn th7_cor1(
    model: &KernelModel,
    a: &Operator,
    b: &Operator,
    r: f64,
    weight: &WeightFn,
    opts: &EvalOpts,
) -> Result<Vec<BoundReport>> {
    check_exponent(r, 1.0)?;
    let abs_a = crate::calculus::absolute_value(a)?;
    let abs_b = crate::calculus::absolute_value(b)?;
    let ber_ab = ber(model, a.entries.adjoint() * &b.entries)?;
    let lhs = ber_ab.powf(2.0 * r);
    let sum2r = power(&abs_a, 2.0 * r)?.entries() + power(&abs_b, 2.0 * r)?.entries();
    let sum4r = power(&abs_a, 4.0 * r)?.entries() + power(&abs_b, 4.0 * r)?.entries();
    let cross = power(&abs_b, 2.0)?.entries() * power(&abs_a, 2.0)?.entries();
    let n2r = ber_norm(model, sum2r)?;
    let n4r = ber_norm(model, sum4r)?;
    let cr = ber(model, cross)?.powf(r);
    let base = weight.minor() * ber_ab.powf(r) * n2r + 0.5 * weight.major() * n4r;
    let params = json!({ "r": r, "alpha": weight.alpha() });
    Ok(vec![
        report("th7_cor1", Some("with_cross"), lhs, base + weight.major() * cr, opts, params.clone(), Value::Null, None),
        report("th7_cor1", Some("without_cross"), lhs, base + weight.major() * n4r, opts, params, Value::Null, None),
    ])
}

/// Fixed-weight corollary of [`orlicz_product`], two lines with left side
/// ber²(A*B):
/// line 1: ⅓‖|A|²+|B|²‖_ber·ber(A*B) + 1/12‖|A|⁴+|B|⁴‖_ber + ⅙ber(|B|²|A|²);
/// line 2: ⅙‖|A|⁴+|B|⁴‖_ber + ⅓ber(A*B)·‖|A|²+|B|²‖_ber.
pub fn th7_cor2(
    model: &KernelModel,
    a: &Operator,
    b: &Operator,
    opts: &EvalOpts,
) -> Result<Vec<BoundReport>> {
    let abs_a = crate::calculus::absolute_value(a)?;
    let abs_b = crate::calculus::absolute_value(b)?;
    let ber_ab = ber(model, a.entries.adjoint() * &b.entries)?;
    let lhs = ber_ab * ber_ab;
    let a2 = power(&abs_a, 2.0)?;
    let b2 = power(&abs_b, 2.0)?;
    let sum2 = a2.entries() + b2.entries();
    let sum4 = power(&abs_a, 4.0)?.entries() + power(&abs_b, 4.0)?.entries();
    let cross = b2.entries() * a2.entries();
    let n2 = ber_norm(model, sum2)?;
    let n4 = ber_norm(model, sum4)?;
    let rhs1 = n2 * ber_ab / 3.0 + n4 / 12.0 + ber(model, cross)? / 6.0;
    let rhs2 = n4 / 6.0 + ber_ab * n2 / 3.0;
    Ok(vec![
        report("th7_cor2", Some("with_cross"), lhs, rhs1, opts, Value::Null, Value::Null, None),
        report("th7_cor2", Some("without_cross"), lhs, rhs2, opts, Value::Null, Value::Null, None),
    ])
}

/// ber^r(B*A) ≤ ½‖|A|^{2r}+|B|^{2r}‖_ber for r ≥ 1.
pub fn basaran(
    model: &KernelModel,
    a: &Operator,
    b: &Operator,
    r: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_exponent(r, 1.0)?;
    let abs_a = crate::calculus::absolute_value(a)?;
    let abs_b = crate::calculus::absolute_value(b)?;
    let lhs = ber(model, b.entries.adjoint() * &a.entries)?.powf(r);
    let sum = power(&abs_a, 2.0 * r)?.entries() + power(&abs_b, 2.0 * r)?.entries();
    let rhs = 0.5 * ber_norm(model, sum)?;
    Ok(report("basaran", None, lhs, rhs, opts, json!({ "r": r }), Value::Null, None))
}

/// For r ≥ 2 and λ ≥ 0:
/// ber^r(A*B) ≤ 1/(2λ+2)·‖|A|^r+|B|^r‖_ber·ber^{r/2}(A*B)
///            + λ/(2λ+2)·‖|A|^{2r}+|B|^{2r}‖_ber.
pub fn dcds(
    model: &KernelModel,
    a: &Operator,
    b: &Operator,
    r: f64,
    lambda: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_exponent(r, 2.0)?;
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::InvalidParam(format!("lambda must be >= 0, got {lambda}")));
    }
    let abs_a = crate::calculus::absolute_value(a)?;
    let abs_b = crate::calculus::absolute_value(b)?;
    let ber_ab = ber(model, a.entries.adjoint() * &b.entries)?;
    let lhs = ber_ab.powf(r);
    let sumr = power(&abs_a, r)?.entries() + power(&abs_b, r)?.entries();
    let sum2r = power(&abs_a, 2.0 * r)?.entries() + power(&abs_b, 2.0 * r)?.entries();
    let denom = 2.0 * lambda + 2.0;
    let rhs = ber_norm(model, sumr)? * ber_ab.powf(0.5 * r) / denom
        + lambda * ber_norm(model, sum2r)? / denom;
    Ok(report("dcds", None, lhs, rhs, opts, json!({ "r": r, "lambda": lambda }), Value::Null, None))
}

/// For r ≥ 1 and α ∈ [0, 1]:
/// ber^{2r}(A*B) ≤ (1-α)/2·ber^r(A*B)·‖|A|^{2r}+|B|^{2r}‖_ber
///              + α/2·‖|A|^{4r}+|B|^{4r}‖_ber.
pub fn mjm(
    model: &KernelModel,
    a: &Operator,
    b: &Operator,
    r: f64,
    alpha: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    check_exponent(r, 1.0)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParam(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let abs_a = crate::calculus::absolute_value(a)?;
    let abs_b = crate::calculus::absolute_value(b)?;
    let ber_ab = ber(model, a.entries.adjoint() * &b.entries)?;
    let lhs = ber_ab.powf(2.0 * r);
    let sum2r = power(&abs_a, 2.0 * r)?.entries() + power(&abs_b, 2.0 * r)?.entries();
    let sum4r = power(&abs_a, 4.0 * r)?.entries() + power(&abs_b, 4.0 * r)?.entries();
    let rhs = 0.5 * (1.0 - alpha) * ber_ab.powf(r) * ber_norm(model, sum2r)?
        + 0.5 * alpha * ber_norm(model, sum4r)?;
    Ok(report("mjm", None, lhs, rhs, opts, json!({ "r": r, "alpha": alpha }), Value::Null, None))
}

/// ber²(A) ≤ ⅙‖|A|²+|A*|²‖_ber + ⅓ber(A)·‖|A|+|A*|‖_ber.
pub fn axioms_th3(model: &KernelModel, a: &Operator, opts: &EvalOpts) -> Result<BoundReport> {
    let (abs_a, abs_a_star) = absolute_pair(a)?;
    let ber_a = SymbolMatrix::new(model, a)?.berezin_number().value;
    let lhs = ber_a * ber_a;
    let sum2 = power(&abs_a, 2.0)?.entries() + power(&abs_a_star, 2.0)?.entries();
    let sum1 = abs_a.entries() + abs_a_star.entries();
    let rhs = ber_norm(model, sum2)? / 6.0 + ber_a * ber_norm(model, sum1)? / 3.0;
    Ok(report("axioms_th3", None, lhs, rhs, opts, Value::Null, Value::Null, None))
}

/// ber²(A*B) ≤ ⅙‖|A|⁴+|B|⁴‖_ber + ⅓ber(A*B)·‖|A|²+|B|²‖_ber.
pub fn axioms_th4(
    model: &KernelModel,
    a: &Operator,
    b: &Operator,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    let abs_a = crate::calculus::absolute_value(a)?;
    let abs_b = crate::calculus::absolute_value(b)?;
    let ber_ab = ber(model, a.entries.adjoint() * &b.entries)?;
    let lhs = ber_ab * ber_ab;
    let sum4 = power(&abs_a, 4.0)?.entries() + power(&abs_b, 4.0)?.entries();
    let sum2 = power(&abs_a, 2.0)?.entries() + power(&abs_b, 2.0)?.entries();
    let rhs = ber_norm(model, sum4)? / 6.0 + ber_ab * ber_norm(model, sum2)? / 3.0;
    Ok(report("axioms_th4", None, lhs, rhs, opts, Value::Null, Value::Null, None))
}

/// Single-ber refinement, α ∈ [0, 1]:
/// φ(ber²(A)) ≤ ber( α/2·(φ(g⁴(|A|)) + φ(h⁴(|A*|))) + (1-α)·φ(|A*|²) ).
///
/// The companion value with φ(|A|²) in place of φ(|A*|²) is recorded in
/// the witnesses for reference but not asserted.
pub fn th8_first(
    model: &KernelModel,
    a: &Operator,
    phi: &OrliczFn,
    pair: &PowerPair,
    alpha: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    th8_impl(model, a, phi, pair, alpha, opts, false)
}

/// [`th8_first`] with the roles of A and A* exchanged on the right side.
pub fn th8_second(
    model: &KernelModel,
    a: &Operator,
    phi: &OrliczFn,
    pair: &PowerPair,
    alpha: f64,
    opts: &EvalOpts,
) -> Result<BoundReport> {
    th8_impl(model, a, phi, pair, alpha, opts, true)
}

fn th8_impl(
    model: &KernelModel,
    a: &Operator,
    phi: &OrliczFn,
    pair: &PowerPair,
    alpha: f64,
    opts: &EvalOpts,
    swapped: bool,
) -> Result<BoundReport> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParam(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let (abs_a, abs_a_star) = absolute_pair(a)?;
    let (abs_p, abs_q) = if swapped { (&abs_a_star, &abs_a) } else { (&abs_a, &abs_a_star) };
    let ber_a = SymbolMatrix::new(model, a)?.berezin_number().value;
    let lhs = phi.eval(ber_a * ber_a);
    let quartic = phi.apply(&pair.g4(abs_p)?)?.entries() + phi.apply(&pair.h4(abs_q)?)?.entries();
    let tail_q = phi.apply(&power(abs_q, 2.0)?)?;
    let tail_p = phi.apply(&power(abs_p, 2.0)?)?;
    let asserted = quartic.scale(0.5 * alpha) + tail_q.entries().scale(1.0 - alpha);
    let companion = quartic.scale(0.5 * alpha) + tail_p.entries().scale(1.0 - alpha);
    let rhs = ber(model, asserted)?;
    let companion_rhs = ber(model, companion)?;
    let id = if swapped { "th8_second" } else { "th8_first" };
    Ok(report(
        id,
        None,
        lhs,
        rhs,
        opts,
        json!({ "pair_s": pair.s(), "alpha": alpha }),
        json!({ "companion_rhs": companion_rhs }),
        submult_warning(phi),
    ))
}
