//! Seeded randomized verification: operator generators, the bound-catalog
//! campaign, scalar lemma suites, tightness statistics and the mutation
//! self-test.
//!
//! Reproducibility contract: all randomness comes from ChaCha8 (a
//! counter-based stream cipher RNG), keyed by the campaign seed with one
//! independent stream per case, so any single case can be replayed without
//! running the ones before it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::berezin::SymbolMatrix;
use crate::blocks::{block_n, direct_sum_model};
use crate::bounds::{self, BoundReport, EvalOpts, BOUND_IDS};
use crate::calculus::{absolute_value, apply_spectral, spectral_radius, HermitianMatrix};
use crate::model::{hardy_model, standard_model, KernelModel, Operator};
use crate::orlicz::{OrliczFn, PowerPair, WeightFn};
use crate::{C64, CMatrix, CVector, Error, Result};

pub const DEFAULT_SEED: u64 = 20240501;
pub const DEFAULT_CASES_PER: usize = 200;

const T_GRID: &[f64] = &[0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
const R_GRID: &[f64] = &[1.0, 1.5, 2.0, 3.0];
const DCDS_R_GRID: &[f64] = &[2.0, 3.0];
const S_GRID: &[f64] = &[0.0, 0.25, 0.5, 0.75, 1.0];
const WEIGHT_GRID: &[f64] = &[0.0, 0.5, 1.0, 2.0];
const UNIT_ALPHA_GRID: &[f64] = &[0.0, 0.5, 1.0];
const LAMBDA_GRID: &[f64] = &[0.0, 1.0, 5.0];
const PHI_R_GRID: &[f64] = &[1.0, 2.0, 3.0];
const STANDARD_DIMS: &[usize] = &[1, 2, 3, 4, 6];

/// Operator sampling classes for the campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorClass {
    /// Independent complex Gaussian entries.
    General,
    Hermitian,
    Psd,
    Unitary,
    /// Strictly upper triangular.
    Nilpotent,
    /// (A, B) with B a Hermitian polynomial of |A|, so |A|B = B*|A|.
    CommutingPair,
}

impl OperatorClass {
    pub const ALL: &'static [OperatorClass] = &[
        OperatorClass::General,
        OperatorClass::Hermitian,
        OperatorClass::Psd,
        OperatorClass::Unitary,
        OperatorClass::Nilpotent,
        OperatorClass::CommutingPair,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            OperatorClass::General => "general",
            OperatorClass::Hermitian => "hermitian",
            OperatorClass::Psd => "psd",
            OperatorClass::Unitary => "unitary",
            OperatorClass::Nilpotent => "nilpotent",
            OperatorClass::CommutingPair => "commuting-pair",
        }
    }
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Square matrix of independent standard complex Gaussian entries.
pub fn ginibre(dim: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| gaussian(rng))
}

/// Complex Gaussian vector.
pub fn gaussian_vector(dim: usize, rng: &mut impl Rng) -> CVector {
    CVector::from_fn(dim, |_, _| gaussian(rng))
}

/// Haar-like random unitary: the Q factor of a Ginibre matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> Operator {
    let qr = ginibre(dim, rng).qr();
    Operator::new(qr.q())
}

fn random_hermitian(dim: usize, rng: &mut impl Rng) -> Operator {
    let g = ginibre(dim, rng);
    Operator::new((g.adjoint() + &g).scale(0.5))
}

fn random_psd(dim: usize, rng: &mut impl Rng) -> Operator {
    let g = ginibre(dim, rng);
    Operator::new(g.adjoint() * &g)
}

fn random_nilpotent(dim: usize, rng: &mut impl Rng) -> Operator {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            m[(i, j)] = gaussian(rng);
        }
    }
    Operator::new(m)
}

/// Upper triangular with a random diagonal; generically non-normal.
pub fn random_upper_triangular(dim: usize, rng: &mut impl Rng) -> Operator {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            m[(i, j)] = gaussian(rng);
        }
    }
    Operator::new(m)
}

/// Invertible, deliberately non-unitary: condition number in [1.5, 5]
/// with singular values (√c, 1/√c, 1, …), which forces
/// ‖A*A‖_{t-ber} > 1 or ‖(A*A)^{-1}‖_{t-ber} > 1 on the standard model.
pub fn random_nonunitary(dim: usize, rng: &mut impl Rng) -> Operator {
    let cond = 1.5 + 3.5 * rng.random::<f64>();
    let root = cond.sqrt();
    let u = random_unitary(dim, rng);
    let v = random_unitary(dim, rng);
    let sigma = CMatrix::from_fn(dim, dim, |i, j| {
        if i != j {
            C64::new(0.0, 0.0)
        } else if i == 0 {
            C64::new(root, 0.0)
        } else if i == 1 {
            C64::new(1.0 / root, 0.0)
        } else {
            C64::new(1.0, 0.0)
        }
    });
    Operator::new(&u.entries * sigma * v.entries.adjoint())
}

/// B = p(|A|) for a random cubic p; Hermitian and commuting with |A|, so
/// the pair satisfies the product-bound precondition |A|B = B*|A|.
fn commuting_partner(a: &Operator, rng: &mut impl Rng) -> Result<Operator> {
    let abs_a = absolute_value(a)?;
    let c: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
    Ok(apply_spectral(&abs_a, |x| c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x)?
        .into_operator())
}

/// Draws an operator pair of the given class.  Single-operator bounds use
/// only the first element.
pub fn random_pair(class: OperatorClass, dim: usize, rng: &mut impl Rng) -> Result<(Operator, Operator)> {
    if dim == 0 {
        return Err(Error::InvalidDimension);
    }
    Ok(match class {
        OperatorClass::General => (Operator::new(ginibre(dim, rng)), Operator::new(ginibre(dim, rng))),
        OperatorClass::Hermitian => (random_hermitian(dim, rng), random_hermitian(dim, rng)),
        OperatorClass::Psd => (random_psd(dim, rng), random_psd(dim, rng)),
        OperatorClass::Unitary => (random_unitary(dim, rng), random_unitary(dim, rng)),
        OperatorClass::Nilpotent => (random_nilpotent(dim, rng), random_nilpotent(dim, rng)),
        OperatorClass::CommutingPair => {
            let a = Operator::new(ginibre(dim, rng));
            let b = commuting_partner(&a, rng)?;
            (a, b)
        }
    })
}

/// Campaign configuration.  Serializable so runs can be replayed from a
/// JSON file; unknown fields are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub seed: u64,
    /// Cases per (bound, class) combination.
    pub cases_per: usize,
    /// Bound ids to run; empty means the whole catalog.
    pub bounds: Vec<String>,
    pub tol_coeff: f64,
    /// Right-side multiplier; anything but 1.0 is a deliberate mutation.
    pub rhs_scale: f64,
    pub tol_t: f64,
    /// Whether to compute the tightness statistics pass.
    pub tightness: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            cases_per: DEFAULT_CASES_PER,
            bounds: Vec::new(),
            tol_coeff: 1e-9,
            rhs_scale: 1.0,
            tol_t: 1e-6,
            tightness: true,
        }
    }
}

impl CampaignConfig {
    pub fn resolved_bounds(&self) -> Result<Vec<&'static str>> {
        if self.bounds.is_empty() {
            return Ok(BOUND_IDS.to_vec());
        }
        let mut out = Vec::new();
        for b in &self.bounds {
            let id = BOUND_IDS
                .iter()
                .find(|&&id| id == b)
                .ok_or_else(|| Error::InvalidParam(format!("unknown bound id: {b}")))?;
            out.push(*id);
        }
        Ok(out)
    }
}

/// One violated inequality line.
#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub bound_id: String,
    pub part: Option<String>,
    pub class: String,
    pub case_index: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Statistics on how much the new norm improves classical right sides.
#[derive(Debug, Clone, Serialize)]
pub struct TightnessReport {
    /// Samples for the min_t comparison.
    pub min_t_cases: usize,
    /// Fraction where min_t ‖A‖²_{t-ber} < ½‖|A|²+|A*|²‖_ber by more than 1e-6 relative.
    pub min_t_improved_frac: f64,
    pub min_t_mean_improvement: f64,
    pub min_t_max_improvement: f64,
    /// Samples for the corollary-vs-dcds comparison (r = 1 vs r = 2).
    pub th7_vs_dcds_cases: usize,
    /// Fraction where the refined corollary right side is strictly smaller.
    pub th7_tighter_frac: f64,
}

/// Aggregate campaign outcome.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub cases_per: usize,
    pub rhs_scale: f64,
    pub bounds_run: Vec<String>,
    pub total_cases: usize,
    pub total_checks: usize,
    pub failure_count: usize,
    /// First violations, capped at 200 records.
    pub failures: Vec<FailureRecord>,
    pub warning_count: usize,
    pub tightness: Option<TightnessReport>,
}

fn classes_for(bound: &str) -> &'static [OperatorClass] {
    match bound {
        // the product bound carries the commutation precondition
        "product" => &[OperatorClass::CommutingPair],
        // the convexity bound is stated for PSD pairs
        "convexity_axioms" => &[OperatorClass::Psd],
        _ => &[
            OperatorClass::General,
            OperatorClass::Hermitian,
            OperatorClass::Psd,
            OperatorClass::Unitary,
            OperatorClass::Nilpotent,
        ],
    }
}

fn is_block_bound(bound: &str) -> bool {
    matches!(
        bound,
        "block_diag" | "block_offdiag_single" | "block_offdiag" | "block_2x2" | "block_nxn"
    )
}

fn pick<T: Copy>(grid: &[T], rng: &mut impl Rng) -> T {
    grid[rng.random_range(0..grid.len())]
}

fn draw_model(rng: &mut impl Rng) -> Result<KernelModel> {
    match rng.random_range(0..7u32) {
        k @ 0..=4 => standard_model(STANDARD_DIMS[k as usize]),
        5 => hardy_model(8, &[0.2, 0.5, 0.8], 8),
        _ => hardy_model(16, &[0.3, 0.6, 0.9], 8),
    }
}

/// Cache of direct-sum models, keyed by (base dim, copies).
struct DsCache {
    map: std::collections::HashMap<(usize, usize), (KernelModel, KernelModel)>,
}

impl DsCache {
    fn new() -> Self {
        Self { map: std::collections::HashMap::new() }
    }

    fn get(&mut self, base_dim: usize, copies: usize) -> Result<&(KernelModel, KernelModel)> {
        if !self.map.contains_key(&(base_dim, copies)) {
            let base = standard_model(base_dim)?;
            // three copies get a coarser weight/phase grid to keep the
            // composite family small
            let ds = if copies == 2 {
                direct_sum_model(&base, 2, 5, 8)?
            } else {
                direct_sum_model(&base, copies, 3, 2)?
            };
            self.map.insert((base_dim, copies), (base, ds));
        }
        Ok(&self.map[&(base_dim, copies)])
    }
}

struct CaseParams {
    t: f64,
    r: f64,
    dcds_r: f64,
    lambda: f64,
    unit_alpha: f64,
    phi: OrliczFn,
    pair: PowerPair,
    weight: WeightFn,
}

impl CaseParams {
    fn canonical() -> Result<Self> {
        Ok(Self {
            t: 0.5,
            r: 2.0,
            dcds_r: 2.0,
            lambda: 1.0,
            unit_alpha: 0.5,
            phi: OrliczFn::power(2.0)?,
            pair: PowerPair::new(0.5)?,
            weight: WeightFn::new(1.0)?,
        })
    }

    fn draw(rng: &mut impl Rng) -> Result<Self> {
        Ok(Self {
            t: pick(T_GRID, rng),
            r: pick(R_GRID, rng),
            dcds_r: pick(DCDS_R_GRID, rng),
            lambda: pick(LAMBDA_GRID, rng),
            unit_alpha: pick(UNIT_ALPHA_GRID, rng),
            phi: OrliczFn::power(pick(PHI_R_GRID, rng))?,
            pair: PowerPair::new(pick(S_GRID, rng))?,
            weight: WeightFn::new(pick(WEIGHT_GRID, rng))?,
        })
    }
}

fn run_block_case(
    bound: &str,
    class: OperatorClass,
    canonical: bool,
    rng: &mut ChaCha8Rng,
    opts: &EvalOpts,
    cache: &mut DsCache,
) -> Result<Vec<BoundReport>> {
    let (base_dim, copies) = if canonical {
        (2, 2)
    } else {
        let copies = if bound == "block_nxn" { pick(&[2usize, 3], rng) } else { 2 };
        let base_dim = if copies == 3 { 2 } else { pick(&[2usize, 3], rng) };
        (base_dim, copies)
    };
    let p = if canonical { CaseParams::canonical()? } else { CaseParams::draw(rng)? };
    let draw = |rng: &mut ChaCha8Rng| -> Result<Operator> {
        if canonical {
            Ok(Operator::identity(base_dim))
        } else {
            Ok(random_pair(class, base_dim, rng)?.0)
        }
    };
    // draw all operands before borrowing the cached models
    let ops: Vec<Operator> = (0..(copies * copies)).map(|_| draw(rng)).collect::<Result<_>>()?;
    let (base, ds) = cache.get(base_dim, copies)?;
    match bound {
        "block_diag" => {
            let diag: Vec<Operator> = (0..copies).map(|i| ops[i].clone()).collect();
            Ok(vec![bounds::block_diag(base, ds, &diag, p.t, opts)?])
        }
        "block_offdiag_single" => Ok(vec![bounds::block_offdiag_single(base, ds, &ops[0], p.t, opts)?]),
        "block_offdiag" => Ok(vec![bounds::block_offdiag(base, ds, &ops[0], &ops[1], p.t, opts)?]),
        "block_2x2" => {
            Ok(vec![bounds::block_2x2(base, ds, &ops[0], &ops[1], &ops[2], &ops[3], p.t, opts)?])
        }
        "block_nxn" => {
            let grid: Vec<Vec<Operator>> = (0..copies)
                .map(|i| (0..copies).map(|j| ops[i * copies + j].clone()).collect())
                .collect();
            let grid = block_n(&grid)?;
            Ok(vec![bounds::block_nxn(base, ds, &grid, p.t, opts)?])
        }
        _ => unreachable!("not a block bound: {bound}"),
    }
}

fn run_case(
    bound: &str,
    class: OperatorClass,
    canonical: bool,
    rng: &mut ChaCha8Rng,
    opts: &EvalOpts,
    cache: &mut DsCache,
) -> Result<Vec<BoundReport>> {
    if is_block_bound(bound) {
        return run_block_case(bound, class, canonical, rng, opts, cache);
    }
    let (model, a, b, p) = if canonical {
        let model = standard_model(2)?;
        (model, Operator::identity(2), Operator::identity(2), CaseParams::canonical()?)
    } else {
        let model = draw_model(rng)?;
        let (a, b) = random_pair(class, model.dim(), rng)?;
        (model, a, b, CaseParams::draw(rng)?)
    };
    match bound {
        "sandwich" => bounds::sandwich(&model, &a, p.t, opts),
        "product" => Ok(vec![bounds::product(&model, &a, &b, p.t, opts)?]),
        "mixed" => Ok(vec![bounds::mixed(&model, &a, p.t, opts)?]),
        "taghavi_chain" => bounds::taghavi_chain(&model, &a, p.r, 1e-6, opts),
        "convexity_axioms" => {
            let ha = HermitianMatrix::new(a.entries.clone())?;
            let hb = HermitianMatrix::new(b.entries.clone())?;
            Ok(vec![bounds::convexity_axioms(&model, &ha, &hb, p.t, p.r, opts)?])
        }
        "orlicz_main" => Ok(vec![bounds::orlicz_main(&model, &a, &p.phi, &p.pair, &p.weight, opts)?]),
        "th6_cor1" => Ok(vec![bounds::th6_cor1(&model, &a, p.r, opts)?]),
        "th6_cor2" => Ok(vec![bounds::th6_cor2(&model, &a, opts)?]),
        "orlicz_product" => Ok(vec![bounds::orlicz_product(&model, &a, &b, &p.phi, &p.weight, opts)?]),
        "th7_cor1" => bounds::th7_cor1(&model, &a, &b, p.r, &p.weight, opts),
        "th7_cor2" => bounds::th7_cor2(&model, &a, &b, opts),
        "basaran" => Ok(vec![bounds::basaran(&model, &a, &b, p.r, opts)?]),
        "dcds" => Ok(vec![bounds::dcds(&model, &a, &b, p.dcds_r, p.lambda, opts)?]),
        "mjm" => Ok(vec![bounds::mjm(&model, &a, &b, p.r, p.unit_alpha, opts)?]),
        "axioms_th3" => Ok(vec![bounds::axioms_th3(&model, &a, opts)?]),
        "axioms_th4" => Ok(vec![bounds::axioms_th4(&model, &a, &b, opts)?]),
        "th8_first" => Ok(vec![bounds::th8_first(&model, &a, &p.phi, &p.pair, p.unit_alpha, opts)?]),
        "th8_second" => Ok(vec![bounds::th8_second(&model, &a, &p.phi, &p.pair, p.unit_alpha, opts)?]),
        other => Err(Error::InvalidParam(format!("unknown bound id: {other}"))),
    }
}

fn case_rng(seed: u64, bound_index: usize, class_index: usize, case_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((bound_index as u64) << 40) | ((class_index as u64) << 32) | case_index as u64);
    rng
}

/// Runs the full campaign described by the config: `cases_per` cases per
/// (bound, class), with case 0 of every combination pinned to the
/// canonical identity configuration where most bounds hold with equality.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<SuiteReport> {
    if cfg.cases_per == 0 {
        return Err(Error::InvalidParam("cases_per must be at least 1".into()));
    }
    let bounds_run = cfg.resolved_bounds()?;
    let opts = EvalOpts { rhs_scale: cfg.rhs_scale, tol_coeff: cfg.tol_coeff };
    let mut cache = DsCache::new();
    let mut total_cases = 0usize;
    let mut total_checks = 0usize;
    let mut failures = Vec::new();
    let mut failure_count = 0usize;
    let mut warning_count = 0usize;
    for (bi, bound) in bounds_run.iter().enumerate() {
        for (ci, class) in classes_for(bound).iter().enumerate() {
            for case in 0..cfg.cases_per {
                let mut rng = case_rng(cfg.seed, bi, ci, case);
                let reports = run_case(bound, *class, case == 0, &mut rng, &opts, &mut cache)?;
                total_cases += 1;
                for rep in reports {
                    total_checks += 1;
                    if rep.warning.is_some() {
                        warning_count += 1;
                    }
                    if !rep.holds {
                        failure_count += 1;
                        if failures.len() < 200 {
                            failures.push(FailureRecord {
                                bound_id: rep.bound_id,
                                part: rep.part,
                                class: class.as_str().to_string(),
                                case_index: case,
                                lhs: rep.lhs,
                                rhs: rep.rhs,
                                slack: rep.slack,
                            });
                        }
                    }
                }
            }
        }
    }
    let tightness = if cfg.tightness { Some(tightness_stats(cfg.seed, 200)?) } else { None };
    Ok(SuiteReport {
        seed: cfg.seed,
        cases_per: cfg.cases_per,
        rhs_scale: cfg.rhs_scale,
        bounds_run: bounds_run.iter().map(|s| s.to_string()).collect(),
        total_cases,
        total_checks,
        failure_count,
        failures,
        warning_count,
        tightness,
    })
}

/// Measures how often the new norm beats the classical right sides:
/// min_t ‖A‖²_{t-ber} against ½‖|A|²+|A*|²‖_ber on random operators, and
/// the refined product corollary (r = 1) against the dcds bound at the
/// matching exponent (r = 2, λ = 1).
pub fn tightness_stats(seed: u64, samples: usize) -> Result<TightnessReport> {
    let model = standard_model(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX); // distinct from every campaign case stream
    let mut improved = 0usize;
    let mut sum_impr = 0.0f64;
    let mut max_impr = 0.0f64;
    for _ in 0..samples {
        let a = Operator::new(ginibre(3, &mut rng));
        let sym = SymbolMatrix::new(&model, &a)?;
        let min_sq = sym.min_t(1e-7)?.value.powi(2);
        let (abs_a, abs_a_star) = crate::calculus::absolute_pair(&a)?;
        let classical = 0.5
            * SymbolMatrix::new(
                &model,
                &Operator::new(
                    abs_a.entries() * abs_a.entries() + abs_a_star.entries() * abs_a_star.entries(),
                ),
            )?
            .berezin_norm()
            .value;
        let impr = (classical - min_sq) / classical.max(1e-300);
        if impr > 1e-6 {
            improved += 1;
        }
        sum_impr += impr.max(0.0);
        max_impr = max_impr.max(impr);
    }
    let mut th7_tighter = 0usize;
    let opts = EvalOpts::default();
    let w = WeightFn::new(1.0)?;
    for _ in 0..samples {
        let a = Operator::new(ginibre(3, &mut rng));
        let b = Operator::new(ginibre(3, &mut rng));
        let refined = bounds::th7_cor1(&model, &a, &b, 1.0, &w, &opts)?[0].rhs;
        let classical = bounds::dcds(&model, &a, &b, 2.0, 1.0, &opts)?.rhs;
        if refined < classical {
            th7_tighter += 1;
        }
    }
    Ok(TightnessReport {
        min_t_cases: samples,
        min_t_improved_frac: improved as f64 / samples as f64,
        min_t_mean_improvement: sum_impr / samples as f64,
        min_t_max_improvement: max_impr,
        th7_vs_dcds_cases: samples,
        th7_tighter_frac: th7_tighter as f64 / samples as f64,
    })
}

/// Scalar lemma identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// |⟨x,e⟩⟨e,y⟩| ≤ ½(‖x‖‖y‖ + |⟨x,y⟩|) for unit e.
    Buzano,
    /// |⟨x,y⟩|² ≤ f/(1+f)·‖x‖²‖y‖² + 1/(1+f)·|⟨x,y⟩|‖x‖‖y‖ for f ≥ 0.
    GenCauchySchwarz,
    /// |⟨ABx,y⟩| ≤ r(B)·‖|A|^s x‖·‖|A*|^{1-s} y‖ when |A|B = B*|A|.
    MixedSchwarz,
}

impl Lemma {
    pub const ALL: &'static [Lemma] = &[Lemma::Buzano, Lemma::GenCauchySchwarz, Lemma::MixedSchwarz];

    pub fn as_str(&self) -> &'static str {
        match self {
            Lemma::Buzano => "buzano",
            Lemma::GenCauchySchwarz => "gen-cauchy-schwarz",
            Lemma::MixedSchwarz => "mixed-schwarz",
        }
    }
}

/// Outcome of one lemma suite.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub trials: usize,
    pub failures: usize,
    /// Smallest rhs - lhs seen (can be slightly negative within roundoff).
    pub worst_margin: f64,
}

fn inner(x: &CVector, y: &CVector) -> C64 {
    // math convention ⟨x, y⟩, linear in x
    y.dotc(x)
}

/// Runs `trials` random instances of one scalar lemma.  A failure is a
/// case with lhs > rhs + 1e-10·(1 + |lhs| + |rhs|).
pub fn run_lemma_suite(lemma: Lemma, trials: usize, seed: u64) -> Result<LemmaReport> {
    let mut failures = 0usize;
    let mut worst = f64::INFINITY;
    for case in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(case as u64);
        let dim = 2 + case % 4;
        let (lhs, rhs) = match lemma {
            Lemma::Buzano => {
                let x = gaussian_vector(dim, &mut rng);
                let y = gaussian_vector(dim, &mut rng);
                let e = gaussian_vector(dim, &mut rng).normalize();
                let lhs = (inner(&x, &e) * inner(&e, &y)).norm();
                let rhs = 0.5 * (x.norm() * y.norm() + inner(&x, &y).norm());
                (lhs, rhs)
            }
            Lemma::GenCauchySchwarz => {
                let x = gaussian_vector(dim, &mut rng);
                let y = gaussian_vector(dim, &mut rng);
                let f = 10.0 * rng.random::<f64>();
                let ip = inner(&x, &y).norm();
                let ns = x.norm() * y.norm();
                let lhs = ip * ip;
                let rhs = f / (1.0 + f) * ns * ns + 1.0 / (1.0 + f) * ip * ns;
                (lhs, rhs)
            }
            Lemma::MixedSchwarz => {
                let a = Operator::new(ginibre(dim, &mut rng));
                let b = commuting_partner(&a, &mut rng)?;
                let x = gaussian_vector(dim, &mut rng);
                let y = gaussian_vector(dim, &mut rng);
                let s = rng.random::<f64>();
                let (abs_a, abs_a_star) = crate::calculus::absolute_pair(&a)?;
                let psi_x = apply_spectral(&abs_a, |v| v.powf(s))?.entries() * &x;
                let eta_y = apply_spectral(&abs_a_star, |v| v.powf(1.0 - s))?.entries() * &y;
                let lhs = inner(&(&a.entries * (&b.entries * &x)), &y).norm();
                let rhs = spectral_radius(&b)? * psi_x.norm() * eta_y.norm();
                (lhs, rhs)
            }
        };
        let margin = rhs - lhs;
        worst = worst.min(margin);
        if lhs > rhs + 1e-10 * (1.0 + lhs.abs() + rhs.abs()) {
            failures += 1;
        }
    }
    Ok(LemmaReport { lemma: lemma.as_str().to_string(), trials, failures, worst_margin: worst })
}

/// Mutation outcome for one bound.
#[derive(Debug, Clone, Serialize)]
pub struct MutationOutcome {
    pub bound_id: String,
    pub detected: bool,
    pub failures: usize,
}

/// Self-test of the harness: scaling every right side by 0.9 must produce
/// at least one failure per bound (case 0 is the canonical equality
/// configuration, so the miscaled bound cannot slip through).
pub fn mutation_self_test(seed: u64, cases_per: usize) -> Result<Vec<MutationOutcome>> {
    let mut out = Vec::new();
    for &bound in BOUND_IDS {
        let cfg = CampaignConfig {
            seed,
            cases_per,
            bounds: vec![bound.to_string()],
            rhs_scale: 0.9,
            tightness: false,
            ..CampaignConfig::default()
        };
        let report = run_campaign(&cfg)?;
        out.push(MutationOutcome {
            bound_id: bound.to_string(),
            detected: report.failure_count > 0,
            failures: report.failure_count,
        });
    }
    Ok(out)
}
