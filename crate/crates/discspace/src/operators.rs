//! The integral operators `S_g f = ∫₀ᶻ f′(w)g(w) dw` and
//! `T_g f = ∫₀ᶻ f(w)g′(w) dw`, their closed-form operator norms, witnessed
//! lower bounds, and the norm-attainment experiments.
//!
//! `S_g` has operator norm `sup|g|` on the Bloch space, the Dirichlet space
//! and BMOA alike; `T_g : A² → D` has norm `sup|g′|`. The extremal runs
//! build Blaschke products with zeros marching toward the boundary maximum
//! of `|g|`, thinned so the defects improve along the tail, and measure how
//! fast the witnessed lower bound `L(N)` closes the gap to the exact norm.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DiscError, Result};
use crate::func::{blaschke_from_zeros, test_bloch_family, Deriv, Func, PrimitivePair};
use crate::geometry::{greedy_thin_scheduled, DiscPoint, ZeroSequence};
use crate::quad::QuadratureRule;
use crate::spaces::{
    bergman_norm, bloch_norm, bmoa_norm, dirichlet_norm, golden_max, BmoaConfig, NormReport,
    SearchConfig,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `S_g f` as a primitive pair: value 0 at the origin, derivative `f′·g`.
pub fn apply_sg(g: &Func, fp: &PrimitivePair) -> PrimitivePair {
    PrimitivePair::new(
        ZERO,
        Deriv::Product(
            Box::new(fp.derivative.clone()),
            Box::new(Deriv::Value(g.clone())),
        ),
    )
}

/// `T_g f` as a primitive pair: value 0 at the origin, derivative `f·g′`.
pub fn apply_tg(g: &Func, f: &Func) -> PrimitivePair {
    PrimitivePair::new(
        ZERO,
        Deriv::Product(
            Box::new(Deriv::Value(f.clone())),
            Box::new(Deriv::OfFunc(g.clone())),
        ),
    )
}

/// Boundary sup search configuration.
#[derive(Debug, Clone, Serialize)]
pub struct SupSearchConfig {
    pub boundary_samples: usize,
    pub refine_tol: f64,
}

impl Default for SupSearchConfig {
    fn default() -> Self {
        Self {
            boundary_samples: 4096,
            refine_tol: 1e-9,
        }
    }
}

/// A boundary supremum and the angle where it was found.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundarySup {
    pub value: f64,
    pub angle: f64,
}

fn boundary_sup(cfg: &SupSearchConfig, f: impl Fn(Complex64) -> f64) -> BoundarySup {
    let at = |t: f64| f(Complex64::new(t.cos(), t.sin()));
    let n = cfg.boundary_samples.max(16);
    let dt = std::f64::consts::TAU / n as f64;
    let mut best = (at(0.0), 0.0f64);
    for j in 1..n {
        let t = dt * j as f64;
        let v = at(t);
        if v > best.0 {
            best = (v, t);
        }
    }
    let (t, v) = golden_max(best.1 - dt, best.1 + dt, cfg.refine_tol, at);
    if v > best.0 {
        best = (v, t);
    }
    BoundarySup {
        value: best.0,
        angle: best.1.rem_euclid(std::f64::consts::TAU),
    }
}

/// `‖S_g‖ = sup_{D}|g|`, computed on the boundary circle by dense sampling
/// plus refinement (maximum-modulus principle). One number serves the
/// Bloch, Dirichlet and BMOA cases simultaneously.
pub fn opnorm_exact_sg(g: &Func, cfg: &SupSearchConfig) -> BoundarySup {
    boundary_sup(cfg, |z| g.eval(z).norm())
}

fn max_blaschke_zero_modulus(f: &Func) -> f64 {
    match f {
        Func::Blaschke(zs) => zs.points().iter().map(|p| p.abs()).fold(0.0f64, f64::max),
        Func::Sum(a, b) | Func::Product(a, b) => {
            max_blaschke_zero_modulus(a).max(max_blaschke_zero_modulus(b))
        }
        Func::Scale(_, a) | Func::Shift(a, _) => max_blaschke_zero_modulus(a),
        _ => 0.0,
    }
}

/// `‖T_g‖ = sup_{D}|g′|` by boundary sampling. Returns a warning when `g`
/// carries Blaschke zeros of modulus above 0.99, where the boundary grid
/// may under-resolve `|g′|`.
pub fn opnorm_exact_tg(g: &Func, cfg: &SupSearchConfig) -> (BoundarySup, Option<String>) {
    let sup = boundary_sup(cfg, |z| g.deriv_eval(z).norm());
    let warn = if max_blaschke_zero_modulus(g) > 0.99 {
        Some(
            "g has Blaschke zeros of modulus > 0.99; boundary sampling of g' may under-resolve"
                .into(),
        )
    } else {
        None
    };
    (sup, warn)
}

/// Dirichlet witness bound from the family `f_a = σ_a − a`: the analytic
/// bound is `|g(a)|`, the quadrature value is `‖S_g f_a‖_D`, which weakly
/// exceeds it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WitnessBound {
    pub analytic: f64,
    pub quadrature: f64,
}

pub fn sg_lower_bound_dirichlet(
    g: &Func,
    a: DiscPoint,
    rule: &QuadratureRule,
) -> Result<WitnessBound> {
    let analytic = g.eval(a.to_complex()).norm();
    let fa = PrimitivePair::of_func(&test_bloch_family(a));
    let quadrature = dirichlet_norm(&apply_sg(g, &fa), rule)?.value;
    Ok(WitnessBound {
        analytic,
        quadrature,
    })
}

/// Quadrature-free BMOA lower bound `(1−|a|²)·|f′(a)|·|g(a)|` for the
/// seminorm of `S_g f`.
pub fn sg_lower_bound_bmoa(g: &Func, fp: &PrimitivePair, a: DiscPoint) -> f64 {
    a.one_minus_abs_sq() * fp.deriv_at(a.to_complex()).norm() * g.eval(a.to_complex()).norm()
}

/// Dirichlet deficiency `Δ(f) = ‖S_g‖² − ‖S_g f̂‖²_D` of the unit-normalized
/// `f̂ = f/‖f‖_D`; strictly positive for non-constant `g`, zero exactly when
/// a constant `g` meets `f(0) = 0`.
pub fn dirichlet_deficiency(
    g: &Func,
    fp: &PrimitivePair,
    rule: &QuadratureRule,
    sup_cfg: &SupSearchConfig,
) -> Result<f64> {
    let exact = opnorm_exact_sg(g, sup_cfg).value;
    let norm = dirichlet_norm(fp, rule)?.value;
    if norm < 1e-12 {
        return Err(DiscError::InvalidParameter(
            "cannot normalize the zero function".into(),
        ));
    }
    let unit = fp.scaled(Complex64::new(1.0 / norm, 0.0));
    let sg = dirichlet_norm(&apply_sg(g, &unit), rule)?.value;
    Ok(exact * exact - sg * sg)
}

/// Thin-subsequence extraction settings for the extremal constructions.
///
/// Candidates are the radii `1 − 2^{−n}`, `n = 1..=max_candidates`, along
/// the ray toward the boundary arg-max of `|g|`. The defect target for the
/// zero accepted at rank `k` is `1 − (1−target)·tighten^k`: with
/// `tighten < 1` the targets climb toward 1 along the tail, which is what
/// drives the per-zero stretch `(1−|z_n|²)|B′(z_n)|` toward 1.
#[derive(Debug, Clone, Serialize)]
pub struct ThinConfig {
    pub target: f64,
    pub tighten: f64,
    pub max_candidates: u32,
}

impl Default for ThinConfig {
    fn default() -> Self {
        Self {
            target: 0.5,
            tighten: 0.55,
            max_candidates: 44,
        }
    }
}

impl ThinConfig {
    fn rank_target(&self, k: usize) -> f64 {
        1.0 - (1.0 - self.target) * self.tighten.powi(k as i32)
    }
}

/// Bundled settings for the extremal runs.
#[derive(Debug, Clone, Default)]
pub struct ExtremalConfig {
    pub thin: ThinConfig,
    pub search: SearchConfig,
    pub sup: SupSearchConfig,
}

/// Per-zero diagnostics of an extremal record: the stretch
/// `(1−|z_n|²)|h′(z_n)|` (equal to the thinness defect for `h = B − B(0)`)
/// and `|g(z_n)|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZeroDiagnostic {
    pub zero: DiscPoint,
    pub stretch: f64,
    pub g_abs: f64,
}

/// Outcome of one extremal construction at truncation length ≤ N.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalRecord {
    pub requested_len: usize,
    pub zeros: ZeroSequence,
    /// Greedy extraction ran out of candidates before reaching N.
    pub exhausted: bool,
    /// Computed norm of `h = B − B(0)` in the relevant space.
    pub norm_of_h: f64,
    /// Witnessed value before normalization.
    pub raw_bound: f64,
    /// `raw_bound / norm_of_h`: the certified operator-norm lower bound.
    pub lower_bound: f64,
    /// `sup|g|` for reference.
    pub exact: f64,
    pub per_zero: Vec<ZeroDiagnostic>,
}

fn march_candidates(angle: f64, max_candidates: u32) -> Result<ZeroSequence> {
    let dir = Complex64::new(angle.cos(), angle.sin());
    let mut pts = Vec::with_capacity(max_candidates as usize);
    for n in 1..=max_candidates {
        let r = 1.0 - 2f64.powi(-(n as i32));
        let z = r * dir;
        pts.push(DiscPoint::new(z.re, z.im)?);
    }
    ZeroSequence::new(pts)
}

fn extremal_zeros(g: &Func, n: usize, cfg: &ExtremalConfig) -> Result<(ZeroSequence, f64)> {
    let sup = opnorm_exact_sg(g, &cfg.sup);
    let candidates = march_candidates(sup.angle, cfg.thin.max_candidates)?;
    let zeros = greedy_thin_scheduled(&candidates, |k| cfg.thin.rank_target(k), n)?;
    if zeros.is_empty() {
        return Err(DiscError::DegenerateSequence(
            "greedy extraction accepted no zeros".into(),
        ));
    }
    Ok((zeros, sup.value))
}

fn diagnostics(g: &Func, h: &PrimitivePair, zeros: &ZeroSequence) -> Vec<ZeroDiagnostic> {
    zeros
        .points()
        .iter()
        .map(|&z| ZeroDiagnostic {
            zero: z,
            stretch: z.one_minus_abs_sq() * h.deriv_at(z.to_complex()).norm(),
            g_abs: g.eval(z.to_complex()).norm(),
        })
        .collect()
}

/// Bloch-space extremal run: builds `h = B − B(0)` from a thin subsequence
/// of the candidate march, then certifies
/// `L(N) = ‖S_g h‖_B-seminorm / ‖h‖_B ≤ ‖S_g‖`.
///
/// Numerator and denominator are searched on the same grid, so the ratio
/// stays at or below `sup|g|` up to refinement slack.
pub fn extremal_bloch(g: &Func, n: usize, cfg: &ExtremalConfig) -> Result<ExtremalRecord> {
    if n == 0 {
        return Err(DiscError::InvalidParameter("N must be at least 1".into()));
    }
    let (zeros, exact) = extremal_zeros(g, n, cfg)?;
    let b = blaschke_from_zeros(&zeros);
    let h = Func::shift(b.clone(), -b.eval(ZERO));
    let hp = PrimitivePair::of_func(&h);
    let denom = bloch_norm(&hp, &cfg.search);
    let numer = bloch_norm(&apply_sg(g, &hp), &cfg.search);
    Ok(ExtremalRecord {
        requested_len: n,
        exhausted: zeros.len() < n,
        norm_of_h: denom.value,
        raw_bound: numer.seminorm,
        lower_bound: numer.seminorm / denom.value,
        exact,
        per_zero: diagnostics(g, &hp, &zeros),
        zeros,
    })
}

/// BMOA extremal run: same construction as [`extremal_bloch`] but the
/// witnessed value is the quadrature-free bound
/// `max_n (1−|z_n|²)|h′(z_n)||g(z_n)|`, normalized by the measured
/// `‖h‖_BMOA` (no claim that the finite truncation has norm exactly 1).
pub fn extremal_bmoa(
    g: &Func,
    n: usize,
    cfg: &ExtremalConfig,
    bmoa_cfg: &BmoaConfig,
    rule: &QuadratureRule,
) -> Result<ExtremalRecord> {
    if n == 0 {
        return Err(DiscError::InvalidParameter("N must be at least 1".into()));
    }
    let (zeros, exact) = extremal_zeros(g, n, cfg)?;
    let b = blaschke_from_zeros(&zeros);
    let h = Func::shift(b.clone(), -b.eval(ZERO));
    let hp = PrimitivePair::of_func(&h);

    // the zeros themselves are the natural sup candidates: include those
    // inside the truncation radius in the a-grid
    let mut grid = bmoa_cfg.default_a_grid();
    for &z in zeros.points() {
        if z.abs() <= bmoa_cfg.trunc_radius {
            grid.push(z);
        }
    }
    let denom = bmoa_norm(&hp, &grid, rule, bmoa_cfg)?;

    let per_zero = diagnostics(g, &hp, &zeros);
    let raw = per_zero
        .iter()
        .map(|d| d.stretch * d.g_abs)
        .fold(0.0f64, f64::max);
    Ok(ExtremalRecord {
        requested_len: n,
        exhausted: zeros.len() < n,
        norm_of_h: denom.value,
        raw_bound: raw,
        lower_bound: raw / denom.value,
        exact,
        per_zero,
        zeros,
    })
}

/// Verdict of the extremal-function characterization check: a unit-Bloch
/// `f` is extremal for `S_g` exactly when some boundary-marching sequence
/// carries both `|g(z_n)| → sup|g|` and `(1−|z_n|²)|f′(z_n)| → 1`; at a
/// finite truncation both tail terms must come within `tol`.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessVerdict {
    pub accepted: bool,
    /// `‖f‖_B` within `tol` of 1.
    pub norm_ok: bool,
    /// Moduli non-decreasing and the last zero within `tol` of the boundary.
    pub boundary_ok: bool,
    pub g_ok: bool,
    pub stretch_ok: bool,
    pub g_tail_gap: f64,
    pub stretch_tail_gap: f64,
    pub bloch_norm_of_f: f64,
}

pub fn extremal_witness_check(
    g: &Func,
    fp: &PrimitivePair,
    zs: &ZeroSequence,
    tol: f64,
    cfg: &ExtremalConfig,
) -> WitnessVerdict {
    let norm = bloch_norm(fp, &cfg.search).value;
    let norm_ok = (norm - 1.0).abs() <= tol;

    let pts = zs.points();
    let marching = pts.windows(2).all(|w| w[1].abs() >= w[0].abs() - 1e-15);
    let boundary_ok = match pts.last() {
        Some(last) => marching && (1.0 - last.abs()) <= tol,
        None => false,
    };

    let exact = opnorm_exact_sg(g, &cfg.sup).value;
    let (g_tail_gap, stretch_tail_gap) = match pts.last() {
        Some(&last) => {
            let g_abs = g.eval(last.to_complex()).norm();
            let stretch = last.one_minus_abs_sq() * fp.deriv_at(last.to_complex()).norm();
            (exact - g_abs, (1.0 - stretch).abs())
        }
        None => (f64::INFINITY, f64::INFINITY),
    };
    let g_ok = g_tail_gap <= tol;
    let stretch_ok = stretch_tail_gap <= tol;
    WitnessVerdict {
        accepted: norm_ok && boundary_ok && g_ok && stretch_ok,
        norm_ok,
        boundary_ok,
        g_ok,
        stretch_ok,
        g_tail_gap,
        stretch_tail_gap,
        bloch_norm_of_f: norm,
    }
}

/// One row of the `T_g` kernel-family device: at each `a`, the analytic
/// bound `|g′(a)|` and the quadrature value `‖T_g F_a‖_D` that dominates it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KernelBound {
    pub a: DiscPoint,
    pub analytic: f64,
    pub quadrature: f64,
}

/// Report of the `T_g` attainment experiment over a unit-Bergman corpus.
#[derive(Debug, Clone, Serialize)]
pub struct TgReport {
    /// `sup|g′|`.
    pub exact: f64,
    pub warning: Option<String>,
    /// `‖T_g 1‖_D` — the witness that attains exactly when `g` is affine.
    pub constant_witness_norm: f64,
    pub constant_witness_deficiency: f64,
    pub min_deficiency: f64,
    pub argmin_index: Option<usize>,
    pub kernel_family: Vec<KernelBound>,
}

/// For each corpus member `f` (normalized to `‖f‖_{A²} = 1`) computes the
/// deficiency `sup|g′|² − ‖T_g f‖²_D`; reports the minimum, the constant
/// witness `f = 1`, and the `F_a` kernel-family bounds.
pub fn tg_attainment_experiment(
    g: &Func,
    corpus: &[Func],
    rule: &QuadratureRule,
    kernel_points: &[DiscPoint],
    sup_cfg: &SupSearchConfig,
) -> Result<TgReport> {
    let (sup, warning) = opnorm_exact_tg(g, sup_cfg);
    let exact = sup.value;

    let tg_one = dirichlet_norm(&apply_tg(g, &Func::constant_re(1.0)), rule)?.value;
    let constant_witness_deficiency = exact * exact - tg_one * tg_one;

    let mut min_deficiency = f64::INFINITY;
    let mut argmin_index = None;
    for (i, f) in corpus.iter().enumerate() {
        let nb = bergman_norm(f, rule)?.value;
        if nb < 1e-12 {
            return Err(DiscError::InvalidParameter(format!(
                "corpus member {i} is numerically zero"
            )));
        }
        let unit = Func::scale(Complex64::new(1.0 / nb, 0.0), f.clone());
        let tg = dirichlet_norm(&apply_tg(g, &unit), rule)?.value;
        let deficiency = exact * exact - tg * tg;
        if deficiency < min_deficiency {
            min_deficiency = deficiency;
            argmin_index = Some(i);
        }
    }
    if corpus.is_empty() {
        min_deficiency = f64::NAN;
    }

    let mut kernel_family = Vec::with_capacity(kernel_points.len());
    for &a in kernel_points {
        let fa = crate::func::bergman_kernel_unit(a);
        let quadrature = dirichlet_norm(&apply_tg(g, &fa), rule)?.value;
        kernel_family.push(KernelBound {
            a,
            analytic: g.deriv_eval(a.to_complex()).norm(),
            quadrature,
        });
    }

    Ok(TgReport {
        exact,
        warning,
        constant_witness_norm: tg_one,
        constant_witness_deficiency,
        min_deficiency,
        argmin_index,
        kernel_family,
    })
}

/// Witness parameter of an operator-norm estimate.
#[derive(Debug, Clone, Serialize)]
pub enum WitnessParam {
    Point(DiscPoint),
    Zeros(ZeroSequence),
    Function(String),
}

/// Exact operator norm with the best witnessed lower bound.
#[derive(Debug, Clone, Serialize)]
pub struct OpNormEstimate {
    pub exact: f64,
    pub lower: f64,
    pub gap: f64,
    pub witness_param: WitnessParam,
    pub note: Option<String>,
}

/// Witness points along the ray toward the boundary arg-max of the sup.
pub fn default_witness_points(angle: f64) -> Vec<DiscPoint> {
    [0.0, 0.3, 0.5, 0.7, 0.9, 0.95]
        .iter()
        .filter_map(|&r| DiscPoint::new(r * angle.cos(), r * angle.sin()).ok())
        .collect()
}

/// `‖S_g‖` with the best `f_a`-family Dirichlet witness over the points.
pub fn sg_opnorm_estimate(
    g: &Func,
    witness_points: &[DiscPoint],
    rule: &QuadratureRule,
    sup_cfg: &SupSearchConfig,
) -> Result<OpNormEstimate> {
    let sup = opnorm_exact_sg(g, sup_cfg);
    let mut lower = 0.0f64;
    let mut best = DiscPoint::origin();
    for &a in witness_points {
        let wb = sg_lower_bound_dirichlet(g, a, rule)?;
        if wb.quadrature > lower {
            lower = wb.quadrature;
            best = a;
        }
    }
    Ok(OpNormEstimate {
        exact: sup.value,
        lower,
        gap: sup.value - lower,
        witness_param: WitnessParam::Point(best),
        note: None,
    })
}

/// `‖T_g‖` with the best `F_a` kernel-family witness over the points.
pub fn tg_opnorm_estimate(
    g: &Func,
    witness_points: &[DiscPoint],
    rule: &QuadratureRule,
    sup_cfg: &SupSearchConfig,
) -> Result<OpNormEstimate> {
    let (sup, note) = opnorm_exact_tg(g, sup_cfg);
    let mut lower = 0.0f64;
    let mut best = DiscPoint::origin();
    for &a in witness_points {
        let fa = crate::func::bergman_kernel_unit(a);
        let v = dirichlet_norm(&apply_tg(g, &fa), rule)?.value;
        if v > lower {
            lower = v;
            best = a;
        }
    }
    Ok(OpNormEstimate {
        exact: sup.value,
        lower,
        gap: sup.value - lower,
        witness_param: WitnessParam::Point(best),
        note,
    })
}

/// `‖S_g f‖` in one of the three spaces, for contraction checks.
pub fn sg_norm_in(
    space: SgSpace,
    g: &Func,
    fp: &PrimitivePair,
    rule: &QuadratureRule,
    search: &SearchConfig,
    bmoa_cfg: &BmoaConfig,
) -> Result<NormReport> {
    let sg = apply_sg(g, fp);
    match space {
        SgSpace::Bloch => Ok(bloch_norm(&sg, search)),
        SgSpace::Dirichlet => dirichlet_norm(&sg, rule),
        SgSpace::Bmoa => bmoa_norm(&sg, &bmoa_cfg.default_a_grid(), rule, bmoa_cfg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgSpace {
    Bloch,
    Dirichlet,
    Bmoa,
}

/// Pointwise residual of `(S_g + T_g)f = fg − f(0)g(0)` in derivative form:
/// `|(S_g f + T_g f)′(z) − (fg)′(z)|`.
pub fn mg_identity_residual(g: &Func, f: &Func, z: Complex64) -> f64 {
    let fp = PrimitivePair::of_func(f);
    let sg = apply_sg(g, &fp);
    let tg = apply_tg(g, f);
    let lhs = sg.deriv_at(z) + tg.deriv_at(z);
    let rhs = Func::product(f.clone(), g.clone()).deriv_eval(z);
    (lhs - rhs).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{disc_rule, log_disc_rule, DEFAULT_NR, DEFAULT_NT};
    use approx::assert_relative_eq;

    fn plain() -> QuadratureRule {
        disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap()
    }

    fn log() -> QuadratureRule {
        log_disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap()
    }

    fn half_one_plus_z() -> Func {
        Func::poly_re(&[0.5, 0.5])
    }

    #[test]
    fn apply_sg_is_fprime_times_g() {
        // g = 1, f = z² + 3 ⇒ pair (0, 2z): S_1 f = f − f(0)
        let f = Func::poly_re(&[3.0, 0.0, 1.0]);
        let sg = apply_sg(&Func::constant_re(1.0), &PrimitivePair::of_func(&f));
        assert_eq!(sg.value_at_zero, ZERO);
        let z = Complex64::new(0.3, -0.2);
        assert!((sg.deriv_at(z) - 2.0 * z).norm() < 1e-15);

        // g = z, f = z ⇒ pair (0, z)
        let sg = apply_sg(&Func::identity(), &PrimitivePair::of_func(&Func::identity()));
        assert!((sg.deriv_at(z) - z).norm() < 1e-15);
    }

    #[test]
    fn apply_tg_values() {
        // constant g kills T_g
        let tg = apply_tg(&Func::constant_re(5.0), &Func::poly_re(&[1.0, 2.0]));
        assert!(tg.deriv_at(Complex64::new(0.4, 0.1)).norm() < 1e-15);

        // g = z, f = 1 ⇒ T_g 1 = z
        let tg = apply_tg(&Func::identity(), &Func::constant_re(1.0));
        assert!((tg.deriv_at(Complex64::new(0.4, 0.1)) - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        // g = z², f = 1 ⇒ pair (0, 2z), Dirichlet norm √2
        let tg = apply_tg(&Func::poly_re(&[0.0, 0.0, 1.0]), &Func::constant_re(1.0));
        let n = dirichlet_norm(&tg, &plain()).unwrap();
        assert!((n.value - 2f64.sqrt()).abs() < 1e-7, "{}", n.value);
    }

    #[test]
    fn mg_identity_holds_pointwise() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let g = Func::sum(
            Func::Mobius(DiscPoint::real(0.4).unwrap()),
            Func::poly_re(&[0.1, 0.0, 0.3]),
        );
        let f = Func::product(
            Func::poly_re(&[1.0, -0.5, 0.25]),
            Func::Mobius(DiscPoint::new(0.2, 0.3).unwrap()),
        );
        for _ in 0..200 {
            let r: f64 = rng.gen_range(0.0..0.95);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = Complex64::new(r * t.cos(), r * t.sin());
            let scale = Func::product(f.clone(), g.clone())
                .deriv_eval(z)
                .norm()
                .max(1.0);
            assert!(
                mg_identity_residual(&g, &f, z) < 1e-10 * scale,
                "residual too large at {z}"
            );
        }
    }

    #[test]
    fn opnorm_sg_values() {
        let cfg = SupSearchConfig::default();
        assert_relative_eq!(
            opnorm_exact_sg(&Func::constant(Complex64::new(0.0, 3.0)), &cfg).value,
            3.0
        );
        let sup = opnorm_exact_sg(&half_one_plus_z(), &cfg);
        assert_relative_eq!(sup.value, 1.0, max_relative = 1e-12);
        assert!(sup.angle < 1e-6 || (std::f64::consts::TAU - sup.angle) < 1e-6);

        let m = Func::Mobius(DiscPoint::new(0.3, -0.4).unwrap());
        assert_relative_eq!(opnorm_exact_sg(&m, &cfg).value, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn opnorm_tg_values() {
        let cfg = SupSearchConfig::default();
        let (sup, warn) = opnorm_exact_tg(&Func::poly_re(&[3.0, 2.0]), &cfg);
        assert_relative_eq!(sup.value, 2.0, max_relative = 1e-12);
        assert!(warn.is_none());

        let (sup, _) = opnorm_exact_tg(&Func::poly_re(&[0.0, 0.0, 1.0]), &cfg);
        assert_relative_eq!(sup.value, 2.0, max_relative = 1e-12);

        let (sup, _) = opnorm_exact_tg(&Func::poly_re(&[0.0, 0.0, 0.0, 1.0]), &cfg);
        assert_relative_eq!(sup.value, 3.0, max_relative = 1e-12);

        let zs = ZeroSequence::from_reals(&[0.995]).unwrap();
        let (_, warn) = opnorm_exact_tg(&blaschke_from_zeros(&zs), &cfg);
        assert!(warn.is_some());
    }

    #[test]
    fn dirichlet_witness_bounds() {
        let rule = plain();
        // constant g: equality
        let wb = sg_lower_bound_dirichlet(
            &Func::constant_re(2.0),
            DiscPoint::real(0.3).unwrap(),
            &rule,
        )
        .unwrap();
        assert_relative_eq!(wb.analytic, 2.0);
        assert!((wb.quadrature - 2.0).abs() < 1e-7);

        let wb = sg_lower_bound_dirichlet(&Func::identity(), DiscPoint::real(0.9).unwrap(), &rule)
            .unwrap();
        assert_relative_eq!(wb.analytic, 0.9);
        assert!(wb.quadrature >= wb.analytic - 1e-6);

        let wb =
            sg_lower_bound_dirichlet(&half_one_plus_z(), DiscPoint::real(0.95).unwrap(), &rule)
                .unwrap();
        assert_relative_eq!(wb.analytic, 0.975);
        assert!(wb.quadrature >= 0.975 - 1e-6, "{}", wb.quadrature);
    }

    #[test]
    fn bmoa_witness_bound() {
        let a = DiscPoint::real(0.6).unwrap();
        let g = half_one_plus_z();
        // at the family's own parameter the stretch is exactly 1
        let fa = PrimitivePair::of_func(&test_bloch_family(a));
        let v = sg_lower_bound_bmoa(&g, &fa, a);
        assert_relative_eq!(v, g.eval(a.to_complex()).norm(), max_relative = 1e-13);

        // constant g scales linearly
        let c = sg_lower_bound_bmoa(&Func::constant_re(3.0), &fa, a);
        assert_relative_eq!(c, 3.0, max_relative = 1e-13);
    }

    #[test]
    fn bmoa_witness_bound_below_norm_on_corpus() {
        let rule = log();
        let cfg = BmoaConfig::default();
        let grid = cfg.default_a_grid();
        let g = half_one_plus_z();
        for coeffs in [[0.3, 1.0, -0.2], [0.0, 0.5, 0.5], [-0.4, 0.0, 0.9]] {
            let fp = PrimitivePair::of_func(&Func::poly_re(&coeffs));
            let sg = apply_sg(&g, &fp);
            let norm = bmoa_norm(&sg, &grid, &rule, &cfg).unwrap();
            for a in [0.0, 0.4, 0.8] {
                let bound = sg_lower_bound_bmoa(&g, &fp, DiscPoint::real(a).unwrap());
                assert!(
                    bound <= norm.seminorm + 1e-4,
                    "bound {bound} vs seminorm {}",
                    norm.seminorm
                );
            }
        }
    }

    #[test]
    fn deficiency_spot_checks() {
        let rule = plain();
        let sup = SupSearchConfig::default();

        // constant g with f(0) = 0 attains: Δ = 0
        let d = dirichlet_deficiency(
            &Func::constant_re(2.0),
            &PrimitivePair::of_func(&Func::identity()),
            &rule,
            &sup,
        )
        .unwrap();
        assert!(d.abs() < 1e-8, "{d}");

        // Δ(z) = 1 − 1/2
        let d = dirichlet_deficiency(
            &Func::identity(),
            &PrimitivePair::of_func(&Func::identity()),
            &rule,
            &sup,
        )
        .unwrap();
        assert!((d - 0.5).abs() < 1e-7, "{d}");

        // Δ(z²/√2) = 1 − 2/3 (normalization is internal)
        let d = dirichlet_deficiency(
            &Func::identity(),
            &PrimitivePair::of_func(&Func::poly_re(&[0.0, 0.0, 1.0])),
            &rule,
            &sup,
        )
        .unwrap();
        assert!((d - 1.0 / 3.0).abs() < 1e-7, "{d}");
    }

    #[test]
    fn deficiency_includes_value_at_zero_penalty() {
        let rule = plain();
        let sup = SupSearchConfig::default();
        let g = half_one_plus_z();
        let f = Func::poly_re(&[0.6, 0.8]);
        let fp = PrimitivePair::of_func(&f);
        let d = dirichlet_deficiency(&g, &fp, &rule, &sup).unwrap();
        let norm = dirichlet_norm(&fp, &rule).unwrap().value;
        let f0 = 0.6 / norm;
        assert!(d >= 1.0 * f0 * f0 - 1e-7, "Δ = {d}, penalty = {}", f0 * f0);
    }

    #[test]
    fn single_zero_extremal_arithmetic() {
        // one zero at 0.9: stretch is exactly 1 there, so the BMOA bound is
        // |g(0.9)| = 0.9 for g = z before normalization
        let zs = ZeroSequence::from_reals(&[0.9]).unwrap();
        let b = blaschke_from_zeros(&zs);
        let h = Func::shift(b.clone(), -b.eval(ZERO));
        let hp = PrimitivePair::of_func(&h);
        let bound = sg_lower_bound_bmoa(&Func::identity(), &hp, DiscPoint::real(0.9).unwrap());
        assert_relative_eq!(bound, 0.9, max_relative = 1e-12);

        // Bloch ratio: numerator ≥ 0.9 − ε, denominator ≤ 1 (Schwarz–Pick)
        let cfg = SearchConfig::default();
        let denom = bloch_norm(&hp, &cfg);
        let numer = bloch_norm(&apply_sg(&Func::identity(), &hp), &cfg);
        assert!(denom.value <= 1.0 + 1e-9);
        assert!(numer.seminorm / denom.value >= 0.9 - 1e-5);
    }

    #[test]
    fn extremal_bloch_improves_with_n() {
        let g = half_one_plus_z();
        let cfg = ExtremalConfig::default();
        let r1 = extremal_bloch(&g, 1, &cfg).unwrap();
        let r4 = extremal_bloch(&g, 4, &cfg).unwrap();
        assert!(r1.zeros.len() == 1);
        assert!(r4.zeros.len() > 1);
        assert!(r4.lower_bound >= r1.lower_bound - 1e-9);
        assert!(
            r4.lower_bound <= r4.exact + 1e-4,
            "soundness: {}",
            r4.lower_bound
        );
        // constant g short-circuits to exact attainment
        let rc = extremal_bloch(&Func::constant_re(2.0), 1, &cfg).unwrap();
        assert!((rc.lower_bound - 2.0).abs() < 1e-6, "{}", rc.lower_bound);
    }

    #[test]
    fn witness_check_verdicts() {
        let g = half_one_plus_z();
        let cfg = ExtremalConfig::default();

        // interior singleton: rejected on the boundary-march requirement
        let fa = PrimitivePair::of_func(&test_bloch_family(DiscPoint::real(0.5).unwrap()));
        let zs = ZeroSequence::from_reals(&[0.5]).unwrap();
        let v = extremal_witness_check(&g, &fa, &zs, 0.05, &cfg);
        assert!(!v.accepted && !v.boundary_ok);
        assert!(v.norm_ok);

        // a polynomial in B₀ dies on the stretch condition
        let poly = Func::poly_re(&[0.0, 1.0]);
        let fp = PrimitivePair::of_func(&poly);
        let zs = ZeroSequence::from_reals(&[0.9, 0.99, 0.999, 0.9999]).unwrap();
        let v = extremal_witness_check(&g, &fp, &zs, 0.05, &cfg);
        assert!(!v.accepted && !v.stretch_ok && v.boundary_ok);
    }

    #[test]
    fn tg_experiment_affine_attains() {
        let rule = plain();
        let sup = SupSearchConfig::default();
        let g = Func::poly_re(&[3.0, 2.0]);
        let report =
            tg_attainment_experiment(&g, &[], &rule, &default_witness_points(0.0), &sup).unwrap();
        assert_relative_eq!(report.exact, 2.0, max_relative = 1e-12);
        assert!((report.constant_witness_norm - 2.0).abs() < 1e-9);
        assert!(report.constant_witness_deficiency.abs() < 1e-7);
        for kb in &report.kernel_family {
            assert!(kb.quadrature >= kb.analytic - 1e-6);
        }
    }

    #[test]
    fn tg_experiment_square_never_attains() {
        let rule = plain();
        let sup = SupSearchConfig::default();
        let g = Func::poly_re(&[0.0, 0.0, 1.0]);
        let corpus: Vec<Func> = (1..=6)
            .map(|k| {
                let mut cs = vec![0.0; k + 1];
                cs[k] = 1.0;
                Func::poly_re(&cs)
            })
            .collect();
        let report =
            tg_attainment_experiment(&g, &corpus, &rule, &default_witness_points(0.0), &sup)
                .unwrap();
        assert!(report.min_deficiency > 0.0, "{}", report.min_deficiency);
        // monomial z^k has deficiency 4/(k+2): the minimum in this corpus is 1/2
        assert!(
            (report.min_deficiency - 0.5).abs() < 1e-6,
            "{}",
            report.min_deficiency
        );
        assert_eq!(report.argmin_index, Some(5));
    }

    #[test]
    fn contraction_all_three_spaces() {
        let g = half_one_plus_z();
        let rule_p = plain();
        let rule_l = log();
        let search = SearchConfig::default();
        let bmoa_cfg = BmoaConfig::default();
        let sup = SupSearchConfig::default();
        let exact = opnorm_exact_sg(&g, &sup).value;
        for coeffs in [[0.5, 1.0, -0.3], [0.0, 0.2, 0.9], [1.0, -1.0, 0.5]] {
            let fp = PrimitivePair::of_func(&Func::poly_re(&coeffs));
            let fb = bloch_norm(&fp, &search);
            let sb = sg_norm_in(SgSpace::Bloch, &g, &fp, &rule_p, &search, &bmoa_cfg).unwrap();
            assert!(sb.value <= fb.value * exact + 1e-5);

            let fd = dirichlet_norm(&fp, &rule_p).unwrap();
            let sd = sg_norm_in(SgSpace::Dirichlet, &g, &fp, &rule_p, &search, &bmoa_cfg).unwrap();
            assert!(sd.value <= fd.value * exact + 1e-5);

            let fm = bmoa_norm(&fp, &bmoa_cfg.default_a_grid(), &rule_l, &bmoa_cfg).unwrap();
            let sm = sg_norm_in(SgSpace::Bmoa, &g, &fp, &rule_l, &search, &bmoa_cfg).unwrap();
            assert!(sm.value <= fm.value * exact + 1e-5);
        }
    }

    #[test]
    fn opnorm_estimates() {
        let rule = plain();
        let sup = SupSearchConfig::default();

        let g = half_one_plus_z();
        let est = sg_opnorm_estimate(&g, &default_witness_points(0.0), &rule, &sup).unwrap();
        assert_relative_eq!(est.exact, 1.0, max_relative = 1e-12);
        assert!(est.lower >= 0.975, "{}", est.lower);
        assert!(est.gap >= -1e-9);

        // constant g: lower meets exact up to the 1e−4 soundness slack
        // (the a = 0.95 witness quadrature carries ~1e−5 of rule error)
        let gc = Func::constant_re(3.0);
        let est = sg_opnorm_estimate(&gc, &default_witness_points(0.0), &rule, &sup).unwrap();
        assert!((est.exact - 3.0).abs() < 1e-12);
        assert!((est.lower - 3.0).abs() < 1e-4);
        assert!(est.gap.abs() < 1e-4);

        let g2 = Func::poly_re(&[0.0, 0.0, 1.0]);
        let est = tg_opnorm_estimate(&g2, &default_witness_points(0.0), &rule, &sup).unwrap();
        assert_relative_eq!(est.exact, 2.0, max_relative = 1e-12);
        assert!(est.lower <= est.exact + 1e-6);
        assert!(est.lower >= 1.79, "{}", est.lower);
    }
}
