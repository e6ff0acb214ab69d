//! Quadrature on the unit disc against normalized area measure
//! `dA = (1/π) dx dy`, against the weight `2·log(1/|z|) dA`, and means over
//! circles.
//!
//! Radial integration uses Gauss–Legendre nodes; the logarithmic weight is
//! handled by the substitution `r = e^{−s}`, which moves the singularity at
//! the origin into the analytic weight `s·e^{−2s}` on panels of `[0, ∞)`,
//! and clusters radial nodes near the boundary where derivative integrands
//! concentrate. Angular integration is the uniform trapezoid rule, which is
//! spectrally accurate for analytic integrands.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DiscError, Result};
use crate::func::Func;
use crate::geometry::DiscPoint;

/// Default radial resolution. Integrands built from Blaschke products with
/// zeros of modulus above 0.99 need `n_r ≥ 256`.
pub const DEFAULT_NR: usize = 96;
/// Default angular resolution.
pub const DEFAULT_NT: usize = 256;

/// Truncation of the substituted radial axis; the discarded tail of
/// `s·e^{−2s}` is below 1e−21.
const LOG_S_MAX: f64 = 26.0;
/// Panel edges for the substituted radial integral, graded toward `s = 0`
/// (the boundary `|z| = 1`).
const LOG_PANELS: [f64; 7] = [0.0, 0.03125, 0.125, 0.5, 2.0, 8.0, LOG_S_MAX];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RuleKind {
    PlainArea,
    LogWeighted,
    Circle(f64),
}

/// Positive-weight node set for one of the disc measures.
///
/// Nodes are laid out radius-major: `angular` consecutive entries share a
/// radius, which lets consumers form an embedded half-angle rule for cheap
/// error estimates.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<DiscPoint>,
    weights: Vec<f64>,
    kind: RuleKind,
    angular: usize,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[DiscPoint] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn angular(&self) -> usize {
        self.angular
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for &w in &self.weights {
            acc.add(w);
        }
        acc.value()
    }
}

/// Neumaier compensated summation; deterministic for a fixed rule.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn gauss_legendre_on(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        xs.iter().map(|x| mid + half * x).collect(),
        ws.iter().map(|w| half * w).collect(),
    )
}

fn check_sizes(n_r: usize, n_t: usize) -> Result<()> {
    if n_r < 2 || n_t < 4 {
        return Err(DiscError::InvalidParameter(format!(
            "rule sizes too small: n_r = {n_r} (min 2), n_t = {n_t} (min 4)"
        )));
    }
    Ok(())
}

/// Tensor rule for `∫_D f dA`: Gauss–Legendre in radius (the factor `r` of
/// the area element folded into the weights) times uniform trapezoid in
/// angle. Weights sum to 1.
pub fn disc_rule(n_r: usize, n_t: usize) -> Result<QuadratureRule> {
    check_sizes(n_r, n_t)?;
    let (rs, ws) = gauss_legendre_on(0.0, 1.0, n_r);
    let mut nodes = Vec::with_capacity(n_r * n_t);
    let mut weights = Vec::with_capacity(n_r * n_t);
    for (&r, &w) in rs.iter().zip(&ws) {
        let wr = 2.0 * w * r / n_t as f64;
        for j in 0..n_t {
            let t = std::f64::consts::TAU * j as f64 / n_t as f64;
            nodes.push(DiscPoint::new(r * t.cos(), r * t.sin())?);
            weights.push(wr);
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        kind: RuleKind::PlainArea,
        angular: n_t,
    })
}

/// Rule for `∫_D f(z) · 2 log(1/|z|) dA(z)`; the weight factor is folded
/// into the node weights, so weights sum to `2∫ log(1/|z|) dA = 1`.
///
/// Radially this is `∫₀^∞ f(e^{−s}e^{iθ}) s e^{−2s} ds` after `r = e^{−s}`,
/// integrated by composite Gauss–Legendre on panels graded toward `s = 0`.
/// `n_r` is the total radial node budget across panels.
pub fn log_disc_rule(n_r: usize, n_t: usize) -> Result<QuadratureRule> {
    check_sizes(n_r, n_t)?;
    let panels = LOG_PANELS.len() - 1;
    let per_panel = n_r.div_ceil(panels).max(4);
    let mut radial: Vec<(f64, f64)> = Vec::with_capacity(panels * per_panel);
    for p in 0..panels {
        let (ss, ws) = gauss_legendre_on(LOG_PANELS[p], LOG_PANELS[p + 1], per_panel);
        for (&s, &w) in ss.iter().zip(&ws) {
            radial.push((s, w * s * (-2.0 * s).exp()));
        }
    }
    let mut nodes = Vec::with_capacity(radial.len() * n_t);
    let mut weights = Vec::with_capacity(radial.len() * n_t);
    for &(s, wr) in &radial {
        let r = (-s).exp();
        let w = 4.0 * wr / n_t as f64;
        for j in 0..n_t {
            let t = std::f64::consts::TAU * j as f64 / n_t as f64;
            nodes.push(DiscPoint::new(r * t.cos(), r * t.sin())?);
            weights.push(w);
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        kind: RuleKind::LogWeighted,
        angular: n_t,
    })
}

/// Normalized mean rule on the circle `|z| = r`.
pub fn circle_rule(r: f64, n: usize) -> Result<QuadratureRule> {
    if !(0.0 < r && r < 1.0) {
        return Err(DiscError::InvalidParameter(format!(
            "circle radius must lie in (0, 1), got {r}"
        )));
    }
    if n < 8 {
        return Err(DiscError::InvalidParameter(format!(
            "circle rule needs at least 8 points, got {n}"
        )));
    }
    let mut nodes = Vec::with_capacity(n);
    for j in 0..n {
        let t = std::f64::consts::TAU * j as f64 / n as f64;
        nodes.push(DiscPoint::new(r * t.cos(), r * t.sin())?);
    }
    Ok(QuadratureRule {
        nodes,
        weights: vec![1.0 / n as f64; n],
        kind: RuleKind::Circle(r),
        angular: n,
    })
}

/// `Σ w_i · F(z_i)` with compensated summation. A non-finite integrand
/// value fails with the offending node.
pub fn integrate(rule: &QuadratureRule, integrand: impl Fn(Complex64) -> f64) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for (i, (&z, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let v = integrand(z.to_complex());
        if !v.is_finite() {
            return Err(DiscError::NumericFailure {
                index: i,
                re: z.re(),
                im: z.im(),
                message: format!("integrand value {v}"),
            });
        }
        acc.add(w * v);
    }
    Ok(acc.value())
}

/// Complex-valued variant of [`integrate`].
pub fn integrate_complex(
    rule: &QuadratureRule,
    integrand: impl Fn(Complex64) -> Complex64,
) -> Result<Complex64> {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (i, (&z, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let v = integrand(z.to_complex());
        if !v.is_finite() {
            return Err(DiscError::NumericFailure {
                index: i,
                re: z.re(),
                im: z.im(),
                message: format!("integrand value {v}"),
            });
        }
        re.add(w * v.re);
        im.add(w * v.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Trapezoid mean of `|f|²` on the circle of radius `r`.
pub fn circle_mean(f: &Func, r: f64, n: usize) -> Result<f64> {
    let rule = circle_rule(r, n)?;
    integrate(&rule, |z| f.eval(z).norm_sqr())
}

/// [`integrate`] plus an error estimate from the embedded half-angle rule
/// (every other angular node at doubled weight).
pub fn integrate_with_estimate(
    rule: &QuadratureRule,
    integrand: impl Fn(Complex64) -> f64,
) -> Result<(f64, f64)> {
    let mut full = CompensatedSum::new();
    let mut half = CompensatedSum::new();
    let stride = rule.angular;
    for (i, (&z, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let v = integrand(z.to_complex());
        if !v.is_finite() {
            return Err(DiscError::NumericFailure {
                index: i,
                re: z.re(),
                im: z.im(),
                message: format!("integrand value {v}"),
            });
        }
        full.add(w * v);
        if stride % 2 == 0 && i % stride % 2 == 0 {
            half.add(2.0 * w * v);
        }
    }
    let full = full.value();
    let est = if stride % 2 == 0 {
        (full - half.value()).abs()
    } else {
        0.0
    };
    Ok((full, est))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::bergman_kernel_unit;
    use crate::geometry::mobius_deriv;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_basics() {
        for n in [2, 5, 16, 48] {
            let (xs, ws) = gauss_legendre(n);
            let total: f64 = ws.iter().sum();
            assert_relative_eq!(total, 2.0, max_relative = 1e-14);
            // degree-(2n−1) exactness spot check: ∫ x² = 2/3
            let m2: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x * x).sum();
            assert_relative_eq!(m2, 2.0 / 3.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn plain_rule_moments() {
        let rule = disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap();
        assert!((rule.weight_sum() - 1.0).abs() < 1e-10);
        assert!((integrate(&rule, |_| 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((integrate(&rule, |z| z.norm_sqr()).unwrap() - 0.5).abs() < 1e-10);
        let zmean = integrate_complex(&rule, |z| z).unwrap();
        assert!(zmean.norm() < 1e-12);
    }

    #[test]
    fn log_rule_moments() {
        let rule = log_disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap();
        assert!((rule.weight_sum() - 1.0).abs() < 1e-10);
        assert!((integrate(&rule, |_| 1.0).unwrap() - 1.0).abs() < 1e-10);
        // 4∫ r³ log(1/r) dr = 1/4
        assert!((integrate(&rule, |z| z.norm_sqr()).unwrap() - 0.25).abs() < 1e-10);
    }

    #[test]
    fn log_rule_monomial_derivatives() {
        // 2∫ |(z^k)′|² log(1/|z|) dA = 1 for every k ≥ 1
        let rule = log_disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap();
        for k in 1..=8 {
            let v = integrate(&rule, |z| {
                let kf = k as f64;
                (kf * z.powu(k as u32 - 1).norm()).powi(2)
            })
            .unwrap();
            assert!((v - 1.0).abs() < 1e-8, "k = {k}: {v}");
        }
    }

    #[test]
    fn circle_mean_values() {
        let c3 = Func::constant(Complex64::new(3.0, -4.0));
        assert_relative_eq!(circle_mean(&c3, 0.5, 64).unwrap(), 25.0, max_relative = 1e-14);

        let id = Func::identity();
        assert_relative_eq!(circle_mean(&id, 0.5, 64).unwrap(), 0.25, max_relative = 1e-13);

        let cube = Func::poly_re(&[0.0, 0.0, 0.0, 1.0]);
        let v = circle_mean(&cube, 0.9, 64).unwrap();
        assert!((v - 0.9f64.powi(6)).abs() < 1e-12);

        assert!(circle_mean(&id, 1.0, 64).is_err());
        assert!(circle_mean(&id, 0.5, 4).is_err());
    }

    #[test]
    fn automorphism_jacobian_integrals() {
        let a = DiscPoint::real(0.5).unwrap();
        let plain = disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap();
        let v = integrate(&plain, |z| mobius_deriv(a, z).norm_sqr()).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");

        // normalized Bergman kernel has unit Bergman norm
        let fa = bergman_kernel_unit(a);
        let v = integrate(&plain, |z| fa.eval(z).norm_sqr()).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");

        // 2∫ |σ_a′|² log(1/|z|) dA = 1 − |a|²
        let log = log_disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap();
        let v = integrate(&log, |z| mobius_deriv(a, z).norm_sqr()).unwrap();
        assert!((v - 0.75).abs() < 1e-8, "{v}");
    }

    #[test]
    fn refinement_convergence() {
        let a = DiscPoint::real(0.9).unwrap();
        let coarse = disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap();
        let fine = disc_rule(2 * DEFAULT_NR, 2 * DEFAULT_NT).unwrap();
        let f = |z: Complex64| mobius_deriv(a, z).norm_sqr();
        let vc = integrate(&coarse, f).unwrap();
        let vf = integrate(&fine, f).unwrap();
        assert!((vc - vf).abs() < 1e-8, "{vc} vs {vf}");

        let lc = log_disc_rule(DEFAULT_NR, DEFAULT_NT).unwrap();
        let lf = log_disc_rule(2 * DEFAULT_NR, 2 * DEFAULT_NT).unwrap();
        let vc = integrate(&lc, f).unwrap();
        let vf = integrate(&lf, f).unwrap();
        assert!((vc - vf).abs() < 1e-8, "{vc} vs {vf}");
    }

    #[test]
    fn nodes_stay_interior() {
        for rule in [
            disc_rule(32, 16).unwrap(),
            log_disc_rule(32, 16).unwrap(),
            circle_rule(0.97, 32).unwrap(),
        ] {
            for z in rule.nodes() {
                assert!(z.abs() <= 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn degenerate_sizes_rejected() {
        assert!(disc_rule(1, 16).is_err());
        assert!(disc_rule(16, 3).is_err());
        assert!(log_disc_rule(1, 16).is_err());
    }

    #[test]
    fn nan_integrand_names_node() {
        let rule = disc_rule(4, 8).unwrap();
        let err = integrate(&rule, |z| {
            if z.re > 0.0 {
                f64::NAN
            } else {
                1.0
            }
        })
        .unwrap_err();
        assert!(err.to_string().contains("numeric failure at node"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Func> {
            proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..8).prop_map(|cs| {
                Func::Polynomial(cs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            /// |f(0)|² never exceeds circle means or either disc integral of |f|².
            #[test]
            fn mean_value_inequalities(f in poly(), r in 0.05..0.95f64) {
                let f0 = f.eval(Complex64::new(0.0, 0.0)).norm_sqr();
                let cm = circle_mean(&f, r, 128).unwrap();
                prop_assert!(f0 <= cm + 1e-10);

                let plain = disc_rule(48, 64).unwrap();
                let v = integrate(&plain, |z| f.eval(z).norm_sqr()).unwrap();
                prop_assert!(f0 <= v + 1e-10);

                let log = log_disc_rule(48, 64).unwrap();
                let v = integrate(&log, |z| f.eval(z).norm_sqr()).unwrap();
                prop_assert!(f0 <= v + 1e-10);
            }

            /// Positivity: nonnegative integrands integrate to nonnegative values.
            #[test]
            fn positivity(f in poly()) {
                let plain = disc_rule(16, 16).unwrap();
                let v = integrate(&plain, |z| f.eval(z).norm_sqr()).unwrap();
                prop_assert!(v >= 0.0);
            }

            /// Littlewood–Paley for polynomials: |f(0)|² + LP term = Σ|a_k|².
            #[test]
            fn littlewood_paley_polynomials(f in poly()) {
                let log = log_disc_rule(DEFAULT_NR, 64).unwrap();
                let lp = integrate(&log, |z| f.deriv_eval(z).norm_sqr()).unwrap();
                let lhs = f.eval(Complex64::new(0.0, 0.0)).norm_sqr() + lp;
                let rhs: f64 = f.poly_coeffs().unwrap().iter().map(|c| c.norm_sqr()).sum();
                prop_assert!((lhs - rhs).abs() < 1e-6, "{lhs} vs {rhs}");
            }
        }
    }
}
