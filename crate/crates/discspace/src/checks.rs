//! Identity and inequality suites behind `discspace check`: the
//! Littlewood–Paley identity, the Blaschke zero-derivative identity,
//! circle/disc/log mean-value inequalities, Schwarz–Pick, and the Möbius
//! involution and invariance laws. Each suite reports its worst residual
//! against a fixed tolerance.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::corpus::{polynomial_corpus, random_polynomial, seeded_rng};
use crate::error::Result;
use crate::func::{blaschke_from_zeros, Func, PrimitivePair};
use crate::geometry::{
    mobius_eval, pseudo_hyperbolic, thinness_defects, DiscPoint, ZeroSequence,
};
use crate::quad::{circle_mean, disc_rule, integrate, log_disc_rule};

/// Outcome of one suite: pass/fail with the worst-case residual.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: &str, cases: usize, worst: f64, tol: f64) -> Self {
        Self {
            suite: suite.into(),
            cases,
            worst_residual: worst,
            tolerance: tol,
            passed: worst <= tol,
        }
    }
}

/// Settings shared by the suites.
#[derive(Debug, Clone, Copy)]
pub struct CheckSettings {
    pub seed: u64,
    pub n_r: usize,
    pub n_t: usize,
}

impl Default for CheckSettings {
    fn default() -> Self {
        Self {
            seed: 7,
            n_r: 96,
            n_t: 128,
        }
    }
}

fn random_zero_set(rng: &mut rand_chacha::ChaCha8Rng, len: usize, max_abs: f64) -> ZeroSequence {
    let mut pts: Vec<DiscPoint> = Vec::with_capacity(len);
    while pts.len() < len {
        let r = rng.gen_range(0.0..max_abs);
        let t = rng.gen_range(0.0..std::f64::consts::TAU);
        if let Ok(p) = DiscPoint::new(r * t.cos(), r * t.sin()) {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    ZeroSequence::new(pts).expect("rejection sampling produced duplicates")
}

/// `|f(0)|² + 2∫|f′|² log(1/|z|) dA = Σ|a_k|²`: monomials `z^k`, `k = 1..8`
/// (both sides 1) plus 100 random polynomials of degree ≤ 10.
pub fn littlewood_paley_suite(s: &CheckSettings) -> Result<SuiteReport> {
    let rule = log_disc_rule(s.n_r, s.n_t)?;
    let mut worst = 0.0f64;
    let mut cases = 0;
    for k in 1..=8usize {
        let mut cs = vec![0.0; k + 1];
        cs[k] = 1.0;
        let f = Func::poly_re(&cs);
        let lp = integrate(&rule, |z| f.deriv_eval(z).norm_sqr())?;
        worst = worst.max((lp - 1.0).abs());
        cases += 1;
    }
    for f in polynomial_corpus(s.seed, 100, 10) {
        let lp = integrate(&rule, |z| f.deriv_eval(z).norm_sqr())?;
        let lhs = f.eval(Complex64::new(0.0, 0.0)).norm_sqr() + lp;
        let rhs: f64 = f.poly_coeffs().unwrap().iter().map(|c| c.norm_sqr()).sum();
        worst = worst.max((lhs - rhs).abs());
        cases += 1;
    }
    Ok(SuiteReport::new("littlewood-paley", cases, worst, 1e-6))
}

/// `(1−|z_n|²)|B′(z_n)| = ∏_{k≠n} ρ(z_n, z_k)`, both sides closed form,
/// on 50 random 10-zero sets with `|z_n| ≤ 0.95`.
pub fn blaschke_identity_suite(s: &CheckSettings) -> Result<SuiteReport> {
    let mut rng = seeded_rng(s.seed);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..50 {
        let zs = random_zero_set(&mut rng, 10, 0.95);
        let b = blaschke_from_zeros(&zs);
        let defects = thinness_defects(&zs);
        for (i, zn) in zs.points().iter().enumerate() {
            let lhs = zn.one_minus_abs_sq() * b.deriv_eval(zn.to_complex()).norm();
            worst = worst.max((lhs - defects[i]).abs());
            cases += 1;
        }
    }
    Ok(SuiteReport::new("blaschke-zero-derivative", cases, worst, 1e-12))
}

/// `|f(0)|² ≤ mean_{|z|=r}|f|²` and `|f(0)|² ≤ ∫|f|² dA` over 500 random
/// polynomials; residual is the worst violation.
pub fn mean_value_suite(s: &CheckSettings) -> Result<SuiteReport> {
    let mut rng = seeded_rng(s.seed);
    let rule = disc_rule(64, 128)?;
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..500 {
        let f = random_polynomial(&mut rng, 10);
        let f0 = f.eval(Complex64::new(0.0, 0.0)).norm_sqr();
        for r in [0.25, 0.5, 0.75, 0.9] {
            let m = circle_mean(&f, r, 128)?;
            worst = worst.max(f0 - m);
            cases += 1;
        }
        let v = integrate(&rule, |z| f.eval(z).norm_sqr())?;
        worst = worst.max(f0 - v);
        cases += 1;
    }
    Ok(SuiteReport::new("mean-value", cases, worst.max(0.0), 1e-10))
}

/// `|f(0)|² ≤ 2∫|f|² log(1/|z|) dA` over the same corpus recipe.
pub fn log_mean_value_suite(s: &CheckSettings) -> Result<SuiteReport> {
    let mut rng = seeded_rng(s.seed);
    let rule = log_disc_rule(64, 128)?;
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..500 {
        let f = random_polynomial(&mut rng, 10);
        let f0 = f.eval(Complex64::new(0.0, 0.0)).norm_sqr();
        let v = integrate(&rule, |z| f.eval(z).norm_sqr())?;
        worst = worst.max(f0 - v);
        cases += 1;
    }
    Ok(SuiteReport::new("log-mean-value", cases, worst.max(0.0), 1e-10))
}

/// `(1−|z|²)|B′(z)| ≤ 1` sampled over random Blaschke products.
pub fn schwarz_pick_suite(s: &CheckSettings) -> Result<SuiteReport> {
    let mut rng = seeded_rng(s.seed);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..50 {
        let len = rng.gen_range(1..=8);
        let zs = random_zero_set(&mut rng, len, 0.9);
        let b = blaschke_from_zeros(&zs);
        for _ in 0..200 {
            let r: f64 = rng.gen_range(0.0..0.999);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = Complex64::new(r * t.cos(), r * t.sin());
            let v = (1.0 - z.norm_sqr()) * b.deriv_eval(z).norm();
            worst = worst.max(v - 1.0);
            cases += 1;
        }
    }
    Ok(SuiteReport::new("schwarz-pick", cases, worst.max(0.0), 1e-12))
}

/// `σ_a(σ_a(z)) = z` and `ρ(σ_a(u), σ_a(v)) = ρ(u, v)` on random samples.
pub fn mobius_involution_suite(s: &CheckSettings) -> Result<SuiteReport> {
    let mut rng = seeded_rng(s.seed);
    let mut point = |max: f64| -> DiscPoint {
        loop {
            let r = rng.gen_range(0.0..max);
            let t = rng.gen_range(0.0..std::f64::consts::TAU);
            if let Ok(p) = DiscPoint::new(r * t.cos(), r * t.sin()) {
                return p;
            }
        }
    };
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..1000 {
        let a = point(0.95);
        let z = point(0.95);
        let back = mobius_eval(a, mobius_eval(a, z.to_complex()));
        worst = worst.max((back - z.to_complex()).norm());

        let u = point(0.9);
        let v = point(0.9);
        let su = DiscPoint::try_from(mobius_eval(a, u.to_complex()))?;
        let sv = DiscPoint::try_from(mobius_eval(a, v.to_complex()))?;
        worst = worst.max((pseudo_hyperbolic(su, sv) - pseudo_hyperbolic(u, v)).abs());
        cases += 2;
    }
    Ok(SuiteReport::new("mobius-involution", cases, worst, 1e-12))
}

/// Lemma-2/Lemma-5 style inequalities restated for primitive pairs used by
/// norms: Dirichlet and Littlewood–Paley seminorms are nonnegative.
pub fn seminorm_positivity_suite(s: &CheckSettings) -> Result<SuiteReport> {
    let plain = disc_rule(48, 64)?;
    let logr = log_disc_rule(48, 64)?;
    let mut worst = 0.0f64;
    let mut cases = 0;
    for f in polynomial_corpus(s.seed ^ 0x5eed, 100, 8) {
        let fp = PrimitivePair::of_func(&f);
        let d = crate::spaces::dirichlet_norm(&fp, &plain)?;
        let h = crate::spaces::h2_norm(&fp, &logr)?;
        worst = worst.max(-d.seminorm).max(-h.seminorm);
        cases += 2;
    }
    Ok(SuiteReport::new("seminorm-positivity", cases, worst.max(0.0), 0.0))
}

/// Run every suite in a fixed order.
pub fn run_all(s: &CheckSettings) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        littlewood_paley_suite(s)?,
        blaschke_identity_suite(s)?,
        mean_value_suite(s)?,
        log_mean_value_suite(s)?,
        schwarz_pick_suite(s)?,
        mobius_involution_suite(s)?,
        seminorm_positivity_suite(s)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_at_default_settings() {
        let reports = run_all(&CheckSettings::default()).unwrap();
        assert_eq!(reports.len(), 7);
        for r in &reports {
            assert!(
                r.passed,
                "suite {} failed: residual {} > {}",
                r.suite, r.worst_residual, r.tolerance
            );
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let s = CheckSettings::default();
        let a = littlewood_paley_suite(&s).unwrap();
        let b = littlewood_paley_suite(&s).unwrap();
        assert_eq!(a.worst_residual, b.worst_residual);
    }
}
