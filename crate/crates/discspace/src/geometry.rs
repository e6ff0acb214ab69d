//! Geometry of the unit disc: points, Möbius automorphisms, the
//! pseudo-hyperbolic metric and thinness measurements for zero sequences.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DiscError, Result};

/// A point strictly inside the unit disc.
///
/// Construction rejects `re² + im² ≥ 1`, so every `DiscPoint` handed to the
/// numerical layers is valid geometry by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint {
    re: f64,
    im: f64,
}

impl DiscPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || re * re + im * im >= 1.0 {
            return Err(DiscError::InvalidParameter(format!(
                "point {re} + {im}i is not strictly inside the unit disc"
            )));
        }
        Ok(Self { re, im })
    }

    pub fn origin() -> Self {
        Self { re: 0.0, im: 0.0 }
    }

    /// Real point `x` with `|x| < 1`.
    pub fn real(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// `1 − |z|²` in a cancellation-free form; exact to relative rounding
    /// even for points within `1e−13` of the boundary.
    pub fn one_minus_abs_sq(&self) -> f64 {
        (1.0 - self.re) * (1.0 + self.re) - self.im * self.im
    }
}

impl TryFrom<Complex64> for DiscPoint {
    type Error = DiscError;

    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }
}

/// A finite, duplicate-free list of interior points used as Blaschke zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSequence {
    points: Vec<DiscPoint>,
}

impl ZeroSequence {
    /// Duplicates are rejected outright: a repeated zero forces every
    /// thinness defect to 0 and makes the downstream experiments vacuous.
    pub fn new(points: Vec<DiscPoint>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            for q in &points[..i] {
                if p == q {
                    return Err(DiscError::DegenerateSequence(format!(
                        "duplicate zero {} + {}i",
                        p.re(),
                        p.im()
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn from_reals(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| DiscPoint::real(x)).collect::<Result<_>>()?)
    }

    pub fn points(&self) -> &[DiscPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Möbius automorphism `σ_a(z) = (a − z)/(1 − ā z)`.
///
/// `z` may lie on the closed disc; sup-norm searches sample the boundary.
pub fn mobius_eval(a: DiscPoint, z: Complex64) -> Complex64 {
    let a = a.to_complex();
    (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// Derivative `σ_a′(z) = (|a|² − 1)/(1 − ā z)²`.
pub fn mobius_deriv(a: DiscPoint, z: Complex64) -> Complex64 {
    let ac = a.to_complex();
    let d = Complex64::new(1.0, 0.0) - ac.conj() * z;
    Complex64::new(-a.one_minus_abs_sq(), 0.0) / (d * d)
}

/// Pseudo-hyperbolic distance `ρ(u, v) = |σ_u(v)|`.
///
/// Computed from `ρ² = |u−v|² / ((1−|u|²)(1−|v|²) + |u−v|²)`, which is
/// symmetric and stays accurate when both points crowd the boundary.
pub fn pseudo_hyperbolic(u: DiscPoint, v: DiscPoint) -> f64 {
    let dr = u.re() - v.re();
    let di = u.im() - v.im();
    let d2 = dr * dr + di * di;
    if d2 == 0.0 {
        return 0.0;
    }
    (d2 / (u.one_minus_abs_sq() * v.one_minus_abs_sq() + d2)).sqrt()
}

/// Thinness defects `δ_k = ∏_{j≠k} ρ(z_j, z_k)` for each zero.
///
/// A singleton has defect 1 (empty product). Duplicates never reach here;
/// `ZeroSequence` rejects them at construction.
pub fn thinness_defects(zs: &ZeroSequence) -> Vec<f64> {
    let pts = zs.points();
    (0..pts.len())
        .map(|k| {
            (0..pts.len())
                .filter(|&j| j != k)
                .map(|j| pseudo_hyperbolic(pts[j], pts[k]))
                .product()
        })
        .collect()
}

fn min_defect(pts: &[DiscPoint]) -> f64 {
    let mut min = f64::INFINITY;
    for k in 0..pts.len() {
        let mut d = 1.0;
        for j in 0..pts.len() {
            if j != k {
                d *= pseudo_hyperbolic(pts[j], pts[k]);
            }
        }
        min = min.min(d);
    }
    min
}

fn check_candidates(candidates: &ZeroSequence) -> Result<()> {
    if candidates.is_empty() {
        return Err(DiscError::DegenerateSequence(
            "empty candidate list".into(),
        ));
    }
    let pts = candidates.points();
    for w in pts.windows(2) {
        if w[1].abs() < w[0].abs() - 1e-15 {
            return Err(DiscError::InvalidParameter(
                "candidate moduli must be non-decreasing".into(),
            ));
        }
    }
    Ok(())
}

/// Greedy extraction of a thin subsequence: scan the candidates in order and
/// accept one only if every defect of the enlarged set stays at or above
/// `target_defect`. Stops at `max_len` or when candidates run out.
pub fn greedy_thin_subsequence(
    candidates: &ZeroSequence,
    target_defect: f64,
    max_len: usize,
) -> Result<ZeroSequence> {
    if !(0.0..1.0).contains(&target_defect) || target_defect <= 0.0 {
        return Err(DiscError::InvalidParameter(format!(
            "target defect must lie in (0, 1), got {target_defect}"
        )));
    }
    greedy_thin_scheduled(candidates, |_| target_defect, max_len)
}

/// Greedy extraction with a per-rank defect target: the zero accepted at
/// rank `k` (0-based) must keep defect at least `target(k)` from then on.
/// An increasing schedule `target(k) → 1` produces sequences whose defects
/// improve along the tail, the finite analogue of a thin sequence.
pub fn greedy_thin_scheduled(
    candidates: &ZeroSequence,
    target: impl Fn(usize) -> f64,
    max_len: usize,
) -> Result<ZeroSequence> {
    check_candidates(candidates)?;
    let mut accepted: Vec<DiscPoint> = Vec::new();
    for &c in candidates.points() {
        if accepted.len() >= max_len {
            break;
        }
        if accepted.iter().any(|p| *p == c) {
            continue;
        }
        let mut trial = accepted.clone();
        trial.push(c);
        let ok = (0..trial.len()).all(|k| {
            let d: f64 = (0..trial.len())
                .filter(|&j| j != k)
                .map(|j| pseudo_hyperbolic(trial[j], trial[k]))
                .product();
            d >= target(k)
        });
        if ok {
            accepted = trial;
        }
    }
    debug_assert!(accepted.is_empty() || min_defect(&accepted) >= target(accepted.len() - 1).min(target(0)) - 1e-15);
    ZeroSequence::new(accepted)
}
