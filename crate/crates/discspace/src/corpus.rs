//! Seeded, reproducible function corpora for the experiments.
//!
//! The generator is ChaCha8 seeded from a single `u64`. One corpus member is
//! drawn as: degree `d` uniform in `1..=max_degree`, then `d + 1`
//! coefficients with real and imaginary parts uniform in `[−1, 1]`, real
//! part first, ascending degree. Alternate implementations can reproduce
//! corpora from this recipe alone.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DiscError, Result};
use crate::func::{Func, PrimitivePair};
use crate::quad::QuadratureRule;
use crate::spaces::{bergman_norm, bloch_norm, dirichlet_norm, SearchConfig};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One random polynomial of degree `1..=max_degree`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: usize) -> Func {
    let d = rng.gen_range(1..=max_degree.max(1));
    let coeffs = (0..=d)
        .map(|_| {
            let re = rng.gen_range(-1.0..=1.0);
            let im = rng.gen_range(-1.0..=1.0);
            Complex64::new(re, im)
        })
        .collect();
    Func::Polynomial(coeffs)
}

pub fn polynomial_corpus(seed: u64, size: usize, max_degree: usize) -> Vec<Func> {
    let mut rng = seeded_rng(seed);
    (0..size)
        .map(|_| random_polynomial(&mut rng, max_degree))
        .collect()
}

fn unit_scale(f: &Func, norm: f64) -> Result<Func> {
    if norm < 1e-12 {
        return Err(DiscError::InvalidParameter(
            "cannot normalize a numerically zero function".into(),
        ));
    }
    Ok(Func::scale(Complex64::new(1.0 / norm, 0.0), f.clone()))
}

pub fn unit_dirichlet(f: &Func, rule: &QuadratureRule) -> Result<Func> {
    let n = dirichlet_norm(&PrimitivePair::of_func(f), rule)?.value;
    unit_scale(f, n)
}

pub fn unit_bergman(f: &Func, rule: &QuadratureRule) -> Result<Func> {
    let n = bergman_norm(f, rule)?.value;
    unit_scale(f, n)
}

pub fn unit_bloch(f: &Func, cfg: &SearchConfig) -> Result<Func> {
    let n = bloch_norm(&PrimitivePair::of_func(f), cfg).value;
    unit_scale(f, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::disc_rule;

    #[test]
    fn corpus_is_deterministic() {
        let a = polynomial_corpus(7, 10, 10);
        let b = polynomial_corpus(7, 10, 10);
        assert_eq!(a, b);
        let c = polynomial_corpus(8, 10, 10);
        assert_ne!(a, c);
    }

    #[test]
    fn degrees_stay_in_range() {
        for f in polynomial_corpus(3, 50, 10) {
            let cs = f.poly_coeffs().unwrap();
            assert!(cs.len() >= 2 && cs.len() <= 11);
        }
    }

    #[test]
    fn normalization_reaches_unit_norm() {
        let rule = disc_rule(48, 64).unwrap();
        let cfg = SearchConfig::default();
        for f in polynomial_corpus(5, 5, 6) {
            let d = unit_dirichlet(&f, &rule).unwrap();
            let n = dirichlet_norm(&PrimitivePair::of_func(&d), &rule)
                .unwrap()
                .value;
            assert!((n - 1.0).abs() < 1e-10);

            let b = unit_bloch(&f, &cfg).unwrap();
            let n = bloch_norm(&PrimitivePair::of_func(&b), &cfg).value;
            assert!((n - 1.0).abs() < 1e-10);
        }
    }
}
