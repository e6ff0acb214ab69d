//! Expression-tree model of analytic functions on the disc.
//!
//! A [`Func`] is a closed-form tree (constants, polynomials, Möbius factors,
//! finite Blaschke products and their sums/products/affine combinations)
//! supporting exact pointwise evaluation and exact derivative evaluation.
//! Taylor coefficients are recoverable only when the tree is polynomial;
//! everything downstream works from pointwise `f` and `f′` values.
//!
//! [`PrimitivePair`] represents a function through `(F(0), F′)` without ever
//! antidifferentiating: every norm in this crate except the Bergman norm is
//! a functional of exactly that data.

use num_complex::Complex64;

use crate::error::{DiscError, Result};
use crate::geometry::{mobius_deriv, mobius_eval, DiscPoint, ZeroSequence};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Pseudo-hyperbolic radius below which the Blaschke derivative switches
/// from the logarithmic-derivative form to a product-rule expansion.
const BLASCHKE_NEAR_ZERO: f64 = 1e-6;

/// Analytic function represented as an expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Func {
    Constant(Complex64),
    Identity,
    /// Coefficients in ascending degree.
    Polynomial(Vec<Complex64>),
    Mobius(DiscPoint),
    Blaschke(ZeroSequence),
    Sum(Box<Func>, Box<Func>),
    Product(Box<Func>, Box<Func>),
    Scale(Complex64, Box<Func>),
    /// `Shift(f, c)` is `f + c`.
    Shift(Box<Func>, Complex64),
}

fn blaschke_factor(zn: DiscPoint, z: Complex64) -> Complex64 {
    let a = zn.to_complex();
    if a == ZERO {
        // origin convention: the |z_n|/z_n normalization is undefined at 0
        z
    } else {
        (zn.abs() / a) * ((a - z) / (ONE - a.conj() * z))
    }
}

fn blaschke_factor_deriv(zn: DiscPoint, z: Complex64) -> Complex64 {
    let a = zn.to_complex();
    if a == ZERO {
        ONE
    } else {
        let d = ONE - a.conj() * z;
        (zn.abs() / a) * Complex64::new(-zn.one_minus_abs_sq(), 0.0) / (d * d)
    }
}

/// `B′(z)` via the logarithmic derivative `B·Σ b_n′/b_n`, splitting off the
/// factors whose zero is within pseudo-hyperbolic distance
/// [`BLASCHKE_NEAR_ZERO`] of `z` and handling those by the product rule.
fn blaschke_deriv(zeros: &ZeroSequence, z: Complex64) -> Complex64 {
    let pts = zeros.points();
    let mut near: Vec<DiscPoint> = Vec::new();
    let mut far_product = ONE;
    let mut far_logsum = ZERO;
    for &zn in pts {
        if mobius_eval(zn, z).norm() < BLASCHKE_NEAR_ZERO {
            near.push(zn);
        } else {
            let b = blaschke_factor(zn, z);
            far_product *= b;
            far_logsum += blaschke_factor_deriv(zn, z) / b;
        }
    }
    let near_product: Complex64 = near.iter().map(|&zn| blaschke_factor(zn, z)).product();
    let mut near_deriv = ZERO;
    for (j, &zj) in near.iter().enumerate() {
        let mut rest = blaschke_factor_deriv(zj, z);
        for (k, &zk) in near.iter().enumerate() {
            if k != j {
                rest *= blaschke_factor(zk, z);
            }
        }
        near_deriv += rest;
    }
    near_deriv * far_product + near_product * far_product * far_logsum
}

impl Func {
    pub fn constant(c: Complex64) -> Self {
        Func::Constant(c)
    }

    pub fn constant_re(c: f64) -> Self {
        Func::Constant(Complex64::new(c, 0.0))
    }

    pub fn identity() -> Self {
        Func::Identity
    }

    pub fn poly_re(coeffs: &[f64]) -> Self {
        Func::Polynomial(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn sum(a: Func, b: Func) -> Self {
        Func::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: Func, b: Func) -> Self {
        Func::Product(Box::new(a), Box::new(b))
    }

    pub fn scale(c: Complex64, f: Func) -> Self {
        Func::Scale(c, Box::new(f))
    }

    pub fn shift(f: Func, c: Complex64) -> Self {
        Func::Shift(Box::new(f), c)
    }

    /// Pointwise value. Defined on the closed disc for every node type; the
    /// only poles of the tree sit at `1/ā` strictly outside.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Func::Constant(c) => *c,
            Func::Identity => z,
            Func::Polynomial(cs) => {
                let mut acc = ZERO;
                for c in cs.iter().rev() {
                    acc = acc * z + c;
                }
                acc
            }
            Func::Mobius(a) => mobius_eval(*a, z),
            Func::Blaschke(zs) => zs.points().iter().map(|&zn| blaschke_factor(zn, z)).product(),
            Func::Sum(f, g) => f.eval(z) + g.eval(z),
            Func::Product(f, g) => f.eval(z) * g.eval(z),
            Func::Scale(c, f) => c * f.eval(z),
            Func::Shift(f, c) => f.eval(z) + c,
        }
    }

    /// Exact derivative value by structural recursion.
    pub fn deriv_eval(&self, z: Complex64) -> Complex64 {
        match self {
            Func::Constant(_) => ZERO,
            Func::Identity => ONE,
            Func::Polynomial(cs) => {
                let mut acc = ZERO;
                for (k, c) in cs.iter().enumerate().skip(1).rev() {
                    acc = acc * z + Complex64::new(k as f64, 0.0) * c;
                }
                acc
            }
            Func::Mobius(a) => mobius_deriv(*a, z),
            Func::Blaschke(zs) => blaschke_deriv(zs, z),
            Func::Sum(f, g) => f.deriv_eval(z) + g.deriv_eval(z),
            Func::Product(f, g) => f.deriv_eval(z) * g.eval(z) + f.eval(z) * g.deriv_eval(z),
            Func::Scale(c, f) => c * f.deriv_eval(z),
            Func::Shift(f, _) => f.deriv_eval(z),
        }
    }

    /// Taylor coefficients when the tree is polynomial, `None` otherwise.
    pub fn poly_coeffs(&self) -> Option<Vec<Complex64>> {
        fn trim(mut v: Vec<Complex64>) -> Vec<Complex64> {
            while v.len() > 1 && v.last() == Some(&ZERO) {
                v.pop();
            }
            v
        }
        match self {
            Func::Constant(c) => Some(vec![*c]),
            Func::Identity => Some(vec![ZERO, ONE]),
            Func::Polynomial(cs) => Some(trim(cs.clone())),
            Func::Mobius(_) | Func::Blaschke(_) => None,
            Func::Sum(f, g) => {
                let (a, b) = (f.poly_coeffs()?, g.poly_coeffs()?);
                let mut out = vec![ZERO; a.len().max(b.len())];
                for (i, c) in a.iter().enumerate() {
                    out[i] += c;
                }
                for (i, c) in b.iter().enumerate() {
                    out[i] += c;
                }
                Some(trim(out))
            }
            Func::Product(f, g) => {
                let (a, b) = (f.poly_coeffs()?, g.poly_coeffs()?);
                let mut out = vec![ZERO; a.len() + b.len() - 1];
                for (i, ca) in a.iter().enumerate() {
                    for (j, cb) in b.iter().enumerate() {
                        out[i + j] += ca * cb;
                    }
                }
                Some(trim(out))
            }
            Func::Scale(c, f) => {
                Some(trim(f.poly_coeffs()?.into_iter().map(|x| c * x).collect()))
            }
            Func::Shift(f, c) => {
                let mut out = f.poly_coeffs()?;
                out[0] += c;
                Some(trim(out))
            }
        }
    }
}

/// Finite Blaschke product with the given zeros. A zero at the origin
/// contributes the factor `z`.
pub fn blaschke_from_zeros(zs: &ZeroSequence) -> Func {
    Func::Blaschke(zs.clone())
}

/// The unit-Bloch-norm family `f_a = σ_a − a`, with `f_a(0) = 0` and
/// `(1−|a|²)|f_a′(a)| = 1`.
pub fn test_bloch_family(a: DiscPoint) -> Func {
    Func::shift(Func::Mobius(a), -a.to_complex())
}

/// Normalized Bergman kernel `F_a(z) = (1−|a|²)/(1−āz)²`, assembled from
/// Möbius/product/scale nodes via `1 − ā σ_a(z) = (1−|a|²)/(1−āz)`.
pub fn bergman_kernel_unit(a: DiscPoint) -> Func {
    let g = Func::shift(
        Func::scale(-a.to_complex().conj(), Func::Mobius(a)),
        ONE,
    );
    Func::scale(
        Complex64::new(1.0 / a.one_minus_abs_sq(), 0.0),
        Func::product(g.clone(), g),
    )
}

/// Derivative-side expression of a [`PrimitivePair`]: either a closed-form
/// tree, the derivative of a tree, or pointwise sums/products of those.
#[derive(Debug, Clone, PartialEq)]
pub enum Deriv {
    /// The tree's own values are the derivative.
    Value(Func),
    /// `z ↦ f′(z)` for the inner tree.
    OfFunc(Func),
    Sum(Box<Deriv>, Box<Deriv>),
    Product(Box<Deriv>, Box<Deriv>),
}

impl Deriv {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Deriv::Value(f) => f.eval(z),
            Deriv::OfFunc(f) => f.deriv_eval(z),
            Deriv::Sum(a, b) => a.eval(z) + b.eval(z),
            Deriv::Product(a, b) => a.eval(z) * b.eval(z),
        }
    }

    /// Taylor coefficients of the derivative when every branch is polynomial.
    pub fn poly_coeffs(&self) -> Option<Vec<Complex64>> {
        match self {
            Deriv::Value(f) => f.poly_coeffs(),
            Deriv::OfFunc(f) => {
                let cs = f.poly_coeffs()?;
                if cs.len() <= 1 {
                    return Some(vec![ZERO]);
                }
                Some(
                    cs.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(k, c)| Complex64::new(k as f64, 0.0) * c)
                        .collect(),
                )
            }
            Deriv::Sum(a, b) => Func::sum(
                Func::Polynomial(a.poly_coeffs()?),
                Func::Polynomial(b.poly_coeffs()?),
            )
            .poly_coeffs(),
            Deriv::Product(a, b) => Func::product(
                Func::Polynomial(a.poly_coeffs()?),
                Func::Polynomial(b.poly_coeffs()?),
            )
            .poly_coeffs(),
        }
    }
}

/// `(F(0), F′)` representation of an analytic function. `S_g f` and `T_g f`
/// live here with value 0 at the origin and a product-form derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitivePair {
    pub value_at_zero: Complex64,
    pub derivative: Deriv,
}

impl PrimitivePair {
    pub fn new(value_at_zero: Complex64, derivative: Deriv) -> Self {
        Self {
            value_at_zero,
            derivative,
        }
    }

    /// Pair of an explicit tree: `(f(0), f′)`.
    pub fn of_func(f: &Func) -> Self {
        Self {
            value_at_zero: f.eval(ZERO),
            derivative: Deriv::OfFunc(f.clone()),
        }
    }

    pub fn deriv_at(&self, z: Complex64) -> Complex64 {
        self.derivative.eval(z)
    }

    /// Pair of `c·F`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            value_at_zero: c * self.value_at_zero,
            derivative: Deriv::Product(
                Box::new(Deriv::Value(Func::Constant(c))),
                Box::new(self.derivative.clone()),
            ),
        }
    }

    /// Taylor coefficients of the underlying function when the derivative is
    /// polynomial: `a_0 = F(0)`, `a_k = d_{k−1}/k`.
    pub fn taylor_coeffs(&self) -> Option<Vec<Complex64>> {
        let d = self.derivative.poly_coeffs()?;
        let mut out = Vec::with_capacity(d.len() + 1);
        out.push(self.value_at_zero);
        for (k, c) in d.iter().enumerate() {
            out.push(c / Complex64::new((k + 1) as f64, 0.0));
        }
        while out.len() > 1 && out.last() == Some(&ZERO) {
            out.pop();
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// Function-description documents (the JSON wire/file format)
// ---------------------------------------------------------------------------

fn parse_complex(v: &serde_json::Value, path: &str) -> Result<Complex64> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    if let Some(arr) = v.as_array() {
        if arr.len() == 2 {
            if let (Some(re), Some(im)) = (arr[0].as_f64(), arr[1].as_f64()) {
                return Ok(Complex64::new(re, im));
            }
        }
    }
    Err(DiscError::Parse {
        path: path.into(),
        message: "expected a number or a two-element [re, im] array".into(),
    })
}

fn parse_disc_point(v: &serde_json::Value, path: &str) -> Result<DiscPoint> {
    let c = parse_complex(v, path)?;
    DiscPoint::new(c.re, c.im).map_err(|e| DiscError::Parse {
        path: path.into(),
        message: e.to_string(),
    })
}

fn fold_list(
    items: &[serde_json::Value],
    path: &str,
    combine: fn(Func, Func) -> Func,
) -> Result<Func> {
    if items.is_empty() {
        return Err(DiscError::Parse {
            path: path.into(),
            message: "expected a non-empty list of function documents".into(),
        });
    }
    let mut out = build_function_at(&items[0], &format!("{path}[0]"))?;
    for (i, item) in items.iter().enumerate().skip(1) {
        out = combine(out, build_function_at(item, &format!("{path}[{i}]"))?);
    }
    Ok(out)
}

fn build_function_at(doc: &serde_json::Value, path: &str) -> Result<Func> {
    if doc.as_str() == Some("identity") {
        return Ok(Func::Identity);
    }
    let obj = doc.as_object().ok_or_else(|| DiscError::Parse {
        path: path.into(),
        message: "expected \"identity\" or a single-key object".into(),
    })?;
    if obj.len() != 1 {
        return Err(DiscError::Parse {
            path: path.into(),
            message: format!("expected exactly one node key, found {}", obj.len()),
        });
    }
    let (key, val) = obj.iter().next().unwrap();
    let sub = format!("{path}.{key}");
    match key.as_str() {
        "const" => Ok(Func::Constant(parse_complex(val, &sub)?)),
        "identity" => Ok(Func::Identity),
        "poly" => {
            let arr = val.as_array().ok_or_else(|| DiscError::Parse {
                path: sub.clone(),
                message: "expected a coefficient array".into(),
            })?;
            let coeffs = arr
                .iter()
                .enumerate()
                .map(|(i, c)| parse_complex(c, &format!("{sub}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Func::Polynomial(coeffs))
        }
        "mobius" => Ok(Func::Mobius(parse_disc_point(val, &sub)?)),
        "blaschke" => {
            let arr = val.as_array().ok_or_else(|| DiscError::Parse {
                path: sub.clone(),
                message: "expected an array of zeros".into(),
            })?;
            let zeros = arr
                .iter()
                .enumerate()
                .map(|(i, z)| parse_disc_point(z, &format!("{sub}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let zs = ZeroSequence::new(zeros).map_err(|e| DiscError::Parse {
                path: sub.clone(),
                message: e.to_string(),
            })?;
            Ok(Func::Blaschke(zs))
        }
        "sum" => {
            let arr = val.as_array().ok_or_else(|| DiscError::Parse {
                path: sub.clone(),
                message: "expected a list of summands".into(),
            })?;
            fold_list(arr, &sub, Func::sum)
        }
        "product" => {
            let arr = val.as_array().ok_or_else(|| DiscError::Parse {
                path: sub.clone(),
                message: "expected a list of factors".into(),
            })?;
            fold_list(arr, &sub, Func::product)
        }
        "scale" => {
            let o = val.as_object().ok_or_else(|| DiscError::Parse {
                path: sub.clone(),
                message: "expected {\"c\": …, \"f\": …}".into(),
            })?;
            let c = parse_complex(
                o.get("c").ok_or_else(|| DiscError::Parse {
                    path: sub.clone(),
                    message: "missing key \"c\"".into(),
                })?,
                &format!("{sub}.c"),
            )?;
            let f = build_function_at(
                o.get("f").ok_or_else(|| DiscError::Parse {
                    path: sub.clone(),
                    message: "missing key \"f\"".into(),
                })?,
                &format!("{sub}.f"),
            )?;
            Ok(Func::scale(c, f))
        }
        "shift" => {
            let o = val.as_object().ok_or_else(|| DiscError::Parse {
                path: sub.clone(),
                message: "expected {\"f\": …, \"c\": …}".into(),
            })?;
            let f = build_function_at(
                o.get("f").ok_or_else(|| DiscError::Parse {
                    path: sub.clone(),
                    message: "missing key \"f\"".into(),
                })?,
                &format!("{sub}.f"),
            )?;
            let c = parse_complex(
                o.get("c").ok_or_else(|| DiscError::Parse {
                    path: sub.clone(),
                    message: "missing key \"c\"".into(),
                })?,
                &format!("{sub}.c"),
            )?;
            Ok(Func::shift(f, c))
        }
        other => Err(DiscError::Parse {
            path: path.into(),
            message: format!("unknown node kind \"{other}\""),
        }),
    }
}

/// Parse a function-description document into a [`Func`], validating every
/// disc parameter. Errors carry the JSON path of the offending node.
pub fn build_function(doc: &serde_json::Value) -> Result<Func> {
    build_function_at(doc, "$")
}

fn complex_doc(c: Complex64) -> serde_json::Value {
    serde_json::json!([c.re, c.im])
}

/// Render a [`Func`] back into the document format (inverse of
/// [`build_function`] up to real-number shorthands).
pub fn to_document(f: &Func) -> serde_json::Value {
    use serde_json::json;
    match f {
        Func::Constant(c) => json!({ "const": complex_doc(*c) }),
        Func::Identity => json!("identity"),
        Func::Polynomial(cs) => {
            json!({ "poly": cs.iter().map(|c| complex_doc(*c)).collect::<Vec<_>>() })
        }
        Func::Mobius(a) => json!({ "mobius": [a.re(), a.im()] }),
        Func::Blaschke(zs) => json!({
            "blaschke": zs.points().iter().map(|p| json!([p.re(), p.im()])).collect::<Vec<_>>()
        }),
        Func::Sum(a, b) => json!({ "sum": [to_document(a), to_document(b)] }),
        Func::Product(a, b) => json!({ "product": [to_document(a), to_document(b)] }),
        Func::Scale(c, g) => json!({ "scale": { "c": complex_doc(*c), "f": to_document(g) } }),
        Func::Shift(g, c) => json!({ "shift": { "f": to_document(g), "c": complex_doc(*c) } }),
    }
}
