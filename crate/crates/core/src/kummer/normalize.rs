//! Bringing `y^{q-1} = h` into the form `lambda prod (v - a)^{s_a}` with
//! every rational place totally ramified and the distinguished one at
//! infinity.

use serde::Serialize;

use super::automorphism::Mobius;
use super::{curve_create, BasePoint, KummerCurve};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, Fe};
use crate::polyring::{format_element, format_factored, FactoredRationalFunction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ChangeStep {
    /// `v -> 1/(v - alpha)`: the old coordinate is `alpha + 1/v`.
    MoveToInfinity { alpha: String },
    /// `y -> y / g`, removing `g^{q-1}` from `h`.
    ExtractPower { divisor: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedCurve {
    #[serde(skip)]
    pub curve: KummerCurve,
    pub h: String,
    pub steps: Vec<ChangeStep>,
    /// `s_a` for `a` in field order.
    pub exponents: Vec<i64>,
    pub exponent_sum: i64,
}

/// Normalizes `y^{q-1} = h_raw`. `fixed` lists the base points that may be
/// sent to infinity; infinity is kept when listed or when `fixed` is empty,
/// else the first finite point in field order is moved.
pub fn normalize_curve(field: &FieldCtx, h_raw: &FactoredRationalFunction, fixed: &[BasePoint]) -> Result<NormalizedCurve> {
    let q = field.size();
    let n = q - 1;
    let mut steps = Vec::new();
    let mut h = h_raw.clone();
    let target = if fixed.is_empty() || fixed.contains(&BasePoint::Infinity) {
        None
    } else {
        fixed.iter().filter_map(|p| match p {
            BasePoint::Finite(a) => Some(*a),
            BasePoint::Infinity => None,
        }).min()
    };
    if let Some(alpha) = target {
        let mu = Mobius::new(field, alpha, Fe::ONE, Fe::ONE, Fe::ZERO).expect("invertible");
        h = mu.pullback(&h);
        steps.push(ChangeStep::MoveToInfinity { alpha: format_element(field, alpha) });
    }
    let curve = curve_create(field, n, &h)?;
    if !curve.extracted().is_constant() {
        steps.push(ChangeStep::ExtractPower { divisor: format_factored(curve.extracted()) });
    }
    let ni = n as i64;
    for (p, e) in curve.h().factors() {
        if p.degree() != Some(1) && e % ni != 0 {
            return Err(Error::Incompatible(format!(
                "factor {} of degree {} has exponent {e}, not divisible by {n}",
                crate::polyring::format_poly(field, p, 'v'),
                p.degree().unwrap_or(0)
            )));
        }
    }
    let exponents: Vec<i64> = field.elements().map(|a| curve.valuation_at(BasePoint::Finite(a))).collect();
    for (a, s) in field.elements().zip(&exponents) {
        if gcd(s.unsigned_abs(), n) != 1 {
            return Err(Error::Incompatible(format!(
                "exponent {s} at v = {} shares a factor with {n}",
                format_element(field, a)
            )));
        }
    }
    let exponent_sum: i64 = exponents.iter().sum();
    if gcd(exponent_sum.unsigned_abs(), n) != 1 {
        return Err(Error::Incompatible(format!("exponent sum {exponent_sum} shares a factor with {n}")));
    }
    Ok(NormalizedCurve {
        h: format_factored(curve.h()),
        curve,
        steps,
        exponents,
        exponent_sum,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualExponents {
    pub passed: bool,
    /// The common exponent when `passed`.
    pub n: Option<i64>,
    pub exponents: Vec<i64>,
}

/// Whether all `s_a` agree and the common value is prime to `q - 1`.
pub fn equal_exponent_check(curve: &KummerCurve) -> EqualExponents {
    let field = curve.field();
    let exponents: Vec<i64> = field.elements().map(|a| curve.valuation_at(BasePoint::Finite(a))).collect();
    let first = exponents[0];
    let passed = exponents.iter().all(|&s| s == first)
        && gcd(first.unsigned_abs(), curve.q() - 1) == 1
        && curve.h().factors().len() == exponents.len();
    EqualExponents { passed, n: passed.then_some(first), exponents }
}
