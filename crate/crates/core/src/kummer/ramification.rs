//! Local structure of `y^n = h` above places of `F_q(v)`, the genus, and
//! rational place counts over `F_{q^k}`.

use rayon::prelude::*;
use serde::Serialize;

use super::KummerCurve;
use crate::arith::{checked_pow, gcd};
use crate::error::{Error, Result};
use crate::ffield::{field_extend, nth_power_solutions, FieldCtx, Fe};
use crate::polyring::{format_poly, FqPoly, Place};
use crate::ring::{Field, Ring};

/// Largest field enumerated when counting places.
pub const MAX_ENUMERATION: u64 = 1 << 28;
const CHUNK: u64 = 1 << 20;

/// Places of the curve above one place `P` of `F_q(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtPlace {
    #[serde(skip)]
    pub place: Place,
    pub label: String,
    pub degree: usize,
    /// `v_P(h)`.
    pub m: i64,
    pub e: u64,
    /// Residue degree over the residue field of `P`.
    pub f: u64,
    pub d: u64,
    pub places_above: u64,
}

pub fn place_label(field: &FieldCtx, place: &Place) -> String {
    match place {
        Place::Infinite => "inf".into(),
        Place::Finite(p) => format_poly(field, p, 'v'),
    }
}

/// Ramification at `place`: `e = n / gcd(n, m)`, tame different `e - 1`,
/// and the splitting of the unramified part `z^g = w` over the residue field.
pub fn ramification(curve: &KummerCurve, place: &Place) -> ExtPlace {
    let field = curve.field();
    let q = curve.q();
    let n = curve.n();
    let m = curve.h().valuation(place);
    let g = gcd(n, m.unsigned_abs());
    let e = n / g;
    let norm = match place {
        Place::Infinite => curve.lambda(),
        Place::Finite(p) => residue_norm(curve, p),
    };
    let f = field
        .multiplicative_order(field.pow(&norm, (q - 1) / g))
        .expect("norm of a unit is nonzero");
    ExtPlace {
        place: place.clone(),
        label: place_label(field, place),
        degree: place.degree(),
        m,
        e,
        f,
        d: e - 1,
        places_above: g / f,
    }
}

/// Norm to `F_q` of the residue of `h / P^m` in `F_q[v]/(P)`.
fn residue_norm(curve: &KummerCurve, p: &FqPoly) -> Fe {
    let ring = curve.poly_ring();
    let field = curve.field();
    let mut acc = ring.constant(curve.lambda());
    for (f, e) in curve.h().factors() {
        if f == p {
            continue;
        }
        let mut r = ring.rem(f, p);
        if *e < 0 {
            let (g, s, _) = ring.xgcd(&r, p);
            debug_assert_eq!(g, ring.one());
            r = s;
        }
        acc = ring.rem(&ring.mul(&acc, &ring.powmod(&r, e.unsigned_abs(), p)), p);
    }
    let mut norm = acc.clone();
    let mut conj = acc;
    for _ in 1..p.degree().unwrap_or(1) {
        conj = ring.powmod(&conj, field.size(), p);
        norm = ring.rem(&ring.mul(&norm, &conj), p);
    }
    debug_assert!(norm.degree().unwrap_or(0) == 0);
    norm.coeffs().first().copied().unwrap_or(Fe::ZERO)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceContribution {
    pub place: String,
    pub degree: usize,
    pub m: i64,
    pub e: u64,
    /// `deg(P) (n / e) (e - 1)`.
    pub contribution: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub genus: i64,
    pub two_g_minus_2: i64,
    pub n: u64,
    pub ramified: Vec<PlaceContribution>,
}

/// Geometric genus from `2g - 2 = -2n + sum deg(P) (n/e)(e - 1)`.
pub fn genus_hurwitz(curve: &KummerCurve) -> GenusReport {
    let n = curve.n();
    let mut places: Vec<Place> = curve.h().factors().iter().map(|(p, _)| Place::Finite(p.clone())).collect();
    places.push(Place::Infinite);
    let mut ramified = Vec::new();
    let mut total = -2 * n as i64;
    for place in places {
        let m = curve.h().valuation(&place);
        let e = n / gcd(n, m.unsigned_abs());
        if e == 1 {
            continue;
        }
        let contribution = place.degree() as i64 * (n / e) as i64 * (e as i64 - 1);
        total += contribution;
        ramified.push(PlaceContribution {
            place: place_label(curve.field(), &place),
            degree: place.degree(),
            m,
            e,
            contribution,
        });
    }
    debug_assert!(total % 2 == 0);
    GenusReport {
        genus: (total + 2) / 2,
        two_g_minus_2: total,
        n,
        ramified,
    }
}

/// Number of places of degree one over `F_{q^k}`.
///
/// Above `v = a` with `m = v_a(h)` and `g = gcd(n, m)`, the rational places
/// are the solutions of `z^g = w(a)` where `h = (v - a)^m w`.
pub fn rational_places(curve: &KummerCurve, k: usize) -> Result<u64> {
    let q = curve.q();
    let size = checked_pow(q, k as u64).filter(|&s| s <= MAX_ENUMERATION).ok_or(Error::Budget {
        what: "rational place enumeration",
        size: (q as u128).saturating_pow(k as u32),
        limit: MAX_ENUMERATION as u128,
    })?;
    let base = curve.field();
    let ext = if k == 1 { base.clone() } else { field_extend(base, k)? };
    let n = curve.n();
    let lift = |p: &FqPoly| -> Vec<Fe> { p.coeffs().iter().map(|c| ext.embed(base, *c)).collect() };
    let factors: Vec<(Vec<Fe>, Vec<Fe>, i64)> = curve
        .h()
        .factors()
        .iter()
        .map(|(p, e)| {
            let ring = curve.poly_ring();
            (lift(p), lift(&ring.derivative(p)), *e)
        })
        .collect();
    let lambda = ext.embed(base, curve.lambda());

    let horner = |c: &[Fe], x: Fe| c.iter().rev().fold(Fe::ZERO, |acc, ci| ext.add(&ext.mul(&acc, &x), ci));
    let count_at = |a: Fe| -> u64 {
        let mut acc = lambda;
        let mut m = 0i64;
        for (p, dp, e) in &factors {
            let mut val = horner(p, a);
            if val == Fe::ZERO {
                m = *e;
                val = horner(dp, a);
            }
            let val = if *e < 0 { ext.inv(&val).expect("separable") } else { val };
            acc = ext.mul(&acc, &ext.pow(&val, e.unsigned_abs()));
        }
        let g = gcd(n, m.unsigned_abs());
        nth_power_solutions(&ext, acc, g).expect("g >= 1")
    };
    let finite: u64 = (0..size.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(size);
            (lo..hi).map(|i| count_at(ext.element(i).expect("in range"))).sum::<u64>()
        })
        .sum();
    let m_inf = -curve.h().degree();
    let infinite = nth_power_solutions(&ext, lambda, gcd(n, m_inf.unsigned_abs()))?;
    Ok(finite + infinite)
}
