//! Automorphisms `(v, y) -> (mu(v), f(v) y^k)` of `y^n = h(v)` that
//! normalize the Kummer group.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{BasePoint, KummerCurve};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, Fe};
use crate::polyring::{format_factored, FactoredRationalFunction, FqPoly, PolyRing};
use crate::ring::{Field, Ring};

/// Largest field searched exhaustively.
pub const MAX_SEARCH_Q: u64 = 13;

/// `v -> (a v + b) / (c v + d)`, scaled so that `c = 1`, or `d = 1` when `c = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mobius {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius { a: Fe::ONE, b: Fe::ZERO, c: Fe::ZERO, d: Fe::ONE }
    }

    /// Normalizes a matrix; `None` if it is singular.
    pub fn new(field: &FieldCtx, a: Fe, b: Fe, c: Fe, d: Fe) -> Option<Self> {
        let det = field.sub(&field.mul(&a, &d), &field.mul(&b, &c));
        if det == Fe::ZERO {
            return None;
        }
        let s = field.inv(if c != Fe::ZERO { &c } else { &d })?;
        Some(Mobius {
            a: field.mul(&a, &s),
            b: field.mul(&b, &s),
            c: field.mul(&c, &s),
            d: field.mul(&d, &s),
        })
    }

    pub fn translation(c: Fe) -> Self {
        Mobius { a: Fe::ONE, b: c, c: Fe::ZERO, d: Fe::ONE }
    }

    /// All `q^3 - q` elements of `PGL_2(F_q)`.
    pub fn all(field: &FieldCtx) -> Vec<Mobius> {
        let mut out = Vec::new();
        for a in field.elements() {
            for b in field.elements() {
                if a != Fe::ZERO {
                    out.push(Mobius { a, b, c: Fe::ZERO, d: Fe::ONE });
                }
                for d in field.elements() {
                    if field.mul(&a, &d) != b {
                        out.push(Mobius { a, b, c: Fe::ONE, d });
                    }
                }
            }
        }
        out
    }

    /// `self(other(v))`.
    pub fn after(&self, field: &FieldCtx, other: &Mobius) -> Mobius {
        let m = |x: &Fe, y: &Fe, z: &Fe, w: &Fe| field.add(&field.mul(x, y), &field.mul(z, w));
        Mobius::new(
            field,
            m(&self.a, &other.a, &self.b, &other.c),
            m(&self.a, &other.b, &self.b, &other.d),
            m(&self.c, &other.a, &self.d, &other.c),
            m(&self.c, &other.b, &self.d, &other.d),
        )
        .expect("product of invertible matrices")
    }

    pub fn apply(&self, field: &FieldCtx, pt: BasePoint) -> BasePoint {
        match pt {
            BasePoint::Infinity if self.c == Fe::ZERO => BasePoint::Infinity,
            BasePoint::Infinity => BasePoint::Finite(field.div(&self.a, &self.c).expect("c != 0")),
            BasePoint::Finite(x) => {
                let num = field.add(&field.mul(&self.a, &x), &self.b);
                let den = field.add(&field.mul(&self.c, &x), &self.d);
                match field.div(&num, &den) {
                    Some(y) => BasePoint::Finite(y),
                    None => BasePoint::Infinity,
                }
            }
        }
    }

    pub fn is_translation(&self) -> bool {
        self.a == Fe::ONE && self.c == Fe::ZERO && self.d == Fe::ONE
    }

    /// `f(mu(v))`, refactored without calling the factorizer: a monic
    /// irreducible `p` of degree `r` pulls back to
    /// `sum_i p_i (a v + b)^i (c v + d)^{r - i} / (c v + d)^r`, whose
    /// numerator is a constant times a monic irreducible.
    pub fn pullback(&self, f: &FactoredRationalFunction) -> FactoredRationalFunction {
        let field = f.field();
        let ring = PolyRing::new(field.clone());
        let num_lin = ring.poly(vec![self.b, self.a]);
        let den_lin = ring.poly(vec![self.d, self.c]);
        let mut unit = f.unit();
        let mut factors: Vec<(FqPoly, i64)> = Vec::new();
        let mut den_exp = 0i64;
        for (p, e) in f.factors() {
            let r = p.degree().expect("nonconstant");
            let mut acc = ring.zero();
            for (i, ci) in p.coeffs().iter().enumerate() {
                if *ci == Fe::ZERO {
                    continue;
                }
                let term = ring.mul(&ring.pow(&num_lin, i as u64), &ring.pow(&den_lin, (r - i) as u64));
                acc = ring.add(&acc, &ring.scale(&term, ci));
            }
            let lead = *acc.lead().expect("invertible substitution keeps p nonzero");
            unit = field.mul(&unit, &signed_pow(field, lead, *e));
            if acc.degree().unwrap_or(0) > 0 {
                factors.push((ring.monic(&acc), *e));
            }
            den_exp += r as i64 * e;
        }
        // divide by (c v + d)^{den_exp}
        if self.c != Fe::ZERO {
            unit = field.mul(&unit, &signed_pow(field, self.c, -den_exp));
            factors.push((ring.monic(&den_lin), -den_exp));
        } else {
            unit = field.mul(&unit, &signed_pow(field, self.d, -den_exp));
        }
        FactoredRationalFunction::new(field, unit, factors).expect("monic factors")
    }

    pub fn describe(&self, field: &FieldCtx) -> String {
        let e = |x: Fe| crate::polyring::format_element(field, x);
        format!("({}*v+{})/({}*v+{})", e(self.a), e(self.b), e(self.c), e(self.d))
    }
}

pub(crate) fn signed_pow(field: &FieldCtx, x: Fe, e: i64) -> Fe {
    let base = if e < 0 { field.inv(&x).expect("nonzero") } else { x };
    field.pow(&base, e.unsigned_abs())
}

/// `(v, y) -> (mobius(v), f(v) y^k)`, valid when `f^n = h(mobius(v)) / h^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub mobius: Mobius,
    pub f: FactoredRationalFunction,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismSummary {
    pub v_image: String,
    pub multiplier: String,
    pub k: u64,
}

impl Automorphism {
    pub fn identity(curve: &KummerCurve) -> Self {
        Automorphism {
            mobius: Mobius::identity(),
            f: FactoredRationalFunction::one(curve.field()),
            k: 1,
        }
    }

    /// Checks `f^n = h(mobius(v)) / h^k` exactly.
    pub fn certificate_holds(&self, curve: &KummerCurve) -> bool {
        let lhs = self.f.pow(curve.n() as i64);
        let rhs = self.mobius.pullback(curve.h()).div(&curve.h().pow(self.k as i64));
        lhs == rhs && gcd(self.k, curve.n()) == 1
    }

    pub fn summary(&self, field: &FieldCtx) -> AutomorphismSummary {
        AutomorphismSummary {
            v_image: self.mobius.describe(field),
            multiplier: format_factored(&self.f),
            k: self.k,
        }
    }
}

/// `t1 o t2`, i.e. apply `t2` first as a field map: `v -> mu2(mu1(v))` and
/// `y -> f2(mu1(v)) f1^{k2} y^{k1 k2}`, with `y^n` replaced by `h`.
pub fn compose(curve: &KummerCurve, t1: &Automorphism, t2: &Automorphism) -> Automorphism {
    let field = curve.field();
    let n = curve.n();
    let prod = t1.k * t2.k;
    let k = (prod - 1) % n + 1;
    let carry = ((prod - k) / n) as i64;
    let f = t2
        .mobius
        .pullback(&FactoredRationalFunction::one(field))
        .mul(&t1.mobius.pullback(&t2.f))
        .mul(&t1.f.pow(t2.k as i64))
        .mul(&curve.h().pow(carry));
    Automorphism {
        mobius: t2.mobius.after(field, &t1.mobius),
        f,
        k,
    }
}

/// The `q(q-1)` maps `(v, y) -> (v + c, zeta y)` of a canonical curve.
pub fn canonical_automorphisms(curve: &KummerCurve) -> Result<Vec<Automorphism>> {
    let field = curve.field();
    if curve.n() != curve.q() - 1 || curve.canonical_exponent().is_none() {
        return Err(Error::NotCanonical(format_factored(curve.h())));
    }
    let mut out = Vec::new();
    for c in field.elements() {
        for zeta in field.elements().skip(1) {
            let aut = Automorphism {
                mobius: Mobius::translation(c),
                f: FactoredRationalFunction::constant(field, zeta)?,
                k: 1,
            };
            if !aut.certificate_holds(curve) {
                return Err(Error::Verification(format!("certificate fails for translation by {c:?}")));
            }
            out.push(aut);
        }
    }
    Ok(out)
}

/// All automorphisms normalizing the Kummer group: every Möbius map and
/// every `k` coprime to `n` with `h(mu(v)) / h^k` an `n`-th power in `F_q(v)`.
pub fn automorphism_search(curve: &KummerCurve) -> Result<Vec<Automorphism>> {
    let field = curve.field();
    let q = curve.q();
    let n = curve.n();
    if q > MAX_SEARCH_Q {
        let size = (q as u128).pow(3) * n as u128;
        return Err(Error::Budget { what: "automorphism search", size, limit: (MAX_SEARCH_Q as u128).pow(3) * 12 });
    }
    let ks: Vec<u64> = (1..=n).filter(|&k| gcd(k, n) == 1 && (k < n || n == 1)).collect();
    let roots_of_unity: Vec<Fe> = field.elements().filter(|z| field.pow(z, n) == Fe::ONE).collect();
    let h = curve.h();
    let h_powers: Vec<FactoredRationalFunction> = ks.iter().map(|&k| h.pow(k as i64)).collect();
    let mut found: Vec<Automorphism> = Mobius::all(field)
        .into_par_iter()
        .flat_map_iter(|mu| {
            let pulled = mu.pullback(h);
            let mut local = Vec::new();
            for (k, hk) in ks.iter().zip(&h_powers) {
                let ratio = pulled.div(hk);
                if let Some(f0) = nth_root_of(&ratio, n) {
                    for zeta in &roots_of_unity {
                        local.push(Automorphism { mobius: mu, f: f0.scale(*zeta), k: *k });
                    }
                }
            }
            local
        })
        .collect();
    found.sort_by(|x, y| (x.mobius, x.k, x.f.unit()).cmp(&(y.mobius, y.k, y.f.unit())));
    Ok(found)
}

/// Some `f` with `f^n = r`, if `r` is an `n`-th power in `F_q(v)`.
fn nth_root_of(r: &FactoredRationalFunction, n: u64) -> Option<FactoredRationalFunction> {
    let ni = n as i64;
    if r.factors().iter().any(|(_, e)| e % ni != 0) {
        return None;
    }
    let unit = r.field().nth_root(r.unit(), n)?;
    let factors = r.factors().iter().map(|(p, e)| (p.clone(), e / ni)).collect();
    FactoredRationalFunction::new(r.field(), unit, factors).ok()
}

/// Closure check, and the set itself for membership tests.
pub(crate) fn closure_check(curve: &KummerCurve, group: &[Automorphism]) -> Result<HashSet<Automorphism>> {
    let set: HashSet<Automorphism> = group.iter().cloned().collect();
    if !set.contains(&Automorphism::identity(curve)) {
        return Err(Error::GroupNotClosed);
    }
    for a in group {
        for b in group {
            if !set.contains(&compose(curve, a, b)) {
                return Err(Error::GroupNotClosed);
            }
        }
    }
    Ok(set)
}
