//! Rational functions over `F_q`, in expanded and in factored form.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use super::{FqPoly, FqPolyRing, PolyRing};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, Fe};
use crate::ring::{Field, Ring};

/// Sort key of a polynomial: degree first, then coefficients from the top
/// down compared by their enumeration index.
pub fn poly_sort_key(p: &FqPoly) -> (usize, Vec<u64>) {
    (
        p.degree().unwrap_or(0),
        p.coeffs().iter().rev().map(|c| c.index()).collect(),
    )
}

/// A place of the rational function field `F_q(v)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    /// The zero of a monic irreducible polynomial.
    Finite(FqPoly),
    /// The pole of `v`.
    Infinite,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinite => 1,
        }
    }

    /// The rational place `v = a`.
    pub fn at(ring: &FqPolyRing, a: Fe) -> Place {
        Place::Finite(ring.linear(&a))
    }
}

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: FqPoly,
    den: FqPoly,
}

impl RationalFunction {
    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }
}

/// The field `F_q(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFuncField {
    ring: FqPolyRing,
}

impl RatFuncField {
    pub fn new(field: FieldCtx) -> Self {
        RatFuncField { ring: PolyRing::new(field) }
    }

    pub fn poly_ring(&self) -> &FqPolyRing {
        &self.ring
    }

    pub fn from_poly(&self, p: FqPoly) -> RationalFunction {
        RationalFunction { num: p, den: self.ring.one() }
    }

    /// Canonicalizes `num / den`.
    pub fn frac(&self, num: FqPoly, den: FqPoly) -> Result<RationalFunction> {
        let r = &self.ring;
        let lead = *den.lead().ok_or(Error::DivisionByZero)?;
        if num.is_zero() {
            return Ok(self.zero());
        }
        let g = r.gcd(&num, &den);
        let inv = r.field().inv(&lead).expect("nonzero");
        let num = r.scale(&r.div_exact(&num, &g).expect("gcd divides"), &inv);
        let den = r.scale(&r.div_exact(&den, &g).expect("gcd divides"), &inv);
        Ok(RationalFunction { num, den })
    }

    /// Value at a point of the field of `ext`, `None` at a pole.
    pub fn eval(&self, f: &RationalFunction, ext: &FieldCtx, a: Fe) -> Option<Fe> {
        let base = self.ring.field();
        let n = eval_lifted(base, ext, &f.num, a);
        let d = eval_lifted(base, ext, &f.den, a);
        ext.div(&n, &d)
    }
}

/// Evaluates a polynomial over `base` at a point of the extension `ext`.
pub(crate) fn eval_lifted(base: &FieldCtx, ext: &FieldCtx, p: &FqPoly, a: Fe) -> Fe {
    p.coeffs()
        .iter()
        .rev()
        .fold(Fe::ZERO, |acc, c| ext.add(&ext.mul(&acc, &a), &ext.embed(base, *c)))
}

impl Ring for RatFuncField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction { num: self.ring.zero(), den: self.ring.one() }
    }

    fn one(&self) -> RationalFunction {
        self.from_poly(self.ring.one())
    }

    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        let r = &self.ring;
        let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        self.frac(num, r.mul(&a.den, &b.den)).expect("nonzero denominator")
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        RationalFunction { num: self.ring.neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        let r = &self.ring;
        self.frac(r.mul(&a.num, &b.num), r.mul(&a.den, &b.den))
            .expect("nonzero denominator")
    }

    fn from_int(&self, n: i64) -> RationalFunction {
        self.from_poly(self.ring.from_int(n))
    }
}

impl Field for RatFuncField {
    fn inv(&self, a: &RationalFunction) -> Option<RationalFunction> {
        if a.num.is_zero() {
            return None;
        }
        self.frac(a.den.clone(), a.num.clone()).ok()
    }

    fn characteristic(&self) -> u64 {
        self.ring.field().p()
    }
}

/// `unit * prod p_i^{e_i}` with distinct monic irreducible `p_i` and
/// nonzero exponents, kept sorted by [`poly_sort_key`].
#[derive(Clone, Debug)]
pub struct FactoredRationalFunction {
    field: FieldCtx,
    unit: Fe,
    factors: Vec<(FqPoly, i64)>,
}

impl PartialEq for FactoredRationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.unit == other.unit && self.factors == other.factors
    }
}

impl Eq for FactoredRationalFunction {}

impl Hash for FactoredRationalFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.unit.hash(state);
        self.factors.hash(state);
    }
}

impl FactoredRationalFunction {
    /// Builds a factored function from monic irreducible factors, merging
    /// repeats and dropping zero exponents.
    pub fn new(field: &FieldCtx, unit: Fe, factors: Vec<(FqPoly, i64)>) -> Result<Self> {
        if unit == Fe::ZERO {
            return Err(Error::InvalidArgument("unit of a factored function must be nonzero".into()));
        }
        let ring = PolyRing::new(field.clone());
        for (p, _) in &factors {
            if p.degree().unwrap_or(0) == 0 || !ring.is_monic(p) {
                return Err(Error::InvalidArgument("factors must be monic of positive degree".into()));
            }
        }
        Ok(Self::assemble(field, unit, factors))
    }

    fn assemble(field: &FieldCtx, unit: Fe, factors: Vec<(FqPoly, i64)>) -> Self {
        let mut merged: BTreeMap<(usize, Vec<u64>), (FqPoly, i64)> = BTreeMap::new();
        for (p, e) in factors {
            merged
                .entry(super::poly_sort_key(&p))
                .and_modify(|x| x.1 += e)
                .or_insert((p, e));
        }
        FactoredRationalFunction {
            field: field.clone(),
            unit,
            factors: merged.into_values().filter(|(_, e)| *e != 0).collect(),
        }
    }

    pub fn constant(field: &FieldCtx, c: Fe) -> Result<Self> {
        Self::new(field, c, Vec::new())
    }

    pub fn one(field: &FieldCtx) -> Self {
        Self::assemble(field, Fe::ONE, Vec::new())
    }

    /// Factors a nonzero polynomial.
    pub fn from_poly(field: &FieldCtx, p: &FqPoly) -> Result<Self> {
        let ring = PolyRing::new(field.clone());
        let (unit, parts) = ring.factor(p)?;
        Ok(Self::assemble(
            field,
            unit,
            parts.into_iter().map(|(f, m)| (f, m as i64)).collect(),
        ))
    }

    /// Factors a nonzero rational function.
    pub fn from_ratfunc(field: &FieldCtx, f: &RationalFunction) -> Result<Self> {
        let num = Self::from_poly(field, f.num())?;
        let den = Self::from_poly(field, f.den())?;
        Ok(num.div(&den))
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn unit(&self) -> Fe {
        self.unit
    }

    pub fn factors(&self) -> &[(FqPoly, i64)] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn scale(&self, c: Fe) -> Self {
        assert!(c != Fe::ZERO);
        FactoredRationalFunction {
            field: self.field.clone(),
            unit: self.field.mul(&self.unit, &c),
            factors: self.factors.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::assemble(&self.field, self.field.mul(&self.unit, &other.unit), factors)
    }

    pub fn inv(&self) -> Self {
        FactoredRationalFunction {
            field: self.field.clone(),
            unit: self.field.inv(&self.unit).expect("nonzero unit"),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        FactoredRationalFunction {
            field: self.field.clone(),
            unit: self.field.pow(&base.unit, k.unsigned_abs()),
            factors: if k == 0 {
                Vec::new()
            } else {
                base.factors.iter().map(|(p, e)| (p.clone(), e * k.abs())).collect()
            },
        }
    }

    /// Numerator and denominator as expanded polynomials; the unit goes to
    /// the numerator so the denominator is monic.
    pub fn expand_parts(&self) -> (FqPoly, FqPoly) {
        let ring = PolyRing::new(self.field.clone());
        let mut num = ring.constant(self.unit);
        let mut den = ring.one();
        for (p, e) in &self.factors {
            let pe = ring.pow(p, e.unsigned_abs());
            if *e > 0 {
                num = ring.mul(&num, &pe);
            } else {
                den = ring.mul(&den, &pe);
            }
        }
        (num, den)
    }

    pub fn expand(&self) -> RationalFunction {
        let (num, den) = self.expand_parts();
        RationalFunction { num, den }
    }

    /// `deg(num) - deg(den)`.
    pub fn degree(&self) -> i64 {
        self.factors
            .iter()
            .map(|(p, e)| e * p.degree().unwrap_or(0) as i64)
            .sum()
    }

    pub fn valuation(&self, place: &Place) -> i64 {
        match place {
            Place::Infinite => -self.degree(),
            Place::Finite(p) => self
                .factors
                .iter()
                .find(|(f, _)| f == p)
                .map_or(0, |(_, e)| *e),
        }
    }

    /// gcd of all exponents; 0 for a constant.
    pub fn exponent_gcd(&self) -> u64 {
        self.factors
            .iter()
            .fold(0, |g, (_, e)| gcd(g, e.unsigned_abs()))
    }

    /// Value at a point of `ext` (an extension of this field), `None` at a pole.
    pub fn eval(&self, ext: &FieldCtx, a: Fe) -> Option<Fe> {
        let mut acc = ext.embed(&self.field, self.unit);
        let mut pole = false;
        for (p, e) in &self.factors {
            let val = eval_lifted(&self.field, ext, p, a);
            if val == Fe::ZERO {
                if *e > 0 {
                    return Some(Fe::ZERO);
                }
                pole = true;
            } else if *e > 0 {
                acc = ext.mul(&acc, &ext.pow(&val, *e as u64));
            } else {
                acc = ext.mul(&acc, &ext.pow(&ext.inv(&val).expect("nonzero"), e.unsigned_abs()));
            }
        }
        (!pole).then_some(acc)
    }
}
