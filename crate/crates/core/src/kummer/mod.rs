//! Kummer curves `y^n = h(v)` over `F_q(v)` with `n | q - 1`.

mod automorphism;
mod characterize;
mod isomorphism;
mod normalize;
mod orbits;
mod ramification;

pub use automorphism::{automorphism_search, canonical_automorphisms, compose, Automorphism, Mobius};
pub use characterize::{characterize, find_condition_a_group, kummer_generator, ConditionA, Verdict};
pub use isomorphism::{build_isomorphism, carlitz_model_witness, IsomorphismWitness, CarlitzModelReport, Transcript, WITNESS_POINTS};
pub use normalize::{equal_exponent_check, normalize_curve, ChangeStep, EqualExponents, NormalizedCurve};
pub use orbits::{
    orbit_census, orbit_constraint_scan, rational_place_labels, subfield_genus, Orbit, OrbitReport, OrbitScan,
    RationalPlace, ShortOrbit, SubfieldGenus,
};
pub use ramification::{genus_hurwitz, rational_places, ramification, ExtPlace, GenusReport, PlaceContribution};

use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, Fe};
use crate::polyring::{FactoredRationalFunction, FqPolyRing, PolyRing};
use crate::ring::{Field, Ring};

/// A rational point of the projective `v`-line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasePoint {
    Finite(Fe),
    Infinity,
}

/// The curve `y^n = h(v)`. Exponents of `h` are kept in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerCurve {
    field: FieldCtx,
    n: u64,
    h: FactoredRationalFunction,
    /// `g` with `h_input = h * g^n`; the stored model uses `y / g`.
    extracted: FactoredRationalFunction,
}

/// Builds `y^n = h`, moving `n`-th power parts of `h` into `y` and rejecting
/// inputs whose function field is not a geometric degree-`n` extension.
pub fn curve_create(field: &FieldCtx, n: u64, h: &FactoredRationalFunction) -> Result<KummerCurve> {
    let q = field.size();
    if n == 0 || (q - 1) % n != 0 {
        return Err(Error::DegreeNotDividing { n, q });
    }
    if h.field() != field {
        return Err(Error::InvalidArgument("h is defined over a different field".into()));
    }
    let ni = n as i64;
    let mut reduced = Vec::new();
    let mut extracted = Vec::new();
    for (p, e) in h.factors() {
        let r = e.rem_euclid(ni);
        reduced.push((p.clone(), r));
        extracted.push((p.clone(), (e - r) / ni));
    }
    let h_red = FactoredRationalFunction::new(field, h.unit(), reduced)?;
    let extracted = FactoredRationalFunction::new(field, Fe::ONE, extracted)?;
    let g0 = gcd(n, h_red.exponent_gcd());
    if g0 > 1 {
        // h = lambda * H^{g0} geometrically; over F_q it is an n'-th power
        // exactly when lambda is.
        let largest_power = crate::arith::divisors(g0)
            .into_iter()
            .rev()
            .find(|&d| d > 1 && field.is_nth_power(h_red.unit(), d));
        return Err(match largest_power {
            Some(n_prime) => Error::ProperPower { n_prime },
            None => Error::ConstantFieldExtension { n_prime: g0 },
        });
    }
    Ok(KummerCurve { field: field.clone(), n, h: h_red, extracted })
}

impl KummerCurve {
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.size()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn h(&self) -> &FactoredRationalFunction {
        &self.h
    }

    pub fn lambda(&self) -> Fe {
        self.h.unit()
    }

    /// The function moved out of `h`: the input was `h * extracted^n`.
    pub fn extracted(&self) -> &FactoredRationalFunction {
        &self.extracted
    }

    pub fn poly_ring(&self) -> FqPolyRing {
        PolyRing::new(self.field.clone())
    }

    /// `y^{q-1} = lambda (v^q - v)^s` for the given `lambda` and `s`.
    pub fn canonical(field: &FieldCtx, lambda: Fe, s: i64) -> Result<KummerCurve> {
        let ring = PolyRing::new(field.clone());
        let factors = field.elements().map(|a| (ring.linear(&a), s)).collect();
        let h = FactoredRationalFunction::new(field, lambda, factors)?;
        curve_create(field, field.size() - 1, &h)
    }

    /// Whether `h` is `lambda (v^q - v)^s` for a single exponent `s`.
    pub fn canonical_exponent(&self) -> Option<i64> {
        let q = self.q() as usize;
        let f = self.h.factors();
        if f.len() != q || f.iter().any(|(p, _)| p.degree() != Some(1)) {
            return None;
        }
        let s = f[0].1;
        f.iter().all(|(_, e)| *e == s).then_some(s)
    }

    /// Valuation of `h` at a rational base point.
    pub fn valuation_at(&self, pt: BasePoint) -> i64 {
        match pt {
            BasePoint::Infinity => -self.h.degree(),
            BasePoint::Finite(a) => {
                let ring = self.poly_ring();
                self.h.valuation(&crate::polyring::Place::at(&ring, a))
            }
        }
    }

    /// Residue of `h / t^m` at a rational base point, `t` the standard
    /// uniformizer (`v - a`, or `1/v` at infinity).
    pub fn residue_unit_at(&self, pt: BasePoint) -> Fe {
        let field = &self.field;
        match pt {
            BasePoint::Infinity => self.h.unit(),
            BasePoint::Finite(a) => {
                let ring = self.poly_ring();
                let mut acc = self.h.unit();
                for (p, e) in self.h.factors() {
                    let val = ring.eval(p, &a);
                    let local = if val == Fe::ZERO {
                        ring.eval(&ring.derivative(p), &a)
                    } else {
                        val
                    };
                    let local = if *e < 0 { field.inv(&local).expect("nonzero") } else { local };
                    acc = field.mul(&acc, &field.pow(&local, e.unsigned_abs()));
                }
                acc
            }
        }
    }

    /// All rational base points: field elements in order, then infinity.
    pub fn base_points(&self) -> Vec<BasePoint> {
        self.field
            .elements()
            .map(BasePoint::Finite)
            .chain(std::iter::once(BasePoint::Infinity))
            .collect()
    }
}
