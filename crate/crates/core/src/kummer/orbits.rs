//! Orbits of automorphism groups on the rational places, the Hurwitz
//! bookkeeping for fixed fields, and the short-orbit pattern scan.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::automorphism::{closure_check, Automorphism};
use super::{BasePoint, KummerCurve};
use crate::arith::{divisors, gcd, prime_power};
use crate::error::{Error, Result};
use crate::ffield::Fe;
use crate::polyring::{FactoredRationalFunction, PolyRing};
use crate::ring::Ring;

/// A degree-one place: the base point and the value of `y^e / t^{m/g}`
/// there, a `g`-th root of the residue of `h / t^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RationalPlace {
    pub point: BasePoint,
    pub local: Fe,
}

/// All rational places, ordered by base point then local value.
pub fn rational_place_labels(curve: &KummerCurve) -> Vec<RationalPlace> {
    let field = curve.field();
    let n = curve.n();
    let mut out = Vec::new();
    for pt in curve.base_points() {
        let g = gcd(n, curve.valuation_at(pt).unsigned_abs());
        let w = curve.residue_unit_at(pt);
        for z in field.elements().skip(1) {
            if field.pow(&z, g) == w {
                out.push(RationalPlace { point: pt, local: z });
            }
        }
    }
    out
}

/// Image of a rational place under `tau`.
pub fn act(curve: &KummerCurve, tau: &Automorphism, place: RationalPlace) -> RationalPlace {
    let field = curve.field();
    let n = curve.n();
    let alpha = place.point;
    let beta = tau.mobius.apply(field, alpha);
    let m_a = curve.valuation_at(alpha);
    let m_b = curve.valuation_at(beta);
    let g = gcd(n, m_a.unsigned_abs());
    debug_assert_eq!(g, gcd(n, m_b.unsigned_abs()));
    let e = (n / g) as i64;
    let r = uniformizer(curve, alpha)
        .pow(tau.k as i64 * (m_a / g as i64))
        .mul(&tau.f.pow(e))
        .mul(&tau.mobius.pullback(&uniformizer(curve, beta)).pow(-(m_b / g as i64)));
    let r_val = match alpha {
        BasePoint::Infinity => {
            debug_assert_eq!(r.degree(), 0);
            r.unit()
        }
        BasePoint::Finite(a) => r.eval(field, a).expect("unit at the base point"),
    };
    RationalPlace {
        point: beta,
        local: field.mul(&field.pow(&place.local, tau.k), &r_val),
    }
}

fn uniformizer(curve: &KummerCurve, pt: BasePoint) -> FactoredRationalFunction {
    let field = curve.field();
    let ring = PolyRing::new(field.clone());
    let (p, e) = match pt {
        BasePoint::Finite(a) => (ring.linear(&a), 1),
        BasePoint::Infinity => (ring.var(), -1),
    };
    FactoredRationalFunction::new(field, Fe::ONE, vec![(p, e)]).expect("monic")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub size: u64,
    pub representative: RationalPlace,
    pub stabilizer_order: u64,
    pub short: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub group_order: u64,
    pub rational_places: u64,
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    /// Orbit sizes in decreasing order.
    pub fn sizes(&self) -> Vec<u64> {
        let mut s: Vec<u64> = self.orbits.iter().map(|o| o.size).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

/// Orbits of `group` on the rational places. The group must be closed.
pub fn orbit_census(curve: &KummerCurve, group: &[Automorphism]) -> Result<OrbitReport> {
    closure_check(curve, group)?;
    let order = group.len() as u64;
    let places = rational_place_labels(curve);
    let index: HashMap<RationalPlace, usize> = places.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut seen = vec![false; places.len()];
    let mut orbits = Vec::new();
    for (i, &rep) in places.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut size = 0u64;
        let mut stabilizer = 0u64;
        for tau in group {
            let img = act(curve, tau, rep);
            let j = *index
                .get(&img)
                .ok_or_else(|| Error::Verification("image of a rational place is not rational".into()))?;
            if img == rep {
                stabilizer += 1;
            }
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        if stabilizer * size != order {
            return Err(Error::Verification(format!(
                "orbit of size {size} with stabilizer {stabilizer} in a group of order {order}"
            )));
        }
        orbits.push(Orbit { size, representative: rep, stabilizer_order: stabilizer, short: size < order });
    }
    Ok(OrbitReport { group_order: order, rational_places: places.len() as u64, orbits })
}

/// Short orbit data: size `l`, and optionally the ramification index and
/// different exponent of its places (else `e = |G| / l` and tame `d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShortOrbit {
    pub l: u64,
    pub e: Option<u64>,
    pub d: Option<u64>,
}

impl ShortOrbit {
    pub fn new(l: u64) -> Self {
        ShortOrbit { l, e: None, d: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubfieldGenus {
    Exact { genus: u64 },
    /// Some different exponent was wild and unknown; `d >= e` bounds it.
    Bounds { lower: u64, upper: u64 },
}

/// Genus of the fixed field from `2g - 2 = |G| (2g' - 2) + sum l_i d_i`.
pub fn subfield_genus(genus: u64, group_order: u64, p: u64, orbits: &[ShortOrbit]) -> Result<SubfieldGenus> {
    if group_order == 0 {
        return Err(Error::InvalidArgument("empty group".into()));
    }
    let mut different = 0i128;
    let mut exact = true;
    for o in orbits {
        if o.l == 0 || group_order % o.l != 0 || o.l >= group_order {
            return Err(Error::Inconsistent(format!("orbit size {} for a group of order {group_order}", o.l)));
        }
        let e = o.e.unwrap_or(group_order / o.l);
        let d = match o.d {
            Some(d) => d,
            None if e % p != 0 => e - 1,
            None => {
                exact = false;
                e
            }
        };
        different += (o.l * d) as i128;
    }
    let g = group_order as i128;
    let num = 2 * genus as i128 - 2 - different + 2 * g;
    if exact {
        if num < 0 || num % (2 * g) != 0 {
            return Err(Error::Inconsistent(format!("2g' - 2 = {} / {g}", num - 2 * g)));
        }
        return Ok(SubfieldGenus::Exact { genus: (num / (2 * g)) as u64 });
    }
    if num < 0 {
        return Err(Error::Inconsistent("different exceeds the genus budget".into()));
    }
    Ok(SubfieldGenus::Bounds { lower: 0, upper: (num / (2 * g)) as u64 })
}

/// Largest multiset size enumerated by the scan.
pub const SCAN_MAX_K: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitScan {
    pub q: u64,
    pub genus: u64,
    pub group_order: u64,
    pub max_k_scanned: usize,
    /// Patterns in decreasing order, grouped by length.
    pub survivors: Vec<Vec<u64>>,
    pub survivors_by_k: BTreeMap<usize, usize>,
    pub contains_q_and_1: bool,
    pub largest_surviving_k: usize,
    pub single_full_orbit_rejected: bool,
}

/// Short-orbit size patterns `{l_1, ..., l_k}` compatible with a group of
/// order `q(q - 1)` acting on a genus `1 + q(q-3)/2` field with rational
/// fixed field: each `l_i` a proper divisor of `q(q - 1)`, the Hurwitz
/// inequality `sum (|G| - l_i) <= 2g - 2 + 2|G|`, and the `q + 1` rational
/// places a union of some of the orbits.
pub fn orbit_constraint_scan(q: u64) -> Result<OrbitScan> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if !(3..=49).contains(&q) {
        return Err(Error::InvalidArgument(format!("orbit scan needs 3 <= q <= 49, got {q}")));
    }
    let order = q * (q - 1);
    let genus = 1 + q * (q - 3) / 2;
    let sizes: Vec<u64> = divisors(order).into_iter().filter(|&l| l < order).collect();
    let mut survivors = Vec::new();
    let mut current = Vec::new();
    scan_rec(&sizes, 0, order, genus, q, &mut current, &mut survivors);
    for s in &mut survivors {
        s.sort_unstable_by(|a, b| b.cmp(a));
    }
    survivors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
    let mut by_k = BTreeMap::new();
    for s in &survivors {
        *by_k.entry(s.len()).or_insert(0) += 1;
    }
    let single = vec![order];
    Ok(OrbitScan {
        q,
        genus,
        group_order: order,
        max_k_scanned: SCAN_MAX_K,
        contains_q_and_1: survivors.contains(&vec![q, 1]),
        largest_surviving_k: survivors.iter().map(Vec::len).max().unwrap_or(0),
        single_full_orbit_rejected: !admissible(&single, order, genus, q),
        survivors,
        survivors_by_k: by_k,
    })
}

fn scan_rec(sizes: &[u64], start: usize, order: u64, genus: u64, q: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if !cur.is_empty() && admissible(cur, order, genus, q) {
        out.push(cur.clone());
    }
    if cur.len() == SCAN_MAX_K {
        return;
    }
    for i in start..sizes.len() {
        cur.push(sizes[i]);
        scan_rec(sizes, i, order, genus, q, cur, out);
        cur.pop();
    }
}

fn admissible(pattern: &[u64], order: u64, genus: u64, q: u64) -> bool {
    if pattern.iter().any(|&l| l >= order || order % l != 0) {
        return false;
    }
    // fixed field of genus 0
    let k = pattern.len() as i128;
    let sum: i128 = pattern.iter().map(|&l| l as i128).sum();
    if k * order as i128 - sum > 2 * genus as i128 - 2 + 2 * order as i128 {
        return false;
    }
    covers(pattern, q + 1)
}

/// Whether some sub-multiset sums to `target`.
fn covers(pattern: &[u64], target: u64) -> bool {
    let mut reach = vec![false; target as usize + 1];
    reach[0] = true;
    for &l in pattern {
        for s in (l as usize..=target as usize).rev() {
            reach[s] |= reach[s - l as usize];
        }
    }
    reach[target as usize]
}
